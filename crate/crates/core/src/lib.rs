pub mod algebra;
pub mod diagram;
pub mod gf2;
pub mod poly;
pub mod disks;
pub mod reidemeister;
pub mod resolve;
pub mod dga;
pub mod augment;
pub mod lch;
pub mod duality;
pub mod surgery;
pub mod corpus;
pub mod geography;
pub mod report;
