use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use legch::augment::{enumerate_augmentations, homotopy_classes, is_homotopic, surgery_augmentation_counts, Augmentation, HomotopyWitness};
use legch::dga::{check_d_squared, link_algebra, Dga};
use legch::diagram::parse_front;
use legch::duality::{main_verdict, DualityMaps, Sign, N};
use legch::geography::{is_admissible, realize, Admissibility, BlockLibrary, GeographyError};
use legch::lch::bilinearize;
use legch::poly::LaurentPoly;
use legch::report::build_report;

#[derive(Parser)]
#[command(name = "legch", version, about = "Contact homology invariants of Legendrian links in J^1(R)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print generators and differentials; fails unless d^2 = 0.
    Dga { file: PathBuf },
    /// List augmentations by id.
    Augs { file: PathBuf },
    /// Partition augmentations into homotopy classes.
    Classes { file: PathBuf },
    /// Bilinearized homology of an ordered pair.
    Blch {
        file: PathBuf,
        /// Augmentation id from `augs`, or its support such as `{m12=1}`.
        #[arg(long)]
        e1: String,
        #[arg(long)]
        e2: String,
    },
    /// Duality maps and theorem verdicts for an ordered pair.
    Duality {
        file: PathBuf,
        #[arg(long)]
        e1: String,
        #[arg(long)]
        e2: String,
    },
    /// Every ordered pair, with all verdicts.
    Sweep { file: PathBuf },
    /// Admissibility and realization of Poincare polynomials.
    Geo {
        #[command(subcommand)]
        command: Geo,
    },
    /// The full report, as text or JSON.
    Report {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum Geo {
    Check {
        poly: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    Realize {
        poly: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

/// How a command ended, mapped onto the exit-code contract.
enum Failure {
    Input(String),
    Theorem(String),
    Unreachable(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Theorem(_) => 3,
            Failure::Unreachable(_) => 4,
        }
    }
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn theorem(e: impl std::fmt::Display) -> Failure {
    Failure::Theorem(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Dga, Failure> {
    let front = parse_front(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))?;
    link_algebra(&front, N).map_err(input)
}

fn pick(g: &Dga, augs: &[Augmentation], text: &str) -> Result<Augmentation, Failure> {
    if let Ok(i) = text.parse::<usize>() {
        return augs.get(i).cloned().ok_or_else(|| input(format!("no augmentation with id {i}, there are {}", augs.len())));
    }
    Augmentation::parse(g, text).map_err(input)
}

fn pair(file: &Path, e1: &str, e2: &str) -> Result<(Dga, Augmentation, Augmentation), Failure> {
    let g = load(file)?;
    let augs = enumerate_augmentations(&g);
    let (a, b) = (pick(&g, &augs, e1)?, pick(&g, &augs, e2)?);
    Ok((g, a, b))
}

fn run(cli: Cli) -> Result<String, Failure> {
    let mut out = String::new();
    match cli.command {
        Command::Dga { file } => {
            let g = load(&file)?;
            out.push_str(&g.dump());
            check_d_squared(&g).map_err(theorem)?;
        }
        Command::Augs { file } => {
            let g = load(&file)?;
            let (induced, free) = surgery_augmentation_counts(&g);
            for (i, a) in enumerate_augmentations(&g).iter().enumerate() {
                let _ = writeln!(out, "aug {i} {}", a.display(&g));
            }
            let _ = writeln!(out, "count {induced} (free surgery letters: {free})");
        }
        Command::Classes { file } => {
            let g = load(&file)?;
            let cls = homotopy_classes(&g).map_err(theorem)?;
            for (k, &rep) in cls.representatives.iter().enumerate() {
                let members: Vec<String> = (0..cls.augmentations.len()).filter(|&i| cls.class_of[i] == k).map(|i| i.to_string()).collect();
                let _ = writeln!(out, "class {k} rep {} {} members {}", rep, cls.augmentations[rep].display(&g), members.join(" "));
            }
        }
        Command::Blch { file, e1, e2 } => {
            let (g, a, b) = pair(&file, &e1, &e2)?;
            let cx = bilinearize(&g, &a, &b).map_err(input)?;
            let h = cx.homology();
            let _ = writeln!(out, "blch e1={e1} e2={e2} P={}", h.poincare());
            for (k, d) in &h.degrees {
                let _ = writeln!(out, "  degree {k} rank {}", d.rank());
            }
        }
        Command::Duality { file, e1, e2 } => {
            let (g, a, b) = pair(&file, &e1, &e2)?;
            let maps = DualityMaps::new(&g, &a, &b).map_err(theorem)?;
            for sign in [Sign::Plus, Sign::Minus] {
                let side = maps.side(sign);
                let ranks: Vec<String> = side.homology.degrees.iter().map(|(k, d)| format!("{k}:{}", d.rank())).collect();
                let _ = writeln!(
                    out,
                    "side {sign} P={} ranks {} im_tau0 {} im_taun {} fundamental {}",
                    side.homology.poincare(),
                    ranks.join(" "),
                    maps.image(sign, 0).dim(),
                    maps.image(sign, N).dim(),
                    maps.fundamental_in_image(sign)
                );
            }
            let report = maps.check_exactness().map_err(theorem)?;
            let _ = writeln!(out, "exact at {} spots", report.spots.len());
            let _ = writeln!(out, "adjoint on {} entries", maps.check_adjointness().map_err(theorem)?);
            match is_homotopic(&g, &a, &b).map_err(input)? {
                HomotopyWitness::Homotopic(_) => out.push_str("homotopic: antiderivation found\n"),
                HomotopyWitness::Obstructed(gens) => {
                    let names: Vec<&str> = gens.iter().map(|&q| g.generators()[q].name.as_str()).collect();
                    let _ = writeln!(out, "not homotopic: equations of {} sum to 0 = 1", names.join(" "));
                }
            }
            if let Some(q) = maps.sigma_fundamental_witness() {
                let _ = writeln!(out, "sigma_-,0 of the fundamental class pairs with {}", g.generators()[q].name);
            }
            let v = main_verdict(&g, &maps, &a, &b).map_err(theorem)?;
            let _ = writeln!(out, "main verdict agrees: homotopic {}", v.homotopic);
        }
        Command::Sweep { file } | Command::Report { file, json: false } => {
            let r = build_report(&read(&file)?).map_err(input)?;
            out.push_str(&r.to_text());
            if !r.consistent() {
                return Err(Failure::Theorem(out));
            }
        }
        Command::Report { file, json: true } => {
            let r = build_report(&read(&file)?).map_err(input)?;
            out.push_str(&r.to_json());
            out.push('\n');
            if !r.consistent() {
                return Err(Failure::Theorem(out));
            }
        }
        Command::Geo { command: Geo::Check { poly, n } } => {
            let p: LaurentPoly = poly.parse().map_err(input)?;
            match is_admissible(&p, n) {
                Admissibility::Admissible(w) => {
                    let _ = writeln!(out, "admissible P={p} n={n} q={} p={}", w.split.q, w.split.p);
                }
                Admissibility::Refused(r) => {
                    let _ = writeln!(out, "inadmissible P={p} n={n}: {r}");
                }
            }
        }
        Command::Geo { command: Geo::Realize { poly, n, out: path } } => {
            let p: LaurentPoly = poly.parse().map_err(input)?;
            let lib = BlockLibrary::shipped().map_err(theorem)?;
            let r = realize(&p, n, &lib).map_err(|e| match e {
                GeographyError::Unreachable(_) | GeographyError::TooLarge(_) => Failure::Unreachable(e.to_string()),
                GeographyError::Inadmissible { .. } | GeographyError::Dimension(_) => input(e),
                e => theorem(e),
            })?;
            let a = &r.assembly;
            let (e1, e2) = (a.e1.display(&a.dga).to_string(), a.e2.display(&a.dga).to_string());
            let mut text = format!("# realizes P = {p}\n# pieces {}\n# e1 {e1}\n# e2 {e2}\n", a.names.join(" "));
            text.push_str(&a.front.to_source());
            std::fs::write(&path, &text).map_err(|e| input(format!("{}: {e}", path.display())))?;
            let (g, x, y) = pair(&path, &e1, &e2)?;
            let again = bilinearize(&g, &x, &y).map_err(theorem)?.poincare();
            if again != p || is_homotopic(&g, &x, &y).map_err(theorem)?.is_homotopic() {
                return Err(theorem(format!("re-reading {} gives P = {again}", path.display())));
            }
            let _ = writeln!(out, "wrote {} pieces {}\ne1 {e1}\ne2 {e2}\nrecomputed P={again}", path.display(), a.names.join(" "));
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = std::env::var("LEGCH_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global();
    }
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let code = f.code();
            match f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Unreachable(m) => eprintln!("unreachable: {m}"),
                Failure::Theorem(m) => {
                    print!("{m}");
                    eprintln!("theorem check failed");
                }
            }
            ExitCode::from(code)
        }
    }
}
