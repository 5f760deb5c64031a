//! Acceptance harness: one PASS or FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use legch::augment::{check_antiderivation, enumerate_augmentations, homotopy_classes, is_homotopic, Antiderivation, Augmentation};
use legch::corpus::{self, CORPUS};
use legch::dga::{check_d_squared, link_algebra, surgered_dga, Dga};
use legch::diagram::{parse_front, FrontDiagram};
use legch::disks::{enumerate_all, enumerate_all_rightward};
use legch::duality::{almost_nondegenerate, criter_bg, main_verdict, DualityMaps, Sign, N};
use legch::geography::{build_lambda_r, is_admissible, realize, BlockLibrary, GeographyError};
use legch::gf2::{BitVec, Subspace};
use legch::lch::{bilinearize, BilinearizedComplex};
use legch::poly::LaurentPoly;
use legch::reidemeister::{apply, shipped_sites, sites, Move};
use legch::resolve::resolve;
use legch::surgery::{surgery_sequence, verify_s_epsilon};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn algebra(f: &FrontDiagram) -> Dga {
    link_algebra(f, N).expect("corpus diagrams build")
}

fn entries() -> impl Iterator<Item = (&'static str, Dga, Vec<Augmentation>)> {
    CORPUS.iter().map(|e| {
        let g = algebra(&e.front());
        let augs = enumerate_augmentations(&g);
        (e.name, g, augs)
    })
}

fn pairs(augs: &[Augmentation]) -> impl Iterator<Item = (&Augmentation, &Augmentation)> {
    augs.iter().flat_map(move |a| augs.iter().map(move |b| (a, b)))
}

fn poly(s: &str) -> LaurentPoly {
    s.parse().expect("literal polynomial")
}

fn c1_square_zero() -> Outcome {
    let mut slowest = (Duration::ZERO, "");
    let mut count = 0;
    for e in CORPUS {
        let start = Instant::now();
        let g = algebra(&e.front());
        check_d_squared(&g).map_err(|err| format!("{}: {err}", e.name))?;
        let augs = enumerate_augmentations(&g);
        for (a, b) in pairs(&augs) {
            let cx = bilinearize(&g, a, b).map_err(|err| format!("{}: {err}", e.name))?;
            if !cx.matrix.mul(&cx.matrix).expect("square").is_zero() {
                return Err(format!("{}: bilinearized differential squares to nonzero", e.name));
            }
            count += 1;
        }
        let took = start.elapsed();
        if took > slowest.0 {
            slowest = (took, e.name);
        }
        if took > Duration::from_secs(1) {
            return Err(format!("{} took {took:?}", e.name));
        }
    }
    Ok(format!("{} diagrams, {count} pairs, slowest {} in {:?}", CORPUS.len(), slowest.1, slowest.0))
}

fn c2_unknot() -> Outcome {
    let g = algebra(&corpus::front("unknot"));
    let augs = enumerate_augmentations(&g);
    if augs.len() != 1 {
        return Err(format!("{} augmentations", augs.len()));
    }
    let p = bilinearize(&g, &augs[0], &augs[0]).map_err(|e| e.to_string())?.poincare();
    if p != poly("t") {
        return Err(format!("P = {p}"));
    }
    Ok(format!("1 augmentation, P = {p}"))
}

fn c3_hopf() -> Outcome {
    let g = algebra(&corpus::front("hopf"));
    let augs = enumerate_augmentations(&g);
    let l = Augmentation::parse(&g, "{m12=1}").map_err(|e| e.to_string())?;
    let r = Augmentation::parse(&g, "{}").map_err(|e| e.to_string())?;
    if !augs.contains(&l) || !augs.contains(&r) {
        return Err("eps_L or eps_R missing".into());
    }
    if is_homotopic(&g, &l, &r).map_err(|e| e.to_string())?.is_homotopic() {
        return Err("eps_L ~ eps_R".into());
    }
    let p = bilinearize(&g, &l, &r).map_err(|e| e.to_string())?.poincare();
    if p != poly("1 + t") {
        return Err(format!("P = {p}"));
    }
    Ok(format!("eps_L !~ eps_R, P = {p}"))
}

fn c4_main_theorem() -> Outcome {
    let mut checked = 0;
    for (name, g, augs) in entries() {
        for (a, b) in pairs(&augs) {
            let maps = DualityMaps::new(&g, a, b).map_err(|e| format!("{name}: {e}"))?;
            main_verdict(&g, &maps, a, b).map_err(|e| format!("{name} {} {}: {e}", a.display(&g), b.display(&g)))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} ordered pairs, 0 disagreements in either ordering"))
}

fn c5_counterexample() -> Outcome {
    let g = algebra(&corpus::front("hopf"));
    let l = Augmentation::parse(&g, "{m12=1}").map_err(|e| e.to_string())?;
    let r = Augmentation::parse(&g, "{}").map_err(|e| e.to_string())?;
    let maps = DualityMaps::new(&g, &l, &l).map_err(|e| e.to_string())?;
    let image = maps.image(Sign::Plus, 0);
    let diagonal = Subspace::span(2, [BitVec::from_bools(&[true, true])]);
    if !(image.contains_space(&diagonal) && diagonal.contains_space(&image)) {
        return Err(format!("im tau_0 has dimension {} and is not the diagonal", image.dim()));
    }
    if !is_homotopic(&g, &l, &l).map_err(|e| e.to_string())?.is_homotopic() {
        return Err("eps_L !~ eps_L".into());
    }
    let with_r = DualityMaps::new(&g, &r, &r).map_err(|e| e.to_string())?;
    if with_r.image(Sign::Plus, 0).dim() != 0 {
        return Err("with eps_R, tau_0 should vanish".into());
    }
    Ok("eps_1 = eps_2 = eps_L: im tau_0 is the diagonal, pair homotopic (eps_R gives tau_0 = 0)".into())
}

fn c6_connected_criterion() -> Outcome {
    let (mut checked, mut homotopic) = (0, 0);
    for (name, g, augs) in entries().filter(|(_, g, _)| g.component_count() == 1) {
        for (a, b) in pairs(&augs) {
            let v = criter_bg(&g, a, b).map_err(|e| format!("{name}: {e}"))?;
            if v.difference != i64::from(v.homotopic) {
                return Err(format!("{name}: difference {} homotopic {}", v.difference, v.homotopic));
            }
            checked += 1;
            homotopic += usize::from(v.homotopic);
        }
    }
    Ok(format!("{checked} pairs on connected entries, {homotopic} homotopic"))
}

fn c7_duality() -> Outcome {
    let (mut spots, mut entries_checked, mut classes) = (0, 0, 0);
    for (name, g, augs) in entries() {
        for (a, b) in pairs(&augs) {
            let maps = DualityMaps::new(&g, a, b).map_err(|e| format!("{name}: {e}"))?;
            spots += maps.check_exactness().map_err(|e| format!("{name}: {e}"))?.spots.len();
            entries_checked += maps.check_adjointness().map_err(|e| format!("{name}: {e}"))?;
            for cx in [&maps.plus.complex, &maps.minus.complex] {
                classes += almost_nondegenerate(cx, 10).map_err(|e| format!("{name}: {e}"))?.classes;
            }
        }
    }
    Ok(format!("exact at {spots} spots, {entries_checked} adjointness entries, {classes} cohomology classes witnessed"))
}

fn c8_lambda_r() -> Outcome {
    let lib = BlockLibrary::shipped().map_err(|e| e.to_string())?;
    let mut dims = Vec::new();
    for m in 0..3 {
        let built = build_lambda_r(&lib, 3, m).map_err(|e| format!("m = {m}: {e}"))?;
        if built.image_dim != m || built.homotopic {
            return Err(format!("m = {m}: dim {} homotopic {}", built.image_dim, built.homotopic));
        }
        dims.push(built.image_dim);
    }
    Ok(format!("r = 3: dim im tau_+,1 = {dims:?}, all pairs non-homotopic, blockwise splitting verified"))
}

fn c9_surgery() -> Outcome {
    let sg = surgered_dga(&resolve(&corpus::front("lambda-prime")), N).map_err(|e| e.to_string())?;
    check_d_squared(&sg.surgered).map_err(|e| e.to_string())?;
    let augs = enumerate_augmentations(&sg.base);
    let mut degree_zero = BTreeMap::new();
    for (a, b) in pairs(&augs) {
        verify_s_epsilon(&sg, a, b).map_err(|e| e.to_string())?;
        let seq = surgery_sequence(&sg, a, b).map_err(|e| e.to_string())?;
        let bad: Vec<i64> = seq.non_isomorphic_degrees().into_iter().filter(|&k| k != N - 1).collect();
        if !bad.is_empty() {
            return Err(format!("pi not a rank isomorphism in degrees {bad:?}"));
        }
        *degree_zero.entry(!seq.non_isomorphic_degrees().contains(&(N - 1))).or_insert(0) += 1;
    }
    let l = Augmentation::parse(&sg.base, "{m12=1}").map_err(|e| e.to_string())?;
    let r = Augmentation::parse(&sg.base, "{}").map_err(|e| e.to_string())?;
    let p = bilinearize(&sg.surgered, &l.extended(sg.surgered.len()), &r.extended(sg.surgered.len()))
        .map_err(|e| e.to_string())?
        .poincare();
    if p != poly("1") {
        return Err(format!("P = {p}"));
    }
    let iso = degree_zero.get(&true).copied().unwrap_or(0);
    let non = degree_zero.get(&false).copied().unwrap_or(0);
    Ok(format!(
        "d_S^2 = 0, S-epsilon agrees on {} pairs, pi iso away from n (degree n-1 iso on {iso}, rank-formula only on {non}), P' = {p}",
        augs.len() * augs.len()
    ))
}

fn recompute(front: &FrontDiagram, e1: &str, e2: &str) -> Result<(LaurentPoly, bool), String> {
    let again = parse_front(&front.to_source()).map_err(|e| e.to_string())?;
    let g = algebra(&again);
    let a = Augmentation::parse(&g, e1).map_err(|e| e.to_string())?;
    let b = Augmentation::parse(&g, e2).map_err(|e| e.to_string())?;
    let p = bilinearize(&g, &a, &b).map_err(|e| e.to_string())?.poincare();
    Ok((p, is_homotopic(&g, &a, &b).map_err(|e| e.to_string())?.is_homotopic()))
}

fn c10_geography() -> Outcome {
    let mut non_homotopic = 0;
    for (name, g, augs) in entries() {
        for (a, b) in pairs(&augs) {
            if is_homotopic(&g, a, b).map_err(|e| e.to_string())?.is_homotopic() {
                continue;
            }
            non_homotopic += 1;
            for (x, y) in [(a, b), (b, a)] {
                let p = bilinearize(&g, x, y).map_err(|e| e.to_string())?.poincare();
                if !is_admissible(&p, 1).is_admissible() {
                    return Err(format!("{name}: P = {p} is not admissible"));
                }
            }
        }
    }
    let lib = BlockLibrary::shipped().map_err(|e| e.to_string())?;
    let (mut reached, mut unreachable) = (0, 0);
    for c in 0..4u64 {
        for c0 in 1..4u64 {
            for c1 in 0..3u64 {
                let request = LaurentPoly::from_counts([(-1, c), (0, c0), (1, c1)]);
                if !is_admissible(&request, 1).is_admissible() {
                    continue;
                }
                match realize(&request, 1, &lib) {
                    Ok(r) => {
                        let a = &r.assembly;
                        let (e1, e2) = (a.e1.display(&a.dga).to_string(), a.e2.display(&a.dga).to_string());
                        let (p, homotopic) = recompute(&a.front, &e1, &e2)?;
                        if p != request || homotopic {
                            return Err(format!("realized {request} recomputes to {p}, homotopic {homotopic}"));
                        }
                        reached += 1;
                    }
                    Err(GeographyError::Unreachable(_)) => unreachable += 1,
                    Err(e) => return Err(format!("{request}: {e}")),
                }
            }
        }
    }
    Ok(format!(
        "{non_homotopic} non-homotopic pairs admissible both ways; {reached} requests realized and recomputed, {unreachable} outside the library"
    ))
}

/// Rank over GF(2) by plain elimination on rows of booleans.
fn naive_rank(rows: usize, cols: usize, at: impl Fn(usize, usize) -> bool) -> usize {
    let mut m: Vec<Vec<bool>> = (0..rows).map(|i| (0..cols).map(|j| at(i, j)).collect()).collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][col]) else { continue };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && m[r][col] {
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn naive_homology(cx: &BilinearizedComplex, k: i64) -> usize {
    let d = |k: i64| {
        let (rows, cols) = (cx.generators_in(k - 1), cx.generators_in(k));
        naive_rank(rows.len(), cols.len(), |i, j| cx.matrix.get(rows[i], cols[j]))
    };
    cx.generators_in(k).len() - d(k) - d(k + 1)
}

/// Homotopy by trying every antiderivation supported on degree −1 generators.
fn homotopic_by_search(g: &Dga, a: &Augmentation, b: &Augmentation) -> Option<bool> {
    let support: Vec<usize> = (0..g.len()).filter(|&i| g.generators()[i].degree == -1).collect();
    if support.len() > 16 {
        return None;
    }
    Some((0u32..1 << support.len()).any(|mask| {
        let mut k = vec![false; g.len()];
        for (bit, &i) in support.iter().enumerate() {
            k[i] = mask >> bit & 1 == 1;
        }
        check_antiderivation(g, a, b, &Antiderivation(k))
    }))
}

fn same_space(x: &Subspace, y: &Subspace) -> bool {
    x.contains_space(y) && y.contains_space(x)
}

fn images_n(f: &FrontDiagram) -> Result<Vec<[Subspace; 2]>, String> {
    let g = algebra(f);
    let augs = enumerate_augmentations(&g);
    pairs(&augs)
        .map(|(a, b)| {
            let maps = DualityMaps::new(&g, a, b).map_err(|e| e.to_string())?;
            Ok([maps.image(Sign::Plus, N), maps.image(Sign::Minus, N)])
        })
        .collect()
}

fn c11_oracles() -> Outcome {
    let (mut homotopy, mut ranks, mut disks) = (0, 0, 0);
    for (name, g, augs) in entries() {
        for (a, b) in pairs(&augs) {
            if let Some(search) = homotopic_by_search(&g, a, b) {
                if search != is_homotopic(&g, a, b).map_err(|e| e.to_string())?.is_homotopic() {
                    return Err(format!("{name}: homotopy oracle disagrees"));
                }
                homotopy += 1;
            }
            let cx = bilinearize(&g, a, b).map_err(|e| e.to_string())?;
            let h = cx.homology();
            for k in cx.degree_range() {
                if naive_homology(&cx, k) != h.rank(k) {
                    return Err(format!("{name}: rank in degree {k} disagrees"));
                }
                ranks += 1;
            }
        }
        let d = resolve(&corpus::front(name));
        let (mut left, mut right) = (enumerate_all(&d), enumerate_all_rightward(&d));
        for v in left.iter_mut().chain(right.iter_mut()) {
            v.sort();
        }
        if left != right {
            return Err(format!("{name}: sweep orders disagree"));
        }
        disks += left.iter().map(Vec::len).sum::<usize>();
    }
    let mut slides = 0;
    for name in ["hopf-basepoint", "hopf", "lambda-prime", "trefoil"] {
        let f = with_explicit_basepoints(&corpus::front(name));
        let base = images_n(&f)?;
        let mut current = f;
        while let Some(mv) = sites(&current).into_iter().find(|m| matches!(m, Move::SlideBasepoint { forward: true, .. })) {
            current = apply(&current, mv).map_err(|e| e.to_string())?;
            let moved = images_n(&current)?;
            if moved.len() != base.len() || moved.iter().zip(&base).any(|(x, y)| !(same_space(&x[0], &y[0]) && same_space(&x[1], &y[1]))) {
                return Err(format!("{name}: im tau_n changed after {mv}"));
            }
            slides += 1;
        }
    }
    Ok(format!("{homotopy} homotopy searches, {ranks} degree ranks, {disks} disks in both orders, {slides} basepoint slides"))
}

/// The same front with a `B` event inserted right after each component's first left cusp,
/// on its lower strand, unless the source already places basepoints.
fn with_explicit_basepoints(f: &FrontDiagram) -> FrontDiagram {
    if !f.basepoints().is_empty() && f.events().iter().any(|e| matches!(e, legch::diagram::Event::Basepoint { .. })) {
        return f.clone();
    }
    let mut events = f.events().to_vec();
    let mut seen = std::collections::BTreeSet::new();
    let mut inserts = Vec::new();
    for (e, ev) in f.events().iter().enumerate() {
        if let legch::diagram::Event::LeftCusp { pos } = ev {
            let c = f.strand_component(e + 1, *pos + 1);
            if seen.insert(c) {
                inserts.push((e + 1, *pos + 1));
            }
        }
    }
    for (at, pos) in inserts.into_iter().rev() {
        events.insert(at, legch::diagram::Event::Basepoint { pos });
    }
    FrontDiagram::new(f.components().to_vec(), events).expect("basepoint insertion keeps the front valid")
}

fn multiset(f: &FrontDiagram) -> Result<Vec<String>, String> {
    let g = algebra(f);
    let cls = homotopy_classes(&g).map_err(|e| e.to_string())?;
    let reps = &cls.representatives;
    let mut out = Vec::new();
    for &a in reps {
        for &b in reps {
            out.push(bilinearize(&g, &cls.augmentations[a], &cls.augmentations[b]).map_err(|e| e.to_string())?.poincare().to_string());
        }
    }
    out.sort();
    Ok(out)
}

fn c12_reidemeister() -> Outcome {
    let mut moves = 0;
    for name in ["unknot", "hopf"] {
        let f = corpus::front(name);
        let base = multiset(&f)?;
        for mv in shipped_sites(&f) {
            let g = apply(&f, mv).map_err(|e| format!("{name} {mv}: {e}"))?;
            let got = multiset(&g)?;
            if got != base {
                return Err(format!("{name} {mv}: {got:?} vs {base:?}"));
            }
            moves += 1;
        }
    }
    Ok(format!("{moves} rewrites of unknot and hopf, multisets unchanged"))
}

fn main() {
    let start = Instant::now();
    let criteria: [Criterion; 12] = [
        ("d^2 = 0 and bilinearized d^2 = 0 on the corpus", c1_square_zero),
        ("unknot has one augmentation and P = t", c2_unknot),
        ("Hopf link eps_L, eps_R", c3_hopf),
        ("homotopy iff [L] in im tau_n", c4_main_theorem),
        ("disconnected counterexample to the tau_0 criterion", c5_counterexample),
        ("connected rank-difference criterion", c6_connected_criterion),
        ("exactness, adjointness, almost non-degeneracy", c7_duality),
        ("Lambda^r construction", c8_lambda_r),
        ("0-surgery on the Hopf link", c9_surgery),
        ("geography round trip", c10_geography),
        ("oracle equivalence", c11_oracles),
        ("Reidemeister invariance of P multisets", c12_reidemeister),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(detail) => println!("PASS {:>2} {title}: {detail} [{:.2?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {why}", i + 1);
            }
        }
    }
    let total = start.elapsed();
    println!("acceptance total {total:.2?}");
    if failed > 0 {
        std::process::exit(1);
    }
}
