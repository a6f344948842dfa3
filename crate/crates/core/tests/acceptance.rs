//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p freecone --test acceptance`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use freecone::catalog::{self, PointLine};
use freecone::cone::{free_m_cone, higgs_lift, ConeElement, VariantKind};
use freecone::invariants::{catenary_data, flags, g_invariant, src_data, tutte, GInvariant, RankSequence};
use freecone::iso::is_isomorphic;
use freecone::matroid::Matroid;
use freecone::subset::Subset;
use freecone::transfer::{
    catenary_of_cone, enumerate_tuples, flag_bijection, flag_bijection_inverse, reconstruct_from_cone_config,
    src_from_g, tutte_of_cone_from_src,
};
use freecone::zlattice::{configuration, configurations_equal, validate_axioms, Axiom, Z3Mode};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn two_planes_g() -> Outcome {
    let expected = GInvariant::from_counts(
        6,
        3,
        [
            ("111000".parse::<RankSequence>().unwrap(), big(648)),
            ("110100".parse::<RankSequence>().unwrap(), big(72)),
        ],
    )
    .map_err(|e| e.to_string())?;
    for (name, m) in [("M1", catalog::m1()), ("M2", catalog::m2())] {
        let g = g_invariant(&m).map_err(|e| e.to_string())?;
        ensure(g == expected, || format!("{name}: {g}"))?;
    }
    Ok(format!("both equal {expected}"))
}

fn two_planes_catenary() -> Outcome {
    for (name, m) in [("M1", catalog::m1()), ("M2", catalog::m2())] {
        let cat = catenary_data(&m);
        ensure(
            cat.get(&[0, 1, 2, 3]) == big(6) && cat.get(&[0, 1, 1, 4]) == big(18),
            || format!("{name}: {:?}", cat.counts()),
        )?;
        ensure(cat.counts().len() == 2, || format!("{name}: extra compositions"))?;
    }
    Ok("(0,1,2,3) -> 6 and (0,1,1,4) -> 18 for both".into())
}

fn two_planes_configuration() -> Outcome {
    let (c1, c2) = (configuration(&catalog::m1()), configuration(&catalog::m2()));
    ensure(configurations_equal(&c1, &c2), || "configurations differ".into())?;
    let mut labels: Vec<(usize, usize)> = (0..c1.len()).map(|v| (c1.size(v), c1.rank(v))).collect();
    labels.sort_unstable();
    ensure(labels == [(0, 0), (3, 2), (3, 2), (6, 3)], || {
        format!("labels {labels:?}")
    })?;
    let (bottom, top) = (c1.bottom(), c1.top());
    let middle: Vec<usize> = (0..c1.len()).filter(|&v| v != bottom && v != top).collect();
    let diamond = c1.covers().len() == 4
        && middle
            .iter()
            .all(|&v| c1.covers().contains(&(bottom, v)) && c1.covers().contains(&(v, top)));
    ensure(diamond, || format!("covers {:?}", c1.covers()))?;
    let iso = is_isomorphic(&catalog::m1(), &catalog::m2()).map_err(|e| e.to_string())?;
    ensure(iso.is_none(), || format!("isomorphism {iso:?}"))?;
    Ok("labelled diamond shared, no isomorphism".into())
}

fn cones_separate_two_planes() -> Outcome {
    let mut notes = Vec::new();
    for m in 1..=2 {
        let q1 = free_m_cone(&catalog::m1(), m).map_err(|e| e.to_string())?;
        let q2 = free_m_cone(&catalog::m2(), m).map_err(|e| e.to_string())?;
        let (cat1, cat2) = (catenary_data(q1.matroid()), catenary_data(q2.matroid()));
        ensure(cat1 == cat2, || format!("m={m}: cone catenary data differ"))?;
        let (c1, c2) = (configuration(q1.matroid()), configuration(q2.matroid()));
        ensure(!configurations_equal(&c1, &c2), || {
            format!("m={m}: configurations agree")
        })?;
        notes.push(format!(
            "m={m}: |E(Q)|={}, {} flags",
            q1.matroid().len(),
            cat1.total()
        ));
    }
    Ok(notes.join("; "))
}

fn catenary_transfer() -> Outcome {
    let fixtures = catalog::fixtures();
    ensure(fixtures.len() >= 20, || "too few fixtures".into())?;
    let mut checked = 0;
    for (name, m) in &fixtures {
        let cat = catenary_data(m);
        for mult in 1..=3 {
            let cone = free_m_cone(m, mult).map_err(|e| e.to_string())?;
            for kind in VariantKind::ALL {
                let direct = catenary_data(&cone.variant(kind));
                let via = catenary_of_cone(&cat, mult, kind).map_err(|e| e.to_string())?;
                ensure(via == direct, || format!("{name} m={mult} {kind}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{} fixtures, {checked} comparisons", fixtures.len()))
}

fn bijection() -> Outcome {
    let cone = free_m_cone(&catalog::m1(), 1).map_err(|e| e.to_string())?;
    let tuples = enumerate_tuples(&cone);
    let mut image = HashSet::new();
    for t in &tuples {
        let flag = flag_bijection(t, &cone).map_err(|e| e.to_string())?;
        let back = flag_bijection_inverse(&flag, &cone).map_err(|e| e.to_string())?;
        ensure(&back == t, || format!("inverse fails on {t:?}"))?;
        ensure(image.insert(flag), || "forward map not injective".into())?;
    }
    let direct: HashSet<_> = flags(cone.matroid()).collect();
    ensure(image == direct, || {
        format!("{} tuples vs {} flags", tuples.len(), direct.len())
    })?;
    Ok(format!("{} tuples onto {} flags", tuples.len(), direct.len()))
}

fn higgs() -> Outcome {
    let fixtures = catalog::fixtures();
    for (name, m) in &fixtures {
        let variant = free_m_cone(m, 1)
            .map_err(|e| e.to_string())?
            .variant(VariantKind::TiplessBaseless);
        let iso = is_isomorphic(&variant, &higgs_lift(m)).map_err(|e| e.to_string())?;
        ensure(iso.is_some(), || name.to_string())?;
    }
    Ok(format!("{} fixtures", fixtures.len()))
}

fn reconstruction() -> Outcome {
    let mut checked = 0;
    for (name, m) in catalog::fixtures().iter().filter(|(_, m)| m.full_rank() >= 3) {
        for kind in VariantKind::ALL {
            let low = kind.min_reconstructible_m();
            for mult in low..=low + 1 {
                let cone = free_m_cone(m, mult).map_err(|e| e.to_string())?;
                let cfg = configuration(&cone.variant(kind));
                let found = reconstruct_from_cone_config(&cfg, kind, mult)
                    .map_err(|e| format!("{name} {kind} m={mult}: {e}"))?;
                let iso = is_isomorphic(&found, m).map_err(|e| e.to_string())?;
                ensure(iso.is_some(), || format!("{name} {kind} m={mult}: wrong matroid"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} round trips"))
}

fn fano() -> Matroid {
    PointLine {
        classes: vec![1; 7],
        lines: vec![
            0b0000111, 0b0011001, 0b1100001, 0b0101010, 0b1010010, 0b1001100, 0b0110100,
        ],
    }
    .to_matroid()
}

fn tutte_pipeline() -> Outcome {
    let mut checked = 0;
    for (name, m) in catalog::fixtures() {
        let src = src_data(&m).map_err(|e| e.to_string())?;
        for mult in 1..=2 {
            let cone = free_m_cone(&m, mult).map_err(|e| e.to_string())?;
            for kind in VariantKind::ALL {
                let direct = tutte(&cone.variant(kind)).map_err(|e| e.to_string())?;
                let via = tutte_of_cone_from_src(&src, mult, kind).map_err(|e| e.to_string())?;
                ensure(via == direct, || format!("{name} m={mult} {kind}"))?;
                checked += 1;
            }
        }
    }
    let (n1, n2) = catalog::doubled_point_pair();
    let mut larger = vec![
        ("U(3,7)", Matroid::uniform(3, 7)),
        ("U(4,8)", Matroid::uniform(4, 8)),
        ("Fano", fano()),
        ("N1", n1),
        ("N2", n2),
    ];
    larger.extend(catalog::fixtures());
    for (name, m) in &larger {
        let g = g_invariant(m).map_err(|e| e.to_string())?;
        let via = src_from_g(&g).map_err(|e| e.to_string())?;
        ensure(via == src_data(m).map_err(|e| e.to_string())?, || {
            format!("{name}: src from G")
        })?;
    }
    Ok(format!(
        "{checked} cone Tutte comparisons, {} src recoveries",
        larger.len()
    ))
}

/// Checks every claim made about the separating pair.
fn separation_claims(n1: &Matroid, n2: &Matroid) -> Result<(), String> {
    let err = |e: freecone::Error| e.to_string();
    ensure(tutte(n1).map_err(err)? == tutte(n2).map_err(err)?, || {
        "Tutte polynomials differ".into()
    })?;
    let (s1, s2) = (src_data(n1).map_err(err)?, src_data(n2).map_err(err)?);
    ensure(
        s1.get((4, 3, 1)) == big(20) && s2.get((4, 3, 1)) == big(18),
        || format!("(4,3,1): {} and {}", s1.get((4, 3, 1)), s2.get((4, 3, 1))),
    )?;
    ensure(
        g_invariant(n1).map_err(err)? != g_invariant(n2).map_err(err)?,
        || "G-invariants agree".into(),
    )?;
    let q1 = free_m_cone(n1, 1).map_err(err)?;
    let q2 = free_m_cone(n2, 1).map_err(err)?;
    let (t1, t2) = (
        tutte(q1.matroid()).map_err(err)?,
        tutte(q2.matroid()).map_err(err)?,
    );
    ensure(t1 != t2, || "cone Tutte polynomials agree".into())?;
    ensure(
        t1 == tutte_of_cone_from_src(&s1, 1, VariantKind::Full).map_err(err)?
            && t2 == tutte_of_cone_from_src(&s2, 1, VariantKind::Full).map_err(err)?,
        || "transferred cone Tutte polynomial disagrees".into(),
    )
}

fn tutte_equal_pair_separated() -> Outcome {
    let (lit1, lit2) = catalog::simple_seven_point_pair();
    let literal = match separation_claims(&lit1, &lit2) {
        Ok(()) => "simple seven-point pair holds".to_string(),
        Err(e) => format!("simple seven-point pair rejected ({e})"),
    };
    let (p1, p2) = catalog::doubled_point_pair();
    separation_claims(&p1, &p2).map_err(|e| format!("doubled-point pair: {e}"))?;
    let (a, b) = catalog::search_tutte_separated_pair().ok_or_else(|| "search found no pair".to_string())?;
    let (n1, n2) = (a.to_matroid(), b.to_matroid());
    separation_claims(&n1, &n2).map_err(|e| format!("searched pair: {e}"))?;
    Ok(format!(
        "{literal}; doubled-point pair verified; search found classes {:?} lines {:?} vs classes {:?} lines {:?}",
        a.classes, a.lines, b.classes, b.lines
    ))
}

/// First axiom violated by a family of distinct sets, by direct search.
fn naive_first_violation(family: &[(Subset, usize)]) -> Option<Axiom> {
    let rank: BTreeMap<Subset, usize> = family.iter().copied().collect();
    let sets: Vec<Subset> = rank.keys().copied().collect();
    let least_upper = |x: Subset| {
        let ups: Vec<Subset> = sets.iter().copied().filter(|s| x.is_subset(*s)).collect();
        ups.iter().copied().find(|u| ups.iter().all(|w| u.is_subset(*w)))
    };
    let greatest_lower = |x: Subset| {
        let downs: Vec<Subset> = sets.iter().copied().filter(|s| s.is_subset(x)).collect();
        downs
            .iter()
            .copied()
            .find(|d| downs.iter().all(|w| w.is_subset(*d)))
    };
    for &x in &sets {
        for &y in &sets {
            if least_upper(x | y).is_none() || greatest_lower(x & y).is_none() {
                return Some(Axiom::Z0);
            }
        }
    }
    let bottom = greatest_lower(sets.iter().fold(sets[0], |acc, &s| acc & s))?;
    if rank[&bottom] != 0 {
        return Some(Axiom::Z1);
    }
    for &x in &sets {
        for &y in &sets {
            if x.is_proper_subset(y) {
                let gap = rank[&y] as i64 - rank[&x] as i64;
                if gap <= 0 || gap >= (y - x).len() as i64 {
                    return Some(Axiom::Z2);
                }
            }
        }
    }
    for &x in &sets {
        for &y in &sets {
            let (j, m) = (least_upper(x | y)?, greatest_lower(x & y)?);
            if rank[&j] + rank[&m] + ((x & y) - m).len() > rank[&x] + rank[&y] {
                return Some(Axiom::Z3);
            }
        }
    }
    None
}

fn axiom_validator() -> Outcome {
    let source = catalog::m1();
    let cone = free_m_cone(&source, 1).map_err(|e| e.to_string())?;
    // the family built from its definition, independent of the cone constructor
    let mut family: BTreeSet<(Subset, usize)> = source.cyclic_flats().iter().copied().collect();
    for (flat, r) in source.all_flats() {
        if flat.is_empty() {
            continue;
        }
        let mut q = Subset::singleton(cone.index(ConeElement::Tip));
        for e in flat.iter() {
            q = q
                .with(cone.index(ConeElement::Base(e)))
                .with(cone.index(ConeElement::Fiber(e, 1)));
        }
        family.insert((q, r + 1));
    }
    let family: Vec<(Subset, usize)> = family.into_iter().collect();
    let stored: BTreeSet<(Subset, usize)> = cone.matroid().cyclic_flats().iter().copied().collect();
    ensure(stored == family.iter().copied().collect(), || {
        "cone cyclic flats differ from the definition".into()
    })?;
    for mode in [Z3Mode::AllPairs, Z3Mode::IncomparableOnly] {
        ensure(validate_axioms(&family, mode).is_pass(), || {
            format!("{mode:?}: unmodified family fails")
        })?;
    }
    let mut sorted = family.clone();
    sorted.sort_by(|a, b| a.0.canonical_cmp(b.0));
    let mut seen = Vec::new();
    for i in 0..10 {
        let delta: i64 = if i % 2 == 0 { 1 } else { -1 };
        let index = (i * 7) % sorted.len();
        let mut mutated = sorted.clone();
        let r = mutated[index].1 as i64 + delta;
        let r = if r < 0 { mutated[index].1 + 1 } else { r as usize };
        mutated[index].1 = r;
        let expected =
            naive_first_violation(&mutated).ok_or_else(|| format!("mutation {i} keeps the axioms"))?;
        for mode in [Z3Mode::AllPairs, Z3Mode::IncomparableOnly] {
            let got = validate_axioms(&mutated, mode).axiom();
            ensure(got == Some(expected), || {
                format!("mutation {i}: {got:?} vs {expected}")
            })?;
        }
        seen.push(expected.to_string());
    }
    Ok(format!(
        "{} cyclic flats pass; mutations flagged {}",
        family.len(),
        seen.join(",")
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("G-invariant of the two planes", two_planes_g),
        ("catenary data of the two planes", two_planes_catenary),
        ("shared configuration, non-isomorphic", two_planes_configuration),
        (
            "equal cone catenary data, different cone configurations",
            cones_separate_two_planes,
        ),
        ("catenary transfer for every kind", catenary_transfer),
        ("flag bijection", bijection),
        ("Higgs lift", higgs),
        ("reconstruction round trip", reconstruction),
        ("Tutte and src pipeline", tutte_pipeline),
        ("Tutte-equal pair separated by cones", tutte_equal_pair_separated),
        ("axiom validator and mutations", axiom_validator),
    ];
    let mut failed = 0;
    let mut total = Duration::ZERO;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        total += elapsed;
        match outcome {
            Ok(detail) => println!("[PASS] {:>2} {title} ({elapsed:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2} {title} ({elapsed:.2?}): {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {total:.2?}",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
