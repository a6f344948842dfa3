use std::collections::BTreeMap;

use super::cone_size_map;
use crate::cone::{free_m_cone, VariantKind};
use crate::error::{Error, Result};
use crate::matroid::{default_names, Matroid};
use crate::subset::Subset;
use crate::zlattice::{configuration, configurations_equal, Configuration};

fn not_cone(msg: impl Into<String>) -> Error {
    Error::NotAConeConfiguration(msg.into())
}

fn check_bound(kind: VariantKind, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    if m < kind.min_reconstructible_m() {
        return Err(Error::OutsideReconstructionBound { kind, m });
    }
    Ok(())
}

/// Source size of a cone node of the given size.
fn source_size(size: usize, kind: VariantKind, m: usize) -> Option<usize> {
    let (slope, intercept) = cone_size_map(kind, m);
    let rest = size.checked_sub(intercept)?;
    (rest % slope == 0).then_some(rest / slope)
}

/// Families of rank-2 nodes that may be the cones of the points of the
/// source. Only a source of rank 2 with a tie can give more than one.
fn line_candidates(cfg: &Configuration, kind: VariantKind, m: usize) -> Result<Vec<Vec<usize>>> {
    let top = cfg.top();
    let nodes_of_rank = |r: usize| (0..cfg.len()).filter(move |&v| cfg.rank(v) == r);
    match cfg.rank(top) {
        0 => Ok(vec![vec![]]),
        1 => Err(not_cone("the top has rank 1")),
        2 => Ok(vec![vec![top]]),
        3 => {
            let n =
                source_size(cfg.size(top), kind, m).ok_or_else(|| not_cone("the top has the wrong size"))?;
            let lines: Vec<usize> = nodes_of_rank(2).collect();
            let covers_points = |family: &[usize]| {
                family
                    .iter()
                    .map(|&l| source_size(cfg.size(l), kind, m))
                    .sum::<Option<usize>>()
                    == Some(n)
            };
            if covers_points(&lines) {
                return Ok(vec![lines]);
            }
            if !kind.keeps_base() {
                return Err(not_cone("the rank-2 nodes do not account for every point"));
            }
            // the source itself is the one extra node: it has every point and
            // lies above every parallel class
            let points: Vec<usize> = nodes_of_rank(1).collect();
            let found: Vec<Vec<usize>> = lines
                .iter()
                .filter(|&&v| cfg.size(v) == n && points.iter().all(|&p| cfg.leq(p, v)))
                .map(|&skip| lines.iter().copied().filter(|&l| l != skip).collect::<Vec<_>>())
                .filter(|family| covers_points(family))
                .collect();
            if found.is_empty() {
                Err(not_cone("the rank-2 nodes do not account for every point"))
            } else {
                Ok(found)
            }
        }
        _ => Ok(vec![largest_line_family(cfg)?]),
    }
}

/// The unique largest family of rank-2 nodes with at most one node below
/// each, pairwise joins of rank 3, and join equal to the top.
fn largest_line_family(cfg: &Configuration) -> Result<Vec<usize>> {
    let bottom = cfg.bottom();
    let top = cfg.top();
    let candidates: Vec<usize> = (0..cfg.len())
        .filter(|&v| cfg.rank(v) == 2)
        .filter(|&v| {
            (0..cfg.len())
                .filter(|&w| cfg.lt(bottom, w) && cfg.lt(w, v))
                .count()
                <= 1
        })
        .collect();
    let k = candidates.len();
    let adjacent: Vec<Vec<bool>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| i != j && cfg.rank(cfg.join(candidates[i], candidates[j])) == 3)
                .collect()
        })
        .collect();
    let mut cliques = Vec::new();
    bron_kerbosch(&adjacent, Vec::new(), (0..k).collect(), Vec::new(), &mut cliques);
    let spanning: Vec<Vec<usize>> = cliques
        .into_iter()
        .map(|c| c.into_iter().map(|i| candidates[i]).collect::<Vec<_>>())
        .filter(|family| cfg.join_all(family.iter().copied()) == top)
        .collect();
    let best = spanning
        .iter()
        .map(Vec::len)
        .max()
        .ok_or_else(|| not_cone("no family of rank-2 nodes with pairwise rank-3 joins spans the top"))?;
    let mut winners = spanning.into_iter().filter(|f| f.len() == best);
    let mut family = winners.next().expect("a family of the largest size");
    if winners.next().is_some() {
        return Err(not_cone("several largest line families"));
    }
    family.sort_unstable();
    Ok(family)
}

fn bron_kerbosch(
    adjacent: &[Vec<bool>],
    clique: Vec<usize>,
    mut open: Vec<usize>,
    mut done: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if open.is_empty() {
        if done.is_empty() {
            out.push(clique);
        }
        return;
    }
    let pivot = *open
        .iter()
        .chain(&done)
        .max_by_key(|&&u| open.iter().filter(|&&v| adjacent[u][v]).count())
        .expect("open is nonempty");
    let branch: Vec<usize> = open.iter().copied().filter(|&v| !adjacent[pivot][v]).collect();
    for v in branch {
        let mut next = clique.clone();
        next.push(v);
        let keep = |set: &[usize]| set.iter().copied().filter(|&w| adjacent[v][w]).collect();
        bron_kerbosch(adjacent, next, keep(&open), keep(&done), out);
        open.retain(|&w| w != v);
        done.push(v);
    }
}

/// The nodes of a variant's configuration that are the cones of the points
/// (parallel classes) of the source, in increasing order.
pub fn identify_cone_lines(cfg: &Configuration, kind: VariantKind, m: usize) -> Result<Vec<usize>> {
    check_bound(kind, m)?;
    let mut last = None;
    for lines in line_candidates(cfg, kind, m)? {
        match rebuild(cfg, &lines, kind, m) {
            Ok(_) => return Ok(lines),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| not_cone("no candidate cone lines")))
}

/// Recovers the source matroid, up to isomorphism, from the configuration
/// of a variant of its free `m`-cone.
pub fn reconstruct_from_cone_config(cfg: &Configuration, kind: VariantKind, m: usize) -> Result<Matroid> {
    check_bound(kind, m)?;
    let mut last = None;
    for lines in line_candidates(cfg, kind, m)? {
        match rebuild(cfg, &lines, kind, m) {
            Ok(found) => return Ok(found),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| not_cone("no candidate cone lines")))
}

/// Builds the source from chosen cone lines and checks that its cone
/// reproduces the configuration.
fn rebuild(cfg: &Configuration, lines: &[usize], kind: VariantKind, m: usize) -> Result<Matroid> {
    let bottom = cfg.bottom();
    let mut blocks = Vec::with_capacity(lines.len());
    let mut next = 0;
    for &line in lines {
        let points = source_size(cfg.size(line), kind, m)
            .filter(|&p| p > 0)
            .ok_or_else(|| not_cone(format!("node {line} has the wrong size for a cone line")))?;
        if kind.keeps_base() {
            let below: Vec<usize> = (0..cfg.len())
                .filter(|&w| cfg.lt(bottom, w) && cfg.lt(w, line))
                .collect();
            let expected = match below[..] {
                [] => 1,
                [class] => cfg.size(class),
                _ => return Err(not_cone(format!("node {line} has several nodes below it"))),
            };
            if expected != points {
                return Err(not_cone(format!(
                    "the parallel class under node {line} has the wrong size"
                )));
            }
        }
        blocks.push((next..next + points).collect::<Subset>());
        next += points;
    }
    let n = next;
    let mut flats: BTreeMap<Subset, usize> = BTreeMap::from([(Subset::EMPTY, 0)]);
    for v in 0..cfg.len() {
        let inside: Subset = lines
            .iter()
            .zip(&blocks)
            .filter(|&(&l, _)| cfg.leq(l, v))
            .fold(Subset::EMPTY, |acc, (_, &b)| acc | b);
        if inside.is_empty() {
            continue;
        }
        let rank = cfg.rank(v) - 1;
        if *flats.entry(inside).or_insert(rank) != rank {
            return Err(not_cone("two nodes over the same points disagree on rank"));
        }
    }
    let ground = Subset::full(n);
    if flats.get(&ground).is_none() {
        return Err(not_cone("the cone lines do not span the top"));
    }
    let source = Matroid::from_rank_fn(default_names(n), |x| {
        flats
            .iter()
            .filter(|(f, _)| x.is_subset(**f))
            .map(|(_, &r)| r)
            .min()
            .expect("the ground set is listed")
    })
    .map_err(|e| not_cone(format!("the recovered sets are not the flats of a matroid: {e}")))?;
    let cone = free_m_cone(&source, m)?;
    if !configurations_equal(&configuration(&cone.variant(kind)), cfg) {
        return Err(not_cone(
            "the recovered matroid does not reproduce the configuration",
        ));
    }
    Ok(source)
}

/// Adds back the sizes lost in a variant. The tipless configuration becomes
/// that of the full cone, and the tipless-baseless one that of the baseless
/// cone. The baseless configuration gets the sizes of the full cone on its
/// nodes, whose set lacks the cyclic flats of the source.
pub fn restore_cone_configuration(cfg: &Configuration, kind: VariantKind, m: usize) -> Result<Configuration> {
    check_bound(kind, m)?;
    let mut sizes = cfg.sizes().to_vec();
    match kind {
        VariantKind::Full => {}
        VariantKind::Tipless => {
            let lines = identify_cone_lines(cfg, kind, m)?;
            for (v, size) in sizes.iter_mut().enumerate() {
                if lines.iter().any(|&l| cfg.leq(l, v)) {
                    *size += 1;
                }
            }
        }
        VariantKind::Baseless => {
            let lines = identify_cone_lines(cfg, kind, m)?;
            for (v, size) in sizes.iter_mut().enumerate() {
                for &l in lines.iter().filter(|&&l| cfg.leq(l, v)) {
                    let fibers = cfg.size(l) - 1;
                    if !fibers.is_multiple_of(m) {
                        return Err(not_cone(format!("node {l} does not hold whole fibers")));
                    }
                    *size += fibers / m;
                }
            }
        }
        VariantKind::TiplessBaseless => {
            let bottom = cfg.bottom();
            for (v, size) in sizes.iter_mut().enumerate() {
                if v != bottom {
                    *size += 1;
                }
            }
        }
    }
    cfg.with_sizes(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::iso::is_isomorphic;

    fn variant_config(m: &Matroid, mult: usize, kind: VariantKind) -> Configuration {
        configuration(&free_m_cone(m, mult).unwrap().variant(kind))
    }

    #[test]
    fn recovers_the_two_planes() {
        for source in [catalog::m1(), catalog::m2()] {
            let found = reconstruct_from_cone_config(
                &variant_config(&source, 1, VariantKind::Full),
                VariantKind::Full,
                1,
            )
            .unwrap();
            assert!(is_isomorphic(&found, &source).unwrap().is_some());
        }
        let found = reconstruct_from_cone_config(
            &variant_config(&catalog::m2(), 2, VariantKind::Tipless),
            VariantKind::Tipless,
            2,
        )
        .unwrap();
        assert!(is_isomorphic(&found, &catalog::m2()).unwrap().is_some());
    }

    #[test]
    fn small_rank_sources() {
        let found = reconstruct_from_cone_config(
            &variant_config(&Matroid::uniform(1, 1), 1, VariantKind::Full),
            VariantKind::Full,
            1,
        )
        .unwrap();
        assert!(is_isomorphic(&found, &Matroid::uniform(1, 1)).unwrap().is_some());
        for (name, source) in catalog::fixtures()
            .into_iter()
            .filter(|(_, m)| m.full_rank() <= 2)
        {
            for kind in VariantKind::ALL {
                let mult = kind.min_reconstructible_m();
                let found = reconstruct_from_cone_config(&variant_config(&source, mult, kind), kind, mult)
                    .unwrap_or_else(|e| panic!("{name} {kind}: {e}"));
                assert!(is_isomorphic(&found, &source).unwrap().is_some(), "{name} {kind}");
            }
        }
    }

    #[test]
    fn bounds_are_enforced() {
        let cfg = variant_config(&catalog::m1(), 1, VariantKind::Tipless);
        assert!(matches!(
            reconstruct_from_cone_config(&cfg, VariantKind::Tipless, 1),
            Err(Error::OutsideReconstructionBound { .. })
        ));
    }

    #[test]
    fn source_configuration_is_not_a_cone() {
        let cfg = configuration(&catalog::m1());
        assert!(matches!(
            reconstruct_from_cone_config(&cfg, VariantKind::Full, 1),
            Err(Error::NotAConeConfiguration(_))
        ));
    }

    #[test]
    fn restoration_matches_the_larger_cone() {
        for source in [catalog::m1(), catalog::whirl3(), Matroid::uniform(3, 3)] {
            let cone = free_m_cone(&source, 3).unwrap();
            let full = configuration(cone.matroid());
            let tipless = configuration(&cone.variant(VariantKind::Tipless));
            let restored = restore_cone_configuration(&tipless, VariantKind::Tipless, 3).unwrap();
            assert!(configurations_equal(&restored, &full));
            let baseless = configuration(&cone.variant(VariantKind::Baseless));
            let tb = configuration(&cone.variant(VariantKind::TiplessBaseless));
            let restored = restore_cone_configuration(&tb, VariantKind::TiplessBaseless, 3).unwrap();
            assert!(configurations_equal(&restored, &baseless));
        }
        // a free source has no cyclic flats beyond the empty set, so the
        // restored baseless configuration is the full one
        let cone = free_m_cone(&Matroid::uniform(3, 3), 2).unwrap();
        let baseless = configuration(&cone.variant(VariantKind::Baseless));
        let restored = restore_cone_configuration(&baseless, VariantKind::Baseless, 2).unwrap();
        assert!(configurations_equal(&restored, &configuration(cone.matroid())));
    }
}
