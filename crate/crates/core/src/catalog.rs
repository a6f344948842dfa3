//! Small named matroids used as fixtures, and a search over rank-3 matroids
//! described by points and lines.

use std::collections::BTreeMap;

use crate::matroid::{default_names, Matroid};
use crate::subset::Subset;

fn set(ids: &[usize]) -> Subset {
    ids.iter().map(|i| i - 1).collect()
}

fn from_flats(n: usize, flats: &[(&[usize], usize)]) -> Matroid {
    Matroid::from_cyclic_flats(n, flats.iter().map(|&(ids, r)| (set(ids), r)))
        .expect("catalog entry satisfies the cyclic-flat axioms")
}

/// Rank 3 on six points with two disjoint three-point lines.
pub fn m1() -> Matroid {
    from_flats(
        6,
        &[
            (&[], 0),
            (&[1, 2, 3], 2),
            (&[4, 5, 6], 2),
            (&[1, 2, 3, 4, 5, 6], 3),
        ],
    )
}

/// Rank 3 on six points with two three-point lines sharing a point.
pub fn m2() -> Matroid {
    from_flats(
        6,
        &[
            (&[], 0),
            (&[1, 2, 3], 2),
            (&[1, 4, 5], 2),
            (&[1, 2, 3, 4, 5, 6], 3),
        ],
    )
}

/// The rank-3 whirl: a triangle with a point added on each side.
pub fn whirl3() -> Matroid {
    from_flats(
        6,
        &[
            (&[], 0),
            (&[1, 2, 3], 2),
            (&[3, 4, 5], 2),
            (&[5, 6, 1], 2),
            (&[1, 2, 3, 4, 5, 6], 3),
        ],
    )
}

/// The cycle matroid of the complete graph on four vertices.
pub fn k4() -> Matroid {
    from_flats(
        6,
        &[
            (&[], 0),
            (&[1, 2, 3], 2),
            (&[1, 4, 5], 2),
            (&[2, 4, 6], 2),
            (&[3, 5, 6], 2),
            (&[1, 2, 3, 4, 5, 6], 3),
        ],
    )
}

/// Loopless fixtures on at most six elements.
pub fn fixtures() -> Vec<(&'static str, Matroid)> {
    let mut out = vec![
        ("U(1,1)", Matroid::uniform(1, 1)),
        ("U(1,2)", Matroid::uniform(1, 2)),
        ("U(1,3)", Matroid::uniform(1, 3)),
        ("U(2,2)", Matroid::uniform(2, 2)),
        ("U(2,3)", Matroid::uniform(2, 3)),
        ("U(2,4)", Matroid::uniform(2, 4)),
        ("U(2,5)", Matroid::uniform(2, 5)),
        ("U(3,3)", Matroid::uniform(3, 3)),
        ("U(3,4)", Matroid::uniform(3, 4)),
        ("U(3,5)", Matroid::uniform(3, 5)),
        ("U(3,6)", Matroid::uniform(3, 6)),
        ("U(4,5)", Matroid::uniform(4, 5)),
        ("U(4,6)", Matroid::uniform(4, 6)),
        ("M1", m1()),
        ("M2", m2()),
        ("whirl", whirl3()),
        ("M(K4)", k4()),
    ];
    let more: [(&'static str, usize, &[(&[usize], usize)]); 8] = [
        // parallel classes {1,2} and {3,4} in rank 2
        (
            "P(2,2)",
            4,
            &[(&[], 0), (&[1, 2], 1), (&[3, 4], 1), (&[1, 2, 3, 4], 2)],
        ),
        // parallel classes {1,2}, {3}, {4} in rank 2
        ("P(2,1,1)", 4, &[(&[], 0), (&[1, 2], 1), (&[1, 2, 3, 4], 2)]),
        // two parallel pairs on a line, plus a coloop
        (
            "P(2,2)+coloop",
            5,
            &[(&[], 0), (&[1, 2], 1), (&[3, 4], 1), (&[1, 2, 3, 4], 2)],
        ),
        // a parallel pair on a four-point line in rank 3
        (
            "pair-on-line",
            6,
            &[
                (&[], 0),
                (&[1, 2], 1),
                (&[1, 2, 3, 4], 2),
                (&[1, 2, 3, 4, 5, 6], 3),
            ],
        ),
        (
            "line4-in-rank3",
            6,
            &[(&[], 0), (&[1, 2, 3, 4], 2), (&[1, 2, 3, 4, 5, 6], 3)],
        ),
        (
            "line3-in-rank3",
            6,
            &[(&[], 0), (&[1, 2, 3], 2), (&[1, 2, 3, 4, 5, 6], 3)],
        ),
        (
            "U(2,3)+U(2,3)",
            6,
            &[
                (&[], 0),
                (&[1, 2, 3], 2),
                (&[4, 5, 6], 2),
                (&[1, 2, 3, 4, 5, 6], 4),
            ],
        ),
        (
            "U(1,3)+U(2,3)",
            6,
            &[
                (&[], 0),
                (&[1, 2, 3], 1),
                (&[4, 5, 6], 2),
                (&[1, 2, 3, 4, 5, 6], 3),
            ],
        ),
    ];
    for (name, n, flats) in more {
        out.push((name, from_flats(n, flats)));
    }
    out.push(("U(2,3)+coloop", from_flats(4, &[(&[], 0), (&[1, 2, 3], 2)])));
    out
}

/// A loopless matroid of rank at most 3 given by parallel classes (points)
/// and lines, each line a set of at least three points, two lines sharing at
/// most one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointLine {
    /// Number of elements in each point.
    pub classes: Vec<usize>,
    /// Lines as bitmasks over points.
    pub lines: Vec<u32>,
}

impl PointLine {
    pub fn len(&self) -> usize {
        self.classes.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Point of each element; points own consecutive element ids.
    fn point_of(&self) -> Vec<usize> {
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(p, &size)| std::iter::repeat_n(p, size))
            .collect()
    }

    fn rank_of_points(&self, points: u32) -> usize {
        match points.count_ones() {
            k @ 0..=2 => k as usize,
            _ if self.lines.iter().any(|&l| points & !l == 0) => 2,
            _ => 3,
        }
    }

    /// Rank of every subset of the ground set, indexed by bitmask.
    pub fn rank_table(&self) -> Vec<usize> {
        let point = self.point_of();
        (0..1u64 << self.len())
            .map(|bits| {
                let points = Subset::from_bits(bits)
                    .iter()
                    .fold(0u32, |acc, e| acc | 1 << point[e]);
                self.rank_of_points(points)
            })
            .collect()
    }

    pub fn to_matroid(&self) -> Matroid {
        let table = self.rank_table();
        Matroid::from_rank_fn(default_names(self.len()), |x| table[x.bits() as usize])
            .expect("points and lines define a matroid")
    }
}

/// Two simple seven-point planes, one with four three-point lines and one
/// with a four-point line and a three-point line. Their Tutte polynomials
/// differ, so they are not a Tutte-equal pair.
pub fn simple_seven_point_pair() -> (Matroid, Matroid) {
    let line = |ids: &[usize]| ids.iter().fold(0u32, |acc, i| acc | 1 << (i - 1));
    let n1 = PointLine {
        classes: vec![1; 7],
        lines: vec![
            line(&[1, 2, 7]),
            line(&[1, 3, 5]),
            line(&[2, 4, 5]),
            line(&[3, 4, 6]),
        ],
    };
    let n2 = PointLine {
        classes: vec![1; 7],
        lines: vec![line(&[1, 4, 6, 7]), line(&[1, 2, 3])],
    };
    (n1.to_matroid(), n2.to_matroid())
}

/// Two seven-element planes with one doubled point `X`, sharing the Tutte
/// polynomial but not the G-invariant. Points are `A, B, C, D, F, X` in the
/// first and `A, G, H, C, D, X` in the second.
pub fn doubled_point_pair() -> (Matroid, Matroid) {
    // points: 0=A 1=B 2=C 3=D 4=F 5=X
    let n1 = PointLine {
        classes: vec![1, 1, 1, 1, 1, 2],
        lines: vec![0b000111, 0b101001, 0b110010, 0b011100],
    };
    // points: 0=A 1=G 2=H 3=C 4=D 5=X
    let n2 = PointLine {
        classes: vec![1, 1, 1, 1, 1, 2],
        lines: vec![0b001111, 0b110001],
    };
    (n1.to_matroid(), n2.to_matroid())
}

/// Linear spaces on `points` labelled points: families of lines (sets of at
/// least three points) pairwise meeting in at most one point.
fn linear_spaces(points: usize) -> Vec<Vec<u32>> {
    let candidates: Vec<u32> = (0u32..1 << points).filter(|l| l.count_ones() >= 3).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn grow(start: usize, candidates: &[u32], chosen: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(chosen.clone());
        for i in start..candidates.len() {
            let line = candidates[i];
            if chosen.iter().all(|&l| (l & line).count_ones() <= 1) {
                chosen.push(line);
                grow(i + 1, candidates, chosen, out);
                chosen.pop();
            }
        }
    }
    grow(0, &candidates, &mut chosen, &mut out);
    out
}

/// Every loopless rank-3 point-line matroid on `n` elements, up to the order
/// of its parallel classes by size. Parallel classes are listed in
/// nonincreasing size, so many isomorphic copies are skipped but not all.
pub fn rank3_point_lines(n: usize) -> Vec<PointLine> {
    fn partitions(n: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            acc.push(part);
            partitions(n - part, part, acc, out);
            acc.pop();
        }
    }
    let mut class_lists = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut class_lists);
    let mut out = Vec::new();
    for classes in class_lists {
        let points = classes.len();
        if points < 3 {
            continue;
        }
        let all = (1u32 << points) - 1;
        for lines in linear_spaces(points) {
            if lines.contains(&all) {
                continue;
            }
            out.push(PointLine {
                classes: classes.clone(),
                lines,
            });
        }
    }
    out
}

/// Size-rank counts and the number of size-4, rank-3 sets with exactly one
/// coloop, computed from a rank table.
fn separation_profile(table: &[usize], n: usize) -> (Vec<(usize, usize, u64)>, u64) {
    let mut size_rank: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut marked = 0;
    for (bits, &r) in table.iter().enumerate() {
        let x = Subset::from_bits(bits as u64);
        *size_rank.entry((x.len(), r)).or_default() += 1;
        if x.len() == 4 && r == 3 {
            let coloops = x
                .iter()
                .filter(|&e| table[x.without(e).bits() as usize] < r)
                .count();
            if coloops == 1 {
                marked += 1;
            }
        }
    }
    debug_assert_eq!(table.len(), 1 << n);
    (
        size_rank.into_iter().map(|((s, r), c)| (s, r, c)).collect(),
        marked,
    )
}

/// Searches loopless rank-3 matroids on seven elements for a pair with the
/// same size-rank data (hence the same Tutte polynomial) in which the first
/// has 20 size-4, rank-3 sets with one coloop and the second 18. Returns the
/// first such pair in enumeration order.
pub fn search_tutte_separated_pair() -> Option<(PointLine, PointLine)> {
    let mut by_size_rank: BTreeMap<Vec<(usize, usize, u64)>, (Option<usize>, Option<usize>)> =
        BTreeMap::new();
    let candidates = rank3_point_lines(7);
    for (i, pl) in candidates.iter().enumerate() {
        let (key, marked) = separation_profile(&pl.rank_table(), 7);
        let slot = by_size_rank.entry(key).or_default();
        match marked {
            20 if slot.0.is_none() => slot.0 = Some(i),
            18 if slot.1.is_none() => slot.1 = Some(i),
            _ => {}
        }
        if let (Some(a), Some(b)) = *slot {
            return Some((candidates[a].clone(), candidates[b].clone()));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlattice::{validate_axioms, Z3Mode};

    #[test]
    fn fixtures_are_loopless_and_valid() {
        let fixtures = fixtures();
        assert!(fixtures.len() >= 20);
        for (name, m) in fixtures {
            assert!(m.is_loopless(), "{name}");
            assert!(m.len() <= 6, "{name}");
            assert!(validate_axioms(m.cyclic_flats(), Z3Mode::AllPairs).is_pass());
        }
    }

    #[test]
    fn point_line_matches_cyclic_flat_description() {
        let pl = PointLine {
            classes: vec![1; 6],
            lines: vec![0b000111, 0b111000],
        };
        assert_eq!(pl.to_matroid(), m1());
    }

    #[test]
    fn parallel_reading_has_expected_shape() {
        let (n1, n2) = doubled_point_pair();
        assert_eq!(n1.len(), 7);
        assert_eq!(n2.len(), 7);
        assert_eq!(n1.full_rank(), 3);
        assert_eq!(n2.full_rank(), 3);
        assert!(n1.is_loopless() && n2.is_loopless());
    }

    #[test]
    fn linear_spaces_on_three_points() {
        assert_eq!(linear_spaces(3), vec![vec![], vec![0b111]]);
    }
}
