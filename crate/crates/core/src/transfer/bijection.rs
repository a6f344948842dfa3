use crate::cone::ConeMatroid;
use crate::error::{Error, Result};
use crate::invariants::{flags, Flag};
use crate::subset::Subset;

/// The data indexing a flag of the cone: a flag of the source, the number of
/// steps `split` taken before the tip joins, the steps (1-based, increasing,
/// at most `split`) that add a single fiber element, and those fiber
/// elements in order.
///
/// The `j`-th fiber element must lie over the `j`-th of the last
/// `fiber_steps.len()` steps of the source flag up to `split`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlagTuple {
    pub flag: Flag,
    pub split: usize,
    pub fiber_steps: Vec<usize>,
    pub fibers: Vec<usize>,
}

impl FlagTuple {
    /// Checks the tuple against the cone it is meant for.
    pub fn validate(&self, cone: &ConeMatroid) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTuple(msg));
        let m = cone.source();
        let xs = self.flag.sets();
        let k = m.full_rank();
        if xs.len() != k + 1 {
            return bad(format!("flag has {} sets, expected {}", xs.len(), k + 1));
        }
        for (i, &x) in xs.iter().enumerate() {
            if m.rank(x) != i || !m.is_flat(x) || (i > 0 && !xs[i - 1].is_proper_subset(x)) {
                return bad(format!(
                    "set {i} of the flag is not a rank-{i} flat above the last"
                ));
            }
        }
        if self.split > k {
            return bad(format!("split {} exceeds the rank {k}", self.split));
        }
        let steps = &self.fiber_steps;
        if steps.windows(2).any(|w| w[0] >= w[1])
            || steps.first().is_some_and(|&s| s == 0)
            || steps.last().is_some_and(|&s| s > self.split)
        {
            return bad(format!(
                "fiber steps {steps:?} are not an increasing subset of 1..={}",
                self.split
            ));
        }
        if self.fibers.len() != steps.len() {
            return bad("one fiber element is needed per fiber step".into());
        }
        let offset = self.split - steps.len();
        for (j, &x) in self.fibers.iter().enumerate() {
            if !cone.fibers().contains(x) {
                return bad(format!("element {x} is not a fiber element"));
            }
            let lies_over = cone.p(Subset::singleton(x));
            let layer = xs[offset + j + 1] - xs[offset + j];
            if !lies_over.is_subset(layer) {
                return bad(format!("fiber element {x} lies over the wrong step"));
            }
        }
        Ok(())
    }
}

/// Maps a tuple to the flag of the cone it indexes.
pub fn flag_bijection(t: &FlagTuple, cone: &ConeMatroid) -> Result<Flag> {
    t.validate(cone)?;
    let xs = t.flag.sets();
    let k = xs.len() - 1;
    let mut ys = vec![Subset::EMPTY];
    let (mut next_fiber, mut next_plain) = (0, 0);
    for i in 1..=t.split {
        let prev = ys[i - 1];
        if t.fiber_steps.get(next_fiber) == Some(&i) {
            ys.push(prev.with(t.fibers[next_fiber]));
            next_fiber += 1;
        } else {
            next_plain += 1;
            ys.push(prev | xs[next_plain]);
        }
    }
    for i in t.split + 1..=k + 1 {
        ys.push(cone.q(xs[i - 1]));
    }
    Ok(Flag(ys))
}

/// Recovers the tuple indexing a flag of the cone.
pub fn flag_bijection_inverse(flag: &Flag, cone: &ConeMatroid) -> Result<FlagTuple> {
    let bad = |msg: &str| Err(Error::InvalidTuple(msg.to_string()));
    let ys = flag.sets();
    let source = cone.source();
    let base = cone.base();
    let k = source.full_rank();
    if ys.len() != k + 2 || !ys[0].is_empty() {
        return bad("not a flag of the cone");
    }
    let Some(split) = (0..ys.len()).rev().find(|&i| !ys[i].contains(cone.tip())) else {
        return bad("not a flag of the cone");
    };
    if split > k {
        return bad("the top of the flag avoids the tip");
    }
    let mut fiber_steps = Vec::new();
    let mut fibers = Vec::new();
    for i in 1..=split {
        let step = ys[i] - ys[i - 1];
        if step.is_disjoint(base) {
            if step.len() != 1 {
                return bad("a step adds several fiber elements");
            }
            fiber_steps.push(i);
            fibers.push(step.first().unwrap());
        } else if !step.is_subset(base) {
            return bad("a step mixes base and fiber elements");
        }
    }
    let mut xs: Vec<Subset> = Vec::with_capacity(k + 1);
    for &y in &ys[..=split] {
        let on_base = y & base;
        if xs.last() != Some(&on_base) {
            xs.push(on_base);
        }
    }
    if xs.len() != split - fibers.len() + 1 {
        return bad("base parts do not form the start of a flag");
    }
    let pivot = *xs.last().unwrap();
    for j in 1..=fibers.len() {
        let over = cone.p(fibers[..j].iter().copied().collect());
        xs.push(source.closure(pivot | over));
    }
    if ys[split + 1] & base != xs[split] {
        return bad("the first set containing the tip is not the cone of the last flat");
    }
    xs.extend(ys[split + 2..].iter().map(|&y| y & base));
    if (split + 1..ys.len()).any(|i| ys[i] != cone.q(xs[i - 1])) {
        return bad("a set containing the tip is not the cone of a flat");
    }
    let tuple = FlagTuple {
        flag: Flag(xs),
        split,
        fiber_steps,
        fibers,
    };
    tuple.validate(cone)?;
    Ok(tuple)
}

/// Every tuple for the cone.
pub fn enumerate_tuples(cone: &ConeMatroid) -> Vec<FlagTuple> {
    let k = cone.source().full_rank();
    let mut out = Vec::new();
    for flag in flags(cone.source()) {
        let xs = flag.sets().to_vec();
        for split in 0..=k {
            for mask in 0u64..1 << split {
                let steps: Vec<usize> = (1..=split).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                let offset = split - steps.len();
                let options: Vec<Vec<usize>> = (1..=steps.len())
                    .map(|j| {
                        (xs[offset + j] - xs[offset + j - 1])
                            .iter()
                            .flat_map(|e| cone.fiber(e).iter())
                            .collect()
                    })
                    .collect();
                let mut choice = Vec::with_capacity(options.len());
                product(&options, &mut choice, &mut |fibers| {
                    out.push(FlagTuple {
                        flag: flag.clone(),
                        split,
                        fiber_steps: steps.clone(),
                        fibers: fibers.to_vec(),
                    });
                });
            }
        }
    }
    out
}

fn product(options: &[Vec<usize>], choice: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if choice.len() == options.len() {
        emit(choice);
        return;
    }
    for &x in &options[choice.len()] {
        choice.push(x);
        product(options, choice, emit);
        choice.pop();
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::catalog;
    use crate::cone::{free_m_cone, ConeElement};
    use crate::matroid::Matroid;

    #[test]
    fn point_examples() {
        let cone = free_m_cone(&Matroid::uniform(1, 1), 1).unwrap();
        let fiber = cone.index(ConeElement::Fiber(0, 1));
        let flag = Flag(vec![Subset::EMPTY, Subset::singleton(0)]);
        let with_fiber = FlagTuple {
            flag: flag.clone(),
            split: 1,
            fiber_steps: vec![1],
            fibers: vec![fiber],
        };
        let all = cone.matroid().ground();
        assert_eq!(
            flag_bijection(&with_fiber, &cone).unwrap(),
            Flag(vec![Subset::EMPTY, Subset::singleton(fiber), all])
        );
        let tip_first = FlagTuple {
            flag,
            split: 0,
            fiber_steps: vec![],
            fibers: vec![],
        };
        assert_eq!(
            flag_bijection(&tip_first, &cone).unwrap(),
            Flag(vec![Subset::EMPTY, Subset::singleton(cone.tip()), all])
        );
    }

    #[test]
    fn rejects_misplaced_fiber() {
        let cone = free_m_cone(&catalog::m1(), 1).unwrap();
        let flag = flags(cone.source()).next().unwrap();
        let first = flag.sets()[1].first().unwrap();
        let elsewhere = (0..6).find(|&e| e != first).unwrap();
        let t = FlagTuple {
            flag,
            split: 1,
            fiber_steps: vec![1],
            fibers: vec![cone.index(ConeElement::Fiber(elsewhere, 1))],
        };
        assert!(matches!(flag_bijection(&t, &cone), Err(Error::InvalidTuple(_))));
    }

    #[test]
    fn bijective_on_small_cones() {
        for m in [catalog::m2(), Matroid::uniform(2, 3), catalog::whirl3()] {
            for mult in 1..=2 {
                let cone = free_m_cone(&m, mult).unwrap();
                let tuples = enumerate_tuples(&cone);
                let mut image = HashSet::new();
                for t in &tuples {
                    let flag = flag_bijection(t, &cone).unwrap();
                    assert_eq!(&flag_bijection_inverse(&flag, &cone).unwrap(), t);
                    assert!(image.insert(flag));
                }
                let direct: HashSet<Flag> = flags(cone.matroid()).collect();
                assert_eq!(image, direct);
            }
        }
    }
}
