//! Matroid isomorphism by backtracking over element bijections.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Largest ground set the search accepts.
pub const MAX_ISOMORPHISM_ELEMENTS: usize = 10;

/// Sorted `(size, rank)` labels of the cyclic flats containing each element.
fn signatures(m: &Matroid) -> Vec<Vec<(usize, usize)>> {
    (0..m.len())
        .map(|e| {
            let mut sig: Vec<(usize, usize)> = m
                .cyclic_flats()
                .iter()
                .filter(|(z, _)| z.contains(e))
                .map(|&(z, r)| (z.len(), r))
                .collect();
            sig.sort_unstable();
            sig
        })
        .collect()
}

/// Searches for a bijection `f` with `f[e]` the image of `e`, carrying the
/// cyclic flats of `a` with their ranks onto those of `b`. Both matroids must
/// have at most [`MAX_ISOMORPHISM_ELEMENTS`] elements.
pub fn is_isomorphic(a: &Matroid, b: &Matroid) -> Result<Option<Vec<usize>>> {
    for m in [a, b] {
        if m.len() > MAX_ISOMORPHISM_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                what: "isomorphism search",
                required: m.len() as u128,
                limit: MAX_ISOMORPHISM_ELEMENTS as u128,
            });
        }
    }
    if a.len() != b.len() || a.cyclic_flats().len() != b.cyclic_flats().len() {
        return Ok(None);
    }
    let labels = |m: &Matroid| {
        let mut l: Vec<(usize, usize)> = m.cyclic_flats().iter().map(|&(z, r)| (z.len(), r)).collect();
        l.sort_unstable();
        l
    };
    if labels(a) != labels(b) {
        return Ok(None);
    }
    let sig_a = signatures(a);
    let sig_b = signatures(b);
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return Ok(None);
    }

    // assign elements from the rarest signature class first
    let class_size = |e: usize| sig_a.iter().filter(|s| **s == sig_a[e]).count();
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by_key(|&e| (class_size(e), e));
    let mut position = vec![0; a.len()];
    for (i, &e) in order.iter().enumerate() {
        position[e] = i;
    }
    // flats checked once their last element (in assignment order) is placed
    let mut due: Vec<Vec<(Subset, usize)>> = vec![Vec::new(); a.len()];
    for &(z, r) in a.cyclic_flats() {
        if let Some(last) = z.iter().map(|e| position[e]).max() {
            due[last].push((z, r));
        }
    }
    // the empty cyclic flat, if any, is matched by the label check above
    let target: HashMap<Subset, usize> = b.cyclic_flats().iter().copied().collect();

    let mut image = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    let found = extend(0, &order, &sig_a, &sig_b, &due, &target, &mut image, &mut used);
    Ok(found.then_some(image))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    order: &[usize],
    sig_a: &[Vec<(usize, usize)>],
    sig_b: &[Vec<(usize, usize)>],
    due: &[Vec<(Subset, usize)>],
    target: &HashMap<Subset, usize>,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let e = order[depth];
    for candidate in 0..used.len() {
        if used[candidate] || sig_b[candidate] != sig_a[e] {
            continue;
        }
        image[e] = candidate;
        let consistent = due[depth].iter().all(|&(z, r)| {
            let mapped: Subset = z.iter().map(|x| image[x]).collect();
            target.get(&mapped) == Some(&r)
        });
        if consistent {
            used[candidate] = true;
            if extend(depth + 1, order, sig_a, sig_b, due, target, image, used) {
                return true;
            }
            used[candidate] = false;
        }
    }
    image[e] = usize::MAX;
    false
}
