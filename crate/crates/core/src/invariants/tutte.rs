use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::Limits;
use crate::error::Result;
use crate::matroid::Matroid;
use crate::subset::Subset;

/// A polynomial in `x` and `y` with integer coefficients; `coeffs[i][j]` is
/// the coefficient of `x^i y^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuttePolynomial {
    coeffs: Vec<Vec<BigInt>>,
}

fn binomial_row(a: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 0..a {
        let next = &row[i] * BigInt::from(a - i) / BigInt::from(i + 1);
        row.push(next);
    }
    row
}

/// Coefficients of `(z - 1)^a`.
fn shifted_power(a: usize) -> Vec<BigInt> {
    binomial_row(a)
        .into_iter()
        .enumerate()
        .map(|(i, c)| if (a - i) % 2 == 1 { -c } else { c })
        .collect()
}

impl TuttePolynomial {
    /// Expands `sum N(s, r) (x-1)^(rank-r) (y-1)^(s-r)` over size-rank
    /// counts `N`.
    pub fn from_size_rank(rank: usize, counts: &BTreeMap<(usize, usize), BigUint>) -> Self {
        let mut coeffs: Vec<Vec<BigInt>> = Vec::new();
        for (&(size, r), count) in counts {
            if count.is_zero() {
                continue;
            }
            let count = BigInt::from(count.clone());
            let xs = shifted_power(rank - r);
            let ys = shifted_power(size - r);
            for (i, cx) in xs.iter().enumerate() {
                if coeffs.len() <= i {
                    coeffs.resize(i + 1, Vec::new());
                }
                let row = &mut coeffs[i];
                if row.len() < ys.len() {
                    row.resize(ys.len(), BigInt::zero());
                }
                for (j, cy) in ys.iter().enumerate() {
                    row[j] += &count * cx * cy;
                }
            }
        }
        TuttePolynomial::from_coeffs(coeffs)
    }

    /// Builds from a coefficient table, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Vec<BigInt>>) -> Self {
        for row in &mut coeffs {
            while row.last().is_some_and(Zero::is_zero) {
                row.pop();
            }
        }
        while coeffs.last().is_some_and(Vec::is_empty) {
            coeffs.pop();
        }
        TuttePolynomial { coeffs }
    }

    pub fn coefficient(&self, i: usize, j: usize) -> BigInt {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_default()
    }

    /// Nonzero terms as `((i, j), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &BigInt)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, c)| ((i, j), c))
        })
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut total = BigInt::zero();
        for ((i, j), c) in self.terms() {
            total += c * x.pow(i as u32) * y.pow(j as u32);
        }
        total
    }

    pub fn coeffs(&self) -> &[Vec<BigInt>] {
        &self.coeffs
    }
}

fn monomial(c: &BigInt, powers: &[(&str, usize)]) -> String {
    let vars: Vec<String> = powers
        .iter()
        .filter(|(_, p)| *p > 0)
        .map(|&(v, p)| if p == 1 { v.to_string() } else { format!("{v}^{p}") })
        .collect();
    let magnitude = c.abs();
    match (vars.is_empty(), magnitude.is_one()) {
        (true, _) => magnitude.to_string(),
        (false, true) => vars.join(" "),
        (false, false) => format!("{magnitude} {}", vars.join(" ")),
    }
}

fn join_terms(terms: Vec<(BigInt, String)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (c, text)) in terms.into_iter().enumerate() {
        match (k, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&text);
    }
    out
}

impl fmt::Display for TuttePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<((usize, usize), &BigInt)> = self.terms().collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let rendered = terms
            .into_iter()
            .map(|((i, j), c)| (c.clone(), monomial(c, &[("x", i), ("y", j)])))
            .collect();
        f.write_str(&join_terms(rendered))
    }
}

/// A polynomial in one variable; `coeffs[i]` is the coefficient of `x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicPolynomial {
    coeffs: Vec<BigInt>,
}

impl CharacteristicPolynomial {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for CharacteristicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), monomial(c, &[("x", i)])))
            .collect();
        f.write_str(&join_terms(rendered))
    }
}

/// Size-rank counts over all subsets.
pub(crate) fn size_rank_counts(m: &Matroid) -> BTreeMap<(usize, usize), BigUint> {
    let n = m.len();
    let k = m.full_rank();
    let width = k + 1;
    let tally = (0..1u64 << n)
        .into_par_iter()
        .fold(
            || vec![0u64; (n + 1) * width],
            |mut acc, bits| {
                let x = Subset::from_bits(bits);
                acc[x.len() * width + m.rank(x)] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; (n + 1) * width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    tally
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(idx, c)| ((idx / width, idx % width), BigUint::from(c)))
        .collect()
}

/// The Tutte polynomial with default limits.
pub fn tutte(m: &Matroid) -> Result<TuttePolynomial> {
    tutte_with(m, &Limits::default())
}

/// The Tutte polynomial by expansion over all subsets.
pub fn tutte_with(m: &Matroid, limits: &Limits) -> Result<TuttePolynomial> {
    limits.check_subsets("Tutte polynomial", m.len())?;
    Ok(TuttePolynomial::from_size_rank(
        m.full_rank(),
        &size_rank_counts(m),
    ))
}

/// The characteristic polynomial with default limits.
pub fn characteristic(m: &Matroid) -> Result<CharacteristicPolynomial> {
    characteristic_with(m, &Limits::default())
}

/// `(-1)^r(M) T(M; 1 - x, 0)`.
pub fn characteristic_with(m: &Matroid, limits: &Limits) -> Result<CharacteristicPolynomial> {
    let t = tutte_with(m, limits)?;
    let sign = if m.full_rank() % 2 == 1 {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut coeffs: Vec<BigInt> = Vec::new();
    for (i, row) in t.coeffs().iter().enumerate() {
        let Some(c) = row.first() else { continue };
        // c (1 - x)^i
        for (j, b) in binomial_row(i).into_iter().enumerate() {
            if coeffs.len() <= j {
                coeffs.resize(j + 1, BigInt::zero());
            }
            let term = c * b;
            coeffs[j] += if j % 2 == 1 { -term } else { term };
        }
    }
    for c in &mut coeffs {
        *c *= &sign;
    }
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Ok(CharacteristicPolynomial { coeffs })
}
