//! Exact negative values of Rayleigh differences.
//!
//! Searches are heuristics (integer grids, random restarts, floating point
//! descent on the unit sphere); only points confirmed by exact rational
//! evaluation are ever reported.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::poly::{self, Poly, PolyError};
use crate::rational::{self, Rat};

/// A point where a Rayleigh difference is negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativePointCertificate {
    pub i: usize,
    pub j: usize,
    /// Length `n`; the coordinates at `i` and `j` do not affect the value.
    pub point: Vec<Rat>,
    pub value: Rat,
}

impl NegativePointCertificate {
    /// Recomputes `Δ_ij(h)` at the point exactly.
    pub fn verify(&self, h: &Poly) -> bool {
        let Ok(delta) = h.rayleigh_difference(self.i, self.j) else { return false };
        self.value.is_negative() && delta.evaluate(&self.point).is_ok_and(|v| v == self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Grid coordinates range over `-grid_radius..=grid_radius`.
    pub grid_radius: i64,
    /// Above this many grid points, a random subsample of this size is used.
    pub max_grid_points: usize,
    pub multistarts: usize,
    pub descent_iterations: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { grid_radius: 5, max_grid_points: 2_000_000, multistarts: 256, descent_iterations: 400, seed: 7 }
    }
}

/// Integer-coefficient copy of a polynomial for fast screening. Positive
/// rescaling keeps signs.
struct IntForm {
    nvars: usize,
    terms: Vec<(i128, Vec<(usize, u32)>)>,
}

impl IntForm {
    fn new(p: &Poly) -> Option<IntForm> {
        let lcm = p.terms().fold(num_bigint::BigInt::from(1), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms = Vec::with_capacity(p.len());
        for (&k, c) in p.terms() {
            let scaled = (c * Rat::from_integer(lcm.clone())).to_integer().to_i128()?;
            let exps = (0..p.nvars())
                .filter(|&v| poly::exponent(k, v) > 0)
                .map(|v| (v, poly::exponent(k, v) as u32))
                .collect();
            terms.push((scaled, exps));
        }
        Some(IntForm { nvars: p.nvars(), terms })
    }

    /// `None` on overflow.
    fn eval(&self, x: &[i128]) -> Option<i128> {
        let mut total: i128 = 0;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for &(v, e) in exps {
                t = t.checked_mul(x[v].checked_pow(e)?)?;
            }
            total = total.checked_add(t)?;
        }
        Some(total)
    }

    fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(c, exps)| exps.iter().fold(*c as f64, |t, &(v, e)| t * x[v].powi(e as i32))).sum()
    }

    fn gradient_f64(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.nvars];
        for (c, exps) in &self.terms {
            for (k, &(v, e)) in exps.iter().enumerate() {
                let mut t = *c as f64 * e as f64 * x[v].powi(e as i32 - 1);
                for (l, &(w, f)) in exps.iter().enumerate() {
                    if l != k {
                        t *= x[w].powi(f as i32);
                    }
                }
                g[v] += t;
            }
        }
        g
    }
}

fn to_rat_point(x: &[i128]) -> Vec<Rat> {
    x.iter().map(|&v| Rat::from_integer(v.into())).collect()
}

fn primitive(mut x: Vec<i128>) -> Vec<i128> {
    let g = x.iter().fold(0i128, |g, &v| g.gcd(&v));
    if g > 1 {
        for v in x.iter_mut() {
            *v /= g;
        }
    }
    x
}

/// Free coordinates of a grid index, mixed radix over `2B+1` values.
fn grid_point(mut index: u64, free: &[usize], n: usize, radius: i64) -> Vec<i128> {
    let base = (2 * radius + 1) as u64;
    let mut x = vec![0i128; n];
    for &v in free {
        x[v] = (index % base) as i128 - radius as i128;
        index /= base;
    }
    x
}

fn exact_negative(delta: &Poly, x: &[i128]) -> Option<Rat> {
    let v = delta.evaluate(&to_rat_point(x)).ok()?;
    v.is_negative().then_some(v)
}

fn lex_key(x: &[i128]) -> Vec<i128> {
    x.to_vec()
}

/// Floating point descent of `Δ` on the unit sphere of the free coordinates;
/// returns the final point when its value is negative.
fn descend(form: &IntForm, free: &[usize], start: Vec<f64>, iterations: usize, orthant: bool) -> Option<Vec<f64>> {
    let normalize = |x: &mut Vec<f64>| {
        if orthant {
            for v in x.iter_mut() {
                *v = v.max(0.0);
            }
        }
        let norm = free.iter().map(|&v| x[v] * x[v]).sum::<f64>().sqrt();
        if norm > 0.0 {
            for &v in free {
                x[v] /= norm;
            }
        }
        norm > 0.0
    };
    let mut x = start;
    if !normalize(&mut x) {
        return None;
    }
    let mut f = form.eval_f64(&x);
    let mut step = 1.0;
    for _ in 0..iterations {
        let g = form.gradient_f64(&x);
        let gnorm = free.iter().map(|&v| g[v] * g[v]).sum::<f64>().sqrt();
        if gnorm < 1e-14 {
            break;
        }
        let mut improved = false;
        while step > 1e-12 {
            let mut y = x.clone();
            for &v in free {
                y[v] -= step * g[v] / gnorm;
            }
            if normalize(&mut y) {
                let fy = form.eval_f64(&y);
                if fy < f {
                    x = y;
                    f = fy;
                    improved = true;
                    step *= 2.0;
                    break;
                }
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (f < 0.0).then_some(x)
}

/// Rounds a floating point direction to integer points at growing scales and
/// returns the first exactly negative one.
fn confirm_direction(delta: &Poly, x: &[f64], free: &[usize]) -> Option<(Vec<i128>, Rat)> {
    let max = free.iter().map(|&v| x[v].abs()).fold(0.0, f64::max);
    if max == 0.0 {
        return None;
    }
    for scale in [10.0, 100.0, 1_000.0, 10_000.0, 100_000.0] {
        let mut p = vec![0i128; x.len()];
        for &v in free {
            p[v] = (x[v] / max * scale).round() as i128;
        }
        let p = primitive(p);
        if let Some(val) = exact_negative(delta, &p) {
            return Some((p, val));
        }
    }
    None
}

fn free_coordinates(n: usize, i: usize, j: usize) -> Vec<usize> {
    (0..n).filter(|&v| v != i && v != j).collect()
}

/// Grid screening, then multistart descent; the lexicographically smallest
/// exactly confirmed point wins.
pub fn search_negative(
    h: &Poly,
    i: usize,
    j: usize,
    budget: &SearchBudget,
) -> Result<Option<NegativePointCertificate>, PolyError> {
    let delta = h.rayleigh_difference(i, j)?;
    Ok(search_delta(&delta, i, j, budget, false))
}

fn search_delta(
    delta: &Poly,
    i: usize,
    j: usize,
    budget: &SearchBudget,
    orthant: bool,
) -> Option<NegativePointCertificate> {
    if delta.is_zero() {
        return None;
    }
    let n = delta.nvars();
    let form = IntForm::new(delta)?;
    let free = free_coordinates(n, i, j);
    let (lo, radius) = if orthant { (0, budget.grid_radius) } else { (-budget.grid_radius, budget.grid_radius) };
    let side = (radius - lo + 1) as u64;
    let total = side.checked_pow(free.len() as u32).unwrap_or(u64::MAX);
    let point_at = |index: u64| {
        if orthant {
            let mut x = grid_point(index, &free, n, 0);
            let mut idx = index;
            for &v in &free {
                x[v] = (idx % side) as i128;
                idx /= side;
            }
            x
        } else {
            grid_point(index, &free, n, radius)
        }
    };
    let indices: Vec<u64> = if total as u128 <= budget.max_grid_points as u128 {
        (0..total).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        (0..budget.max_grid_points).map(|_| rng.random_range(0..total)).collect()
    };
    let best = indices
        .par_iter()
        .filter_map(|&idx| {
            let x = point_at(idx);
            matches!(form.eval(&x), Some(v) if v < 0).then(|| primitive(x))
        })
        .min_by_key(|x| lex_key(x));
    if let Some(x) = best {
        if let Some(value) = exact_negative(delta, &x) {
            return Some(NegativePointCertificate { i, j, point: to_rat_point(&x), value });
        }
    }
    let starts: Vec<Vec<f64>> = {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ 0x9e37_79b9);
        (0..budget.multistarts)
            .map(|_| {
                let mut x = vec![0.0; n];
                for &v in &free {
                    let g: f64 = rng.sample(StandardNormal);
                    x[v] = if orthant { g.abs() } else { g };
                }
                x
            })
            .collect()
    };
    starts
        .into_par_iter()
        .filter_map(|s| descend(&form, &free, s, budget.descent_iterations, orthant))
        .filter_map(|x| confirm_direction(delta, &x, &free))
        .min_by_key(|(x, _)| lex_key(x))
        .map(|(x, value)| NegativePointCertificate { i, j, point: to_rat_point(&x), value })
}

/// Searches every unordered pair; returns the certificate of the first pair
/// (in pair order) that has one.
pub fn search_all_pairs(h: &Poly, budget: &SearchBudget) -> Option<NegativePointCertificate> {
    let n = h.nvars();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find_map(|(i, j)| search_negative(h, i, j, budget).ok().flatten())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrthantOutcome {
    Pass { samples: usize },
    Counterexample(NegativePointCertificate),
}

/// Looks for a point of the closed nonnegative orthant where some Rayleigh
/// difference is negative: an exhaustive small grid, random integer points,
/// then descent restricted to the orthant.
pub fn rayleigh_orthant_test(h: &Poly, samples: usize) -> Result<OrthantOutcome, PolyError> {
    let n = h.nvars();
    let budget =
        SearchBudget { grid_radius: 3, max_grid_points: samples.max(1), multistarts: 64, ..Default::default() };
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            let delta = h.rayleigh_difference(i, j)?;
            if let Some(c) = search_delta(&delta, i, j, &budget, true) {
                return Ok(OrthantOutcome::Counterexample(c));
            }
            count += 1;
        }
    }
    Ok(OrthantOutcome::Pass { samples: count * samples.max(1) })
}

/// Lower bounds on the suprema of `bc/ad` and `ad/bc` over sampled positive
/// integer points, writing `h = a x_i x_j + b x_i + c x_j + d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrelationEstimate {
    #[serde(serialize_with = "crate::certificate::ser_rat")]
    pub bc_over_ad: Rat,
    #[serde(serialize_with = "crate::certificate::ser_rat")]
    pub ad_over_bc: Rat,
    /// False when no sample had `ad > 0` (the bound is then reported as 0).
    pub bc_over_ad_defined: bool,
    pub ad_over_bc_defined: bool,
    /// Which orientation exceeds 1, if any.
    pub exceeds_one: Option<String>,
}

pub fn correlation_ratio_estimate(h: &Poly, samples: usize, seed: u64) -> Result<CorrelationEstimate, PolyError> {
    let n = h.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vec<Rat>> = vec![vec![rational::rat(1); n]];
    for _ in 0..samples {
        points.push((0..n).map(|_| rational::rat(rng.random_range(1..=20))).collect());
    }
    let mut bc_ad: Option<Rat> = None;
    let mut ad_bc: Option<Rat> = None;
    for i in 0..n {
        for j in i + 1..n {
            let [a, b, c, d] = h.abcd_decompose(i, j)?;
            for x in &points {
                let ad = a.evaluate(x)? * d.evaluate(x)?;
                let bc = b.evaluate(x)? * c.evaluate(x)?;
                if ad.is_positive() {
                    let r = &bc / &ad;
                    if bc_ad.as_ref().is_none_or(|m| r > *m) {
                        bc_ad = Some(r);
                    }
                }
                if bc.is_positive() {
                    let r = &ad / &bc;
                    if ad_bc.as_ref().is_none_or(|m| r > *m) {
                        ad_bc = Some(r);
                    }
                }
            }
        }
    }
    let one = rational::rat(1);
    let exceeds_one = match (&bc_ad, &ad_bc) {
        (_, Some(r)) if *r > one => Some("ad/bc".to_string()),
        (Some(r), _) if *r > one => Some("bc/ad".to_string()),
        _ => None,
    };
    Ok(CorrelationEstimate {
        bc_over_ad_defined: bc_ad.is_some(),
        ad_over_bc_defined: ad_bc.is_some(),
        bc_over_ad: bc_ad.unwrap_or_else(Rat::zero),
        ad_over_bc: ad_bc.unwrap_or_else(Rat::zero),
        exceeds_one,
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(k) = (1..p.len()).rev().find(|&k| p[k - 1] < p[k]) else { return false };
    let l = (k..p.len()).rev().find(|&l| p[l] > p[k - 1]).expect("successor exists");
    p.swap(k - 1, l);
    p[k..].reverse();
    true
}

/// Result of transporting a point given in another labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelabeledPoint {
    /// `relabeling[k]` is the element of `h`'s ground set playing the role
    /// of element `k` in the source labeling.
    pub relabeling: Vec<usize>,
    pub certificate: NegativePointCertificate,
}

/// Given a point for `Δ_ij` in some unknown labeling of the ground set
/// (`coords` lists the values of the variables other than `i, j` in
/// increasing order), finds the lexicographically first relabeling under
/// which the point gives a negative value for `h`.
pub fn find_relabeling(h: &Poly, i: usize, j: usize, coords: &[Rat]) -> Result<Option<RelabeledPoint>, PolyError> {
    let n = h.nvars();
    if coords.len() + 2 != n {
        return Err(PolyError::DimensionMismatch { expected: n - 2, found: coords.len() });
    }
    let mut x = vec![Rat::zero(); n];
    for (v, c) in free_coordinates(n, i, j).into_iter().zip(coords) {
        x[v] = c.clone();
    }
    let mut deltas = vec![vec![None; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let d = h.rayleigh_difference(a, b)?;
            deltas[a][b] = Some(d.clone());
            deltas[b][a] = Some(d);
        }
    }
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        let mut y = vec![Rat::zero(); n];
        for k in 0..n {
            y[p[k]] = x[k].clone();
        }
        let delta = deltas[p[i]][p[j]].as_ref().expect("distinct");
        let v = delta.evaluate(&y)?;
        if v.is_negative() {
            return Ok(Some(RelabeledPoint {
                relabeling: p.clone(),
                certificate: NegativePointCertificate { i: p[i], j: p[j], point: y, value: v },
            }));
        }
        if !next_permutation(&mut p) {
            return Ok(None);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::matroid::Matroid;

    #[test]
    fn nonnegative_difference_has_no_negative_point() {
        let h = Poly::basis_polynomial(&Matroid::uniform(2, 4));
        assert_eq!(search_negative(&h, 0, 1, &SearchBudget::default()).unwrap(), None);
    }

    #[test]
    fn m431_has_negative_point() {
        let h = Poly::basis_polynomial(&catalog::m431());
        let c = search_all_pairs(&h, &SearchBudget::default()).expect("negative point");
        assert!(c.verify(&h));
    }

    #[test]
    fn correlation_of_u24() {
        let h = Poly::basis_polynomial(&Matroid::uniform(2, 4));
        let e = correlation_ratio_estimate(&h, 0, 1).unwrap();
        // only the all-ones point: bc = 4, ad = 1
        assert_eq!(e.bc_over_ad, rational::rat(4));
        assert_eq!(e.ad_over_bc, rational::ratio(1, 4));
        let single = Poly::parse("x1*x2", 2).unwrap();
        let e = correlation_ratio_estimate(&single, 10, 1).unwrap();
        assert!(!e.bc_over_ad_defined && e.bc_over_ad.is_zero());
    }

    #[test]
    fn permutations_enumerate_all() {
        let mut p = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
    }
}
