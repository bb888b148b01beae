//! Counting bounds evaluated in log space.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Largest `n` for which factorials and binomials are evaluated exactly.
pub const EXACT_MAX_N: u64 = 200;

/// Natural logarithm of a non-negative magnitude.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    pub ln: f64,
    /// Computed from exact integers rather than log-gamma.
    pub exact: bool,
}

impl LogValue {
    pub const ONE: LogValue = LogValue { ln: 0.0, exact: true };

    pub fn exact(ln: f64) -> Self {
        LogValue { ln, exact: true }
    }

    pub fn approx(ln: f64) -> Self {
        LogValue { ln, exact: false }
    }

    pub fn of_biguint(x: &BigUint) -> Self {
        LogValue::exact(ln_biguint(x))
    }

    pub fn of_count(x: u128) -> Self {
        LogValue::of_biguint(&BigUint::from(x))
    }

    pub fn exp(self) -> f64 {
        self.ln.exp()
    }

    pub fn mul(self, other: LogValue) -> Self {
        LogValue {
            ln: self.ln + other.ln,
            exact: self.exact && other.exact,
        }
    }

    pub fn div(self, other: LogValue) -> Self {
        LogValue {
            ln: self.ln - other.ln,
            exact: self.exact && other.exact,
        }
    }

    pub fn pow(self, e: f64) -> Self {
        LogValue { ln: self.ln * e, exact: self.exact }
    }

    /// `ln Σ exp(v.ln)`; the empty sum is `ln 0 = -∞`.
    pub fn sum<I: IntoIterator<Item = LogValue>>(values: I) -> Self {
        let vals: Vec<LogValue> = values.into_iter().collect();
        let exact = vals.iter().all(|v| v.exact);
        let max = vals.iter().map(|v| v.ln).fold(f64::NEG_INFINITY, f64::max);
        if max == f64::NEG_INFINITY {
            return LogValue { ln: max, exact };
        }
        let s: f64 = vals.iter().map(|v| (v.ln - max).exp()).sum();
        LogValue { ln: max + s.ln(), exact }
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.ln.partial_cmp(&other.ln)
    }
}

/// `ln x` from the leading 64 bits; `-∞` for zero.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().expect("fits") as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 bits");
    (top as f64).ln() + shift as f64 * LN_2
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn ln_factorial_approx(x: f64) -> f64 {
    ln_gamma(x + 1.0)
}

/// `ln n!`, exact for `n ≤ EXACT_MAX_N`.
pub fn ln_factorial(n: u64) -> LogValue {
    if n <= EXACT_MAX_N {
        LogValue::of_biguint(&factorial(n))
    } else {
        LogValue::approx(ln_factorial_approx(n as f64))
    }
}

/// `ln C(N, k)` for every `k`, computed from exact binomials.
fn exact_binomial_row(big_n: u64) -> Arc<Vec<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(row) = cache.lock().expect("cache lock").get(&big_n) {
        return row.clone();
    }
    let mut row = Vec::with_capacity(big_n as usize + 1);
    let mut c = BigUint::one();
    row.push(0.0);
    for k in 0..big_n {
        c = c * (big_n - k) / (k + 1);
        row.push(ln_biguint(&c));
    }
    let row = Arc::new(row);
    cache.lock().expect("cache lock").insert(big_n, row.clone());
    row
}

/// `ln C(n², k)` for the order `n`; exact for `n ≤ EXACT_MAX_N`.
fn ln_binomial_square(n: u64, k: u64) -> LogValue {
    let big_n = n * n;
    if n <= EXACT_MAX_N {
        LogValue::exact(exact_binomial_row(big_n)[k as usize])
    } else {
        let (bn, k) = (big_n as f64, k as f64);
        LogValue::approx(ln_factorial_approx(bn) - ln_factorial_approx(k) - ln_factorial_approx(bn - k))
    }
}

/// `ln((n!)^{2n} / n^{n²})`, a lower bound on the number of Latin squares.
pub fn latin_lower_bound(n: u64) -> Result<LogValue> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let nf = n as f64;
    let ln_n = if n <= EXACT_MAX_N {
        LogValue::of_biguint(&BigUint::from(n))
    } else {
        LogValue::approx(nf.ln())
    };
    Ok(ln_factorial(n).pow(2.0 * nf).div(ln_n.pow(nf * nf)))
}

/// The `ln(2πn)²` term of the partial-square bound, read as `ln((2πn)²)`.
fn ln_two_pi_n_squared(n: f64) -> f64 {
    2.0 * (2.0 * PI * n).ln()
}

/// Upper bound on the number of partial Latin squares of order `n` and size `k`:
/// `ln[C(n²,k) · n!^{2n−k/n} · e^{n(3+ln((2πn)²)/4)} / (Γ(n−k/n+1)^{2n} · e^k)]`.
pub fn partial_upper_bound(n: u64, k: u64) -> Result<LogValue> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if k > n * n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n² = {}", n * n)));
    }
    let (nf, kf) = (n as f64, k as f64);
    let frac = nf - kf / nf;
    let value = ln_binomial_square(n, k).mul(ln_factorial(n).pow(2.0 * nf - kf / nf));
    let rest = nf * (3.0 + ln_two_pi_n_squared(nf) / 4.0) - 2.0 * nf * ln_factorial_approx(frac) - kf;
    Ok(LogValue {
        ln: value.ln + rest,
        exact: false,
    })
}

/// `ln Σ_{i≤d} C(|Ω|, i)`.
pub fn sauer_shelah(omega_size: u64, d: u64) -> Result<LogValue> {
    if d > omega_size {
        return Err(Error::InvalidParameter(format!(
            "d = {d} exceeds the universe size {omega_size}"
        )));
    }
    if omega_size <= EXACT_MAX_N * EXACT_MAX_N {
        let mut c = BigUint::one();
        let mut total = BigUint::one();
        for i in 0..d {
            c = c * (omega_size - i) / (i + 1);
            total += &c;
        }
        return Ok(LogValue::of_biguint(&total));
    }
    let w = omega_size as f64;
    Ok(LogValue::sum((0..=d).map(|i| {
        let i = i as f64;
        LogValue::approx(ln_factorial_approx(w) - ln_factorial_approx(i) - ln_factorial_approx(w - i))
    })))
}

/// Both sides of `c^{3c} n^c ≤ e^{3c} e^{ln((2πn)²)/n} n^{2/n²}` in log form.
pub fn count_balance_sides(c: f64, n: f64) -> Result<(LogValue, LogValue)> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::InvalidParameter(format!("c must lie in (0, 1], got {c}")));
    }
    if !(n >= 2.0) {
        return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
    }
    let lhs = 3.0 * c * c.ln() + c * n.ln();
    let rhs = 3.0 * c + ln_two_pi_n_squared(n) / n + 2.0 * n.ln() / (n * n);
    Ok((LogValue::approx(lhs), LogValue::approx(rhs)))
}

/// `e^{1+1/√n} / n^{1/3}`.
pub fn count_balance_c(n: f64) -> f64 {
    (1.0 + 1.0 / n.sqrt()).exp() / n.cbrt()
}

/// `n² − e^{1+1/√n} n^{5/3}`.
pub fn vc_lower_closed_form(n: f64) -> f64 {
    n * n - (1.0 + 1.0 / n.sqrt()).exp() * n.powf(5.0 / 3.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VcThreshold {
    pub n: u64,
    /// Largest `K` such that every `k ≤ K` has fewer partial squares of size
    /// `k` (by the upper bound) than `|L_n| / n²` (by the lower bound).
    pub k_star: Option<u64>,
    pub closed_form: f64,
    /// `k_star` exists and the closed form is non-negative.
    pub regime_reached: bool,
    /// `k_star ≥ ⌈closed_form⌉`.
    pub covers_closed_form: bool,
}

/// Scans `k = 0..=n²` for the first failure of
/// `partial_upper_bound(n,k) < latin_lower_bound(n) − 2 ln n`.
pub fn vc_threshold(n: u64) -> Result<VcThreshold> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    let target = latin_lower_bound(n)?.ln - 2.0 * (n as f64).ln();
    if n <= EXACT_MAX_N {
        exact_binomial_row(n * n);
    }
    let first_fail = crate::par::position_first(0..n * n + 1, |k| {
        partial_upper_bound(n, k).expect("k in range").ln >= target
    });
    let k_star = match first_fail {
        Some(0) => None,
        Some(k) => Some(k - 1),
        None => Some(n * n),
    };
    let closed_form = vc_lower_closed_form(n as f64);
    Ok(VcThreshold {
        n,
        k_star,
        closed_form,
        regime_reached: k_star.is_some() && closed_form >= 0.0,
        covers_closed_form: k_star.is_some_and(|k| k as f64 >= closed_form.ceil()),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Slacks {
    /// `1 − μ − δ`
    pub lines: f64,
    /// `1 − ε − 3μ`
    pub size: f64,
    /// `1 − 2δ − 4μ`
    pub symbols: f64,
    /// `2 − 2δ − 4μ − C(1 − μ)`
    pub degree: f64,
}

impl Slacks {
    pub fn at(c: f64, delta: f64, mu: f64) -> Self {
        let eps = delta * mu;
        Slacks {
            lines: 1.0 - mu - delta,
            size: 1.0 - eps - 3.0 * mu,
            symbols: 1.0 - 2.0 * delta - 4.0 * mu,
            degree: 2.0 - 2.0 * delta - 4.0 * mu - c * (1.0 - mu),
        }
    }

    /// Strict constraints need positive slack, the degree one non-negative.
    pub fn feasible(&self) -> bool {
        self.lines > 0.0 && self.size > 0.0 && self.symbols > 0.0 && self.degree >= 0.0
    }

    pub fn min(&self) -> f64 {
        self.lines.min(self.size).min(self.symbols).min(self.degree)
    }
}

/// A feasible `(δ, μ)` with the quantities derived from it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonPoint {
    pub delta: f64,
    pub mu: f64,
    pub epsilon: f64,
    /// `2δ + 4μ`
    pub symbol_bound: f64,
    /// `2 − 2(δ + 2μ)`
    pub degree_bound: f64,
    pub slacks: Slacks,
}

impl EpsilonPoint {
    pub fn new(c: f64, delta: f64, mu: f64) -> Self {
        EpsilonPoint {
            delta,
            mu,
            epsilon: delta * mu,
            symbol_bound: 2.0 * delta + 4.0 * mu,
            degree_bound: 2.0 - 2.0 * (delta + 2.0 * mu),
            slacks: Slacks::at(c, delta, mu),
        }
    }

    /// The point fixed by `ε` and `δ` (so `μ = ε/δ`).
    pub fn from_epsilon(c: f64, epsilon: f64, delta: f64) -> Self {
        Self::new(c, delta, epsilon / delta)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonDeltaReport {
    pub c: f64,
    /// Best feasible point: the closed form when it is attained, the grid
    /// optimum otherwise.
    pub epsilon: f64,
    pub delta: f64,
    pub mu: f64,
    pub slacks: Slacks,
    /// Best point found by grid refinement.
    pub grid: EpsilonPoint,
    /// Closed-form supremum of `μδ` over the constraints.
    pub closed_form: EpsilonPoint,
    /// The supremum satisfies every constraint, strict ones included.
    pub attained: bool,
    /// `|ε_grid − ε_closed| / ε_closed`.
    pub relative_gap: f64,
    pub grid_resolution: f64,
}

/// Finest grid spacing used by [`epsilon_search`].
pub const EPS_GRID_RESOLUTION: f64 = 1e-10;

/// Supremum of `μδ`. On the degree constraint alone the product peaks at
/// `δ = (2−C)/4`, `μ = (2−C)/(2(4−C))`, which keeps `2δ + 4μ < 1` only for
/// `C > 4 − 2√2`. Below that the symbol constraint binds: alone it peaks at
/// `(1/4, 1/8)`, admissible for `C ≤ 8/7`, and in between both bind.
fn epsilon_supremum(c: f64) -> EpsilonPoint {
    let (delta, mu) = {
        let stationary = EpsilonPoint::new(c, (2.0 - c) / 4.0, (2.0 - c) / (2.0 * (4.0 - c)));
        if stationary.slacks.symbols > 0.0 {
            (stationary.delta, stationary.mu)
        } else if c <= 8.0 / 7.0 {
            (0.25, 0.125)
        } else {
            let mu = 1.0 - 1.0 / c;
            ((1.0 - 4.0 * mu) / 2.0, mu)
        }
    };
    // rounding can leave the active degree constraint a few ulps short
    let mut delta = delta;
    while Slacks::at(c, delta, mu).degree < 0.0 {
        delta = delta.next_down();
    }
    EpsilonPoint::new(c, delta, mu)
}

const GRID_STEPS: usize = 3000;
const GRID_MAX_LEVELS: usize = 40;

/// Best feasible point over successively finer grids, with the spacing of the
/// last grid. Each window is the bounding box of the grid points within one
/// step's worth of `ε` of the best, so the optimum is never cut off even when
/// the near-optimal set is a long sliver along a constraint.
fn grid_search(c: f64) -> Result<(EpsilonPoint, f64)> {
    let (mut d_lo, mut d_hi, mut m_lo, mut m_hi) = (0.0f64, 1.0f64, 0.0f64, 1.0f64);
    let mut best: Option<EpsilonPoint> = None;
    let mut spacing = f64::INFINITY;
    for _ in 0..GRID_MAX_LEVELS {
        let dh = (d_hi - d_lo) / GRID_STEPS as f64;
        let mh = (m_hi - m_lo) / GRID_STEPS as f64;
        spacing = dh.max(mh);
        let feasible: Vec<Vec<(f64, f64, f64)>> = crate::par::map_range(0..GRID_STEPS + 1, |i| {
            let delta = d_lo + i as f64 * dh;
            (0..=GRID_STEPS)
                .map(|j| m_lo + j as f64 * mh)
                .filter(|&mu| delta > 0.0 && mu > 0.0 && Slacks::at(c, delta, mu).feasible())
                .map(|mu| (delta, mu, delta * mu))
                .collect()
        });
        let top = feasible.iter().flatten().fold(None::<(f64, f64, f64)>, |acc, &p| match acc {
            Some(a) if a.2 >= p.2 => Some(a),
            _ => Some(p),
        });
        let (bd, bm, be) = top.ok_or_else(|| Error::Infeasible(format!("no feasible grid point at C = {c}")))?;
        if best.as_ref().is_none_or(|b| be > b.epsilon) {
            best = Some(EpsilonPoint::new(c, bd, bm));
        }
        if spacing <= EPS_GRID_RESOLUTION {
            break;
        }
        let loss = 1.5 * (bd + bm) * spacing;
        let near = feasible.iter().flatten().filter(|p| p.2 >= be - loss);
        let (mut a, mut b, mut x, mut y) = (bd, bd, bm, bm);
        for &(d, m, _) in near {
            a = a.min(d);
            b = b.max(d);
            x = x.min(m);
            y = y.max(m);
        }
        let (nd_lo, nd_hi) = ((a - 2.0 * dh).max(0.0), (b + 2.0 * dh).min(1.0));
        let (nm_lo, nm_hi) = ((x - 2.0 * mh).max(0.0), (y + 2.0 * mh).min(1.0));
        if (nd_hi - nd_lo).max(nm_hi - nm_lo) > 0.5 * (d_hi - d_lo).max(m_hi - m_lo) {
            break;
        }
        (d_lo, d_hi, m_lo, m_hi) = (nd_lo, nd_hi, nm_lo, nm_hi);
    }
    Ok((best.expect("at least one level ran"), spacing))
}

/// Maximises `ε = μδ` subject to `μ + δ < 1`, `ε + 3μ < 1`, `2δ + 4μ < 1`
/// and `2 − 2δ − 4μ ≥ C(1 − μ)`.
pub fn epsilon_search(c: f64) -> Result<EpsilonDeltaReport> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidParameter(format!("C must be positive, got {c}")));
    }
    if c >= 2.0 {
        return Err(Error::Infeasible(format!(
            "C = {c} leaves no room for the degree requirement"
        )));
    }
    let closed_form = epsilon_supremum(c);

    let (grid, step) = grid_search(c)?;
    let relative_gap = (grid.epsilon - closed_form.epsilon).abs() / closed_form.epsilon;
    let attained = closed_form.slacks.feasible();
    let chosen = if attained { &closed_form } else { &grid };
    Ok(EpsilonDeltaReport {
        c,
        epsilon: chosen.epsilon,
        delta: chosen.delta,
        mu: chosen.mu,
        slacks: chosen.slacks.clone(),
        grid: grid.clone(),
        attained,
        closed_form,
        relative_gap,
        grid_resolution: step,
    })
}

/// `2^{d+1}(d−2) + d + 4` in log form; `None` when the value is zero.
pub fn cct_bound_ln(d: u64) -> Option<f64> {
    if d <= 60 {
        let v = (1i128 << (d + 1)) * (d as i128 - 2) + d as i128 + 4;
        return (v > 0).then(|| (v as f64).ln());
    }
    let d = d as f64;
    Some((d + 1.0) * LN_2 + (d - 2.0).ln() + (1.0 + (d + 4.0) / ((d - 2.0) * 2f64.powf(d + 1.0))).ln())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsTable {
    pub n: u64,
    /// `n² − e^{1+1/√n} n^{5/3}`, lower bound on VC and RTD.
    pub vc_lower: f64,
    /// `n² − (√π/2) n^{3/2}`, upper bound on TD.
    pub td_upper: f64,
    /// `10⁻⁴ n²`, lower bound on the smallest critical set.
    pub scs_lower: f64,
    /// `⌊n²/4⌋`, the conjectured smallest critical set size.
    pub conjecture: u64,
    /// `d` used for the comparison bound: `⌈vc_lower⌉` clamped at 0.
    pub cct_d: u64,
    /// `ln(2^{d+1}(d−2)+d+4)`; absent when the value is 0.
    pub cct_ln: Option<f64>,
    pub lower_exceeds_upper: bool,
    pub lower_vacuous: bool,
    pub regime_reached: bool,
}

pub fn bounds_table(n: u64) -> Result<BoundsTable> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    let nf = n as f64;
    let vc_lower = vc_lower_closed_form(nf);
    let td_upper = nf * nf - PI.sqrt() / 2.0 * nf.powf(1.5);
    let cct_d = vc_lower.max(0.0).ceil() as u64;
    let lower_exceeds_upper = vc_lower > td_upper;
    let lower_vacuous = vc_lower < 0.0;
    Ok(BoundsTable {
        n,
        vc_lower,
        td_upper,
        scs_lower: 1e-4 * nf * nf,
        conjecture: n * n / 4,
        cct_d,
        cct_ln: cct_bound_ln(cct_d),
        lower_exceeds_upper,
        lower_vacuous,
        regime_reached: !lower_exceeds_upper && !lower_vacuous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_of_big_integers() {
        let f = factorial(30);
        let direct: f64 = (1..=30).map(|i| (i as f64).ln()).sum();
        assert!((ln_biguint(&f) - direct).abs() < 1e-12);
        assert_eq!(ln_biguint(&BigUint::zero()), f64::NEG_INFINITY);
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
    }

    #[test]
    fn latin_lower_bound_small() {
        assert_eq!(latin_lower_bound(1).unwrap().ln, 0.0);
        let l4 = latin_lower_bound(4).unwrap();
        assert!(l4.exact);
        assert!((l4.ln - (8.0 * 24f64.ln() - 16.0 * 4f64.ln())).abs() < 1e-12);
        assert!(l4.ln <= 576f64.ln());
        assert!(latin_lower_bound(0).is_err());
        assert!(!latin_lower_bound(300).unwrap().exact);
    }

    #[test]
    fn partial_upper_bound_small() {
        assert!(partial_upper_bound(2, 1).unwrap().ln >= 8f64.ln());
        for n in 1..=5 {
            assert!(partial_upper_bound(n, 0).unwrap().ln >= 0.0);
        }
        assert!(partial_upper_bound(2, 5).is_err());
    }

    #[test]
    fn sauer_shelah_cases() {
        assert_eq!(sauer_shelah(8, 0).unwrap().ln, 0.0);
        assert!((sauer_shelah(8, 8).unwrap().ln - 8.0 * LN_2).abs() < 1e-12);
        assert!((sauer_shelah(8, 1).unwrap().ln - 9f64.ln()).abs() < 1e-12);
        assert!(sauer_shelah(3, 4).is_err());
    }

    #[test]
    fn count_balance_at_c_one() {
        let (l, r) = count_balance_sides(1.0, 2.0).unwrap();
        assert!((l.ln - 2f64.ln()).abs() < 1e-15);
        let expect = 3.0 + 2.0 * (4.0 * PI).ln() / 2.0 + 2.0 * 2f64.ln() / 4.0;
        assert!((r.ln - expect).abs() < 1e-12);
        assert!(count_balance_sides(0.0, 10.0).is_err());
    }

    #[test]
    fn epsilon_search_closed_forms() {
        let r = epsilon_search(1.5).unwrap();
        assert!((r.delta - 0.125).abs() < 1e-15);
        assert!((r.mu - 0.1).abs() < 1e-15);
        assert!(r.epsilon >= 2f64.powi(-7));
        assert!(r.relative_gap < 1e-5);
        assert!(r.attained);
        assert!(matches!(epsilon_search(2.0), Err(Error::Infeasible(_))));
        let low = epsilon_search(0.5).unwrap();
        assert!(!low.attained);
        assert!((low.closed_form.epsilon - 1.0 / 32.0).abs() < 1e-15);
        assert!(low.slacks.feasible() && low.relative_gap < 1e-5);
    }

    #[test]
    fn cct_values() {
        assert_eq!(cct_bound_ln(0), None);
        assert_eq!(cct_bound_ln(1), Some(0.0));
        assert!((cct_bound_ln(2).unwrap() - 6f64.ln()).abs() < 1e-15);
        let big = cct_bound_ln(61).unwrap();
        let exact = ((1u128 << 62) * 59 + 65) as f64;
        assert!((big - exact.ln()).abs() < 1e-12);
    }

    #[test]
    fn bounds_table_flags() {
        let t = bounds_table(4).unwrap();
        assert_eq!(t.conjecture, 4);
        assert!(t.lower_vacuous);
        let t = bounds_table(1_000_000).unwrap();
        assert!(t.vc_lower < t.td_upper);
        assert!(t.regime_reached);
    }
}
