//! Scalar kernel algebra: the odd power map `J_p`, M-truncation, and
//! brute-force oracles for the pointwise inequalities the decay estimates
//! rest on.
//!
//! Every check returns an [`IneqVerdict`] carrying both sides, the gap and
//! the slack actually used, so harnesses can re-derive corrupted variants or
//! print worst cases without recomputing.

use crate::error::{Error, Result};
use crate::real::{abs_pow, Real};
use serde::Serialize;

/// Exponent triple (p, s, n) plus the derived thresholds the theorems use.
///
/// The solver itself only runs with n = 1; the exponent bookkeeping
/// (critical exponent, singular lower bound, the ν case split) is plain
/// arithmetic and works for any n.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Exponents<T> {
    p: T,
    s: T,
    n: u32,
}

impl<T: Real> Exponents<T> {
    pub fn new(p: T, s: T, n: u32) -> Result<Self> {
        if !(p.is_finite() && p > T::one()) {
            return Err(Error::InvalidExponents(format!("p must satisfy p > 1, got {p}")));
        }
        if !(s.is_finite() && s > T::zero() && s < T::one()) {
            return Err(Error::InvalidExponents(format!("s must lie in (0, 1), got {s}")));
        }
        if n == 0 {
            return Err(Error::InvalidExponents("n must be a positive integer".into()));
        }
        Ok(Self { p, s, n })
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn s(&self) -> T {
        self.s
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn n_real(&self) -> T {
        T::of(f64::from(self.n))
    }

    /// s·p, the kernel order.
    pub fn sp(&self) -> T {
        self.s * self.p
    }

    /// Critical Sobolev exponent np/(n − sp), defined only for sp < n.
    pub fn critical_exponent(&self) -> Option<T> {
        let n = self.n_real();
        (self.sp() < n).then(|| n * self.p / (n - self.sp()))
    }

    /// max{1, 2n/(n + 2s)}: the lower edge of the singular regime.
    pub fn singular_lower_bound(&self) -> T {
        let n = self.n_real();
        let two = T::of(2.0);
        T::one().max(two * n / (n + two * self.s))
    }

    pub fn is_degenerate(&self) -> bool {
        self.p > T::of(2.0)
    }

    pub fn is_singular(&self) -> bool {
        self.p < T::of(2.0)
    }

    /// Guard for exponential-decay (singular regime) runs:
    /// max{1, 2n/(n+2s)} < p < 2.
    pub fn require_singular_regime(&self) -> Result<()> {
        let two = T::of(2.0);
        if self.p >= two {
            return Err(Error::InvalidExponents(format!(
                "exponential-decay runs require p < 2, got p = {}",
                self.p
            )));
        }
        let lower = self.singular_lower_bound();
        if self.p <= lower {
            return Err(Error::InvalidExponents(format!(
                "exponential-decay runs require p > max(1, 2n/(n+2s)) = {lower}, got p = {}",
                self.p
            )));
        }
        Ok(())
    }

    /// Power-decay target exponent −1/(p−2); defined for p > 2 only.
    pub fn power_decay_target(&self) -> Result<T> {
        if !self.is_degenerate() {
            return Err(Error::InvalidExponents(format!(
                "power-decay target −1/(p−2) needs p > 2, got p = {}",
                self.p
            )));
        }
        Ok(-(self.p - T::of(2.0)).recip())
    }

    /// The exponent ν of the exponential-decay estimate.
    ///
    /// ν = 2n/(n+2s) when n > sp; otherwise ν = 2N/(N+2s) for a chosen
    /// N > sp (default ⌈sp⌉ + 1). ν < p must hold strictly for the
    /// estimate's exponents to be finite; violations are rejected.
    pub fn nu(&self, n_embedding: Option<T>) -> Result<Nu<T>> {
        let n = self.n_real();
        let two = T::of(2.0);
        let (value, used) = if n > self.sp() {
            (two * n / (n + two * self.s), None)
        } else {
            let big_n = match n_embedding {
                Some(v) => v,
                None => self.sp().ceil() + T::one(),
            };
            if !(big_n > self.sp()) {
                return Err(Error::InvalidExponents(format!(
                    "embedding dimension N = {big_n} must exceed sp = {}",
                    self.sp()
                )));
            }
            (two * big_n / (big_n + two * self.s), Some(big_n))
        };
        if !(value < self.p) {
            return Err(Error::InvalidExponents(format!(
                "ν = {value} must be strictly below p = {}; pick a smaller embedding dimension",
                self.p
            )));
        }
        Ok(Nu {
            value,
            n_embedding: used,
        })
    }
}

/// ν together with the embedding dimension that produced it (when the
/// second branch of the case split was taken).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Nu<T> {
    pub value: T,
    pub n_embedding: Option<T>,
}

/// Default relative slack for inequality verdicts.
pub const DEFAULT_REL_SLACK: f64 = 1e-12;

/// Outcome of one pointwise inequality evaluation.
///
/// `holds` ⇔ `gap ≥ −slack` with `slack = rel · (|lhs| + |rhs| + 1)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IneqVerdict<T> {
    pub lhs: T,
    pub rhs: T,
    pub gap: T,
    pub slack: T,
    pub holds: bool,
}

impl<T: Real> IneqVerdict<T> {
    fn judge(lhs: T, rhs: T, rel_slack: T) -> Self {
        let gap = lhs - rhs;
        let slack = rel_slack * (lhs.abs() + rhs.abs() + T::one());
        IneqVerdict {
            lhs,
            rhs,
            gap,
            slack,
            holds: gap >= -slack,
        }
    }
}

/// J_p(t) = |t|^{p−2} t, with J_p(0) = 0 by continuity (valid since p > 1).
pub fn jp<T: Real>(t: T, p: T) -> Result<T> {
    ensure_p_gt_1(p)?;
    Ok(jp_raw(t, p))
}

/// Unchecked J_p for callers that validated p once (operator rows, sweeps).
#[inline]
pub(crate) fn jp_raw<T: Real>(t: T, p: T) -> T {
    if t == T::zero() {
        T::zero()
    } else {
        // sign(t)·|t|^{p−1}: avoids the 0·∞ form of |t|^{p−2}·t for p < 2
        // and never overflows an intermediate for tiny t.
        abs_pow(t, p - T::one()) * t.signum()
    }
}

/// Clamp x to [−M, M].
pub fn truncate<T: Real>(x: T, m: T) -> Result<T> {
    ensure_m_pos(m)?;
    Ok(truncate_raw(x, m))
}

#[inline]
pub(crate) fn truncate_raw<T: Real>(x: T, m: T) -> T {
    x.max(-m).min(m)
}

/// J_p^M(t) = J_p(t clamped to [−M, M]); bounded by M^{p−1}.
pub fn jp_truncated<T: Real>(t: T, p: T, m: T) -> Result<T> {
    ensure_p_gt_1(p)?;
    ensure_m_pos(m)?;
    Ok(jp_raw(truncate_raw(t, m), p))
}

/// |x|^α · x for α ≥ 0 (the fractional odd powers in the inequality RHS).
#[inline]
fn signed_power<T: Real>(x: T, alpha: T) -> T {
    abs_pow(x, alpha) * x
}

fn ensure_p_gt_1<T: Real>(p: T) -> Result<()> {
    if !(p.is_finite() && p > T::one()) {
        return Err(Error::InvalidArgument(format!("exponent p must exceed 1, got {p}")));
    }
    Ok(())
}

fn ensure_m_pos<T: Real>(m: T) -> Result<()> {
    if !(m.is_finite() && m > T::zero()) {
        return Err(Error::InvalidArgument(format!("truncation level M must be positive, got {m}")));
    }
    Ok(())
}

/// Degenerate two-point bound (p ≥ 2, q ≥ 1):
/// J_q(a−b)(J_p(a)−J_p(b)) ≥ (p−1)(q/(p−2+q))^q ||a|^{(p−2)/q}a − |b|^{(p−2)/q}b|^q.
pub fn check_deg_power<T: Real>(a: T, b: T, p: T, q: T, rel_slack: T) -> Result<IneqVerdict<T>> {
    if !(p >= T::of(2.0)) {
        return Err(Error::InvalidArgument(format!("degenerate bound needs p ≥ 2, got {p}")));
    }
    if !(q >= T::one()) {
        return Err(Error::InvalidArgument(format!("power q must be ≥ 1, got {q}")));
    }
    let lhs = jp_raw(a - b, q) * (jp_raw(a, p) - jp_raw(b, p));
    let alpha = (p - T::of(2.0)) / q;
    let inner = (signed_power(a, alpha) - signed_power(b, alpha)).abs();
    let constant = (p - T::one()) * abs_pow(q / (p - T::of(2.0) + q), q);
    let rhs = constant * abs_pow(inner, q);
    Ok(IneqVerdict::judge(lhs, rhs, rel_slack))
}

/// Constant of the degenerate four-point inequality:
/// C(p,γ) = γ/(3·2^{p−1}) · (p/(γ−1+p))^p.
fn deg_fourpoint_constant<T: Real>(p: T, gamma: T) -> T {
    let three = T::of(3.0);
    gamma / (three * abs_pow(T::of(2.0), p - T::one())) * abs_pow(p / (gamma - T::one() + p), p)
}

fn ensure_deg_fourpoint_regime<T: Real>(p: T, gamma: T) -> Result<()> {
    if !(p >= T::of(2.0)) {
        return Err(Error::InvalidArgument(format!("degenerate bound needs p ≥ 2, got {p}")));
    }
    if !(gamma >= T::one()) {
        return Err(Error::InvalidArgument(format!("gamma must be ≥ 1, got {gamma}")));
    }
    Ok(())
}

/// Degenerate four-point bound (p ≥ 2, γ ≥ 1):
/// (J_p(a−c)−J_p(b−d))(J_{γ+1}(a−b)−J_{γ+1}(c−d)) ≥
/// C(p,γ) ||a−b|^{(γ−1)/p}(a−b) − |c−d|^{(γ−1)/p}(c−d)|^p.
pub fn check_deg_fourpoint<T: Real>(
    a: T,
    b: T,
    c: T,
    d: T,
    p: T,
    gamma: T,
    rel_slack: T,
) -> Result<IneqVerdict<T>> {
    ensure_deg_fourpoint_regime(p, gamma)?;
    let lhs = (jp_raw(a - c, p) - jp_raw(b - d, p))
        * (jp_raw(a - b, gamma + T::one()) - jp_raw(c - d, gamma + T::one()));
    let alpha = (gamma - T::one()) / p;
    let inner = (signed_power(a - b, alpha) - signed_power(c - d, alpha)).abs();
    let rhs = deg_fourpoint_constant(p, gamma) * abs_pow(inner, p);
    Ok(IneqVerdict::judge(lhs, rhs, rel_slack))
}

/// Truncated degenerate four-point bound: J^M_{γ+1} on the left and the
/// right-hand side evaluated at the M-truncated differences. When both
/// truncations are inactive it coincides with [`check_deg_fourpoint`].
pub fn check_deg_fourpoint_trunc<T: Real>(
    a: T,
    b: T,
    c: T,
    d: T,
    p: T,
    gamma: T,
    m: T,
    rel_slack: T,
) -> Result<IneqVerdict<T>> {
    ensure_deg_fourpoint_regime(p, gamma)?;
    ensure_m_pos(m)?;
    let gp1 = gamma + T::one();
    let lhs = (jp_raw(a - c, p) - jp_raw(b - d, p))
        * (jp_raw(truncate_raw(a - b, m), gp1) - jp_raw(truncate_raw(c - d, m), gp1));
    let alpha = (gamma - T::one()) / p;
    let inner = (signed_power(truncate_raw(a - b, m), alpha)
        - signed_power(truncate_raw(c - d, m), alpha))
    .abs();
    let rhs = deg_fourpoint_constant(p, gamma) * abs_pow(inner, p);
    Ok(IneqVerdict::judge(lhs, rhs, rel_slack))
}

/// Calibrated comparison constant for the J_p Lipschitz-type bound.
///
/// The bound asserts existence of a c = c(p) with
/// |J_p(a)−J_p(b)| ≤ c (|b|+|a−b|)^{p−2} |a−b|; no value is given, so we
/// take the maximum observed ratio over a 200×200 grid of (a,b) in
/// [−10,10]² (the ratio is scale-invariant, so the grid covers all
/// directions) and multiply by a 1.05 discretization margin.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LipschitzConstant<T> {
    pub p: T,
    pub c: T,
}

pub fn calibrate_lipschitz_constant<T: Real>(p: T) -> Result<LipschitzConstant<T>> {
    ensure_p_gt_1(p)?;
    let steps = 200usize;
    let lo = T::of(-10.0);
    let span = T::of(20.0);
    let denom = T::of((steps - 1) as f64);
    let mut worst = T::zero();
    for i in 0..steps {
        let a = lo + span * T::of(i as f64) / denom;
        for j in 0..steps {
            let b = lo + span * T::of(j as f64) / denom;
            if a == b {
                continue;
            }
            let scale = b.abs() + (a - b).abs();
            let ratio = (jp_raw(a, p) - jp_raw(b, p)).abs()
                / (abs_pow(scale, p - T::of(2.0)) * (a - b).abs());
            if ratio > worst {
                worst = ratio;
            }
        }
    }
    Ok(LipschitzConstant {
        p,
        c: worst * T::of(1.05),
    })
}

/// Lipschitz-type bound (p > 1): |J_p(a)−J_p(b)| ≤ c(p)(|b|+|a−b|)^{p−2}|a−b|.
/// `holds` means the right-hand side of the paper inequality (our `rhs`,
/// the J_p difference) stays below the calibrated envelope (`lhs`).
pub fn check_jp_lipschitz<T: Real>(
    a: T,
    b: T,
    constant: &LipschitzConstant<T>,
    rel_slack: T,
) -> Result<IneqVerdict<T>> {
    ensure_p_gt_1(constant.p)?;
    let p = constant.p;
    let (lhs, rhs) = if a == b {
        (T::zero(), T::zero())
    } else {
        let scale = b.abs() + (a - b).abs();
        (
            constant.c * abs_pow(scale, p - T::of(2.0)) * (a - b).abs(),
            (jp_raw(a, p) - jp_raw(b, p)).abs(),
        )
    };
    Ok(IneqVerdict::judge(lhs, rhs, rel_slack))
}

/// Singular two-point bound (1 < p < 2, (a,b) ≠ (0,0)):
/// (J_p(a)−J_p(b))(a−b) ≥ (p−1)|a−b|²/(|a|+|b|)^{2−p}.
pub fn check_sing_twopoint<T: Real>(a: T, b: T, p: T, rel_slack: T) -> Result<IneqVerdict<T>> {
    ensure_singular_p(p)?;
    if a == T::zero() && b == T::zero() {
        return Err(Error::InvalidArgument(
            "singular two-point bound is 0/0 at a = b = 0; treat that case as gap 0".into(),
        ));
    }
    let lhs = (jp_raw(a, p) - jp_raw(b, p)) * (a - b);
    let diff = (a - b).abs();
    let rhs = (p - T::one()) * diff * diff / abs_pow(a.abs() + b.abs(), T::of(2.0) - p);
    Ok(IneqVerdict::judge(lhs, rhs, rel_slack))
}

fn ensure_singular_p<T: Real>(p: T) -> Result<()> {
    if !(p > T::one() && p < T::of(2.0)) {
        return Err(Error::InvalidArgument(format!("singular bound needs 1 < p < 2, got {p}")));
    }
    Ok(())
}

fn ensure_sing_fourpoint_regime<T: Real>(p: T, gamma: T) -> Result<()> {
    ensure_singular_p(p)?;
    if !(gamma >= T::of(2.0)) {
        return Err(Error::InvalidArgument(format!(
            "singular four-point bound needs gamma ≥ 2, got {gamma}"
        )));
    }
    Ok(())
}

/// Singular four-point bound (1 < p < 2, γ ≥ 2):
/// (J_γ(a−b)−J_γ(c−d))(J_p(a−c)−J_p(b−d)) ≥
/// 4(γ−1)(p−1)/γ² ||a−b|^{(γ−2)/2}(a−b) − |c−d|^{(γ−2)/2}(c−d)|² (|a−c|+|b−d|)^{p−2}.
/// The 0/0 case |a−c|+|b−d| = 0 is reported with rhs = 0.
pub fn check_sing_fourpoint<T: Real>(
    a: T,
    b: T,
    c: T,
    d: T,
    p: T,
    gamma: T,
    rel_slack: T,
) -> Result<IneqVerdict<T>> {
    ensure_sing_fourpoint_regime(p, gamma)?;
    let lhs = (jp_raw(a - b, gamma) - jp_raw(c - d, gamma)) * (jp_raw(a - c, p) - jp_raw(b - d, p));
    let rhs = sing_fourpoint_rhs(a - b, c - d, (a - c).abs() + (b - d).abs(), p, gamma);
    Ok(IneqVerdict::judge(lhs, rhs, rel_slack))
}

/// Truncated singular four-point bound: J^M_γ on the left, the squared
/// factor evaluated at the M-truncated differences, the final factor kept
/// at the original arguments (as in the case-by-case proof).
pub fn check_sing_fourpoint_trunc<T: Real>(
    a: T,
    b: T,
    c: T,
    d: T,
    p: T,
    gamma: T,
    m: T,
    rel_slack: T,
) -> Result<IneqVerdict<T>> {
    ensure_sing_fourpoint_regime(p, gamma)?;
    ensure_m_pos(m)?;
    let lhs = (jp_raw(truncate_raw(a - b, m), gamma) - jp_raw(truncate_raw(c - d, m), gamma))
        * (jp_raw(a - c, p) - jp_raw(b - d, p));
    let rhs = sing_fourpoint_rhs(
        truncate_raw(a - b, m),
        truncate_raw(c - d, m),
        (a - c).abs() + (b - d).abs(),
        p,
        gamma,
    );
    Ok(IneqVerdict::judge(lhs, rhs, rel_slack))
}

fn sing_fourpoint_rhs<T: Real>(u: T, v: T, cross: T, p: T, gamma: T) -> T {
    if cross == T::zero() {
        return T::zero();
    }
    let alpha = (gamma - T::of(2.0)) / T::of(2.0);
    let inner = signed_power(u, alpha) - signed_power(v, alpha);
    let four = T::of(4.0);
    four * (gamma - T::one()) * (p - T::one()) / (gamma * gamma)
        * inner
        * inner
        * abs_pow(cross, p - T::of(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SLACK: f64 = DEFAULT_REL_SLACK;

    #[test]
    fn jp_examples() {
        assert_eq!(jp(2.0, 3.0).unwrap(), 4.0);
        assert_eq!(jp(0.0, 1.5).unwrap(), 0.0);
        let v = jp(-3.0, 2.5).unwrap();
        assert!((v - (-3.0f64.powf(1.5))).abs() < 1e-12);
        // odd symmetry cross-check
        assert_eq!(v, -jp(3.0, 2.5).unwrap());
        assert!(jp(1.0, 1.0).is_err());
        assert!(jp(1.0, 0.5).is_err());
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(truncate(5.0, 2.0).unwrap(), 2.0);
        assert_eq!(truncate(-0.5, 2.0).unwrap(), -0.5);
        assert_eq!(truncate(-7.0, 3.0).unwrap(), -3.0);
        assert!(truncate(1.0, 0.0).is_err());
        assert!(truncate(1.0, -1.0).is_err());
    }

    #[test]
    fn jp_truncated_examples() {
        assert_eq!(jp_truncated(5.0, 3.0, 2.0).unwrap(), 4.0);
        assert_eq!(jp_truncated(1.0, 3.0, 2.0).unwrap(), 1.0);
        assert!((jp_truncated(-5.0, 1.5, 4.0).unwrap() - (-2.0)).abs() < 1e-15);
    }

    #[test]
    fn deg_power_hand_values() {
        let v = check_deg_power(1.0, 1.0, 3.0, 2.0, SLACK).unwrap();
        assert_eq!(v.gap, 0.0);
        assert!(v.holds);

        let v = check_deg_power(1.0, 0.0, 3.0, 2.0, SLACK).unwrap();
        assert!((v.lhs - 1.0).abs() < 1e-15);
        assert!((v.rhs - 8.0 / 9.0).abs() < 1e-15);
        assert!(v.holds);

        // (a,b,p,q) = (2,−1,4,1): both sides evaluate to 9 exactly.
        let v = check_deg_power(2.0, -1.0, 4.0, 1.0, SLACK).unwrap();
        assert!((v.lhs - 9.0).abs() < 1e-12);
        assert!((v.rhs - 9.0).abs() < 1e-12);
        assert!(v.holds);

        assert!(check_deg_power(1.0, 0.0, 1.5, 2.0, SLACK).is_err());
        assert!(check_deg_power(1.0, 0.0, 3.0, 0.5, SLACK).is_err());
    }

    #[test]
    fn deg_fourpoint_hand_values() {
        let v = check_deg_fourpoint(2.0, 1.0, 2.0, 1.0, 3.0, 2.0, SLACK).unwrap();
        assert_eq!(v.gap, 0.0);

        let v = check_deg_fourpoint(1.0, 0.0, 0.0, 0.0, 3.0, 1.0, SLACK).unwrap();
        assert!((v.lhs - 1.0).abs() < 1e-15);
        assert!((v.rhs - 1.0 / 12.0).abs() < 1e-15);
        assert!(v.holds);
    }

    #[test]
    fn deg_fourpoint_trunc_hand_value() {
        // |a−b| > M exercises the clamp branch of the case analysis.
        let v = check_deg_fourpoint_trunc(3.0, 0.0, 0.0, 0.0, 3.0, 2.0, 1.0, SLACK).unwrap();
        assert!((v.lhs - 9.0).abs() < 1e-12);
        let c = 2.0 / (3.0 * 4.0) * (3.0f64 / 4.0).powi(3);
        assert!((v.rhs - c).abs() < 1e-15);
        assert!(v.holds);
    }

    #[test]
    fn jp_lipschitz_basics() {
        let c2 = calibrate_lipschitz_constant(2.0).unwrap();
        assert!(c2.c >= 1.0);
        let v = check_jp_lipschitz(1.0, 1.0, &c2, SLACK).unwrap();
        assert_eq!(v.gap, 0.0);
        let v = check_jp_lipschitz(1.0, 0.0, &c2, SLACK).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn sing_twopoint_hand_values() {
        let v = check_sing_twopoint(1.0, 1.0, 1.5, SLACK).unwrap();
        assert_eq!(v.gap, 0.0);

        let v = check_sing_twopoint(1.0, -1.0, 1.5, SLACK).unwrap();
        assert!((v.lhs - 4.0).abs() < 1e-15);
        assert!((v.rhs - 2.0f64.sqrt()).abs() < 1e-15);
        assert!(v.holds);

        assert!(check_sing_twopoint(0.0, 0.0, 1.5, SLACK).is_err());
        assert!(check_sing_twopoint(1.0, 0.0, 2.5, SLACK).is_err());
    }

    #[test]
    fn sing_fourpoint_hand_values() {
        // identical pairs: 0/0 right-hand side reported as gap 0
        let v = check_sing_fourpoint(1.0, 0.5, 1.0, 0.5, 1.5, 2.0, SLACK).unwrap();
        assert_eq!(v.gap, 0.0);
        assert!(v.holds);

        let v = check_sing_fourpoint(1.0, 0.0, 0.0, 0.0, 1.5, 2.0, SLACK).unwrap();
        assert!((v.lhs - 1.0).abs() < 1e-15);
        assert!((v.rhs - 0.5).abs() < 1e-15);
        assert!(v.holds);

        assert!(check_sing_fourpoint(1.0, 0.0, 0.0, 0.0, 1.5, 1.5, SLACK).is_err());
    }

    #[test]
    fn sing_fourpoint_trunc_hand_value() {
        let v = check_sing_fourpoint_trunc(3.0, 0.0, 0.0, 0.0, 1.5, 2.0, 1.0, SLACK).unwrap();
        assert!((v.lhs - 3.0f64.sqrt()).abs() < 1e-15);
        assert!((v.rhs - 0.5 / 3.0f64.sqrt()).abs() < 1e-14);
        assert!(v.holds);
    }

    #[test]
    fn exponents_validation_and_derived() {
        assert!(Exponents::new(1.0, 0.5, 1).is_err());
        assert!(Exponents::new(3.0, 0.0, 1).is_err());
        assert!(Exponents::new(3.0, 1.0, 1).is_err());
        assert!(Exponents::new(3.0, 0.5, 0).is_err());

        let e = Exponents::new(3.0, 0.5, 1).unwrap();
        assert!(e.critical_exponent().is_none()); // sp = 1.5 ≥ n = 1
        assert!((e.power_decay_target().unwrap() - (-1.0)).abs() < 1e-15);

        let e = Exponents::new(1.5, 0.5, 1).unwrap();
        assert!((e.critical_exponent().unwrap() - 1.0 * 1.5 / 0.25).abs() < 1e-15);
        e.require_singular_regime().unwrap();
        assert!(e.power_decay_target().is_err());

        let e = Exponents::new(2.5, 0.5, 1).unwrap();
        assert!(e.require_singular_regime().is_err());
        // p below the singular lower bound in higher dimension
        let e = Exponents::new(1.05, 0.1, 3).unwrap();
        assert!(e.require_singular_regime().is_err());
    }

    #[test]
    fn nu_case_split() {
        // n = 1, s = 0.5, p = 1.5: sp = 0.75 < 1, first branch, ν = 1.
        let e = Exponents::new(1.5, 0.5, 1).unwrap();
        let nu = e.nu(None).unwrap();
        assert!((nu.value - 1.0).abs() < 1e-15);
        assert!(nu.n_embedding.is_none());

        // n = 1, s = 0.8, p = 1.6: sp = 1.28 ≥ 1, N = 2 gives ν = 4/3.6.
        let e = Exponents::new(1.6, 0.8, 1).unwrap();
        let nu = e.nu(Some(2.0)).unwrap();
        assert!((nu.value - 4.0 / 3.6).abs() < 1e-15);
        assert_eq!(nu.n_embedding, Some(2.0));

        // default N = ⌈sp⌉ + 1 = 3 keeps ν < p here
        let nu = e.nu(None).unwrap();
        assert_eq!(nu.n_embedding, Some(3.0));
        assert!(nu.value < 1.6);

        // an oversized N pushes ν past p and is rejected
        assert!(e.nu(Some(40.0)).is_err());
        // N ≤ sp rejected
        assert!(e.nu(Some(1.0)).is_err());
    }

    fn finite_range(lim: f64) -> impl Strategy<Value = f64> {
        prop::num::f64::NORMAL.prop_filter("bounded", move |v| v.abs() <= lim)
    }

    proptest! {
        #[test]
        fn jp_is_odd(t in finite_range(1e6), p in 1.01f64..6.0) {
            let lhs = jp(-t, p).unwrap();
            let rhs = -jp(t, p).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn jp_is_increasing(t1 in -10.0f64..10.0, dt in 1e-6f64..5.0, p in 1.1f64..6.0) {
            let t2 = t1 + dt;
            prop_assert!(jp(t1, p).unwrap() < jp(t2, p).unwrap());
        }

        #[test]
        fn jp_inverse_pair(t in -10.0f64..10.0, p in 1.1f64..10.0) {
            let q = p / (p - 1.0); // 1/p + 1/q = 1
            let back = jp(jp(t, q).unwrap(), p).unwrap();
            prop_assert!((back - t).abs() <= 1e-10 * (1.0 + t.abs()));
        }

        #[test]
        fn jp_positive_homogeneity(t in -10.0f64..10.0, c in 1e-3f64..1e3, p in 1.1f64..6.0) {
            let lhs = jp(c * t, p).unwrap();
            let rhs = c.powf(p - 1.0) * jp(t, p).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * (lhs.abs() + rhs.abs() + 1e-300));
        }

        #[test]
        fn truncation_inactive_matches_untruncated(
            a in -0.9f64..0.9, b in -0.9f64..0.9, c in -0.9f64..0.9, d in -0.9f64..0.9,
            p in 2.0f64..5.0, gamma in 1.0f64..5.0,
        ) {
            // all differences below M = 2: clamp inactive, verdicts identical
            let plain = check_deg_fourpoint(a, b, c, d, p, gamma, SLACK).unwrap();
            let trunc = check_deg_fourpoint_trunc(a, b, c, d, p, gamma, 2.0, SLACK).unwrap();
            prop_assert_eq!(plain.lhs, trunc.lhs);
            prop_assert_eq!(plain.rhs, trunc.rhs);
        }

        #[test]
        fn sing_truncation_inactive_matches_untruncated(
            a in -0.9f64..0.9, b in -0.9f64..0.9, c in -0.9f64..0.9, d in -0.9f64..0.9,
            p in 1.1f64..1.95, gamma in 2.0f64..5.0,
        ) {
            let plain = check_sing_fourpoint(a, b, c, d, p, gamma, SLACK).unwrap();
            let trunc = check_sing_fourpoint_trunc(a, b, c, d, p, gamma, 2.0, SLACK).unwrap();
            prop_assert_eq!(plain.lhs, trunc.lhs);
            prop_assert_eq!(plain.rhs, trunc.rhs);
        }
    }
}
