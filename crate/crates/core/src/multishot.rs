//! Multi-slot schemes: each server sends `T` symbols per round.
//!
//! A scheme over `T` slots is a single-shot factorization with `N T`
//! coordinates; coordinate `t * N + n` (0-based) is server `n` in slot
//! `t`. A server computes the union of the subfunctions its `T` rows of
//! `E` touch, so `W_l` is a union over slots.

use crate::bounds::{entropy_q, entropy_q_inv, log_q};
use crate::error::{Error, Result};
use crate::scheme::{build_scheme_coded, costs, Budgets, CostReport, DemandMatrix, Scheme, Strategy};

/// Same as [`costs`]; `W_l` is a union over slots by construction.
pub fn multishot_costs(s: &Scheme) -> CostReport {
    costs(s)
}

/// Builds a scheme with `n` servers and `t` slots from a code of length
/// `n t`. The zero-row repair is skipped when `t > 1`, since an all-zero
/// row then marks an idle slot rather than an idle server.
pub fn build_multishot_scheme(
    f: &DemandMatrix,
    n: usize,
    t: usize,
    strategy: &Strategy,
    budgets: &Budgets,
) -> Result<Scheme> {
    if t == 0 || n == 0 {
        return Err(Error::shape("N and T must be positive"));
    }
    if n * t <= f.k() && !matches!(strategy, Strategy::GivenD(_)) {
        return Err(Error::shape(format!("need N T > K, got N={n} T={t} K={}", f.k())));
    }
    if t == 1 {
        return build_scheme_coded(f, n, strategy, budgets);
    }
    let budgets = Budgets {
        repair_zero_rows: false,
        ..budgets.clone()
    };
    let single = build_scheme_coded(f, n * t, strategy, &budgets)?;
    let mut s = Scheme::new(
        single.f().clone(),
        single.d().clone(),
        single.e().clone(),
        t,
        single.provenance.clone(),
    )?;
    s.trace = single.trace;
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultiShotBound {
    /// `T H_q^-1(K / (N T))`.
    pub bound: f64,
    /// Covering radius fraction `bound / T` for a length-`N T` code.
    pub rho: f64,
    /// Set when `K / (N T) > 1` and the bound was clamped to `T (1 - 1/q)`.
    pub clamped: bool,
}

pub fn multishot_gamma_bound(k: usize, n: usize, t: usize, q: u32) -> Result<MultiShotBound> {
    if k == 0 || n == 0 || t == 0 {
        return Err(Error::Domain(format!("K, N, T must be positive (K={k}, N={n}, T={t})")));
    }
    let c = k as f64 / (n * t) as f64;
    let clamped = c > 1.0;
    let rho = entropy_q_inv(c.min(1.0), q)?;
    Ok(MultiShotBound {
        bound: t as f64 * rho,
        rho,
        clamped,
    })
}

/// `f(T) = T H_q^-1(c / T)` for real `T > 0` and `c = K / N`.
pub fn bound_curve(c: f64, t: f64, q: u32) -> Result<f64> {
    if t <= 0.0 || c <= 0.0 || c / t > 1.0 {
        return Err(Error::Domain(format!("c/T = {c}/{t} outside (0, 1]")));
    }
    Ok(t * entropy_q_inv(c / t, q)?)
}

/// `df/dT` of [`bound_curve`] from implicit differentiation of
/// `T H_q(f/T) = c`: with `x = f/T`,
/// `f' = x - H_q(x) / H_q'(x) = log(1-x) / log((q-1)(1-x)/x)`,
/// which is negative on the whole interior of the domain.
pub fn bound_derivative(c: f64, t: f64, q: u32) -> Result<f64> {
    let x = bound_curve(c, t, q)? / t;
    let slope = log_q((q - 1) as f64 * (1.0 - x) / x, q);
    Ok(x - entropy_q(x, q)? / slope)
}

/// The derivative in the form `H_q(x) / log_q((q-1) x / (1-x)) + x`.
/// It agrees with [`bound_derivative`] only for q = 2.
pub fn bound_derivative_q_in_numerator(c: f64, t: f64, q: u32) -> Result<f64> {
    let x = bound_curve(c, t, q)? / t;
    Ok(entropy_q(x, q)? / log_q(x / (1.0 - x) * (q - 1) as f64, q) + x)
}

/// `ceil(K / (N H_q^-1(1/q)))`, from which the bound decreases in `T`.
pub fn monotone_threshold(k: usize, n: usize, q: u32) -> Result<usize> {
    let x = entropy_q_inv(1.0 / q as f64, q)?;
    Ok((k as f64 / (n as f64 * x)).ceil() as usize)
}
