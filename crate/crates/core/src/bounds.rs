//! q-ary entropy, its inverse, and the closed-form cost curves.
//!
//! All bounds here are leading-order expressions: the vanishing slack
//! terms of the asymptotic statements are not modeled.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};

const INV_TOL: f64 = 1e-12;
const INV_MAX_ITER: usize = 200;
/// Slack allowed when checking that an argument lies in a closed domain.
const DOMAIN_SLACK: f64 = 1e-12;

fn check_q(q: u32) -> Result<f64> {
    if q < 2 {
        return Err(Error::Domain(format!("alphabet size {q} < 2")));
    }
    Ok(q as f64)
}

/// `log_q(x)`.
pub fn log_q(x: f64, q: u32) -> f64 {
    x.ln() / (q as f64).ln()
}

/// `H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x)` on `[0, 1-1/q]`.
pub fn entropy_q(x: f64, q: u32) -> Result<f64> {
    let qf = check_q(q)?;
    let top = 1.0 - 1.0 / qf;
    if !(-DOMAIN_SLACK..=top + DOMAIN_SLACK).contains(&x) || x.is_nan() {
        return Err(Error::Domain(format!("H_{q} argument {x} outside [0, {top}]")));
    }
    Ok(entropy_raw(x.clamp(0.0, top), q))
}

/// The entropy formula without domain checks; `0 log 0 = 0`.
fn entropy_raw(x: f64, q: u32) -> f64 {
    let xlx = |t: f64| if t <= 0.0 { 0.0 } else { t * t.ln() };
    let ln_q = (q as f64).ln();
    (x * ((q - 1) as f64).ln() - xlx(x) - xlx(1.0 - x)) / ln_q
}

/// Bisection for the unique x in `[lo, hi]` with `f(x) = y`, f increasing.
fn bisect(f: impl Fn(f64) -> f64, y: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..INV_MAX_ITER {
        if hi - lo <= INV_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Inverse of [`entropy_q`] on `[0, 1]`, by bisection to 1e-12 in x.
pub fn entropy_q_inv(y: f64, q: u32) -> Result<f64> {
    let qf = check_q(q)?;
    if !(-DOMAIN_SLACK..=1.0 + DOMAIN_SLACK).contains(&y) || y.is_nan() {
        return Err(Error::Domain(format!("H_{q}^-1 argument {y} outside [0, 1]")));
    }
    let top = 1.0 - 1.0 / qf;
    if y <= 0.0 {
        return Ok(0.0);
    }
    if y >= 1.0 {
        return Ok(top);
    }
    Ok(bisect(|x| entropy_raw(x, q), y, 0.0, top))
}

/// `h(x) = -x log_q x`, a lower bound on `H_q` on its domain.
pub fn h_lower(x: f64, q: u32) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * log_q(x, q)
    }
}

/// Inverse of [`h_lower`] on its increasing branch `[0, min(1/e, 1-1/q)]`.
pub fn h_lower_inv(y: f64, q: u32) -> Result<f64> {
    let qf = check_q(q)?;
    let top = (1.0 / std::f64::consts::E).min(1.0 - 1.0 / qf);
    let ymax = h_lower(top, q);
    if !(0.0..=ymax).contains(&y) {
        return Err(Error::Domain(format!("h^-1 argument {y} outside [0, {ymax}]")));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    Ok(bisect(|x| h_lower(x, q), y, 0.0, top))
}

/// Converse: `H_q^-1(log_q(L) / N)`.
pub fn converse_gamma(l: u64, n: usize, q: u32) -> Result<f64> {
    if l == 0 || n == 0 {
        return Err(Error::Domain("L and N must be positive".into()));
    }
    entropy_q_inv(log_q(l as f64, q) / n as f64, q)
}

/// Achievability: `H_q^-1(K / N)`.
pub fn achievable_gamma(k: usize, n: usize, q: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("N must be positive".into()));
    }
    entropy_q_inv(k as f64 / n as f64, q)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeltaBound {
    /// Average symbols per user, `sqrt(log_q(N) / (1 - R))`.
    pub big_delta: f64,
    /// `big_delta / N`.
    pub delta: f64,
}

/// Communication bound of the block-diagonal construction at rate `R`.
pub fn asymptotic_delta(n: usize, rate: f64, q: u32) -> Result<DeltaBound> {
    check_q(q)?;
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::Domain(format!("rate {rate} outside (0, 1)")));
    }
    if n < 1 {
        return Err(Error::Domain("N must be positive".into()));
    }
    let big_delta = (log_q(n as f64, q) / (1.0 - rate)).sqrt();
    Ok(DeltaBound {
        big_delta,
        delta: big_delta / n as f64,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionPoint {
    pub label: &'static str,
    pub gamma: f64,
    pub delta: f64,
}

/// Corner points of the cost region for one parameter point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionReport {
    pub q: u32,
    pub k: usize,
    pub n: usize,
    pub l: u64,
    pub converse_gamma: f64,
    pub achievable_gamma: f64,
    pub big_delta: f64,
    pub delta: f64,
    /// `H_q(gamma)` at the achievable point.
    pub functional_capacity: f64,
    /// 1 uncoded decentralized, 2 uncoded centralized, 3 coded achievable,
    /// 4 converse at the coded communication cost, 5 trivial converse.
    pub points: Vec<RegionPoint>,
}

impl RegionReport {
    pub fn ordered(&self) -> bool {
        self.converse_gamma <= self.achievable_gamma + 1e-12
    }
}

pub fn region_report(q: u32, k: usize, n: usize, l: u64) -> Result<RegionReport> {
    let conv = converse_gamma(l, n, q)?;
    let ach = achievable_gamma(k, n, q)?;
    let rate = k as f64 / n as f64;
    let db = if rate < 1.0 {
        asymptotic_delta(n, rate, q)?
    } else {
        DeltaBound {
            big_delta: f64::INFINITY,
            delta: 1.0,
        }
    };
    let nf = n as f64;
    let d3 = db.delta.min(1.0);
    let points = vec![
        RegionPoint { label: "1", gamma: 1.0 / nf, delta: 1.0 },
        RegionPoint { label: "2", gamma: 1.0, delta: 1.0 / nf },
        RegionPoint { label: "3", gamma: ach, delta: d3 },
        RegionPoint { label: "4", gamma: conv, delta: d3 },
        RegionPoint { label: "5", gamma: conv, delta: 1.0 / nf },
    ];
    Ok(RegionReport {
        q,
        k,
        n,
        l,
        converse_gamma: conv,
        achievable_gamma: ach,
        big_delta: db.big_delta,
        delta: db.delta,
        functional_capacity: entropy_q(ach, q)?,
        points,
    })
}

/// Formats `x` with `sig` significant digits, trailing zeros removed.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = sig as i32 - 1 - mag;
    if (0..=20).contains(&decimals) && mag > -6 {
        let s = format!("{:.*}", decimals as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{:.*e}", sig.saturating_sub(1), x)
    }
}

pub const REGION_CSV_HEADER: [&str; 12] = [
    "q", "K", "N", "L", "converse_gamma", "achievable_gamma", "big_delta", "delta",
    "functional_capacity", "uncoded_decentralized_delta", "uncoded_centralized_gamma", "uncoded_centralized_delta",
];

impl RegionReport {
    pub fn csv_row(&self) -> Vec<String> {
        let f = |x: f64| fmt_sig(x, 12);
        vec![
            self.q.to_string(),
            self.k.to_string(),
            self.n.to_string(),
            self.l.to_string(),
            f(self.converse_gamma),
            f(self.achievable_gamma),
            f(self.big_delta),
            f(self.delta),
            f(self.functional_capacity),
            f(self.points[0].delta),
            f(self.points[1].gamma),
            f(self.points[1].delta),
        ]
    }
}

/// Writes region reports as CSV with [`REGION_CSV_HEADER`].
pub fn write_region_csv<W: Write>(reports: &[RegionReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(REGION_CSV_HEADER).map_err(crate::covering::csv_err)?;
    for r in reports {
        w.write_record(r.csv_row()).map_err(crate::covering::csv_err)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_endpoints_and_value() {
        for q in [2, 3, 5, 7, 11] {
            assert_eq!(entropy_q(0.0, q).unwrap(), 0.0);
            let top = 1.0 - 1.0 / q as f64;
            assert!((entropy_q(top, q).unwrap() - 1.0).abs() < 1e-12);
            assert_eq!(entropy_q_inv(0.0, q).unwrap(), 0.0);
            assert_eq!(entropy_q_inv(1.0, q).unwrap(), top);
        }
        // -(1/4) log2(1/4) - (3/4) log2(3/4)
        let expect = 0.5 + 0.75 * (4.0f64 / 3.0).log2();
        assert!((entropy_q(0.25, 2).unwrap() - expect).abs() < 1e-15);
        assert!((expect - 0.811278).abs() < 1e-6);
    }

    #[test]
    fn domain_errors() {
        assert!(entropy_q(0.6, 2).is_err());
        assert!(entropy_q(-0.1, 3).is_err());
        assert!(entropy_q_inv(1.5, 2).is_err());
        assert!(asymptotic_delta(16, 1.0, 2).is_err());
        assert!(converse_gamma(1 << 20, 4, 2).is_err());
    }

    #[test]
    fn inverse_values() {
        let x = entropy_q_inv(0.5, 2).unwrap();
        assert!((x - 0.110028).abs() < 1e-6);
        assert!((achievable_gamma(4, 8, 2).unwrap() - x).abs() < 1e-15);
        assert_eq!(converse_gamma(1, 8, 2).unwrap(), 0.0);
        // L = q^K makes the two bounds meet
        let c = converse_gamma(7u64.pow(4), 8, 7).unwrap();
        let a = achievable_gamma(4, 8, 7).unwrap();
        assert!((c - a).abs() < 1e-12);
    }

    #[test]
    fn h_lower_bounds_entropy() {
        for q in [2, 3, 5, 7] {
            let top = 1.0 - 1.0 / q as f64;
            for i in 0..=500 {
                let x = top * i as f64 / 500.0;
                assert!(h_lower(x, q) <= entropy_q(x, q).unwrap() + 1e-15);
            }
            let ymax = h_lower((1.0 / std::f64::consts::E).min(top), q);
            for i in 1..100 {
                let y = ymax * i as f64 / 100.0;
                assert!(entropy_q_inv(y, q).unwrap() <= h_lower_inv(y, q).unwrap() + 1e-12);
            }
        }
    }

    #[test]
    fn delta_bound_values() {
        let d = asymptotic_delta(2, 0.75, 2).unwrap();
        assert!((d.big_delta - 2.0).abs() < 1e-12);
        let d = asymptotic_delta(1 << 10, 0.5, 2).unwrap();
        assert!((d.big_delta - 20f64.sqrt()).abs() < 1e-12);
        let mut prev = f64::INFINITY;
        for n in 4..200 {
            let d = asymptotic_delta(n, 0.5, 3).unwrap().delta;
            assert!(d < prev);
            prev = d;
        }
    }

    #[test]
    fn region_points() {
        let r = region_report(2, 8, 16, 4).unwrap();
        assert!((r.points[2].gamma - 0.110028).abs() < 1e-6);
        assert!(r.ordered());
        let r = region_report(2, 3, 8, 1).unwrap();
        assert_eq!(r.points[3].gamma, 0.0);
        let r = region_report(7, 4, 8, 6).unwrap();
        assert!(r.ordered());
    }

    #[test]
    fn significant_digit_format() {
        assert_eq!(fmt_sig(0.110027864, 12), "0.110027864");
        assert_eq!(fmt_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(fmt_sig(2.0, 12), "2");
        assert_eq!(fmt_sig(123456.5, 12), "123456.5");
        assert_eq!(fmt_sig(1e-9, 3), "1.00e-9");
    }
}
