//! Explicit bounds for thick triangulations: edge lengths in cusp tori,
//! thickness radii, the systole, intersection counts and move counts.
//!
//! Every quantity is a [`LogReal`] so that extreme parameters neither
//! overflow nor underflow.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::counts::SimplexCounts;
use crate::error::BoundsError;
use crate::logreal::{self, LogReal};
use crate::shape::validate_theta0;
use crate::volume::regular_tet_volume;

/// Default Margulis number.
pub const DEFAULT_EPSILON: f64 = 0.29;

/// Leading constant of the simplified move bound.
pub const SIMPLIFIED_MOVE_CONSTANT: f64 = 2.797e12;

fn lr(value: f64) -> LogReal {
    LogReal::new(value).expect("nonnegative constant")
}

fn check_theta(theta0: f64) -> Result<f64, BoundsError> {
    validate_theta0(theta0).map_err(|_| BoundsError::OutOfRange {
        name: "theta0",
        value: theta0,
        expected: "0 < theta0 <= pi/3",
    })
}

/// Validated inputs shared by all bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThicknessParams {
    m: u64,
    theta0: f64,
    epsilon: f64,
    v_tet: f64,
}

impl ThicknessParams {
    pub fn new(m: u64, theta0: f64, epsilon: f64) -> Result<Self, BoundsError> {
        if m < 1 {
            return Err(BoundsError::TooFewTetrahedra { min: 1, got: m });
        }
        let theta0 = check_theta(theta0)?;
        if !(0.29..1.0).contains(&epsilon) {
            return Err(BoundsError::OutOfRange { name: "epsilon", value: epsilon, expected: "0.29 <= epsilon < 1" });
        }
        Ok(ThicknessParams { m, theta0, epsilon, v_tet: regular_tet_volume() })
    }

    /// Parameters for two triangulations with `m1` and `m2` tetrahedra.
    pub fn for_pair(m1: u64, m2: u64, theta0: f64, epsilon: f64) -> Result<Self, BoundsError> {
        for m in [m1, m2] {
            if m < 1 {
                return Err(BoundsError::TooFewTetrahedra { min: 1, got: m });
            }
        }
        Self::new(m1 + m2, theta0, epsilon)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn v_tet(&self) -> f64 {
        self.v_tet
    }

    fn sin(&self) -> LogReal {
        lr(libm::sin(self.theta0))
    }

    fn cot(&self) -> LogReal {
        lr(1.0 / libm::tan(self.theta0))
    }
}

/// `l0(n) = sin(θ0)^n (sqrt(n^2 + 8n) - n) / (4n)`.
pub fn edge_lower_bound(n: u64, theta0: f64) -> Result<LogReal, BoundsError> {
    if n < 1 {
        return Err(BoundsError::TooFewTetrahedra { min: 1, got: n });
    }
    let theta0 = check_theta(theta0)?;
    let nf = n as f64;
    // sqrt(n^2 + 8n) - n without cancellation.
    let gap = 8.0 * nf / (libm::sqrt(nf * nf + 8.0 * nf) + nf);
    Ok(lr(libm::sin(theta0)).powf(nf) * lr(gap / (4.0 * nf)))
}

/// `L0(A) = 2 sqrt(A cot θ0)`.
pub fn edge_upper_bound(area: LogReal, theta0: f64) -> Result<LogReal, BoundsError> {
    let theta0 = check_theta(theta0)?;
    if area.is_zero() {
        return Err(BoundsError::OutOfRange { name: "area", value: 0.0, expected: "area > 0" });
    }
    Ok(lr(2.0) * (area * lr(1.0 / libm::tan(theta0))).sqrt())
}

/// `(l0(n), L0(A))`.
pub fn torus_edge_bounds(n: u64, area: f64, theta0: f64) -> Result<(LogReal, LogReal), BoundsError> {
    if !(area > 0.0) {
        return Err(BoundsError::OutOfRange { name: "area", value: area, expected: "area > 0" });
    }
    Ok((edge_lower_bound(n, theta0)?, edge_upper_bound(lr(area), theta0)?))
}

/// `L0 / (2 sin θ0)`.
pub fn circumradius_bound(l0_upper: LogReal, theta0: f64) -> Result<LogReal, BoundsError> {
    let theta0 = check_theta(theta0)?;
    Ok(l0_upper / lr(2.0 * libm::sin(theta0)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuspConstants {
    pub l0: LogReal,
    pub z0: LogReal,
    pub a0_area: LogReal,
    pub h0_max: LogReal,
}

/// `l0` at `n = 4m`, the height `z0`, the area cap `A0 = 2 m v / ε^2` and `h0 <= 1/ε`.
pub fn cusp_constants(params: &ThicknessParams) -> CuspConstants {
    let m = LogReal::from_count(params.m);
    let eps = lr(params.epsilon);
    let v = lr(params.v_tet);
    let l0 = edge_lower_bound(4 * params.m, params.theta0).expect("validated params");
    let z0 = (lr(2.0) * m * v * params.cot()).sqrt() / (eps * params.sin());
    CuspConstants { l0, z0, a0_area: lr(2.0) * m * v / eps.powf(2.0), h0_max: LogReal::ONE / eps }
}

/// `r(t) = asinh(sinh(t) sin θ0)`.
pub fn r_of_t(t: LogReal, theta0: f64) -> Result<LogReal, BoundsError> {
    let theta0 = check_theta(theta0)?;
    Ok(logreal::asinh(logreal::sinh(t) * lr(libm::sin(theta0))))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThicknessRadii {
    pub a0: LogReal,
    /// `sinh(a0)`, kept separately since it is the quantity compared with ε.
    pub sinh_a0: LogReal,
    pub r0: LogReal,
    pub s0: LogReal,
}

/// `a0 = asinh(l0 sin θ0 / z0)`, `r0 = r(a0/2)` and `s0 = r(a0/4)`.
pub fn thickness_radii(params: &ThicknessParams) -> ThicknessRadii {
    let c = cusp_constants(params);
    let sinh_a0 = c.l0 * params.sin() / c.z0;
    let a0 = logreal::asinh(sinh_a0);
    let r = |t: LogReal| r_of_t(t, params.theta0).expect("validated params");
    ThicknessRadii { a0, sinh_a0, r0: r(a0 / lr(2.0)), s0: r(a0 / lr(4.0)) }
}

/// `(s0, 2^-9 sin(θ0)^(4m + 7/2) / m^(3/2))`.
pub fn systole_bounds(params: &ThicknessParams) -> (LogReal, LogReal) {
    (thickness_radii(params).s0, systole_bound_simplified(params.m, params.theta0).expect("validated params"))
}

/// `2^-9 sin(θ0)^(4m + 7/2) / m^(3/2)`.
pub fn systole_bound_simplified(m: u64, theta0: f64) -> Result<LogReal, BoundsError> {
    if m < 1 {
        return Err(BoundsError::TooFewTetrahedra { min: 1, got: m });
    }
    let theta0 = check_theta(theta0)?;
    let mf = m as f64;
    Ok(lr(libm::sin(theta0)).powf(4.0 * mf + 3.5) / (lr(512.0) * LogReal::from_count(m).powf(1.5)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntersectionBounds {
    /// Cap on the number of components of an intersection.
    pub n_components: LogReal,
    pub f: LogReal,
}

/// `n = 2π v / (θ0 · π (sinh r0 - r0))` and `f = (4π v / (θ0^2 (sinh r0 - r0)) + 1) m`.
pub fn intersection_bounds(params: &ThicknessParams) -> IntersectionBounds {
    let r0 = thickness_radii(params).r0;
    let excess = logreal::sinh_minus_identity(r0);
    let theta = lr(params.theta0);
    let v = lr(params.v_tet);
    let n_components = lr(2.0 * PI) * v / (theta * lr(PI) * excess);
    let f = (lr(4.0 * PI) * v / (theta.powf(2.0) * excess) + LogReal::ONE) * LogReal::from_count(params.m);
    IntersectionBounds { n_components, f }
}

/// Move counts for a subdivision with simplex counts `s`, starting from counts `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoveAccounting {
    /// `(4π/θ0) s1 + 2 s2 + s3`.
    pub lem35: f64,
    /// `(8π/θ0) s1 + 12 s2 + 24 s3 + (4π/θ0) p1 + 2 p2 + p3`.
    pub pachnerlem: f64,
}

pub fn move_accounting(s: SimplexCounts, p: SimplexCounts, theta0: f64) -> Result<MoveAccounting, BoundsError> {
    let theta0 = check_theta(theta0)?;
    let k = PI / theta0;
    let [_, s1, s2, s3] = s.as_array().map(|x| x as f64);
    let [_, p1, p2, p3] = p.as_array().map(|x| x as f64);
    Ok(MoveAccounting {
        lem35: 4.0 * k * s1 + 2.0 * s2 + s3,
        pachnerlem: 8.0 * k * s1 + 12.0 * s2 + 24.0 * s3 + 4.0 * k * p1 + 2.0 * p2 + p3,
    })
}

/// [`move_accounting`] in log space, for counts far beyond `u64`.
fn move_accounting_log(s: [LogReal; 3], p: [LogReal; 3], theta0: f64) -> (LogReal, LogReal) {
    let k = lr(PI / theta0);
    let lem35 = lr(4.0) * k * s[0] + lr(2.0) * s[1] + s[2];
    let pachnerlem = lr(8.0) * k * s[0]
        + lr(12.0) * s[1]
        + lr(24.0) * s[2]
        + lr(4.0) * k * p[0]
        + lr(2.0) * p[1]
        + p[2];
    (lem35, pachnerlem)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PachnerBound {
    pub n_exact: LogReal,
    /// `None` when `m < 4`, where the simplified form is not claimed.
    pub n_simplified: Option<LogReal>,
    pub s_cap: LogReal,
}

/// `N = (10752 + 3584π/θ0) f + (5 + 8π/θ0) m` and its simplified upper bound.
pub fn pachner_bound(params: &ThicknessParams) -> Result<PachnerBound, BoundsError> {
    if params.m < 2 {
        return Err(BoundsError::TooFewTetrahedra { min: 2, got: params.m });
    }
    let f = intersection_bounds(params).f;
    let k = PI / params.theta0;
    let n_exact = lr(10752.0 + 3584.0 * k) * f + lr(5.0 + 8.0 * k) * LogReal::from_count(params.m);
    let n_simplified = (params.m >= 4).then(|| {
        let mf = params.m as f64;
        lr(SIMPLIFIED_MOVE_CONSTANT) * LogReal::from_count(params.m).powf(5.5) / params.sin().powf(12.0 * mf + 13.5)
    });
    Ok(PachnerBound { n_exact, n_simplified, s_cap: lr(112.0) * f })
}

/// Every bound for a pair of triangulations with `m1 + m2 = m` tetrahedra.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundsReport {
    pub params: ThicknessParams,
    pub l0: LogReal,
    pub l0_upper: LogReal,
    pub circumradius: LogReal,
    pub z0: LogReal,
    pub a0_area: LogReal,
    pub h0_max: LogReal,
    pub a0: LogReal,
    pub sinh_a0: LogReal,
    pub r0: LogReal,
    pub s0_exact: LogReal,
    pub s0_simplified: LogReal,
    pub n_components: LogReal,
    pub f: LogReal,
    pub n_exact: LogReal,
    pub n_simplified: Option<LogReal>,
    /// Move count for a subdivision at the worst-case simplex counts.
    pub lem35: LogReal,
    pub pachnerlem: LogReal,
    pub s_cap: LogReal,
}

/// A named report field with its defining formula.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReportEntry {
    pub name: &'static str,
    pub formula: &'static str,
    pub value: Option<LogReal>,
}

pub fn bounds_report(m1: u64, m2: u64, theta0: f64, epsilon: f64) -> Result<BoundsReport, BoundsError> {
    let params = ThicknessParams::for_pair(m1, m2, theta0, epsilon)?;
    let theta0 = params.theta0;
    let cusp = cusp_constants(&params);
    let l0_upper = edge_upper_bound(cusp.a0_area, theta0)?;
    let radii = thickness_radii(&params);
    let inter = intersection_bounds(&params);
    let pachner = pachner_bound(&params)?;
    let cap = pachner.s_cap;
    let m = LogReal::from_count(params.m);
    // At most 2S edges, 2S faces and S tetrahedra when S bounds the tetrahedra.
    let (lem35, pachnerlem) =
        move_accounting_log([lr(2.0) * cap, lr(2.0) * cap, cap], [lr(2.0) * m, lr(2.0) * m, m], theta0);
    Ok(BoundsReport {
        params,
        l0: cusp.l0,
        l0_upper,
        circumradius: circumradius_bound(l0_upper, theta0)?,
        z0: cusp.z0,
        a0_area: cusp.a0_area,
        h0_max: cusp.h0_max,
        a0: radii.a0,
        sinh_a0: radii.sinh_a0,
        r0: radii.r0,
        s0_exact: radii.s0,
        s0_simplified: systole_bound_simplified(params.m, theta0)?,
        n_components: inter.n_components,
        f: inter.f,
        n_exact: pachner.n_exact,
        n_simplified: pachner.n_simplified,
        lem35,
        pachnerlem,
        s_cap: cap,
    })
}

impl BoundsReport {
    pub fn entries(&self) -> Vec<ReportEntry> {
        let e = |name, formula, value| ReportEntry { name, formula, value: Some(value) };
        alloc::vec![
            e("l0", "sin(theta0)^(4m) (sqrt(m^2+2m) - m) / (4m)", self.l0),
            e("L0", "2 sqrt(A0 cot(theta0))", self.l0_upper),
            e("circumradius_bound", "L0 / (2 sin(theta0))", self.circumradius),
            e("z0", "sqrt(2 m v_tet cot(theta0)) / (epsilon sin(theta0))", self.z0),
            e("A0", "2 m v_tet / epsilon^2", self.a0_area),
            e("h0_max", "1 / epsilon", self.h0_max),
            e("a0", "asinh(l0 sin(theta0) / z0)", self.a0),
            e("r0", "asinh(sinh(a0/2) sin(theta0))", self.r0),
            e("s0_exact", "asinh(sinh(a0/4) sin(theta0))", self.s0_exact),
            e("s0_simplified", "2^-9 sin(theta0)^(4m+7/2) / m^(3/2)", self.s0_simplified),
            e("n_components", "2 pi v_tet / (theta0 pi (sinh(r0) - r0))", self.n_components),
            e("f", "(4 pi v_tet / (theta0^2 (sinh(r0) - r0)) + 1) m", self.f),
            e("N_exact", "(10752 + 3584 pi/theta0) f + (5 + 8 pi/theta0) m", self.n_exact),
            ReportEntry {
                name: "N_simplified",
                formula: "2.797e12 m^(11/2) / sin(theta0)^(12m+27/2), m >= 4",
                value: self.n_simplified,
            },
            e("lem35_bound", "(4 pi/theta0) s1 + 2 s2 + s3 at s = (2S, 2S, S)", self.lem35),
            e(
                "pachnerlem_bound",
                "(8 pi/theta0) s1 + 12 s2 + 24 s3 + (4 pi/theta0) p1 + 2 p2 + p3 at s = (2S, 2S, S), p = (2m, 2m, m)",
                self.pachnerlem,
            ),
            e("s_cap", "S = 112 f", self.s_cap),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const THIRD: f64 = PI / 3.0;

    fn params(m: u64, theta0: f64) -> ThicknessParams {
        ThicknessParams::new(m, theta0, DEFAULT_EPSILON).unwrap()
    }

    fn value(x: LogReal) -> f64 {
        x.to_f64().unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn edge_and_circumradius() {
        assert!(rel(value(edge_lower_bound(8, THIRD).unwrap()), 0.0327649) < 1e-5);
        let (_, upper) = torus_edge_bounds(8, 1.0, PI / 4.0).unwrap();
        assert!(rel(value(upper), 2.0) < 1e-15);
        assert!(rel(value(circumradius_bound(lr(1.0), PI / 6.0).unwrap()), 1.0) < 1e-15);
        assert!(rel(value(circumradius_bound(lr(2.0), THIRD).unwrap()), 2.0 / 3f64.sqrt()) < 1e-15);
        assert!(edge_lower_bound(0, THIRD).is_err());
        assert!(torus_edge_bounds(1, 0.0, THIRD).is_err());
    }

    #[test]
    fn constants_at_two_tetrahedra() {
        let c = cusp_constants(&params(2, THIRD));
        assert!(rel(value(c.l0), 0.0327648) < 1e-5);
        assert!(rel(value(c.z0), 6.09595) < 1e-5);
        assert!(rel(value(c.a0_area), 48.28) < 1e-3);
        assert!(rel(value(c.h0_max), 3.4483) < 1e-4);
        let r = thickness_radii(&params(2, THIRD));
        assert!(rel(value(r.a0), 4.65475535e-3) < 1e-8);
        assert!(rel(value(r.r0), 2.01556865e-3) < 1e-8);
        assert!(rel(value(r.s0), 1.00778415e-3) < 1e-8);
        assert!(rel(value(intersection_bounds(&params(2, THIRD)).f), 1.70444135e10) < 1e-8);
    }

    #[test]
    fn systole_simplified() {
        let s = value(systole_bound_simplified(2, THIRD).unwrap());
        assert!(rel(s, 1.32e-4) < 0.01);
        let (exact, simplified) = systole_bounds(&params(2, THIRD));
        assert!(exact >= simplified);
    }

    #[test]
    fn accounting_examples() {
        let zero = SimplexCounts::new(0, 0, 0, 0);
        assert_eq!(move_accounting(zero, zero, THIRD).unwrap(), MoveAccounting { lem35: 0.0, pachnerlem: 0.0 });
        let ones = SimplexCounts::new(0, 1, 1, 1);
        assert!((move_accounting(ones, zero, THIRD).unwrap().lem35 - 15.0).abs() < 1e-12);
        let fig8 = SimplexCounts::new(1, 2, 4, 2);
        assert!((move_accounting(zero, fig8, THIRD).unwrap().pachnerlem - 34.0).abs() < 1e-12);
    }

    #[test]
    fn pachner_bound_at_four() {
        let b = pachner_bound(&params(4, THIRD)).unwrap();
        let simplified = b.n_simplified.unwrap();
        assert!(rel(value(simplified), 3.98e19) < 0.01);
        assert!(b.n_exact <= simplified);
        assert!(pachner_bound(&params(3, THIRD)).unwrap().n_simplified.is_none());
        assert!(pachner_bound(&params(1, THIRD)).is_err());
    }

    #[test]
    fn report_is_symmetric_and_flags_small_m() {
        let a = bounds_report(1, 3, THIRD, DEFAULT_EPSILON).unwrap();
        let b = bounds_report(3, 1, THIRD, DEFAULT_EPSILON).unwrap();
        assert_eq!(a, b);
        assert!(bounds_report(1, 1, THIRD, DEFAULT_EPSILON).unwrap().n_simplified.is_none());
        assert!(bounds_report(0, 2, THIRD, DEFAULT_EPSILON).is_err());
        assert!(bounds_report(2, 2, THIRD + 0.01, DEFAULT_EPSILON).is_err());
        assert!(bounds_report(2, 2, THIRD, 0.2).is_err());
        assert_eq!(a.entries().len(), 17);
    }

    #[test]
    fn alternative_form_of_f() {
        let p = params(5, 0.7);
        let i = intersection_bounds(&p);
        let alt = (lr(2.0 * PI / p.theta0()) * i.n_components + LogReal::ONE) * LogReal::from_count(5);
        assert!((i.f.ln() - alt.ln()).abs() < 1e-12);
    }

    #[test]
    fn extreme_parameters_stay_finite() {
        let report = bounds_report(32, 32, PI / 96.0, DEFAULT_EPSILON).unwrap();
        for entry in report.entries() {
            let v = entry.value.unwrap();
            assert!(v.ln().is_finite() && !v.is_zero(), "{}", entry.name);
        }
        assert!(report.s0_simplified <= report.s0_exact);
        assert!(report.n_exact <= report.n_simplified.unwrap());
    }
}
