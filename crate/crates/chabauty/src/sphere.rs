//! The sphere parametrization of the space of closed subgroups of the plane:
//! a homeomorphism from `S^4 = C^2 ∪ {∞}` onto the closed subgroups of `C`,
//! built from the extended invariant map, a radial interpolation inside the
//! unit ball, the inversion `σ` and the dual involution outside, following
//! Hubbard–Pourezza.
//!
//! Geometry of the parametrization: the origin maps to `{0}`; the unit sphere
//! `S^3` maps to unimodular lattices, except for the trefoil `Σ ∩ S^3`
//! (`Σ : a^3 = 27 b^2`), whose points map to lines; `∞` maps to `C`; the
//! exterior is the dual of the interior through `σ`.
//!
//! The interior radial factor `h` used here is `r^2 · covol(γ(a1,b1))` on
//! off-curve rays and `r^2/(1-r^2)` on knot rays — continuous, strictly
//! monotone, with the boundary limits the construction needs; it is a choice,
//! not canonical.

use crate::error::InvariantError;
use crate::euclid::ClosedSubgroupC;
use crate::invariants::{extended_g_prime, invert_g};
use num::complex::Complex64;
use num::Zero;

/// A point of `C^2 ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite { a: Complex64, b: Complex64 },
    Infinity,
}

impl SpherePoint {
    pub fn finite(a: Complex64, b: Complex64) -> Self {
        SpherePoint::Finite { a, b }
    }

    pub fn origin() -> Self {
        SpherePoint::finite(Complex64::zero(), Complex64::zero())
    }

    /// Squared modulus `|a|^2 + |b|^2` (infinite at `∞`).
    pub fn norm_sqr(&self) -> f64 {
        match self {
            SpherePoint::Finite { a, b } => a.norm_sqr() + b.norm_sqr(),
            SpherePoint::Infinity => f64::INFINITY,
        }
    }
}

/// The inversion `(a,b) -> (a,b)/(|a|^2+|b|^2)`, fixing `S^3` pointwise and
/// exchanging `0` with `∞`.
pub fn sigma(x: SpherePoint) -> SpherePoint {
    match x {
        SpherePoint::Infinity => SpherePoint::origin(),
        SpherePoint::Finite { a, b } => {
            let n = a.norm_sqr() + b.norm_sqr();
            if n == 0.0 {
                SpherePoint::Infinity
            } else {
                SpherePoint::finite(a / n, b / n)
            }
        }
    }
}

/// Position of a finite point relative to the curve `Σ : a^3 = 27 b^2` and
/// the knot `Σ ∩ S^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvePosition {
    OnKnot,
    OnSigma,
    Off,
}

pub fn curve_membership(x: SpherePoint, tol: f64) -> CurvePosition {
    let SpherePoint::Finite { a, b } = x else {
        return CurvePosition::Off;
    };
    let scale = a.norm().powi(3).max(27.0 * b.norm_sqr()).max(1.0);
    if (a.powu(3) - 27.0 * b.powu(2)).norm() > tol * scale {
        return CurvePosition::Off;
    }
    if ((a.norm_sqr() + b.norm_sqr()) - 1.0).abs() <= tol {
        CurvePosition::OnKnot
    } else {
        CurvePosition::OnSigma
    }
}

/// Solve `A s^-4 + B s^-6 = T` for `s > 0` (strictly decreasing left side).
fn solve_radial(a2: f64, b2: f64, target: f64) -> f64 {
    debug_assert!(a2 + b2 > 0.0 && target > 0.0);
    let mut lo = 1e-12;
    let mut hi = 1e12;
    let val = |s: f64| a2 * s.powi(-4) + b2 * s.powi(-6);
    // expand the bracket defensively
    while val(lo) < target {
        lo *= 0.5;
    }
    while val(hi) > target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if val(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-16 * hi {
            break;
        }
    }
    (lo * hi).sqrt()
}

/// Weighted radial action `(s^-2 a, s^-3 b)`.
fn radial_action(a: Complex64, b: Complex64, s: f64) -> (Complex64, Complex64) {
    (a / s.powi(2), b / s.powi(3))
}

/// Project a nonzero point onto `S^3` along its weighted-radial ray; returns
/// the sphere representative and the ray parameter `s` with
/// `(s^-2 a, s^-3 b)` on the sphere.
fn normalize_to_sphere(a: Complex64, b: Complex64) -> (Complex64, Complex64, f64) {
    let s = solve_radial(a.norm_sqr(), b.norm_sqr(), 1.0);
    let (a1, b1) = radial_action(a, b, s);
    (a1, b1, s)
}

const SPHERE_TOL: f64 = 1e-9;

/// The forward homeomorphism from `C^2 ∪ {∞}` onto the closed subgroups of
/// the plane.
pub fn forward_f(x: SpherePoint, tol: f64) -> Result<ClosedSubgroupC, InvariantError> {
    let SpherePoint::Finite { a, b } = x else {
        return Ok(ClosedSubgroupC::Full);
    };
    let r2 = a.norm_sqr() + b.norm_sqr();
    if r2 == 0.0 {
        return Ok(ClosedSubgroupC::Zero);
    }
    if r2 > 1.0 + SPHERE_TOL {
        // exterior: dual extension through the inversion
        let inner = forward_f(sigma(x), tol)?;
        return Ok(inner.dual());
    }
    let (a1, b1, _s) = normalize_to_sphere(a, b);
    let sphere_rep = SpherePoint::finite(a1, b1);
    let on_knot = curve_membership(sphere_rep, tol.max(1e-9)) != CurvePosition::Off;
    if (r2 - 1.0).abs() <= SPHERE_TOL {
        if on_knot {
            // knot points map to the line spanned by the cyclic generator
            let omega = cyclic_generator(a1, b1)?;
            return Ok(ClosedSubgroupC::line_through(omega)
                .expect("nonzero generator spans a line"));
        }
        let gamma = invert_g(a1, b1, tol)?;
        let covol = gamma.covolume();
        return Ok(gamma.scale(1.0 / covol.sqrt()));
    }
    // interior
    let r2 = r2.min(1.0);
    if on_knot {
        let h = r2 / (1.0 - r2);
        let omega = cyclic_generator(a1, b1)?;
        ClosedSubgroupC::cyclic(omega / h.sqrt())
            .map_err(|_| InvariantError::NoConvergence { residual: h })
    } else {
        let gamma = invert_g(a1, b1, tol)?;
        let h = r2 * gamma.covolume();
        Ok(gamma.scale(1.0 / h.sqrt()))
    }
}

/// Generator of the cyclic subgroup with invariants on the curve:
/// `omega^2 = (2 pi^2 / 9)(a/b)`.
fn cyclic_generator(a: Complex64, b: Complex64) -> Result<Complex64, InvariantError> {
    if b.norm() < 1e-300 {
        return Err(InvariantError::NoConvergence { residual: a.norm() });
    }
    let w2 = (2.0 * std::f64::consts::PI.powi(2) / 9.0) * (a / b);
    Ok(w2.sqrt())
}

/// The inverse homeomorphism.
pub fn inverse_f(c: &ClosedSubgroupC, tol: f64) -> Result<SpherePoint, InvariantError> {
    match c {
        ClosedSubgroupC::Zero => Ok(SpherePoint::origin()),
        ClosedSubgroupC::Full => Ok(SpherePoint::Infinity),
        ClosedSubgroupC::Line { .. } => {
            let u = c.direction().expect("line has a direction");
            let (alpha, beta) =
                extended_g_prime(&ClosedSubgroupC::cyclic(u).expect("unit direction"))?;
            let (a1, b1, _) = normalize_to_sphere(alpha, beta);
            Ok(SpherePoint::finite(a1, b1))
        }
        ClosedSubgroupC::Cyclic { generator } => {
            let (alpha, beta) =
                extended_g_prime(&ClosedSubgroupC::cyclic(*generator).expect("nonzero"))?;
            let (a1, b1, s_star) = normalize_to_sphere(alpha, beta);
            // interior knot ray: h = s*, r^2 = h/(1+h)
            let r2 = s_star / (1.0 + s_star);
            let t = solve_radial(a1.norm_sqr(), b1.norm_sqr(), r2);
            let (a, b) = radial_action(a1, b1, t);
            let _ = tol;
            Ok(SpherePoint::finite(a, b))
        }
        ClosedSubgroupC::Lattice { .. } => {
            let covol = c.covolume();
            if covol < 1.0 - SPHERE_TOL {
                // small covolume lives outside the closed ball: go through the dual
                let x = inverse_f(&c.dual(), tol)?;
                return Ok(sigma(x));
            }
            let unimodular = c.scale(1.0 / covol.sqrt());
            let (alpha, beta) = extended_g_prime(&unimodular)?;
            let (a1, b1, _) = normalize_to_sphere(alpha, beta);
            if (covol - 1.0).abs() <= SPHERE_TOL {
                return Ok(SpherePoint::finite(a1, b1));
            }
            let r2 = 1.0 / covol;
            let t = solve_radial(a1.norm_sqr(), b1.norm_sqr(), r2);
            let (a, b) = radial_action(a1, b1, t);
            Ok(SpherePoint::finite(a, b))
        }
        ClosedSubgroupC::LineCyclic { .. } => {
            let x = inverse_f(&c.dual(), tol)?;
            Ok(sigma(x))
        }
    }
}

/// Point of the trefoil `Σ ∩ S^3` at curve parameter `theta`:
/// `(3u e^{2iθ}, u^{3/2} e^{3iθ})` with `u` the positive root of
/// `u^3 + 9u^2 = 1`.
pub fn trefoil_point(theta: f64) -> (Complex64, Complex64) {
    // Newton for u^3 + 9u^2 - 1 = 0 from a cached-quality seed.
    let mut u = 0.3285;
    for _ in 0..40 {
        let f = u * u * u + 9.0 * u * u - 1.0;
        let df = 3.0 * u * u + 18.0 * u;
        u -= f / df;
    }
    let a = Complex64::from_polar(3.0 * u, 2.0 * theta);
    let b = Complex64::from_polar(u.powf(1.5), 3.0 * theta);
    (a, b)
}
