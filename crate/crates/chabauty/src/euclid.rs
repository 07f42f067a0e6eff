//! Canonical representations of closed subgroups of R and of C (six strata:
//! trivial, cyclic, line, line plus transverse cyclic, lattice, full), with
//! basis reduction, covolume, minimal norm, the dual involution, distance
//! queries, point enumeration, and exact classification of the closure of a
//! finitely generated subgroup.

use crate::error::SubgroupError;
use crate::exact::{clear_denominators, integer_kernel, row_space_basis, ExactComplex, Rat, Surd};
use crate::support::{Piece, Support};
use num::complex::Complex64;
use num::{BigInt, Zero};

/// Default absolute tolerance for canonical-form equality in float mode.
pub const CANONICAL_TOL: f64 = 1e-9;

/// `Im(conj(u) * v)`: the oriented area form, positive when `(u, v)` is a
/// positively oriented pair. Also the pairing defining the dual subgroup.
pub fn cross(u: Complex64, v: Complex64) -> f64 {
    (u.conj() * v).im
}

fn dot(u: Complex64, v: Complex64) -> f64 {
    (u.conj() * v).re
}

// ---------------------------------------------------------------------------
// Closed subgroups of R
// ---------------------------------------------------------------------------

/// Closed subgroup of the real line: `{0}`, a cyclic group with a positive
/// step, or all of `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedSubgroupR {
    Trivial,
    Cyclic { step: f64 },
    Full,
}

impl ClosedSubgroupR {
    pub fn cyclic(step: f64) -> Result<Self, SubgroupError> {
        if !(step > 0.0) {
            return Err(SubgroupError::Degenerate(format!(
                "cyclic step must be positive, got {step}"
            )));
        }
        Ok(ClosedSubgroupR::Cyclic { step })
    }

    /// Parameter in `[0, ∞]`: `0` for the trivial group, `λ` for `(1/λ)Z`
    /// (i.e. `1/step`), `∞` for `R`.
    pub fn parameter(&self) -> f64 {
        match self {
            ClosedSubgroupR::Trivial => 0.0,
            ClosedSubgroupR::Cyclic { step } => 1.0 / step,
            ClosedSubgroupR::Full => f64::INFINITY,
        }
    }

    pub fn from_parameter(p: f64) -> Result<Self, SubgroupError> {
        if p.is_nan() || p < 0.0 {
            return Err(SubgroupError::Degenerate(format!("bad parameter {p}")));
        }
        Ok(if p == 0.0 {
            ClosedSubgroupR::Trivial
        } else if p.is_infinite() {
            ClosedSubgroupR::Full
        } else {
            ClosedSubgroupR::Cyclic { step: 1.0 / p }
        })
    }

    pub fn dist_point(&self, x: f64) -> f64 {
        match self {
            ClosedSubgroupR::Trivial => x.abs(),
            ClosedSubgroupR::Cyclic { step } => {
                let n = (x / step).round();
                (x - n * step).abs()
            }
            ClosedSubgroupR::Full => 0.0,
        }
    }

    pub fn enumerate(&self, radius: f64, cap: usize) -> Result<Support<f64>, SubgroupError> {
        let mut s = Support::new();
        match self {
            ClosedSubgroupR::Trivial => s.push(Piece::Point(0.0)),
            ClosedSubgroupR::Cyclic { step } => {
                let n = (radius / step * (1.0 + 1e-12)).floor() as i64;
                if (2 * n + 1) as usize > cap {
                    return Err(SubgroupError::EnumerationCap(cap));
                }
                for k in -n..=n {
                    s.push(Piece::Point(k as f64 * step));
                }
            }
            ClosedSubgroupR::Full => s.push(Piece::Segment { a: -radius, b: radius }),
        }
        Ok(s)
    }

    pub fn canonical_eq(&self, other: &Self, tol: f64) -> bool {
        match (self, other) {
            (ClosedSubgroupR::Trivial, ClosedSubgroupR::Trivial) => true,
            (ClosedSubgroupR::Full, ClosedSubgroupR::Full) => true,
            (ClosedSubgroupR::Cyclic { step: a }, ClosedSubgroupR::Cyclic { step: b }) => {
                (a - b).abs() <= tol * (1.0 + a.abs())
            }
            _ => false,
        }
    }
}

// ---------------------------------------------------------------------------
// Closed subgroups of C
// ---------------------------------------------------------------------------

/// Closed subgroup of the complex plane in canonical form.
///
/// Canonical data per stratum:
/// - `Cyclic`: generator with argument in `[0, π)`;
/// - `Line`: angle in `[0, π)`;
/// - `LineCyclic`: line angle in `[0, π)` plus the transverse spacing `h > 0`
///   (the transverse generator is `h·i·e^{iθ}`);
/// - `Lattice`: Lagrange–Gauss reduced positively oriented basis with
///   deterministic tie-breaks.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedSubgroupC {
    Zero,
    Cyclic { generator: Complex64 },
    Line { angle: f64 },
    LineCyclic { angle: f64, spacing: f64 },
    Lattice { basis: [Complex64; 2] },
    Full,
}

use ClosedSubgroupC as C;

fn norm_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(std::f64::consts::PI);
    if t >= std::f64::consts::PI - 1e-15 {
        t = 0.0;
    }
    t
}

/// Flip a vector to the canonical half-plane (argument in `[0, π)`).
fn canonical_sign(v: Complex64) -> Complex64 {
    if v.im < 0.0 || (v.im == 0.0 && v.re < 0.0) {
        -v
    } else {
        v
    }
}

impl ClosedSubgroupC {
    pub fn cyclic(generator: Complex64) -> Result<Self, SubgroupError> {
        if generator.norm() == 0.0 {
            return Err(SubgroupError::Degenerate("cyclic generator is zero".into()));
        }
        Ok(C::Cyclic { generator: canonical_sign(generator) })
    }

    pub fn line_through(direction: Complex64) -> Result<Self, SubgroupError> {
        if direction.norm() == 0.0 {
            return Err(SubgroupError::Degenerate("line direction is zero".into()));
        }
        Ok(C::Line { angle: norm_angle(direction.arg()) })
    }

    /// Line `R·u` plus the cyclic group generated by `v` transversally;
    /// `v` is reduced modulo the line.
    pub fn line_cyclic(direction: Complex64, transverse: Complex64) -> Result<Self, SubgroupError> {
        if direction.norm() == 0.0 {
            return Err(SubgroupError::Degenerate("line direction is zero".into()));
        }
        let angle = norm_angle(direction.arg());
        let u = Complex64::from_polar(1.0, angle);
        let spacing = cross(u, transverse).abs();
        if spacing <= 1e-14 * (1.0 + transverse.norm()) {
            return Err(SubgroupError::Degenerate(
                "transverse generator is parallel to the line".into(),
            ));
        }
        Ok(C::LineCyclic { angle, spacing })
    }

    pub fn lattice(z: Complex64, zp: Complex64) -> Result<Self, SubgroupError> {
        let (a, b) = reduce_basis(z, zp)?;
        let (a, b) = canonicalize_reduced(a, b);
        Ok(C::Lattice { basis: [a, b] })
    }

    pub fn stratum_name(&self) -> &'static str {
        match self {
            C::Zero => "zero",
            C::Cyclic { .. } => "cyclic",
            C::Line { .. } => "line",
            C::LineCyclic { .. } => "line-cyclic",
            C::Lattice { .. } => "lattice",
            C::Full => "full",
        }
    }

    pub fn direction(&self) -> Option<Complex64> {
        match self {
            C::Line { angle } | C::LineCyclic { angle, .. } => {
                Some(Complex64::from_polar(1.0, *angle))
            }
            _ => None,
        }
    }

    /// Transverse generator of a `LineCyclic` subgroup (`h·i·e^{iθ}`).
    pub fn transverse(&self) -> Option<Complex64> {
        match self {
            C::LineCyclic { angle, spacing } => {
                Some(Complex64::i() * Complex64::from_polar(*spacing, *angle))
            }
            _ => None,
        }
    }

    /// Covolume in `[0, ∞]`: the coarea of the quotient. Finite positive only
    /// on lattices; infinite on the discrete small strata, zero on strata
    /// with a continuous direction.
    pub fn covolume(&self) -> f64 {
        match self {
            C::Zero | C::Cyclic { .. } => f64::INFINITY,
            C::Line { .. } | C::LineCyclic { .. } | C::Full => 0.0,
            C::Lattice { basis } => cross(basis[0], basis[1]),
        }
    }

    /// Squared length of a shortest nonzero element; defined on the discrete
    /// nontrivial strata only.
    pub fn min_norm(&self) -> Result<f64, SubgroupError> {
        match self {
            C::Cyclic { generator } => Ok(generator.norm_sqr()),
            C::Lattice { basis } => Ok(basis[0].norm_sqr()),
            other => Err(SubgroupError::WrongStratum(other.stratum_name())),
        }
    }

    /// The dual subgroup `{z : Im(conj(z) c) ∈ Z for all c ∈ C}` — an
    /// involution exchanging strata pairwise.
    pub fn dual(&self) -> ClosedSubgroupC {
        match self {
            C::Zero => C::Full,
            C::Full => C::Zero,
            C::Line { angle } => C::Line { angle: *angle },
            C::Lattice { basis } => {
                let v = cross(basis[0], basis[1]);
                ClosedSubgroupC::lattice(basis[0] / v, basis[1] / v)
                    .expect("dual of a lattice is a lattice")
            }
            C::Cyclic { generator } => {
                let g = *generator;
                C::LineCyclic { angle: norm_angle(g.arg()), spacing: 1.0 / g.norm() }
            }
            C::LineCyclic { angle, spacing } => {
                let u = Complex64::from_polar(1.0, *angle);
                ClosedSubgroupC::cyclic(u / *spacing).expect("nonzero generator")
            }
        }
    }

    /// Euclidean distance from `x` to the subgroup.
    pub fn dist_point(&self, x: Complex64) -> f64 {
        match self {
            C::Zero => x.norm(),
            C::Full => 0.0,
            C::Cyclic { generator } => {
                let g = *generator;
                let n = (dot(g, x) / g.norm_sqr()).round();
                let mut best = f64::INFINITY;
                for k in -1..=1 {
                    best = best.min((x - g * (n + k as f64)).norm());
                }
                best
            }
            C::Line { angle } => cross(Complex64::from_polar(1.0, *angle), x).abs(),
            C::LineCyclic { angle, spacing } => {
                let b = cross(Complex64::from_polar(1.0, *angle), x);
                (b - spacing * (b / spacing).round()).abs()
            }
            C::Lattice { basis } => {
                let [z, zp] = *basis;
                let v = cross(z, zp);
                let alpha = cross(x, zp) / v;
                let beta = cross(z, x) / v;
                let (a0, b0) = (alpha.round(), beta.round());
                let mut best = f64::INFINITY;
                for da in -1..=1 {
                    for db in -1..=1 {
                        let p = z * (a0 + da as f64) + zp * (b0 + db as f64);
                        best = best.min((x - p).norm());
                    }
                }
                best
            }
        }
    }

    /// Membership at tolerance.
    pub fn contains(&self, x: Complex64, tol: f64) -> bool {
        self.dist_point(x) <= tol
    }

    /// Geometric support inside (a superset of) the ball of the given radius.
    pub fn enumerate(&self, radius: f64, cap: usize) -> Result<Support<Complex64>, SubgroupError> {
        let mut s = Support::new();
        let margin = 1.0 + 1e-12;
        match self {
            C::Zero => s.push(Piece::Point(Complex64::zero())),
            C::Full => s.push(Piece::Patch {
                center: Complex64::zero(),
                axis1: Complex64::new(1.0, 0.0),
                axis2: Complex64::new(0.0, 1.0),
                half1: radius,
                half2: radius,
            }),
            C::Cyclic { generator } => {
                let n = (radius / generator.norm() * margin).floor() as i64;
                if (2 * n + 1).max(0) as usize > cap {
                    return Err(SubgroupError::EnumerationCap(cap));
                }
                for k in -n..=n {
                    s.push(Piece::Point(generator * k as f64));
                }
            }
            C::Line { angle } => {
                let u = Complex64::from_polar(1.0, *angle);
                s.push(Piece::Segment { a: -u * radius, b: u * radius });
            }
            C::LineCyclic { angle, spacing } => {
                let u = Complex64::from_polar(1.0, *angle);
                let iu = Complex64::i() * u;
                let m = (radius / spacing * margin).floor() as i64;
                if (2 * m + 1).max(0) as usize > cap {
                    return Err(SubgroupError::EnumerationCap(cap));
                }
                for k in -m..=m {
                    let c = iu * (k as f64 * spacing);
                    let half = (radius * radius - c.norm_sqr()).max(0.0).sqrt();
                    if half > 0.0 {
                        s.push(Piece::Segment { a: c - u * half, b: c + u * half });
                    } else {
                        s.push(Piece::Point(c));
                    }
                }
            }
            C::Lattice { basis } => {
                let [z, zp] = *basis;
                let v = cross(z, zp);
                let est = std::f64::consts::PI * radius * radius / v + 4.0 * radius / z.norm() + 9.0;
                if est > cap as f64 {
                    return Err(SubgroupError::EnumerationCap(cap));
                }
                let amax = (radius * zp.norm() / v * margin).floor() as i64;
                let mut count = 0usize;
                for a in -amax..=amax {
                    // |a z + b z'|^2 <= R^2 as a quadratic in b
                    let qa = zp.norm_sqr();
                    let qb = 2.0 * (a as f64) * dot(z, zp);
                    let qc = (a * a) as f64 * z.norm_sqr() - radius * radius;
                    let disc = qb * qb - 4.0 * qa * qc;
                    if disc < 0.0 {
                        continue;
                    }
                    let sq = disc.sqrt();
                    let blo = ((-qb - sq) / (2.0 * qa) - 1e-12).ceil() as i64;
                    let bhi = ((-qb + sq) / (2.0 * qa) + 1e-12).floor() as i64;
                    for b in blo..=bhi {
                        count += 1;
                        if count > cap {
                            return Err(SubgroupError::EnumerationCap(cap));
                        }
                        s.push(Piece::Point(z * a as f64 + zp * b as f64));
                    }
                }
            }
        }
        Ok(s)
    }

    /// Scale the subgroup by a positive real factor.
    pub fn scale(&self, f: f64) -> ClosedSubgroupC {
        assert!(f > 0.0, "scale factor must be positive");
        match self {
            C::Zero => C::Zero,
            C::Full => C::Full,
            C::Line { angle } => C::Line { angle: *angle },
            C::Cyclic { generator } => C::Cyclic { generator: generator * f },
            C::LineCyclic { angle, spacing } => {
                C::LineCyclic { angle: *angle, spacing: spacing * f }
            }
            C::Lattice { basis } => C::Lattice { basis: [basis[0] * f, basis[1] * f] },
        }
    }

    /// Canonical equality at the given absolute tolerance.
    pub fn canonical_eq(&self, other: &ClosedSubgroupC, tol: f64) -> bool {
        let angle_eq = |a: f64, b: f64| {
            let d = (a - b).abs();
            d <= tol || (std::f64::consts::PI - d) <= tol
        };
        let vec_eq = |a: Complex64, b: Complex64| {
            let s = 1.0 + a.norm();
            (a - b).norm() <= tol * s || (a + b).norm() <= tol * s
        };
        match (self, other) {
            (C::Zero, C::Zero) | (C::Full, C::Full) => true,
            (C::Cyclic { generator: a }, C::Cyclic { generator: b }) => vec_eq(*a, *b),
            (C::Line { angle: a }, C::Line { angle: b }) => angle_eq(*a, *b),
            (
                C::LineCyclic { angle: a, spacing: ha },
                C::LineCyclic { angle: b, spacing: hb },
            ) => angle_eq(*a, *b) && (ha - hb).abs() <= tol * (1.0 + ha.abs()),
            (C::Lattice { basis: x }, C::Lattice { basis: y }) => {
                let direct = (x[0] - y[0]).norm() <= tol * (1.0 + x[0].norm())
                    && (x[1] - y[1]).norm() <= tol * (1.0 + x[1].norm());
                let flipped = (x[0] + y[0]).norm() <= tol * (1.0 + x[0].norm())
                    && (x[1] + y[1]).norm() <= tol * (1.0 + x[1].norm());
                direct || flipped
            }
            _ => false,
        }
    }
}

// ---------------------------------------------------------------------------
// Basis reduction
// ---------------------------------------------------------------------------

/// Lagrange–Gauss reduction. Returns a positively oriented basis of the same
/// lattice with `|z| <= |z'|` and `|Re(conj(z) z')| <= |z|²/2`; idempotent up
/// to the canonical tie-breaks applied by [`ClosedSubgroupC::lattice`].
pub fn reduce_basis(
    mut z: Complex64,
    mut zp: Complex64,
) -> Result<(Complex64, Complex64), SubgroupError> {
    let scale = z.norm() + zp.norm();
    if !(scale.is_finite()) || cross(z, zp).abs() <= 1e-14 * scale * scale {
        return Err(SubgroupError::Degenerate(
            "collinear or degenerate lattice basis".into(),
        ));
    }
    for _ in 0..256 {
        if z.norm_sqr() > zp.norm_sqr() {
            std::mem::swap(&mut z, &mut zp);
        }
        let ratio = dot(z, zp) / z.norm_sqr();
        // Half-integer ratios stay put (tie-break applied later) so the loop
        // cannot oscillate between the two boundary representatives.
        let mu = if ratio.abs() <= 0.5 + 1e-12 { 0.0 } else { ratio.round() };
        if mu == 0.0 {
            break;
        }
        zp -= z * mu;
    }
    if cross(z, zp) < 0.0 {
        zp = -zp;
    }
    Ok((z, zp))
}

/// Deterministic canonical representative among the finitely many reduced
/// positively oriented bases of the lattice.
fn canonicalize_reduced(z: Complex64, zp: Complex64) -> (Complex64, Complex64) {
    let covol = cross(z, zp);
    let rtol = 1e-9;
    let mut combos: Vec<Complex64> = Vec::with_capacity(8);
    for a in -1..=1i32 {
        for b in -1..=1i32 {
            if a == 0 && b == 0 {
                continue;
            }
            combos.push(z * a as f64 + zp * b as f64);
        }
    }
    let min_len = combos.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
    let mut best: Option<((f64, f64), (Complex64, Complex64))> = None;
    for &v in &combos {
        if v.norm() > min_len * (1.0 + rtol) {
            continue;
        }
        let v = canonical_sign(v);
        for &w in &combos {
            if (cross(v, w) - covol).abs() > rtol * covol {
                continue;
            }
            if w.norm() < v.norm() * (1.0 - rtol) {
                continue;
            }
            if dot(v, w).abs() > 0.5 * v.norm_sqr() * (1.0 + rtol) {
                continue;
            }
            let key = (norm_angle(v.arg()), -dot(v, w));
            if best.as_ref().map_or(true, |(k, _)| key < *k) {
                best = Some((key, (v, w)));
            }
        }
    }
    best.map(|(_, pair)| pair).unwrap_or((z, zp))
}

// ---------------------------------------------------------------------------
// Closure of a finitely generated subgroup (exact classification)
// ---------------------------------------------------------------------------

/// Canonical closed subgroup equal to the topological closure of the subgroup
/// generated by exact vectors. Coordinates must be rationals, possibly with
/// surd parts sharing a single radicand; floating inputs are not accepted
/// because the closure type is discontinuous in the generators.
pub fn closure_of_generated(gens: &[ExactComplex]) -> Result<ClosedSubgroupC, SubgroupError> {
    // Shared radicand across every component.
    let mut rad = 0u32;
    for g in gens {
        let d = g.radicand()?;
        if d != 0 {
            if rad != 0 && rad != d {
                return Err(SubgroupError::MixedRadicands(rad, d));
            }
            rad = d;
        }
    }
    let d = rad;

    // Rows in Q^4: (re.a, re.b, im.a, im.b) over the basis {1, sqrt(d)}.
    let rows: Vec<Vec<Rat>> = gens
        .iter()
        .map(|g| {
            vec![
                g.re.rational_part().clone(),
                g.re.surd_coeff().clone(),
                g.im.rational_part().clone(),
                g.im.surd_coeff().clone(),
            ]
        })
        .collect();
    let (scaled, den) = scaled_rows(&rows);
    let basis = row_space_basis(scaled);
    let den_rat = Rat::from(den);
    let to_exact = |row: &Vec<BigInt>| -> ExactComplex {
        let q = |i: usize| Rat::from(row[i].clone()) / den_rat.clone();
        ExactComplex::new(Surd::new(q(0), q(1), d), Surd::new(q(2), q(3), d))
    };
    let w: Vec<ExactComplex> = basis.iter().map(to_exact).collect();
    let m = w.len();
    if m == 0 {
        return Ok(C::Zero);
    }

    // Real collinearity of the whole family (exact cross products).
    let mut pivot_pair = None;
    'outer: for i in 0..m {
        for j in (i + 1)..m {
            if !w[i].cross(&w[j]).is_zero() {
                pivot_pair = Some((i, j));
                break 'outer;
            }
        }
    }

    let Some((i0, j0)) = pivot_pair else {
        return collinear_closure(&w, d);
    };

    // Non-collinear: compute the dual D = {v : cross(v, w_i) in Z for all i}
    // and return its dual. D is discrete because the w_i span the plane; its
    // generators come from the integer solutions of the compatibility system.
    let nu_a = solve_pairing(&w[i0], &w[j0], &Surd::from_int(1), &Surd::from_int(0));
    let nu_b = solve_pairing(&w[i0], &w[j0], &Surd::from_int(0), &Surd::from_int(1));

    // Conditions n_i = lambda_i n_{i0} + mu_i n_{j0} for the remaining rows,
    // split into rational and surd components.
    let mut constraint_rows: Vec<Vec<Rat>> = Vec::new();
    for (i, wi) in w.iter().enumerate() {
        if i == i0 || i == j0 {
            continue;
        }
        let lam = nu_a.cross(wi);
        let mu = nu_b.cross(wi);
        let mut row_rat = vec![Rat::zero(); m];
        let mut row_surd = vec![Rat::zero(); m];
        row_rat[i] = Rat::from(BigInt::from(1));
        row_rat[i0] = -lam.rational_part().clone();
        row_rat[j0] = -mu.rational_part().clone();
        row_surd[i0] = -lam.surd_coeff().clone();
        row_surd[j0] = -mu.surd_coeff().clone();
        constraint_rows.push(row_rat);
        constraint_rows.push(row_surd);
    }
    let (int_rows, _) = scaled_rows(&constraint_rows);
    let kernel = integer_kernel(&int_rows, m);

    let solve_nu = |n: &Vec<BigInt>| -> ExactComplex {
        solve_pairing(
            &w[i0],
            &w[j0],
            &Surd::from_rat(Rat::from(n[i0].clone())),
            &Surd::from_rat(Rat::from(n[j0].clone())),
        )
    };
    let dual_group = match kernel.len() {
        0 => C::Zero,
        1 => ClosedSubgroupC::cyclic(solve_nu(&kernel[0]).to_c64())?,
        2 => {
            let v1 = solve_nu(&kernel[0]).to_c64();
            let v2 = solve_nu(&kernel[1]).to_c64();
            ClosedSubgroupC::lattice(v1, v2)?
        }
        n => {
            return Err(SubgroupError::Degenerate(format!(
                "dual rank {n} exceeds the plane dimension"
            )))
        }
    };
    Ok(dual_group.dual())
}

/// Scale rational rows to integers, returning the common denominator used.
fn scaled_rows(rows: &[Vec<Rat>]) -> (Vec<Vec<BigInt>>, BigInt) {
    clear_denominators(rows)
}

/// Solve `cross(nu, w_i0) = n0`, `cross(nu, w_j0) = n1` for `nu` over the surd
/// field (Cramer on a 2x2 system).
fn solve_pairing(wi: &ExactComplex, wj: &ExactComplex, n0: &Surd, n1: &Surd) -> ExactComplex {
    // cross(v, w) = v.re * w.im - v.im * w.re, linear in v:
    //   [ wi.im  -wi.re ] [v.re]   [n0]
    //   [ wj.im  -wj.re ] [v.im] = [n1]
    // with determinant cross(wi, wj).
    let det = wi.re.clone() * wj.im.clone() - wi.im.clone() * wj.re.clone();
    debug_assert!(det.signum() != 0);
    let inv = det.recip().expect("non-collinear pivot pair");
    let re = (-(wj.re.clone()) * n0.clone() + wi.re.clone() * n1.clone()) * inv.clone();
    let im = (-(wj.im.clone()) * n0.clone() + wi.im.clone() * n1.clone()) * inv;
    ExactComplex::new(re, im)
}

/// Closure of a collinear exact family: cyclic along the common line when the
/// ratios stay rational, dense (the full line) otherwise.
fn collinear_closure(w: &[ExactComplex], d: u32) -> Result<ClosedSubgroupC, SubgroupError> {
    let dir = w[0].clone();
    let ratios: Vec<Surd> = w
        .iter()
        .map(|wi| {
            if !dir.re.is_zero() {
                let t = wi.re.clone() / dir.re.clone();
                debug_assert!((wi.im.clone() - t.clone() * dir.im.clone()).is_zero());
                t
            } else {
                wi.im.clone() / dir.im.clone()
            }
        })
        .collect();
    let rows: Vec<Vec<Rat>> = ratios
        .iter()
        .map(|t| vec![t.rational_part().clone(), t.surd_coeff().clone()])
        .collect();
    let (scaled, den) = scaled_rows(&rows);
    let basis = row_space_basis(scaled);
    match basis.len() {
        1 => {
            let den = Rat::from(den);
            let t = Surd::new(
                Rat::from(basis[0][0].clone()) / den.clone(),
                Rat::from(basis[0][1].clone()) / den,
                d,
            );
            let g = dir.to_c64() * t.to_f64();
            ClosedSubgroupC::cyclic(g)
        }
        2 => ClosedSubgroupC::line_through(dir.to_c64()),
        n => Err(SubgroupError::Degenerate(format!(
            "collinear rank {n} impossible over a quadratic field"
        ))),
    }
}
