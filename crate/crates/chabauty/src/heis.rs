//! Closed subgroups of the Heisenberg group `H = C x R`: lattices carried by
//! generator data over a reduced projected basis, the abelian taxonomy
//! (central, planar inside a maximal abelian plane, pullbacks of planar
//! subgroups through the central projection), membership, commutator and
//! center invariants, the automorphism action, catalogued example families,
//! enumeration, and the metric-engine plugin for `H`.
//!
//! A lattice is stored as a positively oriented reduced basis `(z, z')` of its
//! projection `L = p(Λ)`, lifts `t, t'` in the canonical window
//! `[0, covol(L)/n)`, and the central index `n = [Z(Λ) : [Λ,Λ]]`. Its
//! elements are exactly
//! `(a z + b z', t0(a,b) + c·covol/n)` with
//! `t0(a,b) = a t + b t' - ab·covol/2`.

use crate::ambient::{HeisAutomorphism, HeisElement};
use crate::error::{MetricError, SubgroupError};
use crate::euclid::{cross, ClosedSubgroupC, ClosedSubgroupR};
use crate::metric::{AmbientSpace, MetricConfig};
use crate::support::{Piece, Support};
use num::complex::Complex64;
use num::Zero;

/// Lattice in `H` in canonical form.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisLattice {
    z: Complex64,
    zp: Complex64,
    t: f64,
    tp: f64,
    n: u32,
}

impl HeisLattice {
    /// Canonicalize arbitrary generator data: a basis `(z, z')` of the
    /// projected lattice with lifts `(t, t')` and the central index `n`.
    pub fn new(
        z: Complex64,
        zp: Complex64,
        t: f64,
        tp: f64,
        n: u32,
    ) -> Result<Self, SubgroupError> {
        if n == 0 {
            return Err(SubgroupError::Degenerate("central index must be >= 1".into()));
        }
        let canonical = ClosedSubgroupC::lattice(z, zp)?;
        let ClosedSubgroupC::Lattice { basis: [c1, c2] } = canonical else { unreachable!() };
        let cross_in = cross(z, zp);
        let covol = cross_in.abs();
        let step = covol / n as f64;
        // integer coordinates of the canonical basis in the input basis
        let coords = |v: Complex64| -> Result<(f64, f64), SubgroupError> {
            let a = cross(v, zp) / cross_in;
            let b = cross(z, v) / cross_in;
            if (a - a.round()).abs() > 1e-6 || (b - b.round()).abs() > 1e-6 {
                return Err(SubgroupError::Degenerate(
                    "basis change is not integral".into(),
                ));
            }
            Ok((a.round(), b.round()))
        };
        let lift = |a: f64, b: f64| -> f64 {
            let raw = a * t + b * tp - 0.5 * a * b * cross_in;
            raw.rem_euclid(step)
        };
        let (a1, b1) = coords(c1)?;
        let (a2, b2) = coords(c2)?;
        Ok(HeisLattice { z: c1, zp: c2, t: lift(a1, b1), tp: lift(a2, b2), n })
    }

    pub fn basis(&self) -> (Complex64, Complex64) {
        (self.z, self.zp)
    }

    pub fn lifts(&self) -> (f64, f64) {
        (self.t, self.tp)
    }

    /// Projected lattice `p(Λ)` as a planar subgroup.
    pub fn projection(&self) -> ClosedSubgroupC {
        ClosedSubgroupC::Lattice { basis: [self.z, self.zp] }
    }

    pub fn covolume(&self) -> f64 {
        cross(self.z, self.zp)
    }

    /// Step of the central cyclic subgroup `Z(Λ) = Λ ∩ Z(H)`.
    pub fn central_step(&self) -> f64 {
        self.covolume() / self.n as f64
    }

    /// `n = [Z(Λ) : [Λ,Λ]]`.
    pub fn center_index(&self) -> u32 {
        self.n
    }

    /// Haar volume of `H/Λ` for the Lebesgue measure on `C x R`:
    /// projected covolume times central step.
    pub fn haar_volume(&self) -> f64 {
        self.covolume() * self.central_step()
    }

    /// The commutator subgroup `[Λ, Λ] = {0} x covol(L)·Z`, returned as the
    /// central cyclic subgroup of that step.
    pub fn commutator_subgroup(&self) -> ClosedSubgroupR {
        ClosedSubgroupR::cyclic(self.covolume()).expect("positive covolume")
    }

    /// Lift offset of the fiber over `a z + b z'`.
    fn fiber_base(&self, a: f64, b: f64) -> f64 {
        a * self.t + b * self.tp - 0.5 * a * b * self.covolume()
    }

    pub fn membership(&self, x: HeisElement, tol: f64) -> bool {
        let covol = self.covolume();
        let a = cross(x.z, self.zp) / covol;
        let b = cross(self.z, x.z) / covol;
        let (ar, br) = (a.round(), b.round());
        let w = self.z * ar + self.zp * br;
        if (x.z - w).norm() > tol * (1.0 + x.z.norm()) {
            return false;
        }
        let step = self.central_step();
        let dt = x.t - self.fiber_base(ar, br);
        (dt - step * (dt / step).round()).abs() <= tol * (1.0 + x.t.abs())
    }

    /// All lattice elements with coordinate norm at most `radius`.
    pub fn enumerate(
        &self,
        radius: f64,
        cap: usize,
    ) -> Result<Support<HeisElement>, SubgroupError> {
        let step = self.central_step();
        let covol = self.covolume();
        let estimate = (std::f64::consts::PI * radius * radius / covol + 4.0)
            * (2.0 * radius / step + 2.0);
        if estimate > cap as f64 {
            return Err(SubgroupError::EnumerationCap(cap));
        }
        let mut out = Support::new();
        let mut count = 0usize;
        let margin = 1.0 + 1e-12;
        let amax = (radius * self.zp.norm() / covol * margin).floor() as i64;
        for a in -amax..=amax {
            let qa = self.zp.norm_sqr();
            let qb = 2.0 * (a as f64) * (self.z.conj() * self.zp).re;
            let qc = (a * a) as f64 * self.z.norm_sqr() - radius * radius;
            let disc = qb * qb - 4.0 * qa * qc;
            if disc < 0.0 {
                continue;
            }
            let sq = disc.sqrt();
            let blo = ((-qb - sq) / (2.0 * qa) - 1e-12).ceil() as i64;
            let bhi = ((-qb + sq) / (2.0 * qa) + 1e-12).floor() as i64;
            for b in blo..=bhi {
                let w = self.z * a as f64 + self.zp * b as f64;
                let tmax_sq = radius * radius - w.norm_sqr();
                if tmax_sq < 0.0 {
                    continue;
                }
                let tmax = tmax_sq.sqrt() * margin;
                let base = self.fiber_base(a as f64, b as f64);
                let clo = ((-tmax - base) / step).ceil() as i64;
                let chi = ((tmax - base) / step).floor() as i64;
                for c in clo..=chi {
                    count += 1;
                    if count > cap {
                        return Err(SubgroupError::EnumerationCap(cap));
                    }
                    out.push(Piece::Point(HeisElement::new(w, base + c as f64 * step)));
                }
            }
        }
        Ok(out)
    }

    /// Distance minimization over the lattice. The fiber offsets twist with
    /// the projected coordinates, so the optimum may trade a long horizontal
    /// move for central alignment: after a Babai seed, every projected point
    /// within the current best distance is scanned (the range is bounded, and
    /// shrinks as better candidates are found).
    fn minimize_over_lattice(&self, x: HeisElement, group_translate: bool) -> f64 {
        let covol = self.covolume();
        let step = self.central_step();
        let cost = |a: f64, b: f64| -> f64 {
            let w = self.z * a + self.zp * b;
            let base = self.fiber_base(a, b);
            if group_translate {
                let probe = HeisElement::new(w, base).inverse() * x;
                let dt = probe.t - step * (probe.t / step).round();
                probe.z.norm_sqr() + dt * dt
            } else {
                let dz = (x.z - w).norm_sqr();
                let dt = x.t - base;
                let dt = dt - step * (dt / step).round();
                dz + dt * dt
            }
        };
        let a0 = (cross(x.z, self.zp) / covol).round();
        let b0 = (cross(self.z, x.z) / covol).round();
        let mut best = f64::INFINITY;
        for da in -1..=1 {
            for db in -1..=1 {
                best = best.min(cost(a0 + da as f64, b0 + db as f64));
            }
        }
        // scan all projected points within the current best radius
        let radius = best.sqrt();
        let amid = cross(x.z, self.zp) / covol;
        let bmid = cross(self.z, x.z) / covol;
        let aspan = radius * self.zp.norm() / covol + 1.0;
        let bspan = radius * self.z.norm() / covol + 1.0;
        let (alo, ahi) = ((amid - aspan).floor() as i64, (amid + aspan).ceil() as i64);
        for a in alo..=ahi {
            let (blo, bhi) = ((bmid - bspan).floor() as i64, (bmid + bspan).ceil() as i64);
            for b in blo..=bhi {
                let w = self.z * a as f64 + self.zp * b as f64;
                if (x.z - w).norm_sqr() > best {
                    continue;
                }
                best = best.min(cost(a as f64, b as f64));
            }
        }
        best.sqrt()
    }

    /// Euclidean coordinate distance from `x` to the lattice.
    pub fn dist_point(&self, x: HeisElement) -> f64 {
        self.minimize_over_lattice(x, false)
    }

    /// Group-translate distance `inf_λ ||λ^{-1} x||`.
    pub fn dist_group(&self, x: HeisElement) -> f64 {
        self.minimize_over_lattice(x, true)
    }

    /// Norm of a shortest nonzero element.
    pub fn shortest_norm(&self) -> f64 {
        let step = self.central_step();
        let zlen = self.z.norm();
        let bound = step.min((zlen * zlen + 0.25 * step * step).sqrt()) * (1.0 + 1e-9);
        let pts = self
            .enumerate(bound, 1_000_000)
            .expect("shortest-vector search stays small")
            .points();
        pts.iter()
            .map(|p| p.norm())
            .filter(|&n| n > 1e-12)
            .fold(f64::INFINITY, f64::min)
    }

    /// Image under an automorphism, re-canonicalized. Preserves the central
    /// index; scales covolume and central step by `|det|`.
    pub fn apply_automorphism(&self, aut: &HeisAutomorphism) -> Result<HeisLattice, SubgroupError> {
        let det = aut.det();
        if det.abs() < 1e-300 {
            return Err(SubgroupError::Degenerate("singular automorphism".into()));
        }
        let w1 = aut.apply_plane(self.z);
        let w2 = aut.apply_plane(self.zp);
        let canonical = ClosedSubgroupC::lattice(w1, w2)?;
        let ClosedSubgroupC::Lattice { basis: [c1, c2] } = canonical else { unreachable!() };
        let cross_w = cross(w1, w2);
        let step_new = (det * self.central_step()).abs();
        let lift = |v: Complex64| -> Result<f64, SubgroupError> {
            let a = cross(v, w2) / cross_w;
            let b = cross(w1, v) / cross_w;
            if (a - a.round()).abs() > 1e-6 || (b - b.round()).abs() > 1e-6 {
                return Err(SubgroupError::Degenerate("non-integral basis change".into()));
            }
            let (a, b) = (a.round(), b.round());
            let t0 = self.fiber_base(a, b);
            let raw = det * t0 + (aut.inner * v.conj()).im;
            Ok(raw.rem_euclid(step_new))
        };
        Ok(HeisLattice { z: c1, zp: c2, t: lift(c1)?, tp: lift(c2)?, n: self.n })
    }

    /// The dilation `phi_s` applied to the lattice.
    pub fn dilate(&self, s: f64) -> Result<HeisLattice, SubgroupError> {
        self.apply_automorphism(&HeisAutomorphism::dilation(s)?)
    }

    pub fn canonical_eq(&self, other: &HeisLattice, tol: f64) -> bool {
        if self.n != other.n {
            return false;
        }
        let step = self.central_step();
        let wrap = |d: f64| (d - step * (d / step).round()).abs();
        self.projection().canonical_eq(&other.projection(), tol)
            && wrap(self.t - other.t) <= tol * (1.0 + step)
            && wrap(self.tp - other.tp) <= tol * (1.0 + step)
    }
}

/// The lattice `Λ_n` generated by `(1,0)`, `(i,0)` and `(0, 1/n)`: projected
/// lattice `Z[i]`, central step `1/n`, zero lifts.
pub fn make_lambda_n(n: u32) -> HeisLattice {
    HeisLattice::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), 0.0, 0.0, n)
        .expect("canonical data")
}

/// The family of Example-type lattices generated by `(1,0)`, `(-1/k, 1)` and
/// `(-i k^2 n, 0)`: projection `(1/k)Z ⊕ (k^2 n)iZ`, center `(0, k)Z`,
/// commutators `(0, kn)Z`, hence central index `n` for every `k`. Converges
/// to the planar lattice `Z x Z` as `k` grows.
pub fn example11_lattice(n: u32, k: u32) -> HeisLattice {
    assert!(n >= 1 && k >= 1);
    let kf = k as f64;
    let z = Complex64::new(1.0 / kf, 0.0);
    let zp = Complex64::new(0.0, (k * k * n) as f64);
    // lift over z: elements (a - b/k, b) give b ≡ -1 (mod k) over 1/k
    HeisLattice::new(z, zp, kf - 1.0, 0.0, n).expect("canonical data")
}

/// The planar limit `A = Z x Z ⊂ R x R ⊂ H` of the family above.
pub fn example11_limit() -> HeisSubgroup {
    HeisSubgroup::planar(
        Complex64::new(1.0, 0.0),
        ClosedSubgroupC::lattice(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)).unwrap(),
    )
    .unwrap()
}

/// Witness for the density of lattices near a pullback point: over the same
/// projected lattice, zero lifts and central step below `eps` (index grows as
/// `eps` shrinks).
pub fn lattice_witness_near_pullback(
    projection: &ClosedSubgroupC,
    eps: f64,
) -> Result<HeisLattice, SubgroupError> {
    let ClosedSubgroupC::Lattice { basis: [z, zp] } = projection else {
        return Err(SubgroupError::WrongStratum(projection.stratum_name()));
    };
    let covol = cross(*z, *zp);
    let n = (covol / (2.0 * eps)).ceil() as u32 + 1;
    HeisLattice::new(*z, *zp, 0.0, 0.0, n)
}

// ---------------------------------------------------------------------------
// The full taxonomy of closed subgroups
// ---------------------------------------------------------------------------

/// Closed subgroup of `H` in canonical form. Abelian subgroups not inside the
/// center live in a unique maximal abelian plane `R·u x R` and are carried as
/// a planar subgroup in the coordinates `(s, t) <-> s + it` of that plane;
/// non-abelian subgroups are either pullbacks `p^{-1}(C)` containing the
/// center or lattices.
#[derive(Debug, Clone, PartialEq)]
pub enum HeisSubgroup {
    Trivial,
    /// Nontrivial closed subgroup of the center `{0} x R`.
    Central(ClosedSubgroupR),
    /// Subgroup of the maximal abelian plane in direction `e^{iθ}`, `θ ∈ [0, π)`.
    Planar { angle: f64, plane: ClosedSubgroupC },
    /// `p^{-1}(C)` for `C` a line-plus-cyclic subgroup, a lattice, or the
    /// whole plane (`C` full means the subgroup is all of `H`).
    PullbackCenter(ClosedSubgroupC),
    LatticeN(HeisLattice),
}

/// Stratum label of a closed subgroup of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeisStratum {
    Trivial,
    Line,
    Cyclic,
    MaximalPlane,
    PlanarLineCyclic,
    PlanarLattice,
    PullbackLineCyclic,
    PullbackLattice,
    Full,
    LatticeN(u32),
}

impl HeisStratum {
    pub fn label(&self) -> String {
        match self {
            HeisStratum::Trivial => "trivial".into(),
            HeisStratum::Line => "line".into(),
            HeisStratum::Cyclic => "cyclic".into(),
            HeisStratum::MaximalPlane => "maximal-abelian-plane".into(),
            HeisStratum::PlanarLineCyclic => "planar-line-cyclic".into(),
            HeisStratum::PlanarLattice => "planar-lattice".into(),
            HeisStratum::PullbackLineCyclic => "pullback-line-cyclic".into(),
            HeisStratum::PullbackLattice => "pullback-lattice".into(),
            HeisStratum::Full => "full".into(),
            HeisStratum::LatticeN(n) => format!("lattice-n({n})"),
        }
    }
}

fn reflect_plane(plane: &ClosedSubgroupC) -> ClosedSubgroupC {
    // coordinate flip (s, t) -> (-s, t), i.e. ζ -> -conj(ζ)
    let m = |v: Complex64| Complex64::new(-v.re, v.im);
    match plane {
        ClosedSubgroupC::Zero => ClosedSubgroupC::Zero,
        ClosedSubgroupC::Full => ClosedSubgroupC::Full,
        ClosedSubgroupC::Cyclic { generator } => {
            ClosedSubgroupC::cyclic(m(*generator)).expect("nonzero")
        }
        ClosedSubgroupC::Line { angle } => {
            ClosedSubgroupC::line_through(m(Complex64::from_polar(1.0, *angle))).expect("unit")
        }
        ClosedSubgroupC::LineCyclic { .. } => {
            let u = plane.direction().unwrap();
            let v = plane.transverse().unwrap();
            ClosedSubgroupC::line_cyclic(m(u), m(v)).expect("non-degenerate")
        }
        ClosedSubgroupC::Lattice { basis } => {
            ClosedSubgroupC::lattice(m(basis[0]), m(basis[1])).expect("basis")
        }
    }
}

impl HeisSubgroup {
    /// Canonicalizing constructor for subgroups of the center.
    pub fn central(r: ClosedSubgroupR) -> HeisSubgroup {
        match r {
            ClosedSubgroupR::Trivial => HeisSubgroup::Trivial,
            other => HeisSubgroup::Central(other),
        }
    }

    /// Canonicalizing constructor for a subgroup of the maximal abelian plane
    /// `R·u x R`; plane coordinates are `(s, t) <-> s + it`. Purely central or
    /// trivial contents collapse to the corresponding canonical variants.
    pub fn planar(direction: Complex64, plane: ClosedSubgroupC) -> Result<HeisSubgroup, SubgroupError> {
        if direction.norm() == 0.0 {
            return Err(SubgroupError::Degenerate("plane direction is zero".into()));
        }
        let theta = direction.arg();
        let (angle, plane) = if (0.0..std::f64::consts::PI).contains(&theta) {
            (theta, plane)
        } else {
            let flipped = theta.rem_euclid(std::f64::consts::PI);
            (flipped, reflect_plane(&plane))
        };
        // collapse central contents
        let vertical = |v: Complex64| v.re.abs() <= 1e-12 * (1.0 + v.norm());
        Ok(match &plane {
            ClosedSubgroupC::Zero => HeisSubgroup::Trivial,
            ClosedSubgroupC::Cyclic { generator } if vertical(*generator) => {
                HeisSubgroup::Central(ClosedSubgroupR::cyclic(generator.im.abs())?)
            }
            ClosedSubgroupC::Line { angle: a }
                if (*a - std::f64::consts::FRAC_PI_2).abs() <= 1e-12 =>
            {
                HeisSubgroup::Central(ClosedSubgroupR::Full)
            }
            _ => HeisSubgroup::Planar { angle, plane },
        })
    }

    /// The pullback `p^{-1}(C)` of a closed planar subgroup; abelian cases
    /// collapse to their canonical planar or central representations.
    pub fn pullback_center(c: &ClosedSubgroupC) -> HeisSubgroup {
        match c {
            ClosedSubgroupC::Zero => HeisSubgroup::Central(ClosedSubgroupR::Full),
            ClosedSubgroupC::Cyclic { generator } => {
                // p^{-1}(Zω) is abelian inside the plane of ω: vertical line
                // plus a horizontal cyclic of spacing |ω|
                let spacing = generator.norm();
                let plane = ClosedSubgroupC::line_cyclic(
                    Complex64::new(0.0, 1.0),
                    Complex64::new(spacing, 0.0),
                )
                .expect("non-degenerate");
                HeisSubgroup::planar(*generator, plane).expect("nonzero direction")
            }
            ClosedSubgroupC::Line { angle } => HeisSubgroup::Planar {
                angle: *angle,
                plane: ClosedSubgroupC::Full,
            },
            other => HeisSubgroup::PullbackCenter(other.clone()),
        }
    }

    pub fn lattice(l: HeisLattice) -> HeisSubgroup {
        HeisSubgroup::LatticeN(l)
    }

    /// Stratum of the subgroup. The planar/pullback dichotomy is enforced by
    /// the representation: every non-abelian subgroup is a pullback or a
    /// lattice.
    pub fn classify(&self) -> HeisStratum {
        match self {
            HeisSubgroup::Trivial => HeisStratum::Trivial,
            HeisSubgroup::Central(ClosedSubgroupR::Full) => HeisStratum::Line,
            HeisSubgroup::Central(ClosedSubgroupR::Cyclic { .. }) => HeisStratum::Cyclic,
            HeisSubgroup::Central(ClosedSubgroupR::Trivial) => HeisStratum::Trivial,
            HeisSubgroup::Planar { plane, .. } => match plane {
                ClosedSubgroupC::Zero => HeisStratum::Trivial,
                ClosedSubgroupC::Cyclic { .. } => HeisStratum::Cyclic,
                ClosedSubgroupC::Line { .. } => HeisStratum::Line,
                ClosedSubgroupC::LineCyclic { .. } => HeisStratum::PlanarLineCyclic,
                ClosedSubgroupC::Lattice { .. } => HeisStratum::PlanarLattice,
                ClosedSubgroupC::Full => HeisStratum::MaximalPlane,
            },
            HeisSubgroup::PullbackCenter(c) => match c {
                ClosedSubgroupC::LineCyclic { .. } => HeisStratum::PullbackLineCyclic,
                ClosedSubgroupC::Lattice { .. } => HeisStratum::PullbackLattice,
                ClosedSubgroupC::Full => HeisStratum::Full,
                // canonicalizing constructors keep these unreachable, but
                // classify stays total for hand-built values
                ClosedSubgroupC::Zero => HeisStratum::Line,
                ClosedSubgroupC::Cyclic { .. } => HeisStratum::PlanarLineCyclic,
                ClosedSubgroupC::Line { .. } => HeisStratum::MaximalPlane,
            },
            HeisSubgroup::LatticeN(l) => HeisStratum::LatticeN(l.center_index()),
        }
    }

    fn plane_direction(angle: f64) -> Complex64 {
        Complex64::from_polar(1.0, angle)
    }

    /// Plane coordinates of `x` relative to the plane `R·u x R`:
    /// `(along, off, t)` with `x.z = along·u + off·iu`.
    fn plane_coords(angle: f64, x: HeisElement) -> (f64, f64, f64) {
        let u = Self::plane_direction(angle);
        let along = (u.conj() * x.z).re;
        let off = cross(u, x.z);
        (along, off, x.t)
    }

    /// Euclidean coordinate distance from `x` to the subgroup.
    pub fn dist_point(&self, x: HeisElement) -> f64 {
        match self {
            HeisSubgroup::Trivial => x.norm(),
            HeisSubgroup::Central(r) => {
                let dt = r.dist_point(x.t);
                (x.z.norm_sqr() + dt * dt).sqrt()
            }
            HeisSubgroup::Planar { angle, plane } => {
                let (along, off, t) = Self::plane_coords(*angle, x);
                let d = plane.dist_point(Complex64::new(along, t));
                (off * off + d * d).sqrt()
            }
            HeisSubgroup::PullbackCenter(c) => c.dist_point(x.z),
            HeisSubgroup::LatticeN(l) => l.dist_point(x),
        }
    }

    /// Group-translate distance `inf_c ||c^{-1} x||`; differs from the
    /// Euclidean one exactly where the central twist enters (planar subgroups
    /// off their plane, lattices).
    pub fn dist_group(&self, x: HeisElement) -> f64 {
        match self {
            HeisSubgroup::Trivial | HeisSubgroup::Central(_) | HeisSubgroup::PullbackCenter(_) => {
                self.dist_point(x)
            }
            HeisSubgroup::Planar { angle, plane } => {
                let (along, off, t) = Self::plane_coords(*angle, x);
                // (s,t) -> ||(su,t)^{-1} x||² = (along-s)² + off² + (t_x + s·off/2 - t)²:
                // a shear of the plane subgroup turns this into a Euclidean CVP
                let shear = |v: Complex64| Complex64::new(v.re, v.im - 0.5 * v.re * off);
                let sheared = match plane {
                    ClosedSubgroupC::Zero => ClosedSubgroupC::Zero,
                    ClosedSubgroupC::Full => ClosedSubgroupC::Full,
                    ClosedSubgroupC::Cyclic { generator } => {
                        ClosedSubgroupC::cyclic(shear(*generator)).expect("nonzero")
                    }
                    ClosedSubgroupC::Line { angle: a } => ClosedSubgroupC::line_through(shear(
                        Complex64::from_polar(1.0, *a),
                    ))
                    .expect("unit"),
                    ClosedSubgroupC::LineCyclic { .. } => ClosedSubgroupC::line_cyclic(
                        shear(plane.direction().unwrap()),
                        shear(plane.transverse().unwrap()),
                    )
                    .expect("non-degenerate"),
                    ClosedSubgroupC::Lattice { basis } => {
                        ClosedSubgroupC::lattice(shear(basis[0]), shear(basis[1])).expect("basis")
                    }
                };
                let d = sheared.dist_point(Complex64::new(along, t));
                (off * off + d * d).sqrt()
            }
            HeisSubgroup::LatticeN(l) => l.dist_group(x),
        }
    }

    /// Geometric support inside (a superset of) the coordinate ball.
    pub fn enumerate(
        &self,
        radius: f64,
        cap: usize,
    ) -> Result<Support<HeisElement>, SubgroupError> {
        let mut out = Support::new();
        match self {
            HeisSubgroup::Trivial => out.push(Piece::Point(HeisElement::identity())),
            HeisSubgroup::Central(r) => match r {
                ClosedSubgroupR::Full => out.push(Piece::Segment {
                    a: HeisElement::new(Complex64::zero(), -radius),
                    b: HeisElement::new(Complex64::zero(), radius),
                }),
                _ => {
                    for p in r.enumerate(radius, cap)?.points() {
                        out.push(Piece::Point(HeisElement::new(Complex64::zero(), p)));
                    }
                }
            },
            HeisSubgroup::Planar { angle, plane } => {
                let u = Self::plane_direction(*angle);
                let embed = |v: Complex64| HeisElement::new(u * v.re, v.im);
                for piece in plane.enumerate(radius, cap)?.pieces {
                    out.push(match piece {
                        Piece::Point(p) => Piece::Point(embed(p)),
                        Piece::Segment { a, b } => Piece::Segment { a: embed(a), b: embed(b) },
                        Piece::Patch { center, axis1, axis2, half1, half2 } => Piece::Patch {
                            center: embed(center),
                            axis1: embed(axis1),
                            axis2: embed(axis2),
                            half1,
                            half2,
                        },
                        Piece::Box3 { .. } => unreachable!("no solid pieces in the plane"),
                    });
                }
            }
            HeisSubgroup::PullbackCenter(c) => {
                for piece in c.enumerate(radius, cap)?.pieces {
                    match piece {
                        Piece::Point(z) => {
                            let h = (radius * radius - z.norm_sqr()).max(0.0).sqrt();
                            out.push(Piece::Segment {
                                a: HeisElement::new(z, -h),
                                b: HeisElement::new(z, h),
                            });
                        }
                        Piece::Segment { a, b } => {
                            let mid = (a + b) / 2.0;
                            let half_vec = (b - a) / 2.0;
                            let h1 = half_vec.norm();
                            let dir = if h1 > 0.0 { half_vec / h1 } else { Complex64::new(1.0, 0.0) };
                            out.push(Piece::Patch {
                                center: HeisElement::new(mid, 0.0),
                                axis1: HeisElement::new(dir, 0.0),
                                axis2: HeisElement::new(Complex64::zero(), 1.0),
                                half1: h1,
                                half2: radius,
                            });
                        }
                        Piece::Patch { .. } => {
                            // pullback of the full plane is all of H
                            out.push(Piece::Box3 { half: radius });
                        }
                        Piece::Box3 { .. } => unreachable!("no solid pieces in the plane"),
                    }
                }
            }
            HeisSubgroup::LatticeN(l) => return l.enumerate(radius, cap),
        }
        Ok(out)
    }

    pub fn canonical_eq(&self, other: &HeisSubgroup, tol: f64) -> bool {
        match (self, other) {
            (HeisSubgroup::Trivial, HeisSubgroup::Trivial) => true,
            (HeisSubgroup::Central(a), HeisSubgroup::Central(b)) => a.canonical_eq(b, tol),
            (
                HeisSubgroup::Planar { angle: a1, plane: p1 },
                HeisSubgroup::Planar { angle: a2, plane: p2 },
            ) => {
                let d = (a1 - a2).abs();
                (d <= tol || (std::f64::consts::PI - d) <= tol) && p1.canonical_eq(p2, tol)
            }
            (HeisSubgroup::PullbackCenter(a), HeisSubgroup::PullbackCenter(b)) => {
                a.canonical_eq(b, tol)
            }
            (HeisSubgroup::LatticeN(a), HeisSubgroup::LatticeN(b)) => a.canonical_eq(b, tol),
            _ => false,
        }
    }
}

// ---------------------------------------------------------------------------
// Metric-engine plugin and the lattice compactness verdict for H
// ---------------------------------------------------------------------------

/// The Heisenberg group as an ambient space, with the Euclidean norm on the
/// coordinates `(z, t)`. The topology does not depend on this choice; values
/// of the metric do.
#[derive(Debug, Clone, Copy, Default)]
pub struct HSpace;

impl AmbientSpace for HSpace {
    type Point = HeisElement;
    type Descriptor = HeisSubgroup;

    fn enumerate(
        &self,
        desc: &Self::Descriptor,
        radius: f64,
        cap: usize,
    ) -> Result<Support<HeisElement>, MetricError> {
        Ok(desc.enumerate(radius, cap)?)
    }

    fn dist_point(&self, desc: &Self::Descriptor, p: HeisElement) -> f64 {
        desc.dist_point(p)
    }

    fn dist_group(&self, desc: &Self::Descriptor, p: HeisElement) -> f64 {
        desc.dist_group(p)
    }

    fn canonical_eq(&self, a: &Self::Descriptor, b: &Self::Descriptor, tol: f64) -> bool {
        a.canonical_eq(b, tol)
    }

    fn ball_support(&self, radius: f64) -> Support<HeisElement> {
        let mut s = Support::new();
        s.push(Piece::Box3 { half: radius });
        s
    }
}

#[derive(Debug, Clone)]
pub struct HeisMahlerReport {
    pub sup_volume: f64,
    pub min_shortest: f64,
    /// Indices whose intersection with the open identity ball is nontrivial.
    pub identity_violations: Vec<usize>,
    pub certified: bool,
}

/// Compactness verdict for a family of lattices in `H`: Haar covolume bounded
/// by `vol_bound` and trivial intersection with the open identity ball of
/// radius `u_radius`.
pub fn heis_mahler_verdict(
    family: &[HeisLattice],
    vol_bound: f64,
    u_radius: f64,
) -> Result<HeisMahlerReport, MetricError> {
    if family.is_empty() {
        return Err(MetricError::BadConfig("empty family".into()));
    }
    let mut sup_volume: f64 = 0.0;
    let mut min_shortest = f64::INFINITY;
    let mut identity_violations = Vec::new();
    for (i, l) in family.iter().enumerate() {
        sup_volume = sup_volume.max(l.haar_volume());
        let s = l.shortest_norm();
        min_shortest = min_shortest.min(s);
        if s < u_radius {
            identity_violations.push(i);
        }
    }
    Ok(HeisMahlerReport {
        sup_volume,
        min_shortest,
        certified: sup_volume <= vol_bound && identity_violations.is_empty(),
        identity_violations,
    })
}

/// Distance between two lattices (or subgroup descriptors) of `H` under the
/// default engine configuration.
pub fn heis_distance(
    a: &HeisSubgroup,
    b: &HeisSubgroup,
    cfg: &MetricConfig,
) -> Result<f64, MetricError> {
    Ok(crate::metric::chabauty_distance(&HSpace, a, b, cfg)?.distance)
}
