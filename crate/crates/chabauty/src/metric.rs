//! Generic Chabauty-metric engine over any ambient space providing a norm,
//! support enumeration and point-to-set distance.
//!
//! The metric on closed subsets is
//! `d(F1, F2) = inf { eps : both eps-halo inclusions hold inside B(*, 1/eps) }`,
//! where a point of one set is exempt when it lies within `eps` of the
//! complement of the ball. The predicate is evaluated by certified
//! branch-and-bound over the support pieces (distance functions are
//! 1-Lipschitz), and the distance by bisection over `eps`.
//!
//! Also here: finite-scale convergence verdicts, the neighborhood-basis test
//! with group translates, and compactness verdicts for families of planar
//! lattices (bounded covolume, minimal norm bounded away from zero).

use crate::error::MetricError;
use crate::euclid::{ClosedSubgroupC, ClosedSubgroupR};
use crate::support::{Piece, SpacePoint, Support};
use num::complex::Complex64;
use num::Zero;

/// Engine configuration: bisection tolerance, epsilon bracket, evaluation
/// budget, and the branch-and-bound resolution (as a fraction of the scale
/// under test).
#[derive(Debug, Clone, Copy)]
pub struct MetricConfig {
    pub tol: f64,
    pub eps_min: f64,
    pub eps_max: f64,
    pub cap: usize,
    pub refine: f64,
}

impl Default for MetricConfig {
    fn default() -> Self {
        MetricConfig {
            tol: 1e-3,
            eps_min: 1e-4,
            eps_max: 4.0,
            cap: 5_000_000,
            refine: 5e-4,
        }
    }
}

impl MetricConfig {
    pub fn with_tol(tol: f64) -> Self {
        MetricConfig { tol, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), MetricError> {
        if !(self.tol > 0.0) {
            return Err(MetricError::BadConfig("tol must be positive".into()));
        }
        if !(self.eps_min < self.eps_max) || !(self.eps_min > 0.0) {
            return Err(MetricError::BadConfig("need 0 < eps_min < eps_max".into()));
        }
        Ok(())
    }
}

/// An ambient space plugged into the engine. The base point is the identity;
/// `dist_point` is the ambient-norm distance to the set, `dist_group` the
/// group-translate variant `inf_c ||c^{-1} x||` (they agree in abelian vector
/// groups).
pub trait AmbientSpace {
    type Point: SpacePoint;
    type Descriptor: Clone;

    fn enumerate(
        &self,
        desc: &Self::Descriptor,
        radius: f64,
        cap: usize,
    ) -> Result<Support<Self::Point>, MetricError>;

    fn dist_point(&self, desc: &Self::Descriptor, p: Self::Point) -> f64;

    fn dist_group(&self, desc: &Self::Descriptor, p: Self::Point) -> f64 {
        self.dist_point(desc, p)
    }

    fn canonical_eq(&self, a: &Self::Descriptor, b: &Self::Descriptor, tol: f64) -> bool;

    /// Solid support of the whole ambient ball (used to certify density).
    fn ball_support(&self, radius: f64) -> Support<Self::Point>;
}

// ---------------------------------------------------------------------------
// Branch-and-bound over support pieces
// ---------------------------------------------------------------------------

struct Cell<P> {
    center: P,
    kind: CellKind<P>,
}

enum CellKind<P> {
    Point,
    Segment { dir: P, half: f64 },
    Rect { ax1: P, ax2: P, h1: f64, h2: f64 },
    Box3 { half: f64 },
}

impl<P: SpacePoint> Cell<P> {
    fn from_piece(piece: &Piece<P>) -> Cell<P> {
        match *piece {
            Piece::Point(p) => Cell { center: p, kind: CellKind::Point },
            Piece::Segment { a, b } => {
                let mid = a.add(b).scale(0.5);
                let half_vec = b.sub(a).scale(0.5);
                let half = half_vec.norm();
                let dir = if half > 0.0 { half_vec.scale(1.0 / half) } else { half_vec };
                Cell { center: mid, kind: CellKind::Segment { dir, half } }
            }
            Piece::Patch { center, axis1, axis2, half1, half2 } => Cell {
                center,
                kind: CellKind::Rect { ax1: axis1, ax2: axis2, h1: half1, h2: half2 },
            },
            Piece::Box3 { half } => {
                let axes = P::axes();
                let origin = axes[0].scale(0.0);
                Cell { center: origin, kind: CellKind::Box3 { half } }
            }
        }
    }

    fn radius(&self) -> f64 {
        match &self.kind {
            CellKind::Point => 0.0,
            CellKind::Segment { half, .. } => *half,
            CellKind::Rect { h1, h2, .. } => (h1 * h1 + h2 * h2).sqrt(),
            CellKind::Box3 { half } => half * (P::axes().len() as f64).sqrt(),
        }
    }

    fn subdivide(&self, out: &mut Vec<Cell<P>>) {
        match &self.kind {
            CellKind::Point => {}
            CellKind::Segment { dir, half } => {
                let h = half / 2.0;
                for s in [-1.0, 1.0] {
                    out.push(Cell {
                        center: self.center.add(dir.scale(s * h)),
                        kind: CellKind::Segment { dir: *dir, half: h },
                    });
                }
            }
            CellKind::Rect { ax1, ax2, h1, h2 } => {
                // split the longer side
                if h1 >= h2 {
                    let h = h1 / 2.0;
                    for s in [-1.0, 1.0] {
                        out.push(Cell {
                            center: self.center.add(ax1.scale(s * h)),
                            kind: CellKind::Rect { ax1: *ax1, ax2: *ax2, h1: h, h2: *h2 },
                        });
                    }
                } else {
                    let h = h2 / 2.0;
                    for s in [-1.0, 1.0] {
                        out.push(Cell {
                            center: self.center.add(ax2.scale(s * h)),
                            kind: CellKind::Rect { ax1: *ax1, ax2: *ax2, h1: *h1, h2: h },
                        });
                    }
                }
            }
            CellKind::Box3 { half } => {
                let axes = P::axes();
                let h = half / 2.0;
                let n = axes.len();
                for mask in 0..(1u32 << n) {
                    let mut c = self.center;
                    for (i, ax) in axes.iter().enumerate() {
                        let s = if mask & (1 << i) != 0 { 1.0 } else { -1.0 };
                        c = c.add(ax.scale(s * h));
                    }
                    out.push(Cell { center: c, kind: CellKind::Box3 { half: h } });
                }
            }
        }
    }
}

/// Search the support for a point with `norm <= mandatory_radius` and
/// `dist > threshold`. Certified via the 1-Lipschitz bound: a cell is pruned
/// when no point of it can violate; cells smaller than `floor` are dropped
/// (one-sided resolution limit). Every distance evaluation costs budget.
fn find_violation<P: SpacePoint>(
    pieces: &[Piece<P>],
    mandatory_radius: f64,
    threshold: f64,
    floor: f64,
    dist: &mut impl FnMut(P) -> f64,
    budget: &mut usize,
    cap: usize,
) -> Result<Option<(P, f64)>, MetricError> {
    let mut stack: Vec<Cell<P>> = pieces.iter().map(Cell::from_piece).collect();
    while let Some(cell) = stack.pop() {
        if *budget == 0 {
            return Err(MetricError::EnumerationCap(cap));
        }
        *budget -= 1;
        let r = cell.radius();
        let n = cell.center.norm();
        if n - r > mandatory_radius {
            continue; // entirely exempt
        }
        let d = dist(cell.center);
        if n <= mandatory_radius && d > threshold {
            return Ok(Some((cell.center, d)));
        }
        if d + r <= threshold {
            continue; // no point of the cell can violate
        }
        if r <= floor {
            continue; // unresolved sliver below the resolution
        }
        cell.subdivide(&mut stack);
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Halo predicate and Chabauty distance
// ---------------------------------------------------------------------------

/// Both eps-halo inclusions inside the ball of radius `1/eps`: every point of
/// either set with norm at most `1/eps - eps` must lie within `eps` of the
/// other set.
pub fn halo_predicate<S: AmbientSpace>(
    space: &S,
    f1: &S::Descriptor,
    f2: &S::Descriptor,
    eps: f64,
    cfg: &MetricConfig,
) -> Result<bool, MetricError> {
    if !(eps > 0.0) {
        return Err(MetricError::BadConfig(format!("eps must be positive, got {eps}")));
    }
    let cut = 1.0 / eps - eps;
    if cut <= 0.0 {
        return Ok(true);
    }
    let floor = eps * cfg.refine;
    let mut budget = cfg.cap;
    for (x, y) in [(f1, f2), (f2, f1)] {
        let support = space.enumerate(x, cut * (1.0 + 1e-12), cfg.cap)?;
        let mut d = |p| space.dist_point(y, p);
        if find_violation(&support.pieces, cut, eps, floor, &mut d, &mut budget, cfg.cap)?
            .is_some()
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of a distance computation: the certified value and the bisection
/// trace of `(eps, predicate)` evaluations.
#[derive(Debug, Clone)]
pub struct DistanceResult {
    pub distance: f64,
    pub trace: Vec<(f64, bool)>,
}

impl DistanceResult {
    /// The halo predicate must be monotone nondecreasing in eps on the trace.
    pub fn trace_is_monotone(&self) -> bool {
        let mut sorted = self.trace.clone();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        sorted.windows(2).all(|w| !(w[0].1 && !w[1].1))
    }
}

/// Bisection of the halo predicate down to `cfg.tol`. Identical canonical
/// descriptors short-circuit to distance zero.
pub fn chabauty_distance<S: AmbientSpace>(
    space: &S,
    f1: &S::Descriptor,
    f2: &S::Descriptor,
    cfg: &MetricConfig,
) -> Result<DistanceResult, MetricError> {
    cfg.validate()?;
    if space.canonical_eq(f1, f2, 1e-12) {
        return Ok(DistanceResult { distance: 0.0, trace: vec![] });
    }
    let mut trace = Vec::new();
    let eval = |eps: f64, trace: &mut Vec<(f64, bool)>| -> Result<bool, MetricError> {
        let ok = halo_predicate(space, f1, f2, eps, cfg)?;
        trace.push((eps, ok));
        Ok(ok)
    };
    if !eval(cfg.eps_max, &mut trace)? {
        return Err(MetricError::BracketFailure(cfg.eps_max));
    }
    let mut lo = cfg.eps_min;
    let mut hi = cfg.eps_max;
    // `hi` always satisfies the predicate; `lo` is untested or failing.
    while hi - lo > cfg.tol {
        let mid = 0.5 * (lo + hi);
        if eval(mid, &mut trace)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // midpoint of the final bracket: |distance - d| <= tol/2 plus the
    // branch-and-bound resolution
    let result = DistanceResult { distance: 0.5 * (lo + hi), trace };
    debug_assert!(result.trace_is_monotone());
    Ok(result)
}

// ---------------------------------------------------------------------------
// Convergence verdicts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct LimitWitness {
    pub index: u32,
    /// 'a': a point of the limit is not approximated; 'b': a point of a family
    /// member is far from the limit and from the ball boundary.
    pub condition: char,
    pub point: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct LimitReport {
    pub pass: bool,
    pub witnesses: Vec<LimitWitness>,
}

/// Finite-scale convergence check inside `B(*, radius)` at tolerance `delta`,
/// for family members with index at least `horizon`:
/// (a) every point of `limit` in the ball lies within `delta` of each member;
/// (b) every point of each member in the ball lies within `delta` of `limit`
/// or within `delta` of the ball boundary.
pub fn limit_verdict<S: AmbientSpace>(
    space: &S,
    family: &[(u32, S::Descriptor)],
    limit: &S::Descriptor,
    radius: f64,
    delta: f64,
    horizon: u32,
    cfg: &MetricConfig,
) -> Result<LimitReport, MetricError> {
    if !(radius > 0.0 && delta > 0.0) {
        return Err(MetricError::BadConfig("radius and delta must be positive".into()));
    }
    let floor = delta * cfg.refine;
    let mut witnesses = Vec::new();
    let limit_support = space.enumerate(limit, radius * (1.0 + 1e-12), cfg.cap)?;
    // When the limit is delta-dense in the ball, condition (b) is vacuous for
    // every member; this also avoids enumerating very dense members.
    let ball = space.ball_support(radius);
    let mut cover_budget = cfg.cap;
    let mut dist_limit = |p| space.dist_point(limit, p);
    let limit_covers_ball = find_violation(
        &ball.pieces,
        radius,
        delta,
        floor,
        &mut dist_limit,
        &mut cover_budget,
        cfg.cap,
    )?
    .is_none();
    for (k, member) in family.iter().filter(|(k, _)| *k >= horizon) {
        let mut budget = cfg.cap;
        // (a) limit approximated by the member
        let mut d = |p| space.dist_point(member, p);
        if let Some((p, v)) = find_violation(
            &limit_support.pieces,
            radius,
            delta,
            floor,
            &mut d,
            &mut budget,
            cfg.cap,
        )? {
            witnesses.push(LimitWitness { index: *k, condition: 'a', point: p.coords(), value: v });
        }
        // (b) member stays near the limit or near the boundary
        if !limit_covers_ball {
            let member_support = space.enumerate(member, radius * (1.0 + 1e-12), cfg.cap)?;
            let mut g = |p: S::Point| space.dist_point(limit, p).min(radius - p.norm());
            if let Some((p, v)) = find_violation(
                &member_support.pieces,
                radius,
                delta,
                floor,
                &mut g,
                &mut budget,
                cfg.cap,
            )? {
                witnesses.push(LimitWitness {
                    index: *k,
                    condition: 'b',
                    point: p.coords(),
                    value: v,
                });
            }
        }
        if witnesses.len() >= 16 {
            break;
        }
    }
    Ok(LimitReport { pass: witnesses.is_empty(), witnesses })
}

/// Neighborhood-basis test with group translates: true iff `D ∩ K ⊂ C·U` and
/// `C ∩ K ⊂ D·U`, for `K` the closed ball of radius `k_radius` and `U` the
/// open identity ball of radius `u_radius`.
pub fn neighborhood_check<S: AmbientSpace>(
    space: &S,
    c: &S::Descriptor,
    d: &S::Descriptor,
    k_radius: f64,
    u_radius: f64,
    cfg: &MetricConfig,
) -> Result<bool, MetricError> {
    if !(k_radius > 0.0 && u_radius > 0.0) {
        return Err(MetricError::BadConfig("radii must be positive".into()));
    }
    let floor = u_radius * cfg.refine;
    let mut budget = cfg.cap;
    for (x, y) in [(d, c), (c, d)] {
        let support = space.enumerate(x, k_radius * (1.0 + 1e-12), cfg.cap)?;
        let mut g = |p| space.dist_group(y, p);
        if find_violation(&support.pieces, k_radius, u_radius, floor, &mut g, &mut budget, cfg.cap)?
            .is_some()
        {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Compactness verdicts for planar lattice families
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MahlerReport {
    pub sup_covolume: f64,
    pub inf_min_norm: f64,
    /// Whether the supplied `(C, c)` bounds certify the sampled family.
    pub certified: bool,
    /// Trend flags along the sample order (strict monotonicity plus a factor
    /// of four drift).
    pub min_norm_to_zero: bool,
    pub covolume_to_infinity: bool,
}

/// Bounded-covolume / minimal-norm verdict for a finite sample of planar
/// lattices against bounds `covol_bound` and `min_norm_bound`.
pub fn mahler_verdict(
    family: &[ClosedSubgroupC],
    covol_bound: f64,
    min_norm_bound: f64,
) -> Result<MahlerReport, MetricError> {
    let mut covols = Vec::with_capacity(family.len());
    let mut mins = Vec::with_capacity(family.len());
    for (index, l) in family.iter().enumerate() {
        match l {
            ClosedSubgroupC::Lattice { .. } => {
                covols.push(l.covolume());
                mins.push(l.min_norm().expect("lattice has a minimal norm"));
            }
            _ => return Err(MetricError::NonLattice { index }),
        }
    }
    let sup_covolume = covols.iter().copied().fold(0.0, f64::max);
    let inf_min_norm = mins.iter().copied().fold(f64::INFINITY, f64::min);
    let strictly = |v: &[f64], dec: bool| {
        v.len() >= 2 && v.windows(2).all(|w| if dec { w[1] < w[0] } else { w[1] > w[0] })
    };
    Ok(MahlerReport {
        sup_covolume,
        inf_min_norm,
        certified: sup_covolume <= covol_bound && inf_min_norm >= min_norm_bound,
        min_norm_to_zero: strictly(&mins, true) && mins[mins.len() - 1] <= mins[0] / 4.0,
        covolume_to_infinity: strictly(&covols, false)
            && covols[covols.len() - 1] >= 4.0 * covols[0],
    })
}

// ---------------------------------------------------------------------------
// The two Euclidean ambient spaces
// ---------------------------------------------------------------------------

/// The real line.
#[derive(Debug, Clone, Copy, Default)]
pub struct RSpace;

impl AmbientSpace for RSpace {
    type Point = f64;
    type Descriptor = ClosedSubgroupR;

    fn enumerate(
        &self,
        desc: &Self::Descriptor,
        radius: f64,
        cap: usize,
    ) -> Result<Support<f64>, MetricError> {
        Ok(desc.enumerate(radius, cap)?)
    }

    fn dist_point(&self, desc: &Self::Descriptor, p: f64) -> f64 {
        desc.dist_point(p)
    }

    fn canonical_eq(&self, a: &Self::Descriptor, b: &Self::Descriptor, tol: f64) -> bool {
        a.canonical_eq(b, tol)
    }

    fn ball_support(&self, radius: f64) -> Support<f64> {
        let mut s = Support::new();
        s.push(Piece::Segment { a: -radius, b: radius });
        s
    }
}

/// The complex plane.
#[derive(Debug, Clone, Copy, Default)]
pub struct CSpace;

impl AmbientSpace for CSpace {
    type Point = Complex64;
    type Descriptor = ClosedSubgroupC;

    fn enumerate(
        &self,
        desc: &Self::Descriptor,
        radius: f64,
        cap: usize,
    ) -> Result<Support<Complex64>, MetricError> {
        Ok(desc.enumerate(radius, cap)?)
    }

    fn dist_point(&self, desc: &Self::Descriptor, p: Complex64) -> f64 {
        desc.dist_point(p)
    }

    fn canonical_eq(&self, a: &Self::Descriptor, b: &Self::Descriptor, tol: f64) -> bool {
        a.canonical_eq(b, tol)
    }

    fn ball_support(&self, radius: f64) -> Support<Complex64> {
        let mut s = Support::new();
        s.push(Piece::Patch {
            center: Complex64::zero(),
            axis1: Complex64::new(1.0, 0.0),
            axis2: Complex64::new(0.0, 1.0),
            half1: radius,
            half2: radius,
        });
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gaussian() -> ClosedSubgroupC {
        ClosedSubgroupC::lattice(c(1.0, 0.0), c(0.0, 1.0)).unwrap()
    }

    #[test]
    fn halo_trivial_cases() {
        let cfg = MetricConfig::default();
        let g = gaussian();
        for eps in [0.05, 0.3, 1.0, 3.0] {
            assert!(halo_predicate(&CSpace, &g, &g, eps, &cfg).unwrap());
        }
    }

    #[test]
    fn halo_zero_vs_full_threshold() {
        // the farthest mandatory point of C has norm 1/eps - eps and must be
        // within eps of {0}: true iff eps >= 1/sqrt(2)
        let cfg = MetricConfig::default();
        let zero = ClosedSubgroupC::Zero;
        let full = ClosedSubgroupC::Full;
        assert!(halo_predicate(&CSpace, &zero, &full, 0.8, &cfg).unwrap());
        assert!(!halo_predicate(&CSpace, &zero, &full, 0.5, &cfg).unwrap());
        let thr = 0.5f64.sqrt();
        assert!(halo_predicate(&CSpace, &zero, &full, thr + 1e-3, &cfg).unwrap());
        assert!(!halo_predicate(&CSpace, &zero, &full, thr - 1e-3, &cfg).unwrap());
    }

    #[test]
    fn halo_sublattice_threshold() {
        // Z[i] vs (1/2)Z[i]: the worst refined point (1/2, 1/2) sits at
        // distance sqrt(2)/2 from Z[i], and becomes ball-exempt at the same
        // eps, so the threshold is sqrt(2)/2. Brute-force cross-check below.
        let cfg = MetricConfig::default();
        let g = gaussian();
        let half = ClosedSubgroupC::lattice(c(0.5, 0.0), c(0.0, 0.5)).unwrap();
        let thr = 2.0f64.sqrt() / 2.0;
        assert!(halo_predicate(&CSpace, &g, &half, thr + 0.05, &cfg).unwrap());
        assert!(!halo_predicate(&CSpace, &g, &half, thr - 0.05, &cfg).unwrap());
        // brute force: mandatory points of each set vs the other, eps = thr - 0.05
        let eps = thr - 0.05;
        let cut = 1.0 / eps - eps;
        let viol = half
            .enumerate(cut, 10_000)
            .unwrap()
            .points()
            .into_iter()
            .filter(|p| p.norm() <= cut)
            .any(|p| g.dist_point(p) > eps);
        assert!(viol);
    }

    #[test]
    fn distance_zero_and_symmetry() {
        let cfg = MetricConfig::default();
        let g = gaussian();
        let d = chabauty_distance(&CSpace, &g, &g, &cfg).unwrap();
        assert!(d.distance <= cfg.tol);
        let a = ClosedSubgroupC::cyclic(c(1.0, 0.3)).unwrap();
        let d1 = chabauty_distance(&CSpace, &a, &g, &cfg).unwrap();
        let d2 = chabauty_distance(&CSpace, &g, &a, &cfg).unwrap();
        assert_eq!(d1.distance, d2.distance); // algorithmically symmetric
        assert!(d1.trace_is_monotone());
    }

    #[test]
    fn distance_zero_vs_full_analytic() {
        let cfg = MetricConfig::default();
        let d = chabauty_distance(&CSpace, &ClosedSubgroupC::Zero, &ClosedSubgroupC::Full, &cfg)
            .unwrap();
        assert!((d.distance - 0.5f64.sqrt()).abs() <= cfg.tol, "d = {}", d.distance);
    }

    #[test]
    fn distance_rotating_lines_decreases() {
        let cfg = MetricConfig::default();
        let base = ClosedSubgroupC::line_through(c(1.0, 0.0)).unwrap();
        let mut prev = f64::INFINITY;
        for theta in [0.4, 0.2, 0.1, 0.05] {
            let rot = ClosedSubgroupC::line_through(Complex64::from_polar(1.0, theta)).unwrap();
            let d = chabauty_distance(&CSpace, &base, &rot, &cfg).unwrap().distance;
            assert!(d < prev, "distance not decreasing at theta={theta}: {d} vs {prev}");
            prev = d;
        }
    }

    #[test]
    fn limit_constant_sequence() {
        let cfg = MetricConfig::default();
        let g = gaussian();
        let fam: Vec<(u32, _)> = (1..=5).map(|k| (k, g.clone())).collect();
        let rep = limit_verdict(&CSpace, &fam, &g, 4.0, 0.05, 1, &cfg).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn limit_expanding_cyclic_to_zero() {
        // k Z -> {0} in R: nonzero points have norm >= k > R for k >= horizon
        let cfg = MetricConfig::default();
        let fam: Vec<(u32, ClosedSubgroupR)> = (1..=400)
            .step_by(50)
            .map(|k| (k as u32, ClosedSubgroupR::cyclic(k as f64).unwrap()))
            .collect();
        let rep = limit_verdict(
            &RSpace,
            &fam,
            &ClosedSubgroupR::Trivial,
            10.0,
            0.1,
            200,
            &cfg,
        )
        .unwrap();
        assert!(rep.pass);
        // at a low horizon it must fail: 1·Z has points inside the ball far from {0}
        let rep = limit_verdict(&RSpace, &fam, &ClosedSubgroupR::Trivial, 10.0, 0.1, 1, &cfg)
            .unwrap();
        assert!(!rep.pass);
        assert!(rep.witnesses.iter().any(|w| w.condition == 'b'));
    }

    #[test]
    fn neighborhood_examples() {
        let cfg = MetricConfig::default();
        let z = ClosedSubgroupR::cyclic(1.0).unwrap();
        let z105 = ClosedSubgroupR::cyclic(1.05).unwrap();
        assert!(neighborhood_check(&RSpace, &z, &z, 3.0, 0.2, &cfg).unwrap());
        // max offset within |x| <= 3 is 2*0.05 + 0.05 < 0.2
        assert!(neighborhood_check(&RSpace, &z, &z105, 3.0, 0.2, &cfg).unwrap());
        // within |x| <= 30 offsets reach 1.05k mod 1 ~ 0.5 > 0.2
        assert!(!neighborhood_check(&RSpace, &z, &z105, 30.0, 0.2, &cfg).unwrap());
    }

    #[test]
    fn mahler_examples() {
        // single Gaussian lattice certifies
        let rep = mahler_verdict(&[gaussian()], 2.0, 0.5).unwrap();
        assert!(rep.certified);
        assert_eq!(rep.sup_covolume, 1.0);
        assert_eq!(rep.inf_min_norm, 1.0);
        // stretched family: min norm 1/k^2 -> 0
        let fam: Vec<ClosedSubgroupC> = (1..=20)
            .map(|k| {
                ClosedSubgroupC::lattice(c(k as f64, 0.0), c(0.0, 1.0 / k as f64)).unwrap()
            })
            .collect();
        let rep = mahler_verdict(&fam, 2.0, 0.9).unwrap();
        assert!(!rep.certified);
        assert!(rep.min_norm_to_zero);
        // rotations of Z[i]: both functionals constant
        let rots: Vec<ClosedSubgroupC> = (0..12)
            .map(|k| {
                let u = Complex64::from_polar(1.0, k as f64 * 0.13);
                ClosedSubgroupC::lattice(u, u * Complex64::i()).unwrap()
            })
            .collect();
        let rep = mahler_verdict(&rots, 1.5, 0.9).unwrap();
        assert!(rep.certified);
        assert!(!rep.min_norm_to_zero && !rep.covolume_to_infinity);
        // non-lattice member rejected
        let err = mahler_verdict(&[ClosedSubgroupC::Full], 1.0, 1.0).unwrap_err();
        assert!(matches!(err, MetricError::NonLattice { index: 0 }));
    }

    #[test]
    fn bracket_failure_is_reported() {
        // with an artificially small eps_max the bracket cannot close
        let cfg = MetricConfig { eps_max: 0.2, ..Default::default() };
        let err =
            chabauty_distance(&CSpace, &ClosedSubgroupC::Zero, &ClosedSubgroupC::Full, &cfg)
                .unwrap_err();
        assert!(matches!(err, MetricError::BracketFailure(_)));
    }

    #[test]
    fn budget_cap_is_enforced() {
        let cfg = MetricConfig { cap: 50, ..Default::default() };
        let g = gaussian();
        let half = ClosedSubgroupC::lattice(c(0.5, 0.0), c(0.0, 0.5)).unwrap();
        let r = halo_predicate(&CSpace, &g, &half, 0.01, &cfg);
        assert!(matches!(r, Err(MetricError::EnumerationCap(_))));
    }

    #[test]
    fn triangle_inequality_sample() {
        let cfg = MetricConfig::default();
        let a = ClosedSubgroupC::Zero;
        let b = gaussian();
        let cc = ClosedSubgroupC::cyclic(c(1.0, 0.0)).unwrap();
        let dab = chabauty_distance(&CSpace, &a, &b, &cfg).unwrap().distance;
        let dbc = chabauty_distance(&CSpace, &b, &cc, &cfg).unwrap().distance;
        let dac = chabauty_distance(&CSpace, &a, &cc, &cfg).unwrap().distance;
        assert!(dac <= dab + dbc + 2.0 * cfg.tol);
        assert!(dab <= dac + dbc + 2.0 * cfg.tol);
        assert!(dbc <= dab + dac + 2.0 * cfg.tol);
    }

    #[test]
    fn support_points_respect_radius() {
        let g = gaussian();
        let pts = g.enumerate(3.0, 10_000).unwrap().points();
        assert!(pts.iter().all(|p| p.norm() <= 3.0 + 1e-9));
        assert!(pts.iter().any(|p| p.is_zero()));
    }
}
