//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured quantities. Tolerances are pinned in the assertions.

mod common;

use chabauty::exact::rat;
use chabauty::{
    chabauty_distance, eisenstein, extended_g_prime, forward_f, heis_mahler_verdict, inverse_f,
    invert_g, lattice_witness_near_pullback, limit_verdict, mahler_verdict, make_lambda_n,
    sigma, trefoil_point, CSpace, ClosedSubgroupC, ClosedSubgroupR, CurvePosition, HSpace,
    HeisAutomorphism, HeisElement, HeisElementExact, HeisSubgroup, MetricConfig, SpherePoint,
};
use chabauty::ambient::HeisAutomorphismExact;
use chabauty::exact::Rat;
use common::*;
use num::complex::Complex64;
use num::{Signed, Zero};
use rand::Rng;

#[test]
fn criterion_01_eisenstein_closed_forms() {
    // independent zeta values by direct series with an integral tail estimate
    let zeta = |s: i32| -> f64 {
        let n = 4000usize;
        let mut sum = 0.0;
        for k in (1..=n).rev() {
            sum += (k as f64).powi(-s);
        }
        // tail between the two integral bounds; take the midpoint
        let hi = (n as f64).powi(1 - s) / (s as f64 - 1.0);
        let lo = ((n + 1) as f64).powi(1 - s) / (s as f64 - 1.0);
        sum + 0.5 * (hi + lo)
    };
    let a_expect = 120.0 * zeta(4);
    let b_expect = 280.0 * zeta(6);
    let one = ClosedSubgroupC::cyclic(Complex64::new(1.0, 0.0)).unwrap();
    let (a, b) = extended_g_prime(&one).unwrap();
    assert!((a.re - a_expect).abs() <= 1e-8 * a_expect && a.im.abs() <= 1e-12);
    assert!((b.re - b_expect).abs() <= 1e-8 * b_expect && b.im.abs() <= 1e-12);
    let residual = (a.powu(3) - 27.0 * b.powu(2)).norm();
    assert!(residual <= 1e-8 * a.norm().powi(3));
    println!(
        "PASS eisenstein-closed-forms: g'(cyclic(1)) = ({:.6}, {:.6}), curve residual {:.2e}",
        a.re, b.re, residual
    );
}

#[test]
fn criterion_02_symmetry_zeros() {
    let g3 = eisenstein(&gaussian(), 1e-10).unwrap();
    assert!(g3.err <= 1e-10);
    assert!(g3.g3.norm() <= 1e-10);
    let g2 = eisenstein(&hexagonal(), 1e-10).unwrap();
    assert!(g2.err <= 1e-10);
    assert!(g2.g2.norm() <= 1e-10);
    println!(
        "PASS symmetry-zeros: |g3(Z[i])| = {:.2e}, |g2(hex)| = {:.2e}",
        g3.g3.norm(),
        g2.g2.norm()
    );
}

#[test]
fn criterion_03_equivariance() {
    let mut r = rng(0xe9_01);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let l = rand_lattice(&mut r, false);
        let s: f64 = r.gen_range(0.4..2.5);
        let base = eisenstein(&l, 1e-13).unwrap();
        let scaled = eisenstein(&l.scale(s.sqrt()), 1e-13).unwrap();
        let e2 = (scaled.g2 - base.g2 / (s * s)).norm() / base.g2.norm().max(1e-30);
        let e3 = (scaled.g3 - base.g3 / (s * s * s)).norm() / base.g3.norm().max(1e-30);
        worst = worst.max(e2).max(e3);
    }
    assert!(worst <= 1e-9, "worst relative error {worst}");
    println!("PASS equivariance: 20 samples, worst relative error {worst:.2e}");
}

#[test]
fn criterion_04_inversion_roundtrip() {
    let mut r = rng(0xe9_02);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let l = rand_lattice(&mut r, false);
        let (a, b) = extended_g_prime(&l).unwrap();
        let back = invert_g(a, b, 1e-7).unwrap();
        assert!(back.canonical_eq(&l, 1e-6), "lattice roundtrip failed: {l:?} vs {back:?}");
        let (a2, b2) = extended_g_prime(&back).unwrap();
        let res = ((a2 - a).norm_sqr() + (b2 - b).norm_sqr()).sqrt()
            / (1.0 + (a.norm_sqr() + b.norm_sqr()).sqrt());
        worst = worst.max(res);
    }
    for _ in 0..20 {
        let g = Complex64::from_polar(
            rand::Rng::gen_range(&mut r, 0.5..1.8),
            rand::Rng::gen_range(&mut r, 0.0..std::f64::consts::TAU),
        );
        let cy = ClosedSubgroupC::cyclic(g).unwrap();
        let (a, b) = extended_g_prime(&cy).unwrap();
        let back = invert_g(a, b, 1e-7).unwrap();
        assert!(back.canonical_eq(&cy, 1e-6), "cyclic roundtrip failed: {cy:?} vs {back:?}");
    }
    assert!(worst <= 1e-6);
    println!("PASS inversion-roundtrip: 50 lattices + 20 cyclics, worst residual {worst:.2e}");
}

#[test]
fn criterion_05_dual_involution_and_self_duality() {
    let mut r = rng(0xe9_03);
    let mut self_dual_seen = 0;
    for i in 0..200 {
        let g = rand_subgroup_c(&mut r, i);
        let dd = g.dual().dual();
        assert!(dd.canonical_eq(&g, 1e-7), "dual involution failed on {g:?}");
        let self_dual = g.dual().canonical_eq(&g, 1e-7);
        let expected = match &g {
            ClosedSubgroupC::Line { .. } => true,
            ClosedSubgroupC::Lattice { .. } => (g.covolume() - 1.0).abs() <= 1e-7,
            _ => false,
        };
        assert_eq!(self_dual, expected, "self-duality mismatch on {g:?}");
        if self_dual {
            self_dual_seen += 1;
        }
    }
    assert!(self_dual_seen >= 40, "sample must include self-dual strata");
    println!("PASS dual-involution: 200 samples, {self_dual_seen} self-dual (lines/unimodular)");
}

#[test]
fn criterion_06_metric_sanity() {
    let cfg = MetricConfig::default(); // tol = 1e-3
    let space = CSpace;
    // identity of indiscernibles at tolerance
    for g in [gaussian(), ClosedSubgroupC::Zero, ClosedSubgroupC::Full] {
        let d = chabauty_distance(&space, &g, &g, &cfg).unwrap().distance;
        assert!(d <= cfg.tol);
    }
    // the analytic value d({0}, C) = 1/sqrt(2)
    let d0 = chabauty_distance(&space, &ClosedSubgroupC::Zero, &ClosedSubgroupC::Full, &cfg)
        .unwrap()
        .distance;
    assert!(
        (d0 - 0.5f64.sqrt()).abs() <= cfg.tol,
        "d(0, C) = {d0}, expected {}",
        0.5f64.sqrt()
    );
    // symmetry (algorithmic) and triangle inequality on random triples
    let mut r = rng(0xe9_04);
    let mut worst_slack: f64 = f64::INFINITY;
    for i in 0..100 {
        let a = rand_subgroup_c(&mut r, i);
        let b = rand_subgroup_c(&mut r, i + 13);
        let c3 = rand_subgroup_c(&mut r, i + 29);
        let dab = chabauty_distance(&space, &a, &b, &cfg).unwrap().distance;
        if i % 10 == 0 {
            let dba = chabauty_distance(&space, &b, &a, &cfg).unwrap().distance;
            assert_eq!(dab, dba, "symmetry must be exact");
        }
        let dbc = chabauty_distance(&space, &b, &c3, &cfg).unwrap().distance;
        let dac = chabauty_distance(&space, &a, &c3, &cfg).unwrap().distance;
        for (x, y, z) in [(dab, dbc, dac), (dac, dbc, dab), (dab, dac, dbc)] {
            let slack = x + y + 2.0 * cfg.tol - z;
            assert!(slack >= 0.0, "triangle violated: {z} > {x} + {y} + 2 tol");
            worst_slack = worst_slack.min(slack);
        }
    }
    println!(
        "PASS metric-sanity: d(0,C) = {d0:.4}; 100 triangle triples, min slack {worst_slack:.4}"
    );
}

#[test]
fn criterion_07_mahler_verdicts() {
    // stretched family: min norm 1/k² -> 0, not certifiable at c = 0.9
    let stretched: Vec<ClosedSubgroupC> = (1..=20)
        .map(|k| ClosedSubgroupC::lattice(c(k as f64, 0.0), c(0.0, 1.0 / k as f64)).unwrap())
        .collect();
    let rep = mahler_verdict(&stretched, 1.5, 0.9).unwrap();
    assert!(!rep.certified);
    assert!(rep.min_norm_to_zero);
    assert!(rep.inf_min_norm <= 1.0 / 400.0 + 1e-12);
    // rotations of Z[i] certify with (C, c) = (1.5, 0.9)
    let rotations: Vec<ClosedSubgroupC> = (0..24)
        .map(|k| {
            let u = Complex64::from_polar(1.0, k as f64 * 0.11);
            ClosedSubgroupC::lattice(u, u * Complex64::i()).unwrap()
        })
        .collect();
    let rep2 = mahler_verdict(&rotations, 1.5, 0.9).unwrap();
    assert!(rep2.certified);
    assert!(!rep2.min_norm_to_zero && !rep2.covolume_to_infinity);
    println!(
        "PASS mahler-verdicts: stretched inf min-norm {:.2e} flagged; rotations certified \
         (sup covol {:.3}, inf min-norm {:.3})",
        rep.inf_min_norm, rep2.sup_covolume, rep2.inf_min_norm
    );
}

#[test]
fn criterion_08_heisenberg_algebra() {
    let mut r = rng(0xe9_05);
    let mut re = |den: i64| rat(r.gen_range(-40..=40), den);
    // 1000 random pairs: the commutator word equals the closed formula exactly
    for _ in 0..1000 {
        let x = HeisElementExact::new(re(4), re(3), re(5));
        let y = HeisElementExact::new(re(4), re(3), re(5));
        assert_eq!(x.commutator_word(&y), x.commutator(&y));
    }
    // 1000 random triples (automorphism, x, y): homomorphism property and the
    // det(M) central scaling of commutators, in exact arithmetic
    let mut checked = 0;
    while checked < 1000 {
        let m = [[re(3), re(3)], [re(3), re(3)]];
        let aut = HeisAutomorphismExact { matrix: m, inner: (re(2), re(2)) };
        if aut.det().is_zero() {
            continue;
        }
        let x = HeisElementExact::new(re(4), re(3), re(5));
        let y = HeisElementExact::new(re(4), re(3), re(5));
        assert_eq!(aut.apply(&x.mul(&y)), aut.apply(&x).mul(&aut.apply(&y)));
        let comm = aut.apply(&x).commutator(&aut.apply(&y));
        let expected = HeisElementExact::new(
            Rat::zero(),
            Rat::zero(),
            aut.det() * x.commutator(&y).t,
        );
        assert_eq!(comm, expected, "central scaling must be det(M)");
        checked += 1;
    }
    // diag(s, s) reproduces the dilation phi_s
    for s in [0.5, 2.0, 3.7] {
        let phi = HeisAutomorphism::dilation(s).unwrap();
        let x = HeisElement::new(Complex64::new(0.7, -1.1), 0.9);
        let lhs = phi.apply(x);
        let rhs = x.dilate(s).unwrap();
        assert!((lhs.z - rhs.z).norm() <= 1e-12 && (lhs.t - rhs.t).abs() <= 1e-12);
    }
    println!("PASS heisenberg-algebra: 1000 commutator pairs, 1000 automorphism triples exact");
}

#[test]
fn criterion_09_example_lattices_closed_forms() {
    for n in 1..=4i64 {
        let set = generate_box(&lambda_generators(n), rat(3, 1), rat(9, 1));
        let in_target: std::collections::HashSet<_> = set
            .into_iter()
            .filter(|e| e.t.clone().abs() <= rat(3, 1))
            .collect();
        let mut expected = std::collections::HashSet::new();
        for x in -3..=3i64 {
            for y in -3..=3i64 {
                for tnum in -(6 * n)..=(6 * n) {
                    let keep = if n % 2 == 0 {
                        tnum % 2 == 0
                    } else {
                        (x * y - tnum).rem_euclid(2) == 0
                    };
                    if keep {
                        expected.insert(HeisElementExact::new(
                            rat(x, 1),
                            rat(y, 1),
                            rat(tnum, 2 * n),
                        ));
                    }
                }
            }
        }
        assert_eq!(in_target, expected, "closed-form set mismatch at n = {n}");
        let l = make_lambda_n(n as u32);
        assert_eq!(l.center_index(), n as u32);
        assert!(l
            .commutator_subgroup()
            .canonical_eq(&ClosedSubgroupR::cyclic(1.0).unwrap(), 1e-12));
    }
    println!("PASS example-lattices: brute-force generation matches closed forms for n = 1..4");
}

#[test]
fn criterion_10_degenerating_family() {
    let cfg = MetricConfig::default();
    for k in 1..=32 {
        assert_eq!(chabauty::example11_lattice(1, k).center_index(), 1);
    }
    let limit = chabauty::example11_limit();
    let mut prev = f64::INFINITY;
    let mut dists = Vec::new();
    for k in [1u32, 2, 4, 8, 16, 32] {
        let lk = HeisSubgroup::lattice(chabauty::example11_lattice(1, k));
        let d = chabauty_distance(&HSpace, &lk, &limit, &cfg).unwrap().distance;
        assert!(d < prev, "distance not strictly decreasing at k = {k}: {d} vs {prev}");
        dists.push((k, d));
        prev = d;
    }
    let family: Vec<(u32, HeisSubgroup)> = [30u32, 31, 32, 48, 64]
        .iter()
        .map(|&k| (k, HeisSubgroup::lattice(chabauty::example11_lattice(1, k))))
        .collect();
    let verdict = limit_verdict(&HSpace, &family, &limit, 6.0, 0.25, 30, &cfg).unwrap();
    assert!(verdict.pass, "limit verdict failed: {:?}", verdict.witnesses);
    println!(
        "PASS degenerating-family: distances {:?} strictly decreasing; verdict passes at \
         (R, delta, K) = (6, 0.25, 30)",
        dists
    );
}

#[test]
fn criterion_11_sphere_map() {
    let tol = 1e-8;
    assert_eq!(forward_f(SpherePoint::origin(), tol).unwrap(), ClosedSubgroupC::Zero);
    assert_eq!(forward_f(SpherePoint::Infinity, tol).unwrap(), ClosedSubgroupC::Full);
    // duality equivariance on 200 samples across radii
    let mut r = rng(0xe9_06);
    for _ in 0..200 {
        let a = c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let b = c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let scale = r.gen_range(0.25..2.0) / (a.norm_sqr() + b.norm_sqr()).sqrt().max(1e-9);
        let x = SpherePoint::finite(a * scale, b * scale);
        let fx = forward_f(x, tol).unwrap();
        let fsx = forward_f(sigma(x), tol).unwrap();
        assert!(
            fsx.canonical_eq(&fx.dual(), 1e-5),
            "f(sigma x) != dual(f x) at {x:?}"
        );
    }
    // unimodularity on the sphere off the knot
    let mut worst: f64 = 0.0;
    let mut produced = 0;
    while produced < 100 {
        let a = c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let b = c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if n < 1e-3 {
            continue;
        }
        let x = SpherePoint::finite(a / n, b / n);
        if chabauty::curve_membership(x, 1e-6) != CurvePosition::Off {
            continue;
        }
        let g = forward_f(x, tol).unwrap();
        assert_eq!(g.stratum_name(), "lattice");
        worst = worst.max((g.covolume() - 1.0).abs());
        produced += 1;
    }
    assert!(worst <= 1e-6, "covolume drift {worst}");
    // knot points map to lines
    for k in 0..12 {
        let (a, b) = trefoil_point(k as f64 * std::f64::consts::TAU / 12.0);
        let g = forward_f(SpherePoint::finite(a, b), tol).unwrap();
        assert_eq!(g.stratum_name(), "line");
    }
    // inverse round-trips the poles
    assert_eq!(inverse_f(&ClosedSubgroupC::Zero, tol).unwrap(), SpherePoint::origin());
    assert_eq!(inverse_f(&ClosedSubgroupC::Full, tol).unwrap(), SpherePoint::Infinity);
    println!(
        "PASS sphere-map: poles, 200 duality samples, 100 unimodular sphere samples \
         (worst covolume drift {worst:.2e}), 12 knot points to lines"
    );
}

#[test]
fn criterion_12_density_witnesses() {
    let cfg = MetricConfig::default();
    let pullback = HeisSubgroup::pullback_center(&gaussian());
    let mut indices = Vec::new();
    for eps in [0.5, 0.2, 0.1] {
        let witness = lattice_witness_near_pullback(&gaussian(), eps).unwrap();
        let n = witness.center_index();
        let d = chabauty_distance(
            &HSpace,
            &HeisSubgroup::lattice(witness),
            &pullback,
            &cfg,
        )
        .unwrap()
        .distance;
        assert!(d <= eps, "witness at eps = {eps} has distance {d}");
        indices.push((eps, n, d));
    }
    assert!(indices[2].1 > indices[0].1, "index must grow as eps shrinks");
    println!("PASS density-witnesses: (eps, n, distance) = {indices:?}");
}

#[test]
fn criterion_13_dilation_limits() {
    let cfg = MetricConfig::default();
    // phi_{2^j}(Lambda_1) -> {e}
    let expanding: Vec<(u32, HeisSubgroup)> = (0..=6)
        .map(|j| {
            let s = 2f64.powi(j as i32);
            (j, HeisSubgroup::lattice(make_lambda_n(1).dilate(s).unwrap()))
        })
        .collect();
    let to_identity = limit_verdict(
        &HSpace,
        &expanding,
        &HeisSubgroup::Trivial,
        3.0,
        0.25,
        3,
        &cfg,
    )
    .unwrap();
    assert!(to_identity.pass, "{:?}", to_identity.witnesses);
    // phi_{2^-j}(Lambda_1) -> H
    let shrinking: Vec<(u32, HeisSubgroup)> = (0..=6)
        .map(|j| {
            let s = 2f64.powi(-(j as i32));
            (j, HeisSubgroup::lattice(make_lambda_n(1).dilate(s).unwrap()))
        })
        .collect();
    let full = HeisSubgroup::pullback_center(&ClosedSubgroupC::Full);
    let to_full = limit_verdict(&HSpace, &shrinking, &full, 3.0, 0.25, 3, &cfg).unwrap();
    assert!(to_full.pass, "{:?}", to_full.witnesses);
    // the compactness verdicts see the two degenerations
    let shrink_lattices: Vec<_> =
        (1..=5).map(|j| make_lambda_n(1).dilate(2f64.powi(-j)).unwrap()).collect();
    let rep = heis_mahler_verdict(&shrink_lattices, 2.0, 0.5).unwrap();
    assert!(!rep.certified && !rep.identity_violations.is_empty());
    let grow_lattices: Vec<_> =
        (1..=5).map(|j| make_lambda_n(1).dilate(2f64.powi(j)).unwrap()).collect();
    let rep = heis_mahler_verdict(&grow_lattices, 2.0, 0.5).unwrap();
    assert!(!rep.certified && rep.sup_volume > 2.0 && rep.identity_violations.is_empty());
    println!(
        "PASS dilation-limits: verdicts pass at (R, delta, K) = (3, 0.25, 3) in both directions"
    );
}
