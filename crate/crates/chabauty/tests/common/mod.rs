//! Shared helpers for the integration suites: seeded random subgroup
//! generators and an exact breadth-first subgroup-generation oracle.

#![allow(dead_code)]

use chabauty::exact::{rat, Rat};
use chabauty::{ClosedSubgroupC, HeisElementExact};
use num::complex::Complex64;
use num::Signed;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::HashSet;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn gaussian() -> ClosedSubgroupC {
    ClosedSubgroupC::lattice(c(1.0, 0.0), c(0.0, 1.0)).unwrap()
}

pub fn hexagonal() -> ClosedSubgroupC {
    ClosedSubgroupC::lattice(c(1.0, 0.0), Complex64::from_polar(1.0, std::f64::consts::PI / 3.0))
        .unwrap()
}

/// Random lattice with a well-conditioned reduced shape; optionally rescaled
/// to covolume one.
pub fn rand_lattice(r: &mut StdRng, unimodular: bool) -> ClosedSubgroupC {
    let tau = c(r.gen_range(-0.5..0.5), r.gen_range(0.95..2.0));
    let omega = Complex64::from_polar(
        r.gen_range(0.7..1.4),
        r.gen_range(0.0..std::f64::consts::TAU),
    );
    let l = ClosedSubgroupC::lattice(omega, omega * tau).unwrap();
    if unimodular {
        l.scale(1.0 / l.covolume().sqrt())
    } else {
        l
    }
}

/// Random subgroup over all six strata. Stratum selected by `pick % 8`:
/// lattices appear twice (generic and unimodular).
pub fn rand_subgroup_c(r: &mut StdRng, pick: usize) -> ClosedSubgroupC {
    let unit = Complex64::from_polar(1.0, r.gen_range(0.0..std::f64::consts::TAU));
    match pick % 8 {
        0 => ClosedSubgroupC::Zero,
        1 => ClosedSubgroupC::Full,
        2 => ClosedSubgroupC::cyclic(unit * r.gen_range(0.5..1.8)).unwrap(),
        3 => ClosedSubgroupC::line_through(unit).unwrap(),
        4 => ClosedSubgroupC::line_cyclic(unit, unit * Complex64::i() * r.gen_range(0.5..1.8))
            .unwrap(),
        5 | 6 => rand_lattice(r, false),
        _ => rand_lattice(r, true),
    }
}

/// Exact breadth-first closure of the subgroup generated by `gens` inside the
/// coordinate box `|x|, |y| <= bz`, `|t| <= bt`.
pub fn generate_box(gens: &[HeisElementExact], bz: Rat, bt: Rat) -> HashSet<HeisElementExact> {
    let inside = |e: &HeisElementExact| {
        e.x.clone().abs() <= bz && e.y.clone().abs() <= bz && e.t.clone().abs() <= bt
    };
    let mut set = HashSet::new();
    set.insert(HeisElementExact::identity());
    let mut frontier: Vec<HeisElementExact> = set.iter().cloned().collect();
    let mut steps: Vec<HeisElementExact> = Vec::new();
    for g in gens {
        steps.push(g.clone());
        steps.push(g.inverse());
    }
    while let Some(e) = frontier.pop() {
        for s in &steps {
            let nxt = e.mul(s);
            if inside(&nxt) && set.insert(nxt.clone()) {
                frontier.push(nxt);
            }
        }
    }
    set
}

pub fn lambda_generators(n: i64) -> Vec<HeisElementExact> {
    vec![
        HeisElementExact::new(rat(1, 1), rat(0, 1), rat(0, 1)),
        HeisElementExact::new(rat(0, 1), rat(1, 1), rat(0, 1)),
        HeisElementExact::new(rat(0, 1), rat(0, 1), rat(1, n)),
    ]
}
