//! JSON descriptors for subgroups of R, C and H, shared by the CLI and any
//! external callers. Numbers are accepted either as JSON numbers or as exact
//! strings (`"p/q"`, `"1/2+3/4√2"`, `"2sqrt(5)"`); generator lists for
//! closure classification require the exact string form, since the closure
//! type is discontinuous in the generators.

use crate::error::SubgroupError;
use crate::euclid::{closure_of_generated, ClosedSubgroupC, ClosedSubgroupR};
use crate::exact::{parse_exact, ExactComplex};
use crate::heis::{HeisLattice, HeisSubgroup};
use num::complex::Complex64;
use serde_json::{json, Map, Value};

fn bad(msg: impl Into<String>) -> SubgroupError {
    SubgroupError::Parse(msg.into())
}

/// Parse a scalar that may be a JSON number or an exact string.
pub fn number_from(v: &Value) -> Result<f64, SubgroupError> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| bad("non-finite number")),
        Value::String(s) => Ok(parse_exact(s)?.to_f64()),
        other => Err(bad(format!("expected number or exact string, got {other}"))),
    }
}

fn complex_from(v: &Value) -> Result<Complex64, SubgroupError> {
    let arr = v.as_array().ok_or_else(|| bad("expected [re, im]"))?;
    if arr.len() != 2 {
        return Err(bad("expected [re, im] with two entries"));
    }
    Ok(Complex64::new(number_from(&arr[0])?, number_from(&arr[1])?))
}

fn complex_to(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn exact_complex_from(v: &Value) -> Result<ExactComplex, SubgroupError> {
    let arr = v.as_array().ok_or_else(|| bad("expected [re, im]"))?;
    if arr.len() != 2 {
        return Err(bad("expected [re, im] with two entries"));
    }
    let field = |x: &Value| -> Result<_, SubgroupError> {
        match x {
            Value::String(s) => parse_exact(s),
            other => Err(SubgroupError::ExactInputRequired(format!(
                "generator coordinates must be exact strings, got {other}"
            ))),
        }
    };
    Ok(ExactComplex::new(field(&arr[0])?, field(&arr[1])?))
}

// ---------------------------------------------------------------------------
// Subgroups of R
// ---------------------------------------------------------------------------

pub fn subgroup_r_to_json(g: &ClosedSubgroupR) -> Value {
    match g {
        ClosedSubgroupR::Trivial => json!({"kind": "trivial"}),
        ClosedSubgroupR::Cyclic { step } => json!({"kind": "cyclic", "step": step}),
        ClosedSubgroupR::Full => json!({"kind": "full"}),
    }
}

pub fn subgroup_r_from_json(v: &Value) -> Result<ClosedSubgroupR, SubgroupError> {
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    // compact forms: {"trivial":true}, {"cyclic":"3/2"}, {"full":true}
    if let Some(s) = obj.get("cyclic") {
        return ClosedSubgroupR::cyclic(number_from(s)?);
    }
    if obj.get("trivial").is_some() {
        return Ok(ClosedSubgroupR::Trivial);
    }
    if obj.get("full").is_some() {
        return Ok(ClosedSubgroupR::Full);
    }
    match obj.get("kind").and_then(Value::as_str) {
        Some("trivial") => Ok(ClosedSubgroupR::Trivial),
        Some("full") => Ok(ClosedSubgroupR::Full),
        Some("cyclic") => {
            let step = obj.get("step").ok_or_else(|| bad("cyclic needs a step"))?;
            ClosedSubgroupR::cyclic(number_from(step)?)
        }
        _ => Err(bad("unknown subgroup of R")),
    }
}

// ---------------------------------------------------------------------------
// Subgroups of C
// ---------------------------------------------------------------------------

pub fn subgroup_c_to_json(g: &ClosedSubgroupC) -> Value {
    match g {
        ClosedSubgroupC::Zero => json!({"stratum": "zero"}),
        ClosedSubgroupC::Full => json!({"stratum": "full"}),
        ClosedSubgroupC::Cyclic { generator } => {
            json!({"stratum": "cyclic", "generator": complex_to(*generator)})
        }
        ClosedSubgroupC::Line { angle } => json!({"stratum": "line", "angle": angle}),
        ClosedSubgroupC::LineCyclic { angle, spacing } => {
            json!({"stratum": "line-cyclic", "angle": angle, "spacing": spacing})
        }
        ClosedSubgroupC::Lattice { basis } => json!({
            "stratum": "lattice",
            "basis": [complex_to(basis[0]), complex_to(basis[1])],
            "covolume": g.covolume(),
        }),
    }
}

pub fn subgroup_c_from_json(v: &Value) -> Result<ClosedSubgroupC, SubgroupError> {
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    if let Some(gens) = obj.get("gens") {
        let arr = gens.as_array().ok_or_else(|| bad("gens must be an array"))?;
        let gens: Vec<ExactComplex> =
            arr.iter().map(exact_complex_from).collect::<Result<_, _>>()?;
        return closure_of_generated(&gens);
    }
    match obj.get("stratum").and_then(Value::as_str) {
        Some("zero") => Ok(ClosedSubgroupC::Zero),
        Some("full") => Ok(ClosedSubgroupC::Full),
        Some("cyclic") => {
            let g = obj.get("generator").ok_or_else(|| bad("cyclic needs a generator"))?;
            ClosedSubgroupC::cyclic(complex_from(g)?)
        }
        Some("line") => {
            if let Some(a) = obj.get("angle") {
                let angle = number_from(a)?;
                ClosedSubgroupC::line_through(Complex64::from_polar(1.0, angle))
            } else {
                let d = obj.get("direction").ok_or_else(|| bad("line needs angle or direction"))?;
                ClosedSubgroupC::line_through(complex_from(d)?)
            }
        }
        Some("line-cyclic") => {
            let dir = if let Some(a) = obj.get("angle") {
                Complex64::from_polar(1.0, number_from(a)?)
            } else {
                complex_from(
                    obj.get("direction")
                        .ok_or_else(|| bad("line-cyclic needs angle or direction"))?,
                )?
            };
            let tr = if let Some(s) = obj.get("spacing") {
                Complex64::i() * dir * number_from(s)?
            } else {
                complex_from(
                    obj.get("transverse")
                        .ok_or_else(|| bad("line-cyclic needs spacing or transverse"))?,
                )?
            };
            ClosedSubgroupC::line_cyclic(dir, tr)
        }
        Some("lattice") => {
            let b = obj
                .get("basis")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("lattice needs a basis"))?;
            if b.len() != 2 {
                return Err(bad("lattice basis needs two vectors"));
            }
            ClosedSubgroupC::lattice(complex_from(&b[0])?, complex_from(&b[1])?)
        }
        _ => Err(bad("unknown subgroup of C (need `stratum` or `gens`)")),
    }
}

// ---------------------------------------------------------------------------
// Subgroups of H
// ---------------------------------------------------------------------------

pub fn heis_lattice_to_json(l: &HeisLattice) -> Value {
    let (z, zp) = l.basis();
    let (t, tp) = l.lifts();
    json!({
        "kind": "heis-lattice",
        "z": complex_to(z),
        "zp": complex_to(zp),
        "t": t,
        "tp": tp,
        "n": l.center_index(),
    })
}

pub fn heis_lattice_from_json(v: &Value) -> Result<HeisLattice, SubgroupError> {
    let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
    let z = complex_from(obj.get("z").ok_or_else(|| bad("needs z"))?)?;
    let zp = complex_from(obj.get("zp").ok_or_else(|| bad("needs zp"))?)?;
    let t = obj.get("t").map(number_from).transpose()?.unwrap_or(0.0);
    let tp = obj.get("tp").map(number_from).transpose()?.unwrap_or(0.0);
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("needs a positive integer n"))? as u32;
    HeisLattice::new(z, zp, t, tp, n)
}

pub fn heis_to_json(s: &HeisSubgroup) -> Value {
    match s {
        HeisSubgroup::Trivial => json!({"kind": "trivial"}),
        HeisSubgroup::Central(r) => json!({"kind": "central", "subgroup": subgroup_r_to_json(r)}),
        HeisSubgroup::Planar { angle, plane } => {
            let dir = Complex64::from_polar(1.0, *angle);
            json!({
                "kind": "planar",
                "direction": complex_to(dir),
                "plane": subgroup_c_to_json(plane),
            })
        }
        HeisSubgroup::PullbackCenter(c) => {
            json!({"kind": "pullback", "projection": subgroup_c_to_json(c)})
        }
        HeisSubgroup::LatticeN(l) => heis_lattice_to_json(l),
    }
}

pub fn heis_from_json(v: &Value) -> Result<HeisSubgroup, SubgroupError> {
    let obj: &Map<String, Value> = v.as_object().ok_or_else(|| bad("expected an object"))?;
    match obj.get("kind").and_then(Value::as_str) {
        Some("trivial") => Ok(HeisSubgroup::Trivial),
        Some("central") => {
            let r = subgroup_r_from_json(
                obj.get("subgroup").ok_or_else(|| bad("central needs a subgroup"))?,
            )?;
            Ok(HeisSubgroup::central(r))
        }
        Some("planar") => {
            let dir = complex_from(obj.get("direction").ok_or_else(|| bad("needs direction"))?)?;
            let plane = subgroup_c_from_json(
                obj.get("plane").ok_or_else(|| bad("planar needs a plane subgroup"))?,
            )?;
            HeisSubgroup::planar(dir, plane)
        }
        Some("pullback") => {
            let c = subgroup_c_from_json(
                obj.get("projection").ok_or_else(|| bad("pullback needs a projection"))?,
            )?;
            Ok(HeisSubgroup::pullback_center(&c))
        }
        Some("heis-lattice") => Ok(HeisSubgroup::LatticeN(heis_lattice_from_json(v)?)),
        _ => Err(bad("unknown subgroup of H")),
    }
}
