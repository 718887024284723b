//! JSON forms of catalogs, frames, commutant results and reports. Scalars are
//! written in the canonical text that [`crate::parse`] reads back.

use std::collections::{BTreeMap, BTreeSet};

use comdyn_core::commutant::{
    CommutantResult, CommutationIdeal, Completeness, MorphismVerdict, MultiplierReport, SearchMethod,
};
use comdyn_core::dynamics::{Certification, HeightValue, InvarianceReport, OrbitRecord, OrbitStatus, PreperiodicCatalog};
use comdyn_core::field::RootVerdict;
use comdyn_core::poly::default_names;
use comdyn_core::veronese::VeroneseFrame;
use comdyn_core::{FieldElement, FieldSpec, Point, PolyMap};
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::parse::parse_scalar;

pub fn point_json(p: &[FieldElement]) -> Value {
    Value::from(p.iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn points_json<'a>(ps: impl IntoIterator<Item = &'a Point>) -> Value {
    Value::from(ps.into_iter().map(|p| point_json(p)).collect::<Vec<_>>())
}

fn height_json(h: &HeightValue) -> Value {
    json!({ "log": h.log(), "max_abs": h.max_abs().to_string() })
}

pub fn cert_text(c: &Certification) -> String {
    match c {
        Certification::Exact => String::from("exact"),
        Certification::RelativeToBound(b) => format!("bound:{}", b.log()),
    }
}

fn parse_cert(text: &str) -> Result<Certification> {
    if text == "exact" {
        return Ok(Certification::Exact);
    }
    let b = text
        .strip_prefix("bound:")
        .and_then(|b| b.parse::<f64>().ok())
        .ok_or_else(|| CliError::Format(format!("unknown certification `{text}`")))?;
    Ok(Certification::RelativeToBound(HeightValue::from_log(b)?))
}

/// One line per stratum. The field is that of the catalog, which for a
/// torus catalog is the cyclotomic field the map was lifted to.
pub fn catalog_lines(cat: &PreperiodicCatalog) -> Vec<String> {
    let cert = cert_text(cat.certification());
    let field = cat.map().field().to_string();
    cat.strata()
        .iter()
        .map(|(&(m, l), pts)| {
            json!({ "field": field, "m": m, "l": l, "points": points_json(pts), "cert": cert }).to_string()
        })
        .collect()
}

/// Reads catalog lines for the map `f`; every point and stratum is re-verified.
pub fn read_catalog(text: &str, f: &PolyMap) -> Result<PreperiodicCatalog> {
    let spec = f.field();
    let mut strata: BTreeMap<(usize, usize), BTreeSet<Point>> = BTreeMap::new();
    let mut cert = None;
    for (k, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let bad = |what: &str| CliError::Format(format!("line {}: {what}", k + 1));
        let v: Value = serde_json::from_str(line).map_err(|e| bad(&e.to_string()))?;
        let m = v["m"].as_u64().ok_or_else(|| bad("missing m"))? as usize;
        let l = v["l"].as_u64().ok_or_else(|| bad("missing l"))? as usize;
        let c = parse_cert(v["cert"].as_str().ok_or_else(|| bad("missing cert"))?)?;
        if cert.as_ref().is_some_and(|old| *old != c) {
            return Err(bad("certification differs between lines"));
        }
        cert = Some(c);
        let pts = v["points"].as_array().ok_or_else(|| bad("missing points"))?;
        let set = strata.entry((m, l)).or_default();
        for p in pts {
            set.insert(json_point(p, spec).map_err(|e| bad(&e.to_string()))?);
        }
    }
    let cert = cert.unwrap_or(Certification::Exact);
    Ok(PreperiodicCatalog::from_strata(f.clone(), String::from("file"), cert, strata)?)
}

fn json_point(v: &Value, spec: FieldSpec) -> Result<Point> {
    let coords = v.as_array().ok_or_else(|| CliError::Format(String::from("a point must be an array")))?;
    coords
        .iter()
        .map(|c| match c.as_str() {
            Some(s) => parse_scalar(s, spec),
            None => Err(CliError::Format(String::from("coordinates must be strings"))),
        })
        .collect()
}

pub fn frame_json(frame: &VeroneseFrame) -> Value {
    let names = default_names(frame.dim());
    let basis: Vec<String> = frame
        .basis()
        .iter()
        .map(|m| {
            let s = m.fmt_with(&names);
            if s.is_empty() {
                String::from("1")
            } else {
                s
            }
        })
        .collect();
    let matrix: Vec<Value> = frame.matrix().iter().map(|row| point_json(row)).collect();
    json!({
        "field": frame.field().to_string(),
        "n": frame.dim(),
        "d": frame.degree(),
        "basis": basis,
        "points": points_json(frame.points()),
        "matrix": matrix,
        "determinant": frame.determinant().to_string(),
    })
}

/// Rebuilds a frame from its JSON and checks the stored matrix against it.
pub fn read_frame(text: &str, spec: FieldSpec) -> Result<VeroneseFrame> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Format(e.to_string()))?;
    let d = v["d"].as_u64().ok_or_else(|| CliError::Format(String::from("missing d")))? as u32;
    let pts = v["points"].as_array().ok_or_else(|| CliError::Format(String::from("missing points")))?;
    let points = pts.iter().map(|p| json_point(p, spec)).collect::<Result<Vec<_>>>()?;
    let frame = VeroneseFrame::from_points(points, d)?;
    if let Some(rows) = v["matrix"].as_array() {
        let stored = rows.iter().map(|r| json_point(r, spec)).collect::<Result<Vec<_>>>()?;
        if stored != *frame.matrix() {
            return Err(CliError::Format(String::from("stored matrix does not match the points")));
        }
    }
    Ok(frame)
}

pub fn result_json(r: &CommutantResult) -> Value {
    let method = match &r.method {
        SearchMethod::CatalogSearch { catalog, certification, frame, m_d, v_d } => json!({
            "kind": "catalog",
            "catalog": catalog,
            "cert": cert_text(certification),
            "frame": points_json(frame),
            "m_d": m_d,
            "v_d": v_d,
        }),
        SearchMethod::CoefficientGrid { coeff_bound, denom_bound, restricted_support } => json!({
            "kind": "grid",
            "coeff_bound": coeff_bound,
            "denom_bound": denom_bound,
            "restricted_support": restricted_support,
        }),
    };
    let completeness = match r.completeness {
        Completeness::CompleteForMethod => "complete-for-method",
        Completeness::LowerBoundOnly => "lower-bound-only",
    };
    json!({
        "f": r.f.to_text(),
        "field": r.f.field().to_string(),
        "d": r.d,
        "method": method,
        "completeness": completeness,
        "explored": r.explored.to_string(),
        "counting_bound": r.counting_bound.as_ref().map(ToString::to_string),
        "count": r.maps.len(),
        "maps": r.texts(),
    })
}

pub fn ideal_json(ideal: &CommutationIdeal) -> Value {
    json!({
        "field": ideal.field().to_string(),
        "projective": ideal.is_projective(),
        "d": ideal.degree(),
        "unknowns": ideal.labels(),
        "equations": ideal.equation_texts(),
    })
}

pub fn orbit_json(rec: &OrbitRecord) -> Value {
    let mut v = json!({ "base": point_json(&rec.base), "points": points_json(&rec.points) });
    match &rec.status {
        OrbitStatus::Preperiodic { m, l } => {
            v["status"] = json!("preperiodic");
            v["m"] = json!(m);
            v["l"] = json!(l);
        }
        OrbitStatus::EscapedHeightBound { bound, step, height } => {
            v["status"] = json!("escaped-height-bound");
            v["bound"] = height_json(bound);
            v["step"] = json!(step);
            v["height"] = height_json(height);
        }
        OrbitStatus::StepLimitReached => v["status"] = json!("step-limit"),
    }
    v
}

pub fn invariance_json(rep: &InvarianceReport) -> Value {
    let violations: Vec<Value> = rep
        .violations
        .iter()
        .map(|v| {
            json!({
                "point": point_json(&v.point),
                "stratum": [v.stratum.0, v.stratum.1],
                "image": point_json(&v.image),
                "image_stratum": v.image_stratum.map(|s| [s.0, s.1]),
            })
        })
        .collect();
    json!({
        "containment": rep.containment,
        "violations": violations,
        "surjective": rep.surjective,
        "missing_from_image": points_json(&rep.missing_from_image),
        "pre_f_in_pre_g": rep.pre_f_in_pre_g,
    })
}

fn root_json(v: &RootVerdict) -> Value {
    match v {
        RootVerdict::Exists(r) => json!({ "verdict": "exists", "root": r.to_string() }),
        RootVerdict::Absent => json!({ "verdict": "absent" }),
        RootVerdict::Undetermined => json!({ "verdict": "undetermined" }),
    }
}

pub fn multiplier_json(rep: &MultiplierReport) -> Value {
    let mut v = json!({
        "point": point_json(&rep.point),
        "period": rep.period,
        "cycle": points_json(&rep.cycle),
        "multiplier": if rep.critical { json!("critical") } else { json!(rep.multiplier.to_string()) },
    });
    if let Some(c) = &rep.companion {
        let roots: Vec<Value> = c
            .root_checks
            .iter()
            .map(|(k, r)| {
                let mut o = root_json(r);
                o["k"] = json!(k);
                o
            })
            .collect();
        v["companion"] = json!({
            "image": point_json(&c.image),
            "image_period": c.image_period,
            "l0": c.l0,
            "image_multiplier": c.image_multiplier.to_string(),
            "critical_for_g": c.critical_for_g,
            "relation_holds": c.relation_holds,
            "root_checks": roots,
            "preservation_certified": c.preservation_certified,
            "period_preserved": c.period_preserved,
        });
    }
    v
}

pub fn morphism_json(v: &MorphismVerdict) -> Value {
    match v {
        MorphismVerdict::Morphism => json!({ "verdict": "morphism" }),
        MorphismVerdict::NotMorphism { witness } => {
            json!({ "verdict": "not-morphism", "witness": witness.as_ref().map(|w| point_json(w)) })
        }
        MorphismVerdict::ProbablyMorphism { primes } => json!({ "verdict": "probably-morphism", "primes": primes }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_affine;
    use comdyn_core::dynamics::{build_catalog, CatalogConfig, CatalogStrategy};
    use comdyn_core::veronese::find_general_position;

    #[test]
    fn catalog_round_trip() {
        let q = FieldSpec::rational();
        let f = parse_affine("(x^2, y^2)", q).unwrap();
        let b = HeightValue::from_log(0.0).unwrap();
        let cat = build_catalog(&f, &CatalogStrategy::BoundedHeight(b), &CatalogConfig::default()).unwrap();
        let lines = catalog_lines(&cat);
        assert!(lines[0].contains("\"cert\":\"bound:0\""));
        let back = read_catalog(&lines.join("\n"), &f).unwrap();
        assert_eq!(back.strata(), cat.strata());
        assert_eq!(back.certification(), cat.certification());
    }

    #[test]
    fn tampered_catalog_is_rejected() {
        let q = FieldSpec::rational();
        let f = parse_affine("(x^2, y^2)", q).unwrap();
        let line = r#"{"m":1,"l":0,"points":[["2","0"]],"cert":"exact"}"#;
        assert!(read_catalog(line, &f).is_err());
    }

    #[test]
    fn frame_round_trip() {
        let z = FieldSpec::cyclotomic(5).unwrap();
        let pts = (0..5u64).flat_map(|a| (0..5u64).map(move |b| (a, b))).map(|(a, b)| {
            vec![FieldElement::zeta_pow(z, a).unwrap(), FieldElement::zeta_pow(z, b).unwrap()]
        });
        let frame = find_general_position(pts, 2, 2, z).unwrap();
        let text = frame_json(&frame).to_string();
        let back = read_frame(&text, z).unwrap();
        assert_eq!(back.points(), frame.points());
        assert_eq!(back.inverse(), frame.inverse());
    }
}
