//! Scripted reproduction of the worked examples. Each row restates a claim,
//! recomputes it exactly, and records whether the computation agrees.

use comdyn_core::commutant::{
    automorphisms, commutation_ideal, commutes_affine, is_morphism, multiplier, CatalogSearch, GridSearch, GridSpec,
    IdealTarget, MorphismVerdict, CANDIDATE_CAP, DEFAULT_PRIMES, EQUATION_CAP,
};
use comdyn_core::dynamics::{
    build_catalog, orbit, verify_invariance, weil_height, CatalogConfig, CatalogStrategy, HeightValue, OrbitStatus,
};
use comdyn_core::field::RootVerdict;
use comdyn_core::veronese::{find_general_position, interpolate_map};
use comdyn_core::{FieldElement, FieldSpec, Monomial, Point, PolyMap};
use serde_json::{json, Value};

use crate::cli::integer_stream;
use crate::error::Result;
use crate::parallel::run_parallel;
use crate::parse::{parse_affine, parse_map, parse_point, parse_scalar, point_text};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The computation contradicts the stated value.
    Discrepancy,
}

impl Status {
    fn text(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Discrepancy => "discrepancy",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub group: &'static str,
    pub claim: String,
    pub status: Status,
    pub detail: String,
}

impl Row {
    pub fn to_json(&self) -> Value {
        json!({ "group": self.group, "claim": self.claim, "status": self.status.text(), "detail": self.detail })
    }
}

fn check(group: &'static str, claim: &str, ok: bool, detail: String) -> Row {
    Row { group, claim: String::from(claim), status: if ok { Status::Pass } else { Status::Fail }, detail }
}

/// A stated value that the exact computation does not reproduce. The row is
/// a discrepancy, never a failure, since the computation is the reference.
fn stated(group: &'static str, claim: &str, agrees: bool, detail: String) -> Row {
    Row { group, claim: String::from(claim), status: if agrees { Status::Pass } else { Status::Discrepancy }, detail }
}

pub fn render_table(rows: &[Row]) -> Vec<String> {
    let w = rows.iter().map(|r| r.claim.chars().count()).max().unwrap_or(0);
    let mut out = vec![format!("{:<13} {:<w$}  {:<12} detail", "group", "claim", "status")];
    for r in rows {
        out.push(format!("{:<13} {:<w$}  {:<12} {}", r.group, r.claim, r.status.text(), r.detail));
    }
    out
}

/// Names accepted by [`paper_examples`], in run order.
pub const GROUPS: [&str; 5] = ["squares", "torus", "endomorphisms", "finiteness", "infinite"];

/// Runs the named groups (all of them for an empty list).
pub fn paper_examples(only: &[String], threads: Option<usize>) -> Result<Vec<Row>> {
    if let Some(bad) = only.iter().find(|g| !GROUPS.contains(&g.as_str())) {
        return Err(crate::error::CliError::Usage(format!("unknown group `{bad}` (one of {})", GROUPS.join(", "))));
    }
    let wanted = |g: &str| only.is_empty() || only.iter().any(|o| o == g);
    let mut rows = Vec::new();
    if wanted("squares") {
        squares_and_skew_product(&mut rows)?;
    }
    if wanted("torus") {
        torus_example(&mut rows)?;
    }
    if wanted("endomorphisms") {
        endomorphism_examples(&mut rows)?;
    }
    if wanted("finiteness") {
        finiteness_examples(&mut rows, threads)?;
    }
    if wanted("infinite") {
        infinite_commutant(&mut rows, threads)?;
    }
    Ok(rows)
}

fn squares_and_skew_product(rows: &mut Vec<Row>) -> Result<()> {
    let q = FieldSpec::rational();
    let f = parse_affine("(x^2, y^2)", q)?;
    let g = parse_affine("(x, x*y)", q)?;
    rows.push(check("squares", "f = (x^2, y^2) and g = (x, xy) commute", commutes_affine(&f, &g)?, String::new()));

    let b = HeightValue::from_log(0.0)?;
    let cat = build_catalog(&f, &CatalogStrategy::BoundedHeight(b.clone()), &CatalogConfig::default())?;
    let rep = verify_invariance(&g, &cat)?;
    rows.push(check(
        "squares",
        "g(Pre(f)) ⊂ Pre(f) and Pre(f) ⊂ Pre(g)",
        rep.containment && rep.pre_f_in_pre_g,
        format!("{} catalog points of height 0", cat.len()),
    ));
    let p01 = parse_point("0,1", q)?;
    rows.push(check(
        "squares",
        "(0, 1) ∈ Pre(f) \\ g(Pre(f))",
        cat.contains(&p01) && rep.missing_from_image.contains(&p01),
        format!("missing from g(Pre(f)): {}", rep.missing_from_image.iter().map(|p| point_text(p)).collect::<Vec<_>>().join(" ")),
    ));
    let p02 = parse_point("0,2", q)?;
    let under_g = orbit(&g, &p02, 100, None)?;
    let under_f = orbit(&f, &p02, 100, Some(&b))?;
    rows.push(check(
        "squares",
        "(0, 2) ∈ Pre(g) \\ Pre(f)",
        under_g.is_preperiodic() && matches!(under_f.status, OrbitStatus::EscapedHeightBound { .. }),
        format!("g-orbit {:?}; f-orbit leaves height 0", under_g.status),
    ));
    Ok(())
}

fn torus_example(rows: &mut Vec<Row>) -> Result<()> {
    let z7 = FieldSpec::cyclotomic(7)?;
    let f = parse_affine("(y^2, x^2)", z7)?;
    let g = parse_affine("(x^2*y, x*y^2)", z7)?;
    let g2 = parse_affine("(x*y^2, x^2*y)", z7)?;
    let p = parse_point("zeta, zeta^2", z7)?;
    rows.push(check("torus", "f = (y^2, x^2) and g = (x^2 y, x y^2) commute", commutes_affine(&f, &g)?, String::new()));

    let rep = multiplier(&f, &p, Some(&g), 1000)?;
    rows.push(stated("torus", "(ζ, ζ^2) has f-period 3", rep.period == 3, format!("computed period {}", rep.period)));
    let lambda_stated = parse_scalar("-4^3*zeta^6", z7)?;
    rows.push(stated(
        "torus",
        "λ_f(ζ, ζ^2) = -4^3 ζ^6",
        rep.multiplier == lambda_stated,
        format!("computed λ = {}", rep.multiplier),
    ));
    let minus_one = FieldElement::from_int(z7, -1);
    let cube = minus_one.kth_root(3)?;
    rows.push(stated(
        "torus",
        "-1 is not a cube in Q(ζ_7)",
        matches!(cube, RootVerdict::Absent),
        String::from("-1 = (-1)^3"),
    ));
    let comp = rep.companion.as_ref().expect("companion given");
    rows.push(check(
        "torus",
        "λ_f(P) = λ_f(g(P))^l0 at P = (ζ, ζ^2)",
        comp.relation_holds == Some(true),
        format!("l0 = {}, λ_f(g(P)) = {}, certificate {}", comp.l0, comp.image_multiplier, if comp.preservation_certified { "available" } else { "not available" }),
    ));

    for (name, map, listed) in [
        ("g", &g, "zeta^4, zeta^5; zeta^6, 1; zeta^5, zeta^6"),
        ("g2", &g2, "zeta^5, zeta^4; zeta^6, 1; zeta^6, zeta^5"),
    ] {
        let listed: Vec<Point> = listed.split(';').map(|s| parse_point(s, z7)).collect::<Result<_>>()?;
        let rec = orbit(map, &p, 1000, None)?;
        let contained = listed.iter().all(|q| rec.points.contains(q));
        rows.push(check(
            "torus",
            &format!("O_{name}(ζ, ζ^2) contains the listed points"),
            contained,
            format!("orbit of length {}", rec.points.len()),
        ));
        let periods: Vec<usize> = listed
            .iter()
            .map(|q| orbit(&f, q, 1000, None).map(|r| r.period().unwrap_or(0)))
            .collect::<comdyn_core::Result<_>>()?;
        rows.push(check(
            "torus",
            &format!("the listed points of O_{name} have f-period 6"),
            periods.iter().all(|&l| l == 6),
            format!("periods {periods:?}"),
        ));
    }
    Ok(())
}

fn endomorphism_examples(rows: &mut Vec<Row>) -> Result<()> {
    let q = FieldSpec::rational();
    let x2 = parse_affine("(x^2)", q)?;
    let ideal = commutation_ideal(IdealTarget::Affine(&x2), 1, EQUATION_CAP)?;
    let vals: Vec<FieldElement> = (-2..=2).map(|k| FieldElement::from_int(q, k)).collect();
    let linear: Vec<String> = ideal
        .grid_solutions(&vals, CANDIDATE_CAP)?
        .iter()
        .map(|b| PolyMap::new(ideal.components_from(b)))
        .collect::<comdyn_core::Result<Vec<_>>>()?
        .into_iter()
        .filter(|g| g.degree() == 1)
        .map(|g| g.to_text())
        .collect();
    rows.push(check("endomorphisms", "degree-1 solutions of the ideal for x^2 are {x}", linear == ["(x)"], format!("{linear:?}")));

    let f = parse_affine("(x^2, y^2)", q)?;
    let com = run_parallel(&GridSearch::new(&f, 1, &GridSpec::new(1, 1), CANDIDATE_CAP)?, None)?;
    let aut: Vec<String> = automorphisms(com)?.invertible.iter().map(PolyMap::to_text).collect();
    rows.push(check("endomorphisms", "Aut(x^2, y^2) = Com(f, 1) ∩ invertible = {id, swap}", aut == ["(x, y)", "(y, x)"], format!("{aut:?}")));

    let good = match parse_map("[x^2, y^2, z^2]", q)? {
        crate::parse::ParsedMap::Projective(p) => p,
        _ => unreachable!(),
    };
    let verdict = is_morphism(&good, &DEFAULT_PRIMES)?;
    rows.push(check(
        "endomorphisms",
        "[X^2, Y^2, Z^2] is an endomorphism",
        !matches!(verdict, MorphismVerdict::NotMorphism { .. }),
        format!("{verdict:?}"),
    ));
    Ok(())
}

fn finiteness_examples(rows: &mut Vec<Row>, threads: Option<usize>) -> Result<()> {
    let q = FieldSpec::rational();
    let f5 = parse_affine("(x^3 + y, x + y^2)", q)?;
    let frame = find_general_position(integer_stream(2), 2, 3, q)?;
    let images = frame.points().iter().map(|p| f5.evaluate(p)).collect::<comdyn_core::Result<Vec<_>>>()?;
    let back = interpolate_map(&frame, &images)?;
    rows.push(check(
        "finiteness",
        "a map of degree 3 is determined by 10 points in general position",
        back == f5,
        format!("{} frame points", frame.points().len()),
    ));

    let f = parse_affine("(x^2, y^2)", q)?;
    let b = HeightValue::from_log(0.0)?;
    let cat = build_catalog(&f, &CatalogStrategy::BoundedHeight(b), &CatalogConfig::default())?;
    let res = run_parallel(&CatalogSearch::new(&f, 2, &cat, CANDIDATE_CAP)?, threads)?;
    let bound = res.counting_bound.clone().unwrap_or_default();
    let ok = num_bigint::BigUint::from(res.explored) <= bound && num_bigint::BigUint::from(res.maps.len()) <= bound;
    rows.push(check(
        "finiteness",
        "|Com(f, 2)| ≤ Π M^M for f = (x^2, y^2)",
        ok,
        format!("{} maps, {} assignments, bound {} digits", res.maps.len(), res.explored, bound.to_string().len()),
    ));

    let com = run_parallel(&GridSearch::new(&f5, 1, &GridSpec::new(1, 1), CANDIDATE_CAP)?, threads)?;
    rows.push(check(
        "finiteness",
        "Com(x^3 + y, x + y^2; 1) is finite",
        !com.maps.is_empty(),
        format!("grid bound 1 finds {:?}", com.texts()),
    ));
    Ok(())
}

fn infinite_commutant(rows: &mut Vec<Row>, threads: Option<usize>) -> Result<()> {
    let q = FieldSpec::rational();
    let f = parse_affine("(y, x, z^2)", q)?;
    let res = run_parallel(&GridSearch::new(&f, 2, &family_grid(), CANDIDATE_CAP)?, threads)?;
    let family = res
        .maps
        .iter()
        .filter(|g| {
            let c = g.components();
            c[2] == f.components()[2] && swapped(&c[0]) == c[1]
        })
        .count();
    rows.push(check(
        "infinite",
        "g_P = (P(x,y), P(y,x), z^2) commutes with (y, x, z^2) for every P",
        family > 10,
        format!("{} commuting maps at bound 1, {family} of the form g_P", res.maps.len()),
    ));
    let heights = unbounded_heights(&f)?;
    rows.push(check(
        "infinite",
        "Pre(y, x, z^2) is not of bounded height",
        heights.windows(2).all(|w| w[0] < w[1]),
        format!("(k, k+1, 0) has period 2 with heights {heights:.3?}"),
    ));
    Ok(())
}

/// Components 1 and 2 over the monomials in x, y of degree at most 2, the
/// third over {z^2}.
pub fn family_grid() -> GridSpec {
    let xy: Vec<Monomial> = Monomial::up_to_degree(3, 2).into_iter().filter(|m| m.exponents()[2] == 0).collect();
    GridSpec::new(1, 1).with_support(vec![xy.clone(), xy, vec![Monomial::new(vec![0, 0, 2])]])
}

fn swapped(p: &comdyn_core::Polynomial<FieldElement>) -> comdyn_core::Polynomial<FieldElement> {
    let v = |i| comdyn_core::Polynomial::var(3, *p.ctx(), i);
    p.substitute(&[v(1), v(0), v(2)])
}

/// Heights of the period-2 points `(k, k+1, 0)`, `k = 1..=5`.
pub fn unbounded_heights(f: &PolyMap) -> Result<Vec<f64>> {
    let q = f.field();
    let mut out = Vec::new();
    for k in 1..=5i64 {
        let p = vec![FieldElement::from_int(q, k), FieldElement::from_int(q, k + 1), FieldElement::from_int(q, 0)];
        let rec = orbit(f, &p, 10, None)?;
        if rec.period() != Some(2) {
            return Err(crate::error::CliError::Format(format!("(k, k+1, 0) for k = {k} is not of period 2")));
        }
        out.push(weil_height(&p)?.log());
    }
    Ok(out)
}
