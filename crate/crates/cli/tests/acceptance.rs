//! End-to-end acceptance run. Each criterion drives the command-line entry
//! point (in process) or the library, checks the answer against values
//! computed here by independent means, and prints one pass/fail line with
//! its wall time. The process exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use comdyn::parse::{parse_affine, parse_point};
use comdyn_core::commutant::{
    commutation_ideal, commutes_affine, multiplier, affine_inverse, IdealTarget, CANDIDATE_CAP, EQUATION_CAP,
};
use comdyn_core::dynamics::{build_catalog, verify_invariance, CatalogConfig, CatalogStrategy, MonomialMapSpec};
use comdyn_core::linalg::determinant;
use comdyn_core::veronese::{find_general_position, interpolate_map};
use comdyn_core::{FieldElement, FieldSpec, Monomial, Point, PolyMap, Polynomial, Ring};
use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use serde_json::Value;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cli_lines(args: &[&str]) -> Result<Vec<Value>, String> {
    let mut full = vec!["comdyn"];
    full.extend_from_slice(args);
    let out = comdyn::run(full);
    if out.code != 0 {
        return Err(format!("`{}` exited with {}: {:?}", args.join(" "), out.code, out.lines));
    }
    out.lines.iter().map(|l| serde_json::from_str(l).map_err(|e| format!("bad JSON `{l}`: {e}"))).collect()
}

fn cli(args: &[&str]) -> Result<Value, String> {
    cli_lines(args)?.into_iter().next().ok_or_else(|| String::from("no output"))
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().map(|a| a.iter().filter_map(|s| s.as_str().map(String::from)).collect()).unwrap_or_default()
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn q() -> FieldSpec {
    FieldSpec::rational()
}

fn draw<S: Strategy>(runner: &mut TestRunner, s: &S) -> S::Value {
    s.new_tree(runner).expect("strategy").current()
}

/// `f^m(P) = f^l(P)` with `(m, l)` minimal, by plain iteration.
fn stratum_by_iteration<T: Ord + Clone>(start: T, step: impl Fn(&T) -> T) -> (usize, usize) {
    let mut seen = BTreeMap::new();
    let mut cur = start;
    for k in 0.. {
        if let Some(&l) = seen.get(&cur) {
            return (k, l);
        }
        seen.insert(cur.clone(), k);
        cur = step(&cur);
    }
    unreachable!()
}

/// `Pre_{m',l'} ⊂ Pre_{m,l}`.
fn within(inner: (usize, usize), outer: (usize, usize)) -> bool {
    inner.1 <= outer.1 && (outer.0 - outer.1).is_multiple_of(inner.0 - inner.1)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

// 1: the squaring map and the skew product (x, xy) on the height-0 box.
fn skew_product() -> Outcome {
    let v = cli(&["commute", "--f", "(x^2, y^2)", "--g", "(x, x*y)"])?;
    ensure!(v["commutes"] == true, "commute said {v}");

    let boxed: Vec<(i64, i64)> = (-1..=1).flat_map(|a| (-1..=1).map(move |b| (a, b))).collect();
    let sq = |p: &(i64, i64)| (p.0 * p.0, p.1 * p.1);
    let pre: Vec<(i64, i64)> = boxed.iter().copied().filter(|p| stratum_by_iteration(*p, sq).0 < 10).collect();
    ensure!(pre.len() == 9, "every point of the box is preperiodic for squaring");
    let image: BTreeSet<(i64, i64)> = pre.iter().map(|&(x, y)| (x, x * y)).collect();
    ensure!(pre.contains(&(0, 1)) && !image.contains(&(0, 1)), "(0,1) should be missed by g");

    let rep = cli(&["verify-invariance", "--f", "(x^2, y^2)", "--g", "(x, x*y)", "--catalog", "bounded:0"])?;
    ensure!(rep["containment"] == true, "containment failed: {rep}");
    let missing: BTreeSet<Vec<String>> =
        rep["missing_from_image"].as_array().unwrap_or(&vec![]).iter().map(strings).collect();
    let expected: BTreeSet<Vec<String>> =
        pre.iter().filter(|p| !image.contains(p)).map(|&(a, b)| vec![a.to_string(), b.to_string()]).collect();
    ensure!(missing == expected, "missing {missing:?}, expected {expected:?}");

    let g_orbit = cli(&["orbit", "--f", "(x, x*y)", "--p", "0,2"])?;
    ensure!(g_orbit["status"] == "preperiodic", "g-orbit of (0,2): {g_orbit}");
    let f_orbit = cli(&["orbit", "--f", "(x^2, y^2)", "--p", "0,2", "--height-bound", "0"])?;
    ensure!(f_orbit["status"] == "escaped-height-bound", "f-orbit of (0,2): {f_orbit}");
    Ok(format!("{} of 9 box points missed by g", expected.len()))
}

// 2: the monomial pair on μ_7², with period and multiplier recomputed from exponents.
fn torus() -> Outcome {
    let v = cli(&["commute", "--field", "Qzeta:7", "--f", "(y^2, x^2)", "--g", "(x^2*y, x*y^2)"])?;
    ensure!(v["commutes"] == true, "commute said {v}");

    let z7 = FieldSpec::cyclotomic(7).map_err(err)?;
    let zeta = |k: u64| FieldElement::zeta_pow(z7, k % 7).map(|z| z.to_string()).map_err(err);
    let orbit = cli(&["orbit", "--field", "Qzeta:7", "--f", "(x^2*y, x*y^2)", "--p", "zeta, zeta^2"])?;
    let pts: Vec<Vec<String>> = orbit["points"].as_array().ok_or("no points")?.iter().map(strings).collect();
    let want = vec![zeta(4)?, zeta(5)?];
    ensure!(pts.contains(&want), "g-orbit {pts:?} lacks {want:?}");

    // f(ζ^a, ζ^b) = (ζ^{2b}, ζ^{2a}) and det J_f = -4xy.
    let step = |e: &(u64, u64)| ((2 * e.1) % 7, (2 * e.0) % 7);
    let (period, tail) = stratum_by_iteration((1u64, 2u64), step);
    ensure!(tail == 0, "(ζ, ζ²) should be periodic");
    let mut e = (1u64, 2u64);
    let mut zsum = 0;
    for _ in 0..period {
        zsum += e.0 + e.1;
        e = step(&e);
    }
    let scale = BigRational::from_integer((-4i64).pow(period as u32).into());
    let lambda = FieldElement::scaled_zeta_pow(z7, scale, zsum % 7).map_err(err)?;
    let rep = cli(&["multiplier", "--field", "Qzeta:7", "--f", "(y^2, x^2)", "--p", "zeta, zeta^2"])?;
    ensure!(rep["period"] == period, "period {} vs {period}", rep["period"]);
    ensure!(rep["multiplier"] == lambda.to_string(), "multiplier {} vs {lambda}", rep["multiplier"]);

    let rows = cli_lines(&["paper-examples", "--only", "torus"])?;
    ensure!(rows.iter().all(|r| r["status"] != "fail"), "a row failed: {rows:?}");
    let flagged = rows.iter().filter(|r| r["status"] == "discrepancy").count();
    let period_row = rows.iter().find(|r| r["claim"].as_str().is_some_and(|c| c.contains("period 3"))).ok_or("no period row")?;
    ensure!(period_row["status"] == "discrepancy", "period 3 should be flagged, computed {period}");
    Ok(format!("period {period}, λ = {lambda}, {flagged} stated values flagged"))
}

fn random_map(n: usize, d: u32) -> impl Strategy<Value = PolyMap> {
    let basis = Monomial::up_to_degree(n, d);
    let len = basis.len();
    let coeffs = proptest::collection::vec((-10i64..=10, 1i64..=10, proptest::bool::weighted(0.5)), len);
    proptest::collection::vec(coeffs, n).prop_map(move |rows| {
        let comps = rows
            .into_iter()
            .map(|cs| {
                let terms = basis
                    .iter()
                    .cloned()
                    .zip(cs)
                    .filter(|(_, (a, _, keep))| *keep && *a != 0)
                    .map(|(m, (a, b, _))| (m, FieldElement::rational(a, b)));
                Polynomial::from_terms(n, q(), terms)
            })
            .collect();
        PolyMap::new(comps).expect("map")
    })
}

// 3: frames from a random rational stream, then exact recovery.
fn round_trip() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let mut frames = 0;
    for i in 0..100 {
        let n = 1 + i % 3;
        let d = 1 + (i / 3 % 4) as u32;
        let f = draw(&mut runner, &random_map(n, d));
        let coords = proptest::collection::vec((-6i64..=6, 1i64..=4), n);
        let mut stream_runner = TestRunner::new_with_rng(Default::default(), runner.new_rng());
        let stream = std::iter::repeat_with(move || {
            draw(&mut stream_runner, &coords).into_iter().map(|(a, b)| FieldElement::rational(a, b)).collect::<Point>()
        });
        let frame = find_general_position(stream, n, d, q()).map_err(|e| format!("map {i}: {e:?}"))?;
        let want = binomial(n + d as usize, d as usize);
        ensure!(frame.points().len() == want, "map {i}: {} frame points, expected {want}", frame.points().len());
        let images = frame.points().iter().map(|p| f.evaluate(p)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        let g = interpolate_map(&frame, &images).map_err(err)?;
        for (a, b) in f.components().iter().zip(g.components()) {
            for m in Monomial::up_to_degree(n, d) {
                ensure!(a.coeff(&m) == b.coeff(&m), "map {i}: coefficient of {m:?} differs");
            }
        }
        frames += 1;
    }
    Ok(format!("{frames} maps recovered"))
}

fn eval_int(g: &PolyMap, p: (i64, i64)) -> Result<Point, String> {
    g.evaluate(&[FieldElement::from_int(q(), p.0), FieldElement::from_int(q(), p.1)]).map_err(err)
}

// 4: catalog search against the brute-force grid for the squaring map.
fn oracle_equivalence() -> Outcome {
    let f = "(x^2, y^2)";
    let mut sizes = Vec::new();
    for d in ["1", "2"] {
        let cat = cli(&["commutant", "--f", f, "--d", d, "--method", "catalog", "--catalog", "bounded:0"])?;
        let grid = cli(&["commutant", "--f", f, "--d", d, "--method", "grid:1"])?;
        let (a, b) = (strings(&cat["maps"]), strings(&grid["maps"]));
        ensure!(a == b, "d = {d}: catalog {a:?} vs grid {b:?}");
        ensure!(!a.is_empty(), "d = {d}: nothing found");
        // f(g(P)) = g(P)^2 componentwise and g(f(P)) = g(P^2), on points off the height-0 box
        for text in &a {
            let g = parse_affine(text, q()).map_err(err)?;
            for p in [(2, 3), (-3, 5), (7, -2)] {
                let lhs: Vec<FieldElement> = eval_int(&g, p)?.iter().map(|c| c.mul(c)).collect();
                ensure!(lhs == eval_int(&g, (p.0 * p.0, p.1 * p.1))?, "{text} does not commute at {p:?}");
            }
        }
        sizes.push(a.len());
        if d == "2" {
            let quad = ["x^2", "x*y", "y^2"];
            for m1 in quad {
                for m2 in quad {
                    let text = parse_affine(&format!("({m1}, {m2})"), q()).map_err(err)?.to_text();
                    ensure!(a.contains(&text), "{text} missing from the degree-2 list");
                }
            }
        } else {
            let invertible: Vec<String> = a
                .iter()
                .filter(|t| {
                    let g = parse_affine(t, q()).expect("listed map");
                    let lin: Vec<Vec<FieldElement>> = g
                        .components()
                        .iter()
                        .map(|c| (0..2).map(|j| c.coeff(&Monomial::var(2, j))).collect())
                        .collect();
                    !determinant(&lin, q()).is_zero()
                })
                .cloned()
                .collect();
            ensure!(invertible == ["(x, y)", "(y, x)"], "invertible {invertible:?}");
            for method in ["catalog", "grid:1"] {
                let aut = cli(&["aut", "--f", f, "--method", method])?;
                ensure!(strings(&aut["automorphisms"]) == invertible, "aut via {method}: {aut}");
            }
        }
    }
    Ok(format!("{} maps of degree 1, {} of degree 2", sizes[0], sizes[1]))
}

// 5: the commutation ideal of x^2 in degree one.
fn ideal() -> Outcome {
    let v = cli(&["ideal", "--f", "(x^2)", "--d", "1"])?;
    ensure!(strings(&v["unknowns"]).len() == 2, "unknowns {}", v["unknowns"]);
    // (b0 + b1 x)^2 = b0 + b1 x^2: b0^2 = b0, 2 b0 b1 = 0, b1^2 = b1
    let vals: Vec<i64> = (-2..=2).collect();
    let mut oracle = BTreeSet::new();
    for &b0 in &vals {
        for &b1 in &vals {
            if b0 * b0 == b0 && b0 * b1 == 0 && b1 * b1 == b1 {
                oracle.insert((b0, b1));
            }
        }
    }
    let f = parse_affine("(x^2)", q()).map_err(err)?;
    let ideal = commutation_ideal(IdealTarget::Affine(&f), 1, EQUATION_CAP).map_err(err)?;
    let grid: Vec<FieldElement> = vals.iter().map(|&k| FieldElement::from_int(q(), k)).collect();
    let sols = ideal.grid_solutions(&grid, CANDIDATE_CAP).map_err(err)?;
    let maps: Vec<PolyMap> = sols.iter().map(|b| PolyMap::new(ideal.components_from(b))).collect::<Result<_, _>>().map_err(err)?;
    let found: BTreeSet<(i64, i64)> = maps
        .iter()
        .map(|g| {
            let c = &g.components()[0];
            let int = |m: Monomial| c.coeff(&m).to_string().parse::<i64>().expect("integer");
            (int(Monomial::one(1)), int(Monomial::var(1, 0)))
        })
        .collect();
    ensure!(found == oracle, "solutions {found:?}, expected {oracle:?}");
    let linear: Vec<String> = maps.iter().filter(|g| g.degree() == 1).map(PolyMap::to_text).collect();
    ensure!(linear == ["(x)"], "degree-1 solutions {linear:?}");
    let constants = maps.iter().filter(|g| g.degree() == 0).count();
    ensure!(constants == 2, "{constants} constant solutions");
    Ok(String::from("{x} in degree 1, constants 0 and 1 dropped"))
}

fn mat_pow(a: &[Vec<u32>], k: u32) -> Vec<Vec<u32>> {
    let n = a.len();
    let mut acc: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    for _ in 0..k {
        acc = (0..n).map(|i| (0..n).map(|j| (0..n).map(|t| acc[i][t] * a[t][j]).sum()).collect()).collect();
    }
    acc
}

// 6a: invariance and the multiplier relation for commuting monomial pairs.
fn monomial_pairs(runner: &mut TestRunner) -> Result<usize, String> {
    let z7 = FieldSpec::cyclotomic(7).map_err(err)?;
    let zeta = |k: u64| FieldElement::zeta_pow(z7, k % 7).map_err(err);
    let entries = proptest::collection::vec(0u32..3, 4);
    let mut checked = 0;
    while checked < 50 {
        let e = draw(runner, &entries);
        let a = vec![vec![e[0], e[1]], vec![e[2], e[3]]];
        if e[0] * e[3] == e[1] * e[2] {
            continue;
        }
        let (i, j) = (1 + checked as u32 % 2, 1 + (checked as u32 / 2) % 2);
        let (fa, ga) = (mat_pow(&a, i), mat_pow(&a, j));
        let f = MonomialMapSpec::new(fa.clone()).and_then(|s| s.to_map(z7)).map_err(err)?;
        let g = MonomialMapSpec::new(ga.clone()).and_then(|s| s.to_map(z7)).map_err(err)?;
        ensure!(commutes_affine(&f, &g).map_err(err)?, "A^{i} and A^{j} should commute for A = {a:?}");

        let act = |m: &[Vec<u32>], e: &(u64, u64)| {
            ((m[0][0] as u64 * e.0 + m[0][1] as u64 * e.1) % 7, (m[1][0] as u64 * e.0 + m[1][1] as u64 * e.1) % 7)
        };
        let cat = build_catalog(&f, &CatalogStrategy::MonomialExact(7), &CatalogConfig::default()).map_err(err)?;
        let rep = verify_invariance(&g, &cat).map_err(err)?;
        ensure!(rep.containment && rep.violations.is_empty(), "invariance fails for A = {a:?}");
        for e0 in 0..7u64 {
            for e1 in 0..7u64 {
                let s = stratum_by_iteration((e0, e1), |e| act(&fa, e));
                let t = stratum_by_iteration(act(&ga, &(e0, e1)), |e| act(&fa, e));
                ensure!(within(t, s), "g moves ζ^({e0},{e1}) from {s:?} to {t:?}");
                let p = vec![zeta(e0)?, zeta(e1)?];
                ensure!(cat.stratum_of(&p) == Some(s), "catalog stratum of ζ^({e0},{e1}) is not {s:?}");
            }
        }

        let pick = draw(runner, &(0u64..7, 0u64..7));
        let p = vec![zeta(pick.0)?, zeta(pick.1)?];
        let rep = multiplier(&f, &p, Some(&g), 100).map_err(err)?;
        let c = rep.companion.as_ref().ok_or("no companion report")?;
        let l = stratum_by_iteration(pick, |e| act(&fa, e)).0;
        let l_img = stratum_by_iteration(act(&ga, &pick), |e| act(&fa, e)).0;
        ensure!(rep.period == l && c.image_period == l_img, "periods {} {} vs {l} {l_img}", rep.period, c.image_period);
        if !c.critical_for_g {
            ensure!(c.image_multiplier.powi((l / l_img) as i64).map_err(err)? == rep.multiplier, "λ relation fails");
        }
        if l <= 3 {
            ensure!(f.iterate(l as u32).jacobian_det_at(&p).map_err(err)? == rep.multiplier, "λ is not det J of f^{l}");
        }
        checked += 1;
    }
    Ok(checked)
}

fn affine(a: &[Vec<FieldElement>], c: &[FieldElement]) -> Result<PolyMap, String> {
    let n = a.len();
    let comps = (0..n)
        .map(|i| {
            let lin = (0..n).fold(Polynomial::zero(n, q()), |acc, j| acc.add(&Polynomial::var(n, q(), j).scale(&a[i][j])));
            lin.add(&Polynomial::constant(n, q(), c[i].clone()))
        })
        .collect();
    PolyMap::new(comps).map_err(err)
}

// 6b: conjugating by an affine σ keeps commutation, fixed points and multipliers.
fn conjugations(runner: &mut TestRunner) -> Result<usize, String> {
    let small = (-5i64..=5, 1i64..=3);
    let mut done = 0;
    while done < 20 {
        let h = draw(runner, &random_map(2, 2));
        let p: Point = (0..2).map(|_| draw(runner, &small)).map(|(a, b)| FieldElement::rational(a, b)).collect();
        let lin = draw(runner, &proptest::collection::vec(-3i64..=3, 4));
        let shift: Point = (0..2).map(|_| draw(runner, &small)).map(|(a, b)| FieldElement::rational(a, b)).collect();
        let a: Vec<Vec<FieldElement>> = lin.chunks(2).map(|r| r.iter().map(|&k| FieldElement::from_int(q(), k)).collect()).collect();
        if lin[0] * lin[3] == lin[1] * lin[2] {
            continue;
        }
        let hp = h.evaluate(&p).map_err(err)?;
        let comps = h
            .components()
            .iter()
            .zip(hp.iter().zip(&p))
            .map(|(c, (v, w))| c.add(&Polynomial::constant(2, q(), w.sub(v))))
            .collect();
        let f = PolyMap::new(comps).map_err(err)?;
        ensure!(f.evaluate(&p).map_err(err)? == p, "P should be fixed");
        let sigma = affine(&a, &shift)?;
        let sigma_inv = affine_inverse(&sigma).ok_or("σ not invertible")?;
        ensure!(sigma_inv.compose(&sigma).map_err(err)? == PolyMap::identity(2, q()), "σ⁻¹σ ≠ id");
        let conj = |m: &PolyMap| sigma_inv.compose(&m.compose(&sigma).map_err(err)?).map_err(err);
        let big_f = conj(&f)?;
        let g = f.iterate(2);
        ensure!(commutes_affine(&big_f, &conj(&g)?).map_err(err)?, "conjugates stop commuting");
        let p2 = sigma_inv.evaluate(&p).map_err(err)?;
        ensure!(big_f.evaluate(&p2).map_err(err)? == p2, "σ⁻¹(P) is not fixed by the conjugate");
        let lam = multiplier(&f, &p, None, 4).map_err(err)?.multiplier;
        let lam2 = multiplier(&big_f, &p2, None, 4).map_err(err)?.multiplier;
        ensure!(lam == lam2, "multipliers {lam} and {lam2} differ");
        ensure!(lam == f.jacobian_det_at(&p).map_err(err)?, "λ at a fixed point is det J");
        done += 1;
    }
    Ok(done)
}

fn property_suites() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let pairs = monomial_pairs(&mut runner)?;
    let conj = conjugations(&mut runner)?;
    Ok(format!("{pairs} monomial pairs, {conj} conjugations"))
}

fn swap_xy(p: &Polynomial<FieldElement>) -> Polynomial<FieldElement> {
    let v = |i| Polynomial::var(3, q(), i);
    p.substitute(&[v(1), v(0), v(2)])
}

// 7: (y, x, z^2) has an infinite commutant and Pre of unbounded height.
fn infinite_family() -> Outcome {
    let support = "1,x,y,x^2,x*y,y^2;1,x,y,x^2,x*y,y^2;z^2";
    let res = cli(&["commutant", "--f", "(y, x, z^2)", "--d", "2", "--method", "grid:1", "--support", support])?;
    ensure!(res["completeness"] == "lower-bound-only", "a restricted grid is only a lower bound");
    let zz = Polynomial::var(3, q(), 2).pow(2);
    let mut family = 0;
    let pts: Vec<Point> = ["2, -3, 5", "1/2, 7, -1", "-4, 1/3, 2"]
        .iter()
        .map(|s| parse_point(s, q()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let maps = strings(&res["maps"]);
    for text in &maps {
        let g = parse_affine(text, q()).map_err(err)?;
        let c = g.components();
        if c[2] == zz && swap_xy(&c[0]) == c[1] {
            family += 1;
        }
        // f(g(P)) = (g2, g1, g3^2)(P) against g(f(P)) = g(P2, P1, P3^2)
        for p in &pts {
            let gp = g.evaluate(p).map_err(err)?;
            let fp = vec![p[1].clone(), p[0].clone(), p[2].mul(&p[2])];
            let lhs = vec![gp[1].clone(), gp[0].clone(), gp[2].mul(&gp[2])];
            ensure!(lhs == g.evaluate(&fp).map_err(err)?, "{text} does not commute");
        }
    }
    ensure!(family > 10, "only {family} maps of the form (P(x,y), P(y,x), z^2)");

    let rows = cli_lines(&["paper-examples", "--only", "infinite"])?;
    let note = rows
        .iter()
        .find(|r| r["claim"].as_str().is_some_and(|c| c.contains("bounded height")))
        .ok_or("the report has no height note")?;
    ensure!(note["status"] == "pass", "height note: {note}");
    ensure!(rows.iter().all(|r| r["status"] == "pass"), "report rows {rows:?}");
    // (k, k+1, 0) ↦ (k+1, k, 0) ↦ (k, k+1, 0)
    for k in 1..=4i64 {
        let o = cli(&["orbit", "--f", "(y, x, z^2)", "--p", &format!("{k}, {}, 0", k + 1)])?;
        ensure!(o["m"] == 2 && o["l"] == 0, "(k, k+1, 0) for k = {k}: {o}");
    }
    Ok(format!("{} commuting maps, {family} of the form (P(x,y), P(y,x), z^2); {}", maps.len(), note["detail"]))
}

// 8: explored assignments and |Com| against Π M^M recomputed from the catalog.
fn counting_bound() -> Outcome {
    let f = "(x^2, y^2)";
    let res = cli(&["commutant", "--f", f, "--d", "2", "--method", "catalog", "--catalog", "bounded:0"])?;
    let m_d = res["method"]["m_d"].as_u64().ok_or("no m_d")? as usize;

    let lines = cli_lines(&["catalog", "--f", f, "--catalog", "bounded:0"])?;
    let mut strata: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for l in &lines {
        let s = (l["m"].as_u64().ok_or("m")? as usize, l["l"].as_u64().ok_or("l")? as usize);
        strata.insert(s, l["points"].as_array().ok_or("points")?.len());
    }
    // the height-0 points of the plane are {-1, 0, 1}^2, all preperiodic under squaring
    let mut oracle_strata: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for a in -1i64..=1 {
        for b in -1i64..=1 {
            *oracle_strata.entry(stratum_by_iteration((a, b), |p| (p.0 * p.0, p.1 * p.1))).or_default() += 1;
        }
    }
    ensure!(strata == oracle_strata, "catalog strata {strata:?}, expected {oracle_strata:?}");

    let mut bound = BigUint::from(1u32);
    for m in 1..=m_d {
        for l in 0..m {
            let count: usize = strata.iter().filter(|(&s, _)| within(s, (m, l))).map(|(_, &c)| c).sum();
            bound *= BigUint::from(count).pow(count as u32);
        }
    }
    let reported: BigUint = res["counting_bound"].as_str().ok_or("no bound")?.parse().map_err(err)?;
    ensure!(reported == bound, "reported bound {reported}, recomputed {bound}");
    let explored: BigUint = res["explored"].as_str().ok_or("no explored")?.parse().map_err(err)?;
    let count = BigUint::from(res["count"].as_u64().ok_or("no count")?);
    ensure!(explored <= bound, "explored {explored} > {bound}");
    ensure!(count <= bound, "|Com| {count} > {bound}");
    Ok(format!("|Com| = {count}, explored {explored} ≤ {bound}"))
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { name: "skew product on the height-0 box", budget: secs(1), run: skew_product },
        Criterion { name: "monomial pair over Q(zeta_7)", budget: secs(5), run: torus },
        Criterion { name: "frame and interpolation round trip", budget: secs(60), run: round_trip },
        Criterion { name: "catalog search equals grid search", budget: secs(120), run: oracle_equivalence },
        Criterion { name: "commutation ideal of x^2", budget: secs(1), run: ideal },
        Criterion { name: "invariance, multiplier and conjugation suites", budget: secs(60), run: property_suites },
        Criterion { name: "infinite commutant of (y, x, z^2)", budget: secs(120), run: infinite_family },
        Criterion { name: "counting bound", budget: secs(120), run: counting_bound },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err(String::from("panicked")));
        let took = start.elapsed();
        let (verdict, detail) = match outcome {
            Ok(d) if took <= c.budget => ("pass", d),
            Ok(d) => ("fail", format!("over the {:?} budget; {d}", c.budget)),
            Err(e) => ("fail", e),
        };
        if verdict == "fail" {
            failed += 1;
        }
        println!("criterion {}: {verdict} ({:.2}s) {}: {detail}", i + 1, took.as_secs_f64(), c.name);
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
