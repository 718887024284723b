//! Malformed input must give a JSON error object and a non-zero exit code,
//! never a panic.

use comdyn::run;
use proptest::prelude::*;
use serde_json::Value;

fn assert_error(args: &[&str]) -> Value {
    let mut full = vec!["comdyn"];
    full.extend_from_slice(args);
    let out = run(full);
    assert!(out.code == 1 || out.code == 2, "{args:?} gave {out:?}");
    assert_eq!(out.lines.len(), 1, "{args:?}");
    let v: Value = serde_json::from_str(&out.lines[0]).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    assert!(v["error"]["kind"].is_string() && v["error"]["message"].is_string(), "{v}");
    v
}

const BAD_MAPS: &[&str] = &[
    "",
    "(",
    ")",
    "()",
    "(x^2",
    "x^2, y^2)",
    "(x^2,, y)",
    "(x^)",
    "(x^-1)",
    "(x^1001)",
    "(x^99999999999999999999)",
    "(1/0)",
    "(x/2/3)",
    "(w)",
    "(x, q)",
    "(zeta)",
    "(x ** 2)",
    "(x^2 y)",
    "[x^2, y]",
    "(x; y)",
    "(2x)",
    "((x)",
    "(x))",
    "(x^2, y^2) trailing",
    "(€)",
    "(x1, x4)",
    "(x0)",
];

#[test]
fn malformed_maps() {
    for m in BAD_MAPS {
        let v = assert_error(&["commute", "--f", m, "--g", "(x, y)"]);
        let kind = v["error"]["kind"].as_str().unwrap();
        assert_ne!(kind, "Internal", "{m}: {v}");
    }
}

#[test]
fn positions_point_at_the_problem() {
    let v = assert_error(&["commute", "--f", "(x^2, y^)", "--g", "(x, y)"]);
    assert_eq!(v["error"]["kind"], "SyntaxError");
    assert_eq!(v["error"]["position"], 8);
    let v = assert_error(&["commute", "--f", "(x, w)", "--g", "(x, y)"]);
    assert_eq!(v["error"]["kind"], "UnknownVariable");
    assert_eq!(v["error"]["position"], 4);
}

#[test]
fn bad_fields_points_and_options() {
    let cases: &[&[&str]] = &[
        &["orbit", "--field", "Qzeta:6", "--f", "(x)", "--p", "1"],
        &["orbit", "--field", "Fp:1", "--f", "(x)", "--p", "1"],
        &["orbit", "--field", "R", "--f", "(x)", "--p", "1"],
        &["orbit", "--f", "(x, y)", "--p", "1"],
        &["orbit", "--f", "(x)", "--p", "1,"],
        &["orbit", "--f", "(x)", "--p", "zeta"],
        &["orbit", "--f", "(x)", "--p", "1", "--height-bound", "-1"],
        &["orbit", "--f", "(x)", "--p", "1", "--step-limit", "lots"],
        &["orbit", "--f", "(x^2)", "--p", "3"],
        &["commute", "--f", "(x)", "--g", "[x]"],
        &["commute", "--f", "(x)", "--g", "(x, y)"],
        &["catalog", "--f", "(x^2)", "--catalog", "bounded"],
        &["catalog", "--f", "(x^2)", "--catalog", "monomial:6"],
        &["catalog", "--f", "(x^2 + 1)", "--catalog", "monomial:7"],
        &["catalog", "--f", "(x^2 + 1)", "--catalog", "finite-field"],
        &["commutant", "--f", "(x^2)", "--d", "1", "--method", "grid:-1"],
        &["commutant", "--f", "(x^2)", "--d", "1", "--method", "grid:1", "--support", "x;y"],
        &["commutant", "--f", "(x^2)", "--d", "1", "--method", "grid:1", "--support", "2*x"],
        &["commutant", "--f", "(x^2, y^2)", "--d", "3", "--method", "grid:2", "--cap", "10"],
        &["commutant", "--f", "(x^2)", "--d", "1", "--catalog-file", "/nonexistent/catalog.jsonl"],
        &["interp", "--f", "(x^2)", "--points", "0;1"],
        &["interp", "--f", "(x^2)", "--points", "0;0;0"],
        &["frame", "--d", "1"],
        &["multiplier", "--f", "(x + 1)", "--p", "0", "--step-limit", "5"],
        &["morphism-check", "--f", "[x^2, y]"],
        &["morphism-check", "--f", "[x^2, y^2]", "--primes", "4,x"],
        &["paper-examples", "--only", "nowhere"],
        &["ideal", "--f", "(x^2)"],
        &[],
        &["orbit"],
    ];
    for args in cases {
        assert_error(args);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn arbitrary_text_never_panics(text in "[ -~]{0,24}", subcommand in 0usize..4) {
        let args: Vec<&str> = match subcommand {
            0 => vec!["comdyn", "commute", "--f", &text, "--g", "(x)"],
            1 => vec!["comdyn", "orbit", "--f", "(x^2)", "--p", &text],
            2 => vec!["comdyn", "commute", "--f", "(x, y)", "--g", &text],
            _ => vec!["comdyn", "orbit", "--field", &text, "--f", "(x)", "--p", "0"],
        };
        let out = run(args);
        for l in &out.lines {
            let v: Value = serde_json::from_str(l).unwrap();
            if out.code != 0 {
                prop_assert!(v["error"]["kind"].is_string());
            }
        }
    }

    #[test]
    fn mutated_maps_never_panic(base in prop::sample::select(vec!["(x^3 + y, x + y^2)", "(y, x, z^2)", "[x^2, y^2, z^2]"]), at in 0usize..20, ch in "[()\\[\\],^*/+0-9xyzw -]") {
        let mut s: Vec<char> = base.chars().collect();
        let i = at % (s.len() + 1);
        s.insert(i, ch.chars().next().unwrap());
        let text: String = s.into_iter().collect();
        let out = run(["comdyn", "commute", "--f", text.as_str(), "--g", "(y, x, z)"]);
        prop_assert!(out.code <= 2);
        prop_assert_eq!(out.lines.len(), 1);
    }
}
