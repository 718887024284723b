//! Subcommands. Each one wraps a single library operation and prints JSON
//! lines; [`run`] never panics on bad input and maps failures to an exit
//! code with an error object.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use comdyn_core::commutant::{
    automorphisms, commutation_ideal, commutes_affine, commutes_projective, is_morphism, multiplier,
    projective_automorphisms, CandidateSpace, CatalogSearch, CommutantResult, GridSearch, GridSpec, IdealTarget,
    CANDIDATE_CAP, DEFAULT_PRIMES, EQUATION_CAP,
};
use comdyn_core::dynamics::{
    build_catalog, orbit, verify_invariance, CatalogConfig, CatalogStrategy, HeightValue, PreperiodicCatalog,
};
use comdyn_core::veronese::{find_general_position, interpolate_map, VeroneseFrame};
use comdyn_core::{FieldSpec, Monomial, Point, PolyMap};
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::formats::{
    catalog_lines, frame_json, ideal_json, invariance_json, morphism_json, multiplier_json, orbit_json, read_catalog,
    read_frame, result_json,
};
use crate::paper::{paper_examples, render_table, Status};
use crate::parallel::run_parallel;
use crate::parse::{parse_affine, parse_field, parse_map, parse_point, parse_points, parse_poly, ParsedMap};

#[derive(Debug, Parser)]
#[command(name = "comdyn", version, about = "Exact dynamics of commuting polynomial maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Q, Qzeta:p or Fp:p
    #[arg(long, default_value = "Q")]
    field: String,
    /// Write the output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for searches (all cores by default).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Forward orbit of a point.
    Orbit {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// Log-height bound; the orbit stops once it is exceeded.
        #[arg(long)]
        height_bound: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        step_limit: usize,
    },
    /// Preperiodic catalog as JSON lines, one stratum per line.
    Catalog {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// bounded:B, monomial:N or finite-field
        #[arg(long, default_value = "bounded:0")]
        catalog: String,
        #[arg(long, default_value_t = 1_000_000)]
        point_cap: u128,
    },
    /// Checks g(Pre(f)) ⊂ Pre(f) stratum by stratum on a catalog of f.
    VerifyInvariance {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value = "bounded:0")]
        catalog: String,
        /// Read the catalog from a JSON-lines file instead of building it.
        #[arg(long)]
        catalog_file: Option<PathBuf>,
    },
    /// Points in general position of degree d.
    Frame {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        d: u32,
        /// Candidate points separated by `;`.
        #[arg(long, conflicts_with = "f", allow_hyphen_values = true)]
        points: Option<String>,
        /// Draw the points from a catalog of this map instead.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        #[arg(long, default_value = "bounded:0")]
        catalog: String,
    },
    /// Recovers a map from its values on a frame.
    Interp {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Degree of the frame (the degree of f by default).
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, conflicts_with = "frame", allow_hyphen_values = true)]
        points: Option<String>,
        /// A frame written by `frame --out`.
        #[arg(long)]
        frame: Option<PathBuf>,
    },
    /// Does f∘g = g∘f (affine) or agree up to scalar (projective)?
    Commute {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Equations in the coefficients of a degree-d map commuting with f.
    Ideal {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        d: u32,
    },
    /// The degree-d maps commuting with f.
    Commutant {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        d: u32,
        /// catalog, or grid:B / grid:B/D for numerators |a| ≤ B and denominators ≤ D
        #[arg(long, default_value = "catalog")]
        method: String,
        #[arg(long, default_value = "bounded:0")]
        catalog: String,
        #[arg(long)]
        catalog_file: Option<PathBuf>,
        /// Grid support per component: monomials separated by `,`, components by `;`.
        #[arg(long)]
        support: Option<String>,
        #[arg(long, default_value_t = CANDIDATE_CAP)]
        cap: u128,
    },
    /// Invertible degree-one maps commuting with f.
    Aut {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value = "grid:1")]
        method: String,
        #[arg(long, default_value = "bounded:0")]
        catalog: String,
        #[arg(long, default_value_t = CANDIDATE_CAP)]
        cap: u128,
    },
    /// Multiplier of a periodic point, with an optional commuting companion.
    Multiplier {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        #[arg(long, default_value_t = 1000)]
        step_limit: usize,
    },
    /// Is a tuple of forms an endomorphism of projective space?
    MorphismCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Comma-separated primes for the reduction test.
        #[arg(long)]
        primes: Option<String>,
    },
    /// Re-runs the worked examples and reports pass, fail or discrepancy.
    PaperExamples {
        #[command(flatten)]
        common: Common,
        /// Print an aligned table instead of JSON lines.
        #[arg(long)]
        table: bool,
        /// Run only these groups (comma-separated): squares, torus, endomorphisms, finiteness, infinite.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
}

/// Exit code and the lines written to standard output.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub lines: Vec<String>,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, lines: vec![e.to_string()] }
                }
                _ => {
                    let err = CliError::Usage(e.to_string().trim().to_string());
                    Outcome { code: 2, lines: vec![err.to_json().to_string()] }
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(o) => o,
        Err(e) => Outcome { code: e.exit_code(), lines: vec![e.to_json().to_string()] },
    }
}

fn emit(common: &Common, values: Vec<Value>) -> Result<Outcome> {
    let lines: Vec<String> = values.iter().map(Value::to_string).collect();
    emit_lines(common, lines)
}

fn emit_lines(common: &Common, lines: Vec<String>) -> Result<Outcome> {
    match &common.out {
        None => Ok(Outcome { code: 0, lines }),
        Some(path) => {
            let mut text = lines.join("\n");
            text.push('\n');
            std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            Ok(Outcome { code: 0, lines: vec![json!({ "out": path.display().to_string(), "lines": lines.len() }).to_string()] })
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// `bounded:B` (log height), `monomial:N` or `finite-field`.
pub fn parse_strategy(text: &str) -> Result<CatalogStrategy> {
    let bad = || CliError::Usage(format!("unknown catalog `{text}` (use bounded:B, monomial:N or finite-field)"));
    if text == "finite-field" {
        return Ok(CatalogStrategy::FiniteFieldFull);
    }
    let (head, arg) = text.split_once(':').ok_or_else(bad)?;
    match head {
        "bounded" => {
            let b: f64 = arg.parse().map_err(|_| bad())?;
            let h = HeightValue::from_log(b).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(CatalogStrategy::BoundedHeight(h))
        }
        "monomial" => Ok(CatalogStrategy::MonomialExact(arg.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

/// `grid:B` or `grid:B/D`; `None` for the catalog method.
pub fn parse_method(text: &str) -> Result<Option<GridSpec>> {
    if text == "catalog" {
        return Ok(None);
    }
    let bad = || CliError::Usage(format!("unknown method `{text}` (use catalog, grid:B or grid:B/D)"));
    let arg = text.strip_prefix("grid:").ok_or_else(bad)?;
    let (b, d) = arg.split_once('/').unwrap_or((arg, "1"));
    let b: i64 = b.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if b < 0 || d < 1 {
        return Err(bad());
    }
    Ok(Some(GridSpec::new(b, d)))
}

fn parse_support(text: &str, n: usize, spec: FieldSpec) -> Result<Vec<Vec<Monomial>>> {
    let comps: Vec<&str> = text.split(';').collect();
    if comps.len() != n {
        return Err(CliError::Usage(format!("support lists {} components for a map of dimension {n}", comps.len())));
    }
    comps
        .iter()
        .map(|c| {
            c.split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|m| {
                    let p = parse_poly(m, n, spec)?;
                    let mut terms = p.terms();
                    match (terms.next(), terms.next()) {
                        (Some((mono, c)), None) if c.is_one() => Ok(mono.clone()),
                        _ => Err(CliError::Usage(format!("`{}` is not a monomial", m.trim()))),
                    }
                })
                .collect()
        })
        .collect()
}

fn catalog_for(f: &PolyMap, strategy: &str, file: Option<&PathBuf>, point_cap: u128) -> Result<PreperiodicCatalog> {
    match file {
        Some(path) => read_catalog(&read_file(path)?, f),
        None => Ok(build_catalog(f, &parse_strategy(strategy)?, &CatalogConfig { point_cap })?),
    }
}

fn search(space: &dyn CandidateSpace, threads: Option<usize>) -> Result<CommutantResult> {
    run_parallel(space, threads)
}

/// Small integer points in order of increasing max-norm, the default stream for frames.
pub fn integer_stream(n: usize) -> impl Iterator<Item = Point> {
    let spec = FieldSpec::rational();
    (0i64..).flat_map(move |r| {
        let side = 2 * r + 1;
        let total = (side as u64).pow(n as u32);
        (0..total).filter_map(move |mut idx| {
            let coords: Vec<i64> = (0..n)
                .map(|_| {
                    let c = (idx % side as u64) as i64 - r;
                    idx /= side as u64;
                    c
                })
                .collect();
            coords.iter().any(|c| c.abs() == r).then(|| {
                coords.iter().map(|&c| comdyn_core::FieldElement::from_int(spec, c)).collect()
            })
        })
    })
}

fn execute(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Orbit { common, f, p, height_bound, step_limit } => {
            let spec = parse_field(&common.field)?;
            let f = parse_affine(&f, spec)?;
            let p = parse_point(&p, spec)?;
            let bound = height_bound.map(HeightValue::from_log).transpose().map_err(|e| CliError::Usage(e.to_string()))?;
            let rec = orbit(&f, &p, step_limit, bound.as_ref())?;
            emit(&common, vec![orbit_json(&rec)])
        }
        Command::Catalog { common, f, catalog, point_cap } => {
            let spec = parse_field(&common.field)?;
            let f = parse_affine(&f, spec)?;
            let cat = catalog_for(&f, &catalog, None, point_cap)?;
            emit_lines(&common, catalog_lines(&cat))
        }
        Command::VerifyInvariance { common, f, g, catalog, catalog_file } => {
            let spec = parse_field(&common.field)?;
            let f = parse_affine(&f, spec)?;
            let g = parse_affine(&g, spec)?;
            let cat = catalog_for(&f, &catalog, catalog_file.as_ref(), CatalogConfig::default().point_cap)?;
            let rep = verify_invariance(&g, &cat)?;
            emit(&common, vec![invariance_json(&rep)])
        }
        Command::Frame { common, d, points, f, catalog } => {
            let spec = parse_field(&common.field)?;
            let frame = match (points, f) {
                (Some(pts), _) => {
                    let pts = parse_points(&pts, spec)?;
                    let n = pts.first().map(Vec::len).ok_or_else(|| CliError::Usage(String::from("no points given")))?;
                    find_general_position(pts, n, d, spec)?
                }
                (None, Some(f)) => {
                    let f = parse_affine(&f, spec)?;
                    let cat = catalog_for(&f, &catalog, None, CatalogConfig::default().point_cap)?;
                    find_general_position(cat.points().cloned(), f.dim(), d, cat.map().field())?
                }
                (None, None) => return Err(CliError::Usage(String::from("frame needs --points or --f"))),
            };
            emit(&common, vec![frame_json(&frame)])
        }
        Command::Interp { common, f, d, points, frame } => {
            let spec = parse_field(&common.field)?;
            let f = parse_affine(&f, spec)?;
            let d = d.unwrap_or(f.degree());
            let frame: VeroneseFrame = match (frame, points) {
                (Some(path), _) => read_frame(&read_file(&path)?, spec)?,
                (None, Some(pts)) => find_general_position(parse_points(&pts, spec)?, f.dim(), d, spec)?,
                (None, None) => {
                    if !spec.is_rational() {
                        return Err(CliError::Usage(String::from("give --points or --frame outside Q")));
                    }
                    find_general_position(integer_stream(f.dim()), f.dim(), d, spec)?
                }
            };
            let images = frame.points().iter().map(|p| f.evaluate(p)).collect::<comdyn_core::Result<Vec<_>>>()?;
            let g = interpolate_map(&frame, &images)?;
            emit(&common, vec![json!({ "map": g.to_text(), "recovered": g == f, "frame_size": frame.points().len() })])
        }
        Command::Commute { common, f, g } => {
            let spec = parse_field(&common.field)?;
            let commutes = match (parse_map(&f, spec)?, parse_map(&g, spec)?) {
                (ParsedMap::Affine(f), ParsedMap::Affine(g)) => commutes_affine(&f, &g)?,
                (ParsedMap::Projective(f), ParsedMap::Projective(g)) => commutes_projective(&f, &g)?,
                _ => return Err(CliError::Usage(String::from("both maps must be affine `(…)` or both projective `[…]`"))),
            };
            emit(&common, vec![json!({ "commutes": commutes })])
        }
        Command::Ideal { common, f, d } => {
            let spec = parse_field(&common.field)?;
            let ideal = match parse_map(&f, spec)? {
                ParsedMap::Affine(f) => commutation_ideal(IdealTarget::Affine(&f), d, EQUATION_CAP)?,
                ParsedMap::Projective(f) => commutation_ideal(IdealTarget::Projective(&f), d, EQUATION_CAP)?,
            };
            emit(&common, vec![ideal_json(&ideal)])
        }
        Command::Commutant { common, f, d, method, catalog, catalog_file, support, cap } => {
            let spec = parse_field(&common.field)?;
            let f = parse_affine(&f, spec)?;
            let result = match parse_method(&method)? {
                None => {
                    let cat = catalog_for(&f, &catalog, catalog_file.as_ref(), CatalogConfig::default().point_cap)?;
                    search(&CatalogSearch::new(&f, d, &cat, cap)?, common.threads)?
                }
                Some(mut grid) => {
                    if let Some(s) = support {
                        grid = grid.with_support(parse_support(&s, f.dim(), spec)?);
                    }
                    search(&GridSearch::new(&f, d, &grid, cap)?, common.threads)?
                }
            };
            emit(&common, vec![result_json(&result)])
        }
        Command::Aut { common, f, method, catalog, cap } => {
            let spec = parse_field(&common.field)?;
            match parse_map(&f, spec)? {
                ParsedMap::Affine(f) => {
                    let com = match parse_method(&method)? {
                        None => {
                            let cat = catalog_for(&f, &catalog, None, CatalogConfig::default().point_cap)?;
                            search(&CatalogSearch::new(&f, 1, &cat, cap)?, common.threads)?
                        }
                        Some(grid) => search(&GridSearch::new(&f, 1, &grid, cap)?, common.threads)?,
                    };
                    let rep = automorphisms(com)?;
                    let inv: Vec<String> = rep.invertible.iter().map(PolyMap::to_text).collect();
                    emit(&common, vec![json!({ "com": result_json(&rep.com), "automorphisms": inv })])
                }
                ParsedMap::Projective(phi) => {
                    let grid = parse_method(&method)?
                        .ok_or_else(|| CliError::Usage(String::from("projective maps need --method grid:B")))?;
                    let auts = projective_automorphisms(&phi, &grid.values(spec)?, cap)?;
                    let texts: Vec<String> = auts.iter().map(|a| a.to_text()).collect();
                    emit(&common, vec![json!({ "f": phi.to_text(), "automorphisms": texts })])
                }
            }
        }
        Command::Multiplier { common, f, p, g, step_limit } => {
            let spec = parse_field(&common.field)?;
            let f = parse_affine(&f, spec)?;
            let p = parse_point(&p, spec)?;
            let g = g.map(|g| parse_affine(&g, spec)).transpose()?;
            let rep = multiplier(&f, &p, g.as_ref(), step_limit)?;
            emit(&common, vec![multiplier_json(&rep)])
        }
        Command::MorphismCheck { common, f, primes } => {
            let spec = parse_field(&common.field)?;
            let phi = match parse_map(&f, spec)? {
                ParsedMap::Projective(phi) => phi,
                ParsedMap::Affine(f) => f.homogenize(f.degree())?,
            };
            let primes: Vec<u64> = match primes {
                None => DEFAULT_PRIMES.to_vec(),
                Some(s) => s
                    .split(',')
                    .map(|p| p.trim().parse().map_err(|_| CliError::Usage(format!("bad prime `{p}`"))))
                    .collect::<Result<_>>()?,
            };
            let verdict = is_morphism(&phi, &primes)?;
            let mut v = morphism_json(&verdict);
            v["f"] = json!(phi.to_text());
            emit(&common, vec![v])
        }
        Command::PaperExamples { common, table, only } => {
            let rows = paper_examples(&only, common.threads)?;
            let failed = rows.iter().any(|r| r.status == Status::Fail);
            let mut out = if table {
                emit_lines(&common, render_table(&rows))?
            } else {
                emit(&common, rows.iter().map(|r| r.to_json()).collect())?
            };
            if failed {
                out.code = 1;
            }
            Ok(out)
        }
    }
}
