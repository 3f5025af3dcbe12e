//! The `toric` command-line front end.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::concave_calculus::{Affine, ConcavePA};
use crate::error::{Error, Result};
use crate::heights::{self, AdelicToricMetric};
use crate::io::{self, Function};
use crate::lattice_polytopes::{standard_simplex, unit_cube, Polyhedron};
use crate::logq::LogQ;
use crate::measures;
use crate::polytope_integration::{self as pint, Builtin, Derivatives};
use crate::scalar::{fmt_f64, fmt_q, parse_q, q, qf, qfact, to_f64, Vector, Q};
use crate::univariate;

#[derive(Parser, Debug)]
#[command(name = "toric", version, about = "Exact polyhedral convex analysis and heights of toric varieties")]
pub struct Cli {
    /// Input JSON file; repeat for commands taking several inputs. Reads stdin when absent.
    #[arg(long = "in", global = true)]
    pub inputs: Vec<PathBuf>,
    /// Write the output document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Tolerance for floating-point comparisons.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write a CSV grid of samples of the input function or roof.
    #[arg(long, global = true)]
    pub emit_samples: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Polytope queries.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// Legendre-Fenchel dual of a piecewise affine concave function.
    Dual,
    /// Monge-Ampère measure of a piecewise affine concave function.
    Ma,
    /// Mixed volume of the input polytopes.
    MixedVolume,
    /// Mixed integral of the input functions.
    MixedIntegral,
    /// Integrals over polytopes.
    #[command(subcommand)]
    Integrate(IntegrateCmd),
    /// Degrees and heights.
    #[command(subcommand)]
    Height(HeightCmd),
    /// Roots of a univariate polynomial with clustered multiplicities.
    Roots(RootsArgs),
    /// Recompute reference values.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
pub enum PolytopeCmd {
    Volume,
    Faces,
    Aggregates {
        #[arg(long)]
        u: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum IntegrateCmd {
    /// Aggregate coefficients C_k(Δ,u,V), optionally applied to a family.
    Coeffs {
        #[arg(long)]
        u: String,
        #[arg(long)]
        family: Option<String>,
    },
    /// Brion's formula on a simplex for a built-in family.
    Brion {
        #[arg(long)]
        u: String,
        /// exp, monomial:D, power:A or zlogz:ORDER[:SHIFT]
        #[arg(long)]
        family: String,
    },
    /// ∫ over the standard simplex of a monomial in barycentric coordinates.
    SimplexMonomial {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        log_index: Option<usize>,
    },
    /// Mean of ℓ log ℓ over a simplex.
    LLogL {
        #[arg(long)]
        slope: String,
        #[arg(long)]
        constant: String,
    },
}

#[derive(Args, Debug)]
pub struct PlaceArg {
    /// "inf" or a prime.
    #[arg(long, default_value = "inf")]
    pub place: String,
}

#[derive(Subcommand, Debug)]
pub enum HeightCmd {
    /// Local height of the metric whose roof is the input function.
    Local(PlaceArg),
    /// Global height of an adelic metric {"polytope", "roofs": [{"place", "roof"}]}.
    Global,
    /// Local height of the restriction to a face.
    Face {
        /// JSON array of the face vertices.
        #[arg(long)]
        face: String,
        #[command(flatten)]
        place: PlaceArg,
    },
    /// Local height of the pullback along u ↦ Hu + u0.
    Pullback {
        /// JSON matrix H (n rows, d columns).
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        u0: String,
        #[command(flatten)]
        place: PlaceArg,
    },
    /// Height for the roof −Σ c_i ℓ_i log ℓ_i from {"polytope", "forms", "weights"}.
    PolytopeMetric,
    /// Mean over the input polytope Δ of the entropy of the facet-cone partition of Γ.
    Entropy {
        /// Polytope file for Γ; defaults to Δ.
        #[arg(long)]
        gamma: Option<PathBuf>,
        #[arg(long, default_value = "1/2")]
        c: String,
    },
    /// Height of projective space with the Fubini-Study metric.
    Fs {
        #[arg(long)]
        n: usize,
    },
    /// Height of the curve t ↦ (1 : p_1 t^{m_1} : … : p_r t^{m_r}), Fubini-Study at infinity.
    Curve {
        #[arg(long)]
        m: String,
        #[arg(long)]
        p: String,
        /// Omit for the global height.
        #[arg(long)]
        place: Option<String>,
    },
    /// Height of the rational normal curve of degree r.
    Veronese {
        #[arg(long)]
        r: u64,
    },
    /// Degree and height of ℙ(O(a_0) ⊕ … ⊕ O(a_r)) over ℙⁿ.
    Bundle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: String,
    },
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    /// Coefficients c_0,…,c_d; each "re" or "re:im".
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
    #[arg(long, default_value_t = univariate::CLUSTER_TOL)]
    pub cluster_tol: f64,
    /// Report p-adic valuations instead (rational coefficients only).
    #[arg(long)]
    pub prime: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    PaperTables,
}

/// Runs the CLI on `argv` (including the program name), writing to `out` and
/// diagnostics to `err`. Returns the exit code.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let (doc, code) = match execute(&cli) {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(err, "toric: {e}");
            return exit_code(&e);
        }
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        Format::Tsv => io::to_tsv(&doc),
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &text).map_err(|e| e.to_string()),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "toric: cannot write output: {e}");
        return 2;
    }
    code
}

pub fn run(argv: &[String]) -> i32 {
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Numeric(_) | Error::Consistency(_) => 3,
        _ => 2,
    }
}

fn read_json(path: Option<&Path>) -> Result<Value> {
    let text = match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Error::Input(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Input(format!("stdin: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

fn inline_json(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON argument: {e}")))
}

fn list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad list entry {x:?}")))).collect()
}

fn q_list(s: &str) -> Result<Vector> {
    s.split(',').map(parse_q).collect()
}

fn parse_family(s: &str) -> Result<Builtin> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |i: usize| -> Result<f64> {
        parts.get(i).ok_or_else(|| Error::Parse(format!("family {s:?} needs a parameter")))?.parse().map_err(|_| Error::Parse(format!("bad parameter in {s:?}")))
    };
    match parts[0] {
        "exp" => Ok(Builtin::Exp),
        "monomial" => Ok(Builtin::Monomial { degree: num(1)? as usize }),
        "power" => Ok(Builtin::Power { exponent: num(1)? }),
        "zlogz" => Ok(Builtin::ZLogZ { order: num(1)? as usize, shift: if parts.len() > 2 { num(2)? } else { 0.0 } }),
        _ => Err(Error::Parse(format!("unknown family {s:?}"))),
    }
}

fn one_input(cli: &Cli) -> Result<Value> {
    match cli.inputs.len() {
        0 => read_json(None),
        1 => read_json(Some(&cli.inputs[0])),
        _ => Err(Error::Input("this command takes a single --in".into())),
    }
}

fn all_inputs(cli: &Cli) -> Result<Vec<Value>> {
    if cli.inputs.is_empty() {
        return Err(Error::Input("at least one --in is required".into()));
    }
    cli.inputs.iter().map(|p| read_json(Some(p))).collect()
}

fn exact(x: &Q) -> Value {
    json!({"exact": fmt_q(x), "float": io::float_value(to_f64(x))})
}

fn execute(cli: &Cli) -> Result<(Value, i32)> {
    let doc = match &cli.command {
        Command::Polytope(cmd) => {
            let p = io::parse_polytope(&one_input(cli)?)?;
            polytope_cmd(cmd, &p)?
        }
        Command::Dual => {
            let f = io::parse_exact_function(&one_input(cli)?)?;
            let d = f.dual()?;
            emit_samples(cli, &d)?;
            io::function_value(&d)
        }
        Command::Ma => match io::parse_function(&one_input(cli)?)? {
            Function::Exact(f) => {
                emit_samples(cli, &f)?;
                let m = measures::monge_ampere(&f)?;
                let mut v = io::measure_value(&m);
                v["total_mass"] = io::q_value(&m.total_mass());
                v
            }
            Function::Float(f) => {
                let atoms = f.monge_ampere()?;
                json!({
                    "atoms": atoms.iter().map(|(x, _)| x.iter().map(|c| io::float_value(*c)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "masses": atoms.iter().map(|(_, m)| io::q_value(m)).collect::<Vec<_>>(),
                })
            }
        },
        Command::MixedVolume => {
            let ps = all_inputs(cli)?.iter().map(io::parse_polytope).collect::<Result<Vec<_>>>()?;
            json!({"exact": fmt_q(&measures::mixed_volume(&ps)?)})
        }
        Command::MixedIntegral => {
            let fs = all_inputs(cli)?.iter().map(io::parse_exact_function).collect::<Result<Vec<_>>>()?;
            json!({"exact": fmt_q(&measures::mixed_integral(&fs)?)})
        }
        Command::Integrate(cmd) => integrate_cmd(cli, cmd)?,
        Command::Height(cmd) => height_cmd(cli, cmd)?,
        Command::Roots(args) => roots_cmd(args)?,
        Command::Verify(VerifyCmd::PaperTables) => {
            let items = paper_tables(cli.tol, cli.seed)?;
            let ok = items.iter().all(|i| i["pass"] == json!(true));
            let failed = items.iter().filter(|i| i["pass"] != json!(true)).count();
            return Ok((json!({"passed": ok, "failures": failed, "items": items}), if ok { 0 } else { 3 }));
        }
    };
    Ok((doc, 0))
}

fn polytope_cmd(cmd: &PolytopeCmd, p: &Polyhedron) -> Result<Value> {
    Ok(match cmd {
        PolytopeCmd::Volume => json!({"exact": fmt_q(&p.volume()?)}),
        PolytopeCmd::Faces => {
            let faces: Vec<Value> = p
                .all_faces()
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    json!({
                        "dim": f.dim,
                        "vertices": f.vertices.iter().map(|&v| io::vector_value(&p.vertices()[v])).collect::<Vec<_>>(),
                        "volume": if p.is_bounded() { fmt_q(&p.face_volume(i)) } else { String::new() },
                    })
                })
                .collect();
            json!({"h_rep": io::h_rep_value(p), "faces": faces})
        }
        PolytopeCmd::Aggregates { u } => {
            let u = q_list(u)?;
            let aggs = p.aggregates(&u)?;
            let rows: Vec<Value> = aggs
                .iter()
                .map(|a| {
                    json!({
                        "level": fmt_q(&a.level),
                        "dim": a.dim,
                        "vertices": a.vertices.iter().map(|&v| io::vector_value(&p.vertices()[v])).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({"aggregates": rows})
        }
    })
}

fn integrate_cmd(cli: &Cli, cmd: &IntegrateCmd) -> Result<Value> {
    Ok(match cmd {
        IntegrateCmd::Coeffs { u, family } => {
            let p = io::parse_polytope(&one_input(cli)?)?;
            let u = q_list(u)?;
            let cs = pint::coefficients(&p, &u)?;
            let vol = p.ambient_volume()?;
            let identity = cs.volume_identity();
            if (identity - to_f64(&vol)).abs() > cli.tol * to_f64(&vol).max(1.0) {
                return Err(Error::Numeric(format!("coefficient volume identity off: {identity} vs {}", fmt_q(&vol))));
            }
            let rows: Vec<Value> = cs
                .entries
                .iter()
                .map(|(a, c)| json!({"level": fmt_q(&a.level), "dim": a.dim, "coefficients": c.iter().map(|x| io::float_value(*x)).collect::<Vec<_>>()}))
                .collect();
            let mut doc = json!({"volume": fmt_q(&vol), "volume_identity": io::float_value(identity), "aggregates": rows});
            if let Some(fam) = family {
                doc["integral"] = io::float_value(cs.apply(&parse_family(fam)?)?);
            }
            doc
        }
        IntegrateCmd::Brion { u, family } => {
            let p = io::parse_polytope(&one_input(cli)?)?;
            let u = q_list(u)?;
            let fam = parse_family(family)?;
            let value = pint::brion_short(&p, &u, &|z| fam.derivative(0, z).unwrap_or(f64::NAN))?;
            let mut doc = json!({"float": io::float_value(value)});
            if let Builtin::Monomial { degree } = fam {
                let e = pint::brion_short_exact(&p, &u, &|z| {
                    let mut t = Q::one();
                    for _ in 0..degree {
                        t *= z;
                    }
                    t / qfact(degree)
                })?;
                doc["exact"] = io::q_value(&e);
            }
            doc
        }
        IntegrateCmd::SimplexMonomial { alpha, log_index } => {
            let alpha: Vec<usize> = list(alpha)?;
            exact(&pint::simplex_monomial(&alpha, *log_index)?)
        }
        IntegrateCmd::LLogL { slope, constant } => {
            let p = io::parse_polytope(&one_input(cli)?)?;
            let ell = Affine::new(q_list(slope)?, parse_q(constant)?);
            let a = pint::simplex_l_log_l(&p, &ell)?;
            let b = pint::l_log_l_by_coefficients(&p, &ell)?;
            if a != b {
                return Err(Error::Consistency(format!("l log l paths disagree: {a} vs {b}")));
            }
            io::logq_value(&a)
        }
    })
}

fn place_lambda(s: &str) -> Result<LogQ> {
    Ok(io::parse_place(s)?.lambda())
}

fn height_cmd(cli: &Cli, cmd: &HeightCmd) -> Result<Value> {
    Ok(match cmd {
        HeightCmd::Local(pl) => {
            let place = io::parse_place(&pl.place)?;
            match io::parse_function(&one_input(cli)?)? {
                Function::Exact(f) => {
                    emit_samples(cli, &f.dual()?)?;
                    io::logq_value(&heights::local_height(&f, &place.lambda())?)
                }
                Function::Float(f) => json!({"float": io::float_value(heights::local_height_float(&f, place.lambda().to_f64())?)}),
            }
        }
        HeightCmd::Global => {
            let v = one_input(cli)?;
            let poly = io::parse_polytope(v.get("polytope").ok_or_else(|| Error::Parse("missing field \"polytope\"".into()))?)?;
            let mut metric = AdelicToricMetric::canonical(poly)?;
            for entry in v.get("roofs").and_then(Value::as_array).into_iter().flatten() {
                let place = io::parse_place(entry.get("place").and_then(Value::as_str).ok_or_else(|| Error::Parse("roof entry needs a place".into()))?)?;
                let roof = io::parse_roof(entry.get("roof").ok_or_else(|| Error::Parse("roof entry needs a roof".into()))?)?;
                metric.set_roof(place, roof)?;
            }
            let mut doc = io::logq_value(&heights::global_height(&metric)?);
            doc["degree"] = io::q_value(&heights::degree(metric.polytope())?);
            doc
        }
        HeightCmd::Face { face, place } => {
            let f = io::parse_exact_function(&one_input(cli)?)?;
            let verts = inline_json(face)?.as_array().ok_or_else(|| Error::Parse("--face must be a JSON array".into()))?.iter().map(io::parse_vector).collect::<Result<Vec<_>>>()?;
            io::logq_value(&heights::face_local_height(&f, &verts, &place_lambda(&place.place)?)?)
        }
        HeightCmd::Pullback { matrix, u0, place } => {
            let f = io::parse_exact_function(&one_input(cli)?)?;
            let h = inline_json(matrix)?.as_array().ok_or_else(|| Error::Parse("--matrix must be a JSON array of rows".into()))?.iter().map(io::parse_vector).collect::<Result<Vec<_>>>()?;
            let u0 = io::parse_vector(&inline_json(u0)?)?;
            io::logq_value(&heights::pullback_height(&f, &h, &u0, &place_lambda(&place.place)?)?)
        }
        HeightCmd::PolytopeMetric => {
            let v = one_input(cli)?;
            let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing field {k:?}")));
            let p = io::parse_polytope(field("polytope")?)?;
            let h = heights::polytope_metric_height(&p, &io::parse_affines(field("forms")?)?, &io::parse_rationals(field("weights")?)?)?;
            let mut doc = io::logq_value(&h.exact);
            doc["by_coefficients"] = io::float_value(h.by_coefficients);
            doc
        }
        HeightCmd::Entropy { gamma, c } => {
            let delta = io::parse_polytope(&one_input(cli)?)?;
            let gamma = match gamma {
                Some(path) => io::parse_polytope(&read_json(Some(path))?)?,
                None => delta.clone(),
            };
            io::logq_value(&heights::entropy_average(&delta, &gamma, &parse_q(c)?)?)
        }
        HeightCmd::Fs { n } => exact(&heights::fubini_study_height(*n)),
        HeightCmd::Curve { m, p, place } => {
            let m: Vec<u64> = list(m)?;
            let p = q_list(p)?;
            let h = match place {
                Some(s) => heights::curve_local_height(&m, &p, &io::parse_place(s)?)?,
                None => heights::curve_global_height(&m, &p)?,
            };
            let mut doc = json!({"float": io::float_value(h.value())});
            if h.numeric == 0.0 {
                doc["exact"] = json!(h.exact.to_string());
            }
            doc
        }
        HeightCmd::Veronese { r } => {
            let v = heights::veronese_height(*r)?;
            let mut doc = json!({"float": io::float_value(v.value)});
            if let Some(s) = v.symbolic {
                doc["symbolic"] = json!(s);
            }
            doc
        }
        HeightCmd::Bundle { n, a } => {
            let a: Vec<u64> = list(a)?;
            let b = heights::bundle_height(*n, &a)?;
            json!({"degree": fmt_q(&b.degree), "height": fmt_q(&b.height)})
        }
    })
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Parse(format!("bad coefficient {s:?}"));
    let (re, im) = s.split_once(':').unwrap_or((s, "0"));
    Ok(Complex64::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?))
}

fn roots_cmd(args: &RootsArgs) -> Result<Value> {
    if let Some(p) = args.prime {
        let vl = univariate::newton_polygon(&q_list(&args.coeffs)?, p)?;
        return Ok(json!({
            "roots": vl.valuations.iter().zip(&vl.multiplicities).map(|(v, m)| json!({"valuation": fmt_q(v), "multiplicity": m})).collect::<Vec<_>>()
        }));
    }
    let cs = args.coeffs.split(',').map(parse_complex).collect::<Result<Vec<_>>>()?;
    let rl = univariate::roots_with_tol(&cs, args.cluster_tol)?;
    Ok(json!({
        "residual": io::float_value(rl.residual),
        "roots": rl.roots.iter().zip(&rl.multiplicities).map(|(z, m)| json!({"re": io::float_value(z.re), "im": io::float_value(z.im), "multiplicity": m})).collect::<Vec<_>>(),
    }))
}

/// Grid samples of f on the bounding box of its domain (or [−1,1]ⁿ when the
/// domain is unbounded), as CSV rows x_1,…,x_n,f(x).
fn emit_samples(cli: &Cli, f: &ConcavePA) -> Result<()> {
    let Some(path) = &cli.emit_samples else { return Ok(()) };
    let n = f.dim();
    if n == 0 || n > 3 {
        return Err(Error::Unsupported("samples are only emitted in dimensions 1 to 3".into()));
    }
    let dom = f.domain();
    let (lo, hi): (Vec<Q>, Vec<Q>) = if dom.is_bounded() && !dom.vertices().is_empty() {
        (0..n)
            .map(|i| {
                let xs = dom.vertices().iter().map(|v| v[i].clone());
                (xs.clone().min().expect("nonempty"), xs.max().expect("nonempty"))
            })
            .unzip()
    } else {
        (vec![q(-1); n], vec![q(1); n])
    };
    let steps: usize = match n {
        1 => 100,
        2 => 40,
        _ => 12,
    };
    let mut csv = (1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>().join(",") + ",value\n";
    let total = (steps + 1).pow(n as u32);
    for idx in 0..total {
        let mut rest = idx;
        let mut x = Vec::with_capacity(n);
        for i in 0..n {
            let k = rest % (steps + 1);
            rest /= steps + 1;
            x.push(&lo[i] + (&hi[i] - &lo[i]) * qf(k as i64, steps as i64));
        }
        if let Some(v) = f.eval(&x) {
            let row: Vec<String> = x.iter().map(|c| fmt_f64(to_f64(c))).chain([fmt_f64(to_f64(&v))]).collect();
            csv.push_str(&row.join(","));
            csv.push('\n');
        }
    }
    fs::write(path, csv).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn item(name: String, expected: String, got: String, pass: bool) -> Value {
    json!({"item": name, "expected": expected, "got": got, "pass": pass})
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

/// Every reference value, recomputed. Each entry records a pass flag.
pub fn paper_tables(tol: f64, seed: u64) -> Result<Vec<Value>> {
    let mut items = Vec::new();
    let fs_table = [qf(1, 2), qf(5, 4), qf(13, 6), qf(77, 24), qf(87, 20), qf(223, 40)];
    for (i, want) in fs_table.iter().enumerate() {
        let n = i + 1;
        let harmonic = heights::fubini_study_height(n);
        let mut e0 = vec![0usize; n + 1];
        e0[0] = 1;
        let by_monomial = qfact(n + 1) * q(n as i64 + 1) * qf(-1, 2) * pint::simplex_monomial(&e0, Some(0))?;
        let mut forms: Vec<Affine> = (0..n)
            .map(|k| {
                let mut s = vec![q(0); n];
                s[k] = q(1);
                Affine::new(s, q(0))
            })
            .collect();
        forms.push(Affine::new(vec![q(-1); n], q(1)));
        let metric = heights::polytope_metric_height(&standard_simplex(n), &forms, &vec![qf(1, 2); n + 1])?.exact;
        let pass = harmonic == *want && by_monomial == *want && metric.as_rational() == Some(want);
        items.push(item(format!("fubini-study n={n}"), fmt_q(want), format!("{} | {} | {metric}", fmt_q(&harmonic), fmt_q(&by_monomial)), pass));
    }

    let s3 = 3f64.sqrt();
    let pi = std::f64::consts::PI;
    let veronese = [
        (1u64, 0.5),
        (2, 1.0 + pi / (3.0 * s3)),
        (3, 1.5 + pi / 2.0),
        (5, 2.5 + 7.0 * pi / (3.0 * s3)),
        (7, 3.5 + (1.0 + 2f64.sqrt()) * pi),
    ];
    for (r, want) in veronese {
        let v = heights::veronese_height(r)?;
        let m: Vec<u64> = (1..=r).collect();
        let curve = heights::curve_global_height(&m, &vec![q(1); r as usize])?.value();
        let vtol = tol.max(1e-9);
        let pass = close(v.value, want, vtol) && close(curve, want, vtol);
        items.push(item(
            format!("veronese r={r}"),
            fmt_f64(want),
            format!("{} | {} | {}", fmt_f64(v.value), fmt_f64(curve), v.symbolic.unwrap_or_default()),
            pass,
        ));
    }

    for b in 0..=6i64 {
        let want = qf(b * b, 2) + qf(9 * b, 4) + q(3);
        let h = heights::bundle_height(1, &[1, b as u64 + 1])?;
        let deg = heights::degree(&heights::bundle_polytope(1, &[1, b as u64 + 1])?)?;
        let pass = h.height == want && h.degree == deg && h.degree == q(b + 2);
        items.push(item(format!("hirzebruch b={b}"), fmt_q(&want), format!("{} (degree {})", fmt_q(&h.height), fmt_q(&h.degree)), pass));
    }
    let a11 = heights::bundle_a_coefficient(1, &[1, 0]);
    items.push(item("bundle coefficient A_{1,1}(1,0)".into(), "3/4".into(), fmt_q(&a11), a11 == qf(3, 4)));
    let a12 = heights::bundle_a_coefficient(1, &[1, 0, 0]);
    items.push(item("bundle coefficient A_{1,2}(1,0,0)".into(), "5/3".into(), fmt_q(&a12), a12 == qf(5, 3)));
    let b111 = heights::bundle_height(1, &[1, 1, 1])?;
    items.push(item(
        "bundle n=1 a=(1,1,1)".into(),
        "degree 3, height 8".into(),
        format!("degree {}, height {}", fmt_q(&b111.degree), fmt_q(&b111.height)),
        b111.degree == q(3) && b111.height == q(8),
    ));

    for n in 1..=3usize {
        let s = standard_simplex(n);
        let got = heights::entropy_average(&s, &s, &qf(1, 2))?;
        let want = crate::scalar::harmonic_range(2, n + 1);
        items.push(item(format!("entropy simplex n={n}"), fmt_q(&want), got.to_string(), got.as_rational() == Some(&want)));
    }

    let monomials: [(&[usize], Option<usize>, Q); 4] =
        [(&[0, 1, 0], None, qf(1, 6)), (&[0, 1, 1], None, qf(1, 24)), (&[0, 1], Some(1), qf(-1, 4)), (&[0, 0, 0], None, qf(1, 2))];
    for (alpha, log, want) in monomials {
        let got = pint::simplex_monomial(alpha, log)?;
        items.push(item(format!("simplex monomial {alpha:?} log={log:?}"), fmt_q(&want), fmt_q(&got), got == want));
    }
    let seg = |a: i64, b: i64| Polyhedron::hull(&[vec![q(a)], vec![q(b)]], &[]);
    let unit = pint::simplex_l_log_l(&seg(0, 1)?, &Affine::new(vec![q(1)], q(0)))?;
    items.push(item("mean x log x on [0,1]".into(), "-1/4".into(), unit.to_string(), unit.as_rational() == Some(&qf(-1, 4))));
    let two = pint::simplex_l_log_l(&seg(0, 2)?, &Affine::new(vec![q(1)], q(0)))?;
    let want = LogQ::log(&q(2))? - LogQ::from_q(qf(1, 2));
    items.push(item("mean x log x on [0,2]".into(), want.to_string(), two.to_string(), two == want));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0f64;
    let mut count = 0;
    let mut shapes = vec![unit_cube(2), unit_cube(3), standard_simplex(3)];
    while shapes.len() < 10 {
        let n = rng.gen_range(2..=3usize);
        let pts: Vec<Vector> = (0..n + 3).map(|_| (0..n).map(|_| q(rng.gen_range(-3..=3))).collect()).collect();
        if let Ok(p) = Polyhedron::hull(&pts, &[]) {
            if p.is_full_dim() {
                shapes.push(p);
            }
        }
    }
    for p in &shapes {
        let n = p.ambient_dim();
        let u: Vector = (0..n).map(|_| qf(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
        let Ok(cs) = pint::coefficients(p, &u) else { continue };
        let vol = to_f64(&p.ambient_volume()?);
        worst = worst.max((cs.volume_identity() - vol).abs() / vol.max(1.0));
        count += 1;
    }
    items.push(item(
        format!("volume identity on {count} polytopes"),
        format!("relative error <= {}", fmt_f64(tol)),
        fmt_f64(worst),
        count >= 8 && worst <= tol,
    ));
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("toric").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(&argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bundle_and_veronese() {
        let (code, out, _) = run_str(&["height", "bundle", "--n", "1", "--a", "1,2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v, json!({"degree": "3", "height": "23/4"}));
        let (_, out, _) = run_str(&["height", "veronese", "--r", "3"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["symbolic"], "3/2 + pi/2");
        assert!((v["float"].as_f64().unwrap() - 3.070796326795).abs() < 1e-11);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["height", "bundle", "--n", "1", "--a", "x"]).0, 2);
        assert_eq!(run_str(&["height", "nonsense"]).0, 2);
        assert_eq!(run_str(&["height", "fs", "--n", "2", "--bogus"]).0, 2);
        assert_eq!(exit_code(&Error::Consistency(String::new())), 3);
    }

    #[test]
    fn paper_tables_pass() {
        let items = paper_tables(1e-10, 0).unwrap();
        for i in &items {
            assert_eq!(i["pass"], json!(true), "{i}");
        }
    }

    #[test]
    fn roots_flag() {
        let (code, out, _) = run_str(&["roots", "--coeffs", "1,2,1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["roots"][0]["multiplicity"], 2);
        let (_, out, _) = run_str(&["roots", "--coeffs", "1,3,27", "--prime", "3"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["roots"].as_array().unwrap().len(), 2);
    }
}
