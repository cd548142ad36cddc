//! The `ncpot` command-line frontend: argument parsing, input loading,
//! dispatch to the library and report formatting.
//!
//! Exit codes: 0 on success / PASS, 1 on a mathematical FAIL, 2 on input
//! errors.  Every JSON report carries `"schema": "ncpot/1"`.  The
//! environment variable `NCPOT_SEED` overrides `--seed`.

use std::io::Write;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::calculus::{cyclic_derive, hessian, poincare_integrate};
use crate::catalog;
use crate::error::{Error, Result};
use crate::graded::{
    cartan_polynomial, compare_with_cartan, cotangent_complex_check, first_discrepancy, hilbert_from_cartan,
    zeta_characteristic, GradedQuotient,
};
use crate::io::{
    one_form_from_json, poly_to_json, potential_to_json, read_potential, OneFormJson, RepJson, SCHEMA,
};
use crate::linalg::{Field, PrimeField, Rationals};
use crate::mckay::{build_quiver, mckay_check, triangle_coefficients, GroupData, GroupJson};
use crate::poly::{CyclicPoly, TensorPoly};
use crate::quiver::Quiver;
use crate::random::rng_from_seed;
use crate::rep::{critical_residual, fd_check, trace_potential, RepPoint, DEFAULT_FD_STEP, DEFAULT_RESIDUAL_TOL};
use crate::scalar::{Coeff, Rational};
use crate::series::MatrixSeries;
use crate::superalg::dg_check;

/// Default seed when neither `--seed` nor `NCPOT_SEED` is given.
pub const DEFAULT_SEED: u64 = 20_240_601;
/// Finite-difference acceptance threshold for `rep-check --fd-check`.
pub const FD_TOL: f64 = 1e-6;

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for a mathematical failure.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for malformed input.
pub const EXIT_INPUT: i32 = 2;

/// Exact computer algebra for quivers with potentials.
#[derive(Debug, Parser)]
#[command(name = "ncpot", version, about)]
pub struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized step (overridden by NCPOT_SEED).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// The verb to run.
    #[command(subcommand)]
    pub command: Command,
}

/// A potential given as a JSON file or as the name of a curated example.
#[derive(Debug, Args)]
pub struct PotentialArg {
    /// Potential JSON file, or a curated name (basic, sl2, cube, conifold,
    /// cyclic3, cyclic4, sklyanin2, sklyanin3, yang-mills2, yang-mills3).
    #[arg(long)]
    pub potential: String,
}

/// Verbs.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cyclic derivatives ∂Φ/∂x.
    Derive {
        #[command(flatten)]
        input: PotentialArg,
        /// Only this edge (default: all edges).
        #[arg(long)]
        var: Option<String>,
    },
    /// The noncommutative Hessian ∂²Φ/∂x∂y.
    Hessian {
        #[command(flatten)]
        input: PotentialArg,
    },
    /// Integrate a closed one-form (f_x) to a potential.
    Integrate {
        /// One-form JSON file.
        #[arg(long)]
        one_form: PathBuf,
    },
    /// DG, BRST and BV consistency checks.
    DgCheck {
        #[command(flatten)]
        input: PotentialArg,
        /// Number of random elements per check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Graded dimensions of the Jacobi algebra and/or the Cartan prediction.
    Hilbert {
        #[command(flatten)]
        input: PotentialArg,
        /// Truncation degree N.
        #[arg(long, default_value_t = 6)]
        degree: usize,
        /// Print the rank-computation oracle.
        #[arg(long)]
        oracle: bool,
        /// Print p(V,Φ;t)⁻¹.
        #[arg(long)]
        from_cartan: bool,
        /// Confirm prime-field ranks by an exact rational pass.
        #[arg(long)]
        certify: bool,
    },
    /// Hilbert identity and extended cotangent complex.
    CyCheck {
        #[command(flatten)]
        input: PotentialArg,
        /// Truncation degree N.
        #[arg(long, default_value_t = 6)]
        degree: usize,
        /// Confirm prime-field ranks by an exact rational pass.
        #[arg(long)]
        certify: bool,
    },
    /// The ζ-characteristic Π_s det p(V,Φ;tˢ)⁻¹.
    Zeta {
        #[command(flatten)]
        input: PotentialArg,
        /// Truncation degree N.
        #[arg(long, default_value_t = 8)]
        degree: usize,
        /// Number of factors S (default N).
        #[arg(long)]
        factors: Option<usize>,
    },
    /// McKay quiver with potential of a finite subgroup of SL₃.
    Mckay {
        /// Group JSON file.
        #[arg(long)]
        group: PathBuf,
        /// Truncation degree N.
        #[arg(long, default_value_t = 9)]
        degree: usize,
        /// Write Φ_Γ as a potential JSON file.
        #[arg(long)]
        emit_potential: Option<PathBuf>,
    },
    /// Trace potential, critical residual and gradient check at a representation.
    RepCheck {
        #[command(flatten)]
        input: PotentialArg,
        /// Representation JSON file.
        #[arg(long)]
        rep: PathBuf,
        /// Also compare the gradient with a central finite difference.
        #[arg(long)]
        fd_check: bool,
        /// Use the skew-hermitian (moment-map) part of the gradient.
        #[arg(long)]
        star: bool,
        /// Residual tolerance.
        #[arg(long, default_value_t = DEFAULT_RESIDUAL_TOL)]
        tol: f64,
    },
}

/// A finished report: exit code, JSON and text renderings.
struct Report {
    code: i32,
    json: Value,
    text: String,
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Run the CLI on `args` (including the program name), writing the report
/// to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(err, "{rendered}");
            return EXIT_INPUT;
        }
    };
    let seed = match effective_seed(cli.seed, std::env::var("NCPOT_SEED").ok()) {
        Ok(s) => s,
        Err(e) => return input_error(&cli, &e, out, err),
    };
    match dispatch(&cli.command, seed) {
        Ok(r) => {
            let res = if cli.json {
                let mut j = r.json;
                if let Value::Object(m) = &mut j {
                    m.insert("schema".into(), json!(SCHEMA));
                }
                writeln!(out, "{}", serde_json::to_string_pretty(&j).unwrap_or_default())
            } else {
                write!(out, "{}", r.text)
            };
            if res.is_err() {
                return EXIT_INPUT;
            }
            r.code
        }
        Err(Error::NotClosed(m)) => {
            let e = Error::NotClosed(m);
            if cli.json {
                let _ = writeln!(out, "{}", json!({"schema": SCHEMA, "pass": false, "error": e.to_string()}));
            } else {
                let _ = writeln!(out, "FAIL {e}");
            }
            EXIT_FAIL
        }
        Err(e) => input_error(&cli, &e, out, err),
    }
}

fn input_error(cli: &Cli, e: &Error, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if cli.json {
        let _ = writeln!(out, "{}", json!({"schema": SCHEMA, "error": e.to_string()}));
    }
    let _ = writeln!(err, "error: {e}");
    EXIT_INPUT
}

/// `NCPOT_SEED` (if set) wins over the flag.
pub fn effective_seed(flag: u64, env: Option<String>) -> Result<u64> {
    match env {
        Some(s) => s.trim().parse().map_err(|_| Error::Domain(format!("NCPOT_SEED is not an unsigned integer: `{s}`"))),
        None => Ok(flag),
    }
}

/// Load a potential from a file, falling back to the curated catalog.
pub fn load_potential<K: Coeff>(arg: &str) -> Result<(Arc<Quiver>, CyclicPoly<K>)> {
    let path = FsPath::new(arg);
    if !path.exists() {
        if let Some(p) = catalog::by_name(arg) {
            let p = p.map_coeffs(K::from_rational);
            return Ok((p.quiver().clone(), p));
        }
        return Err(Error::Domain(format!(
            "`{arg}` is neither a readable file nor a curated potential ({})",
            catalog::NAMES.join(", ")
        )));
    }
    read_potential(path)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &FsPath) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Json(format!("{}: {}", path.display(), e)))
}

fn dispatch(cmd: &Command, seed: u64) -> Result<Report> {
    match cmd {
        Command::Derive { input, var } => derive_verb(&input.potential, var.as_deref()),
        Command::Hessian { input } => hessian_verb(&input.potential),
        Command::Integrate { one_form } => integrate_verb(one_form),
        Command::DgCheck { input, samples } => dg_verb(&input.potential, *samples, seed),
        Command::Hilbert { input, degree, oracle, from_cartan, certify } => {
            hilbert_verb(&input.potential, *degree, *oracle, *from_cartan, *certify, seed)
        }
        Command::CyCheck { input, degree, certify } => cy_verb(&input.potential, *degree, *certify, seed),
        Command::Zeta { input, degree, factors } => zeta_verb(&input.potential, *degree, factors.unwrap_or(*degree)),
        Command::Mckay { group, degree, emit_potential } => mckay_verb(group, *degree, emit_potential.as_deref()),
        Command::RepCheck { input, rep, fd_check, star, tol } => {
            rep_verb(&input.potential, rep, *fd_check, *star, *tol, seed)
        }
    }
}

fn derive_verb(arg: &str, var: Option<&str>) -> Result<Report> {
    let (q, phi) = load_potential::<Rational>(arg)?;
    let edges: Vec<usize> = match var {
        Some(v) => vec![q.edge_id(v)?],
        None => (0..q.num_edges()).collect(),
    };
    let mut text = String::new();
    let mut map = serde_json::Map::new();
    for &x in &edges {
        let d = cyclic_derive(&phi, x)?;
        if var.is_some() {
            text.push_str(&format!("{}\n", d.render()));
        } else {
            text.push_str(&format!("∂Φ/∂{} = {}\n", q.edge(x).name, d.render()));
        }
        map.insert(q.edge(x).name.clone(), serde_json::to_value(poly_to_json(&d))?);
    }
    Ok(Report { code: EXIT_OK, json: json!({"verb": "derive", "derivatives": map}), text })
}

fn tensor_json<K: Coeff>(q: &Quiver, t: &TensorPoly<K>) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .map(|(factors, c)| {
            let fs: Vec<Value> = factors
                .iter()
                .map(|p| {
                    if p.edges().is_empty() {
                        json!({"vertex": q.vertices()[p.start()]})
                    } else {
                        json!({"path": p.edges().iter().map(|&e| q.edge(e).name.clone()).collect::<Vec<_>>()})
                    }
                })
                .collect();
            json!({"coeff": c.to_scalar(), "factors": fs})
        })
        .collect();
    Value::Array(terms)
}

fn hessian_verb(arg: &str) -> Result<Report> {
    let (q, phi) = load_potential::<Rational>(arg)?;
    let h = hessian(&phi)?;
    let mut text = String::new();
    let mut entries = Vec::new();
    for i in 0..q.num_edges() {
        for j in 0..q.num_edges() {
            let e = h.entry(i, j);
            if e.is_zero() {
                continue;
            }
            let (xi, xj) = (&q.edge(i).name, &q.edge(j).name);
            text.push_str(&format!("∂²Φ/∂{xi}∂{xj} = {}\n", e.render()));
            entries.push(json!({"row": xi, "col": xj, "terms": tensor_json(&q, e)}));
        }
    }
    let symmetric = h.symmetry_violations().is_empty();
    text.push_str(&format!("{} cyclic symmetry of the Hessian\n", verdict(symmetric)));
    Ok(Report {
        code: if symmetric { EXIT_OK } else { EXIT_FAIL },
        json: json!({"verb": "hessian", "entries": entries, "symmetric": symmetric, "pass": symmetric}),
        text,
    })
}

fn integrate_verb(path: &FsPath) -> Result<Report> {
    let j: OneFormJson = read_json(path)?;
    let (q, fs, r) = one_form_from_json::<Rational>(&j)?;
    let phi = poincare_integrate(&q, &fs, r)?;
    Ok(Report {
        code: EXIT_OK,
        json: json!({"verb": "integrate", "pass": true, "potential": potential_to_json(&phi)}),
        text: format!("Φ = {}\nPASS ∂Φ/∂x = f_x for every edge\n", phi.render()),
    })
}

fn dg_verb(arg: &str, samples: usize, seed: u64) -> Result<Report> {
    let (_, phi) = load_potential::<Rational>(arg)?;
    let mut rng = rng_from_seed(seed);
    let r = dg_check(&phi, samples, &mut rng)?;
    let lines = [
        ("d² = 0", r.d_squared_zero),
        ("H₀ presentation d(x*) = ∂Φ/∂x", r.h0_presentation),
        ("ξ_{Φ♭} reduces to d mod τ", r.brst_reduces_to_d),
        ("unit ξ_t(Φ♭) = δ", r.unit_axiom),
        ("master {Φ♭,Φ♭} = 0", r.master_equation),
        ("ξ_{Φ♭}² = 0", r.brst_squared_zero),
        ("anchor ξ_{δτ+tτ²} = ad τ + δ∂_t − τ²∂_τ", r.free_anchor),
        ("Δ² = 0", r.bv_squared_zero),
        ("Δ constructions agree", r.bv_constructions_agree),
    ];
    let mut text = String::new();
    for (name, ok) in lines {
        text.push_str(&format!("{} {name}\n", verdict(ok)));
    }
    if let Some(c) = &r.counterexample {
        text.push_str(&format!("counterexample: {c}\n"));
    }
    let pass = r.pass();
    let mut j = serde_json::to_value(&r)?;
    if let Value::Object(m) = &mut j {
        m.insert("verb".into(), json!("dg-check"));
        m.insert("pass".into(), json!(pass));
    }
    Ok(Report { code: if pass { EXIT_OK } else { EXIT_FAIL }, json: j, text })
}

fn series_json(s: &MatrixSeries) -> Value {
    let n = s.size();
    let rows: Vec<Value> = (0..n)
        .map(|i| {
            Value::Array(
                (0..n)
                    .map(|j| Value::Array(s.entry(i, j).coeffs().iter().map(|c| json!(c.to_string())).collect()))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

/// Aligned text table of a matrix series; a single-vertex series is one row.
fn series_table(label: &str, q: &Quiver, s: &MatrixSeries) -> String {
    let n = s.size();
    let cells: Vec<(String, Vec<String>)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let name = if n == 1 { label.to_string() } else { format!("{label}[{},{}]", q.vertices()[i], q.vertices()[j]) };
            (name, s.entry(i, j).coeffs().iter().map(|c| c.to_string()).collect())
        })
        .collect();
    let lw = cells.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
    let cw = cells.iter().flat_map(|(_, v)| v.iter().map(|c| c.len())).max().unwrap_or(1);
    let mut out = String::new();
    for (l, v) in cells {
        let pad = lw - l.chars().count();
        let row: Vec<String> = v.iter().map(|c| format!("{c:>cw$}")).collect();
        out.push_str(&format!("{l}{}  {}\n", " ".repeat(pad), row.join(" ")));
    }
    out
}

fn potential_degree(phi: &CyclicPoly<Rational>) -> Result<i32> {
    phi.homogeneous_degree()
        .ok_or_else(|| Error::NotHomogeneous("graded invariants need a nonzero homogeneous potential".into()))
}

fn quotient<F: Field>(phi: &CyclicPoly<Rational>, field: F, n: usize) -> Result<GradedQuotient<F>> {
    GradedQuotient::new(phi, field, n)
}

/// Graded dimensions over a seeded prime field, optionally certified over ℚ.
fn oracle_dims(phi: &CyclicPoly<Rational>, n: usize, certify: bool, seed: u64) -> Result<(MatrixSeries, String)> {
    let prime = PrimeField::random(&mut rng_from_seed(seed));
    let fast = quotient(phi, prime.clone(), n)?.hilbert_series();
    if certify {
        let exact = quotient(phi, Rationals, n)?.hilbert_series();
        if exact != fast {
            return Err(Error::Internal(format!("ranks over {} differ from exact ranks", prime.describe())));
        }
        return Ok((exact, format!("{} + exact ℚ", prime.describe())));
    }
    Ok((fast, prime.describe()))
}

fn hilbert_verb(arg: &str, n: usize, oracle: bool, from_cartan: bool, certify: bool, seed: u64) -> Result<Report> {
    let (q, phi) = load_potential::<Rational>(arg)?;
    let m = potential_degree(&phi)?;
    let (show_oracle, show_cartan) = if oracle || from_cartan { (oracle, from_cartan) } else { (true, true) };
    let mut text = String::new();
    let mut j = json!({"verb": "hilbert", "degree": n, "potential_degree": m});
    let dims = if show_oracle { Some(oracle_dims(&phi, n, certify, seed)?) } else { None };
    let pred = if show_cartan { Some(hilbert_from_cartan(&cartan_polynomial(&q, m)?, n)?) } else { None };
    let single = show_oracle != show_cartan && q.num_vertices() == 1;
    if let Some((d, field)) = &dims {
        if single {
            let row: Vec<String> = d.entry(0, 0).coeffs().iter().map(|c| c.to_string()).collect();
            text.push_str(&format!("{}\n", row.join(" ")));
        } else {
            text.push_str(&series_table("oracle", &q, d));
        }
        j["oracle"] = series_json(d);
        j["field"] = json!(field);
    }
    if let Some(p) = &pred {
        if single {
            let row: Vec<String> = p.entry(0, 0).coeffs().iter().map(|c| c.to_string()).collect();
            text.push_str(&format!("{}\n", row.join(" ")));
        } else {
            text.push_str(&series_table("cartan", &q, p));
        }
        j["from_cartan"] = series_json(p);
    }
    let mut code = EXIT_OK;
    if let (Some((d, _)), Some(p)) = (&dims, &pred) {
        let disc = first_discrepancy(d, p);
        let pass = disc.is_none();
        match &disc {
            None => text.push_str(&format!("PASS h(A;t) = p(V,Φ;t)⁻¹ to degree {n}\n")),
            Some(x) => text.push_str(&format!(
                "FAIL first discrepancy at degree {} entry ({},{}): oracle {} vs predicted {}\n",
                x.degree,
                q.vertices()[x.i],
                q.vertices()[x.j],
                x.oracle,
                x.predicted
            )),
        }
        j["pass"] = json!(pass);
        if !pass {
            code = EXIT_FAIL;
        }
    }
    Ok(Report { code, json: j, text })
}

fn cy_verb(arg: &str, n: usize, certify: bool, seed: u64) -> Result<Report> {
    let (q, phi) = load_potential::<Rational>(arg)?;
    let m = potential_degree(&phi)?;
    let prime = PrimeField::random(&mut rng_from_seed(seed));
    let gq = quotient(&phi, prime.clone(), n)?;
    let dims = gq.hilbert_series();
    if certify && quotient(&phi, Rationals, n)?.hilbert_series() != dims {
        return Err(Error::Internal(format!("ranks over {} differ from exact ranks", prime.describe())));
    }
    let hilb = compare_with_cartan(&q, m, &dims)?;
    let cot = cotangent_complex_check(&phi, &gq, n)?;
    let mut text = series_table("oracle", &q, &dims);
    text.push_str(&series_table("cartan", &q, &hilb.predicted));
    match &hilb.discrepancy {
        None => text.push_str(&format!("PASS Hilbert identity h(A;t) = p(V,Φ;t)⁻¹ to degree {n}\n")),
        Some(x) => text.push_str(&format!(
            "FAIL Hilbert identity: first discrepancy at degree {} entry ({},{}): oracle {} vs predicted {}\n",
            x.degree,
            q.vertices()[x.i],
            q.vertices()[x.j],
            x.oracle,
            x.predicted
        )),
    }
    text.push_str("deg  dims[P3 P2 P1 P0 A]  ranks[j hess j∨ mult]  complex exact euler\n");
    let mut degs = Vec::new();
    for d in &cot.degrees {
        let dims_s: Vec<String> = d.dims.iter().map(|x| x.to_string()).collect();
        let ranks_s: Vec<String> = d.ranks.iter().map(|x| x.to_string()).collect();
        text.push_str(&format!(
            "{:>3}  [{}]  [{}]  {} {} {}\n",
            d.degree,
            dims_s.join(" "),
            ranks_s.join(" "),
            verdict(d.composites_vanish),
            verdict(d.exact),
            verdict(d.euler_ok)
        ));
        degs.push(json!({
            "degree": d.degree, "dims": d.dims, "ranks": d.ranks,
            "complex": d.composites_vanish, "exact": d.exact, "euler": d.euler_ok
        }));
    }
    if let Some(w) = &cot.warning {
        text.push_str(&format!("warning: {w}\n"));
    }
    text.push_str(&format!("{} cotangent complex: consecutive composites vanish\n", verdict(cot.is_complex())));
    match cot.first_inexact_degree() {
        None => text.push_str(&format!("PASS cotangent complex exact to degree {n}\n")),
        Some(d) => text.push_str(&format!("FAIL cotangent complex not exact in degree {d}\n")),
    }
    let pass = hilb.pass() && cot.is_complex() && cot.is_exact();
    text.push_str(&format!("{} cy-check\n", verdict(pass)));
    let disc = hilb.discrepancy.as_ref().map(|x| {
        json!({"degree": x.degree, "i": q.vertices()[x.i], "j": q.vertices()[x.j], "oracle": x.oracle, "predicted": x.predicted})
    });
    Ok(Report {
        code: if pass { EXIT_OK } else { EXIT_FAIL },
        json: json!({
            "verb": "cy-check", "degree": n, "potential_degree": m, "field": prime.describe(),
            "oracle": series_json(&dims), "from_cartan": series_json(&hilb.predicted),
            "hilbert_pass": hilb.pass(), "first_discrepancy": disc,
            "cotangent": degs, "complex": cot.is_complex(), "exact": cot.is_exact(),
            "first_inexact_degree": cot.first_inexact_degree(), "warning": cot.warning, "pass": pass
        }),
        text,
    })
}

fn zeta_verb(arg: &str, n: usize, s: usize) -> Result<Report> {
    let (q, phi) = load_potential::<Rational>(arg)?;
    let m = potential_degree(&phi)?;
    let z = zeta_characteristic(&q, m, n, s)?;
    let cs: Vec<String> = z.coeffs().iter().map(|c| c.to_string()).collect();
    Ok(Report {
        code: EXIT_OK,
        json: json!({"verb": "zeta", "degree": n, "factors": s, "coefficients": cs}),
        text: format!("{}\n", cs.join(" ")),
    })
}

fn mckay_verb(path: &FsPath, n: usize, emit: Option<&FsPath>) -> Result<Report> {
    let gj: GroupJson = read_json(path)?;
    let g = GroupData::from_json(&gj)?;
    let r = mckay_check(&g, n)?;
    let q = build_quiver(&g)?;
    let pot = triangle_coefficients(&q)?;
    let mut text = format!(
        "|Γ| = {}, {} vertices, {} edges, {} triangles\n",
        r.group_order, r.vertices, r.edges, r.triangles
    );
    text.push_str(&format!(
        "Φ_Γ = {}\n",
        match &pot.exact {
            Some(e) => e.render(),
            None => pot.potential.render(),
        }
    ));
    text.push_str(&format!("oracle (o,o)  {}\n", r.invariant_dims.join(" ")));
    text.push_str(&format!("Molien        {}\n", r.molien.join(" ")));
    text.push_str(&format!("{} λ(▲) rotation invariance\n", verdict(r.rotation_invariant)));
    text.push_str(&format!("{} Σ dim(L_i)·a_ij = 3·dim(L_j)\n", verdict(r.dimension_identity)));
    text.push_str(&format!("{} (o,o) corner = Molien series to degree {n}\n", verdict(r.invariants_match)));
    text.push_str(&format!("{} (i,o) corners = isotypic series to degree {n}\n", verdict(r.isotypic_match)));
    text.push_str(&format!("{} Cartan Hilbert identity to degree {n}\n", verdict(r.cy_hilbert)));
    if let Some(mm) = &r.first_mismatch {
        text.push_str(&format!(
            "first mismatch: vertex {} degree {}: algebra {} vs invariants {}\n",
            mm.vertex, mm.degree, mm.algebra, mm.invariants
        ));
    }
    if let Some(out) = emit {
        let doc = match &pot.exact {
            Some(e) => serde_json::to_string_pretty(&potential_to_json(e))?,
            None => serde_json::to_string_pretty(&potential_to_json(&pot.potential))?,
        };
        std::fs::write(out, doc + "\n")?;
        text.push_str(&format!("wrote {}\n", out.display()));
    }
    let pass = r.pass();
    let mut j = serde_json::to_value(&r)?;
    if let Value::Object(m) = &mut j {
        m.insert("verb".into(), json!("mckay"));
        m.insert("pass".into(), json!(pass));
    }
    Ok(Report { code: if pass { EXIT_OK } else { EXIT_FAIL }, json: j, text })
}

fn rep_verb(arg: &str, rep: &FsPath, fd: bool, star: bool, tol: f64, seed: u64) -> Result<Report> {
    let (q, phi) = load_potential::<Complex64>(arg)?;
    let rj: RepJson = read_json(rep)?;
    let rho = RepPoint::from_json(&q, &rj)?;
    let tr = trace_potential(&phi, &rho)?;
    let residual = critical_residual(&phi, &rho, star)?;
    let critical = residual <= tol;
    let mut text = format!("Tr Φ(ρ) = {}\n", crate::scalar::Scalar::Complex(tr));
    text.push_str(&format!(
        "{} critical residual{} {:.3e} (tol {:.1e})\n",
        verdict(critical),
        if star { " (⋆)" } else { "" },
        residual,
        tol
    ));
    let mut j = json!({
        "verb": "rep-check", "trace": [tr.re, tr.im], "residual": residual, "tol": tol,
        "star": star, "critical": critical
    });
    let mut pass = critical;
    if fd {
        let mut rng = rng_from_seed(seed);
        let c = fd_check(&phi, &rho, DEFAULT_FD_STEP, &mut rng)?;
        let ok = c.relative_error <= FD_TOL;
        pass &= ok;
        text.push_str(&format!(
            "{} gradient vs finite difference: relative error {:.3e} (tol {:.0e})\n",
            verdict(ok),
            c.relative_error,
            FD_TOL
        ));
        j["fd_relative_error"] = json!(c.relative_error);
        j["fd_pass"] = json!(ok);
    }
    j["pass"] = json!(pass);
    Ok(Report { code: if pass { EXIT_OK } else { EXIT_FAIL }, json: j, text })
}
