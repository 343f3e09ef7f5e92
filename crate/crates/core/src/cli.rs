//! The `poisson` command-line tool.
//!
//! Every command reads one JSON file and prints a report to stdout. The
//! machine-readable part of a report depends only on the command line and
//! the file contents, so repeated runs are byte-identical.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::io::{
    cochain_terms, parse_cochain, parse_point, parse_structure, BivectorFile, LieAlgebraFile,
    MultivectorJson, PencilFile, StructureInput,
};
use crate::liealg::{CeCochain, LieAlgebra, LieError};
use crate::linalg::{format_rational, int, parse_rational, Rational};
use crate::multivec::PolyMultivector;
use crate::poisson::PoissonStructure;
use crate::stability::{
    classify_fixed_point, distance_to_zero_set, pencil_from_cocycle, pencil_zero_set,
    track_zero_numeric, uniform_grid, zero_set_empty_for_all_nonzero_t, Pencil, StabilityError,
    StabilityVerdict, ZeroSet,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "poisson",
    version,
    about = "Exact Poisson geometry: cohomology, Schouten calculus, stability of fixed points"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Output::Table, global = true)]
    pub output: Output,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jacobi identity, Killing form and semisimplicity of a Lie algebra.
    CheckLie { file: PathBuf },
    /// Chevalley-Eilenberg cohomology with trivial coefficients.
    CeCohomology {
        file: PathBuf,
        /// Highest degree to compute (default: the dimension).
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Jacobi identity of a Lie algebra, or [pi, pi] = 0 for a bivector.
    CheckJacobi { file: PathBuf },
    /// The linear Poisson structure on the dual of a Lie algebra.
    LinearPoisson { file: PathBuf },
    /// Isotropy Lie algebra at a fixed point.
    Isotropy {
        file: PathBuf,
        /// Comma-separated rational coordinates (default: the origin).
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Formal Poisson cohomology, one polynomial degree at a time.
    PoissonCohomology {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        form_degree: usize,
        #[arg(long, default_value_t = 1)]
        poly_degree_max: u32,
    },
    /// Looks for a vector field X with [X, pi] = pi.
    Exactness {
        file: PathBuf,
        /// Maximal polynomial degree of the coefficients of X.
        #[arg(long, default_value_t = 1)]
        degree_cap: u32,
    },
    /// Stability verdict for a fixed point.
    Classify {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Exact zero sets along a pencil pi_0 + t pi_1.
    Pencil {
        file: PathBuf,
        /// Comma-separated rational values of t.
        #[arg(long, default_value = "1,-1,1/2,-1/2", allow_hyphen_values = true)]
        t: String,
    },
    /// Numerically follows a zero along a pencil for t in [0, t_max].
    Track {
        file: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        t_max: f64,
        /// Number of intervals; the grid has steps + 1 points.
        #[arg(long, default_value_t = 49)]
        steps: usize,
        /// Zeros farther than this from the start are not reported.
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
        /// Comma-separated start point (default: the origin).
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckLie { .. } => "check-lie",
            Command::CeCohomology { .. } => "ce-cohomology",
            Command::CheckJacobi { .. } => "check-jacobi",
            Command::LinearPoisson { .. } => "linear-poisson",
            Command::Isotropy { .. } => "isotropy",
            Command::PoissonCohomology { .. } => "poisson-cohomology",
            Command::Exactness { .. } => "exactness",
            Command::Classify { .. } => "classify",
            Command::Pencil { .. } => "pencil",
            Command::Track { .. } => "track",
        }
    }

    fn file(&self) -> &PathBuf {
        match self {
            Command::CheckLie { file }
            | Command::CeCohomology { file, .. }
            | Command::CheckJacobi { file }
            | Command::LinearPoisson { file }
            | Command::Isotropy { file, .. }
            | Command::PoissonCohomology { file, .. }
            | Command::Exactness { file, .. }
            | Command::Classify { file, .. }
            | Command::Pencil { file, .. }
            | Command::Track { file, .. } => file,
        }
    }

    /// The command line in canonical form, with defaults filled in.
    fn echo(&self) -> Vec<String> {
        let mut out = vec![self.name().to_string(), self.file().display().to_string()];
        let mut flag = |k: &str, v: String| {
            out.push(format!("--{k}"));
            out.push(v);
        };
        match self {
            Command::CeCohomology {
                max_degree: Some(k),
                ..
            } => flag("max-degree", k.to_string()),
            Command::Isotropy { point, .. } | Command::Classify { point, .. } => {
                if let Some(p) = point {
                    flag("point", p.clone());
                }
            }
            Command::PoissonCohomology {
                form_degree,
                poly_degree_max,
                ..
            } => {
                flag("form-degree", form_degree.to_string());
                flag("poly-degree-max", poly_degree_max.to_string());
            }
            Command::Exactness { degree_cap, .. } => flag("degree-cap", degree_cap.to_string()),
            Command::Pencil { t, .. } => flag("t", t.clone()),
            Command::Track {
                t_max,
                steps,
                radius,
                start,
                ..
            } => {
                flag("t-max", t_max.to_string());
                flag("steps", steps.to_string());
                flag("radius", radius.to_string());
                if let Some(s) = start {
                    flag("start", s.clone());
                }
            }
            _ => {}
        }
        out
    }
}

/// A finished command: machine-readable results, table rows and notes.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: Vec<String>,
    pub input_sha256: String,
    pub results: Value,
    pub table: Vec<(String, String)>,
    pub notes: Vec<String>,
    pub exit_code: i32,
}

impl Report {
    fn new(command: Vec<String>, input_sha256: String) -> Self {
        Report {
            command,
            input_sha256,
            results: json!({}),
            table: Vec::new(),
            notes: Vec::new(),
            exit_code: 0,
        }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.results[key] = value;
    }

    fn row(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.table.push((key.into(), value.into()));
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "input_sha256": self.input_sha256,
            "results": self.results,
            "notes": self.notes,
        })
    }

    pub fn render(&self, output: Output) -> String {
        match output {
            Output::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
                s.push('\n');
                s
            }
            Output::Table => self.render_table(),
        }
    }

    fn render_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: poisson {}", self.command.join(" "));
        let _ = writeln!(s, "input sha256: {}", self.input_sha256);
        let width = self.table.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.table {
            let mut lines = v.lines();
            let _ = writeln!(s, "{k:<width$}  {}", lines.next().unwrap_or(""));
            for more in lines {
                let _ = writeln!(s, "{:<width$}  {more}", "");
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn rats(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn rats_text(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn multivector(m: &PolyMultivector) -> Value {
    serde_json::to_value(MultivectorJson::from_graded(m)).expect("multivectors serialize")
}

fn cochain(c: &CeCochain) -> Value {
    serde_json::to_value(cochain_terms(c)).expect("cochains serialize")
}

fn lie_file(g: &LieAlgebra) -> Value {
    serde_json::to_value(LieAlgebraFile::from_algebra(g)).expect("Lie algebras serialize")
}

fn bivector_file(pi: &PolyMultivector) -> Value {
    serde_json::to_value(BivectorFile::from_bivector(pi)).expect("bivectors serialize")
}

fn shown(m: &PolyMultivector) -> String {
    if m.is_zero() {
        "0".into()
    } else {
        m.to_string()
    }
}

fn read_input(path: &PathBuf) -> Result<(String, String), Error> {
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|e| Error::Parse {
        location: path.display().to_string(),
        message: format!("input is not UTF-8: {e}"),
    })?;
    Ok((text, digest))
}

fn structure(text: &str) -> Result<PoissonStructure, Error> {
    Ok(match parse_structure(text)? {
        StructureInput::Lie(g) => PoissonStructure::from_lie_algebra(&g),
        StructureInput::Bivector(pi) => PoissonStructure::certify(pi)?,
    })
}

fn point_or_origin(point: &Option<String>, n: usize) -> Result<Vec<Rational>, Error> {
    let x = match point {
        Some(s) => parse_point(s)?,
        None => vec![int(0); n],
    };
    if x.len() != n {
        return Err(Error::Parse {
            location: "--point".into(),
            message: format!("expected {n} coordinates, got {}", x.len()),
        });
    }
    Ok(x)
}

fn parse_floats(s: &str, flag: &str, n: usize) -> Result<Vec<f64>, Error> {
    let x = s
        .split(',')
        .enumerate()
        .map(|(i, part)| {
            part.trim().parse::<f64>().map_err(|e| Error::Parse {
                location: format!("{flag}[{i}]"),
                message: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if x.len() != n {
        return Err(Error::Parse {
            location: flag.into(),
            message: format!("expected {n} coordinates, got {}", x.len()),
        });
    }
    Ok(x)
}

/// Builds the pencil described by a pencil file.
pub fn pencil_from_file(file: &PencilFile) -> Result<(LieAlgebra, CeCochain, Pencil), Error> {
    let g = file.algebra.to_algebra()?;
    let c = match (&file.cocycle, &file.coboundary_of) {
        (Some(_), Some(_)) => {
            return Err(Error::Parse {
                location: "(root)".into(),
                message: "give at most one of \"cocycle\" and \"coboundary_of\"".into(),
            })
        }
        (Some(terms), None) => parse_cochain(g.dim(), 2, terms)?,
        (None, Some(xi)) => {
            let mut terms = Vec::new();
            for (&k, s) in xi {
                let v = parse_rational(s).map_err(|e| Error::Parse {
                    location: format!("coboundary_of.{k}"),
                    message: e.to_string(),
                })?;
                terms.push((vec![k], v));
            }
            let xi = CeCochain::new(g.dim(), 1, terms).map_err(|e| Error::Parse {
                location: "coboundary_of".into(),
                message: e.to_string(),
            })?;
            g.differential(&xi)?
        }
        (None, None) => g
            .ce_cohomology(2)?
            .representatives
            .into_iter()
            .next()
            .ok_or(StabilityError::NoCohomology)?,
    };
    let pencil = pencil_from_cocycle(&g, &c)?;
    Ok((g, c, pencil))
}

fn zero_set_json(zs: &ZeroSet) -> Value {
    json!({
        "empty": zs.empty,
        "particular": zs.particular.as_deref().map(rats),
        "kernel_basis": zs.kernel_basis.iter().map(|v| rats(v)).collect::<Vec<_>>(),
    })
}

fn zero_set_text(zs: &ZeroSet) -> String {
    match &zs.particular {
        None => "empty".into(),
        Some(p) if zs.kernel_basis.is_empty() => format!("{{{}}}", rats_text(p)),
        Some(p) => {
            let dirs: Vec<String> = zs.kernel_basis.iter().map(|v| rats_text(v)).collect();
            format!("{} + span{{{}}}", rats_text(p), dirs.join(", "))
        }
    }
}

fn cmd_check_lie(r: &mut Report, text: &str) -> Result<(), Error> {
    let g = LieAlgebraFile::parse(text)?.to_algebra()?;
    let killing = g.killing_form().to_dense();
    let semisimple = g.is_semisimple();
    r.set("dim", json!(g.dim()));
    r.set("basis", json!(g.basis_names()));
    r.set("jacobi", json!(true));
    r.set(
        "killing_form",
        Value::Array(killing.iter().map(|row| rats(row)).collect()),
    );
    r.set("semisimple", json!(semisimple));
    r.set("abelian", json!(g.is_abelian()));
    r.row("dim", g.dim().to_string());
    r.row("basis", g.basis_names().join(" "));
    r.row("jacobi", "holds");
    r.row(
        "killing form",
        killing
            .iter()
            .map(|row| rats_text(row))
            .collect::<Vec<_>>()
            .join("\n"),
    );
    r.row("semisimple", semisimple.to_string());
    r.notes.push(
        "semisimplicity is decided by Cartan's criterion: the Killing form is nondegenerate".into(),
    );
    Ok(())
}

fn cmd_ce_cohomology(r: &mut Report, text: &str, max_degree: Option<usize>) -> Result<(), Error> {
    let g = LieAlgebraFile::parse(text)?.to_algebra()?;
    let k_max = max_degree.unwrap_or(g.dim()).min(g.dim());
    let mut dims = Vec::new();
    let mut degrees = Vec::new();
    for k in 0..=k_max {
        let h = g.ce_cohomology(k)?;
        dims.push(h.dim);
        let shown: Vec<String> = h
            .representatives
            .iter()
            .map(|c| c.display_with(g.basis_names()))
            .collect();
        r.row(
            format!("H^{k}"),
            if shown.is_empty() {
                "0".to_string()
            } else {
                format!("dim {}: {}", h.dim, shown.join("; "))
            },
        );
        degrees.push(json!({
            "degree": k,
            "dim": h.dim,
            "representatives": h.representatives.iter().map(cochain).collect::<Vec<_>>(),
        }));
    }
    r.set("dims", json!(dims));
    r.set("cohomology", Value::Array(degrees));
    if g.is_semisimple() {
        r.notes.push(
            "semisimple algebra: H^1 = H^2 = 0 by the first and second Whitehead lemmas".into(),
        );
    }
    r.notes
        .push("the H^2 entry is the quantity deciding stability of a fixed point with this isotropy algebra".into());
    Ok(())
}

fn cmd_check_jacobi(r: &mut Report, text: &str) -> Result<(), Error> {
    match parse_structure(text) {
        Ok(StructureInput::Lie(_)) => {
            r.set("kind", json!("lie-algebra"));
            r.set("jacobi", json!(true));
            r.row("jacobi", "holds");
        }
        Ok(StructureInput::Bivector(pi)) => {
            r.set("kind", json!("bivector"));
            let s = pi.schouten(&pi)?;
            r.set("poisson", json!(s.is_zero()));
            r.set("self_bracket", multivector(&s));
            r.row("[pi, pi]", shown(&s));
            if s.is_zero() {
                r.row("poisson", "yes");
            } else {
                r.row("poisson", "no");
                r.exit_code = 3;
            }
            r.notes
                .push("pi is Poisson exactly when its Schouten self-bracket vanishes".into());
        }
        Err(Error::Lie(LieError::JacobiViolation {
            i,
            j,
            k,
            l,
            residual,
        })) => {
            r.set("kind", json!("lie-algebra"));
            r.set("jacobi", json!(false));
            r.set(
                "violation",
                json!({"i": i, "j": j, "k": k, "component": l, "residual": rat(&residual)}),
            );
            let names = LieAlgebraFile::parse(text)?.basis;
            let name = |a: usize| {
                names
                    .get(a)
                    .cloned()
                    .unwrap_or_else(|| format!("e{}", a + 1))
            };
            r.row("jacobi", "fails");
            r.row(
                "witness",
                format!(
                    "[[{}, {}], {}] + cyclic has component {} along {}",
                    name(i),
                    name(j),
                    name(k),
                    format_rational(&residual),
                    name(l)
                ),
            );
            r.exit_code = 3;
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn cmd_linear_poisson(r: &mut Report, text: &str) -> Result<(), Error> {
    let g = LieAlgebraFile::parse(text)?.to_algebra()?;
    let p = PoissonStructure::from_lie_algebra(&g);
    // Re-certify from scratch rather than trusting the construction.
    let p = PoissonStructure::certify(p.into_bivector())?;
    r.set("bivector", bivector_file(p.bivector()));
    r.set("poisson", json!(true));
    r.row("pi", shown(p.bivector()));
    r.row("poisson", "yes");
    r.notes.push(
        "pi^ij(x) = -sum_k c^k_ij x_k; [pi, pi] = 0 is equivalent to the Jacobi identity".into(),
    );
    Ok(())
}

fn cmd_isotropy(r: &mut Report, text: &str, point: &Option<String>) -> Result<(), Error> {
    let p = structure(text)?;
    let x0 = point_or_origin(point, p.ambient_dim())?;
    let g = p.isotropy_at(&x0)?;
    r.set("point", rats(&x0));
    r.set("isotropy", lie_file(&g));
    r.set("semisimple", json!(g.is_semisimple()));
    r.set("linear_at_point", json!(p.is_linear_at(&x0)?));
    r.row("point", rats_text(&x0));
    let brackets: Vec<String> = g
        .structure()
        .iter()
        .map(|(&(i, j), v)| {
            let rhs = CeCochain::new(g.dim(), 1, v.iter().map(|(&k, c)| (vec![k], c.clone())))
                .expect("structure constants are in range")
                .display_with(g.basis_names())
                .replace('*', "");
            format!("[{}, {}] = {rhs}", g.basis_names()[i], g.basis_names()[j])
        })
        .collect();
    r.row(
        "isotropy",
        if brackets.is_empty() {
            "abelian".to_string()
        } else {
            brackets.join("\n")
        },
    );
    r.row("semisimple", g.is_semisimple().to_string());
    r.notes
        .push("constants c^k_ij = -d pi^ij / d x_k at the fixed point".into());
    Ok(())
}

fn cmd_poisson_cohomology(
    r: &mut Report,
    text: &str,
    form_degree: usize,
    poly_degree_max: u32,
) -> Result<(), Error> {
    let p = structure(text)?;
    let h = p.homogeneous_degree()?;
    let pieces = p.formal_cohomology(form_degree, poly_degree_max)?;
    r.set("form_degree", json!(form_degree));
    r.set("homogeneous_degree", json!(h));
    r.set(
        "pieces",
        Value::Array(
            pieces
                .iter()
                .map(|c| {
                    json!({
                        "poly_degree": c.poly_degree,
                        "dim": c.dim,
                        "representatives": c.representatives.iter().map(multivector).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        ),
    );
    r.row("pi", shown(p.bivector()));
    r.row("homogeneous degree", h.to_string());
    for c in &pieces {
        let reps: Vec<String> = c.representatives.iter().map(|m| m.to_string()).collect();
        r.row(
            format!("H^{form_degree} (degree {})", c.poly_degree),
            if reps.is_empty() {
                "0".to_string()
            } else {
                format!("dim {}: {}", c.dim, reps.join("; "))
            },
        );
    }
    if form_degree == 2 {
        r.notes.push(
            "H^2_pi is the space of formal infinitesimal deformations of pi modulo trivial ones"
                .into(),
        );
    }
    Ok(())
}

fn cmd_exactness(r: &mut Report, text: &str, degree_cap: u32) -> Result<(), Error> {
    let p = structure(text)?;
    let witness = p.exactness_witness(degree_cap);
    r.set("degree_cap", json!(degree_cap));
    r.set("exact", json!(witness.is_some()));
    r.set(
        "witness",
        witness.as_ref().map(multivector).unwrap_or(Value::Null),
    );
    r.row("pi", shown(p.bivector()));
    match &witness {
        Some(x) => {
            let check = x.schouten(p.bivector())?;
            if &check != p.bivector() {
                return Err(Error::Internal(
                    "exactness witness failed re-substitution".into(),
                ));
            }
            r.row("exact", "yes");
            r.row("X", shown(x));
            r.notes
                .push("verified by re-substitution: [X, pi] = L_X pi = pi".into());
        }
        None => {
            r.row(
                "exact",
                format!("no witness with coefficients of degree <= {degree_cap}"),
            );
        }
    }
    if p.homogeneous_degree().ok() == Some(1) && !p.bivector().is_zero() {
        r.notes.push(
            "linear structures are exact: X = -E, with E the Euler field, always works".into(),
        );
    }
    Ok(())
}

/// Machine-readable form of a stability verdict, as printed by `classify`.
pub fn verdict_json(v: &StabilityVerdict) -> Value {
    json!({
        "verdict": v.tag.as_str(),
        "h2_dim": v.h2_dim,
        "semisimple": v.semisimple,
        "isotropy": lie_file(&v.isotropy),
        "witness": v.witness.as_ref().map(|w| json!({
            "pi0": bivector_file(w.base().bivector()),
            "pi1": bivector_file(w.deformation()),
            "cocycle": v.witness_cocycle.as_ref().map(cochain),
            "certified_t": rats(&v.certified_t),
            "empty_for_all_nonzero_t": v.empty_for_all_nonzero_t,
        })),
    })
}

fn cmd_classify(r: &mut Report, text: &str, point: &Option<String>) -> Result<(), Error> {
    let p = structure(text)?;
    let x0 = point_or_origin(point, p.ambient_dim())?;
    let v = classify_fixed_point(&p, &x0)?;
    r.set("point", rats(&x0));
    r.set("classification", verdict_json(&v));
    r.row("point", rats_text(&x0));
    r.row("verdict", v.tag.as_str());
    r.row("dim H^2(isotropy)", v.h2_dim.to_string());
    r.row("semisimple isotropy", v.semisimple.to_string());
    if let Some(w) = &v.witness {
        r.row("pencil pi_0", shown(w.base().bivector()));
        r.row("pencil pi_1", shown(w.deformation()));
        if let Some(c) = &v.witness_cocycle {
            r.row("cocycle", c.display_with(v.isotropy.basis_names()));
        }
        let ts: Vec<String> = v.certified_t.iter().map(format_rational).collect();
        r.row("no zeros at t", ts.join(", "));
        r.row(
            "no zeros for all t != 0",
            v.empty_for_all_nonzero_t.to_string(),
        );
        if x0.iter().any(|c| c != &int(0)) {
            r.notes
                .push("the pencil is written in coordinates centred at the fixed point".into());
        }
    }
    r.notes.extend(v.notes.iter().cloned());
    Ok(())
}

fn pencil_rows(r: &mut Report, g: &LieAlgebra, c: &CeCochain, pencil: &Pencil) {
    r.set("algebra", lie_file(g));
    r.set("cocycle", cochain(c));
    r.set("pi0", bivector_file(pencil.base().bivector()));
    r.set("pi1", bivector_file(pencil.deformation()));
    r.row("cocycle", c.display_with(g.basis_names()));
    r.row("pi_0", shown(pencil.base().bivector()));
    r.row("pi_1", shown(pencil.deformation()));
}

fn cmd_pencil(r: &mut Report, text: &str, t: &str) -> Result<(), Error> {
    let file = PencilFile::parse(text)?;
    let (g, c, pencil) = pencil_from_file(&file)?;
    let ts: Vec<Rational> = t
        .split(',')
        .enumerate()
        .map(|(i, s)| {
            parse_rational(s.trim()).map_err(|e| Error::Parse {
                location: format!("--t[{i}]"),
                message: e.to_string(),
            })
        })
        .collect::<Result<_, _>>()?;
    pencil_rows(r, &g, &c, &pencil);
    let mut members = Vec::new();
    for t in &ts {
        let certified = pencil.member(t).is_ok();
        if !certified {
            return Err(Error::Internal(format!(
                "pencil member at t = {t} is not Poisson"
            )));
        }
        let zs = pencil_zero_set(&pencil, t)?;
        r.row(
            format!("zeros at t = {}", format_rational(t)),
            zero_set_text(&zs),
        );
        members.push(json!({"t": rat(t), "poisson": certified, "zero_set": zero_set_json(&zs)}));
    }
    let all_empty = zero_set_empty_for_all_nonzero_t(&pencil)?;
    r.set("members", Value::Array(members));
    r.set("compatible", json!(true));
    r.set("empty_for_all_nonzero_t", json!(all_empty));
    r.row("[pi_0, pi_1]", "0");
    r.row("no zeros for all t != 0", all_empty.to_string());
    r.notes
        .push("[pi_0, pi_1] = 0 and [pi_1, pi_1] = 0, so every pi_0 + t pi_1 is Poisson".into());
    if all_empty {
        r.notes.push(
            "a nonzero H^2 class removes the fixed point for every t != 0, so the origin is not stable"
                .into(),
        );
    }
    Ok(())
}

fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn cmd_track(
    r: &mut Report,
    text: &str,
    t_max: f64,
    steps: usize,
    radius: f64,
    start: &Option<String>,
) -> Result<(), Error> {
    let file = PencilFile::parse(text)?;
    let (g, c, pencil) = pencil_from_file(&file)?;
    let n = pencil.ambient_dim();
    let x_start = match start {
        Some(s) => parse_floats(s, "--start", n)?,
        None => vec![0.0; n],
    };
    pencil_rows(r, &g, &c, &pencil);
    let grid = uniform_grid(t_max, steps);
    let track = track_zero_numeric(&pencil, &grid, &x_start, radius);
    let mut rows = Vec::new();
    let mut disagreements = 0;
    for pt in &track {
        let exact = Rational::from_float(pt.t)
            .map(|t| pencil_zero_set(&pencil, &t))
            .transpose()?;
        let distance = match (&exact, &pt.zero) {
            (Some(zs), Some(x)) => distance_to_zero_set(zs, x),
            _ => None,
        };
        let agrees = match (&exact, &pt.zero) {
            (Some(zs), Some(_)) => !zs.empty && distance.is_some_and(|d| d < 1e-8),
            (Some(zs), None) => zs.empty,
            (None, _) => false,
        };
        if !agrees {
            disagreements += 1;
        }
        let zero_text = match &pt.zero {
            Some(x) => {
                let parts: Vec<String> = x.iter().map(|v| format!("{v:.6}")).collect();
                format!("({})", parts.join(", "))
            }
            None => "none".into(),
        };
        r.row(
            format!("t = {:.6}", pt.t),
            format!(
                "{zero_text}  residual {:.1e}  exact {}",
                pt.residual,
                if exact.as_ref().is_some_and(|z| !z.empty) {
                    "nonempty"
                } else {
                    "empty"
                }
            ),
        );
        rows.push(json!({
            "t": float(pt.t),
            "zero": pt.zero.as_ref().map(|x| x.iter().map(|&v| float(v)).collect::<Vec<_>>()),
            "residual": float(pt.residual),
            "exact_empty": exact.as_ref().map(|z| z.empty),
            "distance_to_exact": distance.map(float),
            "agrees": agrees,
        }));
    }
    r.set("track", Value::Array(rows));
    r.set("disagreements", json!(disagreements));
    r.row("disagreements", disagreements.to_string());
    r.notes.push(format!(
        "damped Gauss-Newton, residual tolerance {:e}, at most {} iterations per t, zeros kept within radius {radius} of the start",
        crate::stability::RESIDUAL_TOL,
        crate::stability::MAX_ITERATIONS
    ));
    r.notes.push(
        "empirical check that the fixed point persists (or disappears) along the pencil".into(),
    );
    Ok(())
}

/// Runs one parsed command line. An `Err` carries no partial report.
pub fn run(cli: &Cli) -> Result<Report, Error> {
    let cmd = &cli.command;
    let (text, digest) = read_input(cmd.file())?;
    let mut r = Report::new(cmd.echo(), digest);
    match cmd {
        Command::CheckLie { .. } => cmd_check_lie(&mut r, &text)?,
        Command::CeCohomology { max_degree, .. } => cmd_ce_cohomology(&mut r, &text, *max_degree)?,
        Command::CheckJacobi { .. } => cmd_check_jacobi(&mut r, &text)?,
        Command::LinearPoisson { .. } => cmd_linear_poisson(&mut r, &text)?,
        Command::Isotropy { point, .. } => cmd_isotropy(&mut r, &text, point)?,
        Command::PoissonCohomology {
            form_degree,
            poly_degree_max,
            ..
        } => cmd_poisson_cohomology(&mut r, &text, *form_degree, *poly_degree_max)?,
        Command::Exactness { degree_cap, .. } => cmd_exactness(&mut r, &text, *degree_cap)?,
        Command::Classify { point, .. } => cmd_classify(&mut r, &text, point)?,
        Command::Pencil { t, .. } => cmd_pencil(&mut r, &text, t)?,
        Command::Track {
            t_max,
            steps,
            radius,
            start,
            ..
        } => cmd_track(&mut r, &text, *t_max, *steps, *radius, start)?,
    }
    Ok(r)
}

/// Renders an error in the requested format.
pub fn render_error(cli: &Cli, e: &Error) -> String {
    match cli.output {
        Output::Json => {
            let v = json!({
                "command": cli.command.echo(),
                "error": {"exit_code": e.exit_code(), "message": e.to_string()},
            });
            let mut s = serde_json::to_string_pretty(&v).expect("errors serialize");
            s.push('\n');
            s
        }
        Output::Table => format!("error: {e}\n"),
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            print!("{e}");
            return code;
        }
    };
    let result = std::panic::catch_unwind(|| run(&cli));
    match result {
        Ok(Ok(report)) => {
            print!("{}", report.render(cli.output));
            report.exit_code
        }
        Ok(Err(e)) => {
            print!("{}", render_error(&cli, &e));
            e.exit_code()
        }
        Err(_) => {
            print!(
                "{}",
                render_error(&cli, &Error::Internal("unexpected panic".into()))
            );
            4
        }
    }
}
