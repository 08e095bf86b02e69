//! Command-line front end: argument parsing, dispatch and exit codes.

pub mod output;

use std::ffi::OsString;
use std::io::Write;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sibling_core::dilatation::{self, DilatationResult};
use sibling_core::filling::{self, CohomologyClass};
use sibling_core::search::{self, Table1Row, Table2Row};
use sibling_core::traintrack::GradedSubstitution;
use sibling_core::volume;
use sibling_core::{Error, SolveOptions};

use output::{write_records, Format, OutputRecord, FULL, TABLE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_CONSISTENCY: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "sibling", version, about = "Fibered Dehn fillings of the Whitehead sibling")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Newton residual tolerance.
    #[arg(long, global = true, env = "SB_TOL", default_value_t = 1e-12)]
    pub tol: f64,
    /// Newton iterations per continuation step.
    #[arg(long, global = true, env = "SB_MAX_ITER", default_value_t = 100)]
    pub max_iter: usize,
    /// Initial number of continuation steps.
    #[arg(long, global = true, env = "SB_CONTINUATION_STEPS", default_value_t = 16)]
    pub continuation_steps: usize,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, env = "SB_JOBS", default_value_t = 0)]
    pub jobs: usize,
}

impl GlobalOpts {
    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            tol: self.tol,
            max_iter: self.max_iter,
            continuation_steps: self.continuation_steps,
            ..SolveOptions::default()
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ClassArgs {
    #[arg(allow_hyphen_values = true)]
    pub a: i64,
    #[arg(allow_hyphen_values = true)]
    pub b: i64,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct RangeArgs {
    /// Smallest genus (positional form).
    pub gmin_pos: Option<i64>,
    /// Largest genus (positional form).
    pub gmax_pos: Option<i64>,
    #[arg(long)]
    pub gmin: Option<i64>,
    #[arg(long)]
    pub gmax: Option<i64>,
}

impl RangeArgs {
    fn resolve(&self, default: (i64, i64)) -> (i64, i64) {
        let lo = self.gmin.or(self.gmin_pos).unwrap_or(default.0);
        let hi = self.gmax.or(self.gmax_pos).unwrap_or(default.1);
        (lo, hi)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolumeMethod {
    Exact,
    Nz2,
    Nz4,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Genus and mod-5 indicators of a class.
    Genus(ClassArgs),
    /// Filling slopes on both cusps.
    Slopes(ClassArgs),
    /// The selected fibered filling M_g of genus g.
    Mg { g: i64 },
    /// Dilatation of the monodromy of a class.
    Dilatation(ClassArgs),
    /// Volume of the filling, solved or estimated.
    Volume {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, default_value_t = VolumeMethod::All)]
        method: VolumeMethod,
    },
    /// Singularities of the invariant foliation.
    Foliation(ClassArgs),
    /// Teichmuller polynomial of the embedded or a supplied train track.
    Teichmuller {
        #[arg(long)]
        file: Option<std::path::PathBuf>,
    },
    /// Low-dilatation table.
    Table1 {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Orientable table, odd genera only.
    Table2 {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Every fibered class of genus g with estimates and argmin markers.
    Scan {
        g: i64,
        /// Skip the volume solves and mark the order-4 argmin.
        #[arg(long)]
        estimates_only: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Shapes and volume of the complete structure on W.
    CompleteStructure,
    /// Fitted potential coefficients near the complete structure.
    FitCoeffs,
    /// Exact factorization behind the genus-7 orientable minimum.
    Delta7,
}

/// Run with the given arguments, writing to `out`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(records) => match emit(out, &records) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {e:#}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}

/// Records produced by a command and how to print them.
pub struct Emitted {
    pub records: Vec<OutputRecord>,
    pub format: Format,
}

fn emit(out: &mut impl Write, e: &Emitted) -> Result<()> {
    write_records(out, &e.records, e.format)
}

pub fn exit_code(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<Error>() {
        Some(core) if core.is_numeric() => EXIT_NUMERIC,
        Some(core) if core.is_consistency() => EXIT_CONSISTENCY,
        _ => EXIT_USAGE,
    }
}

fn json(records: Vec<OutputRecord>) -> Emitted {
    Emitted { records, format: Format::Json }
}

fn class_record(phi: &CohomologyClass) -> OutputRecord {
    let mut r = OutputRecord::new(FULL);
    r.int("a", phi.a()).int("b", phi.b());
    r
}

fn reduce(c: &ClassArgs) -> Result<(CohomologyClass, filling::Symmetry)> {
    Ok(CohomologyClass::reduce(c.a, c.b)?)
}

pub fn dispatch(cli: &Cli) -> Result<Emitted> {
    let opts = cli.global.solve_options();
    opts.validate()?;
    match &cli.command {
        Command::Genus(c) => {
            let (phi, sym) = reduce(c)?;
            let e = phi.epsilons();
            let mut r = OutputRecord::new(FULL);
            r.int("input_a", c.a).int("input_b", c.b).int("a", phi.a()).int("b", phi.b());
            r.text("symmetry", sym).int("genus", phi.genus());
            r.int("eps", e.eps.into()).int("eps1", e.eps1.into()).int("eps2", e.eps2.into());
            r.flag("hyperbolic", phi.is_hyperbolic()).flag("orientable", phi.is_orientable());
            Ok(json(vec![r]))
        }
        Command::Slopes(c) => {
            let (phi, _) = reduce(c)?;
            let f = phi.filling();
            let mut r = class_record(&phi);
            for k in 0..2 {
                let n = k + 1;
                r.text(&format!("slope{n}"), f.primitive[k]);
                r.text(&format!("unreduced{n}"), f.unreduced[k]);
                r.int(&format!("d{n}"), f.d[k]);
            }
            r.text("source", "exact");
            Ok(json(vec![r]))
        }
        Command::Mg { g } => {
            let m = dilatation::mg_dilatation(*g)?;
            let phi = m.selection.phi;
            let mut r = OutputRecord::new(FULL);
            r.int("g", *g).int("a", phi.a()).int("b", phi.b()).text("family", m.selection.family);
            let f = m.selection.filling;
            r.text("slope1", f.primitive[0]).text("slope2", f.primitive[1]);
            r.text("unreduced1", f.unreduced[0]).text("unreduced2", f.unreduced[1]);
            r.float("lambda", m.result.lambda).flag("orientable", phi.is_orientable());
            r.text("polynomial", &m.result.poly).text("source", "exact");
            Ok(json(vec![r]))
        }
        Command::Dilatation(c) => {
            let (phi, _) = reduce(c)?;
            Ok(json(vec![dilatation_record(&dilatation::dilatation(&phi)?)]))
        }
        Command::Volume { class, method } => {
            let (phi, _) = reduce(class)?;
            phi.require_hyperbolic()?;
            let mut records = Vec::new();
            let mut push = |name: &str, value: f64, source: &str| {
                let mut r = class_record(&phi);
                r.text("method", name).float("volume", value).text("source", source);
                r.text("n_phi", volume::n_phi(&phi));
                records.push(r);
            };
            if matches!(method, VolumeMethod::Exact | VolumeMethod::All) {
                push("exact", volume::solve_filled(&phi, &opts)?.volume(), "solver");
            }
            if matches!(method, VolumeMethod::Nz2 | VolumeMethod::All) {
                push("nz2", volume::nz_order2(&phi), "formula");
            }
            if matches!(method, VolumeMethod::Nz4 | VolumeMethod::All) {
                push("nz4", volume::nz_order4(&phi), "formula");
            }
            Ok(json(records))
        }
        Command::Foliation(c) => {
            let (phi, _) = reduce(c)?;
            let f = dilatation::foliation(&phi);
            let mut r = class_record(&phi);
            for (k, cusp) in f.cusps.iter().enumerate() {
                r.int(&format!("singularities{}", k + 1), cusp.count);
                r.int(&format!("prongs{}", k + 1), cusp.prongs);
            }
            r.flag("orientable", f.orientable).flag("hyperbolic", f.hyperbolic);
            r.int("index_sum", f.index_sum()).flag("euler_poincare", dilatation::euler_poincare_check(&phi));
            Ok(json(vec![r]))
        }
        Command::Teichmuller { file } => {
            let track = match file {
                Some(path) => std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?
                    .parse::<GradedSubstitution>()?,
                None => GradedSubstitution::whitehead_sibling(),
            };
            let theta = track.teichmuller_polynomial()?;
            let mut r = OutputRecord::new(FULL);
            r.text("theta_ut", theta.theta_ut.display_with(["u", "t"]));
            r.text("theta_xy", theta.theta_xy.display_with(["x", "y"]));
            r.text("source", "exact");
            Ok(json(vec![r]))
        }
        Command::Table1 { range, format } => {
            let (lo, hi) = range.resolve((3, 38));
            let rows = search::table1(lo, hi)?;
            Ok(Emitted { records: rows.iter().map(table1_record).collect(), format: (*format).into() })
        }
        Command::Table2 { range, format } => {
            let (lo, hi) = range.resolve((3, 45));
            let rows = search::table2(lo, hi)?;
            Ok(Emitted { records: rows.iter().map(table2_record).collect(), format: (*format).into() })
        }
        Command::Scan { g, estimates_only, format } => {
            let rep = search::scan(*g, if *estimates_only { None } else { Some(&opts) })?;
            let records = rep
                .classes
                .iter()
                .map(|c| {
                    let mut r = OutputRecord::new(FULL);
                    r.int("g", rep.g).int("a", c.phi.a()).int("b", c.phi.b()).text("family", c.family);
                    r.float("lambda", c.lambda).flag("orientable", c.orientable).text("n_phi", c.n_phi);
                    r.float("nz2", c.order2).float("nz4", c.order4).opt_float("exact", c.volume);
                    r.flag("min_volume", c.min_volume).flag("min_dilatation", c.min_dilatation).flag("mg", c.is_mg);
                    r
                })
                .collect();
            Ok(Emitted { records, format: (*format).into() })
        }
        Command::CompleteStructure => {
            let sol = volume::solve_complete(&opts)?;
            let mut r = OutputRecord::new(FULL);
            for (j, z) in sol.shapes.z.iter().enumerate() {
                r.float(&format!("z{}_re", j + 1), z.re).float(&format!("z{}_im", j + 1), z.im);
            }
            let h = sol.shapes.holonomy();
            r.float("volume", sol.volume()).float("u1_abs", h.u[0].norm()).float("u2_abs", h.u[1].norm());
            r.int("iterations", sol.iterations as i64).text("source", "solver");
            Ok(json(vec![r]))
        }
        Command::FitCoeffs => {
            let c = volume::fit_potential_coeffs(&opts)?;
            let mut r = OutputRecord::new(FULL);
            for (name, z) in [("c1", c.c1), ("c2", c.c2), ("c3", c.c3)] {
                r.float(&format!("{name}_re"), z.re).float(&format!("{name}_im"), z.im);
            }
            r.float("residual", c.residual).text("source", "solver");
            Ok(json(vec![r]))
        }
        Command::Delta7 => {
            let c = dilatation::delta7_certificate()?;
            let mut r = OutputRecord::new(FULL);
            r.text("polynomial", &c.lambda_poly).text("cyclotomic", &c.cyclotomic).text("quotient", &c.quotient);
            r.flag("exact_division", c.remainder.is_zero());
            r.float("root", c.root).float("interval_lo", c.interval.lo_f64()).float("interval_hi", c.interval.hi_f64());
            r.float("factor_residual", c.factor_residual).text("source", "exact");
            Ok(json(vec![r]))
        }
    }
}

fn dilatation_record(d: &DilatationResult) -> OutputRecord {
    let mut r = OutputRecord::new(FULL);
    r.int("a", d.a).int("b", d.b).text("polynomial", &d.poly);
    r.float("lambda", d.lambda).float("log_lambda", d.log_lambda);
    r.float("interval_lo", d.interval.lo_f64()).float("interval_hi", d.interval.hi_f64());
    r.text("method", format!("{:?}", d.method).to_lowercase()).float("residual", d.residual);
    r
}

pub fn table1_record(row: &Table1Row) -> OutputRecord {
    let phi = row.selection.phi;
    let mut r = OutputRecord::new(TABLE);
    r.int("g", row.g).int("a", phi.a()).int("b", phi.b()).text("family", row.selection.family);
    r.float("lambda", row.lambda).flag("lambda_orientable", row.lambda_orientable);
    r.float("lt1", row.candidates[0]).float("lt3", row.candidates[1]);
    r.flag("lt3_primitive", row.candidate_primitive[1]);
    r.flag("lt1_lower", row.candidate_lower[0]).flag("lt3_lower", row.candidate_lower[1]);
    r.flag("lt_orientable", row.candidate_orientable);
    r
}

pub fn table2_record(row: &Table2Row) -> OutputRecord {
    let mut r = OutputRecord::new(TABLE);
    r.int("g", row.g).int("a", row.phi.a()).int("b", row.phi.b()).float("lambda_plus", row.lambda);
    r.float("lt1", row.candidates[0]).float("lt3", row.candidates[1]);
    r
}
