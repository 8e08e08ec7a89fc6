//! Library side of the `setopt` command-line tool. Every command returns
//! its report as text together with an exit status, so the binary is a
//! thin wrapper and the commands are testable in-process.

pub mod svg;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use setopt_core::convex::{self, Verdict};
use setopt_core::duality;
use setopt_core::laws::{self, Mutation};
use setopt_core::problem::Instance;
use setopt_core::random::{self, InstanceParams};
use setopt_core::rational::{format_vector, parse_rational, parse_vector, Rational, Vector};
use setopt_core::{Error, Frontier};

/// Largest dual set a `--grid` flag may expand to.
pub const MAX_GRID_DUALS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    /// Success, or every checked law holds.
    Ok = 0,
    /// A negative mathematical verdict or a violated law.
    Negative = 1,
    /// Bad flags, unreadable or invalid input.
    Input = 2,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub exit: Exit,
}

impl Output {
    fn ok(text: impl Into<String>) -> Self {
        Self { text: text.into(), exit: Exit::Ok }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub exit: Exit,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { message: message.into(), exit: Exit::Input }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit = if matches!(e, Error::Verification(_)) { Exit::Negative } else { Exit::Input };
        Self { message: e.to_string(), exit }
    }
}

pub type CmdResult = Result<Output, CliError>;

#[derive(Parser, Debug)]
#[command(name = "setopt", version, about = "Exact set-valued Lagrange duality on finite instances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the seeded property suite.
    Props {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = MutateArg::None, hide = true)]
        mutate: MutateArg,
    },
    /// Print the primal value and the feasible set.
    Solve { file: PathBuf },
    /// Print the dual value over a finite dual set.
    Dual {
        file: PathBuf,
        #[command(flatten)]
        duals: DualArgs,
    },
    /// Compare primal, vector-dual and operator-dual values.
    Gap {
        file: PathBuf,
        #[command(flatten)]
        duals: DualArgs,
    },
    /// Certify strong duality for the convexified instance (q = 2).
    Certify {
        file: PathBuf,
        /// Sampled check for any q; the verdict is at best NotRefuted.
        #[arg(long)]
        heuristic: bool,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the certificate as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Write a seeded random instance.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        decisions: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Draw the primal frontier (and optionally a dual value) as SVG.
    Plot {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long = "box", num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        bounds: Option<Vec<String>>,
        #[command(flatten)]
        duals: DualArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MutateArg {
    None,
    NoPruning,
}

#[derive(Args, Debug, Clone, Default)]
pub struct DualArgs {
    /// A dual variable as comma-separated rationals; repeatable.
    #[arg(long = "ustar", allow_hyphen_values = true)]
    pub ustar: Vec<String>,
    /// Every point of {LO, LO+STEP, …, HI}^m.
    #[arg(long, num_args = 3, value_names = ["LO", "HI", "STEP"], allow_hyphen_values = true)]
    pub grid: Option<Vec<String>>,
}

fn rational_arg(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::input(e.to_string()))
}

impl DualArgs {
    pub fn is_empty(&self) -> bool {
        self.ustar.is_empty() && self.grid.is_none()
    }

    /// Expands the flags into an explicit dual set for an `m`-dimensional
    /// constraint space.
    pub fn expand(&self, m: usize) -> Result<Vec<Vector>, CliError> {
        let mut duals = Vec::new();
        for s in &self.ustar {
            let u = parse_vector(s).map_err(|e| CliError::input(format!("--ustar {s:?}: {e}")))?;
            if u.len() != m {
                return Err(CliError::input(format!("--ustar {s:?} has {} coordinates, expected {m}", u.len())));
            }
            duals.push(u);
        }
        if let Some(g) = &self.grid {
            let (lo, hi, step) = (rational_arg(&g[0])?, rational_arg(&g[1])?, rational_arg(&g[2])?);
            if step > Rational::default() && lo <= hi {
                let per_axis = ((&hi - &lo) / &step).floor() + Rational::from_integer(1.into());
                let total = setopt_core::rational::to_f64(&per_axis).powi(m as i32);
                if total > MAX_GRID_DUALS as f64 {
                    return Err(CliError::input(format!("--grid expands to more than {MAX_GRID_DUALS} duals")));
                }
            }
            duals.extend(duality::dual_grid(m, &lo, &hi, &step)?);
        }
        if duals.is_empty() {
            return Err(CliError::input("no dual variables given; use --ustar or --grid"));
        }
        Ok(duals)
    }
}

pub fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Instance::from_json(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn feasible_text(inst: &Instance) -> String {
    format!("{{{}}}", inst.feasible_set().join(","))
}

pub fn cmd_solve(file: &Path) -> CmdResult {
    let inst = load_instance(file)?;
    Ok(Output::ok(format!("{}; S = {}\n", inst.primal_value(), feasible_text(&inst))))
}

pub fn cmd_dual(file: &Path, duals: &DualArgs) -> CmdResult {
    let inst = load_instance(file)?;
    let duals = duals.expand(inst.m())?;
    let mut text = String::new();
    for u in &duals {
        text.push_str(&format!("phi{} = {}\n", format_vector(u), duality::phi(&inst, u)?));
    }
    text.push_str(&format!("dual: {}\n", duality::dual_value(&inst, &duals)?));
    Ok(Output::ok(text))
}

pub fn cmd_gap(file: &Path, duals: &DualArgs) -> CmdResult {
    let inst = load_instance(file)?;
    let duals = duals.expand(inst.m())?;
    let report = duality::gap_report(&inst, &duals, &[])?;
    Ok(Output::ok(format!("{report}\n")))
}

pub fn cmd_certify(file: &Path, heuristic: bool, samples: usize, seed: u64, json: bool) -> CmdResult {
    let inst = load_instance(file)?;
    if !heuristic && inst.q() != 2 {
        return Err(CliError::input("exact certification requires q=2"));
    }
    if heuristic && samples == 0 {
        return Err(CliError::input("--samples must be at least 1"));
    }
    let cert = match convex::convexify(&inst) {
        Ok(cv) if heuristic => convex::certify_heuristic(&cv, samples, seed)?,
        Ok(cv) => convex::certify_strong_duality(&cv)?,
        Err(e) => return Err(e.into()),
    };
    let exit = match cert.verdict {
        Verdict::Certified | Verdict::NotRefuted => Exit::Ok,
        Verdict::Failed(_) => Exit::Negative,
    };
    let text = if json { cert.to_json() } else { format!("{cert}\n") };
    Ok(Output { text, exit })
}

pub fn cmd_props(seed: u64, trials: usize, mutation: Mutation) -> CmdResult {
    if trials == 0 {
        return Err(CliError::input("--trials must be at least 1"));
    }
    let reports = laws::run_all(seed, trials, mutation)?;
    let mut text = String::new();
    let mut failed = 0;
    for r in &reports {
        text.push_str(&format!("{r}\n"));
        failed += usize::from(!r.passed());
    }
    text.push_str(&format!("{} laws, {} failed (seed {seed}, {trials} trials each)\n", reports.len(), failed));
    Ok(Output { text, exit: if failed == 0 { Exit::Ok } else { Exit::Negative } })
}

pub fn cmd_gen(seed: u64, params: &InstanceParams, out: Option<&Path>) -> CmdResult {
    params.validate()?;
    let json = random::gen_instance(seed, params)?.to_json();
    match out {
        Some(path) => {
            write_file(path, &json)?;
            Ok(Output::ok(format!("wrote {}\n", path.display())))
        }
        None => Ok(Output::ok(json)),
    }
}

pub fn cmd_plot(file: &Path, out: Option<&Path>, bounds: Option<&[String]>, duals: &DualArgs) -> CmdResult {
    let out = out.ok_or_else(|| CliError::input("plot needs an output path (-o FILE.svg)"))?;
    let inst = load_instance(file)?;
    if inst.q() != 2 {
        return Err(CliError::input("plot requires q=2"));
    }
    let (lo, hi) = match bounds {
        Some([lo, hi]) => (rational_arg(lo)?, rational_arg(hi)?),
        Some(_) => return Err(CliError::input("--box takes LO HI")),
        None => (Rational::from_integer((-5).into()), Rational::from_integer(5.into())),
    };
    if lo >= hi {
        return Err(CliError::input("--box requires LO < HI"));
    }
    let primal = inst.primal_value();
    let mut dual: Option<Frontier> = None;
    if !duals.is_empty() {
        dual = Some(duality::dual_value(&inst, &duals.expand(inst.m())?)?);
    }
    let mut layers =
        vec![svg::Layer { label: format!("primal {primal}"), value: &primal, color: "#1f4e9c", dashed: false }];
    if let Some(d) = &dual {
        layers.push(svg::Layer { label: format!("dual {d}"), value: d, color: "#c0392b", dashed: true });
    }
    let doc = svg::render(&layers, &lo, &hi)?;
    write_file(out, &doc)?;
    Ok(Output::ok(format!("wrote {}\n", out.display())))
}

pub fn execute(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Props { seed, trials, mutate } => {
            let mutation = match mutate {
                MutateArg::None => Mutation::None,
                MutateArg::NoPruning => Mutation::NoPruning,
            };
            cmd_props(*seed, *trials, mutation)
        }
        Command::Solve { file } => cmd_solve(file),
        Command::Dual { file, duals } => cmd_dual(file, duals),
        Command::Gap { file, duals } => cmd_gap(file, duals),
        Command::Certify { file, heuristic, samples, seed, json } => {
            cmd_certify(file, *heuristic, *samples, *seed, *json)
        }
        Command::Gen { seed, q, m, decisions, out } => {
            let params = InstanceParams { q: *q, m: *m, decisions: *decisions, ..Default::default() };
            cmd_gen(*seed, &params, out.as_deref())
        }
        Command::Plot { file, out, bounds, duals } => cmd_plot(file, out.as_deref(), bounds.as_deref(), duals),
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// text for stdout, the text for stderr, and the exit status.
pub fn run<I, T>(args: I) -> (String, String, Exit)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let exit = if e.use_stderr() { Exit::Input } else { Exit::Ok };
            let text = e.render().to_string();
            return if exit == Exit::Ok { (text, String::new(), exit) } else { (String::new(), text, exit) };
        }
    };
    match execute(&cli) {
        Ok(out) => (out.text, String::new(), out.exit),
        Err(e) => (String::new(), format!("error: {e}\n"), e.exit),
    }
}
