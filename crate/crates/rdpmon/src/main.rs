use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rdpmon::error::{CliError, EXIT_OK};
use rdpmon::job::{Analysis, Grid, JobSpec, Model};
use rdpmon::report::{Envelope, ErrorReport};
use rdpmon::{run, text};
use rdpmon_core::scalar::DEFAULT_PRECISION;

#[derive(Parser, Debug)]
#[command(name = "rdpmon", version, about = "Rational double points over p-adic bases")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Residue characteristic.
    #[arg(short = 'p', long = "prime", global = true, default_value_t = 7)]
    prime: u64,
    /// Relative precision N of the scalars.
    #[arg(long, global = true, env = "RDPMON_PRECISION", default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// Scalar model: formal power series in pi, or the p-adic integers with pi = p.
    #[arg(long, global = true, value_enum, default_value_t = ModelArg::Abstract)]
    model: ModelArg,
    /// Write compact JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the report to a file instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Abstract,
    Prime,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Abstract => Model::Abstract,
            ModelArg::Prime => Model::Prime,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the special fiber of an equation in x, y, z.
    Classify { equation: String },
    /// Miniversal deformation of the special fiber and fitted parameters.
    Deform { equation: String },
    /// Monodromy class of a type A family.
    Monodromy { equation: String },
    /// Root datum and Weyl group data for a Dynkin label such as E8.
    Weyl {
        class: String,
        /// Type A element by cycle type, e.g. 2,1,1.
        #[arg(long, value_delimiter = ',')]
        cycle_type: Option<Vec<usize>>,
    },
    /// Subregular slice and sl2 data in sl_(n+1) for a label A_n.
    Slice { class: String },
    /// Monodromy of y^(n+1) + Σ pi^(a_i) y^i over a grid of exponents.
    Sweep {
        /// n, the rank of the special fiber A_n.
        #[arg(long)]
        rank: u32,
        /// Every a_i ranges over 1..=max_exponent.
        #[arg(long, default_value_t = 3)]
        max_exponent: u32,
        /// Refuse grids with more points than this.
        #[arg(long, default_value_t = 4096)]
        max_points: u64,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

enum Mode {
    Text,
    Json,
    Pretty,
}

fn render<T: Serialize>(env: &Envelope<T>, mode: &Mode, text: impl Fn(&T) -> String) -> String {
    match mode {
        Mode::Json => serde_json::to_string(env).expect("reports serialize") + "\n",
        Mode::Pretty => serde_json::to_string_pretty(env).expect("reports serialize") + "\n",
        Mode::Text => format!("{} {} {}\n{}", env.tool, env.version, env.kind, text(&env.result)),
    }
}

fn build_job(g: &GlobalArgs, command: &Command) -> Result<JobSpec, CliError> {
    let (input, analysis) = match command {
        Command::Classify { equation } => (equation.clone(), Analysis::Classify),
        Command::Deform { equation } => (equation.clone(), Analysis::Deform),
        Command::Monodromy { equation } => (equation.clone(), Analysis::Monodromy),
        Command::Weyl { class, .. } => (class.clone(), Analysis::Weyl),
        Command::Slice { class } => (class.clone(), Analysis::Slice),
        Command::Sweep { rank, .. } => (run::sweep_template(*rank), Analysis::Sweep),
    };
    let mut job = JobSpec::new(g.prime, g.precision, g.model.into(), input, vec![analysis])?;
    job.output = g.output.clone();
    match command {
        Command::Weyl { cycle_type, .. } => job.cycle_type = cycle_type.clone(),
        Command::Sweep { rank, max_exponent, max_points, .. } => {
            if *rank == 0 {
                return Err(CliError::Job("sweep rank must be at least 1".into()));
            }
            job.grid = Some(Grid { rank: *rank, max_exponent: *max_exponent, max_points: *max_points });
        }
        _ => {}
    }
    Ok(job)
}

fn execute(job: &JobSpec, command: &Command, mode: &Mode) -> Result<String, CliError> {
    Ok(match command {
        Command::Classify { .. } => render(&run::run_classify(job)?, mode, text::classify),
        Command::Deform { .. } => render(&run::run_deform(job)?, mode, text::deform),
        Command::Monodromy { .. } => render(&run::run_monodromy(job)?, mode, text::monodromy),
        Command::Weyl { .. } => render(&run::run_weyl(job)?, mode, text::weyl),
        Command::Slice { .. } => render(&run::run_slice(job)?, mode, text::slice),
        Command::Sweep { jobs, .. } => render(&run::run_sweep(job, *jobs)?, mode, text::sweep),
    })
}

fn write_out(path: Option<&str>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, body).map_err(|source| CliError::Io { path: p.to_string(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|source| CliError::Io { path: "stdout".into(), source })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let mode = match (g.pretty, g.json) {
        (true, _) => Mode::Pretty,
        (false, true) => Mode::Json,
        _ => Mode::Text,
    };
    let job = match build_job(g, &cli.command) {
        Ok(job) => job,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(err.exit_code());
        }
    };
    let result = execute(&job, &cli.command, &mode).and_then(|body| write_out(job.output.as_deref(), &body));
    let Err(err) = result else { return ExitCode::from(EXIT_OK) };
    eprintln!("error: {err}");
    if !matches!(mode, Mode::Text) && !matches!(err, CliError::Io { .. }) {
        let doc = Envelope::new("error", job.clone(), ErrorReport::from(&err));
        let body = render(&doc, &mode, |_| String::new());
        if let Err(e) = write_out(job.output.as_deref(), &body) {
            eprintln!("error: {e}");
        }
    }
    ExitCode::from(err.exit_code())
}
