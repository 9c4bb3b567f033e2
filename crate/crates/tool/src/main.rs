use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use minspace::{run, Command, Format, RunConfig};

#[derive(Parser)]
#[command(name = "minspace", version, about = "Composition-operator functionals on the unit disk")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// kappa(psi, alpha) at the given points
    Kappa(Opts),
    /// kappa on a polar grid of alpha
    Sweep(Opts),
    /// tail-sup proxy for the essential norm
    Essnorm(Opts),
    /// change-of-variables identity for a Blaschke product
    BlaschkeCheck(Opts),
    /// valency on a polar grid
    ValencyMap(Opts),
    /// Carleson-box ratios over dyadic arcs
    Carleson(Opts),
    /// cone masses of a normalized function
    Lemma1(Opts),
    /// preimage trajectories and Stolz ratios
    Ntprofile(Opts),
    /// quadrature against a seeded Monte Carlo estimate
    McCheck(Opts),
    /// run a JSON config file
    Run { config: PathBuf },
}

#[derive(Args)]
struct Opts {
    /// symbol spec (JSON)
    #[arg(long)]
    symbol: PathBuf,
    /// output table
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    max_panels: Option<usize>,
    /// K in s_k = 1 - 2^-k, k = 3..=K
    #[arg(long)]
    schedule_depth: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// angles per circle
    #[arg(long)]
    angles: Option<usize>,
    /// comma-separated radii
    #[arg(long, value_delimiter = ',')]
    radii: Option<Vec<f64>>,
    /// parameter point "re,im" (repeatable)
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    alpha: Vec<[f64; 2]>,
    /// polar grid size for valency-map
    #[arg(long)]
    grid: Option<usize>,
    /// deepest dyadic level for carleson
    #[arg(long)]
    depth: Option<u32>,
    /// boundary point "re,im" for ntprofile
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    xi: Option<[f64; 2]>,
    /// comma-separated m values for ntprofile
    #[arg(long, value_delimiter = ',')]
    m: Option<Vec<u64>>,
    /// Monte Carlo samples
    #[arg(long)]
    samples: Option<usize>,
}

fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected \"re,im\", got {s:?}"))?;
    let p = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok([p(re)?, p(im)?])
}

impl Opts {
    fn into_config(self, command: Command) -> RunConfig {
        RunConfig {
            output_format: self.format,
            seed: self.seed,
            rel_tol: self.rel_tol,
            max_panels: self.max_panels,
            schedule_depth: self.schedule_depth,
            angles: self.angles,
            radii: self.radii,
            alphas: (!self.alpha.is_empty()).then_some(self.alpha),
            grid: self.grid,
            dyadic_depth: self.depth,
            xi: self.xi,
            m_schedule: self.m,
            samples: self.samples,
            ..RunConfig::new(command, self.symbol, self.out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match cli.cmd {
        Cmd::Kappa(o) => o.into_config(Command::Kappa),
        Cmd::Sweep(o) => o.into_config(Command::Sweep),
        Cmd::Essnorm(o) => o.into_config(Command::Essnorm),
        Cmd::BlaschkeCheck(o) => o.into_config(Command::BlaschkeCheck),
        Cmd::ValencyMap(o) => o.into_config(Command::ValencyMap),
        Cmd::Carleson(o) => o.into_config(Command::Carleson),
        Cmd::Lemma1(o) => o.into_config(Command::Lemma1),
        Cmd::Ntprofile(o) => o.into_config(Command::Ntprofile),
        Cmd::McCheck(o) => o.into_config(Command::McCheck),
        Cmd::Run { config } => match RunConfig::from_file(&config) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(minspace::run::EXIT_INVALID as u8);
            }
        },
    };
    match run(&cfg) {
        Ok(out) => {
            let r = out.self_map;
            eprintln!("self-map check: max |psi| = {:.9} on {} samples ({:?})", r.max_modulus, r.samples, r.status);
            println!("{}: {}", cfg.command.name(), out.summary);
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
