use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use blowup::cli::{
    cmd_classify, cmd_demo, cmd_nef, cmd_orbit, cmd_reduce, cmd_vdim, parse_class, ConfigLayer, OutputFormat,
    Report, RunConfig, DEMOS,
};
use blowup::{BlowupContext, DivisorClass, Error, Result};

#[derive(Parser)]
#[command(name = "blowup", version, about = "Divisor classes on blow-ups of projective space at points")]
struct Cli {
    #[command(flatten)]
    global: GlobalFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalFlags {
    /// Prime for the finite-field oracle (default 65537).
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Random seed for point sampling; repeat for several trials.
    #[arg(long = "seed", global = true)]
    seeds: Vec<u64>,
    /// Degree bound for (-1)-class enumeration.
    #[arg(long, global = true)]
    bound: Option<i64>,
    /// Smallest genus searched in D^⊥ by `classify` (default 1).
    #[arg(long, global = true)]
    genus_threshold: Option<i64>,
    /// json, csv or text.
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// Where `orbit` keeps its JSON-lines caches.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// JSON file with any of: prime, seeds, bound, genusThreshold, format, cacheDir.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ClassInput {
    /// Class as JSON, e.g. '{"n":2,"r":2,"d":2,"m":[1,1]}'.
    class: Option<String>,
    /// Read the class JSON from a file instead.
    #[arg(long, conflicts_with = "class")]
    file: Option<PathBuf>,
}

impl ClassInput {
    fn load(&self) -> Result<DivisorClass> {
        match (&self.class, &self.file) {
            (Some(s), _) => parse_class(s),
            (None, Some(p)) => parse_class(&std::fs::read_to_string(p)?),
            (None, None) => Err(Error::Parse("give a class as JSON or with --file".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Virtual and expected dimension.
    Vdim(ClassInput),
    /// Weyl reduction to pseudostandard form (surfaces, r >= 3).
    Reduce(ClassInput),
    /// Asymptotic speciality of a nef and big surface class.
    Classify(ClassInput),
    /// Nefness: polyhedral test for r < 2^n, bounded screen on surfaces otherwise.
    Nef(ClassInput),
    /// Scripted scenario: ex-14pts, ex-mix, lemma-std, orbit-check, quad-family.
    Demo { name: String },
    /// Enumerate and cache the (-1)-classes on X^2_r up to the degree bound.
    Orbit {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
}

fn run(cli: Cli) -> Result<(Report, OutputFormat)> {
    let g = cli.global;
    let file = g.config.as_deref().map(ConfigLayer::from_file).transpose()?;
    let flags = ConfigLayer {
        prime: g.prime,
        seeds: (!g.seeds.is_empty()).then_some(g.seeds),
        orbit_bound: g.bound,
        genus_threshold: g.genus_threshold,
        output: g.format,
        cache_dir: g.cache_dir,
    };
    let cfg = RunConfig::resolve(file, flags)?;
    let report = match cli.command {
        Command::Vdim(c) => cmd_vdim(&c.load()?)?,
        Command::Reduce(c) => cmd_reduce(&c.load()?)?,
        Command::Classify(c) => cmd_classify(&c.load()?, &cfg)?,
        Command::Nef(c) => cmd_nef(&c.load()?, &cfg)?,
        Command::Demo { name } => {
            if !DEMOS.contains(&name.as_str()) {
                return Err(Error::Parse(format!("unknown demo {name:?}; expected one of {}", DEMOS.join(", "))));
            }
            cmd_demo(&name, &cfg)?
        }
        Command::Orbit { r, n } => cmd_orbit(BlowupContext::new(n, r)?, cfg.orbit_bound, &cfg)?,
    };
    Ok((report, cfg.output))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((report, format)) => {
            println!("{}", report.render(format));
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
