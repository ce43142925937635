use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kinklab::classes::{classify_stability, in_b, in_p, is_left_kink_word};
use kinklab::density::{default_window, density_trajectory, fit_power_law};
use kinklab::oracle::{run_all_with, Profile};
use kinklab::preimage::{preimage_depth_under, preimages_under};
use kinklab::{
    count_kinks, find_kinks, two_kink_decompose, CyclicConfig, FiniteSupportConfig, RenderFormat, Rule,
    SpacetimeDiagram, Word,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "kinklab", version, about = "Kinks, preimages and density decay in elementary cellular automaton 18")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate a word, a ring or a finitely supported configuration.
    Simulate(SimulateArgs),
    /// Kink structure and class membership of a word, as JSON.
    Classify { word: String },
    /// One-step preimages (as JSON), or whether a chain of `depth` exists.
    Preimage {
        word: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value_t = 18)]
        rule: u8,
    },
    /// Run the check battery; one JSON line per check.
    Verify {
        #[arg(long, value_enum, default_value_t = ProfileArg::Quick)]
        profile: ProfileArg,
        /// Run the checks under another rule table.
        #[arg(long, hide = true, default_value_t = 18)]
        rule_code: u8,
    },
    /// Kink density of random rings over time, as CSV.
    Density(DensityArgs),
}

#[derive(Args)]
#[group(id = "input", required = true, multiple = false)]
struct Input {
    /// Finite word; each step drops one symbol from each end.
    #[arg(long)]
    word: Option<String>,
    /// Ring of cells.
    #[arg(long)]
    cyclic: Option<String>,
    /// Cells of a configuration that is 0 elsewhere.
    #[arg(long)]
    support: Option<String>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    input: Input,
    /// Position of the first support cell.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    offset: i64,
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[arg(long, default_value_t = 18)]
    rule: u8,
    #[arg(long, value_enum)]
    render: Option<RenderArg>,
    /// Write the rendering here instead of stdout.
    #[arg(long, requires = "render")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DensityArgs {
    #[arg(long, default_value_t = 4096)]
    width: usize,
    #[arg(long, default_value_t = 512)]
    steps: usize,
    #[arg(long, default_value_t = 64)]
    trials: u64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Write PREFIX.csv and PREFIX.json instead of printing the CSV.
    #[arg(long, value_name = "PREFIX")]
    out: Option<PathBuf>,
    /// First step of the fit window.
    #[arg(long)]
    fit_min: Option<usize>,
    /// Last step of the fit window.
    #[arg(long)]
    fit_max: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderArg {
    Ascii,
    Pbm,
}

fn parse_word(s: &str) -> Result<Word> {
    s.parse().with_context(|| format!("cannot parse {s:?} as a binary word"))
}

fn simulate(args: SimulateArgs) -> Result<ExitCode> {
    let rule = Rule::from_code(args.rule);
    let Input { word, cyclic, support } = args.input;
    let (summary, diagram) = if let Some(w) = word {
        let w = parse_word(&w)?;
        let diagram = SpacetimeDiagram::of_word_run(&w, args.steps, rule)?;
        (diagram.rows().last().expect("run has a first row").to_string(), diagram)
    } else if let Some(c) = cyclic {
        let mut x = CyclicConfig::new(&parse_word(&c)?)?;
        let mut rows = vec![x.clone()];
        for _ in 0..args.steps {
            x = x.step(rule);
            rows.push(x.clone());
        }
        (x.to_word().to_string(), SpacetimeDiagram::cyclic(&rows)?)
    } else {
        let s = support.expect("clap requires one input");
        let mut x = FiniteSupportConfig::new(&parse_word(&s)?, args.offset);
        let mut rows = vec![x.clone()];
        for _ in 0..args.steps {
            x = x.step(rule);
            rows.push(x.clone());
        }
        (format!("{}\noffset {}", x.support(), x.offset()), SpacetimeDiagram::support(&rows))
    };
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{summary}")?;
    if let Some(format) = args.render {
        let format = match format {
            RenderArg::Ascii => RenderFormat::Ascii,
            RenderArg::Pbm => RenderFormat::Pbm,
        };
        let bytes = diagram.render(format)?;
        match args.out {
            Some(path) => fs::write(&path, bytes).with_context(|| format!("cannot write {}", path.display()))?,
            None => stdout.write_all(&bytes)?,
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn classify(word: &str) -> Result<ExitCode> {
    let w = parse_word(word)?;
    let mut out = json!({
        "word": w,
        "kinks": count_kinks(&w),
        "occurrences": find_kinks(&w),
        "stability": classify_stability(&w).name(),
        "leftKinkWord": is_left_kink_word(&w),
        "inB": in_b(&w),
    });
    if let Ok(d) = two_kink_decompose(&w) {
        out["inP"] = json!(in_p(&w)?);
        out["b"] = json!(d.b);
        out["delta"] = json!(d.delta);
    }
    println!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn preimage(word: &str, depth: usize, rule: u8) -> Result<ExitCode> {
    let w = parse_word(word)?;
    let rule = Rule::from_code(rule);
    match depth {
        0 => bail!("depth must be at least 1"),
        1 => println!("{}", serde_json::to_string(&preimages_under(&w, rule).members)?),
        _ => println!("{}", preimage_depth_under(&w, depth, rule)),
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(profile: ProfileArg, rule_code: u8) -> Result<ExitCode> {
    let profile = match profile {
        ProfileArg::Quick => Profile::Quick,
        ProfileArg::Full => Profile::Full,
    };
    let reports = run_all_with(profile, Rule::from_code(rule_code));
    let mut stdout = std::io::stdout().lock();
    for r in &reports {
        writeln!(stdout, "{}", r.to_json_line())?;
    }
    Ok(if reports.iter().any(|r| r.failed()) { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn density(args: DensityArgs) -> Result<ExitCode> {
    let series = density_trajectory(args.width, args.steps, args.trials, args.seed)?;
    let (lo, hi) = default_window(args.steps);
    let window = (args.fit_min.unwrap_or(lo), args.fit_max.unwrap_or(hi));
    let fit = fit_power_law(&series, window);
    let summary = match &fit {
        Ok(f) => format!(
            "d0 {:.6} +- {:.6}; fit on [{}, {}]: exponent {:.4}, amplitude {:.4}, D {:.4}, rms {:.4}",
            series.values[0], series.stderr[0], window.0, window.1, f.exponent, f.amplitude, f.diffusion, f.residual
        ),
        Err(e) => format!("d0 {:.6} +- {:.6}; no fit: {e}", series.values[0], series.stderr[0]),
    };
    match args.out {
        Some(prefix) => {
            let with_suffix = |suffix: &str| {
                let mut path = prefix.clone().into_os_string();
                path.push(suffix);
                PathBuf::from(path)
            };
            let (csv, meta) = (with_suffix(".csv"), with_suffix(".json"));
            fs::write(&csv, series.to_csv()).with_context(|| format!("cannot write {}", csv.display()))?;
            let sidecar = serde_json::to_string_pretty(&series.metadata(fit.as_ref().ok()))? + "\n";
            fs::write(&meta, sidecar).with_context(|| format!("cannot write {}", meta.display()))?;
            println!("{summary}");
            println!("wrote {} and {}", csv.display(), meta.display());
        }
        None => {
            print!("{}", series.to_csv());
            eprintln!("{summary}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var("KINKLAB_THREADS") {
        let threads: usize = value
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .with_context(|| format!("KINKLAB_THREADS must be a positive integer, got {value:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    configure_threads()?;
    match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Classify { word } => classify(&word),
        Command::Preimage { word, depth, rule } => preimage(&word, depth, rule),
        Command::Verify { profile, rule_code } => verify(profile, rule_code),
        Command::Density(args) => density(args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
