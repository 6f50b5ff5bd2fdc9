use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vowelspace::config::Config;
use vowelspace::pipeline::{self, PlotSelector};
use vowelspace::Error;

/// Cross-lingual vowel-space analysis of synthesized speech.
#[derive(Debug, Parser)]
#[command(name = "vowelspace", version)]
struct Cli {
    /// `key = value` analysis config.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (default: config `out`, else the current directory).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for extraction.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Measure F1/F2 for every manifest entry -> formants.csv
    Extract { manifest: PathBuf },
    /// Lobanov-normalize per speaker -> normalized.csv, speaker_stats.json
    Normalize { formants: PathBuf },
    /// Distance and compactness -> metrics.csv, summary.json, pair_matrix.json
    Metrics { normalized: PathBuf },
    /// Vowel-space SVG from normalized.csv, or heatmaps from pair_matrix.json
    Plot {
        /// normalized.csv or pair_matrix.json
        input: PathBuf,
        /// System id (vowel-space plots only).
        #[arg(long)]
        system: Option<String>,
        #[arg(long)]
        speaker: Option<String>,
        /// IPA symbol.
        #[arg(long)]
        vowel: Option<String>,
        /// Target language.
        #[arg(long)]
        target: Option<String>,
        /// Source (speaker's native) language.
        #[arg(long)]
        source: Option<String>,
    },
    /// Render oracle vowels from a spec CSV to WAV files
    Synth { spec: PathBuf },
    /// List shared and non-shared vowels of two languages
    Inventory { lang_a: String, lang_b: String },
}

fn run(cli: Cli) -> vowelspace::Result<()> {
    let cfg = match &cli.config {
        Some(p) => Config::from_path(p).map_err(|e| match e {
            Error::MissingFile(p) => Error::Config(format!("config file not found: {}", p.display())),
            other => other,
        })?,
        None => Config::default(),
    };
    let out = cli.out.clone().or_else(|| cfg.out.clone()).unwrap_or_else(|| PathBuf::from("."));
    match cli.command {
        Command::Extract { manifest } => {
            let outcome = pipeline::cmd_extract(&manifest, &cfg, &out, cli.jobs as usize)?;
            eprintln!(
                "extracted {} rows, {} failures -> {}",
                outcome.rows.len(),
                outcome.failures.len(),
                out.join(pipeline::FORMANTS_FILE).display()
            );
            for f in &outcome.failures {
                eprintln!("  line {}: {}: {}", f.line, f.wav_path, f.message);
            }
        }
        Command::Normalize { formants } => {
            let rows = pipeline::cmd_normalize(&formants, &cfg, &out)?;
            eprintln!("normalized {} rows -> {}", rows.len(), out.join(pipeline::NORMALIZED_FILE).display());
        }
        Command::Metrics { normalized } => {
            let rows = pipeline::cmd_metrics(&normalized, &cfg, &out)?;
            eprintln!("{} metric rows -> {}", rows.len(), out.join(pipeline::METRICS_FILE).display());
        }
        Command::Plot { input, system, speaker, vowel, target, source } => {
            let sel = PlotSelector { system, speaker, vowel, target, source };
            report_paths(&pipeline::cmd_plot(&input, &sel, &out)?);
        }
        Command::Synth { spec } => report_paths(&pipeline::cmd_synth(&spec, &out)?),
        Command::Inventory { lang_a, lang_b } => {
            print!("{}", pipeline::cmd_inventory(&lang_a, &lang_b, &cfg)?.render());
        }
    }
    Ok(())
}

fn report_paths(paths: &[impl AsRef<Path>]) {
    for p in paths {
        println!("{}", p.as_ref().display());
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
