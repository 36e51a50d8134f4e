use clap::Parser;

/// Stationary-branch scenario runner: evaluates amplitude-phase branches,
/// difference dynamics, sideband spectra, and slit/aperture geometries from
/// a JSON scenario file, writing CSV data and plot scripts. The built-in
/// `verify` scenario runs the full identity-check suite.
#[derive(Parser)]
#[command(name = "bohmspec", version, about)]
struct Cli {
    /// Path to a scenario file, or the literal `verify`
    scenario: String,

    /// Output path prefix (overrides the config's `out` and BOHMSPEC_OUT_DIR)
    #[arg(long, value_name = "PREFIX")]
    out: Option<String>,

    /// Override the scenario's truncation/quadrature tolerance
    #[arg(long, value_name = "X")]
    tol: Option<f64>,

    /// Suppress console summaries (warnings still go to stderr)
    #[arg(long)]
    quiet: bool,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(bohmspec::cli::run(
        &cli.scenario,
        cli.out.as_deref(),
        cli.tol,
        cli.quiet,
    ));
}
