mod commands;
mod sweep;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rhg_core::Error;

#[derive(Parser, Debug)]
#[command(name = "rhg", version, about = "Random hyperbolic graph laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a point set and write it as a points file.
    Generate(commands::GenerateArgs),
    /// Build the edge file for a points file.
    Build(commands::BuildArgs),
    /// Structural report (JSON) for a built graph.
    Analyze(commands::AnalyzeArgs),
    /// Run the exploration procedure from one vertex and emit its trace.
    Expose(commands::ExposeArgs),
    /// Compare closed-form measures with the Monte-Carlo oracle (CSV).
    MeasureCheck(commands::MeasureCheckArgs),
    /// Generate, build and analyze a grid of (alpha, n, rep) cells.
    Sweep(sweep::SweepArgs),
    /// Flatten reports into long-format CSV for plotting.
    PlotData(commands::PlotDataArgs),
}

/// Band constants `c1 < c2`, `c3 < c1` shared by several subcommands.
#[derive(Args, Debug, Clone, Copy)]
pub struct BandArgs {
    #[arg(long, default_value_t = 0.2)]
    pub c1: f64,
    #[arg(long, default_value_t = 0.3)]
    pub c2: f64,
    #[arg(long, default_value_t = 0.1)]
    pub c3: f64,
}

impl BandArgs {
    pub fn constants(&self) -> rhg_core::Result<rhg_core::measure::BandConstants> {
        let k = rhg_core::measure::BandConstants { c1: self.c1, c2: self.c2, c3: self.c3 };
        k.validate()?;
        Ok(k)
    }
}

fn exit_status(e: &Error) -> u8 {
    if e.is_numeric_health() {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Generate(a) => commands::generate(&a),
        Command::Build(a) => commands::build(&a),
        Command::Analyze(a) => commands::analyze(&a),
        Command::Expose(a) => commands::expose(&a),
        Command::MeasureCheck(a) => commands::measure_check(&a),
        Command::Sweep(a) => sweep::run(&a),
        Command::PlotData(a) => commands::plot_data(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rhg: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_status_mapping() {
        assert_eq!(exit_status(&Error::NumericHealth("acos overshoot".into())), 2);
        assert_eq!(exit_status(&Error::Validation("forged edge".into())), 1);
        assert_eq!(exit_status(&Error::InvalidParameter("alpha".into())), 1);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
