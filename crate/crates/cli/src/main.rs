mod args;
mod commands;

use clap::Parser;

use args::{Cli, Command};

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => commands::run_generate(a),
        Command::Match(a) => commands::run_match(a),
        Command::Eval(a) => commands::run_eval(a),
        Command::Bench(a) => commands::run_bench(a),
        Command::Tailscore(a) => commands::run_tailscore(a),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
