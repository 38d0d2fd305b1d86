use clap::Parser;
use foulkes_cli::cache::Cache;
use foulkes_cli::commands::{exit_code_for, render};
use foulkes_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli, &Cache::from_env()) {
        Ok(outcome) => {
            match &outcome.csv {
                Some(csv) => print!("{csv}"),
                None => println!("{}", render(&outcome.result, cli.pretty)),
            }
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code_for(&e)
        }
    };
    std::process::exit(code);
}
