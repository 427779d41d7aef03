use std::process::ExitCode;

use clap::Parser;
use ringcodes_cli::{run, Cli, EXIT_PASS};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    let rendered = out.render(cli.format);
    if out.code == ringcodes_cli::EXIT_ERROR {
        eprintln!("{}", out.text);
        if cli.format == ringcodes_cli::Format::Json {
            println!("{rendered}");
        }
    } else {
        println!("{rendered}");
    }
    if out.code == EXIT_PASS {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(out.code as u8)
    }
}
