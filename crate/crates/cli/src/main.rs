use clap::Parser;
use hopfcyc_cli::{exit_code, run, to_json, Cli};

fn main() {
    let cli = Cli::parse();
    let result = run(&cli);
    match &result {
        Ok(report) => {
            let json = to_json(report);
            if let Some(path) = &cli.common.output {
                if let Err(e) = std::fs::write(path, &json) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    std::process::exit(2);
                }
            }
            if cli.common.json {
                println!("{json}");
            } else {
                print!("{}", report.text());
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
    std::process::exit(exit_code(&result));
}
