use clap::Parser;
use singtrace::cli::{self, RunConfig};

fn main() {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { cli::EXIT_USAGE } else { cli::EXIT_OK });
        }
    };
    if let Err(e) = cli::configure_threads() {
        eprintln!("error: {e}");
        std::process::exit(cli::EXIT_USAGE);
    }
    let code = cli::run(&config, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
