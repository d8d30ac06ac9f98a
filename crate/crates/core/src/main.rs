use clap::Parser;
use trinomial_lnd::cli::{run, Cli, EXIT_INPUT};

fn main() {
    // clap exits with 2 on usage errors, which is reserved for failed verification
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        let _ = e.print();
        std::process::exit(if e.use_stderr() { EXIT_INPUT } else { 0 });
    });
    let config = cli.into_config().unwrap_or_else(|e| {
        eprintln!("error: {e}");
        std::process::exit(EXIT_INPUT);
    });
    let outcome = run(&config);
    if outcome.code == EXIT_INPUT {
        eprint!("{}", outcome.report);
    } else {
        print!("{}", outcome.report);
    }
    std::process::exit(outcome.code);
}
