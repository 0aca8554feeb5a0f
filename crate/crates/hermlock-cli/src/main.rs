use clap::Parser;

fn main() {
    // clap exits with code 2 on usage errors
    let cli = hermlock_cli::Cli::parse();
    let (code, out, err) = hermlock_cli::run(&cli);
    if !out.is_empty() {
        println!("{}", out);
    }
    if !err.is_empty() {
        eprintln!("{}", err);
    }
    std::process::exit(code);
}
