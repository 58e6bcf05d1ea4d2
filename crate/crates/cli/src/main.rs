use clap::Parser;

fn main() {
    let cli = cctl_cli::Cli::parse();
    match cctl_cli::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') {
                println!();
            }
            std::process::exit(out.exit_code());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
