use singular_spectra_cli::config::PREC_BITS_ENV;
use singular_spectra_cli::{parse_config, run, CliError};

fn main() {
    let env_bits = std::env::var(PREC_BITS_ENV).ok();
    let code = match parse_config(std::env::args_os(), env_bits.as_deref()) {
        Ok(config) => run(&config),
        Err(CliError::Help(text)) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
