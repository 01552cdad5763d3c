fn main() {
    match modelbench_cli::cli::main_with(std::env::args().collect()) {
        Ok((out, code)) => {
            print!("{out}");
            std::process::exit(code);
        }
        Err(e) => e.exit(),
    }
}
