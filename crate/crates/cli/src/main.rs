fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let (code, output) = semifactor_cli::execute(&argv);
    if !output.is_empty() {
        if code == 0 {
            print!("{output}");
        } else {
            eprint!("{output}");
        }
    }
    std::process::exit(code);
}
