fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mut stdout = std::io::stdout();
    std::process::exit(lovx_cli::run(&args, &mut stdout));
}
