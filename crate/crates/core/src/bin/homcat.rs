fn main() {
    let out = homcat::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    if let Some(s) = out.summary {
        eprintln!("{s}");
    }
    std::process::exit(out.code);
}
