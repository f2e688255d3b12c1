fn main() {
    let out = gaincurv_toolkit::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    std::process::exit(out.code);
}
