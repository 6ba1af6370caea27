fn main() {
    let (code, report) = leavitt::cli::run(std::env::args_os());
    if code == 0 {
        print!("{report}");
    } else {
        eprint!("{report}");
    }
    std::process::exit(code);
}
