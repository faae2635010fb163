fn main() {
    std::process::exit(wangtile_cli::run(std::env::args_os()));
}
