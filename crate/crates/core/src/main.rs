fn main() {
    std::process::exit(affine_demazure::cli::run(std::env::args_os()));
}
