fn main() {
    std::process::exit(qudit_walk::io::cli::run(std::env::args()));
}
