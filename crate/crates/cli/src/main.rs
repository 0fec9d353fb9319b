fn main() {
    std::process::exit(defdirac::run(std::env::args_os()));
}
