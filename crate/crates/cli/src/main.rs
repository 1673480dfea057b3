fn main() {
    std::process::exit(qblocks::run(std::env::args_os()));
}
