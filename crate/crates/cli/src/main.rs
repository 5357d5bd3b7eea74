fn main() {
    std::process::exit(skewlab_cli::main_entry());
}
