fn main() {
    std::process::exit(unifluct::cli::main_entry());
}
