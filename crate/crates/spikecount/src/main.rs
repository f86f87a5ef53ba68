fn main() {
    std::process::exit(spikecount::cli::main());
}
