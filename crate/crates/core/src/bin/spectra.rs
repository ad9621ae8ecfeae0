fn main() {
    std::process::exit(anharmonic_spectra::cli::main())
}
