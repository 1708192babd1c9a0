fn main() {
    ziggraph::cli::run();
}
