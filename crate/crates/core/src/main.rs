fn main() { pathway_assembly::cli::main() }
