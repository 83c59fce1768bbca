//! Every cargo example, run as a test.

#[allow(dead_code)]
mod factor_polynomial {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/factor_polynomial.rs"));
}

#[allow(dead_code)]
mod division_polynomials {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/division_polynomials.rs"));
}

#[allow(dead_code)]
mod graph_example_tree {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/graph_example_tree.rs"));
}

#[allow(dead_code)]
mod rational_nine_torsion {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rational_nine_torsion.rs"));
}

#[allow(dead_code)]
mod two_adic_counterexample {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/two_adic_counterexample.rs"));
}

#[allow(dead_code)]
mod power_map {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/power_map.rs"));
}

#[allow(dead_code)]
mod orbit_oracle {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/orbit_oracle.rs"));
}

#[allow(dead_code)]
mod index_stabilization {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/index_stabilization.rs"));
}

#[allow(dead_code)]
mod export_formats {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/export_formats.rs"));
}

#[allow(dead_code)]
mod subgroup_spec_file {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/subgroup_spec_file.rs"));
}

#[test]
fn factor_polynomial_runs() {
    factor_polynomial::run_example().expect("factor polynomial example");
}

#[test]
fn division_polynomials_runs() {
    division_polynomials::run_example().expect("division polynomials example");
}

#[test]
fn graph_example_tree_runs() {
    graph_example_tree::run_example().expect("graph example tree example");
}

#[test]
fn rational_nine_torsion_runs() {
    rational_nine_torsion::run_example().expect("rational nine torsion example");
}

#[test]
fn two_adic_counterexample_runs() {
    two_adic_counterexample::run_example().expect("two adic counterexample example");
}

#[test]
fn power_map_runs() {
    power_map::run_example().expect("power map example");
}

#[test]
fn orbit_oracle_runs() {
    orbit_oracle::run_example().expect("orbit oracle example");
}

#[test]
fn index_stabilization_runs() {
    index_stabilization::run_example().expect("index stabilization example");
}

#[test]
fn export_formats_runs() {
    export_formats::run_example().expect("export formats example");
}

#[test]
fn subgroup_spec_file_runs() {
    subgroup_spec_file::run_example().expect("subgroup spec file example");
}
