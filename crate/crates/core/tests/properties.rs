mod support;

use support::{runner, SUITES};

const CASES: u32 = 100;

fn run(name: &str) {
    let (_, suite) = SUITES.iter().find(|(n, _)| *n == name).unwrap();
    if let Err(e) = suite(&mut runner(CASES)) {
        panic!("{name}: {e}");
    }
}

#[test]
fn graded_commutativity() {
    run("graded_commutativity");
}

#[test]
fn associativity() {
    run("associativity");
}

#[test]
fn odd_derivative_is_a_graded_derivation() {
    run("odd_derivative_is_a_graded_derivation");
}

#[test]
fn even_derivative_is_a_derivation() {
    run("even_derivative_is_a_derivation");
}

#[test]
fn odd_derivatives_anticommute_and_square_to_zero() {
    run("odd_derivatives_anticommute_and_square_to_zero");
}

#[test]
fn expression_sums_and_products_commute() {
    run("expression_sums_and_products_commute");
}

#[test]
fn canonicalize_is_idempotent() {
    run("canonicalize_is_idempotent");
}

#[test]
fn differentiation_obeys_the_product_rule() {
    run("differentiation_obeys_the_product_rule");
}

#[test]
fn derivative_matches_finite_differences() {
    run("derivative_matches_finite_differences");
}

#[test]
fn curvature_is_graded_antisymmetric() {
    run("curvature_is_graded_antisymmetric");
}

#[test]
fn ricci_is_graded_symmetric() {
    run("ricci_is_graded_symmetric");
}

#[test]
fn hessian_is_tensorial() {
    run("hessian_is_tensorial");
}

#[test]
fn levi_civita_is_torsion_free_and_metric_on_random_fields() {
    run("levi_civita_is_torsion_free_and_metric_on_random_fields");
}

#[test]
fn perturbed_connection_breaks_an_axiom() {
    run("perturbed_connection_breaks_an_axiom");
}
