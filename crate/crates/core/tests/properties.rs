//! Randomized invariants, one test per suite.

mod common;

#[test]
fn construction_paths_satisfy_exchange() {
    common::construction_paths_satisfy_exchange().unwrap();
}

#[test]
fn from_bases_agrees_with_exchange_oracle() {
    common::from_bases_agrees_with_exchange_oracle().unwrap();
}

#[test]
fn dual_is_an_involution_and_swaps_minors() {
    common::dual_is_an_involution_and_swaps_minors().unwrap();
}

#[test]
fn rank_is_monotone_and_submodular() {
    common::rank_is_monotone_and_submodular().unwrap();
}

#[test]
fn canonical_form_ignores_labels() {
    common::canonical_form_ignores_labels().unwrap();
}

#[test]
fn coextension_contracts_back() {
    common::coextension_contracts_back().unwrap();
}

#[test]
fn specialization_gives_minors_up_to_constants() {
    common::specialization_gives_minors_up_to_constants().unwrap();
}

#[test]
fn rayleigh_difference_product_rule() {
    common::rayleigh_difference_product_rule().unwrap();
}

#[test]
fn rayleigh_difference_is_bc_minus_ad() {
    common::rayleigh_difference_is_bc_minus_ad().unwrap();
}

#[test]
fn sturm_count_is_additive() {
    common::sturm_count_is_additive().unwrap();
}

#[test]
fn sos_certificates_split_along_every_variable() {
    common::sos_certificates_split_along_every_variable().unwrap();
}

#[test]
fn rayleigh_values_ignore_own_coordinates() {
    common::rayleigh_values_ignore_own_coordinates().unwrap();
}

#[test]
fn vamos_like_violates_ingleton() {
    common::vamos_like_violates_ingleton().unwrap();
}
