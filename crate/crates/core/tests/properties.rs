mod common;

#[test]
fn group_action_laws() {
    common::group_action_laws().unwrap();
}

#[test]
fn direct_sum_mass_conservation() {
    common::mass_conservation().unwrap();
}

#[test]
fn split_kappa_additivity() {
    common::split_additivity().unwrap();
}

#[test]
fn pfaffian_squared_is_determinant() {
    common::pfaffian_squared_is_det().unwrap();
}

#[test]
fn psi_permutation_equivariance() {
    common::psi_equivariance().unwrap();
}
