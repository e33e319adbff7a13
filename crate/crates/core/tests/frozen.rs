//! Reference values computed outside this crate.

use num_complex::Complex64;
use num_rational::Rational64;

use twisted_mps::gaussian::{q_binom_minus1, q_binom_pascal, q_binom_product, QParam};
use twisted_mps::mps::Boundary;
use twisted_mps::pauli::{anticommutation_graph, jordan_wigner};
use twisted_mps::pilot::PilotModel;
use twisted_mps::twisted::{check_predecessor_uniform, WeightMatrix};

#[test]
fn gaussian_binomials_at_integer_q() {
    let two = QParam::new(2i64).unwrap();
    assert_eq!(q_binom_pascal(4, 2, &two), 35);
    assert_eq!(q_binom_pascal(6, 3, &two), 1395);
    let two_r = QParam::new(Rational64::from_integer(2)).unwrap();
    assert_eq!(q_binom_product(6, 3, &two_r).unwrap(), Rational64::from_integer(1395));
    assert_eq!(q_binom_minus1(6, 3).unwrap(), 0);
    assert_eq!(q_binom_minus1(7, 3).unwrap(), 3);
    assert_eq!(q_binom_minus1(6, 2).unwrap(), 3);
}

#[test]
fn anticommuting_triple_fourth_power() {
    let mut om = vec![-1i64; 9];
    for i in 0..3 {
        om[i * 3 + i] = 1;
    }
    let w = WeightMatrix::new(3, om, Some(2)).unwrap();
    let pilot = PilotModel::new(&w, &[1, 2, 3], 4).unwrap();
    let table = pilot.all_amplitudes(&Boundary::Monomial(4), u128::MAX).unwrap();
    assert_eq!(table.iter().collect::<Vec<_>>(), vec![(&vec![0, 0, 0], &196)]);
}

#[test]
fn relabeled_qutrit_fifth_power() {
    let w = WeightMatrix::<Complex64>::from_phase_exponents(3, 3, &[(0, 1, 1), (0, 2, 1), (1, 2, 2)]).unwrap();
    assert!(check_predecessor_uniform(&w).is_none());
    let coeffs = [
        Complex64::new(0.5, 0.25),
        Complex64::new(-0.75, 1.0),
        Complex64::new(1.5, -0.5),
    ];
    let pilot = PilotModel::new(&w, &coeffs, 5).unwrap();
    let expected = [
        ([0, 0, 2], 4.632812499999998, -10.945312500000004),
        ([0, 1, 1], 8.923788382470123, 2.941982625568837),
        ([0, 2, 0], -5.383789062500003, -5.118164062499991),
        ([1, 0, 1], 3.31396196534732, 2.583700498332364),
        ([1, 1, 0], -3.316740501725322, -0.18812243950973828),
        ([2, 0, 0], 1.3681640625, 0.5791015624999982),
    ];
    let table = pilot.all_amplitudes(&Boundary::Monomial(5), u128::MAX).unwrap();
    assert_eq!(table.len(), expected.len());
    for (r, re, im) in expected {
        let got = table.get(&r);
        assert!((got - Complex64::new(re, im)).norm() < 1e-12, "{r:?}: {got}");
    }
}

#[test]
fn jordan_wigner_two_sites_is_one_component() {
    let g = anticommutation_graph(&jordan_wigner(2).unwrap()).unwrap();
    assert_eq!(g.component_sizes(), vec![5]);
    assert_eq!(g.c_max(), 5);
    assert_eq!(g.edges().len(), 10);
}
