use bimono::numbers::{rational, ExactComplex};
use bimono::partitions::Face;
use bimono::products::{
    associativity_check, factorization_check, gram_is_psd, marginal_restoration_check, samples,
    table_moment, Generator, Letter, MomentTable, PointedRep, ProductRep, Word,
};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rep(rng: &mut ChaCha8Rng, dim: usize) -> PointedRep {
    let mut entry = || {
        Complex::new(
            rational(rng.gen_range(-4..=4), rng.gen_range(1..=3)),
            rational(rng.gen_range(-2..=2), 1),
        )
    };
    let mut matrix = || -> Vec<Vec<ExactComplex>> {
        (0..dim)
            .map(|_| (0..dim).map(|_| entry()).collect())
            .collect()
    };
    let (left, right) = (matrix(), matrix());
    PointedRep::new(
        dim,
        [
            (
                "x".to_string(),
                Generator {
                    face: Face::Left,
                    matrix: left,
                },
            ),
            (
                "y".to_string(),
                Generator {
                    face: Face::Right,
                    matrix: right,
                },
            ),
        ],
    )
    .unwrap()
}

#[test]
fn marginals_are_restored() {
    let prod = ProductRep::new(vec![samples::qubit(), samples::skewed(), samples::qutrit()]);
    assert!(marginal_restoration_check(&prod, 5).unwrap());
}

#[test]
fn product_is_associative() {
    assert!(associativity_check(
        &[samples::qubit(), samples::skewed(), samples::qubit_b()],
        4
    )
    .unwrap());
    assert!(associativity_check(
        &[samples::qubit(), samples::qutrit(), samples::qubit_b()],
        3
    )
    .unwrap());
}

#[test]
fn associativity_on_random_reps() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let reps = [
            random_rep(&mut rng, 2),
            random_rep(&mut rng, 2),
            random_rep(&mut rng, 2),
        ];
        assert!(associativity_check(&reps, 3).unwrap());
    }
}

#[test]
fn vanishing_and_factorization() {
    let report = factorization_check(
        &[samples::qubit(), samples::qutrit(), samples::qubit_b()],
        3,
        6,
    )
    .unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    assert!(report.vanishing_cases > 0);
    assert!(report.factorization_cases > 0);
}

#[test]
fn product_state_is_positive() {
    let prod = ProductRep::new(vec![samples::qubit(), samples::qubit_b()]);
    assert!(gram_is_psd(&prod, 3).unwrap());
    let prod = ProductRep::new(vec![samples::qutrit(), samples::qubit()]);
    assert!(gram_is_psd(&prod, 2).unwrap());
}

#[test]
fn table_route_agrees_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let reps: Vec<PointedRep> = (0..3).map(|k| random_rep(&mut rng, 2 + k % 2)).collect();
    let prod = ProductRep::new(reps);
    let table: MomentTable<ExactComplex> = MomentTable::from_product(&prod, 6).unwrap();
    for _ in 0..200 {
        let len = rng.gen_range(0..=6);
        let word = Word(
            (0..len)
                .map(|_| {
                    Letter::new(
                        rng.gen_range(0..3),
                        if rng.gen_bool(0.5) { "x" } else { "y" },
                    )
                })
                .collect(),
        );
        let faces = prod.faces(&word).unwrap();
        assert_eq!(
            table_moment(&word, &faces, &table).unwrap(),
            prod.moment_exact(&word).unwrap(),
            "{word}"
        );
    }
}

#[test]
fn rep_json_round_trip() {
    for rep in [samples::qubit(), samples::qutrit(), samples::skewed()] {
        assert_eq!(PointedRep::from_json(&rep.to_json()).unwrap(), rep);
    }
}
