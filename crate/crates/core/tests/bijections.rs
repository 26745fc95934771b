use bijectlab_core::bijections::{
    deal_to_matrix, deal_to_path, matrix_to_deal, matrix_to_path, path_to_deal, path_to_matrix,
};
use bijectlab_core::deals::{enumerate_deals, DealKind};
use bijectlab_core::matrices::{enumerate_matrices, MatrixClass, MatrixSampler, TwoRowMatrix};
use bijectlab_core::paths::{enumerate_paths, matching_pairs};
use proptest::prelude::*;

#[test]
fn deal_matrix_round_trips() {
    for n in 0..=4 {
        let mut images = Vec::new();
        for d in enumerate_deals(n, DealKind::Hanna).unwrap() {
            let m = deal_to_matrix(&d).unwrap();
            assert!(m.classify().is_hanna);
            assert_eq!(matrix_to_deal(&m).unwrap(), d);
            images.push(m);
        }
        images.sort();
        let all: Vec<_> = enumerate_matrices(n, MatrixClass::Hanna).unwrap().collect();
        assert_eq!(
            images, all,
            "deal_to_matrix is onto Hanna matrices at n={n}"
        );
        for m in &all {
            assert_eq!(&deal_to_matrix(&matrix_to_deal(m).unwrap()).unwrap(), m);
        }
    }
}

#[test]
fn matrix_path_round_trips() {
    for n in 0..=4 {
        let mut images = Vec::new();
        for m in enumerate_matrices(n, MatrixClass::Hanna).unwrap() {
            let p = matrix_to_path(&m).unwrap();
            assert_eq!(path_to_matrix(&p), m);
            assert_eq!(p.upsteps(), m.top1_bottom_non1_columns());
            images.push(p);
        }
        images.sort();
        let mut all: Vec<_> = enumerate_paths(n).unwrap().collect();
        all.sort();
        assert_eq!(images, all);
        for p in &all {
            assert_eq!(&matrix_to_path(&path_to_matrix(p)).unwrap(), p);
            assert_eq!(&deal_to_path(&path_to_deal(p).unwrap()).unwrap(), p);
        }
    }
}

#[test]
fn class_transport() {
    for n in 0..=4 {
        for d in enumerate_deals(n, DealKind::Hanna).unwrap() {
            let m = deal_to_matrix(&d).unwrap();
            let barrucand = d.validate(DealKind::Barrucand).is_ok();
            let franel = d.validate(DealKind::Franel).is_ok();
            assert_eq!(barrucand, m.classify().is_abelian, "{m}");
            assert_eq!(
                franel,
                m.classify().is_abelian && m.ones_columns() == 0,
                "{m}"
            );
        }
    }
}

#[test]
fn statistic_transport() {
    for n in 0..=4 {
        for d in enumerate_deals(n, DealKind::Hanna).unwrap() {
            let m = deal_to_matrix(&d).unwrap();
            assert_eq!(d.cards_in_red(), n - m.ones_columns());
            assert_eq!(d.distinct_denoms_red(), m.top_non1());
            assert_eq!(d.green_in_red(), m.pq_columns());
        }
    }
}

#[test]
fn sampled_round_trips_at_twelve() {
    let mut sampler = MatrixSampler::new(2024);
    for _ in 0..2000 {
        let m = sampler.sample(12, MatrixClass::Hanna).unwrap();
        let d = matrix_to_deal(&m).unwrap();
        assert!(d.validate(DealKind::Hanna).is_ok());
        assert_eq!(deal_to_matrix(&d).unwrap(), m);
        let p = matrix_to_path(&m).unwrap();
        assert!(matching_pairs(&p).is_perfect_for(&p));
        assert_eq!(path_to_matrix(&p), m);
    }
}

fn hanna_matrix() -> impl Strategy<Value = TwoRowMatrix> {
    (0usize..=16, any::<u64>()).prop_map(|(n, seed)| {
        MatrixSampler::new(seed)
            .sample(n, MatrixClass::Hanna)
            .unwrap()
    })
}

proptest! {
    #[test]
    fn round_trips_on_random_hanna_matrices(m in hanna_matrix()) {
        let d = matrix_to_deal(&m).unwrap();
        prop_assert_eq!(&deal_to_matrix(&d).unwrap(), &m);
        prop_assert_eq!(d.cards_in_red(), m.n() - m.ones_columns());
        prop_assert_eq!(d.distinct_denoms_red(), m.top_non1());
        prop_assert_eq!(d.green_in_red(), m.pq_columns());
        let p = matrix_to_path(&m).unwrap();
        prop_assert_eq!(path_to_matrix(&p), m);
    }

    #[test]
    fn abelian_samples_give_barrucand_deals(seed in any::<u64>(), n in 0usize..=10) {
        let m = MatrixSampler::new(seed).sample(n, MatrixClass::Abelian).unwrap();
        let d = matrix_to_deal(&m).unwrap();
        prop_assert!(d.validate(DealKind::Barrucand).is_ok());
    }
}
