//! Closed forms against an independent Pascal-triangle oracle and frozen
//! sequence prefixes.

use bijectlab_core::exact_counts::{
    binom, check_scalar_identity, eval_expression, identity_instances, summand, summand_terms,
    BigCount, ExpressionId, IdentityId,
};
use proptest::prelude::*;

/// Pascal triangle in u128, rows 0..=max.
fn pascal(max: usize) -> Vec<Vec<u128>> {
    let mut rows: Vec<Vec<u128>> = vec![vec![1]];
    for n in 1..=max {
        let prev = &rows[n - 1];
        let mut row = vec![1u128; n + 1];
        for k in 1..n {
            row[k] = prev[k - 1] + prev[k];
        }
        rows.push(row);
    }
    rows
}

fn c(t: &[Vec<u128>], n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        t[n as usize][k as usize]
    }
}

/// Direct double-loop evaluation of each expression from the Pascal table.
fn oracle(t: &[Vec<u128>], e: ExpressionId, n: i64) -> u128 {
    use ExpressionId::*;
    let r = 0..=n;
    match e {
        FranelL => r.map(|k| c(t, n, k).pow(3)).sum(),
        FranelR => r.map(|k| c(t, n, k).pow(2) * c(t, 2 * k, n)).sum(),
        AperyL => r
            .map(|k| {
                let inner: u128 = (0..=k).map(|j| c(t, k, j).pow(3)).sum();
                c(t, n, k) * c(t, n + k, k) * inner
            })
            .sum(),
        AperyR => r.map(|k| (c(t, n, k) * c(t, n + k, k)).pow(2)).sum(),
        BarrucandL => r
            .map(|k| c(t, n, k) * (0..=k).map(|j| c(t, k, j).pow(3)).sum::<u128>())
            .sum(),
        BarrucandR => r.map(|k| c(t, n, k).pow(2) * c(t, 2 * k, k)).sum(),
        GenBarrL(a) => r
            .map(|k| {
                c(t, n, k)
                    * (0..=k)
                        .map(|j| c(t, k, j).pow(2) * c(t, k, j - a))
                        .sum::<u128>()
            })
            .sum(),
        GenBarrR(a) => r.map(|k| c(t, n, k).pow(2) * c(t, 2 * k, k - a)).sum(),
        Chain1 => r
            .map(|k| c(t, n, k) * c(t, 2 * k, k) * 2u128.pow(k as u32))
            .sum(),
        Chain2 => r
            .map(|k| c(t, n, k) * c(t, 2 * n - k, n) * 3u128.pow(k as u32))
            .sum(),
        Chain3 => r.map(|k| c(t, n, k).pow(2) * 4u128.pow(k as u32)).sum(),
        Chain4 => (0..=n / 2)
            .map(|k| {
                c(t, n, 2 * k)
                    * c(t, 2 * k, k)
                    * 4u128.pow(k as u32)
                    * 5u128.pow((n - 2 * k) as u32)
            })
            .sum(),
        AndrewsL(k) => (0..=n)
            .map(|a| c(t, k, a) * c(t, n - k, a) * c(t, n + k + a, n))
            .sum(),
        AndrewsR(k) => c(t, n + k, k) * c(t, n + k, n - k),
        HannaXY => r
            .clone()
            .flat_map(|i| r.clone().map(move |j| (i, j)))
            .map(|(i, j)| {
                c(t, n, j)
                    * c(t, n - j, i)
                    * c(t, 2 * n - 2 * i - 2 * j, n - j)
                    * 3u128.pow((i + j) as u32)
            })
            .sum(),
    }
}

fn all_expressions(n: i64) -> Vec<ExpressionId> {
    use ExpressionId::*;
    let mut v = vec![
        FranelL, FranelR, AperyL, AperyR, BarrucandL, BarrucandR, Chain1, Chain2, Chain3, Chain4,
        HannaXY,
    ];
    for a in -2..=3 {
        v.push(GenBarrL(a));
        v.push(GenBarrR(a));
    }
    for k in 0..=n {
        v.push(AndrewsL(k));
        v.push(AndrewsR(k));
    }
    v
}

#[test]
fn binom_matches_pascal_table() {
    let t = pascal(120);
    for n in 0..=120i64 {
        for k in -2..=n + 2 {
            assert_eq!(binom(n, k), BigCount::from(c(&t, n, k)), "C({n},{k})");
        }
    }
}

#[test]
fn expressions_match_oracle() {
    let t = pascal(90);
    for n in 0..=18 {
        for e in all_expressions(n) {
            assert_eq!(
                eval_expression(e, n).unwrap(),
                BigCount::from(oracle(&t, e, n)),
                "{e} at n={n}"
            );
        }
    }
}

#[test]
fn frozen_prefixes() {
    let check = |e: ExpressionId, want: &[u64]| {
        for (n, &w) in want.iter().enumerate() {
            assert_eq!(
                eval_expression(e, n as i64).unwrap(),
                BigCount::from(w),
                "{e} n={n}"
            );
        }
    };
    check(
        ExpressionId::BarrucandR,
        &[1, 3, 15, 93, 639, 4653, 35169, 272835],
    );
    check(
        ExpressionId::FranelL,
        &[1, 2, 10, 56, 346, 2252, 15184, 104960],
    );
    check(
        ExpressionId::AperyR,
        &[1, 5, 73, 1445, 33001, 819005, 21460825],
    );
    check(
        ExpressionId::Chain3,
        &[1, 5, 33, 245, 1921, 15525, 127905, 1067925],
    );
}

#[test]
fn every_identity_through_40() {
    for n in 0..=40 {
        for id in identity_instances(n, -2..=3) {
            assert!(
                check_scalar_identity(id, n).unwrap().pass,
                "{} n={n}",
                id.name()
            );
        }
    }
}

#[test]
fn chain_at_200_is_exact() {
    let r = check_scalar_identity(IdentityId::Chain, 200).unwrap();
    assert!(r.pass);
}

proptest! {
    #[test]
    fn pascal_recurrence(n in 1i64..200, k in -3i64..203) {
        prop_assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
    }

    #[test]
    fn symmetric(n in 0i64..300, k in 0i64..300) {
        prop_assume!(k <= n);
        prop_assert_eq!(binom(n, k), binom(n, n - k));
    }

    #[test]
    fn eval_is_sum_of_summands(n in 0i64..25, a in -3i64..4) {
        for e in [ExpressionId::GenBarrL(a), ExpressionId::AperyL, ExpressionId::HannaXY, ExpressionId::Chain4] {
            let terms = summand_terms(e, n).unwrap();
            let mut total = BigCount::default();
            for (ix, v) in &terms {
                prop_assert_eq!(&summand(e, n, ix).unwrap(), v);
                total += v;
            }
            prop_assert_eq!(total, eval_expression(e, n).unwrap());
        }
    }
}
