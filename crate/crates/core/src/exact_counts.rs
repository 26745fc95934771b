//! Exact binomials and closed-form evaluation of every identity this crate checks.
//!
//! All arithmetic is arbitrary precision. A binomial with an out-of-range
//! lower index (or a negative upper index) is zero, and the summands rely on
//! that convention: `C(k, j - a)` with `j < a` simply vanishes.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("n must be nonnegative, got {0}")]
    NegativeN(i64),
    #[error("{expr} takes {expected} summation indices, got {got}")]
    Arity {
        expr: ExpressionId,
        expected: usize,
        got: usize,
    },
    #[error("Andrews parameter k={k} is outside 0..={n}")]
    AndrewsRange { n: i64, k: i64 },
}

/// `C(n, k)`; zero whenever `k < 0`, `k > n` or `n < 0`.
pub fn binom(n: i64, k: i64) -> BigCount {
    if n < 0 || k < 0 || k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        acc *= (n - i) as u64;
        acc /= (i + 1) as u64;
    }
    acc
}

/// `base^exp` for a nonnegative exponent.
pub fn pow(base: u32, exp: i64) -> BigCount {
    debug_assert!(exp >= 0);
    BigCount::from(base).pow(exp as u32)
}

/// Names every side of every identity, plus the two-index path summand
/// counting Hanna paths by `(X, Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ExpressionId {
    /// `Σ_k C(n,k)^3`
    FranelL,
    /// `Σ_k C(n,k)^2 C(2k,n)`
    FranelR,
    /// `Σ_k Σ_j C(n,k) C(n+k,k) C(k,j)^3`
    AperyL,
    /// `Σ_k C(n,k)^2 C(n+k,k)^2`
    AperyR,
    /// `Σ_k Σ_j C(n,k) C(k,j)^3`
    BarrucandL,
    /// `Σ_k C(n,k)^2 C(2k,k)`
    BarrucandR,
    /// `Σ_k Σ_j C(n,k) C(k,j)^2 C(k,j-a)`
    GenBarrL(i64),
    /// `Σ_k C(n,k)^2 C(2k,k-a)`
    GenBarrR(i64),
    /// `Σ_k C(n,k) C(2k,k) 2^k`
    Chain1,
    /// `Σ_k C(n,k) C(2n-k,n) 3^k`
    Chain2,
    /// `Σ_k C(n,k)^2 4^k`
    Chain3,
    /// `Σ_{k ≤ n/2} C(n,2k) C(2k,k) 4^k 5^(n-2k)`
    Chain4,
    /// `Σ_a C(k,a) C(n-k,a) C(n+k+a,n)`
    AndrewsL(i64),
    /// `C(n+k,k) C(n+k,n-k)`
    AndrewsR(i64),
    /// `Σ_i Σ_j C(n,j) C(n-j,i) C(2n-2i-2j,n-j) 3^(i+j)`, paths by `X = i`, `Y = j`.
    HannaXY,
}

impl fmt::Display for ExpressionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpressionId::GenBarrL(a) => write!(f, "GenBarrL(a={a})"),
            ExpressionId::GenBarrR(a) => write!(f, "GenBarrR(a={a})"),
            ExpressionId::AndrewsL(k) => write!(f, "AndrewsL(k={k})"),
            ExpressionId::AndrewsR(k) => write!(f, "AndrewsR(k={k})"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl ExpressionId {
    /// Number of summation indices the summand takes.
    pub fn arity(self) -> usize {
        use ExpressionId::*;
        match self {
            AndrewsR(_) => 0,
            AperyL | BarrucandL | GenBarrL(_) | HannaXY => 2,
            _ => 1,
        }
    }

    /// Inclusive ranges of the summation indices at `n`, outermost first.
    ///
    /// Inner ranges may depend on the already-fixed `outer` indices.
    fn index_ranges(self, n: i64, outer: &[i64]) -> (i64, i64) {
        use ExpressionId::*;
        match (self, outer.len()) {
            (Chain4, 0) => (0, n / 2),
            (AndrewsL(k), 0) => (0, k.min(n - k)),
            (AperyL | BarrucandL | GenBarrL(_), 1) => (0, outer[0]),
            _ => (0, n),
        }
    }

    fn in_range(self, n: i64, indices: &[i64]) -> bool {
        (0..indices.len()).all(|d| {
            let (lo, hi) = self.index_ranges(n, &indices[..d]);
            (lo..=hi).contains(&indices[d])
        })
    }

    fn check_params(self, n: i64) -> Result<(), CountError> {
        if n < 0 {
            return Err(CountError::NegativeN(n));
        }
        if let ExpressionId::AndrewsL(k) | ExpressionId::AndrewsR(k) = self {
            if !(0..=n).contains(&k) {
                return Err(CountError::AndrewsRange { n, k });
            }
        }
        Ok(())
    }

    fn raw_summand(self, n: i64, ix: &[i64]) -> BigCount {
        use ExpressionId::*;
        match self {
            FranelL => binom(n, ix[0]).pow(3),
            FranelR => binom(n, ix[0]).pow(2) * binom(2 * ix[0], n),
            AperyL => {
                let (k, j) = (ix[0], ix[1]);
                binom(n, k) * binom(n + k, k) * binom(k, j).pow(3)
            }
            AperyR => (binom(n, ix[0]) * binom(n + ix[0], ix[0])).pow(2),
            BarrucandL => binom(n, ix[0]) * binom(ix[0], ix[1]).pow(3),
            BarrucandR => binom(n, ix[0]).pow(2) * binom(2 * ix[0], ix[0]),
            GenBarrL(a) => {
                let (k, j) = (ix[0], ix[1]);
                binom(n, k) * binom(k, j).pow(2) * binom(k, j - a)
            }
            GenBarrR(a) => binom(n, ix[0]).pow(2) * binom(2 * ix[0], ix[0] - a),
            Chain1 => binom(n, ix[0]) * binom(2 * ix[0], ix[0]) * pow(2, ix[0]),
            Chain2 => binom(n, ix[0]) * binom(2 * n - ix[0], n) * pow(3, ix[0]),
            Chain3 => binom(n, ix[0]).pow(2) * pow(4, ix[0]),
            Chain4 => {
                let k = ix[0];
                binom(n, 2 * k) * binom(2 * k, k) * pow(4, k) * pow(5, n - 2 * k)
            }
            AndrewsL(k) => {
                let a = ix[0];
                binom(k, a) * binom(n - k, a) * binom(n + k + a, n)
            }
            AndrewsR(k) => binom(n + k, k) * binom(n + k, n - k),
            HannaXY => {
                let (i, j) = (ix[0], ix[1]);
                binom(n, j) * binom(n - j, i) * binom(2 * n - 2 * i - 2 * j, n - j) * pow(3, i + j)
            }
        }
    }
}

/// The summand of `expr` at `n` and the given summation indices; zero when the
/// indices fall outside the summation range.
pub fn summand(expr: ExpressionId, n: i64, indices: &[i64]) -> Result<BigCount, CountError> {
    if indices.len() != expr.arity() {
        return Err(CountError::Arity {
            expr,
            expected: expr.arity(),
            got: indices.len(),
        });
    }
    expr.check_params(n)?;
    if !expr.in_range(n, indices) {
        return Ok(BigCount::zero());
    }
    Ok(expr.raw_summand(n, indices))
}

/// Every in-range index tuple of `expr` at `n` paired with its summand.
pub fn summand_terms(expr: ExpressionId, n: i64) -> Result<Vec<(Vec<i64>, BigCount)>, CountError> {
    expr.check_params(n)?;
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(expr.arity());
    collect_terms(expr, n, &mut stack, &mut out);
    Ok(out)
}

fn collect_terms(
    expr: ExpressionId,
    n: i64,
    prefix: &mut Vec<i64>,
    out: &mut Vec<(Vec<i64>, BigCount)>,
) {
    if prefix.len() == expr.arity() {
        out.push((prefix.clone(), expr.raw_summand(n, prefix)));
        return;
    }
    let (lo, hi) = expr.index_ranges(n, prefix);
    for i in lo..=hi {
        prefix.push(i);
        collect_terms(expr, n, prefix, out);
        prefix.pop();
    }
}

/// Exact value of `expr` at `n`.
pub fn eval_expression(expr: ExpressionId, n: i64) -> Result<BigCount, CountError> {
    Ok(summand_terms(expr, n)?.into_iter().map(|(_, v)| v).sum())
}

/// The scalar identities, each a list of expressions that must agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IdentityId {
    Franel,
    Apery,
    /// Four-way chain of sums with powers 2, 3, 4 and 4·5.
    Chain,
    Barrucand,
    GenBarrucand(i64),
    Andrews(i64),
}

impl IdentityId {
    pub fn sides(self) -> Vec<ExpressionId> {
        use ExpressionId::*;
        match self {
            IdentityId::Franel => vec![FranelL, FranelR],
            IdentityId::Apery => vec![AperyL, AperyR],
            IdentityId::Chain => vec![Chain1, Chain2, Chain3, Chain4],
            IdentityId::Barrucand => vec![BarrucandL, BarrucandR],
            IdentityId::GenBarrucand(a) => vec![GenBarrL(a), GenBarrR(a)],
            IdentityId::Andrews(k) => vec![AndrewsL(k), AndrewsR(k)],
        }
    }

    /// Short stable name used in reports.
    pub fn name(self) -> String {
        match self {
            IdentityId::Franel => "franel".into(),
            IdentityId::Apery => "apery".into(),
            IdentityId::Chain => "chain".into(),
            IdentityId::Barrucand => "barrucand".into(),
            IdentityId::GenBarrucand(a) => format!("gen_barrucand(a={a})"),
            IdentityId::Andrews(k) => format!("andrews(k={k})"),
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            IdentityId::Franel => "Franel numbers: sum C(n,k)^3 = sum C(n,k)^2 C(2k,n)",
            IdentityId::Apery => {
                "Apery numbers: sum C(n,k)C(n+k,k) sum_j C(k,j)^3 = sum C(n,k)^2 C(n+k,k)^2"
            }
            IdentityId::Chain => {
                "sum C(n,k)C(2k,k)2^k = sum C(n,k)C(2n-k,n)3^k = sum C(n,k)^2 4^k = sum C(n,2k)C(2k,k)4^k 5^(n-2k)"
            }
            IdentityId::Barrucand => {
                "Barrucand: sum C(n,k) sum_j C(k,j)^3 = sum C(n,k)^2 C(2k,k)"
            }
            IdentityId::GenBarrucand(_) => {
                "generalized Barrucand: sum C(n,k) sum_j C(k,j)^2 C(k,j-a) = sum C(n,k)^2 C(2k,k-a)"
            }
            IdentityId::Andrews(_) => {
                "Andrews: sum_a C(k,a)C(n-k,a)C(n+k+a,n) = C(n+k,k)C(n+k,n-k)"
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub n: i64,
    pub pass: bool,
    pub sides: Vec<(ExpressionId, BigCount)>,
}

/// Evaluates every side of `id` at `n`; passes iff all sides agree exactly.
pub fn check_scalar_identity(id: IdentityId, n: i64) -> Result<IdentityReport, CountError> {
    let sides = id
        .sides()
        .into_iter()
        .map(|e| eval_expression(e, n).map(|v| (e, v)))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = sides.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(IdentityReport { id, n, pass, sides })
}

/// All identity instances checked at a given `n`: the fixed identities, the
/// generalized Barrucand family for each offset in `offsets`, and Andrews for
/// every `0 ≤ k ≤ n`.
pub fn identity_instances(n: i64, offsets: impl IntoIterator<Item = i64>) -> Vec<IdentityId> {
    let mut ids = vec![
        IdentityId::Franel,
        IdentityId::Apery,
        IdentityId::Chain,
        IdentityId::Barrucand,
    ];
    ids.extend(offsets.into_iter().map(IdentityId::GenBarrucand));
    ids.extend((0..=n).map(IdentityId::Andrews));
    ids
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn binom_small_values() {
        assert_eq!(binom(4, 2), big(6));
        assert_eq!(binom(5, -1), big(0));
        assert_eq!(binom(6, 3), big(20));
        assert_eq!(binom(-3, 0), big(0));
        assert_eq!(binom(3, 4), big(0));
        assert_eq!(binom(0, 0), big(1));
    }

    #[test]
    fn binom_pascal_recurrence() {
        for n in 1..=64 {
            for k in 0..=n {
                assert_eq!(
                    binom(n, k),
                    binom(n - 1, k - 1) + binom(n - 1, k),
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_expression(ExpressionId::FranelL, 2).unwrap(), big(10));
        assert_eq!(eval_expression(ExpressionId::AperyR, 1).unwrap(), big(5));
        assert_eq!(eval_expression(ExpressionId::Chain3, 3).unwrap(), big(245));
        assert_eq!(
            eval_expression(ExpressionId::BarrucandR, 3).unwrap(),
            big(93)
        );
    }

    #[test]
    fn eval_rejects_negative_n() {
        assert_eq!(
            eval_expression(ExpressionId::Chain1, -1),
            Err(CountError::NegativeN(-1))
        );
        assert!(matches!(
            eval_expression(ExpressionId::AndrewsL(3), 2),
            Err(CountError::AndrewsRange { .. })
        ));
    }

    #[test]
    fn summand_examples() {
        assert_eq!(
            summand(ExpressionId::BarrucandL, 2, &[2, 1]).unwrap(),
            big(8)
        );
        assert_eq!(summand(ExpressionId::Chain2, 1, &[1]).unwrap(), big(3));
        assert_eq!(summand(ExpressionId::HannaXY, 1, &[0, 1]).unwrap(), big(3));
    }

    #[test]
    fn summand_out_of_range_is_zero() {
        assert_eq!(summand(ExpressionId::Chain2, 3, &[4]).unwrap(), big(0));
        assert_eq!(summand(ExpressionId::Chain2, 3, &[-1]).unwrap(), big(0));
        assert_eq!(summand(ExpressionId::Chain4, 3, &[2]).unwrap(), big(0));
        assert_eq!(
            summand(ExpressionId::BarrucandL, 3, &[1, 2]).unwrap(),
            big(0)
        );
    }

    #[test]
    fn summand_wrong_arity() {
        assert!(matches!(
            summand(ExpressionId::BarrucandL, 2, &[1]),
            Err(CountError::Arity {
                expected: 2,
                got: 1,
                ..
            })
        ));
        assert!(summand(ExpressionId::AndrewsR(1), 2, &[]).is_ok());
    }

    #[test]
    fn identity_examples() {
        let r = check_scalar_identity(IdentityId::Chain, 3).unwrap();
        assert!(r.pass);
        assert_eq!(r.sides.len(), 4);
        assert!(r.sides.iter().all(|(_, v)| *v == big(245)));

        let r = check_scalar_identity(IdentityId::Andrews(1), 2).unwrap();
        assert!(r.pass);
        assert!(r.sides.iter().all(|(_, v)| *v == big(9)));

        let r = check_scalar_identity(IdentityId::Franel, 0).unwrap();
        assert!(r.pass);
        assert!(r.sides.iter().all(|(_, v)| *v == big(1)));
    }

    #[test]
    fn every_identity_holds_up_to_40() {
        for n in 0..=40 {
            for id in identity_instances(n, -2..=3) {
                let r = check_scalar_identity(id, n).unwrap();
                assert!(r.pass, "{} failed at n={n}: {:?}", id.name(), r.sides);
            }
        }
    }

    #[test]
    fn large_n_stays_exact() {
        let r = check_scalar_identity(IdentityId::Chain, 200).unwrap();
        assert!(r.pass);
        assert!(r.sides[0].1.bits() > 400);
    }
}
