//! Double counting made executable.
//!
//! Every interpretation names a family of objects, a tuple of statistics on
//! it and a closed-form summand. [`check_interpretation`] enumerates the
//! family, pushes it forward under the statistics, and compares the result
//! keywise with the summand table. Two sides of an identity become two
//! different statistics on the same enumerated family.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::deals::{enumerate_deals, Deal, DealError, DealKind};
use crate::exact_counts::{
    binom, check_scalar_identity, identity_instances, summand_terms, BigCount, CountError,
    ExpressionId, IdentityId,
};
use crate::matrices::{enumerate_matrices, MatrixClass, MatrixError, TwoRowMatrix};
use crate::paths::{enumerate_paths, HannaPath, PathError};

/// Largest `n` the enumeration suites run at, whatever `n_max` asks for.
pub const EXHAUSTIVE_SUITE_MAX_N: usize = 6;
/// Largest `n` accepted by [`andrews_pair_distribution`].
pub const ANDREWS_MAX_N: usize = 6;
/// Offsets `a` for which the generalized Barrucand interpretations are
/// registered in the catalog.
pub const GEN_BARR_OFFSETS: std::ops::RangeInclusive<i64> = -2..=3;
/// Offsets `a` for the generalized Barrucand scalar identity.
pub const GEN_BARR_IDENTITY_OFFSETS: std::ops::RangeInclusive<i64> = -2..=3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("statistic {stat} is not defined on {family}")]
    UnknownStatistic { stat: Statistic, family: Family },
    #[error("unknown statistic name {0:?}")]
    BadStatistic(String),
    #[error("unknown family {0:?}")]
    BadFamily(String),
    #[error("unknown check id {0:?}")]
    BadCheck(String),
    #[error("andrews pairs need 0 <= k <= n <= {ANDREWS_MAX_N}, got n={n} k={k}")]
    AndrewsRange { n: usize, k: usize },
    #[error(transparent)]
    Deal(#[from] DealError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Count(#[from] CountError),
}

/// Exact map from statistic tuples to counts. Zero counts are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Distribution(BTreeMap<Vec<i64>, BigCount>);

impl Distribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: Vec<i64>, count: BigCount) {
        if count.is_zero() {
            return;
        }
        *self.0.entry(key).or_default() += count;
    }

    pub fn get(&self, key: &[i64]) -> BigCount {
        self.0.get(key).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigCount {
        self.0.values().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &BigCount)> {
        self.0.iter()
    }

    /// Keys where `self` (expected) and `observed` differ, including keys
    /// present on one side only.
    pub fn mismatches(&self, observed: &Distribution) -> Vec<Mismatch> {
        let mut keys: Vec<&Vec<i64>> = self.0.keys().chain(observed.0.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|k| {
                let (e, o) = (self.get(k), observed.get(k));
                (e != o).then(|| Mismatch {
                    key: k.clone(),
                    expected: e,
                    observed: o,
                })
            })
            .collect()
    }
}

impl<const N: usize> From<[(Vec<i64>, u64); N]> for Distribution {
    fn from(entries: [(Vec<i64>, u64); N]) -> Self {
        let mut d = Distribution::new();
        for (k, v) in entries {
            d.add(k, BigCount::from(v));
        }
        d
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            match k.as_slice() {
                [single] => write!(f, "{single}: {v}")?,
                _ => {
                    let parts: Vec<String> = k.iter().map(i64::to_string).collect();
                    write!(f, "({}): {v}", parts.join(","))?
                }
            }
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub key: Vec<i64>,
    pub expected: BigCount,
    pub observed: BigCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Deals(DealKind),
    Matrices(MatrixClass),
    Paths,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Deals(k) => write!(f, "deals:{}", k.name()),
            Family::Matrices(c) => write!(f, "matrices:{c}"),
            Family::Paths => write!(f, "paths"),
        }
    }
}

impl FromStr for Family {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || VerifyError::BadFamily(s.to_string());
        if s == "paths" {
            return Ok(Family::Paths);
        }
        if let Some(kind) = s.strip_prefix("deals:") {
            return kind.parse().map(Family::Deals).map_err(|_| bad());
        }
        if let Some(class) = s.strip_prefix("matrices:") {
            return class.parse().map(Family::Matrices).map_err(|_| bad());
        }
        Err(bad())
    }
}

impl Family {
    /// Closed form for the size of the family at `n`.
    pub fn cardinality_expression(self) -> ExpressionId {
        match self {
            Family::Deals(DealKind::Barrucand) | Family::Matrices(MatrixClass::Abelian) => {
                ExpressionId::BarrucandR
            }
            Family::Deals(DealKind::Franel) => ExpressionId::FranelL,
            Family::Matrices(MatrixClass::Offset(a)) => ExpressionId::GenBarrR(a),
            Family::Deals(DealKind::Hanna)
            | Family::Matrices(MatrixClass::Hanna)
            | Family::Paths => ExpressionId::Chain3,
        }
    }
}

/// A statistic on one of the three object families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statistic {
    CardsInRed,
    DistinctDenomsRed,
    GreenInRed,
    RedInBlue,
    BlueInGreen,
    OnesColumns,
    NonOnesColumns,
    TopOnes,
    TopNon1,
    PqColumns,
    RowOnes,
    UpColumns,
    X,
    Y,
    XPlusY,
    Upsteps,
}

impl Statistic {
    pub const ALL: [Statistic; 16] = [
        Statistic::CardsInRed,
        Statistic::DistinctDenomsRed,
        Statistic::GreenInRed,
        Statistic::RedInBlue,
        Statistic::BlueInGreen,
        Statistic::OnesColumns,
        Statistic::NonOnesColumns,
        Statistic::TopOnes,
        Statistic::TopNon1,
        Statistic::PqColumns,
        Statistic::RowOnes,
        Statistic::UpColumns,
        Statistic::X,
        Statistic::Y,
        Statistic::XPlusY,
        Statistic::Upsteps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::CardsInRed => "cards_in_red",
            Statistic::DistinctDenomsRed => "distinct_denoms_red",
            Statistic::GreenInRed => "green_in_red",
            Statistic::RedInBlue => "red_in_blue",
            Statistic::BlueInGreen => "blue_in_green",
            Statistic::OnesColumns => "ones_columns",
            Statistic::NonOnesColumns => "non_ones_columns",
            Statistic::TopOnes => "top_ones",
            Statistic::TopNon1 => "top_non1",
            Statistic::PqColumns => "pq_columns",
            Statistic::RowOnes => "row_ones",
            Statistic::UpColumns => "up_columns",
            Statistic::X => "X",
            Statistic::Y => "Y",
            Statistic::XPlusY => "X_plus_Y",
            Statistic::Upsteps => "upsteps",
        }
    }

    fn applies_to(self, family: Family) -> bool {
        use Statistic::*;
        match family {
            Family::Deals(_) => matches!(
                self,
                CardsInRed | DistinctDenomsRed | GreenInRed | RedInBlue | BlueInGreen
            ),
            Family::Matrices(_) => matches!(
                self,
                OnesColumns | NonOnesColumns | TopOnes | TopNon1 | PqColumns | RowOnes | UpColumns
            ),
            Family::Paths => matches!(self, X | Y | XPlusY | Upsteps),
        }
    }

    fn on_deal(self, d: &Deal) -> usize {
        match self {
            Statistic::CardsInRed => d.cards_in_red(),
            Statistic::DistinctDenomsRed => d.distinct_denoms_red(),
            Statistic::GreenInRed => d.green_in_red(),
            Statistic::RedInBlue => d.red_in_blue(),
            Statistic::BlueInGreen => d.blue_in_green(),
            _ => unreachable!("checked by applies_to"),
        }
    }

    fn on_matrix(self, m: &TwoRowMatrix) -> usize {
        match self {
            Statistic::OnesColumns => m.ones_columns(),
            Statistic::NonOnesColumns => m.n() - m.ones_columns(),
            Statistic::TopOnes => m.n() - m.top_non1(),
            Statistic::TopNon1 => m.top_non1(),
            Statistic::PqColumns => m.pq_columns(),
            Statistic::RowOnes => m.row_ones().expect("matrix families are Hanna"),
            Statistic::UpColumns => m.top1_bottom_non1_columns(),
            _ => unreachable!("checked by applies_to"),
        }
    }

    fn on_path(self, p: &HannaPath) -> usize {
        match self {
            Statistic::X => p.stat_x(),
            Statistic::Y => p.stat_y(),
            Statistic::XPlusY => p.stat_x() + p.stat_y(),
            Statistic::Upsteps => p.upsteps(),
            _ => unreachable!("checked by applies_to"),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Statistic::ALL
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| VerifyError::BadStatistic(s.to_string()))
    }
}

/// Borrowed member of a family.
#[derive(Debug, Clone, Copy)]
pub enum Item<'a> {
    Deal(&'a Deal),
    Matrix(&'a TwoRowMatrix),
    Path(&'a HannaPath),
}

impl Item<'_> {
    fn stat(&self, s: Statistic) -> i64 {
        (match self {
            Item::Deal(d) => s.on_deal(d),
            Item::Matrix(m) => s.on_matrix(m),
            Item::Path(p) => s.on_path(p),
        }) as i64
    }
}

fn for_each_item(family: Family, n: usize, mut f: impl FnMut(Item<'_>)) -> Result<(), VerifyError> {
    match family {
        Family::Deals(kind) => enumerate_deals(n, kind)?.for_each(|d| f(Item::Deal(&d))),
        Family::Matrices(class) => enumerate_matrices(n, class)?.for_each(|m| f(Item::Matrix(&m))),
        Family::Paths => enumerate_paths(n)?.for_each(|p| f(Item::Path(&p))),
    }
    Ok(())
}

/// Exact joint distribution of `stats` over the `n`-members of `family`.
pub fn enumerated_distribution(
    family: Family,
    n: usize,
    stats: &[Statistic],
) -> Result<Distribution, VerifyError> {
    weighted_distribution(family, n, stats, |_| BigCount::one())
}

/// Like [`enumerated_distribution`], with each member contributing `weight`.
pub fn weighted_distribution(
    family: Family,
    n: usize,
    stats: &[Statistic],
    weight: impl Fn(Item<'_>) -> BigCount,
) -> Result<Distribution, VerifyError> {
    if let Some(&stat) = stats.iter().find(|s| !s.applies_to(family)) {
        return Err(VerifyError::UnknownStatistic { stat, family });
    }
    let mut dist = Distribution::new();
    for_each_item(family, n, |item| {
        let key = stats.iter().map(|&s| item.stat(s)).collect();
        dist.add(key, weight(item));
    })?;
    Ok(dist)
}

/// Number of `family` members at `n`, by enumeration.
pub fn enumerated_cardinality(family: Family, n: usize) -> Result<u64, VerifyError> {
    let mut count = 0u64;
    for_each_item(family, n, |_| count += 1)?;
    Ok(count)
}

/// Pairs `(K, L)` of subsets of `[n+k]` with `|K| = k`, `|L| = n - k`, counted
/// by the number of elements of `L` among the `k` smallest elements of the
/// set union `K ∪ L` (an element in both `K` and `L` counts as one of `L`).
pub fn andrews_pair_distribution(n: usize, k: usize) -> Result<Distribution, VerifyError> {
    if k > n || n > ANDREWS_MAX_N {
        return Err(VerifyError::AndrewsRange { n, k });
    }
    let universe = n + k;
    let subsets = |size: usize| -> Vec<u32> {
        (0u32..1 << universe)
            .filter(|m| m.count_ones() as usize == size)
            .collect()
    };
    let ks = subsets(k);
    let ls = subsets(n - k);
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for &kset in &ks {
        for &lset in &ls {
            let union = kset | lset;
            let mut smallest = 0u32;
            let mut taken = 0;
            for bit in 0..universe {
                if taken == k {
                    break;
                }
                if union >> bit & 1 == 1 {
                    smallest |= 1 << bit;
                    taken += 1;
                }
            }
            let a = (smallest & lset).count_ones() as i64;
            *counts.entry(a).or_default() += 1;
        }
    }
    let mut dist = Distribution::new();
    for (a, c) in counts {
        dist.add(vec![a], BigCount::from(c));
    }
    Ok(dist)
}

/// Each registered "counts ... by ..." claim.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InterpretationId {
    BarrL_kj,
    BarrR_k,
    AbelianWordL,
    AbelianWordR,
    GenBarr_kj(i64),
    GenBarr_k(i64),
    FranelL_j,
    FranelR_k,
    AperyWeighted_k,
    AperyWeightedMatrix_k,
    Chain1_k,
    Chain1_kj,
    Chain2_XY,
    Chain2_XYjoint,
    Chain3_rows,
    Chain3_deal,
    Chain4_ups,
    AndrewsPairs(i64),
}

/// How the enumerated side of an interpretation weighs each object.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    Unit,
    /// `C(n + c, c)` with `c` the number of cards in red's hand.
    AperyDeal,
    /// `C(n + c, c)` with `c` the number of columns other than `(1/1)`.
    AperyMatrix,
}

impl InterpretationId {
    /// The catalog run by the interpretation suite (Andrews pairs excluded;
    /// they are indexed by `k` and run by their own suite).
    pub fn catalog() -> Vec<InterpretationId> {
        use InterpretationId::*;
        let mut ids = vec![BarrL_kj, BarrR_k, AbelianWordL, AbelianWordR];
        for a in GEN_BARR_OFFSETS {
            ids.push(GenBarr_kj(a));
            ids.push(GenBarr_k(a));
        }
        ids.extend([
            FranelL_j,
            FranelR_k,
            AperyWeighted_k,
            AperyWeightedMatrix_k,
            Chain1_k,
            Chain1_kj,
            Chain2_XY,
            Chain2_XYjoint,
            Chain3_rows,
            Chain3_deal,
            Chain4_ups,
        ]);
        ids
    }

    pub fn name(self) -> String {
        use InterpretationId::*;
        match self {
            GenBarr_kj(a) => format!("GenBarr_kj(a={a})"),
            GenBarr_k(a) => format!("GenBarr_k(a={a})"),
            AndrewsPairs(k) => format!("AndrewsPairs(k={k})"),
            other => format!("{other:?}"),
        }
    }

    /// The enumerated family, or `None` for Andrews pairs.
    pub fn family(self) -> Option<Family> {
        use InterpretationId::*;
        Some(match self {
            BarrL_kj | BarrR_k | AperyWeighted_k => Family::Deals(DealKind::Barrucand),
            FranelL_j | FranelR_k => Family::Deals(DealKind::Franel),
            Chain1_k | Chain1_kj | Chain3_deal => Family::Deals(DealKind::Hanna),
            AbelianWordL | AbelianWordR | AperyWeightedMatrix_k => {
                Family::Matrices(MatrixClass::Abelian)
            }
            GenBarr_kj(a) | GenBarr_k(a) => Family::Matrices(MatrixClass::Offset(a)),
            Chain3_rows => Family::Matrices(MatrixClass::Hanna),
            Chain2_XY | Chain2_XYjoint | Chain4_ups => Family::Paths,
            AndrewsPairs(_) => return None,
        })
    }

    pub fn stats(self) -> Vec<Statistic> {
        use InterpretationId::*;
        use Statistic::*;
        match self {
            BarrL_kj => vec![CardsInRed, GreenInRed],
            BarrR_k | AperyWeighted_k | FranelR_k | Chain3_deal => vec![DistinctDenomsRed],
            AbelianWordL => vec![OnesColumns],
            AbelianWordR => vec![TopOnes],
            GenBarr_kj(_) => vec![NonOnesColumns, PqColumns],
            GenBarr_k(_) | AperyWeightedMatrix_k => vec![TopNon1],
            FranelL_j => vec![GreenInRed],
            Chain1_k => vec![CardsInRed],
            Chain1_kj => vec![CardsInRed, RedInBlue],
            Chain2_XY => vec![XPlusY],
            Chain2_XYjoint => vec![X, Y],
            Chain3_rows => vec![RowOnes],
            Chain4_ups => vec![Upsteps],
            AndrewsPairs(_) => vec![],
        }
    }

    pub fn weighting(self) -> Weighting {
        match self {
            InterpretationId::AperyWeighted_k => Weighting::AperyDeal,
            InterpretationId::AperyWeightedMatrix_k => Weighting::AperyMatrix,
            _ => Weighting::Unit,
        }
    }

    /// The identity side whose summand this interpretation realizes.
    pub fn expression(self) -> ExpressionId {
        use InterpretationId::*;
        match self {
            BarrL_kj | AbelianWordL => ExpressionId::BarrucandL,
            BarrR_k | AbelianWordR => ExpressionId::BarrucandR,
            GenBarr_kj(a) => ExpressionId::GenBarrL(a),
            GenBarr_k(a) => ExpressionId::GenBarrR(a),
            FranelL_j => ExpressionId::FranelL,
            FranelR_k => ExpressionId::FranelR,
            AperyWeighted_k | AperyWeightedMatrix_k => ExpressionId::AperyR,
            Chain1_k | Chain1_kj => ExpressionId::Chain1,
            Chain2_XY => ExpressionId::Chain2,
            Chain2_XYjoint => ExpressionId::HannaXY,
            Chain3_rows | Chain3_deal => ExpressionId::Chain3,
            Chain4_ups => ExpressionId::Chain4,
            AndrewsPairs(k) => ExpressionId::AndrewsL(k),
        }
    }

    /// Plain-language statement of the claim being checked.
    pub fn description(self) -> &'static str {
        use InterpretationId::*;
        match self {
            BarrL_kj => "Barrucand deals by (cards in red's hand k, green cards in red's hand j): C(n,k)C(k,j)^3",
            BarrR_k => "Barrucand deals by distinct denominations in red's hand k: C(n,k)^2 C(2k,k)",
            AbelianWordL => "abelian words ww' by positions n-k where w and w' both have a 1: sum_j C(n,k)C(k,j)^3",
            AbelianWordR => "abelian words ww' by number n-k of 1s in w: C(n,k)^2 C(2k,k)",
            GenBarr_kj(_) => "matrices with equal 1s per row and a more top 3s, by (non-(1/1) columns k, columns p>1 q<3 j): C(n,k)C(k,j)^2 C(k,j-a)",
            GenBarr_k(_) => "matrices with equal 1s per row and a more top 3s, by 2s and 3s in the top row k: C(n,k)^2 C(2k,k-a)",
            FranelL_j => "Franel deals by green cards in red's hand j: C(n,j)^3",
            FranelR_k => "Franel deals by distinct denominations in red's hand k: C(n,k)^2 C(2k,n)",
            AperyWeighted_k => "pairs (Barrucand deal with c cards in red's hand, index up to C(n+c,c)) by distinct denominations in red's hand k: C(n,k)^2 C(n+k,k)^2",
            AperyWeightedMatrix_k => "pairs (abelian matrix with n-c (1/1) columns, index up to C(n+c,c)) by 2s and 3s in the top row k: C(n,k)^2 C(n+k,k)^2",
            Chain1_k => "Hanna deals by cards in red's hand k: C(n,k)C(2k,k)2^k",
            Chain1_kj => "Hanna deals by (cards in red's hand k, red cards in blue's hand j): C(n,k)C(k,j)C(2k,k)",
            Chain2_XY => "Hanna paths by X+Y = k: C(n,k)C(2n-k,n)3^k",
            Chain2_XYjoint => "Hanna paths by (X = i, Y = j): C(n,j)C(n-j,i)C(2n-2i-2j,n-j)3^(i+j)",
            Chain3_rows => "Hanna matrices by n-k 1s in each row: C(n,k)^2 4^k",
            Chain3_deal => "Hanna deals by k distinct denominations in red's hand: C(n,k)^2 4^k",
            Chain4_ups => "Hanna paths by k upsteps: C(n,2k)C(2k,k)4^k 5^(n-2k)",
            AndrewsPairs(_) => "pairs (K,L) of k- and (n-k)-subsets of [n+k] by intermingling coefficient a: C(k,a)C(n-k,a)C(n+k+a,n)",
        }
    }
}

impl fmt::Display for InterpretationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for InterpretationId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || VerifyError::BadCheck(s.to_string());
        let param = |prefix: &str| -> Option<i64> {
            s.strip_prefix(prefix)?
                .strip_suffix(')')?
                .trim_start_matches("a=")
                .trim_start_matches("k=")
                .parse()
                .ok()
        };
        if let Some(a) = param("GenBarr_kj(") {
            return Ok(InterpretationId::GenBarr_kj(a));
        }
        if let Some(a) = param("GenBarr_k(") {
            return Ok(InterpretationId::GenBarr_k(a));
        }
        if let Some(k) = param("AndrewsPairs(") {
            return Ok(InterpretationId::AndrewsPairs(k));
        }
        InterpretationId::catalog()
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(bad)
    }
}

/// The closed-form side of `id` at `n`, keyed the way the statistics are.
pub fn formula_distribution(id: InterpretationId, n: usize) -> Result<Distribution, VerifyError> {
    use InterpretationId::*;
    let ni = n as i64;
    let mut dist = Distribution::new();
    match id {
        Chain1_kj => {
            for k in 0..=ni {
                for j in 0..=k {
                    dist.add(vec![k, j], binom(ni, k) * binom(k, j) * binom(2 * k, k));
                }
            }
        }
        _ => {
            for (ix, v) in summand_terms(id.expression(), ni)? {
                let key = match id {
                    BarrL_kj | GenBarr_kj(_) | Chain2_XYjoint => ix,
                    // keyed by n - k: (1/1) columns, 1s in w, 1s per row
                    AbelianWordL | AbelianWordR | Chain3_rows => vec![ni - ix[0]],
                    _ => vec![ix[0]],
                };
                dist.add(key, v);
            }
        }
    }
    Ok(dist)
}

/// The enumerated side of `id` at `n`.
pub fn observed_distribution(id: InterpretationId, n: usize) -> Result<Distribution, VerifyError> {
    if let InterpretationId::AndrewsPairs(k) = id {
        let k = usize::try_from(k).map_err(|_| VerifyError::AndrewsRange { n, k: usize::MAX })?;
        return andrews_pair_distribution(n, k);
    }
    let family = id.family().expect("non-Andrews ids have a family");
    let ni = n as i64;
    match id.weighting() {
        Weighting::Unit => enumerated_distribution(family, n, &id.stats()),
        Weighting::AperyDeal => weighted_distribution(family, n, &id.stats(), |item| match item {
            Item::Deal(d) => {
                let c = d.cards_in_red() as i64;
                binom(ni + c, c)
            }
            _ => unreachable!("deal family"),
        }),
        Weighting::AperyMatrix => {
            weighted_distribution(family, n, &id.stats(), |item| match item {
                Item::Matrix(m) => {
                    let c = (m.n() - m.ones_columns()) as i64;
                    binom(ni + c, c)
                }
                _ => unreachable!("matrix family"),
            })
        }
    }
}

/// Outcome of one check at one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub id: String,
    pub n: usize,
    pub pass: bool,
    pub mismatches: Vec<Mismatch>,
    pub millis: u128,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    id: &'a str,
    n: usize,
    pass: bool,
    mismatches: Vec<MismatchJson>,
    millis: u128,
}

#[derive(Serialize)]
struct MismatchJson {
    key: Vec<i64>,
    expected: String,
    observed: String,
}

impl Report {
    /// One JSON line; big integers are decimal strings.
    pub fn to_json_line(&self) -> String {
        let wire = ReportJson {
            id: &self.id,
            n: self.n,
            pass: self.pass,
            mismatches: self
                .mismatches
                .iter()
                .map(|m| MismatchJson {
                    key: m.key.clone(),
                    expected: m.expected.to_string(),
                    observed: m.observed.to_string(),
                })
                .collect(),
            millis: self.millis,
        };
        serde_json::to_string(&wire).expect("report serializes")
    }
}

/// Compares the enumerated and closed-form distributions of `id` at `n`.
pub fn check_interpretation(id: InterpretationId, n: usize) -> Result<Report, VerifyError> {
    let start = Instant::now();
    let expected = formula_distribution(id, n)?;
    let observed = observed_distribution(id, n)?;
    let mismatches = expected.mismatches(&observed);
    Ok(Report {
        id: id.name(),
        n,
        pass: mismatches.is_empty(),
        mismatches,
        millis: start.elapsed().as_millis(),
    })
}

/// Evaluates a scalar identity and wraps it as a [`Report`]; a mismatch is
/// keyed by the index of the side that disagrees with the first side.
pub fn identity_report(id: IdentityId, n: usize) -> Result<Report, VerifyError> {
    let start = Instant::now();
    let r = check_scalar_identity(id, n as i64)?;
    let first = r.sides[0].1.clone();
    let mismatches = r
        .sides
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, (_, v))| *v != first)
        .map(|(i, (_, v))| Mismatch {
            key: vec![i as i64],
            expected: first.clone(),
            observed: v.clone(),
        })
        .collect();
    Ok(Report {
        id: id.name(),
        n,
        pass: r.pass,
        mismatches,
        millis: start.elapsed().as_millis(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    Identity(IdentityId),
    Interpretation(InterpretationId),
}

impl CheckId {
    pub fn name(self) -> String {
        match self {
            CheckId::Identity(id) => id.name(),
            CheckId::Interpretation(id) => id.name(),
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CheckId::Identity(id) => id.description(),
            CheckId::Interpretation(id) => id.description(),
        }
    }

    pub fn run(self, n: usize) -> Result<Report, VerifyError> {
        match self {
            CheckId::Identity(id) => identity_report(id, n),
            CheckId::Interpretation(id) => check_interpretation(id, n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Default,
    Identities,
    Interpretations,
    Andrews,
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "default" => Ok(Suite::Default),
            "identities" => Ok(Suite::Identities),
            "interpretations" => Ok(Suite::Interpretations),
            "andrews" => Ok(Suite::Andrews),
            other => Err(VerifyError::BadCheck(other.to_string())),
        }
    }
}

impl Suite {
    /// The `(check, n)` cells of the suite, in reporting order. Enumeration
    /// suites stop at [`EXHAUSTIVE_SUITE_MAX_N`] and [`ANDREWS_MAX_N`].
    pub fn cells(self, n_max: usize) -> Vec<(CheckId, usize)> {
        let mut cells = Vec::new();
        if matches!(self, Suite::Default | Suite::Identities) {
            for n in 0..=n_max {
                for id in identity_instances(n as i64, GEN_BARR_IDENTITY_OFFSETS) {
                    cells.push((CheckId::Identity(id), n));
                }
            }
        }
        if matches!(self, Suite::Default | Suite::Interpretations) {
            for id in InterpretationId::catalog() {
                for n in 0..=n_max.min(EXHAUSTIVE_SUITE_MAX_N) {
                    cells.push((CheckId::Interpretation(id), n));
                }
            }
        }
        if matches!(self, Suite::Default | Suite::Andrews) {
            for n in 0..=n_max.min(ANDREWS_MAX_N) {
                for k in 0..=n {
                    cells.push((
                        CheckId::Interpretation(InterpretationId::AndrewsPairs(k as i64)),
                        n,
                    ));
                }
            }
        }
        cells
    }
}

/// Runs every cell (in parallel) and returns the reports in cell order.
pub fn run_suite(cells: &[(CheckId, usize)]) -> Result<Vec<Report>, VerifyError> {
    cells.par_iter().map(|&(id, n)| id.run(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use InterpretationId::*;

    #[test]
    fn enumerated_examples() {
        let d = enumerated_distribution(
            Family::Deals(DealKind::Barrucand),
            2,
            &[Statistic::CardsInRed, Statistic::GreenInRed],
        )
        .unwrap();
        let expected = Distribution::from([
            (vec![0, 0], 1),
            (vec![1, 0], 2),
            (vec![1, 1], 2),
            (vec![2, 0], 1),
            (vec![2, 1], 8),
            (vec![2, 2], 1),
        ]);
        assert_eq!(d, expected);
        assert_eq!(d.total(), BigCount::from(15u32));

        let d =
            enumerated_distribution(Family::Deals(DealKind::Franel), 2, &[Statistic::GreenInRed])
                .unwrap();
        assert_eq!(
            d,
            Distribution::from([(vec![0], 1), (vec![1], 8), (vec![2], 1)])
        );

        let d = enumerated_distribution(Family::Paths, 1, &[Statistic::XPlusY]).unwrap();
        assert_eq!(d, Distribution::from([(vec![0], 2), (vec![1], 3)]));
    }

    #[test]
    fn unknown_statistic_for_family() {
        assert_eq!(
            enumerated_distribution(Family::Paths, 1, &[Statistic::CardsInRed]),
            Err(VerifyError::UnknownStatistic {
                stat: Statistic::CardsInRed,
                family: Family::Paths
            })
        );
    }

    #[test]
    fn formula_examples() {
        assert_eq!(
            formula_distribution(FranelR_k, 2).unwrap(),
            Distribution::from([(vec![1], 4), (vec![2], 6)])
        );
        assert_eq!(
            formula_distribution(Chain4_ups, 1).unwrap(),
            Distribution::from([(vec![0], 5)])
        );
        assert_eq!(
            formula_distribution(BarrR_k, 0).unwrap(),
            Distribution::from([(vec![0], 1)])
        );
    }

    #[test]
    fn check_examples() {
        let r = check_interpretation(AperyWeighted_k, 1).unwrap();
        assert!(r.pass);
        assert_eq!(
            observed_distribution(AperyWeighted_k, 1).unwrap(),
            Distribution::from([(vec![0], 1), (vec![1], 4)])
        );
        assert_eq!(
            observed_distribution(Chain2_XYjoint, 1).unwrap(),
            Distribution::from([(vec![0, 0], 2), (vec![0, 1], 3)])
        );
        assert!(check_interpretation(Chain2_XYjoint, 1).unwrap().pass);
        assert!(check_interpretation(BarrL_kj, 2).unwrap().pass);
    }

    #[test]
    fn andrews_examples() {
        assert_eq!(
            andrews_pair_distribution(2, 1).unwrap(),
            Distribution::from([(vec![0], 3), (vec![1], 6)])
        );
        for n in 0..=4 {
            assert_eq!(
                andrews_pair_distribution(n, n).unwrap(),
                Distribution::from([(vec![0], binom(2 * n as i64, n as i64).try_into().unwrap())])
            );
        }
        assert_eq!(
            andrews_pair_distribution(1, 0).unwrap(),
            Distribution::from([(vec![0], 1)])
        );
        assert!(andrews_pair_distribution(1, 2).is_err());
        assert!(andrews_pair_distribution(ANDREWS_MAX_N + 1, 0).is_err());
    }

    #[test]
    fn mismatch_reports_extra_keys() {
        let a = Distribution::from([(vec![0], 1)]);
        let b = Distribution::from([(vec![0], 1), (vec![1], 2)]);
        let m = a.mismatches(&b);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].key, vec![1]);
        assert_eq!(m[0].expected, BigCount::zero());
    }

    #[test]
    fn zero_counts_are_not_stored() {
        let mut d = Distribution::new();
        d.add(vec![3], BigCount::zero());
        assert!(d.is_empty());
    }

    #[test]
    fn report_json_line() {
        let r = Report {
            id: "x".into(),
            n: 2,
            pass: false,
            mismatches: vec![Mismatch {
                key: vec![1, 0],
                expected: BigCount::from(3u32),
                observed: BigCount::from(4u32),
            }],
            millis: 7,
        };
        assert_eq!(
            r.to_json_line(),
            r#"{"id":"x","n":2,"pass":false,"mismatches":[{"key":[1,0],"expected":"3","observed":"4"}],"millis":7}"#
        );
    }

    #[test]
    fn parsing_names() {
        for id in InterpretationId::catalog() {
            assert_eq!(id.name().parse::<InterpretationId>().unwrap(), id);
        }
        assert_eq!(
            "AndrewsPairs(k=2)".parse::<InterpretationId>().unwrap(),
            AndrewsPairs(2)
        );
        assert_eq!(
            "matrices:offset:-1".parse::<Family>().unwrap(),
            Family::Matrices(MatrixClass::Offset(-1))
        );
        assert!("deals:other".parse::<Family>().is_err());
        assert_eq!("X_plus_Y".parse::<Statistic>().unwrap(), Statistic::XPlusY);
    }

    #[test]
    fn suite_shapes() {
        assert!(run_suite(&[]).unwrap().is_empty());
        let cells = Suite::Identities.cells(40);
        let reports = run_suite(&cells).unwrap();
        assert!(reports.iter().all(|r| r.pass));
        assert_eq!(reports.len(), cells.len());
        let default = run_suite(&Suite::Default.cells(3)).unwrap();
        let failed: Vec<_> = default.iter().filter(|r| !r.pass).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }
}
