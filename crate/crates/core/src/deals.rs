//! Card deals over a deck of `3n` cards: denominations `1..=n` in the three
//! colors red, green and blue.
//!
//! A deal picks a subset of denominations and hands every card of those
//! denominations to one of three players, never to the player of the card's
//! own color. The three kinds differ only in hand-size rules:
//!
//! * **Barrucand**: all three hands hold exactly `|dealt|` cards.
//! * **Franel**: a Barrucand deal with every denomination dealt.
//! * **Hanna**: only the red hand must hold `|dealt|` cards.
//!
//! A deal is stored per denomination as the triple of players holding its
//! red, green and blue card, so hand sizes are checked globally.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest `n` accepted by [`enumerate_deals`].
pub const MAX_DEAL_ENUM_N: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Green, Color::Blue];

    fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Green => 'G',
            Color::Blue => 'B',
        }
    }

    pub fn from_letter(c: char) -> Option<Color> {
        match c {
            'R' => Some(Color::Red),
            'G' => Some(Color::Green),
            'B' => Some(Color::Blue),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Card {
    pub denom: usize,
    pub color: Color,
}

impl Card {
    pub fn new(denom: usize, color: Color) -> Self {
        Card { denom, color }
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.denom, self.color.letter())
    }
}

impl FromStr for Card {
    type Err = DealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DealError::BadCard(s.to_string());
        let last = s.chars().last().ok_or_else(bad)?;
        let color = Color::from_letter(last).ok_or_else(bad)?;
        let denom = s[..s.len() - 1].parse::<usize>().map_err(|_| bad())?;
        Ok(Card { denom, color })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DealKind {
    Barrucand,
    Franel,
    Hanna,
}

impl DealKind {
    pub fn name(self) -> &'static str {
        match self {
            DealKind::Barrucand => "barrucand",
            DealKind::Franel => "franel",
            DealKind::Hanna => "hanna",
        }
    }
}

impl FromStr for DealKind {
    type Err = DealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "barrucand" => Ok(DealKind::Barrucand),
            "franel" => Ok(DealKind::Franel),
            "hanna" => Ok(DealKind::Hanna),
            other => Err(DealError::BadKind(other.to_string())),
        }
    }
}

/// Players holding the red, green and blue card of one denomination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Holders([Color; 3]);

impl Holders {
    pub fn new(red_card: Color, green_card: Color, blue_card: Color) -> Self {
        Holders([red_card, green_card, blue_card])
    }

    /// Player holding the card of color `card`.
    pub fn of(self, card: Color) -> Color {
        self.0[card.index()]
    }

    /// Number of this denomination's cards held by `player`.
    pub fn held_by(self, player: Color) -> usize {
        self.0.iter().filter(|&&h| h == player).count()
    }
}

/// The eight color-avoiding holder triples, lexicographic over
/// (red-card holder, green-card holder, blue-card holder).
const AVOIDING_TRIPLES: [Holders; 8] = {
    use Color::*;
    [
        Holders([Green, Red, Red]),
        Holders([Green, Red, Green]),
        Holders([Green, Blue, Red]),
        Holders([Green, Blue, Green]),
        Holders([Blue, Red, Red]),
        Holders([Blue, Red, Green]),
        Holders([Blue, Blue, Red]),
        Holders([Blue, Blue, Green]),
    ]
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DealError {
    #[error("deal enumeration supports n <= {MAX_DEAL_ENUM_N}, got {0}")]
    BoundExceeded(usize),
    #[error("malformed card token {0:?}")]
    BadCard(String),
    #[error("unknown deal kind {0:?}")]
    BadKind(String),
    #[error("denomination {denom} outside 1..={n}")]
    DenomOutOfRange { denom: usize, n: usize },
    #[error("card {0} belongs to a denomination that is not dealt")]
    NotDealt(Card),
    #[error("card {0} is held twice")]
    Duplicate(Card),
    #[error("card {0} is not held by anyone")]
    Missing(Card),
    #[error("deal violates {0}")]
    Invalid(Violation),
}

/// First constraint a deal breaks, by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    ColorAvoidance(Card),
    RedHandSize { held: usize, required: usize },
    GreenHandSize { held: usize, required: usize },
    BlueHandSize { held: usize, required: usize },
    NotAllDealt,
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::ColorAvoidance(_) => "color-avoidance",
            Violation::RedHandSize { .. } => "red-hand-size",
            Violation::GreenHandSize { .. } => "green-hand-size",
            Violation::BlueHandSize { .. } => "blue-hand-size",
            Violation::NotAllDealt => "all-dealt",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ColorAvoidance(c) => write!(f, "color-avoidance (card {c})"),
            Violation::RedHandSize { held, required }
            | Violation::GreenHandSize { held, required }
            | Violation::BlueHandSize { held, required } => {
                write!(f, "{} (holds {held}, needs {required})", self.name())
            }
            Violation::NotAllDealt => write!(f, "all-dealt"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Deal {
    /// `slots[d - 1]` is `Some` iff denomination `d` is dealt.
    slots: Vec<Option<Holders>>,
}

impl Deal {
    /// The deal of nothing from a deck with `n` denominations.
    pub fn empty(n: usize) -> Self {
        Deal {
            slots: vec![None; n],
        }
    }

    pub fn from_slots(slots: Vec<Option<Holders>>) -> Self {
        Deal { slots }
    }

    /// Builds a deal from the three hands; every card of a dealt denomination
    /// must appear in exactly one hand and no other card may appear.
    pub fn from_hands(
        n: usize,
        dealt: &[usize],
        red: &[Card],
        green: &[Card],
        blue: &[Card],
    ) -> Result<Self, DealError> {
        let mut holders: Vec<Option<[Option<Color>; 3]>> = vec![None; n];
        for &d in dealt {
            if d == 0 || d > n {
                return Err(DealError::DenomOutOfRange { denom: d, n });
            }
            holders[d - 1] = Some([None; 3]);
        }
        for (player, hand) in [
            (Color::Red, red),
            (Color::Green, green),
            (Color::Blue, blue),
        ] {
            for &card in hand {
                if card.denom == 0 || card.denom > n {
                    return Err(DealError::DenomOutOfRange {
                        denom: card.denom,
                        n,
                    });
                }
                let slot = holders[card.denom - 1]
                    .as_mut()
                    .ok_or(DealError::NotDealt(card))?;
                let entry = &mut slot[card.color.index()];
                if entry.is_some() {
                    return Err(DealError::Duplicate(card));
                }
                *entry = Some(player);
            }
        }
        let slots = holders
            .into_iter()
            .enumerate()
            .map(|(i, slot)| {
                slot.map(|s| {
                    let get =
                        |c: Color| s[c.index()].ok_or(DealError::Missing(Card::new(i + 1, c)));
                    Ok(Holders([
                        get(Color::Red)?,
                        get(Color::Green)?,
                        get(Color::Blue)?,
                    ]))
                })
                .transpose()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Deal { slots })
    }

    pub fn n(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Option<Holders>] {
        &self.slots
    }

    /// Holders of denomination `denom` (1-based), if dealt.
    pub fn holders(&self, denom: usize) -> Option<Holders> {
        self.slots.get(denom.wrapping_sub(1)).copied().flatten()
    }

    pub fn dealt(&self) -> Vec<usize> {
        self.dealt_iter().map(|(d, _)| d).collect()
    }

    fn dealt_iter(&self) -> impl Iterator<Item = (usize, Holders)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|h| (i + 1, h)))
    }

    pub fn dealt_count(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    /// Cards held by `player`, sorted by denomination then color.
    pub fn hand(&self, player: Color) -> Vec<Card> {
        self.dealt_iter()
            .flat_map(|(d, h)| {
                Color::ALL
                    .into_iter()
                    .filter(move |&c| h.of(c) == player)
                    .map(move |c| Card::new(d, c))
            })
            .collect()
    }

    /// Number of `card`-colored cards held by `player`.
    pub fn count_held(&self, player: Color, card: Color) -> usize {
        self.dealt_iter()
            .filter(|(_, h)| h.of(card) == player)
            .count()
    }

    pub fn hand_size(&self, player: Color) -> usize {
        self.dealt_iter().map(|(_, h)| h.held_by(player)).sum()
    }

    pub fn cards_in_red(&self) -> usize {
        self.hand_size(Color::Red)
    }

    pub fn distinct_denoms_red(&self) -> usize {
        self.dealt_iter()
            .filter(|(_, h)| h.held_by(Color::Red) > 0)
            .count()
    }

    pub fn green_in_red(&self) -> usize {
        self.count_held(Color::Red, Color::Green)
    }

    pub fn red_in_blue(&self) -> usize {
        self.count_held(Color::Blue, Color::Red)
    }

    pub fn blue_in_green(&self) -> usize {
        self.count_held(Color::Green, Color::Blue)
    }

    /// Checks every constraint of `kind`, reporting the first one broken.
    pub fn validate(&self, kind: DealKind) -> Result<(), Violation> {
        for (d, h) in self.dealt_iter() {
            if let Some(c) = Color::ALL.into_iter().find(|&c| h.of(c) == c) {
                return Err(Violation::ColorAvoidance(Card::new(d, c)));
            }
        }
        let required = self.dealt_count();
        let red = self.hand_size(Color::Red);
        if red != required {
            return Err(Violation::RedHandSize {
                held: red,
                required,
            });
        }
        if kind == DealKind::Hanna {
            return Ok(());
        }
        let green = self.hand_size(Color::Green);
        if green != required {
            return Err(Violation::GreenHandSize {
                held: green,
                required,
            });
        }
        let blue = self.hand_size(Color::Blue);
        if blue != required {
            return Err(Violation::BlueHandSize {
                held: blue,
                required,
            });
        }
        if kind == DealKind::Franel && required != self.n() {
            return Err(Violation::NotAllDealt);
        }
        Ok(())
    }

    /// Most restrictive kind the deal satisfies (Franel, then Barrucand, then Hanna).
    pub fn most_specific_kind(&self) -> Option<DealKind> {
        [DealKind::Franel, DealKind::Barrucand, DealKind::Hanna]
            .into_iter()
            .find(|&k| self.validate(k).is_ok())
    }

    pub fn to_json(&self, kind: DealKind) -> DealJson {
        let hand = |p| self.hand(p).iter().map(Card::to_string).collect();
        DealJson {
            n: self.n(),
            kind,
            dealt: self.dealt(),
            hands: Hands {
                red: hand(Color::Red),
                green: hand(Color::Green),
                blue: hand(Color::Blue),
            },
        }
    }
}

/// Validates `d` against `kind`.
pub fn validate_deal(d: &Deal, kind: DealKind) -> Result<(), Violation> {
    d.validate(kind)
}

/// Wire form of a deal. Hands are sorted by denomination, then color R < G < B.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DealJson {
    pub n: usize,
    pub kind: DealKind,
    pub dealt: Vec<usize>,
    pub hands: Hands,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hands {
    pub red: Vec<String>,
    pub green: Vec<String>,
    pub blue: Vec<String>,
}

impl TryFrom<&DealJson> for Deal {
    type Error = DealError;

    fn try_from(j: &DealJson) -> Result<Self, Self::Error> {
        let parse = |hand: &[String]| -> Result<Vec<Card>, DealError> {
            hand.iter().map(|s| s.parse()).collect()
        };
        let deal = Deal::from_hands(
            j.n,
            &j.dealt,
            &parse(&j.hands.red)?,
            &parse(&j.hands.green)?,
            &parse(&j.hands.blue)?,
        )?;
        deal.validate(j.kind).map_err(DealError::Invalid)?;
        Ok(deal)
    }
}

/// Streams every valid `kind` deal on `n` denominations exactly once.
///
/// Order: dealt denomination subsets in lexicographic order of their sorted
/// lists (the empty set first), then holder triples per denomination in
/// lexicographic order over (red-card, green-card, blue-card) holders with
/// `Red < Green < Blue`, the smallest dealt denomination varying slowest.
pub fn enumerate_deals(n: usize, kind: DealKind) -> Result<DealIter, DealError> {
    DealIter::new(n, kind, 0, 1)
}

/// The share of [`enumerate_deals`] whose subset index is `part` mod `parts`.
/// The union over `part in 0..parts` is the full stream.
pub fn enumerate_deals_partition(
    n: usize,
    kind: DealKind,
    part: usize,
    parts: usize,
) -> Result<DealIter, DealError> {
    assert!(parts > 0 && part < parts);
    DealIter::new(n, kind, part, parts)
}

fn lex_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|mask| (1..=n).filter(|d| mask >> (d - 1) & 1 == 1).collect())
        .collect();
    subsets.sort();
    subsets
}

pub struct DealIter {
    n: usize,
    kind: DealKind,
    subsets: Vec<Vec<usize>>,
    subset: usize,
    stride: usize,
    digits: Vec<usize>,
}

impl DealIter {
    fn new(n: usize, kind: DealKind, start: usize, stride: usize) -> Result<Self, DealError> {
        if n > MAX_DEAL_ENUM_N {
            return Err(DealError::BoundExceeded(n));
        }
        let subsets = match kind {
            DealKind::Franel => vec![(1..=n).collect()],
            _ => lex_subsets(n),
        };
        let digits = subsets.get(start).map_or(Vec::new(), |s| vec![0; s.len()]);
        Ok(DealIter {
            n,
            kind,
            subsets,
            subset: start,
            stride,
            digits,
        })
    }

    fn current(&self) -> Deal {
        let mut slots = vec![None; self.n];
        for (&d, &t) in self.subsets[self.subset].iter().zip(&self.digits) {
            slots[d - 1] = Some(AVOIDING_TRIPLES[t]);
        }
        Deal { slots }
    }

    fn advance(&mut self) {
        for digit in self.digits.iter_mut().rev() {
            *digit += 1;
            if *digit < AVOIDING_TRIPLES.len() {
                return;
            }
            *digit = 0;
        }
        self.subset += self.stride;
        if let Some(s) = self.subsets.get(self.subset) {
            self.digits = vec![0; s.len()];
        }
    }
}

impl Iterator for DealIter {
    type Item = Deal;

    fn next(&mut self) -> Option<Deal> {
        while self.subset < self.subsets.len() {
            let deal = self.current();
            self.advance();
            if deal.validate(self.kind).is_ok() {
                return Some(deal);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::*;

    fn card(s: &str) -> Card {
        s.parse().unwrap()
    }

    fn cards(list: &[&str]) -> Vec<Card> {
        list.iter().map(|s| card(s)).collect()
    }

    pub(crate) fn worked_example() -> Deal {
        Deal::from_hands(
            5,
            &[1, 2, 4, 5],
            &cards(&["2G", "2B", "4B", "5G"]),
            &cards(&["1B", "2R", "4R", "5B"]),
            &cards(&["1G", "1R", "4G", "5R"]),
        )
        .unwrap()
    }

    #[test]
    fn empty_deal_is_valid_for_every_kind_but_franel() {
        let d = Deal::empty(3);
        assert_eq!(d.validate(DealKind::Barrucand), Ok(()));
        assert_eq!(d.validate(DealKind::Hanna), Ok(()));
        assert_eq!(d.validate(DealKind::Franel), Err(Violation::NotAllDealt));
        assert_eq!(Deal::empty(0).validate(DealKind::Franel), Ok(()));
    }

    #[test]
    fn single_franel_deal() {
        let d = Deal::from_hands(1, &[1], &[card("1G")], &[card("1B")], &[card("1R")]).unwrap();
        assert_eq!(validate_deal(&d, DealKind::Franel), Ok(()));
    }

    #[test]
    fn own_color_card_is_rejected() {
        let d = Deal::from_hands(1, &[1], &[card("1B")], &[card("1G")], &[card("1R")]).unwrap();
        let err = d.validate(DealKind::Barrucand).unwrap_err();
        assert_eq!(err.name(), "color-avoidance");
        assert_eq!(err, Violation::ColorAvoidance(card("1G")));
    }

    #[test]
    fn hanna_allows_uneven_green_and_blue() {
        // red 1G, green 1B 1R, blue nothing
        let d = Deal::from_hands(1, &[1], &[card("1G")], &cards(&["1R", "1B"]), &[]).unwrap();
        assert_eq!(d.validate(DealKind::Hanna), Ok(()));
        assert_eq!(
            d.validate(DealKind::Barrucand).unwrap_err().name(),
            "green-hand-size"
        );
        assert_eq!(d.most_specific_kind(), Some(DealKind::Hanna));
        assert_eq!(d.distinct_denoms_red(), 1);
    }

    #[test]
    fn red_hand_size_enforced_for_hanna() {
        let d = Deal::from_hands(1, &[1], &[], &cards(&["1R", "1B"]), &[card("1G")]).unwrap();
        assert_eq!(
            d.validate(DealKind::Hanna).unwrap_err().name(),
            "red-hand-size"
        );
    }

    #[test]
    fn from_hands_rejects_bad_inputs() {
        assert_eq!(
            Deal::from_hands(1, &[1], &[card("1G")], &[card("1B")], &[]),
            Err(DealError::Missing(card("1R")))
        );
        assert_eq!(
            Deal::from_hands(2, &[1], &[card("2G")], &[], &[]),
            Err(DealError::NotDealt(card("2G")))
        );
        assert_eq!(
            Deal::from_hands(1, &[1], &[card("1G")], &[card("1G")], &[]),
            Err(DealError::Duplicate(card("1G")))
        );
        assert!(matches!(
            Deal::from_hands(1, &[2], &[], &[], &[]),
            Err(DealError::DenomOutOfRange { .. })
        ));
        assert!("1X".parse::<Card>().is_err());
        assert!("G".parse::<Card>().is_err());
    }

    #[test]
    fn statistics_on_worked_example() {
        let d = worked_example();
        assert_eq!(d.validate(DealKind::Barrucand), Ok(()));
        assert_eq!(d.cards_in_red(), 4);
        assert_eq!(d.distinct_denoms_red(), 3);
        assert_eq!(d.green_in_red(), 2);
        assert_eq!(d.red_in_blue(), 2);
        assert_eq!(d.blue_in_green(), 2);
    }

    #[test]
    fn statistics_on_empty_deal() {
        let d = Deal::empty(4);
        assert_eq!(d.cards_in_red(), 0);
        assert_eq!(d.distinct_denoms_red(), 0);
        assert_eq!(d.green_in_red(), 0);
        assert_eq!(d.red_in_blue(), 0);
    }

    #[test]
    fn franel_one_deals() {
        let deals: Vec<_> = enumerate_deals(1, DealKind::Franel).unwrap().collect();
        assert_eq!(deals.len(), 2);
        for d in &deals {
            assert_eq!(d.cards_in_red(), 1);
            let red = d.hand(Red);
            if red == [card("1B")] {
                assert_eq!(d.green_in_red(), 0);
            } else {
                assert_eq!(red, [card("1G")]);
                assert_eq!(d.red_in_blue(), 1);
            }
        }
    }

    #[test]
    fn small_enumeration_counts() {
        assert_eq!(enumerate_deals(1, DealKind::Barrucand).unwrap().count(), 3);
        assert_eq!(enumerate_deals(1, DealKind::Hanna).unwrap().count(), 5);
        assert_eq!(enumerate_deals(2, DealKind::Franel).unwrap().count(), 10);
        assert_eq!(enumerate_deals(0, DealKind::Hanna).unwrap().count(), 1);
    }

    #[test]
    fn enumeration_order_starts_with_empty_deal() {
        let mut it = enumerate_deals(2, DealKind::Barrucand).unwrap();
        assert_eq!(it.next(), Some(Deal::empty(2)));
        // (G, R, R) and (G, R, G) give unequal hands
        let second = it.next().unwrap();
        assert_eq!(second.dealt(), vec![1]);
        assert_eq!(second.holders(1), Some(Holders::new(Green, Blue, Red)));
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            enumerate_deals(MAX_DEAL_ENUM_N + 1, DealKind::Hanna),
            Err(DealError::BoundExceeded(_))
        ));
    }

    #[test]
    fn partitions_cover_the_stream() {
        let full: Vec<_> = enumerate_deals(3, DealKind::Hanna).unwrap().collect();
        let mut merged: Vec<_> = (0..3)
            .flat_map(|p| enumerate_deals_partition(3, DealKind::Hanna, p, 3).unwrap())
            .collect();
        merged.sort();
        let mut sorted = full.clone();
        sorted.sort();
        assert_eq!(merged, sorted);
    }

    #[test]
    fn json_shape() {
        let j = worked_example().to_json(DealKind::Barrucand);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(
            text,
            r#"{"n":5,"kind":"barrucand","dealt":[1,2,4,5],"hands":{"red":["2G","2B","4B","5G"],"green":["1B","2R","4R","5B"],"blue":["1R","1G","4G","5R"]}}"#
        );
        let back = Deal::try_from(&j).unwrap();
        assert_eq!(back, worked_example());
    }

    #[test]
    fn json_kind_is_validated() {
        let j = worked_example().to_json(DealKind::Franel);
        assert_eq!(
            Deal::try_from(&j),
            Err(DealError::Invalid(Violation::NotAllDealt))
        );
    }
}
