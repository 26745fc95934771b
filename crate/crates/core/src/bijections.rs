//! Deal ↔ matrix and matrix ↔ path correspondences.
//!
//! Deal to matrix, per denomination `d` (column `d`):
//!
//! | red holds of `d`     | red card of `d` with blue | red card with green |
//! |----------------------|---------------------------|---------------------|
//! | nothing (`d` undealt)| `(1/1)`                   | `(1/1)`             |
//! | nothing              | `(1/3)`                   | `(1/2)`             |
//! | green and blue cards | `(2/1)`                   | `(3/1)`             |
//! | green card only      | `(2/2)`                   | `(3/2)`             |
//! | blue card only       | `(2/3)`                   | `(3/3)`             |
//!
//! Matrix to deal reads each player's hand from [`HAND_TABLE`], written out
//! independently of the forward map; the two are checked to be inverse.
//!
//! Matrix column to path step: `(1/1) F1`, `(1/2) U1`, `(1/3) U2`, `(2/1) D1`,
//! `(2/2) F2`, `(2/3) F3`, `(3/1) D2`, `(3/2) F4`, `(3/3) F5`.

use thiserror::Error;

use crate::deals::{Color, Deal, DealKind, Holders, Violation};
use crate::matrices::{MatrixError, TwoRowMatrix};
use crate::paths::{HannaPath, PathError, Step, StepKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("not a Hanna deal: {0}")]
    InvalidDeal(Violation),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("column {col:?} at position {pos} does not determine every card")]
    IncompleteColumn { pos: usize, col: (u8, u8) },
}

fn column_of(h: Holders) -> (u8, u8) {
    use Color::*;
    let red_with_blue = h.of(Red) == Blue;
    let top = |with_blue: u8, with_green: u8| if red_with_blue { with_blue } else { with_green };
    let red_has_green = h.of(Green) == Red;
    let red_has_blue = h.of(Blue) == Red;
    match (red_has_green, red_has_blue) {
        (false, false) => (1, top(3, 2)),
        (true, true) => (top(2, 3), 1),
        (true, false) => (top(2, 3), 2),
        (false, true) => (top(2, 3), 3),
    }
}

/// Maps a Hanna deal (Barrucand and Franel deals included) to its matrix.
pub fn deal_to_matrix(d: &Deal) -> Result<TwoRowMatrix, BijectionError> {
    d.validate(DealKind::Hanna)
        .map_err(BijectionError::InvalidDeal)?;
    let cols = d.slots().iter().map(|slot| slot.map_or((1, 1), column_of));
    Ok(TwoRowMatrix::from_columns(cols)?)
}

/// A player, the colors of the cards of one denomination in that hand, and
/// the two columns producing exactly that holding.
pub type HandRow = (Color, &'static [Color], [(u8, u8); 2]);

/// For each player and set of card colors, the columns at which that player
/// holds exactly those cards.
pub const HAND_TABLE: [HandRow; 9] = {
    use Color::*;
    [
        (Red, &[Green, Blue], [(2, 1), (3, 1)]),
        (Red, &[Green], [(2, 2), (3, 2)]),
        (Red, &[Blue], [(2, 3), (3, 3)]),
        (Green, &[Blue, Red], [(1, 2), (3, 2)]),
        (Green, &[Blue], [(1, 3), (2, 2)]),
        (Green, &[Red], [(3, 1), (3, 3)]),
        (Blue, &[Red, Green], [(1, 3), (2, 3)]),
        (Blue, &[Red], [(2, 1), (2, 2)]),
        (Blue, &[Green], [(1, 2), (3, 3)]),
    ]
};

/// Inverse of [`deal_to_matrix`] on Hanna matrices.
pub fn matrix_to_deal(m: &TwoRowMatrix) -> Result<Deal, BijectionError> {
    m.row_ones()?;
    let slots = m
        .columns()
        .enumerate()
        .map(|(pos, col)| {
            if col == (1, 1) {
                return Ok(None);
            }
            let mut holder: [Option<Color>; 3] = [None; 3];
            for (player, cards, cols) in HAND_TABLE {
                if cols.contains(&col) {
                    for &c in cards {
                        holder[c as usize] = Some(player);
                    }
                }
            }
            match holder {
                [Some(r), Some(g), Some(b)] => Ok(Some(Holders::new(r, g, b))),
                _ => Err(BijectionError::IncompleteColumn { pos, col }),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Deal::from_slots(slots))
}

/// Path step for each matrix column, indexed by `(top - 1) * 3 + (bottom - 1)`.
const COLUMN_STEPS: [(StepKind, u8); 9] = {
    use StepKind::*;
    [
        (Flat, 1),
        (Up, 1),
        (Up, 2),
        (Down, 1),
        (Flat, 2),
        (Flat, 3),
        (Down, 2),
        (Flat, 4),
        (Flat, 5),
    ]
};

/// Replaces each column of a Hanna matrix by its labeled step.
pub fn matrix_to_path(m: &TwoRowMatrix) -> Result<HannaPath, BijectionError> {
    m.row_ones()?;
    let steps = m
        .columns()
        .map(|(p, q)| {
            let (kind, label) = COLUMN_STEPS[((p - 1) * 3 + (q - 1)) as usize];
            Step::new(kind, label)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HannaPath::new(steps)?)
}

/// Replaces each step of a path by its matrix column.
pub fn path_to_matrix(p: &HannaPath) -> TwoRowMatrix {
    let cols = p.steps().iter().map(|s| {
        let idx = COLUMN_STEPS
            .iter()
            .position(|&c| c == (s.kind(), s.label()))
            .expect("every labeled step has a column");
        ((idx / 3) as u8 + 1, (idx % 3) as u8 + 1)
    });
    TwoRowMatrix::from_columns(cols).expect("columns come from the step table")
}

pub fn deal_to_path(d: &Deal) -> Result<HannaPath, BijectionError> {
    matrix_to_path(&deal_to_matrix(d)?)
}

pub fn path_to_deal(p: &HannaPath) -> Result<Deal, BijectionError> {
    matrix_to_deal(&path_to_matrix(p))
}
