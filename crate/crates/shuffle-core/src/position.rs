use crate::{Result, ShuffleError};

/// Largest supported hypercube dimension. A deck is an array of `2^d`
/// entries, so this is a memory bound, not an exactness bound.
pub const MAX_DIMENSION: u32 = 24;

/// A vertex of the d-dimensional hypercube.
///
/// Coordinate `x_1` is the most significant bit of the index, so the cyclic
/// shift `(x_1, .., x_d) -> (x_2, .., x_d, x_1)` is a plain rotate-left of
/// the index and direction `j` toggles bit `d - j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    index: u32,
    d: u32,
}

impl Position {
    pub fn new(index: u32, d: u32) -> Result<Self> {
        check_dimension(d)?;
        if index >= (1u32 << d) {
            return Err(ShuffleError::InvalidPosition { index, d });
        }
        Ok(Position { index, d })
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn dimension(&self) -> u32 {
        self.d
    }

    /// Coordinate `x_i` for `i` in `1..=d`; `x_1` is the most significant bit.
    pub fn coordinate(&self, i: u32) -> Result<u8> {
        if i < 1 || i > self.d {
            return Err(ShuffleError::InvalidDirection { j: i, d: self.d });
        }
        Ok(((self.index >> (self.d - i)) & 1) as u8)
    }

    /// Neighbor across the direction-`j` edge.
    pub fn neighbor(&self, j: u32) -> Result<Self> {
        let mask = direction_mask(self.d, j)?;
        Ok(Position {
            index: self.index ^ mask,
            d: self.d,
        })
    }

    /// Image under the cyclic left bit shift of the classic shuffle.
    pub fn rotate_left(&self) -> Self {
        Position {
            index: rotate_left(self.index, self.d),
            d: self.d,
        }
    }
}

pub(crate) fn check_dimension(d: u32) -> Result<()> {
    if d == 0 || d > MAX_DIMENSION {
        return Err(ShuffleError::InvalidDimension {
            d,
            max: MAX_DIMENSION,
        });
    }
    Ok(())
}

/// Bit mask toggled by direction `j` (`j = 1` is the most significant
/// coordinate).
pub fn direction_mask(d: u32, j: u32) -> Result<u32> {
    check_dimension(d)?;
    if j < 1 || j > d {
        return Err(ShuffleError::InvalidDirection { j, d });
    }
    Ok(1u32 << (d - j))
}

/// Rotate a position index left by one within `d` bits: `(x_1..x_d)` maps to
/// `(x_2..x_d, x_1)`.
pub fn rotate_left(index: u32, d: u32) -> u32 {
    if d == 1 {
        return index;
    }
    let size = 1u32 << d;
    ((index << 1) | (index >> (d - 1))) & (size - 1)
}

/// Lower endpoints of all direction-`j` edges in ascending order.
///
/// This order is the canonical coin-consumption order for a `K_j` step;
/// every module that walks edges must use it so traces replay exactly.
pub fn kj_edge_lowers(d: u32, j: u32) -> Result<impl Iterator<Item = u32>> {
    let mask = direction_mask(d, j)?;
    let size = 1u32 << d;
    Ok((0..size).filter(move |i| i & mask == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_follow_msb_convention() {
        // index 4 = 0b100 at d=3 is (x1,x2,x3) = (1,0,0)
        let p = Position::new(4, 3).unwrap();
        assert_eq!(p.coordinate(1).unwrap(), 1);
        assert_eq!(p.coordinate(2).unwrap(), 0);
        assert_eq!(p.coordinate(3).unwrap(), 0);
    }

    #[test]
    fn shift_moves_100_to_001() {
        let p = Position::new(4, 3).unwrap();
        assert_eq!(p.rotate_left().index(), 1);
    }

    #[test]
    fn shift_is_identity_at_d1() {
        assert_eq!(rotate_left(0, 1), 0);
        assert_eq!(rotate_left(1, 1), 1);
    }

    #[test]
    fn edge_lowers_ascend_and_cover() {
        let lowers: Vec<u32> = kj_edge_lowers(3, 1).unwrap().collect();
        assert_eq!(lowers, vec![0, 1, 2, 3]);
        let lowers: Vec<u32> = kj_edge_lowers(3, 3).unwrap().collect();
        assert_eq!(lowers, vec![0, 2, 4, 6]);
    }

    #[test]
    fn invalid_direction_rejected() {
        assert!(direction_mask(3, 0).is_err());
        assert!(direction_mask(3, 4).is_err());
    }
}
