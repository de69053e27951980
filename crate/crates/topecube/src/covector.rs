//! Sign vectors over `{+,-,0}` and their composition order.

use crate::error::{Error, Result};
use crate::word::{check_width, mask, SignWord};

/// A sign vector in `{+,-,0}^n`, stored as disjoint plus/minus bit masks.
/// Coordinates outside both masks are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoVector {
    pub plus: u32,
    pub minus: u32,
}

impl CoVector {
    /// Build from masks; `plus` and `minus` must be disjoint and fit `width`.
    pub fn new(width: usize, plus: u32, minus: u32) -> Result<CoVector> {
        check_width(width)?;
        let m = mask(width);
        if plus & minus != 0 {
            return Err(Error::Internal(format!(
                "covector has overlapping signs at mask {:#b}",
                plus & minus
            )));
        }
        if (plus | minus) & !m != 0 {
            return Err(Error::InvalidCoordinate {
                coord: (31 - ((plus | minus) & !m).leading_zeros()) as usize,
                width,
            });
        }
        Ok(CoVector { plus, minus })
    }

    /// The all-zero sign vector.
    pub const ZERO: CoVector = CoVector { plus: 0, minus: 0 };

    /// The covector fixing every coordinate to the signs of a tope.
    pub fn from_tope(w: SignWord, width: usize) -> CoVector {
        CoVector {
            plus: w.0,
            minus: !w.0 & mask(width),
        }
    }

    /// Support: coordinates with a nonzero sign.
    #[inline]
    pub fn support(&self) -> u32 {
        self.plus | self.minus
    }

    /// Zero set for a given width.
    #[inline]
    pub fn zero_mask(&self, width: usize) -> u32 {
        mask(width) & !self.support()
    }

    /// Does every coordinate carry a sign?
    #[inline]
    pub fn is_tope(&self, width: usize) -> bool {
        self.support() == mask(width)
    }

    /// Negation: swap plus and minus.
    #[inline]
    pub fn negate(&self) -> CoVector {
        CoVector {
            plus: self.minus,
            minus: self.plus,
        }
    }

    /// Composition `self ∘ other`: take this sign where nonzero, the other's
    /// sign elsewhere.
    #[inline]
    pub fn compose(&self, other: &CoVector) -> CoVector {
        let zero = !self.support();
        CoVector {
            plus: self.plus | (other.plus & zero),
            minus: self.minus | (other.minus & zero),
        }
    }

    /// Separation set: coordinates where the two vectors carry opposite signs.
    #[inline]
    pub fn separator(&self, other: &CoVector) -> u32 {
        (self.plus & other.minus) | (self.minus & other.plus)
    }

    /// Conformality order: `self ⪯ other` when `other` agrees with every
    /// nonzero sign of `self`.
    #[inline]
    pub fn leq(&self, other: &CoVector) -> bool {
        self.plus & !other.plus == 0 && self.minus & !other.minus == 0
    }

    /// Does the tope `w` agree with every fixed sign of this covector?
    #[inline]
    pub fn admits_tope(&self, w: SignWord) -> bool {
        w.0 & self.minus == 0 && !w.0 & self.plus == 0
    }

    /// Render over `+`, `-`, `0`, coordinate 0 leftmost.
    pub fn render(&self, width: usize) -> String {
        (0..width)
            .map(|e| {
                let bit = 1u32 << e;
                if self.plus & bit != 0 {
                    '+'
                } else if self.minus & bit != 0 {
                    '-'
                } else {
                    '0'
                }
            })
            .collect()
    }

    /// Parse a `+`/`-`/`0` string; returns the covector and its width.
    pub fn parse(s: &str) -> Result<(CoVector, usize)> {
        let width = s.chars().count();
        check_width(width)?;
        let mut plus = 0u32;
        let mut minus = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                '+' => plus |= 1 << i,
                '-' => minus |= 1 << i,
                '0' => {}
                other => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("invalid sign character `{other}` at position {i}"),
                    })
                }
            }
        }
        Ok((CoVector { plus, minus }, width))
    }
}

impl std::fmt::Display for CoVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let width = 32 - (self.support() | 1).leading_zeros() as usize;
        write!(f, "{}", self.render(width.max(1)))
    }
}
