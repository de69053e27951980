//! Sign words: vertices of a hypercube packed into one machine word.
//!
//! A vertex of the hypercube `Q_n` is a word of `n` signs. Coordinate `e`
//! holds the side of the halfspace split `E_e`: bit set means `+`, bit clear
//! means `-`. Widths up to 32 are supported, which covers every catalog this
//! crate builds and everything the published counts refer to.

use crate::error::{Error, Result};
use std::fmt;

/// Maximum number of coordinates a [`SignWord`] can hold.
pub const MAX_WIDTH: usize = 32;

/// A vertex of `Q_n` for some `n <= 32`, one bit per coordinate.
///
/// The width is not stored here; it lives on the containing
/// [`ToGraph`](crate::graph::ToGraph). Operations that depend on the width
/// take it as an argument. Bits at positions `>= width` must be zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SignWord(pub u32);

impl SignWord {
    /// The all-minus word.
    pub const ZERO: SignWord = SignWord(0);

    /// Sign of coordinate `e`: `true` for `+`.
    #[inline]
    pub fn bit(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    /// The word with coordinate `e` flipped.
    #[inline]
    pub fn flip(self, e: usize) -> SignWord {
        SignWord(self.0 ^ (1 << e))
    }

    /// The word with every coordinate below `width` flipped.
    #[inline]
    pub fn antipode(self, width: usize) -> SignWord {
        SignWord(self.0 ^ mask(width))
    }

    /// Number of `+` coordinates.
    #[inline]
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// Hamming distance to `other`.
    #[inline]
    pub fn hamming(self, other: SignWord) -> u32 {
        (self.0 ^ other.0).count_ones()
    }

    /// Render as a `+-` string of length `width`, coordinate 0 leftmost.
    pub fn render(self, width: usize) -> String {
        (0..width)
            .map(|e| if self.bit(e) { '+' } else { '-' })
            .collect()
    }

    /// Parse a `+-` string, coordinate 0 leftmost.
    pub fn parse(s: &str) -> Result<(SignWord, usize)> {
        let mut bits = 0u32;
        let mut width = 0usize;
        for (i, c) in s.chars().enumerate() {
            if i >= MAX_WIDTH {
                return Err(Error::CapacityExceeded {
                    width: s.chars().count(),
                    max: MAX_WIDTH,
                });
            }
            match c {
                '+' => bits |= 1 << i,
                '-' => {}
                other => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("unexpected character {other:?} in sign word"),
                    })
                }
            }
            width = i + 1;
        }
        if width == 0 {
            return Err(Error::Parse {
                line: 0,
                msg: "empty sign word".into(),
            });
        }
        Ok((SignWord(bits), width))
    }
}

impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:b}", self.0)
    }
}

/// Bit mask selecting the low `width` coordinates.
#[inline]
pub fn mask(width: usize) -> u32 {
    if width >= 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    }
}

/// Validate a requested width.
pub fn check_width(width: usize) -> Result<()> {
    if width > MAX_WIDTH {
        Err(Error::CapacityExceeded {
            width,
            max: MAX_WIDTH,
        })
    } else {
        Ok(())
    }
}

/// Iterate the coordinates present in a coordinate mask, ascending.
#[inline]
pub fn coords_of(m: u32) -> impl Iterator<Item = usize> {
    let mut rest = m;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(e)
        }
    })
}

/// Compress the bits of `w` selected by `m` into the low bits of the result,
/// preserving order. Portable pext.
#[inline]
pub fn extract_bits(w: u32, m: u32) -> u32 {
    let mut out = 0u32;
    let mut pos = 0u32;
    let mut rest = m;
    while rest != 0 {
        let e = rest.trailing_zeros();
        out |= (w >> e & 1) << pos;
        pos += 1;
        rest &= rest - 1;
    }
    out
}

/// Inverse of [`extract_bits`]: scatter the low bits of `w` into the
/// positions selected by `m`.
#[inline]
pub fn deposit_bits(w: u32, m: u32) -> u32 {
    let mut out = 0u32;
    let mut pos = 0u32;
    let mut rest = m;
    while rest != 0 {
        let e = rest.trailing_zeros();
        out |= (w >> pos & 1) << e;
        pos += 1;
        rest &= rest - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antipode_is_an_involution() {
        for n in 1..=8 {
            for v in 0..(1u32 << n) {
                let w = SignWord(v);
                assert_eq!(w.antipode(n).antipode(n), w);
            }
        }
    }

    #[test]
    fn render_parse_round_trip() {
        let (w, n) = SignWord::parse("+-+").unwrap();
        assert_eq!(n, 3);
        assert!(w.bit(0) && !w.bit(1) && w.bit(2));
        assert_eq!(w.render(3), "+-+");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(SignWord::parse("+0-").is_err());
        assert!(SignWord::parse("").is_err());
    }

    #[test]
    fn extract_and_deposit_are_inverse() {
        let m = 0b1011010;
        for w in 0..128u32 {
            let packed = extract_bits(w, m);
            assert_eq!(deposit_bits(packed, m), w & m);
        }
    }

    #[test]
    fn width_guard() {
        assert!(check_width(32).is_ok());
        assert!(matches!(
            check_width(33),
            Err(Error::CapacityExceeded { .. })
        ));
    }
}
