//! Alphabets and alphabet permutations.
//!
//! Texts are handled internally as strings of symbol *ranks* rather than raw
//! bytes: an [`Alphabet`] maps each byte to its rank in the standard
//! (ascending byte) order, and every permutation, context and pattern is a
//! rank string. This keeps ordering schemes portable across input encodings.

use std::cmp::Ordering;

use crate::Error;

/// Symbol: a rank in `[0, sigma)` of an [`Alphabet`].
pub type Sym = u8;

/// A finite ordered alphabet of at most 256 byte values.
///
/// `symbols` lists the byte values in strictly increasing order; rank `i`
/// refers to `symbols[i]`. The standard order `c_1 < c_2 < ... < c_sigma`
/// is exactly the rank order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u8>,
    code: [u8; 256],
    present: [bool; 256],
}

impl Alphabet {
    /// Build an alphabet from byte values given in strictly increasing order.
    pub fn new(symbols: &[u8]) -> Result<Self, Error> {
        if symbols.is_empty() || symbols.len() > 256 {
            return Err(Error::InvalidSymbol {
                sym: 0,
                sigma: symbols.len(),
            });
        }
        let mut code = [0u8; 256];
        let mut present = [false; 256];
        let mut prev: Option<u8> = None;
        for (i, &b) in symbols.iter().enumerate() {
            if let Some(p) = prev {
                if b <= p {
                    return Err(Error::InvalidByte(b));
                }
            }
            prev = Some(b);
            code[b as usize] = i as u8;
            present[b as usize] = true;
        }
        Ok(Alphabet {
            symbols: symbols.to_vec(),
            code,
            present,
        })
    }

    /// Alphabet of the distinct bytes occurring in `text`.
    pub fn from_text(text: &[u8]) -> Result<Self, Error> {
        let mut present = [false; 256];
        for &b in text {
            present[b as usize] = true;
        }
        let symbols: Vec<u8> = (0u16..256)
            .map(|b| b as u8)
            .filter(|&b| present[b as usize])
            .collect();
        Alphabet::new(&symbols)
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    /// Rank of a byte, or an error if the byte is not in the alphabet.
    pub fn code(&self, byte: u8) -> Result<Sym, Error> {
        if self.present[byte as usize] {
            Ok(self.code[byte as usize])
        } else {
            Err(Error::InvalidByte(byte))
        }
    }

    /// Byte value of rank `sym`.
    pub fn byte(&self, sym: Sym) -> u8 {
        self.symbols[sym as usize]
    }

    pub fn contains_byte(&self, byte: u8) -> bool {
        self.present[byte as usize]
    }

    /// Encode a byte string as a rank string.
    pub fn encode(&self, bytes: &[u8]) -> Result<Vec<Sym>, Error> {
        bytes.iter().map(|&b| self.code(b)).collect()
    }

    /// Decode a rank string back to bytes.
    pub fn decode(&self, syms: &[Sym]) -> Vec<u8> {
        syms.iter().map(|&s| self.byte(s)).collect()
    }

    pub(crate) fn check_sym(&self, sym: Sym) -> Result<(), Error> {
        if (sym as usize) < self.size() {
            Ok(())
        } else {
            Err(Error::InvalidSymbol {
                sym: sym as u32,
                sigma: self.size(),
            })
        }
    }

    pub(crate) fn check_syms(&self, syms: &[Sym]) -> Result<(), Error> {
        syms.iter().try_for_each(|&s| self.check_sym(s))
    }
}

/// A total order on the symbols of an alphabet.
///
/// `order[i]` is the symbol in sorted position `i`; `pos[sym]` inverts it.
/// The inverse is precomputed so [`Permutation::compare`] is a pair of array
/// loads, which matters in the rotation-sorting oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    order: Vec<Sym>,
    pos: Vec<u8>,
}

impl Permutation {
    /// Build from the symbols listed smallest-first. Must be a bijection on
    /// `[0, sigma)`.
    pub fn from_order(order: &[Sym]) -> Result<Self, Error> {
        let sigma = order.len();
        if sigma == 0 || sigma > 256 {
            return Err(Error::InvalidSymbol { sym: 0, sigma });
        }
        let mut pos = vec![u8::MAX; sigma];
        for (i, &s) in order.iter().enumerate() {
            if (s as usize) >= sigma || pos[s as usize] != u8::MAX {
                return Err(Error::InvalidSymbol {
                    sym: s as u32,
                    sigma,
                });
            }
            pos[s as usize] = i as u8;
        }
        Ok(Permutation {
            order: order.to_vec(),
            pos,
        })
    }

    /// The standard order: rank `i` in position `i`.
    pub fn identity(sigma: usize) -> Self {
        Permutation {
            order: (0..sigma).map(|i| i as Sym).collect(),
            pos: (0..sigma).map(|i| i as u8).collect(),
        }
    }

    /// The reversal: `r(a) < r(b)` exactly when `self(a) > self(b)`.
    pub fn reverse(&self) -> Self {
        let order: Vec<Sym> = self.order.iter().rev().copied().collect();
        let sigma = self.len();
        let mut pos = vec![0u8; sigma];
        for (i, &s) in order.iter().enumerate() {
            pos[s as usize] = i as u8;
        }
        Permutation { order, pos }
    }

    /// Number of symbols.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Sorted position of a symbol under this order.
    #[inline]
    pub fn position(&self, sym: Sym) -> usize {
        self.pos[sym as usize] as usize
    }

    /// Symbol occupying sorted position `i`.
    #[inline]
    pub fn symbol_at(&self, i: usize) -> Sym {
        self.order[i]
    }

    /// Symbols smallest-first.
    pub fn order(&self) -> &[Sym] {
        &self.order
    }

    /// Compare two symbols under this order.
    ///
    /// Both symbols must be ranks of the permutation's alphabet.
    #[inline]
    pub fn compare(&self, a: Sym, b: Sym) -> Ordering {
        self.pos[a as usize].cmp(&self.pos[b as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> Alphabet {
        Alphabet::new(b"abc").unwrap()
    }

    /// Permutation (b,a,c) over alphabet {a,b,c} in rank space.
    fn bac_perm() -> Permutation {
        Permutation::from_order(&[1, 0, 2]).unwrap()
    }

    #[test]
    fn alphabet_round_trips_bytes() {
        let a = abc();
        assert_eq!(a.size(), 3);
        assert_eq!(a.encode(b"cab").unwrap(), vec![2, 0, 1]);
        assert_eq!(a.decode(&[2, 0, 1]), b"cab");
        assert_eq!(a.code(b'z'), Err(Error::InvalidByte(b'z')));
    }

    #[test]
    fn alphabet_rejects_unsorted_or_duplicate() {
        assert!(Alphabet::new(b"ba").is_err());
        assert!(Alphabet::new(b"aab").is_err());
        assert!(Alphabet::new(b"").is_err());
    }

    #[test]
    fn from_text_collects_distinct_sorted() {
        let a = Alphabet::from_text(b"banana").unwrap();
        assert_eq!(a.decode(&[0, 1, 2]), b"abn");
    }

    #[test]
    fn reverse_matches_worked_example() {
        // pi = (b,a,c) reverses to (c,a,b)
        let p = bac_perm();
        let r = p.reverse();
        assert_eq!(r.order(), &[2, 0, 1]);
    }

    #[test]
    fn reverse_single_symbol_is_identity() {
        let p = Permutation::identity(1);
        assert_eq!(p.reverse(), p);
    }

    #[test]
    fn compare_examples() {
        let p = bac_perm(); // (b,a,c)
        assert_eq!(p.compare(1, 0), Ordering::Less); // b < a
        assert_eq!(p.compare(0, 0), Ordering::Equal);
        let r = p.reverse(); // (c,a,b)
        assert_eq!(r.compare(2, 1), Ordering::Less); // c < b
    }

    proptest! {
        #[test]
        fn reverse_is_involution(order in proptest::sample::subsequence((0u8..8).collect::<Vec<_>>(), 1..8)
            .prop_map(|mut v| { v.sort_unstable(); v })
            .prop_shuffle()) {
            // Renumber so the symbols form [0, sigma)
            let mut sorted = order.clone();
            sorted.sort_unstable();
            let ranks: Vec<Sym> = order.iter().map(|s| sorted.iter().position(|t| t == s).unwrap() as Sym).collect();
            let p = Permutation::from_order(&ranks).unwrap();
            prop_assert_eq!(p.reverse().reverse(), p);
        }

        #[test]
        fn compare_flips_under_reverse(seed in 0u64..1000) {
            use rand::prelude::*;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let sigma = rng.gen_range(1..=8usize);
            let mut ranks: Vec<Sym> = (0..sigma as u8).collect();
            ranks.shuffle(&mut rng);
            let p = Permutation::from_order(&ranks).unwrap();
            let r = p.reverse();
            for a in 0..sigma as u8 {
                for b in 0..sigma as u8 {
                    if a != b {
                        prop_assert_eq!(p.compare(a, b), r.compare(b, a));
                    }
                }
            }
        }
    }
}
