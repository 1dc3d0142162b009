//! Basis blades of R_m addressed by bitmask, and the sign rule of their product.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest supported number of generators.
pub const MAX_DIM: usize = 12;

/// Largest dimension whose full sign table is precomputed.
const TABLE_DIM: usize = 8;

/// Number of generators `m` of the real Clifford algebra R_m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    m: usize,
}

impl Signature {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_DIM {
            return Err(Error::UnsupportedDimension(m));
        }
        Ok(Signature { m })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Algebra dimension `2^m`.
    #[inline]
    pub fn dim(&self) -> usize {
        1 << self.m
    }

    /// All blades ordered by (grade, mask); the canonical text and file order.
    pub fn blades(&self) -> Vec<BladeIndex> {
        blade_order(self.m)
    }
}

/// Blade `e_A`; bit `j` set means `e_{j+1}` is a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BladeIndex(pub u32);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);

    /// Generator `e_j`, `j` counted from 1.
    pub fn generator(j: usize) -> Self {
        debug_assert!(j >= 1 && j <= MAX_DIM);
        BladeIndex(1 << (j - 1))
    }

    /// Blade `e_{i1 i2 ... ik}` from 1-based indices; repeated indices cancel
    /// pairwise, which is why the sign is returned alongside.
    pub fn from_indices(indices: &[usize]) -> (bool, Self) {
        let mut mask = 0u32;
        let mut negative = false;
        for &j in indices {
            let g = 1u32 << (j - 1);
            negative ^= product_is_negative(mask, g);
            mask ^= g;
        }
        (negative, BladeIndex(mask))
    }

    #[inline]
    pub fn mask(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    /// 1-based generator indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|j| self.0 >> j & 1 == 1).map(|j| j + 1).collect()
    }

    /// Sign of `e_A e_B = ± e_{A xor B}`.
    #[inline]
    pub fn product_sign(self, other: BladeIndex) -> f64 {
        if product_is_negative(self.0, other.0) {
            -1.0
        } else {
            1.0
        }
    }

    /// `true` when the Clifford conjugate `(-1)^{g(g+1)/2}` flips the sign.
    #[inline]
    pub fn conjugate_flips(self) -> bool {
        let g = self.grade();
        (g * (g + 1) / 2) & 1 == 1
    }

    /// `true` when reversion `(-1)^{g(g-1)/2}` flips the sign.
    #[inline]
    pub fn reverse_flips(self) -> bool {
        let g = self.grade();
        (g * g.saturating_sub(1) / 2) & 1 == 1
    }

    /// Name used in the text form: `e1`, `e23`, ... (`e1_10` style when m >= 10).
    pub fn name(self, m: usize) -> String {
        if self.0 == 0 {
            return String::new();
        }
        let idx = self.indices();
        let parts: Vec<String> = idx.iter().map(|j| j.to_string()).collect();
        if m >= 10 {
            format!("e{}", parts.join("_"))
        } else {
            format!("e{}", parts.concat())
        }
    }

    /// Inverse of [`BladeIndex::name`]; the empty name is the scalar blade.
    pub fn parse_name(s: &str, m: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(BladeIndex::SCALAR);
        }
        let body = s
            .strip_prefix('e')
            .ok_or_else(|| Error::Parse(format!("blade name '{s}' must start with 'e'")))?;
        let idx: Vec<usize> = if m >= 10 {
            body.split('_')
                .map(|p| p.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad blade name '{s}'")))?
        } else {
            body.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse(format!("bad blade name '{s}'")))?
        };
        if idx.is_empty() || idx.iter().any(|&j| j == 0 || j > m) || idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!("bad blade name '{s}' for m = {m}")));
        }
        Ok(BladeIndex(idx.iter().fold(0u32, |acc, j| acc | 1 << (j - 1))))
    }
}

/// Sign rule for e_A e_B with e_j^2 = -1: one flip per transposition needed to
/// sort the concatenated factors, plus one per repeated generator.
#[inline]
pub fn product_is_negative(a: u32, b: u32) -> bool {
    let mut swaps = 0u32;
    let mut x = a >> 1;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    swaps += (a & b).count_ones();
    swaps & 1 == 1
}

/// Blades of R_m ordered by (grade, mask).
pub fn blade_order(m: usize) -> Vec<BladeIndex> {
    let mut all: Vec<BladeIndex> = (0..1u32 << m).map(BladeIndex).collect();
    all.sort_by_key(|b| (b.grade(), b.0));
    all
}

/// Precomputed `2^m x 2^m` sign table of the geometric product.
#[derive(Debug)]
pub struct ProductTable {
    m: usize,
    signs: Option<Vec<i8>>,
}

impl ProductTable {
    /// Shared table for `m`; dense for `m <= 8`, computed on demand above that.
    pub fn for_dim(m: usize) -> &'static ProductTable {
        static TABLES: [OnceLock<ProductTable>; MAX_DIM + 1] = [const { OnceLock::new() }; MAX_DIM + 1];
        TABLES[m].get_or_init(|| ProductTable::build(m))
    }

    fn build(m: usize) -> Self {
        if m > TABLE_DIM {
            return ProductTable { m, signs: None };
        }
        let n = 1usize << m;
        let mut signs = vec![1i8; n * n];
        for a in 0..n {
            for b in 0..n {
                if product_is_negative(a as u32, b as u32) {
                    signs[a * n + b] = -1;
                }
            }
        }
        ProductTable { m, signs: Some(signs) }
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn is_negative(&self, a: usize, b: usize) -> bool {
        match &self.signs {
            Some(s) => s[(a << self.m) + b] < 0,
            None => product_is_negative(a as u32, b as u32),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: expand the factor lists and bubble-sort them, counting swaps and
    /// contracting equal neighbours with e_j^2 = -1.
    fn sort_oracle(a: u32, b: u32) -> (bool, u32) {
        let mut f: Vec<u32> = (0..32).filter(|j| a >> j & 1 == 1).collect();
        f.extend((0..32).filter(|j| b >> j & 1 == 1));
        let mut negative = false;
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < f.len() {
                if f[i] > f[i + 1] {
                    f.swap(i, i + 1);
                    negative = !negative;
                    changed = true;
                } else if f[i] == f[i + 1] {
                    f.drain(i..i + 2);
                    negative = !negative;
                    changed = true;
                    continue;
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
        (negative, f.iter().fold(0, |acc, j| acc | 1 << j))
    }

    #[test]
    fn sign_rule_matches_sorting_oracle() {
        for a in 0..64u32 {
            for b in 0..64u32 {
                let (neg, mask) = sort_oracle(a, b);
                assert_eq!(mask, a ^ b);
                assert_eq!(neg, product_is_negative(a, b), "a={a:b} b={b:b}");
            }
        }
    }

    #[test]
    fn e12_squares_to_minus_one() {
        assert!(product_is_negative(0b11, 0b11));
    }

    #[test]
    fn order_is_by_grade_then_mask() {
        let names: Vec<String> = blade_order(3).iter().map(|b| b.name(3)).collect();
        assert_eq!(names, ["", "e1", "e2", "e3", "e12", "e13", "e23", "e123"]);
    }

    #[test]
    fn names_round_trip() {
        for m in [3usize, 11] {
            for b in blade_order(m) {
                assert_eq!(BladeIndex::parse_name(&b.name(m), m).unwrap(), b);
            }
        }
        assert!(BladeIndex::parse_name("e21", 3).is_err());
        assert!(BladeIndex::parse_name("e4", 3).is_err());
    }

    #[test]
    fn table_agrees_with_rule() {
        let t = ProductTable::for_dim(4);
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(t.is_negative(a, b), product_is_negative(a as u32, b as u32));
            }
        }
    }

    #[test]
    fn signature_bounds() {
        assert!(Signature::new(0).is_err());
        assert!(Signature::new(13).is_err());
        assert_eq!(Signature::new(3).unwrap().dim(), 8);
    }
}
