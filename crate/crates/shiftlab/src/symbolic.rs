//! Finite truncations of one-sided symbol sequences, the cylinder metric,
//! and the two recodings used throughout: blockwise alphabet enlargement
//! (length-`n` blocks read as single symbols over `K^n`) and coordinatewise
//! pairing (two sequences over `K` zipped into one over `K²`).
//!
//! A [`TruncatedPoint`] is the first `horizon` symbols of a point of the
//! full shift over `{0, …, K−1}`. Every operation documents its valid index
//! range; window operations on index `i` require `i ≤ horizon − window`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A finite word over the alphabet `{0, …, alphabet−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    symbols: Vec<u32>,
    alphabet: u32,
}

impl Word {
    pub fn new(symbols: Vec<u32>, alphabet: u32) -> Result<Self> {
        check_alphabet(alphabet)?;
        if let Some(&s) = symbols.iter().find(|&&s| s >= alphabet) {
            return Err(Error::InvalidInput(format!(
                "symbol {s} out of range for alphabet {alphabet}"
            )));
        }
        Ok(Word { symbols, alphabet })
    }

    /// The empty word is a valid word.
    pub fn empty(alphabet: u32) -> Result<Self> {
        Self::new(Vec::new(), alphabet)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }
}

/// The cylinder of all points beginning with a given word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    prefix: Word,
}

impl Cylinder {
    pub fn new(prefix: Word) -> Self {
        Cylinder { prefix }
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    /// Diameter under the cylinder metric: `K^(−|prefix|)`.
    pub fn diameter(&self) -> f64 {
        inverse_power(self.prefix.alphabet, self.prefix.len())
    }

    /// Whether a truncated point lies in this cylinder. Requires the point's
    /// horizon to reach the prefix length.
    pub fn contains(&self, x: &TruncatedPoint) -> Result<bool> {
        if x.alphabet() != self.prefix.alphabet {
            return Err(Error::Mismatch("cylinder and point alphabets differ".into()));
        }
        if x.horizon() < self.prefix.len() {
            return Err(Error::InvalidInput(format!(
                "horizon {} shorter than cylinder length {}",
                x.horizon(),
                self.prefix.len()
            )));
        }
        Ok(&x.symbols()[..self.prefix.len()] == self.prefix.symbols())
    }
}

/// A length-`horizon` prefix of a point of the full shift over `K` symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedPoint {
    symbols: Vec<u32>,
    alphabet: u32,
}

fn check_alphabet(alphabet: u32) -> Result<()> {
    if alphabet < 2 {
        return Err(Error::InvalidInput(format!(
            "alphabet must have at least 2 symbols, got {alphabet}"
        )));
    }
    Ok(())
}

impl TruncatedPoint {
    pub fn new(symbols: Vec<u32>, alphabet: u32) -> Result<Self> {
        check_alphabet(alphabet)?;
        if symbols.is_empty() {
            return Err(Error::InvalidInput("horizon must be at least 1".into()));
        }
        if let Some(&s) = symbols.iter().find(|&&s| s >= alphabet) {
            return Err(Error::InvalidInput(format!(
                "symbol {s} out of range for alphabet {alphabet}"
            )));
        }
        Ok(TruncatedPoint { symbols, alphabet })
    }

    /// The constant sequence `s, s, s, …` truncated at `horizon`.
    pub fn constant(s: u32, alphabet: u32, horizon: usize) -> Result<Self> {
        Self::new(vec![s; horizon.max(1)], alphabet)
    }

    pub fn from_fn(alphabet: u32, horizon: usize, f: impl FnMut(usize) -> u32) -> Result<Self> {
        Self::new((0..horizon).map(f).collect(), alphabet)
    }

    pub fn horizon(&self) -> usize {
        self.symbols.len()
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn get(&self, i: usize) -> u32 {
        self.symbols[i]
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::Mismatch(format!(
                "alphabets differ: {} vs {}",
                self.alphabet, other.alphabet
            )));
        }
        if self.horizon() != other.horizon() {
            return Err(Error::Mismatch(format!(
                "horizons differ: {} vs {}",
                self.horizon(),
                other.horizon()
            )));
        }
        Ok(())
    }
}

/// Index of the first coordinate where `x` and `y` differ, or `None` when the
/// prefixes agree through the whole shared horizon (the truncated stand-in
/// for "never disagree"). Symmetric in its arguments.
pub fn first_disagreement(x: &TruncatedPoint, y: &TruncatedPoint) -> Result<Option<usize>> {
    x.check_compatible(y)?;
    Ok(x.symbols.iter().zip(&y.symbols).position(|(a, b)| a != b))
}

/// `K^(−d)` without intermediate overflow: large positive powers of `K`
/// overflow to infinity long before `K^(−d)` leaves the subnormal range,
/// so raise the reciprocal instead (exact for power-of-two alphabets).
pub(crate) fn inverse_power(base: u32, d: usize) -> f64 {
    (1.0 / base as f64).powi(d.min(i32::MAX as usize) as i32)
}

/// The cylinder metric `K^(−δ)` with `δ` the first disagreement index.
/// Returns `0` when the prefixes agree through the horizon; callers that must
/// distinguish "equal so far" from "equal" use [`first_disagreement`].
pub fn metric(x: &TruncatedPoint, y: &TruncatedPoint) -> Result<f64> {
    Ok(match first_disagreement(x, y)? {
        Some(d) => inverse_power(x.alphabet, d),
        None => 0.0,
    })
}

/// Drop the first `j` symbols. `j = horizon` yields the degenerate empty
/// suffix, reported as an error since a `TruncatedPoint` is nonempty.
pub fn shift(x: &TruncatedPoint, j: usize) -> Result<TruncatedPoint> {
    if j > x.horizon() {
        return Err(Error::InvalidInput(format!(
            "shift by {j} exceeds horizon {}",
            x.horizon()
        )));
    }
    if j == x.horizon() {
        return Err(Error::Degenerate(
            "shift by the full horizon leaves an empty suffix".into(),
        ));
    }
    TruncatedPoint::new(x.symbols[j..].to_vec(), x.alphabet)
}

/// Read `x` in blocks of `n` symbols, each block becoming one symbol of the
/// alphabet `K^n` (least-significant symbol first). Output length is
/// `floor(horizon / n)`; the output alphabet must fit in 32 bits.
pub fn block_recode(x: &TruncatedPoint, n: u32) -> Result<TruncatedPoint> {
    if n == 0 {
        return Err(Error::InvalidInput("block length must be positive".into()));
    }
    let big = (x.alphabet as u64).checked_pow(n).filter(|&v| v <= u32::MAX as u64);
    let big = big.ok_or_else(|| {
        Error::Capacity(format!(
            "alphabet {}^{} does not fit a 32-bit symbol",
            x.alphabet, n
        ))
    })? as u32;
    let n = n as usize;
    let blocks = x.horizon() / n;
    if blocks == 0 {
        return Err(Error::InvalidInput(format!(
            "horizon {} shorter than one block of length {n}",
            x.horizon()
        )));
    }
    let mut out = Vec::with_capacity(blocks);
    for i in 0..blocks {
        let mut v: u64 = 0;
        let mut place: u64 = 1;
        for j in 0..n {
            v += place * x.symbols[i * n + j] as u64;
            place *= x.alphabet as u64;
        }
        out.push(v as u32);
    }
    TruncatedPoint::new(out, big)
}

/// Zip two points over `K` into one point over `K²`: symbol `i` becomes
/// `x0_i + K·x1_i`. Exactly inverted by [`pair_decode`].
pub fn pair_encode(x0: &TruncatedPoint, x1: &TruncatedPoint) -> Result<TruncatedPoint> {
    x0.check_compatible(x1)?;
    let k = x0.alphabet as u64;
    let big = k * k;
    if big > u32::MAX as u64 {
        return Err(Error::Capacity(format!(
            "pair alphabet {}² does not fit a 32-bit symbol",
            x0.alphabet
        )));
    }
    let symbols = x0
        .symbols
        .iter()
        .zip(&x1.symbols)
        .map(|(&a, &b)| a + x0.alphabet * b)
        .collect();
    TruncatedPoint::new(symbols, big as u32)
}

/// Inverse of [`pair_encode`]: splits a point over a perfect-square alphabet
/// `K²` into the unique pair over `K`.
pub fn pair_decode(z: &TruncatedPoint) -> Result<(TruncatedPoint, TruncatedPoint)> {
    let k = integer_sqrt(z.alphabet);
    if k * k != z.alphabet || k < 2 {
        return Err(Error::InvalidInput(format!(
            "alphabet {} is not the square of an alphabet of size ≥ 2",
            z.alphabet
        )));
    }
    let mut a = Vec::with_capacity(z.horizon());
    let mut b = Vec::with_capacity(z.horizon());
    for &s in &z.symbols {
        a.push(s % k);
        b.push(s / k);
    }
    Ok((TruncatedPoint::new(a, k)?, TruncatedPoint::new(b, k)?))
}

fn integer_sqrt(v: u32) -> u32 {
    let mut r = (v as f64).sqrt() as u32;
    while r.saturating_mul(r) > v {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= v {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(bits: &[u32], k: u32) -> TruncatedPoint {
        TruncatedPoint::new(bits.to_vec(), k).unwrap()
    }

    #[test]
    fn disagreement_identity_and_direct() {
        let x = pt(&[0, 1, 1, 0], 2);
        assert_eq!(first_disagreement(&x, &x).unwrap(), None);
        let y = pt(&[0, 1, 1, 1], 2);
        assert_eq!(first_disagreement(&x, &y).unwrap(), Some(3));
        assert_eq!(first_disagreement(&y, &x).unwrap(), Some(3));
        let a = pt(&[2, 1, 0], 3);
        let b = pt(&[0, 1, 0], 3);
        assert_eq!(first_disagreement(&a, &b).unwrap(), Some(0));
    }

    #[test]
    fn disagreement_mismatch_errors() {
        let x = pt(&[0, 1], 2);
        let y = pt(&[0, 1], 3);
        assert!(first_disagreement(&x, &y).is_err());
        let z = pt(&[0, 1, 0], 2);
        assert!(first_disagreement(&x, &z).is_err());
    }

    #[test]
    fn metric_values() {
        let x = pt(&[0, 1, 1, 0], 2);
        assert_eq!(metric(&x, &x).unwrap(), 0.0);
        let y = pt(&[0, 1, 1, 1], 2);
        assert_eq!(metric(&x, &y).unwrap(), 0.125);
        let a = pt(&[0, 3, 2], 4);
        let b = pt(&[0, 1, 2], 4);
        assert_eq!(metric(&a, &b).unwrap(), 0.25);
    }

    #[test]
    fn shift_basic() {
        let x = pt(&[0, 1, 1, 0], 2);
        assert_eq!(shift(&x, 0).unwrap(), x);
        assert_eq!(shift(&x, 2).unwrap(), pt(&[1, 0], 2));
        assert!(matches!(shift(&x, 4), Err(Error::Degenerate(_))));
        assert!(matches!(shift(&x, 5), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn block_recode_examples() {
        let x = pt(&[0, 1, 1, 0], 2);
        let r = block_recode(&x, 2).unwrap();
        assert_eq!(r.alphabet(), 4);
        assert_eq!(r.symbols(), &[2, 1]);
        assert_eq!(block_recode(&x, 1).unwrap(), x);
        let y = pt(&[1, 1, 1, 0, 0, 0], 2);
        let r = block_recode(&y, 3).unwrap();
        assert_eq!(r.symbols(), &[7, 0]);
    }

    #[test]
    fn block_recode_capacity() {
        let x = pt(&[0, 1], 2);
        assert!(matches!(block_recode(&x, 32), Err(Error::Capacity(_))));
    }

    #[test]
    fn pair_encode_examples() {
        let x0 = pt(&[1, 0], 2);
        let x1 = pt(&[0, 1], 2);
        let z = pair_encode(&x0, &x1).unwrap();
        assert_eq!(z.alphabet(), 4);
        assert_eq!(z.symbols(), &[1, 2]);

        let zeros = pt(&[0, 0, 0], 2);
        let z = pair_encode(&zeros, &zeros).unwrap();
        assert_eq!(z.symbols(), &[0, 0, 0]);

        let a = pt(&[2], 3);
        let z = pair_encode(&a, &a).unwrap();
        assert_eq!(z.symbols(), &[8]);
    }

    #[test]
    fn pair_decode_inverts() {
        let z = pt(&[1, 2], 4);
        let (x0, x1) = pair_decode(&z).unwrap();
        assert_eq!(x0.symbols(), &[1, 0]);
        assert_eq!(x1.symbols(), &[0, 1]);

        let z = pt(&[0, 0], 4);
        let (x0, x1) = pair_decode(&z).unwrap();
        assert_eq!(x0.symbols(), &[0, 0]);
        assert_eq!(x1.symbols(), &[0, 0]);

        let bad = pt(&[0, 1], 5);
        assert!(pair_decode(&bad).is_err());
    }

    #[test]
    fn cylinder_diameter_and_membership() {
        let w = Word::new(vec![0, 1], 2).unwrap();
        let c = Cylinder::new(w);
        assert_eq!(c.diameter(), 0.25);
        assert!(c.contains(&pt(&[0, 1, 1], 2)).unwrap());
        assert!(!c.contains(&pt(&[1, 1, 1], 2)).unwrap());
    }
}
