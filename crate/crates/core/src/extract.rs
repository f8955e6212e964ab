//! Toeplitz hashing of the raw generation bits.
//!
//! For an `m × n` extractor the seed holds `n + m − 1` bits and
//! `T[i][j] = seed[m − 1 − i + j]`: the first row is `seed[m−1..]` and the first
//! column, read from the bottom row up, is `seed[0..m)`. Output bit `i` is the
//! GF(2) inner product of `raw` with the seed window starting at `m − 1 − i`.
//!
//! No leftover-hash parameterization is attempted here. The caller supplies an
//! entropy budget, and [`SECURITY_MARGIN_BITS`] are held back from it.

use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::protocol::CertificationResult;

/// Bits withheld from every certified budget.
pub const SECURITY_MARGIN_BITS: u64 = 64;

/// Packed bit string, bit `i` at word `i / 64`, position `i % 64`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl std::fmt::Debug for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let bits: String = (0..self.len.min(128)).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "BitString({} bits: {bits}{})", self.len, if self.len > 128 { "…" } else { "" })
    }
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut s = BitString::default();
        for b in bits {
            s.push(b);
        }
        s
    }

    /// First `len` bits of `bytes`, most significant bit of each byte first.
    pub fn from_bytes_msb(bytes: &[u8], len: usize) -> Result<Self> {
        if len > bytes.len() * 8 {
            return Err(Error::Shape(format!("{len} bits requested from {} bytes", bytes.len())));
        }
        Ok(BitString::from_bools((0..len).map(|i| bytes[i / 8] >> (7 - i % 8) & 1 == 1)))
    }

    /// Hex string decoded MSB-first; every decoded bit is kept.
    pub fn from_hex(hex: &str) -> Result<Self> {
        let bytes = hex::decode(hex.trim()).map_err(|e| Error::InvalidArgument(format!("seed hex: {e}")))?;
        Self::from_bytes_msb(&bytes, bytes.len() * 8)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit {i} out of {}", self.len);
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, bit);
    }

    pub fn extend_from(&mut self, other: &BitString) {
        for i in 0..other.len {
            self.push(other.get(i));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn prefix(&self, len: usize) -> Result<BitString> {
        if len > self.len {
            return Err(Error::Shape(format!("prefix of {len} bits from {} bits", self.len)));
        }
        Ok(BitString::from_bools((0..len).map(|i| self.get(i))))
    }

    pub fn slice(&self, start: usize, len: usize) -> BitString {
        BitString::from_bools((start..start + len).map(|i| self.get(i)))
    }

    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        if self.len != other.len {
            return Err(Error::Shape(format!("xor of {} and {} bits", self.len, other.len)));
        }
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Ok(BitString { words, len: self.len })
    }

    /// Packs MSB-first; a final partial byte is zero-padded.
    pub fn to_bytes_msb(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len.div_ceil(8)];
        for i in (0..self.len).filter(|&i| self.get(i)) {
            out[i / 8] |= 1 << (7 - i % 8);
        }
        out
    }

    /// 64 bits starting at `start`, zero beyond the end.
    fn word_at(&self, start: usize) -> u64 {
        let (q, r) = (start / 64, start % 64);
        let lo = self.words.get(q).copied().unwrap_or(0);
        if r == 0 {
            lo
        } else {
            let hi = self.words.get(q + 1).copied().unwrap_or(0);
            (lo >> r) | (hi << (64 - r))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtractorConfig {
    input_length: usize,
    output_length: usize,
    seed: BitString,
}

impl ExtractorConfig {
    pub fn new(input_length: usize, output_length: usize, seed: BitString) -> Result<Self> {
        if input_length == 0 || output_length == 0 {
            return Err(Error::InvalidArgument("extractor lengths must be positive".into()));
        }
        if output_length > input_length {
            return Err(Error::InvalidArgument(format!(
                "output length {output_length} exceeds input length {input_length}"
            )));
        }
        let need = input_length + output_length - 1;
        if seed.len() != need {
            return Err(Error::Shape(format!("seed has {} bits, need {need}", seed.len())));
        }
        Ok(ExtractorConfig { input_length, output_length, seed })
    }

    /// Takes the first `n + m − 1` bits of a longer seed.
    pub fn from_seed_prefix(input_length: usize, output_length: usize, seed: &BitString) -> Result<Self> {
        let need = (input_length + output_length).saturating_sub(1);
        Self::new(input_length, output_length, seed.prefix(need)?)
    }

    pub fn input_length(&self) -> usize {
        self.input_length
    }

    pub fn output_length(&self) -> usize {
        self.output_length
    }

    pub fn seed(&self) -> &BitString {
        &self.seed
    }
}

/// `T · raw` over GF(2).
pub fn toeplitz_extract(raw: &BitString, config: &ExtractorConfig) -> Result<BitString> {
    let (n, m) = (config.input_length, config.output_length);
    if raw.len() != n {
        return Err(Error::Shape(format!("raw input has {} bits, extractor expects {n}", raw.len())));
    }
    let words = n.div_ceil(64);
    let seed = &config.seed;
    let bits: Vec<bool> = (0..m)
        .into_par_iter()
        .map(|i| {
            let offset = m - 1 - i;
            let acc = (0..words).fold(0u64, |acc, k| {
                let mut window = seed.word_at(offset + 64 * k);
                let last = n - 64 * k;
                if last < 64 {
                    window &= (1u64 << last) - 1;
                }
                acc ^ (window & raw.words[k])
            });
            acc.count_ones() % 2 == 1
        })
        .collect();
    Ok(BitString::from_bools(bits))
}

/// Bits that may be extracted under a certificate:
/// `⌊h · n_gen⌋ − SECURITY_MARGIN_BITS`, saturating at zero.
pub fn output_budget(cert: &CertificationResult) -> u64 {
    cert.certified_bits().saturating_sub(SECURITY_MARGIN_BITS)
}

/// Fails when `requested` exceeds [`output_budget`].
pub fn check_output_budget(requested: u64, cert: &CertificationResult) -> Result<()> {
    let budget = output_budget(cert);
    if requested > budget {
        return Err(Error::Capacity(format!("requested {requested} output bits, certificate allows {budget}")));
    }
    Ok(())
}

/// Applies one Toeplitz matrix to consecutive fixed-size blocks of a long
/// raw stream. A trailing partial block is dropped.
#[derive(Debug, Clone)]
pub struct BlockExtractor {
    config: ExtractorConfig,
}

impl BlockExtractor {
    /// Sizes the per-block output as `⌊block_bits · entropy_per_bit⌋`.
    pub fn new(block_bits: usize, entropy_per_bit: f64, seed: &BitString) -> Result<Self> {
        let out = (block_bits as f64 * entropy_per_bit).floor() as usize;
        if out == 0 {
            return Err(Error::InsufficientData(format!(
                "{entropy_per_bit} bits per raw bit yields no output from {block_bits}-bit blocks"
            )));
        }
        Ok(BlockExtractor { config: ExtractorConfig::from_seed_prefix(block_bits, out, seed)? })
    }

    pub fn config(&self) -> &ExtractorConfig {
        &self.config
    }

    /// Extracts every whole block, then truncates to `max_output_bits`.
    pub fn extract(&self, raw: &BitString, max_output_bits: u64) -> Result<BitString> {
        let n = self.config.input_length;
        let mut out = BitString::default();
        for block in 0..raw.len() / n {
            if out.len() as u64 >= max_output_bits {
                break;
            }
            out.extend_from(&toeplitz_extract(&raw.slice(block * n, n), &self.config)?);
        }
        let keep = (out.len() as u64).min(max_output_bits) as usize;
        out.prefix(keep)
    }
}

/// Pearson chi-square of byte frequencies against uniform, with the upper-tail
/// p-value on 255 degrees of freedom.
pub fn byte_chi_square(bytes: &[u8]) -> Result<(f64, f64)> {
    if bytes.is_empty() {
        return Err(Error::InsufficientData("no bytes to test".into()));
    }
    let mut counts = [0u64; 256];
    for &b in bytes {
        counts[b as usize] += 1;
    }
    let expected = bytes.len() as f64 / 256.0;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let dist = ChiSquared::new(255.0).expect("positive degrees of freedom");
    Ok((stat, dist.sf(stat)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> BitString {
        BitString::from_bools(s.chars().map(|c| c == '1'))
    }

    #[test]
    fn zero_input_gives_zero_output() {
        let seed = bits("1011001110101");
        let cfg = ExtractorConfig::new(10, 4, seed).unwrap();
        let out = toeplitz_extract(&BitString::zeros(10), &cfg).unwrap();
        assert_eq!(out, BitString::zeros(4));
    }

    #[test]
    fn all_ones_seed_single_output_is_parity() {
        let raw = bits("1101000111");
        let cfg = ExtractorConfig::new(10, 1, BitString::from_bools(vec![true; 10])).unwrap();
        let out = toeplitz_extract(&raw, &cfg).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out.get(0), raw.count_ones() % 2 == 1);
    }

    #[test]
    fn length_checks() {
        assert!(ExtractorConfig::new(8, 3, BitString::zeros(9)).is_err());
        assert!(ExtractorConfig::new(8, 9, BitString::zeros(16)).is_err());
        let cfg = ExtractorConfig::new(8, 3, BitString::zeros(10)).unwrap();
        assert!(matches!(toeplitz_extract(&BitString::zeros(7), &cfg), Err(Error::Shape(_))));
    }

    #[test]
    fn hex_is_msb_first() {
        let s = BitString::from_hex("a1").unwrap();
        assert_eq!(s, bits("10100001"));
        assert_eq!(s.to_bytes_msb(), vec![0xa1]);
        assert!(BitString::from_hex("zz").is_err());
    }

    #[test]
    fn word_reads_cross_boundaries() {
        let mut s = BitString::zeros(130);
        s.set(63, true);
        s.set(64, true);
        s.set(129, true);
        assert_eq!(s.word_at(63) & 0b11, 0b11);
        assert_eq!(s.word_at(129), 1);
        assert_eq!(s.word_at(200), 0);
    }

    #[test]
    fn block_extractor_truncates_to_budget() {
        let seed = BitString::from_bools((0..200).map(|i| i % 3 == 0));
        let raw = BitString::from_bools((0..1000).map(|i| i % 7 < 3));
        let ex = BlockExtractor::new(100, 0.25, &seed).unwrap();
        assert_eq!(ex.config().output_length(), 25);
        assert_eq!(ex.extract(&raw, u64::MAX).unwrap().len(), 250);
        assert_eq!(ex.extract(&raw, 60).unwrap().len(), 60);
        assert!(BlockExtractor::new(100, 0.001, &seed).is_err());
    }

    #[test]
    fn chi_square_flags_constant_bytes() {
        let (_, p) = byte_chi_square(&vec![7u8; 10_000]).unwrap();
        assert!(p < 1e-10);
        let even: Vec<u8> = (0..25_600).map(|i| (i % 256) as u8).collect();
        let (stat, p) = byte_chi_square(&even).unwrap();
        assert_eq!(stat, 0.0);
        assert!(p > 0.99);
    }
}
