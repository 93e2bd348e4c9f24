//! Dimensionality reduction preserving robustness: Johnson-Lindenstrauss
//! random projection and the random-halfspace Hamming-cube embedding.

mod hamming;
mod jl;

pub use hamming::{
    hamming_code_length, hamming_embed, hamming_embed_with_factor, DEFAULT_CODE_FACTOR,
};
pub use jl::{jl_epsilon, jl_project, jl_target_dimension};

use crate::error::{Error, Result};

/// Fixed-length bit code, packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    len: usize,
    words: Vec<u64>,
}

impl Code {
    pub fn zeros(len: usize) -> Self {
        Code {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn hamming(&self, other: &Code) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Hex encoding: big-endian bit order (bit 0 is the most significant bit
    /// of the first hex digit), zero-padded to ceil(len / 4) digits.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4);
        let mut out = String::with_capacity(digits);
        for j in 0..digits {
            let mut nibble = 0u8;
            for b in 0..4 {
                let i = 4 * j + b;
                if i < self.len && self.get(i) {
                    nibble |= 1 << (3 - b);
                }
            }
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    pub fn from_hex(s: &str, len: usize) -> Result<Self> {
        let digits = len.div_ceil(4);
        if s.len() != digits {
            return Err(Error::Parse(format!(
                "hamming code `{s}` has {} hex digits, expected {digits} for {len} bits",
                s.len()
            )));
        }
        let mut code = Code::zeros(len);
        for (j, ch) in s.chars().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit `{ch}` in hamming code")))?
                as u8;
            for b in 0..4 {
                let i = 4 * j + b;
                let bit = (nibble >> (3 - b)) & 1 == 1;
                if i < len {
                    code.set(i, bit);
                } else if bit {
                    return Err(Error::Parse(format!(
                        "hamming code `{s}` has nonzero padding past {len} bits"
                    )));
                }
            }
        }
        Ok(code)
    }
}

/// Binary codes whose thresholded Hamming distance reproduces the edge
/// relation; simultaneously usable as a similarity embedding over bipolar
/// (+1/-1) bit dots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HammingEmbedding {
    /// Code length in bits.
    pub k: usize,
    pub h_l: Vec<Code>,
    pub h_r: Vec<Code>,
    /// Edge iff Hamming distance <= dist_threshold.
    pub dist_threshold: usize,
    /// Bipolar dot threshold: k - 2 * dist_threshold.
    pub sim_threshold: i64,
}

impl HammingEmbedding {
    pub fn node_count(&self) -> usize {
        self.h_l.len()
    }

    pub fn hamming_dist(&self, u: usize, v: usize) -> usize {
        self.h_l[u].hamming(&self.h_r[v])
    }

    /// Dot product of the codes mapped to +1/-1 entries.
    pub fn bipolar_dot(&self, u: usize, v: usize) -> i64 {
        self.k as i64 - 2 * self.hamming_dist(u, v) as i64
    }

    /// Does the thresholded Hamming distance reproduce g's edge relation
    /// exactly (as both a distance and a bipolar similarity embedding)?
    pub fn reproduces(&self, g: &crate::graph::DiGraph) -> bool {
        if g.node_count() != self.node_count() {
            return false;
        }
        g.all_pairs().all(|(u, v)| {
            let d = self.hamming_dist(u as usize, v as usize);
            g.has_edge(u, v) == (d <= self.dist_threshold)
        })
    }

    /// Measured multiplicative distance robustness over the Hamming cube.
    ///
    /// Codes are 0/1 vectors, so squared Euclidean distance equals Hamming
    /// distance and the squared threshold is `dist_threshold` itself. Any
    /// code that reproduces the edge relation exactly is at least
    /// (1/k)-robust because non-edge distances beat the threshold by >= 1.
    pub fn measured_distance_robustness(
        &self,
        g: &crate::graph::DiGraph,
    ) -> super::embed::Robustness {
        use super::embed::Robustness;
        let mut min_nonedge: Option<usize> = None;
        for (u, v) in g.non_edges() {
            let d = self.hamming_dist(u as usize, v as usize);
            min_nonedge = Some(min_nonedge.map_or(d, |m| m.min(d)));
        }
        match min_nonedge {
            None => Robustness::Infinite,
            Some(d) => {
                let t = self.dist_threshold;
                if t == 0 {
                    if d > 0 {
                        Robustness::Infinite
                    } else {
                        Robustness::Finite(0.0)
                    }
                } else {
                    Robustness::Finite(d as f64 / t as f64 - 1.0)
                }
            }
        }
    }
}
