//! One-line permutation arrays with validation and cycle decomposition.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Why a vector of integers failed to validate as a permutation.
///
/// Positions are 1-based, matching the element domain `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("position {position}: value {value} out of range 1..={n}")]
    OutOfRange { position: usize, value: u32, n: usize },
    #[error("position {position}: value {value} already appeared")]
    Duplicate { position: usize, value: u32 },
}

/// A permutation of `1..=n` in one-line notation: entry `i` holds the image
/// of `i`. Construction validates, so a held value is always a bijection.
#[derive(Clone, PartialEq, Eq)]
pub struct Permutation {
    // images[i - 1] is the image of element i
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: u32) -> Self {
        Self { images: (1..=n).collect() }
    }

    /// The single n-cycle (1 2 3 ... n).
    pub fn cyclic(n: u32) -> Self {
        Self { images: (1..=n).map(|i| if i == n { 1 } else { i + 1 }).collect() }
    }

    /// Uniformly random permutation from a ChaCha8 stream seeded with `seed`.
    pub fn random(n: u32, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut images: Vec<u32> = (1..=n).collect();
        images.shuffle(&mut rng);
        Self { images }
    }

    pub fn from_one_line(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        assert!(n <= i32::MAX as usize, "domain too large for signed subtree sizes");
        let mut seen = vec![false; n];
        for (k, &v) in images.iter().enumerate() {
            if v < 1 || v as usize > n {
                return Err(PermError::OutOfRange { position: k + 1, value: v, n });
            }
            if seen[v as usize - 1] {
                return Err(PermError::Duplicate { position: k + 1, value: v });
            }
            seen[v as usize - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn len(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of `i`. Panics if `i` is outside `1..=n`.
    pub fn image(&self, i: u32) -> u32 {
        self.images[i as usize - 1]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.images
    }

    /// Cycle decomposition. Each cycle starts at its smallest element and
    /// follows the orbit; cycles are ordered by their smallest element.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v as usize] {
                seen[v as usize] = true;
                cycle.push(v);
                v = self.image(v);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> u32 {
        self.cycles().len() as u32
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Parse error for the whitespace-separated one-line form.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParsePermError {
    #[error("token {position}: {source}")]
    Token {
        position: usize,
        #[source]
        source: std::num::ParseIntError,
    },
    #[error(transparent)]
    Invalid(#[from] PermError),
}

impl FromStr for Permutation {
    type Err = ParsePermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut images = Vec::new();
        for (k, tok) in s.split_whitespace().enumerate() {
            let v = tok
                .parse::<u32>()
                .map_err(|source| ParsePermError::Token { position: k + 1, source })?;
            images.push(v);
        }
        Ok(Self::from_one_line(images)?)
    }
}
