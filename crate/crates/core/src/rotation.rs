//! Orthogonal rotation matrices for the nonseparable benchmark group.
//!
//! Matrices are built as a seeded product of random planar (Givens)
//! rotations over uniformly drawn axis pairs and angles, so orthogonality
//! holds by construction and regeneration from the same seed is bit-exact.

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// A dense `D x D` orthogonal matrix with its generation seed.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationMatrix {
    dim: usize,
    entries: Vec<f64>, // row-major
    seed: u64,
}

impl RotationMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1.0;
        }
        Self {
            dim,
            entries,
            seed: 0,
        }
    }

    /// Builds the matrix from `2D - 2` random planar rotations.
    pub fn generate(dim: usize, seed: u64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidConfig(format!(
                "rotation matrices need dimension >= 2, got {dim}"
            )));
        }
        let mut m = Self::identity(dim);
        m.seed = seed;
        let mut stream = RngStream::new(seed, 0);
        for _ in 0..(2 * dim - 2) {
            let a = ((stream.uniform01() * dim as f64) as usize).min(dim - 1);
            let mut b = ((stream.uniform01() * (dim - 1) as f64) as usize).min(dim - 2);
            if b >= a {
                b += 1;
            }
            let theta = stream.uniform01() * std::f64::consts::TAU;
            m.rotate_plane(a, b, theta);
        }
        Ok(m)
    }

    /// Left-multiplies by the planar rotation of angle `theta` in the
    /// `(a, b)` coordinate plane.
    pub fn rotate_plane(&mut self, a: usize, b: usize, theta: f64) {
        assert!(a != b && a < self.dim && b < self.dim);
        let (sin, cos) = theta.sin_cos();
        for j in 0..self.dim {
            let ra = self.entries[a * self.dim + j];
            let rb = self.entries[b * self.dim + j];
            self.entries[a * self.dim + j] = cos * ra - sin * rb;
            self.entries[b * self.dim + j] = sin * ra + cos * rb;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    /// `z = M x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let row = &self.entries[i * self.dim..(i + 1) * self.dim];
                row.iter().zip(x).map(|(m, v)| m * v).sum()
            })
            .collect()
    }

    /// `z = M^T x` (the inverse map, since `M` is orthogonal).
    pub fn apply_transpose(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self.entries[i * self.dim + j] * x[i]).sum())
            .collect()
    }

    /// Text artifact: first line the dimension, then one row per line with
    /// 17 fractional digits (full f64 round-trip precision).
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.dim);
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| format!("{:.17e}", self.entry(i, j)))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the [`to_text`](Self::to_text) format. The generation seed is
    /// not part of the artifact, so the parsed matrix carries seed 0.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let dim: usize = lines
            .next()
            .ok_or_else(|| Error::InvalidConfig("empty rotation file".into()))?
            .trim()
            .parse()
            .map_err(|e| Error::InvalidConfig(format!("bad rotation dimension line: {e}")))?;
        let mut entries = Vec::with_capacity(dim * dim);
        for line in lines.take(dim) {
            for tok in line.split_whitespace() {
                let v: f64 = tok
                    .parse()
                    .map_err(|e| Error::InvalidConfig(format!("bad rotation entry `{tok}`: {e}")))?;
                entries.push(v);
            }
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidConfig(format!(
                "rotation file holds {} entries, expected {}",
                entries.len(),
                dim * dim
            )));
        }
        Ok(Self {
            dim,
            entries,
            seed: 0,
        })
    }

    /// Largest absolute deviation of `M^T M` from the identity.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let dot: f64 = (0..self.dim)
                    .map(|k| self.entries[k * self.dim + i] * self.entries[k * self.dim + j])
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}
