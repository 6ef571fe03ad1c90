//! Synthetic glyph datasets, parameterized corruptions, quarter-turn
//! rotations, and binary dataset I/O (IDX and the DLB1 container).

mod container;
mod corrupt;
mod glyphs;
mod idx;

pub use container::{load_dlb, load_dlb_images_only, save_dlb};
pub use corrupt::{corrupt, Corruption, DomainSpec};
pub use glyphs::{generate_glyphs, GlyphSpec};
pub use idx::load_idx;

use crate::error::{Error, Result};
use crate::network::Tensor;
use crate::rng;
use rand::Rng;

/// Which part of the workflow a dataset plays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    SourceTrain,
    SourceTest,
    Target,
    TargetSamples,
}

/// Labeled square single-channel images, pixels in [0,1].
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    images: Vec<Vec<f64>>,
    labels: Vec<usize>,
    side: usize,
    classes: usize,
    role: Role,
}

impl Dataset {
    pub fn new(
        images: Vec<Vec<f64>>,
        labels: Vec<usize>,
        side: usize,
        classes: usize,
        role: Role,
    ) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::Usage("dataset must be non-empty".into()));
        }
        if images.len() != labels.len() {
            return Err(Error::Usage(format!(
                "{} images vs {} labels",
                images.len(),
                labels.len()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if img.len() != side * side {
                return Err(Error::Shape(format!(
                    "image {i} has {} pixels, expected {}",
                    img.len(),
                    side * side
                )));
            }
            if img.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
                return Err(Error::Numeric(format!("image {i} has pixel outside [0,1]")));
            }
        }
        for (i, &label) in labels.iter().enumerate() {
            if label >= classes {
                return Err(Error::Usage(format!(
                    "label {label} of sample {i} out of range for {classes} classes"
                )));
            }
        }
        Ok(Dataset {
            images,
            labels,
            side,
            classes,
            role,
        })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn image(&self, i: usize) -> &[f64] {
        &self.images[i]
    }

    pub fn images(&self) -> &[Vec<f64>] {
        &self.images
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    /// Assemble a flat input batch from sample indices.
    pub fn batch(&self, indices: &[usize]) -> Result<(Tensor, Vec<usize>)> {
        let dim = self.side * self.side;
        let mut values = Vec::with_capacity(indices.len() * dim);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            values.extend_from_slice(&self.images[i]);
            labels.push(self.labels[i]);
        }
        Ok((Tensor::matrix(indices.len(), dim, values)?, labels))
    }
}

/// `q` counter-clockwise quarter turns; for q=1, out[r][c] = in[c][S−1−r].
pub fn rotate_quarter(image: &[f64], side: usize, q: usize) -> Result<Vec<f64>> {
    if image.len() != side * side {
        return Err(Error::Shape(format!(
            "image has {} pixels, not a {side}×{side} square",
            image.len()
        )));
    }
    let mut out = image.to_vec();
    for _ in 0..(q % 4) {
        let prev = out.clone();
        for r in 0..side {
            for c in 0..side {
                out[r * side + c] = prev[c * side + (side - 1 - r)];
            }
        }
    }
    Ok(out)
}

/// Uniform sample of `n` target-domain images without replacement.
/// Class balance is deliberately not enforced.
pub fn sample_target_set(target: &Dataset, n: usize, seed: u64) -> Result<Dataset> {
    if n == 0 || n > target.len() {
        return Err(Error::Usage(format!(
            "cannot sample {n} of {} available samples",
            target.len()
        )));
    }
    let mut rng = rng::stream(seed, "target-sample", &[]);
    let mut pool: Vec<usize> = (0..target.len()).collect();
    // Partial Fisher-Yates: the first n slots become the sample.
    for i in 0..n {
        let j = rng.gen_range(i..pool.len());
        pool.swap(i, j);
    }
    let picked = &pool[..n];
    let images = picked.iter().map(|&i| target.images[i].clone()).collect();
    let labels = picked.iter().map(|&i| target.labels[i]).collect();
    Dataset::new(images, labels, target.side, target.classes, Role::TargetSamples)
}
