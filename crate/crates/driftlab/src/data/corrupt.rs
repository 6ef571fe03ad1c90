//! Parameterized image corruptions defining target domains.
//!
//! Severity tables (1..=5):
//!   gaussian_noise  σ ∈ {0.05, 0.10, 0.15, 0.20, 0.30}
//!   impulse_noise   fraction ∈ {0.01, 0.03, 0.05, 0.10, 0.15}, hit → 0 or 1
//!   blur            3×3 mean filter applied `severity` times, reflect padding
//!   contrast        factor ∈ {0.75, 0.60, 0.45, 0.30, 0.15} about the mean
//!   brightness      offset ∈ {0.10, 0.20, 0.30, 0.40, 0.50}
//!   pixelate        block ∈ {2, 2, 4, 4, 8}, block-average then replicate

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Corruption {
    None,
    GaussianNoise,
    ImpulseNoise,
    Blur,
    Contrast,
    Brightness,
    Pixelate,
}

pub const CORRUPTION_NAMES: [&str; 7] = [
    "none",
    "gaussian_noise",
    "impulse_noise",
    "blur",
    "contrast",
    "brightness",
    "pixelate",
];

impl Corruption {
    pub fn name(self) -> &'static str {
        match self {
            Corruption::None => "none",
            Corruption::GaussianNoise => "gaussian_noise",
            Corruption::ImpulseNoise => "impulse_noise",
            Corruption::Blur => "blur",
            Corruption::Contrast => "contrast",
            Corruption::Brightness => "brightness",
            Corruption::Pixelate => "pixelate",
        }
    }

    /// The six non-identity corruptions, in benchmark order.
    pub fn all_shifting() -> [Corruption; 6] {
        [
            Corruption::GaussianNoise,
            Corruption::ImpulseNoise,
            Corruption::Blur,
            Corruption::Contrast,
            Corruption::Brightness,
            Corruption::Pixelate,
        ]
    }
}

impl fmt::Display for Corruption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Corruption {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Corruption::None),
            "gaussian_noise" => Ok(Corruption::GaussianNoise),
            "impulse_noise" => Ok(Corruption::ImpulseNoise),
            "blur" => Ok(Corruption::Blur),
            "contrast" => Ok(Corruption::Contrast),
            "brightness" => Ok(Corruption::Brightness),
            "pixelate" => Ok(Corruption::Pixelate),
            other => Err(Error::Usage(format!(
                "unknown corruption '{other}'; valid names: {}",
                CORRUPTION_NAMES.join(", ")
            ))),
        }
    }
}

/// A target domain: a corruption at a severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DomainSpec {
    pub corruption: Corruption,
    pub severity: u8,
}

impl DomainSpec {
    pub fn new(corruption: Corruption, severity: u8) -> Result<Self> {
        if corruption != Corruption::None && !(1..=5).contains(&severity) {
            return Err(Error::Usage(format!(
                "severity must be in 1..=5, got {severity}"
            )));
        }
        Ok(DomainSpec { corruption, severity })
    }

    pub fn label(&self) -> String {
        match self.corruption {
            Corruption::None => "none".into(),
            c => format!("{}-s{}", c.name(), self.severity),
        }
    }
}

const GAUSSIAN_SIGMA: [f64; 5] = [0.05, 0.10, 0.15, 0.20, 0.30];
const IMPULSE_FRACTION: [f64; 5] = [0.01, 0.03, 0.05, 0.10, 0.15];
const CONTRAST_FACTOR: [f64; 5] = [0.75, 0.60, 0.45, 0.30, 0.15];
const BRIGHTNESS_OFFSET: [f64; 5] = [0.10, 0.20, 0.30, 0.40, 0.50];
const PIXELATE_BLOCK: [usize; 5] = [2, 2, 4, 4, 8];

/// Box-Muller standard normal from two uniforms.
fn standard_normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn mean_filter_3x3(image: &[f64], side: usize) -> Vec<f64> {
    let reflect = |i: i64| -> usize {
        if i < 0 {
            (-i - 1) as usize
        } else if i as usize >= side {
            2 * side - 1 - i as usize
        } else {
            i as usize
        }
    };
    let mut out = vec![0.0; side * side];
    for r in 0..side as i64 {
        for c in 0..side as i64 {
            let mut acc = 0.0;
            for dr in -1..=1 {
                for dc in -1..=1 {
                    acc += image[reflect(r + dr) * side + reflect(c + dc)];
                }
            }
            out[r as usize * side + c as usize] = acc / 9.0;
        }
    }
    out
}

fn pixelate(image: &[f64], side: usize, block: usize) -> Vec<f64> {
    let mut out = vec![0.0; side * side];
    let mut r0 = 0;
    while r0 < side {
        let rh = block.min(side - r0);
        let mut c0 = 0;
        while c0 < side {
            let cw = block.min(side - c0);
            let mut acc = 0.0;
            for r in r0..r0 + rh {
                for c in c0..c0 + cw {
                    acc += image[r * side + c];
                }
            }
            let avg = acc / (rh * cw) as f64;
            for r in r0..r0 + rh {
                for c in c0..c0 + cw {
                    out[r * side + c] = avg;
                }
            }
            c0 += block;
        }
        r0 += block;
    }
    out
}

fn corrupt_image(
    image: &[f64],
    side: usize,
    spec: &DomainSpec,
    seed: u64,
    index: u64,
) -> Vec<f64> {
    let level = spec.severity.saturating_sub(1) as usize;
    match spec.corruption {
        Corruption::None => image.to_vec(),
        Corruption::GaussianNoise => {
            let sigma = GAUSSIAN_SIGMA[level];
            let mut rng = rng::stream(seed, "corrupt", &[index]);
            image
                .iter()
                .map(|&p| (p + sigma * standard_normal(&mut rng)).clamp(0.0, 1.0))
                .collect()
        }
        Corruption::ImpulseNoise => {
            let frac = IMPULSE_FRACTION[level];
            let mut rng = rng::stream(seed, "corrupt", &[index]);
            image
                .iter()
                .map(|&p| {
                    if rng.gen_range(0.0..1.0) < frac {
                        if rng.gen_range(0.0..1.0) < 0.5 {
                            0.0
                        } else {
                            1.0
                        }
                    } else {
                        p
                    }
                })
                .collect()
        }
        Corruption::Blur => {
            let mut out = image.to_vec();
            for _ in 0..spec.severity {
                out = mean_filter_3x3(&out, side);
            }
            out
        }
        Corruption::Contrast => {
            let factor = CONTRAST_FACTOR[level];
            let mean = image.iter().sum::<f64>() / image.len() as f64;
            image
                .iter()
                .map(|&p| ((p - mean) * factor + mean).clamp(0.0, 1.0))
                .collect()
        }
        Corruption::Brightness => {
            let offset = BRIGHTNESS_OFFSET[level];
            image.iter().map(|&p| (p + offset).clamp(0.0, 1.0)).collect()
        }
        Corruption::Pixelate => pixelate(image, side, PIXELATE_BLOCK[level]),
    }
}

/// Apply a corruption to every image; labels and counts unchanged.
/// Deterministic per (seed, image index).
pub fn corrupt(data: &Dataset, spec: &DomainSpec, seed: u64) -> Result<Dataset> {
    if spec.corruption != Corruption::None && !(1..=5).contains(&spec.severity) {
        return Err(Error::Usage(format!(
            "severity must be in 1..=5, got {}",
            spec.severity
        )));
    }
    let side = data.side();
    let images = data
        .images()
        .iter()
        .enumerate()
        .map(|(i, img)| corrupt_image(img, side, spec, seed, i as u64))
        .collect();
    Dataset::new(images, data.labels().to_vec(), side, data.classes(), super::Role::Target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{generate_glyphs, GlyphSpec};

    fn small_dataset() -> Dataset {
        let (_, test) = generate_glyphs(&GlyphSpec {
            samples_per_class: 10,
            ..GlyphSpec::default()
        })
        .unwrap();
        test
    }

    #[test]
    fn none_is_identity() {
        let data = small_dataset();
        let spec = DomainSpec::new(Corruption::None, 0).unwrap();
        let out = corrupt(&data, &spec, 1).unwrap();
        assert_eq!(out.images(), data.images());
        assert_eq!(out.labels(), data.labels());
    }

    #[test]
    fn contrast_severity5_shrinks_variance_by_factor_squared() {
        let data = small_dataset();
        let spec = DomainSpec::new(Corruption::Contrast, 5).unwrap();
        let out = corrupt(&data, &spec, 1).unwrap();
        for (orig, new) in data.images().iter().zip(out.images()) {
            let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
            let var = |v: &[f64]| {
                let m = mean(v);
                v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / v.len() as f64
            };
            // Clamping never fires here: values contract toward the mean.
            assert!((var(new) - var(orig) * 0.15 * 0.15).abs() < 1e-12);
        }
    }

    #[test]
    fn corruption_is_deterministic_per_seed() {
        let data = small_dataset();
        let spec = DomainSpec::new(Corruption::GaussianNoise, 3).unwrap();
        let a = corrupt(&data, &spec, 42).unwrap();
        let b = corrupt(&data, &spec, 42).unwrap();
        let c = corrupt(&data, &spec, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn all_corruptions_preserve_range_labels_and_counts() {
        let data = small_dataset();
        for corruption in Corruption::all_shifting() {
            for severity in 1..=5 {
                let spec = DomainSpec::new(corruption, severity).unwrap();
                let out = corrupt(&data, &spec, 7).unwrap();
                assert_eq!(out.len(), data.len());
                assert_eq!(out.labels(), data.labels());
                for img in out.images() {
                    assert!(img.iter().all(|&p| (0.0..=1.0).contains(&p)));
                }
            }
        }
    }

    #[test]
    fn unknown_corruption_name_lists_valid_ones() {
        let err = "salt".parse::<Corruption>().unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("gaussian_noise") && msg.contains("pixelate"));
    }

    #[test]
    fn severity_out_of_range_rejected() {
        assert!(DomainSpec::new(Corruption::Blur, 0).is_err());
        assert!(DomainSpec::new(Corruption::Blur, 6).is_err());
    }
}
