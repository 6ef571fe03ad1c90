//! Synthetic glyph dataset generator.
//!
//! Six stroke-drawn glyph prototypes ("L", "F", "P", "7", "J", "r"), each
//! chosen to have no quarter-turn self-symmetry and no quarter-turn aliasing
//! with any other prototype. Generation asserts this distinctness so the
//! rotation auxiliary task stays well-posed.

use rand::Rng;

use super::{rotate_quarter, Dataset, Role};
use crate::error::{Error, Result};
use crate::rng;

/// Line segments in a unit coordinate frame (x right, y down).
type Segment = ((f64, f64), (f64, f64));

struct Prototype {
    name: char,
    segments: &'static [Segment],
}

const PROTOTYPES: [Prototype; 6] = [
    Prototype {
        name: 'L',
        segments: &[((0.30, 0.10), (0.30, 0.90)), ((0.30, 0.90), (0.85, 0.90))],
    },
    Prototype {
        name: 'F',
        segments: &[
            ((0.30, 0.10), (0.30, 0.90)),
            ((0.30, 0.10), (0.85, 0.10)),
            ((0.30, 0.50), (0.72, 0.50)),
        ],
    },
    Prototype {
        name: 'P',
        segments: &[
            ((0.30, 0.10), (0.30, 0.90)),
            ((0.30, 0.10), (0.75, 0.10)),
            ((0.75, 0.10), (0.75, 0.50)),
            ((0.30, 0.50), (0.75, 0.50)),
        ],
    },
    Prototype {
        name: '7',
        segments: &[((0.15, 0.10), (0.85, 0.10)), ((0.85, 0.10), (0.40, 0.90))],
    },
    Prototype {
        name: 'J',
        segments: &[
            ((0.35, 0.10), (0.90, 0.10)),
            ((0.68, 0.10), (0.68, 0.85)),
            ((0.68, 0.85), (0.30, 0.85)),
        ],
    },
    Prototype {
        name: 'r',
        segments: &[
            ((0.35, 0.30), (0.35, 0.90)),
            ((0.35, 0.42), (0.55, 0.30)),
            ((0.55, 0.30), (0.72, 0.34)),
        ],
    },
];

/// Configuration of the synthetic glyph corpus.
#[derive(Debug, Clone)]
pub struct GlyphSpec {
    /// Image side length S.
    pub side: usize,
    /// Number of classes (at most the 6 built-in prototypes).
    pub classes: usize,
    pub samples_per_class: usize,
    /// Integer translation jitter in pixels, drawn from [−t, +t].
    pub translate_px: i64,
    /// Scale jitter choices.
    pub scales: Vec<f64>,
    /// Intensity jitter range.
    pub intensity: (f64, f64),
    pub seed: u64,
}

impl Default for GlyphSpec {
    fn default() -> Self {
        GlyphSpec {
            side: 16,
            classes: 6,
            samples_per_class: 100,
            translate_px: 2,
            scales: vec![0.8, 1.0, 1.2],
            intensity: (0.7, 1.0),
            seed: 0,
        }
    }
}

/// Distance from point p to segment (a, b).
fn segment_distance(p: (f64, f64), (a, b): Segment) -> f64 {
    let (px, py) = p;
    let (ax, ay) = a;
    let (bx, by) = b;
    let (dx, dy) = (bx - ax, by - ay);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((px - ax) * dx + (py - ay) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (ax + t * dx, ay + t * dy);
    ((px - cx).powi(2) + (py - cy).powi(2)).sqrt()
}

/// Rasterize one prototype at side S with the given jitter.
fn rasterize(
    segments: &[Segment],
    side: usize,
    scale: f64,
    dx: i64,
    dy: i64,
    intensity: f64,
) -> Vec<f64> {
    let s = side as f64;
    let half_stroke = 0.055 * s; // stroke half-width in pixels
    let mut out = vec![0.0; side * side];
    for r in 0..side {
        for c in 0..side {
            // Pixel center, pulled back through translation and scaling.
            let px = (c as f64 + 0.5 - dx as f64 - s / 2.0) / scale + s / 2.0;
            let py = (r as f64 + 0.5 - dy as f64 - s / 2.0) / scale + s / 2.0;
            let p = (px / s, py / s);
            let dist = segments
                .iter()
                .map(|&seg| segment_distance(p, seg) * s)
                .fold(f64::INFINITY, f64::min);
            // Soft 1-pixel edge for antialiasing.
            let coverage = (half_stroke + 0.5 - dist).clamp(0.0, 1.0);
            out[r * side + c] = (coverage * intensity).clamp(0.0, 1.0);
        }
    }
    out
}

fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Check that no prototype aliases any prototype (including itself) under a
/// quarter-turn rotation.
fn assert_rotation_distinct(spec: &GlyphSpec) -> Result<()> {
    let protos: Vec<Vec<f64>> = PROTOTYPES[..spec.classes]
        .iter()
        .map(|p| rasterize(p.segments, spec.side, 1.0, 0, 0, 1.0))
        .collect();
    let threshold = 0.05 * (spec.side * spec.side) as f64;
    for (i, p) in protos.iter().enumerate() {
        for q in 1..4 {
            let rotated = rotate_quarter(p, spec.side, q)?;
            for (j, other) in protos.iter().enumerate() {
                if l1(&rotated, other) <= threshold {
                    return Err(Error::Generation(format!(
                        "prototype '{}' rotated by {}° aliases prototype '{}'",
                        PROTOTYPES[i].name,
                        90 * q,
                        PROTOTYPES[j].name
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Generate the source-domain corpus: balanced 80/20 train/test split,
/// deterministic for a given seed.
pub fn generate_glyphs(spec: &GlyphSpec) -> Result<(Dataset, Dataset)> {
    if spec.classes == 0 || spec.classes > PROTOTYPES.len() {
        return Err(Error::Usage(format!(
            "classes must be in 1..={}, got {}",
            PROTOTYPES.len(),
            spec.classes
        )));
    }
    if spec.samples_per_class < 5 {
        return Err(Error::Usage("need at least 5 samples per class".into()));
    }
    if spec.scales.is_empty() {
        return Err(Error::Usage("scale jitter list must be non-empty".into()));
    }
    assert_rotation_distinct(spec)?;

    let per_test = spec.samples_per_class / 5; // 20%
    let per_train = spec.samples_per_class - per_test;
    let mut train_images = Vec::new();
    let mut train_labels = Vec::new();
    let mut test_images = Vec::new();
    let mut test_labels = Vec::new();
    for class in 0..spec.classes {
        for i in 0..spec.samples_per_class {
            let mut rng = rng::stream(spec.seed, "glyph", &[class as u64, i as u64]);
            let scale = spec.scales[rng.gen_range(0..spec.scales.len())];
            let dx = rng.gen_range(-spec.translate_px..=spec.translate_px);
            let dy = rng.gen_range(-spec.translate_px..=spec.translate_px);
            let intensity = rng.gen_range(spec.intensity.0..=spec.intensity.1);
            let img = rasterize(PROTOTYPES[class].segments, spec.side, scale, dx, dy, intensity);
            if i < per_train {
                train_images.push(img);
                train_labels.push(class);
            } else {
                test_images.push(img);
                test_labels.push(class);
            }
        }
    }
    let train = Dataset::new(train_images, train_labels, spec.side, spec.classes, Role::SourceTrain)?;
    let test = Dataset::new(test_images, test_labels, spec.side, spec.classes, Role::SourceTest)?;
    Ok((train, test))
}
