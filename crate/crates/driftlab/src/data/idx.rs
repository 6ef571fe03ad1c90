//! IDX binary dataset loader (MNIST-style, big-endian headers).

use std::fs;
use std::path::Path;

use super::{Dataset, Role};
use crate::error::{Error, Result};

const IMAGES_MAGIC: u32 = 0x0000_0803;
const LABELS_MAGIC: u32 = 0x0000_0801;

fn be_u32(bytes: &[u8], offset: usize) -> Result<u32> {
    let slice = bytes.get(offset..offset + 4).ok_or(Error::Format {
        offset: offset as u64,
        msg: "truncated file".into(),
    })?;
    Ok(u32::from_be_bytes(slice.try_into().unwrap()))
}

/// Load an images/labels IDX pair as a dataset; bytes scale to [0,1].
pub fn load_idx(images_path: &Path, labels_path: &Path) -> Result<Dataset> {
    let images = fs::read(images_path).map_err(|e| Error::io(images_path, e))?;
    let labels = fs::read(labels_path).map_err(|e| Error::io(labels_path, e))?;

    let magic = be_u32(&images, 0)?;
    if magic != IMAGES_MAGIC {
        return Err(Error::Format {
            offset: 0,
            msg: format!("bad images magic {magic:#010x}, expected {IMAGES_MAGIC:#010x}"),
        });
    }
    let n = be_u32(&images, 4)? as usize;
    let rows = be_u32(&images, 8)? as usize;
    let cols = be_u32(&images, 12)? as usize;
    if rows != cols {
        return Err(Error::Format {
            offset: 8,
            msg: format!("non-square images {rows}×{cols}"),
        });
    }
    let pixel_bytes = n * rows * cols;
    if images.len() != 16 + pixel_bytes {
        return Err(Error::Format {
            offset: images.len().min(16 + pixel_bytes) as u64,
            msg: format!("images payload is {} bytes, expected {}", images.len() - 16.min(images.len()), pixel_bytes),
        });
    }

    let lmagic = be_u32(&labels, 0)?;
    if lmagic != LABELS_MAGIC {
        return Err(Error::Format {
            offset: 0,
            msg: format!("bad labels magic {lmagic:#010x}, expected {LABELS_MAGIC:#010x}"),
        });
    }
    let ln = be_u32(&labels, 4)? as usize;
    if ln != n {
        return Err(Error::Format {
            offset: 4,
            msg: format!("label count {ln} != image count {n}"),
        });
    }
    if labels.len() != 8 + n {
        return Err(Error::Format {
            offset: labels.len().min(8 + n) as u64,
            msg: format!("labels payload is {} bytes, expected {}", labels.len() - 8.min(labels.len()), n),
        });
    }

    let dim = rows * cols;
    let image_vecs: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            images[16 + i * dim..16 + (i + 1) * dim]
                .iter()
                .map(|&b| f64::from(b) / 255.0)
                .collect()
        })
        .collect();
    let label_vec: Vec<usize> = labels[8..8 + n].iter().map(|&b| b as usize).collect();
    let classes = label_vec.iter().max().map_or(1, |&m| m + 1);
    Dataset::new(image_vecs, label_vec, rows, classes, Role::SourceTrain)
}
