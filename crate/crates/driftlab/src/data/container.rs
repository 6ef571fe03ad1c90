//! Flat binary dataset container.
//!
//! Layout: magic "DLB1", then S, C, N as little-endian u32, then N·S·S
//! little-endian f64 pixels, then N little-endian u32 labels.

use std::fs;
use std::path::Path;

use super::{Dataset, Role};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"DLB1";

pub fn save_dlb(data: &Dataset, path: &Path) -> Result<()> {
    let mut bytes = Vec::with_capacity(16 + data.len() * (data.side() * data.side() * 8 + 4));
    bytes.extend_from_slice(MAGIC);
    bytes.extend_from_slice(&(data.side() as u32).to_le_bytes());
    bytes.extend_from_slice(&(data.classes() as u32).to_le_bytes());
    bytes.extend_from_slice(&(data.len() as u32).to_le_bytes());
    for img in data.images() {
        for &p in img {
            bytes.extend_from_slice(&p.to_le_bytes());
        }
    }
    for &l in data.labels() {
        bytes.extend_from_slice(&(l as u32).to_le_bytes());
    }
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

struct Header {
    side: usize,
    classes: usize,
    n: usize,
}

fn read_header(bytes: &[u8]) -> Result<Header> {
    if bytes.len() < 16 {
        return Err(Error::Format {
            offset: bytes.len() as u64,
            msg: "truncated header".into(),
        });
    }
    if &bytes[0..4] != MAGIC {
        return Err(Error::Format {
            offset: 0,
            msg: "bad magic, expected DLB1".into(),
        });
    }
    let le = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap()) as usize;
    Ok(Header {
        side: le(4),
        classes: le(8),
        n: le(12),
    })
}

fn read_images(bytes: &[u8], h: &Header) -> Result<Vec<Vec<f64>>> {
    let dim = h.side * h.side;
    let need = 16 + h.n * dim * 8;
    if bytes.len() < need {
        return Err(Error::Format {
            offset: bytes.len() as u64,
            msg: format!("truncated pixel block, need {need} bytes"),
        });
    }
    Ok((0..h.n)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let o = 16 + (i * dim + j) * 8;
                    f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap())
                })
                .collect()
        })
        .collect())
}

pub fn load_dlb(path: &Path, role: Role) -> Result<Dataset> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let h = read_header(&bytes)?;
    let images = read_images(&bytes, &h)?;
    let dim = h.side * h.side;
    let labels_off = 16 + h.n * dim * 8;
    let need = labels_off + h.n * 4;
    if bytes.len() < need {
        return Err(Error::Format {
            offset: bytes.len() as u64,
            msg: format!("truncated label block, need {need} bytes"),
        });
    }
    let labels = (0..h.n)
        .map(|i| {
            let o = labels_off + i * 4;
            u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap()) as usize
        })
        .collect();
    Dataset::new(images, labels, h.side, h.classes, role)
}

/// Load only the pixel block: the label section is never read. This is the
/// entry point for self-supervised adaptation, which must not see labels.
pub fn load_dlb_images_only(path: &Path) -> Result<(Vec<Vec<f64>>, usize)> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let h = read_header(&bytes)?;
    let images = read_images(&bytes, &h)?;
    Ok((images, h.side))
}
