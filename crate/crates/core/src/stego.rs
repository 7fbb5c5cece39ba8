//! Single-plane embedding in binary or Fibonacci-p virtual bit-planes.
//!
//! A pixel carries a bit only if it is *eligible*: both settings of digit `l`
//! in its codeword are valid codewords of in-range values. Setting the digit
//! preserves eligibility, so the extractor re-identifies carrier pixels from
//! the stego image alone. Ineligible pixels are copied through unchanged, and
//! every changed pixel moves by exactly `W(l)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::imageio::GrayImage;
use crate::numsys::NumberSystem;
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraversalMode {
    /// Row-major.
    Sequential,
    /// Fisher–Yates shuffle of pixel indices driven by `SplitMix64(seed)`.
    SeededPermutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedConfig {
    system: NumberSystem,
    plane: usize,
    seed: u64,
    mode: TraversalMode,
}

impl EmbedConfig {
    pub fn new(system: NumberSystem, plane: usize, seed: u64, mode: TraversalMode) -> Result<Self> {
        if plane >= system.planes() {
            return Err(Error::PlaneOutOfRange {
                plane,
                planes: system.planes(),
            });
        }
        Ok(Self {
            system,
            plane,
            seed,
            mode,
        })
    }

    pub fn system(&self) -> &NumberSystem {
        &self.system
    }

    pub fn plane(&self) -> usize {
        self.plane
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn mode(&self) -> TraversalMode {
        self.mode
    }

    fn check_image(&self, image: &GrayImage) -> Result<()> {
        if image.depth() != self.system.depth() {
            return Err(Error::DepthMismatch {
                image: image.depth(),
                system: self.system.depth(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StegoResult {
    pub stego_image: GrayImage,
    pub embedded_count: usize,
    /// Pixels of the cover that are ineligible at the plane.
    pub skipped_pixels: usize,
    /// `embedded_count / pixel_count`.
    pub capacity_ratio: f64,
}

pub fn eligible(system: &NumberSystem, value: u64, plane: usize) -> bool {
    if plane >= system.planes() {
        return false;
    }
    match system.decompose(value) {
        Ok(cw) => cw.with_bit(plane, false).is_valid() && cw.with_bit(plane, true).is_valid(),
        Err(_) => false,
    }
}

/// Pixel visiting order for `len` pixels.
pub fn traversal_order(len: usize, mode: TraversalMode, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..len).collect();
    if mode == TraversalMode::SeededPermutation {
        let mut rng = SplitMix64::new(seed);
        for i in (1..len).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            order.swap(i, j);
        }
    }
    order
}

/// Number of eligible pixels, i.e. the most bits `embed` can place.
pub fn capacity(image: &GrayImage, cfg: &EmbedConfig) -> Result<usize> {
    cfg.check_image(image)?;
    Ok(image
        .samples()
        .iter()
        .filter(|&&s| eligible(&cfg.system, s.into(), cfg.plane))
        .count())
}

pub fn embed(cover: &GrayImage, message: &[bool], cfg: &EmbedConfig) -> Result<StegoResult> {
    cfg.check_image(cover)?;
    if message.is_empty() {
        return Err(Error::EmptyMessage);
    }
    let mut stego = cover.clone();
    let mut bits = message.iter();
    let mut next = bits.next();
    let mut embedded = 0;
    let mut skipped = 0;

    let samples = stego.samples_mut();
    for idx in traversal_order(samples.len(), cfg.mode, cfg.seed) {
        let v = u64::from(samples[idx]);
        if !eligible(&cfg.system, v, cfg.plane) {
            skipped += 1;
            continue;
        }
        let Some(&bit) = next else { continue };
        let cw = cfg.system.decompose(v)?.with_bit(cfg.plane, bit);
        samples[idx] = cw.value() as u16;
        embedded += 1;
        next = bits.next();
    }

    if next.is_some() {
        return Err(Error::CapacityExceeded {
            requested: message.len(),
            available: embedded,
        });
    }
    let pixels = stego.len();
    Ok(StegoResult {
        stego_image: stego,
        embedded_count: embedded,
        skipped_pixels: skipped,
        capacity_ratio: embedded as f64 / pixels as f64,
    })
}

pub fn extract(stego: &GrayImage, count: usize, cfg: &EmbedConfig) -> Result<Vec<bool>> {
    cfg.check_image(stego)?;
    let samples = stego.samples();
    let mut out = Vec::with_capacity(count);
    for idx in traversal_order(samples.len(), cfg.mode, cfg.seed) {
        if out.len() == count {
            break;
        }
        let v = u64::from(samples[idx]);
        if eligible(&cfg.system, v, cfg.plane) {
            out.push(cfg.system.decompose(v)?.bit(cfg.plane));
        }
    }
    if out.len() < count {
        return Err(Error::CapacityExceeded {
            requested: count,
            available: out.len(),
        });
    }
    Ok(out)
}
