//! Grayscale images, PGM (P2/P5) serialization and synthetic covers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrayImage {
    width: usize,
    height: usize,
    depth: u32,
    samples: Vec<u16>,
}

impl GrayImage {
    /// Row-major samples; depth must be 8 or 16.
    pub fn new(width: usize, height: usize, depth: u32, samples: Vec<u16>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!("empty image {width}x{height}")));
        }
        if depth != 8 && depth != 16 {
            return Err(Error::UnsupportedDepth(depth));
        }
        if samples.len() != width * height {
            return Err(Error::InvalidImage(format!(
                "{} samples for a {width}x{height} image",
                samples.len()
            )));
        }
        let max = max_for_depth(depth);
        if let Some(&s) = samples.iter().find(|&&s| u32::from(s) > max) {
            return Err(Error::SampleOutOfRange {
                sample: s.into(),
                maxval: max,
            });
        }
        Ok(Self {
            width,
            height,
            depth,
            samples,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn samples(&self) -> &[u16] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn max_value(&self) -> u32 {
        max_for_depth(self.depth)
    }

    pub fn get(&self, x: usize, y: usize) -> u16 {
        self.samples[y * self.width + x]
    }

    pub(crate) fn samples_mut(&mut self) -> &mut [u16] {
        &mut self.samples
    }

    pub fn same_shape(&self, other: &GrayImage) -> bool {
        self.width == other.width && self.height == other.height && self.depth == other.depth
    }
}

fn max_for_depth(depth: u32) -> u32 {
    (1u32 << depth) - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmFormat {
    /// ASCII raster.
    P2,
    /// Binary raster; 16-bit samples big-endian.
    P5,
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&c) = self.data.get(self.pos) {
            if c == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(if self.pos >= self.data.len() {
                Error::MalformedHeader(format!("missing {what}"))
            } else {
                Error::MalformedHeader(format!("expected {what} at byte {start}"))
            });
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedHeader(format!("{what} does not fit in 32 bits")))
    }
}

pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let format = match bytes.get(..2) {
        Some(b"P2") => PgmFormat::P2,
        Some(b"P5") => PgmFormat::P5,
        _ => return Err(Error::MalformedHeader("magic is not P2 or P5".into())),
    };
    let mut cur = Cursor {
        data: bytes,
        pos: 2,
    };
    if !cur
        .data
        .get(2)
        .is_some_and(|c| c.is_ascii_whitespace() || *c == b'#')
    {
        return Err(Error::MalformedHeader("no separator after magic".into()));
    }
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval = cur.number("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(Error::UnsupportedMaxval(maxval));
    }
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader(format!(
            "zero dimension {width}x{height}"
        )));
    }
    let depth = if maxval <= 255 { 8 } else { 16 };
    let count = width
        .checked_mul(height)
        .ok_or_else(|| Error::MalformedHeader("dimensions overflow".into()))?;

    let check = |s: u32| {
        if s > maxval {
            Err(Error::SampleOutOfRange { sample: s, maxval })
        } else {
            Ok(s as u16)
        }
    };

    let samples = match format {
        PgmFormat::P2 => {
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                cur.skip_space_and_comments();
                if cur.pos >= bytes.len() {
                    return Err(Error::TruncatedData);
                }
                let v = cur.number("sample").map_err(|e| match e {
                    Error::MalformedHeader(m) => Error::InvalidImage(m),
                    e => e,
                })?;
                out.push(check(v)?);
            }
            out
        }
        PgmFormat::P5 => {
            // Exactly one whitespace byte separates maxval from the raster.
            match bytes.get(cur.pos) {
                Some(c) if c.is_ascii_whitespace() => cur.pos += 1,
                Some(_) => return Err(Error::MalformedHeader("no separator before raster".into())),
                None => return Err(Error::TruncatedData),
            }
            let raster = &bytes[cur.pos..];
            let width_bytes = if depth == 8 { 1 } else { 2 };
            if raster.len() < count * width_bytes {
                return Err(Error::TruncatedData);
            }
            if depth == 8 {
                raster[..count]
                    .iter()
                    .map(|&b| check(b.into()))
                    .collect::<Result<_>>()?
            } else {
                raster[..count * 2]
                    .chunks_exact(2)
                    .map(|c| check(u16::from_be_bytes([c[0], c[1]]).into()))
                    .collect::<Result<_>>()?
            }
        }
    };
    GrayImage::new(width, height, depth, samples)
}

/// Canonical PGM: `P5 <w> <h> <maxval>\n` then the raster. P2 rasters put
/// one image row per line, samples separated by single spaces.
pub fn write_pgm(image: &GrayImage, format: PgmFormat) -> Vec<u8> {
    let magic = match format {
        PgmFormat::P2 => "P2",
        PgmFormat::P5 => "P5",
    };
    let mut out = format!(
        "{magic} {} {} {}\n",
        image.width,
        image.height,
        image.max_value()
    )
    .into_bytes();
    match format {
        PgmFormat::P2 => {
            for row in image.samples.chunks(image.width) {
                let line: Vec<String> = row.iter().map(u16::to_string).collect();
                out.extend_from_slice(line.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
        PgmFormat::P5 if image.depth == 8 => out.extend(image.samples.iter().map(|&s| s as u8)),
        PgmFormat::P5 => {
            for &s in &image.samples {
                out.extend_from_slice(&s.to_be_bytes());
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthKind {
    Constant(u16),
    /// Horizontal ramp `x · max / (w - 1)`, identical on every row.
    Gradient,
    /// Row-major `SplitMix64(seed)` outputs, top `depth` bits of each.
    SeededNoise(u64),
}

pub fn synth(kind: SynthKind, width: usize, height: usize, depth: u32) -> Result<GrayImage> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidImage(format!("empty image {width}x{height}")));
    }
    if depth != 8 && depth != 16 {
        return Err(Error::UnsupportedDepth(depth));
    }
    let max = max_for_depth(depth) as u64;
    let count = width * height;
    let samples = match kind {
        SynthKind::Constant(v) => vec![v; count],
        SynthKind::Gradient => (0..count)
            .map(|i| {
                let x = (i % width) as u64;
                if width == 1 {
                    0
                } else {
                    (x * max / (width as u64 - 1)) as u16
                }
            })
            .collect(),
        SynthKind::SeededNoise(seed) => {
            let mut rng = SplitMix64::new(seed);
            (0..count)
                .map(|_| (rng.next_u64() >> (64 - depth)) as u16)
                .collect()
        }
    };
    GrayImage::new(width, height, depth, samples)
}
