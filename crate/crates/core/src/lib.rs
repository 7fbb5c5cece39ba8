//! Generalized Fibonacci-p number systems and their use for bit-plane data hiding.
//!
//! The crate is organised bottom-up:
//!
//! * [`sequence`] generates `F_p(n)` exactly and the ratio sequence `F_p(n+1)/F_p(n)`.
//! * [`root`] locates `α_p`, the positive root of `x^(p+1) - x^p - 1`, on a
//!   certified bracket.
//! * [`lemmas`] and [`bounds`] check the root inequalities and the exponential
//!   bounds `α_p^(n-p) < F_p(n) < α_p^n`, `F_p(n) <= 2^(n-p)` using exact
//!   dyadic arithmetic on the root bracket.
//! * [`numsys`] maps pixel values onto binary or Fibonacci-p virtual bit-planes.
//! * [`stego`] embeds and extracts bits in a single (virtual) plane.
//! * [`metrics`] measures MSE / WSE / WMSE / PSNR and compares number systems.
//! * [`imageio`] reads and writes PGM and synthesises deterministic covers.

pub mod bounds;
pub mod dyadic;
pub mod error;
pub mod imageio;
pub mod lemmas;
pub mod metrics;
pub mod numsys;
pub mod rng;
pub mod root;
pub mod sequence;
pub mod stego;
pub mod tables;

mod serde_big;

pub use bounds::{verify_bounds, BoundKind, BoundReport, BoundRow, BoundViolation, Verdict};
pub use error::{Error, Result};
pub use imageio::{read_pgm, synth, write_pgm, GrayImage, PgmFormat, SynthKind};
pub use lemmas::{check_lemma3, check_lemma4, Lemma3Record, Lemma4Report};
pub use metrics::{
    compare, mse, psnr, psnr_from_mse, weight_sandwich, wmse, wse, CompareRow, DistortionReport,
    Payload, Psnr, SandwichCheck, SandwichIndexing,
};
pub use numsys::{build_system, Codeword, NumberSystem, SystemKind};
pub use rng::SplitMix64;
pub use root::{find_alpha, newton_alpha, AlphaRoot, DEFAULT_TOLERANCE};
pub use sequence::{generate_sequence, ratio_sequence, PSequence, RatioSequence};
pub use stego::{
    capacity, eligible, embed, extract, traversal_order, EmbedConfig, StegoResult, TraversalMode,
};
