//! Grayscale intensities for viewing an LDM as an image.
//!
//! Row `r` of the image is labeling index `r` (index 0 at the top) and
//! column `i` is training run `i`. Brighter pixels mean higher probability.

use crate::error::{argument, Result};
use crate::ldm::{LDMatrix, SMOOTHING_EPSILON};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    /// Probability divided by the largest entry in the matrix.
    #[default]
    Linear,
    /// `[ln eps, ln max]` mapped onto `[0, 1]`, with eps the smoothing floor.
    Log,
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Linear => "linear",
            Scale::Log => "log",
        })
    }
}

impl FromStr for Scale {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Scale::Linear),
            "log" => Ok(Scale::Log),
            other => Err(argument(format!(
                "unknown scale `{other}`, expected linear or log"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatmapConfig {
    pub scale: Scale,
    /// Display exponent applied to the normalized value.
    pub gamma: f64,
    pub invert: bool,
}

impl Default for HeatmapConfig {
    fn default() -> Self {
        HeatmapConfig {
            scale: Scale::Linear,
            gamma: 1.0,
            invert: false,
        }
    }
}

impl HeatmapConfig {
    pub fn new(scale: Scale, gamma: f64, invert: bool) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(argument(format!("gamma must be positive, got {gamma}")));
        }
        Ok(HeatmapConfig {
            scale,
            gamma,
            invert,
        })
    }

    /// Maps a probability to `0..=255` given the matrix maximum.
    pub fn pixel(&self, p: f64, max: f64) -> u8 {
        let v = match self.scale {
            Scale::Linear => {
                if max > 0.0 {
                    p / max
                } else {
                    0.0
                }
            }
            Scale::Log => {
                let lo = libm::log(SMOOTHING_EPSILON);
                let hi = libm::log(max);
                if hi <= lo {
                    if p >= max {
                        1.0
                    } else {
                        0.0
                    }
                } else if p > 0.0 {
                    (libm::log(p) - lo) / (hi - lo)
                } else {
                    0.0
                }
            }
        };
        let v = v.clamp(0.0, 1.0);
        let level = libm::round(255.0 * libm::pow(v, self.gamma)) as u8;
        if self.invert {
            255 - level
        } else {
            level
        }
    }
}

/// Row-major `rows x cols` pixel levels of `ldm`.
pub fn intensities(ldm: &LDMatrix, config: &HeatmapConfig) -> Vec<u8> {
    let max = ldm.max_entry();
    let (rows, cols) = (ldm.rows(), ldm.cols());
    let mut pixels = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        pixels.extend((0..cols).map(|c| config.pixel(ldm.get(r, c), max)));
    }
    pixels
}
