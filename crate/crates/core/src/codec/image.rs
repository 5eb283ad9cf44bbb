use serde::{Deserialize, Serialize};

use super::check_n;
use crate::{Error, Result};

/// A `2^n × 2^n` grayscale image, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrayImage {
    n: u32,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(n: u32, pixels: Vec<u8>) -> Result<Self> {
        check_n(n)?;
        let expected = 1usize << (2 * n);
        if pixels.len() != expected {
            return Err(Error::InvalidImage(format!(
                "{} pixels for a {s}x{s} image (need {expected})",
                pixels.len(),
                s = 1usize << n
            )));
        }
        Ok(Self { n, pixels })
    }

    pub fn filled(n: u32, value: u8) -> Result<Self> {
        check_n(n)?;
        Self::new(n, vec![value; 1 << (2 * n)])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn side(&self) -> usize {
        1 << self.n
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.side() + col]
    }
}

/// A `2^n × 2^n` RGB image, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorImage {
    n: u32,
    pixels: Vec<[u8; 3]>,
}

impl ColorImage {
    pub fn new(n: u32, pixels: Vec<[u8; 3]>) -> Result<Self> {
        check_n(n)?;
        let expected = 1usize << (2 * n);
        if pixels.len() != expected {
            return Err(Error::InvalidImage(format!(
                "{} pixels for a {s}x{s} image (need {expected})",
                pixels.len(),
                s = 1usize << n
            )));
        }
        Ok(Self { n, pixels })
    }

    pub fn filled(n: u32, rgb: [u8; 3]) -> Result<Self> {
        check_n(n)?;
        Self::new(n, vec![rgb; 1 << (2 * n)])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn side(&self) -> usize {
        1 << self.n
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_is_checked() {
        assert!(GrayImage::new(1, vec![0; 4]).is_ok());
        assert!(GrayImage::new(1, vec![0; 5]).is_err());
        assert!(GrayImage::new(0, vec![0; 1]).is_err());
        assert!(ColorImage::new(2, vec![[0; 3]; 16]).is_ok());
        assert!(ColorImage::new(2, vec![[0; 3]; 4]).is_err());
    }

    #[test]
    fn row_major_access() {
        let img = GrayImage::new(1, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(img.get(1, 0), 3);
        assert_eq!(img.side(), 2);
    }
}
