use std::path::Path;

use serde::{Deserialize, Serialize};

use super::DiscreteMeasureSpace;
use crate::error::{io_err, Error, Result};

/// On-disk form of a custom space.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CustomSpaceFile {
    pub n: usize,
    /// Row-major `n × n` distance matrix.
    pub distances: Vec<f64>,
    pub masses: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_hint: Option<f64>,
}

impl CustomSpaceFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn into_space(self) -> Result<DiscreteMeasureSpace> {
        if self.masses.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: self.masses.len() });
        }
        DiscreteMeasureSpace::from_dense(self.distances, self.masses, self.kappa_hint)
    }
}

impl DiscreteMeasureSpace {
    /// Loads a custom space from its JSON file.
    pub fn load_custom(path: impl AsRef<Path>) -> Result<Self> {
        CustomSpaceFile::load(path)?.into_space()
    }

    /// Dyadic scales `r` (relative to the diameter) at which some annulus
    /// `{ r ≤ d(x, ·) < 2r }` around some point is empty. Empty output means
    /// annuli have positive measure at every probed scale.
    pub fn empty_annulus_scales(&self) -> Vec<f64> {
        let mut failing = Vec::new();
        let mut r = self.diameter() / 2.0;
        while r >= self.min_spacing() {
            let empty = (0..self.len()).any(|x| {
                !(0..self.len()).any(|y| {
                    let d = self.dist(x, y);
                    d >= r && d < 2.0 * r
                })
            });
            if empty {
                failing.push(r);
            }
            r /= 2.0;
        }
        failing
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.json");
        let spec = CustomSpaceFile {
            n: 3,
            distances: vec![0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0],
            masses: vec![0.5, 1.0, 0.5],
            kappa_hint: Some(1.0),
        };
        std::fs::write(&path, serde_json::to_string(&spec).unwrap()).unwrap();
        let s = DiscreteMeasureSpace::load_custom(&path).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.kappa(), 1.0);
        assert_eq!(s.total_measure(), 2.0);
        assert!(s.empty_annulus_scales().is_empty());
        assert!(DiscreteMeasureSpace::load_custom(dir.path().join("missing.json")).is_err());
    }

    #[test]
    fn gap_detected() {
        // two clusters far apart: small annuli around each point are empty
        let d = vec![0.0, 1.0, 64.0, 1.0, 0.0, 64.0, 64.0, 64.0, 0.0];
        let s = DiscreteMeasureSpace::from_dense(d, vec![1.0; 3], None).unwrap();
        assert!(!s.empty_annulus_scales().is_empty());
    }
}
