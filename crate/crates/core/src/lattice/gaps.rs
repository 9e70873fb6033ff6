use alloc::vec::Vec;

use super::BandStructure;

/// Gaps narrower than this are treated as numerical artifacts, GHz.
pub const MIN_GAP_WIDTH_GHZ: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandGap {
    /// Index of the band just below the gap.
    pub lower_band: usize,
    pub f_low: f64,
    pub f_high: f64,
    pub center: f64,
    pub width: f64,
    /// Open along the entire sampled path.
    pub complete: bool,
}

impl BandGap {
    pub fn relative_width(&self) -> f64 {
        self.width / self.center
    }
}

/// Complete gaps between consecutive bands, sorted by centre frequency.
pub fn detect_gaps(bs: &BandStructure) -> Vec<BandGap> {
    let n_bands = bs.n_bands();
    let mut gaps = Vec::new();
    for n in 0..n_bands.saturating_sub(1) {
        let top = bs.band(n).fold(f64::NEG_INFINITY, f64::max);
        let bottom = bs.band(n + 1).fold(f64::INFINITY, f64::min);
        let width = bottom - top;
        if width > MIN_GAP_WIDTH_GHZ {
            gaps.push(BandGap { lower_band: n, f_low: top, f_high: bottom, center: 0.5 * (top + bottom), width, complete: true });
        }
    }
    gaps.sort_by(|a, b| a.center.total_cmp(&b.center));
    gaps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::KPath;
    use alloc::vec;

    fn synthetic(rows: Vec<Vec<f64>>) -> BandStructure {
        let n = rows.len();
        BandStructure {
            path: KPath { points: vec![[0.0, 0.0]; n], distance: (0..n).map(|i| i as f64).collect(), vertices: [0, 0, 0, n - 1] },
            bands: rows,
            n_plane_waves: 9,
        }
    }

    #[test]
    fn two_band_fixture() {
        let bs = synthetic(vec![vec![0.0, 6.5], vec![3.0, 6.0], vec![4.0, 7.0]]);
        let gaps = detect_gaps(&bs);
        assert_eq!(gaps.len(), 1);
        let g = gaps[0];
        assert_eq!((g.f_low, g.f_high, g.center, g.width), (4.0, 6.0, 5.0, 2.0));
        assert!(g.complete);
        assert_eq!(g.lower_band, 0);
    }

    #[test]
    fn overlapping_bands_and_slivers_are_not_gaps() {
        let bs = synthetic(vec![vec![1.0, 2.0, 3.0005], vec![2.5, 3.0, 4.0]]);
        assert!(detect_gaps(&bs).is_empty());
    }

    #[test]
    fn gaps_sorted_by_center() {
        let bs = synthetic(vec![vec![1.0, 2.0, 5.0], vec![1.5, 3.0, 6.0]]);
        let gaps = detect_gaps(&bs);
        assert_eq!(gaps.len(), 2);
        assert!(gaps[0].center < gaps[1].center);
        assert_eq!(gaps[1].lower_band, 1);
    }
}
