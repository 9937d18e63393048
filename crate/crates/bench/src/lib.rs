//! Inputs shared by the benchmarks.

use crsym_core::{parse_surface, prepare, Hypersurface, WeightedSeries};

pub const E5: &str = "z^2*zb^2 + z^6*zb^2 + z^2*zb^6";

pub fn series(text: &str, truncation: u32) -> WeightedSeries {
    parse_surface(text, Some(truncation), None)
        .expect("benchmark input parses")
        .1
}

pub fn prepared(text: &str, truncation: u32) -> Hypersurface {
    prepare(&series(text, truncation))
        .expect("benchmark input is prepared")
        .surface
}
