//! Benchmark fixtures for refined Severi computations.

use refsev_core::{HTransversePolygon, Preset};

/// Polygons and cogenera timed by the benches, smallest first.
pub fn workloads() -> Vec<(String, HTransversePolygon, i64)> {
    let cases = [
        (Preset::P2 { d: 3 }, 2),
        (Preset::P2 { d: 4 }, 3),
        (Preset::P2 { d: 5 }, 2),
        (Preset::Sigma { m: 1, c: 1, d: 2 }, 2),
        (Preset::Wps1mm { m: 3, d: 2 }, 2),
    ];
    cases
        .into_iter()
        .map(|(pre, delta)| {
            (
                format!("{pre} delta={delta}"),
                pre.polygon().expect("preset"),
                delta,
            )
        })
        .collect()
}
