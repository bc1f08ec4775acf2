use refsev_core::combinatorics::{partitions, Partition};
use refsev_core::oracle::{floor_relative, floor_severi, wick_severi};
use refsev_core::polygon::{HTransversePolygon, Preset};
use refsev_core::severi::{refined_relative, refined_severi};

fn presets() -> Vec<Preset> {
    let mut out = Vec::new();
    for d in 1..=3 {
        out.push(Preset::P2 { d });
    }
    for m in 1..=2 {
        for c in 0..=2 {
            for d in 0..=2 {
                if c + d > 0 {
                    out.push(Preset::Sigma { m, c, d });
                }
            }
        }
    }
    for m in 1..=3 {
        for d in 1..=2 {
            out.push(Preset::Wps11m { m, d });
        }
    }
    for m in 2..=3 {
        for d in 1..=2 {
            out.push(Preset::Wps1mm { m, d });
        }
    }
    out
}

#[test]
fn floor_matches_fock() {
    for pre in presets() {
        let p = pre.polygon().unwrap();
        for delta in 0..=3.min(p.dim() as i64 + 1) {
            assert_eq!(
                floor_severi(&p, delta).unwrap(),
                refined_severi(&p, delta).unwrap(),
                "{pre} delta={delta}"
            );
        }
    }
}

fn splits(n: u32) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for k in 0..=n {
        for a in partitions(k as u64) {
            for b in partitions((n - k) as u64) {
                out.push((a.clone(), b));
            }
        }
    }
    out
}

fn check_relative(p: &HTransversePolygon, max_delta: i64) {
    for (alpha, beta) in splits(p.d_bottom()) {
        for delta in 0..=max_delta {
            assert_eq!(
                floor_relative(p, delta, &alpha, &beta).unwrap(),
                refined_relative(p, delta, &alpha, &beta).unwrap(),
                "{p} delta={delta} alpha={alpha} beta={beta}"
            );
        }
    }
}

#[test]
fn relative_floor_matches_fock() {
    check_relative(&Preset::P2 { d: 2 }.polygon().unwrap(), 2);
    check_relative(&Preset::P2 { d: 3 }.polygon().unwrap(), 2);
    check_relative(&Preset::Sigma { m: 1, c: 1, d: 2 }.polygon().unwrap(), 2);
    check_relative(&Preset::Wps1mm { m: 2, d: 2 }.polygon().unwrap(), 2);
}

#[test]
fn wick_matches_fock() {
    let cases = [
        Preset::P2 { d: 1 },
        Preset::P2 { d: 2 },
        Preset::Sigma { m: 1, c: 1, d: 1 },
        Preset::Wps1mm { m: 2, d: 1 },
    ];
    for pre in cases {
        let p = pre.polygon().unwrap();
        for delta in 0..=3 {
            for (alpha, beta) in splits(p.d_bottom()) {
                let Ok(w) = wick_severi(&p, delta, &alpha, &beta) else {
                    continue;
                };
                assert_eq!(
                    w,
                    refined_relative(&p, delta, &alpha, &beta).unwrap(),
                    "{pre} delta={delta} alpha={alpha} beta={beta}"
                );
            }
        }
    }
}
