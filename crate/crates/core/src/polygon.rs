//! h-transverse lattice polygons described by `(d_top, d_bottom, r, l)`.

use std::fmt;
use std::str::FromStr;

use crate::combinatorics::IntMultiset;
use crate::error::{Error, Result};

/// A convex lattice polygon whose edges have slope 0, infinity or `1/k`.
///
/// `right` and `left` hold the outward-normal slopes of the right and left
/// boundary edges, each repeated by its lattice length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HTransversePolygon {
    d_top: u32,
    d_bottom: u32,
    right: IntMultiset,
    left: IntMultiset,
}

impl HTransversePolygon {
    pub fn new(d_top: u32, d_bottom: u32, right: IntMultiset, left: IntMultiset) -> Result<Self> {
        if right.len() != left.len() {
            return Err(Error::HeightMismatch {
                right: right.len(),
                left: left.len(),
            });
        }
        let top_side = d_top as i64 + right.norm();
        let bottom_side = d_bottom as i64 + left.norm();
        if top_side != bottom_side {
            return Err(Error::Unbalanced {
                top_side,
                bottom_side,
            });
        }
        let p = Self {
            d_top,
            d_bottom,
            right,
            left,
        };
        if let Some((row, &width)) = p.signed_widths().iter().enumerate().find(|(_, w)| **w < 0) {
            return Err(Error::NegativeWidth { row, width });
        }
        Ok(p)
    }

    pub fn d_top(&self) -> u32 {
        self.d_top
    }

    pub fn d_bottom(&self) -> u32 {
        self.d_bottom
    }

    pub fn right(&self) -> &IntMultiset {
        &self.right
    }

    pub fn left(&self) -> &IntMultiset {
        &self.left
    }

    /// `h = |r| = |l|`.
    pub fn height(&self) -> usize {
        self.right.len() as usize
    }

    fn signed_widths(&self) -> Vec<i64> {
        // Right steps descending and left steps ascending keep the row widths
        // concave, which is the convex reconstruction.
        let mut r = self.right.values();
        r.reverse();
        let l = self.left.values();
        let mut widths = Vec::with_capacity(r.len() + 1);
        let mut w = self.d_top as i64;
        widths.push(w);
        for (a, b) in r.iter().zip(&l) {
            w += a - b;
            widths.push(w);
        }
        widths
    }

    /// Lattice lengths of the horizontal rows, top to bottom (`h + 1` entries).
    pub fn reconstruct_widths(&self) -> Vec<u64> {
        self.signed_widths().into_iter().map(|w| w as u64).collect()
    }

    /// `#Δ`, the number of lattice points.
    pub fn lattice_point_count(&self) -> u64 {
        self.reconstruct_widths().iter().map(|w| w + 1).sum()
    }

    /// `dim |L| = #Δ - 1`.
    pub fn dim(&self) -> u64 {
        self.lattice_point_count() - 1
    }

    /// Number of interior lattice points (arithmetic genus of the curves).
    pub fn interior_point_count(&self) -> u64 {
        let w = self.reconstruct_widths();
        if w.len() < 3 {
            return 0;
        }
        w[1..w.len() - 1].iter().map(|x| x.saturating_sub(1)).sum()
    }

    /// Grading bound used by the matrix-element dynamic program: the Fock
    /// grading after consuming any subset of the divergence blocks never
    /// exceeds this value.
    pub fn grading_cap(&self) -> u64 {
        let extra_l: i64 = self.left.iter().map(|(v, m)| v.max(0) * m as i64).sum();
        let extra_r: i64 = self.right.iter().map(|(v, m)| (-v).max(0) * m as i64).sum();
        self.d_bottom as u64 + extra_l as u64 + extra_r as u64
    }
}

impl fmt::Display for HTransversePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dt={};db={};r={};l={}",
            self.d_top, self.d_bottom, self.right, self.left
        )
    }
}

/// The named polygon families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `(P^2, O(d))`.
    P2 { d: u32 },
    /// `(Σ_m, cF + dH)`.
    Sigma { m: u32, c: u32, d: u32 },
    /// `(P(1,1,m), dH)`.
    Wps11m { m: u32, d: u32 },
    /// `(P(1,m-1,m), dH)`.
    Wps1mm { m: u32, d: u32 },
}

impl Preset {
    pub fn polygon(&self) -> Result<HTransversePolygon> {
        match *self {
            Preset::P2 { d } => HTransversePolygon::new(
                0,
                d,
                IntMultiset::repeated(1, d),
                IntMultiset::repeated(0, d),
            ),
            Preset::Sigma { m, c, d } => {
                if m == 0 {
                    return Err(Error::InvalidParameter("sigma requires m >= 1".into()));
                }
                HTransversePolygon::new(
                    c,
                    c + d * m,
                    IntMultiset::repeated(m as i64, d),
                    IntMultiset::repeated(0, d),
                )
            }
            Preset::Wps11m { m, d } => {
                if m == 0 {
                    return Err(Error::InvalidParameter("wps11m requires m >= 1".into()));
                }
                Preset::Sigma { m, c: 0, d }.polygon()
            }
            Preset::Wps1mm { m, d } => {
                if m < 2 {
                    return Err(Error::InvalidParameter("wps1mm requires m >= 2".into()));
                }
                let right = IntMultiset::from_pairs([(-1, d * (m - 1)), (m as i64 - 1, d)]);
                HTransversePolygon::new(0, 0, right, IntMultiset::repeated(0, d * m))
            }
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::P2 { d } => write!(f, "p2:d={d}"),
            Preset::Sigma { m, c, d } => write!(f, "sigma:m={m},c={c},d={d}"),
            Preset::Wps11m { m, d } => write!(f, "wps11m:m={m},d={d}"),
            Preset::Wps1mm { m, d } => write!(f, "wps1mm:m={m},d={d}"),
        }
    }
}

fn parse_kv(body: &str) -> Result<Vec<(String, String)>> {
    body.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {kv:?}")))
        })
        .collect()
}

fn param(kvs: &[(String, String)], key: &str, default: Option<u32>) -> Result<u32> {
    match kvs.iter().find(|(k, _)| k == key) {
        Some((_, v)) => v.parse().map_err(|_| {
            Error::InvalidParameter(format!("{key}={v} is not a non-negative integer"))
        }),
        None => default.ok_or_else(|| Error::InvalidParameter(format!("missing parameter {key}"))),
    }
}

impl FromStr for Preset {
    type Err = Error;

    /// `"p2:d=3"`, `"sigma:m=1,c=0,d=3"`, `"wps11m:m=2,d=2"`, `"wps1mm:m=3,d=1"`.
    fn from_str(s: &str) -> Result<Self> {
        let (family, body) = s.split_once(':').unwrap_or((s, ""));
        let kvs = parse_kv(body)?;
        let known: &[&str] = match family.trim() {
            "p2" => &["d"],
            "sigma" => &["m", "c", "d"],
            "wps11m" | "wps1mm" => &["m", "d"],
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        if let Some((k, _)) = kvs.iter().find(|(k, _)| !known.contains(&k.as_str())) {
            return Err(Error::InvalidParameter(format!(
                "unknown parameter {k:?} for {family}"
            )));
        }
        Ok(match family.trim() {
            "p2" => Preset::P2 {
                d: param(&kvs, "d", None)?,
            },
            "sigma" => Preset::Sigma {
                m: param(&kvs, "m", None)?,
                c: param(&kvs, "c", Some(0))?,
                d: param(&kvs, "d", None)?,
            },
            "wps11m" => Preset::Wps11m {
                m: param(&kvs, "m", None)?,
                d: param(&kvs, "d", None)?,
            },
            _ => Preset::Wps1mm {
                m: param(&kvs, "m", None)?,
                d: param(&kvs, "d", None)?,
            },
        })
    }
}

/// Parses either a preset (`"p2:d=3"`) or the raw form `"dt=0;db=3;r=1^3;l=0^3"`.
impl FromStr for HTransversePolygon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if !s.contains(';') && !s.starts_with("dt=") {
            return s.parse::<Preset>()?.polygon();
        }
        let mut dt = None;
        let mut db = None;
        let mut r = None;
        let mut l = None;
        for field in s.split(';').filter(|f| !f.trim().is_empty()) {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {field:?}")))?;
            let bad = |_| Error::Parse(format!("{k}={v} is not a non-negative integer"));
            match k.trim() {
                "dt" => dt = Some(v.trim().parse::<u32>().map_err(bad)?),
                "db" => db = Some(v.trim().parse::<u32>().map_err(bad)?),
                "r" => r = Some(v.parse::<IntMultiset>()?),
                "l" => l = Some(v.parse::<IntMultiset>()?),
                other => return Err(Error::Parse(format!("unknown polygon field {other:?}"))),
            }
        }
        let missing = |name: &str| Error::Parse(format!("polygon is missing field {name}"));
        HTransversePolygon::new(
            dt.ok_or_else(|| missing("dt"))?,
            db.ok_or_else(|| missing("db"))?,
            r.ok_or_else(|| missing("r"))?,
            l.ok_or_else(|| missing("l"))?,
        )
    }
}
