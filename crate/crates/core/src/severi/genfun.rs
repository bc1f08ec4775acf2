use std::collections::BTreeMap;
use std::fmt;

use crate::combinatorics::Partition;
use crate::error::Result;
use crate::fock::{apply_b_diagonal, apply_divergence, inner_product, FockState};
use crate::ring::{LaurentY, RationalLaurentY};

use super::{guard_check, refined_severi, state_guard, Family};

/// Truncation orders: `q` (number of operator factors), `t` (curve class `d`)
/// and `s` (the fibre class `c` for `Σ_m`; ignored elsewhere).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenfunOrders {
    pub q: u32,
    pub t: u32,
    pub s: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenfunMismatch {
    pub s: u32,
    pub t: u32,
    pub q: u32,
    pub expected: LaurentY,
    pub got: RationalLaurentY,
}

impl fmt::Display for GenfunMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coefficient s^{} t^{} q^{}/{}!: expected {}, series gives {}",
            self.s, self.t, self.q, self.q, self.expected, self.got
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenfunReport {
    pub family: Family,
    pub orders: GenfunOrders,
    pub checked: usize,
    pub mismatch: Option<GenfunMismatch>,
}

impl GenfunReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl fmt::Display for GenfunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(
                f,
                "{}: {} coefficients match (s<={}, t<={}, q<={})",
                self.family, self.checked, self.orders.s, self.orders.t, self.orders.q
            ),
            Some(m) => write!(
                f,
                "{}: mismatch after {} coefficients, {m}",
                self.family, self.checked
            ),
        }
    }
}

/// Expands the generating-function side of the family by truncated
/// exponentials and compares each coefficient `s^c t^d q^n/n!` with the
/// refined Severi degree of class `(c, d)` and `δ = dim|L| - n` (zero if
/// `δ < 0`).
pub fn genfun_verify(family: Family, orders: GenfunOrders) -> Result<GenfunReport> {
    family.validate()?;
    let mut report = GenfunReport {
        family,
        orders,
        checked: 0,
        mismatch: None,
    };
    let observed = match family {
        Family::P2 => single_operator_series(1, 0, orders)?,
        Family::Sigma { m } => single_operator_series(m, orders.s, orders)?,
        Family::Wps11m { m } => single_operator_series(m, 0, orders)?,
        Family::Wps1mm { m } => {
            let (series, stray) = two_counter_series(m, orders)?;
            if let Some(bad) = stray {
                report.mismatch = Some(bad);
                return Ok(report);
            }
            series
        }
    };
    for ((c, d, n), got) in observed {
        let class: Vec<u32> = match family {
            Family::Sigma { .. } => vec![c, d],
            _ => vec![d],
        };
        let p = family.polygon(&class)?;
        let delta = p.dim() as i64 - n as i64;
        let expected = if delta < 0 {
            LaurentY::zero()
        } else {
            refined_severi(&p, delta)?
        };
        report.checked += 1;
        if got != RationalLaurentY::from(expected.clone()) {
            report.mismatch = Some(GenfunMismatch {
                s: c,
                t: d,
                q: n,
                expected,
                got,
            });
            break;
        }
    }
    Ok(report)
}

/// `⟨exp(a_1 s) exp(q H_m(t)) exp(a_{-1})⟩`, returned as `n!` times the
/// coefficient of `s^c t^d q^n`.
fn single_operator_series(
    m: u32,
    c_max: u32,
    orders: GenfunOrders,
) -> Result<BTreeMap<(u32, u32, u32), RationalLaurentY>> {
    let guard = state_guard();
    let cap = c_max as u64 + orders.t as u64 * m as u64;
    // exp(a_{-1}) v_∅ = Σ_k v_{(1^k),∅}, cut at the largest useful grading
    let mut ket = FockState::zero();
    for k in 0..=cap as u32 {
        ket.add_state(&FockState::from_parts(
            Partition::ones(k),
            Partition::empty(),
        ));
    }
    let t_len = orders.t as usize + 1;
    let mut by_t: Vec<FockState> = vec![FockState::zero(); t_len];
    by_t[0] = ket;
    let mut out = BTreeMap::new();
    for n in 0..=orders.q {
        if n > 0 {
            let mut next = vec![FockState::zero(); t_len];
            for d in 0..t_len {
                let mut acc = apply_b_diagonal(&by_t[d]);
                if d > 0 {
                    acc.add_state(&apply_divergence(&by_t[d - 1], m as i64, cap));
                }
                guard_check(&acc, guard)?;
                next[d] = acc;
            }
            by_t = next;
        }
        for c in 0..=c_max {
            let bra = FockState::from_parts(Partition::ones(c), Partition::empty());
            for (d, state) in by_t.iter().enumerate() {
                out.insert((c, d as u32, n), inner_product(&bra, state));
            }
        }
    }
    Ok(out)
}

/// `⟨exp(q G_{m-1}(s, t))⟩` with `s` marking `Div_{-1}` and `t` marking
/// `Div_{m-1}`. Coefficients with `s`-degree other than `(m-1)d` are checked to
/// vanish, then `s = 1` is taken. The first non-vanishing one is returned
/// alongside the series.
#[allow(clippy::type_complexity)]
fn two_counter_series(
    m: u32,
    orders: GenfunOrders,
) -> Result<(
    BTreeMap<(u32, u32, u32), RationalLaurentY>,
    Option<GenfunMismatch>,
)> {
    let guard = state_guard();
    let k = (m - 1) as i64;
    let cap = k as u64 * orders.t as u64;
    let s_len = 2 * cap as usize + 1;
    let t_len = orders.t as usize + 1;
    let mut grid: Vec<Vec<FockState>> = vec![vec![FockState::zero(); t_len]; s_len];
    grid[0][0] = FockState::vacuum();
    let vac = FockState::vacuum();
    let mut out = BTreeMap::new();
    let mut stray = None;
    for n in 0..=orders.q {
        if n > 0 {
            let mut next: Vec<Vec<FockState>> = vec![vec![FockState::zero(); t_len]; s_len];
            for a in 0..s_len {
                for d in 0..t_len {
                    let mut acc = apply_b_diagonal(&grid[a][d]);
                    if a > 0 {
                        acc.add_state(&apply_divergence(&grid[a - 1][d], -1, cap));
                    }
                    if d > 0 {
                        acc.add_state(&apply_divergence(&grid[a][d - 1], k, cap));
                    }
                    guard_check(&acc, guard)?;
                    next[a][d] = acc;
                }
            }
            grid = next;
        }
        for d in 0..t_len {
            let mut total = RationalLaurentY::zero();
            for (a, row) in grid.iter().enumerate() {
                let x = inner_product(&vac, &row[d]);
                if a as i64 != k * d as i64 && !x.is_zero() {
                    stray.get_or_insert(GenfunMismatch {
                        s: a as u32,
                        t: d as u32,
                        q: n,
                        expected: LaurentY::zero(),
                        got: x,
                    });
                    continue;
                }
                total += &x;
            }
            out.insert((0, d as u32, n), total);
        }
    }
    Ok((out, stray))
}
