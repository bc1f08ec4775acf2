//! Vacuum expectation values by Wick contraction.
//!
//! Every annihilator must be contracted with a creator of the other colour and
//! opposite index standing to its right; the pair contributes `[i]_y`.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::combinatorics::{divergence_profiles, partitions, quantum_weight, Partition};
use crate::error::{Error, Result};
use crate::fock::{Colour, Generator};
use crate::polygon::HTransversePolygon;
use crate::ring::{LaurentY, RationalLaurentY};

/// Largest number of operator factors `wick_severi` accepts.
pub const MAX_WICK_FACTORS: usize = 10;

/// A normally ordered block of generators with its normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WickFactor {
    /// `a_{-μ} a_ν / (μ! ν!)`, one term of a divergence operator.
    Div { mu: Partition, nu: Partition },
    /// `b_{-k} b_k`, one term of the b-diagonal operator.
    BDiag(u32),
    /// `b_{-k}`.
    BCreate(u32),
    /// `a_{-β} / β!`.
    ACreate(Partition),
    /// `a_1^c / c!`.
    AAnnihilate(u32),
}

fn gen(colour: Colour, index: i64) -> Generator {
    Generator::new(colour, index).expect("non-zero index")
}

impl WickFactor {
    /// Generators (leftmost first) and the denominator.
    pub fn expand(&self) -> (Vec<Generator>, BigUint) {
        let mut word = Vec::new();
        let mut den = BigUint::one();
        match self {
            WickFactor::Div { mu, nu } => {
                for (j, m) in mu.iter() {
                    word.extend(std::iter::repeat_n(gen(Colour::A, -(j as i64)), m as usize));
                }
                for (j, m) in nu.iter() {
                    word.extend(std::iter::repeat_n(gen(Colour::A, j as i64), m as usize));
                }
                den = mu.mult_factorial() * nu.mult_factorial();
            }
            WickFactor::BDiag(k) => {
                word.push(gen(Colour::B, -(*k as i64)));
                word.push(gen(Colour::B, *k as i64));
            }
            WickFactor::BCreate(k) => word.push(gen(Colour::B, -(*k as i64))),
            WickFactor::ACreate(beta) => {
                for (j, m) in beta.iter() {
                    word.extend(std::iter::repeat_n(gen(Colour::A, -(j as i64)), m as usize));
                }
                den = beta.mult_factorial();
            }
            WickFactor::AAnnihilate(c) => {
                word.extend(std::iter::repeat_n(gen(Colour::A, 1), *c as usize));
                den = crate::combinatorics::factorial(*c as u64);
            }
        }
        (word, den)
    }
}

/// `⟨∅| g_1 g_2 … g_n |∅⟩`.
pub fn wick_vev(word: &[Generator]) -> LaurentY {
    let Some((first, rest)) = word.split_first() else {
        return LaurentY::one();
    };
    if first.index() < 0 {
        return LaurentY::zero();
    }
    let mut total = LaurentY::zero();
    for (k, g) in rest.iter().enumerate() {
        if g.colour() != first.colour() && g.index() == -first.index() {
            let mut remaining = rest.to_vec();
            remaining.remove(k);
            let sub = wick_vev(&remaining);
            if !sub.is_zero() {
                total += &(&sub * &LaurentY::quantum_integer(first.index()));
            }
        }
    }
    total
}

/// `⟨∅| F_1 F_2 … F_n |∅⟩` for normalized factors.
pub fn wick_factor_vev(factors: &[WickFactor]) -> RationalLaurentY {
    let mut word = Vec::new();
    let mut den = BigUint::one();
    for f in factors {
        let (w, d) = f.expand();
        word.extend(w);
        den *= d;
    }
    RationalLaurentY::new(wick_vev(&word), BigInt::from(den))
}

/// Uncontracted creators standing to the right of the current position.
#[derive(Clone, Debug, Default)]
struct Pending {
    a: Vec<u32>,
    b: Vec<u32>,
}

impl Pending {
    fn slot(v: &mut Vec<u32>, k: usize) -> &mut u32 {
        if v.len() <= k {
            v.resize(k + 1, 0);
        }
        &mut v[k]
    }

    fn grading(&self) -> u64 {
        weighted(&self.a) + weighted(&self.b)
    }

    /// Applies one generator; returns the number of contractions it admits.
    fn apply(&mut self, g: Generator) -> u32 {
        let k = g.index().unsigned_abs() as usize;
        let (own, other) = match g.colour() {
            Colour::A => (&mut self.a, &mut self.b),
            Colour::B => (&mut self.b, &mut self.a),
        };
        if g.index() < 0 {
            *Self::slot(own, k) += 1;
            1
        } else {
            let m = Self::slot(other, k);
            let n = *m;
            if n > 0 {
                *m -= 1;
            }
            n
        }
    }
}

fn weighted(v: &[u32]) -> u64 {
    v.iter()
        .enumerate()
        .map(|(i, &m)| i as u64 * m as u64)
        .sum()
}

struct Search<'a> {
    profile: &'a [i64],
    cap: u64,
    bra: u32,
    total: RationalLaurentY,
}

impl Search<'_> {
    /// Applies a factor to the pending creators, returning the contraction
    /// weight or `None` when some annihilator has no partner.
    fn apply(pending: &mut Pending, f: &WickFactor) -> Option<(LaurentY, BigUint)> {
        let (word, den) = f.expand();
        let mut w = LaurentY::one();
        let mut count = BigUint::one();
        for g in word.iter().rev() {
            let n = pending.apply(*g);
            if n == 0 {
                return None;
            }
            if g.index() > 0 {
                w *= &LaurentY::quantum_integer(g.index());
            }
            count *= n;
        }
        Some((w.scale(&BigInt::from(count)), den))
    }

    /// Chooses factors from right to left. `divs` counts the divergence
    /// blocks still to place, `bs` the b-diagonal ones.
    fn go(&mut self, pending: Pending, divs: usize, bs: usize, w: LaurentY, den: BigUint) {
        if divs == 0 && bs == 0 {
            let done = weighted(&pending.a) == 0
                && (0..pending.b.len().max(2)).all(|i| {
                    pending.b.get(i).copied().unwrap_or(0) == if i == 1 { self.bra } else { 0 }
                });
            if done {
                // a_1^c/c! against (1^c) contributes c!/c! = 1
                self.total += &RationalLaurentY::new(w, BigInt::from(den));
            }
            return;
        }
        if bs > 0 {
            for k in 1..pending.a.len() {
                if pending.a[k] == 0 {
                    continue;
                }
                let mut p = pending.clone();
                if let Some((x, d)) = Self::apply(&mut p, &WickFactor::BDiag(k as u32)) {
                    self.go(p, divs, bs - 1, &w * &x, &den * d);
                }
            }
        }
        if divs > 0 {
            let i = self.profile[divs - 1];
            let g = pending.grading();
            for n in 0..=weighted(&pending.b) {
                let m = n as i64 - i;
                if m < 0 || g - n + m as u64 > self.cap {
                    continue;
                }
                for nu in partitions(n) {
                    if !nu
                        .iter()
                        .all(|(j, c)| pending.b.get(j).copied().unwrap_or(0) >= c)
                    {
                        continue;
                    }
                    for mu in partitions(m as u64) {
                        let f = WickFactor::Div { mu, nu: nu.clone() };
                        let mut p = pending.clone();
                        if let Some((x, d)) = Self::apply(&mut p, &f) {
                            self.go(p, divs - 1, bs, &w * &x, &den * d);
                        }
                    }
                }
            }
        }
    }
}

/// `N^{Δ,δ}(α,β)(y)` from explicit Wick contractions of every operator word.
pub fn wick_severi(
    p: &HTransversePolygon,
    delta: i64,
    alpha: &Partition,
    beta: &Partition,
) -> Result<LaurentY> {
    if delta < 0 {
        return Err(Error::NegativeDelta(delta));
    }
    let got = alpha.size() + beta.size();
    if got != p.d_bottom() as u64 {
        return Err(Error::TangencyBalance {
            got,
            expected: p.d_bottom() as u64,
        });
    }
    let n = p.lattice_point_count() as i64 - 1 - delta - p.d_bottom() as i64 + beta.length() as i64;
    let h = p.height();
    if n < h as i64 {
        return Ok(LaurentY::zero());
    }
    if n as usize > MAX_WICK_FACTORS {
        return Err(Error::GuardExceeded(format!(
            "{n} operator factors exceed the Wick limit {MAX_WICK_FACTORS}"
        )));
    }
    let mut ket = Pending::default();
    let mut den = BigUint::one();
    let mut w = LaurentY::one();
    for f in std::iter::once(WickFactor::ACreate(beta.clone())).chain(
        alpha
            .iter()
            .flat_map(|(j, m)| std::iter::repeat_n(WickFactor::BCreate(j as u32), m as usize)),
    ) {
        let (x, d) = Search::apply(&mut ket, &f).expect("creators always apply");
        w *= &x;
        den *= d;
    }
    let cap = p.grading_cap().max(p.d_bottom() as u64);
    let mut total = RationalLaurentY::zero();
    for d in divergence_profiles(p.right(), p.left())? {
        let mut s = Search {
            profile: &d.sequence,
            cap,
            bra: p.d_top(),
            total: RationalLaurentY::zero(),
        };
        s.go(ket.clone(), h, n as usize - h, w.clone(), den.clone());
        total += &s
            .total
            .scale_ratio(&BigInt::from(d.multiplicity), &BigInt::one());
    }
    let num = total
        .to_laurent()
        .ok_or_else(|| Error::NonIntegral(format!("Wick sum {total}")))?;
    num.div_exact(&quantum_weight(&alpha.plus(beta)))
        .ok_or_else(|| Error::NonIntegral(format!("Wick sum {num} is not divisible by I^(α+β)")))
}
