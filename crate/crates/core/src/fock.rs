//! The y-deformed two-colour Heisenberg algebra acting on its Fock space.
//!
//! Generators `a_n`, `b_n` (`n != 0`) satisfy `[a_n, b_m] = [n]_y δ_{n,-m}` with
//! all other commutators zero. The basis vector `v_{μ,ν}` is
//! `∏ a_{-i}^{μ_i}/μ_i! ∏ b_{-j}^{ν_j}/ν_j! v_∅`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::combinatorics::{binomial, partitions, quantum_weight, to_bigint, Partition};
use crate::error::{Error, Result};
use crate::ring::{LaurentY, RationalLaurentY};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisVector {
    pub a_part: Partition,
    pub b_part: Partition,
}

impl BasisVector {
    pub fn new(a_part: Partition, b_part: Partition) -> Self {
        Self { a_part, b_part }
    }

    pub fn vacuum() -> Self {
        Self::default()
    }

    /// `‖μ‖ + ‖ν‖`.
    pub fn grading(&self) -> u64 {
        self.a_part.size() + self.b_part.size()
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a_part.is_empty() && self.b_part.is_empty() {
            return write!(f, "v_∅");
        }
        write!(f, "v_{{{},{}}}", self.a_part, self.b_part)
    }
}

impl fmt::Debug for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite linear combination of basis vectors.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct FockState {
    terms: BTreeMap<BasisVector, RationalLaurentY>,
}

impl FockState {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::basis(BasisVector::vacuum())
    }

    pub fn basis(v: BasisVector) -> Self {
        let mut s = Self::zero();
        s.add_term(v, RationalLaurentY::one());
        s
    }

    /// `v_{μ,ν}`.
    pub fn from_parts(a_part: Partition, b_part: Partition) -> Self {
        Self::basis(BasisVector::new(a_part, b_part))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisVector, &RationalLaurentY)> {
        self.terms.iter()
    }

    pub fn coeff(&self, v: &BasisVector) -> RationalLaurentY {
        self.terms
            .get(v)
            .cloned()
            .unwrap_or_else(RationalLaurentY::zero)
    }

    pub fn add_term(&mut self, v: BasisVector, c: RationalLaurentY) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(v) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_state(&mut self, other: &FockState) {
        for (v, c) in other.terms() {
            self.add_term(v.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &RationalLaurentY) -> FockState {
        let mut out = FockState::zero();
        for (v, x) in self.terms() {
            out.add_term(v.clone(), x * c);
        }
        out
    }

    pub fn max_grading(&self) -> Option<u64> {
        self.terms.keys().map(BasisVector::grading).max()
    }

    /// Drops every term of grading above `cap`.
    pub fn truncate(&self, cap: u64) -> FockState {
        FockState {
            terms: self
                .terms
                .iter()
                .filter(|(v, _)| v.grading() <= cap)
                .map(|(v, c)| (v.clone(), c.clone()))
                .collect(),
        }
    }

    fn map_basis(
        &self,
        mut f: impl FnMut(&BasisVector, &RationalLaurentY, &mut FockState),
    ) -> Self {
        let mut out = FockState::zero();
        for (v, c) in self.terms() {
            f(v, c, &mut out);
        }
        out
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "0");
        }
        for (v, c) in self.terms() {
            writeln!(f, "{c} · {v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Colour {
    A,
    B,
}

/// `a_n` or `b_n`; negative `n` creates, positive `n` annihilates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    colour: Colour,
    index: i64,
}

impl Generator {
    pub fn new(colour: Colour, index: i64) -> Result<Self> {
        if index == 0 {
            return Err(Error::ZeroIndex);
        }
        Ok(Self { colour, index })
    }

    pub fn a(index: i64) -> Result<Self> {
        Self::new(Colour::A, index)
    }

    pub fn b(index: i64) -> Result<Self> {
        Self::new(Colour::B, index)
    }

    pub fn colour(&self) -> Colour {
        self.colour
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    /// The generator with opposite index, which is the adjoint for the pairing.
    pub fn adjoint(&self) -> Self {
        Self {
            colour: self.colour,
            index: -self.index,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.colour {
            Colour::A => 'a',
            Colour::B => 'b',
        };
        write!(f, "{c}_{}", self.index)
    }
}

fn ratio(num: u64) -> RationalLaurentY {
    RationalLaurentY::from(LaurentY::constant(num))
}

pub fn apply_generator(s: &FockState, g: Generator) -> FockState {
    let k = g.index.unsigned_abs() as usize;
    let q = LaurentY::quantum_integer(k as i64);
    s.map_basis(|v, c, out| match (g.colour, g.index < 0) {
        (Colour::A, true) => {
            let m = v.a_part.get(k);
            let w = BasisVector::new(v.a_part.with(k, m + 1), v.b_part.clone());
            out.add_term(w, c * &ratio(m as u64 + 1));
        }
        (Colour::B, true) => {
            let m = v.b_part.get(k);
            let w = BasisVector::new(v.a_part.clone(), v.b_part.with(k, m + 1));
            out.add_term(w, c * &ratio(m as u64 + 1));
        }
        // a_k only sees the b_{-k} factors
        (Colour::A, false) => {
            let m = v.b_part.get(k);
            if m > 0 {
                let w = BasisVector::new(v.a_part.clone(), v.b_part.with(k, m - 1));
                out.add_term(w, c.mul_laurent(&q));
            }
        }
        (Colour::B, false) => {
            let m = v.a_part.get(k);
            if m > 0 {
                let w = BasisVector::new(v.a_part.with(k, m - 1), v.b_part.clone());
                out.add_term(w, c.mul_laurent(&q));
            }
        }
    })
}

/// Image under `Σ_{k>0} b_{-k} b_k`.
pub fn apply_b_diagonal(s: &FockState) -> FockState {
    s.map_basis(|v, c, out| {
        for (k, m) in v.a_part.iter() {
            let nk = v.b_part.get(k);
            let w = BasisVector::new(v.a_part.with(k, m - 1), v.b_part.with(k, nk + 1));
            let coeff = LaurentY::quantum_integer(k as i64).scale(&BigInt::from(nk + 1));
            out.add_term(w, c.mul_laurent(&coeff));
        }
    })
}

/// Image under `Σ_{‖ν‖-‖μ‖=i} a_{-μ} a_ν`, keeping terms of grading `<= grading_cap`.
pub fn apply_divergence(s: &FockState, i: i64, grading_cap: u64) -> FockState {
    s.map_basis(|v, c, out| {
        if v.grading() as i64 - i > grading_cap as i64 {
            return;
        }
        for nu in v.b_part.sub_partitions() {
            let mu_size = nu.size() as i64 - i;
            if mu_size < 0 {
                continue;
            }
            let rest = v.b_part.checked_sub(&nu).expect("sub-partition");
            let base = c
                .mul_laurent(&quantum_weight(&nu))
                .scale_ratio(&BigInt::from(1), &to_bigint(nu.mult_factorial()));
            for mu in partitions(mu_size as u64) {
                let binoms = mu
                    .iter()
                    .map(|(j, m)| binomial(m as u64 + v.a_part.get(j) as u64, m as u64))
                    .product();
                let w = BasisVector::new(mu.plus(&v.a_part), rest.clone());
                out.add_term(w, base.scale_ratio(&to_bigint(binoms), &BigInt::from(1)));
            }
        }
    })
}

/// `⟨v_{μ,ν}|v_{μ',ν'}⟩`.
pub fn basis_pairing(v1: &BasisVector, v2: &BasisVector) -> RationalLaurentY {
    if v1.a_part != v2.b_part || v1.b_part != v2.a_part {
        return RationalLaurentY::zero();
    }
    let num = quantum_weight(&v1.a_part) * quantum_weight(&v1.b_part);
    let den = to_bigint(v1.a_part.mult_factorial() * v1.b_part.mult_factorial());
    RationalLaurentY::new(num, den)
}

/// Bilinear pairing; `v_{μ,ν}` pairs only with `v_{ν,μ}`.
pub fn inner_product(s1: &FockState, s2: &FockState) -> RationalLaurentY {
    let mut acc = RationalLaurentY::zero();
    for (v, c) in s1.terms() {
        let dual = BasisVector::new(v.b_part.clone(), v.a_part.clone());
        if let Some(d) = s2.terms.get(&dual) {
            acc += &(&(c * d) * &basis_pairing(v, &dual));
        }
    }
    acc
}

pub fn grading(v: &BasisVector) -> u64 {
    v.grading()
}

/// All basis vectors of grading exactly `n`.
pub fn basis_of_grading(n: u64) -> Vec<BasisVector> {
    let mut out = Vec::new();
    for k in 0..=n {
        for mu in partitions(k) {
            for nu in partitions(n - k) {
                out.push(BasisVector::new(mu.clone(), nu));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts)
    }

    fn st(a: &[u32], b: &[u32]) -> FockState {
        FockState::from_parts(p(a), p(b))
    }

    fn q(n: i64) -> RationalLaurentY {
        RationalLaurentY::from(LaurentY::quantum_integer(n))
    }

    fn sum(states: &[FockState]) -> FockState {
        let mut out = FockState::zero();
        for s in states {
            out.add_state(s);
        }
        out
    }

    fn neg(s: &FockState) -> FockState {
        s.scale(&RationalLaurentY::from(LaurentY::constant(-1)))
    }

    #[test]
    fn generator_examples() {
        let vac = FockState::vacuum();
        assert_eq!(
            apply_generator(&vac, Generator::a(-1).unwrap()),
            st(&[1], &[])
        );
        assert!(apply_generator(&vac, Generator::a(1).unwrap()).is_zero());
        assert_eq!(
            apply_generator(&st(&[1], &[]), Generator::a(-1).unwrap()),
            st(&[1, 1], &[]).scale(&ratio(2))
        );
        assert_eq!(
            apply_generator(&st(&[], &[1]), Generator::a(1).unwrap()),
            vac
        );
        assert_eq!(Generator::b(0), Err(Error::ZeroIndex));
    }

    #[test]
    fn inner_product_examples() {
        let vac = FockState::vacuum();
        assert_eq!(inner_product(&vac, &vac), RationalLaurentY::one());
        assert_eq!(
            inner_product(&st(&[1], &[]), &st(&[], &[1])),
            RationalLaurentY::one()
        );
        let q2sq = LaurentY::quantum_integer(2).pow(2);
        assert_eq!(
            inner_product(&st(&[2, 2], &[]), &st(&[], &[2, 2])),
            RationalLaurentY::new(q2sq, BigInt::from(2))
        );
        assert!(inner_product(&st(&[1], &[]), &st(&[1], &[])).is_zero());
    }

    #[test]
    fn b_diagonal_examples() {
        assert_eq!(apply_b_diagonal(&st(&[1], &[])), st(&[], &[1]));
        assert!(apply_b_diagonal(&FockState::vacuum()).is_zero());
        assert_eq!(apply_b_diagonal(&st(&[2], &[])), st(&[], &[2]).scale(&q(2)));
    }

    #[test]
    fn divergence_examples() {
        assert_eq!(apply_divergence(&st(&[], &[1]), 1, 10), FockState::vacuum());
        assert!(apply_divergence(&st(&[1], &[]), 1, 10).is_zero());
        let expected = sum(&[st(&[1], &[1]), st(&[2], &[]), st(&[1, 1], &[])]);
        assert_eq!(apply_divergence(&st(&[], &[1]), -1, 2), expected);
        assert!(apply_divergence(&st(&[], &[1]), -1, 1).is_zero());
    }

    #[test]
    fn grading_examples() {
        assert_eq!(BasisVector::vacuum().grading(), 0);
        assert_eq!(BasisVector::new(Partition::ones(4), p(&[])).grading(), 4);
        assert_eq!(BasisVector::new(p(&[2]), p(&[1])).grading(), 3);
        assert_eq!(basis_of_grading(2).len(), 5);
    }

    #[test]
    fn display_lines() {
        let s = sum(&[st(&[1], &[]), st(&[], &[2]).scale(&q(2))]);
        let text = s.to_string();
        assert!(text.contains("1 · v_{(1),∅}"));
        assert!(text.contains("y^-1/2 + y^1/2 · v_{∅,(2)}"));
        assert_eq!(FockState::zero().to_string(), "0\n");
    }

    fn apply_word(s: &FockState, word: &[Generator]) -> FockState {
        // Rightmost generator acts first.
        word.iter()
            .rev()
            .fold(s.clone(), |acc, g| apply_generator(&acc, *g))
    }

    fn brute_divergence(v: &BasisVector, i: i64, cap: u64) -> FockState {
        let mut out = FockState::zero();
        let s = FockState::basis(v.clone());
        let max_nu = v.b_part.size();
        for nsize in 0..=max_nu {
            let msize = nsize as i64 - i;
            if msize < 0 {
                continue;
            }
            for nu in partitions(nsize) {
                for mu in partitions(msize as u64) {
                    let mut word = Vec::new();
                    for part in mu.parts() {
                        word.push(Generator::a(-(part as i64)).unwrap());
                    }
                    for part in nu.parts() {
                        word.push(Generator::a(part as i64).unwrap());
                    }
                    let norm = to_bigint(mu.mult_factorial() * nu.mult_factorial());
                    let img =
                        apply_word(&s, &word).scale(&RationalLaurentY::new(LaurentY::one(), norm));
                    out.add_state(&img);
                }
            }
        }
        out.truncate(cap)
    }

    #[test]
    fn closed_forms_match_generator_composition() {
        for n in 0..=5 {
            for v in basis_of_grading(n) {
                let s = FockState::basis(v.clone());
                let mut brute = FockState::zero();
                for k in 1..=n as i64 {
                    let img =
                        apply_word(&s, &[Generator::b(-k).unwrap(), Generator::b(k).unwrap()]);
                    brute.add_state(&img);
                }
                assert_eq!(apply_b_diagonal(&s), brute, "B on {v}");
                for i in -3..=3 {
                    for cap in [n.saturating_sub(1), n + 3] {
                        assert_eq!(
                            apply_divergence(&s, i, cap),
                            brute_divergence(&v, i, cap),
                            "Div_{i} cap {cap} on {v}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn coherent_state_truncation() {
        let m_max = 6;
        let mut term = FockState::vacuum();
        let mut total = FockState::vacuum();
        for m in 1..=m_max {
            term = apply_generator(&term, Generator::a(-1).unwrap())
                .scale(&RationalLaurentY::new(LaurentY::one(), BigInt::from(m)));
            total.add_state(&term);
        }
        let expected = sum(&(0..=m_max)
            .map(|m| FockState::from_parts(Partition::ones(m), p(&[])))
            .collect::<Vec<_>>());
        assert_eq!(total, expected);
    }

    /// The coefficient of `u^α w^β` in `exp(Σ_n (b_{-n} u_n + a_{-n} w_n)/[n]_y) v_∅`
    /// is `v_{β,α}/I_y^{α+β}`. The factor `1/[n]_y` is determined by the
    /// monomial, so the expansion is carried out with it stripped and then
    /// compared against `v_{β,α}`.
    #[test]
    fn relative_coherent_state() {
        let max_deg = 4u32;
        let max_index = 4i64;
        let mut power: BTreeMap<(Partition, Partition), FockState> = BTreeMap::new();
        power.insert((p(&[]), p(&[])), FockState::vacuum());
        let mut total = power.clone();
        for k in 1..=max_deg {
            let mut next: BTreeMap<(Partition, Partition), FockState> = BTreeMap::new();
            for ((alpha, beta), s) in &power {
                for n in 1..=max_index {
                    let nu = n as usize;
                    let key_u = (alpha.with(nu, alpha.get(nu) + 1), beta.clone());
                    let img_u = apply_generator(s, Generator::b(-n).unwrap());
                    next.entry(key_u).or_default().add_state(&img_u);
                    let key_w = (alpha.clone(), beta.with(nu, beta.get(nu) + 1));
                    let img_w = apply_generator(s, Generator::a(-n).unwrap());
                    next.entry(key_w).or_default().add_state(&img_w);
                }
            }
            let inv_k = RationalLaurentY::new(LaurentY::one(), BigInt::from(k));
            power = next
                .into_iter()
                .map(|(key, s)| (key, s.scale(&inv_k)))
                .collect();
            for (key, s) in &power {
                total.entry(key.clone()).or_default().add_state(s);
            }
        }
        for ((alpha, beta), s) in &total {
            // exponential coefficients u^α/α! come from the unordered expansion
            let expected = FockState::from_parts(beta.clone(), alpha.clone());
            assert_eq!(s, &expected, "monomial u^{alpha} w^{beta}");
        }
        assert_eq!(total.len(), 495);
    }

    fn arb_state(max_grading: u64) -> impl Strategy<Value = FockState> {
        let basis: Vec<BasisVector> = (0..=max_grading).flat_map(basis_of_grading).collect();
        let n = basis.len();
        prop::collection::vec((0..n, -3i64..=3, -2i64..=2), 1..6).prop_map(move |picks| {
            let mut s = FockState::zero();
            for (idx, c, e) in picks {
                s.add_term(
                    basis[idx].clone(),
                    RationalLaurentY::from(LaurentY::monomial(2 * e, c)),
                );
            }
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn commutation_relations(s in arb_state(8), n in 1i64..=6, m in 1i64..=6) {
            let an = Generator::a(n).unwrap();
            let bn = Generator::b(n).unwrap();
            let a_m = Generator::a(-m).unwrap();
            let b_m = Generator::b(-m).unwrap();
            let bm = Generator::b(m).unwrap();
            let comm = |x: Generator, y: Generator| {
                sum(&[apply_word(&s, &[x, y]), neg(&apply_word(&s, &[y, x]))])
            };
            let expected = if n == m { s.scale(&q(n)) } else { FockState::zero() };
            prop_assert_eq!(comm(an, b_m), expected.clone());
            prop_assert_eq!(comm(bn, a_m), expected);
            prop_assert!(comm(an, a_m).is_zero());
            prop_assert!(comm(bn, b_m).is_zero());
            prop_assert!(comm(an, bm).is_zero());
            prop_assert!(comm(a_m, b_m).is_zero());
        }

        #[test]
        fn adjointness(s1 in arb_state(6), s2 in arb_state(6), n in 1i64..=4) {
            for g in [Generator::a(n).unwrap(), Generator::b(n).unwrap()] {
                let lhs = inner_product(&apply_generator(&s1, g), &s2);
                let rhs = inner_product(&s1, &apply_generator(&s2, g.adjoint()));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn grading_behaviour(s in arb_state(6), i in -3i64..=3) {
            for (v, _) in s.terms() {
                let single = FockState::basis(v.clone());
                for (w, _) in apply_b_diagonal(&single).terms() {
                    prop_assert_eq!(w.grading(), v.grading());
                }
                for (w, _) in apply_divergence(&single, i, 20).terms() {
                    prop_assert_eq!(w.grading() as i64, v.grading() as i64 - i);
                }
            }
        }
    }
}
