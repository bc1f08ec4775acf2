//! Partitions, integer multisets and their orderings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::{Error, Result};

/// A partition stored as multiplicities: `mult[i - 1]` is the number of parts
/// equal to `i`. Trailing zeros are trimmed so equal partitions compare equal.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    mult: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_mults(mults: impl Into<Vec<u32>>) -> Self {
        let mut mult = mults.into();
        while mult.last() == Some(&0) {
            mult.pop();
        }
        Self { mult }
    }

    /// Builds a partition from a list of positive parts in any order.
    pub fn from_parts(parts: &[u32]) -> Self {
        let mut mult = Vec::new();
        for &p in parts {
            assert!(p > 0, "partition parts must be positive");
            let i = p as usize;
            if mult.len() < i {
                mult.resize(i, 0);
            }
            mult[i - 1] += 1;
        }
        Self::from_mults(mult)
    }

    /// `(1^n)`.
    pub fn ones(n: u32) -> Self {
        Self::from_mults(vec![n])
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Multiplicity of the part `i` (zero for `i == 0`).
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.mult.get(i - 1).copied().unwrap_or(0)
    }

    pub fn mults(&self) -> &[u32] {
        &self.mult
    }

    /// Largest part size with a non-zero multiplicity, or 0.
    pub fn max_part(&self) -> usize {
        self.mult.len()
    }

    /// Returns a copy with the multiplicity of part `i` replaced.
    pub fn with(&self, i: usize, m: u32) -> Self {
        assert!(i > 0, "part size must be positive");
        let mut mult = self.mult.clone();
        if mult.len() < i {
            mult.resize(i, 0);
        }
        mult[i - 1] = m;
        Self::from_mults(mult)
    }

    /// `||mu|| = sum_i i * mu_i`, the number partitioned.
    pub fn size(&self) -> u64 {
        self.mult
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u64 + 1) * m as u64)
            .sum()
    }

    /// `|mu| = sum_i mu_i`, the number of parts.
    pub fn length(&self) -> u64 {
        self.mult.iter().map(|&m| m as u64).sum()
    }

    /// `mu! = prod_i mu_i!`.
    pub fn mult_factorial(&self) -> BigUint {
        self.mult.iter().map(|&m| factorial(m as u64)).product()
    }

    /// `(part, multiplicity)` pairs with non-zero multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| (i + 1, m))
    }

    /// Parts in descending order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.length() as usize);
        for (i, m) in self.iter().collect::<Vec<_>>().into_iter().rev() {
            out.extend(std::iter::repeat_n(i as u32, m as usize));
        }
        out
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.mult.len() <= self.mult.len()
            && other.mult.iter().zip(&self.mult).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &Partition) -> Option<Partition> {
        if !self.contains(other) {
            return None;
        }
        let mut mult = self.mult.clone();
        for (i, m) in other.mult.iter().enumerate() {
            mult[i] -= m;
        }
        Some(Self::from_mults(mult))
    }

    pub fn plus(&self, other: &Partition) -> Partition {
        let n = self.mult.len().max(other.mult.len());
        let mult: Vec<u32> = (1..=n).map(|i| self.get(i) + other.get(i)).collect();
        Self::from_mults(mult)
    }

    /// All sub-partitions `nu <= self` (componentwise), including empty and self.
    pub fn sub_partitions(&self) -> Vec<Partition> {
        let mut out = vec![Vec::new()];
        for &m in &self.mult {
            let mut next = Vec::with_capacity(out.len() * (m as usize + 1));
            for prefix in &out {
                for k in 0..=m {
                    let mut v: Vec<u32> = prefix.clone();
                    v.push(k);
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(Self::from_mults).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (k, (i, m)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            if m == 1 {
                write!(f, "{i}")?;
            } else {
                write!(f, "{i}^{m}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a multiplicity list `"a1,a2,..."` where `a_i` counts parts equal to `i`.
/// The empty string is the empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Self::empty());
        }
        let mults = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad multiplicity {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_mults(mults))
    }
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).map(BigUint::from).product()
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn multinomial(counts: &[u64]) -> BigUint {
    let total: u64 = counts.iter().sum();
    let denom: BigUint = counts.iter().map(|&c| factorial(c)).product();
    factorial(total) / denom
}

/// All partitions of `n` (descending lexicographic order on parts).
pub fn partitions_of(n: i64) -> Result<Vec<Partition>> {
    if n < 0 {
        return Err(Error::NegativeCount(n));
    }
    Ok(partitions(n as u64))
}

/// Infallible variant of [`partitions_of`] for non-negative input.
pub fn partitions(n: u64) -> Vec<Partition> {
    fn go(n: u64, max: u64, parts: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition::from_parts(parts));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            parts.push(k as u32);
            go(n - k, k, parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Weak compositions of `n` into exactly `k` non-negative parts, lexicographic.
pub fn compositions(n: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if k == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 0..=n {
            cur.push(a);
            go(n - a, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), &mut out);
    out
}

/// A finite multiset of integers (values may be zero or negative).
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMultiset {
    mult: BTreeMap<i64, u32>,
}

impl IntMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, u32)>) -> Self {
        let mut mult = BTreeMap::new();
        for (v, m) in pairs {
            if m > 0 {
                *mult.entry(v).or_insert(0) += m;
            }
        }
        Self { mult }
    }

    pub fn from_values(values: impl IntoIterator<Item = i64>) -> Self {
        Self::from_pairs(values.into_iter().map(|v| (v, 1)))
    }

    /// `(value^count)`.
    pub fn repeated(value: i64, count: u32) -> Self {
        Self::from_pairs([(value, count)])
    }

    pub fn union(&self, other: &IntMultiset) -> Self {
        Self::from_pairs(self.iter().chain(other.iter()))
    }

    /// `|m|`, the number of elements with multiplicity.
    pub fn len(&self) -> u64 {
        self.mult.values().map(|&m| m as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// `||m||`, the sum of elements with multiplicity.
    pub fn norm(&self) -> i64 {
        self.mult.iter().map(|(v, m)| v * *m as i64).sum()
    }

    /// `(value, multiplicity)` in ascending value order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.mult.iter().map(|(v, m)| (*v, *m))
    }

    /// All elements with repetition, ascending.
    pub fn values(&self) -> Vec<i64> {
        self.iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v, m as usize))
            .collect()
    }

    pub fn num_orderings(&self) -> BigUint {
        let counts: Vec<u64> = self.mult.values().map(|&m| m as u64).collect();
        multinomial(&counts)
    }

    /// All distinct orderings, in lexicographic order.
    pub fn orderings(&self) -> Vec<Vec<i64>> {
        fn go(
            remaining: &mut Vec<(i64, u32)>,
            left: usize,
            cur: &mut Vec<i64>,
            out: &mut Vec<Vec<i64>>,
        ) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for i in 0..remaining.len() {
                if remaining[i].1 == 0 {
                    continue;
                }
                remaining[i].1 -= 1;
                cur.push(remaining[i].0);
                go(remaining, left - 1, cur, out);
                cur.pop();
                remaining[i].1 += 1;
            }
        }
        let mut remaining: Vec<(i64, u32)> = self.iter().collect();
        let mut out = Vec::new();
        go(
            &mut remaining,
            self.len() as usize,
            &mut Vec::new(),
            &mut out,
        );
        out
    }
}

impl fmt::Display for IntMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, m)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}^{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Parses `"v^m,v^m,..."`; `m` defaults to 1. Example: `"-1^2,2^1"`.
impl FromStr for IntMultiset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::new());
        }
        let mut pairs = Vec::new();
        for item in s.split(',') {
            let item = item.trim();
            let (v, m) = match item.split_once('^') {
                Some((v, m)) => (v, m),
                None => (item, "1"),
            };
            let v: i64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiset value {v:?} in {s:?}")))?;
            let m: u32 = m
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity {m:?} in {s:?}")))?;
            pairs.push((v, m));
        }
        Ok(Self::from_pairs(pairs))
    }
}

/// A difference sequence `R - L` together with the number of ordering pairs
/// `(R, L)` producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivergenceProfile {
    pub sequence: Vec<i64>,
    pub multiplicity: u64,
}

/// Groups all ordering pairs of `r` and `l` by their componentwise difference.
pub fn divergence_profiles(r: &IntMultiset, l: &IntMultiset) -> Result<Vec<DivergenceProfile>> {
    if r.len() != l.len() {
        return Err(Error::SizeMismatch(r.len(), l.len()));
    }
    let rs = r.orderings();
    let ls = l.orderings();
    let mut grouped: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for rr in &rs {
        for ll in &ls {
            let diff = rr.iter().zip(ll).map(|(a, b)| a - b).collect();
            *grouped.entry(diff).or_insert(0) += 1;
        }
    }
    Ok(grouped
        .into_iter()
        .map(|(sequence, multiplicity)| DivergenceProfile {
            sequence,
            multiplicity,
        })
        .collect())
}

/// Product `prod_i [i]_y^{e_i}` over a partition.
pub(crate) fn quantum_weight(p: &Partition) -> crate::ring::LaurentY {
    p.iter()
        .map(|(i, m)| crate::ring::LaurentY::quantum_integer(i as i64).pow(m))
        .product()
}

pub(crate) fn to_bigint(u: BigUint) -> BigInt {
    BigInt::from(u)
}
