use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::combinatorics::{factorial, to_bigint};
use crate::error::{Error, Result};
use crate::ring::{LaurentY, RationalLaurentY};

use super::{refined_severi, Family};

/// A truncated power series in class markers `v^L` and one variable `z`,
/// keeping only classes componentwise `<= class_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSeries {
    class_max: Vec<u32>,
    terms: BTreeMap<(Vec<u32>, u64), RationalLaurentY>,
}

impl GenSeries {
    pub fn new(class_max: Vec<u32>) -> Self {
        Self {
            class_max,
            terms: BTreeMap::new(),
        }
    }

    pub fn class_max(&self) -> &[u32] {
        &self.class_max
    }

    fn in_range(&self, class: &[u32]) -> bool {
        class.len() == self.class_max.len()
            && class.iter().zip(&self.class_max).all(|(a, b)| a <= b)
    }

    /// Adds `c · v^class z^z_deg`; terms outside the truncation are dropped.
    pub fn add(&mut self, class: Vec<u32>, z_deg: u64, c: &RationalLaurentY) {
        if c.is_zero() || !self.in_range(&class) {
            return;
        }
        let e = self
            .terms
            .entry((class, z_deg))
            .or_insert_with(RationalLaurentY::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coeff(&self, class: &[u32], z_deg: u64) -> RationalLaurentY {
        self.terms
            .get(&(class.to_vec(), z_deg))
            .cloned()
            .unwrap_or_else(RationalLaurentY::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<u32>, u64), &RationalLaurentY)> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &GenSeries) -> GenSeries {
        let mut out = GenSeries::new(self.class_max.clone());
        for ((c1, z1), x1) in &self.terms {
            for ((c2, z2), x2) in &other.terms {
                let class: Vec<u32> = c1.iter().zip(c2).map(|(a, b)| a + b).collect();
                if out.in_range(&class) {
                    out.add(class, z1 + z2, &(x1 * x2));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &RationalLaurentY) -> GenSeries {
        let mut out = GenSeries::new(self.class_max.clone());
        for ((class, z), x) in &self.terms {
            out.add(class.clone(), *z, &(x * c));
        }
        out
    }

    fn add_series(&mut self, other: &GenSeries) {
        for ((class, z), x) in &other.terms {
            self.add(class.clone(), *z, x);
        }
    }

    /// `log(self)`, requiring the class-zero part to be exactly `1`.
    pub fn log(&self) -> Result<GenSeries> {
        let zero = vec![0; self.class_max.len()];
        let mut x = self.clone();
        let constant = x.coeff(&zero, 0);
        if constant != RationalLaurentY::one() || x.terms.keys().any(|(c, z)| c == &zero && *z != 0)
        {
            return Err(Error::InvalidParameter(
                "logarithm needs the class-zero part to be 1".into(),
            ));
        }
        x.add(zero, 0, &(-&RationalLaurentY::one()));
        // every term of x has positive total class, so x^k vanishes past the total class bound
        let k_max: u32 = self.class_max.iter().sum();
        let mut out = GenSeries::new(self.class_max.clone());
        let mut power = x.clone();
        for k in 1..=k_max as i64 {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let c = RationalLaurentY::new(LaurentY::constant(sign), BigInt::from(k));
            out.add_series(&power.scale(&c));
            power = power.mul(&x);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleEntry {
    pub class: Vec<u32>,
    pub delta: u64,
    pub value: LaurentY,
}

fn classes_up_to(max: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &m in max {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=m).map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// `N_0^{(S,L),δ}(y)` for every non-zero class `L <= max_class` and
/// `δ <= max_delta`, read off from the logarithm of the exponential series
/// `Σ z^{dim|L|-δ}/(dim|L|-δ)! v^L N^{(S,L),δ}(y)`.
///
/// The series is built from every `δ` of every class in range, so no entry
/// depends on a `z` truncation.
pub fn irreducible_degrees(
    family: Family,
    max_class: &[u32],
    max_delta: u64,
) -> Result<Vec<IrreducibleEntry>> {
    family.validate()?;
    if max_class.len() != family.class_rank() {
        return Err(Error::InvalidParameter(format!(
            "{family} classes have {} components, got {}",
            family.class_rank(),
            max_class.len()
        )));
    }
    let classes = classes_up_to(max_class);
    let mut jobs = Vec::new();
    for class in &classes {
        let p = family.polygon(class)?;
        for delta in 0..=p.dim() {
            jobs.push((class.clone(), p.clone(), delta));
        }
    }
    let values: Vec<(Vec<u32>, u64, u64, LaurentY)> = jobs
        .into_par_iter()
        .map(|(class, p, delta)| {
            refined_severi(&p, delta as i64).map(|v| (class, p.dim(), delta, v))
        })
        .collect::<Result<_>>()?;
    let mut series = GenSeries::new(max_class.to_vec());
    for (class, dim, delta, v) in &values {
        let z = dim - delta;
        let c = RationalLaurentY::new(v.clone(), to_bigint(factorial(z)));
        series.add(class.clone(), z, &c);
    }
    let log = series.log()?;
    let mut out = Vec::new();
    for class in classes.into_iter().filter(|c| c.iter().any(|&x| x > 0)) {
        let dim = family.polygon(&class)?.dim();
        for delta in 0..=max_delta.min(dim) {
            let z = dim - delta;
            let c = log
                .coeff(&class, z)
                .scale_ratio(&to_bigint(factorial(z)), &BigInt::from(1));
            let value = c.to_laurent().ok_or_else(|| {
                Error::NonIntegral(format!("N_0 of class {class:?}, delta {delta}: {c}"))
            })?;
            out.push(IrreducibleEntry {
                class: class.clone(),
                delta,
                value,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(es: &[IrreducibleEntry], class: &[u32], delta: u64) -> LaurentY {
        es.iter()
            .find(|e| e.class == class && e.delta == delta)
            .map(|e| e.value.clone())
            .unwrap()
    }

    #[test]
    fn plane_examples() {
        let es = irreducible_degrees(Family::P2, &[3], 1).unwrap();
        assert_eq!(entry(&es, &[1], 0), LaurentY::one());
        assert_eq!(entry(&es, &[2], 1).eval_at_one(), BigInt::from(0));
        assert_eq!(entry(&es, &[3], 1).eval_at_one(), BigInt::from(12));
        assert_eq!(es.len(), 2 + 2 + 2);
    }

    #[test]
    fn log_of_exp() {
        // log(exp(v z)) truncated at v^3 is v z
        let mut s = GenSeries::new(vec![3]);
        for k in 0..=3u64 {
            let c = RationalLaurentY::new(LaurentY::one(), to_bigint(factorial(k)));
            s.add(vec![k as u32], k, &c);
        }
        let l = s.log().unwrap();
        let terms: Vec<_> = l.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, &(vec![1], 1));
        assert!(GenSeries::new(vec![1]).log().is_err());
    }
}
