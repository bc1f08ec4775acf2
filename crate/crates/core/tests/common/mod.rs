//! Refined Caporaso–Harris recursion for plane curves, used only as a test
//! oracle. Tangency data are multiplicity vectors: `alpha[i]` counts parts
//! equal to `i + 1`.
#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use refsev_core::combinatorics::binomial;
use refsev_core::ring::LaurentY;

type Key = (u32, i64, Vec<u32>, Vec<u32>);

fn weight(v: &[u32]) -> u32 {
    v.iter().enumerate().map(|(i, &m)| (i as u32 + 1) * m).sum()
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn padded(v: &[u32], len: usize) -> Vec<u32> {
    let mut out = v.to_vec();
    out.resize(len.max(v.len()), 0);
    out
}

/// `β' >= β` componentwise with `I β' = total`.
fn raises(beta: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, rem: u32, beta: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == beta.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = i as u32 + 1;
        for x in 0..=rem / w {
            cur.push(beta[i] + x);
            go(i + 1, rem - x * w, beta, cur, out);
            cur.pop();
        }
    }
    let base = weight(beta);
    let mut out = Vec::new();
    if base <= total {
        go(0, total - base, beta, &mut Vec::new(), &mut out);
    }
    out
}

fn sub_vectors(alpha: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &a in alpha {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=a).map(move |x| {
                    let mut v = p.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

#[derive(Default)]
pub struct CaporasoHarris {
    memo: HashMap<Key, LaurentY>,
}

impl CaporasoHarris {
    pub fn new() -> Self {
        Self::default()
    }

    /// `N^{d,δ}(α, β)(y)` for plane curves of degree `d`.
    pub fn relative(&mut self, d: u32, delta: i64, alpha: &[u32], beta: &[u32]) -> LaurentY {
        let key = (d, delta, trim(alpha.to_vec()), trim(beta.to_vec()));
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = self.compute(d, delta, &key.2, &key.3);
        self.memo.insert(key, v.clone());
        v
    }

    pub fn absolute(&mut self, d: u32, delta: i64) -> LaurentY {
        self.relative(d, delta, &[], &[d])
    }

    fn compute(&mut self, d: u32, delta: i64, alpha: &[u32], beta: &[u32]) -> LaurentY {
        if delta < 0 || weight(alpha) + weight(beta) != d {
            return LaurentY::zero();
        }
        let genus = (d as i64 - 1) * (d as i64 - 2) / 2 - delta;
        let points = 2 * d as i64 + genus - 1 + beta.iter().sum::<u32>() as i64;
        if points < 0 {
            return LaurentY::zero();
        }
        if points == 0 {
            return if d == 0 && delta == 0 {
                LaurentY::one()
            } else {
                LaurentY::zero()
            };
        }
        let len = d as usize + 1;
        let alpha = padded(alpha, len);
        let beta = padded(beta, len);
        let mut total = LaurentY::zero();
        for k in 0..len {
            if beta[k] > 0 {
                let mut a = alpha.clone();
                let mut b = beta.clone();
                a[k] += 1;
                b[k] -= 1;
                let sub = self.relative(d, delta, &a, &b);
                total += &(&sub * &LaurentY::quantum_integer(k as i64 + 1));
            }
        }
        for a in sub_vectors(&alpha) {
            let Some(rest) = (d - 1).checked_sub(weight(&a)) else {
                continue;
            };
            for b in raises(&beta, rest) {
                let added: u32 = b.iter().zip(&beta).map(|(x, y)| x - y).sum();
                let delta2 = delta - (d as i64 - 1) + added as i64;
                let sub = self.relative(d - 1, delta2, &a, &b);
                if sub.is_zero() {
                    continue;
                }
                let mut c = LaurentY::one();
                let mut scalar = BigInt::from(1);
                for i in 0..len {
                    scalar *= BigInt::from(binomial(alpha[i] as u64, a[i] as u64));
                    scalar *= BigInt::from(binomial(b[i] as u64, beta[i] as u64));
                    c = &c * &LaurentY::quantum_integer(i as i64 + 1).pow(b[i] - beta[i]);
                }
                total += &(&c.scale(&scalar) * &sub);
            }
        }
        total
    }
}
