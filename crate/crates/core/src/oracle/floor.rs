//! Floor diagrams and their markings.
//!
//! White vertices are the floors `1..=h`. Black vertices of a marking are
//! placed in gaps between floors: gap `g` lies between floors `g` and `g + 1`
//! (gap `0` is above floor 1, gap `h` below floor `h`). A marking up to
//! equivalence is the word of black-vertex classes read along the linear
//! order, so counting markings means counting such words.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;

use crate::combinatorics::{compositions, divergence_profiles, multinomial, Partition};
use crate::error::{Error, Result};
use crate::polygon::HTransversePolygon;
use crate::ring::LaurentY;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: u32,
}

/// A floor diagram together with its orderings `R`, `L` and source sequence `s`.
///
/// `free_elevators` counts black vertices that are simultaneously a source
/// and a sink and touch no floor. They carry no edges, so `|s| = d_top - f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FloorDiagram {
    pub right: Vec<i64>,
    pub left: Vec<i64>,
    pub s_seq: Vec<u32>,
    pub edges: Vec<Edge>,
    pub free_elevators: u32,
}

impl FloorDiagram {
    pub fn height(&self) -> usize {
        self.right.len()
    }

    /// Outgoing minus incoming weight at floor `j` (1-based).
    pub fn divergence(&self, j: usize) -> i64 {
        self.edges
            .iter()
            .map(|e| {
                if e.source == j {
                    e.weight as i64
                } else if e.target == j {
                    -(e.weight as i64)
                } else {
                    0
                }
            })
            .sum()
    }

    /// `R_j - L_j + s_j - div(j)`, the total weight leaving `j` towards sinks.
    pub fn sink_capacity(&self, j: usize) -> i64 {
        self.right[j - 1] - self.left[j - 1] + self.s_seq[j - 1] as i64 - self.divergence(j)
    }

    /// `∏_e [w(e)]_y^2`: each floor-to-floor edge is subdivided into two edges
    /// of the same weight in every marking.
    pub fn multiplicity(&self) -> LaurentY {
        self.edges
            .iter()
            .map(|e| LaurentY::quantum_integer(e.weight as i64).pow(2))
            .product()
    }

    /// Parallel-edge classes `(source, target, weight) -> count`.
    pub fn edge_classes(&self) -> BTreeMap<Edge, u32> {
        let mut out = BTreeMap::new();
        for e in &self.edges {
            *out.entry(*e).or_insert(0) += 1;
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        (1..=self.height()).all(|j| self.sink_capacity(j) >= 0)
            && self
                .edges
                .iter()
                .all(|e| e.source < e.target && e.weight > 0)
    }

    /// Black classes of an absolute marking: sources, subdivision vertices,
    /// weight-one sinks and free elevators.
    fn absolute_classes(&self) -> Vec<BlackClass> {
        let h = self.height();
        let mut out = Vec::new();
        for (j, &s) in self.s_seq.iter().enumerate() {
            out.push(BlackClass::new(BlackKind::Source(j + 1), 0, j, s));
        }
        for (e, c) in self.edge_classes() {
            out.push(BlackClass::new(
                BlackKind::Inner(e),
                e.source,
                e.target - 1,
                c,
            ));
        }
        for j in 1..=h {
            let cap = self.sink_capacity(j).max(0) as u32;
            out.push(BlackClass::new(BlackKind::Sink(j, 1), j, h, cap));
        }
        out.push(BlackClass::new(BlackKind::Free, 0, h, self.free_elevators));
        out.retain(|c| c.count > 0);
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum BlackKind {
    Source(usize),
    Inner(Edge),
    /// `(floor, weight)`; a β-vertex in the relative case.
    Sink(usize, u32),
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct BlackClass {
    kind: BlackKind,
    lo: usize,
    hi: usize,
    count: u32,
}

impl BlackClass {
    fn new(kind: BlackKind, lo: usize, hi: usize, count: u32) -> Self {
        Self {
            kind,
            lo,
            hi,
            count,
        }
    }
}

/// Number of distinct words: class `c` occupies gaps `c.lo..=c.hi`, members of
/// a class are indistinguishable.
fn count_words(classes: &[BlackClass], h: usize) -> BigUint {
    fn go(
        g: usize,
        rem: Vec<u32>,
        classes: &[BlackClass],
        h: usize,
        memo: &mut HashMap<(usize, Vec<u32>), BigUint>,
    ) -> BigUint {
        if g > h {
            return if rem.iter().all(|&r| r == 0) {
                BigUint::one()
            } else {
                BigUint::default()
            };
        }
        if let Some(v) = memo.get(&(g, rem.clone())) {
            return v.clone();
        }
        let active: Vec<usize> = (0..classes.len())
            .filter(|&i| rem[i] > 0 && classes[i].lo <= g && g <= classes[i].hi)
            .collect();
        let mut total = BigUint::default();
        let mut choice = vec![0u32; active.len()];
        loop {
            let forced_ok = active
                .iter()
                .zip(&choice)
                .all(|(&i, &x)| classes[i].hi != g || x == rem[i]);
            if forced_ok {
                let mut next = rem.clone();
                for (&i, &x) in active.iter().zip(&choice) {
                    next[i] -= x;
                }
                let sub = go(g + 1, next, classes, h, memo);
                if sub != BigUint::default() {
                    let counts: Vec<u64> = choice.iter().map(|&x| x as u64).collect();
                    total += multinomial(&counts) * sub;
                }
            }
            // odometer over 0..=rem[i]
            let mut k = 0;
            while k < active.len() {
                if choice[k] < rem[active[k]] {
                    choice[k] += 1;
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == active.len() {
                break;
            }
        }
        memo.insert((g, rem), total.clone());
        total
    }
    if classes
        .iter()
        .any(|c| c.count > 0 && (c.lo > c.hi || c.hi > h))
    {
        return BigUint::default();
    }
    let rem: Vec<u32> = classes.iter().map(|c| c.count).collect();
    go(0, rem, classes, h, &mut HashMap::new())
}

/// Number of markings of `d` up to equivalence.
pub fn count_markings(d: &FloorDiagram) -> BigUint {
    count_words(&d.absolute_classes(), d.height())
}

/// Multisets of out-edges `(target, weight)` from floor `j` with total weight
/// at most `budget` and exactly `count` edges.
fn out_edge_choices(j: usize, h: usize, budget: i64, count: usize) -> Vec<Vec<(usize, u32)>> {
    fn go(
        items: &[(usize, u32)],
        start: usize,
        budget: i64,
        count: usize,
        cur: &mut Vec<(usize, u32)>,
        out: &mut Vec<Vec<(usize, u32)>>,
    ) {
        if count == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..items.len() {
            let w = items[k].1 as i64;
            if w > budget {
                continue;
            }
            cur.push(items[k]);
            go(items, k, budget - w, count - 1, cur, out);
            cur.pop();
        }
    }
    if budget < count as i64 {
        return Vec::new();
    }
    let items: Vec<(usize, u32)> = ((j + 1)..=h)
        .flat_map(|t| (1..=budget.max(0) as u32).map(move |w| (t, w)))
        .collect();
    let mut out = Vec::new();
    go(&items, 0, budget, count, &mut Vec::new(), &mut out);
    out
}

/// All diagrams with the given orderings and sources, exactly `n_edges` edges.
fn diagrams_for(
    right: &[i64],
    left: &[i64],
    s_seq: &[u32],
    n_edges: usize,
    free: u32,
) -> Vec<FloorDiagram> {
    fn go(
        j: usize,
        h: usize,
        base: &[i64],
        incoming: &mut Vec<i64>,
        left_edges: usize,
        edges: &mut Vec<Edge>,
        out: &mut Vec<Vec<Edge>>,
    ) {
        if j > h {
            if left_edges == 0 {
                out.push(edges.clone());
            }
            return;
        }
        let budget = incoming[j] + base[j - 1];
        if budget < 0 {
            return;
        }
        let max_here = if j == h { 0 } else { left_edges };
        for count in 0..=max_here {
            for choice in out_edge_choices(j, h, budget, count) {
                for &(t, w) in &choice {
                    incoming[t] += w as i64;
                    edges.push(Edge {
                        source: j,
                        target: t,
                        weight: w,
                    });
                }
                go(j + 1, h, base, incoming, left_edges - count, edges, out);
                for &(t, w) in choice.iter().rev() {
                    incoming[t] -= w as i64;
                    edges.pop();
                }
            }
        }
    }
    let h = right.len();
    let base: Vec<i64> = (0..h)
        .map(|i| right[i] - left[i] + s_seq[i] as i64)
        .collect();
    let mut all = Vec::new();
    go(
        1,
        h,
        &base,
        &mut vec![0; h + 1],
        n_edges,
        &mut Vec::new(),
        &mut all,
    );
    all.into_iter()
        .map(|edges| FloorDiagram {
            right: right.to_vec(),
            left: left.to_vec(),
            s_seq: s_seq.to_vec(),
            edges,
            free_elevators: free,
        })
        .filter(FloorDiagram::is_valid)
        .collect()
}

/// Diagrams with `free` free elevators whose markings have cogenus `delta`.
fn diagrams_with_free(p: &HTransversePolygon, delta: u64, free: u32) -> Vec<FloorDiagram> {
    let h = p.height();
    let n_edges = p.lattice_point_count() as i64
        - 1
        - delta as i64
        - h as i64
        - p.d_top() as i64
        - p.d_bottom() as i64
        + free as i64;
    if n_edges < 0 || free > p.d_top() {
        return Vec::new();
    }
    let rights = p.right().orderings();
    let lefts = p.left().orderings();
    let sources = compositions(p.d_top() - free, h);
    let mut jobs = Vec::new();
    for r in &rights {
        for l in &lefts {
            for s in &sources {
                jobs.push((r, l, s));
            }
        }
    }
    jobs.par_iter()
        .flat_map_iter(|(r, l, s)| diagrams_for(r, l, s, n_edges as usize, free))
        .collect()
}

/// All floor diagrams whose (absolute) markings have cogenus `delta`, in a
/// deterministic order.
pub fn enumerate_floor_diagrams(p: &HTransversePolygon, delta: i64) -> Result<Vec<FloorDiagram>> {
    if delta < 0 {
        return Err(Error::NegativeDelta(delta));
    }
    let max_free = p.d_top().min(p.d_bottom());
    let mut out = Vec::new();
    for f in 0..=max_free {
        out.extend(diagrams_with_free(p, delta as u64, f));
    }
    Ok(out)
}

/// `Σ_[Γ] mult(Γ, y)` over absolute markings of cogenus `delta`.
pub fn floor_severi(p: &HTransversePolygon, delta: i64) -> Result<LaurentY> {
    let diagrams = enumerate_floor_diagrams(p, delta)?;
    Ok(diagrams
        .par_iter()
        .map(|d| d.multiplicity().scale(&BigInt::from(count_markings(d))))
        .reduce(LaurentY::zero, |a, b| a + b))
}

/// Ways of splitting `counts[k]` items of weight `weights[k]` among floors so
/// that floor `i` receives total weight exactly `caps[i]`.
fn distributions(weights: &[u32], counts: &[u32], caps: &[i64]) -> Vec<Vec<Vec<u32>>> {
    fn go(
        k: usize,
        weights: &[u32],
        counts: &[u32],
        rem: &mut Vec<i64>,
        cur: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if k == weights.len() {
            if rem.iter().all(|&r| r == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[k] as i64;
        for split in compositions(counts[k], rem.len()) {
            if split
                .iter()
                .zip(rem.iter())
                .any(|(&x, &r)| x as i64 * w > r)
            {
                continue;
            }
            for (r, &x) in rem.iter_mut().zip(&split) {
                *r -= x as i64 * w;
            }
            cur.push(split.clone());
            go(k + 1, weights, counts, rem, cur, out);
            cur.pop();
            for (r, &x) in rem.iter_mut().zip(&split) {
                *r += x as i64 * w;
            }
        }
    }
    let mut out = Vec::new();
    go(
        0,
        weights,
        counts,
        &mut caps.to_vec(),
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// One compatible choice of `(α^i, β^i)` for a diagram, with its black classes
/// and the number of orderings of the α tail.
struct RelativeMarking {
    classes: Vec<BlackClass>,
    tail_orders: BigUint,
}

fn relative_markings(
    d: &FloorDiagram,
    alpha: &Partition,
    beta: &Partition,
    free_alpha: u32,
    free_beta: u32,
) -> Vec<RelativeMarking> {
    let h = d.height();
    let caps: Vec<i64> = (1..=h).map(|j| d.sink_capacity(j)).collect();
    let mut weights = Vec::new();
    let mut counts = Vec::new();
    let mut is_alpha = Vec::new();
    for (j, m) in alpha.iter() {
        let m = if j == 1 { m - free_alpha } else { m };
        weights.push(j as u32);
        counts.push(m);
        is_alpha.push(true);
    }
    for (j, m) in beta.iter() {
        let m = if j == 1 { m - free_beta } else { m };
        weights.push(j as u32);
        counts.push(m);
        is_alpha.push(false);
    }
    let mut base = Vec::new();
    for (j, &s) in d.s_seq.iter().enumerate() {
        base.push(BlackClass::new(BlackKind::Source(j + 1), 0, j, s));
    }
    for (e, c) in d.edge_classes() {
        base.push(BlackClass::new(
            BlackKind::Inner(e),
            e.source,
            e.target - 1,
            c,
        ));
    }
    base.push(BlackClass::new(BlackKind::Free, 0, h, free_beta));
    let mut out = Vec::new();
    for split in distributions(&weights, &counts, &caps) {
        let mut classes = base.clone();
        let mut tail_orders = BigUint::one();
        for (k, per_floor) in split.iter().enumerate() {
            let w = weights[k];
            if is_alpha[k] {
                let mut parts: Vec<u64> = per_floor.iter().map(|&x| x as u64).collect();
                if w == 1 {
                    parts.push(free_alpha as u64);
                }
                tail_orders *= multinomial(&parts);
            } else {
                for (i, &x) in per_floor.iter().enumerate() {
                    classes.push(BlackClass::new(BlackKind::Sink(i + 1, w), i + 1, h, x));
                }
            }
        }
        classes.retain(|c| c.count > 0);
        out.push(RelativeMarking {
            classes,
            tail_orders,
        });
    }
    out
}

fn check_relative(
    p: &HTransversePolygon,
    delta: i64,
    alpha: &Partition,
    beta: &Partition,
) -> Result<()> {
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
    Ok(())
}

/// `Σ_[Γ] mult(Γ, y)` over `(α, β)`-markings of cogenus `delta`, where
/// `mult` skips the edges at α-vertices. This equals
/// `(1/I_y^{α+β}) Σ mult(Γ̂, y)` over the extended markings.
pub fn floor_relative(
    p: &HTransversePolygon,
    delta: i64,
    alpha: &Partition,
    beta: &Partition,
) -> Result<LaurentY> {
    check_relative(p, delta, alpha, beta)?;
    let beta_weight: LaurentY = beta
        .iter()
        .map(|(j, m)| LaurentY::quantum_integer(j as i64).pow(m))
        .product();
    let mut total = LaurentY::zero();
    for fa in 0..=alpha.get(1) {
        for fb in 0..=beta.get(1) {
            if fa + fb > p.d_top() {
                continue;
            }
            let diagrams = diagrams_with_free(p, delta as u64, fa + fb);
            let part = diagrams
                .par_iter()
                .map(|d| {
                    let mut n = BigUint::default();
                    for m in relative_markings(d, alpha, beta, fa, fb) {
                        n += count_words(&m.classes, d.height()) * m.tail_orders;
                    }
                    d.multiplicity().scale(&BigInt::from(n))
                })
                .reduce(LaurentY::zero, |a, b| a + b);
            total += &part;
        }
    }
    Ok(&total * &beta_weight)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexColour {
    White,
    Black,
}

/// A marking as an explicit vertex-ordered weighted graph; positions are
/// 0-based and every edge goes from a smaller to a larger position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedDiagram {
    pub colours: Vec<VertexColour>,
    pub edges: Vec<(usize, usize, u32)>,
}

impl MarkedDiagram {
    pub fn vertex_count(&self) -> usize {
        self.colours.len()
    }

    /// `#Δ - 1 - k`.
    pub fn cogenus(&self, p: &HTransversePolygon) -> i64 {
        p.lattice_point_count() as i64 - 1 - self.vertex_count() as i64
    }

    /// `∏_e [w(e)]_y`.
    pub fn multiplicity(&self) -> LaurentY {
        self.edges
            .iter()
            .map(|&(_, _, w)| LaurentY::quantum_integer(w as i64))
            .product()
    }

    fn degree(&self, v: usize) -> (Vec<u32>, Vec<u32>) {
        let ins = self
            .edges
            .iter()
            .filter(|e| e.1 == v)
            .map(|e| e.2)
            .collect();
        let outs = self
            .edges
            .iter()
            .filter(|e| e.0 == v)
            .map(|e| e.2)
            .collect();
        (ins, outs)
    }

    /// Checks the explicit description of absolute markings: colours, the
    /// shape of black vertices, source and sink counts, unit weights at the
    /// boundary, and floor divergences forming some `R - L`.
    pub fn satisfies_description(&self, p: &HTransversePolygon) -> bool {
        use VertexColour::*;
        let whites: Vec<usize> = (0..self.colours.len())
            .filter(|&v| self.colours[v] == White)
            .collect();
        if whites.len() != p.height() {
            return false;
        }
        if self
            .edges
            .iter()
            .any(|&(a, b, w)| a >= b || w == 0 || self.colours[a] == self.colours[b])
        {
            return false;
        }
        let (mut sources, mut sinks) = (0u32, 0u32);
        for v in 0..self.colours.len() {
            if self.colours[v] == White {
                continue;
            }
            let (ins, outs) = self.degree(v);
            let is_source = ins.is_empty();
            let is_sink = outs.is_empty();
            if is_source {
                sources += 1;
            }
            if is_sink {
                sinks += 1;
            }
            if is_source || is_sink {
                if ins.iter().chain(&outs).any(|&w| w != 1) || ins.len() + outs.len() > 1 {
                    return false;
                }
            } else if ins.len() != 1 || outs.len() != 1 || ins[0] != outs[0] {
                return false;
            }
        }
        if sources != p.d_top() || sinks != p.d_bottom() {
            return false;
        }
        let divs: Vec<i64> = whites
            .iter()
            .map(|&v| {
                let (ins, outs) = self.degree(v);
                outs.iter().map(|&w| w as i64).sum::<i64>()
                    - ins.iter().map(|&w| w as i64).sum::<i64>()
            })
            .collect();
        divergence_profiles(p.right(), p.left())
            .map(|ps| ps.iter().any(|d| d.sequence == divs))
            .unwrap_or(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Slot {
    White(usize),
    Black(usize),
}

/// Every distinct word of the absolute marking classes, found by placing
/// individual black vertices one at a time and deduplicating the resulting
/// class words. Exponential; meant for cross-checking [`count_markings`].
fn brute_force_words(classes: &[BlackClass], h: usize) -> HashSet<Vec<Slot>> {
    fn go(
        g: usize,
        h: usize,
        vertices: &[(usize, usize, usize)],
        placed: &mut Vec<bool>,
        word: &mut Vec<Slot>,
        out: &mut HashSet<Vec<Slot>>,
    ) {
        let remaining: Vec<usize> = (0..vertices.len()).filter(|&i| !placed[i]).collect();
        if g == h && remaining.is_empty() {
            out.insert(word.clone());
            return;
        }
        for &i in &remaining {
            let (class, lo, hi) = vertices[i];
            if lo <= g && g <= hi {
                placed[i] = true;
                word.push(Slot::Black(class));
                go(g, h, vertices, placed, word, out);
                word.pop();
                placed[i] = false;
            }
        }
        if g < h && remaining.iter().all(|&i| vertices[i].2 > g) {
            word.push(Slot::White(g + 1));
            go(g + 1, h, vertices, placed, word, out);
            word.pop();
        }
    }
    let vertices: Vec<(usize, usize, usize)> = classes
        .iter()
        .enumerate()
        .flat_map(|(k, c)| std::iter::repeat_n((k, c.lo, c.hi), c.count as usize))
        .collect();
    let mut out = HashSet::new();
    go(
        0,
        h,
        &vertices,
        &mut vec![false; vertices.len()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

fn word_to_marking(word: &[Slot], classes: &[BlackClass]) -> MarkedDiagram {
    let mut colours = Vec::with_capacity(word.len());
    let mut white_pos = HashMap::new();
    for (pos, slot) in word.iter().enumerate() {
        match slot {
            Slot::White(j) => {
                colours.push(VertexColour::White);
                white_pos.insert(*j, pos);
            }
            Slot::Black(_) => colours.push(VertexColour::Black),
        }
    }
    let mut edges = Vec::new();
    for (pos, slot) in word.iter().enumerate() {
        if let Slot::Black(k) = slot {
            match classes[*k].kind {
                BlackKind::Source(j) => edges.push((pos, white_pos[&j], 1)),
                BlackKind::Sink(j, w) => edges.push((white_pos[&j], pos, w)),
                BlackKind::Inner(e) => {
                    edges.push((white_pos[&e.source], pos, e.weight));
                    edges.push((pos, white_pos[&e.target], e.weight));
                }
                BlackKind::Free => {}
            }
        }
    }
    edges.sort_unstable();
    MarkedDiagram { colours, edges }
}

/// All markings of `d` up to equivalence, by exhaustive linear-order search.
pub fn enumerate_markings(d: &FloorDiagram) -> Vec<MarkedDiagram> {
    let classes = d.absolute_classes();
    let mut words: Vec<Vec<Slot>> = brute_force_words(&classes, d.height())
        .into_iter()
        .collect();
    words.sort_by_key(|w| format!("{w:?}"));
    words.iter().map(|w| word_to_marking(w, &classes)).collect()
}

/// Number of `(α, β)`-markings of `d` by exhaustive search of the word part.
pub fn brute_force_relative_count(
    d: &FloorDiagram,
    alpha: &Partition,
    beta: &Partition,
    free_alpha: u32,
    free_beta: u32,
) -> BigUint {
    let mut n = BigUint::default();
    for m in relative_markings(d, alpha, beta, free_alpha, free_beta) {
        let words = brute_force_words(&m.classes, d.height()).len();
        n += BigUint::from(words) * &m.tail_orders;
    }
    n
}
