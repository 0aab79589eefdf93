//! Kauffman bracket and Jones polynomial.
//!
//! Three routes compute the same bracket:
//!
//! * [`kauffman_bracket`] enumerates all `2^c` smoothing states of a diagram;
//! * [`kauffman_bracket_contracted`] sums the same states crossing by crossing,
//!   merging partial states that leave the same arc pairing open;
//! * [`jones_tl`] multiplies the braid word out in the Temperley-Lieb algebra
//!   and closes it with the Markov trace.
//!
//! The bracket is normalized so the crossing-free unknot is 1, with loop value
//! `δ = -A² - A⁻²` for each loop beyond the first. The Jones polynomial is
//! `(-A³)^(-w) <D>` with `t = A⁻⁴`. With this convention the right-handed
//! trefoil `2: 1 1 1` has `V = -t⁴ + t³ + t`; the mirror image flips `t ↦ t⁻¹`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::braid::BraidWord;
use crate::diagram::{braid_closure, writhe, PlanarDiagram};
use crate::poly::{LaurentPoly, Rational, Variable};

pub const DEFAULT_STATESUM_LIMIT: usize = 24;
pub const DEFAULT_TL_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JonesError {
    #[error("{crossings} crossings exceed the state-sum limit of {limit}; raise --statesum-limit or use the TL path")]
    CrossingLimit { crossings: usize, limit: usize },
    #[error("{strands} strands exceed the Temperley-Lieb limit of {limit}; raise --tl-limit")]
    StrandLimit { strands: usize, limit: usize },
    #[error("bracket exponents are not all even; not a bracket of an oriented diagram")]
    OddExponent,
}

/// Size limits for the enumeration and Temperley-Lieb paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub statesum_crossings: usize,
    pub tl_strands: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { statesum_crossings: DEFAULT_STATESUM_LIMIT, tl_strands: DEFAULT_TL_LIMIT }
    }
}

/// Which route [`jones_of_braid`] takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    StateSum,
    Contracted,
    TemperleyLieb,
}

fn delta() -> LaurentPoly {
    LaurentPoly::from_terms(Variable::A, [(2, -1), (-2, -1)])
}

fn a_power(k: i64) -> LaurentPoly {
    LaurentPoly::monomial(Variable::A, k, 1)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

// A-smoothing of a positive crossing joins each incoming end to the other
// strand's outgoing end (the oriented smoothing); for a negative crossing the
// roles of the two smoothings swap.
fn smoothing_pairs(c: &crate::diagram::Crossing, a_state: bool) -> [(usize, usize); 2] {
    let oriented = a_state == (c.sign > 0);
    if oriented {
        [(c.over.0, c.under.1), (c.under.0, c.over.1)]
    } else {
        [(c.over.0, c.under.0), (c.over.1, c.under.1)]
    }
}

/// Kauffman bracket by enumerating all `2^c` states (in parallel).
pub fn kauffman_bracket(d: &PlanarDiagram, limit: usize) -> Result<LaurentPoly, JonesError> {
    let c = d.crossing_count();
    if c > limit || c >= 63 {
        return Err(JonesError::CrossingLimit { crossings: c, limit });
    }
    let m = d.arc_count();
    let width = m + 1;
    // counts[b * width + loops] = number of states with b B-smoothings and that many loops
    let counts = (0..1u64 << c)
        .into_par_iter()
        .fold(
            || (vec![0u64; (c + 1) * width], vec![0usize; m]),
            |(mut counts, mut parent), mask| {
                for (i, p) in parent.iter_mut().enumerate() {
                    *p = i;
                }
                let mut loops = m;
                for (k, cr) in d.crossings().iter().enumerate() {
                    let a_state = mask >> k & 1 == 0;
                    for (x, y) in smoothing_pairs(cr, a_state) {
                        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                        if rx != ry {
                            parent[rx] = ry;
                            loops -= 1;
                        }
                    }
                }
                counts[mask.count_ones() as usize * width + loops] += 1;
                (counts, parent)
            },
        )
        .map(|(counts, _)| counts)
        .reduce(
            || vec![0u64; (c + 1) * width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );

    let d_pows = delta_powers(m);
    let mut total = LaurentPoly::zero(Variable::A);
    for b in 0..=c {
        for loops in 1..=m {
            let n = counts[b * width + loops];
            if n > 0 {
                let term = a_power(c as i64 - 2 * b as i64).scale(&BigInt::from(n));
                total = &total + &(&term * &d_pows[loops - 1]);
            }
        }
    }
    Ok(total)
}

fn delta_powers(max: usize) -> Vec<LaurentPoly> {
    let delta = delta();
    let mut pows = vec![LaurentPoly::one(Variable::A)];
    for k in 1..=max {
        pows.push(&pows[k - 1] * &delta);
    }
    pows
}

/// Open-path bookkeeping for the contracted state sum: each entry pairs the
/// two arcs at the free ends of one partially built loop. Kept sorted.
type Frontier = Vec<(u32, u32)>;

fn partner(f: &Frontier, x: u32) -> Option<u32> {
    f.iter().find_map(|&(a, b)| {
        if a == x {
            Some(b)
        } else if b == x {
            Some(a)
        } else {
            None
        }
    })
}

fn unpair(f: &mut Frontier, x: u32) {
    f.retain(|&(a, b)| a != x && b != x);
}

fn pair(f: &mut Frontier, x: u32, y: u32) {
    let e = if x < y { (x, y) } else { (y, x) };
    let pos = f.binary_search(&e).unwrap_or_else(|p| p);
    f.insert(pos, e);
}

/// Joins the ends of arcs `x` and `y`; returns true when a loop closes.
fn join(f: &mut Frontier, x: u32, y: u32) -> bool {
    if x == y {
        return true;
    }
    match (partner(f, x), partner(f, y)) {
        (None, None) => {
            pair(f, x, y);
            false
        }
        (Some(px), None) => {
            unpair(f, x);
            pair(f, px, y);
            false
        }
        (None, Some(py)) => {
            unpair(f, y);
            pair(f, x, py);
            false
        }
        (Some(px), Some(_)) if px == y => {
            unpair(f, x);
            true
        }
        (Some(px), Some(py)) => {
            unpair(f, x);
            unpair(f, y);
            pair(f, px, py);
            false
        }
    }
}

/// Kauffman bracket as the same state sum as [`kauffman_bracket`], evaluated
/// crossing by crossing: partial states that leave the same arcs paired up
/// are merged, so the cost grows with the width of the diagram rather than
/// with `2^c`. No crossing limit applies.
pub fn kauffman_bracket_contracted(d: &PlanarDiagram) -> LaurentPoly {
    let delta = delta();
    let free_loops = (0..d.arc_count()).filter(|&a| d.head(a).is_none()).count();
    let mut start = LaurentPoly::one(Variable::A);
    for _ in 1..free_loops {
        start = &start * &delta;
    }
    // key: (open pairing, whether some loop has already closed)
    let mut states: HashMap<(Frontier, bool), LaurentPoly> = HashMap::new();
    states.insert((Vec::new(), free_loops > 0), start);

    for cr in d.crossings() {
        let mut next: HashMap<(Frontier, bool), LaurentPoly> = HashMap::with_capacity(states.len() * 2);
        for ((frontier, closed_any), poly) in &states {
            for a_state in [true, false] {
                let mut f = frontier.clone();
                let mut closed = *closed_any;
                let mut value = poly.shift(if a_state { 1 } else { -1 });
                for (x, y) in smoothing_pairs(cr, a_state) {
                    if join(&mut f, x as u32, y as u32) {
                        if closed {
                            value = &value * &delta;
                        }
                        closed = true;
                    }
                }
                let slot = next.entry((f, closed)).or_insert_with(|| LaurentPoly::zero(Variable::A));
                *slot = &*slot + &value;
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }

    let mut total = LaurentPoly::zero(Variable::A);
    for ((frontier, _), poly) in states {
        assert!(frontier.is_empty(), "open arcs left after processing every crossing");
        total = &total + &poly;
    }
    total
}

/// `(-A³)^(-w) · bracket`, then `t = A⁻⁴`. Links with an even number of
/// components come out in the `SqrtT` variable.
pub fn normalize(bracket: &LaurentPoly, writhe: i64) -> Result<LaurentPoly, JonesError> {
    let mut v = bracket.shift(-3 * writhe);
    if writhe % 2 != 0 {
        v = -v;
    }
    if v.terms().all(|(e, _)| e % 4 == 0) {
        Ok(v.map_exponents(Variable::T, |e| -e / 4))
    } else if v.terms().all(|(e, _)| e % 2 == 0) {
        Ok(v.map_exponents(Variable::SqrtT, |e| -e / 2))
    } else {
        Err(JonesError::OddExponent)
    }
}

/// Jones polynomial by full state enumeration.
pub fn jones(d: &PlanarDiagram, limits: &Limits) -> Result<LaurentPoly, JonesError> {
    normalize(&kauffman_bracket(d, limits.statesum_crossings)?, writhe(d))
}

/// Jones polynomial by the contracted state sum.
pub fn jones_contracted(d: &PlanarDiagram) -> Result<LaurentPoly, JonesError> {
    normalize(&kauffman_bracket_contracted(d), writhe(d))
}

/// `t ↦ t⁻¹`.
pub fn mirror_poly(p: &LaurentPoly) -> LaurentPoly {
    p.map_exponents(p.variable(), |e| -e)
}

/// Crossingless matchings on `2n` points: top points are `0..n`, bottom
/// points `n..2n`, both left to right. `m[x]` is the partner of `x`.
pub type Matching = Box<[u16]>;

/// Diagram basis of the Temperley-Lieb algebra on `n` strands.
#[derive(Clone, Debug)]
pub struct TlBasis {
    strands: usize,
    elements: Vec<Matching>,
}

impl TlBasis {
    pub fn new(strands: usize) -> Self {
        let n = strands;
        // boundary circle: top 0..n left to right, then bottom right to left
        let circ_to_point = |k: usize| if k < n { k } else { n + (2 * n - 1 - k) };
        let mut elements = Vec::new();
        let mut circ = vec![usize::MAX; 2 * n];
        enumerate_noncrossing(0, &mut circ, &mut |circ| {
            let mut m = vec![0u16; 2 * n];
            for (k, &j) in circ.iter().enumerate() {
                m[circ_to_point(k)] = circ_to_point(j) as u16;
            }
            elements.push(m.into_boxed_slice());
        });
        TlBasis { strands, elements }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matching] {
        &self.elements
    }
}

fn enumerate_noncrossing(from: usize, circ: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    let Some(i) = (from..circ.len()).find(|&k| circ[k] == usize::MAX) else {
        emit(circ);
        return;
    };
    // partner j of i must leave an even, self-contained block between them
    let mut j = i + 1;
    while j < circ.len() {
        if circ[j] == usize::MAX && (j - i - 1) % 2 == 0 && (i + 1..j).all(|k| circ[k] == usize::MAX) {
            circ[i] = j;
            circ[j] = i;
            enumerate_noncrossing(i + 1, circ, emit);
            circ[i] = usize::MAX;
            circ[j] = usize::MAX;
        }
        if circ[j] != usize::MAX {
            break;
        }
        j += 1;
    }
}

pub fn is_noncrossing(m: &[u16]) -> bool {
    let n = m.len() / 2;
    let circ = |p: usize| if p < n { p } else { 3 * n - 1 - p };
    let chords: Vec<(usize, usize)> = (0..2 * n)
        .filter(|&p| p < m[p] as usize)
        .map(|p| {
            let (a, b) = (circ(p), circ(m[p] as usize));
            (a.min(b), a.max(b))
        })
        .collect();
    chords.iter().all(|&(a, b)| chords.iter().all(|&(c, d)| !(a < c && c < b && b < d)))
}

fn identity_matching(n: usize) -> Matching {
    (0..2 * n).map(|p| if p < n { (p + n) as u16 } else { (p - n) as u16 }).collect()
}

/// `m · e_i` (stack `e_i` below `m`); the flag reports a closed loop.
fn times_e(m: &Matching, n: usize, i: usize) -> (Matching, bool) {
    let (b0, b1) = (n + i, n + i + 1);
    if m[b0] as usize == b1 {
        return (m.clone(), true);
    }
    let mut out = m.clone();
    let (x, y) = (m[b0] as usize, m[b1] as usize);
    out[x] = y as u16;
    out[y] = x as u16;
    out[b0] = b1 as u16;
    out[b1] = b0 as u16;
    (out, false)
}

/// Loops formed by joining top point `j` to bottom point `j` for every `j`.
fn trace_loops(m: &Matching, n: usize) -> usize {
    let mut seen = vec![false; 2 * n];
    let mut loops = 0;
    for start in 0..2 * n {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut p = start;
        loop {
            seen[p] = true;
            let q = m[p] as usize;
            seen[q] = true;
            p = if q < n { q + n } else { q - n };
            if p == start {
                break;
            }
        }
    }
    loops
}

/// Kauffman bracket of the closure of `b` via the Temperley-Lieb algebra.
pub fn kauffman_bracket_tl(b: &BraidWord, limit: usize) -> Result<LaurentPoly, JonesError> {
    let n = b.strands();
    if n > limit {
        return Err(JonesError::StrandLimit { strands: n, limit });
    }
    let delta = delta();
    let mut state: HashMap<Matching, LaurentPoly> = HashMap::new();
    state.insert(identity_matching(n), LaurentPoly::one(Variable::A));

    for &g in b.letters() {
        let i = g.unsigned_abs() as usize - 1;
        // σ ↦ A + A⁻¹ e, σ⁻¹ ↦ A⁻¹ + A e
        let (id_shift, e_shift) = if g > 0 { (1, -1) } else { (-1, 1) };
        let mut next: HashMap<Matching, LaurentPoly> = HashMap::with_capacity(state.len() * 2);
        for (m, p) in &state {
            let slot = next.entry(m.clone()).or_insert_with(|| LaurentPoly::zero(Variable::A));
            *slot = &*slot + &p.shift(id_shift);
            let (me, closed) = times_e(m, n, i);
            let mut term = p.shift(e_shift);
            if closed {
                term = &term * &delta;
            }
            let slot = next.entry(me).or_insert_with(|| LaurentPoly::zero(Variable::A));
            *slot = &*slot + &term;
        }
        next.retain(|_, p| !p.is_zero());
        state = next;
    }

    let d_pows = delta_powers(n);
    let mut total = LaurentPoly::zero(Variable::A);
    for (m, p) in &state {
        total = &total + &(p * &d_pows[trace_loops(m, n) - 1]);
    }
    Ok(total)
}

/// Jones polynomial of the closure of `b` via the Temperley-Lieb algebra.
pub fn jones_tl(b: &BraidWord, limits: &Limits) -> Result<LaurentPoly, JonesError> {
    normalize(&kauffman_bracket_tl(b, limits.tl_strands)?, b.exponent_sum())
}

pub fn jones_of_braid(b: &BraidWord, method: Method, limits: &Limits) -> Result<LaurentPoly, JonesError> {
    match method {
        Method::StateSum => jones(&braid_closure(b), limits),
        Method::Contracted => jones_contracted(&braid_closure(b)),
        Method::TemperleyLieb => jones_tl(b, limits),
    }
}

/// `|V(-1)|`; for `SqrtT` polynomials `t^(1/2)` is taken to be `i`.
pub fn determinant(v: &LaurentPoly) -> BigInt {
    match v.variable() {
        Variable::SqrtT => {
            let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
            for (e, c) in v.terms() {
                match e.rem_euclid(4) {
                    0 => re += c,
                    1 => im += c,
                    2 => re -= c,
                    _ => im -= c,
                }
            }
            re.abs() + im.abs()
        }
        _ => {
            let x = v.substitute(&Rational::integer(-1)).expect("evaluation at -1");
            x.to_integer().expect("integer coefficients").abs()
        }
    }
}
