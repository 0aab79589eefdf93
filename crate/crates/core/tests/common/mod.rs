//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use ttk_core::braid::BraidWord;
use ttk_core::poly::{LaurentPoly, Rational, Variable};
use ttk_core::surgery::{apply_move, Component, Move, SurgeryPresentation};

/// `t^((p-1)(q-1)/2) (1 - t^(p+1) - t^(q+1) + t^(p+q)) / (1 - t²)` for
/// coprime `p, q >= 1`, divided out by hand. Negative `q` is the mirror.
pub fn torus_jones_formula(p: i64, q: i64) -> LaurentPoly {
    assert!(p >= 1 && q != 0 && p.gcd(&q) == 1);
    if q < 0 {
        let v = torus_jones_formula(p, -q);
        return LaurentPoly::from_terms(Variable::T, v.terms().map(|(e, c)| (-e, c.clone())).collect::<Vec<_>>());
    }
    let deg = (p + q) as usize;
    let mut num = vec![0i64; deg + 1];
    num[0] += 1;
    num[(p + 1) as usize] -= 1;
    num[(q + 1) as usize] -= 1;
    num[deg] += 1;
    // (1 - t²)·quot = num, solved from the bottom up
    let mut quot = vec![0i64; deg - 1];
    for k in 0..deg - 1 {
        quot[k] = num[k] + if k >= 2 { quot[k - 2] } else { 0 };
    }
    let check = |k: usize| -> i64 {
        let a = if k < quot.len() { quot[k] } else { 0 };
        let b = if k >= 2 && k - 2 < quot.len() { quot[k - 2] } else { 0 };
        a - b
    };
    assert!((0..=deg).all(|k| check(k) == num[k]), "division left a remainder");
    LaurentPoly::from_coeffs(Variable::T, (p - 1) * (q - 1) / 2, &quot)
}

/// Walks the closure of `b` strand by strand through the braid picture and
/// records `(letter index, passes over)` at every crossing visit. Only
/// meaningful when the closure is a knot.
pub fn braid_visits(b: &BraidWord) -> Vec<(usize, bool)> {
    let letters = b.letters();
    let mut pos = 0usize;
    let mut visits = Vec::new();
    loop {
        for (k, &g) in letters.iter().enumerate() {
            let i = g.unsigned_abs() as usize - 1;
            if pos == i {
                visits.push((k, g > 0));
                pos = i + 1;
            } else if pos == i + 1 {
                visits.push((k, g < 0));
                pos = i;
            }
        }
        if pos == 0 {
            return visits;
        }
    }
}

/// Minimal DT code over all basepoints and both directions, built directly
/// from a visit sequence.
pub fn dt_oracle(visits: &[(usize, bool)], crossings: usize) -> Vec<i64> {
    let reversed: Vec<_> = visits.iter().rev().copied().collect();
    let mut best: Option<Vec<i64>> = None;
    for seq in [visits.to_vec(), reversed] {
        for start in 0..seq.len() {
            let mut odd_label = vec![0usize; crossings];
            let mut even = vec![(0i64, false); crossings];
            for step in 0..seq.len() {
                let (c, over) = seq[(start + step) % seq.len()];
                let label = step + 1;
                if label % 2 == 1 {
                    odd_label[c] = label;
                } else {
                    even[c] = (label as i64, over);
                }
            }
            let mut by_odd: Vec<(usize, i64)> =
                (0..crossings).map(|c| (odd_label[c], if even[c].1 { -even[c].0 } else { even[c].0 })).collect();
            by_odd.sort();
            let code: Vec<i64> = by_odd.into_iter().map(|(_, e)| e).collect();
            let key = |v: &[i64]| v.iter().map(|&e| (e.abs(), e < 0)).collect::<Vec<_>>();
            if best.as_ref().is_none_or(|b| key(&code) < key(b)) {
                best = Some(code);
            }
        }
    }
    best.expect("nonempty")
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}

pub fn random_braid(rng: &mut StdRng, max_strands: usize, max_len: usize) -> BraidWord {
    let n = rng.gen_range(2..=max_strands);
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(n, letters).unwrap()
}

/// Random braid whose closure is a knot with `1..=max_crossings` crossings
/// and no adjacent cancelling letters.
pub fn random_knot_braid(rng: &mut StdRng, max_strands: usize, max_crossings: usize) -> BraidWord {
    loop {
        let b = random_braid(rng, max_strands, max_crossings).free_reduced();
        let perm = b.permutation();
        let mut x = perm[0];
        let mut cycle = 1;
        while x != 0 {
            x = perm[x];
            cycle += 1;
        }
        if !b.is_empty() && cycle == b.strands() {
            return b;
        }
    }
}

fn random_coefficient(rng: &mut StdRng) -> Rational {
    match rng.gen_range(0..10) {
        0 => Rational::Infinity,
        1..=5 => Rational::integer(rng.gen_range(-12..=12)),
        _ => loop {
            let num = rng.gen_range(-12i64..=12);
            let den = rng.gen_range(1i64..=12);
            if num != 0 {
                break Rational::new(num, den).unwrap();
            }
        },
    }
}

/// Up to six components: a random core plus declared meridians.
pub fn random_presentation(rng: &mut StdRng) -> SurgeryPresentation {
    let core = rng.gen_range(1..=4usize);
    let extra = rng.gen_range(0..=(6 - core).min(2));
    let n = core + extra;
    let mut comps = Vec::new();
    let mut lk = vec![vec![0i64; n]; n];
    for i in 0..core {
        let unknotted = rng.gen_bool(0.7);
        let coeff = if rng.gen_bool(0.25) {
            Rational::integer(if rng.gen_bool(0.5) { 1 } else { -1 })
        } else {
            random_coefficient(rng)
        };
        comps.push(Component::new(format!("k{i}"), coeff, unknotted));
        for j in 0..i {
            if rng.gen_bool(0.5) {
                let v = rng.gen_range(-3..=3);
                lk[i][j] = v;
                lk[j][i] = v;
            }
        }
    }
    let mut meridians = Vec::new();
    for m in core..n {
        let target = rng.gen_range(0..core);
        let v = if rng.gen_bool(0.5) { 1 } else { -1 };
        lk[m][target] = v;
        lk[target][m] = v;
        comps.push(Component::new(format!("m{m}"), random_coefficient(rng), true));
        meridians.push((m, target));
    }
    SurgeryPresentation::new(comps, lk, meridians).unwrap()
}

/// Every move of every kind that is legal on `p` (blow-ups sampled).
pub fn legal_moves(rng: &mut StdRng, p: &SurgeryPresentation) -> Vec<(Move, SurgeryPresentation)> {
    let names: Vec<String> = p.components().iter().map(|c| c.name.clone()).collect();
    let mut cands = Vec::new();
    for a in &names {
        cands.push(Move::BlowDown(a.clone()));
        cands.push(Move::Chain(a.clone()));
        for b in &names {
            if a != b {
                cands.push(Move::SlamDunk { meridian: a.clone(), target: b.clone() });
                cands.push(Move::Slide {
                    moving: a.clone(),
                    over: b.clone(),
                    sign: if rng.gen_bool(0.5) { 1 } else { -1 },
                });
            }
        }
    }
    if p.len() < 8 {
        for _ in 0..2 {
            let links =
                p.components()
                    .iter()
                    .map(|c| {
                        if c.coefficient.is_integer() || c.coefficient.is_infinite() {
                            rng.gen_range(-2..=2)
                        } else {
                            0
                        }
                    })
                    .collect();
            cands.push(Move::BlowUp { epsilon: if rng.gen_bool(0.5) { 1 } else { -1 }, links });
        }
    }
    cands.into_iter().filter_map(|m| apply_move(p, &m).ok().map(|(q, _)| (m, q))).collect()
}

pub fn move_kind(m: &Move) -> usize {
    match m {
        Move::BlowDown(_) => 0,
        Move::BlowUp { .. } => 1,
        Move::SlamDunk { .. } => 2,
        Move::Slide { .. } => 3,
        Move::Chain(_) => 4,
    }
}

/// A presentation with integer framings and a `±1` unknot at index 0.
pub fn random_integer_presentation(rng: &mut StdRng) -> (SurgeryPresentation, i64) {
    let n = rng.gen_range(1..=6usize);
    let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
    let mut lk = vec![vec![0i64; n]; n];
    let mut comps = vec![Component::new("u", Rational::integer(eps), true)];
    for i in 1..n {
        comps.push(Component::new(format!("k{i}"), Rational::integer(rng.gen_range(-9..=9)), rng.gen_bool(0.5)));
    }
    for i in 0..n {
        for j in 0..i {
            let v = rng.gen_range(-9..=9);
            lk[i][j] = v;
            lk[j][i] = v;
        }
    }
    (SurgeryPresentation::new(comps, lk, []).unwrap(), eps)
}

pub fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("fits")
}
