//! First homology of a surgery presentation via Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SurgeryPresentation;

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with
/// `1 < d₁ | d₂ | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct H1 {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl H1 {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for H1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        parts.extend(std::iter::repeat_n("Z".to_string(), self.free_rank));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Diagonal of the Smith normal form of an integer matrix (absolute values,
/// zeros dropped), each entry dividing the next.
pub fn smith_diagonal(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigInt>> = m.to_vec();
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()));
            let Some((pi, pj)) = pivot else {
                return diag;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                let pivot_row = m[t].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row).skip(t) {
                    *x -= &q * p;
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide everything left; otherwise fold a row in
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
            match bad_row {
                Some(i) => {
                    let row = m[i].clone();
                    for (x, y) in m[t].iter_mut().zip(&row).skip(t) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
    }
    diag
}

/// Presentation matrix of H1: for each finite component `i` with
/// coefficient `p/q`, row `i` has `p` on the diagonal and `q·lk(i,j)`
/// elsewhere. Components with coefficient ∞ are dropped.
pub fn presentation_matrix(p: &SurgeryPresentation) -> Vec<Vec<BigInt>> {
    let keep: Vec<usize> = (0..p.len()).filter(|&i| !p.components()[i].coefficient.is_infinite()).collect();
    keep.iter()
        .map(|&i| {
            let (num, den) = p.components()[i].coefficient.as_fraction();
            keep.iter().map(|&j| if i == j { num.clone() } else { &den * BigInt::from(p.lk(i, j)) }).collect()
        })
        .collect()
}

pub fn h1(p: &SurgeryPresentation) -> H1 {
    let m = presentation_matrix(p);
    let diag = smith_diagonal(&m);
    H1 { free_rank: m.len() - diag.len(), torsion: diag.into_iter().filter(|d| !d.is_one()).collect() }
}
