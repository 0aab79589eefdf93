//! Framed-link surgery presentations and Kirby moves on their linking data.
//!
//! A presentation records, per component, a surgery coefficient in Q ∪ {∞}
//! and whether the component is known to be unknotted, together with the
//! linking matrix and a set of declared meridian pairs `(a, b)`: `a` is a
//! small unknot encircling `b` once. Moves act on this data; embedded
//! diagrams are never built, and [`h1`] is the invariant that every move must
//! preserve.
//!
//! Unknottedness is tracked conservatively. A move that twists or slides a
//! component clears its flag unless a declared meridian pair shows that only
//! one of its strands is involved.

mod cfrac;
mod homology;
mod script;
mod text;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::poly::Rational;

pub use cfrac::{cfrac_eval, cfrac_expand, ContinuedFraction};
pub use homology::{h1, presentation_matrix, smith_diagonal, H1};
pub use script::{apply_move, kirby_reduce, parse_script, KirbyTrace, Move, ReduceError, Script, TraceStep};
pub use text::{parse_presentation, render_presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("component index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("component `{0}` is not known to be unknotted")]
    NotUnknotted(String),
    #[error("component `{0}` has coefficient {1}, blow-down needs +1 or -1")]
    NotUnitFraming(String, Rational),
    #[error("component `{name}` has non-integral coefficient {coefficient} and links `{with}`")]
    RationalNeighbor { name: String, coefficient: Rational, with: String },
    #[error("`{meridian}` is not a declared meridian of `{target}`")]
    NotMeridian { meridian: String, target: String },
    #[error("slam-dunk target `{0}` must have an integer coefficient, has {1}")]
    NonIntegerTarget(String, Rational),
    #[error("slam-dunk of `{0}` with coefficient 0 is undefined")]
    ZeroCoefficient(String),
    #[error("`{0}` has meridians of its own; slam-dunk those first")]
    HasMeridians(String),
    #[error("component `{0}` already has an integral coefficient")]
    AlreadyIntegral(String),
    #[error("component `{0}` has coefficient ∞")]
    InfiniteCoefficient(String),
    #[error("component `{0}` has non-integral coefficient {1}")]
    NonIntegral(String, Rational),
    #[error("cannot slide a component over itself")]
    SameComponent,
    #[error("sign must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error("linking vector has {got} entries, presentation has {expected} components")]
    LinkingLength { expected: usize, got: usize },
    #[error("integer overflow in linking data")]
    Overflow,
    #[error("cannot expand ∞ as a continued fraction")]
    InfiniteExpansion,
    #[error("non-canonical continued fraction: {0}")]
    NonCanonical(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub coefficient: Rational,
    pub unknotted: bool,
}

impl Component {
    pub fn new(name: impl Into<String>, coefficient: Rational, unknotted: bool) -> Self {
        Component { name: name.into(), coefficient, unknotted }
    }
}

/// Framed link as coefficients, linking matrix and meridian pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryPresentation {
    components: Vec<Component>,
    linking: Vec<Vec<i64>>,
    meridians: BTreeSet<(usize, usize)>,
}

impl SurgeryPresentation {
    pub fn empty() -> Self {
        SurgeryPresentation { components: Vec::new(), linking: Vec::new(), meridians: BTreeSet::new() }
    }

    pub fn new(
        components: Vec<Component>,
        linking: Vec<Vec<i64>>,
        meridians: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, SurgeryError> {
        let n = components.len();
        let invalid = |msg: String| Err(SurgeryError::Invalid(msg));
        if linking.len() != n || linking.iter().any(|r| r.len() != n) {
            return invalid(format!("linking matrix must be {n}x{n}"));
        }
        for i in 0..n {
            if linking[i][i] != 0 {
                return invalid(format!("linking diagonal at `{}` must be 0", components[i].name));
            }
            if let Some(j) = (0..i).find(|&j| linking[i][j] != linking[j][i]) {
                return invalid(format!("linking matrix not symmetric at ({}, {})", i + 1, j + 1));
            }
            if components[..i].iter().any(|c| c.name == components[i].name) {
                return invalid(format!("duplicate component name `{}`", components[i].name));
            }
            if components[i].name.is_empty() || components[i].name.contains(char::is_whitespace) {
                return invalid(format!("bad component name `{}`", components[i].name));
            }
        }
        let pairs: BTreeSet<(usize, usize)> = meridians.into_iter().collect();
        let p = SurgeryPresentation { components, linking, meridians: pairs.clone() };
        for &(a, b) in &pairs {
            if a >= n || b >= n || a == b {
                return invalid(format!("meridian pair ({a}, {b}) out of range"));
            }
        }
        for &(a, b) in &pairs {
            if !p.meridian_valid(a, b) {
                return invalid(format!(
                    "`{}` cannot be a meridian of `{}`: it must be unknotted, link it once and link nothing else except its own meridians",
                    p.components[a].name, p.components[b].name
                ));
            }
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, name: &str) -> Option<&Component> {
        self.index_of(name).ok().map(|i| &self.components[i])
    }

    pub fn lk(&self, i: usize, j: usize) -> i64 {
        self.linking[i][j]
    }

    pub fn linking(&self) -> &[Vec<i64>] {
        &self.linking
    }

    pub fn meridians(&self) -> &BTreeSet<(usize, usize)> {
        &self.meridians
    }

    pub fn is_meridian(&self, a: usize, b: usize) -> bool {
        self.meridians.contains(&(a, b))
    }

    pub fn index_of(&self, name: &str) -> Result<usize, SurgeryError> {
        self.components
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| SurgeryError::UnknownComponent(name.to_string()))
    }

    fn check_index(&self, i: usize) -> Result<(), SurgeryError> {
        if i < self.len() {
            Ok(())
        } else {
            Err(SurgeryError::IndexOutOfRange(i))
        }
    }

    fn name(&self, i: usize) -> String {
        self.components[i].name.clone()
    }

    fn clasped(&self, a: usize, b: usize) -> bool {
        self.is_meridian(a, b) || self.is_meridian(b, a)
    }

    /// `a` may link components other than `b` only if they are declared
    /// meridians of `a`, as in a chain.
    fn meridian_valid(&self, a: usize, b: usize) -> bool {
        self.components[a].unknotted
            && self.linking[a][b].abs() == 1
            && (0..self.len()).all(|k| k == b || self.linking[a][k] == 0 || self.meridians.contains(&(k, a)))
    }

    fn prune_meridians(&mut self) {
        loop {
            let keep: BTreeSet<_> =
                self.meridians.iter().copied().filter(|&(a, b)| self.meridian_valid(a, b)).collect();
            if keep.len() == self.meridians.len() {
                return;
            }
            self.meridians = keep;
        }
    }

    fn remove(&mut self, c: usize) {
        self.components.remove(c);
        self.linking.remove(c);
        for row in &mut self.linking {
            row.remove(c);
        }
        let shift = |i: usize| if i > c { i - 1 } else { i };
        self.meridians =
            self.meridians.iter().filter(|&&(a, b)| a != c && b != c).map(|&(a, b)| (shift(a), shift(b))).collect();
    }

    fn push(&mut self, comp: Component, links: &[i64]) {
        for (row, &v) in self.linking.iter_mut().zip(links) {
            row.push(v);
        }
        let mut row = links.to_vec();
        row.push(0);
        self.linking.push(row);
        self.components.push(comp);
    }

    fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_err() {
            return base.to_string();
        }
        (2..).map(|k| format!("{base}_{k}")).find(|n| self.index_of(n).is_err()).expect("unbounded")
    }
}

fn unit_sign(sign: i64) -> Result<i64, SurgeryError> {
    if sign == 1 || sign == -1 {
        Ok(sign)
    } else {
        Err(SurgeryError::BadSign(sign))
    }
}

fn checked(v: Option<i64>) -> Result<i64, SurgeryError> {
    v.ok_or(SurgeryError::Overflow)
}

/// New coefficient after adding `delta` to the framing, for a component whose
/// strands get twisted by a move. ∞ stays ∞; non-integral coefficients are
/// refused.
fn twisted_coefficient(p: &SurgeryPresentation, i: usize, delta: i64, with: &str) -> Result<Rational, SurgeryError> {
    let coeff = &p.components[i].coefficient;
    match coeff {
        Rational::Infinity => Ok(Rational::Infinity),
        Rational::Finite(x) if x.is_integer() => Ok(Rational::Finite(x + BigRational::from_integer(delta.into()))),
        _ => {
            Err(SurgeryError::RationalNeighbor { name: p.name(i), coefficient: coeff.clone(), with: with.to_string() })
        }
    }
}

/// Deletes an unknotted `±1` component, twisting everything through it.
pub fn blow_down(p: &SurgeryPresentation, c: usize) -> Result<SurgeryPresentation, SurgeryError> {
    blow_down_noted(p, c).map(|(q, _)| q)
}

pub(crate) fn blow_down_noted(
    p: &SurgeryPresentation,
    c: usize,
) -> Result<(SurgeryPresentation, Vec<String>), SurgeryError> {
    p.check_index(c)?;
    let comp = &p.components[c];
    if !comp.unknotted {
        return Err(SurgeryError::NotUnknotted(comp.name.clone()));
    }
    let eps = match comp.coefficient.to_integer().and_then(|n| n.to_i64()) {
        Some(e @ (1 | -1)) => e,
        _ => return Err(SurgeryError::NotUnitFraming(comp.name.clone(), comp.coefficient.clone())),
    };
    let n = p.len();
    let lc: Vec<i64> = (0..n).map(|i| p.linking[i][c]).collect();
    let mut q = p.clone();
    let mut notes = Vec::new();
    for i in (0..n).filter(|&i| i != c && lc[i] != 0) {
        let delta = checked(lc[i].checked_mul(lc[i]).and_then(|s| s.checked_mul(-eps)))?;
        q.components[i].coefficient = twisted_coefficient(p, i, delta, &comp.name)?;
        if !p.clasped(i, c) {
            q.components[i].unknotted = false;
        }
        if lc[i].abs() >= 2 {
            notes.push(format!(
                "`{}` links `{}` {} times; framing changed by {delta} under the lk² rule, strand writhe not tracked",
                p.name(i),
                comp.name,
                lc[i]
            ));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && i != c && j != c {
                let t = checked(lc[i].checked_mul(lc[j]).and_then(|x| x.checked_mul(eps)))?;
                q.linking[i][j] = checked(p.linking[i][j].checked_sub(t))?;
            }
        }
    }

    // a ±1 unknot clasped by exactly two neighbours is a link in a chain;
    // blowing it down leaves those two neighbours clasped to each other
    let linked: Vec<usize> = (0..n).filter(|&i| i != c && lc[i] != 0).collect();
    let chain = linked.len() == 2 && linked.iter().all(|&i| lc[i].abs() == 1 && p.clasped(i, c));

    q.remove(c);
    q.prune_meridians();
    if chain {
        let shift = |i: usize| if i > c { i - 1 } else { i };
        let (j, k) = (shift(linked[0]), shift(linked[1]));
        q.meridians.insert((j, k));
        q.meridians.insert((k, j));
        q.prune_meridians();
    }
    Ok((q, notes))
}

/// Adds an unknotted `±1` component with the given linking numbers; the
/// existing components are twisted so that [`blow_down`] of the new one
/// gives back `p`.
pub fn blow_up(p: &SurgeryPresentation, epsilon: i64, links_to: &[i64]) -> Result<SurgeryPresentation, SurgeryError> {
    let eps = unit_sign(epsilon)?;
    let n = p.len();
    if links_to.len() != n {
        return Err(SurgeryError::LinkingLength { expected: n, got: links_to.len() });
    }
    let nonzero: Vec<usize> = (0..n).filter(|&i| links_to[i] != 0).collect();
    let single_clasp = nonzero.len() == 1 && links_to[nonzero[0]].abs() == 1;
    let name = p.fresh_name("u");
    let mut q = p.clone();
    for &i in &nonzero {
        let delta = checked(links_to[i].checked_mul(links_to[i]).and_then(|s| s.checked_mul(eps)))?;
        q.components[i].coefficient = twisted_coefficient(p, i, delta, &name)?;
        if !single_clasp {
            q.components[i].unknotted = false;
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let t = checked(links_to[i].checked_mul(links_to[j]).and_then(|x| x.checked_mul(eps)))?;
                q.linking[i][j] = checked(p.linking[i][j].checked_add(t))?;
            }
        }
    }
    q.push(Component::new(name, Rational::integer(eps), true), links_to);
    q.prune_meridians();
    if single_clasp {
        q.meridians.insert((n, nonzero[0]));
    }
    Ok(q)
}

/// Deletes the meridian `l1` of `l2`, turning the integer coefficient `n` of
/// `l2` into `n - 1/r` where `r` is the coefficient of `l1`.
pub fn slam_dunk(p: &SurgeryPresentation, l1: usize, l2: usize) -> Result<SurgeryPresentation, SurgeryError> {
    p.check_index(l1)?;
    p.check_index(l2)?;
    if !p.is_meridian(l1, l2) {
        return Err(SurgeryError::NotMeridian { meridian: p.name(l1), target: p.name(l2) });
    }
    let target = &p.components[l2].coefficient;
    let n = match target.to_integer() {
        Some(n) => n,
        None => return Err(SurgeryError::NonIntegerTarget(p.name(l2), target.clone())),
    };
    let r = &p.components[l1].coefficient;
    if r.is_zero() {
        return Err(SurgeryError::ZeroCoefficient(p.name(l1)));
    }
    if p.meridians.iter().any(|&(a, b)| b == l1 && a != l2) {
        return Err(SurgeryError::HasMeridians(p.name(l1)));
    }
    let inv = r.recip();
    let inv = inv.finite().expect("r != 0");
    let mut q = p.clone();
    q.components[l2].coefficient = Rational::Finite(BigRational::from_integer(n) - inv);
    q.remove(l1);
    q.prune_meridians();
    Ok(q)
}

/// Replaces the rational coefficient of `c` by an integer chain: `c` keeps
/// the first term of the continued fraction and each further term becomes a
/// new unknotted meridian of the previous chain element.
pub fn rational_to_chain(p: &SurgeryPresentation, c: usize) -> Result<SurgeryPresentation, SurgeryError> {
    p.check_index(c)?;
    let coeff = &p.components[c].coefficient;
    if coeff.is_infinite() {
        return Err(SurgeryError::InfiniteCoefficient(p.name(c)));
    }
    if coeff.is_integer() {
        return Err(SurgeryError::AlreadyIntegral(p.name(c)));
    }
    let cf = cfrac_expand(coeff)?;
    let mut q = p.clone();
    q.components[c].coefficient = Rational::Finite(BigRational::from_integer(cf.terms()[0].clone()));
    let mut prev = c;
    for (k, a) in cf.terms().iter().enumerate().skip(1) {
        let name = q.fresh_name(&format!("{}.{k}", p.name(c)));
        let mut links = vec![0; q.len()];
        links[prev] = 1;
        q.push(Component::new(name, Rational::Finite(BigRational::from_integer(a.clone())), true), &links);
        let new = q.len() - 1;
        q.meridians.insert((new, prev));
        prev = new;
    }
    q.prune_meridians();
    Ok(q)
}

/// Slides component `i` over component `j` (band sum with a pushoff of `j`,
/// `sign` choosing the orientation).
pub fn handle_slide(
    p: &SurgeryPresentation,
    i: usize,
    j: usize,
    sign: i64,
) -> Result<SurgeryPresentation, SurgeryError> {
    p.check_index(i)?;
    p.check_index(j)?;
    let sign = unit_sign(sign)?;
    if i == j {
        return Err(SurgeryError::SameComponent);
    }
    let integral = |k: usize| -> Result<i64, SurgeryError> {
        let c = &p.components[k].coefficient;
        if c.is_infinite() {
            return Err(SurgeryError::InfiniteCoefficient(p.name(k)));
        }
        c.to_integer()
            .ok_or_else(|| SurgeryError::NonIntegral(p.name(k), c.clone()))?
            .to_i64()
            .ok_or(SurgeryError::Overflow)
    };
    let (fi, fj) = (integral(i)?, integral(j)?);
    let lij = p.linking[i][j];
    let mut q = p.clone();
    for k in (0..p.len()).filter(|&k| k != i && k != j) {
        let v = checked(p.linking[i][k].checked_add(sign * p.linking[j][k]))?;
        q.linking[i][k] = v;
        q.linking[k][i] = v;
    }
    let v = checked(lij.checked_add(checked(fj.checked_mul(sign))?))?;
    q.linking[i][j] = v;
    q.linking[j][i] = v;
    let framing = checked(fi.checked_add(fj).and_then(|s| s.checked_add(2 * sign * lij)))?;
    q.components[i].coefficient = Rational::integer(framing);
    q.components[i].unknotted = false;
    q.prune_meridians();
    Ok(q)
}

impl SurgeryPresentation {
    /// `true` when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.components.iter().all(|c| c.coefficient.is_integer())
    }

    /// Framings on the diagonal, linking numbers elsewhere; `None` unless
    /// every coefficient is an integer.
    pub fn framing_matrix(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_integral() {
            return None;
        }
        Some(
            (0..self.len())
                .map(|i| {
                    (0..self.len())
                        .map(|j| {
                            if i == j {
                                self.components[i].coefficient.to_integer().expect("integral")
                            } else {
                                BigInt::from(self.linking[i][j])
                            }
                        })
                        .collect()
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn comp(name: &str, coeff: &str) -> Component {
        Component::new(name, q(coeff), true)
    }

    fn pres(comps: Vec<Component>, links: &[(usize, usize, i64)], meridians: &[(usize, usize)]) -> SurgeryPresentation {
        let n = comps.len();
        let mut m = vec![vec![0; n]; n];
        for &(i, j, v) in links {
            m[i][j] = v;
            m[j][i] = v;
        }
        SurgeryPresentation::new(comps, m, meridians.iter().copied()).unwrap()
    }

    #[test]
    fn construction_validates() {
        let bad = SurgeryPresentation::new(vec![comp("a", "1")], vec![vec![1]], []);
        assert!(matches!(bad, Err(SurgeryError::Invalid(_))));
        let asym = SurgeryPresentation::new(vec![comp("a", "1"), comp("b", "1")], vec![vec![0, 1], vec![2, 0]], []);
        assert!(asym.is_err());
        let dup = SurgeryPresentation::new(vec![comp("a", "1"), comp("a", "1")], vec![vec![0; 2]; 2], []);
        assert!(dup.is_err());
        let not_meridian =
            SurgeryPresentation::new(vec![comp("a", "1"), comp("b", "1")], vec![vec![0, 2], vec![2, 0]], [(0, 1)]);
        assert!(not_meridian.is_err());
        let knotted = SurgeryPresentation::new(
            vec![Component::new("a", q("1"), false), comp("b", "1")],
            vec![vec![0, 1], vec![1, 0]],
            [(0, 1)],
        );
        assert!(knotted.is_err());
    }

    #[test]
    fn blow_down_lk1() {
        for (eps, n, expect) in [("1", "5", "4"), ("-1", "5", "6")] {
            let p = pres(vec![comp("U", eps), Component::new("K", q(n), false)], &[(0, 1, 1)], &[]);
            let r = blow_down(&p, 0).unwrap();
            assert_eq!(r.components(), &[Component::new("K", q(expect), false)]);
        }
    }

    #[test]
    fn blow_down_lk2() {
        let p = pres(vec![comp("U", "1"), comp("K", "3")], &[(0, 1, 2)], &[]);
        let r = blow_down(&p, 0).unwrap();
        assert_eq!(r.components()[0].coefficient, q("-1"));
        assert!(!r.components()[0].unknotted);
        let (_, notes) = blow_down_noted(&p, 0).unwrap();
        assert_eq!(notes.len(), 1);
        let p = pres(vec![comp("U", "-1"), comp("K", "3")], &[(0, 1, 2)], &[]);
        assert_eq!(blow_down(&p, 0).unwrap().components()[0].coefficient, q("7"));
    }

    #[test]
    fn blow_down_split_unknot() {
        let p = pres(vec![comp("A", "2/3"), comp("U", "-1"), comp("B", "inf")], &[(0, 2, 4)], &[]);
        let r = blow_down(&p, 1).unwrap();
        assert_eq!(r, pres(vec![comp("A", "2/3"), comp("B", "inf")], &[(0, 1, 4)], &[]));
    }

    #[test]
    fn blow_down_errors() {
        let p = pres(vec![comp("U", "2"), comp("V", "1"), comp("R", "1/2")], &[(1, 2, 1)], &[]);
        assert!(matches!(blow_down(&p, 0), Err(SurgeryError::NotUnitFraming(..))));
        assert!(matches!(blow_down(&p, 1), Err(SurgeryError::RationalNeighbor { .. })));
        let knotted = pres(vec![Component::new("U", q("1"), false)], &[], &[]);
        assert!(matches!(blow_down(&knotted, 0), Err(SurgeryError::NotUnknotted(_))));
        assert!(matches!(blow_down(&knotted, 3), Err(SurgeryError::IndexOutOfRange(3))));
    }

    #[test]
    fn blow_down_twists_infinity_components() {
        let p = pres(vec![comp("U", "1"), comp("W", "inf")], &[(0, 1, 3)], &[]);
        let r = blow_down(&p, 0).unwrap();
        assert_eq!(r.components(), &[Component::new("W", Rational::Infinity, false)]);
    }

    #[test]
    fn blow_up_then_down() {
        let p = blow_up(&SurgeryPresentation::empty(), 1, &[]).unwrap();
        assert_eq!(p.components(), &[comp("u", "1")]);
        assert!(h1(&p).is_trivial());

        let base = pres(vec![comp("a", "3"), comp("b", "-2"), comp("c", "inf")], &[(0, 1, 1)], &[]);
        let up = blow_up(&base, -1, &[2, 1, 0]).unwrap();
        assert_eq!(up.components()[0].coefficient, q("-1"));
        assert_eq!(up.lk(0, 1), -1);
        let down = blow_down(&up, 3).unwrap();
        assert_eq!(down.linking(), base.linking());
        assert_eq!(down.components()[0].coefficient, q("3"));
        assert!(!down.components()[0].unknotted);

        let clasp = blow_up(&base, 1, &[0, 0, -1]).unwrap();
        assert!(clasp.is_meridian(3, 2));
        assert!(clasp.components()[2].unknotted);
        assert_eq!(blow_down(&clasp, 3).unwrap(), base);

        let rational = pres(vec![comp("r", "1/2")], &[], &[]);
        assert!(matches!(blow_up(&rational, 1, &[1]), Err(SurgeryError::RationalNeighbor { .. })));
        assert!(matches!(blow_up(&rational, 1, &[]), Err(SurgeryError::LinkingLength { .. })));
        assert!(matches!(blow_up(&rational, 2, &[0]), Err(SurgeryError::BadSign(2))));
    }

    #[test]
    fn slam_dunk_examples() {
        let dunk = |n: &str, r: &str| {
            let p = pres(vec![comp("L2", n), comp("L1", r)], &[(0, 1, 1)], &[(1, 0)]);
            slam_dunk(&p, 1, 0).map(|x| x.components()[0].coefficient.clone())
        };
        assert_eq!(dunk("3", "inf").unwrap(), q("3"));
        assert_eq!(dunk("2", "1/2").unwrap(), q("0"));
        assert_eq!(dunk("2", "-3").unwrap(), q("7/3"));
        assert!(matches!(dunk("2", "0"), Err(SurgeryError::ZeroCoefficient(_))));
        assert!(matches!(dunk("1/2", "3"), Err(SurgeryError::NonIntegerTarget(..))));

        let p = pres(vec![comp("a", "1"), comp("b", "2")], &[(0, 1, 1)], &[]);
        assert!(matches!(slam_dunk(&p, 1, 0), Err(SurgeryError::NotMeridian { .. })));
    }

    #[test]
    fn slam_dunk_chain_gives_two_sevenths() {
        let p = pres(
            vec![comp("a", "1"), comp("b", "2"), comp("c", "2"), comp("d", "3")],
            &[(0, 1, 1), (1, 2, 1), (2, 3, 1)],
            &[(1, 0), (2, 1), (3, 2)],
        );
        assert!(matches!(slam_dunk(&p, 1, 0), Err(SurgeryError::HasMeridians(_))));
        let p = slam_dunk(&p, 3, 2).unwrap();
        assert_eq!(p.components()[2].coefficient, q("5/3"));
        let p = slam_dunk(&p, 2, 1).unwrap();
        assert_eq!(p.components()[1].coefficient, q("7/5"));
        let p = slam_dunk(&p, 1, 0).unwrap();
        assert_eq!(p.components(), &[comp("a", "2/7")]);
    }

    #[test]
    fn chain_examples() {
        let p = pres(vec![comp("K", "4"), comp("A", "2/7")], &[(0, 1, 1)], &[(0, 1)]);
        let c = rational_to_chain(&p, 1).unwrap();
        let coeffs: Vec<String> = c.components().iter().map(|x| x.coefficient.to_string()).collect();
        assert_eq!(coeffs, vec!["4", "1", "2", "2", "3"]);
        assert_eq!(c.components()[2].name, "A.1");
        assert!(c.is_meridian(0, 1) && c.is_meridian(2, 1) && c.is_meridian(3, 2) && c.is_meridian(4, 3));
        assert_eq!(h1(&c), h1(&p));

        let mut back = c;
        for k in (2..5).rev() {
            back = slam_dunk(&back, k, k - 1).unwrap();
        }
        assert_eq!(back, p);

        let p = pres(vec![comp("X", "5/2")], &[], &[]);
        let c = rational_to_chain(&p, 0).unwrap();
        let coeffs: Vec<String> = c.components().iter().map(|x| x.coefficient.to_string()).collect();
        assert_eq!(coeffs, vec!["3", "2"]);

        assert!(matches!(
            rational_to_chain(&pres(vec![comp("X", "4")], &[], &[]), 0),
            Err(SurgeryError::AlreadyIntegral(_))
        ));
        assert!(matches!(
            rational_to_chain(&pres(vec![comp("X", "inf")], &[], &[]), 0),
            Err(SurgeryError::InfiniteCoefficient(_))
        ));
        let src = pres(vec![comp("K", "4"), comp("A", "2/7")], &[(0, 1, 1)], &[(1, 0)]);
        let c = rational_to_chain(&src, 1).unwrap();
        assert!(c.is_meridian(1, 0) && c.is_meridian(2, 1));
        assert_eq!(slam_dunk(&slam_dunk(&slam_dunk(&c, 4, 3).unwrap(), 3, 2).unwrap(), 2, 1).unwrap(), src);
    }

    #[test]
    fn chain_names_stay_unique() {
        let p = pres(vec![comp("A", "2/7"), comp("A.1", "0")], &[], &[]);
        let c = rational_to_chain(&p, 0).unwrap();
        assert_eq!(c.components()[2].name, "A.1_2");
    }

    #[test]
    fn handle_slide_examples() {
        let p = pres(vec![comp("a", "3"), comp("z", "0")], &[], &[]);
        let s = handle_slide(&p, 0, 1, 1).unwrap();
        assert_eq!(s.linking(), p.linking());
        assert_eq!(s.components()[0].coefficient, q("3"));
        assert!(!s.components()[0].unknotted);

        let p = pres(vec![comp("a", "3"), comp("b", "5")], &[], &[]);
        let s = handle_slide(&p, 0, 1, 1).unwrap();
        assert_eq!(s.components()[0].coefficient, q("8"));
        assert_eq!(s.lk(0, 1), 5);
        assert_eq!(h1(&s), h1(&p));
        assert_eq!(h1(&s).order(), Some(BigInt::from(15)));

        let s = handle_slide(&p, 0, 1, -1).unwrap();
        assert_eq!(s.lk(0, 1), -5);
        assert_eq!(s.components()[0].coefficient, q("8"));

        assert!(matches!(handle_slide(&p, 0, 0, 1), Err(SurgeryError::SameComponent)));
        let r = pres(vec![comp("a", "3"), comp("b", "1/2")], &[], &[]);
        assert!(matches!(handle_slide(&r, 0, 1, 1), Err(SurgeryError::NonIntegral(..))));
    }

    #[test]
    fn h1_examples() {
        assert!(h1(&pres(vec![comp("U", "1")], &[], &[])).is_trivial());
        assert_eq!(h1(&pres(vec![comp("U", "0")], &[], &[])), H1 { torsion: vec![], free_rank: 1 });
        assert_eq!(h1(&pres(vec![comp("U", "-7/3")], &[], &[])), H1 { torsion: vec![BigInt::from(7)], free_rank: 0 });
        assert!(h1(&pres(vec![comp("U", "inf")], &[], &[])).is_trivial());
        assert!(h1(&SurgeryPresentation::empty()).is_trivial());
        let hopf = pres(vec![comp("a", "0"), comp("b", "0")], &[(0, 1, 1)], &[]);
        assert!(h1(&hopf).is_trivial());
    }

    #[test]
    fn chain_blow_down_clasps_neighbours() {
        // K clasps A, the chain hangs off A
        let p = pres(vec![comp("K", "4"), comp("A", "2/7")], &[(0, 1, 1)], &[(0, 1)]);
        let mut c = rational_to_chain(&p, 1).unwrap();
        let g = h1(&p);
        for _ in 0..3 {
            c = blow_down(&c, 1).unwrap();
            assert_eq!(h1(&c), g);
            assert!(c.components()[0].unknotted);
        }
        assert_eq!(c.len(), 2);
        assert!(c.is_meridian(0, 1));
        assert_eq!(c.components()[0].coefficient, q("1"));
        assert_eq!(c.components()[1].coefficient, q("2"));
        let last = slam_dunk(&c, 0, 1).unwrap();
        assert_eq!(last.components(), &[comp("A.3", "1")]);
        assert!(h1(&last).is_trivial());
    }
}
