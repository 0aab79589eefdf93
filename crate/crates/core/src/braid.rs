//! Braid words, Markov moves and the twisted torus knot generators.
//!
//! A letter `g > 0` is the generator σ_g (strand `g` crosses over strand
//! `g + 1`), `g < 0` its inverse. Positive letters give positive crossings
//! in the closure, and a positive twist count means positive letters.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::poly::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("braid needs at least one strand")]
    NoStrands,
    #[error("letter {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("torus braid needs p >= 2, got {0}")]
    TooFewStrands(i64),
    #[error("gcd(p, q) = gcd({p}, {q}) != 1")]
    NotCoprime { p: i64, q: i64 },
    #[error("q must be nonzero")]
    ZeroQ,
    #[error("twist count s must be nonzero")]
    ZeroTwist,
    #[error("twist region needs width >= 2, got {0}")]
    NarrowRegion(usize),
    #[error("twist region starting at strand {first} with width {width} does not fit in {strands} strands")]
    RegionOutOfRange { first: usize, width: usize, strands: usize },
    #[error("r = {r} exceeds p = {p}; use a generalized spec with explicit stabilizations")]
    RExceedsP { p: i64, r: i64 },
    #[error("r must be at least 2, got {0}")]
    SmallR(i64),
    #[error("cannot destabilize: {0}")]
    Destabilize(&'static str),
    #[error("axis coefficient {0} is not of the form -1/s")]
    NotReciprocal(Rational),
    #[error("operation {index}: {source}")]
    AtOp {
        index: usize,
        #[source]
        source: Box<BraidError>,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Word in the braid group on `strands` strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for &g in &letters {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(BraidError::LetterOutOfRange { letter: g, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn trivial(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of letter signs.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|g| g.signum() as i64).sum()
    }

    /// All letter signs flipped; its closure is the mirror image.
    pub fn mirror(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|g| -g).collect() }
    }

    /// Cancels adjacent `g, -g` pairs until none remain.
    pub fn free_reduced(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &g in &self.letters {
            if out.last() == Some(&-g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// Permutation of strand positions: `perm[start] = end`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[pos] = start strand
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &start) in at.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    fn append(&mut self, other: impl IntoIterator<Item = i32>) {
        self.letters.extend(other);
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for g in &self.letters {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

/// Parses `n: g1 g2 ... gk`.
impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, rest) =
            s.split_once(':').ok_or_else(|| BraidError::Parse(format!("expected `n: letters`, got `{}`", s.trim())))?;
        let n: usize = n.trim().parse().map_err(|_| BraidError::Parse(format!("bad strand count `{}`", n.trim())))?;
        let letters = rest
            .split_whitespace()
            .map(|tok| tok.parse::<i32>().map_err(|_| BraidError::Parse(format!("bad letter `{tok}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(n, letters)
    }
}

fn cycle(first: usize, width: usize, sign: i32) -> impl Iterator<Item = i32> + Clone {
    (first..first + width - 1).map(move |g| sign * g as i32)
}

/// `(σ_1 σ_2 … σ_{p-1})^q` on `p` strands; negative `q` uses inverse letters.
pub fn torus_braid(p: i64, q: i64) -> Result<BraidWord, BraidError> {
    if p < 2 {
        return Err(BraidError::TooFewStrands(p));
    }
    let p = p as usize;
    let sign = if q < 0 { -1 } else { 1 };
    let letters = std::iter::repeat_n(cycle(1, p, sign), q.unsigned_abs() as usize).flatten().collect();
    BraidWord::new(p, letters)
}

/// Appends `s` full twists on strands `first..first+width-1` (1-based).
pub fn insert_full_twists(b: &BraidWord, first: usize, width: usize, s: i64) -> Result<BraidWord, BraidError> {
    if s == 0 {
        return Err(BraidError::ZeroTwist);
    }
    if width < 2 {
        return Err(BraidError::NarrowRegion(width));
    }
    if first < 1 || first + width - 1 > b.strands {
        return Err(BraidError::RegionOutOfRange { first, width, strands: b.strands });
    }
    let sign = if s < 0 { -1 } else { 1 };
    let reps = width * s.unsigned_abs() as usize;
    let mut out = b.clone();
    out.append(std::iter::repeat_n(cycle(first, width, sign), reps).flatten());
    Ok(out)
}

/// Adds strand `n+1` and the letter `±n`.
pub fn markov_stabilize(b: &BraidWord, positive: bool) -> BraidWord {
    let n = b.strands as i32;
    let mut out = BraidWord { strands: b.strands + 1, letters: b.letters.clone() };
    out.letters.push(if positive { n } else { -n });
    out
}

pub fn markov_destabilize(b: &BraidWord) -> Result<BraidWord, BraidError> {
    if b.strands < 2 {
        return Err(BraidError::Destabilize("a single strand cannot be removed"));
    }
    let top = b.strands as i32 - 1;
    match b.letters.last() {
        Some(g) if g.abs() == top => {}
        _ => return Err(BraidError::Destabilize("last letter is not the top generator")),
    }
    if b.letters.iter().filter(|g| g.abs() == top).count() != 1 {
        return Err(BraidError::Destabilize("top generator occurs more than once"));
    }
    let mut letters = b.letters.clone();
    letters.pop();
    Ok(BraidWord { strands: b.strands - 1, letters })
}

/// `g · b · g⁻¹`.
pub fn conjugate(b: &BraidWord, g: i32) -> Result<BraidWord, BraidError> {
    if g == 0 || g.unsigned_abs() as usize >= b.strands {
        return Err(BraidError::LetterOutOfRange { letter: g, strands: b.strands });
    }
    let mut letters = Vec::with_capacity(b.letters.len() + 2);
    letters.push(g);
    letters.extend_from_slice(&b.letters);
    letters.push(-g);
    Ok(BraidWord { strands: b.strands, letters })
}

/// Parameters of the twisted torus knot T(p,q,r,s).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistedTorusSpec {
    p: i64,
    q: i64,
    r: i64,
    s: i64,
}

fn check_torus(p: i64, q: i64) -> Result<(), BraidError> {
    if p < 2 {
        return Err(BraidError::TooFewStrands(p));
    }
    if q == 0 {
        return Err(BraidError::ZeroQ);
    }
    if p.gcd(&q) != 1 {
        return Err(BraidError::NotCoprime { p, q });
    }
    Ok(())
}

impl TwistedTorusSpec {
    pub fn new(p: i64, q: i64, r: i64, s: i64) -> Result<Self, BraidError> {
        check_torus(p, q)?;
        if r < 2 {
            return Err(BraidError::SmallR(r));
        }
        if s == 0 {
            return Err(BraidError::ZeroTwist);
        }
        Ok(TwistedTorusSpec { p, q, r, s })
    }

    pub fn p(&self) -> i64 {
        self.p
    }
    pub fn q(&self) -> i64 {
        self.q
    }
    pub fn r(&self) -> i64 {
        self.r
    }
    pub fn s(&self) -> i64 {
        self.s
    }

    /// T(p,-q,r,-s).
    pub fn mirror(&self) -> Self {
        TwistedTorusSpec { q: -self.q, s: -self.s, ..*self }
    }
}

pub fn ttk_braid(spec: &TwistedTorusSpec) -> Result<BraidWord, BraidError> {
    if spec.r > spec.p {
        return Err(BraidError::RExceedsP { p: spec.p, r: spec.r });
    }
    let base = torus_braid(spec.p, spec.q)?;
    insert_full_twists(&base, 1, spec.r as usize, spec.s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GttkOp {
    Stabilize { positive: bool },
    TwistRegion { first: usize, width: usize, full_twists: i64 },
}

impl fmt::Display for GttkOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GttkOp::Stabilize { positive } => write!(f, "stab{}", if *positive { '+' } else { '-' }),
            GttkOp::TwistRegion { first, width, full_twists } => write!(f, "twist {first} {width} {full_twists}"),
        }
    }
}

/// Torus knot base plus an ordered list of stabilizations and twist regions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedTTKSpec {
    p: i64,
    q: i64,
    ops: Vec<GttkOp>,
}

impl GeneralizedTTKSpec {
    pub fn new(p: i64, q: i64, ops: Vec<GttkOp>) -> Result<Self, BraidError> {
        check_torus(p, q)?;
        let mut strands = p as usize;
        for (index, op) in ops.iter().enumerate() {
            let at = |source| BraidError::AtOp { index, source: Box::new(source) };
            match *op {
                GttkOp::Stabilize { .. } => strands += 1,
                GttkOp::TwistRegion { first, width, full_twists } => {
                    if full_twists == 0 {
                        return Err(at(BraidError::ZeroTwist));
                    }
                    if width < 2 {
                        return Err(at(BraidError::NarrowRegion(width)));
                    }
                    if first < 1 || first + width - 1 > strands {
                        return Err(at(BraidError::RegionOutOfRange { first, width, strands }));
                    }
                }
            }
        }
        Ok(GeneralizedTTKSpec { p, q, ops })
    }

    pub fn ops(&self) -> &[GttkOp] {
        &self.ops
    }

    /// Parses the op tokens `stab+`, `stab-` and `twist first width s`.
    pub fn parse_ops<'a>(tokens: impl IntoIterator<Item = &'a str>) -> Result<Vec<GttkOp>, BraidError> {
        let mut it = tokens.into_iter();
        let mut ops = Vec::new();
        while let Some(tok) = it.next() {
            match tok {
                "stab+" => ops.push(GttkOp::Stabilize { positive: true }),
                "stab-" => ops.push(GttkOp::Stabilize { positive: false }),
                "twist" => {
                    let mut num = |what: &str| -> Result<i64, BraidError> {
                        let t = it.next().ok_or_else(|| BraidError::Parse(format!("twist: missing {what}")))?;
                        t.parse().map_err(|_| BraidError::Parse(format!("twist: bad {what} `{t}`")))
                    };
                    let first = num("first strand")?;
                    let width = num("width")?;
                    let full_twists = num("twist count")?;
                    if first < 1 || width < 0 {
                        return Err(BraidError::Parse(format!("twist: bad region {first} {width}")));
                    }
                    ops.push(GttkOp::TwistRegion { first: first as usize, width: width as usize, full_twists });
                }
                other => return Err(BraidError::Parse(format!("unknown op `{other}`"))),
            }
        }
        Ok(ops)
    }
}

pub fn gttk_braid(spec: &GeneralizedTTKSpec) -> Result<BraidWord, BraidError> {
    let mut b = torus_braid(spec.p, spec.q)?;
    for (index, op) in spec.ops.iter().enumerate() {
        b = match *op {
            GttkOp::Stabilize { positive } => markov_stabilize(&b, positive),
            GttkOp::TwistRegion { first, width, full_twists } => insert_full_twists(&b, first, width, full_twists)
                .map_err(|e| BraidError::AtOp { index, source: Box::new(e) })?,
        };
    }
    Ok(b)
}

/// Reads a `-1/s` surgery on an unknotted axis around strands
/// `first..first+width-1` as `s` full twists on those strands.
pub fn blow_down_axis(b: &BraidWord, first: usize, width: usize, coeff: &Rational) -> Result<BraidWord, BraidError> {
    let bad = || BraidError::NotReciprocal(coeff.clone());
    let x = coeff.finite().ok_or_else(bad)?;
    if !x.numer().abs().is_one() {
        return Err(bad());
    }
    // coeff = num/den with num = ±1, so s = -1/coeff = -den·num
    let s: BigInt = -(x.denom() * x.numer());
    let s = s.to_i64().ok_or_else(bad)?;
    insert_full_twists(b, first, width, s)
}
