//! Planar diagrams of braid closures and Dowker-Thistlethwaite codes.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::braid::BraidWord;

pub type ArcId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("DT code needs a knot, diagram has {0} components")]
    MultiComponent(usize),
    #[error("DT code needs at least one crossing")]
    NoCrossings,
    #[error("crossing {0} is visited twice with the same label parity")]
    ParityViolation(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid DT code: {0}")]
    InvalidCode(String),
}

/// One crossing. Each strand is given as `(incoming arc, outgoing arc)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub over: (ArcId, ArcId),
    pub under: (ArcId, ArcId),
    pub sign: i8,
}

/// Oriented link diagram as crossings joined by arcs.
///
/// An arc runs from the crossing it leaves to the crossing it enters; an arc
/// that meets no crossing is a crossing-free loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    /// crossing an arc enters, and whether it enters as the over-strand
    heads: Vec<Option<(usize, bool)>>,
    /// arcs of each component in traversal order
    components: Vec<Vec<ArcId>>,
    arc_component: Vec<usize>,
}

impl PlanarDiagram {
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.heads.len()
    }

    pub fn components(&self) -> &[Vec<ArcId>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, arc: ArcId) -> usize {
        self.arc_component[arc]
    }

    /// Crossing an arc runs into and whether it arrives as the over-strand.
    pub fn head(&self, arc: ArcId) -> Option<(usize, bool)> {
        self.heads[arc]
    }

    /// Line-oriented debug listing of crossings and arcs.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.crossings.iter().enumerate() {
            let _ = writeln!(
                out,
                "crossing {k} sign={:+} over={}->{} under={}->{}",
                c.sign, c.over.0, c.over.1, c.under.0, c.under.1
            );
        }
        let mut tails = vec![None; self.arc_count()];
        for (k, c) in self.crossings.iter().enumerate() {
            tails[c.over.1] = Some(k);
            tails[c.under.1] = Some(k);
        }
        for (arc, tail) in tails.iter().enumerate() {
            let end = |x: Option<usize>| x.map_or("-".to_string(), |k| k.to_string());
            let _ = writeln!(
                out,
                "arc {arc} from={} to={} component={}",
                end(*tail),
                end(self.heads[arc].map(|h| h.0)),
                self.arc_component[arc]
            );
        }
        out
    }
}

/// Closure of a braid, after cancelling adjacent inverse letters.
///
/// Strand positions are read left to right and letters top to bottom; the
/// crossing of letter `g` has sign `signum(g)`, with the strand coming from
/// position `|g|` passing over for positive letters.
pub fn braid_closure(b: &BraidWord) -> PlanarDiagram {
    let b = b.free_reduced();
    let n = b.strands();
    let mut cur: Vec<ArcId> = (0..n).collect();
    let mut next = n;
    let mut raw = Vec::with_capacity(b.len());
    for &g in b.letters() {
        let i = g.unsigned_abs() as usize - 1;
        let (left, right) = (cur[i], cur[i + 1]);
        let (to_right, to_left) = (next, next + 1);
        next += 2;
        raw.push(if g > 0 {
            Crossing { over: (left, to_right), under: (right, to_left), sign: 1 }
        } else {
            Crossing { over: (right, to_left), under: (left, to_right), sign: -1 }
        });
        cur[i] = to_left;
        cur[i + 1] = to_right;
    }

    // the bottom arc at each position is the top arc at that position
    let mut canon: Vec<ArcId> = (0..next).collect();
    for (pos, &arc) in cur.iter().enumerate() {
        canon[arc] = pos;
    }
    let mut compact = vec![usize::MAX; next];
    let mut count = 0;
    for arc in 0..next {
        if canon[arc] == arc {
            compact[arc] = count;
            count += 1;
        }
    }
    let id = |arc: ArcId| compact[canon[arc]];
    let crossings: Vec<Crossing> = raw
        .into_iter()
        .map(|c| Crossing { over: (id(c.over.0), id(c.over.1)), under: (id(c.under.0), id(c.under.1)), sign: c.sign })
        .collect();

    let mut heads = vec![None; count];
    for (k, c) in crossings.iter().enumerate() {
        heads[c.over.0] = Some((k, true));
        heads[c.under.0] = Some((k, false));
    }

    let mut arc_component = vec![usize::MAX; count];
    let mut components = Vec::new();
    for start in 0..count {
        if arc_component[start] != usize::MAX {
            continue;
        }
        let comp = components.len();
        let mut arcs = Vec::new();
        let mut arc = start;
        loop {
            arc_component[arc] = comp;
            arcs.push(arc);
            arc = match heads[arc] {
                None => break,
                Some((k, true)) => crossings[k].over.1,
                Some((k, false)) => crossings[k].under.1,
            };
            if arc == start {
                break;
            }
        }
        components.push(arcs);
    }

    PlanarDiagram { crossings, heads, components, arc_component }
}

pub fn writhe(d: &PlanarDiagram) -> i64 {
    d.crossings.iter().map(|c| c.sign as i64).sum()
}

/// Pairwise linking numbers; the diagonal is zero.
pub fn linking_matrix(d: &PlanarDiagram) -> Vec<Vec<i64>> {
    let k = d.component_count();
    let mut m = vec![vec![0i64; k]; k];
    for c in &d.crossings {
        let (i, j) = (d.arc_component[c.over.0], d.arc_component[c.under.0]);
        if i != j {
            m[i][j] += c.sign as i64;
            m[j][i] += c.sign as i64;
        }
    }
    for row in &mut m {
        for v in row.iter_mut() {
            debug_assert!(*v % 2 == 0);
            *v /= 2;
        }
    }
    m
}

/// Dowker-Thistlethwaite code: the even partner of each odd label
/// `1, 3, 5, …`, negative when the even-labelled pass is an over-pass.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DtCode {
    evens: Vec<i64>,
}

impl DtCode {
    pub fn new(evens: Vec<i64>) -> Result<Self, DiagramError> {
        let n = evens.len();
        if n == 0 {
            return Err(DiagramError::InvalidCode("empty code".into()));
        }
        let mut seen = vec![false; n];
        for &e in &evens {
            let a = e.unsigned_abs() as usize;
            if a == 0 || !a.is_multiple_of(2) || a > 2 * n {
                return Err(DiagramError::InvalidCode(format!(
                    "entry {e} is not a signed even label in 2..={}",
                    2 * n
                )));
            }
            if std::mem::replace(&mut seen[a / 2 - 1], true) {
                return Err(DiagramError::InvalidCode(format!("label {a} appears twice")));
            }
        }
        Ok(DtCode { evens })
    }

    pub fn entries(&self) -> &[i64] {
        &self.evens
    }

    pub fn crossing_count(&self) -> usize {
        self.evens.len()
    }
}

impl fmt::Display for DtCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.evens.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for DtCode {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_dt(s)
    }
}

pub fn parse_dt(text: &str) -> Result<DtCode, DiagramError> {
    let evens = text
        .split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| DiagramError::Parse(format!("`{t}` is not an integer"))))
        .collect::<Result<Vec<_>, _>>()?;
    DtCode::new(evens)
}

/// Parses a DT file: one `name: e1 e2 ... en` per line, `#` comments and
/// blank lines ignored. Errors carry the 1-based line number.
pub fn parse_dt_file(text: &str) -> Result<Vec<(String, DtCode)>, (usize, DiagramError)> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, code) =
            line.split_once(':').ok_or_else(|| (idx + 1, DiagramError::Parse("expected `name: code`".into())))?;
        let code = parse_dt(code).map_err(|e| (idx + 1, e))?;
        out.push((name.trim().to_string(), code));
    }
    Ok(out)
}

type DtKey = Vec<(u64, bool)>;

/// Canonical DT code: lexicographic minimum over every basepoint and both
/// directions, comparing absolute values first and preferring positive
/// entries on ties.
pub fn dt_code(d: &PlanarDiagram) -> Result<DtCode, DiagramError> {
    if d.component_count() != 1 {
        return Err(DiagramError::MultiComponent(d.component_count()));
    }
    if d.crossings.is_empty() {
        return Err(DiagramError::NoCrossings);
    }
    let visits: Vec<(usize, bool)> = d.components[0].iter().filter_map(|&a| d.heads[a]).collect();
    let reversed: Vec<(usize, bool)> = visits.iter().rev().copied().collect();

    let mut best: Option<(DtKey, Vec<i64>)> = None;
    for seq in [&visits, &reversed] {
        for start in 0..seq.len() {
            let evens = code_from_visits(seq, start, d.crossing_count())?;
            let key: Vec<(u64, bool)> = evens.iter().map(|&e| (e.unsigned_abs(), e < 0)).collect();
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, evens));
            }
        }
    }
    DtCode::new(best.expect("at least one basepoint").1)
}

fn code_from_visits(seq: &[(usize, bool)], start: usize, n: usize) -> Result<Vec<i64>, DiagramError> {
    // per crossing: (odd label, (even label, even visit is over))
    let mut odd = vec![0usize; n];
    let mut even = vec![(0usize, false); n];
    for step in 0..seq.len() {
        let (c, over) = seq[(start + step) % seq.len()];
        let label = step + 1;
        if label % 2 == 1 {
            if odd[c] != 0 {
                return Err(DiagramError::ParityViolation(c));
            }
            odd[c] = label;
        } else {
            if even[c].0 != 0 {
                return Err(DiagramError::ParityViolation(c));
            }
            even[c] = (label, over);
        }
    }
    let mut evens = vec![0i64; n];
    for c in 0..n {
        let (e, over) = even[c];
        evens[(odd[c] - 1) / 2] = if over { -(e as i64) } else { e as i64 };
    }
    Ok(evens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closure(n: usize, letters: &[i32]) -> PlanarDiagram {
        braid_closure(&BraidWord::new(n, letters.to_vec()).unwrap())
    }

    #[test]
    fn closure_examples() {
        let d = closure(2, &[1]);
        assert_eq!((d.crossing_count(), d.component_count()), (1, 1));
        let d = closure(2, &[1, 1]);
        assert_eq!((d.crossing_count(), d.component_count()), (2, 2));
        let d = closure(2, &[1, 1, 1]);
        assert_eq!((d.crossing_count(), d.component_count()), (3, 1));
    }

    #[test]
    fn closure_free_reduces() {
        let d = closure(2, &[1, -1]);
        assert_eq!((d.crossing_count(), d.component_count()), (0, 2));
        let d = closure(3, &[2, 1, -1, 2]);
        assert_eq!(d.crossing_count(), 2);
    }

    #[test]
    fn crossing_free_loops() {
        let d = closure(3, &[1, 1, 1]);
        assert_eq!(d.component_count(), 2);
        let loops: Vec<_> = (0..d.arc_count()).filter(|&a| d.head(a).is_none()).collect();
        assert_eq!(loops, vec![2]);
        assert!(d.dump().contains("from=- to=- component=1"));
    }

    #[test]
    fn every_arc_has_two_ends() {
        let d = closure(4, &[1, -2, 3, 2, -1, 3, 3]);
        let mut ends = vec![0; d.arc_count()];
        for c in d.crossings() {
            for a in [c.over.0, c.over.1, c.under.0, c.under.1] {
                ends[a] += 1;
            }
        }
        for (a, &e) in ends.iter().enumerate() {
            assert!(e == 2 || (e == 0 && d.head(a).is_none()), "arc {a} has {e} ends");
        }
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(writhe(&closure(2, &[1, 1, 1])), 3);
        assert_eq!(writhe(&closure(2, &[1, -1])), 0);
        assert_eq!(writhe(&closure(2, &[-1, -1, -1])), -3);
    }

    #[test]
    fn linking_examples() {
        assert_eq!(linking_matrix(&closure(2, &[1, 1])), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(linking_matrix(&closure(2, &[])), vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(linking_matrix(&closure(2, &[1, 1, 1, 1])), vec![vec![0, 2], vec![2, 0]]);
        assert_eq!(linking_matrix(&closure(2, &[-1, -1])), vec![vec![0, -1], vec![-1, 0]]);
    }

    #[test]
    fn dt_examples() {
        assert_eq!(dt_code(&closure(2, &[1, 1, 1])).unwrap().entries(), &[4, 6, 2]);
        assert_eq!(dt_code(&closure(3, &[1, -2, 1, -2])).unwrap().entries(), &[4, 6, 8, 2]);
        assert_eq!(dt_code(&closure(2, &[1, -1])), Err(DiagramError::MultiComponent(2)));
        assert_eq!(dt_code(&closure(1, &[])), Err(DiagramError::NoCrossings));
        assert_eq!(dt_code(&closure(2, &[1, 1])), Err(DiagramError::MultiComponent(2)));
    }

    #[test]
    fn parse_dt_examples() {
        let code = parse_dt("4 6 2").unwrap();
        assert_eq!(code.crossing_count(), 3);
        assert_eq!(code, dt_code(&closure(2, &[1, 1, 1])).unwrap());
        assert!(matches!(parse_dt("4 4 2"), Err(DiagramError::InvalidCode(_))));
        assert!(matches!(parse_dt(""), Err(DiagramError::InvalidCode(_))));
        assert!(matches!(parse_dt("4 6 3"), Err(DiagramError::InvalidCode(_))));
        assert!(matches!(parse_dt("4 8 2"), Err(DiagramError::InvalidCode(_))));
        assert!(matches!(parse_dt("4 x 2"), Err(DiagramError::Parse(_))));
        assert_eq!(parse_dt("-4 6 -2").unwrap().entries(), &[-4, 6, -2]);
    }

    #[test]
    fn dt_file() {
        let text = "# census\n3_1: 4 6 2\n\n4_1: 4 6 8 2\n";
        let parsed = parse_dt_file(text).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[1].0, "4_1");
        assert_eq!(parse_dt_file("a: 4 6 2\nb: 2 2\n").unwrap_err().0, 2);
        assert_eq!(parse_dt_file("4 6 2\n").unwrap_err().0, 1);
    }
}
