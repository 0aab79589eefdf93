//! Move scripts and traced reductions.

use std::fmt;

use thiserror::Error;

use super::{
    blow_down_noted, blow_up, h1, handle_slide, rational_to_chain, slam_dunk, SurgeryError, SurgeryPresentation, H1,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    BlowDown(String),
    /// Linking numbers are listed in component order at the time of the move.
    BlowUp {
        epsilon: i64,
        links: Vec<i64>,
    },
    SlamDunk {
        meridian: String,
        target: String,
    },
    Slide {
        moving: String,
        over: String,
        sign: i64,
    },
    Chain(String),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::BlowDown(c) => write!(f, "blowdown {c}"),
            Move::BlowUp { epsilon, links } => {
                write!(f, "blowup {epsilon}")?;
                links.iter().try_for_each(|v| write!(f, " {v}"))
            }
            Move::SlamDunk { meridian, target } => write!(f, "slamdunk {meridian} {target}"),
            Move::Slide { moving, over, sign } => {
                write!(f, "slide {moving} {over} {}", if *sign > 0 { "+" } else { "-" })
            }
            Move::Chain(c) => write!(f, "chain {c}"),
        }
    }
}

/// Moves with their source line numbers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub moves: Vec<(usize, Move)>,
}

impl Script {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

impl From<Vec<Move>> for Script {
    fn from(moves: Vec<Move>) -> Self {
        Script { moves: moves.into_iter().enumerate().map(|(i, m)| (i + 1, m)).collect() }
    }
}

fn parse_sign(tok: &str) -> Option<i64> {
    match tok {
        "+" | "+1" | "1" => Some(1),
        "-" | "-1" => Some(-1),
        _ => None,
    }
}

pub fn parse_script(text: &str) -> Result<Script, SurgeryError> {
    let mut moves = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let bad = |message: String| SurgeryError::Parse { line, message };
        let toks: Vec<&str> = l.split_whitespace().collect();
        let mv = match toks[..] {
            ["blowdown", c] => Move::BlowDown(c.into()),
            ["chain", c] => Move::Chain(c.into()),
            ["slamdunk", m, t] => Move::SlamDunk { meridian: m.into(), target: t.into() },
            ["slide", a, b, s] => Move::Slide {
                moving: a.into(),
                over: b.into(),
                sign: parse_sign(s).ok_or_else(|| bad(format!("slide sign must be + or -, got `{s}`")))?,
            },
            ["blowup", e, ref rest @ ..] => {
                let epsilon = parse_sign(e).ok_or_else(|| bad(format!("blow-up sign must be +1 or -1, got `{e}`")))?;
                let links = rest
                    .iter()
                    .map(|v| v.parse::<i64>().map_err(|_| bad(format!("bad linking number `{v}`"))))
                    .collect::<Result<_, _>>()?;
                Move::BlowUp { epsilon, links }
            }
            _ => return Err(bad(format!("unrecognised move `{l}`"))),
        };
        moves.push((line, mv));
    }
    Ok(Script { moves })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub line: usize,
    pub mv: Move,
    pub components_before: usize,
    pub components_after: usize,
    pub h1: H1,
    pub notes: Vec<String>,
    pub presentation: SurgeryPresentation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KirbyTrace {
    pub initial_h1: H1,
    pub steps: Vec<TraceStep>,
}

impl KirbyTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("step {step} (line {line}, `{mv}`): {source}")]
    Illegal { step: usize, line: usize, mv: Move, source: SurgeryError },
    #[error("step {step} (line {line}, `{mv}`): H1 changed from {before} to {after}")]
    Drift { step: usize, line: usize, mv: Move, before: H1, after: H1 },
}

impl ReduceError {
    pub fn step(&self) -> usize {
        match self {
            ReduceError::Illegal { step, .. } | ReduceError::Drift { step, .. } => *step,
        }
    }
}

/// Applies one move, returning the new presentation and any trace notes.
pub fn apply_move(p: &SurgeryPresentation, mv: &Move) -> Result<(SurgeryPresentation, Vec<String>), SurgeryError> {
    match mv {
        Move::BlowDown(c) => blow_down_noted(p, p.index_of(c)?),
        Move::BlowUp { epsilon, links } => blow_up(p, *epsilon, links).map(|q| (q, vec![])),
        Move::SlamDunk { meridian, target } => {
            slam_dunk(p, p.index_of(meridian)?, p.index_of(target)?).map(|q| (q, vec![]))
        }
        Move::Slide { moving, over, sign } => {
            handle_slide(p, p.index_of(moving)?, p.index_of(over)?, *sign).map(|q| (q, vec![]))
        }
        Move::Chain(c) => rational_to_chain(p, p.index_of(c)?).map(|q| (q, vec![])),
    }
}

/// Runs `script` on `p`, recording H1 after each step. Stops at the first
/// illegal move, or if H1 ever changes.
#[allow(clippy::result_large_err)]
pub fn kirby_reduce(
    p: &SurgeryPresentation,
    script: &Script,
) -> Result<(SurgeryPresentation, KirbyTrace), ReduceError> {
    let initial_h1 = h1(p);
    let mut cur = p.clone();
    let mut steps = Vec::with_capacity(script.len());
    for (k, (line, mv)) in script.moves.iter().enumerate() {
        let step = k + 1;
        let (next, notes) = apply_move(&cur, mv).map_err(|source| ReduceError::Illegal {
            step,
            line: *line,
            mv: mv.clone(),
            source,
        })?;
        let g = h1(&next);
        if g != initial_h1 {
            return Err(ReduceError::Drift { step, line: *line, mv: mv.clone(), before: initial_h1, after: g });
        }
        steps.push(TraceStep {
            line: *line,
            mv: mv.clone(),
            components_before: cur.len(),
            components_after: next.len(),
            h1: g,
            notes,
            presentation: next.clone(),
        });
        cur = next;
    }
    Ok((cur, KirbyTrace { initial_h1, steps }))
}
