//! Gauss codes of long and closed virtual knot diagrams.
//!
//! Only classical crossings are stored. A passage records the crossing it
//! belongs to, whether the strand goes over or under, and the crossing sign.
//!
//! Text format: an optional first line `closed`, then whitespace separated
//! tokens such as `O1+` or `U12-`. Everything after `#` on a line is ignored.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flipped(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }

    fn letter(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Passage {
    pub crossing: usize,
    pub role: Role,
    pub sign: Sign,
}

impl Passage {
    pub fn new(crossing: usize, role: Role, sign: Sign) -> Self {
        Passage {
            crossing,
            role,
            sign,
        }
    }
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            self.role.letter(),
            self.crossing,
            self.sign.symbol()
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Long,
    Closed,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Long => "long",
            Kind::Closed => "closed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("line {line}, column {column}: malformed token '{token}'")]
    MalformedToken {
        line: usize,
        column: usize,
        token: String,
    },
    #[error("crossing {crossing} appears {count} time(s), expected 2")]
    CrossingCount { crossing: usize, count: usize },
    #[error("sign mismatch at crossing {crossing}")]
    SignMismatch { crossing: usize },
    #[error("crossing {crossing} is passed {role:?} twice")]
    SameRole { crossing: usize, role: Role },
    #[error("expected a {expected} diagram, got a {found} one")]
    KindMismatch { expected: Kind, found: Kind },
}

/// A validated diagram with crossing ids 1..=c in order of first appearance.
///
/// Closed diagrams compare equal when their codes agree up to rotation.
#[derive(Clone, Debug)]
pub struct Diagram {
    kind: Kind,
    passages: Vec<Passage>,
}

/// Relabels ids to 1..=c by first appearance.
fn normalize(passages: &[Passage]) -> Vec<Passage> {
    let mut map = std::collections::HashMap::new();
    passages
        .iter()
        .map(|p| {
            let next = map.len() + 1;
            let id = *map.entry(p.crossing).or_insert(next);
            Passage { crossing: id, ..*p }
        })
        .collect()
}

impl Diagram {
    /// Validates and normalizes a passage sequence.
    pub fn new(kind: Kind, passages: Vec<Passage>) -> Result<Self, DiagramError> {
        let mut seen: std::collections::BTreeMap<usize, Vec<Passage>> = Default::default();
        for p in &passages {
            seen.entry(p.crossing).or_default().push(*p);
        }
        for (&crossing, ps) in &seen {
            if ps.len() != 2 {
                return Err(DiagramError::CrossingCount {
                    crossing,
                    count: ps.len(),
                });
            }
            if ps[0].sign != ps[1].sign {
                return Err(DiagramError::SignMismatch { crossing });
            }
            if ps[0].role == ps[1].role {
                return Err(DiagramError::SameRole {
                    crossing,
                    role: ps[0].role,
                });
            }
        }
        Ok(Diagram {
            kind,
            passages: normalize(&passages),
        })
    }

    /// The long diagram with no crossings.
    pub fn trivial() -> Self {
        Diagram {
            kind: Kind::Long,
            passages: Vec::new(),
        }
    }

    /// The closed diagram with no crossings.
    pub fn unknot() -> Self {
        Diagram {
            kind: Kind::Closed,
            passages: Vec::new(),
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    pub fn crossing_count(&self) -> usize {
        self.passages.len() / 2
    }

    pub fn expect_kind(&self, expected: Kind) -> Result<(), DiagramError> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(DiagramError::KindMismatch {
                expected,
                found: self.kind,
            })
        }
    }

    /// Sign of crossing `id` (1-based).
    pub fn sign_of(&self, id: usize) -> Sign {
        self.passages
            .iter()
            .find(|p| p.crossing == id)
            .map(|p| p.sign)
            .expect("crossing id in range")
    }

    /// Positions of the over and under passages of each crossing, indexed by id - 1.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(usize::MAX, usize::MAX); self.crossing_count()];
        for (i, p) in self.passages.iter().enumerate() {
            let slot = &mut out[p.crossing - 1];
            match p.role {
                Role::Over => slot.0 = i,
                Role::Under => slot.1 = i,
            }
        }
        out
    }

    /// Key identifying the diagram up to relabelling (and rotation, if closed).
    pub fn canonical_key(&self) -> Vec<Passage> {
        match self.kind {
            Kind::Long => self.passages.clone(),
            Kind::Closed => {
                let n = self.passages.len();
                (0..n.max(1))
                    .map(|r| {
                        let rotated: Vec<Passage> = self.passages[r.min(n)..]
                            .iter()
                            .chain(&self.passages[..r.min(n)])
                            .copied()
                            .collect();
                        normalize(&rotated)
                    })
                    .min()
                    .unwrap_or_default()
            }
        }
    }

    pub fn concatenate(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        self.expect_kind(Kind::Long)?;
        other.expect_kind(Kind::Long)?;
        let offset = self.crossing_count();
        let mut passages = self.passages.clone();
        passages.extend(other.passages.iter().map(|p| Passage {
            crossing: p.crossing + offset,
            ..*p
        }));
        Ok(Diagram {
            kind: Kind::Long,
            passages,
        })
    }

    pub fn close(&self) -> Result<Diagram, DiagramError> {
        self.expect_kind(Kind::Long)?;
        Ok(Diagram {
            kind: Kind::Closed,
            passages: self.passages.clone(),
        })
    }

    /// Swaps over and under at every crossing and negates every sign.
    pub fn switch_all_crossings(&self) -> Diagram {
        let passages = self
            .passages
            .iter()
            .map(|p| Passage::new(p.crossing, p.role.flipped(), p.sign.flipped()))
            .collect::<Vec<_>>();
        Diagram {
            kind: self.kind,
            passages: normalize(&passages),
        }
    }

    /// Wraps a long diagram in 2n crossings of alternating sign.
    ///
    /// The strand first passes over x_n, ..., x_1, then runs through the
    /// base, then passes under y_k and x_k for k = n down to 1, and finally
    /// over y_1, ..., y_n. Crossing x_k has sign (-1)^(k+1) and y_k the
    /// opposite sign. Going from n to n+1 adds x_{n+1} before everything and
    /// y_{n+1} after everything, plus two under passages just after the base.
    pub fn dn_family(base: &Diagram, n: usize) -> Result<Diagram, DiagramError> {
        base.expect_kind(Kind::Long)?;
        let x = |k: usize| 2 * k - 1;
        let y = |k: usize| 2 * k;
        let sx = |k: usize| {
            if k % 2 == 1 {
                Sign::Positive
            } else {
                Sign::Negative
            }
        };
        let mut passages = Vec::with_capacity(base.passages.len() + 4 * n);
        for k in (1..=n).rev() {
            passages.push(Passage::new(x(k), Role::Over, sx(k)));
        }
        passages.extend(base.passages.iter().map(|p| Passage {
            crossing: p.crossing + 2 * n,
            ..*p
        }));
        for k in (1..=n).rev() {
            passages.push(Passage::new(y(k), Role::Under, sx(k).flipped()));
            passages.push(Passage::new(x(k), Role::Under, sx(k)));
        }
        for k in 1..=n {
            passages.push(Passage::new(y(k), Role::Over, sx(k).flipped()));
        }
        Ok(Diagram {
            kind: Kind::Long,
            passages: normalize(&passages),
        })
    }

    pub fn arc_structure(&self) -> ArcStructure {
        let m = self.passages.len();
        let arc_count = match self.kind {
            Kind::Long => m + 1,
            Kind::Closed => m.max(1),
        };
        let after = |i: usize| match self.kind {
            Kind::Long => i + 1,
            Kind::Closed => (i + 1) % m,
        };
        let crossings = self
            .positions()
            .into_iter()
            .enumerate()
            .map(|(i, (o, u))| CrossingArcs {
                sign: self.sign_of(i + 1),
                over_in: o,
                over_out: after(o),
                under_in: u,
                under_out: after(u),
            })
            .collect();
        ArcStructure {
            arc_count,
            crossings,
        }
    }
}

/// Arc incidences of one crossing. Arc `i` is the stretch of strand entering
/// passage `i`; passage `i` leaves onto arc `i + 1` (cyclically, if closed).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingArcs {
    pub sign: Sign,
    pub over_in: usize,
    pub over_out: usize,
    pub under_in: usize,
    pub under_out: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcStructure {
    pub arc_count: usize,
    /// Indexed by crossing id - 1.
    pub crossings: Vec<CrossingArcs>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.canonical_key() == other.canonical_key()
    }
}

impl Eq for Diagram {}

impl Hash for Diagram {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
        self.canonical_key().hash(state);
    }
}

fn parse_token(tok: &str) -> Option<Passage> {
    let bytes = tok.as_bytes();
    if bytes.len() < 3 {
        return None;
    }
    let role = match bytes[0] {
        b'O' => Role::Over,
        b'U' => Role::Under,
        _ => return None,
    };
    let sign = match bytes[bytes.len() - 1] {
        b'+' => Sign::Positive,
        b'-' => Sign::Negative,
        _ => return None,
    };
    let digits = &tok[1..tok.len() - 1];
    if !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    let crossing = digits.parse().ok()?;
    Some(Passage::new(crossing, role, sign))
}

pub fn parse_gauss(text: &str) -> Result<Diagram, DiagramError> {
    let mut kind = Kind::Long;
    let mut passages = Vec::new();
    let mut first_content = true;
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if first_content && line.trim() == "closed" {
            kind = Kind::Closed;
            first_content = false;
            continue;
        }
        first_content = false;
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let len = rest[start..]
                .find(char::is_whitespace)
                .unwrap_or(rest.len() - start);
            let tok = &rest[start..start + len];
            let Some(p) = parse_token(tok) else {
                return Err(DiagramError::MalformedToken {
                    line: line_no + 1,
                    column: line[..offset + start].chars().count() + 1,
                    token: tok.to_string(),
                });
            };
            passages.push(p);
            offset += start + len;
            rest = &rest[start + len..];
        }
    }
    Diagram::new(kind, passages)
}

/// Normalized text form; `parse_gauss` inverts it.
pub fn serialize_gauss(d: &Diagram) -> String {
    let body = d
        .passages
        .iter()
        .map(Passage::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    match (d.kind, body.is_empty()) {
        (Kind::Long, _) => body,
        (Kind::Closed, true) => "closed".to_string(),
        (Kind::Closed, false) => format!("closed\n{body}"),
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_gauss(self))
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss(s)
    }
}
