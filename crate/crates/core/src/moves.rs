//! Reidemeister moves on Gauss codes.
//!
//! Virtual moves fix the Gauss code, so only the classical moves change
//! anything. Insertion positions index the gaps of the passage sequence:
//! position `i` is just before passage `i`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{Diagram, Kind, Passage, Role, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
}

pub const ALL_KINDS: [MoveKind; 5] = [
    MoveKind::R1Add,
    MoveKind::R1Remove,
    MoveKind::R2Add,
    MoveKind::R2Remove,
    MoveKind::R3,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveSite {
    /// A kink: two adjacent passages of a fresh crossing.
    R1Add {
        position: usize,
        over_first: bool,
        sign: Sign,
    },
    /// Removes a crossing whose two passages are adjacent.
    R1Remove { crossing: usize },
    /// Two fresh crossings `i`, `j` of opposite signs: one strand passes
    /// `i, j` at gap `first`, the other at gap `second >= first`, in the same
    /// or the reverse order. `over_first` says which strand is on top.
    R2Add {
        first: usize,
        second: usize,
        over_first: bool,
        same_order: bool,
        sign: Sign,
    },
    /// Removes a bigon: crossings of opposite sign whose over passages are
    /// adjacent and whose under passages are adjacent.
    R2Remove { i: usize, j: usize },
    /// Triangle move. `top` crosses over `middle` at `a` and over `bottom` at
    /// `b`; `middle` crosses over `bottom` at `c`. Each strand's two passages
    /// must be adjacent, and they swap order.
    R3 { a: usize, b: usize, c: usize },
    /// Detour and other virtual moves: the identity on Gauss codes.
    Virtual,
}

impl MoveSite {
    pub fn kind(&self) -> Option<MoveKind> {
        Some(match self {
            MoveSite::R1Add { .. } => MoveKind::R1Add,
            MoveSite::R1Remove { .. } => MoveKind::R1Remove,
            MoveSite::R2Add { .. } => MoveKind::R2Add,
            MoveSite::R2Remove { .. } => MoveKind::R2Remove,
            MoveSite::R3 { .. } => MoveKind::R3,
            MoveSite::Virtual => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("position {position} out of range for {len} passages")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("crossing {0} does not exist")]
    NoSuchCrossing(usize),
    #[error("passages of crossing {0} are not adjacent")]
    NotAdjacent(usize),
    #[error("crossings {0} and {1} do not bound a bigon")]
    NotBigon(usize, usize),
    #[error("crossings {a}, {b}, {c} do not form a triangle")]
    NotTriangle { a: usize, b: usize, c: usize },
}

fn gap_count(d: &Diagram) -> usize {
    match d.kind() {
        Kind::Long => d.passages().len() + 1,
        Kind::Closed => d.passages().len().max(1),
    }
}

/// Whether passages at positions `x` and `y` are neighbours.
fn adjacent(d: &Diagram, x: usize, y: usize) -> bool {
    let n = d.passages().len();
    let (lo, hi) = (x.min(y), x.max(y));
    hi == lo + 1 || (d.kind() == Kind::Closed && n > 2 && lo == 0 && hi == n - 1)
}

fn rebuild(d: &Diagram, passages: Vec<Passage>) -> Diagram {
    Diagram::new(d.kind(), passages).expect("moves preserve validity")
}

fn check_crossing(d: &Diagram, id: usize) -> Result<(), MoveError> {
    if id == 0 || id > d.crossing_count() {
        Err(MoveError::NoSuchCrossing(id))
    } else {
        Ok(())
    }
}

fn r2_removable(d: &Diagram, i: usize, j: usize) -> bool {
    if i == j || d.sign_of(i) == d.sign_of(j) {
        return false;
    }
    let pos = d.positions();
    let (oi, ui) = pos[i - 1];
    let (oj, uj) = pos[j - 1];
    adjacent(d, oi, oj) && adjacent(d, ui, uj)
}

fn r3_legal(d: &Diagram, a: usize, b: usize, c: usize) -> bool {
    if a == b || b == c || a == c {
        return false;
    }
    let pos = d.positions();
    let (oa, ua) = pos[a - 1];
    let (ob, ub) = pos[b - 1];
    let (oc, uc) = pos[c - 1];
    if !(adjacent(d, oa, ob) && adjacent(d, ua, oc) && adjacent(d, ub, uc)) {
        return false;
    }
    let before = |x: usize, y: usize| if next_of(d, x) == y { 1 } else { -1 };
    let t = before(oa, ob);
    let m = before(ua, oc);
    let bb = before(ub, uc);
    let s = |x| d.sign_of(x).value();
    s(a) * s(b) == m * bb && s(b) * s(c) == t * m
}

fn next_of(d: &Diagram, x: usize) -> usize {
    let n = d.passages().len();
    match d.kind() {
        Kind::Long => x + 1,
        Kind::Closed => (x + 1) % n,
    }
}

pub fn apply_move(d: &Diagram, site: &MoveSite) -> Result<Diagram, MoveError> {
    let ps = d.passages();
    let len = ps.len();
    let fresh = d.crossing_count() + 1;
    match *site {
        MoveSite::Virtual => Ok(d.clone()),
        MoveSite::R1Add {
            position,
            over_first,
            sign,
        } => {
            if position >= gap_count(d) {
                return Err(MoveError::PositionOutOfRange { position, len });
            }
            let (r1, r2) = if over_first {
                (Role::Over, Role::Under)
            } else {
                (Role::Under, Role::Over)
            };
            let mut out = ps.to_vec();
            out.splice(
                position..position,
                [Passage::new(fresh, r1, sign), Passage::new(fresh, r2, sign)],
            );
            Ok(rebuild(d, out))
        }
        MoveSite::R1Remove { crossing } => {
            check_crossing(d, crossing)?;
            let (o, u) = d.positions()[crossing - 1];
            if !adjacent(d, o, u) {
                return Err(MoveError::NotAdjacent(crossing));
            }
            let out = ps
                .iter()
                .filter(|p| p.crossing != crossing)
                .copied()
                .collect();
            Ok(rebuild(d, out))
        }
        MoveSite::R2Add {
            first,
            second,
            over_first,
            same_order,
            sign,
        } => {
            let gaps = gap_count(d);
            for position in [first, second] {
                if position >= gaps {
                    return Err(MoveError::PositionOutOfRange { position, len });
                }
            }
            if second < first {
                return Err(MoveError::PositionOutOfRange {
                    position: second,
                    len,
                });
            }
            let (i, j) = (fresh, fresh + 1);
            let (r1, r2) = if over_first {
                (Role::Over, Role::Under)
            } else {
                (Role::Under, Role::Over)
            };
            let (si, sj) = (sign, sign.flipped());
            let block1 = [Passage::new(i, r1, si), Passage::new(j, r1, sj)];
            let block2 = if same_order {
                [Passage::new(i, r2, si), Passage::new(j, r2, sj)]
            } else {
                [Passage::new(j, r2, sj), Passage::new(i, r2, si)]
            };
            let mut out = ps.to_vec();
            out.splice(second..second, block2);
            out.splice(first..first, block1);
            Ok(rebuild(d, out))
        }
        MoveSite::R2Remove { i, j } => {
            check_crossing(d, i)?;
            check_crossing(d, j)?;
            if !r2_removable(d, i, j) {
                return Err(MoveError::NotBigon(i, j));
            }
            let out = ps
                .iter()
                .filter(|p| p.crossing != i && p.crossing != j)
                .copied()
                .collect();
            Ok(rebuild(d, out))
        }
        MoveSite::R3 { a, b, c } => {
            for x in [a, b, c] {
                check_crossing(d, x)?;
            }
            if !r3_legal(d, a, b, c) {
                return Err(MoveError::NotTriangle { a, b, c });
            }
            let pos = d.positions();
            let (oa, ua) = pos[a - 1];
            let (ob, ub) = pos[b - 1];
            let (oc, uc) = pos[c - 1];
            let mut out = ps.to_vec();
            out.swap(oa, ob);
            out.swap(ua, oc);
            out.swap(ub, uc);
            Ok(rebuild(d, out))
        }
    }
}

/// Every legal site of the given kind.
pub fn legal_sites(d: &Diagram, kind: MoveKind) -> Vec<MoveSite> {
    let c = d.crossing_count();
    let gaps = gap_count(d);
    let signs = [Sign::Positive, Sign::Negative];
    let mut out = Vec::new();
    match kind {
        MoveKind::R1Add => {
            for position in 0..gaps {
                for over_first in [true, false] {
                    for sign in signs {
                        out.push(MoveSite::R1Add {
                            position,
                            over_first,
                            sign,
                        });
                    }
                }
            }
        }
        MoveKind::R1Remove => {
            for (id, (o, u)) in d.positions().into_iter().enumerate() {
                if adjacent(d, o, u) {
                    out.push(MoveSite::R1Remove { crossing: id + 1 });
                }
            }
        }
        MoveKind::R2Add => {
            for first in 0..gaps {
                for second in first..gaps {
                    for over_first in [true, false] {
                        for same_order in [true, false] {
                            for sign in signs {
                                out.push(MoveSite::R2Add {
                                    first,
                                    second,
                                    over_first,
                                    same_order,
                                    sign,
                                });
                            }
                        }
                    }
                }
            }
        }
        MoveKind::R2Remove => {
            for i in 1..=c {
                for j in i + 1..=c {
                    if r2_removable(d, i, j) {
                        out.push(MoveSite::R2Remove { i, j });
                    }
                }
            }
        }
        MoveKind::R3 => {
            for a in 1..=c {
                for b in 1..=c {
                    for cc in 1..=c {
                        if r3_legal(d, a, b, cc) {
                            out.push(MoveSite::R3 { a, b, c: cc });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Chooses a move kind uniformly among those with a legal site, then a site
/// uniformly. Insertions are withheld once the diagram reaches
/// `max_crossings` (or would exceed it).
pub fn random_site(d: &Diagram, rng: &mut impl Rng, max_crossings: usize) -> Option<MoveSite> {
    let c = d.crossing_count();
    let options: Vec<Vec<MoveSite>> = ALL_KINDS
        .iter()
        .filter(|k| match k {
            MoveKind::R1Add => c < max_crossings,
            MoveKind::R2Add => c + 2 <= max_crossings,
            _ => true,
        })
        .map(|&k| legal_sites(d, k))
        .filter(|s| !s.is_empty())
        .collect();
    let sites = options.choose(rng)?;
    sites.choose(rng).copied()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkConfig {
    pub steps: usize,
    pub max_crossings: usize,
}

impl WalkConfig {
    /// `steps` moves, allowing a few crossings more than `d` currently has.
    pub fn for_diagram(d: &Diagram, steps: usize) -> Self {
        WalkConfig {
            steps,
            max_crossings: d.crossing_count() + 4,
        }
    }
}

/// Applies `config.steps` random moves; reproducible from `seed`.
pub fn random_walk(d: &Diagram, seed: u64, config: WalkConfig) -> (Diagram, Vec<MoveSite>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = d.clone();
    let mut trace = Vec::with_capacity(config.steps);
    for _ in 0..config.steps {
        let Some(site) = random_site(&current, &mut rng, config.max_crossings) else {
            break;
        };
        current = apply_move(&current, &site).expect("enumerated sites are legal");
        trace.push(site);
    }
    (current, trace)
}
