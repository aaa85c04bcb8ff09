//! Extended Alexander groups with Z^2 operators, as symbolic presentations.
//!
//! Generators are arcs; the operator `u`, `v` acts on a letter by shifting its
//! exponent. A letter `a^m` stands for `m . a`, and `~a^m` for its inverse.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::diagram::{Diagram, Kind, Sign};
use crate::laurent::{LaurentPoly1, LaurentPoly2, Monomial2};
use crate::matrix::Matrix;

pub type GenId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: GenId,
    pub exponent: Monomial2,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: GenId, exponent: Monomial2) -> Self {
        Letter {
            generator,
            exponent,
            inverse: false,
        }
    }

    fn inverted(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    fn shifted(self, m: Monomial2) -> Self {
        Letter {
            exponent: Monomial2::new(self.exponent.u_exp + m.u_exp, self.exponent.v_exp + m.v_exp),
            ..self
        }
    }
}

/// A word in the letters, read left to right; the empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letter(g: GenId) -> Self {
        Word(vec![Letter::new(g, Monomial2::ONE)])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn shift(&self, m: Monomial2) -> Word {
        Word(self.0.iter().map(|l| l.shifted(m)).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn mentions(&self, g: GenId) -> bool {
        self.0.iter().any(|l| l.generator == g)
    }

    fn count(&self, g: GenId) -> usize {
        self.0.iter().filter(|l| l.generator == g).count()
    }

    /// Replaces every letter of `g` by the matching translate of `w`.
    pub fn substitute(&self, g: GenId, w: &Word) -> Word {
        let mut out = Vec::with_capacity(self.0.len());
        for l in &self.0 {
            if l.generator != g {
                out.push(*l);
                continue;
            }
            let image = w.shift(l.exponent);
            if l.inverse {
                out.extend(image.inverse().0);
            } else {
                out.extend(image.0);
            }
        }
        Word(out).free_reduced()
    }

    pub fn free_reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for l in &self.0 {
            if out.last().is_some_and(|p| *p == l.inverted()) {
                out.pop();
            } else {
                out.push(*l);
            }
        }
        Word(out)
    }

    /// Image in the abelianization, as coefficients per generator.
    fn abelian_image(&self, sign: i64, acc: &mut BTreeMap<GenId, LaurentPoly2>) {
        for l in &self.0 {
            let s = if l.inverse { -sign } else { sign };
            let entry = acc.entry(l.generator).or_insert_with(LaurentPoly2::zero);
            *entry = &*entry + &LaurentPoly2::monomial(l.exponent, s);
        }
    }
}

/// `left = right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub left: Word,
    pub right: Word,
}

impl Relation {
    pub fn new(left: Vec<Letter>, right: Vec<Letter>) -> Self {
        Relation {
            left: Word(left),
            right: Word(right),
        }
    }

    fn count(&self, g: GenId) -> usize {
        self.left.count(g) + self.right.count(g)
    }

    fn substitute(&self, g: GenId, w: &Word) -> Relation {
        Relation {
            left: self.left.substitute(g, w),
            right: self.right.substitute(g, w),
        }
    }

    fn erase(&self, victims: &[GenId]) -> Relation {
        let keep = |w: &Word| {
            Word(
                w.0.iter()
                    .filter(|l| !victims.contains(&l.generator))
                    .copied()
                    .collect(),
            )
            .free_reduced()
        };
        Relation {
            left: keep(&self.left),
            right: keep(&self.right),
        }
    }

    /// Cancels common ends, moves trailing inverse letters across, and puts
    /// the longer side on the left. Returns `None` for a trivial relation.
    pub fn normalized(&self) -> Option<Relation> {
        let mut l = self.left.free_reduced().0;
        let mut r = self.right.free_reduced().0;
        loop {
            let mut changed = false;
            while !l.is_empty() && !r.is_empty() && l[0] == r[0] {
                l.remove(0);
                r.remove(0);
                changed = true;
            }
            while !l.is_empty() && !r.is_empty() && l.last() == r.last() {
                l.pop();
                r.pop();
                changed = true;
            }
            if let Some(&last) = l.last().filter(|x| x.inverse) {
                l.pop();
                r.push(last.inverted());
                r = Word(r).free_reduced().0;
                changed = true;
            }
            if let Some(&last) = r.last().filter(|x| x.inverse) {
                r.pop();
                l.push(last.inverted());
                l = Word(l).free_reduced().0;
                changed = true;
            }
            if !changed {
                break;
            }
        }
        if l.is_empty() && r.is_empty() {
            return None;
        }
        if l.len() < r.len() {
            std::mem::swap(&mut l, &mut r);
        }
        Some(Relation::new(l, r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Minus,
    Plus,
}

/// A presentation over the operator group Z^2, with distinguished ends for
/// long diagrams. Eliminated generators are kept with their substitution
/// expressions so ends and arcs can always be expressed in the survivors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentationZ2 {
    names: Vec<String>,
    active: Vec<GenId>,
    relations: Vec<Relation>,
    end_minus: Option<Word>,
    end_plus: Option<Word>,
    substitutions: BTreeMap<GenId, Word>,
}

/// `a`..`z`, then `a1`..`z1`, and so on.
pub fn arc_name(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    match i / 26 {
        0 => letter.to_string(),
        k => format!("{letter}{k}"),
    }
}

/// One generator per arc and two relations per crossing, in crossing order.
///
/// With `o`, `o'` the incoming and outgoing over arcs and `w`, `w'` the
/// under arcs, a positive crossing contributes `o w^u = w' o'^u` and
/// `o^v = o'`; a negative one contributes `w o^u = o' w'^u` and `o'^v = o`.
pub fn extended_presentation(d: &Diagram) -> GroupPresentationZ2 {
    let arcs = d.arc_structure();
    let names = (0..arcs.arc_count).map(arc_name).collect();
    let one = Monomial2::ONE;
    let l = |g, m| Letter::new(g, m);
    let mut relations = Vec::new();
    for x in &arcs.crossings {
        let (oi, oo, ui, uo) = (x.over_in, x.over_out, x.under_in, x.under_out);
        match x.sign {
            Sign::Positive => {
                relations.push(Relation::new(
                    vec![l(oi, one), l(ui, Monomial2::U)],
                    vec![l(uo, one), l(oo, Monomial2::U)],
                ));
                relations.push(Relation::new(vec![l(oi, Monomial2::V)], vec![l(oo, one)]));
            }
            Sign::Negative => {
                relations.push(Relation::new(
                    vec![l(ui, one), l(oi, Monomial2::U)],
                    vec![l(oo, one), l(uo, Monomial2::U)],
                ));
                relations.push(Relation::new(vec![l(oo, Monomial2::V)], vec![l(oi, one)]));
            }
        }
    }
    let (end_minus, end_plus) = match d.kind() {
        Kind::Long => (
            Some(Word::letter(0)),
            Some(Word::letter(arcs.arc_count - 1)),
        ),
        Kind::Closed => (None, None),
    };
    GroupPresentationZ2 {
        names,
        active: (0..arcs.arc_count).collect(),
        relations,
        end_minus,
        end_plus,
        substitutions: BTreeMap::new(),
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum Pick {
    /// A side consisting of one letter of `g`, with `g` absent from the other side.
    Isolated {
        key: (bool, usize, usize, usize),
        rel: usize,
        right_side: bool,
    },
    /// `g` occurs once in the relation, with trivial exponent.
    Single {
        key: (usize, usize, usize),
        rel: usize,
    },
}

impl GroupPresentationZ2 {
    /// Builds a presentation from explicit data; ends are generator names.
    pub fn from_parts(
        names: &[&str],
        relations: Vec<Relation>,
        ends: Option<(GenId, GenId)>,
    ) -> Self {
        GroupPresentationZ2 {
            names: names.iter().map(|s| s.to_string()).collect(),
            active: (0..names.len()).collect(),
            relations,
            end_minus: ends.map(|e| Word::letter(e.0)),
            end_plus: ends.map(|e| Word::letter(e.1)),
            substitutions: BTreeMap::new(),
        }
    }

    pub fn generators(&self) -> Vec<&str> {
        self.active
            .iter()
            .map(|&g| self.names[g].as_str())
            .collect()
    }

    pub fn generator_ids(&self) -> &[GenId] {
        &self.active
    }

    pub fn name(&self, g: GenId) -> &str {
        &self.names[g]
    }

    pub fn id_of(&self, name: &str) -> Option<GenId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn end(&self, which: End) -> Option<&Word> {
        match which {
            End::Minus => self.end_minus.as_ref(),
            End::Plus => self.end_plus.as_ref(),
        }
    }

    /// Expression of an eliminated (or killed) generator in the survivors.
    pub fn substitution(&self, g: GenId) -> Option<&Word> {
        self.substitutions.get(&g)
    }

    /// `Some(true)` when no generators remain; otherwise undecided.
    pub fn is_trivial_group(&self) -> Option<bool> {
        self.active.is_empty().then_some(true)
    }

    fn total_count(&self, g: GenId) -> usize {
        self.relations.iter().map(|r| r.count(g)).sum()
    }

    fn protected(&self, g: GenId) -> bool {
        [&self.end_minus, &self.end_plus].iter().any(|e| match e {
            Some(w) => w.len() == 1 && w.0[0].generator == g,
            None => false,
        })
    }

    /// Normalizes every relation, dropping trivial and repeated ones.
    fn renormalize(&mut self) {
        let mut out: Vec<Relation> = Vec::with_capacity(self.relations.len());
        for r in self.relations.iter().filter_map(Relation::normalized) {
            let mirrored = Relation {
                left: r.right.clone(),
                right: r.left.clone(),
            };
            if !out.contains(&r) && !out.contains(&mirrored) {
                out.push(r);
            }
        }
        self.relations = out;
    }

    /// Replaces `g` by `w` everywhere and drops it from the generators.
    fn eliminate(&mut self, g: GenId, w: Word) {
        for r in &mut self.relations {
            *r = r.substitute(g, &w);
        }
        for e in [&mut self.end_minus, &mut self.end_plus]
            .into_iter()
            .flatten()
        {
            *e = e.substitute(g, &w);
        }
        for s in self.substitutions.values_mut() {
            *s = s.substitute(g, &w);
        }
        self.substitutions.insert(g, w);
        self.active.retain(|&x| x != g);
        self.renormalize();
    }

    fn best_pick(&self) -> Option<(GenId, Pick)> {
        let mut isolated = Vec::new();
        for (ri, r) in self.relations.iter().enumerate() {
            for (right_side, side, other) in [(true, &r.right, &r.left), (false, &r.left, &r.right)]
            {
                if side.len() == 1 && !other.mentions(side.0[0].generator) {
                    let l = side.0[0];
                    let key = (
                        !l.exponent.is_one(),
                        self.total_count(l.generator),
                        !right_side as usize,
                        ri,
                    );
                    isolated.push((
                        l.generator,
                        Pick::Isolated {
                            key,
                            rel: ri,
                            right_side,
                        },
                    ));
                }
            }
        }
        if !isolated.is_empty() {
            return isolated.into_iter().min_by(|a, b| a.1.cmp(&b.1));
        }
        let mut single = Vec::new();
        for (ri, r) in self.relations.iter().enumerate() {
            for (pos, l) in r.left.0.iter().chain(&r.right.0).enumerate() {
                let g = l.generator;
                if r.count(g) == 1 && l.exponent.is_one() && !self.protected(g) {
                    single.push((
                        g,
                        Pick::Single {
                            key: (self.total_count(g), ri, pos),
                            rel: ri,
                        },
                    ));
                }
            }
        }
        single.into_iter().min_by(|a, b| a.1.cmp(&b.1))
    }

    /// Solves the chosen relation for `g`.
    fn solve(&self, g: GenId, pick: &Pick) -> Word {
        match *pick {
            Pick::Isolated {
                rel, right_side, ..
            } => {
                let r = &self.relations[rel];
                let (side, other) = if right_side {
                    (&r.right, &r.left)
                } else {
                    (&r.left, &r.right)
                };
                let l = side.0[0];
                let body = if l.inverse {
                    other.inverse()
                } else {
                    other.clone()
                };
                body.shift(inverse_monomial(l.exponent))
            }
            Pick::Single { rel, .. } => {
                let r = &self.relations[rel];
                let (side, other) = if r.left.mentions(g) {
                    (&r.left, &r.right)
                } else {
                    (&r.right, &r.left)
                };
                let at = side.0.iter().position(|l| l.generator == g).unwrap();
                let before = Word(side.0[..at].to_vec());
                let after = Word(side.0[at + 1..].to_vec());
                let value = before.inverse().concat(other).concat(&after.inverse());
                if side.0[at].inverse {
                    value.inverse().free_reduced()
                } else {
                    value.free_reduced()
                }
            }
        }
    }

    /// Eliminates generators until no relation can be solved for one.
    ///
    /// Preference goes to a relation with a lone letter `g^m` on one side;
    /// among those, trivial exponents first, then the least used generator,
    /// then right sides, then earlier relations. Failing that, a generator
    /// occurring once in a relation is solved for, never one that is itself
    /// an end of the diagram.
    pub fn tietze_eliminate(&self) -> Self {
        let mut p = self.clone();
        p.renormalize();
        while let Some((g, pick)) = p.best_pick() {
            let w = p.solve(g, &pick);
            p.eliminate(g, w);
        }
        p
    }

    /// Quotient by the normal closure of the named generators and all their
    /// translates: their letters are erased everywhere.
    pub fn quotient_kill(&self, victims: &[&str]) -> Result<Self, AlexanderError> {
        let mut ids = Vec::new();
        for v in victims {
            match self.id_of(v).filter(|g| self.active.contains(g)) {
                Some(g) => ids.push(g),
                None => return Err(AlexanderError::UnknownGenerator(v.to_string())),
            }
        }
        Ok(self.kill_ids(&ids))
    }

    fn kill_ids(&self, ids: &[GenId]) -> Self {
        let mut p = self.clone();
        if ids.is_empty() {
            return p;
        }
        let erase = |w: &Word| {
            Relation {
                left: w.clone(),
                right: Word::default(),
            }
            .erase(ids)
            .left
        };
        p.relations = p.relations.iter().map(|r| r.erase(ids)).collect();
        for e in [&mut p.end_minus, &mut p.end_plus].into_iter().flatten() {
            *e = erase(e);
        }
        for s in p.substitutions.values_mut() {
            *s = erase(s);
        }
        for &g in ids {
            p.substitutions.insert(g, Word::default());
        }
        p.active.retain(|g| !ids.contains(g));
        p.renormalize();
        p
    }

    /// Quotient by the normal closure of an end element.
    ///
    /// Closed presentations have no ends and are returned unchanged.
    pub fn kill_end(&self, which: End) -> Self {
        let Some(w) = self.end(which).cloned() else {
            return self.clone();
        };
        if w.len() == 1 {
            return self.kill_ids(&[w.0[0].generator]);
        }
        let mut p = self.clone();
        p.relations.push(Relation {
            left: w,
            right: Word::default(),
        });
        p.renormalize();
        p
    }

    /// Row `i` is the image of `left_i - right_i`; columns follow `generators()`.
    pub fn abelianize(&self) -> Matrix<LaurentPoly2> {
        let rows = self
            .relations
            .iter()
            .map(|r| {
                let mut acc = BTreeMap::new();
                r.left.abelian_image(1, &mut acc);
                r.right.abelian_image(-1, &mut acc);
                self.abelian_row(&acc)
            })
            .collect();
        Matrix::from_rows(self.active.len(), rows)
    }

    fn abelian_row(&self, acc: &BTreeMap<GenId, LaurentPoly2>) -> Vec<LaurentPoly2> {
        self.active
            .iter()
            .map(|g| acc.get(g).cloned().unwrap_or_else(LaurentPoly2::zero))
            .collect()
    }

    /// Module image of a word, as a vector over the current generators.
    pub fn word_vector(&self, w: &Word) -> Vec<LaurentPoly2> {
        let mut acc = BTreeMap::new();
        w.abelian_image(1, &mut acc);
        self.abelian_row(&acc)
    }

    /// Images of the two ends in the abelianized module, if the diagram is long.
    pub fn end_generator_columns(&self) -> Option<(Vec<LaurentPoly2>, Vec<LaurentPoly2>)> {
        Some((
            self.word_vector(self.end_minus.as_ref()?),
            self.word_vector(self.end_plus.as_ref()?),
        ))
    }

    pub fn render_letter(&self, l: &Letter) -> String {
        let mut s = String::new();
        if l.inverse {
            s.push('~');
        }
        s.push_str(&self.names[l.generator]);
        if !l.exponent.is_one() {
            s.push_str(&format!("^{{{}}}", l.exponent));
        }
        s
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.0.iter()
            .map(|l| self.render_letter(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render_relation(&self, r: &Relation) -> String {
        format!(
            "{} = {}",
            self.render_word(&r.left),
            self.render_word(&r.right)
        )
    }
}

fn inverse_monomial(m: Monomial2) -> Monomial2 {
    Monomial2::new(-m.u_exp, -m.v_exp)
}

impl fmt::Display for GroupPresentationZ2 {
    /// `a, d | a d^{u} = d a^{v}, ...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels = self
            .relations
            .iter()
            .map(|r| self.render_relation(r))
            .collect::<Vec<_>>()
            .join(", ");
        write!(f, "{} | {}", self.generators().join(", "), rels)
    }
}

/// Entrywise `u -> t`, `v -> 1`.
pub fn one_variable(m: &Matrix<LaurentPoly2>) -> Matrix<LaurentPoly1> {
    m.map(LaurentPoly2::forget_v)
}

/// For each arc, the index of its class once the two arcs at every
/// over-crossing are identified; classes are ordered by their least arc.
fn merged_arc_classes(d: &Diagram) -> (Vec<usize>, usize) {
    let arcs = d.arc_structure();
    let mut parent: Vec<usize> = (0..arcs.arc_count).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for x in &arcs.crossings {
        let (a, b) = (find(&mut parent, x.over_in), find(&mut parent, x.over_out));
        parent[a.max(b)] = a.min(b);
    }
    let roots: Vec<usize> = (0..arcs.arc_count).map(|i| find(&mut parent, i)).collect();
    let mut classes = roots.clone();
    classes.sort_unstable();
    classes.dedup();
    let column = roots
        .iter()
        .map(|r| classes.binary_search(r).expect("root is a class"))
        .collect();
    (column, classes.len())
}

/// One-variable matrix with the two arcs of every over-crossing identified:
/// one row per crossing and one column per merged arc (ordered by least arc).
/// A long diagram gives `c x (c + 1)`, a closed one `c x c` (one column if c = 0).
pub fn merged_one_variable_matrix(d: &Diagram) -> Matrix<LaurentPoly1> {
    let (column, width) = merged_arc_classes(d);
    let full = one_variable(&extended_presentation(d).abelianize());
    let rows = (0..d.crossing_count())
        .map(|i| {
            let mut row = vec![LaurentPoly1::zero(); width];
            for (a, &j) in column.iter().enumerate() {
                row[j] = &row[j] + full.get(2 * i, a);
            }
            row
        })
        .collect();
    Matrix::from_rows(width, rows)
}

/// Columns of `merged_one_variable_matrix` holding the two ends of a long diagram.
pub fn merged_end_columns(d: &Diagram) -> Option<(usize, usize)> {
    if d.kind() != Kind::Long {
        return None;
    }
    let (column, _) = merged_arc_classes(d);
    Some((column[0], *column.last().expect("at least one arc")))
}
