//! Causal well-founded model through the alternating fixpoint of Γ.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::algebra::{Algebra, CausalValue};
use crate::error::{Error, Result};
use crate::program::{Atom, BodyElem, LabelledProgram, Rule, RuleLabel};

/// Atom → value, with `0` for unmapped atoms.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Interpretation {
    map: BTreeMap<Atom, CausalValue>,
}

impl Interpretation {
    pub fn bottom() -> Self {
        Self::default()
    }

    /// Every atom of `atoms` mapped to `1`.
    pub fn top(atoms: impl IntoIterator<Item = Atom>) -> Self {
        let mut i = Self::default();
        for a in atoms {
            i.set(a, CausalValue::one());
        }
        i
    }

    pub fn get(&self, a: &Atom) -> CausalValue {
        self.map.get(a).cloned().unwrap_or_else(CausalValue::zero)
    }

    pub fn set(&mut self, a: Atom, v: CausalValue) {
        if v.is_zero() {
            self.map.remove(&a);
        } else {
            self.map.insert(a, v);
        }
    }

    /// Atoms with a non-zero value.
    pub fn support(&self) -> BTreeSet<Atom> {
        self.map.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, &CausalValue)> {
        self.map.iter()
    }

    /// Pointwise order.
    pub fn leq(&self, other: &Interpretation) -> bool {
        self.map
            .iter()
            .all(|(a, v)| crate::algebra::leq(v, &other.get(a)))
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.map.iter().map(|(a, v)| (a.as_str(), v.to_string())))
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QKind {
    Plain,
    Not,
    Undef,
}

/// A query literal: `A`, `not A` or `undef A`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QLiteral {
    pub kind: QKind,
    pub atom: Atom,
}

impl QLiteral {
    pub fn plain(a: &str) -> Self {
        QLiteral { kind: QKind::Plain, atom: Atom::new(a) }
    }

    pub fn not(a: &str) -> Self {
        QLiteral { kind: QKind::Not, atom: Atom::new(a) }
    }

    pub fn undef(a: &str) -> Self {
        QLiteral { kind: QKind::Undef, atom: Atom::new(a) }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let words: Vec<&str> = text.split_whitespace().collect();
        let (kind, name) = match words.as_slice() {
            [a] => (QKind::Plain, *a),
            ["not", a] => (QKind::Not, *a),
            ["undef", a] => (QKind::Undef, *a),
            _ => return Err(Error::Literal(text.to_string())),
        };
        if crate::algebra::term::scan_name(name) != name.len() || name == "not" || name == "undef" {
            return Err(Error::Literal(text.to_string()));
        }
        Ok(QLiteral { kind, atom: Atom::new(name) })
    }

    /// All three literals over each atom.
    pub fn all(atoms: &BTreeSet<Atom>) -> Vec<QLiteral> {
        atoms
            .iter()
            .flat_map(|a| {
                [QKind::Plain, QKind::Not, QKind::Undef]
                    .into_iter()
                    .map(|kind| QLiteral { kind, atom: a.clone() })
            })
            .collect()
    }
}

impl fmt::Display for QLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            QKind::Plain => write!(f, "{}", self.atom),
            QKind::Not => write!(f, "not {}", self.atom),
            QKind::Undef => write!(f, "undef {}", self.atom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CausalWfm {
    pub lfp: Interpretation,
    pub gfp: Interpretation,
    pub atoms: BTreeSet<Atom>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Truth {
    True,
    False,
    Undefined,
}

/// Standard three-valued well-founded model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeValuedModel {
    pub map: BTreeMap<Atom, Truth>,
}

impl ThreeValuedModel {
    pub fn truth(&self, a: &Atom) -> Truth {
        self.map.get(a).copied().unwrap_or(Truth::False)
    }

    pub fn holds(&self, l: &QLiteral) -> bool {
        let t = self.truth(&l.atom);
        match l.kind {
            QKind::Plain => t == Truth::True,
            QKind::Not => t == Truth::False,
            QKind::Undef => t == Truth::Undefined,
        }
    }
}

/// Replaces each `not C` by the constant `~I(C)`.
pub fn reduct(p: &LabelledProgram, i: &Interpretation) -> LabelledProgram {
    reduct_with(&Algebra::unbounded(), p, i).expect("unbounded")
}

pub fn reduct_with(alg: &Algebra, p: &LabelledProgram, i: &Interpretation) -> Result<LabelledProgram> {
    let mut rules = Vec::with_capacity(p.rules.len());
    for r in &p.rules {
        let mut body = r.positive_body.clone();
        for c in &r.negative_body {
            body.push(BodyElem::Const(alg.neg(&i.get(c))?));
        }
        rules.push(Rule {
            label: r.label.clone(),
            head: r.head.clone(),
            positive_body: body,
            negative_body: Vec::new(),
        });
    }
    Ok(LabelledProgram::new(rules).with_atoms(p.atoms()))
}

/// One step of the direct-consequence operator of a positive program.
pub fn direct_consequences(p: &LabelledProgram, i: &Interpretation) -> Result<Interpretation> {
    direct_consequences_with(&Algebra::unbounded(), p, i)
}

pub fn direct_consequences_with(
    alg: &Algebra,
    p: &LabelledProgram,
    i: &Interpretation,
) -> Result<Interpretation> {
    let mut heads: BTreeMap<Atom, CausalValue> = BTreeMap::new();
    for r in &p.rules {
        let fired = fire(alg, r, i)?;
        if fired.is_zero() {
            continue;
        }
        let slot = heads.entry(r.head.clone()).or_insert_with(CausalValue::zero);
        *slot = alg.sum(slot, &fired)?;
    }
    let mut out = Interpretation::bottom();
    for (a, v) in heads {
        out.set(a, v);
    }
    Ok(out)
}

// `(Π body) · label` for a positive rule.
fn fire(alg: &Algebra, r: &Rule, i: &Interpretation) -> Result<CausalValue> {
    if !r.is_positive() {
        return Err(Error::NotPositive(r.head.to_string()));
    }
    let mut body = CausalValue::one();
    for b in &r.positive_body {
        let v = match b {
            BodyElem::Atom(a) => i.get(a),
            BodyElem::Const(v) => v.clone(),
        };
        body = alg.prod(&body, &v)?;
        if body.is_zero() {
            return Ok(body);
        }
    }
    match &r.label {
        RuleLabel::One => Ok(body),
        label => alg.app(&body, &label.value()),
    }
}

fn body_atoms(r: &Rule) -> impl Iterator<Item = &Atom> {
    r.positive_body.iter().filter_map(|b| match b {
        BodyElem::Atom(a) => Some(a),
        BodyElem::Const(_) => None,
    })
}

/// Least model of a positive program, iterating from the bottom
/// interpretation.
pub fn least_model(p: &LabelledProgram) -> Result<Interpretation> {
    least_model_with(&Algebra::unbounded(), p)
}

/// Same iteration as repeated [`direct_consequences_with`], re-firing only
/// the rules whose body atoms changed in the previous step.
pub fn least_model_with(alg: &Algebra, p: &LabelledProgram) -> Result<Interpretation> {
    let mut i = Interpretation::bottom();
    let mut fired: Vec<CausalValue> = vec![CausalValue::zero(); p.rules.len()];
    let mut changed: Option<BTreeSet<Atom>> = None;
    loop {
        let mut dirty_heads = BTreeSet::new();
        for (k, r) in p.rules.iter().enumerate() {
            let stale = match &changed {
                None => true,
                Some(c) => body_atoms(r).any(|a| c.contains(a)),
            };
            if !stale {
                continue;
            }
            let v = fire(alg, r, &i)?;
            if v != fired[k] {
                fired[k] = v;
                dirty_heads.insert(r.head.clone());
            }
        }
        let mut next = i.clone();
        let mut now_changed = BTreeSet::new();
        for h in dirty_heads {
            let mut total = CausalValue::zero();
            for (k, r) in p.rules.iter().enumerate() {
                if r.head == h && !fired[k].is_zero() {
                    total = alg.sum(&total, &fired[k])?;
                }
            }
            if total != i.get(&h) {
                next.set(h.clone(), total);
                now_changed.insert(h);
            }
        }
        if now_changed.is_empty() && changed.is_some() {
            return Ok(i);
        }
        i = next;
        changed = Some(now_changed);
    }
}

/// `Γ(I)`: the least model of the reduct of `p` with respect to `i`.
pub fn gamma(p: &LabelledProgram, i: &Interpretation) -> Result<Interpretation> {
    gamma_with(&Algebra::unbounded(), p, i)
}

pub fn gamma_with(alg: &Algebra, p: &LabelledProgram, i: &Interpretation) -> Result<Interpretation> {
    least_model_with(alg, &reduct_with(alg, p, i)?)
}

pub fn causal_wfm(p: &LabelledProgram) -> Result<CausalWfm> {
    causal_wfm_with(&Algebra::default(), p)
}

/// Iterates `Γ²` from the bottom interpretation; the greatest fixpoint is
/// `Γ` of the least one.
pub fn causal_wfm_with(alg: &Algebra, p: &LabelledProgram) -> Result<CausalWfm> {
    let mut lfp = Interpretation::bottom();
    loop {
        let next = gamma_with(alg, p, &gamma_with(alg, p, &lfp)?)?;
        if next == lfp {
            break;
        }
        lfp = next;
    }
    let gfp = gamma_with(alg, p, &lfp)?;
    Ok(CausalWfm {
        lfp,
        gfp,
        atoms: p.atoms(),
    })
}

pub fn query(w: &CausalWfm, l: &QLiteral) -> Result<CausalValue> {
    query_with(&Algebra::unbounded(), w, l)
}

pub fn query_with(alg: &Algebra, w: &CausalWfm, l: &QLiteral) -> Result<CausalValue> {
    if !w.atoms.contains(&l.atom) {
        return Err(Error::UnknownAtom(l.atom.to_string()));
    }
    match l.kind {
        QKind::Plain => Ok(w.lfp.get(&l.atom)),
        QKind::Not => alg.neg(&w.gfp.get(&l.atom)),
        QKind::Undef => {
            let pos = alg.neg(&w.lfp.get(&l.atom))?;
            let not = alg.neg(&alg.neg(&w.gfp.get(&l.atom))?)?;
            alg.prod(&pos, &not)
        }
    }
}

fn boolean_least_model(p: &LabelledProgram, assumed: &BTreeSet<Atom>) -> BTreeSet<Atom> {
    // Rules blocked by an assumed atom are dropped; other negative literals hold.
    let mut model = BTreeSet::new();
    loop {
        let mut changed = false;
        for r in &p.rules {
            if model.contains(&r.head) || r.negative_body.iter().any(|c| assumed.contains(c)) {
                continue;
            }
            let body_true = r.positive_body.iter().all(|b| match b {
                BodyElem::Atom(a) => model.contains(a),
                BodyElem::Const(v) => !v.is_zero(),
            });
            if body_true {
                model.insert(r.head.clone());
                changed = true;
            }
        }
        if !changed {
            return model;
        }
    }
}

/// Two-valued alternating fixpoint on the program with labels ignored.
pub fn standard_wfm(p: &LabelledProgram) -> ThreeValuedModel {
    let gamma = |s: &BTreeSet<Atom>| boolean_least_model(p, s);
    let mut truths = BTreeSet::new();
    loop {
        let next = gamma(&gamma(&truths));
        if next == truths {
            break;
        }
        truths = next;
    }
    let possible = gamma(&truths);
    let map = p
        .atoms()
        .into_iter()
        .map(|a| {
            let t = if truths.contains(&a) {
                Truth::True
            } else if possible.contains(&a) {
                Truth::Undefined
            } else {
                Truth::False
            };
            (a, t)
        })
        .collect();
    ThreeValuedModel { map }
}
