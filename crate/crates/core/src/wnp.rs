//! Why-not provenance: Boolean justifications over rule labels and
//! `not(A)` markers.
//!
//! A [`ProvenanceValue`] is kept in Blake canonical form, the disjunction of
//! all prime implicants, so two values are equal exactly when they denote
//! the same Boolean function.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use biodivine_lib_bdd::{Bdd, BddVariable, BddVariableSet};
use serde::Serialize;

use crate::algebra::{Algebra, CausalValue, ElementaryTerm, Label};
use crate::error::Result;
use crate::program::{marker_atom, Atom, BodyElem, LabelledProgram, Rule, RuleLabel};
use crate::wfs::{self, QKind, QLiteral};

/// A Boolean variable: a rule label or the marker `not(A)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProvBase {
    Label(Label),
    NotMarker(Atom),
}

impl ProvBase {
    fn of_label(l: &Label) -> Self {
        match marker_atom(l) {
            Some(a) => ProvBase::NotMarker(a),
            None => ProvBase::Label(l.clone()),
        }
    }
}

impl fmt::Display for ProvBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProvBase::Label(l) => write!(f, "{l}"),
            ProvBase::NotMarker(a) => write!(f, "not({a})"),
        }
    }
}

impl fmt::Debug for ProvBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProvLiteral {
    pub base: ProvBase,
    pub positive: bool,
}

impl ProvLiteral {
    pub fn pos(base: ProvBase) -> Self {
        ProvLiteral { base, positive: true }
    }

    pub fn neg(base: ProvBase) -> Self {
        ProvLiteral { base, positive: false }
    }

    pub fn label(name: &str) -> Self {
        Self::pos(ProvBase::Label(Label::new(name)))
    }

    pub fn complement(&self) -> Self {
        ProvLiteral {
            base: self.base.clone(),
            positive: !self.positive,
        }
    }
}

impl fmt::Display for ProvLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("-")?;
        }
        write!(f, "{}", self.base)
    }
}

impl fmt::Debug for ProvLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A consistent conjunction of literals.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Conjunction(BTreeSet<ProvLiteral>);

impl Conjunction {
    /// `None` when the literals are contradictory.
    pub fn new(literals: impl IntoIterator<Item = ProvLiteral>) -> Option<Self> {
        let set: BTreeSet<ProvLiteral> = literals.into_iter().collect();
        let clash = set.iter().any(|l| l.positive && set.contains(&l.complement()));
        (!clash).then_some(Conjunction(set))
    }

    pub fn literals(&self) -> &BTreeSet<ProvLiteral> {
        &self.0
    }

    pub fn contains(&self, l: &ProvLiteral) -> bool {
        self.0.contains(l)
    }

    /// `self` entails `other`.
    pub fn implies(&self, other: &Conjunction) -> bool {
        other.0.is_subset(&self.0)
    }

    fn and(&self, other: &Conjunction) -> Option<Conjunction> {
        Conjunction::new(self.0.iter().chain(&other.0).cloned())
    }

    // Resolvent of two terms clashing on exactly one variable.
    fn consensus(&self, other: &Conjunction) -> Option<Conjunction> {
        let mut clashes = self.0.iter().filter(|l| other.0.contains(&l.complement()));
        let pivot = clashes.next()?;
        if clashes.next().is_some() {
            return None;
        }
        let rest = self
            .0
            .iter()
            .chain(&other.0)
            .filter(|l| l.base != pivot.base)
            .cloned();
        Conjunction::new(rest)
    }

    pub fn eval(&self, assignment: &dyn Fn(&ProvBase) -> bool) -> bool {
        self.0.iter().all(|l| assignment(&l.base) == l.positive)
    }
}

impl fmt::Display for Conjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("true");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Conjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A Boolean function in Blake canonical form.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ProvenanceValue {
    terms: Vec<Conjunction>,
}

fn absorb(terms: &mut Vec<Conjunction>, t: Conjunction) -> bool {
    if terms.iter().any(|s| t.implies(s)) {
        return false;
    }
    terms.retain(|s| !s.implies(&t));
    terms.push(t);
    true
}

impl ProvenanceValue {
    pub fn falsity() -> Self {
        ProvenanceValue { terms: Vec::new() }
    }

    pub fn truth() -> Self {
        ProvenanceValue {
            terms: vec![Conjunction::default()],
        }
    }

    pub fn literal(l: ProvLiteral) -> Self {
        ProvenanceValue {
            terms: vec![Conjunction(BTreeSet::from([l]))],
        }
    }

    /// Disjunction of the given terms, closed under consensus and
    /// absorption.
    pub fn from_terms(terms: impl IntoIterator<Item = Conjunction>) -> Self {
        let mut out: Vec<Option<Conjunction>> = Vec::new();
        let mut queue = Vec::new();
        for t in Self::absorbed(terms) {
            queue.push(out.len());
            out.push(Some(t));
        }
        while let Some(i) = queue.pop() {
            let Some(t) = out[i].clone() else { continue };
            let found: Vec<Conjunction> = out
                .iter()
                .flatten()
                .filter_map(|s| t.consensus(s))
                .collect();
            for c in found {
                if out.iter().flatten().any(|s| c.implies(s)) {
                    continue;
                }
                for slot in out.iter_mut() {
                    if slot.as_ref().is_some_and(|s| s.implies(&c)) {
                        *slot = None;
                    }
                }
                queue.push(out.len());
                out.push(Some(c));
            }
        }
        let mut terms: Vec<Conjunction> = out.into_iter().flatten().collect();
        terms.sort();
        ProvenanceValue { terms }
    }

    // Minimal terms only; no consensus.
    fn absorbed(terms: impl IntoIterator<Item = Conjunction>) -> Vec<Conjunction> {
        let mut all: Vec<Conjunction> = terms.into_iter().collect();
        all.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.cmp(b)));
        all.dedup();
        let mut kept: Vec<Conjunction> = Vec::new();
        for t in all {
            if !kept.iter().any(|s| t.implies(s)) {
                kept.push(t);
            }
        }
        kept.sort();
        kept
    }

    /// The prime implicants.
    pub fn terms(&self) -> &[Conjunction] {
        &self.terms
    }

    pub fn is_false(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_true(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_empty()
    }

    pub fn or(&self, other: &ProvenanceValue) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    /// Every prime implicant of a conjunction is a union of prime
    /// implicants of its operands, so absorption suffices here.
    pub fn and(&self, other: &ProvenanceValue) -> Self {
        ProvenanceValue {
            terms: Self::absorbed(
                self.terms
                    .iter()
                    .flat_map(|a| other.terms.iter().filter_map(move |b| a.and(b))),
            ),
        }
    }

    pub fn not(&self) -> Self {
        let mut acc = vec![Conjunction::default()];
        for t in &self.terms {
            let mut next = Vec::new();
            for a in &acc {
                for l in &t.0 {
                    if let Some(c) = a.and(&Conjunction(BTreeSet::from([l.complement()]))) {
                        absorb(&mut next, c);
                    }
                }
            }
            acc = next;
        }
        // Multiplying out a conjunction of clauses with absorption leaves
        // exactly its prime implicants.
        ProvenanceValue {
            terms: Self::absorbed(acc),
        }
    }

    /// `self` entails `other` as Boolean functions.
    pub fn implies(&self, other: &ProvenanceValue) -> bool {
        // Every implicant of `other` contains one of its prime implicants.
        self.terms
            .iter()
            .all(|t| other.terms.iter().any(|s| t.implies(s)))
    }

    pub fn eval(&self, assignment: &dyn Fn(&ProvBase) -> bool) -> bool {
        self.terms.iter().any(|t| t.eval(assignment))
    }

    pub fn variables(&self) -> BTreeSet<ProvBase> {
        self.terms
            .iter()
            .flat_map(|t| t.0.iter().map(|l| l.base.clone()))
            .collect()
    }

    /// Replaces variables by constants and re-canonicalizes.
    pub fn substitute(&self, fixed: &BTreeMap<ProvBase, bool>) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|t| {
            let mut keep = BTreeSet::new();
            for l in &t.0 {
                match fixed.get(&l.base) {
                    Some(&b) if b == l.positive => {}
                    Some(_) => return None,
                    None => {
                        keep.insert(l.clone());
                    }
                }
            }
            Some(Conjunction(keep))
        }))
    }
}

impl fmt::Display for ProvenanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("false");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ProvenanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn prov_literal(e: &ElementaryTerm) -> ProvLiteral {
    ProvLiteral {
        base: ProvBase::of_label(&e.base),
        positive: !e.is_odd(),
    }
}

/// Flattens application into conjunction and reads `~` classically.
pub fn lambda_p(v: &CausalValue) -> ProvenanceValue {
    ProvenanceValue::from_terms(
        v.addends()
            .iter()
            .filter_map(|g| Conjunction::new(g.vertices().iter().map(prov_literal))),
    )
}

/// Adds the fact `~not(A): A` for every atom `A` that is not a fact of `p`.
pub fn augment(p: &LabelledProgram) -> LabelledProgram {
    let atoms = p.atoms();
    let mut rules = p.rules.clone();
    for a in &atoms {
        if !p.is_fact_atom(a) {
            rules.push(Rule {
                label: RuleLabel::Term(ElementaryTerm::new(a.not_marker(), 1)),
                head: a.clone(),
                positive_body: Vec::new(),
                negative_body: Vec::new(),
            });
        }
    }
    LabelledProgram::new(rules).with_atoms(atoms)
}

pub fn why(p: &LabelledProgram, l: &QLiteral) -> Result<ProvenanceValue> {
    why_with(&Algebra::default(), p, l)
}

pub fn why_with(alg: &Algebra, p: &LabelledProgram, l: &QLiteral) -> Result<ProvenanceValue> {
    let w = wfs::causal_wfm_with(alg, &augment(p))?;
    Ok(lambda_p(&wfs::query_with(alg, &w, l)?))
}

// Boolean functions over a fixed set of provenance variables, as BDDs.
struct BoolSpace {
    vars: BddVariableSet,
    bases: Vec<ProvBase>,
    index: BTreeMap<ProvBase, BddVariable>,
}

impl BoolSpace {
    fn new(bases: Vec<ProvBase>) -> Self {
        let vars = BddVariableSet::new_anonymous(bases.len() as u16);
        let index = bases
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), BddVariable::from_index(i)))
            .collect();
        BoolSpace { vars, bases, index }
    }

    fn literal(&self, l: &ProvLiteral) -> Bdd {
        self.vars.mk_literal(self.index[&l.base], l.positive)
    }

    fn of_value(&self, v: &ProvenanceValue) -> Bdd {
        v.terms.iter().fold(self.vars.mk_false(), |acc, t| {
            let cube = t
                .0
                .iter()
                .fold(self.vars.mk_true(), |c, l| c.and(&self.literal(l)));
            acc.or(&cube)
        })
    }

    // Prime implicants by Shannon expansion on the top variable: the primes
    // of `f0 & f1`, plus each prime of one cofactor that does not already
    // imply the other, extended by the splitting literal.
    fn primes(&self, f: &Bdd, memo: &mut HashMap<Bdd, Vec<Conjunction>>) -> Vec<Conjunction> {
        if f.is_false() {
            return Vec::new();
        }
        if f.is_true() {
            return vec![Conjunction::default()];
        }
        if let Some(p) = memo.get(f) {
            return p.clone();
        }
        let x = f.var_of(f.root_pointer());
        let f0 = f.var_restrict(x, false);
        let f1 = f.var_restrict(x, true);
        let mut out = self.primes(&f0.and(&f1), memo);
        for (cofactor, other, positive) in [(&f0, &f1, false), (&f1, &f0, true)] {
            for p in self.primes(cofactor, memo) {
                if !self.implies(&p, other) {
                    let lit = ProvLiteral {
                        base: self.bases[x.to_index()].clone(),
                        positive,
                    };
                    let mut lits = p.0;
                    lits.insert(lit);
                    out.push(Conjunction(lits));
                }
            }
        }
        memo.insert(f.clone(), out.clone());
        out
    }

    fn implies(&self, c: &Conjunction, f: &Bdd) -> bool {
        let fixed: Vec<(BddVariable, bool)> =
            c.0.iter().map(|l| (self.index[&l.base], l.positive)).collect();
        f.restrict(&fixed).is_true()
    }

    fn to_value(&self, f: &Bdd) -> ProvenanceValue {
        let mut terms = self.primes(f, &mut HashMap::new());
        terms.sort();
        ProvenanceValue { terms }
    }
}

type BoolInterp = BTreeMap<Atom, Bdd>;

fn bool_get(space: &BoolSpace, i: &BoolInterp, a: &Atom) -> Bdd {
    i.get(a).cloned().unwrap_or_else(|| space.vars.mk_false())
}

fn rule_literal(space: &BoolSpace, label: &RuleLabel) -> Bdd {
    match label {
        RuleLabel::One => space.vars.mk_true(),
        RuleLabel::Term(e) => space.literal(&prov_literal(e)),
    }
}

// Least model of the reduct of `p` by `i`, with conjunction in place of
// application and classical negation for `not`.
fn bool_gamma(space: &BoolSpace, p: &LabelledProgram, i: &BoolInterp) -> BoolInterp {
    let negs: Vec<Bdd> = p
        .rules
        .iter()
        .map(|r| {
            r.negative_body.iter().fold(rule_literal(space, &r.label), |acc, c| {
                acc.and(&bool_get(space, i, c).not())
            })
        })
        .collect();
    let mut model = BoolInterp::new();
    loop {
        let mut next = BoolInterp::new();
        for (r, base) in p.rules.iter().zip(&negs) {
            let body = r.positive_body.iter().fold(base.clone(), |acc, b| match b {
                BodyElem::Atom(a) => acc.and(&bool_get(space, &model, a)),
                BodyElem::Const(v) => acc.and(&space.of_value(&lambda_p(v))),
            });
            if body.is_false() {
                continue;
            }
            let slot = next.entry(r.head.clone()).or_insert_with(|| space.vars.mk_false());
            *slot = slot.or(&body);
        }
        if next == model {
            return model;
        }
        model = next;
    }
}

/// Why-not provenance computed directly on Boolean functions: the
/// alternating fixpoint of the augmented program with application read as
/// conjunction. Independent of the causal algebra.
pub fn why_oracle(p: &LabelledProgram, l: &QLiteral) -> Result<ProvenanceValue> {
    if !p.atoms().contains(&l.atom) {
        return Err(crate::Error::UnknownAtom(l.atom.to_string()));
    }
    let q = augment(p);
    // Variables in order of first occurrence, with each marker placed where
    // its atom first appears; this keeps related variables close in the BDD.
    let mut bases = Vec::new();
    let mut push = |b: ProvBase| {
        if !bases.contains(&b) {
            bases.push(b);
        }
    };
    for r in &p.rules {
        if let RuleLabel::Term(e) = &r.label {
            push(ProvBase::of_label(&e.base));
        }
        for b in &r.positive_body {
            match b {
                BodyElem::Atom(a) => push(ProvBase::NotMarker(a.clone())),
                BodyElem::Const(v) => lambda_p(v).variables().into_iter().for_each(&mut push),
            }
        }
        for a in &r.negative_body {
            push(ProvBase::NotMarker(a.clone()));
        }
        push(ProvBase::NotMarker(r.head.clone()));
    }
    for r in &q.rules {
        if let RuleLabel::Term(e) = &r.label {
            push(ProvBase::of_label(&e.base));
        }
    }
    let space = BoolSpace::new(bases);
    let mut lfp = BoolInterp::new();
    loop {
        let next = bool_gamma(&space, &q, &bool_gamma(&space, &q, &lfp));
        if next == lfp {
            break;
        }
        lfp = next;
    }
    let gfp = bool_gamma(&space, &q, &lfp);
    let low = bool_get(&space, &lfp, &l.atom);
    let high = bool_get(&space, &gfp, &l.atom);
    let f = match l.kind {
        QKind::Plain => low,
        QKind::Not => high.not(),
        QKind::Undef => low.not().and(&high),
    };
    Ok(space.to_value(&f))
}

pub fn classify_hypothetical(c: &Conjunction) -> bool {
    c.0
        .iter()
        .any(|l| !l.positive && matches!(l.base, ProvBase::NotMarker(_)))
}

/// Values that carry `not(A)` markers.
pub trait StripMarkers {
    /// Removes every `not(A)` label: `not(A)` becomes true and its
    /// negation false.
    fn strip_not_markers(&self) -> Self;
}

impl StripMarkers for ProvenanceValue {
    fn strip_not_markers(&self) -> Self {
        let fixed = self
            .variables()
            .into_iter()
            .filter(|b| matches!(b, ProvBase::NotMarker(_)))
            .map(|b| (b, true))
            .collect();
        self.substitute(&fixed)
    }
}

impl StripMarkers for CausalValue {
    fn strip_not_markers(&self) -> Self {
        self.labels()
            .into_iter()
            .filter(|l| marker_atom(l).is_some())
            .fold(self.clone(), |acc, l| {
                crate::algebra::remove_elementary(&ElementaryTerm::positive(l), &acc)
            })
    }
}

pub fn strip_not_markers<T: StripMarkers>(v: &T) -> T {
    v.strip_not_markers()
}
