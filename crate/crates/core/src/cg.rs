//! Causal-graph semantics: the projection `λᶜ`, graphs of negation-free
//! values, stable-model enumeration and DOT export.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{Algebra, CausalValue, ElementaryTerm, Justification, Label};
use crate::error::{Error, Result};
use crate::program::{Atom, LabelledProgram, Rule};
use crate::wfs::{self, Truth};

/// Default bound on the number of atoms whose truth is enumerated.
pub const DEFAULT_MAX_ATOMS_ENUM: usize = 16;

/// A value without negated labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CgValue(CausalValue);

impl CgValue {
    pub fn zero() -> Self {
        CgValue(CausalValue::zero())
    }

    /// Wraps `v`, or returns it back if some addend has a negated vertex.
    pub fn new(v: CausalValue) -> std::result::Result<Self, CausalValue> {
        if v.addends().iter().all(|g| g.vertices().iter().all(|e| e.sign() == 0)) {
            Ok(CgValue(v))
        } else {
            Err(v)
        }
    }

    pub fn value(&self) -> &CausalValue {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for CgValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for CgValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Maps `~~l` to `1` and `~l` to `0`, keeping plain labels.
pub fn lambda_c(v: &CausalValue) -> CgValue {
    let graphs = v.addends().iter().filter_map(|g| {
        if g.vertices().iter().any(|e| e.sign() == 1) {
            return None;
        }
        let doubled: Vec<ElementaryTerm> =
            g.vertices().iter().filter(|e| e.sign() == 2).cloned().collect();
        Some(doubled.iter().fold(g.clone(), |acc, e| acc.without(e)))
    });
    CgValue(CausalValue::from_graphs(graphs))
}

/// A causal graph over labels. `edges` is the reflexive and transitive
/// closure.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CausalGraphView {
    pub vertices: BTreeSet<Label>,
    pub edges: BTreeSet<(Label, Label)>,
}

impl CausalGraphView {
    /// Builds the closure of the given edges; every edge endpoint becomes a
    /// vertex.
    pub fn new(
        vertices: impl IntoIterator<Item = Label>,
        edges: impl IntoIterator<Item = (Label, Label)>,
    ) -> Self {
        let plain = |l: Label| ElementaryTerm::positive(l);
        let g = Justification::from_edges(
            vertices.into_iter().map(plain),
            edges.into_iter().map(|(u, v)| (plain(u), plain(v))),
        )
        .expect("labels without negation never annihilate");
        Self::of_justification(&g)
    }

    fn of_justification(g: &Justification) -> Self {
        let vertices: BTreeSet<Label> = g.vertices().iter().map(|e| e.base.clone()).collect();
        let mut edges: BTreeSet<(Label, Label)> =
            vertices.iter().map(|v| (v.clone(), v.clone())).collect();
        edges.extend(g.edges().iter().map(|(u, v)| (u.base.clone(), v.base.clone())));
        CausalGraphView { vertices, edges }
    }

    fn justification(&self) -> Justification {
        let plain = |l: &Label| ElementaryTerm::positive(l.clone());
        Justification::from_edges(
            self.vertices.iter().map(plain),
            self.edges
                .iter()
                .filter(|(u, v)| u != v)
                .map(|(u, v)| (plain(u), plain(v))),
        )
        .expect("labels without negation never annihilate")
    }

    /// Edges of the transitive and reflexive reduction.
    pub fn reduction(&self) -> Vec<(Label, Label)> {
        self.justification()
            .reduction_edges()
            .into_iter()
            .map(|(u, v)| (u.base, v.base))
            .collect()
    }
}

impl fmt::Display for CausalGraphView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.justification().fmt(f)
    }
}

/// The product of `u·v` over the edges of `g`.
pub fn term_of_graph(g: &CausalGraphView) -> CgValue {
    CgValue(CausalValue::from_graphs([g.justification()]))
}

/// Inverse of [`term_of_graph`] on values with exactly one addend.
pub fn graph_of_term(v: &CgValue) -> Result<CausalGraphView> {
    match v.0.addends() {
        [g] => Ok(CausalGraphView::of_justification(g)),
        other => Err(Error::Arity(other.len())),
    }
}

/// A causal-graph interpretation over a fixed signature.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CgInterpretation {
    map: BTreeMap<Atom, CgValue>,
    atoms: BTreeSet<Atom>,
}

impl CgInterpretation {
    pub fn get(&self, a: &Atom) -> CgValue {
        self.map.get(a).cloned().unwrap_or_else(CgValue::zero)
    }

    pub fn support(&self) -> BTreeSet<Atom> {
        self.map.keys().cloned().collect()
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.atoms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, &CgValue)> {
        self.map.iter()
    }
}

impl fmt::Debug for CgInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.map.iter().map(|(a, v)| (a.as_str(), v.to_string())))
            .finish()
    }
}

/// Positive program obtained by assuming exactly the atoms of `support`.
fn cg_reduct(p: &LabelledProgram, support: &BTreeSet<Atom>) -> LabelledProgram {
    let rules = p
        .rules
        .iter()
        .filter(|r| r.negative_body.iter().all(|c| !support.contains(c)))
        .map(|r| Rule {
            label: r.label.clone(),
            head: r.head.clone(),
            positive_body: r.positive_body.clone(),
            negative_body: Vec::new(),
        })
        .collect();
    LabelledProgram::new(rules).with_atoms(p.atoms())
}

/// CG stable models, sorted by support.
///
/// Supports are searched between the true and the possibly-true atoms of
/// the standard well-founded model; `max_atoms_enum` bounds the number of
/// undefined atoms.
pub fn cg_stable_models(p: &LabelledProgram, max_atoms_enum: usize) -> Result<Vec<CgInterpretation>> {
    cg_stable_models_with(&Algebra::default(), p, max_atoms_enum)
}

pub fn cg_stable_models_with(
    alg: &Algebra,
    p: &LabelledProgram,
    max_atoms_enum: usize,
) -> Result<Vec<CgInterpretation>> {
    let std = wfs::standard_wfm(p);
    let sure: BTreeSet<Atom> = std
        .map
        .iter()
        .filter(|(_, t)| **t == Truth::True)
        .map(|(a, _)| a.clone())
        .collect();
    let open: Vec<Atom> = std
        .map
        .iter()
        .filter(|(_, t)| **t == Truth::Undefined)
        .map(|(a, _)| a.clone())
        .collect();
    if open.len() > max_atoms_enum {
        return Err(Error::Resource(format!(
            "{} undefined atoms exceed the enumeration bound {max_atoms_enum}",
            open.len()
        )));
    }
    let atoms = p.atoms();
    let mut models = Vec::new();
    for mask in 0u64..(1u64 << open.len()) {
        let mut support = sure.clone();
        support.extend(
            open.iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, a)| a.clone()),
        );
        let model = wfs::least_model_with(alg, &cg_reduct(p, &support))?;
        if model.support() != support {
            continue;
        }
        let map = model
            .iter()
            .map(|(a, v)| {
                let v = CgValue::new(v.clone())
                    .map_err(|v| Error::NotCausalGraph(v.to_string()))?;
                Ok((a.clone(), v))
            })
            .collect::<Result<_>>()?;
        models.push(CgInterpretation {
            map,
            atoms: atoms.clone(),
        });
    }
    models.sort_by(|a, b| a.support().cmp(&b.support()).then_with(|| a.cmp(b)));
    Ok(models)
}

/// Graphs of the addends of `m(a)`.
pub fn cg_justifications(m: &CgInterpretation, a: &Atom) -> Result<Vec<CausalGraphView>> {
    if !m.atoms.contains(a) {
        return Err(Error::UnknownAtom(a.to_string()));
    }
    Ok(m
        .get(a)
        .0
        .addends()
        .iter()
        .map(CausalGraphView::of_justification)
        .collect())
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// GraphViz rendering showing the edges of the reduction.
pub fn to_dot(g: &CausalGraphView) -> String {
    let mut out = String::from("digraph G {\n");
    for v in &g.vertices {
        let _ = writeln!(out, "  {};", quote(v.as_str()));
    }
    let mut edges = g.reduction();
    edges.sort();
    for (u, v) in edges {
        let _ = writeln!(out, "  {} -> {};", quote(u.as_str()), quote(v.as_str()));
    }
    out.push_str("}\n");
    out
}
