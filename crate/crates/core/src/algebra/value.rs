use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use super::{ElementaryTerm, Justification, Label};
use crate::error::{Error, Result};

/// Canonical representative of a causal value.
///
/// The value is stored as the set of every maximal graph below it, an
/// antichain closed under consensus, so equal values compare equal. The
/// printed addends are an irredundant subset of it, obtained by greedily
/// dropping graphs that the remaining ones already cover.
#[derive(Clone)]
pub struct CausalValue {
    maximal: Vec<Justification>,
    shown: OnceLock<Vec<Justification>>,
}

impl PartialEq for CausalValue {
    fn eq(&self, other: &Self) -> bool {
        self.maximal == other.maximal
    }
}

impl Eq for CausalValue {}

impl PartialOrd for CausalValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CausalValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.maximal.cmp(&other.maximal)
    }
}

impl Hash for CausalValue {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.maximal.hash(state);
    }
}

/// Label occurrences of a justification split by negation depth.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct JustificationClass {
    pub causes: BTreeSet<Label>,
    pub enablers: BTreeSet<Label>,
    pub inhibitors: BTreeSet<Label>,
    pub enabled: bool,
}

/// Value operations under a bound on the number of addends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub max_addends: usize,
}

impl Default for Algebra {
    fn default() -> Self {
        Algebra { max_addends: 4096 }
    }
}

impl CausalValue {
    fn from_maximal(maximal: Vec<Justification>) -> Self {
        CausalValue {
            maximal,
            shown: OnceLock::new(),
        }
    }

    pub fn zero() -> Self {
        Self::from_maximal(Vec::new())
    }

    pub fn one() -> Self {
        Self::from_maximal(vec![Justification::empty()])
    }

    pub fn elementary(e: ElementaryTerm) -> Self {
        Self::from_maximal(vec![Justification::single(e)])
    }

    pub fn label(name: &str) -> Self {
        Self::elementary(ElementaryTerm::positive(Label::new(name)))
    }

    /// Canonical value of a sum of graphs.
    pub fn from_graphs(graphs: impl IntoIterator<Item = Justification>) -> Self {
        Algebra::unbounded()
            .canonical(graphs.into_iter().collect())
            .expect("unbounded")
    }

    pub fn is_zero(&self) -> bool {
        self.maximal.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.maximal.len() == 1 && self.maximal[0].is_empty()
    }

    /// The printed addends: an irredundant sum equal to the value.
    pub fn addends(&self) -> &[Justification] {
        self.shown.get_or_init(|| irredundant(&self.maximal))
    }

    /// Every maximal graph below the value.
    pub fn maximal(&self) -> &[Justification] {
        &self.maximal
    }

    /// All labels occurring in the value.
    pub fn labels(&self) -> BTreeSet<Label> {
        self.maximal
            .iter()
            .flat_map(|g| g.vertices().iter().map(|v| v.base.clone()))
            .collect()
    }
}

impl fmt::Display for CausalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, g) in self.addends().iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CausalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn antichain(mut graphs: Vec<Justification>) -> Vec<Justification> {
    graphs.sort_by(|a, b| a.absorption_key().cmp(&b.absorption_key()).then_with(|| a.cmp(b)));
    graphs.dedup();
    let mut kept: Vec<Justification> = Vec::new();
    for g in graphs {
        if !kept.iter().any(|h| g.leq(h)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

// Some label occurs as `~l` in one addend and as `~~l` in another.
fn has_clash(graphs: &[Justification]) -> bool {
    let odd: BTreeSet<&Label> = graphs.iter().flat_map(|g| g.odd_bases()).collect();
    !odd.is_empty()
        && graphs
            .iter()
            .flat_map(|g| g.vertices())
            .any(|v| v.sign() == 2 && odd.contains(&v.base))
}

/// Closes an antichain under consensus on `~l` / `~~l` pairs, keeping only
/// maximal graphs. `limit` bounds the size of the working set.
fn saturate(graphs: Vec<Justification>, limit: usize) -> Option<Vec<Justification>> {
    let start = antichain(graphs);
    if start.len() > limit {
        return None;
    }
    if !has_clash(&start) {
        return Some(start);
    }
    let mut set: Vec<Option<Justification>> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();
    for g in start {
        queue.push(set.len());
        set.push(Some(g));
    }
    let mut alive = set.len();
    while let Some(i) = queue.pop() {
        let Some(g) = set[i].clone() else { continue };
        let mut found = Vec::new();
        for h in set.iter().flatten() {
            if !g.shares_base(h) {
                continue;
            }
            for base in g.odd_bases() {
                if h.has_even_negation(base) {
                    found.extend(g.consensus(h, base));
                }
            }
            for base in h.odd_bases() {
                if g.has_even_negation(base) {
                    found.extend(h.consensus(&g, base));
                }
            }
        }
        for r in found {
            if set.iter().flatten().any(|h| r.leq(h)) {
                continue;
            }
            for slot in set.iter_mut() {
                if slot.as_ref().is_some_and(|h| h.leq(&r)) {
                    *slot = None;
                    alive -= 1;
                }
            }
            queue.push(set.len());
            set.push(Some(r));
            alive += 1;
            if alive > limit {
                return None;
            }
        }
    }
    let mut out: Vec<Justification> = set.into_iter().flatten().collect();
    out.sort();
    Some(out)
}

fn covers(graphs: &[Justification], g: &Justification) -> bool {
    saturate(graphs.to_vec(), usize::MAX)
        .expect("unbounded")
        .iter()
        .any(|h| g.leq(h))
}

// Greedy irredundant subset of a saturated set: fewest negated vertices
// first, then most vertices.
fn irredundant(maximal: &[Justification]) -> Vec<Justification> {
    if !has_clash(maximal) {
        return maximal.to_vec();
    }
    let mut order: Vec<&Justification> = maximal.iter().collect();
    order.sort_by(|a, b| {
        a.negated_count()
            .cmp(&b.negated_count())
            .then(b.vertices().len().cmp(&a.vertices().len()))
            .then(a.cmp(b))
    });
    let mut current: Vec<Justification> = maximal.to_vec();
    for cand in order {
        let rest: Vec<Justification> = current.iter().filter(|g| *g != cand).cloned().collect();
        if !rest.is_empty() && covers(&rest, cand) {
            current = rest;
        }
    }
    current.sort();
    current
}

impl Algebra {
    pub fn unbounded() -> Self {
        Algebra {
            max_addends: usize::MAX,
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_addends {
            Err(Error::Resource(format!(
                "value exceeds {} addends",
                self.max_addends
            )))
        } else {
            Ok(())
        }
    }

    pub(crate) fn canonical(&self, graphs: Vec<Justification>) -> Result<CausalValue> {
        self.check(graphs.len())?;
        saturate(graphs, self.max_addends)
            .map(CausalValue::from_maximal)
            .ok_or_else(|| Error::Resource(format!("value exceeds {} addends", self.max_addends)))
    }

    fn pairwise<F>(&self, v1: &CausalValue, v2: &CausalValue, op: F) -> Result<CausalValue>
    where
        F: Fn(&Justification, &Justification) -> Option<Justification>,
    {
        let mut graphs = Vec::with_capacity(v1.maximal.len() * v2.maximal.len());
        for g in &v1.maximal {
            for h in &v2.maximal {
                if let Some(x) = op(g, h) {
                    graphs.push(x);
                }
            }
        }
        self.canonical(graphs)
    }

    pub fn prod(&self, v1: &CausalValue, v2: &CausalValue) -> Result<CausalValue> {
        if v1.is_one() {
            return Ok(v2.clone());
        }
        if v2.is_one() {
            return Ok(v1.clone());
        }
        self.pairwise(v1, v2, |g, h| g.product(h))
    }

    pub fn sum(&self, v1: &CausalValue, v2: &CausalValue) -> Result<CausalValue> {
        if v1.is_zero() {
            return Ok(v2.clone());
        }
        if v2.is_zero() {
            return Ok(v1.clone());
        }
        let graphs: Vec<_> = v1.maximal.iter().chain(&v2.maximal).cloned().collect();
        self.canonical(graphs)
    }

    pub fn app(&self, v1: &CausalValue, v2: &CausalValue) -> Result<CausalValue> {
        if v1.is_one() {
            return Ok(v2.clone());
        }
        if v2.is_one() {
            return Ok(v1.clone());
        }
        self.pairwise(v1, v2, |g, h| g.apply(h))
    }

    /// `~(ΣGᵢ) = Π ~Gᵢ`, where `~G` is the sum of the negated vertices of `G`.
    pub fn neg(&self, v: &CausalValue) -> Result<CausalValue> {
        let bases: Vec<Label> = v.labels().into_iter().collect();
        if bases.len() <= 128 {
            return self.neg_clauses(v, &bases);
        }
        let mut acc = CausalValue::one();
        let mut factors: Vec<CausalValue> = v
            .maximal
            .iter()
            .map(|g| CausalValue::from_graphs(g.vertices().iter().map(|x| Justification::single(x.negate()))))
            .collect();
        factors.sort_by_key(|f| f.maximal.len());
        for f in &factors {
            acc = self.prod(&acc, f)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    // Each `~G` is a clause over `~l` / `~~l`, which behave as a Boolean
    // variable and its complement. Multiplying the clauses out with
    // absorption leaves exactly the prime implicants, i.e. every maximal
    // graph below the product.
    fn neg_clauses(&self, v: &CausalValue, bases: &[Label]) -> Result<CausalValue> {
        type Term = (u128, u128);
        let index = |l: &Label| bases.binary_search(l).expect("label of the value");
        let mut clauses: Vec<Term> = Vec::new();
        for g in &v.maximal {
            let (mut even, mut odd) = (0u128, 0u128);
            for x in g.vertices() {
                let bit = 1u128 << index(&x.base);
                if x.is_odd() {
                    even |= bit;
                } else {
                    odd |= bit;
                }
            }
            if even & odd == 0 {
                clauses.push((even, odd));
            }
        }
        clauses.sort_by_key(|(e, o)| (e.count_ones() + o.count_ones(), *e, *o));
        let mut terms: Vec<Term> = vec![(0, 0)];
        for &(ce, co) in &clauses {
            let mut next: Vec<Term> = Vec::new();
            for &(te, to) in &terms {
                if te & ce != 0 || to & co != 0 {
                    next.push((te, to));
                    continue;
                }
                for k in 0..128 {
                    let bit = 1u128 << k;
                    if ce & bit != 0 && to & bit == 0 {
                        next.push((te | bit, to));
                    }
                    if co & bit != 0 && te & bit == 0 {
                        next.push((te, to | bit));
                    }
                }
            }
            next.sort_by_key(|(e, o)| (e.count_ones() + o.count_ones(), *e, *o));
            next.dedup();
            let mut kept: Vec<Term> = Vec::with_capacity(next.len());
            for t in next {
                if !kept.iter().any(|k| k.0 & t.0 == k.0 && k.1 & t.1 == k.1) {
                    kept.push(t);
                }
            }
            self.check(kept.len())?;
            terms = kept;
            if terms.is_empty() {
                break;
            }
        }
        let mut graphs: Vec<Justification> = terms
            .into_iter()
            .map(|(e, o)| {
                let vertices = (0..bases.len()).filter_map(|k| {
                    let bit = 1u128 << k;
                    let sign = if e & bit != 0 {
                        2
                    } else if o & bit != 0 {
                        1
                    } else {
                        return None;
                    };
                    Some(ElementaryTerm::new(bases[k].clone(), sign))
                });
                Justification::from_edges(vertices, []).expect("consistent term")
            })
            .collect();
        graphs.sort();
        Ok(CausalValue::from_maximal(graphs))
    }

    pub fn leq(&self, v1: &CausalValue, v2: &CausalValue) -> Result<bool> {
        Ok(v1
            .maximal
            .iter()
            .all(|g| v2.maximal.iter().any(|h| g.leq(h))))
    }

    pub fn remove_elementary(&self, x: &ElementaryTerm, v: &CausalValue) -> Result<CausalValue> {
        // Occurrences t with ~~t = ~~x map to 1, those with ~~t = ~x map
        // to 0. For x = ~l the zero class holds both l and ~~l.
        let (to_one, to_zero): (Vec<ElementaryTerm>, Vec<ElementaryTerm>) = if x.is_odd() {
            (
                vec![x.clone()],
                vec![
                    ElementaryTerm::positive(x.base.clone()),
                    ElementaryTerm::new(x.base.clone(), 2),
                ],
            )
        } else {
            (
                vec![
                    ElementaryTerm::positive(x.base.clone()),
                    ElementaryTerm::new(x.base.clone(), 2),
                ],
                vec![x.negate()],
            )
        };
        let graphs = v
            .maximal
            .iter()
            .filter(|g| !to_zero.iter().any(|e| g.has_vertex(e)))
            .map(|g| to_one.iter().fold(g.clone(), |acc, e| acc.without(e)))
            .collect();
        self.canonical(graphs)
    }
}

pub fn prod(v1: &CausalValue, v2: &CausalValue) -> CausalValue {
    Algebra::unbounded().prod(v1, v2).expect("unbounded")
}

pub fn sum(v1: &CausalValue, v2: &CausalValue) -> CausalValue {
    Algebra::unbounded().sum(v1, v2).expect("unbounded")
}

pub fn app(v1: &CausalValue, v2: &CausalValue) -> CausalValue {
    Algebra::unbounded().app(v1, v2).expect("unbounded")
}

pub fn neg(v: &CausalValue) -> CausalValue {
    Algebra::unbounded().neg(v).expect("unbounded")
}

/// `v1 ≤ v2` in the value order.
pub fn leq(v1: &CausalValue, v2: &CausalValue) -> bool {
    Algebra::unbounded().leq(v1, v2).expect("unbounded")
}

pub fn addends(v: &CausalValue) -> Vec<Justification> {
    v.addends().to_vec()
}

/// Removes the elementary term `x` from `v`: occurrences equivalent to `x`
/// under double negation become `1`, those equivalent to `~x` under double
/// negation become `0`. Removing `~r` thus drops every addend in which `r`
/// contributes, positively or as an enabler.
pub fn remove_elementary(x: &ElementaryTerm, v: &CausalValue) -> CausalValue {
    Algebra::unbounded()
        .remove_elementary(x, v)
        .expect("unbounded")
}

pub fn classify(e: &Justification) -> JustificationClass {
    let mut class = JustificationClass {
        causes: BTreeSet::new(),
        enablers: BTreeSet::new(),
        inhibitors: BTreeSet::new(),
        enabled: true,
    };
    for v in e.vertices() {
        let set = match v.sign() {
            0 => &mut class.causes,
            1 => &mut class.inhibitors,
            _ => &mut class.enablers,
        };
        set.insert(v.base.clone());
    }
    class.enabled = class.inhibitors.is_empty();
    class
}
