use std::fmt;

use super::ElementaryTerm;

/// A sum-free causal value: a reflexively and transitively closed set of
/// edges over elementary terms.
///
/// Reflexive edges are implicit. `edges` holds the non-reflexive part of the
/// closure, sorted. No label occurs both oddly and evenly negated, and a
/// `~~l` vertex never coexists with `l`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Justification {
    vertices: Vec<ElementaryTerm>,
    edges: Vec<(ElementaryTerm, ElementaryTerm)>,
    // One bit per label hash; a quick necessary test for `leq`.
    bases: u64,
}

fn base_bit(e: &ElementaryTerm) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in e.base.as_str().bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    1 << (h % 64)
}

fn base_bits(vertices: &[ElementaryTerm]) -> u64 {
    vertices.iter().fold(0, |acc, e| acc | base_bit(e))
}

type Row = Vec<u64>;

fn bit(row: &Row, j: usize) -> bool {
    row[j / 64] & (1 << (j % 64)) != 0
}

fn set_bit(row: &mut Row, j: usize) {
    row[j / 64] |= 1 << (j % 64);
}

impl Justification {
    /// The empty graph, i.e. the value `1`.
    pub fn empty() -> Self {
        Justification {
            vertices: Vec::new(),
            edges: Vec::new(),
            bases: 0,
        }
    }

    pub fn single(e: ElementaryTerm) -> Self {
        Justification {
            bases: base_bit(&e),
            vertices: vec![e],
            edges: Vec::new(),
        }
    }

    /// Closes the given edge set and applies annihilation and absorption.
    /// Returns `None` when the product is `0`.
    pub fn from_edges<V, E>(vertices: V, edges: E) -> Option<Self>
    where
        V: IntoIterator<Item = ElementaryTerm>,
        E: IntoIterator<Item = (ElementaryTerm, ElementaryTerm)>,
    {
        Self::build(vertices, edges, None)
    }

    pub(crate) fn build<V, E>(vertices: V, edges: E, drop: Option<&ElementaryTerm>) -> Option<Self>
    where
        V: IntoIterator<Item = ElementaryTerm>,
        E: IntoIterator<Item = (ElementaryTerm, ElementaryTerm)>,
    {
        let edges: Vec<_> = edges.into_iter().collect();
        let mut verts: Vec<ElementaryTerm> = vertices.into_iter().collect();
        for (u, v) in &edges {
            verts.push(u.clone());
            verts.push(v.clone());
        }
        verts.sort();
        verts.dedup();
        let n = verts.len();
        let words = n.div_ceil(64).max(1);
        let mut rows: Vec<Row> = vec![vec![0; words]; n];
        let index = |e: &ElementaryTerm| verts.binary_search(e).expect("vertex present");
        for (u, v) in &edges {
            set_bit(&mut rows[index(u)], index(v));
        }
        for k in 0..n {
            let rk = rows[k].clone();
            for row in rows.iter_mut() {
                if bit(row, k) {
                    for (w, x) in row.iter_mut().zip(&rk) {
                        *w |= x;
                    }
                }
            }
        }

        let mut keep = vec![true; n];
        if let Some(d) = drop {
            if let Ok(i) = verts.binary_search(d) {
                keep[i] = false;
            }
        }
        let mut start = 0;
        while start < n {
            let mut end = start;
            while end < n && verts[end].base == verts[start].base {
                end += 1;
            }
            let mut signs = [None; 4];
            for i in start..end {
                if keep[i] {
                    signs[verts[i].sign() as usize] = Some(i);
                }
            }
            debug_assert!(signs[3].is_none(), "pivot vertex left in graph");
            if signs[1].is_some() && (signs[0].is_some() || signs[2].is_some()) {
                return None;
            }
            // `l * X[~~l]` equals `l * X[1]`: the `~l` alternative is annihilated.
            if let (Some(_), Some(i)) = (signs[0], signs[2]) {
                keep[i] = false;
            }
            start = end;
        }

        let mut out_edges = Vec::new();
        for i in (0..n).filter(|&i| keep[i]) {
            for j in (0..n).filter(|&j| keep[j] && j != i) {
                if bit(&rows[i], j) {
                    out_edges.push((verts[i].clone(), verts[j].clone()));
                }
            }
        }
        let vertices: Vec<ElementaryTerm> = verts
            .into_iter()
            .zip(keep)
            .filter_map(|(v, k)| k.then_some(v))
            .collect();
        Some(Justification {
            bases: base_bits(&vertices),
            vertices,
            edges: out_edges,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> &[ElementaryTerm] {
        &self.vertices
    }

    /// Non-reflexive edges of the closure, in ascending order.
    pub fn edges(&self) -> &[(ElementaryTerm, ElementaryTerm)] {
        &self.edges
    }

    pub fn has_vertex(&self, e: &ElementaryTerm) -> bool {
        self.vertices.binary_search(e).is_ok()
    }

    /// Reflexive edges count as present.
    pub fn has_edge(&self, u: &ElementaryTerm, v: &ElementaryTerm) -> bool {
        if u == v {
            return self.has_vertex(u);
        }
        self.edges
            .binary_search_by(|(a, b)| (a, b).cmp(&(u, v)))
            .is_ok()
    }

    fn has_positive(&self, e: &ElementaryTerm) -> bool {
        self.has_vertex(&ElementaryTerm::positive(e.base.clone()))
    }

    /// `self ≤ other`: `self` contains every edge of `other`. A `~~l` vertex
    /// of `other` is implied by `l` in `self`.
    pub fn leq(&self, other: &Justification) -> bool {
        if other.bases & !self.bases != 0 || other.vertices.len() > self.vertices.len() {
            return false;
        }
        let implied = |e: &ElementaryTerm| e.sign() == 2 && self.has_positive(e);
        other
            .vertices
            .iter()
            .all(|v| implied(v) || self.has_vertex(v))
            && other
                .edges
                .iter()
                .all(|(u, v)| implied(u) || implied(v) || self.has_edge(u, v))
    }

    pub fn product(&self, other: &Justification) -> Option<Justification> {
        Self::build(
            self.vertices.iter().chain(&other.vertices).cloned(),
            self.edges.iter().chain(&other.edges).cloned(),
            None,
        )
    }

    /// `self · other`: the union plus an edge from every vertex of `self`
    /// to every vertex of `other`.
    pub fn apply(&self, other: &Justification) -> Option<Justification> {
        let cross = self.vertices.iter().flat_map(|u| {
            other
                .vertices
                .iter()
                .map(move |v| (u.clone(), v.clone()))
        });
        Self::build(
            self.vertices.iter().chain(&other.vertices).cloned(),
            self.edges.iter().chain(&other.edges).cloned().chain(cross),
            None,
        )
    }

    /// Replaces `~l` in `self` and `~~l` in `other` by one shared vertex and
    /// then removes it. The result lies below `self + other`.
    pub(crate) fn consensus(&self, other: &Justification, base: &super::Label) -> Option<Justification> {
        let odd = ElementaryTerm::new(base.clone(), 1);
        let even = ElementaryTerm::new(base.clone(), 2);
        let pivot = ElementaryTerm::pivot(base.clone());
        let rename = |e: &ElementaryTerm| {
            if *e == odd || *e == even {
                pivot.clone()
            } else {
                e.clone()
            }
        };
        Self::build(
            self.vertices.iter().chain(&other.vertices).map(rename),
            self.edges
                .iter()
                .chain(&other.edges)
                .map(|(u, v)| (rename(u), rename(v))),
            Some(&pivot),
        )
    }

    /// Deletes a vertex, keeping the edges that passed through it.
    pub fn without(&self, e: &ElementaryTerm) -> Justification {
        let vertices: Vec<ElementaryTerm> = self.vertices.iter().filter(|v| *v != e).cloned().collect();
        Justification {
            bases: base_bits(&vertices),
            vertices,
            edges: self
                .edges
                .iter()
                .filter(|(u, v)| u != e && v != e)
                .cloned()
                .collect(),
        }
    }

    pub(crate) fn shares_base(&self, other: &Justification) -> bool {
        self.bases & other.bases != 0
    }

    // Graphs that can lie above `self` sort before it under this key.
    pub(crate) fn absorption_key(&self) -> (usize, std::cmp::Reverse<usize>, usize) {
        let doubled = self.vertices.iter().filter(|v| v.sign() == 2).count();
        (self.vertices.len(), std::cmp::Reverse(doubled), self.edges.len())
    }

    /// Labels negated once in this graph.
    pub(crate) fn odd_bases(&self) -> impl Iterator<Item = &super::Label> {
        self.vertices.iter().filter(|v| v.sign() == 1).map(|v| &v.base)
    }

    pub(crate) fn has_even_negation(&self, base: &super::Label) -> bool {
        self.has_vertex(&ElementaryTerm::new(base.clone(), 2))
    }

    pub(crate) fn negated_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.sign() != 0).count()
    }

    /// Edges of the transitive reduction. For cyclic parts every closure
    /// edge inside a strongly connected component is kept.
    pub fn reduction_edges(&self) -> Vec<(ElementaryTerm, ElementaryTerm)> {
        self.edges
            .iter()
            .filter(|(u, v)| {
                if self.has_edge(v, u) {
                    return true;
                }
                !self.vertices.iter().any(|w| {
                    w != u
                        && w != v
                        && self.has_edge(u, w)
                        && self.has_edge(w, v)
                        && !(self.has_edge(w, u) || self.has_edge(v, w))
                })
            })
            .cloned()
            .collect()
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render_graph(self))
    }
}

impl fmt::Debug for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
