//! Printing of justification graphs in reduced chain syntax.
//!
//! A connected acyclic graph with a unique sink `s` prints as `(rest).s`,
//! one with a unique source as `s.(rest)`; disconnected parts become
//! products. Anything else falls back to a product of reduction edges.

use super::{ElementaryTerm, Justification};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Prec {
    Atom,
    App,
    Prod,
}

pub(crate) fn render_graph(g: &Justification) -> String {
    let all: Vec<&ElementaryTerm> = g.vertices().iter().collect();
    render(g, &all).0
}

fn paren(s: (String, Prec)) -> String {
    if s.1 == Prec::Prod {
        format!("({})", s.0)
    } else {
        s.0
    }
}

fn components<'a>(g: &Justification, set: &[&'a ElementaryTerm]) -> Vec<Vec<&'a ElementaryTerm>> {
    let n = set.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if g.has_edge(set[i], set[j]) || g.has_edge(set[j], set[i]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<&ElementaryTerm>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of[r] {
            Some(k) => groups[k].push(set[i]),
            None => {
                root_of[r] = Some(groups.len());
                groups.push(vec![set[i]]);
            }
        }
    }
    groups
}

fn render(g: &Justification, set: &[&ElementaryTerm]) -> (String, Prec) {
    match set.len() {
        0 => return ("1".to_string(), Prec::Atom),
        1 => return (set[0].to_string(), Prec::Atom),
        _ => {}
    }
    let comps = components(g, set);
    if comps.len() > 1 {
        let parts: Vec<String> = comps.iter().map(|c| render(g, c).0).collect();
        return (parts.join(" * "), Prec::Prod);
    }
    let cyclic = set
        .iter()
        .any(|u| set.iter().any(|v| u != v && g.has_edge(u, v) && g.has_edge(v, u)));
    if !cyclic {
        let outside = |v: &ElementaryTerm, forward: bool| {
            set.iter().any(|u| {
                *u != v && if forward { g.has_edge(v, u) } else { g.has_edge(u, v) }
            })
        };
        let sinks: Vec<_> = set.iter().filter(|v| !outside(v, true)).collect();
        if let [s] = sinks.as_slice() {
            let rest: Vec<_> = set.iter().filter(|v| v != s).copied().collect();
            return (format!("{}.{}", paren(render(g, &rest)), s), Prec::App);
        }
        let sources: Vec<_> = set.iter().filter(|v| !outside(v, false)).collect();
        if let [s] = sources.as_slice() {
            let rest: Vec<_> = set.iter().filter(|v| v != s).copied().collect();
            return (format!("{}.{}", s, paren(render(g, &rest))), Prec::App);
        }
    }
    let mut parts = Vec::new();
    for u in set {
        for v in set {
            if u == v || !g.has_edge(u, v) {
                continue;
            }
            let same_scc = |a: &ElementaryTerm, b: &ElementaryTerm| g.has_edge(a, b) && g.has_edge(b, a);
            let implied = !same_scc(u, v)
                && set.iter().any(|w| {
                    w != u
                        && w != v
                        && g.has_edge(u, w)
                        && g.has_edge(w, v)
                        && !same_scc(w, u)
                        && !same_scc(w, v)
                });
            if !implied {
                parts.push(format!("{u}.{v}"));
            }
        }
    }
    (parts.join(" * "), Prec::Prod)
}
