//! Labelled programs: AST, surface parser and validation.
//!
//! ```text
//! program   := statement*
//! statement := [label ":"] atom [arrow body] "."
//! arrow     := ":-" | "<-"
//! body      := lit ("," lit)*
//! lit       := ["not"] atom
//! ```
//!
//! `%` starts a comment. A fact `A.` stands for the rule `A: A.`; a rule
//! without a label carries the identity label `1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::term::{is_name_char, is_name_start, scan_name};
use crate::algebra::{CausalValue, ElementaryTerm, Label};
use crate::error::{Error, Result};

/// Prefix reserved for the `not(A)` markers of the why-not program.
pub const NOT_MARKER_PREFIX: &str = "not(";

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Self {
        assert!(!name.is_empty(), "atoms must be non-empty");
        Atom(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The label `not(A)` used by the why-not program.
    pub fn not_marker(&self) -> Label {
        Label::new(&format!("{NOT_MARKER_PREFIX}{})", self.0))
    }

    /// The label homonymous with this atom, carried by its fact.
    pub fn fact_label(&self) -> Label {
        Label::new(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// The atom `A` if `label` is a `not(A)` marker.
pub fn marker_atom(label: &Label) -> Option<Atom> {
    let s = label.as_str();
    s.strip_prefix(NOT_MARKER_PREFIX)
        .and_then(|rest| rest.strip_suffix(')'))
        .filter(|inner| !inner.is_empty())
        .map(Atom::new)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleLabel {
    One,
    Term(ElementaryTerm),
}

impl RuleLabel {
    pub fn named(name: &str) -> Self {
        RuleLabel::Term(ElementaryTerm::positive(Label::new(name)))
    }

    pub fn value(&self) -> CausalValue {
        match self {
            RuleLabel::One => CausalValue::one(),
            RuleLabel::Term(e) => CausalValue::elementary(e.clone()),
        }
    }
}

impl fmt::Display for RuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleLabel::One => f.write_str("1"),
            RuleLabel::Term(e) => write!(f, "{e}"),
        }
    }
}

/// Positive body element: an atom, or a constant value inserted by a reduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BodyElem {
    Atom(Atom),
    Const(CausalValue),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub label: RuleLabel,
    pub head: Atom,
    pub positive_body: Vec<BodyElem>,
    pub negative_body: Vec<Atom>,
}

impl Rule {
    pub fn fact(head: Atom) -> Self {
        Rule {
            label: RuleLabel::Term(ElementaryTerm::positive(head.fact_label())),
            head,
            positive_body: Vec::new(),
            negative_body: Vec::new(),
        }
    }

    pub fn is_fact(&self) -> bool {
        self.positive_body.is_empty() && self.negative_body.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.negative_body.is_empty()
    }

    fn atoms(&self) -> impl Iterator<Item = &Atom> {
        std::iter::once(&self.head)
            .chain(self.positive_body.iter().filter_map(|b| match b {
                BodyElem::Atom(a) => Some(a),
                BodyElem::Const(_) => None,
            }))
            .chain(&self.negative_body)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let implicit = match &self.label {
            RuleLabel::One => !self.is_fact(),
            RuleLabel::Term(e) => self.is_fact() && e.sign() == 0 && e.base.as_str() == self.head.as_str(),
        };
        if !implicit {
            write!(f, "{}: ", self.label)?;
        }
        write!(f, "{}", self.head)?;
        let mut lits: Vec<String> = self
            .positive_body
            .iter()
            .map(|b| match b {
                BodyElem::Atom(a) => a.to_string(),
                BodyElem::Const(v) => format!("[{v}]"),
            })
            .collect();
        lits.extend(self.negative_body.iter().map(|a| format!("not {a}")));
        if !lits.is_empty() {
            write!(f, " :- {}", lits.join(", "))?;
        }
        f.write_str(".")
    }
}

/// A finite set of labelled rules over the atoms they mention.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelledProgram {
    pub rules: Vec<Rule>,
    extra_atoms: BTreeSet<Atom>,
}

impl LabelledProgram {
    pub fn new(rules: Vec<Rule>) -> Self {
        LabelledProgram {
            rules,
            extra_atoms: BTreeSet::new(),
        }
    }

    /// Adds atoms to the signature without adding rules for them.
    pub fn with_atoms(mut self, atoms: impl IntoIterator<Item = Atom>) -> Self {
        let mentioned: BTreeSet<Atom> = self.rules.iter().flat_map(|r| r.atoms().cloned()).collect();
        self.extra_atoms
            .extend(atoms.into_iter().filter(|a| !mentioned.contains(a)));
        self
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = self.extra_atoms.clone();
        for r in &self.rules {
            out.extend(r.atoms().cloned());
        }
        out
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.rules
            .iter()
            .filter_map(|r| match &r.label {
                RuleLabel::One => None,
                RuleLabel::Term(e) => Some(e.base.clone()),
            })
            .collect()
    }

    pub fn is_fact_atom(&self, a: &Atom) -> bool {
        self.rules.iter().any(|r| r.head == *a && r.is_fact())
    }

    pub fn is_positive(&self) -> bool {
        self.rules.iter().all(Rule::is_positive)
    }

    /// The program without the rules carrying label `l`.
    pub fn without_label(&self, l: &Label) -> LabelledProgram {
        let rules = self
            .rules
            .iter()
            .filter(|r| !matches!(&r.label, RuleLabel::Term(e) if e.base == *l))
            .cloned()
            .collect();
        LabelledProgram::new(rules).with_atoms(self.atoms())
    }
}

impl fmt::Display for LabelledProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn location(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        (line, column)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.location(self.pos);
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip(&mut self) {
        loop {
            let rest = &self.src[self.pos..];
            let Some(c) = rest.chars().next() else { return };
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else if c == '%' {
                self.pos += rest.find('\n').unwrap_or(rest.len());
            } else {
                return;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip();
        self.pos == self.src.len()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn name(&mut self, what: &str) -> Result<(String, usize)> {
        self.skip();
        let start = self.pos;
        let n = scan_name(&self.src[start..]);
        if n == 0 {
            return Err(self.error(format!("expected {what}")));
        }
        self.pos += n;
        Ok((self.src[start..start + n].to_string(), start))
    }

    fn atom(&mut self) -> Result<Atom> {
        let (name, at) = self.name("an atom")?;
        if name == "not" || name.starts_with(NOT_MARKER_PREFIX) {
            let (line, column) = self.location(at);
            return Err(Error::Reserved {
                token: name,
                line,
                column,
            });
        }
        Ok(Atom::new(&name))
    }

    fn statement(&mut self) -> Result<Rule> {
        let save = self.pos;
        let (first, _) = self.name("a label or an atom")?;
        let label = if self.src[self.pos..].trim_start().starts_with(":-") {
            self.pos = save;
            None
        } else if self.eat(":") {
            Some(first)
        } else {
            self.pos = save;
            None
        };
        let head = self.atom()?;
        let mut rule = Rule {
            label: RuleLabel::One,
            head,
            positive_body: Vec::new(),
            negative_body: Vec::new(),
        };
        if self.eat(":-") || self.eat("<-") {
            loop {
                self.skip();
                let rest = &self.src[self.pos..];
                let negated = rest.starts_with("not")
                    && rest[3..].starts_with(|c: char| c.is_whitespace())
                    && {
                        let after = rest[3..].trim_start();
                        scan_name(after) > 0
                    };
                if negated {
                    self.pos += 3;
                    rule.negative_body.push(self.atom()?);
                } else {
                    rule.positive_body.push(BodyElem::Atom(self.atom()?));
                }
                if !self.eat(",") {
                    break;
                }
            }
        }
        if !self.eat(".") {
            return Err(self.error("expected `.`"));
        }
        rule.label = match label {
            Some(l) => RuleLabel::named(&l),
            None if rule.is_fact() => RuleLabel::Term(ElementaryTerm::positive(rule.head.fact_label())),
            None => RuleLabel::One,
        };
        Ok(rule)
    }
}

/// Parses a program. Duplicate labels are accepted here and reported by
/// [`validate`].
pub fn parse_program(text: &str) -> Result<LabelledProgram> {
    let mut lx = Lexer { src: text, pos: 0 };
    let mut rules = Vec::new();
    while !lx.at_end() {
        rules.push(lx.statement()?);
    }
    Ok(LabelledProgram::new(rules))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    DuplicateLabel { label: String, rules: Vec<usize> },
    MalformedName { name: String, rule: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::DuplicateLabel { label, rules } => {
                let idx: Vec<String> = rules.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "label `{label}` is used by rules {}", idx.join(", "))
            }
            Diagnostic::MalformedName { name, rule } => {
                write!(f, "rule {}: `{name}` is not a well-formed name", rule + 1)
            }
        }
    }
}

fn well_formed(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if is_name_start(c))
        && chars.all(is_name_char)
        && scan_name(name) == name.len()
        && name != "not"
}

/// Checks that the program is uniquely labelled and that every name is
/// well formed.
pub fn validate(p: &LabelledProgram) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut by_label: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, r) in p.rules.iter().enumerate() {
        if let RuleLabel::Term(e) = &r.label {
            by_label.entry(e.to_string()).or_default().push(i);
            if !well_formed(e.base.as_str()) && marker_atom(&e.base).is_none() {
                out.push(Diagnostic::MalformedName {
                    name: e.base.to_string(),
                    rule: i,
                });
            }
        }
        for a in r.atoms() {
            if !well_formed(a.as_str()) || a.as_str().starts_with(NOT_MARKER_PREFIX) {
                out.push(Diagnostic::MalformedName {
                    name: a.to_string(),
                    rule: i,
                });
            }
        }
    }
    for (label, rules) in by_label {
        if rules.len() > 1 {
            out.push(Diagnostic::DuplicateLabel { label, rules });
        }
    }
    out
}
