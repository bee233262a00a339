//! Seeded random causal terms and the axiom catalogue checked against them.

use ecj::algebra::{normalize, CausalTerm, CausalValue};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const LABELS: [&str; 3] = ["a", "b", "c"];

pub fn label(rng: &mut ChaCha8Rng) -> CausalTerm {
    CausalTerm::label(LABELS[rng.gen_range(0..LABELS.len())])
}

/// `l`, `~l` or `~~l`.
pub fn elementary(rng: &mut ChaCha8Rng) -> CausalTerm {
    let mut t = label(rng);
    for _ in 0..rng.gen_range(0..3) {
        t = CausalTerm::neg(t);
    }
    t
}

pub fn term(rng: &mut ChaCha8Rng, depth: u32) -> CausalTerm {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..10) {
            0 => CausalTerm::zero(),
            1 => CausalTerm::one(),
            _ => label(rng),
        };
    }
    match rng.gen_range(0..4) {
        0 => CausalTerm::neg(term(rng, depth - 1)),
        1 => CausalTerm::app(term(rng, depth - 1), term(rng, depth - 1)),
        2 => CausalTerm::Product(vec![term(rng, depth - 1), term(rng, depth - 1)]),
        _ => CausalTerm::Sum(vec![term(rng, depth - 1), term(rng, depth - 1)]),
    }
}

/// A term whose normal form has no sums: products and applications of
/// elementary terms, never the constant `1`.
pub fn sum_free(rng: &mut ChaCha8Rng, depth: u32) -> CausalTerm {
    if depth == 0 || rng.gen_bool(0.4) {
        return elementary(rng);
    }
    let (t, u) = (sum_free(rng, depth - 1), sum_free(rng, depth - 1));
    if rng.gen_bool(0.5) {
        CausalTerm::app(t, u)
    } else {
        CausalTerm::Product(vec![t, u])
    }
}

fn app(t: &CausalTerm, u: &CausalTerm) -> CausalTerm {
    CausalTerm::app(t.clone(), u.clone())
}

fn prod(t: &CausalTerm, u: &CausalTerm) -> CausalTerm {
    CausalTerm::Product(vec![t.clone(), u.clone()])
}

fn add(t: &CausalTerm, u: &CausalTerm) -> CausalTerm {
    CausalTerm::Sum(vec![t.clone(), u.clone()])
}

fn neg(t: &CausalTerm) -> CausalTerm {
    CausalTerm::neg(t.clone())
}

/// Operands drawn for one axiom instance.
pub struct Instance {
    pub t: CausalTerm,
    pub u: CausalTerm,
    pub w: CausalTerm,
    pub c: CausalTerm,
    pub d: CausalTerm,
    pub e: CausalTerm,
    pub x: CausalTerm,
}

impl Instance {
    pub fn draw(rng: &mut ChaCha8Rng) -> Self {
        Instance {
            t: term(rng, 3),
            u: term(rng, 3),
            w: term(rng, 2),
            c: sum_free(rng, 2),
            d: sum_free(rng, 2),
            e: sum_free(rng, 2),
            x: elementary(rng),
        }
    }
}

pub type Axiom = (&'static str, fn(&Instance) -> (CausalTerm, CausalTerm));

/// Every equation of the application, negation and lattice axiom tables.
pub fn axioms() -> Vec<Axiom> {
    vec![
        ("app associativity", |i| (app(&i.t, &app(&i.u, &i.w)), app(&app(&i.t, &i.u), &i.w))),
        ("app absorption (sum)", |i| (i.t.clone(), add(&i.t, &app(&app(&i.u, &i.t), &i.w)))),
        ("app absorption (product)", |i| {
            let utw = app(&app(&i.u, &i.t), &i.w);
            (utw.clone(), prod(&i.t, &utw))
        }),
        ("app left identity", |i| (i.t.clone(), app(&CausalTerm::one(), &i.t))),
        ("app right identity", |i| (i.t.clone(), app(&i.t, &CausalTerm::one()))),
        ("app right annihilator", |i| (CausalTerm::zero(), app(&i.t, &CausalTerm::zero()))),
        ("app left annihilator", |i| (CausalTerm::zero(), app(&CausalTerm::zero(), &i.t))),
        ("app idempotency", |i| (app(&i.x, &i.x), i.x.clone())),
        ("app left addition distributivity", |i| {
            (app(&i.t, &add(&i.u, &i.w)), add(&app(&i.t, &i.u), &app(&i.t, &i.w)))
        }),
        ("app right addition distributivity", |i| {
            (app(&add(&i.t, &i.u), &i.w), add(&app(&i.t, &i.w), &app(&i.u, &i.w)))
        }),
        ("app chain product distributivity", |i| {
            (app(&app(&i.c, &i.d), &i.e), prod(&app(&i.c, &i.d), &app(&i.d, &i.e)))
        }),
        ("app left product distributivity", |i| {
            (app(&i.c, &prod(&i.d, &i.e)), prod(&app(&i.c, &i.d), &app(&i.c, &i.e)))
        }),
        ("app right product distributivity", |i| {
            (app(&prod(&i.c, &i.d), &i.e), prod(&app(&i.c, &i.e), &app(&i.d, &i.e)))
        }),
        ("pseudo-complement", |i| (prod(&i.t, &neg(&i.t)), CausalTerm::zero())),
        ("triple negation", |i| (neg(&neg(&neg(&i.t))), neg(&i.t))),
        ("De Morgan (sum)", |i| (neg(&add(&i.t, &i.u)), prod(&neg(&i.t), &neg(&i.u)))),
        ("De Morgan (product)", |i| (neg(&prod(&i.t, &i.u)), add(&neg(&i.t), &neg(&i.u)))),
        ("weak excluded middle", |i| (add(&neg(&i.t), &neg(&neg(&i.t))), CausalTerm::one())),
        ("application negation", |i| (neg(&app(&i.t, &i.u)), neg(&prod(&i.t, &i.u)))),
        ("sum associativity", |i| (add(&i.t, &add(&i.u, &i.w)), add(&add(&i.t, &i.u), &i.w))),
        ("product associativity", |i| (prod(&i.t, &prod(&i.u, &i.w)), prod(&prod(&i.t, &i.u), &i.w))),
        ("sum commutativity", |i| (add(&i.t, &i.u), add(&i.u, &i.t))),
        ("product commutativity", |i| (prod(&i.t, &i.u), prod(&i.u, &i.t))),
        ("sum absorption", |i| (add(&i.t, &prod(&i.t, &i.u)), i.t.clone())),
        ("product absorption", |i| (prod(&i.t, &add(&i.t, &i.u)), i.t.clone())),
        ("product over sum distributivity", |i| {
            (prod(&i.t, &add(&i.u, &i.w)), add(&prod(&i.t, &i.u), &prod(&i.t, &i.w)))
        }),
        ("sum over product distributivity", |i| {
            (add(&i.t, &prod(&i.u, &i.w)), prod(&add(&i.t, &i.u), &add(&i.t, &i.w)))
        }),
        ("sum identity", |i| (add(&i.t, &CausalTerm::zero()), i.t.clone())),
        ("product identity", |i| (prod(&i.t, &CausalTerm::one()), i.t.clone())),
        ("sum idempotency", |i| (add(&i.t, &i.t), i.t.clone())),
        ("product idempotency", |i| (prod(&i.t, &i.t), i.t.clone())),
        ("sum annihilator", |i| (add(&CausalTerm::one(), &i.t), CausalTerm::one())),
        ("product annihilator", |i| (prod(&CausalTerm::zero(), &i.t), CausalTerm::zero())),
    ]
}

pub fn both_sides(lhs: &CausalTerm, rhs: &CausalTerm) -> (CausalValue, CausalValue) {
    (normalize(lhs), normalize(rhs))
}
