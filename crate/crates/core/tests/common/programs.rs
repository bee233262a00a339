//! Seeded random labelled programs.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use ecj::program::{parse_program, LabelledProgram};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ATOMS: [&str; 5] = ["a", "b", "c", "d", "e"];
pub const MAX_RULES: usize = 8;
pub const MAX_BODY: usize = 2;

/// Program text with up to five atoms, eight rules and two body literals
/// per rule. Rule labels are unique; some facts are written unlabelled.
pub fn random_text(rng: &mut ChaCha8Rng) -> String {
    let n_atoms = rng.gen_range(1..=ATOMS.len());
    let atoms = &ATOMS[..n_atoms];
    let n_rules = rng.gen_range(1..=MAX_RULES);
    let mut bare_facts = BTreeSet::new();
    let mut text = String::new();
    for k in 1..=n_rules {
        let head = *atoms.choose(rng).unwrap();
        let body_len = rng.gen_range(0..=MAX_BODY);
        if body_len == 0 && rng.gen_bool(0.5) && bare_facts.insert(head) {
            let _ = writeln!(text, "{head}.");
            continue;
        }
        let body: Vec<String> = (0..body_len)
            .map(|_| {
                let a = *atoms.choose(rng).unwrap();
                if rng.gen_bool(0.5) {
                    format!("not {a}")
                } else {
                    a.to_string()
                }
            })
            .collect();
        if body.is_empty() {
            let _ = writeln!(text, "r{k}: {head}.");
        } else {
            let _ = writeln!(text, "r{k}: {head} :- {}.", body.join(", "));
        }
    }
    text
}

pub fn random_program(rng: &mut ChaCha8Rng) -> LabelledProgram {
    let text = random_text(rng);
    parse_program(&text).unwrap_or_else(|e| panic!("generated program does not parse: {e}\n{text}"))
}

/// `count` programs from a fixed seed, paired with their text.
pub fn suite(seed: u64, count: usize) -> Vec<(String, LabelledProgram)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let text = random_text(&mut rng);
            let p = parse_program(&text).unwrap();
            (text, p)
        })
        .collect()
}
