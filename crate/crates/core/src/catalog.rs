//! The named presentations used as fixtures throughout: Thue–Morse,
//! Fibonacci, the two presentations of the sequence of run lengths of 1s
//! between consecutive 0s in Thue–Morse, and a Thue–Morse presentation
//! padded with a letter that never occurs.

use crate::error::{Error, Result};
use crate::fixedpoint::MorphicPresentation;
use crate::morphism::{Coding, Morphism};
use crate::word::{concat, Symbol, Word};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub presentation: MorphicPresentation,
    pub notes: &'static str,
}

pub const NAMES: [&str; 5] = [
    "thue-morse",
    "fibonacci",
    "z-nonuniform",
    "z-automatic",
    "thue-morse-junk",
];

fn pure(rules: &[(&str, &str)], start: &str) -> MorphicPresentation {
    let m = Morphism::from_rules(rules).expect("catalog rules are well formed");
    MorphicPresentation::pure(m, Symbol::named(start)).expect("catalog entries are prolongable")
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    let (name, presentation, notes) = match name {
        "thue-morse" => (
            "thue-morse",
            pure(&[("0", "01"), ("1", "10")], "0"),
            "Thue-Morse morphism 0 -> 01, 1 -> 10 from 0; 2-uniform",
        ),
        "fibonacci" => (
            "fibonacci",
            pure(&[("a", "ab"), ("b", "a")], "a"),
            "Fibonacci morphism a -> ab, b -> a from a; non-uniform",
        ),
        "z-nonuniform" => (
            "z-nonuniform",
            pure(&[("2", "210"), ("1", "20"), ("0", "1")], "2"),
            "run lengths of 1s between 0s in Thue-Morse, as the fixed point of 2 -> 210, 1 -> 20, 0 -> 1",
        ),
        "z-automatic" => {
            let m = Morphism::from_rules(&[("0", "01"), ("1", "20"), ("2", "23"), ("3", "02")])
                .expect("catalog rules are well formed");
            let coding = Coding::from_pairs(
                m.domain(),
                [("0", "2"), ("1", "1"), ("2", "0"), ("3", "1")]
                    .map(|(a, b)| (Symbol::named(a), Symbol::named(b))),
            )
            .expect("total coding");
            (
                "z-automatic",
                MorphicPresentation::new(m, Symbol::named("0"), coding).expect("prolongable"),
                "the same run-length sequence as the image of the fixed point of 0 -> 01, 1 -> 20, 2 -> 23, 3 -> 02 under 0 -> 2, 1 -> 1, 2 -> 0, 3 -> 1",
            )
        }
        "thue-morse-junk" => (
            "thue-morse-junk",
            pure(&[("0", "01"), ("1", "10"), ("2", "1101")], "0"),
            "0 -> 01, 1 -> 10, 2 -> 1101 from 0: Thue-Morse again, but 2 never occurs",
        ),
        other => return Err(Error::UnknownName(other.to_string())),
    };
    Ok(CatalogEntry {
        name,
        presentation,
        notes,
    })
}

pub fn entries() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| get(n).expect("listed")).collect()
}

/// `[u_0, ..., u_n]` with `u_0 = a`, `u_1 = ab`, `u_{n+2} = u_{n+1} u_n`.
pub fn fibonacci_recurrence_words(n: usize) -> Vec<Word> {
    let mut words = vec![Word::single(Symbol::named("a"))];
    if n >= 1 {
        words.push(Word::new(vec![Symbol::named("a"), Symbol::named("b")]));
    }
    while words.len() <= n {
        let k = words.len();
        words.push(concat(&words[k - 1], &words[k - 2]));
    }
    words
}
