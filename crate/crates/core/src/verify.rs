//! Executable checks for the claims a non-uniform presentation makes.
//!
//! Every check produces a [`VerificationReport`]: plain data that callers
//! render or assert on. Failing checks carry a finite witness.

use std::fmt;

use crate::error::{Error, Result};
use crate::fixedpoint::{is_prolongable, FixedPointStream, MorphicPresentation};
use crate::morphism::{Coding, Morphism};
use crate::nonuniformize::{NonUniformizationResult, PeriodicForm};
use crate::word::{Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// First index at which something went wrong.
    Index(usize),
    /// Two words that should have been equal, with the step that produced them.
    WordPair {
        step: usize,
        left: Word,
        right: Word,
    },
    /// Offending letters.
    Letters(Vec<Symbol>),
    Note(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Index(i) => write!(f, "index {i}"),
            Witness::WordPair { step, left, right } => {
                write!(f, "step {step}: [{left}] vs [{right}]")
            }
            Witness::Letters(letters) => {
                let names: Vec<_> = letters.iter().map(|s| s.name()).collect();
                write!(f, "letters {{{}}}", names.join(", "))
            }
            Witness::Note(text) => f.write_str(text),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Present exactly when the check failed.
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass(name: &'static str) -> Check {
        Check {
            name,
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: &'static str, witness: Witness) -> Check {
        Check {
            name,
            passed: false,
            witness: Some(witness),
        }
    }

    fn from_outcome(name: &'static str, outcome: Option<Witness>) -> Check {
        match outcome {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(checks: Vec<Check>) -> VerificationReport {
        VerificationReport { checks }
    }

    /// Conjunction of all checks.
    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "PASS {}", c.name)?,
                Some(w) => writeln!(f, "FAIL {}: {w}", c.name)?,
            }
        }
        write!(
            f,
            "{}",
            if self.overall() {
                "overall: PASS"
            } else {
                "overall: FAIL"
            }
        )
    }
}

fn first_difference(
    a: impl Iterator<Item = Symbol>,
    b: impl Iterator<Item = Symbol>,
) -> Option<usize> {
    a.zip(b).position(|(x, y)| x != y)
}

/// Passes iff the two presentations agree on their first `n` letters.
pub fn verify_prefix_equal(
    p1: &MorphicPresentation,
    p2: &MorphicPresentation,
    n: usize,
) -> VerificationReport {
    let at = first_difference(p1.stream().take(n), p2.stream().take(n));
    VerificationReport::new(vec![Check::from_outcome(
        "prefix_equal",
        at.map(Witness::Index),
    )])
}

/// Checks `D(γ'(P_k)) = γ(D(P_k))` for `k = 1..=kmax`, where `P_k` is the
/// shortest prefix of the fixed point of `γ'` from `start` that ends with
/// `marker` and contains it exactly `k` times. Also checks
/// `D(γ'(x)) = γ(x)` for every letter `x` shared by both domains.
///
/// At most `budget` letters of the fixed point are generated.
pub fn verify_commutation(
    gamma: &Morphism,
    gamma_prime: &Morphism,
    erasure: &Coding,
    start: Symbol,
    marker: Symbol,
    kmax: usize,
    budget: usize,
) -> Result<VerificationReport> {
    let mut stream = FixedPointStream::new(gamma_prime, start)?;

    let mut letter_failure = None;
    for (x, image) in gamma_prime.images() {
        let Some(expected) = gamma.image(x) else {
            continue;
        };
        if erasure.map(x) != Some(x) {
            continue;
        }
        let lhs = erasure.apply(image)?;
        if lhs != *expected {
            letter_failure = Some(Witness::WordPair {
                step: 0,
                left: lhs,
                right: expected.clone(),
            });
            break;
        }
    }

    let mut found = 0;
    let mut block = Word::empty();
    let (mut left, mut right) = (Word::empty(), Word::empty());
    let mut prefix_failure = None;
    for letter in stream.by_ref().take(budget) {
        block.push(letter);
        if letter != marker {
            continue;
        }
        found += 1;
        // P_k = P_{k-1} · block; both sides are morphisms, so extend them
        left.extend_from(&erasure.apply(&gamma_prime.apply(&block)?)?);
        right.extend_from(&gamma.apply(&erasure.apply(&block)?)?);
        block = Word::empty();
        if left != right {
            prefix_failure = Some(Witness::WordPair {
                step: found,
                left: left.clone(),
                right: right.clone(),
            });
            break;
        }
        if found == kmax {
            break;
        }
    }
    if prefix_failure.is_none() && found < kmax {
        return Err(Error::InsufficientOccurrences {
            marker,
            found,
            wanted: kmax,
            budget,
        });
    }

    Ok(VerificationReport::new(vec![
        Check::from_outcome("letter_identity", letter_failure),
        Check::from_outcome("prefix_commutation", prefix_failure),
    ]))
}

/// Passes iff every letter of the domain occurs in the fixed point from
/// `start`; the witness lists the letters that never occur.
pub fn verify_minimal_alphabet(m: &Morphism, start: Symbol) -> Result<VerificationReport> {
    let occurring = m.occurring_letters(start)?;
    let missing: Vec<Symbol> = m
        .domain()
        .iter()
        .filter(|s| !occurring.contains(*s))
        .collect();
    let witness = (!missing.is_empty()).then_some(Witness::Letters(missing));
    Ok(VerificationReport::new(vec![Check::from_outcome(
        "minimal_alphabet",
        witness,
    )]))
}

/// First index at which the pairing property breaks: every `b'` is
/// immediately followed by `c'`, and every `c'` immediately preceded by
/// `b'`. The final letter is not judged if it is a trailing `b'`.
fn pairing_violation(word: &Word, b_prime: Symbol, c_prime: Symbol) -> Option<usize> {
    let letters = word.letters();
    letters.iter().enumerate().find_map(|(i, &s)| {
        let bad_b = s == b_prime && letters.get(i + 1).is_some_and(|&n| n != c_prime);
        let bad_c = s == c_prime && (i == 0 || letters[i - 1] != b_prime);
        (bad_b || bad_c).then_some(i)
    })
}

/// The six properties a non-uniform presentation of `original` must have:
/// non-uniformity, prolongability, minimal alphabet, agreement with
/// `original` on `n` letters, `b'`/`c'` pairing, and at most three added
/// letters.
pub fn verify_nonuniform_presentation(
    r: &NonUniformizationResult,
    original: &MorphicPresentation,
    n: usize,
) -> VerificationReport {
    let gp = &r.gamma_prime;
    let mut checks = Vec::new();

    checks.push(match gp.uniform_arity() {
        None => Check::pass("non_uniform"),
        Some(k) => Check::fail(
            "non_uniform",
            Witness::Note(format!("every image has length {k}")),
        ),
    });

    let presentation = r.presentation();
    checks.push(match &presentation {
        Ok(_) => Check::pass("prolongable"),
        Err(e) => Check::fail("prolongable", Witness::Note(e.to_string())),
    });

    checks.push(match verify_minimal_alphabet(gp, r.start) {
        Ok(report) => report.checks.into_iter().next().expect("one check"),
        Err(e) => Check::fail("minimal_alphabet", Witness::Note(e.to_string())),
    });

    checks.push(match &presentation {
        Ok(p) => {
            let at = first_difference(p.stream().take(n), original.stream().take(n));
            Check::from_outcome("prefix_equal", at.map(Witness::Index))
        }
        Err(_) => Check::fail(
            "prefix_equal",
            Witness::Note("no valid presentation".into()),
        ),
    });

    checks.push(if is_prolongable(gp, r.start) {
        let word: Word = FixedPointStream::new(gp, r.start)
            .expect("prolongable")
            .take(n)
            .collect();
        let at = pairing_violation(&word, r.trace.b_prime, r.trace.c_prime);
        Check::from_outcome("pairing", at.map(Witness::Index))
    } else {
        Check::fail("pairing", Witness::Note("no fixed point".into()))
    });

    checks.push(
        match original.morphism().occurring_letters(original.start()) {
            Ok(occurring) => {
                let added = gp.domain().len() as i64 - occurring.len() as i64;
                let expected = if r.trace.fresh_start.is_some() { 3 } else { 2 };
                if added == expected {
                    Check::pass("cardinality")
                } else {
                    Check::fail(
                        "cardinality",
                        Witness::Note(format!(
                        "{} letters against {} occurring in the input; expected {expected} more",
                        gp.domain().len(),
                        occurring.len()
                    )),
                    )
                }
            }
            Err(e) => Check::fail("cardinality", Witness::Note(e.to_string())),
        },
    );

    VerificationReport::new(checks)
}

/// The lexicographically least `(|u|, |v|)` with `|u| ≤ max_preperiod` and
/// `1 ≤ |v| ≤ max_period` such that `w = u · v^m · (prefix of v)`, where
/// `u·v` must fit inside `w`.
///
/// A returned form only says the prefix is consistent with `u v v v ···`.
pub fn bounded_period_check(
    w: &Word,
    max_preperiod: usize,
    max_period: usize,
) -> Option<PeriodicForm> {
    let letters = w.letters();
    for pre in 0..=max_preperiod.min(letters.len()) {
        for period in 1..=max_period {
            if pre + period > letters.len() {
                break;
            }
            let periodic = (pre..letters.len() - period).all(|i| letters[i] == letters[i + period]);
            if periodic {
                return Some(PeriodicForm {
                    preperiod: w.slice(0..pre),
                    period: w.slice(pre..pre + period),
                });
            }
        }
    }
    None
}
