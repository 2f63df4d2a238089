//! Turning a uniform morphic presentation into a non-uniform one.
//!
//! Given a k-uniform morphism `γ` (k ≥ 2) with iterative fixed point from
//! `a0` and a coding, the pipeline in [`nonuniformize`]:
//!
//! 1. trims `γ` to the letters occurring in its fixed point;
//! 2. if `a0` recurs later in the fixed point, adds a fresh start letter
//!    `α` with `α → α·x` (where `γ(a0) = a0·x`) and a coding `α ↦ a0`;
//! 3. finds an expanding letter `b` (some `γ^e(b)` contains `b` twice) and
//!    replaces `γ` by `γ^e`;
//! 4. squares until `γ(b) = w1·b·c·w2` with `w1`, `w2` non-empty;
//! 5. adds two letters `b'`, `c'` with `γ'(b) = w1·b'·c'·w2` and
//!    `γ'(b')·γ'(c') = γ(b·c)` cut into pieces of unequal length.
//!
//! The coding `D` sending `b' ↦ b`, `c' ↦ c` (and fixing the rest) maps the
//! fixed point of `γ'` onto the fixed point of `γ`, and `γ'` is not uniform.
//! At most three letters are added.

use crate::error::{Error, Result};
use crate::fixedpoint::{is_prolongable, prolongation_tail, MorphicPresentation};
use crate::morphism::{compose, Coding, Morphism};
use crate::verify::bounded_period_check;
use crate::word::{occurrences, Alphabet, Symbol, Word};

/// The ultimately periodic sequence `u v v v ···`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicForm {
    pub preperiod: Word,
    pub period: Word,
}

impl PeriodicForm {
    pub fn new(preperiod: Word, period: Word) -> Result<PeriodicForm> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(PeriodicForm { preperiod, period })
    }

    /// The first `n` letters of `u v v v ···`.
    pub fn prefix(&self, n: usize) -> Word {
        self.preperiod
            .letters()
            .iter()
            .chain(self.period.letters().iter().cycle())
            .take(n)
            .copied()
            .collect()
    }
}

/// Limits for the aperiodicity guard: a prefix of `prefix_len` letters is
/// scanned for a preperiod/period pair within the given bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeriodGuard {
    pub prefix_len: usize,
    pub max_preperiod: usize,
    pub max_period: usize,
}

impl Default for PeriodGuard {
    fn default() -> Self {
        PeriodGuard {
            prefix_len: 4096,
            max_preperiod: 64,
            max_period: 64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Largest exponent tried when looking for an expanding letter.
    pub expand_bound: usize,
    /// Largest number of squarings tried to get an interior occurrence.
    pub interior_bound: usize,
    /// `None` means the caller asserts the sequence is not ultimately
    /// periodic and the guard is skipped.
    pub guard: Option<PeriodGuard>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            expand_bound: 64,
            interior_bound: 8,
            guard: Some(PeriodGuard::default()),
        }
    }
}

/// What the construction chose along the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    /// The fresh start letter, if the original start letter recurred.
    pub fresh_start: Option<Symbol>,
    /// Exponent `e` making `b` expanding.
    pub expanding_exponent: u32,
    /// Number of squarings after raising to the power `e`.
    pub squarings: u32,
    /// Total exponent of the uniform morphism that was modified:
    /// `e · 2^squarings`.
    pub power_applied: u32,
    pub b: Symbol,
    pub c: Symbol,
    pub b_prime: Symbol,
    pub c_prime: Symbol,
    /// Position of the chosen `b` inside `γ(b)`, i.e. `|w1|`.
    pub interior_index: usize,
    pub w1: Word,
    pub w2: Word,
    pub z: Word,
    pub t: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonUniformizationResult {
    /// The non-uniform morphism `γ'`.
    pub gamma_prime: Morphism,
    /// The uniform morphism `γ` that `γ'` was built from.
    pub gamma: Morphism,
    /// `D`: fixes the letters of `γ`, sends `b' ↦ b` and `c' ↦ c`.
    pub erasure: Coding,
    /// The original coding composed with the start-letter coding and `D`.
    pub coding: Coding,
    pub start: Symbol,
    pub trace: Trace,
}

impl NonUniformizationResult {
    pub fn presentation(&self) -> Result<MorphicPresentation> {
        MorphicPresentation::new(self.gamma_prime.clone(), self.start, self.coding.clone())
    }
}

fn uniform_at_least_two(m: &Morphism) -> Result<usize> {
    match m.uniform_arity() {
        None => Err(Error::NotUniform),
        Some(1) => Err(Error::ArityOne),
        Some(k) => Ok(k),
    }
}

/// Makes the start letter occur only at index 0 of the fixed point.
///
/// Returns the input unchanged (with an identity coding) when `a0` never
/// recurs. Otherwise adds a fresh letter `α` with `α → α·x`, where
/// `m(a0) = a0·x`, and returns the extended morphism, the coding `α ↦ a0`,
/// and `α`.
pub fn uniquify_first_letter(m: &Morphism, a0: Symbol) -> Result<(Morphism, Coding, Symbol)> {
    if m.uniform_arity().is_none() {
        return Err(Error::NotUniform);
    }
    let tail = prolongation_tail(m, a0)?;
    // the letters after index 0 are exactly those reachable from the tail
    if !m.reachable_letters(tail.iter()).contains(a0) {
        return Ok((m.clone(), Coding::identity(m.domain()), a0));
    }
    let alpha = m.domain().fresh_symbol("alpha");
    let alphabet = m.domain().with_first(alpha)?;
    let mut alpha_image = Word::single(alpha);
    alpha_image.extend_from(&tail);
    let images = std::iter::once((alpha, alpha_image))
        .chain(m.images().map(|(s, w)| (s, w.clone())))
        .collect::<Vec<_>>();
    let extended = Morphism::endomorphism(alphabet.clone(), images)?;
    let coding = Coding::from_pairs(
        &alphabet,
        alphabet
            .iter()
            .map(|s| (s, if s == alpha { a0 } else { s })),
    )?;
    Ok((extended, coding, alpha))
}

/// Least `e ≤ bound` (then first letter in domain order) such that some
/// letter `b` occurring in the fixed point from `a0` has at least two
/// occurrences in `m^e(b)`.
pub fn find_expanding_letter(m: &Morphism, a0: Symbol, bound: usize) -> Result<(Symbol, u32)> {
    let candidates = m.occurring_letters(a0)?;
    let base = m.incidence_matrix()?;
    let mut current = base.clone();
    for exponent in 1..=bound {
        for b in candidates.iter() {
            if current.entry(b, b).is_some_and(|count| count >= 2) {
                return Ok((b, exponent as u32));
            }
        }
        current = current.saturating_mul(&base);
    }
    Err(Error::NotFound {
        what: "expanding letter",
        bound,
    })
}

/// A power of the input in which `b` occurs strictly inside its own image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorOccurrence {
    /// `m^(2^squarings)`.
    pub morphism: Morphism,
    /// Least `i` with `1 ≤ i ≤ L − 3` and `image(b)[i] = b`, `L = |image(b)|`.
    pub index: usize,
    pub squarings: u32,
}

/// Squares `m` until the image of `b` has an occurrence of `b` at an index
/// `i` with `1 ≤ i ≤ L − 3`, so that both the part before `b` and the part
/// after the following letter are non-empty.
pub fn ensure_interior_occurrence(
    m: &Morphism,
    b: Symbol,
    bound: usize,
) -> Result<InteriorOccurrence> {
    let image = m.image(b).ok_or(Error::AlienSymbol(b))?;
    if occurrences(image, b).len() < 2 {
        return Err(Error::Precondition(format!(
            "the image of {b} must contain {b} at least twice"
        )));
    }
    let mut current = m.clone();
    for squarings in 0..=bound {
        let image = current.image(b).expect("domain unchanged by squaring");
        let last = image.len().saturating_sub(3);
        if let Some(index) = (1..=last).find(|&i| image[i] == b) {
            return Ok(InteriorOccurrence {
                morphism: current,
                index,
                squarings: squarings as u32,
            });
        }
        if squarings < bound {
            current = compose(&current, &current)?;
        }
    }
    Err(Error::NotFound {
        what: "interior occurrence",
        bound,
    })
}

/// Splits `m(b) = w1 · b · c · w2` around the occurrence of `b` at `i`.
pub fn locate_bc(m: &Morphism, b: Symbol, i: usize) -> Result<(Word, Symbol, Word)> {
    let image = m.image(b).ok_or(Error::AlienSymbol(b))?;
    if i == 0 {
        return Err(Error::IndexOutOfRange {
            index: i,
            reason: "w1 would be empty",
        });
    }
    if i + 3 > image.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            reason: "w2 would be empty",
        });
    }
    if image[i] != b {
        return Err(Error::Precondition(format!(
            "letter {i} of the image of {b} is {}, not {b}",
            image[i]
        )));
    }
    Ok((
        image.slice(0..i),
        image[i + 1],
        image.slice(i + 2..image.len()),
    ))
}

/// Cuts `w` into its first letter and the rest.
pub fn split_unequal(w: &Word) -> Result<(Word, Word)> {
    if w.len() <= 2 {
        return Err(Error::TooShort(w.len()));
    }
    Ok((w.slice(0..1), w.slice(1..w.len())))
}

/// Builds `γ'` and `D` from `γ(b) = w1 · b · c · w2`.
pub fn build_nonuniform(
    m: &Morphism,
    b: Symbol,
    w1: &Word,
    c: Symbol,
    w2: &Word,
) -> Result<(Morphism, Coding)> {
    let image = m.image(b).ok_or(Error::AlienSymbol(b))?;
    let mut expected = w1.clone();
    expected.push(b);
    expected.push(c);
    expected.extend_from(w2);
    if *image != expected || w1.is_empty() || w2.is_empty() {
        return Err(Error::Precondition(format!(
            "the image of {b} is not w1 {b} {c} w2 with non-empty w1, w2"
        )));
    }
    let (z, t) = split_unequal(&m.apply(&Word::new(vec![b, c]))?)?;

    let b_prime = m.domain().fresh_symbol(&format!("{}'", b.name()));
    let with_b = m.domain().with(b_prime)?;
    let c_base = if c == b {
        format!("{}''", c.name())
    } else {
        format!("{}'", c.name())
    };
    let c_prime = with_b.fresh_symbol(&c_base);
    let alphabet = with_b.with(c_prime)?;

    let mut new_b = w1.clone();
    new_b.push(b_prime);
    new_b.push(c_prime);
    new_b.extend_from(w2);
    let images = m
        .images()
        .map(|(s, w)| (s, if s == b { new_b.clone() } else { w.clone() }))
        .chain([(b_prime, z), (c_prime, t)])
        .collect::<Vec<_>>();
    let gamma_prime = Morphism::endomorphism(alphabet.clone(), images)?;
    let erasure = Coding::from_pairs(
        &alphabet,
        alphabet.iter().map(|s| match s {
            s if s == b_prime => (s, b),
            s if s == c_prime => (s, c),
            s => (s, s),
        }),
    )?;
    Ok((gamma_prime, erasure))
}

/// Presents the same sequence as `p` through a non-uniform morphism.
///
/// Refuses inputs that look ultimately periodic unless the guard is
/// disabled in `options`; see [`periodic_fixed_point`] for those.
pub fn nonuniformize(
    p: &MorphicPresentation,
    options: &Options,
) -> Result<NonUniformizationResult> {
    uniform_at_least_two(p.morphism())?;
    if let Some(guard) = options.guard {
        let prefix = p.prefix(guard.prefix_len);
        if let Some(form) = bounded_period_check(&prefix, guard.max_preperiod, guard.max_period) {
            return Err(Error::LikelyPeriodic(form));
        }
    }

    let occurring = p.morphism().occurring_letters(p.start())?;
    let trimmed = p.morphism().restrict(&occurring)?;
    let base_coding = p.coding().restrict(&occurring)?;

    let (extended, start_coding, start) = uniquify_first_letter(&trimmed, p.start())?;
    let (b, exponent) = find_expanding_letter(&extended, start, options.expand_bound)?;
    let raised = extended.power(exponent)?;
    let interior = ensure_interior_occurrence(&raised, b, options.interior_bound)?;
    let gamma = interior.morphism;
    let (w1, c, w2) = locate_bc(&gamma, b, interior.index)?;
    let (gamma_prime, erasure) = build_nonuniform(&gamma, b, &w1, c, &w2)?;
    let coding = Coding::compose(&Coding::compose(&base_coding, &start_coding)?, &erasure)?;

    let added = gamma_prime.domain().len() - trimmed.domain().len();
    let b_prime = gamma_prime.domain().symbols()[gamma_prime.domain().len() - 2];
    let c_prime = gamma_prime.domain().symbols()[gamma_prime.domain().len() - 1];
    debug_assert!(added == 2 || added == 3);
    debug_assert!(is_prolongable(&gamma_prime, start));

    let trace = Trace {
        fresh_start: (start != p.start()).then_some(start),
        expanding_exponent: exponent,
        squarings: interior.squarings,
        power_applied: exponent << interior.squarings,
        b,
        c,
        b_prime,
        c_prime,
        interior_index: interior.index,
        z: gamma_prime.image(b_prime).expect("added").clone(),
        t: gamma_prime.image(c_prime).expect("added").clone(),
        w1,
        w2,
    };
    Ok(NonUniformizationResult {
        gamma_prime,
        gamma,
        erasure,
        coding,
        start,
        trace,
    })
}

/// An iterative fixed point of a non-uniform morphism equal to `u v v v ···`.
///
/// The first letter of `u` must not occur anywhere else in `u` or in `v`.
/// The morphism sends that letter to `u` and every other letter to `v^j`,
/// with `j` the least positive integer such that `j·|v| ≠ |u|`. When
/// `|u| = 1`, one copy of `v` is absorbed into `u` first.
pub fn periodic_fixed_point(pf: &PeriodicForm, ambient: &Alphabet) -> Result<MorphicPresentation> {
    if pf.period.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    let first = pf
        .preperiod
        .first()
        .ok_or_else(|| Error::BadPreperiod("the preperiod must be non-empty".into()))?;
    if pf
        .preperiod
        .iter()
        .skip(1)
        .chain(pf.period.iter())
        .any(|s| s == first)
    {
        return Err(Error::BadPreperiod(format!(
            "the first letter {first} occurs again in u v"
        )));
    }
    let mut u = pf.preperiod.clone();
    if u.len() == 1 {
        u.extend_from(&pf.period);
    }
    let j = if pf.period.len() == u.len() { 2 } else { 1 };
    let repeated = pf.period.repeat(j);

    let mut letters: Vec<Symbol> = ambient.iter().collect();
    for s in u.iter().chain(pf.period.iter()) {
        if !letters.contains(&s) {
            letters.push(s);
        }
    }
    let alphabet = Alphabet::new(letters)?;
    let images = alphabet
        .iter()
        .map(|s| {
            (
                s,
                if s == first {
                    u.clone()
                } else {
                    repeated.clone()
                },
            )
        })
        .collect::<Vec<_>>();
    MorphicPresentation::pure(Morphism::endomorphism(alphabet, images)?, first)
}
