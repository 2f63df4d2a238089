//! Prolongable morphisms and their iterative fixed points.
//!
//! When `φ(a0) = a0·x`, the iterates `φ^ℓ(a0) = a0·x·φ(x)·φ²(x)···φ^{ℓ-1}(x)`
//! converge to the fixed point `a0·T` whose tail satisfies `T = x·φ(T)`.
//! [`FixedPointStream`] realizes that identity directly: it emits `a0·x`
//! and then the images of the tail letters, reading the tail it has
//! already produced. Each letter is materialized once.

use crate::error::{Error, Result};
use crate::morphism::{Coding, Morphism};
use crate::word::{Alphabet, Symbol, Word};

/// Letters whose iterated image eventually becomes the empty word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MortalSet(Vec<Symbol>);

impl MortalSet {
    /// Least fixed point of "a is mortal iff every letter of its image is".
    /// Letters outside the domain are never mortal.
    pub fn of(m: &Morphism) -> MortalSet {
        let domain = m.domain();
        let mut mortal = vec![false; domain.len()];
        // each round adds at least one letter or stops
        loop {
            let mut changed = false;
            for (i, (_, image)) in m.images().enumerate() {
                if mortal[i] {
                    continue;
                }
                let dies = image
                    .iter()
                    .all(|s| domain.position(s).is_some_and(|j| mortal[j]));
                if dies {
                    mortal[i] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        MortalSet(
            domain
                .iter()
                .zip(mortal)
                .filter_map(|(s, dead)| dead.then_some(s))
                .collect(),
        )
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.0.contains(&s)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }
}

/// True iff `φ(a0) = a0·x` with some letter of `x` not mortal, which is
/// exactly the condition `φ^ℓ(x) ≠ ε` for every `ℓ`.
pub fn is_prolongable(m: &Morphism, a0: Symbol) -> bool {
    if !m.is_iterable() {
        return false;
    }
    let Some(image) = m.image(a0) else {
        return false;
    };
    if image.first() != Some(a0) || image.len() < 2 {
        return false;
    }
    let mortal = MortalSet::of(m);
    image.letters()[1..].iter().any(|&s| !mortal.contains(s))
}

/// The word `x` with `φ(a0) = a0·x`.
pub fn prolongation_tail(m: &Morphism, a0: Symbol) -> Result<Word> {
    if !is_prolongable(m, a0) {
        return Err(Error::NotProlongable(a0));
    }
    let image = m.image(a0).expect("prolongable letters are in the domain");
    Ok(image.slice(1..image.len()))
}

/// The first `n` letters of the iterative fixed point of `m` from `a0`.
pub fn fixed_point_prefix(m: &Morphism, a0: Symbol, n: usize) -> Result<Word> {
    Ok(FixedPointStream::new(m, a0)?.take(n).collect())
}

/// Lazy cursor over the iterative fixed point of a prolongable morphism.
///
/// Owns the prefix produced so far; distinct cursors over the same
/// morphism are independent.
#[derive(Clone, Debug)]
pub struct FixedPointStream<'a> {
    morphism: &'a Morphism,
    produced: Word,
    // index into `produced` of the next tail letter to expand
    read: usize,
    emitted: usize,
}

impl<'a> FixedPointStream<'a> {
    pub fn new(morphism: &'a Morphism, a0: Symbol) -> Result<FixedPointStream<'a>> {
        if !is_prolongable(morphism, a0) {
            return Err(Error::NotProlongable(a0));
        }
        let produced = morphism.image(a0).expect("checked").clone();
        Ok(FixedPointStream {
            morphism,
            produced,
            read: 1,
            emitted: 0,
        })
    }

    /// Everything generated so far, which may run ahead of what has been
    /// emitted.
    pub fn generated(&self) -> &Word {
        &self.produced
    }

    /// Makes sure at least `n` letters are generated.
    pub fn fill(&mut self, n: usize) {
        while self.produced.len() < n {
            let letter = self.produced[self.read];
            let image = self.morphism.image(letter).expect("iterable morphism");
            self.produced.extend_from(image);
            self.read += 1;
        }
    }
}

impl Iterator for FixedPointStream<'_> {
    type Item = Symbol;

    fn next(&mut self) -> Option<Symbol> {
        self.fill(self.emitted + 1);
        let s = self.produced[self.emitted];
        self.emitted += 1;
        Some(s)
    }
}

/// An infinite sequence named as `coding(fixed point of morphism from start)`.
///
/// When the morphism is k-uniform the presented sequence is k-automatic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphicPresentation {
    morphism: Morphism,
    start: Symbol,
    coding: Coding,
}

impl MorphicPresentation {
    pub fn new(morphism: Morphism, start: Symbol, coding: Coding) -> Result<MorphicPresentation> {
        if !morphism.domain().same_symbols(morphism.codomain()) {
            return Err(Error::DomainMismatch(format!(
                "a presentation needs domain = codomain, got {{{}}} and {{{}}}",
                morphism.domain(),
                morphism.codomain()
            )));
        }
        if !coding.domain().same_symbols(morphism.domain()) {
            return Err(Error::DomainMismatch(format!(
                "coding is defined on {{{}}} but the morphism on {{{}}}",
                coding.domain(),
                morphism.domain()
            )));
        }
        if !is_prolongable(&morphism, start) {
            return Err(Error::NotProlongable(start));
        }
        Ok(MorphicPresentation {
            morphism,
            start,
            coding,
        })
    }

    /// A pure morphic presentation: identity coding.
    pub fn pure(morphism: Morphism, start: Symbol) -> Result<MorphicPresentation> {
        let coding = Coding::identity(morphism.domain());
        MorphicPresentation::new(morphism, start, coding)
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    pub fn start(&self) -> Symbol {
        self.start
    }

    pub fn coding(&self) -> &Coding {
        &self.coding
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        self.coding.codomain()
    }

    /// The underlying fixed point, before the coding.
    pub fn fixed_point(&self) -> FixedPointStream<'_> {
        FixedPointStream::new(&self.morphism, self.start).expect("checked at construction")
    }

    /// The presented sequence, letter by letter.
    pub fn stream(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.fixed_point()
            .map(|s| self.coding.map(s).expect("coding is total"))
    }

    pub fn prefix(&self, n: usize) -> Word {
        self.stream().take(n).collect()
    }
}

/// `coding(fixed_point_prefix(morphism, start, n))`.
pub fn presented_prefix(p: &MorphicPresentation, n: usize) -> Word {
    p.prefix(n)
}
