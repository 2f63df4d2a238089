//! Morphisms of free monoids, stored as their image tables.
//!
//! A morphism is determined by the image of each letter; applying it to a
//! word concatenates the images of the word's letters in order.

use std::fmt;

use crate::error::{Error, Result};
use crate::fixedpoint;
use crate::word::{Alphabet, Symbol, Word};

/// A total map from the letters of `domain` to words over `codomain`.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    domain: Alphabet,
    codomain: Alphabet,
    // indexed by domain position
    images: Vec<Word>,
}

impl Morphism {
    /// Builds a morphism from one `(letter, image)` pair per domain letter.
    pub fn new(
        domain: Alphabet,
        codomain: Alphabet,
        images: impl IntoIterator<Item = (Symbol, Word)>,
    ) -> Result<Morphism> {
        let mut table: Vec<Option<Word>> = vec![None; domain.len()];
        for (letter, image) in images {
            let slot = domain.position(letter).ok_or(Error::AlienSymbol(letter))?;
            if let Some(bad) = image.iter().find(|s| !codomain.contains(*s)) {
                return Err(Error::AlienSymbol(bad));
            }
            if table[slot].replace(image).is_some() {
                return Err(Error::DuplicateImage(letter));
            }
        }
        let images = table
            .into_iter()
            .zip(domain.iter())
            .map(|(image, letter)| image.ok_or(Error::MissingImage(letter)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            domain,
            codomain,
            images,
        })
    }

    /// A morphism from an alphabet to itself.
    pub fn endomorphism(
        alphabet: Alphabet,
        images: impl IntoIterator<Item = (Symbol, Word)>,
    ) -> Result<Morphism> {
        Morphism::new(alphabet.clone(), alphabet, images)
    }

    /// Endomorphism from single-character rules, e.g.
    /// `Morphism::from_rules(&[("0", "01"), ("1", "10")])`.
    /// The alphabet is the left-hand sides in the order given.
    pub fn from_rules(rules: &[(&str, &str)]) -> Result<Morphism> {
        let alphabet = Alphabet::from_names(rules.iter().map(|(lhs, _)| *lhs))?;
        let images = rules
            .iter()
            .map(|(lhs, rhs)| Ok((Symbol::new(lhs)?, Word::from_compact(rhs)?)))
            .collect::<Result<Vec<_>>>()?;
        Morphism::endomorphism(alphabet, images)
    }

    pub fn identity(alphabet: &Alphabet) -> Morphism {
        Morphism {
            domain: alphabet.clone(),
            codomain: alphabet.clone(),
            images: alphabet.iter().map(Word::single).collect(),
        }
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn codomain(&self) -> &Alphabet {
        &self.codomain
    }

    pub fn image(&self, letter: Symbol) -> Option<&Word> {
        self.domain.position(letter).map(|i| &self.images[i])
    }

    /// `(letter, image)` pairs in domain order.
    pub fn images(&self) -> impl Iterator<Item = (Symbol, &Word)> + '_ {
        self.domain.iter().zip(self.images.iter())
    }

    /// True when the codomain is contained in the domain, so the morphism
    /// can be iterated.
    pub fn is_iterable(&self) -> bool {
        self.codomain.is_subset_of(&self.domain)
    }

    /// The concatenation of the images of the letters of `w`.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Word::empty();
        self.apply_into(w.letters(), &mut out)?;
        Ok(out)
    }

    pub(crate) fn apply_into(&self, letters: &[Symbol], out: &mut Word) -> Result<()> {
        for &s in letters {
            let image = self.image(s).ok_or(Error::AlienSymbol(s))?;
            out.extend_from(image);
        }
        Ok(())
    }

    /// `m` composed with itself `exponent` times; `power(0)` is the identity
    /// on the domain.
    pub fn power(&self, exponent: u32) -> Result<Morphism> {
        self.require_iterable()?;
        let mut result = Morphism::identity(&self.domain);
        for _ in 0..exponent {
            result = compose(self, &result)?;
        }
        Ok(result)
    }

    /// `Some(k)` when every image has the same length `k ≥ 1`.
    pub fn uniform_arity(&self) -> Option<usize> {
        let k = self.images.first()?.len();
        (k >= 1 && self.images.iter().all(|w| w.len() == k)).then_some(k)
    }

    pub fn incidence_matrix(&self) -> Result<IncidenceMatrix> {
        self.require_iterable()?;
        let n = self.domain.len();
        let mut entries = vec![vec![0u64; n]; n];
        for (col, image) in self.images.iter().enumerate() {
            for s in image {
                let row = self.domain.position(s).expect("codomain within domain");
                entries[row][col] += 1;
            }
        }
        Ok(IncidenceMatrix {
            symbols: self.domain.clone(),
            entries,
        })
    }

    /// The letters occurring in the iterative fixed point from `start`:
    /// the least set containing `start` and closed under taking letters of
    /// images. Returned in domain order.
    pub fn occurring_letters(&self, start: Symbol) -> Result<Alphabet> {
        if !fixedpoint::is_prolongable(self, start) {
            return Err(Error::NotProlongable(start));
        }
        Ok(self.reachable_letters([start]))
    }

    /// Closure of `seeds` under `a ↦ letters(image(a))`, in domain order.
    /// Seeds outside the domain are ignored.
    pub fn reachable_letters(&self, seeds: impl IntoIterator<Item = Symbol>) -> Alphabet {
        let mut seen = vec![false; self.domain.len()];
        let mut stack: Vec<usize> = seeds
            .into_iter()
            .filter_map(|s| self.domain.position(s))
            .collect();
        while let Some(i) = stack.pop() {
            if std::mem::replace(&mut seen[i], true) {
                continue;
            }
            stack.extend(
                self.images[i]
                    .iter()
                    .filter_map(|s| self.domain.position(s))
                    .filter(|&j| !seen[j]),
            );
        }
        let letters = self
            .domain
            .iter()
            .zip(seen)
            .filter_map(|(s, keep)| keep.then_some(s));
        // non-empty whenever a seed was in the domain
        Alphabet::new(letters).unwrap_or_else(|_| self.domain.clone())
    }

    /// The same morphism on a sub-alphabet closed under images.
    pub fn restrict(&self, alphabet: &Alphabet) -> Result<Morphism> {
        if !alphabet.is_subset_of(&self.domain) {
            return Err(Error::DomainMismatch(format!(
                "{{{alphabet}}} is not contained in the domain {{{}}}",
                self.domain
            )));
        }
        let images = alphabet
            .iter()
            .map(|s| (s, self.image(s).expect("subset").clone()))
            .collect::<Vec<_>>();
        Morphism::endomorphism(alphabet.clone(), images)
    }

    /// Replaces the image of one domain letter.
    pub fn with_image(&self, letter: Symbol, image: Word) -> Result<Morphism> {
        let slot = self
            .domain
            .position(letter)
            .ok_or(Error::AlienSymbol(letter))?;
        if let Some(bad) = image.iter().find(|s| !self.codomain.contains(*s)) {
            return Err(Error::AlienSymbol(bad));
        }
        let mut images = self.images.clone();
        images[slot] = image;
        Ok(Morphism {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            images,
        })
    }

    fn require_iterable(&self) -> Result<()> {
        if self.is_iterable() {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!(
                "codomain {{{}}} is not contained in domain {{{}}}",
                self.codomain, self.domain
            )))
        }
    }
}

/// `outer ∘ inner`: the morphism sending `a` to `outer(inner(a))`.
pub fn compose(outer: &Morphism, inner: &Morphism) -> Result<Morphism> {
    if !inner.codomain.is_subset_of(&outer.domain) {
        return Err(Error::DomainMismatch(format!(
            "inner codomain {{{}}} is not contained in outer domain {{{}}}",
            inner.codomain, outer.domain
        )));
    }
    let images = inner
        .images
        .iter()
        .map(|w| outer.apply(w))
        .collect::<Result<Vec<_>>>()?;
    Ok(Morphism {
        domain: inner.domain.clone(),
        codomain: outer.codomain.clone(),
        images,
    })
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (s, w) in self.images() {
            map.entry(&s, w);
        }
        map.finish()
    }
}

/// A 1-uniform morphism: every letter is sent to a single letter.
///
/// The codomain of a coding is always the set of letters it actually
/// produces, listed in order of first appearance along the domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coding(Morphism);

impl Coding {
    pub fn new(morphism: Morphism) -> Result<Coding> {
        if let Some((letter, _)) = morphism.images().find(|(_, w)| w.len() != 1) {
            return Err(Error::NotCoding(letter));
        }
        let pairs = morphism
            .images()
            .map(|(s, w)| (s, w[0]))
            .collect::<Vec<_>>();
        Coding::from_pairs(morphism.domain(), pairs)
    }

    /// One `(letter, target)` pair for each letter of `domain`.
    pub fn from_pairs(
        domain: &Alphabet,
        pairs: impl IntoIterator<Item = (Symbol, Symbol)>,
    ) -> Result<Coding> {
        let pairs: Vec<_> = pairs.into_iter().collect();
        let mut targets: Vec<Option<Symbol>> = vec![None; domain.len()];
        for &(letter, target) in &pairs {
            let slot = domain.position(letter).ok_or(Error::AlienSymbol(letter))?;
            if targets[slot].replace(target).is_some() {
                return Err(Error::DuplicateImage(letter));
            }
        }
        let mut produced: Vec<Symbol> = Vec::new();
        for (letter, target) in domain.iter().zip(&targets) {
            let target = target.ok_or(Error::MissingImage(letter))?;
            if !produced.contains(&target) {
                produced.push(target);
            }
        }
        let codomain = Alphabet::new(produced)?;
        Ok(Coding(Morphism::new(
            domain.clone(),
            codomain,
            pairs.into_iter().map(|(s, t)| (s, Word::single(t))),
        )?))
    }

    pub fn identity(alphabet: &Alphabet) -> Coding {
        Coding(Morphism::identity(alphabet))
    }

    pub fn domain(&self) -> &Alphabet {
        self.0.domain()
    }

    pub fn codomain(&self) -> &Alphabet {
        self.0.codomain()
    }

    pub fn map(&self, letter: Symbol) -> Option<Symbol> {
        self.0.image(letter).map(|w| w[0])
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        w.iter()
            .map(|s| self.map(s).ok_or(Error::AlienSymbol(s)))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.images().all(|(s, w)| w[0] == s)
    }

    pub fn as_morphism(&self) -> &Morphism {
        &self.0
    }

    /// `outer ∘ inner`, again a coding.
    pub fn compose(outer: &Coding, inner: &Coding) -> Result<Coding> {
        Coding::new(compose(&outer.0, &inner.0)?)
    }

    /// The coding restricted to a sub-alphabet of its domain.
    pub fn restrict(&self, alphabet: &Alphabet) -> Result<Coding> {
        let pairs = alphabet
            .iter()
            .map(|s| self.map(s).map(|t| (s, t)).ok_or(Error::AlienSymbol(s)))
            .collect::<Result<Vec<_>>>()?;
        Coding::from_pairs(alphabet, pairs)
    }
}

/// Square matrix whose entry `(a, b)` counts the occurrences of `a` in the
/// image of `b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IncidenceMatrix {
    symbols: Alphabet,
    entries: Vec<Vec<u64>>,
}

impl IncidenceMatrix {
    pub fn symbols(&self) -> &Alphabet {
        &self.symbols
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, row: Symbol, col: Symbol) -> Option<u64> {
        let (r, c) = (self.symbols.position(row)?, self.symbols.position(col)?);
        Some(self.entries[r][c])
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn column_sum(&self, col: Symbol) -> Option<u64> {
        let c = self.symbols.position(col)?;
        Some(self.entries.iter().map(|row| row[c]).sum())
    }

    /// Matrix product; fails on overflow.
    pub fn mul(&self, other: &IncidenceMatrix) -> Result<IncidenceMatrix> {
        self.product(other, |acc, x, y| {
            x.checked_mul(y)
                .and_then(|p| acc.checked_add(p))
                .ok_or(Error::Overflow)
        })
    }

    /// Matrix product with saturating arithmetic. Entries that would
    /// overflow stick at `u64::MAX`, which preserves every comparison
    /// against a small threshold.
    pub fn saturating_mul(&self, other: &IncidenceMatrix) -> IncidenceMatrix {
        self.product(other, |acc, x, y| {
            Ok(acc.saturating_add(x.saturating_mul(y)))
        })
        .expect("saturating arithmetic cannot fail")
    }

    /// `self^exponent`, with the identity for exponent 0; fails on overflow.
    pub fn pow(&self, exponent: u32) -> Result<IncidenceMatrix> {
        let n = self.dimension();
        let mut result = IncidenceMatrix {
            symbols: self.symbols.clone(),
            entries: (0..n)
                .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
                .collect(),
        };
        for _ in 0..exponent {
            result = result.mul(self)?;
        }
        Ok(result)
    }

    fn product(
        &self,
        other: &IncidenceMatrix,
        step: impl Fn(u64, u64, u64) -> Result<u64>,
    ) -> Result<IncidenceMatrix> {
        assert_eq!(
            self.symbols, other.symbols,
            "incompatible incidence matrices"
        );
        let n = self.dimension();
        let mut entries = vec![vec![0u64; n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = 0u64;
                for k in 0..n {
                    acc = step(acc, self.entries[i][k], other.entries[k][j])?;
                }
                *cell = acc;
            }
        }
        Ok(IncidenceMatrix {
            symbols: self.symbols.clone(),
            entries,
        })
    }
}
