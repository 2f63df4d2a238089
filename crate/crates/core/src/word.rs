//! Symbols, alphabets and finite words.
//!
//! A [`Symbol`] is an interned name token. Interning makes symbols `Copy`
//! and makes equality a single integer comparison, while still allowing
//! arbitrary multi-character names such as `b'` or `alpha2`.

use std::collections::HashMap;
use std::fmt;
use std::ops::Index;
use std::sync::{OnceLock, RwLock};

use crate::error::WordError;

#[derive(Default)]
struct Interner {
    names: Vec<&'static str>,
    ids: HashMap<&'static str, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

/// A letter of some alphabet, identified by its name.
///
/// Two symbols are equal exactly when their names are equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symbol(u32);

impl Symbol {
    /// Interns `name`, rejecting empty names, names containing whitespace,
    /// and names containing the reserved tokens `->` or `#`.
    pub fn new(name: &str) -> Result<Symbol, WordError> {
        if name.is_empty()
            || name.chars().any(char::is_whitespace)
            || name.contains("->")
            || name.contains('#')
        {
            return Err(WordError::InvalidSymbolName(name.to_string()));
        }
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return Ok(Symbol(id));
        }
        let mut table = interner().write().unwrap();
        if let Some(&id) = table.ids.get(name) {
            return Ok(Symbol(id));
        }
        let id = u32::try_from(table.names.len()).expect("symbol table overflow");
        let leaked: &'static str = Box::leak(name.to_string().into_boxed_str());
        table.names.push(leaked);
        table.ids.insert(leaked, id);
        Ok(Symbol(id))
    }

    /// Like [`Symbol::new`], for names known to be valid.
    ///
    /// Panics on an invalid name.
    pub fn named(name: &str) -> Symbol {
        Symbol::new(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn name(self) -> &'static str {
        interner().read().unwrap().names[self.0 as usize]
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.name().cmp(other.name())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An ordered finite set of distinct symbols.
///
/// The order is the canonical iteration order used everywhere a choice
/// among letters has to be made deterministically.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    positions: HashMap<Symbol, usize>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> Result<Alphabet, WordError> {
        let mut alphabet = Alphabet {
            symbols: Vec::new(),
            positions: HashMap::new(),
        };
        for s in symbols {
            if alphabet
                .positions
                .insert(s, alphabet.symbols.len())
                .is_some()
            {
                return Err(WordError::DuplicateSymbol(s));
            }
            alphabet.symbols.push(s);
        }
        if alphabet.symbols.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        Ok(alphabet)
    }

    /// Builds an alphabet of the given names, in order.
    pub fn from_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Result<Alphabet, WordError> {
        let symbols = names
            .into_iter()
            .map(Symbol::new)
            .collect::<Result<Vec<_>, _>>()?;
        Alphabet::new(symbols)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Always false; alphabets have at least one symbol.
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.positions.contains_key(&s)
    }

    pub fn position(&self, s: Symbol) -> Option<usize> {
        self.positions.get(&s).copied()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn iter(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols.iter().copied()
    }

    /// True when every symbol of `self` belongs to `other`.
    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    /// Same symbols, regardless of order.
    pub fn same_symbols(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.is_subset_of(other)
    }

    /// A name derived from `base` that is not used by this alphabet:
    /// `base` itself if free, otherwise `base` followed by 2, 3, ...
    pub fn fresh_symbol(&self, base: &str) -> Symbol {
        let plain = Symbol::named(base);
        if !self.contains(plain) {
            return plain;
        }
        (2u64..)
            .map(|n| Symbol::named(&format!("{base}{n}")))
            .find(|s| !self.contains(*s))
            .expect("unbounded search")
    }

    /// Appends `s` at the end.
    pub fn with(&self, s: Symbol) -> Result<Alphabet, WordError> {
        Alphabet::new(self.iter().chain(std::iter::once(s)))
    }

    /// Prepends `s` at the front.
    pub fn with_first(&self, s: Symbol) -> Result<Alphabet, WordError> {
        Alphabet::new(std::iter::once(s).chain(self.iter()))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.symbols.iter()).finish()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.symbols)
    }
}

/// A finite, possibly empty, sequence of symbols.
///
/// Displayed as the symbol names joined by single spaces.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Symbol>) -> Word {
        Word(letters)
    }

    pub fn single(s: Symbol) -> Word {
        Word(vec![s])
    }

    /// One symbol per character: `Word::from_compact("0110")`.
    pub fn from_compact(text: &str) -> Result<Word, WordError> {
        text.chars()
            .map(|c| Symbol::new(c.encode_utf8(&mut [0; 4])))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    /// Whitespace-separated symbol names: `Word::from_names("b' c' 0")`.
    pub fn from_names(text: &str) -> Result<Word, WordError> {
        text.split_whitespace()
            .map(Symbol::new)
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Symbol> {
        self.0
    }

    pub fn first(&self) -> Option<Symbol> {
        self.0.first().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.0.iter().copied()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    /// The factor `self[range]` as a new word.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    /// The first `n` letters (or the whole word if shorter).
    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.len())].to_vec())
    }

    /// `self` repeated `times` times.
    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    /// Concatenates names without separators. Only meaningful when every
    /// name is a single character; returns `None` otherwise.
    pub fn to_compact(&self) -> Option<String> {
        self.iter()
            .map(|s| {
                let name = s.name();
                (name.chars().count() == 1).then_some(name)
            })
            .collect()
    }
}

/// The word `a` followed by the word `b`.
pub fn concat(a: &Word, b: &Word) -> Word {
    let mut letters = Vec::with_capacity(a.len() + b.len());
    letters.extend_from_slice(a.letters());
    letters.extend_from_slice(b.letters());
    Word(letters)
}

/// True iff `w = p · y` for some word `y`.
pub fn is_prefix(p: &Word, w: &Word) -> bool {
    w.letters().starts_with(p.letters())
}

/// Ascending indices `i` with `w[i] == target`.
pub fn occurrences(w: &Word, target: Symbol) -> Vec<usize> {
    w.iter()
        .enumerate()
        .filter_map(|(i, s)| (s == target).then_some(i))
        .collect()
}

/// For each pair of consecutive `zero` letters, the number of `one`
/// letters strictly between them.
///
/// Letters before the first zero and after the last zero are not counted.
pub fn runs_between_zeros(w: &Word, zero: Symbol, one: Symbol) -> Result<Vec<usize>, WordError> {
    let mut runs = Vec::new();
    let mut current: Option<usize> = None;
    for s in w.iter() {
        if s == zero {
            if let Some(count) = current {
                runs.push(count);
            }
            current = Some(0);
        } else if s == one {
            if let Some(count) = current.as_mut() {
                *count += 1;
            }
        } else {
            return Err(WordError::AlienSymbol(s));
        }
    }
    Ok(runs)
}

impl Index<usize> for Word {
    type Output = Symbol;

    fn index(&self, i: usize) -> &Symbol {
        &self.0[i]
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(letters: Vec<Symbol>) -> Word {
        Word(letters)
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = Symbol;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Symbol>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, symbols: &[Symbol]) -> fmt::Result {
    for (i, s) in symbols.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        f.write_str(s.name())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(text: &str) -> Word {
        Word::from_compact(text).unwrap()
    }

    fn sym(name: &str) -> Symbol {
        Symbol::named(name)
    }

    #[test]
    fn symbol_names() {
        assert_eq!(sym("b'"), Symbol::new("b'").unwrap());
        assert_ne!(sym("b"), sym("b'"));
        assert_eq!(sym("alpha").name(), "alpha");
        for bad in ["", "a b", "x->y", "->", "#", "a#", "\t"] {
            assert!(Symbol::new(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn alphabet_invariants() {
        assert!(matches!(
            Alphabet::from_names(["0", "1", "0"]),
            Err(WordError::DuplicateSymbol(_))
        ));
        assert!(matches!(
            Alphabet::new(std::iter::empty()),
            Err(WordError::EmptyAlphabet)
        ));
        let a = Alphabet::from_names(["1", "0"]).unwrap();
        assert_eq!(a.symbols(), &[sym("1"), sym("0")]);
        assert_eq!(a.position(sym("0")), Some(1));
        assert!(a.same_symbols(&Alphabet::from_names(["0", "1"]).unwrap()));
    }

    #[test]
    fn fresh_symbols_avoid_collisions() {
        let a = Alphabet::from_names(["alpha", "alpha2", "0"]).unwrap();
        assert_eq!(a.fresh_symbol("alpha"), sym("alpha3"));
        assert_eq!(a.fresh_symbol("0'"), sym("0'"));
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat(&w("01"), &w("10")), w("0110"));
        assert_eq!(concat(&Word::empty(), &w("abc")), w("abc"));
        let glued = concat(
            &Word::from_names("a1 a2").unwrap(),
            &Word::from_names("b1 b2 b3").unwrap(),
        );
        assert_eq!(glued, Word::from_names("a1 a2 b1 b2 b3").unwrap());
        assert_eq!(glued.len(), 5);
    }

    #[test]
    fn prefix_examples() {
        assert!(is_prefix(&w("ab"), &w("abaab")));
        assert!(is_prefix(&Word::empty(), &w("abaab")));
        assert!(is_prefix(&Word::empty(), &Word::empty()));
        assert!(!is_prefix(&w("ba"), &w("abaab")));
        assert!(!is_prefix(&w("abaabb"), &w("abaab")));
    }

    #[test]
    fn occurrence_examples() {
        // μ²(0) and μ⁴(0), written out by applying 0→01, 1→10 by hand.
        assert_eq!(occurrences(&w("0110"), sym("0")), vec![0, 3]);
        assert_eq!(occurrences(&w("aaa"), sym("b")), Vec::<usize>::new());
        assert_eq!(
            occurrences(&w("0110100110010110"), sym("0")),
            vec![0, 3, 5, 6, 9, 10, 12, 15]
        );
    }

    #[test]
    fn run_examples() {
        let (zero, one) = (sym("0"), sym("1"));
        assert_eq!(
            runs_between_zeros(&w("0110100110010110"), zero, one).unwrap(),
            vec![2, 1, 0, 2, 0, 1, 2]
        );
        assert_eq!(
            runs_between_zeros(&w("000"), zero, one).unwrap(),
            vec![0, 0]
        );
        assert!(runs_between_zeros(&w("0"), zero, one).unwrap().is_empty());
        assert!(runs_between_zeros(&Word::empty(), zero, one)
            .unwrap()
            .is_empty());
        assert_eq!(
            runs_between_zeros(&w("0120"), zero, one),
            Err(WordError::AlienSymbol(sym("2")))
        );
    }

    #[test]
    fn display_and_compact() {
        let word = Word::from_names("0 b' 1").unwrap();
        assert_eq!(word.to_string(), "0 b' 1");
        assert_eq!(word.to_compact(), None);
        assert_eq!(w("0110").to_compact().as_deref(), Some("0110"));
        assert_eq!(Word::empty().to_string(), "");
    }

    fn arb_word(letters: &'static str) -> impl Strategy<Value = Word> {
        proptest::collection::vec(
            proptest::sample::select(letters.chars().collect::<Vec<_>>()),
            0..24,
        )
        .prop_map(|cs| {
            cs.into_iter()
                .map(|c| Symbol::named(&c.to_string()))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn concat_is_associative(a in arb_word("abc"), b in arb_word("abc"), c in arb_word("abc")) {
            prop_assert_eq!(concat(&concat(&a, &b), &c), concat(&a, &concat(&b, &c)));
            prop_assert_eq!(concat(&a, &b).len(), a.len() + b.len());
            prop_assert_eq!(concat(&Word::empty(), &a), a.clone());
            prop_assert_eq!(concat(&a, &Word::empty()), a);
        }

        #[test]
        fn prefix_round_trips(w in arb_word("ab"), cut in 0usize..30) {
            let cut = cut.min(w.len());
            let p = w.prefix(cut);
            prop_assert!(is_prefix(&p, &w));
            prop_assert_eq!(concat(&p, &w.slice(cut..w.len())), w.clone());
            // any word that is a prefix is reconstructed by its own suffix
            let other = Word::from_compact("ab").unwrap();
            if is_prefix(&other, &w) {
                prop_assert_eq!(concat(&other, &w.slice(other.len()..w.len())), w);
            }
        }

        #[test]
        fn runs_conserve_letters(w in arb_word("01")) {
            let (zero, one) = (sym("0"), sym("1"));
            let runs = runs_between_zeros(&w, zero, one).unwrap();
            let zeros = occurrences(&w, zero);
            let outside = match (zeros.first(), zeros.last()) {
                (Some(&first), Some(&last)) => first + (w.len() - 1 - last),
                _ => w.len(),
            };
            prop_assert_eq!(runs.len(), zeros.len().saturating_sub(1));
            prop_assert_eq!(runs.iter().sum::<usize>() + zeros.len() + outside, w.len());
        }
    }
}
