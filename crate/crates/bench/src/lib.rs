//! Inputs shared by the benchmarks.

use morphic::{Alphabet, MorphicPresentation, Morphism, Symbol, Word};

/// A k-uniform morphism on `size` letters named 0, 1, ..., where letter
/// `i` maps to `i, i+1, ..., i+k-1` (mod `size`). Prolongable from 0.
pub fn shift_morphism(size: usize, k: usize) -> MorphicPresentation {
    let names: Vec<String> = (0..size).map(|i| i.to_string()).collect();
    let alphabet = Alphabet::from_names(names.iter().map(String::as_str)).unwrap();
    let images = (0..size).map(|i| {
        let image: Word = (0..k)
            .map(|j| Symbol::named(&((i + j) % size).to_string()))
            .collect();
        (Symbol::named(&names[i]), image)
    });
    let m = Morphism::endomorphism(alphabet, images.collect::<Vec<_>>()).unwrap();
    MorphicPresentation::pure(m, Symbol::named("0")).unwrap()
}
