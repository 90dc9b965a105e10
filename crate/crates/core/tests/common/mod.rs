#![allow(dead_code)]

pub mod schottky;

use rand::Rng;
use sunada_core::words::{CyclicWord, Letter, Word};

/// Random cyclically reduced, primitive word of length `len` over `names`.
pub fn random_cyclic_word<R: Rng>(rng: &mut R, names: &[char], len: usize) -> Word {
    loop {
        let w: Word = (0..len)
            .map(|_| {
                let l = Letter::new(names[rng.gen_range(0..names.len())]);
                if rng.gen_bool(0.5) {
                    l.inverse()
                } else {
                    l
                }
            })
            .collect();
        if w.is_cyclically_reduced() && CyclicWord::new(&w).is_primitive() {
            return w;
        }
    }
}
