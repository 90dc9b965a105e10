//! Conjugacy in one-relator surface groups by Dehn's algorithm.
//!
//! The symmetrized relator set of `[a,b][c,d]` satisfies C'(1/7), so a
//! cyclically reduced word representing a nontrivial class that admits no
//! more-than-half replacement is "Dehn-reduced", and two Dehn-reduced
//! conjugates are related by half-relator swaps. We therefore compare the
//! closures of both words under exact-half swaps.

use std::collections::BTreeSet;

use crate::words::{canonical_rotation, CyclicWord, Letter, Word};

#[derive(Clone, Debug)]
pub struct SurfaceGroup {
    relator: Word,
    pieces: Vec<Vec<Letter>>,
}

impl SurfaceGroup {
    pub fn new(relator: &Word) -> Self {
        let r = relator.cyclic_reduce();
        let mut set = BTreeSet::new();
        for base in [r.clone(), r.inverse()] {
            for k in 0..base.len().max(1) {
                set.insert(base.rotate(k).into_letters());
            }
        }
        Self { relator: r, pieces: set.into_iter().collect() }
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    fn rel_len(&self) -> usize {
        self.relator.len()
    }

    /// Repeatedly replaces a cyclic subword that is more than half of a
    /// relator rotation by the inverse of the remainder.
    pub fn dehn_reduce(&self, w: &Word) -> Word {
        let mut w = w.cyclic_reduce();
        let n = self.rel_len();
        'outer: loop {
            let len = w.len();
            for i in 0..len {
                let rw = w.rotate(i);
                let letters = rw.letters();
                for k in (n / 2 + 1..=n.min(len)).rev() {
                    for r in &self.pieces {
                        if r[..k] == letters[..k] {
                            let complement = Word::new(r[k..].to_vec()).inverse();
                            w = complement.concat(&Word::new(letters[k..].to_vec())).cyclic_reduce();
                            continue 'outer;
                        }
                    }
                }
            }
            return w;
        }
    }

    /// Canonical rotations reachable from `w` by half-relator swaps, each
    /// followed by Dehn reduction.
    fn half_swap_closure(&self, w: &Word) -> BTreeSet<Word> {
        let n = self.rel_len();
        let half = n / 2;
        let start = self.dehn_reduce(w);
        let mut seen: BTreeSet<Word> = [canonical_rotation(&start)].into_iter().collect();
        let mut todo = vec![start];
        while let Some(w) = todo.pop() {
            if w.len() < half || n % 2 == 1 {
                continue;
            }
            for i in 0..w.len() {
                let rw = w.rotate(i);
                let letters = rw.letters();
                for r in &self.pieces {
                    if r[..half] == letters[..half] {
                        let complement = Word::new(r[half..].to_vec()).inverse();
                        let next = self.dehn_reduce(&complement.concat(&Word::new(letters[half..].to_vec())));
                        if seen.insert(canonical_rotation(&next)) {
                            todo.push(next);
                        }
                    }
                }
            }
        }
        seen
    }

    pub fn conjugate(&self, u: &Word, v: &Word) -> bool {
        let cu = self.half_swap_closure(u);
        let cv = self.half_swap_closure(v);
        !cu.is_disjoint(&cv)
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        self.dehn_reduce(w).is_empty()
    }

    pub fn normal_form(&self, w: &Word) -> CyclicWord {
        let closure = self.half_swap_closure(w);
        CyclicWord::new(closure.iter().next().expect("closure contains the start word"))
    }
}

pub fn surface_conjugate(w1: &Word, w2: &Word, relator: &Word) -> bool {
    SurfaceGroup::new(relator).conjugate(w1, w2)
}
