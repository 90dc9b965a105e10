use proptest::prelude::*;
use sunada_core::dehn::{surface_conjugate, SurfaceGroup};
use sunada_core::words::{parse_word, Alphabet, Letter, Word};

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..4usize, any::<bool>()), 1..max).prop_map(|v| {
        v.into_iter()
            .map(|(k, inv)| {
                let l = Letter::new(['a', 'b', 'c', 'd'][k]);
                if inv {
                    l.inverse()
                } else {
                    l
                }
            })
            .collect()
    })
}

fn relator() -> Word {
    parse_word("[a,b][c,d]", &Alphabet::surface()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugates_are_recognised(w in word(10), u in word(5), k in 0..10usize, at in 0..10usize) {
        let g = SurfaceGroup::new(&relator());
        let w = w.cyclic_reduce();
        prop_assume!(!w.is_empty());
        let conj = u.concat(&w).concat(&u.inverse());
        prop_assert!(g.conjugate(&w, &conj));
        prop_assert!(g.conjugate(&w, &w.rotate(k % w.len())));
        // inserting a relator anywhere leaves the class unchanged
        let cut = at % (w.len() + 1);
        let (l, r) = w.letters().split_at(cut);
        let with_r = Word::new(l.to_vec()).concat(&relator()).concat(&Word::new(r.to_vec()));
        prop_assert!(g.conjugate(&w, &with_r));
        prop_assert!(surface_conjugate(&conj, &with_r, &relator()));
    }

    #[test]
    fn conjugacy_is_symmetric(u in word(8), v in word(8)) {
        prop_assert_eq!(surface_conjugate(&u, &v, &relator()), surface_conjugate(&v, &u, &relator()));
    }

    #[test]
    fn homology_separates(u in word(8), v in word(8)) {
        let abcd = Alphabet::surface();
        let hu = sunada_core::words::abelianize(&u, &abcd);
        let hv = sunada_core::words::abelianize(&v, &abcd);
        if surface_conjugate(&u, &v, &relator()) {
            prop_assert!(hu.same_as(&hv));
        }
    }
}

#[test]
fn trivial_words() {
    let g = SurfaceGroup::new(&relator());
    let abcd = Alphabet::surface();
    let r = relator();
    let w = parse_word("a c^-1 d", &abcd).unwrap();
    let lr = w.concat(&r).concat(&w.inverse()).concat(&r.inverse());
    assert!(g.is_trivial(&lr));
    assert!(!g.is_trivial(&w));
}
