//! Finite covers given by a homomorphism from a surface group onto the
//! affine group, and the preimages of closed curves in them.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteAffineGroup, GroupElement, Side, Subgroup};
use crate::words::{Alphabet, Endomorphism, Letter, Word};

/// Order in which letter images are multiplied. Shared with the matrix
/// evaluation so that both representations agree on every word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvaluationOrder {
    #[default]
    LeftToRight,
    RightToLeft,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homomorphism {
    modulus: u32,
    images: BTreeMap<char, GroupElement>,
    #[serde(default)]
    order: EvaluationOrder,
}

impl Homomorphism {
    pub fn new(modulus: u32, images: BTreeMap<char, GroupElement>) -> Result<Self> {
        if let Some(g) = images.values().find(|g| g.modulus() != modulus) {
            return Err(Error::ModulusMismatch { left: modulus, right: g.modulus() });
        }
        Ok(Self { modulus, images, order: EvaluationOrder::LeftToRight })
    }

    pub fn with_order(mut self, order: EvaluationOrder) -> Self {
        self.order = order;
        self
    }

    /// a ↦ (3,0), b ↦ (5,0), c ↦ (1,0), d ↦ (1,1) in (Z/8)^x ⋉ Z/8.
    pub fn standard() -> Self {
        let e = |u, v| GroupElement::new(8, u, v).expect("valid element");
        let images = [('a', e(3, 0)), ('b', e(5, 0)), ('c', e(1, 0)), ('d', e(1, 1))].into_iter().collect();
        Self { modulus: 8, images, order: EvaluationOrder::LeftToRight }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> EvaluationOrder {
        self.order
    }

    pub fn images(&self) -> &BTreeMap<char, GroupElement> {
        &self.images
    }

    pub fn image(&self, l: Letter) -> Result<GroupElement> {
        let g = self.images.get(&l.name).ok_or(Error::Unassigned(l.name))?;
        Ok(if l.inverse { g.inverse() } else { *g })
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.images.keys().copied()).expect("image keys are distinct")
    }

    pub fn evaluate(&self, w: &Word) -> Result<GroupElement> {
        let mut acc = GroupElement::identity(self.modulus);
        for l in w.letters() {
            let g = self.image(*l)?;
            acc = match self.order {
                EvaluationOrder::LeftToRight => acc.mul_unchecked(&g),
                EvaluationOrder::RightToLeft => g.mul_unchecked(&acc),
            };
        }
        Ok(acc)
    }

    /// `self ∘ phi`, as a homomorphism on `alphabet`.
    pub fn precompose(&self, phi: &Endomorphism, alphabet: &Alphabet) -> Result<Homomorphism> {
        let images = alphabet
            .names()
            .iter()
            .map(|&g| Ok((g, self.evaluate(&phi.image(g))?)))
            .collect::<Result<_>>()?;
        Ok(Homomorphism { modulus: self.modulus, images, order: self.order })
    }
}

pub fn evaluate(rho: &Homomorphism, w: &Word) -> Result<GroupElement> {
    rho.evaluate(w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurjectivityReport {
    pub surjective: bool,
    pub generated_order: usize,
    pub group_order: usize,
}

pub fn check_surjective(rho: &Homomorphism, group: &FiniteAffineGroup) -> Result<SurjectivityReport> {
    let span = group.subgroup_generated(rho.images.values())?;
    Ok(SurjectivityReport {
        surjective: span.order() == group.order(),
        generated_order: span.order(),
        group_order: group.order(),
    })
}

/// One connected component of the preimage of a closed curve in the cover
/// for `S`: an orbit of `⟨ρ(w)⟩` on the right cosets `S\G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftComponent {
    pub degree: usize,
    /// Indices into the right coset space `S\G`.
    pub cosets: Vec<usize>,
    pub coset_representatives: Vec<GroupElement>,
    /// The double coset `S x ⟨ρ(w)⟩` swept out by the orbit.
    pub double_coset: BTreeSet<GroupElement>,
}

/// Components ordered by degree, then by least coset index.
pub fn preimage_components(
    rho: &Homomorphism,
    group: &FiniteAffineGroup,
    s: &Subgroup,
    w: &Word,
) -> Result<Vec<LiftComponent>> {
    let g = rho.evaluate(w)?;
    let cs = group.coset_space(s, Side::Right)?;
    let cyclic = group.subgroup_generated([g].iter())?;
    let mut comps: Vec<LiftComponent> = cs
        .cyclic_orbits(group, &g)?
        .into_iter()
        .map(|orbit| {
            let reps: Vec<GroupElement> = orbit.iter().map(|&c| cs.representatives()[c]).collect();
            let mut double_coset = BTreeSet::new();
            for x in &reps {
                for h in s.members() {
                    for k in cyclic.members() {
                        double_coset.insert(h.mul_unchecked(x).mul_unchecked(k));
                    }
                }
            }
            LiftComponent { degree: orbit.len(), cosets: orbit, coset_representatives: reps, double_coset }
        })
        .collect();
    comps.sort_by(|a, b| (a.degree, a.cosets[0]).cmp(&(b.degree, b.cosets[0])));
    Ok(comps)
}

pub fn degree_multiset(components: &[LiftComponent]) -> Vec<usize> {
    let mut d: Vec<usize> = components.iter().map(|c| c.degree).collect();
    d.sort_unstable();
    d
}

/// Coset representatives of `G/L` in the published labelling γ1..γ16, for
/// `L = {(1,0),(7,0)}` in the modulus-8 group.
pub fn gamma_table() -> Vec<GroupElement> {
    let reps: [(i64, i64); 16] = [
        (1, 0),
        (1, 1),
        (1, 2),
        (1, 3),
        (1, 4),
        (1, 5),
        (1, 6),
        (1, 7),
        (3, 0),
        (3, 3),
        (3, 6),
        (3, 1),
        (3, 4),
        (3, 7),
        (3, 2),
        (3, 5),
    ];
    reps.iter().map(|&(u, v)| GroupElement::new(8, u, v).expect("valid")).collect()
}

/// Orbits of `S` on the left cosets `G/L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftPartition {
    /// Orbits as sets of coset indices of `G/L`, ordered by size then least
    /// label.
    pub orbits: Vec<Vec<usize>>,
    /// Same orbits in γ labels (1-based) when the labelling applies.
    pub labels: Option<Vec<Vec<usize>>>,
    pub coset_representatives: Vec<GroupElement>,
}

impl LiftPartition {
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.orbits.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    pub fn is_partition_of(&self, n: usize) -> bool {
        let all: BTreeSet<usize> = self.orbits.iter().flatten().copied().collect();
        let total: usize = self.orbits.iter().map(Vec::len).sum();
        total == n && all.len() == n && all.iter().all(|&i| i < n)
    }

    pub fn has_labelled_orbit(&self, labels: &[usize]) -> bool {
        let want: BTreeSet<usize> = labels.iter().copied().collect();
        self.labels
            .as_ref()
            .is_some_and(|ls| ls.iter().any(|o| o.iter().copied().collect::<BTreeSet<_>>() == want))
    }
}

/// For each coset index of `G/L`, its γ label, if `L` and the group match
/// the published table.
pub fn gamma_labels(group: &FiniteAffineGroup, l: &Subgroup) -> Result<Option<Vec<usize>>> {
    if group.modulus() != 8 || l.order() != 2 {
        return Ok(None);
    }
    let cs = group.coset_space(l, Side::Left)?;
    let mut labels = vec![0; cs.len()];
    for (i, rep) in gamma_table().iter().enumerate() {
        let c = cs.coset_of(group, rep)?;
        if labels[c] != 0 {
            return Ok(None);
        }
        labels[c] = i + 1;
    }
    Ok(Some(labels))
}

pub fn lift_orbit_partition(group: &FiniteAffineGroup, s: &Subgroup, l: &Subgroup) -> Result<LiftPartition> {
    let cs = group.coset_space(l, Side::Left)?;
    let labels = gamma_labels(group, l)?;
    let mut seen = vec![false; cs.len()];
    let mut orbits = Vec::new();
    for start in 0..cs.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for h in s.members() {
            orbit.insert(cs.permutation(group, h)?[start]);
        }
        for &c in &orbit {
            seen[c] = true;
        }
        orbits.push(orbit.into_iter().collect::<Vec<_>>());
    }
    let key = |o: &Vec<usize>| -> (usize, usize) {
        let least = match &labels {
            Some(ls) => o.iter().map(|&c| ls[c]).min().unwrap_or(0),
            None => o[0],
        };
        (o.len(), least)
    };
    orbits.sort_by_key(key);
    let labelled = labels.as_ref().map(|ls| {
        orbits
            .iter()
            .map(|o| {
                let mut v: Vec<usize> = o.iter().map(|&c| ls[c]).collect();
                v.sort_unstable();
                v
            })
            .collect()
    });
    Ok(LiftPartition { orbits, labels: labelled, coset_representatives: cs.representatives().to_vec() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AutomorphismKind {
    Identity,
    /// `(u,v) ↦ (u,-v)`
    NegateTranslation,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipCheck {
    pub subgroup: String,
    pub exhaustive_words: usize,
    pub random_words: usize,
    pub holds: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionReport {
    pub automorphism_found: bool,
    /// `(x, φ(x))` on the images of the generators.
    pub generator_action: Vec<(GroupElement, GroupElement)>,
    pub kind: Option<AutomorphismKind>,
    pub preserves_h: bool,
    pub preserves_k: bool,
    pub membership: Vec<MembershipCheck>,
    pub compatible: bool,
}

/// Settings for the word-membership part of the involution check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipSampling {
    pub exhaustive_max_len: usize,
    pub random_words: usize,
    pub random_min_len: usize,
    pub random_max_len: usize,
    pub seed: u64,
}

impl Default for MembershipSampling {
    fn default() -> Self {
        Self { exhaustive_max_len: 4, random_words: 10_000, random_min_len: 5, random_max_len: 24, seed: 0x5eed }
    }
}

/// All words (reduced or not) of length at most `max_len`, in shortlex order.
pub fn all_words(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let letters = alphabet.letters();
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for l in &letters {
                let mut v = w.letters().to_vec();
                v.push(*l);
                next.push(Word::new(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn random_words(alphabet: &Alphabet, count: usize, min_len: usize, max_len: usize, seed: u64) -> Vec<Word> {
    let letters = alphabet.letters();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(min_len..=max_len.max(min_len));
            (0..n).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
        })
        .collect()
}

pub fn verify_involution_compat(
    rho: &Homomorphism,
    tau: &Endomorphism,
    group: &FiniteAffineGroup,
    h: &Subgroup,
    k: &Subgroup,
    sampling: &MembershipSampling,
) -> Result<InvolutionReport> {
    let alphabet = rho.alphabet();
    let mut pairs = Vec::new();
    for &g in alphabet.names() {
        let src = rho.evaluate(&Word::new(vec![Letter::new(g)]))?;
        let dst = rho.evaluate(&tau.apply(&Word::new(vec![Letter::new(g)])))?;
        pairs.push((src, dst));
    }
    let map = group.extend_to_endomorphism(&pairs);
    let bijective = map
        .as_ref()
        .is_some_and(|m| m.values().collect::<BTreeSet<_>>().len() == group.order());
    let map = map.filter(|_| bijective);

    let (kind, preserves_h, preserves_k) = match &map {
        Some(m) => {
            let kind = if m.iter().all(|(a, b)| a == b) {
                AutomorphismKind::Identity
            } else if m.iter().all(|(a, b)| {
                b.unit() == a.unit() && (b.translation() + a.translation()) % group.modulus() == 0
            }) {
                AutomorphismKind::NegateTranslation
            } else {
                AutomorphismKind::Other
            };
            let image = |s: &Subgroup| -> BTreeSet<GroupElement> { s.members().iter().map(|x| m[x]).collect() };
            (Some(kind), image(h) == *h.members(), image(k) == *k.members())
        }
        None => (None, false, false),
    };

    let mut words = all_words(&alphabet, sampling.exhaustive_max_len);
    let exhaustive = words.len();
    words.extend(random_words(
        &alphabet,
        sampling.random_words,
        sampling.random_min_len,
        sampling.random_max_len,
        sampling.seed,
    ));
    let mut membership = Vec::new();
    for (name, s) in [("H", h), ("K", k)] {
        let mut counterexample = None;
        for w in &words {
            let lhs = s.contains(&rho.evaluate(w)?);
            let rhs = s.contains(&rho.evaluate(&tau.apply(w))?);
            if lhs != rhs {
                counterexample = Some(w.to_string());
                break;
            }
        }
        membership.push(MembershipCheck {
            subgroup: name.to_string(),
            exhaustive_words: exhaustive,
            random_words: sampling.random_words,
            holds: counterexample.is_none(),
            counterexample,
        });
    }
    let compatible = map.is_some() && preserves_h && preserves_k && membership.iter().all(|m| m.holds);
    Ok(InvolutionReport {
        automorphism_found: map.is_some(),
        generator_action: pairs,
        kind,
        preserves_h,
        preserves_k,
        membership,
        compatible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn el(u: i64, v: i64) -> GroupElement {
        GroupElement::new(8, u, v).unwrap()
    }

    fn setup() -> (FiniteAffineGroup, Subgroup, Subgroup, Subgroup) {
        let g = FiniteAffineGroup::new(8).unwrap();
        let h = g.subgroup([el(1, 0), el(3, 0), el(5, 0), el(7, 0)]).unwrap();
        let k = g.subgroup([el(1, 0), el(3, 4), el(5, 4), el(7, 0)]).unwrap();
        let l = g.subgroup([el(1, 0), el(7, 0)]).unwrap();
        (g, h, k, l)
    }

    fn w(s: &str) -> Word {
        parse_word(s, &Alphabet::surface()).unwrap()
    }

    fn tau() -> Endomorphism {
        Endomorphism::parse(
            [
                ('a', "a^-1"),
                ('b', "b^-1"),
                ('c', "a c^-1 d c^-1 d^-1 c a^-1"),
                ('d', "b^-1 a d^-1 b a^-1"),
            ],
            &Alphabet::surface(),
        )
        .unwrap()
    }

    #[test]
    fn evaluation() {
        let rho = Homomorphism::standard();
        assert_eq!(rho.evaluate(&w("a b d [d,c^-1] d^-1")).unwrap(), el(7, 0));
        assert_eq!(rho.evaluate(&Word::empty()).unwrap(), el(1, 0));
        assert_eq!(rho.evaluate(&w("c")).unwrap(), el(1, 0));
        let u = w("a d^-1 b");
        let v = w("d d c a");
        assert_eq!(
            rho.evaluate(&u.concat(&v)).unwrap(),
            rho.evaluate(&u).unwrap().multiply(&rho.evaluate(&v).unwrap()).unwrap()
        );
    }

    #[test]
    fn unassigned_generator() {
        let rho = Homomorphism::standard();
        let x = Word::new(vec![Letter::new('x')]);
        assert_eq!(rho.evaluate(&x), Err(Error::Unassigned('x')));
    }

    #[test]
    fn surjectivity() {
        let (g, ..) = setup();
        let r = check_surjective(&Homomorphism::standard(), &g).unwrap();
        assert!(r.surjective);
        assert_eq!(r.generated_order, 32);
        let trivial = Homomorphism::new(8, [('a', el(1, 0)), ('b', el(1, 0))].into_iter().collect()).unwrap();
        assert_eq!(check_surjective(&trivial, &g).unwrap().generated_order, 1);
        let two = Homomorphism::new(8, [('a', el(3, 0)), ('b', el(5, 0))].into_iter().collect()).unwrap();
        let r = check_surjective(&two, &g).unwrap();
        assert!(!r.surjective);
        assert_eq!(r.generated_order, 4);
    }

    #[test]
    fn alpha_degrees() {
        let (g, h, k, _) = setup();
        let rho = Homomorphism::standard();
        let alpha = w("a b d [d,c^-1] d^-1");
        for s in [&h, &k] {
            let comps = preimage_components(&rho, &g, s, &alpha).unwrap();
            assert_eq!(degree_multiset(&comps), vec![1, 1, 2, 2, 2]);
        }
        let comps = preimage_components(&rho, &g, &h, &w("c")).unwrap();
        assert_eq!(degree_multiset(&comps), vec![1; 8]);
    }

    #[test]
    fn partitions() {
        let (g, h, k, l) = setup();
        let ph = lift_orbit_partition(&g, &h, &l).unwrap();
        assert_eq!(ph.sizes(), vec![2, 2, 4, 4, 4]);
        assert!(ph.has_labelled_orbit(&[1, 9]));
        assert!(ph.has_labelled_orbit(&[5, 13]));
        assert!(ph.has_labelled_orbit(&[2, 8, 10, 16]));
        let pk = lift_orbit_partition(&g, &k, &l).unwrap();
        assert!(pk.is_partition_of(16));
        assert!(pk.has_labelled_orbit(&[1, 13]));
        assert!(pk.has_labelled_orbit(&[5, 9]));
        assert!(pk.has_labelled_orbit(&[2, 8, 12, 14]));
        let pg = lift_orbit_partition(&g, &g.whole(), &l).unwrap();
        assert_eq!(pg.sizes(), vec![16]);
    }

    #[test]
    fn orbit_sizes_divide_subgroup_order() {
        let (g, h, k, l) = setup();
        for s in [&h, &k, &l] {
            let p = lift_orbit_partition(&g, s, &l).unwrap();
            assert!(p.sizes().iter().all(|n| s.order() % n == 0));
        }
    }

    #[test]
    fn gamma_table_covers_all_cosets() {
        let (g, _, _, l) = setup();
        let labels = gamma_labels(&g, &l).unwrap().unwrap();
        let set: BTreeSet<usize> = labels.iter().copied().collect();
        assert_eq!(set, (1..=16).collect());
    }

    #[test]
    fn involution_is_identity_on_g() {
        let (g, h, k, _) = setup();
        let sampling = MembershipSampling { random_words: 500, ..Default::default() };
        let r = verify_involution_compat(&Homomorphism::standard(), &tau(), &g, &h, &k, &sampling).unwrap();
        assert!(r.compatible);
        assert_eq!(r.kind, Some(AutomorphismKind::Identity));

        let id = verify_involution_compat(
            &Homomorphism::standard(),
            &Endomorphism::identity(),
            &g,
            &h,
            &k,
            &sampling,
        )
        .unwrap();
        assert!(id.compatible);
        assert_eq!(id.kind, Some(AutomorphismKind::Identity));
    }

    #[test]
    fn swap_of_a_and_b_agrees_with_brute_force() {
        let (g, h, k, _) = setup();
        let swap = Endomorphism::parse([('a', "b"), ('b', "a")], &Alphabet::surface()).unwrap();
        let sampling = MembershipSampling { exhaustive_max_len: 2, random_words: 0, ..Default::default() };
        let r = verify_involution_compat(&Homomorphism::standard(), &swap, &g, &h, &k, &sampling).unwrap();
        let gens = [el(3, 0), el(5, 0), el(1, 0), el(1, 1)];
        let targets = [el(5, 0), el(3, 0), el(1, 0), el(1, 1)];
        let brute = g
            .automorphisms()
            .into_iter()
            .any(|m| gens.iter().zip(&targets).all(|(x, y)| m[x] == *y));
        assert_eq!(r.automorphism_found, brute);
        if r.automorphism_found {
            assert!(r.preserves_h);
        }
    }

    #[test]
    fn word_lists() {
        let a = Alphabet::surface();
        assert_eq!(all_words(&a, 2).len(), 1 + 8 + 64);
        let r1 = random_words(&a, 5, 3, 6, 7);
        assert_eq!(r1, random_words(&a, 5, 3, 6, 7));
        assert!(r1.iter().all(|w| (3..=6).contains(&w.len())));
    }
}
