//! Self-intersection of curves on a surface with free fundamental group,
//! read off from a ribbon (fat graph) structure on a one-vertex spine, and
//! the induced crossings between the lifts of a curve to a regular cover.
//!
//! A curve is a cyclic word `w`. Each position `i` gives a strand through
//! the vertex, entering along `w_{i-1}` and leaving along `w_i`. Two strands
//! cross when their four infinite rays alternate in the cyclic order at
//! infinity, which the ribbon structure determines letter by letter.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::covers::{gamma_labels, EvaluationOrder, Homomorphism, LiftComponent, LiftPartition};
use crate::error::{Error, Result};
use crate::group::{FiniteAffineGroup, GroupElement, Side, Subgroup};
use crate::words::{CyclicWord, Endomorphism, Letter, Word};

/// Cyclic order of the half-edges at the vertex. The half-edge of a letter
/// `l` is the one a path leaves along when reading `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonStructure {
    order: Vec<Letter>,
}

impl RibbonStructure {
    pub fn new(order: Vec<Letter>) -> Result<Self> {
        let set: BTreeSet<Letter> = order.iter().copied().collect();
        if set.len() != order.len() {
            return Err(Error::InvalidArgument("half-edge listed twice".into()));
        }
        if let Some(l) = order.iter().find(|l| !set.contains(&l.inverse())) {
            return Err(Error::InvalidArgument(format!("half-edge {} has no partner", l.inverse())));
        }
        Ok(Self { order })
    }

    /// Parses a compact order like `aBAxbX`, capitals meaning inverses.
    pub fn parse(s: &str) -> Result<Self> {
        let order = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                if !c.is_ascii_alphabetic() {
                    return Err(Error::InvalidArgument(format!("'{c}' is not a letter")));
                }
                let l = Letter::new(c.to_ascii_lowercase());
                Ok(if c.is_ascii_uppercase() { l.inverse() } else { l })
            })
            .collect::<Result<_>>()?;
        Self::new(order)
    }

    /// `a, b^-1, a^-1, x, b, x^-1`: a twice-holed torus with boundary words
    /// `a x` and `b^-1 x^-1 b a^-1`.
    pub fn standard() -> Self {
        Self::parse("aBAxbX").expect("valid order")
    }

    pub fn order(&self) -> &[Letter] {
        &self.order
    }

    pub fn compact(&self) -> String {
        self.order
            .iter()
            .map(|l| if l.inverse { l.name.to_ascii_uppercase() } else { l.name })
            .collect()
    }

    fn positions(&self) -> BTreeMap<Letter, usize> {
        self.order.iter().enumerate().map(|(i, l)| (*l, i)).collect()
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.order.contains(&l)
    }

    /// Boundary components of the thickened spine, as words.
    pub fn boundary_cycles(&self) -> Vec<Word> {
        let pos = self.positions();
        let n = self.order.len();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &h in &self.order {
            if seen.contains(&h) {
                continue;
            }
            let mut cyc = Vec::new();
            let mut cur = h;
            while seen.insert(cur) {
                cyc.push(cur);
                cur = self.order[(pos[&cur.inverse()] + 1) % n];
            }
            out.push(Word::new(cyc));
        }
        out
    }

    /// Genus of the closed-up surface, from `χ = 1 - E = 2 - 2g - (#boundary)`.
    pub fn genus(&self) -> i64 {
        let e = (self.order.len() / 2) as i64;
        let b = self.boundary_cycles().len() as i64;
        (1 + e - b) / 2
    }

    /// Whether `phi` permutes the boundary classes, up to orientation.
    pub fn peripheral_invariant(&self, phi: &Endomorphism) -> bool {
        let classes: BTreeSet<CyclicWord> =
            self.boundary_cycles().iter().map(|w| CyclicWord::new(w).unoriented()).collect();
        classes.iter().all(|c| classes.contains(&CyclicWord::new(&phi.apply(c.word())).unoriented()))
    }

    /// All orders with the first half-edge of `self` fixed (orders related
    /// by rotation describe the same structure).
    pub fn all_orders(letters: &[Letter]) -> Vec<RibbonStructure> {
        let Some((&first, rest)) = letters.split_first() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut rest = rest.to_vec();
        permute(&mut rest, 0, &mut |p| {
            let mut order = vec![first];
            order.extend_from_slice(p);
            out.push(RibbonStructure { order });
        });
        out
    }

    fn ray_key(&self, pos: &BTreeMap<Letter, usize>, ray: &[Letter]) -> Vec<usize> {
        let n = self.order.len();
        let mut key = Vec::with_capacity(ray.len());
        key.push(pos[&ray[0]]);
        for t in 1..ray.len() {
            key.push((pos[&ray[t]] + n - pos[&ray[t - 1].inverse()]) % n);
        }
        key
    }
}

fn permute(v: &mut Vec<Letter>, k: usize, f: &mut impl FnMut(&[Letter])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// A transverse self-crossing: the strands through positions `i` and `j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinkedPair {
    pub i: usize,
    pub j: usize,
    /// `w_i ... w_{j-1}`, read cyclically.
    pub connecting: Word,
}

fn forward_ray(w: &[Letter], i: usize, len: usize) -> Vec<Letter> {
    let n = w.len();
    (0..len).map(|t| w[(i + t) % n]).collect()
}

fn backward_ray(w: &[Letter], i: usize, len: usize) -> Vec<Letter> {
    let n = w.len();
    (0..len).map(|t| w[(i as isize - 1 - t as isize).rem_euclid(n as isize) as usize].inverse()).collect()
}

fn linked_at(ribbon: &RibbonStructure, pos: &BTreeMap<Letter, usize>, w: &[Letter], i: usize, j: usize) -> bool {
    let len = 2 * w.len() + 2;
    let mut rays = [
        (ribbon.ray_key(pos, &forward_ray(w, i, len)), 0),
        (ribbon.ray_key(pos, &backward_ray(w, i, len)), 0),
        (ribbon.ray_key(pos, &forward_ray(w, j, len)), 1),
        (ribbon.ray_key(pos, &backward_ray(w, j, len)), 1),
    ];
    rays.sort();
    rays[0].1 != rays[1].1 && rays[1].1 != rays[2].1 && rays[2].1 != rays[3].1
}

fn half_edges(w: &[Letter], i: usize) -> [Letter; 2] {
    let n = w.len();
    [w[i], w[(i + n - 1) % n].inverse()]
}

/// Ordered position pairs that witness a crossing. Every crossing shows up
/// exactly twice.
fn ordered_linked(w: &[Letter], ribbon: &RibbonStructure) -> Vec<(usize, usize)> {
    let pos = ribbon.positions();
    let n = w.len();
    let mut out = Vec::new();
    for i in 0..n {
        let hi = half_edges(w, i);
        for j in 0..n {
            if i == j {
                continue;
            }
            let hj = half_edges(w, j);
            let shared: Vec<Letter> = hi.iter().filter(|h| hj.contains(h)).copied().collect();
            if shared.len() == 2 || (shared.len() == 1 && shared[0] != w[i]) {
                continue;
            }
            if linked_at(ribbon, &pos, w, i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Key identifying the crossing found at the ordered pair `(i, j)`.
fn crossing_key(w: &[Letter], i: usize, j: usize) -> (usize, usize) {
    let n = w.len();
    let opposite = w[i] == w[(j + n - 1) % n].inverse() && w[i] != w[j];
    if !opposite {
        return (i.min(j), i.max(j));
    }
    // strands run against each other from i; the same crossing is found
    // again where the shared stretch ends
    let mut k = 0;
    while k < n && w[(i + k) % n] == w[(j + 2 * n - 1 - k) % n].inverse() {
        k += 1;
    }
    let partner = ((j + n - k % n) % n, (i + k) % n);
    (i, j).min(partner)
}

fn subword(w: &[Letter], i: usize, j: usize) -> Word {
    let n = w.len();
    let len = (j + n - i) % n;
    (0..len).map(|t| w[(i + t) % n]).collect()
}

fn checked_letters(w: &Word, ribbon: &RibbonStructure) -> Result<Vec<Letter>> {
    if !w.is_cyclically_reduced() {
        return Err(Error::NotReduced);
    }
    if !w.is_empty() && !CyclicWord::new(w).is_primitive() {
        return Err(Error::NotPrimitive);
    }
    for (p, l) in w.letters().iter().enumerate() {
        if !ribbon.contains(*l) {
            return Err(Error::UnknownGenerator { name: l.name, pos: p });
        }
    }
    Ok(w.letters().to_vec())
}

/// One representative per crossing, sorted by position. Positions refer to
/// `w` as given, which must be cyclically reduced and primitive.
pub fn self_linked_pairs(w: &Word, ribbon: &RibbonStructure) -> Result<Vec<LinkedPair>> {
    let letters = checked_letters(w, ribbon)?;
    let mut reps: BTreeMap<(usize, usize), LinkedPair> = BTreeMap::new();
    for (i, j) in ordered_linked(&letters, ribbon) {
        let key = crossing_key(&letters, i, j);
        reps.entry(key).or_insert_with(|| LinkedPair { i: key.0, j: key.1, connecting: subword(&letters, key.0, key.1) });
    }
    Ok(reps.into_values().collect())
}

/// Geometric self-intersection number of a primitive curve.
pub fn self_intersection_number(w: &Word, ribbon: &RibbonStructure) -> Result<usize> {
    let letters = checked_letters(w, ribbon)?;
    Ok(ordered_linked(&letters, ribbon).len() / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingType {
    /// Least element of the double coset `L h L`.
    pub representative: GroupElement,
    pub double_coset: Vec<GroupElement>,
    pub crossings: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub word: Word,
    pub self_intersection: usize,
    pub linked_pairs: Vec<LinkedPair>,
    pub types: Vec<CrossingType>,
    /// Unordered pairs of distinct cosets of `G/L` whose lifts cross.
    pub pairs: BTreeSet<(usize, usize)>,
    /// Cosets whose lift crosses itself.
    pub self_crossing: BTreeSet<usize>,
    pub coset_representatives: Vec<GroupElement>,
    /// γ label of each coset, when the published labelling applies.
    pub labels: Option<Vec<usize>>,
}

impl CrossingReport {
    pub fn crosses(&self, c1: usize, c2: usize) -> bool {
        if c1 == c2 {
            return self.self_crossing.contains(&c1);
        }
        self.pairs.contains(&(c1.min(c2), c1.max(c2)))
    }

    fn coset_of_label(&self, label: usize) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|&l| l == label)
    }

    pub fn crosses_labels(&self, g1: usize, g2: usize) -> Option<bool> {
        Some(self.crosses(self.coset_of_label(g1)?, self.coset_of_label(g2)?))
    }

    pub fn all_lifts_simple(&self) -> bool {
        self.self_crossing.is_empty()
    }

    pub fn labelled_pairs(&self) -> Option<Vec<(usize, usize)>> {
        let ls = self.labels.as_ref()?;
        let mut v: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&(a, b)| (ls[a].min(ls[b]), ls[a].max(ls[b])))
            .collect();
        v.sort_unstable();
        Some(v)
    }
}

/// `ρ(P_i) ρ(P_j)^-1`, with `P_k` the prefix of length `k`.
fn crossing_element(rho: &Homomorphism, w: &[Letter], i: usize, j: usize) -> Result<GroupElement> {
    let pi = rho.evaluate(&w[..i].iter().copied().collect())?;
    let pj = rho.evaluate(&w[..j].iter().copied().collect())?;
    Ok(match rho.order() {
        EvaluationOrder::LeftToRight => pi.mul_unchecked(&pj.inverse()),
        EvaluationOrder::RightToLeft => pj.inverse().mul_unchecked(&pi),
    })
}

/// The lift through the base point is the one read from `w` as written, so
/// rotating `w` relabels the lifts.
///
/// Lifts of `w` to the cover with deck group `G` are indexed by `G/L`, where
/// `L = ⟨ρ(w)⟩` stabilizes the lift through the base point. A crossing at
/// positions `(i, j)` joins the lifts `gL` and `g ρ(P_i P_j^-1) L`.
pub fn lift_crossings(
    w: &Word,
    rho: &Homomorphism,
    group: &FiniteAffineGroup,
    l: &Subgroup,
    ribbon: &RibbonStructure,
) -> Result<CrossingReport> {
    let letters = checked_letters(w, ribbon)?;
    let generated = group.subgroup_generated([rho.evaluate(w)?].iter())?;
    if generated != *l {
        return Err(Error::Inconsistent(format!("L = {l} but ⟨ρ(w)⟩ = {generated}")));
    }
    let cs = group.coset_space(l, Side::Left)?;
    let ordered = ordered_linked(&letters, ribbon);
    let linked_pairs = self_linked_pairs(w, ribbon)?;

    let mut by_type: BTreeMap<GroupElement, (BTreeSet<GroupElement>, usize)> = BTreeMap::new();
    let mut pairs = BTreeSet::new();
    let mut self_crossing = BTreeSet::new();
    for lp in &linked_pairs {
        let h = crossing_element(rho, &letters, lp.i, lp.j)?;
        let mut dc = BTreeSet::new();
        for x in l.members() {
            for y in l.members() {
                dc.insert(x.mul_unchecked(&h).mul_unchecked(y));
            }
        }
        let rep = *dc.iter().next().expect("nonempty");
        by_type.entry(rep).or_insert_with(|| (dc, 0)).1 += 1;
        for g in group.elements() {
            let c1 = cs.coset_of(group, g)?;
            let c2 = cs.coset_of(group, &g.mul_unchecked(&h))?;
            if c1 == c2 {
                self_crossing.insert(c1);
            } else {
                pairs.insert((c1.min(c2), c1.max(c2)));
            }
        }
    }
    let types = by_type
        .into_iter()
        .map(|(representative, (dc, crossings))| CrossingType {
            representative,
            double_coset: dc.into_iter().collect(),
            crossings,
        })
        .collect();
    Ok(CrossingReport {
        word: w.clone(),
        self_intersection: ordered.len() / 2,
        linked_pairs,
        types,
        pairs,
        self_crossing,
        coset_representatives: cs.representatives().to_vec(),
        labels: gamma_labels(group, l)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Simplicity {
    Simple,
    Nonsimple,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentVerdict {
    /// Position in the component list, starting at 1.
    pub index: usize,
    pub degree: usize,
    /// Lifts making up the component (cosets of `G/L`).
    pub lifts: Vec<usize>,
    pub lift_labels: Option<Vec<usize>>,
    pub verdict: Simplicity,
    /// A crossing pair of lifts (equal entries for a self-crossing lift).
    pub witness: Option<(usize, usize)>,
    /// Number of lift pairs inside the component that were checked.
    pub pairs_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicityVerdict {
    pub components: Vec<ComponentVerdict>,
}

impl SimplicityVerdict {
    pub fn simple_count(&self) -> usize {
        self.components.iter().filter(|c| c.verdict == Simplicity::Simple).count()
    }
}

/// A component is the image of one `S`-orbit of lifts; it is nonsimple
/// exactly when two lifts in the orbit cross or one lift crosses itself.
pub fn component_simplicity(
    group: &FiniteAffineGroup,
    l: &Subgroup,
    parts: &LiftPartition,
    cr: &CrossingReport,
    comps: &[LiftComponent],
) -> Result<SimplicityVerdict> {
    let cs = group.coset_space(l, Side::Left)?;
    if cs.representatives() != cr.coset_representatives.as_slice()
        || cs.representatives() != parts.coset_representatives.as_slice()
    {
        return Err(Error::Inconsistent("coset spaces of L differ".into()));
    }
    if parts.orbits.len() != comps.len() {
        return Err(Error::Inconsistent(format!(
            "{} lift orbits but {} components",
            parts.orbits.len(),
            comps.len()
        )));
    }
    let mut used = vec![false; parts.orbits.len()];
    let mut components = Vec::new();
    for (idx, comp) in comps.iter().enumerate() {
        let found = parts.orbits.iter().enumerate().find(|(k, orbit)| {
            !used[*k] && comp.double_coset.contains(&cs.representatives()[orbit[0]])
        });
        let Some((k, orbit)) = found else {
            return Err(Error::Inconsistent(format!("component {} matches no lift orbit", idx + 1)));
        };
        if orbit.len() * l.order() != comp.double_coset.len() {
            return Err(Error::Inconsistent(format!("component {} has the wrong size", idx + 1)));
        }
        used[k] = true;
        let mut witness = None;
        let mut checked = 0;
        'scan: for (a, &c1) in orbit.iter().enumerate() {
            for &c2 in &orbit[a..] {
                checked += 1;
                if cr.crosses(c1, c2) {
                    witness = Some((c1, c2));
                    break 'scan;
                }
            }
        }
        components.push(ComponentVerdict {
            index: idx + 1,
            degree: comp.degree,
            lifts: orbit.clone(),
            lift_labels: cr.labels.as_ref().map(|ls| {
                let mut v: Vec<usize> = orbit.iter().map(|&c| ls[c]).collect();
                v.sort_unstable();
                v
            }),
            verdict: if witness.is_some() { Simplicity::Nonsimple } else { Simplicity::Simple },
            witness,
            pairs_checked: checked,
        });
    }
    Ok(SimplicityVerdict { components })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonRow {
    pub order: String,
    pub boundary: Vec<String>,
    pub genus: i64,
    pub peripheral_invariant: bool,
    pub reproduces: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonCalibration {
    /// Orders giving a twice-holed torus.
    pub rows: Vec<RibbonRow>,
    pub accepted: Vec<String>,
}

/// Required crossing behaviour of two lifts, by γ label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingFact {
    pub first: usize,
    pub second: usize,
    pub cross: bool,
}

/// Searches all ribbon structures on the letters of `ribbon_letters` for
/// twice-holed tori whose peripheral structure `tau` preserves and whose
/// lift crossings for `w` satisfy `facts`.
pub fn calibrate_ribbon(
    ribbon_letters: &[Letter],
    w: &Word,
    rho: &Homomorphism,
    group: &FiniteAffineGroup,
    l: &Subgroup,
    tau: &Endomorphism,
    facts: &[CrossingFact],
) -> Result<RibbonCalibration> {
    let mut rows = Vec::new();
    for r in RibbonStructure::all_orders(ribbon_letters) {
        let boundary = r.boundary_cycles();
        if boundary.len() != 2 {
            continue;
        }
        let peripheral_invariant = r.peripheral_invariant(tau);
        let reproduces = peripheral_invariant && {
            let cr = lift_crossings(w, rho, group, l, &r)?;
            cr.all_lifts_simple()
                && facts.iter().all(|f| cr.crosses_labels(f.first, f.second) == Some(f.cross))
        };
        rows.push(RibbonRow {
            order: r.compact(),
            boundary: boundary.iter().map(|b| b.to_string()).collect(),
            genus: r.genus(),
            peripheral_invariant,
            reproduces,
        });
    }
    let accepted = rows.iter().filter(|r| r.reproduces).map(|r| r.order.clone()).collect();
    Ok(RibbonCalibration { rows, accepted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{lift_orbit_partition, preimage_components};
    use crate::words::{parse_word, Alphabet};

    fn w(s: &str) -> Word {
        parse_word(s, &Alphabet::subsurface()).unwrap()
    }

    fn el(u: i64, v: i64) -> GroupElement {
        GroupElement::new(8, u, v).unwrap()
    }

    fn rho_sub() -> Homomorphism {
        Homomorphism::new(8, [('a', el(3, 0)), ('b', el(5, 0)), ('x', el(3, 1))].into_iter().collect()).unwrap()
    }

    fn alpha() -> Word {
        w("a b x a b a^-1 b^-1 x^-1")
    }

    fn setup() -> (FiniteAffineGroup, Subgroup) {
        let g = FiniteAffineGroup::new(8).unwrap();
        let l = g.subgroup([el(1, 0), el(7, 0)]).unwrap();
        (g, l)
    }

    #[test]
    fn standard_ribbon_is_twice_holed_torus() {
        let r = RibbonStructure::standard();
        let b: Vec<String> = r.boundary_cycles().iter().map(|w| w.compact()).collect();
        assert_eq!(b, vec!["ax".to_string(), "b^-1x^-1ba^-1".to_string()]);
        assert_eq!(r.genus(), 1);
        let tau = Endomorphism::parse([('a', "a^-1"), ('b', "b^-1"), ('x', "b^-1 x^-1 b")], &Alphabet::subsurface())
            .unwrap();
        assert!(r.peripheral_invariant(&tau));
    }

    #[test]
    fn generators_are_simple() {
        let r = RibbonStructure::standard();
        for g in ["a", "b", "x", "a^-1"] {
            assert!(self_linked_pairs(&w(g), &r).unwrap().is_empty());
        }
        for g in ["a x", "b^-1 x^-1 b a^-1"] {
            assert_eq!(self_intersection_number(&w(g), &r).unwrap(), 0);
        }
    }

    #[test]
    fn alpha_self_intersection() {
        let r = RibbonStructure::standard();
        let pairs = self_linked_pairs(&alpha(), &r).unwrap();
        assert_eq!(pairs.len(), 4);
        assert_eq!(self_intersection_number(&alpha().inverse(), &r).unwrap(), 4);
    }

    #[test]
    fn input_validation() {
        let r = RibbonStructure::standard();
        assert_eq!(self_linked_pairs(&w("a b a b"), &r), Err(Error::NotPrimitive));
        let unreduced = CyclicWord::from_reduced(&parse_word("a a^-1", &Alphabet::subsurface()).unwrap());
        assert!(unreduced.is_err());
        assert!(RibbonStructure::parse("aAb").is_err());
    }

    #[test]
    fn alpha_lift_crossings() {
        let (g, l) = setup();
        let cr = lift_crossings(&alpha(), &rho_sub(), &g, &l, &RibbonStructure::standard()).unwrap();
        assert_eq!(cr.crosses_labels(1, 9), Some(true));
        assert_eq!(cr.crosses_labels(5, 13), Some(true));
        assert_eq!(cr.crosses_labels(1, 13), Some(false));
        assert_eq!(cr.crosses_labels(5, 9), Some(false));
        assert!(cr.all_lifts_simple());
        let reps: Vec<GroupElement> = cr.types.iter().map(|t| t.representative).collect();
        assert_eq!(reps, vec![el(1, 1), el(3, 0)]);
    }

    #[test]
    fn wrong_stabilizer_rejected() {
        let (g, _) = setup();
        let h = g.subgroup([el(1, 0), el(3, 0), el(5, 0), el(7, 0)]).unwrap();
        let r = lift_crossings(&alpha(), &rho_sub(), &g, &h, &RibbonStructure::standard());
        assert!(matches!(r, Err(Error::Inconsistent(_))));
    }

    #[test]
    fn simple_word_has_no_crossings() {
        let g = FiniteAffineGroup::new(8).unwrap();
        let rho = Homomorphism::standard();
        let c = parse_word("c", &Alphabet::surface()).unwrap();
        let ribbon = RibbonStructure::parse("cC").unwrap();
        let cr = lift_crossings(&c, &rho, &g, &g.trivial(), &ribbon).unwrap();
        assert!(cr.pairs.is_empty() && cr.self_crossing.is_empty());
    }

    #[test]
    fn equivariance() {
        let (g, l) = setup();
        let cr = lift_crossings(&alpha(), &rho_sub(), &g, &l, &RibbonStructure::standard()).unwrap();
        let cs = g.coset_space(&l, Side::Left).unwrap();
        for x in g.elements() {
            let p = cs.permutation(&g, x).unwrap();
            for &(a, b) in &cr.pairs {
                assert!(cr.crosses(p[a], p[b]));
            }
        }
    }

    #[test]
    fn verdicts_for_h_k_and_g() {
        let (g, l) = setup();
        let rho = rho_sub();
        let ribbon = RibbonStructure::standard();
        let h = g.subgroup([el(1, 0), el(3, 0), el(5, 0), el(7, 0)]).unwrap();
        let k = g.subgroup([el(1, 0), el(3, 4), el(5, 4), el(7, 0)]).unwrap();
        let cr = lift_crossings(&alpha(), &rho, &g, &l, &ribbon).unwrap();
        let verdict = |s: &Subgroup| {
            let parts = lift_orbit_partition(&g, s, &l).unwrap();
            let comps = preimage_components(&rho, &g, s, &alpha()).unwrap();
            component_simplicity(&g, &l, &parts, &cr, &comps).unwrap()
        };
        let vh = verdict(&h);
        assert_eq!(vh.components[0].verdict, Simplicity::Nonsimple);
        assert_eq!(vh.components[1].verdict, Simplicity::Nonsimple);
        let vk = verdict(&k);
        assert_eq!(vk.components[0].verdict, Simplicity::Simple);
        assert_eq!(vk.components[1].verdict, Simplicity::Simple);
        assert_eq!(vk.components[0].degree, 1);
        let vg = verdict(&g.whole());
        assert_eq!(vg.components.len(), 1);
        assert_eq!(vg.components[0].verdict, Simplicity::Nonsimple);
    }
}
