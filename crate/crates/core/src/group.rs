//! The affine group (Z/n)^x ⋉ Z/n and the finite-group machinery needed to
//! compare its subgroups: conjugacy classes, Gassmann equivalence, coset
//! spaces with their permutation actions.
//!
//! Elements are pairs `(u, v)` read as the affine map `t ↦ u·t + v` on Z/n.
//! Multiplication is composition with the left factor applied last:
//! `(u1, v1)·(u2, v2) = (u1·u2, v1 + u1·v2)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    modulus: u32,
    unit: u32,
    translation: u32,
}

impl GroupElement {
    pub fn new(modulus: u32, unit: i64, translation: i64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let n = modulus as i64;
        let unit = unit.rem_euclid(n) as u32;
        let translation = translation.rem_euclid(n) as u32;
        if modulus > 1 && unit.gcd(&modulus) != 1 {
            return Err(Error::InvalidArgument(format!(
                "{unit} is not a unit modulo {modulus}"
            )));
        }
        Ok(Self { modulus, unit, translation })
    }

    pub fn identity(modulus: u32) -> Self {
        Self { modulus, unit: 1 % modulus.max(1), translation: 0 }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn unit(&self) -> u32 {
        self.unit
    }

    pub fn translation(&self) -> u32 {
        self.translation
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.modulus)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: other.modulus });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.modulus as u64;
        let unit = (self.unit as u64 * other.unit as u64) % n;
        let translation = (self.translation as u64 + self.unit as u64 * other.translation as u64) % n;
        Self { modulus: self.modulus, unit: unit as u32, translation: translation as u32 }
    }

    pub fn inverse(&self) -> Self {
        let n = self.modulus as i64;
        // u is a unit, so the extended gcd yields its inverse
        let ext = (self.unit as i64).extended_gcd(&n);
        let u_inv = ext.x.rem_euclid(n);
        let v = (-(u_inv * self.translation as i64)).rem_euclid(n);
        Self { modulus: self.modulus, unit: u_inv as u32, translation: v as u32 }
    }

    pub fn pow(&self, mut e: i64) -> Self {
        let mut base = if e < 0 { self.inverse() } else { *self };
        e = e.abs();
        let mut acc = Self::identity(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self) -> usize {
        let mut g = *self;
        let mut k = 1;
        while !g.is_identity() {
            g = g.mul_unchecked(self);
            k += 1;
        }
        k
    }

    /// Parses `(u,v)`; residues are reduced modulo `modulus`.
    pub fn parse(text: &str, modulus: u32) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Syntax { pos: 0, msg: format!("expected (u,v), got '{t}'") })?;
        let mut parts = inner.split(',');
        let mut next = |what: &str| -> Result<i64> {
            let p = parts
                .next()
                .ok_or_else(|| Error::Syntax { pos: 0, msg: format!("missing {what} in '{t}'") })?;
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Syntax { pos: 0, msg: format!("bad {what} '{}' in '{t}'", p.trim()) })
        };
        let u = next("unit")?;
        let v = next("translation")?;
        if parts.next().is_some() {
            return Err(Error::Syntax { pos: 0, msg: format!("too many components in '{t}'") });
        }
        Self::new(modulus, u, v)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.unit, self.translation)
    }
}

/// The full group (Z/n)^x ⋉ Z/n with a precomputed multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteAffineGroup {
    modulus: u32,
    elements: Vec<GroupElement>,
    index: BTreeMap<GroupElement, usize>,
    table: Vec<usize>,
}

impl FiniteAffineGroup {
    pub fn new(modulus: u32) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let units: Vec<u32> = (0..modulus.max(1))
            .filter(|u| modulus == 1 || u.gcd(&modulus) == 1)
            .collect();
        let mut elements = Vec::with_capacity(units.len() * modulus as usize);
        for &u in &units {
            for v in 0..modulus {
                elements.push(GroupElement { modulus, unit: u % modulus.max(1), translation: v });
            }
        }
        let index: BTreeMap<_, _> = elements.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let n = elements.len();
        let mut table = vec![0; n * n];
        for (i, g) in elements.iter().enumerate() {
            for (j, h) in elements.iter().enumerate() {
                table[i * n + j] = index[&g.mul_unchecked(h)];
            }
        }
        Ok(Self { modulus, elements, index, table })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.modulus)
    }

    pub fn element(&self, unit: i64, translation: i64) -> Result<GroupElement> {
        GroupElement::new(self.modulus, unit, translation)
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.check(g)?;
        Ok(self.index[g])
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.modulus != self.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: g.modulus });
        }
        Ok(())
    }

    pub(crate) fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.table[i * self.elements.len() + j]
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        g.multiply(h)
    }

    /// `h g h⁻¹`
    pub fn conjugate(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        h.mul_unchecked(g).mul_unchecked(&h.inverse())
    }

    pub fn conjugacy_class(&self, g: &GroupElement) -> Result<BTreeSet<GroupElement>> {
        self.check(g)?;
        Ok(self.elements.iter().map(|h| self.conjugate(g, h)).collect())
    }

    /// All conjugacy classes, ordered by their least element.
    pub fn conjugacy_classes(&self) -> Vec<BTreeSet<GroupElement>> {
        let mut seen = BTreeSet::new();
        let mut classes = Vec::new();
        for g in &self.elements {
            if seen.contains(g) {
                continue;
            }
            let class: BTreeSet<_> = self.elements.iter().map(|h| self.conjugate(g, h)).collect();
            seen.extend(class.iter().copied());
            classes.push(class);
        }
        classes
    }

    pub fn subgroup(&self, members: impl IntoIterator<Item = GroupElement>) -> Result<Subgroup> {
        let members: BTreeSet<GroupElement> = members.into_iter().collect();
        for g in &members {
            self.check(g)?;
        }
        if !members.contains(&self.identity()) {
            return Err(Error::NotASubgroup("identity (1,0) missing".into()));
        }
        for g in &members {
            if !members.contains(&g.inverse()) {
                return Err(Error::NotASubgroup(format!("inverse of {g} missing")));
            }
            for h in &members {
                let gh = g.mul_unchecked(h);
                if !members.contains(&gh) {
                    return Err(Error::NotASubgroup(format!("{g}·{h} = {gh} missing")));
                }
            }
        }
        Ok(Subgroup { modulus: self.modulus, members })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { modulus: self.modulus, members: self.elements.iter().copied().collect() }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { modulus: self.modulus, members: [self.identity()].into_iter().collect() }
    }

    pub fn subgroup_generated<'a>(
        &self,
        gens: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<Subgroup> {
        let gens: Vec<GroupElement> = gens.into_iter().copied().collect();
        for g in &gens {
            self.check(g)?;
        }
        let mut members: BTreeSet<GroupElement> = [self.identity()].into_iter().collect();
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = x.mul_unchecked(g);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Ok(Subgroup { modulus: self.modulus, members })
    }

    pub fn conjugate_subgroup(&self, s: &Subgroup, g: &GroupElement) -> Subgroup {
        Subgroup {
            modulus: self.modulus,
            members: s.members.iter().map(|x| self.conjugate(x, g)).collect(),
        }
    }

    /// Class-by-class comparison of `|H ∩ C|` and `|K ∩ C|`.
    pub fn is_almost_conjugate(&self, h: &Subgroup, k: &Subgroup) -> Result<GassmannCertificate> {
        self.check_subgroup(h)?;
        self.check_subgroup(k)?;
        let rows: Vec<ClassCount> = self
            .conjugacy_classes()
            .into_iter()
            .map(|class| {
                let representative = *class.iter().next().expect("classes are nonempty");
                ClassCount {
                    representative,
                    class_size: class.len(),
                    in_first: class.iter().filter(|g| h.contains(g)).count(),
                    in_second: class.iter().filter(|g| k.contains(g)).count(),
                }
            })
            .collect();
        let almost_conjugate = rows.iter().all(|r| r.in_first == r.in_second);
        Ok(GassmannCertificate { almost_conjugate, rows })
    }

    /// Returns the least `g` with `g H g⁻¹ = K`, if any.
    pub fn is_conjugate_subgroup(&self, h: &Subgroup, k: &Subgroup) -> Result<Option<GroupElement>> {
        self.check_subgroup(h)?;
        self.check_subgroup(k)?;
        if h.order() != k.order() {
            return Ok(None);
        }
        Ok(self
            .elements
            .iter()
            .find(|g| h.members.iter().all(|x| k.contains(&self.conjugate(x, g))))
            .copied())
    }

    fn check_subgroup(&self, s: &Subgroup) -> Result<()> {
        if s.modulus != self.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: s.modulus });
        }
        Ok(())
    }

    pub fn coset_space(&self, s: &Subgroup, side: Side) -> Result<CosetSpace> {
        self.check_subgroup(s)?;
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut representatives = Vec::new();
        for (i, g) in self.elements.iter().enumerate() {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let c = representatives.len();
            representatives.push(*g);
            for x in &s.members {
                let y = match side {
                    Side::Left => g.mul_unchecked(x),
                    Side::Right => x.mul_unchecked(g),
                };
                coset_of[self.index[&y]] = c;
            }
        }
        let action = (0..self.order())
            .map(|h| {
                representatives
                    .iter()
                    .map(|r| {
                        let ri = self.index[r];
                        let moved = match side {
                            Side::Left => self.mul_idx(h, ri),
                            Side::Right => self.mul_idx(ri, h),
                        };
                        coset_of[moved]
                    })
                    .collect()
            })
            .collect();
        Ok(CosetSpace { side, subgroup: s.clone(), representatives, coset_of, action })
    }

    /// Extends `generator images ↦ targets` to a homomorphism `G → G`, or
    /// reports that no such homomorphism exists. `pairs` must generate `G`.
    pub fn extend_to_endomorphism(
        &self,
        pairs: &[(GroupElement, GroupElement)],
    ) -> Option<BTreeMap<GroupElement, GroupElement>> {
        let mut map: BTreeMap<GroupElement, GroupElement> = BTreeMap::new();
        map.insert(self.identity(), self.identity());
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            let fx = map[&x];
            for (s, t) in pairs {
                let y = x.mul_unchecked(s);
                let fy = fx.mul_unchecked(t);
                match map.get(&y) {
                    Some(prev) if *prev != fy => return None,
                    Some(_) => {}
                    None => {
                        map.insert(y, fy);
                        frontier.push(y);
                    }
                }
            }
        }
        if map.len() != self.order() {
            return None;
        }
        // consistency on generators is not enough when the BFS tree skips relations
        let ok = self.elements.iter().all(|g| {
            self.elements.iter().all(|h| map[&g.mul_unchecked(h)] == map[g].mul_unchecked(&map[h]))
        });
        ok.then_some(map)
    }

    /// Every automorphism of `G`, found by brute force over images of a
    /// generating set. Only practical for small moduli.
    pub fn automorphisms(&self) -> Vec<BTreeMap<GroupElement, GroupElement>> {
        let gens = self.small_generating_set();
        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        loop {
            let pairs: Vec<_> = gens
                .iter()
                .zip(&images)
                .map(|(g, &i)| (*g, self.elements[i]))
                .collect();
            if let Some(map) = self.extend_to_endomorphism(&pairs) {
                let image: BTreeSet<_> = map.values().collect();
                if image.len() == self.order() {
                    out.push(map);
                }
            }
            let mut k = 0;
            loop {
                if k == images.len() {
                    return out;
                }
                images[k] += 1;
                if images[k] < self.order() {
                    break;
                }
                images[k] = 0;
                k += 1;
            }
        }
    }

    fn small_generating_set(&self) -> Vec<GroupElement> {
        let mut gens = Vec::new();
        let mut span = self.trivial();
        for g in &self.elements {
            if !span.contains(g) {
                gens.push(*g);
                span = self.subgroup_generated(gens.iter()).expect("same group");
            }
            if span.order() == self.order() {
                break;
            }
        }
        gens
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    modulus: u32,
    members: BTreeSet<GroupElement>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.members.contains(g)
    }

    pub fn members(&self) -> &BTreeSet<GroupElement> {
        &self.members
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|g| g.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `gS`, acted on by left multiplication.
    Left,
    /// `Sg`, acted on by right multiplication.
    Right,
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::InvalidArgument(format!("side must be left|right, got '{other}'"))),
        }
    }
}

/// Cosets of a subgroup together with the permutation each group element
/// induces on them. Coset 0 always contains the identity.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    side: Side,
    subgroup: Subgroup,
    representatives: Vec<GroupElement>,
    coset_of: Vec<usize>,
    action: Vec<Vec<usize>>,
}

impl CosetSpace {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[GroupElement] {
        &self.representatives
    }

    pub fn coset_of(&self, group: &FiniteAffineGroup, g: &GroupElement) -> Result<usize> {
        Ok(self.coset_of[group.index_of(g)?])
    }

    /// The permutation of coset indices induced by `g`.
    pub fn permutation(&self, group: &FiniteAffineGroup, g: &GroupElement) -> Result<&[usize]> {
        Ok(&self.action[group.index_of(g)?])
    }

    pub fn members_of(&self, group: &FiniteAffineGroup, coset: usize) -> Vec<GroupElement> {
        group
            .elements()
            .iter()
            .zip(&self.coset_of)
            .filter(|(_, &c)| c == coset)
            .map(|(g, _)| *g)
            .collect()
    }

    /// Orbits of the subgroup generated by `g` on the cosets.
    pub fn cyclic_orbits(&self, group: &FiniteAffineGroup, g: &GroupElement) -> Result<Vec<Vec<usize>>> {
        Ok(cycles(self.permutation(group, g)?))
    }
}

/// Cycle decomposition; each cycle starts at its least point, cycles sorted
/// by that point.
pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cyc.push(i);
            i = perm[i];
        }
        out.push(cyc);
    }
    out
}

pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = cycles(perm).iter().map(Vec::len).collect();
    t.sort_unstable();
    t
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub representative: GroupElement,
    pub class_size: usize,
    pub in_first: usize,
    pub in_second: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GassmannCertificate {
    pub almost_conjugate: bool,
    pub rows: Vec<ClassCount>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g8() -> FiniteAffineGroup {
        FiniteAffineGroup::new(8).unwrap()
    }

    fn el(u: i64, v: i64) -> GroupElement {
        GroupElement::new(8, u, v).unwrap()
    }

    fn sub(g: &FiniteAffineGroup, xs: &[(i64, i64)]) -> Subgroup {
        g.subgroup(xs.iter().map(|&(u, v)| el(u, v))).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(el(3, 0).multiply(&el(5, 0)).unwrap(), el(7, 0));
        assert_eq!(el(1, 0).multiply(&el(3, 4)).unwrap(), el(3, 4));
        assert_eq!(el(3, 4).multiply(&el(5, 4)).unwrap(), el(7, 0));
    }

    #[test]
    fn mismatched_moduli_rejected() {
        let a = GroupElement::new(8, 3, 0).unwrap();
        let b = GroupElement::new(5, 2, 0).unwrap();
        assert_eq!(a.multiply(&b), Err(Error::ModulusMismatch { left: 8, right: 5 }));
    }

    #[test]
    fn non_unit_rejected() {
        assert!(GroupElement::new(8, 2, 0).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(el(1, 1).inverse(), el(1, 7));
        assert_eq!(el(7, 0).inverse(), el(7, 0));
        let g = g8();
        let brute = g.elements().iter().find(|h| el(3, 4).multiply(h).unwrap().is_identity());
        assert_eq!(Some(&el(3, 4).inverse()), brute);
        assert_eq!(el(3, 4).inverse(), el(3, 4));
    }

    #[test]
    fn group_laws_exhaustive() {
        let g = g8();
        assert_eq!(g.order(), 32);
        let e = g.identity();
        for a in g.elements() {
            assert_eq!(a.multiply(&e).unwrap(), *a);
            assert_eq!(e.multiply(a).unwrap(), *a);
            assert!(a.multiply(&a.inverse()).unwrap().is_identity());
            for b in g.elements() {
                for c in g.elements() {
                    let l = a.multiply(b).unwrap().multiply(c).unwrap();
                    let r = a.multiply(&b.multiply(c).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn conjugacy_classes_partition() {
        let g = g8();
        let classes = g.conjugacy_classes();
        let total: usize = classes.iter().map(BTreeSet::len).sum();
        assert_eq!(total, 32);
        let mut all = BTreeSet::new();
        for c in &classes {
            for x in c {
                assert!(all.insert(*x), "classes overlap at {x}");
            }
        }
        assert_eq!(g.conjugacy_class(&el(1, 0)).unwrap().len(), 1);
        let c7 = g.conjugacy_class(&el(7, 0)).unwrap();
        assert!(c7.contains(&el(7, 0)) && c7.len() < 32);
    }

    #[test]
    fn class_of_three_matches_brute_force() {
        let g = g8();
        let class = g.conjugacy_class(&el(3, 0)).unwrap();
        let brute: BTreeSet<_> = g
            .elements()
            .iter()
            .map(|h| h.multiply(&el(3, 0)).unwrap().multiply(&h.inverse()).unwrap())
            .collect();
        assert_eq!(class, brute);
        // conjugating by translations moves (3,0) to (3,2t), never to (3,odd)
        assert!(class.contains(&el(3, 4)));
        assert!(!class.contains(&el(3, 1)));
    }

    #[test]
    fn paper_pair_is_gassmann_but_not_conjugate() {
        let g = g8();
        let h = sub(&g, &[(1, 0), (3, 0), (5, 0), (7, 0)]);
        let k = sub(&g, &[(1, 0), (3, 4), (5, 4), (7, 0)]);
        assert!(g.is_almost_conjugate(&h, &k).unwrap().almost_conjugate);
        assert!(g.is_almost_conjugate(&h, &h).unwrap().almost_conjugate);
        assert_eq!(g.is_conjugate_subgroup(&h, &k).unwrap(), None);

        let j = sub(&g, &[(1, 0), (1, 4), (7, 0), (7, 4)]);
        assert!(!g.is_almost_conjugate(&h, &j).unwrap().almost_conjugate);
        assert_eq!(g.is_conjugate_subgroup(&h, &j).unwrap(), None);

        let t = el(1, 1);
        let hc = g.conjugate_subgroup(&h, &t);
        let w = g.is_conjugate_subgroup(&h, &hc).unwrap().expect("conjugate");
        assert_eq!(g.conjugate_subgroup(&h, &w), hc);
    }

    #[test]
    fn generated_subgroups() {
        let g = g8();
        assert_eq!(g.subgroup_generated([el(7, 0)].iter()).unwrap().order(), 2);
        let all = [el(3, 0), el(5, 0), el(1, 0), el(1, 1)];
        assert_eq!(g.subgroup_generated(all.iter()).unwrap().order(), 32);
        let n = g.subgroup_generated([el(1, 1)].iter()).unwrap();
        assert_eq!(n.order(), 8);
        assert!((0..8).all(|k| n.contains(&el(1, k))));
    }

    #[test]
    fn subgroup_validation() {
        let g = g8();
        assert!(g.subgroup([el(1, 0), el(3, 0)]).is_ok());
        assert!(g.subgroup([el(1, 0), el(1, 1)]).is_err());
        assert!(g.subgroup([el(3, 0), el(5, 0), el(7, 0)]).is_err());
    }

    #[test]
    fn coset_spaces() {
        let g = g8();
        let l = sub(&g, &[(1, 0), (7, 0)]);
        let left = g.coset_space(&l, Side::Left).unwrap();
        assert_eq!(left.len(), 16);
        assert_eq!(left.coset_of(&g, &g.identity()).unwrap(), 0);
        let h = sub(&g, &[(1, 0), (3, 0), (5, 0), (7, 0)]);
        assert_eq!(g.coset_space(&h, Side::Right).unwrap().len(), 8);
        let whole = g.coset_space(&g.whole(), Side::Right).unwrap();
        assert_eq!(whole.len(), 1);
        assert!(g.elements().iter().all(|x| whole.permutation(&g, x).unwrap() == [0]));
    }

    #[test]
    fn coset_actions_are_actions() {
        let g = g8();
        let h = sub(&g, &[(1, 0), (3, 0), (5, 0), (7, 0)]);
        for side in [Side::Left, Side::Right] {
            let cs = g.coset_space(&h, side).unwrap();
            for a in g.elements() {
                for b in g.elements() {
                    let pa = cs.permutation(&g, a).unwrap();
                    let pb = cs.permutation(&g, b).unwrap();
                    let pab = cs.permutation(&g, &a.multiply(b).unwrap()).unwrap();
                    for i in 0..cs.len() {
                        let expect = match side {
                            Side::Left => pa[pb[i]],
                            Side::Right => pb[pa[i]],
                        };
                        assert_eq!(pab[i], expect);
                    }
                }
            }
        }
    }

    #[test]
    fn gassmann_implies_equal_cycle_types() {
        let g = g8();
        let h = sub(&g, &[(1, 0), (3, 0), (5, 0), (7, 0)]);
        let k = sub(&g, &[(1, 0), (3, 4), (5, 4), (7, 0)]);
        let ch = g.coset_space(&h, Side::Right).unwrap();
        let ck = g.coset_space(&k, Side::Right).unwrap();
        for x in g.elements() {
            assert_eq!(
                cycle_type(ch.permutation(&g, x).unwrap()),
                cycle_type(ck.permutation(&g, x).unwrap()),
                "cycle types differ at {x}"
            );
        }
    }

    #[test]
    fn automorphism_count_and_extension() {
        let g = g8();
        let auts = g.automorphisms();
        assert!(auts.iter().any(|m| m.iter().all(|(a, b)| a == b)));
        // psi(u,v) = (u,-v) is an automorphism
        assert!(auts
            .iter()
            .any(|m| m.iter().all(|(a, b)| *b == el(a.unit() as i64, -(a.translation() as i64)))));
        let pairs = [(el(3, 0), el(3, 0)), (el(5, 0), el(5, 0)), (el(1, 1), el(1, 7))];
        let psi = g.extend_to_endomorphism(&pairs).unwrap();
        assert_eq!(psi[&el(3, 4)], el(3, 4));
    }

    #[test]
    fn parse_elements() {
        assert_eq!(GroupElement::parse("(3, 4)", 8).unwrap(), el(3, 4));
        assert_eq!(GroupElement::parse("(1,-1)", 8).unwrap(), el(1, 7));
        assert!(GroupElement::parse("3,4", 8).is_err());
        assert!(GroupElement::parse("(2,0)", 8).is_err());
        assert_eq!(el(3, 4).to_string(), "(3,4)");
    }
}
