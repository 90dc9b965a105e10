//! Candidate curves on the cut surface that could share a length with a
//! given curve, and the exact trace search among them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{MetricAssignment, WordEvaluator};
use crate::words::{abelianize, Alphabet, CyclicWord, HomologyClass, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Edge {
    A1,
    B1,
    B2,
    X1,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Edge::A1 => "a1",
            Edge::B1 => "b1",
            Edge::B2 => "b2",
            Edge::X1 => "x1",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeStep {
    pub edge: Edge,
    pub inverse: bool,
}

impl EdgeStep {
    fn inv(self) -> Self {
        Self { edge: self.edge, inverse: !self.inverse }
    }

    fn cancels(self, o: Self) -> bool {
        self.edge == o.edge && self.inverse != o.inverse
    }
}

fn path_string(p: &[EdgeStep]) -> String {
    p.iter()
        .map(|s| if s.inverse { format!("{}^-1", s.edge) } else { s.edge.to_string() })
        .collect::<Vec<_>>()
        .join(" ")
}

fn reduce_path(p: impl IntoIterator<Item = EdgeStep>) -> Vec<EdgeStep> {
    let mut st: Vec<EdgeStep> = Vec::new();
    for s in p {
        match st.last() {
            Some(&t) if t.cancels(s) => {
                st.pop();
            }
            _ => st.push(s),
        }
    }
    st
}

fn cyclic_reduce_path(p: impl IntoIterator<Item = EdgeStep>) -> Vec<EdgeStep> {
    let st = reduce_path(p);
    let n = st.len();
    let mut k = 0;
    while n - 2 * k >= 2 && st[k].cancels(st[n - 1 - k]) {
        k += 1;
    }
    st[k..n - k].to_vec()
}

/// Edge paths in the spine of the twice-holed torus for the generators
/// `a, b, x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineModel {
    paths: BTreeMap<char, Vec<EdgeStep>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCounts {
    pub a1: usize,
    pub x1: usize,
    pub b_sum: usize,
}

impl fmt::Display for EdgeCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a1={}, x1={}, b1+b2={})", self.a1, self.x1, self.b_sum)
    }
}

fn step(edge: Edge, inverse: bool) -> EdgeStep {
    EdgeStep { edge, inverse }
}

fn tally(p: &[EdgeStep]) -> EdgeCounts {
    let count = |e: Edge| p.iter().filter(|s| s.edge == e).count();
    EdgeCounts { a1: count(Edge::A1), x1: count(Edge::X1), b_sum: count(Edge::B1) + count(Edge::B2) }
}

impl SpineModel {
    /// `a = a1`, `b = b1 b2`, `x = e x1 e^-1`.
    pub fn with_conjugator(e: Option<EdgeStep>) -> Self {
        let mut x = Vec::new();
        if let Some(s) = e {
            x.push(s);
        }
        x.push(step(Edge::X1, false));
        if let Some(s) = e {
            x.push(s.inv());
        }
        let paths = [
            ('a', vec![step(Edge::A1, false)]),
            ('b', vec![step(Edge::B1, false), step(Edge::B2, false)]),
            ('x', x),
        ]
        .into_iter()
        .collect();
        Self { paths }
    }

    /// The fitted model, `x = b1 x1 b1^-1`.
    pub fn fitted() -> Self {
        Self::with_conjugator(Some(step(Edge::B1, false)))
    }

    pub fn paths(&self) -> &BTreeMap<char, Vec<EdgeStep>> {
        &self.paths
    }

    fn letter_path(&self, l: Letter) -> Result<Vec<EdgeStep>> {
        let p = self.paths.get(&l.name).ok_or(Error::Unassigned(l.name))?;
        Ok(if l.inverse { p.iter().rev().map(|s| s.inv()).collect() } else { p.clone() })
    }

    fn linear_path(&self, w: &Word) -> Result<Vec<EdgeStep>> {
        let mut out = Vec::new();
        for l in w.letters() {
            out.extend(self.letter_path(*l)?);
        }
        Ok(out)
    }

    /// Edges of the reduced edge loop homotopic to `w`.
    pub fn edge_counts(&self, w: &Word) -> Result<EdgeCounts> {
        Ok(tally(&cyclic_reduce_path(self.linear_path(w)?)))
    }

    /// Edges of the reduced (non-closed) edge path of `w`.
    pub fn path_counts(&self, w: &Word) -> Result<EdgeCounts> {
        Ok(tally(&reduce_path(self.linear_path(w)?)))
    }

    /// For each ordered pair of letters that can be adjacent in a reduced
    /// word, how many edges their paths cancel at the junction.
    pub fn sharing_table(&self) -> Vec<SharingEntry> {
        let letters: Vec<Letter> = self.paths.keys().flat_map(|&c| [Letter::new(c), Letter::new(c).inverse()]).collect();
        let mut out = Vec::new();
        for &l1 in &letters {
            for &l2 in &letters {
                if l1.cancels(l2) {
                    continue;
                }
                let p1 = self.letter_path(l1).expect("known letter");
                let p2 = self.letter_path(l2).expect("known letter");
                let joined = reduce_path(p1.iter().chain(p2.iter()).copied());
                let shared = (p1.len() + p2.len() - joined.len()) / 2;
                if shared > 0 {
                    out.push(SharingEntry { first: l1.to_string(), second: l2.to_string(), shared_edges: shared });
                }
            }
        }
        out
    }

    pub fn describe(&self) -> BTreeMap<String, String> {
        self.paths.iter().map(|(g, p)| (g.to_string(), path_string(p))).collect()
    }
}

pub fn edge_counts(w: &CyclicWord, model: &SpineModel) -> Result<EdgeCounts> {
    model.edge_counts(w.word())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharingEntry {
    pub first: String,
    pub second: String,
    pub shared_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineFitRow {
    pub x_path: String,
    pub target: EdgeCounts,
    pub image: EdgeCounts,
    pub x_alone: usize,
    pub b_alone: usize,
    pub xb: usize,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineFit {
    pub rows: Vec<SpineFitRow>,
    pub chosen: Option<usize>,
}

impl SpineFit {
    pub fn model(&self) -> Option<SpineModel> {
        let i = self.chosen?;
        Some(fit_candidates()[i].clone())
    }
}

fn fit_candidates() -> Vec<SpineModel> {
    let mut out = vec![SpineModel::with_conjugator(None)];
    for e in [Edge::B1, Edge::B2] {
        for inv in [false, true] {
            out.push(SpineModel::with_conjugator(Some(step(e, inv))));
        }
    }
    out
}

/// Tries `x = e x1 e^-1` for `e` empty or a single b-edge and keeps the first
/// model where both curves have `b_budget` b-edges and where `x`, `b` and
/// `xb` each contribute two b-edges.
pub fn fit_spine_model(target: &Word, image: &Word, b_budget: usize) -> Result<SpineFit> {
    let abx = Alphabet::subsurface();
    let one = |s: &str| crate::words::parse_word(s, &abx).expect("fixed word");
    let mut rows = Vec::new();
    for model in fit_candidates() {
        let t = model.edge_counts(target)?;
        let i = model.edge_counts(image)?;
        let x_alone = model.path_counts(&one("x"))?.b_sum;
        let b_alone = model.path_counts(&one("b"))?.b_sum;
        let xb = model.path_counts(&one("x b"))?.b_sum;
        let consistent = t.b_sum == b_budget && i.b_sum == b_budget && x_alone == 2 && b_alone == 2 && xb == 2;
        rows.push(SpineFitRow {
            x_path: path_string(&model.paths[&'x']),
            target: t,
            image: i,
            x_alone,
            b_alone,
            xb,
            consistent,
        });
    }
    let chosen = rows.iter().position(|r| r.consistent);
    Ok(SpineFit { rows, chosen })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateConstraints {
    pub a_plus: usize,
    pub a_minus: usize,
    pub x_plus: usize,
    pub x_minus: usize,
    /// `#b - #b^-1`
    pub b_surplus: usize,
    pub max_b_letters: usize,
    /// Required `b1 + b2` edge count.
    pub b_edge_budget: usize,
    /// Add the inverse of every word (conditions fix one orientation).
    pub include_inverses: bool,
}

impl Default for CandidateConstraints {
    fn default() -> Self {
        Self {
            a_plus: 2,
            a_minus: 1,
            x_plus: 1,
            x_minus: 1,
            b_surplus: 1,
            max_b_letters: 8,
            b_edge_budget: 8,
            include_inverses: true,
        }
    }
}

impl CandidateConstraints {
    /// Exponent sums forced by the letter counts, in `(a, b, x)`.
    pub fn homology(&self) -> HomologyClass {
        HomologyClass::from_pairs([
            ('a', self.a_plus as i64 - self.a_minus as i64),
            ('b', self.b_surplus as i64),
            ('x', self.x_plus as i64 - self.x_minus as i64),
        ])
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateCounts {
    /// Linear words meeting the conditions in the stated orientation.
    pub linear_oriented: usize,
    pub cyclic_oriented: usize,
    pub linear_with_inverses: usize,
    pub cyclic_with_inverses: usize,
    /// Classes up to rotation and inversion.
    pub unoriented_classes: usize,
    /// Linear oriented words by number of `b` letters.
    pub by_b_letters: BTreeMap<usize, usize>,
    pub reference: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSet {
    pub words: BTreeSet<CyclicWord>,
    pub counts: CandidateCounts,
}

const KINDS: [Letter; 6] = [
    Letter { name: 'a', inverse: false },
    Letter { name: 'a', inverse: true },
    Letter { name: 'b', inverse: false },
    Letter { name: 'b', inverse: true },
    Letter { name: 'x', inverse: false },
    Letter { name: 'x', inverse: true },
];

fn arrangements(remaining: &mut [usize; 6], prefix: &mut Vec<Letter>, out: &mut Vec<Word>) {
    if remaining.iter().all(|&r| r == 0) {
        let n = prefix.len();
        if n < 2 || !prefix[n - 1].cancels(prefix[0]) {
            out.push(Word::new(prefix.clone()));
        }
        return;
    }
    for k in 0..6 {
        if remaining[k] == 0 {
            continue;
        }
        let l = KINDS[k];
        if prefix.last().is_some_and(|p| p.cancels(l)) {
            continue;
        }
        remaining[k] -= 1;
        prefix.push(l);
        arrangements(remaining, prefix, out);
        prefix.pop();
        remaining[k] += 1;
    }
}

/// Cyclically reduced arrangements of a letter multiset, split by first
/// letter across threads.
fn reduced_arrangements(counts: [usize; 6]) -> Vec<Word> {
    let mut chunks: Vec<Vec<Word>> = (0..6)
        .into_par_iter()
        .map(|k| {
            let mut remaining = counts;
            let mut out = Vec::new();
            if remaining[k] > 0 {
                remaining[k] -= 1;
                let mut prefix = vec![KINDS[k]];
                arrangements(&mut remaining, &mut prefix, &mut out);
            }
            out
        })
        .collect();
    chunks.iter_mut().flat_map(std::mem::take).collect()
}

pub fn generate_candidates(c: &CandidateConstraints, model: &SpineModel) -> Result<CandidateSet> {
    let mut counts = CandidateCounts { reference: 4320, ..Default::default() };
    let mut oriented: BTreeSet<CyclicWord> = BTreeSet::new();
    let mut nb = c.b_surplus;
    while 2 * nb - c.b_surplus <= c.max_b_letters {
        let multiset = [c.a_plus, c.a_minus, nb, nb - c.b_surplus, c.x_plus, c.x_minus];
        let words = reduced_arrangements(multiset);
        let kept: Vec<CyclicWord> = words
            .par_iter()
            .filter_map(|w| match model.edge_counts(w) {
                Ok(e) if e.b_sum == c.b_edge_budget => Some(Ok(CyclicWord::new(w))),
                Ok(_) => None,
                Err(err) => Some(Err(err)),
            })
            .collect::<Result<_>>()?;
        if !kept.is_empty() {
            counts.by_b_letters.insert(nb, kept.len());
        }
        counts.linear_oriented += kept.len();
        oriented.extend(kept);
        nb += 1;
    }
    counts.cyclic_oriented = oriented.len();
    let mut words = oriented.clone();
    if c.include_inverses {
        words.extend(oriented.iter().map(CyclicWord::inverse));
    }
    counts.cyclic_with_inverses = words.len();
    counts.linear_with_inverses = words.iter().map(CyclicWord::period).sum::<usize>();
    counts.unoriented_classes = words.iter().map(CyclicWord::unoriented).collect::<BTreeSet<_>>().len();
    Ok(CandidateSet { words, counts })
}

pub fn homology_filter(
    cands: &BTreeSet<CyclicWord>,
    target: &HomologyClass,
    alphabet: &Alphabet,
) -> BTreeSet<CyclicWord> {
    cands
        .iter()
        .filter(|w| abelianize(w.word(), alphabet).equals_up_to_sign(target))
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceMatchReport {
    pub candidate_count: usize,
    pub target: CyclicWord,
    pub target_invariant: String,
    /// Matches up to rotation and inversion.
    pub matched_classes: Vec<CyclicWord>,
    /// Matching cyclic words in both orientations.
    pub matched_words: Vec<CyclicWord>,
    pub distinct_invariants: usize,
    /// Whether comparing `|tr|` instead of `tr²/det` selects the same words.
    pub abs_trace_agrees: bool,
    /// False when every candidate matches, so the metric separates nothing.
    pub discriminating: bool,
}

pub fn find_trace_matches(
    cands: &BTreeSet<CyclicWord>,
    metric: &MetricAssignment,
    target: &CyclicWord,
) -> Result<TraceMatchReport> {
    let eval = WordEvaluator::new(metric);
    let target_m = eval.matrix(target.word())?;
    let target_inv = eval.trace_invariant(target.word())?;
    let target_abs = target_m.trace().abs();
    let list: Vec<&CyclicWord> = cands.iter().collect();
    let data: Vec<(BigRational, BigRational)> = list
        .par_iter()
        .map(|w| {
            let m = eval.matrix(w.word())?;
            let t = m.trace();
            let det = m.det();
            if num_traits::Zero::is_zero(&det) {
                return Err(Error::Singular);
            }
            Ok((&t * &t / det, t.abs()))
        })
        .collect::<Result<_>>()?;
    let mut matched_words = Vec::new();
    let mut abs_trace_agrees = true;
    for (w, (inv, abs)) in list.iter().zip(&data) {
        let by_inv = *inv == target_inv;
        if by_inv != (*abs == target_abs) {
            abs_trace_agrees = false;
        }
        if by_inv {
            matched_words.push((*w).clone());
        }
    }
    let matched_classes: BTreeSet<CyclicWord> = matched_words.iter().map(CyclicWord::unoriented).collect();
    let all_classes: BTreeSet<CyclicWord> = list.iter().map(|w| w.unoriented()).collect();
    let distinct_invariants = data.iter().map(|(i, _)| i).collect::<BTreeSet<_>>().len();
    Ok(TraceMatchReport {
        candidate_count: cands.len(),
        target: target.clone(),
        target_invariant: target_inv.to_string(),
        discriminating: matched_classes.len() < all_classes.len(),
        matched_classes: matched_classes.into_iter().collect(),
        matched_words,
        distinct_invariants,
        abs_trace_agrees,
    })
}
