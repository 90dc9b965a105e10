//! Exact 2×2 rational matrices assigned to generators, and the trace data
//! of words under such an assignment.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::covers::EvaluationOrder;
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::InvalidArgument(format!("'{t}' is not a rational number"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::InvalidArgument(format!("'{t}' has zero denominator")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMat2 {
    e: [BigRational; 4],
}

impl RationalMat2 {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Self { e: [a, b, c, d] }
    }

    pub fn from_ratios(m: [[(i64, i64); 2]; 2]) -> Self {
        let r = |(n, d): (i64, i64)| rational(n, d);
        Self::new(r(m[0][0]), r(m[0][1]), r(m[1][0]), r(m[1][1]))
    }

    pub fn parse(rows: &[[&str; 2]; 2]) -> Result<Self> {
        Ok(Self::new(
            parse_rational(rows[0][0])?,
            parse_rational(rows[0][1])?,
            parse_rational(rows[1][0])?,
            parse_rational(rows[1][1])?,
        ))
    }

    pub fn identity() -> Self {
        Self::new(BigRational::one(), BigRational::zero(), BigRational::zero(), BigRational::one())
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.e[2 * i + j]
    }

    pub fn det(&self) -> BigRational {
        &self.e[0] * &self.e[3] - &self.e[1] * &self.e[2]
    }

    pub fn trace(&self) -> BigRational {
        &self.e[0] + &self.e[3]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &o.e;
        Self::new(a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let [a, b, c, d] = &self.e;
        Ok(Self::new(d / &det, -b / &det, -c / &det, a / &det))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let [a, b, c, d] = &self.e;
        Self::new(a * k, b * k, c * k, d * k)
    }

    fn as_strings(&self) -> [[String; 2]; 2] {
        [
            [self.e[0].to_string(), self.e[1].to_string()],
            [self.e[2].to_string(), self.e[3].to_string()],
        ]
    }
}

impl fmt::Display for RationalMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.as_strings();
        write!(f, "[[{}, {}], [{}, {}]]", s[0][0], s[0][1], s[1][0], s[1][1])
    }
}

impl Serialize for RationalMat2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalMat2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = <[[String; 2]; 2]>::deserialize(deserializer)?;
        let refs = [[rows[0][0].as_str(), rows[0][1].as_str()], [rows[1][0].as_str(), rows[1][1].as_str()]];
        RationalMat2::parse(&refs).map_err(serde::de::Error::custom)
    }
}

/// Generator ↦ matrix, with the word evaluation order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricAssignment {
    matrices: BTreeMap<char, RationalMat2>,
    #[serde(default)]
    order: EvaluationOrder,
}

impl MetricAssignment {
    pub fn new(matrices: BTreeMap<char, RationalMat2>, order: EvaluationOrder) -> Result<Self> {
        for (g, m) in &matrices {
            if m.det().is_zero() {
                return Err(Error::InvalidArgument(format!("matrix for '{g}' is singular")));
            }
        }
        Ok(Self { matrices, order })
    }

    /// Matrices for the cut surface that give the trace 109505/2048 on
    /// `a b x a b a^-1 b^-1 x^-1`.
    pub fn calibrated() -> Self {
        Self::with_a(calibrated_a(), EvaluationOrder::LeftToRight)
    }

    /// The `a`-matrix exactly as printed (determinant 73/48).
    pub fn printed() -> Self {
        Self::with_a(printed_a(), EvaluationOrder::LeftToRight)
    }

    fn with_a(a: RationalMat2, order: EvaluationOrder) -> Self {
        let matrices = [('a', a), ('b', matrix_b()), ('x', matrix_x())].into_iter().collect();
        Self { matrices, order }
    }

    /// Every generator ↦ identity. Useless for distinguishing curves.
    pub fn trivial(names: &[char]) -> Self {
        let matrices = names.iter().map(|&g| (g, RationalMat2::identity())).collect();
        Self { matrices, order: EvaluationOrder::LeftToRight }
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "calibrated" => Ok(Self::calibrated()),
            "printed" => Ok(Self::printed()),
            other => Err(Error::Config(format!("unknown metric preset '{other}' (calibrated|printed)"))),
        }
    }

    pub fn order(&self) -> EvaluationOrder {
        self.order
    }

    pub fn matrices(&self) -> &BTreeMap<char, RationalMat2> {
        &self.matrices
    }

    pub fn matrix(&self, g: char) -> Option<&RationalMat2> {
        self.matrices.get(&g)
    }

    pub fn scaled(&self, factors: &BTreeMap<char, BigRational>) -> Self {
        let matrices = self
            .matrices
            .iter()
            .map(|(g, m)| (*g, factors.get(g).map_or_else(|| m.clone(), |k| m.scale(k))))
            .collect();
        Self { matrices, order: self.order }
    }

    fn letter_matrix(&self, l: Letter, inverses: &BTreeMap<char, RationalMat2>) -> Result<RationalMat2> {
        if l.inverse {
            inverses.get(&l.name).cloned().ok_or(Error::Unassigned(l.name))
        } else {
            self.matrices.get(&l.name).cloned().ok_or(Error::Unassigned(l.name))
        }
    }
}

fn calibrated_a() -> RationalMat2 {
    RationalMat2::from_ratios([[(5, 4), (3, 4)], [(3, 4), (5, 4)]])
}

fn printed_a() -> RationalMat2 {
    RationalMat2::from_ratios([[(5, 3), (3, 4)], [(3, 4), (5, 4)]])
}

fn matrix_b() -> RationalMat2 {
    RationalMat2::from_ratios([[(4, 1), (0, 1)], [(0, 1), (1, 4)]])
}

fn matrix_x() -> RationalMat2 {
    RationalMat2::from_ratios([[(5, 3), (-16, 3)], [(-1, 3), (5, 3)]])
}

/// Word-matrix evaluator with the generator inverses cached.
pub struct WordEvaluator<'a> {
    metric: &'a MetricAssignment,
    inverses: BTreeMap<char, RationalMat2>,
}

impl<'a> WordEvaluator<'a> {
    pub fn new(metric: &'a MetricAssignment) -> Self {
        let inverses = metric
            .matrices
            .iter()
            .map(|(g, m)| (*g, m.inverse().expect("assignments are invertible")))
            .collect();
        Self { metric, inverses }
    }

    pub fn matrix(&self, w: &Word) -> Result<RationalMat2> {
        let mut acc = RationalMat2::identity();
        for l in w.letters() {
            let m = self.metric.letter_matrix(*l, &self.inverses)?;
            acc = match self.metric.order {
                EvaluationOrder::LeftToRight => acc.mul(&m),
                EvaluationOrder::RightToLeft => m.mul(&acc),
            };
        }
        Ok(acc)
    }

    pub fn trace_invariant(&self, w: &Word) -> Result<BigRational> {
        invariant_of(&self.matrix(w)?)
    }
}

fn invariant_of(m: &RationalMat2) -> Result<BigRational> {
    let det = m.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let t = m.trace();
    Ok(&t * &t / det)
}

pub fn word_matrix(m: &MetricAssignment, w: &Word) -> Result<RationalMat2> {
    WordEvaluator::new(m).matrix(w)
}

/// `tr(M)² / det(M)`: unchanged by conjugation, inversion and scaling.
pub fn trace_invariant(m: &MetricAssignment, w: &Word) -> Result<BigRational> {
    invariant_of(&word_matrix(m, w)?)
}

#[derive(Clone, Debug)]
pub struct HyperbolicLength {
    pub value: BigFloat,
    pub precision: usize,
}

impl HyperbolicLength {
    pub fn to_decimal(&self) -> String {
        let mut cc = Consts::new().expect("constant cache");
        self.value
            .format(Radix::Dec, RoundingMode::ToEven, &mut cc)
            .unwrap_or_else(|_| "NaN".to_string())
    }

    /// `|self - other| < 10^-digits`
    pub fn agrees_with(&self, other: &BigFloat, digits: u32) -> bool {
        let p = self.precision;
        let rm = RoundingMode::ToEven;
        let mut cc = Consts::new().expect("constant cache");
        let diff = self.value.sub(other, p, rm).abs();
        let tol = BigFloat::parse(&format!("1e-{digits}"), Radix::Dec, p, rm, &mut cc);
        matches!(diff.cmp(&tol), Some(c) if c < 0)
    }
}

impl fmt::Display for HyperbolicLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal())
    }
}

pub fn rational_to_float(q: &BigRational, p: usize, cc: &mut Consts) -> BigFloat {
    let rm = RoundingMode::ToEven;
    let n = BigFloat::parse(&q.numer().to_string(), Radix::Dec, p, rm, cc);
    let d = BigFloat::parse(&q.denom().to_string(), Radix::Dec, p, rm, cc);
    n.div(&d, p, rm)
}

/// `2·arccosh(|tr M| / (2·√det M))` at `precision` bits.
pub fn hyperbolic_length(m: &MetricAssignment, w: &Word, precision: usize) -> Result<HyperbolicLength> {
    let inv = trace_invariant(m, w)?;
    length_from_invariant(&inv, precision)
}

pub fn length_from_invariant(inv: &BigRational, precision: usize) -> Result<HyperbolicLength> {
    let four = BigRational::from_integer(4.into());
    if inv.is_negative() || *inv <= four {
        return Err(Error::Domain(format!(
            "tr²/det = {inv} is at most 4, so the element is not hyperbolic"
        )));
    }
    let p = precision.max(64);
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().map_err(|e| Error::Domain(format!("{e:?}")))?;
    let half_trace_sq = rational_to_float(&(inv / four), p + 32, &mut cc);
    let half_trace = half_trace_sq.sqrt(p + 32, rm);
    let value = half_trace.acosh(p + 32, rm, &mut cc).mul(&BigFloat::from_u8(2, p), p, rm);
    Ok(HyperbolicLength { value, precision: p })
}

/// `2 ln 4`, the length of the diagonal element with eigenvalue 4.
pub fn two_ln_four(precision: usize) -> BigFloat {
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().expect("constant cache");
    BigFloat::from_u8(4, precision + 32)
        .ln(precision + 32, rm, &mut cc)
        .mul(&BigFloat::from_u8(2, precision), precision, rm)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalibrationRow {
    pub candidate: String,
    pub a: RationalMat2,
    pub order: EvaluationOrder,
    pub trace: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub word: String,
    pub target_trace: String,
    pub rows: Vec<CalibrationRow>,
    /// Index into `rows` of the first match.
    pub chosen: Option<usize>,
}

impl CalibrationReport {
    pub fn chosen_metric(&self) -> Option<MetricAssignment> {
        let row = &self.rows[self.chosen?];
        Some(MetricAssignment::with_a(row.a.clone(), row.order))
    }
}

/// The plausible transcriptions of the `a`-matrix.
pub fn calibration_candidates() -> Vec<(&'static str, RationalMat2)> {
    vec![
        ("printed [[5/3,3/4],[3/4,5/4]]", printed_a()),
        ("[[5/4,3/4],[3/4,5/4]]", calibrated_a()),
        ("[[5/3,4/3],[4/3,5/3]]", RationalMat2::from_ratios([[(5, 3), (4, 3)], [(4, 3), (5, 3)]])),
    ]
}

/// Tries every candidate `a`-matrix under both evaluation orders and
/// records which reproduce `target` as the trace of `w`.
pub fn calibrate(w: &Word, target: &BigRational) -> Result<CalibrationReport> {
    let mut rows = Vec::new();
    for (name, a) in calibration_candidates() {
        for order in [EvaluationOrder::LeftToRight, EvaluationOrder::RightToLeft] {
            let metric = MetricAssignment::with_a(a.clone(), order);
            let trace = word_matrix(&metric, w)?.trace();
            rows.push(CalibrationRow {
                candidate: name.to_string(),
                a: a.clone(),
                order,
                matches: trace == *target,
                trace: trace.to_string(),
            });
        }
    }
    let chosen = rows.iter().position(|r| r.matches);
    Ok(CalibrationReport { word: w.to_string(), target_trace: target.to_string(), rows, chosen })
}
