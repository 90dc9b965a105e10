//! Pipeline configuration: the base surface, the map onto the affine group,
//! the two subgroups, the curve and its involution image, the metric, and
//! the enumeration constraints.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::covers::{EvaluationOrder, Homomorphism, MembershipSampling};
use crate::enumeration::CandidateConstraints;
use crate::error::{Error, Result};
use crate::group::{FiniteAffineGroup, GroupElement, Subgroup};
use crate::intersections::{CrossingFact, RibbonStructure};
use crate::linalg::{parse_rational, MetricAssignment, RationalMat2};
use crate::words::{parse_word, Alphabet, Endomorphism, Letter, Word};

pub const DEFAULT_CONFIG: &str = include_str!("../../../configs/paper.toml");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub group: GroupSection,
    pub homomorphism: HomomorphismSection,
    pub subgroups: BTreeMap<String, Vec<String>>,
    pub surface: SurfaceSection,
    pub subsurface: SubsurfaceSection,
    pub published: PublishedData,
    pub metric: MetricSection,
    #[serde(default)]
    pub enumeration: CandidateConstraints,
    #[serde(default)]
    pub membership: MembershipSampling,
    #[serde(default)]
    pub sunada: SunadaSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSection {
    pub modulus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomomorphismSection {
    #[serde(default)]
    pub order: EvaluationOrder,
    #[serde(flatten)]
    pub images: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSection {
    pub alphabet: String,
    pub relator: String,
    pub alpha: String,
    pub involution: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsurfaceSection {
    pub alphabet: String,
    /// Letters not in the surface alphabet, as surface words.
    #[serde(flatten)]
    pub definitions: BTreeMap<String, String>,
    pub alpha: String,
    pub tau_alpha: String,
    pub ribbon: String,
    pub involution: BTreeMap<String, String>,
}

/// Values the pipeline compares its own output against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PublishedData {
    pub degrees: Vec<usize>,
    pub h_orbits: Vec<Vec<usize>>,
    pub k_orbits: Vec<Vec<usize>>,
    pub h_beta: Vec<Vec<usize>>,
    pub k_beta: Vec<Vec<usize>>,
    pub crossings: Vec<CrossingFact>,
    pub trace: String,
    pub spine_counts: [usize; 3],
    pub candidate_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricSection {
    pub preset: Option<String>,
    pub file: Option<PathBuf>,
    #[serde(default = "default_precision")]
    pub precision: usize,
}

fn default_precision() -> usize {
    128
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SunadaSection {
    pub max_len: usize,
}

impl Default for SunadaSection {
    fn default() -> Self {
        Self { max_len: 4 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputSection {
    #[serde(default)]
    pub format: Option<String>,
    #[serde(default)]
    pub path: Option<PathBuf>,
}

/// Metric file layout: `order = "left-to-right"` and a `[matrices]` table
/// of `g = [["p/q", "r/s"], ["t/u", "v/w"]]`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricFile {
    #[serde(default)]
    order: EvaluationOrder,
    matrices: BTreeMap<String, [[String; 2]; 2]>,
}

pub fn parse_metric(text: &str) -> Result<MetricAssignment> {
    let f: MetricFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let mut matrices = BTreeMap::new();
    for (g, rows) in &f.matrices {
        let rows = [[rows[0][0].as_str(), rows[0][1].as_str()], [rows[1][0].as_str(), rows[1][1].as_str()]];
        matrices.insert(single_char(g)?, RationalMat2::parse(&rows)?);
    }
    MetricAssignment::new(matrices, f.order)
}

pub fn load_metric(path: &Path) -> Result<MetricAssignment> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read metric file {}: {e}", path.display())))?;
    parse_metric(&text)
}

fn single_char(s: &str) -> Result<char> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::Config(format!("'{s}' is not a single generator name"))),
    }
}

fn context<T>(what: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Config(format!("{what}: {e}")))
}

impl PipelineConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        if let (Some(f), Some(dir)) = (&cfg.metric.file, path.parent()) {
            if f.is_relative() {
                cfg.metric.file = Some(dir.join(f));
            }
        }
        Ok(cfg)
    }

    pub fn paper() -> Self {
        Self::parse(DEFAULT_CONFIG).expect("default config parses")
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Parses every word, element and matrix, checking that referenced
    /// generators exist.
    pub fn resolve(&self) -> Result<Setup> {
        let n = self.group.modulus;
        let group = context("group", FiniteAffineGroup::new(n))?;
        let surface = context("surface alphabet", Alphabet::from_str_names(&self.surface.alphabet))?;

        let mut images = BTreeMap::new();
        for (g, v) in &self.homomorphism.images {
            let c = single_char(g)?;
            if !surface.contains(c) {
                return Err(Error::Config(format!("homomorphism: '{c}' is not a surface generator")));
            }
            images.insert(c, context(&format!("homomorphism.{g}"), GroupElement::parse(v, n))?);
        }
        if let Some(c) = surface.names().iter().find(|c| !images.contains_key(c)) {
            return Err(Error::Config(format!("homomorphism: no image for '{c}'")));
        }
        let rho = Homomorphism::new(n, images)?.with_order(self.homomorphism.order);

        let subgroup = |name: &str| -> Result<Subgroup> {
            let list = self
                .subgroups
                .get(name)
                .ok_or_else(|| Error::Config(format!("subgroups: missing '{name}'")))?;
            let elems = list
                .iter()
                .map(|s| GroupElement::parse(s, n))
                .collect::<Result<Vec<_>>>();
            context(&format!("subgroups.{name}"), elems.and_then(|e| group.subgroup(e)))
        };
        let h = subgroup("H")?;
        let k = subgroup("K")?;

        let sword = |what: &str, s: &str| context(what, parse_word(s, &surface));
        let relator = sword("surface.relator", &self.surface.relator)?;
        let alpha = sword("surface.alpha", &self.surface.alpha)?;
        let tau = endomorphism("surface.involution", &self.surface.involution, &surface)?;

        let sub = context("subsurface alphabet", Alphabet::from_str_names(&self.subsurface.alphabet))?;
        let mut definitions = BTreeMap::new();
        for (g, s) in &self.subsurface.definitions {
            let c = single_char(g)?;
            if !sub.contains(c) {
                return Err(Error::Config(format!("subsurface: '{c}' is not in the subsurface alphabet")));
            }
            definitions.insert(c, sword(&format!("subsurface.{g}"), s)?);
        }
        for &c in sub.names() {
            if let std::collections::btree_map::Entry::Vacant(e) = definitions.entry(c) {
                if !surface.contains(c) {
                    return Err(Error::Config(format!("subsurface: '{c}' needs a definition")));
                }
                e.insert(Word::new(vec![Letter::new(c)]));
            }
        }
        let mut sub_images = BTreeMap::new();
        for (&c, w) in &definitions {
            sub_images.insert(c, rho.evaluate(w)?);
        }
        let rho_sub = Homomorphism::new(n, sub_images)?.with_order(self.homomorphism.order);
        let wword = |what: &str, s: &str| context(what, parse_word(s, &sub));
        let sub_alpha = wword("subsurface.alpha", &self.subsurface.alpha)?;
        let sub_tau_alpha = wword("subsurface.tau_alpha", &self.subsurface.tau_alpha)?;
        let sub_tau = endomorphism("subsurface.involution", &self.subsurface.involution, &sub)?;
        let ribbon = context("subsurface.ribbon", RibbonStructure::parse(&self.subsurface.ribbon))?;
        if let Some(l) = ribbon.order().iter().find(|l| !sub.contains(l.name)) {
            return Err(Error::Config(format!("subsurface.ribbon: '{}' is not a subsurface generator", l.name)));
        }

        let metric = match (&self.metric.preset, &self.metric.file) {
            (Some(_), Some(_)) => return Err(Error::Config("metric: give either preset or file".into())),
            (Some(p), None) => MetricAssignment::preset(p)?,
            (None, Some(f)) => load_metric(f)?,
            (None, None) => MetricAssignment::calibrated(),
        };
        if let Some(c) = sub.names().iter().find(|c| metric.matrix(**c).is_none()) {
            return Err(Error::Config(format!("metric: no matrix for '{c}'")));
        }
        let target_trace = context("published.trace", parse_rational(&self.published.trace))?;

        Ok(Setup {
            group,
            rho,
            h,
            k,
            surface,
            relator,
            alpha,
            tau,
            subsurface: sub,
            definitions,
            rho_sub,
            sub_alpha,
            sub_tau_alpha,
            sub_tau,
            ribbon,
            metric,
            precision: self.metric.precision,
            target_trace,
            constraints: self.enumeration.clone(),
            sampling: self.membership,
            sunada_max_len: self.sunada.max_len,
            published: self.published.clone(),
        })
    }
}

fn endomorphism(what: &str, map: &BTreeMap<String, String>, alphabet: &Alphabet) -> Result<Endomorphism> {
    let mut pairs = Vec::new();
    for (k, v) in map {
        pairs.push((single_char(k)?, v.as_str()));
    }
    context(what, Endomorphism::parse(pairs, alphabet))
}

/// A fully parsed configuration.
#[derive(Clone, Debug)]
pub struct Setup {
    pub group: FiniteAffineGroup,
    pub rho: Homomorphism,
    pub h: Subgroup,
    pub k: Subgroup,
    pub surface: Alphabet,
    pub relator: Word,
    pub alpha: Word,
    pub tau: Endomorphism,
    pub subsurface: Alphabet,
    pub definitions: BTreeMap<char, Word>,
    pub rho_sub: Homomorphism,
    pub sub_alpha: Word,
    pub sub_tau_alpha: Word,
    pub sub_tau: Endomorphism,
    pub ribbon: RibbonStructure,
    pub metric: MetricAssignment,
    pub precision: usize,
    pub target_trace: BigRational,
    pub constraints: CandidateConstraints,
    pub sampling: MembershipSampling,
    pub sunada_max_len: usize,
    pub published: PublishedData,
}

impl Setup {
    pub fn subgroup(&self, name: &str) -> Result<&Subgroup> {
        match name {
            "H" | "h" => Ok(&self.h),
            "K" | "k" => Ok(&self.k),
            other => Err(Error::InvalidArgument(format!("unknown subgroup '{other}' (H|K)"))),
        }
    }

    /// Surface words first, then subsurface words.
    pub fn parse_curve(&self, text: &str) -> Result<(Word, &Homomorphism)> {
        match parse_word(text, &self.surface) {
            Ok(w) => Ok((w, &self.rho)),
            Err(e) => parse_word(text, &self.subsurface).map(|w| (w, &self.rho_sub)).map_err(|_| e),
        }
    }
}
