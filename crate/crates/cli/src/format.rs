//! JSON file formats and report documents.
//!
//! Rationals are written as strings (`"4"`, `"-3/2"`) so values survive
//! serialization exactly.

use exact_cone::enumerate::{Catalogue, CatalogueEntry};
use exact_cone::games::{Allocation, ExactnessCertificate, Game, MinRepresentation};
use exact_cone::ratlin::Rat;
use exact_cone::semibal::{self, CoefficientVector, IntegerForm, SemiBalanceReport};
use exact_cone::setcore::{all_coalitions, Coalition, PlayerSet, SetSystem};
use exact_cone::Error;
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Model(#[from] Error),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;

pub fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_rat(text: &str, what: &str) -> Result<Rat> {
    text.trim()
        .parse()
        .map_err(|_| FormatError::Invalid(format!("invalid rational `{text}` for {what}")))
}

/// Key for a coalition in files: concatenated labels, `0` for `∅`.
pub fn coalition_key(ground: &PlayerSet, c: Coalition) -> String {
    if c.is_empty() {
        return "0".into();
    }
    c.players().map(|p| ground.labels()[p].as_str()).collect()
}

/// `{"players": [...], "values": {"ab": "4", ...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub players: Vec<String>,
    pub values: IndexMap<String, String>,
}

impl GameFile {
    pub fn from_game(m: &Game) -> Self {
        let g = m.ground();
        let mut coalitions: Vec<Coalition> = all_coalitions(g.n())
            .into_iter()
            .filter(|c| !c.is_empty())
            .collect();
        // Same size first, then lexicographic in player order: ab, ac, ad, ..., bc.
        coalitions.sort_by_key(|c| (c.len(), c.players().collect::<Vec<_>>()));
        let values = coalitions
            .into_iter()
            .map(|c| (coalition_key(g, c), m.value(c).to_string()))
            .collect();
        GameFile {
            players: g.labels().to_vec(),
            values,
        }
    }

    pub fn to_game(&self) -> Result<Game> {
        let g = PlayerSet::with_labels(self.players.clone())?;
        let mut values: Vec<Option<Rat>> = vec![None; g.coalition_count()];
        values[0] = Some(Rat::zero());
        let mut seen_empty = false;
        for (key, v) in &self.values {
            let c = g.parse_coalition(key)?;
            let r = parse_rat(v, key)?;
            let slot = &mut values[c.mask() as usize];
            if c.is_empty() {
                if seen_empty {
                    return Err(FormatError::Invalid("empty coalition listed twice".into()));
                }
                seen_empty = true;
                if !r.is_zero() {
                    return Err(FormatError::Invalid(
                        "the empty coalition must have value 0".into(),
                    ));
                }
            } else if slot.is_some() {
                return Err(FormatError::Invalid(format!(
                    "coalition `{key}` listed twice"
                )));
            }
            *slot = Some(r);
        }
        let mut out = Vec::with_capacity(values.len());
        for (mask, v) in values.into_iter().enumerate() {
            match v {
                Some(v) => out.push(v),
                None => {
                    let key = coalition_key(&g, Coalition::from_mask(mask as u32));
                    return Err(Error::MissingValue(key).into());
                }
            }
        }
        Ok(Game::new(g, out)?)
    }
}

pub fn parse_game_json(text: &str) -> Result<Game> {
    serde_json::from_str::<GameFile>(text)?.to_game()
}

pub fn game_to_json(m: &Game) -> String {
    serde_json::to_string_pretty(&GameFile::from_game(m)).expect("game serializes")
}

/// `{"players": [...], "sets": ["a", "ab", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub players: Vec<String>,
    pub sets: Vec<String>,
}

impl SystemFile {
    pub fn from_system(s: &SetSystem) -> Self {
        let g = s.ground();
        SystemFile {
            players: g.labels().to_vec(),
            sets: s.sets().iter().map(|&c| coalition_key(g, c)).collect(),
        }
    }

    pub fn to_system(&self) -> Result<SetSystem> {
        let g = PlayerSet::with_labels(self.players.clone())?;
        let sets = self
            .sets
            .iter()
            .map(|s| g.parse_coalition(s))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(SetSystem::new(g, sets)?)
    }
}

pub fn parse_system_json(text: &str) -> Result<SetSystem> {
    serde_json::from_str::<SystemFile>(text)?.to_system()
}

/// `{"players": [...], "vectors": [["4", "0", ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinRepresentationFile {
    pub players: Vec<String>,
    pub vectors: Vec<Vec<String>>,
}

impl MinRepresentationFile {
    pub fn from_representation(ground: &PlayerSet, rep: &MinRepresentation) -> Self {
        MinRepresentationFile {
            players: ground.labels().to_vec(),
            vectors: rep
                .vectors
                .iter()
                .map(|v| v.x.iter().map(Rat::to_string).collect())
                .collect(),
        }
    }

    pub fn to_representation(&self) -> Result<(PlayerSet, MinRepresentation)> {
        let g = PlayerSet::with_labels(self.players.clone())?;
        let mut vectors = Vec::with_capacity(self.vectors.len());
        for (i, v) in self.vectors.iter().enumerate() {
            if v.len() != g.n() {
                return Err(FormatError::Invalid(format!(
                    "vector {} has {} entries, expected {}",
                    i + 1,
                    v.len(),
                    g.n()
                )));
            }
            let x = v
                .iter()
                .map(|s| parse_rat(s, "vector entry"))
                .collect::<Result<Vec<_>>>()?;
            vectors.push(Allocation::new(x));
        }
        if vectors.is_empty() {
            return Err(FormatError::Invalid(
                "min-representation has no vectors".into(),
            ));
        }
        Ok((g, MinRepresentation { vectors }))
    }
}

fn theta_map(theta: &CoefficientVector) -> IndexMap<String, String> {
    let g = theta.ground();
    theta
        .support()
        .into_iter()
        .map(|(c, v)| (coalition_key(g, c), v.to_string()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerFormDoc {
    pub left: IndexMap<String, String>,
    pub exceptional: Option<(String, String)>,
    pub empty: String,
    pub grand: String,
}

impl IntegerFormDoc {
    pub fn new(g: &PlayerSet, f: &IntegerForm) -> Self {
        IntegerFormDoc {
            left: f
                .alpha
                .iter()
                .map(|(c, a)| (coalition_key(g, *c), a.to_string()))
                .collect(),
            exceptional: f
                .alpha_exceptional
                .as_ref()
                .map(|(c, a)| (coalition_key(g, *c), a.to_string())),
            empty: f.alpha_empty.to_string(),
            grand: f.alpha_n.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisDoc {
    pub players: Vec<String>,
    pub sets: Vec<String>,
    pub is_semi_balanced: bool,
    pub is_balanced: bool,
    pub is_minimal: bool,
    pub exceptional: Option<String>,
    pub exceptional_sets: Vec<String>,
    pub klass: Option<String>,
    pub r: Option<String>,
    pub coefficients: Option<IndexMap<String, String>>,
    pub theta: Option<IndexMap<String, String>>,
    pub integer_form: Option<IntegerFormDoc>,
}

impl AnalysisDoc {
    pub fn new(rep: &SemiBalanceReport) -> Self {
        let s = &rep.system;
        let g = s.ground();
        let key = |c: Coalition| coalition_key(g, c);
        let integer_form = if rep.is_minimal {
            semibal::integer_form(s)
                .ok()
                .map(|f| IntegerFormDoc::new(g, &f))
        } else {
            None
        };
        AnalysisDoc {
            players: g.labels().to_vec(),
            sets: s.sets().iter().map(|&c| key(c)).collect(),
            is_semi_balanced: rep.is_semi_balanced,
            is_balanced: rep.is_balanced,
            is_minimal: rep.is_minimal,
            exceptional: rep.exceptional.map(key),
            exceptional_sets: rep.exceptional_sets.iter().map(|&c| key(c)).collect(),
            klass: rep.klass.map(|k| k.name().to_string()),
            r: rep.r.as_ref().map(Rat::to_string),
            coefficients: rep.combination.as_ref().map(|comb| {
                s.sets()
                    .iter()
                    .zip(&comb.coeffs)
                    .map(|(&c, l)| (key(c), l.to_string()))
                    .collect()
            }),
            theta: rep.theta.as_ref().map(theta_map),
            integer_form,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogueEntryDoc {
    pub sets: Vec<String>,
    pub klass: Option<String>,
    pub exceptional: Option<String>,
    pub canonical: Vec<String>,
    pub orbit_size: usize,
    pub theta: Option<IndexMap<String, String>>,
}

impl CatalogueEntryDoc {
    pub fn new(e: &CatalogueEntry) -> Self {
        let g = e.system.ground();
        let keys = |s: &SetSystem| s.sets().iter().map(|&c| coalition_key(g, c)).collect();
        CatalogueEntryDoc {
            sets: keys(&e.system),
            klass: e.report.klass.map(|k| k.name().to_string()),
            exceptional: e.report.exceptional.map(|c| coalition_key(g, c)),
            canonical: keys(&e.canonical.representative),
            orbit_size: e.canonical.orbit_size,
            theta: e.report.theta.as_ref().map(theta_map),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogueDoc {
    pub players: Vec<String>,
    pub facet_count: usize,
    pub type_count: usize,
    pub entries: Vec<CatalogueEntryDoc>,
}

impl CatalogueDoc {
    pub fn new(cat: &Catalogue) -> Self {
        CatalogueDoc {
            players: cat.ground.labels().to_vec(),
            facet_count: cat.facet_count,
            type_count: cat.type_count,
            entries: cat.entries.iter().map(CatalogueEntryDoc::new).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum ExactnessDoc {
    Exact {
        witnesses: IndexMap<String, Vec<String>>,
    },
    NotExact {
        failing: String,
        value: String,
        core_min: String,
    },
    EmptyCore,
}

impl ExactnessDoc {
    pub fn new(m: &Game, cert: &ExactnessCertificate) -> Self {
        let g = m.ground();
        match cert {
            ExactnessCertificate::Exact(w) => ExactnessDoc::Exact {
                witnesses: w
                    .iter()
                    .map(|(c, x)| {
                        (
                            coalition_key(g, *c),
                            x.x.iter().map(Rat::to_string).collect(),
                        )
                    })
                    .collect(),
            },
            ExactnessCertificate::NotExact { failing, core_min } => ExactnessDoc::NotExact {
                failing: coalition_key(g, *failing),
                value: m.value(*failing).to_string(),
                core_min: core_min.to_string(),
            },
            ExactnessCertificate::EmptyCore => ExactnessDoc::EmptyCore,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameCheckDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balanced: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub totally_balanced: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exactness: Option<ExactnessDoc>,
}
