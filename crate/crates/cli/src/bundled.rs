//! The six-player counterexample: a game that is totally balanced, has a
//! totally balanced anti-dual, and is not exact.

use std::path::Path;

use exact_cone::games::{
    exactness, is_totally_balanced, verify_min_representation, ExactnessCertificate, Game,
    MinRepresentation,
};
use exact_cone::ratlin::Rat;
use exact_cone::semibal::CoefficientVector;
use exact_cone::setcore::{all_coalitions, Coalition, PlayerSet};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::format::{self, coalition_key, FormatError, MinRepresentationFile};

pub const GAME_FILE: &str = "game.json";
pub const GAME_REP_FILE: &str = "game_min_representation.json";
pub const ANTI_DUAL_FILE: &str = "anti_dual.json";
pub const ANTI_DUAL_REP_FILE: &str = "anti_dual_min_representation.json";

const GAME_JSON: &str = include_str!("../data/game.json");
const GAME_REP_JSON: &str = include_str!("../data/game_min_representation.json");
const ANTI_DUAL_JSON: &str = include_str!("../data/anti_dual.json");
const ANTI_DUAL_REP_JSON: &str = include_str!("../data/anti_dual_min_representation.json");

/// SHA-256 of each embedded data file.
pub const CHECKSUMS: [(&str, &str); 4] = [
    (
        GAME_FILE,
        "38a103d6053612ed69fe485e6ce268d324570f468ffa8c8c91b4f81ab704abc4",
    ),
    (
        GAME_REP_FILE,
        "bf4d8e535b908c11fe4e867c05ee29ce3bffd547fa63482c66ffe7c65ecde412",
    ),
    (
        ANTI_DUAL_FILE,
        "ab4c7fb419d438c2a82afdc55af3c7dcc8422b26a7a183a57bd84da21177cb35",
    ),
    (
        ANTI_DUAL_REP_FILE,
        "4ebaa772fae8249cdd8a6bd385641bbf21822a4d5dbd6fa46e10101822c6fb60",
    ),
];

pub fn embedded_sources() -> [(&'static str, &'static str); 4] {
    [
        (GAME_FILE, GAME_JSON),
        (GAME_REP_FILE, GAME_REP_JSON),
        (ANTI_DUAL_FILE, ANTI_DUAL_JSON),
        (ANTI_DUAL_REP_FILE, ANTI_DUAL_REP_JSON),
    ]
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleBundle {
    pub m: Game,
    pub m_rep: MinRepresentation,
    pub ad: Game,
    pub ad_rep: MinRepresentation,
}

fn parse_rep(text: &str, ground: &PlayerSet) -> Result<MinRepresentation, FormatError> {
    let file: MinRepresentationFile = serde_json::from_str(text)?;
    let (g, rep) = file.to_representation()?;
    if &g != ground {
        return Err(FormatError::Invalid(
            "min-representation players differ from the game".into(),
        ));
    }
    Ok(rep)
}

impl CounterexampleBundle {
    fn parse(
        game: &str,
        game_rep: &str,
        anti_dual: &str,
        anti_dual_rep: &str,
    ) -> Result<Self, FormatError> {
        let m = format::parse_game_json(game)?;
        let ad = format::parse_game_json(anti_dual)?;
        if ad.ground() != m.ground() {
            return Err(FormatError::Invalid(
                "anti-dual players differ from the game".into(),
            ));
        }
        let m_rep = parse_rep(game_rep, m.ground())?;
        let ad_rep = parse_rep(anti_dual_rep, m.ground())?;
        Ok(CounterexampleBundle {
            m,
            m_rep,
            ad,
            ad_rep,
        })
    }

    /// The embedded tables, after checking their checksums.
    pub fn embedded() -> Result<Self, FormatError> {
        for ((name, text), (_, sum)) in embedded_sources().iter().zip(CHECKSUMS) {
            if sha256_hex(text) != sum {
                return Err(FormatError::Invalid(format!(
                    "checksum mismatch for embedded {name}"
                )));
            }
        }
        Self::parse(GAME_JSON, GAME_REP_JSON, ANTI_DUAL_JSON, ANTI_DUAL_REP_JSON)
    }

    /// Loads the four data files from `dir` (no checksum requirement).
    pub fn from_dir(dir: &Path) -> Result<Self, FormatError> {
        let read = |name: &str| format::read_file(&dir.join(name));
        Self::parse(
            &read(GAME_FILE)?,
            &read(GAME_REP_FILE)?,
            &read(ANTI_DUAL_FILE)?,
            &read(ANTI_DUAL_REP_FILE)?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn coalition(g: &PlayerSet, text: &str) -> Coalition {
    g.parse_coalition(text).expect("fixed coalition name")
}

/// Strict gaps `min_{x ∈ core} x(S) > m(S)` for each named coalition.
fn core_gaps(m: &Game, names: &[&str]) -> (bool, String) {
    let g = m.ground();
    let mut ok = true;
    let mut parts = Vec::new();
    for name in names {
        let s = coalition(g, name);
        match m.min_over_core(s) {
            Some((v, _)) => {
                ok &= v > *m.value(s);
                parts.push(format!("min x({name}) = {v} vs m({name}) = {}", m.value(s)));
            }
            None => {
                ok = false;
                parts.push("empty core".into());
            }
        }
    }
    (ok, parts.join("; "))
}

fn first_mismatch(a: &Game, b: &Game) -> Option<Coalition> {
    all_coalitions(a.ground().n())
        .into_iter()
        .find(|&c| a.value(c) != b.value(c))
}

pub fn verify_counterexample(b: &CounterexampleBundle) -> VerificationReport {
    let g = b.m.ground();
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(Check {
            name: name.into(),
            passed,
            detail,
        })
    };

    let computed = b.m.anti_dual();
    let mismatch = first_mismatch(&computed, &b.ad);
    push(
        "anti-dual matches table",
        mismatch.is_none(),
        match mismatch {
            None => "all 64 coalitions agree".into(),
            Some(c) => format!(
                "differs at {}: computed {}, table {}",
                coalition_key(g, c),
                computed.value(c),
                b.ad.value(c)
            ),
        },
    );

    let ok = verify_min_representation(&b.m, &b.m_rep);
    push(
        "min-representation of game",
        ok,
        format!("{} vectors", b.m_rep.vectors.len()),
    );
    let ok = verify_min_representation(&b.ad, &b.ad_rep);
    push(
        "min-representation of anti-dual",
        ok,
        format!("{} vectors", b.ad_rep.vectors.len()),
    );

    let (tm, ta) = (is_totally_balanced(&b.m), is_totally_balanced(&b.ad));
    push(
        "total balancedness",
        tm && ta,
        format!("game: {tm}, anti-dual: {ta}"),
    );

    let outside: Vec<usize> = b
        .m_rep
        .vectors
        .iter()
        .take(17)
        .enumerate()
        .filter(|(_, x)| !b.m.is_in_core(x))
        .map(|(i, _)| i + 1)
        .collect();
    push(
        "core membership of first 17 vectors",
        b.m_rep.vectors.len() >= 17 && outside.is_empty(),
        if outside.is_empty() {
            "vectors 1-17 lie in the core".into()
        } else {
            format!("outside the core: {outside:?}")
        },
    );

    let (ok, detail) = core_gaps(&b.m, &["ce", "bce"]);
    push("core gaps of game at ce, bce", ok, detail);
    let (ok, detail) = core_gaps(&b.ad, &["adf", "abdf"]);
    push("core gaps of anti-dual at adf, abdf", ok, detail);

    let cert = exactness(&b.m);
    let (ok, detail) = match &cert {
        ExactnessCertificate::NotExact { failing, core_min } => (
            true,
            format!(
                "not exact at {}: core minimum {core_min} > {}",
                coalition_key(g, *failing),
                b.m.value(*failing)
            ),
        ),
        ExactnessCertificate::Exact(_) => (false, "game reported exact".into()),
        ExactnessCertificate::EmptyCore => (false, "game has an empty core".into()),
    };
    push("exactness certificate", ok, detail);

    VerificationReport { checks }
}

/// The coefficient vector that led to the counterexample, with its checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaHatReport {
    pub theta_hat: CoefficientVector,
    /// `Σ_L θ̂(L) = 0` and `Σ_{L ∋ i} θ̂(L) = 0` for all `i`.
    pub zero_sums: bool,
    /// Non-negative on `∅`, `D = ce` and `N`, non-positive elsewhere.
    pub sign_pattern: bool,
    pub value: Rat,
    /// `⟨θ̂, m⟩` after scaling to `θ̂(N) + θ̂(∅) = 1`.
    pub normalized_value: Rat,
}

pub fn counterexample_theta_hat(m: &Game) -> ThetaHatReport {
    let g = m.ground().clone();
    let mut theta = CoefficientVector::zero(g.clone());
    let entries: [(&str, i64); 8] = [
        ("0", 1),
        ("ce", 4),
        ("N", 3),
        ("be", -1),
        ("ace", -3),
        ("bcf", -1),
        ("bcde", -1),
        ("cdef", -2),
    ];
    for (name, v) in entries {
        theta.set(coalition(&g, name), Rat::from_integer(v));
    }
    let d = coalition(&g, "ce");
    let special = [Coalition::EMPTY, d, g.full()];
    let sign_pattern = all_coalitions(g.n()).into_iter().all(|c| {
        let v = theta.get(c);
        if special.contains(&c) {
            !v.is_negative()
        } else {
            !v.is_positive()
        }
    });
    let value = exact_cone::games::evaluate_inequality(&theta, m).expect("same players");
    let scale = theta.get(g.full()) + theta.get(Coalition::EMPTY);
    let normalized_value = &value / &scale;
    ThetaHatReport {
        zero_sums: theta.satisfies_zero_sums(),
        sign_pattern,
        value,
        normalized_value,
        theta_hat: theta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_checksums_match() {
        for ((name, text), (cname, sum)) in embedded_sources().iter().zip(CHECKSUMS) {
            assert_eq!(*name, cname);
            assert_eq!(sha256_hex(text), sum, "{name}");
        }
    }

    #[test]
    fn table_values() {
        let b = CounterexampleBundle::embedded().unwrap();
        let g = b.m.ground();
        assert_eq!(*b.m.value(coalition(g, "ce")), Rat::from_integer(4));
        assert_eq!(*b.m.value(g.full()), Rat::from_integer(20));
        assert_eq!(*b.ad.value(g.full()), Rat::from_integer(-20));
        let v18 = &b.m_rep.vectors[17];
        assert_eq!(v18.sum_over(coalition(g, "ce")), Rat::from_integer(4));
        assert_eq!(v18.sum_over(g.full()), Rat::from_integer(64));
        assert!(!b.m.is_in_core(v18));
        // m(cdef) − m(N) = −4 at ab
        assert_eq!(
            *b.m.anti_dual().value(coalition(g, "ab")),
            Rat::from_integer(-4)
        );
    }

    #[test]
    fn tables_round_trip_through_json() {
        let b = CounterexampleBundle::embedded().unwrap();
        let g = b.m.ground();
        assert_eq!(format::game_to_json(&b.m).trim_end(), GAME_JSON.trim_end());
        assert_eq!(
            format::game_to_json(&b.ad).trim_end(),
            ANTI_DUAL_JSON.trim_end()
        );
        let rep = MinRepresentationFile::from_representation(g, &b.m_rep);
        assert_eq!(
            serde_json::to_string_pretty(&rep).unwrap().trim_end(),
            GAME_REP_JSON.trim_end()
        );
        let rep = MinRepresentationFile::from_representation(g, &b.ad_rep);
        assert_eq!(
            serde_json::to_string_pretty(&rep).unwrap().trim_end(),
            ANTI_DUAL_REP_JSON.trim_end()
        );
    }

    #[test]
    fn theta_hat_separates_the_counterexample() {
        let b = CounterexampleBundle::embedded().unwrap();
        let r = counterexample_theta_hat(&b.m);
        let g = b.m.ground();
        assert_eq!(*r.theta_hat.get(coalition(g, "ace")), Rat::from_integer(-3));
        let total: Rat = r.theta_hat.as_slice().iter().sum();
        assert!(total.is_zero());
        assert!(r.zero_sums && r.sign_pattern);
        assert_eq!(r.value, Rat::from_integer(-4));
        assert!(r.normalized_value.is_negative());
    }
}
