//! Batch-job configuration: a JSON tree describing the ring, the summand
//! family, the primes, and the checks to run, plus the execution driver.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::chevalley::{
    check_corollary, check_thm_no_p, check_thm_p, compare_powers, PowerComparison,
    VerificationReport,
};
use crate::error::{Error, Result};
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::ring::{CoeffDomain, Ring, RingDescriptor};
use crate::summand::{GroupAction, GroupElement, SummandSpec};
use crate::symbolic::{ClosedForm, PrimeSpec};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingConfig {
    pub variables: Vec<String>,
    #[serde(default)]
    pub weights: Option<Vec<u64>>,
    pub p: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum SummandConfig {
    Veronese {
        d: u64,
    },
    Segre {
        rows: usize,
        cols: usize,
    },
    Monomial {
        generators: Vec<String>,
    },
    Invariant {
        #[serde(default)]
        diagonal: Option<Vec<Vec<i8>>>,
        #[serde(default)]
        permutations: Option<Vec<Vec<usize>>>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrimeConfig {
    pub name: String,
    /// Generators in presentation coordinates y1..yt; the literal `p`
    /// denotes the ring prime.
    pub generators: Vec<String>,
    pub contains_p: bool,
    #[serde(default)]
    pub witness: Option<String>,
    /// Optional closed form: "quadric-cone-xy" | "powers-equal".
    #[serde(default)]
    pub closed_form: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum CheckConfig {
    ThmNoP {
        prime: String,
        n_max: u32,
    },
    ThmP {
        prime: String,
        n_max: u32,
    },
    Corollary {
        primes: Vec<String>,
        n_max: u32,
    },
    ComparePowers {
        prime: String,
        n_max: u32,
        /// Probe elements in presentation coordinates; `p` is the prime.
        probes: Vec<String>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct OutputConfig {
    #[serde(default)]
    pub path: Option<String>,
    /// "text" (default) or "machine".
    #[serde(default)]
    pub format: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JobConfig {
    pub ring: RingConfig,
    pub summand: SummandConfig,
    #[serde(default)]
    pub primes: Vec<PrimeConfig>,
    pub checks: Vec<CheckConfig>,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub budget_scale: Option<u64>,
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<JobConfig> {
        // Reject unknown structure early with a JSON-level message.
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::ConfigError(format!("bad JSON: {e}")))?;
        serde_json::from_value(value).map_err(|e| Error::ConfigError(format!("bad config: {e}")))
    }
}

/// Outcome of running one configured check.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CheckOutcome {
    Report(VerificationReport),
    Comparison(PowerComparison),
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        match self {
            CheckOutcome::Report(r) => r.verdict,
            // Comparison tables are observational; they pass by producing
            // rows.
            CheckOutcome::Comparison(_) => true,
        }
    }

    pub fn check_id(&self) -> &str {
        match self {
            CheckOutcome::Report(r) => &r.check,
            CheckOutcome::Comparison(c) => &c.check,
        }
    }
}

/// A fully resolved job: ring, summand, and named primes.
pub struct ResolvedJob {
    pub ring: Ring,
    pub spec: SummandSpec,
    pub primes: BTreeMap<String, PrimeSpec>,
    pub checks: Vec<CheckConfig>,
    pub output: OutputConfig,
}

/// Parses an expression in the presentation ring, with the identifier `p`
/// bound to the ring prime.
pub fn parse_presentation_element(ring: &Ring, text: &str) -> Result<Polynomial> {
    if ring.var_index("p").is_some() {
        return Err(Error::ConfigError(
            "the variable name p is reserved for the ring prime".into(),
        ));
    }
    let extended = ring.extended(&[("p", 1)])?;
    let raw = parse_polynomial(&extended, text)?;
    let n = ring.num_vars();
    let mut images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&extended, i)).collect();
    images.push(Polynomial::constant(&extended, extended.p_bigint()));
    let substituted = raw.apply_endomorphism(&images)?;
    // All p-exponents are gone; restrict back.
    let id_map: Vec<usize> = (0..n).collect();
    Ok(Polynomial::from_terms(
        ring,
        substituted
            .terms()
            .map(|(m, c)| (m.restrict(&id_map), c.clone())),
    ))
}

pub fn resolve(config: &JobConfig) -> Result<ResolvedJob> {
    let weights = config
        .ring
        .weights
        .clone()
        .unwrap_or_else(|| vec![1; config.ring.variables.len()]);
    let ring = Ring::new(RingDescriptor::new(
        config.ring.variables.clone(),
        weights,
        CoeffDomain::Integers,
        config.ring.p,
    )?);

    let spec = match &config.summand {
        SummandConfig::Veronese { d } => SummandSpec::veronese(&ring, *d)?,
        SummandConfig::Segre { rows, cols } => SummandSpec::segre(*rows, *cols, config.ring.p)?,
        SummandConfig::Monomial { generators } => {
            let mut monos = Vec::new();
            for g in generators {
                let poly = parse_polynomial(&ring, g)?;
                if poly.num_terms() != 1 {
                    return Err(Error::ConfigError(format!(
                        "monomial generator {g:?} is not a single term"
                    )));
                }
                let (m, c) = poly.terms().next().unwrap();
                if !num_traits::One::is_one(c) {
                    return Err(Error::ConfigError(format!(
                        "monomial generator {g:?} must have coefficient one"
                    )));
                }
                monos.push(m.clone());
            }
            SummandSpec::monomial_subring(&ring, monos)?
        }
        SummandConfig::Invariant {
            diagonal,
            permutations,
        } => {
            let mut gens: Vec<GroupElement> = Vec::new();
            if let Some(d) = diagonal {
                gens.extend(d.iter().cloned().map(GroupElement::Diagonal));
            }
            if let Some(ps) = permutations {
                gens.extend(ps.iter().cloned().map(GroupElement::Permutation));
            }
            let action = GroupAction::from_generators(gens, ring.num_vars())?;
            SummandSpec::invariant(&ring, action)?
        }
    };

    let pres_ring = spec.presentation_ring()?;
    let mut primes = BTreeMap::new();
    for pc in &config.primes {
        let generators = pc
            .generators
            .iter()
            .map(|g| parse_presentation_element(&pres_ring, g))
            .collect::<Result<Vec<_>>>()?;
        let witness = pc
            .witness
            .as_ref()
            .map(|w| parse_presentation_element(&pres_ring, w))
            .transpose()?;
        let closed_form = match pc.closed_form.as_deref() {
            None => None,
            Some("quadric-cone-xy") => Some(ClosedForm::QuadricConeXY),
            Some("powers-equal") => Some(ClosedForm::PowersEqual),
            Some(other) => {
                return Err(Error::ConfigError(format!("unknown closed form {other:?}")))
            }
        };
        if primes.contains_key(&pc.name) {
            return Err(Error::ConfigError(format!("duplicate prime {:?}", pc.name)));
        }
        primes.insert(
            pc.name.clone(),
            PrimeSpec {
                generators,
                contains_p: pc.contains_p,
                witness,
                closed_form,
                user_supplied: pc.closed_form.is_none(),
                name: pc.name.clone(),
            },
        );
    }

    // Validate check references.
    for check in &config.checks {
        let referenced: Vec<&String> = match check {
            CheckConfig::ThmNoP { prime, .. } | CheckConfig::ThmP { prime, .. } => vec![prime],
            CheckConfig::Corollary { primes: ps, .. } => ps.iter().collect(),
            CheckConfig::ComparePowers { prime, .. } => vec![prime],
        };
        for name in referenced {
            if !primes.contains_key(name) {
                return Err(Error::ConfigError(format!("unknown prime {name:?}")));
            }
        }
        let n_max = match check {
            CheckConfig::ThmNoP { n_max, .. }
            | CheckConfig::ThmP { n_max, .. }
            | CheckConfig::Corollary { n_max, .. }
            | CheckConfig::ComparePowers { n_max, .. } => *n_max,
        };
        if n_max == 0 {
            return Err(Error::ConfigError("n_max must be at least 1".into()));
        }
    }

    Ok(ResolvedJob {
        ring,
        spec,
        primes,
        checks: config.checks.clone(),
        output: config.output.clone(),
    })
}

/// Runs every configured check in order, returning the outcomes.
pub fn run(job: &ResolvedJob) -> Result<Vec<CheckOutcome>> {
    let mut outcomes = Vec::new();
    for check in &job.checks {
        let outcome = match check {
            CheckConfig::ThmNoP { prime, n_max } => {
                CheckOutcome::Report(check_thm_no_p(&job.spec, &job.primes[prime], *n_max)?)
            }
            CheckConfig::ThmP { prime, n_max } => {
                CheckOutcome::Report(check_thm_p(&job.spec, &job.primes[prime], *n_max)?)
            }
            CheckConfig::Corollary { primes, n_max } => {
                let list: Vec<PrimeSpec> = primes.iter().map(|n| job.primes[n].clone()).collect();
                CheckOutcome::Report(check_corollary(&job.spec, &list, *n_max)?)
            }
            CheckConfig::ComparePowers {
                prime,
                n_max,
                probes,
            } => {
                let pres_ring = job.spec.presentation_ring()?;
                let presented = job.spec.presentation()?;
                let parsed: Vec<Polynomial> = probes
                    .iter()
                    .map(|s| {
                        parse_presentation_element(&pres_ring, s)
                            .and_then(|h| presented.substitute(&h))
                    })
                    .collect::<Result<Vec<_>>>()?;
                CheckOutcome::Comparison(compare_powers(
                    &job.spec,
                    &job.primes[prime],
                    *n_max,
                    &parsed,
                )?)
            }
        };
        outcomes.push(outcome);
    }
    Ok(outcomes)
}

/// Re-parse guard used by fuzzing: a config that parses must also resolve or
/// fail with a ConfigError (never panic).
pub fn validate_text(text: &str) -> Result<()> {
    let config = JobConfig::from_json(text)?;
    resolve(&config).map(|_| ())
}
