//! Regression corpus of printed curves with claimed orders.

use num::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{parse_rational, QPoly, Rational, Rationals};
use crate::families::{build_family, expected_orders, Family, FamilyError, FamilyParams};
use crate::jacobian::{CurvePoint, HyperellipticCurve};
use crate::modp::{cross_check, select_good_primes, ModpError};
use crate::torsion::{certify_exact_order, order_of_class, TorsionCertificate, TorsionError};

/// The corpus shipped with the crate.
pub const SHIPPED_CORPUS: &str = include_str!("../data/corpus.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("malformed corpus: {0}")]
    Parse(String),
    #[error("entry {name}: {reason}")]
    Malformed { name: String, reason: String },
    #[error("entry {name}: {source}")]
    Torsion { name: String, source: TorsionError },
    #[error("entry {name}: {source}")]
    Modp { name: String, source: ModpError },
}

/// Family parameters as written in JSON and on the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub g: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
}

impl FamilySpec {
    pub fn to_params(&self) -> Result<FamilyParams, FamilyError> {
        let parse = |s: &Option<String>| {
            s.as_deref()
                .map(parse_rational)
                .transpose()
                .map_err(|e| FamilyError::InvalidParams(e.to_string()))
        };
        FamilyParams::from_parts(self.family, self.g, parse(&self.t)?, parse(&self.beta)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    /// Integer coefficients, ascending.
    pub f_int: Vec<String>,
    pub genus: u32,
    pub point: [String; 2],
    pub claimed_order: u64,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
}

/// A corpus entry after validation.
#[derive(Clone, Debug)]
pub struct LoadedEntry {
    pub entry: CorpusEntry,
    pub curve: HyperellipticCurve<Rationals>,
    pub point: CurvePoint<Rational>,
    pub params: Option<FamilyParams>,
}

impl CorpusEntry {
    pub fn load(&self) -> Result<LoadedEntry, CorpusError> {
        let bad = |reason: String| CorpusError::Malformed { name: self.name.clone(), reason };
        let f = QPoly::from_strings(&self.f_int).map_err(|e| bad(e.to_string()))?;
        if f.coeffs().iter().any(|c| !c.is_integer()) {
            return Err(bad("f_int has non-integer coefficients".into()));
        }
        let curve = HyperellipticCurve::new(f).map_err(|e| bad(e.to_string()))?;
        if curve.genus() != self.genus as usize {
            return Err(bad(format!("declared genus {} but f has genus {}", self.genus, curve.genus())));
        }
        let x = parse_rational(&self.point[0]).map_err(|e| bad(e.to_string()))?;
        let y = parse_rational(&self.point[1]).map_err(|e| bad(e.to_string()))?;
        if !curve.contains(&x, &y) {
            return Err(bad("point is not on the curve".into()));
        }
        if self.claimed_order == 0 {
            return Err(bad("claimed order must be at least 1".into()));
        }
        let params = self
            .family
            .as_ref()
            .map(|s| s.to_params())
            .transpose()
            .map_err(|e| bad(e.to_string()))?;
        Ok(LoadedEntry { entry: self.clone(), curve, point: CurvePoint::affine(x, y), params })
    }
}

pub fn parse_corpus(json: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    serde_json::from_str(json).map_err(|e| CorpusError::Parse(e.to_string()))
}

/// Whether `g = k^2 f` for some nonzero rational `k`.
pub fn same_up_to_square(f: &QPoly, g: &QPoly) -> bool {
    if f.degree() != g.degree() || f.is_zero() {
        return false;
    }
    let ratio = g.leading().unwrap() / f.leading().unwrap();
    if f.scale(&ratio) != *g || ratio.is_negative() {
        return false;
    }
    let is_square = |n: &num::BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    is_square(ratio.numer()) && is_square(ratio.denom())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub name: String,
    pub claimed: u64,
    pub computed: Option<u64>,
    pub family_match: Option<bool>,
    pub status: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub summary: SummaryRow,
    pub certificate: TorsionCertificate,
}

/// Certify one entry. The computed order starts from the family's bound when
/// family parameters are present, and from the claimed order otherwise.
pub fn run_entry(entry: &CorpusEntry, modp_primes: usize) -> Result<EntryReport, CorpusError> {
    let loaded = entry.load()?;
    let name = entry.name.clone();
    let torsion = |source| CorpusError::Torsion { name: name.clone(), source };
    let n = entry.claimed_order;
    let mut cert = certify_exact_order(&loaded.curve, &loaded.point, n).map_err(torsion)?;

    let multiple = loaded.params.as_ref().map(|p| expected_orders(p).bound).unwrap_or(n);
    let d = loaded.curve.divisor_from_point(&loaded.point).map_err(|e| torsion(e.into()))?;
    let computed = match order_of_class(&loaded.curve, &d, multiple) {
        Ok(o) => Some(o),
        Err(TorsionError::NotAMultiple { .. }) => None,
        Err(e) => return Err(torsion(e)),
    };

    let family_match = match &loaded.params {
        Some(params) => Some(match build_family(params) {
            Ok(model) => same_up_to_square(model.f_int(), loaded.curve.f()),
            Err(_) => false,
        }),
        None => None,
    };

    if modp_primes > 0 {
        let modp = |source| CorpusError::Modp { name: name.clone(), source };
        let primes = select_good_primes(loaded.curve.f(), n, modp_primes).map_err(modp)?;
        let checks = cross_check(loaded.curve.f(), &loaded.point, n, &primes).map_err(modp)?;
        cert.attach_modp(&checks);
    }

    let pass = cert.valid && computed == Some(n) && family_match != Some(false);
    Ok(EntryReport {
        summary: SummaryRow {
            name,
            claimed: n,
            computed,
            family_match,
            status: if pass { "pass" } else { "fail" },
        },
        certificate: cert,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub summary: Vec<SummaryRow>,
    pub certificates: Vec<TorsionCertificate>,
    pub pass: bool,
}

/// Run every entry on a pool of `jobs` threads. Output order follows the
/// corpus regardless of completion order. Entries are validated up front.
pub fn run_corpus(entries: &[CorpusEntry], modp_primes: usize, jobs: usize) -> Result<CorpusReport, CorpusError> {
    for e in entries {
        e.load()?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let reports: Vec<EntryReport> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| run_entry(e, modp_primes))
            .collect::<Result<_, _>>()
    })?;
    let pass = reports.iter().all(|r| r.summary.status == "pass");
    let (summary, certificates) = reports.into_iter().map(|r| (r.summary, r.certificate)).unzip();
    Ok(CorpusReport { summary, certificates, pass })
}
