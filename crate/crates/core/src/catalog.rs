//! JSON-lines knot records and per-record invariant reports.
//!
//! One record per line: `{name, pd, sigma?, upsilon?, tags?, aliases?, note?}`. The
//! signature, when stored, must match the Goeritz signature of the code
//! unless the record is tagged `external-sigma-override`. Upsilon is never
//! computed here; `note` says where it came from.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{parse_pd, DiagramError, KnotDiagram};
use crate::geography::{
    alternating_region, gamma_hat_from_surfaces, oss_gamma4_bound, oss_sg_bounds, state_region,
    turaev_genus_diagram, BoundKind, GeographyReport,
};
use crate::rational::{self, Rational};
use crate::signature::goeritz_signature;
use crate::states::{state_masks, State, StateReport, SurfacePoint};

pub const SIGMA_OVERRIDE_TAG: &str = "external-sigma-override";

const BUNDLED: &str = include_str!("../data/knots.jsonl");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read {path}: {source}")]
    FileUnreadable {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    FileUnwritable {
        path: String,
        source: std::io::Error,
    },
}

/// A bad line, reported without stopping the load.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct MalformedRecord {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotRecord {
    pub name: String,
    pub pd: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upsilon: Option<i64>,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub tags: BTreeSet<String>,
    /// Other names accepted by lookups.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl KnotRecord {
    pub fn new(name: impl Into<String>, d: &KnotDiagram) -> Self {
        KnotRecord {
            name: name.into(),
            pd: d.to_pd_string(),
            sigma: None,
            upsilon: None,
            tags: BTreeSet::new(),
            aliases: Vec::new(),
            note: None,
        }
    }

    pub fn diagram(&self) -> Result<KnotDiagram, DiagramError> {
        Ok(parse_pd(&self.pd)?.with_label(self.name.clone()))
    }

    /// Parses the code and checks a stored signature.
    pub fn validate(&self) -> Result<KnotDiagram, String> {
        let d = self.diagram().map_err(|e| e.to_string())?;
        if let Some(s) = self.sigma {
            if !self.tags.contains(SIGMA_OVERRIDE_TAG) {
                let computed = goeritz_signature(&d);
                if computed != s {
                    return Err(format!("stored sigma {s} differs from computed {computed}"));
                }
            }
        }
        Ok(d)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoadedCatalog {
    pub records: Vec<KnotRecord>,
    pub errors: Vec<MalformedRecord>,
}

impl LoadedCatalog {
    pub fn find(&self, name: &str) -> Option<&KnotRecord> {
        self.records
            .iter()
            .find(|r| r.name == name || r.aliases.iter().any(|a| a == name))
    }
}

pub fn parse_catalog(text: &str) -> LoadedCatalog {
    let mut out = LoadedCatalog::default();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let rec = serde_json::from_str::<KnotRecord>(line)
            .map_err(|e| e.to_string())
            .and_then(|r| r.validate().map(|_| r));
        match rec {
            Ok(r) => out.records.push(r),
            Err(message) => out.errors.push(MalformedRecord { line: i + 1, message }),
        }
    }
    out
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<LoadedCatalog, CatalogError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| CatalogError::FileUnreadable {
        path: path.display().to_string(),
        source,
    })?;
    Ok(parse_catalog(&text))
}

pub fn save_catalog(records: &[KnotRecord], path: impl AsRef<Path>) -> Result<(), CatalogError> {
    let path = path.as_ref();
    let mut text = String::new();
    for r in records {
        text.push_str(&serde_json::to_string(r).expect("records serialize"));
        text.push('\n');
    }
    fs::write(path, text).map_err(|source| CatalogError::FileUnwritable {
        path: path.display().to_string(),
        source,
    })
}

/// The catalog shipped with the crate.
pub fn bundled_catalog() -> LoadedCatalog {
    parse_catalog(BUNDLED)
}

pub fn bundled_text() -> &'static str {
    BUNDLED
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaHatReport {
    #[serde(with = "rational::serde_rational")]
    pub gamma_hat_plus: Rational,
    #[serde(with = "rational::serde_rational")]
    pub gamma_hat_minus: Rational,
    pub bound_kind: BoundKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OssReport {
    pub lower_plus: i64,
    pub lower_minus: i64,
    #[serde(with = "rational::serde_rational")]
    pub gamma4_bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordReport {
    pub name: String,
    pub crossings: usize,
    pub writhe: i64,
    pub sigma: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_stored: Option<i64>,
    pub alternating: bool,
    pub reduced: bool,
    pub turaev_genus_diagram: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basic_states: Option<Vec<StateReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geography: Option<GeographyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_hat: Option<GammaHatReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oss: Option<OssReport>,
}

/// Report for one record. Parts that need state enumeration are omitted
/// past `cap` crossings.
pub fn record_report(r: &KnotRecord, cap: usize) -> Result<RecordReport, String> {
    let d = r.validate()?;
    let sigma = goeritz_signature(&d);
    let alternating = d.is_alternating();
    let reduced = d.is_reduced();
    let basic = state_masks(&d, true, cap).ok();
    let basic_states = basic.as_ref().map(|ms| {
        ms.iter()
            .map(|&m| State::from_mask(&d, m).surface().report())
            .collect::<Vec<_>>()
    });
    let exact = alternating && reduced;
    let region = if basic.is_none() {
        None
    } else if exact {
        alternating_region(&d).ok()
    } else {
        state_region(&d, true, cap).ok()
    };
    let kind = if exact { BoundKind::Exact } else { BoundKind::Upper };
    let geography = region
        .as_ref()
        .and_then(|reg| GeographyReport::new(reg, sigma, kind).ok());
    let gamma_hat = region.as_ref().and_then(|reg| {
        let pts: Vec<SurfacePoint> = reg
            .apexes
            .iter()
            .map(|w| SurfacePoint::new(w.apex_e, w.apex_b, false, crate::states::Provenance::StateSurface))
            .collect();
        gamma_hat_from_surfaces(&pts, sigma).ok().map(|g| GammaHatReport {
            gamma_hat_plus: g.gamma_plus,
            gamma_hat_minus: g.gamma_minus,
            bound_kind: kind,
        })
    });
    let oss = r.upsilon.map(|u| {
        let (lower_plus, lower_minus) = oss_sg_bounds(sigma, u);
        OssReport {
            lower_plus,
            lower_minus,
            gamma4_bound: oss_gamma4_bound(sigma, u),
        }
    });
    Ok(RecordReport {
        name: r.name.clone(),
        crossings: d.crossing_count(),
        writhe: d.writhe(),
        sigma,
        sigma_stored: r.sigma,
        alternating,
        reduced,
        turaev_genus_diagram: turaev_genus_diagram(&d),
        basic_states,
        geography,
        gamma_hat,
        oss,
    })
}

/// Reports in input order; a failing record does not affect the others.
pub fn batch_report(records: &[KnotRecord], cap: usize) -> Vec<Result<RecordReport, String>> {
    records.par_iter().map(|r| record_report(r, cap)).collect()
}
