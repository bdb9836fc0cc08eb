//! The r = 4 classification survey for one prime.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use special_covers::degen::{
    enumerate_r4, enumerate_types, expected_r4_count, normalized_lambda, phi_audit, search_bruteforce,
    EnumerateOptions, SpecialDegenerationDatum,
};
use special_covers::invariants::{disk_radius, monodromy};
use special_covers::FieldElement;

use crate::datum::DatumDto;
use crate::CliError;

pub const SURVEY_SCHEMA: &str = "special-covers/survey/1";
/// First header cell of the CSV form.
pub const CSV_TAG: &str = "survey-1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub p: u64,
    pub m: u64,
    pub a: Vec<u64>,
    pub nu: Vec<i64>,
    /// `None` on the single row of a type without data.
    pub lambda: Option<String>,
    pub lambda_degree: Option<usize>,
    pub expected_count: u64,
    pub found_count: u64,
    pub lemma_ok: bool,
    /// `None` when some conductor is divisible by `p`.
    pub monodromy_order: Option<u64>,
    pub disk_radii: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<DatumDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyDocument {
    pub schema: String,
    pub p: u64,
    pub rows: Vec<SurveyRow>,
    pub anomalies: Vec<String>,
}

fn lambda_key(x: &FieldElement) -> (usize, Vec<u64>) {
    let d = x.descend();
    (d.field().degree(), d.coords().to_vec())
}

/// One block of rows per type class with `nu = (1, 0, 0, 0)` and `m >= 4`.
/// With `oracle = Some(d)` the exhaustive search over extensions of degree
/// at most `d` is run as well and its parameters compared.
pub fn survey(p: u64, oracle: Option<usize>, mu_cap: usize) -> Result<SurveyDocument, CliError> {
    let classes: Vec<_> = enumerate_types(p, 4).into_iter().filter(|c| c.nu == [1, 0, 0, 0]).collect();
    let blocks: Vec<Result<(Vec<SurveyRow>, Vec<String>), CliError>> =
        classes.par_iter().map(|c| survey_type(p, c.m, &c.a, oracle, mu_cap)).collect();
    let mut rows = Vec::new();
    let mut anomalies = Vec::new();
    for b in blocks {
        let (r, a) = b?;
        rows.extend(r);
        anomalies.extend(a);
    }
    Ok(SurveyDocument { schema: SURVEY_SCHEMA.to_string(), p, rows, anomalies })
}

fn survey_type(
    p: u64,
    m: u64,
    a: &[u64],
    oracle: Option<usize>,
    mu_cap: usize,
) -> Result<(Vec<SurveyRow>, Vec<String>), CliError> {
    let nu = vec![1, 0, 0, 0];
    let label = format!("p={p} m={m} a={a:?}");
    let mut anomalies = Vec::new();
    let audit = phi_audit(p, m, a).map_err(|e| CliError::Math(e.to_string()))?;
    let expected = expected_r4_count(p, m, a);
    let options = EnumerateOptions { mu_cap, ..EnumerateOptions::default() };
    let data: Vec<SpecialDegenerationDatum> = match enumerate_r4(p, m, a, options) {
        Ok(d) => d,
        Err(e) => {
            anomalies.push(format!("{label}: {e}"));
            Vec::new()
        }
    };
    let found = data.len() as u64;
    if found != expected {
        anomalies.push(format!("{label}: expected {expected} data, found {found}"));
    }
    if !audit.is_ok() {
        anomalies.push(format!("{label}: classifying polynomial audit failed: {audit:?}"));
    }
    if let Some(deg) = oracle {
        let hits = search_bruteforce(p, m, a, &nu, deg, mu_cap).map_err(|e| CliError::Math(format!("{label}: {e}")))?;
        let mut from_search = BTreeSet::new();
        for h in &hits {
            let l = normalized_lambda(h, [0, 1, 2, 3]).map_err(|e| CliError::Math(format!("{label}: {e}")))?;
            from_search.insert(lambda_key(&l));
        }
        let from_classifier: BTreeSet<_> = data
            .iter()
            .map(|d| lambda_key(&d.r4.as_ref().expect("r4 datum").lambda))
            .filter(|k| k.0 <= deg)
            .collect();
        for k in from_search.symmetric_difference(&from_classifier) {
            let side = if from_search.contains(k) { "search only" } else { "classifier only" };
            anomalies.push(format!("{label}: lambda {k:?} found by {side}"));
        }
    }
    let monodromy_order = monodromy(p, m, a, &nu).ok().map(|x| x.0);
    let disk_radii: Vec<String> = a
        .iter()
        .zip(&nu)
        .map(|(&x, &n)| disk_radius(p, x, n, m).map_or_else(|_| "-".to_string(), |r| r.to_string()))
        .collect();
    let row = |lambda: Option<String>, lambda_degree, datum| SurveyRow {
        p,
        m,
        a: a.to_vec(),
        nu: nu.clone(),
        lambda,
        lambda_degree,
        expected_count: expected,
        found_count: found,
        lemma_ok: audit.is_ok(),
        monodromy_order,
        disk_radii: disk_radii.clone(),
        datum,
    };
    let rows = if data.is_empty() {
        vec![row(None, None, None)]
    } else {
        data.iter()
            .map(|d| {
                let l = d.r4.as_ref().expect("r4 datum").lambda.descend();
                row(Some(l.to_string()), Some(l.field().degree()), Some(DatumDto::from_datum(d)))
            })
            .collect()
    };
    Ok((rows, anomalies))
}

pub fn write_csv<W: std::io::Write>(doc: &SurveyDocument, out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record([
        CSV_TAG,
        "p",
        "m",
        "a",
        "nu",
        "lambda",
        "lambda_degree",
        "expected_count",
        "found_count",
        "lemma_ok",
        "monodromy_order",
        "disk_radii",
    ])
    .map_err(io)?;
    let join = |v: Vec<String>| v.join(" ");
    for r in &doc.rows {
        w.write_record([
            if r.lambda.is_some() { "datum" } else { "none" }.to_string(),
            r.p.to_string(),
            r.m.to_string(),
            join(r.a.iter().map(u64::to_string).collect()),
            join(r.nu.iter().map(i64::to_string).collect()),
            r.lambda.clone().unwrap_or_default(),
            r.lambda_degree.map(|d| d.to_string()).unwrap_or_default(),
            r.expected_count.to_string(),
            r.found_count.to_string(),
            r.lemma_ok.to_string(),
            r.monodromy_order.map(|g| g.to_string()).unwrap_or_default(),
            join(r.disk_radii.clone()),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}
