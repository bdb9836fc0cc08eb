//! JSON form of a special degeneration datum.
//!
//! Field elements are coordinate lists over the prime field in the basis
//! `1, t, ..., t^{n-1}` of `F_p[t]/(modulus)`. Only the default modulus of
//! each degree is accepted.

use serde::{Deserialize, Serialize};
use special_covers::cover::{BranchPoint, CoverType, EigenDifferential};
use special_covers::degen::{Scaling, SpecialDegenerationDatum};
use special_covers::{field_make, Field, FieldElement, Polynomial};

use crate::CliError;

pub const DATUM_SCHEMA: &str = "special-covers/datum/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaDto {
    /// Coefficients of `U`, lowest degree first.
    pub numerator: Vec<Vec<u64>>,
    /// Exponent of `x - tau_i` in the denominator, per branch point.
    pub denominator: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScalingDto {
    Fixed,
    Radical { radicand: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumDto {
    pub schema: String,
    pub p: u64,
    pub n: usize,
    pub modulus: Vec<u64>,
    pub m: u64,
    /// `null` is the point at infinity.
    pub points: Vec<Option<Vec<u64>>>,
    pub a: Vec<u64>,
    pub nu: Vec<i64>,
    pub omega: OmegaDto,
    pub scaling: ScalingDto,
    /// The normal-form parameter, for reference only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
}

impl DatumDto {
    pub fn from_datum(d: &SpecialDegenerationDatum) -> Self {
        let f = d.field();
        let coords = |x: &FieldElement| x.coords().to_vec();
        DatumDto {
            schema: DATUM_SCHEMA.to_string(),
            p: f.characteristic(),
            n: f.degree(),
            modulus: f.modulus().to_vec(),
            m: d.m(),
            points: d.cover.points().iter().map(|pt| pt.finite().map(coords)).collect(),
            a: d.cover.a().to_vec(),
            nu: d.nu.clone(),
            omega: OmegaDto {
                numerator: d.omega.numerator().coeffs().iter().map(coords).collect(),
                denominator: d.omega.denom_exps().to_vec(),
            },
            scaling: match &d.scaling {
                Scaling::Fixed => ScalingDto::Fixed,
                Scaling::Radical { radicand } => ScalingDto::Radical { radicand: coords(radicand) },
            },
            lambda: d.r4.as_ref().map(|n| n.lambda.descend().to_string()),
        }
    }

    pub fn to_datum(&self) -> Result<SpecialDegenerationDatum, CliError> {
        let bad = |s: String| CliError::Input(s);
        if self.schema != DATUM_SCHEMA {
            return Err(bad(format!("unknown schema {:?}, expected {DATUM_SCHEMA:?}", self.schema)));
        }
        let f = field_make(self.p, self.n).map_err(|e| bad(e.to_string()))?;
        if f.modulus() != self.modulus.as_slice() {
            return Err(bad(format!("modulus {:?} is not the default {:?}", self.modulus, f.modulus())));
        }
        let el = |c: &Vec<u64>| element(&f, c);
        let points = self
            .points
            .iter()
            .map(|pt| match pt {
                None => Ok(BranchPoint::Infinity),
                Some(c) => el(c).map(BranchPoint::Finite),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if points.len() != self.a.len() {
            return Err(bad(format!("{} points but {} exponents", points.len(), self.a.len())));
        }
        if self.omega.denominator.len() != points.len() {
            return Err(bad(format!("{} denominator exponents for {} points", self.omega.denominator.len(), points.len())));
        }
        if points.iter().zip(&self.omega.denominator).any(|(pt, &c)| pt.is_infinity() && c != 0) {
            return Err(bad("nonzero denominator exponent at infinity".to_string()));
        }
        let cover = CoverType::new(&f, self.m, points, self.a.clone());
        let numerator = Polynomial::new(&f, self.omega.numerator.iter().map(el).collect::<Result<Vec<_>, _>>()?);
        let denom: Vec<i64> = self.omega.denominator.iter().map(|&c| c as i64).collect();
        let omega = EigenDifferential::new(&cover, numerator, &denom).map_err(|e| bad(e.to_string()))?;
        let scaling = match &self.scaling {
            ScalingDto::Fixed => Scaling::Fixed,
            ScalingDto::Radical { radicand } => Scaling::Radical { radicand: el(radicand)? },
        };
        Ok(SpecialDegenerationDatum { cover, nu: self.nu.clone(), omega, scaling, r4: None })
    }
}

fn element(f: &Field, c: &[u64]) -> Result<FieldElement, CliError> {
    let mut c = c.to_vec();
    if c.len() > f.degree() {
        return Err(CliError::Input(format!("element {c:?} has more than {} coordinates", f.degree())));
    }
    if let Some(&x) = c.iter().find(|&&x| x >= f.characteristic()) {
        return Err(CliError::Input(format!("coordinate {x} is not reduced mod {}", f.characteristic())));
    }
    c.resize(f.degree(), 0);
    f.element(c).map_err(|e| CliError::Input(e.to_string()))
}
