use super::chain::{BasisLabel, FreeComplex};
use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, Q};
use crate::module::{ModuleVector, OrderedBasis, Term};
use crate::monomial::{Monomial, Multidegree};
use serde::{Deserialize, Serialize};

/// One term `coeff · x^monomial · e_position` with an exact rational string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub monomial: Vec<i32>,
    pub position: usize,
}

/// Wire form of a [`FreeComplex`]. `degrees[p]` lists the basis degrees of
/// `F_p`; `differentials[p-1]` lists the columns of `∂_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub ranks: Vec<usize>,
    pub degrees: Vec<Vec<Vec<i32>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<Vec<BasisLabel>>,
    pub differentials: Vec<Vec<Vec<TermJson>>>,
}

impl FreeComplex {
    pub fn to_json(&self) -> ComplexJson {
        let len = self.length();
        ComplexJson {
            n: self.n(),
            ranks: self.ranks(),
            degrees: (0..=len)
                .map(|p| self.basis(p).degrees().iter().map(|d| d.as_slice().to_vec()).collect())
                .collect(),
            labels: (0..=len).map(|p| self.labels(p).to_vec()).collect(),
            differentials: (1..=len)
                .map(|p| {
                    self.differential(p)
                        .iter()
                        .map(|col| {
                            col.terms()
                                .iter()
                                .map(|t| TermJson {
                                    coeff: t.coeff.to_exact_string(),
                                    monomial: t.monomial.exponents().to_vec(),
                                    position: t.position,
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<FreeComplex> {
        let n = json.n;
        let bases = json
            .degrees
            .iter()
            .map(|ds| OrderedBasis::new(n, ds.iter().map(|d| Multidegree::new(d.clone())).collect()))
            .collect::<Result<Vec<_>>>()?;
        if json.ranks != bases.iter().map(OrderedBasis::len).collect::<Vec<_>>() {
            return Err(Error::InvalidInput("ranks disagree with degree lists".into()));
        }
        let labels = if json.labels.is_empty() {
            bases.iter().map(|b| vec![BasisLabel::Unit; b.len()]).collect()
        } else {
            json.labels.clone()
        };
        let mut differentials = vec![Vec::new()];
        for cols in &json.differentials {
            let mut parsed = Vec::with_capacity(cols.len());
            for col in cols {
                let terms = col
                    .iter()
                    .map(|t| {
                        let coeff = parse_rational(&t.coeff)
                            .ok_or_else(|| Error::InvalidInput(format!("bad rational {:?}", t.coeff)))?;
                        Ok(Term::<Q> { coeff, monomial: Monomial::new(t.monomial.clone())?, position: t.position })
                    })
                    .collect::<Result<Vec<_>>>()?;
                parsed.push(ModuleVector::from_terms(terms));
            }
            differentials.push(parsed);
        }
        FreeComplex::new(n, bases, labels, differentials)
    }
}
