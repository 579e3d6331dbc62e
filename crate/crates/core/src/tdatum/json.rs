use serde::{Deserialize, Serialize};

use super::{validate, ConsistentSubset, TDatum, ValidationReport};
use crate::laurent::{LaurentPoly, PolyMatrix};

/// On-disk form: `{ "r", "D", "A_plus", "A_minus" }` with ascending `z`-coefficient lists,
/// plus an optional consistent subset `"R": { "t", "residues" }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TDatumJson {
    pub r: usize,
    #[serde(rename = "D")]
    pub d: Vec<i64>,
    #[serde(rename = "A_plus")]
    pub a_plus: Vec<Vec<Vec<i64>>>,
    #[serde(rename = "A_minus")]
    pub a_minus: Vec<Vec<Vec<i64>>>,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub residues: Option<ResiduesJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResiduesJson {
    pub t: i64,
    pub residues: Vec<i64>,
}

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("declared r = {declared} but {what} has {found} rows")]
    Size {
        declared: usize,
        what: &'static str,
        found: usize,
    },
    #[error("{0}")]
    Invalid(#[from] ValidationReport),
    #[error("consistent subset needs t > 0 and one residue per index")]
    Residues,
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v)
        .expect("serializable")
        .replace(',', ", ")
        .replace(':', ": ")
}

fn coeff_rows(m: &PolyMatrix) -> Vec<Vec<Vec<i64>>> {
    m.rows()
        .map(|row| {
            row.iter()
                .map(|e| {
                    let v = e.to_ascending().expect("T-data have no negative powers");
                    v.iter()
                        .map(|c| i64::try_from(c).expect("coefficient fits i64"))
                        .collect()
                })
                .collect()
        })
        .collect()
}

impl TDatumJson {
    pub fn from_datum(alpha: &TDatum, rr: Option<&ConsistentSubset>) -> Self {
        Self {
            r: alpha.size(),
            d: alpha.d().to_vec(),
            a_plus: coeff_rows(&alpha.a_plus()),
            a_minus: coeff_rows(&alpha.a_minus()),
            residues: rr.map(|s| ResiduesJson {
                t: s.t(),
                residues: s.residues().to_vec(),
            }),
        }
    }

    pub fn parse(text: &str) -> Result<Self, JsonError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Pretty JSON with one matrix row per line.
    pub fn to_json_string(&self) -> String {
        let matrix = |m: &Vec<Vec<Vec<i64>>>| {
            let rows: Vec<String> = m
                .iter()
                .map(|row| format!("    {}", compact(row)))
                .collect();
            format!("[\n{}\n  ]", rows.join(",\n"))
        };
        let mut out = format!(
            "{{\n  \"r\": {},\n  \"D\": {},\n  \"A_plus\": {},\n  \"A_minus\": {}",
            self.r,
            compact(&self.d),
            matrix(&self.a_plus),
            matrix(&self.a_minus)
        );
        if let Some(rr) = &self.residues {
            out += &format!(",\n  \"R\": {}", compact(rr));
        }
        out + "\n}"
    }

    pub fn to_datum(&self) -> Result<(TDatum, Option<ConsistentSubset>), JsonError> {
        let check = |what: &'static str, m: &Vec<Vec<Vec<i64>>>| {
            if m.len() != self.r || m.iter().any(|row| row.len() != self.r) {
                return Err(JsonError::Size {
                    declared: self.r,
                    what,
                    found: m.len(),
                });
            }
            Ok(PolyMatrix::from_rows(
                m.iter()
                    .map(|row| row.iter().map(|c| LaurentPoly::from_ascending(c)).collect())
                    .collect(),
            ))
        };
        let ap = check("A_plus", &self.a_plus)?;
        let am = check("A_minus", &self.a_minus)?;
        if self.d.len() != self.r {
            return Err(JsonError::Size {
                declared: self.r,
                what: "D",
                found: self.d.len(),
            });
        }
        let alpha = validate(&ap, &am, &self.d)?;
        let rr = match &self.residues {
            None => None,
            Some(s) if s.t > 0 && s.residues.len() == self.r => {
                Some(ConsistentSubset::new(s.t, s.residues.clone()))
            }
            Some(_) => return Err(JsonError::Residues),
        };
        Ok((alpha, rr))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tdatum::catalog;

    #[test]
    fn round_trip() {
        for e in catalog::entries() {
            let j = TDatumJson::from_datum(&e.alpha, Some(&e.r));
            let back = TDatumJson::parse(&j.to_json_string())
                .unwrap()
                .to_datum()
                .unwrap();
            assert_eq!(back, (e.alpha.clone(), Some(e.r.clone())), "{}", e.name);
        }
    }

    #[test]
    fn somos_text() {
        let text = r#"{"r":1,"D":[1],"A_plus":[[[1,0,-2,0,1]]],"A_minus":[[[1,-1,0,-1,1]]]}"#;
        let (alpha, rr) = TDatumJson::parse(text).unwrap().to_datum().unwrap();
        assert_eq!(alpha, catalog::somos4());
        assert!(rr.is_none());
        assert!(matches!(
            TDatumJson::parse("{\"r\":1"),
            Err(JsonError::Syntax(_))
        ));
    }
}
