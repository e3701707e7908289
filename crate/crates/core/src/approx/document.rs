//! JSON form of an approximant:
//! `{"k", "c", "precision_bits", "interval": [a, b], "terms": [[y, a_j], ...]}`.
//! Coefficients are exact decimal expansions of the stored binary values, so a
//! round trip reproduces every coefficient bit for bit.

use serde::{Deserialize, Serialize};

use super::{Approximant, Interval, Term};
use crate::error::{Error, Result};
use crate::expansion::MultiquadricParams;
use crate::scalar::{format_exact, parse_rational, AdjustableReal};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Literal {
    Text(String),
    Number(serde_json::Number),
}

impl Literal {
    fn as_text(&self) -> String {
        match self {
            Literal::Text(s) => s.clone(),
            Literal::Number(n) => n.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Document {
    k: u32,
    c: Literal,
    precision_bits: u32,
    interval: [f64; 2],
    terms: Vec<(Literal, String)>,
}

impl Approximant {
    pub fn to_json(&self) -> String {
        let doc = Document {
            k: self.params.k(),
            c: Literal::Text(format_exact(self.params.c())),
            precision_bits: self.precision,
            interval: [self.interval.a(), self.interval.b()],
            terms: self
                .terms
                .iter()
                .map(|t| (Literal::Text(format_exact(&t.center)), t.coefficient.to_decimal_string()))
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let params = MultiquadricParams::new(doc.k, parse_rational(&doc.c.as_text())?)?;
        let interval = Interval::new(doc.interval[0], doc.interval[1])?;
        let terms = doc
            .terms
            .iter()
            .map(|(y, a)| {
                Ok(Term {
                    center: parse_rational(&y.as_text())?,
                    coefficient: AdjustableReal::from_rational(&parse_rational(a)?, doc.precision_bits),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Approximant::new(params, terms, interval, doc.precision_bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::recover_expansion_polynomial;
    use crate::centers::CenterSet;
    use crate::scalar::{integer, rational};

    #[test]
    fn round_trip_is_bit_exact() {
        let params = MultiquadricParams::new(2, rational(1, 2)).unwrap();
        let centers = CenterSet::new((0..6).map(|i| integer(10 << i)).collect()).unwrap();
        let appr = recover_expansion_polynomial(&params, 1, &centers, Interval::new(-1.0, 1.0).unwrap(), None).unwrap();
        let back = Approximant::from_json(&appr.to_json()).unwrap();
        assert_eq!(back.terms(), appr.terms());
        assert_eq!(back.precision(), appr.precision());
        for x in [-1.0, -0.3, 0.0, 0.77, 1.0] {
            assert_eq!(back.evaluate(x).to_bits(), appr.evaluate(x).to_bits());
        }
    }

    #[test]
    fn accepts_numeric_literals() {
        let doc = r#"{"k": 1, "c": 1, "precision_bits": 64, "interval": [0, 1],
                      "terms": [[8, "1"]]}"#;
        let appr = Approximant::from_json(doc).unwrap();
        assert!((appr.evaluate(0.0) - 65f64.sqrt()).abs() < 1e-15);
        assert!(Approximant::from_json(r#"{"k": 1}"#).is_err());
    }
}
