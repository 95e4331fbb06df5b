//! Canonical JSON forms.
//!
//! Rationals serialize as `"num/den"` strings, always with an explicit
//! denominator (`"3/1"`, `"-2/5"`), so emitted files are bit-identical
//! across runs and platforms. Polynomial terms serialize in the storage
//! order (ascending lexicographic exponents), so no sorting happens at the
//! boundary.

use crate::error::{Error, Result};
use crate::poly::{LinearForm, SparsePoly};
use crate::rational::{self, Rational};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    dim: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for SparsePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = PolyRepr {
            dim: self.dim(),
            terms: self
                .terms()
                .map(|(m, c)| TermRepr {
                    exps: m.0.clone(),
                    coeff: rational::format_rational(c),
                })
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let c = rational::parse_rational(&t.coeff).map_err(D::Error::custom)?;
            terms.push((t.exps, c));
        }
        SparsePoly::from_terms(repr.dim, terms).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    coeffs: Vec<String>,
    #[serde(rename = "const")]
    constant: String,
}

impl Serialize for LinearForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = FormRepr {
            coeffs: self.coeffs.iter().map(rational::format_rational).collect(),
            constant: rational::format_rational(&self.constant),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FormRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| rational::parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let constant = rational::parse_rational(&repr.constant).map_err(D::Error::custom)?;
        Ok(LinearForm::new(coeffs, constant))
    }
}

/// Field adapter: `#[serde(with = "crate::json::serde_rational")]`.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(
        x: &Rational,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational::format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        rational::parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Field adapter for rational vectors (points, directions).
pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[Rational],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(rational::format_rational).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| rational::parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)
    }
}

/// Field adapter for lists of rational points.
pub mod serde_rational_mat {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[Vec<Rational>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = v
            .iter()
            .map(|row| row.iter().map(rational::format_rational).collect())
            .collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        let strs = Vec::<Vec<String>>::deserialize(d)?;
        strs.iter()
            .map(|row| {
                row.iter()
                    .map(|s| rational::parse_rational(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)
    }
}

/// Parses the text H-representation: one inequality `a . x + c >= 0` per
/// line, written as `a1 a2 ... ad c` (whitespace separated). Blank lines
/// and `#` comments are skipped; the dimension is inferred from the first
/// data line.
pub fn parse_hrep_text(text: &str, allow_decimal: bool) -> Result<(usize, Vec<LinearForm>)> {
    let mut dim: Option<usize> = None;
    let mut forms = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 2 {
            return Err(Error::Parse(format!(
                "line {}: need at least one coefficient and a constant",
                lineno + 1
            )));
        }
        let d = toks.len() - 1;
        match dim {
            None => dim = Some(d),
            Some(prev) if prev != d => {
                return Err(Error::Parse(format!(
                    "line {}: expected {} coefficients + constant, got {}",
                    lineno + 1,
                    prev,
                    d
                )))
            }
            _ => {}
        }
        let mut vals = Vec::with_capacity(toks.len());
        for t in &toks {
            vals.push(rational::parse_rational_opt_decimal(t, allow_decimal)?);
        }
        let constant = vals.pop().unwrap();
        forms.push(LinearForm::new(vals, constant));
    }
    let dim = dim.ok_or_else(|| Error::Parse("empty H-representation".into()))?;
    Ok((dim, forms))
}

/// Renders the text H-representation (exact `num/den` tokens).
pub fn format_hrep_text(forms: &[LinearForm]) -> String {
    let mut out = String::new();
    for f in forms {
        let mut toks: Vec<String> = f.coeffs.iter().map(rational::format_rational).collect();
        toks.push(rational::format_rational(&f.constant));
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::SparsePoly;
    use crate::rational::{int, rat};

    #[test]
    fn poly_json_round_trip_is_bit_exact() {
        let x = SparsePoly::var(2, 0);
        let y = SparsePoly::var(2, 1);
        let p = &(&x * &x).scale(&rat(-7, 3)) + &(&y + &SparsePoly::constant(2, int(4)));
        let s1 = serde_json::to_string(&p).unwrap();
        let q: SparsePoly = serde_json::from_str(&s1).unwrap();
        assert_eq!(p, q);
        let s2 = serde_json::to_string(&q).unwrap();
        assert_eq!(s1, s2);
        // Canonical coefficient strings always carry a denominator.
        assert!(s1.contains("4/1"));
    }

    #[test]
    fn hrep_text_round_trip() {
        let text = "1 0 0\n-1 0 1\n# a comment\n0 1/2 -3/4\n";
        let (dim, forms) = parse_hrep_text(text, false).unwrap();
        assert_eq!(dim, 2);
        assert_eq!(forms.len(), 3);
        assert_eq!(forms[2].constant, rat(-3, 4));
        let rendered = format_hrep_text(&forms);
        let (dim2, forms2) = parse_hrep_text(&rendered, false).unwrap();
        assert_eq!(dim2, 2);
        assert_eq!(forms, forms2);
    }

    #[test]
    fn decimal_rejected_unless_allowed() {
        assert!(parse_hrep_text("0.5 1\n", false).is_err());
        let (_, forms) = parse_hrep_text("0.5 1\n", true).unwrap();
        assert_eq!(forms[0].coeffs[0], rat(1, 2));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(parse_hrep_text("1 2 3\n1 2\n", false).is_err());
    }
}
