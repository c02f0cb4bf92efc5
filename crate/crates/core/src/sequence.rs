//! Finite sequences over a field, with generator provenance and the plain-text
//! file format.
//!
//! ```text
//! # q=7 kind=periodic params=modulus=0,primitive=3,d=3,b=1,c=3
//! 6
//! 1
//! 3
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{prime_power, Field, FieldElement, FieldError};

#[derive(Debug, Error)]
pub enum SequenceError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// How a sequence was produced. Element parameters are integer encodings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Inversive { a: u32 },
    Periodic { d: u32, b: u32, c: u32 },
    Random { seed: u64 },
    Hermitian { ell: u32, qx: u32, qy: u32 },
    /// Supplied directly (tests, hand-written files).
    Explicit,
}

impl Provenance {
    pub fn kind(&self) -> &'static str {
        match self {
            Provenance::Inversive { .. } => "inversive",
            Provenance::Periodic { .. } => "periodic",
            Provenance::Random { .. } => "random",
            Provenance::Hermitian { .. } => "hermitian",
            Provenance::Explicit => "explicit",
        }
    }

    fn params(&self) -> Vec<(&'static str, String)> {
        match *self {
            Provenance::Inversive { a } => vec![("a", a.to_string())],
            Provenance::Periodic { d, b, c } => {
                vec![("d", d.to_string()), ("b", b.to_string()), ("c", c.to_string())]
            }
            Provenance::Random { seed } => vec![("seed", seed.to_string())],
            Provenance::Hermitian { ell, qx, qy } => {
                vec![("ell", ell.to_string()), ("qx", qx.to_string()), ("qy", qy.to_string())]
            }
            Provenance::Explicit => Vec::new(),
        }
    }

    fn from_params(kind: &str, params: &BTreeMap<String, u64>) -> Result<Provenance, String> {
        let get = |key: &str| params.get(key).copied().ok_or_else(|| format!("missing parameter `{key}`"));
        Ok(match kind {
            "inversive" => Provenance::Inversive { a: get("a")? as u32 },
            "periodic" => Provenance::Periodic { d: get("d")? as u32, b: get("b")? as u32, c: get("c")? as u32 },
            "random" => Provenance::Random { seed: get("seed")? },
            "hermitian" => Provenance::Hermitian { ell: get("ell")? as u32, qx: get("qx")? as u32, qy: get("qy")? as u32 },
            "explicit" => Provenance::Explicit,
            other => return Err(format!("unknown kind `{other}`")),
        })
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Sequence {
    field: Field,
    values: Vec<u32>,
    provenance: Provenance,
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence(q={}, {:?}, {:?})", self.field.q(), self.provenance, self.values)
    }
}

impl Sequence {
    pub fn new(field: Field, values: Vec<u32>, provenance: Provenance) -> Result<Sequence, SequenceError> {
        for &v in &values {
            field.element(v as u64)?;
        }
        Ok(Sequence { field, values, provenance })
    }

    pub fn explicit(field: &Field, values: &[u32]) -> Result<Sequence, SequenceError> {
        Sequence::new(field.clone(), values.to_vec(), Provenance::Explicit)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, i: usize) -> Option<FieldElement> {
        self.values.get(i).map(|&v| self.field.element(v as u64).unwrap())
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// The initial segment of length `n` (clamped to the sequence length).
    pub fn prefix(&self, n: usize) -> Sequence {
        Sequence {
            field: self.field.clone(),
            values: self.values[..n.min(self.len())].to_vec(),
            provenance: self.provenance.clone(),
        }
    }

    /// Termwise product with a scalar. The result is tagged as explicit.
    pub fn scaled(&self, c: u32) -> Sequence {
        Sequence {
            field: self.field.clone(),
            values: self.values.iter().map(|&v| self.field.mul(c, v)).collect(),
            provenance: Provenance::Explicit,
        }
    }

    pub fn header(&self) -> String {
        let mut params = vec![
            ("modulus", self.field.modulus_code().to_string()),
            ("primitive", self.field.primitive().to_string()),
        ];
        params.extend(self.provenance.params());
        let params: Vec<String> = params.into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("# q={} kind={} params={}", self.field.q(), self.provenance.kind(), params.join(","))
    }

    pub fn to_text(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        for v in &self.values {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Sequence, SequenceError> {
        let err = |line: usize, msg: String| SequenceError::Parse { line, msg };
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
        let header = header
            .strip_prefix('#')
            .ok_or_else(|| err(1, "missing `#` header".into()))?
            .trim();
        let mut fields = BTreeMap::new();
        for tok in header.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| err(1, format!("malformed token `{tok}`")))?;
            fields.insert(k, v);
        }
        let q: u64 = fields
            .get("q")
            .ok_or_else(|| err(1, "missing q".into()))?
            .parse()
            .map_err(|e| err(1, format!("bad q: {e}")))?;
        let kind = *fields.get("kind").unwrap_or(&"explicit");
        let mut params = BTreeMap::new();
        if let Some(list) = fields.get("params").filter(|s| !s.is_empty()) {
            for kv in list.split(',') {
                let (k, v) = kv.split_once('=').ok_or_else(|| err(1, format!("malformed parameter `{kv}`")))?;
                let v: u64 = v.parse().map_err(|e| err(1, format!("parameter `{k}`: {e}")))?;
                params.insert(k.to_string(), v);
            }
        }
        let field = field_from_params(q, &params)?;
        let provenance = Provenance::from_params(kind, &params).map_err(|m| err(1, m))?;
        let mut values = Vec::new();
        for (idx, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let v: u64 = line.parse().map_err(|e| err(idx + 1, format!("{e}")))?;
            field.element(v).map_err(|e| err(idx + 1, e.to_string()))?;
            values.push(v as u32);
        }
        Ok(Sequence { field, values, provenance })
    }
}

fn field_from_params(q: u64, params: &BTreeMap<String, u64>) -> Result<Field, SequenceError> {
    let (p, e) = prime_power(q)?;
    let field = match params.get("modulus") {
        Some(&code) => {
            let mut coeffs = Vec::with_capacity(e as usize + 1);
            let mut rest = code;
            for _ in 0..e {
                coeffs.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            coeffs.push(1);
            Field::new(p as u64, e, Some(&coeffs))?
        }
        None => Field::new(p as u64, e, None)?,
    };
    match params.get("primitive") {
        Some(&g) if g != field.primitive() as u64 => Ok(field.with_primitive(g as u32)?),
        _ => Ok(field),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn header_format() {
        let f = Field::of_order(7).unwrap();
        let s = Sequence::new(f, vec![6, 1, 3], Provenance::Periodic { d: 3, b: 1, c: 3 }).unwrap();
        assert_eq!(s.header(), "# q=7 kind=periodic params=modulus=0,primitive=3,d=3,b=1,c=3");
    }

    #[test]
    fn rejects_out_of_range() {
        let f = Field::of_order(5).unwrap();
        assert!(Sequence::explicit(&f, &[1, 5]).is_err());
        assert!(Sequence::from_text("# q=5 kind=explicit params=\n1\n7\n").is_err());
        assert!(Sequence::from_text("q=5\n1\n").is_err());
        assert!(Sequence::from_text("# q=6 kind=explicit\n1\n").is_err());
    }

    #[test]
    fn prefix_and_scale() {
        let f = Field::of_order(5).unwrap();
        let s = Sequence::explicit(&f, &[1, 2, 3]).unwrap();
        assert_eq!(s.prefix(2).values(), &[1, 2]);
        assert_eq!(s.scaled(2).values(), &[2, 4, 1]);
        assert!(!s.is_zero());
    }

    fn provenance() -> impl Strategy<Value = Provenance> {
        prop_oneof![
            (1u32..9).prop_map(|a| Provenance::Inversive { a }),
            (1u32..9, 1u32..9, 1u32..9).prop_map(|(d, b, c)| Provenance::Periodic { d, b, c }),
            any::<u64>().prop_map(|seed| Provenance::Random { seed }),
            (2u32..4, 0u32..9, 0u32..9).prop_map(|(ell, qx, qy)| Provenance::Hermitian { ell, qx, qy }),
            Just(Provenance::Explicit),
        ]
    }

    proptest! {
        #[test]
        fn text_round_trip(q in prop::sample::select(vec![2u64, 4, 9, 16, 25]), g_idx in 0usize..4, prov in provenance(), raw in prop::collection::vec(0u32..1000, 0..20)) {
            let base = Field::of_order(q).unwrap();
            let prims: Vec<u32> = (1..base.q()).filter(|&x| base.order(x).unwrap() == (q - 1)).collect();
            let field = base.with_primitive(prims[g_idx % prims.len()]).unwrap();
            let values: Vec<u32> = raw.iter().map(|v| v % field.q()).collect();
            let s = Sequence::new(field, values, prov).unwrap();
            let back = Sequence::from_text(&s.to_text()).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
