use std::sync::Arc;

use serde_json::{json, Value};

use super::map::{EntryKind, MatrixMap, RationalMap};
use super::variety::Variety;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Named varieties available when reading map files: user entries first,
/// then the built-in families.
#[derive(Debug, Clone, Default)]
pub struct VarietyRegistry {
    entries: Vec<Arc<Variety>>,
}

impl VarietyRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: Arc<Variety>) {
        self.entries.retain(|e| e.name() != v.name());
        self.entries.push(v);
    }

    pub fn resolve(&self, name: &str) -> Result<Arc<Variety>> {
        if let Some(v) = self.entries.iter().find(|v| v.name() == name) {
            return Ok(v.clone());
        }
        Variety::by_name(name)
    }

    /// `{"varieties": [...]}` with one entry per variety.
    pub fn to_json(&self) -> Value {
        json!({ "varieties": self.entries.iter().map(|v| v.to_json()).collect::<Vec<_>>() })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let list = value
            .get("varieties")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("registry file needs a `varieties` array".into()))?;
        let mut reg = Self::new();
        for v in list {
            reg.insert(Variety::from_json(v)?);
        }
        Ok(reg)
    }
}

impl RationalMap {
    /// Map file format; variable ids index the domain's variable list.
    pub fn to_json(&self) -> Value {
        json!({
            "domain": self.domain().name(),
            "codomain": self.codomain().name(),
            "numerators": self.numerators().iter().map(Polynomial::to_json).collect::<Vec<_>>(),
            "denominator": self.denominator().to_json(),
            "excluded": self.excluded(),
        })
    }

    pub fn from_json(value: &Value, varieties: &VarietyRegistry) -> Result<Self> {
        let field = |k: &str| value.get(k).ok_or_else(|| Error::Parse(format!("map: missing `{k}`")));
        let name = |k: &str| -> Result<String> {
            field(k)?
                .as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Parse(format!("map: `{k}` must be a string")))
        };
        let domain = varieties.resolve(&name("domain")?)?;
        let codomain = varieties.resolve(&name("codomain")?)?;
        let reg = domain.registry().clone();
        let numerators = field("numerators")?
            .as_array()
            .ok_or_else(|| Error::Parse("map: `numerators` must be an array".into()))?
            .iter()
            .map(|p| Polynomial::from_json(p, &reg))
            .collect::<Result<Vec<_>>>()?;
        let denominator = Polynomial::from_json(field("denominator")?, &reg)?;
        let excluded = value.get("excluded").and_then(Value::as_str).unwrap_or("unspecified");
        RationalMap::new(domain, codomain, numerators, denominator, excluded)
    }
}

impl MatrixMap {
    /// Map file format plus `rows`, `cols`, and `entries` (`real` or `complex`).
    pub fn to_json(&self) -> Value {
        let mut v = self.base().to_json();
        v["rows"] = json!(self.rows());
        v["cols"] = json!(self.cols());
        v["entries"] = json!(match self.kind() {
            EntryKind::Real => "real",
            EntryKind::Complex => "complex",
        });
        v
    }

    pub fn from_json(value: &Value, varieties: &VarietyRegistry) -> Result<Self> {
        let base = RationalMap::from_json(value, varieties)?;
        let dim = |k: &str| {
            value
                .get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("matrix map: missing integer `{k}`")))
        };
        let kind = match value.get("entries").and_then(Value::as_str).unwrap_or("real") {
            "real" => EntryKind::Real,
            "complex" => EntryKind::Complex,
            other => return Err(Error::Parse(format!("matrix map: unknown entry kind `{other}`"))),
        };
        MatrixMap::new(base, dim("rows")?, dim("cols")?, kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn map_round_trip() {
        let s1 = Variety::sphere(1);
        let r = s1.registry();
        let f = RationalMap::new(
            s1.clone(),
            Variety::affine(1),
            vec![Polynomial::var(r, 1)],
            Polynomial::one(r) + Polynomial::var(r, 0),
            "{-e}",
        )
        .unwrap();
        let text = serde_json::to_string(&f.to_json()).unwrap();
        let back = RationalMap::from_json(&serde_json::from_str(&text).unwrap(), &VarietyRegistry::new()).unwrap();
        assert_eq!(back.numerators(), f.numerators());
        assert_eq!(back.denominator(), f.denominator());
        assert_eq!(back.excluded(), "{-e}");
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
    }

    #[test]
    fn schema_errors() {
        let v = json!({"domain": "S^1", "codomain": "Q^7", "numerators": [], "denominator": []});
        assert!(RationalMap::from_json(&v, &VarietyRegistry::new()).is_err());
        let v = json!({"domain": "S^1", "codomain": "R^1", "numerators": [[{"c": "1", "m": []}]], "denominator": []});
        // zero denominator
        assert!(matches!(
            RationalMap::from_json(&v, &VarietyRegistry::new()),
            Err(Error::ZeroDenominator(_))
        ));
        let _ = int(0);
    }

    #[test]
    fn custom_varieties_resolve_first() {
        let mut reg = VarietyRegistry::new();
        let base = Variety::sphere(1);
        let custom = Variety::custom("C", base.registry().clone(), vec![], vec![], super::super::SamplerKind::None).unwrap();
        reg.insert(custom);
        assert_eq!(reg.resolve("C").unwrap().name(), "C");
        assert_eq!(reg.resolve("S^2").unwrap().name(), "S^2");
        let again = VarietyRegistry::from_json(&reg.to_json()).unwrap();
        assert_eq!(again.resolve("C").unwrap().ambient_dim(), 2);
    }
}
