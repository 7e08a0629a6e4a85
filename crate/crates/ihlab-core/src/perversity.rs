//! Perversities: integer weights on the singular strata of a filtered space.
//!
//! A perversity assigns an integer to every singular stratum. No growth
//! condition is imposed; the classical Goresky-MacPherson constraints are a
//! property one can test, not a requirement.

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// One singular stratum: a stable name and its codimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumKey {
    pub name: String,
    pub codim: usize,
}

/// The singular strata of a space, sorted by name. Regular strata carry no
/// perversity value and do not appear here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumTable {
    strata: Vec<StratumKey>,
}

impl StratumTable {
    pub fn new(mut strata: Vec<StratumKey>) -> Result<Self> {
        strata.sort_by(|a, b| a.name.cmp(&b.name));
        for w in strata.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::InvalidComplex(format!(
                    "duplicate stratum name {:?}",
                    w[0].name
                )));
            }
        }
        for s in &strata {
            if s.codim == 0 {
                return Err(Error::InvalidComplex(format!(
                    "singular stratum {:?} with codimension 0",
                    s.name
                )));
            }
        }
        Ok(StratumTable { strata })
    }

    pub fn empty() -> Self {
        StratumTable { strata: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &StratumKey> {
        self.strata.iter()
    }

    pub fn key(&self, i: usize) -> &StratumKey {
        &self.strata[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.strata.binary_search_by(|s| s.name.as_str().cmp(name)).ok()
    }
}

/// A perversity on a fixed stratum table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perversity {
    table: StratumTable,
    values: Vec<i64>,
}

impl Perversity {
    pub fn zero(table: &StratumTable) -> Self {
        Perversity { table: table.clone(), values: vec![0; table.len()] }
    }

    /// The top perversity: codim - 2 on every singular stratum.
    pub fn top(table: &StratumTable) -> Self {
        Perversity {
            table: table.clone(),
            values: table.iter().map(|s| s.codim as i64 - 2).collect(),
        }
    }

    pub fn from_values(table: &StratumTable, values: Vec<i64>) -> Result<Self> {
        if values.len() != table.len() {
            return Err(Error::UnknownPerversity(format!(
                "{} values for {} strata",
                values.len(),
                table.len()
            )));
        }
        Ok(Perversity { table: table.clone(), values })
    }

    /// Value chosen by codimension; every singular codimension present in the
    /// table must be covered.
    pub fn from_codim_map(table: &StratumTable, map: &BTreeMap<usize, i64>) -> Result<Self> {
        let mut values = Vec::with_capacity(table.len());
        for s in table.iter() {
            match map.get(&s.codim) {
                Some(v) => values.push(*v),
                None => {
                    return Err(Error::UnknownPerversity(format!(
                        "no value for codimension {} (stratum {:?})",
                        s.codim, s.name
                    )))
                }
            }
        }
        Ok(Perversity { table: table.clone(), values })
    }

    /// Value chosen per stratum name; every singular stratum must be covered
    /// and no unknown names may appear.
    pub fn from_strata_map(table: &StratumTable, map: &BTreeMap<String, i64>) -> Result<Self> {
        for name in map.keys() {
            if table.index_of(name).is_none() {
                return Err(Error::UnknownPerversity(format!("unknown stratum {name:?}")));
            }
        }
        let mut values = Vec::with_capacity(table.len());
        for s in table.iter() {
            match map.get(&s.name) {
                Some(v) => values.push(*v),
                None => {
                    return Err(Error::UnknownPerversity(format!(
                        "no value for stratum {:?}",
                        s.name
                    )))
                }
            }
        }
        Ok(Perversity { table: table.clone(), values })
    }

    pub fn table(&self) -> &StratumTable {
        &self.table
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, stratum: usize) -> i64 {
        self.values[stratum]
    }

    pub fn by_name(&self, name: &str) -> Option<i64> {
        self.table.index_of(name).map(|i| self.values[i])
    }

    /// Transfers values onto a smaller stratum table by matching names,
    /// e.g. onto the strata of a subcomplex whose stratum representatives
    /// keep their labels. Every target stratum must exist here with the
    /// same codimension.
    pub fn restricted_to(&self, table: &StratumTable) -> Result<Perversity> {
        let values = table
            .iter()
            .map(|key| {
                match self.table.index_of(&key.name) {
                    Some(i) if self.table.key(i).codim == key.codim => Ok(self.values[i]),
                    Some(i) => Err(Error::UnknownPerversity(format!(
                        "stratum {} has codimension {} here but {} in the target",
                        key.name,
                        self.table.key(i).codim,
                        key.codim
                    ))),
                    None => Err(Error::UnknownPerversity(format!(
                        "stratum {} is missing from the source table",
                        key.name
                    ))),
                }
            })
            .collect::<Result<Vec<i64>>>()?;
        Ok(Perversity { table: table.clone(), values })
    }

    /// Complementary perversity: top - self.
    pub fn dual(&self) -> Perversity {
        Perversity {
            table: self.table.clone(),
            values: self
                .table
                .iter()
                .zip(&self.values)
                .map(|(s, v)| s.codim as i64 - 2 - v)
                .collect(),
        }
    }

    /// True when the values factor through codimension and extend to a
    /// classical Goresky-MacPherson perversity: p(2) = 0 and
    /// p(c) <= p(c') <= p(c) + (c' - c) for c <= c'.
    pub fn is_gm_classical(&self) -> bool {
        let mut by_codim: BTreeMap<usize, i64> = BTreeMap::new();
        for (s, v) in self.table.iter().zip(&self.values) {
            match by_codim.get(&s.codim) {
                Some(prev) if *prev != *v => return false,
                Some(_) => {}
                None => {
                    by_codim.insert(s.codim, *v);
                }
            }
        }
        // anchor the growth band at p(2) = 0
        by_codim.insert(2, *by_codim.get(&2).unwrap_or(&0));
        let mut prev: Option<(usize, i64)> = None;
        for (&c, &v) in &by_codim {
            if v < 0 || v > c as i64 - 2 {
                return false;
            }
            if let Some((c0, v0)) = prev {
                let gap = (c - c0) as i64;
                if v < v0 || v > v0 + gap {
                    return false;
                }
            }
            prev = Some((c, v));
        }
        true
    }

    /// Parses "zero", "top", "dual:<spec>", or a JSON object with either a
    /// "codim" or a "strata" map.
    pub fn parse(text: &str, table: &StratumTable) -> Result<Perversity> {
        let text = text.trim();
        if text == "zero" {
            return Ok(Perversity::zero(table));
        }
        if text == "top" {
            return Ok(Perversity::top(table));
        }
        if let Some(inner) = text.strip_prefix("dual:") {
            return Ok(Perversity::parse(inner, table)?.dual());
        }
        if !text.starts_with('{') {
            return Err(Error::UnknownPerversity(format!(
                "expected zero, top, dual:<perversity>, or a JSON object, got {text:?}"
            )));
        }
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::UnknownPerversity("perversity JSON must be an object".into()))?;
        let get_int = |val: &serde_json::Value, ctx: &str| -> Result<i64> {
            val.as_i64()
                .ok_or_else(|| Error::UnknownPerversity(format!("{ctx}: value must be an integer")))
        };
        match (obj.get("codim"), obj.get("strata")) {
            (Some(map), None) => {
                let map = map.as_object().ok_or_else(|| {
                    Error::UnknownPerversity("\"codim\" must map codimensions to integers".into())
                })?;
                let mut out = BTreeMap::new();
                for (k, val) in map {
                    let c: usize = k.parse().map_err(|_| {
                        Error::UnknownPerversity(format!("bad codimension key {k:?}"))
                    })?;
                    out.insert(c, get_int(val, k)?);
                }
                Perversity::from_codim_map(table, &out)
            }
            (None, Some(map)) => {
                let map = map.as_object().ok_or_else(|| {
                    Error::UnknownPerversity("\"strata\" must map stratum names to integers".into())
                })?;
                let mut out = BTreeMap::new();
                for (k, val) in map {
                    out.insert(k.clone(), get_int(val, k)?);
                }
                Perversity::from_strata_map(table, &out)
            }
            _ => Err(Error::UnknownPerversity(
                "perversity JSON needs exactly one of \"codim\" or \"strata\"".into(),
            )),
        }
    }

    /// Canonical printable form: a builtin name when the values match one,
    /// otherwise the per-stratum map.
    pub fn label(&self) -> String {
        if *self == Perversity::zero(&self.table) {
            return "zero".to_string();
        }
        if *self == Perversity::top(&self.table) {
            return "top".to_string();
        }
        let mut s = String::from("{\"strata\":{");
        for (k, (st, v)) in self.table.iter().zip(&self.values).enumerate() {
            if k > 0 {
                s.push(',');
            }
            let _ = write!(s, "{:?}:{}", st.name, v);
        }
        s.push_str("}}");
        s
    }
}

/// How each singular stratum of a product decomposes into factor strata.
/// `None` marks a regular factor.
pub type ProductStrata = Vec<(Option<usize>, Option<usize>)>;

/// Product perversity: p(Z) + q(S) + 2 when both factors are singular,
/// otherwise the value from the singular side.
pub fn kunneth_perversity(
    p: &Perversity,
    q: &Perversity,
    product_table: &StratumTable,
    pairs: &ProductStrata,
) -> Result<Perversity> {
    if pairs.len() != product_table.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} factor pairs for {} product strata",
            pairs.len(),
            product_table.len()
        )));
    }
    let mut values = Vec::with_capacity(pairs.len());
    for (k, (zi, si)) in pairs.iter().enumerate() {
        let v = match (zi, si) {
            (Some(z), Some(s)) => p.value(*z) + q.value(*s) + 2,
            (Some(z), None) => p.value(*z),
            (None, Some(s)) => q.value(*s),
            (None, None) => {
                return Err(Error::PerversityCondition {
                    stratum: product_table.key(k).name.clone(),
                    detail: "product stratum with two regular factors is regular".into(),
                })
            }
        };
        values.push(v);
    }
    Ok(Perversity { table: product_table.clone(), values })
}

/// The admissibility inequality for a diagonal with output perversities p, q
/// and input perversity r: dual(r) >= dual(p) + dual(q) on every stratum.
pub fn diagonal_condition(r: &Perversity, p: &Perversity, q: &Perversity) -> Result<bool> {
    if r.table != p.table || r.table != q.table {
        return Err(Error::PerversityCondition {
            stratum: String::new(),
            detail: "perversities live on different stratum tables".into(),
        });
    }
    let (dr, dp, dq) = (r.dual(), p.dual(), q.dual());
    Ok((0..r.table.len()).all(|i| dr.value(i) >= dp.value(i) + dq.value(i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(entries: &[(&str, usize)]) -> StratumTable {
        StratumTable::new(
            entries
                .iter()
                .map(|(n, c)| StratumKey { name: n.to_string(), codim: *c })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn table_sorts_and_rejects_duplicates() {
        let t = table(&[("w", 3), ("v", 2)]);
        assert_eq!(t.key(0).name, "v");
        assert_eq!(t.index_of("w"), Some(1));
        assert!(StratumTable::new(vec![
            StratumKey { name: "v".into(), codim: 2 },
            StratumKey { name: "v".into(), codim: 3 },
        ])
        .is_err());
        assert!(StratumTable::new(vec![StratumKey { name: "v".into(), codim: 0 }]).is_err());
    }

    #[test]
    fn top_and_dual() {
        let t = table(&[("a", 2), ("b", 5)]);
        let top = Perversity::top(&t);
        assert_eq!(top.values(), &[0, 3]);
        let p = Perversity::from_values(&t, vec![-1, 2]).unwrap();
        assert_eq!(p.dual().values(), &[1, 1]);
        assert_eq!(p.dual().dual(), p);
        assert_eq!(Perversity::zero(&t).dual(), top);
    }

    #[test]
    fn gm_classical_band() {
        let t = table(&[("a", 3), ("b", 5)]);
        assert!(Perversity::zero(&t).is_gm_classical());
        assert!(Perversity::top(&t).is_gm_classical());
        // growth of 3 between codims 3 and 5 exceeds the allowed 2
        assert!(!Perversity::from_values(&t, vec![0, 3]).unwrap().is_gm_classical());
        // decreasing is out
        assert!(!Perversity::from_values(&t, vec![1, 0]).unwrap().is_gm_classical());
        // negative values are out
        assert!(!Perversity::from_values(&t, vec![-1, 0]).unwrap().is_gm_classical());
        // two strata of equal codim with different values do not factor
        let t2 = table(&[("a", 4), ("b", 4)]);
        assert!(!Perversity::from_values(&t2, vec![1, 2]).unwrap().is_gm_classical());
        assert!(Perversity::from_values(&t2, vec![2, 2]).unwrap().is_gm_classical());
        // codim 2 must carry 0
        let t3 = table(&[("a", 2)]);
        assert!(!Perversity::from_values(&t3, vec![1]).unwrap().is_gm_classical());
        assert!(!Perversity::from_values(&t3, vec![-1]).unwrap().is_gm_classical());
    }

    #[test]
    fn kunneth_case_split() {
        let tx = table(&[("z", 3)]);
        let ty = table(&[("s", 4)]);
        let p = Perversity::from_values(&tx, vec![1]).unwrap();
        let q = Perversity::from_values(&ty, vec![2]).unwrap();
        let tprod = table(&[("z x s", 7), ("z x reg", 3), ("reg x s", 4)]);
        // names sort as: "reg x s", "z x reg", "z x s"
        let pairs: ProductStrata = vec![(None, Some(0)), (Some(0), None), (Some(0), Some(0))];
        let out = kunneth_perversity(&p, &q, &tprod, &pairs).unwrap();
        assert_eq!(out.by_name("reg x s"), Some(2));
        assert_eq!(out.by_name("z x reg"), Some(1));
        assert_eq!(out.by_name("z x s"), Some(1 + 2 + 2));
        // zero x zero puts 2 on doubly singular strata
        let z = kunneth_perversity(
            &Perversity::zero(&tx),
            &Perversity::zero(&ty),
            &tprod,
            &pairs,
        )
        .unwrap();
        assert_eq!(z.by_name("z x s"), Some(2));
        assert_eq!(z.by_name("z x reg"), Some(0));
    }

    #[test]
    fn diagonal_condition_inequality() {
        let t = table(&[("z", 3)]);
        let zero = Perversity::zero(&t);
        // dual(zero) = 1 on codim 3; 1 >= 1 + 1 fails
        assert!(!diagonal_condition(&zero, &zero, &zero).unwrap());
        let minus = Perversity::from_values(&t, vec![-1]).unwrap();
        // dual(-1) = 2 >= 1 + 1 holds
        assert!(diagonal_condition(&minus, &zero, &zero).unwrap());
        let top = Perversity::top(&t);
        // dual(top) = 0 >= 0 + 1 fails
        assert!(!diagonal_condition(&top, &top, &zero).unwrap());
        assert!(diagonal_condition(&top, &top, &top).unwrap());
        let other = table(&[("w", 2)]);
        assert!(diagonal_condition(&zero, &zero, &Perversity::zero(&other)).is_err());
    }

    #[test]
    fn parse_forms() {
        let t = table(&[("v", 2), ("w", 4)]);
        assert_eq!(Perversity::parse("zero", &t).unwrap(), Perversity::zero(&t));
        assert_eq!(Perversity::parse(" top ", &t).unwrap(), Perversity::top(&t));
        assert_eq!(Perversity::parse("dual:zero", &t).unwrap(), Perversity::top(&t));
        let p = Perversity::parse(r#"{"codim":{"2":0,"4":1}}"#, &t).unwrap();
        assert_eq!(p.values(), &[0, 1]);
        let p = Perversity::parse(r#"{"strata":{"v":-1,"w":3}}"#, &t).unwrap();
        assert_eq!(p.by_name("v"), Some(-1));
        assert_eq!(p.by_name("w"), Some(3));
        assert!(Perversity::parse(r#"{"codim":{"2":0}}"#, &t).is_err());
        assert!(Perversity::parse(r#"{"strata":{"v":0,"w":0,"x":0}}"#, &t).is_err());
        assert!(Perversity::parse(r#"{"strata":{"v":0}}"#, &t).is_err());
        assert!(Perversity::parse("bogus", &t).is_err());
        assert!(Perversity::parse(r#"{"codim":{"two":0}}"#, &t).is_err());
        assert!(Perversity::parse(r#"{"codim":{"2":0.5,"4":0}}"#, &t).is_err());
    }

    #[test]
    fn labels_are_canonical() {
        let t = table(&[("v", 2)]);
        assert_eq!(Perversity::zero(&t).label(), "zero");
        assert_eq!(Perversity::top(&t).label(), "zero"); // codim 2: top == zero
        let t2 = table(&[("v", 4)]);
        assert_eq!(Perversity::top(&t2).label(), "top");
        let p = Perversity::from_values(&t2, vec![1]).unwrap();
        assert_eq!(p.label(), r#"{"strata":{"v":1}}"#);
        let roundtrip = Perversity::parse(&p.label(), &t2).unwrap();
        assert_eq!(roundtrip, p);
    }
}
