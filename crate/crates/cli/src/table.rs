use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use hzlag_core::exact::parse_rational;
use hzlag_core::recursion::{do_norbury_table, gauss_hz_table, glag_k1_table, vk_table, LagCTable, VTable};
use hzlag_core::{Error, Rational};

pub const SCHEMA: &str = "hzlag-table/1";

/// Largest accepted `gmax`, `nmax` or `rmax2`.
pub const BOUND_LIMIT: usize = 400;

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Ensemble {
    Gauss,
    Laguerre,
    Vk,
    #[value(name = "glag-k1")]
    GlagK1,
}

impl Ensemble {
    pub fn name(self) -> &'static str {
        match self {
            Ensemble::Gauss => "gauss",
            Ensemble::Laguerre => "laguerre",
            Ensemble::Vk => "vk",
            Ensemble::GlagK1 => "glag-k1",
        }
    }

    pub fn parse(s: &str) -> Option<Ensemble> {
        [Ensemble::Gauss, Ensemble::Laguerre, Ensemble::Vk, Ensemble::GlagK1].into_iter().find(|e| e.name() == s)
    }

    /// `b` with the bounds this ensemble ignores set to zero.
    pub fn relevant(self, b: Bounds) -> Bounds {
        match self {
            Ensemble::Gauss | Ensemble::Vk => Bounds { gmax: b.gmax, nmax: 0, rmax2: 0 },
            Ensemble::Laguerre => Bounds { rmax2: 0, ..b },
            Ensemble::GlagK1 => Bounds { gmax: 0, ..b },
        }
    }

    /// Column names of the two integer indices.
    pub fn columns(self) -> (&'static str, &'static str) {
        match self {
            Ensemble::Gauss | Ensemble::Vk => ("g", "k"),
            Ensemble::Laguerre => ("g", "n"),
            Ensemble::GlagK1 => ("r2", "n"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bounds {
    pub gmax: usize,
    pub nmax: usize,
    pub rmax2: usize,
}

/// A generated table: `(i, j, value)` rows in generation order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Table {
    pub ensemble: Ensemble,
    pub bounds: Bounds,
    pub entries: Vec<(i64, i64, Rational)>,
}

impl Table {
    pub fn generate(ensemble: Ensemble, bounds: Bounds) -> Result<Table, Error> {
        let bounds = ensemble.relevant(bounds);
        let Bounds { gmax, nmax, rmax2 } = bounds;
        let entries: Vec<(i64, i64, Rational)> = match ensemble {
            Ensemble::Laguerre => {
                do_norbury_table(gmax, nmax).entries().map(|(g, n, v)| (g as i64, n as i64, v.clone())).collect()
            }
            Ensemble::Gauss => {
                gauss_hz_table(gmax)?.entries().map(|(g, k, v)| (g as i64, k as i64, v.clone())).collect()
            }
            Ensemble::Vk => vk_table(gmax)?.entries().map(|(g, k, v)| (g as i64, k, v)).collect(),
            Ensemble::GlagK1 => {
                glag_k1_table(rmax2, nmax).entries().map(|(j, n, v)| (j as i64, n as i64, v.clone())).collect()
            }
        };
        Ok(Table { ensemble, bounds, entries })
    }

    fn bounds_json(&self) -> Value {
        let b = self.bounds;
        match self.ensemble {
            Ensemble::Laguerre => json!({ "gmax": b.gmax, "nmax": b.nmax }),
            Ensemble::Gauss | Ensemble::Vk => json!({ "gmax": b.gmax }),
            Ensemble::GlagK1 => json!({ "nmax": b.nmax, "rmax2": b.rmax2 }),
        }
    }

    pub fn to_json(&self) -> String {
        let (c1, c2) = self.ensemble.columns();
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(i, j, v)| {
                let mut m = Map::new();
                m.insert(c1.into(), json!(i));
                m.insert(c2.into(), json!(j));
                m.insert("value".into(), json!(v.to_string()));
                Value::Object(m)
            })
            .collect();
        let doc = json!({
            "schema": SCHEMA,
            "ensemble": self.ensemble.name(),
            "bounds": self.bounds_json(),
            "entries": entries,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let (c1, c2) = self.ensemble.columns();
        let mut s = format!("{c1},{c2},value\n");
        for (i, j, v) in &self.entries {
            writeln!(s, "{i},{j},{v}").expect("write to string");
        }
        s
    }

    pub fn from_json(text: &str) -> Result<Table, Error> {
        let bad = |what: &str| Error::Parse(format!("table document: {what}"));
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc["schema"] != SCHEMA {
            return Err(bad("unknown schema"));
        }
        let ensemble = doc["ensemble"].as_str().and_then(Ensemble::parse).ok_or_else(|| bad("unknown ensemble"))?;
        let field = |k: &str| doc["bounds"][k].as_u64().unwrap_or(0) as usize;
        let bounds = Bounds { gmax: field("gmax"), nmax: field("nmax"), rmax2: field("rmax2") };
        let (c1, c2) = ensemble.columns();
        let entries = doc["entries"]
            .as_array()
            .ok_or_else(|| bad("missing entries"))?
            .iter()
            .map(|e| {
                let i = e[c1].as_i64().ok_or_else(|| bad("entry index"))?;
                let j = e[c2].as_i64().ok_or_else(|| bad("entry index"))?;
                let v = parse_rational(e["value"].as_str().ok_or_else(|| bad("entry value"))?)?;
                Ok((i, j, v))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(Table { ensemble, bounds, entries })
    }

    pub fn to_vtable(&self) -> Result<VTable, Error> {
        if self.ensemble != Ensemble::Vk {
            return Err(Error::InvalidArgument("not a vk table".into()));
        }
        VTable::from_entries(self.bounds.gmax, self.entries.iter().map(|(g, k, v)| (*g as usize, *k, v.clone())))
    }

    pub fn to_lag_table(&self) -> Result<LagCTable, Error> {
        if self.ensemble != Ensemble::Laguerre {
            return Err(Error::InvalidArgument("not a laguerre table".into()));
        }
        let Bounds { gmax, nmax, .. } = self.bounds;
        let mut rows = vec![vec![Rational::from_integer(0.into()); nmax + 1]; gmax + 1];
        for (g, n, v) in &self.entries {
            let slot = rows
                .get_mut(*g as usize)
                .and_then(|r| r.get_mut(*n as usize))
                .ok_or_else(|| Error::Parse(format!("entry ({g}, {n}) outside the bounds")))?;
            *slot = v.clone();
        }
        LagCTable::from_rows(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        for (e, b) in [
            (Ensemble::Laguerre, Bounds { gmax: 2, nmax: 3, rmax2: 0 }),
            (Ensemble::Vk, Bounds { gmax: 2, nmax: 0, rmax2: 0 }),
            (Ensemble::Gauss, Bounds { gmax: 3, nmax: 0, rmax2: 0 }),
            (Ensemble::GlagK1, Bounds { gmax: 0, nmax: 3, rmax2: 2 }),
        ] {
            let t = Table::generate(e, b).unwrap();
            assert_eq!(Table::from_json(&t.to_json()).unwrap(), t);
        }
    }

    #[test]
    fn csv_rows() {
        let t = Table::generate(Ensemble::Laguerre, Bounds { gmax: 3, nmax: 10, rmax2: 0 }).unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with("g,n,value\n"));
        assert!(csv.lines().any(|l| l == "1,2,10"));
    }
}
