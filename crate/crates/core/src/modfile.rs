//! JSON interchange format for graded modules.
//!
//! ```json
//! {"actions": [{"0": [[1, 0]]}, …], "dims": {"0": 1, "1": 2}, "max_deg": 1,
//!  "min_deg": 0, "n_plus_1": 2, "p": 32003, "version": "1"}
//! ```
//!
//! Degree keys are decimal strings. `actions[i][d]` is the row-major matrix of
//! `x_i` from degree `d` to `d+1`; absent blocks are zero. Output keys are sorted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exterior::MAX_VARS;
use crate::gmod::GradedModule;
use crate::linalg::{Fp, Mat};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub version: String,
    pub p: u32,
    pub n_plus_1: usize,
    pub min_deg: i32,
    pub max_deg: i32,
    pub dims: BTreeMap<String, usize>,
    pub actions: Vec<BTreeMap<String, Vec<Vec<i64>>>>,
}

impl ModuleFile {
    pub fn from_module(m: &GradedModule) -> Self {
        let (lo, hi) = m.degree_range().unwrap_or((0, 0));
        let dims = m.degrees().map(|d| (d.to_string(), m.dim(d))).collect();
        let actions = (0..m.n_vars())
            .map(|i| {
                m.degrees()
                    .filter(|&d| m.dim(d) > 0 && m.dim(d + 1) > 0)
                    .map(|d| {
                        let a = m.action(i, d);
                        let rows = (0..a.rows()).map(|r| a.row(r).iter().map(|&x| x as i64).collect()).collect();
                        (d.to_string(), rows)
                    })
                    .collect()
            })
            .collect();
        ModuleFile {
            version: FORMAT_VERSION.into(),
            p: m.field().p(),
            n_plus_1: m.n_vars(),
            min_deg: lo,
            max_deg: hi,
            dims,
            actions,
        }
    }

    /// Rebuild the module, checking shapes, entries and the defining relations.
    pub fn to_module(&self) -> Result<GradedModule> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Malformed(format!("unsupported version {:?}", self.version)));
        }
        let field = Fp::new(self.p)?;
        if self.n_plus_1 == 0 || self.n_plus_1 > MAX_VARS {
            return Err(Error::Malformed(format!("n_plus_1 = {} outside 1..={}", self.n_plus_1, MAX_VARS)));
        }
        if self.max_deg < self.min_deg {
            return Err(Error::Malformed("max_deg < min_deg".into()));
        }
        if self.actions.len() != self.n_plus_1 {
            return Err(Error::Malformed(format!(
                "{} action maps for n_plus_1 = {}",
                self.actions.len(),
                self.n_plus_1
            )));
        }
        let (lo, hi) = (self.min_deg, self.max_deg);
        let mut dims = vec![0usize; (hi - lo + 1) as usize];
        for (k, &v) in &self.dims {
            let d = parse_degree(k)?;
            if d < lo || d > hi {
                return Err(Error::Malformed(format!("dims key {d} outside [{lo}, {hi}]")));
            }
            dims[(d - lo) as usize] = v;
        }
        let dim = |d: i32| if d < lo || d > hi { 0 } else { dims[(d - lo) as usize] };
        let mut actions = Vec::with_capacity(self.n_plus_1);
        for (i, blocks) in self.actions.iter().enumerate() {
            let mut fam: Vec<Mat> = (lo..hi).map(|d| Mat::zero(field, dim(d), dim(d + 1))).collect();
            for (k, rows) in blocks {
                let d = parse_degree(k)?;
                let (r, c) = (dim(d), dim(d + 1));
                if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                    return Err(Error::Malformed(format!("x_{i} at degree {d}: expected a {r}x{c} matrix")));
                }
                if r == 0 || c == 0 {
                    continue;
                }
                let mut data = Vec::with_capacity(r * c);
                for row in rows {
                    for &x in row {
                        if x < 0 || x >= self.p as i64 {
                            return Err(Error::Malformed(format!(
                                "x_{i} at degree {d}: entry {x} outside [0, {})",
                                self.p
                            )));
                        }
                        data.push(x as u32);
                    }
                }
                fam[(d - lo) as usize] = Mat::from_vec(field, r, c, data)?;
            }
            actions.push(fam);
        }
        let m = GradedModule::new(field, self.n_plus_1, lo, dims, actions)?;
        m.check()?;
        Ok(m)
    }
}

fn parse_degree(k: &str) -> Result<i32> {
    k.parse::<i32>().map_err(|_| Error::Malformed(format!("degree key {k:?} is not an integer")))
}

/// Serialize with sorted keys and a trailing newline.
pub fn to_json(m: &GradedModule) -> String {
    let v = serde_json::to_value(ModuleFile::from_module(m)).expect("serializable");
    json_string(&v)
}

/// Canonical text for a JSON value: sorted keys, two-space indent, LF.
pub fn json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json(s: &str) -> Result<GradedModule> {
    let file: ModuleFile = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
    file.to_module()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{free_module, linear_cx2_module, m_xi};

    #[test]
    fn round_trip() {
        let f = Fp::default_field();
        for m in [
            free_module(f, 3, &[0, -1]),
            linear_cx2_module(f),
            m_xi(f, 3, &[1, 2, 3]).unwrap().shift(4),
            GradedModule::zero(f, 2),
        ] {
            let s = to_json(&m);
            assert_eq!(from_json(&s).unwrap(), m);
            assert_eq!(to_json(&from_json(&s).unwrap()), s);
        }
    }

    #[test]
    fn sorted_keys_and_zero_module() {
        let f = Fp::default_field();
        let s = to_json(&GradedModule::zero(f, 2));
        let keys: Vec<&str> =
            ["\"actions\"", "\"dims\"", "\"max_deg\"", "\"min_deg\"", "\"n_plus_1\"", "\"p\"", "\"version\""]
                .into_iter()
                .collect();
        let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(s.contains("\"dims\": {}"));
    }

    #[test]
    fn rejects_bad_input() {
        let base = r#"{"version":"1","p":32003,"n_plus_1":2,"min_deg":0,"max_deg":1,
            "dims":{"0":1,"1":1},"actions":[{"0":[[1]]},{"0":[[1]]}]}"#;
        assert!(from_json(base).is_ok());
        let bad_entry = base.replace("[[1]]},{", "[[40000]]},{");
        assert!(matches!(from_json(&bad_entry), Err(Error::Malformed(_))));
        let bad_shape = base.replace("{\"0\":[[1]]},{", "{\"0\":[[1,0]]},{");
        assert!(matches!(from_json(&bad_shape), Err(Error::Malformed(_))));
        let bad_p = base.replace("32003", "32004");
        assert!(matches!(from_json(&bad_p), Err(Error::BadModulus(_))));
        // x_0 = x_1 = identity on a three-step chain breaks anticommutation.
        let chain = r#"{"version":"1","p":32003,"n_plus_1":2,"min_deg":0,"max_deg":2,
            "dims":{"0":1,"1":1,"2":1},"actions":[{"0":[[1]],"1":[[1]]},{"0":[[1]],"1":[[1]]}]}"#;
        let err = from_json(chain).unwrap_err();
        assert!(err.to_string().contains("square-zero"), "{err}");
        assert!(matches!(from_json("{"), Err(Error::Malformed(_))));
    }
}
