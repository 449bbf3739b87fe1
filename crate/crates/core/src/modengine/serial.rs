//! JSON records of explicit modules with exact rational entries.

use super::{BlockKey, ExplicitModule, Op, Status};
use crate::charring::Window;
use crate::linalg::{DMat, Q};
use crate::rootdata::{CartanType, RootSystem, Weight};
use crate::{Error, Result};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub grade: i64,
    pub weight: Vec<i64>,
    pub dim: usize,
}

/// Nonzero entries of one block map: `(row, col, "p/q")`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRecord {
    pub generator: usize,
    pub degree: u32,
    pub source: usize,
    pub target: usize,
    pub entries: Vec<(usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleRecord {
    pub algebra: String,
    pub label: String,
    pub status: Status,
    pub window: Window,
    pub dim: usize,
    pub blocks: Vec<BlockRecord>,
    pub maps: Vec<MapRecord>,
}

impl ExplicitModule {
    pub fn to_record(&self) -> ModuleRecord {
        let dim = self.rs.dim;
        let mut maps = Vec::new();
        for (g, op) in self.ops.iter().enumerate() {
            for (b, m) in op.maps.iter().enumerate() {
                let Some((t, mat)) = m else { continue };
                let mut entries = Vec::new();
                for i in 0..mat.rows {
                    for j in 0..mat.cols {
                        let v = mat.get(i, j);
                        if !v.is_zero() {
                            entries.push((i, j, v.to_string()));
                        }
                    }
                }
                maps.push(MapRecord { generator: g % dim, degree: (g / dim) as u32, source: b, target: *t, entries });
            }
        }
        ModuleRecord {
            algebra: self.rs.label().to_string(),
            label: self.label.clone(),
            status: self.status,
            window: self.window,
            dim: self.dim(),
            blocks: self.blocks.iter().map(|b| BlockRecord { grade: b.grade, weight: b.weight.0.clone(), dim: b.dim }).collect(),
            maps,
        }
    }

    pub fn from_record(rec: &ModuleRecord) -> Result<ExplicitModule> {
        let rs: Arc<RootSystem> = RootSystem::new(CartanType::parse(&rec.algebra)?);
        let keys: Vec<(BlockKey, usize)> =
            rec.blocks.iter().map(|b| ((b.grade, Weight(b.weight.clone())), b.dim)).collect();
        for w in keys.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Internal("module record blocks are not sorted".into()));
            }
        }
        let nb = keys.len();
        let mut ops = vec![Op::zero(nb); 2 * rs.dim];
        for m in &rec.maps {
            if m.source >= nb || m.target >= nb || m.generator >= rs.dim || m.degree > 1 {
                return Err(Error::Internal("module record map out of range".into()));
            }
            let mut mat = DMat::zeros(keys[m.target].1, keys[m.source].1);
            for (i, j, s) in &m.entries {
                let v: Q = s.parse().map_err(|_| Error::Internal(format!("bad rational {s:?}")))?;
                if *i >= mat.rows || *j >= mat.cols {
                    return Err(Error::Internal("module record entry out of range".into()));
                }
                mat.set(*i, *j, v);
            }
            ops[m.degree as usize * rs.dim + m.generator].maps[m.source] = Some((m.target, mat));
        }
        Ok(ExplicitModule::from_blocks(rs, keys, ops, None, rec.window, rec.status, rec.label.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modengine::{build_cyclic, CyclicPresentation, Profile, SimpleModule};

    #[test]
    fn round_trip() {
        let rs = RootSystem::new(CartanType::A1);
        let v = SimpleModule::build(&rs, &Weight(vec![2])).unwrap();
        let pres = CyclicPresentation { profile: Profile::LocalWeyl, lambda: Weight(vec![2]), r: 0, top: None };
        let m = build_cyclic(&rs, &v, &pres, 4).unwrap();
        let rec = m.to_record();
        let json = serde_json::to_string(&rec).unwrap();
        let back: ModuleRecord = serde_json::from_str(&json).unwrap();
        let m2 = ExplicitModule::from_record(&back).unwrap();
        assert_eq!(m2.to_record(), rec);
        m2.check_brackets(3).unwrap();
    }
}
