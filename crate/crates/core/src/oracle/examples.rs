//! Scripted runs: multiples of `2H - ΣE_i` on `X^4_14` at random points, and of
//! `10H - 3ΣE_i` on `X^2_10` at points cut out on a cubic by a 2-torsion condition.

use serde_json::json;

use crate::error::Result;
use crate::lattice::{BlowupContext, DivisorClass};

use super::elliptic::WeierstrassCurve;
use super::field::FiniteField;
use super::interp::{h0, h0_at};
use super::points::{sample_on_cubic_torsion, PointConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub m: i64,
    pub vdim: i64,
    pub edim: i64,
    pub h0: i64,
    pub h1: Option<i64>,
    pub special: bool,
}

impl TableRow {
    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "m": self.m,
            "vdim": self.vdim,
            "edim": self.edim,
            "h0": self.h0,
            "h1": self.h1,
            "special": self.special,
        })
    }

    pub const CSV_HEADER: &'static str = "m,vdim,edim,h0,h1,special";

    pub fn to_csv(&self) -> String {
        let h1 = self.h1.map_or(String::new(), |x| x.to_string());
        format!("{},{},{},{},{},{}", self.m, self.vdim, self.edim, self.h0, h1, self.special)
    }
}

pub fn fourteen_points_class() -> DivisorClass {
    let ctx = BlowupContext::new(4, 14).expect("valid context");
    DivisorClass::uniform(ctx, 2, 1, 14)
}

/// Rows for `mD`, `m = 1..=m_max`, `h⁰` minimized over the seeds.
pub fn run_example_14pts(field: FiniteField, seeds: &[u64], m_max: i64) -> Result<Vec<TableRow>> {
    let d = fourteen_points_class();
    (1..=m_max)
        .map(|m| {
            let md = DivisorClass::uniform(d.ctx(), 2 * m, m, 14);
            let res = h0(&md, field, seeds)?;
            Ok(TableRow {
                m,
                vdim: res.vdim,
                edim: res.edim,
                h0: res.h0,
                h1: res.h1,
                special: res.special,
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct MixReport {
    pub curve: WeierstrassCurve,
    pub config: PointConfig,
    pub rows: Vec<TableRow>,
}

impl MixReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "curve": {"p": self.curve.field.p(), "a": self.curve.a, "b": self.curve.b},
            "points": self.config.to_json_value(),
            "rows": self.rows.iter().map(TableRow::to_json_value).collect::<Vec<_>>(),
        })
    }

    /// `h¹(nD)` is `0` for odd `n` and `1` for even `n`.
    pub fn parity_holds(&self) -> bool {
        self.rows.iter().all(|r| r.h1 == Some(if r.m % 2 == 0 { 1 } else { 0 }))
    }
}

/// `n(10H - 3ΣE_i)` for `n = 1..=4` at one torsion configuration drawn from `seed`.
pub fn run_example_mix(field: FiniteField, seed: u64) -> Result<MixReport> {
    let (curve, config) = sample_on_cubic_torsion(field, 10, seed)?;
    let ctx = BlowupContext::surface(10);
    let rows = (1..=4)
        .map(|n| {
            let nd = DivisorClass::uniform(ctx, 10 * n, 3 * n, 10);
            let res = h0_at(&nd, &config)?;
            Ok(TableRow {
                m: n,
                vdim: res.vdim,
                edim: res.edim,
                h0: res.h0,
                h1: res.h1,
                special: res.special,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MixReport { curve, config, rows })
}
