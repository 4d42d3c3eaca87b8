//! Per-window signal and chain measures next to the SLEM, and their
//! pairwise correlations.

use std::fmt::Write as _;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::detect::{preprocess, window_starts, PipelineConfig, QuantizerScope};
use crate::error::{Error, Result};
use crate::markov::{
    build_quantizer, build_transition_matrix_with, density, self_transition_probability,
};
use crate::spectral::eigen_decompose;
use crate::timeseries::{pearson_correlation, smoothness, TimeSeries};

/// Column names of [`MeasureRow`], in CSV order after `t_s`.
pub const MEASURE_NAMES: [&str; 7] = ["slem", "s1", "s2", "v1", "v2", "density", "self_transition"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureRow {
    pub t_start_s: f64,
    pub slem: f64,
    pub s1: f64,
    pub s2: f64,
    pub v1: f64,
    pub v2: f64,
    pub density: f64,
    pub self_transition: f64,
}

impl MeasureRow {
    /// Values in [`MEASURE_NAMES`] order.
    pub fn values(&self) -> [f64; 7] {
        [
            self.slem,
            self.s1,
            self.s2,
            self.v1,
            self.v2,
            self.density,
            self.self_transition,
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureTable {
    /// Windows with a constant signal are left out.
    pub rows: Vec<MeasureRow>,
}

/// Correlation between two measures; `None` when either is constant.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureCorrelation {
    pub a: &'static str,
    pub b: &'static str,
    pub r: Option<f64>,
}

impl MeasureTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = MEASURE_NAMES.iter().position(|&n| n == name)?;
        Some(self.rows.iter().map(|r| r.values()[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!("t_s,{}\n", MEASURE_NAMES.join(","));
        for r in &self.rows {
            let cells: Vec<String> = r.values().iter().map(|v| format!("{v:.16e}")).collect();
            let _ = writeln!(s, "{},{}", r.t_start_s, cells.join(","));
        }
        s
    }

    /// Every unordered pair of measures.
    pub fn correlations(&self) -> Vec<MeasureCorrelation> {
        let cols: Vec<Vec<f64>> = MEASURE_NAMES
            .iter()
            .map(|n| self.column(n).expect("known name"))
            .collect();
        let mut out = Vec::new();
        for i in 0..cols.len() {
            for j in i + 1..cols.len() {
                out.push(MeasureCorrelation {
                    a: MEASURE_NAMES[i],
                    b: MEASURE_NAMES[j],
                    r: pearson_correlation(&cols[i], &cols[j]).ok(),
                });
            }
        }
        out
    }

    pub fn correlations_csv(&self) -> String {
        let mut s = String::from("a,b,r\n");
        for c in self.correlations() {
            let r = c.r.map(|r| format!("{r:.16e}")).unwrap_or_default();
            let _ = writeln!(s, "{},{},{r}", c.a, c.b);
        }
        s
    }
}

/// Detrends as configured, then computes every measure per window.
pub fn window_measures(ts: &TimeSeries, cfg: &PipelineConfig) -> Result<MeasureTable> {
    cfg.validate()?;
    if ts.len() < cfg.window_samples {
        return Err(Error::TooShort {
            needed: cfg.window_samples,
            got: ts.len(),
        });
    }
    let clean = preprocess(ts, cfg)?;
    let global = match cfg.quantizer_scope {
        QuantizerScope::PerWindow => None,
        QuantizerScope::Global => Some(build_quantizer(&clean, cfg.num_states)?),
    };
    let starts = window_starts(clean.len(), cfg.window_samples, cfg.stride_samples);
    let one = |&start: &usize| -> Result<Option<MeasureRow>> {
        let w = clean.slice(start, cfg.window_samples)?;
        let q = match global {
            Some(q) => q,
            None => match build_quantizer(&w, cfg.num_states) {
                Ok(q) => q,
                Err(Error::DegenerateRange { .. }) => return Ok(None),
                Err(e) => return Err(e),
            },
        };
        let tm = build_transition_matrix_with(&w, &q)?;
        let sm = smoothness(&w)?;
        Ok(Some(MeasureRow {
            t_start_s: clean.time_of(start),
            slem: eigen_decompose(tm.probs())?.slem_modulus(),
            s1: sm.s1,
            s2: sm.s2,
            v1: sm.v1,
            v2: sm.v2,
            density: density(&tm),
            self_transition: self_transition_probability(&tm),
        }))
    };
    #[cfg(feature = "parallel")]
    let rows: Result<Vec<Option<MeasureRow>>> = starts.par_iter().map(one).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Result<Vec<Option<MeasureRow>>> = starts.iter().map(one).collect();
    Ok(MeasureTable {
        rows: rows?.into_iter().flatten().collect(),
    })
}
