//! Ordinal partition networks from scalar time series.
//!
//! A time series is delay-embedded, each embedding vector is mapped to the
//! permutation that sorts it, and transitions between distinct consecutive
//! permutations become temporal edges carrying activation instants.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Read};

use crate::error::{Error, Result};
use crate::temporal_graph::{ingest_edge_list, TemporalGraph};

/// A uniformly sampled scalar signal.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub samples: Vec<f64>,
    pub sample_rate: f64,
}

impl TimeSeries {
    pub fn new(samples: Vec<f64>, sample_rate: f64) -> Result<Self> {
        if !(sample_rate > 0.0) {
            return Err(Error::validation(format!(
                "sample rate must be positive, got {sample_rate}"
            )));
        }
        Ok(TimeSeries {
            samples,
            sample_rate,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Reads a series from CSV: either one `x` column, or two columns `t,x`
/// with the rate inferred from the first two timestamps. An optional header
/// row is skipped. `fs` overrides/supplies the sample rate.
pub fn read_timeseries_csv<R: Read>(reader: R, fs: Option<f64>) -> Result<TimeSeries> {
    let buf = BufReader::new(reader);
    let mut samples = Vec::new();
    let mut times: Vec<f64> = Vec::new();
    let mut two_column = None;
    for (idx, line) in buf.lines().enumerate() {
        let line = line.map_err(|e| Error::io("<input>", e))?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let fields: Vec<&str> = text.split(',').map(str::trim).collect();
        let parsed: std::result::Result<Vec<f64>, _> =
            fields.iter().map(|f| f.parse::<f64>()).collect();
        let values = match parsed {
            Ok(v) => v,
            Err(_) if idx == 0 => continue, // header row
            Err(_) => {
                return Err(Error::parse(format!(
                    "row {}: non-numeric sample '{text}'",
                    idx + 1
                )))
            }
        };
        match (two_column, values.len()) {
            (None, 1) => {
                two_column = Some(false);
                samples.push(values[0]);
            }
            (None, 2) => {
                two_column = Some(true);
                times.push(values[0]);
                samples.push(values[1]);
            }
            (Some(false), 1) => samples.push(values[0]),
            (Some(true), 2) => {
                times.push(values[0]);
                samples.push(values[1]);
            }
            _ => {
                return Err(Error::parse(format!(
                    "row {}: inconsistent column count",
                    idx + 1
                )))
            }
        }
    }
    let rate = match (fs, two_column) {
        (Some(f), _) => f,
        (None, Some(true)) if times.len() >= 2 => {
            let dt = times[1] - times[0];
            if !(dt > 0.0) {
                return Err(Error::validation("time column must strictly increase"));
            }
            1.0 / dt
        }
        _ => {
            return Err(Error::validation(
                "sample rate unknown: pass --fs or use a two-column t,x file",
            ))
        }
    };
    TimeSeries::new(samples, rate)
}

/// The chronological permutation sequence of a delay embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutationSequence {
    pub m: usize,
    pub tau: usize,
    /// Permutation per embedding vector, each sorting its vector ascending.
    pub perms: Vec<Vec<u8>>,
    /// Sample index of the first coordinate of each embedding vector.
    pub start_indices: Vec<usize>,
}

/// Permutation that sorts `v` ascending, ties broken by position.
pub fn assign_permutation(v: &[f64]) -> Result<Vec<u8>> {
    if v.len() < 2 {
        return Err(Error::validation(format!(
            "embedding dimension must be at least 2, got {}",
            v.len()
        )));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::validation("non-finite value in embedding vector"));
    }
    let mut order: Vec<u8> = (0..v.len() as u8).collect();
    order.sort_by(|&a, &b| {
        v[a as usize]
            .partial_cmp(&v[b as usize])
            .expect("finite values compare")
            .then(a.cmp(&b))
    });
    Ok(order)
}

/// Permutations of all embedding vectors `[x_i, x_{i+tau}, ..]`.
pub fn permutation_sequence(x: &TimeSeries, m: usize, tau: usize) -> Result<PermutationSequence> {
    if m < 2 {
        return Err(Error::validation(format!("m must be at least 2, got {m}")));
    }
    if tau == 0 {
        return Err(Error::validation("tau must be at least 1"));
    }
    let span = (m - 1) * tau;
    if x.len() < span + 1 {
        return Err(Error::validation(format!(
            "series of {} samples too short for m={m}, tau={tau} (needs at least {})",
            x.len(),
            span + 1
        )));
    }
    let count = x.len() - span;
    let mut perms = Vec::with_capacity(count);
    let mut start_indices = Vec::with_capacity(count);
    let mut v = vec![0.0; m];
    for i in 0..count {
        for (j, slot) in v.iter_mut().enumerate() {
            *slot = x.samples[i + j * tau];
        }
        perms.push(assign_permutation(&v)?);
        start_indices.push(i);
    }
    Ok(PermutationSequence {
        m,
        tau,
        perms,
        start_indices,
    })
}

/// Normalized permutation entropy of the embedding at delay `tau`:
/// `-Σ p(π) log2 p(π) / log2(m!)`.
pub fn permutation_entropy(x: &TimeSeries, m: usize, tau: usize) -> Result<f64> {
    let ps = permutation_sequence(x, m, tau)?;
    let mut counts: BTreeMap<&[u8], usize> = BTreeMap::new();
    for p in &ps.perms {
        *counts.entry(p.as_slice()).or_insert(0) += 1;
    }
    let total = ps.perms.len() as f64;
    let h: f64 = counts
        .values()
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum();
    let factorial: f64 = (2..=m as u64).map(|k| k as f64).product();
    Ok(h / factorial.log2())
}

/// Delay selection by multi-scale permutation entropy.
///
/// Sweeps `tau = 1..=tau_max`, computes the normalized entropy curve, and
/// returns the first interior local maximum; if the curve has none, the
/// global argmax. A flat curve degenerates to `tau = 1`.
pub fn mspe_delay(x: &TimeSeries, m: usize, tau_max: usize) -> Result<usize> {
    if tau_max < 2 {
        return Err(Error::validation(format!(
            "tau_max must be at least 2, got {tau_max}"
        )));
    }
    let mut curve = Vec::with_capacity(tau_max);
    for tau in 1..=tau_max {
        curve.push(permutation_entropy(x, m, tau)?);
    }
    if curve.iter().all(|&h| (h - curve[0]).abs() < 1e-12) {
        return Ok(1);
    }
    for tau in 2..tau_max {
        let h = curve[tau - 1];
        if h >= curve[tau - 2] && h >= curve[tau] {
            return Ok(tau);
        }
    }
    let (best, _) = curve
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bh), (i, &h)| {
            if h > bh {
                (i, h)
            } else {
                (bi, bh)
            }
        });
    Ok(best + 1)
}

fn perm_label(perm: &[u8]) -> String {
    let parts: Vec<String> = perm.iter().map(u8::to_string).collect();
    parts.join("-")
}

/// Builds the ordinal partition network of a permutation sequence.
///
/// Each transition between distinct consecutive permutations contributes the
/// instant `start_indices[k] / sample_rate` to the undirected edge between
/// the two permutation vertices; self-transitions are ignored.
pub fn build_opn(ps: &PermutationSequence, sample_rate: f64) -> Result<TemporalGraph> {
    if ps.perms.is_empty() {
        return Err(Error::validation("empty permutation sequence"));
    }
    if !(sample_rate > 0.0) {
        return Err(Error::validation("sample rate must be positive"));
    }
    let mut rows = Vec::new();
    for k in 0..ps.perms.len() - 1 {
        if ps.perms[k] != ps.perms[k + 1] {
            let t = ps.start_indices[k] as f64 / sample_rate;
            rows.push((perm_label(&ps.perms[k]), perm_label(&ps.perms[k + 1]), t, t));
        }
    }
    if rows.is_empty() {
        return Err(Error::validation(
            "no permutation transitions: the ordinal partition network is empty",
        ));
    }
    ingest_edge_list(rows)
}
