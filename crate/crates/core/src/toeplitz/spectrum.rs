//! Boundedness and spectrum of `T_a`: the closure of the range of `γ_{a,λ}`.

use super::gamma::gamma_of_symbol;
use super::symbol::VerticalSymbol;
use crate::error::{Error, Result};
use crate::space::SpaceParams;
use rayon::prelude::*;

/// Logarithmic sweep `[lo, hi]` with `per_decade` points per decade.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogSweep {
    pub lo: f64,
    pub hi: f64,
    pub per_decade: usize,
}

impl Default for LogSweep {
    fn default() -> Self {
        Self {
            lo: 1e-3,
            hi: 1e3,
            per_decade: 40,
        }
    }
}

impl LogSweep {
    pub fn nodes(&self) -> Vec<f64> {
        let (a, b) = (self.lo.log10(), self.hi.log10());
        let n = ((b - a) * self.per_decade as f64).ceil().max(1.0) as usize;
        (0..=n).map(|k| 10f64.powf(a + (b - a) * k as f64 / n as f64)).collect()
    }

    fn decades(&self) -> f64 {
        (self.hi / self.lo).log10()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub bounded: bool,
    /// `+∞` when unbounded.
    pub sup_abs: f64,
    /// Connected components of the closure of the sampled range, limits
    /// included; endpoints may be infinite.
    pub range_components: Vec<(f64, f64)>,
    /// Extrapolated `(lim_{x→0⁺} γ, lim_{x→∞} γ)`, possibly `±∞`.
    pub limits: (f64, f64),
    pub caveats: Vec<String>,
}

/// Number of extra decades probed beyond each end of the sweep.
const PROBE_DECADES: i32 = 10;

pub fn boundedness_and_spectrum(a: &VerticalSymbol, params: &SpaceParams, sweep: LogSweep) -> Result<SpectrumReport> {
    if !(sweep.lo > 0.0 && sweep.hi > sweep.lo && sweep.hi.is_finite()) || sweep.per_decade == 0 {
        return Err(Error::InvalidArgument(format!("bad sweep {sweep:?}")));
    }
    if sweep.decades() < 6.0 - 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "sweep must cover at least 6 decades, got {:.2}",
            sweep.decades()
        )));
    }
    let nodes = sweep.nodes();
    let values = nodes
        .par_iter()
        .map(|&x| gamma_of_symbol(a, params, x))
        .collect::<Result<Vec<_>>>()?;

    let probe = |from: f64, dir: f64| -> Result<Vec<f64>> {
        (0..=PROBE_DECADES)
            .map(|k| gamma_of_symbol(a, params, from * 10f64.powf(dir * k as f64)))
            .collect()
    };
    let mut caveats = Vec::new();
    let lim0 = endpoint_limit(&probe(sweep.lo, -1.0)?, "x -> 0+", &mut caveats);
    let lim_inf = endpoint_limit(&probe(sweep.hi, 1.0)?, "x -> inf", &mut caveats);

    let sampled_sup = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let bounded = lim0.is_finite() && lim_inf.is_finite();
    let sup_abs = if bounded {
        sampled_sup.max(lim0.abs()).max(lim_inf.abs())
    } else {
        f64::INFINITY
    };
    let snap = |v: f64| if v.abs() <= 1e-14 * sampled_sup.max(1.0) { 0.0 } else { v };
    let limits = (snap(lim0), snap(lim_inf));

    let mut chain = Vec::with_capacity(values.len() + 2);
    chain.push(limits.0);
    chain.extend(&values);
    chain.push(limits.1);
    Ok(SpectrumReport {
        bounded,
        sup_abs,
        range_components: components(&chain),
        limits,
        caveats,
    })
}

/// Limit of a sequence sampled at geometrically spaced points. A sequence
/// whose differences stop contracting is reported as divergent, otherwise
/// the limit is accelerated with Wynn's ε-algorithm.
fn endpoint_limit(s: &[f64], label: &str, caveats: &mut Vec<String>) -> f64 {
    let last = *s.last().expect("nonempty probe");
    let d: Vec<f64> = s.windows(2).map(|w| w[1] - w[0]).collect();
    let scale = s.iter().map(|v| v.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    if d.iter().rev().take(3).all(|x| x.abs() <= 1e-15 * scale) {
        return last;
    }
    let tail = &d[d.len() - 4..];
    let growing = tail.windows(2).all(|w| w[1].abs() >= w[0].abs() && w[0] != 0.0);
    if growing && tail.iter().all(|x| x.signum() == tail[0].signum()) {
        return f64::INFINITY * tail[0].signum();
    }
    let ratio = (d[d.len() - 1] / d[d.len() - 2]).abs();
    if ratio > 0.9 {
        caveats.push(format!(
            "slow convergence as {label} (difference ratio {ratio:.3}); limit is uncertain"
        ));
    }
    wynn_epsilon(&s[s.len() - 7..])
}

fn wynn_epsilon(s: &[f64]) -> f64 {
    let n = s.len();
    let mut prev = vec![0.0; n + 1];
    let mut cur: Vec<f64> = s.to_vec();
    let mut best = *s.last().expect("nonempty");
    for k in 1..n {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            if diff == 0.0 {
                return cur[i + 1];
            }
            next.push(prev[i + 1] + 1.0 / diff);
        }
        prev = cur;
        cur = next;
        if k % 2 == 0 {
            if let Some(&v) = cur.last() {
                if v.is_finite() {
                    best = v;
                }
            }
        }
    }
    best
}

/// Union of the segments between consecutive values.
fn components(chain: &[f64]) -> Vec<(f64, f64)> {
    let mut segs: Vec<(f64, f64)> = if chain.len() == 1 {
        vec![(chain[0], chain[0])]
    } else {
        chain.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect()
    };
    segs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in segs {
        match out.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}
