//! Seeded randomized sweeps over the pointwise inequality oracles.
//!
//! Tuples are drawn from three distributions in rotation (standard normal,
//! uniform on [−10, 10], Cauchy clipped to ±1e6) so that both the bulk and
//! the heavy tails of each inequality get exercised. The first tuple of
//! every row is the all-zero corner case.

use crate::pointwise::{
    calibrate_lipschitz_constant, check_deg_fourpoint, check_deg_fourpoint_trunc, check_deg_power,
    check_jp_lipschitz, check_sing_fourpoint, check_sing_fourpoint_trunc, check_sing_twopoint,
    IneqVerdict,
};
use rand::distributions::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

pub const DEGENERATE_P: [f64; 3] = [2.5, 3.0, 4.0];
pub const SINGULAR_P: [f64; 3] = [1.2, 1.5, 1.9];
pub const GAMMA_GRID: [f64; 3] = [1.0, 2.0, 5.0];
pub const TRUNCATION_GRID: [f64; 3] = [0.1, 1.0, 10.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    Degenerate,
    Singular,
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub seed: u64,
    pub count: usize,
    pub rel_slack: f64,
    /// Multiply every right-hand side by this factor before judging.
    /// `None` runs the honest sweep; `Some(10.0)` is the harness self-test
    /// that must produce violations.
    pub corrupt_rhs_factor: Option<f64>,
    pub regimes: Vec<Regime>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            count: 100_000,
            rel_slack: crate::pointwise::DEFAULT_REL_SLACK,
            corrupt_rhs_factor: None,
            regimes: vec![Regime::Degenerate, Regime::Singular],
        }
    }
}

/// One (lemma, parameter combination) row of the verdict table.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub lemma: &'static str,
    pub params: String,
    pub samples: usize,
    pub violations: usize,
    pub min_gap: f64,
    /// Tuple attaining the smallest slack-normalized margin.
    pub worst_tuple: [f64; 4],
}

impl SweepRow {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn sample_tuple(rng: &mut ChaCha8Rng, index: usize) -> [f64; 4] {
    if index == 0 {
        return [0.0; 4];
    }
    let mut out = [0.0; 4];
    match index % 3 {
        0 => {
            for v in &mut out {
                *v = rng.sample::<f64, _>(StandardNormal);
            }
        }
        1 => {
            let u = Uniform::new_inclusive(-10.0, 10.0);
            for v in &mut out {
                *v = u.sample(rng);
            }
        }
        _ => {
            for v in &mut out {
                let c: f64 = rng.sample(rand_distr::Cauchy::new(0.0, 1.0).unwrap());
                *v = c.clamp(-1e6, 1e6);
            }
        }
    }
    out
}

struct RowAccumulator {
    samples: usize,
    violations: usize,
    min_gap: f64,
    worst_margin: f64,
    worst_tuple: [f64; 4],
    corrupt: Option<f64>,
    rel_slack: f64,
}

impl RowAccumulator {
    fn new(rel_slack: f64, corrupt: Option<f64>) -> Self {
        Self {
            samples: 0,
            violations: 0,
            min_gap: f64::INFINITY,
            worst_margin: f64::INFINITY,
            worst_tuple: [0.0; 4],
            corrupt,
            rel_slack,
        }
    }

    fn record(&mut self, tuple: [f64; 4], verdict: &IneqVerdict<f64>) {
        let (gap, slack, holds) = match self.corrupt {
            None => (verdict.gap, verdict.slack, verdict.holds),
            Some(f) => {
                let rhs = verdict.rhs * f;
                let gap = verdict.lhs - rhs;
                let slack = self.rel_slack * (verdict.lhs.abs() + rhs.abs() + 1.0);
                (gap, slack, gap >= -slack)
            }
        };
        self.samples += 1;
        if !holds {
            self.violations += 1;
        }
        if gap < self.min_gap {
            self.min_gap = gap;
        }
        let margin = gap / slack;
        if margin < self.worst_margin {
            self.worst_margin = margin;
            self.worst_tuple = tuple;
        }
    }

    /// Degenerate corner cases (all-zero tuples, coincident pairs) where a
    /// check declares gap = 0 by convention.
    fn record_trivial(&mut self, tuple: [f64; 4]) {
        self.samples += 1;
        if self.min_gap > 0.0 {
            self.min_gap = 0.0;
        }
        if self.worst_margin > 0.0 {
            self.worst_margin = 0.0;
            self.worst_tuple = tuple;
        }
    }

    fn into_row(self, lemma: &'static str, params: String) -> SweepRow {
        SweepRow {
            lemma,
            params,
            samples: self.samples,
            violations: self.violations,
            min_gap: if self.samples == 0 { 0.0 } else { self.min_gap },
            worst_tuple: self.worst_tuple,
        }
    }
}

/// Run every inequality check over seeded random tuples and return one row
/// per (lemma, parameter combination).
pub fn run_inequality_sweeps(cfg: &SweepConfig) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    let mut row_index: u64 = 0;
    let mut rng_for = |idx: &mut u64| {
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(*idx * 0x9e37_79b9_7f4a_7c15));
        *idx += 1;
        rng
    };

    let degenerate = cfg.regimes.contains(&Regime::Degenerate);
    let singular = cfg.regimes.contains(&Regime::Singular);

    if degenerate {
        for &p in &DEGENERATE_P {
            for &q in &GAMMA_GRID {
                let mut rng = rng_for(&mut row_index);
                let mut acc = RowAccumulator::new(cfg.rel_slack, cfg.corrupt_rhs_factor);
                for i in 0..cfg.count {
                    let t = sample_tuple(&mut rng, i);
                    let v = check_deg_power(t[0], t[1], p, q, cfg.rel_slack).unwrap();
                    acc.record(t, &v);
                }
                rows.push(acc.into_row("deg-power", format!("p={p}, q={q}")));
            }
        }
        for &p in &DEGENERATE_P {
            for &gamma in &GAMMA_GRID {
                let mut rng = rng_for(&mut row_index);
                let mut acc = RowAccumulator::new(cfg.rel_slack, cfg.corrupt_rhs_factor);
                for i in 0..cfg.count {
                    let t = sample_tuple(&mut rng, i);
                    let v =
                        check_deg_fourpoint(t[0], t[1], t[2], t[3], p, gamma, cfg.rel_slack)
                            .unwrap();
                    acc.record(t, &v);
                }
                rows.push(acc.into_row("deg-fourpoint", format!("p={p}, gamma={gamma}")));
            }
        }
        for &p in &DEGENERATE_P {
            for &gamma in &GAMMA_GRID {
                for &m in &TRUNCATION_GRID {
                    let mut rng = rng_for(&mut row_index);
                    let mut acc = RowAccumulator::new(cfg.rel_slack, cfg.corrupt_rhs_factor);
                    for i in 0..cfg.count {
                        let t = sample_tuple(&mut rng, i);
                        let v = check_deg_fourpoint_trunc(
                            t[0],
                            t[1],
                            t[2],
                            t[3],
                            p,
                            gamma,
                            m,
                            cfg.rel_slack,
                        )
                        .unwrap();
                        acc.record(t, &v);
                    }
                    rows.push(acc.into_row(
                        "deg-fourpoint-trunc",
                        format!("p={p}, gamma={gamma}, M={m}"),
                    ));
                }
            }
        }
    }

    // The Lipschitz-type envelope holds on both sides of p = 2.
    let lipschitz_ps: Vec<f64> = match (degenerate, singular) {
        (true, true) => DEGENERATE_P.iter().chain(SINGULAR_P.iter()).copied().collect(),
        (true, false) => DEGENERATE_P.to_vec(),
        (false, true) => SINGULAR_P.to_vec(),
        (false, false) => Vec::new(),
    };
    for &p in &lipschitz_ps {
        let constant = calibrate_lipschitz_constant(p).unwrap();
        let mut rng = rng_for(&mut row_index);
        let mut acc = RowAccumulator::new(cfg.rel_slack, cfg.corrupt_rhs_factor);
        for i in 0..cfg.count {
            let t = sample_tuple(&mut rng, i);
            let v = check_jp_lipschitz(t[0], t[1], &constant, cfg.rel_slack).unwrap();
            acc.record(t, &v);
        }
        rows.push(acc.into_row("jp-lipschitz", format!("p={p}, c={:.6}", constant.c)));
    }

    if singular {
        for &p in &SINGULAR_P {
            let mut rng = rng_for(&mut row_index);
            let mut acc = RowAccumulator::new(cfg.rel_slack, cfg.corrupt_rhs_factor);
            for i in 0..cfg.count {
                let t = sample_tuple(&mut rng, i);
                if t[0] == 0.0 && t[1] == 0.0 {
                    acc.record_trivial(t);
                    continue;
                }
                let v = check_sing_twopoint(t[0], t[1], p, cfg.rel_slack).unwrap();
                acc.record(t, &v);
            }
            rows.push(acc.into_row("sing-twopoint", format!("p={p}")));
        }
        for &p in &SINGULAR_P {
            for &gamma in &GAMMA_GRID[1..] {
                let mut rng = rng_for(&mut row_index);
                let mut acc = RowAccumulator::new(cfg.rel_slack, cfg.corrupt_rhs_factor);
                for i in 0..cfg.count {
                    let t = sample_tuple(&mut rng, i);
                    let v =
                        check_sing_fourpoint(t[0], t[1], t[2], t[3], p, gamma, cfg.rel_slack)
                            .unwrap();
                    acc.record(t, &v);
                }
                rows.push(acc.into_row("sing-fourpoint", format!("p={p}, gamma={gamma}")));
            }
        }
        for &p in &SINGULAR_P {
            for &gamma in &GAMMA_GRID[1..] {
                for &m in &TRUNCATION_GRID {
                    let mut rng = rng_for(&mut row_index);
                    let mut acc = RowAccumulator::new(cfg.rel_slack, cfg.corrupt_rhs_factor);
                    for i in 0..cfg.count {
                        let t = sample_tuple(&mut rng, i);
                        let v = check_sing_fourpoint_trunc(
                            t[0],
                            t[1],
                            t[2],
                            t[3],
                            p,
                            gamma,
                            m,
                            cfg.rel_slack,
                        )
                        .unwrap();
                        acc.record(t, &v);
                    }
                    rows.push(acc.into_row(
                        "sing-fourpoint-trunc",
                        format!("p={p}, gamma={gamma}, M={m}"),
                    ));
                }
            }
        }
    }

    rows
}
