//! Seeded synthetic return panels from a linear factor model.
//!
//! `r_it = scale * (sum_f B_if * F_ft + noise_i * e_it)` with independent
//! standard-normal factors and shocks. Used by the benches, the acceptance
//! suite and for trying the CLI without market data.

use chrono::{DateTime, TimeDelta, Utc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::marketdata::{PriceRecord, ReturnPanel};

#[derive(Debug, Clone, PartialEq)]
pub struct FactorModel {
    pub symbols: Vec<String>,
    /// `loadings[i][f]`.
    pub loadings: Vec<Vec<f64>>,
    pub noise: Vec<f64>,
    pub scale: f64,
    pub seed: u64,
}

impl FactorModel {
    /// Random model: a common market factor with loadings in `[0.2, 1)` plus
    /// `factors - 1` sector factors with normal loadings of scale 0.5.
    pub fn new(n_symbols: usize, factors: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_fac7);
        let loadings = (0..n_symbols)
            .map(|_| {
                (0..factors.max(1))
                    .map(|f| {
                        if f == 0 {
                            rng.gen_range(0.2..1.0)
                        } else {
                            0.5 * rng.sample::<f64, _>(StandardNormal)
                        }
                    })
                    .collect()
            })
            .collect();
        let noise = (0..n_symbols).map(|_| rng.gen_range(0.5..1.5)).collect();
        FactorModel {
            symbols: (0..n_symbols).map(|i| format!("S{i:03}")).collect(),
            loadings,
            noise,
            scale: 1e-3,
            seed,
        }
    }

    /// One hub driving every other symbol through a single factor.
    pub fn star(n_symbols: usize, hub_loading: f64, spoke_loading: f64, seed: u64) -> Self {
        let loadings = (0..n_symbols)
            .map(|i| vec![if i == 0 { hub_loading } else { spoke_loading }])
            .collect();
        let mut noise = vec![1.0; n_symbols];
        noise[0] = 0.05;
        FactorModel {
            symbols: (0..n_symbols).map(|i| format!("S{i:03}")).collect(),
            loadings,
            noise,
            scale: 1e-3,
            seed,
        }
    }

    pub fn n_symbols(&self) -> usize {
        self.symbols.len()
    }

    fn columns(&self, rows: usize) -> Vec<Vec<f64>> {
        let n = self.n_symbols();
        let k = self.loadings.first().map_or(0, Vec::len);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut cols = vec![Vec::with_capacity(rows); n];
        let mut factors = vec![0.0; k];
        for _ in 0..rows {
            for f in factors.iter_mut() {
                *f = rng.sample(StandardNormal);
            }
            for (i, col) in cols.iter_mut().enumerate() {
                let common: f64 = self.loadings[i].iter().zip(&factors).map(|(b, f)| b * f).sum();
                let shock: f64 = rng.sample(StandardNormal);
                col.push(self.scale * (common + self.noise[i] * shock));
            }
        }
        cols
    }

    /// A fully observed panel of `rows` minute returns starting at `start`.
    pub fn panel(&self, start: DateTime<Utc>, rows: usize) -> ReturnPanel {
        let grid = (0..=rows as i64).map(|m| start + TimeDelta::minutes(m)).collect();
        ReturnPanel::from_columns(grid, self.symbols.clone(), self.columns(rows))
            .expect("synthetic panel is well formed")
    }

    /// Minute price prints (starting at 100) whose log returns are the model's
    /// returns. Symbols get a `-<quote>` suffix.
    pub fn price_records(&self, start: DateTime<Utc>, rows: usize, quote: &str) -> Vec<PriceRecord> {
        let cols = self.columns(rows);
        let mut out = Vec::with_capacity((rows + 1) * self.n_symbols());
        for (sym, col) in self.symbols.iter().zip(&cols) {
            let name = format!("{sym}-{quote}");
            let mut log_p = 100f64.ln();
            out.push(PriceRecord {
                symbol: name.clone(),
                timestamp: start,
                price: log_p.exp(),
            });
            for (t, r) in col.iter().enumerate() {
                log_p += r;
                out.push(PriceRecord {
                    symbol: name.clone(),
                    timestamp: start + TimeDelta::minutes(t as i64 + 1),
                    price: log_p.exp(),
                });
            }
        }
        out
    }
}
