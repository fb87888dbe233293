//! Operator-channel simulation: the network delivers a subspace obtained from
//! the transmitted one by random mixing (row-space preserving), dimension
//! deletions and dimension insertions, and the receiver decodes by minimum
//! subspace distance over the code.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fqlinalg::{MatrixFq, Subspace};
use crate::netcode::Code;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ChannelConfig {
    /// Dimensions removed from the transmitted space.
    pub deletions: usize,
    /// Random error dimensions adjoined (the actual rank added per trial can
    /// be lower when an inserted vector falls inside the span).
    pub insertions: usize,
    /// Row-mixing passes before deletion, simulating intermediate nodes.
    pub mixing: usize,
    /// Master seed; every trial derives its own stream from it.
    pub seed: u64,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Per-trial seed from the master seed and trial index, so trials are
/// independent streams regardless of execution order.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    let mut s = master ^ trial.wrapping_mul(0xd1b54a32d192ed03);
    splitmix64(&mut s)
}

fn random_invertible(rng: &mut ChaCha8Rng, field: &crate::gf::Field, n: usize) -> MatrixFq {
    let q = field.order() as u32;
    loop {
        let rows: Vec<Vec<u32>> =
            (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
        let m = MatrixFq::from_rows(field.clone(), &rows).expect("codes in range");
        if m.rank() == n {
            return m;
        }
    }
}

#[derive(Debug, Clone)]
pub struct TransmitOutcome {
    pub received: Subspace,
    /// Rank actually added by the inserted vectors.
    pub inserted_rank: usize,
}

/// Run one channel use on the subspace `v`.
pub fn transmit(
    v: &Subspace,
    cfg: &ChannelConfig,
    trial_index: u64,
) -> Result<TransmitOutcome, Error> {
    let l = v.dim();
    if cfg.deletions > l {
        return Err(Error::TooManyDeletions { sigma: cfg.deletions, dim: l });
    }
    let field = v.field().clone();
    let q = field.order() as u32;
    let n = v.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, trial_index));

    // mix: left-multiply the basis by random invertible matrices; the row
    // space is unchanged but the individual rows are scrambled, so the
    // deletion below removes random directions rather than RREF basis rows
    let mut basis = v.basis().clone();
    for _ in 0..cfg.mixing {
        if l > 0 {
            let p = random_invertible(&mut rng, &field, l);
            basis = p.matmul(&basis)?;
        }
    }

    let mut keep: Vec<usize> = (0..l).collect();
    for _ in 0..cfg.deletions {
        let i = rng.gen_range(0..keep.len());
        keep.swap_remove(i);
    }
    keep.sort_unstable();
    let mut rows: Vec<Vec<u32>> = keep.iter().map(|&r| basis.row(r).to_vec()).collect();

    let after_deletion = if rows.is_empty() {
        Subspace::zero(field.clone(), n)
    } else {
        Subspace::from_rows(&MatrixFq::from_rows(field.clone(), &rows)?)
    };

    for _ in 0..cfg.insertions {
        rows.push((0..n).map(|_| rng.gen_range(0..q)).collect());
    }
    let received = if rows.is_empty() {
        Subspace::zero(field.clone(), n)
    } else {
        Subspace::from_rows(&MatrixFq::from_rows(field, &rows)?)
    };
    let inserted_rank = received.dim() - after_deletion.dim();
    Ok(TransmitOutcome { received, inserted_rank })
}

#[derive(Debug, Clone, Serialize)]
pub struct Decoded {
    pub subset: Vec<usize>,
    pub distance: usize,
    pub tie: bool,
}

/// Minimum-distance decoding: scan the code, return the first codeword (in
/// build order, which is lexicographic for exhaustive codes) attaining the
/// minimum distance, flagging ties.
pub fn decode_min_dist(code: &Code, received: &Subspace) -> Result<Decoded, Error> {
    let mut best: Option<(usize, usize)> = None;
    let mut tie = false;
    for (i, (_, v)) in code.codewords.iter().enumerate() {
        let d = received.distance(v)?;
        match best {
            None => best = Some((d, i)),
            Some((bd, bi)) => {
                if d < bd {
                    best = Some((d, i));
                    tie = false;
                } else if d == bd && code.codewords[i].1 != code.codewords[bi].1 {
                    tie = true;
                }
            }
        }
    }
    let (distance, idx) = best.ok_or(Error::DegenerateCode)?;
    Ok(Decoded {
        subset: code.codewords[idx].0.indices().to_vec(),
        distance,
        tie,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub transmitted: Vec<usize>,
    pub received_dim: usize,
    pub inserted_rank: usize,
    pub decoded: Vec<usize>,
    pub distance: usize,
    pub tie: bool,
    pub success: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialReport {
    pub config: ChannelConfig,
    pub trials: u64,
    pub successes: u64,
    pub failures: u64,
    pub ambiguous: u64,
    pub success_rate: f64,
    pub records: Vec<TrialRecord>,
}

/// Deterministic given `(cfg.seed, trials)`: the transmitted codeword of each
/// trial and all channel randomness derive from the per-trial seed. A tie
/// counts as a failure (and as ambiguous).
pub fn run_trials(code: &Code, cfg: &ChannelConfig, trials: u64) -> Result<TrialReport, Error> {
    let mut records = Vec::with_capacity(trials as usize);
    let mut successes = 0;
    let mut ambiguous = 0;
    for trial in 0..trials {
        let seed = trial_seed(cfg.seed, trial);
        let mut pick_rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa5a5a5a5a5a5a5a5);
        let idx = pick_rng.gen_range(0..code.codewords.len());
        let (subset, v) = &code.codewords[idx];
        let out = transmit(v, cfg, trial)?;
        let dec = decode_min_dist(code, &out.received)?;
        let success = !dec.tie && dec.subset == subset.indices();
        if success {
            successes += 1;
        }
        if dec.tie {
            ambiguous += 1;
        }
        records.push(TrialRecord {
            trial,
            seed,
            transmitted: subset.indices().to_vec(),
            received_dim: out.received.dim(),
            inserted_rank: out.inserted_rank,
            decoded: dec.subset,
            distance: dec.distance,
            tie: dec.tie,
            success,
        });
    }
    let failures = trials - successes;
    Ok(TrialReport {
        config: *cfg,
        trials,
        successes,
        failures,
        ambiguous,
        success_rate: if trials > 0 { successes as f64 / trials as f64 } else { 1.0 },
        records,
    })
}
