//! MAX-Log-MAP (max-log BCJR) soft-in soft-out decoder for one constituent
//! code.

use super::config::TurboConfig;
use super::rsc::{Trellis, NUM_STATES};
use crate::error::{Error, Result};

type Metrics = [f64; NUM_STATES];

#[inline]
fn sign(bit: u8) -> f64 {
    if bit == 0 {
        1.0
    } else {
        -1.0
    }
}

fn normalize(m: &mut Metrics) {
    let max = m.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    m.iter_mut().for_each(|x| *x -= max);
}

/// Reusable forward/backward buffers.
#[derive(Debug, Default)]
pub struct Workspace {
    alpha: Vec<Metrics>,
    beta: Vec<Metrics>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Computes extrinsic LLRs for one constituent code.
///
/// Branch metric for input `u`, parity `v`:
/// `½·sgn(u)·(sys + apriori) + ½·sgn(v)·par` with `sgn(0) = +1`.
/// Alpha starts in state 0; beta is uniform since the trellis is not
/// terminated. Output is the a-posteriori LLR minus `sys` and `apriori`,
/// clamped to `±llr_clamp`.
pub fn max_log_map_component(
    sys_llr: &[f64],
    par_llr: &[f64],
    apriori_llr: &[f64],
    config: &TurboConfig,
) -> Result<Vec<f64>> {
    let n = config.block_length;
    Error::check_len("systematic LLRs", n, sys_llr.len())?;
    Error::check_len("parity LLRs", n, par_llr.len())?;
    Error::check_len("a-priori LLRs", n, apriori_llr.len())?;
    let trellis = Trellis::from_config(config);
    let mut out = vec![0.0; n];
    decode_into(
        &trellis,
        sys_llr,
        par_llr,
        apriori_llr,
        config.llr_clamp,
        &mut Workspace::new(),
        &mut out,
    );
    Ok(out)
}

/// Unchecked core used by the turbo loop; slices must all have equal length.
pub(crate) fn decode_into(
    trellis: &Trellis,
    sys_llr: &[f64],
    par_llr: &[f64],
    apriori_llr: &[f64],
    clamp: f64,
    ws: &mut Workspace,
    extrinsic: &mut [f64],
) {
    let n = sys_llr.len();
    ws.alpha.clear();
    ws.alpha.resize(n + 1, [f64::NEG_INFINITY; NUM_STATES]);
    ws.beta.clear();
    ws.beta.resize(n + 1, [0.0; NUM_STATES]);
    ws.alpha[0][0] = 0.0;

    let gamma = |k: usize, input: u8, parity: u8| {
        0.5 * sign(input) * (sys_llr[k] + apriori_llr[k]) + 0.5 * sign(parity) * par_llr[k]
    };

    for k in 0..n {
        let mut next = [f64::NEG_INFINITY; NUM_STATES];
        for s in 0..NUM_STATES {
            let a = ws.alpha[k][s];
            if a == f64::NEG_INFINITY {
                continue;
            }
            for u in 0..2u8 {
                let b = trellis.branch(s, u);
                let m = a + gamma(k, u, b.parity);
                if m > next[b.next_state] {
                    next[b.next_state] = m;
                }
            }
        }
        normalize(&mut next);
        ws.alpha[k + 1] = next;
    }

    for k in (0..n).rev() {
        let mut prev = [f64::NEG_INFINITY; NUM_STATES];
        for (s, p) in prev.iter_mut().enumerate() {
            for u in 0..2u8 {
                let b = trellis.branch(s, u);
                let m = ws.beta[k + 1][b.next_state] + gamma(k, u, b.parity);
                if m > *p {
                    *p = m;
                }
            }
        }
        normalize(&mut prev);
        ws.beta[k] = prev;
    }

    for k in 0..n {
        // the systematic and a-priori terms differ by exactly (sys + apriori)
        // between u = 0 and u = 1, so only the parity term and the state
        // metrics are needed for the extrinsic part
        let mut best = [f64::NEG_INFINITY; 2];
        for s in 0..NUM_STATES {
            let a = ws.alpha[k][s];
            if a == f64::NEG_INFINITY {
                continue;
            }
            for u in 0..2u8 {
                let b = trellis.branch(s, u);
                let m = a + 0.5 * sign(b.parity) * par_llr[k] + ws.beta[k + 1][b.next_state];
                if m > best[u as usize] {
                    best[u as usize] = m;
                }
            }
        }
        extrinsic[k] = (best[0] - best[1]).clamp(-clamp, clamp);
    }
}
