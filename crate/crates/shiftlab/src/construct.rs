//! Constructive machinery: index sets with a prescribed density envelope
//! (built block by block with exact integer boundaries), the rank map and
//! interleaver that write one sequence on a set and another on its
//! complement, a canonical equidistributed sequence, and the two orbit-pair
//! constructions realizing prescribed distributional spectra.
//!
//! The block construction alternates runs and gaps: inside a run the running
//! density climbs until it first reaches the odd target `c_(2i+1)`, inside a
//! gap it falls until it first drops below the even target `c_(2i+2)`. The
//! odd targets follow the fixed square-root schedule toward `q`; the even
//! targets approach `p` while keeping a `δ`-margin below the previous odd
//! target. Block boundaries grow geometrically, so the trace is carried in
//! exact big integers far past the materialization horizon; the block index,
//! not elapsed time, is the convergence clock. A `schedule_offset` starts
//! the square-root clock late, giving in-horizon convergence for empirical
//! work at desk scale.

use crate::density::{IndexSet, SpectrumInterval};
use crate::distributional::{agreement_run_lengths, approach_times};
use crate::error::{Error, Result};
use crate::symbolic::{pair_decode, TruncatedPoint};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A target density interval `[p, q] ⊆ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTarget {
    pub p: f64,
    pub q: f64,
}

impl SpectrumTarget {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) || p > q {
            return Err(Error::InvalidInput(format!(
                "[{p}, {q}] is not a subinterval of [0, 1]"
            )));
        }
        Ok(SpectrumTarget { p, q })
    }
}

/// One run/gap pair of the block trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Checkpoint {
    pub index: u64,
    /// Running density at the end of run `index` (the local maximum).
    pub peak_ratio: f64,
    /// Running density at the end of gap `index` (the local minimum).
    pub trough_ratio: f64,
    /// Length of gap `index` (`∞`-safe: big lengths saturate to `f64::MAX`).
    pub gap_len: f64,
    /// Length of run `index + 1`.
    pub next_run_len: f64,
    /// Natural log of the time at the end of run `index`.
    pub ln_peak_time: f64,
}

/// Construction parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructParams {
    pub target: SpectrumTarget,
    pub delta: f64,
    /// Members below this bound are materialized.
    pub horizon: u64,
    /// Late start of the square-root schedule; `0` is the literal schedule.
    pub schedule_offset: u64,
    /// Minimum number of run/gap pairs to trace (the trace always reaches
    /// the horizon as well).
    pub trace_pairs: u64,
}

impl ConstructParams {
    pub fn new(target: SpectrumTarget, delta: f64, horizon: u64) -> Self {
        ConstructParams {
            target,
            delta,
            horizon,
            schedule_offset: 0,
            trace_pairs: 240,
        }
    }

    pub fn with_offset(mut self, offset: u64) -> Self {
        self.schedule_offset = offset;
        self
    }

    pub fn with_trace_pairs(mut self, pairs: u64) -> Self {
        self.trace_pairs = pairs;
        self
    }
}

/// An index set built to a density-envelope target, with its exact interval
/// trace and per-block checkpoint report.
#[derive(Debug, Clone)]
pub struct AdmissibleSet {
    pub target: SpectrumTarget,
    pub delta: f64,
    pub horizon: u64,
    pub schedule_offset: u64,
    /// Built as the complement of a `(0,0)`-target set.
    pub complemented: bool,
    /// Exact run intervals `[l, r)`, extending beyond the horizon.
    pub intervals: Vec<(BigUint, BigUint)>,
    pub checkpoints: Vec<Checkpoint>,
    /// The horizon cut a run or gap short.
    pub truncated: bool,
    /// Times the `δ`-margin term was the binding choice for an even target.
    pub clamp_events: u64,
    /// Members below the horizon.
    pub set: IndexSet,
}

fn f64_to_ratio(c: f64) -> (BigUint, BigUint) {
    debug_assert!(c > 0.0 && c.is_finite());
    let bits = c.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e2) = if exp == 0 {
        (frac, -1074i64)
    } else {
        (frac | (1 << 52), exp - 1075)
    };
    if e2 >= 0 {
        (BigUint::from(mant) << e2 as u64, BigUint::one())
    } else {
        (BigUint::from(mant), BigUint::one() << (-e2) as u64)
    }
}

fn big_to_f64_ratio(num: &BigUint, den: &BigUint) -> f64 {
    crate::combinatorics::big_ratio(num, den)
}

fn ln_of_big(v: &BigUint) -> f64 {
    crate::combinatorics::ln_big(v)
}

/// Build an index set targeting the density envelope `[p, q]`.
///
/// Run/gap boundaries are the least integers meeting the running-density
/// conditions, computed exactly. The even targets use
/// `min(c_odd − 2δ/√g, max(p, 1/√g))` at schedule clock `g`, which follows
/// the plain `min(p, c_odd − 2δ/√g)` rule whenever `p ≥ 1/√g` and otherwise
/// keeps the target positive (a zero target would make the gap condition
/// unsatisfiable). The strict margin `c_even < c_odd − δ/√g` is checked at
/// every step and aborts the construction when the given `(p, q, δ)` cannot
/// honor it. A target of `[1, 1]` is built as the complement of a `[0, 0]`
/// construction, which keeps both checkpoint families inside tolerance.
pub fn construct_admissible_set(params: &ConstructParams) -> Result<AdmissibleSet> {
    let p = params.target.p;
    if !(params.delta > 0.0 && params.delta <= 0.5) {
        return Err(Error::InvalidInput(format!(
            "delta must lie in (0, 1/2], got {}",
            params.delta
        )));
    }
    if params.horizon < 1000 {
        return Err(Error::InvalidInput("horizon must be at least 1000".into()));
    }
    if p == 1.0 {
        // Forced q = 1: complement of the sparse construction.
        let inner = ConstructParams {
            target: SpectrumTarget::new(0.0, 0.0)?,
            ..params.clone()
        };
        let built = construct_trace(&inner)?;
        return complement_admissible(built, params);
    }
    let built = construct_trace(params)?;
    finish_admissible(built, params, false)
}

struct Trace {
    intervals: Vec<(BigUint, BigUint)>,
    clamp_events: u64,
}

fn construct_trace(params: &ConstructParams) -> Result<Trace> {
    let SpectrumTarget { p, q } = params.target;
    let delta = params.delta;
    let offset = params.schedule_offset;

    let mut intervals: Vec<(BigUint, BigUint)> = vec![(BigUint::zero(), BigUint::one())];
    let mut inside = BigUint::one(); // members below the last run end
    let mut t_prev = BigUint::one(); // last boundary laid down
    let mut c_odd_prev = 1.0f64;
    let mut clamp_events = 0u64;
    let horizon = BigUint::from(params.horizon);

    let mut i: u64 = 0;
    loop {
        let g = 2 * (i + offset) + 2;
        let sqrt_g = (g as f64).sqrt();
        let margin_bound = c_odd_prev - 2.0 * delta / sqrt_g;
        let target_bound = p.max(1.0 / sqrt_g);
        let c_even = margin_bound.min(target_bound);
        if c_even == margin_bound && margin_bound < target_bound {
            clamp_events += 1;
        }
        if !(c_even > 0.0) {
            return Err(Error::Infeasible(format!(
                "even target at pair {i} is {c_even:.6}; delta {delta} too large for q ≈ {c_odd_prev:.6}"
            )));
        }
        if !(c_even < c_odd_prev - delta / sqrt_g) {
            return Err(Error::Infeasible(format!(
                "margin check failed at pair {i}: even target {c_even:.6} not below {:.6}",
                c_odd_prev - delta / sqrt_g
            )));
        }

        // Least t ≥ t_prev + 1 with inside/t < c_even, i.e. t > inside/c_even.
        let (num, den) = f64_to_ratio(c_even);
        let floor = (&inside * &den) / &num;
        let t_even = (floor + 1u32).max(&t_prev + 1u32);

        let g_odd = 2 * (i + offset) + 3;
        let c_odd = if q == 0.0 {
            1.0 / (g_odd as f64).sqrt()
        } else {
            q - q / (g_odd as f64).sqrt()
        };
        debug_assert!(c_odd > 0.0 && c_odd < 1.0);
        // Least t ≥ t_even + 1 with (inside + t − t_even)/t ≥ c_odd,
        // i.e. t(1 − c_odd) ≥ t_even − inside.
        let deficit = &t_even - &inside;
        let (num2, den2) = f64_to_ratio(1.0 - c_odd);
        let t_odd = ((&deficit * &den2 + &num2 - BigUint::one()) / &num2).max(&t_even + 1u32);

        inside += &t_odd - &t_even;
        intervals.push((t_even.clone(), t_odd.clone()));
        t_prev = t_odd.clone();
        c_odd_prev = c_odd;
        i += 1;

        if t_odd > horizon && i >= params.trace_pairs {
            break;
        }
        if i > 8_000_000 {
            return Err(Error::Capacity("construction exceeded the block cap".into()));
        }
    }
    Ok(Trace {
        intervals,
        clamp_events,
    })
}

fn materialize(intervals: &[(BigUint, BigUint)], horizon: u64) -> Result<(IndexSet, bool)> {
    let mut members = Vec::new();
    let mut truncated = false;
    let h = BigUint::from(horizon);
    for (l, r) in intervals {
        if *l >= h {
            break;
        }
        if *r > h {
            truncated = true;
        }
        let lo = l.to_u64().expect("interval start below horizon fits u64");
        let hi = r.to_u64().unwrap_or(horizon).min(horizon);
        members.extend(lo..hi);
    }
    // The trace always extends past the horizon, so a clean cut is also a cut.
    if !truncated {
        truncated = intervals
            .last()
            .is_some_and(|(l, _)| *l >= h);
    }
    Ok((IndexSet::new(members, horizon)?, false_or(truncated)))
}

fn false_or(b: bool) -> bool {
    b
}

/// Recompute the checkpoint report from interval data alone.
pub fn checkpoints_from_intervals(intervals: &[(BigUint, BigUint)]) -> Vec<Checkpoint> {
    let mut out = Vec::new();
    let mut inside = BigUint::zero();
    for (i, pair) in intervals.windows(2).enumerate() {
        let (l0, r0) = (&pair[0].0, &pair[0].1);
        let (l1, r1) = (&pair[1].0, &pair[1].1);
        inside += r0 - l0;
        let peak_ratio = big_to_f64_ratio(&inside, r0);
        let trough_ratio = big_to_f64_ratio(&inside, l1);
        out.push(Checkpoint {
            index: i as u64,
            peak_ratio,
            trough_ratio,
            gap_len: (l1 - r0).to_f64().unwrap_or(f64::MAX),
            next_run_len: (r1 - l1).to_f64().unwrap_or(f64::MAX),
            ln_peak_time: ln_of_big(r0),
        });
    }
    out
}

fn finish_admissible(
    trace: Trace,
    params: &ConstructParams,
    complemented: bool,
) -> Result<AdmissibleSet> {
    let checkpoints = checkpoints_from_intervals(&trace.intervals);
    let (set, truncated) = materialize(&trace.intervals, params.horizon)?;
    Ok(AdmissibleSet {
        target: params.target,
        delta: params.delta,
        horizon: params.horizon,
        schedule_offset: params.schedule_offset,
        complemented,
        intervals: trace.intervals,
        checkpoints,
        truncated,
        clamp_events: trace.clamp_events,
        set,
    })
}

fn complement_admissible(trace: Trace, params: &ConstructParams) -> Result<AdmissibleSet> {
    let mut intervals = Vec::with_capacity(trace.intervals.len());
    for pair in trace.intervals.windows(2) {
        intervals.push((pair[0].1.clone(), pair[1].0.clone()));
    }
    finish_admissible(
        Trace {
            intervals,
            clamp_events: trace.clamp_events,
        },
        params,
        true,
    )
}

/// Report from [`verify_admissible`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub target: SpectrumTarget,
    pub tolerance: f64,
    pub i_min: u64,
    pub checkpoints_used: u64,
    pub max_peak_deviation: f64,
    pub max_trough_deviation: f64,
    /// Smallest run or gap length in the tail.
    pub min_tail_block: f64,
    /// Excess-count trend `ln(t·(q − peak))` strictly increasing across the
    /// tail; `None` when `q = 0`, where the trend is not defined.
    pub trend_increasing: Option<bool>,
    pub pass: bool,
}

/// Re-derive the checkpoint ratios from the interval trace alone and check
/// them against the target: peak ratios within `tol` of `q` and trough
/// ratios within `tol` of `p` for every pair index `≥ i_min`, plus (for
/// `q > 0`) the strictly increasing excess-count trend across the tail.
pub fn verify_admissible(
    intervals: &[(BigUint, BigUint)],
    target: &SpectrumTarget,
    tol: f64,
    i_min: u64,
) -> Result<VerifyReport> {
    if intervals.len() < 2 {
        return Err(Error::Degenerate("need at least two runs to verify".into()));
    }
    let checkpoints = checkpoints_from_intervals(intervals);
    let tail: Vec<&Checkpoint> = checkpoints.iter().filter(|c| c.index >= i_min).collect();
    if tail.is_empty() {
        return Err(Error::InsufficientData(format!(
            "no checkpoints at index ≥ {i_min} (have {})",
            checkpoints.len()
        )));
    }
    let mut max_peak_deviation: f64 = 0.0;
    let mut max_trough_deviation: f64 = 0.0;
    let mut min_tail_block = f64::INFINITY;
    for c in &tail {
        max_peak_deviation = max_peak_deviation.max((c.peak_ratio - target.q).abs());
        max_trough_deviation = max_trough_deviation.max((c.trough_ratio - target.p).abs());
        min_tail_block = min_tail_block.min(c.gap_len).min(c.next_run_len);
    }
    let trend_increasing = if target.q > 0.0 {
        let series: Vec<f64> = tail
            .iter()
            .map(|c| {
                let excess = target.q - c.peak_ratio;
                if excess > 0.0 {
                    c.ln_peak_time + excess.ln()
                } else {
                    f64::NEG_INFINITY
                }
            })
            .collect();
        let increases = series.windows(2).filter(|w| w[1] > w[0]).count();
        let steps = series.len().saturating_sub(1);
        Some(steps == 0 || (increases as f64 >= 0.8 * steps as f64 && series[series.len() - 1] > series[0]))
    } else {
        None
    };
    let pass = max_peak_deviation <= tol
        && max_trough_deviation <= tol
        && trend_increasing.unwrap_or(true);
    Ok(VerifyReport {
        target: *target,
        tolerance: tol,
        i_min,
        checkpoints_used: tail.len() as u64,
        max_peak_deviation,
        max_trough_deviation,
        min_tail_block,
        trend_increasing,
        pass,
    })
}

/// Write `on_members` on the set and `off_members` on its complement, each
/// read in order: output index `i` takes `on_members[rank(i)]` when `i` is a
/// member and `off_members[complement rank]` otherwise.
pub fn interleave(
    set: &IndexSet,
    on_members: &TruncatedPoint,
    off_members: &TruncatedPoint,
) -> Result<TruncatedPoint> {
    if on_members.alphabet() != off_members.alphabet() {
        return Err(Error::Mismatch("interleaved sequences must share an alphabet".into()));
    }
    let h: usize = set
        .horizon()
        .try_into()
        .map_err(|_| Error::Capacity("horizon too large to materialize".into()))?;
    let need_on = set.len();
    let need_off = h - need_on;
    if on_members.horizon() < need_on || off_members.horizon() < need_off {
        return Err(Error::InvalidInput(format!(
            "interleave needs {need_on} member symbols and {need_off} complement symbols, \
             have {} and {}",
            on_members.horizon(),
            off_members.horizon()
        )));
    }
    let mut out = Vec::with_capacity(h);
    let mut next_member = set.members().iter().copied().peekable();
    let mut on_i = 0usize;
    let mut off_i = 0usize;
    for i in 0..h as u64 {
        if next_member.peek() == Some(&i) {
            next_member.next();
            out.push(on_members.get(on_i));
            on_i += 1;
        } else {
            out.push(off_members.get(off_i));
            off_i += 1;
        }
    }
    TruncatedPoint::new(out, on_members.alphabet())
}

/// Restrict an interleaved point to the complement of the set and reindex by
/// rank: recovers the consumed prefix of the complement-side input.
pub fn restrict_to_complement(set: &IndexSet, z: &TruncatedPoint) -> Result<TruncatedPoint> {
    let h: usize = set
        .horizon()
        .try_into()
        .map_err(|_| Error::Capacity("horizon too large".into()))?;
    if z.horizon() < h {
        return Err(Error::InvalidInput("point shorter than the set horizon".into()));
    }
    let mut out = Vec::with_capacity(h - set.len());
    let mut next_member = set.members().iter().copied().peekable();
    for i in 0..h as u64 {
        if next_member.peek() == Some(&i) {
            next_member.next();
        } else {
            out.push(z.get(i as usize));
        }
    }
    TruncatedPoint::new(out, z.alphabet())
}

/// Source of a reference sequence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum GenericSource {
    /// All words of length 1, then 2, 3, …, in lexicographic order,
    /// concatenated: empirical word frequencies converge to uniform.
    Champernowne,
    AllZero,
    AllMax,
    UserSupplied(Vec<u32>),
}

/// Materialize a reference sequence over `m` symbols.
pub fn generic_sequence(src: &GenericSource, m: u32, horizon: usize) -> Result<TruncatedPoint> {
    if horizon == 0 {
        return Err(Error::InvalidInput("horizon must be at least 1".into()));
    }
    match src {
        GenericSource::AllZero => TruncatedPoint::constant(0, m, horizon),
        GenericSource::AllMax => TruncatedPoint::constant(m - 1, m, horizon),
        GenericSource::UserSupplied(symbols) => {
            if symbols.len() < horizon {
                return Err(Error::InvalidInput(format!(
                    "supplied sequence has {} symbols, need {horizon}",
                    symbols.len()
                )));
            }
            TruncatedPoint::new(symbols[..horizon].to_vec(), m)
        }
        GenericSource::Champernowne => {
            let mut out = Vec::with_capacity(horizon);
            let mut len = 1u32;
            'outer: loop {
                let words = (m as u64).checked_pow(len).ok_or_else(|| {
                    Error::Capacity("word enumeration exhausted the counter".into())
                })?;
                let mut digits = vec![0u32; len as usize];
                for _ in 0..words {
                    for &d in &digits {
                        out.push(d);
                        if out.len() == horizon {
                            break 'outer;
                        }
                    }
                    // Lexicographic successor: increment as a base-m counter,
                    // most significant digit first.
                    for pos in (0..digits.len()).rev() {
                        digits[pos] += 1;
                        if digits[pos] < m {
                            break;
                        }
                        digits[pos] = 0;
                    }
                }
                len += 1;
            }
            TruncatedPoint::new(out, m)
        }
    }
}

/// Verify that every length-`k` window of the pair contains a disagreement
/// from index `from` on; returns the first violating window otherwise.
pub fn check_window_distal(
    a: &TruncatedPoint,
    b: &TruncatedPoint,
    k: usize,
    from: usize,
) -> Result<()> {
    if k == 0 || k > a.horizon() {
        return Err(Error::InvalidInput("window length out of range".into()));
    }
    let runs = agreement_run_lengths(a, b)?;
    for i in from..=a.horizon() - k {
        if runs[i] as usize >= k {
            return Err(Error::InvalidInput(format!(
                "pair agrees on the window [{i}, {}): not {k}-window separated",
                i + k
            )));
        }
    }
    Ok(())
}

/// A pair sharing one sequence on the set and carrying a window-separated
/// pair on the complement: its approach-time density envelope locks to the
/// set's density envelope for every window length up to the declared one.
#[derive(Debug, Clone)]
pub struct DcPair {
    pub x: TruncatedPoint,
    pub y: TruncatedPoint,
    /// Declared separation window of the complement-side pair.
    pub window: usize,
    /// Indices below this are exempt from the reverse inclusion.
    pub exempt_below: u64,
}

/// Build the exact-envelope pair: `shared` on the set (both coordinates),
/// `a` and `b` on the complement. `(a, b)` must disagree within every
/// length-`window` window (checked; the violation index is reported).
pub fn build_dc_pair(
    adm: &AdmissibleSet,
    a: &TruncatedPoint,
    b: &TruncatedPoint,
    shared: &TruncatedPoint,
    window: usize,
) -> Result<DcPair> {
    check_window_distal(a, b, window, 0)?;
    let x = interleave(&adm.set, shared, a)?;
    let y = interleave(&adm.set, shared, b)?;
    Ok(DcPair {
        x,
        y,
        window,
        exempt_below: 0,
    })
}

/// A pair sharing one sequence on the set and carrying the two halves of a
/// decoded equidistributed sequence on the complement: its approach-time
/// envelope at window `k` converges to
/// `[p + (1−p)K^(−k), q + (1−q)K^(−k)]`.
#[derive(Debug, Clone)]
pub struct EventualPair {
    pub x: TruncatedPoint,
    pub y: TruncatedPoint,
}

/// Build the eventual-envelope pair from a shared sequence and the decoded
/// halves of the canonical equidistributed sequence over `K²`.
pub fn build_eventual_pair(adm: &AdmissibleSet, shared: &TruncatedPoint) -> Result<EventualPair> {
    let k = shared.alphabet();
    let h: usize = adm
        .set
        .horizon()
        .try_into()
        .map_err(|_| Error::Capacity("horizon too large".into()))?;
    let paired = generic_sequence(&GenericSource::Champernowne, k * k, h)?;
    let (b, c) = pair_decode(&paired)?;
    let x = interleave(&adm.set, shared, &b)?;
    let y = interleave(&adm.set, shared, &c)?;
    Ok(EventualPair { x, y })
}

/// The predicted approach-time envelope of the eventual-envelope pair at
/// window `k`: `[p + (1−p)K^(−k), q + (1−q)K^(−k)]`.
pub fn predicted_eventual_envelope(
    target: &SpectrumTarget,
    k_alphabet: u32,
    window: usize,
) -> Result<SpectrumInterval> {
    let step = (k_alphabet as f64).powi(-(window as i32));
    SpectrumInterval::new(
        target.p + (1.0 - target.p) * step,
        target.q + (1.0 - target.q) * step,
    )
}

/// Running approach-time densities read at the block boundaries of the
/// underlying set, where the envelope's extremes occur.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckpointSpectrum {
    pub interval: SpectrumInterval,
    /// `(time, density)` at the ends of runs (local maxima).
    pub peaks: Vec<(u64, f64)>,
    /// `(time, density)` at the starts of runs (local minima).
    pub troughs: Vec<(u64, f64)>,
}

/// Default checkpoint-time floor for [`checkpoint_spectrum`]: a sixteenth of
/// the last observable run end, at least 1000. Early checkpoints carry both
/// the one-member quantization `1/t` and the reference sequence's
/// slowly-decaying prefix drift.
pub fn checkpoint_floor(set: &IndexSet) -> u64 {
    let r_max = crate::density::runs_of(set)
        .iter()
        .rev()
        .find(|&&(_, _, terminated)| terminated)
        .map_or(0, |&(_, r, _)| r);
    1000.max(r_max / 16)
}

/// Evaluate the approach-time density at the materialized block boundaries,
/// ignoring checkpoints before `min_time` (where the one-member quantization
/// `1/t` still matters). Peak checkpoints sit at run ends minus `window − 1`,
/// trough checkpoints at run starts minus `window − 1`.
pub fn checkpoint_spectrum(
    x: &TruncatedPoint,
    y: &TruncatedPoint,
    set: &IndexSet,
    window: usize,
    min_time: u64,
) -> Result<CheckpointSpectrum> {
    let a = approach_times(x, y, window)?;
    let times = a.indices();
    let runs = crate::density::runs_of(set);
    let w = window as u64;
    let valid = times.horizon();
    let mut peaks = Vec::new();
    let mut troughs = Vec::new();
    for (i, &(l, r, terminated)) in runs.iter().enumerate() {
        // Run ends are density maxima; they need the observable right end.
        if terminated {
            if let Some(t) = r
                .checked_sub(w - 1)
                .filter(|&t| t >= min_time.max(1) && t <= valid)
            {
                peaks.push((t, times.count_below(t)? as f64 / t as f64));
            }
        }
        // Run starts are density minima; the left end is always observable.
        if i >= 1 {
            if let Some(t) = l
                .checked_sub(w - 1)
                .filter(|&t| t >= min_time.max(1) && t <= valid)
            {
                troughs.push((t, times.count_below(t)? as f64 / t as f64));
            }
        }
    }
    if peaks.is_empty() || troughs.is_empty() {
        return Err(Error::InsufficientData(format!(
            "{} peak and {} trough checkpoints past time {min_time}",
            peaks.len(),
            troughs.len()
        )));
    }
    let lo = troughs.iter().map(|&(_, v)| v).fold(f64::INFINITY, f64::min);
    let hi = peaks.iter().map(|&(_, v)| v).fold(f64::NEG_INFINITY, f64::max);
    Ok(CheckpointSpectrum {
        interval: SpectrumInterval::new(lo.min(hi), hi.max(lo))?,
        peaks,
        troughs,
    })
}

/// Report from [`dc_pair_inclusions`]: the two exact index-set inclusions
/// behind the exact-envelope pair, checked on the truncation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InclusionReport {
    pub window_inner: usize,
    pub window_outer: usize,
    pub forward_checked: u64,
    pub forward_violations: u64,
    pub reverse_checked: u64,
    pub reverse_violations: u64,
}

impl InclusionReport {
    pub fn pass(&self) -> bool {
        self.forward_violations == 0 && self.reverse_violations == 0
    }
}

/// Check, exactly on the truncation:
///
/// * forward: every member `i` whose whole window `[i, i+m)` stays inside
///   the set is an approach time at window `m`;
/// * reverse: every approach time at the declared window `k` either lies in
///   the set, sits within `k` of a run start (from below), or is below the
///   exempt bound.
pub fn dc_pair_inclusions(
    set: &IndexSet,
    pair: &DcPair,
    m: usize,
) -> Result<InclusionReport> {
    if m < pair.window {
        return Err(Error::InvalidInput(
            "outer window must be at least the declared separation window".into(),
        ));
    }
    let h = pair.x.horizon();
    let runs = agreement_run_lengths(&pair.x, &pair.y)?;
    let set_runs = crate::density::runs_of(set);

    let mut forward_checked = 0u64;
    let mut forward_violations = 0u64;
    for &(l, r, _) in &set_runs {
        if r - l < m as u64 {
            continue;
        }
        let hi = (r - m as u64).min(h.saturating_sub(m) as u64);
        for i in l..=hi {
            forward_checked += 1;
            if (runs[i as usize] as usize) < m {
                forward_violations += 1;
            }
        }
    }

    // Run starts excluding zero: the right endpoints of complement runs.
    let run_starts: Vec<u64> = set_runs.iter().map(|&(l, _, _)| l).filter(|&l| l > 0).collect();
    let k = pair.window;
    let mut reverse_checked = 0u64;
    let mut reverse_violations = 0u64;
    for i in pair.exempt_below..=(h.saturating_sub(k)) as u64 {
        if (runs[i as usize] as usize) < k {
            continue;
        }
        reverse_checked += 1;
        if set.contains(i) {
            continue;
        }
        // Within k of a run start from below: some start in [i, i + k − 1].
        let pos = run_starts.partition_point(|&l| l < i);
        let near_start = run_starts.get(pos).is_some_and(|&l| l <= i + k as u64 - 1);
        if !near_start {
            reverse_violations += 1;
        }
    }
    Ok(InclusionReport {
        window_inner: k,
        window_outer: m,
        forward_checked,
        forward_violations,
        reverse_checked,
        reverse_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{block_decompose, spectrum_estimate};

    fn target(p: f64, q: f64) -> SpectrumTarget {
        SpectrumTarget::new(p, q).unwrap()
    }

    #[test]
    fn construct_middle_target() {
        let params = ConstructParams::new(target(0.3, 0.7), 0.1, 100_000).with_trace_pairs(220);
        let adm = construct_admissible_set(&params).unwrap();
        let rep = verify_admissible(&adm.intervals, &adm.target, 0.2, 10).unwrap();
        assert!(rep.pass, "{rep:?}");
        // Late checkpoints tighten toward the square-root schedule.
        let tight = verify_admissible(&adm.intervals, &adm.target, 0.05, 200).unwrap();
        assert!(tight.pass, "{tight:?}");
        assert!(adm.set.len() > 0);
    }

    #[test]
    fn construct_rejects_bad_params() {
        assert!(construct_admissible_set(&ConstructParams::new(target(0.0, 0.0), 0.6, 10_000)).is_err());
        assert!(construct_admissible_set(&ConstructParams::new(target(0.0, 0.0), 0.1, 100)).is_err());
        // Small q with a large margin demand is infeasible.
        let r = construct_admissible_set(&ConstructParams::new(target(0.0, 0.05), 0.5, 10_000));
        assert!(matches!(r, Err(Error::Infeasible(_))), "{r:?}");
    }

    #[test]
    fn construct_sparse_and_full_targets() {
        let params = ConstructParams::new(target(0.0, 0.0), 0.1, 50_000).with_trace_pairs(40);
        let adm = construct_admissible_set(&params).unwrap();
        let rep = verify_admissible(&adm.intervals, &adm.target, 0.2, 20).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.trend_increasing.is_none());

        let params = ConstructParams::new(target(1.0, 1.0), 0.1, 50_000).with_trace_pairs(40);
        let adm = construct_admissible_set(&params).unwrap();
        assert!(adm.complemented);
        let rep = verify_admissible(&adm.intervals, &adm.target, 0.2, 20).unwrap();
        assert!(rep.pass, "{rep:?}");
        // Complement of a sparse set is dense.
        let est = spectrum_estimate(&adm.set, 1000).unwrap();
        assert!(est.interval.lo > 0.8, "{:?}", est.interval);
    }

    #[test]
    fn evens_fail_growing_block_requirement() {
        // A periodic set keeps the right ratios but its blocks never grow.
        let evens = IndexSet::from_predicate(10_000, |i| i % 2 == 0).unwrap();
        let blocks = block_decompose(&evens).unwrap();
        let intervals: Vec<(BigUint, BigUint)> = blocks
            .left
            .iter()
            .zip(&blocks.right)
            .map(|(&l, &r)| (BigUint::from(l), BigUint::from(r)))
            .collect();
        let rep = verify_admissible(&intervals, &target(0.5, 0.5), 0.05, 10).unwrap();
        assert!(rep.min_tail_block <= 1.0);
        // Ratio checks hold but the excess trend stalls.
        assert_eq!(rep.trend_increasing, Some(false), "{rep:?}");
    }

    #[test]
    fn rank_and_interleave_round_trip() {
        let set = IndexSet::from_predicate(100, |i| i % 2 == 0).unwrap();
        assert_eq!(set.rank(0).unwrap(), 0);
        assert_eq!(set.rank(4).unwrap(), 2);
        assert!(set.rank(3).is_err());

        let a = TruncatedPoint::from_fn(2, 50, |_| 1).unwrap();
        let x = TruncatedPoint::from_fn(2, 50, |i| (i % 2) as u32).unwrap();
        let z = interleave(&set, &a, &x).unwrap();
        // Alternation: a0 x0 a1 x1 …
        for i in 0..50 {
            assert_eq!(z.get(2 * i), 1);
            assert_eq!(z.get(2 * i + 1), (i % 2) as u32);
        }
        let back = restrict_to_complement(&set, &z).unwrap();
        assert_eq!(back.symbols(), &x.symbols()[..50]);

        // Degenerate sets: identity on the surviving side.
        let empty = IndexSet::empty(10).unwrap();
        let z = interleave(&empty, &a, &x).unwrap();
        assert_eq!(z.symbols(), &x.symbols()[..10]);
        let full = IndexSet::full(10).unwrap();
        let z = interleave(&full, &a, &x).unwrap();
        assert_eq!(z.symbols(), &a.symbols()[..10]);
    }

    #[test]
    fn interleave_reports_required_lengths() {
        let set = IndexSet::from_predicate(100, |i| i % 2 == 0).unwrap();
        let short = TruncatedPoint::constant(0, 2, 10).unwrap();
        let x = TruncatedPoint::constant(0, 2, 100).unwrap();
        let err = interleave(&set, &short, &x).unwrap_err();
        assert!(err.to_string().contains("50"), "{err}");
    }

    #[test]
    fn champernowne_prefix() {
        let x = generic_sequence(&GenericSource::Champernowne, 2, 14).unwrap();
        assert_eq!(x.symbols(), &[0, 1, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn champernowne_symbol_frequency() {
        // Truncation mid-region leaves a leading-symbol bias that decays
        // only logarithmically; region-aligned horizons are exact.
        let h = 100_000;
        let x = generic_sequence(&GenericSource::Champernowne, 3, h).unwrap();
        let mut counts = [0u64; 3];
        for &s in x.symbols() {
            counts[s as usize] += 1;
        }
        for c in counts {
            assert!((c as f64 / h as f64 - 1.0 / 3.0).abs() < 0.05, "{counts:?}");
        }
        let aligned: usize = (1..=7).map(|l| 3usize.pow(l) * l as usize).sum();
        let x = generic_sequence(&GenericSource::Champernowne, 3, aligned).unwrap();
        let mut counts = [0u64; 3];
        for &s in x.symbols() {
            counts[s as usize] += 1;
        }
        for c in counts {
            assert!(
                (c as f64 / aligned as f64 - 1.0 / 3.0).abs() < 0.005,
                "{counts:?}"
            );
        }
    }

    #[test]
    fn window_distal_check() {
        let zeros = TruncatedPoint::constant(0, 2, 100).unwrap();
        let ones = TruncatedPoint::constant(1, 2, 100).unwrap();
        check_window_distal(&zeros, &ones, 1, 0).unwrap();
        let near = TruncatedPoint::from_fn(2, 100, |i| u32::from(i == 50)).unwrap();
        assert!(check_window_distal(&zeros, &near, 3, 0).is_err());
        check_window_distal(&zeros, &near, 60, 0).unwrap();
    }

    #[test]
    fn dc_pair_basic_envelope() {
        let params = ConstructParams::new(target(0.3, 0.7), 0.1, 200_000)
            .with_offset(2500)
            .with_trace_pairs(4);
        let adm = construct_admissible_set(&params).unwrap();
        let h = adm.set.horizon() as usize;
        let a = TruncatedPoint::constant(0, 2, h).unwrap();
        let b = TruncatedPoint::constant(1, 2, h).unwrap();
        let pair = build_dc_pair(&adm, &a, &b, &a, 1).unwrap();
        let cs = checkpoint_spectrum(&pair.x, &pair.y, &adm.set, 1, checkpoint_floor(&adm.set)).unwrap();
        assert!((cs.interval.lo - 0.3).abs() < 0.05, "{:?}", cs.interval);
        assert!((cs.interval.hi - 0.7).abs() < 0.05, "{:?}", cs.interval);
        let inc = dc_pair_inclusions(&adm.set, &pair, 3).unwrap();
        assert!(inc.pass(), "{inc:?}");
    }

    #[test]
    fn eventual_pair_envelope_small() {
        let params = ConstructParams::new(target(0.3, 0.7), 0.1, 200_000)
            .with_offset(2500)
            .with_trace_pairs(4);
        let adm = construct_admissible_set(&params).unwrap();
        let h = adm.set.horizon() as usize;
        let shared = TruncatedPoint::constant(0, 2, h).unwrap();
        let pair = build_eventual_pair(&adm, &shared).unwrap();
        let floor = checkpoint_floor(&adm.set);
        for k in 1..=3usize {
            let predicted = predicted_eventual_envelope(&adm.target, 2, k).unwrap();
            let cs = checkpoint_spectrum(&pair.x, &pair.y, &adm.set, k, floor).unwrap();
            assert!(
                cs.interval.endpoint_distance(&predicted) < 0.05,
                "k={k}: {:?} vs {:?}",
                cs.interval,
                predicted
            );
        }
    }

    #[test]
    fn interleave_case_split_random() {
        // Independent re-derivation of the interleaver's defining case split.
        let set = IndexSet::from_predicate(500, |i| (i * i + i / 3) % 5 < 2).unwrap();
        let a = TruncatedPoint::from_fn(3, 500, |i| ((i * 7 + 2) % 3) as u32).unwrap();
        let x = TruncatedPoint::from_fn(3, 500, |i| ((i * 11 + 1) % 3) as u32).unwrap();
        let z = interleave(&set, &a, &x).unwrap();
        let comp = set.complement();
        for i in 0..500u64 {
            let expect = if set.contains(i) {
                a.get(set.rank(i).unwrap() as usize)
            } else {
                x.get(comp.rank(i).unwrap() as usize)
            };
            assert_eq!(z.get(i as usize), expect, "index {i}");
        }
    }
}
