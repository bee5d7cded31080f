//! Empirical distributional analysis of orbit pairs under the shift: the
//! times at which two orbits agree on a symbol window, the running-density
//! envelope of those times at each window length, the profile across window
//! lengths with extrapolated limits, pair classification, and the exact
//! index-set inclusions relating a shift power to the base shift.
//!
//! Under the cylinder metric the closeness condition `ρ(σⁱx, σⁱy) < ε`
//! depends on `ε` only through the window length `k` with
//! `ε ∈ (K^(−k), K^(−k+1)]`: it holds exactly when the orbits agree on
//! `[i, i+k)`.

use crate::density::{spectrum_estimate, IndexSet, SpectrumInterval};
use crate::error::{Error, Result};
use crate::symbolic::TruncatedPoint;
use serde::{Deserialize, Serialize};

/// Length of the maximal agreement run starting at each index: entry `i` is
/// the largest `r` with `x` and `y` equal on `[i, i+r)`.
pub fn agreement_run_lengths(x: &TruncatedPoint, y: &TruncatedPoint) -> Result<Vec<u32>> {
    if x.alphabet() != y.alphabet() || x.horizon() != y.horizon() {
        return Err(Error::Mismatch("pair must share alphabet and horizon".into()));
    }
    let h = x.horizon();
    let mut runs = vec![0u32; h];
    let mut run = 0u32;
    for i in (0..h).rev() {
        run = if x.get(i) == y.get(i) { run + 1 } else { 0 };
        runs[i] = run;
    }
    Ok(runs)
}

/// The set of times at which a pair agrees on a window of length `k`.
#[derive(Debug, Clone)]
pub struct ApproachTimeSet {
    indices: IndexSet,
    window: usize,
}

impl ApproachTimeSet {
    pub fn indices(&self) -> &IndexSet {
        &self.indices
    }

    pub fn window(&self) -> usize {
        self.window
    }
}

/// Times `i ≤ horizon − k` at which `x` and `y` agree on `[i, i+k)`; these
/// are exactly the times at which the orbit distance drops below `K^(−k+1)`.
pub fn approach_times(x: &TruncatedPoint, y: &TruncatedPoint, k: usize) -> Result<ApproachTimeSet> {
    if k == 0 || k > x.horizon() {
        return Err(Error::InvalidInput(format!(
            "window length {k} out of range for horizon {}",
            x.horizon()
        )));
    }
    let runs = agreement_run_lengths(x, y)?;
    let members = (0..=x.horizon() - k)
        .filter(|&i| runs[i] as usize >= k)
        .map(|i| i as u64)
        .collect();
    Ok(ApproachTimeSet {
        indices: IndexSet::new(members, (x.horizon() - k + 1) as u64)?,
        window: k,
    })
}

/// The window length equivalent to a metric threshold: the `k` with
/// `ε ∈ (K^(−k), K^(−k+1)]`. Thresholds above the space's diameter map to
/// window length 0, reported as an error since every time qualifies.
pub fn epsilon_to_window(epsilon: f64, k_alphabet: u32) -> Result<usize> {
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(Error::InvalidInput("threshold must be positive and finite".into()));
    }
    if epsilon > 1.0 {
        return Err(Error::InvalidInput(
            "threshold exceeds the space diameter; every time qualifies".into(),
        ));
    }
    let base = k_alphabet as f64;
    let mut k = 1usize;
    let mut upper = 1.0; // K^(−k+1)
    loop {
        let lower = upper / base;
        if epsilon > lower && epsilon <= upper {
            return Ok(k);
        }
        upper = lower;
        k += 1;
        if k > 4096 {
            return Err(Error::Capacity("threshold too small to resolve".into()));
        }
    }
}

/// Min/max running density of the approach times over prefix lengths
/// `n ∈ [warmup, horizon − k + 1]`: finite-horizon estimates of the lower
/// and upper distributional functions at `ε = K^(−k+1)`.
pub fn distributional_functions(
    x: &TruncatedPoint,
    y: &TruncatedPoint,
    k: usize,
    warmup: u64,
) -> Result<(f64, f64)> {
    let a = approach_times(x, y, k)?;
    let est = spectrum_estimate(a.indices(), warmup.min(a.indices().horizon() - 1))?;
    Ok((est.interval.lo, est.interval.hi))
}

/// Profile of the approach-time density envelope across window lengths.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionalProfile {
    /// `(k, envelope)` for `k = 1..=k_max`.
    pub entries: Vec<(usize, SpectrumInterval)>,
    /// Extrapolated `(lower, upper)` limits, from the deepest stable entry.
    pub limits: Option<(f64, f64)>,
    /// The window length the limits were read at.
    pub stable_k: Option<usize>,
    /// Set if any entry failed the monotone-in-`k` post-check.
    pub monotonicity_ok: bool,
}

/// Two consecutive entries count as stable when both endpoints move by less
/// than this much.
pub const PROFILE_STABILITY_TOL: f64 = 0.01;

/// Compute the profile for `k = 1..=k_max`, enforce that entries shrink as
/// the window lengthens, and extrapolate limits at the deepest stable `k`.
pub fn spectrum_profile(
    x: &TruncatedPoint,
    y: &TruncatedPoint,
    k_max: usize,
    warmup: u64,
) -> Result<DistributionalProfile> {
    if k_max == 0 || k_max > x.horizon() / 10 {
        return Err(Error::InvalidInput(format!(
            "profile depth {k_max} out of range for horizon {}",
            x.horizon()
        )));
    }
    let mut entries = Vec::with_capacity(k_max);
    let mut monotonicity_ok = true;
    for k in 1..=k_max {
        let (lo, hi) = distributional_functions(x, y, k, warmup)?;
        let iv = SpectrumInterval::new(lo, hi)?;
        if let Some(&(_, prev)) = entries.last() {
            // Longer windows only shrink the approach set; allow the hair of
            // slack the shrinking denominator (horizon − k + 1) can add.
            if !iv.le(&prev) && iv.endpoint_distance(&prev) > 1e-4 {
                monotonicity_ok = false;
            }
        }
        entries.push((k, iv));
    }
    let mut stable_k = None;
    for w in entries.windows(2) {
        let (ka, a) = w[0];
        let (_, b) = w[1];
        let _ = ka;
        if (a.lo - b.lo).abs() < PROFILE_STABILITY_TOL && (a.hi - b.hi).abs() < PROFILE_STABILITY_TOL
        {
            stable_k = Some(w[1].0);
        }
    }
    let limits = stable_k.map(|k| {
        let iv = entries[k - 1].1;
        (iv.lo, iv.hi)
    });
    Ok(DistributionalProfile {
        entries,
        limits,
        stable_k,
        monotonicity_ok,
    })
}

/// Primary classification label. The chaos-candidate labels refine the
/// Li–Yorke label; the evidence carries every underlying flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairLabel {
    Asymptotic,
    Distal,
    ProximalNotLiYorke,
    LiYorke,
    Dc1Candidate,
    Dc2Candidate,
    Undetermined,
}

/// Thresholds used by [`classify_pair`]; all values are reported in the
/// evidence, never silently applied.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassifyConfig {
    /// Largest disagreement gap still consistent with a distal pair.
    pub distal_gap_cap: u64,
    /// Ceiling on the lower limit for a strong-chaos candidate.
    pub dc1_lower_max: f64,
    /// Floor on the upper limit for either chaos candidate.
    pub dc_upper_min: f64,
    /// Ceiling on the lower limit for the weaker chaos candidate.
    pub dc2_lower_max: f64,
    /// Fewer post-warmup disagreements than this leaves the label undetermined.
    pub min_disagreements: u64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            distal_gap_cap: 13,
            dc1_lower_max: 0.02,
            dc_upper_min: 0.98,
            dc2_lower_max: 0.9,
            min_disagreements: 5,
        }
    }
}

/// Classification evidence: every measured quantity behind the label.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairClass {
    pub label: PairLabel,
    pub is_asymptotic: bool,
    pub is_distal: bool,
    pub is_proximal: bool,
    pub dc1: bool,
    pub dc2: bool,
    /// Index of the last disagreement, if any.
    pub last_disagreement: Option<u64>,
    /// Largest difference between consecutive disagreement times (agreement
    /// run + 1), including the run trailing off the horizon.
    pub max_gap: u64,
    pub disagreements_after_warmup: u64,
    pub profile_limits: Option<(f64, f64)>,
    pub config: ClassifyConfig,
    pub warmup: u64,
}

/// Classify a pair from its disagreement set and distributional profile.
///
/// Asymptotic: disagreements stop before the warmup. Distal: disagreement
/// gaps stay below the cap through the horizon. Otherwise proximal, refined
/// to a chaos candidate when the profile limits clear the configured bands.
/// Labels are finite-horizon evidence, not certainty.
pub fn classify_pair(
    x: &TruncatedPoint,
    y: &TruncatedPoint,
    k_max: usize,
    warmup: u64,
    config: &ClassifyConfig,
) -> Result<PairClass> {
    if x.alphabet() != y.alphabet() || x.horizon() != y.horizon() {
        return Err(Error::Mismatch("pair must share alphabet and horizon".into()));
    }
    let h = x.horizon();
    let mut last_disagreement = None;
    let mut max_gap: u64 = 0;
    let mut prev: Option<u64> = None;
    let mut after_warmup = 0u64;
    for i in 0..h {
        if x.get(i) != y.get(i) {
            let i = i as u64;
            match prev {
                Some(p) => max_gap = max_gap.max(i - p),
                None => max_gap = max_gap.max(i + 1),
            }
            prev = Some(i);
            last_disagreement = Some(i);
            if i >= warmup {
                after_warmup += 1;
            }
        }
    }
    // The agreement run trailing off the horizon counts as a gap as well.
    match last_disagreement {
        Some(p) => max_gap = max_gap.max(h as u64 - p),
        None => max_gap = h as u64,
    }

    let profile = spectrum_profile(x, y, k_max.min(h / 10).max(1), warmup)?;
    let limits = profile.limits;

    let is_asymptotic = last_disagreement.map_or(true, |d| d < warmup);
    let is_distal = !is_asymptotic && max_gap <= config.distal_gap_cap;
    let is_proximal = !is_distal;
    let (mut dc1, mut dc2) = (false, false);
    if let Some((lo, hi)) = limits {
        dc1 = lo <= config.dc1_lower_max && hi >= config.dc_upper_min;
        dc2 = hi >= config.dc_upper_min && lo <= config.dc2_lower_max;
    }
    let undetermined =
        !is_asymptotic && !is_distal && after_warmup < config.min_disagreements;

    let label = if is_asymptotic {
        PairLabel::Asymptotic
    } else if is_distal {
        PairLabel::Distal
    } else if undetermined {
        PairLabel::Undetermined
    } else if dc1 {
        PairLabel::Dc1Candidate
    } else if dc2 {
        PairLabel::Dc2Candidate
    } else {
        PairLabel::LiYorke
    };
    Ok(PairClass {
        label,
        is_asymptotic,
        is_distal,
        is_proximal,
        dc1,
        dc2,
        last_disagreement,
        max_gap,
        disagreements_after_warmup: after_warmup,
        profile_limits: limits,
        config: config.clone(),
        warmup,
    })
}

/// Report from [`power_invariance_check`]: exact truncated inclusions
/// relating the approach times of the `n`-th shift power at window `m + n`
/// to those of the base shift at window `m`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PowerInvarianceReport {
    pub power: usize,
    pub window: usize,
    pub forward_checked: u64,
    pub forward_violations: u64,
    pub reverse_checked: u64,
    pub reverse_violations: u64,
}

impl PowerInvarianceReport {
    pub fn pass(&self) -> bool {
        self.forward_violations == 0 && self.reverse_violations == 0
    }
}

/// Verify, index by index on the truncation, that
///
/// * every power-shift approach time at window `m + n` spreads to `n` base
///   approach times at window `m` (`n·i + j` for `j < n`), and
/// * every power-shift non-approach at window `m` blocks the base windows
///   `m + n` at `n·i − j` for `j < n`.
///
/// Both inclusions are exact consequences of window containment; the report
/// counts violations (always zero for correct window arithmetic).
pub fn power_invariance_check(
    x: &TruncatedPoint,
    y: &TruncatedPoint,
    n: usize,
    m: usize,
) -> Result<PowerInvarianceReport> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("power and window must be positive".into()));
    }
    if m + n > x.horizon() {
        return Err(Error::InvalidInput(format!(
            "window m+n = {} exceeds horizon {}",
            m + n,
            x.horizon()
        )));
    }
    let runs = agreement_run_lengths(x, y)?;
    let h = x.horizon();
    let agree = |i: usize, w: usize| runs[i] as usize >= w;

    let mut forward_checked = 0;
    let mut forward_violations = 0;
    let mut reverse_checked = 0;
    let mut reverse_violations = 0;
    let mut i = 0usize;
    while n * i + m + n <= h {
        let base = n * i;
        if agree(base, m + n) {
            for j in 0..n {
                forward_checked += 1;
                if !agree(base + j, m) {
                    forward_violations += 1;
                }
            }
        }
        if !agree(base, m) {
            for j in 0..n {
                if base >= j && base - j + m + n <= h {
                    reverse_checked += 1;
                    if agree(base - j, m + n) {
                        reverse_violations += 1;
                    }
                }
            }
        }
        i += 1;
    }
    Ok(PowerInvarianceReport {
        power: n,
        window: m,
        forward_checked,
        forward_violations,
        reverse_checked,
        reverse_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(bits: &[u32], k: u32) -> TruncatedPoint {
        TruncatedPoint::new(bits.to_vec(), k).unwrap()
    }

    #[test]
    fn approach_times_identity_and_disjoint() {
        let x = TruncatedPoint::constant(0, 2, 64).unwrap();
        let a = approach_times(&x, &x, 3).unwrap();
        assert_eq!(a.indices().len(), 62);

        let y = TruncatedPoint::constant(1, 2, 64).unwrap();
        let a = approach_times(&x, &y, 1).unwrap();
        assert!(a.indices().is_empty());
    }

    #[test]
    fn approach_times_brute_force_window_oracle() {
        let x = TruncatedPoint::from_fn(2, 64, |i| ((i / 2) % 2) as u32).unwrap();
        let y = TruncatedPoint::from_fn(2, 64, |i| ((i / 3) % 2) as u32).unwrap();
        for k in 1..=6 {
            let fast = approach_times(&x, &y, k).unwrap();
            let brute: Vec<u64> = (0..=64 - k)
                .filter(|&i| (i..i + k).all(|j| x.get(j) == y.get(j)))
                .map(|i| i as u64)
                .collect();
            assert_eq!(fast.indices().members(), &brute[..], "k={k}");
        }
    }

    #[test]
    fn approach_times_monotone_in_window() {
        let x = TruncatedPoint::from_fn(2, 256, |i| ((i * i + 3 * i) % 7 % 2) as u32).unwrap();
        let y = TruncatedPoint::from_fn(2, 256, |i| ((i * 5 + 1) % 11 % 2) as u32).unwrap();
        let mut prev: Option<Vec<u64>> = None;
        for k in 1..=8 {
            let a = approach_times(&x, &y, k).unwrap();
            if let Some(p) = &prev {
                for m in a.indices().members() {
                    assert!(p.contains(m), "window {k} gained time {m}");
                }
            }
            prev = Some(a.indices().members().to_vec());
        }
    }

    #[test]
    fn epsilon_maps_to_window() {
        assert_eq!(epsilon_to_window(1.0, 2).unwrap(), 1);
        assert_eq!(epsilon_to_window(0.6, 2).unwrap(), 1);
        // The band is half-open above: exactly K^(−1) already needs window 2.
        assert_eq!(epsilon_to_window(0.51, 2).unwrap(), 1);
        assert_eq!(epsilon_to_window(0.5, 2).unwrap(), 2);
        assert_eq!(epsilon_to_window(0.49, 2).unwrap(), 2);
        assert_eq!(epsilon_to_window(0.26, 2).unwrap(), 2);
        assert_eq!(epsilon_to_window(0.25, 2).unwrap(), 3);
        assert_eq!(epsilon_to_window(0.2, 3).unwrap(), 2);
        assert!(epsilon_to_window(1.5, 2).is_err());
    }

    #[test]
    fn distributional_functions_extremes() {
        let x = TruncatedPoint::constant(0, 2, 2000).unwrap();
        let (lo, hi) = distributional_functions(&x, &x, 2, 100).unwrap();
        assert_eq!((lo, hi), (1.0, 1.0));
        let y = TruncatedPoint::constant(1, 2, 2000).unwrap();
        let (lo, hi) = distributional_functions(&x, &y, 2, 100).unwrap();
        assert_eq!((lo, hi), (0.0, 0.0));
    }

    #[test]
    fn profile_identity_pair() {
        let x = TruncatedPoint::constant(0, 2, 1000).unwrap();
        let p = spectrum_profile(&x, &x, 5, 100).unwrap();
        assert!(p.monotonicity_ok);
        for (_, iv) in &p.entries {
            assert_eq!((iv.lo, iv.hi), (1.0, 1.0));
        }
        assert_eq!(p.limits, Some((1.0, 1.0)));
    }

    #[test]
    fn classify_canonical_pairs() {
        let cfg = ClassifyConfig::default();
        let x = TruncatedPoint::from_fn(2, 5000, |i| (i % 2) as u32).unwrap();
        let c = classify_pair(&x, &x, 8, 500, &cfg).unwrap();
        assert_eq!(c.label, PairLabel::Asymptotic);
        assert_eq!(c.profile_limits, Some((1.0, 1.0)));

        let zeros = TruncatedPoint::constant(0, 2, 5000).unwrap();
        let ones = TruncatedPoint::constant(1, 2, 5000).unwrap();
        let c = classify_pair(&zeros, &ones, 8, 500, &cfg).unwrap();
        assert_eq!(c.label, PairLabel::Distal);
        assert_eq!(c.max_gap, 1);
    }

    #[test]
    fn classify_early_disagreements_is_asymptotic() {
        let x = TruncatedPoint::constant(0, 2, 5000).unwrap();
        let y = TruncatedPoint::from_fn(2, 5000, |i| u32::from(i < 40)).unwrap();
        let c = classify_pair(&x, &y, 8, 500, &ClassifyConfig::default()).unwrap();
        assert_eq!(c.label, PairLabel::Asymptotic);
        assert_eq!(c.last_disagreement, Some(39));
    }

    #[test]
    fn power_invariance_exact() {
        let x = TruncatedPoint::from_fn(2, 10_000, |i| ((i * 7 + 1) % 13 % 2) as u32).unwrap();
        let y = TruncatedPoint::from_fn(2, 10_000, |i| {
            (((i * 7 + 1) % 13 % 2) as u32 + u32::from(i % 97 == 0)) % 2
        })
        .unwrap();
        for n in [2, 3, 5] {
            for m in 1..=8 {
                let rep = power_invariance_check(&x, &y, n, m).unwrap();
                assert!(rep.pass(), "n={n} m={m}: {rep:?}");
                assert!(rep.forward_checked > 0);
            }
        }
    }

    #[test]
    fn power_invariance_boundary_runs() {
        // Agreement runs of length exactly m + n − 1 must not enter the
        // power approach set at window m + n.
        let (n, m) = (3usize, 4usize);
        let len = m + n - 1;
        let h = 600;
        let x = TruncatedPoint::constant(0, 2, h).unwrap();
        let y = TruncatedPoint::from_fn(2, h, |i| u32::from(i % (len + 1) == len)).unwrap();
        let runs = agreement_run_lengths(&x, &y).unwrap();
        assert_eq!(runs[0] as usize, len);
        let rep = power_invariance_check(&x, &y, n, m).unwrap();
        assert!(rep.pass(), "{rep:?}");
    }
}
