//! Subsets of the naturals at a finite horizon: counting functions, running
//! densities and their min/max envelope, the block decomposition into maximal
//! runs, dilation invariance of the density envelope, and densities along
//! arithmetic progressions.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// A closed subinterval of `[0, 1]`; the value of every density estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumInterval {
    pub lo: f64,
    pub hi: f64,
}

impl SpectrumInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
            return Err(Error::InvalidInput(format!(
                "[{lo}, {hi}] is not a subinterval of [0, 1]"
            )));
        }
        Ok(SpectrumInterval { lo, hi })
    }

    pub fn point(v: f64) -> Result<Self> {
        Self::new(v, v)
    }

    /// Coordinatewise order: both endpoints no larger.
    pub fn le(&self, other: &SpectrumInterval) -> bool {
        self.lo <= other.lo && self.hi <= other.hi
    }

    /// Hausdorff-style distance between endpoints, for tolerance checks.
    pub fn endpoint_distance(&self, other: &SpectrumInterval) -> f64 {
        (self.lo - other.lo).abs().max((self.hi - other.hi).abs())
    }
}

/// A strictly increasing set of naturals below a horizon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSet {
    members: Vec<u64>,
    horizon: u64,
}

impl IndexSet {
    pub fn new(members: Vec<u64>, horizon: u64) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidInput("horizon must be positive".into()));
        }
        for w in members.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidInput(
                    "members must be strictly increasing".into(),
                ));
            }
        }
        if members.last().is_some_and(|&m| m >= horizon) {
            return Err(Error::InvalidInput(format!(
                "member {} not below horizon {horizon}",
                members.last().unwrap()
            )));
        }
        Ok(IndexSet { members, horizon })
    }

    pub fn empty(horizon: u64) -> Result<Self> {
        Self::new(Vec::new(), horizon)
    }

    pub fn full(horizon: u64) -> Result<Self> {
        Self::new((0..horizon).collect(), horizon)
    }

    /// Members selected by a predicate over `0..horizon`.
    pub fn from_predicate(horizon: u64, pred: impl Fn(u64) -> bool) -> Result<Self> {
        Self::new((0..horizon).filter(|&i| pred(i)).collect(), horizon)
    }

    /// Union of half-open intervals `[l, r)` clipped to the horizon.
    /// Intervals must be disjoint and increasing.
    pub fn from_intervals(intervals: &[(u64, u64)], horizon: u64) -> Result<Self> {
        let mut members = Vec::new();
        let mut prev_end = 0u64;
        for &(l, r) in intervals {
            if l < prev_end && prev_end > 0 {
                return Err(Error::InvalidInput(
                    "intervals must be disjoint and increasing".into(),
                ));
            }
            if l >= r {
                return Err(Error::InvalidInput(format!("empty interval [{l}, {r})")));
            }
            members.extend(l..r.min(horizon));
            prev_end = r;
            if l >= horizon {
                break;
            }
        }
        Self::new(members, horizon)
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() as u64 == self.horizon
    }

    pub fn contains(&self, i: u64) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// Counting function: number of members strictly below `n`.
    pub fn count_below(&self, n: u64) -> Result<u64> {
        if n > self.horizon {
            return Err(Error::InvalidInput(format!(
                "count requested at {n} beyond horizon {}",
                self.horizon
            )));
        }
        Ok(self.members.partition_point(|&m| m < n) as u64)
    }

    /// Complement within `[0, horizon)`.
    pub fn complement(&self) -> IndexSet {
        let mut out = Vec::with_capacity((self.horizon as usize).saturating_sub(self.members.len()));
        let mut it = self.members.iter().copied().peekable();
        for i in 0..self.horizon {
            if it.peek() == Some(&i) {
                it.next();
            } else {
                out.push(i);
            }
        }
        IndexSet {
            members: out,
            horizon: self.horizon,
        }
    }

    /// Rank of a member: the order-preserving bijection onto `0..len`.
    pub fn rank(&self, i: u64) -> Result<u64> {
        match self.members.binary_search(&i) {
            Ok(pos) => Ok(pos as u64),
            Err(_) => Err(Error::InvalidInput(format!("{i} is not a member"))),
        }
    }

    /// Serialize as the text form: a `horizon=<n>` header, then one entry per
    /// line. Maximal runs are emitted in `l..r` form, singletons as numbers.
    pub fn to_text(&self) -> String {
        let mut out = format!("horizon={}\n", self.horizon);
        let mut i = 0;
        while i < self.members.len() {
            let start = self.members[i];
            let mut j = i;
            while j + 1 < self.members.len() && self.members[j + 1] == self.members[j] + 1 {
                j += 1;
            }
            if j > i {
                let _ = writeln!(out, "{}..{}", start, self.members[j] + 1);
            } else {
                let _ = writeln!(out, "{start}");
            }
            i = j + 1;
        }
        out
    }

    /// Parse the text form accepted by [`IndexSet::to_text`]: a header line
    /// `horizon=<n>`, then newline-delimited decimal members or `l..r` runs.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing horizon header".into()))?;
        let horizon = header
            .trim()
            .strip_prefix("horizon=")
            .ok_or_else(|| Error::Parse(format!("expected horizon=<n>, got {header:?}")))?
            .parse::<u64>()
            .map_err(|e| Error::Parse(format!("bad horizon: {e}")))?;
        let mut members = Vec::new();
        for line in lines {
            let line = line.trim();
            if let Some((l, r)) = line.split_once("..") {
                let l: u64 = l.parse().map_err(|e| Error::Parse(format!("bad run start: {e}")))?;
                let r: u64 = r.parse().map_err(|e| Error::Parse(format!("bad run end: {e}")))?;
                if l >= r {
                    return Err(Error::Parse(format!("empty run {l}..{r}")));
                }
                members.extend(l..r);
            } else {
                members.push(
                    line.parse()
                        .map_err(|e| Error::Parse(format!("bad member: {e}")))?,
                );
            }
        }
        Self::new(members, horizon)
    }
}

/// A density estimate together with the window it was taken over.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SpectrumEstimate {
    pub interval: SpectrumInterval,
    pub warmup: u64,
    pub horizon: u64,
    /// Set when the horizon is shorter than twice the warmup, leaving the
    /// estimate with too little room to stabilize.
    pub window_too_small: bool,
}

/// Min/max of the running densities `count_below(n)/n` over
/// `n ∈ [max(warmup, 1), horizon]`. Upper-approximates the limit superior and
/// lower-approximates the limit inferior of the infinite set the horizon
/// truncates. Degenerate sets short-circuit: empty → `[0,0]`, full → `[1,1]`.
pub fn spectrum_estimate(set: &IndexSet, warmup: u64) -> Result<SpectrumEstimate> {
    if warmup >= set.horizon() {
        return Err(Error::InvalidInput(format!(
            "warmup {warmup} not below horizon {}",
            set.horizon()
        )));
    }
    let window_too_small = set.horizon() < 2 * warmup;
    let interval = if set.is_empty() {
        SpectrumInterval::point(0.0)?
    } else if set.is_full() {
        SpectrumInterval::point(1.0)?
    } else {
        let start = warmup.max(1);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut count = set.members().partition_point(|&m| m < start) as u64;
        let mut next = set.members().get(count as usize).copied();
        for n in start..=set.horizon() {
            // count = #(members < n); advance before using n.
            let d = count as f64 / n as f64;
            lo = lo.min(d);
            hi = hi.max(d);
            if next == Some(n) {
                count += 1;
                next = set.members().get(count as usize).copied();
            }
        }
        SpectrumInterval::new(lo, hi)?
    };
    Ok(SpectrumEstimate {
        interval,
        warmup,
        horizon: set.horizon(),
        window_too_small,
    })
}

/// Default estimation warmup: `max(100, horizon/100)`.
pub fn default_warmup(horizon: u64) -> u64 {
    100.max(horizon / 100)
}

/// The block decomposition of a set with both it and its complement nonempty:
/// `left[i]`/`right[i]` are the endpoints of the i-th maximal run `[l, r)`,
/// `boundaries` interleaves them, `gaps[i]` are consecutive boundary
/// differences, and `inside[i]`/`outside[i]` count members and non-members
/// below `boundaries[i+1]`. The identity `inside[i] + outside[i] ==
/// boundaries[i+1]` holds for every represented index.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub left: Vec<u64>,
    pub right: Vec<u64>,
    pub boundaries: Vec<u64>,
    pub gaps: Vec<u64>,
    pub inside: Vec<u64>,
    pub outside: Vec<u64>,
}

/// Maximal runs `[l, r)` of the set, with a flag marking whether the right
/// endpoint is observable (`false` when the run hits the horizon).
pub fn runs_of(set: &IndexSet) -> Vec<(u64, u64, bool)> {
    let members = set.members();
    let mut out = Vec::new();
    let mut i = 0;
    while i < members.len() {
        let start = members[i];
        let mut j = i;
        while j + 1 < members.len() && members[j + 1] == members[j] + 1 {
            j += 1;
        }
        let end = members[j] + 1;
        out.push((start, end, end < set.horizon()));
        i = j + 1;
    }
    out
}

/// Decompose a set into maximal runs. The final run is dropped when it
/// reaches the horizon, since its right endpoint is not observable.
pub fn block_decompose(set: &IndexSet) -> Result<BlockDecomposition> {
    if set.is_empty() || set.is_full() {
        return Err(Error::Degenerate(
            "block decomposition needs both the set and its complement nonempty".into(),
        ));
    }
    let members = set.members();
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut i = 0;
    while i < members.len() {
        let start = members[i];
        let mut j = i;
        while j + 1 < members.len() && members[j + 1] == members[j] + 1 {
            j += 1;
        }
        let end = members[j] + 1;
        if end < set.horizon() {
            left.push(start);
            right.push(end);
        } else {
            // Unterminated trailing run: skip, its true end is unknown.
        }
        i = j + 1;
    }
    let mut boundaries = Vec::with_capacity(left.len() * 2);
    for (&l, &r) in left.iter().zip(&right) {
        boundaries.push(l);
        boundaries.push(r);
    }
    let gaps = boundaries.windows(2).map(|w| w[1] - w[0]).collect();
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for w in boundaries.windows(2) {
        let t_next = w[1];
        let e = set.count_below(t_next)?;
        inside.push(e);
        outside.push(t_next - e);
    }
    Ok(BlockDecomposition {
        left,
        right,
        boundaries,
        gaps,
        inside,
        outside,
    })
}

impl BlockDecomposition {
    /// Number of run/gap checkpoint pairs with both ratios represented.
    pub fn pairs(&self) -> usize {
        // Ratio i needs boundaries[2i+2], i.e. inside[2i+1].
        self.inside.len() / 2
    }

    /// Density at the end of run `i`: members below `boundaries[2i+1]` over
    /// that boundary. The running density peaks here.
    pub fn peak_ratio(&self, i: usize) -> f64 {
        self.inside[2 * i] as f64 / self.boundaries[2 * i + 1] as f64
    }

    /// Density at the end of gap `i`: the running density bottoms out here.
    pub fn trough_ratio(&self, i: usize) -> f64 {
        self.inside[2 * i + 1] as f64 / self.boundaries[2 * i + 2] as f64
    }
}

/// Finite-horizon density envelope read off the block checkpoints:
/// `[min trough, max peak]` over represented runs past a warmup boundary
/// (default `max(100, last boundary / 100)`, matching [`spectrum_estimate`];
/// the warmup falls away when it would leave no checkpoints). Requires at
/// least two run/gap pairs (four boundaries).
pub fn spectrum_via_blocks(b: &BlockDecomposition) -> Result<SpectrumInterval> {
    let warmup = default_warmup(b.boundaries.last().copied().unwrap_or(0));
    spectrum_via_blocks_from(b, warmup)
}

/// [`spectrum_via_blocks`] with an explicit warmup boundary.
pub fn spectrum_via_blocks_from(b: &BlockDecomposition, warmup: u64) -> Result<SpectrumInterval> {
    if b.boundaries.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "{} checkpoints, need at least 4",
            b.boundaries.len()
        )));
    }
    let mut pass = |warmup: u64| -> (f64, f64, bool) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut any = false;
        for i in 0..b.pairs() {
            if b.boundaries[2 * i + 2] >= warmup {
                lo = lo.min(b.trough_ratio(i));
                any = true;
            }
            if b.boundaries[2 * i + 1] >= warmup {
                hi = hi.max(b.peak_ratio(i));
                any = true;
            }
        }
        if b.inside.len() % 2 == 1 && b.boundaries[b.inside.len()] >= warmup {
            hi = hi.max(b.peak_ratio(b.inside.len() / 2));
            any = true;
        }
        (lo, hi, any)
    };
    let (mut lo, mut hi, any) = pass(warmup);
    if !any {
        (lo, hi, _) = pass(0);
    }
    if !lo.is_finite() {
        lo = hi;
    }
    if !hi.is_finite() {
        hi = lo;
    }
    SpectrumInterval::new(lo.min(hi), hi.max(lo))
}

/// Report from [`dilation_spectrum_check`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DilationReport {
    pub factor: u64,
    pub original: SpectrumInterval,
    pub dilated: SpectrumInterval,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Check that dilating a set by `k` (each member `m` becoming the block
/// `[km, km+k)`) preserves its density envelope within estimator tolerance.
pub fn dilation_spectrum_check(set: &IndexSet, k: u64, warmup: u64) -> Result<DilationReport> {
    if k == 0 {
        return Err(Error::InvalidInput("dilation factor must be positive".into()));
    }
    let new_horizon = set
        .horizon()
        .checked_mul(k)
        .ok_or_else(|| Error::Capacity("dilated horizon overflows".into()))?;
    if new_horizon > (1 << 33) {
        return Err(Error::Capacity(format!(
            "dilated horizon {new_horizon} beyond supported scan size"
        )));
    }
    let mut members = Vec::with_capacity(set.len() * k as usize);
    for &m in set.members() {
        members.extend(m * k..m * k + k);
    }
    let dilated = IndexSet::new(members, new_horizon)?;
    let original = spectrum_estimate(set, warmup)?.interval;
    let dil = spectrum_estimate(&dilated, warmup * k)?.interval;
    // Estimator slack: one block of the dilated set plus the warmup edge.
    let tolerance = (2.0 / warmup.max(1) as f64 + k as f64 / set.horizon() as f64).max(1e-9) * 2.0;
    let deviation = original.endpoint_distance(&dil);
    Ok(DilationReport {
        factor: k,
        original,
        dilated: dil,
        deviation,
        tolerance,
        pass: deviation <= tolerance,
    })
}

/// Exact monotonicity of the counting function under inclusion.
pub fn subset_monotonicity(m: &IndexSet, n: &IndexSet) -> Result<bool> {
    if m.horizon() != n.horizon() {
        return Err(Error::Mismatch("horizons differ".into()));
    }
    if !m.members().iter().all(|&i| n.contains(i)) {
        return Err(Error::InvalidInput("first set is not a subset".into()));
    }
    for t in 1..=m.horizon() {
        if m.count_below(t)? > n.count_below(t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Count of `(nℕ + j) ∩ [l, r)`, in closed form.
pub fn progression_count_in_interval(l: u64, r: u64, n: u64, j: u64) -> u64 {
    if l >= r {
        return 0;
    }
    let first = if l <= j {
        j
    } else {
        j + n * ((l - j).div_ceil(n))
    };
    if first >= r {
        0
    } else {
        (r - 1 - first) / n + 1
    }
}

/// Densities of `N ∩ (nℕ + j)` at the given checkpoints, with the exact
/// deviation bound `|count(N ∩ prog) − count(N)/n| ≤ count(left endpoints)`
/// asserted at each checkpoint (in integer form `|n·a − b| ≤ n·ℓ`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProgressionDensityReport {
    pub values: Vec<f64>,
    pub bound_violations: u64,
}

pub fn progression_density(
    set: &IndexSet,
    n: u64,
    j: u64,
    checkpoints: &[u64],
) -> Result<ProgressionDensityReport> {
    if n == 0 || j >= n {
        return Err(Error::InvalidInput(format!(
            "residue {j} out of range for modulus {n}"
        )));
    }
    let prog: Vec<u64> = set.members().iter().copied().filter(|m| m % n == j).collect();
    let left: Vec<u64> = set
        .members()
        .iter()
        .copied()
        .filter(|&m| m == 0 || !set.contains(m - 1))
        .collect();
    let mut values = Vec::with_capacity(checkpoints.len());
    let mut bound_violations = 0;
    for &t in checkpoints {
        if t > set.horizon() {
            return Err(Error::InvalidInput(format!(
                "checkpoint {t} beyond horizon {}",
                set.horizon()
            )));
        }
        if t == 0 {
            values.push(0.0);
            continue;
        }
        let a = prog.partition_point(|&m| m < t) as u64;
        let b = set.count_below(t)?;
        let ell = left.partition_point(|&m| m < t) as u64;
        let lhs = (n as i128 * a as i128 - b as i128).unsigned_abs();
        if lhs > (n as u128) * (ell as u128) {
            bound_violations += 1;
        }
        values.push(a as f64 / t as f64);
    }
    Ok(ProgressionDensityReport {
        values,
        bound_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn evens(h: u64) -> IndexSet {
        IndexSet::from_predicate(h, |i| i % 2 == 0).unwrap()
    }

    #[test]
    fn count_below_examples() {
        let empty = IndexSet::empty(100).unwrap();
        assert_eq!(empty.count_below(50).unwrap(), 0);
        assert_eq!(evens(200).count_below(100).unwrap(), 50);
        let n = IndexSet::new(vec![0, 1, 4, 5, 6], 8).unwrap();
        // Direct count of members strictly below the cutoff.
        assert_eq!(n.count_below(6).unwrap(), 4);
        assert_eq!(n.count_below(7).unwrap(), 5);
        assert!(n.count_below(9).is_err());
    }

    #[test]
    fn spectrum_estimate_periodic_and_degenerate() {
        let est = spectrum_estimate(&evens(10_000), 100).unwrap();
        assert!((est.interval.lo - 0.5).abs() < 0.01);
        assert!((est.interval.hi - 0.5).abs() < 0.01);
        let empty = IndexSet::empty(1000).unwrap();
        let est = spectrum_estimate(&empty, 10).unwrap();
        assert_eq!(est.interval, SpectrumInterval::point(0.0).unwrap());
        let full = IndexSet::full(1000).unwrap();
        assert_eq!(
            spectrum_estimate(&full, 10).unwrap().interval,
            SpectrumInterval::point(1.0).unwrap()
        );
    }

    #[test]
    fn spectrum_estimate_powers_of_four() {
        // Members in [4^i, 2·4^i): running density oscillates between 1/3 and 2/3.
        let h = 4u64.pow(8);
        let set = IndexSet::from_predicate(h, |i| {
            let mut p = 1u64;
            loop {
                if (p..2 * p).contains(&i) {
                    return true;
                }
                if p > i {
                    return false;
                }
                p *= 4;
            }
        })
        .unwrap();
        let est = spectrum_estimate(&set, 100).unwrap();
        assert!((est.interval.lo - 1.0 / 3.0).abs() < 0.02, "{:?}", est.interval);
        assert!((est.interval.hi - 2.0 / 3.0).abs() < 0.02, "{:?}", est.interval);
    }

    #[test]
    fn block_decompose_example() {
        let n = IndexSet::new(vec![0, 1, 4, 5, 6], 8).unwrap();
        let b = block_decompose(&n).unwrap();
        assert_eq!(b.boundaries, vec![0, 2, 4, 7]);
        assert_eq!(b.gaps, vec![2, 2, 3]);
        assert_eq!(b.inside, vec![2, 2, 5]);
        assert_eq!(b.outside, vec![0, 2, 2]);
        for i in 0..b.inside.len() {
            assert_eq!(b.inside[i] + b.outside[i], b.boundaries[i + 1]);
        }
    }

    #[test]
    fn block_decompose_singleton_and_periodic() {
        let n = IndexSet::new(vec![1], 4).unwrap();
        let b = block_decompose(&n).unwrap();
        assert_eq!(b.left, vec![1]);
        assert_eq!(b.right, vec![2]);
        assert_eq!(b.boundaries, vec![1, 2]);

        let b = block_decompose(&evens(11)).unwrap();
        assert!(b.gaps.iter().all(|&d| d == 1));
    }

    #[test]
    fn block_decompose_degenerate() {
        assert!(block_decompose(&IndexSet::empty(10).unwrap()).is_err());
        assert!(block_decompose(&IndexSet::full(10).unwrap()).is_err());
    }

    #[test]
    fn spectrum_via_blocks_matches_estimate_for_periodic() {
        let n = evens(10_000);
        let b = block_decompose(&n).unwrap();
        let s = spectrum_via_blocks(&b).unwrap();
        assert!((s.lo - 0.5).abs() < 0.01);
        assert!((s.hi - 0.5).abs() < 0.01);
    }

    #[test]
    fn spectrum_via_blocks_single_run() {
        // One run covering the first half: peak density 1, trough 1/2.
        let h = 1000;
        let set = IndexSet::from_intervals(&[(0, 500), (990, 992)], h).unwrap();
        let b = block_decompose(&set).unwrap();
        let s = spectrum_via_blocks(&b).unwrap();
        assert!((s.hi - 1.0).abs() < 0.02, "{s:?}");
        assert!((s.lo - 0.5).abs() < 0.02, "{s:?}");
    }

    #[test]
    fn dilation_preserves_spectrum() {
        let rep = dilation_spectrum_check(&evens(100_000), 2, 1000).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!((rep.dilated.lo - 0.5).abs() < 0.01);

        let rep = dilation_spectrum_check(&evens(100_000), 1, 1000).unwrap();
        assert_eq!(rep.deviation, 0.0);
    }

    #[test]
    fn sparse_set_has_zero_spectrum() {
        let h = 1 << 20;
        let set = IndexSet::from_predicate(h, |i| i.is_power_of_two()).unwrap();
        let est = spectrum_estimate(&set, 1000).unwrap();
        assert!(est.interval.hi < 0.02, "{:?}", est.interval);
    }

    #[test]
    fn progression_interval_count_bound() {
        // Any two residues count within 1 of each other on any interval.
        for l in 0..20 {
            for r in l..25 {
                for n in 1..6 {
                    for j0 in 0..n {
                        for j1 in 0..n {
                            let a = progression_count_in_interval(l, r, n, j0) as i64;
                            let b = progression_count_in_interval(l, r, n, j1) as i64;
                            assert!((a - b).abs() <= 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn progression_density_examples() {
        let rep = progression_density(&evens(10_000), 2, 0, &[1000, 10_000]).unwrap();
        assert_eq!(rep.bound_violations, 0);
        for v in &rep.values {
            assert!((v - 0.5).abs() < 0.01);
        }
        let empty = IndexSet::empty(100).unwrap();
        let rep = progression_density(&empty, 3, 1, &[10, 100]).unwrap();
        assert!(rep.values.iter().all(|&v| v == 0.0));
        assert!(progression_density(&evens(10), 2, 2, &[5]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let n = IndexSet::new(vec![0, 1, 2, 7, 9, 10], 12).unwrap();
        let text = n.to_text();
        assert!(text.starts_with("horizon=12\n"));
        assert!(text.contains("0..3"));
        let back = IndexSet::from_text(&text).unwrap();
        assert_eq!(back, n);
        let explicit = "horizon=8\n1\n3\n5..7\n";
        let parsed = IndexSet::from_text(explicit).unwrap();
        assert_eq!(parsed.members(), &[1, 3, 5, 6]);
    }
}
