//! Type classes of words over a partitioned alphabet: the simplex of class
//! frequencies and its rational lattice, the class-weighted entropy that
//! bounds cylinder dimensions, exact multinomial counts of type classes with
//! factorial-approximation control, empirical types of symbol sequences, and
//! concave maximization of the normalized entropy over constraint regions.

use crate::error::{Error, Result};
use crate::symbolic::TruncatedPoint;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A partition of `{0, …, K−1}` into disjoint nonempty classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetPartition {
    classes: Vec<Vec<u32>>,
    alphabet: u32,
    class_of: Vec<usize>,
}

impl AlphabetPartition {
    pub fn new(classes: Vec<Vec<u32>>, alphabet: u32) -> Result<Self> {
        if alphabet < 2 {
            return Err(Error::InvalidInput("alphabet must have at least 2 symbols".into()));
        }
        let mut class_of = vec![usize::MAX; alphabet as usize];
        for (ci, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidInput(format!("class {ci} is empty")));
            }
            for &s in class {
                if s >= alphabet {
                    return Err(Error::InvalidInput(format!(
                        "symbol {s} out of range for alphabet {alphabet}"
                    )));
                }
                if class_of[s as usize] != usize::MAX {
                    return Err(Error::InvalidInput(format!("symbol {s} appears twice")));
                }
                class_of[s as usize] = ci;
            }
        }
        if class_of.contains(&usize::MAX) {
            return Err(Error::InvalidInput("classes do not cover the alphabet".into()));
        }
        Ok(AlphabetPartition {
            classes,
            alphabet,
            class_of,
        })
    }

    /// One class per symbol.
    pub fn discrete(alphabet: u32) -> Result<Self> {
        Self::new((0..alphabet).map(|s| vec![s]).collect(), alphabet)
    }

    /// Two classes: the given set and its complement.
    pub fn split(first: Vec<u32>, alphabet: u32) -> Result<Self> {
        let in_first: std::collections::BTreeSet<u32> = first.iter().copied().collect();
        let rest: Vec<u32> = (0..alphabet).filter(|s| !in_first.contains(s)).collect();
        Self::new(vec![first, rest], alphabet)
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.len() as u64).collect()
    }

    pub fn class_of(&self, symbol: u32) -> usize {
        self.class_of[symbol as usize]
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }
}

/// A probability vector on the classes of a partition, optionally restricted
/// to the lattice of vectors with all coordinates integer multiples of `1/n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeVector {
    probs: Vec<f64>,
    lattice: Option<(u64, Vec<u64>)>,
}

impl TypeVector {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::InvalidInput("need at least 2 coordinates".into()));
        }
        if probs.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::InvalidInput("coordinates must lie in [0, 1]".into()));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("coordinates sum to {sum}, not 1")));
        }
        Ok(TypeVector { probs, lattice: None })
    }

    /// Exact lattice point: `counts` summing to `n`, coordinates `counts/n`.
    pub fn lattice(counts: Vec<u64>, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("lattice denominator must be positive".into()));
        }
        if counts.len() < 2 {
            return Err(Error::InvalidInput("need at least 2 coordinates".into()));
        }
        let total: u64 = counts.iter().sum();
        if total != n {
            return Err(Error::InvalidInput(format!("counts sum to {total}, not {n}")));
        }
        let probs = counts.iter().map(|&c| c as f64 / n as f64).collect();
        Ok(TypeVector {
            probs,
            lattice: Some((n, counts)),
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn lattice_n(&self) -> Option<u64> {
        self.lattice.as_ref().map(|(n, _)| *n)
    }

    pub fn lattice_counts(&self) -> Option<&[u64]> {
        self.lattice.as_ref().map(|(_, c)| c.as_slice())
    }

    /// Sup-norm distance.
    pub fn distance(&self, other: &TypeVector) -> f64 {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// An exact count together with its natural logarithm. The exact value is
/// omitted past the configured arbitrary-precision cap.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BigCount {
    pub exact: Option<BigUint>,
    pub log_value: f64,
}

impl BigCount {
    pub fn to_f64(&self) -> f64 {
        match &self.exact {
            Some(v) => v.to_f64().unwrap_or(f64::INFINITY),
            None => self.log_value.exp(),
        }
    }
}

/// Natural log of a big integer, accurate to double precision.
pub fn ln_big(v: &BigUint) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = v.bits();
    if bits <= 53 {
        return v.to_f64().unwrap().ln();
    }
    let shift = bits - 53;
    let top = (v >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Ratio of two big integers as a double, safe far past the f64 exponent range.
pub fn big_ratio(num: &BigUint, den: &BigUint) -> f64 {
    if den.is_zero() {
        return f64::NAN;
    }
    if num.is_zero() {
        return 0.0;
    }
    (ln_big(num) - ln_big(den)).exp()
}

/// `ln n!` accurate to ~1e-12, by summation below 1024 and a corrected
/// factorial approximation above.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n < 1024 {
        return (2..=n).map(|k| (k as f64).ln()).sum();
    }
    let x = n as f64;
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x.powi(3))
}

fn exact_factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

/// Class-weighted entropy `Σ −p_i ln(p_i / #class_i)`, with `0·ln 0 = 0`.
/// Ranges over `[0, ln K]`, attaining the maximum exactly at the class-size
/// proportions.
pub fn entropy_f(partition: &AlphabetPartition, p: &TypeVector) -> Result<f64> {
    if p.dim() != partition.num_classes() {
        return Err(Error::InvalidInput(format!(
            "type vector has {} coordinates, partition has {} classes",
            p.dim(),
            partition.num_classes()
        )));
    }
    let sizes = partition.class_sizes();
    let mut acc = 0.0;
    for (pi, &sz) in p.probs().iter().zip(&sizes) {
        if *pi > 0.0 {
            acc -= pi * (pi / sz as f64).ln();
        }
    }
    Ok(acc)
}

/// Normalized entropy `entropy_f / ln K`, ranging over `[0, 1]`.
pub fn entropy_g(partition: &AlphabetPartition, p: &TypeVector) -> Result<f64> {
    Ok(entropy_f(partition, p)? / (partition.alphabet() as f64).ln())
}

/// Report from [`concavity_maximizer_check`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConcavityReport {
    pub trials: u64,
    pub concavity_violations: u64,
    pub slice_maximizer: f64,
    pub grid_wins: bool,
}

/// Randomized strict-concavity check plus a grid confirmation that the
/// two-coordinate slice of the entropy peaks at `#class_0 / (#class_0 + #class_1)`.
pub fn concavity_maximizer_check(
    partition: &AlphabetPartition,
    trials: u64,
    seed: u64,
) -> Result<ConcavityReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    let m = partition.num_classes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_simplex = |rng: &mut ChaCha8Rng| -> TypeVector {
        let raw: Vec<f64> = (0..m).map(|_| -rng.gen::<f64>().max(1e-308).ln()).collect();
        let s: f64 = raw.iter().sum();
        let mut probs: Vec<f64> = raw.iter().map(|v| v / s).collect();
        let drift: f64 = 1.0 - probs.iter().sum::<f64>();
        probs[m - 1] += drift;
        TypeVector::new(probs).expect("normalized draw lies on the simplex")
    };

    let mut violations = 0;
    for _ in 0..trials {
        let p = random_simplex(&mut rng);
        let q = random_simplex(&mut rng);
        if p.distance(&q) < 1e-9 {
            continue; // strictness only claimed for distinct points
        }
        let lambda: f64 = rng.gen_range(0.01..0.99);
        let mix: Vec<f64> = p
            .probs()
            .iter()
            .zip(q.probs())
            .map(|(a, b)| lambda * a + (1.0 - lambda) * b)
            .collect();
        let mut mix = mix;
        let drift: f64 = 1.0 - mix.iter().sum::<f64>();
        mix[m - 1] += drift;
        let mix = TypeVector::new(mix)?;
        let lhs = entropy_f(partition, &mix)?;
        let rhs = lambda * entropy_f(partition, &p)? + (1.0 - lambda) * entropy_f(partition, &q)?;
        if lhs <= rhs - 1e-12 {
            violations += 1;
        }
    }

    // Slice check: fix coordinates 2.. at a random draw, sweep the first two.
    let sizes = partition.class_sizes();
    let c_star = sizes[0] as f64 / (sizes[0] + sizes[1]) as f64;
    let tail: Vec<f64> = if m > 2 {
        let draw = random_simplex(&mut rng);
        draw.probs()[2..].iter().map(|v| v * 0.5).collect()
    } else {
        Vec::new()
    };
    let mass = 1.0 - tail.iter().sum::<f64>();
    let slice_value = |c: f64| -> f64 {
        let mut probs = vec![c * mass, (1.0 - c) * mass];
        probs.extend(&tail);
        let drift: f64 = 1.0 - probs.iter().sum::<f64>();
        probs[0] += drift;
        let p = TypeVector::new(probs).expect("slice point lies on the simplex");
        entropy_f(partition, &p).expect("dimension matches")
    };
    let best = slice_value(c_star);
    let mut grid_wins = true;
    for i in 0..=1000 {
        let c = i as f64 / 1000.0;
        if slice_value(c) > best + 1e-12 {
            grid_wins = false;
        }
    }
    Ok(ConcavityReport {
        trials,
        concavity_violations: violations,
        slice_maximizer: c_star,
        grid_wins,
    })
}

/// Nearest lattice point by flooring the first `m−1` coordinates to the
/// `1/n` grid and giving the remainder to the last; sup-distance is strictly
/// below `(m−1)/n`.
pub fn nearest_lattice(p: &TypeVector, n: u64) -> Result<TypeVector> {
    if n == 0 {
        return Err(Error::InvalidInput("lattice denominator must be positive".into()));
    }
    let m = p.dim();
    let mut counts: Vec<u64> = Vec::with_capacity(m);
    let mut used = 0u64;
    for &pi in &p.probs()[..m - 1] {
        let c = ((pi * n as f64).floor() as u64).min(n - used);
        counts.push(c);
        used += c;
    }
    counts.push(n - used);
    TypeVector::lattice(counts, n)
}

/// All lattice points with denominator `n` in `m` coordinates
/// (compositions of `n` into `m` parts). Count is `C(n+m−1, m−1)`,
/// always at most `(n+1)^m`.
pub fn lattice_enumerate(m: usize, n: u64) -> Result<Vec<TypeVector>> {
    if m < 2 {
        return Err(Error::InvalidInput("need at least 2 coordinates".into()));
    }
    let bound = (n as f64 + 1.0).powi(m as i32);
    if bound > 1e7 {
        return Err(Error::Capacity(format!(
            "enumeration bound (n+1)^m = {bound:.3e} exceeds the cap"
        )));
    }
    let mut out = Vec::new();
    let mut counts = vec![0u64; m];
    fn rec(counts: &mut Vec<u64>, coord: usize, remaining: u64, n: u64, out: &mut Vec<TypeVector>) {
        if coord == counts.len() - 1 {
            counts[coord] = remaining;
            out.push(TypeVector::lattice(counts.clone(), n).expect("counts sum to n"));
            return;
        }
        for c in 0..=remaining {
            counts[coord] = c;
            rec(counts, coord + 1, remaining - c, n, out);
        }
    }
    rec(&mut counts, 0, n, n, &mut out);
    Ok(out)
}

/// Default cap on exact factorial arithmetic in [`type_count`].
pub const EXACT_COUNT_CAP: u64 = 5000;

/// Number of length-`n` words whose class frequencies equal the lattice type
/// `p`: the multinomial `n! / ∏(n·p_i)!` times `∏ #class_i^(n·p_i)`.
/// Exact up to [`EXACT_COUNT_CAP`], log-only beyond.
pub fn type_count(partition: &AlphabetPartition, p: &TypeVector, n: u64) -> Result<BigCount> {
    let counts = p
        .lattice_counts()
        .ok_or_else(|| Error::InvalidInput("type vector is not on a lattice".into()))?;
    if p.lattice_n() != Some(n) {
        return Err(Error::InvalidInput(format!(
            "type vector lattice denominator {:?} differs from n={n}",
            p.lattice_n()
        )));
    }
    if counts.len() != partition.num_classes() {
        return Err(Error::InvalidInput("dimension mismatch".into()));
    }
    let sizes = partition.class_sizes();
    let mut log_value = ln_factorial(n);
    for (&c, &sz) in counts.iter().zip(&sizes) {
        log_value += c as f64 * (sz as f64).ln() - ln_factorial(c);
    }
    let exact = if n <= EXACT_COUNT_CAP {
        let mut v = exact_factorial(n);
        for (&c, &sz) in counts.iter().zip(&sizes) {
            v *= BigUint::from(sz).pow(c as u32);
            v /= exact_factorial(c);
        }
        Some(v)
    } else {
        None
    };
    if let Some(v) = &exact {
        debug_assert!((ln_big(v) - log_value).abs() <= 1e-9 * log_value.abs().max(1.0));
    }
    Ok(BigCount { exact, log_value })
}

/// Independent oracle for [`type_count`]: enumerate every length-`n` word
/// and count those whose empirical class frequencies equal `p` exactly.
/// Types off the lattice yield zero.
pub fn type_count_brute(partition: &AlphabetPartition, p: &TypeVector, n: u64) -> Result<BigCount> {
    let k = partition.alphabet() as u64;
    let words = (k as f64).powi(n as i32);
    if words > 1e7 {
        return Err(Error::Capacity(format!(
            "K^n = {words:.3e} words exceeds the brute-force cap"
        )));
    }
    let m = partition.num_classes();
    let target: Option<Vec<u64>> = match p.lattice_counts() {
        Some(c) if p.lattice_n() == Some(n) => Some(c.to_vec()),
        _ => {
            // Off-lattice target: representable only if every n·p_i is integral.
            let mut counts = Vec::with_capacity(m);
            let mut ok = true;
            for &pi in p.probs() {
                let c = pi * n as f64;
                if (c - c.round()).abs() > 1e-9 {
                    ok = false;
                    break;
                }
                counts.push(c.round() as u64);
            }
            if ok && counts.iter().sum::<u64>() == n {
                Some(counts)
            } else {
                None
            }
        }
    };
    let Some(target) = target else {
        return Ok(BigCount {
            exact: Some(BigUint::zero()),
            log_value: f64::NEG_INFINITY,
        });
    };

    let n = n as usize;
    let mut word = vec![0u32; n];
    let mut class_counts = vec![0u64; m];
    for s in &word {
        class_counts[partition.class_of(*s)] += 1;
    }
    let mut hits = BigUint::zero();
    loop {
        if class_counts == target {
            hits += 1u32;
        }
        // Odometer increment.
        let mut pos = n;
        loop {
            if pos == 0 {
                let log_value = ln_big(&hits);
                return Ok(BigCount {
                    exact: Some(hits),
                    log_value,
                });
            }
            pos -= 1;
            class_counts[partition.class_of(word[pos])] -= 1;
            word[pos] += 1;
            if word[pos] < partition.alphabet() {
                class_counts[partition.class_of(word[pos])] += 1;
                break;
            }
            word[pos] = 0;
            class_counts[partition.class_of(0)] += 1;
        }
    }
}

/// The factorial approximation `n ln n − n + ln√(2πn)` and the classical
/// error dominator `1/(12n)`; the true `ln n!` exceeds the approximation by
/// a positive amount no larger than the bound.
pub fn stirling_ln_factorial(n: u64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::InvalidInput("need n ≥ 1".into()));
    }
    let x = n as f64;
    let approx = x * x.ln() - x + (2.0 * std::f64::consts::PI * x).sqrt().ln();
    Ok((approx, 1.0 / (12.0 * x)))
}

/// Supremum of the per-term factorial approximation errors; the error at
/// `n = 1` (≈ 0.0811) dominates and is itself below `1/12`.
pub const STIRLING_ERROR_SUP: f64 = 1.0 / 12.0;

/// Report from [`stirling_error_check`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StirlingReport {
    pub n: u64,
    pub bound: f64,
    pub max_deviation: f64,
    pub checked_types: u64,
    pub pass: bool,
}

/// Check `|ln(type_count)/n − entropy_f(p)| ≤ (m+1)(ln√(2πn) + 1/12)/n` for
/// every lattice type with denominator `n` (or a stride sample when the
/// lattice is larger than `max_types`).
pub fn stirling_error_check(
    partition: &AlphabetPartition,
    n: u64,
    max_types: u64,
) -> Result<StirlingReport> {
    if n == 0 {
        return Err(Error::InvalidInput("need n ≥ 1".into()));
    }
    let m = partition.num_classes() as f64;
    let bound = (m + 1.0) * ((2.0 * std::f64::consts::PI * n as f64).sqrt().ln() + STIRLING_ERROR_SUP)
        / n as f64;
    let mut max_deviation: f64 = 0.0;
    let mut checked = 0u64;
    if partition.num_classes() == 2 {
        let stride = ((n + 1) / max_types.max(1)).max(1);
        let mut c0 = 0u64;
        while c0 <= n {
            let p = TypeVector::lattice(vec![c0, n - c0], n)?;
            let count = type_count(partition, &p, n)?;
            let ln_a = match &count.exact {
                Some(v) => ln_big(v),
                None => count.log_value,
            };
            let dev = (ln_a / n as f64 - entropy_f(partition, &p)?).abs();
            max_deviation = max_deviation.max(dev);
            checked += 1;
            c0 += stride;
        }
        if c0 - stride != n {
            let p = TypeVector::lattice(vec![n, 0], n)?;
            let count = type_count(partition, &p, n)?;
            let ln_a = ln_big(count.exact.as_ref().unwrap_or(&BigUint::one()));
            max_deviation = max_deviation.max((ln_a / n as f64 - entropy_f(partition, &p)?).abs());
            checked += 1;
        }
    } else {
        for p in lattice_enumerate(partition.num_classes(), n)? {
            let count = type_count(partition, &p, n)?;
            let ln_a = match &count.exact {
                Some(v) => ln_big(v),
                None => count.log_value,
            };
            let dev = (ln_a / n as f64 - entropy_f(partition, &p)?).abs();
            max_deviation = max_deviation.max(dev);
            checked += 1;
        }
    }
    Ok(StirlingReport {
        n,
        bound,
        max_deviation,
        checked_types: checked,
        pass: max_deviation <= bound,
    })
}

/// Empirical class frequencies of the first `n` symbols.
pub fn empirical_type(
    x: &TruncatedPoint,
    partition: &AlphabetPartition,
    n: usize,
) -> Result<TypeVector> {
    if x.alphabet() != partition.alphabet() {
        return Err(Error::Mismatch("point and partition alphabets differ".into()));
    }
    if n == 0 || n > x.horizon() {
        return Err(Error::InvalidInput(format!(
            "prefix length {n} out of range for horizon {}",
            x.horizon()
        )));
    }
    let mut counts = vec![0u64; partition.num_classes()];
    for &s in &x.symbols()[..n] {
        counts[partition.class_of(s)] += 1;
    }
    TypeVector::lattice(counts, n as u64)
}

/// Per-coordinate min/max of the empirical type over prefix lengths in
/// `[warmup, horizon]`: a box containing the limit set of the running types.
pub fn empirical_type_spectrum(
    x: &TruncatedPoint,
    partition: &AlphabetPartition,
    warmup: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if x.alphabet() != partition.alphabet() {
        return Err(Error::Mismatch("point and partition alphabets differ".into()));
    }
    if warmup >= x.horizon() {
        return Err(Error::InvalidInput("warmup must be below the horizon".into()));
    }
    let m = partition.num_classes();
    let mut counts = vec![0u64; m];
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for (i, &s) in x.symbols().iter().enumerate() {
        counts[partition.class_of(s)] += 1;
        let n = i + 1;
        if n >= warmup.max(1) {
            for j in 0..m {
                let v = counts[j] as f64 / n as f64;
                lo[j] = lo[j].min(v);
                hi[j] = hi[j].max(v);
            }
        }
    }
    Ok((lo, hi))
}

/// A constraint region on the simplex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Region {
    /// The whole simplex.
    Whole,
    /// `p[coord] ≥ bound`.
    LowerBound { coord: usize, bound: f64 },
}

/// Supremum of the normalized entropy over the region, by concave
/// maximization: the unconstrained maximizer (class-size proportions) when
/// feasible, otherwise the active boundary with the remaining mass spread
/// proportionally to class sizes.
pub fn variational_upper_bound(partition: &AlphabetPartition, region: &Region) -> Result<f64> {
    let sizes = partition.class_sizes();
    let k: u64 = sizes.iter().sum();
    match region {
        Region::Whole => Ok(1.0),
        Region::LowerBound { coord, bound } => {
            let m = partition.num_classes();
            if *coord >= m {
                return Err(Error::InvalidInput(format!("coordinate {coord} out of range")));
            }
            if !(0.0..=1.0).contains(bound) {
                return Err(Error::Infeasible(format!("bound {bound} outside [0, 1]")));
            }
            let unconstrained = sizes[*coord] as f64 / k as f64;
            if *bound <= unconstrained {
                return Ok(1.0);
            }
            let rest: u64 = k - sizes[*coord];
            let mut probs = vec![0.0; m];
            probs[*coord] = *bound;
            for (j, &sz) in sizes.iter().enumerate() {
                if j != *coord {
                    probs[j] = (1.0 - bound) * sz as f64 / rest as f64;
                }
            }
            let drift: f64 = 1.0 - probs.iter().sum::<f64>();
            probs[*coord] += drift;
            entropy_g(partition, &TypeVector::new(probs)?)
        }
    }
}

/// The coordinates `{i(K+1) : 0 ≤ i < K}` of the paired alphabet `K²` whose
/// decode has equal halves.
pub fn diagonal_symbols(k: u32) -> Vec<u32> {
    (0..k).map(|i| i + k * i).collect()
}

/// Partition of the alphabet `(K²)^n` into the block-recoded diagonal words
/// (both halves agree on all `n` coordinates) and everything else. The first
/// class has `K^n` symbols of the `K^(2n)`-letter alphabet.
pub fn diagonal_block_partition(k: u32, n: u32) -> Result<AlphabetPartition> {
    let k2 = (k as u64) * (k as u64);
    let big = k2.checked_pow(n).filter(|&v| v <= u32::MAX as u64);
    let big = big.ok_or_else(|| {
        Error::Capacity(format!("alphabet (K²)^n = {k2}^{n} does not fit 32 bits"))
    })? as u32;
    let diag = diagonal_symbols(k);
    // Words over the diagonal symbols, read blockwise in base K².
    let mut first = Vec::with_capacity((k as usize).pow(n));
    let mut idx = vec![0usize; n as usize];
    loop {
        let mut v: u64 = 0;
        let mut place: u64 = 1;
        for &d in &idx {
            v += place * diag[d] as u64;
            place *= k2;
        }
        first.push(v as u32);
        let mut pos = n as usize;
        loop {
            if pos == 0 {
                first.sort_unstable();
                return AlphabetPartition::split(first, big);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < k as usize {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_class(k: u32, first: Vec<u32>) -> AlphabetPartition {
        AlphabetPartition::split(first, k).unwrap()
    }

    #[test]
    fn entropy_f_examples() {
        let p2 = AlphabetPartition::discrete(2).unwrap();
        let half = TypeVector::new(vec![0.5, 0.5]).unwrap();
        assert!((entropy_f(&p2, &half).unwrap() - 2f64.ln()).abs() < 1e-12);

        let degenerate = TypeVector::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(entropy_f(&p2, &degenerate).unwrap(), 0.0);

        let p4 = two_class(4, vec![0, 1]);
        assert!((entropy_f(&p4, &half).unwrap() - 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn entropy_g_matches_closed_form() {
        // Two classes of sizes 2^n and 2^(2n) − 2^n in alphabet 2^(2n), n = 4.
        let part = diagonal_block_partition(2, 4).unwrap();
        assert_eq!(part.alphabet(), 256);
        assert_eq!(part.class_sizes(), vec![16, 240]);
        let q = 0.5;
        let p = TypeVector::new(vec![q, 1.0 - q]).unwrap();
        let g = entropy_g(&part, &p).unwrap();
        let expect = (-q * (q / 16.0).ln() - (1.0 - q) * ((1.0 - q) / 240.0).ln()) / 256f64.ln();
        assert!((g - expect).abs() < 1e-12);
        assert!((g - 0.8692).abs() < 5e-4, "{g}");
    }

    #[test]
    fn maximizer_at_class_proportions() {
        let part = two_class(4, vec![0]);
        let best = TypeVector::new(vec![0.25, 0.75]).unwrap();
        assert!((entropy_g(&part, &best).unwrap() - 1.0).abs() < 1e-12);
        let rep = concavity_maximizer_check(&part, 200, 7).unwrap();
        assert_eq!(rep.concavity_violations, 0);
        assert!(rep.grid_wins);
        assert!((rep.slice_maximizer - 0.25).abs() < 1e-12);
    }

    #[test]
    fn nearest_lattice_examples() {
        let p = TypeVector::new(vec![1.0 / 3.0, 2.0 / 3.0]).unwrap();
        let q = nearest_lattice(&p, 4).unwrap();
        assert_eq!(q.lattice_counts().unwrap(), &[1, 3]);
        assert!((p.distance(&q) - 1.0 / 12.0).abs() < 1e-12);
        assert!(p.distance(&q) < 0.25);

        let on = TypeVector::lattice(vec![1, 3], 4).unwrap();
        let q = nearest_lattice(&on, 4).unwrap();
        assert_eq!(q.lattice_counts().unwrap(), &[1, 3]);

        let p = TypeVector::new(vec![0.5, 0.3, 0.2]).unwrap();
        let q = nearest_lattice(&p, 10).unwrap();
        assert!(p.distance(&q) < 0.2);
    }

    #[test]
    fn lattice_enumeration_counts() {
        let pts = lattice_enumerate(2, 2).unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(lattice_enumerate(2, 1).unwrap().len(), 2);
        let pts = lattice_enumerate(3, 2).unwrap();
        assert_eq!(pts.len(), 6);
        assert!(pts.len() as f64 <= 27.0);
    }

    #[test]
    fn type_count_examples() {
        let p2 = AlphabetPartition::discrete(2).unwrap();
        let half = TypeVector::lattice(vec![2, 2], 4).unwrap();
        let c = type_count(&p2, &half, 4).unwrap();
        assert_eq!(c.exact.unwrap(), BigUint::from(6u32));

        let degenerate = TypeVector::lattice(vec![3, 0], 3).unwrap();
        let c = type_count(&p2, &degenerate, 3).unwrap();
        assert_eq!(c.exact.unwrap(), BigUint::from(1u32));

        let p4 = two_class(4, vec![0, 1]);
        let half2 = TypeVector::lattice(vec![1, 1], 2).unwrap();
        let c = type_count(&p4, &half2, 2).unwrap();
        assert_eq!(c.exact.unwrap(), BigUint::from(8u32));
    }

    #[test]
    fn brute_force_agrees_and_partitions_unity() {
        let p2 = AlphabetPartition::discrete(2).unwrap();
        for n in 1..=8u64 {
            let mut total = BigUint::zero();
            for c0 in 0..=n {
                let p = TypeVector::lattice(vec![c0, n - c0], n).unwrap();
                let fast = type_count(&p2, &p, n).unwrap().exact.unwrap();
                let brute = type_count_brute(&p2, &p, n).unwrap().exact.unwrap();
                assert_eq!(fast, brute, "n={n} c0={c0}");
                total += fast;
            }
            assert_eq!(total, BigUint::from(2u32).pow(n as u32));
        }
        // Off-lattice type has no words.
        let p = TypeVector::new(vec![0.4, 0.6]).unwrap();
        let c = type_count_brute(&p2, &p, 3).unwrap();
        assert!(c.exact.unwrap().is_zero());
    }

    #[test]
    fn stirling_pointwise() {
        let (approx, bound) = stirling_ln_factorial(1).unwrap();
        let exact = 0.0;
        assert!(exact - approx > 0.0 && exact - approx <= STIRLING_ERROR_SUP);
        assert!((exact - approx - 0.0811).abs() < 1e-3);
        assert!((bound - 1.0 / 12.0).abs() < 1e-12);

        let (approx, bound) = stirling_ln_factorial(10).unwrap();
        let exact = ln_factorial(10);
        assert!(exact - approx > 0.0 && exact - approx <= bound);

        let mut prev = f64::INFINITY;
        for n in [10u64, 100, 1000, 10_000] {
            let (approx, _) = stirling_ln_factorial(n).unwrap();
            let err = ln_factorial(n) - approx;
            assert!(err > 0.0 && err < prev);
            prev = err;
        }
    }

    #[test]
    fn stirling_lattice_bound() {
        let p2 = AlphabetPartition::discrete(2).unwrap();
        let rep = stirling_error_check(&p2, 100, u64::MAX).unwrap();
        assert!(rep.pass, "{rep:?}");
        let rep4 = stirling_error_check(&p2, 4, u64::MAX).unwrap();
        assert!(rep4.pass);
        // The displayed n = 4 midpoint: ln 6 / 4 vs ln 2.
        let half = TypeVector::lattice(vec![2, 2], 4).unwrap();
        let dev = (6f64.ln() / 4.0 - entropy_f(&p2, &half).unwrap()).abs();
        assert!((dev - 0.245).abs() < 1e-3);
        assert!(dev <= rep4.bound);
        let rep1000 = stirling_error_check(&p2, 1000, u64::MAX).unwrap();
        assert!(rep1000.max_deviation < rep.max_deviation);
    }

    #[test]
    fn empirical_types() {
        let x = TruncatedPoint::constant(0, 2, 100).unwrap();
        let p2 = AlphabetPartition::discrete(2).unwrap();
        let t = empirical_type(&x, &p2, 100).unwrap();
        assert_eq!(t.probs(), &[1.0, 0.0]);

        let alt = TruncatedPoint::from_fn(2, 100, |i| (i % 2) as u32).unwrap();
        let t = empirical_type(&alt, &p2, 100).unwrap();
        assert_eq!(t.probs(), &[0.5, 0.5]);
    }

    #[test]
    fn variational_bound_examples() {
        let p2 = AlphabetPartition::discrete(2).unwrap();
        assert_eq!(variational_upper_bound(&p2, &Region::Whole).unwrap(), 1.0);

        // Singleton classes in alphabet 2: bound p0 ≥ 1 pins the corner, entropy 0.
        let v = variational_upper_bound(&p2, &Region::LowerBound { coord: 0, bound: 1.0 }).unwrap();
        assert!(v.abs() < 1e-12, "{v}");

        // Inactive constraint.
        let part = two_class(4, vec![0, 1]);
        let v = variational_upper_bound(&part, &Region::LowerBound { coord: 0, bound: 0.3 }).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn variational_bound_diagonal_partition() {
        // Classes K^n and K^(2n) − K^n in alphabet K^(2n): with p0 pinned at q
        // the bound matches the displayed closed form.
        let k = 2u32;
        for n in 1..=4u32 {
            let part = diagonal_block_partition(k, n).unwrap();
            for q in [0.3, 0.5, 0.9, 1.0] {
                let v = variational_upper_bound(&part, &Region::LowerBound { coord: 0, bound: q })
                    .unwrap();
                let kn = (k as f64).powi(n as i32);
                let k2n = kn * kn;
                let expect = if q <= kn / k2n {
                    1.0
                } else {
                    let mut e = q * (kn / q).ln();
                    if q < 1.0 {
                        e += (1.0 - q) * ((k2n - kn) / (1.0 - q)).ln();
                    }
                    e / k2n.ln()
                };
                assert!((v - expect).abs() < 1e-12, "n={n} q={q}: {v} vs {expect}");
            }
        }
        let part = diagonal_block_partition(2, 1).unwrap();
        let v = variational_upper_bound(&part, &Region::LowerBound { coord: 0, bound: 1.0 }).unwrap();
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn diagonal_partition_small() {
        assert_eq!(diagonal_symbols(2), vec![0, 3]);
        let part = diagonal_block_partition(2, 1).unwrap();
        assert_eq!(part.alphabet(), 4);
        assert_eq!(part.classes()[0], vec![0, 3]);
    }
}
