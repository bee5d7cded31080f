//! Cylinder-cover sums over block product sets, the running lower bound on
//! their dimension, box-counting slope estimation, and the paper-level
//! analytic dimension targets the estimators are compared against.
//!
//! A block product set fixes, for each block index `i`, a set of `a_i`
//! allowed words of length `n_i` over the base alphabet; depth-`j` cylinder
//! covers have exactly `∏ a_i` cylinders of diameter `base^(−Σ n_i)`.

use crate::combinatorics::{ln_big, BigCount};
use crate::construct::SpectrumTarget;
use crate::density::{spectrum_estimate, IndexSet, SpectrumEstimate};
use crate::distributional::approach_times;
use crate::error::{Error, Result};
use crate::symbolic::TruncatedPoint;
use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// Per-block allowed-word counts for a product set over a fixed base alphabet.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockProductSpec {
    base: u32,
    blocks: Vec<(u64, u32)>,
}

impl BlockProductSpec {
    pub fn new(base: u32, blocks: Vec<(u64, u32)>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidInput("base alphabet must have at least 2 symbols".into()));
        }
        for &(a, n) in &blocks {
            if n == 0 {
                return Err(Error::InvalidInput("block length must be positive".into()));
            }
            let cap = (base as f64).powi(n as i32);
            if a == 0 || (a as f64) > cap {
                return Err(Error::InvalidInput(format!(
                    "allowed-word count {a} outside [1, {base}^{n}]"
                )));
            }
        }
        Ok(BlockProductSpec { base, blocks })
    }

    /// The full shift over `k` symbols, to the given depth.
    pub fn full_shift(k: u32, depth: usize) -> Result<Self> {
        Self::new(k, vec![(k as u64, 1); depth])
    }

    /// One fixed `(a, n)` block repeated.
    pub fn repeat(base: u32, a: u64, n: u32, depth: usize) -> Result<Self> {
        Self::new(base, vec![(a, n); depth])
    }

    /// The diagonal of the paired alphabet: `K` allowed symbols per
    /// coordinate inside the alphabet `K²`.
    pub fn pair_diagonal(k: u32, depth: usize) -> Result<Self> {
        Self::new(k * k, vec![(k as u64, 1); depth])
    }

    /// Membership-driven blocks over the paired alphabet `K²` with block
    /// length `n`: indices in the set allow the `K^n` diagonal words, indices
    /// outside allow the complementary `K^(2n) − K^n` words.
    pub fn from_index_set(set: &IndexSet, k: u32, n: u32) -> Result<Self> {
        let kn = (k as u64)
            .checked_pow(n)
            .ok_or_else(|| Error::Capacity("K^n overflows".into()))?;
        let k2n = kn
            .checked_mul(kn)
            .ok_or_else(|| Error::Capacity("K^2n overflows".into()))?;
        let blocks = (0..set.horizon())
            .map(|i| {
                if set.contains(i) {
                    (kn, n)
                } else {
                    (k2n - kn, n)
                }
            })
            .collect();
        Self::new(k * k, blocks)
    }

    /// A free head of `h` symbols followed by the pair diagonal: the
    /// component of the eventually-agreeing decomposition whose image-side
    /// cover sums stay at `K^h`.
    pub fn free_head_then_diagonal(k: u32, head: u32, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidInput("depth must be positive".into()));
        }
        let k2 = (k as u64) * (k as u64);
        let head_words = k2
            .checked_pow(head)
            .ok_or_else(|| Error::Capacity("head word count overflows".into()))?;
        let mut blocks = vec![(head_words, head)];
        blocks.extend(vec![(k as u64, 1); depth - 1]);
        Self::new(k * k, blocks)
    }

    /// Everywhere off-diagonal blocks of length `n` over the paired alphabet:
    /// the component of the separated-orbit decomposition.
    pub fn off_diagonal(k: u32, n: u32, depth: usize) -> Result<Self> {
        let kn = (k as u64)
            .checked_pow(n)
            .ok_or_else(|| Error::Capacity("K^n overflows".into()))?;
        let k2n = kn
            .checked_mul(kn)
            .ok_or_else(|| Error::Capacity("K^2n overflows".into()))?;
        Self::repeat(k * k, k2n - kn, n, depth)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn depth(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[(u64, u32)] {
        &self.blocks
    }
}

/// Depth cap below which cover counts are carried exactly.
pub const EXACT_COVER_DEPTH: usize = 4096;

/// A depth-`j` cylinder cover of a block product set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverReport {
    pub depth: usize,
    /// Number of cylinders, `∏ a_i`.
    pub count: BigCount,
    /// Exponent of the common diameter: diameter = `base^(−symbols)`.
    pub symbols: u64,
    pub ln_inv_diameter: f64,
    /// `ln Σ |A|^s = ln count − s · symbols · ln base`.
    pub ln_sum: f64,
    /// `ln count / ln(1/diameter)`: the cover's dimension estimate.
    pub estimate: f64,
}

/// The depth-`depth` cylinder cover sum at exponent `s`, in log space, with
/// the count exact below [`EXACT_COVER_DEPTH`].
pub fn cylinder_cover_sum(spec: &BlockProductSpec, s: f64, depth: usize) -> Result<CoverReport> {
    if depth == 0 || depth > spec.depth() {
        return Err(Error::InvalidInput(format!(
            "depth {depth} out of range for {} blocks",
            spec.depth()
        )));
    }
    if s < 0.0 {
        return Err(Error::InvalidInput("exponent must be nonnegative".into()));
    }
    let mut ln_count = 0.0;
    let mut symbols: u64 = 0;
    for &(a, n) in &spec.blocks[..depth] {
        ln_count += (a as f64).ln();
        symbols += n as u64;
    }
    let exact = if depth <= EXACT_COVER_DEPTH {
        let mut v = BigUint::one();
        for &(a, _) in &spec.blocks[..depth] {
            v *= BigUint::from(a);
        }
        Some(v)
    } else {
        None
    };
    let ln_base = (spec.base as f64).ln();
    let ln_inv_diameter = symbols as f64 * ln_base;
    let ln_count = exact.as_ref().map_or(ln_count, ln_big);
    Ok(CoverReport {
        depth,
        count: BigCount {
            exact,
            log_value: ln_count,
        },
        symbols,
        ln_inv_diameter,
        ln_sum: ln_count - s * ln_inv_diameter,
        estimate: ln_count / ln_inv_diameter,
    })
}

/// Exact cover sum `count / base^(symbols·s)` as a rational, for rational
/// `s = s_num/s_den` whose base power is integral (possibly through a square
/// root of a perfect-square base). Returns `None` when no exact form exists.
pub fn exact_cover_sum(
    spec: &BlockProductSpec,
    s_num: u32,
    s_den: u32,
    depth: usize,
) -> Result<Option<Ratio<BigUint>>> {
    if s_den == 0 {
        return Err(Error::InvalidInput("exponent denominator must be positive".into()));
    }
    let report = cylinder_cover_sum(spec, s_num as f64 / s_den as f64, depth)?;
    let Some(count) = report.count.exact else {
        return Ok(None);
    };
    let exp_num = report.symbols as u128 * s_num as u128;
    let (root, root_exp_mul) = {
        let r = (spec.base as f64).sqrt().round() as u32;
        if r >= 2 && r * r == spec.base {
            (r, 2u128)
        } else {
            (spec.base, 1u128)
        }
    };
    let total = exp_num * root_exp_mul;
    if total % (s_den as u128) != 0 {
        return Ok(None);
    }
    let exponent = total / s_den as u128;
    if exponent > u32::MAX as u128 {
        return Err(Error::Capacity("exact cover exponent too large".into()));
    }
    let den = BigUint::from(root).pow(exponent as u32);
    Ok(Some(Ratio::new(count, den)))
}

/// Report from [`liminf_dim_lower_bound`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LiminfReport {
    pub value: f64,
    pub argmin_depth: usize,
    pub start_depth: usize,
    pub depth_max: usize,
    /// `(depth, ratio)` samples of the trajectory, thinned for reporting.
    pub trajectory: Vec<(usize, f64)>,
}

/// Minimum over `j ∈ [start, depth_max]` of
/// `Σ_{i<j} ln a_i / Σ_{i<j+1} n_i ln base` — the finite-depth form of the
/// product-set dimension lower bound. `start` defaults to `depth_max / 2`
/// to discard the opening transient.
pub fn liminf_dim_lower_bound(
    spec: &BlockProductSpec,
    depth_max: usize,
    start: Option<usize>,
) -> Result<LiminfReport> {
    if depth_max < 2 || depth_max + 1 > spec.depth() {
        return Err(Error::InvalidInput(format!(
            "depth_max {depth_max} needs at least {} blocks, have {}",
            depth_max + 1,
            spec.depth()
        )));
    }
    let start = start.unwrap_or(depth_max / 2).max(1);
    if start > depth_max {
        return Err(Error::InvalidInput("start beyond depth_max".into()));
    }
    let ln_base = (spec.base as f64).ln();
    let mut ln_count = 0.0;
    let mut symbols: u64 = 0;
    for &(a, n) in &spec.blocks[..start - 1] {
        ln_count += (a as f64).ln();
        symbols += n as u64;
    }
    let mut best = f64::INFINITY;
    let mut argmin = start;
    let stride = ((depth_max - start) / 512).max(1);
    let mut trajectory = Vec::new();
    for j in start..=depth_max {
        let (a, n) = spec.blocks[j - 1];
        ln_count += (a as f64).ln();
        symbols += n as u64;
        let next_n = spec.blocks[j].1 as u64;
        let ratio = ln_count / ((symbols + next_n) as f64 * ln_base);
        if ratio < best {
            best = ratio;
            argmin = j;
        }
        if (j - start) % stride == 0 || j == depth_max {
            trajectory.push((j, ratio));
        }
    }
    Ok(LiminfReport {
        value: best,
        argmin_depth: argmin,
        start_depth: start,
        depth_max,
        trajectory,
    })
}

/// The membership-driven product set of the chaos lower-bound family,
/// together with its analytic dimension bound
/// `q/2 + (1−q)·ln(K^(2n) − K^n)/ln K^(2n)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DcLowerBound {
    pub spec: BlockProductSpec,
    pub analytic_bound: f64,
    /// Twice the bound: the pair-space value that approaches `2 − q` in `n`.
    pub doubled: f64,
}

pub fn dc_lower_bound_spec(set: &IndexSet, target: &SpectrumTarget, k: u32, n: u32) -> Result<DcLowerBound> {
    let spec = BlockProductSpec::from_index_set(set, k, n)?;
    let kn = (k as f64).powi(n as i32);
    let k2n = kn * kn;
    let q = target.q;
    let analytic_bound = q / 2.0 + (1.0 - q) * (k2n - kn).ln() / k2n.ln();
    Ok(DcLowerBound {
        spec,
        analytic_bound,
        doubled: 2.0 * analytic_bound,
    })
}

/// Report from [`box_dim_estimate`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoxDimReport {
    pub slope: f64,
    pub residual_rms: f64,
    pub window: (usize, usize),
}

/// Least-squares slope of `ln count` against `ln(1/diameter)` over depths
/// `[depth_max/2, depth_max]`, discarding the opening transient.
pub fn box_dim_estimate(spec: &BlockProductSpec, depth_max: usize) -> Result<BoxDimReport> {
    if depth_max < 10 || depth_max > spec.depth() {
        return Err(Error::InvalidInput(format!(
            "depth_max {depth_max} out of range (min 10, have {} blocks)",
            spec.depth()
        )));
    }
    let lo = depth_max / 2;
    let ln_base = (spec.base as f64).ln();
    let mut ln_count = 0.0;
    let mut symbols: u64 = 0;
    let mut xs = Vec::with_capacity(depth_max - lo + 1);
    let mut ys = Vec::with_capacity(depth_max - lo + 1);
    for (j, &(a, n)) in spec.blocks[..depth_max].iter().enumerate() {
        ln_count += (a as f64).ln();
        symbols += n as u64;
        if j + 1 >= lo {
            xs.push(symbols as f64 * ln_base);
            ys.push(ln_count);
        }
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return Err(Error::Degenerate("zero-variance abscissa".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut rss = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        let r = y - (slope * x + intercept);
        rss += r * r;
    }
    Ok(BoxDimReport {
        slope,
        residual_rms: (rss / n).sqrt(),
        window: (lo, depth_max),
    })
}

/// An analytic Hausdorff-measure value at the critical exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeasureValue {
    Zero,
    One,
    Infinite,
}

/// Analytic targets for the two spectrum-pair relations at a given target
/// interval: dimension `2 − q` in pair space, with the measure at the
/// critical exponent. Measure values are reference metadata, not numerically
/// certified.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremTargets {
    pub dimension: f64,
    pub exact_relation_measure: MeasureValue,
    pub eventual_relation_measure: MeasureValue,
    pub note: &'static str,
}

pub fn theorem_targets(target: &SpectrumTarget) -> TheoremTargets {
    TheoremTargets {
        dimension: 2.0 - target.q,
        exact_relation_measure: if target.q == 0.0 {
            MeasureValue::One
        } else {
            MeasureValue::Infinite
        },
        eventual_relation_measure: if target.q == 1.0 {
            MeasureValue::Infinite
        } else {
            MeasureValue::Zero
        },
        note: "analytic target, not numerically certified",
    }
}

/// Analytic dimensions and critical measures of the classical pair classes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecialRelationTargets {
    pub asymptotic: (f64, MeasureValue),
    pub proximal: (f64, MeasureValue),
    pub distal: (f64, MeasureValue),
    pub li_yorke: (f64, MeasureValue),
    pub mean_li_yorke: (f64, MeasureValue),
}

pub fn special_relations_targets() -> SpecialRelationTargets {
    SpecialRelationTargets {
        asymptotic: (1.0, MeasureValue::Infinite),
        proximal: (2.0, MeasureValue::One),
        distal: (2.0, MeasureValue::Zero),
        li_yorke: (2.0, MeasureValue::One),
        mean_li_yorke: (1.0, MeasureValue::Infinite),
    }
}

/// Density envelope of the length-`k` agreement-window times of a pair:
/// identical to the spectrum of the approach-time set at exponent `k`.
pub fn agreement_window_density(
    x: &TruncatedPoint,
    y: &TruncatedPoint,
    k: usize,
    warmup: u64,
) -> Result<SpectrumEstimate> {
    let a = approach_times(x, y, k)?;
    spectrum_estimate(a.indices(), warmup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::big_ratio;
    use num_traits::ToPrimitive;

    #[test]
    fn full_shift_unit_sum() {
        let spec = BlockProductSpec::full_shift(3, 40).unwrap();
        for depth in 1..=30 {
            let exact = exact_cover_sum(&spec, 1, 1, depth).unwrap().unwrap();
            assert!(exact.is_integer() && exact.to_integer() == BigUint::one());
            let rep = cylinder_cover_sum(&spec, 1.0, depth).unwrap();
            assert!(rep.ln_sum.abs() < 1e-9);
            assert!((rep.estimate - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn full_shift_sum_vanishes_above_one() {
        let spec = BlockProductSpec::full_shift(2, 40).unwrap();
        let mut prev = f64::INFINITY;
        for depth in 1..=30 {
            let rep = cylinder_cover_sum(&spec, 2.0, depth).unwrap();
            assert!(rep.ln_sum < prev);
            prev = rep.ln_sum;
            assert!((rep.ln_sum - (-(depth as f64) * 2f64.ln())).abs() < 1e-9);
        }
    }

    #[test]
    fn pair_diagonal_half_exponent() {
        // K allowed words per symbol of the K² alphabet: sum at s = 1/2 is 1.
        let spec = BlockProductSpec::pair_diagonal(2, 30).unwrap();
        for depth in 1..=30 {
            let exact = exact_cover_sum(&spec, 1, 2, depth).unwrap().unwrap();
            assert_eq!(exact, Ratio::from_integer(BigUint::one()));
        }
        let rep = cylinder_cover_sum(&spec, 0.5, 20).unwrap();
        assert!(rep.ln_sum.abs() < 1e-9);
        assert!((rep.estimate - 0.5).abs() < 1e-12);
    }

    #[test]
    fn liminf_full_shift_and_singleton() {
        let spec = BlockProductSpec::full_shift(2, 101).unwrap();
        let rep = liminf_dim_lower_bound(&spec, 100, None).unwrap();
        assert!(rep.value > 1.0 - 1.0 / 50.0 && rep.value <= 1.0);

        let spec = BlockProductSpec::repeat(2, 1, 1, 101).unwrap();
        let rep = liminf_dim_lower_bound(&spec, 100, None).unwrap();
        assert_eq!(rep.value, 0.0);
    }

    #[test]
    fn box_dim_exact_lines() {
        let spec = BlockProductSpec::full_shift(2, 200).unwrap();
        let rep = box_dim_estimate(&spec, 200).unwrap();
        assert!((rep.slope - 1.0).abs() < 1e-9);
        assert!(rep.residual_rms < 1e-9);

        let spec = BlockProductSpec::pair_diagonal(3, 200).unwrap();
        let rep = box_dim_estimate(&spec, 200).unwrap();
        assert!((rep.slope - 0.5).abs() < 1e-9);
    }

    #[test]
    fn dc_lower_bound_values() {
        let set = IndexSet::from_predicate(100, |i| i % 2 == 0).unwrap();
        let t = SpectrumTarget::new(0.5, 0.5).unwrap();
        // n = 1: ln 2 / ln 4 = 1/2 regardless of q.
        let b = dc_lower_bound_spec(&set, &t, 2, 1).unwrap();
        assert!((b.analytic_bound - 0.5).abs() < 1e-12);
        let b = dc_lower_bound_spec(&set, &t, 2, 4).unwrap();
        assert!((b.analytic_bound - 0.7442).abs() < 1e-4, "{}", b.analytic_bound);
        assert!((b.doubled - 1.4884).abs() < 2e-4);
        let t1 = SpectrumTarget::new(1.0, 1.0).unwrap();
        for n in 1..=6 {
            let b = dc_lower_bound_spec(&set, &t1, 2, n).unwrap();
            assert!((b.doubled - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn free_head_sums_constant() {
        // Image side of the eventually-agreeing decomposition: s = 1/2 sums
        // equal K^head at every depth.
        for head in 1..=6u32 {
            let spec = BlockProductSpec::free_head_then_diagonal(2, head, 40).unwrap();
            for depth in 1..=20 {
                let exact = exact_cover_sum(&spec, 1, 2, depth).unwrap().unwrap();
                let expect = Ratio::from_integer(BigUint::from(2u32).pow(head));
                assert_eq!(exact, expect, "head={head} depth={depth}");
            }
        }
    }

    #[test]
    fn off_diagonal_sums_vanish() {
        for n in 1..=6u32 {
            let spec = BlockProductSpec::off_diagonal(2, n, 40).unwrap();
            let mut prev = f64::INFINITY;
            for depth in 1..=20 {
                let exact = exact_cover_sum(&spec, 1, 1, depth).unwrap().unwrap();
                let v = big_ratio(exact.numer(), exact.denom());
                assert!(v < 1.0 && v < prev);
                prev = v;
                let expect = (1.0 - 2f64.powi(-(n as i32))).powi(depth as i32);
                assert!((v - expect).abs() < 1e-9 * expect.max(1e-12));
            }
        }
    }

    #[test]
    fn targets_metadata() {
        let t = theorem_targets(&SpectrumTarget::new(0.0, 1.0).unwrap());
        assert_eq!(t.dimension, 1.0);
        let t = theorem_targets(&SpectrumTarget::new(0.0, 0.0).unwrap());
        assert_eq!(t.dimension, 2.0);
        assert_eq!(t.exact_relation_measure, MeasureValue::One);
        let t = theorem_targets(&SpectrumTarget::new(0.3, 0.7).unwrap());
        assert!((t.dimension - 1.3).abs() < 1e-12);
        let s = special_relations_targets();
        assert_eq!(s.li_yorke, (2.0, MeasureValue::One));
        assert_eq!(s.asymptotic, (1.0, MeasureValue::Infinite));
        assert_eq!(s.mean_li_yorke, (1.0, MeasureValue::Infinite));
    }

    #[test]
    fn cover_count_exact() {
        let spec = BlockProductSpec::full_shift(2, 20).unwrap();
        let rep = cylinder_cover_sum(&spec, 1.0, 20).unwrap();
        assert_eq!(rep.count.exact.unwrap().to_u64().unwrap(), 1 << 20);
        assert_eq!(rep.symbols, 20);
    }
}
