//! Machine-readable report serialization: floats rounded to 12 significant
//! digits for reproducible diffs, JSON builders for the structured exports,
//! and small CSV writers for series.

use crate::construct::{AdmissibleSet, Checkpoint, CheckpointSpectrum, VerifyReport};
use crate::dimension::CoverReport;
use crate::distributional::DistributionalProfile;
use serde_json::{json, Map, Value};

/// Format a float with 12 significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.11e}");
    // Normalize exponent form: keep it compact but stable.
    s
}

/// Round a float to 12 significant digits so serializers emit stable text.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn num(x: f64) -> Value {
    json!(round_sig(x))
}

/// JSON export of an admissible set: target, parameters, exact intervals as
/// decimal strings, and the checkpoint report.
pub fn admissible_to_json(adm: &AdmissibleSet) -> Value {
    let intervals: Vec<Value> = adm
        .intervals
        .iter()
        .map(|(l, r)| json!([l.to_string(), r.to_string()]))
        .collect();
    let checkpoints: Vec<Value> = adm.checkpoints.iter().map(checkpoint_to_json).collect();
    json!({
        "target": { "p": num(adm.target.p), "q": num(adm.target.q) },
        "delta": num(adm.delta),
        "horizon": adm.horizon,
        "schedule_offset": adm.schedule_offset,
        "complemented": adm.complemented,
        "truncated": adm.truncated,
        "clamp_events": adm.clamp_events,
        "intervals": intervals,
        "checkpoints": checkpoints,
        "materialized_members": adm.set.len(),
    })
}

fn checkpoint_to_json(c: &Checkpoint) -> Value {
    json!({
        "index": c.index,
        "peak_ratio": num(c.peak_ratio),
        "trough_ratio": num(c.trough_ratio),
        "gap_len": num(c.gap_len),
        "next_run_len": num(c.next_run_len),
        "ln_peak_time": num(c.ln_peak_time),
    })
}

pub fn verify_to_json(rep: &VerifyReport) -> Value {
    json!({
        "target": { "p": num(rep.target.p), "q": num(rep.target.q) },
        "tolerance": num(rep.tolerance),
        "i_min": rep.i_min,
        "checkpoints_used": rep.checkpoints_used,
        "max_peak_deviation": num(rep.max_peak_deviation),
        "max_trough_deviation": num(rep.max_trough_deviation),
        "min_tail_block": num(rep.min_tail_block),
        "trend_increasing": rep.trend_increasing,
        "pass": rep.pass,
    })
}

/// CSV of a distributional profile: `k, eps_hi, lo, hi` with
/// `eps_hi = K^(−k+1)` the top of the window's metric band.
pub fn profile_to_csv(profile: &DistributionalProfile, k_alphabet: u32) -> String {
    let mut out = String::from("k,eps_hi,lo,hi\n");
    for (k, iv) in &profile.entries {
        let eps = (k_alphabet as f64).powi(-(*k as i32) + 1);
        out.push_str(&format!(
            "{k},{},{},{}\n",
            fmt_sig(eps),
            fmt_sig(iv.lo),
            fmt_sig(iv.hi)
        ));
    }
    out
}

/// CSV of predicted-vs-measured checkpoint envelopes per window length.
pub fn envelope_comparison_csv(rows: &[(usize, f64, f64, f64, f64)]) -> String {
    let mut out = String::from("k,predicted_lo,predicted_hi,measured_lo,measured_hi\n");
    for (k, plo, phi, mlo, mhi) in rows {
        out.push_str(&format!(
            "{k},{},{},{},{}\n",
            fmt_sig(*plo),
            fmt_sig(*phi),
            fmt_sig(*mlo),
            fmt_sig(*mhi)
        ));
    }
    out
}

/// CSV of a cover-report series: depth, ln count, ln inverse diameter, and
/// the log cover sum at the requested exponent.
pub fn cover_series_csv(reports: &[CoverReport], s: f64) -> String {
    let mut out = String::from("depth,ln_count,ln_inv_diam,ln_sum_s,estimate\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.depth,
            fmt_sig(r.count.log_value),
            fmt_sig(r.ln_inv_diameter),
            fmt_sig(r.count.log_value - s * r.ln_inv_diameter),
            fmt_sig(r.estimate),
        ));
    }
    out
}

/// Two-line symbol file for an orbit pair: space-separated decimal symbols.
pub fn pair_to_text(x: &crate::symbolic::TruncatedPoint, y: &crate::symbolic::TruncatedPoint) -> String {
    let mut out = String::new();
    for (i, &s) in x.symbols().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&s.to_string());
    }
    out.push('\n');
    for (i, &s) in y.symbols().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&s.to_string());
    }
    out.push('\n');
    out
}

/// Parse a two-line symbol file.
pub fn pair_from_text(
    text: &str,
    alphabet: u32,
) -> crate::error::Result<(crate::symbolic::TruncatedPoint, crate::symbolic::TruncatedPoint)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let parse = |line: &str| -> crate::error::Result<Vec<u32>> {
        line.split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|e| crate::error::Error::Parse(format!("bad symbol {t:?}: {e}")))
            })
            .collect()
    };
    let x = parse(
        lines
            .next()
            .ok_or_else(|| crate::error::Error::Parse("missing first line".into()))?,
    )?;
    let y = parse(
        lines
            .next()
            .ok_or_else(|| crate::error::Error::Parse("missing second line".into()))?,
    )?;
    Ok((
        crate::symbolic::TruncatedPoint::new(x, alphabet)?,
        crate::symbolic::TruncatedPoint::new(y, alphabet)?,
    ))
}

/// Measured checkpoint spectrum as JSON.
pub fn checkpoint_spectrum_to_json(cs: &CheckpointSpectrum) -> Value {
    let series = |v: &[(u64, f64)]| -> Value {
        Value::Array(
            v.iter()
                .map(|&(t, d)| json!([t, num(d)]))
                .collect::<Vec<_>>(),
        )
    };
    let mut m = Map::new();
    m.insert("lo".into(), num(cs.interval.lo));
    m.insert("hi".into(), num(cs.interval.hi));
    m.insert("peaks".into(), series(&cs.peaks));
    m.insert("troughs".into(), series(&cs.troughs));
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_digit_rounding_stable() {
        let x = 0.123456789012345678;
        let a = round_sig(x);
        let b = round_sig(a);
        assert_eq!(a, b);
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.0), "1.00000000000e0");
    }

    #[test]
    fn pair_text_round_trip() {
        let x = crate::symbolic::TruncatedPoint::new(vec![0, 1, 3], 4).unwrap();
        let y = crate::symbolic::TruncatedPoint::new(vec![2, 2, 0], 4).unwrap();
        let text = pair_to_text(&x, &y);
        let (a, b) = pair_from_text(&text, 4).unwrap();
        assert_eq!(a, x);
        assert_eq!(b, y);
    }
}
