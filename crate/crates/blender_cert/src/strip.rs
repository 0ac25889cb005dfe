//! The strip iteration game.
//!
//! A strip is the region between two nearby vertical curves. Starting from a
//! seed curve thickened by h0, each round picks a verified case of the
//! dichotomy (preferring A' on ties by default), maps both boundary curves
//! through it, and records the strip width and the distance to the
//! distinguished horizontal line W through the fixed point. The game stops
//! at the first step whose strip straddles W or comes within eps_hit of it
//! at the fixed-point height, when a step verifies neither case (abort with
//! the partial trace), or after the requested number of steps.

use std::fmt::Write as _;

use geom_core::Interval;
use henon_family::HenonParams;
use serde::{Deserialize, Serialize};

use crate::emap::{effective_fixed_point, EffectiveMap, FixedPoint};
use crate::error::{CertError, Result};
use crate::h5::{check_h5_case_with, CurveSample, H5Config, H5Outcome, VerticalCurve};

#[derive(Debug, Clone)]
pub struct StripConfig {
    /// Initial strip thickness.
    pub h0: f64,
    /// Hit radius around W at the fixed-point height.
    pub eps_hit: f64,
    /// Prefer case A' when both verify.
    pub prefer_a: bool,
    pub h5: H5Config,
}

impl Default for StripConfig {
    fn default() -> Self {
        StripConfig {
            h0: 1e-5,
            eps_hit: 1e-6,
            prefer_a: true,
            h5: H5Config::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: usize,
    /// Case applied leaving this step; None on the final or aborted step.
    pub case: Option<H5Outcome>,
    /// Smallest z gap between the boundary curves on the common y net.
    pub width: f64,
    /// Distance from the strip to W: zero when straddling, otherwise the
    /// smaller of the sample distances and the gap at the fixed-point
    /// height.
    pub min_dist: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StripTrace {
    pub steps: Vec<TraceStep>,
    pub first_hit: Option<usize>,
    pub aborted_neither_at: Option<usize>,
    pub note: String,
}

/// The seed curve from the horizontal segment on the top face: the image of
/// {(0, t, 0)} contains the graph (t, mu + t^2, t) over the negative t
/// branch, which crosses the box face to face with admissible tangents for
/// parameters deep enough below -4.
pub fn lhat_image_seed(params: &HenonParams, theta: f64, samples: usize) -> Result<VerticalCurve> {
    let emap = EffectiveMap::new(params)?;
    if emap.mu >= -4.0 {
        return Err(CertError::BadCurve(format!(
            "seed undefined: mu = {} needs the face segment to map across the box",
            emap.mu
        )));
    }
    let n = samples.max(2);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let y = -4.0 + 8.0 * i as f64 / (n - 1) as f64;
        let t = -((y - emap.mu).sqrt());
        let slope = Interval::point(1.0)
            .div(&Interval::point(2.0 * t))
            .map_err(CertError::Geom)?;
        out.push(CurveSample {
            point: [t, y, t],
            tangent: [slope, Interval::point(1.0), slope],
        });
    }
    let curve = VerticalCurve {
        samples: out,
        theta,
    };
    curve.validate()?;
    Ok(curve)
}

/// Distance data of a strip relative to W.
fn strip_distance(low: &VerticalCurve, high: &VerticalCurve, fp: &FixedPoint) -> (f64, f64) {
    let y_star = fp.y_star.mid();
    let z_star = fp.z_star.mid();
    let mut sample_dist = f64::INFINITY;
    for c in [low, high] {
        for s in &c.samples {
            let d = (s.point[1] - y_star).hypot(s.point[2] - z_star);
            sample_dist = sample_dist.min(d);
        }
    }
    let gap_at_star = match (low.interpolate(y_star), high.interpolate(y_star)) {
        (Some((_, zl)), Some((_, zh))) => {
            let (a, b) = (zl.min(zh), zl.max(zh));
            if (a..=b).contains(&z_star) {
                0.0
            } else {
                (z_star - a).abs().min((z_star - b).abs())
            }
        }
        _ => f64::INFINITY,
    };
    (gap_at_star, sample_dist.min(gap_at_star))
}

/// Smallest z gap between the curves over the shared sample net.
fn strip_width(low: &VerticalCurve, high: &VerticalCurve) -> f64 {
    low.samples
        .iter()
        .zip(&high.samples)
        .map(|(a, b)| b.point[2] - a.point[2])
        .fold(f64::INFINITY, f64::min)
}

/// Play the strip game from a seed curve.
pub fn strip_game(
    params: &HenonParams,
    seed: &VerticalCurve,
    steps: usize,
    cfg: &StripConfig,
) -> Result<StripTrace> {
    let emap = EffectiveMap::new(params)?;
    let fp = effective_fixed_point(&emap)?;
    seed.validate()?;

    // Thicken away from the nearer z face.
    let (mut low, mut high) = if seed.max_z() + cfg.h0 <= 0.0 {
        (seed.clone(), seed.shifted_z(cfg.h0))
    } else {
        (seed.shifted_z(-cfg.h0), seed.clone())
    };

    let mut trace = StripTrace {
        steps: Vec::new(),
        first_hit: None,
        aborted_neither_at: None,
        note: String::new(),
    };

    for step in 0..=steps {
        let width = strip_width(&low, &high);
        let (gap_at_star, min_dist) = strip_distance(&low, &high, &fp);
        trace.steps.push(TraceStep {
            step,
            case: None,
            width,
            min_dist,
        });
        if gap_at_star <= cfg.eps_hit {
            trace.first_hit = Some(step);
            trace.note = format!(
                "strip within {} of W at step {step} (gap {gap_at_star:.3e})",
                cfg.eps_hit
            );
            break;
        }
        if step == steps {
            trace.note = format!(
                "no approach within {} of W in {steps} steps; final distance {min_dist:.6}",
                cfg.eps_hit
            );
            break;
        }

        // A seed is allowed to straddle W (handled above as a step-0 hit);
        // past that, both boundary curves must be right of W.
        let reports = (|| -> Result<_> {
            let rl = check_h5_case_with(&emap, &fp, &low, &cfg.h5)?;
            let rh = check_h5_case_with(&emap, &fp, &high, &cfg.h5)?;
            Ok((rl, rh))
        })();
        let (rl, rh) = match reports {
            Ok(pair) => pair,
            Err(e) => {
                trace.note = format!("aborted at step {step}: {e}");
                trace.aborted_neither_at = Some(step);
                break;
            }
        };

        let order = if cfg.prefer_a {
            [H5Outcome::CaseAPrime, H5Outcome::CaseBPrime]
        } else {
            [H5Outcome::CaseBPrime, H5Outcome::CaseAPrime]
        };
        let mut chosen = None;
        for case in order {
            let (cl, ch) = match case {
                H5Outcome::CaseAPrime => (&rl.a, &rh.a),
                _ => (&rl.b, &rh.b),
            };
            if cl.verified && ch.verified {
                chosen = Some((case, cl.image.clone(), ch.image.clone()));
                break;
            }
        }
        let Some((case, img_low, img_high)) = chosen else {
            trace.aborted_neither_at = Some(step);
            trace.note = format!(
                "neither case verified on both boundary curves at step {step} \
                 (low: {}, high: {})",
                rl.outcome.short(),
                rh.outcome.short()
            );
            break;
        };
        trace.steps.last_mut().expect("pushed above").case = Some(case);
        low = img_low.expect("verified case carries an image");
        high = img_high.expect("verified case carries an image");
    }

    Ok(trace)
}

/// Width growth check: w(k + ell) >= c0 * w(k) along the recorded steps.
pub fn widths_obey_growth(trace: &StripTrace, c0: f64, ell: u32) -> bool {
    if ell == 0 || c0 <= 1.0 {
        return false;
    }
    let ell = ell as usize;
    let widths: Vec<f64> = trace.steps.iter().map(|s| s.width).collect();
    if widths.len() <= ell {
        return true;
    }
    widths
        .windows(ell + 1)
        .all(|w| w[ell] >= c0 * w[0])
}

/// CSV serialization: step, case, width, min distance to W.
pub fn trace_to_csv(trace: &StripTrace) -> String {
    let mut out = String::from("step,case,width,min_dist\n");
    for s in &trace.steps {
        let case = s.case.map_or("-", |c| c.short());
        writeln!(out, "{},{},{:.9e},{:.9e}", s.step, case, s.width, s.min_dist)
            .expect("string write");
    }
    out
}
