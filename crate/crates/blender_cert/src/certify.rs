//! Aggregation of all conditions into one certificate.
//!
//! The overall verdict is CERTIFIED only when the interval-backed conditions
//! (H1, H2, H3 in all three parts, H4) certify and the sampled layers (the
//! H5 verdict over the curve net and the strip game with its width-growth
//! clause) pass as well. The sampled layers are labeled non-rigorous in the
//! certificate. Nothing here returns errors: every failure mode lands in a
//! verdict with an explanatory note so a parameter scan can map the
//! certified sub-region.

use geom_core::Interval;
use henon_family::HenonParams;
use serde::{Deserialize, Serialize};

use crate::emap::{effective_fixed_point, EffectiveMap};
use crate::h12::check_h1_h2_with;
use crate::h3::check_h3_with;
use crate::h4::check_h4_with;
use crate::h5::{check_h5_case_with, H5Config, H5Outcome, VerticalCurve};
use crate::region::compute_ab;
use crate::strip::{lhat_image_seed, strip_game, trace_to_csv, widths_obey_growth, StripConfig};
use crate::verdict::{ConditionReport, SubClaim, Verdict};

#[derive(Debug, Clone)]
pub struct CertifyConfig {
    /// Subdivision depth for the region enclosures and face sweeps.
    pub depth: u32,
    /// Refinement depth for the cone-condition sweeps.
    pub h3_depth: u32,
    pub theta: f64,
    /// Half-height of the excluded slab around W (case B').
    pub u: f64,
    /// Height of the excluded slab under the top face (case A').
    pub u_plus: f64,
    /// Height of the slab above the bottom face the depth condition must
    /// clear.
    pub u_minus: f64,
    pub net_curves: usize,
    pub net_samples: usize,
    pub strip_steps: usize,
    pub strip_h0: f64,
    pub eps_hit: f64,
    pub prefer_a: bool,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            depth: 6,
            h3_depth: 12,
            theta: 2.0,
            u: 0.25,
            u_plus: 0.25,
            u_minus: 0.25,
            net_curves: 33,
            net_samples: 257,
            strip_steps: 50,
            strip_h0: 1e-5,
            eps_hit: 1e-6,
            prefer_a: true,
        }
    }
}

/// Closed interval endpoints, the serialization of an enclosure.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Pair {
    pub lo: f64,
    pub hi: f64,
}

impl From<&Interval> for Pair {
    fn from(iv: &Interval) -> Self {
        Pair {
            lo: iv.lo(),
            hi: iv.hi(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamSummary {
    pub xi: f64,
    pub mu: f64,
    pub kappa: f64,
    pub eta: f64,
    pub form: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixedPointSummary {
    pub y_star: Pair,
    pub z_star: Pair,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpansionSummary {
    pub c0: f64,
    pub ell: u32,
    pub c: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetSummary {
    pub curves: usize,
    pub samples: usize,
    pub case_a: usize,
    pub case_b: usize,
    pub both: usize,
    pub neither: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StripSummary {
    pub steps_recorded: usize,
    pub first_hit: Option<usize>,
    pub aborted_neither_at: Option<usize>,
    pub final_width: f64,
    pub final_min_dist: f64,
    pub growth_ok: bool,
    pub note: String,
    pub csv: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub params: ParamSummary,
    pub theta: f64,
    pub depth: u32,
    pub h3_depth: u32,
    pub overall: Verdict,
    pub conditions: Vec<ConditionReport>,
    pub sub_claims: Vec<SubClaim>,
    pub fixed_point: Option<FixedPointSummary>,
    pub x_span_a: Option<Pair>,
    pub x_span_b: Option<Pair>,
    pub expansion: ExpansionSummary,
    pub net: Option<NetSummary>,
    pub strip: Option<StripSummary>,
    pub notes: Vec<String>,
}

fn unresolved(name: &str, note: String) -> ConditionReport {
    ConditionReport::new(name, Verdict::Unresolved, None, 0, note)
}

/// Run every check and aggregate the certificate.
pub fn certify(params: &HenonParams, cfg: &CertifyConfig) -> Certificate {
    let summary = ParamSummary {
        xi: params.xi,
        mu: params.mu,
        kappa: params.kappa,
        eta: params.eta,
        form: format!("{:?}", params.form),
    };
    let mut notes = vec![
        "H5 and strip-game verdicts are sampled on a finite curve net and are \
         not interval-rigorous"
            .to_string(),
    ];
    let mut conditions = Vec::new();
    let mut sub_claims = Vec::new();

    let emap = match EffectiveMap::new(params) {
        Ok(e) => e,
        Err(e) => {
            notes.push(format!("parameters rejected: {e}"));
            for name in ["H1", "H2", "H3(i)", "H3(ii)", "H3(iii)", "H4", "H5 sampled", "strip game"]
            {
                conditions.push(unresolved(name, "parameters rejected".into()));
            }
            return Certificate {
                params: summary,
                theta: cfg.theta,
                depth: cfg.depth,
                h3_depth: cfg.h3_depth,
                overall: Verdict::Unresolved,
                conditions,
                sub_claims,
                fixed_point: None,
                x_span_a: None,
                x_span_b: None,
                expansion: ExpansionSummary {
                    c0: 0.0,
                    ell: 0,
                    c: 0.0,
                },
                net: None,
                strip: None,
                notes,
            };
        }
    };

    // Region enclosures and their sub-claims.
    let regions = compute_ab(&emap, cfg.depth).expect("parameters validated above");
    sub_claims.extend(regions.sub_claims.clone());
    let x_span_a = regions.x_span_a.as_ref().map(Pair::from);
    let x_span_b = regions.x_span_b.as_ref().map(Pair::from);

    // H1 and H2 need separated enclosures to mean anything.
    if regions.separated {
        let (h12, _) = check_h1_h2_with(&emap, &regions, cfg.depth);
        conditions.push(h12.h1);
        conditions.push(h12.h2);
    } else {
        let note = format!(
            "A/B enclosures not separated at depth {}; raise the depth",
            cfg.depth
        );
        conditions.push(unresolved("H1", note.clone()));
        conditions.push(unresolved("H2", note));
    }

    // Cone conditions.
    let h3 = check_h3_with(&emap, cfg.theta, cfg.h3_depth).expect("parameters validated above");
    conditions.push(h3.part_i.clone());
    conditions.push(h3.part_ii.clone());
    conditions.push(h3.part_iii.clone());
    let expansion = ExpansionSummary {
        c0: h3.c0,
        ell: h3.ell,
        c: h3.c,
    };

    // Depth condition; its failure modes include a missing fixed point.
    let fixed_point;
    match check_h4_with(&emap, cfg.theta) {
        Ok(h4) => {
            fixed_point = Some(h4.fixed_point);
            conditions.push(h4.report);
        }
        Err(e) => {
            fixed_point = None;
            conditions.push(ConditionReport::new(
                "H4",
                Verdict::Failed,
                None,
                0,
                format!("fixed point unavailable: {e}"),
            ));
        }
    }

    // Sampled H5 verdict over the curve net.
    let h5_cfg = H5Config {
        theta: cfg.theta,
        u: cfg.u,
        u_plus: cfg.u_plus,
        resample: cfg.net_samples,
    };
    let mut net = None;
    match &fixed_point {
        Some(fp) => {
            let z_lo = (fp.z_star.hi() + 0.01).max(-40.0 + cfg.u_minus + 0.01);
            let z_hi = -0.26;
            if z_lo >= z_hi || cfg.net_curves < 2 {
                conditions.push(unresolved(
                    "H5 sampled",
                    format!("curve net empty: z range ({z_lo:.3}, {z_hi:.3})"),
                ));
            } else {
                let mut tally = NetSummary {
                    curves: cfg.net_curves,
                    samples: cfg.net_samples,
                    case_a: 0,
                    case_b: 0,
                    both: 0,
                    neither: 0,
                };
                let mut first_neither = None;
                let mut error_note = None;
                for i in 0..cfg.net_curves {
                    let z0 = z_lo + (z_hi - z_lo) * i as f64 / (cfg.net_curves - 1) as f64;
                    let curve =
                        VerticalCurve::vertical_line(0.0, z0, cfg.theta, cfg.net_samples);
                    match check_h5_case_with(&emap, fp, &curve, &h5_cfg) {
                        Ok(report) => {
                            match report.outcome {
                                H5Outcome::CaseAPrime => tally.case_a += 1,
                                H5Outcome::CaseBPrime => tally.case_b += 1,
                                H5Outcome::Both => tally.both += 1,
                                H5Outcome::Neither => {
                                    tally.neither += 1;
                                    if first_neither.is_none() {
                                        first_neither =
                                            Some((z0, report.a.note, report.b.note));
                                    }
                                }
                            }
                        }
                        Err(e) => {
                            error_note = Some(format!("net curve at z = {z0:.4} rejected: {e}"));
                            break;
                        }
                    }
                }
                let report = if let Some(note) = error_note {
                    unresolved("H5 sampled", note)
                } else if let Some((z0, a_note, b_note)) = first_neither {
                    ConditionReport::new(
                        "H5 sampled",
                        Verdict::Failed,
                        None,
                        0,
                        format!(
                            "neither case verified for the net curve at z = {z0:.4} \
                             ({a_note}; {b_note}); {} neither outcomes total",
                            tally.neither
                        ),
                    )
                } else {
                    ConditionReport::new(
                        "H5 sampled",
                        Verdict::Certified,
                        None,
                        0,
                        format!(
                            "all {} net curves verified a case (A: {}, B: {}, both: {}); \
                             sampled, non-rigorous",
                            tally.curves, tally.case_a, tally.case_b, tally.both
                        ),
                    )
                };
                conditions.push(report);
                net = Some(tally);
            }
        }
        None => {
            conditions.push(unresolved(
                "H5 sampled",
                "fixed point unavailable".into(),
            ));
        }
    }

    // Strip game with the width-growth clause. Reaching the eps-neighborhood
    // of W is recorded but not gated: the growth clause and the absence of
    // neither-aborts are what the certificate requires.
    let strip_cfg = StripConfig {
        h0: cfg.strip_h0,
        eps_hit: cfg.eps_hit,
        prefer_a: cfg.prefer_a,
        h5: h5_cfg.clone(),
    };
    let mut strip = None;
    if fixed_point.is_some() {
        match lhat_image_seed(params, cfg.theta, cfg.net_samples) {
            Ok(seed) => match strip_game(params, &seed, cfg.strip_steps, &strip_cfg) {
                Ok(trace) => {
                    let growth_ok = widths_obey_growth(&trace, h3.c0, h3.ell);
                    let last = trace.steps.last();
                    let summary = StripSummary {
                        steps_recorded: trace.steps.len(),
                        first_hit: trace.first_hit,
                        aborted_neither_at: trace.aborted_neither_at,
                        final_width: last.map_or(0.0, |s| s.width),
                        final_min_dist: last.map_or(f64::INFINITY, |s| s.min_dist),
                        growth_ok,
                        note: trace.note.clone(),
                        csv: trace_to_csv(&trace),
                    };
                    let verdict = if trace.aborted_neither_at.is_some() {
                        Verdict::Failed
                    } else if h3.ell == 0 {
                        Verdict::Unresolved
                    } else if !growth_ok {
                        Verdict::Failed
                    } else {
                        Verdict::Certified
                    };
                    let notes_text = match verdict {
                        Verdict::Certified => format!(
                            "no neither-abort in {} steps; widths grew by c0 = {:.4} every \
                             {} step(s); first hit of the {:.0e}-neighborhood of W: {}; \
                             sampled, non-rigorous",
                            trace.steps.len() - 1,
                            h3.c0,
                            h3.ell,
                            cfg.eps_hit,
                            trace
                                .first_hit
                                .map_or("none".to_string(), |k| format!("step {k}")),
                        ),
                        Verdict::Failed => trace.note.clone(),
                        Verdict::Unresolved => {
                            "no certified growth constant from the cone conditions".to_string()
                        }
                    };
                    conditions.push(ConditionReport::new(
                        "strip game",
                        verdict,
                        None,
                        0,
                        notes_text,
                    ));
                    strip = Some(summary);
                }
                Err(e) => {
                    conditions.push(unresolved("strip game", format!("game rejected: {e}")));
                }
            },
            Err(e) => {
                conditions.push(unresolved("strip game", format!("seed rejected: {e}")));
            }
        }
    } else {
        conditions.push(unresolved("strip game", "fixed point unavailable".into()));
    }

    let overall = conditions
        .iter()
        .fold(Verdict::Certified, |v, c| v.both(c.verdict));

    Certificate {
        params: summary,
        theta: cfg.theta,
        depth: cfg.depth,
        h3_depth: cfg.h3_depth,
        overall,
        conditions,
        sub_claims,
        fixed_point: fixed_point.map(|fp| FixedPointSummary {
            y_star: Pair::from(&fp.y_star),
            z_star: Pair::from(&fp.z_star),
        }),
        x_span_a,
        x_span_b,
        expansion,
        net,
        strip,
        notes,
    }
}
