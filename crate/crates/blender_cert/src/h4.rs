//! Depth condition: the distinguished fixed point sits deep enough in the
//! box that vertical curves to its right stay clear of the bottom face.
//!
//! The tangent constraint |dz/dy| <= 1/theta bounds the total z drift of a
//! vertical curve through Delta by (y span)/theta, so every such curve
//! through the fixed point keeps z >= z_star - 8/theta. The condition
//! certifies z_star in (-21.2, -12.6), which leaves a concrete gap above
//! z = -40; the gap is the reported margin.

use geom_core::Interval;
use henon_family::HenonParams;

use crate::emap::{effective_fixed_point, EffectiveMap, FixedPoint};
use crate::error::Result;
use crate::verdict::{ConditionReport, Verdict};

pub const Z_WINDOW: (f64, f64) = (-21.2, -12.6);

#[derive(Debug, Clone)]
pub struct H4Report {
    pub report: ConditionReport,
    pub fixed_point: FixedPoint,
    /// Certified lower bound on z along any vertical curve through the
    /// fixed point.
    pub z_reach: f64,
    /// Gap between that reach and the bottom face z = -40.
    pub margin: f64,
}

pub fn check_h4(params: &HenonParams, theta: f64) -> Result<H4Report> {
    let emap = EffectiveMap::new(params)?;
    check_h4_with(&emap, theta)
}

pub(crate) fn check_h4_with(emap: &EffectiveMap, theta: f64) -> Result<H4Report> {
    let fp = effective_fixed_point(emap)?;
    let (w_lo, w_hi) = Z_WINDOW;

    let reach_iv = fp
        .z_star
        .sub(&Interval::point(8.0).div(&Interval::point(theta))?);
    let z_reach = reach_iv.lo();
    let margin_iv = reach_iv.shift(40.0);
    let margin = margin_iv.lo();

    let in_window = w_lo < fp.z_star.lo() && fp.z_star.hi() < w_hi;
    let outside_window = fp.z_star.hi() < w_lo || fp.z_star.lo() > w_hi;

    let report = if in_window && margin > 0.0 {
        ConditionReport::new(
            "H4",
            Verdict::Certified,
            Some(margin),
            0,
            format!(
                "z_star = {} inside ({w_lo}, {w_hi}); reach {z_reach:.6} stays {margin:.6} \
                 above the bottom face",
                fp.z_star
            ),
        )
    } else if outside_window {
        ConditionReport::new(
            "H4",
            Verdict::Failed,
            None,
            0,
            format!("z_star = {} certifiably outside ({w_lo}, {w_hi})", fp.z_star),
        )
    } else {
        ConditionReport::new(
            "H4",
            Verdict::Unresolved,
            None,
            0,
            format!(
                "z_star = {} not certified either way against ({w_lo}, {w_hi})",
                fp.z_star
            ),
        )
    };

    Ok(H4Report {
        report,
        fixed_point: fp,
        z_reach,
        margin,
    })
}
