//! The case dichotomy for vertical curves.
//!
//! A vertical curve is a graph over y crossing the box from the bottom face
//! y = -4 to the top face y = 4 with tangents in the narrow planar cone
//! (|dx/dy| and |dz/dy| at most 1/theta). For a curve right of the
//! distinguished horizontal line W (the x-axis translate through the fixed
//! point), one of two sub-boxes is supposed to produce the next vertical
//! curve:
//!
//!   A': 2.4 <= y <= 3.8,  -22 <= z <= -3.3
//!   B': -3.8 <= y <= -2.4, -7.3 <= z <= 0
//!
//! The piece of the curve through the chosen sub-box maps onto a curve whose
//! y range covers [-4, 4]; trimming and resampling yields the next vertical
//! curve. Case A' must come out below the slab z > -u_plus, case B' clear of
//! the u-neighborhood of W. Both cases can verify at once; neither is a
//! reportable outcome. All curve-level checks here sample finitely many
//! points and are labeled non-rigorous by the certification layer.

use geom_core::Interval;
use henon_family::HenonParams;
use serde::{Deserialize, Serialize};

use crate::emap::{effective_fixed_point, EffectiveMap, FixedPoint};
use crate::error::{CertError, Result};

#[derive(Debug, Clone)]
pub struct CurveSample {
    pub point: [f64; 3],
    /// Tangent enclosure normalized to dy = 1.
    pub tangent: [Interval; 3],
}

/// A sampled vertical curve through the box, ordered by strictly
/// increasing y with endpoint samples on the faces y = +-4.
#[derive(Debug, Clone)]
pub struct VerticalCurve {
    pub samples: Vec<CurveSample>,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum H5Outcome {
    CaseAPrime,
    CaseBPrime,
    Both,
    Neither,
}

impl H5Outcome {
    pub fn short(self) -> &'static str {
        match self {
            H5Outcome::CaseAPrime => "A",
            H5Outcome::CaseBPrime => "B",
            H5Outcome::Both => "AB",
            H5Outcome::Neither => "-",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CaseCheck {
    pub verified: bool,
    pub image: Option<VerticalCurve>,
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct H5CaseReport {
    pub outcome: H5Outcome,
    pub a: CaseCheck,
    pub b: CaseCheck,
    pub fixed_point: FixedPoint,
}

#[derive(Debug, Clone)]
pub struct H5Config {
    pub theta: f64,
    /// Half-height of the excluded slab around W for case B'.
    pub u: f64,
    /// Height of the excluded slab under the top face for case A'.
    pub u_plus: f64,
    /// Sample count of produced image curves.
    pub resample: usize,
}

impl Default for H5Config {
    fn default() -> Self {
        H5Config {
            theta: 2.0,
            u: 0.25,
            u_plus: 0.25,
            resample: 257,
        }
    }
}

/// Certified containment of a normalized tangent box in the narrow planar
/// cone of aperture 1/theta.
fn tangent_in_cone(t: &[Interval; 3], theta: f64) -> bool {
    if t[1].mig() <= 0.0 {
        return false;
    }
    let planar = t[0].sqr().add(&t[2].sqr());
    let theta_sq = Interval::point(theta).sqr();
    t[1].sqr().sub(&theta_sq.mul(&planar)).lo() >= 0.0
}

fn normalize_tangent(t: &[Interval; 3]) -> Option<[Interval; 3]> {
    if t[1].mig() <= 0.0 {
        return None;
    }
    let u = t[0].div(&t[1]).ok()?;
    let w = t[2].div(&t[1]).ok()?;
    Some([u, Interval::point(1.0), w])
}

impl VerticalCurve {
    /// A straight vertical line x and z constant, tangent exactly (0, 1, 0).
    pub fn vertical_line(x: f64, z: f64, theta: f64, samples: usize) -> Self {
        let n = samples.max(2);
        let samples = (0..n)
            .map(|i| {
                let y = -4.0 + 8.0 * i as f64 / (n - 1) as f64;
                CurveSample {
                    point: [x, y, z],
                    tangent: [
                        Interval::point(0.0),
                        Interval::point(1.0),
                        Interval::point(0.0),
                    ],
                }
            })
            .collect();
        VerticalCurve { samples, theta }
    }

    /// Structural validation: ordering, face-to-face span, containment in
    /// the box, and certified cone containment of every tangent.
    pub fn validate(&self) -> Result<()> {
        if self.samples.len() < 2 {
            return Err(CertError::BadCurve("fewer than 2 samples".into()));
        }
        let first = self.samples.first().expect("nonempty");
        let last = self.samples.last().expect("nonempty");
        if (first.point[1] + 4.0).abs() > 1e-9 || (last.point[1] - 4.0).abs() > 1e-9 {
            return Err(CertError::BadCurve(format!(
                "y endpoints {} / {} are not -4 / 4",
                first.point[1], last.point[1]
            )));
        }
        for pair in self.samples.windows(2) {
            if pair[1].point[1] <= pair[0].point[1] {
                return Err(CertError::BadCurve("y samples not strictly increasing".into()));
            }
        }
        for (i, s) in self.samples.iter().enumerate() {
            let [x, _, z] = s.point;
            if !(-4.0..=4.0).contains(&x) || !(-40.0..=0.0).contains(&z) {
                return Err(CertError::BadCurve(format!(
                    "sample {i} at ({x}, {}, {z}) leaves the box",
                    s.point[1]
                )));
            }
            if !tangent_in_cone(&s.tangent, self.theta) {
                return Err(CertError::BadCurve(format!(
                    "tangent at sample {i} not certified in the narrow cone"
                )));
            }
        }
        Ok(())
    }

    /// Smallest sample z value.
    pub fn min_z(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.point[2])
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest sample z value.
    pub fn max_z(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.point[2])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Linear interpolation of (x, z) at a y inside the span.
    pub fn interpolate(&self, y: f64) -> Option<(f64, f64)> {
        let idx = bracket(&self.samples, y)?;
        let a = &self.samples[idx];
        let b = &self.samples[idx + 1];
        let r = (y - a.point[1]) / (b.point[1] - a.point[1]);
        Some((
            a.point[0] + r * (b.point[0] - a.point[0]),
            a.point[2] + r * (b.point[2] - a.point[2]),
        ))
    }

    /// Copy with every z shifted by h (tangents unchanged).
    pub fn shifted_z(&self, h: f64) -> Self {
        VerticalCurve {
            samples: self
                .samples
                .iter()
                .map(|s| CurveSample {
                    point: [s.point[0], s.point[1], s.point[2] + h],
                    tangent: s.tangent.clone(),
                })
                .collect(),
            theta: self.theta,
        }
    }
}

/// Index i with samples[i].y <= y <= samples[i+1].y.
fn bracket(samples: &[CurveSample], y: f64) -> Option<usize> {
    if samples.len() < 2 || y < samples[0].point[1] || y > samples[samples.len() - 1].point[1] {
        return None;
    }
    let mut lo = 0usize;
    let mut hi = samples.len() - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if samples[mid].point[1] <= y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

fn lerp_sample(a: &CurveSample, b: &CurveSample, y: f64) -> CurveSample {
    let r = (y - a.point[1]) / (b.point[1] - a.point[1]);
    let tangent = [
        a.tangent[0].hull(&b.tangent[0]),
        a.tangent[1].hull(&b.tangent[1]),
        a.tangent[2].hull(&b.tangent[2]),
    ];
    CurveSample {
        point: [
            a.point[0] + r * (b.point[0] - a.point[0]),
            y,
            a.point[2] + r * (b.point[2] - a.point[2]),
        ],
        tangent,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Case {
    APrime,
    BPrime,
}

impl Case {
    fn y_window(self) -> (f64, f64) {
        match self {
            Case::APrime => (2.4, 3.8),
            Case::BPrime => (-3.8, -2.4),
        }
    }

    fn z_window(self) -> (f64, f64) {
        match self {
            Case::APrime => (-22.0, -3.3),
            Case::BPrime => (-7.3, 0.0),
        }
    }

    fn label(self) -> &'static str {
        match self {
            Case::APrime => "A'",
            Case::BPrime => "B'",
        }
    }
}

fn fail(note: String) -> CaseCheck {
    CaseCheck {
        verified: false,
        image: None,
        note,
    }
}

/// Run one case of the dichotomy on a validated curve.
fn try_case(
    emap: &EffectiveMap,
    fp: &FixedPoint,
    curve: &VerticalCurve,
    cfg: &H5Config,
    case: Case,
) -> CaseCheck {
    let (y_lo, y_hi) = case.y_window();
    let (z_lo, z_hi) = case.z_window();
    let label = case.label();

    // Extract the sub-curve over the y window, with interpolated endpoint
    // samples exactly at the window edges.
    let Some(i_lo) = bracket(&curve.samples, y_lo) else {
        return fail(format!("{label}: curve does not reach y = {y_lo}"));
    };
    let Some(i_hi) = bracket(&curve.samples, y_hi) else {
        return fail(format!("{label}: curve does not reach y = {y_hi}"));
    };
    let mut ext = Vec::new();
    ext.push(lerp_sample(
        &curve.samples[i_lo],
        &curve.samples[i_lo + 1],
        y_lo,
    ));
    for s in &curve.samples[i_lo + 1..=i_hi] {
        if s.point[1] > y_lo && s.point[1] < y_hi {
            ext.push(s.clone());
        }
    }
    ext.push(lerp_sample(
        &curve.samples[i_hi],
        &curve.samples[i_hi + 1],
        y_hi,
    ));
    for s in &ext {
        if s.point[2] < z_lo || s.point[2] > z_hi {
            return fail(format!(
                "{label}: sub-curve sample at y = {:.6} has z = {:.6} outside [{z_lo}, {z_hi}]",
                s.point[1], s.point[2]
            ));
        }
    }

    // Crossing: the image y at the window edges must certifiably reach past
    // -4 and 4. For A' the lower edge lands below, for B' the upper edge.
    let (low_edge, high_edge) = match case {
        Case::APrime => (&ext[0], &ext[ext.len() - 1]),
        Case::BPrime => (&ext[ext.len() - 1], &ext[0]),
    };
    let m_low = emap.middle(
        &Interval::point(low_edge.point[1]),
        &Interval::point(low_edge.point[2]),
    );
    let m_high = emap.middle(
        &Interval::point(high_edge.point[1]),
        &Interval::point(high_edge.point[2]),
    );
    if m_low.hi() > -4.0 {
        return fail(format!(
            "{label}: image y at the window edge is {m_low}, not certifiably <= -4"
        ));
    }
    if m_high.lo() < 4.0 {
        return fail(format!(
            "{label}: image y at the window edge is {m_high}, not certifiably >= 4"
        ));
    }

    // Map, normalizing tangents to dy = 1 in image coordinates.
    let mut mapped = Vec::with_capacity(ext.len());
    for s in &ext {
        let y = Interval::point(s.point[1]);
        let z = Interval::point(s.point[2]);
        let img = emap.image(&y, &z);
        let t_img = emap.push_tangent(&y, &z, &s.tangent);
        let Some(t_norm) = normalize_tangent(&t_img) else {
            return fail(format!(
                "{label}: image tangent at y = {:.6} not transverse to the horizontal",
                s.point[1]
            ));
        };
        mapped.push(CurveSample {
            point: [img[0].mid(), img[1].mid(), img[2].mid()],
            tangent: t_norm,
        });
    }
    if case == Case::BPrime {
        mapped.reverse();
    }
    for pair in mapped.windows(2) {
        if pair[1].point[1] <= pair[0].point[1] {
            return fail(format!(
                "{label}: image y not monotone near y = {:.6}",
                pair[0].point[1]
            ));
        }
    }

    // Trim to the box span and resample on the uniform y net.
    let n = cfg.resample.max(2);
    let mut resampled = Vec::with_capacity(n);
    for i in 0..n {
        let y = -4.0 + 8.0 * i as f64 / (n - 1) as f64;
        let Some(idx) = bracket(&mapped, y) else {
            return fail(format!("{label}: image does not cover y = {y:.6}"));
        };
        resampled.push(lerp_sample(&mapped[idx], &mapped[idx + 1], y));
    }

    // The resampled curve must be a vertical curve again.
    for s in &resampled {
        let [x, y, z] = s.point;
        if !(-4.0..=4.0).contains(&x) || !(-40.0..=0.0).contains(&z) {
            return fail(format!(
                "{label}: image sample at y = {y:.6} leaves the box at ({x:.6}, {z:.6})"
            ));
        }
        if !tangent_in_cone(&s.tangent, cfg.theta) {
            return fail(format!(
                "{label}: image tangent at y = {y:.6} not certified in the narrow cone"
            ));
        }
    }
    let image = VerticalCurve {
        samples: resampled,
        theta: cfg.theta,
    };

    // Right of W: all samples above the fixed z level, or the weaker
    // homotopy test at y = y_star (the curve passes on the high-z side of
    // the fixed point even when its far ends dip below that level).
    let z_bar = fp.z_star.hi();
    let all_right = image.min_z() > z_bar;
    let mut right_note = String::from("right of W by every sample");
    if !all_right {
        let Some((_, z_at)) = image.interpolate(fp.y_star.mid()) else {
            return fail(format!("{label}: cannot interpolate the image at y_star"));
        };
        if z_at <= z_bar {
            return fail(format!(
                "{label}: image z at y_star is {z_at:.6}, not right of W (z_star <= {z_bar:.6})"
            ));
        }
        right_note = format!(
            "right of W by the homotopy test: z(y_star) = {z_at:.6} > {z_bar:.6}"
        );
    }

    // Avoidance clause: A' stays under the slab near the top face, B' stays
    // clear of the slab around W.
    let avoid_note = match case {
        Case::APrime => {
            let top = image.max_z();
            if top > -cfg.u_plus {
                return fail(format!(
                    "{label}: image reaches z = {top:.6}, inside the top slab z > {}",
                    -cfg.u_plus
                ));
            }
            format!("clear of the top slab by {:.6}", -cfg.u_plus - top)
        }
        Case::BPrime => {
            let bottom = image.min_z();
            if bottom < z_bar + cfg.u {
                return fail(format!(
                    "{label}: image reaches z = {bottom:.6}, inside the {:.2}-slab around W",
                    cfg.u
                ));
            }
            format!("clear of the W slab by {:.6}", bottom - (z_bar + cfg.u))
        }
    };

    CaseCheck {
        verified: true,
        image: Some(image),
        note: format!("{label}: {right_note}; {avoid_note}"),
    }
}

/// Check both cases of the dichotomy for one vertical curve.
///
/// The curve must be a vertical curve through the box, every sample right of
/// the fixed z level. The outcome reports which cases verified; neither is a
/// valid report, not an error.
pub fn check_h5_case(
    params: &HenonParams,
    curve: &VerticalCurve,
    cfg: &H5Config,
) -> Result<H5CaseReport> {
    let emap = EffectiveMap::new(params)?;
    let fp = effective_fixed_point(&emap)?;
    check_h5_case_with(&emap, &fp, curve, cfg)
}

pub(crate) fn check_h5_case_with(
    emap: &EffectiveMap,
    fp: &FixedPoint,
    curve: &VerticalCurve,
    cfg: &H5Config,
) -> Result<H5CaseReport> {
    curve.validate()?;
    if curve.min_z() <= fp.z_star.hi() {
        return Err(CertError::BadCurve(format!(
            "curve sample at z = {:.6} not right of W (z_star = {})",
            curve.min_z(),
            fp.z_star
        )));
    }

    let a = try_case(emap, fp, curve, cfg, Case::APrime);
    let b = try_case(emap, fp, curve, cfg, Case::BPrime);
    let outcome = match (a.verified, b.verified) {
        (true, true) => H5Outcome::Both,
        (true, false) => H5Outcome::CaseAPrime,
        (false, true) => H5Outcome::CaseBPrime,
        (false, false) => H5Outcome::Neither,
    };
    Ok(H5CaseReport {
        outcome,
        a,
        b,
        fixed_point: fp.clone(),
    })
}
