//! Double cones around the coordinate axes of (u, v, w) space, exact
//! membership tests, and interval certification that a linear map sends one
//! solid cone strictly inside another.
//!
//! Conventions. For aperture `theta > 1`:
//!   u-cone  = { theta * |u|            <= sqrt(v^2 + w^2) }  (expanding plane),
//!   uu-cone = { theta * sqrt(u^2+w^2)  <= |v| }              (expanding axis),
//!   s-cone  = { theta * sqrt(v^2+w^2)  <= |u| }              (contracting axis).
//! The uu-cone is contained in the u-cone. The starred norm used for
//! scale-invariant margins is `max(|u|, sqrt(v^2 + w^2))`.

use crate::error::{GeomError, Result};
use crate::interval::Interval;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::FromPrimitive;

/// Which axis the double cone is built around.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeKind {
    /// Complement-of-stable cone around the (v, w) plane.
    U,
    /// Strong-expanding cone around the v axis.
    Uu,
    /// Strong-stable cone around the u axis.
    S,
}

/// A symmetric double cone with aperture parameter `theta > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cone {
    pub kind: ConeKind,
    theta: f64,
}

impl Cone {
    pub fn new(kind: ConeKind, theta: f64) -> Result<Self> {
        if !(theta.is_finite() && theta > 1.0) {
            return Err(GeomError::BadAperture { theta });
        }
        Ok(Self { kind, theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

fn rat(x: f64) -> BigRational {
    // Finite f64 values are exact binary rationals.
    BigRational::from_f64(x).expect("finite f64 is an exact rational")
}

/// Exact membership test: true iff `v` satisfies the cone's defining
/// inequality, decided in arbitrary-precision rational arithmetic (the f64
/// components are exact rationals, so there is no rounding anywhere).
/// The zero vector belongs to every cone.
pub fn cone_contains(cone: &Cone, p: [f64; 3]) -> bool {
    let (lhs, rhs) = cone_sides(cone, p);
    lhs <= rhs
}

/// Exact strict-interior test: nonzero and strict inequality.
pub fn cone_contains_interior(cone: &Cone, p: [f64; 3]) -> bool {
    if p == [0.0; 3] || p.iter().any(|c| !c.is_finite()) {
        return false;
    }
    let (lhs, rhs) = cone_sides(cone, p);
    lhs < rhs
}

/// Squared sides of the defining inequality `theta * a <= b`, as exact
/// rationals: returns (theta^2 * a^2, b^2).
fn cone_sides(cone: &Cone, p: [f64; 3]) -> (BigRational, BigRational) {
    let [u, v, w] = p;
    let (u, v, w) = (rat(u), rat(v), rat(w));
    let t2 = rat(cone.theta) * rat(cone.theta);
    match cone.kind {
        ConeKind::U => (t2 * &u * &u, &v * &v + &w * &w),
        ConeKind::Uu => (t2 * (&u * &u + &w * &w), &v * &v),
        ConeKind::S => (t2 * (&v * &v + &w * &w), &u * &u),
    }
}

/// Controls for the cone-image certification sweep.
#[derive(Debug, Clone, Copy)]
pub struct ConeCheckConfig {
    /// Initial uniform grid resolution per section axis (default 8, giving
    /// 64 starting cells on the two-parameter sections).
    pub initial_cells_per_axis: usize,
    /// Adaptive bisection depth cap below the initial grid.
    pub max_depth: u32,
    /// Hard budget on predicate evaluations; exceeding it is inconclusive.
    pub max_cells: usize,
}

impl Default for ConeCheckConfig {
    fn default() -> Self {
        Self {
            initial_cells_per_axis: 8,
            max_depth: 12,
            max_cells: 1_000_000,
        }
    }
}

/// Certifies that the interval matrix `m` maps the solid source cone into
/// the interior of the target cone with scale-invariant slack `margin`.
///
/// Returns true only with a certificate; false means inconclusive (never
/// "disproved"). The certified inequality on every image vector is
/// `resid >= margin * |image|_star^2`, where `resid` is the target cone's
/// defining quadratic form (right side minus left side) and the starred norm
/// is `max(|u|, sqrt(v^2 + w^2))`. Directions are certified over a compact
/// cross-section of the solid source cone (a disk section for the uu/s
/// cones, a cylinder section under the rational circle chart for the u-cone),
/// which covers every ray of the double cone up to sign; intervals make each
/// cell's check rigorous and adaptive bisection refines undecided cells.
///
/// Kernel special case: when the target is the s-cone and the first column
/// of `m` is identically zero (an endomorphism collapsing the u axis), the
/// certificate instead verifies that the range of `m` meets the target cone
/// only at the origin, with the same margin semantics; the collapsed axis
/// itself lies in the interior of the s-cone. That certifies the backward
/// cone condition that the forward statement cannot express.
pub fn cone_mapped_into_interior(
    src: &Cone,
    m: &[[Interval; 3]; 3],
    dst: &Cone,
    margin: f64,
    cfg: &ConeCheckConfig,
) -> bool {
    if dst.kind == ConeKind::S && zero_first_column(m) {
        return certify_range_misses_cone(m, dst, margin, cfg);
    }

    let inv_theta = match Interval::point(1.0).div(&Interval::point(src.theta)) {
        Ok(i) => i,
        Err(_) => return false,
    };
    // Radius bound for the disk sections, as an enclosure of 1/theta^2.
    let r2 = inv_theta.sqr();

    match src.kind {
        ConeKind::Uu => {
            // Section {(u, 1, w) : u^2 + w^2 <= 1/theta^2}; rays through it
            // (and their negatives) exhaust the solid uu-cone.
            let dom = (inv_theta.neg().hull(&inv_theta), inv_theta.neg().hull(&inv_theta));
            certify_over(cfg, dom, &|a, b| {
                let q = a.sqr().add(&b.sqr());
                if q.lo() > r2.hi() {
                    return CellVerdict::Outside;
                }
                let img = apply(m, &[*a, Interval::point(1.0), *b]);
                dst_cell_verdict(&img, dst, margin)
            })
        }
        ConeKind::S => {
            // Section {(1, v, w) : v^2 + w^2 <= 1/theta^2}.
            let dom = (inv_theta.neg().hull(&inv_theta), inv_theta.neg().hull(&inv_theta));
            certify_over(cfg, dom, &|a, b| {
                let q = a.sqr().add(&b.sqr());
                if q.lo() > r2.hi() {
                    return CellVerdict::Outside;
                }
                let img = apply(m, &[Interval::point(1.0), *a, *b]);
                dst_cell_verdict(&img, dst, margin)
            })
        }
        ConeKind::U => {
            // Section {(u, v, w) : |u| <= 1/theta, (v, w) on the right unit
            // half-circle}; the chart v = (1-t^2)/(1+t^2), w = 2t/(1+t^2)
            // with t in [-1, 1] covers the half-circle, and negation
            // symmetry of the cones and of the linear map covers the rest.
            let u_dom = inv_theta.neg().hull(&inv_theta);
            let t_dom = Interval::new(-1.0, 1.0).expect("static endpoints");
            certify_over(cfg, (u_dom, t_dom), &|a, t| {
                let t2 = t.sqr();
                let den = t2.shift(1.0);
                let num = t2.neg().shift(1.0);
                let v = match num.div(&den) {
                    Ok(i) => i,
                    Err(_) => return CellVerdict::Unknown,
                };
                let w = match t.scale(2.0).div(&den) {
                    Ok(i) => i,
                    Err(_) => return CellVerdict::Unknown,
                };
                let img = apply(m, &[*a, v, w]);
                dst_cell_verdict(&img, dst, margin)
            })
        }
    }
}

fn zero_first_column(m: &[[Interval; 3]; 3]) -> bool {
    m.iter().all(|row| row[0].lo() == 0.0 && row[0].hi() == 0.0)
}

/// Kernel certificate: range(m) meets the s-cone only at the origin.
fn certify_range_misses_cone(
    m: &[[Interval; 3]; 3],
    dst: &Cone,
    margin: f64,
    cfg: &ConeCheckConfig,
) -> bool {
    // Range directions are v * col1 + w * col2 over the unit circle of
    // (v, w); the rational chart plus negation symmetry covers it.
    let t_dom = Interval::new(-1.0, 1.0).expect("static endpoints");
    certify_over_1d(cfg, t_dom, &|t| {
        let t2 = t.sqr();
        let den = t2.shift(1.0);
        let num = t2.neg().shift(1.0);
        let v = match num.div(&den) {
            Ok(i) => i,
            Err(_) => return CellVerdict::Unknown,
        };
        let w = match t.scale(2.0).div(&den) {
            Ok(i) => i,
            Err(_) => return CellVerdict::Unknown,
        };
        let img = apply(m, &[Interval::point(0.0), v, w]);
        // Exclusion form: the image must violate the s-cone inequality with
        // slack, i.e. theta^2 (v1^2 + w1^2) - u1^2 >= margin * star^2.
        let t2d = Interval::point(dst.theta).sqr();
        let planar = img[1].sqr().add(&img[2].sqr());
        let resid = t2d.mul(&planar).sub(&img[0].sqr());
        finish_margin_check(&resid, &img, margin)
    })
}

fn apply(m: &[[Interval; 3]; 3], x: &[Interval; 3]) -> [Interval; 3] {
    let mut out = [Interval::point(0.0); 3];
    for (i, row) in m.iter().enumerate() {
        out[i] = row[0]
            .mul(&x[0])
            .add(&row[1].mul(&x[1]))
            .add(&row[2].mul(&x[2]));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CellVerdict {
    Certified,
    /// Cell lies entirely outside the solid-cone section: vacuous.
    Outside,
    Unknown,
}

fn dst_cell_verdict(img: &[Interval; 3], dst: &Cone, margin: f64) -> CellVerdict {
    let t2 = Interval::point(dst.theta).sqr();
    let axial = img[0].sqr();
    let planar = img[1].sqr().add(&img[2].sqr());
    let resid = match dst.kind {
        ConeKind::U => planar.sub(&t2.mul(&axial)),
        ConeKind::Uu => img[1].sqr().sub(&t2.mul(&axial.add(&img[2].sqr()))),
        ConeKind::S => axial.sub(&t2.mul(&planar)),
    };
    finish_margin_check(&resid, img, margin)
}

fn finish_margin_check(resid: &Interval, img: &[Interval; 3], margin: f64) -> CellVerdict {
    let axial = img[0].sqr();
    let planar = img[1].sqr().add(&img[2].sqr());
    let star2 = axial.max(&planar);
    // Nonzero image required: a vanishing image direction can certify nothing.
    if star2.lo() <= 0.0 {
        return CellVerdict::Unknown;
    }
    if resid.lo() - margin * star2.hi() >= 0.0 {
        CellVerdict::Certified
    } else {
        CellVerdict::Unknown
    }
}

/// Runs an adaptive 1-D certification sweep over `dom`.
fn certify_over_1d<F>(cfg: &ConeCheckConfig, dom: Interval, cell: &F) -> bool
where
    F: Fn(&Interval) -> CellVerdict,
{
    let n = cfg.initial_cells_per_axis.max(1);
    let mut budget = cfg.max_cells;
    for i in 0..n {
        let seg = grid_cell(&dom, i, n);
        if !certify_segment(&seg, cell, cfg.max_depth, &mut budget) {
            return false;
        }
    }
    true
}

fn certify_segment<F>(seg: &Interval, cell: &F, depth_left: u32, budget: &mut usize) -> bool
where
    F: Fn(&Interval) -> CellVerdict,
{
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    match cell(seg) {
        CellVerdict::Certified | CellVerdict::Outside => true,
        CellVerdict::Unknown => {
            if depth_left == 0 {
                return false;
            }
            match seg.bisect() {
                None => false,
                Some((s0, s1)) => {
                    certify_segment(&s0, cell, depth_left - 1, budget)
                        && certify_segment(&s1, cell, depth_left - 1, budget)
                }
            }
        }
    }
}

/// Runs the adaptive 2-D certification sweep over `dom`. True iff every cell
/// refines to Certified or Outside within the depth and budget caps.
fn certify_over<F>(cfg: &ConeCheckConfig, dom: (Interval, Interval), cell: &F) -> bool
where
    F: Fn(&Interval, &Interval) -> CellVerdict,
{
    let n = cfg.initial_cells_per_axis.max(1);
    let mut budget = cfg.max_cells;
    let (da, db) = dom;
    for i in 0..n {
        for j in 0..n {
            let a = grid_cell(&da, i, n);
            let b = grid_cell(&db, j, n);
            if !certify_cell(&a, &b, cell, cfg.max_depth, &mut budget) {
                return false;
            }
        }
    }
    true
}

fn grid_cell(whole: &Interval, idx: usize, n: usize) -> Interval {
    let w = whole.width() / n as f64;
    let lo = whole.lo() + w * idx as f64;
    let hi = if idx + 1 == n {
        whole.hi()
    } else {
        whole.lo() + w * (idx + 1) as f64
    };
    Interval::new(lo, hi).expect("grid endpoints ordered")
}

fn certify_cell<F>(
    a: &Interval,
    b: &Interval,
    cell: &F,
    depth_left: u32,
    budget: &mut usize,
) -> bool
where
    F: Fn(&Interval, &Interval) -> CellVerdict,
{
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    match cell(a, b) {
        CellVerdict::Certified | CellVerdict::Outside => true,
        CellVerdict::Unknown => {
            if depth_left == 0 {
                return false;
            }
            let sa = a.bisect();
            let sb = b.bisect();
            match (sa, sb) {
                (None, None) => false,
                (Some((a0, a1)), None) => {
                    certify_cell(&a0, b, cell, depth_left - 1, budget)
                        && certify_cell(&a1, b, cell, depth_left - 1, budget)
                }
                (None, Some((b0, b1))) => {
                    certify_cell(a, &b0, cell, depth_left - 1, budget)
                        && certify_cell(a, &b1, cell, depth_left - 1, budget)
                }
                (Some((a0, a1)), Some((b0, b1))) => {
                    certify_cell(&a0, &b0, cell, depth_left - 1, budget)
                        && certify_cell(&a0, &b1, cell, depth_left - 1, budget)
                        && certify_cell(&a1, &b0, cell, depth_left - 1, budget)
                        && certify_cell(&a1, &b1, cell, depth_left - 1, budget)
                }
            }
        }
    }
}

/// Exact rational comparison helper for oracle tests: decides whether
/// `value` lies in `[lo, hi]` treating all three f64 inputs as exact
/// rationals. Exposed for reuse by downstream test suites.
pub fn rational_in_interval(value: (BigInt, BigInt), lo: f64, hi: f64) -> bool {
    let v = BigRational::new(value.0, value.1);
    rat(lo) <= v && v <= rat(hi)
}
