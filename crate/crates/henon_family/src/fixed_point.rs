use geom_core::Interval;

use crate::error::{FamilyError, Result};
use crate::params::HenonParams;

/// Validated enclosure of the distinguished fixed point.
///
/// The point satisfies x = y = mu + y^2 + kappa*z^2 and y = (1 - xi)z, so
/// the x and y enclosures coincide and z is determined by y.
#[derive(Debug, Clone, Copy)]
pub struct FixedPointEnclosure {
    pub x_star: Interval,
    pub y_star: Interval,
    pub z_star: Interval,
}

impl FixedPointEnclosure {
    pub fn point(&self) -> [f64; 3] {
        [self.x_star.mid(), self.y_star.mid(), self.z_star.mid()]
    }
}

/// Search window for the y-coordinate of the fixed point.
const Y_LO: f64 = 2.4;
const Y_HI: f64 = 3.8;

/// Coefficient of y^2 after eliminating z: a = 1 + kappa/(xi-1)^2.
fn quad_coeff(params: &HenonParams) -> Result<Interval> {
    if params.xi == 1.0 {
        return Err(FamilyError::XiIsOne);
    }
    let shift = Interval::point(params.xi).shift(-1.0);
    let ratio = Interval::point(params.kappa).div(&shift.sqr())?;
    Ok(Interval::point(1.0).add(&ratio))
}

fn f_interval(a: &Interval, mu: f64, y: &Interval) -> Interval {
    a.mul(&y.sqr()).sub(y).shift(mu)
}

fn fprime_interval(a: &Interval, y: &Interval) -> Interval {
    a.mul(&y.scale(2.0)).shift(-1.0)
}

/// Certified sign of f at a point; None when the enclosure straddles zero.
fn certified_sign(a: &Interval, mu: f64, y: f64) -> Option<i32> {
    let v = f_interval(a, mu, &Interval::point(y));
    if v.hi() < 0.0 {
        Some(-1)
    } else if v.lo() > 0.0 {
        Some(1)
    } else {
        None
    }
}

/// Locate the fixed point with y in (2.4, 3.8).
///
/// Bisection brings a floating guess near the root of
/// a*y^2 - y + mu = 0; an interval Newton contraction then certifies
/// existence and uniqueness inside the returned enclosure.
pub fn fixed_point_pstar(params: &HenonParams) -> Result<FixedPointEnclosure> {
    params.validate()?;
    let a = quad_coeff(params)?;
    let mu = params.mu;

    let s_lo = certified_sign(&a, mu, Y_LO).ok_or_else(|| FamilyError::NoBlenderFixedPoint {
        detail: format!("sign of the fixed point equation at y = {Y_LO} is not certifiable"),
    })?;
    let s_hi = certified_sign(&a, mu, Y_HI).ok_or_else(|| FamilyError::NoBlenderFixedPoint {
        detail: format!("sign of the fixed point equation at y = {Y_HI} is not certifiable"),
    })?;
    if s_lo == s_hi {
        return Err(FamilyError::NoBlenderFixedPoint {
            detail: format!(
                "no sign change of the fixed point equation on ({Y_LO}, {Y_HI}) \
                 at mu={mu}, kappa={}, xi={}",
                params.kappa, params.xi
            ),
        });
    }

    // Plain bisection; sign queries that cannot be certified fall back to
    // the midpoint value, which is fine for steering a guess.
    let (mut lo, mut hi) = (Y_LO, Y_HI);
    let am = a.mid();
    for _ in 0..80 {
        let m = 0.5 * (lo + hi);
        let fm = certified_sign(&a, mu, m)
            .unwrap_or_else(|| if am * m * m - m + mu < 0.0 { -1 } else { 1 });
        if fm == s_lo {
            lo = m;
        } else {
            hi = m;
        }
        if hi - lo <= f64::EPSILON * hi.abs() {
            break;
        }
    }
    let guess = 0.5 * (lo + hi);

    // Interval Newton: N(Y) = m - f(m)/f'(Y). Contraction N(Y) inside Y
    // proves a unique root in Y. Start tight and widen if needed.
    let mut half_width = 1e-12;
    let mut certified: Option<Interval> = None;
    while half_width <= 1e-3 {
        let y = Interval::new(guess - half_width, guess + half_width).unwrap();
        if let Some(contracted) = newton_contract(&a, mu, &y) {
            certified = Some(contracted);
            break;
        }
        half_width *= 100.0;
    }
    let mut y_star = certified.ok_or_else(|| FamilyError::NoBlenderFixedPoint {
        detail: format!("interval Newton failed to contract near y = {guess}"),
    })?;

    // A few extra Newton passes sharpen the enclosure to near f64 width.
    for _ in 0..4 {
        match newton_contract(&a, mu, &y_star) {
            Some(next) if next.width() < y_star.width() => y_star = next,
            _ => break,
        }
    }

    if !(Y_LO < y_star.lo() && y_star.hi() < Y_HI) {
        return Err(FamilyError::NoBlenderFixedPoint {
            detail: format!("certified root enclosure {y_star} leaves ({Y_LO}, {Y_HI})"),
        });
    }

    let shift = Interval::point(params.xi).shift(-1.0);
    let z_star = y_star.neg().div(&shift)?;
    Ok(FixedPointEnclosure {
        x_star: y_star,
        y_star,
        z_star,
    })
}

/// One interval Newton step; Some(contracted) only when the step lands
/// strictly inside the input, which certifies the root.
fn newton_contract(a: &Interval, mu: f64, y: &Interval) -> Option<Interval> {
    let m = Interval::point(y.mid());
    let fm = f_interval(a, mu, &m);
    let fp = fprime_interval(a, y);
    let step = fm.div(&fp).ok()?;
    let n = m.sub(&step);
    if y.contains_interval_strict(&n) {
        n.intersect(y)
    } else {
        None
    }
}
