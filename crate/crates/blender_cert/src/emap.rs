//! Working coordinates shared by every certification routine.
//!
//! All geometry runs in the coordinates where the map reads
//!
//!   (x, y, z) -> (y, mu + y^2 + kappa z^2 + eta y z, xi z + y).
//!
//! The conjugate form already has this shape (with eta = 0). A standard-form
//! map is brought to it by conjugating with the x/z swap, which keeps every
//! coefficient and turns the shear term eta*x*y into eta*y*z, so one set of
//! routines covers both forms for any admissible eta. The differential has
//! identically zero first column: tangent dynamics live in the (v, w) plane
//! and the u axis is the kernel.

use geom_core::{IBox3, Interval};
use henon_family::{Form, HenonParams};

use crate::error::Result;

#[derive(Debug, Clone, Copy)]
pub struct EffectiveMap {
    pub xi: f64,
    pub mu: f64,
    pub kappa: f64,
    pub eta: f64,
}

impl EffectiveMap {
    /// Swap-conjugates a standard-form map; accepts the conjugate form as is.
    pub fn new(params: &HenonParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            xi: params.xi,
            mu: params.mu,
            kappa: params.kappa,
            eta: params.eta,
        })
    }

    /// The certification box [-4,4] x [-4,4] x [-40,0].
    pub fn delta() -> IBox3 {
        IBox3::new(
            Interval::new(-4.0, 4.0).expect("static"),
            Interval::new(-4.0, 4.0).expect("static"),
            Interval::new(-40.0, 0.0).expect("static"),
        )
    }

    /// Middle image coordinate over a (y, z) cell.
    pub fn middle(&self, y: &Interval, z: &Interval) -> Interval {
        y.sqr()
            .add(&z.sqr().scale(self.kappa))
            .add(&y.mul(z).scale(self.eta))
            .shift(self.mu)
    }

    /// Image enclosure of a (y, z) cell. The source x never enters; the
    /// image x equals the source y.
    pub fn image(&self, y: &Interval, z: &Interval) -> [Interval; 3] {
        [*y, self.middle(y, z), z.scale(self.xi).add(y)]
    }

    pub fn image_box(&self, y: &Interval, z: &Interval) -> IBox3 {
        let [a, b, c] = self.image(y, z);
        IBox3::new(a, b, c)
    }

    /// Tight image enclosure of an exact point.
    pub fn image_point(&self, p: [f64; 3]) -> [Interval; 3] {
        self.image(&Interval::point(p[1]), &Interval::point(p[2]))
    }

    /// The (v, w) block of the differential over a (y, z) cell:
    /// rows (2y + eta z, 2 kappa z + eta y) and (1, xi).
    pub fn vw_block(&self, y: &Interval, z: &Interval) -> [[Interval; 2]; 2] {
        [
            [
                y.scale(2.0).add(&z.scale(self.eta)),
                z.scale(2.0 * self.kappa).add(&y.scale(self.eta)),
            ],
            [Interval::point(1.0), Interval::point(self.xi)],
        ]
    }

    /// Full differential over a (y, z) cell; the first column is zero and
    /// the first row is (0, 1, 0).
    pub fn jacobian(&self, y: &Interval, z: &Interval) -> [[Interval; 3]; 3] {
        let blk = self.vw_block(y, z);
        let o = Interval::point(0.0);
        let one = Interval::point(1.0);
        [
            [o, one, o],
            [o, blk[0][0], blk[0][1]],
            [o, blk[1][0], blk[1][1]],
        ]
    }

    /// Interval matrix-vector product of the differential at a (y, z) cell.
    pub fn push_tangent(&self, y: &Interval, z: &Interval, t: &[Interval; 3]) -> [Interval; 3] {
        let blk = self.vw_block(y, z);
        [
            t[1],
            blk[0][0].mul(&t[1]).add(&blk[0][1].mul(&t[2])),
            blk[1][0].mul(&t[1]).add(&blk[1][1].mul(&t[2])),
        ]
    }
}

/// Validated enclosure of the fixed point of the effective map with
/// y in (2.4, 3.8), shear included.
///
/// Eliminating z through y = (1 - xi) z reduces the fixed point equations to
/// a_eff * y^2 - y + mu = 0 with a_eff = 1 + kappa/(xi-1)^2 - eta/(xi-1).
/// For eta = 0 this is the same quadratic the family crate solves; the shear
/// correction matters once certification runs on perturbed standard-form
/// maps, where the uncorrected root would be off by O(eta).
pub fn effective_fixed_point(emap: &EffectiveMap) -> Result<FixedPoint> {
    if emap.xi == 1.0 {
        return Err(henon_family::FamilyError::XiIsOne.into());
    }
    let shift = Interval::point(emap.xi).shift(-1.0);
    let a = Interval::point(1.0)
        .add(&Interval::point(emap.kappa).div(&shift.sqr())?)
        .sub(&Interval::point(emap.eta).div(&shift)?);
    let mu = emap.mu;

    let sign = |y: f64| -> Option<i32> {
        let v = quad(&a, mu, &Interval::point(y));
        if v.hi() < 0.0 {
            Some(-1)
        } else if v.lo() > 0.0 {
            Some(1)
        } else {
            None
        }
    };
    let no_root = |detail: String| -> crate::error::CertError {
        henon_family::FamilyError::NoBlenderFixedPoint { detail }.into()
    };

    let (s_lo, s_hi) = match (sign(Y_LO), sign(Y_HI)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(no_root("endpoint sign not certifiable".into())),
    };
    if s_lo == s_hi {
        return Err(no_root(format!(
            "no sign change on ({Y_LO}, {Y_HI}) at mu={mu}, kappa={}, xi={}, eta={}",
            emap.kappa, emap.xi, emap.eta
        )));
    }

    let (mut lo, mut hi) = (Y_LO, Y_HI);
    let am = a.mid();
    for _ in 0..80 {
        let m = 0.5 * (lo + hi);
        let sm = sign(m).unwrap_or_else(|| if am * m * m - m + mu < 0.0 { -1 } else { 1 });
        if sm == s_lo {
            lo = m;
        } else {
            hi = m;
        }
        if hi - lo <= f64::EPSILON * hi.abs() {
            break;
        }
    }
    let guess = 0.5 * (lo + hi);

    let mut half = 1e-12;
    let mut certified: Option<Interval> = None;
    while half <= 1e-3 {
        let y = Interval::new(guess - half, guess + half).expect("ordered");
        if let Some(c) = newton_contract(&a, mu, &y) {
            certified = Some(c);
            break;
        }
        half *= 100.0;
    }
    let mut y_star =
        certified.ok_or_else(|| no_root(format!("interval Newton failed near y = {guess}")))?;
    for _ in 0..4 {
        match newton_contract(&a, mu, &y_star) {
            Some(next) if next.width() < y_star.width() => y_star = next,
            _ => break,
        }
    }
    if !(Y_LO < y_star.lo() && y_star.hi() < Y_HI) {
        return Err(no_root(format!("root enclosure {y_star} leaves ({Y_LO}, {Y_HI})")));
    }
    let z_star = y_star.neg().div(&shift)?;
    Ok(FixedPoint { y_star, z_star })
}

/// Fixed point of the effective map: (y*, y*, z*).
#[derive(Debug, Clone, Copy)]
pub struct FixedPoint {
    pub y_star: Interval,
    pub z_star: Interval,
}

const Y_LO: f64 = 2.4;
const Y_HI: f64 = 3.8;

fn quad(a: &Interval, mu: f64, y: &Interval) -> Interval {
    a.mul(&y.sqr()).sub(y).shift(mu)
}

fn newton_contract(a: &Interval, mu: f64, y: &Interval) -> Option<Interval> {
    let m = Interval::point(y.mid());
    let fm = quad(a, mu, &m);
    let fp = a.mul(&y.scale(2.0)).shift(-1.0);
    let n = m.sub(&fm.div(&fp).ok()?);
    if y.contains_interval_strict(&n) {
        n.intersect(y)
    } else {
        None
    }
}
