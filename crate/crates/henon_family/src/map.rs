use geom_core::{IBox3, Interval};

use crate::error::Result;
use crate::params::{Form, HenonParams};

/// Point image of the map.
///
/// When eta = 0 the shear term is skipped entirely rather than multiplied
/// out, so the standard form evaluates the middle coordinate with exactly
/// the same operation sequence as the conjugate form; the two forms then
/// agree bitwise under the x/z swap.
pub fn eval_map(params: &HenonParams, p: [f64; 3]) -> Result<[f64; 3]> {
    params.validate()?;
    let [x, y, z] = p;
    Ok(match params.form {
        Form::Standard => {
            let mut mid = params.mu + y * y + params.kappa * x * x;
            if params.eta != 0.0 {
                mid += params.eta * x * y;
            }
            [params.xi * x + y, mid, y]
        }
        Form::Conjugate => [y, params.mu + y * y + params.kappa * z * z, params.xi * z + y],
    })
}

/// Outer enclosure of the image of a box.
pub fn eval_map_box(params: &HenonParams, b: &IBox3) -> Result<IBox3> {
    params.validate()?;
    let xi = Interval::point(params.xi);
    let mu = Interval::point(params.mu);
    let kappa = Interval::point(params.kappa);
    Ok(match params.form {
        Form::Standard => {
            let mut mid = mu.add(&b.y.sqr()).add(&kappa.mul(&b.x.sqr()));
            if params.eta != 0.0 {
                let eta = Interval::point(params.eta);
                mid = mid.add(&eta.mul(&b.x).mul(&b.y));
            }
            IBox3::new(xi.mul(&b.x).add(&b.y), mid, b.y)
        }
        Form::Conjugate => IBox3::new(
            b.y,
            mu.add(&b.y.sqr()).add(&kappa.mul(&b.z.sqr())),
            xi.mul(&b.z).add(&b.y),
        ),
    })
}

/// Jacobian at a point, rows indexed by output coordinate.
pub fn eval_jacobian(params: &HenonParams, p: [f64; 3]) -> Result<[[f64; 3]; 3]> {
    params.validate()?;
    let [x, y, _z] = p;
    Ok(match params.form {
        Form::Standard => [
            [params.xi, 1.0, 0.0],
            [
                2.0 * params.kappa * x + params.eta * y,
                2.0 * y + params.eta * x,
                0.0,
            ],
            [0.0, 1.0, 0.0],
        ],
        Form::Conjugate => [
            [0.0, 1.0, 0.0],
            [0.0, 2.0 * y, 2.0 * params.kappa * p[2]],
            [0.0, 1.0, params.xi],
        ],
    })
}

/// Entrywise Jacobian enclosure over a box.
pub fn eval_jacobian_box(params: &HenonParams, b: &IBox3) -> Result<[[Interval; 3]; 3]> {
    params.validate()?;
    let pt = Interval::point;
    let zero = pt(0.0);
    let one = pt(1.0);
    Ok(match params.form {
        Form::Standard => [
            [pt(params.xi), one, zero],
            [
                b.x.scale(2.0 * params.kappa).add(&b.y.scale(params.eta)),
                b.y.scale(2.0).add(&b.x.scale(params.eta)),
                zero,
            ],
            [zero, one, zero],
        ],
        Form::Conjugate => [
            [zero, one, zero],
            [zero, b.y.scale(2.0), b.z.scale(2.0 * params.kappa)],
            [zero, one, pt(params.xi)],
        ],
    })
}

/// Matrix-vector product for the point Jacobian.
pub fn apply_matrix(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (row, o) in m.iter().zip(out.iter_mut()) {
        *o = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
    }
    out
}
