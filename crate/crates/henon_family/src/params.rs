use geom_core::{IBox3, Interval};

use crate::error::{FamilyError, Result};

/// Which of the two quadratic forms the map takes.
///
/// `Standard` is (x,y,z) -> (xi*x + y, mu + y^2 + kappa*x^2 + eta*x*y, y).
/// `Conjugate` is (x,y,z) -> (y, mu + y^2 + kappa*z^2, xi*z + y); it is the
/// standard form with eta = 0 seen through the x/z swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Standard,
    Conjugate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HenonParams {
    pub xi: f64,
    pub mu: f64,
    pub kappa: f64,
    pub eta: f64,
    pub form: Form,
}

impl HenonParams {
    pub fn standard(xi: f64, mu: f64, kappa: f64, eta: f64) -> Self {
        Self {
            xi,
            mu,
            kappa,
            eta,
            form: Form::Standard,
        }
    }

    /// The swapped form carries no shear term, so eta is fixed at zero.
    pub fn conjugate(mu: f64, kappa: f64, xi: f64) -> Self {
        Self {
            xi,
            mu,
            kappa,
            eta: 0.0,
            form: Form::Conjugate,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.form == Form::Conjugate && self.eta != 0.0 {
            return Err(FamilyError::ConjugateWithShear { eta: self.eta });
        }
        Ok(())
    }

    /// Same parameter values in the other form (only valid when eta = 0).
    pub fn swapped_form(&self) -> Result<Self> {
        if self.eta != 0.0 {
            return Err(FamilyError::ConjugateWithShear { eta: self.eta });
        }
        Ok(Self {
            form: match self.form {
                Form::Standard => Form::Conjugate,
                Form::Conjugate => Form::Standard,
            },
            ..*self
        })
    }
}

/// The parameter box and phase box on which certification runs.
#[derive(Debug, Clone)]
pub struct BlenderBoxSpec {
    pub mu: Interval,
    pub kappa: Interval,
    pub xi: Interval,
    /// Half-width of the admitted shear range around eta = 0. Not pinned by
    /// the source material; 1e-3 comfortably covers the eta = 5e-4
    /// robustness probe while staying far below the quadratic coefficients.
    pub eta_half_width: f64,
    pub delta: IBox3,
}

impl Default for BlenderBoxSpec {
    fn default() -> Self {
        Self {
            mu: Interval::new(-10.0, -9.0).unwrap(),
            kappa: Interval::new(0.0, 1e-4).unwrap(),
            xi: Interval::new(1.18, 1.19).unwrap(),
            eta_half_width: 1e-3,
            delta: IBox3::new(
                Interval::new(-4.0, 4.0).unwrap(),
                Interval::new(-4.0, 4.0).unwrap(),
                Interval::new(-40.0, 0.0).unwrap(),
            ),
        }
    }
}

impl BlenderBoxSpec {
    /// Membership in the open parameter box. Boundary values such as
    /// kappa = 0 are accepted by the evaluators but are not inside.
    pub fn contains_params(&self, p: &HenonParams) -> bool {
        self.mu.lo() < p.mu
            && p.mu < self.mu.hi()
            && self.kappa.lo() < p.kappa
            && p.kappa < self.kappa.hi()
            && self.xi.lo() < p.xi
            && p.xi < self.xi.hi()
            && p.eta.abs() < self.eta_half_width
    }
}
