use crate::error::{FamilyError, Result};

/// Coefficients of the linear rescaling conjugacy. All four must be nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaCoeffs {
    pub a2: f64,
    pub b2: f64,
    pub c2: f64,
    pub beta2: f64,
}

impl ThetaCoeffs {
    pub const UNIT: Self = Self {
        a2: 1.0,
        b2: 1.0,
        c2: 1.0,
        beta2: 1.0,
    };

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("a2", self.a2),
            ("b2", self.b2),
            ("c2", self.c2),
            ("beta2", self.beta2),
        ] {
            if v == 0.0 {
                return Err(FamilyError::ZeroCoefficient { name });
            }
        }
        Ok(())
    }

    /// Scale factor applied to the parameter coordinate.
    pub fn mu_scale(&self) -> f64 {
        self.beta2 * self.beta2 * self.b2
    }
}

/// The two coordinate changes used around the quadratic family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Conjugacy {
    /// Swap x and z; an involution.
    ThetaTilde,
    /// Diagonal rescaling (x, y, z) -> (beta2*b2/a2 x, beta2^2*b2 y, beta2*b2/c2 z),
    /// with the parameter rescaled by beta2^2*b2.
    Theta(ThetaCoeffs),
}

impl Conjugacy {
    pub fn apply(&self, p: [f64; 3]) -> Result<[f64; 3]> {
        match self {
            Conjugacy::ThetaTilde => Ok([p[2], p[1], p[0]]),
            Conjugacy::Theta(c) => {
                c.validate()?;
                Ok([
                    c.beta2 / c.a2 * c.b2 * p[0],
                    c.beta2 * c.beta2 * c.b2 * p[1],
                    c.beta2 / c.c2 * c.b2 * p[2],
                ])
            }
        }
    }

    /// Apply to a point together with the parameter it carries.
    /// The swap leaves the parameter alone.
    pub fn apply_with_mu(&self, p: [f64; 3], mu: f64) -> Result<([f64; 3], f64)> {
        let q = self.apply(p)?;
        let m = match self {
            Conjugacy::ThetaTilde => mu,
            Conjugacy::Theta(c) => c.mu_scale() * mu,
        };
        Ok((q, m))
    }
}
