//! The sign-convention ledger.
//!
//! A handful of sign choices must be made jointly for the function theory to
//! close: the sign of the spatial sum inside the generalized Cauchy-Riemann
//! operator D, the sign inside the degree-one monomials zeta_j, whether the
//! Cauchy kernel numerator is conjugated, and which paravector realizes the
//! oriented surface element. Exactly two self-consistent assignments exist
//! (they are exchanged by the algebra automorphism e_j -> -e_j); the
//! workbench can run every suite under either one and the same theorems hold.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{embed_point, Multivector, Point};
use crate::error::Error;

/// One coherent set of sign choices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// D = d/dy0 + sum_j e_j d/dy_j, zeta_j = y0 e_j - y_j e0, conjugated
    /// kernel numerator, surface element nu dS. The workbench default.
    #[default]
    Ledger,
    /// D = d/dy0 - sum_j e_j d/dy_j, zeta_j = y0 e_j + y_j e0, plain kernel
    /// numerator, surface element conj(nu) dS.
    Printed,
}

impl Convention {
    /// Sign of the spatial sum in D = d/dy0 + sigma * sum_j e_j d/dy_j.
    pub fn sigma(self) -> f64 {
        match self {
            Convention::Ledger => 1.0,
            Convention::Printed => -1.0,
        }
    }

    /// Sign s in zeta_j = y0 e_j + s * y_j e0. Always -sigma: this is what
    /// makes D zeta_j = 0.
    pub fn zeta_sign(self) -> f64 {
        -self.sigma()
    }

    /// Kernel-position conjugation: the bar that appears over paravectors in
    /// the Cauchy and Bergman kernels under this convention.
    pub fn bar(self, v: &Multivector<f64>) -> Multivector<f64> {
        match self {
            Convention::Ledger => v.conjugate(),
            Convention::Printed => v.clone(),
        }
    }

    /// Complement of [`bar`](Self::bar): kernel positions printed without a
    /// bar. Under the flipped convention these acquire the conjugation.
    pub fn unbar(self, v: &Multivector<f64>) -> Multivector<f64> {
        match self {
            Convention::Ledger => v.clone(),
            Convention::Printed => v.conjugate(),
        }
    }

    /// The paravector realizing the oriented surface element for a unit
    /// outward normal nu, so that the divergence theorem reads
    /// integral_domain D f dV = integral_boundary (surface element) f dS.
    pub fn surface_element(self, normal: &Point) -> Multivector<f64> {
        let nu = embed_point(normal);
        match self {
            Convention::Ledger => nu,
            Convention::Printed => nu.conjugate(),
        }
    }

    /// One-line echo of the active signs, recorded in reports.
    pub fn describe(self) -> String {
        match self {
            Convention::Ledger => {
                "ledger: D = d0 + sum e_j d_j; zeta_j = y0 e_j - y_j e0; \
                 kernel numerator conjugated; surface element nu dS"
                    .to_string()
            }
            Convention::Printed => {
                "printed: D = d0 - sum e_j d_j; zeta_j = y0 e_j + y_j e0; \
                 kernel numerator plain; surface element conj(nu) dS"
                    .to_string()
            }
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Convention::Ledger => write!(f, "ledger"),
            Convention::Printed => write!(f, "printed"),
        }
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "ledger" => Ok(Convention::Ledger),
            "printed" => Ok(Convention::Printed),
            other => Err(Error::Parse {
                what: "convention",
                detail: format!("expected 'ledger' or 'printed', got '{other}'"),
            }),
        }
    }
}
