use nalgebra::DVector;

use crate::element::C64;
use crate::error::{Error, Result};

pub type CVec = DVector<C64>;

/// A linear subspace of `ℂ^d` held as an orthonormal basis.
///
/// Growth is decided by residual norms: a vector joins the basis when what is
/// left after projecting out the current span exceeds
/// `tolerance · max(1, ‖v‖)`.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<CVec>,
    tolerance: f64,
}

impl Subspace {
    pub fn new(ambient: usize, tolerance: f64) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            tolerance,
        }
    }

    pub fn spanned_by<'a>(
        ambient: usize,
        tolerance: f64,
        vectors: impl IntoIterator<Item = &'a CVec>,
    ) -> Result<Self> {
        let mut s = Subspace::new(ambient, tolerance);
        for v in vectors {
            s.push(v)?;
        }
        Ok(s)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CVec] {
        &self.basis
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    fn check(&self, v: &CVec) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::usage(format!(
                "vector of length {} in a subspace of ℂ^{}",
                v.len(),
                self.ambient
            )));
        }
        Ok(())
    }

    /// Component of `v` orthogonal to the span (two Gram-Schmidt passes).
    pub fn residual(&self, v: &CVec) -> Result<CVec> {
        self.check(v)?;
        let mut r = v.clone();
        for _ in 0..2 {
            for b in &self.basis {
                let proj = b.dotc(&r);
                r.axpy(-proj, b, C64::new(1.0, 0.0));
            }
        }
        Ok(r)
    }

    pub fn contains(&self, v: &CVec) -> Result<bool> {
        let r = self.residual(v)?;
        Ok(r.norm() <= self.tolerance * v.norm().max(1.0))
    }

    /// Adds one vector; returns whether the dimension grew.
    pub fn push(&mut self, v: &CVec) -> Result<bool> {
        let r = self.residual(v)?;
        let rn = r.norm();
        if rn > self.tolerance * v.norm().max(1.0) && self.basis.len() < self.ambient {
            self.basis.push(r.unscale(rn));
            Ok(true)
        } else {
            Ok(false)
        }
    }

    /// Sum of subspaces step: returns the extended subspace and whether it grew.
    pub fn extend<'a>(&self, vectors: impl IntoIterator<Item = &'a CVec>) -> Result<(Subspace, bool)> {
        let mut next = self.clone();
        let mut grew = false;
        for v in vectors {
            grew |= next.push(v)?;
        }
        Ok((next, grew))
    }

    /// Orthogonal projection onto the span.
    pub fn project(&self, v: &CVec) -> Result<CVec> {
        Ok(v - self.residual(v)?)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        for b in &other.basis {
            if !self.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Largest residual of either basis projected onto the other subspace;
    /// equals `sin` of the largest principal angle when the dimensions match
    /// and 1 when they differ.
    pub fn distance(&self, other: &Subspace) -> Result<f64> {
        if self.ambient != other.ambient {
            return Err(Error::usage("subspaces live in different ambient spaces"));
        }
        if self.dim() != other.dim() {
            return Ok(1.0);
        }
        let mut worst: f64 = 0.0;
        for b in &other.basis {
            worst = worst.max(self.residual(b)?.norm());
        }
        for b in &self.basis {
            worst = worst.max(other.residual(b)?.norm());
        }
        Ok(worst)
    }
}
