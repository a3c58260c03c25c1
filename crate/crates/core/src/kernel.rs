//! Preorders induced by a bivariate function on a finite set.
//!
//! Given `f: X × X → ℝ` on `X = {0, …, k-1}`, every `p ∈ X` contributes a
//! maximized objective `u_p(x) = f(x, p)` and a minimized objective
//! `v_p(y) = f(p, y)`. For a maximal element `m` and any `p`:
//!
//! * `f(m, p)` is the largest `f(y, p)` over `y ∈ U_m^(p̂;≥) ∩ V_m^(≤)`,
//! * `f(p, m)` is the smallest `f(p, y)` over `y ∈ U_m^(≥) ∩ V_m^(p̂;≤)`,
//!
//! where `U_m^(≥)` holds the `y` with `f(y, q) ≥ f(m, q)` for all `q`,
//! `V_m^(≤)` the `y` with `f(q, y) ≤ f(q, m)` for all `q`, and the hatted
//! variants drop the constraint at `q = p`.
//! [`KernelInstance::maximal_certify`] checks both equalities by enumeration.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::preorder::{DominanceVerdict, ScoreTable};

/// A dense `k × k` matrix with entry `[x][p] = f(x, p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelInstance {
    size: usize,
    values: Vec<f64>,
}

/// Evidence for one maximal element and one `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub p: usize,
    /// `max f(y, p)` over `U_m^(p̂;≥) ∩ V_m^(≤)`.
    pub attained_max: f64,
    /// `min f(p, y)` over `U_m^(≥) ∩ V_m^(p̂;≤)`.
    pub attained_min: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElementCertificates {
    pub element: usize,
    pub certificates: Vec<Certificate>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certification {
    pub maximal_indices: Vec<usize>,
    pub elements: Vec<ElementCertificates>,
}

impl KernelInstance {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::InvalidKernel("empty matrix".into()));
        }
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != size) {
            return Err(Error::InvalidKernel(format!("row {} has {} entries, expected {size}", i + 1, row.len())));
        }
        let values: Vec<f64> = rows.into_iter().flatten().collect();
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidKernel("non-finite entry".into()));
        }
        Ok(KernelInstance { size, values })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `f(x, p)`.
    pub fn get(&self, x: usize, p: usize) -> Result<f64> {
        for index in [x, p] {
            if index >= self.size {
                return Err(Error::IndexOutOfRange { index, len: self.size });
            }
        }
        Ok(self.f(x, p))
    }

    fn f(&self, x: usize, p: usize) -> f64 {
        self.values[x * self.size + p]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.size)
    }

    /// Objective vector of `x`: `f(x, ·)` (maximized) then `f(·, x)` (minimized).
    fn objective_vector(&self, x: usize) -> Vec<f64> {
        (0..self.size).map(|p| self.f(x, p)).chain((0..self.size).map(|p| self.f(p, x))).collect()
    }

    pub fn score_table(&self, epsilon: f64) -> Result<ScoreTable> {
        let rows = (0..self.size).map(|x| self.objective_vector(x)).collect();
        ScoreTable::new(self.size, rows, epsilon)
    }

    pub fn relate(&self, x: usize, y: usize, epsilon: f64) -> Result<DominanceVerdict> {
        for index in [x, y] {
            if index >= self.size {
                return Err(Error::IndexOutOfRange { index, len: self.size });
            }
        }
        Ok(self.score_table(epsilon)?.relate(x, y))
    }

    /// Finds every maximal element and certifies both extremal equalities
    /// for each of them and every `p`.
    pub fn maximal_certify(&self, epsilon: f64) -> Result<Certification> {
        let table = self.score_table(epsilon)?;
        let maximal_indices = table.maximal_set()?.maximal_indices;
        let elements =
            maximal_indices.par_iter().map(|&m| self.certify_element(m, epsilon)).collect::<Result<Vec<_>>>()?;
        Ok(Certification { maximal_indices, elements })
    }

    /// `y` with `f(y, q) ≥ f(m, q)` for all `q`, skipping `q = skip`.
    fn upper_set(&self, m: usize, skip: Option<usize>, eps: f64) -> Vec<usize> {
        (0..self.size)
            .filter(|&y| (0..self.size).filter(|&q| Some(q) != skip).all(|q| self.f(y, q) >= self.f(m, q) - eps))
            .collect()
    }

    /// `y` with `f(q, y) ≤ f(q, m)` for all `q`, skipping `q = skip`.
    fn lower_set(&self, m: usize, skip: Option<usize>, eps: f64) -> Vec<usize> {
        (0..self.size)
            .filter(|&y| (0..self.size).filter(|&q| Some(q) != skip).all(|q| self.f(q, y) <= self.f(q, m) + eps))
            .collect()
    }

    pub fn certify_element(&self, m: usize, epsilon: f64) -> Result<ElementCertificates> {
        let fail = |p: usize, detail: String| Error::CertificationFailed { element: m, p, detail };
        let subset = |a: &[usize], b: &[usize]| a.iter().all(|y| b.contains(y));

        let upper = self.upper_set(m, None, epsilon);
        let lower = self.lower_set(m, None, epsilon);
        let mut certificates = Vec::with_capacity(self.size);
        for p in 0..self.size {
            let upper_hat = self.upper_set(m, Some(p), epsilon);
            let lower_hat = self.lower_set(m, Some(p), epsilon);
            if !upper.contains(&m) || !subset(&upper, &upper_hat) {
                return Err(fail(p, "m ∉ U_m or U_m ⊄ U_m^(p̂)".into()));
            }
            if !lower.contains(&m) || !subset(&lower, &lower_hat) {
                return Err(fail(p, "m ∉ V_m or V_m ⊄ V_m^(p̂)".into()));
            }

            let attained_max =
                upper_hat.iter().filter(|y| lower.contains(y)).map(|&y| self.f(y, p)).fold(f64::NEG_INFINITY, f64::max);
            let attained_min =
                upper.iter().filter(|y| lower_hat.contains(y)).map(|&y| self.f(p, y)).fold(f64::INFINITY, f64::min);
            let own_max = self.f(m, p);
            let own_min = self.f(p, m);
            if (attained_max - own_max).abs() > epsilon {
                return Err(fail(p, format!("f(m,p) = {own_max} but the constrained maximum is {attained_max}")));
            }
            if (attained_min - own_min).abs() > epsilon {
                return Err(fail(p, format!("f(p,m) = {own_min} but the constrained minimum is {attained_min}")));
            }
            certificates.push(Certificate { p, attained_max, attained_min });
        }
        Ok(ElementCertificates { element: m, certificates })
    }
}
