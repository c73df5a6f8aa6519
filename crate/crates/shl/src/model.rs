//! Finite models: a `2n`-dimensional Lie algebra given by the differentials
//! of its coframe, extended to every degree as an antiderivation.
//!
//! The model stands in for a closed manifold: all cohomology downstream is
//! computed on this finite complex. Construction validates `d о d = 0`
//! (the dual form of the Jacobi identity), so a `LieModel` value is always
//! a genuine cochain complex.

use crate::error::Error;
use crate::exterior::{multi_indices, space_dim, wedge, Form, MultiIndex};
use crate::linalg::Matrix;
use crate::rational::Rational;
use num_traits::Zero;

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct LieModel {
    dim2n: usize,
    /// `d e^m` for `m = 1..=2n`, each a 2-form.
    d_on_coframe: Vec<Form>,
    /// `d_mats[k]`: the matrix of `d` from `Lambda^k` to `Lambda^{k+1}`,
    /// for `k = 0..=2n` (the top block maps into a 0-dimensional space).
    d_mats: Vec<Matrix>,
}

/// First basis element whose second differential is nonzero, if any:
/// `(degree, basis index, d(d e^I))`.
pub fn d_squared_failure(dim2n: usize, d_on_coframe: &[Form]) -> Option<(usize, MultiIndex, Form)> {
    let mats: Vec<Matrix> = (0..=dim2n)
        .map(|k| differential_block(dim2n, d_on_coframe, k))
        .collect();
    for k in 0..dim2n {
        let square = mats[k + 1].mul(&mats[k]);
        if square.is_zero() {
            continue;
        }
        let table = multi_indices(dim2n, k).expect("degree in range");
        for (col, mi) in table.iter().enumerate() {
            let image = square.column(col);
            if image.iter().any(|c| !c.is_zero()) {
                let witness = Form::from_coords(dim2n, k + 2, image);
                return Some((k, mi.clone(), witness));
            }
        }
    }
    None
}

/// Antiderivation extension of the coframe differentials on degree `k`.
fn differential_block(dim2n: usize, d_on_coframe: &[Form], k: usize) -> Matrix {
    let source = multi_indices(dim2n, k).expect("degree in range");
    let mut out = Matrix::zeros(space_dim(dim2n, k as isize + 1), source.len());
    if k == dim2n {
        return out;
    }
    for (col, mi) in source.iter().enumerate() {
        // d(e^{i1..ik}) = sum_j (-1)^{j-1} d(e^{ij}) /\ e^{i1..^ij..ik};
        // the differentiated factor is a 2-form, so moving it to the front
        // is free of signs.
        let mut image = Form::zero(dim2n, k + 1);
        for (j, &idx) in mi.indices().iter().enumerate() {
            let rest: Vec<u8> = mi
                .indices()
                .iter()
                .copied()
                .filter(|&v| v != idx)
                .collect();
            let rest_form = Form::basis(dim2n, &MultiIndex::new(rest));
            let term = wedge(&d_on_coframe[idx as usize - 1], &rest_form)
                .expect("degree k+1 within range");
            image = if j % 2 == 0 {
                image.add(&term)
            } else {
                image.sub(&term)
            };
        }
        for (row, c) in image.coords().iter().enumerate() {
            if !c.is_zero() {
                out.set(row, col, c.clone());
            }
        }
    }
    out
}

impl LieModel {
    pub fn new(dim2n: usize, d_on_coframe: Vec<Form>) -> Result<Self, Error> {
        if dim2n % 2 != 0 || !(MIN_DIM..=MAX_DIM).contains(&dim2n) {
            return Err(Error::InvalidModel(format!(
                "dimension must be even and within {MIN_DIM}..={MAX_DIM}, got {dim2n}"
            )));
        }
        if d_on_coframe.len() != dim2n {
            return Err(Error::InvalidModel(format!(
                "expected {dim2n} coframe differentials, got {}",
                d_on_coframe.len()
            )));
        }
        for (m, f) in d_on_coframe.iter().enumerate() {
            if f.dim2n() != dim2n || f.degree() != 2 {
                return Err(Error::InvalidModel(format!(
                    "d e{} must be a 2-form over R^{dim2n}",
                    m + 1
                )));
            }
        }
        if let Some((degree, mi, witness)) = d_squared_failure(dim2n, &d_on_coframe) {
            return Err(Error::InvalidModel(format!(
                "d^2 != 0 (Jacobi identity fails): d(d {mi}) = {witness} at degree {degree}"
            )));
        }
        let d_mats = (0..=dim2n)
            .map(|k| differential_block(dim2n, &d_on_coframe, k))
            .collect();
        Ok(LieModel {
            dim2n,
            d_on_coframe,
            d_mats,
        })
    }

    /// The torus model: `d = 0`.
    pub fn torus(dim2n: usize) -> Self {
        let zeros = vec![Form::zero(dim2n, 2); dim2n];
        LieModel::new(dim2n, zeros).expect("zero differential always valid")
    }

    pub fn dim2n(&self) -> usize {
        self.dim2n
    }

    pub fn d_on_coframe(&self) -> &[Form] {
        &self.d_on_coframe
    }

    pub fn differential_matrix(&self, k: usize) -> Result<&Matrix, Error> {
        self.d_mats.get(k).ok_or(Error::DegreeOutOfRange {
            degree: k,
            dim2n: self.dim2n,
        })
    }

    pub fn d(&self, form: &Form) -> Form {
        let k = form.degree();
        if k == self.dim2n {
            // top-degree forms are closed; the block has a 0-dimensional target
            return Form::zero(self.dim2n, k);
        }
        let coords = self.d_mats[k].mul_vec(form.coords());
        Form::from_coords(self.dim2n, k + 1, coords)
    }

    pub fn is_torus(&self) -> bool {
        self.d_on_coframe.iter().all(Form::is_zero)
    }
}
