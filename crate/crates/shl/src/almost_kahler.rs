//! Compatible triples `(omega, J, g)` and the derived metric machinery:
//! Gram matrices on each `Lambda^k`, the Hodge star, the Lefschetz operators
//! `L` and `Lambda`, primitive subspaces, the `J`-involution on 2-forms and,
//! in dimension 4, the self-dual / anti-self-dual split.
//!
//! Conventions fixed here:
//! * the volume form is `omega^n / n!`, which for a compatible triple is the
//!   Riemannian volume of `g` (this pins the orientation);
//! * `J` acts on frame vectors by its matrix columns, and when omitted is
//!   derived from `g(.,.) = omega(., J.)` as `J = Omega^{-1} G`;
//! * the star is defined by `alpha /\ *beta = <alpha, beta> vol`.

use crate::error::Error;
use crate::exterior::{
    basis_position, complement_sign, multi_indices, omega_power, space_dim, wedge_matrix, Form,
    MultiIndex,
};
use crate::linalg::{Matrix, Subspace};
use crate::model::LieModel;
use crate::operators::{GradedOperator, OperatorSet};
use crate::rational::{rat_int, zero, Rational};
use num_traits::Zero;
use std::sync::OnceLock;

/// The `J`-invariant / anti-invariant decomposition of 2-forms, plus the
/// metric (self-dual) decomposition when the dimension is 4.
#[derive(Debug, Clone)]
pub struct TwoFormSplit {
    pub plus_j: Subspace,
    pub minus_j: Subspace,
    pub plus_g: Option<Subspace>,
    pub minus_g: Option<Subspace>,
}

pub struct AkStructure {
    model: LieModel,
    omega: Form,
    j_frame: Matrix,
    g_frame: Matrix,
    gram: Vec<Matrix>,
    gram_inv: Vec<Matrix>,
    star: Vec<Matrix>,
    star_inv: Vec<Matrix>,
    vol: Form,
    j_on_forms: Vec<Matrix>,
    d_op: GradedOperator,
    l_op: GradedOperator,
    lambda_op: GradedOperator,
    split: TwoFormSplit,
    operators: OnceLock<OperatorSet>,
}

impl std::fmt::Debug for AkStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AkStructure")
            .field("dim2n", &self.dim2n())
            .field("omega", &format!("{}", self.omega))
            .finish()
    }
}

/// `Omega[i][j] = omega(e_i, e_j)` over the frame.
fn omega_matrix(omega: &Form) -> Matrix {
    let dim2n = omega.dim2n();
    let mut m = Matrix::zeros(dim2n, dim2n);
    for i in 1..=dim2n {
        for j in (i + 1)..=dim2n {
            let pos = basis_position(dim2n, &MultiIndex::new(vec![i as u8, j as u8]));
            let c = omega.coord(pos).clone();
            m.set(i - 1, j - 1, c.clone());
            m.set(j - 1, i - 1, -c);
        }
    }
    m
}

/// `k`-th compound matrix: entry `(I, J)` is the minor `det a[I_r][J_c]`.
/// Applied to the dual metric it yields the Gram matrix of `Lambda^k`.
fn compound(a: &Matrix, dim2n: usize, k: usize) -> Matrix {
    let table = multi_indices(dim2n, k).expect("degree in range");
    Matrix::from_fn(table.len(), table.len(), |ri, ci| {
        let rows = table[ri].indices();
        let cols = table[ci].indices();
        let minor = Matrix::from_fn(k, k, |r, c| {
            a.get(rows[r] as usize - 1, cols[c] as usize - 1).clone()
        });
        minor.determinant()
    })
}

/// Pullback of `k`-forms along `J`: `alpha -> alpha(J., ..., J.)`.
fn pullback_matrix(j_frame: &Matrix, dim2n: usize, k: usize) -> Matrix {
    let table = multi_indices(dim2n, k).expect("degree in range");
    let mut out = Matrix::zeros(table.len(), table.len());
    for (col, mi) in table.iter().enumerate() {
        // J* e^i is the i-th row of the frame matrix read as a covector
        let mut acc = Form::one(dim2n);
        for &i in mi.indices() {
            let covector = Form::from_coords(dim2n, 1, j_frame.row(i as usize - 1));
            acc = crate::exterior::wedge(&acc, &covector).expect("degree within range");
        }
        for (row, c) in acc.coords().iter().enumerate() {
            if !c.is_zero() {
                out.set(row, col, c.clone());
            }
        }
    }
    out
}

impl AkStructure {
    /// Validates the triple exactly and precomputes the derived matrices for
    /// every degree. Each failure mode maps to a distinct error.
    pub fn build(
        model: LieModel,
        omega: Form,
        j_frame: Option<Matrix>,
        g_frame: Matrix,
    ) -> Result<Self, Error> {
        let dim2n = model.dim2n();
        let n = dim2n / 2;
        if omega.dim2n() != dim2n || omega.degree() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "omega must be a 2-form over R^{dim2n}"
            )));
        }
        if !model.d(&omega).is_zero() {
            return Err(Error::OmegaNotClosed);
        }
        if g_frame.rows() != dim2n || g_frame.cols() != dim2n {
            return Err(Error::NotSquare);
        }
        if !g_frame.is_positive_definite()? {
            return Err(Error::MetricNotPositiveDefinite);
        }

        let vol = omega_power(&omega, n).expect("omega^n within top degree");
        if vol.is_zero() {
            return Err(Error::OmegaDegenerate);
        }
        let omega_mat = omega_matrix(&omega);

        let j_frame = match j_frame {
            Some(j) => j,
            None => {
                let omega_inv = omega_mat.inverse().ok_or(Error::OmegaDegenerate)?;
                omega_inv.mul(&g_frame)
            }
        };
        if j_frame.rows() != dim2n || j_frame.cols() != dim2n {
            return Err(Error::DimensionMismatch(format!(
                "J must be a {dim2n}x{dim2n} matrix"
            )));
        }
        if !j_frame.mul(&j_frame).add(&Matrix::identity(dim2n)).is_zero() {
            return Err(Error::JSquareNotMinusIdentity);
        }
        let pulled_back = j_frame.transpose().mul(&omega_mat).mul(&j_frame);
        if !pulled_back.sub(&omega_mat).is_zero() {
            return Err(Error::JNotCompatible);
        }
        if !omega_mat.mul(&j_frame).sub(&g_frame).is_zero() {
            return Err(Error::MetricMismatch);
        }

        let dual_gram = g_frame
            .inverse()
            .expect("positive definite matrices are invertible");
        let gram: Vec<Matrix> = (0..=dim2n).map(|k| compound(&dual_gram, dim2n, k)).collect();
        let gram_inv: Vec<Matrix> = (0..=dim2n).map(|k| compound(&g_frame, dim2n, k)).collect();
        for k in 0..=dim2n {
            assert!(
                gram[k].mul(&gram_inv[k]) == Matrix::identity(gram[k].rows()),
                "compound Gram inverse failed at degree {k}"
            );
        }

        // star[k] entry: *e^J = sum_I v sign(I, I^c) <e^I, e^J> e^{I^c}
        let top_coeff = vol.coord(0).clone();
        let star: Vec<Matrix> = (0..=dim2n)
            .map(|k| {
                let table = multi_indices(dim2n, k).expect("degree in range");
                let mut s = Matrix::zeros(space_dim(dim2n, (dim2n - k) as isize), table.len());
                for (col, _) in table.iter().enumerate() {
                    for (i, mi) in table.iter().enumerate() {
                        let g = gram[k].get(i, col);
                        if g.is_zero() {
                            continue;
                        }
                        let sign = complement_sign(dim2n, mi);
                        let row = basis_position(dim2n, &mi.complement(dim2n));
                        let value = &top_coeff * g;
                        s.set(row, col, if sign > 0 { value } else { -value });
                    }
                }
                s
            })
            .collect();
        let star_inv: Vec<Matrix> = (0..=dim2n)
            .map(|k| {
                let inv = &star[dim2n - k];
                if k % 2 == 0 {
                    inv.clone()
                } else {
                    inv.neg()
                }
            })
            .collect();
        for k in 0..=dim2n {
            assert!(
                star_inv[k].mul(&star[k]) == Matrix::identity(star[k].cols()),
                "star involution failed at degree {k}: ** != (-1)^k"
            );
        }

        // <omega, omega> = n, the paper's normalization convention
        let omega_norm = {
            let tmp = gram[2].mul_vec(omega.coords());
            omega
                .coords()
                .iter()
                .zip(&tmp)
                .fold(zero(), |acc, (a, b)| acc + a * b)
        };
        assert!(
            omega_norm == rat_int(n as i64),
            "<omega, omega> = {omega_norm}, expected n = {n}"
        );

        let j_on_forms: Vec<Matrix> = (0..=dim2n)
            .map(|k| pullback_matrix(&j_frame, dim2n, k))
            .collect();
        // the 2-form action is an involutive Gram isometry
        let j2 = &j_on_forms[2];
        assert!(
            j2.mul(j2) == Matrix::identity(j2.rows()),
            "J-involution on 2-forms does not square to the identity"
        );
        assert!(
            j2.transpose().mul(&gram[2]).mul(j2) == gram[2],
            "J-involution is not a Gram isometry on 2-forms"
        );

        let d_op = GradedOperator::new(
            dim2n,
            1,
            (0..=dim2n)
                .map(|k| model.differential_matrix(k).expect("in range").clone())
                .collect(),
        );
        let l_op = GradedOperator::new(
            dim2n,
            2,
            (0..=dim2n)
                .map(|k| {
                    if k + 2 <= dim2n {
                        wedge_matrix(&omega, k).expect("within top degree")
                    } else {
                        Matrix::zeros(0, space_dim(dim2n, k as isize))
                    }
                })
                .collect(),
        );
        let lambda_op = GradedOperator::new(
            dim2n,
            -2,
            (0..=dim2n)
                .map(|k| {
                    if k >= 2 {
                        star_inv[k - 2].mul(l_op.block(dim2n - k)).mul(&star[k])
                    } else {
                        Matrix::zeros(0, space_dim(dim2n, k as isize))
                    }
                })
                .collect(),
        );

        let split = {
            let dim2 = space_dim(dim2n, 2);
            let id = Matrix::identity(dim2);
            let plus_j = j2.sub(&id).kernel();
            let minus_j = j2.add(&id).kernel();
            assert_eq!(plus_j.dim(), n * n, "dim of J-invariant 2-forms");
            assert_eq!(minus_j.dim(), n * n - n, "dim of J-anti-invariant 2-forms");
            // anti-invariant 2-forms are primitive (asserted, not assumed)
            for v in minus_j.basis_vectors() {
                assert!(
                    lambda_op.block(2).mul_vec(&v).iter().all(Rational::is_zero),
                    "J-anti-invariant 2-form with nonzero Lefschetz trace"
                );
            }
            let (plus_g, minus_g) = if dim2n == 4 {
                let plus = star[2].sub(&id).kernel();
                let minus = star[2].add(&id).kernel();
                assert_eq!((plus.dim(), minus.dim()), (3, 3), "self-dual split dims");
                assert!(
                    minus_j.is_subspace_of(&plus),
                    "J-anti-invariant forms must be self-dual in dimension 4"
                );
                (Some(plus), Some(minus))
            } else {
                (None, None)
            };
            TwoFormSplit {
                plus_j,
                minus_j,
                plus_g,
                minus_g,
            }
        };

        Ok(AkStructure {
            model,
            omega,
            j_frame,
            g_frame,
            gram,
            gram_inv,
            star,
            star_inv,
            vol,
            j_on_forms,
            d_op,
            l_op,
            lambda_op,
            split,
            operators: OnceLock::new(),
        })
    }

    pub fn from_spec(spec: &crate::parse::ManifoldSpec) -> Result<Self, Error> {
        let model = spec.build_model()?;
        AkStructure::build(
            model,
            spec.omega.clone(),
            spec.j_frame.clone(),
            spec.metric_matrix(),
        )
    }

    pub fn dim2n(&self) -> usize {
        self.model.dim2n()
    }

    /// Half the dimension; `omega^n` is the volume scale.
    pub fn half_dim(&self) -> usize {
        self.dim2n() / 2
    }

    pub fn model(&self) -> &LieModel {
        &self.model
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn volume_form(&self) -> &Form {
        &self.vol
    }

    pub fn j_frame(&self) -> &Matrix {
        &self.j_frame
    }

    pub fn g_frame(&self) -> &Matrix {
        &self.g_frame
    }

    pub fn gram(&self, k: usize) -> &Matrix {
        &self.gram[k]
    }

    pub fn gram_inv(&self, k: usize) -> &Matrix {
        &self.gram_inv[k]
    }

    pub fn hodge_star(&self, k: usize) -> Result<&Matrix, Error> {
        self.star.get(k).ok_or(Error::DegreeOutOfRange {
            degree: k,
            dim2n: self.dim2n(),
        })
    }

    pub fn star_inverse(&self, k: usize) -> &Matrix {
        &self.star_inv[k]
    }

    /// Pullback of `k`-forms along `J`.
    pub fn j_pullback(&self, k: usize) -> &Matrix {
        &self.j_on_forms[k]
    }

    pub fn exterior_d(&self) -> &GradedOperator {
        &self.d_op
    }

    pub fn lefschetz_l(&self) -> &GradedOperator {
        &self.l_op
    }

    pub fn lefschetz_lambda(&self) -> &GradedOperator {
        &self.lambda_op
    }

    pub fn two_form_split(&self) -> &TwoFormSplit {
        &self.split
    }

    pub fn sd_asd_split(&self) -> Result<(&Subspace, &Subspace), Error> {
        match (&self.split.plus_g, &self.split.minus_g) {
            (Some(p), Some(m)) => Ok((p, m)),
            _ => Err(Error::RequiresDimensionFour(self.dim2n())),
        }
    }

    /// Cached lambda-independent operator assembly (`d`, `d^L`, adjoints,
    /// `dd^L`, the Riemannian Laplacian).
    pub fn operators(&self) -> &OperatorSet {
        self.operators.get_or_init(|| OperatorSet::assemble(self))
    }

    pub fn inner(&self, a: &Form, b: &Form) -> Rational {
        assert_eq!(a.degree(), b.degree(), "inner product degree mismatch");
        let tmp = self.gram[a.degree()].mul_vec(b.coords());
        a.coords()
            .iter()
            .zip(&tmp)
            .fold(zero(), |acc, (x, y)| acc + x * y)
    }

    /// `P^k = ker Lambda` on degree `k`; zero above the middle degree.
    pub fn primitive_subspace(&self, k: usize) -> Result<Subspace, Error> {
        if k > self.dim2n() {
            return Err(Error::DegreeOutOfRange {
                degree: k,
                dim2n: self.dim2n(),
            });
        }
        Ok(self.lambda_op.block(k).kernel())
    }

    /// Unique decomposition `a = sum_r L^r p_r` with `p_r` primitive of
    /// degree `k - 2r`. Returned entries are `(r, p_r)` for every `r` in
    /// range, including zero components.
    pub fn lefschetz_decomposition(&self, a: &Form) -> Vec<(usize, Form)> {
        let k = a.degree();
        let dim2n = self.dim2n();
        let mut primitive_bases: Vec<(usize, Subspace)> = Vec::new();
        let mut columns: Vec<Vec<Rational>> = Vec::new();
        for r in 0..=(k / 2) {
            let source = k - 2 * r;
            let prim = self.primitive_subspace(source).expect("degree in range");
            // matrix of L^r from Lambda^{k-2r} into Lambda^k
            let mut power = Matrix::identity(space_dim(dim2n, source as isize));
            for step in 0..r {
                power = self.l_op.block(source + 2 * step).mul(&power);
            }
            for v in prim.basis_vectors() {
                columns.push(power.mul_vec(&v));
            }
            primitive_bases.push((r, prim));
        }
        let system = Matrix::from_columns(space_dim(dim2n, k as isize), &columns);
        let solution = system
            .solve(a.coords())
            .expect("Lefschetz decomposition always exists");
        let mut out = Vec::new();
        let mut offset = 0;
        for (r, prim) in primitive_bases {
            let mut part = Form::zero(dim2n, k - 2 * r);
            for v in prim.basis_vectors() {
                let coeff = &solution[offset];
                if !coeff.is_zero() {
                    part = part.add(&Form::from_coords(dim2n, k - 2 * r, v).scale(coeff));
                }
                offset += 1;
            }
            out.push((r, part));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{one, rat, rat_int};

    fn e(dim2n: usize, indices: &[u8]) -> Form {
        Form::from_terms(dim2n, indices.len(), &[(one(), indices.to_vec())])
    }

    fn torus4() -> AkStructure {
        let omega = e(4, &[1, 2]).add(&e(4, &[3, 4]));
        AkStructure::build(LieModel::torus(4), omega, None, Matrix::identity(4)).unwrap()
    }

    fn kt() -> AkStructure {
        let mut d = vec![Form::zero(4, 2); 4];
        d[3] = e(4, &[1, 2]);
        let model = LieModel::new(4, d).unwrap();
        let omega = e(4, &[1, 4]).add(&e(4, &[2, 3]));
        AkStructure::build(model, omega, None, Matrix::identity(4)).unwrap()
    }

    #[test]
    fn torus_with_standard_j_is_valid() {
        let omega = e(4, &[1, 2]).add(&e(4, &[3, 4]));
        // J e1 = e2, J e2 = -e1, J e3 = e4, J e4 = -e3 (columns are images)
        let mut j = Matrix::zeros(4, 4);
        j.set(1, 0, rat_int(1));
        j.set(0, 1, rat_int(-1));
        j.set(3, 2, rat_int(1));
        j.set(2, 3, rat_int(-1));
        let ak =
            AkStructure::build(LieModel::torus(4), omega, Some(j.clone()), Matrix::identity(4))
                .unwrap();
        assert_eq!(ak.j_frame(), &j);
        // derived J agrees with the explicit one
        assert_eq!(torus4().j_frame(), &j);
    }

    #[test]
    fn kt_derived_j() {
        let ak = kt();
        // J e1 = e4, J e2 = e3
        assert_eq!(ak.j_frame().column(0), vec![rat_int(0), rat_int(0), rat_int(0), rat_int(1)]);
        assert_eq!(ak.j_frame().column(1), vec![rat_int(0), rat_int(0), rat_int(1), rat_int(0)]);
    }

    #[test]
    fn kt_rejects_non_closed_omega() {
        let mut d = vec![Form::zero(4, 2); 4];
        d[3] = e(4, &[1, 2]);
        let model = LieModel::new(4, d).unwrap();
        let omega = e(4, &[1, 2]).add(&e(4, &[3, 4]));
        // d(e34) = -e123, so this omega is not closed on the KT model
        let err = AkStructure::build(model, omega, None, Matrix::identity(4)).unwrap_err();
        assert!(matches!(err, Error::OmegaNotClosed));
    }

    #[test]
    fn rejects_degenerate_omega() {
        let err = AkStructure::build(
            LieModel::torus(4),
            e(4, &[1, 2]),
            None,
            Matrix::identity(4),
        )
        .unwrap_err();
        assert!(matches!(err, Error::OmegaDegenerate));
    }

    #[test]
    fn rejects_incompatible_metric() {
        // scaling the metric breaks J^2 = -I for the derived J
        let omega = e(4, &[1, 2]).add(&e(4, &[3, 4]));
        let g = Matrix::identity(4).scale(&rat_int(2));
        let err = AkStructure::build(LieModel::torus(4), omega, None, g).unwrap_err();
        assert!(matches!(err, Error::JSquareNotMinusIdentity));
    }

    #[test]
    fn rejects_indefinite_metric() {
        let omega = e(4, &[1, 2]).add(&e(4, &[3, 4]));
        let mut g = Matrix::identity(4);
        g.set(3, 3, rat_int(-1));
        let err = AkStructure::build(LieModel::torus(4), omega, None, g).unwrap_err();
        assert!(matches!(err, Error::MetricNotPositiveDefinite));
    }

    #[test]
    fn star_values_identity_metric() {
        let ak = torus4();
        // *(e12) = e34
        let star2 = ak.hodge_star(2).unwrap();
        let image = star2.mul_vec(e(4, &[1, 2]).coords());
        assert_eq!(Form::from_coords(4, 2, image), e(4, &[3, 4]));
        // *(1) = vol = omega^2/2 = e1234
        let star0 = ak.hodge_star(0).unwrap();
        let image = star0.mul_vec(Form::one(4).coords());
        assert_eq!(Form::from_coords(4, 4, image), e(4, &[1, 2, 3, 4]));
        assert_eq!(ak.volume_form(), &e(4, &[1, 2, 3, 4]));
        // ** = -1 on 1-forms
        let star1 = ak.hodge_star(1).unwrap();
        let star3 = ak.hodge_star(3).unwrap();
        assert_eq!(star3.mul(star1), Matrix::identity(4).neg());
    }

    #[test]
    fn lefschetz_operators() {
        let ak = torus4();
        // Lambda(omega) = n = 2
        let image = ak.lefschetz_lambda().block(2).mul_vec(ak.omega().coords());
        assert_eq!(image, vec![rat_int(2)]);
        // Lambda vanishes on degrees 0 and 1
        assert_eq!(ak.lefschetz_lambda().block(0).rows(), 0);
        assert_eq!(ak.lefschetz_lambda().block(1).rows(), 0);
        // Lambda(e12) = 1 for omega = e12 + e34
        let image = ak.lefschetz_lambda().block(2).mul_vec(e(4, &[1, 2]).coords());
        assert_eq!(image, vec![rat_int(1)]);
        // adjointness <L a, b> = <a, Lambda b> on basis pairs of Lambda^0/Lambda^2
        let l0 = ak.lefschetz_l().block(0);
        let lam2 = ak.lefschetz_lambda().block(2);
        assert_eq!(
            l0.transpose().mul(ak.gram(2)),
            ak.gram(0).mul(lam2),
            "Lambda is the metric adjoint of L"
        );
    }

    #[test]
    fn primitive_dimensions() {
        let ak = torus4();
        assert_eq!(ak.primitive_subspace(0).unwrap().dim(), 1);
        assert_eq!(ak.primitive_subspace(1).unwrap().dim(), 4);
        assert_eq!(ak.primitive_subspace(2).unwrap().dim(), 5);
        // above the middle degree the primitive space vanishes
        assert_eq!(ak.primitive_subspace(3).unwrap().dim(), 0);
        assert_eq!(ak.primitive_subspace(4).unwrap().dim(), 0);
    }

    #[test]
    fn lefschetz_decomposition_examples() {
        let ak = torus4();
        // a = omega: f = 1, primitive part 0
        let parts = ak.lefschetz_decomposition(ak.omega());
        assert_eq!(parts.len(), 2);
        assert!(parts[0].1.is_zero());
        assert_eq!(parts[1].1, Form::one(4));

        // a = e12 with omega = e12 + e34: f = 1/2, a0 = (e12 - e34)/2
        let parts = ak.lefschetz_decomposition(&e(4, &[1, 2]));
        assert_eq!(parts[1].1, Form::one(4).scale(&rat(1, 2)));
        let expected = e(4, &[1, 2]).sub(&e(4, &[3, 4])).scale(&rat(1, 2));
        assert_eq!(parts[0].1, expected);

        // a primitive: decomposition is (0, a)
        let primitive = e(4, &[1, 3]);
        let parts = ak.lefschetz_decomposition(&primitive);
        assert_eq!(parts[0].1, primitive);
        assert!(parts[1].1.is_zero());

        // round trip: sum_r L^r p_r = a on a denser form
        let a = e(4, &[1, 2]).scale(&rat_int(3)).add(&e(4, &[1, 4])).sub(&e(4, &[2, 3]));
        let parts = ak.lefschetz_decomposition(&a);
        let mut rebuilt = Form::zero(4, 2);
        for (r, p) in &parts {
            let mut term = p.clone();
            for _ in 0..*r {
                let coords = ak.lefschetz_l().block(term.degree()).mul_vec(term.coords());
                term = Form::from_coords(4, term.degree() + 2, coords);
            }
            rebuilt = rebuilt.add(&term);
        }
        assert_eq!(rebuilt, a);
    }

    #[test]
    fn j_split_dimensions() {
        let ak = torus4();
        let split = ak.two_form_split();
        assert_eq!((split.plus_j.dim(), split.minus_j.dim()), (4, 2));
        // omega is J-invariant
        assert!(split.plus_j.contains(ak.omega().coords()));

        let omega6 = e(6, &[1, 2]).add(&e(6, &[3, 4])).add(&e(6, &[5, 6]));
        let ak6 =
            AkStructure::build(LieModel::torus(6), omega6, None, Matrix::identity(6)).unwrap();
        let split6 = ak6.two_form_split();
        assert_eq!((split6.plus_j.dim(), split6.minus_j.dim()), (9, 6));
    }

    #[test]
    fn sd_asd_split_dimension_four() {
        let ak = torus4();
        let (plus, minus) = ak.sd_asd_split().unwrap();
        let expect_plus = Subspace::from_vectors(
            6,
            vec![
                e(4, &[1, 2]).add(&e(4, &[3, 4])).coords().to_vec(),
                e(4, &[1, 3]).sub(&e(4, &[2, 4])).coords().to_vec(),
                e(4, &[1, 4]).add(&e(4, &[2, 3])).coords().to_vec(),
            ],
        );
        let expect_minus = Subspace::from_vectors(
            6,
            vec![
                e(4, &[1, 2]).sub(&e(4, &[3, 4])).coords().to_vec(),
                e(4, &[1, 3]).add(&e(4, &[2, 4])).coords().to_vec(),
                e(4, &[1, 4]).sub(&e(4, &[2, 3])).coords().to_vec(),
            ],
        );
        assert_eq!(plus, &expect_plus);
        assert_eq!(minus, &expect_minus);
        assert!(plus.contains(ak.omega().coords()));

        let omega6 = e(6, &[1, 2]).add(&e(6, &[3, 4])).add(&e(6, &[5, 6]));
        let ak6 =
            AkStructure::build(LieModel::torus(6), omega6, None, Matrix::identity(6)).unwrap();
        assert!(matches!(
            ak6.sd_asd_split(),
            Err(Error::RequiresDimensionFour(6))
        ));
    }

    #[test]
    fn weil_formula_on_two_forms() {
        // for alpha = f omega + a0 with a0 primitive (1,1):
        //   *alpha = f omega^{n-1}/(n-1)! - a0 /\ omega^{n-2}/(n-2)!
        for ak in [torus4(), kt()] {
            let n = ak.half_dim();
            let split = ak.two_form_split();
            let prim = ak.primitive_subspace(2).unwrap();
            let prim_plus = split.plus_j.intersect(&prim).unwrap();
            let star2 = ak.hodge_star(2).unwrap();

            // the omega component: *omega = omega^{n-1}/(n-1)!
            let lhs = Form::from_coords(4, 2, star2.mul_vec(ak.omega().coords()));
            let rhs = omega_power(ak.omega(), n - 1).unwrap();
            assert_eq!(lhs, rhs);

            // primitive (1,1) components: *a0 = -a0 /\ omega^{n-2}/(n-2)! (= -a0 in dim 4)
            for v in prim_plus.basis_vectors() {
                let a0 = Form::from_coords(4, 2, v);
                let lhs = Form::from_coords(4, 2, star2.mul_vec(a0.coords()));
                let power = omega_power(ak.omega(), n - 2).unwrap();
                let rhs = crate::exterior::wedge(&a0, &power).unwrap().neg();
                assert_eq!(lhs, rhs, "Weil formula on primitive (1,1) forms");
            }

            // anti-invariant primitive forms are self-dual in dim 4
            for v in split.minus_j.basis_vectors() {
                let gamma = Form::from_coords(4, 2, v.clone());
                let starred = Form::from_coords(4, 2, star2.mul_vec(gamma.coords()));
                assert_eq!(starred, gamma);
            }
        }
    }

    #[test]
    fn lefschetz_power_bijective_up_to_middle() {
        for ak in [torus4(), kt()] {
            let dim2n = ak.dim2n();
            let n = ak.half_dim();
            for k in 0..=n {
                let mut power = Matrix::identity(space_dim(dim2n, k as isize));
                for step in 0..(n - k) {
                    power = ak.lefschetz_l().block(k + 2 * step).mul(&power);
                }
                assert_eq!(
                    power.rank(),
                    space_dim(dim2n, k as isize),
                    "L^(n-k) must be bijective from degree {k}"
                );
            }
        }
    }
}
