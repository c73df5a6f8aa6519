//! The exterior algebra over a fixed coframe `e^1, ..., e^2n`.
//!
//! Basis `k`-forms are indexed by strictly increasing multi-indices in
//! lexicographic order; that order is the canonical basis of every matrix in
//! the crate, so it is fixed here once and never re-derived elsewhere.
//!
//! Sign convention: `e^I /\ e^J` carries the parity of the permutation that
//! sorts the concatenation `I.J`. Every sign downstream (Hodge star, Weil
//! formula, adjoints) inherits from this single rule.

use crate::error::Error;
use crate::linalg::Matrix;
use crate::rational::{fmt_rational, zero, Rational};
use num_traits::{One, Zero};

/// A strictly increasing tuple of coframe indices in `1..=2n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    indices: Vec<u8>,
}

impl MultiIndex {
    pub fn new(indices: Vec<u8>) -> Self {
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "multi-index must be strictly increasing"
        );
        MultiIndex { indices }
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[u8] {
        &self.indices
    }

    /// The complementary increasing tuple inside `1..=2n`.
    pub fn complement(&self, dim2n: usize) -> MultiIndex {
        let indices = (1..=dim2n as u8)
            .filter(|i| !self.indices.contains(i))
            .collect();
        MultiIndex { indices }
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "e")?;
        for i in &self.indices {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Dimension of `Lambda^k`, zero outside `0..=2n`.
pub fn space_dim(dim2n: usize, k: isize) -> usize {
    if k < 0 || k > dim2n as isize {
        0
    } else {
        binomial(dim2n, k as usize)
    }
}

/// All `C(2n,k)` strictly increasing multi-indices, lexicographically ordered.
pub fn multi_indices(dim2n: usize, k: usize) -> Result<Vec<MultiIndex>, Error> {
    if k > dim2n {
        return Err(Error::DegreeOutOfRange { degree: k, dim2n });
    }
    let mut out = Vec::with_capacity(binomial(dim2n, k));
    let mut current: Vec<u8> = Vec::with_capacity(k);
    fn recurse(dim2n: u8, k: usize, start: u8, current: &mut Vec<u8>, out: &mut Vec<MultiIndex>) {
        if current.len() == k {
            out.push(MultiIndex::new(current.clone()));
            return;
        }
        let remaining = k - current.len();
        for v in start..=(dim2n + 1 - remaining as u8) {
            current.push(v);
            recurse(dim2n, k, v + 1, current, out);
            current.pop();
        }
    }
    recurse(dim2n as u8, k, 1, &mut current, &mut out);
    Ok(out)
}

/// Position of `index` in the lexicographic basis of its degree.
pub fn basis_position(dim2n: usize, index: &MultiIndex) -> usize {
    let table = multi_indices(dim2n, index.degree()).expect("degree in range");
    table
        .binary_search(index)
        .expect("multi-index within 1..=2n")
}

/// Merges two disjoint increasing tuples, returning the permutation sign,
/// or `None` when they share an index (the wedge vanishes).
fn merge_with_sign(a: &[u8], b: &[u8]) -> Option<(i8, Vec<u8>)> {
    let mut merged = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            merged.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps left past the remaining entries of a
            inversions += a.len() - i;
            merged.push(b[j]);
            j += 1;
        }
    }
    merged.extend_from_slice(&a[i..]);
    merged.extend_from_slice(&b[j..]);
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Some((sign, merged))
}

/// Sign of the permutation `(I, complement(I))` of `(1..2n)`; the star
/// construction needs it to convert wedge pairings into matrix entries.
pub fn complement_sign(dim2n: usize, index: &MultiIndex) -> i8 {
    let comp = index.complement(dim2n);
    let (sign, merged) = merge_with_sign(index.indices(), comp.indices())
        .expect("index and complement are disjoint");
    debug_assert_eq!(merged.len(), dim2n);
    sign
}

/// A homogeneous form: degree plus coordinates over the lexicographic basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    dim2n: usize,
    degree: usize,
    coords: Vec<Rational>,
}

impl Form {
    pub fn zero(dim2n: usize, degree: usize) -> Self {
        assert!(degree <= dim2n, "degree out of range");
        Form {
            dim2n,
            degree,
            coords: vec![zero(); binomial(dim2n, degree)],
        }
    }

    /// The constant function `1` viewed as a 0-form.
    pub fn one(dim2n: usize) -> Self {
        Form::from_coords(dim2n, 0, vec![Rational::one()])
    }

    pub fn basis(dim2n: usize, index: &MultiIndex) -> Self {
        let mut f = Form::zero(dim2n, index.degree());
        let pos = basis_position(dim2n, index);
        f.coords[pos] = Rational::one();
        f
    }

    pub fn from_coords(dim2n: usize, degree: usize, coords: Vec<Rational>) -> Self {
        assert_eq!(coords.len(), binomial(dim2n, degree), "coordinate length");
        Form {
            dim2n,
            degree,
            coords,
        }
    }

    /// Sum of `coefficient * e^indices` terms; indices may arrive in any
    /// order and are sign-normalized, duplicates are rejected by the caller.
    pub fn from_terms(dim2n: usize, degree: usize, terms: &[(Rational, Vec<u8>)]) -> Self {
        let mut f = Form::zero(dim2n, degree);
        for (coeff, raw) in terms {
            assert_eq!(raw.len(), degree, "term degree mismatch");
            let mut idx = raw.clone();
            let mut sign = 1i64;
            // insertion sort, tracking parity
            for i in 1..idx.len() {
                let mut j = i;
                while j > 0 && idx[j - 1] > idx[j] {
                    idx.swap(j - 1, j);
                    sign = -sign;
                    j -= 1;
                }
            }
            let mi = MultiIndex::new(idx);
            let pos = basis_position(dim2n, &mi);
            let signed = if sign >= 0 {
                coeff.clone()
            } else {
                -coeff.clone()
            };
            f.coords[pos] += signed;
        }
        f
    }

    pub fn dim2n(&self) -> usize {
        self.dim2n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, pos: usize) -> &Rational {
        &self.coords[pos]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!((self.dim2n, self.degree), (other.dim2n, other.degree));
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Form::from_coords(self.dim2n, self.degree, coords)
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        let coords = self.coords.iter().map(|a| -a).collect();
        Form::from_coords(self.dim2n, self.degree, coords)
    }

    pub fn scale(&self, factor: &Rational) -> Form {
        let coords = self.coords.iter().map(|a| a * factor).collect();
        Form::from_coords(self.dim2n, self.degree, coords)
    }
}

impl std::fmt::Display for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let table = multi_indices(self.dim2n, self.degree).expect("degree in range");
        let mut first = true;
        for (pos, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = if c < &zero() { -c.clone() } else { c.clone() };
            if first {
                if c < &zero() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < &zero() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if self.degree == 0 {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", table[pos])?;
            } else {
                write!(f, "{} {}", fmt_rational(&abs), table[pos])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Exterior product. Degree overflow is rejected: no caller in this crate
/// legitimately exceeds the top degree, so it always signals an assembly bug.
pub fn wedge(a: &Form, b: &Form) -> Result<Form, Error> {
    if a.dim2n != b.dim2n {
        return Err(Error::DimensionMismatch(format!(
            "wedge of forms over R^{} and R^{}",
            a.dim2n, b.dim2n
        )));
    }
    let dim2n = a.dim2n;
    if a.degree + b.degree > dim2n {
        return Err(Error::DegreeOverflow {
            left: a.degree,
            right: b.degree,
            dim2n,
        });
    }
    let a_table = multi_indices(dim2n, a.degree)?;
    let b_table = multi_indices(dim2n, b.degree)?;
    let out_table = multi_indices(dim2n, a.degree + b.degree)?;
    let mut out = Form::zero(dim2n, a.degree + b.degree);
    for (ia, ca) in a.coords.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (ib, cb) in b.coords.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            if let Some((sign, merged)) =
                merge_with_sign(a_table[ia].indices(), b_table[ib].indices())
            {
                let mi = MultiIndex::new(merged);
                let pos = out_table.binary_search(&mi).expect("merged index valid");
                let term = ca * cb;
                out.coords[pos] += if sign > 0 { term } else { -term };
            }
        }
    }
    Ok(out)
}

/// Matrix of `beta -> a /\ beta` from `Lambda^k` to `Lambda^{k + deg a}`.
pub fn wedge_matrix(a: &Form, k: usize) -> Result<Matrix, Error> {
    let dim2n = a.dim2n;
    if k > dim2n {
        return Err(Error::DegreeOutOfRange { degree: k, dim2n });
    }
    if a.degree + k > dim2n {
        return Err(Error::DegreeOverflow {
            left: a.degree,
            right: k,
            dim2n,
        });
    }
    let source = multi_indices(dim2n, k)?;
    let mut out = Matrix::zeros(binomial(dim2n, a.degree + k), source.len());
    for (col, mi) in source.iter().enumerate() {
        let product = wedge(a, &Form::basis(dim2n, mi))?;
        for (row, c) in product.coords.iter().enumerate() {
            if !c.is_zero() {
                out.set(row, col, c.clone());
            }
        }
    }
    Ok(out)
}

/// `omega^p / p!`, the normalized Lefschetz power (volume form when `p = n`).
pub fn omega_power(omega: &Form, p: usize) -> Result<Form, Error> {
    let mut acc = Form::one(omega.dim2n());
    for _ in 0..p {
        acc = wedge(omega, &acc)?;
    }
    Ok(acc.scale(&(Rational::one() / crate::rational::factorial(p))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_int, one};

    fn e(dim2n: usize, indices: &[u8]) -> Form {
        Form::from_terms(dim2n, indices.len(), &[(one(), indices.to_vec())])
    }

    #[test]
    fn basis_enumeration_examples() {
        assert_eq!(multi_indices(4, 0).unwrap(), vec![MultiIndex::new(vec![])]);
        let two = multi_indices(4, 2).unwrap();
        let expected: Vec<MultiIndex> = [
            vec![1, 2],
            vec![1, 3],
            vec![1, 4],
            vec![2, 3],
            vec![2, 4],
            vec![3, 4],
        ]
        .into_iter()
        .map(MultiIndex::new)
        .collect();
        assert_eq!(two, expected);
        assert_eq!(
            multi_indices(4, 4).unwrap(),
            vec![MultiIndex::new(vec![1, 2, 3, 4])]
        );
        assert!(matches!(
            multi_indices(4, 5),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn wedge_antisymmetry_on_coframe() {
        let four = 4;
        let e1 = e(four, &[1]);
        let e2 = e(four, &[2]);
        assert_eq!(wedge(&e1, &e2).unwrap(), e(four, &[1, 2]));
        assert_eq!(wedge(&e2, &e1).unwrap(), e(four, &[1, 2]).neg());
        assert!(wedge(&e1, &e1).unwrap().is_zero());
    }

    #[test]
    fn wedge_square_of_symplectic_form() {
        // (e14 + e23) /\ (e14 + e23) = 2 e1234: cross terms survive with even
        // merge permutations, squares vanish
        let omega = e(4, &[1, 4]).add(&e(4, &[2, 3]));
        let sq = wedge(&omega, &omega).unwrap();
        assert_eq!(sq, e(4, &[1, 2, 3, 4]).scale(&rat_int(2)));
    }

    #[test]
    fn wedge_rejects_degree_overflow() {
        let a = e(4, &[1, 2, 3]);
        let b = e(4, &[1, 4]);
        assert!(matches!(
            wedge(&a, &b),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn term_normalization_handles_permuted_indices() {
        // e41 = -e14, Salamon entries like "42" rely on this
        let f = Form::from_terms(4, 2, &[(one(), vec![4, 1])]);
        assert_eq!(f, e(4, &[1, 4]).neg());
    }

    #[test]
    fn wedge_matrix_degree_zero_is_identity() {
        let scalar = Form::one(4);
        assert_eq!(wedge_matrix(&scalar, 2).unwrap(), Matrix::identity(6));
    }

    #[test]
    fn wedge_matrix_selects_coordinate() {
        let a = e(4, &[1, 2]);
        let m = wedge_matrix(&a, 0).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 1));
        assert_eq!(m.get(0, 0), &one());
        assert_eq!(m.column(0)[1..], vec![rat_int(0); 5][..]);
    }

    #[test]
    fn omega_power_top_coordinate() {
        let omega = e(4, &[1, 2]).add(&e(4, &[3, 4]));
        let vol = omega_power(&omega, 2).unwrap();
        assert_eq!(vol, e(4, &[1, 2, 3, 4]));
    }

    #[test]
    fn complement_signs() {
        let i12 = MultiIndex::new(vec![1, 2]);
        assert_eq!(complement_sign(4, &i12), 1);
        let i13 = MultiIndex::new(vec![1, 3]);
        assert_eq!(complement_sign(4, &i13), -1);
        let i24 = MultiIndex::new(vec![2, 4]);
        assert_eq!(complement_sign(4, &i24), -1);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn form(dim2n: usize, degree: usize) -> impl Strategy<Value = Form> {
            let len = binomial(dim2n, degree);
            proptest::collection::vec(-3i64..=3, len).prop_map(move |vals| {
                Form::from_coords(dim2n, degree, vals.into_iter().map(rat_int).collect())
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn graded_commutativity(
                (a, b) in (0usize..=2, 0usize..=2)
                    .prop_flat_map(|(p, q)| (form(4, p), form(4, q))),
            ) {
                let ab = wedge(&a, &b).unwrap();
                let ba = wedge(&b, &a).unwrap();
                let expected = if (a.degree() * b.degree()) % 2 == 0 {
                    ba.clone()
                } else {
                    ba.neg()
                };
                prop_assert_eq!(ab, expected);
            }

            #[test]
            fn associativity(a in form(6, 1), b in form(6, 2), c in form(6, 1)) {
                let left = wedge(&wedge(&a, &b).unwrap(), &c).unwrap();
                let right = wedge(&a, &wedge(&b, &c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn wedge_matrix_matches_wedge(a in form(4, 2), b in form(4, 1)) {
                let m = wedge_matrix(&a, 1).unwrap();
                let via_matrix = m.mul_vec(b.coords());
                let direct = wedge(&a, &b).unwrap();
                prop_assert_eq!(via_matrix, direct.coords().to_vec());
            }
        }
    }
}
