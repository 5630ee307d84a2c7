//! Exterior algebra on an n-dimensional coframe (n <= 16) with complex
//! exact coefficients: wedge products, interior products, grading,
//! truncated exponentials, and exact rank/kernel for linear operators.
//!
//! Basis monomials e^{i1...ik} (strictly increasing indices) are bitmasks;
//! the sign of any product is an inversion count, so all signs are exact
//! and O(n) per merge.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;
use crate::scalar::{CScalar, Rational};

pub const MAX_DIM: u8 = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExteriorError {
    #[error("coframe dimension {0} exceeds the supported maximum {MAX_DIM}")]
    DimensionTooLarge(u8),
    #[error("coframe index {index} out of range 1..={n}")]
    IndexOutOfRange { index: u8, n: u8 },
    #[error("repeated coframe index {0}")]
    DuplicateIndex(u8),
    #[error("dimension mismatch: forms on {left} and {right} generators")]
    DimensionMismatch { left: u8, right: u8 },
    #[error("exponential needs even positive grades only; found a grade-{0} term")]
    NotEvenPositiveGrade(usize),
    #[error("contraction vector has {got} components, coframe has {n}")]
    VectorLengthMismatch { got: usize, n: u8 },
}

/// A strictly increasing set of coframe indices, stored as a bitmask
/// (bit k set means index k+1 is present).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(u16);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    pub fn from_bits(bits: u16) -> Self {
        MultiIndex(bits)
    }

    /// Build from 1-based indices, which must be distinct; order is
    /// irrelevant here (use [`sort_sign`] when the orientation matters).
    pub fn from_indices(indices: &[u8]) -> Result<Self, ExteriorError> {
        let mut bits = 0u16;
        for &i in indices {
            if i == 0 || i > MAX_DIM {
                return Err(ExteriorError::IndexOutOfRange { index: i, n: MAX_DIM });
            }
            let bit = 1u16 << (i - 1);
            if bits & bit != 0 {
                return Err(ExteriorError::DuplicateIndex(i));
            }
            bits |= bit;
        }
        Ok(MultiIndex(bits))
    }

    pub fn bits(&self) -> u16 {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, index: u8) -> bool {
        (1..=MAX_DIM).contains(&index) && self.0 & (1 << (index - 1)) != 0
    }

    /// 1-based indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=MAX_DIM).filter(|&i| self.contains(i))
    }

    pub fn complement(&self, n: u8) -> MultiIndex {
        let full = if n == 16 { u16::MAX } else { (1u16 << n) - 1 };
        MultiIndex(full & !self.0)
    }

    pub fn is_subset_of(&self, other: MultiIndex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn remove(&self, index: u8) -> MultiIndex {
        MultiIndex(self.0 & !(1 << (index - 1)))
    }

    fn fits(&self, n: u8) -> bool {
        n >= 16 || self.0 < (1u16 << n)
    }

    /// Monomial label: "1" for the empty index, "e14" for indices <= 9,
    /// comma-separated otherwise.
    pub fn label(&self) -> String {
        if self.0 == 0 {
            return "1".to_owned();
        }
        let idx: Vec<u8> = self.indices().collect();
        if idx.iter().all(|&i| i <= 9) {
            let digits: String = idx.iter().map(|i| char::from(b'0' + i)).collect();
            format!("e{digits}")
        } else {
            let parts: Vec<String> = idx.iter().map(u8::to_string).collect();
            format!("e({})", parts.join(","))
        }
    }
}

/// Sign of merging the increasing sequences `a` and `b` into one increasing
/// sequence, or `None` when they share an index (the product vanishes).
pub fn merge_sign(a: MultiIndex, b: MultiIndex) -> Option<(MultiIndex, i8)> {
    if a.bits() & b.bits() != 0 {
        return None;
    }
    let mut inversions = 0u32;
    for pos in 0..16u16 {
        if b.bits() & (1 << pos) != 0 {
            inversions += (a.bits() >> (pos + 1)).count_ones();
        }
    }
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((MultiIndex(a.bits() | b.bits()), sign))
}

/// Sign of sorting the listed 1-based indices into increasing order,
/// together with the resulting index set; `None` on a repeat.
pub fn sort_sign(indices: &[u8]) -> Option<(MultiIndex, i8)> {
    let mut mask = MultiIndex::EMPTY;
    let mut sign = 1i8;
    for &i in indices {
        let single = MultiIndex::from_indices(&[i]).ok()?;
        let (next, s) = merge_sign(mask, single)?;
        mask = next;
        sign *= s;
    }
    Some((mask, sign))
}

/// All degree-k basis monomials on n generators, in increasing bitmask
/// order (the fixed column order for every operator matrix).
pub fn basis_of_degree(n: u8, k: usize) -> Vec<MultiIndex> {
    let limit: u32 = 1 << n;
    (0..limit)
        .filter(|bits| bits.count_ones() as usize == k)
        .map(|bits| MultiIndex(bits as u16))
        .collect()
}

/// All 2^n basis monomials in increasing bitmask order.
pub fn basis_full(n: u8) -> Vec<MultiIndex> {
    let limit: u32 = 1 << n;
    (0..limit).map(|bits| MultiIndex(bits as u16)).collect()
}

/// A sparse exterior form with CScalar coefficients; zero coefficients are
/// never stored, so equality is structural. Mixed grades are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    n: u8,
    terms: BTreeMap<MultiIndex, CScalar>,
}

impl Form {
    pub fn zero(n: u8) -> Self {
        Form { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: u8, c: CScalar) -> Self {
        let mut f = Form::zero(n);
        f.add_term(MultiIndex::EMPTY, c);
        f
    }

    pub fn one(n: u8) -> Self {
        Form::constant(n, CScalar::one())
    }

    pub fn monomial(n: u8, index: MultiIndex, coeff: CScalar) -> Result<Self, ExteriorError> {
        if n > MAX_DIM {
            return Err(ExteriorError::DimensionTooLarge(n));
        }
        if !index.fits(n) {
            let bad = index.indices().find(|&i| i > n).unwrap_or(n + 1);
            return Err(ExteriorError::IndexOutOfRange { index: bad, n });
        }
        let mut f = Form::zero(n);
        f.add_term(index, coeff);
        Ok(f)
    }

    /// Basis monomial from listed 1-based indices; unsorted lists pick up
    /// the sorting sign, repeated indices give zero.
    pub fn basis_monomial(n: u8, indices: &[u8]) -> Result<Self, ExteriorError> {
        for &i in indices {
            if i == 0 || i > n {
                return Err(ExteriorError::IndexOutOfRange { index: i, n });
            }
        }
        match sort_sign(indices) {
            Some((mask, sign)) => {
                Form::monomial(n, mask, CScalar::from_int(i64::from(sign)))
            }
            None => Ok(Form::zero(n)),
        }
    }

    pub fn dimension(&self) -> u8 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, index: MultiIndex) -> CScalar {
        self.terms.get(&index).cloned().unwrap_or_else(CScalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &CScalar)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, index: MultiIndex, coeff: CScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    fn check_same_dim(&self, other: &Form) -> Result<(), ExteriorError> {
        if self.n != other.n {
            return Err(ExteriorError::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Form) -> Result<Form, ExteriorError> {
        self.check_same_dim(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form, ExteriorError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, c: &CScalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.n);
        }
        self.map_coeffs(|v| v * c)
    }

    pub fn scale_rational(&self, r: &Rational) -> Form {
        self.scale(&CScalar::from_rational(r.clone()))
    }

    pub fn map_coeffs(&self, f: impl Fn(&CScalar) -> CScalar) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in self.terms() {
            out.add_term(m, f(c));
        }
        out
    }

    /// Complex conjugate (coefficient-wise; basis monomials are real).
    pub fn conj(&self) -> Form {
        self.map_coeffs(CScalar::conj)
    }

    pub fn wedge(&self, other: &Form) -> Result<Form, ExteriorError> {
        self.check_same_dim(other)?;
        let mut out = Form::zero(self.n);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                if let Some((m, sign)) = merge_sign(ma, mb) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        Ok(out)
    }

    /// Grade-k component.
    pub fn grade(&self, k: usize) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in self.terms() {
            if m.degree() == k {
                out.add_term(m, c.clone());
            }
        }
        out
    }

    /// The set of grades with a nonzero component.
    pub fn grades(&self) -> BTreeSet<usize> {
        self.terms.keys().map(MultiIndex::degree).collect()
    }

    /// `Some(k)` if every term has degree k (zero counts as homogeneous of
    /// degree 0); `None` for genuinely mixed forms.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut grades = self.grades().into_iter();
        let first = grades.next().unwrap_or(0);
        grades.next().is_none().then_some(first)
    }

    /// Interior product with the frame vector v = sum v_i E_i (components
    /// over the frame dual to the coframe); an antiderivation of degree -1.
    pub fn contract(&self, v: &[CScalar]) -> Result<Form, ExteriorError> {
        if v.len() != usize::from(self.n) {
            return Err(ExteriorError::VectorLengthMismatch { got: v.len(), n: self.n });
        }
        let mut out = Form::zero(self.n);
        for (m, c) in self.terms() {
            for (pos, i) in m.indices().enumerate() {
                let vi = &v[usize::from(i) - 1];
                if vi.is_zero() {
                    continue;
                }
                let mut coeff = c * vi;
                if pos % 2 == 1 {
                    coeff = -coeff;
                }
                out.add_term(m.remove(i), coeff);
            }
        }
        Ok(out)
    }

    /// Interior product with the k-th frame vector E_k.
    pub fn contract_basis(&self, k: u8) -> Result<Form, ExteriorError> {
        if k == 0 || k > self.n {
            return Err(ExteriorError::IndexOutOfRange { index: k, n: self.n });
        }
        let mut v = vec![CScalar::zero(); usize::from(self.n)];
        v[usize::from(k) - 1] = CScalar::one();
        self.contract(&v)
    }

    /// Pullback-style substitution: replace the k-th coframe generator by
    /// `images[k-1]` and expand every monomial as the wedge of its images
    /// in ascending index order. The images must share one dimension, which
    /// becomes the dimension of the result; their count must match the
    /// source dimension.
    pub fn substitute(&self, images: &[Form]) -> Result<Form, ExteriorError> {
        if images.len() != usize::from(self.n) {
            return Err(ExteriorError::VectorLengthMismatch { got: images.len(), n: self.n });
        }
        let m = images.first().map_or(self.n, Form::dimension);
        let mut acc = Form::zero(m);
        for (index, coeff) in self.terms() {
            let mut term = Form::constant(m, coeff.clone());
            for i in index.indices() {
                term = term.wedge(&images[usize::from(i) - 1])?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Truncated exponential sum phi^k / k!; requires every term to have
    /// even degree >= 2, so the sum stops at degree n.
    pub fn exp_truncated(&self) -> Result<Form, ExteriorError> {
        for k in self.grades() {
            if k == 0 || k % 2 != 0 {
                return Err(ExteriorError::NotEvenPositiveGrade(k));
            }
        }
        let mut acc = Form::one(self.n);
        let mut power = Form::one(self.n);
        let mut k: i64 = 0;
        loop {
            k += 1;
            power = power.wedge(self)?.scale_rational(&crate::scalar::rat(1, k));
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let (neg, body) = term_text(m, c);
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
                first = false;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
        }
        Ok(())
    }
}

/// Render one term as (is_negative, body-without-sign); used by both the
/// form display and the Salamon renderer.
pub(crate) fn term_text(m: MultiIndex, c: &CScalar) -> (bool, String) {
    if m == MultiIndex::EMPTY {
        let text = c.to_string();
        return match text.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_owned()),
            _ => (false, text),
        };
    }
    let label = m.label();
    if *c == CScalar::one() {
        return (false, label);
    }
    if *c == CScalar::from_int(-1) {
        return (true, label);
    }
    let text = c.to_string();
    if text.contains(['+', ' ']) {
        return (false, format!("({text})*{label}"));
    }
    match text.strip_prefix('-') {
        Some(rest) => (true, format!("{rest}*{label}")),
        None => (false, format!("{text}*{label}")),
    }
}

/// Wire format for a form: a list of terms, each with its 1-based index
/// list and exact coefficient.
#[derive(Serialize, Deserialize)]
struct FormRepr {
    n: u8,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    indices: Vec<u8>,
    coeff: CScalar,
}

impl Serialize for Form {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FormRepr {
            n: self.n,
            terms: self
                .terms()
                .map(|(m, c)| TermRepr { indices: m.indices().collect(), coeff: c.clone() })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Form {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = FormRepr::deserialize(deserializer)?;
        let mut f = Form::zero(repr.n);
        for term in repr.terms {
            let m = MultiIndex::from_indices(&term.indices).map_err(D::Error::custom)?;
            if !m.fits(repr.n) {
                return Err(D::Error::custom(ExteriorError::IndexOutOfRange {
                    index: term.indices.iter().copied().max().unwrap_or(0),
                    n: repr.n,
                }));
            }
            f.add_term(m, term.coeff);
        }
        Ok(f)
    }
}

/// A linear operator given by its values on an ordered list of domain
/// forms. Rank and kernel are computed by exact elimination on the matrix
/// whose columns are the images expanded over the monomials they span.
#[derive(Debug, Clone)]
pub struct FormOperator {
    domain: Vec<Form>,
    images: Vec<Form>,
}

impl FormOperator {
    /// Apply `f` to every domain form.
    pub fn from_map(
        domain: Vec<Form>,
        mut f: impl FnMut(&Form) -> Result<Form, ExteriorError>,
    ) -> Result<Self, ExteriorError> {
        let images = domain.iter().map(&mut f).collect::<Result<Vec<_>, _>>()?;
        Ok(FormOperator { domain, images })
    }

    pub fn domain(&self) -> &[Form] {
        &self.domain
    }

    pub fn images(&self) -> &[Form] {
        &self.images
    }

    pub fn domain_dim(&self) -> usize {
        self.domain.len()
    }

    /// The matrix of the operator: rows indexed by the monomials appearing
    /// in any image (ascending), columns by the domain order.
    fn image_matrix(&self) -> Matrix<CScalar> {
        let mut monomials: BTreeSet<MultiIndex> = BTreeSet::new();
        for img in &self.images {
            monomials.extend(img.terms().map(|(m, _)| m));
        }
        let rows: Vec<MultiIndex> = monomials.into_iter().collect();
        Matrix::from_fn(rows.len(), self.images.len(), |i, j| self.images[j].coeff(rows[i]))
    }

    pub fn rank(&self) -> usize {
        self.image_matrix().rank()
    }

    /// Kernel basis as linear combinations of the domain forms, one per
    /// free column in the deterministic elimination order.
    pub fn kernel(&self) -> Vec<Form> {
        let n = self.domain.first().map_or(0, Form::dimension);
        self.image_matrix()
            .kernel_basis()
            .into_iter()
            .map(|coeffs| {
                let mut acc = Form::zero(n);
                for (c, v) in coeffs.iter().zip(&self.domain) {
                    if !c.is_zero() {
                        acc = acc.add(&v.scale(c)).expect("domain forms share a dimension");
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rank_kernel(&self) -> (usize, Vec<Form>) {
        (self.rank(), self.kernel())
    }
}

/// Exact rank and kernel basis of a linear map given on a domain basis.
pub fn operator_rank_kernel(
    domain: Vec<Form>,
    f: impl FnMut(&Form) -> Result<Form, ExteriorError>,
) -> Result<(usize, Vec<Form>), ExteriorError> {
    Ok(FormOperator::from_map(domain, f)?.rank_kernel())
}

/// Expand a form over an ordered monomial basis as a coefficient vector;
/// monomials outside the basis are reported as an error.
pub fn coords_in_basis(
    form: &Form,
    basis: &[MultiIndex],
) -> Result<Vec<CScalar>, ExteriorError> {
    let position: BTreeMap<MultiIndex, usize> =
        basis.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut coords = vec![CScalar::zero(); basis.len()];
    for (m, c) in form.terms() {
        let idx = position.get(&m).ok_or(ExteriorError::IndexOutOfRange {
            index: m.indices().next().unwrap_or(0),
            n: form.dimension(),
        })?;
        coords[*idx] = c.clone();
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn e(n: u8, indices: &[u8]) -> Form {
        Form::basis_monomial(n, indices).unwrap()
    }

    #[test]
    fn wedge_signs_are_exact() {
        let n = 6;
        assert_eq!(e(n, &[1]).wedge(&e(n, &[2])).unwrap(), e(n, &[1, 2]));
        assert_eq!(e(n, &[2]).wedge(&e(n, &[1])).unwrap(), e(n, &[1, 2]).neg());
        assert!(e(n, &[1]).wedge(&e(n, &[1])).unwrap().is_zero());
    }

    #[test]
    fn symplectic_cube_is_six_times_volume() {
        let n = 6;
        let omega = e(n, &[1, 4]).add(&e(n, &[2, 5])).unwrap().add(&e(n, &[3, 6])).unwrap();
        let cube = omega.wedge(&omega).unwrap().wedge(&omega).unwrap();
        assert_eq!(cube.num_terms(), 1);
        let top = MultiIndex::from_indices(&[1, 2, 3, 4, 5, 6]).unwrap();
        // The engine computes the sign; for this index pairing it is minus.
        assert_eq!(cube.coeff(top), CScalar::from_int(-6));
    }

    #[test]
    fn unsorted_monomials_pick_up_the_sort_sign() {
        let n = 6;
        assert_eq!(e(n, &[6, 1]), e(n, &[1, 6]).neg());
        assert!(Form::basis_monomial(n, &[1, 1]).unwrap().is_zero());
        assert!(Form::basis_monomial(n, &[7]).is_err());
    }

    #[test]
    fn substitution_expands_with_signs() {
        // Swapping the two generators negates a 2-form monomial.
        let swap = [e(2, &[2]), e(2, &[1])];
        assert_eq!(e(2, &[1, 2]).substitute(&swap).unwrap(), e(2, &[1, 2]).neg());

        // Substitution into a larger coframe with coefficients: a 3-dim
        // 2-form pushed onto generators 4..6 of a 6-dim coframe.
        let images = [
            e(6, &[4]),
            e(6, &[5]).scale_rational(&rat(1, 2)),
            e(6, &[6]),
        ];
        let phi = e(3, &[1, 2]).add(&e(3, &[2, 3]).neg()).unwrap();
        let expect = e(6, &[4, 5])
            .scale_rational(&rat(1, 2))
            .sub(&e(6, &[5, 6]).scale_rational(&rat(1, 2)))
            .unwrap();
        assert_eq!(phi.substitute(&images).unwrap(), expect);

        // Constants pass through; the image count is validated.
        let c = Form::constant(3, CScalar::from_int(7));
        assert_eq!(c.substitute(&images).unwrap(), Form::constant(6, CScalar::from_int(7)));
        assert!(matches!(
            e(3, &[1]).substitute(&images[..2]),
            Err(ExteriorError::VectorLengthMismatch { got: 2, n: 3 })
        ));
    }

    #[test]
    fn contraction_is_signed() {
        let n = 2;
        let e12 = e(n, &[1, 2]);
        assert_eq!(e12.contract_basis(1).unwrap(), e(n, &[2]));
        assert_eq!(e12.contract_basis(2).unwrap(), e(n, &[1]).neg());
    }

    #[test]
    fn antiholomorphic_vector_annihilates_holomorphic_form() {
        let n = 6;
        // v = E1 + i E4 contracts e^1 + i e^4 to 1 + i*i = 0.
        let mut v = vec![CScalar::zero(); 6];
        v[0] = CScalar::one();
        v[3] = CScalar::i();
        let psi = e(n, &[1]).add(&e(n, &[4]).scale(&CScalar::i())).unwrap();
        assert!(psi.contract(&v).unwrap().is_zero());
    }

    #[test]
    fn exp_truncated_matches_hand_expansion() {
        let n = 6;
        assert_eq!(Form::zero(n).exp_truncated().unwrap(), Form::one(n));
        let e12 = e(n, &[1, 2]);
        assert_eq!(e12.exp_truncated().unwrap(), Form::one(n).add(&e12).unwrap());
        let phi = e(n, &[1, 2]).add(&e(n, &[3, 4])).unwrap();
        let expected = Form::one(n)
            .add(&e(n, &[1, 2]))
            .unwrap()
            .add(&e(n, &[3, 4]))
            .unwrap()
            .add(&e(n, &[1, 2, 3, 4]))
            .unwrap();
        assert_eq!(phi.exp_truncated().unwrap(), expected);
    }

    #[test]
    fn exp_truncated_rejects_bad_grades() {
        let n = 4;
        assert_eq!(
            e(n, &[1]).exp_truncated(),
            Err(ExteriorError::NotEvenPositiveGrade(1))
        );
        assert_eq!(
            Form::one(n).exp_truncated(),
            Err(ExteriorError::NotEvenPositiveGrade(0))
        );
    }

    #[test]
    fn operator_rank_and_kernel() {
        let n = 6;
        // Zero operator on the six 1-forms.
        let domain: Vec<Form> = (1..=6).map(|i| e(n, &[i])).collect();
        let (rank, kernel) = operator_rank_kernel(domain.clone(), |_| Ok(Form::zero(n))).unwrap();
        assert_eq!((rank, kernel.len()), (0, 6));

        // Identity on all 2-forms.
        let domain2: Vec<Form> = basis_of_degree(n, 2)
            .into_iter()
            .map(|m| Form::monomial(n, m, CScalar::one()).unwrap())
            .collect();
        let (rank, kernel) = operator_rank_kernel(domain2, |f| Ok(f.clone())).unwrap();
        assert_eq!((rank, kernel.len()), (15, 0));

        // Wedging 1-forms with e^1 kills exactly e^1.
        let e1 = e(n, &[1]);
        let (rank, kernel) = operator_rank_kernel(domain, |f| f.wedge(&e1)).unwrap();
        assert_eq!((rank, kernel.len()), (5, 1));
        assert_eq!(kernel[0], e1);
    }

    #[test]
    fn grading_and_projection() {
        let n = 6;
        let mixed = Form::one(n).add(&e(n, &[1, 2])).unwrap().add(&e(n, &[1, 2, 3])).unwrap();
        assert_eq!(mixed.grades().into_iter().collect::<Vec<_>>(), vec![0, 2, 3]);
        assert_eq!(mixed.grade(2), e(n, &[1, 2]));
        assert_eq!(mixed.homogeneous_degree(), None);
        assert_eq!(e(n, &[1, 2]).homogeneous_degree(), Some(2));
    }

    #[test]
    fn serde_round_trip() {
        let n = 6;
        let phi = e(n, &[1, 4])
            .scale(&CScalar::new(
                crate::scalar::Scalar::from_rational(rat(3, 2)),
                crate::scalar::Scalar::from_rational(rat(-1, 7)),
            ))
            .add(&e(n, &[2, 3, 5]))
            .unwrap();
        let json = serde_json::to_string(&phi).unwrap();
        let back: Form = serde_json::from_str(&json).unwrap();
        assert_eq!(back, phi);
    }

    #[test]
    fn display_is_readable() {
        let n = 6;
        let phi = e(n, &[1, 4])
            .add(&e(n, &[2, 5]).neg())
            .unwrap()
            .add(&e(n, &[3, 6]).scale(&CScalar::from_rational(rat(1, 2))))
            .unwrap();
        assert_eq!(phi.to_string(), "e14 - e25 + 1/2*e36");
        assert_eq!(Form::zero(n).to_string(), "0");
    }

    mod properties {
        use super::*;
        use crate::scalar::Scalar;
        use proptest::prelude::*;

        fn coeff() -> impl Strategy<Value = CScalar> {
            (-4i64..=4, -4i64..=4).prop_map(|(re, im)| {
                CScalar::new(Scalar::from_int(re), Scalar::from_int(im))
            })
        }

        /// Random homogeneous form of the given degree on 6 generators.
        fn homogeneous(k: usize) -> impl Strategy<Value = Form> {
            let monomials = basis_of_degree(6, k);
            proptest::collection::vec(coeff(), monomials.len()).prop_map(move |coeffs| {
                let mut f = Form::zero(6);
                for (m, c) in monomials.iter().zip(coeffs) {
                    f = f.add(&Form::monomial(6, *m, c).unwrap()).unwrap();
                }
                f
            })
        }

        fn graded_pair() -> impl Strategy<Value = (usize, usize, Form, Form)> {
            (0usize..=3, 0usize..=3)
                .prop_flat_map(|(p, q)| (Just(p), Just(q), homogeneous(p), homogeneous(q)))
        }

        proptest! {
            #[test]
            fn wedge_is_graded_commutative((p, q, phi, psi) in graded_pair()) {
                let lhs = phi.wedge(&psi).unwrap();
                let mut rhs = psi.wedge(&phi).unwrap();
                if (p * q) % 2 == 1 {
                    rhs = rhs.neg();
                }
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn wedge_is_associative(
                (phi, psi, chi) in (homogeneous(1), homogeneous(1), homogeneous(2)),
            ) {
                let lhs = phi.wedge(&psi).unwrap().wedge(&chi).unwrap();
                let rhs = phi.wedge(&psi.wedge(&chi).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn contraction_is_an_antiderivation(
                (phi, psi) in (homogeneous(2), homogeneous(3)),
                v in proptest::collection::vec(coeff(), 6),
            ) {
                let product = phi.wedge(&psi).unwrap();
                let lhs = product.contract(&v).unwrap();
                // deg(phi) = 2 is even, so no sign on the second summand.
                let rhs = phi
                    .contract(&v)
                    .unwrap()
                    .wedge(&psi)
                    .unwrap()
                    .add(&phi.wedge(&psi.contract(&v).unwrap()).unwrap())
                    .unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn rank_plus_nullity_is_domain_dim(phi in homogeneous(1)) {
                // Wedge with a random 1-form phi, acting on all 1-forms.
                let domain: Vec<Form> = basis_of_degree(6, 1)
                    .into_iter()
                    .map(|m| Form::monomial(6, m, CScalar::one()).unwrap())
                    .collect();
                let op = FormOperator::from_map(domain, |f| f.wedge(&phi)).unwrap();
                prop_assert_eq!(op.rank() + op.kernel().len(), op.domain_dim());
            }
        }
    }
}
