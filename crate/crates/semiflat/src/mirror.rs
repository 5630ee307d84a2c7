//! Mirror-pair construction from 3-dimensional affine Lie data.
//!
//! The input is a 3-dimensional Lie algebra together with the differential
//! of an affine action: three matrices R_i giving the linear part on each
//! frame direction and an invertible twist matrix tau (the differential of
//! the developing map at the identity). From one datum two 6-dimensional
//! algebras are built, a semidirect product with the dual representation
//! (the symplectic side, here called IIA) and one with the representation
//! itself (the complex side, IIB), each carrying the standard pair
//! omega = sum e^k ^ e^{k+3}, Omega = wedge of (e^k + i e^{k+3}) in the
//! fiber-first coframe order. The module also performs the exact lattice
//! checks for the holonomy generators of the solvable families where a
//! quadratic unit u with u + 1/u = m enters.

use num_traits::Signed;
use serde::Serialize;

use crate::exterior::{basis_of_degree, coords_in_basis, ExteriorError, Form};
use crate::lie::{parse_salamon, LieAlgebra, LieError, Params};
use crate::matrix::{Matrix, MatrixError};
use crate::scalar::{rat, CScalar, FieldContext, Rational, Scalar, ScalarError};
use crate::su3::{standard_structure, SU3Structure, Su3Error};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MirrorError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Su3(#[from] Su3Error),
    #[error("the base algebra must be 3-dimensional, got {0}")]
    BaseDimension(u8),
    #[error("each linear-part matrix must be 3x3")]
    LinearPartShape,
    #[error("the twist matrix must be an invertible 3x3 matrix")]
    TwistShape,
    #[error("affine axioms failed: {0:?}")]
    AffineAxioms(AffineCheckReport),
    #[error("family {0} needs a lambda parameter")]
    LambdaRequired(&'static str),
    #[error("lambda = {0} is excluded for this family")]
    LambdaExcluded(String),
    #[error("family {0} takes no lambda parameter")]
    LambdaUnused(&'static str),
    #[error("the trace parameter must be an integer >= 3, got {0}")]
    TraceTooSmall(i64),
    #[error("coframe scale {0} is zero")]
    ScaleZero(usize),
    #[error("expected {need} coframe scales, got {got}")]
    ScaleCount { got: usize, need: usize },
    #[error("coframe image {0} must be a 1-form")]
    ImageShape(usize),
}

/// One affine datum: base algebra, linear parts R_i = differential of the
/// representation on the i-th frame direction, and the twist tau.
#[derive(Debug, Clone)]
pub struct AffineStructureData {
    pub name: String,
    pub base: LieAlgebra,
    pub rho: [Matrix<Scalar>; 3],
    pub tau: Matrix<Scalar>,
    pub params: Params,
}

impl AffineStructureData {
    pub fn new(
        name: impl Into<String>,
        base: LieAlgebra,
        rho: [Matrix<Scalar>; 3],
        tau: Matrix<Scalar>,
        params: Params,
    ) -> Result<Self, MirrorError> {
        if base.dimension() != 3 {
            return Err(MirrorError::BaseDimension(base.dimension()));
        }
        if rho.iter().any(|r| r.rows() != 3 || r.cols() != 3) {
            return Err(MirrorError::LinearPartShape);
        }
        if tau.rows() != 3 || tau.cols() != 3 || tau.inverse().is_err() {
            return Err(MirrorError::TwistShape);
        }
        Ok(AffineStructureData { name: name.into(), base, rho, tau, params })
    }
}

/// Outcome of the three affine axioms; all must hold for the datum to
/// describe a left-invariant complete affine structure at the algebra level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AffineCheckReport {
    /// [R_i, R_j] = sum_k c^k_ij R_k.
    pub rho_homomorphism: bool,
    /// Associator of x*y = tau^-1 R_x (tau y) symmetric in x, y.
    pub left_symmetric: bool,
    /// x*y - y*x = [x, y].
    pub commutator_compatible: bool,
}

impl AffineCheckReport {
    pub fn all_passed(&self) -> bool {
        self.rho_homomorphism && self.left_symmetric && self.commutator_compatible
    }
}

fn complexify(m: &Matrix<Scalar>) -> Matrix<CScalar> {
    Matrix::from_fn(m.rows(), m.cols(), |r, c| CScalar::from(m.at(r, c).clone()))
}

fn column(m: &Matrix<CScalar>, c: usize) -> Vec<CScalar> {
    (0..m.rows()).map(|r| m.at(r, c).clone()).collect()
}

/// Verify the affine axioms on the frame basis, which suffices by
/// bilinearity. Failures land in the report, not in an error.
pub fn affine_data_check(data: &AffineStructureData) -> Result<AffineCheckReport, MirrorError> {
    let r: Vec<Matrix<CScalar>> = data.rho.iter().map(complexify).collect();
    let tau = complexify(&data.tau);
    let tau_inv = tau.inverse()?;
    // Left multiplications of the induced product: E_a * E_b = column b of
    // P_a with P_a = tau^-1 R_a tau.
    let p: Vec<Matrix<CScalar>> = r
        .iter()
        .map(|ra| tau_inv.mul(ra).and_then(|m| m.mul(&tau)))
        .collect::<Result<_, _>>()?;

    let c = |k: usize, i: usize, j: usize| {
        data.base.structure_constant(k as u8 + 1, i as u8 + 1, j as u8 + 1)
    };

    let mut rho_homomorphism = true;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let mut expected = Matrix::zero(3, 3);
            for (k, rk) in r.iter().enumerate() {
                expected = expected.add(&rk.scale(&c(k, i, j)))?;
            }
            if r[i].commutator(&r[j])? != expected {
                rho_homomorphism = false;
            }
        }
    }

    let mut commutator_compatible = true;
    for a in 0..3 {
        for b in (a + 1)..3 {
            for k in 0..3 {
                let got = p[a]
                    .at(k, b)
                    .checked_sub(p[b].at(k, a))
                    .expect("one field context");
                if got != c(k, a, b) {
                    commutator_compatible = false;
                }
            }
        }
    }

    // Associator A(a,b,c) = (E_a*E_b)*E_c - E_a*(E_b*E_c), expanded over
    // the basis: sum_k (P_a)_{k,b} P_k e_c - P_a P_b e_c.
    let associator = |a: usize, b: usize, cc: usize| -> Result<Vec<CScalar>, MirrorError> {
        let mut first = vec![CScalar::zero(); 3];
        for (k, pk) in p.iter().enumerate() {
            let weight = p[a].at(k, b);
            if weight.is_zero() {
                continue;
            }
            for (row, acc) in first.iter_mut().enumerate() {
                let term = weight.checked_mul(pk.at(row, cc)).expect("one field context");
                *acc = acc.checked_add(&term).expect("one field context");
            }
        }
        let second = p[a].mul_vec(&column(&p[b], cc))?;
        Ok(first
            .into_iter()
            .zip(second)
            .map(|(f, s)| f.checked_sub(&s).expect("one field context"))
            .collect())
    };
    let mut left_symmetric = true;
    for a in 0..3 {
        for b in (a + 1)..3 {
            for cc in 0..3 {
                if associator(a, b, cc)? != associator(b, a, cc)? {
                    left_symmetric = false;
                }
            }
        }
    }

    Ok(AffineCheckReport { rho_homomorphism, left_symmetric, commutator_compatible })
}

/// The two constructed 6-dimensional algebras with their standard pairs.
/// Fiber indices are 1..3 and base indices 4..6 on both sides.
#[derive(Debug, Clone)]
pub struct MirrorPair {
    pub name: String,
    pub params: Params,
    pub iia: SU3Structure,
    pub iib: SU3Structure,
}

fn fiber_generator(j: usize) -> Form {
    Form::basis_monomial(6, &[j as u8 + 1]).expect("fiber index in range")
}

/// Build both semidirect products from one affine datum. The base coframe
/// enters through eps^i = sum_l (tau^-1)_{i,l} e^{3+l}, the fiber
/// differentials through the linear parts (dual representation on the IIA
/// side, the representation itself with a sign on the IIB side), and the
/// base differentials are the twisted lifts of the 3-dimensional ones.
pub fn build_mirror_pair(data: &AffineStructureData) -> Result<MirrorPair, MirrorError> {
    let report = affine_data_check(data)?;
    if !report.all_passed() {
        return Err(MirrorError::AffineAxioms(report));
    }
    let tau_inv = data.tau.inverse()?;
    let eps: Vec<Form> = (0..3)
        .map(|i| {
            let mut acc = Form::zero(6);
            for l in 0..3 {
                let coeff = CScalar::from(tau_inv.at(i, l).clone());
                if !coeff.is_zero() {
                    let gen = Form::basis_monomial(6, &[l as u8 + 4])?;
                    acc = acc.add(&gen.scale(&coeff))?;
                }
            }
            Ok(acc)
        })
        .collect::<Result<_, MirrorError>>()?;

    let mut d_iia: Vec<Form> = Vec::with_capacity(6);
    let mut d_iib: Vec<Form> = Vec::with_capacity(6);
    for k in 0..3 {
        let mut da = Form::zero(6);
        let mut db = Form::zero(6);
        for (i, eps_i) in eps.iter().enumerate() {
            for j in 0..3 {
                let dual = CScalar::from(data.rho[i].at(j, k).clone());
                if !dual.is_zero() {
                    da = da.add(&eps_i.wedge(&fiber_generator(j))?.scale(&dual))?;
                }
                let direct = CScalar::from(data.rho[i].at(k, j).clone());
                if !direct.is_zero() {
                    db = db.sub(&eps_i.wedge(&fiber_generator(j))?.scale(&direct))?;
                }
            }
        }
        d_iia.push(da);
        d_iib.push(db);
    }
    for k in 0..3 {
        let mut d = Form::zero(6);
        for j in 0..3 {
            let weight = CScalar::from(data.tau.at(k, j).clone());
            if weight.is_zero() {
                continue;
            }
            let lifted = data.base.d_of_generator(j as u8 + 1).substitute(&eps)?;
            d = d.add(&lifted.scale(&weight))?;
        }
        d_iia.push(d.clone());
        d_iib.push(d);
    }

    let iia = LieAlgebra::new(6, d_iia)?;
    let iib = LieAlgebra::new(6, d_iib)?;
    Ok(MirrorPair {
        name: data.name.clone(),
        params: data.params.clone(),
        iia: standard_structure(iia)?,
        iib: standard_structure(iib)?,
    })
}

fn same_differentials(a: &LieAlgebra, b: &LieAlgebra) -> bool {
    a.dimension() == b.dimension()
        && (1..=a.dimension()).all(|k| a.d_of_generator(k) == b.d_of_generator(k))
}

/// Exact coefficient-wise comparison of both constructed coframes against
/// parsed expected listings (equality in the constructed frame, not
/// isomorphism).
pub fn verify_against_listing(
    pair: &MirrorPair,
    expected_iia: &str,
    expected_iib: &str,
    params: &Params,
) -> Result<bool, MirrorError> {
    algebras_match_listing(pair.iia.algebra(), pair.iib.algebra(), expected_iia, expected_iib, params)
}

pub fn algebras_match_listing(
    iia: &LieAlgebra,
    iib: &LieAlgebra,
    expected_iia: &str,
    expected_iib: &str,
    params: &Params,
) -> Result<bool, MirrorError> {
    let parsed_iia = parse_salamon(expected_iia, params)?;
    let parsed_iib = parse_salamon(expected_iib, params)?;
    Ok(same_differentials(iia, &parsed_iia) && same_differentials(iib, &parsed_iib))
}

/// Rewrite the structure equations in the rescaled coframe f^k defined by
/// e^k = scales[k-1] * f^k. Scales must be nonzero.
pub fn rescale_coframe(g: &LieAlgebra, scales: &[CScalar]) -> Result<LieAlgebra, MirrorError> {
    let n = usize::from(g.dimension());
    if scales.len() != n {
        return Err(MirrorError::ScaleCount { got: scales.len(), need: n });
    }
    let mut images = Vec::with_capacity(n);
    for (k, s) in scales.iter().enumerate() {
        if s.is_zero() {
            return Err(MirrorError::ScaleZero(k + 1));
        }
        images.push(Form::basis_monomial(g.dimension(), &[k as u8 + 1])?.scale(s));
    }
    let mut d_new = Vec::with_capacity(n);
    for (k, s) in scales.iter().enumerate() {
        let inv = CScalar::one().checked_div(s)?;
        d_new.push(g.d_of_generator(k as u8 + 1).substitute(&images)?.scale(&inv));
    }
    Ok(LieAlgebra::new(g.dimension(), d_new)?)
}

/// Check that sending the target coframe generator g^k to `images[k-1]`
/// (a 1-form in the source coframe) defines a coframe isomorphism: the
/// images are linearly independent and the map intertwines the two
/// Chevalley-Eilenberg differentials.
pub fn coframe_map_check(
    source: &LieAlgebra,
    target: &LieAlgebra,
    images: &[Form],
) -> Result<bool, MirrorError> {
    let n = target.dimension();
    if images.len() != usize::from(n) {
        return Err(MirrorError::ScaleCount { got: images.len(), need: usize::from(n) });
    }
    for (k, image) in images.iter().enumerate() {
        if image.is_zero() || image.homogeneous_degree() != Some(1) {
            return Err(MirrorError::ImageShape(k + 1));
        }
    }
    let one_forms = basis_of_degree(source.dimension(), 1);
    let coords: Vec<Vec<CScalar>> = images
        .iter()
        .map(|image| coords_in_basis(image, &one_forms))
        .collect::<Result<_, _>>()?;
    let coord_matrix =
        Matrix::from_fn(one_forms.len(), images.len(), |r, c| coords[c][r].clone());
    if coord_matrix.rank() != usize::from(n) {
        return Ok(false);
    }
    for k in 1..=n {
        let lhs = source.ce_d(&images[usize::from(k) - 1])?;
        let rhs = target.d_of_generator(k).substitute(images)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The five catalogued affine structures. Data is stored per family;
/// `instantiate` produces the exact matrices, with lambda required (and
/// excluded from {0, 1}) only for the twisted Heisenberg family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AffineFamily {
    R3Twisted,
    H3Untwisted,
    H3Twisted,
    E11Untwisted,
    E11Twisted,
}

fn int_matrix(entries: [[i64; 3]; 3]) -> Matrix<Scalar> {
    Matrix::from_fn(3, 3, |r, c| Scalar::from_int(entries[r][c]))
}

impl AffineFamily {
    pub const ALL: [AffineFamily; 5] = [
        AffineFamily::R3Twisted,
        AffineFamily::H3Untwisted,
        AffineFamily::H3Twisted,
        AffineFamily::E11Untwisted,
        AffineFamily::E11Twisted,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AffineFamily::R3Twisted => "R3-twisted",
            AffineFamily::H3Untwisted => "H3-untwisted",
            AffineFamily::H3Twisted => "H3-twisted",
            AffineFamily::E11Untwisted => "E11-untwisted",
            AffineFamily::E11Twisted => "E11-twisted",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        let wanted = name.to_ascii_lowercase();
        Self::ALL.into_iter().find(|f| f.name().to_ascii_lowercase() == wanted)
    }

    /// Where the matrices come from: each family's affine action,
    /// differentiated at the identity.
    pub fn note(&self) -> &'static str {
        match self {
            AffineFamily::R3Twisted => {
                "abelian base; twisted simply-transitive affine action with linear parts \
                 E32, E31 and identity twist"
            }
            AffineFamily::H3Untwisted => {
                "Heisenberg base; translation action with the single linear part E32"
            }
            AffineFamily::H3Twisted => {
                "Heisenberg base; lambda-twisted action with linear parts E32, E31 and \
                 twist diag(1, lambda, lambda - 1), lambda outside {0, 1}"
            }
            AffineFamily::E11Untwisted => {
                "solvable E(1,1) base; translation action with linear part diag(0, 1, -1)"
            }
            AffineFamily::E11Twisted => {
                "solvable E(1,1) base; twisted action with linear parts diag(0, 1, -1), \
                 E13, E12"
            }
        }
    }

    pub fn requires_lambda(&self) -> bool {
        matches!(self, AffineFamily::H3Twisted)
    }

    /// The base algebra's structure equations.
    pub fn base_spec(&self) -> &'static str {
        match self {
            AffineFamily::R3Twisted => "(0,0,0)",
            AffineFamily::H3Untwisted | AffineFamily::H3Twisted => "(0,0,-12)",
            AffineFamily::E11Untwisted | AffineFamily::E11Twisted => "(0,-12,13)",
        }
    }

    pub fn instantiate(&self, lambda: Option<&Rational>) -> Result<AffineStructureData, MirrorError> {
        if self.requires_lambda() {
            let lambda = lambda.ok_or(MirrorError::LambdaRequired(self.name()))?;
            if lambda == &rat(0, 1) || lambda == &rat(1, 1) {
                return Err(MirrorError::LambdaExcluded(lambda.to_string()));
            }
        } else if lambda.is_some() {
            return Err(MirrorError::LambdaUnused(self.name()));
        }
        let base = parse_salamon(self.base_spec(), &Params::new())?;
        let zero = int_matrix([[0; 3]; 3]);
        let e32 = int_matrix([[0, 0, 0], [0, 0, 0], [0, 1, 0]]);
        let e31 = int_matrix([[0, 0, 0], [0, 0, 0], [1, 0, 0]]);
        let (rho, tau, params) = match self {
            AffineFamily::R3Twisted => ([e32, e31, zero], int_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), Params::new()),
            AffineFamily::H3Untwisted => {
                ([e32, zero.clone(), zero], int_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), Params::new())
            }
            AffineFamily::H3Twisted => {
                let lambda = lambda.expect("checked above");
                let mut tau = Matrix::zero(3, 3);
                *tau.at_mut(0, 0) = Scalar::one();
                *tau.at_mut(1, 1) = Scalar::from_rational(lambda.clone());
                *tau.at_mut(2, 2) = Scalar::from_rational(lambda - &rat(1, 1));
                let mut params = Params::new();
                params.insert("λ".to_string(), lambda.clone());
                ([e32, e31, zero], tau, params)
            }
            AffineFamily::E11Untwisted => {
                let r1 = int_matrix([[0, 0, 0], [0, 1, 0], [0, 0, -1]]);
                ([r1, zero.clone(), zero], int_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), Params::new())
            }
            AffineFamily::E11Twisted => {
                let r1 = int_matrix([[0, 0, 0], [0, 1, 0], [0, 0, -1]]);
                let e13 = int_matrix([[0, 0, 1], [0, 0, 0], [0, 0, 0]]);
                let e12 = int_matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]]);
                ([r1, e13, e12], int_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), Params::new())
            }
        };
        AffineStructureData::new(self.name(), base, rho, tau, params)
    }

    pub fn build(&self, lambda: Option<&Rational>) -> Result<MirrorPair, MirrorError> {
        build_mirror_pair(&self.instantiate(lambda)?)
    }

    /// The coframe listing each side is verified against. For the twisted
    /// Heisenberg family the listing is stated in the rescaled coframe
    /// (see `listing_scales`), which makes it lambda-free.
    pub fn listed_iia(&self) -> &'static str {
        match self {
            AffineFamily::R3Twisted => "(-35,-34,0,0,0,0)",
            AffineFamily::H3Untwisted => "(0,-34,0,0,0,-45)",
            AffineFamily::H3Twisted => "(-35,-34,0,0,0,-45)",
            AffineFamily::E11Untwisted => "(0,-24,34,0,-45,46)",
            AffineFamily::E11Twisted => "(0,-24-16,34-15,0,-45,46)",
        }
    }

    pub fn listed_iib(&self) -> &'static str {
        match self {
            AffineFamily::R3Twisted => "(0,0,24+15,0,0,0)",
            AffineFamily::H3Untwisted => "(0,0,24,0,0,-45)",
            AffineFamily::H3Twisted => "(0,0,24+15,0,0,-45)",
            AffineFamily::E11Untwisted => "(0,24,-34,0,-45,46)",
            AffineFamily::E11Twisted => "(26+35,24,-34,0,-45,46)",
        }
    }

    /// Diagonal rescaling e^k = s_k f^k taking the constructed coframe to
    /// the listed one, applied on both sides; `None` when the listing is
    /// already in the constructed coframe.
    pub fn listing_scales(&self, lambda: Option<&Rational>) -> Option<Vec<CScalar>> {
        match self {
            AffineFamily::H3Twisted => {
                let lambda = lambda.expect("twisted Heisenberg listings need lambda");
                let mut scales = vec![CScalar::one(); 6];
                scales[4] = CScalar::from_rational(lambda.clone());
                scales[5] = CScalar::from_rational(lambda - &rat(1, 1));
                Some(scales)
            }
            _ => None,
        }
    }

    /// Both algebras rewritten in the listing coframe.
    pub fn listing_coframes(
        &self,
        pair: &MirrorPair,
        lambda: Option<&Rational>,
    ) -> Result<(LieAlgebra, LieAlgebra), MirrorError> {
        match self.listing_scales(lambda) {
            Some(scales) => Ok((
                rescale_coframe(pair.iia.algebra(), &scales)?,
                rescale_coframe(pair.iib.algebra(), &scales)?,
            )),
            None => Ok((pair.iia.algebra().clone(), pair.iib.algebra().clone())),
        }
    }

    /// Build the pair and compare the listing coframes coefficient-exactly.
    pub fn verify_listing(&self, lambda: Option<&Rational>) -> Result<bool, MirrorError> {
        let pair = self.build(lambda)?;
        let (iia, iib) = self.listing_coframes(&pair, lambda)?;
        algebras_match_listing(&iia, &iib, self.listed_iia(), self.listed_iib(), &Params::new())
    }

    /// Signed-permutation image of each abstract coframe generator in the
    /// listing coframe, together with the abstract structure equations the
    /// IIA side is isomorphic to.
    pub fn abstract_iia(&self) -> (&'static str, [(i8, u8); 6]) {
        match self {
            AffineFamily::R3Twisted => (
                "(0,0,0,0,12,13)",
                [(1, 3), (1, 5), (1, 4), (1, 6), (-1, 1), (-1, 2)],
            ),
            AffineFamily::H3Untwisted => (
                "(0,0,0,0,12,13)",
                [(1, 4), (1, 3), (1, 5), (1, 1), (1, 2), (-1, 6)],
            ),
            AffineFamily::H3Twisted => (
                "(0,0,0,12,13,23)",
                [(1, 3), (1, 5), (1, 4), (-1, 1), (-1, 2), (1, 6)],
            ),
            AffineFamily::E11Untwisted => (
                "(15,-25,-35,45,0,0)",
                [(1, 5), (1, 2), (1, 6), (-1, 3), (1, 4), (1, 1)],
            ),
            AffineFamily::E11Twisted => (
                "(16+35,-26+45,36,-46,0,0)",
                [(1, 3), (1, 2), (1, 5), (1, 6), (1, 1), (1, 4)],
            ),
        }
    }

    /// Same for the IIB side.
    pub fn abstract_iib(&self) -> (&'static str, [(i8, u8); 6]) {
        match self {
            AffineFamily::R3Twisted => (
                "(0,0,0,0,0,12+34)",
                [(1, 2), (1, 4), (1, 1), (1, 5), (1, 6), (1, 3)],
            ),
            AffineFamily::H3Untwisted => (
                "(0,0,0,0,12,13)",
                [(1, 4), (-1, 2), (1, 5), (1, 1), (1, 3), (-1, 6)],
            ),
            AffineFamily::H3Twisted => (
                "(0,0,0,0,12,14+23)",
                [(1, 4), (1, 5), (-1, 1), (-1, 2), (-1, 6), (1, 3)],
            ),
            AffineFamily::E11Untwisted => (
                "(15,-25,-35,45,0,0)",
                [(1, 5), (1, 3), (1, 6), (1, 2), (1, 4), (1, 1)],
            ),
            AffineFamily::E11Twisted => (
                "(24+35,26,36,-46,-56,0)",
                [(1, 1), (1, 2), (1, 5), (1, 6), (-1, 3), (1, 4)],
            ),
        }
    }

    /// Build the pair and check both recorded abstract presentations via
    /// `coframe_map_check`.
    pub fn verify_abstract_presentations(
        &self,
        lambda: Option<&Rational>,
    ) -> Result<bool, MirrorError> {
        let pair = self.build(lambda)?;
        let (src_iia, src_iib) = self.listing_coframes(&pair, lambda)?;
        let run = |src: &LieAlgebra, (spec, images): (&str, [(i8, u8); 6])| {
            let target = parse_salamon(spec, &Params::new())?;
            let image_forms: Vec<Form> = images
                .iter()
                .map(|(sign, k)| {
                    let gen = Form::basis_monomial(6, &[*k])?;
                    Ok(if *sign < 0 { gen.neg() } else { gen })
                })
                .collect::<Result<_, MirrorError>>()?;
            coframe_map_check(src, &target, &image_forms)
        };
        Ok(run(&src_iia, self.abstract_iia())? && run(&src_iib, self.abstract_iib())?)
    }
}

/// All five catalogued families.
pub fn affine_catalog() -> Vec<AffineFamily> {
    AffineFamily::ALL.to_vec()
}

/// One element of an affine holonomy group: linear part plus optional
/// translation (None for purely linear generators).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomyGenerator {
    pub linear: Matrix<Scalar>,
    pub translation: Option<Vec<Scalar>>,
}

/// Columns generate the lattice the holonomy is tested against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub columns: Matrix<Scalar>,
}

/// The quadratic unit u with u + 1/u = m, u = (m + sqrt(m^2 - 4)) / 2,
/// in the splitting field of m^2 - 4. Needs m >= 3.
pub fn quadratic_unit(m: i64) -> Result<Scalar, MirrorError> {
    if m < 3 {
        return Err(MirrorError::TraceTooSmall(m));
    }
    let disc = (m * m - 4) as u64;
    let (ctx, scale) = FieldContext::splitting(disc)?;
    let root = match ctx.sqrt() {
        Some(root) => root.checked_mul(&Scalar::from_int(scale as i64))?,
        None => Scalar::from_int(scale as i64),
    };
    let half = Scalar::from_rational(rat(1, 2));
    Ok(Scalar::from_int(m).checked_add(&root)?.checked_mul(&half)?)
}

/// Lattice basis with columns (1,0,0), (0,1,1), (0,u,1/u) for the solvable
/// family with trace parameter m.
pub fn e11_lattice_basis(m: i64) -> Result<LatticeBasis, MirrorError> {
    let u = quadratic_unit(m)?;
    let u_inv = Scalar::one().checked_div(&u)?;
    let z = Scalar::zero;
    let o = Scalar::one;
    let columns = Matrix::new(
        3,
        3,
        vec![o(), z(), z(), z(), o(), u.clone(), z(), o(), u_inv],
    )?;
    Ok(LatticeBasis { columns })
}

/// Holonomy generators of the two solvable families: the diagonal unit
/// action plus either pure translations (untwisted) or the shear-translation
/// pairs of the twisted family.
pub fn e11_holonomy_generators(m: i64, twisted: bool) -> Result<Vec<HolonomyGenerator>, MirrorError> {
    let u = quadratic_unit(m)?;
    let u_inv = Scalar::one().checked_div(&u)?;
    let z = Scalar::zero;
    let o = Scalar::one;
    let diag = Matrix::new(
        3,
        3,
        vec![o(), z(), z(), z(), u.clone(), z(), z(), z(), u_inv.clone()],
    )?;
    let identity = Matrix::identity(3);
    let gens = if twisted {
        let shear_ones = Matrix::new(
            3,
            3,
            vec![o(), o(), o(), z(), o(), z(), z(), z(), o()],
        )?;
        let shear_unit = Matrix::new(
            3,
            3,
            vec![o(), u.clone(), u_inv.clone(), z(), o(), z(), z(), z(), o()],
        )?;
        vec![
            HolonomyGenerator { linear: diag, translation: None },
            HolonomyGenerator {
                linear: shear_ones,
                translation: Some(vec![o(), o(), o()]),
            },
            HolonomyGenerator {
                linear: shear_unit,
                translation: Some(vec![o(), u_inv, u]),
            },
        ]
    } else {
        vec![
            HolonomyGenerator { linear: diag, translation: None },
            HolonomyGenerator {
                linear: identity.clone(),
                translation: Some(vec![z(), o(), o()]),
            },
            HolonomyGenerator {
                linear: identity,
                translation: Some(vec![z(), u, u_inv]),
            },
        ]
    };
    Ok(gens)
}

fn scalar_is_integer(s: &Scalar) -> bool {
    matches!(s.as_rational(), Some(r) if r.is_integer())
}

/// Conjugated linear parts P^-1 M P for inspection and reporting.
pub fn conjugated_generators(
    gens: &[HolonomyGenerator],
    basis: &LatticeBasis,
) -> Result<Vec<Matrix<Scalar>>, MirrorError> {
    let p_inv = basis.columns.inverse()?;
    gens.iter()
        .map(|g| Ok(p_inv.mul(&g.linear)?.mul(&basis.columns)?))
        .collect()
}

/// True iff every conjugated linear part is an integer matrix with
/// determinant +-1, i.e. an automorphism of the lattice.
pub fn holonomy_preserves_lattice(
    gens: &[HolonomyGenerator],
    basis: &LatticeBasis,
) -> Result<bool, MirrorError> {
    for conj in conjugated_generators(gens, basis)? {
        for r in 0..3 {
            for c in 0..3 {
                if !scalar_is_integer(conj.at(r, c)) {
                    return Ok(false);
                }
            }
        }
        let det = conj.det()?;
        let unit = match det.as_rational() {
            Some(r) => r.abs() == rat(1, 1),
            None => false,
        };
        if !unit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Strict mode: the translation parts must also be lattice vectors, i.e.
/// P^-1 t integral for every generator carrying a translation.
pub fn holonomy_translations_in_lattice(
    gens: &[HolonomyGenerator],
    basis: &LatticeBasis,
) -> Result<bool, MirrorError> {
    let p_inv = basis.columns.inverse()?;
    for g in gens {
        if let Some(t) = &g.translation {
            let coords = p_inv.mul_vec(t)?;
            if !coords.iter().all(scalar_is_integer) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
