//! SU(3)-structures (omega, Omega) on six-dimensional Lie algebras: the
//! almost complex structure induced by a decomposable complex 3-form, the
//! compatibility / positivity / normalization checks, and the two
//! supersymmetry-type predicates.
//!
//! Conventions. Omega is carried as a triple psi^1, psi^2, psi^3 of complex
//! 1-forms with Omega = psi^1 ^ psi^2 ^ psi^3. The induced J is -i on
//! T^{0,1} = { v : i_v Omega = 0 } and +i on its conjugate. A pair is
//! *normalized* when Omega ^ conj(Omega) = s * (2i)^3 * omega^3/3! for some
//! positive rational s; the report carries the exact volume ratio and s
//! rather than rescaling anything.

use num_traits::Signed;
use serde::Serialize;

use crate::exterior::{basis_of_degree, ExteriorError, Form, MultiIndex};
use crate::lie::{LieAlgebra, LieError};
use crate::matrix::{Matrix, MatrixError};
use crate::scalar::{CScalar, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Su3Error {
    #[error("exterior algebra error: {0}")]
    Exterior(#[from] ExteriorError),
    #[error("Lie algebra error: {0}")]
    Lie(#[from] LieError),
    #[error("matrix error: {0}")]
    Matrix(#[from] MatrixError),
    #[error("structures need a 6-dimensional algebra, got {0}")]
    NotSixDimensional(u8),
    #[error("the 2-form must be real")]
    OmegaNotReal,
    #[error("the 2-form must have pure grade 2")]
    OmegaNotTwoForm,
    #[error("psi^{0} must have pure grade 1")]
    PsiNotOneForm(u8),
    #[error("the annihilator of the 3-form has complex dimension {0}, need 3")]
    KernelDimension(usize),
    #[error("the annihilator of the 3-form meets its conjugate")]
    KernelMeetsConjugate,
    #[error("the induced endomorphism is not real")]
    AcsNotReal,
    #[error("the 3-form is zero")]
    ZeroThreeForm,
}

/// An SU(3)-structure candidate: a real nondegenerate-looking 2-form and a
/// complex 3-form given by its three 1-form factors. All verification is
/// done by [`su3_check`], [`is_type_iia`] and [`is_type_iib`]; constructing
/// the value only validates shapes.
#[derive(Debug, Clone)]
pub struct SU3Structure {
    algebra: LieAlgebra,
    omega: Form,
    psi: [Form; 3],
}

impl SU3Structure {
    pub fn new(algebra: LieAlgebra, omega: Form, psi: [Form; 3]) -> Result<Self, Su3Error> {
        if algebra.dimension() != 6 {
            return Err(Su3Error::NotSixDimensional(algebra.dimension()));
        }
        if omega.terms().any(|(_, c)| !c.is_real()) {
            return Err(Su3Error::OmegaNotReal);
        }
        if !omega.is_zero() && omega.homogeneous_degree() != Some(2) {
            return Err(Su3Error::OmegaNotTwoForm);
        }
        for (k, p) in psi.iter().enumerate() {
            if p.is_zero() || p.homogeneous_degree() != Some(1) {
                return Err(Su3Error::PsiNotOneForm(k as u8 + 1));
            }
        }
        Ok(SU3Structure { algebra, omega, psi })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn psi(&self) -> &[Form; 3] {
        &self.psi
    }

    /// Omega = psi^1 ^ psi^2 ^ psi^3, decomposable by construction.
    pub fn big_omega(&self) -> Form {
        self.psi[0]
            .wedge(&self.psi[1])
            .and_then(|f| f.wedge(&self.psi[2]))
            .expect("psi factors share the coframe dimension")
    }
}

/// The standard symplectic form sum_k e^k ^ e^{k+3} in the fiber-first
/// index convention.
pub fn standard_omega() -> Form {
    let mut omega = Form::zero(6);
    for k in 1..=3u8 {
        omega = omega
            .add(&Form::basis_monomial(6, &[k, k + 3]).expect("valid indices"))
            .expect("same dimension");
    }
    omega
}

/// The standard holomorphic coframe psi^k = e^k + i e^{k+3}.
pub fn standard_psi() -> [Form; 3] {
    let psi_k = |k: u8| {
        Form::basis_monomial(6, &[k])
            .expect("valid index")
            .add(&Form::basis_monomial(6, &[k + 3]).expect("valid index").scale(&CScalar::i()))
            .expect("same dimension")
    };
    [psi_k(1), psi_k(2), psi_k(3)]
}

/// The standard structure on a given 6-dimensional algebra.
pub fn standard_structure(algebra: LieAlgebra) -> Result<SU3Structure, Su3Error> {
    SU3Structure::new(algebra, standard_omega(), standard_psi())
}

/// True iff (i_v Omega) ^ Omega = 0 for every frame vector v, the exact
/// criterion for a 3-form in six dimensions to be a product of 1-forms
/// (over C, for complex coefficients).
pub fn decomposability_check(omega3: &Form) -> Result<bool, Su3Error> {
    let n = omega3.dimension();
    for k in 1..=n {
        let contracted = omega3.contract_basis(k)?;
        if !contracted.wedge(omega3)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The almost complex structure induced by a complex 3-form on a
/// 6-dimensional coframe: J = -i on T^{0,1} = ker(v -> i_v Omega), +i on
/// the conjugate space. Fails when the kernel does not have complex
/// dimension 3, meets its conjugate, or yields a non-real endomorphism.
pub fn acs_from_three_form(omega3: &Form) -> Result<Matrix<Scalar>, Su3Error> {
    if omega3.is_zero() {
        return Err(Su3Error::ZeroThreeForm);
    }
    let n = omega3.dimension();
    if n != 6 {
        return Err(Su3Error::NotSixDimensional(n));
    }
    // Columns: coordinates of i_{E_j} Omega over the 2-form monomials.
    let rows: Vec<MultiIndex> = basis_of_degree(6, 2);
    let contractions: Vec<Form> = (1..=6u8)
        .map(|j| omega3.contract_basis(j))
        .collect::<Result<_, _>>()?;
    let contraction_matrix =
        Matrix::from_fn(rows.len(), 6, |r, c| contractions[c].coeff(rows[r]));
    let kernel = contraction_matrix.kernel_basis();
    if kernel.len() != 3 {
        return Err(Su3Error::KernelDimension(kernel.len()));
    }
    // B = [conj(kernel) | kernel]: eigencolumns for +i, then -i. The two
    // spaces are transverse iff B is invertible.
    let b = Matrix::from_fn(6, 6, |r, c| {
        if c < 3 {
            kernel[c][r].conj()
        } else {
            kernel[c - 3][r].clone()
        }
    });
    let b_inv = match b.inverse() {
        Ok(inv) => inv,
        Err(MatrixError::Singular) => return Err(Su3Error::KernelMeetsConjugate),
        Err(e) => return Err(Su3Error::Matrix(e)),
    };
    let diag = Matrix::from_fn(6, 6, |r, c| {
        if r != c {
            CScalar::zero()
        } else if r < 3 {
            CScalar::i()
        } else {
            -CScalar::i()
        }
    });
    let j_complex = b.mul(&diag)?.mul(&b_inv)?;
    let mut j_real = Matrix::zero(6, 6);
    for r in 0..6 {
        for c in 0..6 {
            let entry = j_complex.at(r, c);
            if !entry.is_real() {
                return Err(Su3Error::AcsNotReal);
            }
            *j_real.at_mut(r, c) = entry.re.clone();
        }
    }
    Ok(j_real)
}

/// The antisymmetric coefficient matrix W with W_ij = omega(E_i, E_j).
fn omega_matrix(omega: &Form) -> Matrix<Scalar> {
    Matrix::from_fn(6, 6, |r, c| {
        let (i, j) = (r as u8 + 1, c as u8 + 1);
        if i == j {
            return Scalar::zero();
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let coeff = omega.coeff(MultiIndex::from_indices(&[lo, hi]).expect("distinct"));
        let value = coeff.re;
        if i < j {
            value
        } else {
            -value
        }
    })
}

/// Result of the four-part SU(3) verification. `volume_ratio` is the exact
/// quotient Omega ^ conj(Omega) / (omega^3/3!); `scale` is the positive
/// rational s with ratio = s * (2i)^3 when the pair is normalized.
#[derive(Debug, Clone, Serialize)]
pub struct Su3Report {
    pub j_exists: bool,
    pub omega_compatible: bool,
    pub positive: bool,
    pub normalized: bool,
    pub volume_ratio: Option<CScalar>,
    pub scale: Option<String>,
    pub failure: Option<String>,
}

impl Su3Report {
    pub fn all_passed(&self) -> bool {
        self.j_exists && self.omega_compatible && self.positive && self.normalized
    }

    fn failed(reason: String) -> Self {
        Su3Report {
            j_exists: false,
            omega_compatible: false,
            positive: false,
            normalized: false,
            volume_ratio: None,
            scale: None,
            failure: Some(reason),
        }
    }
}

/// Exact scale s when `ratio` = s * (2i)^3 = -8si with s a positive
/// rational; `None` otherwise.
fn normalization_scale(ratio: &CScalar) -> Option<Rational> {
    if !ratio.re.is_zero() {
        return None;
    }
    let im = ratio.im.as_rational()?;
    if !im.is_negative() {
        return None;
    }
    Some(-im / crate::scalar::rat(8, 1))
}

/// Run the four checks: J exists (kernel construction), omega is (1,1) for
/// J, the symmetric form g(v, w) = omega(v, Jw) is positive definite
/// (Sylvester minors over the exact ordered field), and the pair is
/// normalized up to a positive rational scale.
pub fn su3_check(s: &SU3Structure) -> Su3Report {
    let big_omega = s.big_omega();
    let j = match acs_from_three_form(&big_omega) {
        Ok(j) => j,
        Err(e) => return Su3Report::failed(e.to_string()),
    };
    let w = omega_matrix(s.omega());
    // (1,1) condition: omega(Jv, Jw) = omega(v, w), i.e. J^T W J = W.
    let jt_w_j = j
        .transpose()
        .mul(&w)
        .and_then(|m| m.mul(&j))
        .expect("6x6 shapes");
    let omega_compatible = jt_w_j == w;

    // Metric g = W J: g_ij = omega(E_i, J E_j); require symmetry and
    // positive leading principal minors.
    let g = w.mul(&j).expect("6x6 shapes");
    let positive = g == g.transpose()
        && (1..=6).all(|k| {
            let minor = Matrix::from_fn(k, k, |r, c| g.at(r, c).clone());
            minor.det().map(|d| d.is_positive()).unwrap_or(false)
        });

    // Volume ratio Omega ^ conj(Omega) / (omega^3 / 3!).
    let top = MultiIndex::from_indices(&[1, 2, 3, 4, 5, 6]).expect("distinct");
    let omega_cubed = s
        .omega()
        .wedge(s.omega())
        .and_then(|f| f.wedge(s.omega()))
        .expect("same dimension");
    let denominator = omega_cubed.coeff(top).scale_rational(&crate::scalar::rat(1, 6));
    let numerator = big_omega
        .wedge(&big_omega.conj())
        .expect("same dimension")
        .coeff(top);
    let (volume_ratio, scale) = if denominator.is_zero() {
        (None, None)
    } else {
        let ratio = numerator
            .checked_div(&denominator)
            .expect("nonzero denominator");
        let scale = normalization_scale(&ratio);
        (Some(ratio), scale)
    };
    let normalized = scale.is_some();

    Su3Report {
        j_exists: true,
        omega_compatible,
        positive,
        normalized,
        volume_ratio,
        scale: scale.map(|s| s.to_string()),
        failure: None,
    }
}

/// dω = 0 and d Re(Ω) = 0 (symplectic half-flat).
pub fn is_type_iia(s: &SU3Structure) -> Result<bool, Su3Error> {
    let g = s.algebra();
    let d_omega = g.ce_d(s.omega())?;
    let big_omega = s.big_omega();
    let re_omega = big_omega
        .add(&big_omega.conj())?
        .scale_rational(&crate::scalar::rat(1, 2));
    let d_re = g.ce_d(&re_omega)?;
    Ok(d_omega.is_zero() && d_re.is_zero())
}

/// d(ω ∧ ω) = 0 and dΩ = 0 (balanced with holomorphically trivial
/// canonical bundle; closedness of Ω certifies integrability).
pub fn is_type_iib(s: &SU3Structure) -> Result<bool, Su3Error> {
    let g = s.algebra();
    let omega_sq = s.omega().wedge(s.omega())?;
    let d_omega_sq = g.ce_d(&omega_sq)?;
    let d_big = g.ce_d(&s.big_omega())?;
    Ok(d_omega_sq.is_zero() && d_big.is_zero())
}

/// Independent integrability test: d(psi^k) has no (0,2)-component, i.e.
/// contracting d(psi^k) with two antiholomorphic vectors gives zero for
/// every pair from the kernel basis of Omega.
pub fn integrability_check(s: &SU3Structure) -> Result<bool, Su3Error> {
    let big_omega = s.big_omega();
    // Recompute the antiholomorphic frame directly from Omega.
    let rows: Vec<MultiIndex> = basis_of_degree(6, 2);
    let contractions: Vec<Form> = (1..=6u8)
        .map(|j| big_omega.contract_basis(j))
        .collect::<Result<_, _>>()?;
    let contraction_matrix =
        Matrix::from_fn(rows.len(), 6, |r, c| contractions[c].coeff(rows[r]));
    let kernel = contraction_matrix.kernel_basis();
    if kernel.len() != 3 {
        return Err(Su3Error::KernelDimension(kernel.len()));
    }
    for psi in s.psi() {
        let d_psi = s.algebra().ce_d(psi)?;
        for v in &kernel {
            let once = d_psi.contract(v)?;
            for w in &kernel {
                if !once.contract(w)?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
