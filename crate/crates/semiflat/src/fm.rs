//! A formal Fourier-Mukai transform on invariant forms.
//!
//! The transform is modeled combinatorially on three coframe conventions
//! sharing one exterior engine:
//!
//! - the product model, 9 generators: angle forms 1..3 on one side, angle
//!   forms 4..6 on the dual side, base forms 7..9;
//! - the symplectic-side model, 6 generators: angle forms 1..3, base
//!   forms 4..6;
//! - the complex-side model, 6 generators: holomorphic forms 1..3,
//!   antiholomorphic forms 4..6. The polarization switch reinterprets
//!   these as dual angle forms 1..3 and base forms 4..6 with the same
//!   coefficients.
//!
//! All coefficients are constant (the structure matrix is the identity at
//! the identity frame), so fiber integration reduces to extracting the
//! full dual-angle (resp. angle) block with a fixed orientation sign: the
//! block is split off on the right and its top monomial integrates to +1.

use crate::cohomology::DeltaSplit;
use crate::exterior::{ExteriorError, Form, FormOperator, MultiIndex};
use crate::scalar::{rat, CScalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FmError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error("formal side models are 6-dimensional, got dimension {0}")]
    WrongDimension(u8),
}

fn ensure_side_model(phi: &Form) -> Result<(), FmError> {
    if phi.dimension() != 6 {
        return Err(FmError::WrongDimension(phi.dimension()));
    }
    Ok(())
}

/// The polarization switch: a_{IJ} dz_I wedge dzbar_J becomes a_{IJ}
/// (dual angle)_I wedge (base)_J. Both models order their generators the
/// same way, so the switch keeps every mask and coefficient; it is made
/// explicit to mark the change of interpretation.
pub fn polarization_switch(phi: &Form) -> Result<Form, FmError> {
    ensure_side_model(phi)?;
    Ok(phi.clone())
}

/// Inverse of [`polarization_switch`].
pub fn polarization_unswitch(phi: &Form) -> Result<Form, FmError> {
    ensure_side_model(phi)?;
    Ok(phi.clone())
}

/// The curvature of the universal connection on the product model:
/// F = 2i sum_k (dual angle)_k wedge (angle)_k.
pub fn curvature() -> Form {
    let mut f = Form::zero(9);
    let coeff = CScalar::new(Scalar::zero(), Scalar::from_int(-2));
    for k in 1..=3u8 {
        f = f
            .add(&Form::basis_monomial(9, &[k, k + 3]).expect("valid").scale(&coeff))
            .expect("same dimension");
    }
    f
}

/// exp(F/2i) for the forward direction, exp(-F/2i) for the inverse.
fn poincare_kernel(inverse: bool) -> Form {
    let sign = if inverse { 1 } else { -1 };
    let mut exponent = Form::zero(9);
    for k in 1..=3u8 {
        exponent = exponent
            .add(&Form::basis_monomial(9, &[k, k + 3]).expect("valid").scale(&CScalar::from_int(sign)))
            .expect("same dimension");
    }
    exponent.exp_truncated().expect("grade-2 exponent")
}

/// Images realizing an order-preserving relabeling of generators; `map`
/// sends a source index to its target index, or to 0 for indices that
/// must not occur.
fn relabel_images(source_dim: u8, target_dim: u8, map: &[u8]) -> Vec<Form> {
    map.iter()
        .take(usize::from(source_dim))
        .map(|&t| {
            if t == 0 {
                Form::zero(target_dim)
            } else {
                Form::basis_monomial(target_dim, &[t]).expect("valid index")
            }
        })
        .collect()
}

/// Integrate along the fiber spanned by `block` (three product-model
/// indices): keep terms containing the whole block, split the block off
/// on the right, and relabel what remains into a side model.
fn integrate_block(phi: &Form, block: [u8; 3], relabel: &[Form]) -> Result<Form, FmError> {
    let block_index = MultiIndex::from_indices(&block)?;
    let block_form = Form::monomial(9, block_index, CScalar::one())?;
    let mut out = Form::zero(6);
    for (m, c) in phi.terms() {
        if m.bits() & block_index.bits() != block_index.bits() {
            continue;
        }
        let rest = MultiIndex::from_bits(m.bits() & !block_index.bits());
        let rest_form = Form::monomial(9, rest, CScalar::one())?;
        // e_m = sign * e_rest wedge e_block fixes the orientation sign.
        let sign = rest_form.wedge(&block_form)?.coeff(m);
        let scaled = rest_form.substitute(relabel)?.scale(&sign.checked_mul(c).expect("unit sign"));
        out = out.add(&scaled)?;
    }
    Ok(out)
}

/// Forward transform, complex-side model to symplectic-side model: apply
/// the polarization switch, pull back to the product, wedge with
/// exp(F/2i), and integrate along the dual-angle fiber. Sends bidegree
/// (p,q) to (3-p,q).
pub fn fm_transform(phi: &Form) -> Result<Form, FmError> {
    let switched = polarization_switch(phi)?;
    // Dual angle 1..3 -> product 4..6, base 4..6 -> product 7..9.
    let lifted = switched.substitute(&relabel_images(6, 9, &[4, 5, 6, 7, 8, 9]))?;
    let integrand = lifted.wedge(&poincare_kernel(false))?;
    // Product 1..3 -> angle 1..3, product 7..9 -> base 4..6.
    integrate_block(&integrand, [4, 5, 6], &relabel_images(9, 6, &[1, 2, 3, 0, 0, 0, 4, 5, 6]))
}

/// Inverse transform, symplectic-side model to complex-side model: pull
/// back to the product, wedge with exp(-F/2i), integrate along the angle
/// fiber, and undo the polarization switch.
pub fn fm_inverse(phi: &Form) -> Result<Form, FmError> {
    ensure_side_model(phi)?;
    // Angle 1..3 -> product 1..3, base 4..6 -> product 7..9.
    let lifted = phi.substitute(&relabel_images(6, 9, &[1, 2, 3, 7, 8, 9]))?;
    let integrand = lifted.wedge(&poincare_kernel(true))?;
    // Product 4..6 -> dual angle 1..3, product 7..9 -> base 4..6.
    let switched = integrate_block(&integrand, [1, 2, 3], &relabel_images(9, 6, &[0, 0, 0, 1, 2, 3, 4, 5, 6]))?;
    polarization_unswitch(&switched)
}

/// The distinguished real (1,1)-form on the complex side with identity
/// structure matrix: (i/2) sum_k dz_k wedge dzbar_k.
pub fn distinguished_two_form() -> Form {
    let mut omega = Form::zero(6);
    let half_i = CScalar::new(Scalar::zero(), Scalar::from_rational(rat(1, 2)));
    for k in 1..=3u8 {
        omega = omega
            .add(&Form::basis_monomial(6, &[k, k + 3]).expect("valid").scale(&half_i))
            .expect("same dimension");
    }
    omega
}

/// The expected transform of exp(2 * distinguished form): the complex
/// volume form wedge_k (angle_k + i base_k) of the symplectic-side model.
pub fn expected_volume_form() -> Form {
    let mut omega = Form::one(6);
    for k in 1..=3u8 {
        let factor = Form::basis_monomial(6, &[k])
            .expect("valid")
            .add(&Form::basis_monomial(6, &[k + 3]).expect("valid").scale(&CScalar::i()))
            .expect("same dimension");
        omega = omega.wedge(&factor).expect("same dimension");
    }
    omega
}

/// The transform of the exponentiated distinguished form equals the
/// complex volume form; this pins down the orientation convention.
pub fn volume_lemma_check() -> Result<bool, FmError> {
    let exponent = distinguished_two_form().scale(&CScalar::from_int(2));
    let transformed = fm_transform(&exponent.exp_truncated()?)?;
    Ok(transformed == expected_volume_form())
}

/// The transform restricts to a bijection from each (p,q) block onto the
/// (3-p,q) block: every image is pure and the restricted operator has
/// full rank.
pub fn block_bijectivity_check() -> Result<bool, FmError> {
    let split = DeltaSplit::standard();
    for p in 0..=3usize {
        for q in 0..=3usize {
            let domain: Vec<Form> = split.basis_pq(p, q);
            let dim = domain.len();
            let operator = FormOperator::from_map(domain, |phi| {
                fm_transform(phi).map_err(|e| match e {
                    FmError::Exterior(inner) => inner,
                    FmError::WrongDimension(_) => unreachable!("domain forms are 6-dimensional"),
                })
            })?;
            for image in operator.images() {
                if *image != split.project(image, 3 - p, q) {
                    return Ok(false);
                }
            }
            if operator.rank() != dim {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
