//! Built-in example algebras with hand-checked structure constants.
//!
//! These are the reference objects the test suite measures everything
//! against, so their tensors are written out literally (not produced by the
//! library's own constructions — that would make the golden comparisons
//! circular).

use crate::algebra::{signed_permutations, BracketTensor, NAryBiHomAlgebra};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::scalar::{Field, Scalar};

/// Installs value on the full signed orbit of a generator tuple: every
/// permutation of the arguments gets the sign of the permutation. Only valid
/// for totally skew brackets with distinct generator indices.
fn set_skew_orbit(t: &mut BracketTensor, args: &[usize], value: &Vector) -> Result<()> {
    for (perm, sign) in signed_permutations(args.len()) {
        let permuted: Vec<usize> = perm.iter().map(|&p| args[p]).collect();
        let v: Vector = if sign < 0 {
            value.iter().map(Scalar::neg).collect()
        } else {
            value.clone()
        };
        t.set(&permuted, v)?;
    }
    Ok(())
}

fn sparse_vec(field: Field, dim: usize, entries: &[(usize, i64)]) -> Vector {
    let mut v = vec![field.zero(); dim];
    for &(i, c) in entries {
        v[i] = field.from_i64(c);
    }
    v
}

/// The totally skew 4-dimensional ternary bracket
///   [e₁,e₂,e₃] = −e₄, [e₁,e₂,e₄] = e₃, [e₁,e₃,e₄] = −e₂, [e₂,e₃,e₄] = e₁
/// over the given field (entries are ±1, so any field works).
pub fn ternary_bracket_dim4(field: Field) -> BracketTensor {
    let mut t = BracketTensor::new(field, 3, 4).expect("static shape");
    set_skew_orbit(&mut t, &[0, 1, 2], &sparse_vec(field, 4, &[(3, -1)])).unwrap();
    set_skew_orbit(&mut t, &[0, 1, 3], &sparse_vec(field, 4, &[(2, 1)])).unwrap();
    set_skew_orbit(&mut t, &[0, 2, 3], &sparse_vec(field, 4, &[(1, -1)])).unwrap();
    set_skew_orbit(&mut t, &[1, 2, 3], &sparse_vec(field, 4, &[(0, 1)])).unwrap();
    t
}

/// The order-two twist pair used with the ternary bracket:
/// α: e₁↦−e₂, e₂↦−e₁, e₃↦−e₄, e₄↦−e₃ and β = −α. Both are bracket
/// automorphisms, they commute, and α² = β² = id.
pub fn ternary_twist_pair(field: Field) -> (Matrix, Matrix) {
    let mut alpha = Matrix::zero(field, 4, 4);
    let m1 = field.from_i64(-1);
    alpha.set(1, 0, m1.clone());
    alpha.set(0, 1, m1.clone());
    alpha.set(3, 2, m1.clone());
    alpha.set(2, 3, m1);
    let beta = alpha.neg();
    (alpha, beta)
}

/// The 4-dim ternary algebra with identity twists: a plain n-Lie algebra
/// viewed as a BiHom-Lie algebra.
pub fn ternary_nlie_dim4_identity() -> NAryBiHomAlgebra {
    let field = Field::Q;
    let id = Matrix::identity(field, 4);
    NAryBiHomAlgebra::new(ternary_bracket_dim4(field), id.clone(), id).expect("static shape")
}

/// The same ternary bracket carrying the inducing twist pair (α, β = −α).
/// This is the seed document for the twist-induction construction.
pub fn ternary_nlie_dim4_with_twists() -> NAryBiHomAlgebra {
    let field = Field::Q;
    let (alpha, beta) = ternary_twist_pair(field);
    NAryBiHomAlgebra::new(ternary_bracket_dim4(field), alpha, beta).expect("static shape")
}

/// The twist-induced ternary BiHom-Lie algebra, written out literally:
///   [e₁,e₂,e₃] = −e₃, [e₁,e₂,e₄] = e₄, [e₁,e₃,e₄] = −e₁, [e₂,e₃,e₄] = e₂
/// (totally skew), with the same twist pair. Hand-derived from
/// [x₁,x₂,x₃]' = [α(x₁), α(x₂), β(x₃)] = −α([x₁,x₂,x₃]).
pub fn twisted_ternary_dim4() -> NAryBiHomAlgebra {
    let field = Field::Q;
    let mut t = BracketTensor::new(field, 3, 4).expect("static shape");
    set_skew_orbit(&mut t, &[0, 1, 2], &sparse_vec(field, 4, &[(2, -1)])).unwrap();
    set_skew_orbit(&mut t, &[0, 1, 3], &sparse_vec(field, 4, &[(3, 1)])).unwrap();
    set_skew_orbit(&mut t, &[0, 2, 3], &sparse_vec(field, 4, &[(0, -1)])).unwrap();
    set_skew_orbit(&mut t, &[1, 2, 3], &sparse_vec(field, 4, &[(1, 1)])).unwrap();
    let (alpha, beta) = ternary_twist_pair(field);
    NAryBiHomAlgebra::new(t, alpha, beta).expect("static shape")
}

/// The 2-dimensional binary BiHom-Lie family parameterized by nonzero
/// rationals m, n:
///   [e₁,e₁] = 0,            [e₁,e₂] = m·e₂ − n·e₁,
///   [e₂,e₁] = (n−1)e₁ − (m(n−1)/n)e₂,   [e₂,e₂] = −(n/m)e₁ + e₂,
/// with α(e₁) = e₁, α(e₂) = (1/m)e₁ + ((n−1)/n)e₂ and β = id.
pub fn twisted_binary_dim2(m: &Scalar, n: &Scalar) -> Result<NAryBiHomAlgebra> {
    let field = Field::Q;
    if m.field() != field || n.field() != field {
        return Err(Error::FieldMismatch);
    }
    if m.is_zero() || n.is_zero() {
        return Err(Error::InvalidParams(
            "parameters m and n must be nonzero".into(),
        ));
    }
    let one = field.one();
    let n_minus_1 = n.sub(&one);
    let mut t = BracketTensor::new(field, 2, 2)?;
    // [e₁,e₂] = −n e₁ + m e₂
    t.set(&[0, 1], vec![n.neg(), m.clone()])?;
    // [e₂,e₁] = (n−1) e₁ − (m(n−1)/n) e₂
    t.set(&[1, 0], vec![n_minus_1.clone(), m.mul(&n_minus_1).div(n).neg()])?;
    // [e₂,e₂] = −(n/m) e₁ + e₂
    t.set(&[1, 1], vec![n.div(m).neg(), one.clone()])?;

    let mut alpha = Matrix::identity(field, 2);
    alpha.set(0, 1, one.div(m));
    alpha.set(1, 1, n_minus_1.div(n));
    let beta = Matrix::identity(field, 2);
    NAryBiHomAlgebra::new(t, alpha, beta)
}

/// A 3-dimensional binary Lie algebra with identity twists: [e₂,e₃] = e₃
/// and a central line 𝕂e₁. Its twisted-trace space is 2-dimensional, which
/// makes the trace-induction checks non-vacuous.
pub fn solvable_binary_dim3() -> NAryBiHomAlgebra {
    let field = Field::Q;
    let mut t = BracketTensor::new(field, 2, 3).expect("static shape");
    t.set(&[1, 2], sparse_vec(field, 3, &[(2, 1)])).unwrap();
    t.set(&[2, 1], sparse_vec(field, 3, &[(2, -1)])).unwrap();
    let id = Matrix::identity(field, 3);
    NAryBiHomAlgebra::new(t, id.clone(), id).expect("static shape")
}

/// The reproduction corpus: every algebra the cross-cutting theorem and
/// space criteria run over. Names are stable identifiers used in reports.
pub fn corpus() -> Vec<(String, NAryBiHomAlgebra)> {
    let twisted = twisted_ternary_dim4();
    let textension = crate::constructions::t_extension(&twisted)
        .expect("t-extension of a built-in")
        .algebra;
    vec![
        ("twisted-ternary-dim4".into(), twisted),
        ("twisted-ternary-dim4-textension".into(), textension),
        ("ternary-nlie-dim4".into(), ternary_nlie_dim4_identity()),
        ("solvable-binary-dim3".into(), solvable_binary_dim3()),
    ]
}
