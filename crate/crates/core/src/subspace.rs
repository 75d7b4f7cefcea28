//! Canonical subspaces of 𝕂^n and exact Gaussian elimination.
//!
//! Everything downstream (axiom checks, derivation-type spaces, theorem
//! verdicts) reduces to nullspaces and subspace comparisons, so a single
//! canonical form carries the whole library: a subspace is stored as the
//! reduced row echelon basis of its span. Two subspaces are equal iff their
//! stored bases are entrywise equal, which makes "the computed space equals
//! the expected family" a straight `==`.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::scalar::{Field, Scalar};
use std::collections::BTreeMap;

/// Sparse row: (column, value) terms, sorted by column, no zeros.
type Terms = Vec<(usize, Scalar)>;

/// Incremental reduced-row-echelon eliminator.
///
/// Rows are fed one at a time and the stored set is kept in fully reduced
/// form: each stored row has a 1 at its pivot column and zeros at every other
/// pivot column. Feeding order never changes the final pivot set or the
/// canonical row matrix. Rows are handled as (column, value) term lists so
/// the structurally huge but mostly-zero constraint systems coming out of
/// bracket contractions stay cheap; the public API below remains dense.
pub(crate) struct Eliminator {
    field: Field,
    cols: usize,
    /// pivot column → reduced row.
    rows: BTreeMap<usize, Terms>,
}

impl Eliminator {
    pub(crate) fn new(field: Field, cols: usize) -> Eliminator {
        Eliminator { field, cols, rows: BTreeMap::new() }
    }

    pub(crate) fn pivot_cols(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// row := row − c·other, merging sorted term lists.
    fn sub_scaled(row: &Terms, c: &Scalar, other: &Terms) -> Terms {
        let mut out = Vec::with_capacity(row.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < row.len() || j < other.len() {
            match (row.get(i), other.get(j)) {
                (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                    let v = va.sub(&c.mul(vb));
                    if !v.is_zero() {
                        out.push((*ca, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some((ca, va)), Some((cb, _))) if ca < cb => {
                    out.push((*ca, va.clone()));
                    i += 1;
                }
                (Some(_), Some((cb, vb))) => {
                    let v = c.mul(vb).neg();
                    if !v.is_zero() {
                        out.push((*cb, v));
                    }
                    j += 1;
                }
                (Some((ca, va)), None) => {
                    out.push((*ca, va.clone()));
                    i += 1;
                }
                (None, Some((cb, vb))) => {
                    let v = c.mul(vb).neg();
                    if !v.is_zero() {
                        out.push((*cb, v));
                    }
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out
    }

    /// Eliminates all pivot-column entries from `row`. Because stored rows
    /// are fully reduced, pivot rows only carry non-pivot columns besides
    /// their own pivot, so one pass suffices.
    fn reduce(&self, mut row: Terms) -> Terms {
        loop {
            let hit = row
                .iter()
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            match hit {
                Some((c, v)) => row = Self::sub_scaled(&row, &v, &self.rows[&c]),
                None => return row,
            }
        }
    }

    /// Feeds a row given as possibly unsorted, possibly duplicated terms.
    /// Returns true when the row added a new pivot (was independent).
    pub(crate) fn add_terms(&mut self, mut terms: Terms) -> bool {
        terms.sort_by_key(|(c, _)| *c);
        // Combine duplicate columns.
        let mut combined: Terms = Vec::with_capacity(terms.len());
        for (c, v) in terms {
            assert!(c < self.cols, "column {c} out of range {}", self.cols);
            match combined.last_mut() {
                Some((lc, lv)) if *lc == c => *lv = lv.add(&v),
                _ => combined.push((c, v)),
            }
        }
        combined.retain(|(_, v)| !v.is_zero());

        let row = self.reduce(combined);
        let Some((pivot, lead)) = row.first().cloned() else {
            return false;
        };
        // Normalize the pivot entry to 1.
        let inv = lead.inv();
        let row: Terms = row.into_iter().map(|(c, v)| (c, v.mul(&inv))).collect();
        // Back-substitute into every stored row that mentions the new pivot.
        let holders: Vec<usize> = self
            .rows
            .iter()
            .filter(|(_, r)| r.binary_search_by_key(&pivot, |(c, _)| *c).is_ok())
            .map(|(p, _)| *p)
            .collect();
        for p in holders {
            let stored = self.rows.remove(&p).unwrap();
            let coef = stored
                .binary_search_by_key(&pivot, |(c, _)| *c)
                .map(|i| stored[i].1.clone())
                .unwrap();
            self.rows.insert(p, Self::sub_scaled(&stored, &coef, &row));
        }
        self.rows.insert(pivot, row);
        true
    }

    pub(crate) fn add_dense(&mut self, v: &[Scalar]) -> bool {
        let terms: Terms = v
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(c, s)| (c, s.clone()))
            .collect();
        self.add_terms(terms)
    }

    /// Residue of a dense vector after eliminating against the stored rows;
    /// zero iff the vector lies in their span.
    pub(crate) fn reduce_dense(&self, v: &[Scalar]) -> Vector {
        let terms: Terms = v
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(c, s)| (c, s.clone()))
            .collect();
        let reduced = self.reduce(terms);
        let mut out = vec![self.field.zero(); self.cols];
        for (c, s) in reduced {
            out[c] = s;
        }
        out
    }

    /// The stored rows as dense vectors, ordered by pivot column. This is
    /// the canonical reduced-echelon basis of the row space.
    pub(crate) fn dense_rows(&self) -> Vec<Vector> {
        self.rows
            .values()
            .map(|r| {
                let mut out = vec![self.field.zero(); self.cols];
                for (c, s) in r {
                    out[*c] = s.clone();
                }
                out
            })
            .collect()
    }

    /// Basis of {x : Rx = 0} where R is the stored row set, via the standard
    /// free-column construction. Not canonicalized; callers re-reduce.
    pub(crate) fn nullspace_rows(&self) -> Vec<Vector> {
        let mut out = Vec::new();
        for f in 0..self.cols {
            if self.rows.contains_key(&f) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (pivot, row) in &self.rows {
                if let Ok(i) = row.binary_search_by_key(&f, |(c, _)| *c) {
                    v[*pivot] = row[i].1.neg();
                }
            }
            out.push(v);
        }
        out
    }
}

/// Reduced row echelon form of a dense matrix, preserving shape (dependent
/// rows become zero rows at the bottom), plus the pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut e = Eliminator::new(m.field, m.cols);
    for i in 0..m.rows {
        e.add_dense(m.row(i));
    }
    let mut rows = e.dense_rows();
    while rows.len() < m.rows {
        rows.push(vec![m.field.zero(); m.cols]);
    }
    (
        Matrix::from_rows(m.field, rows).expect("rref rows are rectangular"),
        e.pivot_cols(),
    )
}

/// A linear subspace of 𝕂^ambient in canonical form: the basis matrix is in
/// reduced row echelon form with full row rank, so `==` decides equality of
/// subspaces, not just of bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    field: Field,
    basis: Matrix,
}

impl Subspace {
    /// The zero subspace.
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, field, basis: Matrix::zero(field, 0, ambient) }
    }

    /// All of 𝕂^ambient.
    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, field, basis: Matrix::identity(field, ambient) }
    }

    /// Span of the given vectors, canonicalized.
    pub fn from_rows(field: Field, ambient: usize, rows: &[Vector]) -> Result<Subspace> {
        let mut e = Eliminator::new(field, ambient);
        for r in rows {
            if r.len() != ambient {
                return Err(Error::AmbientMismatch(r.len(), ambient));
            }
            for s in r {
                if s.field() != field {
                    return Err(Error::FieldMismatch);
                }
            }
            e.add_dense(r);
        }
        Ok(Subspace::from_eliminator(field, ambient, &e))
    }

    fn from_eliminator(field: Field, ambient: usize, e: &Eliminator) -> Subspace {
        let rows = e.dense_rows();
        Subspace {
            ambient,
            field,
            basis: Matrix::from_rows(field, rows).expect("eliminator rows are rectangular"),
        }
    }

    /// {x : Mx = 0}, canonical.
    pub fn nullspace(m: &Matrix) -> Subspace {
        let mut e = Eliminator::new(m.field, m.cols);
        for i in 0..m.rows {
            e.add_dense(m.row(i));
        }
        Subspace::nullspace_of(m.field, m.cols, &e)
    }

    pub(crate) fn nullspace_of(field: Field, cols: usize, e: &Eliminator) -> Subspace {
        let rows = e.nullspace_rows();
        Subspace::from_rows(field, cols, &rows).expect("nullspace rows match ambient")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The canonical reduced-echelon basis, one row per basis vector.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vector> {
        self.basis.rows_vec()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::AmbientMismatch(v.len(), self.ambient));
        }
        // Reduce v against the basis rows; membership iff the residue dies.
        let mut e = Eliminator::new(self.field, self.ambient);
        for i in 0..self.basis.rows {
            e.add_dense(self.basis.row(i));
        }
        Ok(crate::matrix::vec_is_zero(&e.reduce_dense(v)))
    }

    /// Is self ⊆ other?
    pub fn leq(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        let mut e = Eliminator::new(self.field, self.ambient);
        for i in 0..other.basis.rows {
            e.add_dense(other.basis.row(i));
        }
        for i in 0..self.basis.rows {
            if !crate::matrix::vec_is_zero(&e.reduce_dense(self.basis.row(i))) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut e = Eliminator::new(self.field, self.ambient);
        for i in 0..self.basis.rows {
            e.add_dense(self.basis.row(i));
        }
        for i in 0..other.basis.rows {
            e.add_dense(other.basis.row(i));
        }
        Ok(Subspace::from_eliminator(self.field, self.ambient, &e))
    }

    /// Zassenhaus intersection: reduce rows (a|a) for a in A and (b|0) for
    /// b in B; fully reduced rows whose left half vanished have right halves
    /// spanning A ∩ B.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let mut e = Eliminator::new(self.field, 2 * n);
        for i in 0..self.basis.rows {
            let mut row = self.basis.row(i).to_vec();
            row.extend_from_slice(self.basis.row(i));
            e.add_dense(&row);
        }
        for i in 0..other.basis.rows {
            let mut row = other.basis.row(i).to_vec();
            row.extend(vec![self.field.zero(); n]);
            e.add_dense(&row);
        }
        let rows: Vec<Vector> = e
            .dense_rows()
            .into_iter()
            .filter(|r| crate::matrix::vec_is_zero(&r[..n]))
            .map(|r| r[n..].to_vec())
            .collect();
        Subspace::from_rows(self.field, n, &rows)
    }

    /// Image under the coordinate projection onto the listed coordinates
    /// (in the listed order).
    pub fn project(&self, coords: &[usize]) -> Result<Subspace> {
        for &c in coords {
            if c >= self.ambient {
                return Err(Error::IndexOutOfRange { index: c, dim: self.ambient });
            }
        }
        let rows: Vec<Vector> = (0..self.basis.rows)
            .map(|i| coords.iter().map(|&c| self.basis.get(i, c).clone()).collect())
            .collect();
        Subspace::from_rows(self.field, coords.len(), &rows)
    }
}

/// Solves Ax = b exactly. Returns the particular solution with all free
/// variables set to zero, or None when inconsistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vector> {
    assert_eq!(a.rows, b.len(), "solve: rhs length mismatch");
    let n = a.cols;
    let mut e = Eliminator::new(a.field, n + 1);
    for i in 0..a.rows {
        let mut row = a.row(i).to_vec();
        row.push(b[i].clone());
        e.add_dense(&row);
    }
    if e.pivot_cols().contains(&n) {
        return None; // a pivot in the RHS column means 0 = 1 somewhere
    }
    let mut x = vec![a.field.zero(); n];
    for row in e.dense_rows() {
        let pivot = row.iter().position(|s| !s.is_zero()).expect("stored rows are nonzero");
        x[pivot] = row[n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::basis_vector;

    fn qmat(entries: &[&[i64]]) -> Matrix {
        let rows: Vec<Vector> = entries
            .iter()
            .map(|r| r.iter().map(|&x| Field::Q.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(Field::Q, rows).unwrap()
    }

    fn qvec(entries: &[i64]) -> Vector {
        entries.iter().map(|&x| Field::Q.from_i64(x)).collect()
    }

    fn qspan(ambient: usize, rows: &[&[i64]]) -> Subspace {
        let rows: Vec<Vector> = rows.iter().map(|r| qvec(r)).collect();
        Subspace::from_rows(Field::Q, ambient, &rows).unwrap()
    }

    #[test]
    fn rref_collapses_dependent_rows() {
        // Frozen case: [[2,4],[1,2]] reduces to [[1,2],[0,0]] with pivot
        // column 0.
        let (r, pivots) = rref(&qmat(&[&[2, 4], &[1, 2]]));
        assert_eq!(r, qmat(&[&[1, 2], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn nullspace_vectors_actually_annihilate() {
        // x + y = 0 in 3 variables: two free directions.
        let m = qmat(&[&[1, 1, 0]]);
        let ns = Subspace::nullspace(&m);
        assert_eq!(ns.dim(), 2);
        for row in ns.basis_rows() {
            assert!(crate::matrix::vec_is_zero(&m.apply(&row)));
        }
    }

    #[test]
    fn projection_drops_coordinates() {
        // span{(1,0,1)} projected onto coordinates [0,1] is span{(1,0)}.
        let s = qspan(3, &[&[1, 0, 1]]);
        let p = s.project(&[0, 1]).unwrap();
        assert_eq!(p, qspan(2, &[&[1, 0]]));
        assert!(s.project(&[0, 3]).is_err());
    }

    #[test]
    fn containment_and_order() {
        let line = qspan(2, &[&[1, 1]]);
        let plane = qspan(2, &[&[1, 0], &[0, 1]]);
        assert!(line.leq(&plane).unwrap());
        assert!(!plane.leq(&line).unwrap());
        assert!(line.contains(&qvec(&[2, 2])).unwrap());
        assert!(!line.contains(&qvec(&[2, 1])).unwrap());
        assert!(line.leq(&qspan(3, &[&[1, 1, 0]])).is_err());
    }

    #[test]
    fn sum_and_intersection_respect_the_dimension_formula() {
        let a = qspan(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let b = qspan(4, &[&[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(i, qspan(4, &[&[0, 1, 0, 0]]));
        assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
    }

    #[test]
    fn canonical_form_is_insertion_order_independent() {
        let a = qspan(3, &[&[1, 2, 3], &[0, 1, 1]]);
        let b = qspan(3, &[&[2, 5, 7], &[3, 6, 9]]);
        // Same span, different generating sets and orders.
        assert_eq!(a, b);
        let ident = qspan(2, &[&[0, 1], &[1, 0]]);
        assert_eq!(ident.basis(), &Matrix::identity(Field::Q, 2));
    }

    #[test]
    fn solve_finds_exact_solutions_and_detects_inconsistency() {
        let a = qmat(&[&[1, 2], &[3, 4]]);
        let x = solve(&a, &qvec(&[5, 6])).unwrap();
        assert_eq!(a.apply(&x), qvec(&[5, 6]));
        let singular = qmat(&[&[1, 1], &[2, 2]]);
        assert!(solve(&singular, &qvec(&[1, 3])).is_none());
        let consistent = solve(&singular, &qvec(&[1, 2])).unwrap();
        assert_eq!(singular.apply(&consistent), qvec(&[1, 2]));
    }

    #[test]
    fn prime_field_elimination_matches_rational_reasoning() {
        let f = Field::fp(7).unwrap();
        let rows: Vec<Vector> = vec![
            vec![f.from_i64(2), f.from_i64(4)],
            vec![f.from_i64(1), f.from_i64(2)],
        ];
        let s = Subspace::from_rows(f, 2, &rows).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&vec![f.from_i64(3), f.from_i64(6)]).unwrap());
        assert!(s
            .basis_rows()
            .contains(&vec![f.one(), f.from_i64(2)]));
        let e1 = basis_vector(f, 2, 0);
        assert!(!s.contains(&e1).unwrap());
    }
}
