//! n-ary BiHom-Lie algebras as structure-constant data.
//!
//! An algebra is a d-dimensional space with an n-linear bracket given by its
//! values on basis tuples, plus two commuting linear twist maps α, β. The
//! defining axioms (twisting commutes, BiHom-skew-symmetry over the full
//! symmetric group, and the BiHom-Jacobi identity) are decided exactly on
//! basis tuples; multilinearity extends the verdict to all vectors.

use crate::error::{Error, Result};
use crate::matrix::{basis_vector, vec_add_scaled, vec_is_zero, zero_vector, Matrix, Vector};
use crate::scalar::{Field, Scalar};
use crate::subspace::{rref, Subspace};
use serde::Serialize;
use std::collections::BTreeMap;

/// Hard cap on dimension; tuple indices are stored as bytes and the axiom
/// tables are dense in d^n.
pub const MAX_DIM: usize = 255;

/// Structure constants of an n-linear bracket: basis tuple → value vector.
/// Tuples with zero value are never stored, so equality of tensors is
/// equality of the maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTensor {
    arity: usize,
    dim: usize,
    field: Field,
    map: BTreeMap<Vec<u8>, Vector>,
}

impl BracketTensor {
    pub fn new(field: Field, arity: usize, dim: usize) -> Result<BracketTensor> {
        if arity < 2 {
            return Err(Error::ArityTooSmall(arity));
        }
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidParams(format!(
                "dimension {dim} outside supported range 1..={MAX_DIM}"
            )));
        }
        Ok(BracketTensor { arity, dim, field, map: BTreeMap::new() })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn key(&self, args: &[usize]) -> Result<Vec<u8>> {
        if args.len() != self.arity {
            return Err(Error::DimensionMismatch(format!(
                "bracket takes {} arguments, got {}",
                self.arity,
                args.len()
            )));
        }
        args.iter()
            .map(|&i| {
                if i >= self.dim {
                    Err(Error::IndexOutOfRange { index: i, dim: self.dim })
                } else {
                    Ok(i as u8)
                }
            })
            .collect()
    }

    /// Sets [e_{args}] = value; a zero value erases the entry.
    pub fn set(&mut self, args: &[usize], value: Vector) -> Result<()> {
        let key = self.key(args)?;
        if value.len() != self.dim {
            return Err(Error::AmbientMismatch(value.len(), self.dim));
        }
        for s in &value {
            if s.field() != self.field {
                return Err(Error::FieldMismatch);
            }
        }
        if vec_is_zero(&value) {
            self.map.remove(&key);
        } else {
            self.map.insert(key, value);
        }
        Ok(())
    }

    /// Adds `c · e_target` into the entry for `args`.
    pub fn add_term(&mut self, args: &[usize], target: usize, c: &Scalar) -> Result<()> {
        if target >= self.dim {
            return Err(Error::IndexOutOfRange { index: target, dim: self.dim });
        }
        let key = self.key(args)?;
        let entry = self
            .map
            .entry(key.clone())
            .or_insert_with(|| zero_vector(self.field, self.dim));
        entry[target] = entry[target].add(c);
        if vec_is_zero(entry) {
            self.map.remove(&key);
        }
        Ok(())
    }

    /// The value on a basis tuple (zero vector when unset).
    pub fn value(&self, args: &[usize]) -> Result<Vector> {
        let key = self.key(args)?;
        Ok(self
            .map
            .get(&key)
            .cloned()
            .unwrap_or_else(|| zero_vector(self.field, self.dim)))
    }

    /// Iterates the nonzero entries in sorted tuple order.
    pub fn support(&self) -> impl Iterator<Item = (Vec<usize>, &Vector)> {
        self.map
            .iter()
            .map(|(k, v)| (k.iter().map(|&b| b as usize).collect(), v))
    }

    pub fn support_len(&self) -> usize {
        self.map.len()
    }

    /// Full multilinear evaluation on vector arguments.
    pub fn eval(&self, args: &[&[Scalar]]) -> Result<Vector> {
        if args.len() != self.arity {
            return Err(Error::DimensionMismatch(format!(
                "bracket takes {} arguments, got {}",
                self.arity,
                args.len()
            )));
        }
        for a in args {
            if a.len() != self.dim {
                return Err(Error::AmbientMismatch(a.len(), self.dim));
            }
        }
        let mut out = zero_vector(self.field, self.dim);
        'entries: for (key, value) in &self.map {
            let mut coeff = self.field.one();
            for (slot, &idx) in key.iter().enumerate() {
                let c = &args[slot][idx as usize];
                if c.is_zero() {
                    continue 'entries;
                }
                coeff = coeff.mul(c);
            }
            vec_add_scaled(&mut out, &coeff, value);
        }
        Ok(out)
    }

    /// The tensor of (x₁,…,xₙ) ↦ [x₁,…, m·x_slot, …, xₙ]: pre-composes one
    /// argument slot with a linear map.
    pub fn contract_slot(&self, slot: usize, m: &Matrix) -> BracketTensor {
        assert!(slot < self.arity, "slot out of range");
        assert_eq!((m.rows, m.cols), (self.dim, self.dim), "twist shape mismatch");
        let mut out = BracketTensor::new(self.field, self.arity, self.dim)
            .expect("shape already validated");
        for (key, value) in &self.map {
            let j = key[slot] as usize;
            for i in 0..self.dim {
                let c = m.get(j, i);
                if c.is_zero() {
                    continue;
                }
                let mut new_key = key.clone();
                new_key[slot] = i as u8;
                let entry = out
                    .map
                    .entry(new_key.clone())
                    .or_insert_with(|| zero_vector(self.field, self.dim));
                vec_add_scaled(entry, c, value);
                if vec_is_zero(entry) {
                    out.map.remove(&new_key);
                }
            }
        }
        out
    }

    /// Pre-composes every argument slot with `m`.
    pub fn contract_all(&self, m: &Matrix) -> BracketTensor {
        (0..self.arity).fold(self.clone(), |t, slot| t.contract_slot(slot, m))
    }

    /// Post-composes the value with `m`: (x̄) ↦ m·[x̄].
    pub fn map_values(&self, m: &Matrix) -> BracketTensor {
        let mut out = BracketTensor::new(self.field, self.arity, self.dim)
            .expect("shape already validated");
        for (key, value) in &self.map {
            let v = m.apply(value);
            if !vec_is_zero(&v) {
                out.map.insert(key.clone(), v);
            }
        }
        out
    }

    /// Dense value table indexed by mixed-radix tuple rank (row-major).
    fn dense_table(&self) -> Vec<Option<&Vector>> {
        let size = self.dim.pow(self.arity as u32);
        let mut table = vec![None; size];
        for (key, value) in &self.map {
            table[rank_of(key, self.dim)] = Some(value);
        }
        table
    }
}

fn rank_of(key: &[u8], dim: usize) -> usize {
    key.iter().fold(0usize, |acc, &i| acc * dim + i as usize)
}

/// All n-tuples over 0..dim in lexicographic order.
pub fn tuples(dim: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur = vec![0usize; len];
    let mut done = len == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur.clone();
        // Odometer increment.
        let mut k = len;
        loop {
            if k == 0 {
                done = true;
                break;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < dim {
                break;
            }
            cur[k] = 0;
        }
        Some(out)
    })
}

/// All permutations of 0..n with their signs.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i8)> {
    use itertools::Itertools;
    (0..n)
        .permutations(n)
        .map(|p| {
            let mut sign = 1i8;
            for i in 0..p.len() {
                for j in (i + 1)..p.len() {
                    if p[i] > p[j] {
                        sign = -sign;
                    }
                }
            }
            (p, sign)
        })
        .collect()
}

/// One failing instance of the BiHom-skew axiom: the basis tuple and the
/// permutation under which the signed equality broke.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SkewFailure {
    pub args: Vec<usize>,
    pub perm: Vec<usize>,
}

/// One failing instance of the BiHom-Jacobi identity, named by the two basis
/// tuples it was instantiated with (x̄ has n−1 entries, ȳ has n).
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct JacobiFailure {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
}

/// First basis tuple where a twist failed to be a bracket morphism.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MorphismFailure {
    pub map: String,
    pub args: Vec<usize>,
}

/// Outcome of the axiom checks, with every failing basis instance as a
/// reproducible witness. The defining axioms are the first three fields;
/// multiplicativity and regularity are extra structure, reported but not
/// required.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub twists_commute: bool,
    pub skew_failures: Vec<SkewFailure>,
    pub jacobi_failures: Vec<JacobiFailure>,
    pub alpha_multiplicative: bool,
    pub beta_multiplicative: bool,
    pub multiplicative_witness: Option<MorphismFailure>,
    pub regular: bool,
}

impl AxiomReport {
    /// True iff the three defining axioms hold.
    pub fn axioms_pass(&self) -> bool {
        self.twists_commute && self.skew_failures.is_empty() && self.jacobi_failures.is_empty()
    }
}

/// A finite-dimensional n-ary BiHom-Lie algebra candidate: bracket structure
/// constants plus the two twist maps. Nothing is assumed at construction
/// beyond shape; the axioms are checked on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NAryBiHomAlgebra {
    bracket: BracketTensor,
    alpha: Matrix,
    beta: Matrix,
}

impl NAryBiHomAlgebra {
    pub fn new(bracket: BracketTensor, alpha: Matrix, beta: Matrix) -> Result<NAryBiHomAlgebra> {
        let d = bracket.dim();
        for (m, name) in [(&alpha, "alpha"), (&beta, "beta")] {
            if (m.rows, m.cols) != (d, d) {
                return Err(Error::DimensionMismatch(format!(
                    "{name} must be {d}x{d}, got {}x{}",
                    m.rows, m.cols
                )));
            }
            if m.field != bracket.field() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(NAryBiHomAlgebra { bracket, alpha, beta })
    }

    pub fn arity(&self) -> usize {
        self.bracket.arity()
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn field(&self) -> Field {
        self.bracket.field()
    }

    pub fn bracket(&self) -> &BracketTensor {
        &self.bracket
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    /// Evaluates the bracket on arbitrary vectors.
    pub fn bracket_eval(&self, args: &[Vector]) -> Result<Vector> {
        let refs: Vec<&[Scalar]> = args.iter().map(|v| v.as_slice()).collect();
        self.bracket.eval(&refs)
    }

    /// α^s β^r as a matrix.
    pub fn morphism_power(&self, s: usize, r: usize) -> Matrix {
        self.alpha.pow(s).mul(&self.beta.pow(r))
    }

    pub fn twists_commute(&self) -> bool {
        self.alpha.commutes_with(&self.beta)
    }

    /// Is m a bracket morphism: m[x̄] = [m x₁, …, m xₙ] on basis tuples?
    fn is_bracket_morphism(&self, m: &Matrix) -> Option<Vec<usize>> {
        let lhs = self.bracket.map_values(m);
        let rhs = self.bracket.contract_all(m);
        if lhs == rhs {
            return None;
        }
        // Find the first differing tuple for the witness.
        for t in tuples(self.dim(), self.arity()) {
            if lhs.value(&t).unwrap() != rhs.value(&t).unwrap() {
                return Some(t);
            }
        }
        unreachable!("tensors differ but no differing tuple found")
    }

    pub fn is_multiplicative(&self) -> bool {
        self.twists_commute()
            && self.is_bracket_morphism(&self.alpha).is_none()
            && self.is_bracket_morphism(&self.beta).is_none()
    }

    pub fn is_regular(&self) -> bool {
        let d = self.dim();
        let (_, pa) = rref(&self.alpha);
        let (_, pb) = rref(&self.beta);
        pa.len() == d && pb.len() == d
    }

    /// Runs the defining axioms on every basis instance and reports every
    /// failure as a witness. Multiplicativity and regularity ride along as
    /// informational fields.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.arity();
        let d = self.dim();
        let twists_commute = self.twists_commute();

        // F[ī] = [β e_{i₁}, …, β e_{i_{n−1}}, α e_{iₙ}] for every n-tuple ī.
        let mut twisted = self.bracket.clone();
        for slot in 0..n - 1 {
            twisted = twisted.contract_slot(slot, &self.beta);
        }
        twisted = twisted.contract_slot(n - 1, &self.alpha);
        let f_table = twisted.dense_table();

        // BiHom-skew over the full symmetric group.
        let perms = signed_permutations(n);
        let mut skew_failures = Vec::new();
        let zero = zero_vector(self.field(), d);
        let value_at = |table: &Vec<Option<&Vector>>, key: &[usize]| -> Vector {
            let r = key.iter().fold(0usize, |acc, &i| acc * d + i);
            table[r].cloned().unwrap_or_else(|| zero.clone())
        };
        for t in tuples(d, n) {
            let base = value_at(&f_table, &t);
            for (perm, sign) in &perms {
                let permuted: Vec<usize> = perm.iter().map(|&p| t[p]).collect();
                let mut rhs = value_at(&f_table, &permuted);
                if *sign < 0 {
                    rhs = rhs.iter().map(Scalar::neg).collect();
                }
                if base != rhs {
                    skew_failures.push(SkewFailure { args: t.clone(), perm: perm.clone() });
                }
            }
        }

        // U[ī, l] = [β² e_{i₁}, …, β² e_{i_{n−1}}, e_l].
        let beta2 = self.beta.pow(2);
        let mut inner = self.bracket.clone();
        for slot in 0..n - 1 {
            inner = inner.contract_slot(slot, &beta2);
        }
        let u_table = inner.dense_table();

        // BiHom-Jacobi on every (x̄, ȳ) with x̄ ∈ d^{n−1}, ȳ ∈ d^n:
        //   [β²x₁,…,β²x_{n−1},[βy₁,…,βy_{n−1},αyₙ]]
        //     = Σ_k (−1)^{n−k} [β²y₁,…,ŷ_k,…,β²yₙ,[βx₁,…,βx_{n−1},αy_k]].
        let mut jacobi_failures = Vec::new();
        let contract = |table: &Vec<Option<&Vector>>, context: &[usize], weight: &Vector| {
            // Σ_l weight_l · table[(context, l)]
            let mut acc = zero_vector(self.field(), d);
            let base_rank = context.iter().fold(0usize, |r, &i| r * d + i) * d;
            for (l, w) in weight.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                if let Some(v) = table[base_rank + l] {
                    vec_add_scaled(&mut acc, w, v);
                }
            }
            acc
        };
        for xs in tuples(d, n - 1) {
            for ys in tuples(d, n) {
                let v_inner = value_at(&f_table, &ys);
                let lhs = contract(&u_table, &xs, &v_inner);
                let mut rhs = zero_vector(self.field(), d);
                for k in 0..n {
                    // [βx₁,…,βx_{n−1},α e_{y_k}] via the F table.
                    let mut key = xs.clone();
                    key.push(ys[k]);
                    let w = value_at(&f_table, &key);
                    if vec_is_zero(&w) {
                        continue;
                    }
                    let mut context: Vec<usize> = ys.clone();
                    context.remove(k);
                    let term = contract(&u_table, &context, &w);
                    // (−1)^{n−k} with k 1-based in the display, so parity of
                    // n−(k+1) here.
                    let neg = (n - (k + 1)) % 2 == 1;
                    let sign = if neg { self.field().from_i64(-1) } else { self.field().one() };
                    vec_add_scaled(&mut rhs, &sign, &term);
                }
                if lhs != rhs {
                    jacobi_failures.push(JacobiFailure { xs: xs.clone(), ys: ys.clone() });
                }
            }
        }

        let alpha_witness = self.is_bracket_morphism(&self.alpha);
        let beta_witness = if alpha_witness.is_none() {
            self.is_bracket_morphism(&self.beta)
        } else {
            // Still evaluate β, but keep the first witness found.
            self.is_bracket_morphism(&self.beta)
        };
        let multiplicative_witness = alpha_witness
            .clone()
            .map(|args| MorphismFailure { map: "alpha".into(), args })
            .or_else(|| beta_witness.clone().map(|args| MorphismFailure { map: "beta".into(), args }));

        AxiomReport {
            twists_commute,
            skew_failures,
            jacobi_failures,
            alpha_multiplicative: alpha_witness.is_none(),
            beta_multiplicative: beta_witness.is_none(),
            multiplicative_witness,
            regular: self.is_regular(),
        }
    }

    /// Span of all bracket values [𝔤, …, 𝔤].
    pub fn derived_subalgebra(&self) -> Subspace {
        let rows: Vec<Vector> = self.bracket.support().map(|(_, v)| v.clone()).collect();
        Subspace::from_rows(self.field(), self.dim(), &rows)
            .expect("bracket values match the ambient dimension")
    }

    /// Closure of S under α, β and the bracket (all slots filled from S).
    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        if s.ambient() != self.dim() {
            return Err(Error::AmbientMismatch(s.ambient(), self.dim()));
        }
        let basis = s.basis_rows();
        for b in &basis {
            if !s.contains(&self.alpha.apply(b))? || !s.contains(&self.beta.apply(b))? {
                return Ok(false);
            }
        }
        for combo in tuples(basis.len(), self.arity()) {
            let args: Vec<Vector> = combo.iter().map(|&i| basis[i].clone()).collect();
            if !s.contains(&self.bracket_eval(&args)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal test: α(S) ⊆ S, β(S) ⊆ S, and the bracket lands in S whenever
    /// any single slot is filled from S and the rest range over the whole
    /// algebra (checked on basis tuples for every slot position).
    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        if s.ambient() != self.dim() {
            return Err(Error::AmbientMismatch(s.ambient(), self.dim()));
        }
        let basis = s.basis_rows();
        for b in &basis {
            if !s.contains(&self.alpha.apply(b))? || !s.contains(&self.beta.apply(b))? {
                return Ok(false);
            }
        }
        let n = self.arity();
        let d = self.dim();
        for slot in 0..n {
            for b in &basis {
                for context in tuples(d, n - 1) {
                    let mut args: Vec<Vector> = Vec::with_capacity(n);
                    let mut ctx_iter = context.iter();
                    for pos in 0..n {
                        if pos == slot {
                            args.push(b.clone());
                        } else {
                            args.push(basis_vector(self.field(), d, *ctx_iter.next().unwrap()));
                        }
                    }
                    if !s.contains(&self.bracket_eval(&args)?)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Direct product on the coordinate decomposition 𝕂^{d₁} ⊕ 𝕂^{d₂}:
    /// brackets of mixed tuples vanish, twists act blockwise.
    pub fn external_product(a: &NAryBiHomAlgebra, b: &NAryBiHomAlgebra) -> Result<NAryBiHomAlgebra> {
        if a.arity() != b.arity() {
            return Err(Error::DimensionMismatch("arity mismatch in product".into()));
        }
        if a.field() != b.field() {
            return Err(Error::FieldMismatch);
        }
        let (da, db) = (a.dim(), b.dim());
        let d = da + db;
        let field = a.field();
        let mut tensor = BracketTensor::new(field, a.arity(), d)?;
        for (t, v) in a.bracket.support() {
            let mut value = v.clone();
            value.extend(zero_vector(field, db));
            tensor.set(&t, value)?;
        }
        for (t, v) in b.bracket.support() {
            let shifted: Vec<usize> = t.iter().map(|&i| i + da).collect();
            let mut value = zero_vector(field, da);
            value.extend(v.clone());
            tensor.set(&shifted, value)?;
        }
        let block = |ma: &Matrix, mb: &Matrix| {
            let mut m = Matrix::zero(field, d, d);
            for i in 0..da {
                for j in 0..da {
                    m.set(i, j, ma.get(i, j).clone());
                }
            }
            for i in 0..db {
                for j in 0..db {
                    m.set(da + i, da + j, mb.get(i, j).clone());
                }
            }
            m
        };
        NAryBiHomAlgebra::new(tensor, block(&a.alpha, &b.alpha), block(&a.beta, &b.beta))
    }

    /// The induced algebra on a subalgebra S, in the coordinates of S's
    /// canonical basis. Fails when S is not closed.
    pub fn restrict(&self, s: &Subspace) -> Result<NAryBiHomAlgebra> {
        if !self.is_subalgebra(s)? {
            return Err(Error::NotASubalgebra(
                "subspace is not closed under the bracket and twists".into(),
            ));
        }
        let basis = s.basis_rows();
        let k = basis.len();
        if k == 0 {
            return Err(Error::InvalidParams("cannot restrict to the zero subspace".into()));
        }
        // Coordinates with respect to a reduced-echelon basis are read off
        // the pivot columns; verify the reconstruction exactly.
        let pivots: Vec<usize> = basis
            .iter()
            .map(|row| row.iter().position(|s| !s.is_zero()).expect("basis rows are nonzero"))
            .collect();
        let coords = |v: &Vector| -> Result<Vector> {
            let cs: Vector = pivots.iter().map(|&p| v[p].clone()).collect();
            let mut rebuilt = zero_vector(self.field(), self.dim());
            for (c, b) in cs.iter().zip(&basis) {
                vec_add_scaled(&mut rebuilt, c, b);
            }
            if &rebuilt != v {
                return Err(Error::NotASubalgebra(
                    "vector left the subspace during restriction".into(),
                ));
            }
            Ok(cs)
        };
        let mut tensor = BracketTensor::new(self.field(), self.arity(), k)?;
        for combo in tuples(k, self.arity()) {
            let args: Vec<Vector> = combo.iter().map(|&i| basis[i].clone()).collect();
            let value = coords(&self.bracket_eval(&args)?)?;
            tensor.set(&combo, value)?;
        }
        let restrict_map = |m: &Matrix| -> Result<Matrix> {
            let mut out = Matrix::zero(self.field(), k, k);
            for (j, b) in basis.iter().enumerate() {
                let img = coords(&m.apply(b))?;
                for i in 0..k {
                    out.set(i, j, img[i].clone());
                }
            }
            Ok(out)
        };
        NAryBiHomAlgebra::new(tensor, restrict_map(&self.alpha)?, restrict_map(&self.beta)?)
    }
}
