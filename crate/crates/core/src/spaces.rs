//! Derivation-type subspaces as exact nullspace problems.
//!
//! For a fixed twist power M = α^s β^r, each space (derivations, generalized
//! and quasi-derivations, centroid, quasicentroid, central derivations) is
//! the solution set of a homogeneous linear system in the entries of the
//! unknown endomorphism(s). The systems are assembled from the bracket's
//! structure constants and solved by exact elimination; results come back as
//! canonical subspaces of the d²-dimensional endomorphism space (row-major
//! vectorization), so equal spaces compare equal.

use crate::algebra::{tuples, BracketTensor, NAryBiHomAlgebra};
use crate::error::Result;
use crate::matrix::{basis_vector, vec_is_zero, zero_vector, Matrix, Vector};
use crate::scalar::Scalar;
use crate::subspace::{solve, Eliminator, Subspace};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Bidegree of a twist power: the pair (s, r) in M = α^s β^r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SRIndex {
    pub s: usize,
    pub r: usize,
}

impl SRIndex {
    pub fn new(s: usize, r: usize) -> SRIndex {
        SRIndex { s, r }
    }

    pub fn add(self, other: SRIndex) -> SRIndex {
        SRIndex { s: self.s + other.s, r: self.r + other.r }
    }
}

/// Which derivation-type space a subspace of End(𝔤) is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SpaceKind {
    Derivation,
    GeneralizedDerivation,
    QuasiDerivation,
    Centroid,
    QuasiCentroid,
    CentralDerivation,
}

impl SpaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpaceKind::Derivation => "der",
            SpaceKind::GeneralizedDerivation => "gder",
            SpaceKind::QuasiDerivation => "qder",
            SpaceKind::Centroid => "c",
            SpaceKind::QuasiCentroid => "qc",
            SpaceKind::CentralDerivation => "zder",
        }
    }

    pub fn all() -> [SpaceKind; 6] {
        [
            SpaceKind::Derivation,
            SpaceKind::GeneralizedDerivation,
            SpaceKind::QuasiDerivation,
            SpaceKind::Centroid,
            SpaceKind::QuasiCentroid,
            SpaceKind::CentralDerivation,
        ]
    }
}

/// Strictness switches for definitional ambiguities. Both default to on:
/// centroid-family members are required to commute with the twists, and the
/// plain center is required to annihilate in every argument slot, because
/// the structural results quietly assume both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Flags {
    pub strict_commuting: bool,
    pub strict_all_slots: bool,
}

impl Default for Flags {
    fn default() -> Flags {
        Flags { strict_commuting: true, strict_all_slots: true }
    }
}

/// A subspace of End(𝔤) at a fixed bidegree, tagged with its kind so spaces
/// of different kinds never compare equal by accident. Vectors are row-major
/// flattenings of d×d matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoSubspace {
    pub kind: SpaceKind,
    pub sr: SRIndex,
    /// Dimension of the underlying algebra (the ambient is its square).
    pub alg_dim: usize,
    pub space: Subspace,
}

impl EndoSubspace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        self.space
            .basis_rows()
            .into_iter()
            .map(|row| Matrix::from_flat(self.space.field(), self.alg_dim, self.alg_dim, row))
            .collect()
    }

    pub fn contains_map(&self, m: &Matrix) -> Result<bool> {
        self.space.contains(&m.to_flat())
    }
}

/// A quasiderivation space together with the joint solution space, which is
/// what produces the companion map D′ for any member.
pub struct QuasiDerivationSpace {
    pub space: EndoSubspace,
    joint: Subspace,
}

impl QuasiDerivationSpace {
    /// A companion D′ satisfying the defining identity for this D. Every
    /// member of the space has one by construction; None means D is not in
    /// the space.
    pub fn witness(&self, d: &Matrix) -> Option<Matrix> {
        witness_blocks(&self.joint, d, 2).map(|mut v| v.remove(0))
    }
}

/// A generalized-derivation space with its joint solution space producing
/// the witness family D⁽¹⁾,…,D⁽ⁿ⁾.
pub struct GeneralizedDerivationSpace {
    pub space: EndoSubspace,
    joint: Subspace,
    arity: usize,
}

impl GeneralizedDerivationSpace {
    pub fn witnesses(&self, d: &Matrix) -> Option<Vec<Matrix>> {
        witness_blocks(&self.joint, d, self.arity + 1)
    }
}

/// Solves for a joint-space element whose leading block equals `d` and
/// returns the remaining blocks as matrices.
fn witness_blocks(joint: &Subspace, d: &Matrix, blocks: usize) -> Option<Vec<Matrix>> {
    let d2 = d.rows * d.cols;
    assert_eq!(joint.ambient(), blocks * d2, "joint ambient mismatch");
    let basis = joint.basis_rows();
    // Columns are the joint basis vectors restricted to the leading block.
    let mut lead = Matrix::zero(d.field, d2, basis.len());
    for (j, b) in basis.iter().enumerate() {
        for i in 0..d2 {
            lead.set(i, j, b[i].clone());
        }
    }
    let coeffs = solve(&lead, &d.to_flat())?;
    let mut full = zero_vector(d.field, blocks * d2);
    for (c, b) in coeffs.iter().zip(&basis) {
        crate::matrix::vec_add_scaled(&mut full, c, b);
    }
    Some(
        (1..blocks)
            .map(|k| {
                Matrix::from_flat(d.field, d.rows, d.cols, full[k * d2..(k + 1) * d2].to_vec())
            })
            .collect(),
    )
}

/// Detected eventual periodicity of a matrix power sequence within a window:
/// the smallest (preperiod, period) with M^{preperiod+period} = M^{preperiod}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PowerPeriod {
    pub preperiod: usize,
    pub period: usize,
}

/// A grid of spaces over the bidegree window [0,s_max] × [0,r_max], with
/// periodicity info saying whether the window already exhausts all twist
/// powers.
#[derive(Clone, Debug)]
pub struct SpaceGrid {
    pub kind: SpaceKind,
    pub s_max: usize,
    pub r_max: usize,
    /// Row-major: cells[s * (r_max+1) + r].
    pub cells: Vec<EndoSubspace>,
    pub alpha_period: Option<PowerPeriod>,
    pub beta_period: Option<PowerPeriod>,
    /// True when both power sequences close up inside the window, so every
    /// bidegree outside the window repeats a cell inside it.
    pub window_exhaustive: bool,
}

impl SpaceGrid {
    pub fn cell(&self, s: usize, r: usize) -> &EndoSubspace {
        &self.cells[s * (self.r_max + 1) + r]
    }
}

fn matrix_key(m: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows {
        for j in 0..m.cols {
            out.push_str(&m.get(i, j).render());
            out.push(',');
        }
    }
    out
}

fn blocks_for(kind: SpaceKind, arity: usize) -> usize {
    match kind {
        SpaceKind::QuasiDerivation => 2,
        SpaceKind::GeneralizedDerivation => arity + 1,
        _ => 1,
    }
}

/// Computes and caches derivation-type spaces for one algebra. Distinct
/// bidegrees with the same twist power M = α^s β^r share one solve.
pub struct SpaceComputer<'a> {
    alg: &'a NAryBiHomAlgebra,
    flags: Flags,
    joint_cache: HashMap<(SpaceKind, String), Subspace>,
}

impl<'a> SpaceComputer<'a> {
    pub fn new(alg: &'a NAryBiHomAlgebra, flags: Flags) -> SpaceComputer<'a> {
        SpaceComputer { alg, flags, joint_cache: HashMap::new() }
    }

    pub fn algebra(&self) -> &'a NAryBiHomAlgebra {
        self.alg
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    fn joint(&mut self, kind: SpaceKind, m: &Matrix) -> Subspace {
        let key = (kind, matrix_key(m));
        if let Some(s) = self.joint_cache.get(&key) {
            return s.clone();
        }
        let joint = assemble_and_solve(self.alg, m, kind, self.flags);
        self.joint_cache.insert(key, joint.clone());
        joint
    }

    /// The space of the given kind at bidegree (s, r).
    pub fn space(&mut self, kind: SpaceKind, sr: SRIndex) -> EndoSubspace {
        let d = self.alg.dim();
        let m = self.alg.morphism_power(sr.s, sr.r);
        let joint = self.joint(kind, &m);
        let space = if blocks_for(kind, self.alg.arity()) == 1 {
            joint
        } else {
            let coords: Vec<usize> = (0..d * d).collect();
            joint.project(&coords).expect("leading block projection")
        };
        EndoSubspace { kind, sr, alg_dim: d, space }
    }

    pub fn quasi_derivations(&mut self, sr: SRIndex) -> QuasiDerivationSpace {
        let m = self.alg.morphism_power(sr.s, sr.r);
        let joint = self.joint(SpaceKind::QuasiDerivation, &m);
        QuasiDerivationSpace { space: self.space(SpaceKind::QuasiDerivation, sr), joint }
    }

    pub fn generalized_derivations(&mut self, sr: SRIndex) -> GeneralizedDerivationSpace {
        let m = self.alg.morphism_power(sr.s, sr.r);
        let joint = self.joint(SpaceKind::GeneralizedDerivation, &m);
        GeneralizedDerivationSpace {
            space: self.space(SpaceKind::GeneralizedDerivation, sr),
            joint,
            arity: self.alg.arity(),
        }
    }

    /// Grid of one kind over a bidegree window, with twist-power periodicity
    /// detection.
    pub fn graded(&mut self, kind: SpaceKind, s_max: usize, r_max: usize) -> SpaceGrid {
        let mut cells = Vec::with_capacity((s_max + 1) * (r_max + 1));
        for s in 0..=s_max {
            for r in 0..=r_max {
                cells.push(self.space(kind, SRIndex::new(s, r)));
            }
        }
        let alpha_period = detect_period(self.alg.alpha(), s_max);
        let beta_period = detect_period(self.alg.beta(), r_max);
        let window_exhaustive = alpha_period.is_some() && beta_period.is_some();
        SpaceGrid { kind, s_max, r_max, cells, alpha_period, beta_period, window_exhaustive }
    }

    /// Re-verifies every basis element of a computed space by direct
    /// substitution into the defining identity, bypassing the system
    /// assembler entirely. Returns the first violation as text.
    pub fn reverify(&mut self, endo: &EndoSubspace) -> std::result::Result<(), String> {
        let sr = endo.sr;
        for (idx, d) in endo.basis_matrices().iter().enumerate() {
            let outcome = match endo.kind {
                SpaceKind::Derivation => reverify_derivation(self.alg, sr, d),
                SpaceKind::Centroid => reverify_centroid(self.alg, sr, d, self.flags),
                SpaceKind::QuasiCentroid => reverify_quasicentroid(self.alg, sr, d, self.flags),
                SpaceKind::CentralDerivation => {
                    reverify_central_derivation(self.alg, sr, d, self.flags)
                }
                SpaceKind::QuasiDerivation => {
                    let qd = self.quasi_derivations(sr);
                    let witness = qd
                        .witness(d)
                        .ok_or_else(|| "no companion map for a space member".to_string())?;
                    reverify_quasi_derivation(self.alg, sr, d, &witness)
                }
                SpaceKind::GeneralizedDerivation => {
                    let gd = self.generalized_derivations(sr);
                    let family = gd
                        .witnesses(d)
                        .ok_or_else(|| "no witness family for a space member".to_string())?;
                    reverify_generalized_derivation(self.alg, sr, d, &family)
                }
            };
            outcome.map_err(|e| format!("basis element {idx}: {e}"))?;
        }
        Ok(())
    }
}

/// Picks the smallest (preperiod, period) with M^{pre+period} = M^{pre}
/// inside the window 0..=window, if any.
fn detect_period(m: &Matrix, window: usize) -> Option<PowerPeriod> {
    // A collision M^{pre+period} = M^{pre} with pre + period ≤ window + 1
    // traps every later power in [pre, pre + period) ⊆ [0, window], so all
    // exponents beyond the window repeat exponents inside it.
    let mut powers = Vec::with_capacity(window + 2);
    let mut cur = Matrix::identity(m.field, m.rows);
    for _ in 0..=window + 1 {
        powers.push(cur.clone());
        cur = cur.mul(m);
    }
    for pre in 0..powers.len() {
        for period in 1..powers.len() - pre {
            if powers[pre + period] == powers[pre] {
                return Some(PowerPeriod { preperiod: pre, period });
            }
        }
    }
    None
}

/// Row accumulator: family tag + basis tuple + output coordinate → terms.
type RowKey = (u8, Vec<u8>, u8);
type RowMap = BTreeMap<RowKey, Vec<(usize, Scalar)>>;

/// Adds the terms of block·D applied to the bracket value, i.e. the
/// constraint contribution of D([x₁,…,xₙ]) on every basis tuple, into rows
/// of the given family.
fn add_value_terms(rows: &mut RowMap, tensor: &BracketTensor, family: u8, block: usize, sign: i64) {
    let d = tensor.dim();
    let d2 = d * d;
    let field = tensor.field();
    let sgn = field.from_i64(sign);
    for (t, v) in tensor.support() {
        let key: Vec<u8> = t.iter().map(|&i| i as u8).collect();
        for c in 0..d {
            for (l, coeff) in v.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                rows.entry((family, key.clone(), c as u8))
                    .or_default()
                    .push((block * d2 + c * d + l, sgn.mul(coeff)));
            }
        }
    }
}

/// Adds the terms of one insertion slot: [M x₁, …, D x_k, …, M xₙ] on every
/// basis tuple, where `contracted` is the bracket pre-composed with M on all
/// slots except `slot`.
fn add_insertion_terms(
    rows: &mut RowMap,
    contracted: &BracketTensor,
    slot: usize,
    family: u8,
    block: usize,
    sign: i64,
) {
    let d = contracted.dim();
    let d2 = d * d;
    let field = contracted.field();
    let sgn = field.from_i64(sign);
    for (t, w) in contracted.support() {
        let l = t[slot];
        for j in 0..d {
            let mut key: Vec<u8> = t.iter().map(|&i| i as u8).collect();
            key[slot] = j as u8;
            for (c, coeff) in w.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                rows.entry((family, key.clone(), c as u8))
                    .or_default()
                    .push((block * d2 + l * d + j, sgn.mul(coeff)));
            }
        }
    }
}

/// Commuting constraints X·A = A·X for the unknown block, fed directly.
fn feed_commuting_rows(e: &mut Eliminator, a: &Matrix, block: usize) {
    let d = a.rows;
    let d2 = d * d;
    for i in 0..d {
        for j in 0..d {
            let mut terms: Vec<(usize, Scalar)> = Vec::new();
            for k in 0..d {
                let c1 = a.get(k, j);
                if !c1.is_zero() {
                    terms.push((block * d2 + i * d + k, c1.clone()));
                }
                let c2 = a.get(i, k);
                if !c2.is_zero() {
                    terms.push((block * d2 + k * d + j, c2.neg()));
                }
            }
            e.add_terms(terms);
        }
    }
}

/// Assembles the defining linear system of a space kind at twist power M and
/// returns its joint nullspace (ambient = blocks·d²).
fn assemble_and_solve(
    alg: &NAryBiHomAlgebra,
    m: &Matrix,
    kind: SpaceKind,
    flags: Flags,
) -> Subspace {
    let n = alg.arity();
    let d = alg.dim();
    let d2 = d * d;
    let blocks = blocks_for(kind, n);
    let mut e = Eliminator::new(alg.field(), blocks * d2);

    // Twist-commuting constraints per block.
    let commuting_blocks: Vec<usize> = match kind {
        SpaceKind::Derivation => vec![0],
        SpaceKind::QuasiDerivation => vec![0, 1],
        SpaceKind::GeneralizedDerivation => (0..=n).collect(),
        SpaceKind::Centroid | SpaceKind::QuasiCentroid | SpaceKind::CentralDerivation => {
            if flags.strict_commuting {
                vec![0]
            } else {
                vec![]
            }
        }
    };
    for b in commuting_blocks {
        feed_commuting_rows(&mut e, alg.alpha(), b);
        feed_commuting_rows(&mut e, alg.beta(), b);
    }

    // Bracket pre-composed with M everywhere except one slot, per slot.
    let contracted: Vec<BracketTensor> = (0..n)
        .map(|k| {
            (0..n).fold(alg.bracket().clone(), |t, slot| {
                if slot == k {
                    t
                } else {
                    t.contract_slot(slot, m)
                }
            })
        })
        .collect();

    let mut rows = RowMap::new();
    match kind {
        SpaceKind::Derivation => {
            // D([x̄]) − Σ_k [Mx₁,…,Dx_k,…,Mxₙ] = 0.
            add_value_terms(&mut rows, alg.bracket(), 0, 0, 1);
            for k in 0..n {
                add_insertion_terms(&mut rows, &contracted[k], k, 0, 0, -1);
            }
        }
        SpaceKind::QuasiDerivation => {
            // D′([x̄]) − Σ_k [Mx₁,…,Dx_k,…,Mxₙ] = 0 with D′ in block 1.
            add_value_terms(&mut rows, alg.bracket(), 0, 1, 1);
            for k in 0..n {
                add_insertion_terms(&mut rows, &contracted[k], k, 0, 0, -1);
            }
        }
        SpaceKind::GeneralizedDerivation => {
            // D⁽ⁿ⁾([x̄]) = [Dx₁, Mx₂,…,Mxₙ] + Σ_{i=2}^n [Mx₁,…,D⁽ⁱ⁻¹⁾x_i,…,Mxₙ]
            // with D in block 0 and D⁽ʲ⁾ in block j.
            add_value_terms(&mut rows, alg.bracket(), 0, n, 1);
            add_insertion_terms(&mut rows, &contracted[0], 0, 0, 0, -1);
            for i in 2..=n {
                add_insertion_terms(&mut rows, &contracted[i - 1], i - 1, 0, i - 1, -1);
            }
        }
        SpaceKind::Centroid => {
            // D([x̄]) − [Mx₁,…,Dx_i,…,Mxₙ] = 0 for every slot i.
            for i in 0..n {
                add_value_terms(&mut rows, alg.bracket(), i as u8, 0, 1);
                add_insertion_terms(&mut rows, &contracted[i], i, i as u8, 0, -1);
            }
        }
        SpaceKind::QuasiCentroid => {
            // [Dx₁, Mx₂,…,Mxₙ] − [Mx₁,…,Dx_i,…,Mxₙ] = 0 for i = 2..n.
            for i in 1..n {
                add_insertion_terms(&mut rows, &contracted[0], 0, i as u8, 0, 1);
                add_insertion_terms(&mut rows, &contracted[i], i, i as u8, 0, -1);
            }
        }
        SpaceKind::CentralDerivation => {
            // D([x̄]) = 0 and every single-slot insertion vanishes too.
            add_value_terms(&mut rows, alg.bracket(), 0, 0, 1);
            for i in 0..n {
                add_insertion_terms(&mut rows, &contracted[i], i, (i + 1) as u8, 0, 1);
            }
        }
    }
    for (_, terms) in rows {
        e.add_terms(terms);
    }
    Subspace::nullspace_of(alg.field(), blocks * d2, &e)
}

/// The plain center: vectors u with [u, x₁, …, x_{n−1}] = 0 (and, when the
/// all-slots flag is on, with u annihilating in every argument slot).
pub fn center(alg: &NAryBiHomAlgebra, flags: Flags) -> Subspace {
    let n = alg.arity();
    let d = alg.dim();
    let mut e = Eliminator::new(alg.field(), d);
    let slots: Vec<usize> = if flags.strict_all_slots { (0..n).collect() } else { vec![0] };
    let mut rows = RowMap::new();
    for slot in slots {
        for (t, v) in alg.bracket().support() {
            let mut key: Vec<u8> = t.iter().map(|&i| i as u8).collect();
            let l = key.remove(slot);
            for (c, coeff) in v.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                rows.entry((slot as u8, key.clone(), c as u8))
                    .or_default()
                    .push((l as usize, coeff.clone()));
            }
        }
    }
    for (_, terms) in rows {
        e.add_terms(terms);
    }
    Subspace::nullspace_of(alg.field(), d, &e)
}

/// The (α,β)-center: vectors u with [u, αβ(x₁), …, αβ(x_{n−1})] = 0, the
/// first slot only.
pub fn ab_center(alg: &NAryBiHomAlgebra) -> Subspace {
    let n = alg.arity();
    let d = alg.dim();
    let ab = alg.alpha().mul(alg.beta());
    let contracted = (1..n).fold(alg.bracket().clone(), |t, slot| t.contract_slot(slot, &ab));
    let mut e = Eliminator::new(alg.field(), d);
    let mut rows = RowMap::new();
    for (t, v) in contracted.support() {
        let mut key: Vec<u8> = t.iter().map(|&i| i as u8).collect();
        let l = key.remove(0);
        for (c, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            rows.entry((0, key.clone(), c as u8))
                .or_default()
                .push((l as usize, coeff.clone()));
        }
    }
    for (_, terms) in rows {
        e.add_terms(terms);
    }
    Subspace::nullspace_of(alg.field(), d, &e)
}

// ---- direct-substitution re-verification (independent of the assembler) --

fn commuting_ok(alg: &NAryBiHomAlgebra, d: &Matrix) -> std::result::Result<(), String> {
    if !d.commutes_with(alg.alpha()) {
        return Err("does not commute with alpha".into());
    }
    if !d.commutes_with(alg.beta()) {
        return Err("does not commute with beta".into());
    }
    Ok(())
}

/// Evaluates [M e_{t₁}, …, D e_{t_k}, …, M e_{tₙ}] by direct bracket
/// evaluation on explicit vectors.
fn insertion_eval(
    alg: &NAryBiHomAlgebra,
    m: &Matrix,
    t: &[usize],
    k: usize,
    d: &Matrix,
) -> Vector {
    let args: Vec<Vector> = t
        .iter()
        .enumerate()
        .map(|(slot, &i)| if slot == k { d.col(i) } else { m.col(i) })
        .collect();
    alg.bracket_eval(&args).expect("shapes fixed by construction")
}

pub fn reverify_derivation(
    alg: &NAryBiHomAlgebra,
    sr: SRIndex,
    d: &Matrix,
) -> std::result::Result<(), String> {
    commuting_ok(alg, d)?;
    let m = alg.morphism_power(sr.s, sr.r);
    let n = alg.arity();
    for t in tuples(alg.dim(), n) {
        let lhs = d.apply(&alg.bracket().value(&t).expect("basis tuple"));
        let mut rhs = zero_vector(alg.field(), alg.dim());
        for k in 0..n {
            crate::matrix::vec_add_scaled(&mut rhs, &alg.field().one(), &insertion_eval(alg, &m, &t, k, d));
        }
        if lhs != rhs {
            return Err(format!("Leibniz identity fails on basis tuple {t:?}"));
        }
    }
    Ok(())
}

pub fn reverify_quasi_derivation(
    alg: &NAryBiHomAlgebra,
    sr: SRIndex,
    d: &Matrix,
    witness: &Matrix,
) -> std::result::Result<(), String> {
    commuting_ok(alg, d)?;
    commuting_ok(alg, witness).map_err(|e| format!("companion map {e}"))?;
    let m = alg.morphism_power(sr.s, sr.r);
    let n = alg.arity();
    for t in tuples(alg.dim(), n) {
        let lhs = witness.apply(&alg.bracket().value(&t).expect("basis tuple"));
        let mut rhs = zero_vector(alg.field(), alg.dim());
        for k in 0..n {
            crate::matrix::vec_add_scaled(&mut rhs, &alg.field().one(), &insertion_eval(alg, &m, &t, k, d));
        }
        if lhs != rhs {
            return Err(format!("quasiderivation identity fails on basis tuple {t:?}"));
        }
    }
    Ok(())
}

pub fn reverify_generalized_derivation(
    alg: &NAryBiHomAlgebra,
    sr: SRIndex,
    d: &Matrix,
    family: &[Matrix],
) -> std::result::Result<(), String> {
    let n = alg.arity();
    if family.len() != n {
        return Err(format!("witness family has {} members, expected {n}", family.len()));
    }
    commuting_ok(alg, d)?;
    for (i, w) in family.iter().enumerate() {
        commuting_ok(alg, w).map_err(|e| format!("witness {} {e}", i + 1))?;
    }
    let m = alg.morphism_power(sr.s, sr.r);
    for t in tuples(alg.dim(), n) {
        let lhs = family[n - 1].apply(&alg.bracket().value(&t).expect("basis tuple"));
        let mut rhs = insertion_eval(alg, &m, &t, 0, d);
        for i in 2..=n {
            crate::matrix::vec_add_scaled(
                &mut rhs,
                &alg.field().one(),
                &insertion_eval(alg, &m, &t, i - 1, &family[i - 2]),
            );
        }
        if lhs != rhs {
            return Err(format!("generalized-derivation identity fails on basis tuple {t:?}"));
        }
    }
    Ok(())
}

pub fn reverify_centroid(
    alg: &NAryBiHomAlgebra,
    sr: SRIndex,
    d: &Matrix,
    flags: Flags,
) -> std::result::Result<(), String> {
    if flags.strict_commuting {
        commuting_ok(alg, d)?;
    }
    let m = alg.morphism_power(sr.s, sr.r);
    let n = alg.arity();
    for t in tuples(alg.dim(), n) {
        let lhs = d.apply(&alg.bracket().value(&t).expect("basis tuple"));
        for k in 0..n {
            if lhs != insertion_eval(alg, &m, &t, k, d) {
                return Err(format!("centroid identity fails at slot {k} on tuple {t:?}"));
            }
        }
    }
    Ok(())
}

pub fn reverify_quasicentroid(
    alg: &NAryBiHomAlgebra,
    sr: SRIndex,
    d: &Matrix,
    flags: Flags,
) -> std::result::Result<(), String> {
    if flags.strict_commuting {
        commuting_ok(alg, d)?;
    }
    let m = alg.morphism_power(sr.s, sr.r);
    let n = alg.arity();
    for t in tuples(alg.dim(), n) {
        let first = insertion_eval(alg, &m, &t, 0, d);
        for k in 1..n {
            if first != insertion_eval(alg, &m, &t, k, d) {
                return Err(format!("quasicentroid identity fails at slot {k} on tuple {t:?}"));
            }
        }
    }
    Ok(())
}

pub fn reverify_central_derivation(
    alg: &NAryBiHomAlgebra,
    sr: SRIndex,
    d: &Matrix,
    flags: Flags,
) -> std::result::Result<(), String> {
    if flags.strict_commuting {
        commuting_ok(alg, d)?;
    }
    let m = alg.morphism_power(sr.s, sr.r);
    let n = alg.arity();
    for t in tuples(alg.dim(), n) {
        if !vec_is_zero(&d.apply(&alg.bracket().value(&t).expect("basis tuple"))) {
            return Err(format!("image of bracket value nonzero on tuple {t:?}"));
        }
        for k in 0..n {
            if !vec_is_zero(&insertion_eval(alg, &m, &t, k, d)) {
                return Err(format!("insertion at slot {k} nonzero on tuple {t:?}"));
            }
        }
    }
    Ok(())
}

/// Direct re-verification for center / (α,β)-center vectors.
pub fn reverify_center_vector(
    alg: &NAryBiHomAlgebra,
    u: &[Scalar],
    flags: Flags,
    ab_variant: bool,
) -> std::result::Result<(), String> {
    let n = alg.arity();
    let d = alg.dim();
    let context_map = if ab_variant {
        alg.alpha().mul(alg.beta())
    } else {
        Matrix::identity(alg.field(), d)
    };
    let slots: Vec<usize> =
        if flags.strict_all_slots && !ab_variant { (0..n).collect() } else { vec![0] };
    for slot in slots {
        for context in tuples(d, n - 1) {
            let mut args: Vec<Vector> = Vec::with_capacity(n);
            let mut it = context.iter();
            for pos in 0..n {
                if pos == slot {
                    args.push(u.to_vec());
                } else {
                    args.push(context_map.apply(&basis_vector(alg.field(), d, *it.next().unwrap())));
                }
            }
            if !vec_is_zero(&alg.bracket_eval(&args).expect("shapes fixed")) {
                return Err(format!("center vector fails at slot {slot}, context {context:?}"));
            }
        }
    }
    Ok(())
}
