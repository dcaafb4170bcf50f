//! Cluster decomposition: splitting an exchange matrix into indecomposable
//! blocks, the integer lattice of gluing matrices Theta, and the twisted
//! tensor product that reassembles the block algebras.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::qring::QScalar;
use crate::qtorus::{window_exponents, ExponentVector, LambdaMatrix, TorusElement};
use crate::seeds::{validate_seed, ExchangeMatrix, Seed, SeedFile};

/// Partition of the exchange directions into connected blocks, with frozen
/// rows attached to the blocks whose columns they touch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    /// 0-based column indices, each block sorted, blocks ordered by minimum.
    pub blocks: Vec<Vec<usize>>,
    /// 0-based frozen row indices attached to each block.
    pub frozen_rows: Vec<Vec<usize>>,
    /// Frozen rows touching more than one block; they are duplicated into
    /// every block they touch.
    pub shared_frozen: Vec<usize>,
}

/// Connected components of the quiver on the exchange directions: columns i
/// and j are coupled when the principal entry b_ij (or b_ji) is nonzero.
/// Frozen rows attach to, but never merge, blocks.
pub fn find_blocks(b: &ExchangeMatrix) -> BlockPartition {
    let n = b.n();
    let m = b.m();
    let mut assigned = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if assigned[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut stack = vec![start];
        let mut block = Vec::new();
        assigned[start] = id;
        while let Some(i) = stack.pop() {
            block.push(i);
            for j in 0..n {
                if assigned[j] == usize::MAX && (b.entry(i, j) != 0 || b.entry(j, i) != 0) {
                    assigned[j] = id;
                    stack.push(j);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }

    let mut frozen_rows = vec![Vec::new(); blocks.len()];
    let mut shared = Vec::new();
    for r in n..m {
        let touched: std::collections::BTreeSet<usize> = (0..n)
            .filter(|&j| b.entry(r, j) != 0)
            .map(|j| assigned[j])
            .collect();
        if touched.len() > 1 {
            shared.push(r);
        }
        for id in touched {
            frozen_rows[id].push(r);
        }
    }
    BlockPartition {
        blocks,
        frozen_rows,
        shared_frozen: shared,
    }
}

/// Restriction of an exchange matrix to one block: the block columns plus
/// the attached frozen rows, in index order.
pub fn restrict_exchange(
    b: &ExchangeMatrix,
    columns: &[usize],
    frozen: &[usize],
) -> Result<ExchangeMatrix> {
    let mut row_idx: Vec<usize> = columns.to_vec();
    row_idx.extend_from_slice(frozen);
    let entries = row_idx
        .iter()
        .map(|&i| columns.iter().map(|&j| b.entry(i, j)).collect())
        .collect();
    ExchangeMatrix::new(entries)
}

/// Integer basis of the lattice of gluing matrices between two blocks:
/// { Theta : B1^T Theta = O and Theta B2 = O }. Every solution is a sum of
/// rank-one products of a kernel vector of B1^T with a left-kernel vector
/// of B2, so the basis has (m1 - rank B1)(m2 - rank B2) elements.
pub fn theta_space(b1: &ExchangeMatrix, b2: &ExchangeMatrix) -> Vec<Vec<Vec<i64>>> {
    let m1 = b1.m();
    let m2 = b2.m();
    let b1t: Vec<Vec<i64>> = (0..b1.n())
        .map(|j| (0..m1).map(|i| b1.entry(i, j)).collect())
        .collect();
    let b2t: Vec<Vec<i64>> = (0..b2.n())
        .map(|j| (0..m2).map(|i| b2.entry(i, j)).collect())
        .collect();
    let k1 = crate::linalg::integer_kernel(&b1t, m1);
    let k2 = crate::linalg::integer_kernel(&b2t, m2);
    let mut basis = Vec::new();
    for u in &k1 {
        for v in &k2 {
            basis.push(
                u.iter()
                    .map(|&ui| v.iter().map(|&vj| ui * vj).collect())
                    .collect(),
            );
        }
    }
    basis
}

/// A gluing matrix validated against its two blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaMatrix {
    entries: Vec<Vec<i64>>,
}

impl ThetaMatrix {
    pub fn new(entries: Vec<Vec<i64>>, b1: &ExchangeMatrix, b2: &ExchangeMatrix) -> Result<Self> {
        let m1 = b1.m();
        let m2 = b2.m();
        if entries.len() != m1 || entries.iter().any(|r| r.len() != m2) {
            return Err(Error::DimensionMismatch(format!(
                "Theta must be {}x{}",
                m1, m2
            )));
        }
        for j in 0..b1.n() {
            for c in 0..m2 {
                let v: i64 = (0..m1).map(|i| b1.entry(i, j) * entries[i][c]).sum();
                if v != 0 {
                    return Err(Error::NotCompatible(format!(
                        "B1^T Theta has nonzero entry at ({},{})",
                        j + 1,
                        c + 1
                    )));
                }
            }
        }
        for r in 0..m1 {
            for j in 0..b2.n() {
                let v: i64 = (0..m2).map(|c| entries[r][c] * b2.entry(c, j)).sum();
                if v != 0 {
                    return Err(Error::NotCompatible(format!(
                        "Theta B2 has nonzero entry at ({},{})",
                        r + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(ThetaMatrix { entries })
    }

    pub fn zero(m1: usize, m2: usize) -> Self {
        ThetaMatrix {
            entries: vec![vec![0; m2]; m1],
        }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    /// s^T Theta r for a block-1 vector s and block-2 vector r.
    pub fn pairing(&self, s: &ExponentVector, r: &ExponentVector) -> Result<i64> {
        if s.len() != self.entries.len()
            || self.entries.first().map(|row| row.len()).unwrap_or(0) != r.len()
        {
            return Err(Error::DimensionMismatch(
                "Theta pairing dimensions disagree".into(),
            ));
        }
        let mut total = 0;
        for (i, &si) in s.0.iter().enumerate() {
            if si == 0 {
                continue;
            }
            for (j, &rj) in r.0.iter().enumerate() {
                total += si * self.entries[i][j] * rj;
            }
        }
        Ok(total)
    }
}

/// An element of the glued algebra: a sum of pure tensors of block torus
/// monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    dim1: usize,
    dim2: usize,
    terms: BTreeMap<(ExponentVector, ExponentVector), QScalar>,
}

impl TensorElement {
    pub fn zero(dim1: usize, dim2: usize) -> Self {
        TensorElement {
            dim1,
            dim2,
            terms: BTreeMap::new(),
        }
    }

    /// a tensor b for torus elements in the two blocks.
    pub fn pure(a: &TorusElement, b: &TorusElement) -> Self {
        let mut out = TensorElement::zero(a.dim(), b.dim());
        for (e, ca) in a.iter() {
            for (f, cb) in b.iter() {
                out.add_term(e.clone(), f.clone(), ca.mul(cb));
            }
        }
        out
    }

    fn add_term(&mut self, e: ExponentVector, f: ExponentVector, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((e, f)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((e, f), c) in &other.terms {
            out.add_term(e.clone(), f.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &QScalar) -> TensorElement {
        let mut out = TensorElement::zero(self.dim1, self.dim2);
        for ((e, f), k) in &self.terms {
            out.add_term(e.clone(), f.clone(), k.mul(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(ExponentVector, ExponentVector), &QScalar)> {
        self.terms.iter()
    }

    /// Product of glued elements on monomials:
    /// (X^u1 ox X^u2)(X^v1 ox X^v2) picks up the block twists together with
    /// q^((1/2) v1 Theta u2).
    pub fn mul(
        &self,
        other: &TensorElement,
        theta: &ThetaMatrix,
        lam1: &LambdaMatrix,
        lam2: &LambdaMatrix,
    ) -> Result<TensorElement> {
        let mut out = TensorElement::zero(self.dim1, self.dim2);
        for ((u1, u2), cu) in &self.terms {
            for ((v1, v2), cv) in &other.terms {
                let t = lam1.twist(u1, v1)? + lam2.twist(u2, v2)? + theta.pairing(v1, u2)?;
                out.add_term(u1.add(v1), u2.add(v2), cu.mul(cv).shifted(t));
            }
        }
        Ok(out)
    }
}

/// The twisted product (a ox b)(c ox d): expand b over block-2 monomials
/// X^r and c over block-1 monomials X^s, and sum
/// k_r l_s q^((1/2) s^T Theta r) (a X^s) ox (X^r d).
pub fn twisted_mul(
    theta: &ThetaMatrix,
    a: &TorusElement,
    b: &TorusElement,
    c: &TorusElement,
    d: &TorusElement,
    lam1: &LambdaMatrix,
    lam2: &LambdaMatrix,
) -> Result<TensorElement> {
    if a.dim() != lam1.dim() || c.dim() != lam1.dim() || b.dim() != lam2.dim() || d.dim() != lam2.dim()
    {
        return Err(Error::DimensionMismatch(
            "twisted product blocks disagree with their twist matrices".into(),
        ));
    }
    let mut out = TensorElement::zero(a.dim(), b.dim());
    for (r, kr) in b.iter() {
        let right = TorusElement::basis(r.clone()).elem_mul(d, lam2)?;
        for (s, ls) in c.iter() {
            let left = a.elem_mul(&TorusElement::basis(s.clone()), lam1)?;
            let tw = theta.pairing(s, r)?;
            out = out.add(
                &TensorElement::pure(&left, &right).scale(&kr.mul(ls).shifted(tw)),
            );
        }
    }
    Ok(out)
}

/// Full decomposition report for a seed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub partition: BlockPartition,
    pub block_seeds: Vec<SeedFile>,
    pub block_d: Vec<Vec<i64>>,
    /// Integer basis of the gluing lattice for every block pair (r, s).
    pub theta_bases: Vec<ThetaSpaceEntry>,
    pub coefficient_free: bool,
    /// In the coefficient-free case every gluing lattice must be trivial.
    pub theta_trivial: bool,
    /// First pair of cross-block window monomial exponents whose product
    /// fails to factor through the plain tensor product, if any.
    pub factorization_failure: Option<(ExponentVector, ExponentVector)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThetaSpaceEntry {
    /// 0-based block pair.
    pub pair: (usize, usize),
    pub basis: Vec<Vec<Vec<i64>>>,
}

impl DecompositionReport {
    /// True when the seed splits cleanly: blocks validate, and in the
    /// coefficient-free case the gluing is trivial and products factor.
    pub fn passed(&self) -> bool {
        !self.coefficient_free || (self.theta_trivial && self.factorization_failure.is_none())
    }
}

/// Splits the current pair of a seed along its blocks; see
/// [`verify_decomposition_pair`].
pub fn verify_decomposition(seed: &Seed) -> Result<DecompositionReport> {
    verify_decomposition_pair(seed.exchange(), seed.lambda())
}

/// Splits a pair along the blocks of the exchange matrix, validates each
/// restricted pair, computes the gluing lattices, and (for coefficient-free
/// pairs) verifies that window monomial products factor blockwise.
///
/// The pair as a whole is not required to be compatible; block restrictions
/// are validated individually, so a cross-block twist in Lambda is reported
/// as a factorization failure rather than rejected up front.
pub fn verify_decomposition_pair(
    b: &ExchangeMatrix,
    lambda: &LambdaMatrix,
) -> Result<DecompositionReport> {
    let partition = find_blocks(b);
    let m = b.m();
    if lambda.dim() != m {
        return Err(Error::DimensionMismatch(format!(
            "exchange matrix has {} rows but Lambda is {}x{}",
            m,
            lambda.dim(),
            lambda.dim()
        )));
    }
    let coefficient_free = m == b.n();

    let mut block_seeds = Vec::new();
    let mut block_d = Vec::new();
    let mut extended: Vec<Vec<usize>> = Vec::new();
    let mut restricted: Vec<ExchangeMatrix> = Vec::new();
    for (r, block) in partition.blocks.iter().enumerate() {
        let b_i = restrict_exchange(b, block, &partition.frozen_rows[r])?;
        let mut ext = block.clone();
        ext.extend_from_slice(&partition.frozen_rows[r]);
        let lam_i = lambda.restrict(&ext);
        let d_i = validate_seed(&b_i, &lam_i).map_err(|e| {
            Error::NotCompatible(format!("block {} restriction: {}", r + 1, e))
        })?;
        block_seeds.push(SeedFile::from_seed(
            &Seed::initial(b_i.clone(), lam_i).expect("validated block restriction"),
        ));
        block_d.push(d_i);
        extended.push(ext);
        restricted.push(b_i);
    }

    let mut theta_bases = Vec::new();
    let mut theta_trivial = true;
    for r in 0..restricted.len() {
        for s in r + 1..restricted.len() {
            let basis = theta_space(&restricted[r], &restricted[s]);
            if !basis.is_empty() {
                theta_trivial = false;
            }
            theta_bases.push(ThetaSpaceEntry {
                pair: (r, s),
                basis,
            });
        }
    }

    // Cross-block monomials must q-commute trivially for the plain tensor
    // factorization; checked by multiplying radius-1 window monomials
    // through the full torus.
    let mut factorization_failure = None;
    'outer: for r in 0..extended.len() {
        for s in r + 1..extended.len() {
            for e in block_window_full(&extended[r], m, 1) {
                for f in block_window_full(&extended[s], m, 1) {
                    let xe = TorusElement::basis(e.clone());
                    let xf = TorusElement::basis(f.clone());
                    let forward = xe.elem_mul(&xf, lambda)?;
                    let plain = TorusElement::basis(e.add(&f));
                    if forward != plain {
                        factorization_failure = Some((e, f));
                        break 'outer;
                    }
                }
            }
        }
    }

    Ok(DecompositionReport {
        partition,
        block_seeds,
        block_d,
        theta_bases,
        coefficient_free,
        theta_trivial,
        factorization_failure,
    })
}

fn block_window_full(indices: &[usize], m: usize, radius: i64) -> Vec<ExponentVector> {
    window_exponents(indices.len(), radius)
        .into_iter()
        .filter(|e| !e.is_zero())
        .map(|small| {
            let mut full = ExponentVector::zeros(m);
            for (slot, &coord) in indices.iter().enumerate() {
                full.0[coord] = small.0[slot];
            }
            full
        })
        .collect()
}
