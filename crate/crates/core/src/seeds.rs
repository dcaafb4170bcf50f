//! Quantum seeds: compatible pairs (B, Lambda), mutation in a direction k,
//! Laurent expansion of cluster variables in the initial torus, and breadth
//! first enumeration of the exchange graph with deduplication up to
//! simultaneous permutation of the exchange directions.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qring::QScalar;
use crate::qtorus::{ExponentVector, LambdaMatrix, TorusElement};

/// An m-by-n integer exchange matrix; the principal part is the top n rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    entries: Vec<Vec<i64>>,
    n: usize,
}

impl ExchangeMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let m = entries.len();
        let n = entries.first().map(|r| r.len()).unwrap_or(0);
        if m < n {
            return Err(Error::DimensionMismatch(format!(
                "exchange matrix must have at least as many rows as columns, got {}x{}",
                m, n
            )));
        }
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(
                "ragged exchange matrix".into(),
            ));
        }
        Ok(ExchangeMatrix { entries, n })
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// The k-th column (0-based) as an m-vector.
    pub fn column(&self, k: usize) -> Vec<i64> {
        self.entries.iter().map(|r| r[k]).collect()
    }

    /// Matrix mutation in direction k (1-based).
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix> {
        let kk = check_direction(k, self.n)?;
        let m = self.m();
        let mut out = self.entries.clone();
        for i in 0..m {
            for j in 0..self.n {
                out[i][j] = if i == kk || j == kk {
                    -self.entries[i][j]
                } else {
                    let bik = self.entries[i][kk];
                    let bkj = self.entries[kk][j];
                    self.entries[i][j] + bik.signum() * (bik * bkj).max(0)
                };
            }
        }
        Ok(ExchangeMatrix {
            entries: out,
            n: self.n,
        })
    }
}

fn check_direction(k: usize, n: usize) -> Result<usize> {
    if k == 0 || k > n {
        return Err(Error::DirectionOutOfRange(k, n));
    }
    Ok(k - 1)
}

/// Checks the compatible-pair identity B^T Lambda = (D O) and returns the
/// diagonal of D; also certifies that D B is skew-symmetric.
pub fn validate_seed(b: &ExchangeMatrix, lambda: &LambdaMatrix) -> Result<Vec<i64>> {
    let m = b.m();
    let n = b.n();
    if lambda.dim() != m {
        return Err(Error::DimensionMismatch(format!(
            "exchange matrix is {}x{} but Lambda is {}x{}",
            m,
            n,
            lambda.dim(),
            lambda.dim()
        )));
    }
    if crate::linalg::rank_i64(b.rows()) < n {
        return Err(Error::RankDeficient);
    }
    // P = B^T Lambda, an n-by-m matrix.
    let mut p = vec![vec![0i64; m]; n];
    for i in 0..n {
        for j in 0..m {
            p[i][j] = (0..m).map(|l| b.entry(l, i) * lambda.entry(l, j)).sum();
        }
    }
    let mut d = vec![0i64; n];
    for i in 0..n {
        for j in 0..m {
            if i == j {
                if p[i][j] <= 0 {
                    return Err(Error::NotCompatible(format!(
                        "diagonal entry d_{} = {} is not positive",
                        i + 1,
                        p[i][j]
                    )));
                }
                d[i] = p[i][j];
            } else if p[i][j] != 0 {
                return Err(Error::NotCompatible(format!(
                    "off-diagonal entry ({},{}) of B^T*Lambda is {}",
                    i + 1,
                    j + 1,
                    p[i][j]
                )));
            }
        }
    }
    // D B must be skew-symmetric on the principal part.
    for i in 0..n {
        for j in 0..n {
            if d[i] * b.entry(i, j) != -d[j] * b.entry(j, i) {
                return Err(Error::NotSkewSymmetrizable);
            }
        }
    }
    Ok(d)
}

/// Lambda mutation in direction k (1-based); requires the compatible pair.
pub fn mutate_lambda(
    lambda: &LambdaMatrix,
    b: &ExchangeMatrix,
    k: usize,
) -> Result<LambdaMatrix> {
    let kk = check_direction(k, b.n())?;
    let m = lambda.dim();
    let bk = b.column(kk);
    let pos: Vec<i64> = bk.iter().map(|&x| x.max(0)).collect();
    let mut out = vec![vec![0i64; m]; m];
    for i in 0..m {
        for j in 0..m {
            out[i][j] = if i == kk && j != kk {
                -lambda.entry(kk, j)
                    + (0..m).map(|l| pos[l] * lambda.entry(l, j)).sum::<i64>()
            } else if j == kk && i != kk {
                -lambda.entry(i, kk)
                    + (0..m).map(|l| pos[l] * lambda.entry(i, l)).sum::<i64>()
            } else {
                lambda.entry(i, j)
            };
        }
    }
    LambdaMatrix::new(out)
}

/// A quantum seed: compatible pair, its diagonal D, and the Laurent
/// expansions of the current cluster variables in the initial torus.
///
/// Equality compares the pair, D and the variables; the mutation history is
/// bookkeeping and is ignored.
#[derive(Debug, Clone)]
pub struct Seed {
    exchange: ExchangeMatrix,
    lambda: LambdaMatrix,
    /// Twist matrix of the initial torus in which all variables expand.
    ambient: LambdaMatrix,
    d: Vec<i64>,
    vars: Vec<TorusElement>,
    history: Vec<usize>,
}

impl PartialEq for Seed {
    fn eq(&self, other: &Self) -> bool {
        self.exchange == other.exchange
            && self.lambda == other.lambda
            && self.ambient == other.ambient
            && self.d == other.d
            && self.vars == other.vars
    }
}

impl Eq for Seed {}

impl Seed {
    /// The initial seed: variables are the basis monomials X^(e_i).
    pub fn initial(exchange: ExchangeMatrix, lambda: LambdaMatrix) -> Result<Seed> {
        let d = validate_seed(&exchange, &lambda)?;
        let m = exchange.m();
        let vars = (0..m)
            .map(|i| TorusElement::basis(ExponentVector::basis(m, i)))
            .collect();
        Ok(Seed {
            exchange,
            lambda: lambda.clone(),
            ambient: lambda,
            d,
            vars,
            history: Vec::new(),
        })
    }

    pub fn from_matrices(b: Vec<Vec<i64>>, lambda: Vec<Vec<i64>>) -> Result<Seed> {
        Seed::initial(ExchangeMatrix::new(b)?, LambdaMatrix::new(lambda)?)
    }

    pub fn m(&self) -> usize {
        self.exchange.m()
    }

    pub fn n(&self) -> usize {
        self.exchange.n()
    }

    pub fn exchange(&self) -> &ExchangeMatrix {
        &self.exchange
    }

    pub fn lambda(&self) -> &LambdaMatrix {
        &self.lambda
    }

    pub fn ambient(&self) -> &LambdaMatrix {
        &self.ambient
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn vars(&self) -> &[TorusElement] {
        &self.vars
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    /// The normalized product of current-variable powers for a nonnegative
    /// exponent vector: factors in increasing index order, premultiplied by
    /// q^(-(1/2) sum_{i<j} v_i v_j lambda_ij(t)).
    fn normalized_product(&self, v: &ExponentVector) -> Result<TorusElement> {
        let m = self.m();
        let mut h = 0i64;
        for i in 0..m {
            for j in i + 1..m {
                h -= v.0[i] * v.0[j] * self.lambda.entry(i, j);
            }
        }
        let mut out = TorusElement::scalar(m, QScalar::qpow(h));
        for i in 0..m {
            if v.0[i] > 0 {
                let p = self.vars[i].pow(v.0[i] as u32, &self.ambient)?;
                out = out.elem_mul(&p, &self.ambient)?;
            }
        }
        Ok(out)
    }

    /// Laurent expansion, in the initial torus, of the normalized monomial
    /// X_t^e in the current cluster variables. Negative exponents are
    /// resolved by exact division, which the Laurent phenomenon guarantees.
    pub fn frame_monomial(&self, e: &ExponentVector) -> Result<TorusElement> {
        if e.len() != self.m() {
            return Err(Error::DimensionMismatch(format!(
                "frame exponent has length {}, seed has m = {}",
                e.len(),
                self.m()
            )));
        }
        let (pos, neg) = e.split_signs();
        let num = self.normalized_product(&pos)?;
        if neg.is_zero() {
            return Ok(num);
        }
        let den = self.normalized_product(&neg)?;
        // den * X_t^e = q^((1/2) neg Lambda(t) e^T) * X_t^pos
        let twist = self.lambda.twist(&neg, e)?;
        num.scale(&QScalar::qpow(twist))
            .exact_div(&den, &self.ambient)
    }

    /// Seed mutation in direction k (1-based): mutates the pair and replaces
    /// the k-th variable by the quantum exchange relation.
    ///
    /// The new variable is X_t^(-e_k + [b_k]+) + X_t^(-e_k + [-b_k]+). The
    /// two frame monomials need not lie in the torus individually (inverting
    /// a multi-term variable leaves it), so the sum is computed by one exact
    /// division of the combined numerator by the old variable:
    /// X_t^(e_k) * X_t^(-e_k + v) = q^((1/2) e_k Lambda(t) v^T) X_t^v.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let kk = check_direction(k, self.n())?;
        let m = self.m();
        let bk = self.exchange.column(kk);
        let ek = ExponentVector::basis(m, kk);
        let v1 = ExponentVector(bk.iter().map(|&x| x.max(0)).collect());
        let v2 = ExponentVector(bk.iter().map(|&x| (-x).max(0)).collect());
        let t1 = self.lambda.twist(&ek, &v1)?;
        let t2 = self.lambda.twist(&ek, &v2)?;
        let numerator = self
            .normalized_product(&v1)?
            .scale(&QScalar::qpow(t1))
            .add(&self.normalized_product(&v2)?.scale(&QScalar::qpow(t2)));
        let new_var = numerator.exact_div(&self.vars[kk], &self.ambient)?;

        let exchange = self.exchange.mutate(k)?;
        let lambda = mutate_lambda(&self.lambda, &self.exchange, k)?;
        let mut vars = self.vars.clone();
        vars[kk] = new_var;
        let mut history = self.history.clone();
        history.push(k);
        Ok(Seed {
            exchange,
            lambda,
            ambient: self.ambient.clone(),
            d: self.d.clone(),
            vars,
            history,
        })
    }

    /// Applies a word of 1-based directions left to right.
    pub fn mutate_word(&self, word: &[usize]) -> Result<Seed> {
        let mut s = self.clone();
        for &k in word {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// A canonical text key identifying the seed up to simultaneous
    /// permutation of the exchange directions.
    pub fn canonical_key(&self) -> String {
        let n = self.n();
        let mut best: Option<String> = None;
        for perm in permutations(n) {
            let key = self.permuted_key(&perm);
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        }
        best.unwrap_or_default()
    }

    fn permuted_key(&self, perm: &[usize]) -> String {
        let m = self.m();
        let n = self.n();
        let ext = |i: usize| if i < n { perm[i] } else { i };
        let mut s = String::new();
        s.push('B');
        for i in 0..m {
            for j in 0..n {
                let _ = write!(s, "{},", self.exchange.entry(ext(i), perm[j]));
            }
            s.push(';');
        }
        s.push('L');
        for i in 0..m {
            for j in 0..m {
                let _ = write!(s, "{},", self.lambda.entry(ext(i), ext(j)));
            }
            s.push(';');
        }
        s.push('D');
        for i in 0..n {
            let _ = write!(s, "{},", self.d[perm[i]]);
        }
        s.push('V');
        for i in 0..m {
            let _ = write!(s, "[{}]", self.vars[ext(i)]);
        }
        s
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut arr: Vec<usize> = (0..n).collect();
    fn rec(k: usize, arr: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(arr.clone());
            return;
        }
        for i in 0..k {
            rec(k - 1, arr, out);
            if k % 2 == 0 {
                arr.swap(i, k - 1);
            } else {
                arr.swap(0, k - 1);
            }
        }
    }
    rec(n, &mut arr, &mut out);
    out
}

/// One node of the exchange graph: the first-discovered representative seed.
#[derive(Debug, Clone)]
pub struct GraphNode {
    pub seed: Seed,
    pub depth: usize,
    pub key: String,
}

/// Exchange graph enumerated to a bounded depth, nodes deduplicated by
/// canonical key.
///
/// `half_edges` records one entry (node, direction, target) per explored
/// mutation; direction labels are relative to the representative seed stored
/// at the node, so the two sides of one undirected edge may carry different
/// labels. The undirected multiplicity of a node pair is the larger number
/// of distinct directions seen from either side.
#[derive(Debug, Clone)]
pub struct ExchangeGraph {
    pub nodes: Vec<GraphNode>,
    pub half_edges: BTreeSet<(usize, usize, usize)>,
}

impl ExchangeGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Undirected edges with multiplicities, keyed by (low, high) node index.
    pub fn edge_multiplicities(&self) -> std::collections::BTreeMap<(usize, usize), usize> {
        let mut sides: std::collections::BTreeMap<(usize, usize), [BTreeSet<usize>; 2]> =
            std::collections::BTreeMap::new();
        for &(u, k, v) in &self.half_edges {
            let key = (u.min(v), u.max(v));
            let side = usize::from(u > v);
            sides.entry(key).or_default()[side].insert(k);
        }
        sides
            .into_iter()
            .map(|(key, [a, b])| (key, a.len().max(b.len())))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_multiplicities().values().sum()
    }

    /// Distinct cluster variables over all nodes (exchange directions only),
    /// sorted by their text form for determinism.
    pub fn distinct_cluster_variables(&self) -> Vec<TorusElement> {
        let mut seen: HashSet<TorusElement> = HashSet::new();
        for node in &self.nodes {
            let n = node.seed.n();
            for v in &node.seed.vars()[..n] {
                seen.insert(v.clone());
            }
        }
        let mut out: Vec<TorusElement> = seen.into_iter().collect();
        out.sort_by_key(|v| v.to_string());
        out
    }

    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.nodes.len()];
        for ((a, b), mult) in self.edge_multiplicities() {
            deg[a] += mult;
            deg[b] += mult;
        }
        deg
    }

    fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(u, _, v) in &self.half_edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// A single cycle: connected, every node of degree 2, #edges = #nodes.
    pub fn is_cycle(&self) -> bool {
        self.nodes.len() >= 3
            && self.edge_count() == self.node_count()
            && self.degrees().iter().all(|&d| d == 2)
            && self.is_connected()
    }

    /// A simple path: connected, #edges = #nodes - 1, two endpoints.
    pub fn is_path(&self) -> bool {
        if self.nodes.len() <= 1 {
            return self.half_edges.is_empty();
        }
        let deg = self.degrees();
        self.edge_count() == self.node_count() - 1
            && self.is_connected()
            && deg.iter().filter(|&&d| d == 1).count() == 2
            && deg.iter().all(|&d| d == 1 || d == 2)
    }
}

/// Breadth-first enumeration of the exchange graph to `max_depth` mutations.
pub fn enumerate_exchange_graph(seed: &Seed, max_depth: usize) -> Result<ExchangeGraph> {
    let mut nodes = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut half_edges = BTreeSet::new();

    let key = seed.canonical_key();
    nodes.push(GraphNode {
        seed: seed.clone(),
        depth: 0,
        key: key.clone(),
    });
    index.insert(key, 0);

    let mut frontier = vec![0usize];
    for depth in 1..=max_depth {
        let mut next = Vec::new();
        for &u in &frontier {
            let base = nodes[u].seed.clone();
            for k in 1..=base.n() {
                let mutated = base.mutate(k)?;
                let key = mutated.canonical_key();
                let v = match index.get(&key) {
                    Some(&v) => v,
                    None => {
                        let v = nodes.len();
                        nodes.push(GraphNode {
                            seed: mutated,
                            depth,
                            key: key.clone(),
                        });
                        index.insert(key, v);
                        next.push(v);
                        v
                    }
                };
                half_edges.insert((u, k, v));
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(ExchangeGraph { nodes, half_edges })
}

/// On-disk JSON form of a seed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeedFile {
    pub m: usize,
    pub n: usize,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    #[serde(rename = "Lambda")]
    pub lambda: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl SeedFile {
    pub fn to_seed(&self) -> Result<Seed> {
        if self.b.len() != self.m || self.lambda.len() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "file claims m = {} but B has {} rows and Lambda has {}",
                self.m,
                self.b.len(),
                self.lambda.len()
            )));
        }
        if self.b.iter().any(|r| r.len() != self.n) {
            return Err(Error::DimensionMismatch(format!(
                "file claims n = {} but a B row disagrees",
                self.n
            )));
        }
        Seed::from_matrices(self.b.clone(), self.lambda.clone())
    }

    pub fn from_seed(seed: &Seed) -> SeedFile {
        SeedFile {
            m: seed.m(),
            n: seed.n(),
            b: seed.exchange().rows().to_vec(),
            lambda: seed.lambda().rows().to_vec(),
            names: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Seed {
        Seed::from_matrices(
            vec![vec![0, 1], vec![-1, 0]],
            vec![vec![0, 1], vec![-1, 0]],
        )
        .unwrap()
    }

    fn kronecker() -> Seed {
        Seed::from_matrices(
            vec![vec![0, 2], vec![-2, 0]],
            vec![vec![0, 1], vec![-1, 0]],
        )
        .unwrap()
    }

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    #[test]
    fn validate_catalog_pairs() {
        assert_eq!(a2().d(), &[1, 1]);
        assert_eq!(kronecker().d(), &[2, 2]);
        let bad = Seed::from_matrices(
            vec![vec![0, 1], vec![-1, 0]],
            vec![vec![0, -1], vec![1, 0]],
        );
        assert!(matches!(bad, Err(Error::NotCompatible(_))));
    }

    #[test]
    fn matrix_mutation() {
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let b1 = b.mutate(1).unwrap();
        assert_eq!(b1.rows(), &[vec![0, -1], vec![1, 0]]);

        let chain =
            ExchangeMatrix::new(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
        let c2 = chain.mutate(2).unwrap();
        assert_eq!(
            c2.rows(),
            &[vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]]
        );

        for k in 1..=2 {
            assert_eq!(b.mutate(k).unwrap().mutate(k).unwrap(), b);
        }
        assert!(matches!(b.mutate(3), Err(Error::DirectionOutOfRange(3, 2))));
    }

    #[test]
    fn lambda_mutation() {
        let s = a2();
        let l1 = mutate_lambda(s.lambda(), s.exchange(), 1).unwrap();
        assert_eq!(l1.rows(), &[vec![0, -1], vec![1, 0]]);
        let b1 = s.exchange().mutate(1).unwrap();
        assert_eq!(validate_seed(&b1, &l1).unwrap(), vec![1, 1]);
        let l11 = mutate_lambda(&l1, &b1, 1).unwrap();
        assert_eq!(&l11, s.lambda());
    }

    #[test]
    fn frame_monomials_after_mutation() {
        let s = a2().mutate(1).unwrap();
        // X'_1 = X^(-1,0) + X^(-1,1), X'_2 = X^(0,1), Lambda' = [[0,-1],[1,0]].
        assert_eq!(
            s.vars()[0],
            TorusElement::basis(ev(&[-1, 0])).add(&TorusElement::basis(ev(&[-1, 1])))
        );
        assert_eq!(s.vars()[1], TorusElement::basis(ev(&[0, 1])));
        assert_eq!(s.lambda().rows(), &[vec![0, -1], vec![1, 0]]);

        assert_eq!(
            s.frame_monomial(&ev(&[0, 2])).unwrap(),
            TorusElement::basis(ev(&[0, 2]))
        );
        assert_eq!(
            s.frame_monomial(&ev(&[1, 1])).unwrap(),
            TorusElement::basis(ev(&[-1, 1])).add(&TorusElement::basis(ev(&[-1, 2])))
        );
        assert_eq!(
            s.frame_monomial(&ev(&[1, -1])).unwrap(),
            TorusElement::basis(ev(&[-1, -1])).add(&TorusElement::basis(ev(&[-1, 0])))
        );
    }

    #[test]
    fn seed_mutation_variables() {
        let s = a2();
        let s1 = s.mutate(1).unwrap();
        assert_eq!(
            s1.vars()[0],
            TorusElement::basis(ev(&[-1, 0])).add(&TorusElement::basis(ev(&[-1, 1])))
        );
        let s12 = s1.mutate(2).unwrap();
        let expected = TorusElement::basis(ev(&[0, -1]))
            .add(&TorusElement::basis(ev(&[-1, 0])))
            .add(&TorusElement::basis(ev(&[-1, -1])));
        assert_eq!(s12.vars()[1], expected);

        assert_eq!(s1.mutate(1).unwrap(), s);
    }

    #[test]
    fn frame_contract_at_mutated_seed() {
        // X_t^e X_t^f = q^((1/2) e Lambda(t) f^T) X_t^(e+f) on a window,
        // wherever all three frame monomials exist in the torus. Frames with
        // a negative exponent on a multi-term variable live only in the skew
        // field and are skipped; nonnegative exponents always expand.
        let s = a2().mutate(1).unwrap().mutate(2).unwrap();
        let window = crate::qtorus::window_exponents(2, 1);
        let mut checked = 0;
        for e in &window {
            for f in &window {
                let (me, mf, msum) = match (
                    s.frame_monomial(e),
                    s.frame_monomial(f),
                    s.frame_monomial(&e.add(f)),
                ) {
                    (Ok(a), Ok(b), Ok(c)) => (a, b, c),
                    _ => continue,
                };
                let lhs = me.elem_mul(&mf, s.ambient()).unwrap();
                let t = s.lambda().twist(e, f).unwrap();
                let rhs = msum.scale(&QScalar::qpow(t));
                assert_eq!(lhs, rhs, "frame contract fails at e={} f={}", e, f);
                checked += 1;
            }
        }
        assert!(checked >= 16, "only {} frame pairs were checkable", checked);
        for e in &window {
            if e.0.iter().all(|&x| x >= 0) {
                assert!(s.frame_monomial(e).is_ok());
            }
        }
    }

    #[test]
    fn a2_exchange_graph_is_a_pentagon() {
        let g = enumerate_exchange_graph(&a2(), 6).unwrap();
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.edge_count(), 5);
        assert!(g.is_cycle());
        assert_eq!(g.distinct_cluster_variables().len(), 5);

        let g0 = enumerate_exchange_graph(&a2(), 0).unwrap();
        assert_eq!(g0.node_count(), 1);
        assert_eq!(g0.distinct_cluster_variables().len(), 2);
    }

    #[test]
    fn kronecker_graph_is_a_path() {
        let g = enumerate_exchange_graph(&kronecker(), 4).unwrap();
        assert_eq!(g.node_count(), 9);
        assert!(g.is_path());
    }

    #[test]
    fn seed_file_round_trip() {
        let text = r#"{"m":2, "n":2, "B":[[0,1],[-1,0]], "Lambda":[[0,1],[-1,0]]}"#;
        let file: SeedFile = serde_json::from_str(text).unwrap();
        let seed = file.to_seed().unwrap();
        assert_eq!(seed, a2());
        let back = serde_json::to_string(&SeedFile::from_seed(&seed)).unwrap();
        let file2: SeedFile = serde_json::from_str(&back).unwrap();
        assert_eq!(file2.to_seed().unwrap(), seed);
    }
}
