//! Finite-dimensional irreducible modules with prescribed lowest weight.
//!
//! The module with lowest weight `mu = lambda + rho` is realized as the
//! quotient of the lowest-weight Verma module `U(n+) v` by the radical of
//! its contravariant form. The form is determined by `<v, v> = 1` and
//! `<x a, b> = <a, tau(x) b>` for the antiautomorphism `tau(E_a) = E_-a`,
//! `tau(H) = H`; it is block diagonal over weights, so each weight space
//! is handled on its own.
//!
//! Verma vectors are written in the PBW basis
//! `E_{b_1}^{a_1} ... E_{b_N}^{a_N} v` with the positive roots in canonical
//! order. Within a weight, monomials are listed in descending lexicographic
//! order of their exponent vectors, and the basis of the irreducible
//! quotient is the leftmost set of linearly independent Gram columns.

use crate::chevalley::ChevalleyAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix, SparseMatrix};
use crate::rational::{q, Q};
use crate::rootsys::{RootSystem, Weight};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

const MODULE: &str = "repbuilder";

/// Default bound on the total dimension of a constructed module.
pub const DEFAULT_MAX_DIM: usize = 10_000;

/// Exponent vector over the positive roots.
pub type Monomial = Vec<u32>;

type VermaVector = BTreeMap<Monomial, Q>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_dim: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_dim: DEFAULT_MAX_DIM,
        }
    }
}

/// Gram matrix of the contravariant form on one weight space of the Verma
/// module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VermaSlice {
    pub target_weight: Weight,
    pub monomial_basis: Vec<Monomial>,
    pub gram: DenseMatrix,
}

impl VermaSlice {
    /// Multiplicity of the weight in the irreducible quotient.
    pub fn rank(&self) -> usize {
        linalg::rank(&self.gram)
    }
}

/// An explicit finite-dimensional representation.
#[derive(Debug, Clone)]
pub struct GModule {
    algebra: Arc<ChevalleyAlgebra>,
    lowest_weight: Weight,
    basis_weights: Vec<Weight>,
    /// `weight - lowest_weight` in simple-root coordinates.
    basis_offsets: Vec<Vec<i64>>,
    /// One matrix per Chevalley basis element.
    action: Vec<SparseMatrix>,
}

impl GModule {
    pub fn algebra(&self) -> &Arc<ChevalleyAlgebra> {
        &self.algebra
    }

    pub fn root_system(&self) -> &RootSystem {
        self.algebra.root_system()
    }

    /// `mu = lambda + rho`.
    pub fn lowest_weight(&self) -> &Weight {
        &self.lowest_weight
    }

    /// The shifted parameter `lambda = mu - rho`.
    pub fn lambda(&self) -> Weight {
        &self.lowest_weight - self.root_system().rho()
    }

    pub fn dimension(&self) -> usize {
        self.basis_weights.len()
    }

    pub fn basis_weights(&self) -> &[Weight] {
        &self.basis_weights
    }

    pub fn basis_offsets(&self) -> &[Vec<i64>] {
        &self.basis_offsets
    }

    /// Matrix of a Chevalley basis element.
    pub fn action(&self, basis: usize) -> &SparseMatrix {
        &self.action[basis]
    }

    pub fn actions(&self) -> &[SparseMatrix] {
        &self.action
    }

    pub fn weight_multiplicities(&self) -> BTreeMap<Weight, usize> {
        weight_multiplicities(self)
    }

    /// The same module in a permuted basis: new vector `k` is old vector
    /// `perm[k]`.
    pub fn with_basis_permutation(&self, perm: &[usize]) -> GModule {
        assert_eq!(perm.len(), self.dimension());
        GModule {
            algebra: self.algebra.clone(),
            lowest_weight: self.lowest_weight.clone(),
            basis_weights: perm.iter().map(|&i| self.basis_weights[i].clone()).collect(),
            basis_offsets: perm.iter().map(|&i| self.basis_offsets[i].clone()).collect(),
            action: self.action.iter().map(|m| m.permuted(perm)).collect(),
        }
    }

    /// Checks the defining properties of the module and returns a
    /// description of every failure.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let alg = &self.algebra;
        let rs = alg.root_system();
        let dim = self.dimension();
        for i in 0..alg.dim() {
            for j in i + 1..alg.dim() {
                let lhs = alg.bracket_basis(i, j).iter().fold(SparseMatrix::zero(dim, dim), |acc, &(k, c)| {
                    let t = self.action[k].scale(&q(c));
                    SparseMatrix::from_triples(
                        dim,
                        dim,
                        acc.triples()
                            .map(|(a, b, v)| (a, b, v.clone()))
                            .chain(t.triples().map(|(a, b, v)| (a, b, v.clone()))),
                    )
                });
                let rhs = self.action[i].mul(&self.action[j]).sub(&self.action[j].mul(&self.action[i]));
                if lhs != rhs {
                    out.push(format!(
                        "bracket relation fails for [{}, {}]",
                        alg.basis_label(i),
                        alg.basis_label(j)
                    ));
                }
            }
        }
        for i in 0..rs.rank() {
            let h = &self.action[alg.h(i)];
            for (b, w) in self.basis_weights.iter().enumerate() {
                let col = h.column(b);
                let diag_ok = match col {
                    [] => w.coords()[i].is_zero(),
                    [(r, v)] => *r == b && *v == w.coords()[i],
                    _ => false,
                };
                if !diag_ok {
                    out.push(format!("H_{} is not diagonal with the weight on vector {b}", i + 1));
                }
            }
        }
        let lowest: Vec<usize> = (0..dim).filter(|&b| self.basis_weights[b] == self.lowest_weight).collect();
        if lowest.len() != 1 {
            out.push(format!("lowest weight space has dimension {}", lowest.len()));
        }
        for &b in &lowest {
            for k in rs.num_positive()..rs.roots().len() {
                if !self.action[alg.e(k)].column(b).is_empty() {
                    out.push(format!("{} does not kill the lowest weight vector", alg.basis_label(alg.e(k))));
                }
            }
        }
        if let Ok(expected) = weyl_dimension(rs, &self.lambda()) {
            if expected != dim as u128 {
                out.push(format!("dimension {dim} differs from Weyl dimension {expected}"));
            }
        }
        let mults = self.weight_multiplicities();
        for i in 0..rs.rank() {
            let s = rs.simple_reflection(i).expect("simple reflection");
            for (w, m) in &mults {
                let image = s.act(w).expect("rank");
                if mults.get(&image) != Some(m) {
                    out.push(format!("multiplicity of {w} is not invariant under s_{}", i + 1));
                }
            }
        }
        out
    }
}

pub fn weight_multiplicities(module: &GModule) -> BTreeMap<Weight, usize> {
    let mut out = BTreeMap::new();
    for w in &module.basis_weights {
        *out.entry(w.clone()).or_insert(0) += 1;
    }
    out
}

/// Unique dominant weight in the Weyl orbit of `mu`.
fn dominant_representative(rs: &RootSystem, mu: &Weight) -> Weight {
    let mut cur = mu.clone();
    while let Some(i) = cur.coords().iter().position(|c| c.is_negative()) {
        cur = rs.reflect(&rs.simple_roots()[i], &cur).expect("rank checked");
    }
    cur
}

fn require_antidominant(rs: &RootSystem, lambda: &Weight) -> Result<()> {
    if lambda.rank() != rs.rank() {
        return Err(Error::RankMismatch {
            module: MODULE,
            expected: rs.rank(),
            found: lambda.rank(),
        });
    }
    if !rs.is_antidominant_regular_integral(lambda) {
        return Err(Error::precondition(
            MODULE,
            format!("lambda = {lambda} is not antidominant regular integral"),
        ));
    }
    Ok(())
}

/// Weyl dimension formula for the irreducible module with lowest weight
/// `lambda + rho`, evaluated at its highest weight.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<u128> {
    require_antidominant(rs, lambda)?;
    let mu = lambda + rs.rho();
    let highest = dominant_representative(rs, &mu);
    let shifted = &highest + rs.rho();
    let mut value = Q::one();
    for alpha in rs.positive_roots() {
        value *= rs.pairing(&shifted, alpha)? / rs.pairing(rs.rho(), alpha)?;
    }
    debug_assert!(value.is_integer());
    value.to_integer().to_u128().ok_or(Error::ResourceLimit {
        module: MODULE,
        what: "module dimension",
        needed: u128::MAX,
        limit: u128::MAX,
    })
}

/// Lowest-weight Verma module with memoized generator action and Gram
/// blocks.
struct Verma<'a> {
    alg: &'a ChevalleyAlgebra,
    mu: Vec<Q>,
    act_cache: HashMap<(usize, Monomial), VermaVector>,
    gram_cache: HashMap<Vec<i64>, GramBlock>,
}

#[derive(Clone)]
struct GramBlock {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    gram: DenseMatrix,
}

impl<'a> Verma<'a> {
    fn new(alg: &'a ChevalleyAlgebra, mu: &Weight) -> Self {
        Verma {
            alg,
            mu: mu.coords().to_vec(),
            act_cache: HashMap::new(),
            gram_cache: HashMap::new(),
        }
    }

    fn rs(&self) -> &'a RootSystem {
        self.alg.root_system()
    }

    fn weight_coord(&self, m: &Monomial, i: usize) -> Q {
        let rs = self.rs();
        let mut c = self.mu[i].clone();
        for (k, &a) in m.iter().enumerate() {
            if a != 0 {
                c += q(i64::from(a) * rs.root(k).fw_ints()[i]);
            }
        }
        c
    }

    /// `x . m v` for a Chevalley basis element `x`.
    fn act(&mut self, x: usize, m: &Monomial) -> VermaVector {
        let key = (x, m.clone());
        if let Some(v) = self.act_cache.get(&key) {
            return v.clone();
        }
        let result = self.act_uncached(x, m);
        self.act_cache.insert(key, result.clone());
        result
    }

    fn act_uncached(&mut self, x: usize, m: &Monomial) -> VermaVector {
        let alg = self.alg;
        let np = self.rs().num_positive();
        let root = match alg.root_of(x) {
            None => {
                let c = self.weight_coord(m, x);
                return if c.is_zero() {
                    VermaVector::new()
                } else {
                    VermaVector::from([(m.clone(), c)])
                };
            }
            Some(k) => k,
        };
        let first = m.iter().position(|&a| a != 0);
        match first {
            None if root >= np => return VermaVector::new(),
            None => {
                let mut out = m.clone();
                out[root] += 1;
                return VermaVector::from([(out, Q::one())]);
            }
            Some(f) if root <= f => {
                let mut out = m.clone();
                out[root] += 1;
                return VermaVector::from([(out, Q::one())]);
            }
            Some(_) => {}
        }
        // x E_f m' = E_f (x m') + [x, E_f] m'
        let f = first.unwrap();
        let mut rest = m.clone();
        rest[f] -= 1;
        let mut out = VermaVector::new();
        let inner = self.act(x, &rest);
        for (mono, c) in inner {
            for (mono2, c2) in self.act(alg.e(f), &mono) {
                *out.entry(mono2).or_insert_with(Q::zero) += &c * c2;
            }
        }
        for &(y, c) in alg.bracket_basis(x, alg.e(f)) {
            for (mono, c2) in self.act(y, &rest) {
                *out.entry(mono).or_insert_with(Q::zero) += q(c) * c2;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// PBW monomials of the given simple-root offset, descending lex order.
    fn monomials(&self, offset: &[i64]) -> Vec<Monomial> {
        let rs = self.rs();
        let np = rs.num_positive();
        let mut out = Vec::new();
        let mut cur = vec![0u32; np];
        fn rec(rs: &RootSystem, k: usize, remaining: &mut Vec<i64>, cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if k == cur.len() {
                if remaining.iter().all(|&x| x == 0) {
                    out.push(cur.clone());
                }
                return;
            }
            let root = rs.root(k).simple_coords();
            let mut a = 0;
            loop {
                rec(rs, k + 1, remaining, cur, out);
                if remaining.iter().zip(root).any(|(r, c)| r < c) {
                    break;
                }
                for (r, c) in remaining.iter_mut().zip(root) {
                    *r -= c;
                }
                a += 1;
                cur[k] = a;
            }
            for (r, c) in remaining.iter_mut().zip(root) {
                *r += c * i64::from(a);
            }
            cur[k] = 0;
        }
        rec(rs, 0, &mut offset.to_vec(), &mut cur, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    fn gram(&mut self, offset: &[i64]) -> GramBlock {
        if let Some(g) = self.gram_cache.get(offset) {
            return g.clone();
        }
        let monomials = self.monomials(offset);
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = monomials.len();
        let mut gram = vec![vec![Q::zero(); n]; n];
        if offset.iter().all(|&x| x == 0) {
            gram[0][0] = Q::one();
        } else {
            let np = self.rs().num_positive();
            for i in 0..n {
                let f = monomials[i].iter().position(|&a| a != 0).expect("nonzero offset");
                let mut rest = monomials[i].clone();
                rest[f] -= 1;
                let lower_offset: Vec<i64> = offset
                    .iter()
                    .zip(self.rs().root(f).simple_coords())
                    .map(|(a, b)| a - b)
                    .collect();
                let lower = self.gram(&lower_offset);
                let row = lower.index[&rest];
                let lowering = self.alg.e(f + np);
                for j in 0..n {
                    let image = self.act(lowering, &monomials[j]);
                    let mut s = Q::zero();
                    for (mono, c) in image {
                        let v = &lower.gram[row][lower.index[&mono]];
                        if !v.is_zero() {
                            s += c * v;
                        }
                    }
                    gram[i][j] = s;
                }
            }
        }
        let block = GramBlock { monomials, index, gram };
        self.gram_cache.insert(offset.to_vec(), block.clone());
        block
    }
}

/// Gram matrix of the contravariant form on the weight-`nu` space of the
/// Verma module with lowest weight `lambda + rho`.
pub fn gram_matrix(alg: &ChevalleyAlgebra, lambda: &Weight, nu: &Weight) -> Result<VermaSlice> {
    let rs = alg.root_system();
    for w in [lambda, nu] {
        if w.rank() != rs.rank() {
            return Err(Error::RankMismatch {
                module: MODULE,
                expected: rs.rank(),
                found: w.rank(),
            });
        }
    }
    let mu = lambda + rs.rho();
    let offset = rs.root_cone_offset(&mu, nu).ok_or_else(|| {
        Error::precondition(MODULE, format!("{nu} does not lie above the lowest weight {mu}"))
    })?;
    let mut verma = Verma::new(alg, &mu);
    let block = verma.gram(&offset);
    Ok(VermaSlice {
        target_weight: nu.clone(),
        monomial_basis: block.monomials,
        gram: block.gram,
    })
}

pub fn build_irrep(alg: &Arc<ChevalleyAlgebra>, lambda: &Weight) -> Result<GModule> {
    build_irrep_with(alg, lambda, BuildOptions::default())
}

/// Irreducible module with lowest weight `lambda + rho`.
pub fn build_irrep_with(alg: &Arc<ChevalleyAlgebra>, lambda: &Weight, options: BuildOptions) -> Result<GModule> {
    let rs = alg.root_system();
    require_antidominant(rs, lambda)?;
    let expected = weyl_dimension(rs, lambda)?;
    if expected > options.max_dim as u128 {
        return Err(Error::ResourceLimit {
            module: MODULE,
            what: "module dimension",
            needed: expected,
            limit: options.max_dim as u128,
        });
    }
    let mu = lambda + rs.rho();
    let mut verma = Verma::new(alg, &mu);
    let n = rs.rank();

    // weight spaces of the quotient are reached from the lowest weight by
    // simple raising operators
    struct Space {
        pivots: Vec<Monomial>,
        pivot_rows: Vec<usize>,
        inverse: DenseMatrix,
    }
    let mut spaces: BTreeMap<(i64, Reverse<Vec<i64>>), Space> = BTreeMap::new();
    let mut level: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; n]]);
    let mut total = 0usize;
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for offset in &level {
            let block = verma.gram(offset);
            let pivot_rows = linalg::pivot_columns(&block.gram);
            if pivot_rows.is_empty() {
                continue;
            }
            total += pivot_rows.len();
            if total > options.max_dim {
                return Err(Error::ResourceLimit {
                    module: MODULE,
                    what: "module dimension",
                    needed: total as u128,
                    limit: options.max_dim as u128,
                });
            }
            let sub: DenseMatrix = pivot_rows
                .iter()
                .map(|&i| pivot_rows.iter().map(|&j| block.gram[i][j].clone()).collect())
                .collect();
            let inverse = linalg::inverse(&sub).expect("pivot block of a Gram matrix is invertible");
            for i in 0..n {
                let mut up = offset.clone();
                up[i] += 1;
                next.insert(up);
            }
            spaces.insert(
                (offset.iter().sum(), Reverse(offset.clone())),
                Space {
                    pivots: pivot_rows.iter().map(|&i| block.monomials[i].clone()).collect(),
                    pivot_rows,
                    inverse,
                },
            );
        }
        level = next;
    }
    debug_assert_eq!(total as u128, expected);

    let mut basis_offsets = Vec::with_capacity(total);
    let mut basis_weights = Vec::with_capacity(total);
    let mut start: HashMap<Vec<i64>, usize> = HashMap::new();
    for ((_, Reverse(offset)), space) in &spaces {
        start.insert(offset.clone(), basis_offsets.len());
        let w = &mu + &rs.weight_of(offset);
        for _ in &space.pivots {
            basis_offsets.push(offset.clone());
            basis_weights.push(w.clone());
        }
    }

    let mut action = Vec::with_capacity(alg.dim());
    for x in 0..alg.dim() {
        let shift = alg.basis_weight(x);
        let mut triples = Vec::new();
        for ((_, Reverse(offset)), space) in &spaces {
            let target: Vec<i64> = offset.iter().zip(&shift).map(|(a, b)| a + b).collect();
            let Some(tspace) = spaces.get(&(target.iter().sum(), Reverse(target.clone()))) else {
                continue;
            };
            let tblock = verma.gram(&target);
            let col0 = start[offset];
            let row0 = start[&target];
            for (j, mono) in space.pivots.iter().enumerate() {
                let image = verma.act(x, mono);
                if image.is_empty() {
                    continue;
                }
                // pairings of the image with the pivot monomials of the target
                let pairings: Vec<Q> = tspace
                    .pivot_rows
                    .iter()
                    .map(|&p| {
                        image
                            .iter()
                            .map(|(m, c)| c * &tblock.gram[p][tblock.index[m]])
                            .sum()
                    })
                    .collect();
                let coords = linalg::mat_vec(&tspace.inverse, &pairings);
                for (i, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        triples.push((row0 + i, col0 + j, c));
                    }
                }
            }
        }
        action.push(SparseMatrix::from_triples(total, total, triples));
    }

    Ok(GModule {
        algebra: alg.clone(),
        lowest_weight: mu,
        basis_weights,
        basis_offsets,
        action,
    })
}
