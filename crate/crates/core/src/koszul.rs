//! Standard complexes computing `n`-homology and `n`-cohomology of a
//! finite-dimensional module, split into weight blocks.
//!
//! A chain `x_T (x) v_b` is indexed by an ascending subset `T` of positions
//! in the nilradical list and a module basis vector `b`. Its weight is
//! `wt(b) + sum(T)`; a cochain `f_{T,b}` (sending `x_T` to `v_b`) has weight
//! `wt(b) - sum(T)`. Both differentials preserve weight, so every block is
//! handled independently.

use crate::chevalley::ChevalleyAlgebra;
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::par;
use crate::rational::{q, Q};
use crate::repbuilder::GModule;
use crate::rootsys::{ParabolicSubset, Weight};
use std::collections::{BTreeMap, HashMap};

const MODULE: &str = "koszul";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    Homology,
    Cohomology,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Homology => "homology",
            Variant::Cohomology => "cohomology",
        }
    }
}

type Cell = (Vec<usize>, usize);
type BlockKey = (usize, Weight);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyTable {
    pub variant: Variant,
    /// Nonzero multiplicities keyed by (degree, weight).
    pub entries: BTreeMap<(usize, Weight), usize>,
    /// Total dimension per degree `0..=d`.
    pub total_dims: Vec<usize>,
}

impl HomologyTable {
    pub fn nilradical_dim(&self) -> usize {
        self.total_dims.len() - 1
    }

    pub fn mult(&self, degree: usize, weight: &Weight) -> usize {
        self.entries.get(&(degree, weight.clone())).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.total_dims)
    }
}

fn alternating_sum(dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// Precomputed nilradical data: root indices, and for each position the
/// pairs of positions `a < c` whose roots sum to it, with `N_{a,c}`.
struct Nil {
    roots: Vec<usize>,
    weights: Vec<Weight>,
    /// `sum_of[a][c]` = position of `root_a + root_c` in the nilradical.
    sum_of: Vec<Vec<Option<usize>>>,
    splittings: Vec<Vec<(usize, usize, i64)>>,
    n: Vec<Vec<i64>>,
}

impl Nil {
    fn new(alg: &ChevalleyAlgebra, p: &ParabolicSubset) -> Nil {
        let rs = alg.root_system();
        let roots = p.nilradical().to_vec();
        let d = roots.len();
        let pos: HashMap<usize, usize> = roots.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut sum_of = vec![vec![None; d]; d];
        let mut n = vec![vec![0; d]; d];
        let mut splittings = vec![Vec::new(); d];
        for a in 0..d {
            for c in 0..d {
                let s: Vec<i64> = rs
                    .root(roots[a])
                    .simple_coords()
                    .iter()
                    .zip(rs.root(roots[c]).simple_coords())
                    .map(|(x, y)| x + y)
                    .collect();
                if let Some(g) = rs.root_index(&s).and_then(|g| pos.get(&g).copied()) {
                    sum_of[a][c] = Some(g);
                    n[a][c] = alg.structure_constant(roots[a], roots[c]);
                    if a < c {
                        splittings[g].push((a, c, n[a][c]));
                    }
                }
            }
        }
        Nil {
            weights: roots.iter().map(|&r| rs.root(r).fw_coords()).collect(),
            roots,
            sum_of,
            splittings,
            n,
        }
    }

    fn len(&self) -> usize {
        self.roots.len()
    }

    fn subset_weight(&self, t: &[usize], rank: usize) -> Weight {
        t.iter().fold(Weight::zero(rank), |acc, &i| &acc + &self.weights[i])
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn subsets(d: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            if d - i < p - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, d, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, p, &mut Vec::new(), &mut out);
    out
}

/// Inserts `g` into the ascending list `r`; returns the new list and the
/// number of elements it passed, or `None` if already present.
fn insert_sorted(r: &[usize], g: usize) -> Option<(Vec<usize>, usize)> {
    match r.binary_search(&g) {
        Ok(_) => None,
        Err(k) => {
            let mut out = r.to_vec();
            out.insert(k, g);
            Some((out, k))
        }
    }
}

#[derive(Debug, Clone)]
pub struct KoszulComplex<'a> {
    module: &'a GModule,
    parabolic: ParabolicSubset,
    variant: Variant,
    blocks: BTreeMap<BlockKey, Vec<Cell>>,
    /// Differential leaving each block; rows index the target block
    /// (degree `p - 1` for homology, `p + 1` for cohomology).
    differentials: BTreeMap<BlockKey, SparseMatrix>,
}

impl<'a> KoszulComplex<'a> {
    pub fn module(&self) -> &GModule {
        self.module
    }

    pub fn parabolic(&self) -> &ParabolicSubset {
        &self.parabolic
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn nilradical_dim(&self) -> usize {
        self.parabolic.dim()
    }

    /// Ordered basis of one block.
    pub fn block(&self, degree: usize, weight: &Weight) -> &[(Vec<usize>, usize)] {
        self.blocks
            .get(&(degree, weight.clone()))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&BlockKey, &Vec<Cell>)> {
        self.blocks.iter()
    }

    pub fn differential(&self, degree: usize, weight: &Weight) -> Option<&SparseMatrix> {
        self.differentials.get(&(degree, weight.clone()))
    }

    fn target_degree(&self, p: usize) -> Option<usize> {
        match self.variant {
            Variant::Homology => p.checked_sub(1),
            Variant::Cohomology => (p < self.nilradical_dim()).then_some(p + 1),
        }
    }

    fn source_degree(&self, p: usize) -> Option<usize> {
        match self.variant {
            Variant::Homology => (p < self.nilradical_dim()).then_some(p + 1),
            Variant::Cohomology => p.checked_sub(1),
        }
    }

    pub fn chain_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.nilradical_dim() + 1];
        for ((p, _), b) in &self.blocks {
            dims[*p] += b.len();
        }
        dims
    }

    /// Blocks where two consecutive differentials do not compose to zero.
    pub fn square_violations(&self) -> Vec<(usize, Weight)> {
        let mut out = Vec::new();
        for ((p, w), d1) in &self.differentials {
            let Some(p2) = self.target_degree(*p) else { continue };
            let Some(d2) = self.differentials.get(&(p2, w.clone())) else { continue };
            if !d2.mul(d1).is_zero() {
                out.push((*p, w.clone()));
            }
        }
        out
    }

    /// Checks the chain-level Euler characteristic against
    /// `sum_p (-1)^p C(d,p) dim M`.
    pub fn chain_euler_characteristic(&self) -> (i64, i64) {
        let d = self.nilradical_dim();
        let dim = self.module.dimension() as i64;
        let mut binom = 1i64;
        let mut expected = 0i64;
        for p in 0..=d {
            expected += sign(p) * binom * dim;
            binom = binom * (d - p) as i64 / (p + 1) as i64;
        }
        (alternating_sum(&self.chain_dims()), expected)
    }
}

fn check_inputs(module: &GModule, parabolic: &ParabolicSubset) -> Result<()> {
    if !parabolic.belongs_to(module.root_system()) {
        return Err(Error::Mismatch { module: MODULE });
    }
    Ok(())
}

/// The standard complex `Lambda^p n (x) M` with boundary
///
/// `d(x_1 ^ .. ^ x_p (x) m) = sum_i (-1)^(i+1) x_1 ^ ..^ x_i-hat ^ .. (x) x_i m
///                        - sum_{i<j} (-1)^(i+j) [x_i,x_j] ^ .. (x) m`.
///
/// For a left module this sign on the bracket term is the one making
/// `d^2 = 0`.
pub fn build_complex<'a>(module: &'a GModule, parabolic: &ParabolicSubset) -> Result<KoszulComplex<'a>> {
    build(module, parabolic, Variant::Homology)
}

/// The complex `Hom(Lambda^p n, M)` with the Chevalley-Eilenberg coboundary.
pub fn build_cochain_complex<'a>(module: &'a GModule, parabolic: &ParabolicSubset) -> Result<KoszulComplex<'a>> {
    build(module, parabolic, Variant::Cohomology)
}

fn build<'a>(module: &'a GModule, parabolic: &ParabolicSubset, variant: Variant) -> Result<KoszulComplex<'a>> {
    check_inputs(module, parabolic)?;
    let alg = module.algebra().as_ref();
    let rank = alg.rank();
    let nil = Nil::new(alg, parabolic);
    let d = nil.len();

    let mut blocks: BTreeMap<BlockKey, Vec<Cell>> = BTreeMap::new();
    for p in 0..=d {
        for t in subsets(d, p) {
            let tw = nil.subset_weight(&t, rank);
            for (b, bw) in module.basis_weights().iter().enumerate() {
                let w = match variant {
                    Variant::Homology => bw + &tw,
                    Variant::Cohomology => bw - &tw,
                };
                blocks.entry((p, w)).or_default().push((t.clone(), b));
            }
        }
    }
    let index: HashMap<&BlockKey, HashMap<&Cell, usize>> = blocks
        .iter()
        .map(|(k, cells)| (k, cells.iter().enumerate().map(|(i, c)| (c, i)).collect()))
        .collect();

    let keys: Vec<&BlockKey> = blocks.keys().collect();
    let matrices = par::map(&keys, |key| {
        let (p, w) = *key;
        let target_p = match variant {
            Variant::Homology => p.checked_sub(1),
            Variant::Cohomology => (*p < d).then_some(p + 1),
        };
        let source = &blocks[*key];
        let target_key = target_p.map(|tp| (tp, w.clone()));
        let target_index = target_key.as_ref().and_then(|k| index.get(k));
        let rows = target_index.map_or(0, HashMap::len);
        let mut triples = Vec::new();
        if let Some(tindex) = target_index {
            for (j, (t, b)) in source.iter().enumerate() {
                let image = match variant {
                    Variant::Homology => boundary(module, &nil, t, *b),
                    Variant::Cohomology => coboundary(module, &nil, t, *b),
                };
                for (cell, c) in image {
                    let i = *tindex.get(&cell).expect("differential preserves weight");
                    triples.push((i, j, c));
                }
            }
        }
        SparseMatrix::from_triples(rows, source.len(), triples)
    });
    let differentials = blocks.keys().cloned().zip(matrices).collect();

    Ok(KoszulComplex {
        module,
        parabolic: parabolic.clone(),
        variant,
        blocks,
        differentials,
    })
}

fn boundary(module: &GModule, nil: &Nil, t: &[usize], b: usize) -> Vec<(Cell, Q)> {
    let alg = module.algebra();
    let mut out = Vec::new();
    for i in 0..t.len() {
        let mut rest = t.to_vec();
        rest.remove(i);
        for (b2, c) in module.action(alg.e(nil.roots[t[i]])).column(b) {
            out.push(((rest.clone(), *b2), c * q(sign(i))));
        }
    }
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            let Some(g) = nil.sum_of[t[i]][t[j]] else { continue };
            let rest: Vec<usize> = t
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, &x)| x)
                .collect();
            let Some((cell, passed)) = insert_sorted(&rest, g) else { continue };
            let coef = -sign(i + j) * nil.n[t[i]][t[j]] * sign(passed);
            out.push(((cell, b), q(coef)));
        }
    }
    out
}

fn coboundary(module: &GModule, nil: &Nil, t: &[usize], b: usize) -> Vec<(Cell, Q)> {
    let alg = module.algebra();
    let mut out = Vec::new();
    for u in 0..nil.len() {
        let Some((cell, i)) = insert_sorted(t, u) else { continue };
        for (b2, c) in module.action(alg.e(nil.roots[u])).column(b) {
            out.push(((cell.clone(), *b2), c * q(sign(i))));
        }
    }
    for (k, &g) in t.iter().enumerate() {
        let rest: Vec<usize> = t.iter().copied().filter(|&x| x != g).collect();
        for &(a, c, n) in &nil.splittings[g] {
            let Some((with_a, _)) = insert_sorted(&rest, a) else { continue };
            let Some((cell, _)) = insert_sorted(&with_a, c) else { continue };
            let i = cell.binary_search(&a).unwrap();
            let j = cell.binary_search(&c).unwrap();
            out.push(((cell, b), q(sign(i + j) * n * sign(k))));
        }
    }
    out
}

/// Per-block multiplicities `dim - rank(out) - rank(in)`.
pub fn homology(complex: &KoszulComplex) -> HomologyTable {
    let keys: Vec<&BlockKey> = complex.blocks.keys().collect();
    let ranks: Vec<usize> = par::map(&keys, |k| complex.differentials[*k].rank());
    let rank_of: HashMap<&BlockKey, usize> = keys.iter().copied().zip(ranks).collect();
    let d = complex.nilradical_dim();
    let mut entries = BTreeMap::new();
    let mut total_dims = vec![0; d + 1];
    for key in &keys {
        let (p, w) = *key;
        let incoming = complex
            .source_degree(*p)
            .and_then(|sp| rank_of.get(&(sp, w.clone())).copied())
            .unwrap_or(0);
        let m = complex.blocks[*key].len() - rank_of[*key] - incoming;
        if m > 0 {
            entries.insert((*p, w.clone()), m);
            total_dims[*p] += m;
        }
    }
    HomologyTable {
        variant: complex.variant,
        entries,
        total_dims,
    }
}

pub fn cohomology(module: &GModule, parabolic: &ParabolicSubset) -> Result<HomologyTable> {
    Ok(homology(&build_cochain_complex(module, parabolic)?))
}

/// One failed comparison `H_p` at `weight` against `H^{d-p}` at
/// `weight - sigma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityViolation {
    pub degree: usize,
    pub weight: Weight,
    pub homology_mult: usize,
    pub cohomology_mult: usize,
}

/// Checks `H_p(n,M)_nu = H^{d-p}(n,M)_{nu - sigma}` in both directions.
pub fn check_duality(
    h: &HomologyTable,
    c: &HomologyTable,
    parabolic: &ParabolicSubset,
) -> Result<Vec<DualityViolation>> {
    let d = parabolic.dim();
    if h.variant != Variant::Homology
        || c.variant != Variant::Cohomology
        || h.nilradical_dim() != d
        || c.nilradical_dim() != d
    {
        return Err(Error::Mismatch { module: MODULE });
    }
    let sigma = parabolic.sigma();
    let mut out = Vec::new();
    for (p, w) in h.entries.keys() {
        let hm = h.mult(*p, w);
        let cm = c.mult(d - p, &(w - sigma));
        if hm != cm {
            out.push(DualityViolation {
                degree: *p,
                weight: w.clone(),
                homology_mult: hm,
                cohomology_mult: cm,
            });
        }
    }
    for (p, w) in c.entries.keys() {
        let hw = w + sigma;
        if h.mult(d - p, &hw) == 0 {
            out.push(DualityViolation {
                degree: d - p,
                weight: hw,
                homology_mult: 0,
                cohomology_mult: c.mult(*p, w),
            });
        }
    }
    Ok(out)
}
