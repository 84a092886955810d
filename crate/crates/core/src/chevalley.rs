//! Chevalley basis of a semisimple Lie algebra with integer structure
//! constants.
//!
//! Basis order: `H_1..H_r`, then `E_alpha` for every root in the order of
//! [`RootSystem::roots`] (positive roots first, then their negatives).
//!
//! Relations:
//!
//! ```text
//! [H_i, E_a]   = <a, alpha_i^v> E_a
//! [E_a, E_-a]  = H_a                  (the coroot, in the H_i basis)
//! [E_a, E_b]   = N_{a,b} E_{a+b}      with N_{a,b} = +-(p+1)
//! ```
//!
//! Signs are fixed by declaring `N_{a,b} = p+1` on every extraspecial pair
//! and propagating with the standard identities; the Jacobi identity is
//! checked in tests rather than assumed.

use crate::error::{Error, Result};
use crate::rational::{q, to_i64, Q};
use crate::rootsys::RootSystem;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::Arc;

const MODULE: &str = "chevalley";

/// Sparse integer combination of basis elements, sorted by index.
pub type Combination = Vec<(usize, i64)>;

#[derive(Debug, Clone)]
pub struct ChevalleyAlgebra {
    rs: Arc<RootSystem>,
    /// `n[a][b] = N_{a,b}` for root indices, zero when `a+b` is not a root.
    n: Vec<Vec<i64>>,
    /// `table[i][j] = [x_i, x_j]`.
    table: Vec<Vec<Combination>>,
}

impl PartialEq for ChevalleyAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.rs == other.rs && self.table == other.table
    }
}

impl Eq for ChevalleyAlgebra {}

pub fn build_chevalley(rs: Arc<RootSystem>) -> ChevalleyAlgebra {
    ChevalleyAlgebra::new(rs)
}

impl ChevalleyAlgebra {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        let n = structure_constants(&rs);
        let table = bracket_table(&rs, &n);
        ChevalleyAlgebra { rs, n, table }
    }

    /// Rebuilds an algebra from a stored bracket table after checking that it
    /// has the right shape, is antisymmetric and realizes the Cartan and
    /// root-space relations of `rs`.
    pub fn from_bracket_table(rs: Arc<RootSystem>, table: Vec<Vec<Combination>>) -> Result<Self> {
        let bad = |msg: String| Error::InvalidStructureConstants(msg);
        let r = rs.rank();
        let dim = r + rs.roots().len();
        if table.len() != dim || table.iter().any(|row| row.len() != dim) {
            return Err(bad(format!("expected a {dim}x{dim} table")));
        }
        let nroots = rs.roots().len();
        let mut n = vec![vec![0i64; nroots]; nroots];
        for i in 0..dim {
            for j in 0..dim {
                let c = &table[i][j];
                if c.windows(2).any(|w| w[0].0 >= w[1].0) || c.iter().any(|&(k, v)| k >= dim || v == 0) {
                    return Err(bad(format!("entry ({i},{j}) is not a sorted sparse combination")));
                }
                let neg: Combination = table[j][i].iter().map(|&(k, v)| (k, -v)).collect();
                if *c != neg {
                    return Err(bad(format!("entries ({i},{j}) and ({j},{i}) are not antisymmetric")));
                }
                if i >= r && j >= r {
                    let (a, b) = (i - r, j - r);
                    let sum: Vec<i64> = rs.root(a).simple_coords().iter().zip(rs.root(b).simple_coords()).map(|(x, y)| x + y).collect();
                    match rs.root_index(&sum) {
                        Some(k) => match c.as_slice() {
                            [(idx, v)] if *idx == r + k => n[a][b] = *v,
                            _ => return Err(bad(format!("[E_{a}, E_{b}] is not a multiple of E_{k}"))),
                        },
                        None if sum.iter().all(|&x| x == 0) => {
                            let expect = coroot_combination(&rs, a);
                            if *c != expect {
                                return Err(bad(format!("[E_{a}, E_-{a}] is not the coroot")));
                            }
                        }
                        None if !c.is_empty() => return Err(bad(format!("[E_{a}, E_{b}] should vanish"))),
                        None => {}
                    }
                }
            }
        }
        let expected = bracket_table(&rs, &n);
        if expected != table {
            return Err(bad("Cartan relations do not match the root system".into()));
        }
        for a in 0..nroots {
            for b in 0..nroots {
                if n[a][b] != 0 && n[a][b].abs() != string_below(&rs, a, b) + 1 {
                    return Err(bad(format!("|N_({a},{b})| differs from p+1")));
                }
            }
        }
        Ok(ChevalleyAlgebra { rs, n, table })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    /// Basis index of `H_i`.
    pub fn h(&self, i: usize) -> usize {
        i
    }

    /// Basis index of `E_alpha` for a root index.
    pub fn e(&self, root: usize) -> usize {
        self.rank() + root
    }

    /// Root index of a basis element, `None` for the Cartan part.
    pub fn root_of(&self, basis: usize) -> Option<usize> {
        basis.checked_sub(self.rank())
    }

    /// Weight of a basis element in simple-root coordinates.
    pub fn basis_weight(&self, basis: usize) -> Vec<i64> {
        match self.root_of(basis) {
            Some(k) => self.rs.root(k).simple_coords().to_vec(),
            None => vec![0; self.rank()],
        }
    }

    /// Short label: `h1`, `e3` (positive root 3), `f3` (its negative), 1-based.
    pub fn basis_label(&self, basis: usize) -> String {
        let np = self.rs.num_positive();
        match self.root_of(basis) {
            None => format!("h{}", basis + 1),
            Some(k) if k < np => format!("e{}", k + 1),
            Some(k) => format!("f{}", k - np + 1),
        }
    }

    /// `N_{a,b}` for root indices.
    pub fn structure_constant(&self, a: usize, b: usize) -> i64 {
        self.n[a][b]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i][j]
    }

    pub fn bracket_table(&self) -> &[Vec<Combination>] {
        &self.table
    }

    /// Bilinear extension of the structure constants to dense coefficient
    /// vectors.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>> {
        let dim = self.dim();
        if x.len() != dim || y.len() != dim {
            return Err(Error::RankMismatch {
                module: MODULE,
                expected: dim,
                found: if x.len() != dim { x.len() } else { y.len() },
            });
        }
        let mut out = vec![Q::zero(); dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for &(k, c) in &self.table[i][j] {
                    out[k] += xi * yj * q(c);
                }
            }
        }
        Ok(out)
    }

    /// Number of basis triples violating the Jacobi identity. Exhaustive.
    pub fn jacobi_violations(&self) -> usize {
        let dim = self.dim();
        let mut bad = 0;
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    if !self.jacobi_holds(i, j, k) {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    /// `[x_i,[x_j,x_k]] + [x_j,[x_k,x_i]] + [x_k,[x_i,x_j]] = 0`.
    pub fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for &(m, v) in &self.table[b][c] {
                for &(t, u) in &self.table[a][m] {
                    *acc.entry(t).or_insert(0) += v * u;
                }
            }
        }
        acc.values().all(|&v| v == 0)
    }
}

fn coroot_combination(rs: &RootSystem, root: usize) -> Combination {
    rs.root(root)
        .coroot_coords()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect()
}

fn root_sum(rs: &RootSystem, a: usize, b: usize) -> Option<usize> {
    let sum: Vec<i64> = rs
        .root(a)
        .simple_coords()
        .iter()
        .zip(rs.root(b).simple_coords())
        .map(|(x, y)| x + y)
        .collect();
    rs.root_index(&sum)
}

/// Largest `p` with `b - p a` a root.
fn string_below(rs: &RootSystem, a: usize, b: usize) -> i64 {
    let sa = rs.root(a).simple_coords();
    let mut cur = rs.root(b).simple_coords().to_vec();
    let mut p = 0;
    loop {
        for (c, x) in cur.iter_mut().zip(sa) {
            *c -= x;
        }
        if rs.root_index(&cur).is_none() {
            return p;
        }
        p += 1;
    }
}

fn bracket_table(rs: &RootSystem, n: &[Vec<i64>]) -> Vec<Vec<Combination>> {
    let r = rs.rank();
    let nroots = rs.roots().len();
    let dim = r + nroots;
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..r {
        for a in 0..nroots {
            let c = rs.root(a).fw_ints()[i];
            if c != 0 {
                table[i][r + a] = vec![(r + a, c)];
                table[r + a][i] = vec![(r + a, -c)];
            }
        }
    }
    for a in 0..nroots {
        for b in 0..nroots {
            if b == rs.negative_index(a) {
                table[r + a][r + b] = coroot_combination(rs, a);
            } else if let Some(c) = root_sum(rs, a, b) {
                table[r + a][r + b] = vec![(r + c, n[a][b])];
            }
        }
    }
    table
}

/// Structure constants `N_{a,b}` over all pairs of roots.
fn structure_constants(rs: &RootSystem) -> Vec<Vec<i64>> {
    let np = rs.num_positive();
    let nroots = rs.roots().len();
    let sq: Vec<Q> = rs
        .roots()
        .iter()
        .map(|r| rs.inner_product(r.simple_coords(), r.simple_coords()))
        .collect();
    let mut pos: HashMap<(usize, usize), i64> = HashMap::new();

    // N for an arbitrary pair, reduced to positive pairs of smaller height
    // with N_{-a,-b} = -N_{a,b} and N_{r,s}/(t,t) = N_{s,t}/(r,r) = N_{t,r}/(s,s)
    // whenever r+s+t = 0.
    fn general(rs: &RootSystem, sq: &[Q], pos: &HashMap<(usize, usize), i64>, a: usize, b: usize) -> Q {
        let np = rs.num_positive();
        let Some(c) = root_sum(rs, a, b) else {
            return Q::zero();
        };
        match (a < np, b < np) {
            (true, true) => q(pos[&(a, b)]),
            (false, false) => -q(pos[&(rs.negative_index(a), rs.negative_index(b))]),
            _ => {
                let t = rs.negative_index(c);
                if (b < np) == (t < np) {
                    &sq[t] / &sq[a] * general(rs, sq, pos, b, t)
                } else {
                    &sq[t] / &sq[b] * general(rs, sq, pos, t, a)
                }
            }
        }
    }

    for xi in rs.rank()..np {
        let mut pairs: Vec<(usize, usize)> = (0..np)
            .filter_map(|g| {
                let diff: Vec<i64> = rs.root(xi).simple_coords().iter().zip(rs.root(g).simple_coords()).map(|(x, y)| x - y).collect();
                rs.root_index(&diff).filter(|&d| d < np && g < d).map(|d| (g, d))
            })
            .collect();
        pairs.sort();
        let (alpha, beta) = pairs[0];
        let p1 = string_below(rs, alpha, beta) + 1;
        pos.insert((alpha, beta), p1);
        pos.insert((beta, alpha), -p1);
        let neg_a = rs.negative_index(alpha);
        let neg_b = rs.negative_index(beta);
        for &(g, d) in &pairs[1..] {
            let mut acc = Q::zero();
            if let Some(da) = root_sum(rs, d, neg_a) {
                acc += general(rs, &sq, &pos, d, neg_a) * general(rs, &sq, &pos, g, neg_b) / &sq[da];
            }
            if let Some(ga) = root_sum(rs, g, neg_a) {
                acc += general(rs, &sq, &pos, neg_a, g) * general(rs, &sq, &pos, d, neg_b) / &sq[ga];
            }
            let value = acc * &sq[xi] / q(p1);
            let value = to_i64(&value).expect("structure constants are integers");
            pos.insert((g, d), value);
            pos.insert((d, g), -value);
        }
    }

    let mut n = vec![vec![0i64; nroots]; nroots];
    for (a, row) in n.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            *entry = to_i64(&general(rs, &sq, &pos, a, b)).expect("structure constants are integers");
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::rootsys::build_root_system;

    fn alg(t: &str, n: usize) -> ChevalleyAlgebra {
        build_chevalley(Arc::new(build_root_system(t, n).unwrap()))
    }

    fn unit(dim: usize, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); dim];
        v[i] = q(1);
        v
    }

    #[test]
    fn sl2_relations() {
        let g = alg("A", 1);
        assert_eq!(g.dim(), 3);
        let (h, e, f) = (g.h(0), g.e(0), g.e(1));
        assert_eq!(g.bracket_basis(e, f), &[(h, 1)]);
        assert_eq!(g.bracket_basis(h, e), &[(e, 2)]);
        assert_eq!(g.bracket_basis(h, f), &[(f, -2)]);
        assert_eq!(g.jacobi_violations(), 0);
    }

    #[test]
    fn a2_examples() {
        let g = alg("A", 2);
        let rs = g.root_system();
        let n = g.structure_constant(0, 1);
        assert_eq!(n.abs(), 1);
        assert_eq!(g.bracket_basis(g.e(0), g.e(1)), &[(g.e(2), n)]);
        // [H_i, E_{alpha_j}] = cartan[i][j] E_{alpha_j}
        for i in 0..2 {
            for j in 0..2 {
                let c = rs.cartan_matrix()[i][j];
                assert_eq!(g.bracket(&unit(8, g.h(i)), &unit(8, g.e(j))).unwrap(), {
                    let mut v = vec![Q::zero(); 8];
                    v[g.e(j)] = q(c);
                    v
                });
            }
        }
        // [E_{a1}, E_{-(a1+a2)}] = +-E_{-a2}
        let res = g.bracket_basis(g.e(0), g.e(rs.negative_index(2)));
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].0, g.e(rs.negative_index(1)));
        assert_eq!(res[0].1.abs(), 1);
    }

    #[test]
    fn g2_has_large_constants() {
        let g = alg("G", 2);
        let np = g.root_system().num_positive();
        let max = (0..np)
            .flat_map(|a| (0..np).map(move |b| (a, b)))
            .map(|(a, b)| g.structure_constant(a, b).abs())
            .max()
            .unwrap();
        assert_eq!(max, 3);
        let mut seen: Vec<i64> = (0..2 * np)
            .flat_map(|a| (0..2 * np).map(move |b| (a, b)))
            .map(|(a, b)| g.structure_constant(a, b).abs())
            .collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen, vec![0, 1, 2, 3]);
    }

    #[test]
    fn jacobi_exhaustive_rank_at_most_three() {
        for (t, n) in [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3)] {
            let g = alg(t, n);
            assert_eq!(g.jacobi_violations(), 0, "{t}{n}");
        }
    }

    #[test]
    fn jacobi_sampled_rank_four() {
        for (t, n) in [("D", 4), ("F", 4), ("B", 4), ("A", 4)] {
            let g = alg(t, n);
            let dim = g.dim();
            // deterministic stride through the triples
            let mut checked = 0;
            let mut idx: u64 = 7;
            while checked < 4000 {
                idx = idx.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let i = (idx >> 33) as usize % dim;
                let j = (idx >> 17) as usize % dim;
                let k = (idx >> 5) as usize % dim;
                assert!(g.jacobi_holds(i, j, k), "{t}{n} ({i},{j},{k})");
                checked += 1;
            }
        }
    }

    #[test]
    fn antisymmetry_magnitudes_and_grading() {
        for (t, n) in [("A", 3), ("B", 3), ("G", 2), ("F", 4)] {
            let g = alg(t, n);
            let rs = g.root_system();
            let dim = g.dim();
            for i in 0..dim {
                for j in 0..dim {
                    let neg: Combination = g.bracket_basis(j, i).iter().map(|&(k, v)| (k, -v)).collect();
                    assert_eq!(g.bracket_basis(i, j), neg.as_slice());
                    let wi = g.basis_weight(i);
                    let wj = g.basis_weight(j);
                    for &(k, _) in g.bracket_basis(i, j) {
                        let sum: Vec<i64> = wi.iter().zip(&wj).map(|(a, b)| a + b).collect();
                        assert_eq!(g.basis_weight(k), sum);
                    }
                }
            }
            for a in 0..rs.roots().len() {
                for b in 0..rs.roots().len() {
                    let nab = g.structure_constant(a, b);
                    if nab != 0 {
                        assert_eq!(nab.abs(), string_below(rs, a, b) + 1);
                        assert_eq!(g.structure_constant(rs.negative_index(a), rs.negative_index(b)), -nab);
                    }
                }
            }
        }
    }

    #[test]
    fn nilradical_is_closed_under_bracket() {
        let g = alg("B", 3);
        let rs = g.root_system();
        for s in [vec![], vec![0], vec![1, 2]] {
            let p = rs.parabolic(&s).unwrap();
            for &a in p.nilradical() {
                for &b in p.nilradical() {
                    for &(k, _) in g.bracket_basis(g.e(a), g.e(b)) {
                        assert!(p.nilradical().contains(&g.root_of(k).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_rejects_mismatched_vectors() {
        let g = alg("A", 1);
        assert!(g.bracket(&unit(3, 0), &unit(8, 0)).is_err());
        assert!(g.bracket(&unit(3, 1), &unit(3, 1)).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn table_round_trip_and_rejection() {
        let g = alg("G", 2);
        let rs = g.root_system_arc().clone();
        let again = ChevalleyAlgebra::from_bracket_table(rs.clone(), g.bracket_table().to_vec()).unwrap();
        assert_eq!(again, g);
        let mut broken = g.bracket_table().to_vec();
        broken[g.e(0)][g.e(1)] = vec![];
        assert!(ChevalleyAlgebra::from_bracket_table(rs.clone(), broken).is_err());
        let mut flipped = g.bracket_table().to_vec();
        let (i, j) = (g.e(0), g.e(1));
        flipped[i][j][0].1 *= 2;
        flipped[j][i][0].1 *= 2;
        assert!(ChevalleyAlgebra::from_bracket_table(rs, flipped).is_err());
    }
}
