//! Root systems, weights and Weyl groups.
//!
//! Conventions used throughout the crate:
//!
//! * Weights are stored in fundamental-weight coordinates, so the pairing of
//!   a weight with the i-th simple coroot is its i-th coordinate.
//! * Columns of the Cartan matrix are simple roots:
//!   `alpha_j = sum_i cartan[i][j] * omega_i`, i.e. `cartan[i][j] = <alpha_j, alpha_i^v>`.
//! * Simple roots are numbered as in Bourbaki.
//! * Positive roots are ordered by height, ties broken by descending
//!   lexicographic order of their simple-root coordinates (so the simple
//!   roots come first, in index order).
//! * Weyl group elements act on fundamental-weight coordinates by integer
//!   matrices and carry their lexicographically least reduced word.

use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix};
use crate::rational::{self, q, Q};
use num_traits::{One, Signed, Zero};
use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

const MODULE: &str = "rootsys";

/// Default cap on the number of Weyl group elements that may be enumerated.
pub const DEFAULT_WEYL_BOUND: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for CartanType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "E" => Ok(CartanType::E),
            "F" => Ok(CartanType::F),
            "G" => Ok(CartanType::G),
            _ => Err(format!("unknown Cartan type {s:?}")),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl CartanType {
    pub fn is_valid_rank(self, rank: usize) -> bool {
        match self {
            CartanType::A => rank >= 1,
            CartanType::B => rank >= 2,
            CartanType::C => rank >= 3,
            CartanType::D => rank >= 4,
            CartanType::E => (6..=8).contains(&rank),
            CartanType::F => rank == 4,
            CartanType::G => rank == 2,
        }
    }

    fn weyl_order(self, n: usize) -> u128 {
        let fact = |k: usize| (1..=k as u128).product::<u128>();
        match self {
            CartanType::A => fact(n + 1),
            CartanType::B | CartanType::C => (1u128 << n) * fact(n),
            CartanType::D => (1u128 << (n - 1)) * fact(n),
            CartanType::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            CartanType::F => 1_152,
            CartanType::G => 12,
        }
    }

    /// Cartan matrix in the crate's column convention, Bourbaki numbering.
    pub fn cartan_matrix(self, n: usize) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self {
            CartanType::A | CartanType::B | CartanType::C | CartanType::F | CartanType::G => {
                for i in 1..n {
                    link(i - 1, i);
                }
            }
            CartanType::D => {
                for i in 1..n - 1 {
                    link(i - 1, i);
                }
                link(n - 3, n - 1);
            }
            CartanType::E => {
                link(0, 2);
                link(1, 3);
                for i in 3..n {
                    link(i - 1, i);
                }
            }
        }
        match self {
            // alpha_n short
            CartanType::B => a[n - 1][n - 2] = -2,
            // alpha_n long
            CartanType::C => a[n - 2][n - 1] = -2,
            // alpha_3 short, alpha_2 long
            CartanType::F => a[2][1] = -2,
            // alpha_1 short, alpha_2 long
            CartanType::G => a[0][1] = -3,
            _ => {}
        }
        a
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec<Q>,
}

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight::new(coords.iter().map(|&c| q(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight::new(vec![Q::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Integer coordinates, if every coordinate is an integer that fits.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(rational::to_i64).collect()
    }

    pub fn scale(&self, s: &Q) -> Weight {
        Weight::new(self.coords.iter().map(|c| c * s).collect())
    }

    fn check_rank(&self, other: &Weight) {
        assert_eq!(self.rank(), other.rank(), "weights of different rank");
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.check_rank(rhs);
        Weight::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.check_rank(rhs);
        Weight::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(self.coords.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(rational::display_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    simple_coords: Vec<i64>,
    fw_coords: Vec<i64>,
    coroot_coords: Vec<i64>,
}

impl Root {
    pub fn simple_coords(&self) -> &[i64] {
        &self.simple_coords
    }

    /// Integer fundamental-weight coordinates.
    pub fn fw_ints(&self) -> &[i64] {
        &self.fw_coords
    }

    pub fn fw_coords(&self) -> Weight {
        Weight::from_ints(&self.fw_coords)
    }

    /// The coroot in the simple-coroot basis.
    pub fn coroot_coords(&self) -> &[i64] {
        &self.coroot_coords
    }

    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }

    pub fn negated(&self) -> Root {
        Root {
            simple_coords: self.simple_coords.iter().map(|x| -x).collect(),
            fw_coords: self.fw_coords.iter().map(|x| -x).collect(),
            coroot_coords: self.coroot_coords.iter().map(|x| -x).collect(),
        }
    }
}

/// Element of the Weyl group.
#[derive(Debug, Clone)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: Vec<Vec<i64>>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl WeylElement {
    /// Lexicographically least reduced word, simple reflections indexed from 0.
    /// The element is `s_{word[0]} s_{word[1]} ...`.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Integer matrix acting on fundamental-weight coordinates.
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Reduced-word length.
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Applies the element to a weight.
    pub fn act(&self, mu: &Weight) -> Result<Weight> {
        if mu.rank() != self.rank() {
            return Err(Error::RankMismatch {
                module: MODULE,
                expected: self.rank(),
                found: mu.rank(),
            });
        }
        Ok(Weight::new(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(mu.coords()).map(|(&a, c)| c * q(a)).sum())
                .collect(),
        ))
    }

    fn act_ints(&self, v: &[i64]) -> Vec<i64> {
        int_mat_vec(&self.matrix, v)
    }
}

fn int_mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn int_mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..n).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn int_identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Infinitesimal character, represented by the unique antidominant weight
/// (every coordinate `<= 0`) in the Weyl orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InfinitesimalCharacter {
    orbit_representative: Weight,
}

impl InfinitesimalCharacter {
    pub fn orbit_representative(&self) -> &Weight {
        &self.orbit_representative
    }
}

/// Levi/nilradical split of the positive roots for a parabolic subalgebra
/// determined by a set of simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicSubset {
    levi_simple_indices: Vec<usize>,
    nilradical: Vec<usize>,
    levi_positive: Vec<usize>,
    sigma: Weight,
    cartan: Vec<Vec<i64>>,
}

impl ParabolicSubset {
    /// Sorted 0-based indices of the simple roots in the Levi factor.
    pub fn levi_simple_indices(&self) -> &[usize] {
        &self.levi_simple_indices
    }

    /// Positive-root indices of the nilradical, in canonical order.
    pub fn nilradical(&self) -> &[usize] {
        &self.nilradical
    }

    pub fn levi_positive(&self) -> &[usize] {
        &self.levi_positive
    }

    /// Sum of the nilradical roots: the weight of the top exterior power.
    pub fn sigma(&self) -> &Weight {
        &self.sigma
    }

    /// Dimension of the nilradical.
    pub fn dim(&self) -> usize {
        self.nilradical.len()
    }

    pub fn is_borel(&self) -> bool {
        self.levi_simple_indices.is_empty()
    }

    pub fn belongs_to(&self, rs: &RootSystem) -> bool {
        self.cartan == rs.cartan
    }
}

/// Immutable combinatorial data of a finite root system, possibly reducible.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: Option<CartanType>,
    label: String,
    cartan: Vec<Vec<i64>>,
    cartan_inverse: DenseMatrix,
    simple_sq_lengths: Vec<Q>,
    /// Positive roots followed by their negatives in the same order.
    roots: Vec<Root>,
    by_simple: HashMap<Vec<i64>, usize>,
    by_fw: HashMap<Vec<i64>, usize>,
    rho: Weight,
    weyl_order: u128,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan
    }
}

impl Eq for RootSystem {}

/// Builds the root system of a finite type such as `("A", 2)` or `("G", 2)`.
pub fn build_root_system(type_label: &str, rank: usize) -> Result<RootSystem> {
    let invalid = || Error::InvalidType {
        label: type_label.to_string(),
        rank,
    };
    let ty: CartanType = type_label.parse().map_err(|_| invalid())?;
    if !ty.is_valid_rank(rank) {
        return Err(invalid());
    }
    let mut rs = RootSystem::from_cartan_matrix(format!("{ty}{rank}"), ty.cartan_matrix(rank))?;
    rs.cartan_type = Some(ty);
    debug_assert_eq!(rs.weyl_order, ty.weyl_order(rank));
    Ok(rs)
}

const MAX_ROOTS: usize = 1 << 16;

impl RootSystem {
    /// Builds a (possibly reducible, possibly rank 0) root system from a
    /// Cartan matrix in the crate's column convention.
    pub fn from_cartan_matrix(label: impl Into<String>, cartan: Vec<Vec<i64>>) -> Result<RootSystem> {
        let label = label.into();
        let n = cartan.len();
        let bad = |reason: &str| Error::precondition(MODULE, format!("Cartan matrix of {label}: {reason}"));
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != n {
                return Err(bad("not square"));
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j && a != 2 {
                    return Err(bad("diagonal entry differs from 2"));
                }
                if i != j && (a > 0 || (a == 0) != (cartan[j][i] == 0)) {
                    return Err(bad("off-diagonal entries must be <= 0 with symmetric zero pattern"));
                }
            }
        }
        let simple_sq_lengths = symmetrizing_lengths(&cartan).ok_or_else(|| bad("not symmetrizable"))?;
        let cartan_q: DenseMatrix = cartan
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        let cartan_inverse = linalg::inverse(&cartan_q).ok_or_else(|| bad("singular"))?;

        let mut positive = positive_root_closure(&cartan).ok_or_else(|| bad("not of finite type"))?;
        positive.sort_by_key(|r| (r.iter().sum::<i64>(), Reverse(r.clone())));

        let inner = |a: &[i64], b: &[i64]| -> Q {
            let mut s = Q::zero();
            for i in 0..n {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..n {
                    if b[j] != 0 {
                        s += &simple_sq_lengths[i] * q(a[i] * b[j] * cartan[i][j]) / q(2);
                    }
                }
            }
            s
        };

        let mut roots = Vec::with_capacity(2 * positive.len());
        for sc in &positive {
            let fw = int_mat_vec(&cartan, sc);
            let len = inner(sc, sc);
            if len <= Q::zero() {
                return Err(bad("form not positive definite"));
            }
            let coroot: Option<Vec<i64>> = sc
                .iter()
                .zip(&simple_sq_lengths)
                .map(|(&c, d)| rational::to_i64(&(q(c) * d / &len)))
                .collect();
            let coroot = coroot.ok_or_else(|| bad("non-integral coroot"))?;
            roots.push(Root {
                simple_coords: sc.clone(),
                fw_coords: fw,
                coroot_coords: coroot,
            });
        }
        let negatives: Vec<Root> = roots.iter().map(Root::negated).collect();
        roots.extend(negatives);

        let by_simple = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.simple_coords.clone(), i))
            .collect();
        let by_fw = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.fw_coords.clone(), i))
            .collect();

        let weyl_order = weyl_order_of_components(&cartan, &positive, &simple_sq_lengths);
        Ok(RootSystem {
            cartan_type: None,
            label,
            rho: Weight::from_ints(&vec![1; n]),
            cartan,
            cartan_inverse,
            simple_sq_lengths,
            roots,
            by_simple,
            by_fw,
            weyl_order,
        })
    }

    /// Root system generated by a subset of the simple roots.
    pub fn subsystem(&self, simple: &[usize]) -> Result<RootSystem> {
        for &i in simple {
            self.check_index(i)?;
        }
        let cartan: Vec<Vec<i64>> = simple
            .iter()
            .map(|&i| simple.iter().map(|&j| self.cartan[i][j]).collect())
            .collect();
        let idx: Vec<String> = simple.iter().map(|i| (i + 1).to_string()).collect();
        RootSystem::from_cartan_matrix(format!("{}[{}]", self.label, idx.join(",")), cartan)
    }

    pub fn cartan_type(&self) -> Option<CartanType> {
        self.cartan_type
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive()]
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.roots[..self.rank()]
    }

    /// All roots: positive ones, then their negatives in the same order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, index: usize) -> &Root {
        &self.roots[index]
    }

    /// Index of the opposite root in [`Self::roots`].
    pub fn negative_index(&self, index: usize) -> usize {
        let n = self.num_positive();
        if index < n {
            index + n
        } else {
            index - n
        }
    }

    pub fn root_index(&self, simple_coords: &[i64]) -> Option<usize> {
        self.by_simple.get(simple_coords).copied()
    }

    pub fn root_index_by_fw(&self, fw: &[i64]) -> Option<usize> {
        self.by_fw.get(fw).copied()
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn weyl_order(&self) -> u128 {
        self.weyl_order
    }

    /// `(alpha_i, alpha_i)` for the normalized invariant form (shortest roots
    /// of each component have squared length 2).
    pub fn simple_sq_lengths(&self) -> &[Q] {
        &self.simple_sq_lengths
    }

    /// Invariant form on the root lattice, arguments in simple-root coordinates.
    pub fn inner_product(&self, a: &[i64], b: &[i64]) -> Q {
        let n = self.rank();
        let mut s = Q::zero();
        for i in 0..n {
            for j in 0..n {
                let c = a[i] * b[j] * self.cartan[i][j];
                if c != 0 {
                    s += &self.simple_sq_lengths[i] * q(c);
                }
            }
        }
        s / q(2)
    }

    fn check_weight(&self, mu: &Weight) -> Result<()> {
        if mu.rank() != self.rank() {
            return Err(Error::RankMismatch {
                module: MODULE,
                expected: self.rank(),
                found: mu.rank(),
            });
        }
        Ok(())
    }

    fn check_root(&self, alpha: &Root) -> Result<()> {
        if alpha.simple_coords.len() != self.rank() || self.root_index(&alpha.simple_coords).is_none() {
            return Err(Error::RankMismatch {
                module: MODULE,
                expected: self.rank(),
                found: alpha.simple_coords.len(),
            });
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::IndexOutOfRange {
                module: MODULE,
                index: i,
                bound: self.rank(),
            });
        }
        Ok(())
    }

    /// Coroot pairing `<mu, alpha^v>`.
    pub fn pairing(&self, mu: &Weight, alpha: &Root) -> Result<Q> {
        self.check_weight(mu)?;
        self.check_root(alpha)?;
        Ok(pair(mu, alpha))
    }

    /// `s_alpha(mu) = mu - <mu, alpha^v> alpha`.
    pub fn reflect(&self, alpha: &Root, mu: &Weight) -> Result<Weight> {
        let c = self.pairing(mu, alpha)?;
        Ok(mu - &alpha.fw_coords().scale(&c))
    }

    /// Converts a weight to simple-root coordinates (generally rational).
    pub fn to_simple_coords(&self, mu: &Weight) -> Vec<Q> {
        linalg::mat_vec(&self.cartan_inverse, mu.coords())
    }

    /// Weight of an integral combination of simple roots.
    pub fn weight_of(&self, simple_coords: &[i64]) -> Weight {
        Weight::from_ints(&int_mat_vec(&self.cartan, simple_coords))
    }

    /// If `nu - mu` is a nonnegative integer combination of simple roots,
    /// returns its coordinates.
    pub fn root_cone_offset(&self, mu: &Weight, nu: &Weight) -> Option<Vec<i64>> {
        let diff = self.to_simple_coords(&(nu - mu));
        diff.iter()
            .map(|c| rational::to_i64(c).filter(|&x| x >= 0))
            .collect()
    }

    pub fn is_integral(&self, lambda: &Weight) -> bool {
        lambda.rank() == self.rank() && lambda.is_integral()
    }

    /// `<lambda, alpha^v>` is a negative integer for every positive root.
    pub fn is_antidominant_regular_integral(&self, lambda: &Weight) -> bool {
        lambda.rank() == self.rank()
            && self
                .positive_roots()
                .iter()
                .all(|a| rational::is_negative_integer(&pair(lambda, a)))
    }

    /// No positive coroot vanishes on `lambda`.
    pub fn is_regular(&self, lambda: &Weight) -> bool {
        lambda.rank() == self.rank() && self.positive_roots().iter().all(|a| !pair(lambda, a).is_zero())
    }

    /// Antidominant representative of the Weyl orbit, reached by repeated
    /// simple reflections. Works for arbitrary rational weights.
    pub fn infinitesimal_character(&self, lambda: &Weight) -> Result<InfinitesimalCharacter> {
        self.check_weight(lambda)?;
        let mut mu = lambda.clone();
        while let Some(i) = mu.coords().iter().position(|c| c.is_positive()) {
            mu = self.reflect(&self.roots[i], &mu)?;
        }
        Ok(InfinitesimalCharacter {
            orbit_representative: mu,
        })
    }

    /// Whether `lambda2` lies in the Weyl orbit of `lambda1`, decided by
    /// enumerating the orbit.
    pub fn infinitesimal_character_equal(&self, lambda1: &Weight, lambda2: &Weight, group: &WeylGroup) -> Result<bool> {
        self.check_weight(lambda1)?;
        self.check_weight(lambda2)?;
        for w in group.elements() {
            if &w.act(lambda1)? == lambda2 {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            word: Vec::new(),
            matrix: int_identity(self.rank()),
        }
    }

    fn simple_reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m = int_identity(n);
        for (k, row) in m.iter_mut().enumerate() {
            row[i] -= self.cartan[k][i];
        }
        m
    }

    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        self.check_index(i)?;
        Ok(WeylElement {
            word: vec![i],
            matrix: self.simple_reflection_matrix(i),
        })
    }

    /// Reflection in an arbitrary root.
    pub fn reflection(&self, alpha: &Root) -> Result<WeylElement> {
        self.check_root(alpha)?;
        let n = self.rank();
        let matrix: Vec<Vec<i64>> = (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| i64::from(k == j) - alpha.fw_coords[k] * alpha.coroot_coords[j])
                    .collect()
            })
            .collect();
        self.element_from_matrix(matrix)
    }

    /// Image of a root under a Weyl element, as an index into [`Self::roots`].
    pub fn apply_to_root(&self, w: &WeylElement, root_index: usize) -> usize {
        let image = w.act_ints(&self.roots[root_index].fw_coords);
        self.by_fw[&image]
    }

    /// Recovers the element (with its lexicographically least reduced word)
    /// from its matrix by peeling off the smallest left descent each step.
    pub fn element_from_matrix(&self, matrix: Vec<Vec<i64>>) -> Result<WeylElement> {
        let n = self.rank();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::RankMismatch {
                module: MODULE,
                expected: n,
                found: matrix.len(),
            });
        }
        let np = self.num_positive();
        let mut word = Vec::new();
        let mut cur = matrix.clone();
        let identity = int_identity(n);
        while cur != identity {
            // left descent i: some positive root is sent to -alpha_i
            let mut descent = None;
            for r in self.positive_roots() {
                let image = int_mat_vec(&cur, &r.fw_coords);
                match self.by_fw.get(&image) {
                    Some(&k) if k >= np && k - np < n => {
                        let i = k - np;
                        descent = Some(descent.map_or(i, |d: usize| d.min(i)));
                    }
                    Some(_) => {}
                    None => {
                        return Err(Error::precondition(MODULE, "matrix does not permute the roots"));
                    }
                }
            }
            let Some(i) = descent else {
                return Err(Error::precondition(MODULE, "matrix is not a Weyl group element"));
            };
            word.push(i);
            cur = int_mat_mul(&self.simple_reflection_matrix(i), &cur);
            if word.len() > np {
                return Err(Error::precondition(MODULE, "matrix is not a Weyl group element"));
            }
        }
        Ok(WeylElement { word, matrix })
    }

    pub fn multiply(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        self.element_from_matrix(int_mat_mul(&a.matrix, &b.matrix))
            .expect("product of Weyl elements")
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let mut m = self.identity().matrix;
        for &i in w.word.iter().rev() {
            m = int_mat_mul(&m, &self.simple_reflection_matrix(i));
        }
        self.element_from_matrix(m).expect("inverse of a Weyl element")
    }

    /// Applies a Weyl element to a weight.
    pub fn act(&self, w: &WeylElement, mu: &Weight) -> Result<Weight> {
        self.check_weight(mu)?;
        w.act(mu)
    }

    /// Length by counting positive roots sent to negative roots.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        let np = self.num_positive();
        (0..np).filter(|&i| self.apply_to_root(w, i) >= np).count()
    }

    /// Length of `w`; equal to both the reduced-word length and
    /// [`Self::inversion_count`].
    pub fn length(&self, w: &WeylElement) -> usize {
        w.length()
    }

    /// Enumerates the whole Weyl group, refusing if it has more than `bound`
    /// elements.
    pub fn weyl_elements(&self, bound: u128) -> Result<WeylGroup> {
        WeylGroup::enumerate(self, bound)
    }

    /// Parabolic subset with Levi factor generated by the given simple roots
    /// (0-based indices).
    pub fn parabolic(&self, levi: &[usize]) -> Result<ParabolicSubset> {
        for &i in levi {
            self.check_index(i)?;
        }
        let set: BTreeSet<usize> = levi.iter().copied().collect();
        let (mut levi_positive, mut nilradical) = (Vec::new(), Vec::new());
        for (k, r) in self.positive_roots().iter().enumerate() {
            let in_levi = r
                .simple_coords
                .iter()
                .enumerate()
                .all(|(i, &c)| c == 0 || set.contains(&i));
            if in_levi {
                levi_positive.push(k);
            } else {
                nilradical.push(k);
            }
        }
        let mut sigma = vec![0i64; self.rank()];
        for &k in &nilradical {
            for (s, x) in sigma.iter_mut().zip(&self.roots[k].fw_coords) {
                *s += x;
            }
        }
        Ok(ParabolicSubset {
            levi_simple_indices: set.into_iter().collect(),
            nilradical,
            levi_positive,
            sigma: Weight::from_ints(&sigma),
            cartan: self.cartan.clone(),
        })
    }

    /// `{w : <w lambda, alpha^v> < 0 for every Levi positive root alpha}`,
    /// one representative per coset `W_S w`.
    pub fn coset_reps(&self, parabolic: &ParabolicSubset, lambda: &Weight, group: &WeylGroup) -> Result<Vec<WeylElement>> {
        if !parabolic.belongs_to(self) {
            return Err(Error::Mismatch { module: MODULE });
        }
        if !self.is_antidominant_regular_integral(lambda) {
            return Err(Error::precondition(
                MODULE,
                format!("lambda = {lambda} is not antidominant regular integral"),
            ));
        }
        let mut reps = Vec::new();
        for w in group.elements() {
            let wl = w.act(lambda)?;
            if parabolic
                .levi_positive
                .iter()
                .all(|&k| pair(&wl, &self.roots[k]).is_negative())
            {
                reps.push(w.clone());
            }
        }
        Ok(reps)
    }
}

fn pair(mu: &Weight, alpha: &Root) -> Q {
    mu.coords()
        .iter()
        .zip(&alpha.coroot_coords)
        .filter(|(_, &c)| c != 0)
        .map(|(m, &c)| m * q(c))
        .sum()
}

/// Squared lengths of simple roots making `d_i * cartan[i][j]` symmetric,
/// normalized so the shortest root of each component has length 2.
fn symmetrizing_lengths(cartan: &[Vec<i64>]) -> Option<Vec<Q>> {
    let n = cartan.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        let mut component = vec![start];
        d[start] = Some(Q::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if j == i || cartan[i][j] == 0 {
                    continue;
                }
                let dj = d[i].clone()? * q(cartan[i][j]) / q(cartan[j][i]);
                match &d[j] {
                    Some(existing) if *existing != dj => return None,
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        component.push(j);
                        queue.push_back(j);
                    }
                }
            }
        }
        let min = component.iter().map(|&i| d[i].clone().unwrap()).min()?;
        let scale = q(2) / min;
        for &i in &component {
            d[i] = Some(d[i].take().unwrap() * &scale);
        }
    }
    d.into_iter().collect()
}

/// Positive roots in simple-root coordinates, found by extending root
/// strings one height at a time. `None` if the closure does not terminate.
fn positive_root_closure(cartan: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = cartan.len();
    let unit = |i: usize| (0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>();
    let mut known: BTreeSet<Vec<i64>> = (0..n).map(unit).collect();
    let mut layer: Vec<Vec<i64>> = (0..n).map(unit).collect();
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for r in &layer {
            let fw = int_mat_vec(cartan, r);
            for i in 0..n {
                let mut p = 0;
                let mut s = r.clone();
                loop {
                    s[i] -= 1;
                    if known.contains(&s) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - fw[i] > 0 {
                    let mut t = r.clone();
                    t[i] += 1;
                    if !known.contains(&t) {
                        next.insert(t);
                    }
                }
            }
        }
        known.extend(next.iter().cloned());
        if known.len() > MAX_ROOTS {
            return None;
        }
        layer = next.into_iter().collect();
    }
    Some(known.into_iter().collect())
}

/// Order of the Weyl group of a possibly reducible system, from the
/// classification of each connected component by (rank, number of positive
/// roots, simply-lacedness).
fn weyl_order_of_components(cartan: &[Vec<i64>], positive: &[Vec<i64>], lengths: &[Q]) -> u128 {
    let n = cartan.len();
    let mut seen = vec![false; n];
    let mut order = 1u128;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let a = comp[i];
            for b in 0..n {
                if !seen[b] && cartan[a][b] != 0 {
                    seen[b] = true;
                    comp.push(b);
                }
            }
            i += 1;
        }
        let rank = comp.len();
        let np = positive
            .iter()
            .filter(|r| r.iter().enumerate().any(|(k, &c)| c != 0 && comp.contains(&k)))
            .count();
        let simply_laced = comp.iter().all(|&k| lengths[k] == lengths[comp[0]]);
        let ty = match (rank, np, simply_laced) {
            (2, 6, false) => CartanType::G,
            (4, 24, false) => CartanType::F,
            (_, _, false) => CartanType::B,
            (6, 36, true) => CartanType::E,
            (7, 63, true) => CartanType::E,
            (8, 120, true) => CartanType::E,
            (r, p, true) if r >= 4 && p == r * (r - 1) => CartanType::D,
            _ => CartanType::A,
        };
        order *= ty.weyl_order(rank);
    }
    order
}

/// The enumerated Weyl group, in breadth-first order: by length, then by
/// reduced word.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    index: HashMap<Vec<Vec<i64>>, usize>,
}

impl WeylGroup {
    pub fn enumerate(rs: &RootSystem, bound: u128) -> Result<WeylGroup> {
        if rs.weyl_order() > bound {
            return Err(Error::ResourceLimit {
                module: MODULE,
                what: "Weyl group enumeration",
                needed: rs.weyl_order(),
                limit: bound,
            });
        }
        let n = rs.rank();
        let gens: Vec<Vec<Vec<i64>>> = (0..n).map(|i| rs.simple_reflection_matrix(i)).collect();
        let mut elements = vec![rs.identity()];
        let mut index: HashMap<Vec<Vec<i64>>, usize> = HashMap::new();
        index.insert(elements[0].matrix.clone(), 0);
        let mut level_start = 0;
        while level_start < elements.len() {
            let level_end = elements.len();
            for u in level_start..level_end {
                for (i, g) in gens.iter().enumerate() {
                    let m = int_mat_mul(&elements[u].matrix, g);
                    if index.contains_key(&m) {
                        continue;
                    }
                    let mut word = elements[u].word.clone();
                    word.push(i);
                    index.insert(m.clone(), elements.len());
                    elements.push(WeylElement { word, matrix: m });
                }
            }
            level_start = level_end;
        }
        debug_assert_eq!(elements.len() as u128, rs.weyl_order());
        Ok(WeylGroup { elements, index })
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.matrix).copied()
    }

    pub fn longest(&self) -> &WeylElement {
        self.elements.last().expect("Weyl group is never empty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;
    use proptest::prelude::*;

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    #[test]
    fn rank_one() {
        let rs = build_root_system("A", 1).unwrap();
        assert_eq!(rs.num_positive(), 1);
        assert_eq!(rs.weyl_order(), 2);
        let g = rs.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
        let lengths: Vec<usize> = g.elements().iter().map(|e| e.length()).collect();
        assert_eq!(lengths, vec![0, 1]);
    }

    #[test]
    fn a2_roots_and_rho() {
        let rs = build_root_system("A", 2).unwrap();
        let pos: Vec<&[i64]> = rs.positive_roots().iter().map(|r| r.simple_coords()).collect();
        assert_eq!(pos, vec![&[1, 0][..], &[0, 1], &[1, 1]]);
        assert_eq!(rs.rho(), &w(&[1, 1]));
        assert_eq!(rs.weyl_order(), 6);
        // rho is half the sum of positive roots
        let mut sum = Weight::zero(2);
        for r in rs.positive_roots() {
            sum = &sum + &r.fw_coords();
        }
        assert_eq!(sum, rs.rho().scale(&q(2)));
    }

    #[test]
    fn invalid_pairs_are_named() {
        for (t, n) in [("Z", 1), ("A", 0), ("B", 1), ("C", 2), ("D", 3), ("E", 5), ("E", 9), ("F", 3), ("G", 3)] {
            let err = build_root_system(t, n).unwrap_err();
            assert_eq!(err, Error::InvalidType { label: t.into(), rank: n });
            assert!(err.to_string().contains(&format!("{t}{n}")));
        }
    }

    /// Reference counts of positive roots and Weyl group orders.
    #[test]
    fn classification_table() {
        let cases = [
            ("A", 1, 1, 2u128),
            ("A", 3, 6, 24),
            ("B", 2, 4, 8),
            ("B", 3, 9, 48),
            ("C", 3, 9, 48),
            ("D", 4, 12, 192),
            ("G", 2, 6, 12),
            ("F", 4, 24, 1152),
            ("E", 6, 36, 51840),
            ("E", 7, 63, 2903040),
            ("E", 8, 120, 696729600),
        ];
        for (t, n, np, order) in cases {
            let rs = build_root_system(t, n).unwrap();
            assert_eq!(rs.num_positive(), np, "{t}{n}");
            assert_eq!(rs.weyl_order(), order, "{t}{n}");
            let highest = rs.positive_roots().last().unwrap();
            assert!(rs.positive_roots().iter().all(|r| r.height() <= highest.height()));
        }
    }

    #[test]
    fn cartan_invariants_and_column_convention() {
        for (t, n) in [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("F", 4), ("G", 2), ("E", 6)] {
            let rs = build_root_system(t, n).unwrap();
            let a = rs.cartan_matrix();
            for i in 0..n {
                assert_eq!(a[i][i], 2);
                for j in 0..n {
                    if i != j {
                        assert!(a[i][j] <= 0);
                    }
                    // pairing(omega_i, alpha_j) is read off the simple root's coordinates
                    let alpha_j = &rs.simple_roots()[j];
                    assert_eq!(alpha_j.fw_coords().coords()[i], q(a[i][j]));
                    let mut e = vec![0; n];
                    e[i] = 1;
                    assert_eq!(rs.pairing(&w(&e), alpha_j).unwrap(), q(i64::from(i == j)));
                }
            }
            for r in rs.roots() {
                assert_eq!(rs.pairing(&r.fw_coords(), r).unwrap(), q(2));
                assert!(rs.root_index(&r.negated().simple_coords).is_some());
                for k in [2, 3, -2] {
                    let m: Vec<i64> = r.simple_coords().iter().map(|x| x * k).collect();
                    assert!(rs.root_index(&m).is_none());
                }
            }
            for r in rs.positive_roots() {
                assert!(r.simple_coords().iter().all(|&c| c >= 0));
            }
        }
    }

    #[test]
    fn g2_lengths() {
        let rs = build_root_system("G", 2).unwrap();
        assert_eq!(rs.simple_sq_lengths(), &[q(2), q(6)]);
        let highest = rs.positive_roots().last().unwrap();
        assert_eq!(highest.simple_coords(), &[3, 2]);
    }

    #[test]
    fn pairing_examples() {
        let rs = build_root_system("A", 2).unwrap();
        let theta = &rs.positive_roots()[2];
        assert_eq!(rs.pairing(rs.rho(), &rs.simple_roots()[0]).unwrap(), q(1));
        assert_eq!(rs.pairing(rs.rho(), theta).unwrap(), q(2));
        assert_eq!(rs.pairing(&Weight::zero(2), theta).unwrap(), q(0));
        assert!(matches!(
            rs.pairing(&Weight::zero(3), theta),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn reflection_examples() {
        let rs = build_root_system("A", 2).unwrap();
        let a1 = &rs.simple_roots()[0];
        assert_eq!(rs.reflect(a1, &a1.fw_coords()).unwrap(), -&a1.fw_coords());
        assert_eq!(rs.reflect(a1, &w(&[1, 0])).unwrap(), w(&[-1, 1]));
        let a = build_root_system("A", 1).unwrap();
        assert_eq!(a.reflect(&a.simple_roots()[0], &w(&[1])).unwrap(), w(&[-1]));
    }

    #[test]
    fn weyl_enumeration_examples() {
        let a2 = build_root_system("A", 2).unwrap();
        let g = a2.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
        let mut lengths: Vec<usize> = g.elements().iter().map(|e| e.length()).collect();
        lengths.sort();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3]);
        assert_eq!(g.longest().length(), 3);

        let b2 = build_root_system("B", 2).unwrap();
        let g = b2.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
        assert_eq!(g.len(), 8);
        assert_eq!(g.longest().length(), 4);

        let e8 = build_root_system("E", 8).unwrap();
        let err = e8.weyl_elements(DEFAULT_WEYL_BOUND).unwrap_err();
        assert!(err.is_resource());
        assert!(build_root_system("A", 3).unwrap().weyl_elements(23).unwrap_err().is_resource());
    }

    #[test]
    fn lengths_agree_and_words_are_lex_least() {
        for (t, n) in [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("G", 2)] {
            let rs = build_root_system(t, n).unwrap();
            let g = rs.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
            assert_eq!(g.len() as u128, rs.weyl_order());
            for e in g.elements() {
                assert_eq!(rs.inversion_count(e), e.length(), "{t}{n} {:?}", e.word());
                let rebuilt = rs.element_from_matrix(e.matrix().to_vec()).unwrap();
                assert_eq!(rebuilt.word(), e.word());
                // the word multiplies out to the matrix
                let mut m = rs.identity();
                for &i in e.word() {
                    m = WeylElement {
                        word: vec![],
                        matrix: int_mat_mul(&m.matrix, &rs.simple_reflection_matrix(i)),
                    };
                }
                assert_eq!(m.matrix(), e.matrix());
            }
        }
    }

    #[test]
    fn simple_reflections_have_length_one() {
        let rs = build_root_system("B", 3).unwrap();
        for i in 0..3 {
            let s = rs.simple_reflection(i).unwrap();
            assert_eq!(rs.inversion_count(&s), 1);
            assert_eq!(rs.length(&s), 1);
        }
        assert_eq!(rs.length(&rs.identity()), 0);
        assert!(rs.simple_reflection(3).is_err());
    }

    #[test]
    fn weyl_group_permutes_roots_and_signs_cancel() {
        for (t, n) in [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3), ("C", 3)] {
            let rs = build_root_system(t, n).unwrap();
            let g = rs.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
            let mut signed = 0i64;
            for e in g.elements() {
                signed += if e.length() % 2 == 0 { 1 } else { -1 };
                let mut image: Vec<usize> = (0..rs.roots().len()).map(|k| rs.apply_to_root(e, k)).collect();
                image.sort();
                assert_eq!(image, (0..rs.roots().len()).collect::<Vec<_>>());
                // coroot pairings are Weyl invariant
                for (k, r) in rs.roots().iter().enumerate() {
                    let wr = rs.root(rs.apply_to_root(e, k));
                    let wrho = e.act(rs.rho()).unwrap();
                    assert_eq!(rs.pairing(&wrho, wr).unwrap(), rs.pairing(rs.rho(), r).unwrap());
                }
            }
            assert_eq!(signed, 0);
        }
    }

    #[test]
    fn act_examples() {
        let a1 = build_root_system("A", 1).unwrap();
        let g = a1.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
        assert_eq!(a1.act(&g.elements()[0], &w(&[5])).unwrap(), w(&[5]));
        assert_eq!(a1.act(&g.elements()[1], &w(&[-2])).unwrap(), w(&[2]));

        let a2 = build_root_system("A", 2).unwrap();
        let s1 = a2.simple_reflection(0).unwrap();
        let s2 = a2.simple_reflection(1).unwrap();
        let s12 = a2.multiply(&s1, &s2);
        assert_eq!(s12.word(), &[0, 1]);
        let wrho = a2.act(&s12, a2.rho()).unwrap();
        // |<w rho, w alpha>| = |<rho, alpha>| for all roots
        for (k, r) in a2.roots().iter().enumerate() {
            let wr = a2.root(a2.apply_to_root(&s12, k));
            assert_eq!(
                a2.pairing(&wrho, wr).unwrap().abs(),
                a2.pairing(a2.rho(), r).unwrap().abs()
            );
        }
        assert_eq!(wrho, w(&[-2, 1]));
        assert!(a2.act(&s12, &w(&[1])).is_err());
    }

    #[test]
    fn antidominance_and_regularity() {
        let a2 = build_root_system("A", 2).unwrap();
        assert!(a2.is_antidominant_regular_integral(&-a2.rho()));
        assert!(!a2.is_antidominant_regular_integral(&Weight::zero(2)));
        assert!(!a2.is_antidominant_regular_integral(&Weight::new(vec![q(-1), q_frac(1, 2)])));
        assert!(a2.is_regular(&-a2.rho()));
        assert!(!a2.is_regular(&w(&[1, 0])));
        assert!(a2.is_regular(&Weight::new(vec![q_frac(1, 3), q_frac(1, 3)])));
    }

    /// Antidominant-regular-integral on all positive roots agrees with the
    /// check on simple roots once integrality is known.
    #[test]
    fn antidominance_simple_root_criterion() {
        for (t, n) in [("A", 2), ("B", 2), ("G", 2), ("A", 3)] {
            let rs = build_root_system(t, n).unwrap();
            let range = -3..=1i64;
            let grid: Vec<Vec<i64>> = (0..n).fold(vec![vec![]], |acc, _| {
                acc.into_iter()
                    .flat_map(|p| range.clone().map(move |x| [p.clone(), vec![x]].concat()))
                    .collect()
            });
            for c in grid {
                let simple_only = c.iter().all(|&x| x < 0);
                assert_eq!(rs.is_antidominant_regular_integral(&w(&c)), simple_only, "{t}{n} {c:?}");
            }
        }
    }

    /// Regularity by coroots agrees with a trivial orbit stabilizer.
    #[test]
    fn regular_iff_trivial_stabilizer() {
        let rs = build_root_system("B", 2).unwrap();
        let g = rs.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
        for a in -2..=2 {
            for b in -2..=2 {
                let lam = Weight::new(vec![q_frac(a, 2), q(b)]);
                let fixers = g.elements().iter().filter(|e| e.act(&lam).unwrap() == lam).count();
                assert_eq!(rs.is_regular(&lam), fixers == 1, "{lam}");
            }
        }
    }

    #[test]
    fn infinitesimal_characters() {
        let g_of = |rs: &RootSystem| rs.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
        let a1 = build_root_system("A", 1).unwrap();
        let g1 = g_of(&a1);
        assert!(a1.infinitesimal_character_equal(&w(&[-2]), &w(&[2]), &g1).unwrap());
        let a2 = build_root_system("A", 2).unwrap();
        let g2 = g_of(&a2);
        let lam = w(&[3, -1]);
        assert!(a2.infinitesimal_character_equal(&lam, &lam, &g2).unwrap());
        assert!(a2.infinitesimal_character_equal(a2.rho(), &w(&[-1, 2]), &g2).unwrap());
        assert!(!a2.infinitesimal_character_equal(a2.rho(), &w(&[2, 2]), &g2).unwrap());
        // the canonical representative decides the same relation
        for a in -2..=2 {
            for b in -2..=2 {
                let mu = Weight::new(vec![q_frac(a, 3), q(b)]);
                let same = a2.infinitesimal_character_equal(a2.rho(), &mu, &g2).unwrap();
                let canon = a2.infinitesimal_character(a2.rho()).unwrap() == a2.infinitesimal_character(&mu).unwrap();
                assert_eq!(same, canon);
            }
        }
    }

    #[test]
    fn parabolic_examples() {
        let a2 = build_root_system("A", 2).unwrap();
        let borel = a2.parabolic(&[]).unwrap();
        assert_eq!(borel.nilradical(), &[0, 1, 2]);
        assert_eq!(borel.sigma(), &a2.rho().scale(&q(2)));
        let p1 = a2.parabolic(&[0]).unwrap();
        assert_eq!(p1.nilradical(), &[1, 2]);
        assert_eq!(p1.levi_positive(), &[0]);
        // sigma = alpha_1 + 2 alpha_2
        assert_eq!(p1.sigma(), &a2.weight_of(&[1, 2]));
        let full = a2.parabolic(&[0, 1]).unwrap();
        assert!(full.nilradical().is_empty());
        assert!(matches!(a2.parabolic(&[2]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn nilradicals_are_closed() {
        for (t, n) in [("A", 3), ("B", 3), ("G", 2), ("C", 3)] {
            let rs = build_root_system(t, n).unwrap();
            for mask in 0..(1u32 << n) {
                let s: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                let p = rs.parabolic(&s).unwrap();
                assert_eq!(p.nilradical().len() + p.levi_positive().len(), rs.num_positive());
                for &a in p.nilradical() {
                    for &b in p.nilradical() {
                        let sum: Vec<i64> = rs.root(a).simple_coords().iter().zip(rs.root(b).simple_coords()).map(|(x, y)| x + y).collect();
                        if let Some(k) = rs.root_index(&sum) {
                            assert!(p.nilradical().contains(&k));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coset_rep_examples() {
        let a2 = build_root_system("A", 2).unwrap();
        let g = a2.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
        let lam = w(&[-2, -2]);
        assert_eq!(a2.coset_reps(&a2.parabolic(&[]).unwrap(), &lam, &g).unwrap().len(), 6);
        let full = a2.coset_reps(&a2.parabolic(&[0, 1]).unwrap(), &lam, &g).unwrap();
        assert_eq!(full, vec![a2.identity()]);
        let mut lens: Vec<usize> = a2
            .coset_reps(&a2.parabolic(&[0]).unwrap(), &lam, &g)
            .unwrap()
            .iter()
            .map(|e| e.length())
            .collect();
        lens.sort();
        assert_eq!(lens, vec![0, 1, 2]);
        assert!(a2.coset_reps(&a2.parabolic(&[0]).unwrap(), &w(&[0, -1]), &g).is_err());
    }

    /// Every element factors uniquely as u * v with u in W_S and v a coset
    /// representative.
    #[test]
    fn coset_reps_partition_the_group() {
        for (t, n) in [("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3)] {
            let rs = build_root_system(t, n).unwrap();
            let g = rs.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
            let lam = -&rs.rho().scale(&q(2));
            for mask in 0..(1u32 << n) {
                let s: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                let p = rs.parabolic(&s).unwrap();
                let reps = rs.coset_reps(&p, &lam, &g).unwrap();
                let levi: Vec<&WeylElement> = g
                    .elements()
                    .iter()
                    .filter(|e| e.word().iter().all(|i| s.contains(i)))
                    .collect();
                assert_eq!(reps.len() * levi.len(), g.len(), "{t}{n} {s:?}");
                let mut hits = vec![0; g.len()];
                for u in &levi {
                    for v in &reps {
                        hits[g.position(&rs.multiply(u, v)).unwrap()] += 1;
                    }
                }
                assert!(hits.iter().all(|&h| h == 1), "{t}{n} {s:?}");
                // representatives are the minimal-length elements of their cosets
                for v in &reps {
                    for u in &levi {
                        assert!(rs.multiply(u, v).length() >= v.length());
                    }
                }
            }
        }
    }

    #[test]
    fn reflections_in_arbitrary_roots() {
        let rs = build_root_system("G", 2).unwrap();
        for r in rs.positive_roots() {
            let s = rs.reflection(r).unwrap();
            assert_eq!(s.length() % 2, 1);
            assert_eq!(rs.multiply(&s, &s), rs.identity());
            let k = rs.root_index(r.simple_coords()).unwrap();
            assert_eq!(rs.apply_to_root(&s, k), rs.negative_index(k));
        }
    }

    #[test]
    fn subsystems() {
        let a3 = build_root_system("A", 3).unwrap();
        let sub = a3.subsystem(&[0, 2]).unwrap();
        assert_eq!(sub.rank(), 2);
        assert_eq!(sub.num_positive(), 2);
        assert_eq!(sub.weyl_order(), 4);
        let empty = a3.subsystem(&[]).unwrap();
        assert_eq!(empty.rank(), 0);
        assert_eq!(empty.weyl_order(), 1);
        assert_eq!(empty.weyl_elements(10).unwrap().len(), 1);
        let e7 = build_root_system("E", 8).unwrap().subsystem(&[0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(e7.weyl_order(), 2_903_040);
        let b6 = build_root_system("B", 6).unwrap();
        assert_eq!(b6.weyl_order(), 46_080);
    }

    proptest! {
        #[test]
        fn reflection_is_an_involution(
            root in 0usize..12,
            a in -20i64..20, b in 1i64..7, c in -20i64..20, d in 1i64..7,
        ) {
            let rs = build_root_system("G", 2).unwrap();
            let alpha = rs.root(root);
            let mu = Weight::new(vec![q_frac(a, b), q_frac(c, d)]);
            let once = rs.reflect(alpha, &mu).unwrap();
            prop_assert_eq!(rs.reflect(alpha, &once).unwrap(), mu.clone());
            // the reflecting hyperplane is fixed
            if rs.pairing(&mu, alpha).unwrap().is_zero() {
                prop_assert_eq!(once, mu);
            }
        }
    }
}
