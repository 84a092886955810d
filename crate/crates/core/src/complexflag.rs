//! Chains of simple roots and the predicted `n_y`-homology of regular
//! standard modules for a complex group.
//!
//! A chain `a_1, .., a_k` starts from the standard positive system
//! `P_0 = Sigma+`. Each entry must be a positive root of `Sigma+` that is
//! simple in the current system `P_{j-1}`, which is then replaced by
//! `P_j = s_{a_j} P_{j-1}`. The Weyl element named by the chain is
//! `w = s_{a_1} ... s_{a_k}`, and `P_j = w_j^{-1} Sigma+` for the partial
//! products `w_j`.

use crate::error::{Error, Result};
use crate::par;
use crate::rootsys::{RootSystem, Weight, WeylElement};
use std::collections::BTreeSet;
use std::fmt;

const MODULE: &str = "complexflag";

/// Why a sequence of roots is not a chain. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("entry {position}: root index {index} out of range (the system has {bound} roots)")]
    UnknownRoot { position: usize, index: usize, bound: usize },
    #[error("entry {position}: {root} is not a positive root")]
    NotPositive { position: usize, root: SimpleCoords },
    #[error("entry {position}: {root} does not lie in the current positive system")]
    NotInSystem { position: usize, root: SimpleCoords },
    #[error("entry {position}: {root} is not simple in the current positive system: {root} = ({left}) + ({right})")]
    Decomposable {
        position: usize,
        root: SimpleCoords,
        left: SimpleCoords,
        right: SimpleCoords,
    },
}

impl ChainError {
    pub fn position(&self) -> usize {
        match self {
            ChainError::UnknownRoot { position, .. }
            | ChainError::NotPositive { position, .. }
            | ChainError::NotInSystem { position, .. }
            | ChainError::Decomposable { position, .. } => *position,
        }
    }
}

/// A root written in simple-root coordinates, displayed as `a1+a2`,
/// `-2a1-a2` and so on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleCoords(pub Vec<i64>);

impl fmt::Display for SimpleCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainOfSimpleRoots {
    roots: Vec<usize>,
    weyl_element: WeylElement,
    positive_systems: Vec<BTreeSet<usize>>,
}

impl ChainOfSimpleRoots {
    /// Root indices of the chain entries.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn weyl_element(&self) -> &WeylElement {
        &self.weyl_element
    }

    /// `P_0, .., P_k` as sets of root indices.
    pub fn positive_systems(&self) -> &[BTreeSet<usize>] {
        &self.positive_systems
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterParam {
    base_differential: Weight,
    lambda: Weight,
}

impl CharacterParam {
    pub fn from_lambda(rs: &RootSystem, lambda: &Weight) -> Result<Self> {
        if lambda.rank() != rs.rank() {
            return Err(Error::RankMismatch {
                module: MODULE,
                expected: rs.rank(),
                found: lambda.rank(),
            });
        }
        Ok(CharacterParam {
            base_differential: lambda + rs.rho(),
            lambda: lambda.clone(),
        })
    }

    /// `mu = lambda + rho`.
    pub fn base_differential(&self) -> &Weight {
        &self.base_differential
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardModulePrediction {
    pub chain: ChainOfSimpleRoots,
    /// The only degree with nonzero homology.
    pub degree: usize,
    pub character_differential: Weight,
    pub chi_w_differential: Weight,
}

fn reflect_system(rs: &RootSystem, system: &BTreeSet<usize>, root: usize) -> BTreeSet<usize> {
    let s = rs.reflection(rs.root(root)).expect("root of this system");
    system.iter().map(|&r| rs.apply_to_root(&s, r)).collect()
}

fn difference(rs: &RootSystem, a: usize, b: usize) -> Option<usize> {
    let d: Vec<i64> = rs
        .root(a)
        .simple_coords()
        .iter()
        .zip(rs.root(b).simple_coords())
        .map(|(x, y)| x - y)
        .collect();
    rs.root_index(&d)
}

/// First splitting `root = left + right` with both summands in `system`.
fn decomposition(rs: &RootSystem, system: &BTreeSet<usize>, root: usize) -> Option<(usize, usize)> {
    system.iter().find_map(|&a| {
        difference(rs, root, a)
            .filter(|b| system.contains(b))
            .map(|b| (a, b))
    })
}

fn check_step(rs: &RootSystem, system: &BTreeSet<usize>, root: usize, position: usize) -> Result<(), ChainError> {
    let coords = || SimpleCoords(rs.root(root).simple_coords().to_vec());
    if root >= rs.roots().len() {
        return Err(ChainError::UnknownRoot {
            position,
            index: root,
            bound: rs.roots().len(),
        });
    }
    if !rs.root(root).is_positive() {
        return Err(ChainError::NotPositive { position, root: coords() });
    }
    if !system.contains(&root) {
        return Err(ChainError::NotInSystem { position, root: coords() });
    }
    if let Some((a, b)) = decomposition(rs, system, root) {
        return Err(ChainError::Decomposable {
            position,
            root: coords(),
            left: SimpleCoords(rs.root(a).simple_coords().to_vec()),
            right: SimpleCoords(rs.root(b).simple_coords().to_vec()),
        });
    }
    Ok(())
}

/// Validates a sequence of root indices (0-based, into `rs.roots()`).
pub fn validate_chain(rs: &RootSystem, roots: &[usize]) -> Result<ChainOfSimpleRoots> {
    let mut system: BTreeSet<usize> = (0..rs.num_positive()).collect();
    let mut systems = vec![system.clone()];
    let mut w = rs.identity();
    for (j, &root) in roots.iter().enumerate() {
        check_step(rs, &system, root, j + 1)?;
        system = reflect_system(rs, &system, root);
        systems.push(system.clone());
        w = rs.multiply(&w, &rs.reflection(rs.root(root))?);
    }
    Ok(ChainOfSimpleRoots {
        roots: roots.to_vec(),
        weyl_element: w,
        positive_systems: systems,
    })
}

/// Differential of `chi_w`: `-(a_1 + .. + a_k)`.
pub fn chi_w(rs: &RootSystem, chain: &ChainOfSimpleRoots) -> Weight {
    chain
        .roots
        .iter()
        .fold(Weight::zero(rs.rank()), |acc, &r| &acc - &rs.root(r).fw_coords())
}

/// `q^w = N - l(w)`.
pub fn codim(rs: &RootSystem, w: &WeylElement) -> usize {
    rs.num_positive() - w.length()
}

pub fn predict_standard(
    rs: &RootSystem,
    chi: &CharacterParam,
    chain: &ChainOfSimpleRoots,
) -> Result<StandardModulePrediction> {
    if chi.lambda.rank() != rs.rank() || chain.weyl_element.rank() != rs.rank() {
        return Err(Error::RankMismatch {
            module: MODULE,
            expected: rs.rank(),
            found: chi.lambda.rank(),
        });
    }
    if !rs.is_antidominant_regular_integral(&chi.lambda) {
        return Err(Error::precondition(
            MODULE,
            format!("lambda = {} is not antidominant regular integral", chi.lambda),
        ));
    }
    if chain.positive_systems.first().map(BTreeSet::len) != Some(rs.num_positive()) {
        return Err(Error::Mismatch { module: MODULE });
    }
    let chi_w_differential = chi_w(rs, chain);
    Ok(StandardModulePrediction {
        chain: chain.clone(),
        degree: codim(rs, &chain.weyl_element),
        character_differential: &chi.base_differential + &chi_w_differential,
        chi_w_differential,
    })
}

/// Every valid chain of length at most `max_len`, ordered by length and
/// then lexicographically by root indices.
pub fn enumerate_chains(rs: &RootSystem, max_len: usize) -> Vec<ChainOfSimpleRoots> {
    fn extend(rs: &RootSystem, chain: ChainOfSimpleRoots, max_len: usize, out: &mut Vec<ChainOfSimpleRoots>) {
        let len = chain.len();
        let system = chain.positive_systems[len].clone();
        out.push(chain.clone());
        if len == max_len {
            return;
        }
        for &root in system.range(..rs.num_positive()) {
            if check_step(rs, &system, root, len + 1).is_ok() {
                let mut next = chain.clone();
                next.roots.push(root);
                next.positive_systems.push(reflect_system(rs, &system, root));
                next.weyl_element = rs.multiply(&chain.weyl_element, &rs.reflection(rs.root(root)).expect("root"));
                extend(rs, next, max_len, out);
            }
        }
    }
    let empty = validate_chain(rs, &[]).expect("empty chain");
    let mut out = vec![empty.clone()];
    if max_len > 0 {
        let firsts: Vec<usize> = (0..rs.num_positive())
            .filter(|&r| check_step(rs, &empty.positive_systems[0], r, 1).is_ok())
            .collect();
        let branches = par::map(&firsts, |&r| {
            let mut local = Vec::new();
            extend(rs, validate_chain(rs, &[r]).expect("simple root"), max_len, &mut local);
            local
        });
        out.extend(branches.into_iter().flatten());
    }
    out.sort_by(|a, b| (a.len(), &a.roots).cmp(&(b.len(), &b.roots)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, WeylElement, DEFAULT_WEYL_BOUND};
    use std::collections::{BTreeMap, HashMap, HashSet};

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    fn idx(rs: &RootSystem, simple: &[i64]) -> usize {
        rs.root_index(simple).unwrap()
    }

    #[test]
    fn empty_chain() {
        let rs = build_root_system("A", 2).unwrap();
        let c = validate_chain(&rs, &[]).unwrap();
        assert!(c.weyl_element().is_identity());
        assert_eq!(chi_w(&rs, &c), w(&[0, 0]));
        assert_eq!(codim(&rs, c.weyl_element()), 3);
    }

    #[test]
    fn a2_examples() {
        let rs = build_root_system("A", 2).unwrap();
        let a1 = idx(&rs, &[1, 0]);
        let a2 = idx(&rs, &[0, 1]);
        let a12 = idx(&rs, &[1, 1]);
        assert_eq!(a12, 2);
        let c = validate_chain(&rs, &[a1, a12]).unwrap();
        assert_eq!(c.weyl_element().length(), 2);
        let expect = rs.multiply(
            &rs.reflection(rs.root(a1)).unwrap(),
            &rs.reflection(rs.root(a12)).unwrap(),
        );
        assert_eq!(c.weyl_element(), &expect);
        let neg_a1 = rs.negative_index(a1);
        assert_eq!(c.positive_systems()[1], BTreeSet::from([neg_a1, a2, a12]));
        assert_eq!(chi_w(&rs, &c), &(-&rs.root(a1).fw_coords().scale(&crate::rational::q(2))) - &rs.root(a2).fw_coords());

        let err = validate_chain(&rs, &[a1, a2]).unwrap_err();
        match err {
            Error::Chain(ChainError::Decomposable { position, root, left, right }) => {
                assert_eq!(position, 2);
                assert_eq!(root, SimpleCoords(vec![0, 1]));
                let mut parts = [left.0, right.0];
                parts.sort();
                assert_eq!(parts, [vec![-1, 0], vec![1, 1]]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            validate_chain(&rs, &[a1, a1]),
            Err(Error::Chain(ChainError::NotInSystem { position: 2, .. }))
        ));
        assert!(matches!(
            validate_chain(&rs, &[neg_a1]),
            Err(Error::Chain(ChainError::NotPositive { position: 1, .. }))
        ));
        assert!(matches!(
            validate_chain(&rs, &[a12]),
            Err(Error::Chain(ChainError::Decomposable { position: 1, .. }))
        ));
        assert!(matches!(
            validate_chain(&rs, &[99]),
            Err(Error::Chain(ChainError::UnknownRoot { position: 1, .. }))
        ));
    }

    #[test]
    fn witness_display() {
        assert_eq!(SimpleCoords(vec![1, 1]).to_string(), "a1+a2");
        assert_eq!(SimpleCoords(vec![-2, -1]).to_string(), "-2a1-a2");
        assert_eq!(SimpleCoords(vec![0, 0]).to_string(), "0");
    }

    #[test]
    fn codim_examples() {
        let a1 = build_root_system("A", 1).unwrap();
        assert_eq!(codim(&a1, &a1.identity()), 1);
        assert_eq!(codim(&a1, &a1.simple_reflection(0).unwrap()), 0);
        let a2 = build_root_system("A", 2).unwrap();
        let g = a2.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
        assert_eq!(codim(&a2, g.longest()), 0);
    }

    #[test]
    fn predictions() {
        let a1 = build_root_system("A", 1).unwrap();
        let chi = CharacterParam::from_lambda(&a1, &w(&[-2])).unwrap();
        assert_eq!(chi.base_differential(), &w(&[-1]));
        let p = predict_standard(&a1, &chi, &validate_chain(&a1, &[]).unwrap()).unwrap();
        assert_eq!((p.degree, p.character_differential.clone()), (1, w(&[-1])));
        let p = predict_standard(&a1, &chi, &validate_chain(&a1, &[0]).unwrap()).unwrap();
        assert_eq!((p.degree, p.character_differential.clone()), (0, w(&[-3])));
        assert_eq!(p.chi_w_differential, w(&[-2]));

        let a2 = build_root_system("A", 2).unwrap();
        let chi = CharacterParam::from_lambda(&a2, &w(&[-2, -2])).unwrap();
        let chain = validate_chain(&a2, &[0, 2]).unwrap();
        let p = predict_standard(&a2, &chi, &chain).unwrap();
        assert_eq!(p.degree, 1);
        // (lambda + rho) - (2 a1 + a2) with a1 = (2,-1), a2 = (-1,2)
        assert_eq!(p.character_differential, &w(&[-1, -1]) - &w(&[3, 0]));

        let bad = CharacterParam::from_lambda(&a2, &w(&[0, -1])).unwrap();
        assert!(predict_standard(&a2, &bad, &chain).is_err());
        assert!(CharacterParam::from_lambda(&a2, &w(&[-1])).is_err());
    }

    /// Exhaustive checks over every chain in rank at most 2.
    #[test]
    fn chain_properties_rank_two() {
        for (t, n) in [("A", 1), ("A", 2), ("B", 2), ("G", 2)] {
            let rs = build_root_system(t, n).unwrap();
            let big_n = rs.num_positive();
            let chains = enumerate_chains(&rs, big_n + 2);
            let group = rs.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
            let lam = (-rs.rho()).scale(&crate::rational::q(2));
            let chi = CharacterParam::from_lambda(&rs, &lam).unwrap();

            let mut degree_by_w: HashMap<WeylElement, BTreeSet<usize>> = HashMap::new();
            let mut support: BTreeMap<(usize, Weight), HashSet<WeylElement>> = BTreeMap::new();
            for c in &chains {
                assert_eq!(c.weyl_element().length(), c.len(), "{t}{n} {:?}", c.roots());
                assert!(c.len() <= big_n);
                assert_eq!(validate_chain(&rs, c.roots()).unwrap(), *c);
                let p = predict_standard(&rs, &chi, c).unwrap();
                assert_eq!(p.degree, big_n - c.weyl_element().length());
                degree_by_w.entry(c.weyl_element().clone()).or_default().insert(p.degree);
                support
                    .entry((p.degree, p.character_differential.clone()))
                    .or_default()
                    .insert(c.weyl_element().clone());
                let maximal = enumerate_chains(&rs, c.len() + 1).iter().all(|d| {
                    d.len() <= c.len() || d.roots()[..c.len()] != *c.roots()
                });
                if maximal {
                    assert_eq!(c.len(), big_n);
                    assert_eq!(p.degree, 0);
                }
            }
            assert_eq!(degree_by_w.len(), group.len(), "{t}{n}: chains reach all of W");
            assert!(degree_by_w.values().all(|d| d.len() == 1));
            assert!(support.values().all(|ws| ws.len() == 1), "{t}{n}: distinct w share a prediction");
        }
    }

    #[test]
    fn enumeration_order() {
        let rs = build_root_system("A", 2).unwrap();
        let chains = enumerate_chains(&rs, 3);
        let words: Vec<Vec<usize>> = chains.iter().map(|c| c.roots().to_vec()).collect();
        let mut sorted = words.clone();
        sorted.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        assert_eq!(words, sorted);
        assert_eq!(words[0], Vec::<usize>::new());
        assert_eq!(words.iter().filter(|w| w.len() == 3).count(), 2);
        assert_eq!(enumerate_chains(&rs, 0).len(), 1);
    }
}
