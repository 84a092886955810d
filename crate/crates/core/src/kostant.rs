//! Predicted `n`-homology from Kostant's theorem, and comparison with a
//! computed table.

use crate::chevalley::build_chevalley;
use crate::error::{Error, Result};
use crate::koszul::{HomologyTable, Variant};
use crate::repbuilder::{build_irrep_with, BuildOptions};
use crate::rootsys::{ParabolicSubset, RootSystem, Weight, WeylElement, WeylGroup, DEFAULT_WEYL_BOUND};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

const MODULE: &str = "kostant";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictionEntry {
    pub degree: usize,
    /// `w lambda + rho`: the lowest weight of the Levi constituent.
    pub weight: Weight,
    pub element: WeylElement,
    pub multiplicity: usize,
}

#[derive(Debug, Clone)]
pub struct KostantPrediction {
    pub lambda: Weight,
    pub parabolic: ParabolicSubset,
    /// Sorted by (degree, weight).
    pub entries: Vec<PredictionEntry>,
    pub expanded: HomologyTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub degree: usize,
    pub weight: Weight,
    pub predicted: usize,
    pub computed: usize,
}

pub fn predict_borel(rs: &RootSystem, lambda: &Weight) -> Result<KostantPrediction> {
    predict_parabolic(rs, lambda, &[])
}

pub fn predict_parabolic(rs: &RootSystem, lambda: &Weight, levi: &[usize]) -> Result<KostantPrediction> {
    let group = rs.weyl_elements(DEFAULT_WEYL_BOUND)?;
    predict_parabolic_with(rs, lambda, levi, &group, BuildOptions::default())
}

/// Prediction over the coset representatives of `W_S \ W`, with each Levi
/// constituent expanded into its weights.
pub fn predict_parabolic_with(
    rs: &RootSystem,
    lambda: &Weight,
    levi: &[usize],
    group: &WeylGroup,
    options: BuildOptions,
) -> Result<KostantPrediction> {
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
    let parabolic = rs.parabolic(levi)?;
    let levi = parabolic.levi_simple_indices().to_vec();
    let reps = rs.coset_reps(&parabolic, lambda, group)?;

    let mut entries: Vec<PredictionEntry> = reps
        .into_iter()
        .map(|w| -> Result<PredictionEntry> {
            Ok(PredictionEntry {
                degree: w.length(),
                weight: &w.act(lambda)? + rs.rho(),
                element: w,
                multiplicity: 1,
            })
        })
        .collect::<Result<_>>()?;
    entries.sort_by(|a, b| (a.degree, &a.weight).cmp(&(b.degree, &b.weight)));

    let d = parabolic.dim();
    let mut expanded = BTreeMap::new();
    if levi.is_empty() {
        for e in &entries {
            expanded.insert((e.degree, e.weight.clone()), e.multiplicity);
        }
    } else {
        let levi_alg = Arc::new(build_chevalley(Arc::new(rs.subsystem(&levi)?)));
        let simple: Vec<Weight> = levi.iter().map(|&i| rs.simple_roots()[i].fw_coords()).collect();
        for e in &entries {
            // Levi lowest weight is the restriction of w lambda + rho; its
            // shifted parameter subtracts the Levi rho (all ones).
            let lambda_s = Weight::new(
                levi.iter()
                    .map(|&i| &e.weight.coords()[i] - crate::rational::one())
                    .collect(),
            );
            let constituent = build_irrep_with(&levi_alg, &lambda_s, options)?;
            for off in constituent.basis_offsets() {
                let w = off
                    .iter()
                    .zip(&simple)
                    .fold(e.weight.clone(), |acc, (&k, a)| &acc + &a.scale(&crate::rational::q(k)));
                *expanded.entry((e.degree, w)).or_insert(0) += e.multiplicity;
            }
        }
    }
    let mut total_dims = vec![0; d + 1];
    for ((p, _), m) in &expanded {
        total_dims[*p] += m;
    }
    Ok(KostantPrediction {
        lambda: lambda.clone(),
        parabolic,
        entries,
        expanded: HomologyTable {
            variant: Variant::Homology,
            entries: expanded,
            total_dims,
        },
    })
}

/// Every entry where the expanded prediction and the computed homology
/// differ; empty on an exact match.
pub fn compare(prediction: &KostantPrediction, computed: &HomologyTable) -> Result<Vec<Discrepancy>> {
    let rank = prediction.lambda.rank();
    if computed.variant != Variant::Homology
        || computed.nilradical_dim() != prediction.parabolic.dim()
        || computed.entries.keys().any(|(_, w)| w.rank() != rank)
    {
        return Err(Error::Mismatch { module: MODULE });
    }
    let keys: BTreeSet<&(usize, Weight)> = prediction
        .expanded
        .entries
        .keys()
        .chain(computed.entries.keys())
        .collect();
    Ok(keys
        .into_iter()
        .filter_map(|(p, w)| {
            let predicted = prediction.expanded.mult(*p, w);
            let computed = computed.mult(*p, w);
            (predicted != computed).then(|| Discrepancy {
                degree: *p,
                weight: w.clone(),
                predicted,
                computed,
            })
        })
        .collect())
}

/// `{w lambda + rho : w in W}`.
pub fn extreme_weights(rs: &RootSystem, lambda: &Weight, group: &WeylGroup) -> Result<BTreeSet<Weight>> {
    group
        .elements()
        .iter()
        .map(|w| Ok(&w.act(lambda)? + rs.rho()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    #[test]
    fn a1_borel() {
        let rs = build_root_system("A", 1).unwrap();
        let p = predict_borel(&rs, &w(&[-2])).unwrap();
        let got: Vec<(usize, Weight)> = p.entries.iter().map(|e| (e.degree, e.weight.clone())).collect();
        assert_eq!(got, vec![(0, w(&[-1])), (1, w(&[3]))]);
        assert_eq!(p.expanded.total_dims, vec![1, 1]);
    }

    #[test]
    fn a2_borel() {
        let rs = build_root_system("A", 2).unwrap();
        let lam = w(&[-2, -2]);
        let p = predict_borel(&rs, &lam).unwrap();
        let degrees: Vec<usize> = p.entries.iter().map(|e| e.degree).collect();
        assert_eq!(degrees, vec![0, 1, 1, 2, 2, 3]);
        assert_eq!(p.entries[0].weight, w(&[-1, -1]));
        assert_eq!(p.entries[0].weight, &lam + rs.rho());
        assert!(p.entries.iter().all(|e| e.multiplicity == 1));
    }

    #[test]
    fn parabolic_cases() {
        let rs = build_root_system("A", 2).unwrap();
        let lam = w(&[-2, -2]);
        let p = predict_parabolic(&rs, &lam, &[0]).unwrap();
        let degrees: Vec<usize> = p.entries.iter().map(|e| e.degree).collect();
        assert_eq!(degrees, vec![0, 1, 2]);
        // Levi constituents have lowest weights -1, -3, -1 on alpha1
        assert_eq!(p.expanded.total_dims, vec![2, 4, 2]);
        assert_eq!(p.expanded.euler_characteristic(), 0);

        let full = predict_parabolic(&rs, &lam, &[0, 1]).unwrap();
        assert_eq!(full.entries.len(), 1);
        assert_eq!(full.entries[0].degree, 0);
        assert_eq!(full.entries[0].weight, w(&[-1, -1]));
        assert_eq!(full.expanded.total_dims, vec![8]);

        let borel = predict_parabolic(&rs, &lam, &[]).unwrap();
        assert_eq!(borel.expanded, predict_borel(&rs, &lam).unwrap().expanded);
    }

    fn poincare(lengths: impl Iterator<Item = usize>) -> Vec<i64> {
        let mut out = Vec::new();
        for l in lengths {
            if out.len() <= l {
                out.resize(l + 1, 0);
            }
            out[l] += 1;
        }
        out
    }

    fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn borel_degree_counts_alternate_to_zero() {
        for (t, n) in [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3)] {
            let rs = build_root_system(t, n).unwrap();
            let lam = (-rs.rho()).scale(&crate::rational::q(2));
            let p = predict_borel(&rs, &lam).unwrap();
            let s: i64 = p.entries.iter().map(|e| if e.degree % 2 == 0 { 1 } else { -1 }).sum();
            assert_eq!(s, 0, "{t}{n}");
            assert_eq!(p.entries.len() as u128, rs.weyl_order());
        }
    }

    /// Coset lengths satisfy W(t) = W^S(t) W_S(t), and the expanded table
    /// has vanishing Euler characteristic whenever the nilradical is nonzero.
    #[test]
    fn parabolic_lengths_factor_the_poincare_polynomial() {
        for (t, n) in [("A", 2), ("B", 2), ("G", 2), ("A", 3)] {
            let rs = build_root_system(t, n).unwrap();
            let group = rs.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
            let full = poincare(group.elements().iter().map(WeylElement::length));
            let lam = (-rs.rho()).scale(&crate::rational::q(2));
            for levi in [vec![0], vec![1], vec![0, 1]] {
                let p = predict_parabolic(&rs, &lam, &levi).unwrap();
                let sub = rs.subsystem(&levi).unwrap();
                let sub_group = sub.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
                let levi_poly = poincare(sub_group.elements().iter().map(WeylElement::length));
                let reps = poincare(p.entries.iter().map(|e| e.degree));
                assert_eq!(poly_mul(&reps, &levi_poly), full, "{t}{n} {levi:?}");
                if p.parabolic.dim() > 0 {
                    assert_eq!(p.expanded.euler_characteristic(), 0, "{t}{n} {levi:?}");
                }
            }
        }
    }

    #[test]
    fn compare_reports_each_discrepancy() {
        let rs = build_root_system("A", 1).unwrap();
        let p = predict_borel(&rs, &w(&[-2])).unwrap();
        assert!(compare(&p, &p.expanded).unwrap().is_empty());
        let mut bumped = p.expanded.clone();
        *bumped.entries.get_mut(&(1, w(&[3]))).unwrap() = 2;
        let report = compare(&p, &bumped).unwrap();
        assert_eq!(
            report,
            vec![Discrepancy {
                degree: 1,
                weight: w(&[3]),
                predicted: 1,
                computed: 2
            }]
        );
        let mut wrong = p.expanded.clone();
        wrong.variant = Variant::Cohomology;
        assert!(compare(&p, &wrong).is_err());
    }

    #[test]
    fn preconditions() {
        let rs = build_root_system("A", 2).unwrap();
        assert!(predict_borel(&rs, &w(&[0, -1])).is_err());
        assert!(predict_borel(&rs, &w(&[-1])).is_err());
        assert!(predict_parabolic(&rs, &w(&[-1, -1]), &[2]).is_err());
    }
}
