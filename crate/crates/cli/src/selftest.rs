//! Invariant suite over every root system of rank at most 2.

use crate::report::Status;
use nhlab::chevalley::{build_chevalley, ChevalleyAlgebra};
use nhlab::complexflag::{enumerate_chains, predict_standard, validate_chain, CharacterParam, ChainError};
use nhlab::koszul::{build_cochain_complex, build_complex, check_duality, homology};
use nhlab::kostant::{compare, extreme_weights, predict_parabolic};
use nhlab::rational::q;
use nhlab::repbuilder::build_irrep;
use nhlab::rootsys::{build_root_system, RootSystem, Weight, DEFAULT_WEYL_BOUND};
use serde_json::{json, Value};
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

struct Suite {
    checks: Vec<(String, bool)>,
}

impl Suite {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }
}

fn rootsys_checks(s: &mut Suite, name: &str, rs: &RootSystem) {
    let Ok(group) = rs.weyl_elements(DEFAULT_WEYL_BOUND) else {
        s.check(format!("{name} rootsys: Weyl group enumerates"), false);
        return;
    };
    s.check(
        format!("{name} rootsys: Weyl group order"),
        group.len() as u128 == rs.weyl_order(),
    );
    s.check(
        format!("{name} rootsys: longest element has length N"),
        group.longest().length() == rs.num_positive(),
    );
    let sum = rs
        .positive_roots()
        .iter()
        .fold(Weight::zero(rs.rank()), |acc, r| &acc + &r.fw_coords());
    s.check(format!("{name} rootsys: rho is half the positive sum"), sum == rs.rho().scale(&q(2)));
    let involutive = rs.roots().iter().all(|a| {
        let w = rs.reflection(a).expect("root");
        (0..rs.roots().len()).all(|k| rs.apply_to_root(&w, rs.apply_to_root(&w, k)) == k)
    });
    s.check(format!("{name} rootsys: reflections are involutions"), involutive);
    let lam = rs.rho().scale(&q(-2));
    for i in 0..rs.rank() {
        let p = rs.parabolic(&[i]).expect("index");
        let reps = rs.coset_reps(&p, &lam, &group).expect("coset reps");
        s.check(
            format!("{name} rootsys: |W^S| |W_S| = |W| for S = {{{}}}", i + 1),
            reps.len() * 2 == group.len(),
        );
    }
}

fn chevalley_checks(s: &mut Suite, name: &str, alg: &ChevalleyAlgebra) {
    s.check(format!("{name} chevalley: Jacobi identity"), alg.jacobi_violations() == 0);
    let reloaded = ChevalleyAlgebra::from_bracket_table(alg.root_system_arc().clone(), alg.bracket_table().to_vec());
    s.check(format!("{name} chevalley: bracket table round trip"), reloaded.as_ref() == Ok(alg));
}

fn module_checks(s: &mut Suite, name: &str, rs: &RootSystem, alg: &Arc<ChevalleyAlgebra>, lam: &Weight) {
    let tag = format!("{name} lambda={lam}");
    let m = match build_irrep(alg, lam) {
        Ok(m) => m,
        Err(_) => {
            s.check(format!("{tag} repbuilder: module builds"), false);
            return;
        }
    };
    s.check(format!("{tag} repbuilder: relations, Weyl dimension, Weyl invariance"), m.invariant_violations().is_empty());
    let group = rs.weyl_elements(DEFAULT_WEYL_BOUND).expect("group");
    let extremes = extreme_weights(rs, lam, &group).expect("extremes");
    let mut levis = vec![vec![]];
    levis.extend((0..rs.rank()).map(|i| vec![i]));
    for levi in levis {
        let p = rs.parabolic(&levi).expect("index");
        let tag = format!("{tag} S={:?}", levi.iter().map(|i| i + 1).collect::<Vec<_>>());
        let chains = build_complex(&m, &p).expect("same algebra");
        let cochains = build_cochain_complex(&m, &p).expect("same algebra");
        s.check(format!("{tag} koszul: boundary squares to zero"), chains.square_violations().is_empty());
        s.check(format!("{tag} koszul: coboundary squares to zero"), cochains.square_violations().is_empty());
        let (lhs, rhs) = chains.chain_euler_characteristic();
        s.check(format!("{tag} koszul: chain Euler characteristic"), lhs == rhs);
        let h = homology(&chains);
        let c = homology(&cochains);
        if p.dim() > 0 {
            s.check(format!("{tag} koszul: homology Euler characteristic"), h.euler_characteristic() == 0);
        }
        s.check(
            format!("{tag} koszul: duality"),
            check_duality(&h, &c, &p).map(|v| v.is_empty()).unwrap_or(false),
        );
        let pred = predict_parabolic(rs, lam, &levi).expect("prediction");
        s.check(
            format!("{tag} kostant: prediction matches homology"),
            compare(&pred, &h).map(|r| r.is_empty()).unwrap_or(false),
        );
        if levi.is_empty() {
            s.check(
                format!("{tag} koszul: weights lie in the shifted Weyl orbit"),
                h.entries.keys().all(|(_, w)| extremes.contains(w)),
            );
            let mut bumped = h.clone();
            if let Some(v) = bumped.entries.values_mut().next() {
                *v += 1;
            }
            s.check(
                format!("{tag} kostant: a perturbed table gives one discrepancy"),
                compare(&pred, &bumped).map(|r| r.len() == 1).unwrap_or(false),
            );
            let reversed = m.with_basis_permutation(&(0..m.dimension()).rev().collect::<Vec<_>>());
            s.check(
                format!("{tag} koszul: independent of basis order"),
                build_complex(&reversed, &p).map(|c| homology(&c) == h).unwrap_or(false),
            );
        }
    }
}

fn chain_checks(s: &mut Suite, name: &str, rs: &RootSystem) {
    let n = rs.num_positive();
    let lam = rs.rho().scale(&q(-2));
    let chi = CharacterParam::from_lambda(rs, &lam).expect("rank");
    let chains = enumerate_chains(rs, n);
    let mut degree_by_w: HashMap<Vec<Vec<i64>>, BTreeSet<usize>> = HashMap::new();
    let mut lengths_ok = true;
    let mut support: HashMap<(usize, Weight), BTreeSet<Vec<Vec<i64>>>> = HashMap::new();
    for c in &chains {
        lengths_ok &= c.weyl_element().length() == c.len();
        let p = predict_standard(rs, &chi, c).expect("valid chain");
        lengths_ok &= p.degree == n - c.len();
        degree_by_w.entry(c.weyl_element().matrix().to_vec()).or_default().insert(p.degree);
        support
            .entry((p.degree, p.character_differential))
            .or_default()
            .insert(c.weyl_element().matrix().to_vec());
    }
    s.check(format!("{name} complexflag: chain length equals l(w) and degree is N - l(w)"), lengths_ok);
    s.check(
        format!("{name} complexflag: degree depends only on w"),
        degree_by_w.values().all(|d| d.len() == 1),
    );
    s.check(
        format!("{name} complexflag: chains reach every Weyl element"),
        degree_by_w.len() as u128 == rs.weyl_order(),
    );
    s.check(
        format!("{name} complexflag: distinct w give distinct predictions"),
        support.values().all(|ws| ws.len() == 1),
    );
    let empty = predict_standard(rs, &chi, &chains[0]).expect("empty chain");
    s.check(
        format!("{name} complexflag: empty chain gives degree N at lambda + rho"),
        empty.degree == n && empty.character_differential == &lam + rs.rho(),
    );
}

pub fn run() -> (Value, Status) {
    let mut s = Suite { checks: Vec::new() };
    for (t, n) in [("A", 1), ("A", 2), ("B", 2), ("G", 2)] {
        let name = format!("{t}{n}");
        let rs = Arc::new(build_root_system(t, n).expect("valid system"));
        rootsys_checks(&mut s, &name, &rs);
        let alg = Arc::new(build_chevalley(rs.clone()));
        chevalley_checks(&mut s, &name, &alg);
        for k in [1, 2] {
            module_checks(&mut s, &name, &rs, &alg, &rs.rho().scale(&q(-k)));
        }
        chain_checks(&mut s, &name, &rs);
    }
    let a2 = build_root_system("A", 2).expect("A2");
    s.check(
        "A2 complexflag: chain (a1, a2) is rejected with a witness",
        matches!(
            validate_chain(&a2, &[0, 1]),
            Err(nhlab::Error::Chain(ChainError::Decomposable { position: 2, .. }))
        ),
    );
    let failed = s.checks.iter().filter(|(_, ok)| !ok).count();
    let status = if failed == 0 { Status::Ok } else { Status::Mismatch };
    (
        json!({
            "checks": s.checks.iter().map(|(name, ok)| json!({"name": name, "passed": ok})).collect::<Vec<_>>(),
            "passed": s.checks.len() - failed,
            "failed": failed,
        }),
        status,
    )
}
