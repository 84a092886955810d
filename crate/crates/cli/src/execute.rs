//! Dispatch of a validated request onto the library.

use crate::args::{CommandKind, Request};
use crate::cache;
use crate::report::{table_json, weight_json, ErrorInfo, ExecError, Report, RequestEcho, Status, VERSION};
use nhlab::chevalley::{build_chevalley, ChevalleyAlgebra};
use nhlab::complexflag::{enumerate_chains, predict_standard, validate_chain, CharacterParam, StandardModulePrediction};
use nhlab::koszul::{build_cochain_complex, build_complex, check_duality, homology};
use nhlab::kostant::{compare, predict_parabolic_with, KostantPrediction};
use nhlab::rational::format_rational;
use nhlab::repbuilder::{build_irrep_with, weyl_dimension, BuildOptions, GModule};
use nhlab::rootsys::{build_root_system, RootSystem, Weight, WeylGroup, DEFAULT_WEYL_BOUND};
use serde_json::{json, Value};
use std::sync::Arc;

type Outcome = Result<(Value, Status), ExecError>;

fn root_system(req: &Request) -> Result<Arc<RootSystem>, ExecError> {
    let sys = req.system.expect("validated request names a system");
    Ok(Arc::new(build_root_system(&sys.cartan.to_string(), sys.rank)?))
}

fn lambda(req: &Request) -> &Weight {
    req.lambda.as_ref().expect("validated request has lambda")
}

fn options(req: &Request) -> BuildOptions {
    BuildOptions {
        max_dim: req.max_dim.unwrap_or(nhlab::repbuilder::DEFAULT_MAX_DIM),
    }
}

fn algebra(req: &Request, rs: Arc<RootSystem>) -> Result<Arc<ChevalleyAlgebra>, ExecError> {
    Ok(Arc::new(match &req.cache_dir {
        Some(dir) => cache::load_or_build(rs, dir)?,
        None => build_chevalley(rs),
    }))
}

fn module(req: &Request, rs: &Arc<RootSystem>) -> Result<GModule, ExecError> {
    let alg = algebra(req, rs.clone())?;
    Ok(build_irrep_with(&alg, lambda(req), options(req))?)
}

fn word_json(word: &[usize]) -> Vec<usize> {
    word.iter().map(|i| i + 1).collect()
}

fn mults_json(m: &GModule) -> Value {
    Value::Array(
        m.weight_multiplicities()
            .iter()
            .map(|(w, k)| json!({"weight": weight_json(w), "mult": k}))
            .collect(),
    )
}

fn roots(req: &Request) -> Outcome {
    let rs = root_system(req)?;
    let np = rs.num_positive();
    let positive: Vec<Value> = rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "index": i + 1,
                "simple_coords": r.simple_coords(),
                "weight": weight_json(&r.fw_coords()),
                "height": r.height(),
            })
        })
        .collect();
    Ok((
        json!({
            "cartan_matrix": rs.cartan_matrix(),
            "simple_sq_lengths": rs.simple_sq_lengths().iter().map(format_rational).collect::<Vec<_>>(),
            "num_positive": np,
            "positive_roots": positive,
            "rho": weight_json(rs.rho()),
            "weyl_order": rs.weyl_order(),
        }),
        Status::Ok,
    ))
}

fn irrep(req: &Request) -> Outcome {
    let rs = root_system(req)?;
    let m = module(req, &rs)?;
    let violations = m.invariant_violations();
    let status = if violations.is_empty() { Status::Ok } else { Status::Mismatch };
    Ok((
        json!({
            "dimension": m.dimension(),
            "weyl_dimension": weyl_dimension(&rs, lambda(req))?,
            "lowest_weight": weight_json(m.lowest_weight()),
            "multiplicities": mults_json(&m),
            "violations": violations,
        }),
        status,
    ))
}

fn group(rs: &RootSystem) -> Result<WeylGroup, ExecError> {
    Ok(rs.weyl_elements(DEFAULT_WEYL_BOUND)?)
}

fn prediction_json(pred: &KostantPrediction) -> Value {
    Value::Array(
        pred.entries
            .iter()
            .map(|e| {
                json!({
                    "degree": e.degree,
                    "weight": weight_json(&e.weight),
                    "word": word_json(e.element.word()),
                    "mult": e.multiplicity,
                })
            })
            .collect(),
    )
}

fn homology_like(req: &Request) -> Outcome {
    let rs = root_system(req)?;
    let lam = lambda(req);
    let levi = req.parabolic.clone().unwrap_or_default();
    let m = module(req, &rs)?;
    let p = rs.parabolic(&levi)?;
    let mut results = serde_json::Map::new();
    results.insert("nilradical_dim".into(), json!(p.dim()));
    let mut status = Status::Ok;

    let chains = build_complex(&m, &p)?;
    let square_ok = chains.square_violations().is_empty();
    let h = homology(&chains);
    drop(chains);
    if req.command != CommandKind::Cohomology {
        results.insert("homology".into(), table_json(&h));
        results.insert("homology_total_dims".into(), json!(h.total_dims));
        results.insert("boundary_squares_to_zero".into(), json!(square_ok));
        if !square_ok {
            status = Status::Mismatch;
        }
    }

    if req.command == CommandKind::Homology {
        let g = group(&rs)?;
        let pred = predict_parabolic_with(&rs, lam, &levi, &g, options(req))?;
        let report = compare(&pred, &h)?;
        results.insert("prediction".into(), prediction_json(&pred));
        results.insert(
            "discrepancies".into(),
            Value::Array(
                report
                    .iter()
                    .map(|d| {
                        json!({
                            "degree": d.degree,
                            "weight": weight_json(&d.weight),
                            "predicted": d.predicted,
                            "computed": d.computed,
                        })
                    })
                    .collect(),
            ),
        );
        if !report.is_empty() {
            status = Status::Mismatch;
        }
    }

    if matches!(req.command, CommandKind::Cohomology | CommandKind::Duality) {
        let cochains = build_cochain_complex(&m, &p)?;
        let co_ok = cochains.square_violations().is_empty();
        let c = homology(&cochains);
        results.insert("cohomology".into(), table_json(&c));
        results.insert("cohomology_total_dims".into(), json!(c.total_dims));
        results.insert("coboundary_squares_to_zero".into(), json!(co_ok));
        if !co_ok {
            status = Status::Mismatch;
        }
        if req.command == CommandKind::Duality {
            let violations = check_duality(&h, &c, &p)?;
            results.insert("sigma".into(), json!(weight_json(p.sigma())));
            results.insert(
                "violations".into(),
                Value::Array(
                    violations
                        .iter()
                        .map(|v| {
                            json!({
                                "degree": v.degree,
                                "weight": weight_json(&v.weight),
                                "homology_mult": v.homology_mult,
                                "cohomology_mult": v.cohomology_mult,
                            })
                        })
                        .collect(),
                ),
            );
            if !violations.is_empty() {
                status = Status::Mismatch;
            }
        }
    }
    Ok((Value::Object(results), status))
}

fn kostant(req: &Request) -> Outcome {
    let rs = root_system(req)?;
    let levi = req.parabolic.clone().unwrap_or_default();
    let g = group(&rs)?;
    let pred = predict_parabolic_with(&rs, lambda(req), &levi, &g, options(req))?;
    Ok((
        json!({
            "nilradical_dim": pred.parabolic.dim(),
            "prediction": prediction_json(&pred),
            "expanded": table_json(&pred.expanded),
            "expanded_total_dims": pred.expanded.total_dims,
        }),
        Status::Ok,
    ))
}

fn standard_json(rs: &RootSystem, p: &StandardModulePrediction) -> Value {
    json!({
        "chain": p.chain.roots().iter().map(|i| i + 1).collect::<Vec<_>>(),
        "roots": p.chain.roots().iter().map(|&i| rs.root(i).simple_coords().to_vec()).collect::<Vec<_>>(),
        "weyl_word": word_json(p.chain.weyl_element().word()),
        "length": p.chain.weyl_element().length(),
        "degree": p.degree,
        "chi_w": weight_json(&p.chi_w_differential),
        "character_differential": weight_json(&p.character_differential),
    })
}

fn complexgroup(req: &Request) -> Outcome {
    let rs = root_system(req)?;
    let chi = CharacterParam::from_lambda(&rs, lambda(req))?;
    let chains = match &req.chain {
        Some(c) => vec![validate_chain(&rs, c)?],
        None => enumerate_chains(&rs, rs.num_positive()),
    };
    let predictions: Vec<Value> = chains
        .iter()
        .map(|c| Ok(standard_json(&rs, &predict_standard(&rs, &chi, c)?)))
        .collect::<Result<_, ExecError>>()?;
    Ok((
        json!({
            "num_positive": rs.num_positive(),
            "predictions": predictions,
        }),
        Status::Ok,
    ))
}

fn dispatch(req: &Request) -> Outcome {
    match req.command {
        CommandKind::Roots => roots(req),
        CommandKind::Irrep => irrep(req),
        CommandKind::Homology | CommandKind::Cohomology | CommandKind::Duality => homology_like(req),
        CommandKind::Kostant => kostant(req),
        CommandKind::Complexgroup => complexgroup(req),
        CommandKind::Selftest => Ok(crate::selftest::run()),
    }
}

/// Runs the request on the calling thread's pool.
pub fn execute(req: &Request) -> Report {
    let mu = req.system.zip(req.lambda.as_ref()).and_then(|(sys, l)| {
        build_root_system(&sys.cartan.to_string(), sys.rank)
            .ok()
            .map(|rs| l + rs.rho())
    });
    let echo = RequestEcho::new(req, mu.as_ref());
    match dispatch(req) {
        Ok((results, status)) => Report {
            version: VERSION,
            request: echo,
            status,
            error: None,
            results,
        },
        Err(e) => Report {
            version: VERSION,
            request: echo,
            status: Status::Error,
            error: Some(ErrorInfo {
                module: e.module.to_string(),
                message: e.message,
            }),
            results: json!({}),
        },
    }
}

/// Runs the request inside a pool of `req.threads` workers.
pub fn execute_with_threads(req: &Request) -> Report {
    #[cfg(feature = "parallel")]
    {
        match rayon::ThreadPoolBuilder::new().num_threads(req.threads.get()).build() {
            Ok(pool) => pool.install(|| execute(req)),
            Err(_) => execute(req),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        execute(req)
    }
}
