//! On-disk cache of Chevalley structure constants.

use crate::report::ExecError;
use nhlab::chevalley::{build_chevalley, ChevalleyAlgebra, Combination};
use nhlab::rational::{format_rational, parse_rational, q, to_i64};
use nhlab::rootsys::RootSystem;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: String,
    system: String,
    cartan_matrix: Vec<Vec<i64>>,
    /// `brackets[i][j]` lists `(k, c)` with `[x_i, x_j] = sum c x_k`.
    brackets: Vec<Vec<Vec<(usize, String)>>>,
}

fn cache_error(path: &Path, what: impl std::fmt::Display) -> ExecError {
    ExecError {
        module: "cli",
        message: format!("structure-constant cache {}: {what}", path.display()),
        resource: false,
    }
}

pub fn cache_path(dir: &Path, rs: &RootSystem) -> PathBuf {
    let name: String = rs
        .label()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    dir.join(format!("chevalley-{name}.json"))
}

/// Loads the algebra from `dir` if a matching cache file exists, otherwise
/// builds it and writes the cache.
pub fn load_or_build(rs: Arc<RootSystem>, dir: &Path) -> Result<ChevalleyAlgebra, ExecError> {
    let path = cache_path(dir, &rs);
    if path.exists() {
        let text = std::fs::read_to_string(&path).map_err(|e| cache_error(&path, e))?;
        let file: CacheFile = serde_json::from_str(&text).map_err(|e| cache_error(&path, e))?;
        if file.cartan_matrix != rs.cartan_matrix() {
            return Err(cache_error(&path, "Cartan matrix does not match the requested system"));
        }
        let table = file
            .brackets
            .iter()
            .map(|row| {
                row.iter()
                    .map(|comb| {
                        comb.iter()
                            .map(|(k, c)| {
                                let v = parse_rational(c).map_err(|e| cache_error(&path, e))?;
                                let v = to_i64(&v).ok_or_else(|| cache_error(&path, "non-integral coefficient"))?;
                                Ok((*k, v))
                            })
                            .collect::<Result<Combination, ExecError>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        return ChevalleyAlgebra::from_bracket_table(rs, table).map_err(ExecError::from);
    }
    let alg = build_chevalley(rs.clone());
    let file = CacheFile {
        version: crate::report::VERSION.to_string(),
        system: rs.label().to_string(),
        cartan_matrix: rs.cartan_matrix().to_vec(),
        brackets: alg
            .bracket_table()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|comb| comb.iter().map(|&(k, c)| (k, format_rational(&q(c)))).collect())
                    .collect()
            })
            .collect(),
    };
    std::fs::create_dir_all(dir).map_err(|e| cache_error(&path, e))?;
    let text = serde_json::to_string(&file).map_err(|e| cache_error(&path, e))?;
    std::fs::write(&path, text).map_err(|e| cache_error(&path, e))?;
    Ok(alg)
}
