//! Profile CSV serialization and atomic file writes.

use std::fs;
use std::path::Path;

use weingarten_core::{Branch, Phi, Provenance, RadialSolution, WeingartenParams};

use crate::failure::{bad_input, CliFailure};

/// Writes `content` to `path` via a write-then-rename in the same directory.
pub fn write_atomic(path: &Path, content: &str) -> Result<(), CliFailure> {
    let tmp = path.with_extension(format!(
        "tmp.{}",
        std::process::id()
    ));
    fs::write(&tmp, content).map_err(|e| bad_input(format!("cannot write {}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| bad_input(format!("cannot rename to {}: {e}", path.display())))?;
    Ok(())
}

/// Profile CSV: header `r,u,du`, one node per line, shortest round-trip
/// decimal formatting so values survive a write/read cycle bit-exactly.
pub fn profile_to_csv(sol: &RadialSolution) -> String {
    let mut out = String::from("r,u,du\n");
    for i in 0..sol.len() {
        out.push_str(&format!("{},{},{}\n", sol.r[i], sol.u[i], sol.du[i]));
    }
    out
}

pub fn write_profile_csv(path: &Path, sol: &RadialSolution) -> Result<(), CliFailure> {
    write_atomic(path, &profile_to_csv(sol))
}

/// Reads a profile CSV back into a `RadialSolution` under the given
/// parameters.
pub fn read_profile_csv(
    path: &Path,
    params: WeingartenParams,
    phi: Phi,
    branch: Branch,
) -> Result<RadialSolution, CliFailure> {
    let text = fs::read_to_string(path)
        .map_err(|e| bad_input(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines();
    match lines.next() {
        Some("r,u,du") => {}
        other => return Err(bad_input(format!("bad CSV header {other:?} in {}", path.display()))),
    }
    let mut r = Vec::new();
    let mut u = Vec::new();
    let mut du = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let mut next = || -> Result<f64, CliFailure> {
            fields
                .next()
                .ok_or_else(|| bad_input(format!("short row {} in {}", lineno + 2, path.display())))?
                .trim()
                .parse()
                .map_err(|_| bad_input(format!("bad number in row {} of {}", lineno + 2, path.display())))
        };
        r.push(next()?);
        u.push(next()?);
        du.push(next()?);
    }
    if r.len() < 2 {
        return Err(bad_input(format!("profile {} has fewer than 2 nodes", path.display())));
    }
    Ok(RadialSolution {
        r,
        u,
        du,
        ddu: None,
        params,
        phi,
        branch,
        provenance: Provenance::Continued,
    })
}
