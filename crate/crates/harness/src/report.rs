//! Aggregation of finished campaigns into one combined summary table.

use std::fs;
use std::path::{Path, PathBuf};

use crate::campaign::{summary_row, Manifest, SUMMARY_HEADER};
use crate::stats::summary_stats;
use crate::{io_err, HarnessError, Result};

/// Loads a campaign manifest from its path (or from a campaign directory).
pub fn load_manifest(path: &Path) -> Result<Manifest> {
    let file = if path.is_dir() {
        path.join("manifest.json")
    } else {
        path.to_path_buf()
    };
    let text = fs::read_to_string(&file).map_err(|e| io_err(&file, e))?;
    let manifest: Manifest = serde_json::from_str(&text)
        .map_err(|e| HarnessError::Malformed(format!("{}: {e}", file.display())))?;
    Ok(manifest)
}

/// Builds the combined table. Summary statistics are recomputed from the
/// per-run finals stored in each manifest, so a stale summary block cannot
/// slip through.
pub fn report_csv(manifests: &[Manifest]) -> Result<String> {
    if manifests.is_empty() {
        return Err(HarnessError::Malformed(
            "report needs at least one campaign record".into(),
        ));
    }
    let mut out = format!("{SUMMARY_HEADER}\n");
    for manifest in manifests {
        let finals: Vec<f64> = manifest.runs.iter().map(|r| r.final_best_energy).collect();
        if finals.is_empty() {
            return Err(HarnessError::Malformed(format!(
                "manifest for seed {} holds no runs",
                manifest.config.seed
            )));
        }
        let recomputed = summary_stats(&finals);
        let mut checked = manifest.clone();
        checked.summary = recomputed;
        out.push_str(&summary_row(&checked));
        out.push('\n');
    }
    Ok(out)
}

/// Reads the given manifests (files or campaign directories) and writes the
/// combined table to `out`.
pub fn write_report(paths: &[PathBuf], out: &Path) -> Result<()> {
    let manifests: Vec<Manifest> = paths
        .iter()
        .map(|p| load_manifest(p))
        .collect::<Result<_>>()?;
    let csv = report_csv(&manifests)?;
    if let Some(parent) = out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| io_err(parent, e))?;
        }
    }
    fs::write(out, csv).map_err(|e| io_err(out, e))?;
    Ok(())
}
