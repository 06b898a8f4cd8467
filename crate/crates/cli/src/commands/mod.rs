pub mod labels;
pub mod masks;
pub mod recon;
pub mod regloss;
pub mod report;
pub mod stylize;
pub mod views;

use anyhow::{bail, Result};

/// Per-entry failures are reported as they occur; turn any into a nonzero
/// exit once every entry has been attempted.
pub(crate) fn fail_if_any(command: &str, failed: usize, total: usize) -> Result<()> {
    if failed > 0 {
        bail!("{command}: {failed} of {total} entries failed");
    }
    Ok(())
}

/// File stem used to name per-input outputs.
pub(crate) fn stem(path: &std::path::Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "output".to_string())
}

/// Pretty JSON with a trailing newline, ready for `fs::write`.
pub(crate) fn to_json_bytes<T: serde::Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text.into_bytes())
}
