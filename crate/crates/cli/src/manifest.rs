use std::collections::HashSet;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

/// One dataset record. Paths are relative to the manifest root.
#[derive(Debug, Clone, Deserialize)]
pub struct ManifestEntry {
    pub shape_id: String,
    pub mesh_path: String,
    #[serde(default)]
    pub sketch_path: Option<String>,
    pub category: String,
}

#[derive(Debug, Deserialize)]
struct ManifestFile {
    schema_version: u32,
    #[serde(default)]
    root: Option<PathBuf>,
    entries: Vec<ManifestEntry>,
}

/// A loaded dataset manifest. `root` defaults to the manifest's directory;
/// an explicit `root` field is resolved against that directory.
#[derive(Debug)]
pub struct DatasetManifest {
    root: PathBuf,
    pub entries: Vec<ManifestEntry>,
}

impl DatasetManifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading manifest {}", path.display()))?;
        let file: ManifestFile = serde_json::from_str(&text)
            .with_context(|| format!("parsing manifest {}", path.display()))?;
        if file.schema_version != 1 {
            bail!(
                "manifest {}: unsupported schema_version {}",
                path.display(),
                file.schema_version
            );
        }
        let mut seen = HashSet::new();
        for entry in &file.entries {
            if entry.shape_id.is_empty()
                || entry.shape_id.contains('/')
                || entry.shape_id.contains('\\')
            {
                bail!(
                    "manifest {}: shape_id `{}` must be non-empty and contain no path separators",
                    path.display(),
                    entry.shape_id
                );
            }
            if !seen.insert(entry.shape_id.as_str()) {
                bail!(
                    "manifest {}: duplicate shape_id `{}`",
                    path.display(),
                    entry.shape_id
                );
            }
        }
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        let root = match file.root {
            Some(r) => base.join(r),
            None => base.to_path_buf(),
        };
        Ok(DatasetManifest {
            root,
            entries: file.entries,
        })
    }

    pub fn resolve(&self, rel: &str) -> PathBuf {
        self.root.join(rel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_manifest(json: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(json.as_bytes()).unwrap();
        f
    }

    #[test]
    fn loads_and_resolves_against_root() {
        let f = write_manifest(
            r#"{"schema_version":1,"root":"data","entries":[
                {"shape_id":"a","mesh_path":"a.obj","sketch_path":"a.svg","category":"chair"},
                {"shape_id":"b","mesh_path":"b.obj","category":"table"}]}"#,
        );
        let m = DatasetManifest::load(f.path()).unwrap();
        assert_eq!(m.entries.len(), 2);
        assert_eq!(m.entries[1].sketch_path, None);
        let resolved = m.resolve(&m.entries[0].mesh_path);
        assert!(resolved.ends_with("data/a.obj"));
        assert!(resolved.starts_with(f.path().parent().unwrap()));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let f = write_manifest(
            r#"{"schema_version":1,"entries":[
                {"shape_id":"a","mesh_path":"a.obj","category":"c"},
                {"shape_id":"a","mesh_path":"b.obj","category":"c"}]}"#,
        );
        assert!(DatasetManifest::load(f.path()).is_err());
    }

    #[test]
    fn bad_schema_version_rejected() {
        let f = write_manifest(r#"{"schema_version":2,"entries":[]}"#);
        assert!(DatasetManifest::load(f.path()).is_err());
    }

    #[test]
    fn path_separator_in_id_rejected() {
        let f = write_manifest(
            r#"{"schema_version":1,"entries":[
                {"shape_id":"../a","mesh_path":"a.obj","category":"c"}]}"#,
        );
        assert!(DatasetManifest::load(f.path()).is_err());
    }
}
