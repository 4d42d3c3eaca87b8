//! Output directories and the `manifest.txt` that describes each one.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use crate::CliError;

pub const MANIFEST_FILE: &str = "manifest.txt";

/// Everything needed to reproduce one run, written as `key=value` lines.
#[derive(Debug, Clone)]
pub struct RunManifest {
    command: String,
    params: Vec<(String, String)>,
    inputs: Vec<PathBuf>,
    outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: Vec::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn input(&mut self, path: &Path) -> &mut Self {
        self.inputs.push(path.to_path_buf());
        self
    }

    fn render(&self, out_dir: &Path) -> String {
        let mut lines = vec![
            format!("command={}", self.command),
            format!("tool_version={}", env!("CARGO_PKG_VERSION")),
        ];
        lines.extend(self.params.iter().map(|(k, v)| format!("{k}={v}")));
        lines.extend(self.inputs.iter().map(|p| format!("input={}", p.display())));
        lines.push(format!("out_dir={}", out_dir.display()));
        lines.extend(self.outputs.iter().map(|f| format!("output={f}")));
        lines.join("\n") + "\n"
    }
}

/// An output directory being filled by one command.
pub struct OutDir {
    dir: PathBuf,
    manifest: RunManifest,
}

impl OutDir {
    pub fn create(dir: &Path, manifest: RunManifest) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        Ok(Self {
            dir: dir.to_path_buf(),
            manifest,
        })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|source| CliError::Io { path, source })?;
        self.manifest.outputs.push(name.to_string());
        Ok(())
    }

    /// Writes the manifest last, so it lists every file produced.
    pub fn finish(self) -> Result<(), CliError> {
        let path = self.dir.join(MANIFEST_FILE);
        fs::write(&path, self.manifest.render(&self.dir))
            .map_err(|source| CliError::Io { path, source })
    }
}
