use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

/// Provenance of one invocation, written next to each output file as
/// `<output>.manifest.json`.
#[derive(Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub seed: u64,
    pub jobs: Option<usize>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub outcome: String,
    pub wall_time_secs: f64,
}

pub struct Recorder {
    started: Instant,
    command: Vec<String>,
    seed: u64,
    jobs: Option<usize>,
    inputs: Vec<FileDigest>,
    outputs: Vec<PathBuf>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

impl Recorder {
    pub fn new(seed: u64, jobs: Option<usize>) -> Self {
        Recorder {
            started: Instant::now(),
            command: std::env::args().collect(),
            seed,
            jobs,
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    /// Reads an input file and remembers its digest.
    pub fn read_input(&mut self, path: &Path) -> io::Result<String> {
        let text = fs::read_to_string(path)?;
        self.inputs.push(FileDigest {
            path: path.display().to_string(),
            sha256: digest(text.as_bytes()),
        });
        Ok(text)
    }

    /// Writes `body` to `path` behind a comment naming its manifest.
    pub fn write_output(&mut self, path: &Path, body: &str) -> io::Result<()> {
        let manifest = manifest_path(path);
        let name = manifest
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        fs::write(path, format!("# manifest: {name}\n{body}"))?;
        self.outputs.push(path.to_path_buf());
        Ok(())
    }

    /// Writes one manifest per output file produced so far.
    pub fn finish(self, outcome: &str) -> io::Result<()> {
        if self.outputs.is_empty() {
            return Ok(());
        }
        let outputs = self
            .outputs
            .iter()
            .map(|p| {
                Ok(FileDigest {
                    path: p.display().to_string(),
                    sha256: digest(&fs::read(p)?),
                })
            })
            .collect::<io::Result<Vec<_>>>()?;
        let manifest = RunManifest {
            command: self.command,
            seed: self.seed,
            jobs: self.jobs,
            inputs: self.inputs,
            outputs,
            outcome: outcome.to_string(),
            wall_time_secs: self.started.elapsed().as_secs_f64(),
        };
        let json = serde_json::to_string_pretty(&manifest).map_err(io::Error::other)?;
        for p in &self.outputs {
            fs::write(manifest_path(p), format!("{json}\n"))?;
        }
        Ok(())
    }
}
