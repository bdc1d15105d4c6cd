//! Run manifests: the full argument vector plus what the run touched.
//!
//! ```text
//! subcommand gen
//! arg gen
//! arg cycle
//! ...
//! output c5.gr
//! status 0
//! wall_ms 3
//! summary n 5 m 5
//! ```
//!
//! Replaying uses only the `arg` lines, so the wall time does not affect
//! reproducibility.

use std::path::Path;
use std::time::Duration;

use crate::{Failure, Run};

pub struct Manifest {
    lines: Vec<(String, String)>,
}

impl Manifest {
    pub fn new(argv: &[String], run: &Run, status: u8, wall: Duration) -> Self {
        let mut lines = Vec::new();
        // drop the program name and the manifest flag itself
        let mut args = Vec::new();
        let mut skip = false;
        for a in argv.iter().skip(1) {
            if skip {
                skip = false;
            } else if a == "--manifest" {
                skip = true;
            } else if !a.starts_with("--manifest=") {
                args.push(a.clone());
            }
        }
        if let Some(sub) = args.iter().find(|a| !a.starts_with('-')) {
            lines.push(("subcommand".into(), sub.clone()));
        }
        lines.extend(args.into_iter().map(|a| ("arg".into(), a)));
        lines.extend(run.inputs.iter().map(|p| ("input".into(), p.display().to_string())));
        lines.extend(run.outputs.iter().map(|p| ("output".into(), p.display().to_string())));
        lines.push(("status".into(), status.to_string()));
        lines.push(("wall_ms".into(), wall.as_millis().to_string()));
        if let Some(first) = run.stdout.lines().next() {
            lines.push(("summary".into(), first.to_string()));
        }
        Manifest { lines }
    }

    pub fn write(&self, path: &Path) -> Result<(), Failure> {
        let text: String = self.lines.iter().map(|(k, v)| format!("{k} {v}\n")).collect();
        std::fs::write(path, text).map_err(|e| Failure { code: 3, message: format!("{}: {e}", path.display()) })
    }

    pub fn read(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        let lines = text
            .lines()
            .filter(|l| !l.is_empty())
            .map(|l| {
                let (k, v) = l.split_once(' ').unwrap_or((l, ""));
                (k.to_string(), v.to_string())
            })
            .collect::<Vec<_>>();
        if !lines.iter().any(|(k, _)| k == "arg") {
            return Err(Failure::usage(format!("{}: manifest has no `arg` lines", path.display())));
        }
        Ok(Manifest { lines })
    }

    /// Argument vector for re-execution, program name first.
    pub fn argv(&self) -> Vec<String> {
        std::iter::once("wguide".to_string())
            .chain(self.lines.iter().filter(|(k, _)| k == "arg").map(|(_, v)| v.clone()))
            .collect()
    }
}
