//! Output destinations. Files are written to a temporary sibling and renamed
//! into place, and each gets a `.meta.json` sidecar.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use crate::commands::CliError;

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// `path` with its extension replaced.
pub fn sibling(path: &Path, extension: &str) -> PathBuf {
    path.with_extension(extension)
}

pub fn meta_path(path: &Path) -> PathBuf {
    with_suffix(path, ".meta.json")
}

/// Writes `body` atomically to `path`.
pub fn write_file<F>(path: &Path, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> dtqw_core::Result<()>,
{
    let tmp = with_suffix(path, ".tmp");
    let result = (|| {
        let mut f = io::BufWriter::new(fs::File::create(&tmp)?);
        body(&mut f)?;
        f.flush()?;
        drop(f);
        fs::rename(&tmp, path)?;
        Ok(())
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// Metadata sidecar: tool version and the full configuration.
pub fn write_meta<C: Serialize>(path: &Path, config: &C) -> Result<(), CliError> {
    let meta = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "output": path.file_name().map(|n| n.to_string_lossy().into_owned()),
        "config": config,
    });
    write_file(&meta_path(path), |w| dtqw_core::output::write_json(&meta, w))
}

/// Sends `body` to `path` (plus sidecar) or to stdout.
pub fn emit<C, F>(out: Option<&Path>, config: &C, body: F) -> Result<(), CliError>
where
    C: Serialize,
    F: FnOnce(&mut dyn Write) -> dtqw_core::Result<()>,
{
    match out {
        Some(path) => {
            write_file(path, body)?;
            write_meta(path, config)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock)?;
            Ok(())
        }
    }
}
