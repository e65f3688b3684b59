//! All-or-nothing output: files are written to a hidden sibling directory and
//! moved into the output directory only when the whole command succeeded.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, Result};

pub struct Staging {
    dir: PathBuf,
    out: PathBuf,
    files: Vec<String>,
    committed: bool,
}

impl Staging {
    pub fn new(out: &Path) -> Result<Self> {
        let name = out
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| "out".into());
        let parent = match out.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        };
        fs::create_dir_all(&parent).map_err(CliError::io(&parent))?;
        let dir = parent.join(format!(".{name}.staging-{}", std::process::id()));
        if dir.exists() {
            fs::remove_dir_all(&dir).map_err(CliError::io(&dir))?;
        }
        fs::create_dir(&dir).map_err(CliError::io(&dir))?;
        Ok(Staging {
            dir,
            out: out.to_path_buf(),
            files: Vec::new(),
            committed: false,
        })
    }

    /// Names of the files written so far, in order.
    pub fn files(&self) -> &[String] {
        &self.files
    }

    /// Creates `name` in the staging area and hands a buffered writer to `f`.
    pub fn write<F>(&mut self, name: &str, f: F) -> Result<()>
    where
        F: FnOnce(&mut BufWriter<File>) -> Result<()>,
    {
        let path = self.dir.join(name);
        let file = File::create(&path).map_err(CliError::io(&path))?;
        let mut w = BufWriter::new(file);
        f(&mut w)?;
        w.flush().map_err(CliError::io(&path))?;
        self.files.push(name.to_string());
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        self.write(name, |w| {
            serde_json::to_writer_pretty(&mut *w, value)?;
            w.write_all(b"\n")?;
            Ok(())
        })
    }

    /// Moves every staged file into the output directory.
    pub fn commit(mut self) -> Result<()> {
        fs::create_dir_all(&self.out).map_err(CliError::io(&self.out))?;
        for name in &self.files {
            let target = self.out.join(name);
            fs::rename(self.dir.join(name), &target).map_err(CliError::io(&target))?;
        }
        fs::remove_dir_all(&self.dir).map_err(CliError::io(&self.dir))?;
        self.committed = true;
        Ok(())
    }
}

impl Drop for Staging {
    fn drop(&mut self) {
        if !self.committed {
            let _ = fs::remove_dir_all(&self.dir);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dropped_staging_leaves_nothing() {
        let tmp = tempfile::tempdir().unwrap();
        let out = tmp.path().join("run");
        {
            let mut s = Staging::new(&out).unwrap();
            s.write("a.txt", |w| w.write_all(b"x").map_err(CliError::io("a.txt"))).unwrap();
        }
        assert!(!out.exists());
        assert_eq!(fs::read_dir(tmp.path()).unwrap().count(), 0);
    }

    #[test]
    fn commit_moves_files() {
        let tmp = tempfile::tempdir().unwrap();
        let out = tmp.path().join("nested").join("run");
        let mut s = Staging::new(&out).unwrap();
        s.write_json("m.json", &[1, 2]).unwrap();
        assert_eq!(s.files(), ["m.json"]);
        s.commit().unwrap();
        assert_eq!(fs::read_to_string(out.join("m.json")).unwrap(), "[\n  1,\n  2\n]\n");
        assert_eq!(fs::read_dir(tmp.path().join("nested")).unwrap().count(), 1);
    }
}
