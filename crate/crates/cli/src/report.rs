//! Plain-text reports: a title line, a body, and for checks a verdict.

use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    /// Command path, such as `check special`.
    pub command: String,
    pub subject: String,
    pub body: String,
    /// `None` for computations.
    pub passed: Option<bool>,
}

impl Report {
    pub fn computed(command: &str, subject: &str, body: String) -> Self {
        Self { command: command.into(), subject: subject.into(), body, passed: None }
    }

    pub fn checked(command: &str, subject: &str, body: String, passed: bool) -> Self {
        Self { command: command.into(), subject: subject.into(), body, passed: Some(passed) }
    }

    pub fn render(&self) -> String {
        let mut out = format!("# gspc {} {}\n", self.command, self.subject);
        out.push_str(&self.body);
        if !self.body.ends_with('\n') {
            out.push('\n');
        }
        if let Some(p) = self.passed {
            out.push_str(if p { "verdict: PASS\n" } else { "verdict: FAIL\n" });
        }
        out
    }

    pub fn exit_code(&self) -> u8 {
        match self.passed {
            Some(false) => 1,
            _ => 0,
        }
    }

    pub fn file_name(&self) -> String {
        let raw = format!("{}-{}", self.command, self.subject);
        let mut name: String = raw
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
            .collect();
        name.push_str(".txt");
        name
    }

    /// Writes the report next to a temporary file and renames it into
    /// place, so readers never see a partial report.
    pub fn write_to(&self, dir: &Path) -> std::io::Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(self.file_name());
        let tmp = dir.join(format!(".{}.tmp", self.file_name()));
        {
            let mut f = std::fs::File::create(&tmp)?;
            f.write_all(self.render().as_bytes())?;
            f.sync_all()?;
        }
        std::fs::rename(&tmp, &path)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_and_names() {
        let r = Report::checked("check special", "H(Z/2)", "very special: true".into(), true);
        assert_eq!(r.render(), "# gspc check special H(Z/2)\nvery special: true\nverdict: PASS\n");
        assert_eq!(r.file_name(), "check_special-H_Z_2_.txt");
        assert_eq!(Report::checked("c", "x", String::new(), false).exit_code(), 1);
    }
}
