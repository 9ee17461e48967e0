//! Named-link catalog: `name: braid word` lines.

use std::path::Path;

use braidgate::{BraidWord, Error, Result};

const BUILTIN: &str = include_str!("../data/links.txt");

/// Environment variable naming a replacement catalog file.
pub const LINKS_ENV: &str = "BRAIDGATE_LINKS";

#[derive(Debug, Clone)]
pub struct LinkCatalog {
    entries: Vec<(String, BraidWord)>,
}

impl LinkCatalog {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, word) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("links line {}: expected `name: word`", lineno + 1)))?;
            let word: BraidWord =
                word.parse().map_err(|e| Error::Parse(format!("links line {} ({}): {e}", lineno + 1, name.trim())))?;
            entries.push((name.trim().to_string(), word));
        }
        Ok(LinkCatalog { entries })
    }

    /// The file given on the command line, else the one named by
    /// `BRAIDGATE_LINKS`, else the catalog shipped with the binary.
    pub fn load(explicit: Option<&Path>) -> Result<Self> {
        let from_env = std::env::var_os(LINKS_ENV).map(std::path::PathBuf::from);
        match explicit.map(Path::to_path_buf).or(from_env) {
            Some(path) => {
                let text =
                    std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                Self::parse(&text)
            }
            None => Self::parse(BUILTIN),
        }
    }

    pub fn get(&self, name: &str) -> Result<&BraidWord> {
        self.entries
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .map(|(_, w)| w)
            .ok_or_else(|| Error::Unknown { kind: "link", name: name.to_string() })
    }

    pub fn entries(&self) -> &[(String, BraidWord)] {
        &self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog() {
        let cat = LinkCatalog::parse(BUILTIN).unwrap();
        assert_eq!(cat.get("borromean").unwrap().to_string(), "n=3; 1 -2 1 -2 1 -2");
        assert_eq!(cat.get("Hopf").unwrap().n_strands(), 2);
        assert_eq!(cat.get("unlink3").unwrap().len(), 0);
        assert!(cat.get("granny").is_err());
    }

    #[test]
    fn malformed_lines() {
        assert!(LinkCatalog::parse("hopf 1 1").is_err());
        assert!(LinkCatalog::parse("bad: 1 x").is_err());
        assert_eq!(LinkCatalog::parse("# only a comment\n\n").unwrap().entries().len(), 0);
    }
}
