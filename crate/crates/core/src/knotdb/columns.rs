use std::fs;
use std::path::Path;

use super::KnotDbError;

/// Maps record fields to CSV header names and describes the file layout.
///
/// The defaults match `data/knotinfo_le12.csv`. A config file holds one
/// `key=value` per line; blank lines and lines starting with `#` are ignored.
/// Keys are the field names below plus `delimiter` (a single character or
/// `tab`) and `skip_rows` (data rows to drop right after the header, e.g.
/// KnotInfo's display-name row).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColumnMap {
    pub name: String,
    pub crossing_number: String,
    pub alternating: String,
    pub bridge_index: String,
    pub determinant: String,
    pub jones_polynomial: String,
    /// Optional in the file.
    pub montesinos_notation: String,
    /// Optional in the file.
    pub pd_notation: String,
    pub delimiter: u8,
    pub skip_rows: usize,
}

impl Default for ColumnMap {
    fn default() -> Self {
        ColumnMap {
            name: "name".into(),
            crossing_number: "crossing_number".into(),
            alternating: "alternating".into(),
            bridge_index: "bridge_index".into(),
            determinant: "determinant".into(),
            jones_polynomial: "jones_polynomial".into(),
            montesinos_notation: "montesinos_notation".into(),
            pd_notation: "pd_notation".into(),
            delimiter: b',',
            skip_rows: 0,
        }
    }
}

impl ColumnMap {
    pub const KEYS: [&'static str; 10] = [
        "name",
        "crossing_number",
        "alternating",
        "bridge_index",
        "determinant",
        "jones_polynomial",
        "montesinos_notation",
        "pd_notation",
        "delimiter",
        "skip_rows",
    ];

    /// Applies one `key=value` assignment.
    pub fn set(&mut self, assignment: &str) -> Result<(), KnotDbError> {
        let bad = |msg: &str| KnotDbError::Config(format!("{assignment:?}: {msg}"));
        let (key, value) = assignment.split_once('=').ok_or_else(|| bad("expected key=value"))?;
        let (key, value) = (key.trim(), value.trim());
        let slot = match key {
            "name" => &mut self.name,
            "crossing_number" => &mut self.crossing_number,
            "alternating" => &mut self.alternating,
            "bridge_index" => &mut self.bridge_index,
            "determinant" => &mut self.determinant,
            "jones_polynomial" => &mut self.jones_polynomial,
            "montesinos_notation" => &mut self.montesinos_notation,
            "pd_notation" => &mut self.pd_notation,
            "delimiter" => {
                self.delimiter = match value {
                    "tab" | "\\t" => b'\t',
                    v if v.len() == 1 => v.as_bytes()[0],
                    _ => return Err(bad("delimiter must be one ASCII character or `tab`")),
                };
                return Ok(());
            }
            "skip_rows" => {
                self.skip_rows = value.parse().map_err(|_| bad("skip_rows must be a count"))?;
                return Ok(());
            }
            _ => return Err(bad(&format!("unknown key; expected one of {}", Self::KEYS.join(", ")))),
        };
        if value.is_empty() {
            return Err(bad("empty column name"));
        }
        *slot = value.to_string();
        Ok(())
    }

    pub fn from_config_str(text: &str) -> Result<ColumnMap, KnotDbError> {
        let mut map = ColumnMap::default();
        map.apply_config_str(text)?;
        Ok(map)
    }

    pub fn apply_config_str(&mut self, text: &str) -> Result<(), KnotDbError> {
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            self.set(line)?;
        }
        Ok(())
    }

    pub fn apply_config_file(&mut self, path: &Path) -> Result<(), KnotDbError> {
        let text = fs::read_to_string(path)
            .map_err(|e| KnotDbError::Io(format!("{}: {e}", path.display())))?;
        self.apply_config_str(&text)
    }

    /// Stable `key=value` rendering, used for cache keys.
    pub fn fingerprint(&self) -> String {
        format!(
            "name={}\ncrossing_number={}\nalternating={}\nbridge_index={}\ndeterminant={}\n\
             jones_polynomial={}\nmontesinos_notation={}\npd_notation={}\ndelimiter={}\nskip_rows={}\n",
            self.name,
            self.crossing_number,
            self.alternating,
            self.bridge_index,
            self.determinant,
            self.jones_polynomial,
            self.montesinos_notation,
            self.pd_notation,
            self.delimiter,
            self.skip_rows
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let map = ColumnMap::from_config_str(
            "# KnotInfo export\nname = knot\ndelimiter=|\n\nskip_rows=1\njones_polynomial=jones\n",
        )
        .unwrap();
        assert_eq!(map.name, "knot");
        assert_eq!(map.jones_polynomial, "jones");
        assert_eq!(map.delimiter, b'|');
        assert_eq!(map.skip_rows, 1);
        assert_eq!(map.bridge_index, "bridge_index");
        assert!(ColumnMap::from_config_str("colour=red").is_err());
        assert!(ColumnMap::from_config_str("name").is_err());
        assert!(ColumnMap::from_config_str("delimiter=ab").is_err());
        assert_eq!(ColumnMap::from_config_str("delimiter=tab").unwrap().delimiter, b'\t');
    }

    #[test]
    fn fingerprint_tracks_changes() {
        let mut map = ColumnMap::default();
        let before = map.fingerprint();
        map.set("determinant=det").unwrap();
        assert_ne!(before, map.fingerprint());
    }
}
