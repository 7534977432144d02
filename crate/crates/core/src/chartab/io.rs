use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{Character, CharacterTable, TableError, TableSource};
use crate::arith::{Cyclotomic, CyclotomicRepr};
use crate::group::{ClassStructure, HasClasses};

/// On-disk character table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub group: String,
    pub order: u64,
    pub exponent: u64,
    pub class_sizes: Vec<u64>,
    pub rep_orders: Vec<u64>,
    pub inverse_class: Vec<usize>,
    pub power_map: Vec<Vec<usize>>,
    pub rows: Vec<Vec<CyclotomicRepr>>,
}

impl From<&CharacterTable> for TableFile {
    fn from(t: &CharacterTable) -> Self {
        let c = t.classes();
        TableFile {
            group: t.group_name().to_string(),
            order: c.order,
            exponent: c.exponent,
            class_sizes: c.sizes.clone(),
            rep_orders: c.rep_orders.clone(),
            inverse_class: c.inverse_class.clone(),
            power_map: c.power_map.clone(),
            rows: t
                .rows()
                .iter()
                .map(|r| r.values().iter().map(Cyclotomic::to_repr).collect())
                .collect(),
        }
    }
}

impl TableFile {
    /// Rebuild and fully re-validate a table.
    pub fn into_table(self, source: TableSource) -> Result<CharacterTable, TableError> {
        let classes = ClassStructure::from_parts(
            self.order,
            self.exponent,
            self.class_sizes,
            self.rep_orders,
            self.inverse_class,
            self.power_map,
        )?;
        let rows = self
            .rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(Cyclotomic::try_from)
                    .collect::<Result<Vec<_>, _>>()
                    .map(Character::new)
            })
            .collect::<Result<Vec<_>, _>>()?;
        CharacterTable::new(self.group, Arc::new(classes), rows, source)
    }
}

pub fn table_to_json(table: &CharacterTable) -> String {
    serde_json::to_string_pretty(&TableFile::from(table)).expect("table serializes")
}

pub fn table_from_json(text: &str, source: TableSource) -> Result<CharacterTable, TableError> {
    let file: TableFile =
        serde_json::from_str(text).map_err(|e| TableError::Schema(e.to_string()))?;
    file.into_table(source)
}

pub fn save_table(table: &CharacterTable, path: &Path) -> Result<(), TableError> {
    let mut text = table_to_json(table);
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Load a table file; provenance records the SHA-256 of the file bytes.
pub fn load_table(path: &Path) -> Result<CharacterTable, TableError> {
    let bytes = std::fs::read(path)?;
    let text = std::str::from_utf8(&bytes).map_err(|e| TableError::Schema(e.to_string()))?;
    let source = TableSource::File {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    };
    table_from_json(text, source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::compute_table;
    use crate::group::{enumerate, Catalog, ConjugacyData, DEFAULT_ELEMENT_CAP};

    fn s3() -> CharacterTable {
        let g = enumerate(Catalog::bundled().get("S3").unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
        compute_table(&g, &ConjugacyData::new(&g)).unwrap()
    }

    #[test]
    fn save_then_load() {
        let t = s3();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s3.json");
        save_table(&t, &path).unwrap();
        let back = load_table(&path).unwrap();
        assert_eq!(back, t);
        match back.source() {
            TableSource::File { sha256, .. } => assert_eq!(sha256.len(), 64),
            other => panic!("unexpected source {other:?}"),
        }
    }

    #[test]
    fn duplicated_row_fails_orthogonality() {
        let mut file = TableFile::from(&s3());
        file.rows[1] = file.rows[2].clone();
        let err = file.into_table(TableSource::Computed { prime: 7 }).unwrap_err();
        assert!(matches!(err, TableError::Orthogonality(_)), "{err}");
    }

    #[test]
    fn non_canonical_value_rejected() {
        let text = table_to_json(&s3());
        // give one value an extra (unreduced) coefficient
        let mut file: serde_json::Value = serde_json::from_str(&text).unwrap();
        let cell = &mut file["rows"][2][1];
        cell["num"].as_array_mut().unwrap().push(0.into());
        cell["den"].as_array_mut().unwrap().push(1.into());
        let err = table_from_json(&file.to_string(), TableSource::Computed { prime: 7 }).unwrap_err();
        assert!(
            matches!(err, TableError::Arith(crate::arith::ArithError::NonCanonical(_))),
            "{err}"
        );
    }

    #[test]
    fn schema_violations() {
        assert!(matches!(
            table_from_json("{\"group\": \"S3\"}", TableSource::Computed { prime: 7 }),
            Err(TableError::Schema(_))
        ));
        let mut file = TableFile::from(&s3());
        file.class_sizes = vec![1, 1, 4];
        assert!(matches!(
            file.into_table(TableSource::Computed { prime: 7 }),
            Err(TableError::Group(_))
        ));
    }
}
