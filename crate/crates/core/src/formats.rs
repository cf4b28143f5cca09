//! File formats and canonical JSON.
//!
//! Canonical JSON has sorted object keys, two-space indentation, integers
//! only, and a trailing newline.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::lattice::IntMatrix;
use crate::root_datum::{DatumData, DatumError, Preset, RootDatum, WeylElement};
use crate::tame_reps::{PairError, TameInertialPair};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad Weyl word {0:?}: expected simple reflections like \"s0 s1 s0\"")]
    WeylWord(String),
    #[error("bad integer list {0:?}")]
    IntList(String),
    #[error("pair file must give exactly one of weyl_word and weyl_matrix")]
    WeylSource,
    #[error("weyl_matrix is not a square integer matrix")]
    WeylMatrixShape,
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Pair(#[from] PairError),
}

fn sort_keys(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, sort_keys(v));
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

pub fn canonical_value<T: Serialize + ?Sized>(value: &T) -> Value {
    sort_keys(serde_json::to_value(value).expect("in-memory values always serialize"))
}

pub fn canonical_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(&canonical_value(value)).expect("values always print");
    s.push('\n');
    s
}

/// A preset name or an inline custom datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Preset(String),
    Custom(DatumData),
}

impl GroupSpec {
    pub fn load(&self) -> Result<RootDatum, FormatError> {
        Ok(match self {
            GroupSpec::Preset(name) => RootDatum::preset(name.parse::<Preset>()?)?,
            GroupSpec::Custom(data) => RootDatum::from_data(data)?,
        })
    }

    pub fn of(datum: &RootDatum) -> GroupSpec {
        match datum.preset_kind() {
            Some(p) => GroupSpec::Preset(p.to_string()),
            None => GroupSpec::Custom(datum.to_data()),
        }
    }
}

pub fn parse_datum_file(json: &str) -> Result<RootDatum, FormatError> {
    let data: DatumData = serde_json::from_str(json)?;
    Ok(RootDatum::from_data(&data)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub group: GroupSpec,
    pub q: u64,
    pub f: u32,
    pub vbar: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl_word: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl_matrix: Option<Vec<Vec<i64>>>,
}

impl PairFile {
    pub fn parse(json: &str) -> Result<PairFile, FormatError> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn load(&self) -> Result<(RootDatum, TameInertialPair), FormatError> {
        let datum = self.group.load()?;
        let w = weyl_element(&datum, self.weyl_word.as_deref(), self.weyl_matrix.as_deref())?;
        let pair = TameInertialPair::new(&datum, self.q, self.f, self.vbar.clone(), w)?;
        Ok((datum, pair))
    }

    pub fn of(datum: &RootDatum, pair: &TameInertialPair) -> PairFile {
        let (weyl_word, weyl_matrix) = match pair.weyl().word() {
            Some(word) => (Some(word.to_vec()), None),
            None => (None, Some(pair.weyl().matrix().to_rows())),
        };
        PairFile {
            group: GroupSpec::of(datum),
            q: pair.q(),
            f: pair.f(),
            vbar: pair.vbar().to_vec(),
            weyl_word,
            weyl_matrix,
        }
    }
}

/// Exactly one of a word or a matrix.
pub fn weyl_element(
    datum: &RootDatum,
    word: Option<&[usize]>,
    matrix: Option<&[Vec<i64>]>,
) -> Result<WeylElement, FormatError> {
    match (word, matrix) {
        (Some(word), None) => Ok(datum.weyl_from_word(word)?),
        (None, Some(rows)) => {
            let m = IntMatrix::from_rows(rows).ok_or(FormatError::WeylMatrixShape)?;
            if !m.is_square() {
                return Err(FormatError::WeylMatrixShape);
            }
            Ok(datum.weyl_from_matrix(m)?)
        }
        _ => Err(FormatError::WeylSource),
    }
}

/// Accepts `"s0 s1 s0"`, `"0,1,0"`, `"s0s1"`, and `""` or `"e"` or `"id"` for the
/// identity.
pub fn parse_weyl_word(text: &str) -> Result<Vec<usize>, FormatError> {
    let t = text.trim();
    if t.is_empty() || t == "e" || t == "id" {
        return Ok(Vec::new());
    }
    let bad = || FormatError::WeylWord(text.to_string());
    let mut out = Vec::new();
    for token in t.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        if token.starts_with('s') {
            for part in token.split('s').skip(1) {
                out.push(part.parse().map_err(|_| bad())?);
            }
        } else {
            out.push(token.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

/// Comma or whitespace separated integers.
pub fn parse_int_list(text: &str) -> Result<Vec<i64>, FormatError> {
    let t = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| FormatError::IntList(text.to_string())))
        .collect()
}

/// Rows separated by `;`, entries by commas, as in `"0,1;1,0"`.
pub fn parse_int_matrix(text: &str) -> Result<Vec<Vec<i64>>, FormatError> {
    text.split(';').map(parse_int_list).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_sorts_nested_keys() {
        let v: Value = serde_json::from_str(r#"{"b":{"z":1,"a":[{"y":2,"x":3}]},"a":0}"#).unwrap();
        assert_eq!(
            serde_json::to_string(&canonical_value(&v)).unwrap(),
            r#"{"a":0,"b":{"a":[{"x":3,"y":2}],"z":1}}"#
        );
        assert!(canonical_json(&v).ends_with("}\n"));
    }

    #[test]
    fn weyl_words() {
        assert_eq!(parse_weyl_word("s0 s1 s0").unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_weyl_word("s0s2").unwrap(), vec![0, 2]);
        assert_eq!(parse_weyl_word("1,0").unwrap(), vec![1, 0]);
        assert_eq!(parse_weyl_word(" ").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_weyl_word("id").unwrap(), Vec::<usize>::new());
        assert!(parse_weyl_word("t1").is_err());
        assert!(parse_weyl_word("s").is_err());
    }

    #[test]
    fn int_lists() {
        assert_eq!(parse_int_list("1,3").unwrap(), vec![1, 3]);
        assert_eq!(parse_int_list("(1, -3)").unwrap(), vec![1, -3]);
        assert!(parse_int_list("1,x").is_err());
        assert_eq!(parse_int_matrix("0,1;1,0").unwrap(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn pair_file_round_trip() {
        let text = r#"{"group":"GL2","q":3,"f":2,"vbar":[1,11],"weyl_word":[0]}"#;
        let file = PairFile::parse(text).unwrap();
        let (datum, pair) = file.load().unwrap();
        assert_eq!(pair.vbar(), &[1, 3]);
        let back = PairFile::of(&datum, &pair);
        assert_eq!(back.vbar, vec![1, 3]);
        assert_eq!(back.weyl_word, Some(vec![0]));
        assert_eq!(PairFile::parse(&canonical_json(&back)).unwrap(), back);

        let m = r#"{"group":"GL2","q":3,"f":2,"vbar":[1,3],"weyl_matrix":[[0,1],[1,0]]}"#;
        let (_, pm) = PairFile::parse(m).unwrap().load().unwrap();
        assert_eq!(pm.weyl(), pair.weyl());
    }

    #[test]
    fn pair_file_errors() {
        let both = r#"{"group":"GL2","q":3,"f":2,"vbar":[1,3],"weyl_word":[0],"weyl_matrix":[[0,1],[1,0]]}"#;
        assert!(matches!(PairFile::parse(both).unwrap().load(), Err(FormatError::WeylSource)));
        let unknown = r#"{"group":"GL2","q":3,"f":2,"vbar":[1,3],"weyl":[0]}"#;
        assert!(matches!(PairFile::parse(unknown), Err(FormatError::Json(_))));
        let badq = r#"{"group":"GL2","q":6,"f":2,"vbar":[1,3],"weyl_word":[]}"#;
        assert!(matches!(PairFile::parse(badq).unwrap().load(), Err(FormatError::Pair(PairError::InvalidQ(6)))));
        let badgroup = r#"{"group":"E8","q":3,"f":2,"vbar":[1,3],"weyl_word":[]}"#;
        assert!(matches!(PairFile::parse(badgroup).unwrap().load(), Err(FormatError::Datum(_))));
    }

    #[test]
    fn custom_group_in_pair_file() {
        let datum = RootDatum::preset(Preset::Sp(4)).unwrap();
        let data = datum.to_data();
        let file = PairFile {
            group: GroupSpec::Custom(data),
            q: 3,
            f: 1,
            vbar: vec![0, 0],
            weyl_word: Some(vec![]),
            weyl_matrix: None,
        };
        let (loaded, _) = PairFile::parse(&canonical_json(&file)).unwrap().load().unwrap();
        assert_eq!(loaded, datum);
        assert_eq!(loaded.label(), "custom");
    }
}
