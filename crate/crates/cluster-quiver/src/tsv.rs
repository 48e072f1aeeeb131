//! Value tables as TSV with header `base\tlevel\tvalue`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::quiver::{QuiverSpec, ZVertex};

/// Serialize values ordered by `(level, base)`.
pub fn write_values<I>(q: &QuiverSpec, values: I) -> String
where
    I: IntoIterator<Item = (ZVertex, i64)>,
{
    let mut rows: Vec<(ZVertex, i64)> = values.into_iter().collect();
    rows.sort_by_key(|&(v, _)| (v.level, v.base));
    let mut out = String::from("base\tlevel\tvalue\n");
    for (v, x) in rows {
        out.push_str(&format!("{}\t{}\t{}\n", q.label(v.base), v.level, x));
    }
    out
}

/// Parse a TSV table; the header line is optional.
pub fn parse_values(q: &QuiverSpec, text: &str) -> Result<BTreeMap<ZVertex, i64>> {
    let mut values = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line == "base\tlevel\tvalue" {
            continue;
        }
        let mut fields = line.split('\t');
        let err = |msg: &str| Error::Parse {
            line: lineno + 1,
            msg: msg.to_string(),
        };
        let base = fields.next().ok_or_else(|| err("missing base column"))?;
        let level = fields.next().ok_or_else(|| err("missing level column"))?;
        let value = fields.next().ok_or_else(|| err("missing value column"))?;
        let base = q
            .base_index(base.trim())
            .ok_or_else(|| Error::UnknownVertex(base.trim().to_string()))?;
        let level: i32 = level
            .trim()
            .parse()
            .map_err(|_| err("level is not an integer"))?;
        let value: i64 = value
            .trim()
            .parse()
            .map_err(|_| err("value is not an integer"))?;
        values.insert(ZVertex::new(base, level), value);
    }
    Ok(values)
}

/// Parse `base=value,...` pairs for slice anchors.
pub fn parse_slice_values(q: &QuiverSpec, text: &str) -> Result<Vec<(String, i64)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (base, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("expected `base=value`, got `{pair}`")))?;
            let value: i64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("bad value in `{pair}`")))?;
            if q.base_index(base.trim()).is_none() {
                return Err(Error::UnknownVertex(base.trim().to_string()));
            }
            Ok((base.trim().to_string(), value))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn roundtrip_small_table() {
        let q = QuiverSpec::preset("A2").unwrap();
        let table: BTreeMap<ZVertex, i64> = [
            (ZVertex::new(0, 0), -1),
            (ZVertex::new(1, 0), 0),
            (ZVertex::new(0, 1), 7),
        ]
        .into();
        let text = write_values(&q, table.clone());
        assert!(text.starts_with("base\tlevel\tvalue\n"));
        assert_eq!(parse_values(&q, &text).unwrap(), table);
    }

    proptest! {
        #[test]
        fn roundtrip_random_tables(entries in prop::collection::btree_map(
            (0u32..3, -5i32..5),
            -100i64..100,
            0..20,
        )) {
            let q = QuiverSpec::preset("A3").unwrap();
            let table: BTreeMap<ZVertex, i64> = entries
                .into_iter()
                .map(|((b, l), x)| (ZVertex::new(b, l), x))
                .collect();
            let text = write_values(&q, table.clone());
            prop_assert_eq!(parse_values(&q, &text).unwrap(), table);
        }
    }

    #[test]
    fn slice_value_pairs() {
        let q = QuiverSpec::preset("A2").unwrap();
        let pairs = parse_slice_values(&q, "1=-1,2=0").unwrap();
        assert_eq!(pairs, vec![("1".to_string(), -1), ("2".to_string(), 0)]);
        assert!(parse_slice_values(&q, "9=1").is_err());
        assert!(parse_slice_values(&q, "1~2").is_err());
    }
}
