//! The JSON map document and its positioned parser.

use std::fmt;

use num_traits::ToPrimitive;
use serde::de::{self, DeserializeSeed, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::{parse_rational, parse_tuple, Rational};
use crate::quadmap::{Field, QuadMap};

/// `{"field": "C" | "R", "n": k, "components": [[a, b, c, d, e, g], ...]}` with
/// `f_i = a x^2 + b xy + c y^2 + d x + e y + g`.
#[derive(Clone, Debug, PartialEq)]
pub struct MapDocument {
    pub field: Field,
    pub n: usize,
    pub components: Vec<[Rational; 6]>,
}

/// Document order `[a, b, c, d, e, g]` is the coefficient-row order
/// `[x^2, xy, y^2, x, y, 1]`.
impl MapDocument {
    pub fn from_map(f: &QuadMap) -> Self {
        let components = f
            .coeff_matrix()
            .into_iter()
            .map(|r| std::array::from_fn(|k| r[k].clone()))
            .collect();
        MapDocument { field: f.field(), n: f.n(), components }
    }

    pub fn to_map(&self) -> Result<QuadMap> {
        let rows: Vec<Vec<Rational>> = self.components.iter().map(|r| r.to_vec()).collect();
        QuadMap::from_rows(self.field, &rows)
    }

    /// Compiles `"x^2+y, y^2+x, xy"`.
    pub fn from_expr(expr: &str, field: Field) -> Result<Self> {
        let comps = parse_tuple(expr)?;
        Ok(Self::from_map(&QuadMap::new(field, comps)?))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    pub fn parse(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(json_error)
    }
}

/// One document, or an array of them, or several whitespace-separated values.
pub fn parse_documents(src: &str) -> Result<Vec<MapDocument>> {
    let mut out = vec![];
    for item in serde_json::Deserializer::from_str(src).into_iter::<OneOrMany>() {
        match item.map_err(json_error)? {
            OneOrMany::One(d) => out.push(d),
            OneOrMany::Many(ds) => out.extend(ds),
        }
    }
    if out.is_empty() {
        return Err(Error::parse(1, 1, "no map document in input"));
    }
    Ok(out)
}

pub(crate) fn json_error(e: serde_json::Error) -> Error {
    let text = e.to_string();
    let message = text.rsplit_once(" at line ").map_or(text.as_str(), |(m, _)| m).to_string();
    Error::parse(e.line(), e.column(), message)
}

fn rational_cell<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    match (v.is_integer(), v.numer().to_i64()) {
        (true, Some(k)) => s.serialize_i64(k),
        _ => s.serialize_str(&v.to_string()),
    }
}

struct Row<'a>(&'a [Rational; 6]);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(6))?;
        for v in self.0 {
            seq.serialize_element(&Cell(v))?;
        }
        seq.end()
    }
}

struct Cell<'a>(&'a Rational);

impl Serialize for Cell<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational_cell(self.0, s)
    }
}

impl Serialize for MapDocument {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Row> = self.components.iter().map(Row).collect();
        let mut st = s.serialize_struct("MapDocument", 3)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("components", &rows)?;
        st.end()
    }
}

struct RationalCell(Rational);

impl<'de> Deserialize<'de> for RationalCell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RationalCell;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a rational string \"p/q\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<RationalCell, E> {
                Ok(RationalCell(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<RationalCell, E> {
                Ok(RationalCell(Rational::from_integer(v.into())))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<RationalCell, E> {
                Err(E::custom(format!("floating point coefficient {v} is not exact; write it as \"p/q\"")))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<RationalCell, E> {
                parse_rational(v)
                    .map(RationalCell)
                    .ok_or_else(|| E::custom(format!("unparsable rational \"{v}\"")))
            }
        }
        d.deserialize_any(V)
    }
}

struct RowCells;

impl<'de> DeserializeSeed<'de> for RowCells {
    type Value = [Rational; 6];
    fn deserialize<D: Deserializer<'de>>(self, d: D) -> std::result::Result<Self::Value, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = [Rational; 6];
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("6 coefficients [a, b, c, d, e, g]")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut cells = vec![];
                while let Some(RationalCell(v)) = seq.next_element()? {
                    cells.push(v);
                }
                let len = cells.len();
                cells.try_into().map_err(|_| de::Error::invalid_length(len, &self))
            }
        }
        d.deserialize_seq(V)
    }
}

struct Rows;

impl<'de> DeserializeSeed<'de> for Rows {
    type Value = Vec<[Rational; 6]>;
    fn deserialize<D: Deserializer<'de>>(self, d: D) -> std::result::Result<Self::Value, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vec<[Rational; 6]>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of coefficient rows")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut rows = vec![];
                while let Some(r) = seq.next_element_seed(RowCells)? {
                    rows.push(r);
                }
                Ok(rows)
            }
        }
        d.deserialize_seq(V)
    }
}

fn visit_document<'de, A: MapAccess<'de>>(mut map: A) -> std::result::Result<MapDocument, A::Error> {
    let (mut field, mut n, mut components) = (None, None, None);
    while let Some(key) = map.next_key::<String>()? {
        match key.as_str() {
            "field" => field = Some(map.next_value::<Field>()?),
            "n" => n = Some(map.next_value::<usize>()?),
            "components" => components = Some(map.next_value_seed(Rows)?),
            other => return Err(de::Error::unknown_field(other, &["field", "n", "components"])),
        }
    }
    let field = field.ok_or_else(|| de::Error::missing_field("field"))?;
    let components: Vec<[Rational; 6]> = components.ok_or_else(|| de::Error::missing_field("components"))?;
    let n = n.unwrap_or(components.len());
    if n != components.len() {
        return Err(de::Error::custom(format!("n = {n} but {} components given", components.len())));
    }
    if n == 0 {
        return Err(de::Error::custom("a map needs at least one component"));
    }
    Ok(MapDocument { field, n, components })
}

struct DocVisitor;

impl<'de> Visitor<'de> for DocVisitor {
    type Value = MapDocument;
    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a map document object")
    }
    fn visit_map<A: MapAccess<'de>>(self, map: A) -> std::result::Result<MapDocument, A::Error> {
        visit_document(map)
    }
}

impl<'de> Deserialize<'de> for MapDocument {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_map(DocVisitor)
    }
}

enum OneOrMany {
    One(MapDocument),
    Many(Vec<MapDocument>),
}

impl<'de> Deserialize<'de> for OneOrMany {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = OneOrMany;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map document or an array of them")
            }
            fn visit_map<A: MapAccess<'de>>(self, map: A) -> std::result::Result<OneOrMany, A::Error> {
                visit_document(map).map(OneOrMany::One)
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<OneOrMany, A::Error> {
                let mut docs = vec![];
                while let Some(d) = seq.next_element::<MapDocument>()? {
                    docs.push(d);
                }
                Ok(OneOrMany::Many(docs))
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadmap::AffinePair;
    use rand::SeedableRng;

    const F1: &str = r#"{"field":"C","n":3,"components":[[1,0,0,0,1,0],[0,0,1,1,0,0],[0,1,0,0,0,0]]}"#;

    #[test]
    fn reads_the_first_normal_form() {
        let d = MapDocument::parse(F1).unwrap();
        assert_eq!(d.to_map().unwrap(), QuadMap::new(Field::Complex, parse_tuple("x^2+y, y^2+x, xy").unwrap()).unwrap());
        assert_eq!(d.to_json(), F1);
    }

    #[test]
    fn round_trips_random_maps() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let f = MapDocument::from_expr("x^2+y, y^2+x, xy - 3/2 x", Field::Real).unwrap().to_map().unwrap();
        for _ in 0..20 {
            let g = AffinePair::random(3, &mut rng, 5).act(&f).unwrap();
            let d = MapDocument::from_map(&g);
            assert_eq!(MapDocument::parse(&d.to_json()).unwrap(), d);
            assert_eq!(d.to_map().unwrap(), g);
        }
    }

    #[test]
    fn accepts_strings_and_batches() {
        let d = MapDocument::parse(r#"{"field":"R","components":[["1/2","-3",0,0,"4",1]]}"#).unwrap();
        assert_eq!(d.n, 1);
        assert_eq!(d.components[0][0], Rational::new(1.into(), 2.into()));
        let many = parse_documents(&format!("[{F1},{F1}]\n{F1}")).unwrap();
        assert_eq!(many.len(), 3);
    }

    fn position(src: &str) -> (usize, usize, String) {
        match MapDocument::parse(src) {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let (line, col, msg) = position("{\"field\":\"C\",\n\"components\":[[1,0,0,0,1]]}");
        assert_eq!(line, 2);
        assert!(col > 10, "{col}");
        assert!(msg.contains("6 coefficients"), "{msg}");
        let (line, _, msg) = position("{\"field\":\"C\",\"components\":\n\n[[1,0,0,0,\"1/0\",0]]}");
        assert_eq!(line, 3);
        assert!(msg.contains("1/0"), "{msg}");
        let (_, _, msg) = position(r#"{"field":"Q","components":[[1,0,0,0,0,0]]}"#);
        assert!(msg.contains("unknown variant"), "{msg}");
        let (_, _, msg) = position(r#"{"field":"C","components":[[0.5,0,0,0,0,0]]}"#);
        assert!(msg.contains("not exact"), "{msg}");
        let (_, _, msg) = position(r#"{"field":"C","n":2,"components":[[1,0,0,0,0,0]]}"#);
        assert!(msg.contains("n = 2"), "{msg}");
        assert!(matches!(MapDocument::parse("{\"field\":"), Err(Error::Parse { .. })));
    }
}
