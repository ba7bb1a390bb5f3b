//! JSON helpers shared by every report type.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::Serializer;

/// Writes a count as a JSON number when it fits in 64 bits and as a decimal
/// string otherwise.
pub fn big_as_number<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub fn bigs_as_numbers<S: Serializer>(xs: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    struct Num<'a>(&'a BigUint);
    impl serde::Serialize for Num<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            big_as_number(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Num(x))?;
    }
    seq.end()
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize infallibly")
}
