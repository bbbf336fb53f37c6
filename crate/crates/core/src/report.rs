//! Serialization helpers for reports: exact rationals are written as
//! strings such as `"5/3"`.

use num_rational::Rational64;
use serde::Serializer;

pub fn ratio_string(r: &Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ser_ratio<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}
