//! Numeric formatting for emitted artifacts.
//!
//! Every number leaves the crate with 17 significant digits so that a
//! written value parses back to the identical `f64`.

use serde::Serializer;
use serde_json::value::RawValue;

/// `x` with 17 significant digits in scientific notation.
pub fn sig17(x: f64) -> String {
    if x == 0.0 {
        // avoid emitting "-0"
        return format!("{:.16e}", 0.0);
    }
    format!("{x:.16e}")
}

/// serde `serialize_with` adapter for [`sig17`]; JSON output only.
pub fn serialize_sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::{Error, Serialize};
    if !x.is_finite() {
        return Err(S::Error::custom(format!("non-finite number {x}")));
    }
    let raw = RawValue::from_string(sig17(*x)).map_err(S::Error::custom)?;
    raw.serialize(s)
}

/// Like [`serialize_sig17`] for optional values (`null` when absent).
pub fn serialize_opt_sig17<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => serialize_sig17(v, s),
        None => s.serialize_none(),
    }
}
