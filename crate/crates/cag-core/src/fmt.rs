//! Numeric formatting shared by every report and export.
//!
//! All user-facing numbers print as fixed 6-decimal values. A negative
//! sign on a value that rounds to zero is dropped so algebraically
//! equal results always serialize to identical bytes.

/// Folds IEEE negative zero into positive zero.
pub fn canon(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Fixed 6-decimal rendering with the sign of a rounded-to-zero value
/// stripped.
pub fn f6(x: f64) -> String {
    let s = format!("{:.6}", canon(x));
    if let Some(rest) = s.strip_prefix('-') {
        if rest.chars().all(|c| c == '0' || c == '.') {
            return rest.to_string();
        }
    }
    s
}
