use dmcbounds::channel::rational_to_f64;
use dmcbounds::{ExactLogRate, FeedbackCapacity, Rational};
use serde::Serialize;

/// `num/den (≈ decimal)`.
pub fn rational(r: &Rational) -> String {
    format!("{}/{} (≈ {:.12})", r.numer(), r.denom(), rational_to_f64(r))
}

pub fn real(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.12}")
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ExactRate {
    /// `num/den` string of `psi`.
    pub psi: String,
    pub block_length: u32,
    pub rate: f64,
    pub exact: String,
}

impl From<&ExactLogRate> for ExactRate {
    fn from(r: &ExactLogRate) -> Self {
        ExactRate {
            psi: format!("{}/{}", r.psi.numer(), r.psi.denom()),
            block_length: r.block_length,
            rate: r.rate(),
            exact: r.to_string(),
        }
    }
}

impl ExactRate {
    pub fn line(r: &ExactLogRate) -> String {
        format!("{} = {}; psi = {}", real(r.rate()), r, rational(&r.psi))
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct FeedbackRate {
    pub positive: bool,
    pub rate: f64,
    pub value: Option<ExactRate>,
}

impl From<&FeedbackCapacity> for FeedbackRate {
    fn from(c: &FeedbackCapacity) -> Self {
        FeedbackRate {
            positive: c.is_positive(),
            rate: c.rate(),
            value: match c {
                FeedbackCapacity::Zero => None,
                FeedbackCapacity::Positive(r) => Some(r.into()),
            },
        }
    }
}

pub fn feedback_line(c: &FeedbackCapacity) -> String {
    match c {
        FeedbackCapacity::Zero => "0 (every pair of inputs is confusable)".into(),
        FeedbackCapacity::Positive(r) => ExactRate::line(r),
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}
