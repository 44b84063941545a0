use std::fmt::Write as _;

use dmcbounds::channel::kronecker_capped;
use dmcbounds::{c0_fb, psi_inf, Channel, FeedbackCapacity, Rational};
use serde::Serialize;

use crate::output::{self, ExactRate, FeedbackRate};
use crate::{Failure, Format, Settings};

#[derive(Serialize, Debug)]
struct Side {
    r_inf: ExactRate,
    c0_fb: FeedbackRate,
}

#[derive(Serialize, Debug)]
struct ProductReport {
    a: Side,
    b: Side,
    product: Side,
    /// `psi(A x B) = psi(A) psi(B)`.
    r_inf_additive: bool,
    /// Both: some factor has zero feedback capacity and some factor positive.
    mixed_feedback: bool,
    both_r_inf_positive: bool,
    condition_holds: bool,
    verdict: &'static str,
}

fn side(w: &Channel) -> (Side, Rational, FeedbackCapacity) {
    let r = psi_inf(w);
    let c = c0_fb(w);
    (
        Side {
            r_inf: (&r).into(),
            c0_fb: (&c).into(),
        },
        r.psi,
        c,
    )
}

pub fn run(a: &Channel, b: &Channel, settings: &Settings) -> Result<String, Failure> {
    let joint = kronecker_capped(a, b, settings.size_cap)?;
    let (sa, psi_a, ca) = side(a);
    let (sb, psi_b, cb) = side(b);
    let (sj, psi_j, cj) = side(&joint);
    let additive = psi_j == &psi_a * &psi_b;
    let mixed = (!ca.is_positive() || !cb.is_positive()) && (ca.is_positive() || cb.is_positive());
    let both_positive = psi_a < Rational::from_integer(1.into()) && psi_b < Rational::from_integer(1.into());
    let condition = mixed && both_positive;
    // exact: C(AxB) > C(A) + C(B)  <=>  psi(AxB) < psi(A) psi(B)
    let strict = cj.effective_psi() < ca.effective_psi() * cb.effective_psi();
    let verdict = if strict { "SUPER-ADDITIVE" } else { "ADDITIVE" };
    let rep = ProductReport {
        a: sa,
        b: sb,
        product: sj,
        r_inf_additive: additive,
        mixed_feedback: mixed,
        both_r_inf_positive: both_positive,
        condition_holds: condition,
        verdict,
    };
    match settings.format {
        Some(Format::Json) => return Ok(output::json(&rep)),
        Some(Format::Csv) => return Err(Failure::validation("product supports text and json output")),
        None => {}
    }
    let mut out = String::new();
    for (name, w, c) in [("A", a, &ca), ("B", b, &cb), ("A x B", &joint, &cj)] {
        let _ = writeln!(out, "{name} ({} x {})", w.input_size(), w.output_size());
        let _ = writeln!(out, "  R_inf  {}", ExactRate::line(&psi_inf(w)));
        let _ = writeln!(out, "  C0_fb  {}", output::feedback_line(c));
    }
    let _ = writeln!(
        out,
        "R_inf: psi(A x B) = {} {} psi(A) psi(B) = {}",
        output::rational(&psi_j),
        if additive { "=" } else { "!=" },
        output::rational(&(&psi_a * &psi_b)),
    );
    let _ = writeln!(
        out,
        "C0_fb: {} vs {} + {} = {}",
        output::real(cj.rate()),
        output::real(ca.rate()),
        output::real(cb.rate()),
        output::real(ca.rate() + cb.rate()),
    );
    let _ = writeln!(
        out,
        "condition: exactly one factor with C0_fb = 0: {mixed}; min R_inf > 0: {both_positive}; holds: {condition}"
    );
    let _ = writeln!(out, "verdict: {verdict}");
    Ok(out)
}
