use dmcbounds::approx::{self, Quantity, Verdict};
use dmcbounds::Channel;
use serde_json::json;

use crate::output;
use crate::{Failure, Format, Settings};

pub fn trace(w: &Channel, quantity: Quantity, n_max: usize, settings: &Settings) -> Result<String, Failure> {
    let t = approx::trace(w, quantity, n_max)?;
    if settings.format == Some(Format::Json) {
        let entries: Vec<_> = t
            .entries
            .iter()
            .enumerate()
            .map(|(i, &(n, value))| {
                json!({ "N": n, "value": value, "error_bound": t.bound.get(i).map(|b| b.1) })
            })
            .collect();
        return Ok(output::json(&json!({
            "quantity": quantity.name(),
            "target": t.target,
            "target_psi": format!("{}/{}", t.target_psi.numer(), t.target_psi.denom()),
            "entries": entries,
        })));
    }
    Ok(t.to_csv())
}

/// Exit code 0 on acceptance, 10 when the budget runs out.
pub fn semidecide(
    w: &Channel,
    quantity: Quantity,
    lambda: f64,
    budget: usize,
    settings: &Settings,
) -> Result<(String, u8), Failure> {
    let d = approx::semi_decide_below(w, lambda, quantity, budget)?;
    let (line, code, n) = match d.verdict {
        Verdict::Accepted(n) => (
            format!("ACCEPTED at N = {n}: {} < {lambda}", quantity.name()),
            0,
            Some(n),
        ),
        Verdict::Undetermined(b) => (
            format!("UNDETERMINED after budget {b}: no certificate that {} < {lambda}", quantity.name()),
            10,
            None,
        ),
    };
    if settings.format == Some(Format::Json) {
        let verdict = if n.is_some() { "accepted" } else { "undetermined" };
        let body = json!({
            "quantity": quantity.name(),
            "lambda": lambda,
            "budget": budget,
            "verdict": verdict,
            "at_n": n,
        });
        return Ok((output::json(&body), code));
    }
    Ok((line + "\n", code))
}
