use std::fmt::Write as _;

use dmcbounds::expurgation::{gram_capped, r_ex_from};
use dmcbounds::gallager::{capacity, r_crit};
use dmcbounds::zero_error::{confusability_graph, independence_number, strong_power_capped};
use dmcbounds::{c0_fb, psi_inf, Channel, Error, ExactLogRate, Rational};
use serde::Serialize;

use crate::output::{self, ExactRate, FeedbackRate};
use crate::{Failure, Format, Settings};

#[derive(Serialize, Debug)]
pub struct ChannelReport {
    pub inputs: usize,
    pub outputs: usize,
    pub capacity: f64,
    pub r_inf: ExactRate,
    pub c0_fb: FeedbackRate,
    /// Absent when all rows coincide.
    pub r_crit: Option<f64>,
    pub r_ex: Vec<Indexed>,
    pub c0_lower: Vec<Indexed>,
    pub confusability: Confusability,
}

/// A per-k or per-n rate, or the reason it was skipped.
#[derive(Serialize, Debug)]
pub struct Indexed {
    pub index: usize,
    pub value: Option<ExactRate>,
    pub skipped: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct Confusability {
    pub vertices: usize,
    pub edges: usize,
    pub alpha: usize,
    pub adjacency: String,
}

fn indexed(index: usize, result: Result<ExactLogRate, Error>) -> Result<Indexed, Failure> {
    match result {
        Ok(r) => Ok(Indexed {
            index,
            value: Some((&r).into()),
            skipped: None,
        }),
        Err(e @ (Error::SizeOverflow { .. } | Error::BudgetExceeded(..))) => Ok(Indexed {
            index,
            value: None,
            skipped: Some(e.to_string()),
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn report(w: &Channel, max_k: usize, max_n: usize, settings: &Settings) -> Result<ChannelReport, Failure> {
    let graph = confusability_graph(w);
    let r_ex = (1..=max_k)
        .map(|k| indexed(k, gram_capped(w, k, settings.size_cap).and_then(|g| r_ex_from(&g, k))))
        .collect::<Result<_, _>>()?;
    let c0_lower = (1..=max_n)
        .map(|n| {
            let rate = strong_power_capped(&graph, n, settings.size_cap)
                .and_then(|g| independence_number(&g))
                .map(|alpha| ExactLogRate::per_block(Rational::new(1.into(), alpha.into()), n as u32));
            indexed(n, rate)
        })
        .collect::<Result<_, _>>()?;
    let r_crit = match r_crit(w) {
        Ok(r) => Some(r),
        Err(Error::DegenerateChannel) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(ChannelReport {
        inputs: w.input_size(),
        outputs: w.output_size(),
        capacity: capacity(w),
        r_inf: (&psi_inf(w)).into(),
        c0_fb: (&c0_fb(w)).into(),
        r_crit,
        r_ex,
        c0_lower,
        confusability: Confusability {
            vertices: graph.vertex_count(),
            edges: graph.edge_count(),
            alpha: independence_number(&graph)?,
            adjacency: graph.to_adjacency_list(),
        },
    })
}

fn indexed_line(out: &mut String, label: &str, item: &Indexed) {
    let body = match (&item.value, &item.skipped) {
        (Some(v), _) => format!("{} = {}; psi {}", output::real(v.rate), v.exact, v.psi),
        (None, Some(reason)) => format!("skipped ({reason})"),
        (None, None) => "skipped".into(),
    };
    let _ = writeln!(out, "{:<18} {body}", format!("{label}{}", item.index));
}

pub fn run(w: &Channel, max_k: usize, max_n: usize, settings: &Settings) -> Result<String, Failure> {
    let rep = report(w, max_k, max_n, settings)?;
    match settings.format {
        Some(Format::Json) => return Ok(output::json(&rep)),
        Some(Format::Csv) => return Err(Failure::validation("info supports text and json output")),
        None => {}
    }
    let r_inf = psi_inf(w);
    let c0 = c0_fb(w);
    let mut out = String::new();
    let _ = writeln!(out, "{:<18} {} x {}", "channel", rep.inputs, rep.outputs);
    let _ = writeln!(out, "{:<18} {}", "capacity", output::real(rep.capacity));
    let _ = writeln!(out, "{:<18} {}", "R_inf", ExactRate::line(&r_inf));
    let _ = writeln!(out, "{:<18} {}", "C0_fb", output::feedback_line(&c0));
    let crit = rep.r_crit.map_or("undefined (identical rows)".into(), output::real);
    let _ = writeln!(out, "{:<18} {crit}", "R_crit");
    for item in &rep.r_ex {
        indexed_line(&mut out, "r_ex k=", item);
    }
    for item in &rep.c0_lower {
        indexed_line(&mut out, "c0_lower n=", item);
    }
    let c = &rep.confusability;
    let _ = writeln!(
        out,
        "{:<18} {} vertices, {} edges, alpha {}",
        "confusability", c.vertices, c.edges, c.alpha
    );
    for line in c.adjacency.lines() {
        let _ = writeln!(out, "  {line}");
    }
    Ok(out)
}
