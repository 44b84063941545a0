//! One-dimensional maximization of concave functions.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`,
/// stopping when the bracket is narrower than `tol`. Returns the best point
/// seen, endpoints included.
pub fn golden_section_max(f: &mut impl FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut best = [(lo, f(lo)), (hi, f(hi))]
        .into_iter()
        .max_by(|p, q| p.1.total_cmp(&q.1))
        .expect("two candidates");
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a) > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        for p in [(c, fc), (d, fd)] {
            if p.1 > best.1 {
                best = p;
            }
        }
    }
    best
}

/// Maximizes a concave `f` on `[start, rho_cap]`.
///
/// The bracket grows along `start, 1, 2, 4, ...` (points not above `start`
/// skipped) until `f` stops increasing, then golden-section search refines
/// the last two cells. Fails with [`Error::RhoCapExceeded`] if `f` is still
/// increasing at `rho_cap`.
pub fn maximize_on_ray(
    f: &mut impl FnMut(f64) -> f64,
    start: f64,
    rho_cap: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let mut points = vec![start];
    let mut next = 1.0;
    while next <= start {
        next *= 2.0;
    }
    while next < rho_cap {
        points.push(next);
        next *= 2.0;
    }
    points.push(rho_cap);

    let mut values = vec![f(points[0])];
    for i in 1..points.len() {
        let v = f(points[i]);
        values.push(v);
        if v <= values[i - 1] {
            let lo = points[i.saturating_sub(2)];
            let hi = points[i];
            let inner = golden_section_max(f, lo, hi, tol);
            let grid = (points[i - 1], values[i - 1]);
            return Ok(if inner.1 >= grid.1 { inner } else { grid });
        }
    }
    Err(Error::RhoCapExceeded(rho_cap))
}
