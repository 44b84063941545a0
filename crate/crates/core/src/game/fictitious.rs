//! Fictitious play for nonnegative matrix games, in floating point.
//!
//! Used only to cross-check the exact solver. After `iterations` rounds the
//! empirical strategies give a bracket `[lower, upper]` that always contains
//! the game value; the bracket then seeds a support refinement that solves
//! the equalizer system of the most frequently played actions.

#[derive(Debug, Clone, PartialEq)]
pub struct FictitiousPlay {
    /// Guaranteed payoff of the maximizer's empirical mixture.
    pub lower: f64,
    /// Guaranteed cap of the minimizer's empirical mixture.
    pub upper: f64,
    pub maximizer: Vec<f64>,
    pub minimizer: Vec<f64>,
    pub iterations: usize,
}

impl FictitiousPlay {
    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn estimate(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// Simultaneous fictitious play on `payoff[row][col]`; the row player
/// maximizes. Stops early once the bracket is narrower than `gap`.
pub fn fictitious_play(payoff: &[Vec<f64>], iterations: usize, gap: f64) -> FictitiousPlay {
    let rows = payoff.len();
    let cols = payoff[0].len();
    // row_score[y] = sum over history of payoff[y][x_t]; col_score[x] likewise
    let mut row_score = vec![0.0; rows];
    let mut col_score = vec![0.0; cols];
    let mut row_count = vec![0usize; rows];
    let mut col_count = vec![0usize; cols];
    let (mut y, mut x) = (0usize, 0usize);
    let mut best = (f64::NEG_INFINITY, f64::INFINITY);
    let mut t = 0;
    while t < iterations {
        t += 1;
        row_count[y] += 1;
        col_count[x] += 1;
        for (s, row) in row_score.iter_mut().zip(payoff) {
            *s += row[x];
        }
        for (s, v) in col_score.iter_mut().zip(&payoff[y]) {
            *s += v;
        }
        let lower = col_score.iter().cloned().fold(f64::INFINITY, f64::min) / t as f64;
        let upper = row_score.iter().cloned().fold(f64::NEG_INFINITY, f64::max) / t as f64;
        best = (best.0.max(lower), best.1.min(upper));
        y = argmax(&row_score);
        x = argmin(&col_score);
        if best.1 - best.0 <= gap {
            break;
        }
    }
    let norm = |c: &[usize]| c.iter().map(|&n| n as f64 / t as f64).collect::<Vec<_>>();
    FictitiousPlay {
        lower: best.0,
        upper: best.1,
        maximizer: norm(&row_count),
        minimizer: norm(&col_count),
        iterations: t,
    }
}

/// Game value estimate: fictitious play to locate the supports, then an
/// equalizer solve on square subsets of the played actions, accepted only
/// if the resulting mixtures certify a bracket of width `tol`. Falls back to
/// the fictitious-play midpoint when no equalizer certifies.
pub fn fictitious_value(payoff: &[Vec<f64>], iterations: usize, tol: f64) -> f64 {
    let fp = fictitious_play(payoff, iterations, tol);
    if fp.gap() <= tol {
        return fp.estimate();
    }
    let threshold = 0.02;
    let rows: Vec<usize> = (0..payoff.len()).filter(|&i| fp.maximizer[i] > threshold).collect();
    let cols: Vec<usize> = (0..payoff[0].len()).filter(|&j| fp.minimizer[j] > threshold).collect();
    let all_rows: Vec<usize> = (0..payoff.len()).collect();
    let all_cols: Vec<usize> = (0..payoff[0].len()).collect();
    kernel_search(payoff, &rows, &cols, &fp, tol)
        .or_else(|| kernel_search(payoff, &all_rows, &all_cols, &fp, tol))
        .unwrap_or_else(|| fp.estimate())
}

fn kernel_search(
    payoff: &[Vec<f64>],
    rows: &[usize],
    cols: &[usize],
    fp: &FictitiousPlay,
    tol: f64,
) -> Option<f64> {
    let col_sets = subsets(cols);
    for rs in subsets(rows) {
        for cs in col_sets.iter().filter(|cs| cs.len() == rs.len()) {
            if let Some(v) = certified_equalizer(payoff, &rs, cs, tol) {
                if v >= fp.lower - tol && v <= fp.upper + tol {
                    return Some(v);
                }
            }
        }
    }
    None
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (1u32..(1 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// Solves `v^T A_S = value 1`, `A_S u = value 1` on the kernel `rs x cs`
/// and checks both mixtures against every pure reply.
fn certified_equalizer(payoff: &[Vec<f64>], rs: &[usize], cs: &[usize], tol: f64) -> Option<f64> {
    let k = rs.len();
    let kernel: Vec<Vec<f64>> = rs
        .iter()
        .map(|&r| cs.iter().map(|&c| payoff[r][c]).collect())
        .collect();
    let transposed: Vec<Vec<f64>> = (0..k).map(|j| (0..k).map(|i| kernel[i][j]).collect()).collect();
    // A_S u' = 1, then u = u' / sum(u'), value = 1 / sum(u')
    let u = solve_linear(kernel, vec![1.0; k])?;
    let v = solve_linear(transposed, vec![1.0; k])?;
    let (su, sv): (f64, f64) = (u.iter().sum(), v.iter().sum());
    if su <= 0.0 || sv <= 0.0 || u.iter().chain(&v).any(|&w| w < -1e-12) {
        return None;
    }
    let value = 1.0 / su;
    let mut minimizer = vec![0.0; payoff[0].len()];
    for (&c, w) in cs.iter().zip(&u) {
        minimizer[c] = w / su;
    }
    let mut maximizer = vec![0.0; payoff.len()];
    for (&r, w) in rs.iter().zip(&v) {
        maximizer[r] = w / sv;
    }
    let upper = payoff
        .iter()
        .map(|row| row.iter().zip(&minimizer).map(|(a, p)| a * p).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    let lower = (0..payoff[0].len())
        .map(|c| payoff.iter().zip(&maximizer).map(|(row, p)| row[c] * p).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    (upper - lower <= tol).then_some(value)
}

fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for i in col + 1..n {
            let f = a[i][col] / a[col][col];
            for j in col..n {
                a[i][j] -= f * a[col][j];
            }
            b[i] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for i in 1..v.len() {
        if v[i] > v[best] {
            best = i;
        }
    }
    best
}

fn argmin(v: &[f64]) -> usize {
    let mut best = 0;
    for i in 1..v.len() {
        if v[i] < v[best] {
            best = i;
        }
    }
    best
}
