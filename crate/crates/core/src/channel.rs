//! Discrete memoryless channels with exact rational transition probabilities.
//!
//! A [`Channel`] stores `W(y|x)` row by row: row `x` is the output
//! distribution for input `x`. Every entry is a [`Rational`], so the zero
//! pattern of the matrix (which decides `R_inf`, the zero-error quantities and
//! all finiteness gates) is known exactly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// Default cap on `|X1||X2|` and `|Y1||Y2|` for product channels.
pub const DEFAULT_SIZE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Channel {
    inputs: usize,
    outputs: usize,
    rows: Vec<Vec<Rational>>,
}

impl Channel {
    /// Validates `rows` as a row-stochastic matrix, checked exactly.
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let inputs = rows.len();
        if inputs == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let outputs = rows[0].len();
        if outputs == 0 {
            return Err(Error::EmptyAlphabet);
        }
        for (x, row) in rows.iter().enumerate() {
            if row.len() != outputs {
                return Err(Error::RaggedRows {
                    row: x,
                    expected: outputs,
                    found: row.len(),
                });
            }
            let mut sum = Rational::zero();
            for (y, p) in row.iter().enumerate() {
                if p.is_negative() {
                    return Err(Error::NegativeEntry {
                        row: x,
                        col: y,
                        value: p.to_string(),
                    });
                }
                sum += p;
            }
            if !sum.is_one() {
                return Err(Error::NonStochasticRow {
                    row: x,
                    sum: sum.to_string(),
                });
            }
        }
        Ok(Channel {
            inputs,
            outputs,
            rows,
        })
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_ratios(rows: &[&[(i64, i64)]]) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let mut r = Vec::with_capacity(row.len());
            for &(n, d) in row.iter() {
                if d == 0 {
                    return Err(Error::InvalidParameter("zero denominator".into()));
                }
                r.push(Rational::new(BigInt::from(n), BigInt::from(d)));
            }
            out.push(r);
        }
        Channel::new(out)
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let rows = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| if x == y { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Channel::new(rows)
    }

    /// The q-ary typewriter channel: `x -> x` with probability `1 - eps`,
    /// `x -> x + 1 (mod q)` with probability `eps`.
    pub fn typewriter(q: usize, eps: &Rational) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!(
                "typewriter needs q >= 2, got {q}"
            )));
        }
        let half = Rational::new(1.into(), 2.into());
        if eps.is_negative() || *eps > half {
            return Err(Error::InvalidEpsilon(eps.to_string()));
        }
        let stay = Rational::one() - eps;
        let rows = (0..q)
            .map(|x| {
                let mut row = vec![Rational::zero(); q];
                row[x] += &stay;
                row[(x + 1) % q] += eps;
                row
            })
            .collect();
        Channel::new(rows)
    }

    /// Binary symmetric channel with crossover probability `p`.
    pub fn bsc(p: &Rational) -> Result<Self> {
        if p.is_negative() || *p > Rational::one() {
            return Err(Error::InvalidParameter(format!("crossover {p} not in [0,1]")));
        }
        let q = Rational::one() - p;
        Channel::new(vec![vec![q.clone(), p.clone()], vec![p.clone(), q]])
    }

    pub fn input_size(&self) -> usize {
        self.inputs
    }

    pub fn output_size(&self) -> usize {
        self.outputs
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// `W(y|x)`.
    pub fn prob(&self, x: usize, y: usize) -> &Rational {
        &self.rows[x][y]
    }

    /// Floating-point copy of the matrix, indexed `[x][y]`.
    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(rational_to_f64).collect())
            .collect()
    }

    /// Whether every entry is strictly positive.
    pub fn has_full_support(&self) -> bool {
        self.rows.iter().flatten().all(|p| p.is_positive())
    }

    /// Smallest positive entry over the whole matrix.
    pub fn min_positive_entry(&self) -> Rational {
        self.rows
            .iter()
            .flatten()
            .filter(|p| p.is_positive())
            .min()
            .cloned()
            .expect("every row of a valid channel has a positive entry")
    }

    /// Relabels inputs and outputs: row `x` of the result is row
    /// `input_perm[x]` of `self`, column `y` is column `output_perm[y]`.
    pub fn permuted(&self, input_perm: &[usize], output_perm: &[usize]) -> Result<Self> {
        if !is_permutation(input_perm, self.inputs) || !is_permutation(output_perm, self.outputs) {
            return Err(Error::InvalidParameter("not a permutation".into()));
        }
        let rows = input_perm
            .iter()
            .map(|&x| output_perm.iter().map(|&y| self.rows[x][y].clone()).collect())
            .collect();
        Channel::new(rows)
    }

    pub fn support_matrix(&self) -> SupportMatrix {
        let bits = (0..self.outputs)
            .map(|y| (0..self.inputs).map(|x| self.rows[x][y].is_positive()).collect())
            .collect();
        SupportMatrix { bits }
    }

    /// Bhattacharyya coefficient between inputs `a` and `b`.
    pub fn bhattacharyya(&self, a: usize, b: usize) -> Result<Bhattacharyya> {
        for i in [a, b] {
            if i >= self.inputs {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: self.inputs,
                });
            }
        }
        let overlap = (0..self.outputs)
            .any(|y| self.rows[a][y].is_positive() && self.rows[b][y].is_positive());
        let value = if a == b {
            1.0
        } else if !overlap {
            0.0
        } else {
            (0..self.outputs)
                .map(|y| (rational_to_f64(&self.rows[a][y]) * rational_to_f64(&self.rows[b][y])).sqrt())
                .sum()
        };
        Ok(Bhattacharyya {
            is_zero: !overlap,
            value,
        })
    }

    /// Whether the output supports of `a` and `b` intersect (exact).
    pub fn confusable(&self, a: usize, b: usize) -> bool {
        (0..self.outputs).any(|y| self.rows[a][y].is_positive() && self.rows[b][y].is_positive())
    }

    pub fn to_document(&self) -> ChannelDocument {
        ChannelDocument {
            input: self.inputs,
            output: self.outputs,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|p| p.to_string()).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }

    /// Parses the channel JSON document. Schema problems (bad JSON, float
    /// entries, unparsable rationals) are [`Error::Parse`]; everything else
    /// is a validation error from [`Channel::new`].
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ChannelDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.into_channel()
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn is_permutation(perm: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    perm.len() == n
        && perm
            .iter()
            .all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
}

/// Exact zero bit plus floating value of `sum_y sqrt(W(y|a) W(y|b))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bhattacharyya {
    pub is_zero: bool,
    pub value: f64,
}

/// `A(W)`: a `|Y| x |X|` bit matrix with `A[y][x] = 1` iff `W(y|x) > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportMatrix {
    bits: Vec<Vec<bool>>,
}

impl SupportMatrix {
    pub fn from_bits(bits: Vec<Vec<bool>>) -> Self {
        SupportMatrix { bits }
    }

    pub fn rows(&self) -> usize {
        self.bits.len()
    }

    pub fn cols(&self) -> usize {
        self.bits.first().map_or(0, Vec::len)
    }

    pub fn get(&self, y: usize, x: usize) -> bool {
        self.bits[y][x]
    }

    pub fn bits(&self) -> &[Vec<bool>] {
        &self.bits
    }

    pub fn kronecker(&self, other: &SupportMatrix) -> SupportMatrix {
        let (r2, c2) = (other.rows(), other.cols());
        let bits = (0..self.rows() * r2)
            .map(|i| {
                (0..self.cols() * c2)
                    .map(|j| self.bits[i / r2][j / c2] && other.bits[i % r2][j % c2])
                    .collect()
            })
            .collect();
        SupportMatrix { bits }
    }

    /// Payoff matrix with entries 0 and 1.
    pub fn to_payoff(&self) -> Vec<Vec<Rational>> {
        self.bits
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&b| if b { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect()
    }
}

/// A probability vector in floating point.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution(Vec<f64>);

impl Distribution {
    pub const TOLERANCE: f64 = 1e-12;

    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if weights.iter().any(|&w| !(w >= 0.0)) {
            return Err(Error::InvalidParameter("negative or NaN weight".into()));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > Self::TOLERANCE {
            return Err(Error::InvalidParameter(format!("weights sum to {sum}")));
        }
        Ok(Distribution(weights))
    }

    pub fn uniform(n: usize) -> Self {
        Distribution(vec![1.0 / n as f64; n])
    }

    /// Normalizes nonnegative weights; used internally by the optimizers.
    pub(crate) fn normalized(mut weights: Vec<f64>) -> Self {
        let sum: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= sum);
        Distribution(weights)
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Channel product `W1 (x) W2` with row-major pair indexing, capped at
/// [`DEFAULT_SIZE_CAP`].
pub fn kronecker(w1: &Channel, w2: &Channel) -> Result<Channel> {
    kronecker_capped(w1, w2, DEFAULT_SIZE_CAP)
}

pub fn kronecker_capped(w1: &Channel, w2: &Channel, cap: usize) -> Result<Channel> {
    let inputs = checked_size(w1.inputs, w2.inputs, cap)?;
    let outputs = checked_size(w1.outputs, w2.outputs, cap)?;
    let mut rows = Vec::with_capacity(inputs);
    for r1 in &w1.rows {
        for r2 in &w2.rows {
            let mut row = Vec::with_capacity(outputs);
            for p in r1 {
                for q in r2 {
                    row.push(p * q);
                }
            }
            rows.push(row);
        }
    }
    Ok(Channel {
        inputs,
        outputs,
        rows,
    })
}

/// `W^n`, the n-fold Kronecker power.
pub fn extension(w: &Channel, n: usize) -> Result<Channel> {
    extension_capped(w, n, DEFAULT_SIZE_CAP)
}

pub fn extension_capped(w: &Channel, n: usize, cap: usize) -> Result<Channel> {
    if n == 0 {
        return Err(Error::InvalidParameter("extension needs n >= 1".into()));
    }
    let mut acc = w.clone();
    for _ in 1..n {
        acc = kronecker_capped(&acc, w, cap)?;
    }
    Ok(acc)
}

pub(crate) fn checked_size(a: usize, b: usize, cap: usize) -> Result<usize> {
    match a.checked_mul(b) {
        Some(size) if size <= cap => Ok(size),
        Some(size) => Err(Error::SizeOverflow { size, cap }),
        None => Err(Error::SizeOverflow {
            size: usize::MAX,
            cap,
        }),
    }
}

/// `max_x sum_y |W1(y|x) - W2(y|x)|`, exact.
pub fn channel_distance(w1: &Channel, w2: &Channel) -> Result<Rational> {
    if w1.inputs != w2.inputs || w1.outputs != w2.outputs {
        return Err(Error::AlphabetMismatch(
            w1.inputs, w1.outputs, w2.inputs, w2.outputs,
        ));
    }
    Ok(w1
        .rows
        .iter()
        .zip(&w2.rows)
        .map(|(a, b)| a.iter().zip(b).map(|(p, q)| (p - q).abs()).sum::<Rational>())
        .max()
        .expect("nonempty alphabet"))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"n"` or `"n/d"`; decimals and exponents are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    let int = |t: &str| -> Result<BigInt> {
        let t = t.trim();
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(int(n)?, d))
        }
    }
}

/// On-disk channel description:
/// `{"input": q, "output": m, "rows": [["3/4","1/4","0"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelDocument {
    pub input: usize,
    pub output: usize,
    pub rows: Vec<Vec<String>>,
}

impl ChannelDocument {
    pub fn into_channel(self) -> Result<Channel> {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != self.input {
            return Err(Error::InvalidParameter(format!(
                "declared {} inputs but found {} rows",
                self.input,
                rows.len()
            )));
        }
        let channel = Channel::new(rows)?;
        if channel.outputs != self.output {
            return Err(Error::InvalidParameter(format!(
                "declared {} outputs but rows have {}",
                self.output, channel.outputs
            )));
        }
        Ok(channel)
    }
}
