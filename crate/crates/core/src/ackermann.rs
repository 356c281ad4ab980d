//! Slowly growing depth functions: the star operator, the hierarchy
//! `lambda_d`, and the two-parameter inverse Ackermann function `alpha(m, n)`.
//!
//! ```text
//! lambda_1(n) = floor(sqrt(n))
//! lambda_2(n) = ceil(log2(n))
//! lambda_d(n) = lambda_{d-2}^*(n)
//! ```

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AckermannError {
    #[error("function did not decrease: f({at}) = {value}")]
    NonDecreasingFunction { at: u64, value: u64 },
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
}

/// `f^*(n) = min { i : f^(i)(n) <= 1 }`, checking that every iterate above 1
/// strictly decreases.
pub fn f_star<F: Fn(u64) -> u64>(f: F, n: u64) -> Result<u64, AckermannError> {
    let mut x = n;
    let mut steps = 0;
    while x > 1 {
        let next = f(x);
        if next >= x {
            return Err(AckermannError::NonDecreasingFunction { at: x, value: next });
        }
        x = next;
        steps += 1;
    }
    Ok(steps)
}

pub fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        64 - u64::from((n - 1).leading_zeros())
    }
}

/// Iterated binary logarithm over the reals: the number of applications of
/// `log2` needed to bring `x` to at most 1.
pub fn log_star(x: f64) -> u32 {
    let mut x = x;
    let mut i = 0;
    while x > 1.0 {
        x = x.log2();
        i += 1;
    }
    i
}

fn memo() -> &'static RwLock<HashMap<(u32, u64), u64>> {
    static MEMO: OnceLock<RwLock<HashMap<(u32, u64), u64>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `lambda_d(n)`, memoized for `d >= 3`.
///
/// # Panics
///
/// Panics if `d == 0` or `n == 0`.
pub fn lambda(d: u32, n: u64) -> u64 {
    assert!(d >= 1 && n >= 1, "lambda needs d >= 1 and n >= 1 (got d={d}, n={n})");
    match d {
        1 => n.isqrt(),
        2 => ceil_log2(n),
        _ => {
            if n <= 1 {
                return 0;
            }
            if let Some(&v) = memo().read().expect("memo lock").get(&(d, n)) {
                return v;
            }
            // lambda_{d-2}^*(n) = 1 + lambda_{d-2}^*(lambda_{d-2}(n)) for n > 1
            let v = 1 + lambda_star_step(d, lambda(d - 2, n));
            memo().write().expect("memo lock").insert((d, n), v);
            v
        }
    }
}

fn lambda_star_step(d: u32, n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        lambda(d, n)
    }
}

/// Two-parameter inverse Ackermann function, defined for `m >= n >= 1`.
pub fn alpha(m: u64, n: u64) -> Result<u32, AckermannError> {
    if n == 0 || m < n {
        return Err(AckermannError::InvalidArguments(format!("alpha needs m >= n >= 1 (got m={m}, n={n})")));
    }
    let wide = m as u128 >= 128 * n as u128;
    let mut d = 1;
    loop {
        let l = lambda(d, n);
        let ok = if wide { m as u128 >= n as u128 * l as u128 } else { l <= 4 };
        if ok {
            return Ok(d);
        }
        d += 1;
    }
}

/// Dense table of `lambda_d(n)` for `1 <= d <= max_d`, `1 <= n <= max_n`,
/// filled bottom-up. Intended for sweeps where the memoized
/// [`lambda`] would be dominated by hashing.
#[derive(Debug, Clone)]
pub struct LambdaTable {
    max_n: usize,
    rows: Vec<Vec<u32>>,
}

impl LambdaTable {
    pub fn new(max_d: u32, max_n: usize) -> Self {
        let mut rows = Vec::with_capacity(max_d as usize);
        for_each_lambda_row(max_d, max_n, |_, row| rows.push(row.to_vec()));
        LambdaTable { max_n, rows }
    }

    pub fn max_d(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn get(&self, d: u32, n: usize) -> u32 {
        self.rows[d as usize - 1][n]
    }
}

/// Calls `visit(d, row)` for `d = 1..=max_d` in order, where `row[n]` is
/// `lambda_d(n)` for `1 <= n <= max_n` (`row[0]` is unused). Only three
/// rows are live at a time.
pub fn for_each_lambda_row(max_d: u32, max_n: usize, mut visit: impl FnMut(u32, &[u32])) {
    assert!(max_d >= 1 && max_n >= 1);
    // prev2 = row d-2, prev1 = row d-1
    let mut prev2: Vec<u32> = Vec::new();
    let mut prev1: Vec<u32> = Vec::new();
    for d in 1..=max_d {
        let mut row = vec![0u32; max_n + 1];
        for n in 1..=max_n {
            row[n] = match d {
                1 => (n as u64).isqrt() as u32,
                2 => ceil_log2(n as u64) as u32,
                _ if n <= 1 => 0,
                _ => 1 + row[prev2[n] as usize],
            };
        }
        visit(d, &row);
        prev2 = std::mem::replace(&mut prev1, row);
    }
}
