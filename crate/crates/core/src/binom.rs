//! Binomial coefficients from a Pascal table with checked arithmetic.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Rows `0..=TABLE_ROWS` are tabulated; every entry fits in `u128`.
const TABLE_ROWS: usize = 128;

fn table() -> &'static Vec<Vec<u128>> {
    static TABLE: OnceLock<Vec<Vec<u128>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<u128>> = Vec::with_capacity(TABLE_ROWS + 1);
        rows.push(vec![1]);
        for a in 1..=TABLE_ROWS {
            let prev = &rows[a - 1];
            let mut row = vec![1u128; a + 1];
            for b in 1..a {
                row[b] = prev[b - 1]
                    .checked_add(prev[b])
                    .expect("Pascal rows up to 128 fit in u128");
            }
            rows.push(row);
        }
        rows
    })
}

/// C(a, b), zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> Result<u128> {
    if b > a {
        return Ok(0);
    }
    if (a as usize) <= TABLE_ROWS {
        return Ok(table()[a as usize][b as usize]);
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        // acc * (a - i) / (i + 1) stays integral at every step
        acc = acc
            .checked_mul((a - i) as u128)
            .ok_or(Error::Overflow { what: "binomial" })?
            / (i as u128 + 1);
    }
    Ok(acc)
}

/// C(a, b) over signed arguments: zero when `b < 0`, `a < 0` or `b > a`.
pub fn choose(a: i64, b: i64) -> Result<u128> {
    if a < 0 || b < 0 || b > a {
        Ok(0)
    } else {
        binomial(a as u64, b as u64)
    }
}
