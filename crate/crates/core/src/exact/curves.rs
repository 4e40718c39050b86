use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Curve counts `N(r; k)` for `0 <= r <= r_max`, `0 <= k <= k_max`.
///
/// `N(r; 0) = N(0; k) = 1` and, for `r, k >= 1`,
/// `N(r; k) = 1/2 sum_{a=0}^{k} C(k, a) N(r-1; a) N(r-1; k-a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveCountTable {
    #[serde(serialize_with = "serialize_rows")]
    rows: Vec<Vec<BigUint>>,
}

fn serialize_rows<S: serde::Serializer>(rows: &[Vec<BigUint>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = rows
        .iter()
        .map(|row| row.iter().map(|v| v.to_string()).collect())
        .collect();
    strings.serialize(s)
}

impl CurveCountTable {
    pub fn new(r_max: u32, k_max: u32) -> Result<Self> {
        let k_len = k_max as usize + 1;
        let binom = binomial_rows(k_max);
        let mut rows = vec![vec![BigUint::one(); k_len]];
        for _ in 1..=r_max {
            let prev = rows.last().unwrap();
            let mut row = Vec::with_capacity(k_len);
            row.push(BigUint::one());
            for k in 1..k_len {
                let total: BigUint = (0..=k)
                    .map(|a| &binom[k][a] * &prev[a] * &prev[k - a])
                    .sum();
                let (half, rem) = total.div_rem(&BigUint::from(2u32));
                if !rem.is_zero() {
                    return Err(Error::NonIntegral("curve count recurrence"));
                }
                row.push(half);
            }
            rows.push(row);
        }
        Ok(Self { rows })
    }

    pub fn r_max(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    pub fn k_max(&self) -> u32 {
        self.rows[0].len() as u32 - 1
    }

    pub fn get(&self, r: u32, k: u32) -> &BigUint {
        &self.rows[r as usize][k as usize]
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }
}

/// `N(r; k)`.
pub fn curve_count(r: u32, k: u32) -> Result<BigUint> {
    Ok(CurveCountTable::new(r, k)?.get(r, k).clone())
}

/// The crude bound `k! (r+1)^(k-1)` on `N(r; k)`.
pub fn curve_count_bound(r: u32, k: u32) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    let fact: BigUint = (1..=k as u64).map(BigUint::from).product();
    fact * BigUint::from(r as u64 + 1).pow(k - 1)
}

pub(crate) fn binomial_rows(n: u32) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for i in 1..=n as usize {
        let prev = &rows[i - 1];
        let mut row = vec![BigUint::one(); i + 1];
        for j in 1..i {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}
