use serde::{Deserialize, Serialize};

use crate::algebra::field::is_prime;
use crate::error::{Error, Result};
use crate::rational::{int, ratio, serde_fraction_opt, Rational};
use crate::series::{pcb_proportions, SeriesParams};

use super::{CensusReport, Method};

/// Closed-form rows `c = 1, 2, 3` of the small-`c` table, as polynomials in
/// `x = q^{-b}`, `q` and `b`.
pub fn table1_fixture(q: u64, b: u32, c: u32) -> Option<Rational> {
    let x = Rational::new(1.into(), num_bigint::BigInt::from(q).pow(b));
    let (q, b) = (int(q as i64), int(b as i64));
    let h = |n: i64, d: i64| ratio(n, d);
    let horner = |cs: Vec<Rational>| cs.iter().rev().fold(int(0), |acc, c| acc * &x + c);
    let q2 = &q * &q;
    let q3 = &q2 * &q;
    let b2 = &b * &b;
    match c {
        1 => Some(int(1) - &q * &x),
        2 => Some(horner(vec![
            h(1, 2),
            h(3, 2) - &b / int(2),
            -&b / int(2) - &q + &b * &q / int(2) - &q2 / int(2),
            int(-1) + &b * &q / int(2) - &q2 / int(2),
            q.clone(),
        ])),
        3 => Some(horner(vec![
            h(2, 3),
            h(1, 3) - &q / int(2),
            h(4, 3) - &b / int(2) - &b2 / int(6) + &q - &b * &q / int(2),
            h(-1, 3) - &b2 / int(3) - &b * &q / int(2) + &b2 * &q / int(6) - &q2 + &b * &q2 / int(2) - &q3 / int(6),
            int(-1) - &b2 / int(3) + &q / int(2) - &b * &q + &b2 * &q / int(3) - &q2 + &b * &q2 - &q3 / int(3),
            int(-1) + &b / int(2) - &b2 / int(6) - &b * &q / int(2) + &b2 * &q / int(3) + &b * &q2 - &q3 / int(3),
            -&b * &q / int(2) + &b2 * &q / int(6) + &q2 + &b * &q2 / int(2) - &q3 / int(6),
            int(1) + &q2,
            -q.clone(),
        ])),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub report: CensusReport,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_fraction_opt")]
    pub table1: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table1_match: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Series proportions for `c = 1..=c_max`, compared with the closed-form
/// rows for `c ≤ 3`.
pub fn table_generate(q: u64, b: u32, c_max: u32) -> Result<Vec<TableRow>> {
    if c_max == 0 {
        return Err(Error::InvalidArgument("cmax must be at least 1".into()));
    }
    let params = SeriesParams::new(q, b)?;
    let props = pcb_proportions(&params, c_max as usize);
    Ok((1..=c_max)
        .map(|c| {
            let report = CensusReport::new(q, b, c, Method::Series, props[c as usize].clone());
            let table1 = table1_fixture(q, b, c);
            let table1_match = table1.as_ref().map(|t| *t == report.proportion);
            let note = match table1_match {
                Some(false) if !is_prime(b as u64) => {
                    Some(format!("closed-form rows assume prime b; b = {b} is composite"))
                }
                Some(false) => Some("closed-form row disagrees with the series value".to_string()),
                _ => None,
            };
            TableRow { report, table1, table1_match, note }
        })
        .collect())
}
