use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const PARTITION_GUARD: u32 = 60;

/// Non-increasing positive parts; the empty partition has size 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    /// Sorts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// A single part `(m)`.
    pub fn single(m: u32) -> Partition {
        Partition::new(vec![m])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Exactly one nonzero part.
    pub fn is_single_part(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let Some(&top) = self.parts.first() else { return Partition::empty() };
        Partition {
            parts: (1..=top).map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32).collect(),
        }
    }

    /// `m_i`, the number of parts equal to `i`, for `i = 1..=largest`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut m = vec![0; self.largest() as usize];
        for &p in &self.parts {
            m[p as usize - 1] += 1;
        }
        m
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

/// All partitions of `n` in lexicographic order of their part lists.
pub fn partitions_of(n: u32) -> Result<Vec<Partition>> {
    if n > PARTITION_GUARD {
        return Err(Error::GuardExceeded {
            what: "partition enumeration",
            size: n as u128,
            guard: PARTITION_GUARD as u128,
        });
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    out.sort();
    Ok(out)
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}
