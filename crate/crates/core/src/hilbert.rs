//! Euler-form tables `h(i, j) = d_{−i}·r_{−j} − d_{−j}·r_{−i}`.
//!
//! For `j > i` this is `dim Hom(E_{−j}, E_{−i})`, the `(i, j)` component of the
//! Z-algebra. On the diagonal the form vanishes while the Hom space is `k`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::{Seed, Term};

fn terms_by_neg_index(s: &Seed, lo: i64, hi: i64) -> Result<Vec<Term>> {
    // Indices −hi..=−lo, returned so that position k holds index −(lo + k).
    let mut t = s.rank_deg_window(-hi, -lo)?;
    t.reverse();
    Ok(t)
}

pub fn euler_form(s: &Seed, i: i64, j: i64) -> Result<BigInt> {
    let (lo, hi) = (i.min(j), i.max(j));
    let t = terms_by_neg_index(s, lo, hi)?;
    let (a, b) = (&t[(i - lo) as usize], &t[(j - lo) as usize]);
    Ok(&a.degree * &b.rank - &b.degree * &a.rank)
}

/// `rows[i][k] = h(i, i + k)` for `0 ≤ i ≤ i + k ≤ size`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertTable {
    pub seed: Seed,
    pub size: usize,
    #[serde(with = "crate::json::rows")]
    pub rows: Vec<Vec<BigInt>>,
}

impl HilbertTable {
    /// `h(i, j)` for any `i, j ≤ size`, using antisymmetry below the diagonal.
    pub fn get(&self, i: usize, j: usize) -> Option<BigInt> {
        if i.max(j) > self.size {
            return None;
        }
        if i <= j {
            Some(self.rows[i][j - i].clone())
        } else {
            Some(-&self.rows[j][i - j])
        }
    }

    /// Square CSV with `i` down and `j` across; the lower triangle is left blank.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i\\j");
        for j in 0..=self.size {
            out.push_str(&format!(",{j}"));
        }
        out.push('\n');
        for i in 0..=self.size {
            out.push_str(&i.to_string());
            for j in 0..=self.size {
                out.push(',');
                if j >= i {
                    out.push_str(&self.rows[i][j - i].to_string());
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn hilbert_table(s: &Seed, size: usize) -> Result<HilbertTable> {
    s.require_extendable()?;
    if size == 0 {
        return Err(Error::Domain("table size must be positive".into()));
    }
    let t = terms_by_neg_index(s, 0, size as i64)?;
    let d = s.det();
    let mut rows = Vec::with_capacity(size + 1);
    for i in 0..=size {
        let row: Vec<BigInt> =
            (i..=size).map(|j| &t[i].degree * &t[j].rank - &t[j].degree * &t[i].rank).collect();
        let ok = row[0].is_zero() && row.get(1).is_none_or(|h| *h == d) && row[1..].iter().all(|h| h.is_positive());
        if !ok {
            return Err(Error::Invariant(format!("row {i} of the Euler-form table breaks h(i,i) = 0, h(i,i+1) = d, h > 0")));
        }
        rows.push(row);
    }
    Ok(HilbertTable { seed: s.clone(), size, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed(r_m1: i64, r_0: i64, d_m1: i64, d_0: i64) -> Seed {
        Seed::new(r_m1, r_0, d_m1, d_0).unwrap()
    }

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn euler_form_examples() {
        let s = seed(2, 1, -3, 1);
        assert_eq!(euler_form(&s, 0, 1).unwrap(), b(5));
        assert_eq!(euler_form(&s, 0, 0).unwrap(), b(0));
        assert_eq!(euler_form(&s, 0, 2).unwrap(), b(25));
        assert_eq!(euler_form(&s, 2, 0).unwrap(), b(-25));
        assert_eq!(euler_form(&s, -1, 0).unwrap(), b(5));
    }

    #[test]
    fn table_examples() {
        let t = hilbert_table(&seed(2, 1, -3, 1), 3).unwrap();
        assert_eq!(t.rows[0], vec![b(0), b(5), b(25), b(120)]);
        let t = hilbert_table(&seed(1, 1, 0, 2), 3).unwrap();
        assert_eq!(t.rows[0], vec![b(0), b(2), b(4), b(6)]);
        assert_eq!(t.get(3, 1), Some(b(-4)));
        assert_eq!(t.get(4, 1), None);
        assert!(hilbert_table(&seed(1, 3, 0, 1), 3).is_err());
    }

    #[test]
    fn csv_layout() {
        let t = hilbert_table(&seed(2, 1, -3, 1), 2).unwrap();
        assert_eq!(t.to_csv(), "i\\j,0,1,2\n0,0,5,25\n1,,0,5\n2,,,0\n");
    }
}
