//! Hadamard matrices and the designs they carry.
//!
//! Orders are reached by Sylvester doubling, the Paley type I construction
//! for q+1 with q ≡ 3 (mod 4) a prime power, and Kronecker products of
//! reachable orders. An order outside that reach (668, say) is reported as
//! construction-unavailable, never as nonexistent — the existence question
//! is open.
//!
//! A normalized H(ℓ) yields both ingredients of the general construction:
//! a TD_{ℓ/4}(ℓ−1, 2) read off the columns, and an (ℓ, ℓ/2, ℓ/2−1)-RBIBD
//! read off the rows.

use crate::design::{
    verify_bibd, verify_resolution, verify_td, Design, ResolvableStructure, TransversalDesign,
};
use crate::error::{Error, Result};
use crate::ingredients::field::{factor_prime_power, field_make, squares};

/// A square ±1 matrix with pairwise orthogonal rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    order: usize,
    entries: Vec<Vec<i8>>,
    normalized: bool,
}

impl HadamardMatrix {
    /// Wraps a candidate matrix, verifying H·Hᵀ = order·I exactly.
    pub fn new(entries: Vec<Vec<i8>>) -> Result<Self> {
        let order = entries.len();
        if order == 0 || entries.iter().any(|row| row.len() != order) {
            return Err(Error::structure("matrix must be square and nonempty"));
        }
        if entries.iter().flatten().any(|&e| e != 1 && e != -1) {
            return Err(Error::structure("entries must be ±1"));
        }
        for i in 0..order {
            for j in i..order {
                let dot: i64 = (0..order)
                    .map(|c| i64::from(entries[i][c]) * i64::from(entries[j][c]))
                    .sum();
                let expected = if i == j { order as i64 } else { 0 };
                if dot != expected {
                    return Err(Error::structure(format!(
                        "rows {i} and {j} have inner product {dot}, expected {expected}"
                    )));
                }
            }
        }
        let normalized =
            entries[0].iter().all(|&e| e == 1) && entries.iter().all(|row| row[0] == 1);
        Ok(HadamardMatrix {
            order,
            entries,
            normalized,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[Vec<i8>] {
        &self.entries
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Negates columns then rows so the first row and column are all +1.
    pub fn normalize(&self) -> HadamardMatrix {
        let mut m = self.entries.clone();
        let order = self.order;
        for j in 0..order {
            if m[0][j] == -1 {
                for row in m.iter_mut() {
                    row[j] = -row[j];
                }
            }
        }
        for row in m.iter_mut() {
            if row[0] == -1 {
                for e in row.iter_mut() {
                    *e = -*e;
                }
            }
        }
        HadamardMatrix {
            order,
            entries: m,
            normalized: true,
        }
    }
}

/// Builds a normalized Hadamard matrix of the given order, or reports the
/// order construction-unavailable.
pub fn hadamard(order: usize) -> Result<HadamardMatrix> {
    let entries = build(order).ok_or(Error::ConstructionUnavailable { order })?;
    let m = HadamardMatrix::new(entries)?;
    Ok(if m.is_normalized() { m } else { m.normalize() })
}

fn build(order: usize) -> Option<Vec<Vec<i8>>> {
    match order {
        0 => None,
        1 => Some(vec![vec![1]]),
        2 => Some(vec![vec![1, 1], vec![1, -1]]),
        n if n % 4 != 0 => None,
        n => {
            if n % 2 == 0 {
                if let Some(half) = build(n / 2) {
                    return Some(sylvester_double(&half));
                }
            }
            if let Some(paley) = paley_type_one(n) {
                return Some(paley);
            }
            // Kronecker product of two smaller reachable orders ≥ 4.
            let mut a = 4;
            while a * a <= n {
                if n % a == 0 {
                    if let (Some(left), Some(right)) = (build(a), build(n / a)) {
                        return Some(kronecker(&left, &right));
                    }
                }
                a += 4;
            }
            None
        }
    }
}

fn sylvester_double(h: &[Vec<i8>]) -> Vec<Vec<i8>> {
    let n = h.len();
    let mut out = vec![vec![0i8; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = h[i][j];
            out[i][j + n] = h[i][j];
            out[i + n][j] = h[i][j];
            out[i + n][j + n] = -h[i][j];
        }
    }
    out
}

fn kronecker(a: &[Vec<i8>], b: &[Vec<i8>]) -> Vec<Vec<i8>> {
    let (na, nb) = (a.len(), b.len());
    let mut out = vec![vec![0i8; na * nb]; na * nb];
    for i in 0..na {
        for j in 0..na {
            for x in 0..nb {
                for y in 0..nb {
                    out[i * nb + x][j * nb + y] = a[i][j] * b[x][y];
                }
            }
        }
    }
    out
}

/// Quadratic character of F_q: +1 on nonzero squares, −1 on nonsquares,
/// 0 at zero.
fn quadratic_character(square_set: &[usize], a: usize) -> i8 {
    if a == 0 {
        0
    } else if square_set.binary_search(&a).is_ok() {
        1
    } else {
        -1
    }
}

/// Paley type I: order q+1 for a prime power q ≡ 3 (mod 4); H = I + S with
/// S the bordered skew Jacobsthal matrix.
fn paley_type_one(order: usize) -> Option<Vec<Vec<i8>>> {
    let q = (order - 1) as u64;
    let (p, n) = factor_prime_power(q)?;
    if p == 2 || q % 4 != 3 {
        return None;
    }
    let field = field_make(p, n).ok()?;
    let square_set = squares(&field).ok()?;

    let mut h = vec![vec![0i8; order]; order];
    h[0][0] = 1;
    for j in 1..order {
        h[0][j] = 1;
        h[j][0] = -1;
    }
    for i in 1..order {
        for j in 1..order {
            if i == j {
                h[i][j] = 1; // χ(0) = 0, plus the identity
            } else {
                h[i][j] = quadratic_character(&square_set, field.sub(i - 1, j - 1));
            }
        }
    }
    Some(h)
}

/// Reads a TD_{ℓ/4}(ℓ−1, 2) off a normalized H(ℓ): one group per row
/// 1..ℓ−1 with the two points (row, +) and (row, −) encoded `2g` and
/// `2g+1`; one block per column collecting each row's sign in that column.
pub fn td_from_hadamard(h: &HadamardMatrix) -> Result<TransversalDesign> {
    if !h.is_normalized() {
        return Err(Error::parameter("Hadamard matrix must be normalized"));
    }
    let ell = h.order();
    if ell % 4 != 0 {
        return Err(Error::parameter(format!(
            "order {ell} is not divisible by 4"
        )));
    }
    let k_groups = ell - 1;
    let groups: Vec<Vec<usize>> = (0..k_groups).map(|g| vec![2 * g, 2 * g + 1]).collect();
    let blocks: Vec<Vec<usize>> = (0..ell)
        .map(|j| {
            (0..k_groups)
                .map(|g| 2 * g + usize::from(h.entries()[g + 1][j] == -1))
                .collect()
        })
        .collect();
    let td = TransversalDesign::new(k_groups, 2, ell as u64 / 4, groups, blocks)?;
    let report = verify_td(&td);
    if !report.ok() {
        return Err(Error::ConstructionFailed(format!(
            "column TD of H({ell}) fails verification: {}",
            report.violations[0]
        )));
    }
    Ok(td)
}

/// Reads an (ℓ, ℓ/2, ℓ/2−1)-RBIBD off a normalized H(ℓ): points are the
/// columns; each row 1..ℓ−1 contributes the resolution class
/// {+1 columns}, {−1 columns}.
pub fn rbibd_from_hadamard(h: &HadamardMatrix) -> Result<ResolvableStructure> {
    if !h.is_normalized() {
        return Err(Error::parameter("Hadamard matrix must be normalized"));
    }
    let ell = h.order();
    if ell % 4 != 0 {
        return Err(Error::parameter(format!(
            "order {ell} is not divisible by 4"
        )));
    }
    let mut tagged: Vec<(Vec<usize>, usize)> = Vec::with_capacity(2 * (ell - 1));
    for i in 1..ell {
        let plus: Vec<usize> = (0..ell).filter(|&j| h.entries()[i][j] == 1).collect();
        let minus: Vec<usize> = (0..ell).filter(|&j| h.entries()[i][j] == -1).collect();
        tagged.push((plus, i - 1));
        tagged.push((minus, i - 1));
    }
    tagged.sort();
    let blocks: Vec<Vec<usize>> = tagged.iter().map(|(b, _)| b.clone()).collect();
    let design = Design::new(ell, blocks, Some(ell as u64 / 2 - 1))?;
    let mut classes = vec![Vec::new(); ell - 1];
    for (i, (_, class)) in tagged.iter().enumerate() {
        classes[*class].push(i);
    }
    let rs = ResolvableStructure::new(design, classes)?;
    let report = verify_bibd(rs.design(), Some(ell as u64 / 2 - 1));
    if !report.ok() {
        return Err(Error::ConstructionFailed(format!(
            "row RBIBD of H({ell}) fails verification: {}",
            report.violations[0]
        )));
    }
    let report = verify_resolution(&rs);
    if !report.ok() {
        return Err(Error::ConstructionFailed(format!(
            "row RBIBD of H({ell}) classes fail verification: {}",
            report.violations[0]
        )));
    }
    Ok(rs)
}
