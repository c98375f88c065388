//! Necessary conditions on the parameters of 0-ULSE coloured BIBDs, and the
//! enumeration of admissible parameter sets.
//!
//! The conditions tie the five quantities v, k, λ, ℓ together:
//! a 0-ULSE ℓ-colouring forces `v = ℓ(ℓ−2)k/((ℓ−1)²−k)`, equal colour
//! classes of size v/ℓ, `(ℓ−1) | k`, `(ℓ−1) | r`, the block-size window
//! `2(ℓ−1) ≤ k ≤ (ℓ−1)(ℓ−2)` for nontrivial colourings, the index bound
//! `λ ≥ k((ℓ−1)²−k)/(ℓ−1)²`, and `k(v−1)(v−k)` being a perfect square.
//! All checks run on exact integers and rationals.

use crate::error::{Error, Result};
use crate::rational::{exact_sqrt, Rational};

/// A (v, k, λ, ℓ) parameter quadruple with derived quantities computed on
/// demand, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParameterSet {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub ell: u64,
}

impl ParameterSet {
    pub fn new(v: u64, k: u64, lambda: u64, ell: u64) -> Self {
        ParameterSet { v, k, lambda, ell }
    }

    /// Replication number λ(v−1)/(k−1), exact.
    pub fn r(&self) -> Rational {
        crate::design::replication_number(self.v, self.k, self.lambda)
    }

    /// Block count λv(v−1)/(k(k−1)), exact.
    pub fn b(&self) -> Rational {
        crate::design::block_count(self.v, self.k, self.lambda)
    }

    /// Colour class size v/ℓ, when integral.
    pub fn class_size(&self) -> Option<u64> {
        (self.v % self.ell == 0).then(|| self.v / self.ell)
    }
}

/// The necessary conditions checked by [`check_admissible`], one variant per
/// condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// ℓ ≥ 3: no 0-LSE 2-colouring exists.
    EllAtLeastThree,
    /// Either ℓ ≤ k (nontrivial range) or ℓ = v (trivial colouring).
    Nontriviality,
    /// (ℓ−1) divides k.
    EllMinusOneDividesK,
    /// v = ℓ(ℓ−2)k / ((ℓ−1)² − k).
    VFormula,
    /// 2(ℓ−1) ≤ k ≤ (ℓ−1)(ℓ−2).
    KBounds,
    /// (3+√(4k+1))/2 ≤ ℓ ≤ k/2 + 1.
    EllBounds,
    /// r integral and (ℓ−1) | r.
    ReplicationDivisibility,
    /// b integral.
    BlockCountIntegral,
    /// ℓ divides v.
    EllDividesV,
    /// λ ≥ k((ℓ−1)² − k)/(ℓ−1)².
    LambdaMinimum,
    /// k(v−1)(v−k) is a perfect square.
    PerfectSquare,
}

impl Condition {
    pub fn name(&self) -> &'static str {
        match self {
            Condition::EllAtLeastThree => "ell >= 3",
            Condition::Nontriviality => "ell <= k or ell = v",
            Condition::EllMinusOneDividesK => "(ell-1) | k",
            Condition::VFormula => "v = ell(ell-2)k/((ell-1)^2-k)",
            Condition::KBounds => "2(ell-1) <= k <= (ell-1)(ell-2)",
            Condition::EllBounds => "(3+sqrt(4k+1))/2 <= ell <= k/2+1",
            Condition::ReplicationDivisibility => "r integral and (ell-1) | r",
            Condition::BlockCountIntegral => "b integral",
            Condition::EllDividesV => "ell | v",
            Condition::LambdaMinimum => "lambda >= lambda_min",
            Condition::PerfectSquare => "k(v-1)(v-k) is a perfect square",
        }
    }
}

/// One evaluated condition: whether it held, with the observed versus
/// required values spelled out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityFinding {
    pub condition: Condition,
    pub satisfied: bool,
    pub detail: String,
}

impl AdmissibilityFinding {
    fn new(condition: Condition, satisfied: bool, detail: String) -> Self {
        AdmissibilityFinding {
            condition,
            satisfied,
            detail,
        }
    }
}

/// Solves the v-formula for v: `ℓ(ℓ−2)k / ((ℓ−1)²−k)`, exact.
///
/// The caller checks positivity and integrality; `(ℓ−1)² = k` has no
/// solution and is an error.
pub fn v_from_k_ell(k: u64, ell: u64) -> Result<Rational> {
    let num = i128::from(ell) * (i128::from(ell) - 2) * i128::from(k);
    let den = (i128::from(ell) - 1).pow(2) - i128::from(k);
    if den == 0 {
        return Err(Error::parameter(format!(
            "(ℓ−1)² = k = {k}: zero denominator"
        )));
    }
    Ok(Rational::new(num, den))
}

/// Inverts the v-formula: the unique ℓ with
/// `ℓ = 1 + √(k(v−1)(v−k))/(v−k)`, when that expression is an integer ≥ 3.
/// The negative root is never a valid colour count.
pub fn ell_from_v_k(v: u64, k: u64) -> Option<u64> {
    if k < 2 || v <= k {
        return None;
    }
    let radicand = i128::from(k) * (i128::from(v) - 1) * (i128::from(v) - i128::from(k));
    let root = exact_sqrt(radicand)?;
    let vk = i128::from(v) - i128::from(k);
    if root % vk != 0 {
        return None;
    }
    let ell = 1 + root / vk;
    (ell >= 3).then_some(ell as u64)
}

/// The smallest admissible index: `λ_min = k((ℓ−1)²−k)/(ℓ−1)²`, always a
/// positive integer when `(ℓ−1) | k` and k is within the block-size window.
pub fn lambda_min(k: u64, ell: u64) -> Result<u64> {
    if ell < 3 {
        return Err(Error::parameter("lambda_min needs ℓ ≥ 3"));
    }
    let lm1 = ell - 1;
    if k % lm1 != 0 {
        return Err(Error::parameter(format!(
            "(ℓ−1) = {lm1} does not divide k = {k}"
        )));
    }
    if k < 2 * lm1 || k > lm1 * (ell - 2) {
        return Err(Error::parameter(format!(
            "k = {k} outside [{}, {}]",
            2 * lm1,
            lm1 * (ell - 2)
        )));
    }
    let num = i128::from(k) * (i128::from(lm1).pow(2) - i128::from(k));
    let den = i128::from(lm1).pow(2);
    debug_assert!(num % den == 0 && num > 0);
    Ok((num / den) as u64)
}

/// λ_min as an exact rational, defined for any ℓ ≥ 2; used for the bound
/// check without the divisibility preconditions.
fn lambda_min_rational(k: u64, ell: u64) -> Rational {
    let lm1 = i128::from(ell) - 1;
    Rational::new(i128::from(k) * (lm1 * lm1 - i128::from(k)), lm1 * lm1)
}

/// Evaluates every necessary condition for a 0-ULSE ℓ-coloured
/// (v,k,λ)-BIBD, returning one finding per condition.
pub fn check_admissible(v: u64, k: u64, lambda: u64, ell: u64) -> Vec<AdmissibilityFinding> {
    let mut findings = Vec::with_capacity(11);
    let vi = i128::from(v);
    let ki = i128::from(k);
    let elli = i128::from(ell);

    findings.push(AdmissibilityFinding::new(
        Condition::EllAtLeastThree,
        ell >= 3,
        format!("ℓ = {ell}"),
    ));

    findings.push(AdmissibilityFinding::new(
        Condition::Nontriviality,
        ell <= k || ell == v,
        format!("ℓ = {ell}, k = {k}, v = {v}"),
    ));

    findings.push(AdmissibilityFinding::new(
        Condition::EllMinusOneDividesK,
        ell >= 2 && k % (ell - 1) == 0,
        format!("k = {k}, ℓ−1 = {}", ell.saturating_sub(1)),
    ));

    let v_formula = match v_from_k_ell(k, ell) {
        Ok(rhs) => rhs == Rational::from_integer(vi),
        Err(_) => false,
    };
    findings.push(AdmissibilityFinding::new(
        Condition::VFormula,
        v_formula,
        format!(
            "v = {v}, ℓ(ℓ−2)k/((ℓ−1)²−k) = {}",
            v_from_k_ell(k, ell).map_or_else(|_| "undefined".into(), |r| r.to_string())
        ),
    ));

    let k_lo = 2 * (elli - 1);
    let k_hi = (elli - 1) * (elli - 2);
    findings.push(AdmissibilityFinding::new(
        Condition::KBounds,
        ki >= k_lo && ki <= k_hi,
        format!("k = {k}, window [{k_lo}, {k_hi}]"),
    ));

    // ℓ ≥ (3+√(4k+1))/2 ⇔ (2ℓ−3)² ≥ 4k+1 for ℓ ≥ 2; ℓ ≤ k/2+1 ⇔ 2ℓ−2 ≤ k.
    let ell_lower = ell >= 2 && (2 * elli - 3).pow(2) > 4 * ki;
    let ell_upper = 2 * elli - 2 <= ki;
    findings.push(AdmissibilityFinding::new(
        Condition::EllBounds,
        ell_lower && ell_upper,
        format!("ℓ = {ell}, k = {k}"),
    ));

    let (r_ok, r_detail) = if k >= 2 && v > k {
        let r = crate::design::replication_number(v, k, lambda);
        let ok = r.is_integer() && ell >= 2 && r.to_integer() % (elli - 1) == 0;
        (ok, format!("r = {r}, ℓ−1 = {}", ell.saturating_sub(1)))
    } else {
        (false, "r undefined".into())
    };
    findings.push(AdmissibilityFinding::new(
        Condition::ReplicationDivisibility,
        r_ok,
        r_detail,
    ));

    let (b_ok, b_detail) = if k >= 2 && v > k {
        let b = crate::design::block_count(v, k, lambda);
        (b.is_integer(), format!("b = {b}"))
    } else {
        (false, "b undefined".into())
    };
    findings.push(AdmissibilityFinding::new(
        Condition::BlockCountIntegral,
        b_ok,
        b_detail,
    ));

    findings.push(AdmissibilityFinding::new(
        Condition::EllDividesV,
        ell >= 1 && v % ell == 0,
        format!("v = {v}, ℓ = {ell}"),
    ));

    let lam_min = lambda_min_rational(k, ell.max(2));
    findings.push(AdmissibilityFinding::new(
        Condition::LambdaMinimum,
        ell >= 2 && Rational::from_integer(i128::from(lambda)) >= lam_min,
        format!("λ = {lambda}, λ_min = {lam_min}"),
    ));

    let square = ki * (vi - 1) * (vi - ki);
    findings.push(AdmissibilityFinding::new(
        Condition::PerfectSquare,
        v > k && exact_sqrt(square).is_some(),
        format!("k(v−1)(v−k) = {square}"),
    ));

    findings
}

/// True iff every finding in `findings` is satisfied.
pub fn all_satisfied(findings: &[AdmissibilityFinding]) -> bool {
    findings.iter().all(|f| f.satisfied)
}

/// Enumerates all admissible symmetric parameter rows for ℓ in the given
/// range: for each ℓ, k runs over multiples of (ℓ−1) in
/// [2(ℓ−1), (ℓ−1)(ℓ−2)]; a row is kept when v is a positive integer
/// divisible by ℓ. Emitted with λ = λ_min, sorted by (ℓ, k).
pub fn enumerate_admissible(ell_min: u64, ell_max: u64) -> Result<Vec<ParameterSet>> {
    if ell_min < 4 || ell_min > ell_max {
        return Err(Error::parameter("need 4 ≤ ell_min ≤ ell_max"));
    }
    let mut rows = Vec::new();
    for ell in ell_min..=ell_max {
        let lm1 = ell - 1;
        let mut k = 2 * lm1;
        while k <= lm1 * (ell - 2) {
            let v = v_from_k_ell(k, ell)?;
            if v.is_integer() && v > Rational::from_integer(0) {
                let v = v.to_integer() as u64;
                if v % ell == 0 {
                    rows.push(ParameterSet::new(v, k, lambda_min(k, ell)?, ell));
                }
            }
            k += lm1;
        }
    }
    Ok(rows)
}
