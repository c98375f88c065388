//! Point colourings of designs and their local-equity verification.
//!
//! A colouring assigns one of `ℓ` colours to every point, using each colour
//! at least once. The verifiers here check the per-block profiles: in an
//! Υ-LSE colouring, block `i` has one colour represented exactly `n_i` times
//! and all remaining colours balanced within one of each other; a t-ULSE
//! colouring is the uniform constant-profile case, where the remaining
//! colours each appear exactly `(k−t)/(ℓ−1)` times. For `t = 0` the counting
//! quantities α and γ (blocks where a given colour appears `k/(ℓ−1)` times,
//! respectively not at all) have closed forms, computed in [`alpha_gamma`]
//! and cross-checkable against [`empirical_alpha_gamma`].

use crate::design::{verify_bibd, Design, VerificationReport, Violation};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A total assignment of colours `0..ell-1` to points, surjective by
/// definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colouring {
    assignment: Vec<usize>,
    ell: usize,
}

impl Colouring {
    pub fn new(assignment: Vec<usize>, ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::structure("a colouring needs at least one colour"));
        }
        let mut used = vec![false; ell];
        for (p, &c) in assignment.iter().enumerate() {
            if c >= ell {
                return Err(Error::structure(format!(
                    "point {p} has colour {c}, outside 0..{ell}"
                )));
            }
            used[c] = true;
        }
        if let Some(c) = used.iter().position(|&u| !u) {
            return Err(Error::structure(format!("colour {c} is never used")));
        }
        Ok(Colouring { assignment, ell })
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn colour_of(&self, point: usize) -> usize {
        self.assignment[point]
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

/// Histogram of colour class sizes, indexed by colour.
pub fn colour_class_sizes(col: &Colouring) -> Vec<usize> {
    let mut sizes = vec![0usize; col.ell()];
    for &c in col.assignment() {
        sizes[c] += 1;
    }
    sizes
}

/// Per-block special-representation counts: the multiset Υ = {n_1, …, n_b}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LseProfile {
    per_block_n: Vec<usize>,
    uniform: bool,
}

impl LseProfile {
    /// Builds the profile for a design of block size `k` under `ell`
    /// colours; `uniform` is true iff `(ℓ−1) | (k−n_i)` for every block.
    pub fn new(per_block_n: Vec<usize>, k: usize, ell: usize) -> Result<Self> {
        if ell < 2 {
            return Err(Error::parameter("profile needs at least two colours"));
        }
        let uniform = per_block_n
            .iter()
            .all(|&n| n <= k && (k - n) % (ell - 1) == 0);
        Ok(LseProfile {
            per_block_n,
            uniform,
        })
    }

    /// The constant profile n_i ≡ t.
    pub fn constant(t: usize, b: usize, k: usize, ell: usize) -> Result<Self> {
        Self::new(vec![t; b], k, ell)
    }

    pub fn per_block_n(&self) -> &[usize] {
        &self.per_block_n
    }

    pub fn uniform(&self) -> bool {
        self.uniform
    }
}

fn block_colour_counts(block: &[usize], col: &Colouring) -> Vec<usize> {
    let mut counts = vec![0usize; col.ell()];
    for &p in block {
        counts[col.colour_of(p)] += 1;
    }
    counts
}

/// Checks an Υ-LSE colouring against its profile: block `i` must have some
/// colour represented exactly `n_i` times with all other colours balanced
/// within one. The chosen special colour per block is recorded in the
/// report; when several colours qualify, the lowest index wins.
pub fn verify_upsilon_lse(
    design: &Design,
    col: &Colouring,
    profile: &LseProfile,
) -> Result<VerificationReport> {
    check_colouring_length(design, col)?;
    if profile.per_block_n().len() != design.b() {
        return Err(Error::parameter(format!(
            "profile lists {} blocks, design has {}",
            profile.per_block_n().len(),
            design.b()
        )));
    }
    let mut report = VerificationReport::default();
    let mut specials = vec![usize::MAX; design.b()];
    for (i, block) in design.blocks().iter().enumerate() {
        let n_i = profile.per_block_n()[i];
        let counts = block_colour_counts(block, col);
        let special = (0..col.ell()).find(|&s| {
            counts[s] == n_i && {
                let others = counts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != s)
                    .map(|(_, &c)| c);
                let min = others.clone().min().unwrap_or(0);
                let max = others.max().unwrap_or(0);
                max - min <= 1
            }
        });
        match special {
            Some(s) => specials[i] = s,
            None => report.push(Violation::BlockProfile {
                block: i,
                detail: format!(
                    "no colour appears {n_i} times with the rest balanced (counts {counts:?})"
                ),
            }),
        }
    }
    if report.ok() {
        report.block_special = Some(specials);
    }
    Ok(report)
}

/// Checks a t-ULSE ℓ-colouring: in every block exactly one colour appears
/// `t` times and each other colour appears `(k−t)/(ℓ−1)` times.
///
/// When `t = (k−t)/(ℓ−1)` the profile is degenerate — every colour appears
/// the same number of times and no special colour is distinguished; such
/// blocks are accepted and the report is flagged.
///
/// A divisibility failure `(ℓ−1) ∤ (k−t)` is a parameter error, raised
/// before any block is scanned.
pub fn verify_t_ulse(
    design: &Design,
    col: &Colouring,
    t: usize,
    ell: usize,
) -> Result<VerificationReport> {
    if ell != col.ell() {
        return Err(Error::parameter(format!(
            "colouring has {} colours, {ell} requested",
            col.ell()
        )));
    }
    if ell < 2 {
        return Err(Error::parameter("t-ULSE verification needs ℓ ≥ 2"));
    }
    check_colouring_length(design, col)?;
    let k = design.k();
    if t > k || (k - t) % (ell - 1) != 0 {
        return Err(Error::parameter(format!(
            "(ℓ−1) = {} does not divide k−t = {k}−{t}",
            ell - 1
        )));
    }
    let q = (k - t) / (ell - 1);
    let degenerate = t == q;

    let mut report = VerificationReport {
        degenerate,
        ..VerificationReport::default()
    };
    let mut specials = vec![usize::MAX; design.b()];
    for (i, block) in design.blocks().iter().enumerate() {
        let counts = block_colour_counts(block, col);
        let ok = if degenerate {
            counts.iter().all(|&c| c == q)
        } else {
            counts.iter().filter(|&&c| c == t).count() == 1
                && counts.iter().filter(|&&c| c == q).count() == ell - 1
        };
        if ok {
            // Lowest colour index achieving t; in the degenerate case that is
            // colour 0 by convention.
            specials[i] = counts.iter().position(|&c| c == t).unwrap_or(0);
        } else {
            report.push(Violation::BlockProfile {
                block: i,
                detail: format!("counts {counts:?} do not fit one colour ×{t}, rest ×{q}"),
            });
        }
    }
    if report.ok() {
        report.block_special = Some(specials);
    }
    Ok(report)
}

fn check_colouring_length(design: &Design, col: &Colouring) -> Result<()> {
    if col.len() != design.v() {
        return Err(Error::parameter(format!(
            "colouring covers {} points, design has {}",
            col.len(),
            design.v()
        )));
    }
    Ok(())
}

/// Per-colour block counts in a 0-ULSE colouring: `alpha` blocks where the
/// colour appears `k/(ℓ−1)` times and `gamma` blocks where it is absent.
/// Always `alpha + gamma = b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlphaGamma {
    pub alpha: u64,
    pub gamma: u64,
}

/// Closed forms for α and γ:
/// `α = r²/λ − (ℓ−1)r²/(λk) + (ℓ−1)r/k` and `γ = b − α`.
///
/// Requires the parameters to be exact: a fractional result means the
/// parameters admit no 0-ULSE colouring and is reported as an error.
pub fn alpha_gamma(v: u64, k: u64, lambda: u64, ell: u64) -> Result<AlphaGamma> {
    if k < 2 || v <= k || lambda == 0 || ell < 2 {
        return Err(Error::parameter(
            "alpha_gamma needs 2 ≤ k < v, λ ≥ 1, ℓ ≥ 2",
        ));
    }
    let r = crate::design::replication_number(v, k, lambda);
    let b = crate::design::block_count(v, k, lambda);
    if !r.is_integer() || !b.is_integer() {
        return Err(Error::parameter("r and b must be integers"));
    }
    let lam = Rational::from_integer(lambda as i128);
    let kq = Rational::from_integer(k as i128);
    let lm1 = Rational::from_integer(ell as i128 - 1);
    let alpha = r * r / lam - lm1 * r * r / (lam * kq) + lm1 * r / kq;
    let gamma = b - alpha;
    if !alpha.is_integer() || alpha < Rational::from_integer(0) || gamma < Rational::from_integer(0)
    {
        return Err(Error::parameter(format!(
            "parameters ({v},{k},{lambda}) with ℓ={ell} give non-integral α = {alpha}"
        )));
    }
    Ok(AlphaGamma {
        alpha: alpha.to_integer() as u64,
        gamma: gamma.to_integer() as u64,
    })
}

/// Counts blocks where `colour` appears `k/(ℓ−1)` times versus not at all.
///
/// Meaningful after `verify_t_ulse(…, 0, ℓ)` has passed, in which case the
/// result is independent of the colour chosen.
pub fn empirical_alpha_gamma(
    design: &Design,
    col: &Colouring,
    colour: usize,
) -> Result<AlphaGamma> {
    if colour >= col.ell() {
        return Err(Error::parameter(format!("colour {colour} out of range")));
    }
    check_colouring_length(design, col)?;
    let q = design.k() / (col.ell() - 1);
    let mut alpha = 0;
    let mut gamma = 0;
    for block in design.blocks() {
        let c = block
            .iter()
            .filter(|&&p| col.colour_of(p) == colour)
            .count();
        if c == 0 {
            gamma += 1;
        } else if c == q {
            alpha += 1;
        }
    }
    Ok(AlphaGamma { alpha, gamma })
}

/// For each point `x` and colour `j`, the number of blocks avoiding colour
/// `j` that contain `x`.
///
/// In a verified 0-ULSE colouring, every entry with `x` not coloured `j`
/// equals the constant `r − λv(ℓ−1)/(kℓ) = r/(ℓ−1)`; entries at `x`'s own
/// colour are unconstrained.
pub fn missing_block_incidence(design: &Design, col: &Colouring) -> Result<Vec<Vec<u64>>> {
    check_colouring_length(design, col)?;
    let mut table = vec![vec![0u64; col.ell()]; design.v()];
    for block in design.blocks() {
        let counts = block_colour_counts(block, col);
        for j in 0..col.ell() {
            if counts[j] == 0 {
                for &x in block {
                    table[x][j] += 1;
                }
            }
        }
    }
    Ok(table)
}

/// Restricts the design to one colour class: points relabelled to
/// `0..v/ℓ-1`, blocks the nonempty intersections `C ∩ B`.
///
/// On a 0-ULSE coloured (v,k,λ)-BIBD the result is a
/// (v/ℓ, k/(ℓ−1), λ)-BIBD, which is re-verified before being returned.
pub fn induced_design(design: &Design, col: &Colouring, colour: usize) -> Result<Design> {
    if colour >= col.ell() {
        return Err(Error::parameter(format!("colour {colour} out of range")));
    }
    check_colouring_length(design, col)?;
    let mut relabel = vec![usize::MAX; design.v()];
    let mut next = 0usize;
    for p in 0..design.v() {
        if col.colour_of(p) == colour {
            relabel[p] = next;
            next += 1;
        }
    }
    let blocks: Vec<Vec<usize>> = design
        .blocks()
        .iter()
        .filter_map(|block| {
            let inter: Vec<usize> = block
                .iter()
                .filter(|&&p| relabel[p] != usize::MAX)
                .map(|&p| relabel[p])
                .collect();
            (!inter.is_empty()).then_some(inter)
        })
        .collect();
    let induced = Design::new(next, blocks, design.lambda())?;
    let report = verify_bibd(&induced, design.lambda());
    if !report.ok() {
        return Err(Error::ConstructionFailed(format!(
            "induced design on colour {colour} is not balanced: {}",
            report.violations[0]
        )));
    }
    Ok(induced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{colouring_16_6_2, design_16_6_2, four_three_two};

    #[test]
    fn the_16_6_2_design_is_0_ulse_4_coloured() {
        let d = design_16_6_2();
        let col = colouring_16_6_2();
        let report = verify_t_ulse(&d, &col, 0, 4).unwrap();
        assert!(report.ok(), "{:?}", report.violations);
        assert!(!report.degenerate);
        // Every block misses exactly one colour; the special colour is the
        // absent one.
        let specials = report.block_special.unwrap();
        for (block, &s) in d.blocks().iter().zip(&specials) {
            assert!(block.iter().all(|&p| col.colour_of(p) != s));
        }
    }

    #[test]
    fn the_16_6_2_design_satisfies_zero_profile_upsilon_lse() {
        let d = design_16_6_2();
        let col = colouring_16_6_2();
        let profile = LseProfile::constant(0, d.b(), d.k(), 4).unwrap();
        assert!(profile.uniform());
        let report = verify_upsilon_lse(&d, &col, &profile).unwrap();
        assert!(report.ok());
    }

    #[test]
    fn swapping_colours_across_classes_breaks_the_16_6_2_design() {
        let d = design_16_6_2();
        let mut assignment = colouring_16_6_2().assignment().to_vec();
        assignment.swap(0, 4); // move a colour-0 point into class 1 and back
        let col = Colouring::new(assignment, 4).unwrap();
        let report = verify_t_ulse(&d, &col, 0, 4).unwrap();
        assert!(!report.ok());
        let profile = LseProfile::constant(0, d.b(), d.k(), 4).unwrap();
        assert!(!verify_upsilon_lse(&d, &col, &profile).unwrap().ok());
    }

    #[test]
    fn all_distinct_colouring_is_0_lse() {
        // ℓ = v: each colour used once; every block misses v−k colours, so
        // the Υ-LSE profile with n_i = 0 holds (balanced 0/1 counts).
        let d = four_three_two();
        let col = Colouring::new((0..4).collect(), 4).unwrap();
        let profile = LseProfile::constant(0, d.b(), d.k(), 4).unwrap();
        assert!(verify_upsilon_lse(&d, &col, &profile).unwrap().ok());
        // And k = v−1 makes it uniform: q = 3/3 = 1.
        assert!(verify_t_ulse(&d, &col, 0, 4).unwrap().ok());
    }

    #[test]
    fn divisibility_failure_is_a_parameter_error() {
        let d = crate::testutil::fano();
        let col = Colouring::new(vec![0, 1, 2, 3, 4, 5, 6], 7).unwrap();
        // k − t = 3, ℓ − 1 = 6: no scan happens.
        assert!(verify_t_ulse(&d, &col, 0, 7).is_err());
    }

    #[test]
    fn profile_length_mismatch_is_a_parameter_error() {
        let d = design_16_6_2();
        let col = colouring_16_6_2();
        let short = LseProfile::new(vec![0; d.b() - 1], d.k(), 4).unwrap();
        assert!(verify_upsilon_lse(&d, &col, &short).is_err());
    }

    #[test]
    fn alpha_gamma_closed_forms() {
        let ag = alpha_gamma(16, 6, 2, 4).unwrap();
        assert_eq!((ag.alpha, ag.gamma), (12, 4));
        // γ = v/ℓ on symmetric parameters.
        assert_eq!(ag.gamma, 16 / 4);
        let ag = alpha_gamma(15, 8, 4, 5).unwrap();
        assert_eq!(ag.gamma, 3);
        // (11,5,2) with ℓ = 3 gives α = 19/2: inadmissible.
        assert!(alpha_gamma(11, 5, 2, 3).is_err());
    }

    #[test]
    fn empirical_matches_closed_form_on_16_6_2() {
        let d = design_16_6_2();
        let col = colouring_16_6_2();
        let closed = alpha_gamma(16, 6, 2, 4).unwrap();
        for colour in 0..4 {
            let emp = empirical_alpha_gamma(&d, &col, colour).unwrap();
            assert_eq!(emp, closed);
        }
        // Σ over colours of γ equals b.
        let total: u64 = (0..4)
            .map(|c| empirical_alpha_gamma(&d, &col, c).unwrap().gamma)
            .sum();
        assert_eq!(total, d.b() as u64);
    }

    #[test]
    fn trivial_colouring_counts_alpha_as_replication() {
        // ℓ = v on a (k+1, k, k−1) design: colour c appears once in a block
        // iff point c lies in it, so α = r and γ = b − r.
        let d = four_three_two();
        let col = Colouring::new((0..4).collect(), 4).unwrap();
        for colour in 0..4 {
            let ag = empirical_alpha_gamma(&d, &col, colour).unwrap();
            assert_eq!((ag.alpha, ag.gamma), (3, 1));
        }
    }

    #[test]
    fn class_sizes_and_missing_block_incidence() {
        let d = design_16_6_2();
        let col = colouring_16_6_2();
        assert_eq!(colour_class_sizes(&col), vec![4, 4, 4, 4]);

        let table = missing_block_incidence(&d, &col).unwrap();
        // r/(ℓ−1) = 6/3 = 2 for every (point, other-colour) entry.
        for x in 0..16 {
            for j in 0..4 {
                if col.colour_of(x) != j {
                    assert_eq!(table[x][j], 2, "entry ({x},{j})");
                }
            }
        }
    }

    #[test]
    fn induced_designs_of_16_6_2() {
        let d = design_16_6_2();
        let col = colouring_16_6_2();
        for colour in 0..4 {
            let induced = induced_design(&d, &col, colour).unwrap();
            assert_eq!((induced.v(), induced.k(), induced.b()), (4, 2, 12));
            assert_eq!(verify_bibd(&induced, Some(2)).discovered_lambda, Some(2));
        }
    }

    #[test]
    fn surjectivity_is_required() {
        assert!(Colouring::new(vec![0, 0, 1], 3).is_err());
        assert!(Colouring::new(vec![0, 1, 3], 3).is_err());
        assert!(Colouring::new(vec![0, 1, 2], 3).is_ok());
    }
}
