//! Incidence structures and exact verification of their axioms.
//!
//! A [`Design`] is a finite incidence structure: `v` points labelled
//! `0..v-1` and a list of constant-size blocks. [`verify_bibd`] checks the
//! balance axiom (every point pair covered by the same number of blocks)
//! with exact integer counters. [`TransversalDesign`] and
//! [`ResolvableStructure`] carry the extra structure needed by the
//! construction pipeline, each with its own verifier.
//!
//! Blocks are stored sorted, and every constructor except
//! [`Design::new_ordered`] sorts the block list lexicographically, so two
//! equal designs compare equal with `==`. Repeated blocks are allowed: block
//! lists are multisets, since designs of index `m·λ` arise by duplication.

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A point-block incidence structure with constant block size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    v: usize,
    blocks: Vec<Vec<usize>>,
    lambda: Option<u64>,
}

impl Design {
    /// Builds a design in canonical form: each block sorted ascending and the
    /// block list sorted lexicographically.
    pub fn new(v: usize, blocks: Vec<Vec<usize>>, lambda: Option<u64>) -> Result<Self> {
        let mut d = Self::new_ordered(v, blocks, lambda)?;
        d.blocks.sort();
        Ok(d)
    }

    /// Builds a design keeping the given block order.
    ///
    /// Used where block indices carry meaning, e.g. the dual transform, whose
    /// output block `j` corresponds to input point `j`. Blocks are still
    /// sorted internally and validated.
    pub fn new_ordered(v: usize, blocks: Vec<Vec<usize>>, lambda: Option<u64>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::structure("design has no blocks"));
        }
        let k = blocks[0].len();
        if k < 2 {
            return Err(Error::structure(format!("block size {k} < 2")));
        }
        if k >= v {
            return Err(Error::structure(format!(
                "block size {k} not below v = {v}"
            )));
        }
        if let Some(l) = lambda {
            if l == 0 {
                return Err(Error::structure("declared index lambda must be positive"));
            }
        }
        let mut sorted = Vec::with_capacity(blocks.len());
        for (i, mut block) in blocks.into_iter().enumerate() {
            if block.len() != k {
                return Err(Error::structure(format!(
                    "block {i} has size {} but block 0 has size {k}",
                    block.len()
                )));
            }
            block.sort_unstable();
            if let Some(&p) = block.iter().find(|&&p| p >= v) {
                return Err(Error::structure(format!(
                    "block {i} contains point {p} outside 0..{v}"
                )));
            }
            if block.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::structure(format!("block {i} repeats a point")));
            }
            sorted.push(block);
        }
        Ok(Design {
            v,
            blocks: sorted,
            lambda,
        })
    }

    /// Returns the canonical form (block list sorted lexicographically).
    /// Idempotent.
    pub fn canonical(&self) -> Design {
        let mut d = self.clone();
        d.blocks.sort();
        d
    }

    pub fn v(&self) -> usize {
        self.v
    }

    /// Block size. Constant across blocks by construction.
    pub fn k(&self) -> usize {
        self.blocks[0].len()
    }

    /// Number of blocks.
    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn lambda(&self) -> Option<u64> {
        self.lambda
    }

    /// Returns a copy with the declared index replaced.
    pub fn with_lambda(&self, lambda: Option<u64>) -> Design {
        let mut d = self.clone();
        d.lambda = lambda;
        d
    }
}

/// One structured finding from a verification pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Block has the wrong size.
    BlockSize {
        block: usize,
        observed: usize,
        expected: usize,
    },
    /// Block contains a point outside the point range.
    PointRange {
        block: usize,
        point: usize,
        v: usize,
    },
    /// Block repeats a point.
    RepeatedPoint { block: usize, point: usize },
    /// A point pair is covered the wrong number of times.
    PairCoverage {
        x: usize,
        y: usize,
        observed: u64,
        expected: u64,
    },
    /// The discovered index disagrees with a declared or expected one.
    IndexMismatch { observed: u64, expected: u64 },
    /// The group or class family is not a partition of its ground set.
    NotPartition {
        family: &'static str,
        index: usize,
        detail: String,
    },
    /// A block does not meet a group in exactly one point.
    NotTransverse {
        block: usize,
        group: usize,
        observed: usize,
    },
    /// Total block count disagrees with the counting identity.
    BlockCount { observed: usize, expected: usize },
    /// A point's replication disagrees with the counting identity.
    Replication {
        point: usize,
        observed: u64,
        expected: u64,
    },
    /// A resolution class fails to partition the point set.
    ClassNotResolution { class: usize, detail: String },
    /// A colouring is malformed relative to the design.
    Colouring { detail: String },
    /// A block's per-colour counts do not fit the required profile.
    BlockProfile { block: usize, detail: String },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::BlockSize {
                block,
                observed,
                expected,
            } => {
                write!(f, "block {block}: size {observed}, expected {expected}")
            }
            Violation::PointRange { block, point, v } => {
                write!(f, "block {block}: point {point} outside 0..{v}")
            }
            Violation::RepeatedPoint { block, point } => {
                write!(f, "block {block}: point {point} repeated")
            }
            Violation::PairCoverage {
                x,
                y,
                observed,
                expected,
            } => {
                write!(
                    f,
                    "pair {{{x},{y}}} covered {observed} times, expected {expected}"
                )
            }
            Violation::IndexMismatch { observed, expected } => {
                write!(f, "index {observed} observed, expected {expected}")
            }
            Violation::NotPartition {
                family,
                index,
                detail,
            } => {
                write!(f, "{family} {index} breaks the partition: {detail}")
            }
            Violation::NotTransverse {
                block,
                group,
                observed,
            } => {
                write!(
                    f,
                    "block {block} meets group {group} in {observed} points, expected 1"
                )
            }
            Violation::BlockCount { observed, expected } => {
                write!(f, "{observed} blocks, expected {expected}")
            }
            Violation::Replication {
                point,
                observed,
                expected,
            } => {
                write!(
                    f,
                    "point {point} lies in {observed} blocks, expected {expected}"
                )
            }
            Violation::ClassNotResolution { class, detail } => {
                write!(f, "class {class} is not a resolution class: {detail}")
            }
            Violation::Colouring { detail } => write!(f, "colouring: {detail}"),
            Violation::BlockProfile { block, detail } => {
                write!(f, "block {block}: {detail}")
            }
        }
    }
}

/// Outcome of a verification pass: `ok` iff `violations` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
    /// Index discovered by pair counting, when one exists.
    pub discovered_lambda: Option<u64>,
    /// Per-block special colour chosen by a colouring verifier.
    pub block_special: Option<Vec<usize>>,
    /// Set when the t-ULSE profile is degenerate (t equals the uniform count,
    /// so the special colour is not distinguished).
    pub degenerate: bool,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }
}

/// Replication number `r = λ(v−1)/(k−1)` as an exact rational.
///
/// The caller decides integrality.
pub fn replication_number(v: u64, k: u64, lambda: u64) -> Rational {
    Rational::new(i128::from(lambda) * i128::from(v - 1), i128::from(k - 1))
}

/// Block count `b = λv(v−1)/(k(k−1))` as an exact rational.
pub fn block_count(v: u64, k: u64, lambda: u64) -> Rational {
    Rational::new(
        i128::from(lambda) * i128::from(v) * i128::from(v - 1),
        i128::from(k) * i128::from(k - 1),
    )
}

/// Counts, for every unordered point pair, the number of blocks containing
/// both. Returned as a flat `v × v` upper-triangular table.
fn pair_counts(design: &Design) -> Vec<u64> {
    let v = design.v();
    let mut counts = vec![0u64; v * v];
    for block in design.blocks() {
        for (i, &x) in block.iter().enumerate() {
            for &y in &block[i + 1..] {
                counts[x * v + y] += 1;
            }
        }
    }
    counts
}

/// Checks the balance axiom: every point pair lies in exactly λ blocks.
///
/// Structural defects (ragged blocks, range, duplicates) become violation
/// entries rather than panics; they are unreachable through the public
/// constructors but verification never trusts its input. The discovered
/// index is recorded in the report and compared against `expected_lambda`
/// and the design's declared index, when present.
pub fn verify_bibd(design: &Design, expected_lambda: Option<u64>) -> VerificationReport {
    let mut report = VerificationReport::default();
    let v = design.v();
    let k = design.k();

    for (i, block) in design.blocks().iter().enumerate() {
        if block.len() != k {
            report.push(Violation::BlockSize {
                block: i,
                observed: block.len(),
                expected: k,
            });
        }
        for (j, &p) in block.iter().enumerate() {
            if p >= v {
                report.push(Violation::PointRange {
                    block: i,
                    point: p,
                    v,
                });
            }
            if j > 0 && block[j - 1] == p {
                report.push(Violation::RepeatedPoint { block: i, point: p });
            }
        }
    }
    if !report.ok() {
        return report;
    }

    let counts = pair_counts(design);
    // The discovered index is the coverage of the first pair; all others must
    // agree with it.
    let lambda = counts[1];
    for x in 0..v {
        for y in (x + 1)..v {
            let c = counts[x * v + y];
            if c != lambda {
                report.push(Violation::PairCoverage {
                    x,
                    y,
                    observed: c,
                    expected: lambda,
                });
            }
        }
    }
    if report.ok() {
        report.discovered_lambda = Some(lambda);
        if lambda == 0 {
            // Equal coverage of zero everywhere is not a BIBD.
            report.push(Violation::PairCoverage {
                x: 0,
                y: 1,
                observed: 0,
                expected: 1,
            });
        }
        if let Some(expected) = expected_lambda {
            if lambda != expected {
                report.push(Violation::IndexMismatch {
                    observed: lambda,
                    expected,
                });
            }
        }
        if let Some(declared) = design.lambda() {
            if lambda != declared {
                report.push(Violation::IndexMismatch {
                    observed: lambda,
                    expected: declared,
                });
            }
        }
    }
    report
}

/// Fisher check and symmetry classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FisherReport {
    /// `v ≤ b`. False on every actual BIBD's data only through corruption,
    /// so a false here signals a data error.
    pub fisher_ok: bool,
    /// `v = b`.
    pub symmetric: bool,
}

/// Evaluates Fisher's inequality `v ≤ b` and the symmetry condition `v = b`
/// from the design's counts.
pub fn fisher_and_symmetry(design: &Design) -> FisherReport {
    FisherReport {
        fisher_ok: design.v() <= design.b(),
        symmetric: design.v() == design.b(),
    }
}

/// A transversal design TD_μ(k, n): `k` groups of `n` points; blocks meet
/// each group once; cross-group pairs covered exactly μ times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalDesign {
    k_groups: usize,
    n: usize,
    mu: u64,
    groups: Vec<Vec<usize>>,
    blocks: Vec<Vec<usize>>,
}

impl TransversalDesign {
    /// Builds a TD, checking shape only (group count and sizes, block sizes,
    /// point ranges). Transversality, the partition property, and coverage
    /// are the business of [`verify_td`].
    pub fn new(
        k_groups: usize,
        n: usize,
        mu: u64,
        groups: Vec<Vec<usize>>,
        blocks: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let points = k_groups * n;
        if groups.len() != k_groups {
            return Err(Error::structure(format!(
                "{} groups supplied, expected {k_groups}",
                groups.len()
            )));
        }
        let mut groups = groups;
        for (g, group) in groups.iter_mut().enumerate() {
            group.sort_unstable();
            if group.len() != n {
                return Err(Error::structure(format!(
                    "group {g} has size {}, expected {n}",
                    group.len()
                )));
            }
            if group.iter().any(|&p| p >= points) {
                return Err(Error::structure(format!(
                    "group {g} contains an out-of-range point"
                )));
            }
        }
        let mut blocks = blocks;
        for (i, block) in blocks.iter_mut().enumerate() {
            block.sort_unstable();
            if block.len() != k_groups {
                return Err(Error::structure(format!(
                    "block {i} has size {}, expected {k_groups}",
                    block.len()
                )));
            }
            if block.iter().any(|&p| p >= points) {
                return Err(Error::structure(format!(
                    "block {i} contains an out-of-range point"
                )));
            }
        }
        Ok(TransversalDesign {
            k_groups,
            n,
            mu,
            groups,
            blocks,
        })
    }

    pub fn k_groups(&self) -> usize {
        self.k_groups
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    pub fn points(&self) -> usize {
        self.k_groups * self.n
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

/// Checks group-transversality, cross-group pair coverage μ, the block count
/// μn², and per-point replication μn.
pub fn verify_td(td: &TransversalDesign) -> VerificationReport {
    let mut report = VerificationReport::default();
    let points = td.points();
    let n = td.n();
    let mu = td.mu();

    // Group membership table; also detects overlap and gaps.
    let mut group_of = vec![usize::MAX; points];
    for (g, group) in td.groups().iter().enumerate() {
        for &p in group {
            if group_of[p] != usize::MAX {
                report.push(Violation::NotPartition {
                    family: "group",
                    index: g,
                    detail: format!("point {p} already in group {}", group_of[p]),
                });
            }
            group_of[p] = g;
        }
    }
    for (p, &g) in group_of.iter().enumerate() {
        if g == usize::MAX {
            report.push(Violation::NotPartition {
                family: "group",
                index: 0,
                detail: format!("point {p} lies in no group"),
            });
        }
    }
    if !report.ok() {
        return report;
    }

    for (i, block) in td.blocks().iter().enumerate() {
        let mut per_group = vec![0usize; td.k_groups()];
        for &p in block {
            per_group[group_of[p]] += 1;
        }
        for (g, &c) in per_group.iter().enumerate() {
            if c != 1 {
                report.push(Violation::NotTransverse {
                    block: i,
                    group: g,
                    observed: c,
                });
            }
        }
    }

    // Cross-group pair coverage.
    let mut counts = vec![0u64; points * points];
    let mut replication = vec![0u64; points];
    for block in td.blocks() {
        for (i, &x) in block.iter().enumerate() {
            replication[x] += 1;
            for &y in &block[i + 1..] {
                counts[x * points + y] += 1;
            }
        }
    }
    for x in 0..points {
        for y in (x + 1)..points {
            if group_of[x] == group_of[y] {
                continue;
            }
            let c = counts[x * points + y];
            if c != mu {
                report.push(Violation::PairCoverage {
                    x,
                    y,
                    observed: c,
                    expected: mu,
                });
            }
        }
    }

    let expected_blocks = mu as usize * n * n;
    if td.blocks().len() != expected_blocks {
        report.push(Violation::BlockCount {
            observed: td.blocks().len(),
            expected: expected_blocks,
        });
    }
    let expected_rep = mu * n as u64;
    for (p, &r) in replication.iter().enumerate() {
        if r != expected_rep {
            report.push(Violation::Replication {
                point: p,
                observed: r,
                expected: expected_rep,
            });
        }
    }
    report
}

/// A design together with a partition of its block indices into resolution
/// classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvableStructure {
    design: Design,
    classes: Vec<Vec<usize>>,
}

impl ResolvableStructure {
    /// Builds the structure, checking that `classes` partitions the block
    /// indices. Whether each class actually resolves the point set is the
    /// business of [`verify_resolution`].
    pub fn new(design: Design, classes: Vec<Vec<usize>>) -> Result<Self> {
        let b = design.b();
        let mut seen = vec![false; b];
        let mut classes = classes;
        for (c, class) in classes.iter_mut().enumerate() {
            class.sort_unstable();
            for &i in class.iter() {
                if i >= b {
                    return Err(Error::structure(format!(
                        "class {c} references block {i}, but the design has {b} blocks"
                    )));
                }
                if seen[i] {
                    return Err(Error::structure(format!(
                        "block {i} appears in more than one class"
                    )));
                }
                seen[i] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::structure(format!(
                "block {missing} belongs to no class"
            )));
        }
        Ok(ResolvableStructure { design, classes })
    }

    pub fn design(&self) -> &Design {
        &self.design
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Blocks per resolution class, when constant across classes.
    pub fn class_size(&self) -> Option<usize> {
        let s = self.classes.first()?.len();
        self.classes.iter().all(|c| c.len() == s).then_some(s)
    }
}

/// Checks that every resolution class is a perfect partition of the point
/// set: pairwise disjoint blocks whose union is all of `0..v`.
pub fn verify_resolution(rs: &ResolvableStructure) -> VerificationReport {
    let mut report = VerificationReport::default();
    let v = rs.design().v();
    let k = rs.design().k();
    if v % k != 0 {
        report.push(Violation::ClassNotResolution {
            class: 0,
            detail: format!("block size {k} does not divide v = {v}"),
        });
        return report;
    }
    for (c, class) in rs.classes().iter().enumerate() {
        let mut covered = vec![false; v];
        let mut ok = true;
        for &bi in class {
            for &p in &rs.design().blocks()[bi] {
                if covered[p] {
                    report.push(Violation::ClassNotResolution {
                        class: c,
                        detail: format!("point {p} covered twice"),
                    });
                    ok = false;
                }
                covered[p] = true;
            }
        }
        if ok {
            if let Some(p) = covered.iter().position(|&c| !c) {
                report.push(Violation::ClassNotResolution {
                    class: c,
                    detail: format!("point {p} not covered"),
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{design_16_6_2, fano, rbibd_4_2_1, rbibd_9_3_1};

    /// Independent oracle: count pair coverage with plain nested loops over
    /// points, never reusing the implementation's per-block iteration.
    fn naive_lambda(design: &Design) -> Option<u64> {
        let v = design.v();
        let mut lambda = None;
        for x in 0..v {
            for y in (x + 1)..v {
                let c = design
                    .blocks()
                    .iter()
                    .filter(|b| b.contains(&x) && b.contains(&y))
                    .count() as u64;
                match lambda {
                    None => lambda = Some(c),
                    Some(l) if l != c => return None,
                    _ => {}
                }
            }
        }
        lambda.filter(|&l| l > 0)
    }

    #[test]
    fn the_16_6_2_design_verifies_with_index_two() {
        let d = design_16_6_2();
        let report = verify_bibd(&d, Some(2));
        assert!(report.ok(), "{:?}", report.violations);
        assert_eq!(report.discovered_lambda, Some(2));
        assert_eq!((d.v(), d.k(), d.b()), (16, 6, 16));
        assert_eq!(naive_lambda(&d), Some(2));
    }

    #[test]
    fn all_three_subsets_of_four_points() {
        let blocks = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
        let d = Design::new(4, blocks, None).unwrap();
        let report = verify_bibd(&d, Some(2));
        assert!(report.ok());
        assert_eq!(report.discovered_lambda, Some(2));

        // Doubling every block doubles the index.
        let doubled: Vec<_> = d.blocks().iter().chain(d.blocks()).cloned().collect();
        let d2 = Design::new(4, doubled, None).unwrap();
        assert_eq!(verify_bibd(&d2, None).discovered_lambda, Some(4));
    }

    #[test]
    fn fano_with_deleted_block_fails() {
        let mut blocks = fano().blocks().to_vec();
        blocks.pop();
        let d = Design::new(7, blocks, None).unwrap();
        let report = verify_bibd(&d, None);
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::PairCoverage { observed: 0, .. })));
        assert_eq!(naive_lambda(&d), None);
    }

    #[test]
    fn replication_and_block_count_formulas() {
        assert_eq!(replication_number(16, 6, 2), Rational::from_integer(6));
        // Non-integral results are returned exactly; integrality is the
        // caller's decision.
        assert_eq!(replication_number(10, 9, 3), Rational::new(27, 8));
        assert_eq!(replication_number(15, 8, 4), Rational::from_integer(8));
        assert_eq!(block_count(16, 6, 2), Rational::from_integer(16));
        assert_eq!(block_count(45, 12, 3), Rational::from_integer(45));
        // v = k+1 collapses to λ(k+1)/(k−1).
        assert_eq!(block_count(5, 4, 3), Rational::new(15, 3));
    }

    #[test]
    fn counting_identities_hold_on_verified_designs() {
        for d in [design_16_6_2(), fano()] {
            let report = verify_bibd(&d, None);
            let lambda = report.discovered_lambda.unwrap();
            let r = replication_number(d.v() as u64, d.k() as u64, lambda);
            let b = block_count(d.v() as u64, d.k() as u64, lambda);
            assert!(r.is_integer() && b.is_integer());
            // b·k = v·r and r·(k−1) = λ·(v−1).
            assert_eq!(b * d.k() as i128, r * d.v() as i128);
            assert_eq!(
                r * (d.k() as i128 - 1),
                Rational::from_integer(lambda as i128 * (d.v() as i128 - 1))
            );
        }
    }

    #[test]
    fn fisher_and_symmetry_cases() {
        let fig4 = design_16_6_2();
        assert!(verify_bibd(&fig4, None).ok());
        let f = fisher_and_symmetry(&fig4);
        assert!(f.fisher_ok && f.symmetric);

        let t2 = rbibd_9_3_1();
        let f = fisher_and_symmetry(t2.design());
        assert!(f.fisher_ok && !f.symmetric);

        // Fewer blocks than points: Fisher flags the data error.
        let short = Design::new(7, vec![vec![0, 1, 2], vec![3, 4, 5]], None).unwrap();
        assert!(!fisher_and_symmetry(&short).fisher_ok);
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let d = design_16_6_2();
        assert_eq!(d.canonical(), d.canonical().canonical());
    }

    #[test]
    fn construction_rejects_malformed_blocks() {
        assert!(Design::new(4, vec![], None).is_err());
        assert!(Design::new(4, vec![vec![0, 1, 4]], None).is_err());
        assert!(Design::new(4, vec![vec![0, 0, 1]], None).is_err());
        assert!(Design::new(4, vec![vec![0, 1, 2], vec![0, 1]], None).is_err());
        assert!(Design::new(3, vec![vec![0, 1, 2]], None).is_err());
    }

    #[test]
    fn small_rbibd_resolutions_verify() {
        for rs in [rbibd_4_2_1(), rbibd_9_3_1()] {
            assert!(verify_bibd(rs.design(), None).ok());
            assert!(verify_resolution(&rs).ok());
        }
    }

    #[test]
    fn swapped_class_blocks_fail_resolution() {
        let t2 = rbibd_9_3_1();
        let mut classes = t2.classes().to_vec();
        // Swap one block between the first two classes.
        let a = classes[0][0];
        let b = classes[1][0];
        classes[0][0] = b;
        classes[1][0] = a;
        let rs = ResolvableStructure::new(t2.design().clone(), classes).unwrap();
        assert!(!verify_resolution(&rs).ok());
    }

    #[test]
    fn duplicated_td_block_breaks_coverage() {
        let td = crate::testutil::td_3_2();
        assert!(verify_td(&td).ok());

        let mut blocks = td.blocks().to_vec();
        blocks.push(blocks[0].clone());
        let bad = TransversalDesign::new(3, 2, 1, td.groups().to_vec(), blocks).unwrap();
        let report = verify_td(&bad);
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::PairCoverage { observed: 2, .. })));
    }
}
