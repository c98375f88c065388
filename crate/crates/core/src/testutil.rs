//! Shared fixtures and assertion suites for unit and integration tests.
//!
//! The block lists here are transcribed from well-known small designs and
//! kept independent of the construction code they exercise. The assertion
//! suites bundle the counting identities every 0-ULSE coloured design must
//! satisfy, so each construction's output can be checked wholesale.

use crate::colouring::{
    alpha_gamma, colour_class_sizes, empirical_alpha_gamma, induced_design,
    missing_block_incidence, verify_t_ulse, verify_upsilon_lse, Colouring, LseProfile,
};
use crate::construct::ColouredDesign;
use crate::design::{
    fisher_and_symmetry, replication_number, verify_bibd, Design, ResolvableStructure,
    TransversalDesign,
};
use crate::params::ell_from_v_k;
use crate::rational::Rational;
use crate::transforms::complement_coloured;

/// The 16 blocks of a 4-coloured (16,6,2) design, encoded with point
/// `c·4 + a` for colour `c` and inner label `a`. Points 0..3 carry colour 0,
/// 4..7 colour 1, 8..11 colour 2, 12..15 colour 3.
pub fn design_16_6_2() -> Design {
    let blocks = vec![
        vec![4, 5, 8, 10, 12, 15],
        vec![4, 5, 9, 11, 13, 14],
        vec![6, 7, 9, 11, 12, 15],
        vec![6, 7, 8, 10, 13, 14],
        vec![0, 3, 8, 9, 12, 14],
        vec![1, 2, 8, 9, 13, 15],
        vec![0, 3, 10, 11, 13, 15],
        vec![1, 2, 10, 11, 12, 14],
        vec![0, 2, 4, 7, 12, 13],
        vec![1, 3, 5, 6, 12, 13],
        vec![1, 3, 4, 7, 14, 15],
        vec![0, 2, 5, 6, 14, 15],
        vec![0, 1, 4, 6, 8, 11],
        vec![0, 1, 5, 7, 9, 10],
        vec![2, 3, 5, 7, 8, 11],
        vec![2, 3, 4, 6, 9, 10],
    ];
    Design::new(16, blocks, Some(2)).unwrap()
}

/// The 4-colouring that goes with [`design_16_6_2`].
pub fn colouring_16_6_2() -> Colouring {
    Colouring::new((0..16).map(|p| p / 4).collect(), 4).unwrap()
}

/// The Fano plane (7,3,1).
pub fn fano() -> Design {
    let blocks = vec![
        vec![0, 1, 2],
        vec![0, 3, 4],
        vec![0, 5, 6],
        vec![1, 3, 5],
        vec![1, 4, 6],
        vec![2, 3, 6],
        vec![2, 4, 5],
    ];
    Design::new(7, blocks, Some(1)).unwrap()
}

/// The (4,3,2) design: all four 3-subsets of a 4-set.
pub fn four_three_two() -> Design {
    let blocks = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
    Design::new(4, blocks, Some(2)).unwrap()
}

/// The (4,2,1)-RBIBD with classes {01,23}, {02,13}, {03,12}.
pub fn rbibd_4_2_1() -> ResolvableStructure {
    let blocks = vec![
        vec![0, 1],
        vec![2, 3],
        vec![0, 2],
        vec![1, 3],
        vec![0, 3],
        vec![1, 2],
    ];
    let design = Design::new(4, blocks, Some(1)).unwrap();
    // Canonical block order: 01, 02, 03, 12, 13, 23.
    let classes = vec![vec![0, 5], vec![1, 4], vec![2, 3]];
    ResolvableStructure::new(design, classes).unwrap()
}

/// The (9,3,1)-RBIBD with four parallel classes.
pub fn rbibd_9_3_1() -> ResolvableStructure {
    let rows: [(&[usize; 3], usize); 12] = [
        (&[0, 1, 2], 0),
        (&[3, 4, 5], 0),
        (&[6, 7, 8], 0),
        (&[0, 3, 6], 1),
        (&[1, 4, 7], 1),
        (&[2, 5, 8], 1),
        (&[0, 4, 8], 2),
        (&[1, 5, 6], 2),
        (&[2, 3, 7], 2),
        (&[0, 5, 7], 3),
        (&[1, 3, 8], 3),
        (&[2, 4, 6], 3),
    ];
    tagged_rbibd(9, &rows, Some(1), 4)
}

/// Builds a resolvable structure from `(block, class)` pairs, recomputing
/// class membership against the canonical block order.
pub fn tagged_rbibd(
    v: usize,
    rows: &[(&[usize; 3], usize)],
    lambda: Option<u64>,
    n_classes: usize,
) -> ResolvableStructure {
    let mut tagged: Vec<(Vec<usize>, usize)> = rows
        .iter()
        .map(|(block, class)| (block.to_vec(), *class))
        .collect();
    tagged.sort();
    let blocks: Vec<Vec<usize>> = tagged.iter().map(|(b, _)| b.clone()).collect();
    let mut classes = vec![Vec::new(); n_classes];
    for (i, (_, class)) in tagged.iter().enumerate() {
        classes[*class].push(i);
    }
    let design = Design::new(v, blocks, lambda).unwrap();
    ResolvableStructure::new(design, classes).unwrap()
}

/// A TD_1(3,2) on points `2g + j` (group g, position j): the four
/// even-parity transversals.
pub fn td_3_2() -> TransversalDesign {
    let groups = vec![vec![0, 1], vec![2, 3], vec![4, 5]];
    let blocks = vec![vec![0, 2, 4], vec![0, 3, 5], vec![1, 3, 4], vec![1, 2, 5]];
    TransversalDesign::new(3, 2, 1, groups, blocks).unwrap()
}

/// Asserts every counting identity a 0-ULSE ℓ-coloured design satisfies:
/// balance, the colouring profile, equal class sizes, empirical α/γ against
/// the closed forms for every colour, the missing-block incidence constant
/// r/(ℓ−1), induced designs, the uniqueness of ℓ, and the coloured
/// complement round trip t ↔ v/ℓ − t.
pub fn assert_zero_ulse_suite(cd: &ColouredDesign) {
    let design = cd.design();
    let col = cd.colouring();
    let ell = cd.ell();
    assert_eq!(cd.t(), 0, "suite applies to 0-ULSE colourings");
    let (v, k, b) = (design.v(), design.k(), design.b());

    let report = verify_bibd(design, design.lambda());
    assert!(report.ok(), "balance: {:?}", report.violations);
    let lambda = report.discovered_lambda.unwrap();

    let report = verify_t_ulse(design, col, 0, ell).unwrap();
    assert!(report.ok(), "0-ULSE profile: {:?}", report.violations);

    let profile = LseProfile::constant(0, b, k, ell).unwrap();
    assert!(profile.uniform());
    assert!(verify_upsilon_lse(design, col, &profile).unwrap().ok());

    assert_eq!(v % ell, 0);
    let class_size = v / ell;
    assert!(colour_class_sizes(col).iter().all(|&s| s == class_size));

    let closed = alpha_gamma(v as u64, k as u64, lambda, ell as u64).unwrap();
    let mut gamma_total = 0;
    for colour in 0..ell {
        let emp = empirical_alpha_gamma(design, col, colour).unwrap();
        assert_eq!(emp, closed, "alpha/gamma for colour {colour}");
        assert_eq!(emp.alpha + emp.gamma, b as u64);
        gamma_total += emp.gamma;
    }
    assert_eq!(gamma_total, b as u64, "Σγ over colours is b");
    if fisher_and_symmetry(design).symmetric {
        assert_eq!(closed.gamma, class_size as u64, "γ = v/ℓ when symmetric");
    }

    let r = replication_number(v as u64, k as u64, lambda);
    assert!(r.is_integer());
    let r = r.to_integer();
    assert_eq!(r % (ell as i128 - 1), 0, "(ℓ−1) | r");
    let constant = r / (ell as i128 - 1);
    // The same constant, written as r − λv(ℓ−1)/(kℓ).
    let alt = Rational::from_integer(r)
        - Rational::new(
            lambda as i128 * v as i128 * (ell as i128 - 1),
            k as i128 * ell as i128,
        );
    assert_eq!(alt, Rational::from_integer(constant));
    let table = missing_block_incidence(design, col).unwrap();
    for (x, row) in table.iter().enumerate() {
        for (j, &entry) in row.iter().enumerate() {
            if col.colour_of(x) != j {
                assert_eq!(entry as i128, constant, "missing-block entry ({x},{j})");
            }
        }
    }

    for colour in 0..ell {
        let induced = induced_design(design, col, colour).unwrap();
        assert_eq!(induced.v(), class_size);
        assert_eq!(induced.k(), k / (ell - 1));
        let rep = verify_bibd(&induced, Some(lambda));
        assert!(rep.ok(), "induced design for colour {colour}");
    }

    assert_eq!(
        ell_from_v_k(v as u64, k as u64),
        Some(ell as u64),
        "ℓ is unique"
    );

    // Complement round trip: t = 0 → v/ℓ → 0.
    let (comp, comp_col, t1) = complement_coloured(design, col, 0).unwrap();
    assert_eq!(t1, class_size);
    assert!(verify_t_ulse(&comp, &comp_col, t1, ell).unwrap().ok());
    let (back, back_col, t2) = complement_coloured(&comp, &comp_col, t1).unwrap();
    assert_eq!(t2, 0);
    assert_eq!(back.canonical().blocks(), design.canonical().blocks());
    assert!(verify_t_ulse(&back, &back_col, 0, ell).unwrap().ok());
}

/// Brute-force oracle: counts all surjective ℓ-colourings satisfying the
/// t-ULSE profile by enumerating every one of the ℓ^v assignments and
/// recounting each block. Exponential on purpose; keep v small.
pub fn brute_force_t_ulse_count(design: &Design, ell: usize, t: usize) -> u64 {
    let v = design.v();
    let k = design.k();
    let mut assignment = vec![0usize; v];
    let mut count = 0u64;
    loop {
        if is_valid_t_ulse(design, &assignment, ell, t, k) {
            count += 1;
        }
        // Odometer step.
        let mut i = 0;
        loop {
            if i == v {
                return count;
            }
            assignment[i] += 1;
            if assignment[i] < ell {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

fn is_valid_t_ulse(design: &Design, assignment: &[usize], ell: usize, t: usize, k: usize) -> bool {
    // Surjective?
    let mut used = vec![false; ell];
    for &c in assignment {
        used[c] = true;
    }
    if used.iter().any(|&u| !u) {
        return false;
    }
    if (k - t) % (ell - 1) != 0 {
        return false;
    }
    let q = (k - t) / (ell - 1);
    for block in design.blocks() {
        let mut counts = vec![0usize; ell];
        for &p in block {
            counts[assignment[p]] += 1;
        }
        let ok = if t == q {
            counts.iter().all(|&c| c == q)
        } else {
            counts.iter().filter(|&&c| c == t).count() == 1
                && counts.iter().filter(|&&c| c == q).count() == ell - 1
        };
        if !ok {
            return false;
        }
    }
    true
}
