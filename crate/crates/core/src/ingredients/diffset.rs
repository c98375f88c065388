//! Difference sets and the coloured designs developed from them.
//!
//! A (v,k,λ) difference set over an additive group G hits every nonzero
//! group element exactly λ times as a difference of two of its members;
//! translating it through G develops a symmetric (v,k,λ)-BIBD. Two
//! families live here: the twin-prime-power sets over F_{ℓ−2} × F_ℓ, whose
//! developments carry an (ℓ−2)-ULSE ℓ-colouring that complements to a
//! 0-ULSE one, and the explicit (40,13,4) set in Z₄₀ whose development is
//! 4-ULSE 10-colourable and complements to a 0-ULSE 10-coloured
//! (40,27,18)-BIBD.

use crate::colouring::Colouring;
use crate::construct::ColouredDesign;
use crate::design::{verify_bibd, Design};
use crate::error::{Error, Result};
use crate::ingredients::field::{factor_prime_power, field_make, squares, FieldSpec};
use crate::transforms::complement_coloured;

/// The additive group a difference set lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Group {
    /// Z_v with elements the residues 0..v−1.
    Cyclic(usize),
    /// F_a × F_b with (x, y) encoded as `x·b + y` over the element indices.
    Product(FieldSpec, FieldSpec),
}

impl Group {
    pub fn order(&self) -> usize {
        match self {
            Group::Cyclic(v) => *v,
            Group::Product(a, b) => a.order() * b.order(),
        }
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        match self {
            Group::Cyclic(v) => (x + y) % v,
            Group::Product(a, b) => {
                let n = b.order();
                a.add(x / n, y / n) * n + b.add(x % n, y % n)
            }
        }
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        match self {
            Group::Cyclic(v) => (x + v - y) % v,
            Group::Product(a, b) => {
                let n = b.order();
                a.sub(x / n, y / n) * n + b.sub(x % n, y % n)
            }
        }
    }
}

/// A verified (v,k,λ) difference set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceSet {
    group: Group,
    elements: Vec<usize>,
    v: usize,
    k: usize,
    lambda: u64,
}

impl DifferenceSet {
    /// Wraps a candidate set, verifying the difference multiset: every
    /// nonzero group element must arise exactly λ times.
    pub fn new(group: Group, mut elements: Vec<usize>, lambda: u64) -> Result<Self> {
        let v = group.order();
        elements.sort_unstable();
        elements.dedup();
        let k = elements.len();
        if k < 2 || k >= v {
            return Err(Error::parameter(format!(
                "difference set size {k} out of range for v = {v}"
            )));
        }
        let mut counts = vec![0u64; v];
        for &x in &elements {
            for &y in &elements {
                if x != y {
                    counts[group.sub(x, y)] += 1;
                }
            }
        }
        for (d, &c) in counts.iter().enumerate().skip(1) {
            if c != lambda {
                return Err(Error::parameter(format!(
                    "difference {d} arises {c} times, expected {lambda}"
                )));
            }
        }
        Ok(DifferenceSet {
            group,
            elements,
            v,
            k,
            lambda,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn parameters(&self) -> (usize, usize, u64) {
        (self.v, self.k, self.lambda)
    }
}

/// The Stanton–Sprott set over F_{ℓ−2} × F_ℓ: pairs (x, y) with x and y
/// both nonzero squares, both nonsquares, or y = 0. Verified as an
/// (ℓ(ℓ−2), (ℓ²−1)/2 − ℓ, (ℓ−3)(ℓ+1)/4) difference set.
pub fn tpp_difference_set(ell: u64) -> Result<DifferenceSet> {
    if ell < 5 {
        return Err(Error::parameter(
            "twin prime power construction needs ℓ ≥ 5",
        ));
    }
    let field_a = make_odd_prime_power_field(ell - 2)?;
    let field_b = make_odd_prime_power_field(ell)?;
    let sq_a = squares(&field_a)?;
    let sq_b = squares(&field_b)?;
    let n = field_b.order();

    let is_sq = |set: &[usize], e: usize| set.binary_search(&e).is_ok();
    let mut elements = Vec::new();
    for x in 0..field_a.order() {
        for y in 0..field_b.order() {
            let keep = y == 0
                || (x != 0
                    && (is_sq(&sq_a, x) && is_sq(&sq_b, y)
                        || !is_sq(&sq_a, x) && !is_sq(&sq_b, y)));
            if keep {
                elements.push(x * n + y);
            }
        }
    }
    let lambda = (ell - 3) * (ell + 1) / 4;
    DifferenceSet::new(Group::Product(field_a, field_b), elements, lambda)
}

fn make_odd_prime_power_field(q: u64) -> Result<FieldSpec> {
    let (p, n) = factor_prime_power(q)
        .ok_or_else(|| Error::parameter(format!("{q} is not a prime power")))?;
    if p == 2 {
        return Err(Error::parameter(format!("{q} is not odd")));
    }
    field_make(p, n)
}

/// Develops a difference set: one block per group element, the translate
/// D + z. The result is a symmetric (v,k,λ)-BIBD.
pub fn develop_difference_set(ds: &DifferenceSet) -> Result<Design> {
    let (v, _, lambda) = ds.parameters();
    let blocks: Vec<Vec<usize>> = (0..v)
        .map(|z| {
            ds.elements()
                .iter()
                .map(|&d| ds.group().add(d, z))
                .collect()
        })
        .collect();
    let design = Design::new(v, blocks, Some(lambda))?;
    let report = verify_bibd(&design, Some(lambda));
    if !report.ok() {
        return Err(Error::ConstructionFailed(format!(
            "developed design is not balanced: {}",
            report.violations[0]
        )));
    }
    Ok(design)
}

/// Both stages of the twin-prime-power pipeline: the developed design with
/// its (ℓ−2)-ULSE ℓ-colouring (classes C_y = F_{ℓ−2} × {y}), and its
/// complement, a 0-ULSE ℓ-coloured (ℓ(ℓ−2), (ℓ−1)²/2, (ℓ−1)²/4)-BIBD.
pub fn tpp_coloured_stages(ell: u64) -> Result<(ColouredDesign, ColouredDesign)> {
    let ds = tpp_difference_set(ell)?;
    let design = develop_difference_set(&ds)?;
    let n = ell as usize;
    // Point x·ℓ + y is coloured y.
    let colouring = Colouring::new((0..design.v()).map(|p| p % n).collect(), n)?;
    let t = ell as usize - 2;
    let pre = ColouredDesign::new(design, colouring, t)?;
    let (comp, col, t2) = complement_coloured(pre.design(), pre.colouring(), t)?;
    let post = ColouredDesign::new(comp, col, t2)?;
    Ok((pre, post))
}

/// The 0-ULSE ℓ-coloured complement stage of the twin-prime-power pipeline.
pub fn tpp_coloured_design(ell: u64) -> Result<ColouredDesign> {
    Ok(tpp_coloured_stages(ell)?.1)
}

/// The explicit (40,13,4) difference set in Z₄₀.
const PG40_BASE_BLOCK: [usize; 13] = [0, 1, 2, 4, 5, 8, 13, 14, 17, 19, 24, 26, 34];

/// Both stages of the (40,13,4) pipeline: the development coloured by
/// residue mod 10 (classes {i, 10+i, 20+i, 30+i}) verifying 4-ULSE
/// 10-coloured, and its complement verifying 0-ULSE 10-coloured
/// (40,27,18).
pub fn pg40_coloured_stages() -> Result<(ColouredDesign, ColouredDesign)> {
    let ds = DifferenceSet::new(Group::Cyclic(40), PG40_BASE_BLOCK.to_vec(), 4)?;
    let design = develop_difference_set(&ds)?;
    let colouring = Colouring::new((0..40).map(|p| p % 10).collect(), 10)?;
    let pre = ColouredDesign::new(design, colouring, 4)?;
    let (comp, col, t2) = complement_coloured(pre.design(), pre.colouring(), 4)?;
    let post = ColouredDesign::new(comp, col, t2)?;
    Ok((pre, post))
}

/// The 0-ULSE 10-coloured (40,27,18)-BIBD from the (40,13,4) seed.
pub fn pg40_coloured_design() -> Result<ColouredDesign> {
    Ok(pg40_coloured_stages()?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::colour_class_sizes;
    use crate::design::fisher_and_symmetry;

    #[test]
    fn tpp_sets_for_small_ell() {
        let ds5 = tpp_difference_set(5).unwrap();
        assert_eq!(ds5.parameters(), (15, 7, 3));
        let ds7 = tpp_difference_set(7).unwrap();
        assert_eq!(ds7.parameters(), (35, 17, 8));
        // ℓ = 9 exercises the extension field F₉.
        let ds9 = tpp_difference_set(9).unwrap();
        assert_eq!(ds9.parameters(), (63, 31, 15));
    }

    #[test]
    fn tpp_requires_twin_odd_prime_powers() {
        assert!(tpp_difference_set(15).is_err()); // 15 is not a prime power
        assert!(tpp_difference_set(17).is_err()); // 15 again, as ℓ−2
        assert!(tpp_difference_set(4).is_err()); // even pair
                                                 // 9 = 3² pairs with 11: valid.
        assert_eq!(tpp_difference_set(11).unwrap().parameters(), (99, 49, 24));
    }

    #[test]
    fn developing_the_fano_difference_set() {
        let ds = DifferenceSet::new(Group::Cyclic(7), vec![0, 1, 3], 1).unwrap();
        let fano = develop_difference_set(&ds).unwrap();
        assert_eq!((fano.v(), fano.k(), fano.b()), (7, 3, 7));
        assert_eq!(verify_bibd(&fano, Some(1)).discovered_lambda, Some(1));
    }

    #[test]
    fn bad_difference_sets_are_rejected() {
        assert!(DifferenceSet::new(Group::Cyclic(7), vec![0, 1, 2], 1).is_err());
        assert!(DifferenceSet::new(Group::Cyclic(40), vec![0, 1, 2], 4).is_err());
    }

    #[test]
    fn ell5_pipeline() {
        let (pre, post) = tpp_coloured_stages(5).unwrap();
        let d = pre.design();
        assert_eq!((d.v(), d.k(), d.lambda()), (15, 7, Some(3)));
        assert_eq!(pre.t(), 3);
        assert!(fisher_and_symmetry(d).symmetric);

        let c = post.design();
        assert_eq!((c.v(), c.k(), c.lambda()), (15, 8, Some(4)));
        assert_eq!(post.t(), 0);
        assert_eq!(colour_class_sizes(post.colouring()), vec![3; 5]);
    }

    #[test]
    fn pg40_pipeline() {
        let (pre, post) = pg40_coloured_stages().unwrap();
        assert_eq!(
            (pre.design().v(), pre.design().k(), pre.design().lambda()),
            (40, 13, Some(4))
        );
        assert_eq!((pre.t(), pre.ell()), (4, 10));
        // Each block: one colour four times, nine colours once.
        for block in pre.design().blocks() {
            let mut counts = [0usize; 10];
            for &p in block {
                counts[pre.colouring().colour_of(p)] += 1;
            }
            let mut sorted = counts.to_vec();
            sorted.sort_unstable();
            assert_eq!(&sorted[..9], &[1; 9]);
            assert_eq!(sorted[9], 4);
        }

        assert_eq!(
            (post.design().v(), post.design().k(), post.design().lambda()),
            (40, 27, Some(18))
        );
        assert_eq!((post.t(), post.ell()), (0, 10));
        assert_eq!(colour_class_sizes(post.colouring()), vec![4; 10]);
    }
}
