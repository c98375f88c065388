//! Design transforms: block duplication, complementation, and incidence
//! duality.
//!
//! Complementing a (v,k,λ)-BIBD with b blocks and replication r yields a
//! (v, v−k, b−2r+λ)-BIBD; carrying a constant-t colouring across the
//! complement turns t into v/ℓ − t. The dual transposes incidence, and for
//! an affine-resolvable RBIBD with the right parameters it assembles into a
//! transversal design whose groups are the resolution classes.

use crate::colouring::{colour_class_sizes, verify_t_ulse, Colouring};
use crate::design::{replication_number, Design, ResolvableStructure, TransversalDesign};
use crate::error::{Error, Result};

/// Repeats every block `m` times; the index multiplies by `m` and any
/// Υ-LSE colouring of the original still verifies unchanged.
pub fn duplicate(design: &Design, m: u64) -> Result<Design> {
    if m == 0 {
        return Err(Error::parameter("duplication factor must be at least 1"));
    }
    let mut blocks = Vec::with_capacity(design.b() * m as usize);
    for block in design.blocks() {
        for _ in 0..m {
            blocks.push(block.clone());
        }
    }
    Design::new(design.v(), blocks, design.lambda().map(|l| l * m))
}

/// Replaces every block by its set complement. Needs `k ≤ v−2` so the
/// complement is still a design; the declared index becomes `b − 2r + λ`
/// when the original declared one.
pub fn complement(design: &Design) -> Result<Design> {
    let v = design.v();
    let k = design.k();
    if k > v - 2 {
        return Err(Error::parameter(format!(
            "complement needs k ≤ v−2, got k = {k}, v = {v}"
        )));
    }
    let blocks: Vec<Vec<usize>> = design
        .blocks()
        .iter()
        .map(|block| {
            let mut inside = vec![false; v];
            for &p in block {
                inside[p] = true;
            }
            (0..v).filter(|&p| !inside[p]).collect()
        })
        .collect();
    let lambda = design.lambda().and_then(|l| {
        let r = replication_number(v as u64, k as u64, l);
        if !r.is_integer() {
            return None;
        }
        let l2 = design.b() as i128 - 2 * r.to_integer() + l as i128;
        (l2 > 0).then_some(l2 as u64)
    });
    Design::new(v, blocks, lambda)
}

/// Complements a coloured design, carrying the colouring across:
/// a t-ULSE ℓ-colouring becomes a (v/ℓ − t)-ULSE ℓ-colouring.
///
/// Requires ℓ | v and all colour classes of equal size (the hypothesis of
/// the complementation result), and verifies the input against `t` first.
pub fn complement_coloured(
    design: &Design,
    col: &Colouring,
    t: usize,
) -> Result<(Design, Colouring, usize)> {
    let v = design.v();
    let ell = col.ell();
    if v % ell != 0 {
        return Err(Error::parameter(format!(
            "ℓ = {ell} does not divide v = {v}"
        )));
    }
    let class_size = v / ell;
    let sizes = colour_class_sizes(col);
    if sizes.iter().any(|&s| s != class_size) {
        return Err(Error::parameter(format!(
            "colour classes must all have size v/ℓ = {class_size}, got {sizes:?}"
        )));
    }
    let report = verify_t_ulse(design, col, t, ell)?;
    if !report.ok() {
        return Err(Error::parameter(format!(
            "input does not verify as {t}-ULSE {ell}-coloured: {}",
            report.violations[0]
        )));
    }
    if t > class_size {
        return Err(Error::parameter(format!(
            "t = {t} exceeds class size {class_size}"
        )));
    }
    let complemented = complement(design)?;
    Ok((complemented, col.clone(), class_size - t))
}

/// Incidence transpose: output point `i` per input block `B_i`, output
/// block `j` per input point `x_j`, with `i ∈ D_j` iff `x_j ∈ B_i`.
///
/// The output keeps this index correspondence (block `j` is at position
/// `j`), so applying `dual` twice returns the input exactly.
pub fn dual(design: &Design) -> Result<Design> {
    let blocks: Vec<Vec<usize>> = (0..design.v())
        .map(|j| {
            design
                .blocks()
                .iter()
                .enumerate()
                .filter(|(_, block)| block.contains(&j))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    // Constant block size requires constant replication in the input; true
    // for every BIBD, checked by the constructor otherwise.
    Design::new_ordered(design.b(), blocks, None)
}

/// Duality for affine-resolvable inputs: assembles the dual as a
/// transversal design whose groups are the resolution classes.
///
/// Every pair of blocks from different classes must intersect in exactly
/// k²/v points (the affine-resolvability signature); that intersection
/// number becomes the TD index μ. The TD points are the input's blocks,
/// ordered class by class, ascending block index within each class; the TD
/// blocks are the point pencils.
pub fn dual_as_td(rs: &ResolvableStructure) -> Result<TransversalDesign> {
    let design = rs.design();
    let v = design.v();
    let k = design.k();
    let classes = rs.classes();
    let n = rs
        .class_size()
        .ok_or_else(|| Error::parameter("resolution classes have unequal sizes"))?;

    if (k * k) % v != 0 {
        return Err(Error::parameter(format!(
            "k²/v = {k}²/{v} is not an integer: input is not affine resolvable"
        )));
    }
    let mu = (k * k / v) as u64;

    // Bose's signature: cross-class block intersections all equal k²/v.
    for (c1, class1) in classes.iter().enumerate() {
        for class2 in &classes[c1 + 1..] {
            for &i in class1 {
                for &j in class2 {
                    let inter = intersection_size(&design.blocks()[i], &design.blocks()[j]);
                    if inter != mu as usize {
                        return Err(Error::parameter(format!(
                            "blocks {i} and {j} from different classes meet in {inter} points, \
                             expected k²/v = {mu}: input is not affine resolvable"
                        )));
                    }
                }
            }
        }
    }

    // TD point index of input block: class-major, ascending block index.
    let mut td_point_of_block = vec![usize::MAX; design.b()];
    for (c, class) in classes.iter().enumerate() {
        for (pos, &bi) in class.iter().enumerate() {
            td_point_of_block[bi] = c * n + pos;
        }
    }
    let groups: Vec<Vec<usize>> = (0..classes.len())
        .map(|c| (c * n..(c + 1) * n).collect())
        .collect();
    let blocks: Vec<Vec<usize>> = (0..v)
        .map(|x| {
            design
                .blocks()
                .iter()
                .enumerate()
                .filter(|(_, block)| block.contains(&x))
                .map(|(i, _)| td_point_of_block[i])
                .collect()
        })
        .collect();
    TransversalDesign::new(classes.len(), n, mu, groups, blocks)
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    // Both sorted.
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}
