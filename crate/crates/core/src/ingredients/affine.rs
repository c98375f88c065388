//! Affine planes of prime power order and the transversal designs dual to
//! them.

use crate::design::{
    verify_bibd, verify_resolution, verify_td, Design, ResolvableStructure, TransversalDesign,
};
use crate::error::{Error, Result};
use crate::ingredients::field::{factor_prime_power, field_make};
use crate::transforms::dual_as_td;

/// The affine plane AG(2, q) as a resolvable (q², q, 1)-BIBD.
///
/// Points are (x, y) ∈ F_q² encoded as `x·q + y`. Lines of slope m form one
/// parallel class per slope, the verticals a final one: q+1 classes of q
/// disjoint lines each.
pub fn affine_plane(q: u64) -> Result<ResolvableStructure> {
    let (p, n) = factor_prime_power(q)
        .ok_or_else(|| Error::parameter(format!("{q} is not a prime power")))?;
    let field = field_make(p, n)?;
    let qu = field.order();

    // (block, class) pairs; class index = slope, verticals last.
    let mut tagged: Vec<(Vec<usize>, usize)> = Vec::with_capacity(qu * (qu + 1));
    for m in 0..qu {
        for c in 0..qu {
            let line: Vec<usize> = (0..qu)
                .map(|x| x * qu + field.add(field.mul(m, x), c))
                .collect();
            tagged.push((line, m));
        }
    }
    for c in 0..qu {
        let vertical: Vec<usize> = (0..qu).map(|y| c * qu + y).collect();
        tagged.push((vertical, qu));
    }
    for (line, _) in tagged.iter_mut() {
        line.sort_unstable();
    }
    tagged.sort();

    let blocks: Vec<Vec<usize>> = tagged.iter().map(|(b, _)| b.clone()).collect();
    let design = Design::new(qu * qu, blocks, Some(1))?;
    let mut classes = vec![Vec::new(); qu + 1];
    for (i, (_, class)) in tagged.iter().enumerate() {
        classes[*class].push(i);
    }
    let rs = ResolvableStructure::new(design, classes)?;

    let report = verify_bibd(rs.design(), Some(1));
    if !report.ok() {
        return Err(Error::ConstructionFailed(format!(
            "affine plane of order {q} is not a (q²,q,1)-BIBD: {}",
            report.violations[0]
        )));
    }
    let report = verify_resolution(&rs);
    if !report.ok() {
        return Err(Error::ConstructionFailed(format!(
            "affine plane of order {q} classes do not resolve: {}",
            report.violations[0]
        )));
    }
    Ok(rs)
}

/// The TD(n+1, n) dual to an affine plane of order n: TD points are the
/// plane's lines, groups its parallel classes, blocks the pencils of lines
/// through each plane point.
pub fn td_from_affine(rs: &ResolvableStructure) -> Result<TransversalDesign> {
    let v = rs.design().v();
    let k = rs.design().k();
    let n = k;
    if v != n * n || rs.classes().len() != n + 1 {
        return Err(Error::parameter(format!(
            "input is not an affine plane: v = {v}, k = {k}, {} classes",
            rs.classes().len()
        )));
    }
    let report = verify_bibd(rs.design(), Some(1));
    if !report.ok() {
        return Err(Error::parameter(format!(
            "input is not an affine plane: {}",
            report.violations[0]
        )));
    }
    let report = verify_resolution(rs);
    if !report.ok() {
        return Err(Error::parameter(format!(
            "input is not resolvable: {}",
            report.violations[0]
        )));
    }
    let td = dual_as_td(rs)?;
    let td_report = verify_td(&td);
    if !td_report.ok() {
        return Err(Error::ConstructionFailed(format!(
            "dual of the affine plane fails TD verification: {}",
            td_report.violations[0]
        )));
    }
    Ok(td)
}
