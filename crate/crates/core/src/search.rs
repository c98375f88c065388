//! Exhaustive backtracking search for t-ULSE ℓ-colourings of a verified
//! BIBD.
//!
//! Points are coloured in index order, depth first, with per-block colour
//! counts maintained incrementally. A branch dies as soon as some block can
//! no longer complete to the target profile {t, q, …, q} with
//! q = (k−t)/(ℓ−1), or a colour class outgrows v/ℓ (cap on by default).
//! Symmetry breaking fixes colour 0 on point 0 and lets colour c appear
//! only after colour c−1, so counts are of colourings up to colour
//! permutation; point symmetries are never quotiented.
//!
//! Everything is deterministic: identical design and spec give identical
//! outcome and node count. Every emitted colouring is re-verified before it
//! leaves the search.

use crate::colouring::{verify_t_ulse, Colouring};
use crate::design::Design;
use crate::error::{Error, Result};
use crate::params::{check_admissible, AdmissibilityFinding, Condition};

/// What the search should produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Stop at the first colouring found.
    First,
    /// Collect every colouring.
    All,
    /// Count colourings without storing them.
    Count,
}

/// Search parameters. The divisibility invariant (ℓ−1) | (k−t) is checked
/// by the prefilter; a violation empties the search rather than erroring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub ell: usize,
    pub t: usize,
    pub mode: SearchMode,
    /// Cap every colour class at v/ℓ. On by default; forced for sound
    /// 0-ULSE search, optional pruning for t > 0.
    pub class_size_cap: bool,
    /// Fix colour 0 on point 0 and introduce colours in order.
    pub symmetry_breaking: bool,
    /// Give up after this many assignment attempts.
    pub node_budget: Option<u64>,
}

impl SearchSpec {
    pub fn new(ell: usize, t: usize) -> Self {
        SearchSpec {
            ell,
            t,
            mode: SearchMode::First,
            class_size_cap: true,
            symmetry_breaking: true,
            node_budget: None,
        }
    }

    pub fn mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }

    pub fn without_symmetry_breaking(mut self) -> Self {
        self.symmetry_breaking = false;
        self
    }

    pub fn without_class_cap(mut self) -> Self {
        self.class_size_cap = false;
        self
    }
}

/// Search result: the colourings found (empty in count mode), how many,
/// the node count, and whether the tree was fully explored in budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub colourings: Vec<Colouring>,
    pub count: u64,
    pub nodes: u64,
    pub exhausted: bool,
}

impl SearchOutcome {
    fn empty() -> Self {
        SearchOutcome {
            colourings: Vec::new(),
            count: 0,
            nodes: 0,
            exhausted: true,
        }
    }
}

/// Evaluates the necessary conditions ahead of the tree walk and returns
/// the violated ones. For t = 0 this is the full parameter battery (minus
/// the nontrivial-only block-size window when ℓ = v, where the trivial
/// colouring family lives); for t > 0 only divisibility and class-size
/// consistency apply.
pub fn prefilter(design: &Design, spec: &SearchSpec) -> Vec<AdmissibilityFinding> {
    let v = design.v();
    let k = design.k();
    let ell = spec.ell;
    let mut violated = Vec::new();

    if ell < 2 || (k < spec.t) || (k - spec.t) % (ell - 1) != 0 {
        violated.push(AdmissibilityFinding {
            condition: Condition::EllMinusOneDividesK,
            satisfied: false,
            detail: format!(
                "(ℓ−1) = {} must divide k−t = {k}−{}",
                ell.saturating_sub(1),
                spec.t
            ),
        });
        return violated;
    }

    if spec.t == 0 {
        // Under the verified-BIBD precondition the coverage of any single
        // pair is the index; the declared value wins when present.
        let lambda = design.lambda().unwrap_or_else(|| {
            design
                .blocks()
                .iter()
                .filter(|b| b.contains(&0) && b.contains(&1))
                .count() as u64
        });
        let findings = check_admissible(v as u64, k as u64, lambda, ell as u64);
        let trivial = ell == v;
        for f in findings {
            if trivial && matches!(f.condition, Condition::KBounds | Condition::EllBounds) {
                continue;
            }
            if !f.satisfied {
                violated.push(f);
            }
        }
    } else if spec.class_size_cap && v % ell != 0 {
        violated.push(AdmissibilityFinding {
            condition: Condition::EllDividesV,
            satisfied: false,
            detail: format!("v = {v}, ℓ = {ell}"),
        });
    }
    violated
}

/// Runs the depth-first search. The design must verify as a BIBD (its
/// declared index is trusted here; `verify_bibd` is the caller's gate).
pub fn search_t_ulse(design: &Design, spec: &SearchSpec) -> Result<SearchOutcome> {
    search_t_ulse_jobs(design, spec, 1)
}

/// Parallel variant: splits the subtrees under the first decision point
/// across up to `jobs` workers and merges the per-branch outcomes in colour
/// order, so the colourings found are identical to the sequential run.
/// Node budgets apply per branch when `jobs > 1`.
pub fn search_t_ulse_jobs(
    design: &Design,
    spec: &SearchSpec,
    jobs: usize,
) -> Result<SearchOutcome> {
    if spec.ell < 2 {
        return Err(Error::parameter("search needs ℓ ≥ 2"));
    }
    if jobs == 0 {
        return Err(Error::parameter("need at least one worker"));
    }
    if !prefilter(design, spec).is_empty() {
        return Ok(SearchOutcome::empty());
    }
    if spec.ell > design.v() {
        // More colours than points: no surjective assignment exists.
        return Ok(SearchOutcome::empty());
    }

    if jobs == 1 {
        let mut state = State::new(design, spec);
        state.run_from_root();
        return Ok(state.into_outcome());
    }

    // Branches: the colour choices for point 0. With symmetry breaking only
    // colour 0 is allowed, so the split happens below the root.
    let branches: Vec<Vec<usize>> = if spec.symmetry_breaking {
        // Split on point 1 instead: colours 0 and 1 are the only candidates.
        vec![vec![0, 0], vec![0, 1]]
    } else {
        (0..spec.ell).map(|c| vec![c]).collect()
    };

    let outcomes: Vec<SearchOutcome> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in branches.chunks(branches.len().div_ceil(jobs)) {
            let chunk = chunk.to_vec();
            handles.push(scope.spawn(move || {
                chunk
                    .iter()
                    .map(|prefix| State::new(design, spec).run_with_prefix(prefix))
                    .collect::<Vec<_>>()
            }));
        }
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("search worker panicked"))
            .collect()
    });

    let mut merged = SearchOutcome::empty();
    for outcome in outcomes {
        merged.nodes += outcome.nodes;
        merged.exhausted &= outcome.exhausted;
        if matches!(spec.mode, SearchMode::First) && merged.count > 0 {
            continue; // keep earlier-branch result; still accumulate nodes
        }
        merged.count += outcome.count;
        merged.colourings.extend(outcome.colourings);
    }
    if matches!(spec.mode, SearchMode::First) && merged.colourings.len() > 1 {
        merged.colourings.truncate(1);
        merged.count = 1;
    }
    Ok(merged)
}

struct State<'a> {
    design: &'a Design,
    spec: &'a SearchSpec,
    q: usize,
    cap: usize,
    /// Blocks containing each point.
    blocks_of: Vec<Vec<usize>>,
    /// Per block, per colour: how many assigned points carry the colour.
    block_counts: Vec<Vec<usize>>,
    /// Unassigned slots per block.
    open_slots: Vec<usize>,
    class_sizes: Vec<usize>,
    assignment: Vec<usize>,
    used_colours: usize,
    nodes: u64,
    budget_hit: bool,
    found: Vec<Colouring>,
    count: u64,
}

const UNSET: usize = usize::MAX;

impl<'a> State<'a> {
    fn new(design: &'a Design, spec: &'a SearchSpec) -> Self {
        let v = design.v();
        let k = design.k();
        let ell = spec.ell;
        let mut blocks_of = vec![Vec::new(); v];
        for (i, block) in design.blocks().iter().enumerate() {
            for &p in block {
                blocks_of[p].push(i);
            }
        }
        State {
            design,
            spec,
            q: (k - spec.t) / (ell - 1),
            cap: if v % ell == 0 { v / ell } else { v },
            blocks_of,
            block_counts: vec![vec![0; ell]; design.b()],
            open_slots: vec![k; design.b()],
            class_sizes: vec![0; ell],
            assignment: vec![UNSET; v],
            used_colours: 0,
            nodes: 0,
            budget_hit: false,
            found: Vec::new(),
            count: 0,
        }
    }

    fn run_from_root(&mut self) {
        self.descend(0);
    }

    /// Forces the first `prefix.len()` points to the given colours, then
    /// searches below. Infeasible prefixes exhaust trivially.
    fn run_with_prefix(mut self, prefix: &[usize]) -> SearchOutcome {
        for (p, &c) in prefix.iter().enumerate() {
            if !self.try_assign(p, c) {
                return self.into_outcome();
            }
        }
        self.descend(prefix.len());
        self.into_outcome()
    }

    fn into_outcome(self) -> SearchOutcome {
        SearchOutcome {
            count: self.count,
            colourings: self.found,
            nodes: self.nodes,
            exhausted: !self.budget_hit,
        }
    }

    fn done(&self) -> bool {
        self.budget_hit || (matches!(self.spec.mode, SearchMode::First) && self.count > 0)
    }

    fn descend(&mut self, point: usize) {
        if self.done() {
            return;
        }
        let v = self.design.v();
        if point == v {
            if self.used_colours == self.spec.ell {
                self.emit();
            }
            return;
        }
        // Not enough points left to introduce the missing colours.
        if self.spec.ell - self.used_colours > v - point {
            return;
        }
        let max_colour = if self.spec.symmetry_breaking {
            // Colour c only after c−1 has appeared.
            self.used_colours.min(self.spec.ell - 1)
        } else {
            self.spec.ell - 1
        };
        for colour in 0..=max_colour {
            if self.done() {
                return;
            }
            if self.try_assign(point, colour) {
                self.descend(point + 1);
                self.unassign(point, colour);
            }
        }
    }

    /// Attempts to colour a point, applying every prune; on success the
    /// state is updated, otherwise untouched. Counts one node per attempt.
    fn try_assign(&mut self, point: usize, colour: usize) -> bool {
        self.nodes += 1;
        if let Some(budget) = self.spec.node_budget {
            if self.nodes > budget {
                self.budget_hit = true;
                return false;
            }
        }
        if self.spec.class_size_cap && self.class_sizes[colour] >= self.cap {
            return false;
        }
        let limit = self.spec.t.max(self.q);
        for (idx, &bi) in self.blocks_of[point].iter().enumerate() {
            let counts = &mut self.block_counts[bi];
            counts[colour] += 1;
            self.open_slots[bi] -= 1;
            let ok = counts[colour] <= limit && block_feasible(counts, self.spec.t, self.q);
            if !ok {
                // Roll back the blocks touched so far, this one included.
                counts[colour] -= 1;
                self.open_slots[bi] += 1;
                for &bj in self.blocks_of[point].iter().take(idx) {
                    self.block_counts[bj][colour] -= 1;
                    self.open_slots[bj] += 1;
                }
                return false;
            }
        }
        self.assignment[point] = colour;
        self.class_sizes[colour] += 1;
        if self.class_sizes[colour] == 1 {
            self.used_colours += 1;
        }
        true
    }

    fn unassign(&mut self, point: usize, colour: usize) {
        self.assignment[point] = UNSET;
        self.class_sizes[colour] -= 1;
        if self.class_sizes[colour] == 0 {
            self.used_colours -= 1;
        }
        for &bi in &self.blocks_of[point] {
            self.block_counts[bi][colour] -= 1;
            self.open_slots[bi] += 1;
        }
    }

    fn emit(&mut self) {
        let colouring = Colouring::new(self.assignment.clone(), self.spec.ell)
            .expect("complete assignment uses every colour");
        // Soundness: nothing leaves the search unverified.
        let report = verify_t_ulse(self.design, &colouring, self.spec.t, self.spec.ell)
            .expect("profile divisibility was prefiltered");
        assert!(report.ok(), "search emitted an invalid colouring");
        self.count += 1;
        match self.spec.mode {
            SearchMode::First | SearchMode::All => self.found.push(colouring),
            SearchMode::Count => {}
        }
    }
}

/// Exact completability test for one block: the partial counts must extend
/// to the multiset {t, q, …, q}. Deficits always sum to the open slot count
/// when nonnegative, so feasibility reduces to choosing a special colour:
/// some colour at most t with every other colour at most q.
fn block_feasible(counts: &[usize], t: usize, q: usize) -> bool {
    let mut over_q = 0;
    let mut over_q_colour = 0;
    let mut min_count = usize::MAX;
    for (c, &count) in counts.iter().enumerate() {
        if count > q {
            over_q += 1;
            over_q_colour = c;
        }
        min_count = min_count.min(count);
    }
    match over_q {
        0 => {
            if t >= q {
                true // any colour on ≤ q can serve as special
            } else {
                min_count <= t
            }
        }
        1 => counts[over_q_colour] <= t, // that colour must be the special one
        _ => false,
    }
}
