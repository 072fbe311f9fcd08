//! Exhaustive enumeration of genus-0 multi-level buildings over an orbit
//! set, with budget bounds, index admissibility, and classification of the
//! index-2 degenerations.
//!
//! Components are abstract: a component is its asymptotic ends plus the
//! exact Fredholm index those ends determine. No holomorphic map existence
//! is asserted. Admissibility rules:
//!  - trivial cylinders have index 0 and are always admissible;
//!  - branched covers of trivial cylinders carry their exact index, which
//!    is always >= 0, and are admissible;
//!  - every other nontrivial component must have index >= 1 (generic
//!    almost complex structure).
//!
//! Within a building, each negative end of a level is the positive end of
//! exactly one component of the next level, so levels are determined by the
//! multiset of open ends they consume. Action decreases strictly along every
//! nontrivial component from its positive end to each negative end.

use std::collections::{BTreeMap, BTreeSet};

use crate::dynamics::{FreeHomotopyModel, OrbitSet};
use crate::error::{CchError, Result};
use crate::index::trivial_cover_index;
use crate::orbit::{OrbitId, OrbitIterate, Rational};

/// Taxonomy label assigned from a component's shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentKind {
    SomewhereInjective,
    CoverOfNontrivialCylinder,
    CoverOfTrivialCylinder,
    TrivialCylinder,
}

/// One curve component: a genus-0 curve with one positive end, the listed
/// negative ends, and the exact index those ends determine.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveComponent {
    pub kind: ComponentKind,
    pub positive: OrbitIterate,
    pub negatives: Vec<OrbitIterate>,
    pub index: i64,
}

impl CurveComponent {
    pub fn is_trivial(&self) -> bool {
        self.kind == ComponentKind::TrivialCylinder
    }
}

/// A multi-level building. Level `i+1` consumes the negative ends of level
/// `i`; the unmatched negative ends of the last level are the building's
/// negative ends. Components within a level are kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Building {
    pub levels: Vec<Vec<CurveComponent>>,
    pub total_index: i64,
}

impl Building {
    pub fn top(&self) -> OrbitIterate {
        self.levels[0][0].positive
    }

    pub fn bottom_ends(&self) -> Vec<OrbitIterate> {
        self.levels.last().map(|l| l.iter().flat_map(|c| c.negatives.clone()).collect()).unwrap_or_default()
    }

    pub fn describe(&self, set: &OrbitSet) -> String {
        let fmt_end = |e: &OrbitIterate| {
            let name = set.orbits.get(e.orbit.0).map(|o| o.name.as_str()).unwrap_or("?");
            if e.k == 1 { name.to_string() } else { format!("{}^{}", name, e.k) }
        };
        let mut out = String::new();
        for (i, level) in self.levels.iter().enumerate() {
            if i > 0 {
                out.push_str(" | ");
            }
            let parts: Vec<String> = level
                .iter()
                .map(|c| {
                    let negs: Vec<String> = c.negatives.iter().map(&fmt_end).collect();
                    format!("({} -> [{}]; ind {})", fmt_end(&c.positive), negs.join(", "), c.index)
                })
                .collect();
            out.push_str(&parts.join(" + "));
        }
        format!("{} (total ind {})", out, self.total_index)
    }
}

/// Mandatory search bounds. The enumerated set is exhaustive within these
/// and every certificate echoes them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub max_levels: u32,
    pub max_cover_degree: u32,
    pub max_branch: u32,
    pub max_components_per_level: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub buildings: Vec<Building>,
    /// True when a budget bound cut off part of the search space.
    pub incomplete: bool,
    pub budgets: Budgets,
}

/// All iterates available under the set's action cap, in canonical order.
pub fn iterate_universe(set: &OrbitSet) -> Result<Vec<OrbitIterate>> {
    if set.action_cap.is_none() {
        return Err(CchError::InfiniteActionCap);
    }
    let mut out = Vec::new();
    for (i, orbit) in set.orbits.iter().enumerate() {
        let k_max = set.max_in_cap(orbit, u32::MAX, None);
        for k in 1..=k_max {
            out.push(OrbitIterate::new(OrbitId(i), k));
        }
    }
    Ok(out)
}

struct Search<'a> {
    set: &'a OrbitSet,
    universe: Vec<OrbitIterate>,
    budgets: Budgets,
    max_total: i64,
    negative_ends: usize,
    bottom: Option<OrbitIterate>,
    options: BTreeMap<OrbitIterate, (Vec<CurveComponent>, bool)>,
    results: BTreeSet<Building>,
    incomplete: bool,
}

impl<'a> Search<'a> {
    fn cz(&self, e: &OrbitIterate) -> Result<i64> {
        self.set.orbit(e.orbit)?.cz_index(e.k)
    }

    fn action(&self, e: &OrbitIterate) -> Result<Rational> {
        self.set.orbit(e.orbit)?.iterate_action(e.k)
    }

    fn class(&self, e: &OrbitIterate) -> Result<u32> {
        self.set.class_of(self.set.orbit(e.orbit)?, e.k)
    }

    /// Under abelian homotopy models, the class of the positive end must be
    /// the sum of the classes of the negative ends. Explicit tables carry no
    /// additive structure, so they constrain nothing here.
    fn class_sum_ok(&self, pos: &OrbitIterate, negs: &[OrbitIterate]) -> Result<bool> {
        match &self.set.homotopy {
            FreeHomotopyModel::Trivial => Ok(true),
            FreeHomotopyModel::Cyclic { order } => {
                let mut sum: u64 = 0;
                for n in negs {
                    sum = (sum + self.class(n)? as u64) % *order as u64;
                }
                Ok(sum as u32 == self.class(pos)?)
            }
            FreeHomotopyModel::Table { .. } => Ok(true),
        }
    }

    fn component_options(&mut self, end: OrbitIterate) -> Result<(Vec<CurveComponent>, bool)> {
        if let Some(cached) = self.options.get(&end) {
            return Ok(cached.clone());
        }
        let mut opts = Vec::new();
        let mut truncated = false;
        let mu_pos = self.cz(&end)?;
        let action_pos = self.action(&end)?;
        let class_pos = self.class(&end)?;

        opts.push(CurveComponent {
            kind: ComponentKind::TrivialCylinder,
            positive: end,
            negatives: vec![end],
            index: 0,
        });

        if class_pos == 0 {
            let ind = mu_pos - 1;
            if ind >= 1 {
                opts.push(CurveComponent {
                    kind: ComponentKind::SomewhereInjective,
                    positive: end,
                    negatives: vec![],
                    index: ind,
                });
            }
        }

        let mut below = Vec::new();
        for f in &self.universe {
            if self.action(f)? < action_pos {
                below.push(*f);
            }
        }

        for f in &below {
            if self.class(f)? != class_pos {
                continue;
            }
            let ind = mu_pos - self.cz(f)?;
            if ind >= 1 {
                opts.push(CurveComponent {
                    kind: ComponentKind::SomewhereInjective,
                    positive: end,
                    negatives: vec![*f],
                    index: ind,
                });
            }
        }

        // branched covers of the trivial cylinder over this orbit: negatives
        // partition the multiplicity, with n parts meaning n - 1 interior
        // branch points
        if end.k >= 2 {
            if end.k > self.budgets.max_cover_degree {
                truncated = true;
            } else {
                if end.k > 1 + self.budgets.max_branch {
                    truncated = true;
                }
                let max_parts = (1 + self.budgets.max_branch).min(end.k) as usize;
                for parts in partitions(end.k, max_parts) {
                    if parts.len() < 2 {
                        continue;
                    }
                    let orbit = self.set.orbit(end.orbit)?;
                    let ind = trivial_cover_index(orbit, &parts)?;
                    if ind < 0 {
                        // possible only for explicit index tables; the cover
                        // is inadmissible there
                        continue;
                    }
                    let negatives: Vec<OrbitIterate> = {
                        let mut v: Vec<OrbitIterate> =
                            parts.iter().map(|&p| OrbitIterate::new(end.orbit, p)).collect();
                        v.sort();
                        v
                    };
                    opts.push(CurveComponent {
                        kind: ComponentKind::CoverOfTrivialCylinder,
                        positive: end,
                        negatives,
                        index: ind,
                    });
                }
            }
        }

        // other multi-negative components (pairs of pants and beyond); the
        // all-same-orbit full-multiplicity case is the trivial cover above
        let max_negs = (1 + self.budgets.max_branch) as usize;
        if max_negs >= 2 && !below.is_empty() {
            for negs in multisets(&below, max_negs) {
                if negs.len() < 2 {
                    continue;
                }
                let same_orbit_full = negs.iter().all(|n| n.orbit == end.orbit)
                    && negs.iter().map(|n| n.k).sum::<u32>() == end.k;
                if same_orbit_full {
                    continue;
                }
                if !self.class_sum_ok(&end, &negs)? {
                    continue;
                }
                let mut mu_sum = 0i64;
                for n in &negs {
                    mu_sum += self.cz(n)?;
                }
                let s = negs.len() as i64;
                let ind = -(1 - s) + mu_pos - mu_sum;
                if ind < 1 {
                    continue;
                }
                let foreign_single_orbit = negs
                    .iter()
                    .all(|n| n.orbit == negs[0].orbit);
                let kind = if foreign_single_orbit {
                    ComponentKind::CoverOfNontrivialCylinder
                } else {
                    ComponentKind::SomewhereInjective
                };
                opts.push(CurveComponent { kind, positive: end, negatives: negs, index: ind });
            }
        }

        opts.sort();
        opts.dedup();
        self.options.insert(end, (opts.clone(), truncated));
        Ok((opts, truncated))
    }

    fn dfs(&mut self, levels: &mut Vec<Vec<CurveComponent>>, open: Vec<OrbitIterate>, total: i64) -> Result<()> {
        if !levels.is_empty() && open.len() == self.negative_ends {
            let bottom_ok = match (self.negative_ends, self.bottom) {
                (1, Some(z)) => open[0] == z,
                _ => true,
            };
            if bottom_ok {
                self.results.insert(Building { levels: levels.clone(), total_index: total });
            }
        }
        if open.is_empty() {
            return Ok(());
        }
        if levels.len() as u32 >= self.budgets.max_levels {
            self.incomplete = true;
            return Ok(());
        }
        if open.len() as u32 > self.budgets.max_components_per_level {
            self.incomplete = true;
            return Ok(());
        }
        let mut per_end = Vec::with_capacity(open.len());
        for end in &open {
            let (opts, truncated) = self.component_options(*end)?;
            if truncated {
                self.incomplete = true;
            }
            per_end.push(opts);
        }
        let mut level: Vec<CurveComponent> = Vec::with_capacity(open.len());
        self.pick(levels, &per_end, &mut level, 0, total)?;
        Ok(())
    }

    fn pick(
        &mut self,
        levels: &mut Vec<Vec<CurveComponent>>,
        per_end: &[Vec<CurveComponent>],
        level: &mut Vec<CurveComponent>,
        slot: usize,
        total: i64,
    ) -> Result<()> {
        if slot == per_end.len() {
            if level.iter().all(|c| c.is_trivial()) {
                return Ok(());
            }
            let mut sorted = level.clone();
            sorted.sort();
            let open: Vec<OrbitIterate> = {
                let mut v: Vec<OrbitIterate> =
                    sorted.iter().flat_map(|c| c.negatives.iter().copied()).collect();
                v.sort();
                v
            };
            levels.push(sorted);
            self.dfs(levels, open, total)?;
            levels.pop();
            return Ok(());
        }
        for opt in per_end[slot].clone() {
            let next_total = total + opt.index;
            if next_total > self.max_total {
                continue;
            }
            level.push(opt);
            self.pick(levels, per_end, level, slot + 1, next_total)?;
            level.pop();
        }
        Ok(())
    }
}

/// Enumerates every admissible building over `set` with total index at most
/// `max_total` and the given number of unmatched negative ends, starting
/// from the given top ends (or every iterate under the action cap when
/// `tops` is `None`). `bottom` pins the single negative end when set.
pub fn enumerate_range(
    set: &OrbitSet,
    tops: Option<&[OrbitIterate]>,
    bottom: Option<OrbitIterate>,
    negative_ends: usize,
    max_total: i64,
    budgets: Budgets,
) -> Result<EnumerationResult> {
    if negative_ends > 1 {
        return Err(CchError::InvalidArgument(
            "buildings are enumerated with 0 or 1 unmatched negative ends".into(),
        ));
    }
    let universe = iterate_universe(set)?;
    let top_list: Vec<OrbitIterate> = match tops {
        Some(t) => t.to_vec(),
        None => universe.clone(),
    };
    let mut search = Search {
        set,
        universe,
        budgets,
        max_total,
        negative_ends,
        bottom,
        options: BTreeMap::new(),
        results: BTreeSet::new(),
        incomplete: false,
    };
    for top in top_list {
        let mut levels = Vec::new();
        search.dfs(&mut levels, vec![top], 0)?;
    }
    Ok(EnumerationResult {
        buildings: search.results.into_iter().collect(),
        incomplete: search.incomplete,
        budgets,
    })
}

/// Buildings with total index exactly `target_index`.
pub fn enumerate_buildings(
    set: &OrbitSet,
    target_index: i64,
    negative_ends: usize,
    budgets: Budgets,
) -> Result<EnumerationResult> {
    let all = enumerate_range(set, None, None, negative_ends, target_index, budgets)?;
    Ok(EnumerationResult {
        buildings: all.buildings.into_iter().filter(|b| b.total_index == target_index).collect(),
        incomplete: all.incomplete,
        budgets,
    })
}

/// Shape classification of an index-2 building with one positive and one
/// negative end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Index2Type {
    /// Unbroken index-2 cylinder.
    TypeI,
    /// Two index-1 cylinders through an intermediate orbit one index down.
    TypeII,
    /// Index-0 double-ended cover of a trivial cylinder with one negative
    /// end capped by an index-2 plane.
    TypeIII,
    /// Any other shape: a degeneration the index lemmas do not allow.
    Excluded,
}

impl std::fmt::Display for Index2Type {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Index2Type::TypeI => "type_i",
            Index2Type::TypeII => "type_ii",
            Index2Type::TypeIII => "type_iii",
            Index2Type::Excluded => "excluded",
        })
    }
}

fn is_nontrivial_cylinder(c: &CurveComponent) -> bool {
    !c.is_trivial() && c.negatives.len() == 1
}

fn is_plane(c: &CurveComponent) -> bool {
    c.negatives.is_empty()
}

/// Classifies an index-2 building with one positive and one negative end.
pub fn classify_index2(building: &Building) -> Result<Index2Type> {
    if building.total_index != 2 {
        return Err(CchError::InvalidArgument(format!(
            "classification applies to total index 2, got {}",
            building.total_index
        )));
    }
    if building.bottom_ends().len() != 1 {
        return Err(CchError::InvalidArgument(
            "classification applies to buildings with exactly one negative end".into(),
        ));
    }
    let levels = &building.levels;
    match levels.len() {
        1 => {
            if levels[0].len() == 1 && is_nontrivial_cylinder(&levels[0][0]) && levels[0][0].index == 2 {
                return Ok(Index2Type::TypeI);
            }
        }
        2 => {
            let (a, b) = (&levels[0], &levels[1]);
            if a.len() == 1
                && b.len() == 1
                && is_nontrivial_cylinder(&a[0])
                && is_nontrivial_cylinder(&b[0])
                && a[0].index == 1
                && b[0].index == 1
            {
                return Ok(Index2Type::TypeII);
            }
            if a.len() == 1
                && a[0].kind == ComponentKind::CoverOfTrivialCylinder
                && a[0].negatives.len() == 2
                && a[0].index == 0
                && b.len() == 2
            {
                let planes: Vec<&CurveComponent> = b.iter().filter(|c| is_plane(c)).collect();
                let trivials: Vec<&CurveComponent> = b.iter().filter(|c| c.is_trivial()).collect();
                if planes.len() == 1 && trivials.len() == 1 && planes[0].index == 2 {
                    return Ok(Index2Type::TypeIII);
                }
            }
        }
        _ => {}
    }
    Ok(Index2Type::Excluded)
}

/// Certificate for the index lemma suite.
#[derive(Debug, Clone)]
pub struct LemmaCertificate {
    pub budgets: Budgets,
    pub dynamically_convex: bool,
    pub dynamically_separated: bool,
    /// (a) no building with 0 negative ends has index < 2, and index 2 only
    /// as a single plane.
    pub a_pass: bool,
    pub a_witnesses: Vec<Building>,
    /// (b) no building with 1 negative end has index < 1, and index 1 only
    /// as a single cylinder.
    pub b_pass: bool,
    pub b_witnesses: Vec<Building>,
    /// (c) every index-2 one-negative-end building is type i, ii or iii.
    pub c_pass: bool,
    pub c_witnesses: Vec<Building>,
    /// (d) under dynamical separation, no type iii occurs. `None` when the
    /// set is not dynamically separated, so (d) does not apply.
    pub d_pass: Option<bool>,
    pub d_witnesses: Vec<Building>,
    pub incomplete: bool,
}

impl LemmaCertificate {
    pub fn all_pass(&self) -> bool {
        self.a_pass && self.b_pass && self.c_pass && self.d_pass.unwrap_or(true)
    }
}

/// Runs the full degeneration lemma suite over the orbit set within the
/// budgets. Failures are reported as witnesses, not errors.
pub fn verify_lemmas(set: &OrbitSet, budgets: Budgets) -> Result<LemmaCertificate> {
    let universe = iterate_universe(set)?;
    let k_cap = universe.iter().map(|e| e.k).max().unwrap_or(0).max(1);
    let convex = crate::dynamics::is_dynamically_convex(set, k_cap)?.passed;
    let separated = crate::dynamics::is_dynamically_separated(set, k_cap, None)?.passed;

    let closed = enumerate_range(set, None, None, 0, 2, budgets)?;
    let mut a_witnesses = Vec::new();
    for b in &closed.buildings {
        if b.total_index < 2 {
            a_witnesses.push(b.clone());
        } else if b.total_index == 2 {
            let single_plane =
                b.levels.len() == 1 && b.levels[0].len() == 1 && is_plane(&b.levels[0][0]);
            if !single_plane {
                a_witnesses.push(b.clone());
            }
        }
    }

    let open = enumerate_range(set, None, None, 1, 2, budgets)?;
    let mut b_witnesses = Vec::new();
    let mut c_witnesses = Vec::new();
    let mut d_witnesses = Vec::new();
    for b in &open.buildings {
        if b.total_index < 1 {
            b_witnesses.push(b.clone());
        } else if b.total_index == 1 {
            let single_cyl = b.levels.len() == 1
                && b.levels[0].len() == 1
                && is_nontrivial_cylinder(&b.levels[0][0]);
            if !single_cyl {
                b_witnesses.push(b.clone());
            }
        } else if b.total_index == 2 {
            match classify_index2(b)? {
                Index2Type::Excluded => c_witnesses.push(b.clone()),
                Index2Type::TypeIII => d_witnesses.push(b.clone()),
                _ => {}
            }
        }
    }

    Ok(LemmaCertificate {
        budgets,
        dynamically_convex: convex,
        dynamically_separated: separated,
        a_pass: a_witnesses.is_empty(),
        a_witnesses,
        b_pass: b_witnesses.is_empty(),
        b_witnesses,
        c_pass: c_witnesses.is_empty(),
        c_witnesses,
        d_pass: if separated { Some(d_witnesses.is_empty()) } else { None },
        d_witnesses,
        incomplete: closed.incomplete || open.incomplete,
    })
}

/// Certificate for the fixed-endpoint compactness check: every limit
/// configuration from `x` to `z` (index gap 2) is an unbroken index-2
/// cylinder or a once-broken pair of index-1 cylinders through an orbit `y`
/// with `mu(y) = mu(x) - 1`.
#[derive(Debug, Clone)]
pub struct ConditionDCertificate {
    pub pass: bool,
    pub witnesses: Vec<Building>,
    /// Every iterate (good or bad) at index `mu(x) - 1` in the right class
    /// and action window; bad orbits are listed, not excluded.
    pub intermediates: Vec<(OrbitIterate, bool)>,
    pub incomplete: bool,
    pub budgets: Budgets,
}

pub fn verify_condition_d(
    set: &OrbitSet,
    x: OrbitIterate,
    z: OrbitIterate,
    budgets: Budgets,
) -> Result<ConditionDCertificate> {
    let ox = set.orbit(x.orbit)?;
    let oz = set.orbit(z.orbit)?;
    let mu_x = ox.cz_index(x.k)?;
    let mu_z = oz.cz_index(z.k)?;
    if mu_x - mu_z != 2 {
        return Err(CchError::InvalidArgument(format!(
            "endpoints must have index gap 2, got {} - {}",
            mu_x, mu_z
        )));
    }
    if set.class_of(ox, x.k)? != set.class_of(oz, z.k)? {
        return Err(CchError::InvalidArgument("endpoints must share a homotopy class".into()));
    }

    let result = enumerate_range(set, Some(&[x]), Some(z), 1, 2, budgets)?;
    let mut witnesses = Vec::new();
    for b in result.buildings.iter().filter(|b| b.total_index == 2) {
        match classify_index2(b)? {
            Index2Type::TypeI | Index2Type::TypeII => {}
            _ => witnesses.push(b.clone()),
        }
    }

    let class = set.class_of(ox, x.k)?;
    let ax = ox.iterate_action(x.k)?;
    let az = oz.iterate_action(z.k)?;
    let mut intermediates = Vec::new();
    for e in iterate_universe(set)? {
        let o = set.orbit(e.orbit)?;
        if o.cz_index(e.k)? != mu_x - 1 || set.class_of(o, e.k)? != class {
            continue;
        }
        let a = o.iterate_action(e.k)?;
        if a > ax || a < az {
            continue;
        }
        intermediates.push((e, o.is_bad(e.k)?));
    }

    Ok(ConditionDCertificate {
        pass: witnesses.is_empty(),
        witnesses,
        intermediates,
        incomplete: result.incomplete,
        budgets,
    })
}

/// All partitions of `total` into at most `max_parts` positive parts,
/// each partition sorted descending.
pub fn partitions(total: u32, max_parts: usize) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, max_part: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        let hi = max_part.min(remaining);
        for part in (1..=hi).rev() {
            current.push(part);
            rec(remaining - part, part, slots - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    rec(total, total, max_parts, &mut current, &mut out);
    out
}

/// All multisets of size 2..=max_size drawn from `items`, each sorted.
fn multisets(items: &[OrbitIterate], max_size: usize) -> Vec<Vec<OrbitIterate>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        items: &[OrbitIterate],
        start: usize,
        max_size: usize,
        current: &mut Vec<OrbitIterate>,
        out: &mut Vec<Vec<OrbitIterate>>,
    ) {
        if current.len() >= 2 {
            out.push(current.clone());
        }
        if current.len() == max_size {
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            rec(items, i, max_size, current, out);
            current.pop();
        }
    }
    rec(items, 0, max_size, &mut current, &mut out);
    out
}
