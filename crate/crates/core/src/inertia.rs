//! Stratification of the image by boundaries, inert subgroups, and refreshing.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::lattice::{Pool, SubgroupLattice};
use crate::prefilter::{nu_fixpoint, DEFAULT_FIXPOINT_CAP};

#[derive(Clone, Debug)]
pub struct InertiaReport<S> {
    /// Cumulative levels, starting from the bottom level.
    pub levels: Vec<Vec<S>>,
    /// The terminal level.
    pub stable: Vec<S>,
    /// Image members outside the terminal level, in image order.
    pub inert: Vec<S>,
    /// For each member past the bottom level: an index carrying it and the
    /// members generating its boundary there.
    pub witnesses: Vec<(S, usize, Vec<S>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InertCharacterisation {
    /// Every boundary is generated by values at indices with nonzero components.
    pub boundaries_generated: bool,
    /// No inert subgroups.
    pub no_inert: bool,
    /// An index whose boundary is not so generated.
    pub witness: Option<usize>,
}

impl InertCharacterisation {
    pub fn agrees(&self) -> bool {
        self.boundaries_generated == self.no_inert
    }
}

#[derive(Clone, Debug)]
pub struct Refresh<L: SubgroupLattice> {
    pub filter: Filter<L>,
    /// Indices carrying the refreshed subgroup.
    pub carriers: Vec<usize>,
    /// The retained carriers.
    pub kept: Vec<usize>,
    /// The restricted products before the order-reversing closure.
    pub nu: Vec<L::Sub>,
}

#[derive(Clone, Debug)]
pub struct RefreshAll<L: SubgroupLattice> {
    pub filter: Filter<L>,
    /// Surjection from the lifted monoid onto the original, when a lift happened.
    pub lift: Option<Vec<usize>>,
    /// Subgroups refreshed, in order.
    pub refreshed: Vec<L::Sub>,
}

/// The trivial subgroup, or the minimal member when the lattice has none.
fn empty_join<L: SubgroupLattice>(pool: &mut Pool<'_, L>, f: &Filter<L>) -> Result<usize> {
    match pool.trivial() {
        Some(t) => Ok(t),
        None => Ok(pool.intern(&f.minimal_member()?)),
    }
}

pub fn b_sequence<L: SubgroupLattice>(f: &Filter<L>) -> Result<InertiaReport<L::Sub>> {
    let d = f.boundary()?;
    let mut pool = Pool::new(f.lattice.as_ref());
    let ids: Vec<usize> = f.values.iter().map(|v| pool.intern(v)).collect();
    let dids: Vec<usize> = d.values.iter().map(|v| pool.intern(v)).collect();
    let image: Vec<usize> = f.image().iter().map(|v| pool.intern(v)).collect();
    let bottom = match pool.trivial() {
        Some(t) if image.contains(&t) => t,
        _ => pool.intern(&f.minimal_member()?),
    };
    let mut level: BTreeSet<usize> = BTreeSet::from([bottom]);
    let mut levels = vec![vec![bottom]];
    let mut witnesses = Vec::new();
    loop {
        let mut next = level.clone();
        for s in f.monoid.elements() {
            if next.contains(&ids[s]) {
                continue;
            }
            let below: Vec<usize> = level.iter().copied().filter(|&k| pool.leq(k, dids[s])).collect();
            let mut acc = None;
            for &k in &below {
                acc = pool.join_opt(acc, k)?;
            }
            let gen = match acc {
                Some(a) => a,
                None => empty_join(&mut pool, f)?,
            };
            if gen == dids[s] {
                next.insert(ids[s]);
                witnesses.push((ids[s], s, below));
            }
        }
        if next == level {
            break;
        }
        let mut v: Vec<usize> = next.iter().copied().collect();
        v.sort_by_key(|&i| image.iter().position(|&j| j == i));
        levels.push(v);
        level = next;
    }
    let inert: Vec<usize> = image.iter().copied().filter(|i| !level.contains(i)).collect();
    let stable: Vec<usize> = image.iter().copied().filter(|i| level.contains(i)).collect();
    let get = |i: usize| pool.get(i).clone();
    Ok(InertiaReport {
        levels: levels.iter().map(|l| l.iter().map(|&i| get(i)).collect()).collect(),
        stable: stable.iter().map(|&i| get(i)).collect(),
        inert: inert.iter().map(|&i| get(i)).collect(),
        witnesses: witnesses.into_iter().map(|(h, s, b)| (get(h), s, b.into_iter().map(get).collect())).collect(),
    })
}

pub fn inert_subgroups<L: SubgroupLattice>(f: &Filter<L>) -> Result<Vec<L::Sub>> {
    Ok(b_sequence(f)?.inert)
}

/// Compares "every boundary is a join of values with nonzero components"
/// against "no inert subgroups", each computed on its own.
pub fn check_prop_inert<L: SubgroupLattice>(f: &Filter<L>) -> Result<InertCharacterisation> {
    let d = f.boundary()?;
    let mut pool = Pool::new(f.lattice.as_ref());
    let ids: Vec<usize> = f.values.iter().map(|v| pool.intern(v)).collect();
    let dids: Vec<usize> = d.values.iter().map(|v| pool.intern(v)).collect();
    let graded: BTreeSet<usize> = f.monoid.elements().filter(|&t| ids[t] != dids[t]).map(|t| ids[t]).collect();
    let mut witness = None;
    for s in f.monoid.elements() {
        let mut acc = None;
        for &k in &graded {
            if pool.leq(k, dids[s]) {
                acc = pool.join_opt(acc, k)?;
            }
        }
        let gen = match acc {
            Some(a) => a,
            None => empty_join(&mut pool, f)?,
        };
        if gen != dids[s] {
            witness = Some(s);
            break;
        }
    }
    let no_inert = b_sequence(f)?.inert.is_empty();
    Ok(InertCharacterisation { boundaries_generated: witness.is_none(), no_inert, witness })
}

/// Refreshes a minimal inert subgroup `h` of a progressive filter of a nilpotent group.
pub fn refresh_once<L: SubgroupLattice>(f: &Filter<L>, h: &L::Sub) -> Result<Refresh<L>> {
    if !f.lattice.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let prog = f.progress();
    if !prog.progressive {
        let labels: Vec<String> = prog.witnesses.iter().map(|&s| f.monoid.label(s)).collect();
        return Err(Error::NotProgressive(labels.join(", ")));
    }
    let inert = inert_subgroups(f)?;
    if !inert.contains(h) || inert.iter().any(|k| k != h && f.lattice.leq(k, h)) {
        return Err(Error::NotMinimalInert(f.lattice.describe(h)));
    }
    refresh_unchecked(f, h)
}

/// The refresh construction for `h` without precondition checks.
pub fn refresh_unchecked<L: SubgroupLattice>(f: &Filter<L>, h: &L::Sub) -> Result<Refresh<L>> {
    let m = &f.monoid;
    let carriers: Vec<usize> = m.elements().filter(|&s| &f.values[s] == h).collect();
    let mut kept = m.minimal_elements(&carriers);
    let order = m.linear_extension();
    loop {
        let mut parts: Vec<usize> = m.elements().filter(|s| !carriers.contains(s)).collect();
        parts.extend(kept.iter().copied());
        let reached = m.generated(&parts);
        if reached.iter().all(|&b| b) {
            break;
        }
        let next = order
            .iter()
            .copied()
            .find(|&s| carriers.contains(&s) && !reached[s] && !kept.contains(&s))
            .ok_or_else(|| Error::PreconditionFailed("carriers cannot complete a generating set".into()))?;
        kept.push(next);
    }
    kept.sort_unstable();
    let mut pool = Pool::new(f.lattice.as_ref());
    let pi: Vec<Option<usize>> = m
        .elements()
        .map(|s| {
            if !carriers.contains(&s) || kept.contains(&s) {
                Some(pool.intern(&f.values[s]))
            } else {
                None
            }
        })
        .collect();
    let nu = nu_fixpoint(m, &mut pool, &pi, None, DEFAULT_FIXPOINT_CAP)?;
    let trivial = pool.trivial();
    let nu: Vec<usize> = nu
        .into_iter()
        .map(|v| v.or(trivial).ok_or_else(|| Error::MissingEntry("trivial subgroup for an empty product".into())))
        .collect::<Result<_>>()?;
    let mut hat = Vec::with_capacity(m.len());
    for s in m.elements() {
        let mut acc = None;
        for t in m.elements() {
            if m.leq(s, t) {
                acc = pool.join_opt(acc, nu[t])?;
            }
        }
        hat.push(pool.get(acc.unwrap()).clone());
    }
    let nu = nu.iter().map(|&i| pool.get(i).clone()).collect();
    Ok(Refresh { filter: f.with_values(hat), carriers, kept, nu })
}

/// Lifts to a free monoid when the filter is not progressive, then refreshes
/// inert subgroups until none remain.  Candidates are tried smallest first.
/// A refresh that keeps the image and clears its subgroup is preferred;
/// otherwise the first one that changes the filter to an unseen one is taken.
///
/// An inert value parked on a saturated coordinate cannot be refreshed in a
/// truncated model, since the coordinate absorbs itself.  When refreshing
/// stalls, the free lift is widened by one step per coordinate and the whole
/// process restarts, at most once per image member.
pub fn refresh_all<L: SubgroupLattice>(f: &Filter<L>) -> Result<RefreshAll<L>> {
    if !f.lattice.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let (start, lift) = if f.is_progressive() {
        (f.clone(), None)
    } else {
        let (free, mu) = f.monoid.lift_free(None)?;
        (f.transport(Arc::new(free), &mu), Some(mu))
    };
    let stalled = match refresh_from(f, start, lift) {
        Err(Error::PreconditionFailed(msg)) => msg,
        other => return other,
    };
    let natural: Vec<u32> = match f.monoid.lift_free(None) {
        Ok((free, _)) => free.factors().iter().map(|c| c.index).collect(),
        Err(_) => return Err(Error::PreconditionFailed(stalled)),
    };
    for extra in 1..=f.image().len() as u32 {
        let bounds: Vec<u32> = natural.iter().map(|&b| b + extra).collect();
        let (free, mu) = f.monoid.lift_free(Some(&bounds))?;
        match refresh_from(f, f.transport(Arc::new(free), &mu), Some(mu)) {
            Err(Error::PreconditionFailed(_)) => continue,
            other => return other,
        }
    }
    Err(Error::PreconditionFailed(stalled))
}

fn refresh_from<L: SubgroupLattice>(f: &Filter<L>, start: Filter<L>, lift: Option<Vec<usize>>) -> Result<RefreshAll<L>> {
    let prog = start.progress();
    if !prog.progressive {
        let labels: Vec<String> = prog.witnesses.iter().map(|&s| start.monoid.label(s)).collect();
        return Err(Error::NotProgressive(labels.join(", ")));
    }
    let mut cur = start;
    let n = f.image().len().max(2);
    let cap = n * n;
    let mut refreshed = Vec::new();
    let mut seen: BTreeSet<Vec<L::Sub>> = BTreeSet::from([cur.values.clone()]);
    for _ in 0..cap {
        let mut inert = inert_subgroups(&cur)?;
        if inert.is_empty() {
            return Ok(RefreshAll { filter: cur, lift, refreshed });
        }
        inert.sort_by(|a, b| f.lattice.order(a).cmp(&f.lattice.order(b)).then(a.cmp(b)));
        let image: BTreeSet<L::Sub> = cur.values.iter().cloned().collect();
        let mut cleared = None;
        let mut changed = None;
        for h in &inert {
            let r = refresh_unchecked(&cur, h)?;
            let new_image: BTreeSet<L::Sub> = r.filter.values.iter().cloned().collect();
            if !image.is_subset(&new_image) || seen.contains(&r.filter.values) {
                continue;
            }
            if !inert_subgroups(&r.filter)?.contains(h) {
                cleared = Some((h.clone(), r.filter));
                break;
            }
            if changed.is_none() {
                changed = Some((h.clone(), r.filter));
            }
        }
        match cleared.or(changed) {
            Some((h, next)) => {
                seen.insert(next.values.clone());
                cur = next;
                refreshed.push(h);
            }
            None => return Err(Error::PreconditionFailed("no inert subgroup could be refreshed".into())),
        }
    }
    if inert_subgroups(&cur)?.is_empty() {
        return Ok(RefreshAll { filter: cur, lift, refreshed });
    }
    Err(Error::IterationCapExceeded(cap))
}

/// Whether the derived series of `d phi_0` reaches the minimal member.
pub fn solvability_check<L: SubgroupLattice>(f: &Filter<L>) -> Result<bool> {
    let d = f.boundary()?;
    let top = &d.values[f.monoid.zero()];
    let floor = f.minimal_member()?;
    f.lattice.derived_reaches(top, &floor)
}
