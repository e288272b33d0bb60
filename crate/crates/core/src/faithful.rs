//! Filtered and faithful generating sets, faithful filters, and the map from
//! the graded Lie ring back to the group.

use std::collections::{BTreeSet, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::inertia::inert_subgroups;
use crate::lattice::{Pool, SubgroupLattice};
use crate::lie::{GradedLieRing, LieElem};
use crate::pc::{Elem, PcGroup, Subgroup, DEFAULT_ENUM_CAP};

/// Largest number of distinct values for subset enumeration.
pub const SUBSET_CAP: usize = 16;
/// Random alternate bases checked by [`is_full`].
pub const DEFAULT_SPOT_CHECKS: usize = 5;

/// A subset of image values whose intersection is not generated by the
/// common members of the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetFailure {
    pub values: Vec<Subgroup>,
    pub intersection: Subgroup,
    pub generated: Subgroup,
}

/// A subset of image values whose product meets the set in more than the
/// union of the parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinFailure {
    pub values: Vec<Subgroup>,
    pub product: Subgroup,
    /// Positions in the generating set of members lying in the product.
    pub in_product: Vec<usize>,
    /// Positions lying in some value of the subset.
    pub in_union: Vec<usize>,
}

/// A member of the set that does not sit at exactly one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexFailure {
    pub position: usize,
    /// Indices `s` with the member in `phi_s` but outside `d phi_s`.
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GensetVerdict {
    pub gens: Vec<Elem>,
    pub weakly_filtered: bool,
    pub filtered: bool,
    pub faithful: bool,
    /// First index where the members fail to generate the value.
    pub weak_witness: Option<usize>,
    pub meet_witness: Option<MeetFailure>,
    /// The failing subset with the smallest product.
    pub join_witness: Option<JoinFailure>,
    pub join_failures: Vec<JoinFailure>,
    pub index_witness: Option<IndexFailure>,
    /// Index of each member when it is unique.
    pub index_of: Vec<Option<usize>>,
    /// On filtered sets: also filtered by the boundary filter.
    pub filtered_by_boundary: Option<bool>,
    /// On filtered sets: the lattice closure of the image is distributive.
    pub distributive: Option<bool>,
}

impl GensetVerdict {
    pub fn faithfully_filtered(&self) -> bool {
        self.filtered && self.faithful
    }
}

fn members(g: &PcGroup, h: &Subgroup, xs: &[Elem]) -> Vec<usize> {
    (0..xs.len()).filter(|&i| g.contains(h, &xs[i])).collect()
}

fn picks(xs: &[Elem], idx: &[usize]) -> Vec<Elem> {
    idx.iter().map(|&i| xs[i].clone()).collect()
}

/// `<phi_s meet X> = phi_s` for every `s`; returns the first failing index.
pub fn weak_failure(f: &Filter<PcGroup>, xs: &[Elem]) -> Option<usize> {
    let g = f.lattice.as_ref();
    let mut checked: HashSet<&Subgroup> = HashSet::new();
    for s in f.monoid.elements() {
        let v = &f.values[s];
        if !checked.insert(v) {
            continue;
        }
        if &g.subgroup(&picks(xs, &members(g, v, xs))) != v {
            return Some(s);
        }
    }
    None
}

pub fn is_weakly_filtered(f: &Filter<PcGroup>, xs: &[Elem]) -> bool {
    weak_failure(f, xs).is_none()
}

/// The intersection and product conditions over every nonempty subset of
/// distinct values.  Returns the first meet failure and all join failures.
pub fn lattice_conditions(
    f: &Filter<PcGroup>,
    xs: &[Elem],
) -> Result<(Option<MeetFailure>, Vec<JoinFailure>)> {
    let g = f.lattice.as_ref();
    let image = f.image();
    if image.len() > SUBSET_CAP {
        return Err(Error::CapExceeded(SUBSET_CAP));
    }
    let mut pool = Pool::new(g);
    let ids: Vec<usize> = image.iter().map(|v| pool.intern(v)).collect();
    let inside: Vec<BTreeSet<usize>> = image.iter().map(|v| members(g, v, xs).into_iter().collect()).collect();
    let mut meet_failure = None;
    let mut join_failures = Vec::new();
    for mask in 1u32..(1u32 << image.len()) {
        let chosen: Vec<usize> = (0..image.len()).filter(|&i| mask & (1 << i) != 0).collect();
        let mut meet = ids[chosen[0]];
        let mut join = ids[chosen[0]];
        let mut common = inside[chosen[0]].clone();
        let mut union = inside[chosen[0]].clone();
        for &i in &chosen[1..] {
            meet = pool.meet(meet, ids[i])?;
            join = pool.join(join, ids[i])?;
            common = common.intersection(&inside[i]).copied().collect();
            union.extend(inside[i].iter().copied());
        }
        if meet_failure.is_none() {
            let common: Vec<usize> = common.into_iter().collect();
            let generated = g.subgroup(&picks(xs, &common));
            if &generated != pool.get(meet) {
                meet_failure = Some(MeetFailure {
                    values: chosen.iter().map(|&i| image[i].clone()).collect(),
                    intersection: pool.get(meet).clone(),
                    generated,
                });
            }
        }
        let in_product = members(g, pool.get(join), xs);
        let in_union: Vec<usize> = union.into_iter().collect();
        if in_product != in_union {
            join_failures.push(JoinFailure {
                values: chosen.iter().map(|&i| image[i].clone()).collect(),
                product: pool.get(join).clone(),
                in_product,
                in_union,
            });
        }
    }
    Ok((meet_failure, join_failures))
}

/// For each member, the indices where it lies in the value but not the boundary.
pub fn index_sets(f: &Filter<PcGroup>, d: &Filter<PcGroup>, xs: &[Elem]) -> Vec<Vec<usize>> {
    let g = f.lattice.as_ref();
    xs.iter()
        .map(|x| {
            f.monoid
                .elements()
                .filter(|&s| g.contains(&f.values[s], x) && !g.contains(&d.values[s], x))
                .collect()
        })
        .collect()
}

/// Every member lies in `phi_s - d phi_s` for exactly one index `s`.
pub fn faithful_failure(f: &Filter<PcGroup>, xs: &[Elem]) -> Result<Option<IndexFailure>> {
    let d = f.boundary()?;
    Ok(index_sets(f, &d, xs)
        .into_iter()
        .enumerate()
        .find(|(_, v)| v.len() != 1)
        .map(|(position, indices)| IndexFailure { position, indices }))
}

pub fn is_faithful_genset(f: &Filter<PcGroup>, xs: &[Elem]) -> Result<bool> {
    Ok(faithful_failure(f, xs)?.is_none())
}

fn filtered_core(f: &Filter<PcGroup>, xs: &[Elem]) -> Result<bool> {
    if weak_failure(f, xs).is_some() {
        return Ok(false);
    }
    let (meet, joins) = lattice_conditions(f, xs)?;
    Ok(meet.is_none() && joins.is_empty())
}

pub fn is_filtered(f: &Filter<PcGroup>, xs: &[Elem]) -> Result<bool> {
    filtered_core(f, xs)
}

/// All generating-set verdicts with witnesses.  On filtered sets the
/// boundary filter and distributivity are checked as well.
pub fn check_genset(f: &Filter<PcGroup>, xs: &[Elem]) -> Result<GensetVerdict> {
    let weak_witness = weak_failure(f, xs);
    let (meet_witness, mut join_failures) = lattice_conditions(f, xs)?;
    let g = f.lattice.as_ref();
    join_failures.sort_by_key(|j| g.order(&j.product));
    let filtered = weak_witness.is_none() && meet_witness.is_none() && join_failures.is_empty();
    let d = f.boundary()?;
    let sets = index_sets(f, &d, xs);
    let index_witness = sets
        .iter()
        .enumerate()
        .find(|(_, v)| v.len() != 1)
        .map(|(position, indices)| IndexFailure { position, indices: indices.clone() });
    let index_of = sets.iter().map(|v| if v.len() == 1 { Some(v[0]) } else { None }).collect();
    let (filtered_by_boundary, distributive) = if filtered {
        let lat = f.lattice_closure(crate::filter::DEFAULT_LATTICE_CAP)?;
        (Some(filtered_core(&d, xs)?), Some(lat.is_distributive()))
    } else {
        (None, None)
    };
    Ok(GensetVerdict {
        gens: xs.to_vec(),
        weakly_filtered: weak_witness.is_none(),
        filtered,
        faithful: index_witness.is_none(),
        weak_witness,
        meet_witness,
        join_witness: join_failures.first().cloned(),
        join_failures,
        index_witness,
        index_of,
        filtered_by_boundary,
        distributive,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaithfulFilterVerdict<S> {
    pub faithful: bool,
    /// Pairwise incomparable values whose intersection exceeds that of their boundaries.
    pub witness: Option<Vec<S>>,
    /// Two graded indices whose layers `phi_s - d phi_s` share an element.
    pub overlap: Option<(usize, usize)>,
}

/// The antichain identity (for pairwise incomparable values, the
/// intersection equals the intersection of boundaries at every index
/// carrying them) together with disjointness of the layers
/// `phi_s - d phi_s` at distinct indices.
pub fn is_faithful_filter<L: SubgroupLattice>(f: &Filter<L>) -> Result<FaithfulFilterVerdict<L::Sub>> {
    let image = f.image();
    if image.len() > SUBSET_CAP {
        return Err(Error::CapExceeded(SUBSET_CAP));
    }
    let d = f.boundary()?;
    let mut pool = Pool::new(f.lattice.as_ref());
    let ids: Vec<usize> = image.iter().map(|v| pool.intern(v)).collect();
    // lowest boundary under each value
    let mut low = Vec::with_capacity(image.len());
    for v in &image {
        let mut acc: Option<usize> = None;
        for s in f.monoid.elements().filter(|&s| &f.values[s] == v) {
            let b = pool.intern(&d.values[s]);
            acc = Some(match acc {
                None => b,
                Some(a) => pool.meet(a, b)?,
            });
        }
        low.push(acc.expect("value is carried"));
    }
    let n = image.len();
    let mut incomparable = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            incomparable[i][j] = i != j && !pool.leq(ids[i], ids[j]) && !pool.leq(ids[j], ids[i]);
        }
    }
    let mut witness = None;
    for mask in 1u32..(1u32 << n) {
        let chosen: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if chosen.len() < 2 {
            continue;
        }
        if !chosen.iter().all(|&i| chosen.iter().all(|&j| i == j || incomparable[i][j])) {
            continue;
        }
        let mut meet = ids[chosen[0]];
        let mut bmeet = low[chosen[0]];
        for &i in &chosen[1..] {
            meet = pool.meet(meet, ids[i])?;
            bmeet = pool.meet(bmeet, low[i])?;
        }
        if !pool.leq(meet, bmeet) {
            witness = Some(chosen.iter().map(|&i| image[i].clone()).collect());
            break;
        }
    }
    let overlap = layer_overlap(f, &d, &mut pool)?;
    Ok(FaithfulFilterVerdict { faithful: witness.is_none() && overlap.is_none(), witness, overlap })
}

/// Graded indices `s < t` (in the linear extension) whose layers meet.  A
/// group is never the union of two proper subgroups, so the layers are
/// disjoint exactly when the intersection lies in one of the two boundaries.
fn layer_overlap<L: SubgroupLattice>(
    f: &Filter<L>,
    d: &Filter<L>,
    pool: &mut Pool<'_, L>,
) -> Result<Option<(usize, usize)>> {
    let graded: Vec<(usize, usize, usize)> = f
        .monoid
        .linear_extension()
        .into_iter()
        .filter(|&s| f.values[s] != d.values[s])
        .map(|s| (s, pool.intern(&f.values[s]), pool.intern(&d.values[s])))
        .collect();
    for (i, &(s, vs, ds)) in graded.iter().enumerate() {
        for &(t, vt, dt) in &graded[i + 1..] {
            let m = pool.meet(vs, vt)?;
            if !pool.leq(m, ds) && !pool.leq(m, dt) {
                return Ok(Some((s, t)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullyFaithful {
    pub faithful: bool,
    pub inert_free: bool,
    pub zero_is_boundary: bool,
}

impl FullyFaithful {
    pub fn holds(&self) -> bool {
        self.faithful && self.inert_free && self.zero_is_boundary
    }
}

/// Faithful, free of inert subgroups, and `phi_0 = d phi_0`.  Finite monoids
/// give the descending chain condition for free.
pub fn is_fully_faithful<L: SubgroupLattice>(f: &Filter<L>) -> Result<FullyFaithful> {
    let d = f.boundary()?;
    let z = f.monoid.zero();
    Ok(FullyFaithful {
        faithful: is_faithful_filter(f)?.faithful,
        inert_free: inert_subgroups(f)?.is_empty(),
        zero_is_boundary: f.values[z] == d.values[z],
    })
}

/// Lifts of an ordered graded basis.
pub fn preimage_genset(ring: &GradedLieRing, basis: &[LieElem]) -> Result<Vec<Elem>> {
    basis.iter().map(|v| ring.lift(v)).collect()
}

#[derive(Clone, Debug)]
pub struct FullReport {
    /// The ring is zero and the preimage empty.
    pub degenerate: bool,
    pub canonical: GensetVerdict,
    pub fully_faithful: bool,
    /// Random alternate bases whose preimages were checked, and how many were filtered.
    pub spot_checked: usize,
    pub spot_filtered: usize,
}

impl FullReport {
    pub fn full(&self) -> bool {
        self.canonical.filtered
    }
}

/// Lifts the canonical graded basis and tests it.  For fully faithful
/// filters, random alternate bases are lifted and tested too.
pub fn is_full(f: &Filter<PcGroup>, spot_checks: usize, seed: u64) -> Result<FullReport> {
    let ring = GradedLieRing::from_pc_filter(f)?;
    let xs = preimage_genset(&ring, &ring.graded_basis())?;
    let canonical = check_genset(f, &xs)?;
    let fully_faithful = is_fully_faithful(f)?.holds();
    let mut spot_checked = 0;
    let mut spot_filtered = 0;
    if fully_faithful && canonical.filtered && !ring.is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..spot_checks {
            let b = ring.random_graded_basis(&mut rng)?;
            spot_checked += 1;
            if is_filtered(f, &preimage_genset(&ring, &b)?)? {
                spot_filtered += 1;
            }
        }
    }
    Ok(FullReport { degenerate: ring.is_zero(), canonical, fully_faithful, spot_checked, spot_filtered })
}

#[derive(Clone, Debug)]
pub struct BijectionCertificate {
    pub basis: Vec<LieElem>,
    /// Index label of each basis vector.
    pub basis_labels: Vec<String>,
    pub lifts: Vec<Elem>,
    pub map: String,
    pub lie_order: u128,
    pub target_order: u128,
    pub surjective: bool,
    /// Known when the ring was enumerated.
    pub injective: Option<bool>,
    pub lifts_pcgs: bool,
    pub inert_present: bool,
    pub fully_faithful: bool,
}

impl BijectionCertificate {
    pub fn bijective(&self) -> bool {
        self.surjective && self.injective == Some(true)
    }
}

fn additive_order(ring: &GradedLieRing, v: &[u64]) -> u64 {
    let mut n = 1u64;
    for (i, &c) in v.iter().enumerate() {
        if c != 0 {
            let q = ring.moduli()[i];
            let k = q / gcd(q, c);
            n = n / gcd(n, k) * k;
        }
    }
    n
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The map `sum k_y y -> prod x_y^{k_y}` over the ordered basis, with
/// surjectivity and injectivity decided by enumeration when `|L| <= cap`.
pub fn pi_map(f: &Filter<PcGroup>, ring: &GradedLieRing, basis: &[LieElem], cap: usize) -> Result<BijectionCertificate> {
    let g = f.lattice.as_ref();
    let d = f.boundary()?;
    let target = &d.values[f.monoid.zero()];
    let lifts = preimage_genset(ring, basis)?;
    let basis_labels = basis
        .iter()
        .map(|v| {
            let i = v.iter().position(|&c| c != 0).expect("nonzero basis vector");
            ring.components[ring.owner(i)].label.clone()
        })
        .collect();
    let lie_order = ring.total_order();
    let target_order = g.order(target);
    let inert_present = !inert_subgroups(f)?.is_empty();
    let fully_faithful = is_fully_faithful(f)?.holds();
    let generated = g.subgroup(&lifts);
    let lifts_pcgs = &generated == target && g.is_pcgs(&lifts);
    let (surjective, injective) = if lie_order <= cap as u128 {
        let orders: Vec<u64> = basis.iter().map(|v| additive_order(ring, v)).collect();
        let powers: Vec<Vec<Elem>> = lifts
            .iter()
            .zip(&orders)
            .map(|(x, &n)| {
                let mut out = vec![g.identity()];
                for _ in 1..n {
                    out.push(g.mul(out.last().unwrap(), x));
                }
                out
            })
            .collect();
        let mut images: HashSet<Elem> = HashSet::new();
        let mut hits = 0u128;
        let mut outside = false;
        let mut counter = vec![0usize; basis.len()];
        loop {
            let mut x = g.identity();
            for (i, &k) in counter.iter().enumerate() {
                if k != 0 {
                    x = g.mul(&x, &powers[i][k]);
                }
            }
            if !g.contains(target, &x) {
                outside = true;
            }
            images.insert(x);
            hits += 1;
            let mut i = 0;
            while i < counter.len() {
                counter[i] += 1;
                if (counter[i] as u64) < orders[i] {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
            if i == counter.len() {
                break;
            }
        }
        let surjective = !outside && images.len() as u128 == target_order;
        (surjective, Some(hits == images.len() as u128 && hits == lie_order))
    } else {
        (&generated == target, None)
    };
    Ok(BijectionCertificate {
        basis: basis.to_vec(),
        basis_labels,
        lifts,
        map: "sum k_y y -> prod x_y^k_y in basis order".into(),
        lie_order,
        target_order,
        surjective,
        injective,
        lifts_pcgs,
        inert_present,
        fully_faithful,
    })
}

/// Image in the ring of a faithfully indexed set: each member projected into
/// the component at its index.  `None` when some member has no unique index
/// or the images do not form a graded basis.
pub fn genset_image(f: &Filter<PcGroup>, ring: &GradedLieRing, xs: &[Elem]) -> Result<Option<Vec<LieElem>>> {
    let d = f.boundary()?;
    let sets = index_sets(f, &d, xs);
    let mut out = Vec::with_capacity(xs.len());
    for (x, s) in xs.iter().zip(&sets) {
        if s.len() != 1 {
            return Ok(None);
        }
        let Some(c) = ring.component_at(s[0]) else { return Ok(None) };
        out.push(ring.project(c, x)?);
    }
    Ok(if is_graded_basis(ring, &out) { Some(out) } else { None })
}

/// Homogeneous vectors spanning each component with the right count.
pub fn is_graded_basis(ring: &GradedLieRing, vs: &[LieElem]) -> bool {
    for (c, comp) in ring.components.iter().enumerate() {
        let rows: Vec<Vec<u64>> = vs
            .iter()
            .filter(|v| v.iter().enumerate().any(|(i, &x)| x != 0 && ring.owner(i) == c))
            .map(|v| v[comp.offset..comp.offset + comp.rank()].to_vec())
            .collect();
        if rows.len() != comp.rank() {
            return false;
        }
        let p = comp.invariants[0];
        if comp.invariants.iter().any(|&q| q != p) || crate::lie::rank_mod_p(&rows, p) != comp.rank() {
            return false;
        }
    }
    vs.iter().all(|v| {
        let owners: BTreeSet<usize> = (0..v.len()).filter(|&i| v[i] != 0).map(|i| ring.owner(i)).collect();
        owners.len() == 1
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub bases_checked: usize,
    pub exhaustive: bool,
    pub distinct_pcgs: usize,
    pub all_pcgs: bool,
    pub all_filtered: bool,
    /// Each lifted pcgs maps back onto the basis it came from.
    pub all_round_trip: bool,
}

impl Correspondence {
    pub fn holds(&self) -> bool {
        self.all_pcgs && self.all_filtered && self.all_round_trip && self.distinct_pcgs == self.bases_checked
    }
}

/// Graded bases against filtered pcgs of `d phi_0`: every basis (or a sample
/// of `sample_size` random ones) is lifted, tested, and mapped back.
pub fn basis_pcgs_correspondence(f: &Filter<PcGroup>, sample_size: usize, seed: u64) -> Result<Correspondence> {
    if !is_fully_faithful(f)?.holds() {
        return Err(Error::PreconditionFailed("filter is not fully faithful".into()));
    }
    let ring = GradedLieRing::from_pc_filter(f)?;
    let g = f.lattice.as_ref();
    let d = f.boundary()?;
    let target = &d.values[f.monoid.zero()];
    let count = ring.count_graded_bases()?;
    let exhaustive = count <= sample_size as u128;
    let bases = if exhaustive {
        ring.enumerate_graded_bases(sample_size)?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..sample_size).map(|_| ring.random_graded_basis(&mut rng)).collect::<Result<_>>()?
    };
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let (mut all_pcgs, mut all_filtered, mut all_round_trip) = (true, true, true);
    for b in &bases {
        let xs = preimage_genset(&ring, b)?;
        all_pcgs &= &g.subgroup(&xs) == target && g.is_pcgs(&xs);
        all_filtered &= is_filtered(f, &xs)?;
        all_round_trip &= genset_image(f, &ring, &xs)?.as_ref() == Some(b);
        seen.insert(xs);
    }
    Ok(Correspondence {
        bases_checked: bases.len(),
        exhaustive,
        distinct_pcgs: seen.len(),
        all_pcgs,
        all_filtered,
        all_round_trip,
    })
}

/// Enumeration cap used for the injectivity check.
pub const DEFAULT_PI_CAP: usize = DEFAULT_ENUM_CAP;
