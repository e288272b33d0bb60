//! Command dispatch for the `pcfilter` binary: text reports and DOT output.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::faithful::{self, DEFAULT_PI_CAP, DEFAULT_SPOT_CHECKS};
use crate::filter::{Filter, LatticeClosure, DEFAULT_LATTICE_CAP};
use crate::fspec::{Backend, Document, PcBackend};
use crate::inertia;
use crate::lattice::SubgroupLattice;
use crate::lie::GradedLieRing;
use crate::monoid::Monoid;
use crate::pc::PcGroup;
use crate::prefilter::{insert_subgroups, Prefilter};
use crate::table::SubgroupTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Boundary,
    Close,
    Lie,
    Inert,
    Refresh,
    Faithful,
    Bijection,
    Hasse,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Boundary => "boundary",
            Command::Close => "close",
            Command::Lie => "lie",
            Command::Inert => "inert",
            Command::Refresh => "refresh",
            Command::Faithful => "faithful",
            Command::Bijection => "bijection",
            Command::Hasse => "hasse",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub cap: Option<usize>,
    pub seed: u64,
    pub class_hint: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: String,
    pub dot: Option<String>,
    /// 0 for success or a true verdict, 1 for a false verdict, 2 for errors.
    pub code: i32,
}

#[derive(Default)]
struct Report {
    text: String,
}

impl Report {
    fn put(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.text, "{}: {}", key, value);
    }
}

/// `0`, `e1`, ... for the zero and unit vectors, the coordinate label otherwise.
pub fn index_name(m: &Monoid, s: usize) -> String {
    if s == m.zero() {
        return "0".into();
    }
    let label = m.label(s);
    if label == "inf" || label.contains('*') {
        return label;
    }
    let c = m.coords(s);
    if c.iter().filter(|&&x| x != 0).count() == 1 {
        if let Some(i) = c.iter().position(|&x| x == 1) {
            return format!("e{}", i + 1);
        }
    }
    label
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Names for subgroups in reports.
trait Naming: SubgroupLattice {
    fn name(&self, ctx: &Backend, s: &Self::Sub) -> String;
}

impl Naming for PcGroup {
    fn name(&self, ctx: &Backend, s: &Self::Sub) -> String {
        match ctx {
            Backend::Pc(be) => be.name_of(s).map(str::to_string).unwrap_or_else(|| self.describe(s)),
            Backend::Table(_) => self.describe(s),
        }
    }
}

impl Naming for SubgroupTable {
    fn name(&self, _ctx: &Backend, s: &usize) -> String {
        self.describe(s)
    }
}

fn resolve<L: SubgroupLattice>(lookup: &dyn Fn(&str) -> Option<L::Sub>, name: &str) -> Result<L::Sub> {
    lookup(name).ok_or_else(|| Error::UnresolvedName { line: 0, name: name.into() })
}

fn build_filter<L: SubgroupLattice>(
    doc: &Document,
    lattice: Arc<L>,
    lookup: &dyn Fn(&str) -> Option<L::Sub>,
    names: &[String],
) -> Result<Filter<L>> {
    let values = names.iter().map(|n| resolve::<L>(lookup, n)).collect::<Result<Vec<_>>>()?;
    Filter::new(doc.monoid.clone(), lattice, values)
}

/// The filter a command works on: the `[filter]` block, closed after
/// insertion when `[insert]` is present, or the closure of `[prefilter]`.
fn primary<L: SubgroupLattice>(
    doc: &Document,
    lattice: Arc<L>,
    lookup: &dyn Fn(&str) -> Option<L::Sub>,
    opts: &Options,
) -> Result<(Filter<L>, Option<Prefilter<L>>)> {
    match (&doc.filter, &doc.prefilter) {
        (Some(names), _) => {
            let f = build_filter(doc, lattice, lookup, names)?;
            match &doc.insert {
                Some(ins) => {
                    let entries = ins
                        .entries
                        .iter()
                        .map(|(c, n)| Ok((c.clone(), resolve::<L>(lookup, n)?)))
                        .collect::<Result<Vec<_>>>()?;
                    let (closed, p) = insert_subgroups(&f, &ins.extension, &entries, opts.class_hint)?;
                    Ok((closed, Some(p)))
                }
                None => Ok((f, None)),
            }
        }
        (None, Some(entries)) => {
            let e = entries.iter().map(|(s, n)| Ok((*s, resolve::<L>(lookup, n)?))).collect::<Result<Vec<_>>>()?;
            let p = Prefilter::new(doc.monoid.clone(), lattice, e);
            let report = p.validate();
            if !report.valid {
                return Err(Error::PrefilterInvalid(format!("{:?}", report.problems)));
            }
            Ok((p.close(opts.class_hint)?, Some(p)))
        }
        (None, None) => Err(Error::PreconditionFailed("no [filter] or [prefilter] block".into())),
    }
}

/// The filter a pc-backed document describes.
pub fn pc_filter(doc: &Document, opts: &Options) -> Result<Filter<PcGroup>> {
    let be = doc.pc().ok_or_else(|| Error::PreconditionFailed("document has no [group] block".into()))?;
    let lookup = |n: &str| be.subgroup(n).cloned();
    Ok(primary(doc, be.group.clone(), &lookup, opts)?.0)
}

/// The filter a table-backed document describes.
pub fn table_filter(doc: &Document, opts: &Options) -> Result<Filter<SubgroupTable>> {
    match &doc.backend {
        Backend::Table(t) => {
            let lookup = |n: &str| t.node(n);
            Ok(primary(doc, t.clone(), &lookup, opts)?.0)
        }
        Backend::Pc(_) => Err(Error::PreconditionFailed("document has no [table] block".into())),
    }
}

fn value_table<L: Naming>(r: &mut Report, ctx: &Backend, key: &str, f: &Filter<L>) {
    for s in f.monoid.linear_extension() {
        r.put(&format!("{} {}", key, index_name(&f.monoid, s)), f.lattice.name(ctx, &f.values[s]));
    }
}

fn dot<L: Naming>(ctx: &Backend, lattice: &L, lat: &LatticeClosure<L::Sub>) -> String {
    let mut out = String::from("graph lattice {\n");
    for (i, n) in lattice_nodes(ctx, lattice, lat).iter().enumerate() {
        let _ = writeln!(out, "  n{} [label=\"{}\"];", i, n.replace('"', "\\\""));
    }
    for &(a, b) in &lat.edges {
        let _ = writeln!(out, "  n{} -- n{};", a, b);
    }
    out.push_str("}\n");
    out
}

fn lattice_nodes<L: Naming>(ctx: &Backend, lattice: &L, lat: &LatticeClosure<L::Sub>) -> Vec<String> {
    lat.nodes.iter().map(|n| format!("{} ({})", lattice.name(ctx, n), lattice.order(n))).collect()
}

fn generic<L: Naming>(
    cmd: Command,
    doc: &Document,
    lattice: Arc<L>,
    lookup: &dyn Fn(&str) -> Option<L::Sub>,
    opts: &Options,
    r: &mut Report,
) -> Result<(i32, Option<String>)> {
    let ctx = &doc.backend;
    let (f, pre) = primary(doc, lattice.clone(), lookup, opts)?;
    let cap = opts.cap.unwrap_or(DEFAULT_LATTICE_CAP);
    match cmd {
        Command::Validate => {
            let v = f.validate();
            r.put("valid", yes(v.valid));
            for x in &v.violations {
                r.put("violation", format!("{:?}", x));
            }
            Ok((if v.valid { 0 } else { 1 }, None))
        }
        Command::Boundary => {
            let d = f.boundary()?;
            value_table(r, ctx, "value", &f);
            value_table(r, ctx, "boundary", &d);
            let v = d.validate().valid;
            r.put("boundary_valid", yes(v));
            r.put("equal", yes(d.values == f.values));
            Ok((if v { 0 } else { 1 }, None))
        }
        Command::Close => {
            let Some(p) = pre else {
                return Err(Error::PreconditionFailed("close needs [prefilter] or [insert]".into()));
            };
            r.put("domain", p.domain().len());
            r.put("monoid_size", f.monoid.len());
            value_table(r, ctx, "closed", &f);
            let v = f.validate().valid;
            r.put("valid", yes(v));
            Ok((if v { 0 } else { 1 }, None))
        }
        Command::Lie => {
            let ring = GradedLieRing::from_filter(&f)?;
            lie_report(&f.monoid, &ring, r);
            Ok((0, None))
        }
        Command::Inert => {
            let b = inertia::b_sequence(&f)?;
            for (i, level) in b.levels.iter().enumerate() {
                let names: Vec<String> = level.iter().map(|h| f.lattice.name(ctx, h)).collect();
                r.put(&format!("level {}", i), names.join(", "));
            }
            let names = |v: &[L::Sub]| v.iter().map(|h| f.lattice.name(ctx, h)).collect::<Vec<_>>().join(", ");
            r.put("stable", names(&b.stable));
            r.put("inert", names(&b.inert));
            let c = inertia::check_prop_inert(&f)?;
            r.put("boundaries_generated", yes(c.boundaries_generated));
            r.put("characterisation_agrees", yes(c.agrees()));
            r.put("minimal_member", f.lattice.name(ctx, &f.minimal_member()?));
            r.put("solvability_check", yes(inertia::solvability_check(&f)?));
            Ok((if b.inert.is_empty() { 0 } else { 1 }, None))
        }
        Command::Refresh => {
            let all = inertia::refresh_all(&f)?;
            let before = match &all.lift {
                Some(mu) => {
                    r.put("lifted", all.filter.monoid.description());
                    f.transport(all.filter.monoid.clone(), mu)
                }
                None => f.clone(),
            };
            let names: Vec<String> = all.refreshed.iter().map(|h| f.lattice.name(ctx, h)).collect();
            r.put("refreshed", names.join(", "));
            for s in all.filter.monoid.linear_extension() {
                let (a, b) = (&before.values[s], &all.filter.values[s]);
                if a != b {
                    r.put(
                        &format!("changed {}", index_name(&all.filter.monoid, s)),
                        format!("{} -> {}", f.lattice.name(ctx, a), f.lattice.name(ctx, b)),
                    );
                }
            }
            let inert = inertia::inert_subgroups(&all.filter)?;
            r.put("inert_after", inert.len());
            r.put("valid", yes(all.filter.validate().valid));
            Ok((if inert.is_empty() { 0 } else { 1 }, None))
        }
        Command::Hasse => {
            let lat = f.lattice_closure(cap)?;
            r.put("nodes", lat.nodes.len());
            r.put("edges", lat.edges.len());
            r.put("distributive", yes(lat.is_distributive()));
            for n in lattice_nodes(ctx, f.lattice.as_ref(), &lat) {
                r.put("node", n);
            }
            Ok((0, Some(dot(ctx, f.lattice.as_ref(), &lat))))
        }
        Command::Faithful | Command::Bijection => Err(Error::Unsupported(format!("{} needs a pc group", cmd.name()))),
    }
}

fn lie_report(m: &Monoid, ring: &GradedLieRing, r: &mut Report) {
    r.put("components", ring.components.len());
    for c in &ring.components {
        let inv: Vec<String> = c.invariants.iter().map(|d| d.to_string()).collect();
        r.put(&index_name(m, c.index), format!("[{}]", inv.join(", ")));
    }
    r.put("order", ring.total_order());
    if ring.has_brackets {
        for ((i, j), combo) in ring.structure_constants() {
            let terms: Vec<String> = combo.iter().map(|(k, c)| format!("{}*b{}", c, k)).collect();
            r.put(&format!("bracket b{} b{}", i, j), terms.join(" + "));
        }
    }
}

/// Commands that need group elements.
fn pc_only(cmd: Command, doc: &Document, be: &PcBackend, opts: &Options, r: &mut Report) -> Result<(i32, Option<String>)> {
    let lookup = |n: &str| be.subgroup(n).cloned();
    let (f, _) = primary(doc, be.group.clone(), &lookup, opts)?;
    match cmd {
        Command::Lie => {
            let ring = GradedLieRing::from_pc_filter(&f)?;
            lie_report(&f.monoid, &ring, r);
            Ok((0, None))
        }
        Command::Faithful => faithful_report(doc, be, &f, r),
        _ => bijection_report(be, &f, opts, r),
    }
}

fn faithful_report(doc: &Document, be: &PcBackend, f: &Filter<PcGroup>, r: &mut Report) -> Result<(i32, Option<String>)> {
    let ctx = &doc.backend;
    let g = f.lattice.as_ref();
    let name = |h| g.name(ctx, h);
    let ff = faithful::is_faithful_filter(f)?;
    r.put("faithful_filter", yes(ff.faithful));
    if let Some(w) = &ff.witness {
        r.put("antichain_witness", w.iter().map(name).collect::<Vec<_>>().join(", "));
    }
    if let Some((a, b)) = ff.overlap {
        r.put(
            "layer_overlap",
            format!(
                "{} = {} and {} = {}",
                index_name(&f.monoid, a),
                name(&f.values[a]),
                index_name(&f.monoid, b),
                name(&f.values[b])
            ),
        );
    }
    let full = faithful::is_fully_faithful(f)?;
    r.put("inert_free", yes(full.inert_free));
    r.put("zero_is_boundary", yes(full.zero_is_boundary));
    r.put("fully_faithful", yes(full.holds()));
    let mut ok = full.holds();
    if let Some(xs) = &doc.genset {
        let v = faithful::check_genset(f, xs)?;
        let el = |i: usize| {
            be.elements.iter().find(|(_, x)| x == &xs[i]).map(|(n, _)| n.clone()).unwrap_or_else(|| g.format_elem(&xs[i]))
        };
        r.put("genset_size", xs.len());
        r.put("weakly_filtered", yes(v.weakly_filtered));
        if let Some(s) = v.weak_witness {
            r.put("weak_witness", index_name(&f.monoid, s));
        }
        r.put("filtered", yes(v.filtered));
        if let Some(m) = &v.meet_witness {
            r.put(
                "meet_witness",
                format!(
                    "{} meet to {}, members generate {}",
                    m.values.iter().map(name).collect::<Vec<_>>().join(" & "),
                    name(&m.intersection),
                    name(&m.generated)
                ),
            );
        }
        if let Some(j) = &v.join_witness {
            let list = |p: &[usize]| p.iter().map(|&i| el(i)).collect::<Vec<_>>().join(", ");
            r.put(
                "join_witness",
                format!(
                    "{} generate {}: {{{}}} vs {{{}}}",
                    j.values.iter().map(name).collect::<Vec<_>>().join(" & "),
                    name(&j.product),
                    list(&j.in_product),
                    list(&j.in_union)
                ),
            );
        }
        if let Some(b) = v.filtered_by_boundary {
            r.put("filtered_by_boundary", yes(b));
        }
        if let Some(b) = v.distributive {
            r.put("distributive", yes(b));
        }
        r.put("faithful_genset", yes(v.faithful));
        if let Some(w) = &v.index_witness {
            let idx: Vec<String> = w.indices.iter().map(|&s| index_name(&f.monoid, s)).collect();
            r.put("index_witness", format!("{} at [{}]", el(w.position), idx.join(", ")));
        }
        ok &= v.faithfully_filtered();
    }
    Ok((if ok { 0 } else { 1 }, None))
}

fn bijection_report(_be: &PcBackend, f: &Filter<PcGroup>, opts: &Options, r: &mut Report) -> Result<(i32, Option<String>)> {
    let ring = GradedLieRing::from_pc_filter(f)?;
    let cap = opts.cap.unwrap_or(DEFAULT_PI_CAP);
    let c = faithful::pi_map(f, &ring, &ring.graded_basis(), cap)?;
    let g = f.lattice.as_ref();
    r.put("map", &c.map);
    for (i, (x, l)) in c.lifts.iter().zip(&c.basis_labels).enumerate() {
        r.put(&format!("lift b{}", i), format!("{} at {}", g.format_elem(x), l));
    }
    r.put("lie_order", c.lie_order);
    r.put("target_order", c.target_order);
    r.put("inert_present", yes(c.inert_present));
    r.put("surjective", yes(c.surjective));
    r.put("injective", c.injective.map(yes).unwrap_or("unknown"));
    r.put("bijective", yes(c.bijective()));
    r.put("lifts_pcgs", yes(c.lifts_pcgs));
    r.put("fully_faithful", yes(c.fully_faithful));
    if c.fully_faithful {
        let sample = opts.cap.unwrap_or(1000).min(10_000);
        let corr = faithful::basis_pcgs_correspondence(f, sample, opts.seed)?;
        r.put("bases_checked", corr.bases_checked);
        r.put("exhaustive", yes(corr.exhaustive));
        r.put("distinct_pcgs", corr.distinct_pcgs);
        r.put("correspondence", yes(corr.holds()));
        let full = faithful::is_full(f, DEFAULT_SPOT_CHECKS, opts.seed)?;
        r.put("full", yes(full.full()));
    }
    Ok((if c.bijective() { 0 } else { 1 }, None))
}

/// Runs one command.  Errors become exit code 2 with the message in the report.
pub fn run(cmd: Command, doc: &Document, opts: &Options) -> Outcome {
    let mut r = Report::default();
    r.put("command", cmd.name());
    r.put("monoid", format!("{} ({} elements)", doc.monoid.description(), doc.monoid.len()));
    let result = match &doc.backend {
        Backend::Pc(be) => {
            r.put("group", format!("pc, order {}", be.group.group_order()));
            if matches!(cmd, Command::Lie | Command::Faithful | Command::Bijection) {
                pc_only(cmd, doc, be, opts, &mut r)
            } else {
                let lookup = |n: &str| be.subgroup(n).cloned();
                generic(cmd, doc, be.group.clone(), &lookup, opts, &mut r)
            }
        }
        Backend::Table(t) => {
            r.put("group", format!("table, {} nodes", t.len()));
            let tv = t.validate();
            r.put("table_valid", yes(tv.valid));
            for p in &tv.problems {
                r.put("table_problem", p);
            }
            let lookup = |n: &str| t.node(n);
            generic(cmd, doc, t.clone(), &lookup, opts, &mut r)
        }
    };
    match result {
        Ok((code, dot)) => Outcome { report: r.text, dot, code },
        Err(e) => {
            r.put("error", e);
            Outcome { report: r.text, dot: None, code: 2 }
        }
    }
}

pub fn parse_command(s: &str) -> Option<Command> {
    Some(match s {
        "validate" => Command::Validate,
        "boundary" => Command::Boundary,
        "close" => Command::Close,
        "lie" => Command::Lie,
        "inert" => Command::Inert,
        "refresh" => Command::Refresh,
        "faithful" => Command::Faithful,
        "bijection" => Command::Bijection,
        "hasse" => Command::Hasse,
        _ => return None,
    })
}
