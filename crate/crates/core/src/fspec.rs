//! The line-oriented filter-spec format.
//!
//! ```text
//! # comment
//! [monoid]
//! factors = [3,1] [3,1]
//! order = direct            # direct | lex | discrete-below | explicit
//! relation = (0,1) <= (1,1) # explicit orders only
//! infinity = yes            # adjoin an absorbing top
//!
//! [group]
//! builtin = heisenberg 3    # or: orders = 3 3 3 / pow 1 = g2 / comm 2 1 = g3^2
//!
//! [subgroups]
//! Z = g3
//!
//! [elements]
//! x = g1
//!
//! [table]                   # instead of [group]
//! node GL 2016
//! below SL GL
//! comm GL GL = SL
//! section GL SL = 6
//!
//! [filter]
//! default = 1
//! at (0,*) = G
//!
//! [prefilter]
//! at (0,0) = G
//!
//! [genset]
//! elements = x, y, z
//!
//! [insert]
//! factors = [3,1]
//! order = direct
//! at (0,0,1) = E
//! ```
//!
//! Later `at` lines override earlier ones; `*` matches any coordinate.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups;
use crate::monoid::{Cyclic, Monoid, OrderKind};
use crate::pc::{Elem, PcGroup, Subgroup, Word};
use crate::table::SubgroupTable;

#[derive(Clone, Debug)]
pub struct PcBackend {
    pub group: Arc<PcGroup>,
    pub subgroups: Vec<(String, Subgroup)>,
    pub elements: Vec<(String, Elem)>,
}

impl PcBackend {
    pub fn subgroup(&self, name: &str) -> Option<&Subgroup> {
        self.subgroups.iter().find(|(n, _)| n == name).map(|(_, h)| h)
    }

    pub fn element(&self, name: &str) -> Option<&Elem> {
        self.elements.iter().find(|(n, _)| n == name).map(|(_, x)| x)
    }

    /// The first name given to `h`, if any.
    pub fn name_of(&self, h: &Subgroup) -> Option<&str> {
        self.subgroups.iter().find(|(_, k)| k == h).map(|(n, _)| n.as_str())
    }
}

#[derive(Clone, Debug)]
pub enum Backend {
    Pc(PcBackend),
    Table(Arc<SubgroupTable>),
}

#[derive(Clone, Debug)]
pub struct Insertion {
    pub extension: Monoid,
    pub entries: Vec<(Vec<u32>, String)>,
}

#[derive(Clone, Debug)]
pub struct Document {
    pub monoid: Arc<Monoid>,
    pub backend: Backend,
    /// Subgroup name at every index.
    pub filter: Option<Vec<String>>,
    pub prefilter: Option<Vec<(usize, String)>>,
    pub genset: Option<Vec<Elem>>,
    pub insert: Option<Insertion>,
}

impl Document {
    pub fn pc(&self) -> Option<&PcBackend> {
        match &self.backend {
            Backend::Pc(p) => Some(p),
            Backend::Table(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Line<'a> {
    no: usize,
    /// Column of the first character of `text`.
    col: usize,
    text: &'a str,
}

fn syntax(l: &Line<'_>, offset: usize, msg: impl Into<String>) -> Error {
    Error::SyntaxError { line: l.no, col: l.col + offset, msg: msg.into() }
}

#[derive(Default)]
struct Sections<'a> {
    blocks: Vec<(String, Line<'a>, Vec<Line<'a>>)>,
}

impl<'a> Sections<'a> {
    fn get(&self, name: &str) -> Option<&(String, Line<'a>, Vec<Line<'a>>)> {
        self.blocks.iter().find(|(n, _, _)| n == name)
    }
}

const BLOCKS: [&str; 9] =
    ["monoid", "group", "subgroups", "elements", "table", "filter", "prefilter", "genset", "insert"];

fn split_sections(text: &str) -> Result<Sections<'_>> {
    let mut s = Sections::default();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = body.len() - body.trim_start().len() + 1;
        let line = Line { no, col, text: trimmed };
        if let Some(rest) = trimmed.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| syntax(&line, trimmed.len() - 1, "unterminated section header"))?
                .trim();
            if !BLOCKS.contains(&name) {
                return Err(syntax(&line, 1, format!("unknown section `{}`", name)));
            }
            if s.get(name).is_some() {
                return Err(syntax(&line, 0, format!("duplicate section `{}`", name)));
            }
            s.blocks.push((name.to_string(), line, Vec::new()));
        } else {
            match s.blocks.last_mut() {
                Some((_, _, lines)) => lines.push(line),
                None => return Err(syntax(&line, 0, "content before any section header")),
            }
        }
    }
    Ok(s)
}

fn key_value<'a>(l: &Line<'a>) -> Result<(&'a str, &'a str, usize)> {
    let eq = l.text.find('=').ok_or_else(|| syntax(l, 0, "expected `key = value`"))?;
    let key = l.text[..eq].trim();
    let value = l.text[eq + 1..].trim();
    let vcol = eq + 1 + (l.text[eq + 1..].len() - l.text[eq + 1..].trim_start().len());
    Ok((key, value, vcol))
}

fn parse_u32(l: &Line<'_>, offset: usize, s: &str) -> Result<u32> {
    s.trim().parse::<u32>().map_err(|_| syntax(l, offset, format!("expected a number, found `{}`", s.trim())))
}

fn parse_factors(l: &Line<'_>, offset: usize, value: &str) -> Result<Vec<Cyclic>> {
    let mut out = Vec::new();
    let mut rest = value;
    let mut pos = offset;
    loop {
        let skip = rest.len() - rest.trim_start().len();
        rest = rest.trim_start();
        pos += skip;
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('[') {
            return Err(syntax(l, pos, "expected a factor `[r,s]`"));
        }
        let close = rest.find(']').ok_or_else(|| syntax(l, pos, "unterminated factor"))?;
        let inner = &rest[1..close];
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 2 {
            return Err(syntax(l, pos, "a factor is `[index,period]`"));
        }
        let r = parse_u32(l, pos + 1, parts[0])?;
        let p = parse_u32(l, pos + 1, parts[1])?;
        if p == 0 {
            return Err(syntax(l, pos, "period must be at least 1"));
        }
        out.push(Cyclic::new(r, p));
        pos += close + 1;
        rest = &rest[close + 1..];
    }
    if out.is_empty() {
        return Err(syntax(l, offset, "no factors given"));
    }
    Ok(out)
}

/// Coordinates with `None` for `*`.
fn parse_pattern(l: &Line<'_>, offset: usize, s: &str) -> Result<Vec<Option<u32>>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| syntax(l, offset, format!("expected coordinates `(a,b,..)`, found `{}`", s)))?;
    inner
        .split(',')
        .map(|c| if c.trim() == "*" { Ok(None) } else { parse_u32(l, offset, c).map(Some) })
        .collect()
}

fn parse_coords(l: &Line<'_>, offset: usize, s: &str) -> Result<Vec<u32>> {
    parse_pattern(l, offset, s)?
        .into_iter()
        .map(|c| c.ok_or_else(|| syntax(l, offset, "wildcards are not allowed here")))
        .collect()
}

fn parse_order(l: &Line<'_>, offset: usize, value: &str) -> Result<OrderKind> {
    match value {
        "direct" => Ok(OrderKind::Direct),
        "lex" => Ok(OrderKind::Lex),
        "discrete-below" => Ok(OrderKind::DiscreteBelow),
        "explicit" => Ok(OrderKind::Explicit(Vec::new())),
        other => Err(syntax(l, offset, format!("unknown order `{}`", other))),
    }
}

fn parse_monoid(header: &Line<'_>, lines: &[Line<'_>]) -> Result<Monoid> {
    let mut factors = None;
    let mut order = None;
    let mut relations = Vec::new();
    let mut infinity = false;
    let mut cap = crate::monoid::DEFAULT_SIZE_CAP;
    for l in lines {
        let (k, v, vc) = key_value(l)?;
        match k {
            "factors" => factors = Some(parse_factors(l, vc, v)?),
            "order" => order = Some(parse_order(l, vc, v)?),
            "relation" => {
                let (a, b) = v.split_once("<=").ok_or_else(|| syntax(l, vc, "expected `(a) <= (b)`"))?;
                relations.push((parse_coords(l, vc, a)?, parse_coords(l, vc, b)?));
            }
            "infinity" => infinity = matches!(v, "yes" | "true"),
            "cap" => cap = parse_u32(l, vc, v)? as usize,
            _ => return Err(syntax(l, 0, format!("unknown monoid key `{}`", k))),
        }
    }
    let factors = factors.ok_or_else(|| syntax(header, 0, "monoid block needs `factors`"))?;
    let order = match order.unwrap_or(OrderKind::Direct) {
        OrderKind::Explicit(_) => OrderKind::Explicit(relations),
        o => o,
    };
    let m = Monoid::with_cap(&factors, order, cap)?;
    if infinity {
        m.adjoin_infinity()
    } else {
        Ok(m)
    }
}

/// A word such as `g1^2*g3^-1`, or `1`.
pub fn parse_word(s: &str) -> std::result::Result<Word, String> {
    let s = s.trim();
    if s == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for factor in s.split('*') {
        let factor = factor.trim();
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (b.trim(), e.trim().parse::<i64>().map_err(|_| format!("bad exponent in `{}`", factor))?),
            None => (factor, 1),
        };
        let idx = base
            .strip_prefix('g')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= 1)
            .ok_or_else(|| format!("expected a generator `gN`, found `{}`", base))?;
        out.push((idx - 1, exp));
    }
    Ok(out)
}

fn word_at(l: &Line<'_>, offset: usize, s: &str) -> Result<Word> {
    parse_word(s).map_err(|m| syntax(l, offset, m))
}

fn parse_group(header: &Line<'_>, lines: &[Line<'_>]) -> Result<PcBackend> {
    let mut builtin = None;
    let mut orders: Option<Vec<u32>> = None;
    let mut powers = Vec::new();
    let mut comms = Vec::new();
    for l in lines {
        let (k, v, vc) = key_value(l)?;
        let words: Vec<&str> = k.split_whitespace().collect();
        match words.as_slice() {
            ["builtin"] => builtin = Some(groups::by_spec(v)?),
            ["orders"] => {
                orders = Some(v.split_whitespace().map(|x| parse_u32(l, vc, x)).collect::<Result<_>>()?)
            }
            ["pow", i] => {
                let i = parse_u32(l, 4, i)? as usize;
                if i == 0 {
                    return Err(syntax(l, 4, "generators are numbered from 1"));
                }
                powers.push((i - 1, word_at(l, vc, v)?));
            }
            ["comm", j, i] => {
                let (j, i) = (parse_u32(l, 5, j)? as usize, parse_u32(l, 5, i)? as usize);
                if i == 0 || j == 0 {
                    return Err(syntax(l, 5, "generators are numbered from 1"));
                }
                comms.push((j - 1, i - 1, word_at(l, vc, v)?));
            }
            _ => return Err(syntax(l, 0, format!("unknown group key `{}`", k))),
        }
    }
    let (group, subgroups, elements) = match (builtin, orders) {
        (Some(b), None) if powers.is_empty() && comms.is_empty() => (b.group, b.subgroups, b.elements),
        (None, Some(o)) => (PcGroup::new(o, powers, comms)?, Vec::new(), Vec::new()),
        (Some(_), _) => return Err(syntax(header, 0, "a builtin group takes no relations")),
        (None, None) => return Err(syntax(header, 0, "group block needs `builtin` or `orders`")),
    };
    if let Err(msg) = group.check_consistency() {
        return Err(Error::InvalidPresentation(msg));
    }
    let mut be = PcBackend { group: Arc::new(group), subgroups, elements };
    for (i, _) in be.group.relative_orders().iter().enumerate() {
        let name = format!("g{}", i + 1);
        if be.element(&name).is_none() {
            be.elements.push((name, be.group.gen(i)));
        }
    }
    Ok(be)
}

fn resolve_element(be: &PcBackend, l: &Line<'_>, offset: usize, s: &str) -> Result<Elem> {
    let s = s.trim();
    if let Some(x) = be.element(s) {
        return Ok(x.clone());
    }
    match parse_word(s) {
        Ok(w) => {
            if w.iter().any(|&(i, _)| i >= be.group.ngens()) {
                return Err(Error::UnresolvedName { line: l.no, name: s.to_string() });
            }
            be.group.collect(&w)
        }
        Err(_) => {
            if s.chars().all(|c| c.is_alphanumeric() || c == '_') {
                Err(Error::UnresolvedName { line: l.no, name: s.to_string() })
            } else {
                Err(syntax(l, offset, format!("cannot read element `{}`", s)))
            }
        }
    }
}

fn parse_named_elements(be: &mut PcBackend, lines: &[Line<'_>]) -> Result<()> {
    for l in lines {
        let (k, v, vc) = key_value(l)?;
        let x = resolve_element(be, l, vc, v)?;
        be.elements.retain(|(n, _)| n != k);
        be.elements.push((k.to_string(), x));
    }
    Ok(())
}

fn parse_named_subgroups(be: &mut PcBackend, lines: &[Line<'_>]) -> Result<()> {
    for l in lines {
        let (k, v, vc) = key_value(l)?;
        let (normal, body) = match v.strip_prefix("normal") {
            Some(rest) => (true, rest.trim()),
            None => (false, v),
        };
        let gens = body
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| resolve_element(be, l, vc, x))
            .collect::<Result<Vec<_>>>()?;
        let h = be.group.subgroup_with(&gens, normal);
        be.subgroups.retain(|(n, _)| n != k);
        be.subgroups.push((k.to_string(), h));
    }
    Ok(())
}

fn parse_table(lines: &[Line<'_>]) -> Result<SubgroupTable> {
    let mut t = SubgroupTable::new();
    let node = |t: &SubgroupTable, l: &Line<'_>, name: &str| -> Result<usize> {
        t.node(name).ok_or_else(|| Error::UnresolvedName { line: l.no, name: name.to_string() })
    };
    for l in lines {
        let words: Vec<&str> = l.text.split_whitespace().collect();
        match words.as_slice() {
            ["builtin", "gl27"] => t = SubgroupTable::gl27(false),
            ["builtin", "gl27", "trivial"] => t = SubgroupTable::gl27(true),
            ["node", name, order] => {
                let o = order.parse::<u128>().map_err(|_| syntax(l, 0, "node order must be a number"))?;
                t.add_node(name, o);
            }
            ["below", a, b] => {
                let (a, b) = (node(&t, l, a)?, node(&t, l, b)?);
                t.add_below(a, b);
            }
            [op @ ("join" | "meet" | "comm"), a, b, "=", c] => {
                let (a, b, c) = (node(&t, l, a)?, node(&t, l, b)?, node(&t, l, c)?);
                match *op {
                    "join" => t.set_join(a, b, c),
                    "meet" => t.set_meet(a, b, c),
                    _ => t.set_commutator(a, b, c),
                }
            }
            ["section", a, b, "=", rest @ ..] => {
                let (a, b) = (node(&t, l, a)?, node(&t, l, b)?);
                let inv = rest
                    .iter()
                    .map(|x| x.parse::<u64>().map_err(|_| syntax(l, 0, "invariants must be numbers")))
                    .collect::<Result<Vec<_>>>()?;
                t.set_section(a, b, inv);
            }
            _ => return Err(syntax(l, 0, format!("cannot read table line `{}`", l.text))),
        }
    }
    Ok(t)
}

fn subgroup_known(backend: &Backend, name: &str) -> bool {
    match backend {
        Backend::Pc(p) => p.subgroup(name).is_some(),
        Backend::Table(t) => t.node(name).is_some(),
    }
}

fn matches(pattern: &[Option<u32>], coords: &[u32]) -> bool {
    pattern.len() == coords.len() && pattern.iter().zip(coords).all(|(p, c)| p.map_or(true, |p| p == *c))
}

/// Indices named by an `at` target: coordinates (aliases resolve), a
/// wildcard pattern, `0`, or `inf`.
fn resolve_indices(m: &Monoid, l: &Line<'_>, offset: usize, target: &str) -> Result<Vec<usize>> {
    let target = target.trim();
    if target == "0" {
        return Ok(vec![m.zero()]);
    }
    if target == "inf" {
        return m
            .elements()
            .find(|&s| m.label(s) == "inf")
            .map(|s| vec![s])
            .ok_or_else(|| Error::IndexOutOfMonoid { line: l.no, index: target.into() });
    }
    let pat = parse_pattern(l, offset, target)?;
    if pat.len() != m.dim() {
        return Err(Error::IndexOutOfMonoid { line: l.no, index: target.into() });
    }
    if pat.iter().all(|p| p.is_some()) {
        let c: Vec<u32> = pat.iter().map(|p| p.unwrap()).collect();
        return m
            .index_of(&c)
            .map(|s| vec![s])
            .ok_or_else(|| Error::IndexOutOfMonoid { line: l.no, index: target.into() });
    }
    let hits: Vec<usize> = m.elements().filter(|&s| m.label(s) != "inf" && matches(&pat, m.coords(s))).collect();
    if hits.is_empty() {
        return Err(Error::IndexOutOfMonoid { line: l.no, index: target.into() });
    }
    Ok(hits)
}

fn parse_at<'a>(l: &Line<'a>) -> Result<(&'a str, &'a str, usize)> {
    let (k, v, vc) = key_value(l)?;
    let target = k
        .strip_prefix("at")
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| syntax(l, 0, "expected `at <index> = <subgroup>`"))?;
    Ok((target.trim(), v, vc))
}

fn check_name(backend: &Backend, l: &Line<'_>, name: &str) -> Result<()> {
    if subgroup_known(backend, name) {
        Ok(())
    } else {
        Err(Error::UnresolvedName { line: l.no, name: name.to_string() })
    }
}

fn parse_filter(m: &Monoid, backend: &Backend, lines: &[Line<'_>]) -> Result<Vec<String>> {
    let mut values: Vec<Option<String>> = vec![None; m.len()];
    let mut default = None;
    for l in lines {
        if l.text.starts_with("default") {
            let (_, v, _) = key_value(l)?;
            check_name(backend, l, v)?;
            default = Some(v.to_string());
            continue;
        }
        let (target, v, _) = parse_at(l)?;
        check_name(backend, l, v)?;
        for s in resolve_indices(m, l, 3, target)? {
            values[s] = Some(v.to_string());
        }
    }
    values
        .into_iter()
        .enumerate()
        .map(|(s, v)| {
            v.or_else(|| default.clone())
                .ok_or_else(|| Error::InvalidFilter(format!("no value at {} and no default", m.label(s))))
        })
        .collect()
}

fn parse_prefilter(m: &Monoid, backend: &Backend, lines: &[Line<'_>]) -> Result<Vec<(usize, String)>> {
    let mut out: Vec<(usize, String)> = Vec::new();
    for l in lines {
        let (target, v, _) = parse_at(l)?;
        check_name(backend, l, v)?;
        for s in resolve_indices(m, l, 3, target)? {
            out.retain(|(t, _)| *t != s);
            out.push((s, v.to_string()));
        }
    }
    Ok(out)
}

fn parse_genset(be: &PcBackend, lines: &[Line<'_>]) -> Result<Vec<Elem>> {
    let mut out = Vec::new();
    for l in lines {
        let (k, v, vc) = key_value(l)?;
        if k != "elements" {
            return Err(syntax(l, 0, format!("unknown genset key `{}`", k)));
        }
        for x in v.split(',').filter(|x| !x.trim().is_empty()) {
            out.push(resolve_element(be, l, vc, x)?);
        }
    }
    Ok(out)
}

fn parse_insert(header: &Line<'_>, backend: &Backend, lines: &[Line<'_>], base_dim: usize) -> Result<Insertion> {
    let mut factors = None;
    let mut order = OrderKind::Direct;
    let mut pending = Vec::new();
    for l in lines {
        let (k, v, vc) = key_value(l)?;
        match k {
            "factors" => factors = Some(parse_factors(l, vc, v)?),
            "order" => order = parse_order(l, vc, v)?,
            _ => {
                let (target, v, _) = parse_at(l)?;
                check_name(backend, l, v)?;
                pending.push((l.clone(), parse_coords(l, 3, target)?, v.to_string()));
            }
        }
    }
    let factors = factors.ok_or_else(|| syntax(header, 0, "insert block needs `factors`"))?;
    let extension = Monoid::new(&factors, order)?;
    let dim = base_dim + extension.dim();
    let mut entries = Vec::new();
    for (l, c, v) in pending {
        if c.len() != dim {
            return Err(Error::IndexOutOfMonoid { line: l.no, index: format!("{:?}", c) });
        }
        entries.push((c, v));
    }
    Ok(Insertion { extension, entries })
}

pub fn parse(text: &str) -> Result<Document> {
    let sections = split_sections(text)?;
    let (_, mh, ml) = sections
        .get("monoid")
        .ok_or_else(|| Error::SyntaxError { line: 1, col: 1, msg: "missing [monoid] block".into() })?;
    let monoid = Arc::new(parse_monoid(mh, ml)?);
    let backend = match (sections.get("group"), sections.get("table")) {
        (Some((_, gh, gl)), None) => {
            let mut be = parse_group(gh, gl)?;
            if be.subgroup("G").is_none() {
                be.subgroups.push(("G".into(), be.group.whole()));
            }
            if be.subgroup("1").is_none() {
                be.subgroups.push(("1".into(), be.group.trivial()));
            }
            if let Some((_, _, el)) = sections.get("elements") {
                parse_named_elements(&mut be, el)?;
            }
            if let Some((_, _, sl)) = sections.get("subgroups") {
                parse_named_subgroups(&mut be, sl)?;
            }
            Backend::Pc(be)
        }
        (None, Some((_, _, tl))) => {
            for name in ["subgroups", "elements", "genset"] {
                if let Some((_, h, _)) = sections.get(name) {
                    return Err(syntax(h, 0, format!("[{}] needs a [group] block", name)));
                }
            }
            Backend::Table(Arc::new(parse_table(tl)?))
        }
        (Some(_), Some((_, th, _))) => return Err(syntax(th, 0, "give either [group] or [table], not both")),
        (None, None) => {
            let line = text.lines().count().max(1);
            return Err(Error::SyntaxError { line, col: 1, msg: "missing [group] or [table] block".into() });
        }
    };
    let filter = match sections.get("filter") {
        Some((_, _, fl)) => Some(parse_filter(&monoid, &backend, fl)?),
        None => None,
    };
    let prefilter = match sections.get("prefilter") {
        Some((_, _, pl)) => Some(parse_prefilter(&monoid, &backend, pl)?),
        None => None,
    };
    let genset = match (sections.get("genset"), &backend) {
        (Some((_, _, gl)), Backend::Pc(be)) => Some(parse_genset(be, gl)?),
        _ => None,
    };
    let insert = match sections.get("insert") {
        Some((_, ih, il)) => Some(parse_insert(ih, &backend, il, monoid.dim())?),
        None => None,
    };
    Ok(Document { monoid, backend, filter, prefilter, genset, insert })
}
