//! Text formats for groups, stem extensions and group actions, plus the bundled
//! data files.
//!
//! Group file:
//! ```text
//! group A5 60
//! perm-gens
//! (1 2 3)
//! (1 2 4)
//! ```
//! or `table` followed by `order²` ids in row-major order.
//!
//! Stem-extension file: `cover <group file>`, `project <ids>` (or `project auto`),
//! `center <ids>`. Action file: `group <group file>`, `points m`, then
//! `row <element id> <m image ids>` for a generating set.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::bounds::WorkBounds;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, StemExtension};
use crate::perm::{GSetAction, Permutation};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_ids(line: usize, toks: &[&str]) -> Result<Vec<usize>> {
    toks.iter()
        .map(|t| t.parse().map_err(|_| Error::parse(line, format!("expected an id, got {t}"))))
        .collect()
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(0, "empty group file"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 3 || h[0] != "group" {
        return Err(Error::parse(hl, "expected `group <name> <order>`"));
    }
    let name = h[1];
    let order: usize = h[2]
        .parse()
        .map_err(|_| Error::parse(hl, "group order is not a number"))?;
    let (kl, kind) = lines
        .next()
        .ok_or_else(|| Error::parse(hl, "expected `table` or `perm-gens`"))?;
    let group = match kind {
        "table" => {
            let mut ids = Vec::with_capacity(order * order);
            for (l, line) in lines {
                let toks: Vec<&str> = line.split_whitespace().collect();
                ids.extend(parse_ids(l, &toks)?.into_iter().map(|x| x as u32));
            }
            if ids.len() != order * order {
                return Err(Error::parse(
                    kl,
                    format!("table has {} entries, expected {}", ids.len(), order * order),
                ));
            }
            FiniteGroup::from_table(name, order, ids)?
        }
        "perm-gens" => {
            let mut gens = Vec::new();
            for (l, line) in lines {
                gens.push(Permutation::parse_cycles(line, None).map_err(|e| Error::parse(l, e.to_string()))?);
            }
            let g = FiniteGroup::from_permutations(name, &gens)?;
            if g.order() != order {
                return Err(Error::InvalidGroup(format!(
                    "{name}: generators give order {}, header says {order}",
                    g.order()
                )));
            }
            g
        }
        other => return Err(Error::parse(kl, format!("unknown group body {other}"))),
    };
    Ok(group)
}

/// Table form, readable by [`parse_group`].
pub fn group_to_text(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut s = format!("group {} {}\ntable\n", g.name().replace(char::is_whitespace, "_"), n);
    for row in g.raw_table().chunks(n) {
        let r: Vec<String> = row.iter().map(u32::to_string).collect();
        s.push_str(&r.join(" "));
        s.push('\n');
    }
    s
}

/// Reads a stem extension over `base`; `load` resolves the `cover` reference.
pub fn parse_extension(
    text: &str,
    base: &FiniteGroup,
    bounds: &WorkBounds,
    load: impl Fn(&str) -> Result<String>,
) -> Result<StemExtension> {
    let mut cover = None;
    let mut project: Option<Option<Vec<Elem>>> = None;
    let mut center = None;
    for (l, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "cover" if toks.len() == 2 => cover = Some(parse_group(&load(toks[1])?)?),
            "project" if toks.get(1) == Some(&"auto") => project = Some(None),
            "project" => project = Some(Some(parse_ids(l, &toks[1..])?)),
            "center" => center = Some(parse_ids(l, &toks[1..])?),
            _ => return Err(Error::parse(l, format!("unexpected line `{line}`"))),
        }
    }
    let cover = cover.ok_or_else(|| Error::parse(0, "missing `cover` line"))?;
    let center = center.ok_or_else(|| Error::parse(0, "missing `center` line"))?;
    match project.ok_or_else(|| Error::parse(0, "missing `project` line"))? {
        Some(p) => StemExtension::new(cover, base, p, center),
        None => StemExtension::from_central_quotient(cover, base, center, bounds),
    }
}

pub fn extension_to_text(ext: &StemExtension, cover_ref: &str) -> String {
    let join = |v: &[Elem]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    format!(
        "cover {cover_ref}\nproject {}\ncenter {}\n",
        join(ext.projection()),
        join(ext.center())
    )
}

/// Reads a group action; `load` resolves the `group` reference.
pub fn parse_action(text: &str, load: impl Fn(&str) -> Result<String>) -> Result<GSetAction> {
    let mut group = None;
    let mut points = None;
    let mut rows = Vec::new();
    for (l, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "group" if toks.len() == 2 => group = Some(resolve_group(toks[1], &load)?),
            "points" if toks.len() == 2 => {
                points = Some(
                    toks[1]
                        .parse::<usize>()
                        .map_err(|_| Error::parse(l, "expected `points <m>`"))?,
                )
            }
            "row" if toks.len() >= 2 => {
                let ids = parse_ids(l, &toks[1..])?;
                rows.push((ids[0], ids[1..].to_vec()));
            }
            _ => return Err(Error::parse(l, format!("unexpected line `{line}`"))),
        }
    }
    let group = group.ok_or_else(|| Error::parse(0, "missing `group` line"))?;
    let points = points.ok_or_else(|| Error::parse(0, "missing `points` line"))?;
    GSetAction::from_generator_rows(Arc::new(group), points, &rows)
}

/// `Z<n>`, `S<n>`, `A<n>`, `D<n>`, `SL2_<p>` and `trivial` name built-in groups.
pub fn named_group(name: &str) -> Option<FiniteGroup> {
    let num = |s: &str| s.parse::<usize>().ok();
    if name == "trivial" {
        return Some(FiniteGroup::trivial());
    }
    if let Some(p) = name.strip_prefix("SL2_").and_then(num) {
        return FiniteGroup::special_linear_2(p).ok();
    }
    let (head, tail) = name.split_at(1.min(name.len()));
    let n = num(tail)?;
    match head {
        "Z" if n >= 1 => Some(FiniteGroup::cyclic(n)),
        "S" if (1..=6).contains(&n) => Some(FiniteGroup::symmetric(n)),
        "A" if (1..=6).contains(&n) => Some(FiniteGroup::alternating(n)),
        "D" if n >= 3 => Some(FiniteGroup::dihedral(n)),
        _ => None,
    }
}

/// A built-in group name, or a group file read through `load`.
pub fn resolve_group(spec: &str, load: impl Fn(&str) -> Result<String>) -> Result<FiniteGroup> {
    match named_group(spec) {
        Some(g) => Ok(g),
        None => parse_group(&load(spec)?),
    }
}

/// Reads a file, falling back to the bundled data for bare names such as
/// `a5.grp`. A directory in `HOMCOUNT_DATA` is searched before the bundle.
pub fn read_input(path: &str) -> Result<String> {
    let p = Path::new(path);
    if p.exists() {
        return std::fs::read_to_string(p).map_err(|source| Error::Io {
            path: path.to_string(),
            source,
        });
    }
    if let Some(dir) = std::env::var_os("HOMCOUNT_DATA") {
        let candidate: PathBuf = Path::new(&dir).join(path);
        if candidate.exists() {
            return std::fs::read_to_string(&candidate).map_err(|source| Error::Io {
                path: candidate.display().to_string(),
                source,
            });
        }
    }
    match data::bundled(path) {
        Some(s) => Ok(s.to_string()),
        None => Err(Error::Io {
            path: path.to_string(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or bundled data"),
        }),
    }
}

/// Data files compiled into the library.
pub mod data {
    const FILES: &[(&str, &str)] = &[
        ("z2.grp", include_str!("../data/z2.grp")),
        ("s3.grp", include_str!("../data/s3.grp")),
        ("a4.grp", include_str!("../data/a4.grp")),
        ("a5.grp", include_str!("../data/a5.grp")),
        ("sl25.grp", include_str!("../data/sl25.grp")),
        ("sl25-ext.ext", include_str!("../data/sl25-ext.ext")),
        ("s2.cx", include_str!("../data/s2.cx")),
        ("rp2.cx", include_str!("../data/rp2.cx")),
        ("torus7.cx", include_str!("../data/torus7.cx")),
        ("poincare.pres", include_str!("../data/poincare.pres")),
        ("lens5.glue", include_str!("../data/lens5.glue")),
        ("and2.bool", include_str!("../data/and2.bool")),
    ];

    pub fn bundled(name: &str) -> Option<&'static str> {
        FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
    }

    pub fn names() -> impl Iterator<Item = &'static str> {
        FILES.iter().map(|(n, _)| *n)
    }
}
