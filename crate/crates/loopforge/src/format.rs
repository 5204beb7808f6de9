//! Text formats for groups, subgroups, loops and folders.
//!
//! All formats are line based, 0-based and allow `#` comments. A group file
//! starts with `group <degree>` and lists one generator image list per line;
//! a loop file starts with `loop <n>` and lists the `n` rows of the table; a
//! folder file has `[group]`, `[H]` and `[K]` sections. Subgroup files list
//! generator image lists, optionally after a `subgroup <degree>` line.

use loopforge_core::group::{closure, generating_set};
use loopforge_core::{ElemSet, Folder, Generators, Loop, Perm, PermGroup};

use crate::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Nonblank lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn numbers(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(line, format!("not a number: {t:?}"))))
        .collect()
}

fn header(lines: &[(usize, &str)], keyword: &str) -> Result<usize> {
    let &(no, first) = lines
        .first()
        .ok_or_else(|| parse_err(0, format!("empty input, expected `{keyword} <n>`")))?;
    let mut it = first.split_whitespace();
    if it.next() != Some(keyword) {
        return Err(parse_err(no, format!("expected `{keyword} <n>`")));
    }
    let n = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(no, format!("expected `{keyword} <n>`")))?;
    if it.next().is_some() {
        return Err(parse_err(no, "trailing tokens after header"));
    }
    Ok(n)
}

fn perm_line(line: usize, s: &str, degree: usize) -> Result<Perm> {
    let img = numbers(line, s)?;
    if img.len() != degree {
        return Err(parse_err(line, format!("expected {degree} images, found {}", img.len())));
    }
    Perm::from_usize(&img).map_err(|e| parse_err(line, e.to_string()))
}

fn parse_group_lines(lines: &[(usize, &str)]) -> Result<Generators> {
    let degree = header(lines, "group")?;
    let perms = lines[1..]
        .iter()
        .map(|&(no, l)| perm_line(no, l, degree))
        .collect::<Result<Vec<_>>>()?;
    Ok(Generators::new(degree, perms)?)
}

pub fn parse_group(text: &str) -> Result<Generators> {
    parse_group_lines(&content_lines(text))
}

pub fn parse_loop(text: &str) -> Result<Loop> {
    let lines = content_lines(text);
    let n = header(&lines, "loop")?;
    if lines.len() != n + 1 {
        return Err(parse_err(
            lines.last().map_or(0, |l| l.0),
            format!("expected {n} rows, found {}", lines.len() - 1),
        ));
    }
    let mut rows = Vec::with_capacity(n);
    for &(no, l) in &lines[1..] {
        let row = numbers(no, l)?;
        if row.len() != n {
            return Err(parse_err(no, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    Ok(Loop::from_rows(&rows)?)
}

/// Generator image lists for a subgroup of a group of the given degree.
pub fn parse_subgroup(text: &str, degree: usize) -> Result<Vec<Perm>> {
    let lines = content_lines(text);
    let body = match lines.first() {
        Some(&(_, l)) if l.starts_with("subgroup") => {
            let d = header(&lines, "subgroup")?;
            if d != degree {
                return Err(parse_err(lines[0].0, format!("degree {d} does not match the group degree {degree}")));
            }
            &lines[1..]
        }
        _ => &lines[..],
    };
    body.iter().map(|&(no, l)| perm_line(no, l, degree)).collect()
}

/// Indices of `perms` in `g`, or a parse error naming the first stranger.
pub fn locate(g: &PermGroup, perms: &[Perm], what: &str) -> Result<Vec<usize>> {
    perms
        .iter()
        .enumerate()
        .map(|(i, p)| {
            g.index_of(p)
                .ok_or_else(|| parse_err(0, format!("{what} element {i} is not in the group")))
        })
        .collect()
}

pub fn subgroup_in(g: &PermGroup, perms: &[Perm]) -> Result<ElemSet> {
    Ok(closure(g, &locate(g, perms, "subgroup")?))
}

/// Parses and validates a folder; `K` must start with the identity.
pub fn parse_folder(text: &str, cap: usize) -> Result<Folder> {
    let lines = content_lines(text);
    let mut sections: [Option<Vec<(usize, &str)>>; 3] = [None, None, None];
    let mut cur = None;
    for &(no, l) in &lines {
        let idx = match l {
            "[group]" => Some(0),
            "[H]" => Some(1),
            "[K]" => Some(2),
            _ if l.starts_with('[') => return Err(parse_err(no, format!("unknown section {l}"))),
            _ => None,
        };
        match (idx, cur) {
            (Some(i), _) => {
                if sections[i].is_some() {
                    return Err(parse_err(no, format!("repeated section {l}")));
                }
                sections[i] = Some(Vec::new());
                cur = Some(i);
            }
            (None, Some(i)) => sections[i].as_mut().unwrap().push((no, l)),
            (None, None) => return Err(parse_err(no, "content before the first section")),
        }
    }
    let [Some(gl), Some(hl), Some(kl)] = sections else {
        return Err(parse_err(0, "folder needs [group], [H] and [K] sections"));
    };
    let gens = parse_group_lines(&gl)?;
    let d = gens.degree();
    let g = gens.materialize(cap)?;
    let hp = hl.iter().map(|&(no, l)| perm_line(no, l, d)).collect::<Result<Vec<_>>>()?;
    let kp = kl.iter().map(|&(no, l)| perm_line(no, l, d)).collect::<Result<Vec<_>>>()?;
    if kp.first().is_none_or(|p| !p.is_identity()) {
        return Err(parse_err(kl.first().map_or(0, |l| l.0), "first K element must be the identity"));
    }
    let h = subgroup_in(&g, &hp)?;
    let k = locate(&g, &kp, "K")?;
    Ok(Folder::validated(g, h, k)?)
}

fn image_line(p: &Perm) -> String {
    p.images().iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

pub fn write_group(gens: &Generators) -> String {
    let mut s = format!("group {}\n", gens.degree());
    for p in gens.perms() {
        s.push_str(&image_line(p));
        s.push('\n');
    }
    s
}

pub fn write_loop(l: &Loop) -> String {
    let mut s = format!("loop {}\n", l.order());
    for r in l.rows() {
        s.push_str(&r.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
        s.push('\n');
    }
    s
}

pub fn write_folder(f: &Folder) -> String {
    let g = f.group();
    let mut s = String::from("[group]\n");
    s.push_str(&write_group(&g.to_generators()));
    s.push_str("[H]\n");
    for x in generating_set(g, f.h()) {
        s.push_str(&image_line(g.element(x)));
        s.push('\n');
    }
    s.push_str("[K]\n");
    for &x in f.k() {
        s.push_str(&image_line(g.element(x)));
        s.push('\n');
    }
    s
}
