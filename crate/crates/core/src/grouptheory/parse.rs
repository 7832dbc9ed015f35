use super::group::FiniteGroup;
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbers(line_no: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| t.parse().map_err(|_| perr(line_no, format!("expected an integer, got '{t}'"))))
        .collect()
}

/// Parses the group file format:
///
/// ```text
/// group <n>
/// table
/// <n rows of n element indices>
/// ```
///
/// or `perm <k>` followed by generator lines, each a permutation of
/// `0..k` in one-line image notation. An optional trailing
/// `names <n labels>` line attaches element names. `#` starts a comment.
pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (ln, header) = lines.next().ok_or_else(|| perr(0, "empty group file"))?;
    let n: usize = header
        .strip_prefix("group")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| perr(ln, "expected 'group <n>'"))?;

    let (ln, kind) = lines.next().ok_or_else(|| perr(ln, "expected 'table' or 'perm <k>'"))?;
    let mut names = None;
    let group = if kind == "table" {
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, row) = lines.next().ok_or_else(|| perr(ln, format!("expected {n} table rows")))?;
            rows.push(numbers(ln, row)?);
        }
        FiniteGroup::from_table(rows)?
    } else if let Some(k) = kind.strip_prefix("perm") {
        let k: usize = k.trim().parse().map_err(|_| perr(ln, "expected 'perm <k>'"))?;
        let mut gens = Vec::new();
        for (ln, line) in lines.by_ref() {
            if let Some(rest) = line.strip_prefix("names") {
                names = Some(rest.split_whitespace().map(str::to_string).collect::<Vec<_>>());
                break;
            }
            gens.push(numbers(ln, line)?);
        }
        let g = FiniteGroup::from_permutations(k, &gens)?;
        if g.order() != n {
            return Err(perr(ln, format!("generators produce a group of order {}, header says {n}", g.order())));
        }
        g
    } else {
        return Err(perr(ln, format!("expected 'table' or 'perm <k>', got '{kind}'")));
    };
    for (ln, line) in lines {
        match line.strip_prefix("names") {
            Some(rest) => names = Some(rest.split_whitespace().map(str::to_string).collect()),
            None => return Err(perr(ln, format!("unexpected line '{line}'"))),
        }
    }
    Ok(match names {
        Some(ns) if ns.len() == group.order() => group.with_names(ns),
        Some(ns) => return Err(perr(0, format!("{} names for a group of order {}", ns.len(), group.order()))),
        None => group,
    })
}

/// Parses a built-in constructor: `cyclic n`, `dihedral n` (order `2n`),
/// `product <spec> <spec>`, `trivial`. Tokens may be separated by spaces,
/// colons or commas.
pub fn parse_builtin(spec: &str) -> Result<FiniteGroup> {
    let tokens: Vec<&str> = spec.split(|c: char| c.is_whitespace() || c == ':' || c == ',').filter(|t| !t.is_empty()).collect();
    let mut pos = 0;
    let g = builtin(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(perr(0, format!("trailing tokens in group spec '{spec}'")));
    }
    Ok(g)
}

fn builtin(tokens: &[&str], pos: &mut usize) -> Result<FiniteGroup> {
    let head = *tokens.get(*pos).ok_or_else(|| perr(0, "incomplete group spec"))?;
    *pos += 1;
    let arg = |pos: &mut usize| -> Result<usize> {
        let t = tokens.get(*pos).ok_or_else(|| perr(0, format!("'{head}' needs an argument")))?;
        *pos += 1;
        t.parse().map_err(|_| perr(0, format!("expected an integer after '{head}', got '{t}'")))
    };
    match head {
        "cyclic" => FiniteGroup::cyclic(arg(pos)?),
        "dihedral" => FiniteGroup::dihedral(arg(pos)?),
        "trivial" => Ok(FiniteGroup::trivial()),
        "product" => {
            let a = builtin(tokens, pos)?;
            let b = builtin(tokens, pos)?;
            FiniteGroup::product(&a, &b)
        }
        other => Err(perr(0, format!("unknown group constructor '{other}'"))),
    }
}
