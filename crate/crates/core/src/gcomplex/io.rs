use super::action::GSimplicialComplex;
use super::complex::SimplicialComplex;
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| t.parse().map_err(|_| perr(line, format!("expected an integer, got '{t}'"))))
        .collect()
}

/// Generator images read from `act <element> : <permutation>` lines.
pub type GeneratorImages = Vec<(usize, Vec<usize>)>;

/// Parses a complex file: `vertices <n>`, then `simplex v0 … vk` lines.
/// `act` lines may be interleaved and are returned separately.
pub fn parse_complex(text: &str) -> Result<(SimplicialComplex, GeneratorImages)> {
    let mut vertex_count = None;
    let mut simplices = Vec::new();
    let mut acts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices") {
            if vertex_count.is_some() {
                return Err(perr(ln, "duplicate 'vertices' line"));
            }
            vertex_count = Some(rest.trim().parse().map_err(|_| perr(ln, "expected 'vertices <n>'"))?);
        } else if let Some(rest) = line.strip_prefix("simplex") {
            let s = numbers(ln, rest)?;
            if s.is_empty() {
                return Err(perr(ln, "empty simplex"));
            }
            simplices.push(s);
        } else if line.starts_with("act") {
            acts.push(parse_act_line(ln, line)?);
        } else {
            return Err(perr(ln, format!("unexpected line '{line}'")));
        }
    }
    let n = vertex_count.ok_or_else(|| perr(0, "missing 'vertices <n>' header"))?;
    Ok((SimplicialComplex::from_maximal(n, &simplices)?, acts))
}

/// Parses an action file consisting only of `act` lines.
pub fn parse_action(text: &str) -> Result<GeneratorImages> {
    let mut acts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if !line.is_empty() {
            acts.push(parse_act_line(i + 1, line)?);
        }
    }
    Ok(acts)
}

fn parse_act_line(ln: usize, line: &str) -> Result<(usize, Vec<usize>)> {
    let rest = line.strip_prefix("act").ok_or_else(|| perr(ln, "expected 'act <g> : <perm>'"))?;
    let (g, perm) = rest.split_once(':').ok_or_else(|| perr(ln, "expected ':' in act line"))?;
    let g = g.trim().parse().map_err(|_| perr(ln, format!("bad element index '{}'", g.trim())))?;
    Ok((g, numbers(ln, perm)?))
}

/// Complex file with the action appended as `act` lines.
pub fn to_text(x: &GSimplicialComplex) -> String {
    let mut out = x.complex().to_text();
    out.push_str(&x.action_text());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcomplex::fixture;

    #[test]
    fn fixtures_round_trip() {
        for name in ["d4-torus", "z4-torus", "z2-flip-torus", "z2-circle", "trivial-on(sphere)"] {
            let x = fixture(name).unwrap().action;
            let (c, acts) = parse_complex(&to_text(&x)).unwrap();
            let back = GSimplicialComplex::from_generators(c, x.group().clone(), &acts).unwrap();
            assert_eq!(back, x, "{name}");
        }
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = parse_complex("vertices 3\nsimplex 0 x\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, msg: "expected an integer, got 'x'".into() });
        assert!(parse_complex("simplex 0 1\n").is_err());
        assert!(parse_action("act 1 0 1\n").is_err());
    }
}
