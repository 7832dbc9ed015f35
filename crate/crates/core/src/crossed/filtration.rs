use serde::Serialize;

use super::prim::PrimPoset;
use crate::error::{Error, Result};

/// Block data of one node of a filtration subquotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeBlock {
    pub node: usize,
    pub location: usize,
    pub irrep: usize,
    pub degree: usize,
    pub block_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationStep {
    /// 1-based position in the filtration.
    pub step: usize,
    pub size: usize,
    pub new_nodes: Vec<NodeBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub steps: Vec<FiltrationStep>,
    pub valid: bool,
}

impl FiltrationReport {
    pub fn step_sizes(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.new_nodes.len()).collect()
    }
}

/// Validates an increasing chain of open node sets and reports the nodes
/// added at each step with their block sizes.
pub fn filtration_report(poset: &PrimPoset, sets: &[Vec<usize>]) -> Result<FiltrationReport> {
    let mut previous: Vec<bool> = vec![false; poset.len()];
    let mut steps = Vec::new();
    for (k, set) in sets.iter().enumerate() {
        if let Some(&bad) = set.iter().find(|&&a| a >= poset.len()) {
            return Err(Error::NotApplicable(format!("node {bad} does not exist")));
        }
        let mut current = vec![false; poset.len()];
        for &a in set {
            current[a] = true;
        }
        if previous.iter().zip(&current).any(|(&p, &c)| p && !c) {
            return Err(Error::NotApplicable(format!("filtration set {} does not contain its predecessor", k + 1)));
        }
        if !poset.is_open(set) {
            return Err(Error::NotOpen(k + 1));
        }
        let new_nodes = (0..poset.len())
            .filter(|&a| current[a] && !previous[a])
            .map(|a| {
                let n = &poset.nodes[a];
                NodeBlock {
                    node: a,
                    location: n.location,
                    irrep: n.irrep,
                    degree: n.degree,
                    block_dim: poset.group_order / n.stabilizer.order() * n.degree,
                }
            })
            .collect();
        steps.push(FiltrationStep { step: k + 1, size: current.iter().filter(|&&c| c).count(), new_nodes });
        previous = current;
    }
    Ok(FiltrationReport { steps, valid: true })
}

/// Parses a filtration file. Each non-empty line lists the nodes added at
/// that step as `(location, irrep)` pairs, optionally after a label ending
/// in `:`. Returns the cumulative node sets.
pub fn parse_filtration(text: &str, poset: &PrimPoset) -> Result<Vec<Vec<usize>>> {
    let mut sets = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let body = match line.split_once(':') {
            Some((_, rest)) => rest,
            None => line,
        };
        for pair in body.split(')').map(str::trim).filter(|p| !p.is_empty()) {
            let inner = pair.strip_prefix('(').ok_or_else(|| Error::Parse { line: ln, msg: format!("expected '(', got '{pair}'") })?;
            let (a, b) = inner.split_once(',').ok_or_else(|| Error::Parse { line: ln, msg: "expected '(location, irrep)'".into() })?;
            let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse { line: ln, msg: format!("bad integer '{}'", t.trim()) });
            let (loc, irrep) = (parse(a)?, parse(b)?);
            let node = poset
                .find(loc, irrep)
                .ok_or_else(|| Error::Parse { line: ln, msg: format!("no node ({loc}, {irrep})") })?;
            if !current.contains(&node) {
                current.push(node);
            }
        }
        let mut sorted = current.clone();
        sorted.sort_unstable();
        sets.push(sorted);
    }
    Ok(sets)
}
