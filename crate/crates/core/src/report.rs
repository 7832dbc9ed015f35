//! Command dispatch and rendering shared by the command-line tool and the
//! browser demo. Every run yields one document `{meta, payload, flags}` and
//! a plain-text table.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::crossed::{
    aggregate_strata, fiber_decomposition, filtration_report, inclusion_multiplicities, ix_nodes, parse_filtration,
    specialization, PrimPoset,
};
use crate::error::{Error, Result};
use crate::gcomplex::{
    fixed_subcomplex, fixture, isotropy_strata, parse_complex, to_text, orbits_and_stabilizers, quotient_complex_with, GSimplicialComplex,
    SubdivisionPolicy,
};
use crate::grouptheory::{character_table, FiniteGroup, Subgroup, ASSOCIATIVITY_SEED, EXHAUSTIVE_ASSOCIATIVITY_BOUND};
use crate::homology::{homology_integral, HomologyResult};
use crate::ktheory::{
    bc_decomposition_with, bc_vs_count_identity, equivariant_euler_with, euler_quotient_check_with, invariants_check_with,
    isolated_k_theory_with, EulerMethod,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EulerChoice {
    Method(EulerMethod),
    QuotientCheck,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Group,
    Complex,
    Orbits,
    /// Element tokens: names or indices.
    Fixed(Vec<String>),
    Quotient,
    Betti,
    Euler(EulerChoice),
    /// Subgroup generator tokens.
    Fiber(Vec<String>),
    Prim { aggregate: bool },
    /// Contents of a filtration file.
    Filtration(String),
    Bc,
    KTheory,
    IdentityCheck,
    Fixture { emit: bool },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Group => "group",
            Command::Complex => "complex",
            Command::Orbits => "orbits",
            Command::Fixed(_) => "fixed",
            Command::Quotient => "quotient",
            Command::Betti => "betti",
            Command::Euler(_) => "euler",
            Command::Fiber(_) => "fiber",
            Command::Prim { .. } => "prim",
            Command::Filtration(_) => "filtration",
            Command::Bc => "bc",
            Command::KTheory => "ktheory",
            Command::IdentityCheck => "identity-check",
            Command::Fixture { .. } => "fixture",
        }
    }
}

/// Resolved inputs: a group and, for most commands, a complex with action.
#[derive(Debug, Clone)]
pub struct Input {
    /// Fixture name or a description of the files used.
    pub source: String,
    pub fixture: Option<String>,
    pub group: FiniteGroup,
    pub action: Option<GSimplicialComplex>,
    /// Subdivisions applied while building a fixture.
    pub subdivisions: usize,
}

impl Input {
    pub fn from_fixture(name: &str) -> Result<Self> {
        let f = fixture(name)?;
        Ok(Input {
            source: f.name.clone(),
            fixture: Some(f.name),
            group: f.action.group().clone(),
            action: Some(f.action),
            subdivisions: f.subdivisions,
        })
    }

    /// Builds inputs from file contents. Without an action the group acts
    /// trivially; without a group, the trivial group is used.
    pub fn from_texts(group: Option<FiniteGroup>, complex: Option<&str>) -> Result<Self> {
        let group = group.unwrap_or_else(FiniteGroup::trivial);
        let action = match complex {
            None => None,
            Some(text) => {
                let (c, gens) = parse_complex(text)?;
                Some(GSimplicialComplex::from_generators(c, group.clone(), &gens)?)
            }
        };
        Ok(Input { source: "input".into(), fixture: None, group, action, subdivisions: 0 })
    }

    fn action(&self) -> Result<&GSimplicialComplex> {
        self.action.as_ref().ok_or_else(|| Error::InvalidComplex("no complex given".into()))
    }
}

/// A structured warning attached to a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub kind: String,
    pub reference: Option<String>,
    pub detail: String,
}

impl Flag {
    fn new(kind: &str, detail: impl Into<String>) -> Self {
        Flag { kind: kind.into(), reference: None, detail: detail.into() }
    }
}

/// Published values that the computation contradicts, keyed by fixture.
struct Claim {
    fixture: &'static str,
    reference: &'static str,
    quantity: &'static str,
    rank: usize,
    text: &'static str,
}

const CLAIMS: &[Claim] = &[Claim { fixture: "z4-torus", reference: "ex-sphere", quantity: "K0", rank: 8, text: "Z^8" }];

fn claim_flags(input: &Input, computed_rank: usize, computed: &str, cross_check: &str) -> Vec<Flag> {
    CLAIMS
        .iter()
        .filter(|c| input.fixture.as_deref() == Some(c.fixture) && c.rank != computed_rank)
        .map(|c| Flag {
            kind: "paper-discrepancy".into(),
            reference: Some(c.reference.into()),
            detail: format!("{} claimed {}, computed {}; {}", c.quantity, c.text, computed, cross_check),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub meta: Value,
    pub payload: Value,
    pub flags: Vec<Flag>,
    pub table: String,
}

impl Report {
    pub fn to_value(&self) -> Value {
        json!({ "meta": self.meta, "payload": self.payload, "flags": self.flags })
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report values are serializable");
        s.push('\n');
        s
    }

    /// The table followed by one line per flag.
    pub fn to_text(&self) -> String {
        let mut s = self.table.clone();
        for f in &self.flags {
            match &f.reference {
                Some(r) => writeln!(s, "flag {}({}): {}", f.kind, r, f.detail),
                None => writeln!(s, "flag {}: {}", f.kind, f.detail),
            }
            .unwrap();
        }
        s
    }
}

/// JSON document for a failed run.
pub fn error_document(command: &str, err: &Error) -> Value {
    json!({
        "meta": { "command": command },
        "payload": { "error": { "kind": err.name(), "message": err.to_string(), "refusal": err.is_refusal() } },
        "flags": [],
    })
}

fn big(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn names(group: &FiniteGroup, elements: &[usize]) -> Vec<String> {
    elements.iter().map(|&g| group.name(g)).collect()
}

fn subgroup_text(group: &FiniteGroup, k: &Subgroup) -> String {
    format!("{{{}}}", names(group, k.elements()).join(", "))
}

fn subgroup_json(group: &FiniteGroup, k: &Subgroup) -> Value {
    json!({ "order": k.order(), "elements": names(group, k.elements()) })
}

fn lookup_all(group: &FiniteGroup, tokens: &[String]) -> Result<Vec<usize>> {
    tokens
        .iter()
        .map(|t| group.lookup(t).ok_or_else(|| Error::Parse { line: 0, msg: format!("unknown group element '{t}'") }))
        .collect()
}

fn homology_json(h: &HomologyResult) -> Value {
    json!({
        "betti": h.betti,
        "torsion": h.torsion.iter().map(|t| t.iter().map(big).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn homology_text(h: &HomologyResult, out: &mut String) {
    writeln!(out, "degree  betti  torsion").unwrap();
    for (k, b) in h.betti.iter().enumerate() {
        let t: Vec<String> = h.torsion.get(k).map(|t| t.iter().map(|d| format!("Z/{d}")).collect()).unwrap_or_default();
        writeln!(out, "{k:>6}  {b:>5}  {}", if t.is_empty() { "-".into() } else { t.join(" ") }).unwrap();
    }
}

/// Runs one command on resolved inputs.
pub fn run(command: &Command, input: &Input, policy: SubdivisionPolicy) -> Result<Report> {
    let group = &input.group;
    let mut meta = json!({
        "command": command.name(),
        "source": input.source,
        "group_order": group.order(),
        "fixture_subdivisions": input.subdivisions,
        "subdivision_policy": policy,
    });
    if let Some(x) = &input.action {
        meta["simplex_counts"] = json!(x.complex().counts());
    }
    if group.order() > EXHAUSTIVE_ASSOCIATIVITY_BOUND {
        meta["associativity_seed"] = json!(ASSOCIATIVITY_SEED);
    }
    let mut flags = Vec::new();
    let mut t = String::new();

    let payload = match command {
        Command::Group => {
            let ct = character_table(group)?;
            let cd = ct.classes();
            writeln!(t, "order {}  exponent {}  abelian {}", group.order(), group.exponent(), group.is_abelian()).unwrap();
            let reps: Vec<String> = cd.reps().iter().map(|&g| group.name(g)).collect();
            writeln!(t, "class  {}", reps.join("  ")).unwrap();
            writeln!(t, "size   {}", (0..cd.len()).map(|k| cd.class_size(k).to_string()).collect::<Vec<_>>().join("  ")).unwrap();
            for irr in ct.irreps() {
                let vals: Vec<String> = irr.values.iter().map(|v| v.to_string()).collect();
                writeln!(t, "chi{}   {}", irr.id, vals.join("  ")).unwrap();
            }
            json!({
                "order": group.order(),
                "exponent": group.exponent(),
                "abelian": group.is_abelian(),
                "elements": names(group, &group.elements().collect::<Vec<_>>()),
                "classes": (0..cd.len()).map(|k| json!({
                    "rep": group.name(cd.rep(k)),
                    "members": names(group, cd.class(k)),
                    "centralizer_order": cd.centralizer(k).order(),
                })).collect::<Vec<_>>(),
                "irreps": ct.irreps().iter().map(|i| json!({
                    "id": i.id,
                    "degree": i.degree,
                    "values": i.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            })
        }
        Command::Complex => {
            let x = input.action()?;
            let c = x.complex();
            writeln!(t, "vertices {}  dimension {}  counts {:?}  euler {}", c.vertex_count(), c.dim(), c.counts(), c.euler_characteristic()).unwrap();
            writeln!(t, "admissible {}", x.is_admissible()).unwrap();
            json!({
                "vertices": c.vertex_count(),
                "dimension": c.dim(),
                "counts": c.counts(),
                "euler": c.euler_characteristic(),
                "admissible": x.is_admissible(),
                "maximal_simplices": c.maximal_simplices(),
            })
        }
        Command::Orbits => {
            let x = input.action()?;
            let od = orbits_and_stabilizers(x)?;
            let strata = isotropy_strata(x)?;
            writeln!(t, "orbit  dim  rep  size  stabilizer").unwrap();
            for o in od.orbits() {
                writeln!(
                    t,
                    "{:>5}  {:>3}  {:?}  {:>4}  {}",
                    o.id,
                    o.dim,
                    x.complex().simplex(o.dim, o.rep),
                    o.members.len(),
                    subgroup_text(group, &o.stabilizer)
                )
                .unwrap();
            }
            writeln!(t, "stratum  stabilizer  orbits").unwrap();
            for s in &strata {
                writeln!(t, "{:>7}  {}  {:?}", s.id, subgroup_text(group, &s.stabilizer), s.simplex_orbits).unwrap();
            }
            json!({
                "orbits": od.orbits().iter().map(|o| json!({
                    "id": o.id,
                    "dim": o.dim,
                    "rep": x.complex().simplex(o.dim, o.rep),
                    "size": o.members.len(),
                    "stabilizer": subgroup_json(group, &o.stabilizer),
                })).collect::<Vec<_>>(),
                "strata": strata.iter().map(|s| json!({
                    "id": s.id,
                    "stabilizer": subgroup_json(group, &s.stabilizer),
                    "orbits": s.simplex_orbits,
                    "connected": s.connected,
                })).collect::<Vec<_>>(),
            })
        }
        Command::Fixed(tokens) => {
            let x = input.action()?;
            let elts = lookup_all(group, tokens)?;
            let f = fixed_subcomplex(x, &elts)?;
            let h = homology_integral(&f)?;
            writeln!(t, "fixed set of {{{}}}: counts {:?}  euler {}", names(group, &elts).join(", "), f.counts(), f.euler_characteristic()).unwrap();
            homology_text(&h, &mut t);
            json!({
                "elements": names(group, &elts),
                "counts": f.counts(),
                "euler": f.euler_characteristic(),
                "homology": homology_json(&h),
            })
        }
        Command::Quotient => {
            let x = input.action()?;
            let q = quotient_complex_with(x, policy)?;
            let h = homology_integral(&q.complex)?;
            writeln!(t, "quotient counts {:?}  subdivisions {}  euler {}", q.complex.counts(), q.subdivisions, q.complex.euler_characteristic()).unwrap();
            homology_text(&h, &mut t);
            json!({
                "counts": q.complex.counts(),
                "subdivisions": q.subdivisions,
                "euler": q.complex.euler_characteristic(),
                "homology": homology_json(&h),
            })
        }
        Command::Betti => {
            let x = input.action()?;
            let h = homology_integral(x.complex())?;
            homology_text(&h, &mut t);
            let mut payload = json!({ "homology": homology_json(&h), "euler": h.euler_characteristic() });
            let inv = invariants_check_with(x, policy)?;
            writeln!(t, "invariant cohomology {:?}  quotient betti {:?}  equal {}", inv.invariant_dims, inv.quotient_betti, inv.equal).unwrap();
            if !inv.equal {
                flags.push(Flag::new("invariants-mismatch", "invariant cohomology differs from the quotient's"));
            }
            payload["invariants"] = json!(inv);
            payload
        }
        Command::Euler(choice) => {
            let x = input.action()?;
            match choice {
                EulerChoice::Method(m) => {
                    let v = equivariant_euler_with(x, *m, policy)?;
                    writeln!(t, "equivariant euler ({}) = {v}", serde_json::to_value(m).unwrap().as_str().unwrap_or("")).unwrap();
                    json!({ "method": m, "value": v })
                }
                EulerChoice::QuotientCheck => {
                    let c = euler_quotient_check_with(x, policy)?;
                    let rhs = c.rhs.map_or_else(|| format!("{}/{}", c.fixed_sum, c.group_order), |r| r.to_string());
                    writeln!(t, "chi(quotient) = {}  average chi(X^g) = {rhs}  equal {}", c.lhs, c.equal).unwrap();
                    if c.rhs.is_none() {
                        flags.push(Flag::new("non-integral-result", format!("sum of fixed-set Euler characteristics {rhs}")));
                    } else if !c.equal {
                        flags.push(Flag::new("identity-failed", format!("{} != {rhs}", c.lhs)));
                    }
                    json!({ "method": "quotient-check", "check": c })
                }
            }
        }
        Command::Fiber(tokens) => {
            let gens = lookup_all(group, tokens)?;
            let k = group.subgroup(&gens);
            let fd = fiber_decomposition(group, &k)?;
            let whole = group.whole();
            let res = inclusion_multiplicities(group, &k, &whole)?;
            writeln!(t, "stabilizer {}  index {}", subgroup_text(group, &k), fd.index).unwrap();
            writeln!(t, "irrep  degree  block  multiplicity").unwrap();
            for b in &fd.blocks {
                writeln!(t, "{:>5}  {:>6}  M{:<4}  {}", b.irrep, b.degree, b.block_dim, b.multiplicity).unwrap();
            }
            writeln!(t, "total {}", fd.total()).unwrap();
            writeln!(t, "restriction multiplicities (rows: irreps of K, columns: irreps of G)").unwrap();
            for row in &res.entries {
                writeln!(t, "  {:?}", row).unwrap();
            }
            json!({
                "stabilizer": subgroup_json(group, &k),
                "index": fd.index,
                "blocks": fd.blocks,
                "total": fd.total(),
                "restriction": res.entries,
            })
        }
        Command::Prim { aggregate } => {
            let x = input.action()?;
            let poset = prim_poset(x, *aggregate)?;
            let ix = ix_nodes(&poset)?;
            if !poset.is_t0() {
                flags.push(Flag::new("not-t0", "specialization preorder identifies distinct nodes"));
            }
            prim_text(&poset, group, &ix.nodes, &mut t);
            json!({
                "level": poset.level,
                "nodes": poset.nodes.iter().map(|n| json!({
                    "id": n.id,
                    "location": n.location,
                    "irrep": n.irrep,
                    "degree": n.degree,
                    "stabilizer_order": n.stabilizer.order(),
                })).collect::<Vec<_>>(),
                "relation": poset.edges(),
                "ix": ix.nodes,
                "ix_open": ix.open,
                "t0": poset.is_t0(),
            })
        }
        Command::Filtration(text) => {
            let x = input.action()?;
            let poset = prim_poset(x, true)?;
            let sets = parse_filtration(text, &poset)?;
            let r = filtration_report(&poset, &sets)?;
            writeln!(t, "step  size  added  blocks").unwrap();
            for s in &r.steps {
                let blocks: Vec<String> = s.new_nodes.iter().map(|n| format!("({},{}):M{}", n.location, n.irrep, n.block_dim)).collect();
                writeln!(t, "{:>4}  {:>4}  {:>5}  {}", s.step, s.size, s.new_nodes.len(), blocks.join(" ")).unwrap();
            }
            json!({ "steps": r.steps, "step_sizes": r.step_sizes(), "valid": r.valid })
        }
        Command::Bc => {
            let x = input.action()?;
            let bc = bc_decomposition_with(x, policy)?;
            writeln!(t, "class  size  centralizer  quotient betti  K0  K1").unwrap();
            for c in &bc.components {
                writeln!(t, "{:>5}  {:>4}  {:>11}  {:<14}  {:>2}  {:>2}", format!("[{}]", c.rep_name), c.class_size, c.centralizer_order, format!("{:?}", c.quotient_betti), c.ranks.even, c.ranks.odd).unwrap();
            }
            writeln!(t, "totals: K0 rank {}, K1 rank {}", bc.totals.even, bc.totals.odd).unwrap();
            flags.extend(claim_flags(input, bc.totals.even, &format!("rank {}", bc.totals.even), "from the conjugacy-class decomposition"));
            json!({
                "per_class": bc.components.iter().map(|c| json!({
                    "rep": c.rep_name,
                    "class_size": c.class_size,
                    "centralizer_order": c.centralizer_order,
                    "quotient_betti": c.quotient_betti,
                    "subdivisions": c.subdivisions,
                    "even": c.ranks.even,
                    "odd": c.ranks.odd,
                })).collect::<Vec<_>>(),
                "totals": { "even": bc.totals.even, "odd": bc.totals.odd },
            })
        }
        Command::KTheory => {
            let x = input.action()?;
            let k = isolated_k_theory_with(x, policy)?;
            writeln!(t, "singular orbits {}  extra irreps {}", k.singular_orbits.len(), k.singular_orbits.iter().map(|s| s.extra_irreps).sum::<usize>()).unwrap();
            writeln!(t, "quotient: K0 = {}, K1 = {}", k.quotient_k0, k.quotient_k1).unwrap();
            writeln!(t, "boundary {}", k.boundary_status).unwrap();
            writeln!(t, "K0 = {}, K1 = {}", k.k0, k.k1).unwrap();
            if let Some(c) = &k.caveat {
                flags.push(Flag::new("rank-only", c.clone()));
            }
            let cross = bc_decomposition_with(x, policy)?.totals;
            if cross.even != k.k0.rank || cross.odd != k.k1.rank {
                flags.push(Flag::new("bc-mismatch", format!("bc totals ({}, {})", cross.even, cross.odd)));
            }
            flags.extend(claim_flags(input, k.k0.rank, &k.k0.to_string(), &format!("bc totals ({}, {})", cross.even, cross.odd)));
            json!({
                "k0": { "rank": k.k0.rank, "torsion": k.k0.torsion, "text": k.k0.to_string() },
                "k1": { "rank": k.k1.rank, "torsion": k.k1.torsion, "text": k.k1.to_string() },
                "quotient_k0": k.quotient_k0.to_string(),
                "quotient_k1": k.quotient_k1.to_string(),
                "quotient_betti": k.quotient_betti,
                "boundary": k.boundary_status,
                "torsion_bounds": k.torsion_bounds,
                "singular_orbits": k.singular_orbits.iter().map(|s| json!({
                    "orbit": s.orbit,
                    "vertex": s.vertex,
                    "stabilizer": subgroup_json(group, &s.stabilizer),
                    "extra_irreps": s.extra_irreps,
                })).collect::<Vec<_>>(),
                "caveat": k.caveat,
            })
        }
        Command::IdentityCheck => {
            let x = input.action()?;
            let c = bc_vs_count_identity(x)?;
            writeln!(t, "sum over non-trivial classes {}  count of extra irreps {}  equal {}", c.lhs, c.rhs, c.equal).unwrap();
            if !c.equal {
                flags.push(Flag::new("identity-failed", format!("{} != {}", c.lhs, c.rhs)));
            }
            json!(c)
        }
        Command::Fixture { emit } => {
            let x = input.action()?;
            let text = to_text(x);
            if *emit {
                t.push_str(&group.to_text());
                t.push_str(&text);
            } else {
                writeln!(t, "{}: group order {}  counts {:?}  subdivisions {}", input.source, group.order(), x.complex().counts(), input.subdivisions).unwrap();
            }
            json!({ "group": group.to_text(), "complex": text, "counts": x.complex().counts(), "subdivisions": input.subdivisions })
        }
    };
    Ok(Report { meta, payload, flags, table: t })
}

fn prim_poset(x: &GSimplicialComplex, aggregate: bool) -> Result<PrimPoset> {
    let poset = specialization(x)?;
    if aggregate {
        aggregate_strata(x, &poset, &isotropy_strata(x)?)
    } else {
        Ok(poset)
    }
}

fn prim_text(poset: &PrimPoset, group: &FiniteGroup, ix: &[usize], t: &mut String) {
    writeln!(t, "node  location  irrep  degree  stabilizer order").unwrap();
    for n in &poset.nodes {
        writeln!(t, "{:>4}  {:>8}  {:>5}  {:>6}  {}", n.id, n.location, n.irrep, n.degree, n.stabilizer.order()).unwrap();
    }
    for (a, b) in poset.edges() {
        writeln!(t, "{a} <= {b}").unwrap();
    }
    writeln!(t, "nodes {}  ix {:?} (size {})  group order {}", poset.len(), ix, ix.len(), group.order()).unwrap();
}
