//! Line-oriented scenario files.
//!
//! ```text
//! # comment
//! [network]
//! kind = core_periphery      # complete | complete_bipartite | dense | edges
//! core = 3
//! periphery = 2
//!
//! [values]
//! levels = 20 10             # or: a = <n values>
//! part1 = 0 1 2              # optional for core_periphery / complete_bipartite
//! c = 0 0 0 0 0 0 0 0 0      # optional, zero by default
//!
//! [regulation]
//! kind = uniform             # unrestricted | box | price_difference | average_price | halfspaces
//!
//! [grid]
//! count = 60
//! max_fraction = 0.999999
//! spacing = geometric        # or uniform
//! ```
//!
//! Other network keys: `n` (complete, edges), `m` and `k` (complete_bipartite),
//! repeated `row = ...` (dense) and repeated `edge = i j [w]` (edges).
//! Regulation keys: `lower`/`upper` (box, `inf`/`-inf` allowed, missing
//! means unbounded), `bound = Δ` or repeated `row = ...` (price_difference),
//! `theta` and `cap` (average_price), repeated `halfspace = v₁ … vₙ <= m`.
//! The network and values sections are required.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use netreg::netcore::{gen_complete, gen_complete_bipartite, gen_core_periphery, Network};
use netreg::regulation::{Halfspace, RegulationSet};
use netreg::{Error, Matrix, MarketPrimitives, Result};

pub const DEFAULT_GRID_COUNT: usize = 60;
pub const DEFAULT_MAX_FRACTION: f64 = 0.999999;

#[derive(Debug, Clone, PartialEq)]
pub enum NetworkSpec {
    CorePeriphery { core: usize, periphery: usize },
    Complete { n: usize },
    CompleteBipartite { m: usize, k: usize },
    Dense(Vec<Vec<f64>>),
    Edges { n: Option<usize>, edges: Vec<(usize, usize, f64)> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ValueSpec {
    Explicit(Vec<f64>),
    /// `a = levels.0` on `part1`, `levels.1` elsewhere.
    Levels { levels: (f64, f64), part1: Option<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum RegulationSpec {
    Unrestricted,
    Uniform,
    Box { lower: Vec<f64>, upper: Vec<f64> },
    DifferenceBound(f64),
    DifferenceMatrix(Vec<Vec<f64>>),
    AveragePrice { theta: Vec<f64>, cap: f64 },
    Halfspaces(Vec<(Vec<f64>, f64)>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    /// `δₖ = (1 - (1 - f)^(k/(N-1)))/λ₁`, dense near the bound.
    Geometric,
    /// `δₖ = f·k/((N-1)λ₁)`.
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub count: usize,
    pub max_fraction: f64,
    pub spacing: Spacing,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { count: DEFAULT_GRID_COUNT, max_fraction: DEFAULT_MAX_FRACTION, spacing: Spacing::Geometric }
    }
}

impl GridSpec {
    /// Grid points for a network with spectral radius `lambda1`; every point
    /// satisfies `δλ₁ < 1`.
    pub fn deltas(&self, lambda1: f64) -> Result<Vec<f64>> {
        if !(lambda1 > 0.0) {
            return Err(Error::Validation("a spillover sweep needs at least one edge".into()));
        }
        let last = (self.count - 1) as f64;
        let out: Vec<f64> = (0..self.count)
            .map(|k| {
                let t = k as f64 / last;
                let fraction = match self.spacing {
                    Spacing::Geometric => 1.0 - (1.0 - self.max_fraction).powf(t),
                    Spacing::Uniform => self.max_fraction * t,
                };
                fraction / lambda1
            })
            .collect();
        if out.iter().any(|d| !(d * lambda1 < 1.0)) {
            return Err(Error::Validation("grid reaches the spectral bound".into()));
        }
        Ok(out)
    }
}

/// A validated scenario. Equality compares the specification only.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub network: NetworkSpec,
    pub values: ValueSpec,
    pub costs: Option<Vec<f64>>,
    pub regulation: RegulationSpec,
    pub grid: GridSpec,
    net: Arc<Network<f64>>,
    a: Vec<f64>,
    c: Vec<f64>,
    set: RegulationSet<f64>,
}

impl PartialEq for Scenario {
    fn eq(&self, other: &Self) -> bool {
        self.network == other.network
            && self.values == other.values
            && self.costs == other.costs
            && self.regulation == other.regulation
            && self.grid == other.grid
    }
}

impl Scenario {
    /// Resolves and validates the specification.
    pub fn new(
        network: NetworkSpec,
        values: ValueSpec,
        costs: Option<Vec<f64>>,
        regulation: RegulationSpec,
        grid: GridSpec,
    ) -> Result<Self> {
        let invalid = |e: Error| Error::Validation(e.to_string());
        let net = Arc::new(build_network(&network).map_err(invalid)?);
        let n = net.n();
        let a = resolve_values(&network, &values, n)?;
        let c = match &costs {
            Some(c) if c.len() != n => {
                return Err(Error::Validation(format!("c has {} entries, network has {n} nodes", c.len())))
            }
            Some(c) => c.clone(),
            None => vec![0.0; n],
        };
        MarketPrimitives::new(net.clone(), a.clone(), c.clone(), 0.0).map_err(invalid)?;
        let set = build_regulation(&regulation, n)?;
        set.validate(n).map_err(invalid)?;
        if grid.count < 2 {
            return Err(Error::Validation("grid count must be at least 2".into()));
        }
        if !(grid.max_fraction > 0.0 && grid.max_fraction < 1.0) {
            return Err(Error::Validation(format!(
                "max_fraction = {} must lie in (0, 1)",
                grid.max_fraction
            )));
        }
        grid.deltas(net.lambda1())?;
        Ok(Self { network, values, costs, regulation, grid, net, a, c, set })
    }

    pub fn net(&self) -> &Arc<Network<f64>> {
        &self.net
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn regulation_set(&self) -> &RegulationSet<f64> {
        &self.set
    }

    pub fn deltas(&self) -> Vec<f64> {
        self.grid.deltas(self.net.lambda1()).expect("grid validated at construction")
    }

    pub fn primitives(&self, delta: f64) -> Result<MarketPrimitives<f64>> {
        MarketPrimitives::new(self.net.clone(), self.a.clone(), self.c.clone(), delta)
    }

    /// The high-value class of a two-level value specification.
    pub fn partition(&self) -> Option<Vec<usize>> {
        match &self.values {
            ValueSpec::Levels { part1, .. } => part1.clone().or_else(|| natural_partition(&self.network)),
            ValueSpec::Explicit(_) => natural_partition(&self.network),
        }
    }
}

fn build_network(spec: &NetworkSpec) -> Result<Network<f64>> {
    match spec {
        NetworkSpec::CorePeriphery { core, periphery } => gen_core_periphery(*core, *periphery),
        NetworkSpec::Complete { n } => gen_complete(*n),
        NetworkSpec::CompleteBipartite { m, k } => gen_complete_bipartite(*m, *k),
        NetworkSpec::Dense(rows) => Network::from_rows(rows),
        NetworkSpec::Edges { n, edges } => {
            let size = n.unwrap_or_else(|| edges.iter().map(|(i, j, _)| i.max(j) + 1).max().unwrap_or(0));
            let mut g = Matrix::zeros(size, size);
            for &(i, j, w) in edges {
                if i >= size || j >= size || i == j {
                    return Err(Error::InvalidSize(format!("bad edge ({i}, {j}) for {size} nodes")));
                }
                g[(i, j)] = w;
                g[(j, i)] = w;
            }
            Network::from_adjacency(g)
        }
    }
}

fn natural_partition(spec: &NetworkSpec) -> Option<Vec<usize>> {
    match spec {
        NetworkSpec::CorePeriphery { core, .. } => Some((0..*core).collect()),
        NetworkSpec::CompleteBipartite { m, .. } => Some((0..*m).collect()),
        _ => None,
    }
}

fn resolve_values(network: &NetworkSpec, values: &ValueSpec, n: usize) -> Result<Vec<f64>> {
    match values {
        ValueSpec::Explicit(a) if a.len() != n => {
            Err(Error::Validation(format!("a has {} entries, network has {n} nodes", a.len())))
        }
        ValueSpec::Explicit(a) => Ok(a.clone()),
        ValueSpec::Levels { levels, part1 } => {
            let part = match part1.clone().or_else(|| natural_partition(network)) {
                Some(p) => p,
                None => return Err(Error::Validation("per-part values need part1 for this network".into())),
            };
            let mut inside = vec![false; n];
            for &i in &part {
                if i >= n || inside[i] {
                    return Err(Error::Validation(format!("part1 entry {i} is out of range or repeated")));
                }
                inside[i] = true;
            }
            if part.is_empty() || part.len() == n {
                return Err(Error::Validation("part1 must be a nonempty proper subset".into()));
            }
            Ok(inside.iter().map(|&b| if b { levels.0 } else { levels.1 }).collect())
        }
    }
}

fn build_regulation(spec: &RegulationSpec, n: usize) -> Result<RegulationSet<f64>> {
    let check = |v: &[f64], what: &str| {
        if v.len() != n {
            Err(Error::Validation(format!("{what} has {} entries, network has {n} nodes", v.len())))
        } else {
            Ok(())
        }
    };
    Ok(match spec {
        RegulationSpec::Unrestricted => RegulationSet::Unrestricted,
        RegulationSpec::Uniform => RegulationSet::Uniform,
        RegulationSpec::Box { lower, upper } => {
            check(lower, "lower")?;
            check(upper, "upper")?;
            RegulationSet::Box { lower: lower.clone(), upper: upper.clone() }
        }
        RegulationSpec::DifferenceBound(d) => RegulationSet::constant_difference(n, *d),
        RegulationSpec::DifferenceMatrix(rows) => {
            if rows.len() != n {
                return Err(Error::Validation(format!("difference matrix has {} rows", rows.len())));
            }
            RegulationSet::PriceDifference(Matrix::from_rows(rows).map_err(|e| Error::Validation(e.to_string()))?)
        }
        RegulationSpec::AveragePrice { theta, cap } => {
            check(theta, "theta")?;
            RegulationSet::AveragePrice { theta: theta.clone(), cap: *cap }
        }
        RegulationSpec::Halfspaces(list) => {
            for (v, _) in list {
                check(v, "halfspace normal")?;
            }
            RegulationSet::Halfspaces(list.iter().map(|(v, m)| Halfspace::new(v.clone(), *m)).collect())
        }
    })
}

struct Entry<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
}

struct Document<'a> {
    sections: BTreeMap<&'a str, (usize, Vec<Entry<'a>>)>,
}

const SECTIONS: [&str; 4] = ["network", "values", "regulation", "grid"];

impl<'a> Document<'a> {
    fn parse(text: &'a str) -> Result<Self> {
        let mut sections: BTreeMap<&str, (usize, Vec<Entry>)> = BTreeMap::new();
        let mut current: Option<&str> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let name = name.trim();
                let Some(&known) = SECTIONS.iter().find(|s| **s == name) else {
                    return Err(Error::Parse { line, msg: format!("unknown section [{name}]") });
                };
                if sections.contains_key(known) {
                    return Err(Error::Parse { line, msg: format!("section [{name}] repeated") });
                }
                sections.insert(known, (line, Vec::new()));
                current = Some(known);
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(Error::Parse { line, msg: "expected `key = value`".into() });
            };
            let Some(section) = current else {
                return Err(Error::Parse { line, msg: "entry before any section header".into() });
            };
            let entries = &mut sections.get_mut(section).expect("section exists").1;
            entries.push(Entry { line, key: key.trim(), value: value.trim() });
        }
        Ok(Self { sections })
    }

    fn section(&self, name: &'a str) -> Option<Section<'_, 'a>> {
        self.sections.get(name).map(|(line, entries)| Section { name, line: *line, entries })
    }
}

struct Section<'d, 'a> {
    name: &'a str,
    line: usize,
    entries: &'d [Entry<'a>],
}

impl<'d, 'a> Section<'d, 'a> {
    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for e in self.entries {
            if !allowed.contains(&e.key) {
                return Err(Error::Parse { line: e.line, msg: format!("unknown key `{}` in [{}]", e.key, self.name) });
            }
        }
        Ok(())
    }

    fn all(&self, key: &str) -> Vec<&'d Entry<'a>> {
        self.entries.iter().filter(|e| e.key == key).collect()
    }

    fn get(&self, key: &str) -> Result<Option<&'d Entry<'a>>> {
        let found = self.all(key);
        if found.len() > 1 {
            return Err(Error::Parse { line: found[1].line, msg: format!("key `{key}` repeated") });
        }
        Ok(found.first().copied())
    }

    fn require(&self, key: &str) -> Result<&'d Entry<'a>> {
        self.get(key)?.ok_or_else(|| Error::Parse {
            line: self.line,
            msg: format!("[{}] is missing `{key}`", self.name),
        })
    }
}

fn parse_f64(e: &Entry, tok: &str) -> Result<f64> {
    tok.parse().map_err(|_| Error::Parse { line: e.line, msg: format!("not a number: {tok:?}") })
}

fn parse_usize(e: &Entry, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse { line: e.line, msg: format!("not a count: {tok:?}") })
}

fn floats(e: &Entry) -> Result<Vec<f64>> {
    e.value.split_whitespace().map(|t| parse_f64(e, t)).collect()
}

fn counts(e: &Entry) -> Result<Vec<usize>> {
    e.value.split_whitespace().map(|t| parse_usize(e, t)).collect()
}

fn scalar_f64(e: &Entry) -> Result<f64> {
    match floats(e)?.as_slice() {
        [x] => Ok(*x),
        _ => Err(Error::Parse { line: e.line, msg: format!("`{}` takes one number", e.key) }),
    }
}

fn scalar_usize(e: &Entry) -> Result<usize> {
    match counts(e)?.as_slice() {
        [x] => Ok(*x),
        _ => Err(Error::Parse { line: e.line, msg: format!("`{}` takes one count", e.key) }),
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let doc = Document::parse(text)?;
    let Some(net) = doc.section("network") else {
        return Err(Error::Parse { line: 1, msg: "missing [network] section".into() });
    };
    let kind = net.require("kind")?;
    let network = match kind.value {
        "core_periphery" => {
            net.check_keys(&["kind", "core", "periphery"])?;
            NetworkSpec::CorePeriphery {
                core: scalar_usize(net.require("core")?)?,
                periphery: scalar_usize(net.require("periphery")?)?,
            }
        }
        "complete" => {
            net.check_keys(&["kind", "n"])?;
            NetworkSpec::Complete { n: scalar_usize(net.require("n")?)? }
        }
        "complete_bipartite" => {
            net.check_keys(&["kind", "m", "k"])?;
            NetworkSpec::CompleteBipartite {
                m: scalar_usize(net.require("m")?)?,
                k: scalar_usize(net.require("k")?)?,
            }
        }
        "dense" => {
            net.check_keys(&["kind", "row"])?;
            NetworkSpec::Dense(net.all("row").into_iter().map(floats).collect::<Result<_>>()?)
        }
        "edges" => {
            net.check_keys(&["kind", "n", "edge"])?;
            let n = net.get("n")?.map(scalar_usize).transpose()?;
            let edges = net
                .all("edge")
                .into_iter()
                .map(|e| {
                    let toks: Vec<&str> = e.value.split_whitespace().collect();
                    match toks.as_slice() {
                        [i, j] => Ok((parse_usize(e, i)?, parse_usize(e, j)?, 1.0)),
                        [i, j, w] => Ok((parse_usize(e, i)?, parse_usize(e, j)?, parse_f64(e, w)?)),
                        _ => Err(Error::Parse { line: e.line, msg: "expected `edge = i j [w]`".into() }),
                    }
                })
                .collect::<Result<_>>()?;
            NetworkSpec::Edges { n, edges }
        }
        other => return Err(Error::Parse { line: kind.line, msg: format!("unknown network kind `{other}`") }),
    };

    let (values, costs) = match doc.section("values") {
        None => return Err(Error::Parse { line: 1, msg: "missing [values] section".into() }),
        Some(sec) => {
            sec.check_keys(&["a", "levels", "part1", "c"])?;
            let values = match (sec.get("a")?, sec.get("levels")?) {
                (Some(a), None) => {
                    if let Some(p) = sec.get("part1")? {
                        return Err(Error::Parse { line: p.line, msg: "part1 only applies to levels".into() });
                    }
                    ValueSpec::Explicit(floats(a)?)
                }
                (None, Some(l)) => {
                    let levels = match floats(l)?.as_slice() {
                        [hi, lo] => (*hi, *lo),
                        _ => return Err(Error::Parse { line: l.line, msg: "levels takes two numbers".into() }),
                    };
                    ValueSpec::Levels { levels, part1: sec.get("part1")?.map(counts).transpose()? }
                }
                (Some(a), Some(_)) => {
                    return Err(Error::Parse { line: a.line, msg: "give either `a` or `levels`".into() })
                }
                (None, None) => {
                    return Err(Error::Parse { line: sec.line, msg: "[values] needs `a` or `levels`".into() })
                }
            };
            (values, sec.get("c")?.map(floats).transpose()?)
        }
    };

    let regulation = match doc.section("regulation") {
        None => RegulationSpec::Unrestricted,
        Some(sec) => parse_regulation(&sec, &network)?,
    };

    let grid = match doc.section("grid") {
        None => GridSpec::default(),
        Some(sec) => {
            sec.check_keys(&["count", "max_fraction", "spacing"])?;
            let mut grid = GridSpec::default();
            if let Some(e) = sec.get("count")? {
                grid.count = scalar_usize(e)?;
            }
            if let Some(e) = sec.get("max_fraction")? {
                grid.max_fraction = scalar_f64(e)?;
            }
            if let Some(e) = sec.get("spacing")? {
                grid.spacing = match e.value {
                    "geometric" => Spacing::Geometric,
                    "uniform" => Spacing::Uniform,
                    other => return Err(Error::Parse { line: e.line, msg: format!("unknown spacing `{other}`") }),
                };
            }
            grid
        }
    };

    Scenario::new(network, values, costs, regulation, grid)
}

fn node_count(spec: &NetworkSpec) -> Option<usize> {
    match spec {
        NetworkSpec::CorePeriphery { core, periphery } => Some(core * (1 + periphery)),
        NetworkSpec::Complete { n } => Some(*n),
        NetworkSpec::CompleteBipartite { m, k } => Some(m + k),
        NetworkSpec::Dense(rows) => Some(rows.len()),
        NetworkSpec::Edges { n, edges } => n.or_else(|| edges.iter().map(|(i, j, _)| i.max(j) + 1).max()),
    }
}

fn parse_regulation(sec: &Section, network: &NetworkSpec) -> Result<RegulationSpec> {
    let kind = sec.require("kind")?;
    Ok(match kind.value {
        "unrestricted" => {
            sec.check_keys(&["kind"])?;
            RegulationSpec::Unrestricted
        }
        "uniform" => {
            sec.check_keys(&["kind"])?;
            RegulationSpec::Uniform
        }
        "box" => {
            sec.check_keys(&["kind", "lower", "upper"])?;
            let n = node_count(network).unwrap_or(0);
            let lower = sec.get("lower")?.map(floats).transpose()?.unwrap_or_else(|| vec![f64::NEG_INFINITY; n]);
            let upper = sec.get("upper")?.map(floats).transpose()?.unwrap_or_else(|| vec![f64::INFINITY; n]);
            RegulationSpec::Box { lower, upper }
        }
        "price_difference" => {
            sec.check_keys(&["kind", "bound", "row"])?;
            let rows = sec.all("row");
            match (sec.get("bound")?, rows.is_empty()) {
                (Some(b), true) => RegulationSpec::DifferenceBound(scalar_f64(b)?),
                (None, false) => {
                    RegulationSpec::DifferenceMatrix(rows.into_iter().map(floats).collect::<Result<_>>()?)
                }
                _ => {
                    return Err(Error::Parse { line: kind.line, msg: "give either `bound` or `row` lines".into() })
                }
            }
        }
        "average_price" => {
            sec.check_keys(&["kind", "theta", "cap"])?;
            RegulationSpec::AveragePrice { theta: floats(sec.require("theta")?)?, cap: scalar_f64(sec.require("cap")?)? }
        }
        "halfspaces" => {
            sec.check_keys(&["kind", "halfspace"])?;
            let list = sec
                .all("halfspace")
                .into_iter()
                .map(|e| {
                    let Some((lhs, rhs)) = e.value.split_once("<=") else {
                        return Err(Error::Parse { line: e.line, msg: "expected `v1 ... vn <= m`".into() });
                    };
                    let normal = lhs.split_whitespace().map(|t| parse_f64(e, t)).collect::<Result<Vec<_>>>()?;
                    Ok((normal, parse_f64(e, rhs.trim())?))
                })
                .collect::<Result<_>>()?;
            RegulationSpec::Halfspaces(list)
        }
        other => return Err(Error::Parse { line: kind.line, msg: format!("unknown regulation kind `{other}`") }),
    })
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Canonical text of a scenario; [`parse_scenario`] reads it back unchanged.
pub fn emit_scenario(s: &Scenario) -> String {
    let mut out = String::from("[network]\n");
    match &s.network {
        NetworkSpec::CorePeriphery { core, periphery } => {
            let _ = write!(out, "kind = core_periphery\ncore = {core}\nperiphery = {periphery}\n");
        }
        NetworkSpec::Complete { n } => {
            let _ = write!(out, "kind = complete\nn = {n}\n");
        }
        NetworkSpec::CompleteBipartite { m, k } => {
            let _ = write!(out, "kind = complete_bipartite\nm = {m}\nk = {k}\n");
        }
        NetworkSpec::Dense(rows) => {
            out.push_str("kind = dense\n");
            for r in rows {
                let _ = writeln!(out, "row = {}", join(r));
            }
        }
        NetworkSpec::Edges { n, edges } => {
            out.push_str("kind = edges\n");
            if let Some(n) = n {
                let _ = writeln!(out, "n = {n}");
            }
            for (i, j, w) in edges {
                let _ = writeln!(out, "edge = {i} {j} {w}");
            }
        }
    }
    out.push_str("\n[values]\n");
    match &s.values {
        ValueSpec::Explicit(a) => {
            let _ = writeln!(out, "a = {}", join(a));
        }
        ValueSpec::Levels { levels, part1 } => {
            let _ = writeln!(out, "levels = {} {}", levels.0, levels.1);
            if let Some(p) = part1 {
                let idx: Vec<String> = p.iter().map(|i| i.to_string()).collect();
                let _ = writeln!(out, "part1 = {}", idx.join(" "));
            }
        }
    }
    if let Some(c) = &s.costs {
        let _ = writeln!(out, "c = {}", join(c));
    }
    out.push_str("\n[regulation]\n");
    match &s.regulation {
        RegulationSpec::Unrestricted => out.push_str("kind = unrestricted\n"),
        RegulationSpec::Uniform => out.push_str("kind = uniform\n"),
        RegulationSpec::Box { lower, upper } => {
            let _ = write!(out, "kind = box\nlower = {}\nupper = {}\n", join(lower), join(upper));
        }
        RegulationSpec::DifferenceBound(d) => {
            let _ = write!(out, "kind = price_difference\nbound = {d}\n");
        }
        RegulationSpec::DifferenceMatrix(rows) => {
            out.push_str("kind = price_difference\n");
            for r in rows {
                let _ = writeln!(out, "row = {}", join(r));
            }
        }
        RegulationSpec::AveragePrice { theta, cap } => {
            let _ = write!(out, "kind = average_price\ntheta = {}\ncap = {cap}\n", join(theta));
        }
        RegulationSpec::Halfspaces(list) => {
            out.push_str("kind = halfspaces\n");
            for (v, m) in list {
                let _ = writeln!(out, "halfspace = {} <= {m}", join(v));
            }
        }
    }
    let spacing = match s.grid.spacing {
        Spacing::Geometric => "geometric",
        Spacing::Uniform => "uniform",
    };
    let _ = write!(
        out,
        "\n[grid]\ncount = {}\nmax_fraction = {}\nspacing = {spacing}\n",
        s.grid.count, s.grid.max_fraction
    );
    out
}
