//! JSON job descriptions and their evaluation.
//!
//! ```json
//! {
//!   "vertices": ["s1", "s2"],
//!   "edges": [["s1", "s2", 3]],
//!   "system": {"preset": "milnor-q"},
//!   "command": "cohomology",
//!   "options": {"field": "Q[q]"}
//! }
//! ```
//!
//! Missing edges mean `m = 2`; `"inf"` marks `m = ∞`. Rings are written
//! `Z`, `Q`, `F<p>`, `<base>[q]`, `<base>[q1,q2]` or `Q[q]/phi<h>`.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coefficients::{
    cyclotomic_factorization, CyclotomicField, Integers, Laurent2Ring, LaurentRing, Matrix,
    PrimeField, Rationals, Ring,
};
use crate::complex::{build_chain_complex, build_cochain_complex, GradedComplex};
use crate::coxeter::{
    classify_parabolic, exponents, poincare_polynomial, poincare_series, CoxeterGraph, Label,
};
use crate::dynamic::{AugmentedView, ComplexView, DirectionView, Engine, HomologyView, PagesView};
use crate::localsystems::{symplectic_matrices, Action, LocalSystem};
use crate::{Error, Result, DEFAULT_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeLabel {
    Finite(u32),
    Named(String),
}

impl EdgeLabel {
    pub fn to_label(&self) -> Result<Label> {
        match self {
            EdgeLabel::Finite(m) if *m >= 2 => Ok(Label::Finite(*m)),
            EdgeLabel::Named(s) if s == "inf" || s == "∞" => Ok(Label::Infinite),
            EdgeLabel::Named(s) => s
                .parse::<u32>()
                .ok()
                .filter(|m| *m >= 2)
                .map(Label::Finite)
                .ok_or_else(|| Error::Parse(format!("bad edge label `{s}`"))),
            EdgeLabel::Finite(m) => Err(Error::Parse(format!("edge label {m} is below 2"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    /// One unit per vertex, or one per odd component.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<Vec<String>>,
    /// One square matrix per vertex, as rows of ring elements.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<Vec<String>>>>,
    /// For `two-var-B`: which variable (1 or 2) each odd component gets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<u8>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Complex,
    Cohomology,
    Homology,
    Spectral,
    Poincare,
    Augmented,
    Milnor,
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::Parse(format!("unknown command `{s}`")))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).map_err(|_| fmt::Error)?;
        write!(f, "{}", v.as_str().unwrap_or_default())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Structured,
    /// Matrix-market dump of the differentials; `complex` only.
    Market,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::Parse(format!("unknown format `{s}`")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at_cyclotomic: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    /// `cochain` (default) or `chain`, for `complex` and `spectral`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<DirectionView>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String, EdgeLabel)>,
    #[serde(default)]
    pub system: SystemSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(default)]
    pub options: JobOptions,
}

impl JobSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn graph(&self) -> Result<CoxeterGraph> {
        let edges = self
            .edges
            .iter()
            .map(|(s, t, m)| Ok((s.clone(), t.clone(), m.to_label()?)))
            .collect::<Result<Vec<_>>>()?;
        CoxeterGraph::new(self.vertices.clone(), &edges)
    }

    fn preset(&self) -> Result<Option<Preset>> {
        self.system.preset.as_deref().map(str::parse).transpose()
    }

    /// The ring named by the options, or the natural one for the system.
    pub fn ring_spec(&self) -> Result<RingSpec> {
        if let Some(f) = &self.options.field {
            return f.parse();
        }
        let preset = self.preset()?.or_else(|| self.default_preset());
        Ok(match preset {
            Some(Preset::Constant | Preset::Symplectic(_)) => RingSpec::Integers,
            Some(Preset::Mod(p)) => RingSpec::Prime(p),
            Some(Preset::PlainQ | Preset::MilnorQ) => RingSpec::Laurent(Base::Q),
            Some(Preset::TwoVarB) => RingSpec::Laurent2(Base::Q),
            None => {
                let mut texts: Vec<&str> = Vec::new();
                if let Some(u) = &self.system.units {
                    texts.extend(u.iter().map(String::as_str));
                }
                if let Some(m) = &self.system.matrices {
                    texts.extend(m.iter().flatten().flatten().map(String::as_str));
                }
                if texts.iter().any(|t| t.contains("q1") || t.contains("q2")) {
                    RingSpec::Laurent2(Base::Q)
                } else if texts.iter().any(|t| t.contains('q')) {
                    RingSpec::Laurent(Base::Q)
                } else if texts.iter().any(|t| t.contains('/')) {
                    RingSpec::Rationals
                } else {
                    RingSpec::Integers
                }
            }
        })
    }

    fn default_preset(&self) -> Option<Preset> {
        if self.system.units.is_some() || self.system.matrices.is_some() {
            None
        } else if self.command == Some(Command::Milnor) {
            Some(Preset::MilnorQ)
        } else {
            Some(Preset::Constant)
        }
    }

    /// Whether degrees should also be reported shifted for the Milnor fibre.
    pub fn is_q_system(&self) -> bool {
        matches!(
            self.preset()
                .ok()
                .flatten()
                .or_else(|| self.default_preset()),
            Some(Preset::PlainQ | Preset::MilnorQ)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Constant,
    Mod(u64),
    PlainQ,
    MilnorQ,
    TwoVarB,
    Symplectic(usize),
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let number = |rest: &str| rest.trim().parse::<u64>().ok();
        if let Some(p) = s.strip_prefix("mod").and_then(number) {
            return Ok(Preset::Mod(p));
        }
        if let Some(n) = s.strip_prefix("symplectic").and_then(number) {
            return Ok(Preset::Symplectic(n as usize));
        }
        match s {
            "constant" => Ok(Preset::Constant),
            "plain-q" => Ok(Preset::PlainQ),
            "milnor-q" => Ok(Preset::MilnorQ),
            "two-var-B" => Ok(Preset::TwoVarB),
            _ => Err(Error::Parse(format!("unknown preset `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Z,
    Q,
    F(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Integers,
    Rationals,
    Prime(u64),
    Laurent(Base),
    Laurent2(Base),
    Cyclotomic(u64),
}

impl FromStr for Base {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" => Ok(Base::Z),
            "Q" => Ok(Base::Q),
            f => f
                .strip_prefix('F')
                .and_then(|p| p.parse().ok())
                .map(Base::F)
                .ok_or_else(|| Error::Parse(format!("unknown base ring `{f}`"))),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(h) = s.strip_prefix("Q[q]/phi") {
            return h
                .parse()
                .map(RingSpec::Cyclotomic)
                .map_err(|_| Error::Parse(format!("bad cyclotomic order in `{s}`")));
        }
        if let Some(base) = s.strip_suffix("[q1,q2]") {
            return Ok(RingSpec::Laurent2(base.parse()?));
        }
        if let Some(base) = s.strip_suffix("[q]") {
            return Ok(RingSpec::Laurent(base.parse()?));
        }
        Ok(match s.parse::<Base>()? {
            Base::Z => RingSpec::Integers,
            Base::Q => RingSpec::Rationals,
            Base::F(p) => RingSpec::Prime(p),
        })
    }
}

/// Run `$body` with `$ring` bound to the concrete ring named by `$spec`.
macro_rules! dispatch {
    ($spec:expr, |$ring:ident| $body:expr) => {
        match $spec {
            RingSpec::Integers => {
                let $ring = Integers;
                $body
            }
            RingSpec::Rationals => {
                let $ring = Rationals;
                $body
            }
            RingSpec::Prime(p) => {
                let $ring = PrimeField::new(p)?;
                $body
            }
            RingSpec::Laurent(Base::Z) => {
                let $ring = LaurentRing::new(Integers);
                $body
            }
            RingSpec::Laurent(Base::Q) => {
                let $ring = LaurentRing::new(Rationals);
                $body
            }
            RingSpec::Laurent(Base::F(p)) => {
                let $ring = LaurentRing::new(PrimeField::new(p)?);
                $body
            }
            RingSpec::Laurent2(Base::Z) => {
                let $ring = Laurent2Ring::new(Integers);
                $body
            }
            RingSpec::Laurent2(Base::Q) => {
                let $ring = Laurent2Ring::new(Rationals);
                $body
            }
            RingSpec::Laurent2(Base::F(p)) => {
                let $ring = Laurent2Ring::new(PrimeField::new(p)?);
                $body
            }
            RingSpec::Cyclotomic(h) => {
                let $ring = CyclotomicField::new(h)?;
                $body
            }
        }
    };
}

/// Local system described by the job, over `ring`.
pub fn build_system<R: Ring>(
    job: &JobSpec,
    graph: &CoxeterGraph,
    ring: R,
) -> Result<LocalSystem<R>> {
    let sys = &job.system;
    let given = [
        sys.preset.is_some(),
        sys.units.is_some(),
        sys.matrices.is_some(),
    ];
    if given.iter().filter(|&&b| b).count() > 1 {
        return Err(Error::InvalidSystem(
            "give only one of preset, units, matrices".into(),
        ));
    }
    if let Some(units) = &sys.units {
        let units = units
            .iter()
            .map(|u| ring.parse(u))
            .collect::<Result<Vec<_>>>()?;
        return if units.len() == graph.rank() {
            LocalSystem::abelian(graph, ring, units)
        } else {
            LocalSystem::abelian_from_units(graph, ring, units)
        };
    }
    if let Some(mats) = &sys.matrices {
        let mats = mats
            .iter()
            .map(|m| {
                let rows = m
                    .iter()
                    .map(|r| r.iter().map(|x| ring.parse(x)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let cols = rows.first().map_or(0, Vec::len);
                if rows.iter().any(|r| r.len() != cols) {
                    return Err(Error::InvalidSystem("ragged matrix".into()));
                }
                Ok(Matrix::from_rows(rows, cols))
            })
            .collect::<Result<Vec<_>>>()?;
        return LocalSystem::matrices(graph, ring, mats);
    }
    let preset = job
        .preset()?
        .or_else(|| job.default_preset())
        .unwrap_or(Preset::Constant);
    match preset {
        Preset::Constant => LocalSystem::uniform(graph, ring.clone(), ring.one()),
        Preset::Mod(p) => {
            if ring.info().kind != crate::coefficients::RingKind::IntegersModP(p) {
                return Err(Error::InvalidArgument(format!(
                    "preset `mod {p}` needs the field F{p}, got {}",
                    ring.info().kind
                )));
            }
            LocalSystem::uniform(graph, ring.clone(), ring.one())
        }
        Preset::PlainQ => {
            let q = ring.parse("q")?;
            LocalSystem::uniform(graph, ring, q)
        }
        Preset::MilnorQ => {
            let q = ring.parse("-q")?;
            LocalSystem::uniform(graph, ring, q)
        }
        Preset::TwoVarB => {
            let comps = graph.odd_components();
            let vars = sys.variables.clone().unwrap_or_else(|| {
                (0..comps.len())
                    .map(|i| if i == 0 { 1 } else { 2 })
                    .collect()
            });
            let units = vars
                .iter()
                .map(|v| match v {
                    1 => ring.parse("q1"),
                    2 => ring.parse("q2"),
                    _ => Err(Error::InvalidSystem(format!(
                        "variable index {v} is not 1 or 2"
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            LocalSystem::abelian_from_units(graph, ring, units)
        }
        Preset::Symplectic(n) => {
            if graph.rank() != 2 || graph.m(0, 1) != Label::Finite(3) {
                return Err(Error::InvalidGraph(
                    "the symplectic preset needs two vertices joined by m = 3".into(),
                ));
            }
            let (mats, _) = symplectic_matrices(&ring, n);
            LocalSystem::matrices(graph, ring, mats)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareRow {
    pub subset: String,
    pub kind: String,
    /// Decimal, to stay exact in JSON.
    pub order: String,
    pub exponents: Vec<u32>,
    pub polynomial: String,
    pub cyclotomic: String,
    /// `Σ_w λ(w)` for abelian systems.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weighted: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: Command,
    pub ring: String,
    pub vertices: Vec<String>,
    pub q_system: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexView>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homology: Option<HomologyView>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub milnor: Option<HomologyView>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral: Option<PagesView>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poincare: Option<Vec<PoincareRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub augmented: Option<AugmentedView>,
    /// Matrix-market text, for the `market` format.
    #[serde(skip)]
    pub market: Option<String>,
}

impl Report {
    fn empty(job: &JobSpec, command: Command, ring: String) -> Self {
        Report {
            command,
            ring,
            vertices: job.vertices.clone(),
            q_system: job.is_q_system(),
            complex: None,
            homology: None,
            milnor: None,
            spectral: None,
            poincare: None,
            augmented: None,
            market: None,
        }
    }

    pub fn to_structured(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_structured(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Evaluate a job without rendering.
pub fn run_report(job: &JobSpec) -> Result<Report> {
    let command = job
        .command
        .ok_or_else(|| Error::InvalidArgument("no command given".into()))?;
    let spec = job.ring_spec()?;
    dispatch!(spec, |ring| run_with(job, command, ring))
}

/// Evaluate a job and render it in the requested format.
pub fn run_job(job: &JobSpec) -> Result<String> {
    let report = run_report(job)?;
    match job.options.format.unwrap_or(Format::Table) {
        Format::Table => Ok(render_table(&report)),
        Format::Structured => Ok(report.to_structured() + "\n"),
        Format::Market => report.market.ok_or_else(|| {
            Error::InvalidArgument("the market format needs the complex command".into())
        }),
    }
}

fn run_with<R: Engine>(job: &JobSpec, command: Command, ring: R) -> Result<Report> {
    let graph = job.graph()?;
    let cap = job.options.cap.unwrap_or(DEFAULT_CAP);
    let h = job.options.at_cyclotomic;
    let ring_name = match h {
        Some(h) => format!("Q[q]/phi{h}"),
        None => ring.info().kind.to_string(),
    };
    let mut report = Report::empty(job, command, ring_name);
    let sys = build_system(job, &graph, ring)?;
    let chain = job.options.direction == Some(DirectionView::Chain);
    let build = |chain: bool| -> Result<GradedComplex<R>> {
        if chain {
            build_chain_complex(&graph, &sys, cap)
        } else {
            build_cochain_complex(&graph, &sys, cap)
        }
    };
    match command {
        Command::Complex => {
            let cx = build(chain)?;
            match h {
                Some(h) => {
                    let k = R::at_cyclotomic(&cx, h)?;
                    report.market = Some(k.to_matrix_market());
                    report.complex = Some(ComplexView::new(&k));
                }
                None => {
                    report.market = Some(cx.to_matrix_market());
                    report.complex = Some(ComplexView::new(&cx));
                }
            }
        }
        Command::Cohomology | Command::Homology | Command::Milnor => {
            let cx = build(command == Command::Homology)?;
            let view = match h {
                Some(h) => CyclotomicField::homology(&R::at_cyclotomic(&cx, h)?)?,
                None => R::homology(&cx)?,
            };
            if command == Command::Milnor || (report.q_system && command == Command::Cohomology) {
                report.milnor = Some(view.milnor_shift());
            }
            report.homology = Some(view);
        }
        Command::Spectral => {
            let cx = build(chain)?;
            report.spectral = Some(match h {
                Some(h) => CyclotomicField::pages(&R::at_cyclotomic(&cx, h)?)?,
                None => R::pages(&cx)?,
            });
        }
        Command::Poincare => report.poincare = Some(poincare_rows(&graph, &sys, cap)?),
        Command::Augmented => {
            if h.is_some() {
                return Err(Error::InvalidArgument(
                    "the augmented complex is computed over the polynomial ring; drop --at-cyclotomic".into(),
                ));
            }
            report.augmented = Some(R::augmented(&graph, &sys, cap)?);
        }
    }
    Ok(report)
}

fn poincare_rows<R: Ring>(
    graph: &CoxeterGraph,
    sys: &LocalSystem<R>,
    cap: usize,
) -> Result<Vec<PoincareRow>> {
    let all = graph.all();
    let mut subsets = vec![all];
    subsets.extend((0..graph.rank()).map(|s| all.without(s)));
    subsets.dedup();
    let z = LaurentRing::new(Integers);
    let mut rows = Vec::new();
    for t in subsets {
        let ptype = classify_parabolic(graph, t)?;
        if !ptype.is_finite() {
            if t == all {
                rows.push(PoincareRow {
                    subset: graph.render_subset(t),
                    kind: ptype.render(),
                    order: "inf".into(),
                    exponents: Vec::new(),
                    polynomial: String::new(),
                    cyclotomic: String::new(),
                    weighted: None,
                });
            }
            continue;
        }
        let poly = poincare_polynomial(graph, t)?;
        let weighted = match sys.action() {
            Action::Abelian(units) => {
                Some(
                    sys.ring()
                        .render(&poincare_series(graph, t, sys.ring(), units, cap)?),
                )
            }
            Action::Matrix(_) => None,
        };
        rows.push(PoincareRow {
            subset: graph.render_subset(t),
            kind: ptype.render(),
            order: ptype.order().map_or("inf".into(), |o| o.to_string()),
            exponents: exponents(&ptype)?,
            polynomial: z.render(&poly),
            cyclotomic: cyclotomic_factorization(&poly, crate::homology::CYCLOTOMIC_BOUND).render(),
            weighted,
        });
    }
    Ok(rows)
}

fn paren(c: &str) -> String {
    if c.contains(' ') {
        format!("({c})")
    } else {
        c.to_string()
    }
}

fn render_complex(out: &mut String, cx: &ComplexView) {
    let (sym, chain) = match cx.direction {
        DirectionView::Cochain => ("δ", false),
        DirectionView::Chain => ("∂", true),
    };
    let r = cx.module_rank;
    let _ = writeln!(out, "complex over {}, module rank {r}", cx.ring);
    for (k, gens) in cx.generators.iter().enumerate() {
        let _ = writeln!(
            out,
            "C{}{k}: {}",
            if chain { "_" } else { "^" },
            gens.iter()
                .map(|g| format!("e{g}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    for m in &cx.differentials {
        if m.from == m.to {
            continue;
        }
        let targets = &cx.generators[m.to];
        for (j, g) in cx.generators[m.from].iter().enumerate() {
            if r == 1 {
                let terms: Vec<String> = targets
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m.entries[*i][j] != "0")
                    .map(|(i, t)| format!("{}·e{t}", paren(&m.entries[i][j])))
                    .collect();
                let rhs = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join(" + ")
                };
                let _ = writeln!(out, "{sym} e{g} = {rhs}");
                continue;
            }
            for (i, t) in targets.iter().enumerate() {
                let block: Vec<Vec<&str>> = (0..r)
                    .map(|a| {
                        (0..r)
                            .map(|b| m.entries[i * r + a][j * r + b].as_str())
                            .collect()
                    })
                    .collect();
                if block.iter().flatten().all(|x| *x == "0") {
                    continue;
                }
                let _ = writeln!(out, "{sym} e{g} -> e{t}:");
                for row in block {
                    let _ = writeln!(out, "  [{}]", row.join(", "));
                }
            }
        }
    }
}

fn render_homology(out: &mut String, h: &HomologyView, shifted: bool) {
    let chain = h.direction == DirectionView::Chain;
    let mark = if chain { "_" } else { "^" };
    for d in &h.degrees {
        let mut line = format!("H{mark}{} = {}", d.degree, d.description);
        if let Some(dim) = d.dimension {
            let _ = write!(line, "  [dim {dim}]");
        }
        if shifted && d.degree > 0 {
            let _ = write!(line, "  (Milnor fibre H^{})", d.degree - 1);
        }
        let _ = writeln!(out, "{line}");
    }
}

fn render_pages(out: &mut String, p: &PagesView) {
    let _ = writeln!(
        out,
        "spectral sequence over {}, {:?} direction, degenerates at E_{}",
        p.ring, p.direction, p.r_max
    );
    let smax = p
        .pages
        .iter()
        .flat_map(|pg| pg.entries.iter().map(|e| e.0))
        .max()
        .unwrap_or(0);
    let tmax = p
        .pages
        .iter()
        .flat_map(|pg| pg.entries.iter().map(|e| e.1))
        .max()
        .unwrap_or(0);
    for (idx, page) in p.pages.iter().enumerate() {
        let last = idx + 1 == p.pages.len();
        let _ = writeln!(out, "E_{}{}:", page.r, if last { " = E_inf" } else { "" });
        for t in (0..=tmax).rev() {
            let cells: Vec<String> = (0..=smax)
                .map(|s| {
                    let d = page
                        .entries
                        .iter()
                        .find(|e| e.0 == s && e.1 == t)
                        .map_or(0, |e| e.2);
                    format!("{d:>3}")
                })
                .collect();
            let _ = writeln!(out, "  t={t:<2}{}", cells.join(""));
        }
        for d in &page.differentials {
            let rows: Vec<String> = d
                .matrix
                .iter()
                .map(|r| format!("[{}]", r.join(", ")))
                .collect();
            let _ = writeln!(
                out,
                "  d_{}: {:?} -> {:?} = {}",
                page.r,
                d.source,
                d.target,
                rows.join(" ")
            );
        }
    }
}

/// Human-readable rendering of a report.
pub fn render_table(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {} on [{}] over {}",
        r.command,
        r.vertices.join(", "),
        r.ring
    );
    if let Some(cx) = &r.complex {
        render_complex(&mut out, cx);
    }
    if let Some(h) = &r.homology {
        render_homology(
            &mut out,
            h,
            r.milnor.is_some() && r.command != Command::Milnor,
        );
    }
    if let (Some(m), Command::Milnor) = (&r.milnor, r.command) {
        let _ = writeln!(out, "Milnor fibre:");
        for d in &m.degrees {
            let dim = d
                .dimension
                .map_or(String::new(), |x| format!("  [dim {x}]"));
            let _ = writeln!(out, "H^{}(F) = {}{dim}", d.degree, d.description);
        }
    }
    if let Some(p) = &r.spectral {
        render_pages(&mut out, p);
    }
    if let Some(rows) = &r.poincare {
        for row in rows {
            let _ = writeln!(out, "W{} : {} (order {})", row.subset, row.kind, row.order);
            if row.order != "inf" {
                let _ = writeln!(out, "  exponents {:?}", row.exponents);
                let _ = writeln!(out, "  W(q) = {} = {}", row.polynomial, row.cyclotomic);
            }
            if let Some(w) = &row.weighted {
                let _ = writeln!(out, "  sum of λ(w) = {w}");
            }
        }
    }
    if let Some(a) = &r.augmented {
        let _ = writeln!(out, "quasi-Poincaré polynomial: {}", a.quasi_poincare);
        for (i, s) in a.series.iter().enumerate() {
            let _ = writeln!(
                out,
                "  W_(S - {}) = {s}",
                r.vertices.get(i).map_or("?", |v| v.as_str())
            );
        }
        let _ = writeln!(out, "cohomology of C:");
        render_homology(&mut out, &a.cohomology, false);
        let _ = writeln!(out, "cohomology of the augmented complex:");
        render_homology(&mut out, &a.augmented_cohomology, false);
    }
    if r.q_system && r.milnor.is_some() && r.command != Command::Milnor {
        let _ = writeln!(out, "# H^(k+1)(A; L_q) = H^k(F; R) for the Milnor fibre F");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(text: &str) -> JobSpec {
        JobSpec::parse(text).unwrap()
    }

    const A2: &str = r#"{"vertices": ["s1", "s2"], "edges": [["s1", "s2", 3]]"#;

    #[test]
    fn ring_grammar() {
        assert_eq!("Z".parse::<RingSpec>().unwrap(), RingSpec::Integers);
        assert_eq!("F7".parse::<RingSpec>().unwrap(), RingSpec::Prime(7));
        assert_eq!(
            "F2[q]".parse::<RingSpec>().unwrap(),
            RingSpec::Laurent(Base::F(2))
        );
        assert_eq!(
            "Q[q1, q2]".parse::<RingSpec>().unwrap(),
            RingSpec::Laurent2(Base::Q)
        );
        assert_eq!(
            "Q[q]/phi5".parse::<RingSpec>().unwrap(),
            RingSpec::Cyclotomic(5)
        );
        assert!(matches!("R".parse::<RingSpec>(), Err(Error::Parse(_))));
    }

    #[test]
    fn presets() {
        assert_eq!("mod 3".parse::<Preset>().unwrap(), Preset::Mod(3));
        assert_eq!(
            "symplectic 2".parse::<Preset>().unwrap(),
            Preset::Symplectic(2)
        );
        assert!("quantum".parse::<Preset>().is_err());
    }

    #[test]
    fn plain_q_cohomology() {
        let j = job(&format!(
            r#"{A2}, "system": {{"preset": "plain-q"}}, "command": "cohomology"}}"#
        ));
        let r = run_report(&j).unwrap();
        let h = r.homology.as_ref().unwrap();
        assert_eq!(h.degree(1).unwrap().torsion, vec!["-1 + q"]);
        assert_eq!(h.degree(2).unwrap().torsion, vec!["1 - q + q^2"]);
        assert!(r.milnor.is_some());
        let text = render_table(&r);
        assert!(text.contains("H^1 = Q[q]/(phi1)"), "{text}");
        assert!(text.contains("H^2 = Q[q]/(phi6)"));
        assert!(text.contains("Milnor fibre H^0"));
    }

    #[test]
    fn structured_round_trip() {
        let j = job(&format!(
            r#"{A2}, "system": {{"preset": "milnor-q"}}, "command": "complex"}}"#
        ));
        let r = run_report(&j).unwrap();
        let back = Report::from_structured(&r.to_structured()).unwrap();
        assert_eq!(
            Report {
                market: None,
                ..r.clone()
            },
            back
        );
        let ring = LaurentRing::new(Rationals);
        let cx = back
            .complex
            .unwrap()
            .to_complex(ring.clone(), &j.graph().unwrap())
            .unwrap();
        let direct = build_cochain_complex(
            &j.graph().unwrap(),
            &build_system(&j, &j.graph().unwrap(), ring).unwrap(),
            100,
        )
        .unwrap();
        for k in 0..cx.num_degrees() {
            assert_eq!(cx.differential(k), direct.differential(k));
        }
    }

    #[test]
    fn errors_carry_codes() {
        assert_eq!(JobSpec::parse("{").unwrap_err().exit_code(), 1);
        let inf = job(
            r#"{"vertices": ["a", "b", "c"], "edges": [["a", "b", "inf"], ["b", "c", "inf"], ["a", "c", "inf"]], "system": {"preset": "plain-q"}, "command": "augmented"}"#,
        );
        assert_eq!(run_report(&inf).unwrap_err().exit_code(), 2);
        let two = job(&format!(
            r#"{A2}, "system": {{"preset": "plain-q"}}, "command": "homology", "options": {{"field": "Z[q]"}}}}"#
        ));
        assert_eq!(run_report(&two).unwrap_err().exit_code(), 3);
        let cap = job(
            r#"{"vertices": ["a", "b"], "edges": [["a", "b", 40]], "command": "complex", "options": {"cap": 10, "direction": "chain"}, "system": {"units": ["2", "3"]}}"#,
        );
        let e = run_report(&cap).unwrap_err();
        assert_eq!(e.exit_code(), 2, "{e}");
    }

    #[test]
    fn empty_graph() {
        let r = run_report(&job(r#"{"vertices": [], "command": "cohomology"}"#)).unwrap();
        let h = r.homology.unwrap();
        assert_eq!(h.degrees.len(), 1);
        assert_eq!(h.degree(0).unwrap().description, "Z");
    }

    #[test]
    fn symplectic_complex_table() {
        let j = job(&format!(
            r#"{A2}, "system": {{"preset": "symplectic 1"}}, "command": "complex"}}"#
        ));
        let text = run_job(&j).unwrap();
        assert_eq!(text.matches("->").count(), 4, "{text}");
        assert!(text.contains("δ e{} -> e{s1}:"));
    }
}
