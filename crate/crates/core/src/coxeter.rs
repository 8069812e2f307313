//! Coxeter graphs: finite-type classification of parabolic subgroups,
//! exponents, reduced words, minimal coset representatives.
//!
//! Group elements are realized as permutations of the (finite) root system
//! of the parabolic subgroup. The roots are built in floating point from the
//! Tits form `B(α_s, α_t) = -cos(π / m(s,t))`; only the resulting
//! permutations are used afterwards, so every downstream result is exact.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::coefficients::{q_integer, IntPoly, Integers, LaurentRing, Ring};
use crate::{Error, Result};

/// Edge label `m(s, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => write!(f, "inf"),
        }
    }
}

/// A set of vertices, as a bitmask over vertex indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const MAX_VERTICES: usize = 64;

    pub fn empty() -> Self {
        VertexSet(0)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        VertexSet(1 << i)
    }

    pub fn from_indices(it: impl IntoIterator<Item = usize>) -> Self {
        VertexSet(it.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        VertexSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        VertexSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    /// Indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// Number of members smaller than `i`.
    pub fn count_below(self, i: usize) -> usize {
        (self.0 & ((1u64 << i) - 1)).count_ones() as usize
    }
}

/// A Coxeter graph with a total order on its vertices (their list order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterGraph {
    names: Vec<String>,
    m: Vec<Vec<Label>>,
}

impl CoxeterGraph {
    /// Vertices in order; edges `(s, t, m)`, unlisted pairs default to 2.
    pub fn new(names: Vec<String>, edges: &[(String, String, Label)]) -> Result<Self> {
        let n = names.len();
        if n > VertexSet::MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "at most 64 vertices supported, got {n}"
            )));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || !seen.insert(name.as_str()) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate or empty vertex name `{name}`"
                )));
            }
        }
        let mut m = vec![vec![Label::Finite(2); n]; n];
        let mut set = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Label::Finite(1);
        }
        let index = |s: &str| {
            names
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::UnknownVertex(s.to_string()))
        };
        for (s, t, label) in edges {
            let (i, j) = (index(s)?, index(t)?);
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at `{s}`")));
            }
            if let Label::Finite(v) = label {
                if *v < 2 {
                    return Err(Error::InvalidGraph(format!(
                        "label {v} on ({s}, {t}) must be >= 2"
                    )));
                }
            }
            if set[i][j] && m[i][j] != *label {
                return Err(Error::InvalidGraph(format!(
                    "conflicting labels on ({s}, {t})"
                )));
            }
            set[i][j] = true;
            set[j][i] = true;
            m[i][j] = *label;
            m[j][i] = *label;
        }
        Ok(CoxeterGraph { names, m })
    }

    /// From a full symmetric matrix (diagonal ignored).
    pub fn from_matrix(names: Vec<String>, matrix: Vec<Vec<Label>>) -> Result<Self> {
        let n = names.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGraph(
                "matrix shape does not match vertex count".into(),
            ));
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && matrix[i][j] != matrix[j][i] {
                    return Err(Error::InvalidGraph(format!(
                        "matrix not symmetric at ({}, {})",
                        names[i], names[j]
                    )));
                }
                if i < j {
                    edges.push((names[i].clone(), names[j].clone(), matrix[i][j]));
                }
            }
        }
        Self::new(names, &edges)
    }

    fn default_names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("s{i}")).collect()
    }

    fn path(labels: &[Label]) -> Self {
        let names = Self::default_names(labels.len() + 1);
        let edges: Vec<_> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (names[i].clone(), names[i + 1].clone(), l))
            .collect();
        Self::new(names, &edges).expect("valid path graph")
    }

    /// Linear graph `s1 - s2 - ... - sn`, all labels 3.
    pub fn type_a(n: usize) -> Self {
        if n == 0 {
            return Self::new(Vec::new(), &[]).expect("empty graph");
        }
        Self::path(&vec![Label::Finite(3); n - 1])
    }

    /// `s1 =4= s2 - ... - sn`.
    pub fn type_b(n: usize) -> Self {
        assert!(n >= 2, "B_n needs n >= 2");
        let mut labels = vec![Label::Finite(3); n - 1];
        labels[0] = Label::Finite(4);
        Self::path(&labels)
    }

    /// Rank-two graph with label `m`.
    pub fn dihedral(m: Label) -> Self {
        Self::path(&[m])
    }

    /// Affine `Ã_n`: a cycle on `n + 1` vertices, or two vertices joined by ∞ for `n = 1`.
    pub fn affine_a(n: usize) -> Self {
        assert!(n >= 1);
        if n == 1 {
            return Self::dihedral(Label::Infinite);
        }
        let names = Self::default_names(n + 1);
        let edges: Vec<_> = (0..=n)
            .map(|i| {
                (
                    names[i].clone(),
                    names[(i + 1) % (n + 1)].clone(),
                    Label::Finite(3),
                )
            })
            .collect();
        Self::new(names, &edges).expect("valid cycle")
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn m(&self, i: usize, j: usize) -> Label {
        self.m[i][j]
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.rank())
    }

    /// Resolve vertex names to a set.
    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names.iter().try_fold(VertexSet::empty(), |acc, s| {
            Ok(acc.with(self.index(s.as_ref())?))
        })
    }

    /// `{s1,s2}` style rendering.
    pub fn render_subset(&self, t: VertexSet) -> String {
        let names: Vec<&str> = t.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Bitstring `ε1...εN` with `εi = 1` iff `si ∈ T`.
    pub fn bitstring(&self, t: VertexSet) -> String {
        (0..self.rank())
            .map(|i| if t.contains(i) { '1' } else { '0' })
            .collect()
    }

    /// Parse a bitstring of length `rank`.
    pub fn from_bitstring(&self, s: &str) -> Result<VertexSet> {
        if s.len() != self.rank() || !s.chars().all(|c| c == '0' || c == '1') {
            return Err(Error::Parse(format!(
                "`{s}` is not a bitstring of length {}",
                self.rank()
            )));
        }
        Ok(VertexSet::from_indices(
            s.chars()
                .enumerate()
                .filter(|(_, c)| *c == '1')
                .map(|(i, _)| i),
        ))
    }

    /// Full subgraph on `t`, vertices kept in order.
    pub fn subgraph(&self, t: VertexSet) -> CoxeterGraph {
        let idx: Vec<usize> = t.iter().filter(|&i| i < self.rank()).collect();
        CoxeterGraph {
            names: idx.iter().map(|&i| self.names[i].clone()).collect(),
            m: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.m[i][j]).collect())
                .collect(),
        }
    }

    /// Edges with `m >= 3` (including ∞), as index pairs `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, Label)> {
        let mut out = Vec::new();
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                if self.m[i][j] != Label::Finite(2) {
                    out.push((i, j, self.m[i][j]));
                }
            }
        }
        out
    }

    /// Connected components of `t` in the graph of edges accepted by `keep`.
    fn components(&self, t: VertexSet, keep: impl Fn(Label) -> bool) -> Vec<VertexSet> {
        let mut left = t;
        let mut out = Vec::new();
        while let Some(start) = left.iter().next() {
            let mut comp = VertexSet::singleton(start);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in left.iter() {
                    if !comp.contains(w) && w != v && keep(self.m[v][w]) {
                        comp = comp.with(w);
                        queue.push_back(w);
                    }
                }
            }
            left = VertexSet(left.0 & !comp.0);
            out.push(comp);
        }
        out
    }

    /// Components of the graph whose edges are the odd finite labels.
    pub fn odd_components(&self) -> Vec<VertexSet> {
        self.components(self.all(), |m| matches!(m, Label::Finite(k) if k % 2 == 1))
    }
}

/// Irreducible finite Coxeter types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    I2(u32),
}

impl FiniteType {
    pub fn rank(self) -> usize {
        match self {
            FiniteType::A(n)
            | FiniteType::B(n)
            | FiniteType::D(n)
            | FiniteType::E(n)
            | FiniteType::H(n) => n,
            FiniteType::F4 => 4,
            FiniteType::I2(_) => 2,
        }
    }

    pub fn exponents(self) -> Vec<u32> {
        match self {
            FiniteType::A(n) => (1..=n as u32).collect(),
            FiniteType::B(n) => (0..n as u32).map(|i| 2 * i + 1).collect(),
            FiniteType::D(n) => {
                let mut e: Vec<u32> = (0..n as u32 - 1).map(|i| 2 * i + 1).collect();
                e.push(n as u32 - 1);
                e.sort_unstable();
                e
            }
            FiniteType::E(6) => vec![1, 4, 5, 7, 8, 11],
            FiniteType::E(7) => vec![1, 5, 7, 9, 11, 13, 17],
            FiniteType::E(_) => vec![1, 7, 11, 13, 17, 19, 23, 29],
            FiniteType::F4 => vec![1, 5, 7, 11],
            FiniteType::H(3) => vec![1, 5, 9],
            FiniteType::H(_) => vec![1, 11, 19, 29],
            FiniteType::I2(m) => vec![1, m - 1],
        }
    }

    pub fn order(self) -> u128 {
        self.exponents().iter().map(|&e| e as u128 + 1).product()
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E(n) => write!(f, "E{n}"),
            FiniteType::F4 => write!(f, "F4"),
            FiniteType::H(n) => write!(f, "H{n}"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// One irreducible component of a finite parabolic subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: FiniteType,
    pub vertices: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParabolicType {
    /// Components ordered by their smallest vertex; empty for `T = ∅`.
    Finite(Vec<Component>),
    Infinite,
}

impl ParabolicType {
    pub fn is_finite(&self) -> bool {
        matches!(self, ParabolicType::Finite(_))
    }

    /// `|W_T|`, or `None` when infinite.
    pub fn order(&self) -> Option<u128> {
        match self {
            ParabolicType::Finite(c) => Some(c.iter().map(|c| c.kind.order()).product()),
            ParabolicType::Infinite => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            ParabolicType::Infinite => "infinite".into(),
            ParabolicType::Finite(c) if c.is_empty() => "trivial".into(),
            ParabolicType::Finite(c) => c
                .iter()
                .map(|c| c.kind.to_string())
                .collect::<Vec<_>>()
                .join(" x "),
        }
    }
}

/// Classify one connected component given as ordered vertex indices.
fn classify_component(graph: &CoxeterGraph, verts: &[usize]) -> Option<FiniteType> {
    let k = verts.len();
    if k == 1 {
        return Some(FiniteType::A(1));
    }
    let mut adj: HashMap<usize, Vec<(usize, u32)>> = HashMap::new();
    let mut edge_count = 0;
    for (a, &i) in verts.iter().enumerate() {
        for &j in &verts[a + 1..] {
            match graph.m(i, j) {
                Label::Infinite => return None,
                Label::Finite(2) => {}
                Label::Finite(m) => {
                    adj.entry(i).or_default().push((j, m));
                    adj.entry(j).or_default().push((i, m));
                    edge_count += 1;
                }
            }
        }
    }
    if edge_count != k - 1 {
        return None;
    }
    if k == 2 {
        let m = adj[&verts[0]][0].1;
        return Some(match m {
            3 => FiniteType::A(2),
            4 => FiniteType::B(2),
            m => FiniteType::I2(m),
        });
    }
    let degree = |v: usize| adj.get(&v).map_or(0, |a| a.len());
    let branch: Vec<usize> = verts.iter().copied().filter(|&v| degree(v) >= 3).collect();
    let all_three = adj.values().flatten().all(|&(_, m)| m == 3);
    if branch.is_empty() {
        // walk the path from one end
        let start = *verts.iter().find(|&&v| degree(v) == 1)?;
        let mut labels = Vec::new();
        let (mut prev, mut cur) = (usize::MAX, start);
        loop {
            let next = adj[&cur].iter().find(|&&(w, _)| w != prev);
            match next {
                Some(&(w, m)) => {
                    labels.push(m);
                    prev = cur;
                    cur = w;
                }
                None => break,
            }
        }
        if all_three {
            return Some(FiniteType::A(k));
        }
        let odd: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] != 3).collect();
        if odd.len() != 1 {
            return None;
        }
        let pos = odd[0];
        let at_end = pos == 0 || pos == labels.len() - 1;
        return match labels[pos] {
            4 if at_end => Some(FiniteType::B(k)),
            4 if k == 4 => Some(FiniteType::F4),
            5 if at_end && (k == 3 || k == 4) => Some(FiniteType::H(k)),
            _ => None,
        };
    }
    if branch.len() != 1 || degree(branch[0]) != 3 || !all_three {
        return None;
    }
    let center = branch[0];
    let mut arms: Vec<usize> = adj[&center]
        .iter()
        .map(|&(first, _)| {
            let (mut prev, mut cur, mut len) = (center, first, 1);
            while let Some(&(w, _)) = adj[&cur].iter().find(|&&(w, _)| w != prev) {
                if degree(cur) > 2 {
                    return usize::MAX;
                }
                prev = cur;
                cur = w;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, c] => Some(FiniteType::D(c + 3)),
        [1, 2, 2] => Some(FiniteType::E(6)),
        [1, 2, 3] => Some(FiniteType::E(7)),
        [1, 2, 4] => Some(FiniteType::E(8)),
        _ => None,
    }
}

/// Finite-type classification of `W_T` by matching labeled diagrams.
pub fn classify_parabolic(graph: &CoxeterGraph, t: VertexSet) -> Result<ParabolicType> {
    check_subset(graph, t)?;
    let mut comps = Vec::new();
    for c in graph.components(t, |m| m != Label::Finite(2)) {
        let verts: Vec<usize> = c.iter().collect();
        match classify_component(graph, &verts) {
            Some(kind) => comps.push(Component { kind, vertices: c }),
            None => return Ok(ParabolicType::Infinite),
        }
    }
    Ok(ParabolicType::Finite(comps))
}

fn check_subset(graph: &CoxeterGraph, t: VertexSet) -> Result<()> {
    if !t.is_subset(graph.all()) {
        let bad = t.iter().find(|&i| i >= graph.rank()).unwrap_or(0);
        return Err(Error::UnknownVertex(format!("#{bad}")));
    }
    Ok(())
}

/// Exponents of a finite type, concatenated over components and sorted.
pub fn exponents(ptype: &ParabolicType) -> Result<Vec<u32>> {
    match ptype {
        ParabolicType::Infinite => Err(Error::InfiniteParabolic("given type".into())),
        ParabolicType::Finite(c) => {
            let mut e: Vec<u32> = c.iter().flat_map(|c| c.kind.exponents()).collect();
            e.sort_unstable();
            Ok(e)
        }
    }
}

/// A word in the generators, stored as vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    pub letters: Vec<usize>,
}

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord {
            letters: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Space-separated generator names, `e` for the empty word.
    pub fn render(&self, graph: &CoxeterGraph) -> String {
        if self.letters.is_empty() {
            return "e".into();
        }
        self.letters
            .iter()
            .map(|&i| graph.name(i))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

const TOL: f64 = 1e-7;

/// A finite parabolic subgroup with all its elements enumerated.
#[derive(Clone, Debug)]
pub struct ParabolicGroup {
    subset: VertexSet,
    /// `gens[k]` is the global index of the k-th generator.
    gens: Vec<usize>,
    /// `simple_root[k]` is the index of `α_{gens[k]}` among the roots.
    simple_root: Vec<usize>,
    positive: Vec<bool>,
    /// Permutation of the roots for each simple reflection.
    reflections: Vec<Vec<u16>>,
    perms: Vec<Vec<u16>>,
    words: Vec<ReducedWord>,
    index: HashMap<Vec<u16>, usize>,
}

impl ParabolicGroup {
    /// Enumerate `W_T`, failing when infinite or larger than `cap`.
    pub fn new(graph: &CoxeterGraph, t: VertexSet, cap: usize) -> Result<Self> {
        let ptype = classify_parabolic(graph, t)?;
        let order = ptype
            .order()
            .ok_or_else(|| Error::InfiniteParabolic(subset_names(graph, t)))?;
        if order > cap as u128 {
            return Err(Error::CapExceeded {
                subset: subset_names(graph, t),
                needed: order,
                cap,
            });
        }
        let gens: Vec<usize> = t.iter().collect();
        let k = gens.len();
        let form: Vec<Vec<f64>> = gens
            .iter()
            .map(|&i| {
                gens.iter()
                    .map(|&j| match graph.m(i, j) {
                        Label::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
                        Label::Infinite => -1.0,
                    })
                    .collect()
            })
            .collect();
        let reflect = |s: usize, v: &[f64]| -> Vec<f64> {
            let b: f64 = (0..k).map(|j| form[s][j] * v[j]).sum();
            let mut out = v.to_vec();
            out[s] -= 2.0 * b;
            out
        };
        let find = |roots: &[Vec<f64>], v: &[f64]| {
            roots
                .iter()
                .position(|r| r.iter().zip(v).all(|(a, b)| (a - b).abs() < TOL))
        };
        let mut roots: Vec<Vec<f64>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let mut frontier: Vec<usize> = (0..k).collect();
        while let Some(r) = frontier.pop() {
            for s in 0..k {
                let v = reflect(s, &roots[r]);
                if find(&roots, &v).is_none() {
                    roots.push(v);
                    frontier.push(roots.len() - 1);
                }
            }
        }
        let positive: Vec<bool> = roots.iter().map(|r| r.iter().sum::<f64>() > 0.0).collect();
        let reflections: Vec<Vec<u16>> = (0..k)
            .map(|s| {
                roots
                    .iter()
                    .map(|r| find(&roots, &reflect(s, r)).expect("root system closed") as u16)
                    .collect()
            })
            .collect();
        let simple_root: Vec<usize> = (0..k).collect();

        let identity: Vec<u16> = (0..roots.len() as u16).collect();
        let mut group = ParabolicGroup {
            subset: t,
            gens,
            simple_root,
            positive,
            reflections,
            perms: vec![identity.clone()],
            words: vec![ReducedWord::identity()],
            index: HashMap::from([(identity, 0)]),
        };
        group.enumerate();
        debug_assert_eq!(group.perms.len() as u128, order);
        Ok(group)
    }

    fn compose(a: &[u16], b: &[u16]) -> Vec<u16> {
        b.iter().map(|&i| a[i as usize]).collect()
    }

    fn inverse(a: &[u16]) -> Vec<u16> {
        let mut inv = vec![0u16; a.len()];
        for (i, &x) in a.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        inv
    }

    /// Breadth-first by length; each new element gets its lexicographically
    /// least reduced word `t · word(t w)` with `t` its smallest left descent.
    fn enumerate(&mut self) {
        let k = self.gens.len();
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next_perms: Vec<Vec<u16>> = Vec::new();
            let mut seen: HashSet<Vec<u16>> = HashSet::new();
            for &w in &level {
                for s in 0..k {
                    let p = &self.perms[w];
                    if !self.positive[p[self.simple_root[s]] as usize] {
                        continue;
                    }
                    let ws = Self::compose(p, &self.reflections[s]);
                    if seen.insert(ws.clone()) {
                        next_perms.push(ws);
                    }
                }
            }
            let mut entries: Vec<(ReducedWord, Vec<u16>)> = next_perms
                .into_iter()
                .map(|p| {
                    let inv = Self::inverse(&p);
                    let t = (0..k)
                        .find(|&t| !self.positive[inv[self.simple_root[t]] as usize])
                        .expect("nontrivial element has a left descent");
                    let rest = Self::compose(&self.reflections[t], &p);
                    let mut letters = vec![self.gens[t]];
                    letters.extend(&self.words[self.index[&rest]].letters);
                    (ReducedWord { letters }, p)
                })
                .collect();
            entries.sort();
            level.clear();
            for (word, p) in entries {
                self.index.insert(p.clone(), self.perms.len());
                level.push(self.perms.len());
                self.perms.push(p);
                self.words.push(word);
            }
        }
    }

    pub fn subset(&self) -> VertexSet {
        self.subset
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    /// Canonical words, sorted by length then lexicographically.
    pub fn words(&self) -> &[ReducedWord] {
        &self.words
    }

    /// Element index of the product of `letters`; `None` if a letter is outside `T`.
    pub fn element_of(&self, letters: &[usize]) -> Option<usize> {
        let mut p: Vec<u16> = (0..self.positive.len() as u16).collect();
        for &l in letters {
            let k = self.gens.iter().position(|&g| g == l)?;
            p = Self::compose(&p, &self.reflections[k]);
        }
        self.index.get(&p).copied()
    }

    /// Coxeter length of element `i`.
    pub fn length(&self, i: usize) -> usize {
        self.words[i].len()
    }

    /// Whether `s` (global index) is a right descent of element `i`.
    pub fn is_right_descent(&self, i: usize, s: usize) -> bool {
        match self.gens.iter().position(|&g| g == s) {
            Some(k) => !self.positive[self.perms[i][self.simple_root[k]] as usize],
            None => false,
        }
    }

    /// Elements with no right descent in `t`: the minimal representatives of `W / W_t`.
    pub fn minimal_reps(&self, t: VertexSet) -> Vec<ReducedWord> {
        (0..self.order())
            .filter(|&i| !t.iter().any(|s| self.is_right_descent(i, s)))
            .map(|i| self.words[i].clone())
            .collect()
    }
}

fn subset_names(graph: &CoxeterGraph, t: VertexSet) -> String {
    t.iter()
        .map(|i| graph.name(i))
        .collect::<Vec<_>>()
        .join(",")
}

/// One canonical reduced word per element of `W_T`.
pub fn enumerate_elements(
    graph: &CoxeterGraph,
    t: VertexSet,
    cap: usize,
) -> Result<Vec<ReducedWord>> {
    Ok(ParabolicGroup::new(graph, t, cap)?.words)
}

/// Minimal length representatives of `W_{T∪{s}} / W_T`.
pub fn minimal_coset_reps(
    graph: &CoxeterGraph,
    t: VertexSet,
    s: usize,
    cap: usize,
) -> Result<Vec<ReducedWord>> {
    if s >= graph.rank() {
        return Err(Error::UnknownVertex(format!("#{s}")));
    }
    if t.contains(s) {
        return Err(Error::InvalidArgument(format!(
            "`{}` already in {}",
            graph.name(s),
            graph.render_subset(t)
        )));
    }
    Ok(ParabolicGroup::new(graph, t.with(s), cap)?.minimal_reps(t))
}

/// All reduced words of the element represented by `word`, found by closing
/// under braid moves.
pub fn all_reduced_words(graph: &CoxeterGraph, word: &ReducedWord) -> Vec<ReducedWord> {
    let mut seen: HashSet<Vec<usize>> = HashSet::from([word.letters.clone()]);
    let mut queue = VecDeque::from([word.letters.clone()]);
    while let Some(w) = queue.pop_front() {
        for start in 0..w.len() {
            let (s, t) = (
                w[start],
                match w.get(start + 1) {
                    Some(&t) if t != w[start] => t,
                    _ => continue,
                },
            );
            let Label::Finite(m) = graph.m(s, t) else {
                continue;
            };
            let m = m as usize;
            if start + m > w.len() {
                continue;
            }
            let alternating = (0..m).all(|i| w[start + i] == if i % 2 == 0 { s } else { t });
            if !alternating {
                continue;
            }
            let mut v = w.clone();
            for i in 0..m {
                v[start + i] = if i % 2 == 0 { t } else { s };
            }
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    let mut out: Vec<ReducedWord> = seen
        .into_iter()
        .map(|letters| ReducedWord { letters })
        .collect();
    out.sort();
    out
}

/// `∏ [m_i + 1]` over the exponents of `W_T`, as an integer polynomial.
pub fn poincare_polynomial(graph: &CoxeterGraph, t: VertexSet) -> Result<IntPoly> {
    let ptype = classify_parabolic(graph, t)?;
    if !ptype.is_finite() {
        return Err(Error::InfiniteParabolic(subset_names(graph, t)));
    }
    let r = LaurentRing::new(Integers);
    Ok(exponents(&ptype)?
        .into_iter()
        .fold(r.one(), |acc, e| r.mul(&acc, &q_integer(e as u64 + 1))))
}

/// `Σ_{w ∈ W_T} ∏ weight(letter)` over a reduced word of each `w`.
///
/// Uniform weights on `T` use the product formula; otherwise the group is
/// enumerated. `weights` is indexed by vertex and must be constant on the
/// odd components of the subgraph on `T`.
pub fn poincare_series<R: Ring>(
    graph: &CoxeterGraph,
    t: VertexSet,
    ring: &R,
    weights: &[R::Elem],
    cap: usize,
) -> Result<R::Elem> {
    if weights.len() != graph.rank() {
        return Err(Error::InvalidArgument(format!(
            "expected {} weights, got {}",
            graph.rank(),
            weights.len()
        )));
    }
    check_subset(graph, t)?;
    let sub = graph.subgraph(t);
    let idx: Vec<usize> = t.iter().collect();
    for comp in sub.odd_components() {
        let mut it = comp.iter().map(|i| &weights[idx[i]]);
        let first = it.next().expect("nonempty component");
        if it.any(|w| w != first) {
            return Err(Error::InvalidSystem(format!(
                "weights differ on the odd component {}",
                sub.render_subset(comp)
            )));
        }
    }
    let uniform = idx.windows(2).all(|p| weights[p[0]] == weights[p[1]]);
    if uniform {
        let poly = poincare_polynomial(graph, t)?;
        let x = idx
            .first()
            .map_or_else(|| ring.one(), |&i| weights[i].clone());
        let zr = LaurentRing::new(Integers);
        return Ok(zr
            .evaluate(ring, &poly, &x, |c| ring.from_int(c))
            .expect("polynomial has no negative powers"));
    }
    let group = ParabolicGroup::new(graph, t, cap)?;
    Ok(group.words().iter().fold(ring.zero(), |acc, w| {
        let term = w
            .letters
            .iter()
            .fold(ring.one(), |p, &l| ring.mul(&p, &weights[l]));
        ring.add(&acc, &term)
    }))
}
