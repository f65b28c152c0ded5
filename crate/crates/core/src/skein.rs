//! Planar diagrams, the Wirtinger/Fox Alexander polynomial, and Conway
//! resolution trees.
//!
//! PD codes list each crossing as `X(a,b,c,d)`, counterclockwise from the
//! incoming under-strand, so the under-strand runs `a → c`. Signs are
//! recovered from the orientation, never read from the input.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{expand_z_square, CoefficientRing, LaurentPolynomial};

/// A crossing with edges counterclockwise from the incoming under-strand.
/// For a positive crossing the over-strand runs `edges[3] → edges[1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub edges: [usize; 4],
    pub positive: bool,
}

impl Crossing {
    pub fn under_in(&self) -> usize {
        self.edges[0]
    }
    pub fn under_out(&self) -> usize {
        self.edges[2]
    }
    pub fn over_in(&self) -> usize {
        if self.positive {
            self.edges[3]
        } else {
            self.edges[1]
        }
    }
    pub fn over_out(&self) -> usize {
        if self.positive {
            self.edges[1]
        } else {
            self.edges[3]
        }
    }
    pub fn sign(&self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    /// The same crossing with the strands exchanged.
    pub fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.edges;
        if self.positive {
            Crossing {
                edges: [d, a, b, c],
                positive: false,
            }
        } else {
            Crossing {
                edges: [b, c, d, a],
                positive: true,
            }
        }
    }

    fn is_incoming(&self, pos: usize) -> bool {
        match pos {
            0 => true,
            2 => false,
            1 => !self.positive,
            _ => self.positive,
        }
    }
}

/// An oriented link diagram. Edges are numbered `0..arc_count`;
/// `free_loops` counts crossingless unknotted components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarDiagram {
    pub crossings: Vec<Crossing>,
    pub free_loops: usize,
}

fn pd_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"X\s*[\(\[]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[\)\]]")
            .expect("static regex")
    })
}

impl PlanarDiagram {
    pub fn unknot() -> Self {
        PlanarDiagram {
            crossings: Vec::new(),
            free_loops: 1,
        }
    }

    /// Parse `X(a,b,c,d);X(...)`. Square brackets and comma separators are
    /// accepted too; an empty code (or `unknot`) is the unknot.
    pub fn parse_pd(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed.eq_ignore_ascii_case("unknot") {
            return Ok(Self::unknot());
        }
        let re = pd_regex();
        let mut raw = Vec::new();
        for cap in re.captures_iter(trimmed) {
            let mut e = [0i64; 4];
            for (k, slot) in e.iter_mut().enumerate() {
                *slot = cap[k + 1]
                    .parse()
                    .map_err(|_| Error::MalformedPd(format!("bad label `{}`", &cap[k + 1])))?;
            }
            raw.push(e);
        }
        let leftover = re.replace_all(trimmed, "");
        if let Some(ch) = leftover
            .chars()
            .find(|c| !c.is_whitespace() && *c != ';' && *c != ',')
        {
            return Err(Error::MalformedPd(format!("unexpected character `{ch}`")));
        }
        if raw.is_empty() {
            return Err(Error::MalformedPd("no crossings found".into()));
        }
        Self::from_labels(&raw)
    }

    fn from_labels(raw: &[[i64; 4]]) -> Result<Self> {
        let labels: BTreeSet<i64> = raw.iter().flatten().copied().collect();
        let index: BTreeMap<i64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); labels.len()];
        let edges: Vec<[usize; 4]> = raw
            .iter()
            .enumerate()
            .map(|(x, e)| {
                let mut out = [0; 4];
                for p in 0..4 {
                    out[p] = index[&e[p]];
                    occ[out[p]].push((x, p));
                }
                out
            })
            .collect();
        for (l, o) in labels.iter().zip(&occ) {
            if o.len() != 2 {
                return Err(Error::MalformedPd(format!(
                    "label {l} appears {} times, expected exactly twice",
                    o.len()
                )));
            }
        }
        let signs = solve_orientation(&edges, &occ)?;
        let d = PlanarDiagram {
            crossings: edges
                .into_iter()
                .zip(signs)
                .map(|(edges, positive)| Crossing { edges, positive })
                .collect(),
            free_loops: 0,
        };
        d.check_planar()?;
        Ok(d)
    }

    /// Closure of a braid on `strands` strands; generator `i` is a positive
    /// crossing of strands `i, i+1`, `-i` its inverse.
    pub fn from_braid(strands: usize, word: &[i64]) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        for &g in word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(Error::Parse(format!(
                    "generator {g} out of range for {strands} strands"
                )));
            }
        }
        let mut next = strands as i64 + 1;
        let mut cur: Vec<i64> = (1..=strands as i64).collect();
        let mut raw = Vec::new();
        for &g in word {
            let i = g.unsigned_abs() as usize - 1;
            let (sw, se) = (cur[i], cur[i + 1]);
            let (nw, ne) = (next, next + 1);
            next += 2;
            raw.push(if g > 0 {
                [se, ne, nw, sw]
            } else {
                [sw, se, ne, nw]
            });
            cur[i] = nw;
            cur[i + 1] = ne;
        }
        // close up: the top label at each position becomes the bottom one
        let mut free = 0;
        let mut rename = BTreeMap::new();
        for (p, &top) in cur.iter().enumerate() {
            let bottom = p as i64 + 1;
            if top == bottom {
                free += 1;
            } else {
                rename.insert(top, bottom);
            }
        }
        for e in raw.iter_mut().flatten() {
            if let Some(&b) = rename.get(e) {
                *e = b;
            }
        }
        let mut d = if raw.is_empty() {
            PlanarDiagram {
                crossings: Vec::new(),
                free_loops: 0,
            }
        } else {
            Self::from_labels(&raw)?
        };
        d.free_loops += free;
        Ok(d)
    }

    /// Build from stored crossings (e.g. deserialised), checking the edge
    /// structure and that signs are consistent with a coherent orientation.
    pub fn validate(&self) -> Result<()> {
        let n = self.arc_count();
        let mut ins = vec![0usize; n];
        let mut outs = vec![0usize; n];
        for c in &self.crossings {
            for p in 0..4 {
                let e = c.edges[p];
                if e >= n {
                    return Err(Error::MalformedPd(format!("edge {e} out of range")));
                }
                if c.is_incoming(p) {
                    ins[e] += 1;
                } else {
                    outs[e] += 1;
                }
            }
        }
        if ins.iter().chain(&outs).any(|&k| k != 1) {
            return Err(Error::MalformedPd(
                "signs are inconsistent with any orientation".into(),
            ));
        }
        self.check_planar()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.crossings
            .iter()
            .flat_map(|c| c.edges)
            .max()
            .map_or(0, |m| m + 1)
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    fn occurrences(&self) -> Vec<Vec<(usize, usize)>> {
        let mut occ = vec![Vec::new(); self.arc_count()];
        for (x, c) in self.crossings.iter().enumerate() {
            for (p, &e) in c.edges.iter().enumerate() {
                occ[e].push((x, p));
            }
        }
        occ
    }

    /// Faces of the cellular embedding must number `V + 1 + pieces`.
    fn check_planar(&self) -> Result<()> {
        if self.crossings.is_empty() {
            return Ok(());
        }
        let occ = self.occurrences();
        let v = self.crossings.len();
        let mut seen = vec![[false; 4]; v];
        let mut faces = 0;
        for x0 in 0..v {
            for p0 in 0..4 {
                if seen[x0][p0] {
                    continue;
                }
                faces += 1;
                let (mut x, mut p) = (x0, p0);
                while !seen[x][p] {
                    seen[x][p] = true;
                    let e = self.crossings[x].edges[(p + 1) % 4];
                    let here = (x, (p + 1) % 4);
                    let there = if occ[e][0] == here {
                        occ[e][1]
                    } else {
                        occ[e][0]
                    };
                    (x, p) = there;
                }
            }
        }
        let mut uf = UnionFind::new(v);
        for o in &occ {
            uf.union(o[0].0, o[1].0);
        }
        let pieces = (0..v).filter(|&x| uf.find(x) == x).count();
        if faces != v + 1 + pieces {
            return Err(Error::MalformedPd(format!(
                "not a planar diagram ({faces} faces for {v} crossings in {pieces} pieces)"
            )));
        }
        Ok(())
    }

    /// For each edge, the crossing and position where it ends.
    fn heads(&self) -> Vec<(usize, usize)> {
        let mut head = vec![(usize::MAX, 0); self.arc_count()];
        for (x, c) in self.crossings.iter().enumerate() {
            for p in 0..4 {
                if c.is_incoming(p) {
                    head[c.edges[p]] = (x, p);
                }
            }
        }
        head
    }

    fn successor(&self, head: &[(usize, usize)], e: usize) -> usize {
        let (x, p) = head[e];
        let c = &self.crossings[x];
        if p == 0 {
            c.under_out()
        } else {
            c.over_out()
        }
    }

    /// Edge cycles of the diagram, each starting from its smallest edge,
    /// ordered by that edge.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let head = self.heads();
        let mut done = vec![false; self.arc_count()];
        let mut out = Vec::new();
        for start in 0..self.arc_count() {
            if done[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut e = start;
            while !done[e] {
                done[e] = true;
                cyc.push(e);
                e = self.successor(&head, e);
            }
            out.push(cyc);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.cycles().len() + self.free_loops
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// Change crossing `x`.
    pub fn switch(&self, x: usize) -> PlanarDiagram {
        let mut d = self.clone();
        d.crossings[x] = d.crossings[x].switched();
        d
    }

    /// Oriented smoothing of crossing `x`.
    pub fn smooth(&self, x: usize) -> PlanarDiagram {
        let c = self.crossings[x];
        let mut uf = UnionFind::new(self.arc_count());
        uf.union(c.under_in(), c.over_out());
        uf.union(c.over_in(), c.under_out());
        let rest: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(y, _)| *y != x)
            .map(|(_, c)| Crossing {
                edges: c.edges.map(|e| uf.find(e)),
                positive: c.positive,
            })
            .collect();
        let used: BTreeSet<usize> = rest.iter().flat_map(|c| c.edges).collect();
        let loose: BTreeSet<usize> = [uf.find(c.under_in()), uf.find(c.over_in())]
            .into_iter()
            .filter(|r| !used.contains(r))
            .collect();
        let renumber: BTreeMap<usize, usize> =
            used.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        PlanarDiagram {
            crossings: rest
                .into_iter()
                .map(|c| Crossing {
                    edges: c.edges.map(|e| renumber[&e]),
                    positive: c.positive,
                })
                .collect(),
            free_loops: self.free_loops + loose.len(),
        }
    }

    /// Classify against the base points (smallest edge of each cycle, cycles
    /// stacked in order): the first crossing spoiling the descending
    /// picture, or the standard link the diagram already is.
    pub fn descending_status(&self) -> DescendingStatus {
        let cycles = self.cycles();
        let total = cycles.len() + self.free_loops;
        let mut owner = vec![0; self.arc_count()];
        for (k, cyc) in cycles.iter().enumerate() {
            for &e in cyc {
                owner[e] = k;
            }
        }
        if total == 1 {
            let mut visited = vec![false; self.crossings.len()];
            let head = self.heads();
            for &e in cycles.first().map(Vec::as_slice).unwrap_or(&[]) {
                let (x, p) = head[e];
                if !visited[x] {
                    visited[x] = true;
                    if p == 0 {
                        return DescendingStatus::Resolve(x);
                    }
                }
            }
            return DescendingStatus::Standard(LeafKind::Unknot);
        }
        // stacked: the earlier cycle must pass over at every mixed crossing
        let head = self.heads();
        for cyc in &cycles {
            for &e in cyc {
                let (x, p) = head[e];
                let c = &self.crossings[x];
                let other = if p == 0 { c.over_in() } else { c.under_in() };
                let (mine, theirs) = (owner[e], owner[other]);
                if mine != theirs && p == 0 && mine < theirs {
                    return DescendingStatus::Resolve(x);
                }
            }
        }
        DescendingStatus::Standard(LeafKind::SplitLink { components: total })
    }

    pub fn to_pd_string(&self) -> String {
        if self.crossings.is_empty() {
            return String::new();
        }
        self.crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges.map(|e| e + 1);
                format!("X({a},{b},{cc},{d})")
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.crossings.is_empty() {
            write!(f, "unknot")
        } else {
            f.write_str(&self.to_pd_string())
        }
    }
}

fn solve_orientation(edges: &[[usize; 4]], occ: &[Vec<(usize, usize)>]) -> Result<Vec<bool>> {
    let n = edges.len();
    let mut sign: Vec<Option<bool>> = vec![None; n];
    let incoming = |sign: &[Option<bool>], (x, p): (usize, usize)| -> Option<bool> {
        match p {
            0 => Some(true),
            2 => Some(false),
            1 => sign[x].map(|s| !s),
            _ => sign[x],
        }
    };
    loop {
        let mut changed = false;
        for o in occ {
            let (a, b) = (o[0], o[1]);
            match (incoming(&sign, a), incoming(&sign, b)) {
                (Some(u), Some(v)) if u == v => {
                    return Err(Error::MalformedPd(
                        "no consistent orientation of the strands".into(),
                    ))
                }
                (Some(u), None) => {
                    sign[b.0] = Some(if b.1 == 1 { u } else { !u });
                    changed = true;
                }
                (None, Some(v)) => {
                    sign[a.0] = Some(if a.1 == 1 { v } else { !v });
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            match sign.iter().position(Option::is_none) {
                // a component that only passes over: orient it arbitrarily
                Some(x) => sign[x] = Some(true),
                None => break,
            }
        }
    }
    Ok(sign.into_iter().map(|s| s.expect("assigned")).collect())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller representative wins so renumbering is stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

fn t_poly(terms: &[(i64, i64)]) -> LaurentPolynomial {
    LaurentPolynomial::univariate(CoefficientRing::Integers, terms.iter().copied())
}

/// Fraction-free determinant over ℤ[t, t⁻¹].
fn bareiss(mut m: Vec<Vec<LaurentPolynomial>>) -> LaurentPolynomial {
    let n = m.len();
    if n == 0 {
        return t_poly(&[(0, 1)]);
    }
    let mut negate = false;
    let mut prev = t_poly(&[(0, 1)]);
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return t_poly(&[]);
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Symmetric representative with value 1 at `t = 1`.
pub fn symmetrize(p: &LaurentPolynomial) -> LaurentPolynomial {
    let Some((lo, hi)) = p.degree_range() else {
        return p.clone();
    };
    let mut q = if (lo + hi) % 2 == 0 {
        p.shift(&[-(lo + hi) / 2])
    } else {
        p.clone()
    };
    if q.augmentation().is_negative() {
        q = -q;
    }
    q
}

/// Alexander polynomial of a knot diagram via Fox calculus on the
/// Wirtinger presentation.
pub fn alexander_from_diagram(d: &PlanarDiagram) -> Result<LaurentPolynomial> {
    let comps = d.component_count();
    if comps != 1 {
        return Err(Error::NotAKnot(comps));
    }
    if d.crossings.is_empty() {
        return Ok(t_poly(&[(0, 1)]));
    }
    // Wirtinger generators: edges glued along over-passes
    let mut uf = UnionFind::new(d.arc_count());
    for c in &d.crossings {
        uf.union(c.over_in(), c.over_out());
    }
    let reps: BTreeSet<usize> = (0..d.arc_count()).map(|e| uf.find(e)).collect();
    let gen: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let n = gen.len();
    let zero = t_poly(&[]);
    let mut fox = vec![vec![zero; n]; d.crossings.len()];
    for (row, c) in d.crossings.iter().enumerate() {
        let k = gen[&uf.find(c.over_in())];
        let i = gen[&uf.find(c.under_in())];
        let j = gen[&uf.find(c.under_out())];
        // positive: x_j = x_k x_i x_k⁻¹; negative: x_j = x_k⁻¹ x_i x_k (scaled by t)
        let (di, dk, dj) = if c.positive {
            (
                t_poly(&[(1, 1)]),
                t_poly(&[(0, 1), (1, -1)]),
                t_poly(&[(0, -1)]),
            )
        } else {
            (
                t_poly(&[(0, 1)]),
                t_poly(&[(0, -1), (1, 1)]),
                t_poly(&[(1, -1)]),
            )
        };
        fox[row][i] += &di;
        fox[row][k] += &dk;
        fox[row][j] += &dj;
    }
    let minor: Vec<Vec<LaurentPolynomial>> = fox
        .into_iter()
        .take(n - 1)
        .map(|mut r| {
            r.truncate(n - 1);
            r
        })
        .collect();
    Ok(symmetrize(&bareiss(minor)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LeafKind {
    /// A one-component diagram, descending from its base point.
    Unknot,
    /// Components stacked one above the other, hence split.
    SplitLink { components: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescendingStatus {
    Standard(LeafKind),
    Resolve(usize),
}

/// A Conway resolution tree. At a branch on crossing `c` of sign `ε`,
/// `switched` is the diagram with `c` changed and `smoothed` its oriented
/// smoothing, so `∇(node) = ∇(switched) + ε·z·∇(smoothed)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum ResolutionTree {
    Leaf {
        diagram: PlanarDiagram,
        #[serde(flatten)]
        kind: LeafKind,
    },
    Branch {
        diagram: PlanarDiagram,
        crossing: usize,
        sign: i64,
        switched: Box<ResolutionTree>,
        smoothed: Box<ResolutionTree>,
    },
}

pub const DEFAULT_TREE_BUDGET: usize = 200_000;

impl ResolutionTree {
    pub fn diagram(&self) -> &PlanarDiagram {
        match self {
            ResolutionTree::Leaf { diagram, .. } | ResolutionTree::Branch { diagram, .. } => {
                diagram
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            ResolutionTree::Leaf { .. } => 1,
            ResolutionTree::Branch {
                switched, smoothed, ..
            } => 1 + switched.node_count() + smoothed.node_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ResolutionTree::Leaf { .. } => 0,
            ResolutionTree::Branch {
                switched, smoothed, ..
            } => 1 + switched.depth().max(smoothed.depth()),
        }
    }

    /// Largest number of components among the nodes.
    pub fn max_components(&self) -> usize {
        let own = self.diagram().component_count();
        match self {
            ResolutionTree::Leaf { .. } => own,
            ResolutionTree::Branch {
                switched, smoothed, ..
            } => own
                .max(switched.max_components())
                .max(smoothed.max_components()),
        }
    }
}

/// Build a resolution tree by making the diagram descending from its base
/// points: each branch changes the first crossing met from below.
pub fn resolution_tree(d: &PlanarDiagram, budget: usize) -> Result<ResolutionTree> {
    d.validate()?;
    let mut used = 0;
    grow(d.clone(), budget, &mut used)
}

fn grow(d: PlanarDiagram, budget: usize, used: &mut usize) -> Result<ResolutionTree> {
    *used += 1;
    if *used > budget {
        return Err(Error::TreeBudgetExceeded(budget));
    }
    match d.descending_status() {
        DescendingStatus::Standard(kind) => Ok(ResolutionTree::Leaf { diagram: d, kind }),
        DescendingStatus::Resolve(x) => {
            let switched = grow(d.switch(x), budget, used)?;
            let smoothed = grow(d.smooth(x), budget, used)?;
            Ok(ResolutionTree::Branch {
                sign: d.crossings[x].sign(),
                diagram: d,
                crossing: x,
                switched: Box::new(switched),
                smoothed: Box::new(smoothed),
            })
        }
    }
}

fn z_poly(terms: &[(i64, i64)]) -> LaurentPolynomial {
    t_poly(terms)
}

/// Conway polynomial (in `z`) carried by a tree, checking every node.
pub fn conway_from_tree(tree: &ResolutionTree) -> Result<LaurentPolynomial> {
    match tree {
        ResolutionTree::Leaf { diagram, kind } => {
            diagram.validate()?;
            match diagram.descending_status() {
                DescendingStatus::Standard(k) if k == *kind => {}
                _ => {
                    return Err(Error::LeafNotStandard(format!(
                        "{kind:?} leaf on diagram {diagram}"
                    )))
                }
            }
            Ok(match kind {
                LeafKind::Unknot => z_poly(&[(0, 1)]),
                LeafKind::SplitLink { .. } => z_poly(&[]),
            })
        }
        ResolutionTree::Branch {
            diagram,
            crossing,
            sign,
            switched,
            smoothed,
        } => {
            let Some(c) = diagram.crossings.get(*crossing) else {
                return Err(Error::MalformedTree(format!(
                    "crossing {crossing} not in a diagram with {} crossings",
                    diagram.crossing_count()
                )));
            };
            if c.sign() != *sign {
                return Err(Error::MalformedTree(format!(
                    "crossing {crossing} has sign {}, tree says {sign}",
                    c.sign()
                )));
            }
            if *switched.diagram() != diagram.switch(*crossing)
                || *smoothed.diagram() != diagram.smooth(*crossing)
            {
                return Err(Error::MalformedTree(format!(
                    "children at crossing {crossing} are not its change and smoothing"
                )));
            }
            let a = conway_from_tree(switched)?;
            let b = conway_from_tree(smoothed)?;
            Ok(&a + &(&b.shift(&[1]) * &z_poly(&[(0, *sign)])))
        }
    }
}

/// The Alexander polynomial `Θ` obtained from the skein recursion.
pub fn theta_from_tree(tree: &ResolutionTree) -> Result<LaurentPolynomial> {
    let comps = tree.diagram().component_count();
    if comps != 1 {
        return Err(Error::NotAKnot(comps));
    }
    expand_z_square(&conway_from_tree(tree)?)
}

/// Canonical form of `p` mod 2 up to units.
pub fn mod2_class(p: &LaurentPolynomial) -> LaurentPolynomial {
    p.reduce_mod2().normalize_up_to_unit()
}

/// Group indices by equal mod-2 canonical forms, in order of first
/// appearance.
pub fn mod2_partition(polys: &[LaurentPolynomial]) -> Vec<Vec<usize>> {
    let mut classes: Vec<(LaurentPolynomial, Vec<usize>)> = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        let key = mod2_class(p);
        match classes.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(i),
            None => classes.push((key, vec![i])),
        }
    }
    classes.into_iter().map(|(_, v)| v).collect()
}

/// Alexander polynomial of the torus knot `T(2, m)`, `m` odd.
pub fn torus_2_alexander(m: i64) -> LaurentPolynomial {
    let n = (m - 1) / 2;
    let terms: Vec<(i64, i64)> = (0..=2 * n)
        .map(|i| (i - n, if i % 2 == 0 { 1 } else { -1 }))
        .collect();
    symmetrize(&t_poly(&terms))
}

#[derive(Clone, Debug)]
pub struct CorpusKnot {
    pub name: String,
    pub diagram: PlanarDiagram,
}

const CORPUS: &str = include_str!("../data/knots.txt");

fn parse_corpus_line(line: &str) -> Result<Option<CorpusKnot>> {
    let line = line.split('#').next().unwrap_or("").trim();
    if line.is_empty() {
        return Ok(None);
    }
    let (name, rest) = line
        .split_once(char::is_whitespace)
        .ok_or_else(|| Error::Parse(format!("corpus line `{line}`")))?;
    let rest = rest.trim();
    let diagram = if let Some(pd) = rest.strip_prefix("pd") {
        PlanarDiagram::parse_pd(pd)?
    } else if let Some(b) = rest.strip_prefix("braid") {
        let nums: Vec<i64> = b
            .split_whitespace()
            .map(|s| {
                s.parse()
                    .map_err(|_| Error::Parse(format!("braid entry `{s}`")))
            })
            .collect::<Result<_>>()?;
        let (&strands, word) = nums
            .split_first()
            .ok_or_else(|| Error::Parse("empty braid".into()))?;
        PlanarDiagram::from_braid(strands as usize, word)?
    } else {
        return Err(Error::Parse(format!("corpus line `{line}`")));
    };
    Ok(Some(CorpusKnot {
        name: name.to_string(),
        diagram,
    }))
}

/// The bundled knot table.
pub fn corpus() -> Vec<CorpusKnot> {
    CORPUS
        .lines()
        .filter_map(|l| parse_corpus_line(l).expect("bundled corpus parses"))
        .collect()
}

/// Look up a bundled knot by name; `unknot` and `T(2,m)` for odd `m` are
/// generated on demand.
pub fn knot_by_name(name: &str) -> Result<PlanarDiagram> {
    let key = name.trim();
    if key.eq_ignore_ascii_case("unknot") || key == "0_1" {
        return Ok(PlanarDiagram::unknot());
    }
    let compact: String = key.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(m) = compact
        .strip_prefix("T(2,")
        .and_then(|s| s.strip_suffix(')'))
        .and_then(|s| s.parse::<i64>().ok())
    {
        if m % 2 == 0 {
            return Err(Error::UnknownKnot(format!("{key} is a link, not a knot")));
        }
        let word = vec![m.signum(); m.unsigned_abs() as usize];
        return PlanarDiagram::from_braid(2, &word);
    }
    let alias = match key {
        "trefoil" => "3_1",
        "figure-eight" | "figure_eight" | "figure8" => "4_1",
        k => k,
    };
    corpus()
        .into_iter()
        .find(|k| k.name == alias)
        .map(|k| k.diagram)
        .ok_or_else(|| Error::UnknownKnot(key.to_string()))
}

/// Summary of one knot: both polynomial routes and the mod-2 class.
#[derive(Clone, Debug, Serialize)]
pub struct KnotReport {
    pub name: String,
    pub alexander: String,
    pub conway: String,
    pub mod2_class: String,
    pub tree_nodes: usize,
}

pub fn knot_report(name: &str, d: &PlanarDiagram) -> Result<KnotReport> {
    let alex = alexander_from_diagram(d)?;
    let tree = resolution_tree(d, DEFAULT_TREE_BUDGET)?;
    let conway = conway_from_tree(&tree)?;
    Ok(KnotReport {
        name: name.to_string(),
        alexander: alex.to_string(),
        conway: conway.to_string_with(&["z"]),
        mod2_class: mod2_class(&alex).to_string(),
        tree_nodes: tree.node_count(),
    })
}

/// Determinant `|Δ(−1)|`, a cheap cross-check for the corpus.
pub fn determinant(alex: &LaurentPolynomial) -> BigInt {
    let mut acc = BigInt::zero();
    for (e, c) in alex.terms() {
        if e[0].rem_euclid(2) == 0 {
            acc += c;
        } else {
            acc -= c;
        }
    }
    acc.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse_univariate(s, CoefficientRing::Integers).unwrap()
    }

    const TREFOIL: &str = "X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)";
    const FIGURE_EIGHT: &str = "X(4,2,5,1);X(8,6,1,5);X(6,3,7,4);X(2,7,3,8)";

    #[test]
    fn trefoil_and_figure_eight() {
        let t = PlanarDiagram::parse_pd(TREFOIL).unwrap();
        assert!(t.is_knot());
        assert_eq!(t.writhe().abs(), 3);
        assert_eq!(alexander_from_diagram(&t).unwrap(), p("t^-1 - 1 + t"));
        let f = PlanarDiagram::parse_pd(FIGURE_EIGHT).unwrap();
        assert_eq!(f.writhe(), 0);
        assert_eq!(alexander_from_diagram(&f).unwrap(), p("-t^-1 + 3 - t"));
    }

    #[test]
    fn unknot_and_kinks() {
        assert_eq!(
            alexander_from_diagram(&PlanarDiagram::parse_pd("").unwrap()).unwrap(),
            p("1")
        );
        for pd in ["X(1,1,2,2)", "X(1,2,2,1)"] {
            let d = PlanarDiagram::parse_pd(pd).unwrap();
            assert!(d.is_knot());
            assert_eq!(alexander_from_diagram(&d).unwrap(), p("1"));
            let tree = resolution_tree(&d, 100).unwrap();
            assert_eq!(theta_from_tree(&tree).unwrap(), p("1"));
        }
    }

    #[test]
    fn rejects_bad_codes() {
        for bad in [
            "X(1,2,3)",
            "X(1,2,3,4)",
            "X(1,4,2,3);X(3,6,4,5);X(5,2,6,1)",
            "Y(1,1,2,2)",
        ] {
            let e = PlanarDiagram::parse_pd(bad).unwrap_err();
            assert!(e.is_parse_error(), "{bad}: {e}");
        }
    }

    #[test]
    fn hopf_link_is_not_a_knot() {
        let hopf = PlanarDiagram::from_braid(2, &[1, 1]).unwrap();
        assert_eq!(hopf.component_count(), 2);
        assert_eq!(alexander_from_diagram(&hopf), Err(Error::NotAKnot(2)));
        let tree = resolution_tree(&hopf, 100).unwrap();
        assert_eq!(conway_from_tree(&tree).unwrap(), z_poly(&[(1, 1)]));
    }

    #[test]
    fn trefoil_tree() {
        let t = PlanarDiagram::from_braid(2, &[1, 1, 1]).unwrap();
        let tree = resolution_tree(&t, 100).unwrap();
        assert_eq!(conway_from_tree(&tree).unwrap(), z_poly(&[(0, 1), (2, 1)]));
        assert_eq!(theta_from_tree(&tree).unwrap(), p("t^-1 - 1 + t"));
        assert!(tree.max_components() <= 2);
        let json = serde_json::to_string(&tree).unwrap();
        let back: ResolutionTree = serde_json::from_str(&json).unwrap();
        assert_eq!(back, tree);
    }

    #[test]
    fn figure_eight_tree() {
        let f = PlanarDiagram::from_braid(3, &[1, -2, 1, -2]).unwrap();
        let tree = resolution_tree(&f, 100).unwrap();
        assert_eq!(conway_from_tree(&tree).unwrap(), z_poly(&[(0, 1), (2, -1)]));
    }

    #[test]
    fn tampered_tree_is_rejected() {
        let t = PlanarDiagram::from_braid(2, &[1, 1, 1]).unwrap();
        let mut tree = resolution_tree(&t, 100).unwrap();
        if let ResolutionTree::Branch { sign, .. } = &mut tree {
            *sign = -*sign;
        }
        assert!(matches!(
            conway_from_tree(&tree),
            Err(Error::MalformedTree(_))
        ));
        let mut tree = resolution_tree(&t, 100).unwrap();
        if let ResolutionTree::Branch { switched, .. } = &mut tree {
            **switched = ResolutionTree::Leaf {
                diagram: t.clone(),
                kind: LeafKind::Unknot,
            };
        }
        assert!(conway_from_tree(&tree).is_err());
        let fake = ResolutionTree::Leaf {
            diagram: t,
            kind: LeafKind::Unknot,
        };
        assert!(matches!(
            conway_from_tree(&fake),
            Err(Error::LeafNotStandard(_))
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let t = PlanarDiagram::from_braid(2, &[1; 7]).unwrap();
        assert_eq!(resolution_tree(&t, 3), Err(Error::TreeBudgetExceeded(3)));
    }

    #[test]
    fn mod2_examples() {
        let unknot = p("1");
        let tref = p("t^-1 - 1 + t");
        let fig8 = p("-t^-1 + 3 - t");
        assert_eq!(mod2_partition(&[unknot, tref.clone()]).len(), 2);
        assert_eq!(mod2_partition(&[tref, fig8]), vec![vec![0, 1]]);
        let tor: Vec<_> = [3, 5, 7].iter().map(|&m| torus_2_alexander(m)).collect();
        assert_eq!(mod2_partition(&tor).len(), 3);
    }

    #[test]
    fn corpus_loads() {
        let c = corpus();
        assert!(c.len() >= 10);
        for k in &c {
            assert!(k.diagram.is_knot(), "{}", k.name);
        }
        assert!(knot_by_name("T(2,17)").unwrap().is_knot());
        assert!(knot_by_name("nope").is_err());
    }
}
