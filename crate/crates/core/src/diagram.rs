//! Chord diagrams over one backbone: fatgraph genus via boundary
//! traversal, shadows, crossing components, blocks and the membership
//! predicates for γ-diagrams and τ-canonical γ-structures.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("arc endpoint {0} outside 1..={1}")]
    EndpointOutOfRange(usize, usize),
    #[error("arc ({0}, {1}) must satisfy left < right")]
    DegenerateArc(usize, usize),
    #[error("vertex {0} is an endpoint of more than one arc")]
    DuplicateEndpoint(usize),
    #[error("boundary traversal produced odd 1 + m - r; diagram is corrupt")]
    ParityViolation,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// A diagram over backbone positions `1..=n` with arcs drawn in the upper
/// half-plane. Every vertex is an endpoint of at most one arc; arcs are
/// stored sorted by left endpoint.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Diagram {
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Result<Self, DiagramError> {
        let mut seen = vec![false; n + 1];
        for &(i, j) in &arcs {
            if i >= j {
                return Err(DiagramError::DegenerateArc(i, j));
            }
            if i < 1 || j > n {
                return Err(DiagramError::EndpointOutOfRange(if i < 1 { i } else { j }, n));
            }
            for v in [i, j] {
                if seen[v] {
                    return Err(DiagramError::DuplicateEndpoint(v));
                }
                seen[v] = true;
            }
        }
        arcs.sort_unstable();
        Ok(Diagram { n, arcs })
    }

    pub fn empty(n: usize) -> Self {
        Diagram { n, arcs: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Perfect matching: every vertex is an arc endpoint.
    pub fn is_matching(&self) -> bool {
        2 * self.arcs.len() == self.n
    }

    fn crossing(a: (usize, usize), b: (usize, usize)) -> bool {
        let ((a1, a2), (b1, b2)) = (a, b);
        (a1 < b1 && b1 < a2 && a2 < b2) || (b1 < a1 && a1 < b2 && b2 < a2)
    }

    /// Number of boundary components of the associated fatgraph surface.
    ///
    /// Unpaired vertices are backbone retract points and are deleted
    /// first; the 2m arc endpoints are labeled in backbone order, ρ is the
    /// cyclic rotation on them, α the arc involution, and r counts the
    /// cycles of α∘ρ. The empty arc set has one boundary by convention.
    pub fn boundary_components(&self) -> usize {
        let m = self.arcs.len();
        if m == 0 {
            return 1;
        }
        // Rank of each endpoint among all endpoints, in backbone order.
        let mut endpoints: Vec<usize> = Vec::with_capacity(2 * m);
        for &(i, j) in &self.arcs {
            endpoints.push(i);
            endpoints.push(j);
        }
        endpoints.sort_unstable();
        let rank = |v: usize| endpoints.binary_search(&v).unwrap();
        // involution: position k -> partner position
        let mut alpha = vec![0usize; 2 * m];
        for &(i, j) in &self.arcs {
            let (ri, rj) = (rank(i), rank(j));
            alpha[ri] = rj;
            alpha[rj] = ri;
        }
        let mut visited = vec![false; 2 * m];
        let mut cycles = 0;
        for start in 0..2 * m {
            if visited[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !visited[k] {
                visited[k] = true;
                k = alpha[(k + 1) % (2 * m)];
            }
        }
        cycles
    }

    /// Topological genus 2g = 1 + m - r of the matching obtained by
    /// deleting unpaired vertices.
    pub fn genus(&self) -> Result<usize, DiagramError> {
        let m = self.arcs.len();
        if m == 0 {
            return Ok(0);
        }
        let r = self.boundary_components();
        let euler = 1 + m - r;
        if euler % 2 != 0 {
            return Err(DiagramError::ParityViolation);
        }
        Ok(euler / 2)
    }

    /// Maximal stacks: runs of parallel nested arcs
    /// `(i,j), (i+1,j-1), ...`, each reported as (outer arc, length).
    pub fn stacks(&self) -> Vec<((usize, usize), usize)> {
        let arc_set: std::collections::BTreeSet<(usize, usize)> =
            self.arcs.iter().copied().collect();
        let mut out = Vec::new();
        for &(i, j) in &self.arcs {
            // only start from the outermost arc of a run
            if i > 1 && j < self.n && arc_set.contains(&(i - 1, j + 1)) {
                continue;
            }
            let mut len = 1;
            while j - i >= 2 * len + 1 && arc_set.contains(&(i + len, j - len)) {
                len += 1;
            }
            out.push(((i, j), len));
        }
        out
    }

    /// Arcs of the form (i, i+1).
    pub fn has_one_arc(&self) -> bool {
        self.arcs.iter().any(|&(i, j)| j == i + 1)
    }

    /// One pass of the shadow reduction: drop arcs that cross nothing,
    /// collapse each maximal stack to its outer arc, delete unpaired
    /// vertices and relabel.
    fn shadow_pass(&self) -> Diagram {
        // 1. remove noncrossing arcs
        let kept: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .copied()
            .filter(|&a| self.arcs.iter().any(|&b| b != a && Self::crossing(a, b)))
            .collect();
        // 2. collapse maximal stacks to their outer arc
        let kept_set: std::collections::BTreeSet<(usize, usize)> = kept.iter().copied().collect();
        let collapsed: Vec<(usize, usize)> = kept
            .iter()
            .copied()
            .filter(|&(i, j)| !(i > 1 && kept_set.contains(&(i - 1, j + 1))))
            .collect();
        // 3. delete unpaired vertices, relabel
        Self::relabel(&collapsed)
    }

    fn relabel(arcs: &[(usize, usize)]) -> Diagram {
        let mut endpoints: Vec<usize> = arcs.iter().flat_map(|&(i, j)| [i, j]).collect();
        endpoints.sort_unstable();
        let rank = |v: usize| endpoints.binary_search(&v).unwrap() + 1;
        let relabeled: Vec<(usize, usize)> = arcs.iter().map(|&(i, j)| (rank(i), rank(j))).collect();
        Diagram::new(endpoints.len(), relabeled).expect("relabeling preserves validity")
    }

    /// Shadow: fixpoint of removing noncrossing arcs, collapsing stacks
    /// and deleting isolated vertices. Preserves genus; possibly empty.
    pub fn shadow(&self) -> Diagram {
        let mut cur = Self::relabel(&self.arcs);
        loop {
            let next = cur.shadow_pass();
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// A diagram is its own shadow: stack-free, no noncrossing arcs, no
    /// unpaired vertices, nonempty or empty.
    pub fn is_shadow(&self) -> bool {
        *self == self.shadow()
    }

    /// Connected components of the crossing graph, each relabeled over its
    /// own endpoints.
    pub fn components(&self) -> Vec<Diagram> {
        let m = self.arcs.len();
        if m == 0 {
            return Vec::new();
        }
        let mut dsu = Dsu::new(m);
        for a in 0..m {
            for b in a + 1..m {
                if Self::crossing(self.arcs[a], self.arcs[b]) {
                    dsu.union(a, b);
                }
            }
        }
        // group by representative, in order of first appearance
        let mut groups: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut rep_to_group: BTreeMap<usize, usize> = BTreeMap::new();
        for a in 0..m {
            let rep = dsu.find(a);
            let g = *rep_to_group.entry(rep).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(self.arcs[a]);
        }
        groups.iter().map(|arcs| Self::relabel(arcs)).collect()
    }

    /// Irreducible: at least two arcs and connected crossing graph.
    /// Single arcs are excluded; a genus-g irreducible shadow has at
    /// least 2g ≥ 2 arcs.
    pub fn is_irreducible(&self) -> bool {
        if self.arcs.len() < 2 {
            return false;
        }
        self.components().len() == 1
    }

    /// The multiset of irreducible shadows of the decomposition: shadow,
    /// split into crossing components, re-shadowed until each piece is a
    /// connected shadow.
    pub fn irreducible_shadows(&self) -> Vec<Diagram> {
        let s = self.shadow();
        if s.arcs.is_empty() {
            return Vec::new();
        }
        let comps = s.components();
        if comps.len() == 1 && comps[0] == s {
            return vec![s];
        }
        comps
            .iter()
            .flat_map(|c| c.irreducible_shadows())
            .collect()
    }

    /// Every irreducible shadow of the decomposition has genus ≤ γ.
    pub fn is_gamma_diagram(&self, gamma: usize) -> bool {
        self.irreducible_shadows()
            .iter()
            .all(|s| s.genus().expect("shadow genus") <= gamma)
    }

    /// τ-canonical γ-structure: no 1-arc, all maximal stacks of length
    /// ≥ τ, and a γ-diagram.
    pub fn is_tau_canonical_structure(&self, tau: usize, gamma: usize) -> bool {
        if self.has_one_arc() {
            return false;
        }
        if self.stacks().iter().any(|&(_, len)| len < tau) {
            return false;
        }
        self.is_gamma_diagram(gamma)
    }

    /// Blocks: sub-diagrams over the backbone intervals spanned by the
    /// crossing components that contain maximal arcs.
    pub fn blocks(&self) -> Vec<Diagram> {
        let m = self.arcs.len();
        if m == 0 {
            return Vec::new();
        }
        let maximal: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .copied()
            .filter(|&(i, j)| {
                !self
                    .arcs
                    .iter()
                    .any(|&(i2, j2)| (i2, j2) != (i, j) && i2 <= i && j <= j2)
            })
            .collect();
        let mut dsu = Dsu::new(m);
        for a in 0..m {
            for b in a + 1..m {
                if Self::crossing(self.arcs[a], self.arcs[b]) {
                    dsu.union(a, b);
                }
            }
        }
        // intervals of components containing at least one maximal arc
        let mut intervals: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for (idx, &arc) in self.arcs.iter().enumerate() {
            if !maximal.contains(&arc) {
                continue;
            }
            let rep = dsu.find(idx);
            let entry = intervals.entry(rep).or_insert((usize::MAX, 0));
            for (jdx, &(i2, j2)) in self.arcs.iter().enumerate() {
                if dsu.find(jdx) == rep {
                    entry.0 = entry.0.min(i2);
                    entry.1 = entry.1.max(j2);
                }
            }
        }
        let mut spans: Vec<(usize, usize)> = intervals.values().copied().collect();
        spans.sort_unstable();
        spans
            .iter()
            .map(|&(l, r)| {
                let arcs: Vec<(usize, usize)> = self
                    .arcs
                    .iter()
                    .copied()
                    .filter(|&(i, j)| l <= i && j <= r)
                    .map(|(i, j)| (i - l + 1, j - l + 1))
                    .collect();
                Diagram::new(r - l + 1, arcs).expect("block arcs valid")
            })
            .collect()
    }

    /// Concatenation: `other` appended after `self` on the backbone.
    pub fn concatenate(&self, other: &Diagram) -> Diagram {
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().map(|&(i, j)| (i + self.n, j + self.n)));
        Diagram::new(self.n + other.n, arcs).expect("concatenation valid")
    }

    /// Insert `inner` between backbone positions `pos` and `pos+1` of
    /// `self` (`pos = 0` prepends). No crossings are created, so genus
    /// adds.
    pub fn nest_at(&self, inner: &Diagram, pos: usize) -> Diagram {
        assert!(pos <= self.n);
        let k = inner.n;
        let mut arcs: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .map(|&(i, j)| {
                let shift = |v: usize| if v > pos { v + k } else { v };
                (shift(i), shift(j))
            })
            .collect();
        arcs.extend(inner.arcs.iter().map(|&(i, j)| (i + pos, j + pos)));
        Diagram::new(self.n + k, arcs).expect("nesting valid")
    }

    /// Canonical text form `n=<int>;arcs=(i1,j1)(i2,j2)...`.
    pub fn to_text(&self) -> String {
        let mut s = format!("n={};arcs=", self.n);
        for &(i, j) in &self.arcs {
            s.push_str(&format!("({},{})", i, j));
        }
        s
    }

    /// Parse the text form, or the JSON alternative
    /// `{"n":int,"arcs":[[i,j],...]}` when the input starts with `{`.
    pub fn parse(input: &str) -> Result<Diagram, DiagramError> {
        let trimmed = input.trim();
        if trimmed.starts_with('{') {
            return Self::parse_json(trimmed);
        }
        Self::parse_text(trimmed)
    }

    fn parse_json(input: &str) -> Result<Diagram, DiagramError> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            arcs: Vec<(usize, usize)>,
        }
        let raw: Raw = serde_json::from_str(input).map_err(|e| DiagramError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Diagram::new(raw.n, raw.arcs)
    }

    fn parse_text(input: &str) -> Result<Diagram, DiagramError> {
        let err = |column: usize, message: &str| DiagramError::Parse {
            line: 1,
            column,
            message: message.to_string(),
        };
        let rest = input
            .strip_prefix("n=")
            .ok_or_else(|| err(1, "expected `n=`"))?;
        let semi = rest
            .find(';')
            .ok_or_else(|| err(input.len() + 1, "expected `;` after vertex count"))?;
        let n: usize = rest[..semi]
            .parse()
            .map_err(|_| err(3, "invalid vertex count"))?;
        let after = &rest[semi + 1..];
        let arcs_str = after
            .strip_prefix("arcs=")
            .ok_or_else(|| err(2 + semi + 2, "expected `arcs=`"))?;
        let base = 2 + semi + 1 + 5; // 1-based column where arc list starts
        let mut arcs = Vec::new();
        let mut pos = 0;
        let bytes = arcs_str.as_bytes();
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(err(base + pos, "expected `(`"));
            }
            let close = arcs_str[pos..]
                .find(')')
                .ok_or_else(|| err(base + pos, "unclosed arc"))?;
            let body = &arcs_str[pos + 1..pos + close];
            let comma = body
                .find(',')
                .ok_or_else(|| err(base + pos + 1, "expected `,` inside arc"))?;
            let i: usize = body[..comma]
                .trim()
                .parse()
                .map_err(|_| err(base + pos + 1, "invalid arc endpoint"))?;
            let j: usize = body[comma + 1..]
                .trim()
                .parse()
                .map_err(|_| err(base + pos + comma + 2, "invalid arc endpoint"))?;
            arcs.push((i, j));
            pos += close + 1;
        }
        Diagram::new(n, arcs)
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Counts keyed by (genus, size); size is arcs for matchings and shapes,
/// vertices for structures.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusTable {
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl GenusTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, genus: usize, size: usize, count: BigInt) {
        if count == BigInt::from(0) {
            return;
        }
        *self
            .entries
            .entry((genus, size))
            .or_insert_with(|| BigInt::from(0)) += count;
    }

    pub fn get(&self, genus: usize, size: usize) -> BigInt {
        self.entries
            .get(&(genus, size))
            .cloned()
            .unwrap_or_else(|| BigInt::from(0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.entries.iter()
    }

    /// Total count at a given size across all genera.
    pub fn total_at(&self, size: usize) -> BigInt {
        self.entries
            .iter()
            .filter(|((_, s), _)| *s == size)
            .map(|(_, c)| c)
            .sum()
    }

    pub fn max_genus_at(&self, size: usize) -> Option<usize> {
        self.entries
            .keys()
            .filter(|(_, s)| *s == size)
            .map(|(g, _)| *g)
            .max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, arcs: &[(usize, usize)]) -> Diagram {
        Diagram::new(n, arcs.to_vec()).unwrap()
    }

    #[test]
    fn boundary_single_arc() {
        assert_eq!(d(2, &[(1, 2)]).boundary_components(), 2);
    }

    #[test]
    fn boundary_crossing_pair() {
        assert_eq!(d(4, &[(1, 3), (2, 4)]).boundary_components(), 1);
    }

    #[test]
    fn boundary_empty() {
        assert_eq!(Diagram::empty(5).boundary_components(), 1);
    }

    #[test]
    fn genus_values() {
        assert_eq!(d(4, &[(1, 3), (2, 4)]).genus().unwrap(), 1);
        assert_eq!(d(2, &[(1, 2)]).genus().unwrap(), 0);
        assert_eq!(d(6, &[(1, 4), (2, 5), (3, 6)]).genus().unwrap(), 1);
        assert_eq!(Diagram::empty(3).genus().unwrap(), 0);
    }

    #[test]
    fn genus_ignores_unpaired_vertices() {
        let with_gaps = d(8, &[(1, 5), (3, 7)]);
        assert_eq!(with_gaps.genus().unwrap(), 1);
    }

    #[test]
    fn shadow_removes_noncrossing_arc() {
        let s = d(2, &[(1, 2)]).shadow();
        assert_eq!(s.arc_count(), 0);
        assert_eq!(s.n(), 0);
    }

    #[test]
    fn shadow_collapses_two_stacks() {
        let s = d(8, &[(1, 6), (2, 5), (3, 8), (4, 7)]).shadow();
        assert_eq!(s, d(4, &[(1, 3), (2, 4)]));
    }

    #[test]
    fn shadow_fixpoint_of_itself() {
        let sh = d(4, &[(1, 3), (2, 4)]);
        assert_eq!(sh.shadow(), sh);
        assert!(sh.is_shadow());
    }

    #[test]
    fn shadow_iterates_to_fixpoint() {
        // (4,5) crosses nothing; (1,9),(2,8) is a stack; (3,10) crosses
        // both stack arcs. Removal, collapse and relabeling interleave.
        let g = d(10, &[(1, 9), (2, 8), (4, 5), (3, 10)]);
        let s = g.shadow();
        assert_eq!(s, d(4, &[(1, 3), (2, 4)]));
        assert_eq!(g.genus().unwrap(), s.genus().unwrap());
    }

    #[test]
    fn deleting_isolated_vertices_reveals_stacks() {
        // (1,9),(3,7) are parallel but separated by unpaired vertices;
        // both cross (5,11), the gap closes after deletion and the pair
        // collapses as a stack.
        let g = d(11, &[(1, 9), (3, 7), (5, 11)]);
        let s = g.shadow();
        assert_eq!(s, d(4, &[(1, 3), (2, 4)]));
    }

    #[test]
    fn components_split_disjoint_crossings() {
        let comps = d(6, &[(1, 3), (2, 4), (5, 6)]).components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], d(4, &[(1, 3), (2, 4)]));
        assert_eq!(comps[1], d(2, &[(1, 2)]));
    }

    #[test]
    fn components_empty() {
        assert!(Diagram::empty(4).components().is_empty());
    }

    /// A 28-vertex 2-matching with maximal arcs (1,6), (7,19), (17,20),
    /// (21,26), (23,28): five crossing components and three blocks.
    fn block_example() -> Diagram {
        d(
            28,
            &[
                (1, 6),
                (2, 4),
                (3, 5),
                (7, 19),
                (8, 12),
                (9, 13),
                (10, 14),
                (11, 15),
                (16, 18),
                (17, 20),
                (21, 26),
                (22, 24),
                (23, 28),
                (25, 27),
            ],
        )
    }

    #[test]
    fn five_components_three_blocks() {
        let g = block_example();
        assert!(g.is_matching());
        assert_eq!(g.components().len(), 5);
        let blocks = g.blocks();
        assert_eq!(blocks.len(), 3);
        assert_eq!(blocks[0].n(), 6);
        assert_eq!(blocks[1].n(), 14);
        assert_eq!(blocks[2].n(), 8);
        assert!(g.is_gamma_diagram(2));
        assert!(!g.is_gamma_diagram(1)); // contains genus-2 irreducible shadows
    }

    #[test]
    fn single_arc_one_block() {
        assert_eq!(d(2, &[(1, 2)]).blocks().len(), 1);
    }

    #[test]
    fn nested_arcs_one_block() {
        assert_eq!(d(4, &[(1, 4), (2, 3)]).blocks().len(), 1);
    }

    #[test]
    fn irreducibility() {
        assert!(d(4, &[(1, 3), (2, 4)]).is_irreducible());
        assert!(!d(8, &[(1, 3), (2, 4), (5, 7), (6, 8)]).is_irreducible());
        assert!(!d(2, &[(1, 2)]).is_irreducible());
    }

    #[test]
    fn gamma_membership() {
        // noncrossing diagrams are 1-diagrams (empty shadow)
        assert!(d(6, &[(1, 6), (2, 5), (3, 4)]).is_gamma_diagram(1));
        // the crossing pair has genus 1
        assert!(d(4, &[(1, 3), (2, 4)]).is_gamma_diagram(1));
        assert!(Diagram::empty(0).is_gamma_diagram(1));
    }

    #[test]
    fn tau_canonical_predicates() {
        assert!(d(5, &[(1, 5), (2, 4)]).is_tau_canonical_structure(2, 1));
        assert!(!d(3, &[(1, 3)]).is_tau_canonical_structure(2, 1));
        assert!(!d(2, &[(1, 2)]).is_tau_canonical_structure(1, 1));
        assert!(Diagram::empty(4).is_tau_canonical_structure(3, 1));
    }

    #[test]
    fn stacks_reported_with_lengths() {
        let g = d(5, &[(1, 5), (2, 4)]);
        assert_eq!(g.stacks(), vec![((1, 5), 2)]);
        let h = d(4, &[(1, 3), (2, 4)]);
        assert_eq!(h.stacks().len(), 2);
    }

    #[test]
    fn genus_additive_under_concatenation_and_nesting() {
        let a = d(4, &[(1, 3), (2, 4)]);
        let b = d(6, &[(1, 4), (2, 5), (3, 6)]);
        let cat = a.concatenate(&b);
        assert_eq!(cat.genus().unwrap(), 2);
        let nested = b.nest_at(&a, 2);
        assert_eq!(nested.genus().unwrap(), 2);
    }

    #[test]
    fn text_roundtrip() {
        let g = d(4, &[(1, 3), (2, 4)]);
        assert_eq!(g.to_text(), "n=4;arcs=(1,3)(2,4)");
        assert_eq!(Diagram::parse("n=4;arcs=(1,3)(2,4)").unwrap(), g);
        assert_eq!(Diagram::parse("n=4;arcs=").unwrap(), Diagram::empty(4));
    }

    #[test]
    fn json_roundtrip() {
        let g = d(4, &[(1, 3), (2, 4)]);
        let parsed = Diagram::parse("{\"n\":4,\"arcs\":[[1,3],[2,4]]}").unwrap();
        assert_eq!(parsed, g);
    }

    #[test]
    fn parse_errors_carry_position() {
        match Diagram::parse("n=4;arcs=(1,") {
            Err(DiagramError::Parse { line, column, .. }) => {
                assert_eq!(line, 1);
                assert!(column > 1);
            }
            other => panic!("expected parse error, got {:?}", other),
        }
        assert!(Diagram::parse("n=4;arcs=(1,3)(1,4)").is_err()); // duplicate endpoint
    }

    #[test]
    fn invalid_diagrams_rejected() {
        assert!(matches!(
            Diagram::new(3, vec![(2, 2)]),
            Err(DiagramError::DegenerateArc(2, 2))
        ));
        assert!(matches!(
            Diagram::new(3, vec![(1, 4)]),
            Err(DiagramError::EndpointOutOfRange(4, 3))
        ));
        assert!(matches!(
            Diagram::new(4, vec![(1, 3), (3, 4)]),
            Err(DiagramError::DuplicateEndpoint(3))
        ));
    }
}
