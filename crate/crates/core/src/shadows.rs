//! Brute-force catalogs of irreducible shadows of genus 1 and 2.
//!
//! A genus-g irreducible shadow is a stack-free perfect matching without
//! noncrossing arcs whose crossing graph is connected, of genus exactly
//! g; it has between 2g and 6g-2 arcs. The search walks perfect
//! matchings in left-endpoint canonical order and prunes on
//! stack creation, sealed crossing components and the genus bound
//! (genus never decreases when an arc is added).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{MPoly, Marker};
use crate::diagram::Diagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShadowsError {
    #[error("irreducible shadow catalogs are available for genus 1 and 2, not {0}")]
    UnsupportedGenus(usize),
}

/// Exhaustive catalog of irreducible shadows of one genus, grouped and
/// canonically ordered by arc count.
#[derive(Debug, Clone, Serialize)]
pub struct ShadowCatalog {
    genus: usize,
    by_arc_count: BTreeMap<usize, Vec<Diagram>>,
}

impl ShadowCatalog {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn arc_counts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.by_arc_count.iter().map(|(n, v)| (*n, v.len()))
    }

    pub fn members(&self, arcs: usize) -> &[Diagram] {
        self.by_arc_count
            .get(&arcs)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn count(&self, arcs: usize) -> usize {
        self.members(arcs).len()
    }

    pub fn total(&self) -> usize {
        self.by_arc_count.values().map(|v| v.len()).sum()
    }

    /// I_g(z) = sum of i(g,n) z^n over the catalog.
    pub fn polynomial(&self) -> MPoly {
        let mut p = MPoly::zero();
        for (n, members) in &self.by_arc_count {
            p = p.add(&MPoly::term(
                BigInt::from(members.len()),
                [*n as u16, 0, 0, 0],
            ));
        }
        p
    }
}

/// Enumerate all irreducible shadows of the given genus (1 or 2).
pub fn enumerate_irreducible_shadows(genus: usize) -> Result<ShadowCatalog, ShadowsError> {
    if !(1..=2).contains(&genus) {
        return Err(ShadowsError::UnsupportedGenus(genus));
    }
    let mut by_arc_count = BTreeMap::new();
    for arcs in 2 * genus..=6 * genus - 2 {
        by_arc_count.insert(arcs, enumerate_at_arc_count(genus, arcs));
    }
    Ok(ShadowCatalog {
        genus,
        by_arc_count,
    })
}

/// Cached catalog access; enumeration runs once per process.
pub fn catalog(genus: usize) -> Result<&'static ShadowCatalog, ShadowsError> {
    static G1: OnceLock<ShadowCatalog> = OnceLock::new();
    static G2: OnceLock<ShadowCatalog> = OnceLock::new();
    match genus {
        1 => Ok(G1.get_or_init(|| enumerate_irreducible_shadows(1).unwrap())),
        2 => Ok(G2.get_or_init(|| enumerate_irreducible_shadows(2).unwrap())),
        g => Err(ShadowsError::UnsupportedGenus(g)),
    }
}

/// I_g(z), the generating polynomial of irreducible shadows of genus g.
pub fn irreducible_polynomial(genus: usize) -> Result<MPoly, ShadowsError> {
    Ok(catalog(genus)?.polynomial())
}

/// Is_γ(z,t) = Σ_{1 ≤ g ≤ γ} I_g(z) t^g. No planar irreducible shadow
/// exists, so there is no t^0 term.
pub fn is_polynomial(gamma: usize) -> Result<MPoly, ShadowsError> {
    if !(1..=2).contains(&gamma) {
        return Err(ShadowsError::UnsupportedGenus(gamma));
    }
    let mut p = MPoly::zero();
    for g in 1..=gamma {
        let ig = irreducible_polynomial(g)?;
        p = p.add(&ig.mul(&MPoly::monomial(1, Marker::T, g as u16)));
    }
    Ok(p)
}

fn enumerate_at_arc_count(genus: usize, arcs: usize) -> Vec<Diagram> {
    let two_n = 2 * arcs;
    // Deterministic parallel split on the partner of position 1; within a
    // branch the DFS emits diagrams in lexicographic arc-list order.
    let branches: Vec<Vec<Diagram>> = (2..=two_n)
        .into_par_iter()
        .map(|j| {
            let mut s = Search {
                two_n,
                target_genus: genus,
                total_arcs: arcs,
                partner: vec![0; two_n + 1],
                arcs: Vec::with_capacity(arcs),
                out: Vec::new(),
                endpoints: Vec::with_capacity(two_n),
                alpha: vec![0; two_n],
                visited: vec![false; two_n],
                rep: Vec::with_capacity(arcs),
            };
            if s.try_arc(1, j) {
                s.dfs();
                s.undo_arc(1, j);
            }
            s.out
        })
        .collect();
    branches.into_iter().flatten().collect()
}

/// Depth-first search state over perfect matchings of one point set.
struct Search {
    two_n: usize,
    target_genus: usize,
    total_arcs: usize,
    partner: Vec<usize>, // 1-based; 0 = free
    arcs: Vec<(usize, usize)>,
    out: Vec<Diagram>,
    // scratch buffers reused across nodes
    endpoints: Vec<usize>,
    alpha: Vec<usize>,
    visited: Vec<bool>,
    rep: Vec<usize>,
}

impl Search {
    fn leftmost_free(&self) -> Option<usize> {
        (1..=self.two_n).find(|&v| self.partner[v] == 0)
    }

    /// Place arc (i, j) unless it would complete a stack of length 2.
    fn try_arc(&mut self, i: usize, j: usize) -> bool {
        if i > 1 && j < self.two_n && self.partner[i - 1] == j + 1 {
            return false;
        }
        self.partner[i] = j;
        self.partner[j] = i;
        self.arcs.push((i, j));
        true
    }

    fn undo_arc(&mut self, i: usize, j: usize) {
        self.partner[i] = 0;
        self.partner[j] = 0;
        self.arcs.pop();
    }

    /// Boundary cycle count of the chosen arcs (free positions ignored).
    /// Endpoint ranks come from a single pass over the partner array,
    /// which already encodes the matching in position order.
    fn boundary_components(&mut self) -> usize {
        let m = self.arcs.len();
        self.endpoints.clear();
        for v in 1..=self.two_n {
            if self.partner[v] != 0 {
                self.endpoints.push(v);
            }
        }
        let two_m = 2 * m;
        debug_assert_eq!(self.endpoints.len(), two_m);
        let rank = |endpoints: &[usize], v: usize| endpoints.binary_search(&v).unwrap();
        for &(i, j) in &self.arcs {
            let (ri, rj) = (rank(&self.endpoints, i), rank(&self.endpoints, j));
            self.alpha[ri] = rj;
            self.alpha[rj] = ri;
        }
        for f in self.visited[..two_m].iter_mut() {
            *f = false;
        }
        let mut cycles = 0;
        for start in 0..two_m {
            if self.visited[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !self.visited[k] {
                self.visited[k] = true;
                k = self.alpha[(k + 1) % two_m];
            }
        }
        cycles
    }

    fn partial_genus(&mut self) -> usize {
        let m = self.arcs.len();
        if m == 0 {
            return 0;
        }
        (1 + m - self.boundary_components()) / 2
    }

    fn crossing(a: (usize, usize), b: (usize, usize)) -> bool {
        (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
    }

    /// Crossing-graph component representative per arc, written into the
    /// reusable `rep` buffer.
    fn compute_components(&mut self) {
        let m = self.arcs.len();
        self.rep.clear();
        self.rep.extend(0..m);
        fn find(rep: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while rep[r] != r {
                r = rep[r];
            }
            let mut c = x;
            while rep[c] != r {
                let n = rep[c];
                rep[c] = r;
                c = n;
            }
            r
        }
        for a in 0..m {
            for b in a + 1..m {
                if Self::crossing(self.arcs[a], self.arcs[b]) {
                    let (ra, rb) = (find(&mut self.rep, a), find(&mut self.rep, b));
                    if ra != rb {
                        self.rep[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        for a in 0..m {
            let r = find(&mut self.rep, a);
            self.rep[a] = r;
        }
    }

    /// A crossing component is sealed when no free position lies strictly
    /// inside any of its arcs: it can never gain another crossing, so the
    /// final diagram cannot be irreducible while anything remains outside.
    /// Assumes `compute_components` ran for the current arc set.
    fn has_sealed_component(&self) -> bool {
        // components are labeled by their smallest arc index
        let m = self.arcs.len();
        'outer: for root in 0..m {
            if self.rep[root] != root {
                continue;
            }
            for idx in root..m {
                if self.rep[idx] != root {
                    continue;
                }
                let (i, j) = self.arcs[idx];
                if (i + 1..j).any(|v| self.partner[v] == 0) {
                    continue 'outer;
                }
            }
            return true;
        }
        false
    }

    fn dfs(&mut self) {
        let g = self.partial_genus();
        if g > self.target_genus {
            return;
        }
        if g + (self.total_arcs - self.arcs.len()) < self.target_genus {
            return;
        }
        match self.leftmost_free() {
            None => {
                if g != self.target_genus {
                    return;
                }
                self.compute_components();
                if self.rep.iter().any(|&r| r != 0) {
                    return;
                }
                self.out
                    .push(Diagram::new(self.two_n, self.arcs.clone()).expect("search arcs valid"));
            }
            Some(i) => {
                self.compute_components();
                if self.has_sealed_component() {
                    return;
                }
                for j in i + 1..=self.two_n {
                    if self.partner[j] != 0 {
                        continue;
                    }
                    if self.try_arc(i, j) {
                        self.dfs();
                        self.undo_arc(i, j);
                    }
                }
            }
        }
    }
}
