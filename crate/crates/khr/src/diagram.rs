//! Planar knot and link diagrams as PD codes.
//!
//! A crossing is a 4-tuple of edge identifiers listing the four quadrants
//! counterclockwise from the incoming under-strand, so published PD codes
//! can be pasted in directly. The under-strand runs from slot 0 to slot 2,
//! the over-strand occupies slots 1 and 3.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub type Edge = u32;

/// Union-find over edge identifiers, used for smoothings and strand tracing.
#[derive(Clone, Debug)]
pub struct EdgeUnion {
    parent: BTreeMap<Edge, Edge>,
}

impl EdgeUnion {
    pub fn new() -> Self {
        EdgeUnion { parent: BTreeMap::new() }
    }

    pub fn find(&mut self, x: Edge) -> Edge {
        let p = *self.parent.get(&x).unwrap_or(&x);
        if p == x {
            return x;
        }
        let root = self.find(p);
        self.parent.insert(x, root);
        root
    }

    /// Union keeping the smaller identifier as representative.
    pub fn union(&mut self, a: Edge, b: Edge) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent.insert(hi, lo);
    }
}

impl Default for EdgeUnion {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<[Edge; 4]>,
    /// Closed circles without crossings (smoothed-away components); each is
    /// identified by one representative edge id.
    free_loops: Vec<Edge>,
    basepoint: Edge,
    signs: Vec<i8>,
    n_plus: u32,
    n_minus: u32,
    components: u32,
}

/// One traversal step: an edge flows into a crossing at a slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Occurrence {
    crossing: u32,
    slot: u8,
}

impl PlanarDiagram {
    /// Build and validate a diagram; computes orientations, crossing signs
    /// and the component count.
    pub fn new(crossings: Vec<[Edge; 4]>, free_loops: Vec<Edge>, basepoint: Edge) -> Result<Self> {
        let mut occurrences: BTreeMap<Edge, Vec<Occurrence>> = BTreeMap::new();
        for (ci, x) in crossings.iter().enumerate() {
            for (si, e) in x.iter().enumerate() {
                occurrences.entry(*e).or_default().push(Occurrence { crossing: ci as u32, slot: si as u8 });
            }
        }
        for (e, occ) in &occurrences {
            if occ.len() != 2 {
                return Err(Error::InvalidDiagram(format!(
                    "edge {e} appears {} times, expected exactly 2",
                    occ.len()
                )));
            }
        }
        for l in &free_loops {
            if occurrences.contains_key(l) {
                return Err(Error::InvalidDiagram(format!("free loop edge {l} also appears at a crossing")));
            }
        }
        {
            let mut fl = free_loops.clone();
            fl.sort_unstable();
            if fl.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidDiagram("duplicate free loop id".into()));
            }
        }
        if !occurrences.contains_key(&basepoint) && !free_loops.contains(&basepoint) {
            return Err(Error::InvalidDiagram(format!("basepoint edge {basepoint} not present")));
        }

        let (signs, traced_components) = trace(&crossings, &occurrences)?;
        let components = traced_components + free_loops.len() as u32;
        let n_plus = signs.iter().filter(|s| **s > 0).count() as u32;
        let n_minus = signs.len() as u32 - n_plus;
        Ok(PlanarDiagram {
            crossings,
            free_loops: {
                let mut f = free_loops;
                f.sort_unstable();
                f
            },
            basepoint,
            signs,
            n_plus,
            n_minus,
            components,
        })
    }

    pub fn unknot() -> Self {
        PlanarDiagram::new(Vec::new(), vec![1], 1).unwrap()
    }

    pub fn crossings(&self) -> &[[Edge; 4]] {
        &self.crossings
    }

    pub fn free_loops(&self) -> &[Edge] {
        &self.free_loops
    }

    pub fn basepoint(&self) -> Edge {
        self.basepoint
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn n_plus(&self) -> u32 {
        self.n_plus
    }

    pub fn n_minus(&self) -> u32 {
        self.n_minus
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    pub fn components(&self) -> u32 {
        self.components
    }

    /// Replace crossing `c` by its `r`-smoothing (r in {0,1}).
    ///
    /// The 0-smoothing joins slots 0-1 and 2-3, the 1-smoothing joins
    /// slots 0-3 and 1-2. Merged edge classes keep their smallest id, so
    /// circles of the resolved diagram correspond to circles of the parent
    /// cube vertex with matching minimal edges. The basepoint follows its
    /// merged class.
    pub fn resolve_crossing(&self, c: usize, r: u8) -> Result<PlanarDiagram> {
        if c >= self.crossings.len() {
            return Err(Error::CrossingIndex { index: c, count: self.crossings.len() });
        }
        assert!(r < 2, "resolution must be 0 or 1");
        let [a, b, cc, dd] = self.crossings[c];
        let pairs = if r == 0 { [(a, b), (cc, dd)] } else { [(a, dd), (b, cc)] };
        let mut uf = EdgeUnion::new();
        let mut closed: Vec<Edge> = Vec::new();
        for (x, y) in pairs {
            if x == y {
                closed.push(x);
            } else {
                uf.union(x, y);
            }
        }
        let mut new_crossings: Vec<[Edge; 4]> = Vec::with_capacity(self.crossings.len() - 1);
        for (i, x) in self.crossings.iter().enumerate() {
            if i == c {
                continue;
            }
            new_crossings.push([uf.find(x[0]), uf.find(x[1]), uf.find(x[2]), uf.find(x[3])]);
        }
        let mut free = self.free_loops.clone();
        for e in closed {
            free.push(uf.find(e));
        }
        // A merged class with no remaining crossing occurrences closed up.
        let mut roots: Vec<Edge> = [a, b, cc, dd].iter().map(|e| uf.find(*e)).collect();
        roots.sort_unstable();
        roots.dedup();
        for root in roots {
            if free.contains(&root) {
                continue;
            }
            let survives = new_crossings.iter().any(|x| x.contains(&root));
            if !survives {
                free.push(root);
            }
        }
        free.sort_unstable();
        free.dedup();
        let basepoint = uf.find(self.basepoint);
        PlanarDiagram::new(new_crossings, free, basepoint)
    }

    /// Mirror image: every crossing's over- and under-strands swap. Each
    /// tuple is rotated so the new incoming under-strand (the old over,
    /// entering at slot 1 or 3 per its traced direction) leads.
    pub fn mirror(&self) -> PlanarDiagram {
        let mut occurrences: BTreeMap<Edge, Vec<Occurrence>> = BTreeMap::new();
        for (ci, x) in self.crossings.iter().enumerate() {
            for (si, e) in x.iter().enumerate() {
                occurrences.entry(*e).or_default().push(Occurrence { crossing: ci as u32, slot: si as u8 });
            }
        }
        let dirs = trace_directions(&self.crossings, &occurrences);
        let crossings = self
            .crossings
            .iter()
            .zip(&dirs)
            .map(|(x, (_, over_fwd))| {
                let k = if *over_fwd { 1 } else { 3 };
                [x[k], x[(k + 1) % 4], x[(k + 2) % 4], x[(k + 3) % 4]]
            })
            .collect();
        PlanarDiagram::new(crossings, self.free_loops.clone(), self.basepoint)
            .expect("mirror of a valid diagram is valid")
    }

    /// Renumber edges 1.. in order of first appearance; for structural
    /// comparisons between diagrams with scattered edge ids.
    pub fn canonical_form(&self) -> PlanarDiagram {
        let mut map: BTreeMap<Edge, Edge> = BTreeMap::new();
        let mut next: Edge = 1;
        let renumber = |e: Edge, map: &mut BTreeMap<Edge, Edge>, next: &mut Edge| -> Edge {
            *map.entry(e).or_insert_with(|| {
                let v = *next;
                *next += 1;
                v
            })
        };
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                [
                    renumber(x[0], &mut map, &mut next),
                    renumber(x[1], &mut map, &mut next),
                    renumber(x[2], &mut map, &mut next),
                    renumber(x[3], &mut map, &mut next),
                ]
            })
            .collect();
        let free = self.free_loops.iter().map(|e| renumber(*e, &mut map, &mut next)).collect();
        let basepoint = *map.get(&self.basepoint).unwrap_or(&1);
        PlanarDiagram::new(crossings, free, basepoint).expect("renumbering preserves validity")
    }

    /// The multiset of crossing tuples up to edge renumbering, for
    /// isomorphism-style comparisons in tests.
    pub fn crossing_multiset(&self) -> Vec<[Edge; 4]> {
        let c = self.canonical_form();
        let mut v = c.crossings.clone();
        v.sort_unstable();
        v
    }

    pub fn stats(&self) -> DiagramStats {
        DiagramStats {
            components: self.components,
            n_plus: self.n_plus,
            n_minus: self.n_minus,
            writhe: self.writhe(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DiagramStats {
    pub components: u32,
    pub n_plus: u32,
    pub n_minus: u32,
    pub writhe: i64,
}

/// Walk every strand, orienting each component deterministically: the
/// traversal starts at the least unvisited edge and is flipped, if needed,
/// so that the first under-passage met runs slot 0 -> slot 2.
///
/// Returns per-crossing (under_dir, over_dir) where `true` means the
/// passage is traversed from its first slot (0 or 1) to the opposite one.
fn trace_directions(
    crossings: &[[Edge; 4]],
    occurrences: &BTreeMap<Edge, Vec<Occurrence>>,
) -> Vec<(bool, bool)> {
    let mut dirs: Vec<(Option<bool>, Option<bool>)> = vec![(None, None); crossings.len()];
    let mut visited: BTreeMap<Edge, bool> = BTreeMap::new();
    for (&start, occ) in occurrences.iter() {
        if *visited.get(&start).unwrap_or(&false) {
            continue;
        }
        // Passages recorded along this component, for a possible flip.
        let mut recorded: Vec<(usize, bool)> = Vec::new(); // (crossing, is_under)
        let mut first_under_forward: Option<bool> = None;
        let start_occ = occ[1];
        let mut edge = start;
        let mut target = start_occ;
        loop {
            visited.insert(edge, true);
            let c = target.crossing as usize;
            let s = target.slot;
            let is_under = s == 0 || s == 2;
            let forward = s == 0 || s == 1;
            if is_under {
                dirs[c].0 = Some(forward);
                if first_under_forward.is_none() {
                    first_under_forward = Some(forward);
                }
            } else {
                dirs[c].1 = Some(forward);
            }
            recorded.push((c, is_under));
            let exit_slot = s ^ 2;
            let next_edge = crossings[c][exit_slot as usize];
            let next_occs = &occurrences[&next_edge];
            let here = Occurrence { crossing: c as u32, slot: exit_slot };
            let next_target = if next_occs[0] == here { next_occs[1] } else { next_occs[0] };
            edge = next_edge;
            target = next_target;
            if edge == start && target == start_occ {
                break;
            }
        }
        if first_under_forward == Some(false) {
            for (c, is_under) in recorded {
                if is_under {
                    dirs[c].0 = dirs[c].0.map(|b| !b);
                } else {
                    dirs[c].1 = dirs[c].1.map(|b| !b);
                }
            }
        }
    }
    dirs.into_iter()
        .map(|(u, o)| (u.expect("under passage traversed"), o.expect("over passage traversed")))
        .collect()
}

fn trace(crossings: &[[Edge; 4]], occurrences: &BTreeMap<Edge, Vec<Occurrence>>) -> Result<(Vec<i8>, u32)> {
    // Component count by union over passages.
    let mut uf = EdgeUnion::new();
    for x in crossings {
        uf.union(x[0], x[2]);
        uf.union(x[1], x[3]);
    }
    let mut roots: Vec<Edge> = occurrences.keys().map(|e| uf.find(*e)).collect();
    roots.sort_unstable();
    roots.dedup();
    let components = roots.len() as u32;

    let dirs = trace_directions(crossings, occurrences);
    let signs = dirs
        .into_iter()
        .map(|(under_fwd, over_fwd)| if under_fwd != over_fwd { 1 } else { -1 })
        .collect();
    Ok((signs, components))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(codes: &[[Edge; 4]]) -> PlanarDiagram {
        PlanarDiagram::new(codes.to_vec(), vec![], codes[0][0]).unwrap()
    }

    /// Standard table code for the left-handed trefoil.
    fn trefoil_left() -> PlanarDiagram {
        pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]])
    }

    #[test]
    fn unknot_base_case() {
        let u = PlanarDiagram::unknot();
        assert_eq!(u.components(), 1);
        assert_eq!(u.n_crossings(), 0);
        assert_eq!(u.writhe(), 0);
    }

    #[test]
    fn trefoil_signs_and_components() {
        let t = trefoil_left();
        assert_eq!(t.components(), 1);
        assert_eq!(t.n_minus(), 3);
        assert_eq!(t.n_plus(), 0);
        let m = t.mirror();
        assert_eq!(m.n_plus(), 3);
        assert_eq!(m.n_minus(), 0);
        assert_eq!(m.components(), 1);
    }

    #[test]
    fn mirror_is_involution() {
        let t = trefoil_left();
        let mm = t.mirror().mirror();
        assert_eq!(mm.crossing_multiset(), t.crossing_multiset());
        assert_eq!(mm.signs(), t.signs());
    }

    #[test]
    fn kink_resolutions() {
        // One-crossing unknot with a positive kink: edges 1 (slots 0,1), 2 (slots 2,3).
        let k = pd(&[[1, 1, 2, 2]]);
        assert_eq!(k.components(), 1);
        let r0 = k.resolve_crossing(0, 0).unwrap();
        assert_eq!(r0.n_crossings(), 0);
        assert_eq!(r0.components(), 2);
        let r1 = k.resolve_crossing(0, 1).unwrap();
        assert_eq!(r1.components(), 1);
    }

    #[test]
    fn resolve_out_of_range() {
        let t = trefoil_left();
        assert!(matches!(t.resolve_crossing(5, 0), Err(Error::CrossingIndex { .. })));
    }

    #[test]
    fn duplicate_edge_rejected() {
        let bad = PlanarDiagram::new(vec![[1, 2, 3, 1], [2, 3, 4, 4], [1, 2, 3, 4]], vec![], 1);
        assert!(bad.is_err());
    }
}
