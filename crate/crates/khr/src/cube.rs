//! The reduced Khovanov chain complex from the cube of resolutions.
//!
//! Vertices of the cube are bitmasks over crossings (crossing k is bit k;
//! bit set means the 1-smoothing). Circles of a complete smoothing are
//! ordered by their minimal edge id, which makes generator bases
//! reproducible and lets the two half-cubes of a diagram be identified
//! verbatim with the cubes of its two resolutions.
//!
//! Gradings: a generator at vertex v with label word w has
//!   i = |v| - n_minus,
//!   j = (circles - 2 - 2 |w|) + |v| + n_plus - 2 n_minus,
//! where |w| counts x-labels among the non-basepoint circles and the
//! basepoint circle always carries x. The crossingless unknot then sits at
//! (0, -1).

use std::collections::BTreeMap;
use std::io::Write;
use std::marker::PhantomData;

use crate::diagram::{Edge, PlanarDiagram};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::SparseMat;

/// Circle decomposition of one complete smoothing.
#[derive(Clone, Debug)]
pub struct CircleTable {
    /// Dense edge index -> circle index (circles ordered by min edge).
    pub circle_of_edge: Vec<u8>,
    pub count: u8,
}

/// A generator: cube vertex plus label word over non-basepoint circles
/// (bit set = label x).
pub type Gen = (u32, u32);

#[derive(Clone, Debug)]
pub struct BigradedComplex<F: Field> {
    diagram: PlanarDiagram,
    n: usize,
    edge_index: BTreeMap<Edge, usize>,
    circles: Vec<CircleTable>,
    bp_circle: Vec<u8>,
    cells: BTreeMap<(i32, i32), Vec<Gen>>,
    _field: PhantomData<F>,
}

fn smoothing_pairs(x: &[Edge; 4], r: u8) -> [(Edge, Edge); 2] {
    if r == 0 {
        [(x[0], x[1]), (x[2], x[3])]
    } else {
        [(x[0], x[3]), (x[1], x[2])]
    }
}

fn find(parent: &mut [u16], mut x: u16) -> u16 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

fn unify(parent: &mut [u16], a: u16, b: u16) {
    let ra = find(parent, a);
    let rb = find(parent, b);
    if ra == rb {
        return;
    }
    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
    parent[hi as usize] = lo;
}

fn circle_table(n_edges: usize, joins: impl Iterator<Item = (usize, usize)>) -> CircleTable {
    let mut parent: Vec<u16> = (0..n_edges as u16).collect();
    for (a, b) in joins {
        unify(&mut parent, a as u16, b as u16);
    }
    // Scanning edges in increasing order assigns circle indices ordered by
    // minimal member edge, because the union keeps the minimum as root.
    let mut circle_of_root: BTreeMap<u16, u8> = BTreeMap::new();
    let mut circle_of_edge = vec![0u8; n_edges];
    for e in 0..n_edges {
        let r = find(&mut parent, e as u16);
        let next = circle_of_root.len() as u8;
        let c = *circle_of_root.entry(r).or_insert(next);
        circle_of_edge[e] = c;
    }
    CircleTable { circle_of_edge, count: circle_of_root.len() as u8 }
}

/// Number of circles in the complete smoothing `v` of `d`.
pub fn vertex_circle_count(d: &PlanarDiagram, v: &[u8]) -> Result<usize> {
    if v.len() != d.n_crossings() {
        return Err(Error::Dimension(format!(
            "smoothing vector length {} does not match crossing count {}",
            v.len(),
            d.n_crossings()
        )));
    }
    let mut edges: Vec<Edge> = Vec::new();
    for x in d.crossings() {
        edges.extend_from_slice(x);
    }
    edges.extend_from_slice(d.free_loops());
    edges.sort_unstable();
    edges.dedup();
    let idx: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(k, e)| (*e, k)).collect();
    let joins = d
        .crossings()
        .iter()
        .zip(v)
        .flat_map(|(x, r)| smoothing_pairs(x, *r).into_iter().map(|(a, b)| (idx[&a], idx[&b])));
    Ok(circle_table(edges.len(), joins).count as usize)
}

impl<F: Field> BigradedComplex<F> {
    /// Build the reduced complex; fails above the crossing cap.
    pub fn build(d: &PlanarDiagram, cap: usize) -> Result<Self> {
        let n = d.n_crossings();
        if n > cap {
            return Err(Error::CrossingCap { crossings: n, cap });
        }
        let mut edges: Vec<Edge> = Vec::new();
        for x in d.crossings() {
            edges.extend_from_slice(x);
        }
        edges.extend_from_slice(d.free_loops());
        edges.sort_unstable();
        edges.dedup();
        let edge_index: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(k, e)| (*e, k)).collect();
        let n_edges = edges.len();

        let joins0: Vec<[(usize, usize); 2]> = d
            .crossings()
            .iter()
            .map(|x| smoothing_pairs(x, 0).map(|(a, b)| (edge_index[&a], edge_index[&b])))
            .collect();
        let joins1: Vec<[(usize, usize); 2]> = d
            .crossings()
            .iter()
            .map(|x| smoothing_pairs(x, 1).map(|(a, b)| (edge_index[&a], edge_index[&b])))
            .collect();

        let n_minus = d.n_minus() as i32;
        let n_plus = d.n_plus() as i32;
        let bp_edge = edge_index[&d.basepoint()];

        let mut circles = Vec::with_capacity(1usize << n);
        let mut bp_circle = Vec::with_capacity(1usize << n);
        let mut cells: BTreeMap<(i32, i32), Vec<Gen>> = BTreeMap::new();
        for v in 0..(1u32 << n) {
            let joins = (0..n).flat_map(|k| {
                let j = if v >> k & 1 == 0 { &joins0[k] } else { &joins1[k] };
                j.iter().copied()
            });
            let table = circle_table(n_edges, joins);
            let c = table.count as i32;
            let weight = v.count_ones() as i32;
            let i = weight - n_minus;
            for mask in 0..(1u32 << (c - 1)) {
                let pop = mask.count_ones() as i32;
                let j = (c - 2 - 2 * pop) + weight + n_plus - 2 * n_minus;
                cells.entry((i, j)).or_default().push((v, mask));
            }
            bp_circle.push(table.circle_of_edge[bp_edge]);
            circles.push(table);
        }
        Ok(BigradedComplex { diagram: d.clone(), n, edge_index, circles, bp_circle, cells, _field: PhantomData })
    }

    pub fn diagram(&self) -> &PlanarDiagram {
        &self.diagram
    }

    pub fn n_crossings(&self) -> usize {
        self.n
    }

    pub fn circle_data(&self, v: u32) -> &CircleTable {
        &self.circles[v as usize]
    }

    pub fn bp_circle(&self, v: u32) -> u8 {
        self.bp_circle[v as usize]
    }

    pub fn cells(&self) -> impl Iterator<Item = ((i32, i32), usize)> + '_ {
        self.cells.iter().map(|(k, v)| (*k, v.len()))
    }

    pub fn dim(&self, i: i32, j: i32) -> usize {
        self.cells.get(&(i, j)).map_or(0, |g| g.len())
    }

    pub fn gens(&self, i: i32, j: i32) -> &[Gen] {
        self.cells.get(&(i, j)).map_or(&[], |g| g.as_slice())
    }

    pub fn total_dim(&self) -> usize {
        self.cells.values().map(|g| g.len()).sum()
    }

    pub fn gen_index(&self, i: i32, j: i32, g: Gen) -> Option<usize> {
        self.cells.get(&(i, j))?.binary_search(&g).ok()
    }

    pub fn j_values(&self) -> Vec<i32> {
        let mut js: Vec<i32> = self.cells.keys().map(|(_, j)| *j).collect();
        js.sort_unstable();
        js.dedup();
        js
    }

    pub fn i_range(&self) -> (i32, i32) {
        let lo = -(self.diagram.n_minus() as i32);
        let hi = self.n as i32 - self.diagram.n_minus() as i32;
        (lo, hi)
    }

    fn label_is_x(&self, v: u32, mask: u32, circle: u8) -> bool {
        let bp = self.bp_circle[v as usize];
        if circle == bp {
            return true;
        }
        let pos = if circle > bp { circle - 1 } else { circle };
        mask >> pos & 1 == 1
    }

    fn with_label(&self, w: u32, circle: u8, mask: u32) -> u32 {
        let bp = self.bp_circle[w as usize];
        debug_assert_ne!(circle, bp);
        let pos = if circle > bp { circle - 1 } else { circle };
        mask | 1 << pos
    }

    /// Images of one generator under the cube differential, with signs
    /// (the parity of the set bits below the changed crossing).
    pub fn differential(&self, g: Gen) -> Vec<(Gen, F)> {
        let (v, mask) = g;
        let mut out = Vec::new();
        for k in 0..self.n {
            if v >> k & 1 == 1 {
                continue;
            }
            let w = v | 1 << k;
            let sign = if (v & ((1 << k) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            let coeff = F::from_int(sign);
            let cv = &self.circles[v as usize];
            let cw = &self.circles[w as usize];
            let x = &self.diagram.crossings()[k];
            let e0 = self.edge_index[&x[0]];
            let e1 = self.edge_index[&x[1]];
            let e2 = self.edge_index[&x[2]];
            // v carries the 0-smoothing at k, joining slots 0-1 and 2-3.
            let p = cv.circle_of_edge[e0];
            let q = cv.circle_of_edge[e2];
            let bp_w = self.bp_circle[w as usize];
            if p != q {
                // Merge p, q -> r.
                debug_assert_eq!(cw.count + 1, cv.count);
                let r = cw.circle_of_edge[e0];
                let px = self.label_is_x(v, mask, p);
                let qx = self.label_is_x(v, mask, q);
                if px && qx {
                    continue; // m(x, x) = 0
                }
                let mut wmask = 0u32;
                let mut dropped = false;
                for (e, &wc) in cw.circle_of_edge.iter().enumerate() {
                    // First edge of each w-circle decides its label.
                    if cw.circle_of_edge[..e].contains(&wc) {
                        continue;
                    }
                    let is_x = if wc == r { px || qx } else { self.label_is_x(v, mask, cv.circle_of_edge[e]) };
                    if wc == bp_w {
                        debug_assert!(is_x, "basepoint label must stay x under merge");
                        if !is_x {
                            dropped = true;
                            break;
                        }
                    } else if is_x {
                        wmask = self.with_label(w, wc, wmask);
                    }
                }
                if !dropped {
                    out.push(((w, wmask), coeff));
                }
            } else {
                // Split p -> a, b.
                debug_assert_eq!(cw.count, cv.count + 1);
                let a = cw.circle_of_edge[e0];
                let b = cw.circle_of_edge[e1];
                debug_assert_ne!(a, b, "smoothing change must alter the circle count");
                let mut carried = 0u32;
                let mut carried_ok = true;
                for (e, &wc) in cw.circle_of_edge.iter().enumerate() {
                    if wc == a || wc == b || cw.circle_of_edge[..e].contains(&wc) {
                        continue;
                    }
                    let is_x = self.label_is_x(v, mask, cv.circle_of_edge[e]);
                    if wc == bp_w {
                        debug_assert!(is_x);
                        if !is_x {
                            carried_ok = false;
                        }
                    } else if is_x {
                        carried = self.with_label(w, wc, carried);
                    }
                }
                if !carried_ok {
                    continue;
                }
                let px = self.label_is_x(v, mask, p);
                let summands: &[(bool, bool)] = if px { &[(true, true)] } else { &[(true, false), (false, true)] };
                for &(ax, bx) in summands {
                    let mut wmask = carried;
                    let mut ok = true;
                    for (wc, is_x) in [(a, ax), (b, bx)] {
                        if wc == bp_w {
                            if !is_x {
                                ok = false;
                            }
                        } else if is_x {
                            wmask = self.with_label(w, wc, wmask);
                        }
                    }
                    if ok {
                        out.push(((w, wmask), coeff.clone()));
                    }
                }
            }
        }
        out
    }

    /// The differential block d: (i,j) -> (i+1,j) as a sparse matrix
    /// (columns indexed by source generators).
    pub fn block(&self, i: i32, j: i32) -> SparseMat<F> {
        let src = self.gens(i, j);
        let tgt_dim = self.dim(i + 1, j);
        let mut cols = Vec::with_capacity(src.len());
        for g in src {
            let mut col: Vec<(u32, F)> = self
                .differential(*g)
                .into_iter()
                .map(|(tg, c)| {
                    let idx = self
                        .gen_index(i + 1, j, tg)
                        .expect("differential image must land in the adjacent cell");
                    (idx as u32, c)
                })
                .collect();
            col.sort_by_key(|e| e.0);
            cols.push(col);
        }
        SparseMat { nrows: tgt_dim, ncols: src.len(), cols }
    }

    /// One line per differential entry: `(i,j) row col value`.
    pub fn dump(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let keys: Vec<(i32, i32)> = self.cells.keys().copied().collect();
        for (i, j) in keys {
            let m = self.block(i, j);
            for (c, col) in m.cols.iter().enumerate() {
                for (r, val) in col {
                    writeln!(out, "({i},{j}) {r} {c} {val}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_for;
    use crate::field::{Rat, F2};

    /// Independent circle counter: walks darts (edge, heading) through the
    /// smoothing arcs; every circle is traversed once in each direction.
    fn oracle_circles(d: &PlanarDiagram, v: &[u8]) -> usize {
        use std::collections::BTreeSet;
        let mut ends: BTreeMap<Edge, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, x) in d.crossings().iter().enumerate() {
            for (si, e) in x.iter().enumerate() {
                ends.entry(*e).or_default().push((ci, si));
            }
        }
        let partner = |ci: usize, si: usize| -> usize {
            match (v[ci], si) {
                (0, 0) => 1,
                (0, 1) => 0,
                (0, 2) => 3,
                (0, 3) => 2,
                (1, 0) => 3,
                (1, 3) => 0,
                (1, 1) => 2,
                (1, 2) => 1,
                _ => unreachable!(),
            }
        };
        let mut seen: BTreeSet<(Edge, usize)> = BTreeSet::new();
        let mut walks = 0usize;
        for (&e0, occs) in &ends {
            for o0 in 0..occs.len() {
                if seen.contains(&(e0, o0)) {
                    continue;
                }
                walks += 1;
                let (mut edge, mut occ) = (e0, o0);
                loop {
                    seen.insert((edge, occ));
                    let (ci, si) = ends[&edge][occ];
                    let sj = partner(ci, si);
                    let next_edge = d.crossings()[ci][sj];
                    let enter = ends[&next_edge].iter().position(|&p| p == (ci, sj)).unwrap();
                    edge = next_edge;
                    occ = 1 - enter;
                    if (edge, occ) == (e0, o0) {
                        break;
                    }
                }
            }
        }
        assert_eq!(walks % 2, 0);
        walks / 2 + d.free_loops().len()
    }

    #[test]
    fn unknot_complex_anchor() {
        let d = PlanarDiagram::unknot();
        let c: BigradedComplex<F2> = BigradedComplex::build(&d, 20).unwrap();
        let cells: Vec<_> = c.cells().collect();
        assert_eq!(cells, vec![((0, -1), 1)]);
    }

    #[test]
    fn trefoil_circle_counts() {
        let d = diagram_for("torus(2,3)").unwrap();
        assert_eq!(vertex_circle_count(&d, &[0, 0, 0]).unwrap(), 2);
        assert_eq!(vertex_circle_count(&d, &[1, 0, 0]).unwrap(), 1);
        assert_eq!(vertex_circle_count(&d, &[1, 1, 1]).unwrap(), 3);
        assert!(vertex_circle_count(&d, &[0, 0]).is_err());
    }

    #[test]
    fn circle_counts_match_walking_oracle() {
        for spec in ["torus(2,3)", "torus(3,4)", "pretzel(-2,3,3)", "braid(1,-2,1,-2)"] {
            let d = diagram_for(spec).unwrap();
            let n = d.n_crossings();
            for v in 0..(1u32 << n) {
                let bits: Vec<u8> = (0..n).map(|k| (v >> k & 1) as u8).collect();
                let uf = vertex_circle_count(&d, &bits).unwrap();
                let walk = oracle_circles(&d, &bits);
                assert_eq!(uf, walk, "{spec} at {bits:?}");
            }
        }
    }

    #[test]
    fn adjacent_vertices_differ_by_one_circle() {
        let d = diagram_for("pretzel(-2,3,3)").unwrap();
        let n = d.n_crossings();
        for v in 0..(1u32 << n) {
            let bits: Vec<u8> = (0..n).map(|k| (v >> k & 1) as u8).collect();
            let c = vertex_circle_count(&d, &bits).unwrap() as i64;
            for k in 0..n {
                if v >> k & 1 == 0 {
                    let mut b2 = bits.clone();
                    b2[k] = 1;
                    let c2 = vertex_circle_count(&d, &b2).unwrap() as i64;
                    assert_eq!((c2 - c).abs(), 1);
                }
            }
        }
    }

    #[test]
    fn total_dim_is_sum_over_vertices() {
        let d = diagram_for("torus(2,3)").unwrap();
        let c: BigradedComplex<Rat> = BigradedComplex::build(&d, 20).unwrap();
        let mut expect = 0usize;
        for v in 0..8u32 {
            let bits: Vec<u8> = (0..3).map(|k| (v >> k & 1) as u8).collect();
            expect += 1usize << (vertex_circle_count(&d, &bits).unwrap() - 1);
        }
        assert_eq!(c.total_dim(), expect);
        assert_eq!(c.total_dim(), 15);
    }

    #[test]
    fn d_squared_is_zero_small_diagrams() {
        for spec in
            ["torus(2,3)", "torus(2,4)", "torus(3,4)", "pretzel(-2,3,3)", "braid(1,-2,1,-2)", "pretzel(3,1,1)"]
        {
            let d = diagram_for(spec).unwrap();
            let c: BigradedComplex<Rat> = BigradedComplex::build(&d, 20).unwrap();
            for ((i, j), _) in c.cells().collect::<Vec<_>>() {
                let d1 = c.block(i, j);
                let d2 = c.block(i + 1, j);
                assert!(d2.compose(&d1).is_zero(), "{spec} d^2 != 0 at ({i},{j})");
            }
        }
    }

    #[test]
    fn crossing_cap_enforced() {
        let d = diagram_for("torus(2,3)").unwrap();
        assert!(matches!(
            BigradedComplex::<F2>::build(&d, 2),
            Err(Error::CrossingCap { crossings: 3, cap: 2 })
        ));
    }
}
