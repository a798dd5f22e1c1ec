//! Bigraded homology tables, Jones polynomials, delta profiles, and
//! homology-class solvers for pushing chain maps to homology.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cube::BigradedComplex;
use crate::diagram::PlanarDiagram;
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{Echelon, SparseRow, TrackedEchelon};
use crate::poly::LaurentPoly;

/// A bigraded dimension table: the homology of a reduced complex, and the
/// Khovanov page of both spectral sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTable {
    pub field: String,
    pub label: String,
    /// Nonzero cells only, keyed by (homological, quantum) degree.
    pub cells: BTreeMap<(i32, i32), usize>,
    pub total: usize,
}

impl DimTable {
    pub fn new(field: String, label: String, cells: BTreeMap<(i32, i32), usize>) -> Self {
        let total = cells.values().sum();
        DimTable { field, label, cells, total }
    }

    pub fn dim(&self, i: i32, j: i32) -> usize {
        self.cells.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> usize {
        self.total
    }

    /// Quantum-degree shift, for translating between grading normalizations.
    pub fn shifted(&self, di: i32, dj: i32) -> DimTable {
        let cells = self.cells.iter().map(|(&(i, j), &d)| ((i + di, j + dj), d)).collect();
        DimTable::new(self.field.clone(), self.label.clone(), cells)
    }

    /// The (i,j) -> (-i,-j) reflection of the cells.
    pub fn reflected(&self) -> DimTable {
        let cells = self.cells.iter().map(|(&(i, j), &d)| ((-i, -j), d)).collect();
        DimTable::new(self.field.clone(), self.label.clone(), cells)
    }

    /// The table of the mirror diagram. In the basepoint-subcomplex
    /// convention (unknot at (0,-1)) reflection overshoots by one unknot
    /// normalization on each side, so the mirror table is the reflection
    /// shifted by (0,-2).
    pub fn mirror_table(&self) -> DimTable {
        self.reflected().shifted(0, -2)
    }

    /// Cells as a sorted list, the JSON wire form.
    pub fn cell_list(&self) -> Vec<(i32, i32, usize)> {
        self.cells.iter().map(|(&(i, j), &d)| (i, j, d)).collect()
    }

    pub fn from_cells(field: &str, label: &str, cells: &[(i32, i32, usize)]) -> Self {
        let map = cells.iter().filter(|c| c.2 > 0).map(|&(i, j, d)| ((i, j), d)).collect();
        DimTable::new(field.to_string(), label.to_string(), map)
    }

    /// Poincare polynomial in t (homological) and q (quantum).
    pub fn poincare_string(&self) -> String {
        if self.cells.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<((i32, i32), usize)> = self.cells.iter().map(|(&k, &d)| (k, d)).collect();
        terms.sort();
        terms
            .iter()
            .map(|((i, j), d)| {
                let c = if *d == 1 { String::new() } else { format!("{d}") };
                format!("{c}t^{i}q^{j}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn delta_profile(&self) -> DeltaProfile {
        let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
        for (&(i, j), &d) in &self.cells {
            *ranks.entry(j - 2 * i).or_insert(0) += d;
        }
        let thin = ranks.len() == 1;
        DeltaProfile { ranks, thin }
    }

    /// True when every quantum degree is odd (the knot parity in the
    /// unknot-at-(0,-1) convention).
    pub fn all_j_odd(&self) -> bool {
        self.cells.keys().all(|(_, j)| j.rem_euclid(2) == 1)
    }
}

impl fmt::Display for DimTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}: {}", self.label, self.field, self.poincare_string())
    }
}

/// Ranks per delta = j - 2i diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaProfile {
    pub ranks: BTreeMap<i32, usize>,
    pub thin: bool,
}

impl DeltaProfile {
    /// (upper-diagonal rank, lower-diagonal rank) when the support has
    /// exactly two diagonals.
    pub fn two_diagonal_ranks(&self) -> Option<(usize, usize)> {
        if self.ranks.len() != 2 {
            return None;
        }
        let mut it = self.ranks.iter().rev();
        let upper = *it.next().unwrap().1;
        let lower = *it.next().unwrap().1;
        Some((upper, lower))
    }

    /// Are the (exactly two) supported diagonals adjacent, i.e. two apart?
    pub fn two_adjacent_diagonals(&self) -> bool {
        let keys: Vec<i32> = self.ranks.keys().copied().collect();
        keys.len() == 2 && keys[1] - keys[0] == 2
    }
}

/// Homology dimensions of a reduced complex, computed independently per
/// quantum-degree column.
pub fn bigraded_homology<F: Field>(complex: &BigradedComplex<F>, label: &str) -> DimTable {
    let mut ranks: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for ((i, j), _) in complex.cells() {
        if complex.dim(i + 1, j) > 0 {
            let r = complex.block(i, j).rank();
            if r > 0 {
                ranks.insert((i, j), r);
            }
        }
    }
    let mut cells: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for ((i, j), dim) in complex.cells() {
        let r_out = ranks.get(&(i, j)).copied().unwrap_or(0);
        let r_in = ranks.get(&(i - 1, j)).copied().unwrap_or(0);
        let h = dim - r_out - r_in;
        if h > 0 {
            cells.insert((i, j), h);
        }
    }
    DimTable::new(F::field_name(), label.to_string(), cells)
}

/// The graded Euler characteristic: sum (-1)^i q^j dim.
/// Normalized so the unknot gives q^-1. Over GF(2) the signed sum equals
/// the same polynomial, since Euler characteristics agree across fields.
pub fn jones_polynomial(t: &DimTable) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (&(i, j), &d) in &t.cells {
        let c = BigInt::from(d as i64) * if i.rem_euclid(2) == 0 { 1 } else { -1 };
        p.add_term(j, &c);
    }
    p
}

/// The determinant |V(-1)| in the classical variable t = q^2, i.e. the
/// Jones polynomial evaluated at q = sqrt(-1). The quantum degrees of a
/// link share one parity, so the value lies on a single axis of the
/// Gaussian integers.
pub fn determinant_from_table(t: &DimTable) -> BigInt {
    use num_traits::{Signed, Zero};
    let (re, im) = jones_polynomial(t).eval_sqrt_minus_one();
    debug_assert!(re.is_zero() || im.is_zero(), "mixed quantum parity in one table");
    re.abs() + im.abs()
}

/// A complex together with its homology table and lazily-built per-cell
/// class solvers (representatives plus a tracked echelon for coordinates).
pub struct ComplexHomology<F: Field> {
    pub complex: BigradedComplex<F>,
    pub table: DimTable,
    solvers: BTreeMap<(i32, i32), CellSolver<F>>,
}

pub struct CellSolver<F: Field> {
    /// Cycles spanning the homology of this cell.
    pub reps: Vec<SparseRow<F>>,
    tracked: TrackedEchelon<F>,
}

impl<F: Field> CellSolver<F> {
    /// Coordinates of the cycle `z` over this cell's representatives,
    /// modulo boundaries. None when z is not a cycle of this cell.
    pub fn class_of(&self, z: SparseRow<F>) -> Option<Vec<F>> {
        self.tracked.coordinates(z)
    }
}

impl<F: Field> ComplexHomology<F> {
    pub fn build(d: &PlanarDiagram, label: &str, cap: usize) -> Result<Self> {
        let complex = BigradedComplex::build(d, cap)?;
        let table = bigraded_homology(&complex, label);
        Ok(ComplexHomology { complex, table, solvers: BTreeMap::new() })
    }

    /// The solver for a homology-bearing cell.
    pub fn solver(&mut self, i: i32, j: i32) -> &CellSolver<F> {
        if !self.solvers.contains_key(&(i, j)) {
            let s = self.build_solver(i, j);
            self.solvers.insert((i, j), s);
        }
        &self.solvers[&(i, j)]
    }

    fn build_solver(&self, i: i32, j: i32) -> CellSolver<F> {
        let h = self.table.dim(i, j);
        // Row echelon of the outgoing block over source coordinates; its
        // free columns parameterize the kernel.
        let out = self.complex.block(i, j).transposed();
        let mut out_ech = Echelon::new();
        for row in &out.cols {
            out_ech.insert(row.clone());
        }
        let mut tracked = TrackedEchelon::new(h);
        if self.complex.dim(i - 1, j) > 0 {
            let inc = self.complex.block(i - 1, j);
            for col in &inc.cols {
                if !col.is_empty() {
                    tracked.insert(col.clone(), vec![F::zero(); h]);
                }
            }
        }
        let mut reps = Vec::with_capacity(h);
        let dim = self.complex.dim(i, j) as u32;
        for f in 0..dim {
            if reps.len() == h {
                break;
            }
            if out_ech.has_pivot(f) {
                continue;
            }
            let kv = out_ech.kernel_vector(f);
            let mut track = vec![F::zero(); h];
            track[reps.len()] = F::one();
            if tracked.insert(kv.clone(), track) {
                reps.push(kv);
            }
        }
        assert_eq!(reps.len(), h, "homology representative count mismatch at ({i},{j})");
        CellSolver { reps, tracked }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_for;
    use crate::field::{Rat, F2};

    fn khr<F: Field>(spec: &str) -> DimTable {
        let d = diagram_for(spec).unwrap();
        let c: BigradedComplex<F> = BigradedComplex::build(&d, 20).unwrap();
        bigraded_homology(&c, spec)
    }

    #[test]
    fn unknot_table() {
        let t = khr::<F2>("unknot");
        assert_eq!(t.cell_list(), vec![(0, -1, 1)]);
        assert_eq!(jones_polynomial(&t), LaurentPoly::from_coeffs(-1, vec![1]));
    }

    #[test]
    fn trefoil_tables_both_chiralities() {
        let t = khr::<Rat>("torus(2,3)");
        assert_eq!(t.cell_list(), vec![(0, 1, 1), (2, 5, 1), (3, 7, 1)]);
        assert!(t.all_j_odd());
        let m = khr::<Rat>("mirror(torus(2,3))");
        assert_eq!(m.cells, t.mirror_table().cells);
    }

    #[test]
    fn trefoil_jones_and_determinant() {
        let t = khr::<Rat>("torus(2,3)");
        let v = jones_polynomial(&t);
        // q + q^5 - q^7
        assert_eq!(v, LaurentPoly::from_coeffs(1, vec![1, 0, 0, 0, 1, 0, -1]));
        assert_eq!(determinant_from_table(&t), BigInt::from(3));
    }

    #[test]
    fn figure_eight_is_thin() {
        // 4_1 = braid closure of (s1 s2^-1)^2.
        let t = khr::<Rat>("braid(1,-2,1,-2)");
        assert_eq!(t.total_rank(), 5);
        let dp = t.delta_profile();
        assert!(dp.thin, "figure eight must be thin: {t}");
        assert_eq!(determinant_from_table(&t), BigInt::from(5));
    }

    #[test]
    fn torus_2_4_link_rank() {
        let t = khr::<F2>("torus(2,4)");
        assert_eq!(t.total_rank(), 4);
    }

    #[test]
    fn solver_reps_are_cycles_and_complete() {
        let d = diagram_for("torus(2,3)").unwrap();
        let mut ch: ComplexHomology<Rat> = ComplexHomology::build(&d, "t23", 20).unwrap();
        let cells: Vec<(i32, i32)> = ch.table.cells.keys().copied().collect();
        for (i, j) in cells {
            let h = ch.table.dim(i, j);
            let out = ch.complex.block(i, j);
            let reps = ch.solver(i, j).reps.clone();
            assert_eq!(reps.len(), h);
            for r in &reps {
                assert!(out.apply(r).is_empty(), "rep is not a cycle");
            }
            // Every rep has coordinates e_k over itself.
            for (k, r) in reps.iter().enumerate() {
                let coords = ch.solver(i, j).class_of(r.clone()).unwrap();
                let mut expect = vec![Rat::zero(); h];
                expect[k] = Rat::one();
                assert_eq!(coords, expect);
            }
        }
    }

    #[test]
    fn gf2_rank_at_least_rational_rank_per_cell() {
        for spec in ["torus(2,3)", "torus(3,4)", "braid(1,-2,1,-2)"] {
            let t2 = khr::<F2>(spec);
            let tq = khr::<Rat>(spec);
            for (&(i, j), &d) in &tq.cells {
                assert!(t2.dim(i, j) >= d, "{spec} at ({i},{j})");
            }
        }
    }
}
