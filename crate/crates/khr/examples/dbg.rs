use khr::*;
use khr::cube::BigradedComplex;
use khr::field::{Rat, F2};
use khr::homology::{bigraded_homology, determinant_from_table};
use std::time::Instant;
fn main() {
    let spec = std::env::args().nth(1).unwrap();
    let field = std::env::args().nth(2).unwrap_or("q".into());
    let d = diagram_for(&spec).unwrap();
    let t0 = Instant::now();
    if field == "f2" {
        let c: BigradedComplex<F2> = BigradedComplex::build(&d, 20).unwrap();
        println!("{spec} dim={} build {:?}", c.total_dim(), t0.elapsed());
        let t = bigraded_homology(&c, &spec);
        println!("total={} det={} time {:?}", t.total_rank(), determinant_from_table(&t), t0.elapsed());
        println!("cells (i, j-i): {:?}", t.cells.iter().map(|(&(i,j),&dm)| (i, j-i, dm)).collect::<Vec<_>>());
        println!("delta: {:?}", t.delta_profile().ranks);
    } else {
        let c: BigradedComplex<Rat> = BigradedComplex::build(&d, 20).unwrap();
        println!("{spec} dim={} build {:?}", c.total_dim(), t0.elapsed());
        let t = bigraded_homology(&c, &spec);
        println!("total={} det={} time {:?}", t.total_rank(), determinant_from_table(&t), t0.elapsed());
        println!("cells (i, j-i): {:?}", t.cells.iter().map(|(&(i,j),&dm)| (i, j-i, dm)).collect::<Vec<_>>());
        println!("delta: {:?}", t.delta_profile().ranks);
    }
}
