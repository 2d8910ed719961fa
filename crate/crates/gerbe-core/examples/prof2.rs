use gerbe_core::cohomology::*;
use gerbe_core::center::delta_e;
use gerbe_core::root_data::Family;
use std::time::Instant;
fn main() {
    let case = Case::new(Family::A, 11, None).unwrap();
    let t = Instant::now();
    let de = delta_e(&case.rs, &case.center, &case.action, &case.etable, &case.subgroup).unwrap();
    println!("delta_e: {:?} ({} triples)", t.elapsed(), de.len().pow(3));
    let t = Instant::now();
    let u1 = obstruction_cocycle(&case, 1).unwrap();
    println!("obstruction k=1: {:?}", t.elapsed());
    let t = Instant::now();
    let s1 = solve_coboundary(&case.center, &case.subgroup, &u1).unwrap();
    println!("solve k=1: {:?} (solvable={})", t.elapsed(), s1.solution.is_some());
    let t = Instant::now();
    let u2 = obstruction_cocycle(&case, 2).unwrap();
    println!("obstruction k=2: {:?}", t.elapsed());
    let t = Instant::now();
    let s2 = solve_coboundary(&case.center, &case.subgroup, &u2).unwrap();
    println!("solve k=2: {:?} (solvable={})", t.elapsed(), s2.solution.is_some());
}
