use gerbe_core::cohomology::*;
use gerbe_core::root_data::Family;
use std::time::Instant;
fn main() {
    for (f, r, sub) in [(Family::A, 7, None), (Family::A, 9, None), (Family::A, 11, None::<&str>)] {
        let case = Case::new(f, r, sub).unwrap();
        let t = Instant::now();
        let k = minimal_level_only(&case).unwrap();
        println!("{f}_{r} minimal_level_only: k={k} in {:?}", t.elapsed());
        let t = Instant::now();
        let rep = minimal_level(&case).unwrap();
        println!("{f}_{r} minimal_level (with classes {}): {:?}", rep.class_count, t.elapsed());
    }
}
