use gerbe_core::center::*;
use gerbe_core::root_data::*;
fn main() {
    for (f, r) in [(Family::A,2),(Family::A,3),(Family::A,4),(Family::B,2),(Family::B,3),(Family::B,4),(Family::C,2),(Family::C,3),(Family::C,4),(Family::C,5),(Family::D,3),(Family::D,4),(Family::D,5),(Family::D,6),(Family::D,7),(Family::D,8),(Family::E6,6),(Family::E7,7)] {
        let rs = RootSystem::new(f, r).unwrap();
        let center = Center::of(&rs).unwrap();
        match CenterAction::new(&rs, &center) {
            Ok(a) => {
                let words : Vec<bool> = reflection_words(&rs).iter().map(|(z,_)| reflection_word_check(&rs,&a,*z).unwrap()).collect();
                println!("{f}_{r}: action ok, words {words:?}, beta {}", beta_word_check(&rs,&a).unwrap());
            }
            Err(e) => println!("{f}_{r}: ERR {e}"),
        }
    }
}
