// debug helper
use qcurv_core::ncalg::*;
use rand::{Rng, SeedableRng};

fn main() {
    let n = 2u32;
    let p = Presentation::build(n, 2_000_000);
    let d = (n + 1) as u8;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
    let mut rand_word = |rng: &mut rand_chacha::ChaCha8Rng| {
        let len = rng.gen_range(1..=3);
        NCPoly::word(Word(
            (0..len)
                .map(|_| Gen::new(rng.gen_range(1..=d), rng.gen_range(1..=d)))
                .collect(),
        ))
    };
    for trial in 0..200 {
        let a = rand_word(&mut rng);
        let b = rand_word(&mut rng);
        let c = rand_word(&mut rng);
        let left = p.nf_mul(&p.nf_mul(&a, &b).unwrap(), &c).unwrap();
        let right = p.nf_mul(&a, &p.nf_mul(&b, &c).unwrap()).unwrap();
        if left != right {
            println!("trial {trial}");
            println!("a = {a}");
            println!("b = {b}");
            println!("c = {c}");
            println!("left  = {left}");
            println!("right = {right}");
            println!("diff = {}", left.sub(&right));
            break;
        }
    }
}
