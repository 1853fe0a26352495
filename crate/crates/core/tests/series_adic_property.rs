//! Square completion on random inputs: the reconstruction must agree with
//! the input through the truncation order, for every admissible `r`.

use badpoint_core::series::{adic_decompose, TruncSeries};
use badpoint_core::{Monomial, Poly, Vars};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const N: u32 = 12;

fn random_g(rng: &mut ChaCha8Rng, vars: &Vars) -> Poly {
    let n = vars.len();
    let terms = rng.gen_range(0..6);
    let mut out = Vec::new();
    for _ in 0..terms {
        let deg = rng.gen_range(3..=6u32);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        let num: i64 = rng.gen_range(-5..=5);
        let den: i64 = rng.gen_range(1..=3);
        out.push((Monomial::from_exps(&e), badpoint_core::rat::rat(num, den)));
    }
    Poly::from_terms(vars, out)
}

#[test]
fn two_hundred_random_inputs_reconstruct() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let names = ["x", "y", "z"];
    for case in 0..200 {
        let arity = 1 + case % 3;
        let vars = Vars::new(&names[..arity]);
        let g = random_g(&mut rng, &vars);
        for r in 0..=arity {
            let gs = TruncSeries::new(&g, N);
            let res = adic_decompose(&gs, r, N).unwrap();
            let mut input = gs.clone();
            for i in 0..r {
                let x = TruncSeries::var_at(&vars, i, N);
                input = &input + &(&x * &x);
            }
            let diff = &res.reconstruct() - &input;
            assert!(diff.is_zero(), "case {case}, r {r}: residual {diff:?}");
            for a in &res.a {
                assert!(a.body().order().is_none_or(|d| d >= 2));
            }
            for i in 0..r {
                assert!(!res.b.body().uses_var(i));
            }
        }
    }
}
