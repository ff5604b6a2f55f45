mod common;

use common::brute_hom_dim;
use exalg::constructions::{
    ar_sequence, build_p_inductive, free_module, kronecker_f, linear_cx2_module, m_xi, radical_square_quotient, simple,
    unit_form,
};
use exalg::gmod::{quotient_module, submodule_generated};
use exalg::homalg::{hom_basis, hom_space};
use exalg::homology::{cosyzygy, syzygy};
use exalg::{Fp, GradedModule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Free module on random generators modulo a few random elements.
fn random_quotient(f: Fp, nv: usize, rng: &mut ChaCha8Rng) -> GradedModule {
    let gens: Vec<i32> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..=1)).collect();
    let free = free_module(f, nv, &gens);
    let rels: Vec<(i32, Vec<u32>)> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let d = rng.gen_range(1..=2);
            let v = (0..free.dim(d)).map(|_| if rng.gen_bool(0.5) { rng.gen_range(0..f.p()) } else { 0 }).collect();
            (d, v)
        })
        .collect();
    quotient_module(&free, &submodule_generated(&free, &rels)).0
}

fn fixtures(f: Fp, nv: usize) -> Vec<GradedModule> {
    let mxi = m_xi(f, nv, &unit_form(nv, 0)).unwrap();
    let mut out = vec![
        simple(f, nv),
        simple(f, nv).shift(-1),
        mxi.clone(),
        mxi.shift(1),
        syzygy(&simple(f, nv), 1),
        cosyzygy(&simple(f, nv), 1).shift(-1),
        radical_square_quotient(f, nv),
        free_module(f, nv, &[0]),
        build_p_inductive(f, nv, 2, 0).unwrap(),
        ar_sequence(f, nv, &unit_form(nv, 1)).unwrap().middle,
    ];
    if nv == 3 {
        out.push(linear_cx2_module(f));
    }
    out
}

#[test]
fn hom_matches_brute_force_on_fixtures() {
    let f = Fp::default_field();
    for nv in [2, 3] {
        let mods = fixtures(f, nv);
        for a in &mods {
            for b in &mods {
                assert_eq!(
                    hom_basis(a, b).unwrap().dim(),
                    brute_hom_dim(a, b),
                    "{:?} {:?}",
                    a.dims_map(),
                    b.dims_map()
                );
            }
        }
    }
}

#[test]
fn hom_matches_brute_force_on_random_quotients() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [7, 32003] {
        let f = Fp::new(p).unwrap();
        for _ in 0..40 {
            let nv = rng.gen_range(2..=3);
            let a = random_quotient(f, nv, &mut rng);
            let b = random_quotient(f, nv, &mut rng).shift(rng.gen_range(-1..=1));
            let h = hom_space(&a, &b).unwrap();
            assert_eq!(h.dim(), brute_hom_dim(&a, &b));
            for g in h.basis() {
                assert!(g.is_homomorphism(&a, &b));
            }
        }
    }
}

#[test]
fn kronecker_homs() {
    let f = Fp::default_field();
    for i in -3..=3 {
        for j in -3..=3 {
            let (a, b) = (kronecker_f(f, i, -i), kronecker_f(f, j, -j));
            assert_eq!(hom_basis(&a, &b).unwrap().dim(), brute_hom_dim(&a, &b), "F_{i} F_{j}");
        }
    }
}
