use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use trivec9::e8::{algebra, elementary, xr, AlgElement, DIM, RANK};
use trivec9::trivector::{inf_action, triples, wedge_action, Trivector};
use trivec9::{CycScalar, Mat};

fn rand_scalar(rng: &mut ChaCha8Rng) -> CycScalar {
    let n = rng.gen_range(-5i64..=5);
    let d = rng.gen_range(1i64..=3);
    let q = CycScalar::from_frac(n, d);
    if rng.gen_bool(0.3) {
        &q * &CycScalar::zeta3()
    } else {
        q
    }
}

fn rand_sl9(rng: &mut ChaCha8Rng) -> Mat<CycScalar> {
    let mut m = Mat::zeros(9, 9);
    for i in 0..9 {
        for j in 0..9 {
            if rng.gen_bool(0.3) {
                m.set(i, j, rand_scalar(rng));
            }
        }
    }
    let tr = m.trace();
    let v = m.get(8, 8) - &tr;
    m.set(8, 8, v);
    m
}

#[test]
fn jacobi_on_all_basis_triples() {
    let alg = algebra();
    let bad: usize = (0..DIM)
        .into_par_iter()
        .map(|i| {
            let mut n = 0;
            for j in i + 1..DIM {
                for k in j + 1..DIM {
                    if alg.jacobi_violation(i, j, k) {
                        n += 1;
                    }
                }
            }
            n
        })
        .sum();
    assert_eq!(bad, 0);
}

#[test]
fn antisymmetry_and_grading() {
    let alg = algebra();
    for i in 0..DIM {
        for j in 0..DIM {
            let a = alg.bracket_basis(i, j);
            let b = alg.bracket_basis(j, i);
            let neg: Vec<_> = b.iter().map(|(k, c)| (*k, -c)).collect();
            assert_eq!(a, &neg);
            let d = (alg.basis_degree(i) + alg.basis_degree(j) + 3) % 3;
            for (k, _) in a {
                assert_eq!((alg.basis_degree(*k as usize) + 3) % 3, d);
            }
        }
    }
}

#[test]
fn killing_invariant_and_graded() {
    let alg = algebra();
    let bad: usize = (0..DIM)
        .into_par_iter()
        .map(|i| {
            let mut n = 0;
            for j in 0..DIM {
                for k in 0..DIM {
                    let lhs: i64 = alg.bracket_basis(i, j).iter().map(|(m, c)| *c as i64 * alg.killing_basis(*m as usize, k)).sum();
                    let rhs: i64 = alg.bracket_basis(j, k).iter().map(|(m, c)| *c as i64 * alg.killing_basis(i, *m as usize)).sum();
                    if lhs != rhs {
                        n += 1;
                    }
                }
            }
            n
        })
        .sum();
    assert_eq!(bad, 0);
    for i in 0..DIM {
        for &(j, _) in alg.killing_row_sparse(i) {
            let s = alg.basis_degree(i) + alg.basis_degree(j as usize);
            assert_eq!(s, 0);
        }
    }
    let gram = Mat::from_fn(DIM, DIM, |i, j| CycScalar::from_i64(alg.killing_basis(i, j)));
    assert_eq!(gram.rank(), DIM);
}

#[test]
fn killing_is_trace_form() {
    let alg = algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let i = rng.gen_range(0..DIM);
        let k = alg.killing_row_sparse(i)[0].0 as usize;
        for j in [k, rng.gen_range(0..DIM)] {
            let t = alg.ad_matrix(&AlgElement::basis(i)).mul(&alg.ad_matrix(&AlgElement::basis(j))).trace();
            assert_eq!(t, CycScalar::from_i64(alg.killing_basis(i, j)));
        }
    }
}

#[test]
fn psi_is_a_homomorphism() {
    let alg = algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let x = rand_sl9(&mut rng);
        let y = rand_sl9(&mut rng);
        let xy = x.mul(&y).sub(&y.mul(&x));
        let lhs = alg.psi(&xy).unwrap();
        let rhs = alg.bracket(&alg.psi(&x).unwrap(), &alg.psi(&y).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(alg.psi_inv(&alg.psi(&x).unwrap()).unwrap(), x);
    }
}

#[test]
fn g1_iso_equivariance_on_generators() {
    let alg = algebra();
    let mut gens = Vec::new();
    for p in 1..=9 {
        for q in 1..=9 {
            if p != q {
                gens.push(elementary(p, q));
            }
        }
    }
    for k in 1..9 {
        let mut d = Mat::zeros(9, 9);
        d.set(k - 1, k - 1, CycScalar::from_i64(1));
        d.set(k, k, CycScalar::from_i64(-1));
        gens.push(d);
    }
    for g in &gens {
        let pg = alg.psi(g).unwrap();
        for t in triples() {
            let e = Trivector::basis(t[0], t[1], t[2]);
            let lhs = alg.g1_iso(&inf_action(g, &e));
            let rhs = alg.bracket(&pg, &alg.g1_iso(&e));
            assert_eq!(lhs, rhs);
            assert_eq!(alg.g1_iso_inv(&alg.g1_iso(&e)).unwrap(), e);
        }
    }
}

#[test]
fn inf_action_matches_bracket_on_random_pairs() {
    let alg = algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let x = rand_sl9(&mut rng);
        let mut t = Trivector::zero();
        for c in t.coeffs.iter_mut() {
            if rng.gen_bool(0.2) {
                *c = rand_scalar(&mut rng);
            }
        }
        let via_bracket = alg.g1_iso_inv(&alg.bracket(&alg.psi(&x).unwrap(), &alg.g1_iso(&t))).unwrap();
        assert_eq!(inf_action(&x, &t), via_bracket);
    }
}

#[test]
fn scalar_cube_roots_act_trivially() {
    let z = Mat::identity(9).scale(&CycScalar::zeta3());
    for t in triples() {
        let e = Trivector::basis(t[0], t[1], t[2]);
        assert_eq!(wedge_action(&z, &e).unwrap(), e);
    }
    let i4 = Mat::identity(9).scale(&CycScalar::i());
    let e = Trivector::basis(1, 2, 3);
    assert_ne!(wedge_action(&i4, &e).unwrap(), e);
}

#[test]
fn degree_projections_sum() {
    let alg = algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = AlgElement::from_coords((0..DIM).map(|_| rand_scalar(&mut rng)).collect());
    let s = x.component(alg, -1).add(&x.component(alg, 0)).add(&x.component(alg, 1));
    assert_eq!(s, x);
    assert_eq!(alg.bracket(&x, &x), AlgElement::zero());
    assert_eq!(AlgElement::basis(xr(0)).degree(alg), Some(alg.basis_degree(RANK)));
}
