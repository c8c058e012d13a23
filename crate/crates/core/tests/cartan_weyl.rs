use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trivec9::cartan::{self, canonical_family, cartan, cvec_from_ints, m4_apply, same_real_orbit, to_m4, weyl_group, CVec};
use trivec9::catalog::{family, family_conditions, FamilyTag};
use trivec9::e8::algebra;
use trivec9::{CycScalar, Mat};

fn ints(v: &[i64]) -> Vec<CycScalar> {
    v.iter().map(|&x| CycScalar::from_i64(x)).collect()
}

fn fixed_space_dim(m: &Mat<CycScalar>) -> usize {
    4 - m.sub(&Mat::identity(4)).rank()
}

#[test]
fn cartan_subspace() {
    let d = cartan();
    let alg = algebra();
    for a in &d.elements {
        for b in &d.elements {
            assert!(alg.bracket(a, b).is_zero());
        }
    }
    assert_eq!(d.cartan_subalgebra.len(), 8);
    assert_eq!(d.restricted_roots.len(), 40);
    assert_eq!(d.root_functionals.len(), 240);
    assert_eq!(d.hermitian_c.rank(), 4);
}

#[test]
fn reflections() {
    let d = cartan();
    let h = &d.hermitian_c;
    for r in d.reflections() {
        let m = &r.matrix;
        assert_eq!(m.pow(3), Mat::identity(4));
        assert_ne!(*m, Mat::identity(4));
        assert_eq!(fixed_space_dim(m), 3);
        let adj = m.map(|x| x.conj());
        let mut mt = adj.clone();
        for i in 0..4 {
            for j in 0..4 {
                mt.set(i, j, adj.get(j, i).clone());
            }
        }
        assert_eq!(mt.mul(h).mul(m), *h);
        // w(x) = x - alpha(x) p_alpha
        let x: CVec = cvec_from_ints([1, -2, 5, 3]);
        let ax = cartan::eval(&r.alpha, &x);
        let wx = m4_apply(&to_m4(m), &x);
        for k in 0..4 {
            assert_eq!(wx[k], &x[k] - &(&ax * &r.p_alpha[k]));
        }
    }
}

#[test]
fn little_weyl_group() {
    let w = weyl_group();
    assert_eq!(w.order(), 155_520);
    assert_eq!(155_520, 2usize.pow(7) * 3usize.pow(5) * 5);
    let class: HashSet<u32> = w.conjugacy_class(w.generator_index(0)).into_iter().collect();
    for r in 0..w.generators.len() {
        assert!(class.contains(&w.generator_index(r)));
    }
    assert!(w.four_generators().is_some());
}

#[test]
fn stabilizers_and_transport() {
    let w = weyl_group();
    let generic = cvec_from_ints([1, 3, 7, 19]);
    assert_eq!(w.stabilizer(&generic).order(), 1);
    let p1 = cvec_from_ints([1, 0, 0, 0]);
    let s = w.stabilizer(&p1);
    // the common fixed space of W_p1 is the line through p1
    let mut stacked: Vec<Vec<CycScalar>> = Vec::new();
    for &g in &s.elements {
        let m = cartan::from_m4(w.element(g)).sub(&Mat::identity(4));
        for r in 0..4 {
            stacked.push(m.row(r).to_vec());
        }
    }
    assert_eq!(4 - Mat::from_rows(stacked).rank(), 1);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let p = cvec_from_ints([1, 2, 0, 0]);
    let wp = w.stabilizer(&p);
    for _ in 0..5 {
        let v = rng.gen_range(0..w.order() as u32);
        let vp = m4_apply(w.element(v), &p);
        let mut conj: Vec<u32> = wp.elements.iter().map(|&g| w.mul(w.mul(v, g), w.inverse(v))).collect();
        conj.sort_unstable();
        assert_eq!(w.stabilizer(&vp).elements, conj);
    }
}

#[test]
fn parameter_group_of_f1_is_the_real_part_of_w() {
    let w = weyl_group();
    let g = family(FamilyTag::new(1, 1)).unwrap().group();
    assert_eq!(g.len(), 48);
    assert!(g.iter().all(|m| w.contains(m)));
    assert_eq!(w.real_elements().len(), 48);
}

#[test]
fn canonical_sets() {
    // (1,2,3,5) passes the conditions as printed but lies on a reflection hyperplane
    let f1 = family(FamilyTag::new(1, 1)).unwrap();
    assert!(f1.admissible_as_stated(&ints(&[1, 2, 3, 5])).unwrap());
    assert!(!f1.admissible(&ints(&[1, 2, 3, 5])).unwrap());
    assert!(!cartan().vanishing_lines(&cvec_from_ints([1, 2, 3, 5])).is_empty());
    assert_eq!(canonical_family(&cvec_from_ints([1, 2, 3, 5])), 2);
    assert_eq!(canonical_family(&cvec_from_ints([1, 3, 7, 19])), 1);
    for l in [1, -2, 7] {
        assert_eq!(canonical_family(&cvec_from_ints([0, 0, l, -l])), 5);
    }
    assert_eq!(canonical_family(&cvec_from_ints([0, 0, 0, 0])), 7);
    for (k, q) in cartan::reference_points().iter().enumerate() {
        assert_eq!(canonical_family(q), k + 1);
    }
}

#[test]
fn canonical_families_land_in_their_set() {
    for k in 1..=6u8 {
        let f = family(FamilyTag::new(k, 1)).unwrap();
        for l in f.sample_points(3) {
            let p = f.cartan_point(&l).unwrap().unwrap();
            assert_eq!(canonical_family(&p), k as usize, "p^{{{k},1}} at {}", trivec9::catalog::format_point(&l));
        }
    }
}

#[test]
fn conditions_and_orbits() {
    assert!(!family_conditions(3, &ints(&[1, 1])).unwrap());
    assert!(family_conditions(3, &ints(&[1, 2])).unwrap());
    assert!(family_conditions(7, &[]).unwrap());
    assert!(same_real_orbit(FamilyTag::new(3, 1), &ints(&[1, 2]), &ints(&[2, 1])).unwrap());
    assert!(same_real_orbit(FamilyTag::new(5, 1), &ints(&[2]), &ints(&[-2])).unwrap());
    assert!(!same_real_orbit(FamilyTag::new(5, 1), &ints(&[2]), &ints(&[3])).unwrap());
    assert!(family_conditions(3, &ints(&[1])).is_err());
}

#[test]
fn centralizer_of_c_has_order_3_to_the_5() {
    let z = cartan::cartan_centralizer();
    assert_eq!(z.len(), 243);
    assert_eq!(cartan::cartan_stabilizer_dim(), 0);
}
