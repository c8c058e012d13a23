use proptest::prelude::*;
use trivec9::trivector::{self, inf_action, rank, wedge_action, Trivector};
use trivec9::{parse_scalar, parse_trivector, CycScalar, Mat};

fn scalar() -> impl Strategy<Value = CycScalar> {
    (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6, 1i64..=5).prop_map(|(a, b, c, d, den)| {
        let parts = [
            CycScalar::from_frac(a, den),
            &CycScalar::from_i64(b) * &CycScalar::sqrt3(),
            &CycScalar::from_i64(c) * &CycScalar::i(),
            &(&CycScalar::from_i64(d) * &CycScalar::i()) * &CycScalar::sqrt3(),
        ];
        parts.iter().fold(CycScalar::zero(), |acc, p| &acc + p)
    })
}

fn rational_trivector() -> impl Strategy<Value = Trivector> {
    prop::collection::vec((0usize..84, -3i64..=3), 1..6).prop_map(|terms| {
        let tr = trivector::triples();
        terms.into_iter().fold(Trivector::zero(), |acc, (k, c)| {
            let [a, b, d] = tr[k];
            acc.add(&Trivector::basis(a, b, d).scale(&CycScalar::from_i64(c)))
        })
    })
}

fn unimodular() -> impl Strategy<Value = Mat<CycScalar>> {
    // product of elementary matrices
    prop::collection::vec((0usize..9, 0usize..9, -2i64..=2), 1..12).prop_map(|ops| {
        let mut g: Mat<CycScalar> = Mat::identity(9);
        for (i, j, c) in ops {
            if i == j || c == 0 {
                continue;
            }
            let mut e: Mat<CycScalar> = Mat::identity(9);
            e.set(i, j, CycScalar::from_i64(c));
            g = g.mul(&e);
        }
        g
    })
}

#[test]
fn field_constants() {
    let i = CycScalar::i();
    assert_eq!(&i * &i, CycScalar::from_i64(-1));
    let z = CycScalar::zeta3();
    assert_eq!(&(&z * &z) * &z, CycScalar::one());
    assert_ne!(z, CycScalar::one());
    assert_eq!(z.conj(), &z * &z);
    assert_eq!(CycScalar::sqrt3().conj(), CycScalar::sqrt3());
    assert_eq!(parse_scalar("(-1+i*r3)/2").unwrap(), z);
    assert_eq!(parse_scalar("3*i").unwrap(), &CycScalar::from_i64(3) * &i);
}

#[test]
fn table_scalars_are_real() {
    for f in trivec9::catalog::families() {
        for l in f.sample_points(1) {
            if l.iter().all(|x| x.is_real()) {
                assert!(f.element(&l).unwrap().is_real(), "{}", f.tag);
            }
        }
    }
}

#[test]
fn trivector_examples() {
    let p1 = parse_trivector("e123+e456+e789").unwrap();
    assert_eq!(p1, trivec9::cartan::p_basis()[0]);
    assert_eq!(parse_trivector("e213").unwrap(), Trivector::basis(1, 2, 3).scale(&CycScalar::from_i64(-1)));
    assert_eq!(rank(&Trivector::basis(1, 2, 3)), 3);
    assert_eq!(rank(&Trivector::zero()), 0);
    assert_eq!(rank(&p1), 9);
    let zeta = Mat::from_fn(9, 9, |r, c| if r == c { CycScalar::zeta3() } else { CycScalar::zero() });
    assert_eq!(wedge_action(&zeta, &p1).unwrap(), p1);
    let id: Mat<CycScalar> = Mat::identity(9);
    assert_eq!(inf_action(&id, &p1), p1.scale(&CycScalar::from_i64(3)));
}

#[test]
fn g3_maps_q_to_pxy() {
    let ex = trivec9::catalog::examples();
    let g3 = ex.matrix("g3");
    let (x, y) = (CycScalar::from_i64(2), CycScalar::from_i64(5));
    let yi = &y * &CycScalar::i();
    let p = trivec9::cartan::p_basis();
    let q = p[0].scale(&(&x + &yi)).add(&p[1].scale(&(&x - &yi)));
    let pxy = ex.trivector("pxy_x").scale(&x).add(&ex.trivector("pxy_y").scale(&y));
    assert_eq!(wedge_action(g3, &q).unwrap(), pxy);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        let c = a.display_coords();
        let fixed = c[2].to_string() == "0" && c[3].to_string() == "0";
        prop_assert_eq!(a.is_real(), fixed);
    }

    #[test]
    fn scalar_display_roundtrip(a in scalar()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn trivector_display_roundtrip(t in rational_trivector()) {
        prop_assert_eq!(parse_trivector(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn wedge_action_composes(g in unimodular(), h in unimodular(), t in rational_trivector()) {
        let lhs = wedge_action(&g.mul(&h), &t).unwrap();
        let rhs = wedge_action(&g, &wedge_action(&h, &t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_is_invariant(g in unimodular(), t in rational_trivector()) {
        prop_assert_eq!(rank(&wedge_action(&g, &t).unwrap()), rank(&t));
    }

    #[test]
    fn inf_action_exponentiates(i in 0usize..9, j in 0usize..9, c in -3i64..=3, t in rational_trivector()) {
        prop_assume!(i != j);
        // X = c E_ij is nilpotent with X^2 = 0, so exp X = 1 + X
        let x = Mat::from_fn(9, 9, |r, s| if r == i && s == j { CycScalar::from_i64(c) } else { CycScalar::zero() });
        let g = Mat::identity(9).add(&x);
        let mut sum = t.clone();
        let mut term = t.clone();
        let mut fact = 1i64;
        for m in 1..=3 {
            term = inf_action(&x, &term);
            fact *= m;
            sum = sum.add(&term.scale(&CycScalar::from_frac(1, fact)));
        }
        prop_assert_eq!(wedge_action(&g, &t).unwrap(), sum);
    }
}
