use proptest::prelude::*;
use trivec9::catalog::{builtin_catalog, family, find_record, FamilyTag};
use trivec9::classify::{self, Kind};
use trivec9::e8::{algebra, AlgElement};
use trivec9::trivector::{self, wedge_action, Trivector};
use trivec9::{parse_trivector, CycScalar, Mat};

fn t(s: &str) -> Trivector {
    parse_trivector(s).unwrap()
}

fn g1(s: &str) -> AlgElement {
    algebra().g1_iso(&t(s))
}

fn ints(v: &[i64]) -> Vec<CycScalar> {
    v.iter().map(|&x| CycScalar::from_i64(x)).collect()
}

fn jordan_contracts(x: &AlgElement) -> Result<(), String> {
    let alg = algebra();
    let (s, n) = classify::jordan_decompose(x).map_err(|e| e.to_string())?;
    if alg.bracket(&s, &n) != AlgElement::zero() {
        return Err("parts do not commute".into());
    }
    if !classify::is_semisimple(&s) || !classify::is_nilpotent(&n) {
        return Err("wrong part types".into());
    }
    if alg.g1_iso_inv(&s).is_err() || alg.g1_iso_inv(&n).is_err() {
        return Err("parts leave g1".into());
    }
    if s.add(&n) != *x {
        return Err("parts do not sum to x".into());
    }
    Ok(())
}

#[test]
fn element_types() {
    assert!(classify::is_nilpotent(&g1("e678")));
    assert!(classify::is_semisimple(&g1("e123+e456+e789")));
    let p51 = family(FamilyTag::new(5, 1)).unwrap().element(&ints(&[1])).unwrap();
    let x = algebra().g1_iso(&p51.add(&t("e123")));
    assert!(!classify::is_nilpotent(&x) && !classify::is_semisimple(&x));
}

#[test]
fn jordan_examples() {
    let p = g1("e123+e456+e789");
    assert_eq!(classify::jordan_decompose(&p).unwrap(), (p.clone(), AlgElement::zero()));
    let n = g1("e678");
    assert_eq!(classify::jordan_decompose(&n).unwrap(), (AlgElement::zero(), n.clone()));
    let p61 = algebra().g1_iso(&family(FamilyTag::new(6, 1)).unwrap().element(&ints(&[1])).unwrap());
    let e = g1("e147");
    assert_eq!(classify::jordan_decompose(&p61.add(&e)).unwrap(), (p61, e));
}

#[test]
fn sl2_examples() {
    let alg = algebra();
    for s in ["e678", "e123+e456"] {
        let tr = classify::sl2_triple(&g1(s)).unwrap();
        assert!(tr.check(alg), "{s}");
    }
    let h = classify::sl2_triple(&g1("e678")).unwrap().h;
    let hm = alg.psi_inv(&h).unwrap();
    let diag: Vec<String> = (0..9).map(|i| hm.get(i, i).to_string()).collect();
    let third = ["-1/3", "-1/3", "-1/3", "-1/3", "-1/3", "2/3", "2/3", "2/3", "-1/3"];
    assert_eq!(diag, third.map(String::from).to_vec());
    assert_eq!(classify::characteristic(&h).unwrap(), [0, 0, 1, 0, 0, 0, 0, 0]);
    assert_eq!(classify::characteristic(&AlgElement::zero()).unwrap(), [0; 8]);
}

#[test]
fn characteristic_is_an_orbit_invariant() {
    let mut g: Mat<CycScalar> = Mat::identity(9);
    g.set(0, 5, CycScalar::from_i64(2));
    g.set(7, 3, CycScalar::from_i64(-1));
    g.set(4, 8, CycScalar::from_frac(1, 2));
    for s in ["e123+e456", "e136+e147-e245+e379+e569+e678"] {
        let a = g1(s);
        let b = algebra().g1_iso(&wedge_action(&g, &t(s)).unwrap());
        let ca = classify::characteristic(&classify::sl2_triple(&a).unwrap().h).unwrap();
        let cb = classify::characteristic(&classify::sl2_triple(&b).unwrap().h).unwrap();
        assert_eq!(ca, cb, "{s}");
        assert_eq!(classify::orbit_dimension(&a), classify::orbit_dimension(&b));
    }
}

#[test]
fn stabilizer_examples() {
    let alg = algebra();
    let p11 = family(FamilyTag::new(1, 1)).unwrap();
    let l = ints(&[1, 3, 7, 19]);
    assert!(p11.admissible(&l).unwrap());
    let p = alg.g1_iso(&p11.element(&l).unwrap());
    // z_g(p) is the Cartan subalgebra c, and c meets g0 trivially
    assert_eq!(classify::centralizer(&p).len(), 8);
    assert!(classify::stabilizer_algebra(std::slice::from_ref(&p)).is_empty());

    let recs = builtin_catalog();
    let row = |k, j, n| find_record(&recs, FamilyTag::new(k, j), n)[0].clone();
    let r = row(2, 1, 3);
    assert_eq!(r.declared.centralizer.as_ref().unwrap().dim(), 2);
    let p21 = alg.g1_iso(&family(FamilyTag::new(2, 1)).unwrap().element(&ints(&[1, 2, 5])).unwrap());
    assert_eq!(classify::stabilizer_algebra(&[p21]).len(), 2);

    let p41 = alg.g1_iso(&family(FamilyTag::new(4, 1)).unwrap().element(&ints(&[1, 2])).unwrap());
    let z = classify::stabilizer_algebra(&[p41]);
    assert_eq!(z.len(), 8);
    assert_eq!(classify::killing_signature(&z), Some((5, 3, 0)));
    assert_eq!(row(4, 1, 6).declared.centralizer.as_ref().unwrap().to_string(), "sl3R");
}

#[test]
fn orbit_dimensions() {
    assert_eq!(classify::orbit_dimension(&AlgElement::zero()), 0);
    let e = g1("e123");
    assert_eq!(classify::orbit_dimension(&e), 80 - classify::stabilizer_algebra(std::slice::from_ref(&e)).len());
    // decomposable trivectors form the cone over Gr(3,9): dimension 19
    assert_eq!(classify::orbit_dimension(&e), 19);
}

#[test]
fn classify_examples() {
    let r = classify::classify(&t("e123+e456+e789")).unwrap();
    assert_eq!((r.kind, r.rank), (Kind::Semisimple, 9));
    let r = classify::classify(&t("e123")).unwrap();
    assert_eq!((r.kind, r.rank), (Kind::Nilpotent, 3));
    let p51 = family(FamilyTag::new(5, 1)).unwrap().element(&ints(&[1])).unwrap();
    let e = t("e123+e456");
    let r = classify::classify(&p51.add(&e)).unwrap();
    assert_eq!(r.kind, Kind::Mixed);
    assert_eq!((r.semisimple_part, r.nilpotent_part), (p51, e));
}

#[test]
fn ad_cube_charpoly_is_conjugation_invariant() {
    let g3 = trivec9::catalog::examples().matrix("g3");
    let p = trivec9::cartan::p_basis();
    let q = p[0].scale(&CycScalar::from_i64(2)).add(&p[1].scale(&CycScalar::from_i64(3)));
    let a = classify::ad_cube_charpoly(&algebra().g1_iso(&q)).unwrap();
    let b = classify::ad_cube_charpoly(&algebra().g1_iso(&trivector::wedge_action_unchecked(g3, &q))).unwrap();
    assert_eq!(a, b);
}

fn sparse_trivector() -> impl Strategy<Value = Trivector> {
    prop::collection::vec((0usize..84, -2i64..=2), 1..5).prop_map(|terms| {
        let tr = trivector::triples();
        terms.into_iter().fold(Trivector::zero(), |acc, (k, c)| {
            let [a, b, d] = tr[k];
            acc.add(&Trivector::basis(a, b, d).scale(&CycScalar::from_i64(c)))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn jordan_contracts_hold(x in sparse_trivector(), with_p in any::<bool>(), l in 1i64..4) {
        let mut x = x;
        if with_p {
            x = x.add(&trivec9::cartan::p_basis()[0].scale(&CycScalar::from_i64(l)));
        }
        prop_assert_eq!(jordan_contracts(&algebra().g1_iso(&x)), Ok(()));
    }

    #[test]
    fn sl2_relations_on_table_nilpotents(idx in 0usize..200) {
        let recs = builtin_catalog();
        let nil: Vec<_> = recs.iter().filter(|r| !r.representative.is_zero()).collect();
        let r = nil[idx % nil.len()];
        let e = algebra().g1_iso(&r.representative);
        let tr = classify::sl2_triple(&e).unwrap();
        prop_assert!(tr.check(algebra()));
    }
}
