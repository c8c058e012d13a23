use proptest::prelude::*;
use trivec9::catalog::*;
use trivec9::CycScalar;

fn record<'a>(recs: &'a [OrbitRecord], id: &str) -> &'a OrbitRecord {
    recs.iter().find(|r| r.id() == id).unwrap_or_else(|| panic!("no record {id}"))
}

fn ints(v: &[i64]) -> Vec<CycScalar> {
    v.iter().map(|&x| CycScalar::from_i64(x)).collect()
}

#[test]
fn builtin_rows() {
    let recs = builtin_catalog();
    let r = &find_record(&recs, FamilyTag::new(2, 1), 1)[0];
    assert_eq!(r.representative.to_string(), "e168 + e249");
    assert_eq!(r.declared.centralizer.as_ref().unwrap().dim(), 0);
    let r = &find_record(&recs, FamilyTag::new(6, 2), 25)[0];
    assert!(r.representative.is_zero());
    let c = r.declared.centralizer.as_ref().unwrap();
    assert_eq!(*c, "sl3R+sl3C".parse::<CentralizerType>().unwrap());
    assert_eq!(c.dim(), 24);
    // every table row, plus the semisimple orbit and the nilpotent sample
    assert_eq!(recs.iter().filter(|r| matches!(r.family, RecordFamily::Table(_))).count(), 169);
}

#[test]
fn loading() {
    assert!(parse_catalog("").unwrap().is_empty());
    assert!(parse_catalog("# only a comment\n\n").unwrap().is_empty());
    let dup = "orbit 3_1 1: e123; centralizer=t\norbit 3_1 1: e456; centralizer=t\n";
    assert!(matches!(parse_catalog(dup), Err(CatalogError::Duplicate { line: 2, .. })));
    let variants = "orbit 3_1 1 a: e123\norbit 3_1 1 b: e456\n";
    assert_eq!(parse_catalog(variants).unwrap().len(), 2);
    assert!(matches!(parse_catalog("orbit 3_1 1: e12x\n"), Err(CatalogError::Parse { line: 1, .. })));
    assert!(matches!(parse_catalog("orbit 3_1 1: e123; centralizer=9*blah\n"), Err(CatalogError::Parse { line: 1, .. })));
    let nil = parse_catalog("orbit nil 1: e123; dim=19; rank=3; char=0,0,1,0,0,0,0,0\n").unwrap();
    assert_eq!(nil[0].declared.dim, Some(19));
    assert!(verify_record(&nil[0], &[]).passed());
}

#[test]
fn record_examples_verify() {
    let recs = builtin_catalog();
    for id in ["3_1 9", "2_2 2a", "2_2 2b", "6_2 22b"] {
        let r = record(&recs, id);
        let rep = verify_record_sampled(r, 1);
        assert!(rep.passed(), "{id}: {:?}", rep.failures().collect::<Vec<_>>());
    }
    assert_eq!(record(&recs, "3_1 9").declared.centralizer.as_ref().unwrap().to_string(), "4*t");
    assert_eq!(record(&recs, "2_2 2a").declared.centralizer.as_ref().unwrap().to_string(), "u");
}

#[test]
fn corrupted_record_is_the_only_failure() {
    let recs = builtin_catalog();
    let mut subset: Vec<OrbitRecord> =
        recs.iter().filter(|r| matches!(r.family, RecordFamily::Table(t) if t == FamilyTag::new(2, 1))).cloned().collect();
    let mut bad = record(&recs, "3_3 1").clone();
    let good = bad.clone();
    // flip the sign of one term of the nilpotent part
    let (k, c) = bad.representative.support().next().map(|(k, c)| (k, c.clone())).unwrap();
    bad.representative.coeffs[k] = -c;
    bad.number = 99;
    subset.push(good);
    subset.push(bad);
    let reports = verify_records(&subset, 1, true);
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.id.as_str()).collect();
    assert_eq!(failed, ["3_3 99"]);
}

#[test]
fn worked_examples_replay() {
    let checks = replay_examples();
    assert!(checks.len() >= 20);
    for c in &checks {
        assert!(c.ok, "{c}");
    }
}

#[test]
fn family_data() {
    for f in families() {
        for l in f.sample_points(3) {
            assert!(f.admissible(&l).unwrap(), "{} {}", f.tag, format_point(&l));
        }
        assert!(group_invariance(f, &f.sample_points(1)[0]).unwrap(), "{}", f.tag);
        for b in &f.bad {
            assert!(!f.admissible(b).unwrap(), "{} {}", f.tag, format_point(b));
        }
        assert_eq!(f.group().len(), f.order, "{}", f.tag);
    }
    let f = family(FamilyTag::new(3, 2)).unwrap();
    assert!(f.element(&ints(&[1])).is_err());
}

#[test]
fn noncanonical_charpolys() {
    for tag in [FamilyTag::new(3, 3), FamilyTag::new(6, 2)] {
        let f = family(tag).unwrap();
        for l in f.sample_points(1) {
            for c in charpoly_agreement(f, &l) {
                assert!(c.ok, "{c}");
            }
        }
    }
}

#[test]
fn expressions() {
    let e = Expr::parse("r3/3*(l1-l2)+i*l3^2").unwrap();
    assert_eq!(e.arity(), 3);
    let v = e.eval(&ints(&[4, 1, 2])).unwrap();
    assert_eq!(v, &CycScalar::sqrt3() + &(&CycScalar::from_i64(4) * &CycScalar::i()));
    assert!(Expr::parse("l1+").is_err());
    assert_eq!("p3_4".parse::<FamilyTag>().unwrap(), FamilyTag::new(3, 4));
    assert_eq!("6,2".parse::<FamilyTag>().unwrap(), FamilyTag::new(6, 2));
}

fn summand() -> impl Strategy<Value = Summand> {
    prop::sample::select(Summand::ALL.to_vec())
}

proptest! {
    #[test]
    fn centralizer_type_roundtrip(parts in prop::collection::vec((summand(), 1usize..4), 0..4)) {
        let text = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.iter().map(|(s, n)| format!("{n}*{}", s.name())).collect::<Vec<_>>().join("+")
        };
        let c: CentralizerType = text.parse().unwrap();
        let dim: usize = parts.iter().map(|(s, n)| s.dim() * n).sum();
        prop_assert_eq!(c.dim(), dim);
        let again: CentralizerType = c.to_string().parse().unwrap();
        prop_assert_eq!(again, c);
    }
}
