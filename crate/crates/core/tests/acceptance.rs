use std::collections::HashSet;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use trivec9::cartan::{self, canonical_family, cartan, weyl_group};
use trivec9::catalog::{self, families, family, family_conditions, FamilyTag};
use trivec9::classify;
use trivec9::e8::{algebra, elementary, AlgElement, DIM};
use trivec9::galois::{self, GammaGroup};
use trivec9::trivector::{self, inf_action, rank, triples, wedge_action, Trivector};
use trivec9::{CycScalar, Mat};

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: Vec<String>, summary: String) -> Outcome {
        if failures.is_empty() {
            Outcome { ok: true, detail: summary }
        } else {
            let shown: Vec<&str> = failures.iter().take(6).map(String::as_str).collect();
            Outcome { ok: false, detail: format!("{} failure(s): {}", failures.len(), shown.join("; ")) }
        }
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn structure() -> Outcome {
    let alg = algebra();
    let mut f = Vec::new();
    let count = |d: i8| (0..DIM).filter(|&i| alg.basis_degree(i) == d).count();
    check(&mut f, DIM == 248, "dim g");
    check(&mut f, (count(-1), count(0), count(1)) == (84, 80, 84), "graded dimensions");
    let jacobi: usize = (0..DIM)
        .into_par_iter()
        .map(|i| {
            let mut n = 0;
            for j in i + 1..DIM {
                for k in j + 1..DIM {
                    n += usize::from(alg.jacobi_violation(i, j, k));
                }
            }
            n
        })
        .sum();
    check(&mut f, jacobi == 0, format!("{jacobi} Jacobi violations"));
    let mut grading = 0;
    for i in 0..DIM {
        for j in 0..DIM {
            let d = (alg.basis_degree(i) + alg.basis_degree(j) + 3) % 3;
            grading += alg.bracket_basis(i, j).iter().filter(|(k, _)| (alg.basis_degree(*k as usize) + 3) % 3 != d).count();
        }
    }
    check(&mut f, grading == 0, "grading");
    let kappa: usize = (0..DIM)
        .into_par_iter()
        .map(|i| {
            let mut n = 0;
            for j in 0..DIM {
                for k in 0..DIM {
                    let lhs: i64 = alg.bracket_basis(i, j).iter().map(|(m, c)| *c as i64 * alg.killing_basis(*m as usize, k)).sum();
                    let rhs: i64 = alg.bracket_basis(j, k).iter().map(|(m, c)| *c as i64 * alg.killing_basis(i, *m as usize)).sum();
                    n += usize::from(lhs != rhs);
                }
            }
            n
        })
        .sum();
    check(&mut f, kappa == 0, format!("{kappa} kappa-invariance violations"));
    Outcome::new(f, "dims 248 = 84+80+84, Jacobi on all 2.5M triples, grading, kappa-invariance".into())
}

fn psi_and_g1() -> Outcome {
    let alg = algebra();
    let mut f = Vec::new();
    for i in 1..9 {
        let x = alg.psi(&elementary(i, i + 1)).unwrap();
        let terms: Vec<_> = x.support().collect();
        let single = terms.len() == 1 && (terms[0].1.is_one() || (-terms[0].1).is_one());
        check(&mut f, single && x.degree(alg) == Some(0), format!("psi(E_{i},{}) is not a signed root vector", i + 1));
        let y = alg.psi(&elementary(i + 1, i)).unwrap();
        let mut h: Mat<CycScalar> = Mat::zeros(9, 9);
        h.set(i - 1, i - 1, CycScalar::one());
        h.set(i, i, -CycScalar::one());
        check(&mut f, alg.bracket(&x, &y) == alg.psi(&h).unwrap(), format!("[x_{i}, y_{i}] != h_{i}"));
    }
    let mut gens = Vec::new();
    for p in 1..=9 {
        for q in 1..=9 {
            if p != q {
                gens.push(elementary(p, q));
            }
        }
    }
    for k in 1..9 {
        let mut d: Mat<CycScalar> = Mat::zeros(9, 9);
        d.set(k - 1, k - 1, CycScalar::one());
        d.set(k, k, -CycScalar::one());
        gens.push(d);
    }
    let bad: usize = gens
        .par_iter()
        .map(|g| {
            let pg = alg.psi(g).unwrap();
            triples()
                .iter()
                .filter(|t| {
                    let e = Trivector::basis(t[0], t[1], t[2]);
                    alg.g1_iso(&inf_action(g, &e)) != alg.bracket(&pg, &alg.g1_iso(&e))
                })
                .count()
        })
        .sum();
    check(&mut f, bad == 0, format!("{bad} equivariance violations"));
    let z = Mat::identity(9).scale(&CycScalar::zeta3());
    let moved = triples().iter().filter(|t| {
        let e = Trivector::basis(t[0], t[1], t[2]);
        wedge_action(&z, &e).unwrap() != e
    });
    check(&mut f, moved.count() == 0, "mu3 acts nontrivially");
    Outcome::new(f, format!("8 generator images, {} x 84 equivariance pairs, mu3 trivial", gens.len()))
}

fn weyl_cache_path() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("weyl_tree.txt")
}

fn load_weyl_cache() -> &'static str {
    let tree: Option<Vec<(u32, u8)>> = std::fs::read_to_string(weyl_cache_path()).ok().and_then(|s| {
        s.lines()
            .map(|l| {
                let (a, b) = l.split_once(' ')?;
                Some((a.parse().ok()?, b.parse().ok()?))
            })
            .collect()
    });
    match tree {
        Some(t) if cartan::install_weyl_group_from_tree(&t) => "cached",
        _ => {
            let w = weyl_group();
            let text: String = w.tree().iter().map(|(a, b)| format!("{a} {b}\n")).collect();
            let _ = std::fs::write(weyl_cache_path(), text);
            "enumerated"
        }
    }
}

fn little_weyl_group() -> Outcome {
    let d = cartan();
    let mut f = Vec::new();
    check(&mut f, d.lines.len() == 40, format!("{} root lines", d.lines.len()));
    let refl = d.reflections();
    for (k, r) in refl.iter().enumerate() {
        let fixed = 4 - r.matrix.sub(&Mat::identity(4)).rank();
        check(&mut f, r.matrix.pow(3) == Mat::identity(4) && r.matrix != Mat::identity(4), format!("w_{k} order"));
        check(&mut f, fixed == 3, format!("w_{k} fixed space dim {fixed}"));
    }
    let source = load_weyl_cache();
    let w = weyl_group();
    check(&mut f, w.order() == 155_520, format!("|W| = {}", w.order()));
    let class: HashSet<u32> = w.conjugacy_class(w.generator_index(0)).into_iter().collect();
    let outside = (0..w.generators.len()).filter(|&r| !class.contains(&w.generator_index(r))).count();
    check(&mut f, outside == 0, format!("{outside} reflections outside the class of w_0"));
    let four = w.four_generators();
    check(&mut f, four.is_some(), "no generating 4-subset");
    Outcome::new(f, format!("40 lines, order-3 reflections, |W| = 155520 ({source}), one class, generated by {four:?}"))
}

fn inadmissible_points(k: u8) -> Vec<Vec<CycScalar>> {
    let fam = family(FamilyTag::new(k, 1)).unwrap();
    let mut out = fam.bad.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(77 + k as u64);
    for _ in 0..20_000 {
        if out.len() >= 3 {
            break;
        }
        let l: Vec<CycScalar> = (0..fam.params).map(|_| CycScalar::from_i64(rng.gen_range(-3..=3))).collect();
        if !fam.admissible(&l).unwrap() && !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

fn canonical_sets() -> Outcome {
    let mut f = Vec::new();
    let mut bad_counts = Vec::new();
    for k in 1..=6u8 {
        let fam = family(FamilyTag::new(k, 1)).unwrap();
        let good = fam.sample_points(3);
        check(&mut f, good.len() >= 3, format!("F_{k}: {} admissible points", good.len()));
        for l in &good {
            let p = fam.cartan_point(l).unwrap().unwrap();
            let ok = family_conditions(k as usize, l).unwrap() && canonical_family(&p) == k as usize;
            check(&mut f, ok, format!("F_{k} admissible {}", catalog::format_point(l)));
        }
        let bad = inadmissible_points(k);
        bad_counts.push(bad.len());
        check(&mut f, bad.len() >= 3, format!("F_{k}: only {} inadmissible point(s) exist", bad.len()));
        for l in &bad {
            let p = fam.cartan_point(l).unwrap().unwrap();
            let ok = !family_conditions(k as usize, l).unwrap() && canonical_family(&p) != k as usize;
            check(&mut f, ok, format!("F_{k} inadmissible {}", catalog::format_point(l)));
        }
    }
    for (k, q) in cartan::reference_points().iter().enumerate() {
        check(&mut f, canonical_family(q) == k + 1, format!("reference point of F_{}", k + 1));
    }
    check(&mut f, canonical_family(&cartan::cvec_from_ints([0, 0, 0, 0])) == 7, "p = 0");
    check(&mut f, family_conditions(7, &[]).unwrap(), "F_7 conditions");
    Outcome::new(f, format!("3 admissible and {bad_counts:?} inadmissible points per family, reference points, p = 0 -> F_7"))
}

fn gamma(name: &str) -> GammaGroup {
    let p = format!("{}/data/gamma/{name}.txt", env!("CARGO_MANIFEST_DIR"));
    GammaGroup::parse(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn galois_replays() -> Outcome {
    let mut f = Vec::new();
    let mut report = |what: &str, got: Result<usize, galois::GaloisError>, want: usize| match got {
        Ok(n) => check(&mut f, n == want, format!("{what}: {n} classes, expected {want}")),
        Err(e) => f.push(format!("{what}: {e}")),
    };
    report("H1{+-1}", galois::h1_finite(&gamma("pm1")).map(|h| h.len()), 2);
    report("H1 Gamma_3", galois::h1_finite(&gamma("gamma3")).map(|h| h.len()), 4);
    let t4 = gamma("t4");
    report("H1(T4, sigma_q)", galois::h1_torus(&t4.torus.as_ref().unwrap().involution).map(|h| h.len()), 1);
    report("H1 Z0 (orbit 47)", galois::h1_mixed(&gamma("orbit47")).map(|h| h.len()), 2);
    report("H1 of the 3^5 group", galois::h1_cartan_centralizer().map(|h| h.len()), 1);
    report("H1(T1, s -> 1/conj s)", galois::h1_mixed(&gamma("t1_mixed")).map(|h| h.len()), 2);
    let hw = galois::h1_weyl();
    let cocycles = hw.class_of.iter().flatten().count();
    report("H1 W", Ok(hw.classes.len()), 1);
    Outcome::new(f, format!("7 replays; H1 W over {cocycles} cocycles of W"))
}

fn matrix_replays() -> Outcome {
    let checks = catalog::replay_examples();
    let f = checks.iter().filter(|c| !c.ok).map(|c| c.to_string()).collect();
    Outcome::new(f, format!("{} matrix identities", checks.len()))
}

fn table_verification() -> Outcome {
    let summary = catalog::verify_all(true);
    let f: Vec<String> = summary
        .failed_records()
        .iter()
        .map(|r| format!("{}: {}", r.id, r.failures().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    Outcome::new(f, format!("{} records at 3 points", summary.reports.len()))
}

fn conjugacy_invariants() -> Outcome {
    let mut f = Vec::new();
    let mut n = 0;
    for fam in families().iter().filter(|fam| !fam.tag.is_canonical()) {
        let pts = fam.sample_points(2);
        check(&mut f, pts.len() >= 2, format!("{}: too few points", fam.tag));
        for l in &pts {
            let checks = catalog::charpoly_agreement(fam, l);
            check(&mut f, !checks.is_empty(), format!("{}: no conjugate stated", fam.tag));
            for c in checks {
                n += 1;
                check(&mut f, c.ok, c.to_string());
            }
        }
    }
    for l in [2, -3] {
        let c = catalog::p62_mixed_agreement(&CycScalar::from_i64(l));
        n += 1;
        check(&mut f, c.ok, c.to_string());
    }
    Outcome::new(f, format!("{n} charpoly agreements"))
}

fn random_trivector(rng: &mut ChaCha8Rng) -> Trivector {
    let tr = trivector::triples();
    let mut t = Trivector::zero();
    for _ in 0..rng.gen_range(1..=6) {
        let [a, b, c] = tr[rng.gen_range(0..tr.len())];
        let s = CycScalar::from_frac(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        t = t.add(&Trivector::basis(a, b, c).scale(&s));
    }
    if rng.gen_bool(0.4) {
        let p = cartan::p_basis();
        t = t.add(&p[rng.gen_range(0..4)].scale(&CycScalar::from_i64(rng.gen_range(1..=3))));
    }
    t
}

fn random_gl9(rng: &mut ChaCha8Rng) -> Mat<CycScalar> {
    loop {
        let entries: Vec<i64> = (0..81).map(|_| if rng.gen_bool(0.4) { rng.gen_range(-2..=2) } else { 0 }).collect();
        let g = Mat::from_fn(9, 9, |r, c| CycScalar::from_i64(entries[9 * r + c]));
        if !g.det().is_zero() {
            return g;
        }
    }
}

fn jordan_contract(x: &AlgElement) -> bool {
    let alg = algebra();
    match classify::jordan_decompose(x) {
        Ok((s, n)) => {
            alg.bracket(&s, &n).is_zero()
                && classify::is_semisimple(&s)
                && classify::is_nilpotent(&n)
                && s.add(&n) == *x
                && alg.g1_iso_inv(&s).is_ok()
        }
        Err(_) => false,
    }
}

fn property_suites() -> Outcome {
    let alg = algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut f = Vec::new();
    let samples: Vec<Trivector> = (0..100).map(|_| random_trivector(&mut rng)).collect();
    let jordan_bad: Vec<String> =
        samples.par_iter().filter(|t| !jordan_contract(&alg.g1_iso(t))).map(|t| format!("jordan {t}")).collect();
    f.extend(jordan_bad);
    for _ in 0..50 {
        let t = random_trivector(&mut rng);
        let g = random_gl9(&mut rng);
        let r = rank(&wedge_action(&g, &t).unwrap());
        check(&mut f, r == rank(&t), format!("rank {t}"));
    }
    let recs = catalog::builtin_catalog();
    let nil: Vec<&Trivector> = recs.iter().map(|r| &r.representative).filter(|t| !t.is_zero()).collect();
    let picks: Vec<&Trivector> = (0..20).map(|_| nil[rng.gen_range(0..nil.len())]).collect();
    let sl2_bad: Vec<String> = picks
        .par_iter()
        .filter(|e| !classify::sl2_triple(&alg.g1_iso(e)).is_ok_and(|tr| tr.check(alg)))
        .map(|e| format!("sl2 {e}"))
        .collect();
    f.extend(sl2_bad);
    Outcome::new(f, "100 Jordan contracts, 50 rank invariances, 20 sl2-triples".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("structure suite", structure),
        ("psi and g1 identification", psi_and_g1),
        ("little Weyl group", little_weyl_group),
        ("canonical sets", canonical_sets),
        ("Galois cohomology replays", galois_replays),
        ("worked-example matrix replays", matrix_replays),
        ("table verification", table_verification),
        ("invariant-level conjugacy checks", conjugacy_invariants),
        ("property suites", property_suites),
    ];
    let only: Option<usize> = std::env::var("TRIVEC9_CRITERION").ok().and_then(|s| s.parse().ok());
    let total = Instant::now();
    let mut passed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != k + 1) {
            continue;
        }
        let start = Instant::now();
        let out = run();
        passed += usize::from(out.ok);
        let verdict = if out.ok { "PASS" } else { "FAIL" };
        println!("{verdict} {}. {name} [{:.1}s] {}", k + 1, start.elapsed().as_secs_f64(), out.detail);
    }
    println!("acceptance: {passed} passed in {:.1}s", total.elapsed().as_secs_f64());
}
