use std::collections::HashMap;
use std::path::PathBuf;
use std::process::{Command, Output};

use trivec9::parse_trivector;

fn trivec9(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trivec9")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn record(line: &str) -> HashMap<String, String> {
    line.split(' ').filter_map(|kv| kv.split_once('=')).map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn gamma(name: &str) -> String {
    format!("{}/../core/data/gamma/{name}.txt", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn classify_semisimple() {
    let o = trivec9(&["classify", "--format", "machine", "e123+e456+e789"]);
    assert_eq!(o.status.code(), Some(0));
    let r = record(stdout(&o).trim());
    assert_eq!(r["kind"], "semisimple");
    assert_eq!(r["rank"], "9");
    let o = trivec9(&["classify", "e123+e456+e789"]);
    assert!(stdout(&o).contains("kind: semisimple\nrank: 9\n"));
}

#[test]
fn machine_output_reparses() {
    let input = "e123+e456+e147-2*e789";
    let o = trivec9(&["classify", "--format=machine", input]);
    assert_eq!(o.status.code(), Some(0));
    let r = record(stdout(&o).trim());
    let s = parse_trivector(&r["semisimple_part"]).unwrap();
    let n = parse_trivector(&r["nilpotent_part"]).unwrap();
    assert_eq!(s.add(&n), parse_trivector(input).unwrap());
    assert!(["semisimple", "nilpotent", "mixed"].contains(&r["kind"].as_str()));
    assert!(r["dim"].parse::<usize>().is_ok());
}

#[test]
fn small_commands() {
    assert_eq!(stdout(&trivec9(&["rank", "-e123+e145"])), "rank: 5\n");
    let o = trivec9(&["jordan", "--format", "machine", "e123+e456+e789+e147"]);
    let r = record(stdout(&o).trim());
    assert_eq!((r["semisimple"].as_str(), r["nilpotent"].as_str()), ("e123+e456+e789", "e147"));
    let o = trivec9(&["sl2", "--format", "machine", "e678"]);
    let r = record(stdout(&o).trim());
    assert_eq!(r["check"], "PASS");
    assert_eq!(r["characteristic"], "0,0,1,0,0,0,0,0");
    let o = trivec9(&["canonical", "--format", "machine", "0,0,3,-3"]);
    assert_eq!(record(stdout(&o).trim())["family"], "5");
    let o = trivec9(&["canonical", "--format", "machine", "--family", "1,1", "--params", "1,2,3,5"]);
    let r = record(stdout(&o).trim());
    assert_eq!((r["admissible"].as_str(), r["admissible_as_stated"].as_str()), ("false", "true"));
}

#[test]
fn exit_codes() {
    let o = trivec9(&["classify", "e12x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    assert_eq!(trivec9(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(trivec9(&["solve-cocycle", "2 0; 0 1"]).status.code(), Some(2));
    let mut not_cocycle = vec!["0"; 81];
    for k in 0..9 {
        not_cocycle[10 * k] = "1";
    }
    not_cocycle[0] = "2";
    let text = not_cocycle.chunks(9).map(|r| r.join(" ")).collect::<Vec<_>>().join(";");
    assert_eq!(trivec9(&["solve-cocycle", &text]).status.code(), Some(2));
    // no torus element moves mu(e123) back to e123
    let o = trivec9(&["h2", &gamma("t4"), "--point", "e123"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn galois_commands() {
    let o = trivec9(&["h1", "--format", "machine", &gamma("gamma3")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("classes=4"));
    let o = trivec9(&["h1", "--cartan-centralizer", "--format", "machine"]);
    assert!(stdout(&o).contains("order=243 classes=1"));
    let o = trivec9(&["h2", "--format", "machine", &gamma("pm1")]);
    assert_eq!(stdout(&o).lines().next(), Some("order=2"));
    let e_prime = "-e159 + i*e168 - e267";
    let o = trivec9(&["h2", "--format", "machine", &gamma("t4"), "--point", e_prime]);
    let r = record(stdout(&o).lines().next().unwrap());
    assert_eq!(r["result"], "point");
    assert_eq!(parse_trivector(&r["y"]).unwrap(), parse_trivector(e_prime).unwrap());
}

#[test]
fn seeds_are_reproducible() {
    let run = |seed: &str| stdout(&trivec9(&["solve-cocycle", "--example", "n3", "--seed", seed, "--format", "machine"]));
    let a = run("5");
    assert!(a.contains("check=PASS"));
    assert_eq!(a, run("5"));
    let e47 = "e136+e147-e245+e379+e569+e678";
    let reps = |seed: &str| stdout(&trivec9(&["h1", &gamma("orbit47"), "--base", e47, "--seed", seed, "--format", "machine"]));
    let first = reps("3");
    assert_eq!(first, reps("3"));
    assert_eq!(first.lines().count(), 3);
}

#[test]
fn structure_dump_is_stable() {
    let a = trivec9(&["dump", "structure"]);
    let b = trivec9(&["dump", "structure"]);
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_catalog_file() {
    let good = "orbit 3_1 9: 0; centralizer=4*t\norbit 2_2 2 a: -e148; centralizer=u\n";
    let path = scratch("good.txt");
    std::fs::write(&path, good).unwrap();
    let o = trivec9(&["verify", "--tables", path.to_str().unwrap(), "--points", "1", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("status=PASS records=2 records_passed=2"));

    let bad = format!("{good}orbit 3_1 10: 0; centralizer=3*t\n");
    let path = scratch("bad.txt");
    std::fs::write(&path, bad).unwrap();
    let o = trivec9(&["verify", "--catalog", path.to_str().unwrap(), "--points", "1", "--jobs", "2", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("record=3_1:10 status=FAIL")), "{out}");
    assert!(!out.contains("record=3_1:9"));

    let path = scratch("broken.txt");
    std::fs::write(&path, "orbit 3_1 1: e12\n").unwrap();
    let o = trivec9(&["verify", "--tables", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn weyl_group_with_cache() {
    let dir = scratch("cache");
    let o = trivec9(&["weyl", "--order", "--cache", dir.to_str().unwrap()]);
    assert_eq!(stdout(&o), "order: 155520\n");
    let cached: Vec<_> = std::fs::read_dir(&dir).unwrap().collect();
    assert_eq!(cached.len(), 1);
    let o = trivec9(&["weyl", "--format", "machine", "--stabilizer", "1,3,7,19", "--cache", dir.to_str().unwrap()]);
    assert_eq!(stdout(&o), "stabilizer_order=1\n");
}
