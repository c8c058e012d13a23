use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use trivec9::cartan::{self, canonical_family, CVec};
use trivec9::catalog::{self, FamilyTag, OrbitRecord};
use trivec9::classify;
use trivec9::e8::algebra;
use trivec9::galois::{self, GaloisError, GammaGroup, RealPoint, WitnessSearch};
use trivec9::trivector::{self, Trivector};
use trivec9::{parse_scalar, parse_trivector, CycScalar, Mat};

#[derive(Parser)]
#[command(name = "trivec9", version, about = "Exact tools for trivectors of a 9-dimensional space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Seed for search-based commands.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    /// Worker threads for verification.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Catalog file used instead of the built-in tables.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Directory for cached computations.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Jordan type, rank, orbit data of a trivector.
    Classify {
        #[arg(allow_hyphen_values = true)]
        trivector: String,
    },
    /// Semisimple and nilpotent parts.
    Jordan {
        #[arg(allow_hyphen_values = true)]
        trivector: String,
    },
    /// A homogeneous sl2-triple through a nilpotent trivector.
    Sl2 {
        #[arg(allow_hyphen_values = true)]
        trivector: String,
    },
    /// Rank of a trivector (dimension of its support space).
    Rank {
        #[arg(allow_hyphen_values = true)]
        trivector: String,
    },
    /// The little Weyl group of the Cartan subspace.
    Weyl {
        #[arg(long)]
        order: bool,
        /// Print a generating set of four reflections.
        #[arg(long)]
        generators: bool,
        /// Order of the stabilizer of a point "x1,x2,x3,x4".
        #[arg(long, allow_hyphen_values = true)]
        stabilizer: Option<String>,
    },
    /// Canonical set of a point of the Cartan subspace, or data of a family member.
    Canonical {
        /// Coordinates "x1,x2,x3,x4" in the basis p1..p4.
        #[arg(allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
    },
    /// First Galois cohomology.
    H1 {
        /// Gamma-group description file.
        file: Option<PathBuf>,
        #[arg(long)]
        weyl: bool,
        /// The order-243 centralizer of the Cartan subspace.
        #[arg(long)]
        cartan_centralizer: bool,
        /// Twist this trivector by each class and print real representatives.
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
    },
    /// Second Galois cohomology of an abelian Gamma-group.
    H2 {
        file: PathBuf,
        /// Search for a point of the orbit fixed by the twisted conjugation.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// g in SL(9) with g^-1 conj(g) = a.
    SolveCocycle {
        /// Rows separated by ';', entries by whitespace or ','.
        #[arg(allow_hyphen_values = true)]
        matrix: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// A matrix of the built-in worked examples.
        #[arg(long)]
        example: Option<String>,
    },
    /// Verify catalog records.
    Verify {
        /// "builtin" or a catalog path.
        #[arg(long, default_value = "builtin")]
        tables: String,
        /// Parameter points per record.
        #[arg(long, default_value_t = 3)]
        points: usize,
    },
    /// Dump fixed data.
    Dump {
        #[arg(value_enum)]
        what: DumpWhat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpWhat {
    Structure,
}

enum Failure {
    Usage(String),
    Verify(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verify(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<GaloisError> for Failure {
    fn from(e: GaloisError) -> Failure {
        match e {
            GaloisError::Budget { .. } | GaloisError::WitnessNotFound { .. } => Failure::Budget(e.to_string()),
            GaloisError::Parse { .. } | GaloisError::NotCocycle | GaloisError::NotInvolution | GaloisError::NotClosed => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Verify(e.to_string()),
        }
    }
}

type Res<T> = Result<T, Failure>;

/// Output as records of key-value pairs.
struct Report {
    format: Format,
    records: Vec<Vec<(String, String)>>,
}

impl Report {
    fn new(format: Format) -> Report {
        Report { format, records: vec![Vec::new()] }
    }

    fn put(&mut self, key: &str, value: impl ToString) {
        self.records.last_mut().unwrap().push((key.to_string(), value.to_string()));
    }

    fn next(&mut self) {
        if !self.records.last().unwrap().is_empty() {
            self.records.push(Vec::new());
        }
    }

    fn render(&self) -> String {
        let records = self.records.iter().filter(|r| !r.is_empty());
        let mut out = match self.format {
            Format::Human => records
                .map(|r| r.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n"))
                .collect::<Vec<_>>()
                .join("\n\n"),
            Format::Machine => records
                .map(|r| r.iter().map(|(k, v)| format!("{k}={}", v.replace(' ', ""))).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("\n"),
        };
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }
}

fn trivector_arg(s: &str) -> Res<Trivector> {
    parse_trivector(s).map_err(|e| Failure::Usage(format!("trivector: {e}")))
}

fn scalars_arg(s: &str, what: &str) -> Res<Vec<CycScalar>> {
    s.split(',').map(|x| parse_scalar(x.trim()).map_err(|e| Failure::Usage(format!("{what}: {e}")))).collect()
}

fn point_arg(s: &str) -> Res<CVec> {
    let v = scalars_arg(s, "point")?;
    v.try_into().map_err(|v: Vec<CycScalar>| Failure::Usage(format!("point: expected 4 coordinates, got {}", v.len())))
}

fn matrix_text(text: &str) -> Res<Mat<CycScalar>> {
    let rows: Vec<Vec<CycScalar>> = text
        .split([';', '\n'])
        .map(str::trim)
        .filter(|r| !r.is_empty() && !r.starts_with('#'))
        .enumerate()
        .map(|(i, r)| {
            r.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| parse_scalar(x).map_err(|e| Failure::Usage(format!("matrix row {}: {e}", i + 1))))
                .collect()
        })
        .collect::<Res<_>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Failure::Usage("matrix is not square".into()));
    }
    Ok(Mat::from_rows(rows))
}

fn matrix_cell(m: &Mat<CycScalar>) -> String {
    (0..m.rows)
        .map(|r| m.row(r).iter().map(|x| x.to_string().replace(' ', "")).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn gamma_file(path: &Path) -> Res<GammaGroup> {
    GammaGroup::parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_records(path: &Path) -> Res<Vec<OrbitRecord>> {
    catalog::load_catalog(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn structure_hash() -> String {
    hex::encode(Sha256::digest(algebra().dump().as_bytes()))
}

/// Load the Weyl group from `dir`, or enumerate it and store the tree.
fn weyl_with_cache(dir: Option<&Path>) -> Res<&'static cartan::LittleWeylGroup> {
    if let Some(dir) = dir {
        let sub = dir.join(structure_hash());
        let file = sub.join("weyl_tree.txt");
        let tree: Option<Vec<(u32, u8)>> = std::fs::read_to_string(&file).ok().and_then(|s| {
            s.lines()
                .map(|l| {
                    let (a, b) = l.split_once(' ')?;
                    Some((a.parse().ok()?, b.parse().ok()?))
                })
                .collect()
        });
        if !tree.is_some_and(|t| cartan::install_weyl_group_from_tree(&t)) {
            let w = cartan::weyl_group();
            let text: String = w.tree().iter().map(|(a, b)| format!("{a} {b}\n")).collect();
            std::fs::create_dir_all(&sub)
                .and_then(|_| std::fs::write(&file, text))
                .map_err(|e| Failure::Usage(format!("cache {}: {e}", file.display())))?;
        }
    }
    Ok(cartan::weyl_group())
}

fn classify_cmd(rep: &mut Report, t: &str) -> Res<()> {
    let t = trivector_arg(t)?;
    let r = classify::classify(&t).map_err(|e| Failure::Verify(e.to_string()))?;
    rep.put("kind", r.kind);
    rep.put("rank", r.rank);
    rep.put("dim", r.orbit_dim);
    rep.put("stabilizer_dim", r.stabilizer_dim);
    if let Some(c) = r.characteristic {
        rep.put("characteristic", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    }
    rep.put("semisimple_part", &r.semisimple_part);
    rep.put("nilpotent_part", &r.nilpotent_part);
    if let Some(p) = cartan::coordinates(&r.semisimple_part) {
        rep.put("canonical_family", canonical_family(&p));
    }
    Ok(())
}

fn jordan_cmd(rep: &mut Report, t: &str) -> Res<()> {
    let alg = algebra();
    let x = alg.g1_iso(&trivector_arg(t)?);
    let (s, n) = classify::jordan_decompose(&x).map_err(|e| Failure::Verify(e.to_string()))?;
    let back = |y| alg.g1_iso_inv(y).map_err(|e| Failure::Verify(e.to_string()));
    rep.put("semisimple", back(&s)?);
    rep.put("nilpotent", back(&n)?);
    Ok(())
}

fn sl2_cmd(rep: &mut Report, t: &str) -> Res<()> {
    let alg = algebra();
    let e = trivector_arg(t)?;
    let x = alg.g1_iso(&e);
    if !classify::is_nilpotent(&x) {
        return Err(Failure::Usage("sl2: the trivector is not nilpotent".into()));
    }
    let tr = classify::sl2_triple(&x).map_err(|e| Failure::Verify(e.to_string()))?;
    let h = alg.psi_inv(&tr.h).map_err(|e| Failure::Verify(e.to_string()))?;
    let mut f = Trivector::zero();
    for (k, c) in f.coeffs.iter_mut().enumerate() {
        let (idx, sign) = alg.gm1_basis(k);
        *c = &tr.f.coords[idx] * &CycScalar::from_i64(sign as i64);
    }
    rep.put("e", e);
    rep.put("h", matrix_cell(&h));
    rep.put("f_dual", f);
    let ch = classify::characteristic(&tr.h).map_err(|e| Failure::Verify(e.to_string()))?;
    rep.put("characteristic", ch.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    rep.put("check", if tr.check(alg) { "PASS" } else { "FAIL" });
    Ok(())
}

fn weyl_cmd(rep: &mut Report, g: &Global, order: bool, generators: bool, stabilizer: Option<&str>) -> Res<()> {
    let w = weyl_with_cache(g.cache.as_deref())?;
    if order || (!generators && stabilizer.is_none()) {
        rep.put("order", w.order());
    }
    if generators {
        let four = w.four_generators().ok_or_else(|| Failure::Verify("no generating 4-subset".into()))?;
        let lines: Vec<String> = four.iter().map(|r| r.to_string()).collect();
        rep.put("generators", lines.join(","));
    }
    if let Some(p) = stabilizer {
        let p = point_arg(p)?;
        rep.put("stabilizer_order", w.stabilizer(&p).order());
    }
    Ok(())
}

fn canonical_cmd(rep: &mut Report, point: Option<&str>, fam: Option<&str>, params: Option<&str>) -> Res<()> {
    match (point, fam) {
        (Some(p), None) => {
            let p = point_arg(p)?;
            rep.put("family", canonical_family(&p));
            rep.put("vanishing_lines", cartan::cartan().vanishing_lines(&p).len());
        }
        (None, Some(tag)) => {
            let tag: FamilyTag = tag.parse().map_err(|e: catalog::CatalogError| Failure::Usage(e.to_string()))?;
            let f = catalog::family(tag).ok_or_else(|| Failure::Usage(format!("unknown family {tag}")))?;
            let l = match params {
                Some(s) if !s.trim().is_empty() => scalars_arg(s, "params")?,
                _ => Vec::new(),
            };
            let usage = |e: catalog::CatalogError| Failure::Usage(e.to_string());
            rep.put("family", tag);
            rep.put("admissible", f.admissible(&l).map_err(usage)?);
            rep.put("admissible_as_stated", f.admissible_as_stated(&l).map_err(usage)?);
            rep.put("element", f.element(&l).map_err(usage)?);
            if let Some(p) = f.complex_point(&l).map_err(usage)? {
                rep.put("canonical_family", canonical_family(&p));
            }
        }
        _ => return Err(Failure::Usage("canonical: give a point or --family".into())),
    }
    Ok(())
}

fn h1_cmd(rep: &mut Report, g: &Global, file: Option<&Path>, weyl: bool, centralizer: bool, base: Option<&str>) -> Res<()> {
    if weyl {
        weyl_with_cache(g.cache.as_deref())?;
        let h = galois::h1_weyl();
        rep.put("group", "W");
        rep.put("cocycles", h.class_of.iter().flatten().count());
        rep.put("classes", h.classes.len());
        return Ok(());
    }
    if centralizer {
        let h = galois::h1_cartan_centralizer()?;
        rep.put("group", "Z_G(c)");
        rep.put("order", h.group.elements.len());
        rep.put("classes", h.len());
        return Ok(());
    }
    let path = file.ok_or_else(|| Failure::Usage("h1: give a file, --weyl or --cartan-centralizer".into()))?;
    let gamma = gamma_file(path)?;
    let classes = galois::h1_mixed(&gamma)?;
    rep.put("classes", classes.len());
    let reps = match base {
        Some(t) => Some(galois::real_orbit_reps(&trivector_arg(t)?, &classes, g.seed)?),
        None => None,
    };
    for (k, c) in classes.iter().enumerate() {
        rep.next();
        rep.put("class", k);
        rep.put("cocycle", matrix_cell(&c.representative));
        if let Some(r) = &reps {
            rep.put("real_representative", &r[k]);
        }
    }
    Ok(())
}

fn h2_cmd(rep: &mut Report, file: &Path, point: Option<&str>) -> Res<()> {
    let gamma = gamma_file(file)?;
    if let Some(t) = point {
        match galois::real_point_via_h2(&trivector_arg(t)?, &gamma, &WitnessSearch::default())? {
            RealPoint::Point { y, h0, d } => {
                rep.put("result", "point");
                rep.put("y", y);
                rep.put("h0", matrix_cell(&h0));
                rep.put("d", matrix_cell(&d));
            }
            RealPoint::Obstruction { d, character } => {
                rep.put("result", "obstruction");
                rep.put("d", matrix_cell(&d));
                rep.put("character", character.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
            }
        }
        return Ok(());
    }
    let h = galois::h2_abelian(&gamma)?;
    rep.put("order", h.order());
    for (k, r) in h.representatives.iter().enumerate() {
        rep.next();
        rep.put("class", k);
        rep.put("representative", matrix_cell(r));
    }
    Ok(())
}

fn solve_cmd(rep: &mut Report, g: &Global, inline: Option<&str>, file: Option<&Path>, example: Option<&str>) -> Res<()> {
    let a = match (inline, file, example) {
        (Some(t), None, None) => matrix_text(t)?,
        (None, Some(p), None) => matrix_text(&read(p)?)?,
        (None, None, Some(name)) => catalog::examples()
            .matrices
            .get(name)
            .cloned()
            .ok_or_else(|| Failure::Usage(format!("no example matrix {name}")))?,
        _ => return Err(Failure::Usage("solve-cocycle: give exactly one of MATRIX, --file, --example".into())),
    };
    if a.rows != 9 {
        return Err(Failure::Usage(format!("solve-cocycle: expected a 9x9 matrix, got {}x{}", a.rows, a.cols)));
    }
    let u = galois::solve_cocycle_sl9(&a, g.seed)?;
    let ok = u.inverse().is_some_and(|ui| ui.mul(&u.map(|x| x.conj())) == a) && u.det().is_one();
    rep.put("g", matrix_cell(&u));
    rep.put("check", if ok { "PASS" } else { "FAIL" });
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify("g^-1 conj(g) != a".into()))
    }
}

fn verify_cmd(rep: &mut Report, g: &Global, tables: &str, points: usize) -> Res<()> {
    let path = g.catalog.clone().or_else(|| (tables != "builtin").then(|| PathBuf::from(tables)));
    let (records, builtin) = match &path {
        Some(p) => (load_records(p)?, false),
        None => (catalog::builtin_catalog(), true),
    };
    let jobs = g.jobs.unwrap_or(1).max(1);
    let run = || catalog::verify_records(&records, points, jobs > 1);
    let reports = if jobs > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Failure::Usage(e.to_string()))?
            .install(run)
    } else {
        run()
    };
    let replays = if builtin { catalog::replay_examples() } else { Vec::new() };
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    let failed_replays: Vec<_> = replays.iter().filter(|c| !c.ok).collect();
    for r in &failed {
        rep.put("record", r.id.replace(' ', ":"));
        rep.put("status", "FAIL");
        let claims: Vec<String> = r.failures().map(|c| c.claim.clone()).collect();
        rep.put("claims", claims.join("; "));
        rep.next();
    }
    for c in &failed_replays {
        rep.put("replay", &c.claim);
        rep.put("status", "FAIL");
        rep.next();
    }
    let ok = failed.is_empty() && failed_replays.is_empty();
    rep.put("status", if ok { "PASS" } else { "FAIL" });
    rep.put("records", reports.len());
    rep.put("records_passed", reports.len() - failed.len());
    rep.put("replays", replays.len());
    rep.put("replays_passed", replays.len() - failed_replays.len());
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify(format!("{} record(s) and {} replay(s) failed", failed.len(), failed_replays.len())))
    }
}

fn run(cli: &Cli, rep: &mut Report) -> Res<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Classify { trivector } => classify_cmd(rep, trivector),
        Command::Jordan { trivector } => jordan_cmd(rep, trivector),
        Command::Sl2 { trivector } => sl2_cmd(rep, trivector),
        Command::Rank { trivector } => {
            rep.put("rank", trivector::rank(&trivector_arg(trivector)?));
            Ok(())
        }
        Command::Weyl { order, generators, stabilizer } => weyl_cmd(rep, g, *order, *generators, stabilizer.as_deref()),
        Command::Canonical { point, family, params } => canonical_cmd(rep, point.as_deref(), family.as_deref(), params.as_deref()),
        Command::H1 { file, weyl, cartan_centralizer, base } => {
            h1_cmd(rep, g, file.as_deref(), *weyl, *cartan_centralizer, base.as_deref())
        }
        Command::H2 { file, point } => h2_cmd(rep, file, point.as_deref()),
        Command::SolveCocycle { matrix, file, example } => solve_cmd(rep, g, matrix.as_deref(), file.as_deref(), example.as_deref()),
        Command::Verify { tables, points } => verify_cmd(rep, g, tables, *points),
        Command::Dump { what: DumpWhat::Structure } => {
            emit(&algebra().dump());
            Ok(())
        }
    }
}

/// Write to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.jobs.is_none() {
        // single-threaded unless --jobs is given
        let _ = rayon::ThreadPoolBuilder::new().num_threads(1).build_global();
    }
    let mut rep = Report::new(cli.global.format);
    let result = run(&cli, &mut rep);
    emit(&rep.render());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
