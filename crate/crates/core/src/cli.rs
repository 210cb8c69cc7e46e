//! The `aomoto` command line: argument parsing, input loading and JSON
//! reports. Kept in the library so reports can be produced in-process.
//!
//! Exit codes: 0 success, 1 precondition or input error, 2 a finding that
//! contradicts a theorem (non-separation, 4-net existence, or disagreement
//! between H¹ methods whose hypotheses hold).

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::arrangement::Arrangement;
use crate::bands::{band_rows, h1_via_rb, RbStatus};
use crate::chamber_complex::{degree_table, h1_chambers, nabla0, nabla1};
use crate::chambers::{chambers, classify_chambers, expected_chamber_count, ChamberClasses, Flag};
use crate::incidence::{Incidence, LineId};
use crate::nets::{extract_3nets, non_separation_check, refute_4net, search_nets, Certificate, NetError};
use crate::os::{enumerate_f2_cocycles, h1_coned, h1_direct, wedge_matrix, OneForm, H1};
use crate::zmod::{self, is_prime, ModMatrix};

pub const CORPUS_ENV: &str = "AOMOTO_CORPUS";

#[derive(Parser, Debug)]
#[command(name = "aomoto", version, about = "Aomoto complex cohomology and nets of real line arrangements")]
pub struct Cli {
    /// Send the named line to infinity before running the command.
    #[arg(long, global = true, value_name = "NAME")]
    pub decone: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the chambers with sign vectors and witnesses.
    Chambers { file: PathBuf },
    /// Show the flag and the ch⁰/ch¹/ch² split.
    Flag { file: PathBuf },
    /// Dump the degree table and the ∇ maps.
    ChamberComplex {
        file: PathBuf,
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u64,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
        /// Print the matrices as TSV instead of JSON.
        #[arg(long)]
        tsv: bool,
    },
    /// Bands, resonance and the reduced ∇ on resonant bands.
    Rb {
        file: PathBuf,
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u64,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
    },
    /// First cohomology of the Aomoto complex.
    H1 {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u64,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
    },
    /// Cocycles of the diagonal element over F_p on the projective closure.
    Cocycles {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// All k-nets of the projective closure.
    Nets {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Classify quadruple points against F₂ cocycles (all of them by default).
    Nonsep {
        file: PathBuf,
        #[arg(long)]
        subset: Option<String>,
    },
    /// Produce a certificate against a claimed 4-net.
    Refute4net {
        file: PathBuf,
        #[arg(long)]
        classes: String,
    },
    /// Run every check on each `.arr` file in a directory.
    Corpus { dir: Option<PathBuf> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Chambers,
    Rb,
}

/// What a run prints and how it exits.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Fail {
    Precondition(String),
}

type Res<T> = Result<T, Fail>;

fn pre<E: std::fmt::Display>(e: E) -> Fail {
    Fail::Precondition(e.to_string())
}

/// Result block plus whether it contradicts a theorem.
struct Findings {
    results: Value,
    violation: bool,
    text: Option<String>,
}

impl Findings {
    fn ok(results: Value) -> Self {
        Findings { results, violation: false, text: None }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    let outcome = dispatch(&cli);
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    match outcome {
        Err(Fail::Precondition(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Ok((digest, f)) => {
            let stdout = match f.text {
                Some(t) => t,
                None => {
                    let report = json!({
                        "command": echo,
                        "input_digest": digest,
                        "results": f.results,
                        "timing_ms": (elapsed * 1000.0).round() / 1000.0,
                    });
                    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
                }
            };
            let stderr = if f.violation { "THEOREM VIOLATION: see report\n".to_string() } else { String::new() };
            Outcome { code: if f.violation { 2 } else { 0 }, stdout, stderr }
        }
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct Input {
    arrangement: Arrangement,
    digest: String,
}

fn load(path: &Path, decone: Option<&str>) -> Res<Input> {
    let bytes = std::fs::read(path).map_err(|e| pre(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| pre(format!("{}: {e}", path.display())))?;
    let parsed = Arrangement::parse(&text).map_err(|e| pre(format!("{}: {e}", path.display())))?;
    let mut digest_input = bytes;
    let arrangement = match decone {
        None => parsed,
        Some(name) => {
            let p = parsed.projectivize();
            let id = p.id_by_name(name).ok_or_else(|| pre(format!("no line named {name}")))?;
            digest_input.extend_from_slice(format!("\ndecone {name}").as_bytes());
            p.decone(id).expect("line exists")
        }
    };
    Ok(Input { arrangement, digest: sha256_hex(&digest_input) })
}

fn affine(a: &Arrangement) -> Res<()> {
    if a.is_projective() {
        return Err(pre("this command needs an affine arrangement; pass --decone NAME"));
    }
    Ok(())
}

fn parse_eta(a: &Arrangement, modulus: u64, eta: Option<&str>) -> Res<OneForm> {
    if modulus < 2 {
        return Err(pre("modulus must be at least 2"));
    }
    let ids = a.ids();
    match eta {
        None => Ok(OneForm::diagonal(modulus, &ids)),
        Some(s) => {
            let s = s.strip_prefix("eta").map(str::trim).unwrap_or(s);
            let coeffs: Vec<i64> = s
                .split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|e| pre(format!("bad coefficient {t:?}: {e}"))))
                .collect::<Res<_>>()?;
            OneForm::from_ints(modulus, &ids, &coeffs).map_err(pre)
        }
    }
}

fn parse_names(inc: &Incidence, list: &str) -> Res<Vec<LineId>> {
    let list = list.strip_prefix("subset").map(str::trim).unwrap_or(list);
    let mut out: Vec<LineId> = list
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| inc.id_by_name(t).ok_or_else(|| pre(format!("no line named {t}"))))
        .collect::<Res<_>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_classes(inc: &Incidence, list: &str) -> Res<Vec<Vec<LineId>>> {
    let list = list.strip_prefix("classes").map(str::trim).unwrap_or(list);
    list.split('|').map(|c| parse_names(inc, c)).collect()
}

fn names(inc: &Incidence, ids: &[LineId]) -> Vec<String> {
    ids.iter().map(|&i| inc.name(i).to_string()).collect()
}

fn form_json(a: &Arrangement, w: &OneForm) -> Value {
    let terms: Vec<Value> = a
        .ids()
        .iter()
        .zip(w.centered())
        .filter(|(_, c)| *c != 0)
        .map(|(&id, c)| json!({ "line": a.line(id).name, "coeff": c }))
        .collect();
    json!({ "coeffs": w.coeffs(), "terms": terms })
}

fn h1_json(a: &Arrangement, h: &H1) -> Value {
    json!({
        "invariants": h.invariants.to_string(),
        "factors": h.invariants.factors,
        "representatives": h.representatives.iter().map(|w| form_json(a, w)).collect::<Vec<_>>(),
    })
}

fn sigma_string(s: &[bool]) -> String {
    s.iter().map(|&b| if b { '+' } else { '-' }).collect()
}

fn flag_and_classes(a: &Arrangement) -> Res<ChamberClasses> {
    affine(a)?;
    let flag = Flag::choose(a, a.flag_hint()).map_err(pre)?;
    Ok(classify_chambers(a, &flag))
}

fn dispatch(cli: &Cli) -> Res<(String, Findings)> {
    let decone = cli.decone.as_deref();
    match &cli.command {
        Command::Corpus { dir } => {
            let dir = match dir {
                Some(d) => d.clone(),
                None => std::env::var_os(CORPUS_ENV)
                    .map(PathBuf::from)
                    .ok_or_else(|| pre(format!("no corpus directory given and {CORPUS_ENV} is unset")))?,
            };
            corpus(&dir)
        }
        Command::Chambers { file } => {
            let inp = load(file, decone)?;
            let a = &inp.arrangement;
            affine(a)?;
            let ch = chambers(a);
            let list: Vec<Value> =
                ch.iter().map(|c| json!({ "signs": sigma_string(&c.signs), "witness": c.witness })).collect();
            let res = json!({
                "lines": a.n(),
                "count": ch.len(),
                "expected": expected_chamber_count(a),
                "chambers": list,
            });
            Ok((inp.digest, Findings { violation: ch.len() != expected_chamber_count(a), ..Findings::ok(res) }))
        }
        Command::Flag { file } => {
            let inp = load(file, decone)?;
            let a = &inp.arrangement;
            let cc = flag_and_classes(a)?;
            let res = json!({
                "f0": cc.flag.f0,
                "direction": cc.flag.direction,
                "order": cc.flag.order.iter().map(|&id| a.line(id).name.clone()).collect::<Vec<_>>(),
                "counts": [1, cc.c.len(), cc.d.len()],
                "c0": sigma_string(&cc.c0.sigma),
                "c": cc.c.iter().map(|x| json!({ "sigma": sigma_string(&x.sigma), "witness": x.chamber.witness })).collect::<Vec<_>>(),
                "d": cc.d.iter().map(|x| json!({ "sigma": sigma_string(&x.sigma), "witness": x.chamber.witness })).collect::<Vec<_>>(),
            });
            Ok((inp.digest, Findings::ok(res)))
        }
        Command::ChamberComplex { file, modulus, eta, tsv } => {
            let inp = load(file, decone)?;
            let a = &inp.arrangement;
            let cc = flag_and_classes(a)?;
            let eta = parse_eta(a, *modulus, eta.as_deref())?;
            let deg = degree_table(&cc);
            let d0 = nabla0(&cc, &eta).map_err(pre)?;
            let d1 = nabla1(&cc, &eta).map_err(pre)?;
            if *tsv {
                let mut t = String::from("# deg\n");
                for r in &deg.rows {
                    t += &r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t");
                    t.push('\n');
                }
                t += "# nabla0\n";
                t += &d0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t");
                t += "\n# nabla1\n";
                for r in d1.rows() {
                    t += &r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t");
                    t.push('\n');
                }
                return Ok((inp.digest, Findings { text: Some(t), ..Findings::ok(Value::Null) }));
            }
            let res = json!({
                "counts": [1, cc.c.len(), cc.d.len()],
                "modulus": modulus,
                "eta": eta.coeffs(),
                "deg": deg.rows,
                "nabla0": d0,
                "nabla1": d1.to_rows(),
            });
            Ok((inp.digest, Findings::ok(res)))
        }
        Command::Rb { file, modulus, eta } => {
            let inp = load(file, decone)?;
            let a = &inp.arrangement;
            let cc = flag_and_classes(a)?;
            let eta = parse_eta(a, *modulus, eta.as_deref())?;
            let rows = band_rows(a, &cc, &eta).map_err(pre)?;
            let bands: Vec<Value> = rows
                .iter()
                .map(|b| {
                    json!({
                        "walls": [a.line(b.band.walls.0).name, a.line(b.band.walls.1).name],
                        "positions": [b.band.positions.0, b.band.positions.1],
                        "length": b.band.length(),
                        "weight": b.weight,
                        "resonant": b.resonant,
                        "row": b.row,
                    })
                })
                .collect();
            let mut res = json!({ "modulus": modulus, "eta": eta.coeffs(), "bands": bands });
            let resonant: Vec<Vec<u64>> = rows.iter().filter(|b| b.resonant).map(|b| b.row.clone()).collect();
            let (gens, inv) = zmod::kernel(&ModMatrix::from_residue_rows(*modulus, cc.d.len(), resonant));
            res["kernel"] = json!({
                "invariants": inv.to_string(),
                "generators": gens.to_rows(),
                "basis": inv.generators,
            });
            match h1_via_rb(a, &cc, &eta) {
                Ok(r) => res["status"] = json!(r.status),
                Err(e) => res["status_error"] = json!(e.to_string()),
            }
            Ok((inp.digest, Findings::ok(res)))
        }
        Command::H1 { file, method, modulus, eta } => {
            let inp = load(file, decone)?;
            let a = &inp.arrangement;
            let eta = parse_eta(a, *modulus, eta.as_deref())?;
            let mut res = json!({ "method": method, "modulus": modulus, "eta": eta.coeffs() });
            let mut violation = false;
            let h = match method {
                Method::Direct if a.is_projective() => {
                    h1_coned(&a.projectivize().incidence(), &eta).map_err(pre)?
                }
                Method::Direct => h1_direct(&a.incidence(), &eta).map_err(pre)?,
                Method::Chambers => {
                    let cc = flag_and_classes(a)?;
                    h1_chambers(&cc, &eta).map_err(pre)?
                }
                Method::Rb => {
                    let cc = flag_and_classes(a)?;
                    let r = h1_via_rb(a, &cc, &eta).map_err(pre)?;
                    if r.status == RbStatus::InjectiveOnly {
                        return Err(pre(format!(
                            "composite modulus {modulus} with a non-resonant band: resonant bands only inject into H¹; use --method chambers"
                        )));
                    }
                    violation = r.agrees_with_direct == Some(false);
                    res["agrees_with_direct"] = json!(r.agrees_with_direct);
                    res["bands"] = json!(r
                        .kernel
                        .bands
                        .iter()
                        .map(|b| [a.line(b.band.walls.0).name.clone(), a.line(b.band.walls.1).name.clone()])
                        .collect::<Vec<_>>());
                    res["band_generators"] = json!(r.kernel.invariants.generators);
                    H1 { invariants: r.kernel.invariants.clone(), representatives: r.representatives }
                }
            };
            let hj = h1_json(a, &h);
            for (k, v) in hj.as_object().unwrap() {
                res[k] = v.clone();
            }
            Ok((inp.digest, Findings { violation, ..Findings::ok(res) }))
        }
        Command::Cocycles { file, p } => {
            let inp = load(file, decone)?;
            if !is_prime(*p) {
                return Err(pre(format!("{p} is not prime")));
            }
            let inc = inp.arrangement.projectivize().incidence();
            let eta = OneForm::diagonal(*p, inc.ids());
            let ker = zmod::kernel_generators(&wedge_matrix(&inc, &eta).map_err(pre)?);
            let mut res = json!({
                "p": p,
                "lines": inc.names(),
                "cocycle_dimension": ker.nrows(),
                "cocycle_basis": ker.to_rows(),
            });
            if inc.n() as u64 % p == 0 {
                let h = h1_coned(&inc, &eta).map_err(pre)?;
                res["h1"] = json!({ "invariants": h.invariants.to_string(), "representatives": h.representatives.iter().map(|w| w.coeffs().to_vec()).collect::<Vec<_>>() });
            }
            if *p == 2 {
                let all = enumerate_f2_cocycles(&inc);
                res["subsets"] = json!(all.iter().map(|s| names(&inc, s)).collect::<Vec<_>>());
            }
            Ok((inp.digest, Findings::ok(res)))
        }
        Command::Nets { file, k } => {
            let inp = load(file, decone)?;
            let inc = inp.arrangement.projectivize().incidence();
            let found = search_nets(&inc, *k).map_err(pre)?;
            let mut res = json!({
                "k": k,
                "nets": found.iter().map(|n| n.classes.iter().map(|c| names(&inc, c)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            let mut violation = *k == 4 && !found.is_empty();
            if *k == 3 {
                match extract_3nets(&inc) {
                    Ok(ex) => {
                        let agree = ex.nets == found;
                        violation |= !agree || !ex.count_identity_holds();
                        res["cocycle_extraction"] = json!({
                            "h1_rank": ex.h1_rank,
                            "nonzero_classes": ex.nonzero_classes,
                            "nets": ex.nets.len(),
                            "count_identity": ex.count_identity_holds(),
                            "agrees_with_search": agree,
                        });
                    }
                    Err(e) => res["cocycle_extraction"] = json!({ "skipped": e.to_string() }),
                }
            }
            Ok((inp.digest, Findings { violation, ..Findings::ok(res) }))
        }
        Command::Nonsep { file, subset } => {
            let inp = load(file, decone)?;
            let inc = inp.arrangement.projectivize().incidence();
            let subsets = match subset {
                Some(s) => vec![parse_names(&inc, s)?],
                None => enumerate_f2_cocycles(&inc),
            };
            let mut reports = Vec::new();
            let mut separated = 0;
            for s in &subsets {
                let r = non_separation_check(&inc, s).map_err(pre)?;
                separated += r.separated().len();
                let entries: Vec<Value> = r
                    .entries
                    .iter()
                    .map(|e| {
                        json!({
                            "point": names(&inc, &e.point),
                            "cyclic": names(&inc, &e.cyclic),
                            "selected": names(&inc, &e.selected),
                            "case": e.case.numeral(),
                        })
                    })
                    .collect();
                reports.push(json!({
                    "subset": names(&inc, s),
                    "entries": entries,
                    "empty_points": r.empty_points,
                    "full_points": r.full_points,
                }));
            }
            let res = json!({ "cocycles": subsets.len(), "separated": separated, "reports": reports });
            Ok((inp.digest, Findings { violation: separated > 0, ..Findings::ok(res) }))
        }
        Command::Refute4net { file, classes } => {
            let inp = load(file, decone)?;
            let inc = inp.arrangement.projectivize().incidence();
            let cl = parse_classes(&inc, classes)?;
            let cert = refute_4net(&inc, &cl).map_err(pre)?;
            // on a real arrangement a separated witness means a real 4-net
            let violation = matches!(cert, Certificate::Separated { .. });
            let res = json!({
                "classes": cl.iter().map(|c| names(&inc, c)).collect::<Vec<_>>(),
                "certificate": cert,
            });
            Ok((inp.digest, Findings { violation, ..Findings::ok(res) }))
        }
    }
}

/// Per-file checks run by `corpus`.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub file: String,
    pub digest: String,
    pub lines: usize,
    pub chambers: usize,
    pub chambers_expected: usize,
    /// `(modulus, direct, chambers, rb)` invariants at the diagonal.
    pub h1: Vec<(u64, String, String, Option<String>)>,
    pub f2_cocycles: usize,
    pub separated: usize,
    pub nonsep_skipped: Option<String>,
    pub three_nets: Option<usize>,
    pub three_net_identity: Option<bool>,
    pub four_nets: Option<usize>,
    pub violations: Vec<String>,
}

/// Every check on one arrangement: chamber count, three-way H¹ at the
/// diagonal mod 2 and 3, non-separation over all F₂ cocycles, net search.
pub fn check_arrangement(file: &str, digest: &str, parsed: &Arrangement) -> CorpusEntry {
    let proj = parsed.projectivize();
    let inc = proj.incidence();
    let a = if parsed.is_projective() {
        proj.decone(proj.ids()[0]).expect("nonempty")
    } else {
        parsed.clone()
    };
    let mut violations = Vec::new();
    let cc = Flag::choose(&a, a.flag_hint()).map(|f| classify_chambers(&a, &f)).unwrap_or_else(|_| {
        let f = Flag::construct(&a);
        classify_chambers(&a, &f)
    });
    let count = 1 + cc.c.len() + cc.d.len();
    let expected = expected_chamber_count(&a);
    if count != expected {
        violations.push(format!("chamber count {count} != {expected}"));
    }
    let mut h1 = Vec::new();
    for m in [2u64, 3] {
        let eta = OneForm::diagonal(m, &a.ids());
        let direct = h1_direct(&a.incidence(), &eta).expect("diagonal fits");
        let ch = h1_chambers(&cc, &eta).expect("complex");
        if !direct.invariants.same_type(&ch.invariants) {
            violations.push(format!("mod {m}: direct {} != chambers {}", direct.invariants, ch.invariants));
        }
        let rb = match h1_via_rb(&a, &cc, &eta) {
            Ok(r) => {
                if r.agrees_with_direct == Some(false) {
                    violations.push(format!("mod {m}: resonant bands disagree with direct"));
                }
                Some(r.kernel.invariants.to_string())
            }
            Err(_) => None,
        };
        h1.push((m, direct.invariants.to_string(), ch.invariants.to_string(), rb));
    }
    let cocycles = enumerate_f2_cocycles(&inc);
    let mut separated = 0;
    let mut nonsep_skipped = None;
    for s in &cocycles {
        match non_separation_check(&inc, s) {
            Ok(r) => separated += r.separated().len(),
            Err(NetError::NotEssential) => {
                nonsep_skipped = Some("not essential".to_string());
                break;
            }
            Err(e) => violations.push(format!("nonsep: {e}")),
        }
    }
    if separated > 0 {
        violations.push(format!("{separated} separated quadruple points"));
    }
    let mut three_nets = None;
    let mut three_net_identity = None;
    if inc.n() % 3 == 0 {
        let found = search_nets(&inc, 3).expect("k = 3 is supported");
        three_nets = Some(found.len());
        if let Ok(ex) = extract_3nets(&inc) {
            let ok = ex.count_identity_holds() && ex.nets == found;
            three_net_identity = Some(ok);
            if !ok && !inc.is_pencil() {
                violations.push("3-net extraction disagrees with search".into());
            }
        }
    }
    let mut four_nets = None;
    if inc.n() % 4 == 0 {
        let found = search_nets(&inc, 4).expect("k = 4 is supported");
        if !found.is_empty() {
            violations.push(format!("{} real 4-nets found", found.len()));
        }
        four_nets = Some(found.len());
    }
    CorpusEntry {
        file: file.to_string(),
        digest: digest.to_string(),
        lines: parsed.n(),
        chambers: count,
        chambers_expected: expected,
        h1,
        f2_cocycles: cocycles.len(),
        separated,
        nonsep_skipped,
        three_nets,
        three_net_identity,
        four_nets,
        violations,
    }
}

fn corpus(dir: &Path) -> Res<(String, Findings)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| pre(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "arr"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(pre(format!("no .arr files in {}", dir.display())));
    }
    let mut entries = Vec::new();
    let mut all_digests = String::new();
    for f in &files {
        let inp = load(f, None)?;
        let name = f.file_name().unwrap().to_string_lossy().into_owned();
        all_digests += &format!("{name} {}\n", inp.digest);
        entries.push(check_arrangement(&name, &inp.digest, &inp.arrangement));
    }
    let violation = entries.iter().any(|e| !e.violations.is_empty());
    let res = json!({ "files": entries.len(), "entries": entries });
    Ok((sha256_hex(all_digests.as_bytes()), Findings { violation, ..Findings::ok(res) }))
}
