use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use ea_core::structure::{blocks, center, meager_gea, sharp_set};
use ea_core::{
    derive, find_isomorphism, parse_ea, parse_triple, property_report, reconstruct_tea, serialize_ea,
    serialize_triple, validate_ea, verify_triple_theorem, DerivedStructure, EffectAlgebra, ElemSet, GeneratorSpec,
};
use rayon::prelude::*;
use serde_json::json;

use crate::{Cli, Command};

pub const PROPERTY_FAILS: u8 = 1;
pub const INTERNAL: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Io(PathBuf, std::io::Error),
    Core(Option<PathBuf>, ea_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) => 2,
            CliError::Core(_, e) => match e {
                ea_core::Error::Precondition(_) => PROPERTY_FAILS,
                ea_core::Error::Consistency(_) => INTERNAL,
                _ => 2,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Core(Some(p), e) => write!(f, "{}: {e}", p.display()),
            CliError::Core(None, e) => write!(f, "{e}"),
        }
    }
}

impl From<ea_core::Error> for CliError {
    fn from(e: ea_core::Error) -> Self {
        CliError::Core(None, e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write_or_print(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(p.clone(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn at(path: &Path) -> impl Fn(ea_core::Error) -> CliError + '_ {
    move |e| CliError::Core(Some(path.to_path_buf()), e)
}

fn load(path: &Path) -> Result<EffectAlgebra> {
    parse_ea(&read(path)?).map_err(at(path))
}

fn load_derived(path: &Path) -> Result<DerivedStructure> {
    derive(&load(path)?).map_err(at(path))
}

fn name_of(path: &Path) -> String {
    path.display().to_string()
}

fn label_set(d: &DerivedStructure, s: ElemSet) -> Vec<String> {
    d.labels_of(s)
}

fn print_listing(cli: &Cli, path: &Path, key: &str, items: &[String]) {
    if cli.json {
        let doc = json!({ "algebra": name_of(path), key: items });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
    } else {
        println!("{}", items.join(" "));
    }
}

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Validate { file } => validate(cli, file),
        Command::Props { file } => {
            let d = load_derived(file)?;
            let report = property_report(&d)?;
            if cli.json {
                print!("{}", report.to_json(&name_of(file), None));
            } else {
                print!("{report}");
            }
            Ok(0)
        }
        Command::Sharp { file } => {
            let d = load_derived(file)?;
            print_listing(cli, file, "sharp", &label_set(&d, sharp_set(&d)));
            Ok(0)
        }
        Command::Meager { file } => meager(cli, file),
        Command::Center { file } => {
            let d = load_derived(file)?;
            print_listing(cli, file, "center", &label_set(&d, center(&d)?));
            Ok(0)
        }
        Command::Blocks { file } => block_listing(cli, file),
        Command::Triple { file, out } => {
            let d = load_derived(file)?;
            let (t, _) = ea_core::extract_triple(&d).map_err(at(file))?;
            write_or_print(out.as_ref(), &serialize_triple(&t))?;
            Ok(0)
        }
        Command::Reconstruct { file, out } => {
            let t = parse_triple(&read(file)?).map_err(at(file))?;
            let tea = reconstruct_tea(&t).map_err(at(file))?;
            write_or_print(out.as_ref(), &serialize_ea(&tea.algebra))?;
            Ok(0)
        }
        Command::Verify { file: Some(file), .. } => verify_one(cli, file),
        Command::Verify { all: Some(dir), .. } => verify_all(cli, dir),
        Command::Verify { .. } => unreachable!("clap requires a file or --all"),
        Command::Gen { spec } => {
            let spec: GeneratorSpec = spec.join(" ").parse()?;
            print!("{}", serialize_ea(&ea_core::generate(&spec)?));
            Ok(0)
        }
        Command::Enum { max_size, out } => enumerate(cli, *max_size, out),
        Command::Iso { a, b } => iso(cli, a, b),
    }
}

fn validate(cli: &Cli, file: &Path) -> Result<u8> {
    let e = load(file)?;
    let report = validate_ea(&e);
    let shown: Vec<_> = if cli.verbose {
        report.violations.iter().collect()
    } else {
        // first witness per axiom
        let mut seen = Vec::new();
        report
            .violations
            .iter()
            .filter(|v| {
                let fresh = !seen.contains(&v.axiom);
                seen.push(v.axiom);
                fresh
            })
            .collect()
    };
    if cli.json {
        let mut witnesses = serde_json::Map::new();
        for v in &shown {
            witnesses
                .entry(v.axiom.to_string())
                .or_insert_with(|| json!(e.labels_of(v.witness.iter().copied())));
        }
        let doc = json!({
            "algebra": name_of(file),
            "flags": { "valid": report.valid },
            "n": e.len(),
            "witnesses": witnesses,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
    } else if report.valid {
        println!("valid");
    } else {
        for v in &shown {
            println!("({}) {}", v.axiom, e.labels_of(v.witness.iter().copied()).join(" "));
        }
    }
    Ok(if report.valid { 0 } else { PROPERTY_FAILS })
}

fn meager(cli: &Cli, file: &Path) -> Result<u8> {
    let d = load_derived(file)?;
    let m = meager_gea(&d)?;
    let labels: Vec<String> = m.embed.iter().map(|&x| d.label(x).to_string()).collect();
    if cli.json {
        let sums: Vec<[String; 3]> = meager_sums(&d, &m.embed);
        let doc = json!({ "algebra": name_of(file), "meager": labels, "sums": sums });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
    } else {
        println!("{}", labels.join(" "));
        if cli.verbose {
            for [x, y, z] in meager_sums(&d, &m.embed) {
                println!("{x} + {y} = {z}");
            }
        }
    }
    Ok(0)
}

fn meager_sums(d: &DerivedStructure, embed: &[usize]) -> Vec<[String; 3]> {
    let mut out = Vec::new();
    for (i, &x) in embed.iter().enumerate() {
        for &y in &embed[i..] {
            if let Some(z) = d.sum(x, y).filter(|z| embed.contains(z)) {
                out.push([d.label(x).into(), d.label(y).into(), d.label(z).into()]);
            }
        }
    }
    out
}

fn block_listing(cli: &Cli, file: &Path) -> Result<u8> {
    let d = load_derived(file)?;
    let b = blocks(&d)?;
    if !b.homogeneous {
        eprintln!("warning: not homogeneous; blocks are maximal internally compatible sets containing 1");
    }
    let sets: Vec<Vec<String>> = b.blocks.iter().map(|blk| d.labels_of(blk.members)).collect();
    if cli.json {
        let doc = json!({ "algebra": name_of(file), "blocks": sets, "homogeneous": b.homogeneous });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
    } else {
        for s in sets {
            println!("{{{}}}", s.join(", "));
        }
    }
    Ok(0)
}

fn verify_one(cli: &Cli, file: &Path) -> Result<u8> {
    let d = load_derived(file)?;
    let report = property_report(&d)?;
    if !report.flag("trt") {
        let failed = ea_core::trt_check(&d)
            .map_err(at(file))?
            .first_failure()
            .map_or("?", |(name, _)| name);
        eprintln!(
            "{}: not a TRT-effect algebra: {failed} fails [{}]",
            name_of(file),
            report.witnesses["trt"].join(", ")
        );
        if cli.json {
            print!("{}", report.to_json(&name_of(file), None));
        }
        return Ok(PROPERTY_FAILS);
    }
    let v = verify_triple_theorem(&d).map_err(at(file))?;
    let certificate = v.certificate(&d);
    if cli.json {
        print!("{}", report.to_json(&name_of(file), Some(&certificate)));
    } else {
        for line in &certificate {
            println!("{line}");
        }
        if cli.verbose {
            print!("{}", serialize_triple(&v.triple));
        }
    }
    if let Some(f) = &v.failure {
        eprintln!("{}: {f}", name_of(file));
    }
    if v.disagreement() {
        eprintln!(
            "{}: φ {} but the independent search {}",
            name_of(file),
            if v.failure.is_none() { "is an isomorphism" } else { "fails" },
            if v.independent.is_some() { "found one" } else { "found none" }
        );
        return Ok(INTERNAL);
    }
    Ok(if v.holds() { 0 } else { PROPERTY_FAILS })
}

enum Outcome {
    Verified,
    NotTrt,
    Failed(String),
    Disagreement(String),
}

fn verify_all(cli: &Cli, dir: &Path) -> Result<u8> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::Io(dir.to_path_buf(), e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "ea"))
        .collect();
    // `<n>-<serial>.ea` in numeric order
    files.sort_by_cached_key(|p| {
        let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let nums: Vec<u64> = stem.split('-').map_while(|t| t.parse().ok()).collect();
        (nums, p.clone())
    });
    let outcomes: Vec<Result<Outcome>> = files
        .par_iter()
        .map(|f| {
            let d = load_derived(f)?;
            if !ea_core::trt_check(&d)?.is_trt {
                return Ok(Outcome::NotTrt);
            }
            let v = verify_triple_theorem(&d).map_err(at(f))?;
            Ok(if v.disagreement() {
                Outcome::Disagreement(v.failure.unwrap_or_else(|| "independent search found none".into()))
            } else if let Some(msg) = v.failure {
                Outcome::Failed(msg)
            } else {
                Outcome::Verified
            })
        })
        .collect();
    let mut code = 0;
    let mut rows = Vec::new();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for (f, o) in files.iter().zip(outcomes) {
        let (status, detail) = match o {
            Ok(Outcome::Verified) => ("verified", String::new()),
            Ok(Outcome::NotTrt) => ("not-trt", String::new()),
            Ok(Outcome::Failed(m)) => {
                code = code.max(PROPERTY_FAILS);
                ("failed", m)
            }
            Ok(Outcome::Disagreement(m)) => {
                code = INTERNAL;
                ("disagreement", m)
            }
            Err(e) => {
                code = code.max(e.exit_code());
                ("error", e.to_string())
            }
        };
        if !cli.json {
            if detail.is_empty() {
                writeln!(out, "{} {status}", name_of(f)).ok();
            } else {
                writeln!(out, "{} {status}: {detail}", name_of(f)).ok();
            }
        }
        rows.push(json!({ "file": name_of(f), "status": status, "detail": detail }));
    }
    if cli.json {
        let doc = json!({ "directory": name_of(dir), "results": rows });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializes")).ok();
    }
    Ok(code)
}

fn enumerate(cli: &Cli, max_size: usize, out: &Path) -> Result<u8> {
    let all = ea_core::enumerate_all(max_size)?;
    fs::create_dir_all(out).map_err(|e| CliError::Io(out.to_path_buf(), e))?;
    let mut index = String::from("# size count\n");
    for n in 2..=max_size {
        let of_size: Vec<&EffectAlgebra> = all.iter().filter(|e| e.len() == n).collect();
        for (serial, e) in of_size.iter().enumerate() {
            let path = out.join(format!("{n}-{}.ea", serial + 1));
            fs::write(&path, serialize_ea(e)).map_err(|err| CliError::Io(path.clone(), err))?;
        }
        index.push_str(&format!("{n} {}\n", of_size.len()));
    }
    let path = out.join("index.txt");
    fs::write(&path, &index).map_err(|e| CliError::Io(path.clone(), e))?;
    if cli.verbose || !cli.json {
        print!("{index}");
    }
    Ok(0)
}

fn iso(cli: &Cli, a: &Path, b: &Path) -> Result<u8> {
    let (ea, eb) = (load(a)?, load(b)?);
    derive(&ea).map_err(at(a))?;
    derive(&eb).map_err(at(b))?;
    let found = find_isomorphism(&ea, &eb)?;
    if cli.json {
        let map: Vec<[&str; 2]> = found
            .iter()
            .flat_map(|f| f.iter().enumerate().map(|(x, &y)| [ea.label(x), eb.label(y)]))
            .collect();
        let doc = json!({ "isomorphic": found.is_some(), "map": map });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
    } else {
        match &found {
            Some(f) => {
                for (x, &y) in f.iter().enumerate() {
                    println!("{} -> {}", ea.label(x), eb.label(y));
                }
            }
            None => println!("NOT ISOMORPHIC"),
        }
    }
    Ok(if found.is_some() { 0 } else { PROPERTY_FAILS })
}
