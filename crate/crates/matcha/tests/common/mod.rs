#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use matcha::check::Exit;
use matcha::cli::{run, Cli};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn copy_dir(src: &Path, dst: &Path) {
    for e in walkdir::WalkDir::new(src) {
        let e = e.unwrap();
        let rel = e.path().strip_prefix(src).unwrap();
        let to = dst.join(rel);
        if e.file_type().is_dir() {
            fs::create_dir_all(&to).unwrap();
        } else {
            fs::copy(e.path(), &to).unwrap();
        }
    }
}

pub struct Run {
    pub exit: Exit,
    pub stdout: String,
    pub stderr: String,
}

/// Run the CLI in-process against `root`, offline.
pub fn matcha(root: &Path, args: &[&str]) -> Run {
    let mut argv = vec!["matcha", "--offline", "--project", root.to_str().unwrap()];
    argv.extend_from_slice(args);
    let cli = Cli::try_parse_from(argv).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let exit = run(&cli, &mut out, &mut err);
    Run {
        exit,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn expect(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// The recipe app walkthrough: initial check fails, scripted annotation,
/// XML generation and review, clean check, export against the golden
/// CSV, and repeatable output.
pub fn carol_walkthrough(dir: &Path) -> Result<(), String> {
    copy_dir(&fixtures().join("carol"), dir);
    let first = matcha(dir, &["--format", "json", "check"]);
    let report: serde_json::Value = serde_json::from_str(&first.stdout).map_err(|e| e.to_string())?;
    let errors: Vec<&str> = report["diagnostics"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|d| d["severity"] == "error")
        .map(|d| d["code"].as_str().unwrap())
        .collect();
    expect(first.exit == Exit::Errors, || format!("first check exit {:?}", first.exit))?;
    expect(errors.len() >= 3, || format!("first check found {} errors", errors.len()))?;
    for code in ["UncoveredAccessCall", "UncoveredTransmissionCall", "UnverifiedLibrary"] {
        expect(errors.contains(&code), || format!("first check lacks {code}: {errors:?}"))?;
    }

    let answers = dir.join("answers.json");
    let a = matcha(dir, &["annotate", "--answers", answers.to_str().unwrap()]);
    expect(a.exit == Exit::Clean && a.stdout.contains("2 annotated, 0 skipped"), || {
        format!("annotate: {:?} {} {}", a.exit, a.stdout, a.stderr)
    })?;

    let x = matcha(dir, &["xml"]);
    expect(x.exit == Exit::Clean, || format!("xml: {}", x.stderr))?;
    let xml_path = dir.join("matcha-libraries.xml");
    let xml = fs::read_to_string(&xml_path).map_err(|e| e.to_string())?;
    let reviewed: String = xml
        .lines()
        .filter(|l| !l.contains("key=\"name-collect\""))
        .map(|l| l.replace("verified=\"false\"", "verified=\"true\"") + "\n")
        .collect();
    expect(reviewed.len() < xml.len(), || String::from("no name-collect tag to remove"))?;
    fs::write(&xml_path, reviewed).unwrap();

    let clean = matcha(dir, &["--format", "json", "check"]);
    expect(clean.exit == Exit::Clean, || format!("second check: {}", clean.stdout))?;

    let e = matcha(dir, &["export"]);
    expect(e.exit == Exit::Clean, || format!("export: {} {}", e.stdout, e.stderr))?;
    let got = fs::read_to_string(dir.join("data-safety.csv")).unwrap();
    let want = fs::read_to_string(fixtures().join("carol-label.csv")).unwrap();
    expect(got == want, || format!("exported CSV differs:\n{got}"))?;
    expect(!got.contains("PersonalInfo,Name,"), || String::from("removed name tag still on the label"))?;

    let again = matcha(dir, &["--format", "json", "check"]);
    expect(again.stdout == clean.stdout, || String::from("check output changed between runs"))?;
    let outputs = ["data-safety.csv", "data-safety-console.csv", "data-safety.json"];
    let before: Vec<Vec<u8>> = outputs.iter().map(|f| fs::read(dir.join(f)).unwrap()).collect();
    matcha(dir, &["export"]);
    let after: Vec<Vec<u8>> = outputs.iter().map(|f| fs::read(dir.join(f)).unwrap()).collect();
    expect(before == after, || String::from("exports changed between runs"))
}

#[path = "../../../core/tests/support/corpus.rs"]
pub mod corpus;

/// Write a synthetic project of about `lines` Java lines under `dir`.
/// Returns the number of lines written.
pub fn synthetic_project(dir: &Path, lines: usize, seed: u64) -> usize {
    let mut written = 0;
    let mut i = 0;
    while written < lines {
        let f = corpus::generate_file(seed, i, 200);
        let path = dir.join("app").join(&f.path);
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        written += f.source.lines().count();
        fs::write(path, f.source).unwrap();
        i += 1;
    }
    fs::write(
        dir.join("app/build.gradle"),
        "dependencies {\n    implementation 'com.squareup.okhttp3:okhttp:4.11.0'\n    implementation 'com.google.firebase:firebase-storage:20.2.1'\n}\n",
    )
    .unwrap();
    written
}

/// Generate, review, regenerate, then feed a knowledge base with a new
/// optional practice to a verified and to an unverified entry.
pub fn xml_lifecycle(dir: &Path) -> Result<(), String> {
    copy_dir(&fixtures().join("carol"), dir);
    let xml_path = dir.join("matcha-libraries.xml");
    let read = || fs::read_to_string(&xml_path).unwrap();

    let g = matcha(dir, &["xml"]);
    expect(g.exit == Exit::Clean && g.stdout.contains("added firebase-authentication"), || g.stdout.clone())?;
    let generated = read();
    let again = matcha(dir, &["xml"]);
    expect(again.stdout.contains("is up to date") && read() == generated, || String::from("second xml run changed the file"))?;

    let reviewed: String = generated
        .lines()
        .filter(|l| !l.contains("key=\"email-collect\""))
        .map(|l| l.replace("verified=\"false\"", "verified=\"true\"") + "\n")
        .collect();
    fs::write(&xml_path, &reviewed).unwrap();
    matcha(dir, &["xml"]);
    expect(read() == reviewed, || format!("regenerating a reviewed file changed it:\n{}", read()))?;
    let c = matcha(dir, &["--format", "json", "check"]);
    expect(!c.stdout.contains("UnverifiedLibrary"), || String::from("reviewed libraries still unverified"))?;

    let kb_text = include_str!("../../../core/data/sdk_kb.json");
    let mut kb: serde_json::Value = serde_json::from_str(kb_text).unwrap();
    let entry = kb["entries"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|e| e["sdk_id"] == "firebase-authentication")
        .unwrap();
    entry["optional_practices"].as_array_mut().unwrap().push(serde_json::json!({
        "key": "photo-collect", "data_type": "Photos", "role": "collect",
        "purposes": ["AppFunctionality"], "ephemeral": false, "optional": true,
        "condition": "Only if the app uploads a profile photo"
    }));
    fs::write(dir.join("updated-kb.json"), serde_json::to_string_pretty(&kb).unwrap()).unwrap();
    fs::write(dir.join("matcha.toml"), "source_roots = [\"app/src/main/java\"]\nkb = \"updated-kb.json\"\n").unwrap();

    let stale = matcha(dir, &["xml"]);
    expect(stale.stdout.contains("StaleVerification") && stale.stdout.contains("photo-collect"), || {
        format!("no stale warning: {}{}", stale.stdout, stale.stderr)
    })?;
    expect(read() == reviewed, || String::from("a verified entry was rewritten"))?;
    let c = matcha(dir, &["--format", "json", "check"]);
    expect(c.stdout.contains("StaleVerification"), || String::from("check does not report the stale entry"))?;

    fs::write(&xml_path, reviewed.replace("lib=\"firebase-authentication\" verified=\"true\"", "lib=\"firebase-authentication\" verified=\"false\"")).unwrap();
    let ext = matcha(dir, &["xml"]);
    let extended = read();
    expect(ext.stdout.contains("extended firebase-authentication"), || ext.stdout.clone())?;
    expect(extended.contains("key=\"photo-collect\"") && !extended.contains("key=\"email-collect\""), || extended.clone())?;
    expect(extended.contains("offered=\"name-collect email-collect phone-collect photo-collect\""), || extended.clone())?;
    matcha(dir, &["xml"]);
    expect(read() == extended, || String::from("extended file is not a fixed point"))
}
