use std::collections::BTreeSet;
use std::fs;
use std::process::{Command, Output};

const X: [&str; 4] = ["--plus", "(.(...).)", "--minus", "(..(...))"];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thompson-links"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn with(cmd: &str, rest: &[&str]) -> Vec<String> {
    std::iter::once(cmd)
        .chain(rest.iter().copied())
        .map(String::from)
        .collect()
}

/// One working invocation per subcommand.
fn sample_invocations() -> Vec<Vec<String>> {
    vec![
        with("normalize", &["--plus", "((...)..)", "--minus", "((...)..)"]),
        with("perm", &X),
        with("components", &X),
        with("pdcode", &X),
        with("gauss", &X),
        with("render", &X),
        with("census", &["--max-n", "2"]),
        with("verify", &["--max-n", "2"]),
        with("walk", &["--steps", "3", "--samples", "10"]),
        with(
            "multiply",
            &[
                "--plus",
                "(.(...).)",
                "--minus",
                "(..(...))",
                "--plus",
                "(..(...))",
                "--minus",
                "(.(...).)",
            ],
        ),
        with("inverse", &X),
        with("iota", &["--plus", "((..).)", "--minus", "(.(..))"]),
        with("plmap", &X),
        with("matching", &["--tree", "(.(...).)"]),
        with("trees", &["--leaves", "5"]),
    ]
}

#[test]
fn every_subcommand_is_covered_and_runs() {
    let help = stdout(&["--help"]);
    let listed: BTreeSet<String> = help
        .lines()
        .skip_while(|l| !l.starts_with("Commands:"))
        .skip(1)
        .take_while(|l| l.starts_with("  "))
        .filter_map(|l| l.split_whitespace().next())
        .filter(|c| *c != "help")
        .map(String::from)
        .collect();
    let samples = sample_invocations();
    let covered: BTreeSet<String> = samples.iter().map(|s| s[0].clone()).collect();
    assert_eq!(listed, covered);
    for s in &samples {
        let args: Vec<&str> = s.iter().map(String::as_str).collect();
        let out = run(&args);
        assert!(
            out.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stdout.is_empty(), "{args:?} printed nothing");
        let mut json_args = args.clone();
        json_args.extend(["--format", "json"]);
        if args[0] != "render" {
            let text = stdout(&json_args);
            serde_json::from_str::<serde_json::Value>(&text).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        }
    }
}

#[test]
fn worked_example_permutation() {
    let mut args = vec!["perm"];
    args.extend(X);
    assert_eq!(
        stdout(&args),
        "pi(T+)       (0,3)(1,5)(2,4)\n\
         pi(T-)       (0,2)(1,4)(3,5)\n\
         composition  (0,4,5)(1,2,3)\n\
         traversal    [1,4,2,0,3,5]\n\
         components   1\n"
    );
    args.extend(["--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&args)).unwrap();
    assert_eq!(v["traversal_cycles"], serde_json::json!([[1, 4, 2, 0, 3, 5]]));
    assert_eq!(v["plus"], serde_json::json!([[0, 3], [1, 5], [2, 4]]));
    assert_eq!(v["component_count"], 1);
}

#[test]
fn trivial_components() {
    assert_eq!(stdout(&["components", "--plus", ".", "--minus", "."]), "1\n");
    assert_eq!(
        stdout(&["components", "--trace", "--plus", "(...)", "--minus", "(...)"]),
        "2\n"
    );
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(run(&["perm", "--plus", "(...)"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--min-n", "3", "--max-n", "1"]).status.code(), Some(2));
    // domain errors
    let bad = run(&["perm", "--plus", "(..)", "--minus", "(...)"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("plus tree"));
    assert_eq!(run(&["perm", "--plus", "(...)", "--minus", "."]).status.code(), Some(1));
    assert_eq!(run(&["trees", "--leaves", "4"]).status.code(), Some(1));
    let stuck = run(&["matching", "--chords", "(0,2)(1,3)(4,9)(5,8)(6,11)(7,10)"]);
    assert_eq!(stuck.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&stuck.stdout).contains("violations  none"));
}

#[test]
fn verify_passes_up_to_three() {
    let out = run(&["verify", "--max-n", "3", "--workers", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with("all checks passed\n"));
    assert_eq!(text.lines().filter(|l| l.contains(" ok ")).count(), 15);
}

#[test]
fn render_writes_files_atomically_and_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for path in [&a, &b] {
        let mut args = vec![
            "render",
            "--to",
            "svg",
            "--scale",
            "30",
            "--gap",
            "0.2",
            "-o",
            path.to_str().unwrap(),
        ];
        args.extend(X);
        assert!(stdout(&args).is_empty());
    }
    let svg = fs::read(&a).unwrap();
    assert_eq!(svg, fs::read(&b).unwrap());
    assert_eq!(String::from_utf8_lossy(&svg).matches("class=\"gap\"").count(), 4);

    let mut tikz = vec!["render", "--to", "tikz"];
    tikz.extend(X);
    assert_eq!(stdout(&tikz), stdout(&tikz));
    assert!(stdout(&tikz).contains("\\begin{tikzpicture}"));

    let c = dir.path().join("c.svg");
    let out = run(&["render", "--plus", "(...)", "--minus", "(..", "-o", c.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!c.exists());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn json_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("x.json");
    fs::write(&one, r#"{"arity":3,"plus":"(.(...).)","minus":"(..(...))"}"#).unwrap();
    assert_eq!(stdout(&["components", "--input", one.to_str().unwrap()]), "1\n");

    let two = dir.path().join("xs.json");
    fs::write(
        &two,
        r#"[{"arity":3,"plus":"(.(...).)","minus":"(..(...))"},{"arity":3,"plus":"(..(...))","minus":"(.(...).)"}]"#,
    )
    .unwrap();
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["multiply", "-i", two.to_str().unwrap(), "--format", "json"])).unwrap();
    assert_eq!(v, serde_json::json!({"arity": 3, "plus": ".", "minus": "."}));

    let gens = dir.path().join("gens.json");
    fs::write(&gens, r#"[{"arity":2,"plus":"((..).)","minus":"(.(..))"}]"#).unwrap();
    let walk = stdout(&[
        "walk",
        "--generators",
        gens.to_str().unwrap(),
        "--steps",
        "1",
        "--samples",
        "5",
    ]);
    assert!(walk.contains("\n1           5\n"), "{walk}");

    let mixed = dir.path().join("mixed.json");
    fs::write(
        &mixed,
        r#"[{"arity":2,"plus":"(..)","minus":"(..)"},{"arity":3,"plus":"(...)","minus":"(...)"}]"#,
    )
    .unwrap();
    assert_eq!(run(&["multiply", "-i", mixed.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(
        run(&["walk", "--generators", mixed.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn outputs_are_identical_across_runs_and_workers() {
    let a = stdout(&["census", "--max-n", "4", "--workers", "1", "--format", "json"]);
    let b = stdout(&["census", "--max-n", "4", "--workers", "4", "--format", "json"]);
    assert_eq!(a, b);
    assert_eq!(
        stdout(&["census", "--max-n", "3", "--format", "csv"]),
        stdout(&["census", "--max-n", "3", "--format", "csv", "--workers", "3"])
    );
    let w = [
        "walk",
        "--steps",
        "15",
        "--samples",
        "300",
        "--seed",
        "42",
        "--format",
        "json",
    ];
    let one = stdout(&w);
    let mut par = w.to_vec();
    par.extend(["--workers", "4"]);
    assert_eq!(one, stdout(&w));
    assert_eq!(one, stdout(&par));
}

#[test]
fn group_operations() {
    assert_eq!(
        stdout(&["iota", "--plus", "((..).)", "--minus", "(.(..))"]),
        "plus   ((...)..)\nminus  (..(...))\n"
    );
    let mut inv = vec!["inverse"];
    inv.extend(X);
    assert_eq!(stdout(&inv), "plus   (..(...))\nminus  (.(...).)\n");
    assert_eq!(
        stdout(&["normalize", "--plus", "((...)(...).)", "--minus", "((...).(...))"]),
        "plus   (.(...).)\nminus  (..(...))\n"
    );
    let mut pl = vec!["plmap"];
    pl.extend(X);
    assert_eq!(
        stdout(&pl),
        "x    y    slope\n0    0    1\n1/3  1/3  1/3\n2/3  4/9  1\n7/9  5/9  1\n8/9  2/3  3\n1    1\n"
    );
    pl.extend(["--format", "json"]);
    assert_eq!(
        stdout(&pl).split_whitespace().collect::<String>(),
        "[[[0,0],[0,0]],[[1,1],[1,1]],[[2,1],[4,2]],[[7,2],[5,2]],[[8,2],[2,1]],[[1,0],[1,0]]]"
    );
}

#[test]
fn tree_listing() {
    assert_eq!(stdout(&["trees", "--leaves", "3"]), "(...)\n");
    assert_eq!(stdout(&["trees", "--leaves", "5"]).lines().count(), 3);
    assert_eq!(stdout(&["trees", "--leaves", "13", "--count"]), "1428\n");
    assert_eq!(stdout(&["trees", "--leaves", "4", "--arity", "2", "--count"]), "5\n");
    let r = stdout(&["trees", "--leaves", "21", "--random", "--seed", "5"]);
    assert_eq!(r, stdout(&["trees", "--leaves", "21", "--random", "--seed", "5"]));
    assert_eq!(r.matches('.').count(), 21);
}
