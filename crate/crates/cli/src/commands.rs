use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thompson_links::census::{
    carets_for_leaves, census, census_csv, count_table, default_generators, enumerate, fuss_catalan,
    generators_from_records, random_tree_with_carets, random_walk, tree_count, verify_characterization, CensusRecord,
};
use thompson_links::linkdiag::{
    build_diagram, gauss_code, pd_code, render, trace_components, Convention, RenderFormat, RenderOptions,
};
use thompson_links::tangles::{
    component_count, matching_to_tree, tangled_matching, thompson_permutation, validate_matching, TangledMatching,
    Violation,
};
use thompson_links::trees::{AnyPair, PairRecord, PlMap};
use thompson_links::{TernaryPair, Tree, TreePair};

use crate::input::{parse_chords, read_generator_file, usage};
use crate::{Command, ConventionArg, DiagramArgs, DrawingFormat, Format, TableFormat};

type Output = (String, ExitCode);

fn ok(text: String) -> Result<Output> {
    Ok((text, ExitCode::SUCCESS))
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Two-column table with the first column padded to a common width.
fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn pair_text(p: &AnyPair) -> String {
    let r = PairRecord::from(p);
    table(&[("plus", r.plus), ("minus", r.minus)])
}

fn emit_pair(p: &AnyPair, format: Format) -> Result<Output> {
    match format {
        Format::Text => ok(pair_text(p)),
        Format::Json => ok(json(&PairRecord::from(p))?),
    }
}

fn convention(c: ConventionArg) -> Convention {
    match c {
        ConventionArg::Standard => Convention::Standard,
        ConventionArg::Positive => Convention::Positive,
    }
}

fn cycles_text(cycles: &[Vec<usize>]) -> String {
    cycles
        .iter()
        .map(|c| format!("[{}]", c.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn violation_text(v: &Violation) -> String {
    let list = |xs: &[usize]| xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let what = match v {
        Violation::Malformed { reason } => format!("malformed: {reason}"),
        Violation::Uncrossed { chord } => format!("chord ({}) crosses no other chord", list(chord)),
        Violation::TripleCrossing { witness } => format!("three pairwise crossing chords at {}", list(witness)),
        Violation::DoubleBridge { witness } => format!("forbidden bridge pattern at {}", list(witness)),
        Violation::CrossingCount { expected, found } => format!("{found} crossings, expected {expected}"),
    };
    format!("property {}: {what}", v.property().number())
}

fn write_atomically(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp =
        tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn run(command: Command) -> Result<Output> {
    match command {
        Command::Normalize { element, out } => {
            let p = match element.single(3)? {
                AnyPair::Binary(p) => AnyPair::Binary(p.reduce()),
                AnyPair::Ternary(p) => AnyPair::Ternary(p.reduce()),
            };
            emit_pair(&p, out.format)
        }
        Command::Perm { element, out } => perm(&element.ternary()?, out.format),
        Command::Components { element, trace, out } => {
            let p = element.ternary()?;
            let count = if trace {
                trace_components(&build_diagram(&p, Convention::Standard))?.component_count()
            } else {
                component_count(&p)
            };
            match out.format {
                Format::Text => ok(format!("{count}\n")),
                Format::Json => ok(json(&serde_json::json!({
                    "components": count,
                    "method": if trace { "trace" } else { "orbits" },
                }))?),
            }
        }
        Command::Pdcode { diagram, out } => {
            let d = diagram_of(&diagram)?;
            let code = pd_code(&d)?;
            match out.format {
                Format::Text => ok(code.to_text()),
                Format::Json => ok(json(&code)?),
            }
        }
        Command::Gauss { diagram, out } => {
            let d = diagram_of(&diagram)?;
            let code = gauss_code(&d)?;
            match out.format {
                Format::Text => ok(code.to_string()),
                Format::Json => ok(json(&code)?),
            }
        }
        Command::Render {
            diagram,
            to,
            scale,
            gap,
            no_labels,
            output,
        } => {
            if !(scale.is_finite() && scale > 0.0) {
                return Err(usage("--scale must be positive"));
            }
            if !(gap.is_finite() && (0.0..0.5).contains(&gap)) {
                return Err(usage("--gap must lie in [0, 0.5)"));
            }
            let d = diagram_of(&diagram)?;
            let format = match to {
                DrawingFormat::Svg => RenderFormat::Svg,
                DrawingFormat::Tikz => RenderFormat::Tikz,
            };
            let opts = RenderOptions {
                scale,
                gap,
                labels: !no_labels,
            };
            let doc = render(&d, format, &opts);
            match output {
                Some(path) => {
                    write_atomically(&path, &doc)?;
                    ok(String::new())
                }
                None => ok(doc),
            }
        }
        Command::Census {
            n,
            min_n,
            max_n,
            workers,
            format,
        } => {
            let range = match n {
                Some(n) => n..=n,
                None => min_n..=max_n,
            };
            if range.is_empty() {
                return Err(usage("--min-n exceeds --max-n"));
            }
            if *range.end() > 7 {
                return Err(usage("census is limited to n <= 7"));
            }
            let records = range.map(|n| census(n, workers)).collect::<Result<Vec<_>, _>>()?;
            match format {
                TableFormat::Text => ok(census_text(&records)),
                TableFormat::Json => ok(json(&records)?),
                TableFormat::Csv => ok(census_csv(&records)),
            }
        }
        Command::Verify { max_n, workers, out } => verify(max_n, workers, out.format),
        Command::Walk {
            generators,
            steps,
            samples,
            seed,
            workers,
            out,
        } => {
            let gens = match generators {
                Some(path) => generators_from_records(&read_generator_file(&path)?)?,
                None => default_generators(),
            };
            let report = random_walk(&gens, steps, samples, seed, workers)?;
            match out.format {
                Format::Json => ok(json(&report)?),
                Format::Text => {
                    let mut s = format!(
                        "seed {}  steps {}  samples {}\ncomponents  samples\n",
                        report.seed, report.steps, report.samples
                    );
                    for (k, v) in &report.components {
                        let _ = writeln!(s, "{k:<10}  {v}");
                    }
                    ok(s)
                }
            }
        }
        Command::Multiply { element, out } => {
            let all = element.elements(3)?;
            let product = match &all[0] {
                AnyPair::Binary(_) => AnyPair::Binary(product(&all, |p| match p {
                    AnyPair::Binary(b) => Some(b),
                    _ => None,
                })?),
                AnyPair::Ternary(_) => AnyPair::Ternary(product(&all, |p| match p {
                    AnyPair::Ternary(t) => Some(t),
                    _ => None,
                })?),
            };
            emit_pair(&product, out.format)
        }
        Command::Inverse { element, out } => {
            let p = match element.single(3)? {
                AnyPair::Binary(p) => AnyPair::Binary(p.inverse()),
                AnyPair::Ternary(p) => AnyPair::Ternary(p.inverse()),
            };
            emit_pair(&p, out.format)
        }
        Command::Iota { element, out } => emit_pair(&AnyPair::Ternary(element.binary()?.iota()), out.format),
        Command::Plmap { element, out } => match element.single(3)? {
            AnyPair::Binary(p) => plmap(&p.pl_map(), out.format),
            AnyPair::Ternary(p) => plmap(&p.pl_map(), out.format),
        },
        Command::Matching { tree, chords, out } => match (tree, chords) {
            (Some(t), _) => {
                let tree: Tree<3> = t.parse()?;
                let m = tangled_matching(&tree);
                match out.format {
                    Format::Text => ok(table(&[
                        ("matching", m.to_string()),
                        ("crossings", m.crossing_count().to_string()),
                    ])),
                    Format::Json => ok(json(&serde_json::json!({
                        "tree": tree.to_string(),
                        "matching": m,
                        "crossings": m.crossing_count(),
                    }))?),
                }
            }
            (None, Some(c)) => matching_report(&TangledMatching::from_pairs(&parse_chords(&c)?)?, out.format),
            (None, None) => Err(usage("pass --tree or --chords")),
        },
        Command::Trees {
            leaves,
            arity,
            count,
            random,
            seed,
            out,
        } => match arity {
            2 => trees::<2>(leaves, count, random, seed, out.format),
            _ => trees::<3>(leaves, count, random, seed, out.format),
        },
    }
}

fn product<const K: usize>(all: &[AnyPair], pick: impl Fn(&AnyPair) -> Option<&TreePair<K>>) -> Result<TreePair<K>> {
    let mut acc = TreePair::<K>::identity();
    for p in all {
        let Some(p) = pick(p) else {
            bail!("cannot multiply elements of different arity");
        };
        acc = acc.multiply(p);
    }
    Ok(acc)
}

fn diagram_of(args: &DiagramArgs) -> Result<thompson_links::linkdiag::LinkDiagram> {
    Ok(build_diagram(&args.element.ternary()?, convention(args.convention)))
}

fn perm(p: &TernaryPair, format: Format) -> Result<Output> {
    let d = thompson_permutation(p);
    match format {
        Format::Json => ok(json(&d)?),
        Format::Text => ok(table(&[
            ("pi(T+)", d.plus.to_string()),
            ("pi(T-)", d.minus.to_string()),
            ("composition", d.composition.to_string()),
            ("traversal", cycles_text(&d.traversal_cycles)),
            ("components", d.component_count.to_string()),
        ])),
    }
}

fn plmap<const K: usize>(map: &PlMap<K>, format: Format) -> Result<Output> {
    match format {
        Format::Json => ok(json(&map.to_json())?),
        Format::Text => {
            let points = map.breakpoints();
            let slopes = map.slopes();
            let rows: Vec<[String; 3]> = points
                .iter()
                .enumerate()
                .map(|(i, (x, y))| {
                    let slope = slopes.get(i).map(ToString::to_string).unwrap_or_default();
                    [x.to_string(), y.to_string(), slope]
                })
                .collect();
            let wx = rows.iter().map(|r| r[0].len()).max().unwrap_or(1).max(1);
            let wy = rows.iter().map(|r| r[1].len()).max().unwrap_or(1).max(1);
            let mut s = format!("{:<wx$}  {:<wy$}  slope\n", "x", "y");
            for [x, y, slope] in rows {
                let line = format!("{x:<wx$}  {y:<wy$}  {slope}");
                let _ = writeln!(s, "{}", line.trim_end());
            }
            ok(s)
        }
    }
}

fn matching_report(m: &TangledMatching, format: Format) -> Result<Output> {
    let violations = validate_matching(m);
    let tree = matching_to_tree(m);
    let code = if tree.is_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    };
    let text = match format {
        Format::Json => json(&serde_json::json!({
            "matching": m,
            "crossings": m.crossing_count(),
            "violations": violations,
            "tree": tree.as_ref().ok().map(ToString::to_string),
            "stuck_at": tree.as_ref().err().map(|e| e.remaining.to_string()),
        }))?,
        Format::Text => {
            let mut rows = vec![
                ("matching", m.to_string()),
                ("crossings", m.crossing_count().to_string()),
            ];
            if violations.is_empty() {
                rows.push(("violations", "none".into()));
            }
            for v in &violations {
                rows.push(("violation", violation_text(v)));
            }
            match &tree {
                Ok(t) => rows.push(("tree", t.to_string())),
                Err(e) => rows.push(("tree", format!("none (reduction stuck at {})", e.remaining))),
            }
            table(&rows)
        }
    };
    if let Err(e) = &tree {
        eprintln!("error: {e}");
    }
    Ok((text, code))
}

fn trees<const K: usize>(leaves: usize, count: bool, random: bool, seed: u64, format: Format) -> Result<Output> {
    let n = carets_for_leaves::<K>(leaves)?;
    if count {
        let c = fuss_catalan(K, n);
        return match format {
            Format::Text => ok(format!("{c}\n")),
            Format::Json => ok(json(
                &serde_json::json!({ "leaves": leaves, "arity": K, "count": c.to_string() }),
            )?),
        };
    }
    let list: Vec<String> = if random {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        vec![random_tree_with_carets::<K, _>(n, &mut rng).to_string()]
    } else {
        if n > 9 {
            return Err(usage("enumeration is limited to 9 carets; use --count or --random"));
        }
        enumerate::<K>(n).iter().map(ToString::to_string).collect()
    };
    match format {
        Format::Text => ok(list.iter().map(|t| format!("{t}\n")).collect()),
        Format::Json => ok(json(&list)?),
    }
}

fn census_text(records: &[CensusRecord]) -> String {
    let header = ["n", "trees", "pairs", "compositions", "traversals", "components"];
    let rows: Vec<[String; 6]> = records
        .iter()
        .map(|r| {
            [
                r.n.to_string(),
                r.tree_count.to_string(),
                r.pair_count.to_string(),
                r.distinct_compositions.to_string(),
                r.distinct_traversals.to_string(),
                r.components
                    .iter()
                    .map(|(k, v)| format!("{k}:{v}"))
                    .collect::<Vec<_>>()
                    .join(" "),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..6)
        .map(|i| {
            rows.iter()
                .map(|r| r[i].len())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: [&str; 6]| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i == 5 {
                s.push_str(c);
            } else {
                let _ = write!(s, "{c:>w$}  ", w = widths[i]);
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    for r in &rows {
        out.push_str(&line([&r[0], &r[1], &r[2], &r[3], &r[4], &r[5]]));
    }
    out
}

#[derive(Serialize)]
struct Check {
    n: usize,
    check: &'static str,
    ok: bool,
    detail: String,
}

/// Diagram tracing against orbit counting, and the factor-2 law, on every
/// pair of trees with `2n+1` leaves. Returns the number of failing pairs.
fn tracing_failures(trees: &[Tree<3>], workers: usize) -> usize {
    let check_row = |a: &Tree<3>| {
        trees
            .iter()
            .filter(|b| {
                let p = TreePair::new(a.clone(), (*b).clone()).expect("same leaf count");
                let d = thompson_permutation(&p);
                let traced = [Convention::Standard, Convention::Positive].map(|c| {
                    trace_components(&build_diagram(&p, c))
                        .map(|t| t.component_count())
                        .unwrap_or(0)
                });
                traced != [d.component_count; 2] || d.composition.cycle_count() != 2 * d.component_count
            })
            .count()
    };
    let workers = workers.max(1).min(trees.len().max(1));
    if workers == 1 {
        return trees.iter().map(check_row).sum();
    }
    let chunk = trees.len().div_ceil(workers);
    std::thread::scope(|s| {
        let handles: Vec<_> = trees
            .chunks(chunk)
            .map(|rows| s.spawn(move || rows.iter().map(check_row).sum::<usize>()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    })
}

fn verify(max_n: usize, workers: usize, format: Format) -> Result<Output> {
    if max_n > 6 {
        return Err(usage("verify is limited to --max-n 6"));
    }
    let mut checks = Vec::new();
    let counts = count_table::<3>(max_n);
    for (n, count) in counts.iter().enumerate().skip(1) {
        let trees = enumerate::<3>(n);
        let distinct: std::collections::BTreeSet<String> = trees.iter().map(ToString::to_string).collect();
        checks.push(Check {
            n,
            check: "enumeration",
            ok: distinct.len() == trees.len() && tree_count(n) == trees.len().into() && *count == trees.len().into(),
            detail: format!("{} trees", trees.len()),
        });

        let matchings: Vec<TangledMatching> = trees.iter().map(tangled_matching).collect();
        let images: std::collections::BTreeSet<&TangledMatching> = matchings.iter().collect();
        let roundtrip = trees
            .iter()
            .zip(&matchings)
            .all(|(t, m)| matching_to_tree(m).as_ref() == Ok(t));
        checks.push(Check {
            n,
            check: "bijection",
            ok: roundtrip && images.len() == trees.len(),
            detail: format!("{} distinct matchings", images.len()),
        });

        let bad_crossings = matchings.iter().filter(|m| m.crossing_count() != n).count();
        checks.push(Check {
            n,
            check: "crossing law",
            ok: bad_crossings == 0,
            detail: format!("{bad_crossings} trees with a crossing count other than {n}"),
        });

        let r = verify_characterization(n);
        checks.push(Check {
            n,
            check: "characterization",
            ok: r.equals_tree_image,
            detail: format!(
                "{} of {} involutions survive, {} trees, {} spurious, {} rejected",
                r.survivors,
                r.involutions,
                r.trees,
                r.spurious_survivors.len(),
                r.rejected_tree_images.len()
            ),
        });

        let failures = tracing_failures(&trees, workers);
        checks.push(Check {
            n,
            check: "tracing vs orbits",
            ok: failures == 0,
            detail: format!("{} pairs, {failures} mismatches", trees.len() * trees.len()),
        });
    }
    let all_ok = checks.iter().all(|c| c.ok);
    let text = match format {
        Format::Json => json(&serde_json::json!({ "ok": all_ok, "checks": checks }))?,
        Format::Text => {
            let width = checks.iter().map(|c| c.check.len()).max().unwrap_or(0);
            let mut s = String::new();
            for c in &checks {
                let _ = writeln!(
                    s,
                    "n={}  {:<width$}  {}  {}",
                    c.n,
                    c.check,
                    if c.ok { "ok  " } else { "FAIL" },
                    c.detail
                );
            }
            let _ = writeln!(
                s,
                "{}",
                if all_ok {
                    "all checks passed"
                } else {
                    "some checks failed"
                }
            );
            s
        }
    };
    Ok((text, if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) }))
}
