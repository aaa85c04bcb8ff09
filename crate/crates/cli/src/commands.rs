use std::path::Path;

use serde_json::{json, Value};
use vka::alexander::{extended_presentation, one_variable, End, GroupPresentationZ2};
use vka::diagram::{parse_gauss, serialize_gauss, Diagram, Kind};
use vka::invariants::{
    char_poly, coloring_count, determinant_long, hom_count_to_cyclic, invariant_suite,
    InvariantSuite,
};
use vka::laurent::LaurentPoly2;
use vka::matrix::{Budget, Matrix};
use vka::moves::{random_walk, WalkConfig};

use crate::args::{BudgetArgs, Command, Construct, Format, FuzzArgs, InvariantsArgs, QuotientArg};
use crate::Failure;

const SCHEMA: u64 = 1;

type Result<T> = std::result::Result<T, Failure>;

pub fn run(cmd: Command) -> Result<String> {
    match cmd {
        Command::Parse { input, out } => {
            let d = load(&input)?;
            Ok(emit_diagram(
                &d,
                out.format,
                json!({ "command": "parse", "input": path_str(&input) }),
            ))
        }
        Command::Invariants(a) => invariants(a),
        Command::Construct { op, out, output } => {
            let (name, d) = construct(op)?;
            let text = emit_diagram(
                &d,
                out.format,
                json!({ "command": "construct", "operation": name }),
            );
            match output {
                Some(p) => {
                    std::fs::write(&p, &text)
                        .map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Color { input, moduli, out } => {
            let d = load(&input)?;
            let rows = colorings(&d, &moduli)?;
            Ok(match out.format {
                Format::Text => rows
                    .iter()
                    .map(|r| {
                        let (l, v) = coloring_line(r);
                        format!("{l}: {v}\n")
                    })
                    .collect(),
                Format::Json => to_json(json!({
                    "schema": SCHEMA,
                    "command": "color",
                    "input": path_str(&input),
                    "colorings": rows,
                })),
            })
        }
        Command::Homcount {
            input,
            prime,
            s,
            quotient,
            out,
        } => {
            let d = load(&input)?;
            let (pres, label) = quotient_of(&d, &quotient)?;
            let m = pres.abelianize().map(LaurentPoly2::diagonal);
            let count = hom_count_to_cyclic(&m, prime, s).map_err(vka::Error::from)?;
            Ok(match out.format {
                Format::Text => format!("{count}\n"),
                Format::Json => to_json(json!({
                    "schema": SCHEMA,
                    "command": "homcount",
                    "input": path_str(&input),
                    "quotient": label,
                    "prime": prime,
                    "s": s,
                    "count": count.to_string(),
                })),
            })
        }
        Command::Fuzz(a) => fuzz(a),
    }
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn to_json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

fn load(path: &Path) -> Result<Diagram> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    parse_gauss(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn emit_diagram(d: &Diagram, format: Format, mut meta: Value) -> String {
    let code = serialize_gauss(d);
    match format {
        Format::Text => format!("{code}\n"),
        Format::Json => {
            let obj = meta.as_object_mut().expect("object");
            obj.insert("schema".into(), json!(SCHEMA));
            obj.insert("kind".into(), json!(d.kind().to_string()));
            obj.insert("crossings".into(), json!(d.crossing_count()));
            let tokens: Vec<String> = d.passages().iter().map(ToString::to_string).collect();
            obj.insert("passages".into(), json!(tokens));
            obj.insert("code".into(), json!(code));
            to_json(meta)
        }
    }
}

fn construct(op: Construct) -> Result<(&'static str, Diagram)> {
    let (name, d) = match op {
        Construct::Concat { a, b } => ("concat", load(&a)?.concatenate(&load(&b)?)),
        Construct::Close { a } => ("close", load(&a)?.close()),
        Construct::Switch { a } => ("switch", Ok(load(&a)?.switch_all_crossings())),
        Construct::Dn { a, n } => ("dn", Diagram::dn_family(&load(&a)?, n)),
    };
    Ok((name, d.map_err(vka::Error::from)?))
}

fn budget(b: &BudgetArgs) -> Budget {
    let mut out = Budget::default();
    if let Some(m) = b.max_minors {
        out.max_minor_states = m;
    }
    if let Some(m) = b.max_coeff_bits {
        out.max_coeff_bits = m;
    }
    out
}

/// The presentation to abelianize, with the label used in reports.
fn quotient_of(d: &Diagram, q: &QuotientArg) -> Result<(GroupPresentationZ2, Value)> {
    let pres = extended_presentation(d);
    let Some(choice) = q.quotient.as_deref() else {
        return Ok((pres, Value::Null));
    };
    let ends: &[End] = match choice {
        "end-minus" => &[End::Minus],
        "end-plus" => &[End::Plus],
        "ends" => &[End::Minus, End::Plus],
        _ => &[],
    };
    if ends.is_empty() {
        let names: Vec<&str> = choice.split(',').map(str::trim).collect();
        if names.iter().any(|n| n.is_empty()) {
            return Err(Failure::Config(format!("bad generator list '{choice}'")));
        }
        let killed = pres.quotient_kill(&names).map_err(vka::Error::from)?;
        return Ok((killed, json!(choice)));
    }
    if d.kind() != Kind::Long {
        return Err(Failure::Config(format!(
            "--quotient {choice} needs a long diagram; closed diagrams have no ends"
        )));
    }
    let killed = ends.iter().fold(pres, |p, &e| p.kill_end(e));
    Ok((killed, json!(choice)))
}

fn colorings(d: &Diagram, moduli: &[u64]) -> Result<Vec<Value>> {
    moduli
        .iter()
        .map(|&p| {
            let r = coloring_count(d, p).map_err(vka::Error::from)?;
            Ok(json!({
                "modulus": p,
                "count": r.count.to_string(),
                "nontrivial": r.nontrivial,
            }))
        })
        .collect()
}

fn coloring_line(v: &Value) -> (String, String) {
    let tag = if v["nontrivial"] == json!(true) {
        "nontrivial"
    } else {
        "trivial only"
    };
    let count = v["count"].as_str().expect("count string");
    (
        format!("colorings mod {}", v["modulus"]),
        format!("{count} ({tag})"),
    )
}

fn invariants(a: InvariantsArgs) -> Result<String> {
    let d = load(&a.input)?;
    let b = budget(&a.budget);
    let (pres, label) = quotient_of(&d, &a.quotient)?;
    let nothing_requested =
        !a.det && a.charpoly.is_empty() && a.color.is_empty() && !a.presentation && !a.reduced;
    let (det, ks, moduli) = if nothing_requested {
        (d.kind() == Kind::Long, vec![0, 1], vec![3, 5, 7])
    } else {
        (a.det, a.charpoly.clone(), a.color.clone())
    };
    if det && d.kind() != Kind::Long {
        return Err(Failure::Config("--det needs a long diagram".into()));
    }

    let mut lines: Vec<(String, String)> = Vec::new();
    let mut obj = serde_json::Map::new();
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("command".into(), json!("invariants"));
    obj.insert("input".into(), json!(path_str(&a.input)));
    obj.insert("kind".into(), json!(d.kind().to_string()));
    obj.insert("crossings".into(), json!(d.crossing_count()));
    obj.insert("quotient".into(), label);
    obj.insert("variables".into(), json!(a.variables));
    if a.presentation {
        let s = pres.to_string();
        lines.push(("presentation".into(), s.clone()));
        obj.insert("presentation".into(), json!(s));
    }
    if a.reduced {
        let s = pres.tietze_eliminate().to_string();
        lines.push(("reduced".into(), s.clone()));
        obj.insert("reduced_presentation".into(), json!(s));
    }
    if !ks.is_empty() {
        let m = pres.abelianize();
        let mut list = Vec::new();
        for &k in &ks {
            let p = char_poly_text(&m, k, a.variables, &b)?;
            lines.push((format!("E{k}"), p.clone()));
            list.push(json!({ "k": k, "poly": p }));
        }
        obj.insert("char_polys".into(), json!(list));
    }
    if det {
        let v = determinant_long(&d).map_err(vka::Error::from)?.to_string();
        lines.push(("determinant".into(), v.clone()));
        obj.insert("determinant".into(), json!(v));
    }
    if !moduli.is_empty() {
        let rows = colorings(&d, &moduli)?;
        lines.extend(rows.iter().map(coloring_line));
        obj.insert("colorings".into(), json!(rows));
    }
    Ok(match a.out.format {
        Format::Text if lines.len() == 1 => format!("{}\n", lines[0].1),
        Format::Text => lines.iter().map(|(l, v)| format!("{l}: {v}\n")).collect(),
        Format::Json => to_json(Value::Object(obj)),
    })
}

fn char_poly_text(m: &Matrix<LaurentPoly2>, k: usize, variables: u8, b: &Budget) -> Result<String> {
    let to_failure = |e| Failure::from(vka::Error::Budget(e));
    Ok(if variables == 1 {
        char_poly(&one_variable(m), k, b)
            .map_err(to_failure)?
            .to_string()
    } else {
        char_poly(m, k, b).map_err(to_failure)?.to_string()
    })
}

fn suite_json(s: &InvariantSuite) -> Value {
    json!({
        "kind": s.kind.to_string(),
        "polynomials": s.polynomials.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "determinant": s.determinant.as_ref().map(ToString::to_string),
        "colorings": s.colorings.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn fuzz(a: FuzzArgs) -> Result<String> {
    let d = load(&a.input)?;
    let reference = match &a.reference {
        Some(p) => load(p)?,
        None => d.clone(),
    };
    let b = budget(&a.budget);
    let suite =
        |x: &Diagram| invariant_suite(x, &b).map_err(|e| Failure::from(vka::Error::from(e)));
    let expected = suite(&reference)?;
    let config = WalkConfig {
        steps: a.steps,
        max_crossings: a
            .max_crossings
            .unwrap_or(WalkConfig::for_diagram(&d, a.steps).max_crossings),
    };
    let seeds: Vec<u64> = (0..a.walks).map(|i| a.seed.wrapping_add(i)).collect();
    let mut moves = 0;
    for &seed in &seeds {
        let (end, trace) = random_walk(&d, seed, config);
        moves += trace.len();
        let got = suite(&end)?;
        if got != expected {
            let report = match a.out.format {
                Format::Text => format!(
                    "FAIL seed {seed}: invariants changed after {} moves\n  end diagram: {}\n  expected: {}\n  found:    {}\n",
                    trace.len(),
                    serialize_gauss(&end).replace('\n', " "),
                    suite_json(&expected),
                    suite_json(&got),
                ),
                Format::Json => to_json(json!({
                    "schema": SCHEMA,
                    "command": "fuzz",
                    "input": path_str(&a.input),
                    "ok": false,
                    "seed": seed,
                    "moves": trace.len(),
                    "end": serialize_gauss(&end),
                    "expected": suite_json(&expected),
                    "found": suite_json(&got),
                })),
            };
            return Err(Failure::Invariance(report));
        }
    }
    Ok(match a.out.format {
        Format::Text => "OK (invariants stable)\n".into(),
        Format::Json => to_json(json!({
            "schema": SCHEMA,
            "command": "fuzz",
            "input": path_str(&a.input),
            "ok": true,
            "seeds": seeds,
            "steps": a.steps,
            "max_crossings": config.max_crossings,
            "moves": moves,
            "invariants": suite_json(&expected),
        })),
    })
}
