//! `globact` — partial group actions on finite structures from JSON
//! instance files: validation, universal globalization, globalizability
//! checks, word normalization, collapse witnesses, the unital-ideal
//! globalization, and amalgam analysis.
//!
//! Exit codes: 0 positive verdict, 1 negative verdict (with a witness in
//! the JSON output), 2 input error. Output on stdout is a single JSON
//! document and is byte-identical across runs for identical inputs.

mod input;
mod replay;

use clap::{Parser, Subcommand};
use globact_core::{
    validate_action_tables, validate_algebra_action, validate_relational_action,
    AlgebraPartialAction, Amalgam, IdealPartialAction, RewriteStep, StepKind,
    UniversalGlobalization,
};
use input::{Carrier, Instance};
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "globact",
    version,
    about = "Globalization analysis of partial group actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for randomized internals. The current commands are fully
    /// deterministic; the flag is accepted for interface stability.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for the enumeration-heavy checks.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Independently re-derive any emitted witness from the instance
    /// tables and record the outcome in the output.
    #[arg(long, global = true)]
    verify_witness: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom of the structures in the file.
    Validate { file: String },
    /// Build the universal globalization of the partial action.
    GlobalizeSet { file: String },
    /// Decide globalizability of a partial action on a partial algebra.
    CheckAlgebra {
        file: String,
        /// Evaluate a term, e.g. "f0(f0(u,t),v)", against the algebra.
        #[arg(long)]
        term: Option<String>,
    },
    /// Decide globalizability of an ideal-domain action on a semigroup.
    CheckSemigroup { file: String },
    /// Normalize a word over globalization classes, e.g. "[1,v][1,t]".
    Normalize {
        file: String,
        #[arg(long)]
        word: String,
    },
    /// Search for two distinct classes joined by a derivation chain.
    FindWitness {
        file: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Build the explicit globalization for unital ideal domains.
    UnitalGlobalize { file: String },
    /// Analyze the amalgam of the instance (or an explicit one).
    Amalgam {
        file: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
}

enum Outcome {
    Positive(Value),
    Negative(Value),
}

struct Failure(Value);

impl Failure {
    fn new(message: impl Into<String>) -> Self {
        Failure(json!({ "error": message.into() }))
    }

    fn pointed(err: input::InputError) -> Self {
        Failure(json!({ "error": err.message, "pointer": err.pointer }))
    }
}

impl From<globact_core::Error> for Failure {
    fn from(err: globact_core::Error) -> Self {
        Failure::new(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = cli.seed; // deterministic commands; kept for interface stability
    match run(&cli) {
        Ok(Outcome::Positive(doc)) => {
            emit(&doc);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Negative(doc)) => {
            emit(&doc);
            ExitCode::from(1)
        }
        Err(Failure(doc)) => {
            emit(&doc);
            ExitCode::from(2)
        }
    }
}

fn emit(doc: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(doc).expect("serializable")
    );
}

fn read_text(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::new(format!("cannot read stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::new(format!("cannot read {path}: {e}")))
    }
}

fn read_instance(path: &str) -> Result<Instance, Failure> {
    let instance = input::parse_instance(&read_text(path)?).map_err(Failure::pointed)?;
    for warning in &instance.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(instance)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::GlobalizeSet { file } => globalize_set(file),
        Command::CheckAlgebra { file, term } => {
            check_algebra(file, term.as_deref(), cli.verify_witness)
        }
        Command::CheckSemigroup { file } => check_semigroup(file, cli.jobs, cli.verify_witness),
        Command::Normalize { file, word } => normalize(file, word),
        Command::FindWitness { file, max_len } => find_witness(file, *max_len, cli.verify_witness),
        Command::UnitalGlobalize { file } => unital_globalize(file, cli.verify_witness),
        Command::Amalgam { file, max_len } => amalgam(file, *max_len, cli.verify_witness),
    }
}

// ---------------------------------------------------------------------------
// validate

fn validate(file: &str) -> Result<Outcome, Failure> {
    let instance = match input::parse_instance(&read_text(file)?) {
        Ok(instance) => instance,
        Err(err) => {
            // Axiom failures inside carrier structures are verdicts, not
            // input errors; resolution failures stay input errors.
            return if err.is_axiom_failure() {
                Ok(Outcome::Negative(json!({
                    "valid": false,
                    "violations": [{
                        "axiom": "structure",
                        "pointer": err.pointer,
                        "witness": err.message,
                    }],
                })))
            } else {
                Err(Failure::pointed(err))
            };
        }
    };
    for warning in &instance.warnings {
        eprintln!("warning: {warning}");
    }
    let mut violations = Vec::new();
    if let (Some(group), Some(carrier), Some(theta)) =
        (&instance.group, &instance.carrier, &instance.theta)
    {
        let report = validate_action_tables(group, carrier.names().len(), theta);
        for v in report.violations {
            violations
                .push(json!({ "axiom": format!("action-{}", v.axiom), "witness": v.witness }));
        }
        if violations.is_empty() {
            let action = instance.action()?;
            if let Some(rs) = &instance.relations {
                let report = validate_relational_action(&action, rs);
                for v in report.violations {
                    violations.push(json!({ "axiom": v.axiom, "witness": v.witness }));
                }
            }
            if matches!(
                instance.carrier,
                Some(Carrier::Algebra(_) | Carrier::Semigroup(_))
            ) {
                let algebra = instance.algebra()?;
                let report = validate_algebra_action(&action, &algebra);
                for v in report.violations {
                    violations.push(json!({ "axiom": v.axiom, "witness": v.witness }));
                }
            }
        }
    } else if instance.theta.is_some() {
        return Err(Failure::new("theta requires both a group and a carrier"));
    }
    if violations.is_empty() {
        Ok(Outcome::Positive(json!({ "valid": true })))
    } else {
        Ok(Outcome::Negative(
            json!({ "valid": false, "violations": violations }),
        ))
    }
}

// ---------------------------------------------------------------------------
// globalize-set

fn globalize_set(file: &str) -> Result<Outcome, Failure> {
    let instance = read_instance(file)?;
    let action = instance.action()?;
    let ug = UniversalGlobalization::build(&action)?;
    let classes: Vec<Value> = (0..ug.class_count())
        .map(|c| {
            let members: Vec<Value> = ug.classes()[c]
                .members
                .iter()
                .map(|&(x, a)| json!([action.group().name(x), action.name(a)]))
                .collect();
            json!({ "name": ug.class_name(c), "members": members })
        })
        .collect();
    let table: Vec<Value> = (0..action.group().size())
        .map(|x| {
            let images: Vec<String> = (0..ug.class_count())
                .map(|c| ug.class_name(ug.apply_global(x, c)))
                .collect();
            json!({ "element": action.group().name(x), "images": images })
        })
        .collect();
    let embedding: Vec<Value> = (0..action.carrier_size())
        .map(|a| json!([action.name(a), ug.class_name(ug.embedding()[a])]))
        .collect();
    Ok(Outcome::Positive(json!({
        "class_count": ug.class_count(),
        "classes": classes,
        "action": table,
        "embedding": embedding,
    })))
}

// ---------------------------------------------------------------------------
// check-algebra

fn check_algebra(file: &str, term: Option<&str>, verify: bool) -> Result<Outcome, Failure> {
    let instance = read_instance(file)?;
    let action = instance.action()?;
    let algebra = instance.algebra()?;
    let apa = AlgebraPartialAction::new(action, algebra)?;
    let mut doc = serde_json::Map::new();
    if let Some(text) = term {
        let parsed = parse_term(text, apa.algebra())?;
        let value = globact_core::term::term_value(apa.algebra(), &parsed);
        let nf = globact_core::term::theta_normal_form(apa.algebra(), &parsed);
        doc.insert(
            "term".into(),
            json!({
                "input": parsed.render(apa.algebra()),
                "value": value.map(|v| apa.algebra().name(v).to_string()),
                "normal_form": nf.render(apa.algebra()),
            }),
        );
    }
    match apa.globalizability_witness() {
        None => {
            doc.insert("globalizable".into(), json!(true));
            Ok(Outcome::Positive(Value::Object(doc)))
        }
        Some(w) => {
            let args: Vec<&str> = w.args.iter().map(|&a| apa.algebra().name(a)).collect();
            doc.insert("globalizable".into(), json!(false));
            doc.insert(
                "witness".into(),
                json!({
                    "op": w.op,
                    "x": apa.action().group().name(w.x),
                    "args": args,
                    "value": apa.algebra().name(w.value),
                    "lhs": w.lhs.map(|v| apa.algebra().name(v).to_string()),
                    "rhs": w.rhs.map(|v| apa.algebra().name(v).to_string()),
                }),
            );
            if verify {
                let raw = replay::RawAlgebraInstance {
                    algebra: apa.algebra(),
                    theta: instance.theta.as_ref().expect("action instance"),
                };
                raw.verify_globalizability_witness(w.op, w.x, &w.args, w.value, w.lhs, w.rhs)
                    .map_err(Failure::new)?;
                doc.insert("witness_verified".into(), json!(true));
            }
            Ok(Outcome::Negative(Value::Object(doc)))
        }
    }
}

fn parse_term(
    text: &str,
    alg: &globact_core::FinitePartialAlgebra,
) -> Result<globact_core::term::Term, Failure> {
    let tokens: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (term, used) = parse_term_at(&tokens, 0, alg)
        .map_err(|msg| Failure::new(format!("cannot parse term {text:?}: {msg}")))?;
    if used != tokens.len() {
        return Err(Failure::new(format!(
            "cannot parse term {text:?}: trailing input at {used}"
        )));
    }
    Ok(term)
}

fn parse_term_at(
    tokens: &[char],
    mut at: usize,
    alg: &globact_core::FinitePartialAlgebra,
) -> Result<(globact_core::term::Term, usize), String> {
    use globact_core::term::Term;
    let start = at;
    while at < tokens.len() && !"(),".contains(tokens[at]) {
        at += 1;
    }
    let head: String = tokens[start..at].iter().collect();
    if head.is_empty() {
        return Err(format!("expected a term at {start}"));
    }
    let is_op = head
        .strip_prefix('f')
        .and_then(|rest| rest.parse::<usize>().ok());
    if let (Some(op), true) = (is_op, at < tokens.len() && tokens[at] == '(') {
        if op >= alg.signature().len() {
            return Err(format!("operation f{op} out of range"));
        }
        at += 1; // consume '('
        let mut children = Vec::new();
        if tokens.get(at) == Some(&')') {
            at += 1;
        } else {
            loop {
                let (child, next) = parse_term_at(tokens, at, alg)?;
                children.push(child);
                at = next;
                match tokens.get(at) {
                    Some(',') => at += 1,
                    Some(')') => {
                        at += 1;
                        break;
                    }
                    _ => return Err(format!("expected ',' or ')' at {at}")),
                }
            }
        }
        if children.len() != alg.signature().arity(op) {
            return Err(format!(
                "operation f{op} expects {} arguments, found {}",
                alg.signature().arity(op),
                children.len()
            ));
        }
        return Ok((Term::Node(op, children), at));
    }
    let leaf = alg
        .element_by_name(&head)
        .ok_or_else(|| format!("unknown element {head:?}"))?;
    Ok((Term::Leaf(leaf), at))
}

// ---------------------------------------------------------------------------
// check-semigroup

fn ideal_action(instance: &Instance) -> Result<IdealPartialAction, Failure> {
    let semigroup = instance.semigroup()?;
    let action = instance.action()?;
    Ok(IdealPartialAction::new(semigroup, action)?)
}

fn criterion_witness_json(ipa: &IdealPartialAction, w: &globact_core::CriterionWitness) -> Value {
    let sg = ipa.semigroup();
    json!({
        "x": ipa.action().group().name(w.x),
        "u": sg.name(w.u),
        "s": sg.name(w.s),
        "t": sg.name(w.t),
        "lhs": sg.name(w.lhs),
        "rhs": sg.name(w.rhs),
    })
}

fn check_semigroup(file: &str, jobs: usize, verify: bool) -> Result<Outcome, Failure> {
    let instance = read_instance(file)?;
    let ipa = ideal_action(&instance)?;
    match ipa.criterion_witness_jobs(jobs.max(1)) {
        None => Ok(Outcome::Positive(json!({
            "globalizable": true,
            "criterion": "holds for all (x, u, s, t)",
        }))),
        Some(w) => {
            let mut doc = json!({
                "globalizable": false,
                "witness": criterion_witness_json(&ipa, &w),
            });
            if verify {
                let raw = replay::RawInstance {
                    group: ipa.action().group(),
                    semigroup: ipa.semigroup(),
                    theta: instance.theta.as_ref().expect("action instance"),
                };
                raw.verify_criterion_witness(w.x, w.u, w.s, w.t, w.lhs, w.rhs)
                    .map_err(Failure::new)?;
                doc["witness_verified"] = json!(true);
            }
            Ok(Outcome::Negative(doc))
        }
    }
}

// ---------------------------------------------------------------------------
// normalize

fn parse_word(text: &str, ipa: &IdealPartialAction) -> Result<Vec<u32>, Failure> {
    let ug = ipa.globalization();
    let action = ipa.action();
    let mut letters = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(stripped) = rest.strip_prefix('[') else {
            return Err(Failure::new(format!("expected '[' at {rest:?}")));
        };
        let Some(end) = stripped.find(']') else {
            return Err(Failure::new("unterminated '['"));
        };
        let inner = &stripped[..end];
        let Some((gname, aname)) = inner.split_once(',') else {
            return Err(Failure::new(format!(
                "expected \"group,element\" in [{inner}]"
            )));
        };
        let x = action
            .group()
            .element_by_name(gname.trim())
            .ok_or_else(|| Failure::new(format!("unknown group element {gname:?}")))?;
        let a = action
            .element_by_name(aname.trim())
            .ok_or_else(|| Failure::new(format!("unknown carrier element {aname:?}")))?;
        letters.push(ug.class_of(x, a) as u32);
        rest = &stripped[end + 1..];
    }
    if letters.is_empty() {
        return Err(Failure::new("empty word"));
    }
    Ok(letters)
}

fn render_word(ipa: &IdealPartialAction, letters: &[u32]) -> String {
    letters
        .iter()
        .map(|&c| ipa.globalization().class_name(c as usize))
        .collect()
}

fn step_json(ipa: &IdealPartialAction, step: &RewriteStep) -> Value {
    let sg = ipa.semigroup();
    json!({
        "pos": step.pos,
        "kind": match step.kind {
            StepKind::Reduce => "reduce",
            StepKind::Expand => "expand",
        },
        "slot": ipa.action().group().name(step.slot),
        "left": sg.name(step.left),
        "right": sg.name(step.right),
    })
}

fn normalize(file: &str, word_text: &str) -> Result<Outcome, Failure> {
    let instance = read_instance(file)?;
    let ipa = ideal_action(&instance)?;
    let letters = parse_word(word_text, &ipa)?;
    let word = ipa.word(&letters)?;
    let (nf, trace) = ipa.normalize_word(&word)?;
    let steps: Vec<Value> = trace.iter().map(|s| step_json(&ipa, s)).collect();
    Ok(Outcome::Positive(json!({
        "input": render_word(&ipa, word.letters()),
        "normal_form": render_word(&ipa, nf.letters()),
        "steps": steps,
    })))
}

// ---------------------------------------------------------------------------
// find-witness

fn find_witness(file: &str, max_len: usize, verify: bool) -> Result<Outcome, Failure> {
    let instance = read_instance(file)?;
    let ipa = ideal_action(&instance)?;
    let search = ipa.find_collapse_witness(max_len)?;
    let ug = ipa.globalization();
    let collapses: Vec<Value> = search
        .merges
        .iter()
        .map(|m| {
            let chain: Vec<Value> = m
                .chain
                .iter()
                .map(|entry| {
                    json!({
                        "before": render_word(&ipa, &entry.before),
                        "step": step_json(&ipa, &entry.step),
                        "after": render_word(&ipa, &entry.after),
                    })
                })
                .collect();
            json!({
                "from": ug.class_name(m.from_class as usize),
                "to": ug.class_name(m.to_class as usize),
                "chain": chain,
            })
        })
        .collect();
    if search.merges.is_empty() {
        return Ok(Outcome::Positive(json!({
            "collapses": [],
            "max_len": max_len,
            "note": "no collapse within the bound; not a proof of globalizability",
        })));
    }
    let mut doc = json!({ "collapses": collapses, "max_len": max_len });
    if verify {
        let raw = replay::RawInstance {
            group: ipa.action().group(),
            semigroup: ipa.semigroup(),
            theta: instance.theta.as_ref().expect("action instance"),
        };
        for m in &search.merges {
            let from = ug.classes()[m.from_class as usize].rep;
            let to = ug.classes()[m.to_class as usize].rep;
            let steps: Vec<RewriteStep> = m.chain.iter().map(|e| e.step.clone()).collect();
            raw.verify_collapse_chain(from, to, &steps)
                .map_err(Failure::new)?;
        }
        doc["witnesses_verified"] = json!(true);
    }
    Ok(Outcome::Negative(doc))
}

// ---------------------------------------------------------------------------
// unital-globalize

fn unital_globalize(file: &str, verify: bool) -> Result<Outcome, Failure> {
    let instance = read_instance(file)?;
    let ipa = ideal_action(&instance)?;
    match ipa.unital_globalization() {
        Ok(unital) => {
            let units: Vec<Value> = unital
                .units
                .iter()
                .enumerate()
                .map(|(x, &e)| {
                    json!({
                        "element": ipa.action().group().name(x),
                        "unit": ipa.semigroup().name(e),
                    })
                })
                .collect();
            let names: Vec<String> = (0..unital.product.size())
                .map(|c| unital.product.name(c).to_string())
                .collect();
            let table: Vec<Vec<String>> = (0..unital.product.size())
                .map(|a| {
                    (0..unital.product.size())
                        .map(|b| unital.product.name(unital.product.mul(a, b)).to_string())
                        .collect()
                })
                .collect();
            Ok(Outcome::Positive(json!({
                "unital": true,
                "units": units,
                "classes": names,
                "table": table,
            })))
        }
        Err(globact_core::Error::NotUnital(diagnosis)) => {
            let mut doc = json!({ "unital": false, "diagnosis": diagnosis });
            if verify {
                let theta = instance.theta.as_ref().expect("action instance");
                let x = replay::first_non_unital(ipa.semigroup(), theta)
                    .ok_or_else(|| Failure::new("replay found every domain unital"))?;
                doc["witness_verified"] = json!(true);
                doc["element"] = json!(ipa.action().group().name(x));
            }
            Ok(Outcome::Negative(doc))
        }
        Err(e) => Err(e.into()),
    }
}

// ---------------------------------------------------------------------------
// amalgam

fn amalgam(file: &str, max_len: usize, verify: bool) -> Result<Outcome, Failure> {
    let instance = read_instance(file)?;
    let amalgam = match &instance.amalgam {
        Some(am) => am.clone(),
        None => {
            let action = instance.action()?;
            let algebra = instance.algebra()?;
            let apa = AlgebraPartialAction::new(action, algebra)?;
            Amalgam::from_action(&apa)?
        }
    };
    let intersections: Vec<Value> = (0..amalgam.len())
        .flat_map(|i| {
            let am = &amalgam;
            (i + 1..am.len()).map(move |j| {
                let elements: Vec<&str> = am
                    .intersection(i, j)
                    .iter()
                    .map(|&a| am.algebras()[i].name(a))
                    .collect();
                json!({
                    "i": am.labels()[i],
                    "j": am.labels()[j],
                    "elements": elements,
                })
            })
        })
        .collect();
    let neumann = amalgam.triple_condition_witness();
    let semigroup_kind = amalgam.algebras()[0].signature().arities() == [2]
        && amalgam.algebras().iter().all(|a| a.is_total());
    let (bounded_check_ran, first_violation, total) = if semigroup_kind {
        let report = amalgam.bounded_embeddability(max_len)?;
        let first = report.violations.first().map(|v| {
            let chain: Vec<Value> = v
                .chain
                .iter()
                .map(|entry| {
                    json!({
                        "before": render_amalgam_word(&amalgam, &entry.before, report.stride),
                        "step": amalgam_step_json(&amalgam, &entry.step),
                        "after": render_amalgam_word(&amalgam, &entry.after, report.stride),
                    })
                })
                .collect();
            json!({
                "copy_a": amalgam.labels()[v.copy_a],
                "elem_a": amalgam.algebras()[v.copy_a].name(v.elem_a),
                "copy_b": amalgam.labels()[v.copy_b],
                "elem_b": amalgam.algebras()[v.copy_b].name(v.elem_b),
                "chain": chain,
            })
        });
        if verify {
            if let Some(v) = report.violations.first() {
                let raw = replay::RawAmalgam { amalgam: &amalgam };
                raw.verify_violation_chain((v.copy_a, v.elem_a), (v.copy_b, v.elem_b), &v.chain)
                    .map_err(Failure::new)?;
            }
        }
        (true, first, report.violations.len())
    } else {
        (false, None, 0)
    };
    let doc = json!({
        "indices": amalgam.labels(),
        "intersections": intersections,
        "neumann_conditions": if neumann.is_none() { "pass" } else { "fail" },
        "violation": first_violation,
        "violations_total": total,
        "max_len": if bounded_check_ran { json!(max_len) } else { Value::Null },
        "witness_verified": if verify && total > 0 { json!(true) } else { Value::Null },
    });
    if total > 0 {
        Ok(Outcome::Negative(doc))
    } else {
        Ok(Outcome::Positive(doc))
    }
}

fn render_amalgam_word(amalgam: &Amalgam, letters: &[u32], stride: usize) -> Vec<String> {
    letters
        .iter()
        .map(|&l| {
            let (i, a) = ((l as usize) / stride, (l as usize) % stride);
            format!("{}:{}", amalgam.labels()[i], amalgam.algebras()[i].name(a))
        })
        .collect()
}

fn amalgam_step_json(amalgam: &Amalgam, step: &globact_core::AmalgamStep) -> Value {
    use globact_core::AmalgamStep::*;
    match step {
        Reduce {
            pos,
            copy,
            left,
            right,
        } => json!({
            "kind": "reduce",
            "pos": pos,
            "copy": amalgam.labels()[*copy],
            "left": amalgam.algebras()[*copy].name(*left),
            "right": amalgam.algebras()[*copy].name(*right),
        }),
        Expand {
            pos,
            copy,
            left,
            right,
        } => json!({
            "kind": "expand",
            "pos": pos,
            "copy": amalgam.labels()[*copy],
            "left": amalgam.algebras()[*copy].name(*left),
            "right": amalgam.algebras()[*copy].name(*right),
        }),
        Swap {
            pos,
            from_copy,
            from_elem,
            to_copy,
            to_elem,
        } => json!({
            "kind": "swap",
            "pos": pos,
            "from_copy": amalgam.labels()[*from_copy],
            "from_elem": amalgam.algebras()[*from_copy].name(*from_elem),
            "to_copy": amalgam.labels()[*to_copy],
            "to_elem": amalgam.algebras()[*to_copy].name(*to_elem),
        }),
    }
}
