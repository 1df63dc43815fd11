//! Command-line front end. Exit codes: 0 when everything requested holds,
//! 1 when a verdict is false or a claim has counterexamples, 2 on usage,
//! configuration or audit errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::config::Workbench;
use crate::error::{Error, Result};
use crate::harness::{self, Corpus, Report, Status, REPORT_VERSION};
use crate::module::FiniteModule;
use crate::predicate::{self, PredicateKind};
use crate::ring::FiniteRing;
use crate::set::ElemSet;

#[derive(Parser, Debug)]
#[command(name = "sprimary", version, about = "Decide (weakly) S-prime and S-primary submodules of finite modules")]
struct Cli {
    /// JSON workbench defining rings, modules, submodules and sets.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Claim ids for `verify`, comma separated, or `all`.
    #[arg(long, global = true)]
    claims: Option<String>,
    /// Largest ring admitted into the verification corpus.
    #[arg(long, global = true)]
    max_ring_order: Option<usize>,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a predicate: kind=<kind> submodule=<name> [module=<name>] [multset=<name>]
    Check { args: Vec<String> },
    /// List every weakly S-element: submodule=<name> multset=<name>
    Witnesses { args: Vec<String> },
    /// List the submodule lattice (module=<name>) or the ideals (ring=<name>)
    Enumerate { args: Vec<String> },
    /// Run the claim harness: [claims=<ids|all>]
    Verify { args: Vec<String> },
    /// Summarize a structure or claim: ring=, module=, submodule=, multset= or claim=
    Describe { args: Vec<String> },
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((report, ok)) => {
            if let Err(e) = emit(&cli, &report, out) {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn emit(cli: &Cli, report: &Report, out: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(e.to_string());
    let text = serde_json::to_string_pretty(report).map_err(|e| Error::Io(e.to_string()))?;
    if let Some(path) = &cli.report {
        std::fs::write(path, format!("{text}\n")).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    match cli.format {
        Format::Json => writeln!(out, "{text}").map_err(io),
        Format::Human => out.write_all(human(report).as_bytes()).map_err(io),
    }
}

fn execute(cli: &Cli) -> Result<(Report, bool)> {
    let wb = match &cli.config {
        Some(p) => Workbench::load(p)?,
        None => Workbench::parse("{}")?,
    };
    let (cmd, args) = match &cli.command {
        Command::Check { args } => ("check", args),
        Command::Witnesses { args } => ("witnesses", args),
        Command::Enumerate { args } => ("enumerate", args),
        Command::Verify { args } => ("verify", args),
        Command::Describe { args } => ("describe", args),
    };
    let kv = key_values(args)?;
    if cmd == "verify" {
        return verify(cli, &wb, &kv);
    }
    let (result, ok) = match cmd {
        "check" => check(&wb, &kv)?,
        "witnesses" => witnesses(&wb, &kv)?,
        "enumerate" => enumerate(&wb, &kv)?,
        _ => describe(&wb, &kv)?,
    };
    let mut result = result;
    result["command"] = json!(echo(cmd, args));
    Ok((
        Report { version: REPORT_VERSION.into(), params_fingerprint: wb.fingerprint.clone(), results: vec![result], claims: vec![] },
        ok,
    ))
}

fn echo(cmd: &str, args: &[String]) -> String {
    std::iter::once(cmd).chain(args.iter().map(String::as_str)).collect::<Vec<_>>().join(" ")
}

struct Args(BTreeMap<String, String>);

impl Args {
    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::InvalidSpec(format!("missing argument {key}=")))
    }

    fn only(&self, allowed: &[&str]) -> Result<()> {
        match self.0.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::InvalidSpec(format!("unexpected argument '{k}'"))),
            None => Ok(()),
        }
    }
}

fn key_values(args: &[String]) -> Result<Args> {
    let mut map = BTreeMap::new();
    for a in args {
        let (k, v) = a
            .split_once('=')
            .ok_or_else(|| Error::InvalidSpec(format!("expected key=value, got '{a}'")))?;
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::InvalidSpec(format!("argument '{k}' given twice")));
        }
    }
    Ok(Args(map))
}

fn set_labels(ring_or_module: impl Fn(usize) -> String, set: &ElemSet) -> Vec<String> {
    set.iter().map(ring_or_module).collect()
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(","))
}

/// The module, submodule and optional set named by the arguments.
struct Target<'a> {
    module_name: String,
    module: &'a FiniteModule,
    sub_name: String,
    sub: &'a crate::module::Submodule,
    set: Option<(String, &'a crate::ideal::MultClosedSet)>,
}

fn target<'a>(wb: &'a Workbench, kv: &Args) -> Result<Target<'a>> {
    let sub_name = kv.require("submodule")?;
    let named = wb.submodule(sub_name)?;
    if let Some(m) = kv.get("module") {
        wb.module(m)?;
        if m != named.module {
            return Err(Error::InvalidSpec(format!("submodule '{sub_name}' belongs to module '{}', not '{m}'", named.module)));
        }
    }
    let module = wb.module(&named.module)?;
    let set = match kv.get("multset") {
        Some(s) => {
            let ms = wb.multset(s)?;
            if !wb.ring(&ms.ring)?.same_as(module.ring()) {
                return Err(Error::InvalidSpec(format!("multset '{s}' lives in a different ring than module '{}'", named.module)));
            }
            Some((s.to_string(), &ms.set))
        }
        None => None,
    };
    Ok(Target { module_name: named.module.clone(), module, sub_name: sub_name.to_string(), sub: &named.submodule, set })
}

fn target_json(t: &Target<'_>) -> Value {
    let m = t.module;
    let r = m.ring();
    let mut v = json!({
        "module": t.module_name,
        "submodule": t.sub_name,
        "submodule_members": m.set_label(t.sub.members()),
    });
    if let Some((name, s)) = &t.set {
        v["multset"] = json!(name);
        v["multset_members"] = json!(braces(&set_labels(|x| r.label(x).to_string(), s.members())));
    }
    v
}

fn check(wb: &Workbench, kv: &Args) -> Result<(Value, bool)> {
    kv.only(&["kind", "module", "submodule", "multset"])?;
    let kind: PredicateKind = kv.require("kind")?.parse()?;
    let t = target(wb, kv)?;
    if kind.uses_mult_set() && t.set.is_none() {
        return Err(Error::MissingMultSet);
    }
    let m = t.module;
    let r = m.ring();
    let mut v = target_json(&t);
    v["kind"] = json!(kind.name());
    match predicate::check(m, t.sub, kind, t.set.as_ref().map(|(_, s)| *s)) {
        Ok(verdict) => {
            v["holds"] = json!(verdict.holds);
            v["witness"] = json!(verdict.witness.map(|s| r.label(s)));
            match &verdict.counterexample {
                Some(ce) => {
                    v["counterexample"] = json!(format!("a={}, m={}", r.label(ce.a), m.label(ce.m)));
                    if kind.uses_mult_set() {
                        v["counterexample_defeats"] = json!(ce.defeats);
                        v["defeated_candidates"] = ce
                            .per_s
                            .iter()
                            .map(|d| json!(format!("s={}: a={}, m={}", r.label(d.s), r.label(d.a), m.label(d.m))))
                            .collect();
                    }
                }
                None => v["counterexample"] = Value::Null,
            }
            Ok((v, verdict.holds))
        }
        Err(e @ (Error::NotDisjoint | Error::NotProper)) => {
            v["holds"] = json!(false);
            v["reason"] = json!(e.to_string());
            Ok((v, false))
        }
        Err(e) => Err(e),
    }
}

fn witnesses(wb: &Workbench, kv: &Args) -> Result<(Value, bool)> {
    kv.only(&["module", "submodule", "multset"])?;
    let t = target(wb, kv)?;
    let s = t.set.as_ref().map(|(_, s)| *s).ok_or(Error::MissingMultSet)?;
    let r = t.module.ring();
    let mut v = target_json(&t);
    match predicate::weakly_s_elements(t.module, t.sub, s) {
        Ok(ws) => {
            v["weakly_s_elements"] = ws.iter().map(|&x| json!(r.label(x))).collect();
            v["holds"] = json!(!ws.is_empty());
            Ok((v, !ws.is_empty()))
        }
        Err(e @ (Error::NotDisjoint | Error::NotProper)) => {
            v["weakly_s_elements"] = json!([]);
            v["holds"] = json!(false);
            v["reason"] = json!(e.to_string());
            Ok((v, false))
        }
        Err(e) => Err(e),
    }
}

fn enumerate(wb: &Workbench, kv: &Args) -> Result<(Value, bool)> {
    kv.only(&["module", "ring"])?;
    match (kv.get("module"), kv.get("ring")) {
        (Some(name), None) => {
            let m = wb.module(name)?;
            let lattice: Vec<String> = m.submodules()?.iter().map(|n| m.set_label(n.members())).collect();
            Ok((json!({"module": name, "count": lattice.len(), "submodules": lattice}), true))
        }
        (None, Some(name)) => {
            let r = wb.ring(name)?;
            let ideals: Vec<String> =
                r.ideals()?.iter().map(|i| braces(&set_labels(|x| r.label(x).to_string(), i.members()))).collect();
            Ok((json!({"ring": name, "count": ideals.len(), "ideals": ideals}), true))
        }
        _ => Err(Error::InvalidSpec("enumerate needs exactly one of module= or ring=".into())),
    }
}

fn ring_summary(r: &FiniteRing) -> Result<Value> {
    r.audit()?;
    let label = |set: &ElemSet| braces(&set_labels(|x| r.label(x).to_string(), set));
    Ok(json!({
        "id": r.id(),
        "order": r.order(),
        "audit": "ok",
        "reduced": r.is_reduced(),
        "units": label(r.units()),
        "ideal_count": r.ideals()?.len(),
    }))
}

fn describe(wb: &Workbench, kv: &Args) -> Result<(Value, bool)> {
    kv.only(&["ring", "module", "submodule", "multset", "claim"])?;
    if kv.0.len() != 1 {
        return Err(Error::InvalidSpec("describe needs exactly one of ring=, module=, submodule=, multset=, claim=".into()));
    }
    let (key, name) = kv.0.iter().next().expect("one argument");
    let v = match key.as_str() {
        "claim" => json!({"claim": name.to_uppercase(), "statement": harness::describe(name)?}),
        "ring" => {
            let mut v = ring_summary(wb.ring(name)?)?;
            v["ring"] = json!(name);
            v
        }
        "module" => {
            let m = wb.module(name)?;
            m.audit()?;
            let r = m.ring();
            let rl = |set: &ElemSet| braces(&set_labels(|x| r.label(x).to_string(), set));
            let props = m.properties()?;
            json!({
                "module": name,
                "id": m.id(),
                "order": m.order(),
                "ring": r.id(),
                "ring_order": r.order(),
                "audit": "ok",
                "faithful": props.faithful,
                "multiplication": props.multiplication,
                "annihilator": rl(m.annihilator().members()),
                "zero_divisors": rl(&m.zero_divisors()),
                "submodule_count": m.submodules()?.len(),
            })
        }
        "submodule" => {
            let n = wb.submodule(name)?;
            let m = wb.module(&n.module)?;
            let r = m.ring();
            let res = m.residual(&n.submodule);
            let rad = res.radical(r);
            let rl = |set: &ElemSet| braces(&set_labels(|x| r.label(x).to_string(), set));
            json!({
                "submodule": name,
                "module": n.module,
                "members": m.set_label(n.submodule.members()),
                "size": n.submodule.len(),
                "proper": n.submodule.len() < m.order(),
                "residual": rl(res.members()),
                "radical_of_residual": rl(rad.members()),
            })
        }
        _ => {
            let s = wb.multset(name)?;
            let r = wb.ring(&s.ring)?;
            json!({
                "multset": name,
                "ring": s.ring,
                "members": braces(&set_labels(|x| r.label(x).to_string(), s.set.members())),
                "contains_zero": s.set.contains_zero(r),
                "saturation": braces(&set_labels(|x| r.label(x).to_string(), s.set.saturate(r).members())),
            })
        }
    };
    Ok((v, true))
}

fn verify(cli: &Cli, wb: &Workbench, kv: &Args) -> Result<(Report, bool)> {
    kv.only(&["claims"])?;
    let spec = match (kv.get("claims"), &cli.claims) {
        (Some(_), Some(_)) => return Err(Error::InvalidSpec("claims given both as flag and argument".into())),
        (Some(s), None) => s.to_string(),
        (None, Some(s)) => s.clone(),
        (None, None) => "all".to_string(),
    };
    let ids: Vec<String> = if spec.eq_ignore_ascii_case("all") {
        Vec::new()
    } else {
        spec.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
    };
    for id in &ids {
        harness::describe(id)?;
    }
    let mut params = wb.corpus.clone().unwrap_or_default();
    if let Some(n) = cli.max_ring_order {
        if n == 0 {
            return Err(Error::InvalidSpec("--max-ring-order must be positive".into()));
        }
        params.max_ring_order = n;
    }
    let corpus = Corpus::generate(&params)?;
    let report = harness::verify(&corpus, &ids)?;
    let ok = report.all_pass();
    Ok((report, ok))
}

/// Renders every field of the report, so nothing in the JSON form is lost.
fn human(report: &Report) -> String {
    let mut s = String::new();
    for r in &report.results {
        if let Some(cmd) = r.get("command").and_then(Value::as_str) {
            s.push_str(&format!("{cmd}\n"));
        }
        if let Value::Object(map) = r {
            for (k, v) in map.iter().filter(|(k, _)| *k != "command") {
                match v {
                    Value::Array(items) => {
                        s.push_str(&format!("  {k}: ({})\n", items.len()));
                        for it in items {
                            s.push_str(&format!("    {}\n", scalar(it)));
                        }
                    }
                    _ => s.push_str(&format!("  {k}: {}\n", scalar(v))),
                }
            }
        }
    }
    for c in &report.claims {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Vacuous => "VACUOUS",
        };
        s.push_str(&format!(
            "{:<16} {:<7} checked {} skipped {} failures {} holds {} ({} ms)\n",
            c.claim_id, status, c.instances_checked, c.instances_skipped_by_hypothesis, c.failures, c.holds, c.elapsed_ms
        ));
        s.push_str(&format!("    {}\n", c.description));
        for ce in &c.counterexamples {
            s.push_str(&format!("    counterexample: {ce}\n"));
        }
        for n in &c.notes {
            s.push_str(&format!("    note: {n}\n"));
        }
    }
    if !report.claims.is_empty() {
        let failed = report.claims.iter().filter(|c| c.status == Status::Fail).count();
        s.push_str(&format!(
            "{} claims, {} failed; report version {}, params {}\n",
            report.claims.len(),
            failed,
            report.version,
            report.params_fingerprint
        ));
    } else {
        s.push_str(&format!("report version {}, params {}\n", report.version, report.params_fingerprint));
    }
    s
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}
