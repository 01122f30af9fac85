//! Command implementations behind the `folres` binary. Each command returns
//! its stdout text and, when the process should exit nonzero, the failure to
//! report on stderr.

pub mod doc;
pub mod dot;
pub mod error;
pub mod sample;

use std::fs;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::json;

use folres_core::algebra::{parse_rational, rational_literal, Field, RatFunc, Scalar, UniPoly};
use folres_core::chains::{check_lemma2, continued_fraction, lemma2_violation, ASequence};
use folres_core::triples::{
    check_normal_form_identity, extract_f, modify_triple, normal_form, roundtrip_check, verify_triple, ModificationParams,
    NormalForm, ProjectiveTriple, UniRational,
};
use folres_core::{chain_verdict, extension_schedule, extract_chains, generate_A, resolve, Status};

use doc::{ChainSection, InputDocument, ReportDocument, Timing};
use error::*;

pub type Triple = ProjectiveTriple<Scalar>;
pub type Params = ModificationParams<Scalar>;

/// Largest depth `aseq` accepts.
pub const ASEQ_DEPTH_CAP: usize = 10;

#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub failure: Option<CliError>,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, failure: None }
    }

    fn failing_if(stdout: String, failed: bool, kind: &str, message: &str) -> Self {
        let failure = failed.then(|| CliError::new(kind, message, EXIT_CHECK_FAILED));
        Output { stdout, failure }
    }
}

pub type CmdResult = Result<Output, CliError>;

pub fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &str, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Default)]
pub struct ResolveArgs {
    pub input: String,
    pub out: Option<String>,
    pub dot: Option<String>,
    pub max_blowups: Option<usize>,
    pub allow_extensions: bool,
    pub timing: bool,
}

pub fn cmd_resolve(args: &ResolveArgs) -> CmdResult {
    let input = InputDocument::parse(&read(&args.input)?)?;
    let (a, b) = input.form()?;
    let opts = input.resolve_options(args.max_blowups, args.allow_extensions);
    let start = Instant::now();
    let report = resolve(&a, &b, &opts).map_err(CliError::from_core)?;
    let elapsed = start.elapsed();
    let status = report.status;
    let message = report.message.clone();
    if let Some(path) = &args.dot {
        write(path, &dot::divisor_dot(&report))?;
    }
    let mut doc = ReportDocument::new(input.variables.clone(), &opts, report);
    if args.timing {
        doc.timing = Some(Timing { resolve_micros: elapsed.as_micros() as u64 });
    }
    let text = doc.to_json();
    let stdout = match &args.out {
        Some(path) => {
            write(path, &text)?;
            String::new()
        }
        None => text,
    };
    let failure = match status {
        Status::Resolved => None,
        Status::BudgetExceeded => Some(CliError::new("BudgetExceeded", message.unwrap_or_default(), EXIT_BUDGET)),
        Status::UnsupportedField => Some(CliError::new("UnsupportedField", message.unwrap_or_default(), EXIT_FIELD)),
    };
    Ok(Output { stdout, failure })
}

fn load_resolved(path: &str) -> Result<ReportDocument, CliError> {
    let doc = ReportDocument::parse(&read(path)?)?;
    if doc.report.status != Status::Resolved {
        return Err(CliError::new(
            "NotResolved",
            format!("report status is {:?}", doc.report.status),
            EXIT_NOT_RESOLVED,
        ));
    }
    Ok(doc)
}

fn fill_chains(doc: &mut ReportDocument) -> Result<(), CliError> {
    let chains = extract_chains(&doc.report).map_err(CliError::from_core)?;
    doc.chains = Some(chains.into_iter().map(ChainSection::new).collect::<Result<_, _>>()?);
    Ok(())
}

fn fill_verdicts(doc: &mut ReportDocument) -> Result<(), CliError> {
    fill_chains(doc)?;
    let sections = doc.chains.as_ref().expect("filled");
    let verdicts = sections.iter().map(|s| chain_verdict(&s.chain)).collect::<Result<_, _>>().map_err(CliError::from_core)?;
    doc.verdicts = Some(verdicts);
    Ok(())
}

/// `folres chains`: rewrites the report with its chain section.
pub fn cmd_chains(path: &str) -> CmdResult {
    let mut doc = load_resolved(path)?;
    fill_chains(&mut doc)?;
    write(path, &doc.to_json())?;
    Ok(Output::ok(pretty(doc.chains.as_ref().expect("filled"))))
}

pub fn cmd_verdict(path: &str) -> CmdResult {
    let mut doc = load_resolved(path)?;
    fill_verdicts(&mut doc)?;
    write(path, &doc.to_json())?;
    Ok(Output::ok(pretty(doc.verdicts.as_ref().expect("filled"))))
}

pub fn cmd_schedule(path: &str) -> CmdResult {
    let mut doc = load_resolved(path)?;
    fill_verdicts(&mut doc)?;
    let chains: Vec<_> = doc.chains.iter().flatten().map(|s| s.chain.clone()).collect();
    let verdicts = doc.verdicts.clone().unwrap_or_default();
    match extension_schedule(&doc.report, &chains, &verdicts) {
        Ok(s) => {
            doc.schedule = Some(s);
            write(path, &doc.to_json())?;
            Ok(Output::ok(pretty(doc.schedule.as_ref().expect("filled"))))
        }
        Err(e) => {
            doc.schedule = None;
            write(path, &doc.to_json())?;
            Err(CliError::from_core(e))
        }
    }
}

pub fn parse_triple(text: &str) -> Result<Triple, CliError> {
    serde_json::from_str(text).map_err(CliError::parse)
}

pub fn cmd_triple_check(path: &str) -> CmdResult {
    let t = parse_triple(&read(path)?)?;
    let v = verify_triple(&t);
    let text = pretty(&json!({ "passes": v.passes(), "verdict": v }));
    Ok(Output::failing_if(text, !v.passes(), "TripleCheckFailed", "the triple violates a structure equation"))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParamsDocument {
    pub g: RatFunc<Scalar>,
    pub h: RatFunc<Scalar>,
}

#[derive(Clone, Debug, Default)]
pub struct ModifyArgs {
    pub triple: String,
    pub params: Option<String>,
    pub sweep: Option<usize>,
    pub seed: u64,
}

pub fn cmd_triple_modify(args: &ModifyArgs) -> CmdResult {
    let t = parse_triple(&read(&args.triple)?)?;
    let input_ok = verify_triple(&t).passes();
    let mut rng = sample::rng(args.seed);
    if let Some(n) = args.sweep {
        let (mut preserved, mut roundtrips) = (0usize, 0usize);
        for _ in 0..n {
            let p: Params = sample::random_params(&mut rng);
            let m = modify_triple(&t, &p).map_err(CliError::from_core)?;
            preserved += usize::from(verify_triple(&m).passes() == input_ok);
            roundtrips += usize::from(roundtrip_check(&t, &p).map_err(CliError::from_core)?);
        }
        let text = pretty(&json!({ "seed": args.seed, "runs": n, "preserved": preserved, "roundtrips": roundtrips }));
        let failed = preserved != n || roundtrips != n;
        return Ok(Output::failing_if(text, failed, "SweepFailed", "a modification broke the structure or its inverse"));
    }
    let p: Params = match &args.params {
        Some(path) => {
            let d: ParamsDocument = serde_json::from_str(&read(path)?).map_err(CliError::parse)?;
            ModificationParams { g: d.g, h: d.h }
        }
        None => sample::random_params(&mut rng),
    };
    let m = modify_triple(&t, &p).map_err(CliError::from_core)?;
    let v = verify_triple(&m);
    let rt = roundtrip_check(&t, &p).map_err(CliError::from_core)?;
    let text = pretty(&json!({
        "params": ParamsDocument { g: p.g.clone(), h: p.h.clone() },
        "triple": m,
        "passes": v.passes(),
        "roundtrip": rt,
    }));
    let failed = (input_ok && !v.passes()) || !rt;
    Ok(Output::failing_if(text, failed, "ModificationFailed", "the modified triple fails a check"))
}

pub fn cmd_triple_compare(first: &str, second: &str) -> CmdResult {
    let t1 = parse_triple(&read(first)?)?;
    let t2 = parse_triple(&read(second)?)?;
    let e = extract_f(&t1, &t2).map_err(CliError::from_core)?;
    let text = pretty(&json!({ "f": e.f, "closed": e.closed }));
    Ok(Output::failing_if(text, e.closed == Some(false), "NotClosed", "F does not satisfy dΩ = −½ dF/F ∧ Ω"))
}

#[derive(Clone, Debug, Default)]
pub struct NormalFormArgs {
    /// `i`, `ii` or `iii`.
    pub case: String,
    pub lambda: Option<String>,
    pub l: Option<u32>,
    pub c: Option<String>,
    /// `k,l` of the monomial `x^k y^l` fed to φ.
    pub phi_monomial: Option<String>,
    /// Univariate literal documents for φ's numerator and denominator.
    pub phi_num: Option<String>,
    pub phi_den: Option<String>,
    /// Rational function document for the multiplier `g`.
    pub g: Option<String>,
}

fn scalar_arg(name: &str, v: &Option<String>, default: Option<&str>) -> Result<Scalar, CliError> {
    let s = v.as_deref().or(default).ok_or_else(|| CliError::parse(format!("--{name} is required")))?;
    parse_rational(s).map(Scalar::from).map_err(|e| CliError::parse(format!("--{name}: {e}")))
}

fn unipoly_arg(text: &str) -> Result<UniPoly<Scalar>, CliError> {
    serde_json::from_str(text).map_err(CliError::parse)
}

fn normal_form_case(args: &NormalFormArgs) -> Result<NormalForm<Scalar>, CliError> {
    Ok(match args.case.as_str() {
        "i" => {
            let phi = match &args.phi_monomial {
                None => None,
                Some(kl) => {
                    let (k, l) = kl
                        .split_once(',')
                        .and_then(|(k, l)| Some((k.trim().parse().ok()?, l.trim().parse().ok()?)))
                        .ok_or_else(|| CliError::parse(format!("--phi-monomial expects k,l, got {kl:?}")))?;
                    let num = unipoly_arg(args.phi_num.as_deref().unwrap_or(r#"{"0": "1"}"#))?;
                    let den = unipoly_arg(args.phi_den.as_deref().unwrap_or(r#"{"0": "1"}"#))?;
                    Some((k, l, UniRational { num, den }))
                }
            };
            NormalForm::Linear { lambda: scalar_arg("lambda", &args.lambda, None)?, phi }
        }
        "ii" => NormalForm::Nonlinearizable { l: args.l.unwrap_or(1), c: scalar_arg("c", &args.c, Some("1"))? },
        "iii" => NormalForm::SaddleNode,
        other => return Err(CliError::parse(format!("unknown normal-form case {other:?}; expected i, ii or iii"))),
    })
}

pub fn cmd_triple_normal_form(args: &NormalFormArgs) -> CmdResult {
    let case = normal_form_case(args)?;
    let g = match &args.g {
        Some(text) => serde_json::from_str::<RatFunc<Scalar>>(text).map_err(CliError::parse)?,
        None => RatFunc::one(),
    };
    let (omega, f) = normal_form(&case, &g).map_err(CliError::from_core)?;
    let holds = check_normal_form_identity(&case, &g).map_err(CliError::from_core)?;
    let text = pretty(&json!({ "case": args.case, "omega": omega, "f": f, "identity": holds }));
    Ok(Output::failing_if(text, !holds, "IdentityFailed", "dΩ ≠ −½ dF/F ∧ Ω"))
}

#[derive(Serialize)]
struct AseqRow {
    sequence: String,
    value: String,
    head_identity: bool,
    inequalities: bool,
    violation: Option<String>,
    derivation: String,
}

pub fn cmd_aseq(depth: usize, as_json: bool) -> CmdResult {
    if depth > ASEQ_DEPTH_CAP {
        return Err(CliError::parse(format!("depth {depth} exceeds the cap of {ASEQ_DEPTH_CAP}")));
    }
    let rows: Vec<AseqRow> = generate_A(depth).iter().map(row).collect();
    if as_json {
        return Ok(Output::ok(pretty(&rows)));
    }
    let mut out = String::from("sequence\tvalue\tidentity\tinequalities\tderivation\n");
    let mark = |b: bool| if b { "PASS" } else { "FAIL" };
    for r in &rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.sequence,
            r.value,
            mark(r.head_identity),
            mark(r.inequalities),
            r.derivation
        ));
    }
    Ok(Output::ok(out))
}

fn row(s: &ASequence) -> AseqRow {
    let value = continued_fraction(s.tail()).map_or_else(|e| e.to_string(), |v| rational_literal(&v));
    let derivation: Vec<String> = s
        .derivation
        .iter()
        .map(|r| match r {
            folres_core::chains::Rule::Head => "H".to_string(),
            folres_core::chains::Rule::Insert(j) => format!("I{j}"),
        })
        .collect();
    AseqRow {
        sequence: s.to_string(),
        value,
        head_identity: s.satisfies_head_identity(),
        inequalities: check_lemma2(s),
        violation: lemma2_violation(s),
        derivation: if derivation.is_empty() { "-".into() } else { derivation.join(" ") },
    }
}

/// The `(x dy − λ y dx, dx/x + dy/y, 0)` triple as a document, for examples.
pub fn linear_model_document(lambda: &str) -> Result<String, CliError> {
    let l = parse_rational(lambda).map_err(CliError::parse)?;
    Ok(pretty(&folres_core::triples::linear_model_triple(Scalar::from_rational(l))))
}
