//! `ppcalc`: command-line access to the pp-formula calculus.
//!
//! Exit status is 0 when the answer is yes (valid, holds, pure, zero), 1 when
//! it is no, and 2 on usage or computational errors.

mod input;
mod output;

use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ppcalc_core::classes::{
    check_class, herzog_tensor_zero, is_pure_submodule, s_radical_bounded, ClassName, ClassReport, ClassWitness,
    PurityMode, Scope, TensorZero, Verdict,
};
use ppcalc_core::decide::{leq, leq_certificate, leq_semantic, Evidence};
use ppcalc_core::eval::solution_subgroup;
use ppcalc_core::experiments::{
    describe_sentence, direct_sum_experiment, flat_axioms, mckinsey_experiment, products_experiment,
    pure_sub_experiment, standard_corpus, torsionfree_axioms,
};
use ppcalc_core::formula::{parse_formula, print_ast, print_formula, FormulaBound, PpMatrixForm, Side, SymmetricSentence};
use ppcalc_core::json::{
    certificate_artifact, countermodel_artifact, formula_to_json, melem_to_json, module_to_json, parse_artifact,
    verify, witness_to_json, Artifact,
};
use ppcalc_core::matrix::RingMatrix;
use ppcalc_core::module::{FpModule, Subgroup};
use ppcalc_core::ring::{Ring, RingKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ppcalc", version, about = "Positive primitive formulas over rings")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// `Z`, `Zn:<n>` or `table:<path>` (defaults to Z, or to the module's ring)
    #[arg(long, global = true)]
    ring: Option<String>,
    #[arg(long, global = true, default_value = "left")]
    side: Side,
    /// Number of free variables x1..xm
    #[arg(long, global = true, default_value_t = 1)]
    arity: usize,
    /// Enumeration bound: `k` or `rows,witnesses,coeff`
    #[arg(long, global = true)]
    bound: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Element cap for modules over table rings
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Print formulas as matrices
    #[arg(long, global = true)]
    raw: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its syntax tree
    Parse { formula: String },
    /// Print the matrix normal form of a formula
    Normalize { formula: String },
    /// Print the elementary dual of a formula
    Dual { formula: String },
    /// Decide whether φ ≤ ψ holds in every module
    Leq {
        phi: String,
        psi: String,
        #[arg(long)]
        certificate: bool,
        #[arg(long)]
        countermodel: bool,
    },
    /// Evaluate a formula in a module
    Eval {
        #[arg(long)]
        module: String,
        #[arg(long)]
        formula: String,
    },
    /// Check membership of a module in a class
    Check {
        class: ClassName,
        #[arg(long)]
        module: String,
    },
    /// The pp radical of a module with respect to test modules (default: the ring)
    Radical {
        #[arg(long)]
        module: String,
        #[arg(long, num_args = 1..)]
        wrt: Vec<String>,
    },
    /// Decide whether the submodule generated by `--sub` is pure
    Purity {
        #[arg(long)]
        module: String,
        /// Generators separated by `;`, each as comma-separated coefficients
        #[arg(long)]
        sub: String,
    },
    /// Decide whether ā ⊗ b̄ vanishes, searching for a pp witness
    TensorZero {
        /// The right module A
        #[arg(long)]
        left: String,
        /// The left module B
        #[arg(long)]
        right: String,
        #[arg(long)]
        lelem: String,
        #[arg(long)]
        relem: String,
    },
    /// Preservation experiments over the standard corpus
    Experiment(ExperimentArgs),
    /// Compare the two decision procedures on random formula pairs
    Agree {
        #[arg(long, default_value_t = 500)]
        pairs: usize,
    },
    /// Re-check an emitted certificate, countermodel or witness
    Verify { file: String },
}

#[derive(Args)]
struct ExperimentArgs {
    kind: ExperimentKindArg,
    /// `{φ1; φ2} -> {ψ1; ψ2}`; repeatable
    #[arg(long)]
    sentence: Vec<String>,
    /// Add the flat axioms of the ring at `--bound`
    #[arg(long)]
    flat_axioms: bool,
    /// Add `rx = 0 -> x = 0` for 2 ≤ r ≤ N
    #[arg(long, value_name = "N")]
    torsionfree_axioms: Option<u64>,
    /// Module files replacing the standard corpus
    #[arg(long, num_args = 1..)]
    corpus: Vec<String>,
    /// Largest number of summands (default 4, or 2 for mckinsey)
    #[arg(long)]
    max_factors: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentKindArg {
    Products,
    PureSub,
    DirectSum,
    Mckinsey,
}

/// What a command prints and whether its answer was yes.
struct Reply {
    human: String,
    json: Value,
    yes: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            match cli.global.format {
                Format::Human => println!("{}", r.human.trim_end()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable")),
            }
            if r.yes {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

impl Global {
    fn ring(&self) -> Result<Ring> {
        self.ring.as_deref().map_or(Ok(Ring::integers()), input::ring)
    }

    fn explicit_ring(&self) -> Result<Option<Ring>> {
        self.ring.as_deref().map(input::ring).transpose()
    }

    fn bound(&self) -> Result<FormulaBound> {
        input::bound(self.bound.as_deref())
    }

    fn module(&self, path: &str) -> Result<FpModule> {
        input::module(path, self.explicit_ring()?.as_ref(), self.cap)
    }

    fn formula(&self, text: &str, ring: &Ring) -> Result<PpMatrixForm> {
        input::formula(text, ring, self.side, self.arity)
    }
}

fn run(cli: &Cli) -> Result<Reply> {
    let g = &cli.global;
    match &cli.command {
        Command::Parse { formula } => {
            let p = parse_formula(formula, &g.ring()?, g.side, g.arity).with_context(|| format!("formula `{formula}`"))?;
            let ast = print_ast(&p);
            Ok(Reply { json: json!({ "ast": ast }), human: ast, yes: true })
        }
        Command::Normalize { formula } => {
            let f = g.formula(formula, &g.ring()?)?;
            Ok(Reply { human: output::formula(&f, g.raw), json: serde_json::to_value(formula_to_json(&f)?)?, yes: true })
        }
        Command::Dual { formula } => {
            let f = g.formula(formula, &g.ring()?)?.dual();
            Ok(Reply { human: output::formula(&f, g.raw), json: serde_json::to_value(formula_to_json(&f)?)?, yes: true })
        }
        Command::Leq { phi, psi, certificate, countermodel } => leq_cmd(g, phi, psi, *certificate, *countermodel),
        Command::Eval { module, formula } => {
            let m = g.module(module)?;
            let f = input::formula(formula, m.ring(), m.side(), g.arity)?;
            let s = solution_subgroup(&m, &f)?;
            Ok(Reply { human: output::subgroup(&s), json: subgroup_json(&s)?, yes: true })
        }
        Command::Check { class, module } => {
            let m = g.module(module)?;
            let report = check_class(&m, *class, &g.bound()?)?;
            class_reply(&m, *class, &report, g.raw)
        }
        Command::Radical { module, wrt } => {
            let m = g.module(module)?;
            let tests: Vec<FpModule> = if wrt.is_empty() {
                vec![FpModule::free(m.ring(), m.side(), 1)?]
            } else {
                wrt.iter().map(|p| g.module(p)).collect::<Result<_>>()?
            };
            let s = s_radical_bounded(&m, &tests, &g.bound()?)?;
            Ok(Reply { human: output::subgroup(&s), json: subgroup_json(&s)?, yes: true })
        }
        Command::Purity { module, sub } => {
            let m = g.module(module)?;
            let gens = input::elements(&m, sub)?;
            let s = Subgroup::from_elems(&m, &gens);
            let mode = match m.ring().kind() {
                RingKind::Table => PurityMode::Bounded(g.bound()?),
                _ => PurityMode::ExactZ,
            };
            let report = is_pure_submodule(&m, &s, mode)?;
            purity_reply(&m, &gens, &report, g.raw)
        }
        Command::TensorZero { left, right, lelem, relem } => {
            let a = input::module_on_side(left, Side::Right, g.cap)?;
            let b = input::module_on_side(right, Side::Left, g.cap)?;
            let (x, y) = (input::elements(&a, lelem)?, input::elements(&b, relem)?);
            let t = herzog_tensor_zero(&a, &x, &b, &y, &g.bound()?)?;
            let (human, witness) = match &t {
                TensorZero::ZeroWithWitness(phi) => (format!("zero\nwitness: {}", output::formula(phi, g.raw)), Some(phi)),
                TensorZero::ZeroNoWitness => ("zero (no witness at bound)".to_string(), None),
                TensorZero::Nonzero => ("nonzero".to_string(), None),
            };
            let artifact = match witness {
                Some(phi) => serde_json::to_value(Artifact::TensorWitness {
                    left: module_to_json(&a)?,
                    right: module_to_json(&b)?,
                    lelem: x.iter().map(|e| melem_to_json(&a, e)).collect::<ppcalc_core::Result<_>>()?,
                    relem: y.iter().map(|e| melem_to_json(&b, e)).collect::<ppcalc_core::Result<_>>()?,
                    formula: formula_to_json(phi)?,
                })?,
                None => Value::Null,
            };
            Ok(Reply { human, json: json!({ "zero": t.is_zero(), "artifact": artifact }), yes: t.is_zero() })
        }
        Command::Experiment(args) => experiment_cmd(g, args),
        Command::Agree { pairs } => agree_cmd(g, *pairs),
        Command::Verify { file } => {
            let text = input::read(file)?;
            let value: Value = serde_json::from_str(&text).with_context(|| format!("malformed JSON in {file}"))?;
            let artifact = match value.get("artifact") {
                Some(a) if !a.is_null() => parse_artifact(&a.to_string())?,
                Some(_) => bail!("{file} carries no artifact"),
                None => parse_artifact(&text)?,
            };
            let ok = verify(&artifact)?;
            Ok(Reply { human: if ok { "valid" } else { "invalid" }.into(), json: json!({ "valid": ok }), yes: ok })
        }
    }
}

fn leq_cmd(g: &Global, phi: &str, psi: &str, certificate: bool, countermodel: bool) -> Result<Reply> {
    let ring = g.ring()?;
    let (phi, psi) = (g.formula(phi, &ring)?, g.formula(psi, &ring)?);
    let d = leq(&phi, &psi)?;
    let mut human = vec![if d.verdict { "valid" } else { "invalid" }.to_string()];
    let mut artifact = Value::Null;
    match &d.evidence {
        Some(Evidence::Certificate(c)) if certificate => {
            let r = phi.ring();
            human.push(format!("X = {}", output::matrix(r, &c.x)));
            human.push(format!("Y = {}", output::matrix(r, &c.y)));
            human.push(format!("Z = {}", output::matrix(r, &c.z)));
            artifact = serde_json::to_value(certificate_artifact(&phi, &psi, c)?)?;
        }
        Some(Evidence::Countermodel { module, witness }) if countermodel => {
            human.push(format!("module: {}", module.describe()));
            human.push(format!("witness: {}", output::tuple(module, witness)));
            artifact = serde_json::to_value(countermodel_artifact(&phi, &psi, module, witness)?)?;
        }
        None if countermodel && !d.verdict => human.push("no countermodel within the size cap".into()),
        _ => {}
    }
    Ok(Reply { human: human.join("\n"), json: json!({ "valid": d.verdict, "artifact": artifact }), yes: d.verdict })
}

fn subgroup_json(s: &Subgroup) -> Result<Value> {
    let m = s.module();
    let tuples = |ts: Vec<Vec<ppcalc_core::module::ModElem>>| -> Result<Value> {
        let v: Vec<Vec<_>> = ts
            .iter()
            .map(|t| t.iter().map(|e| melem_to_json(m, e)).collect::<ppcalc_core::Result<_>>())
            .collect::<ppcalc_core::Result<_>>()?;
        Ok(serde_json::to_value(v)?)
    };
    let size = s.size().map(|n| n.to_string());
    Ok(match s.elements(1 << 12) {
        Some(mut all) => {
            all.sort();
            json!({ "size": size, "elements": tuples(all)? })
        }
        None => json!({ "size": size, "generators": tuples(s.generators())? }),
    })
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::HoldsAtBound => "holds-at-bound",
    }
}

fn scope_json(s: &Scope) -> Value {
    match s {
        Scope::Exact => json!("exact"),
        Scope::Bounded(b) => json!({ "bound": b }),
    }
}

fn witness_lines(m: &FpModule, w: &ClassWitness, raw: bool) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(phi) = &w.formula {
        out.push(format!("witness: {}", output::formula(phi, raw)));
    }
    if let Some(r) = &w.scalar {
        out.push(format!("scalar: {}", m.ring().format_elem(r)));
    }
    if let Some(e) = &w.element {
        out.push(format!("element: {}", output::elem(m, e)));
    }
    out
}

fn class_reply(m: &FpModule, class: ClassName, r: &ClassReport, raw: bool) -> Result<Reply> {
    let mut human = vec![format!("{}: {}", class.as_str(), verdict_str(r.verdict))];
    if let Scope::Bounded(b) = r.scope {
        human[0].push_str(&format!(" (bound {},{},{})", b.max_rows, b.max_witnesses, b.coeff_bound));
    }
    let mut artifact = Value::Null;
    if let Some(w) = &r.witness {
        human.extend(witness_lines(m, w, raw));
        artifact = serde_json::to_value(Artifact::ClassWitness {
            class,
            module: module_to_json(m)?,
            witness: witness_to_json(m, w)?,
        })?;
    }
    if let Some(o) = &r.oracle {
        human.push(format!("oracle {}: {}", o.name, if o.holds { "holds" } else { "fails" }));
    }
    let json = json!({
        "class": class,
        "verdict": verdict_str(r.verdict),
        "scope": scope_json(&r.scope),
        "oracle": r.oracle.as_ref().map(|o| json!({ "name": o.name, "holds": o.holds })),
        "artifact": artifact,
    });
    Ok(Reply { human: human.join("\n"), json, yes: r.verdict.holds() })
}

fn purity_reply(m: &FpModule, gens: &[ppcalc_core::module::ModElem], r: &ClassReport, raw: bool) -> Result<Reply> {
    let pure = r.verdict.holds();
    let mut human = vec![match r.verdict {
        Verdict::Fails => "not pure".to_string(),
        Verdict::Holds => "pure".to_string(),
        Verdict::HoldsAtBound => "pure at bound".to_string(),
    }];
    let mut artifact = Value::Null;
    if let Some(w) = &r.witness {
        human.extend(witness_lines(m, w, raw));
        artifact = serde_json::to_value(Artifact::PurityWitness {
            module: module_to_json(m)?,
            sub: gens.iter().map(|e| melem_to_json(m, e)).collect::<ppcalc_core::Result<_>>()?,
            witness: witness_to_json(m, w)?,
        })?;
    }
    let json = json!({ "pure": pure, "verdict": verdict_str(r.verdict), "scope": scope_json(&r.scope), "artifact": artifact });
    Ok(Reply { human: human.join("\n"), json, yes: pure })
}

fn experiment_cmd(g: &Global, args: &ExperimentArgs) -> Result<Reply> {
    let ring = g.ring()?;
    let mut sentences: Vec<SymmetricSentence> =
        args.sentence.iter().map(|s| input::sentence(s, &ring, g.side, g.arity)).collect::<Result<_>>()?;
    if args.flat_axioms {
        sentences.extend(flat_axioms(&ring, g.side, &g.bound()?)?);
    }
    if let Some(n) = args.torsionfree_axioms {
        sentences.extend(torsionfree_axioms(&ring, g.side, n));
    }
    if sentences.is_empty() {
        bail!("no sentences given (use --sentence, --flat-axioms or --torsionfree-axioms)");
    }
    let corpus: Vec<FpModule> = if args.corpus.is_empty() {
        standard_corpus()
    } else {
        args.corpus.iter().map(|p| g.module(p)).collect::<Result<_>>()?
    };
    let max_factors = args.max_factors.unwrap_or(if args.kind == ExperimentKindArg::Mckinsey { 2 } else { 4 });
    if args.kind == ExperimentKindArg::Mckinsey {
        let [s] = &sentences[..] else { bail!("the McKinsey experiment takes exactly one sentence") };
        let r = mckinsey_experiment(s.antecedent(), s.consequent(), &corpus, max_factors)?;
        let pick = |i: Option<usize>| i.map_or("none".to_string(), |i| print_formula(&s.consequent()[i]));
        let human = format!(
            "sentence: {}\nvalid single consequent: {}\npreserved on corpus: {}\nreduced to: {}\nstructures: {}",
            describe_sentence(s),
            pick(r.valid_single),
            r.preserved_on_corpus,
            pick(r.reduced),
            r.structures
        );
        let yes = r.reduced.is_some();
        return Ok(Reply { human, json: serde_json::to_value(&r)?, yes });
    }
    let report = match args.kind {
        ExperimentKindArg::Products => products_experiment(&sentences, &corpus, max_factors)?,
        ExperimentKindArg::DirectSum => direct_sum_experiment(&sentences, &corpus, max_factors)?,
        ExperimentKindArg::PureSub => pure_sub_experiment(&sentences, &corpus, &g.bound()?)?,
        ExperimentKindArg::Mckinsey => unreachable!(),
    };
    let mut human = vec![format!(
        "{} sentences, {} checks, {} skipped, {} violations",
        report.sentences,
        report.checked,
        report.skipped,
        report.violations.len()
    )];
    for v in &report.violations {
        human.push(format!("violation: {} in {} at {:?}", v.sentence, v.modules.join(" ; "), v.tuple));
    }
    Ok(Reply { human: human.join("\n"), json: serde_json::to_value(&report)?, yes: report.violations.is_empty() })
}

fn random_formula(rng: &mut ChaCha8Rng, ring: &Ring, side: Side, arity: usize) -> Result<PpMatrixForm> {
    let k = rng.gen_range(1..=2);
    let l = rng.gen_range(0..=2);
    let mut entries = |n: usize| (0..n).map(|_| ring.int(rng.gen_range(-3..=3))).collect::<Vec<_>>();
    let a = RingMatrix::new(ring, k, l, entries(k * l))?;
    let b = RingMatrix::new(ring, k, arity, entries(k * arity))?;
    Ok(PpMatrixForm::from_left_view(ring.clone(), side, arity, a, b)?)
}

fn agree_cmd(g: &Global, pairs: usize) -> Result<Reply> {
    let ring = g.ring()?;
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let (mut valid, mut disagreements, mut skipped) = (0, Vec::new(), 0);
    for _ in 0..pairs {
        let phi = random_formula(&mut rng, &ring, g.side, g.arity)?;
        let psi = random_formula(&mut rng, &ring, g.side, g.arity)?;
        let a = leq_certificate(&phi, &psi)?.verdict;
        let b = match leq_semantic(&phi, &psi) {
            Ok(d) => d.verdict,
            Err(ppcalc_core::Error::SizeCap { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        valid += usize::from(a);
        if a != b {
            disagreements.push(format!("{} <= {}", print_formula(&phi), print_formula(&psi)));
        }
    }
    let mut human = vec![format!(
        "seed {}: {pairs} pairs over {ring}, {valid} valid, {skipped} skipped, {} disagreements",
        g.seed,
        disagreements.len()
    )];
    human.extend(disagreements.iter().map(|d| format!("disagreement: {d}")));
    let json = json!({
        "seed": g.seed,
        "ring": ring.to_string(),
        "pairs": pairs,
        "valid": valid,
        "skipped": skipped,
        "disagreements": disagreements,
    });
    Ok(Reply { human: human.join("\n"), yes: disagreements.is_empty(), json })
}
