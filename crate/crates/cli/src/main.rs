use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use monodromy::braid::{normal_form, permutation_of, words_equal};
use monodromy::config::defaults;
use monodromy::equiv::{bfs_hurwitz_equiv, bfs_weak_equiv, check_certificate, rewrite_theorem_main};
use monodromy::instances::{gen_instances, Profile};
use monodromy::io::{read_factorization, FactorizationDocument};
use monodromy::verify::verify_paper;
use monodromy::{BraidWord, Error, Factorization, MoveCertificate, SearchLimits, SearchOutcome};

const OK: u8 = 0;
const NO: u8 = 1;
const INCONCLUSIVE: u8 = 2;
const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "monodromy", version, about = "Braid monodromy factorizations: normal forms, invariants and equivalence certificates")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Strand count for braid words without an `m=` header.
    #[arg(long, global = true)]
    m: Option<usize>,
    #[arg(long, global = true)]
    limits_depth: Option<usize>,
    #[arg(long, global = true)]
    limits_states: Option<usize>,
    /// Worker threads for the searches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Read and print letters as a, b, c, ... (a^-1 for inverses).
    #[arg(long, global = true)]
    letters: bool,
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Plain text output (the default).
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Left-greedy normal form of a braid word.
    Nf { word: String },
    /// Decides whether two braid words are equal.
    Eq { first: String, second: String },
    /// Permutation of a braid word.
    Perm { word: String },
    /// Product of a factorization.
    Alpha { file: PathBuf },
    /// Multi-degree, c-multi-degree, symmetric image and generated subgroup.
    Invariants { file: PathBuf },
    /// Bounded search for Hurwitz moves from the first factorization to the second.
    HurwitzSearch {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded search with Hurwitz moves and node-pair cancellations.
    WeakEquiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Constructive weak equivalence of two factorizations of a power of Δ².
    RewriteMain {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replays a certificate on the first factorization and compares with the second.
    CheckCert { first: PathBuf, second: PathBuf, certificate: PathBuf },
    /// Seeded instance pairs for rewrite-main.
    GenInstances {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value = "conjugate")]
        profile: String,
        /// Writes `<name>.s1.json` and `<name>.s2.json` here instead of printing.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Runs the built-in verification suite.
    VerifyPaper,
}

struct Ctx {
    global: Global,
}

impl Ctx {
    fn word(&self, text: &str) -> Result<BraidWord, Error> {
        BraidWord::parse(text, self.global.m, self.global.letters)
    }

    fn show(&self, w: &BraidWord) -> String {
        if self.global.letters {
            w.to_alias_string()
        } else {
            w.letters().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        }
    }

    fn limits(&self) -> SearchLimits {
        let mut l = defaults().limits;
        if let Some(d) = self.global.limits_depth {
            l.max_depth = d;
        }
        if let Some(s) = self.global.limits_states {
            l.max_states = s;
        }
        l
    }

    fn emit(&self, json: Value, text: String) {
        if self.global.json {
            println!("{}", serde_json::to_string_pretty(&json).expect("values serialize"));
        } else {
            println!("{text}");
        }
    }
}

fn load(path: &Path) -> Result<Factorization, Error> {
    read_factorization(path).map(|(s, _)| s)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(INPUT_ERROR);
        }
    }
    let ctx = Ctx { global: cli.global };
    match run(&ctx, cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Result<u8, Error> {
    match command {
        Command::Nf { word } => {
            let w = ctx.word(&word)?;
            let nf = normal_form(&w);
            let factors: Vec<Value> = nf.factors().iter().map(|p| json!(p.to_string())).collect();
            ctx.emit(
                json!({"m": w.strand_count(), "delta_power": nf.inf(), "factors": factors, "word": nf.to_word().letters()}),
                format!("{nf}\n{}", ctx.show(&nf.to_word())),
            );
            Ok(OK)
        }
        Command::Eq { first, second } => {
            let (a, b) = (ctx.word(&first)?, ctx.word(&second)?);
            let equal = words_equal(&a, &b)?;
            ctx.emit(json!({ "equal": equal }), if equal { "equal" } else { "not equal" }.into());
            Ok(if equal { OK } else { NO })
        }
        Command::Perm { word } => {
            let p = permutation_of(&ctx.word(&word)?);
            ctx.emit(json!({ "permutation": p.to_string() }), p.to_string());
            Ok(OK)
        }
        Command::Alpha { file } => {
            let s = load(&file)?;
            let (a, nf) = (s.alpha(), s.alpha_nf());
            ctx.emit(
                json!({"word": a.letters(), "normal_form": nf.to_string(), "delta_power": nf.inf()}),
                format!("{}\n{nf}", ctx.show(&a)),
            );
            Ok(OK)
        }
        Command::Invariants { file } => invariants(ctx, &load(&file)?),
        Command::HurwitzSearch { first, second, out } => {
            let (s1, s2) = (load(&first)?, load(&second)?);
            report(ctx, bfs_hurwitz_equiv(&s1, &s2, &ctx.limits())?, out.as_deref())
        }
        Command::WeakEquiv { first, second, out } => {
            let (s1, s2) = (load(&first)?, load(&second)?);
            report(ctx, bfs_weak_equiv(&s1, &s2, &ctx.limits())?, out.as_deref())
        }
        Command::RewriteMain { first, second, out } => {
            let (s1, s2) = (load(&first)?, load(&second)?);
            report(ctx, rewrite_theorem_main(&s1, &s2, &ctx.limits())?, out.as_deref())
        }
        Command::CheckCert { first, second, certificate } => {
            let (s1, s2) = (load(&first)?, load(&second)?);
            let text = std::fs::read_to_string(&certificate)
                .map_err(|e| Error::Io(format!("{}: {e}", certificate.display())))?;
            let cert = MoveCertificate::from_json(&text, s1.strand_count())?;
            let check = check_certificate(&s1, &s2, &cert);
            ctx.emit(
                json!({"ok": check.ok, "detail": check.detail}),
                format!("{}: {}", if check.ok { "valid" } else { "invalid" }, check.detail),
            );
            Ok(if check.ok { OK } else { NO })
        }
        Command::GenInstances { count, profile, out_dir } => {
            let m = ctx.global.m.ok_or_else(|| Error::Parse("gen-instances needs --m".into()))?;
            let profile: Profile = profile.parse()?;
            let seed = ctx.global.seed.unwrap_or(defaults().seeds.gen_instances);
            let pairs = gen_instances(m, count, profile, seed)?;
            let docs: Vec<(String, FactorizationDocument, FactorizationDocument)> = pairs
                .iter()
                .map(|p| {
                    let d1 = FactorizationDocument::from_factorization(&p.s1, Some(&format!("{}.s1", p.name)));
                    let d2 = FactorizationDocument::from_factorization(&p.s2, Some(&format!("{}.s2", p.name)));
                    (p.name.clone(), d1, d2)
                })
                .collect();
            match out_dir {
                Some(dir) => {
                    std::fs::create_dir_all(&dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
                    for (name, d1, d2) in &docs {
                        for (suffix, d) in [("s1", d1), ("s2", d2)] {
                            let path = dir.join(format!("{name}.{suffix}.json"));
                            std::fs::write(&path, d.to_json() + "\n")
                                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                        }
                    }
                    eprintln!("wrote {} pairs to {}", docs.len(), dir.display());
                }
                None => {
                    let list: Vec<Value> = docs
                        .iter()
                        .map(|(name, d1, d2)| json!({"name": name, "s1": d1, "s2": d2}))
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&list).expect("documents serialize"));
                }
            }
            Ok(OK)
        }
        Command::VerifyPaper => {
            let r = verify_paper();
            if ctx.global.json {
                println!("{}", r.to_json());
            } else {
                println!("{r}");
            }
            Ok(if r.passed() { OK } else { NO })
        }
    }
}

fn invariants(ctx: &Ctx, s: &Factorization) -> Result<u8, Error> {
    let md = s.multi_degree();
    let cmd = s.c_multi_degree();
    let image = s.sym_image();
    let h = s.generated_sym_subgroup()?;
    ctx.emit(
        json!({
            "multi_degree": md,
            "c_multi_degree": cmd,
            "sym_image": image.entries().iter().map(|e| e.perm.to_string()).collect::<Vec<_>>(),
            "subgroup_order": h.order(),
            "subgroup_is_full": h.is_full(),
        }),
        format!(
            "multi-degree: {md}\nc-multi-degree: {cmd:?}\nsym image: {image}\nsubgroup order: {}{}",
            h.order(),
            if h.is_full() { " (full)" } else { "" }
        ),
    );
    Ok(OK)
}

fn report(ctx: &Ctx, outcome: SearchOutcome, out: Option<&Path>) -> Result<u8, Error> {
    let (code, label, detail) = match &outcome {
        SearchOutcome::Equivalent(c) => (OK, "equivalent", format!("{} moves", c.len())),
        SearchOutcome::Inequivalent(why) => (NO, "inequivalent", why.clone()),
        SearchOutcome::Inconclusive(why) => (INCONCLUSIVE, "inconclusive", why.clone()),
    };
    let cert = outcome.certificate();
    if let (Some(path), Some(c)) = (out, cert) {
        std::fs::write(path, c.to_json() + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    let cert_json: Value = cert.map(|c| serde_json::from_str(&c.to_json()).expect("certificate JSON")).unwrap_or(Value::Null);
    let moves = cert.map(|c| c.moves.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ")).unwrap_or_default();
    ctx.emit(
        json!({"outcome": label, "detail": detail, "certificate": cert_json}),
        if moves.is_empty() { format!("{label}: {detail}") } else { format!("{label}: {detail}\n{moves}") },
    );
    Ok(code)
}
