//! `lrc`: build, check, attack and search local rainbow colourings.
//!
//! Exit codes: 0 property holds / witness found, 1 refuted / not found,
//! 2 usage, 3 budget or guard exhausted, 4 I/O, 5 parse, 6 precondition.

mod manifest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lrc_core::attacks::{attack_cycle, attack_nice, is_nice, AttackOutcome};
use lrc_core::classify::{classification_table, classify_growth, render_rows, render_table};
use lrc_core::constructions::{
    construct_kw, construct_p3, construct_te, construct_tp, GammaProvider,
};
use lrc_core::egy::{
    egy_lift, scrambling_exact_min, scrambling_random, verify_scrambling, ExactScrambling,
    RandomScrambling,
};
use lrc_core::formats::*;
use lrc_core::pattern::catalogue;
use lrc_core::search::{
    g_exact_min, g_feasible, pq_exact_min, Decision, Minimum, SearchBudget,
};
use lrc_core::verification::{validate_certificate, verify_kw, verify_local, verify_pq, Subject};
use lrc_core::{Certificate, Error, PatternGraph, Verdict};

use manifest::Recorder;

#[derive(Parser)]
#[command(name = "lrc", version, about = "Local rainbow colourings and Erdős–Gyárfás colourings")]
struct Cli {
    /// Worker threads for the parallel verifiers (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Seed for randomised commands
    #[arg(long, global = true, env = "LRC_SEED", default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a colouring and verify it
    Construct(ConstructArgs),
    /// Run an exhaustive checker
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Search for refutation certificates
    #[command(subcommand)]
    Attack(AttackCmd),
    /// Exact minimum-colour search at tiny n
    #[command(subcommand)]
    Search(SearchCmd),
    /// Growth class of patterns
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Scrambling orders and the uniformity lift
    #[command(subcommand)]
    Egy(EgyCmd),
    /// Produce a verified (p,q)-colouring of r-sets
    Gamma(GammaArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    P3,
    Tp,
    Te,
    Kw,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Set size for the kw family
    #[arg(long, default_value_t = 2)]
    w: usize,
    /// `injective`, `greedy` or the path of an HGC1 file
    #[arg(long, default_value = "greedy")]
    gamma: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Locality of an LRC1 collection for a pattern
    Local {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// (p,q) property of an HGC1 colouring
    Pq {
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// k-scrambling property of an ORD1 family
    Scrambling {
        #[arg(long)]
        orders: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Bounded-weight property of a KWC1 colouring
    Kw {
        #[arg(long)]
        colouring: PathBuf,
    },
    /// Re-check a CERT1 certificate against its subject
    Cert {
        #[arg(long)]
        cert: PathBuf,
        /// LRC1 collection (with --pattern for copy certificates)
        #[arg(long)]
        colouring: Option<PathBuf>,
        #[arg(long)]
        pattern: Option<String>,
        /// HGC1 colouring, with --p and --q
        #[arg(long)]
        hypergraph: Option<PathBuf>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        /// ORD1 family, with --k
        #[arg(long)]
        orders: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Subcommand)]
enum AttackCmd {
    /// Even-cycle attack through the auxiliary graph
    Cycle {
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long, default_value_t = 2)]
        l: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Pigeonhole attack on a nice pattern
    Nice {
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 1_000)]
        budget: u64,
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct BudgetArgs {
    #[arg(long, default_value_t = 50_000_000)]
    node_cap: u64,
    #[arg(long, default_value_t = 60.0)]
    time_cap: f64,
    /// Ignore the search-size guard
    #[arg(long)]
    force: bool,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            node_cap: self.node_cap,
            time_cap_secs: self.time_cap,
            force: self.force,
        }
    }
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Is there an (n,H)-local collection with k colours?
    G {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest k for (n,H)-locality
    GMin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest k for a (p,q)-colouring of r-sets
    F {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// Growth class of one pattern
    Pattern { pattern: String },
    /// All isolated-free classes up to max-edges edges
    Table {
        #[arg(long, default_value_t = 4)]
        max_edges: usize,
        /// Tab-separated rows instead of the aligned table
        #[arg(long)]
        machine: bool,
    },
}

#[derive(Subcommand)]
enum EgyCmd {
    /// Random orders until k-scrambling
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10_000)]
        max_rounds: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum k-scrambling family by exhaustive search (n <= 8)
    Exact {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        m_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift an (r,r-1)-colouring of (r-1)-sets to r-sets
    Lift {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        orders: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GammaMethod {
    Injective,
    Greedy,
}

#[derive(Args)]
struct GammaArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    r: usize,
    #[arg(long, default_value_t = 4)]
    p: usize,
    #[arg(long, default_value_t = 3)]
    q: usize,
    #[arg(long, value_enum, default_value = "greedy")]
    method: GammaMethod,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failed run: exit code plus message.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Input(_) => 2,
            Error::GuardExceeded { .. } => 3,
            Error::Io(_) => 4,
            Error::Parse { .. } => 5,
            Error::Precondition { .. } => 6,
        };
        let mut message = e.to_string();
        if let Error::Precondition {
            certificate: Some(cert),
            ..
        } = &e
        {
            message.push('\n');
            message.push_str(&write_certificate(cert));
        }
        Failure { code, message }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 4,
            message: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: msg.into(),
    }
}

type Outcome = Result<u8, Failure>;

struct Ctx {
    rec: Recorder,
    seed: u64,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        self.rec.read_input(path).map_err(|e| Failure {
            code: 4,
            message: format!("{}: {e}", path.display()),
        })
    }

    /// Writes to `out` (with a manifest) or prints to stdout.
    fn emit(&mut self, out: Option<&Path>, body: &str) -> Result<(), Failure> {
        match out {
            Some(p) => {
                self.rec.write_output(p, body)?;
                println!("wrote {}", p.display());
            }
            None => print!("{body}"),
        }
        Ok(())
    }

    fn emit_cert(&mut self, out: Option<&Path>, cert: &Certificate) -> Result<(), Failure> {
        let text = write_certificate(cert);
        match out {
            Some(p) => {
                self.rec.write_output(p, &text)?;
                println!("certificate written to {}", p.display());
            }
            None => print!("{text}"),
        }
        Ok(())
    }

    fn pattern(&mut self, spec: &str) -> Result<PatternGraph, Failure> {
        let path = Path::new(spec);
        if path.is_file() {
            let text = self.read(path)?;
            return Ok(PatternGraph::parse(text.trim())?);
        }
        if spec.contains("edges") {
            return Ok(PatternGraph::parse(spec)?);
        }
        catalogue::by_name(spec).ok_or_else(|| usage(format!("unknown pattern {spec:?}")))
    }
}

fn verdict_code(v: &Verdict) -> u8 {
    if v.holds() {
        0
    } else {
        1
    }
}

fn report_verdict(ctx: &mut Ctx, what: &str, v: &Verdict, cert_out: Option<&Path>) -> Outcome {
    match v {
        Verdict::Holds => println!("{what}: holds"),
        Verdict::Fails(cert) => {
            println!("{what}: fails");
            ctx.emit_cert(cert_out, cert)?;
        }
    }
    Ok(verdict_code(v))
}

fn gamma_provider(ctx: &mut Ctx, spec: &str) -> Result<GammaProvider, Failure> {
    Ok(match spec {
        "injective" => GammaProvider::Injective,
        "greedy" => GammaProvider::Greedy,
        path => {
            let text = ctx.read(Path::new(path))?;
            GammaProvider::FromFile(read_hypergraph_colouring(&text)?)
        }
    })
}

fn construct(ctx: &mut Ctx, a: &ConstructArgs) -> Outcome {
    let n = a.n;
    let (body, verdict_ok, summary) = match a.family {
        Family::Te => {
            let c = construct_te(n)?;
            let ok = verify_local(&c, &catalogue::triangle_edge())?.holds();
            (write_local_collection(&c), ok, format!("te n={n} k={}", c.k()))
        }
        Family::P3 | Family::Tp => {
            let gamma = gamma_provider(ctx, &a.gamma)?.provide(n, 3, 4, 3)?;
            let (c, pattern, name) = match a.family {
                Family::P3 => (construct_p3(n, &gamma)?, catalogue::path(3), "p3"),
                _ => (construct_tp(n, &gamma)?, catalogue::triangle_pendant(), "tp"),
            };
            let ok = verify_local(&c, &pattern)?.holds();
            (write_local_collection(&c), ok, format!("{name} n={n} k={}", c.k()))
        }
        Family::Kw => {
            let w = a.w;
            let gamma = gamma_provider(ctx, &a.gamma)?.provide(n, w + 1, w + 2, w + 1)?;
            let kw = construct_kw(n, w, &gamma)?;
            let ok = verify_kw(&kw).holds();
            (write_kw_colouring(&kw), ok, format!("kw n={n} w={w} k={}", kw.k()))
        }
    };
    ctx.emit(a.out.as_deref(), &body)?;
    println!("{summary} verified: {}", if verdict_ok { "ok" } else { "FAILED" });
    Ok(if verdict_ok { 0 } else { 1 })
}

fn verify(ctx: &mut Ctx, cmd: &VerifyCmd) -> Outcome {
    match cmd {
        VerifyCmd::Local {
            pattern,
            colouring,
            cert_out,
        } => {
            let h = ctx.pattern(pattern)?;
            let c = read_local_collection(&ctx.read(colouring)?)?;
            let v = verify_local(&c, &h)?;
            report_verdict(ctx, &format!("({}, {h})-local", c.n()), &v, cert_out.as_deref())
        }
        VerifyCmd::Pq {
            colouring,
            p,
            q,
            cert_out,
        } => {
            let g = read_hypergraph_colouring(&ctx.read(colouring)?)?;
            let v = verify_pq(&g, *p, *q)?;
            report_verdict(ctx, &format!("({p},{q})-colouring"), &v, cert_out.as_deref())
        }
        VerifyCmd::Scrambling {
            orders,
            k,
            cert_out,
        } => {
            let f = read_order_family(&ctx.read(orders)?)?;
            let v = verify_scrambling(&f, *k)?;
            report_verdict(ctx, &format!("{k}-scrambling"), &v, cert_out.as_deref())
        }
        VerifyCmd::Kw { colouring } => {
            let kw = read_kw_colouring(&ctx.read(colouring)?)?;
            match verify_kw(&kw) {
                Verdict::Holds => {
                    println!("kw property: holds");
                    Ok(0)
                }
                Verdict::Fails(v) => {
                    println!("kw property: fails at path {:?} with common set {:?}", v.path, v.common);
                    Ok(1)
                }
            }
        }
        VerifyCmd::Cert {
            cert,
            colouring,
            pattern,
            hypergraph,
            p,
            q,
            orders,
            k,
        } => {
            let certificate = read_certificate(&ctx.read(cert)?)?;
            let valid = if let Some(path) = colouring {
                let c = read_local_collection(&ctx.read(path)?)?;
                match pattern {
                    Some(spec) => {
                        let h = ctx.pattern(spec)?;
                        validate_certificate(
                            &certificate,
                            Subject::Local {
                                colouring: &c,
                                pattern: &h,
                            },
                        )?
                    }
                    None => validate_certificate(&certificate, Subject::Collection(&c))?,
                }
            } else if let Some(path) = hypergraph {
                let g = read_hypergraph_colouring(&ctx.read(path)?)?;
                let (p, q) = p.zip(*q).ok_or_else(|| usage("--hypergraph needs --p and --q"))?;
                validate_certificate(&certificate, Subject::Pq { colouring: &g, p, q })?
            } else if let Some(path) = orders {
                let f = read_order_family(&ctx.read(path)?)?;
                let k = k.ok_or_else(|| usage("--orders needs --k"))?;
                validate_certificate(&certificate, Subject::Scrambling { family: &f, k })?
            } else {
                return Err(usage("give --colouring, --hypergraph or --orders"));
            };
            println!("certificate {}: {}", certificate.variant_name(), if valid { "valid" } else { "invalid" });
            Ok(if valid { 0 } else { 1 })
        }
    }
}

fn attack_report(ctx: &mut Ctx, out: AttackOutcome, cert_out: Option<&Path>) -> Outcome {
    match out {
        AttackOutcome::Found(cert) => {
            println!("found {}", cert.variant_name());
            ctx.emit_cert(cert_out, &cert)?;
            Ok(0)
        }
        AttackOutcome::NotFound {
            budget_exhausted: true,
        } => {
            println!("not found (budget exhausted)");
            Ok(3)
        }
        AttackOutcome::NotFound { .. } => {
            println!("not found");
            Ok(1)
        }
    }
}

fn attack(ctx: &mut Ctx, cmd: &AttackCmd) -> Outcome {
    match cmd {
        AttackCmd::Cycle {
            colouring,
            l,
            budget,
            cert_out,
        } => {
            let c = read_local_collection(&ctx.read(colouring)?)?;
            let out = attack_cycle(&c, *l, *budget)?;
            attack_report(ctx, out, cert_out.as_deref())
        }
        AttackCmd::Nice {
            colouring,
            pattern,
            budget,
            cert_out,
        } => {
            let h = ctx.pattern(pattern)?;
            let c = read_local_collection(&ctx.read(colouring)?)?;
            let w = is_nice(&h).ok_or_else(|| Failure {
                code: 6,
                message: format!("pattern {h} is not nice"),
            })?;
            let out = attack_nice(&c, &h, &w, *budget)?;
            attack_report(ctx, out, cert_out.as_deref())
        }
    }
}

fn report_minimum<W>(
    ctx: &mut Ctx,
    m: Minimum<W>,
    out: Option<&Path>,
    write: impl Fn(&W) -> String,
) -> Outcome {
    match m {
        Minimum::Found { k, witness, nodes } => {
            println!("{k}");
            eprintln!("nodes: {nodes}");
            if out.is_some() {
                ctx.emit(out, &write(&witness))?;
            }
            Ok(0)
        }
        Minimum::Unknown { last_k, nodes } => {
            println!("unknown: search cap reached at k = {last_k}");
            eprintln!("nodes: {nodes}");
            Ok(3)
        }
    }
}

fn search(ctx: &mut Ctx, cmd: &SearchCmd) -> Outcome {
    match cmd {
        SearchCmd::G {
            n,
            pattern,
            k,
            budget,
            out,
        } => {
            let h = ctx.pattern(pattern)?;
            let report = g_feasible(*n, &h, *k, &budget.budget())?;
            eprintln!("nodes: {}", report.nodes);
            match report.decision {
                Decision::Feasible(w) => {
                    println!("feasible");
                    if out.is_some() {
                        ctx.emit(out.as_deref(), &write_local_collection(&w))?;
                    }
                    Ok(0)
                }
                Decision::Infeasible => {
                    println!("infeasible");
                    Ok(1)
                }
                Decision::Unknown => {
                    println!("unknown");
                    Ok(3)
                }
            }
        }
        SearchCmd::GMin {
            n,
            pattern,
            budget,
            out,
        } => {
            let h = ctx.pattern(pattern)?;
            let m = g_exact_min(*n, &h, &budget.budget())?;
            report_minimum(ctx, m, out.as_deref(), write_local_collection)
        }
        SearchCmd::F {
            n,
            r,
            p,
            q,
            budget,
            out,
        } => {
            let m = pq_exact_min(*n, *r, *p, *q, &budget.budget())?;
            report_minimum(ctx, m, out.as_deref(), write_hypergraph_colouring)
        }
    }
}

fn classify(ctx: &mut Ctx, cmd: &ClassifyCmd) -> Outcome {
    match cmd {
        ClassifyCmd::Pattern { pattern } => {
            let h = ctx.pattern(pattern)?;
            println!("{}", classify_growth(&h));
            Ok(0)
        }
        ClassifyCmd::Table { max_edges, machine } => {
            let rows = classification_table(*max_edges)?;
            if *machine {
                print!("{}", render_rows(&rows));
            } else {
                print!("{}", render_table(&rows));
            }
            Ok(0)
        }
    }
}

fn egy(ctx: &mut Ctx, cmd: &EgyCmd) -> Outcome {
    match cmd {
        EgyCmd::Random {
            n,
            k,
            max_rounds,
            out,
        } => match scrambling_random(*n, *k, ctx.seed, *max_rounds)? {
            RandomScrambling::Found(f) => {
                eprintln!("M = {}", f.len());
                ctx.emit(out.as_deref(), &write_order_family(&f))?;
                Ok(0)
            }
            RandomScrambling::Exhausted { partial, violation } => {
                println!("no {k}-scrambling family within {} orders", partial.len());
                print!("{}", write_certificate(&violation));
                Ok(3)
            }
        },
        EgyCmd::Exact { n, k, m_cap, out } => match scrambling_exact_min(*n, *k, *m_cap)? {
            ExactScrambling::Found(f) => {
                eprintln!("M = {}", f.len());
                ctx.emit(out.as_deref(), &write_order_family(&f))?;
                Ok(0)
            }
            ExactScrambling::Infeasible { m_cap } => {
                println!("infeasible with at most {m_cap} orders");
                Ok(1)
            }
        },
        EgyCmd::Lift { input, orders, out } => {
            let c = read_hypergraph_colouring(&ctx.read(input)?)?;
            let f = read_order_family(&ctx.read(orders)?)?;
            let lifted = egy_lift(&c, &f)?;
            let r = lifted.r();
            let v = verify_pq(&lifted, r + 1, r)?;
            ctx.emit(out.as_deref(), &write_hypergraph_colouring(&lifted))?;
            println!(
                "lifted to r = {r} with {} colours; ({},{r})-colouring: {}",
                lifted.k(),
                r + 1,
                if v.holds() { "verified" } else { "FAILED" }
            );
            Ok(verdict_code(&v))
        }
    }
}

fn gamma(ctx: &mut Ctx, a: &GammaArgs) -> Outcome {
    let provider = match a.method {
        GammaMethod::Injective => GammaProvider::Injective,
        GammaMethod::Greedy => GammaProvider::Greedy,
    };
    let g = provider.provide(a.n, a.r, a.p, a.q)?;
    eprintln!("{} colours", g.k());
    ctx.emit(a.out.as_deref(), &write_hypergraph_colouring(&g))?;
    Ok(0)
}

fn run(cli: &Cli, ctx: &mut Ctx) -> Outcome {
    match &cli.command {
        Command::Construct(a) => construct(ctx, a),
        Command::Verify(c) => verify(ctx, c),
        Command::Attack(c) => attack(ctx, c),
        Command::Search(c) => search(ctx, c),
        Command::Classify(c) => classify(ctx, c),
        Command::Egy(c) => egy(ctx, c),
        Command::Gamma(a) => gamma(ctx, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    let mut ctx = Ctx {
        rec: Recorder::new(cli.seed, cli.jobs),
        seed: cli.seed,
    };
    let result = run(&cli, &mut ctx);
    let (code, outcome) = match result {
        Ok(code) => (code, format!("exit {code}")),
        Err(f) => {
            eprintln!("error: {}", f.message);
            (f.code, format!("exit {}: {}", f.code, f.message))
        }
    };
    if let Err(e) = ctx.rec.finish(&outcome) {
        eprintln!("error: writing manifest: {e}");
        return ExitCode::from(4);
    }
    ExitCode::from(code)
}
