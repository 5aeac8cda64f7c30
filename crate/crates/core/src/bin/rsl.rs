use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use rsl::acceptance::{self, Scope};
use rsl::cache::{self, Cache, CacheStatus};
use rsl::chain::dualize;
use rsl::construct::{build_bprime, build_initial_tail, build_word};
use rsl::flag::{check_stability, full_table};
use rsl::partition::{build_scheme, verify_partitioning};
use rsl::vanish::{chain_condition_search, classify, sufficient_witness, vanishing_predicates, Kind};
use rsl::{Basis, BlockOrder, DescentWord, Error, InsertionFacet, RankSet, Result, Shape};

#[derive(Parser)]
#[command(name = "rsl", version, about = "Flag h-vectors of partition-lattice quotients")]
struct Cli {
    /// Emit CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    /// Report rank sets in dual (corank) form.
    #[arg(long, global = true)]
    dual: bool,
    /// Facet-list cache directory (falls back to RSL_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    LengthLex,
    Distinguished,
}

#[derive(Subcommand)]
enum Command {
    /// Full flag f/h table.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// b_S(n).
    B {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        ranks: String,
    },
    /// b'_S(n), for S_{n-1} x S_1.
    Bprime {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        ranks: String,
    },
    /// Check the interval partitioning of the quotient complex.
    PartitionVerify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, value_enum)]
        order: Option<OrderArg>,
    },
    /// Build a facet with a prescribed descent word.
    Construct {
        #[arg(long, conflicts_with = "ranks")]
        word: Option<String>,
        #[arg(long)]
        ranks: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Build the hook-shape facets instead.
        #[arg(long)]
        hook: bool,
        /// Include the bar-insertion diagram.
        #[arg(long)]
        render: bool,
    },
    /// Sweep the vanishing rules and chain conditions against computed values.
    Vanish {
        #[arg(long)]
        n: usize,
    },
    /// Run the acceptance suite.
    VerifyAll {
        #[arg(long, default_value_t = 9)]
        max_n: usize,
    },
    /// Compare b_S(n) and b_S(m).
    Stability {
        #[arg(long, default_value = "")]
        ranks: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Serialize)]
struct CacheEntry {
    n: usize,
    lambda: Vec<usize>,
    status: CacheStatus,
}

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    parameters: Value,
    results: Value,
    timing: Value,
    cache: Vec<CacheEntry>,
}

struct Outcome {
    command: &'static str,
    parameters: Value,
    results: Value,
    rows: Vec<Vec<String>>,
    ok: bool,
}

struct Ctx {
    dual: bool,
    cache: Option<Cache>,
    touched: Vec<CacheEntry>,
}

impl Ctx {
    fn warm(&mut self, shape: &Shape) -> Result<()> {
        let status = cache::warm(shape, self.cache.as_ref())?;
        self.touched.push(CacheEntry { n: shape.n(), lambda: shape.parts(), status });
        Ok(())
    }

    fn show(&self, s: &RankSet) -> Vec<usize> {
        if self.dual {
            s.to_dual().ranks().to_vec()
        } else {
            s.to_primal().ranks().to_vec()
        }
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Error::Parse(format!("{what}: {x:?} is not a nonnegative integer"))))
        .collect()
}

fn shape_of(n: usize, lambda: Option<&str>) -> Result<Shape> {
    let Some(l) = lambda else {
        return Shape::full(n);
    };
    let shape = Shape::new(&parse_list(l, "lambda")?)?;
    if shape.n() != n {
        return Err(Error::InvalidShape(format!("{shape} has size {}, not {n}", shape.n())));
    }
    Ok(shape)
}

fn fmt_set(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(";")
}

fn facet_json(f: &InsertionFacet, order: &BlockOrder, render: bool) -> Value {
    let mut v = json!({
        "insertions": f.gaps(),
        "descent_word": f.descent_word(order).to_string(),
        "chain": f.chain_type().serialize(),
    });
    if render {
        let d = if f.shape().letters() == 1 { f.render() } else { f.render_letters() };
        v["diagram"] = json!(d);
    }
    v
}

fn run(cli: &Cli, ctx: &mut Ctx) -> Result<Outcome> {
    match &cli.command {
        Command::Table { n, lambda } => {
            let shape = shape_of(*n, lambda.as_deref())?;
            ctx.warm(&shape)?;
            let table = full_table(&shape)?;
            let mut entries = table.entries();
            if ctx.dual {
                for e in &mut entries {
                    e.ranks = RankSet::primal(*n, &e.ranks)?.to_dual().ranks().to_vec();
                }
            }
            let mut rows = vec![vec!["S".into(), "f".into(), "h".into()]];
            rows.extend(entries.iter().map(|e| vec![fmt_set(&e.ranks), e.f.to_string(), e.h.to_string()]));
            Ok(Outcome {
                command: "table",
                parameters: json!({"n": n, "lambda": shape.parts(), "dual": ctx.dual}),
                results: json!({"n": n, "lambda": shape.parts(), "entries": entries}),
                rows,
                ok: true,
            })
        }
        Command::B { n, ranks } | Command::Bprime { n, ranks } => {
            let hook = matches!(cli.command, Command::Bprime { .. });
            let s = RankSet::primal(*n, &parse_list(ranks, "ranks")?)?;
            let shape = if hook { Shape::hook(*n)? } else { Shape::full(*n)? };
            ctx.warm(&shape)?;
            let value = full_table(&shape)?.h(&s)?;
            let name = if hook { "bprime" } else { "b" };
            Ok(Outcome {
                command: name,
                parameters: json!({"n": n, "S": s.ranks()}),
                results: json!({"n": n, "S": ctx.show(&s), "value": value}),
                rows: vec![vec!["n".into(), "S".into(), "value".into()], vec![n.to_string(), fmt_set(&ctx.show(&s)), value.to_string()]],
                ok: true,
            })
        }
        Command::PartitionVerify { n, lambda, order } => {
            let shape = shape_of(*n, lambda.as_deref())?;
            let order = match order {
                Some(OrderArg::LengthLex) => BlockOrder::LengthLex,
                Some(OrderArg::Distinguished) => BlockOrder::distinguished_for(&shape)?,
                None if shape.letters() == 1 => BlockOrder::LengthLex,
                None => BlockOrder::distinguished_for(&shape).unwrap_or(BlockOrder::LengthLex),
            };
            let report = verify_partitioning(&build_scheme(&shape, &order)?)?;
            let mut rows = vec![["index", "insertions", "diagram", "minimal_support", "descents", "unique_minimal"]
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()];
            for f in &report.per_facet {
                rows.push(vec![
                    f.index.to_string(),
                    fmt_set(&f.insertions),
                    f.diagram.clone(),
                    fmt_set(&f.minimal_support),
                    fmt_set(&f.descents),
                    f.unique_minimal.to_string(),
                ]);
            }
            Ok(Outcome {
                command: "partition-verify",
                parameters: json!({"n": n, "lambda": shape.parts(), "order": order.name()}),
                ok: report.verified,
                results: serde_json::to_value(&report).expect("serializable"),
                rows,
            })
        }
        Command::Construct { word, ranks, n, hook, render } => {
            let (w, s, n) = match (word, ranks) {
                (Some(w), _) => {
                    let w: DescentWord = w.parse()?;
                    if let Some(n) = n {
                        if *n != w.n() {
                            return Err(Error::Domain(format!("word {w} has length {}, so n must be {}", w.len(), w.n())));
                        }
                    }
                    (w.clone(), dualize(&w.to_set()), w.n())
                }
                (None, Some(r)) => {
                    let n = n.ok_or_else(|| Error::Domain("--ranks needs --n".into()))?;
                    let s = RankSet::primal(n, &parse_list(r, "ranks")?)?;
                    (DescentWord::of_primal(&s), s, n)
                }
                (None, None) => return Err(Error::Domain("give --word or --ranks".into())),
            };
            let (order, built) = if *hook {
                let shape = Shape::hook(n)?;
                (BlockOrder::distinguished_for(&shape)?, build_bprime(&s, n)?)
            } else if !s.contains(1) {
                let f = build_word(&w)?;
                (BlockOrder::LengthLex, vec![rsl::construct::Construction { facet: f, method: "descending-runs" }])
            } else {
                (BlockOrder::LengthLex, vec![build_initial_tail(&s, n)?])
            };
            let facets: Vec<Value> = built
                .iter()
                .map(|c| {
                    let mut v = facet_json(&c.facet, &order, *render);
                    v["method"] = json!(c.method);
                    v
                })
                .collect();
            let mut rows = vec![vec!["method".into(), "insertions".into(), "descent_word".into(), "diagram".into()]];
            for (c, v) in built.iter().zip(&facets) {
                rows.push(vec![
                    c.method.to_string(),
                    fmt_set(c.facet.gaps()),
                    v["descent_word"].as_str().unwrap_or_default().to_string(),
                    v.get("diagram").and_then(Value::as_str).unwrap_or_default().to_string(),
                ]);
            }
            Ok(Outcome {
                command: "construct",
                parameters: json!({"n": n, "word": w.to_string(), "S": s.ranks(), "hook": hook}),
                results: json!({"word": w.to_string(), "compact": w.compact(), "S": ctx.show(&s), "facets": facets}),
                rows,
                ok: true,
            })
        }
        Command::Vanish { n } => {
            let shape = Shape::full(*n)?;
            ctx.warm(&shape)?;
            let table = full_table(&shape)?;
            let mut out = Vec::new();
            let mut rows = vec![["S", "h", "rules", "chain_witness", "sufficient_witness", "consistent"]
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()];
            let mut ok = true;
            for s in RankSet::all(*n, Basis::Primal) {
                let h = table.h(&s)?;
                let rules = vanishing_predicates(&s, *n);
                let tail = classify(&s).kind == Kind::InitialPlusTail;
                let chain = if tail { Some(chain_condition_search(&s, *n)?.is_some()) } else { None };
                let suff = if tail { Some(sufficient_witness(&s, *n)?.is_some()) } else { None };
                let consistent = (rules.is_empty() || h == 0)
                    && (h <= 0 || chain != Some(false))
                    && (suff != Some(true) || h > 0)
                    && (suff != Some(true) || chain == Some(true));
                ok &= consistent;
                let names: Vec<String> = rules.iter().map(|r| serde_json::to_value(r).expect("enum").as_str().unwrap_or("").to_string()).collect();
                let shown = ctx.show(&s);
                rows.push(vec![
                    fmt_set(&shown),
                    h.to_string(),
                    names.join(";"),
                    chain.map(|b| b.to_string()).unwrap_or_default(),
                    suff.map(|b| b.to_string()).unwrap_or_default(),
                    consistent.to_string(),
                ]);
                out.push(json!({"S": shown, "h": h, "rules": names, "chain_witness": chain, "sufficient_witness": suff, "consistent": consistent}));
            }
            Ok(Outcome { command: "vanish", parameters: json!({"n": n}), results: json!({"n": n, "sets": out}), rows, ok })
        }
        Command::VerifyAll { max_n } => {
            let results = acceptance::run_all(Scope { max_n: *max_n })?;
            let ok = results.iter().all(|r| r.passed);
            let mut rows = vec![vec!["id".into(), "name".into(), "passed".into(), "checked".into(), "failures".into()]];
            for r in &results {
                eprintln!("{}", r.line());
                rows.push(vec![r.id.to_string(), r.name.into(), r.passed.to_string(), r.checked.to_string(), r.failures.len().to_string()]);
            }
            Ok(Outcome {
                command: "verify-all",
                parameters: json!({"max_n": max_n}),
                results: json!({"passed": ok, "criteria": results}),
                rows,
                ok,
            })
        }
        Command::Stability { ranks, n, m } => {
            let r = parse_list(ranks, "ranks")?;
            RankSet::primal(*n, &r)?;
            RankSet::primal(*m, &r)?;
            let equal = check_stability(&r, *n, *m)?;
            let bn = rsl::flag::b(*n, &r)?;
            let bm = rsl::flag::b(*m, &r)?;
            Ok(Outcome {
                command: "stability",
                parameters: json!({"S": r, "n": n, "m": m}),
                results: json!({"S": r, "b_n": bn, "b_m": bm, "equal": equal}),
                rows: vec![vec!["S".into(), "b_n".into(), "b_m".into(), "equal".into()], vec![fmt_set(&r), bn.to_string(), bm.to_string(), equal.to_string()]],
                ok: equal,
            })
        }
    }
}

fn write_csv(rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ctx = Ctx { dual: cli.dual, cache: Cache::resolve(cli.cache_dir.as_deref()), touched: Vec::new() };
    let start = Instant::now();
    match run(&cli, &mut ctx) {
        Ok(out) => {
            if cli.csv {
                if let Err(e) = write_csv(&out.rows) {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            } else {
                let report = RunReport {
                    command: out.command,
                    parameters: out.parameters,
                    results: out.results,
                    timing: json!({"millis": start.elapsed().as_millis() as u64}),
                    cache: ctx.touched,
                };
                let mut out = std::io::stdout().lock();
                let text = serde_json::to_string_pretty(&report).expect("serializable");
                if writeln!(out, "{text}").is_err() {
                    return ExitCode::from(2);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", json!({"error": {"kind": e.kind(), "message": e.to_string()}}));
            ExitCode::from(2)
        }
    }
}
