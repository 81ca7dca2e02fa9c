use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mmph::coord::{
    complete_hyperedge, split_master, vecfind_master, verify_coordinatization, Coordinatization, Ring, VECFIND_BUDGET,
};
use mmph::generation::{collect_distribution, generate, Filters, GenerationConfig, M3Mode, Method};
use mmph::lang::{format_coordinatization, parse_coordinatization, parse_many, parse_scalar, serialize_mmph, validate, Mode};
use mmph::solver::{classify, criticalize, find_assignment, has_parity_proof, is_critical, FullEdgeFilter, Kind};
use mmph::structure::{
    connected_components, delete_vertices, drop_m1_vertices, fill, max_loop_order, multiplicities, strip_edges, Strip,
    LOOP_BUDGET,
};
use mmph::{Mmph, VertexLabel};

/// Parse, classify, verify and generate MMP hypergraphs.
///
/// Inputs hold one or more MMPH strings (each ending in '.'); `-` reads
/// standard input. Commands apply to every hypergraph in the input.
#[derive(Parser)]
#[command(name = "mmph", version)]
struct Cli {
    /// Write results here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// MMPH file, or `-` for standard input.
    input: PathBuf,
    /// Dimension n; inferred from the largest hyperedge when absent.
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Args)]
struct Assert {
    /// Exit with status 1 when the answer is negative.
    #[arg(long)]
    assert: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    Rational,
    Golden,
    Eisenstein,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Rational => Ring::Rational,
            RingArg::Golden => Ring::Golden,
            RingArg::Eisenstein => Ring::Eisenstein,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    M1,
    M2,
    M3,
}

#[derive(Clone, Copy, ValueEnum)]
enum FullEdgeArg {
    Strict,
    Relaxed,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Print each hypergraph in canonical form.
    Parse(Input),
    /// Check the structural rules.
    Validate {
        #[command(flatten)]
        input: Input,
        /// Also report hyperedges sharing exactly one vertex, and fail on them.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        assert: Assert,
    },
    /// Print k, l, n and vertex multiplicities.
    Info(Input),
    /// Print a 0/1 assignment or "non-binary".
    Solve {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        assert: Assert,
    },
    /// Print BMMPH, KS-NBMMPH or nonKS-NBMMPH.
    Classify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        assert: Assert,
    },
    /// Check criticality.
    Critical {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        assert: Assert,
    },
    /// Remove hyperedges in seeded order while the result stays non-binary.
    Criticalize {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        seed: u64,
    },
    /// Remove hyperedges by index or at random.
    Strip {
        #[command(flatten)]
        input: Input,
        /// Comma-separated hyperedge indices (0-based).
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["count", "seed"])]
        edges: Vec<usize>,
        /// Number of random hyperedges to remove.
        #[arg(long, requires = "seed")]
        count: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Pad every hyperedge with fresh vertices up to n.
    Fill {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
    },
    /// Remove vertices of multiplicity 1.
    DropM1 {
        #[command(flatten)]
        input: Input,
        /// Repeat until no multiplicity-1 vertex is left.
        #[arg(long)]
        fixpoint: bool,
    },
    /// Remove the given vertices from every hyperedge.
    DeleteVertices {
        #[command(flatten)]
        input: Input,
        /// Comma-separated labels.
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<String>,
    },
    /// Check for a parity proof.
    Parity {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        assert: Assert,
    },
    /// Report the largest loop order.
    Loops {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = LOOP_BUDGET)]
        budget: u64,
    },
    /// Print each connected component.
    Components(Input),
    /// Build the master of all n-dim vectors over a component alphabet.
    Vecfind {
        #[arg(long)]
        n: usize,
        /// Comma-separated components, e.g. `0,1,-1` or `0,phi,-phi,phi-1`.
        #[arg(long)]
        components: String,
        #[arg(long, value_enum, default_value = "rational")]
        ring: RingArg,
        /// Write the coordinatization here.
        #[arg(long)]
        vec_out: Option<PathBuf>,
        /// Report the connected pieces instead of the whole master.
        #[arg(long)]
        split: bool,
        #[arg(long, default_value_t = VECFIND_BUDGET)]
        budget: u64,
    },
    /// Check a coordinatization against each hypergraph.
    VerifyCoord {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        vec: PathBuf,
        #[arg(long, value_enum, default_value = "rational")]
        ring: RingArg,
        #[command(flatten)]
        assert: Assert,
    },
    /// Extend mutually orthogonal vectors to n of them.
    Complete {
        /// Coordinatization file holding the vectors to extend.
        #[arg(long)]
        vec: PathBuf,
        #[arg(long, value_enum, default_value = "rational")]
        ring: RingArg,
        #[arg(long)]
        n: usize,
    },
    /// Run M1, M2 or M3 and print the emitted hypergraphs.
    Generate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        runs: usize,
        #[arg(long)]
        max_strip: Option<usize>,
        /// Hyperedge pool for M2.
        #[arg(long)]
        pool: Option<PathBuf>,
        /// M3 batch mode with up to this many deletions per run.
        #[arg(long)]
        m3_batch: Option<usize>,
        #[arg(long, value_enum, default_value = "off")]
        full_edge: FullEdgeArg,
        /// Emit every critical non-binary result, KS or not.
        #[arg(long)]
        any_kind: bool,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Write `k,l,count` for the emitted hypergraphs here.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Print the `k,l,count` distribution of the input hypergraphs.
    Stats(Input),
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load(input: &Input) -> Result<Vec<Mmph>> {
    let text = read_text(&input.input)?;
    let hs = parse_many(&text, input.dim).with_context(|| format!("parsing {}", input.input.display()))?;
    if hs.is_empty() {
        bail!("{} holds no hypergraph", input.input.display());
    }
    Ok(hs)
}

fn load_coords(path: &Path, ring: RingArg) -> Result<Coordinatization> {
    let text = read_text(path)?;
    parse_coordinatization(&text, ring.into()).with_context(|| format!("parsing {}", path.display()))
}

fn label(s: &str) -> Result<VertexLabel> {
    VertexLabel::parse(s).ok_or_else(|| anyhow!("bad vertex label {s:?}"))
}

/// Output text plus whether every answer was positive.
struct Report {
    text: String,
    ok: bool,
}

impl Report {
    fn lines(lines: impl IntoIterator<Item = String>) -> Report {
        let mut text = String::new();
        for l in lines {
            text.push_str(&l);
            text.push('\n');
        }
        Report { text, ok: true }
    }
}

fn each(hs: &[Mmph], f: impl Fn(&Mmph) -> Result<String>) -> Result<Report> {
    Ok(Report::lines(hs.iter().map(f).collect::<Result<Vec<_>>>()?))
}

fn each_check(hs: &[Mmph], f: impl Fn(&Mmph) -> (bool, String)) -> Report {
    let mut ok = true;
    let mut lines = Vec::new();
    for h in hs {
        let (good, line) = f(h);
        ok &= good;
        lines.push(line);
    }
    Report { ok, ..Report::lines(lines) }
}

fn run(command: Command) -> Result<(Report, bool)> {
    let plain = |r: Report| (r, false);
    Ok(match command {
        Command::Parse(input) => plain(each(&load(&input)?, |h| Ok(serialize_mmph(h)))?),
        Command::Validate { input, strict, assert } => {
            let mode = if strict { Mode::Strict } else { Mode::Lenient };
            let r = each_check(&load(&input)?, |h| {
                let v = validate(h, mode);
                let mut s = String::new();
                for x in &v.violations {
                    let edges: Vec<String> = x.edges.iter().map(ToString::to_string).collect();
                    s.push_str(&format!("{} [{}] {}\n", x.rule.id(), edges.join(","), x.message));
                }
                s.push_str(&format!("lenient_pass={} strict_pass={}", v.lenient_pass, v.strict_pass));
                (if strict { v.strict_pass } else { v.lenient_pass }, s)
            });
            (r, assert.assert)
        }
        Command::Info(input) => plain(each(&load(&input)?, |h| {
            let m: Vec<String> = multiplicities(h).iter().map(|m| format!("{}:{}", m.vertex, m.m)).collect();
            Ok(format!("k={} l={} n={}\nm {}", h.k(), h.l(), h.dimension(), m.join(" ")))
        })?),
        Command::Solve { input, assert } => {
            let r = each_check(&load(&input)?, |h| match find_assignment(h) {
                Some(a) => (true, a.to_lines().trim_end().to_string()),
                None => (false, "non-binary".into()),
            });
            (r, assert.assert)
        }
        Command::Classify { input, assert } => {
            let r = each_check(&load(&input)?, |h| {
                let kind = classify(h).kind;
                (kind != Kind::Bmmph, kind.name().to_string())
            });
            (r, assert.assert)
        }
        Command::Critical { input, assert } => {
            let r = each_check(&load(&input)?, |h| {
                let c = is_critical(h);
                (c, if c { "critical" } else { "not critical" }.to_string())
            });
            (r, assert.assert)
        }
        Command::Criticalize { input, seed } => {
            plain(each(&load(&input)?, |h| Ok(serialize_mmph(&criticalize(h, seed)?)))?)
        }
        Command::Strip { input, edges, count, seed } => {
            let strip = match (count, seed) {
                (Some(count), Some(seed)) => Strip::Random { count, seed },
                (None, _) if !edges.is_empty() => Strip::Indices(edges.into_iter().collect::<BTreeSet<_>>()),
                _ => bail!("strip needs --edges, or --count with --seed"),
            };
            plain(each(&load(&input)?, |h| Ok(serialize_mmph(&strip_edges(h, &strip)?)))?)
        }
        Command::Fill { input, n } => plain(each(&load(&input)?, |h| Ok(serialize_mmph(&fill(h, n)?)))?),
        Command::DropM1 { input, fixpoint } => {
            plain(each(&load(&input)?, |h| Ok(serialize_mmph(&drop_m1_vertices(h, fixpoint)?)))?)
        }
        Command::DeleteVertices { input, vertices } => {
            let victims = vertices.iter().map(|s| label(s)).collect::<Result<Vec<_>>>()?;
            plain(each(&load(&input)?, |h| Ok(serialize_mmph(&delete_vertices(h, &victims)?)))?)
        }
        Command::Parity { input, assert } => {
            let r = each_check(&load(&input)?, |h| {
                let p = has_parity_proof(h);
                (p, if p { "parity" } else { "no parity" }.to_string())
            });
            (r, assert.assert)
        }
        Command::Loops { input, budget } => plain(each(&load(&input)?, |h| {
            let r = max_loop_order(h, budget);
            let witness = r
                .witness
                .map(|w| w.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
                .unwrap_or_else(|| "-".into());
            Ok(format!("max_order={} exhaustive={} witness={witness}", r.max_order, r.exhaustive))
        })?),
        Command::Components(input) => {
            let mut lines = Vec::new();
            for h in load(&input)? {
                lines.extend(connected_components(&h).iter().map(serialize_mmph));
            }
            plain(Report::lines(lines))
        }
        Command::Vecfind { n, components, ring, vec_out, split, budget } => {
            let ring: Ring = ring.into();
            let comps = components
                .split(',')
                .map(|c| parse_scalar(c, ring).with_context(|| format!("component {c:?}")))
                .collect::<Result<Vec<_>>>()?;
            let (h, c) = vecfind_master(n, &comps, ring, budget)?;
            if let Some(path) = vec_out {
                fs::write(&path, format_coordinatization(&c)).with_context(|| format!("writing {}", path.display()))?;
            }
            if split {
                let parts = split_master(&h, &c, 200_000)?;
                plain(Report::lines(parts.iter().map(|p| {
                    let binary = match p.binary {
                        Some(true) => "binary",
                        Some(false) => "non-binary",
                        None => "undecided",
                    };
                    let g = &p.hypergraph;
                    format!("{}-{} {binary} copies={} {}", g.k(), g.l(), p.copies, serialize_mmph(g))
                })))
            } else {
                plain(Report::lines([serialize_mmph(&h)]))
            }
        }
        Command::VerifyCoord { input, vec, ring, assert } => {
            let c = load_coords(&vec, ring)?;
            let mut ok = true;
            let mut lines = Vec::new();
            for h in load(&input)? {
                let r = verify_coordinatization(&h, &c)?;
                ok &= r.passed;
                for f in &r.failures {
                    lines.push(format!("edge {} pair {}-{} product {}", f.edge, f.pair.0, f.pair.1, f.value));
                }
                for (e, (a, b)) in &r.parallel_pairs {
                    lines.push(format!("edge {e} pair {a}-{b} parallel"));
                }
                lines.push(if r.passed { "pass".into() } else { "fail".into() });
            }
            (Report { ok, ..Report::lines(lines) }, assert.assert)
        }
        Command::Complete { vec, ring, n } => {
            let c = load_coords(&vec, ring)?;
            let given: Vec<_> = c.vectors().values().cloned().collect();
            let out = complete_hyperedge(&given, n)?;
            plain(Report::lines(out.iter().map(ToString::to_string)))
        }
        Command::Generate {
            input,
            method,
            seed,
            runs,
            max_strip,
            pool,
            m3_batch,
            full_edge,
            any_kind,
            workers,
            stats,
        } => {
            let master = load(&input)?.remove(0);
            let method = match method {
                MethodArg::M1 => Method::M1,
                MethodArg::M2 => Method::M2,
                MethodArg::M3 => Method::M3,
            };
            let mut cfg = GenerationConfig::new(method, master, seed, runs);
            if let Some(m) = max_strip {
                cfg.max_strip = m;
            }
            if let Some(p) = pool {
                let pool = parse_many(&read_text(&p)?, input.dim)?.into_iter().next().ok_or_else(|| anyhow!("empty pool"))?;
                cfg.max_strip = max_strip.unwrap_or(cfg.master.l().max(pool.l()));
                cfg.addition_pool = Some(pool);
            }
            if let Some(d) = m3_batch {
                cfg.m3_mode = M3Mode::Batch { max_delete: d };
            }
            cfg.filters = Filters {
                require_non_ks: !any_kind,
                full_edge: match full_edge {
                    FullEdgeArg::Strict => FullEdgeFilter::Strict,
                    FullEdgeArg::Relaxed => FullEdgeFilter::Relaxed,
                    FullEdgeArg::Off => FullEdgeFilter::Off,
                },
            };
            cfg.workers = workers;
            let harvest = generate(&cfg)?;
            let s = harvest.summary;
            eprintln!(
                "runs={} emitted={} binary={} empty={} not_reached={} filtered={}",
                s.runs, s.emitted, s.binary, s.empty, s.not_reached, s.filtered
            );
            if let Some(path) = stats {
                fs::write(&path, collect_distribution(&harvest.outputs).to_csv())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            plain(Report::lines(harvest.outputs.iter().map(serialize_mmph)))
        }
        Command::Stats(input) => {
            let d = collect_distribution(&load(&input)?);
            plain(Report { text: d.to_csv(), ok: true })
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, asserting) = match run(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &report.text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().write_all(report.text.as_bytes()).map_err(Into::into),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if asserting && !report.ok {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
