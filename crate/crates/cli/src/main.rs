mod report;

use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use homcount::circuits::{
    compile_zsat, count_zsat, orbit_instance_from_paired, run_pipeline, verify_parsimony,
    BooleanCircuit, RsatAlphabet, ZAlphabet,
};
use homcount::complex::{
    greedy_ordering, homology, ordering_width, presentation_from_complex, Presentation,
    SimplexOrdering, SimplicialComplex,
};
use homcount::counting::{
    count_quotients, dp_count_homs_with, quotient_counts_via_inversion, Gauge, HomSource,
};
use homcount::group::{FiniteGroup, StemExtension};
use homcount::io::{parse_extension, read_input, resolve_group};
use homcount::perm::{
    goursat_decompose, rubik_membership, rubik_order, rubik_standard_generators,
    rubik_surjectivity_check, GSetAction, Permutation,
};
use homcount::surfaces::{
    enumerate_reps, heegaard_count, orbit_report, standard_generators, HeegaardGluing,
    MCGGenerator, RepFilter,
};
use homcount::{Error, WorkBounds};

use report::Report;

#[derive(Parser)]
#[command(name = "homcount", version, about = "Exact homomorphism counts and circuit reductions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    #[arg(long, global = true)]
    max_enumeration: Option<u64>,
    #[arg(long, global = true)]
    max_states: Option<u64>,
    /// Largest number of tuples held by orbit searches.
    #[arg(long, global = true)]
    max_orbit_points: Option<u64>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<String>,
}

#[derive(Args)]
struct Source {
    #[arg(long, conflicts_with = "complex")]
    presentation: Option<String>,
    #[arg(long)]
    complex: Option<String>,
}

#[derive(Args)]
struct Reduction {
    #[arg(long)]
    circuit: Option<String>,
    /// Use a random circuit with this many inputs and gates instead (`n,g`).
    #[arg(long, conflicts_with = "circuit")]
    random_circuit: Option<String>,
    /// Target alphabet of the last RSAT stage, as `size;init;final`.
    #[arg(long, default_value = "4;0,1;2,3")]
    target: String,
    /// Group for the zombie stage.
    #[arg(long)]
    gamma: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Integral homology of a complex.
    Homology {
        #[arg(long)]
        complex: String,
    },
    /// #H, surjections and #Q by enumeration.
    CountHom {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        group: String,
    },
    /// #Q by enumeration, cross-checked against Möbius inversion.
    CountQuot {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        group: String,
    },
    /// #H by the boundary sweep over an ordering.
    DpCount {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        group: String,
        /// One simplex per line; defaults to the file's `order` section or a greedy ordering.
        #[arg(long)]
        ordering: Option<String>,
        /// `tree` or `none`.
        #[arg(long, default_value = "tree")]
        gauge: String,
        /// Also count by enumeration over the edge-path presentation.
        #[arg(long)]
        check: bool,
    },
    /// Quotient counts for every subgroup by inversion over the lattice.
    InvertLattice {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        group: String,
    },
    /// Prints the instances produced by the reduction chain.
    Reduce {
        #[command(flatten)]
        reduction: Reduction,
        /// Comma-separated subset of csat,rsat1,rsat2,paired,rsat3,rsat4,zsat.
        #[arg(long, default_value = "rsat4")]
        stages: String,
    },
    /// Brute-force counts at every stage of the chain.
    VerifyParsimony {
        #[command(flatten)]
        reduction: Reduction,
    },
    /// Compiles a circuit to a zombie circuit over a minimal alphabet for Γ.
    CompileZsat {
        #[command(flatten)]
        reduction: Reduction,
        /// Also count satisfying words.
        #[arg(long)]
        count: bool,
    },
    /// Orbits of mapping-class generators on surface representations.
    Orbit {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        group: String,
        #[arg(long)]
        extension: Option<String>,
        /// `all`, `surjective` or `schur-zero`.
        #[arg(long, default_value = "all")]
        filter: String,
        /// Space-separated generator names; all standard generators by default.
        #[arg(long)]
        generators: Option<String>,
    },
    /// #H, surjections and #Q of a Heegaard gluing.
    HeegaardCount {
        #[arg(long)]
        gluing: String,
        #[arg(long)]
        group: String,
    },
    /// Rubik-group membership and the surjectivity check on `n` regular orbits.
    RubikCheck {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        orbits: usize,
        /// Permutations to test, in 1-based cycle notation; standard generators by default.
        #[arg(long)]
        perm: Vec<String>,
    },
    /// Goursat decomposition of a subdirect product given by generating pairs.
    Goursat {
        #[arg(long)]
        group: String,
        #[arg(long)]
        group2: String,
        /// Generating pairs of H as `a:b` element ids, comma-separated.
        #[arg(long)]
        pairs: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().ok();
    }
    match run(&cli) {
        Ok(report) => {
            let text = if cli.global.json { report.to_json() } else { report.to_text() };
            match &cli.global.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: cannot write {path}: {e}");
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(if report.failed() { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let verification = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::Verification(_))));
            ExitCode::from(if verification { 1 } else { 2 })
        }
    }
}

fn bounds(g: &Global) -> anyhow::Result<WorkBounds> {
    let mut b = WorkBounds::default();
    for (v, slot, name) in [
        (g.max_enumeration, &mut b.max_enumeration, "--max-enumeration"),
        (g.max_states, &mut b.max_states, "--max-states"),
        (g.max_orbit_points, &mut b.max_orbit_points, "--max-orbit-points"),
    ] {
        if let Some(v) = v {
            if v == 0 {
                bail!("{name} must be positive");
            }
            *slot = v;
        }
    }
    Ok(b)
}

fn load(path: &str) -> anyhow::Result<String> {
    Ok(read_input(path)?)
}

fn group(spec: &str) -> anyhow::Result<FiniteGroup> {
    resolve_group(spec, read_input).with_context(|| format!("loading group {spec}"))
}

fn complex(path: &str) -> anyhow::Result<(SimplicialComplex, Option<SimplexOrdering>)> {
    SimplicialComplex::parse(&load(path)?).with_context(|| format!("reading complex {path}"))
}

fn presentation(src: &Source) -> anyhow::Result<Presentation> {
    match (&src.presentation, &src.complex) {
        (Some(p), _) => Presentation::parse(&load(p)?).with_context(|| format!("reading presentation {p}")),
        (None, Some(c)) => Ok(presentation_from_complex(&complex(c)?.0, 0)?),
        (None, None) => bail!("one of --presentation or --complex is required"),
    }
}

fn target(spec: &str) -> anyhow::Result<RsatAlphabet> {
    let parts: Vec<&str> = spec.split(';').collect();
    let ids = |s: &str| -> anyhow::Result<Vec<u32>> {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse().map_err(|_| anyhow!("bad symbol {t:?} in --target")))
            .collect()
    };
    if parts.len() != 3 {
        bail!("--target must look like `size;init;final`, got {spec:?}");
    }
    let size = parts[0].trim().parse().map_err(|_| anyhow!("bad size in --target"))?;
    Ok(RsatAlphabet::new(size, ids(parts[1])?, ids(parts[2])?)?)
}

fn circuit(r: &Reduction, seed: u64) -> anyhow::Result<BooleanCircuit> {
    match (&r.circuit, &r.random_circuit) {
        (Some(path), _) => BooleanCircuit::parse(&load(path)?).with_context(|| format!("reading circuit {path}")),
        (None, Some(spec)) => {
            let (n, g) = spec
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| anyhow!("--random-circuit expects `inputs,gates`"))?;
            if n == 0 || g == 0 {
                bail!("--random-circuit needs at least one input and one gate");
            }
            Ok(BooleanCircuit::random(&mut ChaCha8Rng::seed_from_u64(seed), n, g))
        }
        (None, None) => bail!("one of --circuit or --random-circuit is required"),
    }
}

fn zombie(r: &Reduction) -> anyhow::Result<Option<Arc<ZAlphabet>>> {
    match &r.gamma {
        Some(spec) => Ok(Some(Arc::new(ZAlphabet::minimal(Arc::new(group(spec)?))?))),
        None => Ok(None),
    }
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let b = bounds(&cli.global)?;
    let mut r = Report::new();
    match &cli.command {
        Command::Homology { complex: path } => {
            let (cx, _) = complex(path)?;
            r.field("vertices", cx.vertex_count());
            r.field("simplices", cx.len());
            r.field("euler_characteristic", cx.euler_characteristic());
            for (d, h) in homology(&cx).iter().enumerate() {
                r.field(&format!("H{d}"), h.to_string());
            }
        }
        Command::CountHom { source, group: gs } => {
            let p = presentation(source)?;
            let g = group(gs)?;
            let c = count_quotients(&p, &g, &b)?;
            r.field("group", g.name()).field("order", g.order());
            r.big("homs", &c.homs).big("surjections", &c.surjections).big("quotients", &c.quotients);
        }
        Command::CountQuot { source, group: gs } => {
            let p = presentation(source)?;
            let g = group(gs)?;
            let c = count_quotients(&p, &g, &b)?;
            let table = quotient_counts_via_inversion(HomSource::Presentation(&p), &g, &b)?;
            let via = &table.rows.last().expect("lattice contains G").quotients;
            r.field("group", g.name());
            r.big("homs", &c.homs).big("quotients", &c.quotients).big("quotients_inversion", via);
            r.verdict(*via == c.quotients && table.consistent);
        }
        Command::DpCount {
            complex: path,
            group: gs,
            ordering,
            gauge,
            check,
        } => {
            let (cx, own) = complex(path)?;
            let g = group(gs)?;
            let ord = match (ordering, own) {
                (Some(f), _) => SimplexOrdering::parse(&cx, &load(f)?)?,
                (None, Some(o)) => o,
                (None, None) => greedy_ordering(&cx),
            };
            let gauge = match gauge.as_str() {
                "tree" => Gauge::SpanningTree,
                "none" => Gauge::None,
                other => bail!("unknown gauge {other} (expected tree or none)"),
            };
            let w = ordering_width(&cx, &ord)?;
            let rep = dp_count_homs_with(&cx, &ord, &g, &b, gauge, None)?;
            r.field("group", g.name());
            r.field("width", w.width).field("edge_width", w.edge_width);
            r.big("homs", &rep.homs);
            if let Some(z) = &rep.cocycles {
                r.big("cocycles", z);
            }
            r.field("max_states", rep.max_states).field("max_active_edges", rep.max_active_edges);
            if *check {
                let brute = homcount::counting::count_homs(&presentation_from_complex(&cx, 0)?, &g, &b)?;
                r.big("brute_force", &brute);
                r.verdict(brute == rep.homs);
            }
        }
        Command::InvertLattice { source, group: gs } => {
            let g = group(gs)?;
            let table = match (&source.presentation, &source.complex) {
                (None, Some(c)) => {
                    let (cx, own) = complex(c)?;
                    let ord = own.unwrap_or_else(|| greedy_ordering(&cx));
                    quotient_counts_via_inversion(HomSource::Complex(&cx, &ord), &g, &b)?
                }
                _ => {
                    let p = presentation(source)?;
                    quotient_counts_via_inversion(HomSource::Presentation(&p), &g, &b)?
                }
            };
            let mut body = String::from("subgroup order homs surjections aut quotients\n");
            for row in &table.rows {
                body.push_str(&format!(
                    "{} {} {} {} {} {}\n",
                    row.subgroup, row.order, row.homs, row.surjections, row.aut_order, row.quotients
                ));
            }
            r.field("group", g.name()).field("subgroups", table.rows.len());
            r.big("total_homs", &table.total_homs);
            r.field("computed_types", table.computed_types);
            r.field("only_trivial_and_full", table.only_trivial_and_full());
            r.verdict(table.consistent);
            r.body(body);
        }
        Command::Reduce { reduction, stages } => {
            let c = circuit(reduction, cli.global.seed)?;
            let z = zombie(reduction)?;
            let run = run_pipeline(&c, &target(&reduction.target)?, z.as_ref())?;
            let mut body = String::new();
            for stage in stages.split(',').map(str::trim) {
                let text = match stage {
                    "csat" => run.csat.to_string(),
                    "rsat1" => format!(
                        "# variables {} ancillas {} output {}\n{}",
                        run.rsat1.variables,
                        run.rsat1.ancillas,
                        run.rsat1.output,
                        run.rsat1.circuit.gates_to_text()
                    ),
                    "rsat2" => format!(
                        "# variables {:?} zeros {:?}\n{}",
                        run.rsat2.variables,
                        run.rsat2.zeros,
                        run.rsat2.circuit.gates_to_text()
                    ),
                    "paired" => run.paired.to_text(),
                    "rsat3" => run.rsat3.to_text(),
                    "rsat4" => run.rsat4.to_text(),
                    "zsat" => run
                        .zsat
                        .as_ref()
                        .ok_or_else(|| anyhow!("the zsat stage needs --gamma"))?
                        .to_text(),
                    other => bail!("unknown stage {other}"),
                };
                body.push_str(&format!("## {stage}\n{text}"));
                if !body.ends_with('\n') {
                    body.push('\n');
                }
            }
            r.field("inputs", c.inputs()).field("gates", c.gates().len());
            r.field("rsat4_width", run.rsat4.circuit.width());
            r.field("rsat4_gates", run.rsat4.circuit.len());
            r.field("packing_degree", run.packing_degree);
            r.body(body);
        }
        Command::VerifyParsimony { reduction } => {
            let c = circuit(reduction, cli.global.seed)?;
            let z = zombie(reduction)?;
            let run = run_pipeline(&c, &target(&reduction.target)?, z.as_ref())?;
            let rep = verify_parsimony(&run, &b)?;
            for s in &rep.stages {
                r.big(s.stage, &s.count);
            }
            if let (Some(order), Some(got), Some(want)) = (rep.group_order, &rep.zsat, &rep.zsat_expected) {
                r.field("gamma_order", order);
                r.big("zsat", got).big("zsat_expected", want);
            }
            r.field("failures", rep.failures.clone());
            r.verdict(rep.pass);
        }
        Command::CompileZsat { reduction, count } => {
            let c = circuit(reduction, cli.global.seed)?;
            let z = zombie(reduction)?.ok_or_else(|| anyhow!("compile-zsat needs --gamma"))?;
            let run = run_pipeline(&c, &target(&reduction.target)?, None)?;
            let inst = compile_zsat(&orbit_instance_from_paired(&run.paired, &z)?, &z)?;
            inst.verify()?;
            r.field("gamma", z.group().name()).field("alphabet_size", z.size());
            r.field("width", inst.width()).field("gates", inst.circuit.len());
            if *count {
                r.big("zsat", &count_zsat(&inst, &b)?);
            }
            r.body(inst.to_text());
        }
        Command::Orbit {
            genus,
            group: gs,
            extension,
            filter,
            generators,
        } => {
            let g = group(gs)?;
            let ext: Option<StemExtension> = match extension {
                Some(e) => Some(parse_extension(&load(e)?, &g, &b, read_input)?),
                None => None,
            };
            let filter: RepFilter = filter.parse()?;
            let all = standard_generators(*genus);
            let gens: Vec<MCGGenerator> = match generators {
                None => all,
                Some(list) => list
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|n| {
                        all.iter()
                            .find(|x| x.name() == n)
                            .cloned()
                            .ok_or_else(|| anyhow!("no generator {n} at genus {genus}"))
                    })
                    .collect::<anyhow::Result<_>>()?,
            };
            let seeds = enumerate_reps(*genus, &g, filter, ext.as_ref(), &b)?;
            let rep = orbit_report(&seeds, &gens, &g, ext.as_ref(), &b)?;
            r.field("seeds", seeds.len());
            if cli.global.json {
                r.field("report", serde_json::to_value(&rep)?);
            } else {
                r.body(rep.to_text());
            }
            r.verdict(rep.schur_violations == 0);
        }
        Command::HeegaardCount { gluing, group: gs } => {
            let h = HeegaardGluing::parse(&load(gluing)?).with_context(|| format!("reading gluing {gluing}"))?;
            let g = group(gs)?;
            let c = heegaard_count(&h, &g, &b)?;
            r.field("genus", h.genus()).field("word", h.word.to_string());
            r.field("torelli", h.word.is_torelli());
            r.field("group", g.name());
            r.big("homs", &c.homs).big("surjections", &c.surjections).big("quotients", &c.quotients);
        }
        Command::RubikCheck { gamma, orbits, perm } => {
            let g = Arc::new(group(gamma)?);
            let act = GSetAction::regular(g.clone(), 0, *orbits);
            r.field("gamma", g.name()).field("orbits", *orbits);
            r.big("rubik_order", &rubik_order(*orbits, &g)?);
            if perm.is_empty() {
                let gens = rubik_standard_generators(*orbits, &g);
                let members = gens
                    .iter()
                    .map(|p| rubik_membership(p, &act))
                    .collect::<homcount::Result<Vec<bool>>>()?;
                r.field("generators", gens.len());
                r.field("all_members", members.iter().all(|&m| m));
                if *orbits >= 7 {
                    let s = rubik_surjectivity_check(&gens, &act, &b)?;
                    r.field("alternating_on_orbits", s.alternating_on_orbits);
                    r.field("pair_transitive", s.pair_transitive);
                    r.big("generated_order", &s.generated_order);
                    r.field("surjective", s.surjective);
                    r.field("alt_quotient_excluded_by_order", s.alt_quotient_excluded_by_order);
                    r.verdict(s.consistent);
                }
            } else {
                let points = act.points();
                let mut members = Vec::new();
                for text in perm {
                    let p = Permutation::parse_cycles(text, Some(points))?;
                    members.push(rubik_membership(&p, &act)?);
                }
                r.field("member", members);
            }
        }
        Command::Goursat { group: g1s, group2, pairs } => {
            let g1 = group(g1s)?;
            let g2 = group(group2)?;
            let gens = pairs
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|p| {
                    let (a, b) = p.split_once(':').ok_or_else(|| anyhow!("pair {p:?} is not `a:b`"))?;
                    Ok((a.trim().parse()?, b.trim().parse()?))
                })
                .collect::<anyhow::Result<Vec<(usize, usize)>>>()?;
            let d = goursat_decompose(&gens, &g1, &g2)?;
            r.field("h_order", d.h_order);
            r.field("n1_order", d.n1.order()).field("n2_order", d.n2.order());
            r.field("quotient_order", d.iso.len());
            r.verdict(d.reconstructs);
        }
    }
    Ok(r)
}
