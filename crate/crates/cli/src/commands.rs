use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context};
use cubefactors::analyze::{
    decomposition_of, r_of, run_experiment, small_cube_connectivity, tf_connectivity,
    union_components, untouched_path_histogram, validate, ConstructionKind, ExperimentConfig,
    LexCombinations, SubsetSpec, TfStructure,
};
use cubefactors::code::build_context;
use cubefactors::construct::{construct_explicit, ImplicitFactorisation, PlanSummary};
use cubefactors::cube::Vertex;
use cubefactors::export::{write_dot, write_edge_list};
use cubefactors::format::{self, FileHeader};
use cubefactors::tape::{sample_distinct, Tag};
use cubefactors::{CodeContext, ExplicitFactorisation, Factorisation, Gf2Vec, Mode, RandomTape};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{
    AnalyzeArgs, CommonArgs, ExperimentArgs, ExportArgs, FileConfig, FormatArg, KindArg,
    Settings, SourceArgs, SubsetArgs, VerifyArgs,
};

/// Exit code for a factorisation that fails verification.
pub const EXIT_INVALID: i32 = 1;

pub const ANALYSES: &[&str] = &[
    "components",
    "small-cubes",
    "decomposition",
    "tf-classes",
    "tf-connectivity",
    "code-intersection",
    "psi-agreement",
    "paths",
];

#[derive(Serialize)]
pub struct Report {
    pub operation: &'static str,
    pub params: Value,
    pub seed: Option<u64>,
    pub results: Value,
    pub timings: Option<BTreeMap<String, f64>>,
}

struct Timer {
    on: bool,
    entries: BTreeMap<String, f64>,
}

impl Timer {
    fn new(on: bool) -> Self {
        Timer {
            on,
            entries: BTreeMap::new(),
        }
    }

    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.entries.entry(name.to_string()).or_default() += start.elapsed().as_secs_f64();
        out
    }

    fn record(&mut self, name: String, secs: f64) {
        self.entries.insert(name, secs);
    }

    fn finish(self) -> Option<BTreeMap<String, f64>> {
        self.on.then_some(self.entries)
    }
}

fn emit(report: &Report, out: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(report)? + "\n";
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn header_params(h: &FileHeader) -> Value {
    json!({
        "d": h.d,
        "k": h.k,
        "X": h.x,
        "kind": h.kind,
        "mode": h.mode,
        "construction": h.params,
    })
}

fn build(settings: &Settings) -> anyhow::Result<(FileHeader, Factorisation, Option<PlanSummary>)> {
    let ctx = build_context(settings.d)?;
    let kind = settings.kind;
    let seeded = kind != ConstructionKind::Directional;
    let params = (kind == ConstructionKind::Paper).then_some(settings.params);
    let header = FileHeader::new(&ctx, kind, settings.mode, seeded.then_some(settings.seed), params);
    let tape = RandomTape::new(settings.seed);
    Ok(match (settings.mode, kind) {
        (Mode::Implicit, ConstructionKind::Paper) => {
            let f = ImplicitFactorisation::new(&ctx, &settings.params, &tape)?;
            (header, Factorisation::Implicit(f), None)
        }
        (Mode::Implicit, _) => bail!("implicit mode is only available for --kind paper"),
        (Mode::Explicit, ConstructionKind::Paper) => {
            let (plan, f) = construct_explicit(&ctx, &settings.params, &tape)?;
            (header, Factorisation::Explicit(f), Some(plan.summary()))
        }
        (Mode::Explicit, _) => {
            let f = kind.build(&ctx, &settings.params, &tape)?;
            (header, Factorisation::Explicit(f), None)
        }
    })
}

fn source(args: &SourceArgs) -> anyhow::Result<(Settings, FileConfig, FileHeader, Factorisation)> {
    let file_cfg = FileConfig::load(args.common.config.as_deref())?;
    let settings = Settings::resolve(&args.common, &file_cfg)?;
    let (header, fac) = match args.file.clone().or_else(|| file_cfg.file.clone()) {
        Some(p) => format::load(&p).with_context(|| format!("loading {}", p.display()))?,
        None => {
            let (h, f, _) = build(&settings)?;
            (h, f)
        }
    };
    Ok((settings, file_cfg, header, fac))
}

fn resolve_subsets(
    ctx: &CodeContext,
    args: &SubsetArgs,
    file: &FileConfig,
    seed: u64,
) -> anyhow::Result<Vec<SubsetSpec>> {
    let d = ctx.d() as usize;
    if let Some(dirs) = args.factors.clone().or_else(|| file.factors.clone()) {
        let dirs: Vec<Gf2Vec> = dirs.into_iter().map(Gf2Vec).collect();
        return Ok(vec![SubsetSpec::from_directions(ctx, &dirs)?]);
    }
    let Some(r) = args.r.or(file.r) else {
        return Ok(vec![SubsetSpec::all(ctx)]);
    };
    if r == 0 || r > d {
        bail!("--r must be in 1..={d}");
    }
    if args.all_subsets || file.all_subsets.unwrap_or(false) {
        return LexCombinations::new(d, r)
            .map(|s| SubsetSpec::from_indices(ctx, &s).map_err(Into::into))
            .collect();
    }
    let tape = RandomTape::new(seed);
    let pick = sample_distinct(&mut tape.stream(0, Tag::Subset), d, r);
    Ok(vec![SubsetSpec::from_indices(ctx, &pick)?])
}

fn directions_of(ctx: &CodeContext, spec: &SubsetSpec) -> Vec<u64> {
    spec.directions(ctx).into_iter().map(|x| x.0).collect()
}

fn explicit(fac: &Factorisation) -> anyhow::Result<ExplicitFactorisation> {
    Ok(fac.to_explicit()?)
}

pub fn construct(args: &CommonArgs) -> anyhow::Result<i32> {
    let file_cfg = FileConfig::load(args.config.as_deref())?;
    let settings = Settings::resolve(args, &file_cfg)?;
    let mut timer = Timer::new(settings.timings);
    let (header, fac, plan) = timer.time("construct", || build(&settings))?;

    let mut results = serde_json::Map::new();
    if let Some(plan) = plan {
        results.insert("plan".into(), serde_json::to_value(plan)?);
    }
    if let Factorisation::Explicit(f) = &fac {
        results.insert("touched_edges".into(), json!(f.touched_edge_count()));
    }

    match &settings.out {
        Some(p) => {
            let w = BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?);
            timer.time("write", || format::write_factorisation(w, &header, &fac))?;
            results.insert("file".into(), json!(p.display().to_string()));
        }
        None => {
            let stdout = io::stdout();
            format::write_factorisation(stdout.lock(), &header, &fac)?;
        }
    }
    let report = Report {
        operation: "construct",
        params: header_params(&header),
        seed: header.seed,
        results: Value::Object(results),
        timings: timer.finish(),
    };
    // With no --out the factorisation itself is on stdout.
    if settings.out.is_some() {
        emit(&report, None)?;
    } else {
        eprintln!("{}", serde_json::to_string(&report)?);
    }
    Ok(0)
}

pub fn verify(args: &VerifyArgs) -> anyhow::Result<i32> {
    let (header, fac) =
        format::load(&args.file).with_context(|| format!("loading {}", args.file.display()))?;
    let rep = validate(&fac)?;
    let report = Report {
        operation: "verify",
        params: header_params(&header),
        seed: header.seed,
        results: serde_json::to_value(&rep)?,
        timings: None,
    };
    emit(&report, args.out.as_deref())?;
    Ok(if rep.ok { 0 } else { EXIT_INVALID })
}

fn run_analysis(
    name: &str,
    fac: &ExplicitFactorisation,
    spec: &SubsetSpec,
) -> anyhow::Result<Value> {
    let ctx = fac.ctx();
    Ok(match name {
        "components" => serde_json::to_value(union_components(fac, spec))?,
        "small-cubes" => serde_json::to_value(small_cube_connectivity(fac, spec))?,
        "decomposition" => serde_json::to_value(decomposition_of(ctx, spec))?,
        "tf-connectivity" => serde_json::to_value(tf_connectivity(fac, spec))?,
        "paths" => serde_json::to_value(untouched_path_histogram(fac)?)?,
        "tf-classes" => {
            let tf = TfStructure::new(ctx, spec);
            let mut sizes: BTreeMap<u64, u64> = BTreeMap::new();
            for u in 0..fac.vertex_count() as u64 {
                *sizes.entry(tf.f_of(Vertex(u))).or_default() += 1;
            }
            let class_sizes: Vec<u64> = sizes.values().copied().collect();
            json!({
                "class_count": class_sizes.len(),
                "class_sizes": class_sizes,
                "expected_count": tf.class_count(),
                "expected_size": tf.class_size(),
                "all_cosets_active": tf.all_cosets_active(),
            })
        }
        "code-intersection" | "psi-agreement" => {
            let tf = TfStructure::new(ctx, spec);
            let ell = decomposition_of(ctx, spec).ell;
            let nonzero = 1u64 << (spec.len() - ell);
            let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
            let mut agree = true;
            let mut identity = true;
            let free = ctx.space().full_mask() & !spec.mask();
            // Small cube ids are the submasks of the free coordinates.
            let mut id = free;
            loop {
                let cube = cubefactors::cube::SmallCubeId(id);
                let n = tf.count_codewords(ctx, cube);
                *histogram.entry(n).or_default() += 1;
                identity &= n == 0 || n == nonzero;
                agree &= (n > 0) == tf.psi_zero(cube);
                if id == 0 {
                    break;
                }
                id = (id - 1) & free;
            }
            if name == "code-intersection" {
                json!({
                    "histogram": histogram,
                    "nonzero_value": nonzero,
                    "identity_holds": identity,
                })
            } else {
                json!({ "cubes": histogram.values().sum::<u64>(), "agree": agree })
            }
        }
        other => bail!("unknown analysis {other:?}; expected one of {}", ANALYSES.join(", ")),
    })
}

pub fn analyze(args: &AnalyzeArgs) -> anyhow::Result<i32> {
    let (settings, file_cfg, header, fac) = source(&args.source)?;
    let mut names: Vec<String> = args
        .analysis
        .clone()
        .or_else(|| file_cfg.analysis.clone())
        .unwrap_or_else(|| vec!["components".into()]);
    if names.iter().any(|n| n == "all") {
        names = ANALYSES.iter().map(|s| s.to_string()).collect();
    }
    if let Some(bad) = names.iter().find(|n| !ANALYSES.contains(&n.as_str())) {
        bail!("unknown analysis {bad:?}; expected one of {} or all", ANALYSES.join(", "));
    }
    let table = explicit(&fac)?;
    let ctx = table.ctx().clone();
    let subsets = resolve_subsets(&ctx, &args.subset, &file_cfg, settings.seed)?;
    let mut timer = Timer::new(settings.timings);
    let mut out = Vec::new();
    for spec in &subsets {
        let mut entry = serde_json::Map::new();
        entry.insert("factors".into(), json!(directions_of(&ctx, spec)));
        for name in &names {
            let v = timer.time(name, || run_analysis(name, &table, spec))?;
            entry.insert(name.clone(), v);
        }
        out.push(Value::Object(entry));
    }
    let report = Report {
        operation: "analyze",
        params: header_params(&header),
        seed: header.seed,
        results: json!({ "subsets": out }),
        timings: timer.finish(),
    };
    emit(&report, settings.out.as_deref())?;
    Ok(0)
}

pub fn rmin(args: &SourceArgs) -> anyhow::Result<i32> {
    let (settings, _, header, fac) = source(args)?;
    let table = explicit(&fac)?;
    let rep = r_of(&table)?;
    let mut timer = Timer::new(settings.timings);
    for step in &rep.steps {
        timer.record(format!("r={:02}", step.r), step.elapsed_secs);
    }
    let report = Report {
        operation: "rmin",
        params: header_params(&header),
        seed: header.seed,
        results: serde_json::to_value(&rep)?,
        timings: timer.finish(),
    };
    emit(&report, settings.out.as_deref())?;
    Ok(0)
}

pub fn experiment(args: &ExperimentArgs) -> anyhow::Result<i32> {
    let file_cfg = FileConfig::load(args.common.config.as_deref())?;
    let settings = Settings::resolve(&args.common, &file_cfg)?;
    let ctx = build_context(settings.d)?;
    let kinds: Vec<ConstructionKind> = args
        .kinds
        .clone()
        .or_else(|| file_cfg.kinds.clone())
        .unwrap_or_else(|| vec![KindArg::Paper, KindArg::Greedy])
        .into_iter()
        .map(Into::into)
        .collect();
    let config = ExperimentConfig {
        master_seed: settings.seed,
        seeds: args.seeds.or(file_cfg.seeds).unwrap_or(5),
        samples: args.samples.or(file_cfg.samples).unwrap_or(200),
        params: settings.params,
        kinds,
    };
    if config.seeds == 0 || config.samples == 0 {
        bail!("--seeds and --samples must be positive");
    }
    let mut timer = Timer::new(settings.timings);
    let rep = timer.time("experiment", || run_experiment(&ctx, &config))?;
    let desc = ctx.describe();
    let report = Report {
        operation: "experiment",
        params: json!({
            "d": desc.d,
            "k": desc.k,
            "X": desc.x,
            "construction": config.params,
            "seeds": config.seeds,
            "samples": config.samples,
            "kinds": config.kinds,
        }),
        seed: Some(settings.seed),
        results: serde_json::to_value(&rep)?,
        timings: timer.finish(),
    };
    emit(&report, settings.out.as_deref())?;
    Ok(0)
}

pub fn export(args: &ExportArgs) -> anyhow::Result<i32> {
    let (settings, file_cfg, _, fac) = source(&args.source)?;
    let table = explicit(&fac)?;
    let ctx = table.ctx().clone();
    let mut subsets = resolve_subsets(&ctx, &args.subset, &file_cfg, settings.seed)?;
    if subsets.len() != 1 {
        bail!("export takes a single factor set; drop --all-subsets");
    }
    let spec = subsets.remove(0);
    let format = args.format.or(file_cfg.format).unwrap_or(FormatArg::EdgeList);
    let mut sink: Box<dyn Write> = match &settings.out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        FormatArg::Dot => write_dot(&mut sink, &table, &spec)?,
        FormatArg::EdgeList => write_edge_list(&mut sink, &table, &spec)?,
        FormatArg::Json => {
            let d = ctx.d();
            let space = ctx.space();
            let mut edges: Vec<(String, String, u64)> = Vec::new();
            for &x in spec.indices() {
                for e in table.factor_edges(x) {
                    edges.push((e.lo.to_bit_string(d), e.hi().to_bit_string(d), space.direction(x).0));
                }
            }
            serde_json::to_writer(&mut sink, &json!({ "d": ctx.d(), "edges": edges }))?;
            sink.write_all(b"\n")?;
        }
    }
    sink.flush()?;
    Ok(0)
}
