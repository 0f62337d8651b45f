//! Subcommand implementations. Every file a command emits is re-read and
//! re-verified before the report claims success.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use graphca_core::algebra::group::{
    cayley_graph, check_connection_set, ConnectionSet, FiniteGroup,
};
use graphca_core::algebra::oa::{bush_oa, oa_prime_power};
use graphca_core::approx::{approx_ca, ratio_certificate, ApproxResult};
use graphca_core::ca::{verify_ca, CoveringArray};
use graphca_core::constructions::{
    box_or_direct_concat, cayley_box_2color, cayley_box_3color, cayley_box_4color,
    coloring_construction, direct_min, left_translation, lex_concat, strong_concat, Construction,
};
use graphca_core::factorization::factorize;
use graphca_core::graph::{
    exact_chromatic_number, greedy_coloring, make_graph, max_clique, Graph, GraphFamily,
    DEFAULT_CHROMATIC_LIMIT, DEFAULT_CLIQUE_LIMIT,
};
use graphca_core::products::{product, ProductKind};
use serde_json::json;

use crate::cafile::{format_ca, read_ca, write_ca};
use crate::dimacs::{read_col, write_col};
use crate::groupjson::{load_connection_set, load_group, resolve_name};
use crate::report::{input_record, CommandReport, InputRecord};
use crate::{Cli, CliError, Command};

const MAX_CLI_FACTORS: usize = 6;

pub fn run(cli: Cli) -> Result<CommandReport, CliError> {
    let started = Instant::now();
    let mut ctx = Ctx {
        inputs: Vec::new(),
        outputs: Vec::new(),
    };
    let (command, strategy) = match cli.command {
        Command::Make { family, size, conn, out } => {
            ("make", cmd_make(&mut ctx, &family, size, conn.as_deref(), &out)?)
        }
        Command::Product { op, factors, out, coords } => (
            "product",
            cmd_product(&mut ctx, &op, &factors, &out, coords.as_deref())?,
        ),
        Command::Factor { graph } => ("factor", cmd_factor(&mut ctx, &graph)?),
        Command::Oa { g, bush, out } => ("oa", cmd_oa(&mut ctx, g, bush, out.as_deref())?),
        Command::Build(args) => {
            let args: BuildArgs = args.into();
            ("build", cmd_build(&mut ctx, &args)?)
        }
        Command::Approx { graph, g, out, report } => (
            "approx",
            cmd_approx(&mut ctx, &graph, g, &out, report.as_deref())?,
        ),
        Command::Verify { graph, ca } => ("verify", cmd_verify(&mut ctx, &graph, &ca)?),
        Command::Analyze { graph, g } => ("analyze", cmd_analyze(&mut ctx, &graph, g)?),
    };
    Ok(CommandReport {
        command: command.to_string(),
        inputs: ctx.inputs,
        outputs: ctx.outputs,
        strategy,
        wall_time_ms: started.elapsed().as_millis() as u64,
    })
}

struct Ctx {
    inputs: Vec<InputRecord>,
    outputs: Vec<String>,
}

impl Ctx {
    fn read_graph(&mut self, path: &Path) -> Result<Graph, CliError> {
        let g = read_col(path)?;
        self.inputs.push(input_record(path));
        Ok(g)
    }

    /// Writes a graph and re-reads it to confirm the bytes parse back to
    /// the same graph.
    fn emit_graph(&mut self, path: &Path, g: &Graph) -> Result<(), CliError> {
        write_col(path, g)?;
        let back = read_col(path)?;
        if back.vertex_count() != g.vertex_count() || !back.edges().eq(g.edges()) {
            return Err(CliError::usage(format!(
                "{}: re-read does not match what was written",
                path.display()
            )));
        }
        self.outputs.push(path.display().to_string());
        Ok(())
    }

    /// Writes a covering array, byte-checks the round trip, and re-verifies
    /// it against `graph` when one is given.
    fn emit_ca(
        &mut self,
        path: &Path,
        ca: &CoveringArray,
        labels: Option<&[String]>,
        graph: Option<&Graph>,
    ) -> Result<(), CliError> {
        write_ca(path, ca, labels)?;
        let bytes = fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        if bytes != format_ca(ca, labels) {
            return Err(CliError::usage(format!(
                "{}: re-read does not match what was written",
                path.display()
            )));
        }
        if let Some(graph) = graph {
            let parsed = read_ca(path)?;
            let bound = parsed.bind_to(graph)?;
            let check = verify_ca(&bound, graph)
                .map_err(|e| CliError::usage(format!("{e}")))?;
            if !check.ok {
                return Err(CliError::verification(
                    format!("{}: emitted array fails verification", path.display()),
                    None,
                ));
            }
        }
        self.outputs.push(path.display().to_string());
        Ok(())
    }
}

fn core_err(e: graphca_core::Error) -> CliError {
    CliError::usage(e.to_string())
}

fn parse_family(family: &str, size: usize, conn: Option<&str>) -> Result<GraphFamily, CliError> {
    match family {
        "path" => Ok(GraphFamily::Path(size)),
        "cycle" => Ok(GraphFamily::Cycle(size)),
        "complete" => Ok(GraphFamily::Complete(size)),
        "edgeless" => Ok(GraphFamily::Edgeless(size)),
        "circulant" => {
            let conn = conn.ok_or_else(|| {
                CliError::usage("circulant needs --conn with a comma-separated set".into())
            })?;
            let set: BTreeSet<usize> = conn
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::usage(format!("bad connection element {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            Ok(GraphFamily::Circulant(size, set))
        }
        other => Err(CliError::usage(format!(
            "unknown family {other:?}; expected path, cycle, complete, edgeless or circulant"
        ))),
    }
}

fn cmd_make(
    ctx: &mut Ctx,
    family: &str,
    size: usize,
    conn: Option<&str>,
    out: &Path,
) -> Result<Option<serde_json::Value>, CliError> {
    let g = make_graph(&parse_family(family, size, conn)?).map_err(core_err)?;
    ctx.emit_graph(out, &g)?;
    Ok(Some(json!({
        "family": family,
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
    })))
}

fn parse_op(op: &str) -> Result<ProductKind, CliError> {
    match op {
        "cartesian" | "box" => Ok(ProductKind::Cartesian),
        "direct" => Ok(ProductKind::Direct),
        "strong" => Ok(ProductKind::Strong),
        "lex" | "lexicographic" => Ok(ProductKind::Lexicographic),
        other => Err(CliError::usage(format!(
            "unknown product {other:?}; expected cartesian, direct, strong or lex"
        ))),
    }
}

fn cmd_product(
    ctx: &mut Ctx,
    op: &str,
    factor_paths: &[PathBuf],
    out: &Path,
    coords_out: Option<&Path>,
) -> Result<Option<serde_json::Value>, CliError> {
    if factor_paths.len() < 2 || factor_paths.len() > MAX_CLI_FACTORS {
        return Err(CliError::usage(format!(
            "product takes 2 to {MAX_CLI_FACTORS} factor files, got {}",
            factor_paths.len()
        )));
    }
    let op = parse_op(op)?;
    let factors: Vec<Graph> = factor_paths
        .iter()
        .map(|p| ctx.read_graph(p))
        .collect::<Result<_, _>>()?;
    let p = product(op, &factors).map_err(core_err)?;
    ctx.emit_graph(out, &p.graph)?;
    if let Some(coords_path) = coords_out {
        let mut text = String::new();
        for v in 0..p.graph.vertex_count() {
            let tuple: Vec<String> = p.coords(v).iter().map(usize::to_string).collect();
            text.push_str(&format!("{v}: ({})\n", tuple.join(", ")));
        }
        fs::write(coords_path, text)
            .map_err(|e| CliError::usage(format!("{}: {e}", coords_path.display())))?;
        ctx.outputs.push(coords_path.display().to_string());
    }
    Ok(Some(json!({
        "op": p.op.name(),
        "vertices": p.graph.vertex_count(),
        "edges": p.graph.edge_count(),
    })))
}

fn cmd_factor(ctx: &mut Ctx, graph_path: &Path) -> Result<Option<serde_json::Value>, CliError> {
    let g = ctx.read_graph(graph_path)?;
    let f = factorize(&g).map_err(core_err)?;
    eprintln!("{} prime factor(s)", f.factors.len());
    let stem = graph_path
        .to_string_lossy()
        .strip_suffix(".col")
        .map(str::to_string)
        .unwrap_or_else(|| graph_path.to_string_lossy().into_owned());
    let mut factors_json = Vec::new();
    for (i, factor) in f.factors.iter().enumerate() {
        eprintln!(
            "factor {i}: {} vertices, {} edges",
            factor.vertex_count(),
            factor.edge_count()
        );
        let path = PathBuf::from(format!("{stem}.factor{i}.col"));
        ctx.emit_graph(&path, factor)?;
        factors_json.push(json!({
            "vertices": factor.vertex_count(),
            "edges": factor.edge_count(),
            "path": path.display().to_string(),
        }));
    }
    Ok(Some(json!({
        "factor_count": f.factors.len(),
        "factors": factors_json,
    })))
}

fn cmd_oa(
    ctx: &mut Ctx,
    g: usize,
    bush: bool,
    out: Option<&Path>,
) -> Result<Option<serde_json::Value>, CliError> {
    let oa = if bush {
        bush_oa(g).map_err(core_err)?
    } else {
        oa_prime_power(g).map_err(core_err)?
    };
    let rows = oa.rows();
    let ca = CoveringArray::new(g, oa.matrix)
        .map_err(core_err)?
        .with_identity_binding();
    let default = PathBuf::from(format!("oa{g}.ca"));
    let path = out.unwrap_or(&default);
    // The strength-2 property is stronger than per-edge coverage on the
    // complete graph, so re-verify against K_rows.
    let complete = make_graph(&GraphFamily::Complete(rows)).map_err(core_err)?;
    ctx.emit_ca(path, &ca, None, Some(&complete))?;
    Ok(Some(json!({
        "rows": rows,
        "columns": g * g,
        "symbols": g,
        "construction": if bush { "composite" } else { "prime-power" },
    })))
}

pub struct BuildArgs {
    pub strategy: String,
    pub graphs: Vec<PathBuf>,
    pub g: usize,
    pub group: Option<String>,
    pub conn_set: Option<PathBuf>,
    pub ca_in: Vec<PathBuf>,
    pub witness: Option<String>,
    pub translate: Option<String>,
    pub out: PathBuf,
}

/// Covering arrays for each factor: supplied files by position, colouring
/// fallback for the rest.
fn factor_arrays(
    ctx: &mut Ctx,
    factors: &[Graph],
    ca_paths: &[PathBuf],
    g: usize,
) -> Result<Vec<CoveringArray>, CliError> {
    if ca_paths.len() > factors.len() {
        return Err(CliError::usage(format!(
            "{} arrays supplied for {} factors",
            ca_paths.len(),
            factors.len()
        )));
    }
    let mut out = Vec::with_capacity(factors.len());
    for (i, factor) in factors.iter().enumerate() {
        if let Some(path) = ca_paths.get(i) {
            let parsed = read_ca(path)?;
            ctx.inputs.push(input_record(path));
            out.push(parsed.bind_to(factor)?);
        } else {
            out.push(
                coloring_construction(factor, g, None)
                    .map_err(core_err)?
                    .ca,
            );
        }
    }
    Ok(out)
}

fn cmd_build(ctx: &mut Ctx, args: &BuildArgs) -> Result<Option<serde_json::Value>, CliError> {
    if args.g < 2 {
        return Err(CliError::usage(format!(
            "alphabet needs at least 2 symbols, got {}",
            args.g
        )));
    }
    let built: Construction = match args.strategy.as_str() {
        "strong" | "box" | "direct" | "lex" => {
            if args.graphs.len() < 2 || args.graphs.len() > MAX_CLI_FACTORS {
                return Err(CliError::usage(format!(
                    "strategy {:?} takes 2 to {MAX_CLI_FACTORS} --graph factors",
                    args.strategy
                )));
            }
            let factors: Vec<Graph> = args
                .graphs
                .iter()
                .map(|p| ctx.read_graph(p))
                .collect::<Result<_, _>>()?;
            let cas = factor_arrays(ctx, &factors, &args.ca_in, args.g)?;
            match args.strategy.as_str() {
                "strong" => strong_concat(&factors, &cas, args.g),
                "box" => box_or_direct_concat(&factors, &cas, args.g, ProductKind::Cartesian),
                "direct" => direct_min(&factors, &cas, args.g),
                "lex" => lex_concat(&factors, &cas, args.g),
                _ => unreachable!(),
            }
            .map_err(core_err)?
        }
        "coloring" => {
            let graph = single_graph(ctx, args)?;
            coloring_construction(&graph, args.g, None).map_err(core_err)?
        }
        "cayley2" => {
            let (grp, set) = group_inputs(ctx, args)?;
            let g1 = cayley_graph(&grp, &set).map_err(core_err)?;
            let g2 = single_graph(ctx, args)?;
            let ca1 = cayley_input_array(ctx, args, &g1)?;
            let s = translate_element(args, &grp, &set)?;
            let phi = left_translation(&grp, s);
            cayley_box_2color(&g1, &ca1, &phi, &g2, args.g).map_err(core_err)?
        }
        "cayley3" | "cayley4" => {
            let four = args.strategy == "cayley4";
            let (grp, set) = group_inputs(ctx, args)?;
            let g1 = cayley_graph(&grp, &set).map_err(core_err)?;
            let g2 = single_graph(ctx, args)?;
            let ca1 = cayley_input_array(ctx, args, &g1)?;
            let witness = witness_pair(args, &grp, &set, four)?;
            if four {
                cayley_box_4color(&grp, &set, &ca1, witness, &g2, args.g).map_err(core_err)?
            } else {
                cayley_box_3color(&grp, &set, &ca1, witness, &g2, args.g).map_err(core_err)?
            }
        }
        "approx" => {
            let graph = single_graph(ctx, args)?;
            let res = approx_ca(&graph, args.g).map_err(core_err)?;
            let strategy = approx_json(&res, &graph);
            ctx.emit_ca(&args.out, &res.ca, None, Some(&graph))?;
            return Ok(Some(strategy));
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown strategy {other:?}; expected strong, box, direct, lex, coloring, \
                 cayley2, cayley3, cayley4 or approx"
            )))
        }
    };

    let labels = built.graph.labels().map(<[String]>::to_vec);
    ctx.emit_ca(&args.out, &built.ca, labels.as_deref(), Some(&built.graph))?;
    Ok(Some(json!({
        "strategy": built.report.strategy,
        "input_sizes": built.report.input_sizes,
        "output_size": built.report.output_size,
        "lower_bound": built.report.lower_bound,
        "notes": built.report.notes,
        "graph_vertices": built.graph.vertex_count(),
        "graph_edges": built.graph.edge_count(),
    })))
}

fn single_graph(ctx: &mut Ctx, args: &BuildArgs) -> Result<Graph, CliError> {
    if args.graphs.len() != 1 {
        return Err(CliError::usage(format!(
            "strategy {:?} takes exactly one --graph",
            args.strategy
        )));
    }
    ctx.read_graph(&args.graphs[0])
}

fn group_inputs(ctx: &mut Ctx, args: &BuildArgs) -> Result<(FiniteGroup, ConnectionSet), CliError> {
    let group_arg = args.group.as_deref().ok_or_else(|| {
        CliError::usage(format!("strategy {:?} needs --group", args.strategy))
    })?;
    let grp = load_group(group_arg)?;
    if Path::new(group_arg).is_file() {
        ctx.inputs.push(input_record(Path::new(group_arg)));
    }
    let conn_path = args.conn_set.as_ref().ok_or_else(|| {
        CliError::usage(format!("strategy {:?} needs --conn-set", args.strategy))
    })?;
    let raw = load_connection_set(conn_path, &grp)?;
    ctx.inputs.push(input_record(conn_path));
    let set = ConnectionSet::new(&grp, raw).map_err(core_err)?;
    Ok((grp, set))
}

fn cayley_input_array(
    ctx: &mut Ctx,
    args: &BuildArgs,
    g1: &Graph,
) -> Result<CoveringArray, CliError> {
    match args.ca_in.first() {
        Some(path) => {
            let parsed = read_ca(path)?;
            ctx.inputs.push(input_record(path));
            parsed.bind_to(g1)
        }
        None => Ok(coloring_construction(g1, args.g, None)
            .map_err(core_err)?
            .ca),
    }
}

fn translate_element(
    args: &BuildArgs,
    grp: &FiniteGroup,
    set: &ConnectionSet,
) -> Result<usize, CliError> {
    match args.translate.as_deref() {
        Some(name) => resolve_name(name, grp).map_err(CliError::usage),
        None => Ok(*set
            .elements()
            .iter()
            .next()
            .ok_or_else(|| CliError::usage("empty connection set".into()))?),
    }
}

fn witness_pair(
    args: &BuildArgs,
    grp: &FiniteGroup,
    set: &ConnectionSet,
    four: bool,
) -> Result<(usize, usize), CliError> {
    if let Some(spec) = args.witness.as_deref() {
        let (a, b) = spec.split_once(',').ok_or_else(|| {
            CliError::usage(format!("--witness wants \"s1,s2\", got {spec:?}"))
        })?;
        return Ok((
            resolve_name(a.trim(), grp).map_err(CliError::usage)?,
            resolve_name(b.trim(), grp).map_err(CliError::usage)?,
        ));
    }
    let report = check_connection_set(grp, set.elements()).map_err(core_err)?;
    let found = if four {
        report.pair_s1s2_and_s1s2_inv
    } else {
        report.pair_s1s2
    };
    found.ok_or_else(|| {
        CliError::usage(
            "no witness pair exists in the connection set; the theorem does not apply".into(),
        )
    })
}

fn approx_json(res: &ApproxResult, graph: &Graph) -> serde_json::Value {
    let cert = ratio_certificate(res, graph);
    json!({
        "strategy": "approx",
        "s": res.s,
        "u": res.u,
        "v1": res.v1,
        "factor_count": res.factor_count,
        "output_size": res.ca.size(),
        "lower_bound": res.ca.symbols() * res.ca.symbols(),
        "achieved_multiplier": cert.achieved_multiplier,
        "ratio_bound": cert.bound,
        "within_bound": cert.within_bound,
        "prime_input": cert.prime_input,
        "notes": cert.notes,
    })
}

fn cmd_approx(
    ctx: &mut Ctx,
    graph_path: &Path,
    g: usize,
    out: &Path,
    report_path: Option<&Path>,
) -> Result<Option<serde_json::Value>, CliError> {
    let graph = ctx.read_graph(graph_path)?;
    let res = approx_ca(&graph, g).map_err(core_err)?;
    let strategy = approx_json(&res, &graph);
    ctx.emit_ca(out, &res.ca, None, Some(&graph))?;
    if let Some(path) = report_path {
        fs::write(path, serde_json::to_string_pretty(&strategy).unwrap())
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        ctx.outputs.push(path.display().to_string());
    }
    Ok(Some(strategy))
}

fn cmd_verify(
    ctx: &mut Ctx,
    graph_path: &Path,
    ca_path: &Path,
) -> Result<Option<serde_json::Value>, CliError> {
    let graph = ctx.read_graph(graph_path)?;
    let parsed = read_ca(ca_path)?;
    ctx.inputs.push(input_record(ca_path));
    let ca = parsed.bind_to(&graph)?;
    let check = verify_ca(&ca, &graph).map_err(core_err)?;
    let strategy = json!({
        "ok": check.ok,
        "edges_checked": graph.edge_count(),
        "failing_edges": check
            .failing_edges
            .iter()
            .map(|f| json!({
                "u": f.u,
                "v": f.v,
                "missing_pair": [f.missing_pair.0, f.missing_pair.1],
            }))
            .collect::<Vec<_>>(),
    });
    if !check.ok {
        for f in &check.failing_edges {
            eprintln!(
                "edge ({}, {}): missing pair ({}, {})",
                f.u, f.v, f.missing_pair.0, f.missing_pair.1
            );
        }
        let report = CommandReport {
            command: "verify".into(),
            inputs: std::mem::take(&mut ctx.inputs),
            outputs: Vec::new(),
            strategy: Some(strategy),
            wall_time_ms: 0,
        };
        return Err(CliError::verification(
            format!("{} edge(s) fail qualitative independence", report_fail_count(&report)),
            Some(Box::new(report)),
        ));
    }
    Ok(Some(strategy))
}

fn report_fail_count(report: &CommandReport) -> usize {
    report
        .strategy
        .as_ref()
        .and_then(|s| s.get("failing_edges"))
        .and_then(|f| f.as_array())
        .map_or(0, Vec::len)
}

/// chi/omega limits, overridable through GRAPHCA_LIMITS=chi=NN,omega=NN.
fn analysis_limits() -> (usize, usize) {
    let mut chi = DEFAULT_CHROMATIC_LIMIT;
    let mut omega = DEFAULT_CLIQUE_LIMIT;
    if let Ok(spec) = std::env::var("GRAPHCA_LIMITS") {
        for part in spec.split(',') {
            if let Some((key, value)) = part.split_once('=') {
                if let Ok(v) = value.trim().parse::<usize>() {
                    match key.trim() {
                        "chi" => chi = v,
                        "omega" => omega = v,
                        _ => {}
                    }
                }
            }
        }
    }
    (chi, omega)
}

fn cmd_analyze(
    ctx: &mut Ctx,
    graph_path: &Path,
    g: Option<usize>,
) -> Result<Option<serde_json::Value>, CliError> {
    let graph = ctx.read_graph(graph_path)?;
    let (chi_limit, omega_limit) = analysis_limits();
    let greedy = greedy_coloring(&graph).color_count;
    let omega = max_clique(&graph, omega_limit).ok();
    let exact = exact_chromatic_number(&graph, chi_limit).ok();

    let chi_for_bound = exact.unwrap_or(greedy);
    let g_text = g.map_or_else(|| "g".to_string(), |v| v.to_string());
    let sandwich = match omega {
        Some(w) => format!(
            "CAN(K_{w}, {g_text}) <= CAN(G, {g_text}) <= CAN(K_{chi_for_bound}, {g_text})"
        ),
        None => format!("CAN(G, {g_text}) <= CAN(K_{chi_for_bound}, {g_text})"),
    };
    eprintln!(
        "vertices: {}, edges: {}",
        graph.vertex_count(),
        graph.edge_count()
    );
    match omega {
        Some(w) => eprintln!("omega: {w}"),
        None => eprintln!("omega: skipped (vertex limit; raise with GRAPHCA_LIMITS)"),
    }
    eprintln!("greedy chi: {greedy}");
    match exact {
        Some(x) => eprintln!("exact chi: {x}"),
        None => eprintln!("exact chi: skipped (vertex limit; raise with GRAPHCA_LIMITS)"),
    }
    eprintln!("{sandwich}");

    Ok(Some(json!({
        "vertices": graph.vertex_count(),
        "edges": graph.edge_count(),
        "omega": omega,
        "greedy_chi": greedy,
        "exact_chi": exact,
        "bound_sandwich": sandwich,
    })))
}
