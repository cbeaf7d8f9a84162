use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use subword_cluster::cluster::{f_polynomial, g_vector, FPolynomial};
use subword_cluster::coxeter::{coxeter_elements, Word};
use subword_cluster::json::{CartanJson, FPolyJson, FacetJson, LaurentJson, PolytopeJson, SeedJson};
use subword_cluster::polytope::LatticePolytope;
use subword_cluster::rootsys::{CartanMatrix, Family, FiniteType, RootSystem, RootVec};
use subword_cluster::typea::Triangulation;
use subword_cluster::verify::{check_typea_models, run_checks, Check, Model, Report};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] subword_cluster::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

type Result<T, E = CliError> = std::result::Result<T, E>;

/// Cluster algebras of finite type from subword complexes.
#[derive(Debug, Parser)]
#[command(name = "subword-cluster", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the facets with their root and weight configurations.
    Facets(Input),
    /// List every seed with its d-, g- and c-vectors.
    Seeds(Input),
    /// Tabulate the F-polynomial of every positive root.
    Fpoly(Input),
    /// Vertices of the brick polytope and its translate in root coordinates.
    Brick(Input),
    /// Enumerate the T-paths of a type A diagonal.
    Tpaths {
        #[command(flatten)]
        input: Input,
        /// Root `α_i+…+α_j`, as `i,j` (1-based).
        #[arg(long, value_name = "I,J")]
        root: String,
    },
    /// Run checks and report PASS/FAIL per check.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Comma separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Run over every Coxeter element instead of a single one.
        #[arg(long, conflicts_with = "coxeter")]
        all_coxeter: bool,
    },
}

#[derive(Debug, Args)]
struct Input {
    /// Cartan type such as `B3`, or a family letter together with `--rank`.
    #[arg(long = "type", value_name = "TYPE", required_unless_present = "cartan")]
    ty: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    /// Cartan matrix as JSON.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["ty", "rank"])]
    cartan: Option<PathBuf>,
    /// Coxeter word, 1-based and comma separated. Defaults to `1,2,…,n`.
    #[arg(long, value_name = "WORD")]
    coxeter: Option<String>,
    /// Also write the result as JSON to this file.
    #[arg(long, value_name = "PATH")]
    emit_json: Option<PathBuf>,
    /// Print JSON instead of a table.
    #[arg(long)]
    json: bool,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

impl Input {
    fn cartan(&self) -> Result<CartanMatrix> {
        if let Some(path) = &self.cartan {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let j: CartanJson = serde_json::from_str(&text)?;
            return Ok(CartanMatrix::try_from(j)?);
        }
        let ty = self.ty.as_deref().unwrap_or_default().trim();
        let ft: FiniteType = match (ty.len(), self.rank) {
            (1, Some(rank)) => {
                let letter = ty.chars().next().unwrap_or_default();
                let family = Family::from_letter(letter)
                    .ok_or_else(|| CliError::Usage(format!("unknown family {ty:?}")))?;
                FiniteType::new(family, rank)?
            }
            (1, None) => return Err(CliError::Usage(format!("--type {ty} needs --rank"))),
            (_, rank) => {
                let ft: FiniteType = ty.parse()?;
                if rank.is_some_and(|r| r != ft.rank()) {
                    return Err(CliError::Usage(format!("--rank disagrees with --type {ty}")));
                }
                ft
            }
        };
        Ok(CartanMatrix::of_type(ft.family(), ft.rank())?)
    }

    fn coxeter(&self, n: usize) -> Result<Word> {
        let c = match &self.coxeter {
            Some(s) => s.parse::<Word>()?,
            None => Word::new((0..n).collect()),
        };
        c.check_range(n)?;
        if !c.is_coxeter_word(n) {
            return Err(CliError::Usage(format!("{c} is not a Coxeter word of rank {n}")));
        }
        Ok(c)
    }

    fn model(&self) -> Result<Model> {
        let cartan = self.cartan()?;
        let c = self.coxeter(cartan.rank())?;
        Ok(Model::new(RootSystem::new(cartan)?, c)?)
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        Ok(rayon::ThreadPoolBuilder::new().num_threads(self.jobs.into()).build()?)
    }
}

/// What a subcommand produces: a table, its JSON form, and whether a
/// counterexample was found.
struct Output {
    text: String,
    json: Value,
    failed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, failed: false }
    }
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s = String::new();
        for (k, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if k + 1 == cells.len() {
                s.push_str(cell);
            } else {
                s.push_str(cell);
                s.extend(std::iter::repeat_n(' ', w - cell.chars().count() + 2));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn joined<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn coords(v: &[i64]) -> String {
    format!("({})", joined(v))
}

fn heading(model: &Model) -> String {
    let k = model.complex();
    format!(
        "{} c={}  Q={}  ({} positions)\n",
        model.cartan().label(),
        k.coxeter_word(),
        k.word(),
        k.len()
    )
}

fn facets(input: &Input) -> Result<Output> {
    let model = input.model()?;
    let rows: Vec<Vec<String>> = model
        .nodes()
        .iter()
        .map(|node| {
            vec![
                node.facet.to_string(),
                joined(node.table.root_configuration(&node.facet)),
                joined(node.table.weight_configuration(&node.facet)),
                coords(node.table.brick_vector().coords()),
            ]
        })
        .collect();
    let mut text = heading(&model);
    text.push_str(&format!("{} facets\n", rows.len()));
    text.push_str(&table(&["facet", "roots", "weights", "brick"], &rows));
    let list: Vec<FacetJson> = model.nodes().iter().map(|n| FacetJson::new(&n.facet, &n.table)).collect();
    let json = json!({
        "cartan": CartanJson::from(model.cartan()),
        "coxeter": model.complex().coxeter_word().one_based(),
        "facets": list,
    });
    Ok(Output::ok(text, json))
}

fn seeds(input: &Input) -> Result<Output> {
    let model = input.model()?;
    let k = model.complex();
    let mut text = heading(&model);
    text.push_str(&format!("{} seeds\n", model.nodes().len()));
    let mut list = Vec::new();
    for node in model.nodes() {
        let seed = &node.seed;
        let cs = seed.c_vectors();
        let rows = node
            .facet
            .positions()
            .iter()
            .map(|&i| {
                let col = node.column(k, i);
                let u = &seed.variables()[col];
                Ok(vec![
                    (i + 1).to_string(),
                    seed.labels()[col].to_string(),
                    g_vector(u)?.to_string(),
                    cs[col].to_string(),
                    u.to_string(),
                ])
            })
            .collect::<Result<Vec<_>>>()?;
        text.push_str(&format!("\nfacet {}\n", node.facet));
        text.push_str(&table(&["pos", "d-vector", "g-vector", "c-vector", "variable"], &rows));
        let b: Vec<String> = seed.matrix().iter().map(|r| coords(r)).collect();
        text.push_str(&format!("B = [{}]\n", b.join(" ")));
        list.push(json!({ "facet": node.facet.one_based(), "seed": SeedJson::new(seed)? }));
    }
    let json = json!({
        "cartan": CartanJson::from(model.cartan()),
        "coxeter": k.coxeter_word().one_based(),
        "seeds": list,
    });
    Ok(Output::ok(text, json))
}

fn fpoly(input: &Input) -> Result<Output> {
    let model = input.model()?;
    let k = model.complex();
    let mut rows = Vec::new();
    let mut list = Vec::new();
    for (pos, beta) in model.positive_positions() {
        let u = model.variable(&beta).expect("every positive root has a variable");
        let f = f_polynomial(u);
        let g = g_vector(u)?;
        // c-vector read off the first facet (in lexicographic order) that contains the position.
        let node = model
            .nodes()
            .iter()
            .find(|n| n.facet.contains(pos))
            .expect("every position lies in some facet");
        let c = node.seed.c_vectors()[node.column(k, pos)].clone();
        rows.push(vec![
            (pos + 1).to_string(),
            beta.to_string(),
            f.to_string(),
            g.to_string(),
            c.to_string(),
            node.facet.to_string(),
        ]);
        list.push(json!({
            "position": pos + 1,
            "root": beta.coords(),
            "f_polynomial": FPolyJson::from(&f),
            "variable": LaurentJson::from(u),
            "g_vector": g.coords(),
            "c_vector": c.coords(),
            "c_vector_facet": node.facet.one_based(),
        }));
    }
    let mut text = heading(&model);
    text.push_str(&table(&["pos", "root", "F", "g-vector", "c-vector", "in facet"], &rows));
    let json = json!({
        "cartan": CartanJson::from(model.cartan()),
        "coxeter": k.coxeter_word().one_based(),
        "roots": list,
    });
    Ok(Output::ok(text, json))
}

fn brick(input: &Input) -> Result<Output> {
    let model = input.model()?;
    let k = model.complex();
    let ag = model
        .node(&k.antigreedy_facet())
        .expect("antigreedy facet is enumerated")
        .table
        .brick_vector();
    let brick = model.brick_polytope()?;
    let shifted = LatticePolytope::hull(
        model
            .nodes()
            .iter()
            .map(|n| model.cartan().weight_diff_to_root_coords(&n.table.brick_vector(), &ag).map(RootVec::into_coords))
            .collect::<std::result::Result<Vec<_>, _>>()?,
    )?;
    let mut text = heading(&model);
    text.push_str(&format!("antigreedy facet {}  brick {}\n", k.antigreedy_facet(), coords(ag.coords())));
    text.push_str(&format!("\nbrick polytope, weight coordinates ({} vertices)\n", brick.vertices().len()));
    for v in brick.vertices() {
        text.push_str(&format!("  {}\n", coords(v)));
    }
    text.push_str(&format!(
        "\nb(I) − b(AG), simple-root coordinates ({} vertices)\n",
        shifted.vertices().len()
    ));
    for v in shifted.vertices() {
        text.push_str(&format!("  {}\n", coords(v)));
    }
    let json = json!({
        "cartan": CartanJson::from(model.cartan()),
        "coxeter": k.coxeter_word().one_based(),
        "antigreedy": { "facet": k.antigreedy_facet().one_based(), "brick_vector": ag.coords() },
        "brick_polytope": PolytopeJson::new(&brick, false),
        "root_translate": PolytopeJson::new(&shifted, false),
    });
    Ok(Output::ok(text, json))
}

fn tpaths(input: &Input, root: &str) -> Result<Output> {
    let cartan = input.cartan()?;
    let n = cartan.rank();
    if cartan.finite_type().map(|t| t.family()) != Some(Family::A) {
        return Err(CliError::Usage("tpaths needs a type A Cartan matrix".into()));
    }
    let c = input.coxeter(n)?;
    let (i, j) = root
        .split_once(',')
        .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
        .filter(|&(i, j)| 1 <= i && i <= j && j <= n)
        .ok_or_else(|| CliError::Usage(format!("--root {root:?} is not i,j with 1 ≤ i ≤ j ≤ {n}")))?;
    let t = Triangulation::of_coxeter(&c, n)?;
    let gamma = t.diagonal_of_root(i - 1, j - 1)?;
    let paths = t.enumerate_tpaths(&gamma);
    let mut rows = Vec::new();
    let mut list = Vec::new();
    for p in &paths {
        let m = p.monomial(n);
        let mono = FPolynomial::from_pairs(n, &[(&m, 1)]);
        let signs: String = p.signs.iter().map(|&s| if s { '+' } else { '-' }).collect();
        rows.push(vec![p.to_string(), signs.clone(), mono.to_string()]);
        list.push(json!({ "path": p.to_string(), "signs": p.signs, "monomial": m }));
    }
    let f = t.f_poly_via_tpaths(i - 1, j - 1)?;
    let beta = RootVec::new((1..=n).map(|k| i64::from(i <= k && k <= j)).collect());
    let mut text = format!("{} c={}  root {}  diagonal {}\n", cartan.label(), c, beta, t.edge_name(gamma.start, gamma.end));
    text.push_str(&format!("{} T-paths\n", paths.len()));
    text.push_str(&table(&["path", "signs", "monomial"], &rows));
    text.push_str(&format!("F = {f}\n"));
    let json = json!({
        "coxeter": c.one_based(),
        "root": beta.coords(),
        "tpaths": list,
        "f_polynomial": FPolyJson::from(&f),
    });
    Ok(Output::ok(text, json))
}

fn verify(input: &Input, checks: &str, all_coxeter: bool) -> Result<Output> {
    let checks = Check::parse_list(checks)?;
    let cartan = input.cartan()?;
    let rs = RootSystem::new(cartan.clone())?;
    let words = if all_coxeter {
        coxeter_elements(&cartan)
    } else {
        vec![input.coxeter(cartan.rank())?]
    };
    let per_word: Vec<Check> = checks.iter().copied().filter(|&c| c != Check::Typea).collect();
    let pool = input.pool()?;
    let mut reports: Vec<Report> = pool.install(|| {
        words
            .par_iter()
            .map(|c| {
                let model = Model::new(rs.clone(), c.clone())?;
                Ok(run_checks(&model, &per_word)?)
            })
            .collect::<Result<Vec<_>>>()
    })?
    .into_iter()
    .flatten()
    .collect();
    if checks.contains(&Check::Typea) {
        match cartan.finite_type() {
            Some(ty) if ty.family() == Family::A => reports.push(pool.install(|| check_typea_models(ty.rank()))?),
            _ => {
                let model = Model::new(rs, words[0].clone())?;
                reports.extend(run_checks(&model, &[Check::Typea])?);
            }
        }
    }
    let failed = reports.iter().any(Report::failed);
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("{r}\n"));
    }
    let json = json!({ "reports": reports, "failed": failed });
    Ok(Output { text, json, failed })
}

fn write_json(path: &PathBuf, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

fn run(cli: Cli) -> Result<bool> {
    let (input, out) = match &cli.command {
        Command::Facets(i) => (i, facets(i)?),
        Command::Seeds(i) => (i, seeds(i)?),
        Command::Fpoly(i) => (i, fpoly(i)?),
        Command::Brick(i) => (i, brick(i)?),
        Command::Tpaths { input, root } => (input, tpaths(input, root)?),
        Command::Verify {
            input,
            checks,
            all_coxeter,
        } => (input, verify(input, checks, *all_coxeter)?),
    };
    if let Some(path) = &input.emit_json {
        write_json(path, &out.json)?;
    }
    let mut stdout = std::io::stdout().lock();
    let printed = if input.json {
        serde_json::to_string_pretty(&out.json)? + "\n"
    } else {
        out.text
    };
    // A closed pipe is not worth a diagnostic.
    let _ = stdout.write_all(printed.as_bytes());
    Ok(!out.failed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
