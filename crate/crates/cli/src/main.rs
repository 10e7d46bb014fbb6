mod repro;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use legdouble::chromatic::{
    chromatic_polynomial, count_colorings_bruteforce, dual_chromatic_polynomial, extract_linear_factors,
    sheaf_point_count,
};
use legdouble::cluster::{
    admissibility_violation, count_folded_seeds, fold, is_globally_foldable, ExchangeMatrix, GroupAction,
    DEFAULT_SEED_CAP,
};
use legdouble::doubling::{
    decompose, double_map, double_verdict, is_generalized_cube, is_tree_double, search_equal_chromatic_step,
    search_q_minus_2_trianglefree, EqualChromaticState,
};
use legdouble::grassmann::{obstruct_twist_spun, ObstructOptions, Status};
use legdouble::plane_graph::{CombMap, Multigraph};
use legdouble::polygon::{
    enumerate_triangulations, filling_count_lower_bound, flip_distance_with, symmetric_triangulations,
    FlipDistanceConfig, Triangulation,
};
use legdouble::Error;

#[derive(Parser)]
#[command(name = "legdouble", version, about = "Exact computations on Legendrian doubles, fillings and twist-spuns")]
struct Cli {
    /// Worker threads (0 = all cores). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Polygon triangulations
    #[command(subcommand)]
    Triang(TriangCmd),
    /// Plane maps given as JSON files or built-in names
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Chromatic polynomials
    #[command(subcommand)]
    Chrom(ChromCmd),
    /// Doubled trivalent graphs
    #[command(subcommand)]
    Double(DoubleCmd),
    /// Exchange matrices, folding and seeds
    #[command(subcommand)]
    Cluster(ClusterCmd),
    /// Rational-point obstruction for twist-spuns
    Obstruct(ObstructArgs),
    /// Long-running pair searches
    #[command(subcommand)]
    Search(SearchCmd),
    /// Reproduce a named check, or `all`
    Repro { name: String },
}

#[derive(Subcommand)]
enum TriangCmd {
    /// List triangulations of the N-gon
    Enum {
        n: usize,
        #[arg(long)]
        count: bool,
    },
    /// Flip distance between two triangulations
    Flipdist {
        t1: String,
        t2: String,
        #[arg(long, default_value_t = 1_000_000)]
        max_nodes: usize,
    },
    /// Triangulations fixed by the rotation i -> i + K
    Symmetric {
        n: usize,
        k: usize,
        #[arg(long)]
        count: bool,
    },
    /// Rotate a triangulation by K steps
    Rotate { t: String, k: i64 },
    /// Filling-count lower bound f for the rotation k on the (n+2)-gon
    Bound { n: usize, k: usize },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Face degrees
    Faces { map: String },
    /// Dual multigraph
    Dual {
        map: String,
        #[arg(long)]
        dot: bool,
    },
    /// Canonical form as hex
    Canon {
        map: String,
        /// Distinguish mirror images
        #[arg(long)]
        oriented: bool,
    },
    /// Isomorphism test
    Iso { a: String, b: String },
    /// Weave genus of a trivalent sphere map
    Genus { map: String },
    /// Reducibility to the cube graph by delete-and-smooth steps
    CubeTest { map: String },
    /// Whether the map is a double of two trees
    TreeDouble { map: String },
    /// Print the map
    Show {
        map: String,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand)]
enum ChromCmd {
    /// Chromatic polynomial of a multigraph, or of the dual of a map
    Poly {
        graph: String,
        /// Also print the polynomial in q = x - 1
        #[arg(long)]
        q: bool,
        /// Multiplicities of x - r for the given roots
        #[arg(long, value_delimiter = ',')]
        roots: Vec<i64>,
    },
    /// Proper colorings by exhaustive search
    Count { graph: String, x: u64 },
    /// Sheaf point count of a trivalent sphere map
    Sheaf { map: String, q: u64 },
}

#[derive(Subcommand)]
enum DoubleCmd {
    /// Build the double of two triangulations of the N-gon
    Build {
        n: usize,
        t1: String,
        t2: String,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decomposition, fillability and distance report for a pair
    Verdict { n: usize, t1: String, t2: String },
    /// Surgery-move decomposition of a map
    Decompose {
        map: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct PermArg {
    /// Cycle notation, 1-based, e.g. "(1 5)(2 4)"
    #[arg(long, default_value = "")]
    perm: String,
}

#[derive(Subcommand)]
enum ClusterCmd {
    /// Fold an exchange matrix along a symmetry
    Fold {
        file: PathBuf,
        #[command(flatten)]
        perm: PermArg,
    },
    /// Global foldability by exploring orbit mutations
    Gfold {
        file: PathBuf,
        #[command(flatten)]
        perm: PermArg,
        #[arg(long, default_value_t = DEFAULT_SEED_CAP)]
        cap: usize,
    },
    /// Count seeds reachable by orbit mutations
    Seeds {
        file: PathBuf,
        #[command(flatten)]
        perm: PermArg,
        #[arg(long, default_value_t = DEFAULT_SEED_CAP)]
        cap: usize,
    },
    /// Mutate at a vertex (0-based)
    Mutate { file: PathBuf, k: usize },
}

#[derive(Args)]
struct ObstructArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l: usize,
    /// Search every column set, not only the designated one
    #[arg(long, alias = "all")]
    all_ratios: bool,
    /// Evaluate even when the hypotheses fail
    #[arg(long)]
    force: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Non-isomorphic doubles with equal dual chromatic polynomials
    EqualChrom {
        n: usize,
        #[arg(long, default_value_t = usize::MAX)]
        budget: usize,
        /// JSON state file, read if present and rewritten after the run
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Triangle-free doubles whose count vanishes at q = 2
    Qminus2 { n: usize },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Domain(_) | Error::InvalidDiagonal(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

type Out = std::result::Result<bool, Failure>;

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn triangulation(n: Option<usize>, s: &str) -> std::result::Result<Triangulation, Failure> {
    let text = match n {
        Some(n) if !s.contains(':') => format!("{n}:{s}"),
        _ => s.to_string(),
    };
    let t: Triangulation = text.parse()?;
    if let Some(n) = n {
        if t.n() != n {
            return Err(Failure::Usage(format!("{s} is a triangulation of the {}-gon, not the {n}-gon", t.n())));
        }
    }
    Ok(t)
}

/// A map from a JSON file, or one of `theta`, `cube`, `tetrahedron`, `prism-K`.
fn load_map(spec: &str) -> std::result::Result<CombMap, Failure> {
    match spec {
        "theta" => return Ok(CombMap::theta()),
        "cube" => return Ok(CombMap::cube()),
        "tetrahedron" => return Ok(CombMap::tetrahedron()),
        _ => {}
    }
    if let Some(k) = spec.strip_prefix("prism-") {
        let k: usize = k.parse().map_err(|_| Failure::Usage(format!("bad prism size {k}")))?;
        if k < 3 {
            return Err(Failure::Usage("prism needs at least 3 sides".into()));
        }
        return Ok(CombMap::prism(k));
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    Ok(CombMap::from_json(&text)?)
}

/// A multigraph JSON `{ "n", "edges" }`, or a map whose dual is taken.
fn load_graph(spec: &str) -> std::result::Result<Multigraph, Failure> {
    if let Ok(text) = std::fs::read_to_string(spec) {
        if let Ok(g) = serde_json::from_str::<Multigraph>(&text) {
            return Multigraph::new(g.vertex_count(), g.edges().to_vec()).map_err(Into::into);
        }
    }
    Ok(load_map(spec)?.dual()?)
}

fn load_matrix(path: &Path) -> std::result::Result<ExchangeMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    Ok(ExchangeMatrix::from_json(&text)?)
}

fn action(perm: &PermArg, n: usize) -> std::result::Result<GroupAction, Failure> {
    if perm.perm.trim().is_empty() {
        Ok(GroupAction::identity(n))
    } else {
        Ok(GroupAction::from_cycles(n, &perm.perm)?)
    }
}

fn print_matrix(b: &ExchangeMatrix) {
    for (i, row) in b.rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        let tag = if i < b.n_mut() { "" } else { "  (frozen)" };
        println!("[{}]{tag}", cells.join(""));
    }
    if let Some(d) = b.d() {
        println!("D = diag{d:?}");
    }
}

fn triang(cmd: TriangCmd) -> Out {
    match cmd {
        TriangCmd::Enum { n, count } => {
            let all = enumerate_triangulations(n)?;
            if count {
                println!("{}", all.len());
            } else {
                all.iter().for_each(|t| println!("{t}"));
            }
        }
        TriangCmd::Flipdist { t1, t2, max_nodes } => {
            let (a, b) = (triangulation(None, &t1)?, triangulation(None, &t2)?);
            let cfg = FlipDistanceConfig { node_cap: max_nodes, ..Default::default() };
            println!("{}", flip_distance_with(&a, &b, cfg)?);
        }
        TriangCmd::Symmetric { n, k, count } => {
            let all = symmetric_triangulations(n, k)?;
            if count {
                println!("{}", all.len());
            } else {
                all.iter().for_each(|t| println!("{t}"));
            }
        }
        TriangCmd::Rotate { t, k } => println!("{}", triangulation(None, &t)?.rotate(k)),
        TriangCmd::Bound { n, k } => println!("{}", filling_count_lower_bound(n, k)?),
    }
    Ok(true)
}

fn graph(cmd: GraphCmd) -> Out {
    match cmd {
        GraphCmd::Faces { map } => {
            let m = load_map(&map)?;
            let degs: Vec<String> = m.face_degrees().iter().map(|d| d.to_string()).collect();
            println!("{} faces: {}", degs.len(), degs.join(" "));
        }
        GraphCmd::Dual { map, dot } => {
            let g = load_map(&map)?.dual()?;
            if dot {
                println!("graph dual {{");
                (0..g.vertex_count()).for_each(|v| println!("  f{v};"));
                g.edges().iter().for_each(|(a, b)| println!("  f{a} -- f{b};"));
                println!("}}");
            } else {
                println!("{}", json(&g));
            }
        }
        GraphCmd::Canon { map, oriented } => {
            let form = load_map(&map)?.canonical_form_with(!oriented);
            println!("{}", form.iter().map(|b| format!("{b:02x}")).collect::<String>());
        }
        GraphCmd::Iso { a, b } => {
            let iso = load_map(&a)?.isomorphic(&load_map(&b)?);
            println!("{iso}");
        }
        GraphCmd::Genus { map } => println!("{}", load_map(&map)?.weave_genus()?),
        GraphCmd::CubeTest { map } => println!("{}", is_generalized_cube(&load_map(&map)?)?),
        GraphCmd::TreeDouble { map } => println!("{}", is_tree_double(&load_map(&map)?)?),
        GraphCmd::Show { map, dot } => {
            let m = load_map(&map)?;
            if dot {
                print!("{}", m.to_dot(true));
            } else {
                println!("{}", m.to_json());
            }
        }
    }
    Ok(true)
}

fn chrom(cmd: ChromCmd) -> Out {
    match cmd {
        ChromCmd::Poly { graph, q, roots } => {
            let p = chromatic_polynomial(&load_graph(&graph)?)?;
            println!("P(x) = {}", p.to_string_var("x"));
            if q {
                println!("P(q+1) = {}", p.to_q_basis().to_string_var("q"));
            }
            if !roots.is_empty() {
                let f = extract_linear_factors(&p, &roots);
                for (r, m) in roots.iter().zip(&f.multiplicities) {
                    match m {
                        Some(m) => println!("x - {r}: {m}"),
                        None => println!("x - {r}: infinite"),
                    }
                }
                println!("quotient = {}", f.quotient.to_string_var("x"));
            }
        }
        ChromCmd::Count { graph, x } => println!("{}", count_colorings_bruteforce(&load_graph(&graph)?, x)?),
        ChromCmd::Sheaf { map, q } => println!("{}", sheaf_point_count(&load_map(&map)?, q)?),
    }
    Ok(true)
}

fn double(cmd: DoubleCmd) -> Out {
    match cmd {
        DoubleCmd::Build { n, t1, t2, dot, json: as_json } => {
            let m = double_map(&triangulation(Some(n), &t1)?, &triangulation(Some(n), &t2)?)?;
            if dot {
                print!("{}", m.to_dot(true));
            } else if as_json {
                println!("{}", m.to_json());
            } else {
                let p = dual_chromatic_polynomial(&m)?;
                println!("vertices {}, edges {}, faces {}", m.vertex_count(), m.edge_count(), m.faces().len());
                println!("genus {}", m.weave_genus()?);
                println!("P(q+1) = {}", p.to_q_basis().to_string_var("q"));
            }
        }
        DoubleCmd::Verdict { n, t1, t2 } => {
            let v = double_verdict(&triangulation(Some(n), &t1)?, &triangulation(Some(n), &t2)?)?;
            println!("{}", json(&v));
        }
        DoubleCmd::Decompose { map, json: as_json } => {
            let r = decompose(&load_map(&map)?)?;
            if as_json {
                println!("{}", json(&r));
            } else if r.decomposable {
                println!("decomposable: {} standard, {} Clifford", r.k_std, r.l_clifford);
                println!("moves: {:?}", r.moves);
            } else {
                println!("not decomposable; residual has {} vertices", r.residual.vertex_count());
            }
        }
    }
    Ok(true)
}

fn cluster(cmd: ClusterCmd) -> Out {
    match cmd {
        ClusterCmd::Fold { file, perm } => {
            let b = load_matrix(&file)?;
            let g = action(&perm, b.n_total())?;
            if let Some(v) = admissibility_violation(&b, &g) {
                println!("not admissible: condition ({}) {}", v.condition, v.detail);
                return Ok(false);
            }
            print_matrix(&fold(&b, &g)?);
        }
        ClusterCmd::Gfold { file, perm, cap } => {
            let b = load_matrix(&file)?;
            let ok = is_globally_foldable(&b, &action(&perm, b.n_total())?, cap)?;
            println!("{}", if ok { "globally foldable" } else { "not globally foldable" });
            return Ok(ok);
        }
        ClusterCmd::Seeds { file, perm, cap } => {
            let b = load_matrix(&file)?;
            println!("{}", count_folded_seeds(&b, &action(&perm, b.n_total())?, cap)?);
        }
        ClusterCmd::Mutate { file, k } => print_matrix(&load_matrix(&file)?.mutate(k)?),
    }
    Ok(true)
}

fn obstruct(a: ObstructArgs) -> Out {
    let opts = ObstructOptions { force: a.force, all_ratios: a.all_ratios };
    let v = obstruct_twist_spun(a.k, a.n, a.l, opts)?;
    if a.json {
        println!("{}", json(&v));
    } else {
        println!("{:?}", v.status);
        if let Some(r) = &v.reason {
            println!("reason: {r}");
        }
        for c in &v.certificates {
            let value = c.rational.as_deref().unwrap_or("irrational");
            println!("roots {:?} columns {:?}: {} ({value})", c.root_exponents, c.columns, c.display);
        }
        if let Some(w) = &v.witness {
            println!("rational witness: {w}");
        }
    }
    Ok(v.status != Status::Inconclusive)
}

fn search(cmd: SearchCmd) -> Out {
    match cmd {
        SearchCmd::EqualChrom { n, budget, checkpoint } => {
            let mut state = match &checkpoint {
                Some(p) if p.exists() => {
                    let text = std::fs::read_to_string(p).map_err(|e| io_err(p, e))?;
                    let s: EqualChromaticState =
                        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
                    if s.n != n {
                        return Err(Failure::Usage(format!("checkpoint is for N = {}, not {n}", s.n)));
                    }
                    s
                }
                _ => EqualChromaticState::new(n),
            };
            let more = search_equal_chromatic_step(&mut state, budget)?;
            if let Some(p) = &checkpoint {
                std::fs::write(p, json(&state)).map_err(|e| io_err(p, e))?;
            }
            let matches = state.matches();
            println!("N = {n}: {} pairs examined, next offset {}, {}", state.examined, state.next_offset,
                if more { "partial" } else { "complete" });
            let tris = enumerate_triangulations(n)?;
            for ((a, b), (c, d)) in &matches {
                println!("{} | {}  ~  {} | {}", tris[*a], tris[*b], tris[*c], tris[*d]);
            }
            println!("{} equal-polynomial non-isomorphic pairs", matches.len());
        }
        SearchCmd::Qminus2 { n } => {
            let tris = enumerate_triangulations(n)?;
            let found = search_q_minus_2_trianglefree(n)?;
            for (a, b) in &found {
                println!("{} | {}", tris[*a], tris[*b]);
            }
            println!("{} ordered pairs", found.len());
        }
    }
    Ok(true)
}

fn run(cli: Cli) -> Out {
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    match cli.cmd {
        Cmd::Triang(c) => triang(c),
        Cmd::Graph(c) => graph(c),
        Cmd::Chrom(c) => chrom(c),
        Cmd::Double(c) => double(c),
        Cmd::Cluster(c) => cluster(c),
        Cmd::Obstruct(a) => obstruct(a),
        Cmd::Search(c) => search(c),
        Cmd::Repro { name } => repro::run(&name),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(1)
        }
    }
}
