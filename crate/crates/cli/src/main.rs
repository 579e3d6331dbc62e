use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tsys::analytic::{dilog_invariant, DEFAULT_TOLERANCE};
use tsys::cluster::quiver_dot;
use tsys::cluster::{label_string, verify_loop};
use tsys::correspondence::{build_loop, verify_duality};
use tsys::dynamics::{default_bound, detect_period, evolve_t, evolve_y, tropical_t, YSpec};
use tsys::laurent::RationalMatrix;
use tsys::positivity::{a_ring, compute_k, is_cartan_like, simultaneous_positivity};
use tsys::qseries::{
    eta_theta_check, partition_series_all, product_side, sector_group, Family, QExpansion,
};
use tsys::tdatum::builders::{
    affinization, bipartite_residues, build_cartan_pair, build_size1, tadpole, tensor,
};
use tsys::tdatum::TDatumJson;
use tsys::tdatum::{validate_consistent, ConsistentSubset, Sign, TDatum};

#[derive(Parser)]
#[command(
    name = "tsysteme",
    version,
    about = "T-data, mutation loops, T/Y-systems and their invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the T-datum axioms and, if present, the consistent subset.
    Validate { file: PathBuf },
    /// Print the Langlands dual datum as JSON.
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the mutation loop of the datum and its consistent subset.
    Loop {
        file: PathBuf,
        /// Write the initial quiver as Graphviz (skew-symmetric matrices only).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Evolve the T-system (or the Y-system) and print one TSV line per value.
    Evolve {
        file: PathBuf,
        #[arg(long)]
        steps: i64,
        #[arg(long, value_enum, default_value_t = Coeffs::Trivial)]
        coeffs: Coeffs,
        /// Print Y_a(u) instead of T_a(u).
        #[arg(long)]
        y: bool,
    },
    /// Tropical T-system table for the initial variable T_c(0).
    Tropical {
        file: PathBuf,
        /// Index c, 1-based.
        #[arg(long)]
        c: usize,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: (i64, i64),
        /// Use the +1 initial value, tracking numerator degrees.
        #[arg(long)]
        tilde: bool,
    },
    /// Simultaneous positivity, Cartan-likeness, K matrices and periodicity.
    Finite {
        file: PathBuf,
        /// Largest period searched; defaults to 48·max(p)·r.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Solve the Nahm equation and recognize c_α.
    Dilog { file: PathBuf },
    /// Partition q-series, one `n/M<TAB>coeff` line per term.
    Qseries {
        file: PathBuf,
        #[arg(long)]
        order: u64,
        #[arg(long)]
        sector: Option<usize>,
        #[arg(long, value_enum)]
        check: Option<Check>,
    },
    /// Write the JSON of a built datum.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeffs {
    Trivial,
    Principal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Eta,
    Product,
}

#[derive(Subcommand)]
enum BuildKind {
    /// Size 1 from palindromic n_1,…,n_{p−1}.
    Size1 {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<i64>,
        #[arg(long, default_value_t = 1)]
        d: i64,
    },
    /// Commuting Cartan pair; rows separated by `;`, entries by `,`.
    CartanPair {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        a2: String,
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<i64>>,
    },
    /// Tensor product of two finite types, e.g. `--x A3 --y A2`.
    Tensor {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Tadpole T_r.
    Tadpole {
        #[arg(long)]
        r: usize,
    },
    /// Affinization of a finite type at a level.
    Affinization {
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        level: i64,
    },
}

fn parse_window(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or("expected u0:u1")?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err("u0 must not exceed u1".into());
    }
    Ok((a, b))
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .with_context(|| format!("bad entry `{x}`"))
                })
                .collect()
        })
        .collect()
}

fn load(path: &Path) -> Result<(TDatum, Option<ConsistentSubset>)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let json = TDatumJson::parse(&text)?;
    let (alpha, rr) = json.to_datum()?;
    if let Some(rr) = &rr {
        validate_consistent(&alpha, rr).map_err(|v| {
            anyhow!(
                "inconsistent subset: {}",
                v.iter()
                    .map(|x| format!("(R1) {x}"))
                    .collect::<Vec<_>>()
                    .join("; ")
            )
        })?;
    }
    Ok((alpha, rr))
}

fn load_with_residues(path: &Path) -> Result<(TDatum, ConsistentSubset)> {
    let (alpha, rr) = load(path)?;
    let rr = rr.unwrap_or_else(|| ConsistentSubset::whole(alpha.size()));
    Ok((alpha, rr))
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn tuple<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    format!(
        "({})",
        xs.into_iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    )
}

fn matrix(m: &RationalMatrix) -> String {
    let rows: Vec<String> = (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| m.get(i, j).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn validate(file: &Path) -> Result<String> {
    let (alpha, rr) = load(file)?;
    let sigma = if alpha.sigma().iter().enumerate().all(|(a, &s)| a == s) {
        "id".to_string()
    } else {
        tuple(alpha.sigma().iter().map(|s| s + 1))
    };
    let mut out = format!(
        "valid T-datum, size {}, σ={sigma}, p={}",
        alpha.size(),
        tuple(alpha.p())
    );
    if alpha.d().iter().any(|&d| d != 1) {
        out += &format!(", D={}", tuple(alpha.d()));
    }
    out.push('\n');
    if let Some(rr) = rr {
        out += &format!(
            "consistent subset: t={}, residues {}\n",
            rr.t(),
            tuple(rr.residues())
        );
    }
    Ok(out)
}

fn run_loop(file: &Path, dot: Option<&Path>) -> Result<String> {
    let (alpha, rr) = load_with_residues(file)?;
    let gamma = build_loop(&alpha, &rr)?;
    let labels = gamma.b.labels();
    let mut out = format!(
        "mutation loop with {} vertices, t = {}\n",
        gamma.size(),
        gamma.t()
    );
    out += &format!("{}\n", gamma.b);
    for (u, block) in gamma.blocks.iter().enumerate() {
        let names: Vec<String> = block.iter().map(|&i| label_string(&labels[i])).collect();
        out += &format!("i({u}) = {{{}}}\n", names.join(", "));
    }
    let nu: Vec<String> = gamma
        .nu
        .iter()
        .enumerate()
        .map(|(i, &j)| {
            format!(
                "{} -> {}",
                label_string(&labels[i]),
                label_string(&labels[j])
            )
        })
        .collect();
    out += &format!("ν: {}\n", nu.join(", "));
    let verified = verify_loop(&gamma).is_ok();
    out += &format!("verify_loop: {}\n", if verified { "ok" } else { "FAILED" });
    let failures = verify_duality(&gamma)?;
    out += &format!(
        "duality identities: {}\n",
        if failures.is_empty() { "ok" } else { "FAILED" }
    );
    if let Some(path) = dot {
        if !gamma.b.is_skew_symmetric() {
            bail!("DOT export needs a skew-symmetric exchange matrix");
        }
        fs::write(path, quiver_dot(&gamma.b, None))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if !verified || !failures.is_empty() {
        bail!("{out}loop checks failed");
    }
    Ok(out)
}

fn evolve(file: &Path, steps: i64, coeffs: Coeffs, y: bool) -> Result<String> {
    if steps < 0 {
        bail!("--steps must be non-negative");
    }
    let (alpha, rr) = load_with_residues(file)?;
    let spec = match coeffs {
        Coeffs::Trivial => YSpec::Trivial,
        Coeffs::Principal => YSpec::Principal,
    };
    let mut out = String::new();
    if y {
        for ((a, u), v) in evolve_y(&alpha, &rr, &spec, 0, steps + 1)? {
            if u <= steps {
                out += &format!("{}\t{u}\t{v}\n", a + 1);
            }
        }
    } else {
        let traj = evolve_t(&alpha, &rr, &spec, 0, steps)?;
        for &(a, u) in traj.values.keys() {
            let s = traj.to_string_at(a, u).expect("stored");
            out += &format!("{}\t{u}\t{s}\n", a + 1);
        }
    }
    Ok(out)
}

fn tropical(file: &Path, c: usize, window: (i64, i64), tilde: bool) -> Result<String> {
    let (alpha, _) = load(file)?;
    if c == 0 || c > alpha.size() {
        bail!("--c must lie in 1..={}", alpha.size());
    }
    let table = tropical_t(&alpha, c - 1, window.0, window.1, tilde);
    let mut out = String::new();
    for u in window.0..=window.1 {
        for a in 0..alpha.size() {
            if let Some(v) = table.get(a, u) {
                out += &format!("{}\t{u}\t{v}\n", a + 1);
            }
        }
    }
    Ok(out)
}

fn finite(file: &Path, bound: Option<i64>) -> Result<String> {
    let (alpha, rr) = load_with_residues(file)?;
    let cert = simultaneous_positivity(&alpha);
    let mut out = if cert.is_feasible() {
        format!(
            "simultaneous positivity: FEASIBLE (v = {})\n",
            tuple(cert.vector().unwrap_or(&[]))
        )
    } else {
        format!(
            "simultaneous positivity: INFEASIBLE (Å₊ = {})\n",
            matrix(&a_ring(&alpha, Sign::Plus))
        )
    };
    out += &format!("Å₋ = {}\n", matrix(&a_ring(&alpha, Sign::Minus)));
    out += &format!("certificate: {cert}\n");
    let cartan = is_cartan_like(&alpha);
    out += &format!("Cartan-like: {}\n", yes(cartan));
    if let Ok(k) = compute_k(&alpha) {
        out += &format!("K = {}\n", matrix(&k.k));
        out += &format!(
            "KD symmetric: {}, positive definite: {}\n",
            yes(k.kd_symmetric),
            yes(k.kd_positive_definite)
        );
        out += &format!(
            "K∨D∨ symmetric: {}, positive definite: {}\n",
            yes(k.kd_dual_symmetric),
            yes(k.kd_dual_positive_definite)
        );
    } else {
        out += "K: Å₊ is singular\n";
    }
    let bound = bound.unwrap_or_else(|| default_bound(&alpha));
    out += &format!("period: {}\n", detect_period(&alpha, &rr, bound)?);
    Ok(out)
}

fn dilog(file: &Path) -> Result<String> {
    let (alpha, _) = load(file)?;
    let (sol, c) = dilog_invariant(&alpha, DEFAULT_TOLERANCE)?;
    let f: Vec<String> = sol.f.iter().map(|x| format!("{x:.9}")).collect();
    let mut out = format!("f = ({})\n", f.join(", "));
    out += &format!(
        "residual = {:.3e}, iterations = {}\n",
        sol.residual, sol.iterations
    );
    out += &match c.c_rational {
        Some((n, 1)) => format!("c_α = {:.9} ≈ {n}\n", c.c_float),
        Some((n, d)) => format!("c_α = {:.9} ≈ {n}/{d}\n", c.c_float),
        None => format!(
            "c_α = {:.9} (no rational with denominator ≤ 10000)\n",
            c.c_float
        ),
    };
    Ok(out)
}

/// The size-1 family a datum belongs to, read off `Å₊` and `Å₋`.
fn family_of(alpha: &TDatum) -> Option<Family> {
    if alpha.size() != 1 || !is_cartan_like(alpha) {
        return None;
    }
    let v = |s| a_ring(alpha, s).get(0, 0).to_string();
    match (v(Sign::Plus).as_str(), v(Sign::Minus).as_str()) {
        ("2", "2") => Some(Family::Alpha1),
        ("1", "2") => Some(Family::Alpha2),
        ("2", "1") => Some(Family::Alpha3),
        _ => None,
    }
}

fn qseries(file: &Path, order: u64, sector: Option<usize>, check: Option<Check>) -> Result<String> {
    let (alpha, _) = load(file)?;
    match check {
        Some(Check::Eta) => {
            let family = family_of(&alpha).ok_or_else(|| {
                anyhow!("the eta check applies to the three size-1 families only")
            })?;
            let checks = eta_theta_check(family, alpha.d()[0], order)?;
            let mut out = String::new();
            for c in &checks {
                match c.first_mismatch {
                    None => out += &format!("sector {}: PASS to order {order}\n", c.sector),
                    Some((k, m)) => out += &format!("sector {}: FAIL at q^{k}/{m}\n", c.sector),
                }
            }
            if checks.iter().any(|c| !c.pass) {
                bail!("{out}eta/theta identity failed");
            }
            return Ok(out);
        }
        Some(Check::Product) => {
            let r = alpha.size();
            let g = sector_group(&alpha)?;
            let target = tsys::tdatum::catalog::tadpole_swapped(r);
            let same = g.order == 1
                && compute_k(&alpha)?.kd_dual == compute_k(&target)?.kd_dual
                && alpha.langlands_dual().d() == target.langlands_dual().d();
            if !same {
                bail!("the product check applies to the tadpole datum with Å₊ = T_r only");
            }
            let (_, series) = partition_series_all(&alpha, order)?;
            return match series[0].first_difference(&product_side(r as u64, order)) {
                None => Ok(format!(
                    "product side mod {}: PASS to order {order}\n",
                    2 * r + 3
                )),
                Some((k, m)) => bail!("product side mod {}: FAIL at q^{k}/{m}", 2 * r + 3),
            };
        }
        None => {}
    }
    let (g, series) = partition_series_all(&alpha, order)?;
    let pick = |s: &QExpansion| s.reduced().to_string();
    match sector {
        Some(k) if k >= series.len() => {
            bail!("sector {k} out of range for a group of order {}", g.order)
        }
        Some(k) => Ok(pick(&series[k])),
        None => {
            let mut out = format!("# S_α ≅ {}, {} sector(s)\n", g.isomorphism_type(), g.order);
            for (k, s) in series.iter().enumerate() {
                out += &format!("# sector {k}\n{}", pick(s));
            }
            Ok(out)
        }
    }
}

fn build(kind: &BuildKind) -> Result<String> {
    let (alpha, rr) = match kind {
        BuildKind::Size1 { coeffs, d } => (build_size1(coeffs, *d)?, None),
        BuildKind::CartanPair { a, a2, d } => {
            let a = parse_matrix(a)?;
            let a2 = parse_matrix(a2)?;
            let d = d.clone().unwrap_or_else(|| vec![1; a.len()]);
            let alpha = build_cartan_pair(&a, &a2, &d)?;
            let rr = bipartite_residues(&alpha);
            (alpha, rr)
        }
        BuildKind::Tensor { x, y } => {
            let alpha = tensor(x, y)?;
            let rr = bipartite_residues(&alpha);
            (alpha, rr)
        }
        BuildKind::Tadpole { r } => (tadpole(*r)?, None),
        BuildKind::Affinization { kind, level } => (affinization(kind, *level)?.0, None),
    };
    let mut s = TDatumJson::from_datum(&alpha, rr.as_ref()).to_json_string();
    s.push('\n');
    Ok(s)
}

fn run(cli: Cli) -> Result<()> {
    let text = match &cli.command {
        Command::Validate { file } => validate(file)?,
        Command::Dual { file, output } => {
            let (alpha, _) = load(file)?;
            let mut s = TDatumJson::from_datum(&alpha.langlands_dual(), None).to_json_string();
            s.push('\n');
            return emit(&s, output.as_deref());
        }
        Command::Loop { file, dot } => run_loop(file, dot.as_deref())?,
        Command::Evolve {
            file,
            steps,
            coeffs,
            y,
        } => evolve(file, *steps, *coeffs, *y)?,
        Command::Tropical {
            file,
            c,
            window,
            tilde,
        } => tropical(file, *c, *window, *tilde)?,
        Command::Finite { file, bound } => finite(file, *bound)?,
        Command::Dilog { file } => dilog(file)?,
        Command::Qseries {
            file,
            order,
            sector,
            check,
        } => qseries(file, *order, *sector, *check)?,
        Command::Build { kind, output } => return emit(&build(kind)?, output.as_deref()),
    };
    emit(&text, None)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
