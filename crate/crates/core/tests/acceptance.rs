//! End-to-end acceptance checks, one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use tsys::analytic::{dilog_invariant, DEFAULT_TOLERANCE};
use tsys::cluster::{verify_loop, ClusterPoly, ExchangeMatrix, MutationLoop};
use tsys::correspondence::{
    build_loop, check_staged, round_trip_fg, round_trip_gf, verify_duality,
};
use tsys::dynamics::{check_tropical_lemma, detect_period, evolve_t, evolve_y, YSpec};
use tsys::laurent::LaurentPoly;
use tsys::positivity::{compute_k, is_cartan_like, simultaneous_positivity};
use tsys::qseries::{
    andrews_gordon_check, asymptotic_ratio, eta_theta_check, family_datum, sector_group, Family,
};
use tsys::semifield::TropicalElement;
use tsys::tdatum::builders::build_size1;
use tsys::tdatum::catalog::{self, Entry};
use tsys::tdatum::{ConsistentSubset, TDatum};

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn somos_loop() -> MutationLoop {
    let b = vec![
        vec![0, -1, 2, -1],
        vec![1, 0, -3, 2],
        vec![-2, 3, 0, -1],
        vec![1, -2, 1, 0],
    ];
    let labels = (0..4).map(|p| (0, p)).collect();
    MutationLoop::new(
        ExchangeMatrix::new(b, vec![1; 4], labels).unwrap(),
        vec![vec![0]],
        vec![1, 2, 3, 0],
    )
}

/// Loops written down by hand, independent of the construction `G`.
fn hand_loops() -> Vec<(&'static str, MutationLoop)> {
    let skew = |rows: Vec<Vec<i64>>| ExchangeMatrix::skew(rows).unwrap();
    vec![
        ("somos4", somos_loop()),
        (
            "A2 belt",
            MutationLoop::new(
                skew(vec![vec![0, -1], vec![1, 0]]),
                vec![vec![0], vec![1]],
                vec![0, 1],
            ),
        ),
        (
            "A3 belt",
            MutationLoop::new(
                skew(vec![vec![0, 1, 0], vec![-1, 0, -1], vec![0, 1, 0]]),
                vec![vec![0, 2], vec![1]],
                vec![0, 1, 2],
            ),
        ),
        (
            "B2 belt",
            MutationLoop::new(
                ExchangeMatrix::new(
                    vec![vec![0, 1], vec![-2, 0]],
                    vec![1, 2],
                    vec![(0, 0), (1, 0)],
                )
                .unwrap(),
                vec![vec![0], vec![1]],
                vec![0, 1],
            ),
        ),
        (
            "Kronecker",
            MutationLoop::new(
                skew(vec![vec![0, 2], vec![-2, 0]]),
                vec![vec![0]],
                vec![1, 0],
            ),
        ),
        (
            "two isolated vertices",
            MutationLoop::new(
                skew(vec![vec![0, 0], vec![0, 0]]),
                vec![vec![0]],
                vec![1, 0],
            ),
        ),
        (
            "one vertex",
            MutationLoop::new(skew(vec![vec![0]]), vec![vec![0]], vec![0]),
        ),
    ]
}

fn somos_quiver() -> Outcome {
    let gamma =
        build_loop(&catalog::somos4(), &ConsistentSubset::whole(1)).map_err(|e| e.to_string())?;
    let want = somos_loop();
    ensure(gamma.b == want.b, || format!("B = {:?}", gamma.b.rows()))?;
    let i = gamma.b.index_of(&(0, 2)).ok_or("label (1,2) missing")?;
    let j = gamma.b.index_of(&(0, 1)).ok_or("label (1,1) missing")?;
    ensure(gamma.b.get(i, j) == 3, || {
        format!("B_(1,2)(1,1) = {}", gamma.b.get(i, j))
    })?;
    ensure(gamma.nu == vec![1, 2, 3, 0], || {
        format!("ν = {:?}", gamma.nu)
    })?;
    ensure(gamma.blocks == want.blocks, || {
        format!("blocks {:?}", gamma.blocks)
    })?;
    verify_loop(&gamma).map_err(|e| e.to_string())?;
    Ok("B_(1,2)(1,1) = 3, ν = (1 2 3 4)".into())
}

fn t(s: &str) -> TropicalElement {
    s.parse().unwrap()
}

fn fraction(terms: &[(Vec<i32>, &str)], over: &TropicalElement) -> ClusterPoly {
    let mut acc = ClusterPoly::zero(terms[0].0.len());
    for (e, c) in terms {
        acc = acc.add(&ClusterPoly::x_monomial(e.clone(), &(&t(c) / over)));
    }
    acc
}

fn a2_belt_table() -> Outcome {
    let alpha = catalog::a2_belt();
    let rr = catalog::a2_belt_residues();
    let (y1, y2, one) = (t("y1"), t("y2"), TropicalElement::one());
    let ys = evolve_y(&alpha, &rr, &YSpec::Principal, 0, 7).map_err(|e| e.to_string())?;
    let y_table = [
        ((0, 0), y1.clone()),
        ((1, 1), &y1.one_plus() * &y2),
        ((0, 2), &one.oplus(&y2).oplus(&(&y1 * &y2)) / &y1),
        ((1, 3), &y2.one_plus() / &(&y1 * &y2)),
        ((0, 4), y2.inv()),
        ((1, 5), y1.clone()),
        ((0, 6), &y1.one_plus() * &y2),
    ];
    for (l, want) in &y_table {
        ensure(ys.get(l) == Some(want), || {
            format!(
                "Y at {l:?}: {:?} vs {want}",
                ys.get(l).map(|y| y.to_string())
            )
        })?;
    }
    let traj = evolve_t(&alpha, &rr, &YSpec::Principal, 0, 6).map_err(|e| e.to_string())?;
    let t_table = [
        ((0, 0), fraction(&[(vec![1, 0], "1")], &one)),
        ((1, 1), fraction(&[(vec![0, 1], "1")], &one)),
        (
            (0, 2),
            fraction(&[(vec![-1, 1], "y1"), (vec![-1, 0], "1")], &y1.one_plus()),
        ),
        (
            (1, 3),
            fraction(
                &[
                    (vec![-1, 0], "y1*y2"),
                    (vec![0, -1], "1"),
                    (vec![-1, -1], "y2"),
                ],
                &one.oplus(&y2).oplus(&(&y1 * &y2)),
            ),
        ),
        (
            (0, 4),
            fraction(&[(vec![1, -1], "1"), (vec![0, -1], "y2")], &y2.one_plus()),
        ),
        ((1, 5), fraction(&[(vec![1, 0], "1")], &one)),
        ((0, 6), fraction(&[(vec![0, 1], "1")], &one)),
    ];
    let names = traj.names();
    for (l, want) in &t_table {
        let got = traj.get(l.0, l.1).ok_or(format!("T at {l:?} missing"))?;
        ensure(got == want, || {
            format!(
                "T at {l:?}: {} vs {}",
                got.to_fraction_string(&names),
                want.to_fraction_string(&names)
            )
        })?;
    }
    Ok(format!(
        "{} Y and {} T entries",
        y_table.len(),
        t_table.len()
    ))
}

fn bijection() -> Outcome {
    let entries = catalog::entries();
    ensure(entries.len() >= 30, || {
        format!("only {} data", entries.len())
    })?;
    let sizes: Vec<usize> = entries.iter().map(|e| e.alpha.size()).collect();
    ensure(sizes.contains(&1) && sizes.contains(&17), || {
        format!("sizes {sizes:?}")
    })?;
    ensure(
        entries.iter().any(|e| e.name == "affinization F4 level 2"),
        || "F4 level 2 missing".into(),
    )?;
    for e in &entries {
        let ok = round_trip_fg(&e.alpha, &e.r).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(ok, || format!("F∘G ≠ id on {}", e.name))?;
    }
    let hand = hand_loops();
    for (name, gamma) in &hand {
        verify_loop(gamma).map_err(|err| format!("{name}: {err}"))?;
        round_trip_gf(gamma)
            .map_err(|err| format!("{name}: {err}"))?
            .map_err(|err| format!("G∘F ≠ id on {name}: {err}"))?;
    }
    Ok(format!(
        "F∘G on {} data (sizes 1–17), G∘F on {} loops",
        entries.len(),
        hand.len()
    ))
}

fn duality() -> Outcome {
    let mut loops: Vec<(String, MutationLoop)> = Vec::new();
    for e in catalog::entries() {
        let gamma = build_loop(&e.alpha, &e.r).map_err(|err| format!("{}: {err}", e.name))?;
        loops.push((e.name, gamma));
    }
    loops.extend(hand_loops().into_iter().map(|(n, g)| (n.to_string(), g)));
    for (name, gamma) in &loops {
        let bad = verify_duality(gamma).map_err(|err| format!("{name}: {err}"))?;
        ensure(bad.is_empty(), || format!("{name}: {}", bad[0]))?;
    }
    Ok(format!("{} loops", loops.len()))
}

fn binomial(p: i64) -> LaurentPoly {
    LaurentPoly::one() + LaurentPoly::z_pow(p)
}

/// Index of the finite family containing a size-1 datum: `(1+zᵖ, 1+zᵖ)`, then the two
/// pairs with one entry `1 − z^{p/2} + zᵖ`.
fn size1_family(alpha: &TDatum) -> Option<usize> {
    let ap = alpha.a_plus().get(0, 0).clone();
    let am = alpha.a_minus().get(0, 0).clone();
    let p = alpha.p()[0];
    let plain = binomial(p);
    if ap == plain && am == plain {
        return Some(0);
    }
    if p % 2 != 0 {
        return None;
    }
    let dented = &plain - &LaurentPoly::z_pow(p / 2);
    if ap == dented && am == plain {
        Some(1)
    } else if ap == plain && am == dented {
        Some(2)
    } else {
        None
    }
}

fn size1_scan() -> Vec<TDatum> {
    let mut out = Vec::new();
    for p in 1..=6usize {
        let inner = p - 1;
        let half = inner.div_ceil(2);
        for code in 0..5usize.pow(half as u32) {
            let mut coeffs = vec![0i64; inner];
            let mut c = code;
            for k in 0..half {
                let v = (c % 5) as i64 - 2;
                c /= 5;
                coeffs[k] = v;
                coeffs[inner - 1 - k] = v;
            }
            out.push(build_size1(&coeffs, 1).expect("palindromic"));
        }
    }
    out
}

fn size1_classification() -> Outcome {
    let scan = size1_scan();
    let mut hits = [0usize; 3];
    for alpha in &scan {
        let family = size1_family(alpha);
        if let Some(f) = family {
            hits[f] += 1;
        }
        let feasible = simultaneous_positivity(alpha).is_feasible();
        ensure(feasible == family.is_some(), || {
            format!("A₊ = {}: feasible = {feasible}", alpha.a_plus())
        })?;
        let report =
            detect_period(alpha, &ConsistentSubset::whole(1), 200).map_err(|e| e.to_string())?;
        ensure(report.periodic == family.is_some(), || {
            format!("A₊ = {}: {report}", alpha.a_plus())
        })?;
    }
    ensure(hits.iter().all(|&h| h > 0), || {
        format!("family hits {hits:?}")
    })?;
    Ok(format!("{} data, family sizes {hits:?}", scan.len()))
}

fn somos_integers() -> Outcome {
    let traj = evolve_t(
        &catalog::somos4(),
        &ConsistentSubset::whole(1),
        &YSpec::Trivial,
        0,
        11,
    )
    .map_err(|e| e.to_string())?;
    let mut oracle = vec![BigInt::from(1); 4];
    for n in 4..12 {
        let next =
            (&oracle[n - 1] * &oracle[n - 3] + &oracle[n - 2] * &oracle[n - 2]) / &oracle[n - 4];
        oracle.push(next);
    }
    let mut got = Vec::new();
    for k in 4..12 {
        let v = traj
            .get(0, k)
            .and_then(|x| x.integer_value())
            .ok_or(format!("T(1,{k}) is not an integer"))?;
        got.push(v);
    }
    let literal: Vec<BigInt> = [2, 3, 7, 23, 59, 314, 1529, 8209]
        .into_iter()
        .map(BigInt::from)
        .collect();
    ensure(got == literal && got[..] == oracle[4..], || {
        format!("{got:?}")
    })?;
    Ok("2, 3, 7, 23, 59, 314, 1529, 8209".into())
}

fn check_c(alpha: &TDatum, n: i64, d: i64, what: &str) -> Result<(), String> {
    let (_, c) = dilog_invariant(alpha, DEFAULT_TOLERANCE).map_err(|e| format!("{what}: {e}"))?;
    let exact = n as f64 / d as f64;
    ensure((c.c_float - exact).abs() < 1e-9, || {
        format!("{what}: {} vs {n}/{d}", c.c_float)
    })?;
    ensure(c.c_rational == Some((n, d)), || {
        format!("{what}: recognised {:?}, expected {n}/{d}", c.c_rational)
    })
}

fn dilog_values() -> Outcome {
    let size2: Vec<(i64, i64)> = vec![(4, 5), (1, 1), (5, 7), (3, 4), (4, 7)];
    let table2 = catalog::size2_table();
    ensure(table2.len() == size2.len(), || "size-2 table length".into())?;
    for (i, ((alpha, _, c), want)) in table2.iter().zip(&size2).enumerate() {
        ensure(c == want, || format!("size-2 row {} lists {c:?}", i + 1))?;
        check_c(alpha, want.0, want.1, &format!("size-2 row {}", i + 1))?;
    }
    let table3 = catalog::size3_table();
    ensure(table3.len() == 7, || "size-3 table length".into())?;
    for (i, (alpha, _, (n, d))) in table3.iter().enumerate() {
        check_c(alpha, *n, *d, &format!("size-3 row {}", i + 1))?;
    }
    for r in 1..=4i64 {
        let g = num_integer::gcd(2 * r, 2 * r + 3);
        check_c(
            &catalog::tadpole_swapped(r as usize),
            2 * r / g,
            (2 * r + 3) / g,
            &format!("tadpole T{r}"),
        )?;
    }
    Ok("5 size-2 rows, 7 size-3 rows, tadpoles r = 1..4".into())
}

fn finite_entries() -> Vec<Entry> {
    catalog::entries()
        .into_iter()
        .filter(|e| e.finite)
        .collect()
}

fn positive_definite() -> Outcome {
    let (mut checked, mut skipped) = (0, Vec::new());
    for e in finite_entries() {
        if !is_cartan_like(&e.alpha) {
            skipped.push(e.name);
            continue;
        }
        let km = compute_k(&e.alpha).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(km.kd.is_symmetric(), || {
            format!("{}: KD not symmetric", e.name)
        })?;
        let minors = km.kd.leading_minors();
        ensure(minors.iter().all(|m| m.is_positive()), || {
            format!("{}: leading minors {minors:?}", e.name)
        })?;
        ensure(km.kd_symmetric && km.kd_positive_definite, || {
            format!("{}: flags disagree with Sylvester", e.name)
        })?;
        checked += 1;
    }
    ensure(checked > 20, || format!("only {checked} data"))?;
    Ok(format!(
        "{checked} Cartan-like data; K undefined for {}",
        if skipped.is_empty() {
            "none".to_string()
        } else {
            skipped.join(", ")
        }
    ))
}

fn sector_groups() -> Outcome {
    let mut checked = 0;
    for e in finite_entries()
        .into_iter()
        .filter(|e| is_cartan_like(&e.alpha))
    {
        let g = sector_group(&e.alpha).map_err(|err| format!("{}: {err}", e.name))?;
        let det = e
            .alpha
            .a_plus()
            .eval_at_one()
            .det()
            .map_err(|err| format!("{}: {err}", e.name))?;
        ensure(
            det == BigRational::from_integer(BigInt::from(g.order)),
            || format!("{}: |S| = {}, det Å₊ = {det}", e.name, g.order),
        )?;
        checked += 1;
    }
    let types: Vec<String> = Family::ALL
        .iter()
        .map(|&f| {
            sector_group(&family_datum(f, 1, 1))
                .map(|g| g.isomorphism_type())
                .unwrap_or_else(|e| e.to_string())
        })
        .collect();
    ensure(types == ["ℤ/2ℤ", "0", "ℤ/2ℤ"], || {
        format!("types {types:?}")
    })?;
    Ok(format!("{checked} data; α₁, α₂, α₃ ↦ {}", types.join(", ")))
}

fn theta_identities() -> Outcome {
    for f in Family::ALL {
        for d in [1, 2] {
            let checks = eta_theta_check(f, d, 100).map_err(|e| e.to_string())?;
            if let Some(c) = checks.iter().find(|c| !c.pass) {
                return Err(format!(
                    "{f:?} d={d} sector {}: first mismatch {:?}",
                    c.sector, c.first_mismatch
                ));
            }
        }
    }
    Ok("α₁, α₂, α₃ with d = 1, 2 to order 100".into())
}

fn andrews_gordon() -> Outcome {
    for (r, order) in [(1, 60), (2, 60), (3, 40), (4, 40)] {
        let ok = andrews_gordon_check(r, order).map_err(|e| e.to_string())?;
        ensure(ok, || format!("T{r} differs below order {order}"))?;
    }
    Ok("r = 1, 2 to order 60; r = 3, 4 to order 40".into())
}

fn tropical_lemma() -> Outcome {
    let entries = catalog::entries();
    for e in &entries {
        check_tropical_lemma(&e.alpha).map_err(|err| format!("{}: {err}", e.name))?;
    }
    Ok(format!("{} data", entries.len()))
}

fn staged() -> Outcome {
    let entries = catalog::entries();
    for e in &entries {
        check_staged(&e.alpha, &e.r).map_err(|bad| format!("{}: {}", e.name, bad[0]))?;
    }
    Ok(format!("{} data", entries.len()))
}

fn asymptotics() -> Outcome {
    let mut out = Vec::new();
    for f in Family::ALL {
        let (lhs, rhs) =
            asymptotic_ratio(&family_datum(f, 1, 1), 0.05, 2000).map_err(|e| e.to_string())?;
        ensure(!rhs.is_zero() && (lhs - rhs).abs() < 0.1 * rhs, || {
            format!("{f:?}: {lhs} vs {rhs}")
        })?;
        out.push(format!("{:.1}%", 100.0 * (lhs - rhs).abs() / rhs));
    }
    Ok(format!("relative deviations {}", out.join(", ")))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            name: "Somos-4 exchange matrix",
            limit: secs(1),
            run: somos_quiver,
        },
        Criterion {
            name: "A2 bipartite belt table",
            limit: secs(1),
            run: a2_belt_table,
        },
        Criterion {
            name: "bijection round trip",
            limit: secs(30),
            run: bijection,
        },
        Criterion {
            name: "duality identities",
            limit: None,
            run: duality,
        },
        Criterion {
            name: "size-1 finite-type classification",
            limit: secs(60),
            run: size1_classification,
        },
        Criterion {
            name: "Somos-4 integrality",
            limit: secs(1),
            run: somos_integers,
        },
        Criterion {
            name: "dilogarithm invariants",
            limit: secs(5),
            run: dilog_values,
        },
        Criterion {
            name: "positive definiteness",
            limit: None,
            run: positive_definite,
        },
        Criterion {
            name: "sector groups",
            limit: None,
            run: sector_groups,
        },
        Criterion {
            name: "r = 1 modularity identities",
            limit: secs(10),
            run: theta_identities,
        },
        Criterion {
            name: "Andrews–Gordon",
            limit: secs(30),
            run: andrews_gordon,
        },
        Criterion {
            name: "tropical lemma",
            limit: None,
            run: tropical_lemma,
        },
        Criterion {
            name: "staged construction",
            limit: None,
            run: staged,
        },
        Criterion {
            name: "asymptotic sanity",
            limit: None,
            run: asymptotics,
        },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome =
            std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {}: {detail} [{secs:.2} s]", i + 1, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {}: {why} [{secs:.2} s]", i + 1, c.name);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
