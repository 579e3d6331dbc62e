use super::*;
use crate::semifield::GroupRingElement;
use crate::tdatum::catalog;

fn u(s: &str) -> TropicalElement {
    s.parse().unwrap()
}

/// `Π x^e · c / s` with `s` a semifield element.
fn laurent(exps: &[(Vec<i32>, &str)], over: &TropicalElement) -> ClusterPoly {
    let n = exps[0].0.len();
    let mut acc = ClusterPoly::zero(n);
    for (e, c) in exps {
        acc = acc.add(&ClusterPoly::x_monomial(e.clone(), &(&u(c) / over)));
    }
    acc
}

#[test]
fn a2_belt_principal_table() {
    let alpha = catalog::a2_belt();
    let rr = catalog::a2_belt_residues();
    let (y1, y2) = (u("y1"), u("y2"));
    let one = TropicalElement::one();
    let ys = evolve_y(&alpha, &rr, &YSpec::Principal, 0, 7).unwrap();
    let y_expected = [
        ((0, 0), y1.clone()),
        ((1, 1), &y1.one_plus() * &y2),
        ((0, 2), &one.oplus(&y2).oplus(&(&y1 * &y2)) / &y1),
        ((1, 3), &y2.one_plus() / &(&y1 * &y2)),
        ((0, 4), y2.inv()),
        ((1, 5), y1.clone()),
        ((0, 6), &y1.one_plus() * &y2),
    ];
    for (l, want) in &y_expected {
        assert_eq!(&ys[l], want, "Y at {l:?}");
    }
    assert!(check_y_system(&alpha, &ys).is_empty());

    let traj = evolve_t(&alpha, &rr, &YSpec::Principal, 0, 6).unwrap();
    let t_expected = [
        ((0, 0), laurent(&[(vec![1, 0], "1")], &one)),
        ((1, 1), laurent(&[(vec![0, 1], "1")], &one)),
        (
            (0, 2),
            laurent(&[(vec![-1, 1], "y1"), (vec![-1, 0], "1")], &y1.one_plus()),
        ),
        (
            (1, 3),
            laurent(
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
            laurent(&[(vec![1, -1], "1"), (vec![0, -1], "y2")], &y2.one_plus()),
        ),
        ((1, 5), laurent(&[(vec![1, 0], "1")], &one)),
        ((0, 6), laurent(&[(vec![0, 1], "1")], &one)),
    ];
    for (l, want) in &t_expected {
        assert_eq!(traj.values.get(l), Some(want), "T at {l:?}");
    }
    assert_eq!(
        traj.to_string_at(1, 3).unwrap(),
        "(x1 + y1*y2*x2 + y2)/(x1*x2)"
    );
    assert_eq!(
        evolve_t_seed(&alpha, &rr, &YSpec::Principal, 0, 6).unwrap(),
        traj.values
    );
}

#[test]
fn a2_belt_y_seed_from_solution() {
    let alpha = catalog::a2_belt();
    let rr = catalog::a2_belt_residues();
    let y = y_seed_from_solution(&alpha, &rr, &[u("y1"), &u("y1").one_plus() * &u("y2")]).unwrap();
    assert_eq!(y, vec![u("y1"), u("y2")]);
}

fn somos_integers(steps: usize) -> Vec<i64> {
    let mut s = vec![1i64; 4];
    while s.len() < steps {
        let n = s.len();
        s.push((s[n - 1] * s[n - 3] + s[n - 2] * s[n - 2]) / s[n - 4]);
    }
    s
}

#[test]
fn somos4_trivial_values() {
    let traj = evolve_t(
        &catalog::somos4(),
        &ConsistentSubset::whole(1),
        &YSpec::Trivial,
        0,
        9,
    )
    .unwrap();
    let got: Vec<i64> = (0..10)
        .map(|k| i64::try_from(traj.get(0, k).unwrap().integer_value().unwrap()).unwrap())
        .collect();
    assert_eq!(got, somos_integers(10));
    assert_eq!(got, vec![1, 1, 1, 1, 2, 3, 7, 23, 59, 314]);
}

#[test]
fn somos4_constant_coefficients() {
    let alpha = catalog::somos4();
    let rr = ConsistentSubset::whole(1);
    let yc = u("c1*c2^-1");
    let spec = YSpec::Solution(vec![yc.clone(); 4]);
    let ys = evolve_y(&alpha, &rr, &spec, -3, 12).unwrap();
    assert!(ys.values().all(|y| *y == yc));
    let traj = evolve_t(&alpha, &rr, &spec, -2, 10).unwrap();
    let t = |k: i64| traj.get(0, k).unwrap().clone();
    let c = |s: &str| ClusterPoly::constant(4, GroupRingElement::from_semifield(&u(s)));
    for k in -2..=6 {
        let lhs = t(k).mul(&t(k + 4));
        let rhs = c("c1")
            .mul(&t(k + 1))
            .mul(&t(k + 3))
            .add(&c("c2").mul(&t(k + 2).pow(2)));
        assert_eq!(lhs, rhs, "relation at {k}");
    }
}

#[test]
fn trivial_semifield_keeps_y_one() {
    let e = &catalog::entries()[20];
    let ys = evolve_y(&e.alpha, &e.r, &YSpec::Trivial, -5, 10).unwrap();
    assert!(!ys.is_empty() && ys.values().all(|y| y.is_one()));
}

#[test]
fn seed_route_matches_standalone() {
    for e in catalog::entries()
        .iter()
        .filter(|e| e.alpha.size() <= 4 && (e.finite || e.name == "somos4"))
    {
        let span = e.alpha.max_p() + 2;
        let a = evolve_t(&e.alpha, &e.r, &YSpec::Principal, -span, span).unwrap();
        let b = evolve_t_seed(&e.alpha, &e.r, &YSpec::Principal, -span, span).unwrap();
        assert_eq!(a.values, b, "{}", e.name);
        let ys = evolve_y(&e.alpha, &e.r, &YSpec::Principal, -span, span).unwrap();
        assert!(check_y_system(&e.alpha, &ys).is_empty(), "{}", e.name);
    }
}

#[test]
fn forward_then_backward_restores_seed() {
    for e in catalog::entries().iter().filter(|e| e.alpha.size() <= 3) {
        let mut ev = SeedEvolution::new(&e.alpha, &e.r, &YSpec::Principal, true).unwrap();
        let start = ev.seed().clone();
        let labels = ev.carried().to_vec();
        for _ in 0..5 {
            ev.step_forward().unwrap();
        }
        for _ in 0..5 {
            ev.step_backward().unwrap();
        }
        assert_eq!(ev.seed(), &start, "{}", e.name);
        assert_eq!(ev.carried(), labels.as_slice(), "{}", e.name);
    }
}

#[test]
fn tropical_lemma_on_corpus() {
    for e in catalog::entries() {
        assert_eq!(check_tropical_lemma(&e.alpha), Ok(()), "{}", e.name);
    }
}

#[test]
fn tropical_t_matches_denominators() {
    for e in catalog::entries()
        .iter()
        .filter(|e| e.r.t() == 1 && e.alpha.size() <= 3 && (e.finite || e.name == "somos4"))
    {
        let span = e.alpha.max_p() + 2;
        let traj = evolve_t(&e.alpha, &e.r, &YSpec::Principal, -span, span).unwrap();
        for c in 0..e.alpha.size() {
            let idx = traj.initial.iter().position(|&l| l == (c, 0)).unwrap();
            let low = tropical_t(&e.alpha, c, -span, span, false);
            let high = tropical_t(&e.alpha, c, -span, span, true);
            for (&(a, w), x) in &traj.values {
                assert_eq!(
                    low.get(a, w),
                    Some(-i64::from(x.min_exponent(idx).unwrap())),
                    "{} {c} {a} {w}",
                    e.name
                );
                assert_eq!(
                    high.get(a, w),
                    Some(i64::from(x.max_exponent(idx).unwrap())),
                    "{} {c} {a} {w}",
                    e.name
                );
            }
        }
    }
}

#[test]
fn y_hat_is_tropical_ratio() {
    for e in catalog::entries()
        .iter()
        .filter(|e| e.r.t() == 1 && e.alpha.size() <= 3 && e.finite)
    {
        let alpha = &e.alpha;
        let span = alpha.max_p() + 2;
        let traj = evolve_t(alpha, &e.r, &YSpec::Trivial, -span, span).unwrap();
        for c in 0..alpha.size() {
            let idx = traj.initial.iter().position(|&l| l == (c, 0)).unwrap();
            let tab = tropical_t(alpha, c, -span, span, false);
            let low = |terms: &[(usize, i64, i64)], w: i64| -> Option<i64> {
                terms
                    .iter()
                    .map(|&(b, q, k)| {
                        traj.get(b, w + q)
                            .map(|x| k * i64::from(x.min_exponent(idx).unwrap()))
                    })
                    .sum()
            };
            for a in 0..alpha.size() {
                for w in -span..span {
                    let (Some(yh), Some(lm), Some(lp)) = (
                        tab.y_hat(alpha, a, w),
                        low(&column_terms(alpha, Sign::Minus, a), w),
                        low(&column_terms(alpha, Sign::Plus, a), w),
                    ) else {
                        continue;
                    };
                    assert_eq!(yh, lp - lm, "{} c={c} a={a} u={w}", e.name);
                    let n0: i64 = (0..alpha.size())
                        .flat_map(|b| (0..=alpha.p()[b]).map(move |q| (b, q)))
                        .map(|(b, q)| alpha.n0_coeff(b, a, q) * tab.get(b, w + q).unwrap_or(0))
                        .sum();
                    let side = |sign| -> i64 {
                        column_terms(alpha, sign, a)
                            .iter()
                            .map(|&(b, q, k)| k * tab.get(b, w + q).unwrap())
                            .sum()
                    };
                    if tab
                        .get(alpha.sigma()[a], w + alpha.p()[alpha.sigma()[a]])
                        .is_some()
                    {
                        assert_eq!(
                            yh.max(0),
                            n0 - side(Sign::Plus),
                            "{} c={c} a={a} u={w}",
                            e.name
                        );
                        assert_eq!(
                            (-yh).max(0),
                            n0 - side(Sign::Minus),
                            "{} c={c} a={a} u={w}",
                            e.name
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn periods() {
    let belt = detect_period(&catalog::a2_belt(), &catalog::a2_belt_residues(), 100).unwrap();
    assert_eq!(belt.omega, Some(10));
    let quad = detect_period(&catalog::size1(&[0], 1), &ConsistentSubset::whole(1), 100).unwrap();
    assert!(quad.periodic);
    let somos = detect_period(&catalog::somos4(), &ConsistentSubset::whole(1), 100).unwrap();
    assert!(!somos.periodic);
}

#[test]
fn period_is_shared_by_y() {
    let alpha = catalog::a2_belt();
    let rr = catalog::a2_belt_residues();
    let ys = evolve_y(&alpha, &rr, &YSpec::Principal, 0, 30).unwrap();
    for (&(a, w), y) in ys.range((0, 0)..).filter(|(l, _)| l.1 < 20) {
        assert_eq!(&ys[&(a, w + 10)], y);
    }
}
