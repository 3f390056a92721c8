//! Acceptance suite: one test per criterion, each printing a single
//! `[PASS]`/`[FAIL]` line before asserting.

use std::time::{Duration, Instant};

use mixmult::blowdown::{
    dseq_from_semigroup, first_nongap, lambda_multiplicity, mult_bounds, point_bundle, rs_blowdown_multiplicity,
    vol_control_check, BasePointDatum, BoundsInput, LineBundleDatum, Semigroup,
};
use mixmult::chern::{top_segre_integral, GradedClass, IntersectionTable};
use mixmult::curve::{curve_lelong_number, verify_curve, CurveGerm, WeightTuple};
use mixmult::monomial_ideal::MonomialIdeal;
use mixmult::multiplicity::difference::{ensure_self_test, verify_difference_identity};
use mixmult::multiplicity::{BackendChoice, EngineConfig, MultiplicityEngine};
use mixmult::{Ideal, Poly, Rational, Variables};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: u32, title: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id:>2}: {title} ({detail})");
    assert!(pass, "criterion {id} failed: {detail}");
}

fn engine(backend: BackendChoice) -> MultiplicityEngine {
    MultiplicityEngine::new(EngineConfig { backend, ..EngineConfig::default() })
}

fn xy() -> Variables {
    Variables::new(&["x", "y"]).unwrap()
}

fn ideal(gens: &[&str]) -> Ideal {
    Ideal::parse(&["x", "y"], gens).unwrap()
}

/// Origin-primary monomial ideal with pure powers below `max` and a few interior points.
fn random_monomial(rng: &mut ChaCha8Rng, max: u32, interior: usize) -> MonomialIdeal {
    let a = rng.gen_range(1..=max);
    let b = rng.gen_range(1..=max);
    let mut pts = vec![vec![a, 0], vec![0, b]];
    for _ in 0..rng.gen_range(0..=interior) {
        let p = vec![rng.gen_range(0..a), rng.gen_range(0..b)];
        if p != [0, 0] {
            pts.push(p);
        }
    }
    MonomialIdeal::new(2, pts).unwrap()
}

fn canonical(g: u64) -> LineBundleDatum {
    LineBundleDatum { k0: 1, degree: 2 * g - 2, base_points: vec![] }
}

fn sphere() -> LineBundleDatum {
    LineBundleDatum { k0: 1, degree: 2, base_points: vec![] }
}

fn non_weierstrass(g: u32) -> LineBundleDatum {
    let mut d: Vec<u32> = (1..=g).collect();
    d.push(0);
    LineBundleDatum { k0: 1, degree: 1, base_points: vec![BasePointDatum::new(g + 1, d)] }
}

#[test]
fn criterion_01_complete_intersections() {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for backend in [BackendChoice::General, BackendChoice::Monomial] {
        let e = engine(backend);
        for a in 1..=6 {
            for b in 1..=6 {
                let start = Instant::now();
                let u = ideal(&[&format!("x^{a}"), &format!("y^{b}")]);
                let r = e.hs_multiplicity(&u, None, None);
                let took = start.elapsed();
                slowest = slowest.max(took);
                let ok = matches!(&r, Ok(r) if r.value == (a * b) as u64) && took < Duration::from_secs(1);
                if !ok {
                    failures.push(format!("{backend:?} ({a},{b}): {:?} in {took:?}", r.map(|r| r.value)));
                }
            }
        }
    }
    verdict(
        1,
        "e((x^a, y^b)) = ab, both backends",
        failures.is_empty(),
        &format!("72 cases, slowest {slowest:?}, failures {failures:?}"),
    );
}

#[test]
fn criterion_02_cusp_family() {
    let start = Instant::now();
    let e = MultiplicityEngine::default();
    let m = ideal(&["x", "y"]);
    let mut failures = Vec::new();
    let mut count = 0;
    for a in 2..=7u32 {
        for b in a + 1..=7 {
            if a.gcd(&b) != 1 {
                continue;
            }
            count += 1;
            let germ = CurveGerm::<Rational>::parse(&["x", "y"], 32, &[[format!("t^{a}"), format!("t^{b}")]]).unwrap();
            let j = ideal(&[&format!("y^{a} - x^{b}")]);
            match verify_curve(&germ, &j, &m, &e) {
                Ok(r) if r.equal && r.lelong == a as u64 && r.hs == a as u64 => {}
                other => failures.push(format!("(t^{a}, t^{b}): {:?}", other.map(|r| (r.lelong, r.hs)))),
            }
        }
    }
    let took = start.elapsed();
    verdict(
        2,
        "Lelong number = multiplicity on cusps (t^a, t^b)",
        failures.is_empty() && took < Duration::from_secs(5),
        &format!("{count} germs in {took:?}, failures {failures:?}"),
    );
}

#[test]
fn criterion_03_polarization() {
    let start = Instant::now();
    let e = MultiplicityEngine::default();
    let vars = xy();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = Vec::new();
    for _ in 0..20 {
        let u = random_monomial(&mut rng, 5, 2);
        let v = random_monomial(&mut rng, 5, 2);
        let p = [rng.gen_range(1..=3), rng.gen_range(1..=3)];
        let ideals = [u.to_ideal::<Rational>(&vars).unwrap(), v.to_ideal(&vars).unwrap()];
        match e.polarization_check(&ideals, &p) {
            Ok(r) if r.equal => {}
            other => failures.push(format!(
                "{:?} {:?} p={p:?}: {:?}",
                u.generators(),
                v.generators(),
                other.map(|r| (r.lhs, r.rhs))
            )),
        }
    }
    let took = start.elapsed();
    verdict(
        3,
        "polarization identity on random monomial pairs",
        failures.is_empty() && took < Duration::from_secs(60),
        &format!("20 pairs in {took:?}, failures {failures:?}"),
    );
}

#[test]
fn criterion_04_rees_sharp() {
    let e = MultiplicityEngine::default();
    let vars = xy();
    let worked = e.rees_sharp_check(&ideal(&["x", "y"]), &ideal(&["x^2", "y^3"]), Some(2), None);
    let worked_ok = matches!(&worked, Ok(r) if r.chain == [6, 2, 1] && r.pass);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    for _ in 0..20 {
        let u = random_monomial(&mut rng, 6, 3);
        let v = random_monomial(&mut rng, 6, 3);
        let r = e.rees_sharp_check(&u.to_ideal::<Rational>(&vars).unwrap(), &v.to_ideal(&vars).unwrap(), Some(2), None);
        match r {
            Ok(r) if r.pass => {}
            other => failures.push(format!("{:?} {:?}: {:?}", u.generators(), v.generators(), other.map(|r| r.chain))),
        }
    }
    verdict(
        4,
        "Rees-Sharp log-convexity",
        worked_ok && failures.is_empty(),
        &format!("worked chain {:?}, 20 random pairs, failures {failures:?}", worked.map(|r| r.chain)),
    );
}

#[test]
fn criterion_05_newton_vs_groebner() {
    let start = Instant::now();
    let general = engine(BackendChoice::General);
    let staircase = engine(BackendChoice::Monomial);
    let vars = xy();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    for _ in 0..100 {
        let m = random_monomial(&mut rng, 8, 4);
        let newton = m.newton_multiplicity_2d().unwrap();
        let u = m.to_ideal::<Rational>(&vars).unwrap();
        for e in [&general, &staircase] {
            let hs = e.hs_multiplicity(&u, None, None).map(|r| r.value);
            if hs.as_ref().ok() != Some(&newton) {
                failures.push(format!("{:?} {:?}: newton {newton}, hs {hs:?}", e.config.backend, m.generators()));
            }
        }
    }
    let took = start.elapsed();
    verdict(
        5,
        "Newton polygon multiplicity = finite-difference multiplicity",
        failures.is_empty() && took < Duration::from_secs(120),
        &format!("100 ideals, Gröbner and staircase backends, in {took:?}, failures {failures:?}"),
    );
}

#[test]
fn criterion_06_blowdown_golden_values() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for g in 2..=6 {
        let v = rs_blowdown_multiplicity(&canonical(g)).unwrap().value;
        if v != 2 * g - 2 {
            failures.push(format!("canonical g={g}: {v}"));
        }
    }
    let v = rs_blowdown_multiplicity(&sphere()).unwrap().value;
    if v != 2 {
        failures.push(format!("sphere: {v}"));
    }
    for g in 1..=8 {
        let v = rs_blowdown_multiplicity(&non_weierstrass(g)).unwrap().value;
        if v != g as u64 + 1 {
            failures.push(format!("non-Weierstrass g={g}: {v}"));
        }
    }
    let took = start.elapsed();
    verdict(
        6,
        "blow-down multiplicities 2g-2, 2 and g+1",
        failures.is_empty() && took < Duration::from_secs(1),
        &format!("14 data in {took:?}, failures {failures:?}"),
    );
}

#[test]
fn criterion_07_semigroup_pipeline() {
    let gap_sets: Vec<Vec<u32>> = vec![
        vec![1],
        vec![1, 2],
        vec![1, 2, 3],
        vec![1, 2, 3, 4, 5],
        vec![1, 3],
        vec![1, 3, 5],
        vec![1, 2, 4, 5],
        vec![1, 2, 3, 5, 6, 9],
        vec![1, 2, 4, 7],
        vec![1, 2, 3, 4, 6, 7, 8, 11],
    ];
    let mut failures = Vec::new();
    for gaps in &gap_sets {
        let s = match Semigroup::new(gaps.iter().copied()) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("{gaps:?} rejected: {e}"));
                continue;
            }
        };
        let kappa = first_nongap(&s);
        let datum = dseq_from_semigroup(&s);
        let v = rs_blowdown_multiplicity(&point_bundle(&s)).map(|r| r.value);
        if datum.is_none() || v != Ok(kappa as u64) {
            failures.push(format!("{gaps:?}: first nongap {kappa}, multiplicity {v:?}"));
        }
    }
    verdict(
        7,
        "semigroup pipeline gives the first nongap",
        failures.is_empty(),
        &format!("{} gap sets, failures {failures:?}", gap_sets.len()),
    );
}

/// Every line-bundle datum used by criteria 6 to 9.
fn all_data() -> Vec<LineBundleDatum> {
    let mut out: Vec<LineBundleDatum> = (2..=6).map(canonical).collect();
    out.push(sphere());
    out.extend((1..=8).map(non_weierstrass));
    out.push(LineBundleDatum { k0: 1, degree: 3, base_points: vec![BasePointDatum::new(2, vec![2, 0])] });
    out.push(LineBundleDatum {
        k0: 2,
        degree: 5,
        base_points: vec![BasePointDatum::new(3, vec![1, 0]), BasePointDatum::new(5, vec![1, 2, 3, 0])],
    });
    out.push(LineBundleDatum { k0: 3, degree: 2, base_points: vec![] });
    out
}

#[test]
fn criterion_08_base_point_dichotomy() {
    let mut failures = Vec::new();
    let data = all_data();
    for l in &data {
        let r = rs_blowdown_multiplicity(l).unwrap();
        let lambdas_ok = l.base_points.iter().all(|b| lambda_multiplicity(b, l.k0).unwrap() >= 1);
        let leading = (l.k0 * l.k0) as u64 * l.degree;
        if !lambdas_ok || (r.value == leading) != l.base_points.is_empty() {
            failures.push(format!("{l:?}: {}", r.value));
        }
    }
    verdict(
        8,
        "multiplicity = k0^2 deg iff no base points",
        failures.is_empty(),
        &format!("{} data, failures {failures:?}", data.len()),
    );
}

#[test]
fn criterion_09_bounds() {
    let q = |n: i64| Rational::from_integer(n.into());
    let mut failures = Vec::new();
    for l in all_data().iter().filter(|l| l.base_points.is_empty()) {
        let b = BoundsInput { k0: l.k0, k1: l.k0, p: 1, n: 1, vol: q(l.degree as i64), vol_b: q(0) };
        let (lo, hi) = mult_bounds(&b).unwrap();
        let v = q(rs_blowdown_multiplicity(l).unwrap().value as i64);
        if lo != v || hi != v {
            failures.push(format!("{l:?}: [{lo}, {hi}] vs {v}"));
        }
    }
    for g in 1..=8 {
        let r = vol_control_check(&BoundsInput { k0: 1, k1: g + 1, p: 1, n: 1, vol: q(1), vol_b: q(g as i64) }).unwrap();
        if !r.pass || r.slack != q(0) {
            failures.push(format!("vol control g={g}: {r:?}"));
        }
    }
    verdict(9, "pinched bounds and zero-slack volume control", failures.is_empty(), &format!("failures {failures:?}"));
}

#[test]
fn criterion_10_segre_consistency() {
    let mut failures = Vec::new();
    let mut data: Vec<LineBundleDatum> = (2..=6).map(canonical).collect();
    data.push(sphere());
    for l in &data {
        let c = GradedClass::<Rational>::parse_chern(1, 1, &["c1"]).unwrap();
        let table = IntersectionTable::parse(c.vars(), c.weights(), 1, [("c1", BigInt::from(l.degree))]).unwrap();
        let segre = top_segre_integral(&c, &table).unwrap().value;
        let mult = rs_blowdown_multiplicity(l).unwrap().value;
        if segre != BigInt::from(mult) {
            failures.push(format!("degree {}: segre {segre}, blow-down {mult}", l.degree));
        }
    }
    verdict(10, "top Segre integral = blow-down multiplicity", failures.is_empty(), &format!("{} bundles, failures {failures:?}", data.len()));
}

#[test]
fn criterion_11_invariance() {
    let e = MultiplicityEngine::default();
    let vars = xy();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    // generator augmentation, multiplicities
    let bases: [&[&str]; 10] = [
        &["x", "y"],
        &["x^2", "y^3"],
        &["x^2", "x*y", "y^2"],
        &["x^3", "x^2*y", "x*y^3", "y^4"],
        &["x + y^2", "y^3"],
        &["x^2 + y^3", "x*y"],
        &["x^4", "y^2"],
        &["x^3", "x*y", "y^3"],
        &["x - y", "y^2"],
        &["x^2", "y^2 + x*y"],
    ];
    for gens in bases {
        let u = ideal(gens);
        let g = u.generators();
        let i = rng.gen_range(0..g.len());
        let j = rng.gen_range(0..g.len());
        let c = Rational::new(rng.gen_range(-5i64..6).into(), rng.gen_range(1i64..4).into());
        let extra = [&g[i] * &g[j], &g[i] + &g[j].scale(&c)];
        let bigger = u.with_generators(extra).unwrap();
        let a = e.hs_multiplicity(&u, None, None).map(|r| r.value);
        let b = e.hs_multiplicity(&bigger, None, None).map(|r| r.value);
        if a.is_err() || a != b {
            failures.push(format!("hs augmentation {gens:?}: {a:?} vs {b:?}"));
        }
    }

    // generator augmentation, Lelong numbers
    let germs: Vec<Vec<[&str; 2]>> = vec![
        vec![["t^2", "t^3"]],
        vec![["t^3", "t^4"]],
        vec![["t^2", "t^5"]],
        vec![["t", "t"], ["t", "-t"]],
        vec![["t", "0"]],
        vec![["t", "t^2"], ["t", "-t^2"]],
        vec![["t^3", "t^5"]],
        vec![["t", "0"], ["t", "t"], ["t", "-t"]],
        vec![["t^4", "t^7"]],
        vec![["t^5", "t^6"]],
    ];
    let w = WeightTuple::new(vec![
        Poly::parse("x^2", &vars).unwrap(),
        Poly::parse("x*y", &vars).unwrap(),
        Poly::parse("y^3", &vars).unwrap(),
    ])
    .unwrap();
    for branches in &germs {
        let germ = CurveGerm::<Rational>::parse(&["x", "y"], 48, branches).unwrap();
        let c = w.components();
        let bigger = w.with_components([&c[0] * &c[2], &c[1] + &c[0].scale(&Rational::from_integer(3.into()))]).unwrap();
        let a = curve_lelong_number(&germ, &w);
        let b = curve_lelong_number(&germ, &bigger);
        if a.is_err() || a != b {
            failures.push(format!("lelong augmentation {branches:?}: {a:?} vs {b:?}"));
        }
    }

    // scaling
    for gens in [&["x", "y"][..], &["x^2", "y^3"][..], &["x + y^2", "y^3"][..]] {
        let u = ideal(gens);
        let base = e.hs_multiplicity(&u, None, None).unwrap().value;
        for p in 1..=3u32 {
            let up = mixmult::ideal::ideal_power_product(std::slice::from_ref(&u), &[p], &Default::default()).unwrap();
            let v = e.hs_multiplicity(&up, None, None).map(|r| r.value);
            if v != Ok(base * (p * p) as u64) {
                failures.push(format!("scaling {gens:?} p={p}: {v:?} vs {}", base * (p * p) as u64));
            }
        }
    }

    // symmetry
    for _ in 0..5 {
        let u = random_monomial(&mut rng, 6, 2).to_ideal::<Rational>(&vars).unwrap();
        let v = random_monomial(&mut rng, 6, 2).to_ideal::<Rational>(&vars).unwrap();
        let uv = e.mixed_multiplicity(&[u.clone(), v.clone()], &[1, 1], None).map(|r| r.value);
        let vu = e.mixed_multiplicity(&[v, u], &[1, 1], None).map(|r| r.value);
        if uv.is_err() || uv != vu {
            failures.push(format!("symmetry: {uv:?} vs {vu:?}"));
        }
    }
    let u = ideal(&["x^2", "y^3"]);
    let v = ideal(&["x + y", "y^2"]);
    let uv = e.mixed_multiplicity(&[u.clone(), v.clone()], &[1, 1], None).map(|r| r.value);
    let vu = e.mixed_multiplicity(&[v, u], &[1, 1], None).map(|r| r.value);
    if uv.is_err() || uv != vu {
        failures.push(format!("symmetry (general backend): {uv:?} vs {vu:?}"));
    }

    verdict(
        11,
        "generator augmentation, scaling and symmetry",
        failures.is_empty(),
        &format!("10 + 10 augmentations, 9 scalings, 6 symmetric pairs, failures {failures:?}"),
    );
}

#[test]
fn criterion_12_difference_self_test() {
    let mut failures = Vec::new();
    for (k, n) in [(2usize, 2u32), (2, 3), (2, 4), (3, 3), (3, 4)] {
        for seed in 0..3 {
            if let Err(e) = verify_difference_identity(k, n, 1000 + seed) {
                failures.push(format!("k={k} n={n} seed={seed}: {e}"));
            }
        }
    }
    if let Err(e) = ensure_self_test() {
        failures.push(format!("startup self-test: {e}"));
    }
    verdict(
        12,
        "mixed difference identity, symbolic and numeric",
        failures.is_empty(),
        &format!("2 and 3 variables, degrees 2 to 4, failures {failures:?}"),
    );
}
