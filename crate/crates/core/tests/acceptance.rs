//! The acceptance suite: one pass/fail line per criterion.
//!
//! Every criterion returns its verdict together with a rendered report;
//! the last criterion reruns the whole suite and compares the reports
//! byte for byte.

use std::sync::Arc;
use std::time::{Duration, Instant};

use gspc_core::gamma::{
    compare_to_composite, corep_smash_iso, corepresentable, eilenberg_mac_lane, is_very_special_linear, level,
    lh_adjunction_check, lh_adjunction_check_integers, linearization, ln_adjunction_check, smash_space, wedge_gamma,
    wedge_into_product, yoneda_check, DEFAULT_COLIMIT_BOUND,
};
use gspc_core::homology::{reduced_chain_complex, reduced_homology, SimplicialAbGroup};
use gspc_core::simplicial::{
    boundary_quotient_sphere, point, quotient, quotient_projection, rp2, s0, wedge, SimplicialMap, SimplicialSet,
};
use gspc_core::site::{free_abelian, FinCategory, PresheafSpace, SimplicialAbPresheaf};
use gspc_core::spectra::{
    cofiber_les_check, gamma_pi, les_exactness, sp, sp_coequalizer_check, sp_linear, sp_phi_adjunction_check,
    sphere_comparison, sphere_spectrum, spectrum_homology_linear, ChainTriple, TruncatedSpectrum,
};
use gspc_core::Result;

const BUDGET: u64 = 1_000_000;

fn one() -> Arc<FinCategory> {
    Arc::new(FinCategory::one_point())
}

fn arrow() -> Arc<FinCategory> {
    Arc::new(FinCategory::arrow())
}

fn sphere(n: usize, dim: usize) -> SimplicialSet {
    boundary_quotient_sphere(n, dim).unwrap()
}

fn constant(orders: &[u64], dim: usize) -> SimplicialAbPresheaf {
    SimplicialAbPresheaf::constant(one(), &SimplicialAbGroup::constant(orders, dim))
}

/// The presheaf over the arrow `a → b` with the circle at `a`, the point
/// at `b`, and the only possible restriction.
fn circle_over_arrow(dim: usize) -> PresheafSpace {
    let site = arrow();
    let values = vec![sphere(1, dim), point(dim)];
    let u = site.morphism_index("u").unwrap();
    PresheafSpace::from_fn(site, values.clone(), |m| {
        if m == u {
            SimplicialMap::from_tables(vec![vec![0]; dim + 1])
        } else {
            let o = (0..2).find(|&o| FinCategory::arrow().identity(o) == m).unwrap();
            SimplicialMap::identity(&values[o])
        }
    })
    .unwrap()
}

/// The coefficient corpus: constant Z, constant Z/2, free on the circle,
/// and the free presheaf on [`circle_over_arrow`].
fn coefficients(dim: usize) -> Vec<(&'static str, SimplicialAbPresheaf)> {
    vec![
        ("Z", constant(&[0], dim)),
        ("Z/2", constant(&[2], dim)),
        ("Z[S1]", free_abelian(&PresheafSpace::constant(one(), &sphere(1, dim)))),
        ("Z[S1 over arrow]", free_abelian(&circle_over_arrow(dim))),
    ]
}

struct Outcome {
    passed: bool,
    report: String,
}

impl Outcome {
    fn new() -> Self {
        Self { passed: true, report: String::new() }
    }

    fn record(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.report.push_str(if ok { "ok   " } else { "FAIL " });
        self.report.push_str(&line);
        self.report.push('\n');
    }
}

fn eilenberg_mac_lane_homotopy() -> Result<Outcome> {
    let mut out = Outcome::new();
    for n in 0..=2 {
        // levels 0..=2 of π_n are trusted below the dimension bound n + 3
        let dim = n + 3;
        for (name, a) in coefficients(dim) {
            let h = eilenberg_mac_lane(a.clone());
            let r = gamma_pi(&h, n, 2, dim)?;
            let stable = r.stable.clone().unwrap_or_default();
            for (o, object) in a.site().objects().iter().enumerate() {
                let expected = a.value(o).homotopy(n)?;
                let got = stable.iter().find(|(u, _)| u == object).map(|(_, g)| g.clone());
                out.record(
                    got.as_ref() == Some(&expected),
                    format!("π_{n}(H {name}) at {object}: {} vs {expected}", got.map_or("unstable".into(), |g| g.to_string())),
                );
            }
        }
    }
    Ok(out)
}

fn sphere_identification() -> Result<Outcome> {
    let mut out = Outcome::new();
    for site in [one(), arrow()] {
        for n in 0..=2 {
            let (source, target, iso) = sphere_comparison(&corepresentable(site.clone(), n, 3), n, 3, 3)?;
            let sizes = |e: &TruncatedSpectrum| (0..=3).map(|k| e.level(k).value(0).sizes().to_vec()).collect::<Vec<_>>();
            out.record(
                iso.levels().len() == 4 && sizes(&source) == sizes(&target),
                format!("Sp(Γ^{n}) ≅ S^×{n} over {} objects, levels 0..3: sizes {:?}", site.num_objects(), sizes(&target)),
            );
        }
    }
    Ok(out)
}

fn yoneda_suite() -> Result<Outcome> {
    let mut out = Outcome::new();
    for site in [one(), arrow()] {
        let objects = site.num_objects();
        for m in 0..=2 {
            let g = corepresentable(site.clone(), m, 2);
            for n in 0..=2 {
                let r = yoneda_check(n, &g, 2, 3, BUDGET)?;
                out.record(r.passed, format!("{} over {objects} objects: {} = {}", r.name, r.left, r.right));
                let r = corep_smash_iso(site.clone(), m, n, 2, DEFAULT_COLIMIT_BOUND, 3)?;
                out.record(r.passed, format!("{} over {objects} objects, {} elements", r.name, r.checked));
                let r = compare_to_composite(&g, n, DEFAULT_COLIMIT_BOUND, 3)?;
                out.record(r.passed, format!("{} over {objects} objects, {} elements", r.name, r.checked));
            }
        }
    }
    let h = eilenberg_mac_lane(SimplicialAbPresheaf::constant(one(), &SimplicialAbGroup::constant(&[2], 2)));
    for n in 0..=2 {
        let r = yoneda_check(n, &h, 2, 3, BUDGET)?;
        out.record(r.passed, format!("{}: {} = {}", r.name, r.left, r.right));
        // HA is not generated in low arity, so the coend needs every arity
        // up to (k+1)^n - 1
        let kmax = (0..=3).filter(|k: &usize| (k + 1).pow(n as u32) - 1 <= DEFAULT_COLIMIT_BOUND).max().unwrap();
        let r = compare_to_composite(&h, n, DEFAULT_COLIMIT_BOUND, kmax)?;
        out.record(r.passed, format!("{} on arities ≤ {kmax}, {} elements", r.name, r.checked));
    }
    Ok(out)
}

fn adjunction_suites() -> Result<Outcome> {
    let mut out = Outcome::new();
    for site in [one(), arrow()] {
        let spaces = [PresheafSpace::constant(site.clone(), &s0(1)), PresheafSpace::point(site.clone(), 1)];
        let gammas = [corepresentable(site.clone(), 1, 1), corepresentable(site.clone(), 2, 1)];
        for n in 0..=2 {
            for x in &spaces {
                for g in &gammas {
                    let r = ln_adjunction_check(n, x, g, 2, BUDGET)?;
                    out.record(r.passed, format!("{} with n = {n}: {} = {}", r.name, r.left, r.right));
                }
            }
        }
        let z3 = SimplicialAbPresheaf::constant(site.clone(), &SimplicialAbGroup::constant(&[3], 1));
        let z2 = SimplicialAbPresheaf::constant(site.clone(), &SimplicialAbGroup::constant(&[2], 1));
        let g1 = corepresentable(site.clone(), 1, 1);
        let fs = [
            corepresentable(site.clone(), 0, 1),
            g1.clone(),
            corepresentable(site.clone(), 2, 1),
            wedge_gamma(vec![g1.clone(), g1])?,
            level(1, PresheafSpace::constant(site.clone(), &s0(1))),
        ];
        for f in &fs {
            for a in [&z2, &z3] {
                let r = lh_adjunction_check(f, a, 2, BUDGET)?;
                out.record(r.passed, format!("{}: {} = {}", r.name, r.left, r.right));
            }
        }
    }
    for n in 0..=2 {
        let r = lh_adjunction_check_integers(n, 2, 3)?;
        out.record(r.passed, format!("{}: {} = {}", r.name, r.left, r.right));
    }
    let g1 = corepresentable(one(), 1, 3);
    let sphere_spectrum = sphere_spectrum(one(), 1, 2, 3)?;
    let point_spectrum = TruncatedSpectrum::point(one(), 2, 3);
    for (f, e) in [
        (g1.clone(), &sphere_spectrum),
        (wedge_gamma(vec![g1.clone(), g1])?, &point_spectrum),
        (corepresentable(one(), 0, 3), &sphere_spectrum),
    ] {
        let r = sp_phi_adjunction_check(&f, e, 1, BUDGET)?;
        out.record(r.passed, format!("{}: {} = {}", r.name, r.left, r.right));
    }
    Ok(out)
}

fn homology_theory() -> Result<Outcome> {
    let mut out = Outcome::new();
    let dim = 5;
    let spaces: [(&str, SimplicialSet); 4] = [
        ("S1", sphere(1, dim)),
        ("S1vS1", wedge(&[&sphere(1, dim), &sphere(1, dim)], dim).space),
        ("S2", sphere(2, dim)),
        ("RP2", rp2(dim, false)?),
    ];
    for (kname, k) in &spaces {
        let kp = PresheafSpace::constant(one(), k);
        for (aname, order) in [("Z", 0u64), ("Z/2", 2)] {
            let a = constant(&[order], dim);
            let f = smash_space(kp.clone(), eilenberg_mac_lane(a));
            let model = f.linear_model().expect("HA ∧ K has a linear model").clone();
            let e = sp_linear(&model, 2, &format!("H{aname}∧{kname}"))?;
            // the linearization route: on finite coefficients L(HA ∧ K) is
            // computed from the Γ-space itself, otherwise from A ⊗ Z̃K
            let lin = if order == 0 {
                model.clone()
            } else {
                let small = smash_space(
                    PresheafSpace::constant(one(), &k.truncate(3)?),
                    eilenberg_mac_lane(constant(&[order], 3)),
                );
                linearization(&small)?.presheaf
            };
            for n in 0..=2 {
                let stable = spectrum_homology_linear(&e, n)?.value().cloned();
                let via_l = lin.value(0).homotopy(n)?;
                let chains = reduced_chain_complex(k);
                let oracle = if order == 0 { chains.homology(n)? } else { chains.with_coefficients(order).homology(n)? };
                out.record(
                    stable.as_ref() == Some(&oracle) && via_l == oracle,
                    format!(
                        "H̃_{n}({kname}; {aname}) = {oracle}: spectrum {}, linearization {via_l}",
                        stable.map_or("unstable".into(), |g| g.to_string())
                    ),
                );
            }
        }
    }
    Ok(out)
}

fn connectivity() -> Result<Outcome> {
    let mut out = Outcome::new();
    let (l, dim) = (3, 4);
    let g1 = corepresentable(one(), 1, dim);
    let corpus = vec![
        corepresentable(one(), 0, dim),
        g1.clone(),
        corepresentable(one(), 2, dim),
        wedge_gamma(vec![g1.clone(), g1])?,
        level(1, PresheafSpace::constant(one(), &sphere(1, dim))),
        corepresentable(arrow(), 1, dim),
    ];
    for f in &corpus {
        let e = sp(f, l, dim)?;
        for k in 0..=l {
            for o in 0..f.site().num_objects() {
                let low = (0..k).map(|j| reduced_homology(e.level(k).value(o), j)).collect::<Result<Vec<_>>>()?;
                out.record(
                    low.iter().all(|g| g.is_trivial()),
                    format!("{} level {k} object {o}: H̃_<{k} = {:?}", e.name(), low.iter().map(|g| g.to_string()).collect::<Vec<_>>()),
                );
            }
        }
    }
    for (name, a) in [("Z", constant(&[0], dim)), ("Z/2", constant(&[2], dim))] {
        let e = sp_linear(&a, l, name)?;
        for k in 0..=l {
            let low = (0..k).map(|j| e.level(k).value(0).homotopy(j)).collect::<Result<Vec<_>>>()?;
            out.record(low.iter().all(|g| g.is_trivial()), format!("Sp(H {name}) level {k}: π_<{k} trivial"));
        }
    }
    Ok(out)
}

fn coequalizer() -> Result<Outcome> {
    let mut out = Outcome::new();
    for f in [corepresentable(one(), 1, 2), eilenberg_mac_lane(constant(&[2], 2))] {
        let r = sp_coequalizer_check(&f, 1, 2)?;
        out.record(r.passed, format!("{}: {} cases", r.name, r.cases.len()));
    }
    Ok(out)
}

fn les_and_very_special() -> Result<Outcome> {
    let mut out = Outcome::new();
    let g1 = corepresentable(one(), 1, 3);
    let g2 = corepresentable(one(), 2, 3);
    let a1 = corepresentable(arrow(), 1, 3);
    for j in [wedge_into_product(g1.clone(), g1.clone())?, wedge_into_product(g1, g2)?, wedge_into_product(a1.clone(), a1)?] {
        let r = cofiber_les_check(&j, 2, 3)?;
        out.record(r.passed, format!("{}: {} spots exact", r.name, r.spots.len()));
    }
    // the seeded failure: S⁰ → RP²_+ → RP² with a middle differential doubled
    let x = rp2(3, true)?;
    let vertex_one = |k: usize| (0..k).fold(1, |v, d| x.degeneracy(d, 0, v));
    let flags: Vec<Vec<bool>> = (0..=3).map(|k| (0..x.size(k)).map(|s| s == 0 || s == vertex_one(k)).collect()).collect();
    let inclusion = SimplicialMap::from_tables((0..=3).map(|k| vec![0, vertex_one(k)]).collect());
    let mut triple = ChainTriple::from_cofiber(&inclusion, &s0(3), &x, &quotient_projection(&x, &flags), &quotient(&x, &flags)?);
    let honest = les_exactness(&triple, 2, 0, "*")?;
    out.record(honest.iter().all(|s| s.exact), "S⁰ → RP²_+ → RP² is exact".into());
    triple.corrupt_total_differential(2, 2)?;
    let corrupted = les_exactness(&triple, 2, 0, "*")?;
    out.record(corrupted.iter().any(|s| !s.exact), "doubling a differential of RP²_+ breaks exactness".into());
    for (name, a) in coefficients(3) {
        let r = is_very_special_linear(&a, 3)?;
        let iso = r.comparisons.iter().all(|c| c.isomorphism);
        out.record(
            r.very_special == Some(true) && iso,
            format!("H {name} very special with {} isomorphism comparisons", r.comparisons.len()),
        );
    }
    Ok(out)
}

type Criterion = (&'static str, Duration, fn() -> Result<Outcome>);

const CRITERIA: [Criterion; 8] = [
    ("Eilenberg–Mac Lane homotopy", Duration::from_secs(60), eilenberg_mac_lane_homotopy),
    ("sphere identification", Duration::from_secs(30), sphere_identification),
    ("Yoneda suite", Duration::from_secs(120), yoneda_suite),
    ("adjunction suites", Duration::from_secs(120), adjunction_suites),
    ("homology theory", Duration::from_secs(120), homology_theory),
    ("connectivity", Duration::from_secs(60), connectivity),
    ("coequalizer presentation", Duration::from_secs(60), coequalizer),
    ("long exact sequences and very special", Duration::from_secs(60), les_and_very_special),
];

fn run_suite() -> Vec<(bool, Duration, String)> {
    CRITERIA
        .iter()
        .map(|(_, limit, check)| {
            let start = Instant::now();
            let outcome = check();
            let elapsed = start.elapsed();
            match outcome {
                Ok(o) => (o.passed && elapsed <= *limit, elapsed, o.report),
                Err(e) => (false, elapsed, format!("error: {e}\n")),
            }
        })
        .collect()
}

/// Writes past the test harness's output capture so the verdicts show up
/// in a plain `cargo test` run.
fn say(line: String) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr(), "{line}");
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let first = run_suite();
    let second = run_suite();
    let mut all = true;
    for (i, ((name, limit, _), (passed, elapsed, report))) in CRITERIA.iter().zip(&first).enumerate() {
        all &= passed;
        say(format!(
            "criterion {}: {} {name} ({:.1}s, limit {}s)",
            i + 1,
            if *passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        ));
        if !passed || std::env::var_os("GSPC_VERBOSE").is_some() {
            say(report.trim_end().to_string());
        }
    }
    let identical = first.iter().zip(&second).all(|(a, b)| a.2 == b.2);
    let total = start.elapsed();
    let deterministic = identical && total <= Duration::from_secs(600);
    all &= deterministic;
    say(format!(
        "criterion 9: {} determinism (two runs, byte-identical reports, {:.1}s)",
        if deterministic { "PASS" } else { "FAIL" },
        total.as_secs_f64()
    ));
    assert!(all, "some acceptance criteria failed");
}
