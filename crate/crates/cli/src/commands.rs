//! Subcommand definitions and their dispatch to the library.

use clap::Subcommand;
use gspc_core::gamma::{
    check_linear_ring, check_pairing_monoid, compare_to_composite, corep_smash_iso, eilenberg_mac_lane, h_pairing,
    is_very_special, is_very_special_linear, lh_adjunction_check, lh_adjunction_check_integers, linearization,
    ln_adjunction_check, smash_gamma, yoneda_check, Gamma,
};
use gspc_core::homology::reduced_homology;
use gspc_core::spectra::{
    cofiber_les_check, gamma_pi, phi, sp, sp_coequalizer_check, sp_linear, sp_phi_adjunction_check, spectrum_homology,
    spectrum_homology_linear, symmetric_equivariance_check, symmetric_equivariance_check_linear,
};
use gspc_core::workspace::{Config, Workspace};
use gspc_core::{Error, Result};
use serde::Serialize;

use crate::report::Report;

/// Arities on which natural families are compared.
const KMAX: usize = 2;

#[derive(Subcommand, Debug)]
pub enum Compute {
    /// Values of the smash product F ∧ G on small arities.
    Smash {
        #[arg(long)]
        of: String,
        #[arg(long)]
        with: String,
    },
    /// Level sizes and level homology of Sp(F).
    Sp {
        #[arg(long)]
        of: String,
    },
    /// Homotopy of the linearization L(F).
    #[command(name = "L")]
    Linearize {
        #[arg(long)]
        of: String,
    },
    /// Ranks and homotopy of H(A) on small arities.
    #[command(name = "H")]
    EilenbergMacLane {
        #[arg(long)]
        of: String,
    },
    /// Stable homotopy group π_n of Sp(F).
    Pi {
        #[arg(long)]
        of: String,
        #[arg(long)]
        n: usize,
    },
    /// Reduced homology of a space, or spectrum homology of Sp(F).
    Homology {
        #[arg(long)]
        of: String,
        #[arg(long)]
        n: usize,
    },
    /// Vertices of Φ(E)(n_+) per object.
    Phi {
        #[arg(long)]
        of: String,
        #[arg(long)]
        n: usize,
        /// Largest simplicial degree of the mapping spaces.
        #[arg(long, default_value_t = 0)]
        degree: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Check {
    /// SpcHom(Γⁿ, F) ≅ F(n_+), Γ^m ∧ Γⁿ ≅ Γ^{mn} and F ∧ Γⁿ ≅ F ∘ Γⁿ.
    Yoneda {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "corep1")]
        of: String,
    },
    /// L_n ⊣ Ev_n for a space X and a Γ-space G.
    #[command(name = "adjunction-ln")]
    AdjunctionLn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        of: String,
        #[arg(long)]
        with: String,
    },
    /// L ⊣ H for a Γ-space F and coefficients A.
    #[command(name = "adjunction-lh")]
    AdjunctionLh {
        #[arg(long)]
        of: String,
        #[arg(long)]
        with: String,
    },
    /// Special and very special comparisons.
    Special {
        #[arg(long)]
        of: String,
    },
    /// Associativity and unit of the ring multiplication on H(R).
    Monoid {
        #[arg(long)]
        of: String,
    },
    /// Sp(F) at spheres as a coequalizer over Γ.
    Coeq {
        #[arg(long)]
        of: String,
    },
    /// Homology long exact sequence of the cofiber sequence of a Γ-map.
    Les {
        #[arg(long)]
        of: String,
    },
    /// Σ_m × Σ_n-equivariance of the iterated structure maps of Sp(F).
    Equivariance {
        #[arg(long)]
        of: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Sp ⊣ Φ in simplicial degree 0.
    #[command(name = "sp-phi")]
    SpPhi {
        #[arg(long)]
        of: String,
        #[arg(long, default_value = "sphere")]
        with: String,
    },
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// A Γ-space's Eilenberg–Mac Lane coefficients, cut to `dim`.
fn linear(f: &Gamma, dim: usize) -> Result<Option<gspc_core::site::SimplicialAbPresheaf>> {
    f.linear_model().map(|a| a.truncate(dim.min(a.dim()))).transpose()
}

pub fn compute(c: &Compute, ws: &Workspace, cfg: &Config) -> Result<Report> {
    let (l, d) = (cfg.levels, cfg.dim);
    Ok(match c {
        Compute::Smash { of, with } => {
            let s = smash_gamma(&ws.gamma(of)?, &ws.gamma(with)?, cfg.bound)?;
            let g = s.gamma();
            let mut body = format!("{} with colimit bound {}\n", g.describe(), cfg.bound);
            for k in 0..=KMAX {
                let v = g.eval(k)?;
                for (o, name) in g.site().objects().iter().enumerate() {
                    body.push_str(&format!("arity {k} object {name} sizes {:?}\n", v.value(o).sizes()));
                }
            }
            Report::computed("compute smash", &format!("{of}-{with}"), body)
        }
        Compute::Sp { of } => {
            let f = ws.gamma(of)?;
            let mut body = String::new();
            if let Some(a) = linear(&f, d)? {
                let e = sp_linear(&a, l, &f.describe())?;
                body.push_str(&format!("linear spectrum {} levels 0..{l} dim {d}\n", e.name()));
                for k in 0..=l {
                    for (o, name) in f.site().objects().iter().enumerate() {
                        let lev = e.level(k).value(o);
                        let ranks: Vec<String> = (0..=d).map(|q| lev.rank(q).to_string()).collect();
                        let pis = (0..d).map(|q| lev.homotopy(q).map(|g| g.to_string())).collect::<Result<Vec<_>>>()?;
                        body.push_str(&format!("level {k} {name} ranks {} homotopy {}\n", ranks.join(" "), pis.join(", ")));
                    }
                }
            } else {
                let e = sp(&f, l, d)?;
                body.push_str(&e.summary());
                for k in 0..=l {
                    for (o, name) in f.site().objects().iter().enumerate() {
                        let hs = (0..d)
                            .map(|q| reduced_homology(e.level(k).value(o), q).map(|g| g.to_string()))
                            .collect::<Result<Vec<_>>>()?;
                        body.push_str(&format!("level {k} {name} reduced homology {}\n", hs.join(", ")));
                    }
                }
            }
            Report::computed("compute sp", of, body)
        }
        Compute::Linearize { of } => {
            let f = ws.gamma(of)?;
            let lf = linearization(&f)?;
            let mut body = format!("L({})\n", f.describe());
            for (o, name) in f.site().objects().iter().enumerate() {
                let pis = (0..f.dim()).map(|q| lf.presheaf.value(o).homotopy(q).map(|g| g.to_string())).collect::<Result<Vec<_>>>()?;
                body.push_str(&format!("object {name} homotopy {}\n", pis.join(", ")));
            }
            Report::computed("compute L", of, body)
        }
        Compute::EilenbergMacLane { of } => {
            let a = ws.abelian(of)?;
            let h = eilenberg_mac_lane(a.clone());
            let mut body = format!("{}\n", h.describe());
            for (o, name) in a.site().objects().iter().enumerate() {
                let v = a.value(o);
                for k in 0..=KMAX {
                    let ranks: Vec<String> = (0..=v.dim()).map(|q| (k * v.rank(q)).to_string()).collect();
                    body.push_str(&format!("arity {k} object {name} ranks {}\n", ranks.join(" ")));
                }
                let pis = (0..v.dim()).map(|q| v.homotopy(q).map(|g| g.to_string())).collect::<Result<Vec<_>>>()?;
                body.push_str(&format!("object {name} homotopy {}\n", pis.join(", ")));
            }
            Report::computed("compute H", of, body)
        }
        Compute::Pi { of, n } => {
            let r = gamma_pi(&ws.gamma(of)?, *n, l, d)?;
            let mut body = r.render();
            if let Some(g) = r.value() {
                body.push_str(&format!("result: {g}\n"));
            }
            Report::computed("compute pi", &format!("{of}-{n}"), body)
        }
        Compute::Homology { of, n } => {
            let body = match ws.space(of) {
                Ok(x) => {
                    let mut body = String::new();
                    for (o, name) in x.site().objects().iter().enumerate() {
                        body.push_str(&format!("{name}: {}\n", reduced_homology(x.value(o), *n)?));
                    }
                    body
                }
                Err(Error::Unknown(_)) => {
                    let f = ws.gamma(of)?;
                    let r = match linear(&f, d)? {
                        Some(a) => spectrum_homology_linear(&sp_linear(&a, l, &f.describe())?, *n)?,
                        None => spectrum_homology(&sp(&f, l, d)?, *n)?,
                    };
                    let mut body = r.render();
                    if let Some(g) = r.value() {
                        body.push_str(&format!("result: {g}\n"));
                    }
                    body
                }
                Err(e) => return Err(e),
            };
            Report::computed("compute homology", &format!("{of}-{n}"), body)
        }
        Compute::Phi { of, n, degree } => {
            let e = ws.spectrum(of, l, d)?;
            let v = phi(&e, *n, *degree, cfg.budget)?;
            let mut body = format!("Φ({})({n}_+) up to degree {degree}\n", e.name());
            for (o, name) in e.site().objects().iter().enumerate() {
                body.push_str(&format!("object {name} sizes {:?}\n", v.space.value(o).sizes()));
            }
            Report::computed("compute phi", &format!("{of}-{n}"), body)
        }
    })
}

pub fn check(c: &Check, ws: &Workspace, cfg: &Config) -> Result<Report> {
    let (l, d) = (cfg.levels, cfg.dim);
    Ok(match c {
        Check::Yoneda { n, of } => {
            let f = ws.gamma(of)?;
            let qmax = d.min(2);
            let a = yoneda_check(*n, &f, qmax, KMAX, cfg.budget)?;
            let b = corep_smash_iso(f.site().clone(), *n, *n, d, cfg.bound, KMAX)?;
            // exact on k_+ for any F once the coend reaches arity (k+1)^n - 1
            let kc = (0..=KMAX).filter(|k| (k + 1).pow(*n as u32) - 1 <= cfg.bound).max().unwrap_or(0);
            let c = compare_to_composite(&f, *n, cfg.bound, kc)?;
            let passed = a.passed && b.passed && c.passed;
            let body = format!("{}{}{}", json(&a), json(&b), json(&c));
            Report::checked("check yoneda", &format!("{of}-{n}"), body, passed)
        }
        Check::AdjunctionLn { n, of, with } => {
            let r = ln_adjunction_check(*n, &ws.space(of)?, &ws.gamma(with)?, KMAX, cfg.budget)?;
            Report::checked("check adjunction-ln", &format!("{of}-{with}-{n}"), json(&r), r.passed)
        }
        Check::AdjunctionLh { of, with } => {
            let a = ws.abelian(with)?;
            let f = ws.gamma(of)?;
            let integral = a.values().iter().any(|v| (0..=v.dim()).any(|q| v.orders(q).contains(&0)));
            let r = if integral {
                // the integral case is decided on a window of integer vectors
                let n = of
                    .strip_prefix("corep")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Precondition("with integer coefficients F must be a corepresentable `corepN`".into()))?;
                lh_adjunction_check_integers(n, 2, KMAX)?
            } else {
                lh_adjunction_check(&f, &a, KMAX, cfg.budget)?
            };
            Report::checked("check adjunction-lh", &format!("{of}-{with}"), json(&r), r.passed)
        }
        Check::Special { of } => {
            let f = ws.gamma(of)?;
            let r = match linear(&f, d)? {
                Some(a) => is_very_special_linear(&a, cfg.bound)?,
                None => is_very_special(&f, cfg.bound)?,
            };
            let body = format!("special: {}\nvery special: {}\n{}", r.special, r.very_special == Some(true), json(&r));
            Report::checked("check special", of, body, r.special)
        }
        Check::Monoid { of } => {
            let ring = ws.ring(of)?;
            let laws = check_linear_ring(&ring);
            let mut body = json(&laws);
            let mut passed = laws.passed;
            if ring.orders.iter().all(|&o| o != 0) {
                let p = h_pairing(ws.site("one")?, &ring, 0)?;
                let r = check_pairing_monoid(&p, cfg.bound)?;
                passed &= r.passed;
                body.push_str(&json(&r));
            }
            Report::checked("check monoid", of, body, passed)
        }
        Check::Coeq { of } => {
            let r = sp_coequalizer_check(&ws.gamma(of)?, 1, 2)?;
            Report::checked("check coeq", of, json(&r), r.passed)
        }
        Check::Les { of } => {
            let r = cofiber_les_check(&ws.map(of)?, l, d)?;
            Report::checked("check les", of, json(&r), r.passed)
        }
        Check::Equivariance { of, m, n } => {
            let f = ws.gamma(of)?;
            let r = match linear(&f, d)? {
                Some(a) => symmetric_equivariance_check_linear(&sp_linear(&a, l, &f.describe())?, *m, *n)?,
                None => symmetric_equivariance_check(&f, *m, *n, l, d)?,
            };
            Report::checked("check equivariance", &format!("{of}-{m}-{n}"), json(&r), r.passed)
        }
        Check::SpPhi { of, with } => {
            let e = ws.spectrum(with, l, d)?;
            let r = sp_phi_adjunction_check(&ws.gamma(of)?, &e, 1, cfg.budget)?;
            Report::checked("check sp-phi", &format!("{of}-{with}"), json(&r), r.passed)
        }
    })
}
