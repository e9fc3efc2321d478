//! Definition files, configuration, and name resolution for the command
//! line driver.
//!
//! A definition file is a sequence of statements, one per line; `#` starts
//! a comment.
//!
//! ```text
//! site arr = arrow
//! site c = objects x y ; arrows f:x->y g:y->y ; compose g.f=f g.g=g
//! space circle on arr = sphere 1
//! space x on arr = by-object a: point ; b: rp2
//! abelian z2 on arr = constant 2
//! abelian zx = free x
//! gamma g = corep 2 on arr
//! gamma hz = H z2
//! gamma w = wedge g g
//! map j = wedge-into-product g g
//! gamma cof = quotient j
//! ring r = perturbed 0
//! ```
//!
//! Simplicial set expressions are prefix terms: `point`, `s0`,
//! `sphere N`, `delta N`, `rp2`, `rp2+`, and `wedge E E`, `smash E E`,
//! `product E E`. In a `by-object` space, a restriction map is the identity
//! between equal expressions and the basepoint map otherwise.
//!
//! Besides defined names, a few built-in names resolve on the one-point
//! site `one`: Γ-spaces `corepN` and `H(Z)`, `H(Z/n)`, `H(name)`; spaces
//! `S0`, `SN`, `RP2`, `S1vS1`, `point`; coefficient groups `Z`, `Z/n`;
//! rings `Z`, `Z/n`, `perturbed-HZ`, `perturbed-H(Z/n)`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{
    corepresentable, eilenberg_mac_lane, level, product_gamma, quotient_gamma, smash_gamma, smash_space, tabulate, wedge_gamma,
    wedge_into_product, Gamma, GammaMap, LinearRing,
};
use crate::homology::SimplicialAbGroup;
use crate::simplicial::{
    boundary_quotient_sphere, delta_plus, point, product, rp2, s0, smash, wedge, SimplicialMap, SimplicialSet,
};
use crate::site::{tensor_free, FinCategory, PresheafSpace, SimplicialAbPresheaf};
use crate::spectra::{sp, sphere_spectrum, TruncatedSpectrum};

/// Bounds and budgets shared by every computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Simplicial dimension bound `D`.
    pub dim: usize,
    /// Spectrum level bound `L`.
    pub levels: usize,
    /// Arity bound `B` for colimits and tabulations.
    pub bound: usize,
    /// Node budget for exhaustive enumeration.
    pub budget: u64,
    pub output_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Self { dim: 4, levels: 3, bound: 3, budget: 1_000_000, output_dir: None }
    }
}

/// The optional fields of a configuration file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub dim: Option<usize>,
    pub levels: Option<usize>,
    pub bound: Option<usize>,
    pub budget: Option<u64>,
    pub output_dir: Option<PathBuf>,
}

impl Config {
    /// Applies overrides; later calls win, so apply the file first and the
    /// flags second.
    pub fn apply(&mut self, o: &ConfigOverrides) {
        if let Some(v) = o.dim {
            self.dim = v;
        }
        if let Some(v) = o.levels {
            self.levels = v;
        }
        if let Some(v) = o.bound {
            self.bound = v;
        }
        if let Some(v) = o.budget {
            self.budget = v;
        }
        if let Some(v) = &o.output_dir {
            self.output_dir = Some(v.clone());
        }
    }
}

#[derive(Clone, Debug)]
enum Object {
    Site(Arc<FinCategory>),
    Space(PresheafSpace),
    Abelian(SimplicialAbPresheaf),
    Gamma(Gamma),
    Map(GammaMap),
    Ring(LinearRing),
}

impl Object {
    fn kind(&self) -> &'static str {
        match self {
            Object::Site(_) => "site",
            Object::Space(_) => "space",
            Object::Abelian(_) => "abelian",
            Object::Gamma(_) => "gamma",
            Object::Map(_) => "map",
            Object::Ring(_) => "ring",
        }
    }
}

/// Named objects loaded from definition files.
#[derive(Clone, Debug)]
pub struct Workspace {
    dim: usize,
    objects: BTreeMap<String, (Object, String)>,
}

struct Line<'a> {
    file: &'a str,
    number: usize,
}

impl Line<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { file: self.file.to_string(), line: self.number, message: message.into() }
    }
}

fn number(tok: Option<&str>, what: &str, at: &Line) -> Result<usize> {
    let t = tok.ok_or_else(|| at.err(format!("missing {what}")))?;
    t.parse().map_err(|_| at.err(format!("expected a number for {what}, found `{t}`")))
}

impl Workspace {
    /// An empty workspace whose objects are built with dimension bound `dim`.
    pub fn new(dim: usize) -> Self {
        let mut w = Self { dim, objects: BTreeMap::new() };
        w.objects.insert("one".into(), (Object::Site(Arc::new(FinCategory::one_point())), "built-in".into()));
        w.objects.insert("arrow".into(), (Object::Site(Arc::new(FinCategory::arrow())), "built-in".into()));
        w
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Parses one definition file; `file` names it in diagnostics.
    pub fn load_str(&mut self, file: &str, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let at = Line { file, number: i + 1 };
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (lhs, rhs) = body.split_once('=').ok_or_else(|| at.err("expected `<kind> <name> = <definition>`"))?;
            let head: Vec<&str> = lhs.split_whitespace().collect();
            let (kind, name) = match head.as_slice() {
                [k, n] | [k, n, "on", _] => (*k, n.to_string()),
                _ => return Err(at.err("expected `<kind> <name>` or `<kind> <name> on <site>`")),
            };
            let on = if head.len() == 4 { Some(head[3]) } else { None };
            if let Some((_, origin)) = self.objects.get(&name) {
                return Err(at.err(format!("`{name}` is already defined ({origin})")));
            }
            let obj = self.statement(kind, on, rhs.trim(), &at)?;
            self.objects.insert(name, (obj, format!("{file}:{}", at.number)));
        }
        Ok(())
    }

    /// Reads and parses a definition file from disk.
    pub fn load_file(&mut self, path: &std::path::Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            file: path.display().to_string(),
            line: 0,
            message: e.to_string(),
        })?;
        self.load_str(&path.display().to_string(), &text)
    }

    fn site_named(&self, on: Option<&str>, at: &Line) -> Result<Arc<FinCategory>> {
        let name = on.unwrap_or("one");
        match self.objects.get(name) {
            Some((Object::Site(s), _)) => Ok(s.clone()),
            Some((o, _)) => Err(at.err(format!("`{name}` is a {}, not a site", o.kind()))),
            None => Err(at.err(format!("unknown site `{name}`"))),
        }
    }

    fn statement(&self, kind: &str, on: Option<&str>, rhs: &str, at: &Line) -> Result<Object> {
        let toks: Vec<&str> = rhs.split_whitespace().collect();
        let wrap = |e: Error| match e {
            Error::Parse { .. } => e,
            other => at.err(other.to_string()),
        };
        match kind {
            "site" => self.parse_site(rhs, at).map(|s| Object::Site(Arc::new(s))),
            "space" => {
                let site = self.site_named(on, at)?;
                self.parse_space(site, rhs, at).map(Object::Space)
            }
            "abelian" => {
                match toks.first().copied() {
                    Some("constant") => {
                        let site = self.site_named(on, at)?;
                        let orders = toks[1..]
                            .iter()
                            .map(|t| t.parse::<u64>().map_err(|_| at.err(format!("bad group order `{t}`"))))
                            .collect::<Result<Vec<_>>>()?;
                        if orders.is_empty() {
                            return Err(at.err("`constant` needs at least one order (0 for Z)"));
                        }
                        Ok(Object::Abelian(SimplicialAbPresheaf::constant(site, &SimplicialAbGroup::constant(&orders, self.dim))))
                    }
                    Some("free") => {
                        let x = self.space(toks.get(1).ok_or_else(|| at.err("`free` needs a space"))?).map_err(wrap)?;
                        let orders = if toks.len() > 2 {
                            toks[2..]
                                .iter()
                                .map(|t| t.parse::<u64>().map_err(|_| at.err(format!("bad group order `{t}`"))))
                                .collect::<Result<Vec<_>>>()?
                        } else {
                            vec![0]
                        };
                        Ok(Object::Abelian(tensor_free(&x, &orders)))
                    }
                    _ => Err(at.err("abelian presheaves are `constant <orders>` or `free <space> [orders]`")),
                }
            }
            "gamma" => self.parse_gamma(on, &toks, at).map(Object::Gamma),
            "map" => match toks.as_slice() {
                ["wedge-into-product", a, b] => {
                    let (a, b) = (self.gamma(a).map_err(wrap)?, self.gamma(b).map_err(wrap)?);
                    wedge_into_product(a, b).map(Object::Map).map_err(wrap)
                }
                _ => Err(at.err("maps are `wedge-into-product <gamma> <gamma>`")),
            },
            "ring" => match toks.as_slice() {
                ["cyclic", n] => Ok(Object::Ring(LinearRing::cyclic(number(Some(n), "order", at)? as u64))),
                ["perturbed", n] => Ok(Object::Ring(LinearRing::perturbed(number(Some(n), "order", at)? as u64))),
                _ => Err(at.err("rings are `cyclic <n>` or `perturbed <n>`")),
            },
            other => Err(at.err(format!("unknown kind `{other}`"))),
        }
    }

    fn parse_site(&self, rhs: &str, at: &Line) -> Result<FinCategory> {
        match rhs {
            "point" => return Ok(FinCategory::one_point()),
            "arrow" => return Ok(FinCategory::arrow()),
            _ => {}
        }
        let mut objects: Vec<String> = Vec::new();
        let mut arrows: Vec<(String, usize, usize)> = Vec::new();
        let mut composites = Vec::new();
        let obj = |objects: &[String], name: &str| -> Result<usize> {
            objects.iter().position(|o| o == name).ok_or_else(|| at.err(format!("unknown object `{name}`")))
        };
        for clause in rhs.split(';') {
            let toks: Vec<&str> = clause.split_whitespace().collect();
            match toks.split_first() {
                Some((&"objects", rest)) => objects = rest.iter().map(|s| s.to_string()).collect(),
                Some((&"arrows", rest)) => {
                    for a in rest {
                        let (name, ends) = a.split_once(':').ok_or_else(|| at.err(format!("arrow `{a}` needs `name:src->tgt`")))?;
                        let (s, t) = ends.split_once("->").ok_or_else(|| at.err(format!("arrow `{a}` needs `name:src->tgt`")))?;
                        arrows.push((name.to_string(), obj(&objects, s)?, obj(&objects, t)?));
                    }
                }
                Some((&"compose", rest)) => {
                    for c in rest {
                        let (gf, h) = c.split_once('=').ok_or_else(|| at.err(format!("composite `{c}` needs `g.f=h`")))?;
                        let (g, f) = gf.split_once('.').ok_or_else(|| at.err(format!("composite `{c}` needs `g.f=h`")))?;
                        let idx = |n: &str| -> Result<usize> {
                            if let Some(o) = objects.iter().position(|x| x == n) {
                                return Ok(o);
                            }
                            arrows
                                .iter()
                                .position(|a| a.0 == n)
                                .map(|p| objects.len() + p)
                                .ok_or_else(|| at.err(format!("unknown arrow `{n}`")))
                        };
                        composites.push((idx(g)?, idx(f)?, idx(h)?));
                    }
                }
                _ => return Err(at.err(format!("unknown site clause `{}`", clause.trim()))),
            }
        }
        FinCategory::new(objects, arrows, composites).map_err(|e| at.err(e.to_string()))
    }

    fn parse_space(&self, site: Arc<FinCategory>, rhs: &str, at: &Line) -> Result<PresheafSpace> {
        if let Some(rest) = rhs.strip_prefix("by-object") {
            let mut values: Vec<Option<(String, SimplicialSet)>> = vec![None; site.num_objects()];
            for clause in rest.split(';') {
                let (o, e) = clause.split_once(':').ok_or_else(|| at.err(format!("expected `object: expression`, found `{}`", clause.trim())))?;
                let oi = site.object_index(o.trim()).ok_or_else(|| at.err(format!("unknown object `{}`", o.trim())))?;
                let text = e.split_whitespace().collect::<Vec<_>>().join(" ");
                let x = self.sexpr_all(&text, at)?;
                values[oi] = Some((text, x));
            }
            let values: Vec<(String, SimplicialSet)> = values
                .into_iter()
                .enumerate()
                .map(|(o, v)| v.ok_or_else(|| at.err(format!("no value for object `{}`", site.objects()[o]))))
                .collect::<Result<_>>()?;
            let restrictions = site
                .morphisms()
                .iter()
                .map(|m| {
                    let (src, tgt) = (&values[m.source], &values[m.target]);
                    if src.0 == tgt.0 {
                        SimplicialMap::identity(&tgt.1)
                    } else {
                        SimplicialMap::constant(&tgt.1)
                    }
                })
                .collect();
            let x = PresheafSpace::new(site, values.into_iter().map(|v| v.1).collect(), restrictions)
                .map_err(|e| at.err(e.to_string()))?;
            return Ok(x);
        }
        Ok(PresheafSpace::constant(site, &self.sexpr_all(rhs, at)?))
    }

    fn sexpr_all(&self, text: &str, at: &Line) -> Result<SimplicialSet> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        let (x, used) = self.sexpr(&toks, at)?;
        if used != toks.len() {
            return Err(at.err(format!("unexpected `{}` after a complete expression", toks[used..].join(" "))));
        }
        Ok(x)
    }

    fn sexpr(&self, toks: &[&str], at: &Line) -> Result<(SimplicialSet, usize)> {
        let d = self.dim;
        let e = |r: Result<SimplicialSet>| r.map_err(|e| at.err(e.to_string()));
        match toks.first() {
            Some(&"point") => Ok((point(d), 1)),
            Some(&"s0") => Ok((s0(d), 1)),
            Some(&"rp2") => Ok((e(rp2(d, false))?, 1)),
            Some(&"rp2+") => Ok((e(rp2(d, true))?, 1)),
            Some(&"sphere") => Ok((e(boundary_quotient_sphere(number(toks.get(1).copied(), "sphere dimension", at)?, d))?, 2)),
            Some(&"delta") => Ok((e(delta_plus(number(toks.get(1).copied(), "simplex dimension", at)?, d))?, 2)),
            Some(&op @ ("wedge" | "smash" | "product")) => {
                let (a, n1) = self.sexpr(&toks[1..], at)?;
                let (b, n2) = self.sexpr(&toks[1 + n1..], at)?;
                let x = match op {
                    "wedge" => wedge(&[&a, &b], d).space,
                    "smash" => smash(&a, &b),
                    _ => product(&a, &b),
                };
                Ok((x, 1 + n1 + n2))
            }
            Some(other) => Err(at.err(format!("unknown simplicial set `{other}`"))),
            None => Err(at.err("missing simplicial set expression")),
        }
    }

    fn parse_gamma(&self, on: Option<&str>, toks: &[&str], at: &Line) -> Result<Gamma> {
        let wrap = |e: Error| at.err(e.to_string());
        match toks {
            ["corep", n] => Ok(corepresentable(self.site_named(on, at)?, number(Some(n), "arity", at)?, self.dim)),
            ["corep", n, "on", s] => Ok(corepresentable(self.site_named(Some(s), at)?, number(Some(n), "arity", at)?, self.dim)),
            ["H", a] => Ok(eilenberg_mac_lane(self.abelian(a).map_err(wrap)?)),
            ["level", n, x] => Ok(level(number(Some(n), "arity", at)?, self.space(x).map_err(wrap)?)),
            ["wedge", parts @ ..] if !parts.is_empty() => {
                let gs = parts.iter().map(|p| self.gamma(p)).collect::<Result<Vec<_>>>().map_err(wrap)?;
                wedge_gamma(gs).map_err(wrap)
            }
            ["product", a, b] => Ok(product_gamma(self.gamma(a).map_err(wrap)?, self.gamma(b).map_err(wrap)?)),
            ["smash", a, b] => {
                let s = smash_gamma(&self.gamma(a).map_err(wrap)?, &self.gamma(b).map_err(wrap)?, crate::gamma::DEFAULT_COLIMIT_BOUND)
                    .map_err(wrap)?;
                Ok(s.gamma().clone())
            }
            ["smash-space", x, g] => Ok(smash_space(self.space(x).map_err(wrap)?, self.gamma(g).map_err(wrap)?)),
            ["tabulate", g, n] => tabulate(&self.gamma(g).map_err(wrap)?, number(Some(n), "arity bound", at)?).map_err(wrap),
            ["quotient", j] => Ok(quotient_gamma(self.map(j).map_err(wrap)?).0),
            _ => Err(at.err(format!("unknown Γ-space definition `{}`", toks.join(" ")))),
        }
    }

    fn lookup(&self, name: &str) -> Option<&Object> {
        self.objects.get(name).map(|(o, _)| o)
    }

    fn wrong_kind(name: &str, found: &Object, want: &str) -> Error {
        Error::Unknown(format!("{name} (a {}, expected a {want})", found.kind()))
    }

    fn one(&self) -> Arc<FinCategory> {
        match self.lookup("one") {
            Some(Object::Site(s)) => s.clone(),
            _ => unreachable!("the one-point site is always present"),
        }
    }

    pub fn site(&self, name: &str) -> Result<Arc<FinCategory>> {
        match self.lookup(name) {
            Some(Object::Site(s)) => Ok(s.clone()),
            Some(o) => Err(Self::wrong_kind(name, o, "site")),
            None => Err(Error::Unknown(name.to_string())),
        }
    }

    pub fn space(&self, name: &str) -> Result<PresheafSpace> {
        match self.lookup(name) {
            Some(Object::Space(x)) => return Ok(x.clone()),
            Some(o) => return Err(Self::wrong_kind(name, o, "space")),
            None => {}
        }
        let d = self.dim;
        let x = match name {
            "point" => point(d),
            "S0" => s0(d),
            "RP2" => rp2(d, false)?,
            "RP2+" => rp2(d, true)?,
            "S1vS1" => {
                let c = boundary_quotient_sphere(1, d)?;
                wedge(&[&c, &c], d).space
            }
            _ => match name.strip_prefix('S').and_then(|n| n.parse::<usize>().ok()) {
                Some(n) => boundary_quotient_sphere(n, d)?,
                None => return Err(Error::Unknown(name.to_string())),
            },
        };
        Ok(PresheafSpace::constant(self.one(), &x))
    }

    pub fn abelian(&self, name: &str) -> Result<SimplicialAbPresheaf> {
        match self.lookup(name) {
            Some(Object::Abelian(a)) => return Ok(a.clone()),
            Some(o) => return Err(Self::wrong_kind(name, o, "abelian presheaf")),
            None => {}
        }
        let order = match name {
            "Z" => 0,
            _ => name
                .strip_prefix("Z/")
                .and_then(|n| n.parse::<u64>().ok())
                .filter(|&n| n >= 2)
                .ok_or_else(|| Error::Unknown(name.to_string()))?,
        };
        Ok(SimplicialAbPresheaf::constant(self.one(), &SimplicialAbGroup::constant(&[order], self.dim)))
    }

    pub fn gamma(&self, name: &str) -> Result<Gamma> {
        match self.lookup(name) {
            Some(Object::Gamma(g)) => return Ok(g.clone()),
            Some(o) => return Err(Self::wrong_kind(name, o, "Γ-space")),
            None => {}
        }
        if let Some(n) = name.strip_prefix("corep").and_then(|n| n.parse::<usize>().ok()) {
            return Ok(corepresentable(self.one(), n, self.dim));
        }
        if let Some(inner) = name.strip_prefix("H(").and_then(|s| s.strip_suffix(')')) {
            return Ok(eilenberg_mac_lane(self.abelian(inner)?));
        }
        Err(Error::Unknown(name.to_string()))
    }

    pub fn map(&self, name: &str) -> Result<GammaMap> {
        match self.lookup(name) {
            Some(Object::Map(j)) => Ok(j.clone()),
            Some(o) => Err(Self::wrong_kind(name, o, "Γ-map")),
            None => Err(Error::Unknown(name.to_string())),
        }
    }

    pub fn ring(&self, name: &str) -> Result<LinearRing> {
        match self.lookup(name) {
            Some(Object::Ring(r)) => return Ok(r.clone()),
            Some(o) => return Err(Self::wrong_kind(name, o, "ring")),
            None => {}
        }
        let (perturbed, inner) = match name.strip_prefix("perturbed-") {
            Some(rest) => (true, rest.strip_prefix("H").unwrap_or(rest)),
            None => (false, name),
        };
        let inner = inner.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(inner);
        let order = match inner {
            "Z" => 0,
            _ => inner.strip_prefix("Z/").and_then(|n| n.parse::<u64>().ok()).ok_or_else(|| Error::Unknown(name.to_string()))?,
        };
        Ok(if perturbed { LinearRing::perturbed(order) } else { LinearRing::cyclic(order) })
    }

    /// A spectrum by name: `sphere` or `sphereN` for `𝕊^{×N}`, `point`, or
    /// a Γ-space name standing for its associated spectrum.
    pub fn spectrum(&self, name: &str, l: usize, dim: usize) -> Result<TruncatedSpectrum> {
        if name == "point" {
            return Ok(TruncatedSpectrum::point(self.one(), l, dim));
        }
        if let Some(n) = name.strip_prefix("sphere") {
            let n = if n.is_empty() { 1 } else { n.parse().map_err(|_| Error::Unknown(name.to_string()))? };
            return sphere_spectrum(self.one(), n, l, dim);
        }
        let inner = name.strip_prefix("Sp(").and_then(|s| s.strip_suffix(')')).unwrap_or(name);
        sp(&self.gamma(inner)?, l, dim)
    }

    /// One line per defined object: name, kind and where it was defined,
    /// in name order.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for (name, (obj, origin)) in &self.objects {
            let detail = match obj {
                Object::Site(s) => format!("{} objects, {} morphisms", s.num_objects(), s.morphisms().len()),
                Object::Space(x) => {
                    let sizes: Vec<String> = x.values().iter().map(|v| format!("{:?}", v.sizes())).collect();
                    format!("sizes {}", sizes.join(" "))
                }
                Object::Abelian(a) => {
                    let ranks: Vec<String> =
                        a.values().iter().map(|v| format!("{:?}", (0..=v.dim()).map(|k| v.rank(k)).collect::<Vec<_>>())).collect();
                    format!("ranks {}", ranks.join(" "))
                }
                Object::Gamma(g) => g.describe(),
                Object::Map(j) => format!("{} -> {}", j.source().describe(), j.target().describe()),
                Object::Ring(r) => format!("orders {:?}", r.orders),
            };
            out.push_str(&format!("{} {name}: {detail} [{origin}]\n", obj.kind()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_the_documented_example() {
        let mut w = Workspace::new(2);
        w.load_str(
            "ex.def",
            "site arr2 = arrow\n\
             space circle on arr2 = sphere 1\n\
             space x on arr2 = by-object a: point ; b: rp2   # nonconstant\n\
             abelian z2 on arr2 = constant 2\n\
             abelian zx = free x\n\
             gamma g = corep 1 on arr2\n\
             gamma hz = H z2\n\
             gamma w = wedge g g\n\
             map j = wedge-into-product g g\n\
             gamma cof = quotient j\n\
             ring r = perturbed 0\n",
        )
        .unwrap();
        assert_eq!(w.space("x").unwrap().value(1).size(0), 6);
        assert_eq!(w.gamma("w").unwrap().eval(1).unwrap().value(0).size(0), 3);
        assert!(w.summary().contains("gamma cof"));
    }

    #[test]
    fn composition_violations_name_the_triple() {
        let mut w = Workspace::new(1);
        let err = w
            .load_str("bad.def", "\n\nsite c = objects x ; arrows e:x->x ; compose e.e=x e.e=e\n")
            .unwrap_err();
        match err {
            Error::Parse { file, line, message } => {
                assert_eq!((file.as_str(), line), ("bad.def", 3));
                assert!(message.contains("e ∘ e"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn builtins_and_duplicates() {
        let mut w = Workspace::new(2);
        w.load_str("a.def", "gamma g2 = corep 2\n").unwrap();
        assert_eq!(w.gamma("g2").unwrap().eval(1).unwrap().value(0).size(0), 4);
        assert_eq!(w.gamma("corep2").unwrap().eval(1).unwrap().value(0).size(0), 4);
        assert!(w.gamma("H(Z/2)").is_ok() && w.ring("perturbed-HZ").is_ok());
        let err = w.load_str("b.def", "gamma g2 = corep 1\n").unwrap_err();
        assert!(err.to_string().contains("already defined (a.def:1)"));
        assert!(matches!(w.gamma("nope"), Err(Error::Unknown(_))));
    }

    #[test]
    fn config_overrides_apply_in_order() {
        let mut c = Config::default();
        c.apply(&ConfigOverrides { dim: Some(3), budget: Some(10), ..Default::default() });
        c.apply(&ConfigOverrides { dim: Some(5), ..Default::default() });
        assert_eq!((c.dim, c.levels, c.budget), (5, 3, 10));
    }
}
