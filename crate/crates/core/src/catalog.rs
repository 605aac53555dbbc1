//! Fixed catalog of explicit maps and webs with their expected properties,
//! and the verifier that runs them.

use std::fmt::Write as _;
use std::time::Instant;

use num::{Integer, One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, WebError};
use crate::exactalg::{rat, Poly2, RatFunc2, Rational};
use crate::monodromy::web_monodromy;
use crate::parse::{parse_form, parse_map, parse_poly, parse_ratfunc, parse_ratfunc_with, Vars};
use crate::planemaps::{self, PlaneMap};
use crate::symforms::{Divisor, SymForm};
use crate::ueda::ueda_endomorphism;
use crate::webgeom::{self, WebOnP2};

/// Where an expected outcome comes from.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Stated in the literature for this object.
    Published,
    /// Obtained here by hand expansion or a companion computation.
    Derived,
    /// Immediate from the definitions.
    Trivial,
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Source::Published => "published",
            Source::Derived => "derived",
            Source::Trivial => "trivial",
        })
    }
}

#[derive(Clone, Debug)]
pub enum CheckKind {
    /// Whether the entry map leaves the entry web invariant.
    Invariance { expected: bool },
    WebDegree { expected: u32 },
    /// Projective discriminant degree against `(k-1)(2 deg + k)`.
    DegreeFormula,
    /// `deg <= k` and `m <= k ord` on every content factor; in the equality
    /// case every factor reaches the bound.
    DegreeBound { extra: Vec<Poly2>, expect_equality: bool },
    DiscriminantDivisor { expected: Divisor },
    DiscriminantContains { curves: Vec<Poly2> },
    /// Pullback of the entry web is `c * content * primitive`.
    Pullback { primitive: SymForm, content: Poly2 },
    /// The entry map sends the vertical lines into leaves of `form`.
    ImageWeb { form: SymForm, expected: bool },
    /// `map(u + v, uv) = (f(u) + f(v), f(u) f(v))`.
    Semiconjugacy { map: PlaneMap, f: RatFunc2 },
    /// The pencil `base + lambda * direction` is mapped to itself.
    PencilAction { base: SymForm, direction: SymForm },
    MapEquals { expected: PlaneMap },
    AlgebraicDegree { expected: u32 },
    Monodromy { orbit_sizes: Vec<usize>, group_order: Option<usize> },
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub source: Source,
    pub kind: CheckKind,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub map: Option<PlaneMap>,
    /// Absent for entries that only verify an identity between maps.
    pub web: Option<WebOnP2>,
    pub checks: Vec<Check>,
}

fn check(name: &'static str, source: Source, kind: CheckKind) -> Check {
    Check { name, source, kind }
}

fn p(text: &str) -> Poly2 {
    parse_poly(text).expect("catalog polynomial")
}

fn form(text: &str) -> SymForm {
    parse_form(text).expect("catalog form")
}

fn map(text: &str) -> PlaneMap {
    parse_map(text).expect("catalog map")
}

fn web(w: &SymForm) -> WebOnP2 {
    WebOnP2::new(w).expect("catalog web")
}

/// `(y dx - x dy) ⊠ (p y dx + q x dy)` with map `(x^d / R, y^d / R)`,
/// `R = prod (1 + c_i x^p y^q)`. Requires `l (p + q) <= d`, `gcd(p, q) = 1`.
pub fn weighted_monomial_family(d: u32, p: u32, q: u32, cs: &[Rational]) -> Result<CatalogEntry> {
    let l = cs.len() as u32;
    if d < 2 || p == 0 || q == 0 || l == 0 {
        return Err(WebError::Constraint("need d >= 2, p, q >= 1 and at least one c".into()));
    }
    if p.gcd(&q) != 1 {
        return Err(WebError::Constraint(format!("gcd({p}, {q}) != 1")));
    }
    if l * (p + q) > d {
        return Err(WebError::Constraint(format!("l(p+q) = {} > d = {d}", l * (p + q))));
    }
    if cs.iter().any(Zero::is_zero) {
        return Err(WebError::Constraint("c_i must be nonzero".into()));
    }
    let r = cs.iter().fold(Poly2::one(), |acc, c| &acc * &(&Poly2::one() + &Poly2::monomial(c.clone(), p, q)));
    let phi = PlaneMap::new(
        RatFunc2::new(Poly2::monomial(Rational::one(), d, 0), r.clone())?,
        RatFunc2::new(Poly2::monomial(Rational::one(), 0, d), r)?,
    )?;
    let w = SymForm::one_form(Poly2::y(), -Poly2::x())?
        .superpose(&SymForm::one_form(Poly2::y().scale_i64(p as i64), Poly2::x().scale_i64(q as i64))?);
    let extra = vec![Poly2::x(), Poly2::y()];
    Ok(CatalogEntry {
        name: format!("b-weighted-{d}-{p}-{q}"),
        description: format!("map(x^{d}/R, y^{d}/R), R = {}", phi.f1().denom()),
        map: Some(phi),
        web: Some(web(&w)),
        checks: vec![
            check("invariance", Source::Published, CheckKind::Invariance { expected: true }),
            check("degree", Source::Published, CheckKind::WebDegree { expected: 1 }),
            check("degree-bound", Source::Published, CheckKind::DegreeBound { extra, expect_equality: false }),
            check("degree-formula", Source::Published, CheckKind::DegreeFormula),
        ],
    })
}

/// `(y dx - x dy) ⊠ (y dx + x dy)` with map `(y^d / R, x^d / R)`,
/// `R = prod (1 + c_i xy)`. Requires `2 l <= d`.
pub fn swapped_monomial_family(d: u32, cs: &[Rational]) -> Result<CatalogEntry> {
    let l = cs.len() as u32;
    if d < 2 || l == 0 {
        return Err(WebError::Constraint("need d >= 2 and at least one c".into()));
    }
    if 2 * l > d {
        return Err(WebError::Constraint(format!("2l = {} > d = {d}", 2 * l)));
    }
    if cs.iter().any(Zero::is_zero) {
        return Err(WebError::Constraint("c_i must be nonzero".into()));
    }
    let r = cs.iter().fold(Poly2::one(), |acc, c| &acc * &(&Poly2::one() + &Poly2::monomial(c.clone(), 1, 1)));
    let phi = PlaneMap::new(
        RatFunc2::new(Poly2::monomial(Rational::one(), 0, d), r.clone())?,
        RatFunc2::new(Poly2::monomial(Rational::one(), d, 0), r)?,
    )?;
    let w = form("(y*dx - x*dy)*(y*dx + x*dy)");
    Ok(CatalogEntry {
        name: format!("c-swapped-{d}"),
        description: format!("map(y^{d}/R, x^{d}/R), R = {}", phi.f1().denom()),
        map: Some(phi),
        web: Some(web(&w)),
        checks: vec![
            check("invariance", Source::Published, CheckKind::Invariance { expected: true }),
            check("degree", Source::Derived, CheckKind::WebDegree { expected: 1 }),
            check(
                "degree-bound",
                Source::Published,
                CheckKind::DegreeBound { extra: vec![Poly2::x(), Poly2::y()], expect_equality: false },
            ),
        ],
    })
}

/// `prod (lambda_i y dx + x dy)` with map `(x^d, y^d)`.
pub fn monomial_superposition(d: u32, lambdas: &[Rational]) -> Result<CatalogEntry> {
    if d < 2 || lambdas.is_empty() {
        return Err(WebError::Constraint("need d >= 2 and at least one lambda".into()));
    }
    let mut w = SymForm::one_form(Poly2::y().scale(&lambdas[0]), Poly2::x())?;
    for l in &lambdas[1..] {
        w = w.superpose(&SymForm::one_form(Poly2::y().scale(l), Poly2::x())?);
    }
    let k = lambdas.len();
    let phi = PlaneMap::from_polys(Poly2::monomial(Rational::one(), d, 0), Poly2::monomial(Rational::one(), 0, d))?;
    let lam: Vec<String> = lambdas.iter().map(ToString::to_string).collect();
    Ok(CatalogEntry {
        name: "a-monomial".into(),
        description: format!("superposition of lambda*y*dx + x*dy, lambda in {{{}}}, under {phi}", lam.join(", ")),
        map: Some(phi),
        web: Some(web(&w)),
        checks: vec![
            check("invariance", Source::Published, CheckKind::Invariance { expected: true }),
            check("degree", Source::Derived, CheckKind::WebDegree { expected: k as u32 }),
            check(
                "degree-bound",
                Source::Published,
                CheckKind::DegreeBound { extra: vec![Poly2::x(), Poly2::y()], expect_equality: true },
            ),
            check(
                "discriminant-contains",
                Source::Published,
                CheckKind::DiscriminantContains { curves: vec![Poly2::x(), Poly2::y()] },
            ),
            check("degree-formula", Source::Published, CheckKind::DegreeFormula),
            check(
                "monodromy",
                Source::Trivial,
                CheckKind::Monodromy { orbit_sizes: vec![1; k], group_order: Some(1) },
            ),
        ],
    })
}

fn ueda_entry(name: &str, psi: &str, expected: &str) -> CatalogEntry {
    let z = Vars { first: "z", second: "w" };
    let phi = ueda_endomorphism(&parse_ratfunc_with(psi, z).expect("catalog psi")).expect("ueda map");
    CatalogEntry {
        name: name.into(),
        description: format!("dual-conic web p*ds^2 - s*ds*dp + dp^2 under the quotient of psi(z) = {psi}"),
        map: Some(phi),
        web: Some(web(&form("y*dx^2 - x*dx*dy + dy^2"))),
        checks: vec![
            check("ueda-map", Source::Derived, CheckKind::MapEquals { expected: map(expected) }),
            check("algebraic-degree", Source::Trivial, CheckKind::AlgebraicDegree { expected: 2 }),
            check("invariance", Source::Published, CheckKind::Invariance { expected: true }),
            check("degree", Source::Derived, CheckKind::WebDegree { expected: 0 }),
            check("degree-formula", Source::Published, CheckKind::DegreeFormula),
            check(
                "monodromy",
                Source::Published,
                CheckKind::Monodromy { orbit_sizes: vec![2], group_order: Some(2) },
            ),
        ],
    }
}

/// `f(x) = -(x/27) ((x + 9)/(x + 1))^2`.
pub fn six_web_factor() -> RatFunc2 {
    parse_ratfunc("-x*(x+9)^2/(27*(x+1)^2)").expect("f")
}

/// The quotient map as displayed in the literature.
pub fn twelve_web_map_published() -> PlaneMap {
    map("map(-(y^2*x + 14*y^2 + 126*y + 113*x*y + 81*x + 18*x^2 + x^3 + 2*y*x^2)/(27*(x+y+1)^2), \
         y/3^6*((9*x+y+81)/(x+y+1))^2)")
}

/// The quotient map recomputed by symmetrization.
pub fn twelve_web_map_corrected() -> PlaneMap {
    map("map(-(x^3 + 18*x^2 + 81*x + 2*y*x^2 + 114*x*y + 288*y + y^2*x + 32*y^2)/(27*(x+y+1)^2), \
         y/3^6*((9*x+y+81)/(x+y+1))^2)")
}

/// The whole catalog, ordered by name.
pub fn catalog() -> Vec<CatalogEntry> {
    let q = |n: i64| rat(n);
    let pencil_map = map("map(x^2, y^2)");
    let dual = form("(x - y*x^2)*dy^2 + 2*x*y^2*dx*dy - y^3*dx^2");
    let pi_odd = map("map((x+y)^2, (x-y)^2)");
    let pi_even = map("map(x*y + 1/(x*y), x/y + y/x)");
    let f = six_web_factor();
    let six_map = PlaneMap::new(f.clone(), RatFunc2::new(f.numer().swap_xy(), f.denom().swap_xy()).expect("f(y)"))
        .expect("six-web map");
    let six_base = form("y^3*(1+y)^4*dx^6");
    let six_dir = form("x^3*(1+x)^4*dy^6");

    let mut entries = vec![
        CatalogEntry {
            name: "a-pencil".into(),
            description: "pencil of lines through the origin under map(x^2, y^2)".into(),
            map: Some(pencil_map.clone()),
            web: Some(web(&form("y*dx - x*dy"))),
            checks: vec![
                check("invariance", Source::Published, CheckKind::Invariance { expected: true }),
                check("degree", Source::Trivial, CheckKind::WebDegree { expected: 0 }),
            ],
        },
        monomial_superposition(2, &[q(2), q(3), q(5)]).expect("valid"),
        weighted_monomial_family(3, 1, 1, &[q(1)]).expect("valid"),
        swapped_monomial_family(4, &[q(1)]).expect("valid"),
        ueda_entry("d-ueda-square", "z^2", "map(x^2 - 2*y, y^2)"),
        ueda_entry("d-ueda-chebyshev", "z^2 - 2", "map(x^2 - 2*y - 4, y^2 - 2*x^2 + 4*y + 4)"),
        CatalogEntry {
            name: "e-dual-web".into(),
            description: "web dual to a nodal cubic; no endomorphism preserves it".into(),
            map: Some(pencil_map),
            web: Some(web(&dual)),
            checks: vec![
                check(
                    "discriminant-divisor",
                    Source::Published,
                    CheckKind::DiscriminantDivisor {
                        expected: Divisor::from_components([(Poly2::x(), 1), (Poly2::y(), 3)]),
                    },
                ),
                check("invariance", Source::Published, CheckKind::Invariance { expected: false }),
                check("degree-formula", Source::Published, CheckKind::DegreeFormula),
            ],
        },
        CatalogEntry {
            name: "f-quotient-odd".into(),
            description: "quotient map((x+y)^2, (x-y)^2) against x*dy^2 - y*dx^2".into(),
            map: Some(pi_odd),
            web: Some(web(&form("x*dy^2 - y*dx^2"))),
            checks: vec![
                check(
                    "pullback",
                    Source::Published,
                    CheckKind::Pullback { primitive: form("dx*dy"), content: p("(x+y)^2*(x-y)^2") },
                ),
                check(
                    "image-web",
                    Source::Published,
                    CheckKind::ImageWeb { form: form("x*dy^2 - y*dx^2"), expected: true },
                ),
            ],
        },
        CatalogEntry {
            name: "g-quotient-even".into(),
            description: "quotient map(xy + 1/(xy), x/y + y/x) against the image of the vertical foliation".into(),
            map: Some(pi_even),
            web: Some(web(&form("x*(x-1)*dx^2 + 2*x*y*dx*dy - y*(y-1)*dy^2"))),
            checks: vec![
                check(
                    "image-web",
                    Source::Published,
                    CheckKind::ImageWeb { form: form("x*(x-1)*dx^2 + 2*x*y*dx*dy - y*(y-1)*dy^2"), expected: true },
                ),
                check(
                    "image-web-corrected",
                    Source::Derived,
                    CheckKind::ImageWeb { form: form("(x^2-4)*dy^2 - (y^2-4)*dx^2"), expected: true },
                ),
            ],
        },
        CatalogEntry {
            name: "h-six-web".into(),
            description: format!("y^3(1+y)^4 dx^6 + lambda x^3(1+x)^4 dy^6 under (f(x), f(y)), f = {f}"),
            map: Some(six_map),
            web: Some(web(&six_base.add(&six_dir.scale_rational(&q(2))).expect("same order"))),
            checks: vec![
                check("invariance", Source::Published, CheckKind::Invariance { expected: true }),
                check(
                    "pencil-action",
                    Source::Published,
                    CheckKind::PencilAction { base: six_base, direction: six_dir },
                ),
            ],
        },
        CatalogEntry {
            name: "i-semiconjugacy".into(),
            description: "quotient of (f(x), f(y)) by the coordinate swap".into(),
            map: None,
            web: None,
            checks: vec![
                check(
                    "semiconjugacy",
                    Source::Published,
                    CheckKind::Semiconjugacy { map: twelve_web_map_published(), f: f.clone() },
                ),
                check(
                    "semiconjugacy-corrected",
                    Source::Derived,
                    CheckKind::Semiconjugacy { map: twelve_web_map_corrected(), f },
                ),
            ],
        },
        CatalogEntry {
            name: "j-product".into(),
            description: "dx*dy under map(x^2 + 1, y^2 + 1)".into(),
            map: Some(map("map(x^2 + 1, y^2 + 1)")),
            web: Some(web(&form("dx*dy"))),
            checks: vec![
                check("invariance", Source::Published, CheckKind::Invariance { expected: true }),
                check("degree", Source::Trivial, CheckKind::WebDegree { expected: 0 }),
                check("degree-formula", Source::Published, CheckKind::DegreeFormula),
                check(
                    "degree-bound",
                    Source::Published,
                    CheckKind::DegreeBound { extra: vec![], expect_equality: false },
                ),
                check(
                    "monodromy",
                    Source::Trivial,
                    CheckKind::Monodromy { orbit_sizes: vec![1, 1], group_order: Some(1) },
                ),
            ],
        },
    ];
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    entries
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub source: Source,
    pub pass: bool,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub entries: Vec<EntryReport>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn find(&self, entry: &str, check: &str) -> Option<&CheckResult> {
        self.entries.iter().find(|e| e.name == entry)?.checks.iter().find(|c| c.check == check)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let rows: Vec<[String; 5]> = self
            .entries
            .iter()
            .flat_map(|e| {
                e.checks.iter().map(move |c| {
                    let value = match (&c.error, c.millis) {
                        (Some(err), _) => format!("error: {err}"),
                        (None, Some(ms)) => format!("{} ({ms} ms)", c.value),
                        (None, None) => c.value.clone(),
                    };
                    [
                        e.name.clone(),
                        c.check.clone(),
                        c.source.to_string(),
                        if c.pass { "PASS" } else { "FAIL" }.to_string(),
                        value,
                    ]
                })
            })
            .collect();
        let header = ["entry", "check", "source", "result", "value"].map(String::from);
        let mut widths = header.clone().map(|h| h.chars().count());
        for r in &rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        for r in std::iter::once(&header).chain(&rows) {
            let cells: Vec<String> = r[..4].iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            writeln!(out, "{}  {}", cells.join("  "), r[4]).expect("string write");
        }
        writeln!(out, "seed {}: {} passed, {} failed", self.seed, self.passed, self.failed).expect("string write");
        out
    }
}

fn need_map(entry: &CatalogEntry) -> Result<&PlaneMap> {
    entry.map.as_ref().ok_or_else(|| WebError::Constraint("entry has no map".into()))
}

fn need_web(entry: &CatalogEntry) -> Result<&WebOnP2> {
    entry.web.as_ref().ok_or_else(|| WebError::Constraint("entry has no web".into()))
}

fn run_check(entry: &CatalogEntry, kind: &CheckKind, seed: u64) -> Result<(bool, String)> {
    match kind {
        CheckKind::Invariance { expected } => {
            let c = planemaps::is_invariant_web(need_map(entry)?, &need_web(entry)?.chart1)?;
            let value = match &c {
                Some(c) => format!("invariant, c = {c}"),
                None => "not invariant".into(),
            };
            Ok((c.is_some() == *expected, value))
        }
        CheckKind::WebDegree { expected } => {
            let d = webgeom::web_degree(need_web(entry)?, seed)?;
            Ok((d == *expected, format!("deg = {d}")))
        }
        CheckKind::DegreeFormula => {
            let r = webgeom::discriminant_degree_check(need_web(entry)?, seed)?;
            Ok((
                r.pass,
                format!(
                    "deg = {}, disc degree {} (affine {} + infinity {}), predicted {}",
                    r.degree, r.computed, r.affine, r.at_infinity, r.predicted
                ),
            ))
        }
        CheckKind::DegreeBound { extra, expect_equality } => {
            let r = webgeom::verify_degree_bound(need_map(entry)?, need_web(entry)?, extra, seed)?;
            let within = r.factors.iter().all(|f| f.m <= f.bound);
            let pass = r.pass && within && r.equality == *expect_equality && r.equality_consistent != Some(false);
            let factors: Vec<String> =
                r.factors.iter().map(|f| format!("{}: m = {} <= {}", f.factor, f.m, f.bound)).collect();
            Ok((pass, format!("deg = {} <= k = {}; {}", r.degree, r.k, factors.join(", "))))
        }
        CheckKind::DiscriminantDivisor { expected } => {
            let d = need_web(entry)?.chart1.discriminant_divisor()?;
            Ok((&d == expected, format!("{d}")))
        }
        CheckKind::DiscriminantContains { curves } => {
            let d = need_web(entry)?.chart1.discriminant_divisor()?;
            Ok((curves.iter().all(|c| d.multiplicity(c) > 0), format!("{d}")))
        }
        CheckKind::Pullback { primitive, content } => {
            let w = need_web(entry)?.chart1.primitive_part()?;
            let pb = planemaps::pullback(need_map(entry)?, &w)?;
            let Some(c) = planemaps::proportionality(&pb.primitive, primitive) else {
                return Ok((false, format!("primitive part {}", pb.primitive)));
            };
            let ratio = RatFunc2::new(pb.content.scale(&c), &pb.denominator * content)?;
            Ok(match ratio.constant_value() {
                Some(k) => (true, format!("{k} * ({content}) * ({primitive})")),
                None => (false, format!("content {} / {}", pb.content, pb.denominator)),
            })
        }
        CheckKind::ImageWeb { form, expected } => {
            let r = planemaps::check_image_web(need_map(entry)?, form)?;
            Ok((r == *expected, if r { "image web matches".into() } else { "image web differs".into() }))
        }
        CheckKind::Semiconjugacy { map, f } => {
            let (s, pr) = (&RatFunc2::x() + &RatFunc2::y(), &RatFunc2::x() * &RatFunc2::y());
            let fy = RatFunc2::new(f.numer().swap_xy(), f.denom().swap_xy())?;
            let targets = [&f.clone() + &fy, f * &fy];
            let mut notes = Vec::new();
            for (i, (c, t)) in [map.f1(), map.f2()].into_iter().zip(&targets).enumerate() {
                let residual = &c.compose(&s, &pr) - t;
                if !residual.is_zero() {
                    notes.push(format!("component {} residual {residual}", i + 1));
                }
            }
            Ok(if notes.is_empty() { (true, "exact identity".into()) } else { (false, notes.join("; ")) })
        }
        CheckKind::PencilAction { base, direction } => {
            let pencil = planemaps::FormPencil { base: base.clone(), direction: direction.clone() };
            let a = planemaps::pencil_pullback(need_map(entry)?, &pencil)?;
            Ok((true, format!("{}, member constant {}", a.describe(), a.matrix[0][0])))
        }
        CheckKind::MapEquals { expected } => {
            let m = need_map(entry)?;
            Ok((m == expected, m.to_string()))
        }
        CheckKind::AlgebraicDegree { expected } => {
            let d = planemaps::algebraic_degree(need_map(entry)?)?;
            Ok((d.d == *expected, format!("d = {}, entropy {}", d.d, d.entropy)))
        }
        CheckKind::Monodromy { orbit_sizes, group_order } => {
            let r = web_monodromy(&need_web(entry)?.chart1, seed)?;
            let sizes = r.orbit_sizes();
            let order = r.group_order.map_or("> cap".to_string(), |o| o.to_string());
            let pass = &sizes == orbit_sizes && r.group_order == *group_order && r.infinity_consistent;
            Ok((
                pass,
                format!(
                    "orbits {:?}, order {order}, {}",
                    sizes,
                    if r.transitive { "transitive" } else { "intransitive" }
                ),
            ))
        }
    }
}

fn verify_entry(entry: &CatalogEntry, seed: u64, timings: bool) -> EntryReport {
    let checks = entry
        .checks
        .iter()
        .map(|c| {
            let start = Instant::now();
            let outcome = run_check(entry, &c.kind, seed);
            let millis = timings.then(|| start.elapsed().as_millis() as u64);
            match outcome {
                Ok((pass, value)) => CheckResult { check: c.name.into(), source: c.source, pass, value, error: None, millis },
                Err(e) => CheckResult {
                    check: c.name.into(),
                    source: c.source,
                    pass: false,
                    value: String::new(),
                    error: Some(e.to_string()),
                    millis,
                },
            }
        })
        .collect();
    EntryReport { name: entry.name.clone(), checks }
}

/// Entries matching `selector`: an exact name or its letter prefix
/// (`"d"` selects every `d-...` entry).
pub fn select<'a>(entries: &'a [CatalogEntry], selector: &str) -> Result<Vec<&'a CatalogEntry>> {
    let found: Vec<&CatalogEntry> = entries
        .iter()
        .filter(|e| e.name == selector || e.name.split('-').next() == Some(selector))
        .collect();
    if found.is_empty() {
        return Err(WebError::UnknownEntry(selector.into()));
    }
    Ok(found)
}

/// Run every check of the selected entries. Check failures and errors are
/// recorded in the report; only unknown names are errors.
pub fn catalog_verify(selection: &[&str], seed: u64) -> Result<Report> {
    catalog_verify_with(selection, seed, false)
}

/// As [`catalog_verify`], optionally recording wall-clock time per check
/// (which makes reports differ between runs).
pub fn catalog_verify_with(selection: &[&str], seed: u64, timings: bool) -> Result<Report> {
    let all = catalog();
    let mut entries: Vec<&CatalogEntry> = Vec::new();
    for s in selection {
        for e in select(&all, s)? {
            if !entries.iter().any(|x| x.name == e.name) {
                entries.push(e);
            }
        }
    }
    let mut reports: Vec<EntryReport> = entries.par_iter().map(|e| verify_entry(e, seed, timings)).collect();
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = reports.iter().flat_map(|r| &r.checks).filter(|c| c.pass).count();
    let failed = reports.iter().flat_map(|r| &r.checks).count() - passed;
    Ok(Report { seed, entries: reports, passed, failed })
}

/// Names of all entries.
pub fn names() -> Vec<String> {
    catalog().into_iter().map(|e| e.name).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ueda::symmetrize;

    #[test]
    fn constructors() {
        let e = weighted_monomial_family(3, 1, 1, &[rat(1)]).unwrap();
        assert_eq!(e.map.unwrap(), map("map(x^3/(1+x*y), y^3/(1+x*y))"));
        assert!(matches!(weighted_monomial_family(2, 1, 1, &[rat(1), rat(1)]), Err(WebError::Constraint(_))));
        assert!(matches!(weighted_monomial_family(6, 2, 4, &[rat(1)]), Err(WebError::Constraint(_))));
        let e = swapped_monomial_family(4, &[rat(1)]).unwrap();
        assert_eq!(e.map.unwrap(), map("map(y^4/(1+x*y), x^4/(1+x*y))"));
        assert!(matches!(swapped_monomial_family(3, &[rat(1), rat(2)]), Err(WebError::Constraint(_))));
    }

    #[test]
    fn corrected_quotient_is_the_symmetrization() {
        let f = six_web_factor();
        let fy = RatFunc2::new(f.numer().swap_xy(), f.denom().swap_xy()).unwrap();
        let m = twelve_web_map_corrected();
        assert_eq!(&symmetrize(&(&f + &fy)).unwrap(), m.f1());
        assert_eq!(&symmetrize(&(&f * &fy)).unwrap(), m.f2());
        assert_ne!(twelve_web_map_published().f1(), m.f1());
        assert_eq!(twelve_web_map_published().f2(), m.f2());
    }

    #[test]
    fn selection() {
        assert_eq!(catalog_verify(&[], 1).unwrap().entries.len(), 0);
        assert_eq!(select(&catalog(), "d").unwrap().len(), 2);
        assert!(matches!(catalog_verify(&["zz"], 1), Err(WebError::UnknownEntry(_))));
        let names = names();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn negative_control_reported() {
        let r = catalog_verify(&["e"], 1).unwrap();
        let inv = r.find("e-dual-web", "invariance").unwrap();
        assert!(inv.pass);
        assert_eq!(inv.value, "not invariant");
        assert!(r.all_pass());
    }

    #[test]
    fn catalog_objects_round_trip() {
        for e in catalog() {
            if let Some(m) = &e.map {
                assert_eq!(&parse_map(&m.to_string()).unwrap(), m, "{}", e.name);
            }
            if let Some(w) = &e.web {
                assert_eq!(parse_form(&w.chart1.to_string()).unwrap(), w.chart1, "{}", e.name);
            }
        }
    }
}
