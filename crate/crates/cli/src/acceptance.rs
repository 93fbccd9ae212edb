//! The acceptance table: eleven criteria, each run once per seed.

use std::fmt::Display;
use std::time::{Duration, Instant};

use serde::Serialize;

use pdlab::catalog::{graph_variety, standard_catalog, ParamVariety};
use pdlab::clifford::{clifford_module_from_ii, CliffordAlgebra};
use pdlab::defects::{dual_dim, dual_second_ff, gauss_defect, rank_range, secant_dim, tangential_dim};
use pdlab::exact::{binomial, in_span, monomials_of_degree, MPoly, MatRat, Sampler};
use pdlab::jets::{in_prolongation, jet_tower, second_ff, second_ff_random, QuadricSystem, MAX_ORDER};
use pdlab::matspaces::{
    certify_constant_rank, exemplar, graded_algebra_space, odd_rank_obstruction, rank_census,
    split_type, support_equivalence, transport, Certification, CertifyOptions, MatrixSpace,
};
use pdlab::osc::{linear_syzygies, monge_check, osculating_space, MongeVerdict, OscReport};
use pdlab::{Error, Result};

use crate::load_variety;

/// Items known to fail, by criterion and item name. The harness still
/// reports them as failures.
pub const KNOWN_DEVIATIONS: &[(usize, &str, &str)] = &[
    (
        7,
        "A_III verbatim rank 6",
        "the printed A_III array is not of bounded rank; the support-identical graded:5,2 space certifies",
    ),
    (
        10,
        "veronese:2,2 holds",
        "|II| = S²T* has linear syzygies and I_2 has 6 quadrics, so order-4 osc dim is 5, not a − 1",
    ),
];

pub const TITLES: [&str; 11] = [
    "secant defect table",
    "dual defect table",
    "dual second fundamental form has constant rank",
    "tangential and secant dimensions coincide",
    "Gauss defects",
    "fundamental form filtrations and prolongation",
    "constant-rank matrix spaces",
    "Clifford algebras and the canonical module",
    "osculating hypersurface counts",
    "generalized Monge system",
    "linear syzygies of |II|",
];

const ITEM_BUDGET: Duration = Duration::from_secs(30);
const MATSPACE_BUDGET: Duration = Duration::from_secs(120);

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    /// a failure listed in [`KNOWN_DEVIATIONS`]
    pub documented: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeedRun {
    pub seed: u64,
    pub pass: bool,
    pub items: Vec<Item>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub runs: Vec<SeedRun>,
}

impl CriterionResult {
    /// Every failing item is a documented deviation.
    pub fn only_documented_failures(&self) -> bool {
        self.runs.iter().flat_map(|r| &r.items).all(|i| i.pass || i.documented)
    }

    pub fn elapsed(&self) -> Duration {
        self.runs.iter().map(|r| r.elapsed).sum()
    }

    pub fn summary_line(&self) -> String {
        let seeds: Vec<String> = self.runs.iter().map(|r| r.seed.to_string()).collect();
        let items: usize = self.runs.iter().map(|r| r.items.len()).sum();
        let passed: usize = self.runs.iter().flat_map(|r| &r.items).filter(|i| i.pass).count();
        let mut line = format!(
            "criterion {:>2} [{}] seeds {}: {} ({passed}/{items} items)",
            self.id,
            self.title,
            seeds.join(","),
            if self.pass { "PASS" } else { "FAIL" },
        );
        if !self.pass && self.only_documented_failures() {
            line.push_str(" documented deviation");
        }
        line
    }
}

#[derive(Clone, Debug)]
pub struct AcceptanceConfig {
    pub seeds: Vec<u64>,
    pub height: i64,
    pub retries: usize,
    /// criteria to run; empty means all
    pub criteria: Vec<usize>,
}

pub fn run_acceptance(cfg: &AcceptanceConfig) -> Vec<CriterionResult> {
    (1..=TITLES.len())
        .filter(|id| cfg.criteria.is_empty() || cfg.criteria.contains(id))
        .map(|id| run_criterion(id, cfg))
        .collect()
}

pub fn run_criterion(id: usize, cfg: &AcceptanceConfig) -> CriterionResult {
    let runs: Vec<SeedRun> = cfg
        .seeds
        .iter()
        .map(|&seed| {
            let mut s = Sampler::with_params(seed, cfg.height, cfg.retries);
            let start = Instant::now();
            let mut items = match id {
                1 => c1_secant(&mut s),
                2 => c2_dual(&mut s),
                3 => c3_dual_ff(&mut s),
                4 => c4_tau_sigma(&mut s),
                5 => c5_gauss(&mut s),
                6 => c6_filtrations(&mut s),
                7 => c7_matspaces(&mut s),
                8 => c8_clifford(&mut s),
                9 => c9_osc(&mut s),
                10 => c10_monge(&mut s),
                11 => c11_syzygies(&mut s),
                _ => vec![fail_item("criterion", "known id", format!("unknown criterion {id}"))],
            };
            let elapsed = start.elapsed();
            if id == 7 {
                items.push(Item {
                    name: "total time".into(),
                    expected: format!("< {} s", MATSPACE_BUDGET.as_secs()),
                    observed: if elapsed < MATSPACE_BUDGET { "within budget".into() } else { "over budget".into() },
                    pass: elapsed < MATSPACE_BUDGET,
                    documented: false,
                    elapsed,
                });
            }
            for it in &mut items {
                it.documented = !it.pass
                    && KNOWN_DEVIATIONS.iter().any(|(c, name, _)| *c == id && *name == it.name);
            }
            SeedRun { seed, pass: items.iter().all(|i| i.pass), items, elapsed }
        })
        .collect();
    CriterionResult { id, title: TITLES[id - 1], pass: runs.iter().all(|r| r.pass), runs }
}

fn fail_item(name: impl Into<String>, expected: impl Display, observed: impl Display) -> Item {
    Item {
        name: name.into(),
        expected: expected.to_string(),
        observed: observed.to_string(),
        pass: false,
        documented: false,
        elapsed: Duration::ZERO,
    }
}

/// Runs `f` under the per-item budget; an error is a failed observation.
fn check<T>(
    name: impl Into<String>,
    expected: impl Display,
    f: impl FnOnce() -> Result<T>,
    show: impl FnOnce(&T) -> (String, bool),
) -> Item {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let (observed, ok) = match &out {
        Ok(v) => show(v),
        Err(e) => (format!("error: {e}"), false),
    };
    let in_time = elapsed < ITEM_BUDGET;
    Item {
        name: name.into(),
        expected: expected.to_string(),
        observed: if in_time { observed } else { format!("{observed} (over time budget)") },
        pass: ok && in_time,
        documented: false,
        elapsed,
    }
}

fn variety(spec: &str) -> Result<ParamVariety> {
    load_variety(spec)
}

fn random_form(n: usize, d: usize, s: &mut Sampler) -> MPoly {
    let mut p = MPoly::zero(n);
    for m in monomials_of_degree(n, d) {
        p.add_term(m, s.rat());
    }
    p
}

fn random_symmetric(n: usize, s: &mut Sampler) -> MatRat {
    let b = MatRat::from_fn(n, n, |_, _| s.rat());
    b.add(&b.transpose())
}

/// Degenerate secant cases: spec, `dim σ`, `δσ`.
const SECANT_CASES: [(&str, usize, usize); 7] = [
    ("segre:2,2", 7, 2),
    ("veronese:2,2", 4, 1),
    ("grassmannian:2,6", 13, 4),
    ("severi:1", 4, 1),
    ("severi:2", 7, 2),
    ("severi:4", 13, 4),
    ("severi:8", 25, 8),
];

fn c1_secant(s: &mut Sampler) -> Vec<Item> {
    SECANT_CASES
        .iter()
        .map(|&(spec, dim, defect)| {
            let mut s = s.fork();
            check(
                spec,
                format!("dim σ {dim}, δσ {defect}"),
                || {
                    let x = variety(spec)?;
                    let d = secant_dim(&x, 2, &mut s)?;
                    Ok((d, (2 * x.dim() + 1).saturating_sub(d)))
                },
                |&(d, dd)| (format!("dim σ {d}, δσ {dd}"), d == dim && dd == defect),
            )
        })
        .collect()
}

fn c2_dual(s: &mut Sampler) -> Vec<Item> {
    // spec, expected dim X*, expected δ*
    let cases: [(&str, Option<usize>, Option<usize>); 5] = [
        ("segre:1,2", Some(3), None),
        ("segre:1,3", None, Some(2)),
        ("grassmannian:2,5", Some(6), None),
        ("grassmannian:2,6", None, Some(0)),
        ("segre:1,1", Some(2), None),
    ];
    let mut items = Vec::new();
    for (spec, dim, defect) in cases {
        let mut s = s.fork();
        let expected = match (dim, defect) {
            (Some(d), _) => format!("dim X* {d}"),
            (_, Some(d)) => format!("δ* {d}"),
            _ => unreachable!(),
        };
        let start = Instant::now();
        let res = variety(spec).and_then(|x| Ok((dual_dim(&x, &mut s)?, x)));
        let elapsed = start.elapsed();
        let (dd, x) = match res {
            Ok(v) => v,
            Err(e) => {
                items.push(fail_item(spec, expected, format!("error: {e}")));
                continue;
            }
        };
        let in_time = elapsed < ITEM_BUDGET;
        let value_ok = dim.is_none_or(|d| d == dd.dim) && defect.is_none_or(|d| d == dd.defect);
        let n = x.dim();
        let mk = |name: String, expected: String, observed: String, pass: bool| Item {
            name,
            expected,
            observed,
            pass,
            documented: false,
            elapsed,
        };
        items.push(mk(
            spec.to_string(),
            expected,
            format!("dim X* {}, δ* {}", dd.dim, dd.defect),
            value_ok && in_time,
        ));
        items.push(mk(
            format!("{spec} Landman parity"),
            "n − δ* even".into(),
            format!("n − δ* = {}", n as i64 - dd.defect as i64),
            (n as i64 - dd.defect as i64) % 2 == 0,
        ));
        items.push(mk(
            format!("{spec} δ* ≤ a − 1"),
            format!("≤ {}", x.codim() as i64 - 1),
            dd.defect.to_string(),
            dd.defect < x.codim(),
        ));
        items.push(mk(
            format!("{spec} methods agree"),
            "equal".into(),
            format!("{} / {}", dd.method_a, dd.method_b),
            dd.method_a == dd.method_b,
        ));
    }
    items
}

fn c3_dual_ff(s: &mut Sampler) -> Vec<Item> {
    let mut items = Vec::new();
    for (spec, pdim, rank) in [("grassmannian:2,5", Some(2), 4), ("segre:1,3", None, 2)] {
        let mut s = s.fork();
        let expected = match pdim {
            Some(p) => format!("projective dim {p}, rank {rank} at 100 combinations"),
            None => format!("rank {rank} at 100 combinations"),
        };
        items.push(check(
            spec,
            expected,
            || {
                let x = variety(spec)?;
                let p = x.random_general_point(&mut s)?;
                let d = dual_second_ff(&x, &p, &mut s)?;
                let range = rank_range(&d.system, &mut s, 100);
                Ok((d.system.span_dim() as i64 - 1, range))
            },
            |&(pd, (lo, hi))| {
                let ok = pdim.is_none_or(|p| p == pd) && lo == rank && hi == rank;
                (format!("projective dim {pd}, ranks {lo}..={hi}"), ok)
            },
        ));
    }
    items
}

fn c4_tau_sigma(s: &mut Sampler) -> Vec<Item> {
    SECANT_CASES
        .iter()
        .map(|&(spec, _, _)| {
            let mut s = s.fork();
            check(
                spec,
                "dim τ = dim σ, methods agree",
                || {
                    let x = variety(spec)?;
                    let sigma = secant_dim(&x, 2, &mut s.fork())?;
                    let tau = tangential_dim(&x, &mut s.fork())?;
                    Ok((sigma, tau))
                },
                |(sigma, tau)| {
                    (
                        format!("dim σ {sigma}, dim τ {} ({} / {})", tau.dim, tau.method_a, tau.method_b),
                        tau.dim == *sigma && tau.method_a == tau.method_b,
                    )
                },
            )
        })
        .collect()
}

fn c5_gauss(s: &mut Sampler) -> Vec<Item> {
    let mut items: Vec<Item> = standard_catalog()
        .into_iter()
        .filter(ParamVariety::expected_smooth)
        .map(|x| {
            let mut s = s.fork();
            check(
                x.name().to_string(),
                "0 at 5 points",
                || (0..5).map(|_| Ok(gauss_defect(&x, &mut s.fork())?.defect)).collect::<Result<Vec<_>>>(),
                |ds| (format!("{ds:?}"), ds.iter().all(|&d| d == 0)),
            )
        })
        .collect();
    for spec in ["cone:veronese:1,2", "tandev:veronese:1,3"] {
        let mut s = s.fork();
        items.push(check(
            spec,
            "1",
            || gauss_defect(&variety(spec)?, &mut s),
            |g| (format!("{} ({} / {})", g.defect, g.method_a, g.method_b), g.defect == 1),
        ));
    }
    items
}

fn filtration_item(spec: &str, order: usize, expected: Vec<usize>, s: &mut Sampler) -> Item {
    check(
        spec,
        format!("{expected:?}"),
        || {
            let x = variety(spec)?;
            let p = x.random_general_point(s)?;
            Ok(jet_tower(&x, &p, order)?.filtration())
        },
        |f| (format!("{f:?}"), *f == expected),
    )
}

fn c6_filtrations(s: &mut Sampler) -> Vec<Item> {
    let mut items = Vec::new();
    for (n, d) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let order = (d + 1).min(MAX_ORDER);
        let expected: Vec<usize> = std::iter::once(n)
            .chain((2..=order).map(|k| if k <= d { binomial(n + k - 1, k) } else { 0 }))
            .collect();
        items.push(filtration_item(&format!("veronese:{n},{d}"), order, expected, &mut s.fork()));
    }
    items.push(filtration_item("grassmannian:3,6", 3, vec![9, 9, 1], &mut s.fork()));
    items.push(filtration_item("spinor:5", 3, vec![10, 5, 0], &mut s.fork()));
    for x in standard_catalog() {
        let mut s = s.fork();
        items.push(check(
            format!("{} prolongation", x.name()),
            "|FF³| ⊆ |II|⁽¹⁾",
            || {
                let p = x.random_general_point(&mut s)?;
                let tower = jet_tower(&x, &p, 3)?;
                let ii = tower.second_ff();
                let ff3 = tower.ff(3);
                Ok((ff3.len(), ff3.iter().filter(|c| in_prolongation(&ii, c)).count()))
            },
            |&(total, inside)| (format!("{inside}/{total} cubics inside"), inside == total),
        ));
    }
    items
}

fn certification_item(name: &str, space: Result<MatrixSpace>, r: usize, s: &mut Sampler) -> Item {
    check(
        name,
        format!("certified rank {r}, failure bound < 2^-40"),
        || certify_constant_rank(&space?, r, &CertifyOptions::default(), s),
        |c| match c {
            Certification::Certified(cert) => {
                let bound = cert.failure_bound_log2.unwrap_or(i64::MIN);
                (format!("certified, log2 bound {bound}"), bound < -40)
            }
            Certification::Refuted(_) => ("refuted".into(), false),
        },
    )
}

fn c7_matspaces(s: &mut Sampler) -> Vec<Item> {
    let mut items = Vec::new();
    for (name, r) in [("B_I", 2), ("C_II", 2), ("A_I", 4), ("A_II", 4)] {
        items.push(certification_item(&format!("{name} rank {r}"), exemplar(name), r, &mut s.fork()));
    }
    items.push(certification_item("A_III verbatim rank 6", exemplar("A_III"), 6, &mut s.fork()));
    let transported = (|| {
        let a = exemplar("A_III")?;
        let g = graded_algebra_space(5, 2)?;
        let eq = support_equivalence(&a, &g).ok_or_else(|| Error::Internal("no support match".into()))?;
        transport(&g, &eq, "A_III*")
    })();
    items.push(certification_item("A_III as graded:5,2 rank 6", transported, 6, &mut s.fork()));
    for name in ["C_IV", "A_IV"] {
        let mut s = s.fork();
        let start = Instant::now();
        let census = exemplar(name).map(|x| (rank_census(&x, 200, &mut s), x));
        let (census, space) = match census {
            Ok(v) => v,
            Err(e) => {
                items.push(fail_item(name, "single census rank", format!("error: {e}")));
                continue;
            }
        };
        let ranks: Vec<usize> = census.keys().copied().collect();
        let mut it = match ranks.as_slice() {
            [r] => certification_item(&format!("{name} census rank {r}"), Ok(space), *r, &mut s),
            _ => fail_item(name, "single census rank", format!("census {census:?}")),
        };
        it.elapsed = start.elapsed();
        items.push(it);
    }
    let mut sp = s.fork();
    items.push(check(
        "split_type(4,7)",
        "dim 4 = m − r + 1, certified rank 4",
        || {
            let x = split_type(4, 7, &mut sp)?;
            let c = certify_constant_rank(&x, 4, &CertifyOptions::default(), &mut sp)?;
            Ok((x.dim(), c.is_certified()))
        },
        |&(d, ok)| (format!("dim {d}, certified {ok}"), d == 4 && ok),
    ));
    let mut so = s.fork();
    items.push(check(
        "odd_rank_obstruction(5,3)",
        "200/200 refuted",
        || odd_rank_obstruction(5, 3, 200, &mut so),
        |r| (format!("{}/{} refuted", r.refuted, r.trials), r.all_refuted()),
    ));
    items
}

fn c8_clifford(s: &mut Sampler) -> Vec<Item> {
    let mut items = Vec::new();
    for m in [2, 4, 6, 8] {
        items.push(check(
            format!("relation m = {m}"),
            "0 failing pairs",
            || Ok(CliffordAlgebra::hyperbolic(m)?.relation_failures().len()),
            |&k| (format!("{k} failing pairs"), k == 0),
        ));
    }
    let mut sp = s.fork();
    items.push(check(
        "ρ preserves Q",
        "50/50 even products",
        || {
            let cl = CliffordAlgebra::hyperbolic(6)?;
            let mut good = 0;
            for i in 0..50 {
                let g = cl.random_pin(2 + 2 * (i % 2), &mut sp)?;
                let r = cl.rho_matrix(&g)?;
                if r.transpose().mul(cl.form()).mul(&r) == *cl.form() {
                    good += 1;
                }
            }
            Ok(good)
        },
        |&g| (format!("{g}/50"), g == 50),
    ));
    let mut inclusion = (0, 0);
    for (spec, ker, module) in [("severi:4", 3, 4), ("severi:8", 7, 8)] {
        let mut s = s.fork();
        let item = check(
            format!("clifford module {spec}"),
            format!("10/10 with relation, ker {ker}, module {module}"),
            || {
                let x = variety(spec)?;
                (0..10)
                    .map(|_| clifford_module_from_ii(&second_ff_random(&x, &mut s)?, &mut s))
                    .collect::<Result<Vec<_>>>()
            },
            |runs| {
                for m in runs {
                    inclusion.1 += 1;
                    if m.ker_ii_v.iter().all(|w| in_span(&m.p_sing, w)) {
                        inclusion.0 += 1;
                    }
                }
                let good = runs
                    .iter()
                    .filter(|m| {
                        m.relation_failures().is_empty()
                            && m.ker_ii_v.len() == ker
                            && m.module_basis.len() == module
                    })
                    .count();
                (format!("{good}/{}", runs.len()), good == 10)
            },
        );
        items.push(item);
    }
    items.push(Item {
        name: "ker II_v ⊆ singloc Ann(v)".into(),
        expected: "every run".into(),
        observed: format!("{}/{}", inclusion.0, inclusion.1),
        pass: inclusion.0 == inclusion.1 && inclusion.1 == 20,
        documented: false,
        elapsed: Duration::ZERO,
    });
    items
}

fn c9_osc(s: &mut Sampler) -> Vec<Item> {
    let mut items = Vec::new();
    for (spec, d) in [("veronese:1,3", 2), ("veronese:2,2", 2), ("segre:1,2", 3)] {
        let mut s = s.fork();
        let x = match variety(spec) {
            Ok(x) => x,
            Err(e) => {
                items.push(fail_item(spec, "formula", format!("error: {e}")));
                continue;
            }
        };
        let expected: Vec<usize> = (0..=d)
            .map(|p| OscReport::expected_dim(x.dim(), x.ambient_dim(), d, p).expect("p ≤ d"))
            .collect();
        items.push(check(
            format!("{spec} d = {d}"),
            format!("{expected:?}"),
            || {
                let pt = x.random_general_point(&mut s)?;
                (0..=d).map(|p| Ok(osculating_space(&x, &pt, d, p)?.dim)).collect::<Result<Vec<_>>>()
            },
            |got| (format!("{got:?}"), *got == expected),
        ));
    }
    for x in standard_catalog() {
        let mut s = s.fork();
        let bound = binomial(x.codim() + 1, 2);
        items.push(check(
            format!("{} lower bound", x.name()),
            format!("affine dim ≥ {bound} at order 3"),
            || {
                let pt = x.random_general_point(&mut s)?;
                Ok(osculating_space(&x, &pt, 2, 3)?.dim)
            },
            |&dim| (dim.to_string(), dim >= bound),
        ));
    }
    items
}

fn monge_item(name: String, x: Result<ParamVariety>, s: &mut Sampler, holds: bool, vanish: &mut (usize, usize)) -> Item {
    let a = x.as_ref().map(ParamVariety::codim).unwrap_or(0);
    let expected = if holds {
        format!("holds, order-4 projective dim {}", a as i64 - 1)
    } else {
        "fails".to_string()
    };
    check(
        name,
        expected,
        || {
            let x = x?;
            let p = x.random_general_point(s)?;
            monge_check(&x, &p, s)
        },
        |m| {
            if m.verdict == MongeVerdict::Holds {
                vanish.1 += 1;
                if m.vanish_on_samples == Some(true) {
                    vanish.0 += 1;
                }
            }
            let observed = format!(
                "{}, order-4 projective dim {}, solvable {:?}",
                m.verdict.label(),
                m.order4_projective_dim(),
                m.solvable
            );
            let ok = if holds {
                m.verdict == MongeVerdict::Holds && m.order4_projective_dim() == a as i64 - 1
            } else {
                matches!(m.verdict, MongeVerdict::FailsAtOrder(_))
            };
            (observed, ok)
        },
    )
}

fn c10_monge(s: &mut Sampler) -> Vec<Item> {
    let mut items = Vec::new();
    let mut vanish = (0, 0);
    for (n, a) in [(2, 1), (4, 1), (6, 1), (3, 2), (5, 2), (6, 2), (4, 3), (6, 3)] {
        let mut s = s.fork();
        let polys = (0..a).map(|_| random_form(n, 2, &mut s)).collect();
        let x = graph_variety(n, polys);
        items.push(monge_item(format!("quadric graph n = {n}, a = {a} holds"), x, &mut s, true, &mut vanish));
    }
    let mut sv = s.fork();
    items.push(monge_item("veronese:2,2 holds".into(), variety("veronese:2,2"), &mut sv, true, &mut vanish));
    for n in [2, 3] {
        let mut s = s.fork();
        let x = graph_variety(n, vec![random_form(n, 3, &mut s)]);
        items.push(monge_item(format!("cubic graph n = {n} fails"), x, &mut s, false, &mut vanish));
    }
    items.push(Item {
        name: "holds verdicts vanish on 20 points".into(),
        expected: "every holds verdict".into(),
        observed: format!("{}/{}", vanish.0, vanish.1),
        pass: vanish.0 == vanish.1,
        documented: false,
        elapsed: Duration::ZERO,
    });
    items
}

fn c11_syzygies(s: &mut Sampler) -> Vec<Item> {
    let mut items = Vec::new();
    let mut sc = s.fork();
    items.push(check(
        "catalog witnesses",
        "every witness within 2(p − 1)",
        || {
            let mut found = 0;
            let mut within = 0;
            for x in standard_catalog() {
                let p = x.random_general_point(&mut sc)?;
                if let Some(w) = linear_syzygies(&second_ff(&x, &p)?).witness {
                    found += 1;
                    within += usize::from(w.bound_holds());
                }
            }
            Ok((found, within))
        },
        |&(found, within)| (format!("{within}/{found} within bound"), found > 0 && within == found),
    ));
    let mut ss = s.fork();
    items.push(check(
        "segre:2,2 has a syzygy",
        "dim A^[1] > 0",
        || Ok(linear_syzygies(&second_ff_random(&variety("segre:2,2")?, &mut ss)?).syzygy_dim),
        |&d| (format!("dim {d}"), d > 0),
    ));
    let mut sr = s.fork();
    items.push(check(
        "random pencils on C^5",
        "50/50 without syzygies",
        || {
            let mut clean = 0;
            for _ in 0..50 {
                let a = QuadricSystem::new(5, vec![random_symmetric(5, &mut sr), random_symmetric(5, &mut sr)])?;
                clean += usize::from(linear_syzygies(&a).syzygy_dim == 0);
            }
            Ok(clean)
        },
        |&c| (format!("{c}/50"), c == 50),
    ));
    items
}
