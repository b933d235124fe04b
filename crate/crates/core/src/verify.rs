//! Named verification suites that pin the closed forms to brute-force
//! evidence: enumeration of Sz(8) from matrices, a falsification sweep over
//! a solvable corpus, the square-recognition pipeline, the primitive-prime-
//! divisor grid, and the automorphism-coset bounds.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::group::{self, GroupCtx, GroupSpec};
use crate::numth;
use crate::spectrum::Spectrum;
use crate::suzuki;

/// One expected-vs-actual comparison; `pass` is exact string equality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render_table(&self) -> String {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        let mut w_name = "check".len();
        let mut w_exp = "expected".len();
        let mut w_act = "actual".len();
        for c in &self.checks {
            w_name = w_name.max(c.name.len());
            w_exp = w_exp.max(c.expected.len());
            w_act = w_act.max(c.actual.len());
        }
        let mut out = String::new();
        let _ = writeln!(out, "suite {}: {status} ({:.2}s)", self.suite, self.seconds);
        let _ = writeln!(
            out,
            "  {:<w_name$}  {:<w_exp$}  {:<w_act$}  ok",
            "check", "expected", "actual"
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "  {:<w_name$}  {:<w_exp$}  {:<w_act$}  {}",
                c.name,
                c.expected,
                c.actual,
                if c.pass { "yes" } else { "NO" }
            );
        }
        out
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: &str, expected: impl ToString, actual: impl ToString) {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let pass = expected == actual;
        self.0.push(Check {
            name: name.to_string(),
            expected,
            actual,
            pass,
        });
    }

    fn finish(self, suite: &str, started: Instant) -> SuiteReport {
        let mut checks = self.0;
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        SuiteReport {
            suite: suite.to_string(),
            checks,
            seconds: started.elapsed().as_secs_f64(),
        }
    }
}

pub fn suite_names() -> &'static [&'static str] {
    &[
        "sz8-master",
        "solvable-sweep",
        "recognition",
        "zsigmondy",
        "bounds",
    ]
}

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut checks = Checks(Vec::new());
    match name {
        "sz8-master" => sz8_master(&mut checks)?,
        "solvable-sweep" => solvable_sweep(&mut checks)?,
        "recognition" => recognition(&mut checks)?,
        "zsigmondy" => zsigmondy(&mut checks)?,
        "bounds" => bounds(&mut checks)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    }
    Ok(checks.finish(name, started))
}

fn render_witness(w: Option<crate::spectrum::CriterionWitness>) -> String {
    match w {
        None => "none".to_string(),
        Some(w) => {
            let p = w.primes();
            format!("{},{},{},{}", p[0], p[1], p[2], p[3])
        }
    }
}

fn sz8_master(c: &mut Checks) -> Result<()> {
    let field = FieldCtx::new(3, None)?;
    let spec = group::suzuki_generators(&field)?;
    let set = group::enumerate(&spec, 40_000)?;
    let pr = suzuki::params(3)?;

    c.add("order-enumerated", 29_120u32, set.order());
    c.add("order-closed-form", set.order(), &pr.order);
    let mu = set.spectrum()?;
    c.add("mu", suzuki::mu_sz(3)?, &mu);
    c.add("solvable", false, group::is_solvable(&spec, 40_000)?);

    let order = u128::from(set.order());
    let mut lagrange = true;
    for e in set.elements() {
        let o = set.ctx().element_order(e, set.order())?;
        lagrange &= order.is_multiple_of(o);
    }
    c.add("lagrange-exhaustive", true, lagrange);

    let (t, _) = mu.prime_graph()?.max_coclique()?;
    c.add("coclique-size", 4u32, t);

    let witness = suzuki::square_spectrum(3)?.nonsolvability_criterion()?;
    c.add("square-witness", "2,5,7,13", render_witness(witness));
    Ok(())
}

fn omega_set(mu: &Spectrum) -> Result<BTreeSet<u128>> {
    let mut out = BTreeSet::new();
    for &m in mu.mu() {
        out.extend(numth::factorize(m)?.divisors());
    }
    Ok(out)
}

fn solvable_sweep(c: &mut Checks) -> Result<()> {
    let family = solvable_family(5000)?;
    c.add("corpus-at-least-200", true, family.len() >= 200);

    let mut all_solvable = true;
    let mut no_witness = true;
    let mut coclique_small = true;
    let mut higman = true;
    for spec in &family {
        let mu = group::spectrum_of(spec, group::DEFAULT_ENUM_CAP)?;
        no_witness &= mu.nonsolvability_criterion()?.is_none();
        coclique_small &= mu.prime_graph()?.max_coclique()?.0 <= 2;
        higman &= mu.higman_bound_holds()?;
        all_solvable &= group::is_solvable(spec, group::DEFAULT_ENUM_CAP)?;
    }
    c.add("all-solvable", true, all_solvable);
    c.add("no-criterion-witness", true, no_witness);
    c.add("coclique-at-most-2", true, coclique_small);
    c.add("higman-bound-all", true, higman);

    // The three-prime boundary case: a solvable product whose spectrum has
    // every pairwise product of its primes but not the triple product,
    // showing that the four-prime criterion cannot be relaxed to three.
    let boundary = GroupSpec::Product(vec![
        GroupSpec::Frobenius { m: 7, t: 2, k: 3 },
        GroupSpec::Frobenius { m: 13, t: 3, k: 3 },
    ]);
    c.add("boundary-in-family", true, family.contains(&boundary));
    let mu = group::spectrum_of(&boundary, 1000)?;
    c.add("boundary-mu", "21,39,91", &mu);
    let series = group::derived_series_orders(&boundary, 1000)?;
    c.add("boundary-series-ends-at-1", 1u64, *series.last().unwrap());
    c.add(
        "boundary-no-witness",
        "none",
        render_witness(mu.nonsolvability_criterion()?),
    );
    let primes = mu.primes()?;
    c.add(
        "boundary-primes",
        "3,7,13",
        primes
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    let omega = omega_set(&mu)?;
    let mut pairwise = true;
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            pairwise &= omega.contains(&(p * q));
        }
    }
    c.add("boundary-pairwise-products-present", true, pairwise);
    let triple: u128 = primes.iter().product();
    c.add(
        "boundary-triple-product-absent",
        true,
        !omega.contains(&triple),
    );
    Ok(())
}

fn recognition(c: &mut Checks) -> Result<()> {
    for (alpha, count) in [(3, 1), (5, 4), (7, 1), (9, 1), (11, 1), (13, 1), (15, 1)] {
        let cl = suzuki::classify_isospectral_squares(alpha)?;
        c.add(&format!("count-alpha-{alpha}"), count, cl.count);
    }
    let c5 = suzuki::classify_isospectral_squares(5)?;
    c.add(
        "labels-alpha-5",
        "square,X1,X2,X4",
        c5.groups
            .iter()
            .map(|g| g.label.as_str())
            .collect::<Vec<_>>()
            .join(","),
    );
    c.add(
        "isospectral-mu-agree-alpha-5",
        true,
        c5.groups.iter().all(|g| g.mu == c5.groups[0].mu),
    );
    let (outer, _) = suzuki::outer_class_count(5, 5)?;
    c.add("count-is-one-plus-outer-alpha-5", c5.count, 1 + outer);

    for (alpha, p, expect) in [
        (3, 3, false),
        (5, 5, true),
        (7, 7, false),
        (9, 3, false),
        (15, 3, false),
        (15, 5, false),
    ] {
        c.add(
            &format!("twisted-iso-{alpha}-{p}"),
            expect,
            suzuki::twisted_square_spectrum(alpha, p)?.isospectral,
        );
    }

    let w3 = suzuki::square_spectrum(3)?.nonsolvability_criterion()?;
    c.add("square-witness-alpha-3", "2,5,7,13", render_witness(w3));
    for alpha in [5, 7, 9, 11, 13] {
        let w = suzuki::square_spectrum(alpha)?.nonsolvability_criterion()?;
        c.add(
            &format!("square-witness-exists-alpha-{alpha}"),
            true,
            w.is_some(),
        );
    }
    Ok(())
}

fn zsigmondy(c: &mut Checks) -> Result<()> {
    let mut cells = 0u32;
    let mut absences = Vec::new();
    let mut orders_ok = true;
    for q in 2..=50u128 {
        for n in 2..=20u32 {
            cells += 1;
            let got = numth::primitive_prime_divisor(q, n)?;
            match got.prime() {
                Some(r) => orders_ok &= numth::multiplicative_order(q, r)? == u128::from(n),
                None => absences.push(format!("{q}^{n}:{}", got.label().unwrap_or("?"))),
            }
        }
    }
    c.add("cells", 49 * 19, cells);
    c.add(
        "absent-exactly-at",
        "2^6:q2-n6 3^2:mersenne-n2 7^2:mersenne-n2 15^2:mersenne-n2 31^2:mersenne-n2",
        absences.join(" "),
    );
    c.add("orders-match", true, orders_ok);
    Ok(())
}

fn bounds(c: &mut Checks) -> Result<()> {
    c.add("aut-bounds-alpha-5", true, suzuki::aut_bounds_check(5)?);
    let mut composite_ok = true;
    for alpha in [9, 15, 21, 25, 27, 33, 35, 39, 45] {
        composite_ok &= suzuki::aut_bounds_check(alpha)?;
    }
    c.add("aut-bounds-odd-composite", true, composite_ok);

    let coset = suzuki::aut_coset_spectrum(5, 5)?;
    c.add(
        "coset-max-alpha-5",
        25u32,
        coset.mu().last().copied().unwrap_or(0),
    );
    let mut closure_ok = true;
    for &a in coset.mu() {
        for &b in coset.mu() {
            closure_ok &= 100u128.is_multiple_of(numth::lcm_checked(a, b)?);
        }
    }
    c.add("coset-lcm-divides-100-alpha-5", true, closure_ok);

    let mut identities = true;
    for alpha in (3..=45u32).step_by(2) {
        let pr = suzuki::params(alpha)?;
        identities &= pr.m[2] * pr.m[3] == pr.q * pr.q + 1;
        let mu = suzuki::mu_sz(alpha)?;
        identities &= mu.mu().len() == 4;
        identities &= mu.prime_graph()?.max_coclique()?.0 == 4;
    }
    c.add("identities-all-alpha", true, identities);
    Ok(())
}

/// Deterministic corpus of solvable group descriptions: every cyclic group
/// up to the cap, every valid Frobenius metacyclic group with m <= 200 and
/// m*k <= cap, and every direct product of two or three nontrivial items
/// from those pools with product order still under the cap. Products are
/// enumerated as multisets over the base sorted by order, so the corpus is
/// reproducible run to run.
pub fn solvable_family(cap: u64) -> Result<Vec<GroupSpec>> {
    if cap == 0 || cap > 10_000 {
        return Err(Error::FamilyCap(cap));
    }
    let mut out: Vec<GroupSpec> = (1..=cap).map(|n| GroupSpec::Cyclic { n }).collect();

    let mut frob = Vec::new();
    for m in 3..=200u64.min(cap / 2) {
        for t in 2..m {
            let Some(k) = order_mod(t, m) else { continue };
            if k < 2 || m * k > cap {
                continue;
            }
            let spec = GroupSpec::Frobenius { m, t, k };
            if GroupCtx::new(&spec).is_ok() {
                frob.push(spec);
            }
        }
    }
    out.extend(frob.iter().cloned());

    let mut base: Vec<(u64, GroupSpec)> = (2..=cap).map(|n| (n, GroupSpec::Cyclic { n })).collect();
    base.extend(frob.into_iter().map(|s| (spec_order(&s), s)));
    base.sort_by_key(|(o, _)| *o);

    for i in 0..base.len() {
        for j in i..base.len() {
            let o2 = base[i].0 * base[j].0;
            if o2 > cap {
                break;
            }
            out.push(GroupSpec::Product(vec![
                base[i].1.clone(),
                base[j].1.clone(),
            ]));
            for k in j..base.len() {
                if o2 * base[k].0 > cap {
                    break;
                }
                out.push(GroupSpec::Product(vec![
                    base[i].1.clone(),
                    base[j].1.clone(),
                    base[k].1.clone(),
                ]));
            }
        }
    }
    Ok(out)
}

/// Multiplicative order of t mod m by direct iteration, None if t is not a
/// unit. Only used for the small moduli of the family generator.
fn order_mod(t: u64, m: u64) -> Option<u64> {
    let mut acc = t % m;
    for k in 1..=m {
        if acc == 1 {
            return Some(k);
        }
        acc = acc * t % m;
    }
    None
}

fn spec_order(spec: &GroupSpec) -> u64 {
    match spec {
        GroupSpec::Cyclic { n } => *n,
        GroupSpec::Frobenius { m, k, .. } => m * k,
        GroupSpec::Product(fs) => fs.iter().map(spec_order).product(),
        _ => unreachable!("the family only contains closed-form kinds"),
    }
}
