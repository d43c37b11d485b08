//! Named verification suites. Each suite is a list of checks with a pass or
//! fail status, a numeric margin (what was counted or measured) and a
//! human-readable detail that carries the counterexample on failure.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ballean::{Axiom, Preset, WindowBallean};
use crate::cardinal::{coarse_equivalent, CardinalDesc};
use crate::constructions::{sn_small_witness, thin_cell_element, thin_cell_index, thin_isolation_check, ThinCellIndex};
use crate::error::{Error, Result};
use crate::ordinal::{Ordinal, OrdinalGrid, OrdinalInterval};
use crate::sets::random::{self, Variant};
use crate::sets::{
    classify, delta, delta_window, large_partition_cell, large_partition_spec, verify_delta_large, Property,
    Realization, SetSpec, Verdict,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    OrdinalOracle,
    BalleanAxioms,
    Equivalence,
    Classification,
    Delta,
    Realization,
    NormClasses,
    ThinPartition,
    InvariantsTable,
    LargePartition,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::OrdinalOracle,
        Suite::BalleanAxioms,
        Suite::Equivalence,
        Suite::Classification,
        Suite::Delta,
        Suite::Realization,
        Suite::NormClasses,
        Suite::ThinPartition,
        Suite::InvariantsTable,
        Suite::LargePartition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OrdinalOracle => "ordinal-oracle",
            Suite::BalleanAxioms => "ballean-axioms",
            Suite::Equivalence => "thm1",
            Suite::Classification => "classification",
            Suite::Delta => "delta-thm51",
            Suite::Realization => "thm42",
            Suite::NormClasses => "sn-small",
            Suite::ThinPartition => "thin-partition",
            Suite::InvariantsTable => "invariants-table",
            Suite::LargePartition => "large-partition",
        }
    }

    pub fn names() -> Vec<&'static str> {
        Suite::ALL.iter().map(|s| s.name()).collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            Error::Domain(format!(
                "unknown suite {s:?}; known suites: {}",
                Suite::names().join(", ")
            ))
        })
    }
}

/// Optional overrides; each suite documents its own defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SuiteConfig {
    pub window: Option<u64>,
    pub radius_cap: Option<u64>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub margin: Option<u64>,
    pub runtime: Duration,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Outcome {
    passed: bool,
    margin: Option<u64>,
    detail: String,
}

impl Outcome {
    fn pass(margin: u64, detail: impl Into<String>) -> Self {
        Outcome {
            passed: true,
            margin: Some(margin),
            detail: detail.into(),
        }
    }

    fn fail(margin: Option<u64>, detail: impl Into<String>) -> Self {
        Outcome {
            passed: false,
            margin,
            detail: detail.into(),
        }
    }

    fn from_result(r: Result<Outcome>) -> Self {
        r.unwrap_or_else(|e| Outcome::fail(None, e.to_string()))
    }
}

struct Runner {
    checks: Vec<Check>,
}

impl Runner {
    fn check(&mut self, id: impl Into<String>, f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let outcome = Outcome::from_result(f());
        self.checks.push(Check {
            id: id.into(),
            passed: outcome.passed,
            margin: outcome.margin,
            runtime: start.elapsed(),
            detail: outcome.detail,
        });
    }
}

pub fn run(suite: Suite, config: &SuiteConfig) -> SuiteReport {
    let mut r = Runner { checks: Vec::new() };
    match suite {
        Suite::OrdinalOracle => ordinal_oracle(&mut r),
        Suite::BalleanAxioms => ballean_axioms(&mut r, config),
        Suite::Equivalence => equivalence(&mut r, config),
        Suite::Classification => classification(&mut r, config),
        Suite::Delta => delta_suite(&mut r, config),
        Suite::Realization => realization(&mut r, config),
        Suite::NormClasses => norm_classes(&mut r),
        Suite::ThinPartition => thin_partition(&mut r),
        Suite::InvariantsTable => invariants_table(&mut r),
        Suite::LargePartition => large_partition(&mut r),
    }
    SuiteReport {
        suite,
        checks: r.checks,
    }
}

fn rng(config: &SuiteConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(config.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

// ordinal-oracle ----------------------------------------------------------

fn lexicographic_key(a: &Ordinal) -> Vec<(u32, u32)> {
    a.terms()
        .iter()
        .map(|t| (t.exponent().as_natural().expect("grid exponents are natural"), t.coefficient()))
        .collect()
}

/// Dense packing of ordinals with natural exponents <= 9 and coefficients
/// below 2^12; injective on that range.
fn pack(a: &Ordinal) -> Option<u128> {
    let mut out = 0u128;
    for t in a.terms() {
        let e = t.exponent().as_natural().filter(|&e| e <= 9)?;
        let c = t.coefficient();
        if c >= 1 << 12 {
            return None;
        }
        out |= u128::from(c) << (12 * e);
    }
    Some(out)
}

/// Checks `(a∘b)∘c = a∘(b∘c)` for every grid triple, computing each product
/// of a pair result with a grid member once.
fn associativity(grid: &[Ordinal], op: impl Fn(&Ordinal, &Ordinal) -> Result<Ordinal>) -> Result<Outcome> {
    let n = grid.len();
    let mut ids: HashMap<Ordinal, u32> = HashMap::new();
    let mut values: Vec<Ordinal> = Vec::new();
    let mut pair = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let v = op(&grid[i], &grid[j])?;
            let next = values.len() as u32;
            let id = *ids.entry(v.clone()).or_insert_with(|| {
                values.push(v);
                next
            });
            pair[i * n + j] = id;
        }
    }
    let unpackable = |a: &Ordinal| Error::Evaluation(format!("{a} is outside the packing range"));
    let mut left = vec![0u128; values.len() * n];
    for (x, v) in values.iter().enumerate() {
        for (k, c) in grid.iter().enumerate() {
            let r = op(v, c)?;
            left[x * n + k] = pack(&r).ok_or_else(|| unpackable(&r))?;
        }
    }
    let mut right = vec![0u128; values.len()];
    for (i, a) in grid.iter().enumerate() {
        for (y, v) in values.iter().enumerate() {
            let r = op(a, v)?;
            right[y] = pack(&r).ok_or_else(|| unpackable(&r))?;
        }
        for j in 0..n {
            let x = pair[i * n + j] as usize;
            for k in 0..n {
                if left[x * n + k] != right[pair[j * n + k] as usize] {
                    return Ok(Outcome::fail(
                        None,
                        format!("fails at ({}, {}, {})", grid[i], grid[j], grid[k]),
                    ));
                }
            }
        }
    }
    Ok(Outcome::pass((n * n * n) as u64, format!("{} distinct pair results", values.len())))
}

fn pair_table(grid: &[Ordinal], op: impl Fn(&Ordinal, &Ordinal) -> Result<Ordinal>) -> Result<Vec<Vec<Ordinal>>> {
    grid.iter()
        .map(|a| grid.iter().map(|b| op(a, b)).collect())
        .collect()
}

/// With the grid sorted, strict (or weak) monotonicity in one argument
/// follows from comparing neighbours.
fn monotone(table: &[Vec<Ordinal>], right_argument: bool, strict: bool, skip_zero_left: bool) -> Outcome {
    let n = table.len();
    let mut checked = 0u64;
    for fixed in 0..n {
        if right_argument && skip_zero_left && fixed == 0 {
            continue;
        }
        for v in 1..n {
            let (lo, hi) = if right_argument {
                (&table[fixed][v - 1], &table[fixed][v])
            } else {
                (&table[v - 1][fixed], &table[v][fixed])
            };
            checked += 1;
            if (strict && lo >= hi) || (!strict && lo > hi) {
                return Outcome::fail(None, format!("{lo} vs {hi} at neighbours {} and {}", v - 1, v));
            }
        }
    }
    Outcome::pass(checked, "")
}

fn ordinal_oracle(r: &mut Runner) {
    let grid = OrdinalGrid::new(3, 4, 3).enumerate();
    let n = grid.len() as u64;

    r.check("order-matches-lexicographic", || {
        for a in &grid {
            for b in &grid {
                if a.cmp(b) != lexicographic_key(a).cmp(&lexicographic_key(b)) {
                    return Ok(Outcome::fail(None, format!("compare({a}, {b})")));
                }
                if (a == b) != (a.terms() == b.terms()) {
                    return Ok(Outcome::fail(None, format!("equality of {a} and {b}")));
                }
            }
        }
        Ok(Outcome::pass(n * n, format!("{n} grid ordinals")))
    });
    r.check("add-associative", || associativity(&grid, Ordinal::checked_add));
    r.check("mul-associative", || associativity(&grid, Ordinal::checked_mul));

    let sums = pair_table(&grid, Ordinal::checked_add);
    let products = pair_table(&grid, Ordinal::checked_mul);
    r.check("add-monotone", || {
        let sums = sums.as_ref().map_err(Clone::clone)?;
        let right = monotone(sums, true, true, false);
        if !right.passed {
            return Ok(right);
        }
        let left = monotone(sums, false, false, false);
        Ok(Outcome { margin: right.margin.zip(left.margin).map(|(a, b)| a + b), ..left })
    });
    r.check("mul-monotone", || {
        let products = products.as_ref().map_err(Clone::clone)?;
        let right = monotone(products, true, true, true);
        if !right.passed {
            return Ok(right);
        }
        let left = monotone(products, false, false, false);
        Ok(Outcome { margin: right.margin.zip(left.margin).map(|(a, b)| a + b), ..left })
    });
    r.check("left-quotient-minimal", || {
        let sums = sums.as_ref().map_err(Clone::clone)?;
        for x in &grid {
            for (ai, a) in grid.iter().enumerate() {
                // the grid is closed under left quotients, so its least
                // qualifying member is the true minimum
                let least = (0..grid.len()).find(|&y| sums[y][ai] >= *x).map(|y| &grid[y]);
                let got = x.left_quotient(a);
                if least != Some(&got) {
                    return Ok(Outcome::fail(None, format!("lq({x}, {a}) = {got}, brute force {least:?}")));
                }
            }
        }
        Ok(Outcome::pass(n * n, ""))
    });
    r.check("right-difference-inverts-add", || {
        let mut checked = 0;
        for a in &grid {
            for b in grid.iter().filter(|b| a <= *b) {
                let d = a.right_difference(b)?;
                if a.checked_add(&d)? != *b {
                    return Ok(Outcome::fail(None, format!("{a} + ({d}) != {b}")));
                }
                checked += 1;
            }
        }
        Ok(Outcome::pass(checked, ""))
    });
    r.check("norm-subadditive", || {
        let sums = sums.as_ref().map_err(Clone::clone)?;
        for (i, a) in grid.iter().enumerate() {
            for (j, b) in grid.iter().enumerate() {
                if sums[i][j].norm() > a.norm() + b.norm() {
                    return Ok(Outcome::fail(None, format!("norm({a} + {b})")));
                }
            }
        }
        Ok(Outcome::pass(n * n, ""))
    });
    r.check("codec-round-trip", || {
        for a in &grid {
            let text = a.to_string();
            if text.parse::<Ordinal>()? != *a || text.parse::<Ordinal>()?.to_string() != text {
                return Ok(Outcome::fail(None, text));
            }
        }
        Ok(Outcome::pass(n, ""))
    });
}

// ballean-axioms ----------------------------------------------------------

fn window_size(config: &SuiteConfig, default: u64) -> usize {
    config.window.unwrap_or(default) as usize
}

fn ballean_axioms(r: &mut Runner, config: &SuiteConfig) {
    let n = window_size(config, 50);
    let cap = config.radius_cap.map(|c| c as usize).unwrap_or((n / 2).max(1));

    r.check("symmetric-passes", || {
        let report = WindowBallean::preset(Preset::Symmetric, n, cap)?.check_axioms();
        Ok(if report.all_ok() {
            Outcome::pass(n as u64, format!("window-limited: {}", report.window_limited()))
        } else {
            Outcome::fail(None, format!("{report:?}"))
        })
    });
    r.check("symmetric-passes-all-windows", || {
        for size in 1..=64usize {
            let report = WindowBallean::preset(Preset::Symmetric, size, size.div_ceil(2).max(1))?.check_axioms();
            if !report.all_ok() {
                return Ok(Outcome::fail(None, format!("N = {size}: {report:?}")));
            }
        }
        Ok(Outcome::pass(64, "N = 1..=64, R = ceil(N/2)"))
    });
    r.check("forward-fails-axiom-1", || {
        let report = WindowBallean::preset(Preset::Forward, n, cap)?.check_axioms();
        let first = report.get(Axiom::Symmetry);
        Ok(match (&first.counterexample, first.ok) {
            (Some(cx), false) => Outcome::pass(cx.x as u64, format!("expected failure: {}", cx.detail)),
            _ => Outcome::fail(None, "forward balls passed axiom (1)"),
        })
    });
    r.check("forward-fails-axiom-1-all-windows", || {
        for size in 2..=64usize {
            let report = WindowBallean::preset(Preset::Forward, size, (size / 2).max(1))?.check_axioms();
            if report.get(Axiom::Symmetry).ok {
                return Ok(Outcome::fail(None, format!("N = {size} passed axiom (1)")));
            }
        }
        Ok(Outcome::pass(63, "N = 2..=64"))
    });
    r.check("trivial-fails-axiom-3", || {
        let report = WindowBallean::preset(Preset::Trivial, n, cap)?.check_axioms();
        let ok = report.outcomes.iter().map(|o| o.ok).collect::<Vec<_>>();
        Ok(if ok == [true, true, false] {
            Outcome::pass(n as u64, "expected failure of (3) only")
        } else {
            Outcome::fail(None, format!("{ok:?}"))
        })
    });
    for preset in [Preset::Doubling, Preset::Bounded] {
        r.check(format!("{preset}-passes"), || {
            let report = WindowBallean::preset(preset, n, cap)?.check_axioms();
            Ok(if report.all_ok() {
                Outcome::pass(n as u64, "")
            } else {
                Outcome::fail(None, format!("{report:?}"))
            })
        });
    }
}

// thm1 --------------------------------------------------------------------

fn equivalence(r: &mut Runner, config: &SuiteConfig) {
    let n = window_size(config, 50);
    let cap = config.radius_cap.map(|c| c as usize).unwrap_or(n);

    r.check("symmetric-conditions", || {
        let c = WindowBallean::preset(Preset::Symmetric, n, cap)?.equivalence_conditions(0, 1)?;
        Ok(if c.both() {
            Outcome::pass(cap as u64, "(i) and (ii) hold at x0 = 0, γ = 1")
        } else {
            Outcome::fail(None, format!("{c:?}"))
        })
    });
    r.check("symmetric-construction", || {
        let w = WindowBallean::preset(Preset::Symmetric, n, cap)?.equivalence_construction(0, 1)?;
        let injective = w.points.iter().collect::<BTreeSet<_>>().len() == w.points.len();
        let ranks_ok = w.points.iter().enumerate().all(|(i, &p)| w.rank(p) == Some(i));
        Ok(match w.large_radius {
            Some(d) if d <= 1 && injective && ranks_ok => {
                Outcome::pass(d as u64, format!("|L| = {}, δ = {d}", w.points.len()))
            }
            _ => Outcome::fail(w.large_radius.map(|d| d as u64), format!("{w:?}")),
        })
    });
    r.check("bounded-fails-condition-i", || {
        let w = WindowBallean::preset(Preset::Bounded, n, cap)?;
        for step in 1..cap {
            if w.equivalence_conditions(0, step)?.shells_nonempty {
                return Ok(Outcome::fail(None, format!("γ = {step} has nonempty shells")));
            }
        }
        Ok(Outcome::pass((cap - 1) as u64, "expected failure of (i) for 1 <= γ < R"))
    });
    r.check("doubling-construction", || {
        let w = WindowBallean::preset(Preset::Doubling, 64, 32)?;
        if !w.equivalence_conditions(0, 1)?.both() {
            return Ok(Outcome::fail(None, "conditions fail"));
        }
        let witness = w.equivalence_construction(0, 1)?;
        Ok(match witness.large_radius {
            Some(d) if d <= 1 => Outcome::pass(d as u64, ""),
            other => Outcome::fail(other.map(|d| d as u64), format!("{witness:?}")),
        })
    });
}

// classification ----------------------------------------------------------

fn classification(r: &mut Runner, config: &SuiteConfig) {
    let n = config.window.unwrap_or(10_000);
    let d = config.radius_cap.unwrap_or(64);
    for (salt, variant) in Variant::ALL.into_iter().enumerate() {
        r.check(format!("agree-{}", variant.name()), || {
            let mut rng = rng(config, salt as u64 + 1);
            let mut compared = 0;
            for _ in 0..200 {
                let spec = random::spec(variant, &mut rng);
                let exact = classify(&spec);
                if let Some(why) = exact.inconsistency() {
                    return Ok(Outcome::fail(None, format!("{spec}: {why}")));
                }
                let window = spec.classify_window(n, d)?;
                for p in Property::ALL {
                    if let Some(b) = exact.get(p).verdict.as_bool() {
                        compared += 1;
                        if window.get(p).holds != b {
                            return Ok(Outcome::fail(
                                None,
                                format!("{spec}: {p} is {} exactly but the window says {:?}", exact.get(p).verdict, window.get(p)),
                            ));
                        }
                    }
                }
            }
            Ok(Outcome::pass(compared, format!("{compared} decided flags compared")))
        });
    }
}

// delta-thm51 -------------------------------------------------------------

fn delta_suite(r: &mut Runner, config: &SuiteConfig) {
    let n = config.window.unwrap_or(10_000);
    let d = config.radius_cap.unwrap_or(64);
    let specs: Vec<SetSpec> = {
        let mut rng = rng(config, 51);
        (0..100).map(|_| SetSpec::Periodic(random::periodic(&mut rng, true))).collect()
    };

    r.check("periodic-delta-large", || {
        for s in &specs[..50] {
            let report = verify_delta_large(s, n, d)?;
            if !report.pass || report.exact.is_none() {
                return Ok(Outcome::fail(None, format!("{s}: {report:?}")));
            }
        }
        Ok(Outcome::pass(50, ""))
    });
    r.check("periodic-delta-matches-window", || {
        for s in &specs {
            let exact = delta(s).exact().cloned().ok_or_else(|| Error::Evaluation(format!("{s} has no exact Δ")))?;
            let window = delta_window(s, n, d)?;
            for k in 0..=d {
                if exact.member(k)? != window.contains(&k) {
                    return Ok(Outcome::fail(Some(k), format!("{s}: d = {k}")));
                }
            }
        }
        Ok(Outcome::pass(specs.len() as u64 * (d + 1), ""))
    });
    r.check("thin-stream-delta-is-zero", || {
        let s = SetSpec::powers(2)?;
        let exact = delta(&s).exact().cloned();
        let window = delta_window(&s, n, d)?;
        Ok(if exact == Some(SetSpec::finite([0])) && window == BTreeSet::from([0]) {
            Outcome::pass(1, "")
        } else {
            Outcome::fail(None, format!("{exact:?} / {window:?}"))
        })
    });
    r.check("naturals-delta-is-naturals", || {
        let s = SetSpec::naturals();
        let exact = delta(&s).exact().cloned();
        let report = verify_delta_large(&s, n, d)?;
        Ok(if exact == Some(SetSpec::naturals()) && report.pass {
            Outcome::pass(1, "")
        } else {
            Outcome::fail(None, format!("{exact:?}"))
        })
    });
    r.check("factorial-intervals-window", || {
        let top = 3_628_800 + 10;
        let window = delta_window(&SetSpec::factorial_intervals(), top, 8)?;
        Ok(if window == (0..=8).collect() {
            Outcome::pass(9, "every d <= 8 has a witness near 10!")
        } else {
            Outcome::fail(Some(window.len() as u64), format!("{window:?}"))
        })
    });
    r.check("delta-monotone-under-union", || {
        let mut rng = rng(config, 52);
        for _ in 0..50 {
            let a = random::spec(Variant::Periodic, &mut rng);
            let b = random::spec(Variant::Stream, &mut rng);
            let u = SetSpec::Union(vec![a.clone(), b]);
            let (da, du) = (delta_window(&a, n, d)?, delta_window(&u, n, d)?);
            if !da.is_subset(&du) {
                return Ok(Outcome::fail(None, format!("{u}")));
            }
            if !du.contains(&0) {
                return Ok(Outcome::fail(None, format!("0 ∉ Δ({u})")));
            }
        }
        Ok(Outcome::pass(50, ""))
    });
}

// thm42 -------------------------------------------------------------------

fn realization(r: &mut Runner, config: &SuiteConfig) {
    let d = config.radius_cap.unwrap_or(64);
    r.check("example-0-2-5", || {
        let report = Realization::construct(&[0, 2, 5].into(), 40)?.verify(8);
        Ok(if report.pass {
            Outcome::pass(8, "")
        } else {
            Outcome::fail(report.offending, format!("{report:?}"))
        })
    });
    r.check("perturbation-detected", || {
        let base = Realization::construct(&[0, 2, 5].into(), 40)?;
        let last = base.rows().last().and_then(|row| row.first()).copied().unwrap_or(0);
        let report = base.with_point(last + 3).verify(8);
        Ok(match report.offending {
            Some(3) => Outcome::pass(3, "expected failure at d = 3"),
            other => Outcome::fail(other, "the added point went unnoticed"),
        })
    });
    let mut rng = rng(config, 42);
    for i in 0..20 {
        let size = rng.gen_range(1..=6);
        let mut a: BTreeSet<u64> = BTreeSet::from([0]);
        while a.len() < size {
            a.insert(rng.gen_range(1..=30));
        }
        r.check(format!("random-{i:02}"), || {
            let report = Realization::construct(&a, 40)?.verify(d);
            Ok(match report.offending {
                None => Outcome::pass(d, format!("A = {a:?}")),
                Some(bad) => {
                    let c = &report.checks[bad as usize];
                    Outcome::fail(
                        Some(bad),
                        format!(
                            "A = {a:?}: d = {bad} has {} witnesses at depth 20 and {} at depth 40",
                            c.half_count, c.full_count
                        ),
                    )
                }
            })
        });
    }
}

// sn-small ----------------------------------------------------------------

/// Every ordinal with natural exponents <= `max_exp` and norm <= `max_norm`.
fn small_norm_ordinals(max_exp: u32, max_norm: u32) -> Vec<Ordinal> {
    fn go(e: i64, budget: u32, acc: &mut Vec<(Ordinal, u32)>, out: &mut Vec<Ordinal>) {
        if e < 0 {
            out.push(Ordinal::from_terms(acc.iter().cloned()).expect("decreasing exponents"));
            return;
        }
        go(e - 1, budget, acc, out);
        for c in 1..=budget {
            acc.push((Ordinal::nat(e as u32), c));
            go(e - 1, budget - c, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(max_exp as i64, max_norm, &mut Vec::new(), &mut out);
    out
}

fn norm_classes(r: &mut Runner) {
    r.check("witnesses-verified", || {
        let grid = OrdinalGrid::new(3, 4, 3).enumerate();
        let gammas = [Ordinal::one(), Ordinal::omega(), Ordinal::omega_pow(Ordinal::nat(2))];
        let mut checked = 0;
        for x in grid.iter().filter(|x| (1..=4).contains(&x.norm())) {
            let lead = Ordinal::omega_pow(x.leading_exponent().expect("nonzero").clone());
            for g in gammas.iter().filter(|g| **g <= lead) {
                let w = sn_small_witness(x, g, x.norm())?;
                checked += 1;
                if !w.verified {
                    return Ok(Outcome::fail(None, format!("x = {x}, γ = {g}: {}", w.neighbourhood)));
                }
            }
        }
        Ok(Outcome::pass(checked, ""))
    });
    r.check("contains-norm-matches-search", || {
        let grid = OrdinalGrid::new(2, 3, 3).enumerate();
        let pool = small_norm_ordinals(2, 8);
        let mut checked = 0;
        for (i, lo) in grid.iter().enumerate() {
            for hi in &grid[i..] {
                let iv = OrdinalInterval::new(lo.clone(), hi.clone())?;
                for n in 0..=8 {
                    let expect = pool.iter().any(|x| x.norm() == n && iv.contains(x));
                    let found = iv.member_with_norm(n);
                    checked += 1;
                    let sound = found.as_ref().is_none_or(|w| w.norm() == n && iv.contains(w));
                    if found.is_some() != expect || !sound {
                        return Ok(Outcome::fail(None, format!("{iv}, n = {n}: {found:?}")));
                    }
                }
            }
        }
        Ok(Outcome::pass(checked, ""))
    });
}

// thin-partition ----------------------------------------------------------

fn thin_partition(r: &mut Runner) {
    r.check("cells-biject", || {
        let mut seen = HashMap::new();
        for band in 1..=5 {
            for cell in 0..=500 {
                let idx = ThinCellIndex { cell, band };
                let x = thin_cell_element(idx)?;
                if x.leading_exponent().and_then(Ordinal::as_natural) != Some(band) {
                    return Ok(Outcome::fail(None, format!("{idx} -> {x} leaves its band")));
                }
                if thin_cell_index(&x)? != idx {
                    return Ok(Outcome::fail(None, format!("{idx} -> {x} does not round trip")));
                }
                if let Some(prev) = seen.insert(x.clone(), idx) {
                    return Ok(Outcome::fail(None, format!("{prev} and {idx} both give {x}")));
                }
            }
        }
        Ok(Outcome::pass(seen.len() as u64, ""))
    });
    r.check("grid-has-unique-cells", || {
        let grid = OrdinalGrid::new(4, 3, 3).enumerate();
        let mut checked = 0;
        for x in grid.iter().filter(|x| **x >= Ordinal::omega()) {
            let idx = thin_cell_index(x)?;
            if thin_cell_element(idx)? != *x {
                return Ok(Outcome::fail(None, format!("{x} -> {idx}")));
            }
            checked += 1;
        }
        Ok(Outcome::pass(checked, ""))
    });
    r.check("cells-isolated", || {
        let mut checked = 0;
        for cell in 0..=20 {
            for band in 1..=6 {
                for m in 0..=band {
                    let x = thin_cell_element(ThinCellIndex { cell, band })?;
                    if x <= Ordinal::omega_pow(Ordinal::nat(m)) {
                        continue;
                    }
                    let report = thin_isolation_check(cell, band, m)?;
                    checked += 1;
                    if !report.isolated() {
                        return Ok(Outcome::fail(None, format!("{report:?}")));
                    }
                }
            }
        }
        Ok(Outcome::pass(checked, ""))
    });
}

// invariants-table --------------------------------------------------------

fn invariants_table(r: &mut Runner) {
    let k = |s: &str| s.parse::<CardinalDesc>().expect("valid cardinal");
    let expected = [
        ("aleph_0", "aleph_0", true, false),
        ("aleph_1", "aleph_0", false, true),
        ("aleph_2", "aleph_1", false, true),
        ("aleph_w", "aleph_0", true, true),
        ("aleph_(w+1)", "aleph_w", false, true),
    ];
    for (kappa, thin, metrizable, cellular) in expected {
        r.check(kappa, || {
            let c = k(kappa);
            let t = c.invariants();
            let fields = [
                t.den == c,
                t.spread == c,
                t.res == c,
                t.thick == c,
                t.thin == k(thin),
                t.cores == k("aleph_0"),
                t.metrizable == metrizable,
                t.cellular == cellular,
            ];
            let good = fields.iter().filter(|&&f| f).count() as u64;
            Ok(if good == 8 {
                Outcome::pass(good, "")
            } else {
                Outcome::fail(Some(good), format!("{:?}", t.rows()))
            })
        });
    }
    r.check("coarse-equivalence", || {
        let all: Vec<CardinalDesc> = expected.iter().map(|e| k(e.0)).collect();
        for a in &all {
            for b in &all {
                if coarse_equivalent(a, b) != (a == b) {
                    return Ok(Outcome::fail(None, format!("{a} vs {b}")));
                }
            }
        }
        Ok(Outcome::pass(25, ""))
    });
}

// large-partition ---------------------------------------------------------

fn large_partition(r: &mut Runner) {
    r.check("cells-partition", || {
        let top = 1u64 << 16;
        let specs: Vec<SetSpec> = (0..=16).map(large_partition_spec).collect::<Result<_>>()?;
        let windows = specs.iter().map(|s| s.window(top)).collect::<Result<Vec<_>>>()?;
        for m in 1..=top {
            let cells: Vec<usize> = (0..windows.len()).filter(|&n| windows[n].contains(m as usize)).collect();
            if cells != [large_partition_cell(m)? as usize] {
                return Ok(Outcome::fail(Some(m), format!("{m} lies in cells {cells:?}")));
            }
        }
        Ok(Outcome::pass(top, ""))
    });
    r.check("cells-large", || {
        for n in 0..=16 {
            let spec = large_partition_spec(n)?;
            if classify(&spec).large.verdict != Verdict::Yes {
                return Ok(Outcome::fail(Some(n.into()), format!("{spec}")));
            }
        }
        Ok(Outcome::pass(17, ""))
    });
}
