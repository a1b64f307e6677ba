//! Built-in regression run over the four two-state examples.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use layered_erasure::analysis::{
    best_private_split, classify, lemma_condition, lemma_simplified, mac_corner, mac_region, mixed_achievable,
    outer_bound, Regime,
};
use layered_erasure::fixtures::EMBEDDED;
use layered_erasure::model::parse_instance;
use layered_erasure::simulator::{monte_carlo, SchemeKind, SchemeSpec};
use layered_erasure::{rational, FadingDistribution, Instance, Rational};

const EPSILON: f64 = 0.1;
const BLOCK: usize = 2000;
const TRIALS: usize = 20;
const MIN_SUCCESS: f64 = 0.95;
/// Delivered sum rate must reach this share of the exact capacity.
const MIN_RATE_SHARE: f64 = 0.88;

/// Fixture texts in example order, embedded or read from `dir`.
pub fn load_fixtures(dir: Option<&Path>) -> Result<Vec<(String, String)>> {
    EMBEDDED
        .iter()
        .map(|&(stem, text)| match dir {
            None => Ok((stem.to_string(), text.to_string())),
            Some(dir) => {
                let path = dir.join(format!("{stem}.json"));
                let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                Ok((stem.to_string(), text))
            }
        })
        .collect()
}

struct Report<'a, W: Write> {
    out: &'a mut W,
    failures: Vec<String>,
}

impl<W: Write> Report<'_, W> {
    fn check(
        &mut self,
        example: &str,
        what: &str,
        expected: impl ToString,
        computed: impl ToString,
        ok: bool,
    ) -> Result<()> {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let mark = if ok { "ok" } else { "FAIL" };
        writeln!(self.out, "{example:<9} {what:<28} expected {expected:<14} computed {computed:<14} {mark}")?;
        if !ok {
            self.failures.push(format!("{example}: {what}"));
        }
        Ok(())
    }

    fn exact(&mut self, example: &str, what: &str, expected: &Rational, computed: &Rational) -> Result<()> {
        self.check(example, what, expected, computed, expected == computed)
    }

    fn simulate(
        &mut self,
        example: &str,
        instance: &Instance,
        kind: SchemeKind,
        capacity: f64,
        seed: u64,
    ) -> Result<()> {
        let label = format!("simulate {kind}");
        let spec = SchemeSpec::new(kind, EPSILON, BLOCK)?;
        let mc = match monte_carlo(instance, &spec, TRIALS, seed) {
            Ok(mc) => mc,
            Err(e) => return self.check(example, &label, "runs", e, false),
        };
        let delivered = mc
            .trials
            .iter()
            .map(|t| {
                let r = &t.result;
                let share = |ok: bool, rate: f64| if ok { rate } else { 0.0 };
                share(r.ok_user1, r.rate1) + share(r.ok_user2, r.rate2)
            })
            .sum::<f64>()
            / mc.trials.len() as f64;
        self.check(example, "  success user 1", format!(">= {MIN_SUCCESS}"), mc.success1, mc.success1 >= MIN_SUCCESS)?;
        self.check(example, "  success user 2", format!(">= {MIN_SUCCESS}"), mc.success2, mc.success2 >= MIN_SUCCESS)?;
        let floor = MIN_RATE_SHARE * capacity;
        self.check(
            example,
            "  delivered sum rate",
            format!(">= {floor:.3}"),
            format!("{delivered:.3}"),
            delivered >= floor,
        )
    }
}

fn ifc(instance: &Instance) -> Option<FadingDistribution> {
    match instance {
        Instance::Ifc(d) => Some(d.clone()),
        Instance::Mac(_) => None,
    }
}

/// Runs every assertion, printing expected against computed values. Returns
/// whether all of them held.
pub fn run(fixtures: &[(String, String)], seed: u64, out: &mut impl Write) -> Result<bool> {
    let mut instances = Vec::with_capacity(fixtures.len());
    for (stem, text) in fixtures {
        instances.push(parse_instance::<Rational>(text).with_context(|| format!("parsing fixture {stem}"))?);
    }
    let mut r = Report { out, failures: Vec::new() };
    let split =
        SchemeKind::PrivateSplit { private: [2].into_iter().collect(), inner: Box::new(SchemeKind::StrongJoint) };

    // MAC corner points
    let ex = "example1";
    match &instances[0] {
        Instance::Mac(d) => {
            let (r1, r2) = mac_corner(d);
            r.exact(ex, "corner rate R1", &rational(1, 2), &r1)?;
            r.exact(ex, "corner rate R2", &rational(7, 2), &r2)?;
            r.exact(ex, "sum capacity", &rational(4, 1), &mac_region(d).sum_max)?;
        }
        Instance::Ifc(_) => r.check(ex, "instance kind", "mac", "ifc", false)?,
    }
    r.simulate(ex, &instances[0], SchemeKind::MacCorner, 4.0, seed)?;

    // ergodic very strong interference
    let ex = "example2";
    if let Some(d) = ifc(&instances[1]) {
        let report = classify(&d);
        let chosen = report.chosen_regime.map_or("none".to_string(), |g| g.to_string());
        r.check(
            ex,
            "regime",
            Regime::ErgodicVeryStrong,
            &chosen,
            report.chosen_regime == Some(Regime::ErgodicVeryStrong),
        )?;
        let cap = report.sum_capacity.as_ref().map_or("none".to_string(), |c| c.to_string());
        r.check(ex, "sum capacity", 4, &cap, report.sum_capacity == Some(rational(4, 1)))?;
    } else {
        r.check(ex, "instance kind", "ifc", "mac", false)?;
    }
    r.simulate(ex, &instances[1], SchemeKind::ErgodicVS, 4.0, seed)?;

    // mixed interference under the lemma condition
    let ex = "example3";
    if let Some(d) = ifc(&instances[2]) {
        let holds = lemma_condition(&d).holds;
        r.check(ex, "lemma condition", "holds", if holds { "holds" } else { "fails" }, holds)?;
        let seven_halves = rational(7, 2);
        r.exact(ex, "mixed achievable rate", &seven_halves, &mixed_achievable(&d))?;
        match lemma_simplified(&d) {
            Ok(v) => r.exact(ex, "simplified expression", &seven_halves, &v)?,
            Err(e) => r.check(ex, "simplified expression", &seven_halves, e, false)?,
        }
        r.exact(ex, "outer bound (sum)", &seven_halves, &outer_bound(&d).sum_max)?;
    } else {
        r.check(ex, "instance kind", "ifc", "mac", false)?;
    }
    r.simulate(ex, &instances[2], SchemeKind::Mixed, 3.5, seed)?;

    // a private level closes the gap
    let ex = "example4";
    if let Some(d) = ifc(&instances[3]) {
        r.exact(ex, "mixed achievable rate", &rational(5, 2), &mixed_achievable(&d))?;
        r.exact(ex, "outer bound (sum)", &rational(3, 1), &outer_bound(&d).sum_max)?;
        let (private, total) = best_private_split(&d)?;
        r.check(ex, "best private set", "{2}", &private, private.to_vec() == vec![2])?;
        r.exact(ex, "split sum rate", &rational(3, 1), &total)?;
    } else {
        r.check(ex, "instance kind", "ifc", "mac", false)?;
    }
    r.simulate(ex, &instances[3], split, 3.0, seed)?;

    if r.failures.is_empty() {
        writeln!(r.out, "all examples passed")?;
    } else {
        writeln!(r.out, "{} assertion(s) failed:", r.failures.len())?;
        for f in &r.failures {
            writeln!(r.out, "  {f}")?;
        }
    }
    Ok(r.failures.is_empty())
}
