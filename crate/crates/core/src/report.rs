//! Serializable analysis report. Every scalar is carried as its exact form
//! (`"a/b"`) plus a decimal rendering; the exact form is authoritative.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::{
    best_private_split, classify, interference_set_i1, lemma_condition, mac_corner, mac_corner_swapped, mac_region,
    outer_bound, LevelSet, RateBounds, MAX_SPLIT_DEPTH,
};
use crate::model::{Instance, Link, MacLink, Pmf};
use crate::scalar::Probability;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Value {
    pub exact: String,
    pub decimal: f64,
}

impl Value {
    pub fn of<T: Probability>(v: &T) -> Self {
        Self { exact: v.to_string(), decimal: v.to_f64() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsView {
    pub r1_max: Value,
    pub r2_max: Value,
    pub sum_max: Value,
}

impl BoundsView {
    fn of<T: Probability>(b: &RateBounds<T>) -> Self {
        Self { r1_max: Value::of(&b.r1_max), r2_max: Value::of(&b.r2_max), sum_max: Value::of(&b.sum_max) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeView {
    pub satisfied: Vec<String>,
    pub sum_capacity: Option<Value>,
    pub lower: Value,
    pub upper: Value,
    pub chosen_regime: Option<String>,
    pub scheme_hint: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaRowView {
    pub n: u32,
    pub e_a1: Value,
    pub e_a2: Value,
    pub holds_at_n: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaView {
    pub holds: bool,
    pub rows: Vec<LemmaRowView>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitView {
    pub private: LevelSet,
    pub total: Value,
    pub meets_outer_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IfcReport {
    pub outer_bound: BoundsView,
    pub regime: RegimeView,
    pub i1: LevelSet,
    pub lemma: LemmaView,
    /// Absent when `q` is too large for the exhaustive search.
    pub private_split: Option<SplitView>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MacReport {
    pub region: BoundsView,
    pub corner: [Value; 2],
    pub corner_swapped: [Value; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub kind: String,
    pub q: u32,
    pub marginals: BTreeMap<String, BTreeMap<u32, Value>>,
    pub expectations: BTreeMap<String, Value>,
    pub ifc: Option<IfcReport>,
    pub mac: Option<MacReport>,
}

fn pmf_view<T: Probability>(pmf: &Pmf<T>) -> BTreeMap<u32, Value> {
    pmf.support().map(|(n, p)| (n, Value::of(p))).collect()
}

pub fn build_report<T: Probability>(instance: &Instance<T>) -> AnalysisReport {
    let mut marginals = BTreeMap::new();
    let mut expectations = BTreeMap::new();
    match instance {
        Instance::Ifc(d) => {
            for (name, link) in [("N11", Link::N11), ("N21", Link::N21), ("N22", Link::N22)] {
                let m = d.marginal(link);
                expectations.insert(format!("E[{name}]"), Value::of(&m.expected_level()));
                marginals.insert(name.to_string(), pmf_view(&m));
            }
            let regime = classify(d);
            let outer = outer_bound(d);
            let lemma = lemma_condition(d);
            let private_split = (d.q() <= MAX_SPLIT_DEPTH).then(|| {
                let (private, total) = best_private_split(d).expect("depth checked");
                SplitView { meets_outer_bound: total == outer.sum_max, private, total: Value::of(&total) }
            });
            let ifc = IfcReport {
                outer_bound: BoundsView::of(&outer),
                regime: RegimeView {
                    satisfied: regime.satisfied.iter().map(|r| r.name().to_string()).collect(),
                    sum_capacity: regime.sum_capacity.as_ref().map(Value::of),
                    lower: Value::of(&regime.lower),
                    upper: Value::of(&regime.upper),
                    chosen_regime: regime.chosen_regime.map(|r| r.name().to_string()),
                    scheme_hint: regime.scheme_hint.to_string(),
                },
                i1: interference_set_i1(d),
                lemma: LemmaView {
                    holds: lemma.holds,
                    rows: lemma
                        .rows
                        .iter()
                        .map(|r| LemmaRowView {
                            n: r.n,
                            e_a1: Value::of(&r.e_a1),
                            e_a2: Value::of(&r.e_a2),
                            holds_at_n: r.holds_at_n,
                        })
                        .collect(),
                },
                private_split,
            };
            AnalysisReport { kind: "ifc".into(), q: d.q(), marginals, expectations, ifc: Some(ifc), mac: None }
        }
        Instance::Mac(d) => {
            for (name, link) in [("N1", MacLink::N1), ("N2", MacLink::N2)] {
                let m = d.marginal(link);
                expectations.insert(format!("E[{name}]"), Value::of(&m.expected_level()));
                marginals.insert(name.to_string(), pmf_view(&m));
            }
            let (a, b) = mac_corner(d);
            let (c, e) = mac_corner_swapped(d);
            let mac = MacReport {
                region: BoundsView::of(&mac_region(d)),
                corner: [Value::of(&a), Value::of(&b)],
                corner_swapped: [Value::of(&c), Value::of(&e)],
            };
            AnalysisReport { kind: "mac".into(), q: d.q(), marginals, expectations, ifc: None, mac: Some(mac) }
        }
    }
}

fn show(v: &Value) -> String {
    format!("{} ({:.4})", v.exact, v.decimal)
}

/// Human-readable rendering of a report.
pub fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "instance: {} (q = {})", report.kind, report.q);
    for (link, pmf) in &report.marginals {
        let entries: Vec<String> = pmf.iter().map(|(n, p)| format!("{n}: {}", p.exact)).collect();
        let _ = writeln!(out, "marginal {link}: {{{}}}", entries.join(", "));
    }
    for (name, v) in &report.expectations {
        let _ = writeln!(out, "{name} = {}", show(v));
    }
    if let Some(mac) = &report.mac {
        let _ = writeln!(
            out,
            "capacity region: R1 <= {}, R2 <= {}, R1+R2 <= {}",
            show(&mac.region.r1_max),
            show(&mac.region.r2_max),
            show(&mac.region.sum_max)
        );
        let _ = writeln!(out, "corner (user 1 first): ({}, {})", mac.corner[0].exact, mac.corner[1].exact);
        let _ =
            writeln!(out, "corner (user 2 first): ({}, {})", mac.corner_swapped[0].exact, mac.corner_swapped[1].exact);
    }
    if let Some(ifc) = &report.ifc {
        let ob = &ifc.outer_bound;
        let _ = writeln!(
            out,
            "outer bound: R1 <= {}, R2 <= {}, R1+R2 <= {}",
            show(&ob.r1_max),
            show(&ob.r2_max),
            show(&ob.sum_max)
        );
        let r = &ifc.regime;
        let _ = writeln!(out, "regimes satisfied: [{}]", r.satisfied.join(", "));
        match &r.sum_capacity {
            Some(c) => {
                let _ = writeln!(out, "sum capacity: {}", show(c));
            }
            None => {
                let _ = writeln!(out, "sum capacity in [{}, {}]", show(&r.lower), show(&r.upper));
            }
        }
        let _ = writeln!(out, "scheme: {}", r.scheme_hint);
        let _ = writeln!(out, "I1 = {}", ifc.i1);
        let _ = writeln!(out, "lemma condition: {}", if ifc.lemma.holds { "holds" } else { "fails" });
        for row in &ifc.lemma.rows {
            let _ = writeln!(
                out,
                "  n={}: E[A1]={} E[A2]={} {}",
                row.n,
                row.e_a1.exact,
                row.e_a2.exact,
                if row.holds_at_n { "ok" } else { "violated" }
            );
        }
        match &ifc.private_split {
            Some(s) => {
                let _ = writeln!(
                    out,
                    "best private split: P = {}, achievable sum rate {}{}",
                    s.private,
                    show(&s.total),
                    if s.meets_outer_bound { " (meets outer bound)" } else { "" }
                );
            }
            None => {
                let _ = writeln!(out, "best private split: skipped (q > {MAX_SPLIT_DEPTH})");
            }
        }
    }
    out
}
