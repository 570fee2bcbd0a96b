use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{ComparisonRecord, PlannerKind};
use crate::planner::RNG_ALGORITHM;

/// Mean and sample standard deviation (0 for a single value).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
}

impl Stat {
    fn of(values: &[f64]) -> Option<Stat> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        };
        Some(Stat { mean, std })
    }
}

/// Per (scenario, planner) statistics over successful runs.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSummary {
    pub scenario: String,
    pub planner: PlannerKind,
    pub runs: usize,
    pub failures: usize,
    pub nodes: Option<Stat>,
    pub queries: Option<Stat>,
    pub path_length: Option<Stat>,
    pub elapsed: Option<Stat>,
}

/// LASMP relative to RRT on one scenario, in percent.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    pub scenario: String,
    pub nodes: f64,
    pub queries: f64,
    /// Mean LASMP path length over mean RRT path length.
    pub length_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub rows: Vec<ScenarioSummary>,
    pub reductions: Vec<Reduction>,
    /// Mean of the per-scenario node reductions.
    pub aggregate_nodes: Option<f64>,
    /// Mean of the per-scenario query reductions.
    pub aggregate_queries: Option<f64>,
}

/// `100 * (1 - lasmp / rrt)`.
pub fn reduction_pct(lasmp: f64, rrt: f64) -> f64 {
    100.0 * (1.0 - lasmp / rrt)
}

pub fn summarize(records: &[ComparisonRecord]) -> Report {
    let mut groups: BTreeMap<(String, PlannerKind), Vec<&ComparisonRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.scenario.clone(), r.planner)).or_default().push(r);
    }
    let rows: Vec<ScenarioSummary> = groups
        .into_iter()
        .map(|((scenario, planner), runs)| {
            let ok: Vec<_> = runs.iter().filter(|r| r.metrics.success).collect();
            let stat = |f: fn(&ComparisonRecord) -> f64| Stat::of(&ok.iter().map(|r| f(r)).collect::<Vec<_>>());
            ScenarioSummary {
                scenario,
                planner,
                runs: runs.len(),
                failures: runs.len() - ok.len(),
                nodes: stat(|r| r.metrics.nodes_added as f64),
                queries: stat(|r| r.metrics.sample_queries as f64),
                path_length: stat(|r| r.metrics.path_length),
                elapsed: stat(|r| r.metrics.elapsed),
            }
        })
        .collect();

    let mut reductions = Vec::new();
    for l in rows.iter().filter(|r| r.planner == PlannerKind::Lasmp) {
        let Some(b) = rows.iter().find(|r| r.planner == PlannerKind::Rrt && r.scenario == l.scenario) else {
            continue;
        };
        if let (Some(ln), Some(bn), Some(lq), Some(bq), Some(ll), Some(bl)) =
            (l.nodes, b.nodes, l.queries, b.queries, l.path_length, b.path_length)
        {
            reductions.push(Reduction {
                scenario: l.scenario.clone(),
                nodes: reduction_pct(ln.mean, bn.mean),
                queries: reduction_pct(lq.mean, bq.mean),
                length_ratio: ll.mean / bl.mean,
            });
        }
    }
    let mean = |f: fn(&Reduction) -> f64| {
        (!reductions.is_empty()).then(|| reductions.iter().map(f).sum::<f64>() / reductions.len() as f64)
    };
    Report {
        aggregate_nodes: mean(|r| r.nodes),
        aggregate_queries: mean(|r| r.queries),
        rows,
        reductions,
    }
}

/// Raw per-run CSV.
pub fn records_to_csv(records: &[ComparisonRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record([
        "scenario", "planner", "seed", "success", "nodes", "queries", "path_length", "elapsed_s", "error",
    ]);
    for r in records {
        let m = &r.metrics;
        let _ = w.write_record([
            r.scenario.clone(),
            r.planner.to_string(),
            r.seed.to_string(),
            m.success.to_string(),
            m.nodes_added.to_string(),
            m.sample_queries.to_string(),
            m.path_length.to_string(),
            m.elapsed.to_string(),
            r.error.clone().unwrap_or_default(),
        ]);
    }
    String::from_utf8(w.into_inner().unwrap_or_default()).unwrap_or_default()
}

fn opt(v: Option<f64>, digits: usize) -> String {
    v.map(|x| format!("{x:.digits$}")).unwrap_or_else(|| "-".into())
}

impl Report {
    /// Summary rows as CSV, one line per (scenario, planner).
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let _ = w.write_record([
            "scenario",
            "planner",
            "runs",
            "failures",
            "nodes_mean",
            "nodes_std",
            "queries_mean",
            "queries_std",
            "length_mean",
            "length_std",
            "time_mean",
            "time_std",
        ]);
        let cell = |s: Option<Stat>, f: fn(Stat) -> f64| s.map(|s| f(s).to_string()).unwrap_or_default();
        for r in &self.rows {
            let mut rec = vec![r.scenario.clone(), r.planner.to_string(), r.runs.to_string(), r.failures.to_string()];
            for s in [r.nodes, r.queries, r.path_length, r.elapsed] {
                rec.push(cell(s, |s| s.mean));
                rec.push(cell(s, |s| s.std));
            }
            let _ = w.write_record(rec);
        }
        String::from_utf8(w.into_inner().unwrap_or_default()).unwrap_or_default()
    }

    /// Aligned plain-text report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# means +- sample std over successful runs; failures counted separately");
        let _ = writeln!(out, "# rng: {RNG_ALGORITHM}");
        let header = ["scenario", "planner", "runs", "fail", "nodes", "queries", "length [m]", "time [ms]"];
        let mut table: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        let pm = |s: Option<Stat>, scale: f64, d: usize| match s {
            Some(s) => format!("{:.d$} +- {:.d$}", s.mean * scale, s.std * scale),
            None => "-".into(),
        };
        for r in &self.rows {
            table.push(vec![
                r.scenario.clone(),
                r.planner.to_string(),
                r.runs.to_string(),
                r.failures.to_string(),
                pm(r.nodes, 1.0, 1),
                pm(r.queries, 1.0, 1),
                pm(r.path_length, 1.0, 2),
                pm(r.elapsed, 1e3, 2),
            ]);
        }
        push_table(&mut out, &table);

        let _ = writeln!(out);
        let mut red: Vec<Vec<String>> = vec![["scenario", "node red. %", "query red. %", "length ratio"]
            .iter()
            .map(|s| s.to_string())
            .collect()];
        for r in &self.reductions {
            red.push(vec![
                r.scenario.clone(),
                format!("{:.2}", r.nodes),
                format!("{:.2}", r.queries),
                format!("{:.3}", r.length_ratio),
            ]);
        }
        red.push(vec![
            "aggregate".into(),
            opt(self.aggregate_nodes, 2),
            opt(self.aggregate_queries, 2),
            String::new(),
        ]);
        push_table(&mut out, &red);
        out
    }
}

fn push_table(out: &mut String, table: &[Vec<String>]) {
    let cols = table[0].len();
    let widths: Vec<usize> = (0..cols).map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    for row in table {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| if c == 0 { format!("{s:<w$}", w = widths[c]) } else { format!("{s:>w$}", w = widths[c]) })
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
}
