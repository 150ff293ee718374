//! Benchmark harness: runs one algorithm over many instances, times each run
//! and checks the count against the matching upper bound.

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connecting::{
    brute_force_connecting, connecting_set_bound, enumerate_minimal_connecting, ConnectingOptions, McsMode,
};
use crate::dcs::{solve_with, DcsInstance, SolveOptions};
use crate::error::{Error, Result};
use crate::io::Instance;
use crate::paths::{enumerate_induced_paths, max_leaves};
use crate::set::VertexSet;
use crate::sink::Count;

/// Slack for comparing a log count against a log bound.
const LN_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchMode {
    /// Minimal connecting sets of `T`.
    Mcs,
    /// Induced paths from `v` to `N(R)`.
    Paths,
    /// 2-DCS on `Z1`, `Z2`.
    Dcs,
    /// Connecting sets of `T` by subset brute force.
    Brute,
}

impl BenchMode {
    pub fn name(self) -> &'static str {
        match self {
            BenchMode::Mcs => "mcs",
            BenchMode::Paths => "paths",
            BenchMode::Dcs => "dcs",
            BenchMode::Brute => "brute",
        }
    }
}

impl std::str::FromStr for BenchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mcs" => Ok(BenchMode::Mcs),
            "paths" => Ok(BenchMode::Paths),
            "dcs" => Ok(BenchMode::Dcs),
            "brute" => Ok(BenchMode::Brute),
            other => Err(Error::Precondition(format!("unknown bench mode {other:?}"))),
        }
    }
}

/// One CSV row.
///
/// `terminals` is `|T|` for the set modes, `|R| + 1` for paths and
/// `|Z1| + |Z2|` for 2-DCS. `bound_ln` is the log of the set-count bound when
/// `2 <= |T| <= n/3`, the log of the leaf bound `l(n - |R| - 1)` for paths,
/// and empty otherwise. For 2-DCS, `emitted` is 1 on a yes answer and `raw`
/// the number of candidates tried.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub terminals: usize,
    pub mode: BenchMode,
    pub emitted: u64,
    pub raw: u64,
    pub bound_ln: Option<f64>,
    pub within_bound: Option<bool>,
    pub wall_ms: f64,
    pub nodes: u64,
    /// `ok`, or the error or panic message.
    pub status: String,
}

impl RunReport {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

/// A named instance for [`run_benchmark`].
#[derive(Clone, Debug)]
pub struct BenchInstance {
    pub id: String,
    pub instance: Instance,
}

struct Measured {
    terminals: usize,
    emitted: u64,
    raw: u64,
    bound_ln: Option<f64>,
    nodes: u64,
}

fn required(inst: &Instance, name: &str) -> Result<VertexSet> {
    inst.vertex_set(name).unwrap_or_else(|| Err(Error::Precondition(format!("instance has no set {name}"))))
}

fn set_bound(n: usize, t: usize) -> Option<f64> {
    connecting_set_bound(n, t).ok().map(|b| b.ln)
}

fn measure(inst: &Instance, mode: BenchMode, mcs_mode: McsMode) -> Result<Measured> {
    let g = &inst.graph;
    match mode {
        BenchMode::Mcs => {
            let t = required(inst, "T")?;
            let opts = ConnectingOptions { mode: mcs_mode, jobs: 1 };
            let stats = enumerate_minimal_connecting(g, &t, &opts, &mut Count::default())?;
            Ok(Measured {
                terminals: t.len(),
                emitted: stats.emitted,
                raw: stats.raw,
                bound_ln: set_bound(g.n(), t.len()),
                nodes: stats.mcs.calls + stats.mcs.path_nodes,
            })
        }
        BenchMode::Brute => {
            let t = required(inst, "T")?;
            let mut count = Count::default();
            let stats = if t.is_empty() { None } else { Some(brute_force_connecting(g, &t, &mut count)?) };
            Ok(Measured {
                terminals: t.len(),
                emitted: count.0,
                raw: stats.map_or(0, |s| s.examined),
                bound_ln: set_bound(g.n(), t.len()),
                nodes: stats.map_or(0, |s| s.examined),
            })
        }
        BenchMode::Paths => {
            let v = inst.vertex("v").unwrap_or_else(|| Err(Error::Precondition("instance has no set v".into())))?;
            let r = required(inst, "R")?;
            let stats = enumerate_induced_paths(g, v, &r, None, &mut Count::default())?;
            let depth = g.n().saturating_sub(r.len() + 1) as u64;
            Ok(Measured {
                terminals: r.len() + 1,
                emitted: stats.paths,
                raw: stats.paths,
                bound_ln: max_leaves(depth).to_f64().map(f64::ln),
                nodes: stats.nodes,
            })
        }
        BenchMode::Dcs => {
            let z1 = required(inst, "Z1")?;
            let z2 = required(inst, "Z2")?;
            let terminals = z1.len() + z2.len();
            let dcs = DcsInstance::new(g.clone(), z1, z2)?;
            let out = solve_with(&dcs, &SolveOptions::default());
            Ok(Measured {
                terminals,
                emitted: u64::from(out.witness.is_some()),
                raw: out.candidates,
                bound_ln: None,
                nodes: out.candidates,
            })
        }
    }
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}

/// Runs `mode` on one instance. Errors and panics end up in `status`.
pub fn run_one(b: &BenchInstance, mode: BenchMode, mcs_mode: McsMode) -> RunReport {
    let g = &b.instance.graph;
    let start = Instant::now();
    let result = panic::catch_unwind(AssertUnwindSafe(|| measure(&b.instance, mode, mcs_mode)));
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut report = RunReport {
        instance: b.id.clone(),
        n: g.n(),
        m: g.edge_count(),
        terminals: 0,
        mode,
        emitted: 0,
        raw: 0,
        bound_ln: None,
        within_bound: None,
        wall_ms,
        nodes: 0,
        status: "ok".into(),
    };
    match result {
        Ok(Ok(m)) => {
            report.terminals = m.terminals;
            report.emitted = m.emitted;
            report.raw = m.raw;
            report.bound_ln = m.bound_ln;
            report.nodes = m.nodes;
            report.within_bound = m.bound_ln.map(|b| m.emitted == 0 || (m.emitted as f64).ln() <= b + LN_SLACK);
        }
        Ok(Err(e)) => report.status = format!("error: {e}"),
        Err(payload) => report.status = format!("panic: {}", panic_message(payload.as_ref())),
    }
    report
}

/// Runs every instance on a pool of `jobs` threads (`0` picks the rayon
/// default). Reports come back in input order.
pub fn run_benchmark(instances: &[BenchInstance], mode: BenchMode, mcs_mode: McsMode, jobs: usize) -> Vec<RunReport> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(|| instances.par_iter().map(|b| run_one(b, mode, mcs_mode)).collect())
}

pub fn write_csv<W: std::io::Write>(reports: &[RunReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(r).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
    }
    w.flush().map_err(|e| Error::Parse { line: 0, msg: e.to_string() })
}

pub fn to_csv(reports: &[RunReport]) -> String {
    let mut buf = Vec::new();
    write_csv(reports, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is utf-8")
}

pub fn read_csv(text: &str) -> Result<Vec<RunReport>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .enumerate()
        .map(|(i, row)| row.map_err(|e| Error::Parse { line: i + 2, msg: e.to_string() }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{layered, LayerVariant, LayeredSpec};
    use crate::graph::Graph;

    fn layered_instance(columns: usize) -> BenchInstance {
        let l = layered(LayeredSpec { columns, target_size: 1, variant: LayerVariant::Exact }).unwrap();
        let mut instance = Instance::new(l.graph.clone());
        instance.sets.insert("v".into(), vec![l.source]);
        instance.sets.insert("R".into(), l.targets.to_vec());
        instance.sets.insert("T".into(), l.terminals().to_vec());
        BenchInstance { id: format!("layered-{columns}"), instance }
    }

    #[test]
    fn layered_counts() {
        let b = layered_instance(3);
        let paths = run_one(&b, BenchMode::Paths, McsMode::Rebuild);
        assert_eq!((paths.emitted, paths.status.as_str()), (27, "ok"));
        assert_eq!(paths.within_bound, Some(true));
        let mcs = run_one(&b, BenchMode::Mcs, McsMode::Rebuild);
        let brute = run_one(&b, BenchMode::Brute, McsMode::Rebuild);
        assert_eq!(mcs.emitted, 27);
        assert_eq!(brute.emitted, 27);
        assert!(mcs.emitted <= mcs.raw);
        assert_eq!(mcs.within_bound, Some(true));
    }

    #[test]
    fn failures_are_recorded() {
        let inst = Instance::new(Graph::empty(3));
        let b = BenchInstance { id: "bare".into(), instance: inst };
        let reports = run_benchmark(&[b.clone(), layered_instance(1)], BenchMode::Paths, McsMode::Rebuild, 2);
        assert!(reports[0].status.starts_with("error"));
        assert!(reports[1].is_ok());
        assert!(run_one(&b, BenchMode::Dcs, McsMode::Rebuild).status.starts_with("error"));
    }

    #[test]
    fn csv_round_trip() {
        let reports = run_benchmark(&[layered_instance(2), layered_instance(3)], BenchMode::Mcs, McsMode::Rebuild, 1);
        let text = to_csv(&reports);
        assert!(text.starts_with("instance,n,m,terminals,mode,"));
        assert_eq!(read_csv(&text).unwrap(), reports);
    }
}
