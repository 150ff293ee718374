//! Brute-force reference implementations.
//!
//! Everything here works on raw `u64` adjacency masks built from the graph and
//! shares no code with the enumerators it is used to check. Each oracle refuses
//! instances above a hard size cap instead of running for hours.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;

/// Default vertex cap of [`minimal_connecting`].
pub const DEFAULT_CAP: usize = 20;
/// Largest cap [`minimal_connecting_capped`] accepts; its tables have
/// `2^(n - |T|)` entries.
pub const MAX_CAP: usize = 26;
pub const PATH_CAP: usize = 12;
pub const DCS_CAP: usize = 16;
pub const LEAVES_CAP: u64 = 200;

fn adjacency(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, w| m | 1 << w)).collect()
}

fn mask_of(s: &VertexSet) -> u64 {
    s.iter().fold(0u64, |m, v| m | 1 << v)
}

fn ids(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// The empty set and singletons count as connected.
fn connected(adj: &[u64], s: u64) -> bool {
    if s == 0 {
        return true;
    }
    let mut reach = s & s.wrapping_neg();
    loop {
        let mut grown = reach;
        for v in ids(reach) {
            grown |= adj[v];
        }
        grown &= s;
        if grown == reach {
            return reach == s;
        }
        reach = grown;
    }
}

fn refuse(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::TooLarge { what, actual, limit })
    } else {
        Ok(())
    }
}

fn check(g: &Graph, s: &VertexSet) -> Result<()> {
    if s.universe() != g.n() {
        return Err(Error::UniverseMismatch { expected: g.n(), found: s.universe() });
    }
    Ok(())
}

/// All minimal T-connecting sets, as sorted id lists, for graphs of at most
/// [`DEFAULT_CAP`] vertices.
pub fn minimal_connecting(g: &Graph, t: &VertexSet) -> Result<BTreeSet<Vec<usize>>> {
    minimal_connecting_capped(g, t, DEFAULT_CAP)
}

/// [`minimal_connecting`] with an explicit vertex cap, itself at most
/// [`MAX_CAP`].
///
/// Straight from the definition: a table marks every T-connecting `T ∪ A`,
/// a subset-sum pass marks every `T ∪ A` that has a T-connecting subset, and a
/// set is minimal when it is connecting but none of its one-smaller subsets
/// has a connecting subset.
pub fn minimal_connecting_capped(g: &Graph, t: &VertexSet, cap: usize) -> Result<BTreeSet<Vec<usize>>> {
    refuse("vertex count", g.n(), cap.min(MAX_CAP))?;
    check(g, t)?;
    let mut out = BTreeSet::new();
    if t.is_empty() {
        return Ok(out);
    }
    let adj = adjacency(g);
    let tmask = mask_of(t);
    let free = ids(!tmask & ((1u64 << g.n()) - 1));
    let k = free.len();
    let size = 1usize << k;

    let mut members = vec![tmask; size];
    for m in 1..size {
        members[m] = members[m & (m - 1)] | 1 << free[m.trailing_zeros() as usize];
    }
    let conn: Vec<bool> = members.iter().map(|&s| connected(&adj, s)).collect();
    let mut has_connecting_subset = conn.clone();
    for bit in 0..k {
        for m in 0..size {
            if m >> bit & 1 == 1 && has_connecting_subset[m ^ 1 << bit] {
                has_connecting_subset[m] = true;
            }
        }
    }
    for m in 0..size {
        if conn[m] && (0..k).all(|bit| m >> bit & 1 == 0 || !has_connecting_subset[m ^ 1 << bit]) {
            out.insert(ids(members[m]));
        }
    }
    Ok(out)
}

/// Whether `s` is minimal T-connecting, by checking every strict subset of `s`
/// that still contains `T`. Limited to `|S \ T| <= 20`.
pub fn is_minimal_literal(g: &Graph, t: &VertexSet, s: &VertexSet) -> Result<bool> {
    check(g, t)?;
    check(g, s)?;
    refuse("vertex count", g.n(), 64)?;
    let (tm, sm) = (mask_of(t), mask_of(s));
    refuse("non-terminals in the candidate", (sm & !tm).count_ones() as usize, 20)?;
    if tm == 0 || tm & !sm != 0 {
        return Ok(false);
    }
    let adj = adjacency(g);
    if !connected(&adj, sm) {
        return Ok(false);
    }
    let extra = sm & !tm;
    let mut sub = extra;
    // walk all proper submasks of `extra`, largest first
    while sub != 0 {
        sub = (sub - 1) & extra;
        if connected(&adj, tm | sub) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All induced paths from `v1` whose last vertex is in `N(R)` and whose
/// earlier vertices avoid `N[R]`, for graphs of at most [`PATH_CAP`]
/// vertices.
///
/// Every vertex subset containing `v1` is tested for inducing a path with
/// `v1` as an end; the sequence is then read off by walking from `v1`.
pub fn induced_paths(g: &Graph, v1: usize, r: &VertexSet) -> Result<BTreeSet<Vec<usize>>> {
    refuse("vertex count", g.n(), PATH_CAP)?;
    check(g, r)?;
    if v1 >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v1, n: g.n() });
    }
    let adj = adjacency(g);
    let rm = mask_of(r);
    let src = 1u64 << v1;
    if rm == 0 || (adj[v1] | src) & rm != 0 {
        return Err(Error::Precondition("target set empty or meets N[v1]".into()));
    }
    let near_closed = ids(rm).iter().fold(rm, |m, &v| m | adj[v]);
    let near_open = near_closed & !rm;

    let mut out = BTreeSet::new();
    let all = (1u64 << g.n()) - 1;
    let others = all & !src;
    let mut sub = others;
    loop {
        if sub != 0 {
            if let Some(seq) = path_from(&adj, src | sub, v1) {
                let (last, body) = seq.split_last().expect("at least two vertices");
                if near_open >> last & 1 == 1 && body.iter().all(|&v| near_closed >> v & 1 == 0) {
                    out.insert(seq);
                }
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & others;
    }
    Ok(out)
}

/// If `G[s]` is a path with `start` at one end, returns it from `start`.
fn path_from(adj: &[u64], s: u64, start: usize) -> Option<Vec<usize>> {
    let members = ids(s);
    let degree = |v: usize| (adj[v] & s).count_ones();
    let edges: u32 = members.iter().map(|&v| degree(v)).sum::<u32>() / 2;
    if members.len() < 2
        || edges as usize != members.len() - 1
        || degree(start) != 1
        || members.iter().any(|&v| degree(v) > 2)
        || !connected(adj, s)
    {
        return None;
    }
    let mut seq = vec![start];
    let mut seen = 1u64 << start;
    let mut at = start;
    while seq.len() < members.len() {
        let next = adj[at] & s & !seen;
        at = next.trailing_zeros() as usize;
        seen |= 1 << at;
        seq.push(at);
    }
    Some(seq)
}

/// Decides 2-Disjoint Connected Subgraphs by trying every assignment of the
/// non-terminals to the first part, the second part or neither. At most
/// [`DCS_CAP`] vertices.
pub fn two_dcs(g: &Graph, z1: &VertexSet, z2: &VertexSet) -> Result<bool> {
    refuse("vertex count", g.n(), DCS_CAP)?;
    check(g, z1)?;
    check(g, z2)?;
    let (a, b) = (mask_of(z1), mask_of(z2));
    if a == 0 || b == 0 || a & b != 0 {
        return Err(Error::Precondition("terminal sets must be non-empty and disjoint".into()));
    }
    let adj = adjacency(g);
    let n = g.n();
    let conn: Vec<bool> = (0..1u64 << n).map(|s| connected(&adj, s)).collect();
    let free = ((1u64 << n) - 1) & !(a | b);
    let mut first = free;
    loop {
        if conn[(a | first) as usize] {
            let room = free & !first;
            let mut second = room;
            loop {
                if conn[(b | second) as usize] {
                    return Ok(true);
                }
                if second == 0 {
                    break;
                }
                second = (second - 1) & room;
            }
        }
        if first == 0 {
            return Ok(false);
        }
        first = (first - 1) & free;
    }
}

/// `l(t)` by dynamic programming over the number of children of the root:
/// `f(0) = 1`, `f(t) = max over c in 1..=t of max(1, c * f(t - c))`.
pub fn max_leaves(t: u64) -> Result<BigUint> {
    if t > LEAVES_CAP {
        return Err(Error::TooLarge { what: "leaf budget", actual: t as usize, limit: LEAVES_CAP as usize });
    }
    let mut f: Vec<BigUint> = vec![BigUint::one()];
    for s in 1..=t {
        let best =
            (1..=s).map(|c| (BigUint::from(c) * &f[(s - c) as usize]).max(BigUint::one())).max().expect("s >= 1");
        f.push(best);
    }
    Ok(f.pop().expect("non-empty"))
}
