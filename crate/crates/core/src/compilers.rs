//! Compilers that make any node program survive one corrupted message per
//! round, or hide every message from one eavesdropped edge per round.
//!
//! A compiled program replays the base program one base round at a time.
//! The base message on the directed slot `u → v` is identified by a key
//! `2e + dir`, where `dir = 0` means `u < v`. Every compiled payload is a
//! bundle of fixed-width packets `(ack, key, path, hop, body)`: `path` 0
//! is the edge itself, 1 and 2 are the extra edge-disjoint paths and 3 is
//! the covering-cycle detour; `hop` is the index of the hop being taken.
//!
//! Each base round runs through up to three stages:
//!
//! * phase 1: the message is sent on its edge in every round and once
//!   along the detour; the receiver accepts only unanimous copies;
//! * feedback: the same pattern carries acknowledgements back;
//! * phase 2: unacknowledged messages are sent on all three paths for
//!   `ℓ = 4·d₂` pipelined rounds and the receiver takes a strict majority
//!   of the expected copy count.
//!
//! Compiler A is phase 2 alone for every message. Compiler B pipelines all
//! detours at once and runs a single phase-2 window. Compiler C forwards
//! detour packets one per slot per round in FIFO order and gives each
//! suspicious message its own phase-2 window, picked by a random ID.

use std::cell::{Ref, RefCell};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ceil_log2;
use crate::cycle::CycleCover;
use crate::cover::graph_cover;
use crate::disjoint::{default_experiments, two_edge_disjoint_cover, DisjointCoverResult};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::sim::{push_uint, read_uint, Adversary, Bits, Choice, NodeProgram, RoundTrace, SimConfig, Tamper, View};
use crate::sim::ActionKind;

pub const DIRECT: u8 = 0;
pub const DETOUR: u8 = 3;

pub fn secret_share_with<R: Rng + ?Sized>(m: &[bool], k: usize, rng: &mut R) -> Result<Vec<Bits>> {
    if k < 2 {
        return Err(Error::TooFewShares(k));
    }
    let mut shares: Vec<Bits> = (0..k - 1).map(|_| (0..m.len()).map(|_| rng.gen()).collect()).collect();
    let last = (0..m.len()).map(|i| shares.iter().fold(m[i], |acc, s| acc ^ s[i])).collect();
    shares.push(last);
    Ok(shares)
}

/// `k` shares whose XOR is `m`.
pub fn secret_share(m: &[bool], k: usize, seed: u64) -> Result<Vec<Bits>> {
    secret_share_with(m, k, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// XOR of all shares; shares shorter than the longest are zero-padded.
pub fn reconstruct(shares: &[Bits]) -> Bits {
    let len = shares.iter().map(Vec::len).max().unwrap_or(0);
    (0..len).map(|i| shares.iter().fold(false, |acc, s| acc ^ s.get(i).copied().unwrap_or(false))).collect()
}

/// Source and destination of a directed key.
pub fn key_endpoints(g: &Graph, key: usize) -> (Vertex, Vertex) {
    let (a, b) = g.edge(key / 2);
    if key.is_multiple_of(2) {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn key_of(g: &Graph, src: Vertex, dst: Vertex) -> Option<usize> {
    g.edge_between(src, dst).map(|e| 2 * e + (src > dst) as usize)
}

/// Per-edge routes, each a vertex sequence from the smaller endpoint of
/// the edge to the larger one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutingPlan {
    /// `C_e ∖ {e}` for the shortest cover cycle through `e`.
    pub detours: Vec<Option<Vec<Vertex>>>,
    /// The edge itself and two more paths, pairwise edge-disjoint.
    pub triples: Vec<Option<[Vec<Vertex>; 3]>>,
    /// Longest covering cycle used.
    pub d1: usize,
    /// Most detours sharing one edge.
    pub c1: usize,
    /// Longest triple path, in edges.
    pub d2: usize,
    /// Most triple paths sharing one edge.
    pub c2: usize,
}

fn edges_to_vertices(g: &Graph, start: Vertex, edges: &[EdgeId]) -> Vec<Vertex> {
    let mut out = vec![start];
    let mut x = start;
    for &e in edges {
        x = g.other_endpoint(e, x);
        out.push(x);
    }
    out
}

fn path_load(g: &Graph, paths: impl IntoIterator<Item = Vec<Vertex>>) -> usize {
    let mut load = vec![0usize; g.m()];
    for p in paths {
        for w in p.windows(2) {
            load[g.edge_between(w[0], w[1]).expect("route follows graph edges")] += 1;
        }
    }
    load.into_iter().max().unwrap_or(0)
}

impl RoutingPlan {
    pub fn build(g: &Graph, cover: &CycleCover, disjoint: Option<&DisjointCoverResult>) -> RoutingPlan {
        let mut detours = vec![None; g.m()];
        for (e, slot) in detours.iter_mut().enumerate() {
            let Some(&(ci, _)) = cover.per_edge_index[e]
                .iter()
                .min_by_key(|&&(ci, _)| (cover.cycles[ci].len(), ci))
            else {
                continue;
            };
            let c = &cover.cycles[ci];
            let k = c.len();
            let i = c.edges.iter().position(|&f| f == e).unwrap();
            let mut p: Vec<Vertex> = (1..=k).map(|j| c.vertices[(i + j) % k]).collect();
            let (a, _) = g.edge(e);
            if p[0] != a {
                p.reverse();
            }
            *slot = Some(p);
        }
        let triples: Vec<Option<[Vec<Vertex>; 3]>> = match disjoint {
            Some(d) => d
                .triples
                .iter()
                .enumerate()
                .map(|(e, t)| {
                    let (a, _) = g.edge(e);
                    t.as_ref().map(|t| {
                        [edges_to_vertices(g, a, &t[0]), edges_to_vertices(g, a, &t[1]), edges_to_vertices(g, a, &t[2])]
                    })
                })
                .collect(),
            None => vec![None; g.m()],
        };
        let d1 = detours.iter().flatten().map(Vec::len).max().unwrap_or(0);
        let c1 = path_load(g, detours.iter().flatten().cloned());
        let d2 = triples.iter().flatten().flat_map(|t| t.iter().map(|p| p.len() - 1)).max().unwrap_or(0);
        let c2 = path_load(g, triples.iter().flatten().flat_map(|t| t.iter().cloned()));
        RoutingPlan { detours, triples, d1, c1, d2, c2 }
    }

    fn edge_ends(&self, e: EdgeId) -> Option<(Vertex, Vertex)> {
        if let Some(t) = &self.triples[e] {
            return Some((t[0][0], t[0][1]));
        }
        let d = self.detours[e].as_ref()?;
        Some((d[0], *d.last()?))
    }

    /// Route of `path` for `key`, oriented from the key's source.
    pub fn route(&self, key: usize, path: u8) -> Option<Vec<Vertex>> {
        let e = key / 2;
        let mut p = match path {
            DETOUR => self.detours[e].clone()?,
            DIRECT => {
                let (a, b) = self.edge_ends(e)?;
                vec![a, b]
            }
            1 | 2 => self.triples[e].as_ref().map(|t| t[path as usize].clone())?,
            _ => return None,
        };
        if key % 2 == 1 {
            p.reverse();
        }
        Some(p)
    }
}

/// Plan for the Byzantine compilers: the graph cover for detours and a
/// disjoint cover for triples, doubling the experiment count from the
/// default up to 16 times until every edge has a triple.
pub fn byzantine_plan(g: &Graph, seed: u64) -> Result<RoutingPlan> {
    let cover = graph_cover(g)?.cover;
    let base = default_experiments(g);
    let mut dc = two_edge_disjoint_cover(g, base, seed)?;
    let mut k = base;
    while !dc.failures.is_empty() && k < 16 * base {
        k *= 2;
        dc = two_edge_disjoint_cover(g, k, seed)?;
    }
    Ok(RoutingPlan::build(g, &cover, Some(&dc)))
}

/// Plan for the eavesdrop compiler: detours only.
pub fn eavesdrop_plan(g: &Graph) -> Result<RoutingPlan> {
    Ok(RoutingPlan::build(g, &graph_cover(g)?.cover, None))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Packet {
    pub ack: bool,
    pub key: usize,
    pub path: u8,
    pub hop: usize,
    pub body: Bits,
}

/// Fixed-width packet layout for one compiled protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Codec {
    pub key_bits: usize,
    pub hop_bits: usize,
    pub len_bits: usize,
    pub msg_bits: usize,
}

impl Codec {
    pub fn new(g: &Graph, msg_bits: usize) -> Codec {
        Codec {
            key_bits: ceil_log2(2 * g.m()).max(1),
            hop_bits: ceil_log2(g.n()).max(1),
            len_bits: ceil_log2(msg_bits + 1).max(1),
            msg_bits,
        }
    }

    /// Presence flag, length and zero-padded message.
    pub fn body_bits(&self) -> usize {
        1 + self.len_bits + self.msg_bits
    }

    pub fn packet_bits(&self) -> usize {
        1 + self.key_bits + 2 + self.hop_bits + self.body_bits()
    }

    pub fn encode_value(&self, v: Option<&[bool]>) -> Bits {
        let mut out = Vec::with_capacity(self.body_bits());
        out.push(v.is_some());
        let m = v.unwrap_or(&[]);
        push_uint(&mut out, m.len() as u64, self.len_bits);
        out.extend_from_slice(m);
        out.resize(self.body_bits(), false);
        out
    }

    /// `None` for a malformed body.
    pub fn decode_value(&self, b: &[bool]) -> Option<Option<Bits>> {
        if b.len() != self.body_bits() {
            return None;
        }
        let mut pos = 1;
        let len = read_uint(b, &mut pos, self.len_bits)? as usize;
        if len > self.msg_bits {
            return None;
        }
        Some(b[0].then(|| b[pos..pos + len].to_vec()))
    }

    pub fn encode(&self, p: &Packet, out: &mut Bits) {
        out.push(p.ack);
        push_uint(out, p.key as u64, self.key_bits);
        push_uint(out, p.path as u64, 2);
        push_uint(out, p.hop as u64, self.hop_bits);
        out.extend_from_slice(&p.body);
    }

    pub fn encode_all(&self, ps: &[Packet]) -> Bits {
        let mut out = Vec::with_capacity(ps.len() * self.packet_bits());
        for p in ps {
            self.encode(p, &mut out);
        }
        out
    }

    /// Every whole packet in the payload; trailing bits are ignored.
    pub fn decode_all(&self, payload: &[bool]) -> Vec<Packet> {
        let w = self.packet_bits();
        payload
            .chunks_exact(w)
            .map(|c| {
                let mut pos = 1;
                let key = read_uint(c, &mut pos, self.key_bits).unwrap() as usize;
                let path = read_uint(c, &mut pos, 2).unwrap() as u8;
                let hop = read_uint(c, &mut pos, self.hop_bits).unwrap() as usize;
                Packet { ack: c[0], key, path, hop, body: c[pos..].to_vec() }
            })
            .collect()
    }

    /// Rewrites every packet body to a different well-formed value, keeping
    /// headers intact; undecodable payloads are inverted bitwise.
    pub fn tamper(&self, payload: &[bool]) -> Bits {
        let mut ps = self.decode_all(payload);
        if ps.is_empty() {
            return payload.iter().map(|b| !b).collect();
        }
        for p in &mut ps {
            p.body = match self.decode_value(&p.body) {
                Some(Some(m)) if !m.is_empty() => {
                    let flipped: Bits = m.iter().map(|b| !b).collect();
                    self.encode_value(Some(&flipped))
                }
                Some(Some(_)) => self.encode_value(None),
                Some(None) => self.encode_value(Some(&vec![true; self.msg_bits])),
                None => p.body.iter().map(|b| !b).collect(),
            };
        }
        let mut out = self.encode_all(&ps);
        out.extend_from_slice(&payload[out.len().min(payload.len())..]);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    A,
    B,
    C,
    Eavesdrop,
}

/// Round budget of one base round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timeline {
    pub phase1: usize,
    pub feedback: usize,
    pub windows: usize,
    pub ell: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Phase1(usize),
    Feedback(usize),
    Phase2 { window: usize, offset: usize },
}

impl Timeline {
    pub fn len(&self) -> usize {
        self.phase1 + self.feedback + self.windows * self.ell
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn stage(&self, o: usize) -> Stage {
        if o < self.phase1 {
            Stage::Phase1(o)
        } else if o < self.phase1 + self.feedback {
            Stage::Feedback(o - self.phase1)
        } else {
            let q = o - self.phase1 - self.feedback;
            Stage::Phase2 { window: q / self.ell, offset: q % self.ell }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sent {
    pub base_round: usize,
    pub key: usize,
    pub value: Option<Bits>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Via {
    /// Unanimous phase-1 copies.
    Phase1,
    Majority { window: usize },
    Shares,
    Failed,
    /// Majorities in two windows.
    Tie,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recovery {
    pub base_round: usize,
    pub key: usize,
    pub via: Via,
    /// Recovered message; `None` when recovery failed.
    pub value: Option<Option<Bits>>,
    pub agreeing: usize,
    pub received: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompileLog {
    pub sent: Vec<Sent>,
    pub recoveries: Vec<Recovery>,
    pub events: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LogCheck {
    pub recovered: usize,
    pub wrong: usize,
    pub failed: usize,
    pub by_majority: usize,
    /// Majority recoveries whose agreeing count is not above half the
    /// expected copies.
    pub majority_violations: usize,
    /// Smallest `agreeing / expected` seen over majority recoveries.
    pub min_majority_fraction: Option<f64>,
}

impl CompileLog {
    /// Compares every recovery with what was sent.
    pub fn check(&self) -> LogCheck {
        let sent: HashMap<(usize, usize), &Option<Bits>> =
            self.sent.iter().map(|s| ((s.base_round, s.key), &s.value)).collect();
        let mut c = LogCheck::default();
        for r in &self.recoveries {
            match &r.value {
                None => c.failed += 1,
                Some(v) if Some(&v) == sent.get(&(r.base_round, r.key)) => c.recovered += 1,
                Some(_) => c.wrong += 1,
            }
            if let Via::Majority { .. } = r.via {
                c.by_majority += 1;
                if 2 * r.agreeing <= r.expected {
                    c.majority_violations += 1;
                }
                let f = r.agreeing as f64 / r.expected as f64;
                c.min_majority_fraction = Some(c.min_majority_fraction.map_or(f, |m: f64| m.min(f)));
            }
        }
        c
    }
}

#[derive(Debug, Default)]
struct Registry {
    pending: BTreeMap<usize, BTreeSet<usize>>,
    ids: HashMap<(usize, usize), usize>,
}

/// Shared, read-mostly state of one compiled protocol.
pub struct Protocol {
    pub mode: Mode,
    pub codec: Codec,
    pub timeline: Timeline,
    /// Bits per slot per round needed by the schedule.
    pub bandwidth: usize,
    pub plan: RoutingPlan,
    routes: Vec<[Option<Vec<Vertex>>; 4]>,
    hop_round: Vec<Vec<usize>>,
    expected: Vec<usize>,
    seed: u64,
    registry: RefCell<Registry>,
    log: RefCell<CompileLog>,
}

impl Protocol {
    pub fn log(&self) -> Ref<'_, CompileLog> {
        self.log.borrow()
    }

    pub fn route(&self, key: usize, path: u8) -> Option<&[Vertex]> {
        self.routes.get(key)?.get(path as usize)?.as_deref()
    }

    /// Round offsets, within phase 1, at which each detour hop of `key` is taken.
    pub fn detour_schedule(&self, key: usize) -> &[usize] {
        &self.hop_round[key]
    }

    /// Copies the phase-2 receiver of `key` expects over one window.
    pub fn expected_copies(&self, key: usize) -> usize {
        self.expected[key]
    }

    pub fn sim_config(&self, base_rounds: usize) -> SimConfig {
        let mut cfg = SimConfig::new(base_rounds * self.timeline.len(), self.bandwidth);
        cfg.record_messages = false;
        cfg
    }

    fn window_of(&self, base_round: usize, key: usize) -> usize {
        let mut reg = self.registry.borrow_mut();
        if let Some(&w) = reg.ids.get(&(base_round, key)) {
            return w;
        }
        let keys: Vec<usize> = reg.pending.remove(&base_round).unwrap_or_default().into_iter().collect();
        let space = self.timeline.windows;
        let mut attempt = 0u64;
        let ids = loop {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (base_round as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            rng.set_stream(attempt);
            let ids: Vec<usize> = keys.iter().map(|_| rng.gen_range(1..=space)).collect();
            let distinct: HashSet<&usize> = ids.iter().collect();
            if distinct.len() == ids.len() || attempt == 64 {
                break ids;
            }
            self.log
                .borrow_mut()
                .events
                .push(format!("base round {base_round}: suspicious-ID collision, renumbering (attempt {})", attempt + 1));
            attempt += 1;
        };
        for (k, id) in keys.iter().zip(ids) {
            reg.ids.insert((base_round, *k), id - 1);
        }
        reg.ids.get(&(base_round, key)).copied().unwrap_or(0)
    }
}

/// FIFO forwarding: every directed slot takes one detour packet per round.
/// Returns the hop offsets per key and the round after the last arrival.
fn fifo_schedule(routes: &[[Option<Vec<Vertex>>; 4]]) -> (Vec<Vec<usize>>, usize) {
    let mut hop_round: Vec<Vec<usize>> = routes
        .iter()
        .map(|r| vec![0; r[DETOUR as usize].as_ref().map_or(0, |p| p.len() - 1)])
        .collect();
    let mut queues: BTreeMap<(Vertex, Vertex), VecDeque<(usize, usize)>> = BTreeMap::new();
    for (k, r) in routes.iter().enumerate() {
        if let Some(p) = &r[DETOUR as usize] {
            queues.entry((p[0], p[1])).or_default().push_back((k, 0));
        }
    }
    let mut round = 0;
    let mut end = 0;
    while queues.values().any(|q| !q.is_empty()) {
        let mut moved = Vec::new();
        for q in queues.values_mut() {
            if let Some((k, h)) = q.pop_front() {
                hop_round[k][h] = round;
                end = end.max(round + 1);
                let p = routes[k][DETOUR as usize].as_ref().unwrap();
                if h + 2 < p.len() {
                    moved.push((k, h + 1, (p[h + 1], p[h + 2])));
                }
            }
        }
        moved.sort_unstable();
        for (k, h, slot) in moved {
            queues.entry(slot).or_default().push_back((k, h));
        }
        round += 1;
    }
    (hop_round, end)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompileOptions {
    /// Width limit of base-program messages.
    pub msg_bits: usize,
    pub seed: u64,
}

pub struct Compiled {
    pub protocol: Rc<Protocol>,
    pub programs: Vec<Box<dyn NodeProgram>>,
}

fn slot_load(g: &Graph, routes: &[[Option<Vec<Vertex>>; 4]], paths: &[u8]) -> usize {
    let mut load: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    for r in routes {
        for &p in paths {
            if let Some(vs) = &r[p as usize] {
                for w in vs.windows(2) {
                    *load.entry((w[0], w[1])).or_default() += 1;
                }
            }
        }
    }
    let _ = g;
    load.into_values().max().unwrap_or(0)
}

fn build_protocol(g: &Graph, plan: &RoutingPlan, mode: Mode, opts: CompileOptions) -> Result<Protocol> {
    let need_detour = mode != Mode::A;
    let need_triple = mode != Mode::Eavesdrop;
    for e in 0..g.m() {
        if need_detour && plan.detours[e].is_none() {
            return Err(Error::MissingRoute { edge: e, reason: "no covering cycle" });
        }
        if need_triple && plan.triples[e].is_none() {
            return Err(Error::MissingRoute { edge: e, reason: "no edge-disjoint triple" });
        }
    }
    let routes: Vec<[Option<Vec<Vertex>>; 4]> = (0..2 * g.m())
        .map(|k| [plan.route(k, 0), plan.route(k, 1), plan.route(k, 2), plan.route(k, DETOUR)])
        .collect();
    let codec = Codec::new(g, opts.msg_bits);
    let ell = 4 * plan.d2.max(1);
    let expected = routes
        .iter()
        .map(|r| r[..3].iter().flatten().map(|p| ell + 2 - p.len()).sum())
        .collect();
    let pipelined: Vec<Vec<usize>> = routes
        .iter()
        .map(|r| r[DETOUR as usize].as_ref().map_or(Vec::new(), |p| (0..p.len() - 1).collect()))
        .collect();
    let pw = codec.packet_bits();
    let (timeline, hop_round, packets) = match mode {
        Mode::A => (
            Timeline { phase1: 0, feedback: 0, windows: 1, ell },
            pipelined,
            slot_load(g, &routes, &[0, 1, 2]),
        ),
        Mode::B => (
            Timeline { phase1: plan.d1, feedback: plan.d1, windows: 1, ell },
            pipelined,
            slot_load(g, &routes, &[DIRECT, DETOUR]).max(slot_load(g, &routes, &[0, 1, 2])),
        ),
        Mode::C => {
            let (hops, end) = fifo_schedule(&routes);
            let r1 = end.max(plan.d1);
            let t = 4 * (plan.d1 + plan.c1);
            (Timeline { phase1: r1, feedback: r1, windows: t * t, ell }, hops, 2)
        }
        Mode::Eavesdrop => (
            Timeline { phase1: plan.d1, feedback: 0, windows: 0, ell: 1 },
            pipelined,
            slot_load(g, &routes, &[DIRECT, DETOUR]),
        ),
    };
    Ok(Protocol {
        mode,
        codec,
        timeline,
        bandwidth: packets.max(1) * pw,
        plan: plan.clone(),
        routes,
        hop_round,
        expected,
        seed: opts.seed,
        registry: RefCell::new(Registry::default()),
        log: RefCell::new(CompileLog::default()),
    })
}

/// Wraps one base program per node. `mode` must not be `Eavesdrop`.
pub fn compile_byzantine(
    g: &Graph,
    plan: &RoutingPlan,
    mode: Mode,
    base: Vec<Box<dyn NodeProgram>>,
    opts: CompileOptions,
) -> Result<Compiled> {
    if mode == Mode::Eavesdrop {
        return Err(Error::InvalidArgument("use compile_eavesdrop".into()));
    }
    check_base(g, &base)?;
    let pr = Rc::new(build_protocol(g, plan, mode, opts)?);
    let programs = base
        .into_iter()
        .enumerate()
        .map(|(v, b)| Box::new(ByzNode::new(g, v, b, pr.clone())) as Box<dyn NodeProgram>)
        .collect();
    Ok(Compiled { protocol: pr, programs })
}

pub fn compile_byzantine_a(g: &Graph, plan: &RoutingPlan, base: Vec<Box<dyn NodeProgram>>, opts: CompileOptions) -> Result<Compiled> {
    compile_byzantine(g, plan, Mode::A, base, opts)
}

pub fn compile_byzantine_b(g: &Graph, plan: &RoutingPlan, base: Vec<Box<dyn NodeProgram>>, opts: CompileOptions) -> Result<Compiled> {
    compile_byzantine(g, plan, Mode::B, base, opts)
}

pub fn compile_byzantine_c(g: &Graph, plan: &RoutingPlan, base: Vec<Box<dyn NodeProgram>>, opts: CompileOptions) -> Result<Compiled> {
    compile_byzantine(g, plan, Mode::C, base, opts)
}

pub fn compile_eavesdrop(g: &Graph, plan: &RoutingPlan, base: Vec<Box<dyn NodeProgram>>, opts: CompileOptions) -> Result<Compiled> {
    check_base(g, &base)?;
    let pr = Rc::new(build_protocol(g, plan, Mode::Eavesdrop, opts)?);
    let programs = base
        .into_iter()
        .enumerate()
        .map(|(v, b)| Box::new(EavesNode::new(g, v, b, pr.clone())) as Box<dyn NodeProgram>)
        .collect();
    Ok(Compiled { protocol: pr, programs })
}

fn check_base(g: &Graph, base: &[Box<dyn NodeProgram>]) -> Result<()> {
    if base.len() != g.n() {
        return Err(Error::InvalidArgument(format!("{} base programs for {} nodes", base.len(), g.n())));
    }
    Ok(())
}

struct Keys {
    id: Vertex,
    /// `(key, neighbor)` with this node as source.
    out: Vec<(usize, Vertex)>,
    /// `(key, neighbor)` with this node as destination.
    inn: Vec<(usize, Vertex)>,
}

impl Keys {
    fn new(g: &Graph, id: Vertex) -> Keys {
        let mut out = Vec::new();
        let mut inn = Vec::new();
        for &(y, _) in g.neighbors(id) {
            out.push((key_of(g, id, y).unwrap(), y));
            inn.push((key_of(g, y, id).unwrap(), y));
        }
        Keys { id, out, inn }
    }
}

fn base_messages(keys: &Keys, sends: Vec<(Vertex, Bits)>, msg_bits: usize, log: &mut CompileLog, base_round: usize) -> HashMap<usize, Option<Bits>> {
    let mut by_dst: HashMap<Vertex, Bits> = HashMap::new();
    for (dst, bits) in sends {
        if bits.len() > msg_bits {
            log.events.push(format!("base round {base_round}: node {} sent {} bits to {dst}, limit {msg_bits}", keys.id, bits.len()));
            continue;
        }
        by_dst.insert(dst, bits);
    }
    let mut out = HashMap::new();
    for &(k, y) in &keys.out {
        let v = by_dst.remove(&y);
        log.sent.push(Sent { base_round, key: k, value: v.clone() });
        out.insert(k, v);
    }
    out
}

fn bundle(codec: &Codec, mut out: BTreeMap<Vertex, Vec<Packet>>) -> Vec<(Vertex, Bits)> {
    out.iter_mut()
        .map(|(&y, ps)| {
            ps.sort();
            (y, codec.encode_all(ps))
        })
        .collect()
}

struct ByzNode {
    keys: Keys,
    base: Box<dyn NodeProgram>,
    pr: Rc<Protocol>,
    out_val: HashMap<usize, Option<Bits>>,
    phase1: HashMap<usize, Vec<Bits>>,
    accepted: HashMap<usize, Option<Bits>>,
    acks: HashMap<usize, usize>,
    /// `(window, key)`; `None` until the windows are known.
    active: Option<Vec<(usize, usize)>>,
    suspicious: Vec<usize>,
    votes: BTreeMap<(usize, usize), BTreeMap<Bits, usize>>,
    seen: HashSet<(usize, u8, usize)>,
    forward: BTreeMap<usize, Vec<(Vertex, Packet)>>,
    ack_yes: Bits,
}

impl ByzNode {
    fn new(g: &Graph, id: Vertex, base: Box<dyn NodeProgram>, pr: Rc<Protocol>) -> Self {
        let ack_yes = pr.codec.encode_value(Some(&[true]));
        ByzNode {
            keys: Keys::new(g, id),
            base,
            pr,
            out_val: HashMap::new(),
            phase1: HashMap::new(),
            accepted: HashMap::new(),
            acks: HashMap::new(),
            active: None,
            suspicious: Vec::new(),
            votes: BTreeMap::new(),
            seen: HashSet::new(),
            forward: BTreeMap::new(),
            ack_yes,
        }
    }

    fn start(&mut self, base_round: usize) {
        let sends = self.base.send(base_round);
        let mut log = self.pr.log.borrow_mut();
        self.out_val = base_messages(&self.keys, sends, self.pr.codec.msg_bits, &mut log, base_round);
        self.phase1.clear();
        self.accepted.clear();
        self.acks.clear();
        self.suspicious.clear();
        self.votes.clear();
        self.active = match self.pr.mode {
            Mode::A => Some(self.keys.out.iter().map(|&(k, _)| (0, k)).collect()),
            _ => None,
        };
    }

    fn body(&self, key: usize) -> Bits {
        self.pr.codec.encode_value(self.out_val[&key].as_deref())
    }

    fn first_hop(&self, out: &mut BTreeMap<Vertex, Vec<Packet>>, ack: bool, key: usize, path: u8, body: Bits) {
        let route = self.pr.route(key, path).unwrap();
        out.entry(route[1]).or_default().push(Packet { ack, key, path, hop: 0, body });
    }

    fn finish_phase1(&mut self, base_round: usize) {
        let need = self.pr.timeline.phase1 + 1;
        let mut log = self.pr.log.borrow_mut();
        for &(k, _) in &self.keys.inn {
            let copies = self.phase1.get(&k).map_or(&[][..], |v| &v[..]);
            if copies.len() == need && copies.iter().all(|c| *c == copies[0]) {
                if let Some(v) = self.pr.codec.decode_value(&copies[0]) {
                    log.recoveries.push(Recovery {
                        base_round,
                        key: k,
                        via: Via::Phase1,
                        value: Some(v.clone()),
                        agreeing: need,
                        received: need,
                        expected: need,
                    });
                    self.accepted.insert(k, v);
                }
            }
        }
    }

    fn finish_feedback(&mut self, base_round: usize) {
        let need = self.pr.timeline.feedback + 1;
        for &(k, _) in &self.keys.out {
            if self.acks.get(&k).copied().unwrap_or(0) != need {
                self.suspicious.push(k);
            }
        }
        match self.pr.mode {
            Mode::B => self.active = Some(self.suspicious.iter().map(|&k| (0, k)).collect()),
            Mode::C => {
                let mut reg = self.pr.registry.borrow_mut();
                let set = reg.pending.entry(base_round).or_default();
                set.extend(self.suspicious.iter().copied());
            }
            _ => {}
        }
    }

    fn finish_round(&mut self, base_round: usize) {
        let mut inbox = Vec::new();
        for &(k, y) in &self.keys.inn {
            if !self.accepted.contains_key(&k) {
                let expected = self.pr.expected[k];
                let mut winners = Vec::new();
                let mut received = 0;
                for (&(key, w), counts) in self.votes.range((k, 0)..(k + 1, 0)) {
                    debug_assert_eq!(key, k);
                    received += counts.values().sum::<usize>();
                    for (body, &c) in counts {
                        if 2 * c > expected {
                            winners.push((w, body.clone(), c));
                        }
                    }
                }
                let mut log = self.pr.log.borrow_mut();
                let rec = match winners.len() {
                    1 => {
                        let (w, body, c) = winners.pop().unwrap();
                        let value = self.pr.codec.decode_value(&body);
                        if let Some(v) = &value {
                            self.accepted.insert(k, v.clone());
                        }
                        let via = if value.is_some() { Via::Majority { window: w } } else { Via::Failed };
                        Recovery { base_round, key: k, via, value, agreeing: c, received, expected }
                    }
                    0 => Recovery { base_round, key: k, via: Via::Failed, value: None, agreeing: 0, received, expected },
                    _ => {
                        log.events.push(format!("base round {base_round}: key {k} has majorities in several windows"));
                        Recovery { base_round, key: k, via: Via::Tie, value: None, agreeing: 0, received, expected }
                    }
                };
                log.recoveries.push(rec);
            }
            if let Some(Some(bits)) = self.accepted.get(&k) {
                inbox.push((y, bits.clone()));
            }
        }
        inbox.sort_by_key(|(y, _)| *y);
        self.base.receive(base_round, &inbox);
    }
}

impl NodeProgram for ByzNode {
    fn send(&mut self, round: usize) -> Vec<(Vertex, Bits)> {
        let tl = self.pr.timeline;
        let (base_round, o) = (round / tl.len(), round % tl.len());
        if o == 0 {
            self.start(base_round);
        }
        let mut out: BTreeMap<Vertex, Vec<Packet>> = BTreeMap::new();
        match tl.stage(o) {
            Stage::Phase1(q) => {
                for &(k, _) in &self.keys.out {
                    let body = self.body(k);
                    if self.pr.hop_round[k].first() == Some(&q) {
                        self.first_hop(&mut out, false, k, DETOUR, body.clone());
                    }
                    self.first_hop(&mut out, false, k, DIRECT, body);
                }
            }
            Stage::Feedback(q) => {
                for &(k, _) in &self.keys.inn {
                    let rk = k ^ 1;
                    let ok = self.accepted.contains_key(&k);
                    let body = self.pr.codec.encode_value(Some(&[ok]));
                    if self.pr.hop_round[rk].first() == Some(&q) {
                        self.first_hop(&mut out, true, rk, DETOUR, body.clone());
                    }
                    self.first_hop(&mut out, true, rk, DIRECT, body);
                }
            }
            Stage::Phase2 { window, offset } => {
                if self.active.is_none() {
                    let list = self.suspicious.iter().map(|&k| (self.pr.window_of(base_round, k), k)).collect();
                    self.active = Some(list);
                }
                let active = self.active.clone().unwrap_or_default();
                for (w, k) in active {
                    if w != window {
                        continue;
                    }
                    let body = self.body(k);
                    for p in 0..3u8 {
                        let hops = self.pr.route(k, p).unwrap().len() - 1;
                        if offset + hops <= tl.ell {
                            self.first_hop(&mut out, false, k, p, body.clone());
                        }
                    }
                }
            }
        }
        if let Some(fw) = self.forward.remove(&round) {
            for (y, p) in fw {
                out.entry(y).or_default().push(p);
            }
        }
        bundle(&self.pr.codec, out)
    }

    fn receive(&mut self, round: usize, inbox: &[(Vertex, Bits)]) {
        let tl = self.pr.timeline;
        let (base_round, o) = (round / tl.len(), round % tl.len());
        let stage = tl.stage(o);
        let pr = self.pr.clone();
        self.seen.clear();
        for (from, payload) in inbox {
            for pk in pr.codec.decode_all(payload) {
                let Some(route) = pr.route(pk.key, pk.path) else { continue };
                if pk.hop + 1 >= route.len() || route[pk.hop] != *from || route[pk.hop + 1] != self.keys.id {
                    continue;
                }
                let timely = match stage {
                    Stage::Phase1(q) | Stage::Feedback(q) => {
                        let want_ack = matches!(stage, Stage::Feedback(_));
                        pk.ack == want_ack
                            && match pk.path {
                                DIRECT => true,
                                DETOUR => pr.hop_round[pk.key].get(pk.hop) == Some(&q),
                                _ => false,
                            }
                    }
                    Stage::Phase2 { offset, .. } => {
                        !pk.ack && pk.path < 3 && offset >= pk.hop && offset - pk.hop + route.len() - 1 <= tl.ell
                    }
                };
                if !timely || !self.seen.insert((pk.key, pk.path, pk.hop)) {
                    continue;
                }
                if pk.hop + 2 == route.len() {
                    match stage {
                        Stage::Phase1(_) => self.phase1.entry(pk.key).or_default().push(pk.body),
                        Stage::Feedback(_) => {
                            if pk.body == self.ack_yes {
                                *self.acks.entry(pk.key ^ 1).or_default() += 1;
                            }
                        }
                        Stage::Phase2 { window, .. } => {
                            *self.votes.entry((pk.key, window)).or_default().entry(pk.body).or_default() += 1;
                        }
                    }
                } else {
                    let when = match stage {
                        Stage::Phase1(q) | Stage::Feedback(q) => round - q + pr.hop_round[pk.key][pk.hop + 1],
                        Stage::Phase2 { .. } => round + 1,
                    };
                    let next = route[pk.hop + 2];
                    self.forward.entry(when).or_default().push((next, Packet { hop: pk.hop + 1, ..pk }));
                }
            }
        }
        if tl.phase1 > 0 && o + 1 == tl.phase1 {
            self.finish_phase1(base_round);
        }
        if tl.feedback > 0 && o + 1 == tl.phase1 + tl.feedback {
            self.finish_feedback(base_round);
        }
        if o + 1 == tl.len() {
            self.finish_round(base_round);
        }
    }

    fn output(&self) -> Bits {
        self.base.output()
    }
}

struct EavesNode {
    keys: Keys,
    base: Box<dyn NodeProgram>,
    pr: Rc<Protocol>,
    rng: ChaCha8Rng,
    shares: HashMap<usize, Vec<Bits>>,
    got: HashMap<usize, BTreeMap<usize, Bits>>,
    forward: BTreeMap<usize, Vec<(Vertex, Packet)>>,
}

impl EavesNode {
    fn new(g: &Graph, id: Vertex, base: Box<dyn NodeProgram>, pr: Rc<Protocol>) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(pr.seed);
        rng.set_stream(id as u64);
        EavesNode {
            keys: Keys::new(g, id),
            base,
            pr,
            rng,
            shares: HashMap::new(),
            got: HashMap::new(),
            forward: BTreeMap::new(),
        }
    }
}

impl NodeProgram for EavesNode {
    fn send(&mut self, round: usize) -> Vec<(Vertex, Bits)> {
        let d = self.pr.timeline.phase1;
        let (base_round, o) = (round / d, round % d);
        if o == 0 {
            let sends = self.base.send(base_round);
            let vals = base_messages(&self.keys, sends, self.pr.codec.msg_bits, &mut self.pr.log.borrow_mut(), base_round);
            self.shares.clear();
            self.got.clear();
            for &(k, _) in &self.keys.out {
                let body = self.pr.codec.encode_value(vals[&k].as_deref());
                let shares = secret_share_with(&body, d + 1, &mut self.rng).expect("at least two shares");
                self.shares.insert(k, shares);
            }
        }
        let mut out: BTreeMap<Vertex, Vec<Packet>> = BTreeMap::new();
        for &(k, y) in &self.keys.out {
            let s = &self.shares[&k];
            out.entry(y).or_default().push(Packet { ack: false, key: k, path: DIRECT, hop: 0, body: s[o].clone() });
            if o == 0 {
                let route = self.pr.route(k, DETOUR).unwrap();
                out.entry(route[1]).or_default().push(Packet { ack: false, key: k, path: DETOUR, hop: 0, body: s[d].clone() });
            }
        }
        if let Some(fw) = self.forward.remove(&round) {
            for (y, p) in fw {
                out.entry(y).or_default().push(p);
            }
        }
        bundle(&self.pr.codec, out)
    }

    fn receive(&mut self, round: usize, inbox: &[(Vertex, Bits)]) {
        let d = self.pr.timeline.phase1;
        let (base_round, o) = (round / d, round % d);
        let pr = self.pr.clone();
        for (from, payload) in inbox {
            for pk in pr.codec.decode_all(payload) {
                let Some(route) = pr.route(pk.key, pk.path) else { continue };
                if pk.ack || pk.hop + 1 >= route.len() || route[pk.hop] != *from || route[pk.hop + 1] != self.keys.id {
                    continue;
                }
                let index = match pk.path {
                    DIRECT => o,
                    DETOUR if pk.hop == o => d,
                    _ => continue,
                };
                if pk.hop + 2 == route.len() {
                    self.got.entry(pk.key).or_default().entry(index).or_insert(pk.body);
                } else {
                    let next = route[pk.hop + 2];
                    self.forward.entry(round + 1).or_default().push((next, Packet { hop: pk.hop + 1, ..pk }));
                }
            }
        }
        if o + 1 == d {
            let mut inbox = Vec::new();
            let mut log = pr.log.borrow_mut();
            for &(k, y) in &self.keys.inn {
                let got = self.got.remove(&k).unwrap_or_default();
                let n = got.len();
                let value = (n == d + 1)
                    .then(|| pr.codec.decode_value(&reconstruct(&got.into_values().collect::<Vec<_>>())))
                    .flatten();
                let via = if value.is_some() { Via::Shares } else { Via::Failed };
                if let Some(Some(bits)) = &value {
                    inbox.push((y, bits.clone()));
                }
                log.recoveries.push(Recovery { base_round, key: k, via, value, agreeing: n, received: n, expected: d + 1 });
            }
            drop(log);
            inbox.sort_by_key(|(y, _)| *y);
            self.base.receive(base_round, &inbox);
        }
    }

    fn output(&self) -> Bits {
        self.base.output()
    }
}

/// Shares of each `(base round, key)` seen by the eavesdropper, by share index.
pub fn observed_shares(pr: &Protocol, trace: &RoundTrace) -> BTreeMap<(usize, usize), BTreeMap<usize, Bits>> {
    let d = pr.timeline.phase1;
    let mut out: BTreeMap<(usize, usize), BTreeMap<usize, Bits>> = BTreeMap::new();
    for a in trace.actions() {
        let ActionKind::Eavesdrop(seen) = &a.kind else { continue };
        let (base_round, o) = (a.round / d, a.round % d);
        for m in seen {
            for pk in pr.codec.decode_all(&m.payload) {
                let index = if pk.path == DETOUR { d } else { o };
                out.entry((base_round, pk.key)).or_default().insert(index, pk.body);
            }
        }
    }
    out
}

/// Rewrites packet bodies while leaving headers valid.
pub fn semantic_tamper(pr: &Protocol) -> Tamper {
    let codec = pr.codec;
    Rc::new(move |b: &[bool]| Some(codec.tamper(b)))
}

/// Concentrates corruptions on the message with the most corrupted copies
/// so far in the current base round, preferring phase-2 traffic.
pub struct GreedyMajorityBreaker {
    pr: Rc<Protocol>,
    hits: HashMap<(usize, usize), usize>,
}

impl GreedyMajorityBreaker {
    pub fn new(pr: Rc<Protocol>) -> Self {
        GreedyMajorityBreaker { pr, hits: HashMap::new() }
    }
}

impl Adversary for GreedyMajorityBreaker {
    fn act(&mut self, view: &View<'_>) -> Option<Choice> {
        let tl = self.pr.timeline;
        let (base_round, o) = (view.round / tl.len(), view.round % tl.len());
        let phase2 = matches!(tl.stage(o), Stage::Phase2 { .. });
        let mut best: Option<(usize, usize)> = None;
        for (i, m) in view.in_flight.iter().enumerate() {
            let score = self
                .pr
                .codec
                .decode_all(&m.payload)
                .iter()
                .map(|p| {
                    let h = self.hits.get(&(base_round, p.key)).copied().unwrap_or(0) + 1;
                    if phase2 && !p.ack {
                        4 * h
                    } else if p.path == DETOUR {
                        2 * h
                    } else {
                        h
                    }
                })
                .max()
                .unwrap_or(0);
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, i));
            }
        }
        let (_, i) = best?;
        let m = &view.in_flight[i];
        for p in self.pr.codec.decode_all(&m.payload) {
            *self.hits.entry((base_round, p.key)).or_default() += 1;
        }
        Some(Choice::Corrupt { src: m.src, dst: m.dst, replacement: Some(self.pr.codec.tamper(&m.payload)) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::sim::{flood_programs, run_protocol, uint_bits, FixedEdge, NullAdversary, RandomEdge, Scripted};

    fn plan_for(g: &Graph, with_triples: bool) -> RoutingPlan {
        if with_triples {
            byzantine_plan(g, 3).unwrap()
        } else {
            eavesdrop_plan(g).unwrap()
        }
    }

    const OPTS: CompileOptions = CompileOptions { msg_bits: 4, seed: 17 };

    fn fault_free(g: &Graph, vals: &[u64]) -> Vec<Bits> {
        run_protocol(g, &mut flood_programs(g, vals, 4), &mut NullAdversary, &SimConfig::new(3, 4)).unwrap().outputs
    }

    #[test]
    fn shares_reconstruct() {
        let m = vec![true, false, true, true, false];
        for k in 2..6 {
            let s = secret_share(&m, k, k as u64).unwrap();
            assert_eq!(s.len(), k);
            assert_eq!(reconstruct(&s), m);
        }
        let z = secret_share(&[false; 8], 2, 4).unwrap();
        assert_eq!(z[0], z[1]);
        assert!(secret_share(&m, 1, 0).is_err());
    }

    #[test]
    fn codec_round_trip_and_tamper() {
        let g = generators::petersen();
        let c = Codec::new(&g, 6);
        let body = c.encode_value(Some(&[true, false, true]));
        assert_eq!(c.decode_value(&body), Some(Some(vec![true, false, true])));
        assert_eq!(c.decode_value(&c.encode_value(None)), Some(None));
        let p = Packet { ack: false, key: 29, path: 2, hop: 5, body: body.clone() };
        let bits = c.encode_all(&[p.clone(), p.clone()]);
        assert_eq!(c.decode_all(&bits), vec![p.clone(), p.clone()]);
        let t = c.decode_all(&c.tamper(&bits));
        assert_eq!((t[0].key, t[0].hop), (29, 5));
        assert_eq!(c.decode_value(&t[0].body), Some(Some(vec![false, true, false])));
    }

    #[test]
    fn detours_avoid_their_edge() {
        let g = generators::petersen();
        let plan = plan_for(&g, false);
        for (e, d) in plan.detours.iter().enumerate() {
            let d = d.as_ref().unwrap();
            let (a, b) = g.edge(e);
            assert_eq!((d[0], *d.last().unwrap()), (a, b));
            assert!(d.len() >= 3);
            let set: HashSet<&Vertex> = d.iter().collect();
            assert_eq!(set.len(), d.len());
        }
    }

    #[test]
    fn fifo_schedule_is_consistent() {
        let g = generators::petersen();
        let pr = build_protocol(&g, &plan_for(&g, true), Mode::C, OPTS).unwrap();
        let mut used = HashSet::new();
        for k in 0..2 * g.m() {
            let hops = pr.detour_schedule(k);
            assert!(hops.windows(2).all(|w| w[0] < w[1]));
            let route = pr.route(k, DETOUR).unwrap();
            for (h, &r) in hops.iter().enumerate() {
                assert!(used.insert((route[h], route[h + 1], r)), "slot used twice in one round");
                assert!(r < pr.timeline.phase1);
            }
        }
    }

    fn run_compiled(g: &Graph, mode: Mode, vals: &[u64], adv: impl FnOnce(&Rc<Protocol>) -> Box<dyn Adversary>) -> (Vec<Bits>, LogCheck, RoundTrace) {
        let plan = plan_for(g, true);
        let mut c = compile_byzantine(g, &plan, mode, flood_programs(g, vals, 4), OPTS).unwrap();
        let mut adversary = adv(&c.protocol);
        let cfg = c.protocol.sim_config(3);
        let t = run_protocol(g, &mut c.programs, adversary.as_mut(), &cfg).unwrap();
        assert_eq!(t.faults(), 0);
        let check = c.protocol.log().check();
        (t.outputs.clone(), check, t)
    }

    #[test]
    fn null_adversary_is_exact_for_every_compiler() {
        let g = generators::complete(4);
        let vals = [3, 9, 1, 5];
        for mode in [Mode::A, Mode::B, Mode::C] {
            let (out, check, _) = run_compiled(&g, mode, &vals, |_| Box::new(NullAdversary));
            assert_eq!(out, fault_free(&g, &vals));
            assert_eq!(check.wrong + check.failed, 0);
            if mode != Mode::A {
                assert_eq!(check.by_majority, 0, "{mode:?} should not need phase 2");
            }
        }
    }

    #[test]
    fn fixed_edges_on_k4_exhaustive() {
        let g = generators::complete(4);
        let vals = [2, 7, 4, 11];
        let want = fault_free(&g, &vals);
        for mode in [Mode::A, Mode::B, Mode::C] {
            for e in 0..g.m() {
                let (out, check, t) = run_compiled(&g, mode, &vals, |pr| Box::new(FixedEdge { edge: e, tamper: semantic_tamper(pr) }));
                assert_eq!(out, want, "{mode:?} edge {e}");
                assert_eq!(check.wrong + check.failed + check.majority_violations, 0);
                assert!(t.max_actions_per_round() <= 1);
            }
        }
    }

    #[test]
    fn greedy_and_random_on_petersen() {
        let g = generators::petersen();
        let vals: Vec<u64> = (0..10).map(|v| (v * 7 % 16) as u64).collect();
        let want = fault_free(&g, &vals);
        for mode in [Mode::A, Mode::B] {
            let (out, check, _) = run_compiled(&g, mode, &vals, |pr| Box::new(GreedyMajorityBreaker::new(pr.clone())));
            assert_eq!(out, want);
            assert_eq!(check.majority_violations, 0);
            let (out, _, _) = run_compiled(&g, mode, &vals, |pr| Box::new(RandomEdge::new(5, semantic_tamper(pr))));
            assert_eq!(out, want);
        }
    }

    #[test]
    fn cycle_graph_has_no_triples() {
        let g = generators::cycle(8);
        let plan = plan_for(&g, false);
        let err = compile_byzantine_c(&g, &plan, flood_programs(&g, &[0; 8], 4), OPTS);
        assert!(matches!(err, Err(Error::MissingRoute { reason: "no edge-disjoint triple", .. })));
        assert!(compile_eavesdrop(&g, &plan, flood_programs(&g, &[0; 8], 4), OPTS).is_ok());
    }

    #[test]
    fn eavesdropper_misses_a_share() {
        let g = generators::complete(4);
        let plan = plan_for(&g, false);
        let d1 = plan.d1;
        for e in 0..g.m() {
            let base: Vec<Box<dyn NodeProgram>> = (0..4)
                .map(|v| {
                    let sends = g.neighbors(v).iter().map(|&(y, _)| (y, uint_bits((v * 4 + y) as u64, 4))).collect();
                    Box::new(Scripted::new(vec![sends])) as Box<dyn NodeProgram>
                })
                .collect();
            let mut c = compile_eavesdrop(&g, &plan, base, OPTS).unwrap();
            let cfg = c.protocol.sim_config(1);
            let t = run_protocol(&g, &mut c.programs, &mut crate::sim::FixedEavesdropper(e), &cfg).unwrap();
            assert_eq!(t.faults(), 0);
            let check = c.protocol.log().check();
            assert_eq!(check.recovered, 12);
            for seen in observed_shares(&c.protocol, &t).values() {
                assert!(seen.len() <= d1);
            }
        }
    }
}
