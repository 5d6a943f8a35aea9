//! Synchronous message passing with one adversary action per round.
//!
//! Every undirected edge has two directed slots per round and each slot
//! carries at most one payload of at most `bandwidth` bits. In round `r`
//! all nodes first produce their sends from the state left by round
//! `r − 1`; the adversary then inspects the in-flight payloads and takes
//! at most one action; finally the surviving payloads are delivered.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ceil_log2;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};

pub type Bits = Vec<bool>;

pub fn bits_to_string(b: &[bool]) -> String {
    b.iter().map(|&x| if x { '1' } else { '0' }).collect()
}

/// Appends the low `width` bits of `x`, most significant first.
pub fn push_uint(out: &mut Bits, x: u64, width: usize) {
    for i in (0..width).rev() {
        out.push(x >> i & 1 == 1);
    }
}

pub fn read_uint(bits: &[bool], pos: &mut usize, width: usize) -> Option<u64> {
    let chunk = bits.get(*pos..*pos + width)?;
    *pos += width;
    Some(chunk.iter().fold(0, |acc, &b| acc << 1 | b as u64))
}

pub fn uint_bits(x: u64, width: usize) -> Bits {
    let mut b = Vec::with_capacity(width);
    push_uint(&mut b, x, width);
    b
}

/// `⌈c · log₂ n⌉` bits, at least 1.
pub fn bandwidth_for(n: usize, c: f64) -> usize {
    ((c * (n.max(2) as f64).log2()).ceil() as usize).max(1)
}

pub trait NodeProgram {
    /// Payloads for this round, addressed to neighbors.
    fn send(&mut self, round: usize) -> Vec<(Vertex, Bits)>;
    /// Everything delivered to this node in `round`, sorted by sender.
    fn receive(&mut self, round: usize, inbox: &[(Vertex, Bits)]);
    fn output(&self) -> Bits;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub src: Vertex,
    pub dst: Vertex,
    pub edge: EdgeId,
    pub payload: Bits,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Choice {
    /// Replace the payload on the slot `src → dst`; `None` drops it. If the
    /// slot is empty the replacement is injected as a new message.
    Corrupt { src: Vertex, dst: Vertex, replacement: Option<Bits> },
    /// Observe both slots of an edge.
    Eavesdrop { edge: EdgeId },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ActionKind {
    Corrupt(Bits),
    Drop,
    /// Payloads seen, in slot order.
    Eavesdrop(Vec<Message>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversaryAction {
    pub round: usize,
    pub edge: EdgeId,
    pub src: Vertex,
    pub dst: Vertex,
    pub kind: ActionKind,
}

/// What the adversary sees when choosing. Adversaries are called every
/// round and may keep whatever history they like.
pub struct View<'a> {
    pub round: usize,
    pub graph: &'a Graph,
    pub in_flight: &'a [Message],
    pub trace: &'a RoundTrace,
}

pub trait Adversary {
    fn act(&mut self, view: &View<'_>) -> Option<Choice>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceRecord {
    Deliver { round: usize, msg: Message, corrupted: bool },
    Action(AdversaryAction),
    Fault { round: usize, node: Vertex, reason: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTrace {
    pub rounds: usize,
    pub records: Vec<TraceRecord>,
    pub outputs: Vec<Bits>,
}

impl RoundTrace {
    pub fn actions(&self) -> impl Iterator<Item = &AdversaryAction> {
        self.records.iter().filter_map(|r| match r {
            TraceRecord::Action(a) => Some(a),
            _ => None,
        })
    }

    pub fn faults(&self) -> usize {
        self.records.iter().filter(|r| matches!(r, TraceRecord::Fault { .. })).count()
    }

    pub fn max_actions_per_round(&self) -> usize {
        let mut per = std::collections::BTreeMap::new();
        for a in self.actions() {
            *per.entry(a.round).or_insert(0) += 1;
        }
        per.into_values().max().unwrap_or(0)
    }

    /// One line per record, fields in a fixed order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            match r {
                TraceRecord::Deliver { round, msg, corrupted } => writeln!(
                    s,
                    "round={round} deliver src={} dst={} edge={} corrupted={} bits={}",
                    msg.src,
                    msg.dst,
                    msg.edge,
                    *corrupted as u8,
                    bits_to_string(&msg.payload)
                ),
                TraceRecord::Action(a) => {
                    let what = match &a.kind {
                        ActionKind::Corrupt(b) => format!("corrupt bits={}", bits_to_string(b)),
                        ActionKind::Drop => "drop".to_string(),
                        ActionKind::Eavesdrop(seen) => format!(
                            "eavesdrop seen={}",
                            seen.iter().map(|m| bits_to_string(&m.payload)).collect::<Vec<_>>().join(",")
                        ),
                    };
                    writeln!(s, "round={} action edge={} src={} dst={} {what}", a.round, a.edge, a.src, a.dst)
                }
                TraceRecord::Fault { round, node, reason } => writeln!(s, "round={round} fault node={node} {reason}"),
            }
            .unwrap();
        }
        for (v, o) in self.outputs.iter().enumerate() {
            writeln!(s, "output node={v} bits={}", bits_to_string(o)).unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub rounds: usize,
    pub bandwidth: usize,
    /// Let one corruption hit both directions of the chosen edge.
    pub both_directions: bool,
    /// Keep a `Deliver` record per message (actions and faults are always kept).
    pub record_messages: bool,
}

impl SimConfig {
    pub fn new(rounds: usize, bandwidth: usize) -> Self {
        SimConfig { rounds, bandwidth, both_directions: false, record_messages: true }
    }
}

pub fn run_protocol(
    g: &Graph,
    programs: &mut [Box<dyn NodeProgram>],
    adversary: &mut dyn Adversary,
    cfg: &SimConfig,
) -> Result<RoundTrace> {
    if cfg.bandwidth == 0 {
        return Err(Error::InvalidArgument("bandwidth must be at least 1".into()));
    }
    if programs.len() != g.n() {
        return Err(Error::InvalidArgument(format!("{} programs for {} nodes", programs.len(), g.n())));
    }
    let mut trace = RoundTrace { rounds: cfg.rounds, ..Default::default() };
    let mut inboxes: Vec<Vec<(Vertex, Bits)>> = vec![Vec::new(); g.n()];
    for round in 0..cfg.rounds {
        let mut flight: Vec<Message> = Vec::new();
        for (src, p) in programs.iter_mut().enumerate() {
            for (dst, payload) in p.send(round) {
                let fault = match g.edge_between(src, dst) {
                    None => Some(format!("send to non-neighbor {dst}")),
                    Some(_) if payload.len() > cfg.bandwidth => {
                        Some(format!("payload of {} bits exceeds bandwidth {}", payload.len(), cfg.bandwidth))
                    }
                    Some(_) if flight.iter().any(|m| m.src == src && m.dst == dst) => {
                        Some(format!("second payload to {dst} in one round"))
                    }
                    Some(edge) => {
                        flight.push(Message { src, dst, edge, payload });
                        None
                    }
                };
                if let Some(reason) = fault {
                    trace.records.push(TraceRecord::Fault { round, node: src, reason });
                }
            }
        }
        let mut corrupted = vec![false; flight.len()];
        let choice = adversary.act(&View { round, graph: g, in_flight: &flight, trace: &trace });
        if let Some(choice) = choice {
            apply(g, cfg, round, choice, &mut flight, &mut corrupted, &mut trace)?;
        }
        for (i, msg) in flight.into_iter().enumerate() {
            if cfg.record_messages {
                trace.records.push(TraceRecord::Deliver { round, msg: msg.clone(), corrupted: corrupted[i] });
            }
            inboxes[msg.dst].push((msg.src, msg.payload));
        }
        for (v, p) in programs.iter_mut().enumerate() {
            let inbox = &mut inboxes[v];
            inbox.sort_by_key(|(src, _)| *src);
            p.receive(round, inbox);
            inbox.clear();
        }
    }
    trace.outputs = programs.iter().map(|p| p.output()).collect();
    Ok(trace)
}

fn apply(
    g: &Graph,
    cfg: &SimConfig,
    round: usize,
    choice: Choice,
    flight: &mut Vec<Message>,
    corrupted: &mut Vec<bool>,
    trace: &mut RoundTrace,
) -> Result<()> {
    match choice {
        Choice::Eavesdrop { edge } => {
            if edge >= g.m() {
                return Err(Error::InvalidArgument(format!("adversary chose missing edge {edge}")));
            }
            let (a, b) = g.edge(edge);
            let seen = flight.iter().filter(|m| m.edge == edge).cloned().collect();
            trace.records.push(TraceRecord::Action(AdversaryAction {
                round,
                edge,
                src: a,
                dst: b,
                kind: ActionKind::Eavesdrop(seen),
            }));
        }
        Choice::Corrupt { src, dst, replacement } => {
            let edge = g
                .edge_between(src, dst)
                .ok_or_else(|| Error::InvalidArgument(format!("adversary chose non-edge {src} {dst}")))?;
            let mut slots = vec![(src, dst)];
            if cfg.both_directions {
                slots.push((dst, src));
            }
            for (s, d) in slots {
                match flight.iter().position(|m| m.src == s && m.dst == d) {
                    Some(i) => match &replacement {
                        Some(bits) => {
                            flight[i].payload = bits.clone();
                            corrupted[i] = true;
                        }
                        None => {
                            flight.remove(i);
                            corrupted.remove(i);
                        }
                    },
                    None => {
                        if let Some(bits) = &replacement {
                            flight.push(Message { src: s, dst: d, edge, payload: bits.clone() });
                            corrupted.push(true);
                        }
                    }
                }
            }
            let kind = match replacement {
                Some(b) => ActionKind::Corrupt(b),
                None => ActionKind::Drop,
            };
            trace.records.push(TraceRecord::Action(AdversaryAction { round, edge, src, dst, kind }));
        }
    }
    Ok(())
}

/// How a corrupting adversary rewrites a payload; `None` drops it.
pub type Tamper = std::rc::Rc<dyn Fn(&[bool]) -> Option<Bits>>;

pub fn invert_tamper() -> Tamper {
    std::rc::Rc::new(|b: &[bool]| Some(b.iter().map(|x| !x).collect()))
}

pub fn drop_tamper() -> Tamper {
    std::rc::Rc::new(|_: &[bool]| None)
}

pub struct NullAdversary;

impl Adversary for NullAdversary {
    fn act(&mut self, _: &View<'_>) -> Option<Choice> {
        None
    }
}

/// Corrupts edge `edge` whenever it carries a payload, preferring the slot
/// from its smaller endpoint.
pub struct FixedEdge {
    pub edge: EdgeId,
    pub tamper: Tamper,
}

impl Adversary for FixedEdge {
    fn act(&mut self, view: &View<'_>) -> Option<Choice> {
        let (a, b) = view.graph.edge(self.edge);
        let m = view
            .in_flight
            .iter()
            .filter(|m| m.edge == self.edge)
            .min_by_key(|m| (m.src != a, m.src))?;
        debug_assert!(m.src == a || m.src == b);
        Some(Choice::Corrupt { src: m.src, dst: m.dst, replacement: (self.tamper)(&m.payload) })
    }
}

/// Corrupts a uniformly random in-flight payload each round.
pub struct RandomEdge {
    rng: ChaCha8Rng,
    tamper: Tamper,
}

impl RandomEdge {
    pub fn new(seed: u64, tamper: Tamper) -> Self {
        RandomEdge { rng: ChaCha8Rng::seed_from_u64(seed), tamper }
    }
}

impl Adversary for RandomEdge {
    fn act(&mut self, view: &View<'_>) -> Option<Choice> {
        let m = view.in_flight.choose(&mut self.rng)?;
        let replacement = (self.tamper)(&m.payload);
        Some(Choice::Corrupt { src: m.src, dst: m.dst, replacement })
    }
}

/// Eavesdrops on a fixed edge every round.
pub struct FixedEavesdropper(pub EdgeId);

impl Adversary for FixedEavesdropper {
    fn act(&mut self, _: &View<'_>) -> Option<Choice> {
        Some(Choice::Eavesdrop { edge: self.0 })
    }
}

/// Eavesdrops on a uniformly random edge every round.
pub struct RandomEavesdropper(pub ChaCha8Rng);

impl RandomEavesdropper {
    pub fn new(seed: u64) -> Self {
        RandomEavesdropper(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl Adversary for RandomEavesdropper {
    fn act(&mut self, view: &View<'_>) -> Option<Choice> {
        if view.graph.m() == 0 {
            return None;
        }
        Some(Choice::Eavesdrop { edge: self.0.gen_range(0..view.graph.m()) })
    }
}

/// Sends its own ID to every neighbor each round; outputs the IDs heard in
/// the last round, in sender order.
pub struct Echo {
    id: Vertex,
    neighbors: Vec<Vertex>,
    width: usize,
    heard: Bits,
}

impl Echo {
    pub fn new(g: &Graph, id: Vertex) -> Self {
        Echo {
            id,
            neighbors: g.neighbors(id).iter().map(|&(y, _)| y).collect(),
            width: ceil_log2(g.n()).max(1),
            heard: Vec::new(),
        }
    }
}

impl NodeProgram for Echo {
    fn send(&mut self, _: usize) -> Vec<(Vertex, Bits)> {
        self.neighbors.iter().map(|&y| (y, uint_bits(self.id as u64, self.width))).collect()
    }

    fn receive(&mut self, _: usize, inbox: &[(Vertex, Bits)]) {
        self.heard = inbox.iter().flat_map(|(_, b)| b.iter().copied()).collect();
    }

    fn output(&self) -> Bits {
        self.heard.clone()
    }
}

/// Max-flooding: each round every node sends the largest value it knows.
pub struct Flood {
    neighbors: Vec<Vertex>,
    value: u64,
    width: usize,
}

impl Flood {
    pub fn new(g: &Graph, id: Vertex, value: u64, width: usize) -> Self {
        Flood { neighbors: g.neighbors(id).iter().map(|&(y, _)| y).collect(), value, width }
    }
}

impl NodeProgram for Flood {
    fn send(&mut self, _: usize) -> Vec<(Vertex, Bits)> {
        self.neighbors.iter().map(|&y| (y, uint_bits(self.value, self.width))).collect()
    }

    fn receive(&mut self, _: usize, inbox: &[(Vertex, Bits)]) {
        for (_, b) in inbox {
            let mut pos = 0;
            if let Some(x) = read_uint(b, &mut pos, self.width.min(b.len())) {
                self.value = self.value.max(x);
            }
        }
    }

    fn output(&self) -> Bits {
        uint_bits(self.value, self.width)
    }
}

/// Flooding programs for all nodes; node `v` starts with `values[v]`.
pub fn flood_programs(g: &Graph, values: &[u64], width: usize) -> Vec<Box<dyn NodeProgram>> {
    (0..g.n()).map(|v| Box::new(Flood::new(g, v, values[v], width)) as Box<dyn NodeProgram>).collect()
}

/// Sends a fixed script: `script[r]` lists the round-`r` sends. Outputs
/// every received payload in arrival order.
pub struct Scripted {
    script: Vec<Vec<(Vertex, Bits)>>,
    received: Bits,
}

impl Scripted {
    pub fn new(script: Vec<Vec<(Vertex, Bits)>>) -> Self {
        Scripted { script, received: Vec::new() }
    }
}

impl NodeProgram for Scripted {
    fn send(&mut self, round: usize) -> Vec<(Vertex, Bits)> {
        self.script.get(round).cloned().unwrap_or_default()
    }

    fn receive(&mut self, _: usize, inbox: &[(Vertex, Bits)]) {
        for (_, b) in inbox {
            self.received.extend(b);
        }
    }

    fn output(&self) -> Bits {
        self.received.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn echo_all(g: &Graph) -> Vec<Box<dyn NodeProgram>> {
        (0..g.n()).map(|v| Box::new(Echo::new(g, v)) as Box<dyn NodeProgram>).collect()
    }

    #[test]
    fn echo_is_delivered_verbatim() {
        let g = generators::cycle(5);
        let t = run_protocol(&g, &mut echo_all(&g), &mut NullAdversary, &SimConfig::new(3, 8)).unwrap();
        assert_eq!(t.actions().count(), 0);
        for r in &t.records {
            let TraceRecord::Deliver { msg, corrupted, .. } = r else { panic!() };
            assert!(!corrupted);
            assert_eq!(msg.payload, uint_bits(msg.src as u64, 3));
        }
        assert_eq!(t.records.len(), 3 * 10);
    }

    #[test]
    fn fixed_drop_loses_one_message_per_round() {
        let g = generators::cycle(5);
        let mut adv = FixedEdge { edge: 0, tamper: drop_tamper() };
        let t = run_protocol(&g, &mut echo_all(&g), &mut adv, &SimConfig::new(4, 8)).unwrap();
        let delivered = t.records.iter().filter(|r| matches!(r, TraceRecord::Deliver { .. })).count();
        assert_eq!(delivered, 4 * 9);
        assert_eq!(t.actions().count(), 4);
        assert!(t.actions().all(|a| a.edge == 0 && a.kind == ActionKind::Drop));
        assert_eq!(t.max_actions_per_round(), 1);
    }

    #[test]
    fn flooding_on_c6_takes_three_rounds() {
        let g = generators::cycle(6);
        let mut vals = vec![0; 6];
        vals[0] = 9;
        let t = run_protocol(&g, &mut flood_programs(&g, &vals, 4), &mut NullAdversary, &SimConfig::new(3, 4)).unwrap();
        assert!(t.outputs.iter().all(|o| *o == uint_bits(9, 4)));
        let t = run_protocol(&g, &mut flood_programs(&g, &vals, 4), &mut NullAdversary, &SimConfig::new(2, 4)).unwrap();
        assert_eq!(t.outputs[3], uint_bits(0, 4));
    }

    #[test]
    fn bandwidth_violations_are_faults() {
        let g = generators::path(2);
        let mut ps: Vec<Box<dyn NodeProgram>> = vec![
            Box::new(Scripted::new(vec![vec![(1, vec![true; 9])]])),
            Box::new(Scripted::new(vec![vec![(1, vec![true])]])),
        ];
        let t = run_protocol(&g, &mut ps, &mut NullAdversary, &SimConfig::new(1, 8)).unwrap();
        assert_eq!(t.faults(), 2);
        assert!(t.to_text().contains("fault node=0"));
        assert!(run_protocol(&g, &mut ps, &mut NullAdversary, &SimConfig::new(1, 0)).is_err());
    }

    #[test]
    fn random_adversary_is_replayable() {
        let g = generators::petersen();
        let run = || {
            let mut adv = RandomEdge::new(11, invert_tamper());
            run_protocol(&g, &mut echo_all(&g), &mut adv, &SimConfig::new(5, 8)).unwrap().to_text()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn eavesdropper_sees_both_directions() {
        let g = generators::cycle(4);
        let t = run_protocol(&g, &mut echo_all(&g), &mut FixedEavesdropper(1), &SimConfig::new(2, 8)).unwrap();
        for a in t.actions() {
            let ActionKind::Eavesdrop(seen) = &a.kind else { panic!() };
            assert_eq!(seen.len(), 2);
        }
    }

    #[test]
    fn uint_round_trip() {
        let b = uint_bits(37, 7);
        let mut pos = 0;
        assert_eq!(read_uint(&b, &mut pos, 7), Some(37));
        assert_eq!(read_uint(&b, &mut pos, 1), None);
        assert_eq!(bandwidth_for(1024, 2.0), 20);
    }
}
