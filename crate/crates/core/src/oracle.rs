//! Exhaustive and randomized checks independent of the classification.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{canonical_form, GaussDiagram};
use crate::error::{Error, Result};
use crate::format::write_raw;
use crate::invariants::{invariant_profile, InvariantProfile};
use crate::moves::{apply_move, enumerate_moves, Move, MoveKind};
use crate::par::{self, Execution};
use crate::trace::MoveTrace;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// No visited state may exceed this many chords.
    pub max_chords: usize,
    /// Total states stored across both search directions.
    pub max_states: usize,
    /// Whether R1/R2 insertions are explored.
    pub allow_growth: bool,
    pub seed: u64,
    pub exec: Execution,
}

impl SearchConfig {
    /// Default budget with four chords of headroom over the larger input.
    pub fn for_inputs(g: &GaussDiagram, h: &GaussDiagram) -> Self {
        SearchConfig {
            max_chords: g.chord_count().max(h.chord_count()) + 4,
            ..SearchConfig::default()
        }
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_chords: 8,
            max_states: 200_000,
            allow_growth: true,
            seed: 0,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(MoveTrace),
    NotFoundWithinBudget { explored: usize },
}

struct Node {
    diagram: GaussDiagram,
    parent: Option<(String, Move)>,
}

struct Side {
    nodes: HashMap<String, Node>,
    frontier: Vec<String>,
}

impl Side {
    fn new(g: &GaussDiagram) -> (String, Self) {
        let c = canonical_form(g);
        let key = write_raw(&c);
        let mut nodes = HashMap::new();
        nodes.insert(
            key.clone(),
            Node {
                diagram: c,
                parent: None,
            },
        );
        (
            key.clone(),
            Side {
                nodes,
                frontier: vec![key],
            },
        )
    }

    /// Trace from `start` to a diagram isomorphic to the node `key`.
    fn path_to(&self, start: &GaussDiagram, key: &str) -> Result<MoveTrace> {
        let mut chain = Vec::new();
        let mut k = key;
        while let Some((pk, m)) = &self.nodes[k].parent {
            chain.push((pk.as_str(), *m));
            k = pk;
        }
        let mut cur = start.clone();
        let mut steps = Vec::with_capacity(chain.len());
        for (pk, m) in chain.into_iter().rev() {
            let local = MoveTrace::new(self.nodes[pk].diagram.clone(), vec![m]).rebase(&cur)?;
            let m = local.steps.into_iter().next().expect("single step");
            cur = apply_move(&cur, &m)?;
            steps.push(m);
        }
        Ok(MoveTrace::new(start.clone(), steps))
    }
}

/// Parents expanded per parallel batch; bounds the number of child diagrams
/// held in memory at once.
const CHUNK: usize = 64;

/// Key, canonical diagram and the move reaching it.
type Child = (String, GaussDiagram, Move);

fn expand(side: &Side, parents: &[String], cfg: &SearchConfig) -> Vec<(String, Vec<Child>)> {
    let parents: Vec<&String> = parents.iter().collect();
    par::map_vec(cfg.exec, &parents, |&key| {
        let g = &side.nodes[key].diagram;
        let children = enumerate_moves(g, cfg.allow_growth)
            .into_iter()
            .filter(|m| (g.chord_count() as i64 + m.chord_delta()) as usize <= cfg.max_chords)
            .map(|m| {
                let c = canonical_form(&apply_move(g, &m).expect("enumerated move applies"));
                (write_raw(&c), c, m)
            })
            .collect();
        (key.clone(), children)
    })
}

/// Bidirectional breadth-first search over CF-moves and generalized Reidemeister
/// moves. States are identified up to rotation and relabelling.
pub fn bfs_equiv(g: &GaussDiagram, h: &GaussDiagram, cfg: &SearchConfig) -> Result<SearchOutcome> {
    if g.mu() != h.mu() {
        return Err(Error::MuMismatch(g.mu(), h.mu()));
    }
    let largest = g.chord_count().max(h.chord_count());
    if largest > cfg.max_chords {
        return Err(Error::Precondition(format!(
            "inputs have {largest} chords, above the cap of {}",
            cfg.max_chords
        )));
    }
    let (gk, mut fwd) = Side::new(g);
    let (hk, mut bwd) = Side::new(h);
    let mut meet = (gk == hk).then_some(gk);
    while meet.is_none() {
        if fwd.frontier.is_empty() || bwd.frontier.is_empty() {
            break;
        }
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let (this, other) = if forward {
            (&mut fwd, &bwd)
        } else {
            (&mut bwd, &fwd)
        };
        let frontier = std::mem::take(&mut this.frontier);
        let mut next = Vec::new();
        'level: for chunk in frontier.chunks(CHUNK) {
            for (pk, children) in expand(this, chunk, cfg) {
                for (ck, c, m) in children {
                    if this.nodes.contains_key(&ck) {
                        continue;
                    }
                    this.nodes.insert(
                        ck.clone(),
                        Node {
                            diagram: c,
                            parent: Some((pk.clone(), m)),
                        },
                    );
                    if other.nodes.contains_key(&ck) {
                        meet = Some(ck);
                        break 'level;
                    }
                    next.push(ck);
                    if this.nodes.len() + other.nodes.len() >= cfg.max_states {
                        break 'level;
                    }
                }
            }
        }
        this.frontier = next;
        if meet.is_none() && fwd.nodes.len() + bwd.nodes.len() >= cfg.max_states {
            break;
        }
    }
    let Some(key) = meet else {
        log::debug!(
            "search exhausted after {} states",
            fwd.nodes.len() + bwd.nodes.len()
        );
        return Ok(SearchOutcome::NotFoundWithinBudget {
            explored: fwd.nodes.len() + bwd.nodes.len(),
        });
    };
    let there = fwd.path_to(g, &key)?;
    let back = bwd.path_to(h, &key)?.reverse()?;
    Ok(SearchOutcome::Found(there.then(&back)?))
}

/// Uniform random walk over [`enumerate_moves`], skipping moves that would
/// exceed `cfg.max_chords`. Deterministic in `cfg.seed`.
pub fn random_walk(
    g: &GaussDiagram,
    steps: usize,
    cfg: &SearchConfig,
) -> (GaussDiagram, MoveTrace) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cur = g.clone();
    let mut taken = Vec::with_capacity(steps);
    for _ in 0..steps {
        let moves: Vec<Move> = enumerate_moves(&cur, cfg.allow_growth)
            .into_iter()
            .filter(|m| (cur.chord_count() as i64 + m.chord_delta()) as usize <= cfg.max_chords)
            .collect();
        if moves.is_empty() {
            break;
        }
        let m = moves[rng.gen_range(0..moves.len())];
        cur = apply_move(&cur, &m).expect("enumerated move applies");
        taken.push(m);
    }
    (cur, MoveTrace::new(g.clone(), taken))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub checked_steps: usize,
    /// 1-based index of the first step that changed an invariant.
    pub first_violation: Option<usize>,
    pub violated_invariant: Option<String>,
    /// Steps checked per move kind.
    pub state_counts: BTreeMap<String, usize>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

fn violation(a: &InvariantProfile, b: &InvariantProfile, cf: bool) -> Option<&'static str> {
    if a.mu != b.mu {
        return Some("components");
    }
    if a.parities != b.parities {
        return Some("parity");
    }
    if a.diffs != b.diffs {
        return Some("lk_difference");
    }
    if a.n != b.n {
        return Some("n_invariant");
    }
    if a.tau_difference() != b.tau_difference() {
        return Some("tau_difference");
    }
    if !cf && a.lk != b.lk {
        return Some("linking_matrix");
    }
    if !cf && a.tau != b.tau {
        return Some("tau");
    }
    None
}

/// Checks that consecutive states agree on every CF-invariant, and on the
/// linking matrix and `τ` pair across non-CF steps.
pub fn check_states(states: &[GaussDiagram], kinds: &[MoveKind]) -> InvarianceReport {
    assert_eq!(states.len(), kinds.len() + 1, "one kind per step");
    let mut report = InvarianceReport {
        checked_steps: 0,
        first_violation: None,
        violated_invariant: None,
        state_counts: BTreeMap::new(),
    };
    let mut prev = invariant_profile(&states[0]);
    for (k, (s, kind)) in states[1..].iter().zip(kinds).enumerate() {
        report.checked_steps += 1;
        *report
            .state_counts
            .entry(kind.as_str().to_string())
            .or_default() += 1;
        let cur = invariant_profile(s);
        let cf = *kind == MoveKind::CF;
        if let Some(name) = violation(&prev, &cur, cf) {
            report.first_violation = Some(k + 1);
            report.violated_invariant = Some(name.to_string());
            return report;
        }
        prev = cur;
    }
    report
}

/// Replays `trace` and runs [`check_states`] on the visited diagrams.
pub fn check_invariance(trace: &MoveTrace) -> Result<InvarianceReport> {
    let states = trace.states()?;
    let kinds: Vec<MoveKind> = trace.steps.iter().map(Move::kind).collect();
    Ok(check_states(&states, &kinds))
}
