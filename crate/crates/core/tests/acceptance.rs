//! Acceptance suite: eight criteria, each with a wall-clock limit. Prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use cfmove_core::classify::{decide, relation_check, Status};
use cfmove_core::invariants::{invariant_profile, triple_sets};
use cfmove_core::normalform::{normalize_general, realize, NormalFormParams};
use cfmove_core::oracle::{bfs_equiv, check_invariance, random_walk, SearchConfig, SearchOutcome};
use cfmove_core::random::{random_diagram, random_even3};
use cfmove_core::{
    canonical_form, parse_gauss_code, serialize, ChordId, GaussDiagram, MoveTrace, Sign,
};
use common::{all_fixtures, fixture, rng};
use rand::Rng;

/// Records every trace the suite produces, for criterion 7.
#[derive(Default)]
struct Traces {
    checked: usize,
    failures: Vec<String>,
}

impl Traces {
    /// Replays `t` step by step and compares with the claimed endpoint.
    fn check(&mut self, what: &str, t: &MoveTrace, claimed: &GaussDiagram) -> bool {
        self.checked += 1;
        let ok = match t.states() {
            Ok(states) => canonical_form(states.last().unwrap()) == canonical_form(claimed),
            Err(e) => {
                self.failures.push(format!("{what}: {e}"));
                return false;
            }
        };
        if !ok {
            self.failures.push(format!("{what}: wrong endpoint"));
        }
        ok
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion1() -> Outcome {
    let g = fixture("tenchord.gd");
    let p = invariant_profile(&g);
    ensure(p.n == vec![Some(3), Some(3), Some(1)], || {
        format!("n = {:?}", p.n)
    })?;
    ensure(p.tau == Some((4, -5)), || format!("tau = {:?}", p.tau))?;
    let sets = triple_sets(&g).map_err(|e| e.to_string())?;
    let as_ids = |list: &[[u32; 3]]| {
        let mut v: Vec<[ChordId; 3]> = list.iter().map(|t| t.map(|k| ChordId(k + 1))).collect();
        v.sort();
        v
    };
    let t0 = as_ids(&[
        [0, 6, 8],
        [1, 6, 8],
        [2, 5, 8],
        [2, 7, 8],
        [3, 5, 8],
        [3, 7, 8],
        [4, 5, 8],
        [4, 7, 8],
    ]);
    let t1 = as_ids(&[
        [0, 5, 8],
        [0, 7, 8],
        [1, 5, 8],
        [1, 7, 8],
        [2, 6, 8],
        [3, 6, 8],
        [4, 6, 8],
    ]);
    let (mut even, mut odd) = (sets.even, sets.odd);
    even.sort();
    odd.sort();
    ensure(even.len() == 8 && odd.len() == 7, || {
        format!("|T0| = {}, |T1| = {}", even.len(), odd.len())
    })?;
    ensure(even == t0, || "T0 membership differs".into())?;
    ensure(odd == t1, || "T1 membership differs".into())?;
    Ok("n = (3,3,1), tau = (4,-5), |T0| = 8, |T1| = 7, memberships exact".into())
}

fn criterion2() -> Outcome {
    let mut r = rng(2);
    let mut done = 0;
    while done < 1000 {
        let t: [i64; 6] = std::array::from_fn(|_| r.gen_range(-5..=5));
        let s = [t[0] + t[1], t[2] + t[3], t[4] + t[5]];
        if s[0].rem_euclid(2) != s[1].rem_euclid(2) || s[1].rem_euclid(2) != s[2].rem_euclid(2) {
            continue;
        }
        let p = invariant_profile(&realize(&NormalFormParams::from_tuple3(t)));
        let diffs = vec![t[0] - t[1], t[2] - t[3], t[4] - t[5]];
        let n: Vec<Option<u64>> = s.iter().map(|v| Some(v.unsigned_abs())).collect();
        ensure(p.diffs == diffs, || format!("{t:?}: diffs {:?}", p.diffs))?;
        ensure(p.n == n, || format!("{t:?}: n {:?}", p.n))?;
        ensure(p.tau == Some((s[0] * s[1] * s[2], 0)), || {
            format!("{t:?}: tau {:?}", p.tau)
        })?;
        done += 1;
    }
    Ok("1000 tuples match the closed forms".into())
}

fn criterion3(traces: &mut Traces) -> Outcome {
    let mut r = rng(3);
    let mut steps = 0;
    for k in 0..200 {
        let n = r.gen_range(0..=12);
        let g = random_diagram(&mut r, 1, n);
        let (p, t) = normalize_general(&g);
        ensure(p.is_zero(), || format!("diagram {k}: params {p}"))?;
        ensure(
            traces.check("unknotting", &t, &GaussDiagram::empty(1)),
            || format!("diagram {k}: bad trace"),
        )?;
        steps += t.len();
    }
    Ok(format!("200 knots reach the empty diagram ({steps} moves)"))
}

fn criterion4(traces: &mut Traces) -> Outcome {
    let mut total = 0;
    let mut k = 0u64;
    while total < 10_000 {
        let mut r = rng(400 + k);
        let mu = 1 + (k % 4) as usize;
        let n = r.gen_range(2..=6);
        let g = random_diagram(&mut r, mu, n);
        let cfg = SearchConfig {
            max_chords: 10,
            seed: k,
            ..SearchConfig::default()
        };
        let (end, t) = random_walk(&g, 1000, &cfg);
        traces.check("random walk", &t, &end);
        let rep = check_invariance(&t).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || {
            format!(
                "walk {k}: step {:?} broke {:?}",
                rep.first_violation, rep.violated_invariant
            )
        })?;
        total += rep.checked_steps;
        k += 1;
    }
    Ok(format!("{total} moves over {k} walks, zero violations"))
}

/// A nonself-chord's sign flipped: changes one linking difference by 2.
fn crossing_change(g: &GaussDiagram) -> Option<GaussDiagram> {
    let id = g
        .chords()
        .iter()
        .find(|(_, c)| !c.is_self())
        .map(|(&id, _)| id)?;
    let signs = g
        .chords()
        .iter()
        .map(|(&k, c)| (k, if k == id { c.sign.flip() } else { c.sign }))
        .collect::<std::collections::BTreeMap<ChordId, Sign>>();
    GaussDiagram::new(g.circles().to_vec(), &signs).ok()
}

fn corpus() -> Vec<(GaussDiagram, GaussDiagram)> {
    let mut r = rng(5);
    let mut out = Vec::new();
    let walk_cfg = |seed| SearchConfig {
        max_chords: 6,
        seed,
        ..SearchConfig::default()
    };
    for k in 0..50u64 {
        let mu = 2 + (k % 2) as usize;
        let n = r.gen_range(1..=4);
        let g = random_diagram(&mut r, mu, n);
        let (h, _) = random_walk(&g, 1 + (k % 3) as usize, &walk_cfg(k));
        out.push((g, h));
    }
    for _ in 0..25 {
        let mu = r.gen_range(2..=3);
        let (a, b) = (r.gen_range(0..=2), r.gen_range(0..=2));
        out.push((random_diagram(&mut r, mu, a), random_diagram(&mut r, mu, b)));
    }
    while out.len() < 100 {
        let mu = r.gen_range(2..=3);
        let n = r.gen_range(1..=4);
        let g = random_diagram(&mut r, mu, n);
        let (h, _) = random_walk(&g, 2, &walk_cfg(out.len() as u64));
        if let Some(h) = crossing_change(&h) {
            out.push((g, h));
        }
    }
    out
}

fn budgets(g: &GaussDiagram, h: &GaussDiagram) -> Vec<SearchConfig> {
    let base = g.chord_count().max(h.chord_count());
    let mut v = vec![SearchConfig {
        max_chords: base,
        max_states: 100_000,
        allow_growth: false,
        ..SearchConfig::default()
    }];
    for extra in [2, 4] {
        let cap = (base + extra).min(8);
        if cap > base {
            v.push(SearchConfig {
                max_chords: cap,
                max_states: 150_000,
                ..SearchConfig::default()
            });
        }
    }
    v
}

fn criterion5(traces: &mut Traces) -> Outcome {
    let (mut eq, mut neq, mut other) = (0, 0, 0);
    for (k, (g, h)) in corpus().iter().enumerate() {
        let v = decide(g, h);
        match v.status {
            Status::Equivalent => {
                eq += 1;
                if let Some(c) = &v.certificate {
                    traces.check("certificate", c, h);
                }
                let mut found = false;
                for cfg in budgets(g, h) {
                    if let SearchOutcome::Found(t) =
                        bfs_equiv(g, h, &cfg).map_err(|e| e.to_string())?
                    {
                        ensure(traces.check("bfs path", &t, h), || {
                            format!("pair {k}: bfs trace unsound")
                        })?;
                        found = true;
                        break;
                    }
                }
                ensure(found, || {
                    format!("pair {k}: Equivalent but no path within budget")
                })?;
            }
            Status::NotEquivalent => {
                neq += 1;
                for cfg in budgets(g, h) {
                    let out = bfs_equiv(g, h, &cfg).map_err(|e| e.to_string())?;
                    ensure(!matches!(out, SearchOutcome::Found(_)), || {
                        format!(
                            "pair {k}: NotEquivalent ({:?}) but bfs connected it",
                            v.witness
                        )
                    })?;
                }
            }
            Status::Unknown => other += 1,
        }
    }
    ensure(other == 0, || {
        format!("{other} pairs outside the classified range")
    })?;
    Ok(format!(
        "{eq} equivalent pairs confirmed, {neq} inequivalent pairs never connected"
    ))
}

fn criterion6() -> Outcome {
    let mut r = rng(6);
    for k in 0..1000 {
        let g = random_even3(&mut r, k % 14);
        let rep = relation_check(&g).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("diagram {k}: {rep:?}"))?;
    }
    Ok("1000 even 3-circle diagrams pass".into())
}

fn criterion7(traces: &Traces) -> Outcome {
    ensure(traces.failures.is_empty(), || traces.failures.join("; "))?;
    ensure(traces.checked > 0, || "no traces were produced".into())?;
    Ok(format!(
        "{} traces replayed to their endpoints",
        traces.checked
    ))
}

fn criterion8() -> Outcome {
    let fixtures = all_fixtures();
    for (name, text) in &fixtures {
        let g = parse_gauss_code(text).map_err(|e| format!("{name}: {e}"))?;
        let s = serialize(&g);
        let back = parse_gauss_code(&s).map_err(|e| format!("{name}: {e}"))?;
        ensure(back == canonical_form(&g), || {
            format!("{name}: parse(serialize) differs")
        })?;
        ensure(serialize(&back) == s, || {
            format!("{name}: re-serialization differs")
        })?;
    }
    Ok(format!(
        "{} fixtures round-trip byte-identically",
        fixtures.len()
    ))
}

fn main() {
    let mut traces = Traces::default();
    let mut failed = 0;
    let mut report = |id: usize, name: &str, limit: Duration, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let (status, detail) = match &out {
            Ok(d) if took <= limit => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("{d}; took longer than {limit:?}")),
            Err(e) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {id} [{name}]: {status} in {:.2}s ({detail})",
            took.as_secs_f64()
        );
    };
    let secs = Duration::from_secs;
    report(1, "example reproduction", secs(1), &mut criterion1);
    report(2, "closed forms", secs(10), &mut criterion2);
    report(3, "unknotting", secs(30), &mut || criterion3(&mut traces));
    report(4, "invariance harness", secs(60), &mut || {
        criterion4(&mut traces)
    });
    report(5, "oracle cross-validation", secs(300), &mut || {
        criterion5(&mut traces)
    });
    report(6, "relation audit", secs(10), &mut criterion6);
    report(7, "trace soundness", secs(1), &mut || criterion7(&traces));
    report(8, "format round-trip", secs(1), &mut criterion8);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
