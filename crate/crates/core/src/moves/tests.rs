use super::*;
use crate::format::parse_gauss_code;
use crate::invariants::lk_difference;
use crate::random::random_diagram;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gd(text: &str) -> GaussDiagram {
    parse_gauss_code(text).unwrap()
}

#[test]
fn r1_insert_then_delete() {
    let g = GaussDiagram::empty(1);
    let m = Move::R1Insert {
        site: Site::new(0, 0),
        sign: Sign::Pos,
        head_first: false,
    };
    let h = apply_move(&g, &m).unwrap();
    assert_eq!(h.chord_count(), 1);
    assert_eq!(h.self_chord_count(), 1);
    let back = apply_move(&h, &inverse(&g, &m, &h).unwrap()).unwrap();
    assert_eq!(back, g);
}

#[test]
fn cf_on_two_tails() {
    let g = gd("circles 2\ncircle 1: O1+ O2+\ncircle 2: U2+ U1+");
    assert_eq!(lk_difference(&g, 0, 1).unwrap(), 2);
    let h = apply_move(
        &g,
        &Move::CF {
            site: Site::new(0, 1),
        },
    )
    .unwrap();
    // Both chords negated and reversed; tail order swapped into head order.
    assert_eq!(
        crate::format::write_raw(&h),
        "circles 2\ncircle 1: U2- U1-\ncircle 2: O2- O1-"
    );
    assert_eq!(lk_difference(&h, 0, 1).unwrap(), 2);
    assert_eq!(
        apply_move(
            &h,
            &Move::CF {
                site: Site::new(0, 1)
            }
        )
        .unwrap(),
        g
    );
}

#[test]
fn cf_rejects_mixed_kinds_and_one_chord() {
    let g = gd("circles 2\ncircle 1: O1+ U2+\ncircle 2: U1+ O2+");
    assert!(matches!(
        apply_move(
            &g,
            &Move::CF {
                site: Site::new(0, 1)
            }
        ),
        Err(Error::PatternMismatch(_))
    ));
    let g = gd("circles 1\ncircle 1: O1+ U1+ O2- U2-");
    assert!(apply_move(
        &g,
        &Move::CF {
            site: Site::new(0, 5)
        }
    )
    .is_err());
}

#[test]
fn r2_delete_parallel_pair() {
    let g = gd("circles 2\ncircle 1: O1+ O2-\ncircle 2: U1+ U2-");
    let m = Move::R2Delete {
        tail: Site::new(0, 1),
        head: Site::new(1, 1),
    };
    assert_eq!(apply_move(&g, &m).unwrap(), GaussDiagram::empty(2));
    let same = gd("circles 2\ncircle 1: O1+ O2+\ncircle 2: U1+ U2+");
    assert!(apply_move(&same, &m).is_err());
}

#[test]
fn enumeration_examples() {
    let e = GaussDiagram::empty(1);
    assert!(enumerate_moves(&e, false).is_empty());
    let grown = enumerate_moves(&e, true);
    let r1 = grown
        .iter()
        .filter(|m| m.kind() == MoveKind::R1Insert)
        .count();
    let r2 = grown
        .iter()
        .filter(|m| m.kind() == MoveKind::R2Insert)
        .count();
    assert_eq!((r1, r2), (4, 4));
    let g = gd("circles 1\ncircle 1: O1+ U1+");
    let ms = enumerate_moves(&g, false);
    assert_eq!(
        ms.iter().filter(|m| m.kind() == MoveKind::R1Delete).count(),
        1
    );
}

#[test]
fn every_enumerated_move_applies_and_inverts() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let mu = rng.gen_range(1..=3);
        let n = rng.gen_range(0..=5);
        let g = random_diagram(&mut rng, mu, n);
        for m in enumerate_moves(&g, true) {
            let h = apply_move(&g, &m).unwrap_or_else(|e| panic!("{m}: {e}"));
            h.validate().unwrap();
            assert_eq!(
                h.chord_count() as i64,
                g.chord_count() as i64 + m.chord_delta()
            );
            for c in 0..mu {
                assert_eq!(h.parity(c), g.parity(c));
            }
            let inv = inverse(&g, &m, &h).unwrap();
            let back = apply_move(&h, &inv).unwrap();
            assert_eq!(canonical_form(&back), canonical_form(&g), "{m} / {inv}");
            let text = m.to_string();
            assert_eq!(text.parse::<Move>().unwrap(), m);
        }
    }
}

#[test]
fn r3_all_sign_patterns_enumerated() {
    // One triangle per sign choice; each must be recognised.
    for sx in [Sign::Pos, Sign::Neg] {
        for sy in [Sign::Pos, Sign::Neg] {
            for sz in [Sign::Pos, Sign::Neg] {
                let o_t = 1;
                let o_m = o_t * sy.value() * sz.value();
                let o_b = o_m * sx.value() * sy.value();
                let t = if o_t == 1 { "O1 O2" } else { "O2 O1" };
                let m = if o_m == 1 { "U1 O3" } else { "O3 U1" };
                let b = if o_b == 1 { "U2 U3" } else { "U3 U2" };
                let sgn = |id: char| match id {
                    '1' => sx.symbol(),
                    '2' => sy.symbol(),
                    _ => sz.symbol(),
                };
                let tag = |s: &str| {
                    s.split(' ')
                        .map(|t| format!("{t}{}", sgn(t.chars().nth(1).unwrap())))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                let text = format!(
                    "circles 3\ncircle 1: {}\ncircle 2: {}\ncircle 3: {}",
                    tag(t),
                    tag(m),
                    tag(b)
                );
                let g = gd(&text);
                let ms: Vec<_> = enumerate_moves(&g, false)
                    .into_iter()
                    .filter(|m| m.kind() == MoveKind::R3)
                    .collect();
                assert_eq!(ms.len(), 1, "{text}");
                let h = apply_move(&g, &ms[0]).unwrap();
                assert_eq!(apply_move(&h, &ms[0]).unwrap(), g);
            }
        }
    }
}

fn check_exchange(g: &GaussDiagram, site: Site) {
    let (h, trace) = exchange_adjacent(g, site).unwrap();
    assert_eq!(trace.replay().unwrap(), h);
    let (a, b) = pair_slots(g, site).unwrap();
    let (ea, eb) = (g.circle(site.circle)[a], g.circle(site.circle)[b]);
    let kinds: Vec<MoveKind> = trace.steps.iter().map(|m| m.kind()).collect();
    if ea.kind == eb.kind {
        assert_eq!(kinds, vec![MoveKind::CF]);
    } else {
        assert_eq!(
            kinds,
            vec![
                MoveKind::R2Insert,
                MoveKind::R3,
                MoveKind::CF,
                MoveKind::CF,
                MoveKind::R2Delete
            ]
        );
    }
    // Positions fixed except the swapped pair; the two chords are flipped.
    assert_eq!(h.chord_count(), g.chord_count());
    for c in 0..g.mu() {
        assert_eq!(h.circle(c).len(), g.circle(c).len());
        for (s, e) in g.circle(c).iter().enumerate() {
            let expected = if c == site.circle && s == a {
                b
            } else if c == site.circle && s == b {
                a
            } else {
                s
            };
            let f = h.circle(c)[expected];
            assert_eq!(f.chord, e.chord);
            let flipped = e.chord == ea.chord || e.chord == eb.chord;
            assert_eq!(f.kind == e.kind, !flipped);
        }
    }
    for (id, ch) in g.chords() {
        let flipped = *id == ea.chord || *id == eb.chord;
        assert_eq!(h.chords()[id].sign == ch.sign, !flipped);
    }
    for i in 0..g.mu() {
        for j in i + 1..g.mu() {
            assert_eq!(
                lk_difference(&h, i, j).unwrap(),
                lk_difference(g, i, j).unwrap()
            );
        }
    }
}

#[test]
fn exchange_all_sign_and_order_cases() {
    for s1 in ['+', '-'] {
        for s2 in ['+', '-'] {
            for text in [
                format!("circles 2\ncircle 1: U1{s1} O2{s2}\ncircle 2: O1{s1} U2{s2}"),
                format!("circles 2\ncircle 1: O2{s2} U1{s1}\ncircle 2: O1{s1} U2{s2}"),
                format!("circles 1\ncircle 1: U1{s1} O2{s2} O1{s1} U2{s2}"),
                format!("circles 1\ncircle 1: O1{s1} U1{s1} O2{s2} U2{s2}"),
                format!("circles 3\ncircle 1: U1{s1} O2{s2}\ncircle 2: O1{s1}\ncircle 3: U2{s2}"),
            ] {
                let g = gd(&text);
                for c in 0..g.mu() {
                    let len = g.circle(c).len();
                    if len < 2 {
                        continue;
                    }
                    for gap in 0..len {
                        let site = Site::new(c, gap);
                        let (a, b) = pair_slots(&g, site).unwrap();
                        if g.circle(c)[a].chord != g.circle(c)[b].chord {
                            check_exchange(&g, site);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn exchange_random_sites_and_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 200 {
        let mu = rng.gen_range(1..=3);
        let n = rng.gen_range(2..=6);
        let g = random_diagram(&mut rng, mu, n);
        let c = rng.gen_range(0..mu);
        let len = g.circle(c).len();
        if len < 2 {
            continue;
        }
        let site = Site::new(c, rng.gen_range(0..len));
        let (a, b) = pair_slots(&g, site).unwrap();
        if g.circle(c)[a].chord == g.circle(c)[b].chord {
            assert!(exchange_adjacent(&g, site).is_err());
            continue;
        }
        check_exchange(&g, site);
        let (h, _) = exchange_adjacent(&g, site).unwrap();
        let (back, _) = exchange_adjacent(&h, site).unwrap();
        assert_eq!(canonical_form(&back), canonical_form(&g));
        done += 1;
    }
}

#[test]
fn exchange_errors() {
    let g = gd("circles 2\ncircle 1: O1+ U1+\ncircle 2:");
    assert!(matches!(
        exchange_adjacent(&g, Site::new(0, 1)),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        exchange_adjacent(&g, Site::new(1, 0)),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn flip_type_21_chord_on_odd_circle() {
    // One chord each way plus a self-chord; circle 1 has 3 endpoints... made odd by an extra nonself chord.
    let g = gd("circles 2\ncircle 1: O1+ U2+ O3- U3-\ncircle 2: U1+ O2+");
    assert_eq!(g.parity(0), crate::diagram::Parity::Even);
    assert!(matches!(
        flip_nonself_chord(&g, 0, ChordId(2)),
        Err(Error::Precondition(_))
    ));
    let g = gd("circles 2\ncircle 1: O1+ U2+ O3- U3- O4+\ncircle 2: U1+ O2+ U4+");
    let (h, trace) = flip_nonself_chord(&g, 0, ChordId(2)).unwrap();
    assert_eq!(canonical_form(&trace.replay().unwrap()), canonical_form(&h));
    let c2 = h.chord(ChordId(2)).unwrap();
    assert_eq!((c2.tail_circle, c2.head_circle, c2.sign), (0, 1, Sign::Neg));
    for id in [1, 3, 4] {
        assert_eq!(h.chord(ChordId(id)), g.chord(ChordId(id)));
    }
    assert_eq!(
        lk_difference(&h, 0, 1).unwrap(),
        lk_difference(&g, 0, 1).unwrap()
    );
    assert!(matches!(
        flip_nonself_chord(&g, 0, ChordId(3)),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn flip_circle_keeps_positions() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let g = random_diagram(&mut rng, 3, 5);
        let (h, trace) = flip_circle_chords(&g, 1).unwrap();
        assert_eq!(trace.replay().unwrap(), h);
        for c in 0..3 {
            let ids: Vec<_> = g.circle(c).iter().map(|e| e.chord).collect();
            let ids2: Vec<_> = h.circle(c).iter().map(|e| e.chord).collect();
            assert_eq!(ids, ids2);
        }
        for (id, ch) in g.chords() {
            let flip = !ch.is_self() && (ch.tail_circle == 1 || ch.head_circle == 1);
            assert_eq!(h.chords()[id].sign == ch.sign, !flip);
        }
    }
}
