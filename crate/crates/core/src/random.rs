//! Seeded generators of random diagrams for tests, audits and the oracle.

use rand::Rng;

use crate::diagram::{Chord, EndKind, Endpoint, GaussDiagram, Parity, Sign};

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// Adds one chord with the given end circles at uniformly random positions.
pub fn add_random_chord<R: Rng>(rng: &mut R, g: &mut GaussDiagram, tail: usize, head: usize) {
    let id = g.next_id();
    let sign = random_sign(rng);
    let p = rng.gen_range(0..=g.circle(tail).len());
    g.circle_mut(tail)
        .insert(p, Endpoint::new(id, EndKind::Tail));
    let q = rng.gen_range(0..=g.circle(head).len());
    g.circle_mut(head)
        .insert(q, Endpoint::new(id, EndKind::Head));
    g.add_chord(
        id,
        Chord {
            sign,
            tail_circle: tail,
            head_circle: head,
        },
    );
}

/// `chords` chords with independently uniform end circles, signs and positions.
pub fn random_diagram<R: Rng>(rng: &mut R, mu: usize, chords: usize) -> GaussDiagram {
    let mut g = GaussDiagram::empty(mu);
    for _ in 0..chords {
        let t = rng.gen_range(0..mu);
        let h = rng.gen_range(0..mu);
        add_random_chord(rng, &mut g, t, h);
    }
    g
}

/// Adds nonself-chords between circles whose parity differs from `target`
/// until every circle matches. The number of mismatches must be even.
pub fn fix_parities<R: Rng>(rng: &mut R, g: &mut GaussDiagram, target: &[Parity]) {
    let wrong: Vec<usize> = (0..g.mu()).filter(|&c| g.parity(c) != target[c]).collect();
    assert!(wrong.len().is_multiple_of(2), "parity target unreachable");
    for pair in wrong.chunks(2) {
        let (a, b) = if rng.gen_bool(0.5) {
            (pair[0], pair[1])
        } else {
            (pair[1], pair[0])
        };
        add_random_chord(rng, g, a, b);
    }
}

/// Random diagram with three even circles; at most `chords + 1` chords.
pub fn random_even3<R: Rng>(rng: &mut R, chords: usize) -> GaussDiagram {
    let mut g = random_diagram(rng, 3, chords);
    fix_parities(rng, &mut g, &[Parity::Even; 3]);
    g
}

/// Random diagram in which every circle is odd; `mu` must be even.
pub fn random_odd<R: Rng>(rng: &mut R, mu: usize, chords: usize) -> GaussDiagram {
    assert!(
        mu.is_multiple_of(2),
        "odd links have an even number of components"
    );
    let mut g = random_diagram(rng, mu, chords);
    fix_parities(rng, &mut g, &vec![Parity::Odd; mu]);
    g
}

/// Random diagram in which exactly circle `even` is even; `mu` must be odd.
pub fn random_almost_odd<R: Rng>(
    rng: &mut R,
    mu: usize,
    even: usize,
    chords: usize,
) -> GaussDiagram {
    assert!(
        mu % 2 == 1,
        "almost odd links have an odd number of components"
    );
    let mut g = random_diagram(rng, mu, chords);
    let target: Vec<Parity> = (0..mu)
        .map(|c| if c == even { Parity::Even } else { Parity::Odd })
        .collect();
    fix_parities(rng, &mut g, &target);
    g
}
