//! Composite moves built only from primitives, so their effect on signs and
//! orientations is whatever the primitives produce.

use super::{apply_move, gap_between, pair_slots, Move, R2Variant, Site};
use crate::diagram::{ChordId, EndKind, GaussDiagram, Parity, Sign};
use crate::error::{Error, Result};
use crate::trace::MoveTrace;

fn step(g: &mut GaussDiagram, steps: &mut Vec<Move>, m: Move) -> Result<()> {
    *g = apply_move(g, &m)?;
    steps.push(m);
    Ok(())
}

/// Gap of the pair formed by two endpoints on one circle, reading `first` then `second`.
fn ordered_gap(g: &GaussDiagram, first: (ChordId, EndKind), second: (ChordId, EndKind)) -> Site {
    let (c, p) = g.locate(first.0, first.1).expect("endpoint present");
    let (c2, q) = g.locate(second.0, second.1).expect("endpoint present");
    debug_assert_eq!(c, c2);
    let gap = gap_between(g.circle(c).len(), p, q).expect("endpoints adjacent in order");
    Site::new(c, gap)
}

/// Gap of an adjacent pair in whichever order it appears.
fn any_gap(g: &GaussDiagram, a: (ChordId, EndKind), b: (ChordId, EndKind)) -> Site {
    let (c, p) = g.locate(a.0, a.1).expect("endpoint present");
    let (_, q) = g.locate(b.0, b.1).expect("endpoint present");
    let len = g.circle(c).len();
    let gap = gap_between(len, p, q)
        .or_else(|| gap_between(len, q, p))
        .expect("endpoints adjacent");
    Site::new(c, gap)
}

pub(crate) fn exchange_steps(g: &GaussDiagram, site: Site) -> Result<(GaussDiagram, Vec<Move>)> {
    if site.circle >= g.mu() {
        return Err(Error::SiteOutOfRange(format!(
            "circle {} of {}",
            site.circle + 1,
            g.mu()
        )));
    }
    if g.circle(site.circle).is_empty() {
        return Err(Error::Precondition("exchange on an empty circle".into()));
    }
    let (a, b) = pair_slots(g, site)?;
    let (ea, eb) = (g.circle(site.circle)[a], g.circle(site.circle)[b]);
    if ea.chord == eb.chord {
        return Err(Error::Precondition(format!(
            "both slots belong to chord {}",
            ea.chord
        )));
    }
    let mut cur = g.clone();
    let mut steps = Vec::new();
    if ea.kind == eb.kind {
        step(&mut cur, &mut steps, Move::CF { site })?;
        return Ok((cur, steps));
    }

    // x owns the head in the pair, z the tail; y, y' are helper chords.
    let (x, z, o_m) = if ea.kind == EndKind::Head {
        (ea.chord, eb.chord, 1)
    } else {
        (eb.chord, ea.chord, -1)
    };
    let sign = |id: ChordId| g.chords()[&id].sign.value();
    let o_t = o_m * sign(z);
    let o_b = o_m * sign(x);

    let (ctx, ptx) = g.locate(x, EndKind::Tail).expect("tail of x");
    let tail_gap = if o_t == 1 { ptx + 1 } else { ptx };
    let n1 = g.next_id();
    let n2 = ChordId(n1.0 + 1);
    let (y, y2, first_sign) = if o_t == 1 {
        (n1, n2, Sign::Pos)
    } else {
        (n2, n1, Sign::Neg)
    };
    let (chz, mut phz) = g.locate(z, EndKind::Head).expect("head of z");
    if chz == ctx && phz >= tail_gap {
        phz += 2;
    }
    let head_gap = if o_b == 1 { phz } else { phz + 1 };
    let variant = if o_t != o_b {
        R2Variant::Parallel
    } else {
        R2Variant::Antiparallel
    };
    step(
        &mut cur,
        &mut steps,
        Move::R2Insert {
            tail: Site::new(ctx, tail_gap),
            head: Site::new(chz, head_gap),
            sign: first_sign,
            variant,
        },
    )?;

    let tx = (x, EndKind::Tail);
    let ty = (y, EndKind::Tail);
    let hx = (x, EndKind::Head);
    let tz = (z, EndKind::Tail);
    let hy = (y, EndKind::Head);
    let hz = (z, EndKind::Head);
    let t_site = if o_t == 1 {
        ordered_gap(&cur, tx, ty)
    } else {
        ordered_gap(&cur, ty, tx)
    };
    let m_site = if o_m == 1 {
        ordered_gap(&cur, hx, tz)
    } else {
        ordered_gap(&cur, tz, hx)
    };
    let b_site = if o_b == 1 {
        ordered_gap(&cur, hy, hz)
    } else {
        ordered_gap(&cur, hz, hy)
    };
    step(
        &mut cur,
        &mut steps,
        Move::R3 {
            sites: [t_site, m_site, b_site],
        },
    )?;

    let cf1 = any_gap(&cur, tx, (y2, EndKind::Tail));
    step(&mut cur, &mut steps, Move::CF { site: cf1 })?;
    let cf2 = any_gap(&cur, hz, hy);
    step(&mut cur, &mut steps, Move::CF { site: cf2 })?;

    let tails = any_gap(&cur, (y, EndKind::Tail), (y2, EndKind::Tail));
    let heads = any_gap(&cur, (y, EndKind::Head), (y2, EndKind::Head));
    step(
        &mut cur,
        &mut steps,
        Move::R2Delete {
            tail: tails,
            head: heads,
        },
    )?;
    Ok((cur, steps))
}

/// Exchanges the two endpoints around `site`. Equal kinds take one CF move;
/// mixed kinds go through a helper R2 pair, an R3 move and two CF moves.
/// Both chords end up with negated signs and reversed orientations.
pub fn exchange_adjacent(g: &GaussDiagram, site: Site) -> Result<(GaussDiagram, MoveTrace)> {
    let (out, steps) = exchange_steps(g, site)?;
    Ok((out, MoveTrace::new(g.clone(), steps)))
}

pub(crate) fn flip_circle_steps(g: &GaussDiagram, c: usize) -> Result<(GaussDiagram, Vec<Move>)> {
    if c >= g.mu() {
        return Err(Error::SiteOutOfRange(format!(
            "circle {} of {}",
            c + 1,
            g.mu()
        )));
    }
    let len = g.circle(c).len();
    let mut cur = g.clone();
    let mut steps = Vec::new();
    if len == 0 {
        return Ok((cur, steps));
    }
    step(
        &mut cur,
        &mut steps,
        Move::R1Insert {
            site: Site::new(c, 0),
            sign: Sign::Pos,
            head_first: false,
        },
    )?;
    for k in 0..len {
        let (next, more) = exchange_steps(&cur, Site::new(c, k + 2))?;
        cur = next;
        steps.extend(more);
    }
    step(
        &mut cur,
        &mut steps,
        Move::R1Delete {
            site: Site::new(c, 0),
        },
    )?;
    Ok((cur, steps))
}

/// Negates and reverses every nonself-chord attached to circle `c` by
/// sliding one end of a free chord once around it. Self-chords are unchanged.
pub fn flip_circle_chords(g: &GaussDiagram, c: usize) -> Result<(GaussDiagram, MoveTrace)> {
    let (out, steps) = flip_circle_steps(g, c)?;
    Ok((out, MoveTrace::new(g.clone(), steps)))
}

pub(crate) fn flip_nonself_steps(
    g: &GaussDiagram,
    c: usize,
    chord: ChordId,
) -> Result<(GaussDiagram, Vec<Move>)> {
    if c >= g.mu() {
        return Err(Error::SiteOutOfRange(format!(
            "circle {} of {}",
            c + 1,
            g.mu()
        )));
    }
    let info = g
        .chord(chord)
        .ok_or_else(|| Error::Precondition(format!("no chord {chord}")))?;
    if info.is_self() {
        return Err(Error::Precondition(format!(
            "chord {chord} is a self-chord"
        )));
    }
    if info.tail_circle != c && info.head_circle != c {
        return Err(Error::Precondition(format!(
            "chord {chord} is not attached to circle {}",
            c + 1
        )));
    }
    if g.parity(c) == Parity::Even {
        return Err(Error::Precondition(format!("circle {} is even", c + 1)));
    }
    let len = g.circle(c).len();
    let mut cur = g.clone();
    let mut steps = Vec::new();
    // Carry the chord's endpoint once around; it is flipped an even number of times.
    for _ in 0..len - 1 {
        let p = cur.slot_on(c, chord).expect("endpoint on circle");
        let (next, more) = exchange_steps(&cur, Site::new(c, (p + 1) % len))?;
        cur = next;
        steps.extend(more);
    }
    let (next, more) = flip_circle_steps(&cur, c)?;
    steps.extend(more);
    Ok((next, steps))
}

/// Negates and reverses a single nonself-chord attached to an odd circle.
pub fn flip_nonself_chord(
    g: &GaussDiagram,
    c: usize,
    chord: ChordId,
) -> Result<(GaussDiagram, MoveTrace)> {
    let (out, steps) = flip_nonself_steps(g, c, chord)?;
    Ok((out, MoveTrace::new(g.clone(), steps)))
}
