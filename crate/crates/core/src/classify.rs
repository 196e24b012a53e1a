//! CF-equivalence decisions and the consistency audit for 3-component even diagrams.

use serde::Serialize;

use crate::diagram::{canonical_form, GaussDiagram, LinkClass};
use crate::error::{Error, Result};
use crate::invariants::{
    invariant_profile, lk_difference, n_invariant, pairs, tau_pair, HalfInteger, InvariantProfile,
};
use crate::normalform::{flip_normal_form, normalize_general, normalize_odd, NormalFormParams};
use crate::par::{self, Execution};
use crate::trace::MoveTrace;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Equivalent,
    NotEquivalent,
    Unknown,
}

/// Which classification result the verdict rests on.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// Two components: virtual linking number, plus `n` when both are even.
    ThOikawa,
    /// Odd or almost odd: all linking differences.
    ThOdd,
    /// Three even components: differences, `n` values and `τ₀ - τ₁`.
    ThEven,
    /// No classification applies; only invariants are compared.
    InvariantsOnly,
    /// One component: every diagram is CF-equivalent to the trivial one.
    Unknotting,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub theorem: Theorem,
    pub witness: Option<String>,
    pub certificate: Option<MoveTrace>,
}

impl Verdict {
    fn not_equivalent(theorem: Theorem, witness: String) -> Self {
        Verdict {
            status: Status::NotEquivalent,
            theorem,
            witness: Some(witness),
            certificate: None,
        }
    }
}

fn pair_name(i: usize, j: usize) -> String {
    format!("({},{})", i + 1, j + 1)
}

fn first_diff(pg: &InvariantProfile, ph: &InvariantProfile) -> Option<String> {
    pairs(pg.mu)
        .into_iter()
        .zip(pg.diffs.iter().zip(&ph.diffs))
        .find(|(_, (a, b))| a != b)
        .map(|((i, j), (a, b))| {
            format!("Lk{0}-Lk{1}: {a} vs {b}", pair_name(i, j), pair_name(j, i))
        })
}

fn first_vlk(pg: &InvariantProfile, ph: &InvariantProfile) -> Option<String> {
    (pg.diffs[0] != ph.diffs[0]).then(|| {
        format!(
            "vlk(1,2): {} vs {}",
            HalfInteger {
                twice: -pg.diffs[0]
            },
            HalfInteger {
                twice: -ph.diffs[0]
            }
        )
    })
}

fn first_n(pg: &InvariantProfile, ph: &InvariantProfile) -> Option<String> {
    pairs(pg.mu)
        .into_iter()
        .zip(pg.n.iter().zip(&ph.n))
        .find(|(_, (a, b))| a != b)
        .map(|((i, j), (a, b))| {
            let show = |v: &Option<u64>| v.map_or("undefined".to_string(), |v| v.to_string());
            format!("n{}: {} vs {}", pair_name(i, j), show(a), show(b))
        })
}

fn first_tau(pg: &InvariantProfile, ph: &InvariantProfile) -> Option<String> {
    match (pg.tau_difference(), ph.tau_difference()) {
        (Some(a), Some(b)) if a != b => Some(format!("tau0-tau1: {a} vs {b}")),
        _ => None,
    }
}

/// Decides CF-equivalence. An `Equivalent` verdict carries a certificate
/// trace from `g` to (a rotated, relabelled copy of) `h`.
pub fn decide(g: &GaussDiagram, h: &GaussDiagram) -> Verdict {
    if g.mu() != h.mu() {
        return Verdict::not_equivalent(
            Theorem::InvariantsOnly,
            format!("components: {} vs {}", g.mu(), h.mu()),
        );
    }
    if let Some(c) = (0..g.mu()).find(|&c| g.parity(c) != h.parity(c)) {
        return Verdict::not_equivalent(
            Theorem::InvariantsOnly,
            format!(
                "parity of circle {}: {} vs {}",
                c + 1,
                g.parity(c),
                h.parity(c)
            ),
        );
    }
    let class = g.link_class();
    let (theorem, witness, decided) = if g.mu() == 1 {
        (Theorem::Unknotting, None, true)
    } else {
        let pg = invariant_profile(g);
        let ph = invariant_profile(h);
        match class {
            _ if g.mu() == 2 => {
                let w = first_vlk(&pg, &ph).or_else(|| first_n(&pg, &ph));
                (Theorem::ThOikawa, w, true)
            }
            LinkClass::Odd | LinkClass::AlmostOdd(_) => {
                (Theorem::ThOdd, first_diff(&pg, &ph), true)
            }
            LinkClass::Even if g.mu() == 3 => {
                let w = first_diff(&pg, &ph)
                    .or_else(|| first_n(&pg, &ph))
                    .or_else(|| first_tau(&pg, &ph));
                (Theorem::ThEven, w, true)
            }
            _ => {
                let w = first_diff(&pg, &ph).or_else(|| first_n(&pg, &ph));
                (Theorem::InvariantsOnly, w, false)
            }
        }
    };
    if let Some(w) = witness {
        return Verdict::not_equivalent(theorem, w);
    }
    if !decided {
        return Verdict {
            status: Status::Unknown,
            theorem,
            witness: None,
            certificate: None,
        };
    }
    let certificate =
        certificate(g, h).unwrap_or_else(|e| panic!("certificate construction failed: {e}"));
    Verdict {
        status: Status::Equivalent,
        theorem,
        witness: None,
        certificate: Some(certificate),
    }
}

/// Normal-form route between two diagrams that the classification says are equivalent.
fn certificate(g: &GaussDiagram, h: &GaussDiagram) -> Result<MoveTrace> {
    let odd = matches!(g.link_class(), LinkClass::Odd | LinkClass::AlmostOdd(_));
    let ((pg, tg), (ph, th)) = if odd {
        (normalize_odd(g)?, normalize_odd(h)?)
    } else {
        (normalize_general(g), normalize_general(h))
    };
    let mut forward = tg;
    if pg != ph {
        let k = (0..g.mu())
            .find(|&k| pg.flip_circle(k) == ph)
            .ok_or_else(|| {
                Error::Precondition(format!("normal forms {pg} and {ph} are not related"))
            })?;
        let (_, bridge) = flip_normal_form(&forward.replay()?, &[k])?;
        forward = forward.then(&bridge)?;
    }
    let cert = forward.then(&th.reverse()?)?;
    debug_assert_eq!(canonical_form(&cert.replay()?), canonical_form(h));
    Ok(cert)
}

/// Normal-form parameters compared by [`decide`] for a 3-component even diagram.
pub fn even3_key(g: &GaussDiagram) -> Result<NormalFormParams> {
    crate::normalform::canonicalize_even3(&normalize_general(g).0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    /// Linking differences for pairs 12, 13, 23.
    pub x: [i64; 3],
    /// n-invariants for pairs 12, 13, 23.
    pub y: [u64; 3],
    /// `τ₀ - τ₁`.
    pub z: i64,
    pub parity_ok: bool,
    pub product_ok: bool,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.parity_ok && self.product_ok
    }
}

/// Checks `x_ij ≡ y_kl (mod 2)` across all pairs and `|z| = y12·y13·y23`.
pub fn relation_check(g: &GaussDiagram) -> Result<RelationReport> {
    if g.mu() != 3 || g.link_class() != LinkClass::Even {
        return Err(Error::Precondition(
            "relation check needs three even circles".into(),
        ));
    }
    let ps = pairs(3);
    let mut x = [0; 3];
    let mut y = [0; 3];
    for (k, &(i, j)) in ps.iter().enumerate() {
        x[k] = lk_difference(g, i, j)?;
        y[k] = n_invariant(g, i, j)?;
    }
    let (t0, t1) = tau_pair(g)?;
    let z = t0 - t1;
    let parity = x[0].rem_euclid(2);
    let parity_ok =
        x.iter().all(|v| v.rem_euclid(2) == parity) && y.iter().all(|&v| (v % 2) as i64 == parity);
    let product_ok = z.unsigned_abs() == y[0] * y[1] * y[2];
    Ok(RelationReport {
        x,
        y,
        z,
        parity_ok,
        product_ok,
    })
}

/// [`relation_check`] over many diagrams.
pub fn relation_audit(diagrams: &[GaussDiagram], exec: Execution) -> Vec<Result<RelationReport>> {
    par::map_vec(exec, diagrams, relation_check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_gauss_code;
    use crate::normalform::realize;

    #[test]
    fn reflexive() {
        let g =
            parse_gauss_code("circles 2\ncircle 1: O1+ U2- O3+\ncircle 2: U1+ O2- U3+").unwrap();
        let v = decide(&g, &g);
        assert_eq!(v.status, Status::Equivalent);
        assert_eq!(v.theorem, Theorem::ThOikawa);
        let cert = v.certificate.unwrap();
        assert_eq!(canonical_form(&cert.replay().unwrap()), canonical_form(&g));
    }

    #[test]
    fn mu_and_parity_mismatch() {
        let v = decide(&GaussDiagram::empty(2), &GaussDiagram::empty(3));
        assert_eq!(v.status, Status::NotEquivalent);
        let g = parse_gauss_code("circles 2\ncircle 1: O1+\ncircle 2: U1+").unwrap();
        let v = decide(&g, &GaussDiagram::empty(2));
        assert_eq!(v.status, Status::NotEquivalent);
        assert!(v.witness.unwrap().starts_with("parity"));
    }

    #[test]
    fn tau_separates_opposite_products() {
        let p = realize(&NormalFormParams::from_tuple3([1, 1, 1, 1, 1, 1]));
        let q = realize(&NormalFormParams::from_tuple3([1, 1, 1, 1, -1, -1]));
        let v = decide(&p, &q);
        assert_eq!(v.status, Status::NotEquivalent);
        assert_eq!(v.theorem, Theorem::ThEven);
        assert_eq!(v.witness.as_deref(), Some("tau0-tau1: 8 vs -8"));
    }

    #[test]
    fn chordless_relations() {
        let r = relation_check(&GaussDiagram::empty(3)).unwrap();
        assert!(r.passed());
        assert_eq!((r.x, r.y, r.z), ([0; 3], [0; 3], 0));
        assert!(relation_check(&GaussDiagram::empty(2)).is_err());
    }

    #[test]
    fn four_even_components_are_unknown() {
        let v = decide(&GaussDiagram::empty(4), &GaussDiagram::empty(4));
        assert_eq!(
            (v.status, v.theorem),
            (Status::Unknown, Theorem::InvariantsOnly)
        );
    }
}
