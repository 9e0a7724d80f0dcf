//! Kauffman-bracket computation of the Jones polynomial.
//!
//! The bracket is computed by tangle contraction: crossings are absorbed one
//! at a time into a partial tangle whose states are matchings of the open
//! strand ends, with coefficients merged per matching. For braid closures
//! this is the usual left-to-right Temperley-Lieb sweep and the state count
//! stays Catalan-bounded in the strand number, far below the 2^c state sum.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::notation::{KnotPresentation, PlanarDiagram};

/// Crossing cap for bracket computations.
pub const DEFAULT_CROSSING_CAP: usize = 24;

/// Jones polynomial of a knot together with the two quantities the L-space
/// obstruction consumes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JonesReport {
    /// `J(t)`, normalized to 1 on the unknot; integer exponents for knots.
    pub jones: LaurentPoly,
    /// `det = |J(-1)|`.
    pub det: BigInt,
    /// `J'(-1)`, an integer for knots.
    pub jprime_at_minus_one: BigInt,
}

/// Kauffman bracket of a diagram, normalized to 1 on the unknot, with the
/// default crossing cap.
pub fn kauffman_bracket(pd: &PlanarDiagram) -> Result<LaurentPoly> {
    kauffman_bracket_with_cap(pd, DEFAULT_CROSSING_CAP)
}

pub fn kauffman_bracket_with_cap(pd: &PlanarDiagram, cap: usize) -> Result<LaurentPoly> {
    let c = pd.crossing_count();
    if c > cap {
        return Err(Error::DiagramTooLarge { crossings: c, cap });
    }
    if c == 0 {
        return Ok(LaurentPoly::one());
    }

    let order = contraction_order(pd);
    // delta = -A^2 - A^-2; one loop is already accounted by normalization
    let delta = LaurentPoly::from_terms([(2i64, -1i64), (-2, -1)]);

    // Each state is a matching on "open ends": slot s of an unprocessed
    // crossing is open when a path through the processed region ends there.
    // Untouched arcs are implicit. Keys are sorted pair lists.
    type State = Vec<(u32, u32)>;
    let mut states: HashMap<State, LaurentPoly> = HashMap::new();
    states.insert(Vec::new(), LaurentPoly::one());

    // slot ids: 4*crossing + position; other_slot pairs equal arc labels
    let mut slots_of_arc: HashMap<u32, Vec<u32>> = HashMap::new();
    for (ci, x) in pd.crossings().iter().enumerate() {
        for (p, &arc) in x.iter().enumerate() {
            slots_of_arc.entry(arc).or_default().push((4 * ci + p) as u32);
        }
    }
    let mut other_slot = vec![0u32; 4 * c];
    for slots in slots_of_arc.values() {
        debug_assert_eq!(slots.len(), 2);
        other_slot[slots[0] as usize] = slots[1];
        other_slot[slots[1] as usize] = slots[0];
    }

    let a_pos = LaurentPoly::monomial(1, 1);
    let a_neg = LaurentPoly::monomial(-1, 1);

    for &ci in &order {
        let base = (4 * ci) as u32;
        // A-smoothing joins (a,b) and (c,d); B-smoothing joins (a,d) and (b,c)
        let joins = [
            ([(base, base + 1), (base + 2, base + 3)], &a_pos),
            ([(base, base + 3), (base + 1, base + 2)], &a_neg),
        ];
        let mut next: HashMap<State, LaurentPoly> = HashMap::with_capacity(states.len() * 2);
        for (pairing, coeff) in &states {
            for (join, weight) in &joins {
                let mut m: HashMap<u32, u32> =
                    pairing.iter().flat_map(|&(x, y)| [(x, y), (y, x)]).collect();
                // ends of the path plugged into a slot: follow the arc first
                let mut loops = 0u32;
                for &(s, t) in join {
                    let es = m.remove(&s).unwrap_or(other_slot[s as usize]);
                    m.remove(&es);
                    if es == t {
                        // the join closes the path into a loop
                        loops += 1;
                        continue;
                    }
                    let et = m.remove(&t).unwrap_or(other_slot[t as usize]);
                    m.remove(&et);
                    if et == s {
                        loops += 1;
                        continue;
                    }
                    m.insert(es, et);
                    m.insert(et, es);
                }
                let mut key: State = m
                    .iter()
                    .filter(|&(&x, &y)| x < y)
                    .map(|(&x, &y)| (x, y))
                    .collect();
                key.sort_unstable();
                let mut term = coeff * weight;
                for _ in 0..loops {
                    term = &term * &delta;
                }
                match next.get_mut(&key) {
                    Some(acc) => *acc = &*acc + &term,
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        states = next;
    }

    debug_assert_eq!(states.len(), 1);
    let (key, value) = states.into_iter().next().expect("nonempty state set");
    debug_assert!(key.is_empty());
    // the final closure is one loop beyond the base normalization
    Ok(divide_by_delta_power(value, &delta, pd))
}

/// All slots consumed means every arc closed up; the state-sum normalization
/// counted every loop with delta, the bracket convention divides one out.
fn divide_by_delta_power(value: LaurentPoly, delta: &LaurentPoly, _pd: &PlanarDiagram) -> LaurentPoly {
    // value = delta^(loops) * bracket-ish accumulated with loops >= 1;
    // exactly one overall delta factor is spurious under the "unknot = 1"
    // normalization. Divide once, exactly.
    let (q, r) = laurent_div_exact(&value, delta);
    debug_assert!(r.is_zero(), "closed-diagram coefficient must be divisible by delta");
    q
}

/// Exact division of Laurent polynomials (remainder returned for checking).
fn laurent_div_exact(num: &LaurentPoly, den: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if num.is_zero() {
        return (LaurentPoly::zero(), LaurentPoly::zero());
    }
    let mut rem = num.clone();
    let mut quot = LaurentPoly::zero();
    let dlead = den.max_exp().unwrap();
    let dcoeff = den.coeff(dlead);
    while !rem.is_zero() {
        let rlead = rem.max_exp().unwrap();
        if rem.max_exp().unwrap() - rem.min_exp().unwrap() < den.max_exp().unwrap() - den.min_exp().unwrap()
        {
            break;
        }
        let c = rem.coeff(rlead);
        let (q, r) = num_integer::Integer::div_rem(&c, &dcoeff);
        if !r.is_zero() {
            break;
        }
        let mono = LaurentPoly::monomial(rlead - dlead, q);
        quot = &quot + &mono;
        rem = &rem - &(&mono * den);
    }
    (quot, rem)
}

fn contraction_order(pd: &PlanarDiagram) -> Vec<usize> {
    let c = pd.crossing_count();
    let mut arc_seen: HashMap<u32, bool> = HashMap::new();
    let mut done = vec![false; c];
    let mut order = Vec::with_capacity(c);
    for _ in 0..c {
        let mut best: Option<(usize, usize)> = None; // (open-arc count, index)
        for i in 0..c {
            if done[i] {
                continue;
            }
            let open = pd.crossings()[i]
                .iter()
                .filter(|a| *arc_seen.get(a).unwrap_or(&false))
                .count();
            if best.map_or(true, |(bo, bi)| open > bo || (open == bo && i < bi)) {
                best = Some((open, i));
            }
        }
        let (_, i) = best.unwrap();
        done[i] = true;
        for &a in &pd.crossings()[i] {
            arc_seen.insert(a, true);
        }
        order.push(i);
    }
    order
}

/// Jones polynomial with `t = A^-4` normalization: `J = (-A)^(-3w) <D>`.
pub fn jones(presentation: &KnotPresentation) -> Result<JonesReport> {
    jones_with_cap(presentation, DEFAULT_CROSSING_CAP)
}

pub fn jones_with_cap(presentation: &KnotPresentation, cap: usize) -> Result<JonesReport> {
    let pd = presentation.diagram()?;
    if !pd.is_knot() {
        return Err(Error::NotAKnot(pd.components()));
    }
    let writhe = match presentation.braid() {
        Ok(b) => b.writhe(),
        Err(_) => pd.writhe()?,
    };
    let bracket = kauffman_bracket_with_cap(&pd, cap)?;
    // (-A)^(-3w) = (-1)^w * A^(-3w)
    let mut f = bracket.shift(-3 * writhe);
    if writhe % 2 != 0 {
        f = -&f;
    }
    // t = A^-4: exponents are multiples of 4 for genuine knot diagrams
    if let Some((e, _)) = f.terms().find(|(e, _)| e % 4 != 0) {
        return Err(Error::Validation(format!(
            "bracket exponent {e} not divisible by 4; the diagram does not close to a knot"
        )));
    }
    let jones = LaurentPoly::from_terms(f.terms().map(|(e, c)| (-e / 4, c.clone())));

    let minus_one = BigInt::from(-1);
    let det_val: Rational = jones.eval_at_integer(&minus_one);
    debug_assert!(det_val.is_integer());
    let jprime: Rational = jones.derivative().eval_at_integer(&minus_one);
    debug_assert!(jprime.is_integer());
    Ok(JonesReport {
        jones,
        det: det_val.to_integer().abs(),
        jprime_at_minus_one: jprime.to_integer(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{braid_to_pd, parse_braid, parse_pd, torus_braid};

    /// Independent oracle: direct 2^c state enumeration with a union-find
    /// loop count per state.
    fn bracket_state_sum(pd: &PlanarDiagram) -> LaurentPoly {
        let c = pd.crossing_count();
        if c == 0 {
            return LaurentPoly::one();
        }
        let delta = LaurentPoly::from_terms([(2i64, -1i64), (-2, -1)]);
        let mut total = LaurentPoly::zero();
        for mask in 0u64..(1 << c) {
            let mut parent: HashMap<u32, u32> = HashMap::new();
            fn find(parent: &mut HashMap<u32, u32>, x: u32) -> u32 {
                let p = *parent.get(&x).unwrap_or(&x);
                if p == x {
                    x
                } else {
                    let r = find(parent, p);
                    parent.insert(x, r);
                    r
                }
            }
            let mut union = |parent: &mut HashMap<u32, u32>, a: u32, b: u32| {
                let ra = find(parent, a);
                let rb = find(parent, b);
                if ra != rb {
                    parent.insert(ra, rb);
                }
            };
            let mut exp = 0i64;
            for (i, x) in pd.crossings().iter().enumerate() {
                let [a, b, cc, d] = *x;
                if mask >> i & 1 == 0 {
                    exp += 1;
                    union(&mut parent, a, b);
                    union(&mut parent, cc, d);
                } else {
                    exp -= 1;
                    union(&mut parent, a, d);
                    union(&mut parent, b, cc);
                }
            }
            let mut roots: Vec<u32> = (1..=2 * c as u32)
                .map(|a| find(&mut parent, a))
                .collect();
            roots.sort_unstable();
            roots.dedup();
            let mut term = LaurentPoly::monomial(exp, 1);
            for _ in 1..roots.len() {
                term = &term * &delta;
            }
            total = &total + &term;
        }
        total
    }

    /// Torus-knot Jones closed form:
    /// `t^((p-1)(q-1)/2) (1 - t^(p+1) - t^(q+1) + t^(p+q)) / (1 - t^2)`.
    fn torus_jones(p: i64, q: i64) -> LaurentPoly {
        let num = LaurentPoly::from_terms([
            (0i64, 1i64),
            (p + 1, -1),
            (q + 1, -1),
            (p + q, 1),
        ]);
        let den = LaurentPoly::from_terms([(0i64, 1i64), (2, -1)]);
        let (quot, rem) = laurent_div_exact(&num, &den);
        assert!(rem.is_zero());
        quot.shift((p - 1) * (q - 1) / 2)
    }

    fn jones_of(word: &str) -> JonesReport {
        jones(&parse_braid(word).unwrap().into()).unwrap()
    }

    #[test]
    fn bracket_of_empty_diagram() {
        assert_eq!(kauffman_bracket(&PlanarDiagram::empty()).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn bracket_of_positive_kink() {
        let pd = braid_to_pd(&parse_braid("k=2;1").unwrap()).unwrap();
        assert_eq!(
            kauffman_bracket(&pd).unwrap(),
            LaurentPoly::monomial(3, -1),
            "positive kink bracket must be -A^3"
        );
    }

    #[test]
    fn bracket_matches_state_sum_oracle() {
        for word in ["1 1 1", "1 -2 1 -2", "1 1 1 1 1", "1 2 1 2", "k=3;1 1 1 2", "1 -2 -2 1"] {
            let b = parse_braid(word).unwrap();
            if !b.closes_to_knot() {
                continue;
            }
            let pd = braid_to_pd(&b).unwrap();
            assert_eq!(
                kauffman_bracket(&pd).unwrap(),
                bracket_state_sum(&pd),
                "braid {word}"
            );
        }
    }

    #[test]
    fn trefoil_jones() {
        let rep = jones_of("1 1 1");
        assert_eq!(
            rep.jones,
            LaurentPoly::from_terms([(4i64, -1i64), (3, 1), (1, 1)])
        );
        assert_eq!(rep.det, BigInt::from(3));
        assert_eq!(rep.jprime_at_minus_one, BigInt::from(8));
    }

    #[test]
    fn unknot_jones() {
        let rep = jones(&crate::notation::BraidWord::unknot().into()).unwrap();
        assert_eq!(rep.jones, LaurentPoly::one());
        assert_eq!(rep.det, BigInt::from(1));
        assert_eq!(rep.jprime_at_minus_one, BigInt::from(0));
    }

    #[test]
    fn figure_eight_jones() {
        let rep = jones_of("1 -2 1 -2");
        assert_eq!(
            rep.jones,
            LaurentPoly::from_terms([(-2i64, 1i64), (-1, -1), (0, 1), (1, -1), (2, 1)])
        );
        assert_eq!(rep.det, BigInt::from(5));
    }

    #[test]
    fn torus_knot_jones_against_closed_form() {
        for (p, q) in [(2u64, 3u64), (2, 5), (2, 7), (3, 4), (3, 5), (3, 7)] {
            let rep = jones(&torus_braid(p, q).unwrap().into()).unwrap();
            assert_eq!(rep.jones, torus_jones(p as i64, q as i64), "T({p},{q})");
        }
        let t35 = jones(&torus_braid(3, 5).unwrap().into()).unwrap();
        assert_eq!(
            t35.jones,
            LaurentPoly::from_terms([(4i64, 1i64), (6, 1), (10, -1)])
        );
        assert_eq!(t35.det, BigInt::from(1));
        assert_eq!(t35.jprime_at_minus_one, BigInt::from(0));
        let t37 = jones(&torus_braid(3, 7).unwrap().into()).unwrap();
        assert_eq!(
            t37.jones,
            LaurentPoly::from_terms([(6i64, 1i64), (8, 1), (14, -1)])
        );
        assert_eq!(t37.det, BigInt::from(1));
        assert_eq!(t37.jprime_at_minus_one, BigInt::from(0));
    }

    #[test]
    fn mirror_inverts_the_variable() {
        for word in ["1 1 1", "1 -2 1 -2", "1 1 1 2 -1 2"] {
            let b = parse_braid(word).unwrap();
            let j = jones(&b.clone().into()).unwrap().jones;
            let jm = jones(&b.mirror().into()).unwrap().jones;
            assert_eq!(jm, j.invert_variable(), "braid {word}");
        }
    }

    #[test]
    fn multiplicative_under_connected_sum() {
        let t = parse_braid("1 1 1").unwrap();
        let f8 = parse_braid("1 -2 1 -2").unwrap();
        let sum = t.connected_sum(&f8).unwrap();
        let lhs = jones(&sum.into()).unwrap().jones;
        let rhs = &jones(&t.into()).unwrap().jones * &jones(&f8.into()).unwrap().jones;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn markov_moves_preserve_jones() {
        for word in ["1 1 1", "1 -2 1 -2", "1 1 1 1 1"] {
            let b = parse_braid(word).unwrap();
            let j = jones(&b.clone().into()).unwrap().jones;
            assert_eq!(jones(&b.stabilize().into()).unwrap().jones, j, "stabilize {word}");
            assert_eq!(jones(&b.rotate().into()).unwrap().jones, j, "rotate {word}");
        }
    }

    #[test]
    fn jones_at_one_is_one() {
        for word in ["1 1 1", "1 -2 1 -2", "1 1 1 2 -1 2", "-1 -1 -1"] {
            let rep = jones_of(word);
            assert_eq!(
                rep.jones.eval_at_integer(&BigInt::from(1)),
                Rational::from(BigInt::from(1)),
                "braid {word}"
            );
        }
    }

    #[test]
    fn crossing_cap_enforced() {
        let b = torus_braid(2, 25).unwrap();
        let res = jones(&b.into());
        assert_eq!(
            res,
            Err(Error::DiagramTooLarge { crossings: 25, cap: DEFAULT_CROSSING_CAP })
        );
    }

    #[test]
    fn jones_invariant_under_arc_relabeling() {
        // renumbering the arcs from a different starting point along the
        // orientation is the same diagram
        for word in ["1 1 1", "1 -2 1 -2", "1 1 1 2 -1 2"] {
            let b = parse_braid(word).unwrap();
            let pd = braid_to_pd(&b).unwrap();
            let c = pd.crossing_count() as u32;
            let baseline = jones(&pd.clone().into()).unwrap();
            for shift in [1u32, 3, 2 * c - 1] {
                let relabeled: Vec<[u32; 4]> = pd
                    .crossings()
                    .iter()
                    .map(|x| x.map(|a| (a + shift - 1) % (2 * c) + 1))
                    .collect();
                let pd2 = PlanarDiagram::new(relabeled).unwrap();
                let rep = jones(&pd2.into()).unwrap();
                assert_eq!(rep.jones, baseline.jones, "{word} shifted by {shift}");
            }
        }
    }

    #[test]
    fn jones_from_parsed_pd() {
        // table trefoil (left-handed): J = -t^-4 + t^-3 + t^-1
        let pd = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let rep = jones(&pd.into()).unwrap();
        assert_eq!(
            rep.jones,
            LaurentPoly::from_terms([(-4i64, -1i64), (-3, 1), (-1, 1)])
        );
        assert_eq!(rep.det, BigInt::from(3));
    }
}
