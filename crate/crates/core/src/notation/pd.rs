//! Planar diagram (PD) codes.
//!
//! A crossing `X(a, b, c, d)` lists the four arc labels around the crossing
//! counterclockwise, starting at the incoming under-strand `a`. Arc labels
//! run 1..2c consecutively along the knot's orientation, so the over-strand
//! direction (and with it the crossing sign) is recovered from label
//! succession. Planarity of the code is not checked.

use crate::error::{Error, Result};
use crate::notation::braid::BraidWord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<[u32; 4]>,
}

impl PlanarDiagram {
    /// Validates arc-label double occurrence. The empty diagram is the unknot.
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<Self> {
        let c = crossings.len();
        let mut count = vec![0u32; 2 * c + 1];
        for x in &crossings {
            for &label in x {
                if label == 0 || label as usize > 2 * c {
                    return Err(Error::Validation(format!(
                        "arc label {label} out of range 1..{}",
                        2 * c
                    )));
                }
                count[label as usize] += 1;
            }
        }
        if let Some(label) = (1..=2 * c).find(|&l| count[l] != 2) {
            return Err(Error::Validation(format!(
                "arc label {label} appears {} times, expected 2",
                count[label]
            )));
        }
        Ok(PlanarDiagram { crossings })
    }

    pub fn empty() -> Self {
        PlanarDiagram { crossings: vec![] }
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Number of link components: cycles of the arc-succession relation
    /// (under-passages pair a with c, over-passages pair b with d).
    pub fn components(&self) -> usize {
        let c = self.crossings.len();
        if c == 0 {
            return 1;
        }
        let mut uf = UnionFind::new(2 * c + 1);
        for x in &self.crossings {
            uf.union(x[0] as usize, x[2] as usize);
            uf.union(x[1] as usize, x[3] as usize);
        }
        let mut roots: Vec<usize> = (1..=2 * c).map(|a| uf.find(a)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    pub fn is_knot(&self) -> bool {
        self.components() == 1
    }

    /// Sum of crossing signs, from label succession. Fails when the labels
    /// do not run consecutively along the orientation.
    pub fn writhe(&self) -> Result<i64> {
        let n = 2 * self.crossings.len() as u32;
        let succ = |x: u32| -> u32 { x % n + 1 };
        let mut w = 0i64;
        for x in &self.crossings {
            let [a, b, c, d] = *x;
            if succ(a) != c {
                return Err(Error::Validation(format!(
                    "under-strand labels {a} -> {c} are not successive"
                )));
            }
            let b_to_d = succ(b) == d;
            let d_to_b = succ(d) == b;
            w += match (b_to_d, d_to_b) {
                (true, false) => -1,
                (false, true) => 1,
                // one-crossing diagrams are ambiguous mod 2; the kink
                // chirality is read off the repeated label position
                (true, true) if a == b => 1,
                (true, true) if a == d => -1,
                _ => {
                    return Err(Error::Validation(format!(
                        "over-strand labels {b}, {d} are not successive"
                    )))
                }
            };
        }
        Ok(w)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Parses a list of `X(a,b,c,d)` terms. The empty string is the unknot.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram> {
    let mut crossings = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|ch: char| ch.is_whitespace() || ch == ',');
        if rest.is_empty() {
            break;
        }
        let Some(stripped) = rest.strip_prefix('X').or_else(|| rest.strip_prefix('x')) else {
            return Err(Error::Parse(format!(
                "expected X(...) term at {:?}",
                rest.chars().take(12).collect::<String>()
            )));
        };
        let stripped = stripped.trim_start();
        let Some(stripped) = stripped.strip_prefix('(') else {
            return Err(Error::Parse("expected '(' after X".into()));
        };
        let Some(close) = stripped.find(')') else {
            return Err(Error::Parse("unterminated X(...) term".into()));
        };
        let inner = &stripped[..close];
        let labels: Vec<&str> = inner.split(',').map(str::trim).collect();
        if labels.len() != 4 {
            return Err(Error::Parse(format!(
                "crossing X({inner}) has {} labels, expected 4",
                labels.len()
            )));
        }
        let mut tuple = [0u32; 4];
        for (slot, tok) in tuple.iter_mut().zip(&labels) {
            *slot = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad arc label {tok:?}")))?;
        }
        crossings.push(tuple);
        rest = &stripped[close + 1..];
    }
    PlanarDiagram::new(crossings)
}

/// PD code of a braid closure, all strands oriented downward; crossing signs
/// of the output match the braid letter signs and the arc labels run 1..2c
/// along the orientation.
pub fn braid_to_pd(braid: &BraidWord) -> Result<PlanarDiagram> {
    match braid.closure_components() {
        1 => {}
        c => return Err(Error::NotAKnot(c)),
    }
    let k = braid.strand_count();
    let letters = braid.letters();
    if letters.is_empty() {
        return Ok(PlanarDiagram::empty());
    }

    // provisional edge ids: 0..k are the top-of-braid edges
    let mut next_id = k;
    let top: Vec<usize> = (0..k).collect();
    let mut cur = top.clone();
    // crossing record: (positive?, under_in, under_out, over_in, over_out)
    let mut recs: Vec<(bool, usize, usize, usize, usize)> = Vec::with_capacity(letters.len());
    for &e in letters {
        let i = e.unsigned_abs() as usize - 1;
        let (u, v) = (cur[i], cur[i + 1]);
        let (x, y) = (next_id, next_id + 1);
        next_id += 2;
        if e > 0 {
            // under-strand runs NW -> SE, over NE -> SW
            recs.push((true, u, y, v, x));
        } else {
            recs.push((false, v, x, u, y));
        }
        cur[i] = x;
        cur[i + 1] = y;
    }

    // closure: bottom edge at each position is the top edge
    let mut uf = UnionFind::new(next_id);
    for p in 0..k {
        uf.union(cur[p], top[p]);
    }

    // orientation successor on edge classes
    let c = letters.len();
    let mut succ = vec![usize::MAX; next_id];
    for &(_, ui, uo, oi, oo) in &recs {
        succ[uf.find(ui)] = uf.find(uo);
        succ[uf.find(oi)] = uf.find(oo);
    }

    // walk the knot once, assigning final labels 1..2c
    let mut label = vec![0u32; next_id];
    let start = uf.find(top[0]);
    let mut edge = start;
    for l in 1..=(2 * c as u32) {
        debug_assert_eq!(label[edge], 0);
        label[edge] = l;
        edge = succ[edge];
        debug_assert_ne!(edge, usize::MAX);
    }
    debug_assert_eq!(edge, start, "closure traversal must be a single cycle");

    let final_label: Vec<u32> = (0..next_id).map(|e| label[uf.find(e)]).collect();
    let crossings = recs
        .iter()
        .map(|&(pos, ui, uo, oi, oo)| {
            let lab = |e: usize| final_label[e];
            if pos {
                // (a, b, c, d) = (NW, SW, SE, NE) = (under-in, over-out, under-out, over-in)
                [lab(ui), lab(oo), lab(uo), lab(oi)]
            } else {
                // (a, b, c, d) = (NE, NW, SW, SE) = (under-in, over-in, under-out, over-out)
                [lab(ui), lab(oi), lab(uo), lab(oo)]
            }
        })
        .collect();
    PlanarDiagram::new(crossings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::braid::parse_braid;

    #[test]
    fn parse_trefoil() {
        let pd = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        assert_eq!(pd.crossing_count(), 3);
        assert_eq!(pd.components(), 1);
        // the table form of the trefoil is the left-handed one
        assert_eq!(pd.writhe().unwrap(), -3);
    }

    #[test]
    fn parse_empty_is_unknot() {
        let pd = parse_pd("").unwrap();
        assert_eq!(pd.crossing_count(), 0);
        assert_eq!(pd.components(), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_pd("X(1,2,3)"), Err(Error::Parse(_))));
        assert!(matches!(parse_pd("Y(1,2,3,4)"), Err(Error::Parse(_))));
        // label 1 appears four times
        assert!(matches!(
            parse_pd("X(1,1,2,2) X(1,1,2,2)"),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn braid_to_pd_trefoil() {
        let b = parse_braid("1 1 1").unwrap();
        let pd = braid_to_pd(&b).unwrap();
        assert_eq!(pd.crossing_count(), 3);
        assert_eq!(pd.components(), 1);
        assert_eq!(pd.writhe().unwrap(), 3);
    }

    #[test]
    fn braid_to_pd_figure_eight() {
        let b = parse_braid("1 -2 1 -2").unwrap();
        let pd = braid_to_pd(&b).unwrap();
        assert_eq!(pd.crossing_count(), 4);
        assert_eq!(pd.components(), 1);
        assert_eq!(pd.writhe().unwrap(), 0);
    }

    #[test]
    fn braid_to_pd_rejects_links() {
        let hopf = parse_braid("1 1").unwrap();
        assert_eq!(braid_to_pd(&hopf), Err(Error::NotAKnot(2)));
    }

    #[test]
    fn kinks() {
        let pos = parse_braid("k=2;1").unwrap();
        let pd = braid_to_pd(&pos).unwrap();
        assert_eq!(pd.writhe().unwrap(), 1);
        let neg = parse_braid("k=2;-1").unwrap();
        assert_eq!(braid_to_pd(&neg).unwrap().writhe().unwrap(), -1);
    }

    #[test]
    fn writhe_matches_letter_signs() {
        for word in ["1 1 1", "1 -2 1 -2", "1 2 1 2", "k=3;1 1 1 2", "1 -2 -2 1"] {
            let b = parse_braid(word).unwrap();
            if !b.closes_to_knot() {
                continue;
            }
            let pd = braid_to_pd(&b).unwrap();
            assert_eq!(pd.writhe().unwrap(), b.writhe(), "braid {word}");
        }
    }

    proptest::proptest! {
        #[test]
        fn random_braid_pd_writhe(
            k in 2usize..5,
            raw in proptest::collection::vec((1u8..4, proptest::bool::ANY), 1..12)
        ) {
            let letters: Vec<i32> = raw
                .iter()
                .map(|&(i, sign)| {
                    let idx = 1 + (i as i32 - 1) % (k as i32 - 1);
                    if sign { idx } else { -idx }
                })
                .collect();
            let b = crate::notation::BraidWord::new(k, letters).unwrap();
            if b.closes_to_knot() {
                let pd = braid_to_pd(&b).unwrap();
                proptest::prop_assert_eq!(pd.components(), 1);
                proptest::prop_assert_eq!(pd.writhe().unwrap(), b.writhe());
            } else {
                proptest::prop_assert!(braid_to_pd(&b).is_err());
            }
        }
    }
}
