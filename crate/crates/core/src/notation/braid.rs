//! Braid words and the operations used to build the knot corpus.

use std::fmt;

use crate::error::{Error, Result};

/// A word in the Artin generators of the braid group on `strand_count`
/// strands. Letter `e > 0` is the generator `sigma_e`, `e < 0` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strand_count: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strand_count: usize, letters: Vec<i32>) -> Result<Self> {
        if strand_count == 0 {
            return Err(Error::Validation("strand count must be positive".into()));
        }
        if !letters.is_empty() && strand_count < 2 {
            return Err(Error::Validation(
                "a nonempty braid word needs at least 2 strands".into(),
            ));
        }
        for &e in &letters {
            if e == 0 {
                return Err(Error::Validation("braid letter 0 is not allowed".into()));
            }
            if e.unsigned_abs() as usize > strand_count - 1 {
                return Err(Error::Validation(format!(
                    "letter {e} out of range for {strand_count} strands"
                )));
            }
        }
        Ok(BraidWord { strand_count, letters })
    }

    /// The unknot as the closure of the empty 1-strand braid.
    pub fn unknot() -> Self {
        BraidWord { strand_count: 1, letters: vec![] }
    }

    pub fn strand_count(&self) -> usize {
        self.strand_count
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&e| e.signum() as i64).sum()
    }

    /// The permutation of strand positions induced by the braid,
    /// as the image vector of `0..k`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strand_count).collect();
        for &e in &self.letters {
            let i = e.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        perm
    }

    /// Number of components of the braid closure = cycles of the permutation.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }

    pub fn closes_to_knot(&self) -> bool {
        self.closure_components() == 1
    }

    fn ensure_knot(&self) -> Result<()> {
        match self.closure_components() {
            1 => Ok(()),
            c => Err(Error::NotAKnot(c)),
        }
    }

    /// Mirror image: negate every letter.
    pub fn mirror(&self) -> Self {
        BraidWord {
            strand_count: self.strand_count,
            letters: self.letters.iter().map(|&e| -e).collect(),
        }
    }

    /// Connected sum of the closures: concatenate, shifting the second word's
    /// indices past the first word's strands.
    pub fn connected_sum(&self, other: &BraidWord) -> Result<BraidWord> {
        self.ensure_knot()?;
        other.ensure_knot()?;
        let shift = (self.strand_count - 1) as i32;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().map(|&e| e + e.signum() * shift));
        let sum = BraidWord {
            strand_count: self.strand_count + other.strand_count - 1,
            letters,
        };
        debug_assert!(sum.closes_to_knot());
        Ok(sum)
    }

    /// Markov stabilization: one more strand, one more positive crossing.
    pub fn stabilize(&self) -> BraidWord {
        let mut letters = self.letters.clone();
        let k = self.strand_count.max(1);
        letters.push(k as i32);
        BraidWord { strand_count: k + 1, letters }
    }

    /// Cyclic rotation of the word (conjugation by the first letter).
    pub fn rotate(&self) -> BraidWord {
        if self.letters.is_empty() {
            return self.clone();
        }
        let mut letters = self.letters[1..].to_vec();
        letters.push(self.letters[0]);
        BraidWord { strand_count: self.strand_count, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={};", self.strand_count)?;
        for (i, e) in self.letters.iter().enumerate() {
            write!(f, "{}{e}", if i == 0 { "" } else { " " })?;
        }
        Ok(())
    }
}

/// The standard braid `(sigma_1 ... sigma_(p-1))^q` on `p` strands, whose
/// closure is the right-handed torus knot `T(p, q)`.
pub fn torus_braid(p: u64, q: u64) -> Result<BraidWord> {
    if p < 2 || q < 2 {
        return Err(Error::Validation("torus parameters must be >= 2".into()));
    }
    if num_integer::gcd(p, q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    let mut letters = Vec::with_capacity(((p - 1) * q) as usize);
    for _ in 0..q {
        for i in 1..p {
            letters.push(i as i32);
        }
    }
    BraidWord::new(p as usize, letters)
}

/// Parses whitespace- or comma-separated letters with an optional
/// `k=<int>;` strand-count prefix; otherwise `k = 1 + max |letter|`.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let text = text.trim();
    let (declared, body) = match text.strip_prefix("k=") {
        Some(rest) => {
            let (num, body) = rest.split_once(';').ok_or_else(|| {
                Error::Parse("missing ';' after strand count prefix".into())
            })?;
            let k: usize = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad strand count {:?}", num.trim())))?;
            (Some(k), body)
        }
        None => (None, text),
    };

    let mut letters = Vec::new();
    for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
        if tok.is_empty() {
            continue;
        }
        let e: i32 = tok
            .parse()
            .map_err(|_| Error::Parse(format!("bad braid letter {tok:?}")))?;
        if e == 0 {
            return Err(Error::Parse("braid letter 0 is not allowed".into()));
        }
        letters.push(e);
    }

    let k = match declared {
        Some(k) => {
            if let Some(bad) = letters.iter().find(|e| e.unsigned_abs() as usize >= k) {
                return Err(Error::Parse(format!(
                    "letter {bad} needs more than the declared {k} strands"
                )));
            }
            k
        }
        None => 1 + letters.iter().map(|e| e.unsigned_abs() as usize).max().unwrap_or(0),
    };
    BraidWord::new(k, letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_plain() {
        let b = parse_braid("1 1 1").unwrap();
        assert_eq!(b.strand_count(), 2);
        assert_eq!(b.letters(), &[1, 1, 1]);
    }

    #[test]
    fn parse_with_prefix_and_commas() {
        let b = parse_braid("k=3; 1,-2,1,-2").unwrap();
        assert_eq!(b.strand_count(), 3);
        assert_eq!(b.letters(), &[1, -2, 1, -2]);
    }

    #[test]
    fn parse_rejects_zero_letter() {
        assert!(matches!(parse_braid("0 1"), Err(Error::Parse(_))));
    }

    #[test]
    fn parse_rejects_overflowing_letter() {
        assert!(matches!(parse_braid("k=2; 2"), Err(Error::Parse(_))));
        assert!(matches!(parse_braid("x y"), Err(Error::Parse(_))));
    }

    #[test]
    fn parse_unknot() {
        let b = parse_braid("k=1;").unwrap();
        assert_eq!(b, BraidWord::unknot());
        assert_eq!(b.closure_components(), 1);
    }

    #[test]
    fn closure_components_examples() {
        let trefoil = parse_braid("1 1 1").unwrap();
        assert_eq!(trefoil.closure_components(), 1);
        let hopf = parse_braid("1 1").unwrap();
        assert_eq!(hopf.closure_components(), 2);
        let empty3 = BraidWord::new(3, vec![]).unwrap();
        assert_eq!(empty3.closure_components(), 3);
    }

    #[test]
    fn torus_braids() {
        assert_eq!(torus_braid(2, 3).unwrap(), parse_braid("1 1 1").unwrap());
        assert_eq!(
            torus_braid(3, 5).unwrap().letters(),
            &[1, 2, 1, 2, 1, 2, 1, 2, 1, 2]
        );
        assert_eq!(torus_braid(2, 4), Err(Error::NotCoprime(2, 4)));
        assert!(torus_braid(3, 5).unwrap().closes_to_knot());
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(
            parse_braid("1 1 1").unwrap().mirror().letters(),
            &[-1, -1, -1]
        );
        assert_eq!(parse_braid("k=3;1 -2").unwrap().mirror().letters(), &[-1, 2]);
        let empty = BraidWord::new(2, vec![]).unwrap();
        assert_eq!(empty.mirror(), empty);
    }

    #[test]
    fn connected_sums() {
        let t = parse_braid("1 1 1").unwrap();
        let granny = t.connected_sum(&t).unwrap();
        assert_eq!(granny.strand_count(), 3);
        assert_eq!(granny.letters(), &[1, 1, 1, 2, 2, 2]);

        let u = BraidWord::unknot();
        let same = t.connected_sum(&u).unwrap();
        assert_eq!(same.letters(), t.letters());
        assert_eq!(same.strand_count(), t.strand_count());

        let hopf = parse_braid("1 1").unwrap();
        assert_eq!(hopf.connected_sum(&t), Err(Error::NotAKnot(2)));
        // a 2-strand empty braid closes to a 2-component unlink
        let e2 = BraidWord::new(2, vec![]).unwrap();
        assert_eq!(t.connected_sum(&e2), Err(Error::NotAKnot(2)));
    }

    fn arb_braid() -> impl Strategy<Value = BraidWord> {
        (2usize..5, proptest::collection::vec(any::<bool>(), 0..10)).prop_flat_map(|(k, signs)| {
            let len = signs.len();
            (
                Just(k),
                Just(signs),
                proptest::collection::vec(1..(k as i32), len),
            )
                .prop_map(|(k, signs, idx)| {
                    let letters = idx
                        .into_iter()
                        .zip(signs)
                        .map(|(i, s)| if s { i } else { -i })
                        .collect();
                    BraidWord::new(k, letters).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn mirror_preserves_components(b in arb_braid()) {
            prop_assert_eq!(b.mirror().closure_components(), b.closure_components());
        }

        #[test]
        fn connected_sum_of_knots_is_knot(a in arb_braid(), b in arb_braid()) {
            if a.closes_to_knot() && b.closes_to_knot() {
                let s = a.connected_sum(&b).unwrap();
                prop_assert_eq!(s.closure_components(), 1);
                prop_assert_eq!(s.writhe(), a.writhe() + b.writhe());
            }
        }

        #[test]
        fn display_round_trips(b in arb_braid()) {
            let again = parse_braid(&b.to_string()).unwrap();
            prop_assert_eq!(again, b);
        }
    }
}
