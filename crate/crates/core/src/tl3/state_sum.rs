//! Brute-force Kauffman bracket of a closed 3-braid.
//!
//! Every crossing is smoothed one of two ways, the resulting planar matchings
//! are stacked and their loops counted with a union-find. Nothing here goes
//! through the TL3 multiplication table or the Markov trace formula.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::braid::{BraidWord, Generator};
use crate::laurent::LaurentPoly;

/// Default cap on word length; the enumeration visits `2^L` states.
pub const DEFAULT_ORACLE_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("word length {len} exceeds the state-sum cap {cap}")]
    CapExceeded { len: usize, cap: usize },
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            rank: vec![0; len],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Boundary points: `0, 1, 2` along the top, `3, 4, 5` along the bottom.
const STRANDS: usize = 3;
const POINTS: usize = 2 * STRANDS;

/// A crossingless 3-strand diagram together with the closed loops it has
/// absorbed so far.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlanarMatching {
    partner: [u8; POINTS],
    loops: u32,
}

impl PlanarMatching {
    pub fn identity() -> Self {
        let mut partner = [0u8; POINTS];
        for i in 0..STRANDS {
            partner[i] = (STRANDS + i) as u8;
            partner[STRANDS + i] = i as u8;
        }
        Self { partner, loops: 0 }
    }

    /// The cup-cap diagram joining strands `j` and `j + 1` at the top and at
    /// the bottom, with the remaining strand running straight through.
    pub fn cup_cap(g: Generator) -> Self {
        let j = g.index() - 1;
        let mut m = Self::identity();
        let through = if j == 0 { 2 } else { 0 };
        m.pair(j, j + 1);
        m.pair(STRANDS + j, STRANDS + j + 1);
        m.pair(through, STRANDS + through);
        m
    }

    fn pair(&mut self, a: usize, b: usize) {
        self.partner[a] = b as u8;
        self.partner[b] = a as u8;
    }

    pub fn partner(&self, point: usize) -> usize {
        self.partner[point] as usize
    }

    /// Closed loops absorbed during composition.
    pub fn loops(&self) -> u32 {
        self.loops
    }

    /// Stacks `self` on top of `below`, gluing `self`'s bottom points to
    /// `below`'s top points.
    pub fn compose(&self, below: &PlanarMatching) -> PlanarMatching {
        // self occupies nodes 0..6, below occupies 6..12
        let mut uf = UnionFind::new(2 * POINTS);
        for p in 0..POINTS {
            uf.union(p, self.partner(p));
            uf.union(POINTS + p, POINTS + below.partner(p));
        }
        for i in 0..STRANDS {
            uf.union(STRANDS + i, POINTS + i);
        }

        // outer node -> point index in the composite
        let outer = |node: usize| -> Option<usize> {
            match node {
                0..STRANDS => Some(node),
                n if n >= POINTS + STRANDS => Some(n - POINTS),
                _ => None,
            }
        };

        let mut ends: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for node in 0..2 * POINTS {
            let root = uf.find(node);
            let slot = ends.entry(root).or_default();
            if let Some(point) = outer(node) {
                slot.push(point);
            }
        }

        let mut out = PlanarMatching {
            partner: [0; POINTS],
            loops: self.loops + below.loops,
        };
        for points in ends.values() {
            match points.as_slice() {
                [] => out.loops += 1,
                [a, b] => out.pair(*a, *b),
                other => unreachable!("component with {} boundary points", other.len()),
            }
        }
        out
    }

    /// Number of loops produced by joining top point `i` to bottom point `i`.
    pub fn closure_loops(&self) -> u32 {
        let mut uf = UnionFind::new(POINTS);
        for p in 0..POINTS {
            uf.union(p, self.partner(p));
        }
        for i in 0..STRANDS {
            uf.union(i, STRANDS + i);
        }
        (0..POINTS).filter(|&p| uf.find(p) == p).count() as u32
    }
}

/// Bracket of the closure of `b` with the default cap.
pub fn bracket_state_sum(b: &BraidWord) -> Result<LaurentPoly, OracleError> {
    bracket_state_sum_with_cap(b, DEFAULT_ORACLE_CAP)
}

/// Sum over all `2^L` smoothings of `weight · d^(loops - 1)`.
///
/// A positive crossing smooths to the identity with weight `A` or to the
/// cup-cap with weight `A⁻¹`; a negative crossing swaps the two weights.
pub fn bracket_state_sum_with_cap(b: &BraidWord, cap: usize) -> Result<LaurentPoly, OracleError> {
    if b.len() > cap {
        return Err(OracleError::CapExceeded { len: b.len(), cap });
    }

    let smoothings: Vec<[(PlanarMatching, i64); 2]> = b
        .iter()
        .map(|letter| {
            let sign = letter.sign();
            [
                (PlanarMatching::identity(), sign),
                (PlanarMatching::cup_cap(letter.generator), -sign),
            ]
        })
        .collect();

    // (power of A, total loops) -> number of states
    let mut histogram: BTreeMap<(i64, u32), u64> = BTreeMap::new();
    let mut stack = vec![(0usize, PlanarMatching::identity(), 0i64)];
    while let Some((depth, diagram, power)) = stack.pop() {
        if depth == smoothings.len() {
            let loops = diagram.loops() + diagram.closure_loops();
            *histogram.entry((power, loops)).or_default() += 1;
            continue;
        }
        for (piece, weight) in &smoothings[depth] {
            stack.push((depth + 1, diagram.compose(piece), power + weight));
        }
    }

    let circle = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
    let mut total = LaurentPoly::zero();
    for ((power, loops), count) in histogram {
        let mut term = LaurentPoly::monomial(count, power);
        for _ in 1..loops {
            term = &term * &circle;
        }
        total += term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d() -> LaurentPoly {
        LaurentPoly::from_terms([(2, -1), (-2, -1)])
    }

    fn word(pairs: &[(i64, i64)]) -> BraidWord {
        BraidWord::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn identity_closes_to_three_loops() {
        assert_eq!(PlanarMatching::identity().closure_loops(), 3);
        assert_eq!(PlanarMatching::cup_cap(Generator::S1).closure_loops(), 2);
        assert_eq!(PlanarMatching::cup_cap(Generator::S2).closure_loops(), 2);
    }

    #[test]
    fn cup_cap_squared_absorbs_one_loop() {
        let u1 = PlanarMatching::cup_cap(Generator::S1);
        let sq = u1.compose(&u1);
        assert_eq!(sq.loops(), 1);
        assert_eq!(sq.partner, u1.partner);
    }

    #[test]
    fn zigzag_straightens() {
        let u1 = PlanarMatching::cup_cap(Generator::S1);
        let u2 = PlanarMatching::cup_cap(Generator::S2);
        let m = u1.compose(&u2).compose(&u1);
        assert_eq!(m, u1);
        let m = u2.compose(&u1).compose(&u2);
        assert_eq!(m, u2);
        assert_eq!(u1.compose(&u2).closure_loops(), 1);
    }

    #[test]
    fn composition_is_associative() {
        let pieces = [
            PlanarMatching::identity(),
            PlanarMatching::cup_cap(Generator::S1),
            PlanarMatching::cup_cap(Generator::S2),
        ];
        for a in &pieces {
            for b in &pieces {
                for c in &pieces {
                    assert_eq!(a.compose(b).compose(c), a.compose(&b.compose(c)));
                }
            }
        }
    }

    #[test]
    fn empty_word_is_d_squared() {
        assert_eq!(bracket_state_sum(&BraidWord::identity()).unwrap(), &d() * &d());
    }

    #[test]
    fn single_crossing_by_hand() {
        // identity smoothing: 3 loops, weight A; cup-cap: 2 loops, weight A⁻¹
        let expected = &(&LaurentPoly::a() * &(&d() * &d())) + &(&LaurentPoly::a_inv() * &d());
        assert_eq!(bracket_state_sum(&word(&[(1, 1)])).unwrap(), expected);
    }

    #[test]
    fn figure_eight_bracket() {
        // 16 states; multiplying by (-A³)^0 leaves the Jones polynomial
        let v = bracket_state_sum(&word(&[(1, 1), (2, -1), (1, 1), (2, -1)])).unwrap();
        assert_eq!(
            v,
            LaurentPoly::from_terms([(8, 1), (4, -1), (0, 1), (-4, -1), (-8, 1)])
        );
    }

    #[test]
    fn cap_is_enforced() {
        let b: BraidWord = "s1^5".parse().unwrap();
        assert_eq!(
            bracket_state_sum_with_cap(&b, 4),
            Err(OracleError::CapExceeded { len: 5, cap: 4 })
        );
        assert!(bracket_state_sum_with_cap(&b, 5).is_ok());
        let long: BraidWord = "s1^21".parse().unwrap();
        assert!(bracket_state_sum(&long).is_err());
    }
}
