use serde::Serialize;

use super::matching::{MatchingError, TangledMatching};

/// The five defining properties of a tangled matching on `{0, …, 2n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Property {
    /// `n+1` disjoint transpositions covering the ground set.
    Structure = 1,
    /// Every chord crosses at least one other chord.
    EveryChordCrossed = 2,
    /// No three pairwise crossing chords `{a1,a4},{a2,a5},{a3,a6}`.
    NoTripleCrossing = 3,
    /// No pattern `{a1,a4},{a5,a8},{a2,a7},{a3,a6}`.
    NoDoubleBridge = 4,
    /// Exactly `n` crossings.
    CrossingCountEqualsN = 5,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Structure,
        Property::EveryChordCrossed,
        Property::NoTripleCrossing,
        Property::NoDoubleBridge,
        Property::CrossingCountEqualsN,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn bit(self) -> u8 {
        1 << (self as u8 - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Malformed { reason: String },
    Uncrossed { chord: [usize; 2] },
    TripleCrossing { witness: [usize; 6] },
    DoubleBridge { witness: [usize; 8] },
    CrossingCount { expected: usize, found: usize },
}

impl Violation {
    pub fn property(&self) -> Property {
        match self {
            Violation::Malformed { .. } => Property::Structure,
            Violation::Uncrossed { .. } => Property::EveryChordCrossed,
            Violation::TripleCrossing { .. } => Property::NoTripleCrossing,
            Violation::DoubleBridge { .. } => Property::NoDoubleBridge,
            Violation::CrossingCount { .. } => Property::CrossingCountEqualsN,
        }
    }
}

fn crosses(x: (usize, usize), y: (usize, usize)) -> bool {
    (x.0 < y.0 && y.0 < x.1 && x.1 < y.1) || (y.0 < x.0 && x.0 < y.1 && y.1 < x.1)
}

fn first_uncrossed(chords: &[(usize, usize)]) -> Option<(usize, usize)> {
    chords.iter().copied().find(|&c| !chords.iter().any(|&d| crosses(c, d)))
}

fn first_triple(chords: &[(usize, usize)]) -> Option<[usize; 6]> {
    // chords are sorted by left endpoint
    for (i, &(a1, a4)) in chords.iter().enumerate() {
        for (j, &(a2, a5)) in chords.iter().enumerate().skip(i + 1) {
            if !(a2 < a4 && a4 < a5) {
                continue;
            }
            for &(a3, a6) in &chords[j + 1..] {
                if a3 < a4 && a5 < a6 {
                    return Some([a1, a2, a3, a4, a5, a6]);
                }
            }
        }
    }
    None
}

fn first_double_bridge(chords: &[(usize, usize)]) -> Option<[usize; 8]> {
    for &(a1, a4) in chords {
        for &(a5, a8) in chords.iter().filter(|c| c.0 > a4) {
            for &(a2, a7) in chords.iter().filter(|c| a1 < c.0 && c.0 < a4 && a5 < c.1 && c.1 < a8) {
                if let Some(&(a3, a6)) = chords.iter().find(|c| a2 < c.0 && c.0 < a4 && a5 < c.1 && c.1 < a7) {
                    return Some([a1, a2, a3, a4, a5, a6, a7, a8]);
                }
            }
        }
    }
    None
}

/// Checks every property of a candidate successor array and returns one
/// witness per violated property. An empty result means `succ` is tangled.
pub fn validate_tangled(succ: &[usize]) -> Vec<Violation> {
    match TangledMatching::from_partners(succ.to_vec()) {
        Ok(m) => validate_matching(&m),
        Err(e) => vec![Violation::Malformed { reason: e.to_string() }],
    }
}

/// Like [`validate_tangled`] for an already well-formed involution.
pub fn validate_matching(m: &TangledMatching) -> Vec<Violation> {
    let mut out = Vec::new();
    let chords = m.pairs();
    if let Some((a, b)) = first_uncrossed(&chords) {
        out.push(Violation::Uncrossed { chord: [a, b] });
    }
    if let Some(witness) = first_triple(&chords) {
        out.push(Violation::TripleCrossing { witness });
    }
    if let Some(witness) = first_double_bridge(&chords) {
        out.push(Violation::DoubleBridge { witness });
    }
    let found = m.crossing_count();
    let expected = m.caret_count();
    if found != expected {
        out.push(Violation::CrossingCount { expected, found });
    }
    out
}

/// Bitmask (see [`Property::bit`]) of the properties `m` satisfies.
pub fn satisfied_properties(m: &TangledMatching) -> u8 {
    let failed = validate_matching(m).iter().fold(0u8, |acc, v| acc | v.property().bit());
    0b11111 & !failed
}

impl From<MatchingError> for Violation {
    fn from(e: MatchingError) -> Self {
        Violation::Malformed { reason: e.to_string() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: &[(usize, usize)]) -> TangledMatching {
        TangledMatching::from_pairs(p).unwrap()
    }

    #[test]
    fn caret_matching_is_valid() {
        assert!(validate_tangled(&[2, 3, 0, 1]).is_empty());
    }

    #[test]
    fn uncrossed_pairs_fail_two_and_five() {
        let v = validate_tangled(&[1, 0, 3, 2]);
        assert_eq!(
            v,
            vec![
                Violation::Uncrossed { chord: [0, 1] },
                Violation::CrossingCount { expected: 1, found: 0 },
            ]
        );
    }

    #[test]
    fn malformed_input() {
        let v = validate_tangled(&[0, 1]);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].property(), Property::Structure);
        assert_eq!(validate_tangled(&[1, 2, 0]).len(), 1);
    }

    #[test]
    fn triple_crossing_detected() {
        let v = validate_matching(&m(&[(0, 3), (1, 4), (2, 5)]));
        assert!(v.contains(&Violation::TripleCrossing {
            witness: [0, 1, 2, 3, 4, 5]
        }));
    }

    #[test]
    fn double_bridge_detected() {
        let v = validate_matching(&m(&[(0, 3), (4, 7), (1, 6), (2, 5)]));
        assert!(v.contains(&Violation::DoubleBridge {
            witness: [0, 1, 2, 3, 4, 5, 6, 7]
        }));
        // 4 crossings on 8 points (n = 3)
        assert!(v.contains(&Violation::CrossingCount { expected: 3, found: 4 }));
    }

    #[test]
    fn property_bits() {
        assert_eq!(satisfied_properties(&m(&[(0, 2), (1, 3)])), 0b11111);
        assert_eq!(satisfied_properties(&m(&[(0, 1), (2, 3)])), 0b01101);
    }
}
