//! Pauli errors in binary symplectic form `(z | x)`, phases dropped.
//!
//! A coordinate with only the z bit set is `Z`, only x is `X`, both is `Y`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::subsets::{binomial, next_combination};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliLetter {
    Z,
    X,
    Y,
}

impl PauliLetter {
    /// Enumeration order: Z < X < Y.
    pub const ALL: [PauliLetter; 3] = [PauliLetter::Z, PauliLetter::X, PauliLetter::Y];

    fn bits(self) -> (bool, bool) {
        match self {
            PauliLetter::Z => (true, false),
            PauliLetter::X => (false, true),
            PauliLetter::Y => (true, true),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliVector {
    z: BitVector,
    x: BitVector,
}

impl PauliVector {
    pub fn new(z: BitVector, x: BitVector) -> Result<Self> {
        if z.len() != x.len() {
            return Err(Error::Dimension(format!(
                "z part of length {} with x part of length {}",
                z.len(),
                x.len()
            )));
        }
        Ok(PauliVector { z, x })
    }

    pub fn identity(n: usize) -> Self {
        PauliVector {
            z: BitVector::zeros(n),
            x: BitVector::zeros(n),
        }
    }

    /// `Z(v)`.
    pub fn z_only(v: BitVector) -> Self {
        let n = v.len();
        PauliVector { z: v, x: BitVector::zeros(n) }
    }

    /// `X(u)`.
    pub fn x_only(u: BitVector) -> Self {
        let n = u.len();
        PauliVector { z: BitVector::zeros(n), x: u }
    }

    pub fn single(n: usize, qubit: usize, letter: PauliLetter) -> Self {
        let mut p = PauliVector::identity(n);
        p.set_letter(qubit, Some(letter));
        p
    }

    /// Place `letters` on the ascending `support`.
    pub fn on_support(n: usize, support: &[usize], letters: &[PauliLetter]) -> Self {
        let mut p = PauliVector::identity(n);
        for (&q, &l) in support.iter().zip(letters) {
            p.set_letter(q, Some(l));
        }
        p
    }

    pub fn num_qubits(&self) -> usize {
        self.z.len()
    }

    pub fn z_part(&self) -> &BitVector {
        &self.z
    }

    pub fn x_part(&self) -> &BitVector {
        &self.x
    }

    pub fn letter(&self, qubit: usize) -> Option<PauliLetter> {
        match (self.z.get(qubit), self.x.get(qubit)) {
            (false, false) => None,
            (true, false) => Some(PauliLetter::Z),
            (false, true) => Some(PauliLetter::X),
            (true, true) => Some(PauliLetter::Y),
        }
    }

    pub fn set_letter(&mut self, qubit: usize, letter: Option<PauliLetter>) {
        let (z, x) = letter.map_or((false, false), PauliLetter::bits);
        self.z.set(qubit, z);
        self.x.set(qubit, x);
    }

    pub fn is_identity(&self) -> bool {
        self.z.is_zero() && self.x.is_zero()
    }

    /// Qubits where either part is set.
    pub fn support(&self) -> BitVector {
        self.z.or(&self.x).expect("parts share a length")
    }

    /// Number of qubits acted on non-trivially.
    pub fn symplectic_weight(&self) -> usize {
        self.z
            .words()
            .iter()
            .zip(self.x.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Product up to phase.
    pub fn xor(&self, other: &PauliVector) -> Result<PauliVector> {
        Ok(PauliVector {
            z: self.z.xor(&other.z)?,
            x: self.x.xor(&other.x)?,
        })
    }

    /// Symplectic form `z·x' + x·z'`; zero iff the operators commute.
    pub fn sym_inner(&self, other: &PauliVector) -> Result<bool> {
        Ok(self.z.dot(&other.x)? ^ self.x.dot(&other.z)?)
    }

    /// Does `Z(c)` commute with this error? Only the x part can anticommute.
    pub fn commutes_with_z(&self, c: &BitVector) -> Result<bool> {
        Ok(!c.dot(&self.x)?)
    }
}

pub fn sym_inner(p: &PauliVector, q: &PauliVector) -> Result<bool> {
    p.sym_inner(q)
}

pub fn commutes_with_z(c: &BitVector, p: &PauliVector) -> Result<bool> {
    p.commutes_with_z(c)
}

impl fmt::Display for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.num_qubits())
            .map(|q| match self.letter(q) {
                None => 'I',
                Some(PauliLetter::Z) => 'Z',
                Some(PauliLetter::X) => 'X',
                Some(PauliLetter::Y) => 'Y',
            })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = s.chars().count();
        let mut p = PauliVector::identity(n);
        for (q, c) in s.chars().enumerate() {
            let letter = match c {
                'I' | '_' | '.' => None,
                'Z' => Some(PauliLetter::Z),
                'X' => Some(PauliLetter::X),
                'Y' => Some(PauliLetter::Y),
                other => return Err(Error::Parse(format!("invalid Pauli letter {other:?} in {s:?}"))),
            };
            p.set_letter(q, letter);
        }
        Ok(p)
    }
}

impl Serialize for PauliVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Number of Paulis of weight exactly `w` on `n` qubits, `C(n, w) · 3^w`.
pub fn count_by_weight(n: usize, w: usize) -> u128 {
    binomial(n, w) * 3u128.pow(w as u32)
}

/// Advance a letter assignment like an odometer (last coordinate fastest).
pub(crate) fn next_letters(letters: &mut [PauliLetter]) -> bool {
    for l in letters.iter_mut().rev() {
        match *l {
            PauliLetter::Z => {
                *l = PauliLetter::X;
                return true;
            }
            PauliLetter::X => {
                *l = PauliLetter::Y;
                return true;
            }
            PauliLetter::Y => *l = PauliLetter::Z,
        }
    }
    false
}

/// All Paulis of weight exactly `w` on the given ascending support.
pub fn paulis_on_support(n: usize, support: &[usize]) -> impl Iterator<Item = PauliVector> + '_ {
    let mut letters = Some(vec![PauliLetter::Z; support.len()]);
    std::iter::from_fn(move || {
        let current = letters.take()?;
        let p = PauliVector::on_support(n, support, &current);
        let mut next = current;
        if next_letters(&mut next) {
            letters = Some(next);
        }
        Some(p)
    })
}

/// Every Pauli of symplectic weight exactly `w`: supports in lexicographic order,
/// then letters per support with Z < X < Y and the last coordinate varying fastest.
pub fn enumerate_by_weight(n: usize, w: usize) -> PauliIter {
    PauliIter {
        n,
        support: (w <= n).then(|| (0..w).collect()),
        letters: vec![PauliLetter::Z; w],
    }
}

pub struct PauliIter {
    n: usize,
    support: Option<Vec<usize>>,
    letters: Vec<PauliLetter>,
}

impl Iterator for PauliIter {
    type Item = PauliVector;

    fn next(&mut self) -> Option<PauliVector> {
        let support = self.support.as_mut()?;
        let p = PauliVector::on_support(self.n, support, &self.letters);
        if !next_letters(&mut self.letters) && !next_combination(support, self.n) {
            self.support = None;
        }
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn p(s: &str) -> PauliVector {
        s.parse().unwrap()
    }

    fn from_parts(z: &str, x: &str) -> PauliVector {
        PauliVector::new(z.parse().unwrap(), x.parse().unwrap()).unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(from_parts("110", "011").symplectic_weight(), 3);
        assert_eq!(PauliVector::identity(5).symplectic_weight(), 0);
        assert_eq!(from_parts("110", "011").to_string(), "ZYX");
        assert!(PauliVector::new("10".parse().unwrap(), "1".parse().unwrap()).is_err());
    }

    #[test]
    fn inner_products() {
        let z = from_parts("1", "0");
        let x = from_parts("0", "1");
        assert!(z.sym_inner(&x).unwrap());
        assert!(!z.sym_inner(&z).unwrap());
        assert!(!p("ZXII").sym_inner(&p("IIYX")).unwrap());
        assert!(p("ZI").sym_inner(&p("ZIX")).is_err());
    }

    #[test]
    fn z_commutation() {
        let zero: BitVector = "00000".parse().unwrap();
        let ones: BitVector = "11111".parse().unwrap();
        assert!(commutes_with_z(&zero, &p("XYZXY")).unwrap());
        assert!(!commutes_with_z(&ones, &p("IIXII")).unwrap());
        assert!(commutes_with_z(&"110".parse().unwrap(), &from_parts("000", "110")).unwrap());
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_by_weight(5, 0).collect::<Vec<_>>(), vec![PauliVector::identity(5)]);
        assert_eq!(enumerate_by_weight(5, 1).count(), 15);
        assert_eq!(enumerate_by_weight(5, 2).count(), 90);
        assert_eq!(enumerate_by_weight(3, 4).count(), 0);
        let first: Vec<String> = enumerate_by_weight(3, 2).take(4).map(|p| p.to_string()).collect();
        assert_eq!(first, vec!["ZZI", "ZXI", "ZYI", "XZI"]);
        let w1: Vec<String> = enumerate_by_weight(2, 1).map(|p| p.to_string()).collect();
        assert_eq!(w1, vec!["ZI", "XI", "YI", "IZ", "IX", "IY"]);
    }

    #[test]
    fn enumeration_is_exhaustive_for_small_n() {
        for n in 0..=6 {
            let mut all = HashSet::new();
            for w in 0..=n {
                let items: Vec<_> = enumerate_by_weight(n, w).collect();
                assert_eq!(items.len() as u128, count_by_weight(n, w));
                for it in items {
                    assert_eq!(it.symplectic_weight(), w);
                    assert!(all.insert(it), "duplicate");
                }
            }
            assert_eq!(all.len(), 1 << (2 * n));
        }
    }

    fn arb_pauli(n: usize) -> impl Strategy<Value = PauliVector> {
        (proptest::collection::vec(any::<bool>(), n), proptest::collection::vec(any::<bool>(), n))
            .prop_map(|(z, x)| PauliVector::new(BitVector::from_bools(&z), BitVector::from_bools(&x)).unwrap())
    }

    proptest! {
        #[test]
        fn weight_is_subadditive(a in arb_pauli(9), b in arb_pauli(9)) {
            let c = a.xor(&b).unwrap();
            prop_assert!(c.symplectic_weight() <= a.symplectic_weight() + b.symplectic_weight());
        }

        #[test]
        fn symplectic_form_is_bilinear_and_alternating(a in arb_pauli(7), b in arb_pauli(7), c in arb_pauli(7)) {
            prop_assert!(!a.sym_inner(&a).unwrap());
            let lhs = a.xor(&b).unwrap().sym_inner(&c).unwrap();
            prop_assert_eq!(lhs, a.sym_inner(&c).unwrap() ^ b.sym_inner(&c).unwrap());
            prop_assert_eq!(a.sym_inner(&b).unwrap(), b.sym_inner(&a).unwrap());
        }

        #[test]
        fn text_round_trip(a in arb_pauli(11)) {
            prop_assert_eq!(a.to_string().parse::<PauliVector>().unwrap(), a);
        }
    }
}
