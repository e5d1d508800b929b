use std::ops::Index;

use crate::error::{invalid, Result};

/// A sequence of binary antipodal symbols, each `+1` or `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolSeq(Vec<i8>);

impl SymbolSeq {
    pub fn new(symbols: Vec<i8>) -> Result<Self> {
        if let Some(pos) = symbols.iter().position(|&s| s != 1 && s != -1) {
            return Err(invalid(format!(
                "symbol {} at position {pos} is not +-1",
                symbols[pos]
            )));
        }
        Ok(Self(symbols))
    }

    pub(crate) fn from_vec_unchecked(symbols: Vec<i8>) -> Self {
        debug_assert!(symbols.iter().all(|&s| s == 1 || s == -1));
        Self(symbols)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, i8> {
        self.0.iter()
    }

    /// Global sign flip.
    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|s| -s).collect())
    }

    /// Number of positions where `self` and `other` differ.
    pub fn hamming(&self, other: &Self) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
            + self.0.len().abs_diff(other.0.len())
    }

    pub fn into_vec(self) -> Vec<i8> {
        self.0
    }
}

impl Index<usize> for SymbolSeq {
    type Output = i8;

    fn index(&self, i: usize) -> &i8 {
        &self.0[i]
    }
}

impl std::fmt::Display for SymbolSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for s in &self.0 {
            f.write_str(if *s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// `b_0 = b0`, `b_i = b_{i-1} a_i`.
pub fn differential_encode(a: &SymbolSeq, b0: i8) -> Result<SymbolSeq> {
    if b0 != 1 && b0 != -1 {
        return Err(invalid("reference symbol must be +-1"));
    }
    let mut b = Vec::with_capacity(a.len() + 1);
    b.push(b0);
    for &ai in a.iter() {
        let prev = *b.last().unwrap();
        b.push(prev * ai);
    }
    Ok(SymbolSeq(b))
}

/// `a_i = b_i b_{i-1}`; blind to a global sign flip of `b`.
pub fn differential_decode(b: &SymbolSeq) -> Result<SymbolSeq> {
    if b.is_empty() {
        return Err(invalid("cannot decode an empty transmit sequence"));
    }
    Ok(SymbolSeq(b.0.windows(2).map(|w| w[0] * w[1]).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(v: &[i8]) -> SymbolSeq {
        SymbolSeq::new(v.to_vec()).unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(
            differential_encode(&seq(&[1, -1, 1]), 1).unwrap(),
            seq(&[1, 1, -1, -1])
        );
        assert_eq!(
            differential_encode(&seq(&[1, 1, 1, 1]), -1).unwrap(),
            seq(&[-1; 5])
        );
        assert_eq!(
            differential_decode(&seq(&[1, 1, -1, -1])).unwrap(),
            seq(&[1, -1, 1])
        );
    }

    #[test]
    fn rejects_non_binary() {
        assert!(SymbolSeq::new(vec![1, 0, -1]).is_err());
        assert!(differential_encode(&seq(&[1]), 0).is_err());
        assert!(differential_decode(&seq(&[])).is_err());
    }

    proptest! {
        #[test]
        fn roundtrip_and_sign_invariance(bits in prop::collection::vec(prop::bool::ANY, 0..=256)) {
            let a = SymbolSeq::new(bits.iter().map(|&x| if x { -1 } else { 1 }).collect()).unwrap();
            let b = differential_encode(&a, 1).unwrap();
            prop_assert_eq!(b[0], 1);
            prop_assert_eq!(differential_decode(&b).unwrap(), a.clone());
            prop_assert_eq!(differential_decode(&b.negated()).unwrap(), a);
        }
    }
}
