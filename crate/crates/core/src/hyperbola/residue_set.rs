use serde::{Serialize, Serializer};

/// A subset of `Z/nZ` stored as a dense bit array, with its size cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    modulus: u64,
    words: Vec<u64>,
    len: u64,
}

impl ResidueSet {
    pub fn empty(modulus: u64) -> Self {
        let words = vec![0; modulus.div_ceil(64) as usize];
        ResidueSet {
            modulus,
            words,
            len: 0,
        }
    }

    pub fn full(modulus: u64) -> Self {
        let mut set = ResidueSet::empty(modulus);
        set.words.iter_mut().for_each(|w| *w = !0);
        set.clear_tail();
        set.len = modulus;
        set
    }

    /// Collects residues, reducing each modulo `modulus`.
    pub fn from_values(modulus: u64, values: impl IntoIterator<Item = u64>) -> Self {
        let mut set = ResidueSet::empty(modulus);
        for v in values {
            set.insert(v % modulus);
        }
        set
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_full(&self) -> bool {
        self.len == self.modulus
    }

    /// Inserts `v`; returns whether it was absent.
    ///
    /// # Panics
    /// Panics if `v >= modulus`.
    #[inline]
    pub fn insert(&mut self, v: u64) -> bool {
        assert!(
            v < self.modulus,
            "{v} out of range for modulus {}",
            self.modulus
        );
        let (w, b) = ((v / 64) as usize, v % 64);
        let fresh = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        self.len += fresh as u64;
        fresh
    }

    pub fn contains(&self, v: u64) -> bool {
        v < self.modulus && self.words[(v / 64) as usize] >> (v % 64) & 1 == 1
    }

    /// In-place union with a set of the same modulus.
    pub fn union_with(&mut self, other: &ResidueSet) {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let mut len = 0;
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
            len += w.count_ones() as u64;
        }
        self.len = len;
    }

    /// Residues not in the set.
    pub fn complement(&self) -> ResidueSet {
        let mut out = self.clone();
        out.words.iter_mut().for_each(|w| *w = !*w);
        out.clear_tail();
        out.len = self.modulus - self.len;
        out
    }

    /// `{-v mod n : v in self}`.
    pub fn negated(&self) -> ResidueSet {
        ResidueSet::from_values(
            self.modulus,
            self.iter().map(|v| (self.modulus - v) % self.modulus),
        )
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(i as u64 * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    fn clear_tail(&mut self) {
        let rem = self.modulus % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl std::fmt::Debug for ResidueSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ResidueSet(mod {}) ", self.modulus)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ResidueSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn basic_ops() {
        let mut s = ResidueSet::empty(130);
        assert!(s.insert(0));
        assert!(s.insert(129));
        assert!(!s.insert(129));
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_vec(), vec![0, 129]);
        assert_eq!(s.negated().to_vec(), vec![0, 1]);
        let c = s.complement();
        assert_eq!(c.len(), 128);
        assert!(!c.contains(0) && c.contains(64));
        assert!(ResidueSet::full(130).is_full());
        assert_eq!(ResidueSet::full(130).complement(), ResidueSet::empty(130));
    }

    proptest! {
        #[test]
        fn agrees_with_btreeset(n in 1u64..400, xs in proptest::collection::vec(0u64..1000, 0..200), ys in proptest::collection::vec(0u64..1000, 0..200)) {
            let a = ResidueSet::from_values(n, xs.iter().copied());
            let b = ResidueSet::from_values(n, ys.iter().copied());
            let ra: BTreeSet<u64> = xs.iter().map(|x| x % n).collect();
            let rb: BTreeSet<u64> = ys.iter().map(|y| y % n).collect();
            prop_assert_eq!(a.len() as usize, ra.len());
            prop_assert_eq!(a.to_vec(), ra.iter().copied().collect::<Vec<_>>());
            let mut u = a.clone();
            u.union_with(&b);
            prop_assert_eq!(u.to_vec(), ra.union(&rb).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.complement().len() + a.len(), n);
        }
    }
}
