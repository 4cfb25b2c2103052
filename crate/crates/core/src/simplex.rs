//! Oriented simplices over the ground set `[n] = {1, ..., n}`.
//!
//! A simplex is stored as its strictly increasing vertex tuple; the
//! orientation is the one induced by that order. The empty simplex has
//! dimension -1 and is a genuine face of every nonempty simplex (reduced
//! homology convention).

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    /// Builds a simplex from a strictly increasing tuple of positive vertices.
    pub fn new(vertices: Vec<u32>) -> Result<Self> {
        if vertices.first() == Some(&0) {
            return Err(Error::InvalidSimplex {
                vertices,
                reason: "vertices are numbered from 1".into(),
            });
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSimplex {
                vertices,
                reason: "vertex tuple must be strictly increasing".into(),
            });
        }
        Ok(Simplex(vertices))
    }

    /// Builds a simplex from any collection of vertices, sorting and deduplicating.
    pub fn from_set<I: IntoIterator<Item = u32>>(vertices: I) -> Self {
        let mut v: Vec<u32> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        debug_assert!(v.first() != Some(&0));
        Simplex(v)
    }

    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn max_vertex(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// True when every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.by_ref().any(|w| w == v))
    }

    /// The codimension-one faces together with their incidence signs,
    /// `(-1)^(i-1)` for the face that drops the i-th smallest vertex.
    pub fn boundary_faces(&self) -> impl Iterator<Item = (i8, Simplex)> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut face = self.0.clone();
            face.remove(i);
            (if i % 2 == 0 { 1 } else { -1 }, Simplex(face))
        })
    }

    /// Adds vertex `v` (not already present), returning the new simplex and
    /// `sign(self ∪ v, self)`.
    pub fn with_vertex(&self, v: u32) -> (Simplex, i8) {
        debug_assert!(!self.contains(v) && v > 0);
        let pos = self.0.partition_point(|&w| w < v);
        let mut out = self.0.clone();
        out.insert(pos, v);
        (Simplex(out), if pos % 2 == 0 { 1 } else { -1 })
    }

    /// Complement within `[n]`.
    pub fn complement(&self, n: u32) -> Simplex {
        Simplex((1..=n).filter(|v| !self.contains(*v)).collect())
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex(
            self.0
                .iter()
                .copied()
                .filter(|v| other.contains(*v))
                .collect(),
        )
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        Simplex::from_set(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Every face (including the empty face and the simplex itself).
    pub fn all_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let k = self.0.len();
        (0u64..(1u64 << k)).map(move |mask| {
            Simplex(
                (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }
}

/// `sign(sigma, tau)`: zero unless `tau` is a facet of `sigma`, otherwise
/// `(-1)^(i-1)` where `tau` omits the i-th smallest vertex of `sigma`.
pub fn incidence_sign(sigma: &Simplex, tau: &Simplex) -> i8 {
    if tau.len() + 1 != sigma.len() {
        return 0;
    }
    let s = sigma.vertices();
    let t = tau.vertices();
    let i = s.iter().zip(t).position(|(a, b)| a != b).unwrap_or(t.len());
    if s[i + 1..] != t[i..] {
        return 0;
    }
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All `k`-subsets of `[n]` in lexicographic order.
pub fn subsets(n: u32, k: usize) -> Vec<Simplex> {
    let mut out = Vec::new();
    if k as u32 > n {
        return out;
    }
    let mut cur: Vec<u32> = (1..=k as u32).collect();
    loop {
        out.push(Simplex(cur.clone()));
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (k - 1 - i) as u32 {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand used throughout the tests: `simplex![1, 2, 3]`.
#[macro_export]
macro_rules! simplex {
    ($($v:expr),* $(,)?) => {
        $crate::Simplex::new(vec![$($v),*]).expect("valid simplex literal")
    };
}

impl Serialize for Simplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Simplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(deserializer)?;
        Simplex::new(v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incidence_examples() {
        assert_eq!(incidence_sign(&simplex![1, 2, 3], &simplex![2, 3]), 1);
        assert_eq!(incidence_sign(&simplex![1, 2, 3], &simplex![1, 3]), -1);
        assert_eq!(incidence_sign(&simplex![1, 2, 3], &simplex![1, 2]), 1);
        assert_eq!(incidence_sign(&simplex![1, 2, 3], &simplex![1, 2, 4]), 0);
        assert_eq!(incidence_sign(&simplex![1, 2, 3], &simplex![1, 4]), 0);
        assert_eq!(incidence_sign(&simplex![4], &Simplex::empty()), 1);
    }

    #[test]
    fn rejects_unsorted() {
        assert!(Simplex::new(vec![2, 1]).is_err());
        assert!(Simplex::new(vec![1, 1]).is_err());
        assert!(Simplex::new(vec![0, 1]).is_err());
        assert!(Simplex::new(vec![]).unwrap().is_empty());
    }

    #[test]
    fn with_vertex_sign_matches_incidence() {
        let tau = simplex![2, 5];
        for v in [1, 3, 4, 6] {
            let (sigma, s) = tau.with_vertex(v);
            assert_eq!(s, incidence_sign(&sigma, &tau));
        }
    }

    #[test]
    fn subsets_and_binomials() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(5, 3).len(), 10);
        assert_eq!(subsets(3, 0), vec![Simplex::empty()]);
        assert_eq!(subsets(3, 3), vec![simplex![1, 2, 3]]);
        assert!(subsets(2, 3).is_empty());
        let s = subsets(5, 2);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn faces_and_complement() {
        let s = simplex![1, 3, 4];
        assert_eq!(s.all_faces().count(), 8);
        assert_eq!(s.complement(5), simplex![2, 5]);
        assert!(simplex![1, 4].is_face_of(&s));
        assert!(!simplex![2].is_face_of(&s));
        assert!(Simplex::empty().is_face_of(&s));
    }
}
