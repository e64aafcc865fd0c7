use serde::{Deserialize, Serialize};
use std::fmt;

/// An element of the signed symmetric group on r letters: a permutation of
/// {1..r} together with a sign for each image, read as a permutation sigma of
/// {-r..r} with sigma(-i) = -sigma(i).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPermutation {
    /// images[i] = j means strand i+1 maps to strand j+1 (0-based storage).
    images: Vec<usize>,
    /// signs[i] is the sign attached to the image of strand i+1.
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(r: usize) -> Self {
        SignedPermutation {
            images: (0..r).collect(),
            signs: vec![1; r],
        }
    }

    /// Builds from 1-based signed images, e.g. `[-2, -3, -1]` is the negative
    /// 3-cycle sending 1 to 2 with a sign flip, etc.
    pub fn from_signed_images(images: &[i64]) -> Option<Self> {
        let r = images.len();
        let mut img = vec![usize::MAX; r];
        let mut signs = vec![1i8; r];
        let mut seen = vec![false; r];
        for (i, &v) in images.iter().enumerate() {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > r || seen[a - 1] {
                return None;
            }
            seen[a - 1] = true;
            img[i] = a - 1;
            signs[i] = if v < 0 { -1 } else { 1 };
        }
        Some(SignedPermutation { images: img, signs })
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of strand i.
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Sign attached to the image of strand i.
    pub fn sign(&self, i: usize) -> i8 {
        self.signs[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j) && self.signs.iter().all(|&s| s == 1)
    }

    /// Group law: (self * other)(i) = self(other(i)), signs multiply along the way.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.size(), other.size());
        let r = self.size();
        let mut images = vec![0; r];
        let mut signs = vec![1i8; r];
        for i in 0..r {
            let mid = other.images[i];
            images[i] = self.images[mid];
            signs[i] = other.signs[i] * self.signs[mid];
        }
        SignedPermutation { images, signs }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let r = self.size();
        let mut images = vec![0; r];
        let mut signs = vec![1i8; r];
        for i in 0..r {
            images[self.images[i]] = i;
            signs[self.images[i]] = self.signs[i];
        }
        SignedPermutation { images, signs }
    }

    pub fn pow(&self, k: u64) -> SignedPermutation {
        let mut acc = SignedPermutation::identity(self.size());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        let mut acc = self.clone();
        let mut n = 1;
        while !acc.is_identity() {
            acc = self.compose(&acc);
            n += 1;
        }
        n
    }

    /// 1-based signed image list, inverse of `from_signed_images`.
    pub fn signed_images(&self) -> Vec<i64> {
        self.images
            .iter()
            .zip(&self.signs)
            .map(|(&j, &s)| (j as i64 + 1) * s as i64)
            .collect()
    }

    /// Enumerates all 2^r * r! elements of the signed symmetric group.
    pub fn all(r: usize) -> Vec<SignedPermutation> {
        let mut perms = vec![vec![]];
        for _ in 0..r {
            let mut next = Vec::new();
            for p in perms {
                for v in 0..r {
                    if !p.contains(&v) {
                        let mut q = p.clone();
                        q.push(v);
                        next.push(q);
                    }
                }
            }
            perms = next;
        }
        let mut out = Vec::new();
        for images in perms {
            for mask in 0..(1u32 << r) {
                let signs = (0..r)
                    .map(|i| if mask & (1 << i) != 0 { -1 } else { 1 })
                    .collect();
                out.push(SignedPermutation {
                    images: images.clone(),
                    signs,
                });
            }
        }
        out
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.signed_images())
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.signed_images().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", imgs.join(","))
    }
}
