use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{GroupError, Result};

/// A permutation of the points `0..n`, stored as its image array.
///
/// Externally points are 1-based (cycle notation, descriptor files);
/// [`Permutation::from_images`] and [`Permutation::images_one_based`] do the
/// translation. Products are read left to right: `a.compose(&b)` applies `a`
/// first, then `b`.
///
/// The derived `Ord` is lexicographic on image arrays. It is the canonical
/// element order used by every sorted set in this crate; the identity is its
/// least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, validating bijectivity.
    pub fn from_images0(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(GroupError::InvalidPermutation("degree must be at least 1".into()));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(GroupError::InvalidPermutation(format!(
                    "image {} out of range 1..={n}",
                    x + 1
                )));
            }
            if seen[x] {
                return Err(GroupError::InvalidPermutation(format!(
                    "point {} appears twice",
                    x + 1
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation from 1-based images, e.g. `[2, 1, 3]` is `(1 2)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let mut zero = Vec::with_capacity(images.len());
        for &x in images {
            if x == 0 || x > images.len() {
                return Err(GroupError::InvalidPermutation(format!(
                    "image {x} out of range 1..={}",
                    images.len()
                )));
            }
            zero.push((x - 1) as u32);
        }
        Self::from_images0(zero)
    }

    /// Builds a permutation of the given degree from 1-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        if degree == 0 {
            return Err(GroupError::InvalidPermutation("degree must be at least 1".into()));
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {pt} out of range 1..={degree}"
                    )));
                }
                if touched[pt - 1] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {pt} appears in more than one cycle position"
                    )));
                }
                touched[pt - 1] = true;
                let next = cycle[(i + 1) % cycle.len()];
                if next == 0 || next > degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {next} out of range 1..={degree}"
                    )));
                }
                images[pt - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses cycle notation such as `(1 2)(3 4 5)` or `()`. Commas between
    /// points are accepted.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(GroupError::InvalidPermutation(format!(
                    "expected '(' in cycle notation, found {rest:?}"
                )));
            };
            let Some(close) = body.find(')') else {
                return Err(GroupError::InvalidPermutation("unclosed cycle".into()));
            };
            let mut cycle = Vec::new();
            for tok in body[..close].split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let pt = tok.parse::<usize>().map_err(|_| {
                    GroupError::InvalidPermutation(format!("bad point {tok:?} in cycle notation"))
                })?;
                cycle.push(pt);
            }
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(degree, &refs)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `pt`.
    #[inline]
    pub fn image(&self, pt: usize) -> usize {
        self.images[pt] as usize
    }

    pub fn images0(&self) -> &[u32] {
        &self.images
    }

    pub fn images_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Smallest 0-based point not fixed, if any.
    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|&(i, &x)| i != x as usize).map(|(i, _)| i)
    }

    /// Product `self · other`: apply `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// Unchecked product; panics on degree mismatch.
    #[inline]
    pub fn mul(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `by⁻¹ · self · by`, written `self^by`.
    pub fn conjugate(&self, by: &Permutation) -> Permutation {
        // self^by maps by(x) to by(self(x)).
        assert_eq!(self.degree(), by.degree(), "degree mismatch in conjugate");
        let mut out = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            out[by.images[x] as usize] = by.images[y as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// `[self, other] = self⁻¹ · other⁻¹ · self · other`.
    pub fn commutator(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.comm(other))
    }

    /// Unchecked commutator; panics on degree mismatch.
    #[inline]
    pub fn comm(&self, other: &Permutation) -> Permutation {
        // [a,b] = a⁻¹ · a^b
        self.inverse().mul(&self.conjugate(other))
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least
    /// point, ordered by that point. Points are 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Element order: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.image(x);
            }
            ord = ord.lcm(&len);
        }
        ord
    }
}

/// Free-function form of [`Permutation::compose`].
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    a.compose(b)
}

pub fn commutator(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    a.commutator(b)
}

pub fn element_order(a: &Permutation) -> u64 {
    a.order()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, pt) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
