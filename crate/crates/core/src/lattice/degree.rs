use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An element of the degree group `Z^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GDegree(pub Vec<i64>);

/// An element of the degree monoid `N^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Degree(pub Vec<u32>);

impl GDegree {
    pub fn zero(rank: usize) -> Self {
        GDegree(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn meet(&self, other: &GDegree) -> GDegree {
        GDegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn join(&self, other: &GDegree) -> GDegree {
        GDegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// `n₊ = n ∨ 0`
    pub fn positive_part(&self) -> Degree {
        Degree(self.0.iter().map(|&c| c.max(0) as u32).collect())
    }

    /// `n₋ = −(n ∧ 0)`
    pub fn negative_part(&self) -> Degree {
        Degree(self.0.iter().map(|&c| (-c).max(0) as u32).collect())
    }

    /// Returns the degree if every coordinate is nonnegative.
    pub fn to_degree(&self) -> Option<Degree> {
        self.0.iter().map(|&c| u32::try_from(c).ok()).collect::<Option<Vec<_>>>().map(Degree)
    }
}

impl Add for &GDegree {
    type Output = GDegree;
    fn add(self, rhs: &GDegree) -> GDegree {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        GDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GDegree {
    type Output = GDegree;
    fn sub(self, rhs: &GDegree) -> GDegree {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        GDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &GDegree {
    type Output = GDegree;
    fn neg(self) -> GDegree {
        GDegree(self.0.iter().map(|a| -a).collect())
    }
}

impl Degree {
    pub fn zero(rank: usize) -> Self {
        Degree(vec![0; rank])
    }

    /// The unit vector `e_color`.
    pub fn unit(rank: usize, color: usize) -> Self {
        let mut d = vec![0; rank];
        d[color] = 1;
        Degree(d)
    }

    pub fn uniform(rank: usize, value: u32) -> Self {
        Degree(vec![value; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Total length `|n| = n₁ + … + n_k`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn meet(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn join(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Degree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self − other`, if it stays in `N^k`.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Degree)
    }

    pub fn to_gdegree(&self) -> GDegree {
        GDegree(self.0.iter().map(|&c| i64::from(c)).collect())
    }

    /// Color word of the normal form: `n₁` copies of color 0, then `n₂` of color 1, …
    pub fn color_word(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(c, &n)| std::iter::repeat_n(c, n as usize)).collect()
    }

    /// All degrees `n` with `0 ≤ n ≤ self`, in lexicographic order.
    pub fn box_below(&self) -> Vec<Degree> {
        let mut out = vec![Degree(Vec::with_capacity(self.rank()))];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |c| {
                        let mut d = prefix.0.clone();
                        d.push(c);
                        Degree(d)
                    })
                })
                .collect();
        }
        out
    }
}

impl Add for &Degree {
    type Output = Degree;
    fn add(self, rhs: &Degree) -> Degree {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, coords: &[T]) -> fmt::Result {
    write!(f, "(")?;
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

impl fmt::Display for GDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}
