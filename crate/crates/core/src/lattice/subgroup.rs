use std::fmt;

use serde::{Deserialize, Serialize};

use super::degree::GDegree;
use super::matrix::IntMatrix;
use super::smith::{smith_normal_form, SmithForm};

/// Canonical row Hermite normal form of the lattice spanned by `rows`.
///
/// Nonzero rows only, echelon form, positive pivots, entries above each pivot
/// reduced into `[0, pivot)`. Two generating sets span the same subgroup iff
/// their Hermite forms coincide.
pub fn hermite_rows(rank: usize, rows: &[GDegree]) -> Vec<GDegree> {
    let mut m: Vec<Vec<i64>> =
        rows.iter().inspect(|r| assert_eq!(r.rank(), rank, "rank mismatch")).map(|r| r.0.clone()).collect();
    let mut pivot_row = 0;
    for col in 0..rank {
        if pivot_row == m.len() {
            break;
        }
        // Euclid on the column until one nonzero entry is left at or below pivot_row.
        loop {
            let nonzero: Vec<usize> = (pivot_row..m.len()).filter(|&i| m[i][col] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero.iter().min_by_key(|&&i| m[i][col].unsigned_abs()).unwrap();
            m.swap(pivot_row, best);
            if nonzero.len() == 1 {
                break;
            }
            for i in pivot_row + 1..m.len() {
                if m[i][col] != 0 {
                    let q = m[i][col].div_euclid(m[pivot_row][col]);
                    let pivot = m[pivot_row].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot) {
                        *x -= q * y;
                    }
                }
            }
        }
        if m[pivot_row][col] == 0 {
            continue;
        }
        if m[pivot_row][col] < 0 {
            for x in m[pivot_row].iter_mut() {
                *x = -*x;
            }
        }
        let p = m[pivot_row][col];
        for i in 0..pivot_row {
            let q = m[i][col].div_euclid(p);
            if q != 0 {
                let pivot = m[pivot_row].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= q * y;
                }
            }
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m.into_iter().map(GDegree).collect()
}

/// A subgroup `H ≤ Z^k` together with its Smith decomposition.
///
/// Generators are stored in Hermite form, so equal subgroups built from
/// different generating sets carry identical Smith data.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient_rank: usize,
    generators: Vec<GDegree>,
    snf: SmithForm,
    invariant_factors: Vec<i64>,
}

impl Subgroup {
    pub fn new(ambient_rank: usize, generators: &[GDegree]) -> Self {
        let generators = hermite_rows(ambient_rank, generators);
        let columns: Vec<Vec<i64>> = generators.iter().map(|g| g.0.clone()).collect();
        let a = IntMatrix::from_columns(ambient_rank, &columns);
        let snf = smith_normal_form(&a);
        let invariant_factors = snf.invariant_factors();
        Subgroup { ambient_rank, generators, snf, invariant_factors }
    }

    pub fn trivial(ambient_rank: usize) -> Self {
        Self::new(ambient_rank, &[])
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Hermite-form generators (a basis of `H`).
    pub fn generators(&self) -> &[GDegree] {
        &self.generators
    }

    pub fn smith(&self) -> &SmithForm {
        &self.snf
    }

    /// `d₁ | … | d_r`, including factors equal to 1.
    pub fn invariant_factors(&self) -> &[i64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// The basis vector `f_i` of `Z^k` (column `i` of `U⁻¹`).
    pub fn basis_vector(&self, i: usize) -> GDegree {
        GDegree(self.snf.u_inv.column(i))
    }

    /// Coordinates of `n` in the basis `f₁, …, f_k`.
    pub fn coordinates(&self, n: &GDegree) -> Vec<i64> {
        assert_eq!(n.rank(), self.ambient_rank, "rank mismatch");
        self.snf.u.mul_vec(&n.0)
    }

    pub fn contains(&self, g: &GDegree) -> bool {
        let c = self.coordinates(g);
        let r = self.rank();
        c[..r].iter().zip(&self.invariant_factors).all(|(x, d)| x % d == 0) && c[r..].iter().all(|&x| x == 0)
    }

    /// Containment of every generator of `other`.
    pub fn includes(&self, other: &Subgroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Same subgroup, tested by mutual generator membership.
    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.ambient_rank == other.ambient_rank && self.includes(other) && other.includes(self)
    }

    /// Index `[Z^k : H]` when finite.
    pub fn index(&self) -> Option<i64> {
        (self.rank() == self.ambient_rank).then(|| self.invariant_factors.iter().product())
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// The smallest subgroup of `Z^k` containing every difference in `diffs`.
pub fn group_generated<'a>(ambient_rank: usize, diffs: impl IntoIterator<Item = &'a GDegree>) -> Subgroup {
    let gens: Vec<GDegree> = diffs.into_iter().cloned().collect();
    Subgroup::new(ambient_rank, &gens)
}

/// An element of `Z_{d₁} × … × Z_{d_r} × Z^{k−r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QElem {
    pub torsion: Vec<i64>,
    pub free: Vec<i64>,
}

impl QElem {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().chain(&self.free).all(|&x| x == 0)
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|&x| x != 0)
    }
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({};{})", join(&self.torsion), join(&self.free))
    }
}

/// `Z^k / H`, identified with `Z_{d₁} × … × Z_{d_r} × Z^{k−r}` through the
/// Smith basis of `H`.
#[derive(Clone, Debug)]
pub struct QuotientMonoid {
    subgroup: Subgroup,
}

impl QuotientMonoid {
    pub fn new(subgroup: Subgroup) -> Self {
        QuotientMonoid { subgroup }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn ambient_rank(&self) -> usize {
        self.subgroup.ambient_rank
    }

    pub fn torsion(&self) -> &[i64] {
        self.subgroup.invariant_factors()
    }

    pub fn free_rank(&self) -> usize {
        self.subgroup.ambient_rank - self.subgroup.rank()
    }

    pub fn zero(&self) -> QElem {
        QElem { torsion: vec![0; self.torsion().len()], free: vec![0; self.free_rank()] }
    }

    /// Checks that `x` has the right shape and reduced torsion coordinates.
    pub fn is_element(&self, x: &QElem) -> bool {
        x.torsion.len() == self.torsion().len()
            && x.free.len() == self.free_rank()
            && x.torsion.iter().zip(self.torsion()).all(|(t, d)| (0..*d).contains(t))
    }

    pub fn add(&self, a: &QElem, b: &QElem) -> QElem {
        QElem {
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(self.torsion())
                .map(|((x, y), d)| (x + y).rem_euclid(*d))
                .collect(),
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn neg(&self, a: &QElem) -> QElem {
        QElem {
            torsion: a.torsion.iter().zip(self.torsion()).map(|(x, d)| (-x).rem_euclid(*d)).collect(),
            free: a.free.iter().map(|x| -x).collect(),
        }
    }

    /// The quotient map `q: Z^k → Z^k/H`.
    pub fn q(&self, n: &GDegree) -> QElem {
        let c = self.subgroup.coordinates(n);
        let r = self.subgroup.rank();
        QElem {
            torsion: c[..r].iter().zip(self.torsion()).map(|(x, d)| x.rem_euclid(*d)).collect(),
            free: c[r..].to_vec(),
        }
    }

    /// The section onto the torsion-free part: `Σ_{i>r} nᵢ fᵢ`.
    pub fn section_j(&self, x: &QElem) -> GDegree {
        let k = self.ambient_rank();
        let r = self.subgroup.rank();
        let mut out = vec![0i64; k];
        for (offset, &n) in x.free.iter().enumerate() {
            let f = self.subgroup.basis_vector(r + offset);
            for (o, fi) in out.iter_mut().zip(&f.0) {
                *o += n * fi;
            }
        }
        GDegree(out)
    }

    /// First `r` coordinates of `n` in the Smith basis, i.e. `n − ȷ(q(n))`
    /// written in `f`-coordinates.
    pub fn torsion_exponent(&self, n: &GDegree) -> Vec<i64> {
        let c = self.subgroup.coordinates(n);
        c[..self.subgroup.rank()].to_vec()
    }

    /// The isomorphism type, e.g. `Z_2 x Z^1`, leaving out trivial factors.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.torsion().iter().filter(|&&d| d > 1).map(|d| format!("Z_{d}")).collect();
        if self.free_rank() > 0 {
            parts.push(format!("Z^{}", self.free_rank()));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" x ")
        }
    }
}

/// The quotient `Z^k/H` with all `r` torsion factors kept, so indices line up
/// with the Smith basis.
pub fn quotient_structure(h: &Subgroup) -> QuotientMonoid {
    QuotientMonoid::new(h.clone())
}
