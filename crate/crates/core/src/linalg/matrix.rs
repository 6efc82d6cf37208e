//! Matrices and semilinear maps over a [`FieldCtx`], and their action on
//! vectors as permutations.
//!
//! Vectors are rows and maps act on the right: `v -> v^σ M`. A vector
//! `(v_0, .., v_{a-1})` is the point `Σ v_i q^i`.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::field::FieldCtx;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    pub n: usize,
    /// Row-major entries.
    pub data: Vec<u32>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Self { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: usize, s: u32) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = s;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("matrix must be square and nonempty".into()));
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, f: &FieldCtx, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Entrywise Frobenius `x -> x^(p^power)`.
    pub fn frobenius(&self, f: &FieldCtx, power: u32) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&x| f.frobenius(x, power)).collect(),
        }
    }

    pub fn scale(&self, f: &FieldCtx, s: u32) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&x| f.mul(s, x)).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, f: &FieldCtx, v: &[u32]) -> Vec<u32> {
        let n = self.n;
        let mut out = vec![0; n];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(vi, self.get(i, j)));
            }
        }
        out
    }

    pub fn rank(&self, f: &FieldCtx) -> usize {
        let n = self.n;
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            for j in 0..n {
                let (a, b) = (m.get(rank, j), m.get(piv, j));
                m.set(rank, j, b);
                m.set(piv, j, a);
            }
            let inv = f.inv(m.get(rank, col)).unwrap();
            for r in 0..n {
                if r != rank && m.get(r, col) != 0 {
                    let factor = f.mul(m.get(r, col), inv);
                    for j in 0..n {
                        let v = f.sub(m.get(r, j), f.mul(factor, m.get(rank, j)));
                        m.set(r, j, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self, f: &FieldCtx) -> bool {
        self.rank(f) == self.n
    }

    pub fn inverse(&self, f: &FieldCtx) -> Result<Self> {
        let n = self.n;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| m.get(r, col) != 0).ok_or(Error::Singular)?;
            for j in 0..n {
                let (a, b) = (m.get(col, j), m.get(piv, j));
                m.set(col, j, b);
                m.set(piv, j, a);
                let (a, b) = (inv.get(col, j), inv.get(piv, j));
                inv.set(col, j, b);
                inv.set(piv, j, a);
            }
            let s = f.inv(m.get(col, col))?;
            for j in 0..n {
                m.set(col, j, f.mul(s, m.get(col, j)));
                inv.set(col, j, f.mul(s, inv.get(col, j)));
            }
            for r in 0..n {
                let factor = m.get(r, col);
                if r != col && factor != 0 {
                    for j in 0..n {
                        let v = f.sub(m.get(r, j), f.mul(factor, m.get(col, j)));
                        m.set(r, j, v);
                        let v = f.sub(inv.get(r, j), f.mul(factor, inv.get(col, j)));
                        inv.set(r, j, v);
                    }
                }
            }
        }
        Ok(inv)
    }

    /// Kronecker product; row index `i·n_b + j` for the pair `(i, j)`.
    pub fn kronecker(&self, f: &FieldCtx, b: &Self) -> Self {
        let (na, nb) = (self.n, b.n);
        let n = na * nb;
        let mut out = Self::zero(n);
        for i1 in 0..na {
            for j1 in 0..na {
                let a = self.get(i1, j1);
                for i2 in 0..nb {
                    for j2 in 0..nb {
                        out.set(i1 * nb + i2, j1 * nb + j2, f.mul(a, b.get(i2, j2)));
                    }
                }
            }
        }
        out
    }

    /// Scales so the first nonzero entry is 1; returns the factor removed.
    pub fn normalize_scalar(&self, f: &FieldCtx) -> (Self, u32) {
        let lead = *self.data.iter().find(|&&x| x != 0).expect("nonzero matrix");
        (self.scale(f, f.inv(lead).unwrap()), lead)
    }
}

/// `v -> v^σ M` where `σ` is Frobenius to the power `frob`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemilinearMap {
    pub matrix: Matrix,
    pub frob: u32,
}

impl SemilinearMap {
    pub fn linear(matrix: Matrix) -> Self {
        Self { matrix, frob: 0 }
    }

    pub fn apply(&self, f: &FieldCtx, v: &[u32]) -> Vec<u32> {
        let tw: Vec<u32> = v.iter().map(|&x| f.frobenius(x, self.frob)).collect();
        self.matrix.apply_row(f, &tw)
    }

    /// `self` followed by `other`: `(σ1 + σ2, M1^σ2 M2)`.
    pub fn then(&self, f: &FieldCtx, other: &Self) -> Self {
        Self {
            matrix: self.matrix.frobenius(f, other.frob).mul(f, &other.matrix),
            frob: (self.frob + other.frob) % f.e(),
        }
    }
}

pub fn vector_count(f: &FieldCtx, a: usize) -> Result<usize> {
    (f.q() as usize)
        .checked_pow(a as u32)
        .filter(|&n| n <= 1 << 22)
        .ok_or_else(|| Error::InvalidParameter(format!("F_{}^{a} is too large", f.q())))
}

pub fn vector_of(f: &FieldCtx, a: usize, mut index: usize) -> Vec<u32> {
    let q = f.q() as usize;
    (0..a)
        .map(|_| {
            let d = (index % q) as u32;
            index /= q;
            d
        })
        .collect()
}

pub fn index_of(f: &FieldCtx, v: &[u32]) -> usize {
    let q = f.q() as usize;
    v.iter().rev().fold(0, |acc, &x| acc * q + x as usize)
}

/// The permutation of `F_q^a` induced by a semilinear map.
pub fn semilinear_to_permutation(f: &FieldCtx, g: &SemilinearMap) -> Result<Permutation> {
    let a = g.matrix.n;
    if !g.matrix.is_invertible(f) {
        return Err(Error::Singular);
    }
    let n = vector_count(f, a)?;
    let images = (0..n).map(|i| index_of(f, &g.apply(f, &vector_of(f, a, i)))).collect();
    Ok(Permutation::from_images_unchecked(images))
}

pub fn matrix_to_permutation(f: &FieldCtx, m: &Matrix) -> Result<Permutation> {
    semilinear_to_permutation(f, &SemilinearMap::linear(m.clone()))
}

/// Recovers `(M, σ)` with `p(v) = v^σ M` for all `v`, trying Frobenius
/// powers in increasing order.
pub fn permutation_is_semilinear(f: &FieldCtx, a: usize, p: &Permutation) -> Option<SemilinearMap> {
    let n = vector_count(f, a).ok()?;
    if p.degree() != n || p.apply(0) != 0 {
        return None;
    }
    // basis vectors are fixed by every σ, so their images are the rows
    let rows: Vec<Vec<u32>> = (0..a)
        .map(|i| vector_of(f, a, p.apply((f.q() as usize).pow(i as u32))))
        .collect();
    let matrix = Matrix::from_rows(rows).ok()?;
    if !matrix.is_invertible(f) {
        return None;
    }
    (0..f.e())
        .map(|frob| SemilinearMap {
            matrix: matrix.clone(),
            frob,
        })
        .find(|g| (0..n).all(|i| index_of(f, &g.apply(f, &vector_of(f, a, i))) == p.apply(i)))
}

/// Generators of `GL_a(q)`: a primitive diagonal entry, an elementary
/// transvection and the cyclic coordinate shift. Identity matrices are
/// left out.
pub fn gl_generators(f: &FieldCtx, a: usize) -> Vec<Matrix> {
    let mut gens = Vec::new();
    let mut d = Matrix::identity(a);
    d.set(0, 0, f.primitive_element());
    gens.push(d);
    if a >= 2 {
        let mut t = Matrix::identity(a);
        t.set(0, 1, 1);
        gens.push(t);
        let mut c = Matrix::zero(a);
        for i in 0..a {
            c.set(i, (i + 1) % a, 1);
        }
        gens.push(c);
    }
    gens.retain(|m| *m != Matrix::identity(a));
    gens
}

/// `GL_a(q)` as a permutation group on `q^a` vectors.
pub fn gl_group(f: &FieldCtx, a: usize) -> Result<Group> {
    matrix_group(f, a, &gl_generators(f, a))
}

pub fn matrix_group(f: &FieldCtx, a: usize, gens: &[Matrix]) -> Result<Group> {
    let perms = gens.iter().map(|m| matrix_to_permutation(f, m)).collect::<Result<Vec<_>>>()?;
    Group::new(vector_count(f, a)?, perms)
}

/// The map `v -> v^p` coordinatewise.
pub fn frobenius_map(a: usize) -> SemilinearMap {
    SemilinearMap {
        matrix: Matrix::identity(a),
        frob: 1,
    }
}

/// A matrix file entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixEntry {
    pub q: u32,
    pub map: SemilinearMap,
}

/// Parses blocks of `a q [frob]` headers each followed by `a` rows of
/// field elements; `#` starts a comment.
pub fn parse_matrices(text: &str) -> Result<Vec<MatrixEntry>> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty());
    let nums = |l: &str| -> Result<Vec<u32>> {
        l.split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad number {t:?}"))))
            .collect()
    };
    let mut out = Vec::new();
    while let Some(header) = lines.next() {
        let h = nums(header)?;
        let (a, q, frob) = match h[..] {
            [a, q] => (a as usize, q, 0),
            [a, q, s] => (a as usize, q, s),
            _ => return Err(Error::Parse(format!("bad matrix header {header:?}"))),
        };
        let f = FieldCtx::of_order(q)?;
        let mut rows = Vec::with_capacity(a);
        for _ in 0..a {
            let row = nums(lines.next().ok_or_else(|| Error::Parse("truncated matrix".into()))?)?;
            if row.len() != a || row.iter().any(|&x| x >= q) {
                return Err(Error::Parse(format!("bad matrix row {row:?}")));
            }
            rows.push(row);
        }
        let matrix = Matrix::from_rows(rows)?;
        if !matrix.is_invertible(&f) {
            return Err(Error::Singular);
        }
        out.push(MatrixEntry {
            q,
            map: SemilinearMap {
                matrix,
                frob: frob % f.e(),
            },
        });
    }
    Ok(out)
}

pub fn write_matrices(entries: &[MatrixEntry]) -> String {
    let mut s = String::new();
    for e in entries {
        let a = e.map.matrix.n;
        if e.map.frob == 0 {
            s.push_str(&format!("{a} {}\n", e.q));
        } else {
            s.push_str(&format!("{a} {} {}\n", e.q, e.map.frob));
        }
        for i in 0..a {
            let row: Vec<String> = e.map.matrix.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn m(rows: &[&[u32]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Every invertible matrix, by brute force.
    fn all_invertible(f: &FieldCtx, a: usize) -> Vec<Matrix> {
        let q = f.q() as usize;
        (0..q.pow((a * a) as u32))
            .map(|i| Matrix {
                n: a,
                data: vector_of(f, a * a, i),
            })
            .filter(|m| m.is_invertible(f))
            .collect()
    }

    #[test]
    fn small_actions() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let p = matrix_to_permutation(&f3, &m(&[&[2]])).unwrap();
        assert_eq!(p.images(), &[0, 2, 1]);
        let f2 = FieldCtx::new(2, 1).unwrap();
        assert!(matrix_to_permutation(&f2, &Matrix::identity(3)).unwrap().is_identity());
        // companion matrix of x^2 + x + 1
        let p = matrix_to_permutation(&f2, &m(&[&[0, 1], &[1, 1]])).unwrap();
        assert_eq!(p.apply(0), 0);
        assert_eq!(p.cycles().len(), 1);
        assert_eq!(p.order(), 3);
        assert_eq!(matrix_to_permutation(&f2, &m(&[&[1, 1], &[1, 1]])).unwrap_err(), Error::Singular);
    }

    #[test]
    fn homomorphism_on_small_gl() {
        for (p, e, a) in [(2, 1, 2), (3, 1, 2)] {
            let f = FieldCtx::new(p, e).unwrap();
            let all = all_invertible(&f, a);
            for x in &all {
                for y in &all {
                    let lhs = matrix_to_permutation(&f, &x.mul(&f, y)).unwrap();
                    let rhs = matrix_to_permutation(&f, x).unwrap().then(&matrix_to_permutation(&f, y).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn semilinear_composition_matches_permutations() {
        let f = FieldCtx::new(2, 2).unwrap();
        let g1 = SemilinearMap { matrix: m(&[&[2, 1], &[0, 3]]), frob: 1 };
        let g2 = SemilinearMap { matrix: m(&[&[1, 0], &[3, 1]]), frob: 1 };
        let lhs = semilinear_to_permutation(&f, &g1.then(&f, &g2)).unwrap();
        let rhs = semilinear_to_permutation(&f, &g1).unwrap().then(&semilinear_to_permutation(&f, &g2).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn semilinear_recognition() {
        let f4 = FieldCtx::new(2, 2).unwrap();
        let frob = semilinear_to_permutation(&f4, &frobenius_map(1)).unwrap();
        assert_eq!(permutation_is_semilinear(&f4, 1, &frob), Some(frobenius_map(1)));
        let g = SemilinearMap { matrix: m(&[&[2, 1], &[0, 3]]), frob: 1 };
        let p = semilinear_to_permutation(&f4, &g).unwrap();
        assert_eq!(permutation_is_semilinear(&f4, 2, &p), Some(g));
        let f2 = FieldCtx::new(2, 1).unwrap();
        // swap e0 and e1 only: breaks additivity at e0 + e1
        let t = Permutation::from_cycles(8, &[vec![1, 2]]).unwrap();
        assert_eq!(permutation_is_semilinear(&f2, 3, &t), None);
        let f3 = FieldCtx::new(3, 1).unwrap();
        for x in all_invertible(&f3, 2) {
            let p = matrix_to_permutation(&f3, &x).unwrap();
            assert_eq!(permutation_is_semilinear(&f3, 2, &p), Some(SemilinearMap::linear(x)));
        }
    }

    #[test]
    fn gl_generators_generate() {
        for (q, a) in [(2, 2), (3, 2), (2, 3), (4, 2), (5, 1), (2, 4), (3, 3)] {
            let f = FieldCtx::of_order(q).unwrap();
            let g = gl_group(&f, a).unwrap();
            assert_eq!(g.order(), crate::linalg::classical::gl_order(a as u32, q as u64), "GL_{a}({q})");
        }
        let f = FieldCtx::new(2, 1).unwrap();
        assert_eq!(all_invertible(&f, 3).len(), 168);
        assert_eq!(BigUint::from(all_invertible(&FieldCtx::new(3, 1).unwrap(), 2).len()), gl_group(&FieldCtx::new(3, 1).unwrap(), 2).unwrap().order());
    }

    #[test]
    fn inverse_and_kronecker() {
        let f = FieldCtx::new(3, 1).unwrap();
        for x in all_invertible(&f, 2) {
            assert_eq!(x.mul(&f, &x.inverse(&f).unwrap()), Matrix::identity(2));
            let k = x.kronecker(&f, &x);
            assert!(k.is_invertible(&f));
        }
        assert_eq!(m(&[&[1, 2], &[2, 1]]).inverse(&f).unwrap_err(), Error::Singular);
        let (n, s) = m(&[&[0, 2], &[1, 1]]).normalize_scalar(&f);
        assert_eq!((n, s), (m(&[&[0, 1], &[2, 2]]), 2));
    }

    #[test]
    fn matrix_file_round_trip() {
        let text = "# two maps\n2 4 1\n2 1\n0 3\n1 5\n3\n";
        let entries = parse_matrices(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].map.frob, 1);
        assert_eq!(parse_matrices(&write_matrices(&entries)).unwrap(), entries);
        assert!(parse_matrices("2 2\n1 1\n1 1\n").is_err());
        assert!(parse_matrices("2 2\n1 0\n").is_err());
        assert!(parse_matrices("1 6\n1\n").is_err());
    }
}
