//! Exact linear algebra over the rationals.
//!
//! Rank computations use fraction-free row reduction on integer vectors:
//! rows are scaled to integers and kept primitive (content 1), so no rational
//! gcds are needed inside the elimination loop.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::FieldElement;
use crate::rational::Rational;

/// An incrementally built row-echelon basis of a subspace of `Q^width`.
#[derive(Debug, Clone)]
pub struct Echelon {
    width: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let g = v[*pivot].gcd(&row[*pivot]);
            let scale_v = &row[*pivot] / &g;
            let scale_row = &v[*pivot] / &g;
            for (x, r) in v.iter_mut().zip(row) {
                *x = &*x * &scale_v - r * &scale_row;
            }
            make_primitive(&mut v);
        }
        v
    }

    /// Adds `v` to the basis if it is independent of the current rows.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        let v = self.reduce(v);
        match v.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                self.rows.push((pivot, v));
                true
            }
            None => false,
        }
    }

    pub fn insert_rational(&mut self, v: &[Rational]) -> bool {
        self.insert(clear_denominators(v))
    }

    /// Whether `v` lies outside the current span (without inserting it).
    pub fn is_independent(&self, v: Vec<BigInt>) -> bool {
        self.reduce(v).iter().any(|x| !x.is_zero())
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g > BigInt::one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Scales a rational vector by the lcm of its denominators.
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    v.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}

/// Rank of a rational matrix given as rows.
pub fn rank_rational(rows: &[Vec<Rational>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut ech = Echelon::new(first.len());
    for row in rows {
        ech.insert_rational(row);
    }
    ech.rank()
}

/// Characteristic polynomial det(x·I − A), coefficients lowest degree first.
///
/// Reduces `A` to upper Hessenberg form by similarity transforms and then
/// expands the determinant with the usual three-term recurrence.
pub fn charpoly(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut h: Vec<Vec<Rational>> = a.to_vec();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !h[i][j].is_zero()) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        for i in j + 2..n {
            if h[i][j].is_zero() {
                continue;
            }
            let f = &h[i][j] / &h[j + 1][j];
            // row_i -= f * row_{j+1}
            let pivot_row = h[j + 1].clone();
            for (x, p) in h[i].iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
            // col_{j+1} += f * col_i keeps the transform a similarity
            for row in h.iter_mut() {
                let add = &f * &row[i];
                row[j + 1] += add;
            }
        }
    }
    // p[k] = charpoly of the leading k×k block
    let mut p: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    for k in 0..n {
        // (x - h[k][k]) * p[k]
        let mut next = poly_shift(&p[k]);
        poly_axpy(&mut next, &(-h[k][k].clone()), &p[k]);
        let mut prod = Rational::one();
        for i in (0..k).rev() {
            prod *= &h[i + 1][i];
            if prod.is_zero() {
                break;
            }
            let c = -(&prod * &h[i][k]);
            poly_axpy(&mut next, &c, &p[i]);
        }
        p.push(next);
    }
    let mut out = p.pop().unwrap();
    poly_trim(&mut out);
    out
}

fn poly_shift(p: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    out.extend_from_slice(p);
    out
}

/// dst += c * src
fn poly_axpy(dst: &mut Vec<Rational>, c: &Rational, src: &[Rational]) {
    if dst.len() < src.len() {
        dst.resize(src.len(), Rational::zero());
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d += c * s;
    }
}

pub fn poly_trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn poly_derivative(p: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
        .collect();
    poly_trim(&mut out);
    out
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let f = r.last().unwrap() * &lead_inv;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &f * c;
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

/// Monic gcd of two rational polynomials (empty vector for gcd(0, 0)).
pub fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in x.iter_mut() {
            *c /= &lead;
        }
    }
    x
}

/// Rank over K of a matrix of field elements: each entry is replaced by its
/// m coordinates, and the K-rank of the resulting column set is returned.
pub fn rank_over_k(rows: &[Vec<FieldElement>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let cols = first.len();
    if cols == 0 {
        return 0;
    }
    let m = first[0].tower().degree();
    let mut ech = Echelon::new(rows.len() * m);
    for j in 0..cols {
        let column: Vec<Rational> = rows.iter().flat_map(|row| row[j].coords()).collect();
        ech.insert_rational(&column);
        if ech.rank() == ech.width() {
            break;
        }
    }
    ech.rank()
}

/// Rank over L of a matrix of field elements, by Gaussian elimination in L.
pub fn rank_over_l(rows: &[Vec<FieldElement>]) -> usize {
    let mut a: Vec<Vec<FieldElement>> = rows.to_vec();
    let nrows = a.len();
    let Some(ncols) = a.first().map(|r| r.len()) else { return 0 };
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = a[rank][col].inv().expect("pivot is nonzero");
        let pivot_row: Vec<FieldElement> = a[rank].iter().map(|x| x * &inv).collect();
        for i in rank + 1..nrows {
            if a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for (x, p) in a[i].iter_mut().zip(&pivot_row).skip(col) {
                *x = &*x - &(&f * p);
            }
        }
        a[rank] = pivot_row;
        rank += 1;
    }
    rank
}
