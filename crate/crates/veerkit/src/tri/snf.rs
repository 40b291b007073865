//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::ops::{AddAssign, Mul};

/// Dense row-major integer matrix.
pub type Matrix = Vec<Vec<i64>>;

/// Matrix with unbounded entries, used for the transforms.
pub type BigMatrix = Vec<Vec<BigInt>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: BigMatrix,
    pub s: Matrix,
    pub v: BigMatrix,
}

impl Snf {
    /// Nonzero diagonal entries of S.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let k = self.s.len().min(self.s.first().map_or(0, |r| r.len()));
        (0..k).map(|i| self.s[i][i]).filter(|&d| d != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn to_big(a: &Matrix) -> BigMatrix {
    a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn identity(n: usize) -> BigMatrix {
    (0..n).map(|i| (0..n).map(|j| BigInt::from(i64::from(i == j))).collect()).collect()
}

/// Unimodular 2x2 step `[[x, y], [-b/g, a/g]]` sending `(a, b)` to `(g, 0)`.
/// When `a | b` this is a plain subtraction.
fn bezout(a: &BigInt, b: &BigInt) -> [BigInt; 4] {
    if (b % a).is_zero() {
        return [BigInt::one(), BigInt::zero(), -(b / a), BigInt::one()];
    }
    let e = a.extended_gcd(b);
    let (g, x, y) = if e.gcd.is_negative() { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
    [x, y, -(b / &g), a / &g]
}

fn mix_rows(mat: &mut BigMatrix, i: usize, j: usize, c: &[BigInt; 4]) {
    for k in 0..mat[i].len() {
        let (p, q) = (mat[i][k].clone(), mat[j][k].clone());
        mat[i][k] = &c[0] * &p + &c[1] * &q;
        mat[j][k] = &c[2] * p + &c[3] * q;
    }
}

fn mix_cols(mat: &mut BigMatrix, i: usize, j: usize, c: &[BigInt; 4]) {
    for row in mat.iter_mut() {
        let (p, q) = (row[i].clone(), row[j].clone());
        row[i] = &c[0] * &p + &c[1] * &q;
        row[j] = &c[2] * p + &c[3] * q;
    }
}

fn col_swap(mat: &mut BigMatrix, i: usize, j: usize) {
    for row in mat.iter_mut() {
        row.swap(i, j);
    }
}

/// Returns (U, S, V) with U·A·V = S, U and V unimodular, S diagonal with
/// nonnegative entries each dividing the next. The transforms are exact big
/// integers since their entries can grow quickly.
///
/// Panics if an invariant factor does not fit in an `i64`.
pub fn smith_normal_form(a: &Matrix) -> Snf {
    let (s, u, v) = reduce(a, true);
    Snf { u: u.unwrap(), s, v: v.unwrap() }
}

/// Invariant factors only, without building the transforms.
pub fn invariant_factors(a: &Matrix) -> Vec<i64> {
    let s = reduce(a, false).0;
    (0..s.len().min(s.first().map_or(0, |r| r.len()))).map(|i| s[i][i]).filter(|&d| d != 0).collect()
}

type Reduced = (Matrix, Option<BigMatrix>, Option<BigMatrix>);

fn reduce(a: &Matrix, track: bool) -> Reduced {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut s = to_big(a);
    let mut u = track.then(|| identity(m));
    let mut v = track.then(|| identity(n));
    let unit_add = [BigInt::one(), BigInt::one(), BigInt::zero(), BigInt::one()];

    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !s[i][j].is_zero() && best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap(t, pi);
        col_swap(&mut s, t, pj);
        if let (Some(u), Some(v)) = (&mut u, &mut v) {
            u.swap(t, pi);
            col_swap(v, t, pj);
        }

        loop {
            for i in t + 1..m {
                if !s[i][t].is_zero() {
                    let c = bezout(&s[t][t], &s[i][t]);
                    mix_rows(&mut s, t, i, &c);
                    if let Some(u) = &mut u {
                        mix_rows(u, t, i, &c);
                    }
                }
            }
            let mut dirty = false;
            for j in t + 1..n {
                if !s[t][j].is_zero() {
                    let c = bezout(&s[t][t], &s[t][j]);
                    mix_cols(&mut s, t, j, &c);
                    if let Some(v) = &mut v {
                        mix_cols(v, t, j, &c);
                    }
                    dirty |= !c[1].is_zero();
                }
            }
            if dirty && (t + 1..m).any(|i| !s[i][t].is_zero()) {
                continue;
            }
            // enforce divisibility into the trailing block
            let p = s[t][t].clone();
            match (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&s[i][j] % &p).is_zero())) {
                Some(i) => {
                    mix_rows(&mut s, t, i, &unit_add);
                    if let Some(u) = &mut u {
                        mix_rows(u, t, i, &unit_add);
                    }
                }
                None => break,
            }
        }
        if s[t][t].is_negative() {
            for x in s[t].iter_mut() {
                *x = -&*x;
            }
            for x in u.iter_mut().flat_map(|u| u[t].iter_mut()) {
                *x = -&*x;
            }
        }
    }
    let s = s
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().expect("invariant factor exceeds i64")).collect())
        .collect();
    (s, u, v)
}

/// Matrix product.
pub fn mat_mul<T>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>>
where
    T: Clone + Zero + AddAssign,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let n = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![T::zero(); n]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for (x, brow) in row.iter().zip(b) {
            if x.is_zero() {
                continue;
            }
            for (o, y) in out[i].iter_mut().zip(brow) {
                *o += x * y;
            }
        }
    }
    out
}
