//! Exact linear algebra and polynomial root isolation over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn zeros(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Q> {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

/// Parses `"p/q"` or `"p"` with optional sign; no decimals.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let ok = |t: &str| {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok(num) || !ok(den) || den.starts_with('-') {
        return None;
    }
    let n: BigInt = num.trim_start_matches('+').parse().ok()?;
    let d: BigInt = den.trim_start_matches('+').parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// `"p/q"`, or `"p"` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `m · v` for a matrix stored as rows.
pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Q::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .enumerate()
                        .filter(|(k, x)| !x.is_zero() && !b[*k][j].is_zero())
                        .fold(Q::zero(), |acc, (k, x)| acc + x * &b[k][j])
                })
                .collect()
        })
        .collect()
}

/// A subspace held in reduced row echelon form.
///
/// Rows are kept sorted by pivot column; each pivot is 1 and is the only
/// nonzero entry in its column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    width: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn span<'a, I>(width: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a Vec<Q>>,
    {
        let mut e = Echelon::new(width);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Normal form of `v` modulo the subspace (pivot coordinates cleared).
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }
}

/// Basis of `{x : m x = 0}`, one vector per free column, in column order.
pub fn nullspace(m: &[Vec<Q>], width: usize) -> Vec<Vec<Q>> {
    let e = Echelon::span(width, m);
    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !e.pivots.contains(c)) {
        let mut x = zeros(width);
        x[free] = Q::one();
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            x[p] = -row[free].clone();
        }
        basis.push(x);
    }
    basis
}

pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit_vector(n, i));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

// Polynomials: coefficient vectors, lowest degree first, no trailing zeros.

fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn derivative(p: &[Q]) -> Vec<Q> {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
}

fn rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut a = trim(a.to_vec());
    let lead = b.last().expect("division by zero polynomial");
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let f = a.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            a[i + shift] -= &f * c;
        }
        a.pop();
        a = trim(a);
    }
    a
}

fn eval(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn sign_changes(seq: &[Vec<Q>], x: &Q) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// The roots of `p` if they are all rational and simple, in increasing order.
///
/// Substitutes `x = y / a` to get a monic integer polynomial, isolates its
/// real roots on integer intervals with a Sturm sequence and keeps only exact
/// integer roots. Returns `None` when some root is irrational, non-real or
/// repeated.
pub fn rational_roots(p: &[Q]) -> Option<Vec<Q>> {
    let p = trim(p.to_vec());
    let n = p.len().checked_sub(1)?;
    if n == 0 {
        return Some(Vec::new());
    }
    let lead = p[n].clone();
    let monic: Vec<Q> = p.iter().map(|c| c / &lead).collect();
    let den = monic.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let a = Q::from_integer(den);
    // y = a x:  y^n + sum a^(n-i) c_i y^i
    let mut power = Q::one();
    let mut ints = vec![Q::zero(); n + 1];
    for i in (0..=n).rev() {
        ints[i] = &monic[i] * &power;
        power *= &a;
    }
    debug_assert!(ints.iter().all(Q::is_integer));

    let mut seq = vec![ints.clone(), derivative(&ints)];
    loop {
        let r = rem(&seq[seq.len() - 2], &seq[seq.len() - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    if seq.last().unwrap().len() > 1 {
        return None;
    }
    let bound = ints.iter().map(|c| c.abs()).fold(Q::zero(), |m, c| if c > m { c } else { m }) + Q::one();
    let lo = -bound.clone();
    if sign_changes(&seq, &lo) - sign_changes(&seq, &bound) != n {
        return None;
    }
    let mut roots = Vec::new();
    isolate(&seq, &ints, lo.to_integer(), bound.to_integer(), &mut roots)?;
    Some(roots.into_iter().map(|y| y / &a).collect())
}

fn isolate(seq: &[Vec<Q>], p: &[Q], lo: BigInt, hi: BigInt, out: &mut Vec<Q>) -> Option<()> {
    let (ql, qh) = (Q::from_integer(lo.clone()), Q::from_integer(hi.clone()));
    let count = sign_changes(seq, &ql) - sign_changes(seq, &qh);
    if count == 0 {
        return Some(());
    }
    if &hi - &lo == BigInt::one() {
        // The single root in (lo, hi] must be hi itself.
        if count == 1 && eval(p, &qh).is_zero() {
            out.push(qh);
            return Some(());
        }
        return None;
    }
    let mid = (&lo + &hi).div_floor(&BigInt::from(2));
    isolate(seq, p, lo, mid.clone(), out)?;
    isolate(seq, p, mid, hi, out)
}
