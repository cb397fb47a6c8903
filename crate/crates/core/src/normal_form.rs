//! Smith normal form over Euclidean domains and column Hermite normal form over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::laurent::Laurent;
use crate::matrix::{Matrix, MatrixLaurent, MatrixZ};
use crate::Rational;
use crate::ring::Euclidean;

/// `left * input * right = diag(diag[0], diag[1], ...)` padded with zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SmithForm<T> {
    pub left: Matrix<T>,
    pub diag: Vec<T>,
    pub right: Matrix<T>,
}

impl<T: Euclidean> SmithForm<T> {
    /// The diagonal matrix with the shape of the input.
    pub fn diagonal_matrix(&self) -> Matrix<T> {
        let (r, c) = (self.left.nrows(), self.right.nrows());
        Matrix::from_fn(r, c, |i, j| {
            if i == j && i < self.diag.len() {
                self.diag[i].clone()
            } else {
                T::zero()
            }
        })
    }

    /// Nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<T> {
        self.diag.iter().filter(|d| !d.is_zero()).cloned().collect()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivots are chosen as the nonzero entry of least Euclidean size in the
/// remaining block, ties broken in row-major order. Diagonal entries are
/// normalized by `Euclidean::normalizing_unit`.
pub fn smith_normal_form<T: Euclidean>(m: &Matrix<T>) -> SmithForm<T> {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    let mut left = Matrix::<T>::identity(rows);
    let mut right = Matrix::<T>::identity(cols);
    let steps = rows.min(cols);
    let mut diag = Vec::with_capacity(steps);

    for k in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => a[(i, j)].euclid_size() < a[(bi, bj)].euclid_size(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // remaining block is zero
                while diag.len() < steps {
                    diag.push(T::zero());
                }
                return SmithForm { left, diag, right };
            };
            a.swap_rows(k, pi);
            left.swap_rows(k, pi);
            a.swap_cols(k, pj);
            right.swap_cols(k, pj);

            let pivot = a[(k, k)].clone();
            let mut dirty = false;
            for i in k + 1..rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let (q, r) = a[(i, k)].div_rem_euclid(&pivot);
                let nq = -q;
                a.add_row_multiple(i, k, &nq);
                left.add_row_multiple(i, k, &nq);
                dirty |= !r.is_zero();
            }
            for j in k + 1..cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let (q, r) = a[(k, j)].div_rem_euclid(&pivot);
                let nq = -q;
                a.add_col_multiple(j, k, &nq);
                right.add_col_multiple(j, k, &nq);
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // pivot must divide the remaining block
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| a[(i, j)].div_exact(&pivot).is_none());
            if let Some((i, _)) = offender {
                let one = T::one();
                a.add_row_multiple(k, i, &one);
                left.add_row_multiple(k, i, &one);
                continue;
            }
            let (u, _) = pivot.normalizing_unit();
            a.scale_row(k, &u);
            left.scale_row(k, &u);
            diag.push(a[(k, k)].clone());
            break;
        }
    }
    SmithForm { left, diag, right }
}

/// Nonzero invariant factors over `Q[t, t^-1]`, without transforms.
///
/// Same elimination as [`smith_normal_form`], but every row or column that
/// changes is rescaled by a unit `c t^k` to coprime integer coefficients and
/// lowest exponent zero, which keeps coefficient growth in check. Factors are
/// associate-normalized.
pub fn laurent_invariant_factors(m: &MatrixLaurent) -> Vec<Laurent> {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    for i in 0..rows {
        normalize_line(&mut a, i, true);
    }
    let mut out = Vec::new();
    for k in 0..rows.min(cols) {
        loop {
            let key = |p: &Laurent| (p.span().unwrap_or(0), coeff_bits(p));
            let best = (k..rows)
                .flat_map(|i| (k..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[(i, j)].is_zero())
                .min_by_key(|&(i, j)| key(&a[(i, j)]));
            let Some((pi, pj)) = best else {
                return out;
            };
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            let pivot = a[(k, k)].clone();
            let mut dirty = false;
            for i in k + 1..rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let (q, r) = a[(i, k)].div_rem_euclid(&pivot);
                a.add_row_multiple(i, k, &-q);
                normalize_line(&mut a, i, true);
                dirty |= !r.is_zero();
            }
            for j in k + 1..cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let (q, r) = a[(k, j)].div_rem_euclid(&pivot);
                a.add_col_multiple(j, k, &-q);
                normalize_line(&mut a, j, false);
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            let offender = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| !a[(i, j)].divisible_by(&pivot)));
            if let Some(i) = offender {
                a.add_row_multiple(k, i, &Laurent::one());
                normalize_line(&mut a, k, true);
                continue;
            }
            out.push(pivot.associate_normalized());
            break;
        }
    }
    out
}

fn coeff_bits(p: &Laurent) -> u64 {
    p.terms().map(|(_, c)| c.numer().bits() + c.denom().bits()).sum()
}

/// Rescales row (or column) `idx` by the unit making it primitive integral
/// with lowest exponent zero.
fn normalize_line(a: &mut MatrixLaurent, idx: usize, row: bool) {
    let len = if row { a.ncols() } else { a.nrows() };
    let at = |a: &MatrixLaurent, k: usize| if row { a[(idx, k)].clone() } else { a[(k, idx)].clone() };
    let mut low: Option<i64> = None;
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for k in 0..len {
        let p = at(a, k);
        if p.is_zero() {
            continue;
        }
        let l = p.low_degree().finite().unwrap();
        low = Some(low.map_or(l, |m| m.min(l)));
        let c = p.content();
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    let Some(low) = low else { return };
    let unit = Laurent::monomial(Rational::new(den, num), -low);
    if unit.is_one() {
        return;
    }
    for k in 0..len {
        let p = &at(a, k) * &unit;
        if row {
            a[(idx, k)] = p;
        } else {
            a[(k, idx)] = p;
        }
    }
}

/// Column Hermite normal form: `input * transform = hnf` with `transform`
/// unimodular and `hnf` in lower column-echelon form. Pivots are positive,
/// entries left of a pivot lie in `[0, pivot)`, and zero columns come last.
pub fn hermite_normal_form(m: &MatrixZ) -> (MatrixZ, MatrixZ) {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut h = m.clone();
    let mut u = MatrixZ::identity(cols);
    let mut c = 0; // next pivot column
    let mut pivots = Vec::new();
    for r in 0..rows {
        if c == cols {
            break;
        }
        // Euclid across the row on columns c.., collecting the gcd in column c
        loop {
            let nonzero: Vec<usize> = (c..cols).filter(|&j| !h[(r, j)].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let jmin = *nonzero.iter().min_by_key(|&&j| h[(r, j)].magnitude().clone()).unwrap();
            h.swap_cols(c, jmin);
            u.swap_cols(c, jmin);
            let mut done = true;
            for j in c + 1..cols {
                if h[(r, j)].is_zero() {
                    continue;
                }
                let q = -h[(r, j)].div_floor(&h[(r, c)]);
                h.add_col_multiple(j, c, &q);
                u.add_col_multiple(j, c, &q);
                done &= h[(r, j)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            let m1 = -BigInt::one();
            h.scale_col(c, &m1);
            u.scale_col(c, &m1);
        }
        pivots.push((r, c));
        c += 1;
    }
    // reduce entries to the left of each pivot
    for &(r, pc) in &pivots {
        let p = h[(r, pc)].clone();
        for j in 0..pc {
            let q = -h[(r, j)].div_floor(&p);
            if !q.is_zero() {
                h.add_col_multiple(j, pc, &q);
                u.add_col_multiple(j, pc, &q);
            }
        }
    }
    (u, h)
}

/// Gcd of a list of integers (nonnegative) with Bezout coefficients.
pub fn gcd_with_bezout(xs: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs = vec![BigInt::zero(); xs.len()];
    for (i, x) in xs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let e = g.extended_gcd(x);
        // e.gcd = e.x * g + e.y * x
        for c in coeffs.iter_mut().take(i) {
            *c *= &e.x;
        }
        coeffs[i] = e.y.clone();
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        coeffs.iter_mut().for_each(|c| *c = -c.clone());
    }
    (g, coeffs)
}

/// Brute-force determinantal divisors: gcd of all `k x k` minors for
/// `k = 1..=min(rows, cols)`. Exponential; intended for small matrices.
pub fn determinantal_divisors(m: &MatrixZ) -> Vec<BigInt> {
    let n = m.nrows().min(m.ncols());
    (1..=n)
        .map(|k| {
            let mut g = BigInt::zero();
            for rs in combinations(m.nrows(), k) {
                for cs in combinations(m.ncols(), k) {
                    g = g.gcd(&m.select(&rs, &cs).determinant().unwrap());
                }
            }
            g
        })
        .collect()
}

/// All increasing `k`-subsets of `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}
