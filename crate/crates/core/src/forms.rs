//! Integral antisymmetric forms: Bezout partners and symplectic bases.
//!
//! Vectors are integer coordinate vectors; the form is given by its Gram
//! matrix `G`, `[x, y] = x^t G y`. A symplectic basis `(w_1, ..., w_2g)`
//! satisfies `[w_{2i-1}, w_{2i}] = 1` with all other pairings between
//! distinct blocks zero, i.e. its Gram matrix is `-J`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{MatrixQ, MatrixZ};
use crate::normal_form::{gcd_with_bezout, hermite_normal_form};
use crate::Rational;

pub type IntVec = Vec<BigInt>;

pub fn pairing(gram: &MatrixZ, x: &[BigInt], y: &[BigInt]) -> BigInt {
    let gy = gram.mul_vec(y);
    x.iter().zip(&gy).map(|(a, b)| a * b).sum()
}

fn axpy(y: &mut [BigInt], a: &BigInt, x: &[BigInt]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Is every entry's gcd equal to 1?
pub fn is_primitive(v: &[BigInt]) -> bool {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one()
}

/// Primitive integer representative of the rational line through `v`:
/// denominators cleared, content removed, first nonzero entry positive.
/// Returns `None` for the zero vector.
pub fn primitive_vector(v: &[Rational]) -> Option<IntVec> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: IntVec = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    let sign = if ints.iter().find(|x| !x.is_zero()).unwrap().is_negative() { -g } else { g };
    Some(ints.iter().map(|x| x / &sign).collect())
}

/// Basis of the lattice spanned by the given vectors (column HNF).
pub fn lattice_basis(dim: usize, vectors: &[IntVec]) -> IntVec2 {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = MatrixZ::from_cols(dim, vectors).expect("consistent dimensions");
    let (_, h) = hermite_normal_form(&m);
    (0..h.ncols()).map(|j| h.col(j)).filter(|c| c.iter().any(|x| !x.is_zero())).collect()
}

pub type IntVec2 = Vec<IntVec>;

/// Symplectic basis of the sublattice spanned by `basis` (a basis of a
/// lattice on which `gram` restricts to a unimodular form).
///
/// When `first` is given it must be a primitive element of that lattice and
/// becomes the first vector of the result.
pub fn symplectic_basis_of(gram: &MatrixZ, basis: &[IntVec], first: Option<IntVec>) -> Result<IntVec2> {
    let dim = gram.nrows();
    let mut current: IntVec2 = basis.to_vec();
    let mut first = first;
    let mut out = Vec::with_capacity(current.len());
    while !current.is_empty() {
        if current.len() % 2 == 1 {
            return Err(Error::Lattice("odd rank: the form is degenerate".into()));
        }
        let v1 = first.take().unwrap_or_else(|| current[0].clone());
        let s: IntVec = current.iter().map(|x| pairing(gram, &v1, x)).collect();
        let (g, u) = gcd_with_bezout(&s);
        if !g.is_one() {
            return Err(Error::Lattice(format!(
                "no pairing partner: pairings of a basis vector have gcd {g} (form not unimodular or vector not primitive)"
            )));
        }
        let mut v2 = vec![BigInt::zero(); dim];
        for (ui, x) in u.iter().zip(&current) {
            axpy(&mut v2, ui, x);
        }
        // project onto the orthogonal of span(v1, v2)
        let projected: IntVec2 = current
            .iter()
            .map(|x| {
                let mut y = x.clone();
                axpy(&mut y, &-pairing(gram, x, &v2), &v1);
                axpy(&mut y, &-pairing(gram, &v1, x), &v2);
                y
            })
            .collect();
        let next = lattice_basis(dim, &projected);
        if next.len() + 2 != current.len() {
            return Err(Error::Lattice("orthogonal complement has the wrong rank".into()));
        }
        out.push(v1);
        out.push(v2);
        current = next;
    }
    Ok(out)
}

/// `-J` of size `n`.
pub fn minus_j_int(n: usize) -> MatrixZ {
    MatrixZ::from_fn(n, n, |i, j| {
        if i % 2 == 0 && j == i + 1 {
            BigInt::one()
        } else if i % 2 == 1 && j + 1 == i {
            -BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

/// Symplectic transvection `x -> x + c ω(v, x) v` for `v = e_a + e_b`
/// (`b == a` gives `v = e_a`), with `ω(x, y) = x^t J y`.
#[derive(Clone, Copy)]
struct Transvection {
    a: usize,
    b: usize,
    c: i64,
}

/// `ω(e_i, x)`: `-x_{q}` for a `p` coordinate, `x_{p}` for a `q` coordinate.
fn omega_unit(i: usize, x: &[BigInt]) -> BigInt {
    if i.is_multiple_of(2) {
        -&x[i + 1]
    } else {
        x[i - 1].clone()
    }
}

impl Transvection {
    fn omega(&self, x: &[BigInt]) -> BigInt {
        let w = omega_unit(self.a, x);
        if self.a == self.b {
            w
        } else {
            w + omega_unit(self.b, x)
        }
    }

    fn apply(&self, c: &BigInt, x: &mut [BigInt]) {
        let f = c * self.omega(x);
        x[self.a] += &f;
        if self.a != self.b {
            x[self.b] += &f;
        }
    }
}

/// Applies `τ_{v, c}` to `x` and records `τ_{v, -c}` on the right of `w`.
fn step(t: Transvection, q: &BigInt, x: &mut [BigInt], w: &mut MatrixZ) {
    if q.is_zero() {
        return;
    }
    let c = q * BigInt::from(t.c);
    t.apply(&c, x);
    // W τ^-1: rows of W transform as row vectors, W τ^-1 = W - c (W v) ω(v, .)
    let n = x.len();
    let neg = -c;
    let wv: Vec<BigInt> = (0..n)
        .map(|r| if t.a == t.b { w[(r, t.a)].clone() } else { &w[(r, t.a)] + &w[(r, t.b)] })
        .collect();
    // ω(v, e_j) for each column j
    let omega_v: Vec<BigInt> = (0..n)
        .map(|j| {
            let e: IntVec = (0..n).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }).collect();
            t.omega(&e)
        })
        .collect();
    for r in 0..n {
        for j in 0..n {
            if !omega_v[j].is_zero() && !wv[r].is_zero() {
                w[(r, j)] += &neg * &wv[r] * &omega_v[j];
            }
        }
    }
}

/// Integral matrix `W` with `W^t J W = J` whose first column is the given
/// primitive vector.
///
/// Greedy reduction of the vector to `e_1` by integral symplectic
/// transvections: a Euclid step inside every coordinate block, then Euclid
/// between the first block and each other block. `W` is the inverse of the
/// product, so its entries stay on the scale of the input.
pub fn symplectic_completion(first_col: &[BigInt]) -> Result<MatrixZ> {
    let n = first_col.len();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::invalid("vector length must be even and positive"));
    }
    if !is_primitive(first_col) {
        return Err(Error::invalid("vector is not primitive"));
    }
    let mut x = first_col.to_vec();
    let mut w = MatrixZ::identity(n);
    // q_k += c p_k  and  p_k -= c q_k
    let lift_q = |k: usize| Transvection { a: 2 * k + 1, b: 2 * k + 1, c: 1 };
    let drop_p = |k: usize| Transvection { a: 2 * k, b: 2 * k, c: 1 };
    let block_euclid = |k: usize, x: &mut IntVec, w: &mut MatrixZ| {
        while !x[2 * k + 1].is_zero() {
            if x[2 * k].is_zero() {
                // (0, q) -> (q, q) via p -= (-1) q
                step(drop_p(k), &BigInt::from(-1), x, w);
                continue;
            }
            let q = x[2 * k + 1].div_floor(&x[2 * k]);
            step(lift_q(k), &-q, x, w);
            if x[2 * k + 1].is_zero() {
                break;
            }
            let q = x[2 * k].div_floor(&x[2 * k + 1]);
            step(drop_p(k), &q, x, w);
        }
    };
    for k in 0..n / 2 {
        block_euclid(k, &mut x, &mut w);
    }
    for k in 1..n / 2 {
        // with q_0 = q_k = 0: p_0 += c p_k is τ(e_{p0} + e_{qk}, c) then q_k -= c p_k,
        // and p_k += c p_0 is τ(e_{pk} + e_{q0}, c) then q_0 -= c p_0
        while !x[2 * k].is_zero() {
            if !x[0].is_zero() {
                let q = x[2 * k].div_floor(&x[0]);
                step(Transvection { a: 2 * k, b: 1, c: 1 }, &-q, &mut x, &mut w);
                block_euclid(0, &mut x, &mut w);
                if x[2 * k].is_zero() {
                    break;
                }
            }
            let q = if x[0].is_zero() { BigInt::one() } else { x[0].div_floor(&x[2 * k]) };
            let c = if x[0].is_zero() { q } else { -q };
            step(Transvection { a: 0, b: 2 * k + 1, c: 1 }, &c, &mut x, &mut w);
            block_euclid(k, &mut x, &mut w);
        }
    }
    if x[0].is_negative() {
        // (-1, 0) -> (-1, 1) -> (1, 1) -> (1, 0)
        step(lift_q(0), &BigInt::from(-1), &mut x, &mut w);
        step(drop_p(0), &BigInt::from(-2), &mut x, &mut w);
        step(lift_q(0), &BigInt::from(-1), &mut x, &mut w);
    }
    debug_assert!(x[0].is_one() && x[1..].iter().all(Zero::is_zero), "{x:?}");
    Ok(w)
}

pub fn to_rational(m: &MatrixZ) -> MatrixQ {
    MatrixQ::from_integer(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::j_matrix;

    fn v(xs: &[i64]) -> IntVec {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn completion_is_symplectic_with_given_column() {
        for col in [v(&[1, 0]), v(&[3, 5]), v(&[2, 3, 4, 7]), v(&[0, 0, 6, 1, 0, 10])] {
            let w = to_rational(&symplectic_completion(&col).unwrap());
            let j = j_matrix(col.len());
            assert_eq!(w.transpose().mul(&j).mul(&w), j);
            assert_eq!(w.col(0), col.iter().map(|x| Rational::from_integer(x.clone())).collect::<Vec<_>>());
        }
        assert!(symplectic_completion(&v(&[2, 4])).is_err());
        assert!(symplectic_completion(&v(&[-1, 0])).is_ok());
    }

    #[test]
    fn completion_entries_stay_small() {
        let col = v(&[93670, 225296, 109299, 575981, -222916, 224798, -6220, -3052, -583245, -465115]);
        let w = symplectic_completion(&col).unwrap();
        let j = j_matrix(col.len());
        let wq = to_rational(&w);
        assert_eq!(wq.transpose().mul(&j).mul(&wq), j);
        assert_eq!(w.col(0), col);
        let bound = BigInt::from(10).pow(12);
        assert!(w.entries().iter().all(|x| x.abs() < bound), "{w}");
    }

    #[test]
    fn primitive_representative() {
        let r = |n, d| Rational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(primitive_vector(&[r(-1, 2), r(3, 4), r(0, 1)]), Some(v(&[2, -3, 0])));
        assert_eq!(primitive_vector(&[r(0, 1), r(0, 1)]), None);
    }
}
