//! `Δ_n` matrices, factorization of rational symplectic matrices, and the
//! realization of a `Δ_n`-congruence by enlargement, integral congruence and
//! reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::{primitive_vector, symplectic_completion, to_rational};
use crate::matrix::MatrixQ;
use crate::seifert::{
    col_enlarge, congruence, is_symplectic, row_enlarge, Certificate, ElementaryMove, Flavor, SeifertMatrix,
};
use crate::{int, Rational};

/// `diag(n, 1/n, 1, ..., 1)` where `n` or `1/n` is a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeltaMatrix {
    n: Rational,
    size: usize,
}

impl DeltaMatrix {
    pub fn n(&self) -> &Rational {
        &self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn matrix(&self) -> MatrixQ {
        MatrixQ::from_fn(self.size, self.size, |i, j| match (i, j) {
            (0, 0) => self.n.clone(),
            (1, 1) => self.n.recip(),
            (i, j) if i == j => int(1),
            _ => Rational::zero(),
        })
    }

    /// `Δ_{1/n}`.
    pub fn inverse(&self) -> Self {
        DeltaMatrix { n: self.n.recip(), size: self.size }
    }

    pub fn is_identity(&self) -> bool {
        self.n.is_one()
    }
}

/// Validated `Δ_n` of the given (even, positive) size.
pub fn delta(n: &Rational, size: usize) -> Result<DeltaMatrix> {
    if size == 0 || !size.is_multiple_of(2) {
        return Err(Error::invalid(format!("Δ_n needs a positive even size, got {size}")));
    }
    if !n.is_positive() || !(n.is_integer() || n.numer().is_one()) {
        return Err(Error::invalid(format!("{n} is neither a positive integer nor the reciprocal of one")));
    }
    Ok(DeltaMatrix { n: n.clone(), size })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Integral(MatrixQ),
    Delta(DeltaMatrix),
}

impl Factor {
    pub fn matrix(&self) -> MatrixQ {
        match self {
            Factor::Integral(m) => m.clone(),
            Factor::Delta(d) => d.matrix(),
        }
    }
}

/// Ordered factors whose product is the factored matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticFactorization {
    pub size: usize,
    pub factors: Vec<Factor>,
}

impl SymplecticFactorization {
    pub fn product(&self) -> MatrixQ {
        self.factors
            .iter()
            .fold(MatrixQ::identity(self.size), |acc, f| acc.mul(&f.matrix()))
    }

    /// Every integral factor is integral symplectic and every `Δ` factor valid.
    pub fn is_well_formed(&self) -> bool {
        self.factors.iter().all(|f| match f {
            Factor::Integral(m) => m.nrows() == self.size && m.is_integral() && is_symplectic(m),
            Factor::Delta(d) => d.size == self.size && delta(&d.n, d.size).is_ok(),
        })
    }
}

/// Permutation swapping the coordinate blocks `0` and `k`.
fn block_swap(size: usize, k: usize) -> MatrixQ {
    let perm = |i: usize| match i {
        i if i / 2 == 0 => 2 * k + i % 2,
        i if i / 2 == k => i % 2,
        i => i,
    };
    MatrixQ::from_fn(size, size, |i, j| if perm(j) == i { int(1) } else { Rational::zero() })
}

/// `Δ_n` acting on coordinate block `k`, as a factor list.
fn delta_at(n: Rational, size: usize, k: usize) -> Vec<Factor> {
    if n.is_one() {
        return Vec::new();
    }
    let d = Factor::Delta(DeltaMatrix { n, size });
    if k == 0 {
        vec![d]
    } else {
        let pi = block_swap(size, k);
        vec![Factor::Integral(pi.clone()), d, Factor::Integral(pi)]
    }
}

fn delta_matrix_at(n: &Rational, size: usize, k: usize) -> MatrixQ {
    MatrixQ::from_fn(size, size, |i, j| match (i, j) {
        (i, j) if i != j => Rational::zero(),
        (i, _) if i == 2 * k => n.clone(),
        (i, _) if i == 2 * k + 1 => n.recip(),
        _ => int(1),
    })
}

fn lcm_denominators(xs: &[Rational]) -> BigInt {
    xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Merges adjacent integral factors and drops identities.
fn simplify(factors: Vec<Factor>) -> Vec<Factor> {
    let mut out: Vec<Factor> = Vec::with_capacity(factors.len());
    for f in factors {
        match f {
            Factor::Delta(d) if d.is_identity() => {}
            Factor::Integral(m) => {
                if let Some(Factor::Integral(prev)) = out.last_mut() {
                    *prev = prev.mul(&m);
                } else {
                    out.push(Factor::Integral(m));
                }
            }
            f => out.push(f),
        }
    }
    out.retain(|f| !matches!(f, Factor::Integral(m) if m.is_identity()));
    out
}

/// Writes a rational symplectic `P` as an ordered product of integral
/// symplectic matrices and `Δ_n` matrices.
///
/// Proceeds block by block: the first column of the active block is made a
/// primitive integer vector by right factors `Δ_δ Δ_{1/d}` and mapped to the
/// block's first basis vector by an integral symplectic completion; a shear
/// `Q` then fixes the second column and is recorded as
/// `Q^-1 = Δ_{1/n} (Δ_n Q Δ_{1/n})^-1 Δ_n`. Factors acting on a block other
/// than the first are conjugated by a block-swap permutation.
pub fn factor_symplectic(p: &MatrixQ) -> Result<SymplecticFactorization> {
    if !p.is_square() || !p.nrows().is_multiple_of(2) {
        return Err(Error::invalid(format!("expected an even square matrix, got {}x{}", p.nrows(), p.ncols())));
    }
    if !is_symplectic(p) {
        return Err(Error::NotSymplectic);
    }
    let size = p.nrows();
    if p.is_integral() {
        let factors = if p.is_identity() { Vec::new() } else { vec![Factor::Integral(p.clone())] };
        return Ok(SymplecticFactorization { size, factors });
    }
    let mut left: Vec<Factor> = Vec::new();
    let mut right: Vec<Factor> = Vec::new(); // product order
    let mut m = p.clone();

    for k in 0..size / 2 {
        let c0 = 2 * k;
        let tail: Vec<usize> = (c0..size).collect();

        // Step 1: primitive first column, then move it to e_{c0}
        let col = m.col(c0);
        let d = lcm_denominators(&col);
        let scaled: Vec<BigInt> = col.iter().map(|x| (x * Rational::from_integer(d.clone())).to_integer()).collect();
        let delta_g = scaled.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if d != delta_g {
            let (dq, gq) = (Rational::from_integer(d.clone()), Rational::from_integer(delta_g.clone()));
            m = m.mul(&delta_matrix_at(&dq, size, k)).mul(&delta_matrix_at(&gq.recip(), size, k));
            let mut r = delta_at(gq, size, k);
            r.extend(delta_at(dq.recip(), size, k));
            r.extend(right);
            right = r;
        }
        let prim = primitive_vector(&m.col(c0)).expect("columns of an invertible matrix are nonzero");
        let sign = if m.col(c0).iter().find(|x| !x.is_zero()).unwrap().is_negative() { -1 } else { 1 };
        let local: Vec<BigInt> = tail.iter().map(|&i| &prim[i] * BigInt::from(sign)).collect();
        debug_assert!(prim[..c0].iter().all(|x| x.is_zero()));
        let w = to_rational(&symplectic_completion(&local)?);
        let q = MatrixQ::identity(c0).direct_sum(&w);
        if !q.is_identity() {
            m = q.inverse()?.mul(&m);
            left.push(Factor::Integral(q));
        }
        debug_assert!((0..size).all(|i| m[(i, c0)] == if i == c0 { int(1) } else { Rational::zero() }));

        // Step 2: fix the second column with a shear
        let x = m.inverse()?.col(c0 + 1);
        let shear = MatrixQ::from_fn(size, size, |i, j| {
            if i < c0 || j < c0 {
                return if i == j { int(1) } else { Rational::zero() };
            }
            let (li, lj) = (i - c0, j - c0);
            match (li, lj) {
                (0, 0) => int(1),
                (0, 1) => x[c0].clone(),
                (0, lj) if lj % 2 == 0 => -x[j + 1].clone(),
                (0, _) => x[j - 1].clone(),
                (_, 1) => x[i].clone(),
                (li, lj) if li == lj => int(1),
                _ => Rational::zero(),
            }
        });
        debug_assert!(is_symplectic(&shear));
        if !shear.is_identity() {
            m = m.mul(&shear);
            let n = Rational::from_integer(lcm_denominators(&x));
            let conj = delta_matrix_at(&n, size, k)
                .mul(&shear)
                .mul(&delta_matrix_at(&n.recip(), size, k))
                .inverse()?;
            debug_assert!(conj.is_integral());
            let mut r = delta_at(n.recip(), size, k);
            r.push(Factor::Integral(conj));
            r.extend(delta_at(n, size, k));
            r.extend(right);
            right = r;
        }
        // Step 3: the remaining block is symplectic
        debug_assert!((0..size).all(|i| m[(i, c0 + 1)] == if i == c0 + 1 { int(1) } else { Rational::zero() }));
    }
    debug_assert!(m.is_identity());
    left.extend(right);
    let out = SymplecticFactorization { size, factors: simplify(left) };
    debug_assert_eq!(&out.product(), p);
    Ok(out)
}

/// The data of a `Δ_n`-congruence realized by moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaRealization {
    /// Enlargement of the source matrix.
    pub tilde_v: SeifertMatrix,
    /// Integral symplectic matrix with `tilde_w = P tilde_v P^t`.
    pub p: MatrixQ,
    /// Enlargement of `Δ_n V Δ_n`.
    pub tilde_w: SeifertMatrix,
    /// `[enlarge, congruence(P), reduce]` carrying `V` to `Δ_n V Δ_n`.
    pub certificate: Certificate,
}

struct Pieces {
    col_enlarged: SeifertMatrix,
    col_data: (Rational, Vec<Rational>),
    p: MatrixQ,
    row_enlarged: SeifertMatrix,
    row_data: (Rational, Vec<Rational>),
}

/// Construction for a positive integer `n`: `Ṽ` is a column enlargement of
/// `v`, `W̃ = P Ṽ P^t` a row enlargement of `Δ_n v Δ_n`.
fn construct(v: &SeifertMatrix, n: &Rational) -> Result<Pieces> {
    let size = v.size();
    let m = v.matrix();
    let (p_, r_, s_) = (&m[(0, 0)], &m[(1, 0)], &m[(1, 1)]);
    let omega: Vec<Rational> = (2..size).map(|i| m[(i, 0)].clone()).collect();
    let rho: Vec<Rational> = (2..size).map(|i| m[(i, 1)].clone()).collect();
    let n2 = n * n;

    let mut col_rho = vec![r_ / n, s_ / n];
    col_rho.extend(rho.iter().map(|x| x / n));
    let col_x = s_ / &n2;
    let col_enlarged = col_enlarge(v, &col_x, &col_rho)?;

    let mut pm = MatrixQ::identity(size + 2);
    for i in 0..4 {
        for j in 0..4 {
            pm[(i, j)] = Rational::zero();
        }
    }
    pm[(0, 1)] = n.clone();
    pm[(0, 3)] = int(-1);
    pm[(1, 2)] = int(1);
    pm[(2, 0)] = int(1);
    pm[(2, 2)] = n.clone();
    pm[(3, 1)] = int(1);

    let w = congruence(v, &delta_matrix_at(n, size, 0))?;
    let mut row_rho = vec![n * p_, r_ / n];
    row_rho.extend(omega.iter().cloned());
    let row_x = p_.clone();
    let row_enlarged = row_enlarge(&w, &row_x, &row_rho)?;
    debug_assert_eq!(congruence(&col_enlarged, &pm).as_ref(), Ok(&row_enlarged));
    Ok(Pieces { col_enlarged, col_data: (col_x, col_rho), p: pm, row_enlarged, row_data: (row_x, row_rho) })
}

/// Realizes `V -> Δ_n V Δ_n` by an enlargement, an integral symplectic
/// congruence and a reduction.
///
/// For an integer `n` this is `[ColEnlarge, Congruence(P), RowReduce]`; for
/// `n = 1/m` the construction for `m` is run from `Δ_n V Δ_n` and reversed,
/// giving `[RowEnlarge, Congruence(P^-1), ColReduce]`. With
/// `require_integral` every intermediate matrix must be integral, which for
/// integer `n` means `n | V_21`, `n | V_i2 (i > 2)` and `n^2 | V_22`.
pub fn realize_delta(v: &SeifertMatrix, n: &Rational, require_integral: bool) -> Result<DeltaRealization> {
    if v.size() == 0 {
        return Err(Error::invalid("Δ_n realization needs a nonempty matrix"));
    }
    let dm = delta(n, v.size())?;
    if require_integral && !v.is_integral() {
        return Err(Error::IntegralityRequired);
    }
    let (tilde_v, p, tilde_w, moves) = if n.is_integer() {
        let pc = construct(v, n)?;
        let moves = vec![
            ElementaryMove::ColEnlarge { x: pc.col_data.0, rho: pc.col_data.1 },
            ElementaryMove::Congruence { p: pc.p.clone() },
            ElementaryMove::RowReduce,
        ];
        (pc.col_enlarged, pc.p, pc.row_enlarged, moves)
    } else {
        let w = congruence(v, &dm.matrix())?;
        let pc = construct(&w, &n.recip())?;
        let p_inv = pc.p.inverse()?;
        let moves = vec![
            ElementaryMove::RowEnlarge { x: pc.row_data.0, rho: pc.row_data.1 },
            ElementaryMove::Congruence { p: p_inv.clone() },
            ElementaryMove::ColReduce,
        ];
        (pc.row_enlarged, p_inv, pc.col_enlarged, moves)
    };
    if require_integral && !(tilde_v.is_integral() && tilde_w.is_integral()) {
        return Err(Error::Divisibility(if n.is_integer() {
            format!("n = {n} must divide V_21 and the rest of column 2, and n^2 must divide V_22")
        } else {
            format!("m = {} must divide V_12 + 1 = V_21 and the rest of column 1, and m^2 must divide V_11", n.recip())
        }));
    }
    let flavor = if tilde_v.is_integral() && tilde_w.is_integral() {
        Flavor::Integral
    } else {
        Flavor::SemiIntegral
    };
    Ok(DeltaRealization { tilde_v, p, tilde_w, certificate: Certificate::new(flavor, moves) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::seifert::{apply_certificate, reduce, MoveKind};

    #[test]
    fn delta_examples() {
        assert!(delta(&int(1), 4).unwrap().matrix().is_identity());
        assert_eq!(delta(&int(2), 2).unwrap().matrix(), MatrixQ::diagonal(&[int(2), rat(1, 2)]));
        let prod = delta(&int(2), 4).unwrap().matrix().mul(&delta(&rat(1, 2), 4).unwrap().matrix());
        assert!(prod.is_identity());
        assert!(delta(&rat(2, 3), 2).is_err());
        assert!(delta(&int(-2), 2).is_err());
        assert!(delta(&int(2), 3).is_err());
        assert!(is_symplectic(&delta(&int(5), 6).unwrap().matrix()));
    }

    #[test]
    fn factor_examples() {
        let f = factor_symplectic(&MatrixQ::diagonal(&[int(2), rat(1, 2)])).unwrap();
        assert_eq!(f.factors, vec![Factor::Delta(delta(&int(2), 2).unwrap())]);

        let p = MatrixQ::from_rows(vec![vec![int(1), rat(1, 2)], vec![int(0), int(1)]]).unwrap();
        let f = factor_symplectic(&p).unwrap();
        assert_eq!(
            f.factors,
            vec![
                Factor::Delta(delta(&rat(1, 2), 2).unwrap()),
                Factor::Integral(MatrixQ::from_i64(&[&[1, 2], &[0, 1]])),
                Factor::Delta(delta(&int(2), 2).unwrap()),
            ]
        );
        assert_eq!(f.product(), p);

        let s = MatrixQ::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(factor_symplectic(&s).unwrap().factors, vec![Factor::Integral(s)]);
        assert!(factor_symplectic(&MatrixQ::diagonal(&[int(2), int(2)])).is_err());
    }

    #[test]
    fn factor_deeper_block() {
        let d = delta_matrix_at(&rat(3, 1), 4, 1);
        let j2 = MatrixQ::from_i64(&[&[0, -1], &[1, 0]]);
        let p = j2.direct_sum(&j2).mul(&d).mul(&delta_matrix_at(&rat(1, 5), 4, 0));
        let f = factor_symplectic(&p).unwrap();
        assert!(f.is_well_formed());
        assert_eq!(f.product(), p);
    }

    #[test]
    fn realize_example() {
        let v = SeifertMatrix::from_i64(&[&[-1, 0], &[1, 2]]).unwrap();
        let r = realize_delta(&v, &int(2), false).unwrap();
        let w_expected = MatrixQ::from_rows(vec![
            vec![int(0), int(0), int(0), int(0)],
            vec![int(1), int(-1), int(-2), rat(1, 2)],
            vec![int(0), int(-2), int(-4), int(0)],
            vec![int(0), rat(1, 2), int(1), rat(1, 2)],
        ])
        .unwrap();
        assert_eq!(r.tilde_w.matrix(), &w_expected);
        assert_eq!(r.p, MatrixQ::from_i64(&[&[0, 2, 0, -1], &[0, 0, 1, 0], &[1, 0, 2, 0], &[0, 1, 0, 0]]));
        assert_eq!(reduce(&r.tilde_v).unwrap(), (v.clone(), MoveKind::ColReduce));
        let target = congruence(&v, &MatrixQ::diagonal(&[int(2), rat(1, 2)])).unwrap();
        assert_eq!(reduce(&r.tilde_w).unwrap(), (target.clone(), MoveKind::RowReduce));
        assert_eq!(apply_certificate(&v, &r.certificate).unwrap().result, target);
        assert!(matches!(realize_delta(&v, &int(2), true), Err(Error::Divisibility(_))));

        let trivial = realize_delta(&v, &int(1), true).unwrap();
        assert_eq!(reduce(&trivial.tilde_w).unwrap().0, v);

        let back = realize_delta(&target, &rat(1, 2), false).unwrap();
        assert_eq!(apply_certificate(&target, &back.certificate).unwrap().result, v);
    }
}
