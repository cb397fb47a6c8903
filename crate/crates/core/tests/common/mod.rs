//! Random generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seifert::seifert::{col_enlarge, congruence, j_matrix, row_enlarge};
use seifert::{int, rat, Certificate, ElementaryMove, Flavor, Laurent, MatrixLaurent, MatrixQ, Rational, SeifertMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

pub fn small_rat(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let d = *[1, 1, 2, 3, 4, 6].choose(rng).unwrap();
    rat(rng.gen_range(-bound..=bound), d)
}

/// `S + L` with `S` symmetric random and `L` the strictly lower part of `J`.
pub fn random_seifert(rng: &mut ChaCha8Rng, genus: usize, bound: i64, integral: bool) -> SeifertMatrix {
    let n = 2 * genus;
    let mut s = MatrixQ::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = if integral { small_int(rng, bound) } else { small_rat(rng, bound) };
            s[(i, j)] = x.clone();
            s[(j, i)] = x;
        }
    }
    let j = j_matrix(n);
    let l = MatrixQ::from_fn(n, n, |a, b| if a > b { j[(a, b)].clone() } else { Rational::zero() });
    SeifertMatrix::validate(s.add(&l)).expect("S + L is a Seifert matrix")
}

/// `I + c v v^t J`: symplectic for every `v` and `c`.
pub fn transvection(v: &[Rational], c: &Rational) -> MatrixQ {
    let n = v.len();
    let col = MatrixQ::from_fn(n, 1, |i, _| v[i].clone());
    let outer = col.mul(&col.transpose()).mul(&j_matrix(n));
    MatrixQ::identity(n).add(&outer.scale(c))
}

fn block_rotation(n: usize, k: usize) -> MatrixQ {
    MatrixQ::from_fn(n, n, |i, j| {
        if i / 2 == k && j / 2 == k {
            j_matrix(2)[(i % 2, j % 2)].clone()
        } else if i == j {
            int(1)
        } else {
            Rational::zero()
        }
    })
}

fn block_swap(n: usize, a: usize, b: usize) -> MatrixQ {
    let perm = |i: usize| {
        if i / 2 == a {
            2 * b + i % 2
        } else if i / 2 == b {
            2 * a + i % 2
        } else {
            i
        }
    };
    MatrixQ::from_fn(n, n, |i, j| if perm(j) == i { int(1) } else { Rational::zero() })
}

pub fn delta_on_block(n: usize, k: usize, d: &Rational) -> MatrixQ {
    MatrixQ::from_fn(n, n, |i, j| {
        if i != j {
            Rational::zero()
        } else if i == 2 * k {
            d.clone()
        } else if i == 2 * k + 1 {
            d.recip()
        } else {
            int(1)
        }
    })
}

/// Random word in integral transvections, block rotations and block swaps.
pub fn random_integral_symplectic(rng: &mut ChaCha8Rng, n: usize, len: usize) -> MatrixQ {
    let mut p = MatrixQ::identity(n);
    for _ in 0..len {
        let g = match rng.gen_range(0..4) {
            0 | 1 => {
                let v: Vec<Rational> = (0..n).map(|_| small_int(rng, 2)).collect();
                transvection(&v, &small_int(rng, 2))
            }
            2 => block_rotation(n, rng.gen_range(0..n / 2)),
            _ => block_swap(n, rng.gen_range(0..n / 2), rng.gen_range(0..n / 2)),
        };
        p = p.mul(&g);
    }
    p
}

/// Random word that also contains `Δ_d` factors on random blocks.
pub fn random_rational_symplectic(rng: &mut ChaCha8Rng, n: usize, len: usize) -> MatrixQ {
    let mut p = MatrixQ::identity(n);
    for _ in 0..len {
        let g = if rng.gen_bool(0.35) {
            let d = rng.gen_range(2..=6);
            let d = if rng.gen_bool(0.5) { int(d) } else { rat(1, d) };
            delta_on_block(n, rng.gen_range(0..n / 2), &d)
        } else {
            random_integral_symplectic(rng, n, 1)
        };
        p = p.mul(&g);
    }
    p
}

/// Random invertible integral Seifert matrix of genus `genus`, built from a
/// small seed by integral symplectic congruences (and, sometimes, an integral
/// enlargement followed by reduction to an invertible matrix).
pub fn random_invertible_integral(rng: &mut ChaCha8Rng, genus: usize) -> SeifertMatrix {
    loop {
        let seed = random_seifert(rng, genus, 2, true);
        if !seed.is_invertible() {
            continue;
        }
        let p = random_integral_symplectic(rng, 2 * genus, 3);
        let v = congruence(&seed, &p).unwrap();
        if v.matrix().entries().iter().any(|x| x.abs() > int(60)) {
            continue;
        }
        return v;
    }
}

/// Random certificate of at most `max_len` moves applicable to `v`, of the
/// given flavor. Returns the certificate and the resulting matrix.
pub fn random_certificate(
    rng: &mut ChaCha8Rng,
    v: &SeifertMatrix,
    max_len: usize,
    flavor: Flavor,
) -> (Certificate, SeifertMatrix) {
    let mut moves = Vec::new();
    let mut cur = v.clone();
    let len = rng.gen_range(0..=max_len);
    for _ in 0..len {
        let n = cur.size();
        let choice = rng.gen_range(0..5);
        let data = |rng: &mut ChaCha8Rng| -> (Rational, Vec<Rational>) {
            let gen = |rng: &mut ChaCha8Rng| if flavor == Flavor::Integral { small_int(rng, 2) } else { small_rat(rng, 2) };
            (gen(rng), (0..n).map(|_| gen(rng)).collect())
        };
        let mv = match choice {
            0 if n < 10 => {
                let (x, rho) = data(rng);
                ElementaryMove::RowEnlarge { x, rho }
            }
            1 if n < 10 => {
                let (x, rho) = data(rng);
                ElementaryMove::ColEnlarge { x, rho }
            }
            2 if seifert::reduce(&cur).is_ok() => match seifert::reduce(&cur).unwrap().1 {
                seifert::MoveKind::RowReduce => ElementaryMove::RowReduce,
                _ => ElementaryMove::ColReduce,
            },
            _ if n > 0 => {
                let p = if flavor == Flavor::Rational && rng.gen_bool(0.5) {
                    random_rational_symplectic(rng, n, 2)
                } else {
                    random_integral_symplectic(rng, n, 2)
                };
                ElementaryMove::Congruence { p }
            }
            _ => {
                let (x, rho) = data(rng);
                ElementaryMove::RowEnlarge { x, rho }
            }
        };
        cur = match &mv {
            ElementaryMove::RowEnlarge { x, rho } => row_enlarge(&cur, x, rho).unwrap(),
            ElementaryMove::ColEnlarge { x, rho } => col_enlarge(&cur, x, rho).unwrap(),
            ElementaryMove::RowReduce | ElementaryMove::ColReduce => seifert::reduce(&cur).unwrap().0,
            ElementaryMove::Congruence { p } => congruence(&cur, p).unwrap(),
        };
        moves.push(mv);
    }
    (Certificate::new(flavor, moves), cur)
}

// ---------- oracles ----------

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det_laurent(m: &MatrixLaurent) -> Laurent {
    let n = m.nrows();
    if n == 0 {
        return Laurent::one();
    }
    let mut acc = Laurent::zero();
    for j in 0..n {
        if m[(0, j)].is_zero() {
            continue;
        }
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let term = &m[(0, j)] * &cofactor_det_laurent(&m.select(&rows, &cols));
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Plain fraction Gaussian elimination on a rational matrix.
pub fn gauss_det(rows: Vec<Vec<Rational>>) -> Rational {
    let n = rows.len();
    let mut a = rows;
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            let f = &a[r][c] / &piv;
            for k in c..n {
                let sub = &f * &a[c][k];
                a[r][k] -= sub;
            }
        }
    }
    det
}

/// `det(tV - V^t)` at a rational point, by elimination.
pub fn alexander_at(v: &SeifertMatrix, t: &Rational) -> Rational {
    let m = v.matrix();
    let n = v.size();
    gauss_det((0..n).map(|i| (0..n).map(|j| t * &m[(i, j)] - &m[(j, i)]).collect()).collect())
}

/// Lagrange interpolation of a degree `<= deg` polynomial through
/// `t = 1, 2, ..., deg + 1`.
pub fn interpolate(deg: usize, f: impl Fn(&Rational) -> Rational) -> Vec<Rational> {
    let xs: Vec<Rational> = (1..=deg as i64 + 1).map(int).collect();
    let ys: Vec<Rational> = xs.iter().map(&f).collect();
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (i, xi) in xs.iter().enumerate() {
        // basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += &ys[i] * b / &denom;
        }
    }
    coeffs
}

/// Brute-force gcds of all `k x k` minors of an integer matrix.
pub fn minor_gcds(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let r = m.len();
    let c = if r == 0 { 0 } else { m[0].len() };
    let subsets = |n: usize, k: usize| -> Vec<Vec<usize>> {
        (0u32..(1 << n)).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
    };
    (1..=r.min(c))
        .map(|k| {
            let mut g = BigInt::zero();
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let sub: Vec<Vec<Rational>> =
                        rs.iter().map(|&i| cs.iter().map(|&j| Rational::from_integer(m[i][j].clone())).collect()).collect();
                    g = g.gcd(&gauss_det(sub).to_integer());
                }
            }
            g
        })
        .collect()
}

/// Invariant factors from determinantal divisors `d_k / d_{k-1}` (nonzero part).
pub fn invariant_factors_oracle(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let d = minor_gcds(m);
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for dk in d {
        if dk.is_zero() {
            break;
        }
        out.push(&dk / &prev);
        prev = dk;
    }
    out
}

/// Order and exponent of `(Z^n + C Z^n) / Z^n` by enumeration, where `C` is a
/// rational matrix. Returns `(order, max element order)`; the group is cyclic
/// iff the two agree.
pub fn brute_quotient(c: &MatrixQ) -> (usize, usize) {
    let n = c.nrows();
    let den = c.entries().iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
    let d = den.clone();
    let reduce = |v: Vec<BigInt>| -> Vec<BigInt> { v.into_iter().map(|x| x.mod_floor(&d)).collect() };
    let gens: Vec<Vec<BigInt>> = (0..c.ncols())
        .map(|j| reduce((0..n).map(|i| (&c[(i, j)] * Rational::from_integer(den.clone())).to_integer()).collect()))
        .collect();
    let zero = vec![BigInt::zero(); n];
    let mut seen: HashSet<Vec<BigInt>> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = reduce(x.iter().zip(g).map(|(a, b)| a + b).collect());
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let order_of = |x: &Vec<BigInt>| {
        let mut k = 1;
        let mut acc = x.clone();
        while acc.iter().any(|a| !a.is_zero()) {
            acc = reduce(acc.iter().zip(x).map(|(a, b)| a + b).collect());
            k += 1;
        }
        k
    };
    let exponent = seen.iter().map(order_of).max().unwrap();
    (seen.len(), exponent)
}

pub fn unit_normal(p: &Laurent) -> Laurent {
    p.unit_normalized()
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn is_unimodular_integral(m: &MatrixQ) -> bool {
    m.is_integral() && m.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
}
