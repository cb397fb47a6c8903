//! Seifert matrices and the elementary S-equivalence moves.
//!
//! A Seifert matrix is a rational `2g x 2g` matrix `V` with `V - V^t = J`,
//! where `J` is block diagonal with blocks `[[0, -1], [1, 0]]`. Enlargements
//! add two rows and columns in one of two fixed block patterns, reductions
//! strip them again, and symplectic congruences replace `V` by `P V P^t`
//! with `P J P^t = J`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{primitive_vector, symplectic_completion, to_rational};
use crate::laurent::Laurent;
use crate::matrix::{MatrixLaurent, MatrixQ};
use crate::{int, Rational};

/// The reference symplectic form of size `n` (even).
pub fn j_matrix(n: usize) -> MatrixQ {
    MatrixQ::from_fn(n, n, |i, j| {
        if i % 2 == 0 && j == i + 1 {
            int(-1)
        } else if i % 2 == 1 && j + 1 == i {
            int(1)
        } else {
            Rational::zero()
        }
    })
}

/// `P J P^t == J`.
pub fn is_symplectic(p: &MatrixQ) -> bool {
    if !p.is_square() || !p.nrows().is_multiple_of(2) {
        return false;
    }
    let j = j_matrix(p.nrows());
    p.mul(&j).mul(&p.transpose()) == j
}

/// A validated Seifert matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    entries: MatrixQ,
    integral: bool,
}

impl SeifertMatrix {
    /// Accepts `v` iff it is square of even size with `v - v^t = J`.
    pub fn validate(v: MatrixQ) -> Result<Self> {
        if !v.is_square() {
            return Err(Error::NotSeifert(format!("matrix is {}x{}, not square", v.nrows(), v.ncols())));
        }
        if !v.nrows().is_multiple_of(2) {
            return Err(Error::NotSeifert(format!("size {} is odd", v.nrows())));
        }
        let j = j_matrix(v.nrows());
        for i in 0..v.nrows() {
            for k in 0..v.ncols() {
                let d = &v[(i, k)] - &v[(k, i)];
                if d != j[(i, k)] {
                    return Err(Error::NotSeifert(format!(
                        "entry ({},{}): V - V^t = {} but J = {}",
                        i + 1,
                        k + 1,
                        d,
                        j[(i, k)]
                    )));
                }
            }
        }
        let integral = v.is_integral();
        Ok(SeifertMatrix { entries: v, integral })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::validate(MatrixQ::from_i64(rows))
    }

    pub fn empty() -> Self {
        SeifertMatrix { entries: MatrixQ::zeros(0, 0), integral: true }
    }

    pub fn matrix(&self) -> &MatrixQ {
        &self.entries
    }

    pub fn into_matrix(self) -> MatrixQ {
        self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn genus(&self) -> usize {
        self.size() / 2
    }

    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn determinant(&self) -> Rational {
        self.entries.determinant().expect("square")
    }

    /// The empty matrix counts as invertible.
    pub fn is_invertible(&self) -> bool {
        !self.determinant().is_zero()
    }

    /// Block-diagonal sum of two Seifert matrices (again a Seifert matrix).
    pub fn direct_sum(&self, other: &Self) -> Self {
        SeifertMatrix {
            entries: self.entries.direct_sum(&other.entries),
            integral: self.integral && other.integral,
        }
    }
}

impl fmt::Debug for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeifertMatrix({:?})", self.entries)
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    RowEnlarge,
    ColEnlarge,
    RowReduce,
    ColReduce,
    Congruence,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::RowEnlarge => "row_enlarge",
            MoveKind::ColEnlarge => "col_enlarge",
            MoveKind::RowReduce => "row_reduce",
            MoveKind::ColReduce => "col_reduce",
            MoveKind::Congruence => "congruence",
        }
    }
}

/// One elementary S-equivalence with the data needed to replay it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementaryMove {
    RowEnlarge { x: Rational, rho: Vec<Rational> },
    ColEnlarge { x: Rational, rho: Vec<Rational> },
    RowReduce,
    ColReduce,
    Congruence { p: MatrixQ },
}

impl ElementaryMove {
    pub fn kind(&self) -> MoveKind {
        match self {
            ElementaryMove::RowEnlarge { .. } => MoveKind::RowEnlarge,
            ElementaryMove::ColEnlarge { .. } => MoveKind::ColEnlarge,
            ElementaryMove::RowReduce => MoveKind::RowReduce,
            ElementaryMove::ColReduce => MoveKind::ColReduce,
            ElementaryMove::Congruence { .. } => MoveKind::Congruence,
        }
    }
}

/// Integrality constraints on a certificate's moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    /// Any rational data.
    Rational,
    /// Congruence matrices must be integral.
    SemiIntegral,
    /// Additionally every matrix along the way is integral.
    Integral,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Rational => "rational",
            Flavor::SemiIntegral => "semi-integral",
            Flavor::Integral => "integral",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(Flavor::Rational),
            "semi-integral" => Ok(Flavor::SemiIntegral),
            "integral" => Ok(Flavor::Integral),
            other => Err(Error::Parse(format!("unknown flavor {other:?}"))),
        }
    }
}

/// An ordered list of moves: a checkable witness of S-equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub flavor: Flavor,
    pub moves: Vec<ElementaryMove>,
}

impl Certificate {
    pub fn new(flavor: Flavor, moves: Vec<ElementaryMove>) -> Self {
        Certificate { flavor, moves }
    }

    pub fn empty(flavor: Flavor) -> Self {
        Certificate { flavor, moves: Vec::new() }
    }
}

fn check_rho(v: &SeifertMatrix, rho: &[Rational]) -> Result<()> {
    if rho.len() != v.size() {
        return Err(Error::invalid(format!(
            "rho has length {} but the matrix has size {}",
            rho.len(),
            v.size()
        )));
    }
    Ok(())
}

fn enlarge(v: &SeifertMatrix, x: &Rational, rho: &[Rational], row: bool) -> Result<SeifertMatrix> {
    check_rho(v, rho)?;
    let n = v.size() + 2;
    let m = MatrixQ::from_fn(n, n, |i, j| match (i, j) {
        (0, 1) if !row => int(-1),
        (1, 0) if row => int(1),
        (0, _) | (_, 0) => Rational::zero(),
        (1, 1) => x.clone(),
        (1, j) => rho[j - 2].clone(),
        (i, 1) => rho[i - 2].clone(),
        (i, j) => v.matrix()[(i - 2, j - 2)].clone(),
    });
    let integral = v.is_integral() && x.is_integer() && rho.iter().all(|r| r.is_integer());
    debug_assert!(SeifertMatrix::validate(m.clone()).is_ok());
    Ok(SeifertMatrix { entries: m, integral })
}

/// `[[0, 0, 0], [1, x, rho^t], [0, rho, V]]`.
pub fn row_enlarge(v: &SeifertMatrix, x: &Rational, rho: &[Rational]) -> Result<SeifertMatrix> {
    enlarge(v, x, rho, true)
}

/// `[[0, -1, 0], [0, x, rho^t], [0, rho, V]]`.
pub fn col_enlarge(v: &SeifertMatrix, x: &Rational, rho: &[Rational]) -> Result<SeifertMatrix> {
    enlarge(v, x, rho, false)
}

/// The `(x, rho)` data of `w` if it matches the given enlargement pattern.
pub fn enlargement_data(w: &SeifertMatrix, row: bool) -> Option<(Rational, Vec<Rational>)> {
    let n = w.size();
    if n < 2 {
        return None;
    }
    let m = w.matrix();
    let zero = Rational::zero();
    let first_row_ok = (0..n).all(|j| {
        let expected = if j == 1 && !row { int(-1) } else { zero.clone() };
        m[(0, j)] == expected
    });
    let first_col_ok = (1..n).all(|i| {
        let expected = if i == 1 && row { int(1) } else { zero.clone() };
        m[(i, 0)] == expected
    });
    (first_row_ok && first_col_ok).then(|| (m[(1, 1)].clone(), (2..n).map(|j| m[(1, j)].clone()).collect()))
}

fn strip(w: &SeifertMatrix) -> SeifertMatrix {
    let n = w.size();
    let idx: Vec<usize> = (2..n).collect();
    let m = w.matrix().select(&idx, &idx);
    let integral = m.is_integral();
    SeifertMatrix { entries: m, integral }
}

/// Strips the first two rows and columns of a row-enlargement pattern.
pub fn row_reduce(w: &SeifertMatrix) -> Result<SeifertMatrix> {
    enlargement_data(w, true)
        .map(|_| strip(w))
        .ok_or(Error::PatternMismatch { expected: "row-enlargement" })
}

/// Strips the first two rows and columns of a column-enlargement pattern.
pub fn col_reduce(w: &SeifertMatrix) -> Result<SeifertMatrix> {
    enlargement_data(w, false)
        .map(|_| strip(w))
        .ok_or(Error::PatternMismatch { expected: "column-enlargement" })
}

/// Reduction by whichever enlargement pattern `w` matches.
pub fn reduce(w: &SeifertMatrix) -> Result<(SeifertMatrix, MoveKind)> {
    if let Ok(v) = row_reduce(w) {
        return Ok((v, MoveKind::RowReduce));
    }
    if let Ok(v) = col_reduce(w) {
        return Ok((v, MoveKind::ColReduce));
    }
    Err(Error::NotReducible(
        "first two rows and columns match neither enlargement pattern".into(),
    ))
}

/// `P V P^t` for a symplectic `P`.
pub fn congruence(v: &SeifertMatrix, p: &MatrixQ) -> Result<SeifertMatrix> {
    if !p.is_square() || p.nrows() != v.size() {
        return Err(Error::InvalidCongruence(format!(
            "P is {}x{}, expected {}x{}",
            p.nrows(),
            p.ncols(),
            v.size(),
            v.size()
        )));
    }
    if !is_symplectic(p) {
        return Err(Error::InvalidCongruence("P J P^t != J".into()));
    }
    let m = p.mul(v.matrix()).mul(&p.transpose());
    let integral = m.is_integral();
    Ok(SeifertMatrix { entries: m, integral })
}

/// Result of replaying a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateOutcome {
    pub result: SeifertMatrix,
    /// Generator transport over `Q[t, t^-1]`: column `i` gives the image of
    /// the `i`-th generator of the source module in terms of the generators
    /// of the result's module. Composed from the canonical maps of the
    /// individual moves; defined up to an overall power of `t`.
    pub transport: MatrixLaurent,
}

fn move_transport(mv: &ElementaryMove, before: &SeifertMatrix) -> MatrixLaurent {
    let n = before.size();
    let t_minus_1 = Laurent::from_ints(0, &[-1, 1]);
    match mv {
        ElementaryMove::Congruence { p } => p.to_laurent(),
        ElementaryMove::RowEnlarge { .. } | ElementaryMove::ColEnlarge { .. } => {
            MatrixLaurent::from_fn(n + 2, n, |i, j| if i == j + 2 { Laurent::one() } else { Laurent::zero() })
        }
        ElementaryMove::RowReduce | ElementaryMove::ColReduce => {
            // b_2 = 0 and b_1 = c (t-1) rho . (b_3, ...), with c = 1 (row) or t^-1 (column)
            let row = matches!(mv, ElementaryMove::RowReduce);
            let (_, rho) = enlargement_data(before, row).expect("pattern checked");
            let c = if row { t_minus_1 } else { t_minus_1.shift(-1) };
            MatrixLaurent::from_fn(n - 2, n, |i, j| match j {
                0 => c.scale(&rho[i]),
                1 => Laurent::zero(),
                j if j == i + 2 => Laurent::one(),
                _ => Laurent::zero(),
            })
        }
    }
}

fn apply_move(v: &SeifertMatrix, mv: &ElementaryMove, flavor: Flavor) -> Result<SeifertMatrix> {
    match mv {
        ElementaryMove::RowEnlarge { x, rho } | ElementaryMove::ColEnlarge { x, rho } => {
            if flavor == Flavor::Integral && !(x.is_integer() && rho.iter().all(|r| r.is_integer())) {
                return Err(Error::invalid("integral flavor requires integral enlargement data"));
            }
            if matches!(mv, ElementaryMove::RowEnlarge { .. }) {
                row_enlarge(v, x, rho)
            } else {
                col_enlarge(v, x, rho)
            }
        }
        ElementaryMove::RowReduce => row_reduce(v),
        ElementaryMove::ColReduce => col_reduce(v),
        ElementaryMove::Congruence { p } => {
            if flavor >= Flavor::SemiIntegral && !p.is_integral() {
                return Err(Error::InvalidCongruence(format!(
                    "{} flavor requires an integral congruence matrix",
                    flavor.name()
                )));
            }
            congruence(v, p)
        }
    }
}

/// Replays the certificate on `v`, checking its flavor constraints.
pub fn apply_certificate(v: &SeifertMatrix, cert: &Certificate) -> Result<CertificateOutcome> {
    if cert.flavor == Flavor::Integral && !v.is_integral() {
        return Err(Error::IntegralityRequired);
    }
    let mut cur = v.clone();
    let mut transport = MatrixLaurent::identity(v.size());
    for (index, mv) in cert.moves.iter().enumerate() {
        let next = apply_move(&cur, mv, cert.flavor)
            .map_err(|e| Error::MoveFailed { index, source: Box::new(e) })?;
        transport = move_transport(mv, &cur).mul(&transport);
        cur = next;
    }
    Ok(CertificateOutcome { result: cur, transport })
}

/// Does the certificate carry `from` exactly to `to`?
pub fn verify_certificate(from: &SeifertMatrix, to: &SeifertMatrix, cert: &Certificate) -> Result<bool> {
    Ok(apply_certificate(from, cert)?.result == *to)
}

/// Reduces `v` to an invertible (possibly empty) Seifert matrix.
///
/// While `det V = 0`, a primitive integral vector `u` with `u^t V = 0` is
/// completed to an integral symplectic matrix `P` with first row `u`; then
/// `P V P^t` has the row-enlargement pattern and is reduced. The certificate
/// alternates these integral congruences and row reductions.
pub fn reduce_to_invertible(v: &SeifertMatrix) -> (SeifertMatrix, Certificate) {
    let mut cur = v.clone();
    let mut moves = Vec::new();
    while !cur.is_invertible() {
        let kernel = cur.matrix().transpose().nullspace();
        let u = primitive_vector(&kernel[0]).expect("kernel vectors are nonzero");
        let w = symplectic_completion(&u).expect("primitive vector completes");
        let p = to_rational(&w).transpose();
        let congruent = congruence(&cur, &p).expect("completion is symplectic");
        cur = row_reduce(&congruent).expect("left-kernel vector forces the row pattern");
        moves.push(ElementaryMove::Congruence { p });
        moves.push(ElementaryMove::RowReduce);
    }
    let flavor = if v.is_integral() { Flavor::Integral } else { Flavor::SemiIntegral };
    (cur, Certificate { flavor, moves })
}
