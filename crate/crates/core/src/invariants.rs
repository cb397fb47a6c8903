//! Invariants computed from a Seifert matrix: the presentation `tV - V^t` of
//! the Alexander module, its polynomial and invariant factors, the
//! Blanchfield matrix, the `t`- and `z`-actions, the scalar form and the
//! integral elementary ideals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::chi::ProperSplit;
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::matrix::{MatrixLaurent, MatrixQ, MatrixRf};
use crate::normal_form::{combinations, laurent_invariant_factors};
use crate::ratfunc::RationalFunction;
use crate::seifert::{j_matrix, SeifertMatrix};
use crate::{int, Rational};

/// `W = tV - V^t`, presenting the Alexander module on `2g` generators.
pub fn presentation(v: &SeifertMatrix) -> MatrixLaurent {
    let m = v.matrix();
    let n = v.size();
    MatrixLaurent::from_fn(n, n, |i, j| Laurent::linear(m[(i, j)].clone(), -m[(j, i)].clone()))
}

/// `det(tV - V^t)` without normalization.
pub fn alexander_determinant(v: &SeifertMatrix) -> Laurent {
    presentation(v).determinant().expect("square")
}

/// `det(tV - V^t)` shifted to lowest exponent zero. Its value at `t = 1` is
/// `det J = 1`, which fixes the sign.
pub fn alexander_polynomial(v: &SeifertMatrix) -> Laurent {
    alexander_determinant(v).strip_t().1
}

/// Nonunit invariant factors of the Alexander module over `Q[t, t^-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDecomposition {
    /// Each divides the next; normalized to coprime integer coefficients,
    /// lowest exponent zero and positive leading coefficient.
    pub invariant_factors: Vec<Laurent>,
}

impl ModuleDecomposition {
    /// The last invariant factor (`1` for the trivial module).
    pub fn annihilator(&self) -> Laurent {
        self.invariant_factors.last().cloned().unwrap_or_else(Laurent::one)
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }
}

pub fn module_decomposition(v: &SeifertMatrix) -> ModuleDecomposition {
    let invariant_factors = laurent_invariant_factors(&presentation(v))
        .into_iter()
        .filter(|d| !d.is_unit())
        .collect();
    ModuleDecomposition { invariant_factors }
}

/// `Φ(t) = (1 - t)(tV - V^t)^-1`, with `φ(b_i, b_k) = Φ_ki`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlanchfieldMatrix {
    pub entries: MatrixRf,
    /// Entries reduced modulo `Q[t, t^-1]`.
    pub reduced: MatrixRf,
}

impl BlanchfieldMatrix {
    /// `φ(b_i, b_k)` as an element of `Q(t)`.
    pub fn pairing(&self, i: usize, k: usize) -> &RationalFunction {
        &self.entries[(k, i)]
    }

    /// `φ(b_i, b_k)` modulo `Q[t, t^-1]`.
    pub fn reduced_pairing(&self, i: usize, k: usize) -> &RationalFunction {
        &self.reduced[(k, i)]
    }
}

/// `(adj W, det W)` for `W = tV - V^t`.
///
/// `W` is linear in `t`, so the cofactors have degree below `n` and the
/// determinant degree at most `n`: both are interpolated from `n + 1` integer
/// points where `W` is invertible, each handled by rational elimination.
fn presentation_adjugate(v: &SeifertMatrix) -> (MatrixLaurent, Laurent) {
    let n = v.size();
    let m = v.matrix();
    let mut xs = Vec::with_capacity(n + 1);
    let mut dets = Vec::with_capacity(n + 1);
    let mut adjs = Vec::with_capacity(n + 1);
    let mut x = 1i64;
    while xs.len() <= n {
        let t = int(x);
        let wt = MatrixQ::from_fn(n, n, |i, j| &t * &m[(i, j)] - &m[(j, i)]);
        let d = wt.determinant().expect("square");
        if !d.is_zero() {
            adjs.push(wt.inverse().expect("nonzero determinant").scale(&d));
            dets.push(d);
            xs.push(t);
        }
        x += 1;
    }
    let basis = lagrange_basis(&xs);
    let combine = |ys: &mut dyn Iterator<Item = &Rational>| -> Laurent {
        ys.zip(&basis).fold(Laurent::zero(), |acc, (y, b)| &acc + &b.scale(y))
    };
    let det = combine(&mut dets.iter());
    let adj = MatrixLaurent::from_fn(n, n, |i, j| combine(&mut adjs.iter().map(|a| &a[(i, j)])));
    (adj, det)
}

/// Lagrange basis polynomials for distinct nodes.
fn lagrange_basis(xs: &[Rational]) -> Vec<Laurent> {
    xs.iter()
        .enumerate()
        .map(|(i, xi)| {
            let mut num = Laurent::one();
            let mut den = Rational::one();
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    num = &num * &Laurent::linear(int(1), -xj.clone());
                    den *= xi - xj;
                }
            }
            num.scale(&den.recip())
        })
        .collect()
}

pub fn blanchfield_matrix(v: &SeifertMatrix) -> BlanchfieldMatrix {
    let (adj, det) = presentation_adjugate(v);
    let one_minus_t = Laurent::from_ints(0, &[1, -1]);
    let entries = adj.map(|a| {
        RationalFunction::new(&one_minus_t * a, det.clone()).expect("det(tV - V^t) is nonzero at t = 1")
    });
    let reduced = entries.map(RationalFunction::fractional_part);
    BlanchfieldMatrix { entries, reduced }
}

fn require_invertible(v: &SeifertMatrix) -> Result<MatrixQ> {
    v.matrix().inverse().map_err(|_| Error::RequiresInvertible)
}

/// `T = V^t V^-1`, the action of `t` on the generators.
pub fn t_action(v: &SeifertMatrix) -> Result<MatrixQ> {
    let inv = require_invertible(v)?;
    Ok(v.matrix().transpose().mul(&inv))
}

/// `Z = -V J`, the action of `z = (1 - t)^-1`.
pub fn z_action(v: &SeifertMatrix) -> Result<MatrixQ> {
    require_invertible(v)?;
    Ok(v.matrix().mul(&j_matrix(v.size())).neg())
}

/// The scalar form `S_ij = χ(φ(b_j, b_i))` on the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarForm {
    pub matrix: MatrixQ,
    /// Whether `S == J`.
    pub equals_j: bool,
}

pub fn scalar_form(v: &SeifertMatrix) -> Result<ScalarForm> {
    require_invertible(v)?;
    // S_ij = χ(Φ_ij) with Φ = (1 - t) adj(W) / det(W); χ does not need lowest terms
    let (adj, det) = presentation_adjugate(v);
    let one_minus_t = Laurent::from_ints(0, &[1, -1]);
    let n = v.size();
    let mut s = MatrixQ::zeros(n, n);
    if let Some(split) = ProperSplit::new(&det) {
        for i in 0..n {
            for j in 0..n {
                s[(i, j)] = split.chi(&(&one_minus_t * &adj[(i, j)]))?;
            }
        }
    }
    let equals_j = s == j_matrix(n);
    Ok(ScalarForm { matrix: s, equals_j })
}

/// The `k`-th elementary ideal of the integral Alexander module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryIdeal {
    pub index: usize,
    /// Nonzero minors, normalized up to `±t^k` and deduplicated. Empty for
    /// the zero ideal; `[1]` for the unit ideal.
    pub generators: Vec<Laurent>,
}

impl ElementaryIdeal {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Contains a unit `±t^k` of `Z[t, t^-1]`.
    pub fn contains_unit(&self) -> bool {
        self.generators.iter().any(|g| g.is_constant() && g.coeff(0).abs().is_one())
    }
}

/// Generated by the `(2g - k + 1)`-minors of `tV - V^t` over `Z[t, t^-1]`.
pub fn elementary_ideal(v: &SeifertMatrix, k: usize) -> Result<ElementaryIdeal> {
    if !v.is_integral() {
        return Err(Error::IntegralityRequired);
    }
    let n = v.size();
    if k > n {
        return Ok(ElementaryIdeal { index: k, generators: vec![Laurent::one()] });
    }
    if k == 0 {
        return Ok(ElementaryIdeal { index: k, generators: Vec::new() });
    }
    let m = n - k + 1;
    let w = presentation(v);
    let mut generators: Vec<Laurent> = Vec::new();
    for rows in combinations(n, m) {
        for cols in combinations(n, m) {
            let minor = w.select(&rows, &cols).determinant().expect("square").unit_normalized();
            if !minor.is_zero() && !generators.contains(&minor) {
                generators.push(minor);
            }
        }
    }
    Ok(ElementaryIdeal { index: k, generators })
}

/// Image of an ideal of `Z[t, t^-1]` under `t -> a/b`, a ring map onto
/// `Z[1/(ab)]`. Its ideals are `gZ[1/(ab)]` with `g >= 0` prime to `ab`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluatedIdeal {
    pub point: Rational,
    /// Values of the generators at the point.
    pub values: Vec<Rational>,
    /// Canonical generator `g`: `0` for the zero ideal, `1` for the unit ideal.
    pub generator: BigInt,
}

impl EvaluatedIdeal {
    /// `Z` itself when the point is `±1`, otherwise `Z[1/(ab)]`.
    pub fn ring(&self) -> String {
        let ab = self.point.numer() * self.point.denom();
        if ab.abs().is_one() {
            "Z".into()
        } else {
            format!("Z[1/{}]", ab.abs())
        }
    }
}

fn strip_primes_of(mut g: BigInt, units: &BigInt) -> BigInt {
    if g.is_zero() {
        return g;
    }
    loop {
        let c = g.gcd(units);
        if c.is_one() {
            return g;
        }
        g /= c;
    }
}

pub fn evaluate_ideal(ideal: &ElementaryIdeal, point: &Rational) -> Result<EvaluatedIdeal> {
    if point.is_zero() {
        return Err(Error::invalid("t cannot be evaluated at 0: t is a unit"));
    }
    let values: Vec<Rational> = ideal.generators.iter().map(|g| g.eval(point)).collect::<Result<_>>()?;
    let g = values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v.numer()));
    let units = point.numer() * point.denom();
    let generator = strip_primes_of(g, &units);
    Ok(EvaluatedIdeal { point: point.clone(), values, generator })
}

/// Evidence that two integral Seifert matrices have non-isomorphic integral
/// Alexander modules: evaluated elementary ideals differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralWitness {
    pub ideal_index: usize,
    pub point: Rational,
    pub values: (BigInt, BigInt),
}

impl std::fmt::Display for IntegralWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "E{}@t={}: {} vs {}", self.ideal_index, self.point, self.values.0, self.values.1)
    }
}

/// Outcome of comparing invariants. Never asserts equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishReport {
    pub alexander_equal: bool,
    pub factors_equal: bool,
    /// `None` when no integral obstruction was found or either input is not integral.
    pub integral_witness: Option<IntegralWitness>,
}

impl DistinguishReport {
    /// Rational invariants differ: not even rationally S-equivalent.
    pub fn rational_obstruction(&self) -> bool {
        !(self.alexander_equal && self.factors_equal)
    }

    pub fn has_obstruction(&self) -> bool {
        self.rational_obstruction() || self.integral_witness.is_some()
    }

    pub fn summary(&self) -> String {
        if !self.alexander_equal {
            "Alexander polynomials differ".into()
        } else if !self.factors_equal {
            "invariant factors over Q[t,t^-1] differ".into()
        } else if let Some(w) = &self.integral_witness {
            w.to_string()
        } else {
            "no obstruction found".into()
        }
    }
}

/// Compares the rational invariants and, when both matrices are integral,
/// the elementary ideals evaluated at each of `points`.
pub fn distinguish(v: &SeifertMatrix, w: &SeifertMatrix, points: &[Rational]) -> Result<DistinguishReport> {
    let alexander_equal = alexander_polynomial(v) == alexander_polynomial(w);
    let factors_equal = module_decomposition(v) == module_decomposition(w);
    let mut integral_witness = None;
    if v.is_integral() && w.is_integral() {
        'outer: for k in 1..=v.size().max(w.size()) {
            let (iv, iw) = (elementary_ideal(v, k)?, elementary_ideal(w, k)?);
            if iv == iw {
                continue;
            }
            for p in points {
                let (ev, ew) = (evaluate_ideal(&iv, p)?, evaluate_ideal(&iw, p)?);
                if ev.generator != ew.generator {
                    integral_witness = Some(IntegralWitness {
                        ideal_index: k,
                        point: p.clone(),
                        values: (ev.generator, ew.generator),
                    });
                    break 'outer;
                }
            }
        }
    }
    Ok(DistinguishReport { alexander_equal, factors_equal, integral_witness })
}

/// The default evaluation set `{-1}`.
pub fn default_points() -> Vec<Rational> {
    vec![int(-1)]
}
