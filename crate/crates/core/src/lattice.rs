//! Scalar spaces, self-dual and admissible lattices, symplectic bases and
//! `n`-adjacency.
//!
//! A scalar space is `Q^{2g}` with the action `Z` of `z = (1 - t)^-1` and a
//! nondegenerate antisymmetric form `[x, y] = x^t Φ y` satisfying
//! `Z^t Φ = Φ (I - Z)`. Lattices are given by a basis matrix whose columns
//! are coordinates in the reference basis.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::{lattice_basis, pairing, primitive_vector, symplectic_basis_of, IntVec};
use crate::matrix::{MatrixQ, MatrixZ};
use crate::normal_form::{gcd_with_bezout, hermite_normal_form, smith_normal_form};
use crate::seifert::{j_matrix, SeifertMatrix};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarSpace {
    z: MatrixQ,
    phi: MatrixQ,
}

impl ScalarSpace {
    /// Checks shapes, antisymmetry, nondegeneracy and `Z^t Φ = Φ (I - Z)`.
    pub fn new(z: MatrixQ, phi: MatrixQ) -> Result<Self> {
        let n = phi.nrows();
        if !phi.is_square() || z.nrows() != n || z.ncols() != n || !n.is_multiple_of(2) {
            return Err(Error::Lattice("Z and Φ must be square of the same even size".into()));
        }
        if phi.transpose() != phi.neg() {
            return Err(Error::Lattice("form is not antisymmetric".into()));
        }
        if phi.determinant()?.is_zero() {
            return Err(Error::Lattice("form is degenerate".into()));
        }
        if z.transpose().mul(&phi) != phi.mul(&MatrixQ::identity(n).sub(&z)) {
            return Err(Error::Lattice("Z is not compatible with the form: Z^t Φ != Φ (I - Z)".into()));
        }
        Ok(ScalarSpace { z, phi })
    }

    /// `Z = -VJ` and `Φ = -J` for an integral invertible Seifert matrix.
    pub fn from_seifert(v: &SeifertMatrix) -> Result<Self> {
        if !v.is_integral() {
            return Err(Error::IntegralityRequired);
        }
        if !v.is_invertible() {
            return Err(Error::RequiresInvertible);
        }
        let j = j_matrix(v.size());
        Self::new(v.matrix().mul(&j).neg(), j.neg())
    }

    pub fn dimension(&self) -> usize {
        self.phi.nrows()
    }

    pub fn z_matrix(&self) -> &MatrixQ {
        &self.z
    }

    pub fn form_matrix(&self) -> &MatrixQ {
        &self.phi
    }
}

/// A full-rank lattice in a scalar space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    space: ScalarSpace,
    basis: MatrixQ,
}

/// Symplectic bases `b` of `Γ` and `(n b_1, b_2 / n, b_3, ...)` of `Γ'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyWitness {
    pub n: BigInt,
    /// Columns `b_1, ..., b_2g` in reference coordinates.
    pub basis_b: MatrixQ,
    /// Columns `n b_1, b_2 / n, b_3, ..., b_2g`.
    pub basis_b_prime: MatrixQ,
}

impl AdjacencyWitness {
    /// Exact check of both symplectic-basis claims.
    pub fn validate(&self, gamma: &Lattice, gamma_prime: &Lattice) -> bool {
        let n = Rational::from_integer(self.n.clone());
        let expected = MatrixQ::from_fn(self.basis_b.nrows(), self.basis_b.ncols(), |i, j| match j {
            0 => &self.basis_b[(i, 0)] * &n,
            1 => &self.basis_b[(i, 1)] / &n,
            _ => self.basis_b[(i, j)].clone(),
        });
        expected == self.basis_b_prime
            && gamma.is_symplectic_basis(&self.basis_b)
            && gamma_prime.is_symplectic_basis(&self.basis_b_prime)
    }
}

/// Seifert matrices of an adjacent pair with `target = Δ_n source Δ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacentSeifertPair {
    pub n: BigInt,
    /// Seifert matrix of `Γ'` in the basis `(n b_1, b_2 / n, b_3, ...)`.
    pub source: SeifertMatrix,
    /// Seifert matrix of `Γ` in the basis `b`.
    pub target: SeifertMatrix,
}

/// One link of a lattice chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    pub index: usize,
    pub adjacency: Option<BigInt>,
    pub z_inclusion: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    /// Index of every lattice that is not admissible.
    pub inadmissible: Vec<usize>,
    pub steps: Vec<ChainStep>,
}

impl ChainReport {
    pub fn is_valid(&self) -> bool {
        self.inadmissible.is_empty() && self.steps.iter().all(|s| s.adjacency.is_some() && s.z_inclusion)
    }
}

fn denominator_free(m: &MatrixQ) -> MatrixZ {
    let l = m.entries().iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    m.scale(&Rational::from_integer(l)).to_integer().expect("denominators cleared")
}

fn cols_to_matrix(n: usize, cols: &[IntVec]) -> MatrixQ {
    MatrixQ::from_integer(&MatrixZ::from_cols(n, cols).expect("consistent columns"))
}

impl Lattice {
    pub fn new(space: ScalarSpace, basis: MatrixQ) -> Result<Self> {
        let n = space.dimension();
        if basis.nrows() != n || basis.ncols() != n {
            return Err(Error::Lattice(format!(
                "basis is {}x{}, expected {n}x{n}",
                basis.nrows(),
                basis.ncols()
            )));
        }
        if basis.determinant()?.is_zero() {
            return Err(Error::Lattice("basis is not of full rank".into()));
        }
        Ok(Lattice { space, basis })
    }

    /// The lattice spanned by the reference basis.
    pub fn standard(space: ScalarSpace) -> Self {
        let n = space.dimension();
        Lattice { space, basis: MatrixQ::identity(n) }
    }

    pub fn space(&self) -> &ScalarSpace {
        &self.space
    }

    pub fn basis(&self) -> &MatrixQ {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.space.dimension()
    }

    /// `B^t Φ B`.
    pub fn gram(&self) -> MatrixQ {
        self.gram_of(&self.basis)
    }

    fn gram_of(&self, b: &MatrixQ) -> MatrixQ {
        b.transpose().mul(&self.space.phi).mul(b)
    }

    /// Coordinates of reference vectors (columns of `m`) in the lattice basis.
    pub fn coordinates(&self, m: &MatrixQ) -> MatrixQ {
        self.basis.inverse().expect("full rank").mul(m)
    }

    /// Every column of `m` lies in the lattice.
    pub fn contains_all(&self, m: &MatrixQ) -> bool {
        self.coordinates(m).is_integral()
    }

    /// Same set of vectors (possibly different bases).
    pub fn same_lattice(&self, other: &Lattice) -> bool {
        let c = self.coordinates(&other.basis);
        c.is_integral() && c.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// Is `m` (columns) a basis of this lattice with Gram matrix `-J`?
    pub fn is_symplectic_basis(&self, m: &MatrixQ) -> bool {
        m.nrows() == self.dimension()
            && m.ncols() == self.dimension()
            && self.gram_of(m) == j_matrix(self.dimension()).neg()
            && self.coordinates(m).is_integral()
            && self.coordinates(m).determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// The Gram matrix is integral and unimodular.
    pub fn is_self_dual(&self) -> bool {
        let g = self.gram();
        g.is_integral() && g.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// `Z` in the lattice basis: `B^-1 Z B`.
    pub fn z_in_basis(&self) -> MatrixQ {
        self.coordinates(&self.space.z.mul(&self.basis))
    }

    pub fn is_admissible(&self) -> bool {
        self.is_self_dual() && self.z_in_basis().is_integral()
    }

    /// `z Γ ⊆ Γ'`.
    pub fn z_maps_into(&self, other: &Lattice) -> bool {
        other.contains_all(&self.space.z.mul(&self.basis))
    }

    fn integral_gram(&self) -> Result<MatrixZ> {
        if !self.is_self_dual() {
            return Err(Error::Lattice("lattice is not self-dual".into()));
        }
        Ok(self.gram().to_integer().expect("integral gram"))
    }

    /// A basis with Gram matrix `-J`, as columns in reference coordinates.
    pub fn symplectic_basis(&self) -> Result<MatrixQ> {
        let g = self.integral_gram()?;
        let n = self.dimension();
        let standard: Vec<IntVec> = (0..n).map(|i| unit(n, i)).collect();
        let coords = symplectic_basis_of(&g, &standard, None)?;
        let b = self.basis.mul(&cols_to_matrix(n, &coords));
        debug_assert!(self.is_symplectic_basis(&b));
        Ok(b)
    }

    fn check_ambient(&self, other: &Lattice) -> Result<()> {
        if self.space != other.space {
            return Err(Error::Lattice("lattices live in different scalar spaces".into()));
        }
        Ok(())
    }

    /// Bases of `Γ ∩ Γ'` in the coordinates of `Γ` and of `Γ'` (same vectors,
    /// same order).
    pub fn intersection_coordinates(&self, other: &Lattice) -> Result<(MatrixZ, MatrixZ)> {
        self.check_ambient(other)?;
        let n = self.dimension();
        // kernel of [B | -B'] over Z
        let joined = MatrixQ::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.basis[(i, j)].clone()
            } else {
                -other.basis[(i, j - n)].clone()
            }
        });
        let (u, h) = hermite_normal_form(&denominator_free(&joined));
        let kernel: Vec<usize> = (0..2 * n).filter(|&j| (0..n).all(|i| h[(i, j)].is_zero())).collect();
        debug_assert_eq!(kernel.len(), n);
        let x = MatrixZ::from_fn(n, kernel.len(), |i, j| u[(i, kernel[j])].clone());
        let y = MatrixZ::from_fn(n, kernel.len(), |i, j| u[(i + n, kernel[j])].clone());
        Ok((x, y))
    }

    /// Basis of `Γ ∩ Γ'` in reference coordinates.
    pub fn intersection(&self, other: &Lattice) -> Result<Lattice> {
        let (x, _) = self.intersection_coordinates(other)?;
        let basis = self.basis.mul(&MatrixQ::from_integer(&x));
        Lattice::new(self.space.clone(), basis)
    }

    /// Invariant factors of `Γ / (Γ ∩ Γ')` and `Γ' / (Γ ∩ Γ')`.
    pub fn quotient_invariants(&self, other: &Lattice) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
        let (x, y) = self.intersection_coordinates(other)?;
        let f = |m: &MatrixZ| smith_normal_form(m).diag.into_iter().map(|d| d.abs()).collect();
        Ok((f(&x), f(&y)))
    }

    /// `Some(n)` iff both quotients by the intersection are cyclic of order `n`.
    pub fn adjacency(&self, other: &Lattice) -> Result<Option<BigInt>> {
        let (a, b) = self.quotient_invariants(other)?;
        Ok(cyclic_order(&a).filter(|n| cyclic_order(&b).as_ref() == Some(n)))
    }

    /// Symplectic basis `b` of `Γ` such that `(n b_1, b_2 / n, b_3, ...)`
    /// is a symplectic basis of `Γ'`.
    ///
    /// `b_1` is the generator of `Γ / (Γ ∩ Γ')` read from the Smith transform;
    /// `n b_1` is primitive in `Γ'`, so a Bezout combination gives `b_2' ∈ Γ'`
    /// with `[n b_1, b_2'] = 1`, and `b_2 = n b_2'`. The rest is a symplectic
    /// basis of the common orthogonal complement.
    pub fn adjacent_symplectic_bases(&self, other: &Lattice) -> Result<AdjacencyWitness> {
        let g = self.integral_gram()?;
        other.integral_gram()?;
        let n = self
            .adjacency(other)?
            .ok_or_else(|| Error::Lattice("lattices are not adjacent".into()))?;
        let dim = self.dimension();
        let nq = Rational::from_integer(n.clone());
        let witness = if n.is_one() {
            let b = self.symplectic_basis()?;
            AdjacencyWitness { n, basis_b_prime: b.clone(), basis_b: b }
        } else {
            let (x, _) = self.intersection_coordinates(other)?;
            let snf = smith_normal_form(&x);
            let left_inv = MatrixQ::from_integer(&snf.left).inverse()?;
            let c1 = primitive_vector(&left_inv.col(dim - 1)).expect("nonzero column");
            let b1 = self.basis.mul(&cols_to_matrix(dim, std::slice::from_ref(&c1)));
            // pairing partner of n b_1 inside Γ'
            let nb1 = b1.scale(&nq);
            let phi = &self.space.phi;
            let s: Vec<Rational> = (0..dim)
                .map(|i| nb1.transpose().mul(phi).mul(&other.basis.select(&(0..dim).collect::<Vec<_>>(), &[i]))[(0, 0)].clone())
                .collect();
            if !s.iter().all(|x| x.is_integer()) {
                return Err(Error::Lattice("Γ' is not self-dual".into()));
            }
            let si: Vec<BigInt> = s.iter().map(|x| x.to_integer()).collect();
            let (gcd, u) = gcd_with_bezout(&si);
            if !gcd.is_one() {
                return Err(Error::Lattice("n b_1 is not primitive in Γ'".into()));
            }
            let uq = MatrixQ::from_fn(dim, 1, |i, _| Rational::from_integer(u[i].clone()));
            let b2 = other.basis.mul(&uq).scale(&nq);
            let c2m = self.coordinates(&b2);
            if !c2m.is_integral() {
                return Err(Error::Lattice("pairing partner does not lie in Γ".into()));
            }
            let c2: IntVec = c2m.to_integer().unwrap().col(0);
            // project Γ onto the orthogonal of span(b_1, b_2)
            let projected: Vec<IntVec> = (0..dim)
                .map(|i| {
                    let e = unit(dim, i);
                    let a = pairing(&g, &e, &c2);
                    let b = pairing(&g, &c1, &e);
                    (0..dim).map(|k| &e[k] - &a * &c1[k] - &b * &c2[k]).collect()
                })
                .collect();
            let complement = lattice_basis(dim, &projected);
            let rest = symplectic_basis_of(&g, &complement, None)?;
            let mut coords = vec![c1, c2];
            coords.extend(rest);
            let basis_b = self.basis.mul(&cols_to_matrix(dim, &coords));
            let basis_b_prime = MatrixQ::from_fn(dim, dim, |i, j| match j {
                0 => &basis_b[(i, 0)] * &nq,
                1 => &basis_b[(i, 1)] / &nq,
                _ => basis_b[(i, j)].clone(),
            });
            AdjacencyWitness { n, basis_b, basis_b_prime }
        };
        if !witness.validate(self, other) {
            return Err(Error::Lattice("constructed bases failed validation".into()));
        }
        Ok(witness)
    }

    /// `V = Z_b J` with `Z_b` the action of `z` in the symplectic basis `basis`.
    pub fn seifert_matrix(&self, basis: &MatrixQ) -> Result<SeifertMatrix> {
        if !self.is_admissible() {
            return Err(Error::Lattice("lattice is not admissible".into()));
        }
        if !self.is_symplectic_basis(basis) {
            return Err(Error::Lattice("basis is not a symplectic basis of the lattice".into()));
        }
        let zb = basis.inverse()?.mul(&self.space.z).mul(basis);
        let v = SeifertMatrix::validate(zb.mul(&j_matrix(self.dimension())))?;
        debug_assert!(v.is_integral());
        Ok(v)
    }

    /// Seifert matrices of an adjacent admissible pair related by `Δ_n`.
    pub fn adjacent_seifert_pair(&self, other: &Lattice) -> Result<AdjacentSeifertPair> {
        let w = self.adjacent_symplectic_bases(other)?;
        let source = other.seifert_matrix(&w.basis_b_prime)?;
        let target = self.seifert_matrix(&w.basis_b)?;
        Ok(AdjacentSeifertPair { n: w.n, source, target })
    }
}

fn unit(n: usize, i: usize) -> IntVec {
    (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()
}

/// `Some(n)` when the invariant factors are `[1, ..., 1, n]` with `n >= 1`.
fn cyclic_order(factors: &[BigInt]) -> Option<BigInt> {
    let (last, init) = factors.split_last()?;
    (init.iter().all(|d| d.is_one()) && !last.is_zero()).then(|| last.clone())
}

/// Checks admissibility of every lattice, and adjacency plus the
/// `z`-inclusion in one direction for every consecutive pair.
pub fn verify_chain(chain: &[Lattice]) -> Result<ChainReport> {
    let inadmissible = chain.iter().enumerate().filter(|(_, l)| !l.is_admissible()).map(|(i, _)| i).collect();
    let mut steps = Vec::new();
    for (index, pair) in chain.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        let adjacency = a.adjacency(b)?;
        let z_inclusion = a.z_maps_into(b) || b.z_maps_into(a);
        steps.push(ChainStep { index: index + 1, adjacency, z_inclusion });
    }
    Ok(ChainReport { inadmissible, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn v1() -> SeifertMatrix {
        SeifertMatrix::from_i64(&[&[-1, 0], &[1, 2]]).unwrap()
    }

    fn space() -> ScalarSpace {
        ScalarSpace::from_seifert(&v1()).unwrap()
    }

    fn lat(b: MatrixQ) -> Lattice {
        Lattice::new(space(), b).unwrap()
    }

    #[test]
    fn spaces() {
        let s = space();
        assert_eq!(s.z_matrix(), &MatrixQ::from_i64(&[&[0, -1], &[-2, 1]]));
        assert_eq!(s.form_matrix(), &j_matrix(2).neg());
        let s2 = ScalarSpace::from_seifert(&SeifertMatrix::from_i64(&[&[3, 1], &[2, 0]]).unwrap()).unwrap();
        assert_eq!(s2.z_matrix(), &MatrixQ::from_i64(&[&[-1, 3], &[0, 2]]));
        let trivial = SeifertMatrix::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        assert_eq!(ScalarSpace::from_seifert(&trivial), Err(Error::RequiresInvertible));
        assert!(ScalarSpace::new(MatrixQ::identity(2), j_matrix(2)).is_err());
    }

    #[test]
    fn self_duality_and_admissibility() {
        let std = Lattice::standard(space());
        assert!(std.is_self_dual() && std.is_admissible());
        let d = lat(MatrixQ::diagonal(&[int(2), rat(1, 2)]));
        assert!(d.is_self_dual());
        let zb = MatrixQ::from_rows(vec![vec![int(0), rat(-1, 4)], vec![int(-8), int(1)]]).unwrap();
        assert_eq!(d.z_in_basis(), zb);
        assert!(!d.is_admissible());
        let bad = lat(MatrixQ::diagonal(&[int(2), int(1)]));
        assert!(!bad.is_self_dual() && !bad.is_admissible());
        assert!(bad.symplectic_basis().is_err());
    }

    #[test]
    fn symplectic_bases() {
        let std = Lattice::standard(space());
        assert_eq!(std.symplectic_basis().unwrap(), MatrixQ::identity(2));
        let scrambled = lat(MatrixQ::from_i64(&[&[2, 1], &[1, 1]]).mul(&MatrixQ::diagonal(&[int(3), rat(1, 3)])));
        let b = scrambled.symplectic_basis().unwrap();
        assert!(scrambled.is_symplectic_basis(&b));
    }

    #[test]
    fn adjacency_examples() {
        let std = Lattice::standard(space());
        let d = lat(MatrixQ::diagonal(&[int(2), rat(1, 2)]));
        assert_eq!(std.adjacency(&d).unwrap(), Some(BigInt::from(2)));
        assert_eq!(d.adjacency(&std).unwrap(), Some(BigInt::from(2)));
        assert_eq!(std.adjacency(&std).unwrap(), Some(BigInt::one()));
        let inter = std.intersection(&d).unwrap();
        assert!(inter.same_lattice(&lat(MatrixQ::diagonal(&[int(2), int(1)]))));
        let twice = lat(MatrixQ::from_i64(&[&[2, 2], &[0, 2]]));
        assert_eq!(std.adjacency(&twice).unwrap(), None);
    }

    #[test]
    fn adjacent_bases() {
        let std = Lattice::standard(space());
        let d = lat(MatrixQ::diagonal(&[int(2), rat(1, 2)]));
        let w = std.adjacent_symplectic_bases(&d).unwrap();
        assert_eq!(w.n, BigInt::from(2));
        assert!(w.validate(&std, &d));
        let same = std.adjacent_symplectic_bases(&std).unwrap();
        assert!(same.validate(&std, &std));
    }

    #[test]
    fn seifert_from_lattices() {
        let std = Lattice::standard(space());
        assert_eq!(std.seifert_matrix(&MatrixQ::identity(2)).unwrap(), v1());
        let p = MatrixQ::from_i64(&[&[1, 1], &[0, 1]]);
        // basis B gives V_b = B^-1 V B^-t
        let b = p.inverse().unwrap();
        let vb = std.seifert_matrix(&b).unwrap();
        assert_eq!(vb.matrix(), &p.mul(v1().matrix()).mul(&p.transpose()));
    }

    #[test]
    fn adjacent_pair_is_delta_congruent() {
        // V0 = [[1,1],[2,4]]: second row of Z divisible by 2
        let v0 = SeifertMatrix::from_i64(&[&[1, 1], &[2, 4]]).unwrap();
        let s = ScalarSpace::from_seifert(&v0).unwrap();
        let gamma = Lattice::standard(s.clone());
        let gamma_prime = Lattice::new(s, MatrixQ::diagonal(&[rat(1, 2), int(2)])).unwrap();
        assert!(gamma_prime.is_admissible());
        let pair = gamma.adjacent_seifert_pair(&gamma_prime).unwrap();
        let d = MatrixQ::diagonal(&[int(2), rat(1, 2)]);
        assert_eq!(pair.target.matrix(), &d.mul(pair.source.matrix()).mul(&d));
        let report = verify_chain(&[gamma.clone(), gamma_prime.clone()]).unwrap();
        assert!(report.is_valid(), "{report:?}");
    }
}
