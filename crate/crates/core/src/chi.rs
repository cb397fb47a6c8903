//! The functional `χ` on `Q(t)`.
//!
//! `Q(t)` splits over `Q` as `Λ ⊕ E`, where `Λ = Q[t, t^-1, (1-t)^-1]` and
//! `E` holds the proper fractions whose denominator is prime to `t` and
//! `1 - t`. `χ` vanishes on `Λ` and sends `e ∈ E` to `e'(1)`.

use num_traits::Zero;

use crate::error::Result;
use crate::laurent::Laurent;
use crate::ratfunc::RationalFunction;
use crate::{int, Rational};

/// The two components of `f = lambda_part + proper_part`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiDecomposition {
    /// Member of `Λ`.
    pub lambda_part: RationalFunction,
    /// Member of `E`: proper, denominator prime to `t` and `1 - t`.
    pub proper_part: RationalFunction,
}

fn one_minus_t() -> Laurent {
    Laurent::from_ints(0, &[1, -1])
}

/// Splits the reduced denominator as `(1-t)^b * c` with `c(1) != 0`.
/// The `t`-power is already absent from reduced denominators.
fn split_denominator(den: &Laurent) -> (u32, Laurent) {
    let mut c = den.clone();
    let mut b = 0;
    let root = one_minus_t();
    while let Some(q) = c.laurent_div_exact(&root) {
        if c.is_unit() {
            break;
        }
        c = q;
        b += 1;
    }
    (b, c)
}

/// Decomposes `f` along `Q(t) = Λ ⊕ E`. The decomposition is unique.
/// A denominator `t^k (1 - t)^b c` with `c` prime to `t` and `1 - t`, with
/// the inverses needed to project numerators onto the proper part `r / c`.
pub(crate) struct ProperSplit {
    shift: i64,
    b: u32,
    cofactor: Laurent,
    inv_t: Laurent,
    inv_one_minus_t: Laurent,
}

impl ProperSplit {
    /// `None` when the cofactor is constant, so every fraction over `den` lies in `Λ`.
    pub(crate) fn new(den: &Laurent) -> Option<Self> {
        let (shift, d0) = den.strip_t();
        let (b, cofactor) = split_denominator(&d0);
        if cofactor.degree().finite() == Some(0) {
            return None;
        }
        let inv_t = Laurent::t_inverse_mod(&cofactor);
        let inv_one_minus_t = Laurent::one_minus_t_inverse_mod(&cofactor);
        Some(ProperSplit { shift, b, cofactor, inv_t, inv_one_minus_t })
    }

    /// Numerator `r` of the proper part `r / c` of `num / den`.
    pub(crate) fn proper_numerator(&self, num: &Laurent) -> Laurent {
        let c = &self.cofactor;
        let (k, n0) = num.strip_t();
        let e = k - self.shift;
        let mut r = n0.poly_rem(c);
        let step = if e > 0 { Laurent::t() } else { self.inv_t.clone() };
        for _ in 0..e.unsigned_abs() {
            r = (&r * &step).poly_rem(c);
        }
        for _ in 0..self.b {
            r = (&r * &self.inv_one_minus_t).poly_rem(c);
        }
        r
    }

    /// `χ(num / den) = E'(1)` for `E = r / c`.
    pub(crate) fn chi(&self, num: &Laurent) -> Result<Rational> {
        let r = self.proper_numerator(num);
        let c = &self.cofactor;
        let one = int(1);
        let (r1, dr1) = (r.eval(&one)?, r.derivative().eval(&one)?);
        let (c1, dc1) = (c.eval(&one)?, c.derivative().eval(&one)?);
        Ok((dr1 * &c1 - r1 * dc1) / (&c1 * &c1))
    }
}

pub fn decompose_chi(f: &RationalFunction) -> ChiDecomposition {
    match ProperSplit::new(f.denominator()) {
        None => ChiDecomposition { lambda_part: f.clone(), proper_part: RationalFunction::zero() },
        Some(split) => {
            let r = split.proper_numerator(f.numerator());
            let proper = RationalFunction::new(r, split.cofactor).expect("nonzero cofactor");
            ChiDecomposition { lambda_part: f - &proper, proper_part: proper }
        }
    }
}

pub fn chi(f: &RationalFunction) -> Result<Rational> {
    match ProperSplit::new(f.denominator()) {
        None => Ok(Rational::zero()),
        Some(split) => split.chi(f.numerator()),
    }
}

pub fn in_lambda(f: &RationalFunction) -> bool {
    let (_, c) = split_denominator(f.denominator());
    c.degree().finite() == Some(0)
}
