//! Real algebraic numbers given by a polynomial and an isolating interval,
//! with exact sign and floor evaluation of polynomial expressions in the
//! number.
//!
//! Signs are decided in two steps. An exact zero test first: `q(β) = 0` iff
//! `gcd(P, q)` has a root in the isolating interval, which Sturm counting
//! answers without approximation. Otherwise the interval is bisected until
//! interval evaluation of `q` excludes zero; the bisection budget turns a
//! pathological input into an error instead of a guess.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{IntPoly, Interval, QPoly};

/// Default number of bisections allowed for one sign or floor decision.
pub const DEFAULT_REFINEMENT_BUDGET: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Bracket {
    /// The number is this rational.
    Exact(BigRational),
    /// The number is the only root of the modulus in the open interval; the
    /// modulus does not vanish at either endpoint.
    Isolating(BigRational, BigRational),
}

/// A real root of a rational polynomial, located by an isolating interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicReal {
    /// Squarefree monic polynomial with the number as a root.
    modulus: QPoly,
    bracket: Bracket,
    budget: usize,
}

impl AlgebraicReal {
    pub fn rational(r: BigRational) -> Self {
        let modulus = QPoly::from_coeffs(vec![-r.clone(), BigRational::one()]);
        AlgebraicReal {
            modulus,
            bracket: Bracket::Exact(r),
            budget: DEFAULT_REFINEMENT_BUDGET,
        }
    }

    /// The unique root of `poly` in the open interval `(lo, hi)`, which must
    /// also be greater than 1.
    pub fn from_isolating(poly: &IntPoly, lo: BigRational, hi: BigRational) -> Result<Self> {
        if poly.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidBase("polynomial must be nonconstant".into()));
        }
        if lo >= hi {
            return Err(Error::InvalidBase(format!("empty interval ({lo}, {hi})")));
        }
        let p = QPoly::from_int(poly).squarefree();
        if p.eval(&lo).is_zero() || p.eval(&hi).is_zero() {
            return Err(Error::InvalidBase("isolating interval endpoint is a root".into()));
        }
        let n = p.count_roots(&lo, &hi);
        if n != 1 {
            return Err(Error::InvalidBase(format!(
                "interval ({lo}, {hi}) contains {n} roots of {poly}, expected exactly one"
            )));
        }
        let one = BigRational::one();
        let lo = if lo >= one {
            lo
        } else {
            if hi <= one {
                return Err(Error::InvalidBase("root is not greater than 1".into()));
            }
            if p.eval(&one).is_zero() || p.count_roots(&one, &hi) != 1 {
                return Err(Error::InvalidBase("root is not greater than 1".into()));
            }
            one
        };
        let mut a = AlgebraicReal {
            bracket: Bracket::Isolating(lo, hi),
            modulus: p,
            budget: DEFAULT_REFINEMENT_BUDGET,
        };
        if a.modulus.degree() == Some(1) {
            let c = &a.modulus.coeffs()[0];
            a.bracket = Bracket::Exact(-c.clone());
        }
        Ok(a)
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// The squarefree monic polynomial currently used as modulus.
    pub fn modulus(&self) -> &QPoly {
        &self.modulus
    }

    pub fn modulus_degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.bracket {
            Bracket::Exact(r) => Some(r),
            Bracket::Isolating(..) => None,
        }
    }

    /// Current enclosure (closed).
    pub fn interval(&self) -> Interval {
        match &self.bracket {
            Bracket::Exact(r) => Interval::point(r.clone()),
            Bracket::Isolating(lo, hi) => Interval::new(lo.clone(), hi.clone()),
        }
    }

    fn bisect(&mut self) {
        if let Bracket::Isolating(lo, hi) = &self.bracket {
            let mid = (lo + hi) / BigRational::from_integer(2.into());
            let pm = self.modulus.eval(&mid);
            if pm.is_zero() {
                self.bracket = Bracket::Exact(mid);
                return;
            }
            let pl = self.modulus.eval(lo);
            self.bracket = if pl.is_positive() == pm.is_positive() {
                Bracket::Isolating(mid, hi.clone())
            } else {
                Bracket::Isolating(lo.clone(), mid)
            };
        }
    }

    /// Bisects until the enclosure is narrower than `width`.
    pub fn refine_to_width(&mut self, width: &BigRational) -> Result<Interval> {
        let mut steps = 0;
        while &self.interval().width() >= width {
            if steps >= self.budget {
                return Err(Error::RefinementBudget { budget: self.budget });
            }
            self.bisect();
            steps += 1;
        }
        Ok(self.interval())
    }

    /// Enclosure of width below `width`, leaving `self` untouched.
    pub fn enclosure(&self, width: &BigRational) -> Result<Interval> {
        self.clone().refine_to_width(width)
    }

    /// Replaces the modulus by a factor that still vanishes at the number.
    fn shrink_modulus(&mut self, g: QPoly) {
        debug_assert!(self.modulus.rem(&g).is_zero());
        self.modulus = g;
        if self.modulus.degree() == Some(1) {
            let r = -self.modulus.coeffs()[0].clone();
            self.bracket = Bracket::Exact(r);
        }
    }

    /// Reduces an expression modulo the current modulus.
    pub fn reduce(&self, q: &QPoly) -> QPoly {
        q.rem(&self.modulus)
    }

    /// Exact test `q(β) = 0`. May lower the modulus degree when `q` shares a
    /// proper factor with it.
    pub fn is_zero_at(&mut self, q: &QPoly) -> bool {
        let q = self.reduce(q);
        if q.is_zero() {
            return true;
        }
        match &self.bracket {
            Bracket::Exact(r) => q.eval(r).is_zero(),
            Bracket::Isolating(lo, hi) => {
                let g = self.modulus.gcd(&q);
                if g.degree().unwrap_or(0) == 0 {
                    return false;
                }
                if g.count_roots(lo, hi) == 1 {
                    self.shrink_modulus(g);
                    true
                } else {
                    false
                }
            }
        }
    }

    /// Exact sign of `q(β)`.
    pub fn sign_at(&mut self, q: &QPoly) -> Result<Ordering> {
        if self.is_zero_at(q) {
            return Ok(Ordering::Equal);
        }
        let q = self.reduce(q);
        for _ in 0..=self.budget {
            let e = q.eval_interval(&self.interval());
            if e.lo.is_positive() {
                return Ok(Ordering::Greater);
            }
            if e.hi.is_negative() {
                return Ok(Ordering::Less);
            }
            if let Bracket::Exact(r) = &self.bracket {
                return Ok(q.eval(r).cmp(&BigRational::zero()));
            }
            self.bisect();
        }
        Err(Error::RefinementBudget { budget: self.budget })
    }

    /// Exact `⌊q(β)⌋`.
    pub fn floor_at(&mut self, q: &QPoly) -> Result<BigInt> {
        let q = self.reduce(q);
        let mut tested: Option<BigInt> = None;
        for _ in 0..=self.budget {
            if let Bracket::Exact(r) = &self.bracket {
                return Ok(q.eval(r).floor().to_integer());
            }
            let e = q.eval_interval(&self.interval());
            let klo = e.lo.floor().to_integer();
            let khi = e.hi.floor().to_integer();
            if klo == khi {
                return Ok(klo);
            }
            if &khi - &klo == BigInt::one() && tested.as_ref() != Some(&khi) {
                let shifted = q.sub(&QPoly::constant(BigRational::from_integer(khi.clone())));
                if self.is_zero_at(&shifted) {
                    return Ok(khi);
                }
                tested = Some(khi);
            }
            self.bisect();
        }
        Err(Error::RefinementBudget { budget: self.budget })
    }

    /// Whether two algebraic numbers are equal, decided exactly.
    pub fn same_value(&self, other: &AlgebraicReal) -> bool {
        match (&self.bracket, &other.bracket) {
            (Bracket::Exact(a), Bracket::Exact(b)) => a == b,
            (Bracket::Exact(r), Bracket::Isolating(lo, hi)) | (Bracket::Isolating(lo, hi), Bracket::Exact(r)) => {
                let m = if matches!(self.bracket, Bracket::Exact(_)) {
                    &other.modulus
                } else {
                    &self.modulus
                };
                lo < r && r < hi && m.eval(r).is_zero()
            }
            (Bracket::Isolating(a_lo, a_hi), Bracket::Isolating(b_lo, b_hi)) => {
                let lo = a_lo.max(b_lo);
                let hi = a_hi.min(b_hi);
                if lo >= hi {
                    return false;
                }
                let g = self.modulus.gcd(&other.modulus);
                g.degree().unwrap_or(0) > 0 && g.count_roots(lo, hi) >= 1
            }
        }
    }

    /// `⌊β⌋`.
    pub fn floor(&self) -> Result<BigInt> {
        self.clone().floor_at(&QPoly::x())
    }

    /// `⌈β⌉`.
    pub fn ceil(&self) -> Result<BigInt> {
        let f = self.floor()?;
        let mut me = self.clone();
        let diff = QPoly::x().sub(&QPoly::constant(BigRational::from_integer(f.clone())));
        Ok(if me.is_zero_at(&diff) { f } else { f + 1 })
    }

    /// Rough value for display.
    pub fn approx(&self) -> f64 {
        let iv = self
            .enclosure(&crate::poly::ten_pow_neg(15))
            .unwrap_or_else(|_| self.interval());
        crate::poly::to_f64(&iv.mid())
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.bracket {
            Bracket::Exact(r) => write!(f, "{r}"),
            Bracket::Isolating(lo, hi) => write!(
                f,
                "root of {} in ({lo}, {hi}) ≈ {:.12}",
                self.modulus.to_primitive_int(),
                self.approx()
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn phi() -> AlgebraicReal {
        AlgebraicReal::from_isolating(&IntPoly::from_i64s(&[1, -1, -1]), q(1), q(2)).unwrap()
    }

    #[test]
    fn rejects_bad_intervals() {
        let p = IntPoly::from_i64s(&[1, -1, -1]);
        assert!(AlgebraicReal::from_isolating(&p, q(-2), q(2)).is_err());
        assert!(AlgebraicReal::from_isolating(&p, q(2), q(3)).is_err());
        assert!(AlgebraicReal::from_isolating(&p, q(2), q(1)).is_err());
        // root -0.618 only
        assert!(AlgebraicReal::from_isolating(&p, q(-1), q(0)).is_err());
        // X - 1 has root exactly 1
        let lin = IntPoly::from_i64s(&[1, -1]);
        assert!(AlgebraicReal::from_isolating(&lin, BigRational::new(1.into(), 2.into()), q(2)).is_err());
    }

    #[test]
    fn lowers_left_endpoint_to_one() {
        let p = IntPoly::from_i64s(&[1, -1, -1]);
        let a = AlgebraicReal::from_isolating(&p, BigRational::new(1.into(), 2.into()), q(2)).unwrap();
        assert_eq!(a.interval().lo, q(1));
    }

    #[test]
    fn signs_and_floors_at_phi() {
        let mut a = phi();
        // φ² = φ + 1 ≈ 2.618
        let x2 = QPoly::x().mul(&QPoly::x());
        assert_eq!(a.floor_at(&x2).unwrap(), BigInt::from(2));
        // φ² - φ - 1 = 0 exactly
        let z = x2.sub(&QPoly::x()).sub(&QPoly::one());
        assert_eq!(a.sign_at(&z).unwrap(), Ordering::Equal);
        // φ(φ - 1) = 1 exactly, so the floor is exactly 1
        let e = QPoly::x().mul(&QPoly::x().sub(&QPoly::one()));
        assert_eq!(a.floor_at(&e).unwrap(), BigInt::one());
        assert_eq!(a.floor().unwrap(), BigInt::one());
        assert_eq!(a.ceil().unwrap(), BigInt::from(2));
    }

    #[test]
    fn reducible_modulus_shrinks() {
        // (X - 1)(X^2 - X - 1) isolated on (1.5, 2)
        let p = IntPoly::from_i64s(&[1, -2, 0, 1]);
        let mut a = AlgebraicReal::from_isolating(&p, BigRational::new(3.into(), 2.into()), q(2)).unwrap();
        assert_eq!(a.modulus_degree(), 3);
        let z = QPoly::from_int(&IntPoly::from_i64s(&[1, -1, -1]));
        assert!(a.is_zero_at(&z));
        assert_eq!(a.modulus_degree(), 2);
    }

    #[test]
    fn rational_root_collapses() {
        // (X - 3)(X + 1) isolated on (2, 4)
        let p = IntPoly::from_i64s(&[1, -2, -3]);
        let mut a = AlgebraicReal::from_isolating(&p, q(2), q(4)).unwrap();
        assert_eq!(a.floor().unwrap(), BigInt::from(3));
        assert_eq!(a.ceil().unwrap(), BigInt::from(3));
        assert!(a.is_zero_at(&QPoly::x().sub(&QPoly::constant(q(3)))));
        assert_eq!(a.as_rational(), Some(&q(3)));
    }

    #[test]
    fn equality_across_representations() {
        let a = phi();
        let b = AlgebraicReal::from_isolating(
            &IntPoly::from_i64s(&[1, -2, 0, 1]),
            BigRational::new(3.into(), 2.into()),
            q(2),
        )
        .unwrap();
        assert!(a.same_value(&b));
        let three = AlgebraicReal::rational(q(3));
        let c = AlgebraicReal::from_isolating(&IntPoly::from_i64s(&[1, -4, 3]), q(2), q(4)).unwrap();
        assert!(three.same_value(&c));
        assert!(!a.same_value(&three));
    }

    #[test]
    fn budget_error_is_explicit() {
        let mut a = phi().with_budget(2);
        assert!(matches!(
            a.refine_to_width(&crate::poly::ten_pow_neg(9)),
            Err(Error::RefinementBudget { budget: 2 })
        ));
    }
}
