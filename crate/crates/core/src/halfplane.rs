//! Half-plane orders on the rank-two lattice from quadratic irrationals.
//!
//! A quadratic irrational `phi = (a + b sqrt(d)) / q` defines the linear
//! form `f(r) = r_1 + r_2 phi` on `Z^2`. Because `phi` is irrational, `f`
//! vanishes only at the origin, so its sign splits the nonzero lattice
//! into two exact half-planes closed under addition. All comparisons here
//! are exact: the sign of `A + B sqrt(d)` is decided by comparing `A^2`
//! with `B^2 d` over big integers, never through floating point.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::report::{Check, Report};

fn isqrt(n: i64) -> i64 {
    debug_assert!(n >= 0);
    let n = n as i128;
    let mut x = (n as f64).sqrt() as i128;
    while x > 0 && x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x as i64
}

fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = isqrt(n) as i128;
    r * r == n as i128
}

/// The number `(a + b sqrt(d)) / q`, stored in lowest terms with `q > 0`,
/// `b != 0`, and `d >= 2` square-free of squares (non-square suffices for
/// irrationality).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticIrrational {
    a: i64,
    b: i64,
    d: i64,
    q: i64,
}

impl QuadraticIrrational {
    pub fn new(a: i64, b: i64, d: i64, q: i64) -> Result<Self> {
        if d < 2 || is_square(d) {
            return Err(Error::DegenerateIrrational(format!(
                "radicand {d} is not a non-square integer >= 2"
            )));
        }
        if b == 0 {
            return Err(Error::DegenerateIrrational(
                "zero coefficient on the radical makes the number rational".into(),
            ));
        }
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        let (a, b, q) = if q < 0 { (-a, -b, -q) } else { (a, b, q) };
        let g = gcd(gcd(a.unsigned_abs(), b.unsigned_abs()), q.unsigned_abs()) as i64;
        Ok(QuadraticIrrational {
            a: a / g,
            b: b / g,
            d,
            q: q / g,
        })
    }

    /// The square root of `d` itself.
    pub fn sqrt(d: i64) -> Result<Self> {
        QuadraticIrrational::new(0, 1, d, 1)
    }

    pub fn parts(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.d, self.q)
    }

    /// Exact sign of `A + B sqrt(d)`.
    fn radical_sign(&self, a: &BigInt, b: &BigInt) -> Ordering {
        let za = a.sign() == num_bigint::Sign::NoSign;
        let zb = b.sign() == num_bigint::Sign::NoSign;
        match (za, zb) {
            (true, true) => Ordering::Equal,
            (false, true) => a.cmp(&BigInt::from(0)),
            (true, false) => b.cmp(&BigInt::from(0)),
            (false, false) => {
                if a.is_positive() == b.is_positive() {
                    return a.cmp(&BigInt::from(0));
                }
                let lhs = a * a;
                let rhs = b * b * BigInt::from(self.d);
                match lhs.cmp(&rhs) {
                    // Equality would force sqrt(d) rational.
                    Ordering::Equal => unreachable!("non-square radicand"),
                    Ordering::Greater => a.cmp(&BigInt::from(0)),
                    Ordering::Less => b.cmp(&BigInt::from(0)),
                }
            }
        }
    }

    /// Exact sign of `f(r) = r_1 + r_2 phi`; `Equal` only at the origin.
    pub fn sign(&self, r: &LatticeVector) -> Result<Ordering> {
        if r.n() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: r.n(),
            });
        }
        let (r1, r2) = (BigInt::from(r.coords()[0]), BigInt::from(r.coords()[1]));
        // q f(r) = (q r_1 + a r_2) + (b r_2) sqrt(d), and q > 0.
        let a = BigInt::from(self.q) * &r1 + BigInt::from(self.a) * &r2;
        let b = BigInt::from(self.b) * &r2;
        Ok(self.radical_sign(&a, &b))
    }

    pub fn is_positive(&self, r: &LatticeVector) -> Result<bool> {
        Ok(self.sign(r)? == Ordering::Greater)
    }

    /// Compares `f(r)` with `f(s)`.
    pub fn compare(&self, r: &LatticeVector, s: &LatticeVector) -> Result<Ordering> {
        self.sign(&(r - s))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// The two half-planes of a window, origin excluded. Negatives mirror the
/// positives exactly.
#[derive(Clone, Debug)]
pub struct HalfPlanePartition {
    pub positive: Vec<LatticeVector>,
    pub negative: Vec<LatticeVector>,
}

impl QuadraticIrrational {
    pub fn partition_window(&self, w: i64) -> Result<HalfPlanePartition> {
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for r in crate::lattice::window_points(2, w) {
            if r.is_zero() {
                continue;
            }
            match self.sign(&r)? {
                Ordering::Greater => positive.push(r),
                Ordering::Less => negative.push(r),
                Ordering::Equal => {
                    return Err(Error::DegenerateIrrational(format!(
                        "the form vanished on the nonzero point {r}"
                    )))
                }
            }
        }
        Ok(HalfPlanePartition { positive, negative })
    }

    /// Sweeps the order axioms over a window: trichotomy on nonzero
    /// points, antisymmetry under negation, and closure of each half
    /// under addition.
    pub fn check_partition(&self, w: i64) -> Result<Report> {
        let mut report = Report::new();
        let part = self.partition_window(w)?;
        let total = part.positive.len() + part.negative.len();
        let full = (2 * w + 1) * (2 * w + 1) - 1;
        if total == full as usize && part.positive.len() == part.negative.len() {
            report.push(Check::pass("halfplane-trichotomy", total));
        } else {
            report.push(Check::fail(
                "halfplane-trichotomy",
                total,
                format!(
                    "{} positive and {} negative points out of {full}",
                    part.positive.len(),
                    part.negative.len()
                ),
            ));
        }

        let mut anti = Check::pass("halfplane-antisymmetry", part.positive.len());
        for r in &part.positive {
            if self.sign(&(-r))? != Ordering::Less {
                anti = Check::fail("halfplane-antisymmetry", part.positive.len(), format!("{r}"));
                break;
            }
        }
        report.push(anti);

        let mut cases = 0usize;
        let mut closure = None;
        'outer: for (i, r) in part.positive.iter().enumerate() {
            for s in &part.positive[i..] {
                let sum = r + s;
                cases += 1;
                if self.sign(&sum)? != Ordering::Greater {
                    closure = Some(format!("{r} + {s}"));
                    break 'outer;
                }
            }
        }
        report.push(match closure {
            None => Check::pass("halfplane-additive-closure", cases),
            Some(witness) => Check::fail("halfplane-additive-closure", cases, witness),
        });
        Ok(report)
    }

    /// Finds a lattice point `t` with `f(r) < f(t) < f(s)`, witnessing
    /// that the values of `f` are dense in the line.
    ///
    /// The witness is `r + u` for a positive `u` with `f(u) < f(s - r)`,
    /// produced by subtraction descent on a pair of positive points: the
    /// larger value is repeatedly reduced by the smaller, so the minimum
    /// strictly decreases and never reaches zero. Each step costs one
    /// exact sign test; `budget` caps the step count.
    pub fn density_between(
        &self,
        r: &LatticeVector,
        s: &LatticeVector,
        budget: usize,
    ) -> Result<LatticeVector> {
        if self.compare(r, s)? != Ordering::Less {
            return Err(Error::InvalidDescriptor(
                "density witness needs f(r) < f(s)".into(),
            ));
        }
        let gap = s - r;
        let mut a = LatticeVector(vec![1, 0]);
        let mut b = if self.sign(&LatticeVector(vec![0, 1]))? == Ordering::Greater {
            LatticeVector(vec![0, 1])
        } else {
            LatticeVector(vec![0, -1])
        };
        for step in 0..budget {
            let small = if self.compare(&a, &b)? == Ordering::Less {
                &a
            } else {
                &b
            };
            if self.compare(small, &gap)? == Ordering::Less {
                return Ok(r + small);
            }
            // Reduce the larger by the smaller; both stay positive
            // because their difference is compared exactly first.
            if self.compare(&a, &b)? == Ordering::Greater {
                a = &a - &b;
            } else {
                b = &b - &a;
            }
            debug_assert!(self.is_positive(&a)? && self.is_positive(&b)?, "step {step}");
        }
        Err(Error::SearchBudgetExhausted(budget))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_rejects_degenerate_numbers() {
        assert!(QuadraticIrrational::new(1, 1, 4, 1).is_err());
        assert!(QuadraticIrrational::new(1, 1, 1, 1).is_err());
        assert!(QuadraticIrrational::new(1, 0, 2, 1).is_err());
        assert!(QuadraticIrrational::new(1, 1, 2, 0).is_err());
        // Normalization: sign moves off the denominator, content cancels.
        let x = QuadraticIrrational::new(2, -4, 2, -2).unwrap();
        assert_eq!(x.parts(), (-1, 2, 2, 1));
    }

    #[test]
    fn signs_match_known_inequalities() {
        let phi = QuadraticIrrational::sqrt(2).unwrap();
        // 3 - 2 sqrt(2) > 0 and 1 - sqrt(2) < 0.
        assert_eq!(
            phi.sign(&LatticeVector(vec![3, -2])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            phi.sign(&LatticeVector(vec![1, -1])).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            phi.sign(&LatticeVector(vec![0, 0])).unwrap(),
            Ordering::Equal
        );
        // (-5 + 4 sqrt(2)) / 3 appears in f through both coefficients.
        let mixed = QuadraticIrrational::new(-5, 4, 2, 3).unwrap();
        assert_eq!(
            mixed.sign(&LatticeVector(vec![0, 1])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            mixed.sign(&LatticeVector(vec![-1, 5])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            mixed.sign(&LatticeVector(vec![-1, 4])).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn window_partition_satisfies_the_order_axioms() {
        for d in [2, 3, 5] {
            let phi = QuadraticIrrational::sqrt(d).unwrap();
            let report = phi.check_partition(4).unwrap();
            assert!(report.all_passed(), "{report:?}");
        }
    }

    #[test]
    fn density_witness_lands_strictly_between() {
        let phi = QuadraticIrrational::sqrt(2).unwrap();
        let pairs = [
            ([0, 0], [1, 0]),
            ([1, -1], [3, -2]),
            ([-1, 1], [1, -1]),
            ([5, -3], [2, -1]),
        ];
        for (r, s) in pairs {
            let r = LatticeVector(r.to_vec());
            let s = LatticeVector(s.to_vec());
            let (r, s) = if phi.compare(&r, &s).unwrap() == Ordering::Less {
                (r, s)
            } else {
                (s, r)
            };
            let t = phi.density_between(&r, &s, 10_000).unwrap();
            assert_eq!(phi.compare(&r, &t).unwrap(), Ordering::Less);
            assert_eq!(phi.compare(&t, &s).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn density_search_reports_an_exhausted_budget() {
        let phi = QuadraticIrrational::sqrt(2).unwrap();
        let err = phi
            .density_between(
                &LatticeVector(vec![0, 0]),
                &LatticeVector(vec![1, 0]),
                1,
            )
            .unwrap_err();
        assert!(matches!(err, Error::SearchBudgetExhausted(1)), "{err}");
    }
}
