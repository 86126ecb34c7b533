//! Rigorous rational enclosures of `π` and `sin`.
//!
//! Every result is a closed interval `[lo, hi]` with dyadic-rational ends
//! that is guaranteed to contain the true real value. `π` comes from
//! Machin's formula, `sin` from argument reduction by `π/2` followed by a
//! Taylor polynomial whose Lagrange remainder is added outward.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::rat::Rat;

/// Working precision in bits for the default entry points.
pub const WORK_BITS: u32 = 128;

const PI_BITS: u32 = 192;

/// Closed rational interval certified to contain some real quantity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Enclosure {
    pub lo: Rat,
    pub hi: Rat,
}

impl Enclosure {
    pub fn new(lo: Rat, hi: Rat) -> Enclosure {
        assert!(lo <= hi, "enclosure bounds out of order");
        Enclosure { lo, hi }
    }

    pub fn exact(x: Rat) -> Enclosure {
        Enclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        self.lo.mid(&self.hi)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure::new(-&self.hi, -&self.lo)
    }

    /// Certified lower bound on the absolute value.
    pub fn abs_lower(&self) -> Rat {
        if self.lo.is_positive() {
            self.lo.clone()
        } else if self.hi.is_negative() {
            -&self.hi
        } else {
            Rat::zero()
        }
    }

    fn widen(&self, r: &Rat) -> Enclosure {
        Enclosure::new(&self.lo - r, &self.hi + r)
    }

    fn round_out(&self, bits: u32) -> Enclosure {
        Enclosure::new(self.lo.round_down(bits), self.hi.round_up(bits))
    }

    fn clamp_unit(self) -> Enclosure {
        let one = Rat::one();
        Enclosure::new(self.lo.max(-&one), self.hi.min(one))
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12}, {:.12}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

/// `atan(1/m)` by its alternating series, bracketed by consecutive partial sums.
fn atan_inv(m: i64, bits: u32) -> Enclosure {
    let tol = Rat::pow2(-(bits as i64) - 8);
    let m2 = Rat::int(m * m);
    let mut power = Rat::new(1, m);
    let mut sum = Rat::zero();
    let mut i: i64 = 0;
    loop {
        let term = &power / &Rat::int(2 * i + 1);
        if i % 2 == 0 {
            sum = sum + &term;
        } else {
            sum = sum - &term;
        }
        power = &power / &m2;
        let next = &power / &Rat::int(2 * i + 3);
        if next < tol {
            let other = if i % 2 == 0 {
                &sum - &next
            } else {
                &sum + &next
            };
            let (lo, hi) = if other < sum {
                (other, sum)
            } else {
                (sum, other)
            };
            return Enclosure::new(lo, hi);
        }
        i += 1;
    }
}

fn compute_pi(bits: u32) -> Enclosure {
    let a = atan_inv(5, bits);
    let b = atan_inv(239, bits);
    let sixteen = Rat::int(16);
    let four = Rat::int(4);
    Enclosure::new(
        &(&sixteen * &a.lo) - &(&four * &b.hi),
        &(&sixteen * &a.hi) - &(&four * &b.lo),
    )
    .round_out(bits)
}

/// Enclosure of `π` of width at most `2^-190`.
pub fn pi() -> &'static Enclosure {
    static PI: OnceLock<Enclosure> = OnceLock::new();
    PI.get_or_init(|| compute_pi(PI_BITS))
}

/// Taylor polynomial of `sin` or `cos` at a small rational, with remainder.
fn taylor(c: &Rat, cosine: bool, bits: u32) -> Enclosure {
    let c = c.round_down(bits + 8);
    let round_err = Rat::pow2(-(bits as i64) - 8);
    let tol = Rat::pow2(-(bits as i64) - 4);
    let c2 = &c * &c;
    let (mut term, mut n) = if cosine {
        (Rat::one(), 0i64)
    } else {
        (c.clone(), 1i64)
    };
    let mut sum = Rat::zero();
    loop {
        sum = sum + &term;
        let next = -(&(&term * &c2) / &Rat::int((n + 1) * (n + 2)));
        n += 2;
        if next.abs() < tol && n as f64 > c.abs().to_f64() {
            let rem = next.abs() + &round_err;
            return Enclosure::exact(sum).widen(&rem).round_out(bits);
        }
        term = next;
    }
}

/// Evaluates `sin(r)` or `cos(r)` on a short interval around `|r| ≲ π/4`.
fn trig_on(lo: &Rat, hi: &Rat, cosine: bool, bits: u32) -> Enclosure {
    let c = lo.mid(hi);
    let rad = (hi - lo) / Rat::int(2);
    taylor(&c, cosine, bits).widen(&rad)
}

/// `sin` of an exact rational.
pub fn sin_rat(x: &Rat) -> Enclosure {
    sin_rat_bits(x, WORK_BITS)
}

pub fn sin_rat_bits(x: &Rat, bits: u32) -> Enclosure {
    let p = pi();
    let half = Rat::new(1, 2);
    let half_pi_mid = &p.mid() * &half;
    let k: BigInt = (&(x / &half_pi_mid) + &half).floor();
    let kr = Rat::from(k.clone());
    let a = x - &(&(&kr * &p.lo) * &half);
    let b = x - &(&(&kr * &p.hi) * &half);
    let (rlo, rhi) = if a <= b { (a, b) } else { (b, a) };
    let quadrant = k.mod_floor(&BigInt::from(4)).to_u8().expect("mod 4");
    let e = trig_on(&rlo, &rhi, quadrant % 2 == 1, bits);
    let e = if quadrant >= 2 { e.neg() } else { e };
    e.round_out(bits).clamp_unit()
}

/// `sin(π·t)` for exact rational `t`, reduced exactly modulo 2.
pub fn sin_pi_rat(t: &Rat) -> Enclosure {
    sin_pi_rat_bits(t, WORK_BITS)
}

pub fn sin_pi_rat_bits(t: &Rat, bits: u32) -> Enclosure {
    let mut s = t.rem_euclid(&Rat::int(2));
    let mut negate = false;
    if s >= Rat::one() {
        s = s - Rat::one();
        negate = true;
    }
    let half = Rat::new(1, 2);
    if s > half {
        s = Rat::one() - s;
    }
    // s ∈ [0, 1/2]
    let quarter = Rat::new(1, 4);
    let (s, cosine) = if s > quarter {
        (&half - &s, true)
    } else {
        (s, false)
    };
    let p = pi();
    let e = if s.is_zero() {
        Enclosure::exact(if cosine { Rat::one() } else { Rat::zero() })
    } else {
        trig_on(&(&s * &p.lo), &(&s * &p.hi), cosine, bits)
    };
    let e = if negate { e.neg() } else { e };
    e.round_out(bits).clamp_unit()
}

/// `sin` over every point of a rational interval.
pub fn sin_interval(lo: &Rat, hi: &Rat) -> Enclosure {
    let c = lo.mid(hi);
    let rad = (hi - lo) / Rat::int(2);
    sin_rat(&c).widen(&rad).clamp_unit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn tiny() -> Rat {
        Rat::pow2(-100)
    }

    #[test]
    fn pi_digits() {
        let p = pi();
        let digits: Rat = "3.14159265358979323846264338327950288419716939937510"
            .parse()
            .unwrap();
        assert!((&digits - &p.mid()).abs() < Rat::new(1, 10).powi(49));
        assert!(p.width() <= Rat::pow2(-190));
        let lo: Rat = "3.1415926535897932384626433832795028841971"
            .parse()
            .unwrap();
        let hi: Rat = "3.1415926535897932384626433832795028841972"
            .parse()
            .unwrap();
        assert!(lo < p.lo && p.hi < hi);
    }

    #[test]
    fn exact_special_values() {
        assert!(sin_pi_rat(&q(1, 6)).contains(&q(1, 2)));
        assert!(sin_pi_rat(&q(5, 6)).contains(&q(1, 2)));
        assert!(sin_pi_rat(&q(7, 6)).contains(&q(-1, 2)));
        assert_eq!(sin_pi_rat(&Rat::int(3)), Enclosure::exact(Rat::zero()));
        assert_eq!(sin_pi_rat(&q(1, 2)), Enclosure::exact(Rat::one()));
        let e = sin_pi_rat(&q(1, 3));
        let three_quarters = q(3, 4);
        assert!(e.lo.is_positive());
        assert!(&e.lo * &e.lo <= three_quarters && three_quarters <= &e.hi * &e.hi);
        assert!(e.width() < tiny());
    }

    #[test]
    fn agrees_with_float_sine() {
        for (x, want) in [
            (q(1, 1), 0.8414709848078965),
            (q(-7, 3), -0.7230858817383246),
            (Rat::int(1_000_000), -0.34999350217129294),
            (q(22, 7), -0.00126448893037729),
        ] {
            let e = sin_rat(&x);
            assert!(e.width() < tiny());
            assert!((e.mid().to_f64() - want).abs() < 1e-13, "sin({x}) = {e}");
        }
    }

    #[test]
    fn sin_of_pi_multiples_match_both_paths() {
        for t in [q(1, 5), q(3, 7), q(13, 8), q(-9, 4)] {
            let via_pi = sin_pi_rat(&t);
            let x = &t * &pi().mid();
            let direct = sin_rat(&x);
            assert!(
                via_pi.lo <= &direct.hi + &Rat::pow2(-120)
                    && direct.lo <= &via_pi.hi + &Rat::pow2(-120)
            );
        }
    }

    #[test]
    fn interval_sine_contains_endpoints() {
        let e = sin_interval(&q(1, 3), &q(1, 2));
        assert!(e.contains(&sin_rat(&q(1, 3)).mid()));
        assert!(e.contains(&sin_rat(&q(1, 2)).mid()));
        assert_eq!(Enclosure::new(q(-1, 4), q(1, 4)).abs_lower(), Rat::zero());
    }
}
