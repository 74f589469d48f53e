//! Falling factorials and generalized binomial coefficients.

use super::rational::{factorial, int, one, Rational};

/// `[x]_s = x (x-1) ... (x-s+1)`, with `[x]_0 = 1` and `[x]_s = 0` for `s < 0`.
pub fn falling_factorial(x: &Rational, s: i64) -> Rational {
    if s < 0 {
        return Rational::from_integer(0.into());
    }
    let mut acc = one();
    for i in 0..s {
        acc *= x - int(i);
    }
    acc
}

/// `C(x, s) = [x]_s / s!`, zero for negative `s`.
pub fn gen_binomial(x: &Rational, s: i64) -> Rational {
    if s < 0 {
        return Rational::from_integer(0.into());
    }
    falling_factorial(x, s) / factorial(s as u64)
}

/// Falling factorial of an integer argument.
pub fn falling_factorial_int(x: i64, s: i64) -> Rational {
    falling_factorial(&int(x), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::rat;
    use proptest::prelude::*;

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(&int(3), 2), int(6));
        assert_eq!(falling_factorial(&rat(7, 3), -1), int(0));
        assert_eq!(falling_factorial(&rat(-3, 2), 2), rat(15, 4));
        assert_eq!(falling_factorial(&rat(-3, 2), 0), int(1));
        // [3]_4 passes through zero
        assert_eq!(falling_factorial(&int(3), 4), int(0));
    }

    #[test]
    fn gen_binomial_examples() {
        assert_eq!(gen_binomial(&rat(-1, 2), 1), rat(-1, 2));
        for k in 0..=4 {
            let expected = if k % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(gen_binomial(&int(-1), k), expected);
        }
        assert_eq!(gen_binomial(&rat(-3, 2), 2), rat(15, 8));
        assert_eq!(gen_binomial(&int(5), -2), int(0));
        assert_eq!(gen_binomial(&int(6), 3), int(20));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        // Vandermonde convolution holds for arbitrary rational arguments.
        #[test]
        fn binomial_convolution(x in small_rational(), y in small_rational(), k in 0i64..=8) {
            let lhs: Rational = (0..=k)
                .map(|s| gen_binomial(&x, s) * gen_binomial(&y, k - s))
                .sum();
            prop_assert_eq!(lhs, gen_binomial(&(&x + &y), k));
        }

        #[test]
        fn twisted_symmetry(x in small_rational(), s in 0i64..8) {
            // [x+s]_s = (-1)^s [-x-1]_s
            let lhs = falling_factorial(&(&x + int(s)), s);
            let sign = if s % 2 == 0 { int(1) } else { int(-1) };
            prop_assert_eq!(lhs, sign * falling_factorial(&(-&x - int(1)), s));
        }
    }
}

#[cfg(test)]
mod partial_fraction_tests {
    use super::*;
    use crate::poly::rational::rat;
    use proptest::prelude::*;

    proptest! {
        // sum_s (-1)^s C(k,s) / (x+s) = k! / [x+k]_{k+1}, away from the poles x = 0, -1, ..., -k.
        #[test]
        fn alternating_reciprocal_sum(n in -60i64..60, d in 1i64..9, k in 0i64..=8) {
            let x = rat(n, d);
            let on_pole = x.is_integer() && n / d <= 0 && n / d >= -k;
            prop_assume!(!on_pole);
            let lhs: Rational = (0..=k)
                .map(|s| {
                    let sign = if s % 2 == 0 { int(1) } else { int(-1) };
                    sign * gen_binomial(&int(k), s) / (&x + int(s))
                })
                .sum();
            let rhs = factorial(k as u64) / falling_factorial(&(&x + int(k)), k + 1);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
