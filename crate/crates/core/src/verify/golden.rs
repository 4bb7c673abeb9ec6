//! Frozen exact values of the three coefficient tables, in factored form.
//!
//! These are the reference data the golden-equality checks compare against.
//! Each entry is written as its prime factorization and assembled in exact
//! arithmetic, so a transcription slip cannot hide behind rounding. The
//! same numbers appear in decimal form in the asymptotics unit tests,
//! computed by an independent implementation of the recursions; the two
//! fixings cross-check each other.

use num_bigint::BigInt;
use num_traits::Pow;

use crate::exact::Rational;

fn product(factors: &[(u64, u32)]) -> BigInt {
    factors
        .iter()
        .map(|&(base, exp)| BigInt::from(base).pow(exp))
        .fold(BigInt::from(1), |acc, f| acc * f)
}

fn ratio(sign: i64, numer: &[(u64, u32)], denom: &[(u64, u32)]) -> Rational {
    Rational::new(BigInt::from(sign) * product(numer), product(denom))
}

/// ξ(1), ξ′(1), …, ξ⁽¹⁰⁾(1).
pub fn xi_derivatives_11() -> Vec<Rational> {
    vec![
        ratio(1, &[(2, 1)], &[(3, 1)]),
        ratio(1, &[(2, 3)], &[(3, 3), (5, 1)]),
        ratio(-1, &[(2, 4)], &[(3, 4), (5, 1), (7, 1)]),
        ratio(-1, &[(2, 5)], &[(3, 5), (5, 1), (7, 1)]),
        ratio(1, &[(2, 6), (281, 1)], &[(3, 8), (5, 2), (7, 1), (11, 1)]),
        ratio(
            1,
            &[(2, 7), (23, 1), (227, 1)],
            &[(3, 9), (5, 2), (7, 1), (11, 1), (13, 1)],
        ),
        ratio(
            -1,
            &[(2, 8), (53, 1), (103, 1)],
            &[(3, 10), (5, 2), (7, 1), (11, 1), (13, 1)],
        ),
        ratio(
            -1,
            &[(2, 9), (373, 1), (439, 1), (557, 1)],
            &[(3, 12), (5, 4), (7, 2), (11, 1), (13, 1), (17, 1)],
        ),
        ratio(
            1,
            &[(2, 10), (2650986803, 1)],
            &[(3, 13), (5, 4), (7, 2), (11, 1), (13, 1), (17, 1), (19, 1)],
        ),
        ratio(
            1,
            &[(2, 11), (6171801683, 1)],
            &[(3, 14), (5, 4), (7, 2), (11, 1), (13, 1), (17, 1), (19, 1)],
        ),
        ratio(
            -1,
            &[(2, 12), (1117, 1), (3835213201, 1)],
            &[
                (3, 16),
                (5, 5),
                (7, 2),
                (11, 1),
                (13, 1),
                (17, 1),
                (19, 1),
                (23, 1),
            ],
        ),
    ]
}

/// c₁..c₁₀ of φ(x) = Σ cₖ x⁻ᵏ + o(x⁻¹⁰).
pub fn phi_coefficients_10() -> Vec<Rational> {
    vec![
        ratio(1, &[], &[(3, 1)]),
        ratio(1, &[(29, 1)], &[(3, 4), (5, 1), (2, 1)]),
        ratio(-1, &[(37, 1)], &[(3, 6), (5, 1), (7, 1)]),
        ratio(-1, &[(3877, 1)], &[(3, 9), (5, 2), (2, 2)]),
        ratio(1, &[(8957413, 1)], &[(3, 13), (5, 3), (7, 1), (11, 1)]),
        ratio(
            1,
            &[(401, 1), (8842279, 1)],
            &[(2, 1), (3, 15), (5, 2), (7, 2), (11, 1), (13, 1)],
        ),
        ratio(
            -1,
            &[(356146891, 1), (2039, 1)],
            &[(3, 18), (5, 4), (7, 2), (11, 1), (13, 1)],
        ),
        ratio(
            -1,
            &[(216607304027, 1), (3077479, 1)],
            &[(2, 3), (3, 21), (5, 6), (7, 3), (11, 1), (13, 1), (17, 1)],
        ),
        ratio(
            1,
            &[(31, 1), (743, 1), (4569027042343, 1)],
            &[(3, 23), (5, 3), (7, 3), (11, 1), (13, 1), (17, 1), (19, 1)],
        ),
        ratio(
            1,
            &[(71, 1), (282699240672481, 1), (1949, 1), (5113, 1)],
            &[
                (2, 1),
                (3, 27),
                (5, 7),
                (7, 3),
                (11, 2),
                (13, 1),
                (17, 1),
                (19, 1),
            ],
        ),
    ]
}

/// m₁..m₉ of m(x) = x − 1/3 + Σ mₖ x⁻ᵏ + o(x⁻⁹).
pub fn m_coefficients_9() -> Vec<Rational> {
    vec![
        ratio(1, &[(2, 3)], &[(3, 4), (5, 1)]),
        ratio(1, &[(2, 3), (23, 1)], &[(3, 6), (5, 1), (7, 1)]),
        ratio(1, &[(2, 3), (281, 1)], &[(3, 9), (5, 2), (7, 1)]),
        ratio(
            -1,
            &[(2, 3), (17, 1), (139753, 1)],
            &[(3, 13), (5, 3), (7, 1), (11, 1)],
        ),
        ratio(
            -1,
            &[(2, 3), (708494947, 1)],
            &[(3, 15), (5, 3), (7, 2), (11, 1), (13, 1)],
        ),
        ratio(
            1,
            &[(2, 3), (140814348739, 1)],
            &[(3, 18), (5, 4), (7, 2), (11, 1), (13, 1)],
        ),
        ratio(
            1,
            &[(2, 3), (7663181003289047, 1)],
            &[(3, 21), (5, 6), (7, 3), (11, 1), (13, 1), (17, 1)],
        ),
        ratio(
            -1,
            &[(2, 3), (653, 1), (1359581, 1), (759929, 1), (3307, 1)],
            &[(3, 23), (5, 6), (7, 3), (11, 1), (13, 1), (17, 1), (19, 1)],
        ),
        ratio(
            -1,
            &[(2, 3), (29, 1), (1376560394479059407, 1)],
            &[(3, 27), (5, 7), (7, 3), (11, 2), (17, 1)],
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_check_factored_values() {
        let xi = xi_derivatives_11();
        assert_eq!(xi[0], Rational::new(2, 3));
        assert_eq!(xi[2], Rational::new(-16, 2835));
        assert_eq!(
            xi[10],
            Rational::new(
                -17546990164037632i128,
                7002491221234884375i128
            )
        );
        let c = phi_coefficients_10();
        assert_eq!(c[0], Rational::new(1, 3));
        assert_eq!(c[1], Rational::new(29, 810));
        let m = m_coefficients_9();
        assert_eq!(m[0], Rational::new(8, 405));
        assert_eq!(m[1], Rational::new(184, 25515));
    }
}
