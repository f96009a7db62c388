//! Shared helpers for the integration suites: an independent quadrature
//! oracle for the arithmetic-geometric mean and seeded family samplers.

use ginvar::classify::FamilyWitness;
use ginvar::exactnum::rational::random_rational;
use ginvar::exactnum::BigFloat;
use rand_chacha::ChaCha8Rng;

/// Arithmetic-geometric mean via its elliptic-integral representation
/// `AGM(x, y) = (2/π ∫₀^{π/2} dt/√(x²cos²t + y²sin²t))⁻¹`, evaluated with
/// the composite trapezoid rule under node doubling. The integrand extends
/// to a smooth π-periodic function, so the trapezoid sums converge
/// geometrically; nodes are doubled until two successive sums agree to
/// `2^{−target_bits}` relatively.
///
/// Deliberately independent of the Gauss-iteration code path it checks.
pub fn agm_by_quadrature(x: &BigFloat, y: &BigFloat, target_bits: i32) -> BigFloat {
    let prec = x.precision().min(y.precision()) + 64;
    let x = x.with_precision(prec);
    let y = y.with_precision(prec);
    let pi = BigFloat::pi(prec);
    let two = BigFloat::exact_int(2);
    let half_pi = pi.div(&two);
    let y2 = y.mul(&y);
    let shift = x.mul(&x).sub(&y2);
    let integrand = |t: &BigFloat| {
        let c = t.cos();
        BigFloat::exact_int(1).div(&y2.add(&shift.mul(&c).mul(&c)).sqrt())
    };
    let tol = BigFloat::pow2(-target_bits, prec);
    let mut n: usize = 16;
    let mut prev: Option<BigFloat> = None;
    loop {
        let h = half_pi.div(&BigFloat::from_i64(n as i64, prec));
        let mut sum = integrand(&BigFloat::zero().with_precision(prec))
            .add(&integrand(&half_pi))
            .div(&two);
        for i in 1..n {
            let t = h.mul(&BigFloat::from_i64(i as i64, prec));
            sum = sum.add(&integrand(&t));
        }
        let integral = sum.mul(&h);
        if let Some(p) = &prev {
            if p.rel_diff(&integral) < tol {
                // AGM = π/(2·I)
                return pi.div(&two.mul(&integral));
            }
        }
        prev = Some(integral);
        n *= 2;
        assert!(n <= 1 << 16, "quadrature failed to converge");
    }
}

/// One random witness for each of the six solution families.
pub fn random_family_witnesses(rng: &mut ChaCha8Rng, bound: i64) -> [FamilyWitness; 6] {
    let r = |rng: &mut ChaCha8Rng| random_rational(rng, bound);
    [
        FamilyWitness::I { a: r(rng), c: r(rng), p: r(rng) },
        FamilyWitness::II { a: r(rng), b: r(rng) },
        FamilyWitness::III { a: r(rng), b: r(rng), p: r(rng) },
        FamilyWitness::IV { u: r(rng), v: r(rng) },
        FamilyWitness::V { w: r(rng), c: r(rng) },
        FamilyWitness::VI { w: r(rng), a: r(rng) },
    ]
}
