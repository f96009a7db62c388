//! Stored closed-form Taylor-coefficient data for the section function
//!
//! ```text
//! F(x) = G_{p,q}(G_{a,b}(e^x, e^{−x}), G_{c,d}(e^x, e^{−x})) / G_{p,q}(e^x, e^{−x})
//! ```
//!
//! in the reduced coordinates `w = (a+b+c+d)/4 = (p+q)/2`,
//! `v = (a+b−c−d)/4`, `t = ((p−q)/2)²`, `r = ((a−b)²+(c−d)²)/8`,
//! `s = ((a−b)²−(c−d)²)/8`.
//!
//! Each even coefficient `C_k = F^{(k)}(0)/k!` for `k ≤ 12` is stored as an
//! exact rational function at its applicable substitution stage, and is
//! certified elsewhere by exact identity testing against the series engine —
//! not re-derived symbolically.

use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;

use crate::poly::MultiPoly;

/// Substitution stage at which a stored formula is valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaStage {
    /// Raw parameters `a, b, c, d, p, q`, no reduction applied.
    Raw,
    /// Reduced coordinates `w, v, t, r, s`, all free.
    Reduced,
    /// After `t := r + v·s/w` (requires `w ≠ 0`); free `w, v, r, s`.
    TSubstituted,
    /// After `r := R(w, v, s)` as well (requires `v ≠ 0`); free `w, v, s`.
    RSubstituted,
}

/// A printed coefficient formula `C_k = num/den` at a given stage.
#[derive(Debug, Clone)]
pub struct PaperFormula {
    pub k: usize,
    pub stage: FormulaStage,
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl PaperFormula {
    /// Exact evaluation; `None` when the denominator vanishes.
    pub fn eval(&self, assignment: &BTreeMap<String, BigRational>) -> Option<BigRational> {
        let den = self.den.eval(assignment).ok()?;
        if den == BigRational::from_integer(0.into()) {
            return None;
        }
        let num = self.num.eval(assignment).ok()?;
        Some(num / den)
    }
}

/// The stored formula for `C_k`, `k ∈ {2, 4, 6, 8, 10, 12}`.
pub fn paper_formula(k: usize) -> PaperFormula {
    match k {
        2 => PaperFormula {
            k,
            stage: FormulaStage::Raw,
            // C₂ = a/4 + b/4 + c/4 + d/4 − p/2 − q/2
            num: MultiPoly::from_terms(
                &["a", "b", "c", "d", "p", "q"],
                &[
                    (1, &[1, 0, 0, 0, 0, 0]),
                    (1, &[0, 1, 0, 0, 0, 0]),
                    (1, &[0, 0, 1, 0, 0, 0]),
                    (1, &[0, 0, 0, 1, 0, 0]),
                    (-2, &[0, 0, 0, 0, 1, 0]),
                    (-2, &[0, 0, 0, 0, 0, 1]),
                ],
            ),
            den: MultiPoly::constant_i64(4),
        },
        4 => PaperFormula {
            k,
            stage: FormulaStage::Reduced,
            // C₄ = (t·w − v·s − w·r)/3
            num: MultiPoly::from_terms(
                &["w", "v", "t", "r", "s"],
                &[
                    (1, &[1, 0, 1, 0, 0]),
                    (-1, &[0, 1, 0, 0, 1]),
                    (-1, &[1, 0, 0, 1, 0]),
                ],
            ),
            den: MultiPoly::constant_i64(3),
        },
        6 => PaperFormula {
            k,
            stage: FormulaStage::TSubstituted,
            // C₆ = −2(−3w²s² + 3v²s² − 15w²rv² − 5w³sv − 10v³sw + 15w⁴v²)/(45w)
            num: MultiPoly::from_terms(
                &["w", "v", "r", "s"],
                &[
                    (-3, &[2, 0, 0, 2]),
                    (3, &[0, 2, 0, 2]),
                    (-15, &[2, 2, 1, 0]),
                    (-5, &[3, 1, 0, 1]),
                    (-10, &[1, 3, 0, 1]),
                    (15, &[4, 2, 0, 0]),
                ],
            )
            .mul_rational(&BigRational::from_integer((-2).into())),
            den: MultiPoly::from_terms(&["w"], &[(45, &[1])]),
        },
        8 | 10 | 12 => {
            let (num_pref, den) = elimination_prefactor(k);
            PaperFormula {
                k,
                stage: FormulaStage::RSubstituted,
                num: num_pref.mul(&eliminated_factor(k)),
                den,
            }
        }
        _ => panic!("no stored formula for C_{k}"),
    }
}

/// The prefactor of `C_k` for `k ∈ {8, 10, 12}`:
/// `(v−w)(v+w)s/(70875·w³v²)`, `2(w−v)(w+v)s/(1063125·w⁵v⁴)`,
/// `2(v−w)(v+w)s/(2631234375·w⁷v⁶)`.
///
/// Each prefactor sign is pinned by three independent routes: the exact
/// series engines, a high-precision numeric evaluation of `F`, and
/// consistency of the `C₈/C₁₀/C₁₂` factorizations with the resultant chain.
pub fn elimination_prefactor(k: usize) -> (MultiPoly, MultiPoly) {
    let vw_s = MultiPoly::from_terms(&["w", "v", "s"], &[(1, &[0, 2, 1]), (-1, &[2, 0, 1])]);
    match k {
        8 => (
            vw_s,
            MultiPoly::from_terms(&["w", "v"], &[(70875, &[3, 2])]),
        ),
        10 => (
            vw_s.mul_rational(&BigRational::from_integer((-2).into())),
            MultiPoly::from_terms(&["w", "v"], &[(1063125, &[5, 4])]),
        ),
        12 => (
            vw_s.mul_rational(&BigRational::from_integer(2.into())),
            MultiPoly::from_terms(&["w", "v"], &[(2631234375, &[7, 6])]),
        ),
        _ => panic!("no elimination prefactor for C_{k}"),
    }
}

/// The polynomial factor `P_k` of `C_k` (variables `w, v, s`), printed with
/// integer coefficients; weighted-homogeneous of degree 8, 14, 20 under
/// weights `(w:1, v:1, s:2)`.
pub fn eliminated_factor(k: usize) -> MultiPoly {
    match k {
        8 => MultiPoly::from_terms(
            &["w", "v", "s"],
            &[
                (2100, &[3, 5, 0]),
                (-3850, &[2, 4, 1]),
                (4200, &[5, 3, 0]),
                (-255, &[1, 3, 2]),
                (153, &[0, 2, 3]),
                (-9245, &[4, 2, 1]),
                (-7395, &[3, 1, 2]),
                (-153, &[2, 0, 3]),
            ],
        ),
        10 => MultiPoly::from_terms(
            &["w", "v", "s"],
            &[
                (28500, &[5, 9, 0]),
                (-59675, &[4, 8, 1]),
                (34470, &[3, 7, 2]),
                (20100, &[7, 7, 0]),
                (-299575, &[6, 6, 1]),
                (-4260, &[2, 6, 3]),
                (-73200, &[5, 5, 2]),
                (-930, &[1, 5, 4]),
                (66600, &[9, 5, 0]),
                (4805, &[4, 4, 3]),
                (-286500, &[8, 4, 1]),
                (279, &[0, 4, 5]),
                (-169020, &[7, 3, 2]),
                (-16740, &[3, 3, 4]),
                (-558, &[2, 2, 5]),
                (45955, &[6, 2, 3]),
                (17670, &[5, 1, 4]),
                (279, &[4, 0, 5]),
            ],
        ),
        12 => MultiPoly::from_terms(
            &["w", "v", "s"],
            &[
                (-3272692500, &[10, 8, 1]),
                (22181100, &[3, 9, 4]),
                (-54365475, &[6, 8, 3]),
                (-25317375, &[8, 6, 3]),
                (335826, &[4, 2, 7]),
                (-559710, &[1, 7, 6]),
                (-215221875, &[6, 12, 1]),
                (22875570, &[6, 4, 5]),
                (16977870, &[5, 3, 6]),
                (-7649370, &[3, 5, 6]),
                (-1246797750, &[8, 10, 1]),
                (-34684335, &[8, 2, 5]),
                (-777170000, &[11, 5, 2]),
                (-159926550, &[7, 5, 4]),
                (-335826, &[2, 4, 7]),
                (641072375, &[10, 4, 3]),
                (270963000, &[5, 11, 2]),
                (-1046615000, &[9, 7, 2]),
                (11659365, &[4, 6, 5]),
                (-133190250, &[5, 7, 4]),
                (-1967022000, &[12, 6, 1]),
                (177650700, &[9, 3, 4]),
                (-8768790, &[7, 1, 6]),
                (385915750, &[7, 9, 2]),
                (149400, &[2, 8, 5]),
                (-98002025, &[4, 10, 3]),
                (76725000, &[7, 13, 0]),
                (-57172500, &[9, 11, 0]),
                (-478665000, &[11, 9, 0]),
                (188100000, &[13, 7, 0]),
                (-111942, &[6, 0, 7]),
                (111942, &[0, 6, 7]),
            ],
        ),
        _ => panic!("no eliminated factor P_{k}"),
    }
}

/// Numerator and denominator of `R`, the solution of `C₆ = 0` for `r`:
/// `R = (15w⁴v² − 3w²s² + 3v²s² − 5w³vs − 10wv³s)/(15w²v²)`.
pub fn r_solution() -> (MultiPoly, MultiPoly) {
    (
        MultiPoly::from_terms(
            &["w", "v", "s"],
            &[
                (15, &[4, 2, 0]),
                (-3, &[2, 0, 2]),
                (3, &[0, 2, 2]),
                (-5, &[3, 1, 1]),
                (-10, &[1, 3, 1]),
            ],
        ),
        MultiPoly::from_terms(&["w", "v"], &[(15, &[2, 2])]),
    )
}

/// Evaluates `R(w, v, s)` exactly; requires `w ≠ 0` and `v ≠ 0`.
pub fn r_solution_value(w: &BigRational, v: &BigRational, s: &BigRational) -> BigRational {
    let (num, den) = r_solution();
    let assign = BTreeMap::from([
        ("w".to_string(), w.clone()),
        ("v".to_string(), v.clone()),
        ("s".to_string(), s.clone()),
    ]);
    num.eval(&assign).unwrap() / den.eval(&assign).unwrap()
}

/// The printed closed factor of `resultant(P₈, P₁₀, s)`:
/// `136687500·w¹⁵v¹⁵(v−w)²(v+w)²`.
pub fn resultant_810_printed_factor() -> MultiPoly {
    let monomial = MultiPoly::from_terms(&["w", "v"], &[(136687500, &[15, 15])]);
    let vmw = MultiPoly::from_terms(&["w", "v"], &[(1, &[0, 1]), (-1, &[1, 0])]);
    let vpw = MultiPoly::from_terms(&["w", "v"], &[(1, &[0, 1]), (1, &[1, 0])]);
    monomial.mul(&vmw.pow(2)).mul(&vpw.pow(2))
}

/// Printed coefficients of the degree-18 polynomial `P₈,₁₀` in `z`
/// (even powers `z⁰, z², …, z¹⁸`).
pub fn p810_coefficients() -> Vec<BigInt> {
    [
        1178440166794705680i128,
        -34849488132334981400,
        27095657773476976150,
        2157163953185024831539,
        19335728720363587723895,
        77098340762854904758838,
        135541716064734053550290,
        52974528518488497499557,
        2100034048587009260985,
        44498612407766474466,
    ]
    .iter()
    .map(|&c| BigInt::from(c))
    .collect()
}

/// Printed coefficients of the degree-26 polynomial `P₈,₁₂` in `z`
/// (even powers `z⁰, z², …, z²⁶`).
pub fn p812_coefficients() -> Vec<BigInt> {
    [
        8196063700595383871701091232i128,
        -179090512353635410423157248720,
        -2262574745604112043731392907114,
        11198535065282946302316347517923,
        369075355861065090753396085824722,
        3321203212966063219800014204539694,
        17018221168597358591328346358640128,
        55161742271395394206883716537690208,
        113024609788553283598449985201081964,
        136472191224999845881431378284988722,
        83840233563357841801204648333566258,
        19391722782753178903737004919064981,
        1234978033803167388960240130106010,
        95711050739605210548400442203992,
    ]
    .iter()
    .map(|&c| BigInt::from(c))
    .collect()
}

/// `P₈,₁₀` as a univariate polynomial in `z` (even powers only).
pub fn p810_univariate() -> MultiPoly {
    univariate_from_even_coeffs(&p810_coefficients(), "z")
}

/// `P₈,₁₂` as a univariate polynomial in `z` (even powers only).
pub fn p812_univariate() -> MultiPoly {
    univariate_from_even_coeffs(&p812_coefficients(), "z")
}

/// The homogeneous degree-18 cofactor of `R₈,₁₀` in `(w, v)`:
/// `Σ cᵢ·w^{2i}·v^{18−2i}` with the printed coefficients.
pub fn r810_cofactor_homogeneous() -> MultiPoly {
    let coeffs = p810_coefficients();
    let deg = 2 * (coeffs.len() - 1) as u32;
    let terms: Vec<(BigRational, Vec<u32>)> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            (
                BigRational::from_integer(c.clone()),
                vec![2 * i as u32, deg - 2 * i as u32],
            )
        })
        .collect();
    let borrowed: Vec<(BigRational, &[u32])> =
        terms.iter().map(|(c, e)| (c.clone(), e.as_slice())).collect();
    MultiPoly::from_terms_rational(&["w", "v"], &borrowed)
}

fn univariate_from_even_coeffs(coeffs: &[BigInt], var: &str) -> MultiPoly {
    let terms: Vec<(BigRational, Vec<u32>)> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| (BigRational::from_integer(c.clone()), vec![2 * i as u32]))
        .collect();
    let borrowed: Vec<(BigRational, &[u32])> =
        terms.iter().map(|(c, e)| (c.clone(), e.as_slice())).collect();
    MultiPoly::from_terms_rational(&[var], &borrowed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};
    use crate::poly::{WeightVector, WeightedDegree};

    #[test]
    fn stored_factors_are_weighted_homogeneous() {
        let wts = WeightVector::new(&[("w", 1), ("v", 1), ("s", 2)]);
        for (k, deg) in [(8usize, 8u64), (10, 14), (12, 20)] {
            let p = eliminated_factor(k);
            assert_eq!(p.weighted_degree(&wts).unwrap(), WeightedDegree::Homogeneous(deg));
        }
    }

    #[test]
    fn stored_term_counts_match_print() {
        assert_eq!(eliminated_factor(8).num_terms(), 8);
        assert_eq!(eliminated_factor(10).num_terms(), 18);
        assert_eq!(eliminated_factor(12).num_terms(), 32);
        assert_eq!(p810_coefficients().len(), 10);
        assert_eq!(p812_coefficients().len(), 14);
    }

    #[test]
    fn c6_vanishes_at_family_v_point() {
        // C₆ at (w,v,r,s) = (1,1,13,−12) is 0 by hand evaluation
        let f = paper_formula(6);
        let assign = BTreeMap::from([
            ("w".to_string(), rat_int(1)),
            ("v".to_string(), rat_int(1)),
            ("r".to_string(), rat_int(13)),
            ("s".to_string(), rat_int(-12)),
        ]);
        assert_eq!(f.eval(&assign).unwrap(), rat_int(0));
    }

    #[test]
    fn r_solution_examples() {
        // (w,v,s) = (1,1,−12) gives r = 13
        assert_eq!(r_solution_value(&rat_int(1), &rat_int(1), &rat_int(-12)), rat_int(13));
        // (w,v,s) = (1,2,3) gives r = −43/20
        assert_eq!(r_solution_value(&rat_int(1), &rat_int(2), &rat_int(3)), rat(-43, 20));
    }

    #[test]
    fn printed_factor_shape() {
        let f = resultant_810_printed_factor();
        assert_eq!(f.degree_in("w"), 19);
        assert_eq!(f.degree_in("v"), 19);
        let cof = r810_cofactor_homogeneous();
        assert_eq!(cof.degree_in("v"), 18);
        assert_eq!(cof.num_terms(), 10);
        // P₈,₁₀ and P₈,₁₂ contain only even powers of z
        for p in [p810_univariate(), p812_univariate()] {
            assert!(p.terms().all(|(e, _)| e[0] % 2 == 0));
        }
    }
}
