//! Generating functions of γ-matchings, γ-shapes and τ-canonical
//! γ-structures.
//!
//! The matching series H_γ(z,t) is the unique solution of
//!
//! ```text
//! H = 1 + z H² + Is_γ( zH² / (1 - zH²), t )
//! ```
//!
//! solved here by fixpoint iteration, which gains at least one z-order
//! per pass. Shapes and structures follow by substitution:
//!
//! ```text
//! S_γ(z,t,e)   = (1+z)/(1+2z-ze) · H_γ( z(1+z)/(1+2z-ze)², t )
//! G_{τ,γ}(z,t) = 1/ϑ_τ(z) · H_γ( ψ_τ(z), t ),   ψ_τ = u_τ z² / ϑ_τ²
//! ```
//!
//! with u_τ(z) = (z²)^{τ-1}/(z^{2τ}-z²+1) and ϑ_τ = u_τ z² - z + 1.
//! Writing D = z^{2τ}-z²+1 and A = ϑ_τ·D = 2z^{2τ}-z^{2τ+1}+z³-z²-z+1
//! clears all denominators: ψ_τ = z^{2τ}·D/A².

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, GenSeries, MPoly, Marker};
use crate::shadows::{self, ShadowsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenfunError {
    #[error(transparent)]
    Shadows(#[from] ShadowsError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("genus distribution undefined: zero total count at n={0}")]
    DegenerateDistribution(usize),
}

/// The functional system for one genus bound: the irreducible-shadow
/// polynomial Is_γ and a truncation order.
#[derive(Debug, Clone)]
pub struct FunctionalSystem {
    gamma: usize,
    is_poly: MPoly,
    order: usize,
}

impl FunctionalSystem {
    /// Assemble a system from an explicit Is polynomial. The pipeline is
    /// generic in this input; catalogs beyond genus 2 would slot in here.
    pub fn new(gamma: usize, is_poly: MPoly, order: usize) -> Self {
        FunctionalSystem {
            gamma,
            is_poly,
            order,
        }
    }

    /// Standard system built from the enumerated shadow catalogs.
    pub fn for_gamma(gamma: usize, order: usize) -> Result<Self, GenfunError> {
        Ok(Self::new(gamma, shadows::is_polynomial(gamma)?, order))
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn is_poly(&self) -> &MPoly {
        &self.is_poly
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// One application of the fixpoint map at the given truncation order.
    fn step(&self, h: &GenSeries) -> GenSeries {
        let order = h.order();
        let w = h.mul(h).shift_z(1); // z H²
        let geom = GenSeries::one(order)
            .sub(&w)
            .invert()
            .expect("1 - zH² has constant term 1");
        let arg = w.mul(&geom); // zH²/(1-zH²), valuation 1
        let is_term =
            GenSeries::compose_poly(&self.is_poly, &arg).expect("argument has positive valuation");
        GenSeries::one(order).add(&w).add(&is_term)
    }

    /// The matching series H_γ(z,t) modulo z^{order+1}. Each pass gains
    /// one exact z-order, so pass k runs at truncation k.
    pub fn h_series(&self) -> GenSeries {
        let mut h = GenSeries::one(0);
        for k in 1..=self.order {
            h = self.step(&h.truncate(k));
        }
        h
    }

    /// Witness polynomial P_γ(z,t,X) with
    /// P = (1-zX²)^{6γ-2}(-1+X-zX²) - (1-zX²)^{6γ-2}·Is_γ(zX²/(1-zX²), t),
    /// of X-degree 12γ-2, satisfying P(z,t,H_γ) = 0.
    pub fn p_polynomial(&self) -> MPoly {
        let d = (6 * self.gamma - 2) as u16;
        assert!(
            self.is_poly.degree(Marker::Z) <= d,
            "Is polynomial degree exceeds 6γ-2"
        );
        let zx2 = MPoly::term(BigInt::one(), [1, 0, 0, 2]);
        let one_minus = MPoly::one().sub(&zx2);
        let base = one_minus
            .pow(d as u32)
            .mul(&MPoly::var(Marker::X).sub(&MPoly::one()).sub(&zx2));
        // (1-u)^d · Is(u/(1-u), t) = Σ_k c_k(t) u^k (1-u)^{d-k},  u = zX²
        let mut sub = MPoly::zero();
        for k in 0..=self.is_poly.degree(Marker::Z) {
            let ck = self.is_poly.coefficient_of(Marker::Z, k);
            if ck.is_zero() {
                continue;
            }
            sub = sub.add(&ck.mul(&zx2.pow(k as u32)).mul(&one_minus.pow((d - k) as u32)));
        }
        base.sub(&sub)
    }

    /// Check P_γ(z,t,H_γ(z,t)) ≡ 0 modulo z^{order+1}.
    pub fn verify_algebraic(&self) -> bool {
        let h = self.h_series();
        let p = self.p_polynomial();
        substitute_into_x(&p, &h).is_zero()
    }
}

/// Evaluate a polynomial in X at a series, coefficient-wise in (z,t).
fn substitute_into_x(p: &MPoly, h: &GenSeries) -> GenSeries {
    let order = h.order();
    let top = p.degree(Marker::X);
    let mut acc = GenSeries::from_mpoly(&p.coefficient_of(Marker::X, top), order);
    for j in (0..top).rev() {
        acc = acc.mul(h);
        acc = acc.add(&GenSeries::from_mpoly(&p.coefficient_of(Marker::X, j), order));
    }
    acc
}

/// H_γ(z,t) modulo z^{N+1}.
pub fn h_series(gamma: usize, order: usize) -> Result<GenSeries, GenfunError> {
    Ok(FunctionalSystem::for_gamma(gamma, order)?.h_series())
}

/// H_γ(z,1): the univariate specialization, much cheaper at large order.
pub fn h_series_t1(gamma: usize, order: usize) -> Result<GenSeries, GenfunError> {
    let is_t1 = shadows::is_polynomial(gamma)?.subst_one(Marker::T);
    Ok(FunctionalSystem::new(gamma, is_t1, order).h_series())
}

/// P_γ(z,t,X).
pub fn p_polynomial(gamma: usize) -> Result<MPoly, GenfunError> {
    Ok(FunctionalSystem::for_gamma(gamma, 0)?.p_polynomial())
}

/// P_γ(z,t,X) with t = 1, for the univariate singular system.
pub fn p_polynomial_t1(gamma: usize) -> Result<MPoly, GenfunError> {
    Ok(p_polynomial(gamma)?.subst_one(Marker::T))
}

/// Check P_γ(z,t,H_γ) ≡ 0 modulo z^{N+1}.
pub fn verify_algebraic(gamma: usize, order: usize) -> Result<bool, GenfunError> {
    Ok(FunctionalSystem::for_gamma(gamma, order)?.verify_algebraic())
}

/// S_γ(z,t,e): trivariate shape series with e marking 1-arcs.
pub fn s_series(gamma: usize, order: usize) -> Result<GenSeries, GenfunError> {
    let z = MPoly::var(Marker::Z);
    let e = MPoly::var(Marker::E);
    // 1 + 2z - ze
    let den = MPoly::one()
        .add(&MPoly::monomial(2, Marker::Z, 1))
        .sub(&z.mul(&e));
    let prefactor = GenSeries::rational_expand(&MPoly::one().add(&z), &den, order)?;
    let inner = GenSeries::rational_expand(&z.mul(&MPoly::one().add(&z)), &den.pow(2), order)?;
    let h = h_series(gamma, order)?;
    Ok(prefactor.mul(&inner.compose_into(&h)?))
}

/// Numerator polynomials for the structure substitution at one τ:
/// D = z^{2τ} - z² + 1 and A = ϑ_τ·D.
pub fn structure_polys(tau: usize) -> (MPoly, MPoly) {
    assert!(tau >= 1);
    let t2 = (2 * tau) as u16;
    let d = MPoly::term(BigInt::one(), [t2, 0, 0, 0])
        .sub(&MPoly::monomial(1, Marker::Z, 2))
        .add(&MPoly::one());
    let a = MPoly::term(BigInt::from(2), [t2, 0, 0, 0])
        .sub(&MPoly::term(BigInt::one(), [t2 + 1, 0, 0, 0]))
        .add(&MPoly::monomial(1, Marker::Z, 3))
        .sub(&MPoly::monomial(1, Marker::Z, 2))
        .sub(&MPoly::var(Marker::Z))
        .add(&MPoly::one());
    (d, a)
}

/// ψ_τ(z) = z^{2τ}·D/A² as a series, the argument of H in the structure
/// substitution.
pub fn psi_series(tau: usize, order: usize) -> Result<GenSeries, GenfunError> {
    let (d, a) = structure_polys(tau);
    let num = d.shift(Marker::Z, (2 * tau) as u16);
    Ok(GenSeries::rational_expand(&num, &a.pow(2), order)?)
}

fn g_series_from_h(tau: usize, h: &GenSeries, order: usize) -> Result<GenSeries, GenfunError> {
    let (d, a) = structure_polys(tau);
    let inner = psi_series(tau, order)?;
    let prefactor = GenSeries::rational_expand(&d, &a, order)?;
    Ok(prefactor.mul(&inner.compose_into(h)?))
}

/// G_{τ,γ}(z,t): τ-canonical γ-structures counted by vertices (z) and
/// genus (t).
pub fn g_series(tau: usize, gamma: usize, order: usize) -> Result<GenSeries, GenfunError> {
    // ψ_τ has valuation 2τ, so H is needed only to order ⌊N/(2τ)⌋
    let h = h_series(gamma, order / (2 * tau))?;
    g_series_from_h(tau, &h, order)
}

/// G_{τ,γ}(z,1), the univariate structure counts.
pub fn g_series_t1(tau: usize, gamma: usize, order: usize) -> Result<GenSeries, GenfunError> {
    let h = h_series_t1(gamma, order / (2 * tau))?;
    g_series_from_h(tau, &h, order)
}

/// Exact genus distribution of τ-canonical γ-structures on n vertices:
/// probabilities for g = 0..⌊n/2⌋, summing to exactly 1.
pub fn genus_distribution(
    tau: usize,
    gamma: usize,
    n: usize,
) -> Result<Vec<BigRational>, GenfunError> {
    let g = g_series(tau, gamma, n)?;
    distribution_from_coeff(g.coeff(n), n)
}

/// Collect the [zⁿ t^g] coefficients of a bivariate series into a
/// genus-by-size count table.
pub fn genus_table(series: &GenSeries) -> crate::diagram::GenusTable {
    let mut table = crate::diagram::GenusTable::new();
    for n in 0..=series.order() {
        let coeff = series.coeff(n);
        for g in 0..=coeff.degree(Marker::T) {
            table.add(g as usize, n, coeff.coeff([0, g, 0, 0]));
        }
    }
    table
}

/// Distribution from a single [zⁿ] coefficient polynomial in t.
pub fn distribution_from_coeff(
    coeff: &MPoly,
    n: usize,
) -> Result<Vec<BigRational>, GenfunError> {
    let total = coeff.subst_one(Marker::T).as_constant().unwrap_or_default();
    if total.is_zero() {
        return Err(GenfunError::DegenerateDistribution(n));
    }
    let mut probs = Vec::with_capacity(n / 2 + 1);
    for g in 0..=n / 2 {
        let count = coeff.coeff([0, g as u16, 0, 0]);
        probs.push(BigRational::new(count, total.clone()));
    }
    Ok(probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use num_traits::Signed;

    fn coeff_map(h: &GenSeries, n: usize) -> Vec<(usize, BigInt)> {
        let c = h.coeff(n);
        (0..=c.degree(Marker::T))
            .map(|g| (g as usize, c.coeff([0, g, 0, 0])))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    #[test]
    fn h_small_coefficients() {
        let h = h_series(1, 4).unwrap();
        assert!(h.coeff(0).is_one());
        assert!(h.coeff(1).is_one());
        // [z²]H₁ = 2 + t, [z³]H₁ = 5 + 10t (brute-force oracle values)
        assert_eq!(
            coeff_map(&h, 2),
            vec![(0, BigInt::from(2)), (1, BigInt::from(1))]
        );
        assert_eq!(
            coeff_map(&h, 3),
            vec![(0, BigInt::from(5)), (1, BigInt::from(10))]
        );
    }

    #[test]
    fn h_matches_oracle_rows() {
        for gamma in 1..=2 {
            let h = h_series(gamma, 5).unwrap();
            for n in 0..=5 {
                let row = oracle::count_matchings(n, gamma).unwrap();
                for (g, count) in row {
                    assert_eq!(
                        h.coeff_int(n, g as u16, 0),
                        count,
                        "H_{} mismatch at n={} g={}",
                        gamma,
                        n,
                        g
                    );
                }
            }
        }
    }

    #[test]
    fn gamma_one_excludes_genus_two_shadows_at_four_arcs() {
        let h1 = h_series_t1(1, 4).unwrap();
        let h2 = h_series_t1(2, 4).unwrap();
        assert_eq!(h1.coeff_int(4, 0, 0), BigInt::from(105 - 17));
        assert_eq!(h2.coeff_int(4, 0, 0), BigInt::from(105));
    }

    #[test]
    fn h2_is_unrestricted_below_six_arcs() {
        // a genus-3 irreducible shadow needs ≥ 6 arcs
        let h = h_series_t1(2, 5).unwrap();
        for n in 0..=5 {
            assert_eq!(h.coeff_int(n, 0, 0), oracle::double_factorial_odd(n));
        }
    }

    #[test]
    fn fixpoint_stable_beyond_order() {
        let sys = FunctionalSystem::for_gamma(1, 12).unwrap();
        let h = sys.h_series();
        assert_eq!(sys.step(&h), h);
    }

    fn published_p1() -> MPoly {
        // term list (coeff, z, t, x)
        let terms: [(i64, u16, u16, u16); 12] = [
            (-1, 0, 0, 0),
            (1, 0, 0, 1),
            (3, 1, 0, 2),
            (-4, 1, 0, 3),
            (-2, 2, 0, 4),
            (-1, 2, 1, 4),
            (6, 2, 0, 5),
            (-2, 3, 0, 6),
            (-4, 3, 0, 7),
            (3, 4, 0, 8),
            (1, 4, 0, 9),
            (-1, 5, 0, 10),
        ];
        terms
            .iter()
            .fold(MPoly::zero(), |acc, &(c, z, t, x)| {
                acc.add(&MPoly::term(BigInt::from(c), [z, t, 0, x]))
            })
    }

    #[test]
    fn p1_matches_published_listing() {
        let p = p_polynomial(1).unwrap();
        assert_eq!(p, published_p1());
        assert_eq!(p.degree(Marker::X), 10);
    }

    #[test]
    fn p2_degree_and_leading_term() {
        let p = p_polynomial(2).unwrap();
        assert_eq!(p.degree(Marker::X), 22);
        assert_eq!(p.coeff([11, 0, 0, 22]), BigInt::from(-1));
    }

    #[test]
    fn algebraic_identity_holds() {
        assert!(verify_algebraic(1, 16).unwrap());
    }

    #[test]
    fn wrong_witness_fails() {
        // substituting H₁ into P₂ must not vanish
        let h1 = h_series(1, 10).unwrap();
        let p2 = p_polynomial(2).unwrap();
        assert!(!substitute_into_x(&p2, &h1).is_zero());
    }

    #[test]
    fn s_series_smallest_coefficients() {
        let s = s_series(1, 4).unwrap();
        assert!(s.coeff(0).is_one());
        // the unique 1-arc shape {(1,2)} is planar with one 1-arc: [z¹]S = e
        assert_eq!(s.coeff(1), &MPoly::var(Marker::E));
    }

    #[test]
    fn s_series_matches_shape_oracle() {
        for gamma in 1..=2 {
            let s = s_series(gamma, 4).unwrap();
            for n in 0..=4 {
                let row = oracle::count_shapes(n, gamma).unwrap();
                let coeff = s.coeff(n);
                let mut total_from_row = BigInt::zero();
                for (&(g, m), count) in &row {
                    assert_eq!(
                        coeff.coeff([0, g as u16, m as u16, 0]),
                        count.clone(),
                        "S_{} mismatch at n={} g={} m={}",
                        gamma,
                        n,
                        g,
                        m
                    );
                    total_from_row += count;
                }
                // and nothing extra: totals at t=e=1 agree
                let total = coeff
                    .subst_one(Marker::T)
                    .subst_one(Marker::E)
                    .as_constant()
                    .unwrap();
                assert_eq!(total, total_from_row);
            }
        }
    }

    #[test]
    fn g_series_small_structure_counts() {
        let g21 = g_series(2, 1, 5).unwrap();
        for n in 0..=4 {
            assert_eq!(g21.coeff_int(n, 0, 0), BigInt::one(), "n={}", n);
            assert!(g21.coeff(n).subst_one(Marker::T).as_constant().unwrap().is_one());
        }
        assert_eq!(
            g21.coeff(5).subst_one(Marker::T).as_constant().unwrap(),
            BigInt::from(2)
        );
        let g11 = g_series(1, 1, 3).unwrap();
        assert_eq!(g11.coeff_int(3, 0, 0), BigInt::from(2));
    }

    #[test]
    fn g_series_matches_structure_oracle_small() {
        for (tau, gamma) in [(1, 1), (2, 1), (1, 2), (3, 2)] {
            let g = g_series(tau, gamma, 9).unwrap();
            for n in 0..=9 {
                let row = oracle::count_structures(n, tau, gamma).unwrap();
                let coeff = g.coeff(n);
                let t_deg = coeff.degree(Marker::T) as usize;
                for gen in 0..=t_deg.max(row.keys().max().copied().unwrap_or(0)) {
                    let want = row.get(&gen).cloned().unwrap_or_else(BigInt::zero);
                    assert_eq!(
                        coeff.coeff([0, gen as u16, 0, 0]),
                        want,
                        "G tau={} gamma={} n={} g={}",
                        tau,
                        gamma,
                        n,
                        gen
                    );
                }
            }
        }
    }

    #[test]
    fn t_degree_bounded_by_half_n() {
        let g = g_series(1, 2, 12).unwrap();
        for n in 0..=12 {
            assert!(g.coeff(n).degree(Marker::T) as usize <= n / 2);
        }
    }

    #[test]
    fn genus_table_collects_series_counts() {
        let g = g_series(1, 1, 6).unwrap();
        let table = genus_table(&g);
        assert_eq!(table.get(0, 3), BigInt::from(2));
        assert_eq!(table.total_at(5), BigInt::from(13));
        assert_eq!(table.max_genus_at(4), Some(1));
        // matches the per-size oracle rows entrywise
        for n in 0..=6usize {
            let row = oracle::count_structures(n, 1, 1).unwrap();
            for (g, count) in row {
                assert_eq!(table.get(g, n), count);
            }
        }
    }

    #[test]
    fn corrupted_is2_shifts_the_witness_polynomial() {
        // fault injection: bump the z^4 t^2 coefficient of Is_2 by one;
        // the generated witness polynomial must no longer match the one
        // built from the true catalog.
        let is2 = shadows::is_polynomial(2).unwrap();
        let corrupted = is2.add(&MPoly::term(BigInt::one(), [4, 2, 0, 0]));
        let good = FunctionalSystem::new(2, is2, 8);
        let bad = FunctionalSystem::new(2, corrupted, 8);
        assert_ne!(bad.p_polynomial(), good.p_polynomial());
        // the corrupted system is still self-consistent: its own series
        // satisfies its own polynomial, so the listing match is what
        // detects the fault
        assert!(bad.verify_algebraic());
    }

    #[test]
    fn distribution_point_mass_and_normalization() {
        let probs = genus_distribution(2, 1, 4).unwrap();
        assert_eq!(probs[0], BigRational::one());
        for p in &probs[1..] {
            assert!(p.is_zero());
        }
        let probs = genus_distribution(1, 1, 9).unwrap();
        let sum: BigRational = probs.iter().sum();
        assert_eq!(sum, BigRational::one());
    }

    #[test]
    fn equation_one_consistency_at_rational_point() {
        // The block-decomposition form H⁻¹ = 1 - (zH + H⁻¹·Is(zH²/(1-zH²),t))
        // evaluated on the truncated series at a point well inside the
        // disc of convergence; the residual is bounded by the series tail.
        let n = 40;
        let z0 = BigRational::new(BigInt::from(1), BigInt::from(25));
        let t0 = BigRational::one();
        for gamma in 1..=2 {
            let h = h_series(gamma, n).unwrap();
            let hv = h.eval_rational(&z0, &t0, &BigRational::one());
            let w = &z0 * &hv * &hv;
            let arg = &w / (BigRational::one() - &w);
            let is = shadows::is_polynomial(gamma).unwrap().eval_rational(&[
                arg,
                t0.clone(),
                BigRational::zero(),
                BigRational::zero(),
            ]);
            let lhs = BigRational::one() / &hv;
            let rhs = BigRational::one() - (&z0 * &hv + is / &hv);
            let diff = (lhs - rhs).abs();
            let bound = BigRational::new(BigInt::from(1), BigInt::from(10).pow(6));
            assert!(diff < bound, "gamma={} residual {}", gamma, diff);
        }
    }

    #[test]
    fn per_shape_generating_functions_sum_to_structure_series() {
        // For a shape with s arcs, m 1-arcs and genus g the inflation
        // series is (1-z)⁻¹ · (z^{2τ}/((1-z²)(1-z)² - (2z-z²)z^{2τ}))^s
        // · z^m · t^g; summing over all shapes reproduces G_{τ,γ}.
        let order = 10;
        for (tau, gamma) in [(1usize, 1usize), (2, 1), (1, 2)] {
            let z = MPoly::var(Marker::Z);
            let one = MPoly::one();
            let t2 = (2 * tau) as u16;
            // (1-z²)(1-z)² - (2z-z²)·z^{2τ}
            let den = one
                .sub(&MPoly::monomial(1, Marker::Z, 2))
                .mul(&one.sub(&z).pow(2))
                .sub(
                    &MPoly::monomial(2, Marker::Z, 1)
                        .sub(&MPoly::monomial(1, Marker::Z, 2))
                        .mul(&MPoly::term(BigInt::one(), [t2, 0, 0, 0])),
                );
            let kernel = GenSeries::rational_expand(
                &MPoly::term(BigInt::one(), [t2, 0, 0, 0]),
                &den,
                order,
            )
            .unwrap();
            let isolated = GenSeries::rational_expand(&one, &one.sub(&z), order).unwrap();
            let mut total = GenSeries::zero(order);
            // shapes with up to 5 arcs cover valuation 2τ·s ≤ 10
            for s in 0..=5usize {
                let row = oracle::count_shapes(s, gamma).unwrap();
                let mut kernel_pow = isolated.clone();
                for _ in 0..s {
                    kernel_pow = kernel_pow.mul(&kernel);
                }
                for (&(g, m), count) in &row {
                    let factor = MPoly::term(count.clone(), [0, g as u16, 0, 0]);
                    total = total.add(&kernel_pow.mul_poly(&factor).shift_z(m));
                }
            }
            let direct = g_series(tau, gamma, order).unwrap();
            assert_eq!(total, direct, "tau={} gamma={}", tau, gamma);
        }
    }
}
