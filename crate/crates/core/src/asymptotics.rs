//! Numeric singularity analysis of the structure series.
//!
//! The dominant singularity ρ_γ(s) of H_γ(z,e^s) solves the critical
//! system Φ(ρ,π) = 0, Φ_X(ρ,π) = 0 for Φ(z,X) = P_γ(z,e^s,X); the
//! dominant singularity θ_{τ,γ}(s) of G_{τ,γ}(z,e^s) is the smallest
//! positive root of ψ_τ(z) = ρ_γ(s). The central-limit parameters are
//!
//! ```text
//! μ = -θ'(0)/θ(0),    σ² = (θ'(0)/θ(0))² - θ''(0)/θ(0)
//! ```
//!
//! computed two ways: implicit differentiation of the critical system
//! and central finite differences with one Richardson level. Both must
//! agree to 10⁻⁷.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{sylvester_resultant, BigFloat, GenSeries, MPoly, Marker, DEFAULT_DIGITS};
use crate::genfun::{self, GenfunError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error(transparent)]
    Genfun(#[from] GenfunError),
    #[error("Newton iteration failed to converge for gamma={gamma}, s={s}")]
    ConvergenceFailure { gamma: usize, s: f64 },
    #[error("degenerate critical point: {0}")]
    DegenerateCritical(String),
    #[error("a root of the prefactor denominator has modulus {modulus} ≤ θ = {theta}")]
    DominanceViolation { modulus: f64, theta: f64 },
    #[error("differentiation methods disagree: |Δμ|={dmu:e}, |Δσ²|={dsigma2:e}")]
    MethodDisagreement { dmu: f64, dsigma2: f64 },
}

/// A solution of the critical system Φ = Φ_X = 0 with diagnostics.
#[derive(Debug, Clone)]
pub struct SingularPoint {
    /// Singularity location ρ (or the continued branch value at s ≠ 0).
    pub z: BigFloat,
    /// Branch value π = H at the singularity.
    pub x: BigFloat,
    /// Expansion parameter.
    pub s: BigFloat,
    /// max(|Φ|, |Φ_X|) at the returned point.
    pub residual: f64,
    /// |Φ_z| and |Φ_XX|, the nondegeneracy side conditions.
    pub side_phi_z: f64,
    pub side_phi_xx: f64,
    /// |res_X(Φ, Φ_X)(z)| normalized by the Hadamard bound of the
    /// Sylvester matrix: the near-zero resultant certificate.
    pub resultant_rel: f64,
}

/// Central-limit parameters for one (τ, γ) cell.
#[derive(Debug, Clone)]
pub struct CltReport {
    pub tau: usize,
    pub gamma: usize,
    pub rho0: BigFloat,
    pub theta0: BigFloat,
    /// Implicit-differentiation values (the reported ones).
    pub mu: BigFloat,
    pub sigma2: BigFloat,
    /// Finite-difference values with Richardson extrapolation.
    pub mu_fd: BigFloat,
    pub sigma2_fd: BigFloat,
    pub diagnostics: CltDiagnostics,
}

#[derive(Debug, Clone)]
pub struct CltDiagnostics {
    pub residual: f64,
    pub side_conditions_ok: bool,
    pub resultant_certificate: f64,
    pub theta_dominated_by: f64,
    pub method_gap_mu: f64,
    pub method_gap_sigma2: f64,
}

/// Exact-vs-Gaussian comparison of the genus distribution at one length.
#[derive(Debug, Clone)]
pub struct DistributionReport {
    pub tau: usize,
    pub gamma: usize,
    pub n: usize,
    pub exact_mean: f64,
    pub exact_variance: f64,
    pub tv_distance: f64,
    /// Rows (g, exact probability, discretized gaussian mass).
    pub rows: Vec<(usize, BigRational, f64)>,
}

/// Precomputed symbolic partials of P_γ, evaluated on demand.
struct CriticalSystem {
    gamma: usize,
    digits: usize,
    p: MPoly,
    p_z: MPoly,
    p_x: MPoly,
    p_xx: MPoly,
    p_xz: MPoly,
    p_zz: MPoly,
    p_t: MPoly,
    p_tt: MPoly,
    p_zt: MPoly,
    p_xt: MPoly,
}

impl CriticalSystem {
    fn new(gamma: usize, digits: usize) -> Result<Self, AsymptoticsError> {
        let p = genfun::p_polynomial(gamma)?;
        let p_z = p.derivative(Marker::Z);
        let p_x = p.derivative(Marker::X);
        Ok(CriticalSystem {
            gamma,
            digits,
            p_xx: p_x.derivative(Marker::X),
            p_xz: p_x.derivative(Marker::Z),
            p_zz: p_z.derivative(Marker::Z),
            p_t: p.derivative(Marker::T),
            p_tt: p.derivative(Marker::T).derivative(Marker::T),
            p_zt: p_z.derivative(Marker::T),
            p_xt: p_x.derivative(Marker::T),
            p,
            p_z,
            p_x,
        })
    }

    fn eval(&self, poly: &MPoly, z: &BigFloat, t: &BigFloat, x: &BigFloat) -> BigFloat {
        let zero = BigFloat::from_i64(0, self.digits);
        poly.eval_float(&[z.clone(), t.clone(), zero, x.clone()])
    }

    /// One Newton solve of Φ = Φ_X = 0 from the given seed at fixed t.
    fn newton(
        &self,
        t: &BigFloat,
        mut z: BigFloat,
        mut x: BigFloat,
        s_for_error: f64,
    ) -> Result<(BigFloat, BigFloat), AsymptoticsError> {
        let tol = BigFloat::parse(&format!("1e-{}", self.digits.saturating_sub(8)), self.digits)
            .unwrap();
        for _ in 0..300 {
            let f1 = self.eval(&self.p, &z, t, &x);
            let f2 = self.eval(&self.p_x, &z, t, &x);
            let j11 = self.eval(&self.p_z, &z, t, &x);
            let j12 = self.eval(&self.p_x, &z, t, &x);
            let j21 = self.eval(&self.p_xz, &z, t, &x);
            let j22 = self.eval(&self.p_xx, &z, t, &x);
            let det = j11.mul(&j22).sub(&j12.mul(&j21));
            if det.is_zero() {
                return Err(AsymptoticsError::DegenerateCritical(format!(
                    "singular Jacobian at gamma={}, s={}",
                    self.gamma, s_for_error
                )));
            }
            let dz = f1.mul(&j22).sub(&f2.mul(&j12)).div(&det);
            let dx = f2.mul(&j11).sub(&f1.mul(&j21)).div(&det);
            z = z.sub(&dz);
            x = x.sub(&dx);
            if dz.abs() < tol && dx.abs() < tol {
                return Ok((z, x));
            }
        }
        Err(AsymptoticsError::ConvergenceFailure {
            gamma: self.gamma,
            s: s_for_error,
        })
    }

    /// Seed at s = 0 from series data: z₀ from the coefficient ratio of
    /// H_γ(z,1) at n = 60, X₀ from evaluating the truncated series,
    /// polished on Φ_X(z₀, ·) before the joint solve.
    fn seed(&self) -> Result<(BigFloat, BigFloat), AsymptoticsError> {
        let h = genfun::h_series_t1(self.gamma, 61)?;
        let a60 = BigFloat::from_bigint(
            &h.coeff(60).as_constant().expect("univariate coefficient"),
            self.digits,
        );
        let a61 = BigFloat::from_bigint(
            &h.coeff(61).as_constant().expect("univariate coefficient"),
            self.digits,
        );
        let z0 = a60.div(&a61);
        let mut x0 = BigFloat::from_i64(0, self.digits);
        for k in (0..=61).rev() {
            let c = BigFloat::from_bigint(&h.coeff(k).as_constant().unwrap(), self.digits);
            x0 = x0.mul(&z0).add(&c);
        }
        // 1D polish: bring X onto the double-root locus Φ_X = 0
        let one = BigFloat::from_i64(1, self.digits);
        for _ in 0..80 {
            let f = self.eval(&self.p_x, &z0, &one, &x0);
            let fp = self.eval(&self.p_xx, &z0, &one, &x0);
            if fp.is_zero() {
                break;
            }
            let step = f.div(&fp);
            x0 = x0.sub(&step);
            if step.abs().to_f64() < 1e-30 {
                break;
            }
        }
        Ok((z0, x0))
    }

    /// Continue the branch from s = 0 to the target s in steps ≤ 0.01,
    /// then attach diagnostics.
    fn rho(&self, s: &BigFloat) -> Result<SingularPoint, AsymptoticsError> {
        let (mut z, mut x) = self.seed()?;
        let steps = (s.to_f64().abs() / 0.01).ceil().max(1.0) as usize;
        for k in 1..=steps {
            let frac = BigFloat::from_i64(k as i64, self.digits)
                .div(&BigFloat::from_i64(steps as i64, self.digits));
            let sk = s.mul(&frac);
            let t = sk.exp();
            let (zn, xn) = self.newton(&t, z, x, sk.to_f64())?;
            z = zn;
            x = xn;
        }
        self.attach_diagnostics(s, z, x)
    }

    fn attach_diagnostics(
        &self,
        s: &BigFloat,
        z: BigFloat,
        x: BigFloat,
    ) -> Result<SingularPoint, AsymptoticsError> {
        let t = s.exp();
        let residual = self
            .eval(&self.p, &z, &t, &x)
            .abs()
            .to_f64()
            .max(self.eval(&self.p_x, &z, &t, &x).abs().to_f64());
        let side_phi_z = self.eval(&self.p_z, &z, &t, &x).abs().to_f64();
        let side_phi_xx = self.eval(&self.p_xx, &z, &t, &x).abs().to_f64();
        if side_phi_z < 1e-12 || side_phi_xx < 1e-12 {
            return Err(AsymptoticsError::DegenerateCritical(format!(
                "side condition violated at gamma={}: |Φ_z|={:e}, |Φ_XX|={:e}",
                self.gamma, side_phi_z, side_phi_xx
            )));
        }
        let resultant_rel = self.resultant_certificate(&z, &t);
        Ok(SingularPoint {
            z,
            x,
            s: s.clone(),
            residual,
            side_phi_z,
            side_phi_xx,
            resultant_rel,
        })
    }

    /// |res_X(Φ, Φ_X)| at z, normalized by the Hadamard bound.
    fn resultant_certificate(&self, z: &BigFloat, t: &BigFloat) -> f64 {
        let coeffs = |poly: &MPoly| -> Vec<BigFloat> {
            let deg = poly.degree(Marker::X);
            (0..=deg)
                .rev()
                .map(|j| {
                    let c = poly.coefficient_of(Marker::X, j);
                    let zero = BigFloat::from_i64(0, self.digits);
                    c.eval_float(&[z.clone(), t.clone(), zero.clone(), zero])
                })
                .collect()
        };
        let pc = coeffs(&self.p);
        let qc = coeffs(&self.p_x);
        let res = sylvester_resultant(&pc, &qc).expect("leading coefficients nonzero");
        // Hadamard bound: product of row Euclidean norms of the Sylvester matrix
        let row_norm = |cs: &[BigFloat]| -> f64 {
            cs.iter().map(|c| c.to_f64().powi(2)).sum::<f64>().sqrt()
        };
        let bound = row_norm(&pc).powi(qc.len() as i32 - 1) * row_norm(&qc).powi(pc.len() as i32 - 1);
        (res.to_f64() / bound).abs()
    }
}

/// Dominant singularity ρ_γ(s) of H_γ(z,e^s): the s=0 solution of the
/// critical system continued analytically in s. Valid for |s| ≤ 0.1.
pub fn rho(gamma: usize, s: f64, digits: usize) -> Result<SingularPoint, AsymptoticsError> {
    assert!(s.abs() <= 0.1, "rho is continued only for |s| <= 0.1");
    let sys = CriticalSystem::new(gamma, digits)?;
    sys.rho(&BigFloat::from_f64(s, digits))
}

/// Coefficient list of a univariate-in-z polynomial, ascending degree.
fn z_coeff_list(p: &MPoly) -> Vec<BigInt> {
    (0..=p.degree(Marker::Z))
        .map(|k| {
            p.coefficient_of(Marker::Z, k)
                .as_constant()
                .expect("univariate polynomial")
        })
        .collect()
}

fn eval_poly(coeffs: &[BigInt], z: &BigFloat, digits: usize) -> BigFloat {
    let mut acc = BigFloat::from_i64(0, digits);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(&BigFloat::from_bigint(c, digits));
    }
    acc
}

fn derivative_coeffs(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect()
}

/// The polynomial Q_s(z) = z^{2τ}·D(z) - ρ·A(z)² whose smallest positive
/// root is θ_{τ,γ}(s), plus helpers evaluated at big-float points.
struct ThetaSolver {
    tau: usize,
    digits: usize,
    num: Vec<BigInt>,    // z^{2τ}·D
    den: Vec<BigInt>,    // A²
    num_d: Vec<BigInt>,  // first derivatives
    den_d: Vec<BigInt>,
    num_dd: Vec<BigInt>, // second derivatives
    den_dd: Vec<BigInt>,
    a: Vec<BigInt>,      // A itself, for the dominance check
}

impl ThetaSolver {
    fn new(tau: usize, digits: usize) -> Self {
        let (d, a) = genfun::structure_polys(tau);
        let num_poly = d.shift(Marker::Z, (2 * tau) as u16);
        let num = z_coeff_list(&num_poly);
        let den = z_coeff_list(&a.pow(2));
        let num_d = derivative_coeffs(&num);
        let den_d = derivative_coeffs(&den);
        ThetaSolver {
            tau,
            digits,
            num_dd: derivative_coeffs(&num_d),
            den_dd: derivative_coeffs(&den_d),
            num_d,
            den_d,
            num,
            den,
            a: z_coeff_list(&a),
        }
    }

    fn q(&self, z: &BigFloat, rho: &BigFloat) -> BigFloat {
        eval_poly(&self.num, z, self.digits).sub(&rho.mul(&eval_poly(&self.den, z, self.digits)))
    }

    fn q_prime(&self, z: &BigFloat, rho: &BigFloat) -> BigFloat {
        eval_poly(&self.num_d, z, self.digits)
            .sub(&rho.mul(&eval_poly(&self.den_d, z, self.digits)))
    }

    /// Smallest positive real root of Q, bracketed by an f64 scan up to
    /// the first positive root of A and polished by big-float Newton.
    fn solve(&self, rho: &BigFloat) -> Result<BigFloat, AsymptoticsError> {
        let rho_f = rho.to_f64();
        let a_f64: Vec<f64> = self.a.iter().map(|c| c.to_f64().unwrap()).collect();
        let a_roots = durand_kerner(&a_f64);
        let delta = a_roots
            .iter()
            .filter(|r| r.im.abs() < 1e-9 && r.re > 1e-12)
            .map(|r| r.re)
            .fold(f64::INFINITY, f64::min);
        let scan_to = if delta.is_finite() { delta } else { 1.0 };
        let q_f64 = |z: f64| -> f64 {
            let nv = self.num.iter().rev().fold(0.0, |acc, c| acc * z + c.to_f64().unwrap());
            let dv = self.den.iter().rev().fold(0.0, |acc, c| acc * z + c.to_f64().unwrap());
            nv - rho_f * dv
        };
        let steps = 20_000;
        let mut bracket = None;
        let mut prev = q_f64(0.0);
        for k in 1..=steps {
            let zk = scan_to * k as f64 / (steps as f64 + 1.0);
            let cur = q_f64(zk);
            if prev.signum() != cur.signum() {
                bracket = Some((scan_to * (k - 1) as f64 / (steps as f64 + 1.0), zk));
                break;
            }
            prev = cur;
        }
        let (lo, hi) = bracket.ok_or_else(|| {
            AsymptoticsError::DegenerateCritical(format!(
                "no sign change of Q before the prefactor pole, tau={}",
                self.tau
            ))
        })?;
        let mut z = BigFloat::from_f64(0.5 * (lo + hi), self.digits);
        for _ in 0..200 {
            let f = self.q(&z, rho);
            let fp = self.q_prime(&z, rho);
            if fp.is_zero() {
                break;
            }
            let step = f.div(&fp);
            z = z.sub(&step);
            if step.abs().to_f64() < 10f64.powi(-(self.digits as i32 - 8)) {
                break;
            }
        }
        // dominance: every root of A must lie strictly outside |θ|
        let theta_f = z.to_f64();
        for r in &a_roots {
            let modulus = (r.re * r.re + r.im * r.im).sqrt();
            if modulus <= theta_f {
                return Err(AsymptoticsError::DominanceViolation {
                    modulus,
                    theta: theta_f,
                });
            }
        }
        Ok(z)
    }

    /// ψ_τ, ψ_τ', ψ_τ'' at a point, from the quotient rule on N/M.
    fn psi_derivatives(&self, z: &BigFloat) -> (BigFloat, BigFloat, BigFloat) {
        let n0 = eval_poly(&self.num, z, self.digits);
        let n1 = eval_poly(&self.num_d, z, self.digits);
        let n2 = eval_poly(&self.num_dd, z, self.digits);
        let m0 = eval_poly(&self.den, z, self.digits);
        let m1 = eval_poly(&self.den_d, z, self.digits);
        let m2 = eval_poly(&self.den_dd, z, self.digits);
        let psi = n0.div(&m0);
        let psi1 = n1.mul(&m0).sub(&n0.mul(&m1)).div(&m0.mul(&m0));
        let two = BigFloat::from_i64(2, self.digits);
        let num2 = n2
            .mul(&m0)
            .mul(&m0)
            .sub(&two.mul(&n1).mul(&m1).mul(&m0))
            .sub(&n0.mul(&m2).mul(&m0))
            .add(&two.mul(&n0).mul(&m1).mul(&m1));
        let psi2 = num2.div(&m0.mul(&m0).mul(&m0));
        (psi, psi1, psi2)
    }
}

/// Dominant singularity θ_{τ,γ}(s) of G_{τ,γ}(z,e^s).
pub fn theta(tau: usize, gamma: usize, s: f64, digits: usize) -> Result<BigFloat, AsymptoticsError> {
    let point = rho(gamma, s, digits)?;
    ThetaSolver::new(tau, digits).solve(&point.z)
}

/// All roots of a real polynomial (ascending coefficients) by
/// Durand-Kerner iteration in complex f64.
fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| -> Complex64 {
        monic
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::new(0.4, 0.9).powu(k as u32 + 1))
        .collect();
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-13 {
            break;
        }
    }
    roots
}

/// Central-limit parameters μ_{τ,γ} and σ²_{τ,γ} with both
/// differentiation routes and full diagnostics.
pub fn clt_params(tau: usize, gamma: usize) -> Result<CltReport, AsymptoticsError> {
    clt_params_with_digits(tau, gamma, DEFAULT_DIGITS)
}

pub fn clt_params_with_digits(
    tau: usize,
    gamma: usize,
    digits: usize,
) -> Result<CltReport, AsymptoticsError> {
    assert!(digits >= 30, "numeric differentiation needs at least 30 digits");
    let sys = CriticalSystem::new(gamma, digits)?;
    let branch = RhoBranch::compute(&sys, digits)?;
    clt_cell(&sys, &branch, tau, digits)
}

/// The five critical points used by one γ: s = 0, ±h/2, ±h for the
/// exact decimal step h = 10⁻³. Shared across τ cells.
pub(crate) struct RhoBranch {
    points: BTreeMap<i32, SingularPoint>, // key: s / (h/2)
    half_step: BigFloat,
}

impl RhoBranch {
    fn compute(sys: &CriticalSystem, digits: usize) -> Result<Self, AsymptoticsError> {
        let half_step = BigFloat::parse("0.0005", digits).unwrap();
        let mut points = BTreeMap::new();
        for k in [-2i32, -1, 0, 1, 2] {
            let s = half_step.mul(&BigFloat::from_i64(k as i64, digits));
            points.insert(k, sys.rho(&s)?);
        }
        Ok(RhoBranch { points, half_step })
    }

    fn at(&self, k: i32) -> &SingularPoint {
        &self.points[&k]
    }
}

fn clt_cell(
    sys: &CriticalSystem,
    branch: &RhoBranch,
    tau: usize,
    digits: usize,
) -> Result<CltReport, AsymptoticsError> {
    let solver = ThetaSolver::new(tau, digits);
    let p0 = branch.at(0);
    let theta0 = solver.solve(&p0.z)?;

    // ---- route (i): implicit differentiation of the critical system ----
    let one = BigFloat::from_i64(1, digits);
    let (z, x) = (&p0.z, &p0.x);
    let ev = |poly: &MPoly| sys.eval(poly, z, &one, x);
    let phi_z = ev(&sys.p_z);
    let phi_xx = ev(&sys.p_xx);
    let phi_xz = ev(&sys.p_xz);
    let phi_zz = ev(&sys.p_zz);
    let phi_t = ev(&sys.p_t);
    let phi_tt = ev(&sys.p_tt);
    let phi_zt = ev(&sys.p_zt);
    let phi_xt = ev(&sys.p_xt);
    // at s=0: Φ_s = P_t, Φ_ss = P_tt + P_t, Φ_zs = P_zt, Φ_Xs = P_Xt
    let rho1 = phi_t.div(&phi_z).neg();
    let pi1 = phi_xz.mul(&rho1).add(&phi_xt).div(&phi_xx).neg();
    let two = BigFloat::from_i64(2, digits);
    let rho2 = phi_zz
        .mul(&rho1)
        .mul(&rho1)
        .add(&phi_xz.mul(&rho1).mul(&pi1))
        .add(&two.mul(&phi_zt).mul(&rho1))
        .add(&phi_xt.mul(&pi1))
        .add(&phi_tt.add(&phi_t))
        .div(&phi_z)
        .neg();
    let (_, psi1, psi2) = solver.psi_derivatives(&theta0);
    let theta1 = rho1.div(&psi1);
    let theta2 = rho2.sub(&psi2.mul(&theta1).mul(&theta1)).div(&psi1);
    let mu = theta1.div(&theta0).neg();
    let ratio = theta1.div(&theta0);
    let sigma2 = ratio.mul(&ratio).sub(&theta2.div(&theta0));

    // ---- route (ii): central differences with one Richardson level ----
    let th = |k: i32| -> Result<BigFloat, AsymptoticsError> { solver.solve(&branch.at(k).z) };
    let (tm2, tm1, tp1, tp2) = (th(-2)?, th(-1)?, th(1)?, th(2)?);
    let h = branch.half_step.mul(&two); // 10⁻³
    let half = &branch.half_step;
    let d1_h = tp2.sub(&tm2).div(&two.mul(&h));
    let d1_h2 = tp1.sub(&tm1).div(&two.mul(half));
    let four = BigFloat::from_i64(4, digits);
    let three = BigFloat::from_i64(3, digits);
    let theta1_fd = four.mul(&d1_h2).sub(&d1_h).div(&three);
    let d2_h = tp2.sub(&two.mul(&theta0)).add(&tm2).div(&h.mul(&h));
    let d2_h2 = tp1.sub(&two.mul(&theta0)).add(&tm1).div(&half.mul(half));
    let theta2_fd = four.mul(&d2_h2).sub(&d2_h).div(&three);
    let mu_fd = theta1_fd.div(&theta0).neg();
    let ratio_fd = theta1_fd.div(&theta0);
    let sigma2_fd = ratio_fd.mul(&ratio_fd).sub(&theta2_fd.div(&theta0));

    let dmu = mu.sub(&mu_fd).abs().to_f64();
    let dsigma2 = sigma2.sub(&sigma2_fd).abs().to_f64();
    if dmu > 1e-6 || dsigma2 > 1e-6 {
        return Err(AsymptoticsError::MethodDisagreement { dmu, dsigma2 });
    }

    // dominance margin for diagnostics: smallest |A-root| / θ
    let a_f64: Vec<f64> = solver.a.iter().map(|c| c.to_f64().unwrap()).collect();
    let min_a_root = durand_kerner(&a_f64)
        .iter()
        .map(|r| (r.re * r.re + r.im * r.im).sqrt())
        .fold(f64::INFINITY, f64::min);

    let theta_f = theta0.to_f64();
    if !(0.0 < theta_f && theta_f < 1.0) || mu.to_f64() <= 0.0 || sigma2.to_f64() <= 0.0 {
        return Err(AsymptoticsError::DegenerateCritical(format!(
            "parameters out of range: theta0={}, mu={}, sigma2={}",
            theta_f,
            mu.to_f64(),
            sigma2.to_f64()
        )));
    }

    Ok(CltReport {
        tau,
        gamma: sys.gamma,
        rho0: p0.z.clone(),
        theta0,
        mu,
        sigma2,
        mu_fd,
        sigma2_fd,
        diagnostics: CltDiagnostics {
            residual: p0.residual,
            side_conditions_ok: p0.side_phi_z > 1e-12 && p0.side_phi_xx > 1e-12,
            resultant_certificate: p0.resultant_rel,
            theta_dominated_by: min_a_root,
            method_gap_mu: dmu,
            method_gap_sigma2: dsigma2,
        },
    })
}

/// All Table-1-shaped cells for the given γ values and τ range, sharing
/// the critical-point computations per γ.
pub fn clt_table(
    gammas: &[usize],
    tau_max: usize,
    digits: usize,
) -> Result<Vec<CltReport>, AsymptoticsError> {
    let mut out = Vec::new();
    for &gamma in gammas {
        let sys = CriticalSystem::new(gamma, digits)?;
        let branch = RhoBranch::compute(&sys, digits)?;
        for tau in 1..=tau_max {
            out.push(clt_cell(&sys, &branch, tau, digits)?);
        }
    }
    Ok(out)
}

/// Standard normal CDF difference over [a, b] by composite Simpson on
/// the density (f64; the comparison tolerances are far coarser).
fn gaussian_cell_mass(mean: f64, var: f64, lo: f64, hi: f64) -> f64 {
    let sd = var.sqrt();
    let density = |x: f64| -> f64 {
        let u = (x - mean) / sd;
        (-0.5 * u * u).exp() / (sd * (2.0 * std::f64::consts::PI).sqrt())
    };
    let steps = 64;
    let h = (hi - lo) / steps as f64;
    let mut acc = density(lo) + density(hi);
    for k in 1..steps {
        let x = lo + k as f64 * h;
        acc += density(x) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

/// Exact genus distribution vs the discretized normal N(μn, σ²n):
/// exact mean and variance, per-cell masses and total-variation distance.
pub fn gaussian_compare(
    tau: usize,
    gamma: usize,
    n: usize,
) -> Result<DistributionReport, AsymptoticsError> {
    gaussian_compare_with_digits(tau, gamma, n, DEFAULT_DIGITS)
}

pub fn gaussian_compare_with_digits(
    tau: usize,
    gamma: usize,
    n: usize,
    digits: usize,
) -> Result<DistributionReport, AsymptoticsError> {
    let report = clt_params_with_digits(tau, gamma, digits)?;
    let probs = genfun::genus_distribution(tau, gamma, n)?;
    Ok(compare_with_params(&report, &probs, tau, gamma, n))
}

/// The same comparison with precomputed CLT parameters and exact
/// distribution (lets callers share the heavy pieces).
pub fn compare_with_params(
    report: &CltReport,
    probs: &[BigRational],
    tau: usize,
    gamma: usize,
    n: usize,
) -> DistributionReport {
    let mean_gauss = report.mu.to_f64() * n as f64;
    let var_gauss = report.sigma2.to_f64() * n as f64;
    let mut rows = Vec::with_capacity(probs.len());
    let mut tv = 0.0f64;
    let mut gauss_covered = 0.0f64;
    let mut exact_mean = BigRational::zero();
    let mut exact_m2 = BigRational::zero();
    for (g, p) in probs.iter().enumerate() {
        let q = gaussian_cell_mass(mean_gauss, var_gauss, g as f64 - 0.5, g as f64 + 0.5);
        gauss_covered += q;
        let p_f = ratio_to_f64(p);
        tv += (p_f - q).abs();
        exact_mean += p * BigRational::from(BigInt::from(g));
        exact_m2 += p * BigRational::from(BigInt::from(g * g));
        rows.push((g, p.clone(), q));
    }
    // gaussian mass escaping the support counts fully toward the distance
    tv += (1.0 - gauss_covered).max(0.0);
    let mean_f = ratio_to_f64(&exact_mean);
    let var_f = ratio_to_f64(&exact_m2) - mean_f * mean_f;
    DistributionReport {
        tau,
        gamma,
        n,
        exact_mean: mean_f,
        exact_variance: var_f,
        tv_distance: 0.5 * tv,
        rows,
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    // exact-to-float via a wide decimal intermediary
    BigFloat::from_rational(r, 40).to_f64()
}

/// Raw coefficient-ratio growth check: |[z^{n+1}]F / [z^n]F · ρ - 1| for
/// a univariate series. Carries the subexponential bias
/// 1 - (n/(n+1))^{3/2} ≈ 1.5/n from the n^{-3/2} factor.
pub fn ratio_deviation(series: &GenSeries, n: usize, singularity: &BigFloat) -> f64 {
    let a_n = series.coeff(n).as_constant().expect("univariate");
    let a_n1 = series.coeff(n + 1).as_constant().expect("univariate");
    let digits = singularity.digits();
    let ratio = BigFloat::from_bigint(&a_n1, digits).div(&BigFloat::from_bigint(&a_n, digits));
    (ratio.mul(singularity).to_f64() - 1.0).abs()
}

/// Growth check with the n^{-3/2} subexponential factor divided out:
/// |[z^{n+1}]/[z^n] · ρ · ((n+1)/n)^{3/2} - 1| = O(1/n); the sound
/// series-vs-singularity consistency measure at moderate n.
pub fn ratio_deviation_corrected(series: &GenSeries, n: usize, singularity: &BigFloat) -> f64 {
    let raw = {
        let a_n = series.coeff(n).as_constant().expect("univariate");
        let a_n1 = series.coeff(n + 1).as_constant().expect("univariate");
        let digits = singularity.digits();
        let ratio = BigFloat::from_bigint(&a_n1, digits).div(&BigFloat::from_bigint(&a_n, digits));
        ratio.mul(singularity).to_f64()
    };
    (raw * ((n as f64 + 1.0) / n as f64).powf(1.5) - 1.0).abs()
}
