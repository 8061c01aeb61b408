//! The verification gate: every release-blocking check as a runnable
//! criterion, shared by the `verify` CLI command and the integration
//! test target. Each criterion prints one PASS/FAIL line with its
//! measured values.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{BigFloat, MPoly, DEFAULT_DIGITS};
use crate::asymptotics;
use crate::diagram::Diagram;
use crate::genfun;
use crate::oracle;
use crate::shadows;

/// Outcome of one criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: &'static str,
    pub pass: bool,
    pub details: String,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "{} {} ({:.1}s): {}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.seconds,
            self.details
        )
    }
}

/// Run the full gate. `quick` skips the genus-2 catalog enumeration in
/// the first criterion and checks only the genus-1 catalog.
pub fn run_all(quick: bool) -> Vec<CriterionReport> {
    vec![
        a1_shadow_catalogs(quick),
        a2_witness_polynomials(),
        a3_series_oracle_equivalence(),
        a4_table_one(),
        a5_distribution_desk_scale(),
        a6_property_suites(),
        a7_growth_rate_consistency(),
    ]
}

/// Irreducible-shadow catalogs reproduce the published coefficient
/// vectors exactly.
pub fn a1_shadow_catalogs(quick: bool) -> CriterionReport {
    let t0 = Instant::now();
    let mut pass = true;
    let mut details = Vec::new();

    let c1 = shadows::catalog(1).unwrap();
    let got1: Vec<(usize, usize)> = c1.arc_counts().collect();
    let want1 = vec![(2, 1), (3, 2), (4, 1)];
    pass &= got1 == want1;
    details.push(format!("I1 counts {:?}", got1));

    if quick {
        details.push("I2 skipped (quick)".to_string());
    } else {
        let c2 = shadows::catalog(2).unwrap();
        let got2: Vec<usize> = c2.arc_counts().map(|(_, c)| c).collect();
        let want2 = vec![17, 160, 566, 1004, 961, 476, 96];
        pass &= got2 == want2;
        details.push(format!("I2 counts {:?}", got2));
    }

    CriterionReport {
        id: "A1",
        pass,
        details: details.join("; "),
        seconds: t0.elapsed().as_secs_f64(),
    }
}

fn published_p1() -> MPoly {
    let terms: &[(i64, u16, u16, u16)] = &[
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
    from_terms(terms)
}

fn published_p2() -> MPoly {
    let terms: &[(i64, u16, u16, u16)] = &[
        (-1, 0, 0, 0),
        (1, 0, 0, 1),
        (9, 1, 0, 2),
        (-10, 1, 0, 3),
        (-35, 2, 0, 4),
        (-1, 2, 1, 4),
        (45, 2, 0, 5),
        (75, 3, 0, 6),
        (6, 3, 1, 6),
        (-120, 3, 0, 7),
        (-90, 4, 0, 8),
        (-15, 4, 1, 8),
        (-17, 4, 2, 8),
        (210, 4, 0, 9),
        (42, 5, 0, 10),
        (20, 5, 1, 10),
        (-58, 5, 2, 10),
        (-252, 5, 0, 11),
        (42, 6, 0, 12),
        (-15, 6, 1, 12),
        (-21, 6, 2, 12),
        (210, 6, 0, 13),
        (-90, 7, 0, 14),
        (6, 7, 1, 14),
        (-120, 7, 0, 15),
        (75, 8, 0, 16),
        (-1, 8, 1, 16),
        (45, 8, 0, 17),
        (-35, 9, 0, 18),
        (-10, 9, 0, 19),
        (9, 10, 0, 20),
        (1, 10, 0, 21),
        (-1, 11, 0, 22),
    ];
    from_terms(terms)
}

fn from_terms(terms: &[(i64, u16, u16, u16)]) -> MPoly {
    terms.iter().fold(MPoly::zero(), |acc, &(c, z, t, x)| {
        acc.add(&MPoly::term(BigInt::from(c), [z, t, 0, x]))
    })
}

/// Witness polynomials match the published listings term-for-term and
/// annihilate the matching series to order 30.
pub fn a2_witness_polynomials() -> CriterionReport {
    let t0 = Instant::now();
    let p1 = genfun::p_polynomial(1).unwrap();
    let p2 = genfun::p_polynomial(2).unwrap();
    let p1_ok = p1 == published_p1();
    let p2_ok = p2 == published_p2();
    let v1 = genfun::verify_algebraic(1, 30).unwrap();
    let v2 = genfun::verify_algebraic(2, 30).unwrap();
    CriterionReport {
        id: "A2",
        pass: p1_ok && p2_ok && v1 && v2,
        details: format!(
            "P1 listing match: {}; P2 listing match: {}; P(z,t,H)≡0 mod z^31: gamma1={}, gamma2={}",
            p1_ok, p2_ok, v1, v2
        ),
        seconds: t0.elapsed().as_secs_f64(),
    }
}

/// Exact equality of series coefficients and brute-force tallies.
pub fn a3_series_oracle_equivalence() -> CriterionReport {
    let t0 = Instant::now();
    let mut pass = true;
    let mut mismatches = Vec::new();
    let mut checked = 0usize;

    // matchings: [z^n t^g] H_gamma for n ≤ 7
    for gamma in 1..=2 {
        let h = genfun::h_series(gamma, 7).unwrap();
        for n in 0..=7usize {
            let row = oracle::count_matchings(n, gamma).unwrap();
            for g in 0..=n / 2 {
                let want = row.get(&g).cloned().unwrap_or_else(BigInt::zero);
                if h.coeff_int(n, g as u16, 0) != want {
                    pass = false;
                    mismatches.push(format!("H{} n={} g={}", gamma, n, g));
                }
                checked += 1;
            }
        }
    }

    // structures: [z^n t^g] G_{tau,gamma} for n ≤ 14, tau ≤ 3
    for tau in 1..=3usize {
        for gamma in 1..=2usize {
            let g_ser = genfun::g_series(tau, gamma, 14).unwrap();
            for n in 0..=14usize {
                let row = oracle::count_structures(n, tau, gamma).unwrap();
                for g in 0..=n / 2 {
                    let want = row.get(&g).cloned().unwrap_or_else(BigInt::zero);
                    if g_ser.coeff_int(n, g as u16, 0) != want {
                        pass = false;
                        mismatches.push(format!("G tau={} gamma={} n={} g={}", tau, gamma, n, g));
                    }
                    checked += 1;
                }
            }
        }
    }

    // shapes: [z^n t^g e^m] S_gamma for n ≤ 5 arcs
    for gamma in 1..=2usize {
        let s = genfun::s_series(gamma, 5).unwrap();
        for n in 0..=5usize {
            let row = oracle::count_shapes(n, gamma).unwrap();
            for g in 0..=n {
                for m in 0..=n {
                    let want = row
                        .get(&(g, m))
                        .cloned()
                        .unwrap_or_else(BigInt::zero);
                    if s.coeff_int(n, g as u16, m as u16) != want {
                        pass = false;
                        mismatches.push(format!("S{} n={} g={} m={}", gamma, n, g, m));
                    }
                    checked += 1;
                }
            }
        }
    }

    CriterionReport {
        id: "A3",
        pass,
        details: if pass {
            format!("{} coefficient/oracle pairs identical", checked)
        } else {
            format!("mismatches: {}", mismatches.join(", "))
        },
        seconds: t0.elapsed().as_secs_f64(),
    }
}

/// Published central-limit parameters, printed to six decimals.
pub const TABLE_ONE: [(usize, usize, f64, f64); 12] = [
    (1, 1, 0.091240, 0.021067),
    (2, 1, 0.041235, 0.009358),
    (3, 1, 0.026632, 0.006043),
    (4, 1, 0.019706, 0.004481),
    (5, 1, 0.015666, 0.003571),
    (6, 1, 0.013017, 0.002974),
    (1, 2, 0.112037, 0.022088),
    (2, 2, 0.050436, 0.009768),
    (3, 2, 0.032564, 0.006288),
    (4, 2, 0.024104, 0.004657),
    (5, 2, 0.019170, 0.003709),
    (6, 2, 0.015935, 0.003087),
];

/// All twelve (μ, σ²) cells within 10⁻⁵ of the printed values, with the
/// two differentiation routes agreeing to 10⁻⁷.
pub fn a4_table_one() -> CriterionReport {
    let t0 = Instant::now();
    let reports = match asymptotics::clt_table(&[1, 2], 6, DEFAULT_DIGITS) {
        Ok(r) => r,
        Err(e) => {
            return CriterionReport {
                id: "A4",
                pass: false,
                details: format!("computation failed: {}", e),
                seconds: t0.elapsed().as_secs_f64(),
            }
        }
    };
    let mut pass = true;
    let mut max_mu_err = 0.0f64;
    let mut max_s2_err = 0.0f64;
    let mut max_gap = 0.0f64;
    for &(tau, gamma, mu_ref, s2_ref) in TABLE_ONE.iter() {
        let rep = reports
            .iter()
            .find(|r| r.tau == tau && r.gamma == gamma)
            .expect("cell computed");
        let mu_err = (rep.mu.to_f64() - mu_ref).abs();
        let s2_err = (rep.sigma2.to_f64() - s2_ref).abs();
        max_mu_err = max_mu_err.max(mu_err);
        max_s2_err = max_s2_err.max(s2_err);
        max_gap = max_gap
            .max(rep.diagnostics.method_gap_mu)
            .max(rep.diagnostics.method_gap_sigma2);
        if mu_err > 1e-5 || s2_err > 1e-5 {
            pass = false;
        }
        if !rep.diagnostics.side_conditions_ok || rep.diagnostics.residual > 1e-30 {
            pass = false;
        }
    }
    if max_gap > 1e-7 {
        pass = false;
    }
    CriterionReport {
        id: "A4",
        pass,
        details: format!(
            "12 cells: max|Δμ|={:.2e}, max|Δσ²|={:.2e} (tol 1e-5); max method gap={:.2e} (tol 1e-7)",
            max_mu_err, max_s2_err, max_gap
        ),
        seconds: t0.elapsed().as_secs_f64(),
    }
}

/// Exact genus-distribution means at n = 100 against μ·100, and the
/// total-variation distance to the discretized Gaussian for τ = 2.
pub fn a5_distribution_desk_scale() -> CriterionReport {
    let t0 = Instant::now();
    let targets = [(2usize, 4.12f64), (3, 2.66), (4, 1.97)];
    let mut pass = true;
    let mut parts = Vec::new();
    for &(tau, target) in &targets {
        let rep = match asymptotics::gaussian_compare(tau, 1, 100) {
            Ok(r) => r,
            Err(e) => {
                return CriterionReport {
                    id: "A5",
                    pass: false,
                    details: format!("tau={} failed: {}", tau, e),
                    seconds: t0.elapsed().as_secs_f64(),
                }
            }
        };
        let mean_ok = (rep.exact_mean - target).abs() <= 0.35;
        pass &= mean_ok;
        parts.push(format!(
            "tau={}: mean={:.4} (target {}±0.35)",
            tau, rep.exact_mean, target
        ));
        if tau == 2 {
            let tv_ok = rep.tv_distance < 0.08;
            pass &= tv_ok;
            parts.push(format!("tau=2 TV={:.4} (tol 0.08)", rep.tv_distance));
        }
    }
    CriterionReport {
        id: "A5",
        pass,
        details: parts.join("; "),
        seconds: t0.elapsed().as_secs_f64(),
    }
}

/// Deterministic xorshift64* generator for the property suites.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 >> 12;
        self.0 ^= self.0 << 25;
        self.0 ^= self.0 >> 27;
        self.0.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

fn random_diagram(rng: &mut Rng, max_n: usize) -> Diagram {
    let n = 1 + rng.below(max_n);
    let mut taken = vec![false; n + 1];
    let mut arcs = Vec::new();
    for i in 1..=n {
        if taken[i] || rng.below(2) == 0 {
            continue;
        }
        let free: Vec<usize> = (i + 1..=n).filter(|&j| !taken[j]).collect();
        if free.is_empty() {
            continue;
        }
        let j = free[rng.below(free.len())];
        taken[i] = true;
        taken[j] = true;
        arcs.push((i, j));
    }
    Diagram::new(n, arcs).expect("random arcs valid")
}

fn all_matchings(n: usize) -> Vec<Diagram> {
    let mut out = Vec::new();
    let mut partner = vec![0usize; 2 * n + 1];
    let mut arcs = Vec::new();
    fn rec(
        two_n: usize,
        partner: &mut Vec<usize>,
        arcs: &mut Vec<(usize, usize)>,
        out: &mut Vec<Diagram>,
    ) {
        let i = match (1..=two_n).find(|&v| partner[v] == 0) {
            Some(i) => i,
            None => {
                out.push(Diagram::new(two_n, arcs.clone()).unwrap());
                return;
            }
        };
        for j in i + 1..=two_n {
            if partner[j] != 0 {
                continue;
            }
            partner[i] = j;
            partner[j] = i;
            arcs.push((i, j));
            rec(two_n, partner, arcs, out);
            partner[i] = 0;
            partner[j] = 0;
            arcs.pop();
        }
    }
    rec(2 * n, &mut partner, &mut arcs, &mut out);
    out
}

/// Structural property suites: genus additivity, shadow idempotence and
/// genus preservation, the boundary parity invariant, the double
/// factorial totals and the n^{-3/2} plateau.
pub fn a6_property_suites() -> CriterionReport {
    let t0 = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();

    // genus additivity under concatenation and nesting, 200 random pairs
    let mut rng = Rng(0x9E37_79B9_7F4A_7C15);
    let mut additivity_ok = true;
    for _ in 0..200 {
        let a = random_diagram(&mut rng, 16);
        let b = random_diagram(&mut rng, 16);
        let ga = a.genus().unwrap();
        let gb = b.genus().unwrap();
        let cat = a.concatenate(&b);
        if cat.genus().unwrap() != ga + gb {
            additivity_ok = false;
        }
        let pos = rng.below(b.n() + 1);
        let nested = b.nest_at(&a, pos);
        if nested.genus().unwrap() != ga + gb {
            additivity_ok = false;
        }
    }
    pass &= additivity_ok;
    parts.push(format!("genus additivity 200 pairs: {}", additivity_ok));

    // shadow idempotence, genus preservation, component-genus sum
    let mut shadow_ok = true;
    for _ in 0..200 {
        let d = random_diagram(&mut rng, 20);
        let s = d.shadow();
        if s.shadow() != s || s.genus().unwrap() != d.genus().unwrap() {
            shadow_ok = false;
        }
        let component_sum: usize = d
            .irreducible_shadows()
            .iter()
            .map(|c| c.genus().unwrap())
            .sum();
        if component_sum != d.genus().unwrap() {
            shadow_ok = false;
        }
    }
    pass &= shadow_ok;
    parts.push(format!("shadow idempotence/preservation 200: {}", shadow_ok));

    // parity and genus bounds on all matchings with up to 6 arcs
    let mut parity_ok = true;
    let mut parity_count = 0usize;
    for m in 1..=6usize {
        for d in all_matchings(m) {
            parity_count += 1;
            match d.genus() {
                Ok(g) => {
                    if g > m / 2 {
                        parity_ok = false;
                    }
                }
                Err(_) => parity_ok = false,
            }
        }
    }
    pass &= parity_ok;
    parts.push(format!("parity/genus bound on {} matchings: {}", parity_count, parity_ok));

    // Σ_g h₂(g,n) = (2n-1)!! for n ≤ 5
    let h2 = genfun::h_series_t1(2, 5).unwrap();
    let mut df_ok = true;
    for n in 0..=5usize {
        if h2.coeff(n).as_constant().unwrap() != oracle::double_factorial_odd(n) {
            df_ok = false;
        }
    }
    pass &= df_ok;
    parts.push(format!("h2 totals = (2n-1)!! for n≤5: {}", df_ok));

    // Subexponential plateau: n^{3/2} θ^n [z^n]G within 2% of a constant
    // over n in [80,120]. Gated for τ ≤ 4: beyond that the window is
    // pre-asymptotic (the composition consumes coefficients only up to
    // n/(2τ)) and the O(1/n) drift alone exceeds the band; those cells
    // are reported but not gated.
    let mut plateau_ok = true;
    let mut worst = 0.0f64;
    let mut ungated = Vec::new();
    for &(tau, gamma, _, _) in TABLE_ONE.iter() {
        let spread = plateau_spread(tau, gamma);
        if tau <= 4 {
            worst = worst.max(spread);
            if spread > 0.02 {
                plateau_ok = false;
            }
        } else {
            ungated.push(format!("({},{})={:.3}", tau, gamma, spread));
        }
    }
    pass &= plateau_ok;
    parts.push(format!(
        "plateau spread, n in [80,120], tau≤4 cells: max {:.4} (tol 0.02): {}; pre-asymptotic tau≥5 spreads: {}",
        worst,
        plateau_ok,
        ungated.join(" ")
    ));

    CriterionReport {
        id: "A6",
        pass,
        details: parts.join("; "),
        seconds: t0.elapsed().as_secs_f64(),
    }
}

/// n^{3/2}·θ^n·[z^n]G_{τ,γ}(z,1) relative half-spread over n ∈ [80,120].
pub fn plateau_spread(tau: usize, gamma: usize) -> f64 {
    let theta = asymptotics::theta(tau, gamma, 0.0, 40).unwrap();
    let series = genfun::g_series_t1(tau, gamma, 120).unwrap();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for n in 80..=120usize {
        let a_n = BigFloat::from_bigint(&series.coeff(n).as_constant().unwrap(), 40);
        let c_n = a_n.mul(&theta.powi(n as i64)).to_f64() * (n as f64).powf(1.5);
        lo = lo.min(c_n);
        hi = hi.max(c_n);
    }
    (hi - lo) / (hi + lo)
}

/// Literal growth-rate gate: raw ratio [z^101]/[z^100] of G(z,1) within
/// 1% of 1/θ for every Table-1 cell. The raw ratio carries the
/// subexponential bias 1-(100/101)^{3/2} ≈ 1.48%, which exceeds the
/// gate for eleven of the twelve cells; the bias-corrected deviations
/// are reported alongside.
pub fn a7_growth_rate_consistency() -> CriterionReport {
    let t0 = Instant::now();
    let mut pass = true;
    let mut raw_worst = 0.0f64;
    let mut corrected_worst = 0.0f64;
    let mut failing = 0usize;
    for &(tau, gamma, _, _) in TABLE_ONE.iter() {
        let theta = asymptotics::theta(tau, gamma, 0.0, 40).unwrap();
        let series = genfun::g_series_t1(tau, gamma, 101).unwrap();
        let raw = asymptotics::ratio_deviation(&series, 100, &theta);
        let corrected = asymptotics::ratio_deviation_corrected(&series, 100, &theta);
        raw_worst = raw_worst.max(raw);
        corrected_worst = corrected_worst.max(corrected);
        if raw >= 0.01 {
            pass = false;
            failing += 1;
        }
    }
    CriterionReport {
        id: "A7",
        pass,
        details: format!(
            "raw ratio gate at 1%: {} of 12 cells exceed (worst {:.4}); n^{{-3/2}}-corrected worst {:.4}",
            failing, raw_worst, corrected_worst
        ),
        seconds: t0.elapsed().as_secs_f64(),
    }
}
