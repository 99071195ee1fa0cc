//! Upper bounds on the number of minimum total dominating sets.
//!
//! * B1 (conjectured): `((n − γ/2) / (γ/2))^(γ/2)`, decided exactly by
//!   comparing `count² · γ^γ` with `(2n − γ)^γ`.
//! * B2: `(8√e)^γ · B1`, decided in log space with a 1e-9 margin and
//!   otherwise by exact rational enclosures of `e`.
//! * B3: `(1 + √2)^(n − γ)`, decided exactly in `ℤ[√2]`.
//! * B4: `β^n` with `β⁵ = β³ + 2β + 1`, decided in log space with a 1e-9
//!   margin and otherwise by exact rational bisection of `β`.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Log-space margin below which the float route defers to exact arithmetic.
pub const LOG_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("γ_t = {gamma_t} is below 2")]
    GammaTooSmall { gamma_t: usize },
    #[error("γ_t = {gamma_t} exceeds the order {n}")]
    GammaExceedsOrder { n: usize, gamma_t: usize },
    #[error("order {n} is below 2")]
    OrderTooSmall { n: usize },
    #[error("comparison could not be certified after {steps} refinements")]
    Undecided { steps: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Equality,
    Violated,
}

impl Verdict {
    pub fn is_violated(self) -> bool {
        self == Verdict::Violated
    }

    fn from_cmp(lhs: &BigUint, rhs: &BigUint) -> Verdict {
        match lhs.cmp(rhs) {
            std::cmp::Ordering::Less => Verdict::Holds,
            std::cmp::Ordering::Equal => Verdict::Equality,
            std::cmp::Ordering::Greater => Verdict::Violated,
        }
    }
}

fn check_range(n: usize, gamma_t: usize) -> Result<(), BoundsError> {
    if gamma_t < 2 {
        return Err(BoundsError::GammaTooSmall { gamma_t });
    }
    if gamma_t > n {
        return Err(BoundsError::GammaExceedsOrder { n, gamma_t });
    }
    Ok(())
}

fn pow(base: usize, exp: usize) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

/// Natural log of a positive integer, exact enough for any size.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("64-bit head").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Renders `exp(ln_value)` in decimal, switching to scientific notation
/// for large magnitudes.
pub fn render_ln(ln_value: f64) -> String {
    let log10 = ln_value / std::f64::consts::LN_10;
    if log10 < 15.0 {
        return format!("{:.6}", ln_value.exp());
    }
    let exponent = log10.floor();
    let mantissa = 10f64.powf(log10 - exponent);
    format!("{mantissa:.6}e{exponent}")
}

/// `ln B1`.
pub fn ln_b1(n: usize, gamma_t: usize) -> f64 {
    let g = gamma_t as f64;
    g / 2.0 * ((2.0 * n as f64 - g) / g).ln()
}

/// Exact B1: an integer or reduced fraction for even γ_t, otherwise a
/// reduced base raised to a half-integer power.
pub fn b1_exact_repr(n: usize, gamma_t: usize) -> String {
    let num = BigInt::from(2 * n - gamma_t);
    let den = BigInt::from(gamma_t);
    let base = BigRational::new(num, den);
    let show = |r: &BigRational| {
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    };
    if gamma_t % 2 == 0 {
        let value = BigRational::new(base.numer().pow(gamma_t as u32 / 2), base.denom().pow(gamma_t as u32 / 2));
        show(&value)
    } else {
        format!("({})^({gamma_t}/2)", show(&base))
    }
}

/// Conjectured bound, compared exactly after squaring both sides.
pub fn b1_conjecture(n: usize, gamma_t: usize, count: &BigUint) -> Result<Verdict, BoundsError> {
    check_range(n, gamma_t)?;
    let lhs = count * count * pow(gamma_t, gamma_t);
    let rhs = pow(2 * n - gamma_t, gamma_t);
    Ok(Verdict::from_cmp(&lhs, &rhs))
}

/// Rational enclosure `(lo, hi)` of `e` from the Taylor series truncated
/// after `terms` terms: `lo = Σ_{i<=terms} 1/i!`, `hi = lo + 1/(terms!·terms)`.
pub fn e_enclosure(terms: u32) -> (BigRational, BigRational) {
    assert!(terms >= 1);
    let mut lo = BigRational::zero();
    let mut fact = BigInt::one();
    for i in 0..=terms {
        if i > 0 {
            fact *= BigInt::from(i);
        }
        lo += BigRational::new(BigInt::one(), fact.clone());
    }
    let tail = BigRational::new(BigInt::one(), fact * BigInt::from(terms));
    let hi = &lo + tail;
    (lo, hi)
}

fn rational_pow(r: &BigRational, exp: usize) -> BigRational {
    BigRational::new(r.numer().pow(exp as u32), r.denom().pow(exp as u32))
}

fn to_rational(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from_biguint(Sign::Plus, x.clone()))
}

/// `ln B2`.
pub fn ln_b2(n: usize, gamma_t: usize) -> f64 {
    let g = gamma_t as f64;
    g * (8f64.ln() + 0.5) + ln_b1(n, gamma_t)
}

pub fn b2_thm(n: usize, gamma_t: usize, count: &BigUint) -> Result<Verdict, BoundsError> {
    check_range(n, gamma_t)?;
    if count.is_zero() {
        return Ok(Verdict::Holds);
    }
    let gap = ln_b2(n, gamma_t) - ln_biguint(count);
    if gap > LOG_MARGIN {
        return Ok(Verdict::Holds);
    }
    if gap < -LOG_MARGIN {
        return Ok(Verdict::Violated);
    }
    b2_exact(n, gamma_t, count)
}

/// Exact B2 decision: `count² · γ^γ` against `64^γ · e^γ · (2n − γ)^γ`
/// with `e` enclosed by ever tighter rational intervals.
pub fn b2_exact(n: usize, gamma_t: usize, count: &BigUint) -> Result<Verdict, BoundsError> {
    check_range(n, gamma_t)?;
    let lhs = to_rational(&(count * count * pow(gamma_t, gamma_t)));
    let scale = to_rational(&(pow(64, gamma_t) * pow(2 * n - gamma_t, gamma_t)));
    let mut terms = 16;
    for _ in 0..8 {
        let (lo, hi) = e_enclosure(terms);
        if lhs < &scale * rational_pow(&lo, gamma_t) {
            return Ok(Verdict::Holds);
        }
        if lhs > &scale * rational_pow(&hi, gamma_t) {
            return Ok(Verdict::Violated);
        }
        terms *= 2;
    }
    Err(BoundsError::Undecided { steps: 8 })
}

/// `(1 + √2)^(2m) = (3 + 2√2)^m` as `(a, b)` with value `a + b√2`.
pub fn silver_square_power(m: usize) -> (BigUint, BigUint) {
    let (mut a, mut b) = (BigUint::one(), BigUint::zero());
    let three = BigUint::from(3u32);
    let two = BigUint::from(2u32);
    let four = BigUint::from(4u32);
    for _ in 0..m {
        let next_a = &three * &a + &four * &b;
        let next_b = &two * &a + &three * &b;
        a = next_a;
        b = next_b;
    }
    (a, b)
}

/// Theorem bound `(1 + √2)^(n − γ)`, decided exactly; equality only when
/// `n = γ` and `count = 1`.
pub fn b3_thm(n: usize, gamma_t: usize, count: &BigUint) -> Result<Verdict, BoundsError> {
    check_range(n, gamma_t)?;
    let (a, b) = silver_square_power(n - gamma_t);
    let sq = count * count;
    if sq <= a {
        return Ok(if sq == a && b.is_zero() { Verdict::Equality } else { Verdict::Holds });
    }
    // sq − a > 0; compare (sq − a)² with 2b²
    let d = sq - &a;
    Ok(if &d * &d < BigUint::from(2u32) * &b * &b { Verdict::Holds } else { Verdict::Violated })
}

/// `ln B3`.
pub fn ln_b3(n: usize, gamma_t: usize) -> f64 {
    (n - gamma_t) as f64 * (1.0 + std::f64::consts::SQRT_2).ln()
}

/// β⁵ − β³ − 2β − 1.
pub fn beta_poly(x: f64) -> f64 {
    let x2 = x * x;
    x * x2 * x2 - x * x2 - 2.0 * x - 1.0
}

fn beta_poly_exact(x: &BigRational) -> BigRational {
    let x2 = x * x;
    let x3 = &x2 * x;
    let x5 = &x3 * &x2;
    x5 - x3 - x * BigRational::from_integer(2.into()) - BigRational::one()
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// Positive root of `β⁵ = β³ + 2β + 1` with a certified bracket.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Beta {
    pub value: f64,
    pub residual: f64,
    /// `g(lo) < 0 < g(hi)` holds in exact arithmetic.
    pub bracket: (f64, f64),
}

impl Beta {
    pub fn width(&self) -> f64 {
        self.bracket.1 - self.bracket.0
    }

    /// Exact bracket halved `extra_steps` more times past float precision.
    pub fn rational_bracket(&self, extra_steps: usize) -> (BigRational, BigRational) {
        let (mut lo, mut hi) = (exact(self.bracket.0), exact(self.bracket.1));
        let two = BigRational::from_integer(2.into());
        for _ in 0..extra_steps {
            let mid = (&lo + &hi) / &two;
            if beta_poly_exact(&mid).is_negative() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    }
}

/// Bisection on `[1, 2]` with exact sign tests at every float midpoint,
/// run until the bracket is one ulp wide.
pub fn solve_beta() -> Beta {
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    loop {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        if beta_poly_exact(&exact(mid)).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let value = if beta_poly(lo).abs() <= beta_poly(hi).abs() { lo } else { hi };
    Beta { value, residual: beta_poly(value).abs(), bracket: (lo, hi) }
}

/// Shared β, solved once.
pub fn beta() -> &'static Beta {
    static BETA: OnceLock<Beta> = OnceLock::new();
    BETA.get_or_init(solve_beta)
}

/// `ln B4` evaluated at the bracket endpoints.
pub fn ln_b4_bracket(n: usize) -> (f64, f64) {
    let b = beta();
    (n as f64 * b.bracket.0.ln(), n as f64 * b.bracket.1.ln())
}

pub fn b4_thm(n: usize, count: &BigUint) -> Result<Verdict, BoundsError> {
    if n < 2 {
        return Err(BoundsError::OrderTooSmall { n });
    }
    if count.is_zero() {
        return Ok(Verdict::Holds);
    }
    let ln_count = ln_biguint(count);
    let (ln_lo, ln_hi) = ln_b4_bracket(n);
    if ln_lo - ln_count > LOG_MARGIN {
        return Ok(Verdict::Holds);
    }
    if ln_count - ln_hi > LOG_MARGIN {
        return Ok(Verdict::Violated);
    }
    b4_exact(n, count)
}

/// Exact B4 decision against `lo^n` and `hi^n` for a rational bracket of
/// β, halving the bracket until both endpoints agree.
pub fn b4_exact(n: usize, count: &BigUint) -> Result<Verdict, BoundsError> {
    if n < 2 {
        return Err(BoundsError::OrderTooSmall { n });
    }
    let c = to_rational(count);
    let mut steps = 0;
    while steps <= 512 {
        let (lo, hi) = beta().rational_bracket(steps);
        if c < rational_pow(&lo, n) {
            return Ok(Verdict::Holds);
        }
        if c >= rational_pow(&hi, n) {
            return Ok(Verdict::Violated);
        }
        steps = if steps == 0 { 16 } else { steps * 2 };
    }
    Err(BoundsError::Undecided { steps })
}

/// Regression check `B1 ≤ e^(n − γ)`, i.e. `((2n − γ)/γ)^γ ≤ e^(2(n − γ))`.
pub fn b1_vs_exp(n: usize, gamma_t: usize) -> Result<bool, BoundsError> {
    check_range(n, gamma_t)?;
    let m = n - gamma_t;
    if m == 0 {
        return Ok(true);
    }
    let gap = m as f64 - ln_b1(n, gamma_t);
    if gap > LOG_MARGIN {
        return Ok(true);
    }
    if gap < -LOG_MARGIN {
        return Ok(false);
    }
    let lhs = BigRational::new(
        BigInt::from(2 * n - gamma_t).pow(gamma_t as u32),
        BigInt::from(gamma_t).pow(gamma_t as u32),
    );
    let mut terms = 16;
    for _ in 0..8 {
        let (lo, hi) = e_enclosure(terms);
        if lhs <= rational_pow(&lo, 2 * m) {
            return Ok(true);
        }
        if lhs > rational_pow(&hi, 2 * m) {
            return Ok(false);
        }
        terms *= 2;
    }
    Err(BoundsError::Undecided { steps: 8 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub value_repr: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSet {
    pub b1: BoundEntry,
    pub b2: BoundEntry,
    pub b3: BoundEntry,
    pub b4: BoundEntry,
}

/// All four bounds evaluated for one forest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub gamma_t: usize,
    #[serde(with = "crate::decimal")]
    pub count: BigUint,
    pub bounds: BoundSet,
}

impl BoundReport {
    pub fn new(n: usize, gamma_t: usize, count: BigUint) -> Result<BoundReport, BoundsError> {
        let b1 = BoundEntry {
            value_repr: b1_exact_repr(n, gamma_t),
            verdict: b1_conjecture(n, gamma_t, &count)?,
        };
        let b2 = BoundEntry { value_repr: render_ln(ln_b2(n, gamma_t)), verdict: b2_thm(n, gamma_t, &count)? };
        let b3 = BoundEntry { value_repr: render_ln(ln_b3(n, gamma_t)), verdict: b3_thm(n, gamma_t, &count)? };
        let b4 = BoundEntry {
            value_repr: render_ln(n as f64 * beta().value.ln()),
            verdict: b4_thm(n, &count)?,
        };
        Ok(BoundReport { n, gamma_t, count, bounds: BoundSet { b1, b2, b3, b4 } })
    }

    /// Proved bounds (B2, B3, B4) that failed.
    pub fn theorem_violations(&self) -> Vec<&'static str> {
        let b = &self.bounds;
        [("b2", b.b2.verdict), ("b3", b.b3.verdict), ("b4", b.b4.verdict)]
            .into_iter()
            .filter(|(_, v)| v.is_violated())
            .map(|(id, _)| id)
            .collect()
    }

    pub fn conjecture_violated(&self) -> bool {
        self.bounds.b1.verdict.is_violated()
    }
}
