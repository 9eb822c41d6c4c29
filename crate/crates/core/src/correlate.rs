//! Aperiodic correlation of sequences and codes, zero-correlation-zone
//! verification and the optimality bound `M <= N floor(L / Z)`.
//!
//! For `q` in `{1, 2, 4}` every sequence entry is one of `1, i, -1, -i`, so
//! correlations are computed exactly over the Gaussian integers. Any other
//! modulus goes through complex doubles and zero tests use an absolute
//! tolerance of `1e-6 * N * L`.
//!
//! The shift convention is
//!
//! ```text
//! theta(u, v)(tau) = sum_k u_k conj(v_{k+tau})      0 <= tau < L
//!                  = sum_k u_{k-tau} conj(v_k)      -L < tau < 0
//!                  = 0                              otherwise
//! ```
//!
//! # Example
//!
//! ```
//! use zccs::correlate::{accs, CorrelationValue};
//! use zccs::PhaseSequence;
//!
//! let u = PhaseSequence::new(2, vec![0, 0, 0, 1]).unwrap(); // (+, +, +, -)
//! let profile: Vec<_> = (0..4).map(|t| accs(&u, &u, t).unwrap()).collect();
//! assert_eq!(profile, [4, 1, 0, -1].map(|re| CorrelationValue::Exact { re, im: 0 }));
//! ```

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::codeset::{Code, CodeSet, Dimensions};
use crate::error::{out_of_range, Error, Result};
use crate::gbf::PhaseSequence;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CorrelationValue {
    /// Exact Gaussian integer `re + i im`.
    Exact { re: i64, im: i64 },
    Approx(Complex64),
}

impl CorrelationValue {
    pub const ZERO: CorrelationValue = CorrelationValue::Exact { re: 0, im: 0 };

    pub fn re(&self) -> f64 {
        match *self {
            CorrelationValue::Exact { re, .. } => re as f64,
            CorrelationValue::Approx(c) => c.re,
        }
    }

    pub fn im(&self) -> f64 {
        match *self {
            CorrelationValue::Exact { im, .. } => im as f64,
            CorrelationValue::Approx(c) => c.im,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re(), self.im())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CorrelationValue::Exact { .. })
    }

    /// Whether the value equals the real integer `target`; exact values
    /// compare exactly, approximate ones within `tol`.
    pub fn equals(&self, target: i64, tol: f64) -> bool {
        match *self {
            CorrelationValue::Exact { re, im } => re == target && im == 0,
            CorrelationValue::Approx(c) => (c - Complex64::new(target as f64, 0.0)).norm() <= tol,
        }
    }

    pub fn conj(&self) -> CorrelationValue {
        match *self {
            CorrelationValue::Exact { re, im } => CorrelationValue::Exact { re, im: -im },
            CorrelationValue::Approx(c) => CorrelationValue::Approx(c.conj()),
        }
    }

    fn add(self, other: CorrelationValue) -> CorrelationValue {
        match (self, other) {
            (CorrelationValue::Exact { re: a, im: b }, CorrelationValue::Exact { re: c, im: d }) => {
                CorrelationValue::Exact { re: a + c, im: b + d }
            }
            (x, y) => CorrelationValue::Approx(x.to_complex() + y.to_complex()),
        }
    }
}

impl fmt::Display for CorrelationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CorrelationValue::Exact { re, im: 0 } => write!(f, "{re}"),
            CorrelationValue::Exact { re, im } => write!(f, "{re}{im:+}i"),
            CorrelationValue::Approx(c) => write!(f, "{:.6}{:+.6}i", c.re, c.im),
        }
    }
}

/// Arithmetic used for correlation sums.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Arithmetic {
    /// Exact when `q` is 1, 2 or 4, floating point otherwise.
    #[default]
    Auto,
    Exact,
    Float,
}

impl Arithmetic {
    fn resolve(self, q: u32) -> Result<Arithmetic> {
        let exact_ok = matches!(q, 1 | 2 | 4);
        match self {
            Arithmetic::Auto if exact_ok => Ok(Arithmetic::Exact),
            Arithmetic::Auto => Ok(Arithmetic::Float),
            Arithmetic::Exact if !exact_ok => Err(Error::InvalidParams(format!(
                "exact arithmetic needs q in {{1, 2, 4}}, got {q}"
            ))),
            a => Ok(a),
        }
    }
}

/// A sequence lowered to the representation the engine multiplies.
enum Lowered {
    /// Real and imaginary parts in `{-1, 0, 1}`; `im` empty for real sequences.
    Gaussian { re: Vec<i32>, im: Vec<i32> },
    Float(Vec<Complex64>),
}

fn lower(s: &PhaseSequence, arith: Arithmetic) -> Lowered {
    match arith {
        Arithmetic::Exact => {
            // phase p of Z_q as an exponent of i
            let scale = 4 / s.q();
            let quarter = |p: u32| (p * scale) % 4;
            let re = s
                .phases()
                .iter()
                .map(|&p| [1, 0, -1, 0][quarter(p) as usize])
                .collect();
            let im: Vec<i32> = if s.q() == 4 {
                s.phases().iter().map(|&p| [0, 1, 0, -1][quarter(p) as usize]).collect()
            } else {
                Vec::new()
            };
            Lowered::Gaussian { re, im }
        }
        _ => Lowered::Float(s.to_complex()),
    }
}

#[inline]
fn dot_i32(a: &[i32], b: &[i32]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum::<i32>() as i64
}

/// `theta(u, v)(tau)` over lowered sequences; `tau` already known to be
/// inside `(-L, L)`.
fn lowered_accs(u: &Lowered, v: &Lowered, tau: i64) -> CorrelationValue {
    let shift = tau.unsigned_abs() as usize;
    let len = match u {
        Lowered::Gaussian { re, .. } => re.len(),
        Lowered::Float(c) => c.len(),
    };
    // tau >= 0 pairs u[k] with v[k + tau]; tau < 0 pairs u[k + |tau|] with v[k]
    let (ur, vr) = if tau >= 0 {
        (0..len - shift, shift..len)
    } else {
        (shift..len, 0..len - shift)
    };
    match (u, v) {
        (Lowered::Gaussian { re: a, im: b }, Lowered::Gaussian { re: c, im: d }) => {
            // (a + ib)(c - id) = (ac + bd) + i(bc - ad)
            let mut re = dot_i32(&a[ur.clone()], &c[vr.clone()]);
            let mut im = 0;
            if !b.is_empty() && !d.is_empty() {
                re += dot_i32(&b[ur.clone()], &d[vr.clone()]);
            }
            if !b.is_empty() {
                im += dot_i32(&b[ur.clone()], &c[vr.clone()]);
            }
            if !d.is_empty() {
                im -= dot_i32(&a[ur], &d[vr]);
            }
            CorrelationValue::Exact { re, im }
        }
        (Lowered::Float(a), Lowered::Float(b)) => CorrelationValue::Approx(
            a[ur].iter().zip(&b[vr]).map(|(x, y)| x * y.conj()).sum(),
        ),
        _ => unreachable!("both sides lowered with the same arithmetic"),
    }
}

fn check_pair(u: &PhaseSequence, v: &PhaseSequence) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    if u.q() != v.q() {
        return Err(Error::ModulusMismatch(u.q(), v.q()));
    }
    Ok(())
}

fn zero_for(arith: Arithmetic) -> CorrelationValue {
    match arith {
        Arithmetic::Float => CorrelationValue::Approx(Complex64::new(0.0, 0.0)),
        _ => CorrelationValue::ZERO,
    }
}

/// Aperiodic cross-correlation `theta(u, v)(tau)`; zero for `|tau| >= L`.
pub fn accs(u: &PhaseSequence, v: &PhaseSequence, tau: i64) -> Result<CorrelationValue> {
    accs_with(u, v, tau, Arithmetic::Auto)
}

pub fn accs_with(u: &PhaseSequence, v: &PhaseSequence, tau: i64, arith: Arithmetic) -> Result<CorrelationValue> {
    check_pair(u, v)?;
    let arith = arith.resolve(u.q())?;
    if tau.unsigned_abs() as usize >= u.len() {
        return Ok(zero_for(arith));
    }
    Ok(lowered_accs(&lower(u, arith), &lower(v, arith), tau))
}

fn check_codes(ci: &Code, cj: &Code) -> Result<()> {
    if ci.n() != cj.n() || ci.len() != cj.len() {
        return Err(Error::ShapeMismatch(ci.n(), ci.len(), cj.n(), cj.len()));
    }
    if ci.q() != cj.q() {
        return Err(Error::ModulusMismatch(ci.q(), cj.q()));
    }
    Ok(())
}

/// Code-level correlation: row-wise sum of [`accs`].
pub fn set_accs(ci: &Code, cj: &Code, tau: i64) -> Result<CorrelationValue> {
    check_codes(ci, cj)?;
    let arith = Arithmetic::Auto.resolve(ci.q())?;
    if tau.unsigned_abs() as usize >= ci.len() {
        return Ok(zero_for(arith));
    }
    Ok(ci
        .rows()
        .iter()
        .zip(cj.rows())
        .map(|(u, v)| lowered_accs(&lower(u, arith), &lower(v, arith), tau))
        .fold(zero_for(arith), CorrelationValue::add))
}

/// Full profile `theta(Ci, Cj)(tau)` for `tau` in `(-L, L)`; entry
/// `tau + L - 1`.
pub fn set_profile(ci: &Code, cj: &Code, arith: Arithmetic) -> Result<Vec<CorrelationValue>> {
    check_codes(ci, cj)?;
    let arith = arith.resolve(ci.q())?;
    let a: Vec<Lowered> = ci.rows().iter().map(|r| lower(r, arith)).collect();
    let b: Vec<Lowered> = cj.rows().iter().map(|r| lower(r, arith)).collect();
    Ok(profile_lowered(&a, &b, ci.len(), arith))
}

fn profile_lowered(a: &[Lowered], b: &[Lowered], len: usize, arith: Arithmetic) -> Vec<CorrelationValue> {
    let l = len as i64;
    (-(l - 1)..l)
        .map(|tau| {
            a.iter()
                .zip(b)
                .map(|(u, v)| lowered_accs(u, v, tau))
                .fold(zero_for(arith), CorrelationValue::add)
        })
        .collect()
}

/// `M = N floor(L / Z)`.
pub fn is_optimal(m: usize, n: usize, l: usize, z: usize) -> bool {
    z >= 1 && z <= l && m == n * (l / z)
}

/// Profile of one unordered pair `i <= j`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairProfile {
    pub i: usize,
    pub j: usize,
    /// Entry `tau + L - 1` holds `theta(C_i, C_j)(tau)`.
    pub values: Vec<CorrelationValue>,
}

impl PairProfile {
    pub fn at(&self, tau: i64) -> CorrelationValue {
        let l = (self.values.len() as i64 + 1) / 2;
        self.values[(tau + l - 1) as usize]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub tau: i64,
    pub value: CorrelationValue,
    pub expected: i64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "theta(C{}, C{})({}) = {}, expected {}",
            self.i, self.j, self.tau, self.value, self.expected
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationReport {
    pub q: u32,
    pub dims: Dimensions,
    /// Zone width the set was checked against.
    pub checked_z: usize,
    pub exact: bool,
    pub tolerance: f64,
    pub profiles: Vec<PairProfile>,
    /// Widest `Z` for which every zone condition holds.
    pub measured_zcz: usize,
    /// `theta(C_0, C_0)(0)`.
    pub peak: CorrelationValue,
    pub zccs_ok: bool,
    /// `zccs_ok` and `M = N floor(L / checked_z)`.
    pub optimal: bool,
    pub violations: Vec<Violation>,
}

impl CorrelationReport {
    pub fn profile(&self, i: usize, j: usize) -> Option<&PairProfile> {
        self.profiles.iter().find(|p| p.i == i && p.j == j)
    }
}

fn expected_value(i: usize, j: usize, tau: i64, energy: i64) -> i64 {
    if i == j && tau == 0 {
        energy
    } else {
        0
    }
}

/// All `i <= j` profiles of `set`, computed in parallel.
pub fn all_profiles(set: &CodeSet, arith: Arithmetic) -> Result<Vec<PairProfile>> {
    let arith = arith.resolve(set.q())?;
    let lowered: Vec<Vec<Lowered>> = set
        .codes()
        .iter()
        .map(|c| c.rows().iter().map(|r| lower(r, arith)).collect())
        .collect();
    let m = set.codes().len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let len = set.dims().l;
    Ok(pairs
        .par_iter()
        .map(|&(i, j)| PairProfile {
            i,
            j,
            values: profile_lowered(&lowered[i], &lowered[j], len, arith),
        })
        .collect())
}

/// Checks every zone condition of an `(M, N, L, Z)`-ZCCS at zone width `z`
/// and reports all profiles over the full shift range.
pub fn verify_zccs(set: &CodeSet, z: usize) -> Result<CorrelationReport> {
    verify_zccs_with(set, z, Arithmetic::Auto)
}

pub fn verify_zccs_with(set: &CodeSet, z: usize, arith: Arithmetic) -> Result<CorrelationReport> {
    let dims = set.dims();
    if z == 0 || z > dims.l {
        return Err(out_of_range("Z", z, format!("1 <= Z <= L = {}", dims.l)));
    }
    let resolved = arith.resolve(set.q())?;
    let profiles = all_profiles(set, resolved)?;
    let energy = (dims.n * dims.l) as i64;
    let tolerance = 1e-6 * energy as f64;
    let l = dims.l as i64;

    let mut violations = Vec::new();
    let mut first_bad = dims.l;
    for p in &profiles {
        for tau in -(l - 1)..l {
            let expected = expected_value(p.i, p.j, tau, energy);
            let value = p.at(tau);
            if value.equals(expected, tolerance) {
                continue;
            }
            let dist = tau.unsigned_abs() as usize;
            first_bad = first_bad.min(dist);
            if dist < z {
                violations.push(Violation {
                    i: p.i,
                    j: p.j,
                    tau,
                    value,
                    expected,
                });
            }
        }
    }
    let zccs_ok = violations.is_empty();
    Ok(CorrelationReport {
        q: set.q(),
        dims,
        checked_z: z,
        exact: resolved == Arithmetic::Exact,
        tolerance: if resolved == Arithmetic::Exact { 0.0 } else { tolerance },
        peak: profiles[0].at(0),
        measured_zcz: first_bad,
        zccs_ok,
        optimal: zccs_ok && is_optimal(dims.m, dims.n, dims.l, z),
        violations,
        profiles,
    })
}

/// Largest `Z` in `[1, L]` at which [`verify_zccs`] passes, or 0.
pub fn measure_zcz(set: &CodeSet) -> Result<usize> {
    Ok(verify_zccs(set, 1)?.measured_zcz)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(q: u32, p: &[u32]) -> PhaseSequence {
        PhaseSequence::new(q, p.to_vec()).unwrap()
    }

    /// Direct transcription of the three-case definition on complex values.
    fn oracle(u: &PhaseSequence, v: &PhaseSequence, tau: i64) -> Complex64 {
        let (a, b) = (u.to_complex(), v.to_complex());
        let l = a.len() as i64;
        let mut s = Complex64::new(0.0, 0.0);
        if (0..l).contains(&tau) {
            for k in 0..l - tau {
                s += a[k as usize] * b[(k + tau) as usize].conj();
            }
        } else if (-l + 1..0).contains(&tau) {
            for k in 0..l + tau {
                s += a[(k - tau) as usize] * b[k as usize].conj();
            }
        }
        s
    }

    #[test]
    fn small_accs_values() {
        let ones = seq(2, &[0, 0, 0, 0]);
        assert_eq!(accs(&ones, &ones, 0).unwrap(), CorrelationValue::Exact { re: 4, im: 0 });
        let alt = seq(2, &[0, 1]);
        assert_eq!(accs(&alt, &alt, 1).unwrap(), CorrelationValue::Exact { re: -1, im: 0 });
        let u = seq(2, &[0, 0, 0, 1]);
        for tau in -3..=3 {
            let got = accs(&u, &u, tau).unwrap().to_complex();
            assert!((got - oracle(&u, &u, tau)).norm() < 1e-12);
        }
        assert_eq!(accs(&u, &u, 4).unwrap(), CorrelationValue::ZERO);
        assert_eq!(accs(&u, &u, -7).unwrap(), CorrelationValue::ZERO);
        assert!(matches!(accs(&u, &alt, 0), Err(Error::LengthMismatch(4, 2))));
    }

    #[test]
    fn quaternary_matches_oracle() {
        let u = seq(4, &[0, 1, 3, 2, 2, 1]);
        let v = seq(4, &[3, 3, 0, 1, 2, 0]);
        for tau in -6..=6 {
            let exact = accs(&u, &v, tau).unwrap();
            assert!(exact.is_exact());
            assert!((exact.to_complex() - oracle(&u, &v, tau)).norm() < 1e-9, "tau {tau}");
            let float = accs_with(&u, &v, tau, Arithmetic::Float).unwrap();
            assert!((float.to_complex() - exact.to_complex()).norm() < 1e-9);
        }
    }

    #[test]
    fn odd_modulus_uses_float() {
        let u = seq(3, &[0, 1, 2]);
        assert!(!accs(&u, &u, 1).unwrap().is_exact());
        assert!(accs_with(&u, &u, 1, Arithmetic::Exact).is_err());
        assert!(accs(&u, &u, 0).unwrap().equals(3, 1e-9));
    }

    fn golay_code() -> Code {
        Code::new(vec![seq(2, &[0, 0, 0, 1]), seq(2, &[0, 0, 1, 0])]).unwrap()
    }

    #[test]
    fn golay_pair_code() {
        let c = golay_code();
        assert_eq!(set_accs(&c, &c, 1).unwrap(), CorrelationValue::ZERO);
        assert_eq!(set_accs(&c, &c, 0).unwrap(), CorrelationValue::Exact { re: 8, im: 0 });
        assert_eq!(set_accs(&c, &c, 4).unwrap(), CorrelationValue::ZERO);
        let set = CodeSet::new(2, 2, vec![c], None).unwrap();
        let report = verify_zccs(&set, 2).unwrap();
        assert!(report.zccs_ok);
        assert_eq!(report.measured_zcz, 4);
        assert_eq!(report.peak, CorrelationValue::Exact { re: 8, im: 0 });
    }

    #[test]
    fn identical_codes_have_no_zone() {
        let set = CodeSet::new(2, 1, vec![golay_code(), golay_code()], None).unwrap();
        assert_eq!(measure_zcz(&set).unwrap(), 0);
        let report = verify_zccs(&set, 1).unwrap();
        assert!(!report.zccs_ok);
        assert_eq!(report.violations[0].tau, 0);
    }

    #[test]
    fn verify_rejects_bad_zone() {
        let set = CodeSet::new(2, 2, vec![golay_code()], None).unwrap();
        assert!(verify_zccs(&set, 0).is_err());
        assert!(verify_zccs(&set, 5).is_err());
    }

    #[test]
    fn optimality_bound() {
        assert!(is_optimal(16, 8, 320, 160));
        assert!(is_optimal(8, 8, 480, 320));
        assert!(!is_optimal(4, 4, 8, 3));
        assert!(!is_optimal(1, 1, 4, 0));
    }
}
