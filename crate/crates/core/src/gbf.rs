//! Generalized Boolean functions and their phase-sequence realizations.
//!
//! A [`Gbf`] maps `{0,1}^m` to `Z_q`. It is stored as a sum of
//! coefficient-weighted products of literals, where a literal is either
//! `z_i` or its complement `1 - z_i`. Products of complemented literals are
//! kept symbolically; nothing is expanded to algebraic normal form.
//!
//! The sequence of `f` is the length-`2^m` vector whose entry `r` is
//! `omega_q^f(r_0, ..., r_{m-1})`. Which bit of `r` is `r_0` is selected by
//! [`BitOrder`]; least-significant-first is the default and the only
//! convention under which the truncated constructions in this crate yield
//! valid code sets.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};

/// Maps the integer index `r` of a sequence entry onto the variable tuple
/// `(r_0, ..., r_{m-1})`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BitOrder {
    /// `r_0` is the least significant bit of `r`.
    #[default]
    Lsb,
    /// `r_0` is the most significant bit of `r`.
    Msb,
}

impl BitOrder {
    /// Bit position of variable `var` inside an `m`-bit index.
    #[inline]
    pub fn bit_position(self, var: usize, m: usize) -> usize {
        match self {
            BitOrder::Lsb => var,
            BitOrder::Msb => m - 1 - var,
        }
    }

    /// Rearranges the bits of `r` so that variable `i` sits at bit `i`.
    #[inline]
    pub fn to_lsb_mask(self, r: usize, m: usize) -> usize {
        match self {
            BitOrder::Lsb => r,
            BitOrder::Msb => {
                let mut out = 0;
                for i in 0..m {
                    out |= ((r >> (m - 1 - i)) & 1) << i;
                }
                out
            }
        }
    }
}

impl fmt::Display for BitOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BitOrder::Lsb => "lsb",
            BitOrder::Msb => "msb",
        })
    }
}

impl std::str::FromStr for BitOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lsb" => Ok(BitOrder::Lsb),
            "msb" => Ok(BitOrder::Msb),
            other => Err(Error::InvalidParams(format!("unknown bit order `{other}`"))),
        }
    }
}

/// Binary representation `(r_0, ..., r_{m-1})` of `r`.
pub fn index_to_bits(r: usize, m: usize, order: BitOrder) -> Result<Vec<u8>> {
    if m >= usize::BITS as usize || r >> m != 0 {
        return Err(out_of_range("r", r, format!("0 <= r < 2^{m}")));
    }
    Ok((0..m)
        .map(|i| ((r >> order.bit_position(i, m)) & 1) as u8)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub complemented: bool,
}

impl Literal {
    /// The plain variable `z_var`.
    pub const fn var(var: usize) -> Self {
        Literal {
            var,
            complemented: false,
        }
    }

    /// The complement `1 - z_var`.
    pub const fn not(var: usize) -> Self {
        Literal {
            var,
            complemented: true,
        }
    }

    pub fn toggled(self) -> Self {
        Literal {
            var: self.var,
            complemented: !self.complemented,
        }
    }

    #[inline]
    fn value(self, mask: usize) -> bool {
        (((mask >> self.var) & 1) == 1) != self.complemented
    }
}

/// `coefficient * product(literals)`; the empty product is the constant 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: u32,
    pub literals: Vec<Literal>,
}

impl Term {
    pub fn degree(&self) -> usize {
        self.literals.len()
    }

    #[inline]
    fn is_one(&self, mask: usize) -> bool {
        self.literals.iter().all(|l| l.value(mask))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGbf")]
pub struct Gbf {
    m: usize,
    q: u32,
    terms: Vec<Term>,
}

// Deserialized functions are rebuilt term by term so that the canonical
// form holds no matter what the input looked like.
#[derive(Deserialize)]
struct RawGbf {
    m: usize,
    q: u32,
    terms: Vec<Term>,
}

impl TryFrom<RawGbf> for Gbf {
    type Error = Error;

    fn try_from(raw: RawGbf) -> Result<Gbf> {
        let mut f = Gbf::zero(raw.m, raw.q)?;
        for t in &raw.terms {
            f.add_term(t.coefficient as i64, &t.literals)?;
        }
        Ok(f)
    }
}

impl Gbf {
    /// The zero function of `m` variables over `Z_q`.
    pub fn zero(m: usize, q: u32) -> Result<Self> {
        if q < 2 {
            return Err(out_of_range("q", q, "q >= 2"));
        }
        if m >= 30 {
            return Err(out_of_range("m", m, "m < 30"));
        }
        Ok(Gbf {
            m,
            q,
            terms: Vec::new(),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Terms in canonical order: literal lists sorted, like terms merged,
    /// zero coefficients dropped.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Adds `coefficient * product(literals)`.
    ///
    /// The coefficient is reduced mod `q`. Repeated literals collapse
    /// (`z*z = z`); a product containing both `z_i` and `1 - z_i` is
    /// identically zero and is dropped.
    pub fn add_term(&mut self, coefficient: i64, literals: &[Literal]) -> Result<()> {
        if let Some(bad) = literals.iter().find(|l| l.var >= self.m) {
            return Err(out_of_range("var_index", bad.var, format!("< m = {}", self.m)));
        }
        let coefficient = coefficient.rem_euclid(self.q as i64) as u32;
        if coefficient == 0 {
            return Ok(());
        }
        let mut lits = literals.to_vec();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0].var == w[1].var) {
            return Ok(());
        }
        match self.terms.binary_search_by(|t| t.literals.cmp(&lits)) {
            Ok(pos) => {
                let c = (self.terms[pos].coefficient + coefficient) % self.q;
                if c == 0 {
                    self.terms.remove(pos);
                } else {
                    self.terms[pos].coefficient = c;
                }
            }
            Err(pos) => self.terms.insert(
                pos,
                Term {
                    coefficient,
                    literals: lits,
                },
            ),
        }
        Ok(())
    }

    /// Builder form of [`Gbf::add_term`].
    pub fn with_term(mut self, coefficient: i64, literals: &[Literal]) -> Result<Self> {
        self.add_term(coefficient, literals)?;
        Ok(self)
    }

    /// Adds every term of `other` (same `m` and `q`).
    pub fn add_gbf(&mut self, other: &Gbf) -> Result<()> {
        if other.q != self.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        if other.m != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: other.m,
            });
        }
        for t in &other.terms {
            self.add_term(t.coefficient as i64, &t.literals)?;
        }
        Ok(())
    }

    /// The same function viewed over `m` variables (`m >= self.m`); the
    /// extra variables do not occur.
    pub fn extend_vars(&self, m: usize) -> Result<Gbf> {
        if m < self.m {
            return Err(out_of_range("m", m, format!(">= {}", self.m)));
        }
        let mut out = Gbf::zero(m, self.q)?;
        out.terms = self.terms.clone();
        Ok(out)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.iter().map(Term::degree).max().unwrap_or(0)
    }

    /// `f(point)` for a bit-vector `point` of length `m`.
    pub fn eval(&self, point: &[u8]) -> Result<u32> {
        if point.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: point.len(),
            });
        }
        let mut mask = 0usize;
        for (i, &b) in point.iter().enumerate() {
            if b > 1 {
                return Err(out_of_range("point coordinate", b, "0 or 1"));
            }
            mask |= (b as usize) << i;
        }
        Ok(self.eval_mask(mask))
    }

    /// Evaluates at the point whose variable `i` is bit `i` of `mask`.
    #[inline]
    pub fn eval_mask(&self, mask: usize) -> u32 {
        let q = self.q as u64;
        let sum: u64 = self
            .terms
            .iter()
            .filter(|t| t.is_one(mask))
            .map(|t| t.coefficient as u64)
            .sum();
        (sum % q) as u32
    }

    /// `g(1 - z_0, ..., 1 - z_{m-1})`: every literal's complement flag toggled.
    pub fn substitute_complement(&self) -> Gbf {
        let mut out = Gbf {
            m: self.m,
            q: self.q,
            terms: Vec::with_capacity(self.terms.len()),
        };
        for t in &self.terms {
            let lits: Vec<Literal> = t.literals.iter().map(|l| l.toggled()).collect();
            out.add_term(t.coefficient as i64, &lits)
                .expect("toggling literals preserves variable range");
        }
        out
    }

    /// The full sequence `psi(f)` of length `2^m`.
    pub fn psi(&self, order: BitOrder) -> PhaseSequence {
        let len = 1usize << self.m;
        let phases = (0..len)
            .map(|r| self.eval_mask(order.to_lsb_mask(r, self.m)))
            .collect();
        PhaseSequence {
            q: self.q,
            phases,
        }
    }

    /// The first `j` entries of `psi(f)`.
    pub fn psi_prefix(&self, j: usize, order: BitOrder) -> Result<PhaseSequence> {
        self.check_truncation(j)?;
        let phases = (0..j)
            .map(|r| self.eval_mask(order.to_lsb_mask(r, self.m)))
            .collect();
        Ok(PhaseSequence { q: self.q, phases })
    }

    /// The last `j` entries of `psi(f)`.
    pub fn psi_suffix(&self, j: usize, order: BitOrder) -> Result<PhaseSequence> {
        self.check_truncation(j)?;
        let len = 1usize << self.m;
        let phases = (len - j..len)
            .map(|r| self.eval_mask(order.to_lsb_mask(r, self.m)))
            .collect();
        Ok(PhaseSequence { q: self.q, phases })
    }

    fn check_truncation(&self, j: usize) -> Result<()> {
        let len = 1usize << self.m;
        if j == 0 || j > len {
            return Err(out_of_range("j", j, format!("1 <= j <= 2^{} = {len}", self.m)));
        }
        Ok(())
    }
}

impl fmt::Display for Gbf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if t.coefficient != 1 || t.literals.is_empty() {
                write!(f, "{}", t.coefficient)?;
            }
            for l in &t.literals {
                if l.complemented {
                    write!(f, "~z{}", l.var)?;
                } else {
                    write!(f, "z{}", l.var)?;
                }
            }
        }
        write!(f, " (mod {})", self.q)
    }
}

/// A `Z_q`-valued sequence; entry `t` stands for the complex number
/// `omega_q^phases[t]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPhases")]
pub struct PhaseSequence {
    q: u32,
    phases: Vec<u32>,
}

#[derive(Deserialize)]
struct RawPhases {
    q: u32,
    phases: Vec<u32>,
}

impl TryFrom<RawPhases> for PhaseSequence {
    type Error = Error;

    fn try_from(raw: RawPhases) -> Result<PhaseSequence> {
        PhaseSequence::new(raw.q, raw.phases)
    }
}

impl PhaseSequence {
    pub fn new(q: u32, phases: Vec<u32>) -> Result<Self> {
        if q == 0 {
            return Err(out_of_range("q", q, "q >= 1"));
        }
        if phases.is_empty() {
            return Err(out_of_range("L", 0, "L >= 1"));
        }
        if let Some(&p) = phases.iter().find(|&&p| p >= q) {
            return Err(out_of_range("phase", p, format!("0 <= phase < {q}")));
        }
        Ok(PhaseSequence { q, phases })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn phases(&self) -> &[u32] {
        &self.phases
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn into_phases(self) -> Vec<u32> {
        self.phases
    }

    /// Complex conjugate: `omega^p -> omega^{-p}`.
    pub fn conjugate(&self) -> PhaseSequence {
        PhaseSequence {
            q: self.q,
            phases: self.phases.iter().map(|&p| (self.q - p) % self.q).collect(),
        }
    }

    /// Multiplies every entry by `omega_q^offset`.
    pub fn rotate(&self, offset: u32) -> PhaseSequence {
        PhaseSequence {
            q: self.q,
            phases: self.phases.iter().map(|&p| (p + offset) % self.q).collect(),
        }
    }

    /// Multiplies every entry by `-1`. Requires an even modulus.
    pub fn negate(&self) -> Result<PhaseSequence> {
        if !self.q.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!("cannot negate over odd q = {}", self.q)));
        }
        Ok(self.rotate(self.q / 2))
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a PhaseSequence>) -> Result<PhaseSequence> {
        let mut iter = parts.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::InvalidParams("concatenation of zero sequences".into()))?;
        let mut phases = first.phases.clone();
        for p in iter {
            if p.q != first.q {
                return Err(Error::ModulusMismatch(first.q, p.q));
            }
            phases.extend_from_slice(&p.phases);
        }
        Ok(PhaseSequence { q: first.q, phases })
    }

    /// Realized complex values.
    pub fn to_complex(&self) -> Vec<Complex64> {
        let step = std::f64::consts::TAU / self.q as f64;
        self.phases
            .iter()
            .map(|&p| Complex64::from_polar(1.0, step * p as f64))
            .collect()
    }
}
