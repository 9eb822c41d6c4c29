//! The five generators: two complete complementary code (CCC) families and
//! three Z-complementary code set (ZCCS) families built on top of them.
//!
//! | generator          | output `(M, N, L, Z)`                              |
//! |--------------------|----------------------------------------------------|
//! | [`lemma1_ccc`]     | `(2^{k+1}, 2^{k+1}, gamma, gamma)`, binary          |
//! | [`theorem1_zccs`]  | `(R 2^{k+1}, 2^{k+1}, R gamma, gamma)`, binary      |
//! | [`lemma2_ccc`]     | `(2^{k+1}, 2^{k+1}, 2^{m2}, 2^{m2})`, q-ary         |
//! | [`theorem2_zccs`]  | `(R 2^{k+1}, 2^{k+1}, R 2^{m2}, 2^{m2})`, q-ary     |
//! | [`theorem3_zccs`]  | `(2^{k+1}, 2^{k+1}, 3 gamma, 2 gamma)`, binary      |
//!
//! with `gamma = 2^{m1-1} + 2^{m1-3}`.
//!
//! Ordering inside a code set is fixed so output is reproducible: codes
//! are `n`-major, then in `S_R` order; all "direct" codes precede all
//! conjugated ones; rows inside a code follow the lexicographic order of
//! `(a_0, ..., a_{k-1}, a)`. The integers `n`, `r` are expanded into bits
//! least-significant first. The GBF sequence index itself follows the
//! configured [`BitOrder`].
//!
//! In the binary truncated family the linear term `a * z_v` that separates
//! the rows of a code must sit on the end of the residual path *opposite*
//! the vertex `beta1` that feeds the cubic `beta` term. When both terms
//! share a vertex of a path with two or more vertices the cross-code
//! correlations do not vanish. For a single-vertex path the two coincide.
//! [`Lemma1Params::a_vertex`] overrides the choice.

use serde::{Deserialize, Serialize};

use crate::codeset::{Code, CodeSet, Provenance};
use crate::error::{out_of_range, Error, Result};
use crate::gbf::{BitOrder, Gbf, Literal, PhaseSequence};
use crate::graph::{graph_of_quadratic, validate_deletion_path, PathCertificate, PathViolation};

/// Quadratic form `sum w * z_i z_j` over `m` variables.
pub fn quadratic_form(m: usize, q: u32, edges: &[(usize, usize, u32)]) -> Result<Gbf> {
    let mut f = Gbf::zero(m, q)?;
    for &(i, j, w) in edges {
        if i == j {
            return Err(Error::InvalidParams(format!("self-loop z{i}z{i} in quadratic form")));
        }
        f.add_term(w as i64, &[Literal::var(i), Literal::var(j)])?;
    }
    Ok(f)
}

/// `gamma = 2^{m1-1} + 2^{m1-3}`.
pub fn gamma(m1: usize) -> usize {
    (1 << (m1 - 1)) + (1 << (m1 - 3))
}

/// Default `S_R`: the first `r` vectors of length `l` in ascending integer
/// order, bit `i` of the integer giving `c_i`.
pub fn default_s_r(l: usize, r: usize) -> Vec<Vec<u8>> {
    (0..r).map(|i| lsb_bits(i, l)).collect()
}

fn lsb_bits(x: usize, width: usize) -> Vec<u8> {
    (0..width).map(|i| ((x >> i) & 1) as u8).collect()
}

/// `a_vec` of row `idx` inside a code: lexicographic, so `a_0` is the most
/// significant bit and `a` the least.
pub fn row_a_vec(idx: usize, k: usize) -> Vec<u8> {
    (0..=k).map(|j| ((idx >> (k - j)) & 1) as u8).collect()
}

fn inner_sign(c: &[u8], r: usize) -> u32 {
    c.iter()
        .enumerate()
        .map(|(i, &ci)| ci as u32 * ((r >> i) & 1) as u32)
        .sum::<u32>()
        % 2
}

fn check_a_n(a_vec: &[u8], n: usize, k: usize) -> Result<()> {
    if a_vec.len() != k + 1 {
        return Err(out_of_range("a_vec length", a_vec.len(), format!("= k + 1 = {}", k + 1)));
    }
    if let Some(&b) = a_vec.iter().find(|&&b| b > 1) {
        return Err(out_of_range("a_vec entry", b, "0 or 1"));
    }
    if k >= usize::BITS as usize || n >> k != 0 {
        return Err(out_of_range("n", n, format!("0 <= n < 2^{k}")));
    }
    Ok(())
}

fn check_blocks(l: usize, r: usize, s_r: &[Vec<u8>]) -> Result<()> {
    if r < 2 || !r.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!("R = {r} must be an even integer >= 2")));
    }
    if l >= 20 || r > 1 << l {
        return Err(Error::InvalidParams(format!("R = {r} exceeds 2^l with l = {l}")));
    }
    if s_r.len() != r {
        return Err(Error::InvalidParams(format!("S_R has {} elements, expected R = {r}", s_r.len())));
    }
    for (i, c) in s_r.iter().enumerate() {
        if c.len() != l || c.iter().any(|&b| b > 1) {
            return Err(Error::InvalidParams(format!("S_R element {c:?} is not a length-{l} bit vector")));
        }
        if s_r[..i].contains(c) {
            return Err(Error::InvalidParams(format!("S_R element {c:?} repeated")));
        }
    }
    Ok(())
}

/// `R` copies of `block`, copy `r` multiplied by `(-1)^{<c, r>}`.
fn signed_blocks(block: &PhaseSequence, c: &[u8], r_count: usize) -> PhaseSequence {
    let half = block.q() / 2;
    let parts: Vec<PhaseSequence> = (0..r_count)
        .map(|r| block.rotate(half * inner_sign(c, r)))
        .collect();
    PhaseSequence::concat(&parts).expect("at least two blocks")
}

// ---------------------------------------------------------------------------
// Binary truncated family
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma1Params {
    pub m1: usize,
    /// Quadratic form over the first `m1 - 4` variables, `q = 2`.
    pub quadratic: Gbf,
    pub d_vec: Vec<u8>,
    pub d: u8,
    /// Deleted vertex labels `p_0 < ... < p_{k-1}`.
    pub deleted: Vec<usize>,
    /// Path end vertex multiplying the cubic `beta` term.
    pub beta1: usize,
    /// Vertex carrying the `a * z` row term. Defaults to the path end
    /// opposite `beta1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_vertex: Option<usize>,
    #[serde(default)]
    pub bit_order: BitOrder,
}

impl Lemma1Params {
    pub fn new(m1: usize, quadratic: Gbf, d_vec: Vec<u8>, d: u8, deleted: Vec<usize>, beta1: usize) -> Self {
        Lemma1Params {
            m1,
            quadratic,
            d_vec,
            d,
            deleted,
            beta1,
            a_vertex: None,
            bit_order: BitOrder::Lsb,
        }
    }

    pub fn with_bit_order(mut self, order: BitOrder) -> Self {
        self.bit_order = order;
        self
    }

    pub fn with_a_vertex(mut self, v: usize) -> Self {
        self.a_vertex = Some(v);
        self
    }

    pub fn k(&self) -> usize {
        self.deleted.len()
    }

    pub fn gamma(&self) -> usize {
        gamma(self.m1)
    }

    /// Checks every precondition and returns the path certificate.
    pub fn validate(&self) -> Result<PathCertificate> {
        if self.m1 < 5 || self.m1 > 24 {
            return Err(out_of_range("m1", self.m1, "5 <= m1 <= 24"));
        }
        let vars = self.m1 - 4;
        if self.quadratic.q() != 2 {
            return Err(Error::InvalidParams(format!(
                "quadratic form must be binary, got q = {}",
                self.quadratic.q()
            )));
        }
        if self.quadratic.m() != vars {
            return Err(Error::InvalidParams(format!(
                "quadratic form has {} variables, expected m1 - 4 = {vars}",
                self.quadratic.m()
            )));
        }
        if self.d_vec.len() != vars || self.d_vec.iter().any(|&b| b > 1) {
            return Err(Error::InvalidParams(format!(
                "d_vec must hold {vars} binary coefficients, got {:?}",
                self.d_vec
            )));
        }
        if self.d > 1 {
            return Err(out_of_range("d", self.d, "0 or 1"));
        }
        check_increasing(&self.deleted)?;
        let graph = graph_of_quadratic(&self.quadratic)?;
        let cert = validate_deletion_path(&graph, &self.deleted, None)?;
        if !cert.is_end_vertex(self.beta1) {
            return Err(PathViolation::NotAnEndVertex {
                vertex: self.beta1,
                path: cert.path_order.clone(),
            }
            .into());
        }
        if let Some(v) = self.a_vertex {
            if !cert.is_end_vertex(v) {
                return Err(PathViolation::NotAnEndVertex {
                    vertex: v,
                    path: cert.path_order.clone(),
                }
                .into());
            }
        }
        Ok(cert)
    }

    /// Vertex of the `a * z` row term.
    pub fn modulation_vertex(&self) -> Result<usize> {
        let cert = self.validate()?;
        Ok(self
            .a_vertex
            .unwrap_or_else(|| cert.opposite_end(self.beta1).expect("beta1 checked as an end vertex")))
    }
}

fn check_increasing(deleted: &[usize]) -> Result<()> {
    if deleted.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams(format!(
            "deleted vertices must be strictly increasing, got {deleted:?}"
        )));
    }
    Ok(())
}

/// `g = Q + sum d_i z_i + d + alpha + beta` over `m1` variables.
pub fn build_g(p: &Lemma1Params) -> Result<Gbf> {
    p.validate()?;
    let m = p.m1;
    let mut g = p.quadratic.extend_vars(m)?;
    for (i, &di) in p.d_vec.iter().enumerate() {
        g.add_term(di as i64, &[Literal::var(i)])?;
    }
    g.add_term(p.d as i64, &[])?;

    let (z1, z2, z3, z4) = (m - 1, m - 2, m - 3, m - 4);
    use Literal as L;
    // alpha = ~z1 (~z4 (z3 + z2) + z2 z3)
    g.add_term(1, &[L::not(z1), L::not(z4), L::var(z3)])?;
    g.add_term(1, &[L::not(z1), L::not(z4), L::var(z2)])?;
    g.add_term(1, &[L::not(z1), L::var(z2), L::var(z3)])?;
    // beta = z_b (~z1 (z2 ~z3 ~z4 + z2 z3) + z1 ~z2 ~z3)
    let b = p.beta1;
    g.add_term(1, &[L::var(b), L::not(z1), L::var(z2), L::not(z3), L::not(z4)])?;
    g.add_term(1, &[L::var(b), L::not(z1), L::var(z2), L::var(z3)])?;
    g.add_term(1, &[L::var(b), L::var(z1), L::not(z2), L::not(z3)])?;
    Ok(g)
}

/// `g^{a,n} = g + sum (a_i + n_i) z_{p_i} + a z_v`.
pub fn build_g_an(g: &Gbf, p: &Lemma1Params, a_vec: &[u8], n: usize) -> Result<Gbf> {
    let k = p.k();
    check_a_n(a_vec, n, k)?;
    let v = p.modulation_vertex()?;
    let mut out = g.clone();
    for (i, &pv) in p.deleted.iter().enumerate() {
        let coeff = a_vec[i] as i64 + ((n >> i) & 1) as i64;
        out.add_term(coeff, &[Literal::var(pv)])?;
    }
    out.add_term(a_vec[k] as i64, &[Literal::var(v)])?;
    Ok(out)
}

/// `s^{a,n} = ~g + sum (a_i + n_i) ~z_{p_i} + (1 - a) z_v`.
pub fn build_s_an(g: &Gbf, p: &Lemma1Params, a_vec: &[u8], n: usize) -> Result<Gbf> {
    let k = p.k();
    check_a_n(a_vec, n, k)?;
    let v = p.modulation_vertex()?;
    let mut out = g.substitute_complement();
    for (i, &pv) in p.deleted.iter().enumerate() {
        let coeff = a_vec[i] as i64 + ((n >> i) & 1) as i64;
        out.add_term(coeff, &[Literal::not(pv)])?;
    }
    out.add_term(1 - a_vec[k] as i64, &[Literal::var(v)])?;
    Ok(out)
}

/// The `gamma`-length building blocks: `prefix[n][row]` of `g^{a,n}` and
/// `suffix[n][row]` of `s^{a,n}` (not yet conjugated).
struct TruncatedBlocks {
    prefix: Vec<Vec<PhaseSequence>>,
    suffix: Vec<Vec<PhaseSequence>>,
}

fn truncated_blocks(p: &Lemma1Params) -> Result<TruncatedBlocks> {
    let g = build_g(p)?;
    let k = p.k();
    let gam = p.gamma();
    let mut prefix = Vec::with_capacity(1 << k);
    let mut suffix = Vec::with_capacity(1 << k);
    for n in 0..1usize << k {
        let mut pre = Vec::with_capacity(2 << k);
        let mut suf = Vec::with_capacity(2 << k);
        for idx in 0..2usize << k {
            let a = row_a_vec(idx, k);
            pre.push(build_g_an(&g, p, &a, n)?.psi_prefix(gam, p.bit_order)?);
            suf.push(build_s_an(&g, p, &a, n)?.psi_suffix(gam, p.bit_order)?);
        }
        prefix.push(pre);
        suffix.push(suf);
    }
    Ok(TruncatedBlocks { prefix, suffix })
}

fn codes_from<F>(blocks: &[Vec<PhaseSequence>], mut row: F) -> Result<Vec<Code>>
where
    F: FnMut(&PhaseSequence) -> Result<PhaseSequence>,
{
    blocks
        .iter()
        .map(|rows| Code::new(rows.iter().map(&mut row).collect::<Result<Vec<_>>>()?))
        .collect()
}

/// Binary `(2^{k+1}, 2^{k+1}, gamma)`-CCC.
pub fn lemma1_ccc(p: &Lemma1Params) -> Result<CodeSet> {
    let blocks = truncated_blocks(p)?;
    let mut codes = codes_from(&blocks.prefix, |s| Ok(s.clone()))?;
    codes.extend(codes_from(&blocks.suffix, |s| Ok(s.conjugate()))?);
    CodeSet::new(2, p.gamma(), codes, Some(Provenance::Lemma1(p.clone())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Params {
    pub base: Lemma1Params,
    pub l: usize,
    #[serde(rename = "R")]
    pub r: usize,
    #[serde(rename = "S_R")]
    pub s_r: Vec<Vec<u8>>,
}

impl Theorem1Params {
    /// Uses the default `S_R`.
    pub fn new(base: Lemma1Params, l: usize, r: usize) -> Self {
        Theorem1Params {
            base,
            l,
            r,
            s_r: default_s_r(l, r),
        }
    }

    pub fn validate(&self) -> Result<PathCertificate> {
        check_blocks(self.l, self.r, &self.s_r)?;
        self.base.validate()
    }
}

/// Binary `(R 2^{k+1}, 2^{k+1}, R gamma, gamma)`-ZCCS.
pub fn theorem1_zccs(p: &Theorem1Params) -> Result<CodeSet> {
    p.validate()?;
    let blocks = truncated_blocks(&p.base)?;
    let mut codes = Vec::new();
    for pre in &blocks.prefix {
        for c in &p.s_r {
            codes.push(Code::new(pre.iter().map(|u| signed_blocks(u, c, p.r)).collect())?);
        }
    }
    for suf in &blocks.suffix {
        for c in &p.s_r {
            codes.push(Code::new(
                suf.iter().map(|v| signed_blocks(v, c, p.r).conjugate()).collect(),
            )?);
        }
    }
    CodeSet::new(2, p.base.gamma(), codes, Some(Provenance::Theorem1(p.clone())))
}

/// Binary `(2^{k+1}, 2^{k+1}, 3 gamma, 2 gamma)`-ZCCS with rows
/// `(P, P, -P)`.
pub fn theorem3_zccs(p: &Lemma1Params) -> Result<CodeSet> {
    let blocks = truncated_blocks(p)?;
    let triple = |s: &PhaseSequence| -> Result<PhaseSequence> {
        PhaseSequence::concat([s, s, &s.negate()?])
    };
    let mut codes = codes_from(&blocks.prefix, triple)?;
    codes.extend(codes_from(&blocks.suffix, |s| Ok(triple(s)?.conjugate()))?);
    CodeSet::new(2, 2 * p.gamma(), codes, Some(Provenance::Theorem3(p.clone())))
}

// ---------------------------------------------------------------------------
// q-ary full-length family
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma2Params {
    pub q: u32,
    pub m2: usize,
    pub f: Gbf,
    pub deleted: Vec<usize>,
    pub beta1: usize,
    #[serde(default)]
    pub bit_order: BitOrder,
}

impl Lemma2Params {
    pub fn new(q: u32, m2: usize, f: Gbf, deleted: Vec<usize>, beta1: usize) -> Self {
        Lemma2Params {
            q,
            m2,
            f,
            deleted,
            beta1,
            bit_order: BitOrder::Lsb,
        }
    }

    pub fn with_bit_order(mut self, order: BitOrder) -> Self {
        self.bit_order = order;
        self
    }

    pub fn k(&self) -> usize {
        self.deleted.len()
    }

    /// Checks every precondition. Residual path edges must carry `q/2`.
    pub fn validate(&self) -> Result<PathCertificate> {
        if self.q < 2 || !self.q.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!("q = {} must be even", self.q)));
        }
        if self.m2 < 1 || self.m2 > 24 {
            return Err(out_of_range("m2", self.m2, "1 <= m2 <= 24"));
        }
        if self.f.m() != self.m2 || self.f.q() != self.q {
            return Err(Error::InvalidParams(format!(
                "f is over {} variables mod {}, expected {} variables mod {}",
                self.f.m(),
                self.f.q(),
                self.m2,
                self.q
            )));
        }
        check_increasing(&self.deleted)?;
        let graph = graph_of_quadratic(&self.f)?;
        let cert = validate_deletion_path(&graph, &self.deleted, Some(self.q / 2))?;
        if !cert.is_end_vertex(self.beta1) {
            return Err(PathViolation::NotAnEndVertex {
                vertex: self.beta1,
                path: cert.path_order.clone(),
            }
            .into());
        }
        Ok(cert)
    }
}

/// `f^{a,n} = f + q/2 (sum (a_i + n_i) z_{p_i} + a z_{beta1})`.
pub fn build_f_an(p: &Lemma2Params, a_vec: &[u8], n: usize) -> Result<Gbf> {
    if !p.q.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!("q = {} must be even", p.q)));
    }
    let k = p.k();
    check_a_n(a_vec, n, k)?;
    let half = (p.q / 2) as i64;
    let mut out = p.f.clone();
    for (i, &pv) in p.deleted.iter().enumerate() {
        let coeff = a_vec[i] as i64 + ((n >> i) & 1) as i64;
        out.add_term(half * coeff, &[Literal::var(pv)])?;
    }
    out.add_term(half * a_vec[k] as i64, &[Literal::var(p.beta1)])?;
    Ok(out)
}

/// `h^{a,n} = ~f + q/2 (sum (a_i + n_i) ~z_{p_i} + (1 - a) z_{beta1})`.
pub fn build_h_an(p: &Lemma2Params, a_vec: &[u8], n: usize) -> Result<Gbf> {
    if !p.q.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!("q = {} must be even", p.q)));
    }
    let k = p.k();
    check_a_n(a_vec, n, k)?;
    let half = (p.q / 2) as i64;
    let mut out = p.f.substitute_complement();
    for (i, &pv) in p.deleted.iter().enumerate() {
        let coeff = a_vec[i] as i64 + ((n >> i) & 1) as i64;
        out.add_term(half * coeff, &[Literal::not(pv)])?;
    }
    out.add_term(half * (1 - a_vec[k] as i64), &[Literal::var(p.beta1)])?;
    Ok(out)
}

struct FullBlocks {
    direct: Vec<Vec<PhaseSequence>>,
    mate: Vec<Vec<PhaseSequence>>,
}

fn full_blocks(p: &Lemma2Params) -> Result<FullBlocks> {
    p.validate()?;
    let k = p.k();
    let mut direct = Vec::with_capacity(1 << k);
    let mut mate = Vec::with_capacity(1 << k);
    for n in 0..1usize << k {
        let mut d = Vec::with_capacity(2 << k);
        let mut m = Vec::with_capacity(2 << k);
        for idx in 0..2usize << k {
            let a = row_a_vec(idx, k);
            d.push(build_f_an(p, &a, n)?.psi(p.bit_order));
            m.push(build_h_an(p, &a, n)?.psi(p.bit_order));
        }
        direct.push(d);
        mate.push(m);
    }
    Ok(FullBlocks { direct, mate })
}

/// q-ary `(2^{k+1}, 2^{k+1}, 2^{m2})`-CCC.
pub fn lemma2_ccc(p: &Lemma2Params) -> Result<CodeSet> {
    let blocks = full_blocks(p)?;
    let mut codes = codes_from(&blocks.direct, |s| Ok(s.clone()))?;
    codes.extend(codes_from(&blocks.mate, |s| Ok(s.conjugate()))?);
    CodeSet::new(p.q, 1 << p.m2, codes, Some(Provenance::Lemma2(p.clone())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem2Params {
    pub base: Lemma2Params,
    pub l: usize,
    #[serde(rename = "R")]
    pub r: usize,
    #[serde(rename = "S_R")]
    pub s_r: Vec<Vec<u8>>,
}

impl Theorem2Params {
    pub fn new(base: Lemma2Params, l: usize, r: usize) -> Self {
        Theorem2Params {
            base,
            l,
            r,
            s_r: default_s_r(l, r),
        }
    }

    pub fn validate(&self) -> Result<PathCertificate> {
        check_blocks(self.l, self.r, &self.s_r)?;
        self.base.validate()
    }
}

/// q-ary `(R 2^{k+1}, 2^{k+1}, R 2^{m2}, 2^{m2})`-ZCCS.
pub fn theorem2_zccs(p: &Theorem2Params) -> Result<CodeSet> {
    p.validate()?;
    let blocks = full_blocks(&p.base)?;
    let mut codes = Vec::new();
    for direct in &blocks.direct {
        for c in &p.s_r {
            codes.push(Code::new(direct.iter().map(|e| signed_blocks(e, c, p.r)).collect())?);
        }
    }
    for mate in &blocks.mate {
        for c in &p.s_r {
            codes.push(Code::new(
                mate.iter().map(|e| signed_blocks(e, c, p.r).conjugate()).collect(),
            )?);
        }
    }
    CodeSet::new(p.base.q, 1 << p.base.m2, codes, Some(Provenance::Theorem2(p.clone())))
}

/// Runs whichever generator `provenance` names.
pub fn generate(provenance: &Provenance) -> Result<CodeSet> {
    match provenance {
        Provenance::Lemma1(p) => lemma1_ccc(p),
        Provenance::Theorem1(p) => theorem1_zccs(p),
        Provenance::Lemma2(p) => lemma2_ccc(p),
        Provenance::Theorem2(p) => theorem2_zccs(p),
        Provenance::Theorem3(p) => theorem3_zccs(p),
    }
}
