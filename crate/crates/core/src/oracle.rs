//! Independent regeneration of code sets from their provenance.
//!
//! Nothing here goes through [`crate::gbf::Gbf::eval`], the `psi` helpers or
//! the block assembly in [`crate::construct`]. Every entry is obtained by
//! evaluating the *extended* function of the construction (for example
//! `M^{a,n,c} = g^{a,n} + sum c_i z_{m1+i}` over `m1 + l` variables) at
//! the index the entry occupies, with the truncation applied per block.

use crate::codeset::{CodeSet, Provenance};
use crate::construct::{Lemma1Params, Lemma2Params};
use crate::error::{Error, Result};
use crate::gbf::{BitOrder, Term};

/// Regenerates every sequence of `set` from its stored parameters.
pub fn oracle_regenerate(set: &CodeSet) -> Result<CodeSet> {
    let prov = set.provenance().ok_or(Error::MissingProvenance)?;
    let (q, z, phases) = match prov {
        Provenance::Lemma1(p) => {
            let b = Binary::new(p)?;
            (2, b.gamma, b.codes(&[vec![]], Layout::Repeat(1)))
        }
        Provenance::Theorem1(p) => {
            let b = Binary::new(&p.base)?;
            (2, b.gamma, b.codes(&p.s_r, Layout::Repeat(p.r)))
        }
        Provenance::Theorem3(p) => {
            let b = Binary::new(p)?;
            (2, 2 * b.gamma, b.codes(&[vec![]], Layout::Triple))
        }
        Provenance::Lemma2(p) => (p.q, 1 << p.m2, qary_codes(p, 1, &[vec![]])),
        Provenance::Theorem2(p) => (p.base.q, 1 << p.base.m2, qary_codes(&p.base, p.r, &p.s_r)),
    };
    CodeSet::from_phases(q, z, phases, Some(prov.clone()))
}

/// Coordinates `(code, row, t)` where two sets differ. Sets of different
/// shape differ everywhere and return `None`.
pub fn mismatches(a: &CodeSet, b: &CodeSet) -> Option<Vec<(usize, usize, usize)>> {
    if a.dims() != b.dims() || a.q() != b.q() {
        return None;
    }
    let mut out = Vec::new();
    for (ci, (ca, cb)) in a.codes().iter().zip(b.codes()).enumerate() {
        for (ri, (ra, rb)) in ca.rows().iter().zip(cb.rows()).enumerate() {
            for (t, (x, y)) in ra.phases().iter().zip(rb.phases()).enumerate() {
                if x != y {
                    out.push((ci, ri, t));
                }
            }
        }
    }
    Some(out)
}

fn point(index: usize, m: usize, order: BitOrder) -> Vec<u8> {
    (0..m)
        .map(|i| {
            let pos = match order {
                BitOrder::Lsb => i,
                BitOrder::Msb => m - 1 - i,
            };
            ((index >> pos) & 1) as u8
        })
        .collect()
}

fn naive_eval(terms: &[Term], z: &[u8]) -> u64 {
    terms
        .iter()
        .map(|t| {
            let prod: u64 = t
                .literals
                .iter()
                .map(|l| if l.complemented { 1 - z[l.var] as u64 } else { z[l.var] as u64 })
                .product();
            t.coefficient as u64 * prod
        })
        .sum()
}

fn bit(x: usize, i: usize) -> u64 {
    ((x >> i) & 1) as u64
}

fn row_a(idx: usize, k: usize) -> Vec<u64> {
    (0..=k).map(|j| bit(idx, k - j)).collect()
}

fn c_dot_r(c: &[u8], r: usize) -> u64 {
    c.iter().enumerate().map(|(i, &ci)| ci as u64 * bit(r, i)).sum()
}

/// End of the residual path opposite `beta1`, found by walking the
/// residual adjacency of the quadratic part.
fn path_opposite_end(terms: &[Term], vars: usize, deleted: &[usize], beta1: usize) -> usize {
    let mut adj = vec![Vec::new(); vars];
    for t in terms.iter().filter(|t| t.literals.len() == 2) {
        let (i, j) = (t.literals[0].var, t.literals[1].var);
        if !deleted.contains(&i) && !deleted.contains(&j) {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    let (mut prev, mut cur) = (usize::MAX, beta1);
    while let Some(&next) = adj[cur].iter().find(|&&y| y != prev) {
        prev = cur;
        cur = next;
    }
    cur
}

enum Layout {
    /// `R` consecutive blocks, block `r` signed by `<c, r>`.
    Repeat(usize),
    /// Blocks 0, 1, 2 of `g + z_{m1+1}` over `m1 + 2` variables.
    Triple,
}

struct Binary<'a> {
    p: &'a Lemma1Params,
    gamma: usize,
    a_vertex: usize,
}

impl<'a> Binary<'a> {
    fn new(p: &'a Lemma1Params) -> Result<Self> {
        p.validate()?;
        let m = p.m1;
        let a_vertex = p.a_vertex.unwrap_or_else(|| {
            path_opposite_end(p.quadratic.terms(), m - 4, &p.deleted, p.beta1)
        });
        Ok(Binary {
            p,
            gamma: (1 << (m - 1)) + (1 << (m - 3)),
            a_vertex,
        })
    }

    fn g(&self, z: &[u8]) -> u64 {
        let m = self.p.m1;
        let quad = naive_eval(self.p.quadratic.terms(), z);
        let z: Vec<u64> = z.iter().map(|&b| b as u64).collect();
        let nz = |i: usize| 1 - z[i];
        let lin: u64 = self.p.d_vec.iter().enumerate().map(|(i, &d)| d as u64 * z[i]).sum();
        let alpha = nz(m - 1) * (nz(m - 4) * (z[m - 3] + z[m - 2]) + z[m - 2] * z[m - 3]);
        let beta = z[self.p.beta1]
            * (nz(m - 1) * (z[m - 2] * nz(m - 3) * nz(m - 4) + z[m - 2] * z[m - 3])
                + z[m - 1] * nz(m - 2) * nz(m - 3));
        quad + lin + self.p.d as u64 + alpha + beta
    }

    fn g_an(&self, z: &[u8], a: &[u64], n: usize) -> u64 {
        let k = self.p.deleted.len();
        let offs: u64 = self
            .p
            .deleted
            .iter()
            .enumerate()
            .map(|(i, &pv)| (a[i] + bit(n, i)) * z[pv] as u64)
            .sum();
        (self.g(z) + offs + a[k] * z[self.a_vertex] as u64) % 2
    }

    fn s_an(&self, z: &[u8], a: &[u64], n: usize) -> u64 {
        let k = self.p.deleted.len();
        let flipped: Vec<u8> = z.iter().map(|&b| 1 - b).collect();
        let offs: u64 = self
            .p
            .deleted
            .iter()
            .enumerate()
            .map(|(i, &pv)| (a[i] + bit(n, i)) * (1 - z[pv] as u64))
            .sum();
        (self.g(&flipped) + offs + (1 - a[k]) * z[self.a_vertex] as u64) % 2
    }

    fn codes(&self, s_r: &[Vec<u8>], layout: Layout) -> Vec<Vec<Vec<u32>>> {
        let m = self.p.m1;
        let k = self.p.deleted.len();
        let order = self.p.bit_order;
        let gamma = self.gamma;
        let block = 1usize << m;

        // value of the extended function at block `j`, local index `t`
        let extended = |mate: bool, a: &[u64], n: usize, c: &[u8], j: usize, t: usize| -> u32 {
            let z = point(t, m, order);
            let base = if mate { self.s_an(&z, a, n) } else { self.g_an(&z, a, n) };
            let ext = match layout {
                Layout::Repeat(_) => c_dot_r(c, j),
                Layout::Triple => bit(j, 1),
            };
            ((base + ext) % 2) as u32
        };
        let blocks = match layout {
            Layout::Repeat(r) => r,
            Layout::Triple => 3,
        };

        let mut out = Vec::new();
        for mate in [false, true] {
            for n in 0..1usize << k {
                for c in s_r {
                    let mut code = Vec::new();
                    for idx in 0..2usize << k {
                        let a = row_a(idx, k);
                        let mut row = Vec::with_capacity(blocks * gamma);
                        for j in 0..blocks {
                            for t in 0..gamma {
                                let local = if mate { block - gamma + t } else { t };
                                let v = extended(mate, &a, n, c, j, local);
                                row.push(if mate { (2 - v) % 2 } else { v });
                            }
                        }
                        code.push(row);
                    }
                    out.push(code);
                }
            }
        }
        out
    }
}

fn qary_codes(p: &Lemma2Params, r_count: usize, s_r: &[Vec<u8>]) -> Vec<Vec<Vec<u32>>> {
    let q = p.q as u64;
    let half = q / 2;
    let m = p.m2;
    let k = p.deleted.len();
    let terms = p.f.terms();
    let len = 1usize << m;

    let f_an = |z: &[u8], a: &[u64], n: usize| -> u64 {
        let offs: u64 = p
            .deleted
            .iter()
            .enumerate()
            .map(|(i, &pv)| (a[i] + bit(n, i)) * z[pv] as u64)
            .sum();
        naive_eval(terms, z) + half * (offs + a[k] * z[p.beta1] as u64)
    };
    let h_an = |z: &[u8], a: &[u64], n: usize| -> u64 {
        let flipped: Vec<u8> = z.iter().map(|&b| 1 - b).collect();
        let offs: u64 = p
            .deleted
            .iter()
            .enumerate()
            .map(|(i, &pv)| (a[i] + bit(n, i)) * (1 - z[pv] as u64))
            .sum();
        naive_eval(terms, &flipped) + half * (offs + (1 - a[k]) * z[p.beta1] as u64)
    };

    let mut out = Vec::new();
    for mate in [false, true] {
        for n in 0..1usize << k {
            for c in s_r {
                let mut code = Vec::new();
                for idx in 0..2usize << k {
                    let a = row_a(idx, k);
                    let mut row = Vec::with_capacity(r_count * len);
                    for j in 0..r_count {
                        for t in 0..len {
                            let z = point(t, m, p.bit_order);
                            let base = if mate { h_an(&z, &a, n) } else { f_an(&z, &a, n) };
                            let v = (base + half * c_dot_r(c, j)) % q;
                            row.push(if mate { ((q - v) % q) as u32 } else { v as u32 });
                        }
                    }
                    code.push(row);
                }
                out.push(code);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;

    fn example_base() -> Lemma1Params {
        let q = quadratic_form(4, 2, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (0, 2, 1)]).unwrap();
        Lemma1Params::new(8, q, vec![1, 1, 1, 1], 0, vec![0, 1], 2)
    }

    #[test]
    fn regenerates_example_sets() {
        for set in [
            lemma1_ccc(&example_base()).unwrap(),
            theorem1_zccs(&Theorem1Params::new(example_base(), 1, 2)).unwrap(),
            theorem3_zccs(&example_base()).unwrap(),
        ] {
            let again = oracle_regenerate(&set).unwrap();
            assert_eq!(mismatches(&set, &again), Some(vec![]));
        }
    }

    #[test]
    fn regenerates_qary_sets() {
        let f = quadratic_form(3, 4, &[(0, 1, 2), (1, 2, 2)]).unwrap();
        let f = f.with_term(3, &[crate::gbf::Literal::var(2)]).unwrap();
        let base = Lemma2Params::new(4, 3, f, vec![], 0);
        let set = theorem2_zccs(&Theorem2Params::new(base, 2, 4)).unwrap();
        assert_eq!(mismatches(&set, &oracle_regenerate(&set).unwrap()), Some(vec![]));
    }

    #[test]
    fn single_mutation_is_located() {
        let set = lemma1_ccc(&example_base()).unwrap();
        let old = set.codes()[3].rows()[5].phases()[17];
        let mutated = set.with_phase(3, 5, 17, 1 - old).unwrap();
        let again = oracle_regenerate(&mutated).unwrap();
        assert_eq!(mismatches(&mutated, &again), Some(vec![(3, 5, 17)]));
    }

    #[test]
    fn missing_provenance() {
        let set = lemma1_ccc(&example_base()).unwrap().without_provenance();
        assert!(matches!(oracle_regenerate(&set), Err(Error::MissingProvenance)));
    }

    #[test]
    fn bit_order_changes_output() {
        let lsb = lemma1_ccc(&example_base()).unwrap();
        let msb = lemma1_ccc(&example_base().with_bit_order(BitOrder::Msb)).unwrap();
        assert_ne!(lsb.to_phases(), msb.to_phases());
        assert_eq!(mismatches(&msb, &oracle_regenerate(&msb).unwrap()), Some(vec![]));
    }
}
