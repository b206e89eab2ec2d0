//! Sections, the Milnor algebra and graded Koszul homology.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::groebner::{standard_monomials, Ideal, StandardMonomials};
use crate::linalg::{rank, Matrix};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};
use crate::rational::GaussianRational;

/// Largest weight tried when inferring quasi-homogeneous weights.
const MAX_INFERRED_WEIGHT: u32 = 8;

/// The coordinates `(f_1, ..., f_n)` of a section in the frame `e_1..e_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    ring: Ring,
    components: Vec<Polynomial>,
    weights: Option<Vec<u32>>,
}

impl Section {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::InvalidArgument("a section needs at least one component".into()));
        };
        let ring = first.ring();
        if components.iter().any(|f| f.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        if ring.conjugates {
            return Err(Error::InvalidArgument("section components must be holomorphic".into()));
        }
        if components.len() != ring.n {
            return Err(Error::Arity {
                expected: ring.n,
                found: components.len(),
            });
        }
        Ok(Section {
            ring,
            components,
            weights: None,
        })
    }

    /// `s = df = (df/dz_1, ..., df/dz_n)`.
    pub fn gradient(f: &Polynomial) -> Result<Self> {
        let n = f.ring().n;
        Self::new((0..n).map(|i| f.derivative(i)).collect())
    }

    /// Attaches weights, checking that every component is weighted homogeneous.
    pub fn with_weights(mut self, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != self.ring.n || weights.contains(&0) {
            return Err(Error::InvalidArgument("weights must be n positive integers".into()));
        }
        degrees_for(&self.components, &weights).ok_or(Error::NotQuasiHomogeneous)?;
        self.weights = Some(weights);
        Ok(self)
    }

    /// Checks user-supplied degrees against the attached (or inferred) weights.
    pub fn check_degrees(&self, claimed: &[u64]) -> Result<()> {
        let (_, d) = self.grading()?;
        if d.as_slice() != claimed {
            return Err(Error::NotQuasiHomogeneous);
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.n
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    /// The smallest positive weights (all ones first, then by increasing sum)
    /// making every component weighted homogeneous.
    pub fn infer_weights(&self) -> Option<Vec<u32>> {
        let n = self.ring.n;
        let ones = vec![1u32; n];
        if degrees_for(&self.components, &ones).is_some() {
            return Some(ones);
        }
        if n > 4 {
            return None;
        }
        let mut best: Option<Vec<u32>> = None;
        let mut cur = vec![1u32; n];
        loop {
            if degrees_for(&self.components, &cur).is_some() {
                let better = match &best {
                    None => true,
                    Some(b) => cur.iter().sum::<u32>() < b.iter().sum::<u32>(),
                };
                if better {
                    best = Some(cur.clone());
                }
            }
            let mut k = 0;
            loop {
                if k == n {
                    return best;
                }
                cur[k] += 1;
                if cur[k] <= MAX_INFERRED_WEIGHT {
                    break;
                }
                cur[k] = 1;
                k += 1;
            }
        }
    }

    /// Weights (given or inferred) and the resulting component degrees.
    pub fn grading(&self) -> Result<(Vec<u32>, Vec<u64>)> {
        let w = match &self.weights {
            Some(w) => w.clone(),
            None => self.infer_weights().ok_or(Error::NotQuasiHomogeneous)?,
        };
        let d = degrees_for(&self.components, &w).ok_or(Error::NotQuasiHomogeneous)?;
        Ok((w, d))
    }
}

fn degrees_for(components: &[Polynomial], weights: &[u32]) -> Option<Vec<u64>> {
    components.iter().map(|f| f.weighted_homogeneous_degree(weights)).collect()
}

/// `O / (f_1, ..., f_n)` with its standard-monomial basis.
#[derive(Clone, Debug)]
pub struct MilnorAlgebra {
    ideal: Ideal,
    basis: Vec<Monomial>,
    mult_table: Vec<Vec<Vec<GaussianRational>>>,
}

impl MilnorAlgebra {
    pub fn mu(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_polynomials(&self) -> Vec<Polynomial> {
        let ring = self.ideal.basis().ring();
        self.basis
            .iter()
            .map(|m| Polynomial::term(ring, m.clone(), GaussianRational::one()))
            .collect()
    }

    /// `mult_table[i][j]` holds the coordinates of `b_i b_j`.
    pub fn mult_table(&self) -> &[Vec<Vec<GaussianRational>>] {
        &self.mult_table
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Coordinates of the class of `p` in the basis.
    pub fn coordinates(&self, p: &Polynomial) -> Result<Vec<GaussianRational>> {
        let r = self.ideal.reduce(p)?;
        let mut out = vec![GaussianRational::zero(); self.basis.len()];
        for (m, c) in r.terms() {
            let idx = self.basis.iter().position(|b| b == m).expect("normal form lies in the standard span");
            out[idx] = c.clone();
        }
        Ok(out)
    }

    /// Product of two coordinate vectors through the multiplication table.
    pub fn multiply(&self, a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); self.mu()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (o, t) in out.iter_mut().zip(&self.mult_table[i][j]) {
                    if !t.is_zero() {
                        *o += &(&xy * t);
                    }
                }
            }
        }
        out
    }
}

/// The Milnor algebra in the default graded reverse lexicographic order.
pub fn milnor_algebra(s: &Section) -> Result<MilnorAlgebra> {
    milnor_algebra_with_order(s, &MonomialOrder::GrevLex)
}

/// Fails with [`Error::NonIsolatedZero`] unless the quotient is finite and
/// every `z_i` is nilpotent in it (the origin is the only common zero).
pub fn milnor_algebra_with_order(s: &Section, order: &MonomialOrder) -> Result<MilnorAlgebra> {
    let ideal = Ideal::new(s.components(), order)?;
    let basis = match standard_monomials(ideal.basis()) {
        StandardMonomials::Finite(b) if !b.is_empty() => b,
        _ => return Err(Error::NonIsolatedZero),
    };
    let mu = basis.len() as u32;
    for i in 0..s.n() {
        if !ideal.contains(&Polynomial::var(s.ring(), i).pow(mu))? {
            return Err(Error::NonIsolatedZero);
        }
    }
    let mut alg = MilnorAlgebra {
        ideal,
        basis,
        mult_table: Vec::new(),
    };
    let mut table = Vec::with_capacity(alg.mu());
    for a in &alg.basis {
        let mut row = Vec::with_capacity(alg.mu());
        for b in &alg.basis {
            let p = Polynomial::term(s.ring(), a.mul(b), GaussianRational::one());
            row.push(alg.coordinates(&p)?);
        }
        table.push(row);
    }
    alg.mult_table = table;
    Ok(alg)
}

/// Dimensions of `H^k` in internal degree `d`, for `k = -n..=0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyTable {
    dims: BTreeMap<(i64, i64), usize>,
}

impl HomologyTable {
    pub fn dim(&self, k: i64, degree: i64) -> usize {
        self.dims.get(&(k, degree)).copied().unwrap_or(0)
    }

    /// `(k, degree, dim)` records in increasing `(k, degree)`.
    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, usize)> + '_ {
        self.dims.iter().map(|(&(k, d), &v)| (k, d, v))
    }

    pub fn total(&self, k: i64) -> usize {
        self.dims.iter().filter(|((kk, _), _)| *kk == k).map(|(_, v)| v).sum()
    }

    /// True when every `H^k` with `k != 0` vanishes over the computed range.
    pub fn vanishes_off_zero(&self) -> bool {
        self.dims.iter().all(|(&(k, _), &v)| k == 0 || v == 0)
    }
}

/// `sum_k (-1)^k dim H^k` over the table.
pub fn euler_characteristic(table: &HomologyTable) -> i64 {
    table
        .entries()
        .map(|(k, _, v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// Monomials of weighted degree exactly `d`.
fn monomials_of_degree(weights: &[u32], d: u64) -> Vec<Monomial> {
    fn go(weights: &[u32], idx: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if idx == weights.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let w = weights[idx] as u64;
        let mut e = 0u64;
        while e * w <= left {
            cur.push(e as u32);
            go(weights, idx + 1, left - e * w, cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(weights, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Basis of the internal-degree-`d` slice of `∧^l V^∨ ⊗ O`: pairs `(I, z^a)`.
fn slice_basis(weights: &[u32], degs: &[u64], l: usize, d: i64) -> Vec<(u64, Monomial)> {
    let n = weights.len();
    let mut out = Vec::new();
    for set in (0u64..(1u64 << n)).filter(|m| m.count_ones() as usize == l) {
        let shift: u64 = (0..n).filter(|i| set >> i & 1 == 1).map(|i| degs[i]).sum();
        let left = d - shift as i64;
        if left < 0 {
            continue;
        }
        for m in monomials_of_degree(weights, left as u64) {
            out.push((set, m));
        }
    }
    out
}

/// Matrix of `iota_s` from the `l`-slice to the `(l-1)`-slice in degree `d`,
/// using `iota_s(e_I^*) = sum_j (-1)^{j-1} f_{i_j} e_{I - i_j}^*`.
fn slice_differential(s: &Section, weights: &[u32], degs: &[u64], l: usize, d: i64) -> Result<(Matrix, usize, usize)> {
    let src = slice_basis(weights, degs, l, d);
    let dst = slice_basis(weights, degs, l - 1, d);
    let index: BTreeMap<(u64, Monomial), usize> = dst.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = vec![vec![GaussianRational::zero(); src.len()]; dst.len()];
    let n = s.n();
    for (col, (set, mono)) in src.iter().enumerate() {
        let mut pos = 0;
        for i in 0..n {
            if set >> i & 1 == 0 {
                continue;
            }
            let sign = if pos % 2 == 0 { GaussianRational::one() } else { -GaussianRational::one() };
            pos += 1;
            let rest = set & !(1u64 << i);
            for (fm, fc) in s.components()[i].terms() {
                let key = (rest, fm.mul(mono));
                let row = *index.get(&key).ok_or_else(|| {
                    Error::ConventionMismatch("differential does not preserve the internal degree".into())
                })?;
                m[row][col] += &(&sign * fc);
            }
        }
    }
    Ok((m, src.len(), dst.len()))
}

/// Graded Koszul homology `H^{-l}_d` of `iota_s` for `d` in `range`.
pub fn koszul_homology_graded(s: &Section, range: RangeInclusive<i64>) -> Result<HomologyTable> {
    if range.is_empty() {
        return Err(Error::EmptyDegreeRange);
    }
    let (w, degs) = s.grading()?;
    let n = s.n();
    let mut table = HomologyTable::default();
    for d in range {
        // ranks[l] = rank of iota_s on the l-slice (l = 1..=n)
        let mut ranks = vec![0usize; n + 2];
        let mut dims = vec![0usize; n + 1];
        for l in 0..=n {
            dims[l] = slice_basis(&w, &degs, l, d).len();
        }
        for l in 1..=n {
            if dims[l] == 0 || dims[l - 1] == 0 {
                continue;
            }
            let (m, _, _) = slice_differential(s, &w, &degs, l, d)?;
            ranks[l] = rank(&m);
        }
        for l in 0..=n {
            let h = dims[l] - ranks[l] - ranks[l + 1];
            table.dims.insert((-(l as i64), d), h);
        }
    }
    Ok(table)
}

/// Internal degrees that can carry homology: `0 ..= sum d_i + sum (d_i - w_i)^+ + max d_i`.
pub fn default_degree_range(s: &Section) -> Result<RangeInclusive<i64>> {
    let (w, d) = s.grading()?;
    let sum_d: i64 = d.iter().map(|&x| x as i64).sum();
    let socle: i64 = d.iter().zip(&w).map(|(&x, &y)| x as i64 - y as i64).sum::<i64>().max(0);
    let max_d = d.iter().copied().max().unwrap_or(0) as i64;
    Ok(0..=sum_d + socle + max_d)
}
