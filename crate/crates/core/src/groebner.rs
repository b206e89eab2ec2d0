//! Buchberger's algorithm with the sugar selection strategy, normal forms,
//! cofactor lifting and standard monomials.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};
use crate::rational::GaussianRational;

/// A Groebner basis together with the order it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .filter_map(|g| g.leading_monomial(&self.order).cloned())
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(|g| !g.is_zero() && g.is_constant())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardMonomials {
    Finite(Vec<Monomial>),
    Infinite,
}

impl StandardMonomials {
    pub fn finite(self) -> Option<Vec<Monomial>> {
        match self {
            StandardMonomials::Finite(v) => Some(v),
            StandardMonomials::Infinite => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Entry {
    poly: Polynomial,
    lm: Monomial,
    sugar: u32,
    // Expression of `poly` in the original generators; empty when not tracked.
    cof: Vec<Polynomial>,
}

fn common_ring(gens: &[Polynomial]) -> Result<Option<Ring>> {
    let mut ring = None;
    for g in gens {
        match ring {
            None => ring = Some(g.ring()),
            Some(r) if r != g.ring() => return Err(Error::RingMismatch),
            _ => {}
        }
    }
    Ok(ring)
}

fn axpy(acc: &mut [Polynomial], m: &Monomial, c: &GaussianRational, src: &[Polynomial]) {
    for (a, s) in acc.iter_mut().zip(src) {
        *a = &*a - &s.mul_term(m, c);
    }
}

/// Fully reduces `p` by the entries, updating the tracked cofactors.
fn reduce(mut p: Polynomial, mut cof: Vec<Polynomial>, basis: &[Entry], skip: Option<usize>, order: &MonomialOrder) -> (Polynomial, Vec<Polynomial>) {
    let mut rem = Polynomial::zero(p.ring());
    while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis
            .iter()
            .enumerate()
            .filter(|(k, _)| Some(*k) != skip)
            .find_map(|(_, e)| e.lm.quotient_of(&m).map(|q| (e, q)));
        match divisor {
            Some((e, q)) => {
                // entries are monic
                p = &p - &e.poly.mul_term(&q, &c);
                axpy(&mut cof, &q, &c, &e.cof);
            }
            None => {
                rem.add_term(m.clone(), &c);
                p.add_term(m, &-c);
            }
        }
    }
    (rem, cof)
}

fn make_monic(e: &mut Entry, order: &MonomialOrder) {
    let lc = e.poly.leading_term(order).map(|(_, c)| c.clone()).expect("nonzero");
    if !lc.is_one() {
        let inv = lc.inv().expect("nonzero leading coefficient");
        e.poly = e.poly.scale(&inv);
        for c in e.cof.iter_mut() {
            *c = c.scale(&inv);
        }
    }
}

fn s_polynomial(a: &Entry, b: &Entry) -> (Polynomial, Vec<Polynomial>) {
    let l = a.lm.lcm(&b.lm);
    let qa = a.lm.quotient_of(&l).expect("lcm divisible");
    let qb = b.lm.quotient_of(&l).expect("lcm divisible");
    let one = GaussianRational::one();
    let p = &a.poly.mul_term(&qa, &one) - &b.poly.mul_term(&qb, &one);
    let cof = a
        .cof
        .iter()
        .zip(&b.cof)
        .map(|(x, y)| &x.mul_term(&qa, &one) - &y.mul_term(&qb, &one))
        .collect();
    (p, cof)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Pair {
    sugar: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
}

fn pair_sugar(a: &Entry, b: &Entry, lcm: &Monomial) -> u32 {
    let d = lcm.degree();
    (a.sugar + d - a.lm.degree()).max(b.sugar + d - b.lm.degree())
}

/// Reduced Groebner basis with optional cofactor tracking.
fn groebner_core(gens: &[Polynomial], order: &MonomialOrder, track: bool) -> Result<(GroebnerBasis, Vec<Vec<Polynomial>>)> {
    let ring = match common_ring(gens)? {
        Some(r) => r,
        None => {
            return Err(Error::InvalidArgument("no generators given (ring unknown)".into()));
        }
    };
    if let MonomialOrder::Weighted(w) = order {
        if w.len() != ring.nvars() || w.contains(&0) {
            return Err(Error::InvalidArgument("weights must be positive, one per variable".into()));
        }
    }
    let k = gens.len();
    let mut basis: Vec<Entry> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();

    let push = |basis: &mut Vec<Entry>, pairs: &mut Vec<Pair>, mut e: Entry| {
        make_monic(&mut e, order);
        let idx = basis.len();
        for (i, b) in basis.iter().enumerate() {
            let lcm = b.lm.lcm(&e.lm);
            pairs.push(Pair {
                sugar: pair_sugar(b, &e, &lcm),
                lcm,
                i,
                j: idx,
            });
        }
        basis.push(e);
    };

    for (idx, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let cof = if track {
            (0..k)
                .map(|j| if j == idx { Polynomial::one(ring) } else { Polynomial::zero(ring) })
                .collect()
        } else {
            Vec::new()
        };
        let lm = g.leading_monomial(order).expect("nonzero").clone();
        let sugar = g.total_degree().unwrap_or(0);
        push(&mut basis, &mut pairs, Entry { poly: g.clone(), lm, sugar, cof });
    }

    while !pairs.is_empty() {
        // sugar first, then the smaller lcm, then index order
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.sugar
                    .cmp(&pb.sugar)
                    .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        done.insert((pair.i, pair.j));
        let (a, b) = (&basis[pair.i], &basis[pair.j]);
        if a.lm.is_coprime(&b.lm) {
            continue;
        }
        // chain criterion
        let chain = (0..basis.len()).any(|t| {
            t != pair.i
                && t != pair.j
                && basis[t].lm.divides(&pair.lcm)
                && done.contains(&(pair.i.min(t), pair.i.max(t)))
                && done.contains(&(pair.j.min(t), pair.j.max(t)))
        });
        if chain {
            continue;
        }
        let (s, cof) = s_polynomial(a, b);
        let (h, hcof) = reduce(s, cof, &basis, None, order);
        if !h.is_zero() {
            let lm = h.leading_monomial(order).expect("nonzero").clone();
            push(&mut basis, &mut pairs, Entry { poly: h, lm, sugar: pair.sugar, cof: hcof });
        }
    }

    // minimal basis: drop entries whose leading monomial is divisible by another's
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j && keep[j] && basis[j].lm.divides(&basis[i].lm) && (basis[j].lm != basis[i].lm || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<Entry> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();

    // inter-reduce tails
    for i in 0..minimal.len() {
        let e = &minimal[i];
        let lc = e.poly.coefficient(&e.lm);
        let lead = Polynomial::term(ring, e.lm.clone(), lc);
        let tail = &e.poly - &lead;
        let zero_cof = vec![Polynomial::zero(ring); e.cof.len()];
        let (rem, red_cof) = reduce(tail, zero_cof, &minimal, Some(i), order);
        // red_cof expresses (tail - rem) negated; rebuild the cofactors of lead + rem
        let new_cof: Vec<Polynomial> = e.cof.iter().zip(&red_cof).map(|(c, r)| c + r).collect();
        let new_poly = &lead + &rem;
        let ent = &mut minimal[i];
        ent.poly = new_poly;
        ent.cof = new_cof;
        make_monic(ent, order);
    }
    minimal.sort_by(|a, b| order.cmp(&b.lm, &a.lm));

    let cofactors = minimal.iter().map(|e| e.cof.clone()).collect();
    let gb = GroebnerBasis {
        ring,
        generators: minimal.into_iter().map(|e| e.poly).collect(),
        order: order.clone(),
        reduced: true,
    };
    Ok((gb, cofactors))
}

/// Reduced Groebner basis of the ideal generated by `gens`. Zero generators
/// are ignored, so the zero ideal yields an empty basis.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    groebner_core(gens, order, false).map(|(gb, _)| gb)
}

/// Multivariate division: `p = sum quotients[i] * G[i] + remainder` with no
/// remainder term divisible by a leading monomial of `G`.
pub fn normal_form(p: &Polynomial, g: &GroebnerBasis) -> Result<(Polynomial, Vec<Polynomial>)> {
    if p.ring() != g.ring {
        return Err(Error::RingMismatch);
    }
    let ring = g.ring;
    let order = &g.order;
    let leads: Vec<(Monomial, GaussianRational)> = g
        .generators
        .iter()
        .map(|q| {
            let (m, c) = q.leading_term(order).expect("basis elements are nonzero");
            (m.clone(), c.clone())
        })
        .collect();
    let mut quotients = vec![Polynomial::zero(ring); g.generators.len()];
    let mut rem = Polynomial::zero(ring);
    let mut work = p.clone();
    while let Some((m, c)) = work.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = leads
            .iter()
            .enumerate()
            .find_map(|(k, (lm, lc))| lm.quotient_of(&m).map(|q| (k, q, &c / lc)));
        match hit {
            Some((k, q, coef)) => {
                work = &work - &g.generators[k].mul_term(&q, &coef);
                quotients[k].add_term(q, &coef);
            }
            None => {
                rem.add_term(m.clone(), &c);
                work.add_term(m, &-c);
            }
        }
    }
    Ok((rem, quotients))
}

/// Monomials not divisible by any leading monomial of a reduced basis,
/// sorted ascending in the basis order.
pub fn standard_monomials(g: &GroebnerBasis) -> StandardMonomials {
    let nvars = g.ring.nvars();
    if g.is_unit_ideal() {
        return StandardMonomials::Finite(Vec::new());
    }
    let leads = g.leading_monomials();
    let mut bounds = vec![u32::MAX; nvars];
    for lm in &leads {
        if let Some((i, e)) = lm.pure_power() {
            bounds[i] = bounds[i].min(e);
        }
    }
    if bounds.contains(&u32::MAX) {
        return StandardMonomials::Infinite;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    loop {
        let m = Monomial(cur.clone());
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        // odometer over the exponent box
        let mut k = 0;
        loop {
            if k == nvars {
                out.sort_by(|a, b| g.order.cmp(a, b));
                return StandardMonomials::Finite(out);
            }
            cur[k] += 1;
            if cur[k] < bounds[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

/// An ideal with a reduced basis whose elements are expressed in the
/// original generators.
#[derive(Clone, Debug)]
pub struct Ideal {
    gens: Vec<Polynomial>,
    basis: GroebnerBasis,
    cofactors: Vec<Vec<Polynomial>>,
}

impl Ideal {
    pub fn new(gens: &[Polynomial], order: &MonomialOrder) -> Result<Self> {
        let (basis, cofactors) = groebner_core(gens, order, true)?;
        Ok(Ideal {
            gens: gens.to_vec(),
            basis,
            cofactors,
        })
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        normal_form(p, &self.basis).map(|(r, _)| r)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    /// Cofactors `a` with `target = sum a[j] * gens[j]`, checked by re-expansion.
    pub fn lift(&self, target: &Polynomial) -> Result<Vec<Polynomial>> {
        let (rem, quotients) = normal_form(target, &self.basis)?;
        if !rem.is_zero() {
            return Err(Error::NotInIdeal);
        }
        let ring = target.ring();
        let mut out = vec![Polynomial::zero(ring); self.gens.len()];
        for (q, cof) in quotients.iter().zip(&self.cofactors) {
            if q.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(cof) {
                *o = &*o + &(q * c);
            }
        }
        let mut check = Polynomial::zero(ring);
        for (a, g) in out.iter().zip(&self.gens) {
            check = &check + &(a * g);
        }
        if &check != target {
            return Err(Error::ConventionMismatch("cofactor re-expansion failed".into()));
        }
        Ok(out)
    }
}

/// Expresses `target` in the generators, or reports [`Error::NotInIdeal`].
pub fn lift_in_ideal(target: &Polynomial, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    if gens.iter().any(|g| g.ring() != target.ring()) {
        return Err(Error::RingMismatch);
    }
    if gens.is_empty() {
        return Err(Error::InvalidArgument("no generators given".into()));
    }
    Ideal::new(gens, &MonomialOrder::GrevLex)?.lift(target)
}

/// Leading monomials ordered for comparison, used by tests and callers that
/// want a basis-independent fingerprint.
pub fn sorted_leading_monomials(g: &GroebnerBasis) -> Vec<Monomial> {
    let mut v = g.leading_monomials();
    v.sort_by(|a, b| g.order.cmp(a, b));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> Ring {
        Ring::holomorphic(2)
    }
    fn z(i: usize) -> Polynomial {
        Polynomial::var(ring2(), i)
    }
    fn c(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    #[test]
    fn ideal_member_reduces_to_zero() {
        let g = buchberger(&[z(0)], &MonomialOrder::Lex).unwrap();
        let (r, q) = normal_form(&(&z(0) * &z(0)), &g).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, vec![z(0)]);
    }

    #[test]
    fn reduced_polynomial_is_its_own_normal_form() {
        let g = buchberger(&[&z(0) * &z(0)], &MonomialOrder::GrevLex).unwrap();
        let p = &z(0) + &Polynomial::one(ring2());
        let (r, q) = normal_form(&p, &g).unwrap();
        assert_eq!(r, p);
        assert!(q[0].is_zero());
    }

    #[test]
    fn cube_plus_linear_modulo_squares() {
        let f1 = (&z(0) * &z(0)).scale(&c(3));
        let f2 = (&z(1) * &z(1)).scale(&c(3));
        let g = buchberger(&[f1.clone(), f2.clone()], &MonomialOrder::GrevLex).unwrap();
        assert_eq!(g.generators(), &[&z(0) * &z(0), &z(1) * &z(1)]);
        let p = &z(0).pow(3) + &z(1);
        let (r, q) = normal_form(&p, &g).unwrap();
        assert_eq!(r, z(1));
        let mut back = r.clone();
        for (qi, gi) in q.iter().zip(g.generators()) {
            back = &back + &(qi * gi);
        }
        assert_eq!(back, p);
        // z1^3 = (z1/3) * 3 z1^2
        let lift = lift_in_ideal(&z(0).pow(3), &[f1, f2]).unwrap();
        assert_eq!(lift[0], z(0).scale(&GaussianRational::from_ratio(1, 3)));
        assert!(lift[1].is_zero());
    }

    #[test]
    fn basis_of_coordinate_ideal() {
        let g = buchberger(&[z(0), z(1)], &MonomialOrder::GrevLex).unwrap();
        assert_eq!(g.generators(), &[z(0), z(1)]);
    }

    #[test]
    fn graded_lex_basis_with_s_pair() {
        let f1 = &(&z(0) * &z(0)) - &z(1);
        let f2 = &z(1) * &z(1);
        let g = buchberger(&[f1, f2], &MonomialOrder::GrLex).unwrap();
        let leads = sorted_leading_monomials(&g);
        // <z1^2 - z2, z2^2>: S-pair closure adds nothing with leading term outside {z1^2, z2^2}
        assert_eq!(leads, vec![Monomial(vec![0, 2]), Monomial(vec![2, 0])]);
    }

    #[test]
    fn not_in_ideal() {
        assert_eq!(lift_in_ideal(&Polynomial::one(ring2()), &[z(0), z(1)]), Err(Error::NotInIdeal));
        let lift = lift_in_ideal(&(&z(0) * &z(1)), &[z(0)]).unwrap();
        assert_eq!(lift, vec![z(1)]);
    }

    #[test]
    fn standard_monomial_examples() {
        let g = buchberger(&[&z(0) * &z(0), &z(1) * &z(1)], &MonomialOrder::GrevLex).unwrap();
        let sm = standard_monomials(&g).finite().unwrap();
        assert_eq!(
            sm,
            vec![Monomial(vec![0, 0]), Monomial(vec![0, 1]), Monomial(vec![1, 0]), Monomial(vec![1, 1])]
        );
        let g = buchberger(&[z(0)], &MonomialOrder::GrevLex).unwrap();
        assert_eq!(standard_monomials(&g), StandardMonomials::Infinite);
        let r1 = Ring::holomorphic(1);
        let g = buchberger(&[Polynomial::var(r1, 0).pow(5)], &MonomialOrder::GrevLex).unwrap();
        let sm = standard_monomials(&g).finite().unwrap();
        assert_eq!(sm.len(), 5);
        assert_eq!(sm[4], Monomial(vec![4]));
    }

    #[test]
    fn zero_ideal_and_unit_ideal() {
        let g = buchberger(&[Polynomial::zero(ring2())], &MonomialOrder::GrevLex).unwrap();
        assert!(g.generators().is_empty());
        assert_eq!(standard_monomials(&g), StandardMonomials::Infinite);
        let g = buchberger(&[&z(0) + &Polynomial::one(ring2()), z(0)], &MonomialOrder::GrevLex).unwrap();
        assert_eq!(g.generators(), &[Polynomial::one(ring2())]);
        assert_eq!(standard_monomials(&g), StandardMonomials::Finite(Vec::new()));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let g = buchberger(&[z(0)], &MonomialOrder::GrevLex).unwrap();
        let p = Polynomial::var(Ring::holomorphic(3), 0);
        assert_eq!(normal_form(&p, &g), Err(Error::RingMismatch));
    }
}
