//! The finite-dimensional algebras carried by the fibers of the equivariant
//! local systems: the coinvariant algebra `S_ξ = S/S·S₊^{W_ξ}` of a point
//! stabilizer, and the truncation `S_n = S/S₊ⁿ`.
//!
//! Hilbert-ideal generators are found by Reynolds averaging of monomials with
//! an escalating degree bound (starting at `max(2, rank)`, capped by the
//! Noether bound `|group|`). The quotient basis is the standard-monomial
//! basis of a grevlex Gröbner presentation; multiplication and group action
//! are stored as exact matrices in that basis. All downstream checks are
//! basis-independent (dimensions, commutation, conjugation identities), so
//! the dependence on grevlex is harmless.

use crate::groebner::{buchberger, standard_monomials, GroebnerBasis, StandardMonomials};
use crate::matrix::RatMatrix;
use crate::poly::{Monomial, Polynomial};
use crate::rat::{rat_int, Rat};
use crate::rootdata::{WeylElement, WeylGroup};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoinvariantError {
    #[error("coinvariant construction failed: quotient still infinite at the Noether bound {0}")]
    InfiniteAtNoetherBound(usize),
    #[error(transparent)]
    Groebner(#[from] crate::groebner::GroebnerError),
}

/// True iff the group equals the subgroup generated by its elements with
/// `rank(w − id) = 1`, i.e. by its reflections.
pub fn reflection_generated(group: &WeylGroup) -> bool {
    let reflections: Vec<usize> = (0..group.order())
        .filter(|&i| {
            let w = &group.elements[i];
            let mut m = RatMatrix::from_i64_rows(&w.matrix);
            for d in 0..group.rank {
                let v = m.get(d, d) - Rat::one();
                m.set(d, d, v);
            }
            m.rank() == 1
        })
        .collect();
    group.subgroup_generated(&reflections).order() == group.order()
}

/// The linear form `w · v_i` as a polynomial (column `i` of the matrix).
fn act_on_variable(w: &WeylElement, nvars: usize, i: usize) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for j in 0..nvars {
        let c = w.matrix[j][i];
        if c != 0 {
            p.add_term(Monomial::var(nvars, j), rat_int(c));
        }
    }
    p
}

/// `w · f` by linear substitution of the variables.
pub fn act_on_polynomial(w: &WeylElement, f: &Polynomial) -> Polynomial {
    let n = f.nvars();
    let forms: Vec<Polynomial> = (0..n).map(|i| act_on_variable(w, n, i)).collect();
    f.substitute_linear(&forms)
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == nvars - 1 {
            cur.push(left);
            out.push(Monomial(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(nvars, pos + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    rec(nvars, 0, d, &mut Vec::new(), &mut out);
    out
}

/// A ℚ-spanning set of the positive-degree invariants up to `degree_bound`,
/// by Reynolds averaging of monomials followed by linear reduction degree by
/// degree. Generates the Hilbert ideal whenever the bound reaches the Noether
/// bound `|group|`.
pub fn invariant_generators(group: &WeylGroup, degree_bound: u32) -> Vec<Polynomial> {
    let n = group.rank;
    let order = rat_int(group.order() as i64);
    let mut out: Vec<Polynomial> = Vec::new();
    for d in 1..=degree_bound {
        let monos = monomials_of_degree(n, d);
        let mut averaged: Vec<Polynomial> = Vec::new();
        for m in &monos {
            let base = Polynomial::monomial(n, m.clone(), Rat::one());
            let mut sum = Polynomial::zero(n);
            for w in &group.elements {
                sum = sum.add(&act_on_polynomial(w, &base));
            }
            let avg = sum.scale(&(Rat::one() / order.clone()));
            if !avg.is_zero() {
                averaged.push(avg);
            }
        }
        // linear reduction to an independent set within this degree
        let mut independent: Vec<Polynomial> = Vec::new();
        for p in averaged {
            let mut r = p;
            while let Some((lm, lc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
                match independent
                    .iter()
                    .find(|q| q.leading().unwrap().0 == &lm)
                {
                    Some(q) => {
                        let qc = q.leading().unwrap().1.clone();
                        r = r.sub(&q.scale(&(lc / qc)));
                    }
                    None => break,
                }
            }
            if !r.is_zero() {
                independent.push(r.monic());
            }
        }
        out.extend(independent);
    }
    out
}

/// A finite-dimensional quotient of `S = ℚ[v1..vn]` presented by standard
/// monomials, with nilpotent multiplication matrices and a group action.
#[derive(Clone, Debug)]
pub struct CoinvariantAlgebra {
    pub group: WeylGroup,
    pub invariant_generators: Vec<Polynomial>,
    pub gb: GroebnerBasis,
    pub basis: Vec<Monomial>,
    pub dim: usize,
    /// Action matrix per group element, aligned with `group.elements`.
    pub action: Vec<RatMatrix>,
    /// Multiplication-by-`v_i` matrix per variable.
    pub mult: Vec<RatMatrix>,
}

impl CoinvariantAlgebra {
    /// Coordinates of `normal_form(p)` in the standard-monomial basis.
    pub fn reduce_to_coords(&self, p: &Polynomial) -> Vec<Rat> {
        let nf = self.gb.normal_form(p);
        let mut coords = vec![Rat::zero(); self.dim];
        for (m, c) in nf.terms() {
            let idx = self
                .basis
                .binary_search(m)
                .expect("normal form is supported on standard monomials");
            coords[idx] = c.clone();
        }
        coords
    }

    pub fn action_of(&self, w: &WeylElement) -> &RatMatrix {
        let idx = self
            .group
            .index_of(&w.matrix)
            .expect("element belongs to the acting group");
        &self.action[idx]
    }

    /// Multiplication matrix of the linear form `Σ h_i v_i`.
    pub fn mult_of_form(&self, h: &[i64]) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.dim, self.dim);
        for (i, &hi) in h.iter().enumerate() {
            if hi != 0 {
                m = m.add(&self.mult[i].scale(&rat_int(hi)));
            }
        }
        m
    }

    /// Re-verifies the structural contracts: commuting nilpotent
    /// multiplications, the action being a homomorphism by invertible
    /// matrices, and the conjugation identity
    /// `action(w) · mult(v_i) · action(w)⁻¹ = mult(w·v_i)`
    /// over all group elements.
    pub fn verify_exhaustive(&self) -> Result<(), String> {
        let n = self.group.rank;
        for i in 0..n {
            if !self.mult[i].is_nilpotent() {
                return Err(format!("mult(v{}) is not nilpotent", i + 1));
            }
            for j in (i + 1)..n {
                if !self.mult[i].commutes_with(&self.mult[j]) {
                    return Err(format!("mult(v{}) and mult(v{}) do not commute", i + 1, j + 1));
                }
            }
        }
        let order = self.group.order();
        if !self.action[self.group.identity_index()].is_identity() {
            return Err("action of the identity is not the identity matrix".into());
        }
        for a in 0..order {
            let inv = match self.action[a].inverse() {
                Some(m) => m,
                None => return Err(format!("action matrix {a} is singular")),
            };
            for b in 0..order {
                let ab = self.group.product_index(a, b);
                if self.action[a].mul(&self.action[b]) != self.action[ab] {
                    return Err(format!("action is not a homomorphism at pair ({a}, {b})"));
                }
            }
            let w = &self.group.elements[a];
            for i in 0..n {
                let conj = self.action[a].mul(&self.mult[i]).mul(&inv);
                let col: Vec<i64> = (0..n).map(|j| w.matrix[j][i]).collect();
                if conj != self.mult_of_form(&col) {
                    return Err(format!(
                        "equivariance of multiplication fails at element {a}, variable v{}",
                        i + 1
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Builds `S/S·(positive-degree invariants)` for a finite matrix group,
/// escalating the Reynolds degree bound until the quotient is finite.
pub fn coinvariant_algebra(group: &WeylGroup) -> Result<CoinvariantAlgebra, CoinvariantError> {
    let n = group.rank;
    let noether = group.order().max(2) as u32;
    let mut bound = (n as u32).max(2).min(noether);
    loop {
        let gens = invariant_generators(group, bound);
        if !gens.is_empty() {
            let gb = buchberger(&gens)?;
            if let StandardMonomials::Finite(basis) = standard_monomials(&gb) {
                return finish_coinvariants(group, gens, gb, basis);
            }
        }
        if bound >= noether {
            return Err(CoinvariantError::InfiniteAtNoetherBound(noether as usize));
        }
        bound = (bound + 1).min(noether);
    }
}

fn finish_coinvariants(
    group: &WeylGroup,
    gens: Vec<Polynomial>,
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
) -> Result<CoinvariantAlgebra, CoinvariantError> {
    let n = group.rank;
    let mut alg = CoinvariantAlgebra {
        group: group.clone(),
        invariant_generators: gens,
        gb,
        basis,
        dim: 0,
        action: Vec::new(),
        mult: Vec::new(),
    };
    alg.dim = alg.basis.len();
    for i in 0..n {
        let mut m = RatMatrix::zeros(alg.dim, alg.dim);
        for (col, b) in alg.basis.iter().enumerate() {
            let p = Polynomial::monomial(n, b.mul(&Monomial::var(n, i)), Rat::one());
            for (row, c) in alg.reduce_to_coords(&p).into_iter().enumerate() {
                m.set(row, col, c);
            }
        }
        alg.mult.push(m);
    }
    for w in &group.elements {
        let mut m = RatMatrix::zeros(alg.dim, alg.dim);
        for (col, b) in alg.basis.iter().enumerate() {
            let moved = act_on_polynomial(w, &Polynomial::monomial(n, b.clone(), Rat::one()));
            for (row, c) in alg.reduce_to_coords(&moved).into_iter().enumerate() {
                m.set(row, col, c);
            }
        }
        alg.action.push(m);
    }
    debug_assert!(alg.verify_exhaustive().is_ok());
    Ok(alg)
}

/// The truncation `S_n = S/S₊ⁿ`: monomials of degree `< n` with nilpotent
/// multiplication.
#[derive(Clone, Debug)]
pub struct TruncationAlgebra {
    pub rank: usize,
    pub level: u32,
    pub basis: Vec<Monomial>,
    pub dim: usize,
    pub mult: Vec<RatMatrix>,
}

pub fn truncation_algebra(rank: usize, n: u32) -> TruncationAlgebra {
    assert!(n >= 1, "truncation level must be positive");
    let mut basis: Vec<Monomial> = (0..n).flat_map(|d| monomials_of_degree(rank, d)).collect();
    basis.sort();
    let dim = basis.len();
    let mut mult = Vec::new();
    for i in 0..rank {
        let mut m = RatMatrix::zeros(dim, dim);
        for (col, b) in basis.iter().enumerate() {
            let prod = b.mul(&Monomial::var(rank, i));
            if prod.degree() < n {
                let row = basis.binary_search(&prod).unwrap();
                m.set(row, col, Rat::one());
            }
        }
        mult.push(m);
    }
    TruncationAlgebra {
        rank,
        level: n,
        basis,
        dim,
        mult,
    }
}

impl TruncationAlgebra {
    /// `dim = C(n-1+rank, rank)` as an exact integer.
    pub fn expected_dim(rank: usize, n: u32) -> BigInt {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 1..=rank {
            num *= BigInt::from(n as usize - 1 + i);
            den *= BigInt::from(i);
        }
        num / den
    }

    /// The projection `S_n → S_m` for `m ≤ n` (kill monomials of degree ≥ m).
    pub fn projection_to(&self, lower: &TruncationAlgebra) -> RatMatrix {
        assert_eq!(self.rank, lower.rank);
        assert!(lower.level <= self.level);
        let mut p = RatMatrix::zeros(lower.dim, self.dim);
        for (col, b) in self.basis.iter().enumerate() {
            if let Ok(row) = lower.basis.binary_search(b) {
                p.set(row, col, Rat::one());
            }
        }
        p
    }
}
