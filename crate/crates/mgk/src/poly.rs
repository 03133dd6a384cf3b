//! Multivariate polynomials over `ℚ` in the coordinates `v1, ..., vn` of the
//! symmetric algebra, with the graded reverse lexicographic order fixed once
//! and for all. Terms live in a `BTreeMap` keyed by monomial, so the leading
//! term is always the last entry.

use crate::rat::{fmt_rat, Rat};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector. Comparisons implement grevlex: higher total degree wins;
/// on equal degrees the monomial whose exponent is *smaller* at the last
/// differing position is the larger one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `self / other`, or `None` when not divisible.
    pub fn div(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for j in (0..self.0.len()).rev() {
            match self.0[j].cmp(&other.0[j]) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "v{}", i + 1)?;
            } else {
                write!(f, "v{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Rat::one());
        p
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(m, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading term in grevlex.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            out.add_term(m1.mul(m), c1 * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Monic rescale (leading coefficient 1); zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Rat::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Substitutes each variable `vi` by `forms[i]` and expands.
    pub fn substitute_linear(&self, forms: &[Polynomial]) -> Self {
        assert_eq!(forms.len(), self.nvars);
        // memoize powers of each substituted form
        let mut powers: Vec<Vec<Polynomial>> =
            forms.iter().map(|f| vec![Polynomial::one(f.nvars())]).collect();
        let out_vars = forms.first().map_or(self.nvars, Polynomial::nvars);
        let mut out = Polynomial::zero(out_vars);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(out_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&forms[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize]);
            }
            out = out.add(&term);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let cs = fmt_rat(c);
            if first {
                first = false;
                fmt_term(f, m, &cs)?;
            } else if let Some(pos) = cs.strip_prefix('-') {
                write!(f, " - ")?;
                fmt_term(f, m, pos)?;
            } else {
                write!(f, " + ")?;
                fmt_term(f, m, &cs)?;
            }
        }
        Ok(())
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, m: &Monomial, cs: &str) -> fmt::Result {
    if m.is_one() {
        write!(f, "{cs}")
    } else if cs == "1" {
        write!(f, "{m}")
    } else {
        write!(f, "{cs}*{m}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    #[test]
    fn grevlex_basics() {
        // v1 > v2 in rank 2
        let v1 = Monomial::var(2, 0);
        let v2 = Monomial::var(2, 1);
        assert!(v1 > v2);
        // degree dominates
        assert!(v2.mul(&v2) > v1);
        // classic grevlex tie-break in 3 variables: v1*v3 < v2^2
        let a = Monomial(vec![1, 0, 1]);
        let b = Monomial(vec![0, 2, 0]);
        assert!(a < b);
    }

    #[test]
    fn arithmetic_and_leading() {
        let n = 2;
        let p = Polynomial::var(n, 0).add(&Polynomial::var(n, 1)); // v1 + v2
        let q = p.mul(&p); // v1^2 + 2 v1 v2 + v2^2
        assert_eq!(q.num_terms(), 3);
        let (lm, lc) = q.leading().unwrap();
        assert_eq!(lm, &Monomial(vec![2, 0]));
        assert_eq!(lc, &rat_int(1));
        assert!(q.sub(&q).is_zero());
        assert!(q.is_homogeneous());
    }

    #[test]
    fn substitution_swaps_variables() {
        let n = 2;
        // f = v1^2 - v2, swap v1 <-> v2
        let f = Polynomial::var(n, 0).pow(2).sub(&Polynomial::var(n, 1));
        let swapped = f.substitute_linear(&[Polynomial::var(n, 1), Polynomial::var(n, 0)]);
        let expect = Polynomial::var(n, 1).pow(2).sub(&Polynomial::var(n, 0));
        assert_eq!(swapped, expect);
    }

    #[test]
    fn display_is_readable() {
        let n = 2;
        let p = Polynomial::var(n, 0)
            .pow(2)
            .sub(&Polynomial::var(n, 1).scale(&rat_int(3)));
        assert_eq!(p.to_string(), "v1^2 - 3*v2");
    }
}
