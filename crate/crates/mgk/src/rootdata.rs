//! Root data and Weyl groups as finite integer matrix groups.
//!
//! The lattice is always `ℤⁿ` with the standard dot pairing against the dual
//! `ℚⁿ`. Group elements act on the lattice by their stored matrices; on the
//! dual space they act by the inverse transpose, so the pairing
//! `⟨w·λ, w⋆μ⟩ = ⟨λ, μ⟩` is preserved for every preset, including the
//! Cartan-matrix realizations that are not orthogonal for the dot product.
//! For permutation and signed-permutation presets the two actions coincide.
//!
//! Also here: the stabilizer of a rational point of the dual torus, the
//! σ-positivity test, Weyl-stability and saturation of cocharacter families,
//! and the extension `0 → S_λ̲ → W′ → W → 0` that organizes the lifts of a
//! Weyl element to permutations of a stable family.

use crate::matrix::{smith_normal_form, RatMatrix};
use crate::rat::Rat;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Deserialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RootDatumError {
    #[error("invalid root datum: {0}")]
    Invalid(String),
    #[error("group too large: closure exceeded cap of {0} elements")]
    GroupTooLarge(usize),
}

/// Integer matrix, row-major.
pub type IMat = Vec<Vec<i64>>;

pub fn imat_identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn imat_apply(a: &IMat, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Declarative description of a root datum, as parsed from run configs.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RootDatumSpec {
    pub preset: String,
    #[serde(default)]
    pub rank: Option<usize>,
    #[serde(default)]
    pub generators: Option<Vec<IMat>>,
    #[serde(default)]
    pub factors: Option<Vec<RootDatumSpec>>,
}

impl RootDatumSpec {
    pub fn preset(name: &str, rank: usize) -> Self {
        RootDatumSpec {
            preset: name.to_string(),
            rank: Some(rank),
            generators: None,
            factors: None,
        }
    }

    pub fn gl(rank: usize) -> Self {
        Self::preset("GL", rank)
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub rank: usize,
    pub weyl_generators: Vec<IMat>,
    /// Roots when the preset provides them (full orbit of the simple roots).
    pub roots: Option<Vec<Vec<i64>>>,
    /// Characters offered as σ; the first is the default.
    pub characters: Vec<Vec<i64>>,
    pub label: String,
}

fn cartan_reflections(cartan: &[Vec<i64>]) -> Vec<IMat> {
    // s_i acts on the root-lattice basis by s_i(a_j) = a_j - C[i][j] a_i,
    // so column j of the matrix is e_j - C[i][j] e_i.
    let k = cartan.len();
    (0..k)
        .map(|i| {
            let mut m = imat_identity(k);
            for j in 0..k {
                m[i][j] -= cartan[i][j];
            }
            m
        })
        .collect()
}

fn cartan_matrix(kind: char, k: usize) -> Result<Vec<Vec<i64>>, RootDatumError> {
    let mut c = vec![vec![0i64; k]; k];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match (kind, k) {
        ('A', _) if k >= 1 => {
            for i in 1..k {
                chain(&mut c, i - 1, i);
            }
        }
        ('B', _) if k >= 2 => {
            for i in 1..k {
                chain(&mut c, i - 1, i);
            }
            c[k - 1][k - 2] = -2; // short simple root at the end
        }
        ('C', _) if k >= 2 => {
            for i in 1..k {
                chain(&mut c, i - 1, i);
            }
            c[k - 2][k - 1] = -2; // long simple root at the end
        }
        ('D', _) if k >= 3 => {
            for i in 1..k - 1 {
                chain(&mut c, i - 1, i);
            }
            chain(&mut c, k - 3, k - 1);
        }
        ('G', 2) => {
            c[0][1] = -1;
            c[1][0] = -3;
        }
        _ => {
            return Err(RootDatumError::Invalid(format!(
                "unsupported type {kind}{k}"
            )))
        }
    }
    Ok(c)
}

/// Closure of a vector set under the generator action (no group enumeration
/// needed; the orbit of the simple roots is the full root system).
fn vector_orbit(
    gens: &[IMat],
    seeds: &[Vec<i64>],
    cap: usize,
) -> Result<Vec<Vec<i64>>, RootDatumError> {
    let mut orbit: Vec<Vec<i64>> = seeds.to_vec();
    let mut frontier = 0usize;
    while frontier < orbit.len() {
        let v = orbit[frontier].clone();
        for g in gens {
            let w = imat_apply(g, &v);
            if !orbit.contains(&w) {
                if orbit.len() >= cap {
                    return Err(RootDatumError::GroupTooLarge(cap));
                }
                orbit.push(w);
            }
        }
        frontier += 1;
    }
    Ok(orbit)
}

/// Builds a root datum from a preset descriptor or explicit generators.
pub fn build_root_datum(spec: &RootDatumSpec) -> Result<RootDatum, RootDatumError> {
    let rd = match spec.preset.as_str() {
        "GL" => {
            let n = spec
                .rank
                .ok_or_else(|| RootDatumError::Invalid("GL preset needs a rank".into()))?;
            if n == 0 {
                return Err(RootDatumError::Invalid("rank must be positive".into()));
            }
            let mut gens = Vec::new();
            for i in 0..n.saturating_sub(1) {
                let mut m = imat_identity(n);
                m[i][i] = 0;
                m[i + 1][i + 1] = 0;
                m[i][i + 1] = 1;
                m[i + 1][i] = 1;
                gens.push(m);
            }
            let mut roots = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let mut r = vec![0i64; n];
                        r[i] = 1;
                        r[j] = -1;
                        roots.push(r);
                    }
                }
            }
            RootDatum {
                rank: n,
                weyl_generators: gens,
                roots: (n > 1).then_some(roots),
                characters: vec![vec![1; n]],
                label: format!("GL({n})"),
            }
        }
        "A" | "B" | "C" | "D" | "G2" => {
            let kind = spec.preset.chars().next().unwrap();
            let k = if spec.preset == "G2" {
                2
            } else {
                spec.rank
                    .ok_or_else(|| RootDatumError::Invalid("type preset needs a rank".into()))?
            };
            let cartan = cartan_matrix(kind, k)?;
            let gens = cartan_reflections(&cartan);
            // the simple roots are the basis vectors in this realization;
            // store their full orbit so the root set is group-stable
            let simple: Vec<Vec<i64>> = (0..k)
                .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
                .collect();
            let roots = vector_orbit(&gens, &simple, 10_000)?;
            RootDatum {
                rank: k,
                weyl_generators: gens,
                roots: Some(roots),
                characters: vec![vec![1; k]],
                label: format!("{kind}{k}"),
            }
        }
        "product" => {
            let factors = spec
                .factors
                .as_ref()
                .ok_or_else(|| RootDatumError::Invalid("product preset needs factors".into()))?;
            if factors.is_empty() {
                return Err(RootDatumError::Invalid("empty product".into()));
            }
            let built: Vec<RootDatum> = factors
                .iter()
                .map(build_root_datum)
                .collect::<Result<_, _>>()?;
            let rank: usize = built.iter().map(|b| b.rank).sum();
            let mut gens = Vec::new();
            let mut offset = 0;
            let mut roots = Vec::new();
            let mut have_roots = true;
            for b in &built {
                for g in &b.weyl_generators {
                    let mut m = imat_identity(rank);
                    for i in 0..b.rank {
                        for j in 0..b.rank {
                            m[offset + i][offset + j] = g[i][j];
                        }
                    }
                    gens.push(m);
                }
                match &b.roots {
                    Some(rs) => {
                        for r in rs {
                            let mut v = vec![0i64; rank];
                            v[offset..offset + b.rank].copy_from_slice(r);
                            roots.push(v);
                        }
                    }
                    None => have_roots = false,
                }
                offset += b.rank;
            }
            RootDatum {
                rank,
                weyl_generators: gens,
                roots: have_roots.then_some(roots),
                characters: vec![vec![1; rank]],
                label: format!("product[{}]", built.iter().map(|b| &b.label).join(", ")),
            }
        }
        "explicit" => {
            let gens = spec
                .generators
                .clone()
                .ok_or_else(|| RootDatumError::Invalid("explicit preset needs generators".into()))?;
            let n = gens
                .first()
                .map(|g| g.len())
                .or(spec.rank)
                .ok_or_else(|| RootDatumError::Invalid("cannot infer rank".into()))?;
            RootDatum {
                rank: n,
                weyl_generators: gens,
                roots: None,
                characters: vec![vec![1; n]],
                label: "explicit".to_string(),
            }
        }
        other => {
            return Err(RootDatumError::Invalid(format!("unknown preset {other:?}")));
        }
    };
    rd.validate()?;
    Ok(rd)
}

impl RootDatum {
    fn validate(&self) -> Result<(), RootDatumError> {
        let id = imat_identity(self.rank);
        for g in &self.weyl_generators {
            if g.len() != self.rank || g.iter().any(|row| row.len() != self.rank) {
                return Err(RootDatumError::Invalid(
                    "invalid root datum: generator has wrong shape".into(),
                ));
            }
            if imat_mul(g, g) != id {
                return Err(RootDatumError::Invalid(
                    "invalid root datum: generator is not an involution".into(),
                ));
            }
            let d = imat_det(g);
            if d != 1 && d != -1 {
                return Err(RootDatumError::Invalid(
                    "invalid root datum: generator determinant is not ±1".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn sigma_default(&self) -> Vec<i64> {
        self.characters[0].clone()
    }
}

fn imat_det(m: &IMat) -> i64 {
    let rm = RatMatrix::from_i64_rows(m);
    let d = rm.det();
    assert!(d.denom().is_one());
    i64::try_from(d.numer().clone()).expect("determinant out of i64 range")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: IMat,
    /// Witness word in the generators (shortest found by the closure BFS).
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn det(&self) -> i64 {
        imat_det(&self.matrix)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == imat_identity(self.matrix.len())
    }

    /// Action on the lattice `ℤⁿ`.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        imat_apply(&self.matrix, v)
    }

    /// Integer inverse matrix (determinant is ±1).
    pub fn inverse_matrix(&self) -> IMat {
        let inv = RatMatrix::from_i64_rows(&self.matrix)
            .inverse()
            .expect("group element is invertible");
        (0..self.matrix.len())
            .map(|i| {
                (0..self.matrix.len())
                    .map(|j| {
                        let v = inv.get(i, j);
                        assert!(v.denom().is_one());
                        i64::try_from(v.numer().clone()).expect("inverse entry out of range")
                    })
                    .collect()
            })
            .collect()
    }

    /// Contragredient action on the dual space: `w ⋆ μ = (w⁻¹)ᵀ μ`.
    pub fn dual_apply(&self, mu: &[Rat]) -> Vec<Rat> {
        let inv = self.inverse_matrix();
        let n = inv.len();
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| Rat::from_integer(BigInt::from(inv[i][j])) * &mu[i])
                    .fold(Rat::zero(), |a, b| a + b)
            })
            .collect()
    }
}

/// A point `ξ = μ₀ + ℤⁿ` of the dual torus, kept as a rational representative.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint {
    pub coset_rep: Vec<Rat>,
}

impl TorusPoint {
    pub fn new(coset_rep: Vec<Rat>) -> Self {
        TorusPoint { coset_rep }
    }

    pub fn from_strs(parts: &[&str]) -> Result<Self, crate::rat::ParseRatError> {
        Ok(TorusPoint {
            coset_rep: parts
                .iter()
                .map(|s| crate::rat::parse_rat(s))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn rank(&self) -> usize {
        self.coset_rep.len()
    }

    /// Equality as points of the dual torus: integral difference.
    pub fn same_coset(&self, other: &TorusPoint) -> bool {
        self.rank() == other.rank() && is_integral_diff(&self.coset_rep, &other.coset_rep)
    }
}

pub fn is_integral_diff(a: &[Rat], b: &[Rat]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).denom().is_one())
}

/// Default cap on group closure enumeration.
pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// A fully enumerated finite matrix group with product/inverse lookup.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub rank: usize,
    pub elements: Vec<WeylElement>,
    index: HashMap<IMat, usize>,
}

impl WeylGroup {
    /// Closure enumeration from the datum's generators: complete,
    /// duplicate-free, deterministic BFS order, identity first.
    pub fn enumerate(rd: &RootDatum, cap: usize) -> Result<Self, RootDatumError> {
        Self::close_over(rd.rank, &rd.weyl_generators, cap)
    }

    pub fn close_over(rank: usize, gens: &[IMat], cap: usize) -> Result<Self, RootDatumError> {
        let mut elements = vec![WeylElement {
            matrix: imat_identity(rank),
            word: Vec::new(),
        }];
        let mut index = HashMap::new();
        index.insert(elements[0].matrix.clone(), 0);
        let mut frontier = 0usize;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            for (gi, g) in gens.iter().enumerate() {
                let m = imat_mul(g, &current.matrix);
                if !index.contains_key(&m) {
                    if elements.len() >= cap {
                        return Err(RootDatumError::GroupTooLarge(cap));
                    }
                    let mut word = vec![gi];
                    word.extend(&current.word);
                    index.insert(m.clone(), elements.len());
                    elements.push(WeylElement { matrix: m, word });
                }
            }
            frontier += 1;
        }
        Ok(WeylGroup {
            rank,
            elements,
            index,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn index_of(&self, m: &IMat) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &IMat) -> bool {
        self.index.contains_key(m)
    }

    pub fn product_index(&self, i: usize, j: usize) -> usize {
        let m = imat_mul(&self.elements[i].matrix, &self.elements[j].matrix);
        *self
            .index
            .get(&m)
            .expect("group is closed under products")
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        let m = self.elements[i].inverse_matrix();
        *self.index.get(&m).expect("group contains inverses")
    }

    /// Subgroup fixing the coset `ξ` in the dual torus.
    pub fn stabilizer(&self, xi: &TorusPoint) -> WeylGroup {
        assert_eq!(self.rank, xi.rank());
        let elements: Vec<WeylElement> = self
            .elements
            .iter()
            .filter(|w| is_integral_diff(&w.dual_apply(&xi.coset_rep), &xi.coset_rep))
            .cloned()
            .collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.matrix.clone(), i))
            .collect();
        WeylGroup {
            rank: self.rank,
            elements,
            index,
        }
    }

    /// Group generated by the given member elements (indices into `self`).
    pub fn subgroup_generated(&self, gens: &[usize]) -> WeylGroup {
        let mats: Vec<IMat> = gens.iter().map(|&i| self.elements[i].matrix.clone()).collect();
        Self::close_over(self.rank, &mats, self.order() + 1)
            .expect("subgroup of an enumerated group fits its cap")
    }

    pub fn preserves_vector_set(&self, vecs: &[Vec<i64>]) -> bool {
        let mut sorted: Vec<Vec<i64>> = vecs.to_vec();
        sorted.sort();
        self.elements.iter().all(|w| {
            let mut image: Vec<Vec<i64>> = vecs.iter().map(|v| w.apply(v)).collect();
            image.sort();
            image == sorted
        })
    }
}

/// True iff `⟨σ, λ⟩` is a positive integer.
pub fn sigma_positive(sigma: &[i64], lambda: &[i64]) -> bool {
    let pairing: i64 = sigma.iter().zip(lambda).map(|(a, b)| a * b).sum();
    pairing > 0
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub w_stable: bool,
    pub all_sigma_positive: bool,
    pub pr_onto: bool,
    /// `⟨σ, λ_i⟩` per family member.
    pub sigma_pairings: Vec<i64>,
    pub span_rank: usize,
    pub elementary_divisors: Vec<BigInt>,
}

/// Checks Weyl stability of the multiset, σ-positivity of each member, and
/// surjectivity of the product-of-cocharacters map onto the torus. The last
/// is a saturation check: the Smith normal form of the `n×r` matrix of the
/// family must have full rank with all elementary divisors 1.
pub fn check_lambda_family(
    rd: &RootDatum,
    lambdas: &[Vec<i64>],
    sigma: &[i64],
) -> FamilyReport {
    assert!(!lambdas.is_empty(), "empty cocharacter family");
    let mut sorted: Vec<Vec<i64>> = lambdas.to_vec();
    sorted.sort();
    let w_stable = rd.weyl_generators.iter().all(|g| {
        let mut image: Vec<Vec<i64>> = lambdas.iter().map(|l| imat_apply(g, l)).collect();
        image.sort();
        image == sorted
    });
    let sigma_pairings: Vec<i64> = lambdas
        .iter()
        .map(|l| sigma.iter().zip(l).map(|(a, b)| a * b).sum())
        .collect();
    let all_sigma_positive = sigma_pairings.iter().all(|&p| p > 0);
    // columns are the cocharacters
    let mat: Vec<Vec<BigInt>> = (0..rd.rank)
        .map(|i| lambdas.iter().map(|l| BigInt::from(l[i])).collect())
        .collect();
    let divisors = smith_normal_form(&mat);
    let span_rank = divisors.len();
    let pr_onto = span_rank == rd.rank && divisors.iter().all(|d| d.is_one());
    FamilyReport {
        w_stable,
        all_sigma_positive,
        pr_onto,
        sigma_pairings,
        span_rank,
        elementary_divisors: divisors,
    }
}

/// The extension `0 → S_λ̲ → W′ → W → 0` attached to a Weyl-stable family:
/// block decomposition of the index set by equal cocharacters, lifts of Weyl
/// elements to permutations of the family, and the induced map to the
/// symmetric group on blocks.
#[derive(Clone, Debug)]
pub struct WPrime {
    /// The distinct cocharacters, in first-occurrence order.
    pub distinct: Vec<Vec<i64>>,
    pub multiplicities: Vec<usize>,
    /// Index blocks `A_l ⊆ {0, .., r-1}` with `λ_i = distinct[l]` on block l.
    pub blocks: Vec<Vec<usize>>,
    lambdas: Vec<Vec<i64>>,
}

#[derive(Debug, Error)]
pub enum WPrimeError {
    #[error("family not W-stable")]
    NotStable,
}

/// Cap on the number of lifts enumerated per Weyl element.
pub const LIFT_CAP: usize = 720;

impl WPrime {
    pub fn new(lambdas: &[Vec<i64>]) -> Self {
        let mut distinct: Vec<Vec<i64>> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, l) in lambdas.iter().enumerate() {
            match distinct.iter().position(|d| d == l) {
                Some(b) => blocks[b].push(i),
                None => {
                    distinct.push(l.clone());
                    blocks.push(vec![i]);
                }
            }
        }
        let multiplicities = blocks.iter().map(Vec::len).collect();
        WPrime {
            distinct,
            multiplicities,
            blocks,
            lambdas: lambdas.to_vec(),
        }
    }

    pub fn family_size(&self) -> usize {
        self.lambdas.len()
    }

    /// `|S_λ̲| = ∏ m_l!`.
    pub fn s_lambda_order(&self) -> u128 {
        self.multiplicities
            .iter()
            .map(|&m| (1..=m as u128).product::<u128>())
            .product()
    }

    /// `|W′| = |W| · ∏ m_l!`.
    pub fn wprime_order(&self, weyl_order: usize) -> u128 {
        weyl_order as u128 * self.s_lambda_order()
    }

    /// The block permutation induced by `w` (`w` maps `distinct[l]` to
    /// `distinct[τ(l)]`), or `None` when the family is not stable under `w`.
    pub fn block_permutation(&self, w: &WeylElement) -> Option<Vec<usize>> {
        self.distinct
            .iter()
            .map(|d| {
                let image = w.apply(d);
                self.distinct.iter().position(|e| *e == image)
            })
            .collect()
    }

    /// The canonical lift: maps block `A_l` onto block `A_{τ(l)}` preserving
    /// the stored order. Satisfies `λ_{η(i)} = w(λ_i)` for all `i`.
    pub fn canonical_lift(&self, w: &WeylElement) -> Result<Vec<usize>, WPrimeError> {
        let tau = self.block_permutation(w).ok_or(WPrimeError::NotStable)?;
        // multiplicities must match for an order-preserving bijection
        for (l, &t) in tau.iter().enumerate() {
            if self.multiplicities[l] != self.multiplicities[t] {
                return Err(WPrimeError::NotStable);
            }
        }
        let mut eta = vec![0usize; self.family_size()];
        for (l, block) in self.blocks.iter().enumerate() {
            let target = &self.blocks[tau[l]];
            for (pos, &i) in block.iter().enumerate() {
                eta[i] = target[pos];
            }
        }
        Ok(eta)
    }

    /// All lifts of `w`: the canonical lift composed with the block-preserving
    /// permutations `S_λ̲`, enumerated up to `cap`.
    pub fn all_lifts(&self, w: &WeylElement, cap: usize) -> Result<Vec<Vec<usize>>, WPrimeError> {
        let eta = self.canonical_lift(w)?;
        let mut lifts = Vec::new();
        // S_λ̲ as the product of per-block symmetric groups
        let per_block: Vec<Vec<Vec<usize>>> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .copied()
                    .permutations(b.len())
                    .collect::<Vec<Vec<usize>>>()
            })
            .collect();
        'outer: for combo in per_block.iter().multi_cartesian_product() {
            // tau: block-preserving permutation of {0..r-1}
            let mut tau = vec![0usize; self.family_size()];
            for (b, arrangement) in self.blocks.iter().zip(&combo) {
                for (pos, &i) in b.iter().enumerate() {
                    tau[i] = arrangement[pos];
                }
            }
            // lift = eta ∘ tau
            let lift: Vec<usize> = (0..self.family_size()).map(|i| eta[tau[i]]).collect();
            lifts.push(lift);
            if lifts.len() >= cap {
                break 'outer;
            }
        }
        Ok(lifts)
    }

    /// Verifies `λ_{η(i)} = w(λ_i)` for all `i`.
    pub fn is_lift(&self, w: &WeylElement, eta: &[usize]) -> bool {
        (0..self.family_size()).all(|i| self.lambdas[eta[i]] == w.apply(&self.lambdas[i]))
    }

    /// Whether the induced map `W → S_k` surjects onto
    /// `S_{k,λ̲} = { τ : m_{τ(l)} = m_l }`.
    pub fn image_check(&self, weyl: &WeylGroup) -> Option<bool> {
        let k = self.distinct.len();
        if k > 8 {
            return None; // k! too large to enumerate the target
        }
        let mut image: Vec<Vec<usize>> = Vec::new();
        for w in &weyl.elements {
            let tau = self.block_permutation(w)?;
            if !image.contains(&tau) {
                image.push(tau);
            }
        }
        let mut target: Vec<Vec<usize>> = (0..k)
            .permutations(k)
            .filter(|tau| {
                (0..k).all(|l| self.multiplicities[tau[l]] == self.multiplicities[l])
            })
            .collect();
        image.sort();
        target.sort();
        Some(image == target)
    }
}

/// Permutation sign.
pub fn perm_sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i64;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}
