//! Index of a Lie algebra: `i(g) = min_f dim ker B_f` with `B_f(X, Y) = f([X, Y])`.
//!
//! Ranks are exact. The minimum over all forms is estimated by sampling
//! random integer forms: regular forms make up a Zariski-open set, so a
//! random form with moderately large coefficients attains the index except
//! with negligible probability. Any single form already gives an upper bound
//! on the index, so an index of 0 found this way is certified.

use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cascade::Cascade;
use crate::chevalley::{LieAlgebra, Subalgebra, SubalgebraKind};
use crate::error::{Error, Result};
use crate::linalg;

pub const DEFAULT_SAMPLES: usize = 32;
pub const DEFAULT_SEED: u64 = 0x5EED_CA5C;
pub const DEFAULT_COEFF_BOUND: i64 = 100;

/// A linear form, given by its values on the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<Rational64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational64>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        LinearForm {
            coeffs: vec![Rational64::zero(); dim],
        }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        LinearForm {
            coeffs: coeffs.iter().map(|&c| Rational64::from_integer(c)).collect(),
        }
    }

    /// Dual basis vector `e_i^*`.
    pub fn dual(dim: usize, i: usize) -> Self {
        let mut f = Self::zero(dim);
        f.coeffs[i] = Rational64::from_integer(1);
        f
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational64] {
        &self.coeffs
    }

    pub fn sparse(&self) -> Vec<(usize, Coeff)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, Coeff(c)))
            .collect()
    }

    /// Inverse of [`LinearForm::sparse`]. Indices must be below `dim`.
    pub fn from_sparse(dim: usize, entries: &[(usize, Coeff)]) -> Result<Self> {
        let mut f = Self::zero(dim);
        for &(i, c) in entries {
            if i >= dim {
                return Err(Error::DimensionMismatch { expected: dim, got: i + 1 });
            }
            f.coeffs[i] = c.0;
        }
        Ok(f)
    }

    /// Concatenation, the form on a direct product.
    pub fn concat(forms: &[LinearForm]) -> LinearForm {
        LinearForm {
            coeffs: forms.iter().flat_map(|f| f.coeffs.iter().copied()).collect(),
        }
    }
}

/// Rational coefficient serialized as a JSON integer when integral and as a
/// `"p/q"` string otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coeff(pub Rational64);

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            s.serialize_i64(self.0.to_integer())
        } else {
            s.collect_str(&self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(i) => Ok(Coeff(Rational64::from_integer(i))),
            Raw::Text(t) => t.parse().map(Coeff).map_err(serde::de::Error::custom),
        }
    }
}

/// `M[i][j] = f([e_i, e_j])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewFormMatrix {
    entries: Vec<Vec<Rational64>>,
}

impl SkewFormMatrix {
    pub fn from_entries(entries: Vec<Vec<Rational64>>) -> Result<Self> {
        let n = entries.len();
        if let Some(row) = entries.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
        if !linalg::is_skew(&entries) {
            return Err(Error::InvalidArgument("matrix is not skew-symmetric".into()));
        }
        Ok(SkewFormMatrix { entries })
    }

    pub fn entries(&self) -> &[Vec<Rational64>] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }
}

pub fn form_matrix(alg: &LieAlgebra, f: &LinearForm) -> Result<SkewFormMatrix> {
    let n = alg.dim();
    if f.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.dim(),
        });
    }
    let mut entries = vec![vec![Rational64::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v: Rational64 = alg
                .bracket(i, j)
                .iter()
                .map(|&(k, c)| c * f.coeffs[k])
                .sum();
            entries[i][j] = v;
            entries[j][i] = -v;
        }
    }
    Ok(SkewFormMatrix { entries })
}

/// Exact rank over the rationals.
pub fn rank_exact(m: &SkewFormMatrix) -> usize {
    let r = linalg::rational_rank(&m.entries);
    debug_assert!(r.is_multiple_of(2), "skew-symmetric matrices have even rank");
    r
}

/// `dim ker B_f`.
pub fn index_of_form(alg: &LieAlgebra, f: &LinearForm) -> Result<usize> {
    Ok(alg.dim() - rank_exact(&form_matrix(alg, f)?))
}

/// `f = Σ_K X*_{β_K}` on a Borel subalgebra.
pub fn cascade_form(borel: &Subalgebra, cascade: &Cascade) -> Result<LinearForm> {
    if borel.kind() != SubalgebraKind::Borel {
        return Err(Error::NotBorel);
    }
    let rs = borel.parent().root_system();
    let mut f = LinearForm::zero(borel.dim());
    for beta in cascade.betas() {
        if beta.rank() != rs.rank() {
            return Err(Error::NotBorel);
        }
        let i = borel.member_of_root(&beta).ok_or(Error::NotBorel)?;
        f.coeffs[i] = Rational64::from_integer(1);
    }
    Ok(f)
}

/// The analogous form `Σ_{L ∈ I(Q+)} X*_{β_L}` on any subalgebra containing
/// the relevant root vectors; cascade roots that are not members are skipped.
pub fn cascade_form_on(sub: &Subalgebra, cascade: &Cascade) -> LinearForm {
    let mut f = LinearForm::zero(sub.dim());
    for beta in cascade.betas() {
        if let Some(i) = sub.member_of_root(&beta) {
            f.coeffs[i] = Rational64::from_integer(1);
        }
    }
    f
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingConfig {
    pub samples: usize,
    pub seed: u64,
    pub coeff_bound: i64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            coeff_bound: DEFAULT_COEFF_BOUND,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexReport {
    pub algebra: String,
    pub dim: usize,
    pub index: usize,
    /// Largest rank of `B_f` found.
    pub rank: usize,
    /// Random forms actually evaluated. Sampling stops early once a form of
    /// full even rank is found, since no form can do better.
    pub samples: usize,
    pub seed: u64,
    pub coeff_bound: i64,
    /// The form attaining `rank`, as sparse `(basis index, coefficient)` pairs.
    pub witness: Vec<(usize, Coeff)>,
    /// Smallest kernel dimension among the random forms alone.
    pub sampled_index: Option<usize>,
    pub cascade_form_rank: Option<usize>,
    pub cascade_form_index: Option<usize>,
}

fn random_form(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> LinearForm {
    LinearForm {
        coeffs: (0..dim)
            .map(|_| Rational64::from_integer(rng.gen_range(-bound..=bound)))
            .collect(),
    }
}

/// Minimum of `dim ker B_f` over `candidate` (evaluated first) and over
/// `cfg.samples` random integer forms.
pub fn estimate_index(
    name: &str,
    alg: &LieAlgebra,
    cfg: &SamplingConfig,
    candidate: Option<&LinearForm>,
) -> Result<IndexReport> {
    if cfg.samples == 0 || cfg.coeff_bound < 1 {
        return Err(Error::InvalidArgument(
            "need at least one sample and a positive coefficient bound".into(),
        ));
    }
    let dim = alg.dim();
    let ceiling = dim - dim % 2;
    let mut best: Option<(usize, LinearForm)> = None;
    let mut cascade_rank = None;
    if let Some(f) = candidate {
        let r = rank_exact(&form_matrix(alg, f)?);
        cascade_rank = Some(r);
        best = Some((r, f.clone()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut sampled_best: Option<usize> = None;
    let mut used = 0;
    for _ in 0..cfg.samples {
        let f = random_form(&mut rng, dim, cfg.coeff_bound);
        let r = rank_exact(&form_matrix(alg, &f)?);
        used += 1;
        if sampled_best.is_none_or(|b| r > b) {
            sampled_best = Some(r);
        }
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, f));
        }
        if r == ceiling {
            break;
        }
    }
    let (rank, witness) = best.expect("at least one form evaluated");
    Ok(IndexReport {
        algebra: name.to_string(),
        dim,
        index: dim - rank,
        rank,
        samples: used,
        seed: cfg.seed,
        coeff_bound: cfg.coeff_bound,
        witness: witness.sparse(),
        sampled_index: sampled_best.map(|r| dim - r),
        cascade_form_rank: cascade_rank,
        cascade_form_index: cascade_rank.map(|r| dim - r),
    })
}

/// Human-readable name such as `borel(E6)` or `d_m(B3; 1,3)`.
pub fn describe(sub: &Subalgebra, excluded: Option<&[usize]>) -> String {
    let t = sub.parent().root_system().simple_type();
    match excluded {
        Some(ex) => {
            let list: Vec<String> = ex.iter().map(ToString::to_string).collect();
            format!("{}({t}; {})", sub.kind(), list.join(","))
        }
        None => format!("{}({t})", sub.kind()),
    }
}

/// Index estimate for a subalgebra of `g`. For a Borel subalgebra the cascade
/// form is evaluated alongside the random forms.
pub fn index_estimate(
    sub: &Subalgebra,
    num_samples: usize,
    seed: u64,
    coeff_bound: i64,
) -> Result<IndexReport> {
    let cfg = SamplingConfig {
        samples: num_samples,
        seed,
        coeff_bound,
    };
    let cascade_f = if sub.kind() == SubalgebraKind::Borel {
        let cascade = Cascade::build(sub.parent().root_system());
        Some(cascade_form(sub, &cascade)?)
    } else {
        None
    };
    estimate_index(&describe(sub, None), sub.algebra(), &cfg, cascade_f.as_ref())
}

pub fn is_regular(alg: &LieAlgebra, f: &LinearForm, established_index: usize) -> Result<bool> {
    Ok(index_of_form(alg, f)? == established_index)
}

/// Index 0 under the default sampling configuration.
pub fn is_frobenius(sub: &Subalgebra) -> Result<bool> {
    let cfg = SamplingConfig::default();
    Ok(index_estimate(sub, cfg.samples, cfg.seed, cfg.coeff_bound)?.index == 0)
}

pub fn is_frobenius_algebra(alg: &LieAlgebra) -> Result<bool> {
    Ok(estimate_index("", alg, &SamplingConfig::default(), None)?.index == 0)
}

/// Outcome of [`product_index_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCheck {
    pub index: usize,
    pub factor_indices: Vec<usize>,
    /// Regularity of the concatenated form matches regularity of every piece.
    pub regularity_consistent: bool,
}

impl ProductCheck {
    pub fn passed(&self) -> bool {
        self.index == self.factor_indices.iter().sum::<usize>() && self.regularity_consistent
    }
}

/// Index of a direct product against the sum of the factor indices, and
/// regularity of `f = (f_1, .., f_r)` against regularity of each `f_i`.
pub fn product_index_check_algebras(
    factors: &[&LieAlgebra],
    forms: &[LinearForm],
) -> Result<ProductCheck> {
    if factors.is_empty() {
        return Err(Error::NotAProduct("no factors".into()));
    }
    if factors.len() != forms.len() {
        return Err(Error::DimensionMismatch {
            expected: factors.len(),
            got: forms.len(),
        });
    }
    let cfg = SamplingConfig::default();
    let product = LieAlgebra::direct_product(factors);
    let index = estimate_index("product", &product, &cfg, None)?.index;
    let mut factor_indices = Vec::with_capacity(factors.len());
    let mut all_regular = true;
    for (alg, f) in factors.iter().zip(forms) {
        let i = estimate_index("factor", alg, &cfg, None)?.index;
        all_regular &= is_regular(alg, f, i)?;
        factor_indices.push(i);
    }
    let whole = is_regular(&product, &LinearForm::concat(forms), index)?;
    Ok(ProductCheck {
        index,
        factor_indices,
        regularity_consistent: whole == all_regular,
    })
}

/// [`product_index_check_algebras`] for subalgebras. Subalgebras of the same
/// `g` must commute pairwise to form a direct product.
pub fn product_index_check(subs: &[&Subalgebra], forms: &[LinearForm]) -> Result<ProductCheck> {
    for (i, a) in subs.iter().enumerate() {
        for b in &subs[i + 1..] {
            if Arc::ptr_eq(a.parent(), b.parent()) && !a.commutes_with(b) {
                return Err(Error::NotAProduct(format!(
                    "{} and {} do not commute",
                    describe(a, None),
                    describe(b, None)
                )));
            }
        }
    }
    let algebras: Vec<&LieAlgebra> = subs.iter().map(|s| s.algebra()).collect();
    product_index_check_algebras(&algebras, forms)
}
