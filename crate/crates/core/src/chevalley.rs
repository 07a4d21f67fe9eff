//! Chevalley bases and the subalgebras built from them.
//!
//! The basis of `g` is `H_1..H_r`, then `X_α` and `Y_α = e_{-α}` for the
//! positive roots in root order, with
//!
//! ```text
//! [H_i, X_α] = α(H_i) X_α        [X_α, Y_α] = H_α
//! [e_α, e_β] = N_{α,β} e_{α+β}   when α + β is a root
//! ```
//!
//! and `N_{-α,-β} = -N_{α,β}`. Signs of `N` on extraspecial pairs are free; all
//! other constants follow from them. Every constant is an integer.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cascade::{Cascade, CascadeIndex};
use crate::error::{Error, Result};
use crate::root_system::{Root, RootSystem};

/// Sparse vector: `(basis index, coefficient)` pairs with distinct indices.
pub type Sparse<T> = Vec<(usize, T)>;

/// How signs of structure constants on extraspecial pairs are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// Every extraspecial constant is positive.
    #[default]
    Standard,
    /// Extraspecial signs drawn from a seeded generator.
    Seeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisElement {
    /// Simple coroot `H_i`, 0-based.
    Cartan(usize),
    PosRoot(Root),
    NegRoot(Root),
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Cartan(i) => write!(f, "H{}", i + 1),
            BasisElement::PosRoot(r) => write!(f, "X({r})"),
            BasisElement::NegRoot(r) => write!(f, "Y({r})"),
        }
    }
}

/// Structure constants `N_{x,y}` for all pairs of roots, derived from the
/// extraspecial pairs by induction on height.
struct Constants<'a> {
    rs: &'a RootSystem,
    special: HashMap<(usize, usize), i64>,
}

impl<'a> Constants<'a> {
    fn build(rs: &'a RootSystem, signs: SignConvention) -> Self {
        let mut rng = match signs {
            SignConvention::Standard => None,
            SignConvention::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        let mut c = Constants {
            rs,
            special: HashMap::new(),
        };
        let pos = rs.positive_roots();
        for (xi_idx, xi) in pos.iter().enumerate() {
            // special pairs (r, s): r + s = xi, 0 < r < s
            let mut pairs: Vec<(usize, usize)> = pos[..xi_idx]
                .iter()
                .enumerate()
                .filter_map(|(ri, r)| {
                    let s = xi - r;
                    match rs.index_of(&s) {
                        Some(si) if ri < si => Some((ri, si)),
                        _ => None,
                    }
                })
                .collect();
            if pairs.is_empty() {
                continue;
            }
            pairs.sort();
            let (ai, bi) = pairs[0];
            let (a, b) = (&pos[ai], &pos[bi]);
            let mut p = 0;
            while rs.is_root((b - &a.scaled(p + 1)).coeffs()) {
                p += 1;
            }
            let flip = rng.as_mut().is_some_and(|g| g.gen::<bool>());
            let sign = if flip { -1 } else { 1 };
            let n_ab = sign * (p as i64 + 1);
            c.special.insert((ai, bi), n_ab);

            let xi_len = rs.form(xi, xi);
            let neg_a = -a;
            let neg_b = -b;
            for &(ri, si) in &pairs[1..] {
                let (r, s) = (&pos[ri], &pos[si]);
                let mut acc = Rational64::zero();
                let s_minus_a = s - a;
                if rs.is_root(s_minus_a.coeffs()) {
                    acc += Rational64::new(
                        c.n(s, &neg_a) * c.n(r, &neg_b),
                        rs.form(&s_minus_a, &s_minus_a),
                    );
                }
                let r_minus_a = r - a;
                if rs.is_root(r_minus_a.coeffs()) {
                    acc += Rational64::new(
                        c.n(&neg_a, r) * c.n(s, &neg_b),
                        rs.form(&r_minus_a, &r_minus_a),
                    );
                }
                let value = acc * Rational64::new(xi_len, n_ab);
                assert!(value.is_integer(), "non-integral structure constant");
                c.special.insert((ri, si), value.to_integer());
            }
        }
        c
    }

    /// `N_{x,y}` for arbitrary roots; zero when `x + y` is not a root.
    fn n(&self, x: &Root, y: &Root) -> i64 {
        let rs = self.rs;
        let sum = x + y;
        if !rs.is_root(sum.coeffs()) {
            return 0;
        }
        match (x.is_positive(), y.is_positive()) {
            (true, true) => {
                let i = rs.index_of(x).expect("positive root");
                let j = rs.index_of(y).expect("positive root");
                if i < j {
                    self.special[&(i, j)]
                } else {
                    -self.special[&(j, i)]
                }
            }
            (false, false) => -self.n(&-x, &-y),
            _ => {
                // x + y + z = 0 gives N_{x,y}/(z,z) = N_{y,z}/(x,x) = N_{z,x}/(y,y)
                let z = -&sum;
                let zz = rs.form(&z, &z);
                let (num, den) = if z.is_positive() == y.is_positive() {
                    (zz * self.n(y, &z), rs.form(x, x))
                } else {
                    (zz * self.n(&z, x), rs.form(y, y))
                };
                debug_assert_eq!(num % den, 0);
                num / den
            }
        }
    }
}

/// The Lie algebra `g` in its Chevalley basis, with an integer bracket table.
#[derive(Debug, Clone)]
pub struct StructureTable {
    rs: RootSystem,
    basis: Vec<BasisElement>,
    brackets: Vec<Sparse<i64>>,
}

impl StructureTable {
    pub fn new(rs: &RootSystem) -> Self {
        Self::with_signs(rs, SignConvention::Standard)
    }

    pub fn with_signs(rs: &RootSystem, signs: SignConvention) -> Self {
        let r = rs.rank();
        let pos = rs.positive_roots();
        let npos = pos.len();
        let mut basis: Vec<BasisElement> = (0..r).map(BasisElement::Cartan).collect();
        basis.extend(pos.iter().cloned().map(BasisElement::PosRoot));
        basis.extend(pos.iter().cloned().map(BasisElement::NegRoot));
        let dim = basis.len();

        let constants = Constants::build(rs, signs);
        let root_of = |i: usize| -> Option<Root> {
            match &basis[i] {
                BasisElement::Cartan(_) => None,
                BasisElement::PosRoot(a) => Some(a.clone()),
                BasisElement::NegRoot(a) => Some(-a),
            }
        };
        let vector_of = |root: &Root| -> usize {
            if root.is_positive() {
                r + rs.index_of(root).expect("root")
            } else {
                r + npos + rs.index_of(&-root).expect("root")
            }
        };

        let mut brackets = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let entry = match (root_of(i), root_of(j)) {
                    (None, None) => Vec::new(),
                    (None, Some(s)) => {
                        let BasisElement::Cartan(k) = basis[i] else { unreachable!() };
                        let c = rs.pairing(&s, &rs.simple_root(k));
                        if c == 0 { Vec::new() } else { vec![(j, c)] }
                    }
                    (Some(s), None) => {
                        let BasisElement::Cartan(k) = basis[j] else { unreachable!() };
                        let c = rs.pairing(&s, &rs.simple_root(k));
                        if c == 0 { Vec::new() } else { vec![(i, -c)] }
                    }
                    (Some(a), Some(b)) => {
                        let sum = &a + &b;
                        if sum.is_zero() {
                            let (beta, sign) = if a.is_positive() { (a, 1) } else { (b, -1) };
                            rs.coroot_coefficients(&beta)
                                .into_iter()
                                .enumerate()
                                .filter(|(_, c)| *c != 0)
                                .map(|(k, c)| (k, sign * c))
                                .collect()
                        } else if rs.is_root(sum.coeffs()) {
                            vec![(vector_of(&sum), constants.n(&a, &b))]
                        } else {
                            Vec::new()
                        }
                    }
                };
                brackets[i * dim + j] = entry;
            }
        }
        StructureTable {
            rs: rs.clone(),
            basis,
            brackets,
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.brackets[i * self.dim() + j]
    }

    /// Index of `H_i` (0-based `i`).
    pub fn h(&self, i: usize) -> usize {
        i
    }

    /// Index of `X_α` for a positive root.
    pub fn x(&self, alpha: &Root) -> Option<usize> {
        self.rs.index_of(alpha).map(|k| self.rs.rank() + k)
    }

    /// Index of `Y_α` for a positive root.
    pub fn y(&self, alpha: &Root) -> Option<usize> {
        self.rs
            .index_of(alpha)
            .map(|k| self.rs.rank() + self.rs.positive_roots().len() + k)
    }

    /// `N_{α,β}` read back from the table: the coefficient of `X_{α+β}` in
    /// `[X_α, X_β]` (positive roots), zero if `α + β` is not a root.
    pub fn constant(&self, alpha: &Root, beta: &Root) -> Option<i64> {
        let (i, j) = (self.x(alpha)?, self.x(beta)?);
        Some(self.bracket(i, j).first().map(|&(_, c)| c).unwrap_or(0))
    }

    /// Bracket of two sparse vectors.
    pub fn bracket_vectors(&self, u: &[(usize, i64)], v: &[(usize, i64)]) -> Sparse<i64> {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(i, a) in u {
            for &(j, b) in v {
                for &(k, c) in self.bracket(i, j) {
                    *acc.entry(k).or_insert(0) += a * b * c;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    /// Antisymmetry on every pair of basis elements.
    pub fn is_antisymmetric(&self) -> bool {
        is_antisymmetric(self.dim(), |i, j| self.bracket(i, j))
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        jacobi_violation(self.dim(), |i, j| self.bracket(i, j))
    }

    /// Copy of the table with one structure constant `[X_a, X_b]` negated on
    /// both orders, which breaks the Jacobi identity once the rank is at
    /// least 2. Used for fault-injection checks.
    pub fn with_flipped_constant(&self) -> Option<StructureTable> {
        let dim = self.dim();
        let (i, j) = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .find(|&(i, j)| {
                matches!(
                    (&self.basis[i], &self.basis[j]),
                    (BasisElement::PosRoot(_), BasisElement::PosRoot(_))
                ) && !self.bracket(i, j).is_empty()
            })?;
        let mut out = self.clone();
        for (a, b) in [(i, j), (j, i)] {
            for entry in out.brackets[a * dim + b].iter_mut() {
                entry.1 = -entry.1;
            }
        }
        Some(out)
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(ToString::to_string).collect()
    }

    /// JSON export: basis labels plus the nonzero brackets `[e_i, e_j]`, `i < j`.
    pub fn to_export(&self) -> StructureTableExport {
        let dim = self.dim();
        let mut brackets = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let b = self.bracket(i, j);
                if !b.is_empty() {
                    brackets.push((i, j, b.to_vec()));
                }
            }
        }
        StructureTableExport {
            algebra: self.rs.simple_type().to_string(),
            basis: self.labels(),
            brackets,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureTableExport {
    pub algebra: String,
    pub basis: Vec<String>,
    pub brackets: Vec<(usize, usize, Vec<(usize, i64)>)>,
}

pub(crate) fn is_antisymmetric<'a, T, F>(dim: usize, bracket: F) -> bool
where
    T: Copy + PartialEq + std::ops::Neg<Output = T> + 'a,
    F: Fn(usize, usize) -> &'a [(usize, T)],
{
    (0..dim).all(|i| {
        (i..dim).all(|j| {
            let mut a: Vec<(usize, T)> = bracket(i, j).to_vec();
            let mut b: Vec<(usize, T)> = bracket(j, i).iter().map(|&(k, c)| (k, -c)).collect();
            a.sort_by_key(|e| e.0);
            b.sort_by_key(|e| e.0);
            a == b
        })
    })
}

/// Exhaustive Jacobi check over basis triples `i < j < k` (antisymmetry is
/// assumed and checked separately).
pub(crate) fn jacobi_violation<'a, T, F>(dim: usize, bracket: F) -> Option<(usize, usize, usize)>
where
    T: Copy + Zero + std::ops::Mul<Output = T> + 'a,
    F: Fn(usize, usize) -> &'a [(usize, T)],
{
    let mut scratch: Vec<T> = vec![T::zero(); dim];
    let mut touched: Vec<usize> = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for &(m, c) in bracket(x, y) {
                        for &(n, d) in bracket(m, z) {
                            if scratch[n].is_zero() {
                                touched.push(n);
                            }
                            scratch[n] = scratch[n] + c * d;
                        }
                    }
                }
                let bad = touched.iter().any(|&n| !scratch[n].is_zero());
                for &n in &touched {
                    scratch[n] = T::zero();
                }
                touched.clear();
                if bad {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// A finite-dimensional Lie algebra given by a rational bracket table.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    brackets: Vec<Sparse<Rational64>>,
}

impl LieAlgebra {
    /// Builds an algebra from a full `dim × dim` table (row-major).
    pub fn from_table(labels: Vec<String>, brackets: Vec<Sparse<Rational64>>) -> Result<Self> {
        let dim = labels.len();
        if brackets.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: brackets.len(),
            });
        }
        Ok(LieAlgebra { labels, brackets })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            labels: (1..=dim).map(|i| format!("e{i}")).collect(),
            brackets: vec![Vec::new(); dim * dim],
        }
    }

    /// Direct product of the factors; basis is the concatenation of theirs.
    pub fn direct_product(factors: &[&LieAlgebra]) -> LieAlgebra {
        let dim: usize = factors.iter().map(|f| f.dim()).sum();
        let mut labels = Vec::with_capacity(dim);
        let mut brackets = vec![Vec::new(); dim * dim];
        let mut offset = 0;
        for (n, f) in factors.iter().enumerate() {
            let d = f.dim();
            labels.extend(f.labels.iter().map(|l| format!("{}:{l}", n + 1)));
            for i in 0..d {
                for j in 0..d {
                    brackets[(offset + i) * dim + offset + j] = f
                        .bracket(i, j)
                        .iter()
                        .map(|&(k, c)| (offset + k, c))
                        .collect();
                }
            }
            offset += d;
        }
        LieAlgebra { labels, brackets }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Rational64)] {
        &self.brackets[i * self.dim() + j]
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(Vec::is_empty)
    }

    pub fn is_antisymmetric(&self) -> bool {
        is_antisymmetric(self.dim(), |i, j| self.bracket(i, j))
    }

    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        jacobi_violation(self.dim(), |i, j| self.bracket(i, j))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubalgebraKind {
    Borel,
    NilradicalN,
    ParabolicP,
    NilradicalM,
    DM,
}

impl fmt::Display for SubalgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SubalgebraKind::Borel => "borel",
            SubalgebraKind::NilradicalN => "nilradical_n",
            SubalgebraKind::ParabolicP => "parabolic_p",
            SubalgebraKind::NilradicalM => "nilradical_m",
            SubalgebraKind::DM => "d_m",
        };
        f.write_str(s)
    }
}

/// Expresses vectors in the span of a fixed family of vectors.
struct SpanSolver {
    pivots: Vec<usize>,
    /// rows of the reduced echelon form
    reduced: Vec<Sparse<Rational64>>,
    /// reduced[i] = Σ_k transform[i][k] · members[k]
    transform: Vec<Sparse<Rational64>>,
}

impl SpanSolver {
    fn new(dim: usize, members: &[Sparse<i64>]) -> Result<Self> {
        let k = members.len();
        let mut rows: Vec<Vec<Rational64>> = members
            .iter()
            .map(|m| {
                let mut row = vec![Rational64::zero(); dim];
                for &(i, c) in m {
                    row[i] = Rational64::from_integer(c);
                }
                row
            })
            .collect();
        let mut trans: Vec<Vec<Rational64>> = (0..k)
            .map(|i| {
                let mut row = vec![Rational64::zero(); k];
                row[i] = Rational64::one();
                row
            })
            .collect();
        let mut pivots = Vec::with_capacity(k);
        let mut rank = 0;
        for col in 0..dim {
            let Some(p) = (rank..k).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            trans.swap(rank, p);
            let inv = rows[rank][col].recip();
            for x in rows[rank].iter_mut() {
                *x *= inv;
            }
            for x in trans[rank].iter_mut() {
                *x *= inv;
            }
            for r in 0..k {
                if r != rank && !rows[r][col].is_zero() {
                    let f = rows[r][col];
                    for c in 0..dim {
                        let v = rows[rank][c];
                        if !v.is_zero() {
                            rows[r][c] -= f * v;
                        }
                    }
                    for c in 0..k {
                        let v = trans[rank][c];
                        if !v.is_zero() {
                            trans[r][c] -= f * v;
                        }
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == k {
                break;
            }
        }
        if rank < k {
            return Err(Error::InvalidArgument(
                "subalgebra members are linearly dependent".into(),
            ));
        }
        let sparse = |row: &Vec<Rational64>| -> Sparse<Rational64> {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, &c)| (i, c))
                .collect()
        };
        Ok(SpanSolver {
            pivots,
            reduced: rows.iter().map(sparse).collect(),
            transform: trans.iter().map(sparse).collect(),
        })
    }

    fn solve(&self, v: &[(usize, i64)]) -> Option<Sparse<Rational64>> {
        let lookup: BTreeMap<usize, i64> = v.iter().copied().collect();
        let mut residual: BTreeMap<usize, Rational64> = v
            .iter()
            .map(|&(i, c)| (i, Rational64::from_integer(c)))
            .collect();
        let mut coords: BTreeMap<usize, Rational64> = BTreeMap::new();
        for (row, &p) in self.pivots.iter().enumerate() {
            let Some(&c) = lookup.get(&p) else { continue };
            let c = Rational64::from_integer(c);
            for &(i, x) in &self.reduced[row] {
                *residual.entry(i).or_insert_with(Rational64::zero) -= c * x;
            }
            for &(m, t) in &self.transform[row] {
                *coords.entry(m).or_insert_with(Rational64::zero) += c * t;
            }
        }
        if residual.values().any(|x| !x.is_zero()) {
            return None;
        }
        Some(coords.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

/// A subalgebra of `g` spanned by explicit vectors, with its induced table.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    kind: SubalgebraKind,
    parent: Arc<StructureTable>,
    members: Vec<Sparse<i64>>,
    algebra: LieAlgebra,
}

impl Subalgebra {
    /// Checks closure under the bracket and computes structure constants in
    /// the member basis.
    pub fn new(
        parent: Arc<StructureTable>,
        kind: SubalgebraKind,
        members: Vec<Sparse<i64>>,
        labels: Vec<String>,
    ) -> Result<Self> {
        if labels.len() != members.len() {
            return Err(Error::DimensionMismatch {
                expected: members.len(),
                got: labels.len(),
            });
        }
        let solver = SpanSolver::new(parent.dim(), &members)?;
        let n = members.len();
        let mut brackets = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = parent.bracket_vectors(&members[i], &members[j]);
                if v.is_empty() {
                    continue;
                }
                let coords = solver.solve(&v).ok_or(Error::NotClosed)?;
                brackets[j * n + i] = coords.iter().map(|&(k, c)| (k, -c)).collect();
                brackets[i * n + j] = coords;
            }
        }
        Ok(Subalgebra {
            kind,
            parent,
            members,
            algebra: LieAlgebra { labels, brackets },
        })
    }

    pub fn kind(&self) -> SubalgebraKind {
        self.kind
    }

    pub fn parent(&self) -> &Arc<StructureTable> {
        &self.parent
    }

    pub fn members(&self) -> &[Sparse<i64>] {
        &self.members
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.members.len()
    }

    /// Position of `X_α` among the members, if it is one.
    pub fn member_of_root(&self, alpha: &Root) -> Option<usize> {
        let x = self.parent.x(alpha)?;
        self.members.iter().position(|m| m.as_slice() == [(x, 1)])
    }

    /// Recomputes every member bracket in `g` and compares it with the
    /// induced table mapped back through the members.
    pub fn check_embedding(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let expected = self.parent.bracket_vectors(&self.members[i], &self.members[j]);
                let mut got: BTreeMap<usize, Rational64> = BTreeMap::new();
                for &(k, c) in self.algebra.bracket(i, j) {
                    for &(e, m) in &self.members[k] {
                        *got.entry(e).or_insert_with(Rational64::zero) +=
                            c * Rational64::from_integer(m);
                    }
                }
                let got: Vec<(usize, Rational64)> =
                    got.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                let expected: Vec<(usize, Rational64)> = expected
                    .into_iter()
                    .map(|(k, c)| (k, Rational64::from_integer(c)))
                    .collect();
                got == expected
            })
        })
    }

    /// Whether every bracket between members of `self` and `other` vanishes.
    pub fn commutes_with(&self, other: &Subalgebra) -> bool {
        self.members.iter().all(|u| {
            other
                .members
                .iter()
                .all(|v| self.parent.bracket_vectors(u, v).is_empty())
        })
    }
}

fn unit(i: usize) -> Sparse<i64> {
    vec![(i, 1)]
}

fn root_members<'a>(
    st: &StructureTable,
    roots: impl IntoIterator<Item = &'a Root>,
) -> (Vec<Sparse<i64>>, Vec<String>) {
    roots
        .into_iter()
        .map(|a| (unit(st.x(a).expect("positive root")), format!("X({a})")))
        .unzip()
}

/// `b = h ⊕ n+`.
pub fn borel(st: &Arc<StructureTable>) -> Result<Subalgebra> {
    let rs = st.root_system();
    let mut members: Vec<Sparse<i64>> = (0..rs.rank()).map(|i| unit(st.h(i))).collect();
    let mut labels: Vec<String> = (0..rs.rank()).map(|i| format!("H{}", i + 1)).collect();
    let (m, l) = root_members(st, rs.positive_roots());
    members.extend(m);
    labels.extend(l);
    Subalgebra::new(st.clone(), SubalgebraKind::Borel, members, labels)
}

/// `n+`, the nilradical of the Borel subalgebra.
pub fn nilradical_n(st: &Arc<StructureTable>) -> Result<Subalgebra> {
    let (members, labels) = root_members(st, st.root_system().positive_roots());
    Subalgebra::new(st.clone(), SubalgebraKind::NilradicalN, members, labels)
}

fn check_excluded(rs: &RootSystem, excluded: &[usize]) -> Result<()> {
    for &i in excluded {
        if i == 0 || i > rs.rank() {
            return Err(Error::SimpleIndexOutOfRange {
                index: i,
                rank: rs.rank(),
            });
        }
    }
    Ok(())
}

/// `Q+`: positive roots whose support meets the excluded simple roots
/// (1-based indices).
pub fn q_plus(rs: &RootSystem, excluded: &[usize]) -> Result<BTreeSet<Root>> {
    check_excluded(rs, excluded)?;
    Ok(rs
        .positive_roots()
        .iter()
        .filter(|a| a.support().any(|i| excluded.contains(&(i + 1))))
        .cloned()
        .collect())
}

/// The standard parabolic `p ⊇ b` whose Levi factor is generated by the simple
/// roots not in `excluded`.
pub fn parabolic(st: &Arc<StructureTable>, excluded: &[usize]) -> Result<Subalgebra> {
    let rs = st.root_system();
    let q = q_plus(rs, excluded)?;
    let mut members: Vec<Sparse<i64>> = (0..rs.rank()).map(|i| unit(st.h(i))).collect();
    let mut labels: Vec<String> = (0..rs.rank()).map(|i| format!("H{}", i + 1)).collect();
    let (m, l) = root_members(st, rs.positive_roots());
    members.extend(m);
    labels.extend(l);
    for a in rs.positive_roots().iter().filter(|a| !q.contains(*a)) {
        members.push(unit(st.y(a).expect("positive root")));
        labels.push(format!("Y({a})"));
    }
    Subalgebra::new(st.clone(), SubalgebraKind::ParabolicP, members, labels)
}

/// `m = g^{Q+}`, the nilradical of the parabolic given by `excluded`.
pub fn parabolic_nilradical(st: &Arc<StructureTable>, excluded: &[usize]) -> Result<Subalgebra> {
    let q = q_plus(st.root_system(), excluded)?;
    let (members, labels) = root_members(st, &q);
    Subalgebra::new(st.clone(), SubalgebraKind::NilradicalM, members, labels)
}

/// `I(Q+) = {L : β_L ∈ Q+}`.
pub fn cascade_support(cascade: &Cascade, q_plus: &BTreeSet<Root>) -> BTreeSet<CascadeIndex> {
    cascade
        .nodes()
        .iter()
        .filter(|n| q_plus.contains(&n.beta))
        .map(|n| n.index.clone())
        .collect()
}

/// `d_m = h_{I(Q+)} ⊕ m_{I(Q+)}`: the coroots `H_L` of the cascade roots
/// lying in `Q+`, plus the root vectors of every `Γ_L` with `L ∈ I(Q+)`.
pub fn build_d_m(
    st: &Arc<StructureTable>,
    cascade: &Cascade,
    q_plus: &BTreeSet<Root>,
) -> Result<Subalgebra> {
    let rs = st.root_system();
    let support = cascade_support(cascade, q_plus);
    let mut members = Vec::new();
    let mut labels = Vec::new();
    let mut gammas: BTreeSet<Root> = BTreeSet::new();
    for node in cascade.nodes().iter().filter(|n| support.contains(&n.index)) {
        let coroot: Sparse<i64> = rs
            .coroot_coefficients(&node.beta)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(i, c)| (st.h(i), c))
            .collect();
        members.push(coroot);
        labels.push(format!("H({})", node.beta));
        gammas.extend(cascade.gamma_set(rs, &node.index)?.roots);
    }
    let (m, l) = root_members(st, &gammas);
    members.extend(m);
    labels.extend(l);
    Subalgebra::new(st.clone(), SubalgebraKind::DM, members, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::SimpleType;

    fn table(s: &str) -> Arc<StructureTable> {
        Arc::new(StructureTable::new(&RootSystem::new(s.parse().unwrap())))
    }

    fn root(v: &[i32]) -> Root {
        Root::new(v.to_vec())
    }

    #[test]
    fn sl2() {
        let st = table("A1");
        assert_eq!(st.dim(), 3);
        let (h, x, y) = (0, 1, 2);
        assert_eq!(st.bracket(h, x), &[(x, 2)]);
        assert_eq!(st.bracket(h, y), &[(y, -2)]);
        assert_eq!(st.bracket(x, y), &[(h, 1)]);
        assert!(st.bracket(h, h).is_empty());
    }

    #[test]
    fn weyl_relations() {
        for t in ["A3", "B3", "C3", "G2", "F4", "D4"] {
            let st = table(t);
            let rs = st.root_system();
            let n = rs.cartan();
            for i in 0..rs.rank() {
                let ai = rs.simple_root(i);
                let (xi, yi) = (st.x(&ai).unwrap(), st.y(&ai).unwrap());
                assert_eq!(st.bracket(xi, yi), &[(st.h(i), 1)]);
                for j in 0..rs.rank() {
                    let aj = rs.simple_root(j);
                    let (xj, yj) = (st.x(&aj).unwrap(), st.y(&aj).unwrap());
                    let c = n[j][i] as i64;
                    let hx = st.bracket(st.h(i), xj);
                    let hy = st.bracket(st.h(i), yj);
                    if c == 0 {
                        assert!(hx.is_empty() && hy.is_empty(), "{t}");
                    } else {
                        assert_eq!(hx, &[(xj, c)], "{t}");
                        assert_eq!(hy, &[(yj, -c)], "{t}");
                    }
                    if i != j {
                        assert!(st.bracket(xi, yj).is_empty());
                    }
                    assert!(st.bracket(st.h(i), st.h(j)).is_empty());
                }
            }
        }
    }

    #[test]
    fn constant_magnitudes() {
        let st = table("A2");
        assert_eq!(st.constant(&root(&[1, 0]), &root(&[0, 1])).unwrap().abs(), 1);
        let st = table("G2");
        assert_eq!(st.constant(&root(&[1, 0]), &root(&[1, 1])).unwrap().abs(), 2);
        assert_eq!(st.constant(&root(&[1, 0]), &root(&[2, 1])).unwrap().abs(), 3);
        assert_eq!(st.constant(&root(&[1, 0]), &root(&[3, 1])).unwrap(), 0);
    }

    #[test]
    fn constants_match_root_strings() {
        for t in SimpleType::all_up_to(4) {
            let st = table(&t.to_string());
            let rs = st.root_system();
            for a in rs.positive_roots() {
                for b in rs.positive_roots() {
                    let n = st.constant(a, b).unwrap();
                    if rs.is_root((a + b).coeffs()) {
                        // p = how far the a-string through b extends downward
                        let (down, _) = rs.root_string(a, b).unwrap();
                        assert_eq!(n.abs(), (1 - down) as i64, "{t} {a} {b}");
                        // N_{-a,-b} = -N_{a,b}: [Y_a, Y_b] = -N Y_{a+b}
                        let (ya, yb) = (st.y(a).unwrap(), st.y(b).unwrap());
                        let yab = st.y(&(a + b)).unwrap();
                        assert_eq!(st.bracket(ya, yb), &[(yab, -n)]);
                    } else {
                        assert_eq!(n, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_small_types() {
        for t in SimpleType::all_up_to(4) {
            let st = table(&t.to_string());
            assert!(st.is_antisymmetric(), "{t}");
            assert_eq!(st.jacobi_violation(), None, "{t}");
        }
    }

    #[test]
    fn seeded_signs_still_satisfy_jacobi() {
        for seed in [1, 2, 3] {
            let rs = RootSystem::new("B3".parse().unwrap());
            let st = StructureTable::with_signs(&rs, SignConvention::Seeded(seed));
            assert_eq!(st.jacobi_violation(), None);
        }
    }

    #[test]
    fn flipped_constant_breaks_jacobi() {
        let st = table("A2");
        let bad = st.with_flipped_constant().unwrap();
        assert!(bad.is_antisymmetric());
        assert!(bad.jacobi_violation().is_some());
        assert!(table("A1").with_flipped_constant().is_none());
    }

    #[test]
    fn borel_dimensions() {
        assert_eq!(borel(&table("A1")).unwrap().dim(), 2);
        assert_eq!(borel(&table("G2")).unwrap().dim(), 8);
        assert_eq!(borel(&table("E6")).unwrap().dim(), 42);
    }

    #[test]
    fn parabolic_nilradicals() {
        let st = table("A2");
        assert_eq!(parabolic_nilradical(&st, &[1, 2]).unwrap().dim(), 3);
        assert_eq!(parabolic_nilradical(&st, &[]).unwrap().dim(), 0);
        let m = parabolic_nilradical(&st, &[1]).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.member_of_root(&root(&[1, 0])).is_some());
        assert!(m.member_of_root(&root(&[1, 1])).is_some());
        assert!(matches!(
            parabolic_nilradical(&st, &[3]),
            Err(Error::SimpleIndexOutOfRange { index: 3, rank: 2 })
        ));
        let p = parabolic(&st, &[1]).unwrap();
        assert_eq!(p.dim(), 2 + 3 + 1);
        assert!(p.check_embedding());
    }

    #[test]
    fn d_m_examples() {
        let st = table("A2");
        let rs = st.root_system();
        let cascade = Cascade::build(rs);
        let q = q_plus(rs, &[1]).unwrap();
        let dm = build_d_m(&st, &cascade, &q).unwrap();
        assert_eq!(dm.dim(), 4);
        assert_eq!(dm.members()[0], vec![(0, 1), (1, 1)]);
        assert!(dm.check_embedding());

        let empty = build_d_m(&st, &cascade, &BTreeSet::new()).unwrap();
        assert_eq!(empty.dim(), 0);

        for t in ["B3", "D4", "G2"] {
            let st = table(t);
            let rs = st.root_system();
            let cascade = Cascade::build(rs);
            let all: Vec<usize> = (1..=rs.rank()).collect();
            let dm = build_d_m(&st, &cascade, &q_plus(rs, &all).unwrap()).unwrap();
            assert_eq!(dm.dim(), cascade.len() + rs.positive_roots().len());
        }
    }

    #[test]
    fn non_closed_span_is_rejected() {
        let st = table("A2");
        let x1 = st.x(&root(&[1, 0])).unwrap();
        let x2 = st.x(&root(&[0, 1])).unwrap();
        let r = Subalgebra::new(
            st.clone(),
            SubalgebraKind::NilradicalM,
            vec![vec![(x1, 1)], vec![(x2, 1)]],
            vec!["a".into(), "b".into()],
        );
        assert!(matches!(r, Err(Error::NotClosed)));
    }

    #[test]
    fn export_lists_upper_triangle() {
        let st = table("A1");
        let e = st.to_export();
        assert_eq!(e.basis, ["H1", "X(α1)", "Y(α1)"]);
        assert_eq!(e.brackets.len(), 3);
    }

    #[test]
    fn direct_product_is_block_diagonal() {
        let b = borel(&table("A1")).unwrap();
        let prod = LieAlgebra::direct_product(&[b.algebra(), b.algebra()]);
        assert_eq!(prod.dim(), 4);
        assert!(prod.bracket(0, 3).is_empty());
        assert_eq!(prod.bracket(2, 3), &[(3, Rational64::from_integer(2))]);
        assert_eq!(prod.jacobi_violation(), None);
    }
}
