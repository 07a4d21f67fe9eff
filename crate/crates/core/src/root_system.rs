//! Finite root systems of the simple Lie algebras.
//!
//! Roots are integer coefficient vectors over the simple roots, numbered as in
//! Bourbaki. The invariant form is normalized so that short roots have squared
//! length 2, which keeps every inner product an integer. The stored Cartan
//! matrix is `n(i, j) = 2(α_i, α_j) / (α_j, α_j)`, i.e. `n(i, j) = α_i(H_j)`.
//!
//! For G2 the first simple root is the short one, so the highest root is
//! `3α1 + 2α2`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Cartan type of a simple Lie algebra, e.g. `B5` or `E6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(Error::InvalidRank {
                family: family.letter(),
                rank,
            })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every simple type of rank at most `max_rank`, ordered by family then rank.
    pub fn all_up_to(max_rank: usize) -> Vec<SimpleType> {
        let families = [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ];
        let mut out = Vec::new();
        for family in families {
            for rank in 1..=max_rank {
                if let Ok(t) = SimpleType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Number of positive roots, from the classical formulas.
    pub fn positive_root_count(&self) -> usize {
        let r = self.rank;
        match self.family {
            Family::A => r * (r + 1) / 2,
            Family::B | Family::C => r * r,
            Family::D => r * (r - 1),
            Family::E => match r {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::InvalidTypeSpec(s.to_string()))?;
        let rest = chars.as_str().trim_start_matches('_');
        let rank: usize = rest
            .parse()
            .map_err(|_| Error::InvalidTypeSpec(s.to_string()))?;
        SimpleType::new(family, rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SimpleType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A root, written over the simple roots.
///
/// Ordering is by height, then by descending lexicographic order of the
/// coefficients, so `α1` comes before `α2` and negative roots precede
/// positive ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(Vec<i32>);

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Root(coeffs)
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn zero(rank: usize) -> Self {
        Root(vec![0; rank])
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }

    /// Indices (0-based) of the simple roots with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
    }

    /// True when every coefficient of `other - self` is nonnegative.
    pub fn is_below(&self, other: &Root) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn scaled(&self, k: i32) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }
}

impl std::ops::Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl std::ops::Add for &Root {
    type Output = Root;
    fn add(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &Root {
    type Output = Root;
    fn sub(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Root {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}α{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}α{}", i + 1)?;
            }
            first = false;
        }
        Ok(())
    }
}

/// A set of roots closed under negation and under root addition inside Δ,
/// stored by its positive half in root order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsystem {
    positive: Vec<Root>,
}

impl Subsystem {
    pub fn from_positive(mut roots: Vec<Root>) -> Self {
        roots.sort();
        roots.dedup();
        Subsystem { positive: roots }
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn len(&self) -> usize {
        self.positive.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positive.is_empty()
    }

    /// Membership for roots of either sign.
    pub fn contains(&self, root: &Root) -> bool {
        if root.is_negative() {
            self.positive.binary_search(&-root).is_ok()
        } else {
            self.positive.binary_search(root).is_ok()
        }
    }
}

fn dynkin_data(t: SimpleType) -> (Vec<i64>, Vec<(usize, usize, i64)>) {
    let r = t.rank();
    let chain = |len: usize, w: i64| -> Vec<(usize, usize, i64)> {
        (0..len.saturating_sub(1)).map(|i| (i, i + 1, w)).collect()
    };
    match t.family() {
        Family::A => (vec![2; r], chain(r, -1)),
        Family::B => {
            let mut lengths = vec![4; r];
            lengths[r - 1] = 2;
            (lengths, chain(r, -2))
        }
        Family::C => {
            let mut lengths = vec![2; r];
            lengths[r - 1] = 4;
            let mut edges = chain(r, -1);
            edges[r - 2].2 = -2;
            (lengths, edges)
        }
        Family::D => {
            let mut edges = chain(r - 1, -1);
            edges.push((r - 3, r - 1, -1));
            (vec![2; r], edges)
        }
        Family::E => {
            let mut edges = vec![(0, 2, -1), (1, 3, -1)];
            for i in 2..r - 1 {
                edges.push((i, i + 1, -1));
            }
            (vec![2; r], edges)
        }
        Family::F => (vec![4, 4, 2, 2], vec![(0, 1, -2), (1, 2, -2), (2, 3, -1)]),
        Family::G => (vec![2, 6], vec![(0, 1, -3)]),
    }
}

fn gram_matrix(t: SimpleType) -> Vec<Vec<i64>> {
    let (lengths, edges) = dynkin_data(t);
    let r = t.rank();
    let mut g = vec![vec![0i64; r]; r];
    for (i, &l) in lengths.iter().enumerate() {
        g[i][i] = l;
    }
    for (i, j, w) in edges {
        g[i][j] = w;
        g[j][i] = w;
    }
    g
}

/// Cartan matrix `n(i, j) = 2(α_i, α_j) / (α_j, α_j)` in Bourbaki numbering.
pub fn cartan_matrix(t: SimpleType) -> Vec<Vec<i32>> {
    let g = gram_matrix(t);
    let r = t.rank();
    (0..r)
        .map(|i| (0..r).map(|j| (2 * g[i][j] / g[j][j]) as i32).collect())
        .collect()
}

/// All positive roots of the root system with Cartan matrix `cartan`
/// (convention `n(i, j) = α_i(H_j)`), in root order.
///
/// Roots are grown one height at a time: `α + α_i` is a root exactly when the
/// `α_i`-string through `α` extends upward, which is decided from the part of
/// the string already found below `α`.
pub fn enumerate_positive_roots(cartan: &[Vec<i32>]) -> Vec<Root> {
    let r = cartan.len();
    let mut known: BTreeSet<Root> = BTreeSet::new();
    let mut layer: Vec<Root> = (0..r).map(|i| Root::simple(r, i)).collect();
    while !layer.is_empty() {
        known.extend(layer.iter().cloned());
        let mut next = BTreeSet::new();
        for alpha in &layer {
            for i in 0..r {
                let simple = Root::simple(r, i);
                if *alpha == simple {
                    continue;
                }
                // down-length of the string through alpha
                let mut p = 0;
                let mut cur = alpha - &simple;
                while known.contains(&cur) {
                    p += 1;
                    cur = &cur - &simple;
                }
                let pairing: i32 = (0..r).map(|j| alpha.0[j] * cartan[j][i]).sum();
                if p - pairing > 0 {
                    next.insert(alpha + &simple);
                }
            }
        }
        layer = next.into_iter().collect();
    }
    known.into_iter().collect()
}

/// A simple root system with its positive roots and invariant form.
#[derive(Debug, Clone)]
pub struct RootSystem {
    simple_type: SimpleType,
    cartan: Vec<Vec<i32>>,
    gram: Vec<Vec<i64>>,
    positive: Vec<Root>,
    lookup: HashMap<Root, usize>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.simple_type == other.simple_type
    }
}

impl Eq for RootSystem {}

impl RootSystem {
    pub fn new(simple_type: SimpleType) -> Self {
        let cartan = cartan_matrix(simple_type);
        let gram = gram_matrix(simple_type);
        let positive = enumerate_positive_roots(&cartan);
        let lookup = positive
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        RootSystem {
            simple_type,
            cartan,
            gram,
            positive,
            lookup,
        }
    }

    pub fn simple_type(&self) -> SimpleType {
        self.simple_type
    }

    pub fn rank(&self) -> usize {
        self.simple_type.rank()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Gram matrix of the simple roots under the invariant form.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Symmetrizer `d_j = (α_j, α_j) / 2`, so that `n(i, j) d_j = (α_i, α_j)`.
    pub fn symmetrizer(&self) -> Vec<i64> {
        (0..self.rank()).map(|j| self.gram[j][j] / 2).collect()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple_root(&self, i: usize) -> Root {
        Root::simple(self.rank(), i)
    }

    /// Position of a positive root in [`positive_roots`](Self::positive_roots).
    pub fn index_of(&self, root: &Root) -> Option<usize> {
        self.lookup.get(root).copied()
    }

    /// The whole root system viewed as a subsystem of itself.
    pub fn full(&self) -> Subsystem {
        Subsystem {
            positive: self.positive.clone(),
        }
    }

    pub fn is_root(&self, v: &[i32]) -> bool {
        if v.len() != self.rank() {
            return false;
        }
        let root = Root(v.to_vec());
        if root.is_positive() {
            self.lookup.contains_key(&root)
        } else if root.is_negative() {
            self.lookup.contains_key(&-&root)
        } else {
            false
        }
    }

    fn check_len(&self, v: &Root) -> Result<()> {
        if v.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: v.rank(),
            });
        }
        Ok(())
    }

    /// The invariant form `(a, b)`, with short roots of squared length 2.
    pub fn inner_product(&self, a: &Root, b: &Root) -> Result<i64> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.form(a, b))
    }

    pub(crate) fn form(&self, a: &Root, b: &Root) -> i64 {
        let r = self.rank();
        let mut acc = 0i64;
        for i in 0..r {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..r {
                acc += a.0[i] as i64 * b.0[j] as i64 * self.gram[i][j];
            }
        }
        acc
    }

    /// `⟨a, b^∨⟩ = 2(a, b) / (b, b)`.
    pub fn pairing(&self, a: &Root, b: &Root) -> i64 {
        2 * self.form(a, b) / self.form(b, b)
    }

    /// Coefficients of the coroot `H_β = 2β/(β,β)` over the simple coroots.
    pub fn coroot_coefficients(&self, beta: &Root) -> Vec<i64> {
        let bb = self.form(beta, beta);
        beta.0
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let num = c as i64 * self.gram[i][i];
                debug_assert_eq!(num % bb, 0);
                num / bb
            })
            .collect()
    }

    /// The interval `[p, q]` (with `p <= 0 <= q`) of integers `k` for which
    /// `beta + k·alpha` is a root.
    pub fn root_string(&self, alpha: &Root, beta: &Root) -> Result<(i32, i32)> {
        self.check_len(alpha)?;
        self.check_len(beta)?;
        if !self.is_root(alpha.coeffs()) {
            return Err(Error::NotARoot(alpha.0.clone()));
        }
        if !self.is_root(beta.coeffs()) {
            return Err(Error::NotARoot(beta.0.clone()));
        }
        if alpha == beta || *alpha == -beta {
            return Err(Error::DegenerateString);
        }
        let mut q = 0;
        while self.is_root((beta + &alpha.scaled(q + 1)).coeffs()) {
            q += 1;
        }
        let mut p = 0;
        while self.is_root((beta + &alpha.scaled(p - 1)).coeffs()) {
            p -= 1;
        }
        Ok((p, q))
    }

    /// Neither `a + b` nor `a - b` is a root (the zero vector counts as a non-root).
    pub fn strongly_orthogonal(&self, a: &Root, b: &Root) -> bool {
        !self.is_root((a + b).coeffs()) && !self.is_root((a - b).coeffs())
    }

    /// The highest root of the (irreducible) full system.
    pub fn highest_root(&self) -> Root {
        self.positive
            .last()
            .cloned()
            .expect("a simple root system has positive roots")
    }

    /// The highest root of an irreducible subsystem.
    pub fn subsystem_highest_root(&self, sub: &Subsystem) -> Result<Root> {
        if sub.is_empty() {
            return Err(Error::Empty);
        }
        let comps = self.irreducible_components(sub);
        if comps.len() != 1 {
            return Err(Error::Reducible(comps.len()));
        }
        Ok(sub.positive.last().cloned().expect("nonempty"))
    }

    /// Roots of `sub` orthogonal to `beta`.
    pub fn orthogonal_subsystem(&self, sub: &Subsystem, beta: &Root) -> Subsystem {
        Subsystem {
            positive: sub
                .positive
                .iter()
                .filter(|a| self.form(a, beta) == 0)
                .cloned()
                .collect(),
        }
    }

    /// Simple roots of a subsystem: its positive roots that are not a sum of
    /// two of its positive roots.
    pub fn simple_roots_of(&self, sub: &Subsystem) -> Vec<Root> {
        let members: BTreeSet<&Root> = sub.positive.iter().collect();
        sub.positive
            .iter()
            .filter(|gamma| {
                !sub.positive.iter().any(|a| {
                    let rest = *gamma - a;
                    rest.is_positive() && members.contains(&rest)
                })
            })
            .cloned()
            .collect()
    }

    /// Splits a subsystem into irreducible pieces.
    ///
    /// Two roots lie in the same component exactly when they are joined by a
    /// chain of non-orthogonal roots. Components are ordered by their first
    /// root in root order.
    pub fn irreducible_components(&self, sub: &Subsystem) -> Vec<Subsystem> {
        let n = sub.positive.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.form(&sub.positive[i], &sub.positive[j]) != 0 {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: Vec<(usize, Vec<Root>)> = Vec::new();
        for i in 0..n {
            let rep = find(&mut parent, i);
            match groups.iter_mut().find(|(r, _)| *r == rep) {
                Some((_, roots)) => roots.push(sub.positive[i].clone()),
                None => groups.push((rep, vec![sub.positive[i].clone()])),
            }
        }
        // positive roots are in root order, so groups already are too
        groups
            .into_iter()
            .map(|(_, roots)| Subsystem { positive: roots })
            .collect()
    }

    /// Cartan type of an irreducible subsystem, read off from its rank, its
    /// number of positive roots and its root lengths. `B2` and `C2` coincide
    /// and are reported as `B2`; `D3` is reported as `A3`.
    pub fn classify(&self, sub: &Subsystem) -> Option<SimpleType> {
        if sub.is_empty() || self.irreducible_components(sub).len() != 1 {
            return None;
        }
        let rank = self.simple_roots_of(sub).len();
        let count = sub.len();
        let lengths: Vec<i64> = sub.positive.iter().map(|a| self.form(a, a)).collect();
        let max_len = *lengths.iter().max()?;
        let min_len = *lengths.iter().min()?;
        let long = lengths.iter().filter(|&&l| l == max_len).count();
        let family = if max_len == min_len {
            if count == rank * (rank + 1) / 2 {
                Family::A
            } else if rank >= 4 && count == rank * (rank - 1) {
                Family::D
            } else {
                Family::E
            }
        } else if rank == 2 && count == 6 {
            Family::G
        } else if rank == 4 && count == 24 {
            Family::F
        } else if long == rank * (rank - 1) {
            Family::B
        } else {
            Family::C
        };
        SimpleType::new(family, rank).ok()
    }
}
