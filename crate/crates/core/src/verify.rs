//! Exhaustive property suites over a root system, its cascade and the
//! algebras built from them. Each suite returns one [`SuiteOutcome`] per
//! simple type.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cascade::{self, Cascade, CascadeIndex};
use crate::chevalley::{self, SignConvention, StructureTable, Subalgebra};
use crate::error::{Error, Result};
use crate::index::{self, IndexReport, SamplingConfig};
use crate::linalg;
use crate::root_system::{Family, Root, RootSystem, SimpleType};

/// Borel index for each simple type: `⌊r/2⌋` for `A_r`, 1 for `D_{2k+1}`,
/// 2 for `E6`, 0 otherwise.
pub fn expected_borel_index(t: SimpleType) -> usize {
    let r = t.rank();
    match t.family() {
        Family::A => r / 2,
        Family::D => r % 2,
        Family::E if r == 6 => 2,
        _ => 0,
    }
}

/// Number of strongly orthogonal roots in the cascade.
pub fn expected_cascade_size(t: SimpleType) -> usize {
    let r = t.rank();
    match t.family() {
        Family::A => (r + 1) / 2,
        Family::B | Family::C => r,
        Family::D => 2 * (r / 2),
        Family::E => match r {
            6 => 4,
            7 => 7,
            _ => 8,
        },
        Family::F => 4,
        Family::G => 2,
    }
}

/// Cascade roots that are listed explicitly for G2, F4 and E6.
pub fn reference_cascade(t: SimpleType) -> Option<Vec<Root>> {
    let list: &[&[i32]] = match (t.family(), t.rank()) {
        (Family::G, 2) => &[&[3, 2], &[1, 0]],
        (Family::F, 4) => &[&[2, 3, 4, 2], &[0, 1, 2, 2], &[0, 1, 2, 0], &[0, 1, 0, 0]],
        (Family::E, 6) => &[
            &[1, 2, 2, 3, 2, 1],
            &[1, 0, 1, 1, 1, 1],
            &[0, 0, 1, 1, 1, 0],
            &[0, 0, 0, 1, 0, 0],
        ],
        _ => return None,
    };
    Some(list.iter().map(|v| Root::new(v.to_vec())).collect())
}

/// The types covered by default: every simple type of rank at most 8.
pub fn default_types() -> Vec<SimpleType> {
    SimpleType::all_up_to(8)
}

/// Positive roots generated by simple reflections from the simple roots.
/// Independent of the height-by-height enumeration in `root_system`.
pub fn reflection_closure(rs: &RootSystem) -> BTreeSet<Root> {
    let r = rs.rank();
    let n = rs.cartan();
    let mut seen: BTreeSet<Root> = (0..r).map(|i| Root::simple(r, i)).collect();
    let mut frontier: Vec<Root> = seen.iter().cloned().collect();
    while let Some(v) = frontier.pop() {
        for i in 0..r {
            let pairing: i32 = (0..r).map(|j| v.coeffs()[j] * n[j][i]).sum();
            let mut w = v.coeffs().to_vec();
            w[i] -= pairing;
            let w = Root::new(w);
            if !seen.contains(&w) {
                seen.insert(w.clone());
                frontier.push(w);
            }
        }
    }
    seen.into_iter().filter(Root::is_positive).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Roots,
    HighestRoot,
    RootStrings,
    StrongOrthogonality,
    Cascade,
    GammaPartition,
    Heisenberg,
    Jacobi,
    Subalgebras,
    IndexTable,
    RegularForm,
    DmFrobenius,
    RankOracle,
    SignIndependence,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::Roots,
        Suite::HighestRoot,
        Suite::RootStrings,
        Suite::StrongOrthogonality,
        Suite::Cascade,
        Suite::GammaPartition,
        Suite::Heisenberg,
        Suite::Jacobi,
        Suite::Subalgebras,
        Suite::IndexTable,
        Suite::RegularForm,
        Suite::DmFrobenius,
        Suite::RankOracle,
        Suite::SignIndependence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Roots => "roots",
            Suite::HighestRoot => "highest-root",
            Suite::RootStrings => "root-strings",
            Suite::StrongOrthogonality => "strong-orthogonality",
            Suite::Cascade => "cascade",
            Suite::GammaPartition => "gamma-partition",
            Suite::Heisenberg => "heisenberg",
            Suite::Jacobi => "jacobi",
            Suite::Subalgebras => "subalgebras",
            Suite::IndexTable => "index-table",
            Suite::RegularForm => "regular-form",
            Suite::DmFrobenius => "dm-frobenius",
            Suite::RankOracle => "rank-oracle",
            Suite::SignIndependence => "sign-independence",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub target: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub sampling: SamplingConfig,
    /// Negate one structure constant before checking the Jacobi identity.
    pub inject_sign_fault: bool,
}

/// Everything the suites need for one simple type, built once.
pub struct Context {
    pub rs: RootSystem,
    pub table: Arc<StructureTable>,
    pub cascade: Cascade,
}

impl Context {
    pub fn new(t: SimpleType) -> Self {
        let rs = RootSystem::new(t);
        let table = Arc::new(StructureTable::new(&rs));
        let cascade = Cascade::build(&rs);
        Context { rs, table, cascade }
    }
}

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn run_suite(suite: Suite, ctx: &Context, opts: &VerifyOptions) -> SuiteOutcome {
    let result: Option<Check> = match suite {
        Suite::Roots => Some(check_roots(ctx)),
        Suite::HighestRoot => Some(check_highest_root(ctx)),
        Suite::RootStrings => Some(check_root_strings(ctx)),
        Suite::StrongOrthogonality => Some(check_strong_orthogonality(ctx)),
        Suite::Cascade => Some(check_cascade(ctx)),
        Suite::GammaPartition => Some(check_gamma_partition(ctx)),
        Suite::Heisenberg => Some(check_heisenberg(ctx)),
        Suite::Jacobi => Some(check_jacobi(ctx, opts)),
        Suite::Subalgebras => Some(check_subalgebras(ctx)),
        Suite::IndexTable => Some(check_index_table(ctx, opts)),
        Suite::RegularForm => Some(check_regular_form(ctx, opts)),
        Suite::DmFrobenius => check_dm_frobenius(ctx, opts),
        Suite::RankOracle => Some(check_rank_oracle(ctx, opts)),
        Suite::SignIndependence => Some(check_sign_independence(ctx, opts)),
    };
    let (status, detail) = match result {
        None => (Status::Skip, "not applicable at this rank".to_string()),
        Some(Ok(d)) => (Status::Pass, d),
        Some(Err(d)) => (Status::Fail, d),
    };
    SuiteOutcome {
        suite: suite.name().to_string(),
        target: ctx.rs.simple_type().to_string(),
        status,
        detail,
    }
}

pub fn run_all(types: &[SimpleType], suites: &[Suite], opts: &VerifyOptions) -> Vec<SuiteOutcome> {
    let mut out = Vec::new();
    for &t in types {
        let ctx = Context::new(t);
        for &s in suites {
            out.push(run_suite(s, &ctx, opts));
        }
    }
    out
}

fn check_roots(ctx: &Context) -> Check {
    let rs = &ctx.rs;
    let t = rs.simple_type();
    let roots = rs.positive_roots();
    ensure(roots.len() == t.positive_root_count(), || {
        format!("{} positive roots, expected {}", roots.len(), t.positive_root_count())
    })?;
    ensure(roots.iter().all(Root::is_positive), || "non-positive root listed".into())?;
    ensure(roots.windows(2).all(|w| w[0] < w[1]), || "roots not in order".into())?;
    let oracle = reflection_closure(rs);
    ensure(oracle.iter().eq(roots.iter()), || {
        "reflection closure disagrees with enumeration".into()
    })?;
    for a in roots {
        for b in roots {
            let s = a + b;
            if rs.is_root(s.coeffs()) {
                ensure(rs.index_of(&s).is_some(), || format!("{s} missing"))?;
            }
        }
    }
    Ok(format!("{} positive roots", roots.len()))
}

fn check_highest_root(ctx: &Context) -> Check {
    let rs = &ctx.rs;
    let beta = rs.highest_root();
    let bb = rs.form(&beta, &beta);
    ensure(beta.coeffs().iter().all(|&c| c >= 1), || format!("{beta} has a zero coefficient"))?;
    for i in 0..rs.rank() {
        ensure(rs.form(&beta, &rs.simple_root(i)) >= 0, || format!("(β, α{}) < 0", i + 1))?;
    }
    for a in rs.positive_roots() {
        ensure(a.is_below(&beta), || format!("{a} not below {beta}"))?;
        ensure(bb >= rs.form(a, a), || format!("{a} longer than {beta}"))?;
        if *a != beta {
            let ab = rs.form(a, &beta);
            ensure(2 * ab == 0 || 2 * ab == bb, || {
                format!("2({a},β)/(β,β) not in {{0,1}}")
            })?;
            if ab > 0 {
                ensure(rs.is_root((&beta - a).coeffs()), || format!("β-{a} is not a root"))?;
            }
        }
    }
    Ok(format!("highest root {beta}"))
}

fn all_roots(rs: &RootSystem) -> Vec<Root> {
    rs.positive_roots()
        .iter()
        .flat_map(|a| [a.clone(), -a])
        .collect()
}

fn check_root_strings(ctx: &Context) -> Check {
    let rs = &ctx.rs;
    let roots = all_roots(rs);
    let mut count = 0;
    for a in &roots {
        for b in &roots {
            if a == b || *a == -b {
                continue;
            }
            let (p, q) = rs.root_string(a, b).map_err(|e| e.to_string())?;
            ensure(p + q == -(rs.pairing(b, a) as i32), || {
                format!("string of {a} through {b}: p+q != -n(b,a)")
            })?;
            // brute-force scan of the whole line
            let members: Vec<i32> = (-4..=4)
                .filter(|&k| rs.is_root((b + &a.scaled(k)).coeffs()))
                .collect();
            let expected: Vec<i32> = (p..=q).collect();
            ensure(members == expected, || format!("string of {a} through {b} has gaps"))?;
            count += 1;
        }
    }
    Ok(format!("{count} strings"))
}

fn check_strong_orthogonality(ctx: &Context) -> Check {
    let rs = &ctx.rs;
    let roots = all_roots(rs);
    let mut pairs = 0;
    for a in rs.positive_roots() {
        for g in &roots {
            if a == g || *a == -g {
                continue;
            }
            if rs.strongly_orthogonal(a, g) {
                pairs += 1;
                ensure(rs.form(a, g) == 0, || format!("{a}, {g} strongly orthogonal, not orthogonal"))?;
            }
        }
    }
    Ok(format!("{pairs} strongly orthogonal pairs"))
}

fn check_cascade(ctx: &Context) -> Check {
    let rs = &ctx.rs;
    let c = &ctx.cascade;
    let t = rs.simple_type();
    let betas = c.betas();
    ensure(c.len() == expected_cascade_size(t), || {
        format!("cascade size {}, expected {}", c.len(), expected_cascade_size(t))
    })?;
    ensure(cascade::pairwise_strongly_orthogonal(rs, &betas), || {
        "cascade roots not pairwise strongly orthogonal".into()
    })?;
    for (i, a) in betas.iter().enumerate() {
        for b in &betas[i + 1..] {
            ensure(rs.form(a, b) == 0, || format!("({a},{b}) != 0"))?;
        }
    }
    ensure(cascade::is_maximal_strongly_orthogonal(rs, &betas), || {
        "a further strongly orthogonal root exists".into()
    })?;
    ensure(betas[0] == rs.highest_root(), || "first cascade root is not the highest root".into())?;
    for node in c.nodes() {
        let top = rs
            .subsystem_highest_root(&node.subsystem)
            .map_err(|e| e.to_string())?;
        ensure(top == node.beta, || format!("{} is not highest in Δ_{}", node.beta, node.index))?;
        let perp = rs.orthogonal_subsystem(&node.subsystem, &node.beta);
        let comps = rs.irreducible_components(&perp);
        ensure(comps.len() == node.children.len(), || format!("children of {}", node.index))?;
        for (comp, &child) in comps.iter().zip(&node.children) {
            let child = &c.nodes()[child];
            ensure(comp == &child.subsystem, || format!("subsystem of {}", child.index))?;
            ensure(node.index.is_prefix_of(&child.index), || format!("word of {}", child.index))?;
        }
    }
    if let Some(reference) = reference_cascade(t) {
        let got: BTreeSet<&Root> = betas.iter().collect();
        let want: BTreeSet<&Root> = reference.iter().collect();
        ensure(got == want, || "cascade differs from the reference list".into())?;
    }
    Ok(format!("{} strongly orthogonal roots", c.len()))
}

fn gamma_sets(ctx: &Context) -> Vec<(CascadeIndex, Root, Vec<Root>)> {
    ctx.cascade
        .nodes()
        .iter()
        .map(|n| {
            let g = ctx.cascade.gamma_set(&ctx.rs, &n.index).expect("known index");
            (n.index.clone(), n.beta.clone(), g.roots)
        })
        .collect()
}

fn check_gamma_partition(ctx: &Context) -> Check {
    let rs = &ctx.rs;
    let mut seen: BTreeSet<Root> = BTreeSet::new();
    let mut total = 0;
    for (k, beta, gamma) in gamma_sets(ctx) {
        ensure(gamma.contains(&beta), || format!("Γ_{k} misses β_{k}"))?;
        ensure(gamma.iter().all(Root::is_positive), || format!("Γ_{k} has a negative root"))?;
        let node = ctx.cascade.node(&k).map_err(|e| e.to_string())?;
        let perp = rs.orthogonal_subsystem(&node.subsystem, &beta);
        ensure(gamma.len() + perp.len() == node.subsystem.len(), || {
            format!("Γ_{k} is not the complement of β^⊥")
        })?;
        total += gamma.len();
        for g in gamma {
            ensure(seen.insert(g.clone()), || format!("{g} lies in two Γ sets"))?;
        }
    }
    ensure(seen.iter().eq(rs.positive_roots().iter()), || "Γ sets do not cover Δ+".into())?;
    Ok(format!("{total} roots in {} blocks", ctx.cascade.len()))
}

fn check_heisenberg(ctx: &Context) -> Check {
    let rs = &ctx.rs;
    let sets = gamma_sets(ctx);
    let mut owner: HashMap<Root, CascadeIndex> = HashMap::new();
    for (k, _, gamma) in &sets {
        for g in gamma {
            owner.insert(g.clone(), k.clone());
        }
    }
    for (k, beta, gamma) in &sets {
        let bb = rs.form(beta, beta);
        let rest: Vec<&Root> = gamma.iter().filter(|g| *g != beta).collect();
        for g in &rest {
            ensure(2 * rs.form(beta, g) == bb, || format!("(β_{k},{g}) != (β,β)/2"))?;
            let diff = beta - *g;
            ensure(gamma.contains(&diff) && diff != *beta, || format!("β_{k}-{g} not in Γ_{k}"))?;
            for d in &rest {
                let s = *g + *d;
                if rs.is_root(s.coeffs()) {
                    ensure(s == *beta, || format!("{g}+{d} in Δ but != β_{k}"))?;
                }
            }
        }
    }
    // cross-level closure
    let mut cross = 0;
    for (k, _, gk) in &sets {
        for (l, _, gl) in &sets {
            for g in gk {
                for d in gl {
                    let s = g + d;
                    if !rs.is_root(s.coeffs()) {
                        continue;
                    }
                    cross += 1;
                    let m = ctx
                        .cascade
                        .min_index(k, l)
                        .ok_or_else(|| format!("{g}+{d} is a root but {k}, {l} are incomparable"))?;
                    ensure(owner.get(&s) == Some(m), || format!("{g}+{d} not in Γ_{m}"))?;
                }
            }
        }
    }
    Ok(format!("{} blocks, {cross} cross sums", sets.len()))
}

fn check_jacobi(ctx: &Context, opts: &VerifyOptions) -> Check {
    let faulty;
    let st: &StructureTable = if opts.inject_sign_fault {
        faulty = ctx.table.with_flipped_constant();
        match &faulty {
            Some(f) => f,
            None => return Ok("no constant to flip at rank 1".into()),
        }
    } else {
        &ctx.table
    };
    ensure(st.is_antisymmetric(), || "bracket table is not antisymmetric".into())?;
    if let Some((i, j, k)) = st.jacobi_violation() {
        let b = st.basis();
        return Err(format!("Jacobi fails on ({}, {}, {})", b[i], b[j], b[k]));
    }
    Ok(format!("dim {}, all triples", st.dim()))
}

/// Parabolics examined: all `2^rank` subsets up to rank 5, otherwise the
/// empty set, singletons and the full set.
pub fn parabolic_subsets(rank: usize) -> Vec<Vec<usize>> {
    if rank <= 5 {
        (0u32..1 << rank)
            .map(|mask| (1..=rank).filter(|i| mask & (1 << (i - 1)) != 0).collect())
            .collect()
    } else {
        let mut out = vec![Vec::new()];
        out.extend((1..=rank).map(|i| vec![i]));
        out.push((1..=rank).collect());
        out
    }
}

fn check_subalgebra_basics(sub: &Subalgebra, what: &str) -> std::result::Result<(), String> {
    ensure(sub.check_embedding(), || format!("{what}: induced bracket mismatch"))?;
    ensure(sub.algebra().jacobi_violation().is_none(), || format!("{what}: Jacobi fails"))
}

fn check_subalgebras(ctx: &Context) -> Check {
    let rs = &ctx.rs;
    let st = &ctx.table;
    let c = &ctx.cascade;
    let b = chevalley::borel(st).map_err(|e| e.to_string())?;
    check_subalgebra_basics(&b, "borel")?;
    let n = chevalley::nilradical_n(st).map_err(|e| e.to_string())?;
    check_subalgebra_basics(&n, "n+")?;
    let sets = gamma_sets(ctx);
    let roots = all_roots(rs);
    let subsets = parabolic_subsets(rs.rank());
    for ex in &subsets {
        let q = chevalley::q_plus(rs, ex).map_err(|e| e.to_string())?;
        let m = chevalley::parabolic_nilradical(st, ex).map_err(|e| e.to_string())?;
        check_subalgebra_basics(&m, &format!("m{ex:?}"))?;
        for g in &q {
            // roots of the parabolic: Δ+ and the negative Levi roots
            let levi = |d: &Root| d.support().all(|i| !ex.contains(&(i + 1)));
            for d in roots.iter().filter(|d| d.is_positive() || levi(d)) {
                let s = g + d;
                if s.is_positive() && rs.is_root(s.coeffs()) {
                    ensure(q.contains(&s), || format!("{ex:?}: {g}+{d} leaves Q+"))?;
                }
            }
        }
        for (k, beta, gamma) in &sets {
            if gamma.iter().any(|g| q.contains(g)) {
                ensure(q.contains(beta), || format!("{ex:?}: Q+ meets Γ_{k} but misses β_{k}"))?;
            }
        }
        let support = chevalley::cascade_support(c, &q);
        ensure(c.is_downward_closed(&support), || format!("{ex:?}: I(Q+) not parabolic"))?;

        let dm = chevalley::build_d_m(st, c, &q).map_err(|e| e.to_string())?;
        check_subalgebra_basics(&dm, &format!("d_m{ex:?}"))?;
        let dm_roots: BTreeSet<usize> = dm
            .members()
            .iter()
            .filter(|v| v.len() == 1 && v[0].0 >= rs.rank())
            .map(|v| v[0].0)
            .collect();
        ensure(q.iter().all(|a| dm_roots.contains(&st.x(a).unwrap())), || {
            format!("{ex:?}: m is not inside d_m")
        })?;
        let m_roots: BTreeSet<usize> = q.iter().map(|a| st.x(a).unwrap()).collect();
        for u in dm.members() {
            for v in m.members() {
                let w = st.bracket_vectors(u, v);
                ensure(w.iter().all(|(k, _)| m_roots.contains(k)), || {
                    format!("{ex:?}: [d_m, m] not in m")
                })?;
            }
            for v in b.members() {
                let w = st.bracket_vectors(v, u);
                ensure(w.iter().all(|(k, _)| dm_roots.contains(k)), || {
                    format!("{ex:?}: d_m is not an ideal of b")
                })?;
            }
        }
    }
    Ok(format!("{} parabolics", subsets.len()))
}

fn borel_report(st: &Arc<StructureTable>, cfg: &SamplingConfig) -> std::result::Result<IndexReport, String> {
    let b = chevalley::borel(st).map_err(|e| e.to_string())?;
    index::index_estimate(&b, cfg.samples, cfg.seed, cfg.coeff_bound).map_err(|e| e.to_string())
}

fn check_index_table(ctx: &Context, opts: &VerifyOptions) -> Check {
    let t = ctx.rs.simple_type();
    let r = borel_report(&ctx.table, &opts.sampling)?;
    let want = expected_borel_index(t);
    ensure(r.index == want, || format!("index {}, expected {want}", r.index))?;
    ensure(r.index == t.rank() - ctx.cascade.len(), || {
        format!("index {} != rank - |cascade| = {}", r.index, t.rank() - ctx.cascade.len())
    })?;
    ensure((r.dim - r.index) % 2 == 0, || "parity".into())?;
    Ok(format!("i(b) = {}", r.index))
}

fn check_regular_form(ctx: &Context, opts: &VerifyOptions) -> Check {
    let r = borel_report(&ctx.table, &opts.sampling)?;
    let casc = r.cascade_form_index.ok_or("no cascade form")?;
    let sampled = r.sampled_index.ok_or("no samples")?;
    ensure(casc == sampled && casc == r.index, || {
        format!("cascade form index {casc}, sampled minimum {sampled}")
    })?;
    Ok(format!("cascade form attains {casc}"))
}

fn check_dm_frobenius(ctx: &Context, opts: &VerifyOptions) -> Option<Check> {
    let rs = &ctx.rs;
    if rs.rank() > 5 {
        return None;
    }
    let cfg = &opts.sampling;
    let run = || -> Check {
        let subsets = parabolic_subsets(rs.rank());
        for ex in &subsets {
            let q = chevalley::q_plus(rs, ex).map_err(|e| e.to_string())?;
            let dm = chevalley::build_d_m(&ctx.table, &ctx.cascade, &q).map_err(|e| e.to_string())?;
            let r = index::estimate_index("d_m", dm.algebra(), cfg, None).map_err(|e| e.to_string())?;
            ensure(r.index == 0, || format!("d_m for {ex:?} has index {}", r.index))?;
        }
        Ok(format!("{} parabolics, all Frobenius", subsets.len()))
    };
    Some(run())
}

/// Exact rank against rank modulo each of [`linalg::CHECK_PRIMES`].
pub fn rank_agrees_with_oracle(m: &index::SkewFormMatrix) -> bool {
    let exact = index::rank_exact(m);
    linalg::CHECK_PRIMES
        .iter()
        .all(|&p| linalg::modular_rank(m.entries(), p) == Some(exact))
}

fn check_rank_oracle(ctx: &Context, opts: &VerifyOptions) -> Check {
    let b = chevalley::borel(&ctx.table).map_err(|e| e.to_string())?;
    let mut forms = vec![index::cascade_form(&b, &ctx.cascade).map_err(|e| e.to_string())?];
    let r = borel_report(&ctx.table, &opts.sampling)?;
    let witness = index::LinearForm::from_sparse(b.dim(), &r.witness).map_err(|e| e.to_string())?;
    forms.push(witness);
    forms.push(index::LinearForm::zero(b.dim()));
    for (n, f) in forms.iter().enumerate() {
        let m = index::form_matrix(b.algebra(), f).map_err(|e| e.to_string())?;
        ensure(rank_agrees_with_oracle(&m), || format!("form #{n}: modular rank disagrees"))?;
    }
    Ok(format!("{} matrices", forms.len()))
}

fn check_sign_independence(ctx: &Context, opts: &VerifyOptions) -> Check {
    let rs = &ctx.rs;
    let base = borel_report(&ctx.table, &opts.sampling)?.index;
    for seed in [11u64, 12] {
        let st = Arc::new(StructureTable::with_signs(rs, SignConvention::Seeded(seed)));
        ensure(st.jacobi_violation().is_none(), || format!("seed {seed}: Jacobi fails"))?;
        let other = borel_report(&st, &opts.sampling)?.index;
        ensure(other == base, || format!("seed {seed}: index {other} vs {base}"))?;
        if rs.rank() <= 3 {
            for ex in parabolic_subsets(rs.rank()) {
                let q = chevalley::q_plus(rs, &ex).map_err(|e| e.to_string())?;
                let dm = chevalley::build_d_m(&st, &ctx.cascade, &q).map_err(|e| e.to_string())?;
                let r = index::estimate_index("d_m", dm.algebra(), &opts.sampling, None)
                    .map_err(|e| e.to_string())?;
                ensure(r.index == 0, || format!("seed {seed}: d_m{ex:?} index {}", r.index))?;
            }
        }
    }
    Ok(format!("index {base} under 3 sign choices"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_types_pass_everything() {
        let types: Vec<SimpleType> = ["A1", "A2", "B2", "G2", "C3"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        for o in run_all(&types, &Suite::ALL, &VerifyOptions::default()) {
            assert_eq!(o.status, Status::Pass, "{o:?}");
        }
    }

    #[test]
    fn injected_fault_is_caught() {
        let ctx = Context::new("A2".parse().unwrap());
        let opts = VerifyOptions {
            inject_sign_fault: true,
            ..Default::default()
        };
        assert_eq!(run_suite(Suite::Jacobi, &ctx, &opts).status, Status::Fail);
    }

    #[test]
    fn dm_suite_skips_high_rank() {
        let ctx = Context::new("E6".parse().unwrap());
        let o = run_suite(Suite::DmFrobenius, &ctx, &VerifyOptions::default());
        assert_eq!(o.status, Status::Skip);
    }

    #[test]
    fn parabolic_subset_enumeration() {
        assert_eq!(parabolic_subsets(3).len(), 8);
        assert_eq!(parabolic_subsets(6).len(), 8);
    }
}
