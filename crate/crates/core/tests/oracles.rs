//! Checks against independent oracles: closed-form root counts and highest
//! roots, Weyl-group orbits, brute-force root strings and a modular rank
//! written here from scratch.

use std::collections::BTreeSet;
use std::sync::Arc;

use lie_cascade::index::{self, LinearForm};
use lie_cascade::{chevalley, Family, Root, RootSystem, SimpleType, StructureTable};
use num_rational::Rational64;

fn types(max: usize) -> Vec<SimpleType> {
    SimpleType::all_up_to(max)
}

fn classical_count(t: SimpleType) -> usize {
    let r = t.rank();
    match t.family() {
        Family::A => r * (r + 1) / 2,
        Family::B | Family::C => r * r,
        Family::D => r * (r - 1),
        Family::E => [0, 0, 0, 0, 0, 0, 36, 63, 120][r],
        Family::F => 24,
        Family::G => 6,
    }
}

fn classical_highest_root(t: SimpleType) -> Vec<i32> {
    let r = t.rank();
    match t.family() {
        Family::A => vec![1; r],
        Family::B => {
            let mut v = vec![2; r];
            v[0] = 1;
            v
        }
        Family::C => {
            let mut v = vec![2; r];
            v[r - 1] = 1;
            v
        }
        Family::D => {
            let mut v = vec![2; r];
            v[0] = 1;
            v[r - 2] = 1;
            v[r - 1] = 1;
            v
        }
        Family::E => match r {
            6 => vec![1, 2, 2, 3, 2, 1],
            7 => vec![2, 2, 3, 4, 3, 2, 1],
            _ => vec![2, 3, 4, 6, 5, 4, 3, 2],
        },
        Family::F => vec![2, 3, 4, 2],
        Family::G => vec![3, 2],
    }
}

/// Orbit of the simple roots under the Weyl group, computed with the
/// reflection formula on coefficient vectors.
fn weyl_orbit(cartan: &[Vec<i32>]) -> BTreeSet<Vec<i32>> {
    let r = cartan.len();
    let mut seen = BTreeSet::new();
    let mut stack: Vec<Vec<i32>> = (0..r)
        .map(|i| (0..r).map(|j| i32::from(i == j)).collect())
        .collect();
    while let Some(v) = stack.pop() {
        if !seen.insert(v.clone()) {
            continue;
        }
        for i in 0..r {
            let k: i32 = (0..r).map(|j| v[j] * cartan[j][i]).sum();
            let mut w = v.clone();
            w[i] -= k;
            if !seen.contains(&w) {
                stack.push(w);
            }
        }
    }
    seen
}

#[test]
fn positive_roots_match_weyl_orbit_and_counts() {
    for t in types(8) {
        let rs = RootSystem::new(t);
        let orbit = weyl_orbit(rs.cartan());
        assert_eq!(orbit.len(), 2 * classical_count(t), "{t}");
        let positive: BTreeSet<Vec<i32>> = orbit
            .into_iter()
            .filter(|v| v.iter().all(|&c| c >= 0))
            .collect();
        let ours: BTreeSet<Vec<i32>> = rs.positive_roots().iter().map(|r| r.coeffs().to_vec()).collect();
        assert_eq!(ours, positive, "{t}");
        assert_eq!(rs.positive_roots().len(), classical_count(t), "{t}");
    }
}

#[test]
fn highest_roots_match_tables() {
    for t in types(8) {
        let rs = RootSystem::new(t);
        assert_eq!(rs.highest_root().coeffs(), classical_highest_root(t).as_slice(), "{t}");
    }
}

#[test]
fn root_strings_by_brute_force() {
    for t in types(4) {
        let rs = RootSystem::new(t);
        let all: Vec<Root> = rs
            .positive_roots()
            .iter()
            .flat_map(|a| [a.clone(), -a])
            .collect();
        let set: BTreeSet<Vec<i32>> = all.iter().map(|r| r.coeffs().to_vec()).collect();
        for a in &all {
            for b in &all {
                if a == b || *a == -b {
                    continue;
                }
                let on_line: Vec<i32> = (-5..=5)
                    .filter(|&k| {
                        let v: Vec<i32> = b.coeffs().iter().zip(a.coeffs()).map(|(x, y)| x + k * y).collect();
                        set.contains(&v)
                    })
                    .collect();
                let (p, q) = rs.root_string(a, b).unwrap();
                assert_eq!(on_line, (p..=q).collect::<Vec<_>>(), "{t}: {a} through {b}");
                assert!(q - p <= 3);
            }
        }
    }
}

#[test]
fn strong_orthogonality_implies_orthogonality() {
    for t in types(4) {
        let rs = RootSystem::new(t);
        let all: Vec<Root> = rs
            .positive_roots()
            .iter()
            .flat_map(|a| [a.clone(), -a])
            .collect();
        for a in &all {
            for g in &all {
                if a == g || *a == -g {
                    continue;
                }
                let sum = a + g;
                let diff = a - g;
                let so = !rs.is_root(sum.coeffs()) && !rs.is_root(diff.coeffs());
                assert_eq!(so, rs.strongly_orthogonal(a, g), "{t}: {a}, {g}");
                if so {
                    assert_eq!(rs.inner_product(a, g).unwrap(), 0, "{t}: {a}, {g}");
                }
            }
        }
    }
}

const P: i128 = 1_000_000_007;

fn inv(a: i128) -> i128 {
    let (mut r, mut e, mut b) = (1i128, P - 2, a.rem_euclid(P));
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Gaussian elimination over GF(10^9+7), written independently of the library.
fn rank_mod(m: &[Vec<Rational64>]) -> usize {
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| (*x.numer() as i128).rem_euclid(P) * inv(*x.denom() as i128) % P)
                .collect()
        })
        .collect();
    let n = a.len();
    let cols = if n == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..n).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        let iv = inv(a[rank][c]);
        for r in 0..n {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * iv % P;
                for k in c..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn exact_rank_matches_local_modular_rank() {
    for name in ["A3", "B3", "C4", "D5", "G2", "F4", "E6"] {
        let rs = RootSystem::new(name.parse().unwrap());
        let st = Arc::new(StructureTable::new(&rs));
        let b = chevalley::borel(&st).unwrap();
        let dim = b.dim();
        let forms = [
            LinearForm::zero(dim),
            LinearForm::dual(dim, dim - 1),
            LinearForm::from_integers(&(0..dim as i64).map(|i| (i * 37) % 11 - 5).collect::<Vec<_>>()),
        ];
        for f in &forms {
            let m = index::form_matrix(b.algebra(), f).unwrap();
            assert_eq!(index::rank_exact(&m), rank_mod(m.entries()), "{name}");
        }
    }
}

#[test]
fn structure_constants_match_string_lengths() {
    for t in types(6) {
        let rs = RootSystem::new(t);
        let st = StructureTable::new(&rs);
        let all: Vec<Root> = rs
            .positive_roots()
            .iter()
            .flat_map(|a| [a.clone(), -a])
            .collect();
        for a in &all {
            for b in &all {
                let s = a + b;
                if s.is_zero() || !rs.is_root(s.coeffs()) {
                    continue;
                }
                let (p, _) = rs.root_string(a, b).unwrap();
                let e = |r: &Root| if r.is_positive() { st.x(r) } else { st.y(&-r) }.unwrap();
                let br = st.bracket(e(a), e(b));
                assert_eq!(br.len(), 1, "{t}: [e{a}, e{b}]");
                assert_eq!(br[0].0, e(&s));
                assert_eq!(br[0].1.unsigned_abs() as i32, 1 - p, "{t}: N({a},{b})");
            }
        }
    }
}
