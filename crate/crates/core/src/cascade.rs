//! The cascade of strongly orthogonal roots.
//!
//! Starting from the irreducible components of a root system, take the highest
//! root of each component, pass to the roots orthogonal to it, split those into
//! irreducible components and repeat until nothing is left. Every node of the
//! resulting tree is labelled by a word `i, ij, ijk, ...` recording which
//! component was chosen at each depth.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_system::{Root, RootSystem, SimpleType, Subsystem};

/// Position of a node in the cascade tree. Letters are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CascadeIndex(Vec<u32>);

impl CascadeIndex {
    pub fn new(word: Vec<u32>) -> Result<Self> {
        if word.is_empty() || word.contains(&0) {
            return Err(Error::UnknownIndex(format!("{word:?}")));
        }
        Ok(CascadeIndex(word))
    }

    pub fn word(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// `self <= other` in the cascade order, i.e. `self` is a prefix of `other`.
    pub fn is_prefix_of(&self, other: &CascadeIndex) -> bool {
        other.0.starts_with(&self.0)
    }

    fn child(&self, letter: u32) -> CascadeIndex {
        let mut w = self.0.clone();
        w.push(letter);
        CascadeIndex(w)
    }
}

impl fmt::Display for CascadeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl FromStr for CascadeIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word = s
            .split('.')
            .map(|p| p.parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::UnknownIndex(s.to_string()))?;
        CascadeIndex::new(word)
    }
}

#[derive(Debug, Clone)]
pub struct CascadeNode {
    pub index: CascadeIndex,
    pub beta: Root,
    /// The irreducible subsystem `Δ_K` whose highest root is `beta`.
    pub subsystem: Subsystem,
    pub subsystem_type: Option<SimpleType>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// Roots of `Δ_K` pairing positively with `β_K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSet {
    pub index: CascadeIndex,
    pub roots: Vec<Root>,
}

#[derive(Debug, Clone)]
pub struct Cascade {
    nodes: Vec<CascadeNode>,
    lookup: BTreeMap<CascadeIndex, usize>,
    roots: Vec<usize>,
}

impl Cascade {
    /// Runs the highest-root recursion on the whole root system.
    pub fn build(rs: &RootSystem) -> Cascade {
        Cascade::build_from(rs, &rs.full())
    }

    /// Runs the recursion on a (possibly reducible) subsystem of `rs`.
    pub fn build_from(rs: &RootSystem, sub: &Subsystem) -> Cascade {
        let mut cascade = Cascade {
            nodes: Vec::new(),
            lookup: BTreeMap::new(),
            roots: Vec::new(),
        };
        for (k, comp) in rs.irreducible_components(sub).into_iter().enumerate() {
            let index = CascadeIndex(vec![k as u32 + 1]);
            let id = cascade.grow(rs, index, comp, None);
            cascade.roots.push(id);
        }
        cascade
    }

    fn grow(
        &mut self,
        rs: &RootSystem,
        index: CascadeIndex,
        component: Subsystem,
        parent: Option<usize>,
    ) -> usize {
        let beta = component
            .positive_roots()
            .last()
            .cloned()
            .expect("components are nonempty");
        let perp = rs.orthogonal_subsystem(&component, &beta);
        let id = self.nodes.len();
        self.nodes.push(CascadeNode {
            index: index.clone(),
            beta,
            subsystem_type: rs.classify(&component),
            subsystem: component,
            parent,
            children: Vec::new(),
        });
        self.lookup.insert(index.clone(), id);
        for (k, comp) in rs.irreducible_components(&perp).into_iter().enumerate() {
            let child = self.grow(rs, index.child(k as u32 + 1), comp, Some(id));
            self.nodes[id].children.push(child);
        }
        id
    }

    /// Nodes in depth-first preorder.
    pub fn nodes(&self) -> &[CascadeNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The cascade roots `β_K`, in node order.
    pub fn betas(&self) -> Vec<Root> {
        self.nodes.iter().map(|n| n.beta.clone()).collect()
    }

    pub fn node(&self, k: &CascadeIndex) -> Result<&CascadeNode> {
        self.lookup
            .get(k)
            .map(|&i| &self.nodes[i])
            .ok_or_else(|| Error::UnknownIndex(k.to_string()))
    }

    pub fn indices(&self) -> impl Iterator<Item = &CascadeIndex> {
        self.nodes.iter().map(|n| &n.index)
    }

    /// `l <= k`: `l` is an ancestor of `k` or equal to it.
    pub fn leq(&self, l: &CascadeIndex, k: &CascadeIndex) -> Result<bool> {
        self.node(l)?;
        self.node(k)?;
        Ok(l.is_prefix_of(k))
    }

    /// `I_K = {L : L <= K}`.
    pub fn parabolic_closure(&self, k: &CascadeIndex) -> Result<BTreeSet<CascadeIndex>> {
        let mut id = *self
            .lookup
            .get(k)
            .ok_or_else(|| Error::UnknownIndex(k.to_string()))?;
        let mut out = BTreeSet::new();
        loop {
            out.insert(self.nodes[id].index.clone());
            match self.nodes[id].parent {
                Some(p) => id = p,
                None => return Ok(out),
            }
        }
    }

    /// True when every ancestor of a member is a member.
    pub fn is_downward_closed(&self, set: &BTreeSet<CascadeIndex>) -> bool {
        set.iter().all(|k| {
            self.parabolic_closure(k)
                .map(|anc| anc.is_subset(set))
                .unwrap_or(false)
        })
    }

    pub fn gamma_set(&self, rs: &RootSystem, k: &CascadeIndex) -> Result<GammaSet> {
        let node = self.node(k)?;
        let roots = node
            .subsystem
            .positive_roots()
            .iter()
            .filter(|g| rs.form(g, &node.beta) > 0)
            .cloned()
            .collect();
        Ok(GammaSet {
            index: k.clone(),
            roots,
        })
    }

    /// Smaller of two comparable indices, if they are comparable.
    pub fn min_index<'a>(&self, a: &'a CascadeIndex, b: &'a CascadeIndex) -> Option<&'a CascadeIndex> {
        if a.is_prefix_of(b) {
            Some(a)
        } else if b.is_prefix_of(a) {
            Some(b)
        } else {
            None
        }
    }

    /// JSON-ready tree view.
    pub fn to_tree(&self) -> Vec<CascadeTree> {
        self.roots.iter().map(|&id| self.subtree(id)).collect()
    }

    fn subtree(&self, id: usize) -> CascadeTree {
        let node = &self.nodes[id];
        CascadeTree {
            word: node.index.to_string(),
            beta: node.beta.coeffs().to_vec(),
            subsystem: node.subsystem_type.map(|t| t.to_string()),
            children: node.children.iter().map(|&c| self.subtree(c)).collect(),
        }
    }
}

/// Serialized cascade node: dot-joined word, root coefficients, children.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeTree {
    pub word: String,
    pub beta: Vec<i32>,
    pub subsystem: Option<String>,
    pub children: Vec<CascadeTree>,
}

/// Pairwise strong orthogonality of a family of roots.
pub fn pairwise_strongly_orthogonal(rs: &RootSystem, roots: &[Root]) -> bool {
    roots.iter().enumerate().all(|(i, a)| {
        roots[i + 1..]
            .iter()
            .all(|b| rs.strongly_orthogonal(a, b))
    })
}

/// Maximality certificate: no positive root outside `roots` is strongly
/// orthogonal to all of `roots`.
pub fn is_maximal_strongly_orthogonal(rs: &RootSystem, roots: &[Root]) -> bool {
    rs.positive_roots()
        .iter()
        .filter(|a| !roots.contains(a))
        .all(|a| roots.iter().any(|b| !rs.strongly_orthogonal(a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    fn root(v: &[i32]) -> Root {
        Root::new(v.to_vec())
    }

    fn idx(s: &str) -> CascadeIndex {
        s.parse().unwrap()
    }

    #[test]
    fn rank_one() {
        let sys = rs("A1");
        let c = Cascade::build(&sys);
        assert_eq!(c.betas(), vec![root(&[1])]);
        assert_eq!(c.nodes()[0].index.to_string(), "1");
        assert_eq!(c.gamma_set(&sys, &idx("1")).unwrap().roots, vec![root(&[1])]);
    }

    #[test]
    fn g2_and_f4_lists() {
        let c = Cascade::build(&rs("G2"));
        assert_eq!(c.betas(), vec![root(&[3, 2]), root(&[1, 0])]);
        let c = Cascade::build(&rs("F4"));
        assert_eq!(
            c.betas(),
            vec![
                root(&[2, 3, 4, 2]),
                root(&[0, 1, 2, 2]),
                root(&[0, 1, 2, 0]),
                root(&[0, 1, 0, 0]),
            ]
        );
    }

    #[test]
    fn a4_list() {
        let c = Cascade::build(&rs("A4"));
        assert_eq!(c.betas(), vec![root(&[1, 1, 1, 1]), root(&[0, 1, 1, 0])]);
    }

    #[test]
    fn order_and_closure() {
        let sys = rs("D4");
        let c = Cascade::build(&sys);
        let words: Vec<String> = c.indices().map(|k| k.to_string()).collect();
        assert_eq!(words, ["1", "1.1", "1.2", "1.3"]);
        assert!(c.leq(&idx("1"), &idx("1")).unwrap());
        assert!(c.leq(&idx("1"), &idx("1.2")).unwrap());
        assert!(!c.leq(&idx("1.1"), &idx("1.2")).unwrap());
        assert!(!c.leq(&idx("1.2"), &idx("1.1")).unwrap());
        assert!(matches!(c.leq(&idx("1"), &idx("2")), Err(Error::UnknownIndex(_))));
        assert_eq!(c.parabolic_closure(&idx("1")).unwrap().len(), 1);
        assert!(c.parabolic_closure(&idx("1.4")).is_err());
    }

    #[test]
    fn b6_depth_three_chain() {
        let sys = rs("B6");
        let c = Cascade::build(&sys);
        let deep = c
            .indices()
            .find(|k| k.depth() == 3)
            .expect("B6 cascade reaches depth 3")
            .clone();
        let chain = c.parabolic_closure(&deep).unwrap();
        assert_eq!(chain.len(), 3);
        assert!(c.is_downward_closed(&chain));
        for k in c.indices() {
            assert!(c.is_downward_closed(&c.parabolic_closure(k).unwrap()));
        }
    }

    #[test]
    fn gamma_sets_small() {
        let sys = rs("G2");
        let c = Cascade::build(&sys);
        let g = c.gamma_set(&sys, &idx("1")).unwrap();
        assert_eq!(g.roots.len(), 5);
        assert!(!g.roots.contains(&root(&[1, 0])));

        let sys = rs("C3");
        let c = Cascade::build(&sys);
        let total: usize = c
            .indices()
            .map(|k| c.gamma_set(&sys, k).unwrap().roots.len())
            .sum();
        assert_eq!(c.len(), 3);
        assert_eq!(total, 9);
    }

    #[test]
    fn semisimple_input() {
        let sys = rs("D4");
        let perp = sys.orthogonal_subsystem(&sys.full(), &sys.highest_root());
        let c = Cascade::build_from(&sys, &perp);
        let words: Vec<String> = c.indices().map(|k| k.to_string()).collect();
        assert_eq!(words, ["1", "2", "3"]);
        assert_eq!(c.to_tree().len(), 3);
    }

    #[test]
    fn index_parsing() {
        assert_eq!(idx("1.2.3").word(), &[1, 2, 3]);
        assert!("".parse::<CascadeIndex>().is_err());
        assert!("1..2".parse::<CascadeIndex>().is_err());
        assert!("0".parse::<CascadeIndex>().is_err());
    }
}
