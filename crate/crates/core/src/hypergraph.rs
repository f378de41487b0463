//! Multi-hypergraphs whose edges are `m`-multisets of `1..=n`, and their
//! adjacency tensors, indicator matrices and Property R.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::gramian::{verify_cp_decomposition, CpDecomposition, FactorMatrix};
use crate::index::{binomial, MultiIndex, Shape};
use crate::scalar::Scalar;
use crate::tensor::{Domain, SymmetricTensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiHypergraph {
    order: usize,
    vertices: usize,
    edges: BTreeSet<MultiIndex>,
}

impl MultiHypergraph {
    /// Builds a multi-hypergraph from raw edges; repeated edges collapse.
    pub fn new<I, R>(order: usize, vertices: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[usize]>,
    {
        let shape = Shape::new(order, vertices)?;
        let edges = edges
            .into_iter()
            .map(|e| shape.canonical(e.as_ref()))
            .collect::<Result<_>>()?;
        Ok(MultiHypergraph {
            order,
            vertices,
            edges,
        })
    }

    /// All `C(n+m-1, m)` multisets as edges.
    pub fn complete(order: usize, vertices: usize) -> Result<Self> {
        let shape = Shape::new(order, vertices)?;
        Ok(MultiHypergraph {
            order,
            vertices,
            edges: shape.indices().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = &MultiIndex> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, edge: &MultiIndex) -> bool {
        self.edges.contains(edge)
    }

    /// Edges with exactly `k` distinct vertices.
    pub fn edges_with_base_size(&self, k: usize) -> Vec<&MultiIndex> {
        self.edges.iter().filter(|e| e.base_size() == k).collect()
    }
}

/// `A(s) = 1` iff `s` is an edge.
pub fn adjacency_tensor<T: Scalar>(g: &MultiHypergraph) -> Result<SymmetricTensor<T>> {
    SymmetricTensor::from_fn(g.order, g.vertices, |idx| {
        if g.edges.contains(idx) {
            T::one()
        } else {
            T::zero()
        }
    })?
    .with_domain(Domain::Binary)
}

/// Inverse of [`adjacency_tensor`] on binary tensors.
pub fn tensor_to_multihypergraph<T: Scalar>(a: &SymmetricTensor<T>) -> Result<MultiHypergraph> {
    let mut edges = BTreeSet::new();
    for (idx, v) in a.iter() {
        if !v.is_binary() {
            return Err(Error::DomainError {
                index: idx.to_string(),
                value: v.to_string(),
                domain: Domain::Binary,
            });
        }
        if v.is_one() {
            edges.insert(idx);
        }
    }
    Ok(MultiHypergraph {
        order: a.order(),
        vertices: a.dim(),
        edges,
    })
}

fn is_strict_subset(small: &[usize], large: &[usize]) -> bool {
    small.len() < large.len() && small.iter().all(|v| large.binary_search(v).is_ok())
}

/// Edges whose base set is not strictly contained in another edge's base
/// set, in lexicographic order.
pub fn maximal_edges(g: &MultiHypergraph) -> Vec<MultiIndex> {
    let bases: Vec<Vec<usize>> = g.edges.iter().map(MultiIndex::base_set).collect();
    g.edges
        .iter()
        .zip(&bases)
        .filter(|(_, b)| !bases.iter().any(|other| is_strict_subset(b, other)))
        .map(|(e, _)| e.clone())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropertyR {
    Holds,
    /// `missing` has its base set inside that of `edge` but is not an edge.
    Violated {
        edge: MultiIndex,
        missing: MultiIndex,
    },
}

impl PropertyR {
    pub fn holds(&self) -> bool {
        matches!(self, PropertyR::Holds)
    }
}

/// Every multiset supported inside an edge's base set must be an edge.
///
/// Only maximal edges are expanded, since every base set lies inside a
/// maximal one. The witness is the first missing multiset of the first
/// offending maximal edge, both in lexicographic order.
pub fn property_r_check(g: &MultiHypergraph) -> PropertyR {
    for edge in maximal_edges(g) {
        let base = edge.base_set();
        let sub = Shape::new(g.order, base.len()).expect("sub-shape no larger than the graph");
        let mut subs: Vec<MultiIndex> = sub
            .indices()
            .map(|s| {
                let entries = s.entries().iter().map(|&i| base[i - 1]).collect();
                MultiIndex::from_sorted(entries, g.vertices)
            })
            .collect();
        subs.sort();
        if let Some(missing) = subs.into_iter().find(|s| !g.edges.contains(s)) {
            return PropertyR::Violated { edge, missing };
        }
    }
    PropertyR::Holds
}

/// Rank-one `{0,1}` certificate for multi-hypergraphs with Property R whose
/// maximal edges all share one base set `B`: the adjacency tensor is
/// `alpha^m` with `supp(alpha) = B`.
pub fn certify_unique_maximal<T: Scalar>(g: &MultiHypergraph) -> Certificate<T> {
    let maximal = maximal_edges(g);
    let Some(first) = maximal.first() else {
        return Certificate::NotApplicable("multi-hypergraph has no edges".into());
    };
    let base = first.base_set();
    if maximal.iter().any(|e| e.base_set() != base) {
        return Certificate::NotApplicable(format!(
            "{} maximal edges with different base sets",
            maximal.len()
        ));
    }
    if let PropertyR::Violated { edge, missing } = property_r_check(g) {
        return Certificate::NotApplicable(format!(
            "property R fails: {missing} lies under edge {edge} but is not an edge"
        ));
    }
    let alpha: Vec<T> = (1..=g.vertices)
        .map(|v| {
            if base.contains(&v) {
                T::one()
            } else {
                T::zero()
            }
        })
        .collect();
    let decomposition = CpDecomposition::Factors(vec![alpha]);
    let a = adjacency_tensor::<T>(g).expect("graph shape already validated");
    verify_cp_decomposition(&a, &decomposition).expect("dimensions agree")
}

/// `W(G)`: column `j` counts how often each vertex occurs in edge `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorMatrix {
    vertices: usize,
    columns: Vec<Vec<u64>>,
}

impl IndicatorMatrix {
    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn columns(&self) -> &[Vec<u64>] {
        &self.columns
    }

    pub fn column_sums(&self) -> Vec<u64> {
        self.columns.iter().map(|c| c.iter().sum()).collect()
    }

    /// The edge that column `j` encodes.
    pub fn edge(&self, j: usize) -> MultiIndex {
        let entries = self.columns[j]
            .iter()
            .enumerate()
            .flat_map(|(i, &count)| std::iter::repeat_n(i + 1, count as usize))
            .collect();
        MultiIndex::from_sorted(entries, self.vertices)
    }

    pub fn to_factor_matrix<T: Scalar>(&self) -> FactorMatrix<T> {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|&x| T::from_natural(x)).collect())
            .collect();
        FactorMatrix::new(self.vertices, columns).expect("columns share the vertex count")
    }
}

pub fn indicator_matrix(g: &MultiHypergraph) -> IndicatorMatrix {
    let columns = g
        .edges
        .iter()
        .map(|e| (1..=g.vertices).map(|v| e.count(v) as u64).collect())
        .collect();
    IndicatorMatrix {
        vertices: g.vertices,
        columns,
    }
}

/// `W W^T = sum_j u_j u_j^T`.
pub fn associated_matrix(g: &MultiHypergraph) -> Vec<Vec<u64>> {
    let w = indicator_matrix(g);
    let n = g.vertices;
    let mut out = vec![vec![0u64; n]; n];
    for u in w.columns() {
        for i in 0..n {
            for j in 0..n {
                out[i][j] += u[i] * u[j];
            }
        }
    }
    out
}

/// `C(n, m) / n^m`, the share of multisets of `1..=n` with `m` distinct
/// vertices among all `m`-tuples. Tends to `1/m!`.
pub fn normal_edge_ratio(order: usize, vertices: usize) -> BigRational {
    let normal = BigInt::from(binomial(vertices, order).expect("binomial fits usize"));
    let total = num_traits::pow(BigInt::from(vertices), order);
    BigRational::new(normal, total)
}
