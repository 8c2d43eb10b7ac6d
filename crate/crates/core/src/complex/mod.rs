//! Finite abstract simplicial complexes and their chain complexes.

pub(crate) mod chain;
mod cone;
mod io;
mod stratification;
mod subdivision;

use std::collections::{BTreeMap, BTreeSet, HashMap};

pub use chain::{combinatorial_laplacian, ChainComplex, RatChainComplex};
pub use cone::{cone, cone_generator_matrix, inclusion_matrix};
pub use io::{parse_complex, read_complex, write_complex};
pub use stratification::Stratification;
pub use subdivision::{barycentric_subdivision, Subdivision};

use crate::error::{contract, Result};
use crate::linalg::IntMatrix;

/// Strictly increasing vertex tuple.
pub type Simplex = Vec<usize>;

/// A face-closed simplicial complex. Each dimension list is sorted
/// lexicographically; that order is the preferred chain basis.
#[derive(Clone, Debug, Default)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    labels: BTreeMap<usize, String>,
    stratification: Option<Stratification>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

impl SimplicialComplex {
    /// Face closure of the given simplices. Tuples may come in any vertex
    /// order but must not repeat a vertex.
    pub fn from_simplices<I, S>(tops: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for t in tops {
            let mut s: Simplex = t.as_ref().to_vec();
            if s.is_empty() {
                return contract("empty simplex");
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return contract("degenerate simplex");
            }
            add_closure(&mut by_dim, s);
        }
        Ok(Self::from_sorted(by_dim.into_iter().map(|d| d.into_iter().collect()).collect()))
    }

    fn from_sorted(simplices: Vec<Vec<Simplex>>) -> Self {
        let index = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { simplices, index, labels: BTreeMap::new(), stratification: None }
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Top dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.count(0)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.simplices(0).iter().map(|s| s[0])
    }

    pub fn max_vertex(&self) -> Option<usize> {
        self.vertices().max()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn iter_all(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn stratification(&self) -> Option<&Stratification> {
        self.stratification.as_ref()
    }

    /// Attaches a stratification after checking it against this complex.
    pub fn set_stratification(&mut self, s: Stratification) -> Result<()> {
        s.validate(self)?;
        self.stratification = Some(s);
        Ok(())
    }

    /// The cone point, if the stratification has a single point stratum.
    pub fn cone_vertex(&self) -> Option<usize> {
        self.stratification.as_ref().and_then(Stratification::cone_vertex)
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.iter_all().all(|s| other.contains(s))
    }

    /// Subcomplex of simplices satisfying `keep`; `keep` must be closed
    /// under taking faces.
    pub fn filter(&self, mut keep: impl FnMut(&[usize]) -> bool) -> SimplicialComplex {
        let mut lists: Vec<Vec<Simplex>> =
            self.simplices.iter().map(|l| l.iter().filter(|s| keep(s)).cloned().collect()).collect();
        while lists.last().is_some_and(Vec::is_empty) {
            lists.pop();
        }
        let mut out = Self::from_sorted(lists);
        out.labels = self.labels.iter().filter(|(v, _)| out.contains(&[**v])).map(|(v, l)| (*v, l.clone())).collect();
        out
    }

    /// Simplicial boundary matrices with signs `(-1)^j` for dropping the
    /// `j`-th vertex, as a chain complex starting in degree 0.
    pub fn chain_complex(&self) -> ChainComplex {
        let dims = self.counts();
        let mut boundaries = Vec::new();
        for d in 1..self.simplices.len() {
            let mut m = IntMatrix::zeros(self.count(d - 1), self.count(d));
            for (c, s) in self.simplices[d].iter().enumerate() {
                for j in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(j);
                    let r = self.index[d - 1][&face];
                    m[(r, c)] = if j % 2 == 0 { 1.into() } else { (-1).into() };
                }
            }
            boundaries.push(m);
        }
        ChainComplex::new(0, dims, boundaries).expect("simplicial boundaries square to zero")
    }
}

fn add_closure(by_dim: &mut Vec<BTreeSet<Simplex>>, s: Simplex) {
    let d = s.len() - 1;
    if by_dim.len() <= d {
        by_dim.resize_with(d + 1, BTreeSet::new);
    }
    if !by_dim[d].insert(s.clone()) || d == 0 {
        return;
    }
    for j in 0..s.len() {
        let mut face = s.clone();
        face.remove(j);
        add_closure(by_dim, face);
    }
}

/// Chain complex of a simplicial complex.
pub fn boundary_matrices(k: &SimplicialComplex) -> ChainComplex {
    k.chain_complex()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_triangle_circle() {
        let k = SimplicialComplex::from_simplices([[0, 1], [1, 2], [0, 2]]).unwrap();
        assert_eq!(k.counts(), vec![3, 3]);
        assert_eq!(k.euler_characteristic(), 0);
    }

    #[test]
    fn closure_of_tetrahedron_boundary() {
        let k = SimplicialComplex::from_simplices([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        assert_eq!(k.counts(), vec![4, 6, 4]);
        assert_eq!(k.euler_characteristic(), 2);
    }

    #[test]
    fn single_edge_boundary() {
        let k = SimplicialComplex::from_simplices([[0, 1]]).unwrap();
        let c = k.chain_complex();
        assert_eq!(c.boundary(1), IntMatrix::from_i64(2, 1, &[-1, 1]));
    }

    #[test]
    fn triangle_boundary_rank() {
        let k = SimplicialComplex::from_simplices([[0, 1], [1, 2], [0, 2]]).unwrap();
        let d1 = k.chain_complex().boundary(1);
        assert_eq!(crate::linalg::exact::rank(&d1), 2);
        assert_eq!(d1.nnz(), 6);
    }

    #[test]
    fn rejects_degenerate() {
        assert!(SimplicialComplex::from_simplices([[1, 1, 2]]).is_err());
    }
}
