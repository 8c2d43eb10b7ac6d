use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use super::{Simplex, SimplicialComplex, Stratification};
use crate::linalg::IntMatrix;

/// First barycentric subdivision `T'` of `K`.
///
/// Vertex `i` of `T'` is the barycenter of the `i`-th simplex of `K` in
/// (dimension, lexicographic) order, so every simplex of `T'` is a flag
/// `σ_0 < σ_1 < … < σ_k` listed in increasing vertex order.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    barycenter_of: Vec<Simplex>,
    vertex_of: HashMap<Simplex, usize>,
}

pub fn barycentric_subdivision(k: &SimplicialComplex) -> Subdivision {
    let barycenter_of: Vec<Simplex> = k.iter_all().cloned().collect();
    let vertex_of: HashMap<Simplex, usize> =
        barycenter_of.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let mut flags: Vec<Vec<usize>> = Vec::new();
    for s in k.iter_all() {
        if !k.simplices(s.len()).iter().any(|t| s.iter().all(|v| t.contains(v))) {
            full_flags(s, &vertex_of, &mut flags);
        }
    }
    let mut complex = SimplicialComplex::from_simplices(flags).expect("flags are nondegenerate");
    if let Some(w) = k.cone_vertex() {
        let b = vertex_of[&vec![w]];
        complex.set_label(b, "w");
        let n = k.stratification().map_or(0, Stratification::dim);
        complex.set_stratification(Stratification::cone(n, b)).expect("barycenter of the cone point");
    }
    Subdivision { complex, barycenter_of, vertex_of }
}

/// Every maximal flag of faces of `s`, one per vertex ordering.
fn full_flags(s: &[usize], vertex_of: &HashMap<Simplex, usize>, out: &mut Vec<Vec<usize>>) {
    fn rec(
        remaining: &mut Vec<usize>,
        current: &mut Vec<usize>,
        flag: &mut Vec<usize>,
        vertex_of: &HashMap<Simplex, usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining.is_empty() {
            out.push(flag.clone());
            return;
        }
        for i in 0..remaining.len() {
            let v = remaining.remove(i);
            current.push(v);
            let mut face = current.clone();
            face.sort_unstable();
            flag.push(vertex_of[&face]);
            rec(remaining, current, flag, vertex_of, out);
            flag.pop();
            current.pop();
            remaining.insert(i, v);
        }
    }
    rec(&mut s.to_vec(), &mut Vec::new(), &mut Vec::new(), vertex_of, out);
}

impl Subdivision {
    /// Original simplex whose barycenter is vertex `v` of `T'`.
    pub fn barycenter(&self, v: usize) -> &Simplex {
        &self.barycenter_of[v]
    }

    pub fn vertex_of(&self, s: &[usize]) -> Option<usize> {
        self.vertex_of.get(s).copied()
    }

    /// The flag of original simplices behind a simplex of `T'`.
    pub fn flag(&self, s: &[usize]) -> Vec<&Simplex> {
        s.iter().map(|&v| &self.barycenter_of[v]).collect()
    }

    /// Smallest original simplex containing `s`.
    pub fn carrier(&self, s: &[usize]) -> &Simplex {
        &self.barycenter_of[*s.last().expect("nonempty simplex")]
    }

    /// Subdivision chain map `C_k(K) → C_k(T')`,
    /// `sd(v) = [v̂]`, `sd(σ) = (−1)^k [sd(∂σ), σ̂]`.
    pub fn chain_map(&self, k: &SimplicialComplex, degree: usize) -> IntMatrix {
        let mut memo: HashMap<Simplex, BTreeMap<Simplex, i64>> = HashMap::new();
        let mut m = IntMatrix::zeros(self.complex.count(degree), k.count(degree));
        for (c, s) in k.simplices(degree).iter().enumerate() {
            for (t, coeff) in self.sd(s, &mut memo) {
                let r = self.complex.index_of(&t).expect("subdivided simplex present");
                m[(r, c)] = BigInt::from(coeff);
            }
        }
        m
    }

    fn sd(&self, s: &Simplex, memo: &mut HashMap<Simplex, BTreeMap<Simplex, i64>>) -> BTreeMap<Simplex, i64> {
        if let Some(v) = memo.get(s) {
            return v.clone();
        }
        let b = self.vertex_of[s];
        let mut out = BTreeMap::new();
        if s.len() == 1 {
            out.insert(vec![b], 1);
        } else {
            let k = s.len() - 1;
            let sign = if k.is_multiple_of(2) { 1 } else { -1 };
            for j in 0..s.len() {
                let mut face = s.clone();
                face.remove(j);
                let fsign = if j % 2 == 0 { 1 } else { -1 };
                for (mut t, c) in self.sd(&face, memo) {
                    t.push(b);
                    *out.entry(t).or_insert(0) += sign * fsign * c;
                }
            }
            out.retain(|_, c| *c != 0);
        }
        memo.insert(s.clone(), out.clone());
        out
    }
}
