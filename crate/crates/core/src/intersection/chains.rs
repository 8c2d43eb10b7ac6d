use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{allowable, Perversity};
use crate::complex::{barycentric_subdivision, ChainComplex, Simplex, SimplicialComplex, Subdivision};
use crate::error::{contract, Error, Result};
use crate::linalg::lattice::smith_rank_and_kernel_ordered;
use crate::linalg::{IntMatrix, Lattice, RatMatrix};
use crate::torsion::{change_of_basis_chain_log, torsion_direct, BasedHomology, HomologyBasis, TorsionReport};

/// Chains whose support and boundary support obey an allowability rule,
/// as a chain complex of saturated lattices inside the ambient simplicial
/// chains.
#[derive(Clone, Debug)]
pub struct IntersectionChainComplex {
    pub ambient: SimplicialComplex,
    pub subdivision: Option<Subdivision>,
    pub complex: ChainComplex,
    /// Degree-`i` lattice, basis in ambient `C_i` coordinates.
    pub lattices: Vec<Lattice>,
}

/// Builds `IC_i = {ξ ∈ C_i : supp ξ allowed in degree i, supp ∂ξ allowed in
/// degree i − 1}` for every degree of `ambient`. A nonzero `seed` permutes
/// the elimination order, which changes the lattice bases unimodularly.
pub fn allowable_chain_complex(
    ambient: &SimplicialComplex,
    allowed: impl Fn(usize, &[usize]) -> bool,
    seed: u64,
) -> IntersectionChainComplex {
    let cc = ambient.chain_complex();
    let top = ambient.dim().map_or(0, |d| d + 1);
    let mut rng = (seed != 0).then(|| ChaCha8Rng::seed_from_u64(seed));
    let mut lattices: Vec<Lattice> = Vec::with_capacity(top);
    for i in 0..top {
        let simplices = ambient.simplices(i);
        let support: Vec<usize> = (0..simplices.len()).filter(|&c| allowed(i, &simplices[c])).collect();
        let bad_rows: Vec<usize> = if i == 0 {
            Vec::new()
        } else {
            (0..ambient.count(i - 1)).filter(|&r| !allowed(i - 1, &ambient.simplices(i - 1)[r])).collect()
        };
        let d = cc.boundary(i as i64).select_rows(&bad_rows).select_columns(&support);
        let mut order: Vec<usize> = (0..support.len()).collect();
        if let Some(rng) = rng.as_mut() {
            order.shuffle(rng);
        }
        let kernel = smith_rank_and_kernel_ordered(&d, &order).kernel;
        let n = simplices.len();
        let mut basis = IntMatrix::zeros(n, kernel.rank());
        let mut left_inverse = IntMatrix::zeros(kernel.rank(), n);
        for (j, &s) in support.iter().enumerate() {
            for c in 0..kernel.rank() {
                basis[(s, c)] = kernel.basis[(j, c)].clone();
                left_inverse[(c, s)] = kernel.left_inverse[(c, j)].clone();
            }
        }
        lattices.push(Lattice { basis, left_inverse });
    }
    let complex = induced_complex(&cc, &lattices);
    IntersectionChainComplex { ambient: ambient.clone(), subdivision: None, complex, lattices }
}

/// Boundary maps of the ambient complex written in lattice coordinates.
pub(crate) fn induced_complex(cc: &ChainComplex, lattices: &[Lattice]) -> ChainComplex {
    let dims: Vec<usize> = lattices.iter().map(Lattice::rank).collect();
    let mut boundaries = Vec::new();
    for i in 1..lattices.len() {
        let image = &cc.boundary(i as i64) * &lattices[i].basis;
        let coords = lattices[i - 1].coordinates_int(&image).expect("boundary of an allowable chain is allowable");
        boundaries.push(coords);
    }
    ChainComplex::new(0, dims, boundaries).expect("induced boundaries square to zero")
}

impl IntersectionChainComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.complex.dims().to_vec()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.complex.betti_numbers()
    }

    /// `ln` covolume of each degree's lattice in the Euclidean metric where
    /// ambient simplices are orthonormal.
    pub fn log_covolumes(&self) -> Vec<(i64, f64)> {
        self.lattices.iter().enumerate().map(|(i, l)| (i as i64, l.log_covolume())).collect()
    }

    /// Lattice coordinates of ambient homology representatives.
    pub fn homology_from_ambient(&self, per_degree: &[HomologyBasis]) -> Result<BasedHomology> {
        let mut bases = Vec::new();
        for (i, lat) in self.lattices.iter().enumerate() {
            let hb = match per_degree.get(i) {
                Some(h) if h.rank() > 0 => h,
                _ => {
                    bases.push(HomologyBasis::empty(lat.rank()));
                    continue;
                }
            };
            let Some(coords) = lat.coordinates(&hb.vectors) else {
                return contract(format!("degree {i}: homology representative is not an intersection chain"));
            };
            bases.push(HomologyBasis { vectors: coords, log_scale: hb.log_scale });
        }
        Ok(BasedHomology::new(0, bases))
    }

    /// Torsion with the lattice bases as preferred chain bases.
    pub fn lattice_torsion(&self, h: &BasedHomology, seed: u64) -> Result<TorsionReport> {
        torsion_direct(&self.complex, h, seed)
    }

    /// Torsion with orthonormal preferred bases of each `IC_i ⊆ C_i`: the
    /// lattice value moved by `Σ (−1)^i ln covol(IC_i)`.
    pub fn torsion(&self, h: &BasedHomology, seed: u64) -> Result<TorsionReport> {
        self.torsion_normalized_by(h, seed, &self.log_covolumes())
    }

    /// Lattice torsion moved by `Σ (−1)^i covol_i` for externally supplied
    /// covolumes, e.g. those of a complex this one subdivides.
    pub fn torsion_normalized_by(&self, h: &BasedHomology, seed: u64, covolumes: &[(i64, f64)]) -> Result<TorsionReport> {
        let lattice = self.lattice_torsion(h, seed)?;
        change_of_basis_chain_log(&lattice, covolumes)
    }

    /// `ξ ∈ IC_i` as an ambient chain.
    pub fn embed(&self, degree: usize, coords: &RatMatrix) -> RatMatrix {
        &self.lattices[degree].basis.to_rational() * coords
    }
}

/// `R_i`: simplices of `T'` that are `(p̄, i)`-allowable.
#[derive(Clone, Debug)]
pub struct BasicSets {
    pub subdivision: Subdivision,
    pub perversity: Perversity,
    pub sets: Vec<BTreeSet<Simplex>>,
}

impl BasicSets {
    pub fn contains(&self, i: usize, s: &[usize]) -> bool {
        self.sets.get(i).is_some_and(|r| r.contains(s))
    }
}

pub fn basic_sets(x: &SimplicialComplex, p: &Perversity) -> Result<BasicSets> {
    let Some(n) = x.dim() else {
        return contract("basic sets of an empty complex");
    };
    if p.n() != n {
        return Err(Error::Perversity(format!("perversity is for n = {}, complex has dimension {n}", p.n())));
    }
    if let Some(s) = x.stratification() {
        s.validate(x)?;
        if s.dim() != n {
            return Err(Error::Stratification(format!("stratification of dimension {} on a {n}-complex", s.dim())));
        }
    }
    let sd = barycentric_subdivision(x);
    // codimensions with the T' vertices lying in X_{n−k}
    let strata: Vec<(usize, Vec<bool>)> = x
        .stratification()
        .map(|s| {
            s.strata()
                .keys()
                .map(|&k| {
                    let skel = s.skeleton(k);
                    let member = (0..sd.complex.vertex_count()).map(|v| skel.contains(sd.barycenter(v))).collect();
                    (k, member)
                })
                .collect()
        })
        .unwrap_or_default();
    let mut sets = vec![BTreeSet::new(); n + 1];
    for s in sd.complex.iter_all() {
        let meets: Vec<(usize, usize)> = strata
            .iter()
            .filter_map(|(k, member)| {
                let c = s.iter().filter(|&&v| member[v]).count();
                (c > 0).then(|| (*k, c - 1))
            })
            .collect();
        for (i, set) in sets.iter_mut().enumerate() {
            if allowable(s.len() - 1, i as i64, p, &meets) {
                set.insert(s.clone());
            }
        }
    }
    Ok(BasicSets { subdivision: sd, perversity: p.clone(), sets })
}

/// Intersection chain complex on the first barycentric subdivision.
pub fn intersection_complex(x: &SimplicialComplex, p: &Perversity, seed: u64) -> Result<IntersectionChainComplex> {
    let bs = basic_sets(x, p)?;
    let mut ic = allowable_chain_complex(&bs.subdivision.complex, |i, s| bs.contains(i, s), seed);
    ic.subdivision = Some(bs.subdivision);
    Ok(ic)
}
