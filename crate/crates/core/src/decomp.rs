//! Splitting the span of a point configuration into independent summands
//! `Λ = Λ_1 + ... + Λ_s`, and relative stability as componentwise absolute
//! stability.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Certificate, ComponentReport, Configuration, OnePS, ProjPoint, StabilityReport, Verdict};
use crate::ratlin::{self, RatMatrix, RatVector, Rational};
use crate::stability::{absolute_verdict, extend_to_basis, mumford_weight};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut j = i;
        while self.parent[j] != root {
            let next = self.parent[j];
            self.parent[j] = root;
            j = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // Keep the smaller index as root so classes are labelled by their minimum.
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompComponent {
    /// `Λ_j` in the original coordinates.
    pub subspace: ratlin::LinSubspace,
    /// Coordinate indices of `Λ_j` in the normalized frame, ascending.
    pub index_set: Vec<usize>,
    /// Input components lying in `Λ_j`, ascending.
    pub members: Vec<usize>,
}

impl DecompComponent {
    /// Projective dimension of `Λ_j`.
    pub fn dim(&self) -> usize {
        self.index_set.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// Columns are the chosen independent points followed by unit vectors;
    /// frame coordinates of `p` are `normalizer^-1 p`.
    pub normalizer: RatMatrix,
    #[serde(skip)]
    normalizer_inv: RatMatrix,
    pub components: Vec<DecompComponent>,
}

impl Decomposition {
    pub fn frame_coords(&self, v: &[Rational]) -> Result<RatVector> {
        self.normalizer_inv.mul_vec(v)
    }

    /// Sum of `dim Λ_j + 1`, the rank of the point matrix.
    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.index_set.len()).sum()
    }

    /// Point partition as sorted member lists, sorted.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut p: Vec<Vec<usize>> = self.components.iter().map(|c| c.members.clone()).collect();
        p.sort();
        p
    }

    /// Multiset of component dimensions, sorted.
    pub fn dimensions(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.components.iter().map(DecompComponent::dim).collect();
        d.sort_unstable();
        d
    }
}

fn support_of(v: &[Rational]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// Decomposes the span of the points into summands meeting each other's
/// sum trivially, each point lying in exactly one summand.
pub fn decompose_span(c: &Configuration) -> Result<Decomposition> {
    if c.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let coords = c.coords();
    let points: Vec<RatVector> = c.points()?.iter().map(|(p, _)| p.to_rationals()).collect();

    let mut chosen: Vec<RatVector> = Vec::new();
    for p in &points {
        let mut candidate = chosen.clone();
        candidate.push(p.clone());
        if ratlin::span(coords, &candidate)?.rank() == candidate.len() {
            chosen = candidate;
        }
    }
    let rank = chosen.len();
    let normalizer = RatMatrix::from_columns(coords, &extend_to_basis(coords, &chosen))?;
    let normalizer_inv = normalizer.inverse()?;

    let frames: Vec<RatVector> = points
        .iter()
        .map(|p| normalizer_inv.mul_vec(p))
        .collect::<Result<_>>()?;
    let supports: Vec<Vec<usize>> = frames.iter().map(|y| support_of(y)).collect();
    let mut uf = UnionFind::new(rank);
    for s in &supports {
        debug_assert!(
            s.iter().all(|&i| i < rank),
            "points lie in the span of the chosen basis"
        );
        for w in s.windows(2) {
            uf.union(w[0], w[1]);
        }
    }

    let mut components: Vec<DecompComponent> = Vec::new();
    let mut slot = vec![usize::MAX; rank];
    for i in 0..rank {
        let root = uf.find(i);
        if slot[root] == usize::MAX {
            slot[root] = components.len();
            components.push(DecompComponent {
                subspace: ratlin::LinSubspace::empty(coords),
                index_set: Vec::new(),
                members: Vec::new(),
            });
        }
        components[slot[root]].index_set.push(i);
    }
    for (k, s) in supports.iter().enumerate() {
        let root = uf.find(s[0]);
        components[slot[root]].members.push(k);
    }
    for comp in &mut components {
        let cols: Vec<RatVector> = comp.index_set.iter().map(|&i| normalizer.column(i)).collect();
        comp.subspace = ratlin::span(coords, &cols)?;
    }
    Ok(Decomposition {
        normalizer,
        normalizer_inv,
        components,
    })
}

/// The points of one summand as a configuration of `P^{dim Λ_j}`, in the
/// frame coordinates indexed by `comp.index_set`.
pub fn restrict_component(c: &Configuration, decomp: &Decomposition, comp: &DecompComponent) -> Result<Configuration> {
    let points = c.points()?;
    let local = comp
        .members
        .iter()
        .map(|&k| {
            let (p, m) = points[k];
            let y = decomp.frame_coords(&p.to_rationals())?;
            let r: RatVector = comp.index_set.iter().map(|&i| y[i].clone()).collect();
            Ok((ProjPoint::from_rationals(&r)?, m))
        })
        .collect::<Result<Vec<_>>>()?;
    Configuration::from_points(comp.dim(), local)
}

/// Inverse of [`restrict_component`] on a single point.
pub fn embed_point(decomp: &Decomposition, comp: &DecompComponent, local: &ProjPoint) -> Result<ProjPoint> {
    if local.len() != comp.index_set.len() {
        return Err(Error::DimensionMismatch {
            expected: comp.index_set.len(),
            found: local.len(),
        });
    }
    let coords = decomp.normalizer.rows();
    let mut y = vec![Rational::zero(); coords];
    for (x, &i) in local.to_rationals().into_iter().zip(&comp.index_set) {
        y[i] = x;
    }
    ProjPoint::from_rationals(&decomp.normalizer.mul_vec(&y)?)
}

/// Lifts a certificate of the restricted configuration to ambient
/// coordinates: the intrinsic subgroup acts on `Λ_j` and with weight zero
/// on the frame directions of the other summands.
fn lift_certificate(
    c: &Configuration,
    decomp: &Decomposition,
    comp: &DecompComponent,
    cert: &Certificate,
) -> Result<Certificate> {
    let coords = c.coords();
    let k = comp.index_set.len();
    let mut block = RatMatrix::identity(coords).into_rows();
    let mut weights = vec![0i64; coords];
    let local_g = cert
        .one_ps
        .conjugation()
        .cloned()
        .unwrap_or_else(|| RatMatrix::identity(k));
    for (a, &i) in comp.index_set.iter().enumerate() {
        weights[i] = cert.one_ps.weights()[a];
        for (b, &j) in comp.index_set.iter().enumerate() {
            block[i][j] = local_g.get(a, b).clone();
        }
    }
    let block = RatMatrix::from_rows(coords, block)?;
    let g = decomp.normalizer.mul(&block)?;
    let one_ps = OnePS::conjugated(weights, g)?;
    let embed = |v: &[Rational]| -> Result<RatVector> {
        let mut y = vec![Rational::zero(); coords];
        for (x, &i) in v.iter().zip(&comp.index_set) {
            y[i] = x.clone();
        }
        decomp.normalizer.mul_vec(&y)
    };
    let basis = cert
        .subspace
        .basis()
        .row_vecs()
        .iter()
        .map(|r| embed(r))
        .collect::<Result<Vec<_>>>()?;
    let subspace = ratlin::span(coords, &basis)?;
    let mu = mumford_weight(c, &one_ps)?.value;
    debug_assert_eq!(mu, cert.mu, "lifted weight equals intrinsic weight");
    Ok(Certificate {
        subspace,
        count: cert.count,
        total: cert.total,
        one_ps,
        mu,
    })
}

/// Stability relative to the torus of the decomposition: the worst
/// absolute verdict over the restricted summands. A lifted certificate's
/// `total` is the multiplicity of its summand.
pub fn relative_verdict(c: &Configuration) -> Result<StabilityReport> {
    let decomp = decompose_span(c)?;
    let mut report = StabilityReport::new(Verdict::Stable);
    for comp in &decomp.components {
        let local = restrict_component(c, &decomp, comp)?;
        let sub = absolute_verdict(&local)?;
        report.verdict = report.verdict.max(sub.verdict);
        if report.certificate.is_none() {
            if let Some(cert) = &sub.certificate {
                report.certificate = Some(lift_certificate(c, &decomp, comp, cert)?);
            }
        }
        report.component_reports.push(ComponentReport {
            subspace: comp.subspace.clone(),
            members: comp.members.clone(),
            report: sub,
        });
    }
    Ok(report)
}
