//! Enumeration of P^n(F_q) and A^n(F_q), lines of the projective plane, and
//! the point-count function theta.
//!
//! Every point is kept as its canonical representative: the first nonzero
//! coordinate is 1.  Point sets are sorted and duplicate-free, so set
//! difference and membership are deterministic.

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, FqElem};
use crate::linalg::FqMatrix;
use crate::mpoly::Poly;
use serde::Serialize;

/// theta_q(n) = (q^{n+1} - 1)/(q - 1), the number of points of P^n(F_q).
pub fn theta(q: u64, n: u32) -> u64 {
    let num = (q as u128).pow(n + 1) - 1;
    let t = num / (q as u128 - 1);
    u64::try_from(t).expect("theta fits in u64 at desk scale")
}

/// A point of P^n(F_q), stored as the canonical representative whose first
/// nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ProjPoint {
    coords: Vec<FqElem>,
}

impl ProjPoint {
    /// Normalize a nonzero coordinate vector to its canonical representative.
    pub fn new(field: &FieldSpec, coords: &[FqElem]) -> Result<ProjPoint> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::ZeroVector)?;
        let inv = field.inv(lead)?;
        Ok(ProjPoint {
            coords: coords.iter().map(|c| field.mul(&inv, c)).collect(),
        })
    }

    /// Convenience constructor from integer residues (prime-field style).
    pub fn from_ints(field: &FieldSpec, ints: &[u64]) -> Result<ProjPoint> {
        let coords: Vec<FqElem> = ints.iter().map(|&k| field.from_int(k)).collect();
        ProjPoint::new(field, &coords)
    }

    pub fn coords(&self) -> &[FqElem] {
        &self.coords
    }

    pub fn text(&self, field: &FieldSpec) -> String {
        let inner: Vec<String> = self.coords.iter().map(|c| field.elem_string(c)).collect();
        format!("({})", inner.join(","))
    }
}

/// A finite subset of P^n(F_q): sorted, duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointSet {
    #[serde(skip)]
    field: FieldSpec,
    ambient: usize,
    points: Vec<ProjPoint>,
}

impl PointSet {
    pub fn from_points(
        field: &FieldSpec,
        ambient: usize,
        mut points: Vec<ProjPoint>,
    ) -> Result<PointSet> {
        for p in &points {
            if p.coords().len() != ambient + 1 {
                return Err(Error::ArityMismatch {
                    expected: ambient + 1,
                    got: p.coords().len(),
                });
            }
        }
        points.sort();
        points.dedup();
        Ok(PointSet {
            field: field.clone(),
            ambient,
            points,
        })
    }

    pub fn empty(field: &FieldSpec, ambient: usize) -> PointSet {
        PointSet {
            field: field.clone(),
            ambient,
            points: Vec::new(),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Dimension n of the ambient P^n.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = &ProjPoint> {
        self.points.iter()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let points = self
            .points
            .iter()
            .filter(|p| !other.contains(p))
            .cloned()
            .collect();
        PointSet {
            field: self.field.clone(),
            ambient: self.ambient,
            points,
        }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut points = self.points.clone();
        points.extend_from_slice(&other.points);
        points.sort();
        points.dedup();
        PointSet {
            field: self.field.clone(),
            ambient: self.ambient,
            points,
        }
    }
}

/// All theta_q(n) canonical points of P^n(F_q), deterministic order.
pub fn enumerate_proj(field: &FieldSpec, n: usize) -> PointSet {
    let q = field.q() as usize;
    let elems = field.elements();
    let mut points = Vec::with_capacity(theta(field.q(), n as u32) as usize);
    for lead in 0..=n {
        let tail = n - lead;
        let mut combo = vec![0usize; tail];
        loop {
            let mut coords = vec![field.zero(); n + 1];
            coords[lead] = field.one();
            for (j, &ci) in combo.iter().enumerate() {
                coords[lead + 1 + j] = elems[ci].clone();
            }
            points.push(ProjPoint { coords });
            // odometer, last position fastest
            let mut done = true;
            for j in (0..tail).rev() {
                combo[j] += 1;
                if combo[j] < q {
                    done = false;
                    break;
                }
                combo[j] = 0;
            }
            if done {
                break;
            }
        }
    }
    points.sort();
    PointSet {
        field: field.clone(),
        ambient: n,
        points,
    }
}

/// The theta_q(k-1) points of the subspace x_k = ... = x_n = 0 inside P^n.
pub fn linear_subspace_points(field: &FieldSpec, n: usize, k: usize) -> Result<PointSet> {
    if k < 1 || k > n {
        return Err(Error::BadK { k, n });
    }
    let small = enumerate_proj(field, k - 1);
    let points = small
        .points()
        .iter()
        .map(|p| {
            let mut coords = p.coords().to_vec();
            coords.resize(n + 1, field.zero());
            ProjPoint { coords }
        })
        .collect();
    PointSet::from_points(field, n, points)
}

/// One canonical linear form per line of P^2(F_q), theta_q(2) in all,
/// ordered by the canonical coefficient triple.
pub fn enumerate_lines_p2(field: &FieldSpec) -> Vec<Poly> {
    enumerate_proj(field, 2)
        .points()
        .iter()
        .map(|p| Poly::linear_form(field, p.coords()))
        .collect()
}

/// The q^n points of the affine chart x_n != 0 of P^n (canonical reps).
pub fn affine_points(field: &FieldSpec, n: usize) -> PointSet {
    let all = enumerate_proj(field, n);
    let points = all
        .points()
        .iter()
        .filter(|p| !p.coords()[n].is_zero())
        .cloned()
        .collect();
    PointSet {
        field: field.clone(),
        ambient: n,
        points,
    }
}

/// Whether all points of a subset of P^2 lie on one line: the coordinate
/// matrix has rank at most 2.  Vacuously true for two or fewer points.
pub fn collinear(set: &PointSet) -> bool {
    assert_eq!(set.ambient(), 2, "collinearity is defined in P^2");
    if set.len() <= 2 {
        return true;
    }
    let entries: Vec<FqElem> = set
        .iter()
        .flat_map(|p| p.coords().iter().cloned())
        .collect();
    let m = FqMatrix::new(set.field(), set.len(), 3, entries).expect("shape");
    m.rank() <= 2
}
