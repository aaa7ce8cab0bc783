//! Generating sets for the vanishing ideals of P^n(F_q), of the complement of
//! a linear subspace, and of the affine chart, together with the exact
//! degree-truncated linear algebra that decides homogeneous ideal membership
//! and compares ideal slices against vanishing-form spaces.
//!
//! For a homogeneous ideal the degree-d slice is spanned by the monomial
//! multiples of the generators, so membership and dimension questions reduce
//! to ranks of exact matrices over F_q; no Groebner machinery is involved.

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, FqElem};
use crate::linalg::FqMatrix;
use crate::mpoly::{monomials_of_degree, Homogeneity, Monomial, Poly};
use crate::projspace::{enumerate_proj, PointSet};
use serde::Serialize;
use std::collections::HashMap;

/// A labelled list of homogeneous, nonzero generators in a fixed ring.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    field: FieldSpec,
    nvars: usize,
    gens: Vec<(String, Poly)>,
}

impl GeneratorSet {
    pub fn from_gens(
        field: &FieldSpec,
        nvars: usize,
        gens: Vec<(String, Poly)>,
    ) -> Result<GeneratorSet> {
        for (_, g) in &gens {
            if g.nvars() != nvars || g.field() != field {
                return Err(Error::RingMismatch);
            }
            match g.is_homogeneous() {
                Some(Homogeneity::Degree(_)) => {}
                _ => return Err(Error::NotHomogeneous),
            }
        }
        Ok(GeneratorSet {
            field: field.clone(),
            nvars,
            gens,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> impl Iterator<Item = (&str, &Poly)> {
        self.gens.iter().map(|(l, g)| (l.as_str(), g))
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.gens
            .iter()
            .filter_map(|(_, g)| g.degree())
            .max()
            .unwrap_or(0)
    }

    /// Subset of `within` on which every generator vanishes.
    pub fn zero_locus(&self, within: &PointSet) -> Result<PointSet> {
        if within.ambient() + 1 != self.nvars || within.field() != &self.field {
            return Err(Error::RingMismatch);
        }
        let points = within
            .iter()
            .filter(|p| {
                self.gens
                    .iter()
                    .all(|(_, g)| g.eval(p.coords()).map(|v| v.is_zero()).unwrap_or(false))
            })
            .cloned()
            .collect();
        PointSet::from_points(&self.field, within.ambient(), points)
    }

    /// Matrix whose rows are the coefficient vectors (in the degree-d monomial
    /// basis) of all products m * g, deg m = d - deg g.
    fn degree_slice_matrix(&self, d: u32) -> FqMatrix {
        let basis = monomials_of_degree(self.nvars, d);
        let col: HashMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut data: Vec<u8> = Vec::new();
        let mut rows = 0usize;
        for (_, g) in &self.gens {
            let dg = g.degree().expect("generators are nonzero");
            if dg > d {
                continue;
            }
            for m in monomials_of_degree(self.nvars, d - dg) {
                let start = data.len();
                data.resize(start + basis.len(), 0u8);
                for (mg, c) in g.terms() {
                    let shifted =
                        Monomial::new(mg.exps().iter().zip(m.exps()).map(|(a, b)| a + b).collect());
                    data[start + col[&shifted]] = self.field.elem_index(c);
                }
                rows += 1;
            }
        }
        FqMatrix::from_index_data(&self.field, rows, basis.len(), data).expect("shape")
    }

    /// Dimension over F_q of the degree-d slice of the generated ideal.
    pub fn ideal_degree_dim(&self, d: u32) -> usize {
        self.degree_slice_matrix(d).rank()
    }

    /// Exact homogeneous ideal membership at the degree of f.
    pub fn membership(&self, f: &Poly) -> Result<bool> {
        if f.nvars() != self.nvars || f.field() != &self.field {
            return Err(Error::RingMismatch);
        }
        let d = match f.is_homogeneous() {
            Some(Homogeneity::Degree(d)) => d,
            Some(Homogeneity::Any) => return Ok(true),
            None => return Err(Error::NotHomogeneous),
        };
        let basis = monomials_of_degree(self.nvars, d);
        let row: Vec<FqElem> = basis.iter().map(|m| f.coeff(m)).collect();
        self.degree_slice_matrix(d).row_space_contains(&row)
    }
}

/// The binomials x_i^q x_j - x_i x_j^q, 0 <= i < j <= n, which generate the
/// ideal of all of P^n(F_q).
pub fn gens_full_projective(field: &FieldSpec, n: usize) -> GeneratorSet {
    let q = field.q();
    let nvars = n + 1;
    let mut gens = Vec::new();
    for i in 0..nvars {
        for j in i + 1..nvars {
            let g = Poly::var_pow(field, nvars, i, q as u32)
                .mul(&Poly::variable(field, nvars, j))
                .unwrap()
                .sub(
                    &Poly::variable(field, nvars, i)
                        .mul(&Poly::var_pow(field, nvars, j, q as u32))
                        .unwrap(),
                )
                .unwrap();
            gens.push((format!("binomial({i},{j})"), g));
        }
    }
    GeneratorSet {
        field: field.clone(),
        nvars,
        gens,
    }
}

/// Generators of the ideal of P^n(F_q) minus the subspace x_k = ... = x_n = 0:
/// the binomials plus, for each s < k, x_s * prod_{i=k}^{n} (x_i^{q-1} - x_s^{q-1}).
pub fn gens_complement(field: &FieldSpec, n: usize, k: usize) -> Result<GeneratorSet> {
    if k < 1 || k > n {
        return Err(Error::BadK { k, n });
    }
    let q = field.q();
    let nvars = n + 1;
    let mut set = gens_full_projective(field, n);
    for s in 0..k {
        let mut g = Poly::variable(field, nvars, s);
        for i in k..nvars {
            let factor = Poly::var_pow(field, nvars, i, q as u32 - 1)
                .sub(&Poly::var_pow(field, nvars, s, q as u32 - 1))
                .unwrap();
            g = g.mul(&factor).unwrap();
        }
        set.gens.push((format!("product({s})"), g));
    }
    Ok(set)
}

/// Generators of the ideal of A^n(F_q) (the chart x_n != 0):
/// the n forms x_s x_n^{q-1} - x_s^q.
pub fn gens_affine(field: &FieldSpec, n: usize) -> GeneratorSet {
    let q = field.q();
    let nvars = n + 1;
    let mut gens = Vec::new();
    for s in 0..n {
        let g = Poly::variable(field, nvars, s)
            .mul(&Poly::var_pow(field, nvars, n, q as u32 - 1))
            .unwrap()
            .sub(&Poly::var_pow(field, nvars, s, q as u32))
            .unwrap();
        gens.push((format!("affine({s})"), g));
    }
    GeneratorSet {
        field: field.clone(),
        nvars,
        gens,
    }
}

/// Dimension of the space of degree-d forms vanishing on S, i.e. the nullity
/// of the evaluation matrix rows(S) x monomials(d).  Well defined because
/// vanishing of a homogeneous form does not depend on the representatives.
pub fn vanishing_dim(set: &PointSet, d: u32) -> usize {
    let field = set.field();
    let nvars = set.ambient() + 1;
    let basis = monomials_of_degree(nvars, d);
    let mut data = Vec::with_capacity(set.len() * basis.len());
    for p in set.iter() {
        let idx: Vec<u8> = p.coords().iter().map(|c| field.elem_index(c)).collect();
        for m in &basis {
            let mut v = 1u8;
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    v = field.mul_idx(v, field.pow_idx(idx[i], e as u64));
                }
            }
            data.push(v);
        }
    }
    FqMatrix::from_index_data(field, set.len(), basis.len(), data)
        .expect("shape")
        .nullity()
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeDims {
    pub d: u32,
    pub ideal_dim: usize,
    pub vanishing_dim: usize,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealEqualityReport {
    pub q: u64,
    pub n: usize,
    pub locus_size: usize,
    pub per_degree: Vec<DegreeDims>,
    pub all_equal: bool,
}

/// Default degree bound for equality verification: covers every degree the
/// extremal constructions live in, with headroom.
pub fn default_dmax(gens: &GeneratorSet) -> u32 {
    let q = gens.field().q() as u32;
    (2 * q + 2).max(gens.max_degree() + q)
}

/// Degree-by-degree comparison of the ideal slices against the vanishing-form
/// spaces of S.  Errors with LocusMismatch unless the zero locus of the
/// generators inside P^n(F_q) is exactly S.
pub fn verify_ideal_equals_vanishing(
    gens: &GeneratorSet,
    s: &PointSet,
    d_max: u32,
) -> Result<IdealEqualityReport> {
    let n = gens.nvars() - 1;
    let ambient = enumerate_proj(gens.field(), n);
    if &gens.zero_locus(&ambient)? != s {
        return Err(Error::LocusMismatch);
    }
    let mut per_degree = Vec::new();
    for d in 0..=d_max {
        let ideal_dim = gens.ideal_degree_dim(d);
        let vdim = vanishing_dim(s, d);
        per_degree.push(DegreeDims {
            d,
            ideal_dim,
            vanishing_dim: vdim,
            equal: ideal_dim == vdim,
        });
    }
    let all_equal = per_degree.iter().all(|r| r.equal);
    Ok(IdealEqualityReport {
        q: gens.field().q(),
        n,
        locus_size: s.len(),
        per_degree,
        all_equal,
    })
}

// ------------------------------------------------------------------ mindegree

#[derive(Debug, Clone, Serialize)]
pub struct DegreeScan {
    pub d: u32,
    pub classes_scanned: u128,
    pub hits: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinDegreeReport {
    pub q: u64,
    pub n: usize,
    pub threshold: u32,
    /// Exhaustive scans of all degrees below the threshold; a hit is a form
    /// whose zero set is exactly the complement of one point.
    pub scans: Vec<DegreeScan>,
    pub no_form_below_threshold: bool,
    pub witness: String,
    pub witness_achieves: bool,
}

/// The hypersurface of smallest degree through all of P^n(F_q) but one point:
/// scans every scalar class of forms of each degree below (q-1)n + 1 and
/// confirms none has zero set exactly P^n(F_q) \ {(1,0,...,0)}, then checks
/// the explicit witness at the threshold degree.
pub fn verify_min_degree(field: &FieldSpec, n: usize, budget: u128) -> Result<MinDegreeReport> {
    let q = field.q();
    let threshold = (q as u32 - 1) * n as u32 + 1;
    let nvars = n + 1;

    let mut required = 0u128;
    for d in 1..threshold {
        let m = monomials_of_degree(nvars, d).len() as u32;
        let count = ((q as u128).pow(m) - 1) / (q as u128 - 1);
        required += count;
    }
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let points = enumerate_proj(field, n);
    let p0 = crate::projspace::ProjPoint::from_ints(field, &{
        let mut v = vec![0u64; nvars];
        v[0] = 1;
        v
    })?;

    let mut scans = Vec::new();
    for d in 1..threshold {
        let basis = monomials_of_degree(nvars, d);
        let ncols = basis.len();
        let eval_row = |pt: &crate::projspace::ProjPoint| -> Vec<u8> {
            let idx: Vec<u8> = pt.coords().iter().map(|c| field.elem_index(c)).collect();
            basis
                .iter()
                .map(|m| {
                    let mut v = 1u8;
                    for (i, &e) in m.exps().iter().enumerate() {
                        if e > 0 {
                            v = field.mul_idx(v, field.pow_idx(idx[i], e as u64));
                        }
                    }
                    v
                })
                .collect()
        };
        // evaluation rows, the distinguished point first
        let mut rows: Vec<Vec<u8>> = Vec::with_capacity(points.len());
        rows.push(eval_row(&p0));
        for pt in points.iter().filter(|pt| **pt != p0) {
            rows.push(eval_row(pt));
        }

        let mut hits = 0u64;
        let mut classes = 0u128;
        let mut coeffs = vec![0u8; ncols];
        for lead in (0..ncols).rev() {
            coeffs.iter_mut().for_each(|c| *c = 0);
            coeffs[lead] = 1;
            'class: loop {
                classes += 1;
                // nonzero at the distinguished point, zero everywhere else
                let mut ok = true;
                for (r, row) in rows.iter().enumerate() {
                    let mut acc = 0u8;
                    for j in lead..ncols {
                        if coeffs[j] != 0 {
                            acc = field.add_idx(acc, field.mul_idx(coeffs[j], row[j]));
                        }
                    }
                    if (r == 0) == (acc == 0) {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    hits += 1;
                }
                // odometer over positions after the leading 1, last fastest
                for j in (lead + 1..ncols).rev() {
                    coeffs[j] += 1;
                    if (coeffs[j] as u64) < q {
                        continue 'class;
                    }
                    coeffs[j] = 0;
                }
                break;
            }
        }
        scans.push(DegreeScan {
            d,
            classes_scanned: classes,
            hits,
        });
    }

    let witness = min_degree_witness(field, n, threshold);
    let witness_achieves = points.iter().all(|pt| {
        let v = witness.eval(pt.coords()).unwrap();
        if *pt == p0 {
            !v.is_zero()
        } else {
            v.is_zero()
        }
    });

    let no_form_below_threshold = scans.iter().all(|s| s.hits == 0);
    Ok(MinDegreeReport {
        q,
        n,
        threshold,
        scans,
        no_form_below_threshold,
        witness: witness.to_string(),
        witness_achieves,
    })
}

/// x_0^{d-(q-1)n} * prod_{i=1}^{n} (x_i^{q-1} - x_0^{q-1}), the explicit form
/// missing only (1,0,...,0); requires d > (q-1)n.
pub fn min_degree_witness(field: &FieldSpec, n: usize, d: u32) -> Poly {
    let q = field.q() as u32;
    let nvars = n + 1;
    assert!(d > (q - 1) * n as u32, "witness requires d > (q-1)n");
    let mut g = Poly::var_pow(field, nvars, 0, d - (q - 1) * n as u32);
    for i in 1..nvars {
        let factor = Poly::var_pow(field, nvars, i, q - 1)
            .sub(&Poly::var_pow(field, nvars, 0, q - 1))
            .unwrap();
        g = g.mul(&factor).unwrap();
    }
    g
}
