//! The extremal plane-curve families: the F_c curves of degree q+2..2q-1
//! missing exactly 2q-d collinear points, their d >= 2q multiplicity variant
//! missing a single point, and the degree-(q+1) matrix family whose F_q-points
//! are exactly the affine plane.  Includes the deterministic search for
//! parameter vectors c that leave the curve without F_q-line components.

use crate::curves::PlaneCurve;
use crate::error::{Error, Result};
use crate::gf::{FieldSpec, FqElem};
use crate::linalg::FqMatrix;
use crate::mpoly::{monomials_of_degree, Monomial, Poly};
use crate::projspace::{enumerate_lines_p2, enumerate_proj, ProjPoint};
use serde::Serialize;

/// Parameters of an F_c curve.  The root multiplicities are indexed by the
/// canonical element order, one entry per element of F_q; plain mode uses
/// multiplicities in {0,1}.
#[derive(Debug, Clone)]
pub struct FcParams {
    field: FieldSpec,
    d: u32,
    multiplicities: Vec<u32>,
    c: Vec<FqElem>,
}

impl FcParams {
    /// Plain mode: d-q+1 pairwise distinct roots, q+2 <= d <= 2q-1.
    pub fn plain(field: &FieldSpec, d: u32, alphas: &[FqElem], c: Vec<FqElem>) -> Result<FcParams> {
        let q = field.q() as u32;
        if d < q + 2 || d > 2 * q - 1 {
            return Err(Error::BadDegreeRange(format!(
                "plain mode requires q+2 <= d <= 2q-1, got d={d} at q={q}"
            )));
        }
        if alphas.len() != (d - q + 1) as usize {
            return Err(Error::BadDegreeRange(format!(
                "expected {} roots, got {}",
                d - q + 1,
                alphas.len()
            )));
        }
        let mut multiplicities = vec![0u32; q as usize];
        for a in alphas {
            let idx = field.elem_index(a) as usize;
            if multiplicities[idx] != 0 {
                return Err(Error::AlphasNotDistinct);
            }
            multiplicities[idx] = 1;
        }
        Self::with_c(field, d, multiplicities, c)
    }

    /// Multiplicity mode: every element of F_q is a root (e_alpha >= 1),
    /// multiplicities summing to d-q+1, for d >= 2q.
    pub fn with_multiplicities(
        field: &FieldSpec,
        d: u32,
        multiplicities: Vec<u32>,
        c: Vec<FqElem>,
    ) -> Result<FcParams> {
        let q = field.q() as u32;
        if d < 2 * q {
            return Err(Error::BadDegreeRange(format!(
                "multiplicity mode requires d >= 2q, got d={d} at q={q}"
            )));
        }
        if multiplicities.len() != q as usize {
            return Err(Error::BadMultiplicities(format!(
                "expected one multiplicity per field element ({q}), got {}",
                multiplicities.len()
            )));
        }
        if multiplicities.contains(&0) {
            return Err(Error::BadMultiplicities(
                "every multiplicity must be >= 1".into(),
            ));
        }
        let total: u32 = multiplicities.iter().sum();
        if total != d - q + 1 {
            return Err(Error::BadMultiplicities(format!(
                "multiplicities sum to {total}, need d-q+1 = {}",
                d - q + 1
            )));
        }
        Self::with_c(field, d, multiplicities, c)
    }

    fn with_c(
        field: &FieldSpec,
        d: u32,
        multiplicities: Vec<u32>,
        c: Vec<FqElem>,
    ) -> Result<FcParams> {
        let q = field.q() as u32;
        if c.len() != (d - q) as usize {
            return Err(Error::DimensionMismatch {
                expected: (d - q) as usize,
                got: c.len(),
            });
        }
        Ok(FcParams {
            field: field.clone(),
            d,
            multiplicities,
            c,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn c(&self) -> &[FqElem] {
        &self.c
    }

    pub fn with_new_c(&self, c: Vec<FqElem>) -> Result<FcParams> {
        Self::with_c(&self.field, self.d, self.multiplicities.clone(), c)
    }

    /// The roots (1, alpha, 0) the curve keeps on the line Z = 0.
    pub fn roots(&self) -> Vec<FqElem> {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| self.field.elem_at(i as u8).clone())
            .collect()
    }
}

/// The first d-q+1 field elements in canonical order.
pub fn default_alphas(field: &FieldSpec, d: u32) -> Vec<FqElem> {
    let take = (d - field.q() as u32 + 1) as usize;
    field.elements()[..take].to_vec()
}

/// Every element once, with the remainder of d-q+1 piled on alpha = 0.
pub fn default_multiplicities(field: &FieldSpec, d: u32) -> Vec<u32> {
    let q = field.q() as u32;
    let mut m = vec![1u32; q as usize];
    m[0] += d - q + 1 - q;
    m
}

fn frobenius_factor(field: &FieldSpec, var: usize) -> Poly {
    // var^q - var * Z^{q-1}
    let q = field.q() as u32;
    Poly::var_pow(field, 3, var, q)
        .sub(
            &Poly::variable(field, 3, var)
                .mul(&Poly::var_pow(field, 3, 2, q - 1))
                .unwrap(),
        )
        .unwrap()
}

/// The curve
///
/// ```text
/// (X^q - X Z^{q-1}) (sum_i beta_{d-q+1-i} X^{d-q-i} Y^i + sum_i c_i X^{d-q-i} Z^i)
///   + (Y^q - Y Z^{q-1}) Y^{d-q}
/// ```
///
/// where the beta are the coefficients of prod_alpha (Y - alpha X)^{e_alpha}.
pub fn build_fc(params: &FcParams) -> PlaneCurve {
    let field = &params.field;
    let q = field.q() as u32;
    let dq = params.d - q;

    let x = Poly::variable(field, 3, 0);
    let y = Poly::variable(field, 3, 1);
    let mut root_product = Poly::one(field, 3);
    for (i, &e) in params.multiplicities.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let alpha = field.elem_at(i as u8);
        let lin = y.sub(&x.scale(alpha)).unwrap();
        root_product = root_product.mul(&lin.pow(e)).unwrap();
    }
    // beta_j is the coefficient of X^j Y^{d-q+1-j}; beta_0 = 1 by monicity
    let beta = |j: u32| root_product.coeff(&Monomial::new(vec![j, dq + 1 - j, 0]));
    debug_assert_eq!(beta(0), field.one());

    let mut inner = Poly::zero(field, 3);
    for i in 0..=dq {
        let term = Poly::term(field, Monomial::new(vec![dq - i, i, 0]), &beta(dq + 1 - i));
        inner = inner.add(&term).unwrap();
    }
    for i in 1..=dq {
        let term = Poly::term(
            field,
            Monomial::new(vec![dq - i, 0, i]),
            &params.c[(i - 1) as usize],
        );
        inner = inner.add(&term).unwrap();
    }

    let form = frobenius_factor(field, 0)
        .mul(&inner)
        .unwrap()
        .add(
            &frobenius_factor(field, 1)
                .mul(&Poly::var_pow(field, 3, 1, dq))
                .unwrap(),
        )
        .unwrap();
    PlaneCurve::new(form).expect("F_c is a nonzero degree-d form")
}

/// The lexicographically first c in F_q^{d-q} (canonical element order, first
/// entry most significant) for which build_fc has no F_q-line component, or
/// None when every c leaves a line component.
///
/// The restriction of F_c to any fixed line is affine-linear in c, so each
/// line contributes one exact linear system A c = b describing the c that make
/// it divide the curve; the scan just avoids every solvable system's solution
/// set.  Equivalent to trial division per candidate, but the per-line systems
/// are set up once.
pub fn search_line_free_c(
    field: &FieldSpec,
    d: u32,
    multiplicities: &[u32],
) -> Result<Option<Vec<FqElem>>> {
    let q = field.q() as u32;
    let dq = (d - q) as usize;
    let zero_c = vec![field.zero(); dq];
    let base = FcParams {
        field: field.clone(),
        d,
        multiplicities: multiplicities.to_vec(),
        c: zero_c,
    };
    validate_mode(&base)?;
    let f0 = build_fc(&base);

    // c-coefficient basis curves: (X^q - X Z^{q-1}) X^{d-q-i} Z^i
    let xq = frobenius_factor(field, 0);
    let basis_curves: Vec<Poly> = (1..=dq)
        .map(|i| {
            xq.mul(&Poly::term(
                field,
                Monomial::new(vec![(dq - i) as u32, 0, i as u32]),
                &field.one(),
            ))
            .unwrap()
        })
        .collect();

    let binary_basis = monomials_of_degree(2, d);
    let points = enumerate_proj(field, 2);
    let mut systems: Vec<(FqMatrix, Vec<u8>)> = Vec::new();
    for line in enumerate_lines_p2(field) {
        let mut on_line = points
            .iter()
            .filter(|p| line.eval(p.coords()).unwrap().is_zero());
        let p = on_line.next().expect("every line has points");
        let r = on_line.next().expect("every line has at least two points");
        let to_coeffs = |g: &Poly| -> Vec<u8> {
            let restricted = g.restrict_to_line(p, r).unwrap();
            binary_basis
                .iter()
                .map(|m| field.elem_index(&restricted.coeff(m)))
                .collect()
        };
        let b: Vec<u8> = to_coeffs(f0.form())
            .iter()
            .map(|&v| field.neg_idx(v))
            .collect();
        let cols: Vec<Vec<u8>> = basis_curves.iter().map(to_coeffs).collect();
        let mut data = Vec::with_capacity(binary_basis.len() * dq);
        for row in 0..binary_basis.len() {
            for col in &cols {
                data.push(col[row]);
            }
        }
        let a = FqMatrix::from_index_data(field, binary_basis.len(), dq, data)?;
        // a line that no c can make divide the curve is dropped up front
        let b_elems: Vec<FqElem> = b.iter().map(|&v| field.elem_at(v).clone()).collect();
        if a.solve(&b_elems)?.is_some() {
            systems.push((a, b));
        }
    }

    // lexicographic odometer over c, last coordinate fastest
    let mut c_idx = vec![0u8; dq];
    loop {
        let dividing = systems.iter().any(|(a, b)| {
            (0..b.len()).all(|row| {
                let mut acc = 0u8;
                for (j, &cj) in c_idx.iter().enumerate() {
                    acc = field.add_idx(acc, field.mul_idx(field.elem_index(a.get(row, j)), cj));
                }
                acc == b[row]
            })
        });
        if !dividing {
            let c = c_idx.iter().map(|&i| field.elem_at(i).clone()).collect();
            return Ok(Some(c));
        }
        let mut j = dq;
        loop {
            if j == 0 {
                return Ok(None);
            }
            j -= 1;
            c_idx[j] += 1;
            if (c_idx[j] as u64) < field.q() {
                break;
            }
            c_idx[j] = 0;
        }
    }
}

fn validate_mode(params: &FcParams) -> Result<()> {
    let q = params.field.q() as u32;
    let plainish = params.multiplicities.iter().all(|&e| e <= 1);
    if plainish && params.d >= q + 2 && params.d < 2 * q {
        return Ok(());
    }
    if params.multiplicities.iter().all(|&e| e >= 1) && params.d >= 2 * q {
        return Ok(());
    }
    Err(Error::BadDegreeRange(format!(
        "degree {} does not fit either construction mode at q={q}",
        params.d
    )))
}

/// Outcome of the d >= 2q construction: the curve misses exactly one point;
/// `line_free` records whether some c without line components was found
/// (guaranteed for q > 3).
#[derive(Debug, Clone)]
pub struct RemarkBuild {
    pub params: FcParams,
    pub curve: PlaneCurve,
    pub line_free: bool,
}

pub fn build_remark_curve(
    field: &FieldSpec,
    d: u32,
    multiplicities: Vec<u32>,
) -> Result<RemarkBuild> {
    let q = field.q() as u32;
    let probe = FcParams::with_multiplicities(
        field,
        d,
        multiplicities.clone(),
        vec![field.zero(); (d - q) as usize],
    )?;
    let found = search_line_free_c(field, d, &multiplicities)?;
    let (params, line_free) = match found {
        Some(c) => (probe.with_new_c(c)?, true),
        None => (probe, false),
    };
    let curve = build_fc(&params);
    Ok(RemarkBuild {
        params,
        curve,
        line_free,
    })
}

/// Lexicographically first (A, B, C) with A s^2 + B s t + C t^2 having no zero
/// on P^1(F_q).  Such a triple exists over every finite field.
pub fn find_irreducible_quadratic(field: &FieldSpec) -> (FqElem, FqElem, FqElem) {
    let elems = field.elements();
    for a in elems {
        for b in elems {
            for c in elems {
                // roots at (0,1) then (1, t)
                if c.is_zero() {
                    continue;
                }
                let has_root = elems.iter().any(|t| {
                    let v = field.add(
                        a,
                        &field.add(&field.mul(b, t), &field.mul(c, &field.mul(t, t))),
                    );
                    v.is_zero()
                });
                if !has_root {
                    return (a.clone(), b.clone(), c.clone());
                }
            }
        }
    }
    unreachable!("irreducible binary quadratics exist over every F_q")
}

/// Parameters of the degree-(q+1) family
/// (X^q - X Z^{q-1}) (a0 X + a1 Y + a2 Z) + (Y^q - Y Z^{q-1}) (b0 X + b1 Y + b2 Z).
#[derive(Debug, Clone)]
pub struct QPlusOneParams {
    field: FieldSpec,
    a: [FqElem; 3],
    b: [FqElem; 3],
}

impl QPlusOneParams {
    /// Validates that a0 s^2 + (a1 + b0) s t + b1 t^2 is irreducible over F_q.
    pub fn new(field: &FieldSpec, a: [FqElem; 3], b: [FqElem; 3]) -> Result<QPlusOneParams> {
        let qa = &a[0];
        let qb = field.add(&a[1], &b[0]);
        let qc = &b[1];
        // roots on P^1(F_q): (0,1) gives qc; (1,t) gives qa + qb t + qc t^2
        if qc.is_zero() {
            return Err(Error::ReducibleQuadratic);
        }
        for t in field.elements() {
            let v = field.add(
                qa,
                &field.add(&field.mul(&qb, t), &field.mul(qc, &field.mul(t, t))),
            );
            if v.is_zero() {
                return Err(Error::ReducibleQuadratic);
            }
        }
        Ok(QPlusOneParams {
            field: field.clone(),
            a,
            b,
        })
    }

    /// Canonical instance from the lexicographically first irreducible
    /// quadratic: a = (A, B, 0), b = (0, C, 0).
    pub fn default_for(field: &FieldSpec) -> QPlusOneParams {
        let (qa, qb, qc) = find_irreducible_quadratic(field);
        QPlusOneParams::new(
            field,
            [qa, qb, field.zero()],
            [field.zero(), qc, field.zero()],
        )
        .expect("the scanned quadratic is irreducible")
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn matrix_entries(&self) -> (&[FqElem; 3], &[FqElem; 3]) {
        (&self.a, &self.b)
    }

    /// The unique singular point (x0, y0, 1): the solution of
    /// [[a0,a1],[b0,b1]] (x,y) = -(a2,b2), well-posed because irreducibility
    /// of the quadratic forces the determinant to be nonzero.
    pub fn expected_singular_point(&self) -> ProjPoint {
        let f = &self.field;
        let m = FqMatrix::new(
            f,
            2,
            2,
            vec![
                self.a[0].clone(),
                self.a[1].clone(),
                self.b[0].clone(),
                self.b[1].clone(),
            ],
        )
        .unwrap();
        let rhs = vec![f.neg(&self.a[2]), f.neg(&self.b[2])];
        let sol = m.solve(&rhs).unwrap().expect("matrix is invertible");
        ProjPoint::new(f, &[sol[0].clone(), sol[1].clone(), f.one()]).unwrap()
    }
}

/// Degree q+1 curve whose F_q-points are exactly the affine plane, N_q = q^2.
pub fn build_qplus1(params: &QPlusOneParams) -> PlaneCurve {
    let field = &params.field;
    let la = Poly::linear_form(field, &params.a);
    let lb = Poly::linear_form(field, &params.b);
    let form = frobenius_factor(field, 0)
        .mul(&la)
        .unwrap()
        .add(&frobenius_factor(field, 1).mul(&lb).unwrap())
        .unwrap();
    PlaneCurve::new(form).expect("degree q+1 form")
}

/// Recount and recheck a constructed curve against its expected invariants.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructionReport {
    pub degree: u32,
    pub expected_n: u64,
    pub n_q: u64,
    pub count_ok: bool,
    pub line_components: Vec<String>,
    pub expect_line_free: bool,
    pub line_free_ok: bool,
    pub pass: bool,
}

pub fn verify_construction(
    curve: &PlaneCurve,
    expected_n: u64,
    expect_line_free: bool,
) -> ConstructionReport {
    let n_q = curve.count_points();
    let lines = curve.line_components();
    let count_ok = n_q == expected_n;
    let line_free_ok = !expect_line_free || lines.is_empty();
    ConstructionReport {
        degree: curve.degree(),
        expected_n,
        n_q,
        count_ok,
        line_components: lines.iter().map(|l| l.to_string()).collect(),
        expect_line_free,
        line_free_ok,
        pass: count_ok && line_free_ok,
    }
}
