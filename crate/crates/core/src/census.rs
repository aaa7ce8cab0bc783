//! Exhaustive census of plane curves of a fixed degree over F_q.
//!
//! Candidates are the scalar classes of nonzero coefficient vectors (first
//! nonzero coefficient 1) over the degree-d monomial basis, enumerated in
//! ascending numeric order when the vector is read as a base-q integer with
//! the leading basis monomial most significant.  The census computes the full
//! spectrum of point counts N_q over the (optionally line-free) candidates,
//! the maximum M, the runner-up value, and one witness curve per achieved N.
//!
//! The hot loop works on element indices against a precomputed point-by-
//! monomial value matrix; line divisibility is decided exactly through
//! per-line restriction matrices, gated by the necessary condition that every
//! F_q-point of the line lies on the curve.  Partitions are contiguous
//! lexicographic blocks and merging them reproduces the sequential census
//! bit for bit.

use crate::curves::PlaneCurve;
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::mpoly::{monomials_of_degree, Monomial, Poly};
use crate::projspace::{enumerate_lines_p2, enumerate_proj, theta};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Default cap on the number of candidate coefficient vectors.
pub const DEFAULT_BUDGET: u128 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusFilter {
    All,
    LineFree,
    /// Line-free candidates that additionally carry the point-count
    /// certificate of absolute irreducibility, N >= (d-2)q + 3.
    LineFreeIrreducible,
}

impl fmt::Display for CensusFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CensusFilter::All => "all",
            CensusFilter::LineFree => "line-free",
            CensusFilter::LineFreeIrreducible => "line-free-irreducible",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for CensusFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<CensusFilter> {
        match s {
            "all" => Ok(CensusFilter::All),
            "line-free" => Ok(CensusFilter::LineFree),
            "line-free-irreducible" => Ok(CensusFilter::LineFreeIrreducible),
            _ => Err(Error::Parse(format!("unknown filter '{s}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CensusSpec {
    pub field: FieldSpec,
    pub degree: u32,
    pub filter: CensusFilter,
    pub budget: u128,
}

impl CensusSpec {
    pub fn new(field: &FieldSpec, degree: u32, filter: CensusFilter) -> CensusSpec {
        CensusSpec {
            field: field.clone(),
            degree,
            filter,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u128) -> CensusSpec {
        self.budget = budget;
        self
    }

    /// Number of scalar classes: (q^M - 1)/(q - 1) over M basis monomials.
    /// Saturates at u128::MAX when the power overflows.
    pub fn candidates(&self) -> u128 {
        let m = monomials_of_degree(3, self.degree).len() as u32;
        match (self.field.q() as u128).checked_pow(m) {
            Some(qm) => (qm - 1) / (self.field.q() as u128 - 1),
            None => u128::MAX,
        }
    }

    fn check_budget(&self) -> Result<u64> {
        let total = self.candidates();
        if total > self.budget {
            return Err(Error::BudgetExceeded {
                required: total,
                budget: self.budget,
            });
        }
        Ok(total as u64)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusWitness {
    /// Global index of the candidate in enumeration order.
    pub index: u64,
    /// Element indices over the degree-d monomial basis.
    pub coeffs: Vec<u8>,
    pub text: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    #[serde(skip)]
    field: FieldSpec,
    pub q: u64,
    pub degree: u32,
    pub filter: CensusFilter,
    pub total_candidates: u128,
    /// Candidates examined by this report (the whole space after a full
    /// census, a block's worth for a partition).
    pub examined: u64,
    /// Candidates that passed the filter and entered the spectrum.
    pub matched: u64,
    pub spectrum: BTreeMap<u64, u64>,
    pub m: Option<u64>,
    pub m2: Option<u64>,
    pub witnesses: BTreeMap<u64, CensusWitness>,
}

impl CensusReport {
    fn finalize(&mut self) {
        self.m = self.spectrum.keys().max().copied();
        self.m2 = match self.m {
            Some(m) => self.spectrum.keys().filter(|&&n| n < m).max().copied(),
            None => None,
        };
    }

    /// Merge two partition reports; spectra add, witnesses keep the smaller
    /// global index, so the result does not depend on the merge order.
    pub fn merge(mut self, other: CensusReport) -> Result<CensusReport> {
        if self.q != other.q || self.degree != other.degree || self.filter != other.filter {
            return Err(Error::RingMismatch);
        }
        self.examined += other.examined;
        self.matched += other.matched;
        for (n, c) in other.spectrum {
            *self.spectrum.entry(n).or_insert(0) += c;
        }
        for (n, w) in other.witnesses {
            match self.witnesses.get(&n) {
                Some(existing) if existing.index <= w.index => {}
                _ => {
                    self.witnesses.insert(n, w);
                }
            }
        }
        self.finalize();
        Ok(self)
    }

    /// Rebuild the witness curve for a given point count.
    pub fn witness_curve(&self, n: u64) -> Option<PlaneCurve> {
        let w = self.witnesses.get(&n)?;
        let basis = monomials_of_degree(3, self.degree);
        let terms: Vec<(Monomial, crate::gf::FqElem)> = basis
            .iter()
            .zip(&w.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m.clone(), self.field.elem_at(c).clone()))
            .collect();
        let poly = Poly::from_terms(&self.field, 3, terms).ok()?;
        PlaneCurve::new(poly).ok()
    }

    /// "N,count" rows in ascending N.
    pub fn spectrum_csv(&self) -> String {
        let mut out = String::from("N,count\n");
        for (n, c) in &self.spectrum {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }
}

struct LineData {
    point_rows: Vec<usize>,
    /// (d+1) x M restriction matrix: row r holds the coefficient of the r-th
    /// binary basis monomial in the restriction of each degree-d monomial.
    rmat: Vec<u8>,
}

struct Ctx {
    field: FieldSpec,
    filter: CensusFilter,
    m: usize,
    npts: usize,
    /// point-major value matrix, npts x m
    vmat: Vec<u8>,
    lines: Vec<LineData>,
    bform_len: usize,
    cert_threshold: i128,
}

impl Ctx {
    fn build(spec: &CensusSpec) -> Ctx {
        let field = &spec.field;
        let d = spec.degree;
        let basis = monomials_of_degree(3, d);
        let m = basis.len();
        let points = enumerate_proj(field, 2);
        let npts = points.len();

        let mut vmat = Vec::with_capacity(npts * m);
        for p in points.iter() {
            let idx: Vec<u8> = p.coords().iter().map(|c| field.elem_index(c)).collect();
            for mono in &basis {
                let mut v = 1u8;
                for (i, &e) in mono.exps().iter().enumerate() {
                    if e > 0 {
                        v = field.mul_idx(v, field.pow_idx(idx[i], e as u64));
                    }
                }
                vmat.push(v);
            }
        }

        let bform = monomials_of_degree(2, d);
        let mut lines = Vec::new();
        for lform in enumerate_lines_p2(field) {
            let point_rows: Vec<usize> = points
                .iter()
                .enumerate()
                .filter(|(_, p)| lform.eval(p.coords()).unwrap().is_zero())
                .map(|(i, _)| i)
                .collect();
            let mut on = points
                .iter()
                .filter(|p| lform.eval(p.coords()).unwrap().is_zero());
            let pa = on.next().expect("line has points");
            let pb = on.next().expect("line has at least two points");
            let mut rmat = vec![0u8; bform.len() * m];
            for (j, mono) in basis.iter().enumerate() {
                let restricted = Poly::term(field, mono.clone(), &field.one())
                    .restrict_to_line(pa, pb)
                    .unwrap();
                for (r, bm) in bform.iter().enumerate() {
                    rmat[r * m + j] = field.elem_index(&restricted.coeff(bm));
                }
            }
            lines.push(LineData { point_rows, rmat });
        }

        let q = field.q() as i128;
        Ctx {
            field: field.clone(),
            filter: spec.filter,
            m,
            npts,
            vmat,
            lines,
            bform_len: bform.len(),
            cert_threshold: (d as i128 - 2) * q + 3,
        }
    }
}

/// Enumeration state: the scalar class with leading 1 at `lead` and the given
/// coefficient indices.
struct EnumState {
    lead: usize,
    coeffs: Vec<u8>,
}

impl EnumState {
    /// Decode a global candidate index.
    fn decode(q: u64, m: usize, mut g: u64) -> EnumState {
        let mut lead = m - 1;
        loop {
            let tail = (m - 1 - lead) as u32;
            let size = q.pow(tail);
            if g < size {
                break;
            }
            g -= size;
            lead -= 1;
        }
        let mut coeffs = vec![0u8; m];
        coeffs[lead] = 1;
        let mut rem = g;
        for j in (lead + 1..m).rev() {
            coeffs[j] = (rem % q) as u8;
            rem /= q;
        }
        EnumState { lead, coeffs }
    }

    /// Advance to the next candidate; false when exhausted.
    fn advance(&mut self, q: u64) -> bool {
        let m = self.coeffs.len();
        for j in (self.lead + 1..m).rev() {
            self.coeffs[j] += 1;
            if (self.coeffs[j] as u64) < q {
                return true;
            }
            self.coeffs[j] = 0;
        }
        if self.lead == 0 {
            return false;
        }
        self.coeffs[self.lead] = 0;
        self.lead -= 1;
        self.coeffs[self.lead] = 1;
        true
    }
}

struct Tallies {
    examined: u64,
    matched: u64,
    spectrum: Vec<u64>,
    witnesses: Vec<Option<(u64, Vec<u8>)>>,
}

fn scan_range(ctx: &Ctx, start: u64, end: u64) -> Tallies {
    let q = ctx.field.q();
    let qa = q as usize;
    let (add, mul) = ctx.field.tables();
    let mut t = Tallies {
        examined: 0,
        matched: 0,
        spectrum: vec![0; ctx.npts + 1],
        witnesses: vec![None; ctx.npts + 1],
    };
    if start >= end {
        return t;
    }
    let mut state = EnumState::decode(q, ctx.m, start);
    let mut vals = vec![0u8; ctx.npts];
    for g in start..end {
        t.examined += 1;
        let cs = &state.coeffs;
        let lead = state.lead;
        // evaluate at every point
        let mut zeros = 0u64;
        for (pt, slot) in vals.iter_mut().enumerate() {
            let row = &ctx.vmat[pt * ctx.m..(pt + 1) * ctx.m];
            let mut acc = 0usize;
            for j in lead..ctx.m {
                let c = cs[j] as usize;
                if c != 0 {
                    acc = add[acc * qa + mul[c * qa + row[j] as usize] as usize] as usize;
                }
            }
            *slot = acc as u8;
            if acc == 0 {
                zeros += 1;
            }
        }

        let keep = match ctx.filter {
            CensusFilter::All => true,
            CensusFilter::LineFree | CensusFilter::LineFreeIrreducible => {
                let mut line_free = true;
                'lines: for line in &ctx.lines {
                    if !line.point_rows.iter().all(|&r| vals[r] == 0) {
                        continue;
                    }
                    // every F_q-point of the line is on the curve; decide
                    // divisibility exactly via the restriction matrix
                    for r in 0..ctx.bform_len {
                        let row = &line.rmat[r * ctx.m..(r + 1) * ctx.m];
                        let mut acc = 0usize;
                        for j in lead..ctx.m {
                            let c = cs[j] as usize;
                            if c != 0 {
                                acc =
                                    add[acc * qa + mul[c * qa + row[j] as usize] as usize] as usize;
                            }
                        }
                        if acc != 0 {
                            continue 'lines;
                        }
                    }
                    line_free = false;
                    break;
                }
                line_free
                    && (ctx.filter == CensusFilter::LineFree || zeros as i128 >= ctx.cert_threshold)
            }
        };

        if keep {
            t.matched += 1;
            t.spectrum[zeros as usize] += 1;
            if t.witnesses[zeros as usize].is_none() {
                t.witnesses[zeros as usize] = Some((g, cs.clone()));
            }
        }

        if g + 1 < end && !state.advance(q) {
            unreachable!("enumeration exhausted before the range end");
        }
    }
    t
}

fn report_from_tallies(spec: &CensusSpec, total: u128, t: Tallies) -> CensusReport {
    let field = &spec.field;
    let basis = monomials_of_degree(3, spec.degree);
    let mut spectrum = BTreeMap::new();
    for (n, &c) in t.spectrum.iter().enumerate() {
        if c > 0 {
            spectrum.insert(n as u64, c);
        }
    }
    let mut witnesses = BTreeMap::new();
    for (n, w) in t.witnesses.into_iter().enumerate() {
        if let Some((index, coeffs)) = w {
            let terms: Vec<(Monomial, crate::gf::FqElem)> = basis
                .iter()
                .zip(&coeffs)
                .filter(|(_, &c)| c != 0)
                .map(|(m, &c)| (m.clone(), field.elem_at(c).clone()))
                .collect();
            let text = Poly::from_terms(field, 3, terms).unwrap().to_string();
            witnesses.insert(
                n as u64,
                CensusWitness {
                    index,
                    coeffs,
                    text,
                },
            );
        }
    }
    let mut report = CensusReport {
        field: field.clone(),
        q: field.q(),
        degree: spec.degree,
        filter: spec.filter,
        total_candidates: total,
        examined: t.examined,
        matched: t.matched,
        spectrum,
        m: None,
        m2: None,
        witnesses,
    };
    report.finalize();
    report
}

/// Full census, internally parallel over lexicographic blocks; the result is
/// identical to any partitioned run merged in any order.
pub fn census(spec: &CensusSpec) -> Result<CensusReport> {
    let total = spec.check_budget()?;
    let ctx = Ctx::build(spec);
    let chunk: u64 = 1 << 16;
    let nblocks = total.div_ceil(chunk).max(1);
    let merged = (0..nblocks)
        .into_par_iter()
        .map(|b| {
            let start = b * chunk;
            let end = ((b + 1) * chunk).min(total);
            report_from_tallies(spec, total as u128, scan_range(&ctx, start, end))
        })
        .reduce_with(|a, b| a.merge(b).expect("same spec"));
    Ok(merged.unwrap_or_else(|| report_from_tallies(spec, total as u128, scan_range(&ctx, 0, 0))))
}

/// Census over the part-th of num_parts contiguous blocks.  Merging all the
/// parts equals the full census exactly.
pub fn census_partition(spec: &CensusSpec, part: u64, num_parts: u64) -> Result<CensusReport> {
    if num_parts == 0 || part >= num_parts {
        return Err(Error::BadPartition { part, num_parts });
    }
    let total = spec.check_budget()?;
    let ctx = Ctx::build(spec);
    let start = total / num_parts * part + (total % num_parts).min(part);
    let len = total / num_parts + u64::from(part < total % num_parts);
    Ok(report_from_tallies(
        spec,
        total as u128,
        scan_range(&ctx, start, start + len),
    ))
}

/// Stream of candidate curves in enumeration order with the filter applied.
pub fn enumerate_curves(spec: &CensusSpec) -> Result<CurveStream> {
    let total = spec.check_budget()?;
    let ctx = Ctx::build(spec);
    Ok(CurveStream {
        ctx,
        next_index: 0,
        total,
        spec: spec.clone(),
    })
}

pub struct CurveStream {
    ctx: Ctx,
    next_index: u64,
    total: u64,
    spec: CensusSpec,
}

impl Iterator for CurveStream {
    type Item = PlaneCurve;

    fn next(&mut self) -> Option<PlaneCurve> {
        let basis = monomials_of_degree(3, self.spec.degree);
        while self.next_index < self.total {
            let g = self.next_index;
            self.next_index += 1;
            let t = scan_range(&self.ctx, g, g + 1);
            if t.matched == 1 {
                let (_, coeffs) = t
                    .witnesses
                    .into_iter()
                    .flatten()
                    .next()
                    .expect("matched candidate has a witness");
                let terms: Vec<(Monomial, crate::gf::FqElem)> = basis
                    .iter()
                    .zip(&coeffs)
                    .filter(|(_, &c)| c != 0)
                    .map(|(m, &c)| (m.clone(), self.spec.field.elem_at(c).clone()))
                    .collect();
                let poly = Poly::from_terms(&self.spec.field, 3, terms).unwrap();
                return Some(PlaneCurve::new(poly).unwrap());
            }
        }
        None
    }
}

// ------------------------------------------------------------------- figure

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FigureStatus {
    AttainedMax,
    AttainedSecond,
    ForbiddenGap,
}

impl fmt::Display for FigureStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FigureStatus::AttainedMax => "attained-max",
            FigureStatus::AttainedSecond => "attained-second",
            FigureStatus::ForbiddenGap => "forbidden-gap",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FigureRow {
    pub d: u32,
    pub n: u64,
    pub status: FigureStatus,
}

/// Largest point count of a degree-d curve without F_q-line components,
/// d >= q+1, q > 3.
pub fn m_value(q: u64, d: u32) -> u64 {
    if d as u64 == q + 1 {
        q * q + 1
    } else {
        theta(q, 2)
    }
}

/// Second-largest point count for d >= q+1, q > 3.
pub fn m2_value(q: u64, d: u32) -> u64 {
    let d = d as u64;
    if d == q + 1 {
        q * q
    } else {
        q * q + (d - q + 1).min(q)
    }
}

/// Attainable/forbidden point counts for each degree q+1..=d_max: N = M is
/// attained, N = second value is attained, the open interval between them is
/// forbidden.  The closed formulas require q > 3.
pub fn figure_data(field: &FieldSpec, d_max: u32) -> Result<Vec<FigureRow>> {
    let q = field.q();
    if q <= 3 {
        return Err(Error::BadDegreeRange(
            "the figure formulas require q > 3; use the census for tiny q".into(),
        ));
    }
    if (d_max as u64) < q + 1 {
        return Err(Error::BadDegreeRange(format!(
            "d_max must be at least q+1 = {}",
            q + 1
        )));
    }
    let mut rows = Vec::new();
    for d in (q as u32 + 1)..=d_max {
        let m = m_value(q, d);
        let m2 = m2_value(q, d);
        rows.push(FigureRow {
            d,
            n: m,
            status: FigureStatus::AttainedMax,
        });
        for n in (m2 + 1..m).rev() {
            rows.push(FigureRow {
                d,
                n,
                status: FigureStatus::ForbiddenGap,
            });
        }
        rows.push(FigureRow {
            d,
            n: m2,
            status: FigureStatus::AttainedSecond,
        });
    }
    Ok(rows)
}

pub fn figure_csv(rows: &[FigureRow]) -> String {
    let mut out = String::from("d,N,status\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.d, r.n, r.status));
    }
    out
}
