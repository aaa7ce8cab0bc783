//! Sparse multivariate polynomials over F_q.
//!
//! Terms are kept in a map keyed by exponent vector; coefficients are always
//! nonzero, so the zero polynomial has an empty term map.  The term order is
//! graded lexicographic with x_0 > x_1 > ... > x_n, fixed globally: it drives
//! display, serialization, and the monomial bases used by the linear-algebra
//! membership routines.

use crate::error::{Error, Result};
use crate::gf::{FieldEmbedding, FieldSpec, FqElem};
use crate::projspace::ProjPoint;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// An exponent vector; the monomial x_0^{e_0} ... x_n^{e_n}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lex with x_0 the most significant variable.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

/// All monomials of total degree d in `nvars` variables, in descending
/// graded-lex order (x_0^d first, x_{n}^d last).
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(nvars);
    gen_monomials(nvars, d, &mut prefix, &mut out);
    out
}

fn gen_monomials(nvars: usize, rem: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if prefix.len() == nvars - 1 {
        let mut exps = prefix.clone();
        exps.push(rem);
        out.push(Monomial::new(exps));
        return;
    }
    for e in (0..=rem).rev() {
        prefix.push(e);
        gen_monomials(nvars, rem - e, prefix, out);
        prefix.pop();
    }
}

/// Degree report of [`Poly::is_homogeneous`]: the zero polynomial vanishes
/// identically and counts as homogeneous of any degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Any,
    Degree(u32),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Monomial, FqElem>,
}

impl Poly {
    pub fn zero(field: &FieldSpec, nvars: usize) -> Poly {
        Poly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &FieldSpec, nvars: usize, c: &FqElem) -> Poly {
        let mut p = Poly::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::new(vec![0; nvars]), c.clone());
        }
        p
    }

    pub fn one(field: &FieldSpec, nvars: usize) -> Poly {
        Poly::constant(field, nvars, &field.one())
    }

    /// x_i^k
    pub fn var_pow(field: &FieldSpec, nvars: usize, i: usize, k: u32) -> Poly {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = k;
        Poly::term(field, Monomial::new(exps), &field.one())
    }

    pub fn variable(field: &FieldSpec, nvars: usize, i: usize) -> Poly {
        Poly::var_pow(field, nvars, i, 1)
    }

    /// Single-term polynomial c * m.
    pub fn term(field: &FieldSpec, m: Monomial, c: &FqElem) -> Poly {
        let mut p = Poly::zero(field, m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c.clone());
        }
        p
    }

    /// The linear form coeffs[0]*x_0 + ... + coeffs[n]*x_n.
    pub fn linear_form(field: &FieldSpec, coeffs: &[FqElem]) -> Poly {
        let nvars = coeffs.len();
        let mut p = Poly::zero(field, nvars);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut exps = vec![0; nvars];
                exps[i] = 1;
                p.terms.insert(Monomial::new(exps), c.clone());
            }
        }
        p
    }

    pub fn from_terms(
        field: &FieldSpec,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, FqElem)>,
    ) -> Result<Poly> {
        let mut p = Poly::zero(field, nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: m.nvars(),
                });
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: &FqElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.field.add(o.get(), c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FqElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn coeff(&self, m: &Monomial) -> FqElem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn same_ring(&self, other: &Poly) -> Result<()> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn scale(&self, s: &FqElem) -> Poly {
        if s.is_zero() {
            return Poly::zero(&self.field, self.nvars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.mul(c, s);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        let mut out = Poly::zero(&self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.field, self.nvars);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Exact value at a point given by field elements.
    pub fn eval(&self, point: &[FqElem]) -> Result<FqElem> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let f = &self.field;
        let idx: Vec<u8> = point.iter().map(|x| f.elem_index(x)).collect();
        let mut acc = 0u8;
        for (m, c) in &self.terms {
            let mut v = f.elem_index(c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    v = f.mul_idx(v, f.pow_idx(idx[i], e as u64));
                }
                if v == 0 {
                    break;
                }
            }
            acc = f.add_idx(acc, v);
        }
        Ok(f.elem_at(acc).clone())
    }

    /// Some(Degree(d)) if every term has degree d, Some(Any) for zero,
    /// None when degrees are mixed.
    pub fn is_homogeneous(&self) -> Option<Homogeneity> {
        let mut it = self.terms.keys();
        let d = match it.next() {
            None => return Some(Homogeneity::Any),
            Some(m) => m.degree(),
        };
        if it.all(|m| m.degree() == d) {
            Some(Homogeneity::Degree(d))
        } else {
            None
        }
    }

    /// The binary form F(s*P + t*Q) in new variables (s, t).  Identically zero
    /// exactly when the line through P and Q lies inside {F = 0}.
    pub fn restrict_to_line(&self, p: &ProjPoint, q: &ProjPoint) -> Result<Poly> {
        if p.coords().len() != self.nvars || q.coords().len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: p.coords().len(),
            });
        }
        if p == q {
            return Err(Error::DegeneratePoints);
        }
        if self.is_homogeneous().is_none() {
            return Err(Error::NotHomogeneous);
        }
        let f = &self.field;
        let maxdeg = self.degree().unwrap_or(0);
        let pascal = pascal_mod_p(f.p(), maxdeg);
        let mut out = Poly::zero(f, 2);
        for (m, c) in &self.terms {
            // expand prod_i (s p_i + t q_i)^{e_i} as a map s-degree -> coeff
            let mut acc: BTreeMap<u32, FqElem> = BTreeMap::new();
            acc.insert(0, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pi = &p.coords()[i];
                let qi = &q.coords()[i];
                let mut next: BTreeMap<u32, FqElem> = BTreeMap::new();
                for k in 0..=e {
                    let bc = pascal[e as usize][k as usize];
                    if bc == 0 {
                        continue;
                    }
                    let w = f.mul(
                        &f.from_int(bc),
                        &f.mul(&f.pow(pi, k as u64), &f.pow(qi, (e - k) as u64)),
                    );
                    if w.is_zero() {
                        continue;
                    }
                    for (sdeg, cc) in &acc {
                        let v = f.mul(cc, &w);
                        if v.is_zero() {
                            continue;
                        }
                        let entry = next.entry(sdeg + k).or_insert_with(|| f.zero());
                        *entry = f.add(entry, &v);
                    }
                }
                next.retain(|_, v| !v.is_zero());
                acc = next;
            }
            let d = m.degree();
            for (sdeg, cc) in acc {
                out.add_term(Monomial::new(vec![sdeg, d - sdeg]), &cc);
            }
        }
        Ok(out)
    }

    /// Split into homogeneous components, lowest degree first.
    pub fn homogeneous_components(&self) -> Vec<Poly> {
        let mut by_degree: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_degree
                .entry(m.degree())
                .or_insert_with(|| Poly::zero(&self.field, self.nvars))
                .add_term(m.clone(), c);
        }
        by_degree.into_values().collect()
    }

    /// Whether the linear form l divides f.  Exact: linear forms are prime and
    /// homogeneous, so l | f iff the restriction of every homogeneous
    /// component of f to {l = 0} vanishes identically as a form.
    pub fn divides_linear(l: &Poly, f: &Poly) -> Result<bool> {
        l.same_ring(f)?;
        if l.is_homogeneous() != Some(Homogeneity::Degree(1)) {
            return Err(Error::NotLinear);
        }
        let fld = &l.field;
        let n = l.nvars;
        let coeffs: Vec<FqElem> = (0..n)
            .map(|i| {
                let mut exps = vec![0; n];
                exps[i] = 1;
                l.coeff(&Monomial::new(exps))
            })
            .collect();
        let j = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero linear form");
        // kernel basis of the 1 x n row: e_i - (c_i / c_j) e_j for i != j
        let cj_inv = fld.inv(&coeffs[j])?;
        let mut basis = Vec::with_capacity(n - 1);
        for i in 0..n {
            if i == j {
                continue;
            }
            let mut v = vec![fld.zero(); n];
            v[i] = fld.one();
            v[j] = fld.neg(&fld.mul(&coeffs[i], &cj_inv));
            basis.push(ProjPoint::new(fld, &v)?);
        }
        for component in f.homogeneous_components() {
            let divides = if basis.len() < 2 {
                // binary case: {l=0} is a single point of P^1 and the factor
                // theorem reduces divisibility to vanishing there
                component.eval(basis[0].coords())?.is_zero()
            } else {
                component.restrict_to_line(&basis[0], &basis[1])?.is_zero()
            };
            if !divides {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn partial_derivative(&self, i: usize) -> Poly {
        assert!(i < self.nvars, "variable index out of range");
        let f = &self.field;
        let mut out = Poly::zero(f, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let k = f.from_int(e as u64);
            if k.is_zero() {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), &f.mul(c, &k));
        }
        out
    }

    /// Push every coefficient through a field embedding.
    pub fn map_field(&self, emb: &FieldEmbedding) -> Poly {
        let mut out = Poly::zero(emb.dst(), self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &emb.map(c));
        }
        out
    }

    /// Flat term list for JSON interchange.
    pub fn to_term_list(&self) -> Vec<PolyTerm> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| PolyTerm {
                exps: m.exps().to_vec(),
                coeff: c.coeffs().to_vec(),
            })
            .collect()
    }

    pub fn from_term_list(field: &FieldSpec, nvars: usize, terms: &[PolyTerm]) -> Result<Poly> {
        let mut acc = Vec::with_capacity(terms.len());
        for t in terms {
            acc.push((
                Monomial::new(t.exps.clone()),
                field.elem_from_coeffs(&t.coeff)?,
            ));
        }
        Poly::from_terms(field, nvars, acc)
    }
}

/// JSON form of one term: {"exps": [...], "coeff": [...residues...]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyTerm {
    pub exps: Vec<u32>,
    pub coeff: Vec<u64>,
}

/// Pascal's triangle reduced mod p, rows 0..=n.
fn pascal_mod_p(p: u64, n: u32) -> Vec<Vec<u64>> {
    let n = n as usize;
    let mut rows = vec![vec![1u64]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![1u64; i + 1];
        for k in 1..i {
            row[k] = (prev[k - 1] + prev[k]) % p;
        }
        rows.push(row);
    }
    rows
}

// ---------------------------------------------------------------- text form

fn var_name(nvars: usize, i: usize) -> String {
    if nvars == 3 {
        ["X", "Y", "Z"][i].to_string()
    } else {
        format!("x{i}")
    }
}

impl fmt::Display for Poly {
    /// Descending graded-lex term order, canonical coefficients, '+' separators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            let cs = self.field.elem_string(c);
            let is_one = *c == self.field.one();
            if !is_one || m.degree() == 0 {
                if cs.contains('+') {
                    factors.push(format!("({cs})"));
                } else {
                    factors.push(cs);
                }
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(var_name(self.nvars, i)),
                    _ => factors.push(format!("{}^{}", var_name(self.nvars, i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Poly[{} vars over F_{}]({})",
            self.nvars,
            self.field.q(),
            self
        )
    }
}

/// Parse the text grammar: `term (('+'|'-') term)*`, where a term is a
/// '*'-separated product of integer constants, parenthesized field elements,
/// generator powers `t^k` (extension fields), and variable powers `x0^2`
/// (aliases X, Y, Z when there are three variables).
pub fn parse_poly(field: &FieldSpec, nvars: usize, input: &str) -> Result<Poly> {
    let mut out = Poly::zero(field, nvars);
    let mut rest = input.trim();
    if rest.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut sign_neg = false;
    if let Some(s) = rest.strip_prefix('-') {
        sign_neg = true;
        rest = s.trim_start();
    } else if let Some(s) = rest.strip_prefix('+') {
        rest = s.trim_start();
    }
    loop {
        let (term_str, tail, next_neg) = split_term(rest)?;
        let (coeff, mono) = parse_term(field, nvars, term_str)?;
        let coeff = if sign_neg { field.neg(&coeff) } else { coeff };
        out.add_term(mono, &coeff);
        match tail {
            None => break,
            Some(t) => {
                rest = t;
                sign_neg = next_neg;
            }
        }
    }
    Ok(out)
}

/// Split off the leading term at the first top-level '+' or '-'.
fn split_term(s: &str) -> Result<(&str, Option<&str>, bool)> {
    let mut depth = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse("unbalanced ')'".into()))?
            }
            '+' if depth == 0 => return Ok((&s[..i], Some(s[i + 1..].trim_start()), false)),
            '-' if depth == 0 => return Ok((&s[..i], Some(s[i + 1..].trim_start()), true)),
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced '('".into()));
    }
    Ok((s, None, false))
}

fn parse_term(field: &FieldSpec, nvars: usize, s: &str) -> Result<(FqElem, Monomial)> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut coeff = field.one();
    let mut exps = vec![0u32; nvars];
    for factor in split_factors(s)? {
        let mut factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in '{s}'")));
        }
        if let Some(inner) = factor.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in '{factor}'")))?;
            coeff = field.mul(&coeff, &field.elem_from_str(inner)?);
            continue;
        }
        // a numeric prefix juxtaposed with a name, like "2X^2", is the
        // coefficient followed by the monomial
        if factor.starts_with(|c: char| c.is_ascii_digit()) {
            let split = factor.find(|c: char| !c.is_ascii_digit()).unwrap_or(factor.len());
            let (digits, rest) = factor.split_at(split);
            if !rest.is_empty() && !rest.starts_with('^') {
                let k = digits
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad integer '{digits}'")))?;
                coeff = field.mul(&coeff, &field.from_int(k));
                factor = rest;
            }
        }
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (
                b.trim(),
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent '{e}'")))?,
            ),
            None => (factor, 1),
        };
        if base.chars().all(|c| c.is_ascii_digit()) {
            let k = base
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad integer '{base}'")))?;
            coeff = field.mul(&coeff, &field.pow(&field.from_int(k), exp as u64));
        } else if base == "t" {
            if field.e() == 1 {
                return Err(Error::Parse(
                    "'t' is only defined for extension fields".into(),
                ));
            }
            let mut gen = vec![0u64; field.e()];
            gen[1] = 1;
            let t = field.elem_from_coeffs(&gen)?;
            coeff = field.mul(&coeff, &field.pow(&t, exp as u64));
        } else {
            let idx = parse_var(nvars, base)?;
            exps[idx] += exp;
        }
    }
    Ok((coeff, Monomial::new(exps)))
}

fn split_factors(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse("unbalanced ')'".into()))?
            }
            '*' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    Ok(out)
}

fn parse_var(nvars: usize, name: &str) -> Result<usize> {
    if nvars == 3 {
        match name {
            "X" => return Ok(0),
            "Y" => return Ok(1),
            "Z" => return Ok(2),
            _ => {}
        }
    }
    if let Some(idx) = name.strip_prefix('x') {
        let i: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad variable '{name}'")))?;
        if i < nvars {
            return Ok(i);
        }
        return Err(Error::Parse(format!(
            "variable '{name}' out of range for {nvars} variables"
        )));
    }
    Err(Error::Parse(format!("unknown variable '{name}'")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projspace::ProjPoint;

    fn f(p: u64, e: usize) -> FieldSpec {
        FieldSpec::new(p, e, None).unwrap()
    }

    fn pt(field: &FieldSpec, ints: &[u64]) -> ProjPoint {
        let coords: Vec<FqElem> = ints.iter().map(|&k| field.from_int(k)).collect();
        ProjPoint::new(field, &coords).unwrap()
    }

    #[test]
    fn eval_frobenius_binomial() {
        // X^q*Y - X*Y^q vanishes at every F_q-point
        let f3 = f(3, 1);
        let x = Poly::variable(&f3, 3, 0);
        let y = Poly::variable(&f3, 3, 1);
        let g = Poly::var_pow(&f3, 3, 0, 3)
            .mul(&y)
            .unwrap()
            .sub(&x.mul(&Poly::var_pow(&f3, 3, 1, 3)).unwrap())
            .unwrap();
        let v = g
            .eval(&[f3.from_int(1), f3.from_int(2), f3.zero()])
            .unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn eval_char2_conic() {
        let f2 = f(2, 1);
        let g = parse_poly(&f2, 3, "X^2 + Y*Z").unwrap();
        let one = f2.one();
        assert!(g
            .eval(&[one.clone(), one.clone(), one.clone()])
            .unwrap()
            .is_zero());
    }

    #[test]
    fn eval_arity_mismatch() {
        let f2 = f(2, 1);
        let g = Poly::variable(&f2, 3, 0);
        assert!(matches!(
            g.eval(&[f2.one()]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn homogeneity() {
        let f2 = f(2, 1);
        let g = parse_poly(&f2, 3, "X^2*Y + Z^3").unwrap();
        assert_eq!(g.is_homogeneous(), Some(Homogeneity::Degree(3)));
        let h = parse_poly(&f2, 3, "X^2 + X").unwrap();
        assert_eq!(h.is_homogeneous(), None);
        assert_eq!(Poly::zero(&f2, 3).is_homogeneous(), Some(Homogeneity::Any));
    }

    #[test]
    fn restriction_inside_hyperplane() {
        let f3 = f(3, 1);
        let x = Poly::variable(&f3, 3, 0);
        let r = x
            .restrict_to_line(&pt(&f3, &[0, 1, 0]), &pt(&f3, &[0, 0, 1]))
            .unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn restriction_of_conic() {
        // X^2+YZ restricted to the line through (1,0,0) and (0,1,0) is s^2
        let f2 = f(2, 1);
        let g = parse_poly(&f2, 3, "X^2 + Y*Z").unwrap();
        let r = g
            .restrict_to_line(&pt(&f2, &[1, 0, 0]), &pt(&f2, &[0, 1, 0]))
            .unwrap();
        assert_eq!(r, Poly::var_pow(&f2, 2, 0, 2));
    }

    #[test]
    fn restriction_degenerate_points() {
        let f2 = f(2, 1);
        let g = parse_poly(&f2, 3, "X^2 + Y*Z").unwrap();
        let p = pt(&f2, &[1, 0, 0]);
        assert_eq!(
            g.restrict_to_line(&p, &p).unwrap_err(),
            Error::DegeneratePoints
        );
    }

    /// Substitution oracle: evaluate the restriction at every (s,t) and compare
    /// with direct evaluation of F at s*P + t*Q.
    #[test]
    fn restriction_matches_substitution() {
        let f4 = f(2, 2);
        let g = parse_poly(&f4, 3, "X^3 + t*X*Y*Z + (1+t)*Z^3").unwrap();
        let p = pt(&f4, &[1, 0, 1]);
        let q = pt(&f4, &[0, 1, 1]);
        let r = g.restrict_to_line(&p, &q).unwrap();
        // zero or homogeneous of the same degree
        assert!(matches!(
            r.is_homogeneous(),
            Some(Homogeneity::Any) | Some(Homogeneity::Degree(3))
        ));
        for s in f4.elements() {
            for t in f4.elements() {
                let point: Vec<FqElem> = (0..3)
                    .map(|i| f4.add(&f4.mul(s, &p.coords()[i]), &f4.mul(t, &q.coords()[i])))
                    .collect();
                assert_eq!(
                    r.eval(&[s.clone(), t.clone()]).unwrap(),
                    g.eval(&point).unwrap()
                );
            }
        }
    }

    /// Independent symbolic oracle: compose F with the parametrization by
    /// plain polynomial arithmetic (no binomial tables) and compare exactly.
    /// Exercises exponents past the characteristic, where binomial
    /// coefficients collapse mod p.
    #[test]
    fn restriction_matches_symbolic_composition() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for (p, e, max_deg) in [(2u64, 1usize, 9u32), (3, 1, 8), (7, 1, 13), (2, 2, 7), (3, 2, 6)] {
            let fld = f(p, e);
            for _ in 0..20 {
                let d = rng.gen_range(1..=max_deg);
                let basis = monomials_of_degree(3, d);
                let mut terms: Vec<(Monomial, FqElem)> = Vec::new();
                for m in &basis {
                    if rng.gen_bool(0.4) {
                        terms.push((
                            m.clone(),
                            fld.elem_at(rng.gen_range(0..fld.q()) as u8).clone(),
                        ));
                    }
                }
                let form = Poly::from_terms(&fld, 3, terms).unwrap();
                let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
                    let coords: Vec<FqElem> = (0..3)
                        .map(|_| fld.elem_at(rng.gen_range(0..fld.q()) as u8).clone())
                        .collect();
                    ProjPoint::new(&fld, &coords)
                };
                let (a, b) = loop {
                    let first = pick(&mut rng);
                    let second = pick(&mut rng);
                    match (first, second) {
                        (Ok(a), Ok(b)) if a != b => break (a, b),
                        _ => continue,
                    }
                };
                let fast = form.restrict_to_line(&a, &b).unwrap();
                // s*a_i + t*b_i substituted by repeated poly multiplication
                let s = Poly::variable(&fld, 2, 0);
                let t = Poly::variable(&fld, 2, 1);
                let images: Vec<Poly> = (0..3)
                    .map(|i| {
                        s.scale(&a.coords()[i])
                            .add(&t.scale(&b.coords()[i]))
                            .unwrap()
                    })
                    .collect();
                let mut slow = Poly::zero(&fld, 2);
                for (m, c) in form.terms() {
                    let mut term = Poly::constant(&fld, 2, c);
                    for (i, &ex) in m.exps().iter().enumerate() {
                        if ex > 0 {
                            term = term.mul(&images[i].pow(ex)).unwrap();
                        }
                    }
                    slow = slow.add(&term).unwrap();
                }
                assert_eq!(fast, slow, "q={} degree {d}", fld.q());
            }
        }
    }

    #[test]
    fn linear_divisibility() {
        let f3 = f(3, 1);
        let x = Poly::variable(&f3, 3, 0);
        let g = parse_poly(&f3, 3, "Y^2 + Z^2").unwrap();
        let prod = x.mul(&g).unwrap();
        assert!(Poly::divides_linear(&x, &prod).unwrap());
        let y3 = parse_poly(&f3, 3, "Y^3").unwrap();
        assert!(!Poly::divides_linear(&x, &y3).unwrap());
        assert!(matches!(
            Poly::divides_linear(&g, &prod),
            Err(Error::NotLinear)
        ));
    }

    #[test]
    fn derivative_in_char_p() {
        let f2 = f(2, 1);
        assert!(Poly::var_pow(&f2, 3, 0, 2).partial_derivative(0).is_zero());
        assert_eq!(
            Poly::var_pow(&f2, 3, 0, 3).partial_derivative(0),
            Poly::var_pow(&f2, 3, 0, 2)
        );
        let f3 = f(3, 1);
        let g = parse_poly(&f3, 3, "X*Y + Z^2").unwrap();
        assert_eq!(g.partial_derivative(1), Poly::variable(&f3, 3, 0));
    }

    #[test]
    fn monomial_bases() {
        assert_eq!(monomials_of_degree(3, 1).len(), 3);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms[0].exps(), &[2, 0, 0]);
        assert_eq!(ms[ms.len() - 1].exps(), &[0, 0, 2]);
        // strictly decreasing in the term order
        for w in ms.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn ring_arithmetic() {
        let f2 = f(2, 1);
        let xy = parse_poly(&f2, 3, "X + Y").unwrap();
        assert!(xy.add(&xy).unwrap().is_zero());

        // X * (X^{q-1} - Z^{q-1}) = X^q - X*Z^{q-1} at q = 4
        let f4 = f(2, 2);
        let x = Poly::variable(&f4, 3, 0);
        let inner = Poly::var_pow(&f4, 3, 0, 3)
            .sub(&Poly::var_pow(&f4, 3, 2, 3))
            .unwrap();
        let lhs = x.mul(&inner).unwrap();
        let rhs = parse_poly(&f4, 3, "X^4 + X*Z^3").unwrap(); // char 2: minus is plus
        assert_eq!(lhs, rhs);

        // (Y)(Y - X) over F_3 = Y^2 - X*Y = Y^2 + 2*X*Y
        let f3 = f(3, 1);
        let y = Poly::variable(&f3, 3, 1);
        let y_minus_x = y.sub(&Poly::variable(&f3, 3, 0)).unwrap();
        let prod = y.mul(&y_minus_x).unwrap();
        assert_eq!(prod, parse_poly(&f3, 3, "Y^2 + 2*X*Y").unwrap());
    }

    #[test]
    fn ring_mismatch() {
        let f2 = f(2, 1);
        let f3 = f(3, 1);
        let a = Poly::variable(&f2, 3, 0);
        let b = Poly::variable(&f3, 3, 0);
        assert_eq!(a.add(&b).unwrap_err(), Error::RingMismatch);
        let c = Poly::variable(&f2, 2, 0);
        assert_eq!(a.mul(&c).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let f5 = f(5, 1);
        let g = parse_poly(&f5, 3, "2*X^2*Y + 4*Z^3 + 1").unwrap();
        let s = g.to_string();
        assert_eq!(parse_poly(&f5, 3, &s).unwrap(), g);

        let f4 = f(2, 2);
        let h = parse_poly(&f4, 3, "(1+t)*X^2 + t*Y*Z").unwrap();
        let s = h.to_string();
        assert_eq!(parse_poly(&f4, 3, &s).unwrap(), h);

        // generic variable names outside three variables
        let g2 = parse_poly(&f5, 4, "x0^2 + 3*x1*x3").unwrap();
        assert_eq!(parse_poly(&f5, 4, &g2.to_string()).unwrap(), g2);
    }

    #[test]
    fn parse_with_minus() {
        let f5 = f(5, 1);
        let g = parse_poly(&f5, 3, "X^2 - Y*Z").unwrap();
        let h = parse_poly(&f5, 3, "X^2 + 4*Y*Z").unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn parse_juxtaposed_coefficient() {
        let f5 = f(5, 1);
        assert_eq!(
            parse_poly(&f5, 3, "2X^2*Y + 3Z^3").unwrap(),
            parse_poly(&f5, 3, "2*X^2*Y + 3*Z^3").unwrap()
        );
        let f9 = f(3, 2);
        assert_eq!(
            parse_poly(&f9, 3, "2t*X").unwrap(),
            parse_poly(&f9, 3, "2*t*X").unwrap()
        );
        // exponent on a bare integer is still an integer power
        assert_eq!(
            parse_poly(&f5, 3, "2^3*X").unwrap(),
            parse_poly(&f5, 3, "3*X").unwrap()
        );
        assert!(parse_poly(&f5, 3, "2Q").is_err());
    }

    #[test]
    fn term_list_roundtrip() {
        let f4 = f(2, 2);
        let g = parse_poly(&f4, 3, "(1+t)*X^2 + t*Y*Z + 1").unwrap();
        let terms = g.to_term_list();
        assert_eq!(Poly::from_term_list(&f4, 3, &terms).unwrap(), g);
    }

    #[test]
    fn homogeneous_scaling() {
        let f5 = f(5, 1);
        let g = parse_poly(&f5, 3, "X^2*Y + 3*Z^3").unwrap();
        let pt = [f5.from_int(2), f5.from_int(3), f5.from_int(4)];
        let lam = f5.from_int(2);
        let scaled: Vec<FqElem> = pt.iter().map(|x| f5.mul(&lam, x)).collect();
        let lhs = g.eval(&scaled).unwrap();
        let rhs = f5.mul(&f5.pow(&lam, 3), &g.eval(&pt).unwrap());
        assert_eq!(lhs, rhs);
    }
}
