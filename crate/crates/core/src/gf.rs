//! Exact arithmetic in F_q for q = p^e.
//!
//! A [`FieldSpec`] is built once from (p, e, modulus) and precomputes the full
//! element list plus add/mul/neg/inv tables on element *indices*.  Everything
//! downstream works either with [`FqElem`] values (polynomial-basis coefficient
//! vectors, always fully reduced) or, in hot loops, directly with `u8` indices
//! into the tables.
//!
//! The element order is fixed: index(a) = sum a_i p^i, ascending.  The first
//! element is 0, the second is 1, and enumeration is deterministic.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Largest supported field size; indices must fit in a `u8` table.
pub const MAX_Q: u64 = 256;

/// Built-in irreducible moduli, coefficient vectors with the constant term
/// first.  Re-verified at every field construction.
const DEFAULT_MODULI: &[(u64, usize, &[u64])] = &[
    (2, 2, &[1, 1, 1]),             // t^2+t+1
    (2, 3, &[1, 1, 0, 1]),          // t^3+t+1
    (2, 4, &[1, 1, 0, 0, 1]),       // t^4+t+1
    (2, 5, &[1, 0, 1, 0, 0, 1]),    // t^5+t^2+1
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]), // t^6+t+1
    (3, 2, &[1, 0, 1]),             // t^2+1
    (3, 3, &[1, 2, 0, 1]),          // t^3+2t+1
    (3, 4, &[2, 1, 0, 0, 1]),       // t^4+t+2
    (5, 2, &[2, 1, 1]),             // t^2+t+2
    (5, 3, &[1, 1, 0, 1]),          // t^3+t+1
    (7, 2, &[1, 0, 1]),             // t^2+1
];

/// An element of F_{p^e} in the polynomial basis: coeffs[i] is the coefficient
/// of t^i, each in [0, p).  Always fully reduced, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FqElem {
    coeffs: Vec<u64>,
}

impl FqElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl PartialOrd for FqElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqElem {
    /// Canonical element order: ascending by sum coeffs[i] * p^i, which is
    /// lexicographic on the reversed coefficient vector.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.iter().rev().cmp(other.coeffs.iter().rev())
    }
}

struct FieldData {
    p: u64,
    e: usize,
    modulus: Vec<u64>,
    q: u64,
    elems: Vec<FqElem>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>, // inv[0] is unused
}

/// A concrete model of F_q = F_p[t]/(modulus), cheap to clone and share.
#[derive(Clone)]
pub struct FieldSpec {
    data: Arc<FieldData>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.p == other.data.p
                && self.data.e == other.data.e
                && self.data.modulus == other.data.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldSpec(q={}, p={}, e={})",
            self.q(),
            self.p(),
            self.e()
        )
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e() == 1 {
            write!(f, "F_{}", self.q())
        } else {
            write!(
                f,
                "F_{} = F_{}[t]/({})",
                self.q(),
                self.p(),
                modulus_string(&self.data.modulus)
            )
        }
    }
}

fn modulus_string(m: &[u64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in m.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let var = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        let part = match (c, i) {
            (_, 0) => format!("{c}"),
            (1, _) => var,
            _ => format!("{c}*{var}"),
        };
        parts.push(part);
    }
    parts.join("+")
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Decompose q as p^e with p prime, if possible.
fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).expect("q >= 2 has a factor");
    let mut e = 0usize;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Remainder of polynomial division a mod b over Z_p; b need not be monic.
fn zp_poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let lead_inv = zp_inv(b[db], p);
    while a.len() > db {
        let da = a.len() - 1;
        let c = a[da] % p;
        if c != 0 {
            let scale = c * lead_inv % p;
            for (i, &bi) in b.iter().enumerate() {
                let idx = da - db + i;
                a[idx] = (a[idx] + p * p - scale * bi % p) % p;
            }
        }
        a.pop();
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
    }
    a
}

fn zp_inv(a: u64, p: u64) -> u64 {
    // p is tiny; scan.
    (1..p)
        .find(|&x| a * x % p == 1)
        .expect("nonzero element of Z_p")
}

/// Irreducibility over Z_p by trial division: a monic polynomial of degree e
/// is irreducible iff no monic polynomial of degree 1..=e/2 divides it.
fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let e = modulus.len() - 1;
    for deg in 1..=e / 2 {
        let mut lower = vec![0u64; deg];
        'candidates: loop {
            let mut cand = lower.clone();
            cand.push(1);
            let rem = zp_poly_rem(modulus.to_vec(), &cand, p);
            if rem.iter().all(|&c| c == 0) {
                return false;
            }
            for digit in lower.iter_mut() {
                *digit += 1;
                if *digit < p {
                    continue 'candidates;
                }
                *digit = 0;
            }
            break;
        }
    }
    true
}

impl FieldSpec {
    /// Construct F_{p^e}.  With no modulus, (p, e) must either be e = 1 or
    /// appear in the built-in table.  The modulus is validated (monic of
    /// degree e, irreducible over Z_p) in every case.
    pub fn new(p: u64, e: usize, modulus: Option<Vec<u64>>) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if e == 0 {
            return Err(Error::BadModulus("extension degree must be >= 1".into()));
        }
        let q = p.checked_pow(e as u32).ok_or(Error::FieldTooLarge {
            q: u64::MAX,
            max: MAX_Q,
        })?;
        if q > MAX_Q {
            return Err(Error::FieldTooLarge { q, max: MAX_Q });
        }

        let modulus = match modulus {
            Some(m) => {
                if m.len() != e + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected {} coefficients, got {}",
                        e + 1,
                        m.len()
                    )));
                }
                let m: Vec<u64> = m.into_iter().map(|c| c % p).collect();
                if m[e] != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                m
            }
            None if e == 1 => vec![0, 1],
            None => DEFAULT_MODULI
                .iter()
                .find(|&&(tp, te, _)| tp == p && te == e)
                .map(|&(_, _, m)| m.to_vec())
                .ok_or(Error::NoDefaultModulus { p, e })?,
        };

        if e > 1 && !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus { p, modulus });
        }

        Ok(FieldSpec {
            data: Arc::new(FieldData::build(p, e, modulus, q)),
        })
    }

    /// Parse "5", "2^4", "3^2" style field strings; a bare prime power like
    /// "9" resolves to its unique (p, e).
    pub fn parse(s: &str) -> Result<FieldSpec> {
        let (p, e) = match s.split_once('^') {
            Some((ps, es)) => (
                ps.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad field '{s}'")))?,
                es.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad field '{s}'")))?,
            ),
            None => {
                let q = s
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad field '{s}'")))?;
                prime_power(q).ok_or(Error::NonPrime(q))?
            }
        };
        FieldSpec::new(p, e, None)
    }

    pub fn p(&self) -> u64 {
        self.data.p
    }

    pub fn e(&self) -> usize {
        self.data.e
    }

    pub fn q(&self) -> u64 {
        self.data.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.data.modulus
    }

    /// All q elements in canonical order: elems[0] = 0, elems[1] = 1.
    pub fn elements(&self) -> &[FqElem] {
        &self.data.elems
    }

    pub fn zero(&self) -> FqElem {
        self.data.elems[0].clone()
    }

    pub fn one(&self) -> FqElem {
        self.data.elems[1].clone()
    }

    /// The image of the integer k, i.e. (k mod p) * 1.
    pub fn from_int(&self, k: u64) -> FqElem {
        self.elem_at((k % self.data.p) as u8).clone()
    }

    /// Build an element from polynomial-basis coefficients (reduced mod p).
    pub fn elem_from_coeffs(&self, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() != self.data.e {
            return Err(Error::BadElement(format!(
                "expected {} coefficients, got {}",
                self.data.e,
                coeffs.len()
            )));
        }
        let canonical: Vec<u64> = coeffs.iter().map(|c| c % self.data.p).collect();
        Ok(FqElem { coeffs: canonical })
    }

    pub fn elem_index(&self, a: &FqElem) -> u8 {
        debug_assert_eq!(a.coeffs.len(), self.data.e);
        let mut idx = 0u64;
        for &c in a.coeffs.iter().rev() {
            idx = idx * self.data.p + c;
        }
        idx as u8
    }

    pub fn elem_at(&self, idx: u8) -> &FqElem {
        &self.data.elems[idx as usize]
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.elem_at(self.add_idx(self.elem_index(a), self.elem_index(b)))
            .clone()
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.elem_at(self.sub_idx(self.elem_index(a), self.elem_index(b)))
            .clone()
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.elem_at(self.mul_idx(self.elem_index(a), self.elem_index(b)))
            .clone()
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        self.elem_at(self.neg_idx(self.elem_index(a))).clone()
    }

    pub fn inv(&self, a: &FqElem) -> Result<FqElem> {
        Ok(self.elem_at(self.inv_idx(self.elem_index(a))?).clone())
    }

    pub fn div(&self, a: &FqElem, b: &FqElem) -> Result<FqElem> {
        let bi = self.inv_idx(self.elem_index(b))?;
        Ok(self.elem_at(self.mul_idx(self.elem_index(a), bi)).clone())
    }

    /// a^k by square-and-multiply; a^0 = 1 including for a = 0.
    pub fn pow(&self, a: &FqElem, k: u64) -> FqElem {
        self.elem_at(self.pow_idx(self.elem_index(a), k)).clone()
    }

    // ---- index-level operations (hot paths) ----

    #[inline]
    pub fn add_idx(&self, a: u8, b: u8) -> u8 {
        self.data.add[a as usize * self.data.q as usize + b as usize]
    }

    #[inline]
    pub fn sub_idx(&self, a: u8, b: u8) -> u8 {
        self.add_idx(a, self.neg_idx(b))
    }

    #[inline]
    pub fn mul_idx(&self, a: u8, b: u8) -> u8 {
        self.data.mul[a as usize * self.data.q as usize + b as usize]
    }

    #[inline]
    pub fn neg_idx(&self, a: u8) -> u8 {
        self.data.neg[a as usize]
    }

    #[inline]
    pub fn inv_idx(&self, a: u8) -> Result<u8> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.data.inv[a as usize])
    }

    pub fn pow_idx(&self, a: u8, mut k: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            base = self.mul_idx(base, base);
            k >>= 1;
        }
        acc
    }

    /// Raw add/mul table slices for scan kernels that want to avoid the
    /// method-call indirection.
    pub fn tables(&self) -> (&[u8], &[u8]) {
        (&self.data.add, &self.data.mul)
    }

    /// Text form: plain integer for prime fields, "c0+c1*t+..." otherwise.
    pub fn elem_string(&self, a: &FqElem) -> String {
        if self.data.e == 1 {
            return a.coeffs[0].to_string();
        }
        if a.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in a.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let part = match (c, i) {
                (_, 0) => format!("{c}"),
                (1, 1) => "t".to_string(),
                (_, 1) => format!("{c}*t"),
                (1, _) => format!("t^{i}"),
                (_, _) => format!("{c}*t^{i}"),
            };
            parts.push(part);
        }
        parts.join("+")
    }

    /// Parse the text form produced by [`FieldSpec::elem_string`].
    pub fn elem_from_str(&self, s: &str) -> Result<FqElem> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let mut coeffs = vec![0u64; self.data.e];
        for term in s.split('+') {
            let term = term.trim();
            let (coeff_str, power) = match term.find('t') {
                None => (term, None),
                Some(pos) => {
                    let c = term[..pos].trim().trim_end_matches('*').trim();
                    let rest = &term[pos + 1..];
                    let pw = if let Some(stripped) = rest.trim().strip_prefix('^') {
                        stripped
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad exponent in '{term}'")))?
                    } else if rest.trim().is_empty() {
                        1
                    } else {
                        return Err(Error::Parse(format!("bad term '{term}'")));
                    };
                    (c, Some(pw))
                }
            };
            let c = if coeff_str.is_empty() {
                1
            } else {
                coeff_str
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient '{coeff_str}'")))?
            };
            let i = power.unwrap_or(0);
            if i >= self.data.e && c % self.data.p != 0 {
                return Err(Error::Parse(format!(
                    "t^{i} out of range for degree {}",
                    self.data.e
                )));
            }
            if i < self.data.e {
                coeffs[i] = (coeffs[i] + c) % self.data.p;
            }
        }
        Ok(FqElem { coeffs })
    }
}

impl FieldData {
    fn build(p: u64, e: usize, modulus: Vec<u64>, q: u64) -> FieldData {
        let qu = q as usize;
        let mut elems = Vec::with_capacity(qu);
        for idx in 0..q {
            let mut v = idx;
            let mut coeffs = Vec::with_capacity(e);
            for _ in 0..e {
                coeffs.push(v % p);
                v /= p;
            }
            elems.push(FqElem { coeffs });
        }

        let index_of = |coeffs: &[u64]| -> usize {
            let mut idx = 0u64;
            for &c in coeffs.iter().rev() {
                idx = idx * p + c;
            }
            idx as usize
        };

        let mut add = vec![0u8; qu * qu];
        let mut neg = vec![0u8; qu];
        for a in 0..qu {
            let na: Vec<u64> = elems[a].coeffs.iter().map(|&c| (p - c) % p).collect();
            neg[a] = index_of(&na) as u8;
            for b in 0..qu {
                let sum: Vec<u64> = elems[a]
                    .coeffs
                    .iter()
                    .zip(&elems[b].coeffs)
                    .map(|(&x, &y)| (x + y) % p)
                    .collect();
                add[a * qu + b] = index_of(&sum) as u8;
            }
        }

        let mut mul = vec![0u8; qu * qu];
        for a in 0..qu {
            for b in a..qu {
                let mut prod = vec![0u64; 2 * e - 1];
                for (i, &x) in elems[a].coeffs.iter().enumerate() {
                    for (j, &y) in elems[b].coeffs.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce by the monic modulus
                for i in (e..2 * e - 1).rev() {
                    let c = prod[i];
                    if c != 0 {
                        prod[i] = 0;
                        for j in 0..e {
                            prod[i - e + j] = (prod[i - e + j] + p * p - c * modulus[j] % p) % p;
                        }
                    }
                }
                let m = index_of(&prod[..e]) as u8;
                mul[a * qu + b] = m;
                mul[b * qu + a] = m;
            }
        }

        let mut inv = vec![0u8; qu];
        for a in 1..qu {
            inv[a] = (1..qu)
                .find(|&b| mul[a * qu + b] == 1)
                .expect("every nonzero element has an inverse") as u8;
        }

        FieldData {
            p,
            e,
            modulus,
            q,
            elems,
            add,
            mul,
            neg,
            inv,
        }
    }
}

/// Ring embedding F_{p^e} -> F_{p^{e*m}} sending the generator t to the
/// canonically least root of the source modulus in the target field.
pub struct FieldEmbedding {
    src: FieldSpec,
    dst: FieldSpec,
    /// images of t^0, t^1, ..., t^{e-1}
    powers: Vec<FqElem>,
}

impl FieldEmbedding {
    pub fn new(src: &FieldSpec, dst: &FieldSpec) -> Result<FieldEmbedding> {
        if src.p() != dst.p() {
            return Err(Error::NoEmbedding(format!(
                "different characteristic: {} vs {}",
                src.p(),
                dst.p()
            )));
        }
        if !dst.e().is_multiple_of(src.e()) {
            return Err(Error::NoEmbedding(format!(
                "degree {} does not divide {}",
                src.e(),
                dst.e()
            )));
        }
        // find the first root of the source modulus, scanning in canonical order
        let root = dst
            .elements()
            .iter()
            .find(|r| {
                // Horner evaluation of the modulus at r
                let mut acc = dst.zero();
                for &c in src.modulus().iter().rev() {
                    acc = dst.add(&dst.mul(&acc, r), &dst.from_int(c));
                }
                acc.is_zero()
            })
            .cloned()
            .ok_or_else(|| Error::NoEmbedding("modulus has no root in target".into()))?;
        let mut powers = Vec::with_capacity(src.e());
        let mut acc = dst.one();
        for _ in 0..src.e() {
            powers.push(acc.clone());
            acc = dst.mul(&acc, &root);
        }
        Ok(FieldEmbedding {
            src: src.clone(),
            dst: dst.clone(),
            powers,
        })
    }

    pub fn src(&self) -> &FieldSpec {
        &self.src
    }

    pub fn dst(&self) -> &FieldSpec {
        &self.dst
    }

    pub fn map(&self, a: &FqElem) -> FqElem {
        let mut acc = self.dst.zero();
        for (c, tp) in a.coeffs().iter().zip(&self.powers) {
            acc = self
                .dst
                .add(&acc, &self.dst.mul(&self.dst.from_int(*c), tp));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, e: usize) -> FieldSpec {
        FieldSpec::new(p, e, None).unwrap()
    }

    #[test]
    fn rejects_non_prime() {
        assert_eq!(FieldSpec::new(4, 1, None).unwrap_err(), Error::NonPrime(4));
        assert_eq!(FieldSpec::new(1, 1, None).unwrap_err(), Error::NonPrime(1));
    }

    #[test]
    fn rejects_degree_zero_and_oversized() {
        assert!(matches!(FieldSpec::new(2, 0, None), Err(Error::BadModulus(_))));
        assert!(matches!(
            FieldSpec::new(2, 9, Some(vec![1, 1, 0, 0, 0, 0, 0, 0, 0, 1])),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn rejects_reducible_modulus() {
        // t^2+1 = (t+1)^2 over F_2
        let err = FieldSpec::new(2, 2, Some(vec![1, 0, 1])).unwrap_err();
        assert!(matches!(err, Error::ReducibleModulus { .. }));
        // t^2 over F_3
        let err = FieldSpec::new(3, 2, Some(vec![0, 0, 1])).unwrap_err();
        assert!(matches!(err, Error::ReducibleModulus { .. }));
        // t^4+t^2+1 = (t^2+t+1)^2 over F_2: no roots, but a quadratic factor
        let err = FieldSpec::new(2, 4, Some(vec![1, 0, 1, 0, 1])).unwrap_err();
        assert!(matches!(err, Error::ReducibleModulus { .. }));
    }

    #[test]
    fn no_default_modulus() {
        assert_eq!(
            FieldSpec::new(11, 2, None).unwrap_err(),
            Error::NoDefaultModulus { p: 11, e: 2 }
        );
    }

    #[test]
    fn builtin_moduli_all_construct() {
        for &(p, e, _) in DEFAULT_MODULI {
            let fld = FieldSpec::new(p, e, None).unwrap();
            assert_eq!(fld.q(), p.pow(e as u32));
        }
    }

    #[test]
    fn f5_inverse() {
        let f5 = f(5, 1);
        let two = f5.from_int(2);
        assert_eq!(f5.inv(&two).unwrap(), f5.from_int(3));
        assert_eq!(f5.inv(&f5.zero()).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn f4_generator_square() {
        // t*t = t+1 under t^2+t+1
        let f4 = f(2, 2);
        let t = f4.elem_from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f4.mul(&t, &t), f4.elem_from_coeffs(&[1, 1]).unwrap());
    }

    #[test]
    fn f9_generator_square() {
        // t*t = -1 = 2 under t^2+1
        let f9 = f(3, 2);
        let t = f9.elem_from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.mul(&t, &t), f9.from_int(2));
    }

    #[test]
    fn enumeration_order() {
        let f9 = f(3, 2);
        let elems = f9.elements();
        assert_eq!(elems.len(), 9);
        assert!(elems[0].is_zero());
        assert_eq!(elems[1], f9.one());
        for (i, a) in elems.iter().enumerate() {
            assert_eq!(f9.elem_index(a) as usize, i);
        }
        // pairwise distinct
        for i in 0..elems.len() {
            for j in i + 1..elems.len() {
                assert_ne!(elems[i], elems[j]);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, e) in [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2)] {
            let fld = f(p, e);
            let elems: Vec<FqElem> = fld.elements().to_vec();
            for a in &elems {
                assert_eq!(fld.add(a, &fld.zero()), *a);
                assert_eq!(fld.mul(a, &fld.one()), *a);
                assert_eq!(fld.add(a, &fld.neg(a)), fld.zero());
                if !a.is_zero() {
                    assert_eq!(fld.mul(a, &fld.inv(a).unwrap()), fld.one());
                }
                for b in &elems {
                    assert_eq!(fld.add(a, b), fld.add(b, a));
                    assert_eq!(fld.mul(a, b), fld.mul(b, a));
                    for c in &elems {
                        assert_eq!(fld.add(&fld.add(a, b), c), fld.add(a, &fld.add(b, c)));
                        assert_eq!(fld.mul(&fld.mul(a, b), c), fld.mul(a, &fld.mul(b, c)));
                        assert_eq!(
                            fld.mul(a, &fld.add(b, c)),
                            fld.add(&fld.mul(a, b), &fld.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_and_unit_group() {
        for (p, e) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)] {
            let fld = f(p, e);
            let q = fld.q();
            for a in fld.elements() {
                assert_eq!(fld.pow(a, q), *a, "a^q = a in F_{q}");
                if !a.is_zero() {
                    assert_eq!(fld.pow(a, q - 1), fld.one(), "a^(q-1) = 1 in F_{q}");
                }
            }
        }
    }

    #[test]
    fn embedding_is_ring_hom() {
        let f4 = f(2, 2);
        let f16 = f(2, 4);
        let emb = FieldEmbedding::new(&f4, &f16).unwrap();
        assert!(emb.map(&f4.zero()).is_zero());
        assert_eq!(emb.map(&f4.one()), f16.one());
        let images: Vec<FqElem> = f4.elements().iter().map(|a| emb.map(a)).collect();
        for (i, a) in f4.elements().iter().enumerate() {
            for (j, b) in f4.elements().iter().enumerate() {
                assert_eq!(emb.map(&f4.add(a, b)), f16.add(&images[i], &images[j]));
                assert_eq!(emb.map(&f4.mul(a, b)), f16.mul(&images[i], &images[j]));
            }
        }
        // injective
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                assert_ne!(images[i], images[j]);
            }
        }
    }

    #[test]
    fn embedding_prime_to_extension() {
        let f3 = f(3, 1);
        let f9 = f(3, 2);
        let emb = FieldEmbedding::new(&f3, &f9).unwrap();
        assert_eq!(emb.map(&f3.from_int(2)), f9.from_int(2));
    }

    #[test]
    fn element_text_roundtrip() {
        let f9 = f(3, 2);
        for a in f9.elements() {
            let s = f9.elem_string(a);
            assert_eq!(&f9.elem_from_str(&s).unwrap(), a, "roundtrip of '{s}'");
        }
        let f5 = f(5, 1);
        assert_eq!(f5.elem_string(&f5.from_int(3)), "3");
        assert_eq!(f5.elem_from_str("3").unwrap(), f5.from_int(3));
    }

    #[test]
    fn parse_field_strings() {
        assert_eq!(FieldSpec::parse("5").unwrap().q(), 5);
        assert_eq!(FieldSpec::parse("2^4").unwrap().q(), 16);
        assert_eq!(FieldSpec::parse("3^2").unwrap().q(), 9);
        // bare prime powers resolve to (p, e)
        let f4 = FieldSpec::parse("4").unwrap();
        assert_eq!((f4.p(), f4.e(), f4.q()), (2, 2, 4));
        assert_eq!(FieldSpec::parse("27").unwrap().e(), 3);
        assert_eq!(FieldSpec::parse("6").unwrap_err(), Error::NonPrime(6));
        assert_eq!(FieldSpec::parse("12").unwrap_err(), Error::NonPrime(12));
    }
}
