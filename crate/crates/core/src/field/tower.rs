//! The pair `F_q ⊂ F_{q^d}` used as coefficient field for Laurent series in `1/θ`.

use std::sync::Arc;

use super::fq::{prime_power, FiniteField, FqElem};
use crate::error::{Error, Result};

/// Default number of `u`-digits, counted from the leading term, kept when inverting an exact series.
pub const DEFAULT_REL_PREC: i64 = 64;

#[derive(Debug, Clone)]
pub struct FieldTower {
    base: FiniteField,
    ext: FiniteField,
    q: u64,
    d: u32,
    embed: Vec<FqElem>,
    frob: Vec<FqElem>,
    rel_prec: i64,
}

impl FieldTower {
    /// `F_q ⊂ F_{q^d}` with the default moduli for both fields.
    pub fn new(q: u64, d: u32, rel_prec: i64) -> Result<Arc<Self>> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("q = {q} is not a prime power")))?;
        if d == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let base = FiniteField::new(p, m)?;
        let ext = if d == 1 { FiniteField::with_modulus(p, base.modulus().to_vec())? } else { FiniteField::new(p, m * d)? };
        Self::assemble(base, ext, d, rel_prec)
    }

    /// Tower from explicit moduli (low-to-high, monic) for `F_q` and `F_{q^d}`.
    pub fn with_moduli(p: u32, base_modulus: Vec<u32>, ext_modulus: Vec<u32>, rel_prec: i64) -> Result<Arc<Self>> {
        let base = FiniteField::with_modulus(p, base_modulus)?;
        let ext = FiniteField::with_modulus(p, ext_modulus)?;
        if ext.degree() % base.degree() != 0 {
            return Err(Error::InvalidField(format!(
                "degree {} is not a multiple of {}",
                ext.degree(),
                base.degree()
            )));
        }
        let d = ext.degree() / base.degree();
        Self::assemble(base, ext, d, rel_prec)
    }

    fn assemble(base: FiniteField, ext: FiniteField, d: u32, rel_prec: i64) -> Result<Arc<Self>> {
        if rel_prec <= 0 {
            return Err(Error::InvalidField("relative precision must be positive".into()));
        }
        let q = base.size() as u64;
        let embed = if base.modulus() == ext.modulus() {
            base.elements().collect()
        } else {
            let m = base.modulus();
            let root = ext
                .elements()
                .find(|&r| {
                    let v = m.iter().rev().fold(FqElem::ZERO, |acc, &c| ext.add(ext.mul(acc, r), ext.from_int(c as i64)));
                    v.is_zero()
                })
                .ok_or_else(|| Error::InvalidField("base modulus has no root in the extension".into()))?;
            base.elements()
                .map(|c| {
                    let coords = base.coordinates(c);
                    coords
                        .iter()
                        .rev()
                        .fold(FqElem::ZERO, |acc, &ci| ext.add(ext.mul(acc, root), ext.from_int(ci as i64)))
                })
                .collect()
        };
        let frob = ext.elements().map(|x| ext.pow(x, q)).collect();
        Ok(Arc::new(FieldTower { base, ext, q, d, embed, frob, rel_prec }))
    }

    /// Same fields with a different inversion precision.
    pub fn with_rel_prec(&self, rel_prec: i64) -> Result<Arc<Self>> {
        if rel_prec <= 0 {
            return Err(Error::InvalidField("relative precision must be positive".into()));
        }
        Ok(Arc::new(FieldTower { rel_prec, ..self.clone() }))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.ext.characteristic()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn ext(&self) -> &FiniteField {
        &self.ext
    }

    pub fn rel_prec(&self) -> i64 {
        self.rel_prec
    }

    /// Image of a base-field element in `F_{q^d}`.
    pub fn embed(&self, c: FqElem) -> FqElem {
        self.embed[c.0 as usize]
    }

    /// The embedded copy of `F_q`, ordered by base encoding.
    pub fn subfield(&self) -> &[FqElem] {
        &self.embed
    }

    pub fn is_in_subfield(&self, x: FqElem) -> bool {
        self.frob[x.0 as usize] == x
    }

    /// `x^(q^n)`.
    pub fn frob_q(&self, x: FqElem, n: u32) -> FqElem {
        let mut y = x;
        for _ in 0..(n % self.d) {
            y = self.frob[y.0 as usize];
        }
        y
    }

    /// Smallest `e ≥ 1` with `x^(q^e) = x`.
    pub fn degree_over_base(&self, x: FqElem) -> u32 {
        let mut y = self.frob[x.0 as usize];
        let mut e = 1;
        while y != x {
            y = self.frob[y.0 as usize];
            e += 1;
        }
        e
    }

    pub fn int(&self, n: i64) -> FqElem {
        self.ext.from_int(n)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        self.ext.add(a, b)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.ext.sub(a, b)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        self.ext.neg(a)
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        self.ext.mul(a, b)
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        self.ext.inv(a)
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        self.ext.pow(a, e)
    }

    pub fn format(&self, a: FqElem) -> String {
        self.ext.format(a)
    }

    pub fn parse(&self, s: &str) -> Result<FqElem> {
        self.ext.parse(s)
    }

    /// Elements of `F_q^×` of exact multiplicative order `n`, in the embedded copy.
    pub fn roots_of_unity(&self, n: u64) -> Vec<FqElem> {
        self.embed.iter().copied().filter(|&z| self.ext.order(z) == Some(n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_a_homomorphism_fixed_by_frobenius() {
        for (q, d) in [(2, 2), (3, 2), (4, 3), (9, 2), (5, 2), (2, 5)] {
            let t = FieldTower::new(q, d, 40).unwrap();
            let b = t.base();
            for x in b.elements() {
                assert!(t.is_in_subfield(t.embed(x)));
                for y in b.elements() {
                    assert_eq!(t.embed(b.add(x, y)), t.add(t.embed(x), t.embed(y)));
                    assert_eq!(t.embed(b.mul(x, y)), t.mul(t.embed(x), t.embed(y)));
                }
            }
            let fixed = t.ext().elements().filter(|&x| t.is_in_subfield(x)).count();
            assert_eq!(fixed as u64, q);
        }
    }

    #[test]
    fn degrees_over_base() {
        let t = FieldTower::new(2, 4, 40).unwrap();
        let mut counts = [0usize; 5];
        for x in t.ext().elements() {
            counts[t.degree_over_base(x) as usize] += 1;
        }
        assert_eq!(counts, [0, 2, 2, 0, 12]);
    }

    #[test]
    fn roots_of_unity_counts() {
        let t = FieldTower::new(5, 1, 40).unwrap();
        assert_eq!(t.roots_of_unity(4).len(), 2);
        assert_eq!(t.roots_of_unity(2).len(), 1);
        assert_eq!(t.roots_of_unity(3).len(), 0);
    }
}
