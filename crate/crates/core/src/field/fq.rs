//! Finite fields `F_{p^k}` in a fixed polynomial basis over `F_p`.
//!
//! An element is stored as the integer `Σ c_i p^i` where `c_0 + c_1 g + … + c_{k-1} g^{k-1}`
//! is its coordinate vector and `g` is the class of `x` modulo the configured modulus.
//! Multiplication goes through discrete log tables built once per field.

use std::fmt;

use crate::error::{Error, Result};

/// Largest field size for which tables are built.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;
const ADD_TABLE_LIMIT: u32 = 256;

/// An element of a [`FiniteField`], encoded in base `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FqElem(pub(crate) u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn encoding(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Conway polynomials (low-to-high coefficients) for the small fields shipped by default.
fn default_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    let m: &[u32] = match (p, k) {
        (_, 1) => return Some(vec![0, 1]),
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (5, 2) => &[2, 4, 1],
        (7, 2) => &[3, 6, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^m`, or returns `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut m = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    (r == 1 && is_prime(p)).then_some((p as u32, m))
}

#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    size: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg: Vec<u32>,
    pow_p: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.k, self.modulus)
    }
}

impl FiniteField {
    /// Builds `F_{p^k}` with the shipped default modulus, or the first irreducible
    /// monic polynomial in lexicographic order when no default exists.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if let Some(m) = default_modulus(p, k) {
            return Self::with_modulus(p, m);
        }
        let count = (p as u64).checked_pow(k).filter(|&n| n <= MAX_FIELD_SIZE as u64);
        let count = count.ok_or_else(|| Error::InvalidField(format!("{p}^{k} exceeds table limit")))?;
        for idx in 0..count {
            let mut m = digits(idx as u32, p, k as usize);
            m.push(1);
            if m[0] == 0 {
                continue;
            }
            if let Ok(f) = Self::with_modulus(p, m) {
                return Ok(f);
            }
        }
        Err(Error::InvalidField(format!("no irreducible polynomial of degree {k} over F_{p}")))
    }

    /// Builds the field from an explicit monic modulus given low-to-high.
    ///
    /// Fails if `p` is not prime or the modulus is not irreducible; irreducibility is
    /// detected while searching for a primitive element.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient out of range".into()));
        }
        let k = (modulus.len() - 1) as u32;
        let size = (p as u64)
            .checked_pow(k)
            .filter(|&n| n <= MAX_FIELD_SIZE as u64)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{k} exceeds table limit")))? as u32;

        let mut field = FiniteField {
            p,
            k,
            size,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
            neg: (0..size).map(|a| neg_digits(a, p, k)).collect(),
            pow_p: Vec::new(),
        };
        if size <= ADD_TABLE_LIMIT {
            let mut t = vec![0u32; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    t[(a * size + b) as usize] = add_digits(a, b, p, k);
                }
            }
            field.add_table = Some(t);
        }
        field.build_log_tables()?;
        field.pow_p = (0..size).map(|a| field.pow(FqElem(a), p as u64).0).collect();
        Ok(field)
    }

    fn build_log_tables(&mut self) -> Result<()> {
        let order = self.size - 1;
        if order == 0 {
            return Err(Error::InvalidField("trivial field".into()));
        }
        for g in 1..self.size {
            let mut exp = Vec::with_capacity(order as usize);
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = self.poly_mul(x, g);
                if x == 1 || x == 0 || exp.len() > order as usize {
                    break;
                }
            }
            if x == 1 && exp.len() == order as usize {
                let mut log = vec![0u32; self.size as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return Ok(());
            }
        }
        Err(Error::InvalidField(format!("modulus {:?} is not irreducible over F_{}", self.modulus, self.p)))
    }

    /// Schoolbook product of encodings reduced modulo the modulus; used only while
    /// building tables.
    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let k = self.k as usize;
        let p = self.p as u64;
        let da = digits(a, self.p, k);
        let db = digits(b, self.p, k);
        let mut prod = vec![0u64; 2 * k];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for i in 0..k {
                let sub = c * self.modulus[i] as u64 % p;
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + p - sub) % p;
            }
        }
        prod[..k].iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.size).map(FqElem)
    }

    pub fn from_encoding(&self, e: u32) -> Result<FqElem> {
        if e < self.size {
            Ok(FqElem(e))
        } else {
            Err(Error::InvalidField(format!("encoding {e} out of range for field of size {}", self.size)))
        }
    }

    /// Image of an integer under `Z -> F_p -> F_{p^k}`.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u32)
    }

    /// The class of `x` in the polynomial basis.
    pub fn generator(&self) -> FqElem {
        if self.k == 1 {
            // the basis element is a constant in the prime field; use the log base instead
            FqElem(self.exp[1 % self.exp.len()])
        } else {
            FqElem(self.p)
        }
    }

    /// A primitive element (generator of the multiplicative group).
    pub fn primitive(&self) -> FqElem {
        FqElem(self.exp[1 % self.exp.len()])
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        match &self.add_table {
            Some(t) => FqElem(t[(a.0 * self.size + b.0) as usize]),
            None => FqElem(add_digits(a.0, b.0, self.p, self.k)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem::ZERO;
        }
        let order = self.size - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FqElem(self.exp[(if s >= order { s - order } else { s }) as usize])
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.0 == 0 {
            return Err(Error::NotInvertible("zero in finite field".into()));
        }
        let order = self.size - 1;
        let l = self.log[a.0 as usize];
        Ok(FqElem(self.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem::ONE;
        }
        if a.0 == 0 {
            return FqElem::ZERO;
        }
        let order = (self.size - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        FqElem(self.exp[((l * (e % order)) % order) as usize])
    }

    /// `a^(p^j)`.
    pub fn frobenius(&self, a: FqElem, j: u32) -> FqElem {
        let mut x = a;
        for _ in 0..(j % self.k) {
            x = FqElem(self.pow_p[x.0 as usize]);
        }
        x
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FqElem) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        let n = (self.size - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Some(n / num_integer::gcd(n, l))
    }

    pub fn coordinates(&self, a: FqElem) -> Vec<u32> {
        digits(a.0, self.p, self.k as usize)
    }

    pub fn from_coordinates(&self, coords: &[u32]) -> FqElem {
        let p = self.p;
        FqElem(coords.iter().take(self.k as usize).rev().fold(0u32, |acc, &c| acc * p + c % p))
    }

    /// Renders `a` as an integer (prime field) or a polynomial in `g`.
    pub fn format(&self, a: FqElem) -> String {
        if self.k == 1 {
            return a.0.to_string();
        }
        let coords = self.coordinates(a);
        let terms: Vec<String> = coords
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "g".to_string(),
                (1, c) => format!("{c}*g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}*g^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Inverse of [`FiniteField::format`].
    pub fn parse(&self, s: &str) -> Result<FqElem> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if self.k == 1 {
            let n: i64 = s.parse().map_err(|_| Error::Parse(format!("bad field element '{s}'")))?;
            return Ok(self.from_int(n));
        }
        let mut coords = vec![0u32; self.k as usize];
        for term in s.split('+').filter(|t| !t.is_empty()) {
            let (c, e) = match term.split_once('g') {
                None => (term, 0usize),
                Some((c, rest)) => {
                    let c = c.trim_end_matches('*');
                    let c = if c.is_empty() { "1" } else { c };
                    let e = match rest.strip_prefix('^') {
                        Some(e) => e.parse().map_err(|_| Error::Parse(format!("bad exponent in '{term}'")))?,
                        None if rest.is_empty() => 1,
                        None => return Err(Error::Parse(format!("bad term '{term}'"))),
                    };
                    (c, e)
                }
            };
            let c: u32 = c.parse().map_err(|_| Error::Parse(format!("bad coefficient in '{term}'")))?;
            if e >= self.k as usize {
                return Err(Error::Parse(format!("exponent {e} exceeds basis size")));
            }
            coords[e] = (coords[e] + c) % self.p;
        }
        Ok(self.from_coordinates(&coords))
    }
}

fn digits(mut a: u32, p: u32, k: usize) -> Vec<u32> {
    let mut d = Vec::with_capacity(k);
    for _ in 0..k {
        d.push(a % p);
        a /= p;
    }
    d
}

fn add_digits(a: u32, b: u32, p: u32, k: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..k {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn neg_digits(a: u32, p: u32, k: u32) -> u32 {
    let mut a = a;
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..k {
        out += ((p - a % p) % p) * place;
        a /= p;
        place *= p;
    }
    out
}
