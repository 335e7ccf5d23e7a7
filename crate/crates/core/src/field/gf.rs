use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;

use super::{is_prime, prime_factors, Field};
use crate::error::{Error, Result};

/// Largest field size for which log/Zech tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 22;

/// An element of a [`GaloisField`], encoded as the integer `Σ c_i p^i` of its
/// coefficient vector in the polynomial basis `1, g, g², …`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fe(pub u32);

const NONE: u32 = u32::MAX;

/// GF(p^n) with a deterministic defining polynomial and log/Zech tables.
pub struct GaloisField {
    p: u32,
    n: u32,
    size: u32,
    /// Monic defining polynomial, low degree first, length `n + 1`.
    modulus: Vec<u32>,
    /// `exp[k] = γ^k` for a primitive `γ`, stored twice over for wraparound.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + γ^k)`, or `NONE` when `1 + γ^k = 0`.
    zech: Vec<u32>,
    half: u32,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.n)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n
    }
}
impl Eq for GaloisField {}

fn registry() -> &'static Mutex<HashMap<(u32, u32), Arc<GaloisField>>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), Arc<GaloisField>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl GaloisField {
    /// The shared instance of GF(p^n). Construction is deterministic, so every
    /// caller sees the same modulus and encoding.
    pub fn get(p: u32, n: u32) -> Result<Arc<GaloisField>> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::invalid("extension degree must be positive"));
        }
        let size = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
        if size > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge { p, n });
        }
        if let Some(f) = registry().lock().unwrap().get(&(p, n)) {
            return Ok(f.clone());
        }
        let field = Arc::new(Self::build(p, n));
        let mut reg = registry().lock().unwrap();
        Ok(reg.entry((p, n)).or_insert(field).clone())
    }

    fn build(p: u32, n: u32) -> GaloisField {
        let modulus = smallest_irreducible(p, n);
        let size = p.pow(n);
        let order = (size - 1) as u64;
        let ar = DigitArith {
            p,
            n,
            modulus: &modulus,
        };

        // primitive element: first index whose order is exactly q - 1
        let factors = prime_factors(order);
        let mut gamma = vec![0u32; n as usize];
        for idx in 1..size {
            let cand = ar.digits(idx);
            if factors.iter().all(|&r| ar.pow(&cand, order / r) != ar.one()) {
                gamma = cand;
                break;
            }
        }
        if order == 1 {
            gamma = ar.one();
        }

        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![NONE; size as usize];
        let mut cur = ar.one();
        for k in 0..order as usize {
            let idx = ar.index(&cur);
            exp[k] = idx;
            exp[k + order as usize] = idx;
            log[idx as usize] = k as u32;
            cur = ar.mul(&cur, &gamma);
        }
        let mut zech = vec![NONE; order as usize];
        for k in 0..order as usize {
            let mut d = ar.digits(exp[k]);
            d[0] = (d[0] + 1) % p;
            let idx = ar.index(&d);
            zech[k] = if idx == 0 { NONE } else { log[idx as usize] };
        }
        let half = if p == 2 { 0 } else { (order / 2) as u32 };
        GaloisField {
            p,
            n,
            size,
            modulus,
            exp,
            log,
            zech,
            half,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The class of the polynomial variable, written `g` in text.
    pub fn generator(&self) -> Fe {
        if self.n == 1 {
            Fe(0)
        } else {
            Fe(self.p)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.size).map(Fe)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.size))
    }

    pub fn digits(&self, a: Fe) -> Vec<u32> {
        let mut v = a.0;
        (0..self.n)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Fe {
        let mut idx = 0u32;
        for &d in digits.iter().rev() {
            idx = idx * self.p + (d % self.p);
        }
        Fe(idx)
    }

    pub fn is_prime_subfield(&self, a: Fe) -> bool {
        a.0 < self.p
    }

    /// Discrete log with respect to the table's primitive element.
    pub fn log(&self, a: Fe) -> Option<u32> {
        let l = self.log[a.0 as usize];
        (l != NONE).then_some(l)
    }

    pub fn primitive(&self) -> Fe {
        Fe(self.exp[if self.size == 2 { 0 } else { 1 }])
    }

    pub fn pow_u(&self, a: Fe, k: u64) -> Fe {
        if k == 0 {
            return Fe(1);
        }
        if a.0 == 0 {
            return Fe(0);
        }
        let ord = (self.size - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Fe(self.exp[((l * (k % ord)) % ord) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> u64 {
        assert!(a.0 != 0, "zero has no multiplicative order");
        let ord = (self.size - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        ord / gcd(ord, l)
    }

    /// Smallest `k | n` with `a` in GF(p^k).
    pub fn element_degree(&self, a: Fe) -> u32 {
        (1..=self.n)
            .filter(|k| self.n.is_multiple_of(*k))
            .find(|&k| self.pow_u(a, (self.p as u64).pow(k)) == a)
            .unwrap_or(self.n)
    }

    pub fn fmt_elem(&self, a: Fe) -> String {
        if a.0 == 0 {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.digits(a).into_iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "g".into(),
                (1, c) => format!("{c}*g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}*g^{i}"),
            });
        }
        parts.join("+")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Field for GaloisField {
    type Elem = Fe;

    #[inline]
    fn zero(&self) -> Fe {
        Fe(0)
    }
    #[inline]
    fn one(&self) -> Fe {
        Fe(1)
    }
    #[inline]
    fn is_zero(&self, a: &Fe) -> bool {
        a.0 == 0
    }

    #[inline]
    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        if a.0 == 0 {
            return *b;
        }
        if b.0 == 0 {
            return *a;
        }
        let ord = self.size - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + ord - la };
        let z = self.zech[d as usize];
        if z == NONE {
            Fe(0)
        } else {
            Fe(self.exp[(la + z) as usize])
        }
    }

    #[inline]
    fn neg(&self, a: &Fe) -> Fe {
        if a.0 == 0 || self.p == 2 {
            return *a;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.half) as usize])
    }

    #[inline]
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    #[inline]
    fn inv(&self, a: &Fe) -> Fe {
        assert!(a.0 != 0, "inverse of zero");
        let ord = self.size - 1;
        let l = self.log[a.0 as usize];
        Fe(self.exp[((ord - l) % ord) as usize])
    }

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn prime_degree(&self) -> u32 {
        self.n
    }

    fn from_int(&self, k: i64) -> Fe {
        Fe(k.rem_euclid(self.p as i64) as u32)
    }

    fn pow(&self, a: &Fe, k: u128) -> Fe {
        let ord = (self.size - 1) as u128;
        self.pow_u(*a, if k == 0 { 0 } else { ((k - 1) % ord + 1) as u64 })
    }

    fn frobenius(&self, a: &Fe) -> Fe {
        self.pow_u(*a, self.p as u64)
    }

    fn pth_root(&self, a: &Fe) -> Fe {
        if self.n == 1 {
            return *a;
        }
        self.pow_u(*a, (self.p as u64).pow(self.n - 1))
    }
}

/// A field element bundled with its field, for display and I/O.
#[derive(Clone)]
pub struct FieldElement {
    pub field: Arc<GaloisField>,
    pub value: Fe,
}

impl FieldElement {
    pub fn new(field: Arc<GaloisField>, value: Fe) -> Self {
        FieldElement { field, value }
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.digits(self.value)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.value == other.value
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.field, self.field.fmt_elem(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.fmt_elem(self.value))
    }
}

// ---------------------------------------------------------------------------
// Digit-level arithmetic used only while building tables.

struct DigitArith<'a> {
    p: u32,
    n: u32,
    modulus: &'a [u32],
}

impl DigitArith<'_> {
    fn one(&self) -> Vec<u32> {
        let mut v = vec![0; self.n as usize];
        v[0] = 1;
        v
    }

    fn digits(&self, mut idx: u32) -> Vec<u32> {
        (0..self.n)
            .map(|_| {
                let d = idx % self.p;
                idx /= self.p;
                d
            })
            .collect()
    }

    fn index(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.n as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (n..2 * n).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &m) in self.modulus[..n].iter().enumerate() {
                let t = k - n + j;
                prod[t] = (prod[t] + (p - c) * m as u64) % p;
            }
        }
        prod[..n].iter().map(|&c| c as u32).collect()
    }

    fn pow(&self, a: &[u32], mut k: u64) -> Vec<u32> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Dense polynomials over the prime field, for the modulus search.

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn prime_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv_lc = mod_inv(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1;
        let c = (r[k] as u64 * inv_lc as u64 % p as u64) as u32;
        for (j, &mj) in m.iter().enumerate() {
            let t = k - dm + j;
            r[t] = ((r[t] as u64 + (p - c) as u64 * mj as u64) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

fn prime_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let v: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    prime_rem(&v, m, p)
}

fn prime_powmod(a: &[u32], mut k: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut base = prime_rem(a, m, p);
    let mut acc = vec![1u32];
    while k > 0 {
        if k & 1 == 1 {
            acc = prime_mulmod(&acc, &base, m, p);
        }
        base = prime_mulmod(&base, &base, m, p);
        k >>= 1;
    }
    acc
}

fn prime_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = prime_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Rabin's test over GF(p).
fn is_irreducible_prime(m: &[u32], p: u32) -> bool {
    let n = m.len() - 1;
    let x = vec![0u32, 1];
    let frob_iter = |k: usize| {
        let mut h = prime_rem(&x, m, p);
        for _ in 0..k {
            h = prime_powmod(&h, p as u64, m, p);
        }
        h
    };
    let sub_x = |mut h: Vec<u32>| {
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        trim(&mut h);
        h
    };
    if !sub_x(frob_iter(n)).is_empty() {
        return false;
    }
    for r in prime_factors(n as u64) {
        let g = prime_gcd(&sub_x(frob_iter(n / r as usize)), m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The monic irreducible of degree `n` over GF(p) whose coefficient vector,
/// read as the integer `Σ c_i p^i` over the non-leading coefficients, is least.
pub(crate) fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    for idx in 0..count {
        let mut m: Vec<u32> = Vec::with_capacity(n as usize + 1);
        let mut v = idx;
        for _ in 0..n {
            m.push((v % p as u64) as u32);
            v /= p as u64;
        }
        m.push(1);
        if n == 1 || (m[0] != 0 && is_irreducible_prime(&m, p)) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_are_smallest_irreducible() {
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(7, 1), vec![0, 1]);
        // x^4 + x + 2 over GF(3): brute-force no roots and no quadratic factor
        let m = smallest_irreducible(3, 4);
        assert_eq!(m.len(), 5);
        assert!(is_irreducible_prime(&m, 3));
    }

    #[test]
    fn field_axioms_small_fields() {
        for &(p, n) in &[(2, 1), (2, 3), (3, 1), (3, 2), (5, 2), (7, 1), (3, 4)] {
            let f = GaloisField::get(p, n).unwrap();
            let q = f.size();
            for a in f.elements() {
                assert_eq!(f.add(&a, &f.neg(&a)), Fe(0));
                if a.0 != 0 {
                    assert_eq!(f.mul(&a, &f.inv(&a)), Fe(1));
                }
                // x^q = x
                assert_eq!(f.pow_u(a, q as u64), a);
            }
        }
    }

    #[test]
    fn addition_matches_digitwise() {
        let f = GaloisField::get(3, 3).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let da = f.digits(a);
                let db = f.digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!(f.add(&a, &b), f.from_digits(&s));
            }
        }
    }

    #[test]
    fn generator_satisfies_modulus() {
        let f = GaloisField::get(3, 2).unwrap();
        let g = f.generator();
        // g^2 + 1 = 0
        assert_eq!(f.add(&f.mul(&g, &g), &Fe(1)), Fe(0));
        assert_eq!(f.fmt_elem(f.add(&g, &Fe(1))), "1+g");
        assert_eq!(f.fmt_elem(Fe(2)), "2");
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(matches!(GaloisField::get(3, 40), Err(Error::FieldTooLarge { .. })));
        assert!(GaloisField::get(4, 1).is_err());
    }
}
