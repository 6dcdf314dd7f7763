use crate::error::{arg, Result};

/// The finite field GF(p^e).
///
/// Elements are the integers `0..q`, read as base-`p` digit vectors of
/// polynomial coefficients (least significant digit = constant term). The
/// extension is taken modulo the smallest monic irreducible polynomial of
/// degree `e`, ordered by this same integer encoding of its lower coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    degree: u32,
    order: u32,
    /// Coefficients of the monic modulus, constant term first, length `degree + 1`.
    modulus: Vec<u32>,
}

impl FiniteField {
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return arg(format!("field characteristic {p} is not prime"));
        }
        if degree == 0 {
            return arg("field extension degree must be positive");
        }
        let order = match (p as u64).checked_pow(degree) {
            Some(q) if q <= u32::MAX as u64 => q as u32,
            _ => return arg(format!("field order {p}^{degree} is too large")),
        };
        let modulus = smallest_irreducible(p, degree);
        Ok(Self {
            p,
            degree,
            order,
            modulus,
        })
    }

    /// GF(q) for a prime power `q`.
    pub fn with_order(q: u32) -> Result<Self> {
        match prime_power(q as u64) {
            Some((p, e)) => Self::new(p as u32, e),
            None => arg(format!("{q} is not a prime power")),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = vec![0; self.degree as usize];
        for d in out.iter_mut() {
            *d = a % self.p;
            a /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.degree == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&sum)
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.degree == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let d: Vec<u32> = self.digits(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.undigits(&d)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.degree == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let n = self.degree as usize;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce: x^n = -(m_0 + m_1 x + ... + m_{n-1} x^{n-1})
        for top in (n..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &m) in self.modulus[..n].iter().enumerate() {
                let idx = top - n + i;
                prod[idx] = (prod[idx] + (p - m as u64) * c) % p;
            }
        }
        let reduced: Vec<u32> = prod[..n].iter().map(|&c| c as u32).collect();
        self.undigits(&reduced)
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.pow(a, self.order as u64 - 2))
    }

    /// Quadratic character: 0 at zero, 1 on nonzero squares, −1 otherwise.
    pub fn quadratic_character(&self, a: u32) -> i8 {
        if a == 0 {
            return 0;
        }
        if self.p == 2 {
            return 1;
        }
        if self.pow(a, (self.order as u64 - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, e)` with `q = p^e`, if `q` is a prime power.
pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

// Polynomials below are coefficient vectors, constant term first.

fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dd = den.len() - 1;
    let lead_inv = mod_pow(den[dd] as u64, p - 2, p);
    while r.len() > dd && !r.is_empty() {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                let idx = top - dd + i;
                r[idx] = (r[idx] + (p - d as u64) * c % p) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Monic polynomial of the given degree whose lower coefficients encode `code`.
fn monic_from_code(p: u32, degree: u32, mut code: u64) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(degree as usize + 1);
    for _ in 0..degree {
        coeffs.push((code % p as u64) as u32);
        code /= p as u64;
    }
    coeffs.push(1);
    coeffs
}

/// Trial division by every monic polynomial of degree `1..=degree/2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let degree = (poly.len() - 1) as u32;
    for d in 1..=degree / 2 {
        for code in 0..(p as u64).pow(d) {
            let divisor = monic_from_code(p, d, code);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, degree: u32) -> Vec<u32> {
    if degree == 1 {
        return vec![0, 1];
    }
    (0..(p as u64).pow(degree))
        .map(|code| monic_from_code(p, degree, code))
        .find(|poly| is_irreducible(poly, p))
        .expect("irreducible polynomials exist in every degree")
}
