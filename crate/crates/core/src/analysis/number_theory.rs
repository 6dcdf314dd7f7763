/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// ascending order. `1` factors as the empty product.
pub fn prime_factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "cannot factor 0");
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Möbius function μ(n).
pub fn mobius(n: u64) -> i8 {
    let factors = prime_factorize(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        0
    } else if factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Von Mangoldt function Λ(n) in nats: `ln p` if `n = p^i` with `i ≥ 1`, else 0.
pub fn mangoldt(n: u64) -> f64 {
    match prime_factorize(n).as_slice() {
        [(p, _)] => (*p as f64).ln(),
        _ => 0.0,
    }
}

/// The prime `p` when `n` is a prime power `p^i`, `i ≥ 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match prime_factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
