//! Multi-modular gcd of integer polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = a
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("reduced below p"))
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Monic gcd over `F_p`; inputs have no trailing zeros.
fn gcd_mod(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    while !b.is_empty() {
        let lb_inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let c = mul_mod(*a.last().unwrap(), lb_inv, p);
            for (i, bi) in b.iter().enumerate() {
                let t = mul_mod(c, *bi, p);
                a[i + shift] = (a[i + shift] + p - t) % p;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    let l_inv = inv_mod(*a.last().expect("nonzero gcd"), p);
    a.iter().map(|c| mul_mod(*c, l_inv, p)).collect()
}

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r > half {
        r - m
    } else {
        r
    }
}

fn content_free(a: Vec<BigInt>) -> Vec<BigInt> {
    let g = a.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let g = if a.last().is_some_and(|c| c.is_negative()) {
        -g
    } else {
        g
    };
    a.into_iter().map(|c| c / &g).collect()
}

fn divides(d: &[BigInt], a: &[BigInt]) -> bool {
    let mut r = a.to_vec();
    let ld = d.last().expect("nonzero divisor");
    while r.len() >= d.len() {
        let top = r.last().unwrap().clone();
        let (q, rem) = top.div_rem(ld);
        if !rem.is_zero() {
            return false;
        }
        let shift = r.len() - d.len();
        for (i, di) in d.iter().enumerate() {
            r[i + shift] -= &q * di;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r.is_empty()
}

/// Primitive gcd, positive leading coefficient, of two nonzero primitive
/// integer polynomials given in ascending order.
pub(crate) fn integer_poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let la = a.last().expect("nonzero");
    let lb = b.last().expect("nonzero");
    let lc = la.gcd(lb);
    let mut p: u64 = (1 << 61) - 1;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut deg = usize::MAX;
    loop {
        p -= 2;
        while !is_prime(p) {
            p -= 2;
        }
        let pb = BigInt::from(p);
        if (la % &pb).is_zero() || (lb % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(reduce(a, p), reduce(b, p), p);
        if g.len() == 1 {
            return vec![BigInt::one()];
        }
        let gd = g.len() - 1;
        if gd > deg {
            continue;
        }
        let scale = (&lc % &pb).mod_floor(&pb).to_u64().unwrap();
        let g: Vec<u64> = g.iter().map(|c| mul_mod(*c, scale, p)).collect();
        if gd < deg {
            deg = gd;
            modulus = pb;
            let half = &modulus >> 1;
            acc = g
                .iter()
                .map(|c| symmetric(&BigInt::from(*c), &modulus, &half))
                .collect();
            continue;
        }
        // CRT: x ≡ acc (mod M), x ≡ g (mod p)
        let m_inv_p = inv_mod((&modulus % &pb).to_u64().unwrap(), p);
        let new_mod = &modulus * &pb;
        let half = &new_mod >> 1;
        let mut stable = true;
        let next: Vec<BigInt> = acc
            .iter()
            .zip(&g)
            .map(|(x, gi)| {
                let xp = x.mod_floor(&pb).to_u64().unwrap();
                let t = mul_mod((gi + p - xp) % p, m_inv_p, p);
                let y = symmetric(&(x + &modulus * BigInt::from(t)), &new_mod, &half);
                if &y != x {
                    stable = false;
                }
                y
            })
            .collect();
        modulus = new_mod;
        acc = next;
        if stable {
            let cand = content_free(acc.clone());
            if divides(&cand, a) && divides(&cand, b) {
                return cand;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(cs: &[i64]) -> Vec<BigInt> {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn primes() {
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime((1 << 61) - 3));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn shared_factor() {
        // (2x + 3)(x^2 - 5) and (2x + 3)(7x + 1)
        let a = v(&[-15, -10, 3, 2]);
        let b = v(&[3, 23, 14]);
        assert_eq!(integer_poly_gcd(&a, &b), v(&[3, 2]));
        assert_eq!(integer_poly_gcd(&a, &v(&[1, 1])), v(&[1]));
    }

    #[test]
    fn large_coefficients() {
        // (3^40 x - 2^50)^2 (x + 1) and (3^40 x - 2^50)(x - 1)
        let c = BigInt::from(3).pow(40u32);
        let d = BigInt::from(2).pow(50u32);
        let f = vec![-d.clone(), c.clone()];
        let mul = |a: &[BigInt], b: &[BigInt]| {
            let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        };
        let a = mul(&mul(&f, &f), &v(&[1, 1]));
        let b = mul(&f, &v(&[-1, 1]));
        assert_eq!(integer_poly_gcd(&a, &b), f);
    }
}
