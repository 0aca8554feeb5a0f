//! Coefficient arithmetic for the Galois ring GR(p^k, f).
//!
//! Elements are length-f coefficient vectors over Z/p^k, multiplied modulo a
//! fixed monic irreducible polynomial of degree f over F_p, lifted
//! coefficient-wise. All entry arithmetic goes through u128 intermediates so
//! moduli up to 2^63 are safe. Buffers are inline SmallVecs: the hot rings
//! have only a handful of slots.

use smallvec::SmallVec;

/// Inline coefficient buffer; spills to the heap only for wide layouts.
pub type Coeffs = SmallVec<[u64; 4]>;

/// Monic irreducible polynomial over F_p of degree `f` whose coefficient
/// vector (c_0, ..., c_{f-1}), read as the base-p integer c_0 + c_1 p + ...,
/// is smallest. The leading coefficient x^f is implicit; the returned vector
/// holds c_0..c_{f-1}.
pub fn least_irreducible(p: u64, f: u32) -> Vec<u64> {
    let f = f as usize;
    if f == 1 {
        // x itself: quotienting by (x) leaves Z/p^k unchanged.
        return vec![0];
    }
    let total = p.pow(f as u32);
    for idx in 0..total {
        let mut c = Vec::with_capacity(f);
        let mut n = idx;
        for _ in 0..f {
            c.push(n % p);
            n /= p;
        }
        if is_irreducible(&c, p) {
            return c;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p");
}

/// Irreducibility of the monic polynomial x^f + c_{f-1} x^{f-1} + ... + c_0
/// over F_p, by trial division against every monic polynomial of degree
/// 1..=f/2. Intended for the small degrees this crate uses.
fn is_irreducible(low: &[u64], p: u64) -> bool {
    let f = low.len();
    if low[0] == 0 && f > 1 {
        return false; // divisible by x
    }
    let mut full = low.to_vec();
    full.push(1); // monic degree f
    for d in 1..=f / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut n = idx;
            for _ in 0..d {
                div.push(n % p);
                n /= p;
            }
            div.push(1);
            if poly_rem_is_zero(&full, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u64], div: &[u64], p: u64) -> bool {
    let mut rem = num.to_vec();
    let d = div.len() - 1;
    while rem.len() > d {
        let lead = *rem.last().unwrap() % p;
        let deg = rem.len() - 1;
        if lead != 0 {
            for j in 0..=d {
                let idx = deg - d + j;
                let sub = (lead as u128 * div[j] as u128) % p as u128;
                let cur = rem[idx] as u128 % p as u128;
                rem[idx] = ((cur + p as u128 - sub) % p as u128) as u64;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c % p == 0)
}

pub fn add(a: &[u64], b: &[u64], m: u64) -> Coeffs {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| ((x as u128 + y as u128) % m as u128) as u64)
        .collect()
}

pub fn neg(a: &[u64], m: u64) -> Coeffs {
    a.iter()
        .map(|&x| ((m as u128 - x as u128 % m as u128) % m as u128) as u64)
        .collect()
}

pub fn scale(a: &[u64], c: u64, m: u64) -> Coeffs {
    a.iter()
        .map(|&x| ((x as u128 * c as u128) % m as u128) as u64)
        .collect()
}

/// Product in GR(m, f) modulo the lifted polynomial x^f = -(poly).
pub fn mul(a: &[u64], b: &[u64], m: u64, poly: &[u64]) -> Coeffs {
    let f = a.len();
    debug_assert_eq!(b.len(), f);
    debug_assert_eq!(poly.len(), f);
    if f == 1 {
        let mut out = Coeffs::new();
        out.push(((a[0] as u128 * b[0] as u128) % m as u128) as u64);
        return out;
    }
    let mut buf: SmallVec<[u128; 7]> = smallvec::smallvec![0u128; 2 * f - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            buf[i + j] = (buf[i + j] + x as u128 * y as u128) % m as u128;
        }
    }
    // reduce x^{f+j} via x^f = -poly
    for i in (f..2 * f - 1).rev() {
        let c = buf[i] % m as u128;
        buf[i] = 0;
        if c == 0 {
            continue;
        }
        for j in 0..f {
            if poly[j] == 0 {
                continue;
            }
            let sub = (c * poly[j] as u128) % m as u128;
            buf[i - f + j] = (buf[i - f + j] + m as u128 - sub) % m as u128;
        }
    }
    buf[..f].iter().map(|&x| (x % m as u128) as u64).collect()
}

pub fn reduce_mod(a: &[u64], m: u64) -> Coeffs {
    a.iter().map(|&x| x % m).collect()
}

pub fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Largest k <= cap with p^k dividing every coefficient.
pub fn p_valuation(a: &[u64], p: u64, cap: u32) -> u32 {
    let mut val = cap;
    for &c in a {
        if c == 0 {
            continue;
        }
        let mut v = 0;
        let mut x = c;
        while v < cap && x % p == 0 {
            x /= p;
            v += 1;
        }
        val = val.min(v);
        if val == 0 {
            return 0;
        }
    }
    val
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_polys() {
        assert_eq!(least_irreducible(3, 1), vec![0]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0]); // x^2 + 1
        assert_eq!(least_irreducible(5, 2), vec![2, 0]); // x^2 + 2
        assert_eq!(least_irreducible(7, 2), vec![1, 0]); // x^2 + 1
    }

    #[test]
    fn f9_arithmetic() {
        // F_9 = F_3[x]/(x^2+1): x^2 = -1 = 2
        let poly = least_irreducible(3, 2);
        let x = vec![0, 1];
        assert_eq!(mul(&x, &x, 3, &poly).as_slice(), &[2, 0]);
        // (1+x)(1-x) = 1 - x^2 = 2
        let a = vec![1, 1];
        let b = vec![1, 2];
        assert_eq!(mul(&a, &b, 3, &poly).as_slice(), &[2, 0]);
    }

    #[test]
    fn valuations() {
        assert_eq!(p_valuation(&[18, 9], 3, 4), 2);
        assert_eq!(p_valuation(&[0, 0], 3, 4), 4);
        assert_eq!(p_valuation(&[1, 9], 3, 4), 0);
    }
}
