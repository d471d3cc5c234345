//! Irreducible factorization over the rationals.
//!
//! Squarefree pieces are made primitive and monic over the integers, then
//! factored with the Berlekamp–Zassenhaus scheme: Berlekamp splitting modulo a
//! small prime, linear Hensel lifting past the Mignotte bound, and exhaustive
//! recombination of lifted factors verified by exact division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::RatPoly;
use super::rational::{common_denominator, int_rat, Rational};

type ZPoly = Vec<BigInt>;
type PPoly = Vec<u64>;

/// Factors a nonzero polynomial into monic irreducible factors with
/// multiplicities. The product of `factor^mult` equals the monic input.
/// Factors are sorted by degree, then by coefficients.
pub fn factor(p: &RatPoly) -> Vec<(RatPoly, usize)> {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let mut out = Vec::new();
    for (piece, mult) in p.squarefree_decomposition() {
        for f in factor_squarefree(&piece) {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| compare_polys(&a.0, &b.0).then(a.1.cmp(&b.1)));
    out
}

fn compare_polys(a: &RatPoly, b: &RatPoly) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for i in (0..=a.deg()).rev() {
            let c = a.coeff(i).cmp(&b.coeff(i));
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// Monic irreducible factors of a squarefree polynomial.
pub fn factor_squarefree(p: &RatPoly) -> Vec<RatPoly> {
    if p.deg() <= 1 {
        return if p.deg() == 1 { vec![p.monic()] } else { vec![] };
    }
    let f = primitive_integer(p);
    let n = f.len() - 1;
    let a = f[n].clone();
    // F(x) = a^(n-1) f(x/a) is monic with integer coefficients.
    let mut big_f = Vec::with_capacity(n + 1);
    for (i, c) in f.iter().enumerate() {
        if i == n {
            big_f.push(BigInt::one());
        } else {
            big_f.push(c * num_traits::pow(a.clone(), n - 1 - i));
        }
    }
    factor_monic_integer(&big_f)
        .into_iter()
        .map(|g| {
            // g(a x), then primitive part, then monic over Q.
            let mut pw = BigInt::one();
            let mut h = Vec::with_capacity(g.len());
            for c in &g {
                h.push(c * &pw);
                pw *= &a;
            }
            to_ratpoly(&h).monic()
        })
        .collect()
}

fn primitive_integer(p: &RatPoly) -> ZPoly {
    let d = common_denominator(p.coeffs());
    let mut v: ZPoly = p
        .coeffs()
        .iter()
        .map(|c| (c * int_rat(d.clone())).to_integer())
        .collect();
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_one() && !g.is_zero() {
        for c in &mut v {
            *c = &*c / &g;
        }
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in &mut v {
            *c = -&*c;
        }
    }
    v
}

fn to_ratpoly(z: &[BigInt]) -> RatPoly {
    RatPoly::new(z.iter().map(|c| int_rat(c.clone())).collect())
}

fn factor_monic_integer(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let (p, modular) = choose_prime(f);
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let bound = mignotte_bound(f);
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    let two_b = &bound * 2u32;
    while pk <= two_b {
        pk *= p;
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, p, k);
    recombine(f, lifted, &pk)
}

fn mignotte_bound(f: &ZPoly) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    (norm2.sqrt() + 1u32) << n
}

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307,
    311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409, 419, 421,
    431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541,
];

/// Picks, among the first few primes keeping `f` squarefree, the one giving
/// the fewest modular factors.
fn choose_prime(f: &ZPoly) -> (u64, Vec<PPoly>) {
    let mut best: Option<(u64, Vec<PPoly>)> = None;
    let mut tried = 0;
    for &p in PRIMES {
        let fp = reduce_mod(f, p);
        if fp.len() != f.len() {
            continue;
        }
        let d = pderiv(&fp, p);
        if pgcd(&fp, &d, p).len() != 1 {
            continue;
        }
        let facs = berlekamp(&fp, p);
        let better = best.as_ref().is_none_or(|(_, b)| facs.len() < b.len());
        if better {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("a squarefree integer polynomial has a good prime below 550")
}

// ---- arithmetic in F_p[x] ----

fn reduce_mod(f: &[BigInt], p: u64) -> PPoly {
    let pb = BigInt::from(p);
    let v: PPoly = f
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    ptrim(v)
}

fn ptrim(mut v: PPoly) -> PPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn pinv(a: u64, p: u64) -> u64 {
    ppow_scalar(a, p - 2, p)
}

fn ppow_scalar(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn psub(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let n = a.len().max(b.len());
    ptrim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    ptrim(out)
}

fn pdivrem(a: &[u64], b: &[u64], p: u64) -> (PPoly, PPoly) {
    assert!(!b.is_empty());
    let db = b.len() - 1;
    let inv = pinv(b[db], p);
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), ptrim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * bc % p) % p;
        }
        q[k] = c;
    }
    r.truncate(db);
    (ptrim(q), ptrim(r))
}

fn prem(a: &[u64], b: &[u64], p: u64) -> PPoly {
    pdivrem(a, b, p).1
}

fn pmonic(a: &[u64], p: u64) -> PPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = pinv(lc, p);
            a.iter().map(|c| c * inv % p).collect()
        }
    }
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = prem(&x, &y, p);
        x = y;
        y = r;
    }
    pmonic(&x, p)
}

fn pderiv(a: &[u64], p: u64) -> PPoly {
    ptrim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * (i as u64 % p) % p)
            .collect(),
    )
}

/// `(s, t)` with `s a + t b = 1` for coprime `a`, `b`.
fn pext_gcd(a: &[u64], b: &[u64], p: u64) -> (PPoly, PPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s2 = psub(&s0, &pmul(&q, &s1, p), p);
        let t2 = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    assert_eq!(r0.len(), 1, "extended gcd of non-coprime polynomials");
    let inv = pinv(r0[0], p);
    let scale = |v: &[u64]| ptrim(v.iter().map(|c| c * inv % p).collect());
    (scale(&s0), scale(&t0))
}

/// Berlekamp factorization of a squarefree polynomial mod `p` into monic
/// irreducibles.
fn berlekamp(f: &[u64], p: u64) -> Vec<PPoly> {
    let f = pmonic(f, p);
    let n = f.len() - 1;
    // Rows of Q: x^(i p) mod f.
    let xp = ppow_mod(&[0, 1], p, &f, p);
    let mut rows: Vec<PPoly> = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        rows.push(cur.clone());
        cur = prem(&pmul(&cur, &xp, p), &f, p);
    }
    // Matrix (Q - I)^T, kernel gives the Berlekamp subalgebra.
    let mut m = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for j in 0..n {
            let q = row.get(j).copied().unwrap_or(0);
            let v = if i == j { (q + p - 1) % p } else { q };
            m[j][i] = v;
        }
    }
    let kernel = nullspace_mod(m, p);
    let r = kernel.len();
    let mut factors = vec![f.clone()];
    if r == 1 {
        return factors;
    }
    for v in kernel.iter() {
        let v = ptrim(v.clone());
        if v.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for g in factors.drain(..) {
            if g.len() <= 2 {
                next.push(g);
                continue;
            }
            let mut pending = vec![g];
            for s in 0..p {
                let vs = psub(&v, &[s], p);
                let mut split = Vec::new();
                for h in pending.drain(..) {
                    let d = pgcd(&h, &vs, p);
                    if d.len() > 1 && d.len() < h.len() {
                        let (q, _) = pdivrem(&h, &d, p);
                        split.push(d);
                        split.push(pmonic(&q, p));
                    } else {
                        split.push(h);
                    }
                }
                pending = split;
            }
            next.extend(pending);
        }
        factors = next;
        if factors.len() == r {
            break;
        }
    }
    debug_assert_eq!(factors.len(), r);
    factors
}

fn ppow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> PPoly {
    let mut acc = vec![1u64];
    let mut b = prem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = prem(&pmul(&acc, &b, p), m, p);
        }
        b = prem(&pmul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn nullspace_mod(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = pinv(m[r][c], p);
        for j in 0..cols {
            m[r][j] = m[r][j] * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - m[row][free]) % p;
        }
        basis.push(v);
    }
    basis
}

// ---- Hensel lifting over Z / p^k ----

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()
        })
        .collect()
}

fn zmod_sym(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half: BigInt = m / 2;
    a.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn from_ppoly(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `f ≡ g h (mod p)` to `(G, H)` modulo `p^k`, all monic.
fn lift_pair(f: &[BigInt], g: &[u64], h: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (s, t) = pext_gcd(g, h, p);
    let mut big_g = from_ppoly(g);
    let mut big_h = from_ppoly(h);
    let mut pj = BigInt::from(p);
    for _ in 1..k {
        let diff = zsub(f, &zmul(&big_g, &big_h));
        let e: ZPoly = diff.iter().map(|c| c / &pj).collect();
        let ep = reduce_mod(&e, p);
        let dg = prem(&pmul(&t, &ep, p), g, p);
        let dh = prem(&pmul(&s, &ep, p), h, p);
        for (i, c) in dg.iter().enumerate() {
            big_g[i] += &pj * BigInt::from(*c);
        }
        for (i, c) in dh.iter().enumerate() {
            big_h[i] += &pj * BigInt::from(*c);
        }
        pj *= p;
    }
    (big_g, big_h)
}

fn hensel_lift(f: &ZPoly, modular: &[PPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    let mut lifted = Vec::with_capacity(modular.len());
    let mut target = f.clone();
    for i in 0..modular.len() - 1 {
        let g = &modular[i];
        let h = modular[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, q| pmul(&acc, q, p));
        let (big_g, big_h) = lift_pair(&target, g, &h, p, k);
        lifted.push(zmod_sym(&big_g, &pk));
        target = zmod_sym(&big_h, &pk);
    }
    lifted.push(target);
    lifted
}

/// Exact division of integer polynomials by a monic divisor.
fn zdiv_monic(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len() - 1;
    if a.len() <= db {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &c * bc;
        }
        q[k] = c;
    }
    r[..db].iter().all(Zero::is_zero).then_some(q)
}

fn recombine(f: &ZPoly, lifted: Vec<ZPoly>, pk: &BigInt) -> Vec<ZPoly> {
    let mut remaining = lifted;
    let mut cur = f.clone();
    let mut found = Vec::new();
    let mut d = 1;
    while 2 * d <= remaining.len() {
        let mut hit = None;
        for combo in combinations(remaining.len(), d) {
            let prod = combo
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| zmod_sym(&zmul(&acc, &remaining[i]), pk));
            if let Some(q) = zdiv_monic(&cur, &prod) {
                hit = Some((combo, prod, q));
                break;
            }
        }
        match hit {
            Some((combo, prod, q)) => {
                found.push(prod);
                cur = q;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, v)| v)
                    .collect();
            }
            None => d += 1,
        }
    }
    if cur.len() > 1 {
        found.push(cur);
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Multiplies factors back together (for checking).
pub fn expand(factors: &[(RatPoly, usize)]) -> RatPoly {
    factors
        .iter()
        .fold(RatPoly::one(), |acc, (f, m)| &acc * &f.pow(*m))
}

/// True when the rational value is a root of `p`.
pub fn is_root(p: &RatPoly, x: &Rational) -> bool {
    p.eval(x).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_i64(c)
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(3, 1).len(), 3);
    }

    #[test]
    fn irreducible_stays_whole() {
        // x^4 + 1 splits modulo every prime.
        assert_eq!(factor_squarefree(&p(&[1, 0, 0, 0, 1])), vec![p(&[1, 0, 0, 0, 1])]);
        assert_eq!(factor_squarefree(&p(&[-1, -1, 1])), vec![p(&[-1, -1, 1])]);
        assert_eq!(factor_squarefree(&p(&[1, 0, 1])), vec![p(&[1, 0, 1])]);
    }

    #[test]
    fn splits_products() {
        // (x^2 + 1)(x - 2)^2 (x^2 - 2)(3x + 1)
        let f = &(&(&p(&[1, 0, 1]) * &p(&[-2, 1]).pow(2)) * &p(&[-2, 0, 1])) * &p(&[1, 3]);
        let fs = factor(&f);
        assert_eq!(expand(&fs), f.monic());
        let degrees: Vec<(usize, usize)> = fs.iter().map(|(g, m)| (g.deg(), *m)).collect();
        assert_eq!(degrees, vec![(1, 2), (1, 1), (2, 1), (2, 1)]);
    }

    #[test]
    fn cyclotomic_twelve() {
        // x^12 - 1 = prod of cyclotomic polynomials of orders 1,2,3,4,6,12
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let fs = factor(&p(&c));
        assert_eq!(fs.len(), 6);
        assert_eq!(expand(&fs), p(&c));
        assert!(fs.contains(&(p(&[1, 0, -1, 0, 1]), 1)));
    }

    #[test]
    fn swinnerton_dyer_like() {
        // (x^2-2)(x^2-3) and the irreducible x^4 - 10x^2 + 1.
        let f = &p(&[-2, 0, 1]) * &p(&[-3, 0, 1]);
        assert_eq!(factor(&f).len(), 2);
        assert_eq!(factor(&p(&[1, 0, -10, 0, 1])).len(), 1);
    }

    #[test]
    fn non_monic_rational_input() {
        // (x/2 + 1/3)(2x^2 - 3)
        let a = RatPoly::new(vec![super::super::rational::ratio(1, 3), super::super::rational::ratio(1, 2)]);
        let f = &a * &p(&[-3, 0, 2]);
        let fs = factor(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(expand(&fs), f.monic());
    }
}
