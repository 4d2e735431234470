//! Univariate factorization: Zassenhaus over Q (Berlekamp mod p + Hensel
//! lifting + subset recombination) and Trager's norm reduction over the
//! extension tower, plus checked root adjunction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{AlgScalar, Field, Rat, MAX_STEP_DEGREE, MAX_TOWER_DEPTH};
use super::unipoly::{gcd_univ, interpolate, resultant, squarefree_decomposition, UniPoly};
use crate::error::Error;

// ---------------------------------------------------------------------------
// arithmetic mod a small prime
// ---------------------------------------------------------------------------

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Dense polynomial over F_p, constant term first, no trailing zeros.
type ZpPoly = Vec<u64>;

fn zp_trim(f: &mut ZpPoly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn zp_mul(a: &ZpPoly, b: &ZpPoly, p: u64) -> ZpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    zp_trim(&mut out);
    out
}

fn zp_divrem(num: &ZpPoly, den: &ZpPoly, p: u64) -> (ZpPoly, ZpPoly) {
    let mut rem = num.clone();
    zp_trim(&mut rem);
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let lc_inv = mod_inv(den[dd], p);
    let mut quo = vec![0u64; rem.len() - dd];
    for dn in (dd..rem.len()).rev() {
        if rem[dn] == 0 {
            continue;
        }
        let q = rem[dn] * lc_inv % p;
        for j in 0..=dd {
            let s = q * den[j] % p;
            rem[dn - dd + j] = (rem[dn - dd + j] + p - s) % p;
        }
        quo[dn - dd] = q;
    }
    zp_trim(&mut rem);
    zp_trim(&mut quo);
    (quo, rem)
}

fn zp_gcd(a: &ZpPoly, b: &ZpPoly, p: u64) -> ZpPoly {
    let mut f = a.clone();
    let mut g = b.clone();
    zp_trim(&mut f);
    zp_trim(&mut g);
    while !g.is_empty() {
        let (_, r) = zp_divrem(&f, &g, p);
        f = std::mem::replace(&mut g, r);
    }
    if let Some(&lc) = f.last() {
        let inv = mod_inv(lc, p);
        for c in &mut f {
            *c = *c * inv % p;
        }
    }
    f
}

fn zp_monic(f: &ZpPoly, p: u64) -> ZpPoly {
    let mut f = f.clone();
    if let Some(&lc) = f.last() {
        let inv = mod_inv(lc, p);
        for c in &mut f {
            *c = *c * inv % p;
        }
    }
    f
}

fn zp_derivative(f: &ZpPoly, p: u64) -> ZpPoly {
    if f.len() <= 1 {
        return Vec::new();
    }
    let mut out: ZpPoly = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * (k as u64 % p) % p)
        .collect();
    zp_trim(&mut out);
    out
}

fn zp_pow_mod(base: &ZpPoly, mut e: u64, modulus: &ZpPoly, p: u64) -> ZpPoly {
    let mut b = zp_divrem(base, modulus, p).1;
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = zp_divrem(&zp_mul(&acc, &b, p), modulus, p).1;
        }
        b = zp_divrem(&zp_mul(&b, &b, p), modulus, p).1;
        e >>= 1;
    }
    acc
}

/// Berlekamp factorization of a monic squarefree polynomial over F_p.
fn berlekamp(f: &ZpPoly, p: u64) -> Vec<ZpPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    // Q matrix: row i = x^{i p} mod f, in the monomial basis
    let xp = zp_pow_mod(&vec![0, 1], p, f, p);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        let mut row = vec![0u64; n];
        for (k, &c) in cur.iter().enumerate() {
            row[k] = c;
        }
        rows.push(row);
        cur = zp_divrem(&zp_mul(&cur, &xp, p), f, p).1;
    }
    // kernel of (Q - I)^T: vectors v with v(x)^p = v(x) mod f
    let mut m: Vec<Vec<u64>> = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            m[j][i] = rows[i][j]; // transpose
        }
        m[i][i] = (m[i][i] + p - 1) % p;
    }
    let basis = zp_kernel(m, p);
    let r = basis.len(); // number of irreducible factors
    let mut factors: Vec<ZpPoly> = vec![zp_monic(f, p)];
    if r == 1 {
        return factors;
    }
    for v in basis.iter() {
        if factors.len() == r {
            break;
        }
        let mut vpoly: ZpPoly = v.clone();
        zp_trim(&mut vpoly);
        if vpoly.len() <= 1 {
            continue; // the constant kernel vector splits nothing
        }
        let mut next: Vec<ZpPoly> = Vec::new();
        for w in factors.into_iter() {
            if w.len() - 1 <= 1 {
                next.push(w);
                continue;
            }
            let mut pieces: Vec<ZpPoly> = Vec::new();
            let mut rest = w.clone();
            for s in 0..p {
                if rest.len() <= 1 {
                    break;
                }
                let mut shifted = vpoly.clone();
                if shifted.is_empty() {
                    shifted = vec![0];
                }
                shifted[0] = (shifted[0] + p - s) % p;
                zp_trim(&mut shifted);
                if shifted.is_empty() {
                    continue;
                }
                let g = zp_gcd(&rest, &shifted, p);
                if g.len() > 1 {
                    pieces.push(g.clone());
                    rest = zp_divrem(&rest, &g, p).0;
                }
            }
            if rest.len() > 1 {
                pieces.push(zp_monic(&rest, p));
            }
            if pieces.is_empty() {
                next.push(w);
            } else {
                next.extend(pieces);
            }
        }
        factors = next;
    }
    factors
}

fn zp_kernel(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut pivot_col_of_row: Vec<Option<usize>> = vec![None; n];
    let mut row = 0usize;
    for col in 0..n {
        let mut piv = None;
        for r in row..n {
            if m[r][col] != 0 {
                piv = Some(r);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        m.swap(row, piv);
        let inv = mod_inv(m[row][col], p);
        for c in 0..n {
            m[row][c] = m[row][c] * inv % p;
        }
        for r in 0..n {
            if r != row && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..n {
                    let s = factor * m[row][c] % p;
                    m[r][c] = (m[r][c] + p - s) % p;
                }
            }
        }
        pivot_col_of_row[row] = Some(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.iter().flatten().copied().collect();
    let mut kernel = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, pc) in pivot_col_of_row.iter().enumerate() {
            if let Some(pc) = pc {
                v[*pc] = (p - m[r][free] % p) % p;
            }
        }
        kernel.push(v);
    }
    kernel
}

// ---------------------------------------------------------------------------
// Hensel lifting and Zassenhaus over Z
// ---------------------------------------------------------------------------

fn bigint_mod_sym(a: &BigInt, m: &BigInt) -> BigInt {
    let mut r = a.mod_floor(m);
    if &r * 2 > *m {
        r -= m;
    }
    r
}

#[derive(Clone)]
struct ZPoly(Vec<BigInt>);

impl ZPoly {
    fn trim(&mut self) {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
    }
    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }
    fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return ZPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.0.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let mut z = ZPoly(out);
        z.trim();
        z
    }
    fn mod_m(&self, m: &BigInt) -> ZPoly {
        let mut z = ZPoly(self.0.iter().map(|c| bigint_mod_sym(c, m)).collect());
        z.trim();
        z
    }
    fn sub(&self, other: &ZPoly) -> ZPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_default();
            let b = other.0.get(i).cloned().unwrap_or_default();
            out.push(a - b);
        }
        let mut z = ZPoly(out);
        z.trim();
        z
    }
    fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_default();
            let b = other.0.get(i).cloned().unwrap_or_default();
            out.push(a + b);
        }
        let mut z = ZPoly(out);
        z.trim();
        z
    }
}

/// Division with remainder by a monic polynomial, coefficients reduced
/// symmetrically mod m.
fn zpoly_divrem_monic_mod(num: &ZPoly, den: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    debug_assert!(den.0.last().map_or(false, |c| c.is_one()));
    let dd = den.deg();
    let mut rem = num.mod_m(m);
    if rem.0.len() <= dd {
        return (ZPoly(Vec::new()), rem);
    }
    let mut quo = vec![BigInt::zero(); rem.0.len() - dd];
    for dn in (dd..rem.0.len()).rev() {
        let q = bigint_mod_sym(&rem.0[dn], m);
        if q.is_zero() {
            rem.0[dn] = BigInt::zero();
            continue;
        }
        for j in 0..=dd {
            let s = &q * &den.0[j];
            rem.0[dn - dd + j] = bigint_mod_sym(&(&rem.0[dn - dd + j] - s), m);
        }
        quo[dn - dd] = q;
    }
    let mut quo = ZPoly(quo);
    quo.trim();
    rem.trim();
    (quo, rem)
}

/// One quadratic Hensel step (von zur Gathen-Gerhard 15.10): from
/// f = g*h (mod m), s*g + t*h = 1 (mod m), h monic, to the same data mod m^2.
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = f.sub(&g.mul(h)).mod_m(&m2);
    let (q, r) = zpoly_divrem_monic_mod(&s.mul(&e), h, &m2);
    let g1 = g.add(&t.mul(&e)).add(&q.mul(g)).mod_m(&m2);
    let h1 = h.add(&r).mod_m(&m2);
    let one = ZPoly(vec![BigInt::one()]);
    let b = s.mul(&g1).add(&t.mul(&h1)).sub(&one).mod_m(&m2);
    let (c, d) = zpoly_divrem_monic_mod(&s.mul(&b), &h1, &m2);
    let s1 = s.sub(&d).mod_m(&m2);
    let t1 = t.sub(&t.mul(&b)).sub(&c.mul(&g1)).mod_m(&m2);
    debug_assert!(f.sub(&g1.mul(&h1)).mod_m(&m2).0.is_empty());
    (g1, h1, s1, t1)
}

/// Bezout pair over F_p for coprime g, h: s*g + t*h = 1, deg s < deg h,
/// deg t < deg g.
fn zp_bezout(g: &ZpPoly, h: &ZpPoly, p: u64) -> (ZpPoly, ZpPoly) {
    // Euclid with cofactor tracking on (g, h)
    let mut r0 = g.clone();
    let mut r1 = h.clone();
    let mut s0: ZpPoly = vec![1];
    let mut s1: ZpPoly = vec![];
    while !r1.is_empty() {
        let (q, r) = zp_divrem(&r0, &r1, p);
        let qs1 = zp_mul(&q, &s1, p);
        let mut s = s0.clone();
        // s = s0 - q*s1
        let n = s.len().max(qs1.len());
        s.resize(n, 0);
        for (i, &c) in qs1.iter().enumerate() {
            s[i] = (s[i] + p - c) % p;
        }
        zp_trim(&mut s);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 = gcd = constant c: s0*g = c mod h
    debug_assert_eq!(r0.len(), 1, "factors not coprime mod p");
    let cinv = mod_inv(r0[0], p);
    let mut s: ZpPoly = s0.iter().map(|&v| v * cinv % p).collect();
    zp_trim(&mut s);
    // reduce s mod h, then t = (1 - s*g)/h exactly over F_p
    let s = zp_divrem(&s, h, p).1;
    let mut one_minus_sg: ZpPoly = {
        let sg = zp_mul(&s, g, p);
        let mut v = vec![0u64; sg.len().max(1)];
        v[0] = 1;
        for (i, &c) in sg.iter().enumerate() {
            v[i] = (v[i] + p - c) % p;
        }
        zp_trim(&mut v);
        v
    };
    let (t, rem) = zp_divrem(&one_minus_sg, h, p);
    debug_assert!(rem.is_empty(), "Bezout division not exact");
    zp_trim(&mut one_minus_sg);
    (s, t)
}

fn zp_to_zpoly(f: &ZpPoly) -> ZPoly {
    ZPoly(f.iter().map(|&c| BigInt::from(c)).collect())
}

fn zpoly_reduce_mod_p(f: &ZPoly, p: u64) -> ZpPoly {
    let pb = BigInt::from(p);
    let mut v: ZpPoly = f
        .0
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    zp_trim(&mut v);
    v
}

/// Lift the pair (g mod p, h mod p) with f = g*h mod p (h monic, lc(f)
/// folded into g) to exactly the modulus `final_m` (a 2-power tower over p).
fn hensel_pair(f: &ZPoly, g0: &ZpPoly, h0: &ZpPoly, p: u64, final_m: &BigInt) -> (ZPoly, ZPoly) {
    let (s0, t0) = zp_bezout(g0, h0, p);
    let mut g = zp_to_zpoly(g0);
    let mut h = zp_to_zpoly(h0);
    let mut s = zp_to_zpoly(&s0);
    let mut t = zp_to_zpoly(&t0);
    let mut m = BigInt::from(p);
    while &m < final_m {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    (g, h)
}

/// Multifactor Hensel lifting on a subproduct tree. `f` is exact over Z with
/// lc(f) a unit mod p; `factors` are the monic factors of f/lc(f) mod p.
/// Returns the monic lifts mod `final_m` (symmetric representatives).
fn hensel_multifactor(f: &ZPoly, factors: &[ZpPoly], p: u64, final_m: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        // monicize f mod final_m
        let mut out = f.mod_m(final_m);
        let lc = out.0.last().expect("nonzero").clone();
        let inv = modinv_big(&lc, final_m).expect("unit leading coefficient");
        for c in &mut out.0 {
            *c = bigint_mod_sym(&(&*c * &inv), final_m);
        }
        out.trim();
        debug_assert_eq!(out.deg(), factors[0].len() - 1);
        return vec![out];
    }
    let mid = factors.len() / 2;
    let lc_p = {
        let pb = BigInt::from(p);
        f.0.last().unwrap().mod_floor(&pb).to_u64().unwrap()
    };
    let mut g0: ZpPoly = vec![lc_p];
    for fac in &factors[..mid] {
        g0 = zp_mul(&g0, fac, p);
    }
    let mut h0: ZpPoly = vec![1];
    for fac in &factors[mid..] {
        h0 = zp_mul(&h0, fac, p);
    }
    debug_assert_eq!(
        zpoly_reduce_mod_p(f, p),
        zp_mul(&g0, &h0, p),
        "pair product mismatch mod p"
    );
    let (g, h) = hensel_pair(f, &g0, &h0, p, final_m);
    let mut out = hensel_multifactor(&g, &factors[..mid], p, final_m);
    out.extend(hensel_multifactor(&h, &factors[mid..], p, final_m));
    out
}

const SMALL_PRIMES: [u64; 25] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101,
];

/// Factor a squarefree primitive polynomial over Z into irreducible factors
/// over Q (returned monic over Q, content dropped).
fn factor_z_squarefree(field: &Field, var: &str, z: &[BigInt]) -> Vec<UniPoly> {
    let n = z.len() - 1;
    if n <= 1 {
        return vec![UniPoly::new(
            field,
            var,
            z.iter()
                .map(|c| field.from_rat(Rat::from_integer(c.clone())))
                .collect(),
        )
        .monic()];
    }
    let lc = z[n].clone();
    // pick a prime where f stays squarefree and lc stays a unit
    let mut chosen: Option<(u64, Vec<ZpPoly>)> = None;
    for &p in SMALL_PRIMES.iter() {
        if (&lc % p).is_zero() {
            continue;
        }
        let fp: ZpPoly = {
            let mut v: ZpPoly = z
                .iter()
                .map(|c| {
                    let r = c.mod_floor(&BigInt::from(p));
                    r.to_u64().unwrap()
                })
                .collect();
            zp_trim(&mut v);
            v
        };
        let d = zp_derivative(&fp, p);
        if d.is_empty() {
            continue;
        }
        let g = zp_gcd(&fp, &d, p);
        if g.len() == 1 {
            let facs = berlekamp(&zp_monic(&fp, p), p);
            chosen = Some((p, facs));
            break;
        }
    }
    let (p, modular) = chosen.expect("no usable small prime found (unexpected at these degrees)");
    if modular.len() == 1 {
        return vec![UniPoly::new(
            field,
            var,
            z.iter()
                .map(|c| field.from_rat(Rat::from_integer(c.clone())))
                .collect(),
        )
        .monic()];
    }

    // Landau-Mignotte style bound: |factor coeffs| <= 2^n * ||f||_2 * |lc|
    let norm2_sq: BigInt = z.iter().map(|c| c * c).sum();
    let mut norm2 = norm2_sq.sqrt() + 1;
    norm2 = norm2 * (BigInt::one() << n) * lc.abs();
    let bound: BigInt = norm2 * 2 + 1;

    let mut pk = BigInt::from(p);
    while pk < bound {
        pk = &pk * &pk;
    }
    let fz_exact = ZPoly(z.to_vec());
    let lifted: Vec<ZPoly> = hensel_multifactor(&fz_exact, &modular, p, &pk);

    // recombination
    let mut remaining: Vec<ZPoly> = lifted;
    let mut fz = ZPoly(z.to_vec());
    let mut out: Vec<UniPoly> = Vec::new();
    let mut k = 1usize;
    'outer: while 2 * k <= remaining.len() {
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for subset in subsets_of_size(&idxs, k) {
            let lc_cur = fz.0.last().unwrap().clone();
            let mut prod = ZPoly(vec![lc_cur.clone()]);
            for &i in &subset {
                prod = prod.mul(&remaining[i]).mod_m(&pk);
            }
            let prod = prod.mod_m(&pk);
            // primitive part
            let mut pp = prod.clone();
            let content = pp
                .0
                .iter()
                .fold(BigInt::zero(), |acc, c| acc.gcd(c));
            if !content.is_zero() && !content.is_one() {
                for c in &mut pp.0 {
                    *c /= &content;
                }
            }
            if let Some(quot) = zpoly_exact_div(&fz, &pp) {
                out.push(UniPoly::new(
                    field,
                    var,
                    pp.0
                        .iter()
                        .map(|c| field.from_rat(Rat::from_integer(c.clone())))
                        .collect(),
                )
                .monic());
                fz = quot;
                let mut keep = Vec::new();
                for (i, f) in remaining.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(f);
                    }
                }
                remaining = keep;
                continue 'outer;
            }
        }
        k += 1;
    }
    if fz.deg() >= 1 {
        out.push(
            UniPoly::new(
                field,
                var,
                fz.0
                    .iter()
                    .map(|c| field.from_rat(Rat::from_integer(c.clone())))
                    .collect(),
            )
            .monic(),
        );
    }
    out
}

fn modinv_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

fn zpoly_exact_div(num: &ZPoly, den: &ZPoly) -> Option<ZPoly> {
    if den.0.is_empty() {
        return None;
    }
    let dd = den.deg();
    let mut rem = num.clone();
    rem.trim();
    if rem.0.is_empty() {
        return Some(ZPoly(Vec::new()));
    }
    if rem.0.len() <= dd && dd > 0 {
        return None;
    }
    let mut quo = vec![BigInt::zero(); rem.0.len() - dd];
    for dn in (dd..rem.0.len()).rev() {
        if rem.0[dn].is_zero() {
            continue;
        }
        let (q, r) = rem.0[dn].div_rem(&den.0[dd]);
        if !r.is_zero() {
            return None;
        }
        for j in 0..=dd {
            let s = &q * &den.0[j];
            rem.0[dn - dd + j] -= s;
        }
        quo[dn - dd] = q;
    }
    rem.trim();
    if rem.0.is_empty() {
        let mut q = ZPoly(quo);
        q.trim();
        Some(q)
    } else {
        None
    }
}

fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// ---------------------------------------------------------------------------
// factorization over the tower
// ---------------------------------------------------------------------------

/// Factor a squarefree monic polynomial over Q.
fn factor_q_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    // clear denominators
    let mut denlcm = BigInt::one();
    for c in f.coeffs() {
        let r = c.as_rat().expect("rational coefficients");
        denlcm = denlcm.lcm(r.denom());
    }
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| {
            let r = c.as_rat().unwrap();
            r.numer() * (&denlcm / r.denom())
        })
        .collect();
    // primitive part
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let prim: Vec<BigInt> = if content.is_zero() || content.is_one() {
        ints
    } else {
        ints.iter().map(|c| c / &content).collect()
    };
    factor_z_squarefree(f.field(), f.var(), &prim)
}

/// Trager: factor a squarefree monic polynomial over an extension field.
fn factor_ext_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    let k = f.field().clone();
    let lower = k.lower();
    let theta = k.generator();
    if f.degree() == Some(1) {
        return vec![f.monic()];
    }
    for shift in 0..64i64 {
        // g(x) = f(x - shift*theta)
        let s = k.from_rat(Rat::from_integer(BigInt::from(shift)));
        let offset = s.mul(&theta).neg();
        let g = f.shift(&offset);
        let norm = norm_to_lower(&g, &lower);
        if norm.is_zero() {
            continue;
        }
        let nd = norm.derivative();
        if nd.is_zero() {
            continue;
        }
        let gg = gcd_univ(&norm, &nd).unwrap();
        if gg.degree() != Some(0) {
            continue; // norm not squarefree; try next shift
        }
        let norm_factors = factor_squarefree_monic(&norm.monic());
        if norm_factors.len() == 1 {
            return vec![f.monic()];
        }
        let mut out = Vec::new();
        for nf in norm_factors {
            let nf_up = nf.embed(&k);
            let fac = gcd_univ(&g, &nf_up).unwrap();
            debug_assert!(fac.degree().map_or(false, |d| d >= 1));
            // shift back
            let back = fac.shift(&offset.neg());
            out.push(back.monic());
        }
        return out;
    }
    unreachable!("no squarefree norm found after 64 shifts");
}

/// Norm of g from K = lower(theta) down to `lower`: Res_t(m(t), g with theta
/// replaced by t), computed by evaluation-interpolation in x over `lower`.
fn norm_to_lower(g: &UniPoly, lower: &Field) -> UniPoly {
    let k = g.field();
    let step_deg = k.degree() / lower.degree();
    // m(t), monic over `lower`
    let mut m_coeffs: Vec<AlgScalar> = {
        let top = k.0.steps.last().unwrap();
        top.min_poly
            .iter()
            .map(|v| AlgScalar {
                field: lower.clone(),
                v: v.clone(),
            })
            .collect()
    };
    m_coeffs.push(lower.one());
    let m = UniPoly::new(lower, "t", m_coeffs);

    // bound on deg_x of the norm
    let n = g.degree().unwrap_or(0);
    let bound = step_deg * n;
    let pts = super::unipoly::sample_points(lower, bound + 1);
    let mut vals = Vec::with_capacity(pts.len());
    for x0 in &pts {
        // evaluate g at x = x0: element of K; write as polynomial in theta over lower
        let gx = g.eval(&k.from_scalar_embedded(x0));
        let coords = gx.coords(); // over `lower`
        let gt = UniPoly::new(lower, "t", coords);
        let r = if gt.is_zero() {
            lower.zero()
        } else {
            // formal degree handling: resultant of m (monic, exact degree) and gt
            // Res(m, gt) = prod gt over roots of m, lc(m)=1
            resultant(&m, &gt)
        };
        vals.push(r);
    }
    interpolate(lower, g.var(), &pts, &vals)
}

impl Field {
    /// Embed a scalar given over any prefix field (used by norm evaluation).
    fn from_scalar_embedded(&self, s: &AlgScalar) -> AlgScalar {
        if s.field() == self {
            s.clone()
        } else {
            self.embed(s)
        }
    }
}

fn factor_squarefree_monic(f: &UniPoly) -> Vec<UniPoly> {
    let mut out = if f.field().is_rationals() {
        factor_q_squarefree(f)
    } else {
        factor_ext_squarefree(f)
    };
    out.sort_by(factor_order);
    out
}

fn factor_order(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    let da = a.degree().unwrap_or(0);
    let db = b.degree().unwrap_or(0);
    da.cmp(&db).then_with(|| {
        for k in 0..=da {
            let c = a.coeff(k).cmp_det(&b.coeff(k));
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// Complete factorization into monic irreducibles over the descriptor field,
/// with multiplicities. The product times lc(f) reconstructs f.
pub fn factor_univ(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    assert!(!f.is_zero(), "factor of zero polynomial");
    if f.is_constant() {
        return Vec::new();
    }
    let mut out: Vec<(UniPoly, usize)> = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for irr in factor_squarefree_monic(&g) {
            out.push((irr, m));
        }
    }
    out.sort_by(|a, b| factor_order(&a.0, &b.0).then(a.1.cmp(&b.1)));
    out
}

/// Is f irreducible over its field?
pub fn is_irreducible(f: &UniPoly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(1) => true,
        _ => {
            let fs = factor_univ(f);
            fs.len() == 1 && fs[0].1 == 1
        }
    }
}

/// Result of adjoining a root: the (possibly unchanged) field and the chosen
/// root inside it.
pub struct Adjoined {
    pub field: Field,
    pub root: AlgScalar,
    /// Degree of the minimal polynomial actually adjoined (1 = collapse).
    pub degree: usize,
}

/// Adjoin a root of a monic squarefree polynomial m over its field. If m is
/// reducible the deterministic choice is the factor of smallest degree, ties
/// broken by lexicographically least coefficient vector.
pub fn adjoin_root(m: &UniPoly) -> Result<Adjoined, Error> {
    assert!(
        m.degree().map_or(false, |d| d >= 1),
        "adjoin_root needs positive degree"
    );
    let k = m.field().clone();
    let factors = factor_univ(&m.monic());
    let chosen = factors
        .iter()
        .map(|(f, _)| f)
        .min_by(|a, b| factor_order(a, b))
        .unwrap()
        .clone();
    let d = chosen.degree().unwrap();
    if d == 1 {
        // x + c: root is -c in the same field
        return Ok(Adjoined {
            root: chosen.coeff(0).neg(),
            field: k,
            degree: 1,
        });
    }
    if k.depth() + 1 > MAX_TOWER_DEPTH || d > MAX_STEP_DEGREE {
        return Err(Error::TowerTooDeep {
            degree: d,
            depth: k.depth() + 1,
        });
    }
    let gen_name = if k.depth() == 0 { "t" } else { "s" };
    let tail: Vec<AlgScalar> = (0..d).map(|i| chosen.coeff(i)).collect();
    let ext = k.extend_unchecked(tail, gen_name)?;
    let root = ext.generator();
    Ok(Adjoined {
        field: ext,
        root,
        degree: d,
    })
}

/// Split f completely into linear factors, adjoining roots as needed (at most
/// the tower cap). Returns the final common field, the embedded image of f's
/// original field elements being available via `Field::embed`, and the roots
/// with multiplicities.
pub fn split_completely(f: &UniPoly) -> Result<(Field, Vec<(AlgScalar, usize)>), Error> {
    let mut field = f.field().clone();
    let mut work = f.monic();
    let mut roots: Vec<(AlgScalar, usize)> = Vec::new();
    loop {
        let factors = factor_univ(&work);
        let mut nonlinear: Option<(UniPoly, usize)> = None;
        for (g, m) in &factors {
            if g.degree() == Some(1) {
                roots.push((g.coeff(0).neg(), *m));
            } else if nonlinear.is_none() {
                nonlinear = Some((g.clone(), *m));
            }
        }
        let Some((g, mult)) = nonlinear else {
            return Ok((field, roots));
        };
        let adj = adjoin_root(&g)?;
        let new_field = adj.field;
        roots = roots
            .into_iter()
            .map(|(r, m)| (new_field.embed(&r), m))
            .collect();
        roots.push((adj.root.clone(), mult));
        let lin = UniPoly::new(&new_field, g.var(), vec![adj.root.neg(), new_field.one()]);
        let g_rest = g
            .embed(&new_field)
            .exact_div(&lin)
            .expect("root divides its factor");
        // rebuild the unsplit part over the extension
        let mut rebuilt = UniPoly::constant(&new_field, g.var(), new_field.one());
        for (h, m) in &factors {
            if h == &g {
                if g_rest.degree().map_or(false, |d| d >= 1) {
                    rebuilt = rebuilt.mul(&g_rest.pow(*m));
                }
            } else if h.degree().map_or(false, |d| d >= 2) {
                rebuilt = rebuilt.mul(&h.embed(&new_field).pow(*m));
            }
        }
        field = new_field;
        work = rebuilt;
        if work.is_constant() {
            return Ok((field, roots));
        }
    }
}
