//! Exact kernels of matrices over `Z[A, A⁻¹]`, computed over its fraction
//! field with fraction-free Gauss–Jordan elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::laurent::Laurent;

/// A basis of `{x : M·x = 0}`. Each vector has integral entries; every
/// vector is checked against `m` before it is returned.
pub fn kernel(m: &[Vec<Laurent>], ncols: usize) -> Vec<Vec<Laurent>> {
    let mut a: Vec<Vec<Laurent>> = m
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .cloned()
        .collect();
    let nrows = a.len();
    let mut prev = Laurent::one();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].num_terms())
        else {
            continue;
        };
        a.swap(rank, p);
        let piv = a[rank][col].clone();
        for i in 0..nrows {
            if i == rank {
                continue;
            }
            let f = a[i][col].clone();
            let row: Vec<Laurent> = a[i]
                .iter()
                .zip(&a[rank])
                .map(|(x, y)| {
                    (&(&piv * x) - &(&f * y))
                        .div_exact(&prev)
                        .expect("fraction-free elimination divides exactly")
                })
                .collect();
            a[i] = row;
        }
        prev = piv;
        pivots.push(col);
        rank += 1;
    }
    let d = prev;
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Laurent::zero(); ncols];
        x[free] = d.clone();
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = -&a[r][free];
        }
        assert!(is_kernel_vector(m, &x), "kernel vector fails substitution");
        out.push(primitive(x));
    }
    out
}

pub fn is_kernel_vector(m: &[Vec<Laurent>], x: &[Laurent]) -> bool {
    m.iter().all(|row| {
        row.iter()
            .zip(x)
            .map(|(a, b)| a * b)
            .sum::<Laurent>()
            .is_zero()
    })
}

/// Dense coefficients of `A^-low · c`, lowest degree first.
fn dense(c: &Laurent, low: i64) -> Vec<BigInt> {
    let mut v = Vec::new();
    for (e, k) in c.terms() {
        let i = (e - low) as usize;
        if v.len() <= i {
            v.resize(i + 1, BigInt::zero());
        }
        v[i] = k.clone();
    }
    v
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, k| g.gcd(k))
}

fn primitive_part(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    let c = if p.last().is_some_and(|k| k.is_negative()) {
        -c
    } else {
        c
    };
    p.iter().map(|k| k / &c).collect()
}

/// Pseudo-remainder of `a` by nonzero `b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for k in r.iter_mut() {
            *k *= lb;
        }
        for (i, bk) in b.iter().enumerate() {
            r[shift + i] -= &lr * bk;
        }
        while r.last().is_some_and(|k| k.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Primitive gcd in `Z[A]` via the primitive remainder sequence.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut a, mut b) = (primitive_part(a), primitive_part(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = prem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { primitive_part(&r) };
    }
    a
}

/// Divides out the gcd of the entries in `Z[A, A⁻¹]` and fixes the sign of
/// the last nonzero entry.
fn primitive(x: Vec<Laurent>) -> Vec<Laurent> {
    let nonzero: Vec<&Laurent> = x.iter().filter(|c| !c.is_zero()).collect();
    let Some(last) = nonzero.last() else {
        return x;
    };
    let mut g: Vec<BigInt> = Vec::new();
    for c in &nonzero {
        let p = dense(c, c.low_exp().unwrap());
        g = if g.is_empty() {
            primitive_part(&p)
        } else {
            poly_gcd(&g, &p)
        };
        if g.len() == 1 {
            break;
        }
    }
    let mut g = Laurent::from_terms(g.into_iter().enumerate().map(|(i, k)| (i as i64, k)));
    let c = content(
        &nonzero
            .iter()
            .flat_map(|c| c.terms().map(|(_, k)| k.clone()))
            .collect::<Vec<_>>(),
    );
    g = g.scale(&c);
    let q = last.div_exact(&g).expect("gcd divides");
    if q.terms().next_back().is_some_and(|(_, k)| k.is_negative()) {
        g = -g;
    }
    let low = x
        .iter()
        .filter_map(|c| c.div_exact(&g).and_then(|q| q.low_exp()))
        .min()
        .unwrap_or(0);
    x.into_iter()
        .map(|c| c.div_exact(&g).expect("gcd divides").shift(-low))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(k: i64) -> Laurent {
        Laurent::constant(k)
    }

    #[test]
    fn integer_kernel() {
        let m = vec![vec![l(1), l(2), l(3)], vec![l(2), l(4), l(6)]];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let a = Laurent::a();
        let m = vec![vec![a.clone(), l(1)], vec![l(1), a]];
        assert!(kernel(&m, 2).is_empty());
    }

    #[test]
    fn laurent_kernel_vector() {
        // A·x − A⁻¹·y = 0
        let m = vec![vec![Laurent::a(), -Laurent::a_pow(-1)]];
        let k = kernel(&m, 2);
        assert_eq!(k.len(), 1);
        assert!(is_kernel_vector(&m, &k[0]));
        assert_eq!(k[0], vec![Laurent::one(), Laurent::a_pow(2)]);
    }

    #[test]
    fn exact_division_on_singular_laurent_matrix() {
        let d = Laurent::delta();
        let a = Laurent::a_pow;
        let m = vec![
            vec![a(1), d.clone(), a(2) + a(-2)],
            vec![a(2), &a(1) * &d, a(3) + a(-1)],
            vec![d.clone(), a(-1), a(5)],
        ];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        assert!(is_kernel_vector(&m, &k[0]));
    }

    #[test]
    fn gcd_of_products() {
        let p = |v: &[i64]| v.iter().map(|&k| BigInt::from(k)).collect::<Vec<_>>();
        // (A + 1)(A - 2) and (A + 1)(A + 3)
        let g = poly_gcd(&p(&[-2, -1, 1]), &p(&[3, 4, 1]));
        assert_eq!(g, p(&[1, 1]));
    }

    #[test]
    fn kernel_vectors_are_primitive() {
        let f = &Laurent::delta() * &(Laurent::a_pow(3) + Laurent::constant(2));
        let m = vec![vec![&f * &Laurent::a(), -&f]];
        let k = kernel(&m, 2);
        assert_eq!(k[0], vec![Laurent::one(), Laurent::a()]);
    }
}
