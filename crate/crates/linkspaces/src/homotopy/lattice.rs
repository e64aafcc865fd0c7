//! Integral basis completion for symmetry lattices.
//!
//! The group of boundary-rotation classes of a hyperbolic vertex is the
//! lattice L = Z^m + Z v, where Z^m is spanned by the lambda rotations and v
//! is the fractional shift vector of the symmetry generator. The engine
//! needs a decomposition L = S (+) Z w with S contained in Z^m, so that S
//! consists of honest (integral) rotation classes and w maps to a generator
//! of L/Z^m.

use crate::link_model::Rational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Result of completing the shift vector to a lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionBasis {
    /// n = m-1 integral vectors spanning a complement of Z w inside Z^m.
    pub integral: Vec<Vec<i64>>,
    /// The fractional basis vector; together with `integral` it spans L.
    pub fractional: Vec<Rational>,
    /// Its multiplier: the image of `fractional` in L/Z^m equals
    /// `multiplier` times the image of the input shift.
    pub multiplier: i64,
}

fn frac(v: &[Rational]) -> Vec<Rational> {
    v.iter()
        .map(|r| {
            
            r - r.floor()
        })
        .collect()
}

/// Order of the image of v in (Q/Z)^m: lcm of the denominators.
pub fn torus_order(v: &[Rational]) -> i64 {
    v.iter().fold(1i64, |a, r| a.lcm(r.denom()))
}

/// Decomposes L = Z^m + Z v as S (+) Z w with S inside Z^m.
///
/// Preference order: w = v with S a subset of the standard basis (dropping
/// the lowest-index coordinate that works), then w = v with a general
/// integral section, then a Smith-style fallback basis vector.
pub fn section_basis(v: &[Rational]) -> SectionBasis {
    let m = v.len();
    let v = frac(v);
    let q = torus_order(&v);
    assert!(m >= 1);
    if q == 1 {
        // v integral: L = Z^m, nothing fractional
        return SectionBasis {
            integral: (0..m).map(|i| unit(m, i)).collect(),
            fractional: vec![Rational::zero(); m],
            multiplier: 0,
        };
    }

    // try dropping standard coordinate j: works iff v_j = +-1/q mod 1
    for j in 0..m {
        let vj = &v[j];
        if vj.denom().abs() != q {
            continue;
        }
        let fractional = if vj.numer().abs() == 1 {
            v.clone()
        } else if (q - vj.numer()).abs() == 1 {
            // recentre to the -1/q representative so the determinant is 1/q
            let mut w = v.clone();
            w[j] = *vj - Rational::one();
            w
        } else {
            continue;
        };
        let integral: Vec<Vec<i64>> = (0..m).filter(|&i| i != j).map(|i| unit(m, i)).collect();
        return SectionBasis {
            integral,
            fractional,
            multiplier: 1,
        };
    }

    // general integral section with w = v, valid when v is primitive in L;
    // compute a basis of L and primitivity via scaled integer lattices
    let (l_basis, v_coords) = lattice_basis_and_coords(&v, q);
    let content = v_coords
        .iter()
        .fold(0i64, |a, &b| a.gcd(&b));
    if content.abs() == 1 {
        // complete v_coords to a unimodular basis of Z^m (in L-coordinates),
        // then shear the completion into Z^m using the quotient map
        let completion = complete_unimodular(&v_coords);
        // phi: L -> Z/q, x -> t where x = t*v mod Z^m; on the L-basis rows
        // this is read off from the fractional parts
        let mut integral = Vec::new();
        for row in completion {
            // row is in (scaled) L-coordinates; convert to rational vector
            let vec_r = coords_to_vector(&row, &l_basis, q);
            let t = multiplier_of(&vec_r, &v, q);
            // subtract t * v to land in Z^m
            let shear: Vec<Rational> = vec_r
                .iter()
                .zip(&v)
                .map(|(a, b)| a - b * Rational::from_integer(t))
                .collect();
            let ints: Vec<i64> = shear
                .iter()
                .map(|r| {
                    debug_assert!(r.denom().is_one());
                    *r.numer()
                })
                .collect();
            integral.push(ints);
        }
        return SectionBasis {
            integral,
            fractional: v.clone(),
            multiplier: 1,
        };
    }

    // v imprimitive in L: fall back to a Smith-derived fractional vector
    // (its image still generates L/Z^m; record the multiplier)
    let (w, t) = smith_fractional(&v, q);
    let mut sb = section_basis(&w);
    sb.multiplier = t;
    sb
}

fn unit(m: usize, i: usize) -> Vec<i64> {
    let mut u = vec![0i64; m];
    u[i] = 1;
    u
}

/// Basis of q*L as integer row vectors (Hermite form of [q I; q v]).
fn lattice_basis_and_coords(v: &[Rational], q: i64) -> (Vec<Vec<i64>>, Vec<i64>) {
    let m = v.len();
    let mut rows: Vec<Vec<i64>> = (0..m)
        .map(|i| {
            let mut r = vec![0i64; m];
            r[i] = q;
            r
        })
        .collect();
    rows.push(
        v.iter()
            .map(|r| (r * Rational::from_integer(q)).to_integer())
            .collect(),
    );
    let basis = hermite_rows(rows);
    // coordinates of q*v in that basis
    let qv: Vec<i64> = v
        .iter()
        .map(|r| (r * Rational::from_integer(q)).to_integer())
        .collect();
    let coords = solve_in_basis(&basis, &qv);
    (basis, coords)
}

/// Row Hermite normal form (basis of the row lattice), via integer row ops.
#[allow(clippy::needless_range_loop)]
fn hermite_rows(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let m = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..m {
        // find a pivot row with minimal nonzero |entry| in this column
        loop {
            let mut piv: Option<usize> = None;
            for r in rank..rows.len() {
                if rows[r][col] != 0 {
                    piv = Some(match piv {
                        Some(p) if rows[p][col].abs() <= rows[r][col].abs() => p,
                        _ => r,
                    });
                }
            }
            let Some(p) = piv else { break };
            rows.swap(rank, p);
            let mut done = true;
            for r in (rank + 1)..rows.len() {
                if rows[r][col] != 0 {
                    let k = rows[r][col] / rows[rank][col];
                    for c in 0..m {
                        rows[r][c] -= k * rows[rank][c];
                    }
                    if rows[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rank < rows.len() && rows[rank][col] != 0 {
            if rows[rank][col] < 0 {
                for c in 0..m {
                    rows[rank][c] = -rows[rank][c];
                }
            }
            rank += 1;
        }
    }
    rows.truncate(rank);
    rows
}

/// Solves x * basis = target over the integers (basis in row-echelon form).
fn solve_in_basis(basis: &[Vec<i64>], target: &[i64]) -> Vec<i64> {
    let m = target.len();
    let mut rest: Vec<i64> = target.to_vec();
    let mut coords = vec![0i64; basis.len()];
    for (bi, row) in basis.iter().enumerate() {
        // leading column of this row
        let lead = (0..m).find(|&c| row[c] != 0).expect("zero basis row");
        debug_assert_eq!(rest[lead] % row[lead], 0);
        let k = rest[lead] / row[lead];
        coords[bi] = k;
        for c in 0..m {
            rest[c] -= k * row[c];
        }
    }
    debug_assert!(rest.iter().all(|&x| x == 0));
    coords
}

/// Extends a primitive integer row to a unimodular matrix and returns the
/// other rows (a complement basis).
fn complete_unimodular(v: &[i64]) -> Vec<Vec<i64>> {
    // Standard construction: repeatedly clear with extended gcd. We build
    // the full unimodular matrix with first row v.
    let m = v.len();
    let mut mat: Vec<Vec<i64>> = vec![v.to_vec()];
    mat.extend((0..m).map(|i| unit(m, i)));
    // Gaussian-style reduction keeping the first row: select from the unit
    // rows a complement of v. Compute via Hermite of [v] and tracking, or
    // simply: complement = kernel-basis of the map x -> <x, dual> ... easier:
    // use the recursive gcd construction.
    complement_of_primitive(v)
}

/// Complement of a primitive vector: n-1 integer rows completing v to a
/// basis of Z^m, by induction on coordinates with extended gcd.
#[allow(clippy::needless_range_loop)]
fn complement_of_primitive(v: &[i64]) -> Vec<Vec<i64>> {
    let m = v.len();
    if m == 1 {
        return Vec::new();
    }
    // find unimodular U with U v^T = e1 (column form); then the complement
    // rows are U^-1 applied to e2..em, i.e. columns 2..m of U^-1.
    // Build U as a product of elementary 2x2 gcd steps.
    let mut u = identity(m);
    let mut w: Vec<i64> = v.to_vec();
    for i in 1..m {
        // combine w[0] and w[i] into gcd at position 0
        let (g, a, b) = extended_gcd(w[0], w[i]);
        if g == 0 {
            continue;
        }
        let (p, q) = (w[0] / g, w[i] / g);
        // rows: new0 = a*r0 + b*ri ; newi = -q*r0 + p*ri  (det = a p + b q = 1)
        let r0 = u[0].clone();
        let ri = u[i].clone();
        for c in 0..m {
            u[0][c] = a * r0[c] + b * ri[c];
            u[i][c] = -q * r0[c] + p * ri[c];
        }
        let w0 = w[0];
        let wi = w[i];
        w[0] = a * w0 + b * wi;
        w[i] = -q * w0 + p * wi;
    }
    debug_assert_eq!(w[0].abs(), 1);
    if w[0] < 0 {
        for c in 0..m {
            u[0][c] = -u[0][c];
        }
    }
    // now u v^T = e1, so v^T is the first column of u^-1; the rows of
    // (u^-1)^T complete v to a basis, i.e. the complement is given by
    // columns 2..m of u^-1
    let uinv = invert_unimodular(&u);
    (1..m)
        .map(|c| (0..m).map(|r| uinv[r][c]).collect())
        .collect()
}

fn identity(m: usize) -> Vec<Vec<i64>> {
    (0..m).map(|i| unit(m, i)).collect()
}

fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = extended_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// Inverse of a unimodular integer matrix (rational elimination, exact).
fn invert_unimodular(u: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = u.len();
    let mut a: Vec<Vec<Rational>> = u
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..m {
        let piv = (col..m).find(|&r| !a[r][col].is_zero()).expect("singular");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for c in 0..m {
            a[col][c] /= p;
            inv[col][c] /= p;
        }
        for r in 0..m {
            if r != col && !a[r][col].is_zero() {
                let k = a[r][col];
                for c in 0..m {
                    let ac = a[col][c];
                    let ic = inv[col][c];
                    a[r][c] -= k * ac;
                    inv[r][c] -= k * ic;
                }
            }
        }
    }
    inv.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    debug_assert!(x.denom().is_one());
                    *x.numer()
                })
                .collect()
        })
        .collect()
}

/// Converts coordinates in a basis of q*L back to a rational vector in L.
fn coords_to_vector(coords: &[i64], basis: &[Vec<i64>], q: i64) -> Vec<Rational> {
    let m = basis.first().map_or(0, |r| r.len());
    let mut out = vec![Rational::zero(); m];
    for (k, row) in coords.iter().zip(basis) {
        for c in 0..m {
            out[c] += Rational::new(*k * row[c], q);
        }
    }
    out
}

/// t such that x = t v mod Z^m (both given mod 1 data), for x in L.
fn multiplier_of(x: &[Rational], v: &[Rational], q: i64) -> i64 {
    for t in 0..q {
        let ok = x
            .iter()
            .zip(v)
            .all(|(a, b)| {
                let d = a - b * Rational::from_integer(t);
                d.denom().is_one()
            });
        if ok {
            return t;
        }
    }
    panic!("vector not in the lattice spanned by Z^m and v");
}

/// Smith-style fallback: a fractional vector w in L, primitive, whose image
/// generates L/Z^m; returns (w, t) with image(w) = t * image(v).
fn smith_fractional(v: &[Rational], q: i64) -> (Vec<Rational>, i64) {
    // search small combinations t*v + integer corrections that are primitive
    for t in 1..q {
        if num_integer::Integer::gcd(&t, &q) != 1 {
            continue;
        }
        let w: Vec<Rational> = v
            .iter()
            .map(|r| {
                let s = r * Rational::from_integer(t);
                s - s.floor()
            })
            .collect();
        let (_, coords) = lattice_basis_and_coords(&w, torus_order(&w));
        let content = coords.iter().fold(0i64, |a, &b| a.gcd(&b));
        if content.abs() == 1 {
            return (w, t);
        }
    }
    panic!("no primitive generator found (inconsistent symmetry data)");
}
