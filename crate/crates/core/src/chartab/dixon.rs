//! Dixon–Schneider character table computation.
//!
//! With `q ≡ 1 (mod e)`, `q > 2√|G|` and `q ∤ |G|`, the class matrices
//! `M_j[i][l] = #{(x, y) ∈ K_j × K_i : xy = g_l}` are simultaneously diagonalisable
//! over GF(q), and their common eigenvectors normalised at the identity class are
//! the central characters `ω_χ(K_i) = |K_i|χ(g_i)/χ(1)` reduced mod q. Degrees come
//! from the norm relation, values mod q follow, and each value is lifted to
//! `Σ_t m_t ε^t` by counting eigenvalue multiplicities with a fixed element `z` of
//! order `e` standing in for ε.

use std::sync::Arc;

use log::debug;

use super::{row_order, Character, CharacterTable, TableError, TableSource};
use crate::arith::numtheory::is_prime;
use crate::arith::{Cyclotomic, PrimeField};
use crate::group::{class_mult_coefficients, ConjugacyData, Group, HasClasses};

fn admissible(q: u64, e: u64, order: u64) -> bool {
    is_prime(q) && (q - 1).is_multiple_of(e) && q * q > 4 * order && !order.is_multiple_of(q)
}

/// Smallest prime `q ≡ 1 (mod e)` with `q > 2√order` and `q ∤ order`.
pub fn dixon_prime(e: u64, order: u64) -> u64 {
    dixon_prime_after(e, order, 0)
}

/// Smallest admissible prime strictly greater than `after`.
pub fn dixon_prime_after(e: u64, order: u64, after: u64) -> u64 {
    assert!(e >= 1 && order >= 1);
    (after.max(1) + 1..)
        .find(|&q| admissible(q, e, order))
        .expect("Dirichlet: admissible primes are unbounded")
}

/// A subspace of GF(q)^k held as a basis in reduced row echelon form.
#[derive(Debug, Clone)]
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn rref(f: &PrimeField, mut rows: Vec<Vec<u64>>) -> Subspace {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..cols {
                    let sub = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Subspace { basis: rows, pivots }
}

/// Basis of the null space of a square matrix.
fn nullspace(f: &PrimeField, mat: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let n = mat.len();
    let reduced = rref(f, mat);
    let free: Vec<usize> = (0..n).filter(|c| !reduced.pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; n];
            v[fc] = 1;
            for (row, &pc) in reduced.basis.iter().zip(&reduced.pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}

fn mat_vec(f: &PrimeField, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
        })
        .collect()
}

/// Eigenspaces of `m` restricted to the invariant subspace `space`, or `None`
/// when `m` acts there as a scalar.
fn split(f: &PrimeField, m: &[Vec<u64>], space: &Subspace) -> Result<Option<Vec<Subspace>>, TableError> {
    let d = space.dim();
    let images: Vec<Vec<u64>> = space.basis.iter().map(|b| mat_vec(f, m, b)).collect();
    // restricted[r][s] = coordinate r of M·b_s
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|r| (0..d).map(|s| images[s][space.pivots[r]]).collect())
        .collect();
    let mut parts = Vec::new();
    let mut found = 0;
    for lambda in 0..f.modulus() {
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(s, &x)| if r == s { f.sub(x, lambda) } else { x })
                    .collect()
            })
            .collect();
        let ns = nullspace(f, shifted);
        if ns.is_empty() {
            continue;
        }
        found += ns.len();
        let vectors: Vec<Vec<u64>> = ns
            .iter()
            .map(|coords| {
                let mut v = vec![0; space.basis[0].len()];
                for (c, b) in coords.iter().zip(&space.basis) {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = f.add(*x, f.mul(*c, *y));
                    }
                }
                v
            })
            .collect();
        parts.push(rref(f, vectors));
        if found == d {
            break;
        }
    }
    if found != d {
        return Err(TableError::SplittingFailed(format!(
            "class matrix is not diagonalisable on a {d}-dimensional space mod {}",
            f.modulus()
        )));
    }
    Ok((parts.len() > 1).then_some(parts))
}

fn split_all(
    f: &PrimeField,
    m: &[Vec<u64>],
    spaces: Vec<Subspace>,
) -> Result<Vec<Subspace>, TableError> {
    let mut out = Vec::with_capacity(spaces.len());
    for s in spaces {
        if s.dim() == 1 {
            out.push(s);
            continue;
        }
        match split(f, m, &s)? {
            Some(parts) => out.extend(parts),
            None => out.push(s),
        }
    }
    Ok(out)
}

pub fn compute_table(group: &Group, cd: &ConjugacyData) -> Result<CharacterTable, TableError> {
    compute_table_with_prime(group, cd, dixon_prime(group.exponent(), group.order()))
}

pub fn compute_table_with_prime(
    group: &Group,
    cd: &ConjugacyData,
    q: u64,
) -> Result<CharacterTable, TableError> {
    let classes = cd.classes().clone();
    let (order, e) = (classes.order, classes.exponent);
    if !admissible(q, e, order) {
        return Err(TableError::InadmissiblePrime { q, e, order });
    }
    let f = PrimeField::new(q)?;
    let k = classes.class_count();
    debug!("{}: {k} classes, exponent {e}, working mod {q}", group.name());

    let matrices: Vec<Vec<Vec<u64>>> = (1..k)
        .map(|j| {
            (0..k)
                .map(|i| {
                    class_mult_coefficients(group, cd, j, i)
                        .into_iter()
                        .map(|c| c % q)
                        .collect()
                })
                .collect()
        })
        .collect();

    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![rref(&f, identity)];
    for (j, m) in matrices.iter().enumerate() {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        spaces = split_all(&f, m, spaces)?;
        debug!("after class matrix {}: dimensions {:?}", j + 1, spaces.iter().map(Subspace::dim).collect::<Vec<_>>());
    }
    // Fallback: combinations Σ_j c^{j-1} M_j for c = 1, 2, 3, …
    let mut c = 1;
    while spaces.iter().any(|s| s.dim() > 1) {
        if c >= q {
            return Err(TableError::SplittingFailed(format!(
                "common eigenspaces of dimension > 1 remain mod {q}"
            )));
        }
        let mut combo = vec![vec![0u64; k]; k];
        let mut coeff = 1;
        for m in &matrices {
            for (crow, mrow) in combo.iter_mut().zip(m) {
                for (x, &y) in crow.iter_mut().zip(mrow) {
                    *x = f.add(*x, f.mul(coeff, y));
                }
            }
            coeff = f.mul(coeff, c);
        }
        spaces = split_all(&f, &combo, spaces)?;
        c += 1;
    }
    if spaces.len() != k {
        return Err(TableError::SplittingFailed(format!(
            "found {} eigenvectors for {k} classes",
            spaces.len()
        )));
    }

    let z = f.pow(f.primitive_root(), (q - 1) / e);
    let z_inv_powers: Vec<u64> = {
        let zi = f.inv(z);
        let mut acc = 1;
        (0..e)
            .map(|_| {
                let cur = acc;
                acc = f.mul(acc, zi);
                cur
            })
            .collect()
    };
    let e_inv = f.inv(e % q);

    let mut rows = Vec::with_capacity(k);
    for space in &spaces {
        let v = &space.basis[0];
        if v[0] == 0 {
            return Err(TableError::SplittingFailed(
                "eigenvector vanishes at the identity class".into(),
            ));
        }
        let norm = f.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, norm)).collect();

        // Σ_i ω_i ω_{i*} / |K_i| = |G| / χ(1)^2
        let s = (0..k).fold(0, |acc, i| {
            let term = f.mul(omega[i], omega[classes.inverse_class[i]]);
            f.add(acc, f.mul(term, f.inv(classes.sizes[i] % q)))
        });
        if s == 0 {
            return Err(TableError::SplittingFailed("degenerate norm".into()));
        }
        let deg_sq = f.mul(order % q, f.inv(s));
        let degree = (1..=q / 2)
            .find(|&d| f.mul(d, d) == deg_sq)
            .ok_or_else(|| TableError::SplittingFailed(format!("{deg_sq} has no square root mod {q}")))?;

        let theta: Vec<u64> = (0..k)
            .map(|i| f.mul(f.mul(omega[i], degree), f.inv(classes.sizes[i] % q)))
            .collect();
        let mut values = Vec::with_capacity(k);
        for i in 0..k {
            let powers = &classes.power_map[i];
            let mult: Vec<u64> = (0..e)
                .map(|t| {
                    let sum = (0..e).fold(0, |acc, s| {
                        let zp = z_inv_powers[((t * s) % e) as usize];
                        f.add(acc, f.mul(theta[powers[s as usize]], zp))
                    });
                    f.mul(sum, e_inv)
                })
                .collect();
            if mult.iter().sum::<u64>() != degree {
                return Err(TableError::SplittingFailed(format!(
                    "eigenvalue multiplicities {mult:?} do not sum to degree {degree}"
                )));
            }
            values.push(Cyclotomic::from_exponent_multiplicities(e, &mult));
        }
        rows.push(Character::new(values));
    }
    rows.sort_by(row_order);
    CharacterTable::new(
        group.name(),
        Arc::clone(&classes),
        rows,
        TableSource::Computed { prime: q },
    )
}
