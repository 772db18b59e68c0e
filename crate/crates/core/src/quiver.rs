//! Star-quiver machinery: Euler form, fundamental reflections, the
//! terminating open-orbit decider for uniform dimension vectors, the closed
//! formulas behind the type-A tables, and an exact-rank orbit-dimension
//! oracle over the rationals.
//!
//! The star quiver with `d` arms has `d + 1` vertices, one central sink and
//! `d` outer sources; a dimension vector lists the central coordinate
//! first.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dimension vector `(a_1, ..., a_{d+1})` for the star quiver with `d`
/// arms; `a_1` is the central vertex. Reflections act on all of `Z^{d+1}`,
/// so coordinates are held as signed integers even though representation
/// spaces only exist for nonnegative vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimVector {
    coords: Vec<i64>,
}

impl DimVector {
    /// Builds a vector from its coordinates, central vertex first.
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::NonPositive { what: "arm count" });
        }
        Ok(DimVector { coords })
    }

    /// The uniform vector `(n, a, ..., a)` with `d` arms.
    pub fn uniform(d: usize, n: i64, a: i64) -> Result<Self> {
        if d < 1 {
            return Err(Error::NonPositive { what: "arm count" });
        }
        let mut coords = vec![a; d + 1];
        coords[0] = n;
        Ok(DimVector { coords })
    }

    pub fn arms(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn center(&self) -> i64 {
        self.coords[0]
    }

    pub fn is_effective(&self) -> bool {
        self.coords.iter().all(|&a| a >= 0)
    }
}

/// Euler inner product of the star quiver:
/// `<x, y> = sum_j x_j y_j - y_1 (x_2 + ... + x_{d+1})`.
pub fn euler_form(x: &DimVector, y: &DimVector) -> Result<i64> {
    if x.coords.len() != y.coords.len() {
        return Err(Error::LengthMismatch {
            got: y.coords.len(),
            expected: x.coords.len(),
        });
    }
    let dot: i64 = x.coords.iter().zip(&y.coords).map(|(a, b)| a * b).sum();
    let outer: i64 = x.coords[1..].iter().sum();
    Ok(dot - y.coords[0] * outer)
}

/// Tits form `q(x) = <x, x>`.
pub fn tits_form(x: &DimVector) -> i64 {
    euler_form(x, x).expect("same vector")
}

/// The fundamental reflection at `vertex` (1-based; vertex 1 is central):
/// the central reflection replaces `a_1` by `-a_1 + a_2 + ... + a_{d+1}`,
/// an outer one replaces `a_i` by `a_1 - a_i`.
pub fn reflect(vertex: usize, alpha: &DimVector) -> Result<DimVector> {
    let count = alpha.coords.len();
    if vertex < 1 || vertex > count {
        return Err(Error::VertexOutOfRange { vertex, count });
    }
    let mut coords = alpha.coords.clone();
    if vertex == 1 {
        coords[0] = -alpha.coords[0] + alpha.coords[1..].iter().sum::<i64>();
    } else {
        coords[vertex - 1] = alpha.coords[0] - alpha.coords[vertex - 1];
    }
    Ok(DimVector { coords })
}

/// Decides whether the representation space of the uniform vector
/// `(n, a, ..., a)` with `d` arms contains an open orbit, by the
/// terminating reduction:
///
/// 1. if `a >= n` the orbit is open;
/// 2. otherwise replace `a` by `min(a, n - a)`;
/// 3. if `2n <= da` the vector sits in the fundamental set of imaginary
///    roots and there is no open orbit;
/// 4. if `n >= da` the orbit is open;
/// 5. otherwise replace `n` by `da - n` and repeat; the central coordinate
///    strictly decreases, so the loop terminates.
pub fn has_open_orbit_uniform(d: u64, n: u64, a: u64) -> Result<bool> {
    if d < 1 {
        return Err(Error::NonPositive { what: "arm count" });
    }
    if n < 1 {
        return Err(Error::NonPositive {
            what: "central coordinate",
        });
    }
    if a < 1 {
        return Err(Error::NonPositive {
            what: "arm coordinate",
        });
    }
    let d = d as i128;
    let mut n = n as i128;
    let mut a = a as i128;
    loop {
        if a >= n {
            return Ok(true);
        }
        a = a.min(n - a);
        if 2 * n <= d * a {
            return Ok(false);
        }
        if n >= d * a {
            return Ok(true);
        }
        let next = d * a - n;
        debug_assert!(next < n);
        n = next;
    }
}

/// Largest `a` with `a * i * (l + 1 - i) < (l + 1)^2`, in exact integer
/// arithmetic.
pub fn m_li(l: u64, i: u64) -> Result<u64> {
    check_li(l, i)?;
    let (l, i) = (l as u128, i as u128);
    let p = (l + 1) * (l + 1);
    let q = i * (l + 1 - i);
    Ok(((p - 1) / q) as u64)
}

/// Largest `a >= 2` with `rho = i / (l + 1 - i)` outside the closed
/// interval between the roots of `x^2 - a x + 1`; none exactly when
/// `2i = l + 1`. Membership reduces to the exact rational comparison
/// `a < rho + 1/rho`, i.e. `a * i * (l + 1 - i) < i^2 + (l + 1 - i)^2`.
pub fn s_li(l: u64, i: u64) -> Result<Option<u64>> {
    check_li(l, i)?;
    if 2 * i == l + 1 {
        return Ok(None);
    }
    let i = i as u128;
    let j = (l + 1) as u128 - i;
    let s = (i * i + j * j - 1) / (i * j);
    debug_assert!(s >= 2);
    Ok(Some(s as u64))
}

fn check_li(l: u64, i: u64) -> Result<()> {
    if l < 1 {
        return Err(Error::NonPositive { what: "rank" });
    }
    if i < 1 || i > l {
        return Err(Error::InvalidNode {
            node: i as usize,
            rank: l as usize,
        });
    }
    Ok(())
}

/// Generic transitivity degree of the Levi action on the nilradical in
/// type `A_l` at node `i`: 1 on the symmetric node, `s_li` otherwise.
pub fn gtd_levi_type_a(l: u64, i: u64) -> Result<u64> {
    Ok(s_li(l, i)?.unwrap_or(1))
}

/// Generic transitivity degree of `A_l` acting on the Grassmannian
/// `G/P_i`, as the closed formula `m_li`. Equal to the largest `d` for
/// which the star quiver with `d` arms and uniform vector `(l+1, i, .., i)`
/// has an open orbit; `gtd_g_type_a_by_quiver` computes that maximum by
/// iterating the decider.
pub fn gtd_g_type_a(l: u64, i: u64) -> Result<u64> {
    m_li(l, i)
}

/// Independent route to the same number: iterate the open-orbit decider on
/// `(l+1, i, ..., i)` over increasing arm counts and return the largest
/// one admitting an open orbit. Openness is monotone in the arm count.
pub fn gtd_g_type_a_by_quiver(l: u64, i: u64) -> Result<u64> {
    check_li(l, i)?;
    let mut d = 1;
    while has_open_orbit_uniform(d, l + 1, i)? {
        d += 1;
    }
    Ok(d - 1)
}

/// Guard on the representation space size accepted by the oracle.
pub const ORACLE_SIZE_GUARD: u64 = 10_000;

/// Exact-rank orbit-dimension oracle. Samples `trials` integer points of
/// the representation space with coordinates in `[-10, 10]`, computes the
/// rank of the differential of the group action at each point over the
/// rationals, and returns the maximum. The orbit through a generic point
/// is open exactly when the returned rank equals the full space dimension
/// `sum_j a_1 * a_j`.
pub fn orbit_dimension_oracle(alpha: &DimVector, seed: u64, trials: u32) -> Result<u64> {
    if !alpha.is_effective() || alpha.coords().contains(&0) {
        return Err(Error::NonPositive {
            what: "dimension vector coordinate",
        });
    }
    if trials == 0 {
        return Err(Error::NonPositive { what: "trials" });
    }
    let a = alpha.coords();
    let center = a[0] as u64;
    let rep_dim: u64 = a[1..].iter().map(|&aj| center * aj as u64).sum();
    if rep_dim > ORACLE_SIZE_GUARD {
        return Err(Error::SizeGuard {
            dim: rep_dim,
            guard: ORACLE_SIZE_GUARD,
        });
    }
    let glue_dim: usize = a.iter().map(|&aj| (aj * aj) as usize).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0u64;
    for _ in 0..trials {
        // One integer matrix per arm.
        let arms: Vec<Vec<Vec<i64>>> = a[1..]
            .iter()
            .map(|&aj| {
                (0..center as usize)
                    .map(|_| (0..aj as usize).map(|_| rng.gen_range(-10..=10)).collect())
                    .collect()
            })
            .collect();
        let rank = action_differential_rank(a, &arms, rep_dim as usize, glue_dim);
        best = best.max(rank as u64);
        if best == rep_dim {
            break;
        }
    }
    Ok(best)
}

/// Full dimension of the representation space of `alpha`.
pub fn representation_space_dim(alpha: &DimVector) -> u64 {
    let a = alpha.coords();
    a[1..].iter().map(|&aj| (a[0] * aj) as u64).sum()
}

/// Rank of the map `(g_1, ..., g_{d+1}) -> (g_1 A_j - A_j g_j)_j` from the
/// product of matrix algebras to the representation space.
fn action_differential_rank(
    a: &[i64],
    arms: &[Vec<Vec<i64>>],
    rep_dim: usize,
    glue_dim: usize,
) -> usize {
    let center = a[0] as usize;
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); glue_dim]; rep_dim];
    // Column offsets of each gl(a_v).
    let mut offsets = Vec::with_capacity(a.len());
    let mut acc = 0usize;
    for &av in a {
        offsets.push(acc);
        acc += (av * av) as usize;
    }
    let mut row_base = 0usize;
    for (arm_idx, matrix) in arms.iter().enumerate() {
        let aj = a[arm_idx + 1] as usize;
        for p in 0..center {
            for q in 0..aj {
                let row = row_base + p * aj + q;
                // g_1 basis element E_st contributes delta_{ps} A[t][q].
                for (t, matrix_row) in matrix.iter().enumerate() {
                    let col = offsets[0] + p * center + t;
                    m[row][col] += matrix_row[q];
                }
                // g_j basis element E_st contributes -A[p][s] delta_{tq}.
                for (s, value) in matrix[p].iter().enumerate() {
                    let col = offsets[arm_idx + 1] + s * aj + q;
                    m[row][col] -= *value;
                }
            }
        }
        row_base += center * aj;
    }
    rank_exact(m)
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub(crate) fn rank_exact(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0usize;
    let mut prev = BigInt::from(1);
    let mut col = 0usize;
    while rank < rows && col < cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(pivot) = pivot else {
            col += 1;
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        debug_assert!(!prev.is_zero());
        rank += 1;
        col += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_form_examples() {
        let e1 = DimVector::new(vec![1, 0, 0]).unwrap();
        assert_eq!(euler_form(&e1, &e1).unwrap(), 1);
        // uniform vectors: n^2 + d a^2 - n d a
        for d in 1..=6u64 {
            for n in 1..=9i64 {
                for a in 1..=9i64 {
                    let v = DimVector::uniform(d as usize, n, a).unwrap();
                    assert_eq!(tits_form(&v), n * n + d as i64 * a * a - n * d as i64 * a);
                }
            }
        }
        let gamma = DimVector::new(vec![4, 2, 2, 2]).unwrap();
        assert_eq!(tits_form(&gamma), 4);
        assert!(euler_form(
            &DimVector::new(vec![1, 1]).unwrap(),
            &DimVector::new(vec![1, 1, 1]).unwrap()
        )
        .is_err());
    }

    #[test]
    fn reflect_examples() {
        let v = DimVector::new(vec![3, 1, 1, 1]).unwrap();
        assert_eq!(reflect(1, &v).unwrap().coords(), &[0, 1, 1, 1]);
        let v = DimVector::new(vec![5, 2, 2]).unwrap();
        assert_eq!(reflect(2, &v).unwrap().coords(), &[5, 3, 2]);
        // involution
        for vertex in 1..=3 {
            let w = reflect(vertex, &reflect(vertex, &v).unwrap()).unwrap();
            assert_eq!(w, v);
        }
        assert!(reflect(0, &v).is_err());
        assert!(reflect(4, &v).is_err());
    }

    #[test]
    fn reflections_preserve_tits_form() {
        for d in 1..=4usize {
            for trial in 0..200u64 {
                let coords: Vec<i64> = (0..=d as u64)
                    .map(|k| ((trial * 7 + k * 13) % 21) as i64)
                    .collect();
                let v = DimVector::new(coords).unwrap();
                for vertex in 1..=d + 1 {
                    assert_eq!(tits_form(&reflect(vertex, &v).unwrap()), tits_form(&v));
                }
            }
        }
    }

    #[test]
    fn decider_examples() {
        assert!(has_open_orbit_uniform(3, 4, 2).unwrap());
        assert!(!has_open_orbit_uniform(4, 4, 2).unwrap());
        for d in 1..=10 {
            for n in 1..=6 {
                for a in n..=n + 5 {
                    assert!(has_open_orbit_uniform(d, n, a).unwrap());
                }
            }
        }
        assert!(has_open_orbit_uniform(0, 1, 1).is_err());
        assert!(has_open_orbit_uniform(1, 0, 1).is_err());
        assert!(has_open_orbit_uniform(1, 1, 0).is_err());
    }

    #[test]
    fn decider_matches_euler_sign() {
        for l in 1..=12u64 {
            for i in 1..=l {
                for d in 1..=13u64 {
                    let open = has_open_orbit_uniform(d, l + 1, i).unwrap();
                    let n = (l + 1) as i64;
                    let q = n * n + (d as i64) * (i as i64) * (i as i64)
                        - n * (d as i64) * (i as i64);
                    assert_eq!(open, q > 0, "d={d} l={l} i={i}");
                }
            }
        }
    }

    #[test]
    #[allow(clippy::manual_div_ceil)] // (l + 1) / 2 is the symmetric node, not a rounding
    fn m_li_examples() {
        for l in 1..=12 {
            assert_eq!(m_li(l, 1).unwrap(), l + 2);
        }
        for l in (1..=11).filter(|l| l % 2 == 1) {
            assert_eq!(m_li(l, (l + 1) / 2).unwrap(), 3);
        }
        assert_eq!(m_li(2, 1).unwrap(), 4);
        for l in 1..=12u64 {
            for i in 1..=l {
                assert!(m_li(l, i).unwrap() >= 3);
                assert_eq!(m_li(l, i).unwrap(), m_li(l, l + 1 - i).unwrap());
            }
        }
        assert!(m_li(3, 4).is_err());
    }

    #[test]
    #[allow(clippy::int_plus_one)] // 1 + s <= m is the stated inequality
    fn s_li_examples() {
        assert_eq!(s_li(2, 1).unwrap(), Some(2));
        assert_eq!(s_li(3, 2).unwrap(), None);
        for l in 1..=12u64 {
            for i in 1..=l {
                assert_eq!(s_li(l, i).unwrap(), s_li(l, l + 1 - i).unwrap());
                if let Some(s) = s_li(l, i).unwrap() {
                    assert!(1 + s <= m_li(l, i).unwrap(), "l={l} i={i}");
                }
            }
        }
    }

    #[test]
    fn type_a_gtd_values() {
        assert_eq!(gtd_levi_type_a(3, 2).unwrap(), 1);
        assert_eq!(gtd_levi_type_a(2, 1).unwrap(), 2);
        assert_eq!(gtd_g_type_a(2, 1).unwrap(), 4);
        for l in 1..=10u64 {
            assert_eq!(gtd_g_type_a(l, 1).unwrap(), l + 2);
            for i in 1..=l {
                assert_eq!(
                    gtd_g_type_a(l, i).unwrap(),
                    gtd_g_type_a_by_quiver(l, i).unwrap(),
                    "l={l} i={i}"
                );
            }
        }
    }

    #[test]
    fn oracle_small_cases() {
        // two generic lines in k^2 fill the space
        let alpha = DimVector::new(vec![2, 1, 1]).unwrap();
        let rank = orbit_dimension_oracle(&alpha, 1, 3).unwrap();
        assert_eq!(rank, 4);
        assert_eq!(representation_space_dim(&alpha), 4);

        // a >= n gives a full orbit
        let alpha = DimVector::new(vec![2, 3, 3]).unwrap();
        assert_eq!(
            orbit_dimension_oracle(&alpha, 7, 3).unwrap(),
            representation_space_dim(&alpha)
        );

        // (4,2,2,2,2): no open orbit
        let alpha = DimVector::new(vec![4, 2, 2, 2, 2]).unwrap();
        let rank = orbit_dimension_oracle(&alpha, 3, 3).unwrap();
        assert!(rank < representation_space_dim(&alpha));
    }

    #[test]
    fn oracle_guards() {
        let alpha = DimVector::new(vec![200, 100, 100]).unwrap();
        assert!(matches!(
            orbit_dimension_oracle(&alpha, 1, 1),
            Err(Error::SizeGuard { .. })
        ));
        let alpha = DimVector::new(vec![2, 0, 1]).unwrap();
        assert!(orbit_dimension_oracle(&alpha, 1, 1).is_err());
    }

    #[test]
    fn rank_exact_small() {
        let m = vec![
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(6)],
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(1)],
        ];
        assert_eq!(rank_exact(m), 2);
    }
}
