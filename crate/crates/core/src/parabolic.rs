//! Standard maximal parabolic subgroups `P_i`: Levi structure and
//! dimensions, and the decomposition of the nilradical into irreducible
//! Levi summands indexed by shape and level.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{
    positive_roots, root_to_weight, subdiagram_components, weyl_dim,
    DiagramComponent, LieType, Root, Weight,
};

/// Levi decomposition data of a standard parabolic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviStructure {
    pub ambient: LieType,
    pub node: usize,
    /// Simple components of the Dynkin diagram with the node deleted,
    /// sorted by (rank, series).
    pub semisimple_components: Vec<LieType>,
    pub center_dim: u64,
    pub dim_l: u64,
    pub dim_u: u64,
}

/// One irreducible summand of the Levi action on the nilradical.
///
/// The shape is `level * alpha_i`; `beta0` is the unique root of that shape
/// with minimal height, and the negative of `beta0` is the highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviSummand {
    pub shape_multiple: u64,
    pub level: u64,
    pub beta0: Root,
    pub highest_weight_full: Weight,
    /// Highest weight over the Levi's simple roots: the full coordinates
    /// with the deleted node dropped.
    pub restricted_labels: Vec<i64>,
    pub dim: u64,
}

fn check_node(t: LieType, node: usize) -> Result<()> {
    if node < 1 || node > t.rank() {
        return Err(Error::InvalidNode {
            node,
            rank: t.rank(),
        });
    }
    Ok(())
}

/// Levi structure of the maximal parabolic at `node` (1-based).
pub fn levi_structure(t: LieType, node: usize) -> Result<LeviStructure> {
    check_node(t, node)?;
    let (components, dim_l, dim_u) = levi_dimensions(t, &[node]);
    Ok(LeviStructure {
        ambient: t,
        node,
        semisimple_components: components.iter().map(|c| c.lie_type).collect(),
        center_dim: 1,
        dim_l,
        dim_u,
    })
}

/// Components and dimensions for the standard parabolic with the given
/// nodes deleted from the diagram. Deleting every node yields the Borel
/// case: no components and `dim_l = rank`.
pub fn levi_dimensions(t: LieType, deleted: &[usize]) -> (Vec<DiagramComponent>, u64, u64) {
    let kept: Vec<usize> = (1..=t.rank()).filter(|i| !deleted.contains(i)).collect();
    let components = subdiagram_components(t, &kept);
    let dim_u = positive_roots(t)
        .iter()
        .filter(|root| deleted.iter().any(|&i| root.coeffs()[i - 1] != 0))
        .count() as u64;
    let dim_l = t.dim_group() - 2 * dim_u;
    (components, dim_l, dim_u)
}

/// The irreducible Levi summands of the nilradical at `node`, sorted by
/// level. Only maximal parabolics carry the shape grading used here.
pub fn levi_summands(t: LieType, node: usize) -> Result<Vec<LeviSummand>> {
    check_node(t, node)?;
    let idx = node - 1;
    let mut by_level: Vec<(u64, Vec<Root>)> = Vec::new();
    for root in positive_roots(t) {
        let level = root.coeffs()[idx];
        if level > 0 {
            let level = level as u64;
            match by_level.iter_mut().find(|(b, _)| *b == level) {
                Some((_, group)) => group.push(root),
                None => by_level.push((level, vec![root])),
            }
        }
    }
    by_level.sort_by_key(|(b, _)| *b);
    let mut out = Vec::new();
    for (level, group) in by_level {
        // positive_roots is height-sorted, so the first root of the group
        // has minimal height; the paper's grading makes it unique.
        let beta0 = group[0].clone();
        debug_assert!(group[1..]
            .iter()
            .all(|root| root.height() > beta0.height()));
        let highest_weight_full = root_to_weight(t, &beta0.negated());
        let mut restricted_labels = highest_weight_full.coeffs().to_vec();
        restricted_labels.remove(idx);
        out.push(LeviSummand {
            shape_multiple: level,
            level,
            beta0,
            highest_weight_full,
            restricted_labels,
            dim: group.len() as u64,
        });
    }
    Ok(out)
}

/// Dimension of the irreducible Levi module with the summand's restricted
/// labels, computed over the semisimple components by the Weyl dimension
/// formula. Must agree with the summand's root count.
pub fn summand_dim_by_weyl(t: LieType, node: usize, summand: &LeviSummand) -> Result<BigUint> {
    check_node(t, node)?;
    let kept: Vec<usize> = (1..=t.rank()).filter(|&i| i != node).collect();
    let mut dim = BigUint::one();
    for comp in subdiagram_components(t, &kept) {
        let labels: Vec<i64> = comp
            .nodes
            .iter()
            .map(|&u| summand.highest_weight_full.coeffs()[u - 1])
            .collect();
        dim *= weyl_dim(comp.lie_type, &Weight::new(labels))?;
    }
    Ok(dim)
}

/// True when every positive root outside the Levi has coefficient exactly 1
/// at `node`, i.e. the unipotent radical is abelian.
pub fn is_abelian_radical(t: LieType, node: usize) -> Result<bool> {
    check_node(t, node)?;
    let idx = node - 1;
    Ok(positive_roots(t)
        .iter()
        .all(|root| root.coeffs()[idx] <= 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Series;

    fn t(series: Series, rank: usize) -> LieType {
        LieType::new(series, rank).unwrap()
    }

    #[test]
    fn levi_structure_e6_node4() {
        let ls = levi_structure(t(Series::E, 6), 4).unwrap();
        let types: Vec<String> = ls
            .semisimple_components
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(types, vec!["A1", "A2", "A2"]);
        assert_eq!(ls.dim_l, 20);
        assert_eq!(ls.dim_u, 29);
        assert_eq!(ls.center_dim, 1);
    }

    #[test]
    fn levi_structure_type_a_formula() {
        for l in 1..=8usize {
            for i in 1..=l {
                let ls = levi_structure(t(Series::A, l), i).unwrap();
                let (li, ll) = (i as u64, l as u64);
                assert_eq!(ls.dim_l, 2 * li * li + ll * ll - 2 * ll * li + 2 * ll - 2 * li);
                assert_eq!(ls.dim_u, li * ll - li * li + li);
            }
        }
    }

    #[test]
    fn levi_structure_g2() {
        for i in 1..=2 {
            let ls = levi_structure(t(Series::G, 2), i).unwrap();
            assert_eq!(ls.dim_l, 4);
            assert_eq!(ls.dim_u, 5);
        }
    }

    #[test]
    fn dimension_identity_all_types() {
        for ty in LieType::all_up_to_rank(8) {
            for i in 1..=ty.rank() {
                let ls = levi_structure(ty, i).unwrap();
                assert_eq!(ty.dim_group(), ls.dim_l + 2 * ls.dim_u, "{ty} node {i}");
            }
        }
    }

    #[test]
    fn summands_b_l_last_node() {
        for l in 2..=8usize {
            let s = levi_summands(t(Series::B, l), l).unwrap();
            assert_eq!(s.len(), 2);
            assert_eq!(s[0].level, 1);
            assert_eq!(s[1].level, 2);
            let mut w1 = vec![0i64; l];
            w1[l - 2] = 1;
            w1[l - 1] = -2;
            assert_eq!(s[0].highest_weight_full.coeffs(), &w1[..]);
            let mut w2 = vec![0i64; l];
            if l >= 3 {
                w2[l - 3] = 1;
            }
            w2[l - 1] = -2;
            assert_eq!(s[1].highest_weight_full.coeffs(), &w2[..]);
        }
    }

    #[test]
    fn summands_f4_node1() {
        let s = levi_summands(t(Series::F, 4), 1).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].highest_weight_full.coeffs(), &[-2, 1, 0, 0]);
        assert_eq!(s[1].highest_weight_full.coeffs(), &[-1, 0, 0, 0]);
        assert_eq!(s[1].dim, 1);
        assert!(s[1].restricted_labels.iter().all(|&x| x == 0));
    }

    #[test]
    fn summands_e8_node8() {
        let s = levi_summands(t(Series::E, 8), 8).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].dim, 56);
        assert_eq!(s[1].dim, 1);
        assert_eq!(s[0].highest_weight_full.coeffs(), &[0, 0, 0, 0, 0, 0, 1, -2]);
        assert_eq!(s[1].highest_weight_full.coeffs(), &[0, 0, 0, 0, 0, 0, 0, -1]);
    }

    #[test]
    fn summand_dims_match_weyl_dim() {
        for ty in LieType::all_up_to_rank(8) {
            for i in 1..=ty.rank() {
                let summands = levi_summands(ty, i).unwrap();
                let ls = levi_structure(ty, i).unwrap();
                let total: u64 = summands.iter().map(|s| s.dim).sum();
                assert_eq!(total, ls.dim_u, "{ty} node {i}");
                for s in &summands {
                    assert_eq!(
                        summand_dim_by_weyl(ty, i, s).unwrap(),
                        BigUint::from(s.dim),
                        "{ty} node {i} level {}",
                        s.level
                    );
                }
            }
        }
    }

    #[test]
    fn levels_form_interval_starting_at_one() {
        for ty in LieType::all_up_to_rank(8) {
            for i in 1..=ty.rank() {
                let summands = levi_summands(ty, i).unwrap();
                for (k, s) in summands.iter().enumerate() {
                    assert_eq!(s.level, k as u64 + 1, "{ty} node {i}");
                }
                // level 1 highest weight is -alpha_i
                let mut alpha = vec![0i64; ty.rank()];
                alpha[i - 1] = -1;
                assert_eq!(
                    summands[0].highest_weight_full,
                    root_to_weight(ty, &Root::new(alpha))
                );
            }
        }
    }

    #[test]
    fn abelian_radical_table() {
        use Series::*;
        // A: every node
        for i in 1..=5 {
            assert!(is_abelian_radical(t(A, 5), i).unwrap());
        }
        // B: node 1 only (l >= 3)
        let b5 = t(B, 5);
        for i in 1..=5 {
            assert_eq!(is_abelian_radical(b5, i).unwrap(), i == 1, "B5 node {i}");
        }
        // C: node l only
        let c5 = t(C, 5);
        for i in 1..=5 {
            assert_eq!(is_abelian_radical(c5, i).unwrap(), i == 5, "C5 node {i}");
        }
        // D: nodes 1, l-1, l
        let d6 = t(D, 6);
        for i in 1..=6 {
            assert_eq!(
                is_abelian_radical(d6, i).unwrap(),
                i == 1 || i >= 5,
                "D6 node {i}"
            );
        }
        // E6: 1 and 6; E7: 7; E8, F4, G2: none
        for i in 1..=6 {
            assert_eq!(is_abelian_radical(t(E, 6), i).unwrap(), i == 1 || i == 6);
        }
        for i in 1..=7 {
            assert_eq!(is_abelian_radical(t(E, 7), i).unwrap(), i == 7);
        }
        for i in 1..=8 {
            assert!(!is_abelian_radical(t(E, 8), i).unwrap());
        }
        for i in 1..=4 {
            assert!(!is_abelian_radical(t(F, 4), i).unwrap());
        }
        for i in 1..=2 {
            assert!(!is_abelian_radical(t(G, 2), i).unwrap());
        }
    }

    #[test]
    fn epsilon_symmetry_of_levi_data() {
        use crate::rootsys::epsilon;
        for ty in LieType::all_up_to_rank(8) {
            for i in 1..=ty.rank() {
                let j = epsilon(ty, i).unwrap();
                let a = levi_structure(ty, i).unwrap();
                let b = levi_structure(ty, j).unwrap();
                assert_eq!(a.dim_l, b.dim_l);
                assert_eq!(a.dim_u, b.dim_u);
                assert_eq!(a.semisimple_components, b.semisimple_components);
            }
        }
    }

    #[test]
    fn general_subsets_down_to_the_borel() {
        // deleting every node leaves the maximal torus
        for ty in LieType::all_up_to_rank(6) {
            let all: Vec<usize> = (1..=ty.rank()).collect();
            let (components, dim_l, dim_u) = levi_dimensions(ty, &all);
            assert!(components.is_empty());
            assert_eq!(dim_l, ty.rank() as u64);
            assert_eq!(dim_u, ty.num_positive_roots());
        }
        // two deleted nodes in A4: Levi of type A1 + A2 + 2-dim center
        let a4 = t(Series::A, 4);
        let (components, dim_l, dim_u) = levi_dimensions(a4, &[2, 3]);
        let types: Vec<String> = components.iter().map(|c| c.lie_type.to_string()).collect();
        assert_eq!(types, vec!["A1", "A1"]);
        assert_eq!(dim_l + 2 * dim_u, a4.dim_group());
    }

    #[test]
    fn invalid_node_rejected() {
        assert!(levi_structure(t(Series::A, 3), 0).is_err());
        assert!(levi_summands(t(Series::A, 3), 4).is_err());
        assert!(is_abelian_radical(t(Series::A, 3), 9).is_err());
    }
}
