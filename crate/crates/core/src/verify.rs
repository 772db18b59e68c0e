//! Consistency verifier: every structural invariant the library promises,
//! runnable as one batch. Each check reports a name and, on failure, the
//! first offending case. The gtd checks accept injected reference data so
//! that corrupted values are caught by name.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::gtd::{
    borel_gtd, gtd_flag_with, gtd_group_with, gtd_levi_with, table_types, ReferenceData,
};
use crate::parabolic::{is_abelian_radical, levi_structure, levi_summands, summand_dim_by_weyl};
use crate::quiver::{
    has_open_orbit_uniform, m_li, orbit_dimension_oracle, reflect, representation_space_dim, s_li,
    tits_form, DimVector,
};
use crate::rootsys::{
    cartan_matrix, dominant_conjugate, dual_weight, epsilon, freudenthal_multiplicities,
    positive_roots, root_to_weight, weyl_dim, weyl_orbit_size, LieType, Root, Series, Weight,
};
use crate::tensor::{
    count_system_solutions, invariant_dim, tensor_decompose, tensor_e6_vector, DEFAULT_WORK_BUDGET,
};

/// Result of one named consistency check.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn pass(name: &'static str) -> Self {
        Check {
            name,
            ok: true,
            detail: String::new(),
        }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        Check { name, ok: false, detail }
    }
}

fn check<F>(name: &'static str, body: F) -> Check
where
    F: FnOnce() -> std::result::Result<(), String>,
{
    match body() {
        Ok(()) => Check::pass(name),
        Err(detail) => Check::fail(name, detail),
    }
}

/// Expected value tables, frozen independently of the computing code.
mod expected {
    use crate::rootsys::{LieType, Series};

    pub fn table1(t: LieType) -> u64 {
        let l = t.rank() as u64;
        match t.series() {
            Series::A => l + 2,
            Series::B | Series::C | Series::D => 3,
            Series::E => match t.rank() {
                6 => 4,
                7 => 3,
                _ => 2,
            },
            Series::F | Series::G => 2,
        }
    }

    pub fn table2(t: LieType, i: usize) -> Option<u64> {
        let l = t.rank();
        Some(match t.series() {
            Series::A => return None, // covered by the quiver formulas
            Series::B | Series::C => {
                if i == 1 || i == l {
                    3
                } else {
                    2
                }
            }
            Series::D => {
                if i == 1 || i == l - 1 || i == l {
                    3
                } else {
                    2
                }
            }
            Series::E => match (l, i) {
                (6, 1) | (6, 6) => 4,
                (7, 7) => 3,
                (6, _) | (7, _) | (8, _) => 2,
                _ => unreachable!(),
            },
            Series::F | Series::G => 2,
        })
    }

    pub fn table5(t: LieType, i: usize) -> Option<u64> {
        let l = t.rank();
        Some(match t.series() {
            Series::A => return None,
            Series::B | Series::C => u64::from(i == 1 || i == l),
            Series::D => {
                if i == 1 {
                    1
                } else if i == l - 1 || i == l {
                    if l % 2 == 1 {
                        2
                    } else {
                        1
                    }
                } else {
                    0
                }
            }
            Series::E => match (l, i) {
                (6, 1) | (6, 6) => 2,
                (6, 3) | (6, 5) => 1,
                (7, 7) => 1,
                _ => 0,
            },
            Series::F | Series::G => 0,
        })
    }

    pub fn table3_nodes(t: LieType) -> Vec<usize> {
        let l = t.rank();
        match t.series() {
            Series::A => (1..=l).collect(),
            Series::B | Series::C => vec![1, l],
            Series::D => vec![1, l - 1, l],
            Series::E => match l {
                6 => vec![1, 6],
                7 => vec![7],
                _ => vec![],
            },
            Series::F | Series::G => vec![],
        }
    }

    pub fn table4_nodes(t: LieType) -> Vec<usize> {
        let l = t.rank();
        match t.series() {
            Series::E if l == 6 => vec![1, 3, 5, 6],
            _ => table3_nodes(t),
        }
    }
}

/// Runs the full battery of consistency checks over all table types of
/// rank at most `max_rank`, using the supplied reference data for the gtd
/// values.
pub fn run_checks(max_rank: usize, reference: &ReferenceData) -> Vec<Check> {
    let types = table_types(max_rank);
    let all_types = LieType::all_up_to_rank(max_rank);
    let mut checks = Vec::new();

    checks.push(check("positive root count matches the group dimension", || {
        for &t in &all_types {
            let count = positive_roots(t).len() as u64;
            if count != t.num_positive_roots() {
                return Err(format!("{t}: closure found {count} roots"));
            }
            let l = t.rank() as u64;
            let dim = match t.series() {
                Series::A => (l + 1) * (l + 1) - 1,
                Series::B | Series::C => l * (2 * l + 1),
                Series::D => l * (2 * l - 1),
                Series::E => [78, 133, 248][t.rank() - 6],
                Series::F => 52,
                Series::G => 14,
            };
            if t.dim_group() != dim {
                return Err(format!("{t}: dim {} != {dim}", t.dim_group()));
            }
        }
        Ok(())
    }));

    checks.push(check("diagram involution squares to the identity and preserves the Cartan matrix", || {
        for &t in &all_types {
            let c = cartan_matrix(t);
            for i in 1..=t.rank() {
                let ei = epsilon(t, i).map_err(|e| e.to_string())?;
                if epsilon(t, ei).map_err(|e| e.to_string())? != i {
                    return Err(format!("{t}: involution fails at node {i}"));
                }
                for j in 1..=t.rank() {
                    let ej = epsilon(t, j).map_err(|e| e.to_string())?;
                    if c.entry(ei - 1, ej - 1) != c.entry(i - 1, j - 1) {
                        return Err(format!("{t}: Cartan entry ({i},{j}) not preserved"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(check("dual weight is a dominance-preserving involution", || {
        for &t in &all_types {
            for i in 1..=t.rank() {
                let w = Weight::fundamental(t.rank(), i, 2).map_err(|e| e.to_string())?;
                let d = dual_weight(t, &w);
                if !d.is_dominant() || dual_weight(t, &d) != w {
                    return Err(format!("{t}: fails at fundamental weight {i}"));
                }
            }
        }
        Ok(())
    }));

    checks.push(check("weight coordinates are linear and injective on roots", || {
        for &t in &all_types {
            let mut seen = std::collections::HashSet::new();
            for root in positive_roots(t) {
                let w = root_to_weight(t, &root);
                if !seen.insert(w.clone()) {
                    return Err(format!("{t}: weight map not injective"));
                }
                let double = Root::new(root.coeffs().iter().map(|c| 2 * c).collect());
                let expected: Vec<i64> = w.coeffs().iter().map(|a| 2 * a).collect();
                if root_to_weight(t, &double).coeffs() != expected {
                    return Err(format!("{t}: weight map not linear"));
                }
            }
        }
        Ok(())
    }));

    checks.push(check("orbit-weighted multiplicities sum to the Weyl dimension", || {
        for &t in &all_types {
            if t.rank() > 4 {
                continue;
            }
            for i in 1..=t.rank() {
                let hw = Weight::fundamental(t.rank(), i, 1).map_err(|e| e.to_string())?;
                if weyl_dim(t, &hw).map_err(|e| e.to_string())? > BigUint::from(10_000u32) {
                    continue;
                }
                let mult = freudenthal_multiplicities(t, &hw).map_err(|e| e.to_string())?;
                let mut total = BigUint::zero();
                for (mu, m) in &mult {
                    let orbit = weyl_orbit_size(t, mu).map_err(|e| e.to_string())?;
                    total += BigUint::from(*m) * BigUint::from(orbit);
                }
                if total != weyl_dim(t, &hw).map_err(|e| e.to_string())? {
                    return Err(format!("{t}: sum rule fails at fundamental weight {i}"));
                }
            }
        }
        Ok(())
    }));

    checks.push(check("dim G = dim L + 2 dim U for every maximal parabolic", || {
        for &t in &all_types {
            for i in 1..=t.rank() {
                let ls = levi_structure(t, i).map_err(|e| e.to_string())?;
                if t.dim_group() != ls.dim_l + 2 * ls.dim_u {
                    return Err(format!("{t} node {i}"));
                }
            }
        }
        Ok(())
    }));

    checks.push(check("summand dimensions: root counts equal Weyl dimensions and sum to dim U", || {
        for &t in &all_types {
            for i in 1..=t.rank() {
                let ls = levi_structure(t, i).map_err(|e| e.to_string())?;
                let summands = levi_summands(t, i).map_err(|e| e.to_string())?;
                let total: u64 = summands.iter().map(|s| s.dim).sum();
                if total != ls.dim_u {
                    return Err(format!("{t} node {i}: sum {total} != dim U {}", ls.dim_u));
                }
                for s in &summands {
                    let by_weyl = summand_dim_by_weyl(t, i, s).map_err(|e| e.to_string())?;
                    if by_weyl != BigUint::from(s.dim) {
                        return Err(format!("{t} node {i} level {}", s.level));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(check("levels form an interval from 1 and level 1 has highest weight -alpha_i", || {
        for &t in &all_types {
            for i in 1..=t.rank() {
                let summands = levi_summands(t, i).map_err(|e| e.to_string())?;
                for (k, s) in summands.iter().enumerate() {
                    if s.level != k as u64 + 1 {
                        return Err(format!("{t} node {i}: level gap"));
                    }
                }
                let mut alpha = vec![0i64; t.rank()];
                alpha[i - 1] = -1;
                if summands[0].highest_weight_full != root_to_weight(t, &Root::new(alpha)) {
                    return Err(format!("{t} node {i}: level-1 weight"));
                }
            }
        }
        Ok(())
    }));

    checks.push(check("Levi data is symmetric under the diagram involution", || {
        for &t in &all_types {
            for i in 1..=t.rank() {
                let j = epsilon(t, i).map_err(|e| e.to_string())?;
                let a = levi_structure(t, i).map_err(|e| e.to_string())?;
                let b = levi_structure(t, j).map_err(|e| e.to_string())?;
                if a.dim_l != b.dim_l
                    || a.dim_u != b.dim_u
                    || a.semisimple_components != b.semisimple_components
                {
                    return Err(format!("{t}: nodes {i} and {j} differ"));
                }
            }
        }
        Ok(())
    }));

    checks.push(check("open-orbit decider agrees with the Euler-form sign", || {
        for l in 1..=12u64 {
            for i in 1..=l {
                for d in 1..=13u64 {
                    let open =
                        has_open_orbit_uniform(d, l + 1, i).map_err(|e| e.to_string())?;
                    let n = (l + 1) as i64;
                    let q =
                        n * n + (d as i64) * (i as i64) * (i as i64) - n * (d as i64) * (i as i64);
                    if open != (q > 0) {
                        return Err(format!("d={d} l={l} i={i}"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(check("reflections preserve the Tits form", || {
        for d in 1..=6usize {
            for trial in 0..400u64 {
                let coords: Vec<i64> = (0..=d as u64)
                    .map(|k| ((trial.wrapping_mul(2654435761).wrapping_add(k * 97)) % 21) as i64)
                    .collect();
                let v = DimVector::new(coords).map_err(|e| e.to_string())?;
                for vertex in 1..=d + 1 {
                    let r = reflect(vertex, &v).map_err(|e| e.to_string())?;
                    if tits_form(&r) != tits_form(&v) {
                        return Err(format!("d={d} vertex={vertex} v={:?}", v.coords()));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(check("closed formulas: m >= 3, both symmetric under i -> l+1-i, 1 + s <= m", || {
        for l in 1..=12u64 {
            for i in 1..=l {
                let m = m_li(l, i).map_err(|e| e.to_string())?;
                if m < 3 {
                    return Err(format!("m({l},{i}) = {m} < 3"));
                }
                if m != m_li(l, l + 1 - i).map_err(|e| e.to_string())? {
                    return Err(format!("m({l},{i}) not symmetric"));
                }
                let s = s_li(l, i).map_err(|e| e.to_string())?;
                if s != s_li(l, l + 1 - i).map_err(|e| e.to_string())? {
                    return Err(format!("s({l},{i}) not symmetric"));
                }
                if (2 * i == l + 1) != s.is_none() {
                    return Err(format!("s({l},{i}) empty iff symmetric node fails"));
                }
                if let Some(s) = s {
                    if 1 + s > m {
                        return Err(format!("1 + s({l},{i}) > m"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(check("flag gtd matches the frozen table rows", || {
        for &t in &types {
            for i in 1..=t.rank() {
                if let Some(want) = expected::table2(t, i) {
                    let got = gtd_flag_with(reference, t, i).map_err(|e| e.to_string())?;
                    if got.value != want {
                        return Err(format!("{t} node {i}: {} != {want}", got.value));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(check("Levi gtd matches the frozen table rows", || {
        for &t in &types {
            for i in 1..=t.rank() {
                if let Some(want) = expected::table5(t, i) {
                    let got = gtd_levi_with(reference, t, i).map_err(|e| e.to_string())?;
                    if got.value != want {
                        return Err(format!("{t} node {i}: {} != {want}", got.value));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(check("group gtd equals the columnwise maximum of the flag values", || {
        for &t in &types {
            let group = gtd_group_with(reference, t).map_err(|e| e.to_string())?;
            let max = (1..=t.rank())
                .map(|i| gtd_flag_with(reference, t, i).map(|r| r.value))
                .collect::<Result<Vec<u64>, _>>()
                .map_err(|e| e.to_string())?
                .into_iter()
                .max()
                .unwrap();
            if group.value != max || group.value != expected::table1(t) {
                return Err(format!("{t}: group {} max {max}", group.value));
            }
        }
        Ok(())
    }));

    checks.push(check("triple-product set is exactly the nodes with flag gtd >= 3", || {
        for &t in &types {
            let got: Vec<usize> = (1..=t.rank())
                .filter(|&i| {
                    gtd_flag_with(reference, t, i)
                        .map(|r| r.value >= 3)
                        .unwrap_or(false)
                })
                .collect();
            if got != expected::table3_nodes(t) {
                return Err(format!("{t}: {:?}", got));
            }
        }
        Ok(())
    }));

    checks.push(check("Levi open-orbit set is exactly the nodes with Levi gtd >= 1", || {
        for &t in &types {
            let got: Vec<usize> = (1..=t.rank())
                .filter(|&i| {
                    gtd_levi_with(reference, t, i)
                        .map(|r| r.value >= 1)
                        .unwrap_or(false)
                })
                .collect();
            if got != expected::table4_nodes(t) {
                return Err(format!("{t}: {:?}", got));
            }
        }
        Ok(())
    }));

    checks.push(check("conjugacy relation: flag = 2 + levi on fixed nodes, flag >= 1 + levi always", || {
        for &t in &types {
            for i in 1..=t.rank() {
                let flag = gtd_flag_with(reference, t, i).map_err(|e| e.to_string())?.value;
                let levi = gtd_levi_with(reference, t, i).map_err(|e| e.to_string())?.value;
                if epsilon(t, i).map_err(|e| e.to_string())? == i && flag != 2 + levi {
                    return Err(format!("{t} node {i}: flag {flag} != 2 + levi {levi}"));
                }
                if flag < 1 + levi {
                    return Err(format!("{t} node {i}: flag {flag} < 1 + levi {levi}"));
                }
            }
        }
        Ok(())
    }));

    checks.push(check("gtd values are symmetric under the diagram involution", || {
        for &t in &types {
            for i in 1..=t.rank() {
                let j = epsilon(t, i).map_err(|e| e.to_string())?;
                let f1 = gtd_flag_with(reference, t, i).map_err(|e| e.to_string())?.value;
                let f2 = gtd_flag_with(reference, t, j).map_err(|e| e.to_string())?.value;
                let l1 = gtd_levi_with(reference, t, i).map_err(|e| e.to_string())?.value;
                let l2 = gtd_levi_with(reference, t, j).map_err(|e| e.to_string())?.value;
                if f1 != f2 || l1 != l2 {
                    return Err(format!("{t}: nodes {i} and {j}"));
                }
            }
        }
        Ok(())
    }));

    checks.push(check("dimension bound: gtd * dim U stays within dim G and dim L", || {
        for &t in &types {
            for i in 1..=t.rank() {
                let ls = levi_structure(t, i).map_err(|e| e.to_string())?;
                let flag = gtd_flag_with(reference, t, i).map_err(|e| e.to_string())?.value;
                let levi = gtd_levi_with(reference, t, i).map_err(|e| e.to_string())?.value;
                if flag * ls.dim_u > t.dim_group() {
                    return Err(format!("{t} node {i}: flag bound"));
                }
                if levi * ls.dim_u > ls.dim_l {
                    return Err(format!("{t} node {i}: Levi bound"));
                }
            }
        }
        Ok(())
    }));

    checks.push(check("abelian radical forces an open Levi orbit; dim L < dim U forces none", || {
        for &t in &types {
            for i in 1..=t.rank() {
                let levi = gtd_levi_with(reference, t, i).map_err(|e| e.to_string())?.value;
                if is_abelian_radical(t, i).map_err(|e| e.to_string())? && levi < 1 {
                    return Err(format!("{t} node {i}: abelian radical but levi = 0"));
                }
                let ls = levi_structure(t, i).map_err(|e| e.to_string())?;
                if ls.dim_l < ls.dim_u && levi != 0 {
                    return Err(format!("{t} node {i}: dim L < dim U but levi = {levi}"));
                }
            }
        }
        Ok(())
    }));

    checks.push(check("every flag gtd is at least 2 and at least the Borel value", || {
        for &t in &types {
            let floor = borel_gtd(t).max(2);
            for i in 1..=t.rank() {
                let flag = gtd_flag_with(reference, t, i).map_err(|e| e.to_string())?.value;
                if flag < floor {
                    return Err(format!("{t} node {i}: {flag} < {floor}"));
                }
            }
        }
        Ok(())
    }));

    checks.push(check("spinor square decomposes with exact dimension bookkeeping", || {
        let d4 = LieType::new(Series::D, 4).map_err(|e| e.to_string())?;
        let s = Weight::fundamental(4, 4, 1).map_err(|e| e.to_string())?;
        let sum = tensor_decompose(d4, &s, &s, DEFAULT_WORK_BUDGET).map_err(|e| e.to_string())?;
        let expected_terms: Vec<Weight> = vec![
            Weight::new(vec![0, 0, 0, 2]),
            Weight::new(vec![0, 1, 0, 0]),
            Weight::zero(4),
        ];
        for w in &expected_terms {
            if sum.multiplicity(w) != 1 {
                return Err(format!("missing summand {w}"));
            }
        }
        if sum.total_dim(d4).map_err(|e| e.to_string())? != BigUint::from(64u32) {
            return Err("dimension bookkeeping failed".into());
        }
        Ok(())
    }));

    checks.push(check("two-factor invariants are the duality indicator", || {
        for &t in &all_types {
            if t.rank() > 3 {
                continue;
            }
            for i in 1..=t.rank() {
                for j in 1..=t.rank() {
                    let x = Weight::fundamental(t.rank(), i, 1).map_err(|e| e.to_string())?;
                    let y = Weight::fundamental(t.rank(), j, 1).map_err(|e| e.to_string())?;
                    let inv = invariant_dim(t, &[x.clone(), y.clone()], DEFAULT_WORK_BUDGET)
                        .map_err(|e| e.to_string())?;
                    let want = u64::from(dual_weight(t, &x) == y);
                    if inv != want {
                        return Err(format!("{t}: factors {i}, {j}"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(check("closed-form 27-dimensional rule agrees with the general decomposition", || {
        let e6 = LieType::new(Series::E, 6).map_err(|e| e.to_string())?;
        for r in 0..=1u64 {
            for s in 0..=1u64 {
                let closed = tensor_e6_vector(r, s);
                let hw_r = Weight::fundamental(6, 1, r as i64).map_err(|e| e.to_string())?;
                let hw_s = Weight::fundamental(6, 1, s as i64).map_err(|e| e.to_string())?;
                let klimyk = tensor_decompose(e6, &hw_r, &hw_s, DEFAULT_WORK_BUDGET)
                    .map_err(|e| e.to_string())?;
                if closed != klimyk {
                    return Err(format!("r={r} s={s}"));
                }
            }
        }
        Ok(())
    }));

    checks.push(check("system counter equals the four-factor invariant dimension", || {
        let e6 = LieType::new(Series::E, 6).map_err(|e| e.to_string())?;
        for (n1, n2, n3, n4) in [(0, 0, 0, 0), (1, 1, 1, 1), (2, 2, 1, 1), (2, 1, 1, 2), (1, 2, 0, 1)] {
            let hws: Vec<Weight> = [n1, n2, n3, n4]
                .iter()
                .map(|&n| Weight::fundamental(6, 1, n as i64).unwrap())
                .collect();
            let inv = invariant_dim(e6, &hws, DEFAULT_WORK_BUDGET).map_err(|e| e.to_string())?;
            if inv != count_system_solutions(n1, n2, n3, n4) {
                return Err(format!("({n1},{n2},{n3},{n4})"));
            }
        }
        Ok(())
    }));

    checks.push(check("rank oracle agrees with the decider on small uniform vectors", || {
        for l in 1..=3u64 {
            for i in 1..=l {
                for d in 2..=3usize {
                    let alpha = DimVector::uniform(d, (l + 1) as i64, i as i64)
                        .map_err(|e| e.to_string())?;
                    let rank = orbit_dimension_oracle(&alpha, 1, 3).map_err(|e| e.to_string())?;
                    let open = rank == representation_space_dim(&alpha);
                    let decided =
                        has_open_orbit_uniform(d as u64, l + 1, i).map_err(|e| e.to_string())?;
                    if open != decided {
                        return Err(format!("l={l} i={i} d={d}"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(check("conjugating a weight into the dominant chamber is idempotent", || {
        for &t in &all_types {
            if t.rank() > 4 {
                continue;
            }
            for i in 1..=t.rank() {
                let mut coeffs = vec![1i64; t.rank()];
                coeffs[i - 1] = -3;
                let w = Weight::new(coeffs);
                let dom = dominant_conjugate(t, &w);
                if !dom.is_dominant() || dominant_conjugate(t, &dom) != dom {
                    return Err(format!("{t} seed node {i}"));
                }
            }
        }
        Ok(())
    }));

    checks.push(check("tensor decompositions are commutative", || {
        let g2 = LieType::new(Series::G, 2).map_err(|e| e.to_string())?;
        let x = Weight::new(vec![1, 0]);
        let y = Weight::new(vec![0, 1]);
        let a = tensor_decompose(g2, &x, &y, DEFAULT_WORK_BUDGET).map_err(|e| e.to_string())?;
        let b = tensor_decompose(g2, &y, &x, DEFAULT_WORK_BUDGET).map_err(|e| e.to_string())?;
        if a != b {
            return Err("G2 fundamental product".into());
        }
        Ok(())
    }));

    checks
}

/// True when every check passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.ok)
}
