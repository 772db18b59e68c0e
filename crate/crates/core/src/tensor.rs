//! Tensor-product multiplicities: Klimyk decomposition over any simple
//! type, the closed-form rule for powers of the 27-dimensional module,
//! invariant dimensions of iterated products, and the integer-system
//! counter equivalent to the four-factor invariant dimension.
//!
//! Decompositions walk every weight of one factor, so the entry points are
//! budgeted: exceeding the work budget is reported as an error, never
//! silently truncated.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result, WorkCounter};
use crate::rootsys::{
    cartan_matrix, dominant_conjugate_signed, dual_weight, freudenthal_with_counter, weyl_dim,
    weyl_orbit, CartanMatrix, LieType, Series, Weight,
};

/// Default work budget: large enough for every bundled table and test,
/// small enough to keep accidental blowups from running away. The long
/// witness computations pass an explicit larger budget.
pub const DEFAULT_WORK_BUDGET: u64 = 2_000_000;

/// Budget used by the opt-in witness entry points.
pub const WITNESS_WORK_BUDGET: u64 = 200_000_000;

/// A finite multiset of dominant weights with positive multiplicities: a
/// decomposition into simple modules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleSum {
    terms: BTreeMap<Weight, u64>,
}

impl ModuleSum {
    pub fn trivial(rank: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Weight::zero(rank), 1);
        ModuleSum { terms }
    }

    pub fn from_terms(terms: BTreeMap<Weight, u64>) -> Self {
        ModuleSum { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Weight, u64> {
        &self.terms
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Number of simple constituents counted with multiplicity.
    pub fn constituents(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Total dimension, `sum mult * dim`.
    pub fn total_dim(&self, t: LieType) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for (hw, mult) in &self.terms {
            total += weyl_dim(t, hw)? * BigUint::from(*mult);
        }
        Ok(total)
    }
}

/// Shared state for a batch of tensor operations: one budget and caches
/// for weight systems and pair decompositions.
struct TensorContext {
    t: LieType,
    cartan: CartanMatrix,
    work: WorkCounter,
    // full weight system of E(hw): (fundamental coordinates, multiplicity)
    weights: HashMap<Weight, Vec<(Vec<i64>, u64)>>,
    dims: HashMap<Weight, BigUint>,
    pairs: HashMap<(Weight, Weight), ModuleSum>,
}

impl TensorContext {
    fn new(t: LieType, budget: u64) -> Self {
        TensorContext {
            t,
            cartan: cartan_matrix(t),
            work: WorkCounter::with_limit(budget),
            weights: HashMap::new(),
            dims: HashMap::new(),
            pairs: HashMap::new(),
        }
    }

    fn check_dominant(&self, hw: &Weight) -> Result<()> {
        if hw.coeffs().len() != self.t.rank() {
            return Err(Error::LengthMismatch {
                got: hw.coeffs().len(),
                expected: self.t.rank(),
            });
        }
        if !hw.is_dominant() {
            return Err(Error::NonDominant(hw.coeffs().to_vec()));
        }
        Ok(())
    }

    fn dim(&mut self, hw: &Weight) -> Result<BigUint> {
        if let Some(d) = self.dims.get(hw) {
            return Ok(d.clone());
        }
        let d = weyl_dim(self.t, hw)?;
        self.dims.insert(hw.clone(), d.clone());
        Ok(d)
    }

    /// Every weight of `E(hw)` with its multiplicity, Weyl orbits expanded.
    fn full_weights(&mut self, hw: &Weight) -> Result<Vec<(Vec<i64>, u64)>> {
        if let Some(w) = self.weights.get(hw) {
            return Ok(w.clone());
        }
        let dominant = freudenthal_with_counter(self.t, hw, &mut self.work)?;
        let mut flat = Vec::new();
        for (mu, mult) in &dominant {
            for nu in weyl_orbit(self.t, mu) {
                self.work.tick(1)?;
                flat.push((nu.coeffs().to_vec(), *mult));
            }
        }
        self.weights.insert(hw.clone(), flat.clone());
        Ok(flat)
    }

    /// Klimyk decomposition of `E(x) (x) E(y)`: walk the weights `nu` of
    /// the smaller factor, conjugate `big + nu + rho` into the open
    /// chamber with its sign, and accumulate. Wall hits contribute zero.
    fn tensor_pair(&mut self, x: &Weight, y: &Weight) -> Result<ModuleSum> {
        self.check_dominant(x)?;
        self.check_dominant(y)?;
        let key = if x <= y {
            (x.clone(), y.clone())
        } else {
            (y.clone(), x.clone())
        };
        if let Some(cached) = self.pairs.get(&key) {
            return Ok(cached.clone());
        }
        let (big, small) = if self.dim(x)? >= self.dim(y)? {
            (x.clone(), y.clone())
        } else {
            (y.clone(), x.clone())
        };
        let rank = self.t.rank();
        let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
        for (nu, mult) in self.full_weights(&small)? {
            self.work.tick(1)?;
            let shifted: Vec<i64> = (0..rank)
                .map(|j| big.coeffs()[j] + nu[j] + 1)
                .collect();
            if let Some((dom, sign)) = dominant_conjugate_signed(&self.cartan, shifted) {
                let target: Vec<i64> = dom.iter().map(|a| a - 1).collect();
                *acc.entry(Weight::new(target)).or_insert(0) += sign * mult as i64;
            }
        }
        let mut terms = BTreeMap::new();
        for (w, m) in acc {
            debug_assert!(m >= 0, "negative multiplicity survived cancellation");
            if m > 0 {
                terms.insert(w, m as u64);
            }
        }
        let sum = ModuleSum { terms };
        self.pairs.insert(key, sum.clone());
        Ok(sum)
    }

    /// Tensor of an accumulated sum with one more simple module.
    fn tensor_sum(&mut self, sum: &ModuleSum, hw: &Weight) -> Result<ModuleSum> {
        let mut terms: BTreeMap<Weight, u64> = BTreeMap::new();
        for (nu, outer) in sum.terms() {
            let part = self.tensor_pair(nu, hw)?;
            for (w, inner) in part.terms() {
                *terms.entry(w.clone()).or_insert(0) += outer * inner;
            }
        }
        Ok(ModuleSum { terms })
    }
}

/// Full decomposition of `E(hw1) (x) E(hw2)` into simple modules.
pub fn tensor_decompose(t: LieType, hw1: &Weight, hw2: &Weight, budget: u64) -> Result<ModuleSum> {
    let mut ctx = TensorContext::new(t, budget);
    ctx.tensor_pair(hw1, hw2)
}

/// Dimension of the invariant subspace of `E(hw_1) (x) ... (x) E(hw_d)`:
/// fold the first `d - 1` factors, then read off the multiplicity of the
/// dual of the last. For two factors this is exactly the indicator of
/// `hw_1* = hw_2`.
pub fn invariant_dim(t: LieType, hws: &[Weight], budget: u64) -> Result<u64> {
    if hws.is_empty() {
        return Err(Error::NonPositive {
            what: "factor count",
        });
    }
    let mut ctx = TensorContext::new(t, budget);
    for hw in hws {
        ctx.check_dominant(hw)?;
    }
    let mut sum = ModuleSum::trivial(t.rank());
    for hw in &hws[..hws.len() - 1] {
        sum = ctx.tensor_sum(&sum, hw)?;
    }
    let target = dual_weight(t, &hws[hws.len() - 1]);
    Ok(sum.multiplicity(&target))
}

/// Closed-form decomposition of `E(r w_1) (x) E(s w_1)` for the
/// 27-dimensional module of `E6`: sum over fourtuples `a` of nonnegative
/// integers with `a_1 + a_3 + a_4 = r` and `a_2 + a_3 + a_4 = s` of
/// `E((a_1 + a_2) w_1 + a_3 w_3 + a_4 w_6)`.
pub fn tensor_e6_vector(r: u64, s: u64) -> ModuleSum {
    let mut terms: BTreeMap<Weight, u64> = BTreeMap::new();
    for a3 in 0..=r.min(s) {
        for a4 in 0..=(r.min(s) - a3) {
            let a1 = r - a3 - a4;
            let a2 = s - a3 - a4;
            let mut coeffs = vec![0i64; 6];
            coeffs[0] = (a1 + a2) as i64;
            coeffs[2] = a3 as i64;
            coeffs[5] = a4 as i64;
            *terms.entry(Weight::new(coeffs)).or_insert(0) += 1;
        }
    }
    ModuleSum { terms }
}

/// Number of solutions in nonnegative integers of the eight-equation
/// system tying two applications of the closed-form rule to the invariant
/// dimension of a four-factor product of `E6` vector powers:
///
/// ```text
/// a4 = b1 + b2,  a3 = 0,  b3 = 0,  a1 + a2 = b4,
/// a1 + a3 + a4 = n1,  a2 + a3 + a4 = n2,
/// b1 + b3 + b4 = n3,  b2 + b3 + b4 = n4.
/// ```
///
/// The system is nondegenerate, so the count is 0 or 1, and it equals
/// `invariant_dim(E6, [n1 w1, n2 w1, n3 w1, n4 w1])`.
pub fn count_system_solutions(n1: u64, n2: u64, n3: u64, n4: u64) -> u64 {
    let mut count = 0;
    for a4 in 0..=n1.min(n2) {
        let a1 = n1 - a4;
        let a2 = n2 - a4;
        let b4 = a1 + a2;
        let (Some(b1), Some(b2)) = (n3.checked_sub(b4), n4.checked_sub(b4)) else {
            continue;
        };
        if b1 + b2 == a4 {
            count += 1;
        }
    }
    debug_assert!(count <= 1);
    count
}

/// True when every `d`-fold product of the modules `E(n_j w_i*)` with
/// `0 <= n_j <= bound` contains the trivial module at most once.
pub fn multiplicity_one_scan(
    t: LieType,
    node: usize,
    d: u64,
    bound: u64,
    budget: u64,
) -> Result<bool> {
    if d < 1 {
        return Err(Error::NonPositive {
            what: "factor count",
        });
    }
    let fundamental = Weight::fundamental(t.rank(), node, 1)?;
    let dual_fundamental = dual_weight(t, &fundamental);
    let mut ctx = TensorContext::new(t, budget);

    fn rec(
        ctx: &mut TensorContext,
        prefix: &ModuleSum,
        remaining: u64,
        bound: u64,
        dual_fundamental: &Weight,
        fundamental: &Weight,
    ) -> Result<bool> {
        if remaining == 1 {
            for n in 0..=bound {
                let target = Weight::new(
                    fundamental
                        .coeffs()
                        .iter()
                        .map(|&c| c * n as i64)
                        .collect::<Vec<i64>>(),
                );
                if prefix.multiplicity(&target) > 1 {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        for n in 0..=bound {
            let factor = Weight::new(
                dual_fundamental
                    .coeffs()
                    .iter()
                    .map(|&c| c * n as i64)
                    .collect::<Vec<i64>>(),
            );
            let next = ctx.tensor_sum(prefix, &factor)?;
            if !rec(ctx, &next, remaining - 1, bound, dual_fundamental, fundamental)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    let prefix = ModuleSum::trivial(t.rank());
    rec(
        &mut ctx,
        &prefix,
        d,
        bound,
        &dual_fundamental,
        &fundamental,
    )
}

/// Multiplicity of `E(2 w_5)` in `E(2 w_3) (x) E(2 w_3)` over `E6`.
/// Long-running relative to the rest of the crate; meant to be invoked
/// explicitly with a generous budget.
pub fn e6_klimyk_witness(budget: u64) -> Result<u64> {
    let e6 = LieType::new(Series::E, 6)?;
    let hw = Weight::fundamental(6, 3, 2)?;
    let decomposition = tensor_decompose(e6, &hw, &hw, budget)?;
    let target = Weight::fundamental(6, 5, 2)?;
    Ok(decomposition.multiplicity(&target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn t(series: Series, rank: usize) -> LieType {
        LieType::new(series, rank).unwrap()
    }

    fn w(coeffs: &[i64]) -> Weight {
        Weight::new(coeffs.to_vec())
    }

    #[test]
    fn clebsch_gordan_ladder() {
        let a1 = t(Series::A, 1);
        for m in 0..=4i64 {
            for n in 0..=4i64 {
                let sum = tensor_decompose(a1, &w(&[m]), &w(&[n]), DEFAULT_WORK_BUDGET).unwrap();
                let expected: Vec<i64> = ((m - n).abs()..=m + n).step_by(2).collect();
                assert_eq!(sum.terms().len(), expected.len());
                for k in expected {
                    assert_eq!(sum.multiplicity(&w(&[k])), 1, "m={m} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn spinor_square_d4() {
        let d4 = t(Series::D, 4);
        let s = Weight::fundamental(4, 4, 1).unwrap();
        let sum = tensor_decompose(d4, &s, &s, DEFAULT_WORK_BUDGET).unwrap();
        assert_eq!(sum.terms().len(), 3);
        assert_eq!(sum.multiplicity(&w(&[0, 0, 0, 2])), 1);
        assert_eq!(sum.multiplicity(&w(&[0, 1, 0, 0])), 1);
        assert_eq!(sum.multiplicity(&Weight::zero(4)), 1);
        assert_eq!(sum.total_dim(d4).unwrap(), BigUint::from(64u32));
    }

    #[test]
    fn dimension_bookkeeping() {
        for (ty, x, y) in [
            (t(Series::A, 2), w(&[1, 1]), w(&[2, 0])),
            (t(Series::B, 2), w(&[1, 0]), w(&[0, 2])),
            (t(Series::G, 2), w(&[1, 0]), w(&[0, 1])),
            (t(Series::A, 1), w(&[3]), w(&[4])),
        ] {
            let sum = tensor_decompose(ty, &x, &y, DEFAULT_WORK_BUDGET).unwrap();
            let expected = weyl_dim(ty, &x).unwrap() * weyl_dim(ty, &y).unwrap();
            assert_eq!(sum.total_dim(ty).unwrap(), expected, "{ty} {x} {y}");
        }
    }

    #[test]
    fn commutativity() {
        let g2 = t(Series::G, 2);
        let x = w(&[1, 0]);
        let y = w(&[0, 1]);
        let a = tensor_decompose(g2, &x, &y, DEFAULT_WORK_BUDGET).unwrap();
        let b = tensor_decompose(g2, &y, &x, DEFAULT_WORK_BUDGET).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn e6_vector_rule_small() {
        let sum = tensor_e6_vector(1, 1);
        assert_eq!(sum.terms().len(), 3);
        assert_eq!(sum.multiplicity(&w(&[2, 0, 0, 0, 0, 0])), 1);
        assert_eq!(sum.multiplicity(&w(&[0, 0, 1, 0, 0, 0])), 1);
        assert_eq!(sum.multiplicity(&w(&[0, 0, 0, 0, 0, 1])), 1);
        let trivial = tensor_e6_vector(0, 0);
        assert_eq!(trivial.terms().len(), 1);
        assert_eq!(trivial.multiplicity(&Weight::zero(6)), 1);
    }

    #[test]
    fn e6_vector_rule_matches_klimyk() {
        let e6 = t(Series::E, 6);
        for r in 0..=2u64 {
            for s in 0..=2u64 {
                let closed = tensor_e6_vector(r, s);
                let klimyk = tensor_decompose(
                    e6,
                    &w(&[r as i64, 0, 0, 0, 0, 0]),
                    &w(&[s as i64, 0, 0, 0, 0, 0]),
                    DEFAULT_WORK_BUDGET,
                )
                .unwrap();
                assert_eq!(closed, klimyk, "r={r} s={s}");
            }
        }
    }

    #[test]
    fn invariant_dim_duality_indicator() {
        for ty in [t(Series::A, 3), t(Series::D, 4), t(Series::B, 2)] {
            let rank = ty.rank();
            let mut weights = Vec::new();
            for node in 1..=rank {
                weights.push(Weight::fundamental(rank, node, 1).unwrap());
            }
            weights.push(Weight::zero(rank));
            for x in &weights {
                for y in &weights {
                    let expected = u64::from(&dual_weight(ty, x) == y);
                    assert_eq!(
                        invariant_dim(ty, &[x.clone(), y.clone()], DEFAULT_WORK_BUDGET).unwrap(),
                        expected,
                        "{ty} {x} {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn invariant_dim_e6_examples() {
        let e6 = t(Series::E, 6);
        let v = Weight::fundamental(6, 1, 1).unwrap();
        assert_eq!(
            invariant_dim(e6, &[v.clone(), v.clone(), v.clone()], DEFAULT_WORK_BUDGET).unwrap(),
            1
        );
        assert_eq!(
            invariant_dim(
                e6,
                &[v.clone(), v.clone(), v.clone(), v.clone()],
                DEFAULT_WORK_BUDGET
            )
            .unwrap(),
            0
        );
    }

    #[test]
    fn system_counter_examples() {
        assert_eq!(count_system_solutions(1, 1, 1, 1), 0);
        assert_eq!(count_system_solutions(2, 2, 1, 1), 1);
        assert_eq!(count_system_solutions(0, 0, 0, 0), 1);
        // equals the invariant dimension for small inputs
        let e6 = t(Series::E, 6);
        for n1 in 0..=3i64 {
            for n2 in 0..=3i64 {
                for n3 in 0..=3i64 {
                    for n4 in 0..=3i64 {
                        let hws = vec![
                            w(&[n1, 0, 0, 0, 0, 0]),
                            w(&[n2, 0, 0, 0, 0, 0]),
                            w(&[n3, 0, 0, 0, 0, 0]),
                            w(&[n4, 0, 0, 0, 0, 0]),
                        ];
                        assert_eq!(
                            invariant_dim(e6, &hws, DEFAULT_WORK_BUDGET).unwrap(),
                            count_system_solutions(n1 as u64, n2 as u64, n3 as u64, n4 as u64),
                            "{n1} {n2} {n3} {n4}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn invariant_dim_order_independent() {
        let e6 = t(Series::E, 6);
        let two = w(&[2, 0, 0, 0, 0, 0]);
        let one = w(&[1, 0, 0, 0, 0, 0]);
        let orders = [
            vec![two.clone(), two.clone(), one.clone(), one.clone()],
            vec![one.clone(), two.clone(), two.clone(), one.clone()],
            vec![one.clone(), one.clone(), two.clone(), two.clone()],
        ];
        let values: Vec<u64> = orders
            .iter()
            .map(|hws| invariant_dim(e6, hws, DEFAULT_WORK_BUDGET).unwrap())
            .collect();
        assert!(values.windows(2).all(|p| p[0] == p[1]));
        assert_eq!(values[0], 1);
    }

    #[test]
    fn scan_examples() {
        let a2 = t(Series::A, 2);
        assert!(multiplicity_one_scan(a2, 1, 4, 2, DEFAULT_WORK_BUDGET).unwrap());
        assert!(!multiplicity_one_scan(a2, 1, 5, 2, DEFAULT_WORK_BUDGET).unwrap());
        let d5 = t(Series::D, 5);
        assert!(!multiplicity_one_scan(d5, 5, 4, 1, DEFAULT_WORK_BUDGET).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let e6 = t(Series::E, 6);
        let v = Weight::fundamental(6, 1, 1).unwrap();
        let err = tensor_decompose(e6, &v, &v, 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn weyl_dim_e6_sanity() {
        let e6 = t(Series::E, 6);
        assert_eq!(
            weyl_dim(e6, &Weight::fundamental(6, 3, 1).unwrap()).unwrap(),
            BigUint::from(351u32)
        );
        assert!(weyl_dim(e6, &Weight::fundamental(6, 3, 2).unwrap()).unwrap() > BigUint::one());
    }
}
