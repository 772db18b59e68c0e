//! Root-system kernel: Cartan data in Bourbaki numbering, positive roots,
//! basis changes between simple-root and fundamental-weight coordinates,
//! the diagram involution, Weyl dimensions and Freudenthal multiplicities.
//!
//! All arithmetic is exact; dimensions that can outgrow machine integers
//! are returned as `BigUint`.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, WorkCounter};

/// The classification series of a simple type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

/// A simple type label: series plus rank, validated on construction.
///
/// `B2`/`C2` and `D3`/`A3` are admitted as distinct labels with isomorphic
/// root data; table-range restrictions are enforced by the `gtd` module,
/// not here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LieType {
    series: Series,
    rank: usize,
}

impl LieType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(LieType { series, rank })
        } else {
            Err(Error::InvalidRank {
                series: series.letter(),
                rank,
            })
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the simple group: rank + 2 · (number of positive roots).
    pub fn dim_group(&self) -> u64 {
        self.rank as u64 + 2 * self.num_positive_roots()
    }

    /// Number of positive roots, by the classical count per series.
    pub fn num_positive_roots(&self) -> u64 {
        let l = self.rank as u64;
        match self.series {
            Series::A => l * (l + 1) / 2,
            Series::B | Series::C => l * l,
            Series::D => l * (l - 1),
            Series::E => match self.rank {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Series::F => 24,
            Series::G => 6,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let l = self.rank as u32;
        let fact = |n: u32| -> u128 { (1..=n as u128).product::<u128>().max(1) };
        match self.series {
            Series::A => fact(l + 1),
            Series::B | Series::C => (1u128 << l) * fact(l),
            Series::D => (1u128 << (l - 1)) * fact(l),
            Series::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Series::F => 1_152,
            Series::G => 12,
        }
    }

    /// Every valid simple type with rank at most `max_rank`, in label order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<LieType> {
        let mut out = Vec::new();
        for series in [
            Series::A,
            Series::B,
            Series::C,
            Series::D,
            Series::E,
            Series::F,
            Series::G,
        ] {
            for rank in 1..=max_rank {
                if let Ok(t) = LieType::new(series, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    /// Parses labels like `A5`, `E6`, `g2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let letter = chars.next().ok_or(Error::InvalidRank {
            series: '?',
            rank: 0,
        })?;
        let series = match letter.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            other => {
                return Err(Error::InvalidRank {
                    series: other,
                    rank: 0,
                })
            }
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidRank {
            series: series.letter(),
            rank: 0,
        })?;
        LieType::new(series, rank)
    }
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Root {
    coeffs: Vec<i64>,
}

impl Root {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Root { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Sum of the simple-root coefficients.
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn negated(&self) -> Root {
        Root {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight {
    coeffs: Vec<i64>,
}

impl Weight {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Weight { coeffs }
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            coeffs: vec![0; rank],
        }
    }

    /// The fundamental weight at 1-based `node`, scaled by `multiple`.
    pub fn fundamental(rank: usize, node: usize, multiple: i64) -> Result<Self> {
        if node < 1 || node > rank {
            return Err(Error::InvalidNode { node, rank });
        }
        let mut coeffs = vec![0; rank];
        coeffs[node - 1] = multiple;
        Ok(Weight { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_dominant(&self) -> bool {
        self.coeffs.iter().all(|&a| a >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Integer Cartan matrix in Bourbaki numbering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// 0-based access.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }
}

/// Cartan matrix of a simple type, Bourbaki numbering.
pub fn cartan_matrix(t: LieType) -> CartanMatrix {
    let r = t.rank();
    let mut m = vec![vec![0i64; r]; r];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    let bond = |m: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        m[i][j] = -1;
        m[j][i] = -1;
    };
    match t.series() {
        Series::A => {
            for i in 0..r - 1 {
                bond(&mut m, i, i + 1);
            }
        }
        Series::B => {
            for i in 0..r - 1 {
                bond(&mut m, i, i + 1);
            }
            m[r - 2][r - 1] = -2;
        }
        Series::C => {
            for i in 0..r - 1 {
                bond(&mut m, i, i + 1);
            }
            m[r - 1][r - 2] = -2;
        }
        Series::D => {
            for i in 0..r.saturating_sub(3) {
                bond(&mut m, i, i + 1);
            }
            bond(&mut m, r - 3, r - 2);
            bond(&mut m, r - 3, r - 1);
        }
        Series::E => {
            bond(&mut m, 0, 2);
            bond(&mut m, 1, 3);
            bond(&mut m, 2, 3);
            for i in 3..r - 1 {
                bond(&mut m, i, i + 1);
            }
        }
        Series::F => {
            bond(&mut m, 0, 1);
            bond(&mut m, 1, 2);
            bond(&mut m, 2, 3);
            m[1][2] = -2;
        }
        Series::G => {
            m[0][1] = -1;
            m[1][0] = -3;
        }
    }
    CartanMatrix { entries: m }
}

/// Half the squared root lengths, as minimal positive integers: the scale
/// factors `d_i` with `d_j C_ij = d_i C_ji`, so that
/// `(w, beta) = sum_j c_j d_j a_j` for a weight `w = (a_j)` and root
/// `beta = sum c_j alpha_j`.
pub(crate) fn scale_factors(t: LieType) -> Vec<i64> {
    let r = t.rank();
    match t.series() {
        Series::A | Series::D | Series::E => vec![1; r],
        Series::B => {
            let mut d = vec![2; r];
            d[r - 1] = 1;
            d
        }
        Series::C => {
            let mut d = vec![1; r];
            d[r - 1] = 2;
            d
        }
        Series::F => vec![2, 2, 1, 1],
        Series::G => vec![1, 3],
    }
}

/// All positive roots in simple-root coordinates, built by closure from the
/// simple roots with integral root strings. Order is deterministic: by
/// height, then lexicographically on the coefficients.
pub fn positive_roots(t: LieType) -> Vec<Root> {
    let r = t.rank();
    let c = cartan_matrix(t);
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = Vec::new();
    for i in 0..r {
        let mut v = vec![0i64; r];
        v[i] = 1;
        known.insert(v.clone());
        layer.push(v);
    }
    let mut all: Vec<Vec<i64>> = layer.clone();
    while !layer.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            for i in 0..r {
                // <beta, alpha_i^vee> = sum_j beta_j C_ji
                let pairing: i64 = (0..r).map(|j| beta[j] * c.entry(j, i)).sum();
                // p = length of the alpha_i-string below beta
                let mut p = 0i64;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if known.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing >= 1 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up.clone());
                        all.push(up);
                    }
                }
            }
        }
        layer = next;
    }
    all.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    all.into_iter().map(Root::new).collect()
}

/// Fundamental-weight coordinates of a vector given in simple-root
/// coordinates: the c-weighted sum of the rows of the Cartan matrix.
pub fn root_to_weight(t: LieType, root: &Root) -> Weight {
    let r = t.rank();
    let c = cartan_matrix(t);
    let a: Vec<i64> = (0..r)
        .map(|j| (0..r).map(|i| root.coeffs()[i] * c.entry(i, j)).sum())
        .collect();
    Weight::new(a)
}

/// The diagram involution induced by the longest Weyl element (1-based nodes):
/// reversal for `A_l`, the leaf swap for odd `D_l`, the arm swap for `E6`,
/// identity otherwise.
pub fn epsilon(t: LieType, node: usize) -> Result<usize> {
    let l = t.rank();
    if node < 1 || node > l {
        return Err(Error::InvalidNode { node, rank: l });
    }
    Ok(match t.series() {
        Series::A => l + 1 - node,
        Series::D if l % 2 == 1 => {
            if node == l - 1 {
                l
            } else if node == l {
                l - 1
            } else {
                node
            }
        }
        Series::E if l == 6 => match node {
            1 => 6,
            6 => 1,
            3 => 5,
            5 => 3,
            other => other,
        },
        _ => node,
    })
}

/// Highest weight of the dual module: coordinates permuted by the diagram
/// involution.
pub fn dual_weight(t: LieType, w: &Weight) -> Weight {
    let r = t.rank();
    let mut out = vec![0i64; r];
    for i in 1..=r {
        let image = epsilon(t, i).expect("node in range");
        out[image - 1] = w.coeffs()[i - 1];
    }
    Weight::new(out)
}

/// Pairing `(w, beta)` of a weight with a root, in the normalization fixed
/// by `scale_factors`. Exact and integral.
fn pair_weight_root(d: &[i64], w: &[i64], root_coeffs: &[i64]) -> i64 {
    root_coeffs
        .iter()
        .zip(w)
        .zip(d)
        .map(|((c, a), di)| c * di * a)
        .sum()
}

/// Dimension of the simple module with dominant highest weight `hw`, by the
/// Weyl dimension formula, in exact arbitrary-precision arithmetic.
pub fn weyl_dim(t: LieType, hw: &Weight) -> Result<BigUint> {
    check_weight(t, hw)?;
    if !hw.is_dominant() {
        return Err(Error::NonDominant(hw.coeffs().to_vec()));
    }
    let d = scale_factors(t);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let shifted: Vec<i64> = hw.coeffs().iter().map(|a| a + 1).collect();
    let ones = vec![1i64; t.rank()];
    for root in positive_roots(t) {
        let n = pair_weight_root(&d, &shifted, root.coeffs());
        let m = pair_weight_root(&d, &ones, root.coeffs());
        num *= BigUint::from(n as u64);
        den *= BigUint::from(m as u64);
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

fn check_weight(t: LieType, w: &Weight) -> Result<()> {
    if w.coeffs().len() != t.rank() {
        return Err(Error::LengthMismatch {
            got: w.coeffs().len(),
            expected: t.rank(),
        });
    }
    Ok(())
}

/// Applies the simple reflection at 0-based index `i` to fundamental-weight
/// coordinates in place.
fn reflect_simple(c: &CartanMatrix, a: &mut [i64], i: usize) {
    let ai = a[i];
    for (j, aj) in a.iter_mut().enumerate() {
        *aj -= ai * c.entry(i, j);
    }
}

/// The dominant representative of the Weyl orbit of `w`.
pub fn dominant_conjugate(t: LieType, w: &Weight) -> Weight {
    let c = cartan_matrix(t);
    Weight::new(dominant_conjugate_in(&c, w.coeffs()))
}

/// Conjugates `a` (fundamental coordinates) into the dominant chamber,
/// tracking the sign of the Weyl element used. Returns `None` when the
/// vector lies on a chamber wall.
pub(crate) fn dominant_conjugate_signed(c: &CartanMatrix, mut a: Vec<i64>) -> Option<(Vec<i64>, i64)> {
    let mut sign = 1i64;
    loop {
        match a.iter().position(|&x| x < 0) {
            Some(i) => {
                reflect_simple(c, &mut a, i);
                sign = -sign;
            }
            None => {
                if a.contains(&0) {
                    return None;
                }
                return Some((a, sign));
            }
        }
    }
}

/// Full Weyl orbit of a weight, enumerated by closing under simple
/// reflections.
pub fn weyl_orbit(t: LieType, w: &Weight) -> Vec<Weight> {
    let c = cartan_matrix(t);
    let r = t.rank();
    let start = w.coeffs().to_vec();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(a) = queue.pop_front() {
        out.push(Weight::new(a.clone()));
        for i in 0..r {
            if a[i] != 0 {
                let mut b = a.clone();
                reflect_simple(&c, &mut b, i);
                if seen.insert(b.clone()) {
                    queue.push_back(b);
                }
            }
        }
    }
    out
}

/// Size of the Weyl orbit of a dominant weight via orbit-stabilizer: the
/// stabilizer is the parabolic Weyl group generated by the simple
/// reflections fixing the weight, whose order is the product of the
/// component Weyl orders.
pub fn weyl_orbit_size(t: LieType, w: &Weight) -> Result<u128> {
    check_weight(t, w)?;
    if !w.is_dominant() {
        return Err(Error::NonDominant(w.coeffs().to_vec()));
    }
    let zero_nodes: Vec<usize> = (1..=t.rank())
        .filter(|&i| w.coeffs()[i - 1] == 0)
        .collect();
    let mut stab: u128 = 1;
    for comp in subdiagram_components(t, &zero_nodes) {
        stab *= comp.lie_type.weyl_order();
    }
    Ok(t.weyl_order() / stab)
}

/// A connected component of an induced subdiagram, identified with a simple
/// type. `nodes[k]` is the ambient 1-based node playing the role of the
/// (k+1)-th Bourbaki node of `lie_type`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramComponent {
    pub lie_type: LieType,
    pub nodes: Vec<usize>,
}

/// Connected components of the Dynkin subdiagram induced on `nodes`
/// (1-based), each classified as a simple type together with the node
/// ordering realizing its Bourbaki numbering. Two-node double-bond
/// components are labelled `C2`.
pub fn subdiagram_components(t: LieType, nodes: &[usize]) -> Vec<DiagramComponent> {
    let c = cartan_matrix(t);
    let keep: HashSet<usize> = nodes.iter().copied().collect();
    let mut seen: HashSet<usize> = HashSet::new();
    let mut comps = Vec::new();
    let mut sorted_nodes: Vec<usize> = nodes.to_vec();
    sorted_nodes.sort_unstable();
    for &start in &sorted_nodes {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(u) = queue.pop_front() {
            for v in 1..=t.rank() {
                if v != u && keep.contains(&v) && !seen.contains(&v) && c.entry(u - 1, v - 1) != 0 {
                    seen.insert(v);
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        comps.push(classify_component(&c, &comp));
    }
    comps.sort_by_key(|comp| (comp.lie_type.rank(), comp.lie_type.series()));
    comps
}

fn classify_component(c: &CartanMatrix, comp: &[usize]) -> DiagramComponent {
    let n = comp.len();
    let entry = |u: usize, v: usize| c.entry(u - 1, v - 1);
    let bond = |u: usize, v: usize| entry(u, v) * entry(v, u);
    let neighbors = |u: usize| -> Vec<usize> {
        comp.iter()
            .copied()
            .filter(|&v| v != u && entry(u, v) != 0)
            .collect()
    };

    if n == 1 {
        return DiagramComponent {
            lie_type: LieType::new(Series::A, 1).unwrap(),
            nodes: comp.to_vec(),
        };
    }

    let mut max_bond = 1;
    for (k, &u) in comp.iter().enumerate() {
        for &v in &comp[k + 1..] {
            if entry(u, v) != 0 {
                max_bond = max_bond.max(bond(u, v));
            }
        }
    }

    if max_bond == 3 {
        // G2: the node with outgoing entry -1 comes first.
        let (u, v) = (comp[0], comp[1]);
        let ordered = if entry(u, v) == -1 { vec![u, v] } else { vec![v, u] };
        return DiagramComponent {
            lie_type: LieType::new(Series::G, 2).unwrap(),
            nodes: ordered,
        };
    }

    let branch = comp.iter().copied().find(|&u| neighbors(u).len() == 3);

    if let Some(center) = branch {
        // Simply laced with one branch node: D or E.
        let mut arms: Vec<Vec<usize>> = neighbors(center)
            .into_iter()
            .map(|first| {
                let mut arm = vec![first];
                let mut prev = center;
                let mut cur = first;
                loop {
                    let next: Vec<usize> =
                        neighbors(cur).into_iter().filter(|&x| x != prev).collect();
                    match next.as_slice() {
                        [x] => {
                            arm.push(*x);
                            prev = cur;
                            cur = *x;
                        }
                        _ => break,
                    }
                }
                arm
            })
            .collect();
        arms.sort_by_key(|arm| (arm.len(), arm[0]));
        let (a, b) = (arms[0].len(), arms[1].len());
        if a == 1 && b == 1 {
            // D_n: long arm leaf-to-center is 1..n-2, the two leaves are n-1, n.
            let mut order: Vec<usize> = arms[2].iter().rev().copied().collect();
            order.push(center);
            order.push(arms[0][0]);
            order.push(arms[1][0]);
            return DiagramComponent {
                lie_type: LieType::new(Series::D, n).unwrap(),
                nodes: order,
            };
        }
        // E_n: short arm is node 2, the two-arm is (3, 1), the long arm 5, 6, ...
        debug_assert!(a == 1 && b == 2 && (2..=4).contains(&arms[2].len()));
        let mut order = vec![0usize; n];
        order[1] = arms[0][0];
        order[2] = arms[1][0];
        order[0] = arms[1][1];
        order[3] = center;
        for (k, &u) in arms[2].iter().enumerate() {
            order[4 + k] = u;
        }
        return DiagramComponent {
            lie_type: LieType::new(Series::E, n).unwrap(),
            nodes: order,
        };
    }

    // Chain. Walk from an endpoint, smaller ambient label first.
    let mut endpoints: Vec<usize> = comp
        .iter()
        .copied()
        .filter(|&u| neighbors(u).len() == 1)
        .collect();
    endpoints.sort_unstable();
    let walk = |start: usize| -> Vec<usize> {
        let mut order = vec![start];
        let mut prev = 0usize;
        let mut cur = start;
        while order.len() < n {
            let next = neighbors(cur)
                .into_iter()
                .find(|&x| x != prev)
                .expect("chain continues");
            order.push(next);
            prev = cur;
            cur = next;
        }
        order
    };

    if max_bond == 1 {
        return DiagramComponent {
            lie_type: LieType::new(Series::A, n).unwrap(),
            nodes: walk(endpoints[0]),
        };
    }

    // Double bond: B, C or F4.
    if n == 2 {
        // Isomorphic labels; canonicalize to C2 (short root first).
        let (u, v) = (comp[0], comp[1]);
        let ordered = if entry(v, u) == -2 { vec![u, v] } else { vec![v, u] };
        return DiagramComponent {
            lie_type: LieType::new(Series::C, 2).unwrap(),
            nodes: ordered,
        };
    }
    for start in endpoints {
        let order = walk(start);
        let (p, q) = (order[n - 2], order[n - 1]);
        if bond(p, q) == 2 {
            // Double bond at the far end: short last node gives B, long gives C.
            let series = if entry(p, q) == -2 { Series::B } else { Series::C };
            return DiagramComponent {
                lie_type: LieType::new(series, n).unwrap(),
                nodes: order,
            };
        }
        if n == 4 && bond(order[1], order[2]) == 2 && entry(order[1], order[2]) == -2 {
            return DiagramComponent {
                lie_type: LieType::new(Series::F, 4).unwrap(),
                nodes: order,
            };
        }
    }
    unreachable!("finite-type subdiagram classification is exhaustive");
}

/// Solves `C^T x = a` over the rationals and returns `floor(x_i)`; these
/// bound the simple-root coordinates of `hw - mu` over dominant `mu`.
#[allow(clippy::needless_range_loop)]
fn root_coordinate_bounds(c: &CartanMatrix, a: &[i64]) -> Vec<i64> {
    let r = c.rank();
    type Q = Ratio<i128>;
    let mut m: Vec<Vec<Q>> = (0..r)
        .map(|i| {
            let mut row: Vec<Q> = (0..r).map(|j| Q::from_integer(c.entry(j, i) as i128)).collect();
            row.push(Q::from_integer(a[i] as i128));
            row
        })
        .collect();
    for col in 0..r {
        let pivot = (col..r)
            .find(|&row| !m[row][col].is_zero())
            .expect("Cartan matrix is invertible");
        m.swap(col, pivot);
        let p = m[col][col];
        for j in col..=r {
            m[col][j] /= p;
        }
        for row in 0..r {
            if row != col && !m[row][col].is_zero() {
                let f = m[row][col];
                for j in col..=r {
                    let sub = f * m[col][j];
                    m[row][j] -= sub;
                }
            }
        }
    }
    (0..r).map(|i| m[i][r].floor().to_integer() as i64).collect()
}

/// All dominant weights `mu` with `hw - mu` a nonnegative integral
/// combination of simple roots, keyed by the simple-root coordinates of the
/// difference.
pub(crate) fn dominant_weights_below(
    t: LieType,
    hw: &Weight,
    work: &mut WorkCounter,
) -> Result<Vec<(Weight, Vec<i64>)>> {
    let r = t.rank();
    let c = cartan_matrix(t);
    let bounds = root_coordinate_bounds(&c, hw.coeffs());
    let mut out = Vec::new();
    let mut k = vec![0i64; r];
    // Depth-first walk of the coordinate box.
    fn rec(
        c: &CartanMatrix,
        hw: &[i64],
        bounds: &[i64],
        k: &mut Vec<i64>,
        depth: usize,
        out: &mut Vec<(Weight, Vec<i64>)>,
        work: &mut WorkCounter,
    ) -> Result<()> {
        let r = bounds.len();
        if depth == r {
            work.tick(1)?;
            let mut a = hw.to_vec();
            for (i, &ki) in k.iter().enumerate() {
                if ki != 0 {
                    for (j, aj) in a.iter_mut().enumerate() {
                        *aj -= ki * c.entry(i, j);
                    }
                }
            }
            if a.iter().all(|&x| x >= 0) {
                out.push((Weight::new(a), k.clone()));
            }
            return Ok(());
        }
        for v in 0..=bounds[depth].max(0) {
            k[depth] = v;
            rec(c, hw, bounds, k, depth + 1, out, work)?;
        }
        k[depth] = 0;
        Ok(())
    }
    rec(&c, hw.coeffs(), &bounds, &mut k, 0, &mut out, work)?;
    // Sort by depth below hw, ties broken lexicographically.
    out.sort_by(|(wa, ka), (wb, kb)| {
        let ha: i64 = ka.iter().sum();
        let hb: i64 = kb.iter().sum();
        ha.cmp(&hb).then_with(|| wa.cmp(wb))
    });
    Ok(out)
}

/// Multiplicity of every dominant weight of the simple module `E(hw)`, by
/// Freudenthal's recursion. All inner products are integral in the fixed
/// normalization.
pub fn freudenthal_multiplicities(t: LieType, hw: &Weight) -> Result<BTreeMap<Weight, u64>> {
    freudenthal_with_counter(t, hw, &mut WorkCounter::unlimited())
}

pub(crate) fn freudenthal_with_counter(
    t: LieType,
    hw: &Weight,
    work: &mut WorkCounter,
) -> Result<BTreeMap<Weight, u64>> {
    check_weight(t, hw)?;
    if !hw.is_dominant() {
        return Err(Error::NonDominant(hw.coeffs().to_vec()));
    }
    let d = scale_factors(t);
    let c = cartan_matrix(t);
    let roots = positive_roots(t);
    // Fundamental coordinates of each positive root.
    let root_weights: Vec<Vec<i64>> = roots
        .iter()
        .map(|root| root_to_weight(t, root).coeffs().to_vec())
        .collect();
    let doms = dominant_weights_below(t, hw, work)?;
    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    for (mu, diff) in &doms {
        if diff.iter().all(|&x| x == 0) {
            mult.insert(mu.clone(), 1);
            continue;
        }
        // (hw + mu + 2rho, hw - mu), integral via root coordinates of the difference.
        let sum_shifted: Vec<i64> = hw
            .coeffs()
            .iter()
            .zip(mu.coeffs())
            .map(|(x, y)| x + y + 2)
            .collect();
        let denom = pair_weight_root(&d, &sum_shifted, diff);
        debug_assert!(denom > 0);
        let mut rhs: i128 = 0;
        for (root, root_w) in roots.iter().zip(&root_weights) {
            let mut nu: Vec<i64> = mu.coeffs().to_vec();
            loop {
                work.tick(1)?;
                for (a, step) in nu.iter_mut().zip(root_w) {
                    *a += step;
                }
                let dom = dominant_conjugate_in(&c, &nu);
                let Some(&m) = mult.get(&Weight::new(dom)) else {
                    break; // weights along a root string form an interval
                };
                let pairing = pair_weight_root(&d, &nu, root.coeffs());
                rhs += (m as i128) * (pairing as i128);
            }
        }
        let value = 2 * rhs / (denom as i128);
        debug_assert_eq!(2 * rhs % (denom as i128), 0);
        debug_assert!(value > 0);
        mult.insert(mu.clone(), value as u64);
    }
    Ok(mult)
}

fn dominant_conjugate_in(c: &CartanMatrix, a: &[i64]) -> Vec<i64> {
    let mut a = a.to_vec();
    loop {
        match a.iter().position(|&x| x < 0) {
            Some(i) => reflect_simple(c, &mut a, i),
            None => return a,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(series: Series, rank: usize) -> LieType {
        LieType::new(series, rank).unwrap()
    }

    #[test]
    fn cartan_low_rank() {
        assert_eq!(cartan_matrix(t(Series::A, 1)).entries(), &[vec![2]]);
        assert_eq!(
            cartan_matrix(t(Series::A, 2)).entries(),
            &[vec![2, -1], vec![-1, 2]]
        );
        let g2 = cartan_matrix(t(Series::G, 2));
        let mut off: Vec<i64> = vec![g2.entry(0, 1), g2.entry(1, 0)];
        off.sort_unstable();
        assert_eq!(off, vec![-3, -1]);
    }

    #[test]
    fn cartan_entry_invariants() {
        for ty in LieType::all_up_to_rank(8) {
            let c = cartan_matrix(ty);
            for i in 0..ty.rank() {
                assert_eq!(c.entry(i, i), 2);
                for j in 0..ty.rank() {
                    if i != j {
                        assert!((-3..=0).contains(&c.entry(i, j)), "{ty} ({i},{j})");
                        assert_eq!(c.entry(i, j) == 0, c.entry(j, i) == 0, "{ty} ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn rank_bounds_enforced() {
        assert!(LieType::new(Series::B, 1).is_err());
        assert!(LieType::new(Series::D, 2).is_err());
        assert!(LieType::new(Series::E, 5).is_err());
        assert!(LieType::new(Series::F, 3).is_err());
        assert!(LieType::new(Series::G, 3).is_err());
        assert!(LieType::new(Series::B, 2).is_ok());
        assert!(LieType::new(Series::D, 3).is_ok());
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(positive_roots(t(Series::A, 2)).len(), 3);
        assert_eq!(positive_roots(t(Series::G, 2)).len(), 6);
        assert_eq!(positive_roots(t(Series::F, 4)).len(), 24);
        assert_eq!(positive_roots(t(Series::E, 6)).len(), 36);
        assert_eq!(positive_roots(t(Series::E, 7)).len(), 63);
        assert_eq!(positive_roots(t(Series::E, 8)).len(), 120);
        // dim G = rank + 2 #Phi+ against the exceptional dimensions
        assert_eq!(t(Series::E, 6).dim_group(), 78);
        assert_eq!(t(Series::E, 8).dim_group(), 248);
        assert_eq!(t(Series::G, 2).dim_group(), 14);
    }

    #[test]
    fn positive_roots_sorted_and_positive() {
        for ty in LieType::all_up_to_rank(6) {
            let roots = positive_roots(ty);
            assert_eq!(roots.len() as u64, ty.num_positive_roots(), "{ty}");
            let mut prev_height = 0;
            for root in &roots {
                assert!(root.coeffs().iter().all(|&c| c >= 0));
                assert!(root.height() >= prev_height);
                prev_height = root.height();
            }
        }
    }

    #[test]
    fn root_to_weight_examples() {
        // zero maps to zero
        let b4 = t(Series::B, 4);
        let zero = Root::new(vec![0; 4]);
        assert!(root_to_weight(b4, &zero).is_zero());
        // -alpha_1 in B_l
        let minus_alpha1 = Root::new(vec![-1, 0, 0, 0]);
        assert_eq!(root_to_weight(b4, &minus_alpha1).coeffs(), &[-2, 1, 0, 0]);
        // -2a_1-...-2a_{l-1}-a_l in C_l
        let c4 = t(Series::C, 4);
        let long = Root::new(vec![-2, -2, -2, -1]);
        assert_eq!(root_to_weight(c4, &long).coeffs(), &[-2, 0, 0, 0]);
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(t(Series::E, 6), 1).unwrap(), 6);
        assert_eq!(epsilon(t(Series::E, 6), 3).unwrap(), 5);
        assert_eq!(epsilon(t(Series::E, 6), 2).unwrap(), 2);
        assert_eq!(epsilon(t(Series::B, 5), 3).unwrap(), 3);
        assert_eq!(epsilon(t(Series::D, 5), 4).unwrap(), 5);
        assert_eq!(epsilon(t(Series::D, 6), 5).unwrap(), 5);
        assert_eq!(epsilon(t(Series::A, 4), 1).unwrap(), 4);
        assert!(epsilon(t(Series::A, 4), 5).is_err());
    }

    #[test]
    fn dual_weight_examples() {
        let e6 = t(Series::E, 6);
        let w1 = Weight::fundamental(6, 1, 1).unwrap();
        assert_eq!(dual_weight(e6, &w1), Weight::fundamental(6, 6, 1).unwrap());
        let a3 = t(Series::A, 3);
        let w = Weight::fundamental(3, 1, 1).unwrap();
        assert_eq!(dual_weight(a3, &w), Weight::fundamental(3, 3, 1).unwrap());
        let f4 = t(Series::F, 4);
        let w = Weight::new(vec![1, 2, 3, 4]);
        assert_eq!(dual_weight(f4, &w), w);
    }

    #[test]
    fn weyl_dim_examples() {
        let a1 = t(Series::A, 1);
        for m in 0..6 {
            assert_eq!(
                weyl_dim(a1, &Weight::new(vec![m])).unwrap(),
                BigUint::from((m + 1) as u64)
            );
        }
        let d5 = t(Series::D, 5);
        assert_eq!(
            weyl_dim(d5, &Weight::fundamental(5, 5, 1).unwrap()).unwrap(),
            BigUint::from(16u32)
        );
        let e6 = t(Series::E, 6);
        assert_eq!(
            weyl_dim(e6, &Weight::fundamental(6, 1, 1).unwrap()).unwrap(),
            BigUint::from(27u32)
        );
        assert!(weyl_dim(a1, &Weight::new(vec![-1])).is_err());
    }

    #[test]
    fn freudenthal_examples() {
        let a1 = t(Series::A, 1);
        let m = freudenthal_multiplicities(a1, &Weight::new(vec![2])).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[&Weight::new(vec![2])], 1);
        assert_eq!(m[&Weight::new(vec![0])], 1);

        let a2 = t(Series::A, 2);
        let adj = freudenthal_multiplicities(a2, &Weight::new(vec![1, 1])).unwrap();
        assert_eq!(adj[&Weight::zero(2)], 2);

        let d4 = t(Series::D, 4);
        let adj = freudenthal_multiplicities(d4, &Weight::fundamental(4, 2, 1).unwrap()).unwrap();
        assert_eq!(adj[&Weight::zero(4)], 4);
    }

    #[test]
    fn multiplicity_sum_rule() {
        // sum over dominant weights of mult * orbit size = dim
        for (ty, hw) in [
            (t(Series::A, 2), Weight::new(vec![1, 1])),
            (t(Series::A, 3), Weight::new(vec![1, 0, 1])),
            (t(Series::B, 2), Weight::new(vec![0, 2])),
            (t(Series::G, 2), Weight::new(vec![1, 0])),
            (t(Series::D, 4), Weight::new(vec![0, 1, 0, 0])),
            (t(Series::F, 4), Weight::new(vec![1, 0, 0, 0])),
        ] {
            let dim = weyl_dim(ty, &hw).unwrap();
            let mult = freudenthal_multiplicities(ty, &hw).unwrap();
            let mut total = BigUint::zero();
            for (mu, m) in &mult {
                total += BigUint::from(*m) * BigUint::from(weyl_orbit_size(ty, mu).unwrap());
            }
            assert_eq!(total, dim, "{ty} {hw}");
        }
    }

    #[test]
    fn orbit_size_matches_enumeration() {
        for (ty, hw) in [
            (t(Series::A, 3), Weight::new(vec![1, 0, 1])),
            (t(Series::B, 3), Weight::new(vec![0, 1, 0])),
            (t(Series::D, 4), Weight::new(vec![1, 0, 1, 0])),
            (t(Series::G, 2), Weight::new(vec![2, 1])),
            (t(Series::C, 3), Weight::new(vec![0, 0, 3])),
        ] {
            let by_formula = weyl_orbit_size(ty, &hw).unwrap();
            let by_bfs = weyl_orbit(ty, &hw).len() as u128;
            assert_eq!(by_formula, by_bfs, "{ty} {hw}");
        }
    }

    #[test]
    fn subdiagram_classification() {
        // E6 minus node 4: A1 + A2 + A2
        let e6 = t(Series::E, 6);
        let comps = subdiagram_components(e6, &[1, 2, 3, 5, 6]);
        let types: Vec<String> = comps.iter().map(|c| c.lie_type.to_string()).collect();
        assert_eq!(types, vec!["A1", "A2", "A2"]);

        // E8 minus node 1: D7
        let e8 = t(Series::E, 8);
        let comps = subdiagram_components(e8, &[2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].lie_type, t(Series::D, 7));
        assert_eq!(comps[0].nodes, vec![8, 7, 6, 5, 4, 2, 3]);

        // F4 minus node 4: B3; minus node 1: C3
        let f4 = t(Series::F, 4);
        let comps = subdiagram_components(f4, &[1, 2, 3]);
        assert_eq!(comps[0].lie_type, t(Series::B, 3));
        let comps = subdiagram_components(f4, &[2, 3, 4]);
        assert_eq!(comps[0].lie_type, t(Series::C, 3));

        // E7 minus node 2: A6
        let e7 = t(Series::E, 7);
        let comps = subdiagram_components(e7, &[1, 3, 4, 5, 6, 7]);
        assert_eq!(comps[0].lie_type, t(Series::A, 6));
    }

    #[test]
    fn subdiagram_orders_reproduce_cartan() {
        // The component ordering must transport the ambient Cartan entries
        // onto the standard matrix of the classified type.
        for ty in LieType::all_up_to_rank(8) {
            let c = cartan_matrix(ty);
            for removed in 1..=ty.rank() {
                let nodes: Vec<usize> = (1..=ty.rank()).filter(|&i| i != removed).collect();
                for comp in subdiagram_components(ty, &nodes) {
                    let std = cartan_matrix(comp.lie_type);
                    for (a, &u) in comp.nodes.iter().enumerate() {
                        for (b, &v) in comp.nodes.iter().enumerate() {
                            assert_eq!(
                                c.entry(u - 1, v - 1),
                                std.entry(a, b),
                                "{ty} minus {removed}: component {:?}",
                                comp
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn epsilon_is_cartan_automorphism() {
        for ty in LieType::all_up_to_rank(8) {
            let c = cartan_matrix(ty);
            for i in 1..=ty.rank() {
                let ei = epsilon(ty, i).unwrap();
                assert_eq!(epsilon(ty, ei).unwrap(), i);
                for j in 1..=ty.rank() {
                    let ej = epsilon(ty, j).unwrap();
                    assert_eq!(c.entry(ei - 1, ej - 1), c.entry(i - 1, j - 1));
                }
            }
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("E6".parse::<LieType>().unwrap(), t(Series::E, 6));
        assert_eq!("a5".parse::<LieType>().unwrap().to_string(), "A5");
        assert!("E9".parse::<LieType>().is_err());
        assert!("H3".parse::<LieType>().is_err());
    }
}
