//! Simply-laced root data: Cartan matrices, the reflection representation on
//! the root lattice, Coxeter elements and Weyl group orders.
//!
//! Nodes follow Bourbaki's numbering. Simple reflections act on the
//! simple-root basis by `s_i(α_j) = α_j − C_ij α_i`, so every Weyl group
//! element is an integer matrix.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::classify::{Family, SingularityClass};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Largest rank for which [`RootDatum::weyl_order`] enumerates orbits.
pub const WEYL_ORDER_RANK_CAP: usize = 8;

/// Edges of the Dynkin diagram, 0-based.
fn dynkin_edges(class: SingularityClass) -> Vec<(usize, usize)> {
    let n = class.rank() as usize;
    match class.family() {
        Family::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
        Family::D => {
            let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
            e.push((n - 3, n - 1));
            e
        }
        Family::E => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..n - 1).map(|i| (i, i + 1)));
            e
        }
    }
}

pub fn cartan_matrix(class: SingularityClass) -> Matrix<i64> {
    let n = class.rank() as usize;
    let mut c = Matrix::identity(&(), n).scale(&2);
    for (i, j) in dynkin_edges(class) {
        c.set(i, j, -1);
        c.set(j, i, -1);
    }
    c
}

/// An element of the Weyl group acting on the root lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylElement {
    matrix: Matrix<i64>,
    cycle_type: Option<Vec<usize>>,
}

impl WeylElement {
    pub fn matrix(&self) -> &Matrix<i64> {
        &self.matrix
    }

    /// Cycle type, recorded for type A elements built from a partition.
    pub fn cycle_type(&self) -> Option<&[usize]> {
        self.cycle_type.as_deref()
    }

    /// Multiplicative order; Weyl groups of rank ≤ 8 have element orders ≤ 30.
    pub fn order(&self) -> u64 {
        self.matrix.multiplicative_order(1 << 12).expect("Weyl group elements have finite order")
    }

    /// `[1, c_1, …, c_r]` with `det(λ − w) = λ^r + c_1 λ^(r−1) + …`.
    pub fn charpoly(&self) -> Vec<i64> {
        self.matrix.charpoly()
    }

    /// `dim ker(w − 1)` over `Q`.
    pub fn fixed_space_dim(&self) -> usize {
        fixed_space_dim(&self.matrix)
    }

    pub fn to_rational(&self) -> Matrix<BigRational> {
        self.matrix.map(&(), |&v| crate::ring::rational(v, 1))
    }
}

pub fn fixed_space_dim(m: &Matrix<i64>) -> usize {
    let n = m.rows();
    let shifted = m.sub(&Matrix::identity(&(), n));
    n - shifted.rank()
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootDatum {
    class: SingularityClass,
    cartan: Matrix<i64>,
    reflections: Vec<Matrix<i64>>,
}

impl RootDatum {
    pub fn new(class: SingularityClass) -> Self {
        let cartan = cartan_matrix(class);
        let n = cartan.rows();
        let reflections = (0..n)
            .map(|i| {
                let mut s = Matrix::identity(&(), n);
                for j in 0..n {
                    let v = s.get(i, j) - cartan.get(i, j);
                    s.set(i, j, v);
                }
                s
            })
            .collect();
        RootDatum { class, cartan, reflections }
    }

    pub fn class(&self) -> SingularityClass {
        self.class
    }

    pub fn rank(&self) -> usize {
        self.cartan.rows()
    }

    pub fn cartan(&self) -> &Matrix<i64> {
        &self.cartan
    }

    /// The `i`-th simple reflection, 1-based.
    pub fn simple_reflection(&self, i: usize) -> Result<&Matrix<i64>> {
        if i == 0 || i > self.rank() {
            return Err(Error::IndexOutOfRange { index: i, max: self.rank() });
        }
        Ok(&self.reflections[i - 1])
    }

    pub fn simple_reflections(&self) -> &[Matrix<i64>] {
        &self.reflections
    }

    /// `s_1 s_2 ⋯ s_r` in node order.
    pub fn coxeter_element(&self) -> WeylElement {
        let mut m = Matrix::identity(&(), self.rank());
        for s in &self.reflections {
            m = m.mul(s);
        }
        let cycle_type = (self.class.family() == Family::A).then(|| vec![self.rank() + 1]);
        WeylElement { matrix: m, cycle_type }
    }

    /// Order of the Coxeter element, computed as a matrix order.
    pub fn coxeter_number(&self) -> u64 {
        self.coxeter_element().order()
    }

    /// All roots in the simple-root basis, generated as the orbit of the
    /// simple roots under the simple reflections.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            if seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
        while let Some(r) = queue.pop_front() {
            for s in &self.reflections {
                let img: Vec<i64> = (0..n).map(|i| (0..n).map(|j| s.get(i, j) * r[j]).sum()).collect();
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// `|W|` by orbit–stabilizer: the stabilizer of the fundamental weight
    /// `ω_i` is the parabolic subgroup on the remaining nodes, so
    /// `|W| = |W·ω_i| · |W_{S∖i}|`, recursively.
    pub fn weyl_order(&self) -> Result<BigUint> {
        if self.rank() > WEYL_ORDER_RANK_CAP {
            return Err(Error::ResourceCap(alloc::format!(
                "Weyl order enumeration is capped at rank {WEYL_ORDER_RANK_CAP}"
            )));
        }
        Ok(parabolic_order(&self.cartan, &(0..self.rank()).collect::<Vec<_>>()))
    }

    /// `2I − C`, the adjacency matrix of the Dynkin diagram.
    pub fn dynkin_adjacency(&self) -> Matrix<i64> {
        Matrix::identity(&(), self.rank()).scale(&2).sub(&self.cartan)
    }
}

/// Order of the parabolic subgroup generated by the reflections in `nodes`.
fn parabolic_order(cartan: &Matrix<i64>, nodes: &[usize]) -> BigUint {
    let Some((_, rest)) = nodes.split_last() else {
        return BigUint::one();
    };
    // Orbit of ω_last under the reflections of `nodes`, in fundamental-weight
    // coordinates: s_j(λ) = λ − λ_j α_j with α_j = row j of C.
    let k = nodes.len();
    let mut start = vec![0i64; k];
    start[k - 1] = 1;
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        for (a, &j) in nodes.iter().enumerate() {
            if w[a] == 0 {
                continue;
            }
            let img: Vec<i64> = nodes.iter().enumerate().map(|(b, &i)| w[b] - w[a] * cartan.get(j, i)).collect();
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    BigUint::from(seen.len()) * parabolic_order(cartan, rest)
}

/// A permutation of `{0, …, m−1}` with the given cycle type: consecutive
/// blocks, each cycle sending `i ↦ i+1` within its block.
pub fn permutation_with_cycle_type(parts: &[usize]) -> Vec<usize> {
    let mut perm = Vec::new();
    let mut start = 0;
    for &r in parts {
        for i in 0..r {
            perm.push(start + (i + 1) % r);
        }
        start += r;
    }
    perm
}

/// The reflection-representation matrix (simple-root basis of `A_n`) of a
/// permutation of `{0, …, n}`.
pub fn permutation_matrix_on_roots(perm: &[usize]) -> Matrix<i64> {
    let n = perm.len() - 1;
    // σ(α_j) = e_σ(j) − e_σ(j+1); express e_a − e_b in the α basis:
    // e_a − e_b = Σ_{a ≤ k < b} α_k for a < b.
    let mut m = Matrix::zeros(&(), n, n);
    for j in 0..n {
        let (a, b) = (perm[j], perm[j + 1]);
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        for k in lo..hi {
            m.set(k, j, m.get(k, j) + sign);
        }
    }
    m
}

/// The type A Weyl element of the given cycle type (a partition of `n+1`),
/// acting on the sum-zero hyperplane of `Q^(n+1)`. Parts are sorted into
/// decreasing order.
pub fn element_from_cycle_type(n: usize, parts: &[usize]) -> Result<WeylElement> {
    if n == 0 || parts.is_empty() || parts.contains(&0) || parts.iter().sum::<usize>() != n + 1 {
        return Err(Error::InvalidArgument(alloc::format!("{parts:?} is not a partition of {}", n + 1)));
    }
    let mut sorted = parts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let perm = permutation_with_cycle_type(&sorted);
    Ok(WeylElement { matrix: permutation_matrix_on_roots(&perm), cycle_type: Some(sorted) })
}

/// The identity element of `W(class)`.
pub fn identity_element(class: SingularityClass) -> WeylElement {
    let r = class.rank() as usize;
    let cycle_type = (class.family() == Family::A).then(|| vec![1; r + 1]);
    WeylElement { matrix: Matrix::identity(&(), r), cycle_type }
}
