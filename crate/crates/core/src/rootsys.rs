//! Simply-laced root systems and their Weyl groups.
//!
//! Weights live in the fundamental-weight basis, root-lattice vectors in the
//! simple-root basis. Weyl elements are integer matrices acting on
//! fundamental-weight coordinates.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::{Error, Rat, Result};

/// Largest Weyl group enumerated by default (the order of W(E6)).
pub const DEFAULT_WEYL_BOUND: usize = 51840;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    D,
    E,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => "A",
            Series::D => "D",
            Series::E => "E",
        };
        f.write_str(c)
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<Rat>,
}

impl Weight {
    pub fn new(coords: Vec<Rat>) -> Self {
        Weight { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { coords: vec![Rat::zero(); rank] }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight { coords: v.iter().map(|&x| Rat::from_integer(x)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn scale(&self, c: Rat) -> Weight {
        Weight { coords: self.coords.iter().map(|x| x * c).collect() }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { coords: self.coords.iter().map(|a| -a).collect() }
    }
}

/// A vector in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootCoord {
    pub coords: Vec<Rat>,
}

impl RootCoord {
    pub fn from_ints(v: &[i64]) -> Self {
        RootCoord { coords: v.iter().map(|&x| Rat::from_integer(x)).collect() }
    }

    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

/// Immutable ADE root-system datum.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub series: Series,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub inverse_cartan: Vec<Vec<Rat>>,
    /// Positive roots in simple-root coordinates, ordered by height.
    pub positive_roots: Vec<Vec<i64>>,
    /// The same roots in fundamental-weight coordinates.
    pub positive_roots_weight: Vec<Vec<i64>>,
    pub rho: Weight,
    pub theta: Weight,
    pub coxeter: usize,
    gram_num: Vec<Vec<i64>>,
    gram_den: i64,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.series == other.series && self.rank == other.rank
    }
}

impl Eq for RootSystem {}

impl FromStr for RootSystem {
    type Err = Error;

    /// Parses names like `A2`, `D4`, `E6`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('D') => Series::D,
            Some('E') => Series::E,
            _ => return Err(Error::Parse(format!("unknown root system '{s}'"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in '{s}'")))?;
        build_root_system(series, rank)
    }
}

fn cartan_matrix(series: Series, n: usize) -> Result<Vec<Vec<i64>>> {
    let edges: Vec<(usize, usize)> = match series {
        Series::A if n >= 1 => (0..n - 1).map(|i| (i, i + 1)).collect(),
        Series::D if n >= 4 => {
            let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
            e.push((n - 3, n - 1));
            e
        }
        // Bourbaki numbering: 1-3-4-5-...-n chain, node 2 attached to node 4.
        Series::E if (6..=8).contains(&n) => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..n - 1).map(|i| (i, i + 1)));
            e
        }
        _ => return Err(Error::RootSystem(format!("no simply-laced type {series}{n}"))),
    };
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        c[a][b] = -1;
        c[b][a] = -1;
    }
    Ok(c)
}

/// Exact inverse of an integer matrix, `None` if singular.
pub fn invert_int_matrix(m: &[Vec<i64>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rat> = row.iter().map(|&x| Rat::from_integer(x)).collect();
            r.extend((0..n).map(|j| Rat::from_integer((i == j) as i64)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let pv = a[col][col];
        for x in a[col].iter_mut() {
            *x /= pv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn build_root_system(series: Series, rank: usize) -> Result<RootSystem> {
    let cartan = cartan_matrix(series, rank)?;
    let inverse_cartan = invert_int_matrix(&cartan)
        .ok_or_else(|| Error::RootSystem("singular Cartan matrix".into()))?;
    let gram_den = inverse_cartan
        .iter()
        .flatten()
        .fold(1i64, |acc, x| acc.lcm(x.denom()));
    let gram_num = inverse_cartan
        .iter()
        .map(|r| r.iter().map(|x| (x * gram_den).to_integer()).collect())
        .collect();

    let positive_roots = positive_roots_closure(&cartan);
    let positive_roots_weight: Vec<Vec<i64>> =
        positive_roots.iter().map(|g| root_to_weight_int(&cartan, g)).collect();
    let top = positive_roots.last().expect("nonempty root system");
    let coxeter = top.iter().sum::<i64>() as usize + 1;
    let theta = Weight::from_ints(&root_to_weight_int(&cartan, top));
    let rs = RootSystem {
        series,
        rank,
        cartan,
        inverse_cartan,
        positive_roots,
        positive_roots_weight,
        rho: Weight::from_ints(&vec![1; rank]),
        theta,
        coxeter,
        gram_num,
        gram_den,
    };
    if rs.positive_roots.len() != rank * coxeter / 2 {
        return Err(Error::RootSystem("positive root count mismatch".into()));
    }
    Ok(rs)
}

fn root_to_weight_int(cartan: &[Vec<i64>], g: &[i64]) -> Vec<i64> {
    let n = g.len();
    (0..n).map(|j| (0..n).map(|i| g[i] * cartan[i][j]).sum()).collect()
}

fn positive_roots_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let mut roots: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut frontier = simple;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for r in &frontier {
            for i in 0..n {
                let c: i64 = (0..n).map(|j| r[j] * cartan[j][i]).sum();
                let mut t = r.clone();
                t[i] -= c;
                if t.iter().all(|&v| v >= 0) && t.iter().any(|&v| v > 0) && roots.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<i64>> = roots.into_iter().collect();
    out.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    out
}

impl RootSystem {
    pub fn name(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    pub fn check_rank(&self, got: usize) -> Result<()> {
        if got == self.rank {
            Ok(())
        } else {
            Err(Error::Dimension { expected: self.rank, got })
        }
    }

    /// Order of the Weyl group from the classification formulas.
    pub fn weyl_order(&self) -> u128 {
        let fact = |k: usize| (1..=k as u128).product::<u128>();
        match (self.series, self.rank) {
            (Series::A, n) => fact(n + 1),
            (Series::D, n) => (1u128 << (n - 1)) * fact(n),
            (Series::E, 6) => 51_840,
            (Series::E, 7) => 2_903_040,
            _ => 696_729_600,
        }
    }

    pub fn root_to_weight(&self, g: &RootCoord) -> Weight {
        let n = self.rank;
        Weight {
            coords: (0..n)
                .map(|j| (0..n).map(|i| g.coords[i] * self.cartan[i][j]).sum())
                .collect(),
        }
    }

    pub fn weight_to_root(&self, w: &Weight) -> RootCoord {
        let n = self.rank;
        // C is symmetric, so root coordinates are C^{-1} applied to the weight.
        RootCoord {
            coords: (0..n)
                .map(|i| (0..n).map(|j| self.inverse_cartan[i][j] * w.coords[j]).sum())
                .collect(),
        }
    }

    pub fn root_to_weight_int(&self, g: &[i64]) -> Vec<i64> {
        root_to_weight_int(&self.cartan, g)
    }

    /// `(x, y)` scaled by `gram_den`, for integral weights.
    pub fn ip_scaled(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank;
        let mut s = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let row = &self.gram_num[i];
            let mut t = 0;
            for j in 0..n {
                t += row[j] * y[j];
            }
            s += x[i] * t;
        }
        s
    }

    pub fn gram_den(&self) -> i64 {
        self.gram_den
    }

    pub fn ip_int(&self, x: &[i64], y: &[i64]) -> Rat {
        Rat::new(self.ip_scaled(x, y), self.gram_den)
    }

    pub fn ip(&self, x: &Weight, y: &Weight) -> Rat {
        let n = self.rank;
        let mut s = Rat::zero();
        for i in 0..n {
            if x.coords[i].is_zero() {
                continue;
            }
            let mut t = Rat::zero();
            for j in 0..n {
                t += self.inverse_cartan[i][j] * y.coords[j];
            }
            s += x.coords[i] * t;
        }
        s
    }

    pub fn norm_sq(&self, x: &Weight) -> Rat {
        self.ip(x, x)
    }

    /// Float norm, used only for enumeration cutoffs.
    pub fn norm_f64(&self, x: &Weight) -> f64 {
        let r = self.norm_sq(x);
        (*r.numer() as f64 / *r.denom() as f64).sqrt()
    }

    /// Applies simple reflection `s_i` in place on fundamental coordinates.
    pub fn reflect_int(&self, i: usize, x: &mut [i64]) {
        let xi = x[i];
        for (xj, c) in x.iter_mut().zip(&self.cartan[i]) {
            *xj -= xi * c;
        }
    }

    /// The dominant Weyl conjugate of an integral weight and the number of
    /// reflections used.
    pub fn dominant_conjugate(&self, x: &[i64]) -> (Vec<i64>, usize) {
        let mut y = x.to_vec();
        let mut steps = 0;
        while let Some(i) = y.iter().position(|&c| c < 0) {
            self.reflect_int(i, &mut y);
            steps += 1;
        }
        (y, steps)
    }

    pub fn height(&self, g: &[i64]) -> i64 {
        g.iter().sum()
    }
}

pub fn inner_product(rs: &RootSystem, x: &Weight, y: &Weight) -> Result<Rat> {
    rs.check_rank(x.rank())?;
    rs.check_rank(y.rank())?;
    Ok(rs.ip(x, y))
}

/// A Weyl group element acting on fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    /// Row-major `rank x rank` matrix.
    matrix: Vec<i64>,
    pub length: usize,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut m = vec![0; rank * rank];
        for i in 0..rank {
            m[i * rank + i] = 1;
        }
        WeylElement { rank, matrix: m, length: 0 }
    }

    pub fn from_parts(rank: usize, matrix: Vec<i64>, length: usize) -> Result<Self> {
        if matrix.len() != rank * rank {
            return Err(Error::Dimension { expected: rank * rank, got: matrix.len() });
        }
        Ok(WeylElement { rank, matrix, length })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i * self.rank + j]
    }

    pub fn sign(&self) -> i64 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn act_int(&self, x: &[i64]) -> Vec<i64> {
        let n = self.rank;
        (0..n)
            .map(|i| (0..n).map(|j| self.matrix[i * n + j] * x[j]).sum())
            .collect()
    }

    pub fn act(&self, x: &Weight) -> Weight {
        let n = self.rank;
        Weight {
            coords: (0..n)
                .map(|i| (0..n).map(|j| x.coords[j] * self.matrix[i * n + j]).sum())
                .collect(),
        }
    }

    /// Matrix product `self * other` (apply `other` first). The length is not
    /// known from the product alone and is computed from the root system.
    pub fn compose(&self, other: &WeylElement, rs: &RootSystem) -> WeylElement {
        let n = self.rank;
        let mut m = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.matrix[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    m[i * n + j] += a * other.matrix[k * n + j];
                }
            }
        }
        let mut w = WeylElement { rank: n, matrix: m, length: 0 };
        w.length = w.count_inversions(rs);
        w
    }

    /// Inverse element: `C w^T C^{-1}`, since `w` preserves the form `C^{-1}`.
    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let n = self.rank;
        let mut t = vec![0i64; n * n];
        // t = w^T * gram_num
        for i in 0..n {
            for j in 0..n {
                t[i * n + j] = (0..n).map(|k| self.matrix[k * n + i] * rs.gram_num[k][j]).sum();
            }
        }
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let s: i64 = (0..n).map(|k| rs.cartan[i][k] * t[k * n + j]).sum();
                m[i * n + j] = s / rs.gram_den;
            }
        }
        WeylElement { rank: n, matrix: m, length: self.length }
    }

    /// Number of positive roots sent to negative roots.
    pub fn count_inversions(&self, rs: &RootSystem) -> usize {
        rs.positive_roots_weight
            .iter()
            .filter(|a| {
                let img = self.act_int(a);
                // A root is negative iff its root coordinates are nonpositive;
                // the first nonzero root coordinate decides.
                let rc = rs.weight_to_root(&Weight::from_ints(&img));
                rc.coords.iter().any(|c| c.is_negative())
            })
            .count()
    }

    pub fn determinant(&self) -> i64 {
        let n = self.rank;
        let m: Vec<Vec<Rat>> = (0..n)
            .map(|i| self.matrix[i * n..(i + 1) * n].iter().map(|&x| Rat::from_integer(x)).collect())
            .collect();
        crate::linalg::determinant(&m).to_integer()
    }
}

/// Enumerates W by breadth-first closure over simple reflections, with the
/// default bound.
pub fn weyl_group(rs: &RootSystem) -> Result<Vec<WeylElement>> {
    weyl_group_bounded(rs, DEFAULT_WEYL_BOUND)
}

/// Enumerates W, identity first, ordered by length. Refuses groups whose
/// order exceeds `bound`.
pub fn weyl_group_bounded(rs: &RootSystem, bound: usize) -> Result<Vec<WeylElement>> {
    if rs.weyl_order() > bound as u128 {
        return Err(Error::GroupTooLarge { bound });
    }
    let n = rs.rank;
    let gens: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut m = vec![0; n * n];
            for r in 0..n {
                m[r * n + r] = 1;
            }
            for j in 0..n {
                m[j * n + i] -= rs.cartan[i][j];
            }
            m
        })
        .collect();
    let id = WeylElement::identity(n);
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    seen.insert(id.matrix.clone(), 0);
    let mut out = vec![id];
    let mut start = 0;
    let mut depth = 0;
    while start < out.len() {
        let end = out.len();
        depth += 1;
        for idx in start..end {
            for g in &gens {
                let w = &out[idx].matrix;
                let mut m = vec![0; n * n];
                for i in 0..n {
                    for k in 0..n {
                        let a = w[i * n + k];
                        if a != 0 {
                            for j in 0..n {
                                m[i * n + j] += a * g[k * n + j];
                            }
                        }
                    }
                }
                if !seen.contains_key(&m) {
                    seen.insert(m.clone(), depth);
                    out.push(WeylElement { rank: n, matrix: m, length: depth });
                    if out.len() > bound {
                        return Err(Error::GroupTooLarge { bound });
                    }
                }
            }
        }
        start = end;
    }
    Ok(out)
}

/// The element of maximal length.
pub fn longest_element(group: &[WeylElement]) -> &WeylElement {
    group.iter().max_by_key(|w| w.length).expect("nonempty group")
}

/// `w . beta = w(beta + rho) - rho`.
pub fn dot_action(rs: &RootSystem, w: &WeylElement, beta: &Weight) -> Result<Weight> {
    rs.check_rank(beta.rank())?;
    Ok(&w.act(&(beta + &rs.rho)) - &rs.rho)
}

pub fn dot_action_int(w: &WeylElement, beta: &[i64]) -> Vec<i64> {
    let shifted: Vec<i64> = beta.iter().map(|b| b + 1).collect();
    w.act_int(&shifted).into_iter().map(|x| x - 1).collect()
}

/// Zero together with the minuscule fundamental weights: representatives of
/// `P/Q`.
pub fn minuscule_weights(rs: &RootSystem) -> Vec<Weight> {
    let top = rs.positive_roots.last().expect("nonempty");
    let mut out = vec![Weight::zero(rs.rank)];
    for (i, &c) in top.iter().enumerate() {
        if c == 1 {
            let mut v = vec![0; rs.rank];
            v[i] = 1;
            out.push(Weight::from_ints(&v));
        }
    }
    out
}

/// Text table: one element per line, matrix entries row-major, then length.
pub fn weyl_table_to_text(group: &[WeylElement]) -> String {
    let mut s = String::new();
    for w in group {
        for x in &w.matrix {
            s.push_str(&x.to_string());
            s.push(' ');
        }
        s.push_str(&w.length.to_string());
        s.push('\n');
    }
    s
}

pub fn weyl_table_from_text(rs: &RootSystem, text: &str) -> Result<Vec<WeylElement>> {
    let n = rs.rank;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let vals: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("weyl table line {}: {e}", lineno + 1)))?;
        if vals.len() != n * n + 1 || vals[n * n] < 0 {
            return Err(Error::Parse(format!("weyl table line {}: wrong shape", lineno + 1)));
        }
        out.push(WeylElement { rank: n, matrix: vals[..n * n].to_vec(), length: vals[n * n] as usize });
    }
    if out.len() as u128 != rs.weyl_order() {
        return Err(Error::Parse(format!(
            "weyl table has {} elements, expected {}",
            out.len(),
            rs.weyl_order()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rat {
        Rat::new(a, b)
    }

    #[test]
    fn small_types() {
        let a1 = build_root_system(Series::A, 1).unwrap();
        assert_eq!(a1.positive_roots.len(), 1);
        assert_eq!(a1.rho, Weight::from_ints(&[1]));
        assert_eq!(a1.coxeter, 2);
        let a2 = build_root_system(Series::A, 2).unwrap();
        assert_eq!(a2.positive_roots.len(), 3);
        assert_eq!(a2.theta, Weight::from_ints(&[1, 1]));
        let d4 = build_root_system(Series::D, 4).unwrap();
        assert_eq!(d4.positive_roots.len(), 12);
        assert_eq!(d4.coxeter, 6);
        for (s, n, h) in [(Series::E, 6, 12), (Series::E, 7, 18), (Series::E, 8, 30), (Series::A, 4, 5)] {
            let rs = build_root_system(s, n).unwrap();
            assert_eq!(rs.coxeter, h);
        }
        assert!(build_root_system(Series::D, 3).is_err());
        assert!(build_root_system(Series::E, 9).is_err());
        assert!("B2".parse::<RootSystem>().is_err());
    }

    #[test]
    fn cartan_inverse_exact() {
        for name in ["A1", "A3", "D5", "E6", "E8"] {
            let rs: RootSystem = name.parse().unwrap();
            let n = rs.rank;
            for i in 0..n {
                for j in 0..n {
                    let s: Rat = (0..n).map(|k| rs.inverse_cartan[i][k] * rs.cartan[k][j]).sum();
                    assert_eq!(s, Rat::from_integer((i == j) as i64));
                }
            }
        }
    }

    #[test]
    fn inner_products() {
        let a1: RootSystem = "A1".parse().unwrap();
        let w = Weight::from_ints(&[1]);
        assert_eq!(inner_product(&a1, &w, &w).unwrap(), r(1, 2));
        let a2: RootSystem = "A2".parse().unwrap();
        let w1 = Weight::from_ints(&[1, 0]);
        let w2 = Weight::from_ints(&[0, 1]);
        assert_eq!(inner_product(&a2, &w1, &w2).unwrap(), r(1, 3));
        let d4: RootSystem = "D4".parse().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let ai = d4.root_to_weight_int(&(0..4).map(|k| (k == i) as i64).collect::<Vec<_>>());
                let aj = d4.root_to_weight_int(&(0..4).map(|k| (k == j) as i64).collect::<Vec<_>>());
                assert_eq!(d4.ip_int(&ai, &aj), Rat::from_integer(d4.cartan[i][j]));
            }
        }
        assert!(inner_product(&a2, &w, &w1).is_err());
    }

    #[test]
    fn rho_is_half_sum() {
        for name in ["A3", "D4", "E6"] {
            let rs: RootSystem = name.parse().unwrap();
            let mut s = vec![0i64; rs.rank];
            for a in &rs.positive_roots_weight {
                for (x, y) in s.iter_mut().zip(a) {
                    *x += y;
                }
            }
            assert!(s.iter().all(|&x| x == 2));
            assert!(rs.theta.is_dominant());
        }
    }

    #[test]
    fn group_orders_and_lengths() {
        let a1: RootSystem = "A1".parse().unwrap();
        let w = weyl_group(&a1).unwrap();
        assert_eq!(w.iter().map(|x| x.length).collect::<Vec<_>>(), vec![0, 1]);
        let a2: RootSystem = "A2".parse().unwrap();
        let w = weyl_group(&a2).unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(longest_element(&w).length, 3);
        let d4: RootSystem = "D4".parse().unwrap();
        let w = weyl_group(&d4).unwrap();
        assert_eq!(w.len(), 192);
        for x in &w {
            assert_eq!(x.count_inversions(&d4), x.length);
            assert_eq!(x.determinant(), x.sign());
        }
        let e7: RootSystem = "E7".parse().unwrap();
        assert!(matches!(weyl_group(&e7), Err(Error::GroupTooLarge { .. })));
        assert!(matches!(weyl_group_bounded(&d4, 100), Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn group_preserves_form() {
        let rs: RootSystem = "A3".parse().unwrap();
        let w = weyl_group(&rs).unwrap();
        let x = [1, -2, 3];
        let y = [0, 5, -1];
        for g in &w {
            assert_eq!(rs.ip_int(&g.act_int(&x), &g.act_int(&y)), rs.ip_int(&x, &y));
            let gi = g.inverse(&rs);
            assert_eq!(gi.act_int(&g.act_int(&x)), x.to_vec());
            assert_eq!(gi.count_inversions(&rs), g.length);
        }
    }

    #[test]
    fn longest_element_negates_dominant_cone() {
        for name in ["A2", "A3", "D4", "D5"] {
            let rs: RootSystem = name.parse().unwrap();
            let w = weyl_group(&rs).unwrap();
            let w0 = longest_element(&w);
            for i in 0..rs.rank {
                let mut e = vec![0; rs.rank];
                e[i] = 1;
                let img: Vec<i64> = w0.act_int(&e).into_iter().map(|x| -x).collect();
                assert_eq!(img.iter().filter(|&&x| x == 1).count(), 1);
                assert_eq!(img.iter().filter(|&&x| x == 0).count(), rs.rank - 1);
            }
        }
    }

    #[test]
    fn dot_action_examples() {
        let a1: RootSystem = "A1".parse().unwrap();
        let w = weyl_group(&a1).unwrap();
        let b = Weight::from_ints(&[3]);
        assert_eq!(dot_action(&a1, &w[0], &b).unwrap(), b);
        assert_eq!(dot_action(&a1, &w[1], &b).unwrap(), Weight::from_ints(&[-5]));
        let a2: RootSystem = "A2".parse().unwrap();
        let w = weyl_group(&a2).unwrap();
        let w0 = longest_element(&w);
        assert_eq!(dot_action(&a2, w0, &Weight::zero(2)).unwrap(), Weight::from_ints(&[-2, -2]));
    }

    #[test]
    fn dot_action_is_action() {
        let rs: RootSystem = "A2".parse().unwrap();
        let w = weyl_group(&rs).unwrap();
        let beta = Weight::new(vec![r(3, 2), r(-4, 1)]);
        for u in &w {
            for v in &w {
                let uv = u.compose(v, &rs);
                let lhs = dot_action(&rs, &uv, &beta).unwrap();
                let rhs = dot_action(&rs, u, &dot_action(&rs, v, &beta).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn minuscule() {
        let a1: RootSystem = "A1".parse().unwrap();
        assert_eq!(minuscule_weights(&a1), vec![Weight::zero(1), Weight::from_ints(&[1])]);
        let a2: RootSystem = "A2".parse().unwrap();
        assert_eq!(minuscule_weights(&a2).len(), 3);
        let e8: RootSystem = "E8".parse().unwrap();
        assert_eq!(minuscule_weights(&e8), vec![Weight::zero(8)]);
        let d4: RootSystem = "D4".parse().unwrap();
        assert_eq!(minuscule_weights(&d4).len(), 4);
        let e6: RootSystem = "E6".parse().unwrap();
        assert_eq!(minuscule_weights(&e6).len(), 3);
    }

    #[test]
    fn basis_round_trip() {
        let rs: RootSystem = "D5".parse().unwrap();
        let w = Weight::new(vec![r(1, 2), r(-3, 1), r(0, 1), r(7, 3), r(2, 5)]);
        assert_eq!(rs.root_to_weight(&rs.weight_to_root(&w)), w);
    }

    #[test]
    fn table_text_round_trip() {
        let rs: RootSystem = "A3".parse().unwrap();
        let w = weyl_group(&rs).unwrap();
        let text = weyl_table_to_text(&w);
        assert_eq!(text.lines().count(), 24);
        assert_eq!(weyl_table_from_text(&rs, &text).unwrap(), w);
        assert!(weyl_table_from_text(&rs, "1 0 0 0").is_err());
    }

    #[test]
    fn e6_enumerates() {
        let rs: RootSystem = "E6".parse().unwrap();
        assert_eq!(weyl_group(&rs).unwrap().len(), 51840);
    }
}
