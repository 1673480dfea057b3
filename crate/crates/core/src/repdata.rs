//! Kostant partition function, its convolution powers, the Weyl dimension
//! formula and weight multiplicities (Kostant and Freudenthal).

use std::collections::{HashMap, HashSet};

use num_rational::Ratio;

use crate::rootsys::{RootCoord, RootSystem, Weight, WeylElement};
use crate::{Error, Result};

/// Largest number of entries a dense partition table may hold.
pub const MAX_TABLE_ENTRIES: usize = 50_000_000;

/// Dense table of a function on the box `[0, bound]^rank` of root coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTable {
    rank: usize,
    bound: usize,
    data: Vec<u64>,
}

struct BoxIter {
    cur: Vec<i64>,
    bound: i64,
    done: bool,
}

impl Iterator for BoxIter {
    type Item = Vec<i64>;
    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        // Odometer with the last coordinate fastest, matching the flat index.
        let mut i = self.cur.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.cur[i] < self.bound {
                self.cur[i] += 1;
                break;
            }
            self.cur[i] = 0;
        }
        Some(out)
    }
}

impl PartitionTable {
    fn empty(rank: usize, bound: usize) -> Result<Self> {
        let size = (bound + 1)
            .checked_pow(rank as u32)
            .filter(|&s| s <= MAX_TABLE_ENTRIES)
            .ok_or_else(|| Error::Rep(format!("partition box {bound}^{rank} too large")))?;
        Ok(PartitionTable { rank, bound, data: vec![0; size] })
    }

    /// Kostant's partition function on the box `[0, bound]^rank`.
    pub fn build(rs: &RootSystem, bound: usize) -> Result<Self> {
        let mut t = Self::empty(rs.rank, bound)?;
        t.data[0] = 1;
        let b = bound as i64;
        for root in &rs.positive_roots {
            // Increasing flat index visits k - root before k.
            for idx in 0..t.data.len() {
                let k = t.coords(idx);
                let prev: Vec<i64> = k.iter().zip(root).map(|(a, r)| a - r).collect();
                if prev.iter().all(|&v| v >= 0 && v <= b) {
                    let v = t.data[t.index(&prev)];
                    t.data[idx] = t.data[idx].checked_add(v).ok_or(Error::Overflow("partition table"))?;
                }
            }
        }
        Ok(t)
    }

    /// `K_n`, the n-fold convolution power of the partition function.
    pub fn convolution_power(rs: &RootSystem, n: usize, bound: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Rep("convolution power must be positive".into()));
        }
        Self::build(rs, bound)?.power(n)
    }

    /// `n`-fold convolution power of this table.
    pub fn power(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Rep("convolution power must be positive".into()));
        }
        let mut k = self.clone();
        for _ in 1..n {
            k = k.convolve(self)?;
        }
        Ok(k)
    }

    /// The same table on the smaller box `[0, bound]^rank`.
    pub fn restrict(&self, bound: usize) -> Option<Self> {
        if bound > self.bound {
            return None;
        }
        let mut out = Self::empty(self.rank, bound).ok()?;
        for idx in 0..out.data.len() {
            let k = out.coords(idx);
            out.data[idx] = self.data[self.index(&k)];
        }
        Some(out)
    }

    pub fn convolve(&self, other: &PartitionTable) -> Result<Self> {
        if self.rank != other.rank || self.bound != other.bound {
            return Err(Error::Rep("convolving tables of different shape".into()));
        }
        let mut out = Self::empty(self.rank, self.bound)?;
        for idx in 0..out.data.len() {
            let k = out.coords(idx);
            let mut acc: u64 = 0;
            let mut a = vec![0i64; self.rank];
            loop {
                let x = self.data[self.index(&a)];
                if x != 0 {
                    let rest: Vec<i64> = k.iter().zip(&a).map(|(u, v)| u - v).collect();
                    let y = other.data[other.index(&rest)];
                    acc = x
                        .checked_mul(y)
                        .and_then(|z| acc.checked_add(z))
                        .ok_or(Error::Overflow("partition convolution"))?;
                }
                // Odometer over 0 <= a <= k.
                let mut i = self.rank;
                let mut carried_out = true;
                while i > 0 {
                    i -= 1;
                    if a[i] < k[i] {
                        a[i] += 1;
                        carried_out = false;
                        break;
                    }
                    a[i] = 0;
                }
                if carried_out {
                    break;
                }
            }
            out.data[idx] = acc;
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn index(&self, k: &[i64]) -> usize {
        k.iter().fold(0usize, |acc, &c| acc * (self.bound + 1) + c as usize)
    }

    fn coords(&self, mut idx: usize) -> Vec<i64> {
        let mut k = vec![0i64; self.rank];
        for c in k.iter_mut().rev() {
            *c = (idx % (self.bound + 1)) as i64;
            idx /= self.bound + 1;
        }
        k
    }

    pub fn contains(&self, k: &[i64]) -> bool {
        k.iter().all(|&c| c <= self.bound as i64)
    }

    /// Value at `k`; zero off the positive cone. `None` outside the box.
    pub fn get(&self, k: &[i64]) -> Option<u64> {
        if k.iter().any(|&c| c < 0) {
            return Some(0);
        }
        self.contains(k).then(|| self.data[self.index(k)])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<i64>, u64)> + '_ {
        BoxIter { cur: vec![0; self.rank], bound: self.bound as i64, done: false }
            .zip(self.data.iter().copied())
    }

    /// Header line `series rank bound`, then one `coords... value` per line.
    pub fn to_text(&self, rs: &RootSystem) -> String {
        let mut s = format!("{} {} {}\n", rs.series, self.rank, self.bound);
        for (k, v) in self.iter() {
            for c in k {
                s.push_str(&c.to_string());
                s.push(' ');
            }
            s.push_str(&v.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(rs: &RootSystem, text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().unwrap_or("").split_whitespace().collect();
        let bad = |m: &str| Error::Parse(format!("partition table: {m}"));
        if header.len() != 3 || header[0] != rs.series.to_string() || header[1] != rs.rank.to_string() {
            return Err(bad("header does not match root system"));
        }
        let bound: usize = header[2].parse().map_err(|_| bad("bad bound"))?;
        let mut t = Self::empty(rs.rank, bound)?;
        let mut count = 0;
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let vals: Vec<i64> = line
                .split_whitespace()
                .map(|x| x.parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("bad entry"))?;
            if vals.len() != rs.rank + 1 || !t.contains(&vals[..rs.rank]) || vals.iter().any(|&v| v < 0) {
                return Err(bad("entry has wrong shape"));
            }
            let idx = t.index(&vals[..rs.rank]);
            t.data[idx] = vals[rs.rank] as u64;
            count += 1;
        }
        if count != t.data.len() {
            return Err(bad("missing entries"));
        }
        Ok(t)
    }
}

fn integral_root_coords(rs: &RootSystem, g: &RootCoord) -> Result<Vec<i64>> {
    rs.check_rank(g.coords.len())?;
    g.to_ints().ok_or_else(|| Error::Rep("root coordinates must be integral".into()))
}

/// Number of ways to write `gamma` as a sum of positive roots.
pub fn kostant_partition(rs: &RootSystem, gamma: &RootCoord) -> Result<u64> {
    let g = integral_root_coords(rs, gamma)?;
    if g.iter().any(|&c| c < 0) {
        return Ok(0);
    }
    let bound = *g.iter().max().unwrap_or(&0) as usize;
    Ok(PartitionTable::build(rs, bound)?.get(&g).unwrap_or(0))
}

/// `K_N(gamma)`: number of ordered N-tuples of partitions summing to gamma.
pub fn kostant_convolution(rs: &RootSystem, n: usize, gamma: &RootCoord) -> Result<u64> {
    let g = integral_root_coords(rs, gamma)?;
    if g.iter().any(|&c| c < 0) {
        return Ok(0);
    }
    let bound = *g.iter().max().unwrap_or(&0) as usize;
    Ok(PartitionTable::convolution_power(rs, n, bound)?.get(&g).unwrap_or(0))
}

fn dominant_ints(rs: &RootSystem, beta: &Weight) -> Result<Vec<i64>> {
    rs.check_rank(beta.rank())?;
    match beta.to_ints() {
        Some(v) if v.iter().all(|&x| x >= 0) => Ok(v),
        _ => Err(Error::Rep(format!("{beta} is not dominant integral"))),
    }
}

/// Weyl dimension formula.
pub fn weyl_dim(rs: &RootSystem, beta: &Weight) -> Result<u64> {
    let b = dominant_ints(rs, beta)?;
    Ok(weyl_dim_int(rs, &b))
}

pub fn weyl_dim_int(rs: &RootSystem, b: &[i64]) -> u64 {
    let mut acc = Ratio::<i128>::from_integer(1);
    for root in &rs.positive_roots {
        let num: i128 = root.iter().zip(b).map(|(&c, &x)| (c * (x + 1)) as i128).sum();
        let den: i128 = root.iter().map(|&c| c as i128).sum();
        acc *= Ratio::new(num, den);
    }
    acc.to_integer() as u64
}

/// Root coordinates of an integral weight, if it lies in the root lattice.
pub fn weight_to_root_int(rs: &RootSystem, x: &[i64]) -> Option<Vec<i64>> {
    let n = rs.rank;
    let den = rs.gram_den();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        // Root coordinate i equals (x, varpi_i).
        let s = rs.ip_scaled(&e, x);
        if s % den != 0 {
            return None;
        }
        out.push(s / den);
    }
    Some(out)
}

/// Kostant's multiplicity formula evaluated against a precomputed group and
/// partition table.
pub struct KostantMultiplicity<'a> {
    rs: &'a RootSystem,
    weyl: &'a [WeylElement],
    table: PartitionTable,
}

impl<'a> KostantMultiplicity<'a> {
    pub fn new(rs: &'a RootSystem, weyl: &'a [WeylElement], bound: usize) -> Result<Self> {
        Ok(KostantMultiplicity { rs, weyl, table: PartitionTable::build(rs, bound)? })
    }

    /// Table bound sufficient for all weights of `L(beta)`.
    pub fn bound_for(rs: &RootSystem, weyl: &[WeylElement], beta: &[i64]) -> usize {
        let w0 = crate::rootsys::longest_element(weyl);
        let low = w0.act_int(beta);
        let diff: Vec<i64> = beta.iter().zip(&low).map(|(a, b)| a - b).collect();
        weight_to_root_int(rs, &diff)
            .map(|g| g.into_iter().max().unwrap_or(0).max(0) as usize)
            .unwrap_or(0)
    }

    pub fn mult(&self, beta: &[i64], mu: &[i64]) -> Result<u64> {
        let diff: Vec<i64> = beta.iter().zip(mu).map(|(a, b)| a - b).collect();
        let Some(g) = weight_to_root_int(self.rs, &diff) else {
            return Ok(0);
        };
        if g.iter().any(|&c| c < 0) {
            return Ok(0);
        }
        let (dom, _) = self.rs.dominant_conjugate(mu);
        let below: Vec<i64> = beta.iter().zip(&dom).map(|(a, b)| a - b).collect();
        if weight_to_root_int(self.rs, &below).is_none_or(|g| g.iter().any(|&c| c < 0)) {
            return Ok(0);
        }
        let shifted: Vec<i64> = beta.iter().map(|b| b + 1).collect();
        let mut total: i64 = 0;
        for w in self.weyl {
            let img = w.act_int(&shifted);
            let x: Vec<i64> = img.iter().zip(mu).map(|(a, m)| a - m - 1).collect();
            let Some(gam) = weight_to_root_int(self.rs, &x) else {
                continue;
            };
            let v = self
                .table
                .get(&gam)
                .ok_or_else(|| Error::Rep("partition table too small for multiplicity".into()))?;
            total += w.sign() * v as i64;
        }
        if total < 0 {
            return Err(Error::Rep("negative multiplicity".into()));
        }
        Ok(total as u64)
    }
}

pub fn multiplicity_kostant(rs: &RootSystem, beta: &Weight, mu: &Weight) -> Result<u64> {
    let b = dominant_ints(rs, beta)?;
    rs.check_rank(mu.rank())?;
    let Some(m) = mu.to_ints() else {
        return Ok(0);
    };
    let weyl = crate::rootsys::weyl_group(rs)?;
    let bound = KostantMultiplicity::bound_for(rs, &weyl, &b);
    KostantMultiplicity::new(rs, &weyl, bound)?.mult(&b, &m)
}

/// Multiplicities of the dominant weights of `L(beta)` (Freudenthal).
#[derive(Clone, Debug)]
pub struct DominantCharacter {
    pub highest: Vec<i64>,
    pub mults: HashMap<Vec<i64>, u64>,
}

impl DominantCharacter {
    pub fn multiplicity(&self, rs: &RootSystem, mu: &[i64]) -> u64 {
        let (d, _) = rs.dominant_conjugate(mu);
        self.mults.get(&d).copied().unwrap_or(0)
    }

    /// Every weight of `L(beta)` with its multiplicity, sorted.
    pub fn weights(&self, rs: &RootSystem) -> Vec<(Vec<i64>, u64)> {
        let mut out = Vec::new();
        for (d, &m) in &self.mults {
            for w in weyl_orbit(rs, d) {
                out.push((w, m));
            }
        }
        out.sort();
        out
    }
}

/// Orbit of an integral weight under W, by closure under simple reflections.
pub fn weyl_orbit(rs: &RootSystem, x: &[i64]) -> Vec<Vec<i64>> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(x.to_vec());
    let mut stack = vec![x.to_vec()];
    while let Some(v) = stack.pop() {
        for i in 0..rs.rank {
            if v[i] == 0 {
                continue;
            }
            let mut y = v.clone();
            rs.reflect_int(i, &mut y);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

pub fn dominant_character(rs: &RootSystem, beta: &[i64]) -> Result<DominantCharacter> {
    rs.check_rank(beta.len())?;
    if beta.iter().any(|&x| x < 0) {
        return Err(Error::Rep("highest weight must be dominant".into()));
    }
    let n = rs.rank;
    let rc = weight_to_root_rat(rs, beta);
    let caps: Vec<i64> = rc.iter().map(|c| c.floor().to_integer()).collect();

    // Dominant nu = beta - sum k_i alpha_i has nonnegative root coordinates,
    // so k_i <= root coordinate i of beta.
    let mut doms: Vec<(i64, Vec<i64>)> = Vec::new();
    let mut k = vec![0i64; n];
    loop {
        let mut nu = beta.to_vec();
        for (i, &ki) in k.iter().enumerate() {
            for j in 0..n {
                nu[j] -= ki * rs.cartan[i][j];
            }
        }
        if nu.iter().all(|&x| x >= 0) {
            doms.push((k.iter().sum(), nu));
        }
        let mut i = n;
        let mut finished = true;
        while i > 0 {
            i -= 1;
            if k[i] < caps[i] {
                k[i] += 1;
                finished = false;
                break;
            }
            k[i] = 0;
        }
        if finished {
            break;
        }
    }
    doms.sort();
    let dom_set: HashSet<Vec<i64>> = doms.iter().map(|(_, v)| v.clone()).collect();

    let shifted = |x: &[i64]| x.iter().map(|v| v + 1).collect::<Vec<i64>>();
    let bp = shifted(beta);
    let top = rs.ip_scaled(&bp, &bp);
    let mut mults: HashMap<Vec<i64>, u64> = HashMap::new();
    mults.insert(beta.to_vec(), 1);
    // tails[(a, x)] = sum_{k >= 0} m(x + k alpha_a) (x + k alpha_a, alpha_a); every
    // weight on the string above nu is processed before nu.
    let mut tails: HashMap<(usize, Vec<i64>), i64> = HashMap::new();
    for (_, nu) in doms.iter().skip(1) {
        let np = shifted(nu);
        let den = top - rs.ip_scaled(&np, &np);
        let mut num: i64 = 0;
        for (a, alpha) in rs.positive_roots_weight.iter().enumerate() {
            let step = |x: &[i64]| x.iter().zip(alpha).map(|(u, v)| u + v).collect::<Vec<i64>>();
            let mut pending: Vec<(Vec<i64>, i64)> = Vec::new();
            let mut x = step(nu);
            let mut acc = loop {
                if let Some(&t) = tails.get(&(a, x.clone())) {
                    break t;
                }
                let (d, _) = rs.dominant_conjugate(&x);
                if !dom_set.contains(&d) {
                    break 0;
                }
                let m = mults.get(&d).copied().unwrap_or(0) as i64;
                let next = step(&x);
                let term = m * rs.ip_scaled(&x, alpha);
                pending.push((x, term));
                x = next;
            };
            while let Some((y, term)) = pending.pop() {
                acc += term;
                tails.insert((a, y), acc);
            }
            num += acc;
        }
        num *= 2;
        if den <= 0 || num % den != 0 {
            return Err(Error::Rep(format!("Freudenthal recursion not integral at {nu:?}")));
        }
        mults.insert(nu.clone(), (num / den) as u64);
    }
    Ok(DominantCharacter { highest: beta.to_vec(), mults })
}

fn weight_to_root_rat(rs: &RootSystem, x: &[i64]) -> Vec<crate::Rat> {
    rs.weight_to_root(&Weight::from_ints(x)).coords
}

pub fn multiplicity_freudenthal(rs: &RootSystem, beta: &Weight, mu: &Weight) -> Result<u64> {
    let b = dominant_ints(rs, beta)?;
    rs.check_rank(mu.rank())?;
    let Some(m) = mu.to_ints() else {
        return Ok(0);
    };
    Ok(dominant_character(rs, &b)?.multiplicity(rs, &m))
}

/// Dominant weights with `dim L(beta) <= max_dim`.
pub fn dominant_weights_by_dim(rs: &RootSystem, max_dim: u64) -> Vec<Vec<i64>> {
    let zero = vec![0i64; rs.rank];
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(zero.clone());
    let mut stack = vec![zero];
    while let Some(b) = stack.pop() {
        for i in 0..rs.rank {
            let mut c = b.clone();
            c[i] += 1;
            if !seen.contains(&c) && weyl_dim_int(rs, &c) <= max_dim {
                seen.insert(c.clone());
                stack.push(c);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

/// Dominant integral weights with `|beta|^2 <= norm_sq`.
pub fn dominant_weights_within(rs: &RootSystem, norm_sq: crate::Rat) -> Vec<Vec<i64>> {
    let n = rs.rank;
    if norm_sq < crate::Rat::from_integer(0) {
        return Vec::new();
    }
    // Fundamental weights pair nonnegatively, so beta_i^2 |varpi_i|^2 <= |beta|^2.
    let caps: Vec<i64> = (0..n)
        .map(|i| {
            let wi = rs.inverse_cartan[i][i];
            let q = norm_sq / wi;
            let mut c = (*q.numer() as f64 / *q.denom() as f64).sqrt().floor() as i64 + 1;
            while crate::Rat::from_integer(c * c) > q {
                c -= 1;
            }
            c
        })
        .collect();
    let mut out = Vec::new();
    let mut k = vec![0i64; n];
    loop {
        if rs.ip_int(&k, &k) <= norm_sq {
            out.push(k.clone());
        }
        let mut i = n;
        let mut finished = true;
        while i > 0 {
            i -= 1;
            if k[i] < caps[i] {
                k[i] += 1;
                finished = false;
                break;
            }
            k[i] = 0;
        }
        if finished {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::weyl_group;

    fn rs(name: &str) -> RootSystem {
        name.parse().unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn partition_examples() {
        let a1 = rs("A1");
        let a2 = rs("A2");
        assert_eq!(kostant_partition(&a2, &RootCoord::from_ints(&[0, 0])).unwrap(), 1);
        for n in 0..20 {
            assert_eq!(kostant_partition(&a1, &RootCoord::from_ints(&[n])).unwrap(), 1);
        }
        assert_eq!(kostant_partition(&a2, &RootCoord::from_ints(&[2, 1])).unwrap(), 2);
        assert_eq!(kostant_partition(&a2, &RootCoord::from_ints(&[-1, 1])).unwrap(), 0);
    }

    #[test]
    fn convolution_examples() {
        let a1 = rs("A1");
        let a2 = rs("A2");
        let g = RootCoord::from_ints(&[1, 1]);
        assert_eq!(kostant_convolution(&a2, 1, &g).unwrap(), kostant_partition(&a2, &g).unwrap());
        assert_eq!(kostant_convolution(&a2, 2, &g).unwrap(), 6);
        for n in 0..30u64 {
            for big_n in 1..5u64 {
                let v = kostant_convolution(&a1, big_n as usize, &RootCoord::from_ints(&[n as i64])).unwrap();
                assert_eq!(v, binom(n + big_n - 1, big_n - 1));
            }
        }
    }

    #[test]
    fn convolution_matches_brute_force_splittings() {
        let a2 = rs("A2");
        let p = PartitionTable::build(&a2, 4).unwrap();
        let k2 = PartitionTable::convolution_power(&a2, 2, 4).unwrap();
        for (g, v) in k2.iter() {
            let mut brute = 0;
            for a0 in 0..=g[0] {
                for a1 in 0..=g[1] {
                    brute += p.get(&[a0, a1]).unwrap() * p.get(&[g[0] - a0, g[1] - a1]).unwrap();
                }
            }
            assert_eq!(v, brute);
        }
    }

    #[test]
    fn dims() {
        let a1 = rs("A1");
        let a2 = rs("A2");
        assert_eq!(weyl_dim(&a2, &Weight::zero(2)).unwrap(), 1);
        for k in 0..10 {
            assert_eq!(weyl_dim(&a1, &Weight::from_ints(&[k])).unwrap(), k as u64 + 1);
        }
        assert_eq!(weyl_dim(&a2, &Weight::from_ints(&[1, 1])).unwrap(), 8);
        assert_eq!(weyl_dim(&rs("D4"), &Weight::from_ints(&[0, 1, 0, 0])).unwrap(), 28);
        assert_eq!(weyl_dim(&rs("E8"), &Weight::from_ints(&[0, 0, 0, 0, 0, 0, 0, 1])).unwrap(), 248);
        assert!(weyl_dim(&a1, &Weight::from_ints(&[-1])).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let a1 = rs("A1");
        let a2 = rs("A2");
        let d4 = rs("D4");
        let th = Weight::from_ints(&[1, 1]);
        assert_eq!(multiplicity_kostant(&a2, &th, &th).unwrap(), 1);
        assert_eq!(multiplicity_kostant(&a2, &th, &Weight::zero(2)).unwrap(), 2);
        assert_eq!(multiplicity_freudenthal(&a2, &th, &Weight::zero(2)).unwrap(), 2);
        for k in 0..6i64 {
            for j in -2..k + 3 {
                let want = (0 <= j && j <= k) as u64;
                let mu = Weight::from_ints(&[k - 2 * j]);
                assert_eq!(multiplicity_kostant(&a1, &Weight::from_ints(&[k]), &mu).unwrap(), want);
            }
        }
        assert_eq!(multiplicity_freudenthal(&a1, &Weight::from_ints(&[3]), &Weight::from_ints(&[1])).unwrap(), 1);
        let adj = Weight::from_ints(&[0, 1, 0, 0]);
        assert_eq!(multiplicity_freudenthal(&d4, &adj, &Weight::zero(4)).unwrap(), 4);
        assert_eq!(multiplicity_kostant(&d4, &adj, &Weight::zero(4)).unwrap(), 4);
    }

    #[test]
    fn multiplicities_sum_to_dimension() {
        for (name, max_dim) in [("A2", 200), ("A3", 300), ("D4", 400)] {
            let r = rs(name);
            for b in dominant_weights_by_dim(&r, max_dim) {
                let ch = dominant_character(&r, &b).unwrap();
                let total: u64 = ch.weights(&r).iter().map(|(_, m)| m).sum();
                assert_eq!(total, weyl_dim_int(&r, &b), "{name} {b:?}");
            }
        }
    }

    #[test]
    fn a1_generating_identity() {
        // sum_n K_N(n alpha) x^n = (1 - x)^{-N}: coefficient recursion c_n = sum_{j<=n} c^{(N-1)}_j.
        let a1 = rs("A1");
        for big_n in 1..6 {
            let k = PartitionTable::convolution_power(&a1, big_n, 40).unwrap();
            let prev = if big_n == 1 { None } else { Some(PartitionTable::convolution_power(&a1, big_n - 1, 40).unwrap()) };
            for n in 0..=40i64 {
                let want = match &prev {
                    None => 1,
                    Some(t) => (0..=n).map(|j| t.get(&[j]).unwrap()).sum(),
                };
                assert_eq!(k.get(&[n]).unwrap(), want);
            }
        }
    }

    #[test]
    fn kostant_evaluator_bound() {
        let a3 = rs("A3");
        let w = weyl_group(&a3).unwrap();
        let b = vec![1, 0, 2];
        let bound = KostantMultiplicity::bound_for(&a3, &w, &b);
        let km = KostantMultiplicity::new(&a3, &w, bound).unwrap();
        let ch = dominant_character(&a3, &b).unwrap();
        for (mu, m) in ch.weights(&a3) {
            assert_eq!(km.mult(&b, &mu).unwrap(), m);
        }
    }

    #[test]
    fn table_text_round_trip() {
        let a2 = rs("A2");
        let t = PartitionTable::build(&a2, 5).unwrap();
        let text = t.to_text(&a2);
        assert_eq!(PartitionTable::from_text(&a2, &text).unwrap(), t);
        assert!(PartitionTable::from_text(&rs("A3"), &text).is_err());
        assert_eq!(t.restrict(3).unwrap(), PartitionTable::build(&a2, 3).unwrap());
        assert!(t.restrict(6).is_none());
        assert_eq!(t.restrict(3).unwrap().power(2).unwrap(), PartitionTable::convolution_power(&a2, 2, 3).unwrap());
    }

    #[test]
    fn dominant_enumeration() {
        let a2 = rs("A2");
        let ws = dominant_weights_within(&a2, crate::Rat::from_integer(2));
        for w in &ws {
            assert!(a2.ip_int(w, w) <= crate::Rat::from_integer(2));
        }
        assert!(ws.contains(&vec![1, 1]));
        assert!(!ws.contains(&vec![2, 0]));
        assert_eq!(ws.len(), 4);
        assert_eq!(dominant_weights_by_dim(&rs("A1"), 5).len(), 5);
    }
}
