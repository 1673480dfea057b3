//! Sparse truncated q-series with rational exponents and integer
//! coefficients, carrying a symbolic `eta(q)^k` prefactor.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Rat, Result};

/// Coefficient ring of a series.
pub trait Coeff:
    Clone + Integer + Signed + FromPrimitive + fmt::Display + fmt::Debug + Send + Sync + 'static
{
}

impl<T> Coeff for T where
    T: Clone + Integer + Signed + FromPrimitive + fmt::Display + fmt::Debug + Send + Sync + 'static
{
}

/// `eta(q)^eta_power * sum c_e q^e`, known exactly for exponents `<= trunc`.
#[derive(Clone, Debug)]
pub struct Series<C> {
    terms: BTreeMap<Rat, C>,
    trunc: Rat,
    eta_power: i64,
}

fn coeff_from_i64<C: Coeff>(x: i64) -> C {
    C::from_i64(x).expect("coefficient ring holds i64")
}

impl<C: Coeff> Series<C> {
    pub fn zero(trunc: Rat) -> Self {
        Series { terms: BTreeMap::new(), trunc, eta_power: 0 }
    }

    /// Sums repeated exponents and drops zero coefficients and exponents
    /// above `trunc`.
    pub fn from_terms<I: IntoIterator<Item = (Rat, C)>>(terms: I, trunc: Rat, eta_power: i64) -> Self {
        let mut s = Series { terms: BTreeMap::new(), trunc, eta_power };
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    /// Adds `c q^e` in place, ignoring exponents above the truncation.
    pub fn add_term(&mut self, e: Rat, c: C) {
        if e > self.trunc || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(C::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn trunc(&self) -> Rat {
        self.trunc
    }

    pub fn eta_power(&self) -> i64 {
        self.eta_power
    }

    /// Replaces the symbolic eta prefactor without touching the terms.
    pub fn with_eta_power(mut self, k: i64) -> Self {
        self.eta_power = k;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Rat) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<Rat> {
        self.terms.keys().next().copied()
    }

    /// Minimal positive D with every exponent in `Z/D`.
    pub fn denom(&self) -> i64 {
        self.terms.keys().fold(1i64, |acc, e| acc.lcm(e.denom()))
    }

    /// Terms as `(e, c)` meaning `c q^{e/D}` with `D = denom()`.
    pub fn scaled_terms(&self) -> Vec<(i64, C)> {
        let d = self.denom();
        self.terms
            .iter()
            .map(|(e, c)| ((e * d).to_integer(), c.clone()))
            .collect()
    }

    pub fn truncate(&self, t: Rat) -> Self {
        let t = t.min(self.trunc);
        Series {
            terms: self.terms.range(..=t).map(|(e, c)| (*e, c.clone())).collect(),
            trunc: t,
            eta_power: self.eta_power,
        }
    }

    /// Multiplies by `q^s`.
    pub fn shift(&self, s: Rat) -> Self {
        Series {
            terms: self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect(),
            trunc: self.trunc + s,
            eta_power: self.eta_power,
        }
    }

    pub fn neg(&self) -> Self {
        Series {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
            trunc: self.trunc,
            eta_power: self.eta_power,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.eta_power != other.eta_power {
            return Err(Error::Series(format!(
                "cannot add series with eta powers {} and {}",
                self.eta_power, other.eta_power
            )));
        }
        let mut out = self.truncate(self.trunc.min(other.trunc));
        for (e, c) in other.terms.range(..=out.trunc) {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Multiplies by a rational; fails unless every coefficient stays integral.
    pub fn scale(&self, c: Rat) -> Result<Self> {
        let num: C = coeff_from_i64(*c.numer());
        let den: C = coeff_from_i64(*c.denom());
        let mut terms = BTreeMap::new();
        for (e, x) in &self.terms {
            let y = x.clone() * num.clone();
            if !y.is_multiple_of(&den) {
                return Err(Error::Series(format!("scaling by {c} leaves a non-integral coefficient")));
            }
            let y = y / den.clone();
            if !y.is_zero() {
                terms.insert(*e, y);
            }
        }
        Ok(Series { terms, trunc: self.trunc, eta_power: self.eta_power })
    }

    /// Truncated Cauchy product; the result is known up to
    /// `min(trunc_a + val_b, trunc_b + val_a)`. Eta powers add.
    pub fn mul(&self, other: &Self) -> Self {
        let va = self.valuation().unwrap_or(self.trunc);
        let vb = other.valuation().unwrap_or(other.trunc);
        let t = (self.trunc + vb).min(other.trunc + va);
        let mut out = Series { terms: BTreeMap::new(), trunc: t, eta_power: self.eta_power + other.eta_power };
        for (ea, ca) in &self.terms {
            for (eb, cb) in other.terms.range(..=(t - ea)) {
                out.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Multiplies out `eta^k` for `k = eta_power - target`, leaving the
    /// symbolic prefactor `eta^target`.
    pub fn rebase_eta(&self, target: i64) -> Self {
        let k = self.eta_power - target;
        if k == 0 {
            return self.clone();
        }
        let shift = Rat::new(k, 24);
        let v = self.valuation().unwrap_or(self.trunc);
        let factor = euler_power::<C>(k, self.trunc - v).shift(shift);
        let mut out = Series { eta_power: 0, ..self.clone() }.mul(&factor);
        out.eta_power = target;
        out
    }

    /// Multiplies out the full eta prefactor.
    pub fn expand_eta(&self) -> Self {
        self.rebase_eta(0)
    }

    /// Equality over the common truncation range after rebasing both sides
    /// to the smaller eta power.
    pub fn equals(&self, other: &Self) -> bool {
        let k = self.eta_power.min(other.eta_power);
        let a = self.rebase_eta(k);
        let b = other.rebase_eta(k);
        let t = a.trunc.min(b.trunc);
        a.terms.range(..=t).eq(b.terms.range(..=t))
    }

    /// Number of exponents `<= t` where the series differ (same eta power).
    pub fn mismatches(&self, other: &Self, t: Rat) -> usize {
        let mut keys: Vec<&Rat> = self.terms.range(..=t).map(|(e, _)| e).collect();
        keys.extend(other.terms.range(..=t).map(|(e, _)| e));
        keys.sort();
        keys.dedup();
        keys.into_iter().filter(|e| self.coeff(e) != other.coeff(e)).count()
    }
}

impl<C: Coeff> PartialEq for Series<C> {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl<C: Coeff> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let unit = a.is_one();
            if e.is_zero() {
                write!(f, "{a}")?;
            } else {
                if !unit {
                    write!(f, "{a}*")?;
                }
                if e.is_integer() {
                    write!(f, "q^{e}")?;
                } else {
                    write!(f, "q^({e})")?;
                }
            }
        }
        write!(f, " + O(q^({}))", self.trunc)?;
        if self.eta_power != 0 {
            write!(f, " [eta^{}]", self.eta_power)?;
        }
        Ok(())
    }
}

pub fn monomial<C: Coeff>(exponent: Rat, coeff: C, trunc: Rat) -> Series<C> {
    Series::from_terms([(exponent, coeff)], trunc, 0)
}

pub fn add<C: Coeff>(a: &Series<C>, b: &Series<C>) -> Result<Series<C>> {
    a.add(b)
}

pub fn scale<C: Coeff>(a: &Series<C>, c: Rat) -> Result<Series<C>> {
    a.scale(c)
}

pub fn mul<C: Coeff>(a: &Series<C>, b: &Series<C>) -> Series<C> {
    a.mul(b)
}

/// `prod_{n>=1} (1 - q^n)` up to `q^T`, from the pentagonal number theorem.
pub fn euler_product<C: Coeff>(trunc: Rat) -> Series<C> {
    let mut s = Series::zero(trunc);
    let mut k: i64 = 0;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let a = Rat::from_integer(k * (3 * k - 1) / 2);
        let b = Rat::from_integer(k * (3 * k + 1) / 2);
        if a > trunc && b > trunc {
            break;
        }
        s.add_term(a, coeff_from_i64(sign));
        if k > 0 {
            s.add_term(b, coeff_from_i64(sign));
        }
        k += 1;
    }
    s
}

/// `prod_{n>=1} (1 - q^n)^k` for any integer k.
pub fn euler_power<C: Coeff>(k: i64, trunc: Rat) -> Series<C> {
    let base = euler_product::<C>(trunc);
    let base = if k >= 0 { base } else { invert_unit(&base) };
    let mut out = monomial(Rat::zero(), C::one(), trunc);
    for _ in 0..k.unsigned_abs() {
        out = out.mul(&base);
    }
    out
}

/// Inverse of an integral-exponent series with constant term 1.
fn invert_unit<C: Coeff>(f: &Series<C>) -> Series<C> {
    let n = f.trunc.floor().to_integer().max(-1);
    let fc: Vec<C> = (0..=n.max(0)).map(|i| f.coeff(&Rat::from_integer(i))).collect();
    let mut g: Vec<C> = Vec::with_capacity(fc.len());
    if n >= 0 {
        g.push(C::one());
    }
    for m in 1..=n.max(0) as usize {
        let mut acc = C::zero();
        for j in 1..=m {
            acc = acc - fc[j].clone() * g[m - j].clone();
        }
        g.push(acc);
    }
    Series::from_terms(
        g.into_iter().enumerate().map(|(i, c)| (Rat::from_integer(i as i64), c)),
        f.trunc,
        0,
    )
}

/// `sum_{n>=0} q^{(2pn+a)^2/4p} - q^{(2pn+2p-a)^2/4p}`.
pub fn false_theta<C: Coeff>(p: i64, a: i64, trunc: Rat) -> Result<Series<C>> {
    if p < 1 || a < 0 || a > 2 * p {
        return Err(Error::Series(format!("false theta needs p >= 1 and 0 <= a <= 2p, got p={p}, a={a}")));
    }
    let mut s = Series::zero(trunc);
    let mut n = 0i64;
    loop {
        let x = 2 * p * n + a;
        let y = 2 * p * n + 2 * p - a;
        let ex = Rat::new(x * x, 4 * p);
        let ey = Rat::new(y * y, 4 * p);
        if ex > trunc && ey > trunc {
            break;
        }
        s.add_term(ex, C::one());
        s.add_term(ey, -C::one());
        n += 1;
    }
    Ok(s)
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    denom: i64,
    eta_power: i64,
    trunc: String,
    terms: Vec<(i64, i64)>,
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            Ok(Rat::new(a, b))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Series<i64> {
    pub fn to_json(&self) -> String {
        let j = SeriesJson {
            denom: self.denom(),
            eta_power: self.eta_power,
            trunc: self.trunc.to_string(),
            terms: self.scaled_terms(),
        };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: SeriesJson = serde_json::from_str(text)?;
        if j.denom <= 0 {
            return Err(Error::Parse("denom must be positive".into()));
        }
        let trunc = parse_rat(&j.trunc)?;
        let mut s = Series::zero(trunc).with_eta_power(j.eta_power);
        for (e, c) in j.terms {
            let e = Rat::new(e, j.denom);
            if e > trunc {
                return Err(Error::Parse(format!("term q^{e} above truncation {trunc}")));
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    /// `exponent,coefficient` rows with exact fraction exponents.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("exponent,coefficient\n");
        for (e, c) in &self.terms {
            out.push_str(&format!("{e},{c}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type S = Series<i64>;

    fn r(a: i64, b: i64) -> Rat {
        Rat::new(a, b)
    }

    fn ser(terms: &[(i64, i64, i64)], t: i64) -> S {
        Series::from_terms(terms.iter().map(|&(a, b, c)| (r(a, b), c)), Rat::from_integer(t), 0)
    }

    #[test]
    fn monomials() {
        let m = monomial(r(1, 8), 1i64, r(10, 1));
        assert_eq!(m.scaled_terms(), vec![(1, 1)]);
        assert_eq!(m.denom(), 8);
        assert!(monomial(r(11, 1), 1i64, r(10, 1)).is_zero());
        assert_eq!(monomial(r(0, 1), -3i64, r(10, 1)).coeff(&r(0, 1)), -3);
    }

    #[test]
    fn arithmetic_examples() {
        let t = r(10, 1);
        let a = monomial(r(1, 8), 1i64, t);
        assert!(a.add(&a.neg()).unwrap().is_zero());
        let p = monomial(r(1, 2), 1i64, t).mul(&monomial(r(1, 3), 1, t));
        assert_eq!(p.scaled_terms(), vec![(5, 1)]);
        assert_eq!(p.denom(), 6);
        let a = ser(&[(0, 1, 1), (1, 1, -1)], 2);
        let b = ser(&[(0, 1, 1), (1, 1, 1), (2, 1, 1)], 2);
        let prod = a.mul(&b);
        assert_eq!(prod.trunc(), r(2, 1));
        assert_eq!(prod.scaled_terms(), vec![(0, 1)]);
    }

    #[test]
    fn eta_mismatch_rejected() {
        let a = monomial(r(0, 1), 1i64, r(3, 1));
        let b = a.clone().with_eta_power(-1);
        assert!(a.add(&b).is_err());
        assert!(a.scale(r(1, 2)).is_err());
        assert_eq!(ser(&[(0, 1, 4)], 3).scale(r(3, 2)).unwrap().coeff(&r(0, 1)), 6);
    }

    #[test]
    fn euler_examples() {
        let e: S = euler_product(r(8, 1));
        assert_eq!(e, ser(&[(0, 1, 1), (1, 1, -1), (2, 1, -1), (5, 1, 1), (7, 1, 1)], 8));
        let e0: S = euler_product(r(0, 1));
        assert_eq!(e0.scaled_terms(), vec![(0, 1)]);
        let e12: S = euler_product(r(20, 1));
        assert_eq!(e12.coeff(&r(12, 1)), -1);
    }

    #[test]
    fn euler_matches_literal_product() {
        for t in 0..=30 {
            let tr = Rat::from_integer(t);
            let mut lit: S = monomial(r(0, 1), 1, tr);
            for n in 1..=t {
                lit = lit.mul(&ser(&[(0, 1, 1), (n, 1, -1)], t));
            }
            assert_eq!(euler_product::<i64>(tr), lit, "T={t}");
        }
    }

    #[test]
    fn inverse_euler_counts_partitions() {
        let p: S = euler_power(-1, r(10, 1));
        let want = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(p.coeff(&Rat::from_integer(n as i64)), *w);
        }
        let one = p.mul(&euler_product(r(10, 1)));
        assert_eq!(one.scaled_terms(), vec![(0, 1)]);
    }

    #[test]
    fn false_theta_examples() {
        let f: S = false_theta(2, 1, r(10, 1)).unwrap();
        assert_eq!(f, ser(&[(1, 8, 1), (9, 8, -1), (25, 8, 1), (49, 8, -1)], 10));
        let g: S = false_theta(3, 1, r(11, 1)).unwrap();
        assert_eq!(g, ser(&[(1, 12, 1), (25, 12, -1), (49, 12, 1), (121, 12, -1)], 11));
        for p in 1..8 {
            assert!(false_theta::<i64>(p, p, r(40, 1)).unwrap().is_zero());
            for a in 0..=2 * p {
                let s = false_theta::<i64>(p, a, r(40, 1)).unwrap();
                let t = false_theta::<i64>(p, 2 * p - a, r(40, 1)).unwrap();
                assert!(s.add(&t).unwrap().is_zero());
            }
        }
        assert!(false_theta::<i64>(3, 7, r(1, 1)).is_err());
    }

    #[test]
    fn eta_rebase_and_equality() {
        let t = r(6, 1);
        let a: S = monomial(r(1, 8), 1, t).with_eta_power(-1);
        let expanded = a.expand_eta();
        assert_eq!(expanded.eta_power(), 0);
        assert_eq!(expanded.valuation(), Some(r(1, 8) - r(1, 24)));
        assert_eq!(a, expanded);
        // Re-multiplying by eta^{+1} recovers the original terms.
        let back = expanded.mul(&euler_product::<i64>(t).shift(r(1, 24)));
        assert_eq!(back.truncate(t).scaled_terms(), a.scaled_terms());
    }

    #[test]
    fn json_and_csv_round_trip() {
        let f: S = false_theta(2, 1, r(10, 1)).unwrap().with_eta_power(-1);
        let j = f.to_json();
        assert_eq!(j, r#"{"denom":8,"eta_power":-1,"trunc":"10","terms":[[1,1],[9,-1],[25,1],[49,-1]]}"#);
        let g = S::from_json(&j).unwrap();
        assert_eq!(g.to_json(), j);
        assert!(S::from_json(r#"{"denom":0,"eta_power":0,"trunc":"1","terms":[]}"#).is_err());
        assert_eq!(f.to_csv(), "exponent,coefficient\n1/8,1\n9/8,-1\n25/8,1\n49/8,-1\n");
    }

    #[test]
    fn bigint_coefficients() {
        let a: Series<BigInt> = euler_power(-3, r(12, 1));
        let b: Series<i64> = euler_power(-3, r(12, 1));
        let back: Vec<i64> = a.terms().map(|(_, c)| i64::try_from(c.clone()).unwrap()).collect();
        assert_eq!(back, b.terms().map(|(_, c)| *c).collect::<Vec<_>>());
    }

    fn arb_series() -> impl Strategy<Value = S> {
        proptest::collection::vec((0i64..40, 1i64..7, -5i64..6), 0..8)
            .prop_map(|v| Series::from_terms(v.into_iter().map(|(a, b, c)| (r(a, b), c)), r(8, 1), 0))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            let lhs = a.mul(&b.add(&c).unwrap());
            let rhs = a.mul(&b).add(&a.mul(&c)).unwrap();
            let t = lhs.trunc().min(rhs.trunc());
            prop_assert_eq!(lhs.truncate(t).scaled_terms(), rhs.truncate(t).scaled_terms());
        }

        #[test]
        fn json_round_trip(a in arb_series()) {
            prop_assert_eq!(S::from_json(&a.to_json()).unwrap().scaled_terms(), a.scaled_terms());
        }
    }
}
