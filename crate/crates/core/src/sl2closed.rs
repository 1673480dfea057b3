//! Closed-form sl2 series:
//! `sum_n binom(n+N-1, N-1) sum_{eps in {+-1}^N} (prod eps)
//! q^{(p/4)(2n + N + s - 1 - sum eps_i r_i/p_i)^2}`.

use num_integer::{binomial, Integer};
use num_traits::Zero;

use crate::qser::Series;
use crate::{Error, QSeries, Rat, Result};

pub fn example3_series(ps: &[i64], rs_: &[i64], s: i64, trunc: Rat) -> Result<QSeries> {
    let n_slots = ps.len();
    if n_slots == 0 || rs_.len() != n_slots {
        return Err(Error::Label("need matching nonempty p and r lists".into()));
    }
    if ps.iter().any(|&p| p < 2) || !(1..=2).contains(&s) {
        return Err(Error::Label("need p >= 2 and s in {1, 2}".into()));
    }
    for i in 0..n_slots {
        if rs_[i] < 1 || rs_[i] > ps[i] {
            return Err(Error::Label(format!("r={} outside [1, {}]", rs_[i], ps[i])));
        }
        for j in i + 1..n_slots {
            if ps[i].gcd(&ps[j]) != 1 {
                return Err(Error::Label("p values must be pairwise coprime".into()));
            }
        }
    }
    let p: i64 = ps.iter().product();
    let quarter_p = Rat::new(p, 4);
    let nn = n_slots as i64;
    let mut out = Series::zero(trunc).with_eta_power(-1);
    let r_sum: Rat = ps.iter().zip(rs_).map(|(&pi, &ri)| Rat::new(ri, pi)).sum();
    let mut n: i64 = 0;
    loop {
        // Every branch has argument >= 2n + N + s - 1 - sum r_i/p_i >= 0.
        let low = Rat::from_integer(2 * n + nn + s - 1) - r_sum;
        if quarter_p * low * low > trunc {
            break;
        }
        let c = binomial(n + nn - 1, nn - 1);
        for mask in 0..(1u32 << n_slots) {
            let mut x = Rat::from_integer(2 * n + nn + s - 1);
            let mut sign = 1;
            for i in 0..n_slots {
                let e = if mask >> i & 1 == 0 { 1 } else { -1 };
                sign *= e;
                x -= Rat::new(e * rs_[i], ps[i]);
            }
            out.add_term(quarter_p * x * x, sign * c);
        }
        n += 1;
    }
    Ok(out)
}

/// Counts compositions of n into N ordered nonnegative parts by enumeration
/// and compares with `binom(n+N-1, N-1)` for all `n <= n_max`.
pub fn compositions_identity_check(big_n: usize, n_max: usize) -> bool {
    fn count(parts: usize, total: usize) -> u64 {
        if parts == 1 {
            return 1;
        }
        (0..=total).map(|first| count(parts - 1, total - first)).sum()
    }
    if big_n == 0 {
        return false;
    }
    (0..=n_max).all(|n| {
        let want: u64 = binomial((n + big_n - 1) as u64, (big_n - 1) as u64);
        count(big_n, n) == want
    })
}

/// Leading exponent of the series, or zero if it vanishes identically.
pub fn example3_min_exponent(ps: &[i64], rs_: &[i64], s: i64) -> Result<Rat> {
    let mut t = Rat::from_integer(4);
    for _ in 0..12 {
        let f = example3_series(ps, rs_, s, t)?;
        if let Some(v) = f.valuation() {
            return Ok(v);
        }
        t *= Rat::from_integer(4);
    }
    Ok(Rat::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qser::{false_theta, monomial};

    fn r(a: i64, b: i64) -> Rat {
        Rat::new(a, b)
    }

    #[test]
    fn p2_example() {
        let f = example3_series(&[2], &[1], 1, r(10, 1)).unwrap();
        assert_eq!(f.scaled_terms(), vec![(1, 1), (9, -1), (25, 1), (49, -1)]);
        assert_eq!(f.denom(), 8);
    }

    #[test]
    fn leading_term_23() {
        let f = example3_series(&[2, 3], &[1, 1], 1, r(20, 1)).unwrap();
        assert_eq!(f.valuation(), Some(r(49, 24)));
        assert_eq!(f.coeff(&r(49, 24)), 1);
        assert_eq!(f.coeff(&r(169, 24)), -1);
    }

    #[test]
    fn n1_identities() {
        // Exact N = 1 forms: s = 1 gives Psi^(p-r); s = 2 gives q^{r^2/4p} - Psi^(r).
        let t = r(60, 1);
        for p in 2..=12 {
            for rr in 1..=p {
                let f1 = example3_series(&[p], &[rr], 1, t).unwrap();
                assert_eq!(f1, false_theta::<i64>(p, p - rr, t).unwrap().with_eta_power(-1));
                let f2 = example3_series(&[p], &[rr], 2, t).unwrap();
                let want = monomial(r(rr * rr, 4 * p), 1i64, t)
                    .sub(&false_theta::<i64>(p, rr, t).unwrap())
                    .unwrap()
                    .with_eta_power(-1);
                assert_eq!(f2, want);
            }
        }
    }

    #[test]
    fn steinberg_labels_are_not_zero() {
        let f = example3_series(&[2], &[2], 1, r(10, 1)).unwrap();
        assert_eq!(f.scaled_terms(), vec![(0, 1)]);
        for a in [1, 2] {
            assert!(!example3_series(&[2, 3], &[a, 3], 1, r(30, 1)).unwrap().is_zero());
        }
    }

    #[test]
    fn reflection_symmetry_refuted() {
        // s -> 3 - s, r -> p - r with sign (-1)^N fails already for p = 3, r = 1.
        let t = r(30, 1);
        let a = example3_series(&[3], &[1], 1, t).unwrap();
        let b = example3_series(&[3], &[2], 2, t).unwrap();
        assert_ne!(a, b.neg());
    }

    #[test]
    fn compositions() {
        assert!(compositions_identity_check(1, 20));
        assert!(compositions_identity_check(2, 3));
        assert!(compositions_identity_check(3, 50));
        assert!(!compositions_identity_check(0, 3));
    }

    #[test]
    fn input_validation() {
        assert!(example3_series(&[2, 4], &[1, 1], 1, r(5, 1)).is_err());
        assert!(example3_series(&[3], &[4], 1, r(5, 1)).is_err());
        assert!(example3_series(&[3], &[1], 3, r(5, 1)).is_err());
        assert!(example3_series(&[3], &[1, 1], 1, r(5, 1)).is_err());
    }

    #[test]
    fn min_exponent() {
        assert_eq!(example3_min_exponent(&[2], &[1], 1).unwrap(), r(1, 8));
    }
}
