//! The Atiyah-Bott Euler-characteristic transform and the nested character,
//! evaluated along two independent paths: the Kostant-convolution form and
//! the multiplicity form.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::blocks::{star_act, zero_character, BlockLabel};
use crate::qser::Series;
use crate::repdata::{dominant_character, dominant_weights_within, DominantCharacter, PartitionTable};
use crate::rootsys::{dot_action_int, longest_element, weyl_group_bounded, RootSystem, Weight, WeylElement};
use crate::{Error, QSeries, Rat, Result};

/// Size limits for the engine.
#[derive(Clone, Debug)]
pub struct EngineLimits {
    pub weyl_bound: usize,
    /// Largest root height of gamma the convolution path may need.
    pub max_height: usize,
    /// Largest number of Weyl tuples `|W|^N`.
    pub max_tuples: usize,
}

impl Default for EngineLimits {
    fn default() -> Self {
        EngineLimits { weyl_bound: crate::rootsys::DEFAULT_WEYL_BOUND, max_height: 2000, max_tuples: 5_000_000 }
    }
}

/// `sum_{beta dominant, |beta|^2 <= bound} dim L(beta) sum_sigma (-1)^l ch(sigma . beta)`.
pub fn atiyah_bott_euler<F>(rs: &RootSystem, charfam: F, trunc: Rat, norm_sq_bound: Rat) -> Result<QSeries>
where
    F: Fn(&Weight) -> Result<QSeries>,
{
    let group = weyl_group_bounded(rs, crate::rootsys::DEFAULT_WEYL_BOUND)?;
    let mut acc: Option<QSeries> = None;
    for beta in dominant_weights_within(rs, norm_sq_bound) {
        let dim = crate::repdata::weyl_dim_int(rs, &beta) as i64;
        for sigma in &group {
            let img = Weight::from_ints(&dot_action_int(sigma, &beta));
            let term = charfam(&img)?.scale(Rat::from_integer(sigma.sign() * dim))?;
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
    }
    Ok(acc.map(|a| a.truncate(trunc)).unwrap_or_else(|| Series::zero(trunc)))
}

#[derive(Clone, Debug)]
struct SlotAct {
    sign: i64,
    mu: Weight,
    eps: Weight,
}

/// Star-action images for each slot. The first label is pre-acted by `w0`
/// and its correction discarded.
fn slot_actions(label: &BlockLabel, group: &[WeylElement]) -> Result<Vec<Vec<SlotAct>>> {
    let rs = &label.rs;
    let mut mus = label.shifted_labels();
    let w0 = longest_element(group);
    mus[0] = star_act(rs, w0, &mus[0])?.0;
    mus.iter()
        .map(|mu| {
            group
                .iter()
                .map(|w| {
                    let (m, e) = star_act(rs, w, mu)?;
                    Ok(SlotAct { sign: w.sign(), mu: m.mu, eps: e })
                })
                .collect()
        })
        .collect()
}

fn check_tuples(label: &BlockLabel, group: &[WeylElement], limits: &EngineLimits) -> Result<()> {
    let tuples = (group.len() as f64).powi(label.n() as i32);
    if tuples > limits.max_tuples as f64 {
        return Err(Error::Engine(format!("|W|^N = {tuples} exceeds the tuple limit {}", limits.max_tuples)));
    }
    Ok(())
}

fn radius(label: &BlockLabel, trunc: Rat) -> f64 {
    let x = trunc * Rat::new(2, label.p());
    (*x.numer() as f64 / *x.denom() as f64).sqrt()
}

/// Convolution form: `sum_gamma K_N(gamma) sum_{w} (-1)^{sum l} q^{Delta}`.
pub fn nested_character(label: &BlockLabel, trunc: Rat) -> Result<QSeries> {
    let group = weyl_group_bounded(&label.rs, EngineLimits::default().weyl_bound)?;
    nested_character_with(label, trunc, &group, &EngineLimits::default())
}

pub fn nested_character_with(
    label: &BlockLabel,
    trunc: Rat,
    group: &[WeylElement],
    limits: &EngineLimits,
) -> Result<QSeries> {
    nested_character_with_table(label, trunc, group, limits, None)
}

/// As [`nested_character_with`], reusing a precomputed partition table when
/// its box is large enough.
pub fn nested_character_with_table(
    label: &BlockLabel,
    trunc: Rat,
    group: &[WeylElement],
    limits: &EngineLimits,
    table: Option<&PartitionTable>,
) -> Result<QSeries> {
    let rs = &label.rs;
    let n = label.n();
    check_tuples(label, group, limits)?;
    if trunc < Rat::from_integer(0) {
        return Ok(zero_character(label, trunc));
    }
    let acts = slot_actions(label, group)?;

    // Collapse Weyl tuples onto the constant part of tau + offset.
    let base = &label.lhat + &label.rs.rho.scale(Rat::from_integer(n as i64 - 1));
    let mut shifts: BTreeMap<Weight, i64> = BTreeMap::new();
    let mut idx = vec![0usize; n];
    loop {
        let mut v = base.clone();
        let mut sign = 1;
        for (m, &i) in idx.iter().enumerate() {
            let a = &acts[m][i];
            sign *= a.sign;
            v = &v - &a.eps;
            v = if m == 0 { &v + &a.mu } else { &v - &a.mu };
        }
        *shifts.entry(v).or_insert(0) += sign;
        if !advance(&mut idx, group.len()) {
            break;
        }
    }
    shifts.retain(|_, c| *c != 0);
    if shifts.is_empty() {
        return Ok(zero_character(label, trunc));
    }

    // (gamma, rho) = ht(gamma) <= |gamma| |rho|, and |gamma + shift| >= |gamma| - C.
    let c_max = shifts.keys().map(|s| rs.norm_f64(s)).fold(0.0, f64::max);
    let rho_norm = rs.norm_f64(&rs.rho);
    let h_max = (rho_norm * (radius(label, trunc) + c_max) + 1e-9).floor() as usize + 1;
    if h_max > limits.max_height {
        return Err(Error::Engine(format!(
            "cannot certify truncation: needs root height {h_max} > limit {}",
            limits.max_height
        )));
    }
    let kn = match table.and_then(|t| t.restrict(h_max)) {
        Some(p) => p.power(n)?,
        None => PartitionTable::convolution_power(rs, n, h_max)?,
    };
    let gammas: Vec<(Vec<i64>, i64)> = kn
        .iter()
        .filter(|(g, v)| *v > 0 && g.iter().sum::<i64>() as usize <= h_max)
        .map(|(g, v)| (g, v as i64))
        .collect();
    let shifts: Vec<(Weight, i64)> = shifts.into_iter().collect();
    let half_p = Rat::new(label.p(), 2);

    let terms = gammas
        .par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<Rat, i64>, (g, k)| {
            let gw = Weight::from_ints(&rs.root_to_weight_int(g));
            for (s, c) in &shifts {
                let v = &gw + s;
                let d = half_p * rs.norm_sq(&v);
                if d <= trunc {
                    *acc.entry(d).or_insert(0) += c * k;
                }
            }
            acc
        })
        .reduce(BTreeMap::new, merge_terms);
    Ok(Series::from_terms(terms, trunc, -(rs.rank as i64)))
}

fn merge_terms(mut a: BTreeMap<Rat, i64>, b: BTreeMap<Rat, i64>) -> BTreeMap<Rat, i64> {
    for (e, c) in b {
        *a.entry(e).or_insert(0) += c;
    }
    a
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for i in (0..idx.len()).rev() {
        if idx[i] + 1 < base {
            idx[i] += 1;
            return true;
        }
        idx[i] = 0;
    }
    false
}

/// Multiplicity form, evaluated as printed:
/// `sum_{beta_N} sum_{w_N} (-1)^l m_{beta_N, lhat} ... sum_{beta_1}
/// m_{beta_1, beta_2 - eps_2 + rho} sum_{w_1} (-1)^l q^{Delta(beta_1 - eps_1)}`.
pub fn nested_character_mform(label: &BlockLabel, trunc: Rat) -> Result<QSeries> {
    let group = weyl_group_bounded(&label.rs, EngineLimits::default().weyl_bound)?;
    nested_character_mform_with(label, trunc, &group, &EngineLimits::default())
}

struct MformCtx<'a> {
    rs: &'a RootSystem,
    acts: Vec<Vec<SlotAct>>,
    doms: Vec<Vec<Vec<i64>>>,
    chars: HashMap<Vec<i64>, DominantCharacter>,
    half_p: Rat,
    trunc: Rat,
}

impl MformCtx<'_> {
    fn mult(&self, beta: &[i64], nu: &Weight) -> i64 {
        let Some(nu) = nu.to_ints() else {
            return 0;
        };
        self.chars[beta].multiplicity(self.rs, &nu) as i64
    }

    /// Level `m` (0-based slot) summing over `beta_{m+1}` against the weight `nu`.
    fn level(&self, m: usize, nu: &Weight, coeff: i64, outer_mu: &Weight, acc: &mut BTreeMap<Rat, i64>) {
        for beta in &self.doms[m] {
            let mult = self.mult(beta, nu);
            if mult == 0 {
                continue;
            }
            let bw = Weight::from_ints(beta);
            for a in &self.acts[m] {
                let c = coeff * mult * a.sign;
                if m == 0 {
                    let v = &(&(&bw - &a.eps) + &a.mu) - outer_mu;
                    let d = self.half_p * self.rs.norm_sq(&v);
                    if d <= self.trunc {
                        *acc.entry(d).or_insert(0) += c;
                    }
                } else {
                    let next = &(&bw - &a.eps) + &self.rs.rho;
                    self.level(m - 1, &next, c, &(outer_mu + &a.mu), acc);
                }
            }
        }
    }
}

pub fn nested_character_mform_with(
    label: &BlockLabel,
    trunc: Rat,
    group: &[WeylElement],
    limits: &EngineLimits,
) -> Result<QSeries> {
    let rs = &label.rs;
    let n = label.n();
    check_tuples(label, group, limits)?;
    if trunc < Rat::from_integer(0) {
        return Ok(zero_character(label, trunc));
    }
    let acts = slot_actions(label, group)?;
    let maxn = |xs: &mut dyn Iterator<Item = Weight>| xs.map(|w| rs.norm_f64(&w)).fold(0.0, f64::max);

    // Delta <= T forces |beta_1 - eps_1 + mu_1' - sum mu_m'| <= R; a nonzero
    // m_{beta, nu} forces |nu| <= |beta|.
    let mut bounds = vec![0.0f64; n];
    bounds[0] = radius(label, trunc)
        + maxn(&mut acts[0].iter().map(|a| &a.mu - &a.eps))
        + (1..n).map(|m| maxn(&mut acts[m].iter().map(|a| a.mu.clone()))).sum::<f64>();
    for m in 1..n {
        bounds[m] = bounds[m - 1] + maxn(&mut acts[m].iter().map(|a| &a.eps - &rs.rho));
    }
    let doms: Vec<Vec<Vec<i64>>> = bounds
        .iter()
        .map(|b| {
            let sq = (b + 1e-6) * (b + 1e-6);
            dominant_weights_within(rs, Rat::new((sq * 1e6).ceil() as i64, 1_000_000))
        })
        .collect();
    let mut chars = HashMap::new();
    for beta in doms.iter().flatten() {
        if !chars.contains_key(beta) {
            chars.insert(beta.clone(), dominant_character(rs, beta)?);
        }
    }
    let ctx = MformCtx { rs, acts, doms, chars, half_p: Rat::new(label.p(), 2), trunc };

    let top = n - 1;
    let terms = ctx.doms[top]
        .par_iter()
        .fold(BTreeMap::new, |mut acc, beta| {
            let mult = ctx.mult(beta, &label.lhat);
            if mult == 0 {
                return acc;
            }
            let bw = Weight::from_ints(beta);
            for a in &ctx.acts[top] {
                let c = mult * a.sign;
                if top == 0 {
                    let v = &(&bw - &a.eps) + &a.mu;
                    let d = ctx.half_p * rs.norm_sq(&v);
                    if d <= trunc {
                        *acc.entry(d).or_insert(0) += c;
                    }
                } else {
                    let next = &(&bw - &a.eps) + &rs.rho;
                    ctx.level(top - 1, &next, c, &a.mu, &mut acc);
                }
            }
            acc
        })
        .reduce(BTreeMap::new, merge_terms);
    Ok(Series::from_terms(terms, trunc, -(rs.rank as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qser::false_theta;
    use crate::repdata::{dominant_character, weyl_dim_int};

    fn r(a: i64, b: i64) -> Rat {
        Rat::new(a, b)
    }

    #[test]
    fn ab_indicator_at_zero() {
        let a2: RootSystem = "A2".parse().unwrap();
        let t = r(5, 1);
        let out = atiyah_bott_euler(
            &a2,
            |w| Ok(crate::qser::monomial(r(0, 1), (w == &Weight::zero(2)) as i64, t)),
            t,
            r(20, 1),
        )
        .unwrap();
        assert_eq!(out.scaled_terms(), vec![(0, 1)]);
    }

    #[test]
    fn ab_borel_weil() {
        for name in ["A1", "A2"] {
            let rs: RootSystem = name.parse().unwrap();
            let t = r(1, 1);
            for mu in crate::repdata::dominant_weights_by_dim(&rs, 30) {
                let ch = dominant_character(&rs, &mu).unwrap();
                let out = atiyah_bott_euler(
                    &rs,
                    |w| {
                        let m = ch.multiplicity(&rs, &w.to_ints().unwrap()) as i64;
                        Ok(crate::qser::monomial(r(0, 1), m, t))
                    },
                    t,
                    rs.norm_sq(&Weight::from_ints(&mu)) + r(1, 1),
                )
                .unwrap();
                assert_eq!(out.scaled_terms(), vec![(0, weyl_dim_int(&rs, &mu) as i64)], "{name} {mu:?}");
            }
        }
    }

    #[test]
    fn ab_off_support_is_zero() {
        let a1: RootSystem = "A1".parse().unwrap();
        // sigma . beta is never -1 for dominant beta.
        let out = atiyah_bott_euler(
            &a1,
            |w| Ok(crate::qser::monomial(r(0, 1), (w == &Weight::from_ints(&[-1])) as i64, r(3, 1))),
            r(3, 1),
            r(50, 1),
        )
        .unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn n1_is_false_theta() {
        let t = r(30, 1);
        for p in [2, 3, 5, 7] {
            for rr in 1..=p {
                let l = BlockLabel::sl2(&[p], &[rr], 1).unwrap();
                let got = nested_character(&l, t).unwrap();
                let want = false_theta::<i64>(p, p - rr, t).unwrap().with_eta_power(-1);
                assert_eq!(got, want, "p={p} r={rr}");
            }
        }
        let l = BlockLabel::sl2(&[2], &[1], 1).unwrap();
        let got = nested_character(&l, r(10, 1)).unwrap();
        assert_eq!(got.scaled_terms(), vec![(1, 1), (9, -1), (25, 1), (49, -1)]);
    }

    #[test]
    fn forms_agree_small() {
        for (ps, rs_) in [(vec![2], vec![1]), (vec![2, 3], vec![1, 1]), (vec![2, 3], vec![2, 1])] {
            for s in 1..=2 {
                let l = BlockLabel::sl2(&ps, &rs_, s).unwrap();
                let t = r(12, 1);
                assert_eq!(nested_character(&l, t).unwrap(), nested_character_mform(&l, t).unwrap());
            }
        }
    }

    #[test]
    fn below_minimum_is_zero() {
        let l = BlockLabel::sl2(&[2, 3], &[1, 1], 1).unwrap();
        assert!(nested_character(&l, r(1, 100)).unwrap().is_zero());
        assert!(nested_character_mform(&l, r(1, 100)).unwrap().is_zero());
        assert!(nested_character(&l, r(-1, 1)).unwrap().is_zero());
    }

    #[test]
    fn a2_n1_forms_agree() {
        let a2: RootSystem = "A2".parse().unwrap();
        for r1 in 1..=3 {
            for r2 in 1..=3 {
                let l = BlockLabel::new(a2.clone(), vec![3], vec![vec![r1, r2]], Weight::zero(2)).unwrap();
                let t = r(8, 1);
                assert_eq!(nested_character(&l, t).unwrap(), nested_character_mform(&l, t).unwrap());
            }
        }
    }

    #[test]
    fn precomputed_table_reused() {
        let l = BlockLabel::sl2(&[2, 3], &[1, 2], 2).unwrap();
        let g = weyl_group_bounded(&l.rs, 10).unwrap();
        let big = PartitionTable::build(&l.rs, 200).unwrap();
        let lim = EngineLimits::default();
        let t = r(20, 1);
        assert_eq!(
            nested_character_with_table(&l, t, &g, &lim, Some(&big)).unwrap(),
            nested_character(&l, t).unwrap()
        );
        let small = PartitionTable::build(&l.rs, 1).unwrap();
        assert_eq!(
            nested_character_with_table(&l, t, &g, &lim, Some(&small)).unwrap(),
            nested_character(&l, t).unwrap()
        );
    }

    #[test]
    fn tuple_limit_enforced() {
        let l = BlockLabel::sl2(&[2, 3, 5], &[1, 1, 1], 1).unwrap();
        let g = weyl_group_bounded(&l.rs, 10).unwrap();
        let lim = EngineLimits { max_tuples: 4, ..EngineLimits::default() };
        assert!(nested_character_with(&l, r(5, 1), &g, &lim).is_err());
        let lim = EngineLimits { max_height: 1, ..EngineLimits::default() };
        assert!(nested_character_with(&l, r(500, 1), &g, &lim).is_err());
    }
}
