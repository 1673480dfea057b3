//! Label data for the lattice building blocks: the shifted labels
//! `mu_m = rho/p_m - lambda_m`, the star action of the Weyl group with its
//! integral correction `epsilon`, `Q0`, and conformal exponents.
//!
//! A label is read as `mu - delta*rho` for an infinitesimal `delta > 0`.
//! Window reduction after a Weyl action uses that perturbation to break ties
//! at integer coordinates, so every label has a well-defined image even when
//! some coordinate equals 1.

use num_integer::Integer;

use crate::qser::{monomial, Series};
use crate::rootsys::{minuscule_weights, RootSystem, Weight, WeylElement};
use crate::{Error, QSeries, Rat, Result};

/// The full parameter pack naming one building series.
#[derive(Clone, Debug)]
pub struct BlockLabel {
    pub rs: RootSystem,
    pub ps: Vec<i64>,
    /// `rmat[m][i] = r_{m,i}`, with `1 <= r_{m,i} <= p_m`.
    pub rmat: Vec<Vec<i64>>,
    pub lhat: Weight,
}

impl BlockLabel {
    pub fn new(rs: RootSystem, ps: Vec<i64>, rmat: Vec<Vec<i64>>, lhat: Weight) -> Result<Self> {
        if ps.is_empty() {
            return Err(Error::Label("need at least one p".into()));
        }
        if ps.iter().any(|&p| p < 2) {
            return Err(Error::Label(format!("every p must be >= 2, got {ps:?}")));
        }
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                if ps[i].gcd(&ps[j]) != 1 {
                    return Err(Error::Label(format!("p values {} and {} are not coprime", ps[i], ps[j])));
                }
            }
        }
        if rmat.len() != ps.len() {
            return Err(Error::Label(format!("expected {} rows of r, got {}", ps.len(), rmat.len())));
        }
        for (row, &p) in rmat.iter().zip(&ps) {
            rs.check_rank(row.len())?;
            if row.iter().any(|&r| r < 1 || r > p) {
                return Err(Error::Label(format!("r values {row:?} must lie in [1, {p}]")));
            }
        }
        rs.check_rank(lhat.rank())?;
        if !minuscule_weights(&rs).contains(&lhat) {
            return Err(Error::Label(format!("lhat {lhat} is not zero or minuscule")));
        }
        Ok(BlockLabel { rs, ps, rmat, lhat })
    }

    /// sl2 labels with `lhat = (s - 1) varpi`.
    pub fn sl2(ps: &[i64], rs_: &[i64], s: i64) -> Result<Self> {
        if !(1..=2).contains(&s) {
            return Err(Error::Label(format!("s must be 1 or 2, got {s}")));
        }
        let rs = crate::rootsys::build_root_system(crate::rootsys::Series::A, 1)?;
        BlockLabel::new(rs, ps.to_vec(), rs_.iter().map(|&r| vec![r]).collect(), Weight::from_ints(&[s - 1]))
    }

    pub fn n(&self) -> usize {
        self.ps.len()
    }

    pub fn p(&self) -> i64 {
        self.ps.iter().product()
    }

    pub fn shifted_labels(&self) -> Vec<ShiftedLabel> {
        self.ps
            .iter()
            .zip(&self.rmat)
            .map(|(&p, row)| ShiftedLabel::from_r(p, row))
            .collect()
    }
}

/// `mu = rho/p_m - lambda_m`, plus the direction of its infinitesimal
/// perturbation (initially `-rho`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShiftedLabel {
    pub pm: i64,
    pub mu: Weight,
    pub drift: Vec<i64>,
}

impl ShiftedLabel {
    pub fn from_r(pm: i64, r: &[i64]) -> Self {
        ShiftedLabel {
            pm,
            mu: Weight::new(r.iter().map(|&x| Rat::new(x, pm)).collect()),
            drift: vec![-1; r.len()],
        }
    }

    /// `p_m * mu`, the r-coordinates.
    pub fn r(&self) -> Vec<i64> {
        self.mu.coords.iter().map(|c| (c * self.pm).to_integer()).collect()
    }

    /// `lambda_m = rho/p_m - mu`.
    pub fn to_lambda(&self) -> Weight {
        Weight::new(self.mu.coords.iter().map(|c| Rat::new(1, self.pm) - c).collect())
    }
}

/// Builds `mu = rho/p_m - lambda` from `lambda` in `(1/p_m) P`.
pub fn shifted_from_lambda(pm: i64, lambda: &Weight) -> Result<ShiftedLabel> {
    let mut r = Vec::with_capacity(lambda.rank());
    for c in &lambda.coords {
        let m = (Rat::new(1, pm) - c) * pm;
        if !m.is_integer() || m.to_integer() < 1 || m.to_integer() > pm {
            return Err(Error::Label(format!("lambda {lambda} is not in the label set for p={pm}")));
        }
        r.push(m.to_integer());
    }
    Ok(ShiftedLabel::from_r(pm, &r))
}

/// `Q0 = 1/p_1 - sum_{m>=2} 1/p_m`.
pub fn q0(label: &BlockLabel) -> Rat {
    q0_of(&label.ps)
}

pub fn q0_of(ps: &[i64]) -> Rat {
    let mut q = Rat::new(1, ps[0]);
    for &p in &ps[1..] {
        q -= Rat::new(1, p);
    }
    q
}

/// `ceil(x + delta*d) - 1` for infinitesimal `delta > 0`: the integer to
/// remove so the perturbed remainder lands in `(0, 1]`.
fn window_shift(x: Rat, d: i64) -> i64 {
    let ceil = if x.is_integer() && d > 0 { x.to_integer() + 1 } else { x.ceil().to_integer() };
    ceil - 1
}

/// `w * mu = mu' + e` with `mu'` in the window; returns `(mu', epsilon)` with
/// `epsilon = w rho - rho - e`.
pub fn star_act(rs: &RootSystem, w: &WeylElement, s: &ShiftedLabel) -> Result<(ShiftedLabel, Weight)> {
    rs.check_rank(s.mu.rank())?;
    let y = w.act(&s.mu);
    let d = w.act_int(&s.drift);
    let wr = w.act_int(&vec![1; rs.rank]);
    let mut mu = Vec::with_capacity(rs.rank);
    let mut eps = Vec::with_capacity(rs.rank);
    for i in 0..rs.rank {
        let e = window_shift(y.coords[i], d[i]);
        mu.push(y.coords[i] - e);
        eps.push(Rat::from_integer(wr[i] - 1 - e));
    }
    Ok((ShiftedLabel { pm: s.pm, mu: Weight::new(mu), drift: d }, Weight::new(eps)))
}

/// `Delta(tau) = (p/2) |tau + mu_1 - sum_{m>=2} mu_m|^2`.
pub fn conformal_exponent(label: &BlockLabel, mus: &[ShiftedLabel], tau: &Weight) -> Result<Rat> {
    if mus.len() != label.n() {
        return Err(Error::Dimension { expected: label.n(), got: mus.len() });
    }
    label.rs.check_rank(tau.rank())?;
    let v = label_offset(mus).map(|off| &off + tau).expect("nonempty");
    Ok(Rat::new(label.p(), 2) * label.rs.norm_sq(&v))
}

/// `mu_1 - sum_{m>=2} mu_m`.
pub fn label_offset(mus: &[ShiftedLabel]) -> Option<Weight> {
    let (first, rest) = mus.split_first()?;
    let mut v = first.mu.clone();
    for m in rest {
        v = &v - &m.mu;
    }
    Some(v)
}

/// Bottom-level character of the h-weight `tau` line: `q^{Delta(tau)}` with
/// the `eta^{-rank}` prefactor carried symbolically.
pub fn weight_space_character(label: &BlockLabel, mus: &[ShiftedLabel], tau: &Weight, trunc: Rat) -> Result<QSeries> {
    let d = conformal_exponent(label, mus, tau)?;
    Ok(monomial(d, 1i64, trunc).with_eta_power(-(label.rs.rank as i64)))
}

/// Checks the N = 1 shift symmetry
/// `ch(sigma . beta) = ch_{sigma^{-1} * mu}(beta - epsilon)` for one label.
pub fn condition_one_holds(
    label: &BlockLabel,
    group: &[WeylElement],
    beta: &Weight,
    trunc: Rat,
) -> Result<bool> {
    if label.n() != 1 {
        return Err(Error::Label("the shift symmetry is only defined for N = 1".into()));
    }
    let rs = &label.rs;
    let mu = label.shifted_labels();
    for sigma in group {
        let lhs = weight_space_character(label, &mu, &crate::rootsys::dot_action(rs, sigma, beta)?, trunc)?;
        let (mu2, eps) = star_act(rs, &sigma.inverse(rs), &mu[0])?;
        let rhs = weight_space_character(label, &[mu2], &(beta - &eps), trunc)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Series with no terms and the character prefactor of `label`.
pub fn zero_character(label: &BlockLabel, trunc: Rat) -> QSeries {
    Series::zero(trunc).with_eta_power(-(label.rs.rank as i64))
}
