//! Reference homological blocks of negative-definite plumbed homology
//! spheres, Seifert plumbings, and a matcher that expresses one series as a
//! linear combination of candidates up to a global q-power.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{determinant, solve};
use crate::qser::Series;
use crate::rootsys::invert_int_matrix;
use crate::{BigRat, Error, QSeries, Rat, Result};

/// Exceptional fiber orders of a Seifert homology sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub fibers: Vec<i64>,
}

impl SeifertData {
    pub fn new(fibers: Vec<i64>) -> Result<Self> {
        if fibers.len() < 3 || fibers.iter().any(|&s| s < 2) {
            return Err(Error::Plumbing("need at least three fibers of order >= 2".into()));
        }
        for i in 0..fibers.len() {
            for j in i + 1..fibers.len() {
                if fibers[i].gcd(&fibers[j]) != 1 {
                    return Err(Error::Plumbing("fiber orders must be pairwise coprime".into()));
                }
            }
        }
        Ok(SeifertData { fibers })
    }
}

/// Framed tree; its linking matrix has framings on the diagonal and 1 on edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingGraph {
    pub framings: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
}

impl PlumbingGraph {
    /// Validates: tree, negative definite, `|det M| = 1`.
    pub fn new(framings: Vec<i64>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = PlumbingGraph { framings, edges };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let n = self.framings.len();
        if n == 0 {
            return Err(Error::Plumbing("empty graph".into()));
        }
        if self.edges.len() != n - 1 {
            return Err(Error::Plumbing("a tree on n vertices has n - 1 edges".into()));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &(a, b) in &self.edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Plumbing(format!("bad edge ({a}, {b})")));
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(Error::Plumbing("graph has a cycle".into()));
            }
            parent[ra] = rb;
        }
        let m: Vec<Vec<Rat>> = self
            .linking_matrix()
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_integer(x)).collect())
            .collect();
        for k in 1..=n {
            let minor: Vec<Vec<Rat>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            let d = determinant(&minor);
            let want_positive = k % 2 == 0;
            if d.is_zero() || (d.is_positive() != want_positive) {
                return Err(Error::Plumbing("linking matrix is not negative definite".into()));
            }
        }
        if determinant(&m).abs() != Rat::from_integer(1) {
            return Err(Error::Plumbing("linking matrix is not unimodular".into()));
        }
        Ok(())
    }

    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.framings.len();
        let mut m = vec![vec![0; n]; n];
        for (i, &f) in self.framings.iter().enumerate() {
            m[i][i] = f;
        }
        for &(a, b) in &self.edges {
            m[a][b] = 1;
            m[b][a] = 1;
        }
        m
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.framings.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: PlumbingGraph = serde_json::from_str(text)?;
        g.validate()?;
        Ok(g)
    }
}

/// `s/q = a_1 - 1/(a_2 - 1/(...))` with every `a_i >= 2`.
pub fn negative_continued_fraction(mut s: i64, mut q: i64) -> Vec<i64> {
    let mut out = Vec::new();
    while q != 0 {
        let a = Integer::div_ceil(&s, &q);
        out.push(a);
        (s, q) = (q, a * q - s);
    }
    out
}

/// Normalized Seifert invariants `(b0, q_j)` with `0 < q_j < s_j` and
/// `b0 + sum q_j/s_j = -1/P`.
pub fn seifert_invariants(d: &SeifertData) -> Result<(i64, Vec<i64>)> {
    let big_p: i64 = d.fibers.iter().product();
    let mut qs = Vec::new();
    for &s in &d.fibers {
        let inv = mod_inverse((big_p / s).rem_euclid(s), s)
            .ok_or_else(|| Error::Plumbing("fibers are not coprime".into()))?;
        qs.push((-inv).rem_euclid(s));
    }
    let total: Rat = qs.iter().zip(&d.fibers).map(|(&q, &s)| Rat::new(q, s)).sum();
    let b0 = Rat::new(-1, big_p) - total;
    if !b0.is_integer() {
        return Err(Error::Plumbing("not a homology sphere".into()));
    }
    Ok((b0.to_integer(), qs))
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = a.extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// Star-shaped plumbing: central vertex `b0`, one leg per fiber with
/// framings `-a_i` from the continued fraction of `s_j/q_j`.
pub fn seifert_to_plumbing(d: &SeifertData) -> Result<PlumbingGraph> {
    seifert_to_plumbing_with(d, None)
}

/// As [`seifert_to_plumbing`], but the continued fraction of leg `expanded`
/// ends in `(a_k + 1, 1)` instead of `a_k`.
pub fn seifert_to_plumbing_with(d: &SeifertData, expanded: Option<usize>) -> Result<PlumbingGraph> {
    let (b0, qs) = seifert_invariants(d)?;
    let mut framings = vec![b0];
    let mut edges = Vec::new();
    for (j, (&s, &q)) in d.fibers.iter().zip(&qs).enumerate() {
        let mut leg = negative_continued_fraction(s, q);
        if expanded == Some(j) {
            *leg.last_mut().expect("nonempty leg") += 1;
            leg.push(1);
        }
        let mut prev = 0;
        for a in leg {
            framings.push(-a);
            let v = framings.len() - 1;
            edges.push((prev, v));
            prev = v;
        }
    }
    PlumbingGraph::new(framings, edges)
}

/// `z^l` coefficient of the principal-value expansion of `(z - 1/z)^{2-deg}`.
pub fn vertex_factor(deg: usize, l: i64) -> Rat {
    let n = deg as i64 - 2;
    if n <= 0 {
        let k = -n;
        if (l + k).is_odd() || l.abs() > k {
            return Rat::zero();
        }
        let j = (l + k) / 2;
        let sign = if (k - j).is_even() { 1 } else { -1 };
        return Rat::from_integer(sign * binomial(k, j));
    }
    let mut acc = Rat::zero();
    // |z| < 1: (-1)^n sum_k C(n+k-1, k) z^{n+2k}; |z| > 1: sum_k C(n+k-1, k) z^{-n-2k}.
    if l >= n && (l - n).is_even() {
        let k = (l - n) / 2;
        let sign = if n.is_even() { 1 } else { -1 };
        acc += Rat::from_integer(sign * binomial(n + k - 1, k));
    }
    if -l >= n && (-l - n).is_even() {
        let k = (-l - n) / 2;
        acc += Rat::from_integer(binomial(n + k - 1, k));
    }
    acc / 2
}

/// `q^{c0} sum_{l in 2MZ^V + delta} prod_v F_v(l_v) q^{-(l, M^{-1} l)/4}`,
/// `c0 = -(3 sigma + tr M)/4`.
pub fn zhat_series(g: &PlumbingGraph, trunc: Rat) -> Result<QSeries> {
    g.validate()?;
    let n = g.framings.len();
    let m = g.linking_matrix();
    let inv: Vec<Vec<i64>> = invert_int_matrix(&m)
        .ok_or_else(|| Error::Plumbing("singular linking matrix".into()))?
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
        .collect();
    let deg = g.degrees();
    let delta: Vec<i64> = deg.iter().map(|&d| 2 - d as i64).collect();
    let sigma = -(n as i64);
    let trace: i64 = g.framings.iter().sum();
    let c0 = Rat::new(-(3 * sigma + trace), 4);

    // -M^{-1} >= 1/G with G a Gershgorin bound on the spectrum of -M.
    let gersh = (0..n).map(|v| m[v][v].abs() + deg[v] as i64).max().unwrap_or(1);
    let budget = (trunc - c0) * Rat::from_integer(4 * gersh);
    let radius = if budget.is_negative() {
        -1
    } else {
        let f = (*budget.numer() as f64 / *budget.denom() as f64).sqrt();
        let mut l = f.floor() as i64 + 1;
        while Rat::from_integer(l * l) > budget {
            l -= 1;
        }
        l
    };
    let ranges: Vec<Vec<i64>> = (0..n)
        .map(|v| {
            let span = if deg[v] <= 2 { 2 - deg[v] as i64 } else { radius };
            (-span..=span)
                .filter(|&l| (l - delta[v]).is_even() && !vertex_factor(deg[v], l).is_zero())
                .collect()
        })
        .collect();

    let mut acc: BTreeMap<Rat, Rat> = BTreeMap::new();
    if ranges.iter().all(|r| !r.is_empty()) {
        let mut idx = vec![0usize; n];
        loop {
            let l: Vec<i64> = (0..n).map(|v| ranges[v][idx[v]]).collect();
            let diff: Vec<i64> = l.iter().zip(&delta).map(|(a, b)| a - b).collect();
            let in_class = inv.iter().all(|row| row.iter().zip(&diff).map(|(a, b)| a * b).sum::<i64>().is_even());
            if in_class {
                let quad: i64 = (0..n)
                    .map(|i| l[i] * inv[i].iter().zip(&l).map(|(a, b)| a * b).sum::<i64>())
                    .sum();
                let e = c0 - Rat::new(quad, 4);
                if e <= trunc {
                    let c: Rat = (0..n).map(|v| vertex_factor(deg[v], l[v])).product();
                    *acc.entry(e).or_insert_with(Rat::zero) += c;
                }
            }
            let mut v = n;
            let mut finished = true;
            while v > 0 {
                v -= 1;
                if idx[v] + 1 < ranges[v].len() {
                    idx[v] += 1;
                    finished = false;
                    break;
                }
                idx[v] = 0;
            }
            if finished {
                break;
            }
        }
    }
    let mut out = Series::zero(trunc);
    for (e, c) in acc {
        if !c.is_integer() {
            return Err(Error::Plumbing(format!("non-integral coefficient {c} at q^{e}")));
        }
        out.add_term(e, c.to_integer());
    }
    Ok(out)
}

/// A declared linear relation `q^shift * target = sum coeffs_i candidate_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatchResult {
    pub shift: Rat,
    pub coeffs: Vec<BigRat>,
    pub fit_window: Rat,
    pub verify_window: Rat,
    pub residual_nonzero_terms: usize,
    /// Directions along which the fit system is underdetermined.
    pub null_basis: Vec<Vec<BigRat>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatchOutcome {
    Match(MatchResult),
    /// The fit system has several solutions and the particular one fails
    /// verification.
    Ambiguous(MatchResult),
    NoMatch {
        /// Smallest verify-window residual among solvable shifts, if any.
        best: Option<(Rat, usize)>,
    },
}

impl MatchOutcome {
    pub fn is_match(&self) -> bool {
        matches!(self, MatchOutcome::Match(_))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let res = |m: &MatchResult| {
            serde_json::json!({
                "shift": m.shift.to_string(),
                "coeffs": m.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "fit_window": m.fit_window.to_string(),
                "verify_window": m.verify_window.to_string(),
                "residual_nonzero_terms": m.residual_nonzero_terms,
                "null_basis": m.null_basis.iter()
                    .map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            })
        };
        match self {
            MatchOutcome::Match(m) => serde_json::json!({"status": "match", "result": res(m)}),
            MatchOutcome::Ambiguous(m) => serde_json::json!({"status": "ambiguous", "result": res(m)}),
            MatchOutcome::NoMatch { best } => serde_json::json!({
                "status": "no-match",
                "best_shift": best.map(|b| b.0.to_string()),
                "best_residual": best.map(|b| b.1),
            }),
        }
    }
}

fn big(r: &Rat) -> BigRat {
    BigRat::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Searches shifts `s` in the set of differences of leading exponents and
/// solves `q^s target = sum c_i cand_i` on exponents up to `lead + fit_t`
/// (in the target's frame), then checks every term up to `lead + verify_t`.
pub fn match_linear_combination(
    candidates: &[QSeries],
    target: &QSeries,
    fit_t: Rat,
    verify_t: Rat,
) -> Result<MatchOutcome> {
    if verify_t < fit_t {
        return Err(Error::Plumbing("verify window must contain the fit window".into()));
    }
    if candidates.is_empty() {
        return Err(Error::Plumbing("no candidates".into()));
    }
    let k = candidates.iter().map(|c| c.eta_power()).chain([target.eta_power()]).min().unwrap_or(0);
    let cands: Vec<QSeries> = candidates.iter().map(|c| c.rebase_eta(k)).collect();
    let target = target.rebase_eta(k);
    let lead = target.valuation().ok_or_else(|| Error::Plumbing("target series is zero".into()))?;
    if target.trunc() < lead + verify_t {
        return Err(Error::Plumbing(format!(
            "target known only to q^{}, need q^{}",
            target.trunc(),
            lead + verify_t
        )));
    }
    let shifts: BTreeSet<Rat> =
        cands.iter().filter_map(|c| c.valuation()).map(|v| v - lead).chain([Rat::zero()]).collect();

    let mut best: Option<(Rat, usize)> = None;
    let mut ambiguous: Option<MatchResult> = None;
    for s in shifts {
        let t = target.shift(s);
        let fit_end = lead + s + fit_t;
        let verify_end = lead + s + verify_t;
        if cands.iter().any(|c| c.trunc() < verify_end) {
            continue;
        }
        let mut rows: BTreeSet<Rat> = t.terms().map(|(e, _)| *e).filter(|e| *e <= fit_end).collect();
        for c in &cands {
            rows.extend(c.terms().map(|(e, _)| *e).filter(|e| *e <= fit_end));
        }
        let a: Vec<Vec<BigRat>> = rows
            .iter()
            .map(|e| cands.iter().map(|c| BigRat::from_integer(c.coeff(e).into())).collect())
            .collect();
        let b: Vec<BigRat> = rows.iter().map(|e| BigRat::from_integer(t.coeff(e).into())).collect();
        let Some(sol) = solve(&a, &b, cands.len()) else {
            continue;
        };

        let mut verify_rows: BTreeSet<Rat> = t.terms().map(|(e, _)| *e).filter(|e| *e <= verify_end).collect();
        for c in &cands {
            verify_rows.extend(c.terms().map(|(e, _)| *e).filter(|e| *e <= verify_end));
        }
        let residual = verify_rows
            .iter()
            .filter(|e| {
                let combo: BigRat = cands
                    .iter()
                    .zip(&sol.particular)
                    .map(|(c, x)| x * BigRat::from_integer(c.coeff(e).into()))
                    .sum();
                combo != BigRat::from_integer(t.coeff(e).into())
            })
            .count();
        let result = MatchResult {
            shift: s,
            coeffs: sol.particular.clone(),
            fit_window: fit_t,
            verify_window: verify_t,
            residual_nonzero_terms: residual,
            null_basis: sol.null_basis.clone(),
        };
        if residual == 0 {
            return Ok(MatchOutcome::Match(result));
        }
        if best.is_none_or(|(_, r)| residual < r) {
            best = Some((s, residual));
        }
        if !sol.null_basis.is_empty() && ambiguous.is_none() {
            ambiguous = Some(result);
        }
    }
    Ok(match ambiguous {
        Some(m) => MatchOutcome::Ambiguous(m),
        None => MatchOutcome::NoMatch { best },
    })
}

/// Converts match coefficients to integers when they all are.
pub fn integral_coeffs(m: &MatchResult) -> Option<Vec<i64>> {
    m.coeffs
        .iter()
        .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
        .collect()
}

#[doc(hidden)]
pub fn big_rat(r: &Rat) -> BigRat {
    big(r)
}
