//! Closed-form equilibria of the catalog CSFs and executable checks of the
//! extraction results built on them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::contest::{ContestGame, EffortProfile, ValueProfile};
use crate::csf::{CsfKind, CsfSpec};
use crate::equilibrium::{
    cluster_certificates, grid_scan, verify_equilibrium, Cluster, EquilibriumCertificate,
    SearchConfig,
};
use crate::error::{config_err, ContestError, Result};
use crate::scalar::Scalar;

/// Tolerance on `extraction_ratio` for calling an equilibrium extracting.
pub const EXTRACTION_TOLERANCE: f64 = 1e-6;
/// An equilibrium with ratio below `1 - STRICTNESS_GAP` witnesses that the
/// CSF is not strictly extractive.
pub const STRICTNESS_GAP: f64 = 1e-3;

/// Contestants exerting positive effort.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActiveSet {
    indices: BTreeSet<usize>,
}

impl ActiveSet {
    pub fn new(indices: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(ContestError::IndexOutOfRange { index: bad, n });
        }
        Ok(Self { indices })
    }

    /// The `size` smallest indices.
    pub fn first(size: usize, n: usize) -> Result<Self> {
        Self::new(0..size, n)
    }

    pub fn of_profile<T: Scalar>(profile: &EffortProfile<T>) -> Self {
        Self {
            indices: profile.active_indices().into_iter().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    /// Every subset of `{0..n}` with exactly `size` members, in lexicographic order.
    pub fn all_of_size(size: usize, n: usize) -> Vec<ActiveSet> {
        fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<ActiveSet>) {
            if left == 0 {
                out.push(ActiveSet {
                    indices: cur.iter().copied().collect(),
                });
                return;
            }
            for i in start..n {
                if n - i < left {
                    break;
                }
                cur.push(i);
                rec(i + 1, n, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n, size, &mut Vec::new(), &mut out);
        out
    }
}

fn profile_on<T: Scalar>(n: usize, active: &ActiveSet, effort: T) -> EffortProfile<T> {
    let x = (0..n)
        .map(|i| if active.contains(i) { effort } else { T::zero() })
        .collect();
    EffortProfile::new(x).expect("nonnegative closed-form efforts")
}

/// Top-valued contestant bids the maximum value, everybody else zero.
fn single_bidder<T: Scalar>(n: usize, i: usize, m: T) -> EffortProfile<T> {
    let mut x = vec![T::zero(); n];
    x[i] = m;
    EffortProfile::new(x).expect("positive value")
}

/// Unique equilibrium of the threshold-triple CSF with its default designation.
pub fn prop2_equilibrium<T: Scalar>(values: &ValueProfile<T>) -> Result<EffortProfile<T>> {
    if values.len() < 3 {
        return config_err(format!("needs n >= 3 contestants, got {}", values.len()));
    }
    Ok(single_bidder(values.len(), values.argmax_set()[0], values.max_value()))
}

/// Both contestants bid half the common value.
pub fn prop3_equilibrium<T: Scalar>(values: &ValueProfile<T>) -> Result<EffortProfile<T>> {
    if values.len() != 2 || !values.is_common_value() {
        return config_err("needs exactly 2 contestants with a common value");
    }
    let half = values.max_value() * T::lit(0.5);
    EffortProfile::new(vec![half, half])
}

/// The extracting equilibrium (top contestant bids the maximum value) and the
/// zero equilibrium of the two-contestant max-value indicator.
pub fn prop4_equilibria<T: Scalar>(
    values: &ValueProfile<T>,
) -> Result<(EffortProfile<T>, EffortProfile<T>)> {
    if values.len() != 2 || values.is_common_value() {
        return config_err("needs exactly 2 contestants with distinct values");
    }
    Ok((
        single_bidder(2, values.argmax_set()[0], values.max_value()),
        EffortProfile::zeros(2),
    ))
}

fn common_value<T: Scalar>(values: &ValueProfile<T>) -> Result<T> {
    if !values.is_common_value() {
        return config_err("needs a common value");
    }
    Ok(values.max_value())
}

/// `m/a` on an active set of size `a`, zero elsewhere.
pub fn power_equilibrium<T: Scalar>(
    values: &ValueProfile<T>,
    a: u32,
    active: &ActiveSet,
) -> Result<EffortProfile<T>> {
    let m = common_value(values)?;
    let n = values.len();
    if a < 2 || a as usize > n {
        return config_err(format!("needs 2 <= a <= n = {n}, got a = {a}"));
    }
    if active.size() != a as usize {
        return config_err(format!("active set has {} members, needs a = {a}", active.size()));
    }
    if let Some(bad) = active.iter().find(|&i| i >= n) {
        return Err(ContestError::IndexOutOfRange { index: bad, n });
    }
    Ok(profile_on(n, active, m / T::count(a as usize)))
}

/// `m a(a-2)/(a-1)^3` on an active set of size `a - 1`, zero elsewhere.
/// Aggregate effort is `m a(a-2)/(a-1)^2 < m`.
pub fn power_partial_equilibrium<T: Scalar>(
    values: &ValueProfile<T>,
    a: u32,
    active: &ActiveSet,
) -> Result<EffortProfile<T>> {
    let m = common_value(values)?;
    let n = values.len();
    if a < 3 || a as usize > n {
        return config_err(format!("needs 3 <= a <= n = {n}, got a = {a}"));
    }
    if active.size() != a as usize - 1 {
        return config_err(format!(
            "active set has {} members, needs a - 1 = {}",
            active.size(),
            a - 1
        ));
    }
    if let Some(bad) = active.iter().find(|&i| i >= n) {
        return Err(ContestError::IndexOutOfRange { index: bad, n });
    }
    let af = T::count(a as usize);
    let am1 = af - T::one();
    Ok(profile_on(n, active, m * af * (af - T::lit(2.0)) / (am1 * am1 * am1)))
}

fn check_lemma2_args<T: Scalar>(v: T, a: u32, b: u32) -> Result<()> {
    if !(v.is_finite() && v > T::zero()) {
        return config_err(format!("v must be finite and > 0, got {v}"));
    }
    if b < 2 || b > a {
        return config_err(format!("needs 2 <= b <= a, got a = {a}, b = {b}"));
    }
    Ok(())
}

/// `x* = v a (b-1) / (b^2 (a-1))`: the best effort against `b - 1` rivals who
/// all bid `x*` under the power CSF with exponent `a/(a-1)`.
pub fn lemma2_maximizer<T: Scalar>(v: T, a: u32, b: u32) -> Result<T> {
    check_lemma2_args(v, a, b)?;
    let (a, b) = (T::count(a as usize), T::count(b as usize));
    Ok(v * a * (b - T::one()) / (b * b * (a - T::one())))
}

/// `u(x) = v x^r / (x^r + (b-1) x*^r) - x` with `r = a/(a-1)`.
pub fn lemma2_objective<T: Scalar>(v: T, a: u32, b: u32, x: T) -> Result<T> {
    let star = lemma2_maximizer(v, a, b)?;
    let af = T::count(a as usize);
    let r = af / (af - T::one());
    let rivals = T::count(b as usize - 1) * star.powf(r);
    let own = if x > T::zero() { x.powf(r) } else { T::zero() };
    Ok(v * own / (own + rivals) - x)
}

/// Analytic `du/dx` of [`lemma2_objective`].
pub fn lemma2_derivative<T: Scalar>(v: T, a: u32, b: u32, x: T) -> Result<T> {
    let star = lemma2_maximizer(v, a, b)?;
    let af = T::count(a as usize);
    let r = af / (af - T::one());
    let rivals = T::count(b as usize - 1) * star.powf(r);
    if x <= T::zero() {
        // x^(r-1) -> 0 since r > 1
        return Ok(-T::one());
    }
    let own = x.powf(r);
    let denom = own + rivals;
    Ok(v * rivals * r * x.powf(r - T::one()) / (denom * denom) - T::one())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Lemma2Check<T> {
    pub v: T,
    pub a: u32,
    pub b: u32,
    pub maximizer: T,
    pub value_at_maximizer: T,
    pub grid_max: T,
    /// Point where the sampled derivative turns nonnegative.
    pub sign_change: Option<T>,
    pub dominates_grid: bool,
    pub sign_pattern_ok: bool,
}

impl<T> Lemma2Check<T> {
    pub fn holds(&self) -> bool {
        self.dominates_grid && self.sign_pattern_ok
    }
}

/// Dense-grid check that `x*` maximizes `u` on `[0, 2v]` and that the sampled
/// derivative is nonpositive up to some `x̄ ∈ (0, x*)`, nonnegative on
/// `(x̄, x*)` and negative beyond `x*`.
pub fn lemma2_analysis<T: Scalar>(v: T, a: u32, b: u32, grid_points: usize) -> Result<Lemma2Check<T>> {
    check_lemma2_args(v, a, b)?;
    if grid_points < 2 {
        return config_err("grid_points must be >= 2");
    }
    let star = lemma2_maximizer(v, a, b)?;
    let at_star = lemma2_objective(v, a, b, star)?;
    let grid = crate::search::linspace(T::zero(), v * T::lit(2.0), grid_points);
    let slack = T::lit(1e-9);
    // derivative sign noise right next to x*, where du/dx crosses zero
    let sign_tol = T::lit(1e-9);
    let near = star * T::lit(1e-6);

    let mut grid_max = T::neg_infinity();
    for &x in &grid {
        grid_max = grid_max.max(lemma2_objective(v, a, b, x)?);
    }

    let mut sign_change = None;
    let mut ok = true;
    for &x in &grid {
        let d = lemma2_derivative(v, a, b, x)?;
        if x > star + near {
            ok &= d < T::zero();
        } else if x >= star - near {
            continue;
        } else if sign_change.is_none() {
            if d > sign_tol {
                sign_change = Some(x);
            }
        } else {
            ok &= d >= -sign_tol;
        }
    }
    let sign_pattern_ok = ok && matches!(sign_change, Some(s) if s > T::zero() && s < star);
    Ok(Lemma2Check {
        v,
        a,
        b,
        maximizer: star,
        value_at_maximizer: at_star,
        grid_max,
        sign_change,
        dominates_grid: at_star >= grid_max - slack,
        sign_pattern_ok,
    })
}

pub fn lemma2_numeric_check<T: Scalar>(v: T, a: u32, b: u32, grid_points: usize) -> Result<bool> {
    Ok(lemma2_analysis(v, a, b, grid_points)?.holds())
}

/// Aggregate effort of the partial power equilibrium relative to the value:
/// `a(a-2)/(a-1)^2`.
pub fn aggregate_ratio<T: Scalar>(a: u32) -> Result<T> {
    if a < 3 {
        return config_err(format!("needs a >= 3, got {a}"));
    }
    let a = T::count(a as usize);
    let am1 = a - T::one();
    Ok(a * (a - T::lit(2.0)) / (am1 * am1))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Candidate<T> {
    pub label: String,
    pub certificate: EquilibriumCertificate<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ExtractiveWitnessed,
    NotWitnessed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ScanSummary<T> {
    pub per_axis_points: usize,
    pub confirmed: usize,
    pub clusters: Vec<Cluster<T>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ExtractivenessReport<T> {
    pub csf: String,
    pub values: ValueProfile<T>,
    pub max_value: T,
    pub candidates: Vec<Candidate<T>>,
    pub scan: Option<ScanSummary<T>>,
    pub verdict: Verdict,
    /// Equilibria with `extraction_ratio < 1 - STRICTNESS_GAP`.
    pub strictness_counter_witnesses: Vec<EquilibriumCertificate<T>>,
}

/// Closed-form candidate profiles known for the game's CSF, labelled.
pub fn closed_form_candidates<T: Scalar>(game: &ContestGame<T>) -> Result<Vec<(String, EffortProfile<T>)>> {
    let values = game.values();
    let n = game.n();
    let m = values.max_value();
    let mut out = Vec::new();
    match game.csf().kind {
        CsfKind::ThresholdTriple { i, .. } => {
            out.push(("designated bidder at max value".into(), single_bidder(n, i, m)));
        }
        CsfKind::CommonIndicator => {
            out.push(("both at half value".into(), prop3_equilibrium(values)?));
        }
        CsfKind::MaxIndicator { i } => {
            out.push(("designated bidder at max value".into(), single_bidder(n, i, m)));
        }
        CsfKind::Power { a } => {
            if values.is_common_value() {
                let full = ActiveSet::first(a as usize, n)?;
                out.push((
                    format!("{a} active at m/a"),
                    power_equilibrium(values, a, &full)?,
                ));
                if a >= 3 {
                    let partial = ActiveSet::first(a as usize - 1, n)?;
                    out.push((
                        format!("{} active at m a(a-2)/(a-1)^3", a - 1),
                        power_partial_equilibrium(values, a, &partial)?,
                    ));
                }
            }
        }
        CsfKind::Lottery => {
            if values.is_common_value() {
                let nf = T::count(n);
                let x = m * (nf - T::one()) / (nf * nf);
                out.push(("symmetric lottery".into(), EffortProfile::new(vec![x; n])?));
            } else if n == 2 {
                let (v0, v1) = (values.get(0), values.get(1));
                let s = (v0 + v1) * (v0 + v1);
                out.push((
                    "asymmetric lottery".into(),
                    EffortProfile::new(vec![v0 * v0 * v1 / s, v0 * v1 * v1 / s])?,
                ));
            }
        }
    }
    out.push(("all zero".into(), EffortProfile::zeros(n)));
    Ok(out)
}

fn is_extracting<T: Scalar>(c: &EquilibriumCertificate<T>) -> bool {
    c.is_epsilon_ne && (c.extraction_ratio - T::one()).abs() <= T::lit(EXTRACTION_TOLERANCE)
}

fn is_counter_witness<T: Scalar>(c: &EquilibriumCertificate<T>) -> bool {
    c.is_epsilon_ne && c.extraction_ratio < T::one() - T::lit(STRICTNESS_GAP)
}

/// Verifies every closed-form candidate and, when `scan_points` is given,
/// adds grid-scan equilibria as further evidence.
pub fn extractiveness_report<T: Scalar>(
    game: &ContestGame<T>,
    cfg: &SearchConfig<T>,
    scan_points: Option<usize>,
) -> Result<ExtractivenessReport<T>> {
    let candidates = closed_form_candidates(game)?
        .into_iter()
        .map(|(label, x)| {
            Ok(Candidate {
                label,
                certificate: verify_equilibrium(game, &x, cfg)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut witnesses: Vec<EquilibriumCertificate<T>> = candidates
        .iter()
        .map(|c| &c.certificate)
        .filter(|c| is_counter_witness(c))
        .cloned()
        .collect();
    let mut extracting = candidates.iter().any(|c| is_extracting(&c.certificate));

    let scan = match scan_points {
        Some(points) => {
            let found = grid_scan(game, cfg, points)?;
            extracting |= found.iter().any(is_extracting);
            for c in found.iter().filter(|c| is_counter_witness(c)) {
                if !witnesses
                    .iter()
                    .any(|w| w.profile.distance(&c.profile) <= cfg.neighborhood_radius)
                {
                    witnesses.push(c.clone());
                }
            }
            Some(ScanSummary {
                per_axis_points: points,
                confirmed: found.len(),
                clusters: cluster_certificates(&found, cfg.neighborhood_radius),
            })
        }
        None => None,
    };

    Ok(ExtractivenessReport {
        csf: game.csf().to_string(),
        values: game.values().clone(),
        max_value: game.max_value(),
        candidates,
        scan,
        verdict: if extracting {
            Verdict::ExtractiveWitnessed
        } else {
            Verdict::NotWitnessed
        },
        strictness_counter_witnesses: witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ProbeCase<T> {
    pub values: ValueProfile<T>,
    /// Top contestant bids its value, everybody else zero: the only profile
    /// that could extract.
    pub forced: EquilibriumCertificate<T>,
    pub forced_top_wins: bool,
    /// Extracting equilibria confirmed by a grid scan, if one was run.
    pub scan_extracting: Option<usize>,
}

impl<T> ProbeCase<T> {
    pub fn extraction_found(&self) -> bool {
        (self.forced.is_epsilon_ne && self.forced_top_wins) || self.scan_extracting.unwrap_or(0) > 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Prop5Report<T> {
    pub csf: String,
    pub low: ProbeCase<T>,
    pub high: ProbeCase<T>,
    /// `u_top(1, 0_{-top})` under the high profile: `2 p_top(1, 0) - 1`.
    pub deviation_payoff: T,
    /// Both forced profiles verified, so the deviation above contradicts the
    /// high one.
    pub contradiction: bool,
    /// Value profile without an extracting equilibrium, `None` if both had one.
    pub non_extracting: Option<ValueProfile<T>>,
}

/// Probes a value-independent CSF family on two value profiles whose top
/// contestant (index 0) values the prize at 1 and at 2, the rest at half that.
/// `scan_points` adds a grid scan of each profile.
pub fn prop5_probe<T: Scalar>(
    family: impl Fn(&ValueProfile<T>) -> Result<CsfSpec<T>>,
    n: usize,
    cfg: &SearchConfig<T>,
    scan_points: Option<usize>,
) -> Result<Prop5Report<T>> {
    if n < 2 {
        return config_err("needs at least 2 contestants");
    }
    let profile = |top: f64| {
        let mut v = vec![T::lit(top * 0.5); n];
        v[0] = T::lit(top);
        ValueProfile::new(v)
    };
    let (low_v, high_v) = (profile(1.0)?, profile(2.0)?);
    let csf = family(&low_v)?;
    if family(&high_v)? != csf || !csf.is_value_independent() {
        return config_err(format!("csf family `{csf}` depends on the values"));
    }

    let case = |values: ValueProfile<T>| -> Result<ProbeCase<T>> {
        let game = ContestGame::new(values.clone(), csf.clone())?;
        let forced = verify_equilibrium(&game, &single_bidder(n, 0, values.get(0)), cfg)?;
        let forced_top_wins = forced.probabilities[0] == T::one();
        let scan_extracting = scan_points
            .map(|p| grid_scan(&game, cfg, p).map(|f| f.iter().filter(|c| is_extracting(c)).count()))
            .transpose()?;
        Ok(ProbeCase {
            values,
            forced,
            forced_top_wins,
            scan_extracting,
        })
    };
    let low = case(low_v)?;
    let high = case(high_v)?;

    let high_game = ContestGame::new(high.values.clone(), csf.clone())?;
    let p_top = high_game.probabilities(&single_bidder(n, 0, T::one()))?.get(0);
    let deviation_payoff = T::lit(2.0) * p_top - T::one();
    let contradiction = low.extraction_found() && high.extraction_found();
    let non_extracting = if !low.extraction_found() {
        Some(low.values.clone())
    } else if !high.extraction_found() {
        Some(high.values.clone())
    } else {
        None
    };
    Ok(Prop5Report {
        csf: csf.to_string(),
        low,
        high,
        deviation_payoff,
        contradiction,
        non_extracting,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SymmetricProbe<T> {
    pub active: usize,
    pub effort: T,
    pub max_regret: T,
    /// `v(α-2)/α^2`, the gain from dropping out.
    pub required_regret: T,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Prop7Report<T> {
    pub n: usize,
    pub value: T,
    pub confirmed: usize,
    pub clusters: Vec<Cluster<T>>,
    /// Largest sup-norm distance from a confirmed equilibrium to the nearest
    /// "two contestants at v/2" profile.
    pub max_distance: T,
    pub all_near_pairs: bool,
    pub symmetric: Vec<SymmetricProbe<T>>,
}

impl<T> Prop7Report<T> {
    pub fn holds(&self) -> bool {
        self.all_near_pairs && self.symmetric.iter().all(|s| s.ok)
    }
}

/// Grid scan of the quadratic power CSF under a common value: every
/// equilibrium should sit near two contestants at `v/2`, and the symmetric
/// `α`-active stationary points for `α >= 3` should all carry regret.
pub fn prop7_uniqueness_scan<T: Scalar>(
    n: usize,
    v: T,
    cfg: &SearchConfig<T>,
    per_axis_points: usize,
) -> Result<Prop7Report<T>> {
    let values = ValueProfile::common(n, v)?;
    let game = ContestGame::new(values.clone(), CsfSpec::power(2))?;
    let found = grid_scan(&game, cfg, per_axis_points)?;
    let pairs: Vec<EffortProfile<T>> = ActiveSet::all_of_size(2, n)
        .iter()
        .map(|a| power_equilibrium(&values, 2, a))
        .collect::<Result<_>>()?;
    let max_distance = found
        .iter()
        .map(|c| {
            pairs
                .iter()
                .map(|p| p.distance(&c.profile))
                .fold(T::infinity(), T::min)
        })
        .fold(T::zero(), T::max);

    let symmetric = (3..=n)
        .map(|alpha| {
            let af = T::count(alpha);
            let effort = T::lit(2.0) * v * (af - T::one()) / (af * af);
            let x = profile_on(n, &ActiveSet::first(alpha, n)?, effort);
            let cert = verify_equilibrium(&game, &x, cfg)?;
            let required_regret = v * (af - T::lit(2.0)) / (af * af);
            Ok(SymmetricProbe {
                active: alpha,
                effort,
                max_regret: cert.max_regret,
                required_regret,
                ok: cert.max_regret >= required_regret - cfg.epsilon,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Prop7Report {
        n,
        value: v,
        confirmed: found.len(),
        clusters: cluster_certificates(&found, cfg.neighborhood_radius),
        all_near_pairs: max_distance <= cfg.neighborhood_radius,
        max_distance,
        symmetric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vp(v: &[f64]) -> ValueProfile<f64> {
        ValueProfile::new(v.to_vec()).unwrap()
    }

    #[test]
    fn prop2_examples() {
        assert_eq!(prop2_equilibrium(&vp(&[3.0, 1.0, 1.0])).unwrap().as_slice(), &[3.0, 0.0, 0.0]);
        assert_eq!(prop2_equilibrium(&vp(&[1.0, 1.0, 1.0])).unwrap().as_slice(), &[1.0, 0.0, 0.0]);
        assert!(prop2_equilibrium(&vp(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn prop3_examples() {
        assert_eq!(prop3_equilibrium(&vp(&[2.0, 2.0])).unwrap().as_slice(), &[1.0, 1.0]);
        assert_eq!(prop3_equilibrium(&vp(&[5.0, 5.0])).unwrap().as_slice(), &[2.5, 2.5]);
        assert!(prop3_equilibrium(&vp(&[2.0, 1.0])).is_err());
    }

    #[test]
    fn prop4_examples() {
        let (x, y) = prop4_equilibria(&vp(&[2.0, 1.0])).unwrap();
        assert_eq!((x.as_slice(), y.as_slice()), (&[2.0, 0.0][..], &[0.0, 0.0][..]));
        let (x, _) = prop4_equilibria(&vp(&[1.0, 3.0])).unwrap();
        assert_eq!(x.as_slice(), &[0.0, 3.0]);
        assert!(prop4_equilibria(&vp(&[4.0, 4.0])).is_err());
    }

    #[test]
    fn power_equilibrium_examples() {
        let v = vp(&[1.0, 1.0, 1.0]);
        let a = ActiveSet::new([0, 2], 3).unwrap();
        assert_eq!(power_equilibrium(&v, 2, &a).unwrap().as_slice(), &[0.5, 0.0, 0.5]);
        let x = power_equilibrium(&vp(&[2.0, 2.0, 2.0]), 3, &ActiveSet::first(3, 3).unwrap()).unwrap();
        assert_eq!(x.as_slice(), &[2.0 / 3.0; 3]);
        assert!(power_equilibrium(&v, 2, &ActiveSet::first(3, 3).unwrap()).is_err());
        assert!(power_equilibrium(&vp(&[1.0, 2.0]), 2, &ActiveSet::first(2, 2).unwrap()).is_err());
    }

    #[test]
    fn power_partial_examples() {
        let x = power_partial_equilibrium(&vp(&[1.0; 3]), 3, &ActiveSet::first(2, 3).unwrap()).unwrap();
        assert_eq!(x.as_slice(), &[0.375, 0.375, 0.0]);
        let x = power_partial_equilibrium(&vp(&[2.0; 4]), 4, &ActiveSet::first(3, 4).unwrap()).unwrap();
        for &xi in &x.as_slice()[..3] {
            assert!((xi - 16.0 / 27.0).abs() < 1e-15);
        }
        assert_eq!(x.get(3), 0.0);
        assert!(power_partial_equilibrium(&vp(&[1.0; 3]), 2, &ActiveSet::first(1, 3).unwrap()).is_err());
        assert!(power_partial_equilibrium(&vp(&[1.0; 3]), 3, &ActiveSet::first(3, 3).unwrap()).is_err());
    }

    #[test]
    fn lemma2_examples() {
        assert_eq!(lemma2_maximizer(1.0, 2, 2).unwrap(), 0.5);
        assert!((lemma2_maximizer(1.0_f64, 3, 3).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(lemma2_maximizer(1.0, 3, 2).unwrap(), 0.375);
        assert!(lemma2_maximizer(1.0, 3, 4).is_err());
        assert!(lemma2_maximizer(1.0, 3, 1).is_err());
    }

    #[test]
    fn lemma2_objective_at_zero() {
        assert_eq!(lemma2_objective(1.0, 3, 2, 0.0).unwrap(), 0.0);
        // value v/b^2 (a-b)/(a-1) at the maximizer
        let u = lemma2_objective(1.0_f64, 3, 2, 0.375).unwrap();
        assert!((u - 0.125).abs() < 1e-15);
    }

    #[test]
    fn aggregate_ratio_examples() {
        assert_eq!(aggregate_ratio::<f64>(3).unwrap(), 0.75);
        assert!((aggregate_ratio::<f64>(4).unwrap() - 8.0 / 9.0).abs() < 1e-15);
        assert!((aggregate_ratio::<f64>(1000).unwrap() - 1.0).abs() < 1.01e-6);
        assert!(aggregate_ratio::<f64>(2).is_err());
    }

    #[test]
    fn active_set_enumeration() {
        let sets = ActiveSet::all_of_size(2, 4);
        assert_eq!(sets.len(), 6);
        assert_eq!(sets[0].iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(sets[5].iter().collect::<Vec<_>>(), vec![2, 3]);
        assert!(ActiveSet::new([0, 4], 4).is_err());
        let x = EffortProfile::new(vec![0.0, 0.3, 0.0, 1.0]).unwrap();
        assert_eq!(ActiveSet::of_profile(&x).iter().collect::<Vec<_>>(), vec![1, 3]);
    }
}
