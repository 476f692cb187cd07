//! Catalog of contest success functions and their evaluation.
//!
//! Every CSF maps an effort profile to a point of the probability simplex.
//! Indicator tests of the form "effort equals the maximum value" compare with
//! an absolute tolerance `eta` because the efforts being tested are computed;
//! strict positivity tests are exact.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::contest::{EffortProfile, ValueProfile, WinProbabilities};
use crate::error::{config_err, ContestError, Result};
use crate::scalar::Scalar;

pub const DEFAULT_ETA: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CsfKind {
    /// Three designated contestants. `i` wins when its effort equals the
    /// maximum value, otherwise `j` wins if it is active, otherwise `k` wins.
    ThresholdTriple { i: usize, j: usize, k: usize },
    /// Two contestants with a common value. While both are active, hitting
    /// half the value wins; otherwise the active contestant wins.
    CommonIndicator,
    /// Two contestants. `i` wins exactly when its effort equals the maximum
    /// value; the other contestant wins otherwise.
    MaxIndicator { i: usize },
    /// Winning odds proportional to `x^(a/(a-1))`, uniform at the zero profile.
    Power { a: u32 },
    /// Proportional lottery `x_i / sum x`, uniform at the zero profile.
    Lottery,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct CsfSpec<T> {
    pub kind: CsfKind,
    /// Absolute tolerance of indicator equality tests.
    pub eta: T,
    /// Pinned reference value for indicator tests. `None` reads the maximum
    /// of the game's value profile at evaluation time.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<T>,
}

impl<T: Scalar> CsfSpec<T> {
    pub fn new(kind: CsfKind) -> Self {
        Self {
            kind,
            eta: T::lit(DEFAULT_ETA),
            threshold: None,
        }
    }

    pub fn power(a: u32) -> Self {
        Self::new(CsfKind::Power { a })
    }

    pub fn lottery() -> Self {
        Self::new(CsfKind::Lottery)
    }

    pub fn common_indicator() -> Self {
        Self::new(CsfKind::CommonIndicator)
    }

    pub fn max_indicator(i: usize) -> Self {
        Self::new(CsfKind::MaxIndicator { i })
    }

    pub fn threshold_triple(i: usize, j: usize, k: usize) -> Self {
        Self::new(CsfKind::ThresholdTriple { i, j, k })
    }

    /// Threshold triple with `i` the smallest index of a top-valued
    /// contestant and `j`, `k` the two smallest remaining indices.
    pub fn threshold_triple_for(values: &ValueProfile<T>) -> Result<Self> {
        if values.len() < 3 {
            return config_err("threshold-triple needs at least 3 contestants");
        }
        let i = values.argmax_set()[0];
        let mut rest = (0..values.len()).filter(|&l| l != i);
        let j = rest.next().expect("n >= 3");
        let k = rest.next().expect("n >= 3");
        Ok(Self::threshold_triple(i, j, k))
    }

    /// Max-value indicator designating the smallest top-valued contestant.
    pub fn max_indicator_for(values: &ValueProfile<T>) -> Self {
        Self::max_indicator(values.argmax_set()[0])
    }

    pub fn with_eta(mut self, eta: T) -> Self {
        self.eta = eta;
        self
    }

    pub fn with_threshold(mut self, threshold: T) -> Self {
        self.threshold = Some(threshold);
        self
    }

    /// Canonical short name: `threshold-triple`, `common-indicator`,
    /// `max-indicator`, `power:a=<a>` or `lottery`.
    pub fn name(&self) -> String {
        match self.kind {
            CsfKind::ThresholdTriple { .. } => "threshold-triple".into(),
            CsfKind::CommonIndicator => "common-indicator".into(),
            CsfKind::MaxIndicator { .. } => "max-indicator".into(),
            CsfKind::Power { a } => format!("power:a={a}"),
            CsfKind::Lottery => "lottery".into(),
        }
    }

    /// Whether the CSF is continuous on the positive orthant, so golden
    /// section refinement of best responses is meaningful.
    pub fn is_smooth(&self) -> bool {
        matches!(self.kind, CsfKind::Power { .. } | CsfKind::Lottery)
    }

    /// Whether evaluation ignores the game's values entirely.
    pub fn is_value_independent(&self) -> bool {
        match self.kind {
            CsfKind::Power { .. } | CsfKind::Lottery => true,
            _ => self.threshold.is_some(),
        }
    }

    fn reference_value(&self, values: &ValueProfile<T>) -> T {
        self.threshold.unwrap_or_else(|| values.max_value())
    }

    pub fn check_admissible(&self, values: &ValueProfile<T>) -> Result<()> {
        let n = values.len();
        if !(self.eta.is_finite() && self.eta >= T::zero()) {
            return config_err(format!("eta must be finite and >= 0, got {}", self.eta));
        }
        if let Some(t) = self.threshold {
            if !(t.is_finite() && t > T::zero()) {
                return config_err(format!("threshold must be finite and > 0, got {t}"));
            }
        }
        let top = values.argmax_set();
        match self.kind {
            CsfKind::ThresholdTriple { i, j, k } => {
                if n < 3 {
                    return config_err(format!("threshold-triple needs n >= 3, got n = {n}"));
                }
                if i == j || j == k || i == k {
                    return config_err(format!(
                        "threshold-triple indices must be distinct, got ({i}, {j}, {k})"
                    ));
                }
                if let Some(&bad) = [i, j, k].iter().find(|&&l| l >= n) {
                    return Err(ContestError::IndexOutOfRange { index: bad, n });
                }
                if !top.contains(&i) {
                    return config_err(format!(
                        "threshold-triple designated contestant {i} does not hold the maximum value"
                    ));
                }
            }
            CsfKind::CommonIndicator => {
                if n != 2 {
                    return config_err(format!("common-indicator needs n = 2, got n = {n}"));
                }
                if !values.is_common_value() {
                    return config_err("common-indicator needs a common value");
                }
            }
            CsfKind::MaxIndicator { i } => {
                if n != 2 {
                    return config_err(format!("max-indicator needs n = 2, got n = {n}"));
                }
                if i >= n {
                    return Err(ContestError::IndexOutOfRange { index: i, n });
                }
                if !top.contains(&i) {
                    return config_err(format!(
                        "max-indicator designated contestant {i} does not hold the maximum value"
                    ));
                }
            }
            CsfKind::Power { a } => {
                if a < 2 || a as usize > n {
                    return config_err(format!("power CSF needs 2 <= a <= n = {n}, got a = {a}"));
                }
            }
            CsfKind::Lottery => {}
        }
        Ok(())
    }

    pub fn evaluate(
        &self,
        values: &ValueProfile<T>,
        profile: &EffortProfile<T>,
    ) -> Result<WinProbabilities<T>> {
        self.check_admissible(values)?;
        if profile.len() != values.len() {
            return Err(ContestError::LengthMismatch {
                expected: values.len(),
                got: profile.len(),
            });
        }
        let mut out = vec![T::zero(); values.len()];
        self.fill_probabilities(values, profile.as_slice(), &mut out);
        WinProbabilities::new(out)
    }

    /// Writes winning probabilities into `out`. Assumes admissibility and
    /// matching lengths have been checked.
    pub(crate) fn fill_probabilities(&self, values: &ValueProfile<T>, x: &[T], out: &mut [T]) {
        let n = x.len();
        let zero = T::zero();
        let one = T::one();
        let half = T::lit(0.5);
        let hits = |effort: T, target: T| (effort - target).abs() <= self.eta;
        let indicator = |b: bool| if b { one } else { zero };
        match self.kind {
            CsfKind::ThresholdTriple { i, j, k } => {
                let m = self.reference_value(values);
                let winner = if hits(x[i], m) {
                    i
                } else if x[j] > zero {
                    j
                } else {
                    k
                };
                out.iter_mut().for_each(|p| *p = zero);
                out[winner] = one;
            }
            CsfKind::CommonIndicator => {
                let target = self.reference_value(values) * half;
                for (me, other) in [(0, 1), (1, 0)] {
                    out[me] = if x[0] > zero && x[1] > zero {
                        (indicator(hits(x[me], target)) - indicator(hits(x[other], target)) + one)
                            * half
                    } else {
                        (indicator(x[me] > zero) - indicator(x[other] > zero) + one) * half
                    };
                }
            }
            CsfKind::MaxIndicator { i } => {
                let m = self.reference_value(values);
                let p = indicator(hits(x[i], m));
                out[i] = p;
                out[1 - i] = one - p;
            }
            CsfKind::Power { a } => {
                let a = T::count(a as usize);
                let exponent = a / (a - one);
                proportional(x, out, |y| {
                    if y > zero {
                        (exponent * y.ln()).exp()
                    } else {
                        zero
                    }
                });
            }
            CsfKind::Lottery => proportional(x, out, |y| y),
        }
        debug_assert_eq!(out.len(), n);
    }

    /// Efforts at which the player's winning probability can jump, plus
    /// closed-form equilibrium efforts. Sorted ascending, deduplicated,
    /// always containing zero.
    pub fn critical_points(&self, values: &ValueProfile<T>, player: usize) -> Result<Vec<T>> {
        self.check_admissible(values)?;
        if player >= values.len() {
            return Err(ContestError::IndexOutOfRange {
                index: player,
                n: values.len(),
            });
        }
        let m = self.reference_value(values);
        let mut pts = vec![T::zero()];
        match self.kind {
            CsfKind::ThresholdTriple { .. } | CsfKind::MaxIndicator { .. } => pts.push(m),
            CsfKind::CommonIndicator => {
                pts.push(m * T::lit(0.5));
                pts.push(m);
            }
            CsfKind::Power { a } => {
                let a = T::count(a as usize);
                let one = T::one();
                let two = T::lit(2.0);
                pts.push(m / a);
                pts.push(m * a * (a - two) / ((a - one) * (a - one) * (a - one)));
            }
            CsfKind::Lottery => {}
        }
        pts.sort_by(|a, b| a.partial_cmp(b).expect("finite critical points"));
        pts.dedup();
        Ok(pts)
    }

    /// Parses a canonical CSF name, filling designated indices from `values`
    /// when they are not given explicitly.
    ///
    /// Accepted forms: `threshold-triple[:i=..,j=..,k=..]`, `common-indicator`,
    /// `max-indicator[:i=..]`, `power:a=<int>`, `lottery`.
    pub fn parse(name: &str, values: &ValueProfile<T>) -> Result<Self> {
        let name = name.trim();
        let (head, params) = match name.split_once(':') {
            Some((h, p)) => (h, parse_params(p)?),
            None => (name, Vec::new()),
        };
        let get = |key: &str| -> Result<Option<usize>> {
            params
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| {
                    v.parse::<usize>().map_err(|_| {
                        ContestError::Config(format!("csf parameter `{key}` must be an integer, got `{v}`"))
                    })
                })
                .transpose()
        };
        let allow = |keys: &[&str]| -> Result<()> {
            match params.iter().find(|(k, _)| !keys.contains(&k.as_str())) {
                Some((k, _)) => config_err(format!("unknown parameter `{k}` for csf `{head}`")),
                None => Ok(()),
            }
        };
        let spec = match head {
            "threshold-triple" => {
                allow(&["i", "j", "k"])?;
                match (get("i")?, get("j")?, get("k")?) {
                    (None, None, None) => Self::threshold_triple_for(values)?,
                    (Some(i), Some(j), Some(k)) => Self::threshold_triple(i, j, k),
                    _ => return config_err("threshold-triple needs all of i, j, k or none"),
                }
            }
            "common-indicator" => {
                allow(&[])?;
                Self::common_indicator()
            }
            "max-indicator" => {
                allow(&["i"])?;
                match get("i")? {
                    Some(i) => Self::max_indicator(i),
                    None => Self::max_indicator_for(values),
                }
            }
            "power" => {
                allow(&["a"])?;
                let a = get("a")?
                    .ok_or_else(|| ContestError::Config("power CSF needs `a`, e.g. power:a=2".into()))?;
                let a = u32::try_from(a)
                    .map_err(|_| ContestError::Config(format!("power exponent a = {a} too large")))?;
                Self::power(a)
            }
            "lottery" => {
                allow(&[])?;
                Self::lottery()
            }
            other => return config_err(format!("unknown csf `{other}`")),
        };
        spec.check_admissible(values)?;
        Ok(spec)
    }
}

impl<T: Scalar> fmt::Display for CsfSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CsfKind::ThresholdTriple { i, j, k } => write!(f, "threshold-triple:i={i},j={j},k={k}"),
            CsfKind::MaxIndicator { i } => write!(f, "max-indicator:i={i}"),
            _ => f.write_str(&self.name()),
        }
    }
}

fn parse_params(s: &str) -> Result<Vec<(String, String)>> {
    s.split(',')
        .map(|kv| match kv.split_once('=') {
            Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
            _ => config_err(format!("malformed csf parameter `{kv}`, expected key=value")),
        })
        .collect()
}

/// Shares proportional to `weight(x_i / max x)`; uniform at the zero profile.
fn proportional<T: Scalar>(x: &[T], out: &mut [T], weight: impl Fn(T) -> T) {
    let top = x.iter().copied().fold(T::zero(), T::max);
    if top <= T::zero() {
        let u = T::one() / T::count(x.len());
        out.iter_mut().for_each(|p| *p = u);
        return;
    }
    let mut total = T::zero();
    for (o, &xi) in out.iter_mut().zip(x) {
        *o = weight(xi / top);
        total = total + *o;
    }
    out.iter_mut().for_each(|p| *p = *p / total);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vp(v: &[f64]) -> ValueProfile<f64> {
        ValueProfile::new(v.to_vec()).unwrap()
    }

    fn ep(x: &[f64]) -> EffortProfile<f64> {
        EffortProfile::new(x.to_vec()).unwrap()
    }

    fn probs(csf: &CsfSpec<f64>, v: &[f64], x: &[f64]) -> Vec<f64> {
        csf.evaluate(&vp(v), &ep(x)).unwrap().as_slice().to_vec()
    }

    #[test]
    fn threshold_triple_rules() {
        let csf = CsfSpec::threshold_triple(0, 1, 2);
        assert_eq!(probs(&csf, &[3.0, 1.0, 1.0], &[3.0, 0.0, 0.0]), vec![1.0, 0.0, 0.0]);
        assert_eq!(probs(&csf, &[3.0, 1.0, 1.0], &[1.0, 2.0, 0.0]), vec![0.0, 1.0, 0.0]);
        assert_eq!(probs(&csf, &[3.0, 1.0, 1.0], &[0.0, 0.0, 5.0]), vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn common_indicator_branches() {
        let csf = CsfSpec::common_indicator();
        assert_eq!(probs(&csf, &[2.0, 2.0], &[1.0, 1.0]), vec![0.5, 0.5]);
        assert_eq!(probs(&csf, &[2.0, 2.0], &[0.0, 3.0]), vec![0.0, 1.0]);
        assert_eq!(probs(&csf, &[2.0, 2.0], &[0.0, 0.0]), vec![0.5, 0.5]);
        // hitting half the value against an active rival who misses it
        assert_eq!(probs(&csf, &[2.0, 2.0], &[1.0, 0.3]), vec![1.0, 0.0]);
        assert_eq!(probs(&csf, &[2.0, 2.0], &[0.7, 0.3]), vec![0.5, 0.5]);
    }

    #[test]
    fn max_indicator_tolerance() {
        let csf = CsfSpec::max_indicator(0);
        assert_eq!(probs(&csf, &[2.0, 1.0], &[2.0, 0.7]), vec![1.0, 0.0]);
        assert_eq!(probs(&csf, &[2.0, 1.0], &[2.0 + 5e-13, 0.0]), vec![1.0, 0.0]);
        assert_eq!(probs(&csf, &[2.0, 1.0], &[2.0 + 1e-11, 0.0]), vec![0.0, 1.0]);
    }

    #[test]
    fn power_share_examples() {
        let p = probs(&CsfSpec::power(2), &[1.0, 1.0, 1.0], &[0.0, 0.0, 0.0]);
        for pi in p {
            assert!((pi - 1.0 / 3.0).abs() < 1e-15);
        }
        let p = probs(&CsfSpec::power(2), &[1.0, 1.0], &[1.0, 3.0]);
        assert!((p[0] - 0.1).abs() < 1e-15 && (p[1] - 0.9).abs() < 1e-15);
    }

    #[test]
    fn power_share_handles_tiny_efforts() {
        let p = probs(&CsfSpec::power(3), &[1.0, 1.0, 1.0], &[1e-300, 0.0, 2e-300]);
        assert!(p.iter().all(|q| q.is_finite()));
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lottery_is_proportional() {
        let p = probs(&CsfSpec::lottery(), &[1.0, 1.0], &[0.25, 0.75]);
        assert_eq!(p, vec![0.25, 0.75]);
        let p = probs(&CsfSpec::lottery(), &[1.0, 1.0], &[0.0, 0.0]);
        assert_eq!(p, vec![0.5, 0.5]);
    }

    #[test]
    fn inadmissible_pairings() {
        assert!(CsfSpec::threshold_triple(0, 1, 2).check_admissible(&vp(&[1.0, 2.0])).is_err());
        assert!(CsfSpec::threshold_triple(1, 0, 2).check_admissible(&vp(&[3.0, 1.0, 1.0])).is_err());
        assert!(CsfSpec::threshold_triple(0, 0, 2).check_admissible(&vp(&[3.0, 1.0, 1.0])).is_err());
        assert!(CsfSpec::<f64>::power(5).check_admissible(&vp(&[1.0, 1.0])).is_err());
        assert!(CsfSpec::<f64>::power(1).check_admissible(&vp(&[1.0, 1.0])).is_err());
        assert!(CsfSpec::max_indicator(1).check_admissible(&vp(&[2.0, 1.0])).is_err());
        assert!(CsfSpec::common_indicator().check_admissible(&vp(&[2.0, 1.0])).is_err());
        assert!(CsfSpec::common_indicator().check_admissible(&vp(&[2.0, 2.0, 2.0])).is_err());
        assert!(CsfSpec::lottery().with_eta(-1.0).check_admissible(&vp(&[2.0, 2.0])).is_err());
    }

    #[test]
    fn critical_point_examples() {
        let v = vp(&[2.0, 1.0]);
        assert_eq!(CsfSpec::max_indicator(0).critical_points(&v, 0).unwrap(), vec![0.0, 2.0]);
        let v = vp(&[1.0, 1.0, 1.0]);
        assert_eq!(
            CsfSpec::power(3).critical_points(&v, 1).unwrap(),
            vec![0.0, 1.0 / 3.0, 3.0 / 8.0]
        );
        assert_eq!(CsfSpec::lottery().critical_points(&v, 2).unwrap(), vec![0.0]);
        assert_eq!(CsfSpec::power(2).critical_points(&v, 0).unwrap(), vec![0.0, 0.5]);
        let v = vp(&[2.0, 2.0]);
        assert_eq!(
            CsfSpec::common_indicator().critical_points(&v, 1).unwrap(),
            vec![0.0, 1.0, 2.0]
        );
        assert!(CsfSpec::lottery().critical_points(&v, 2).is_err());
    }

    #[test]
    fn default_designations() {
        let csf = CsfSpec::threshold_triple_for(&vp(&[1.0, 2.0, 2.0, 0.5])).unwrap();
        assert_eq!(csf.kind, CsfKind::ThresholdTriple { i: 1, j: 0, k: 2 });
        assert_eq!(CsfSpec::max_indicator_for(&vp(&[1.0, 3.0])).kind, CsfKind::MaxIndicator { i: 1 });
        assert!(CsfSpec::threshold_triple_for(&vp(&[1.0, 3.0])).is_err());
    }

    #[test]
    fn parse_names() {
        let v3 = vp(&[3.0, 1.0, 1.0]);
        let v2 = vp(&[2.0, 1.0]);
        assert_eq!(
            CsfSpec::parse("threshold-triple", &v3).unwrap().kind,
            CsfKind::ThresholdTriple { i: 0, j: 1, k: 2 }
        );
        assert_eq!(
            CsfSpec::parse("threshold-triple:i=0,j=2,k=1", &v3).unwrap().kind,
            CsfKind::ThresholdTriple { i: 0, j: 2, k: 1 }
        );
        assert_eq!(CsfSpec::parse("max-indicator", &v2).unwrap().kind, CsfKind::MaxIndicator { i: 0 });
        assert_eq!(CsfSpec::parse("power:a=2", &v2).unwrap().kind, CsfKind::Power { a: 2 });
        assert_eq!(CsfSpec::parse("lottery", &v2).unwrap().kind, CsfKind::Lottery);
        assert!(CsfSpec::parse("power:a=5", &v2).is_err());
        assert!(CsfSpec::parse("power", &v2).is_err());
        assert!(CsfSpec::parse("power:b=2", &v2).is_err());
        assert!(CsfSpec::parse("threshold-triple:i=0", &v3).is_err());
        assert!(CsfSpec::parse("tullock", &v2).is_err());
        assert!(CsfSpec::parse("common-indicator", &v2).is_err());
    }

    #[test]
    fn display_round_trips_through_parse() {
        let v3 = vp(&[1.0, 1.0, 1.0]);
        for csf in [
            CsfSpec::threshold_triple(2, 0, 1),
            CsfSpec::power(3),
            CsfSpec::lottery(),
        ] {
            assert_eq!(CsfSpec::parse(&csf.to_string(), &v3).unwrap(), csf);
        }
    }

    #[test]
    fn pinned_threshold_is_stale_under_other_values() {
        let csf = CsfSpec::max_indicator(0).with_threshold(1.0);
        assert!(csf.is_value_independent());
        assert_eq!(probs(&csf, &[2.0, 1.0], &[2.0, 0.0]), vec![0.0, 1.0]);
        assert_eq!(probs(&csf, &[2.0, 1.0], &[1.0, 0.0]), vec![1.0, 0.0]);
    }

    #[test]
    fn works_in_single_precision() {
        let v = ValueProfile::<f32>::new(vec![1.0, 1.0]).unwrap();
        let x = EffortProfile::<f32>::new(vec![1.0, 3.0]).unwrap();
        let p = CsfSpec::<f32>::power(2).evaluate(&v, &x).unwrap();
        assert!((p.get(0) - 0.1).abs() < 1e-6);
    }
}
