//! Best-response oracle, regret, epsilon-Nash certificates, exhaustive grid
//! scans and best-response dynamics.
//!
//! Deviations are searched on `[0, v_i]` only: any effort above `v_i` pays
//! more than the prize is worth, so it is strictly worse than effort zero.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contest::{ContestGame, EffortProfile};
use crate::error::{config_err, ContestError, Result};
use crate::scalar::Scalar;
use crate::search::{golden_section_max, linspace, sort_dedup};

/// Largest product grid `grid_scan` will enumerate.
pub const MAX_SCAN_CELLS: u128 = 100_000_000;

/// Critical points are probed at `c ± BRACKET_ETAS * eta`.
const BRACKET_ETAS: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SearchConfig<T> {
    /// Uniform grid points on `[0, v_i]` for every best-response search.
    pub grid_points: usize,
    /// Golden-section steps around the best grid cell (smooth CSFs only).
    pub refine_iters: usize,
    /// Regret tolerance of an epsilon-Nash equilibrium.
    pub epsilon: T,
    /// Sup-norm radius used when clustering scan results.
    pub neighborhood_radius: T,
}

impl<T: Scalar> Default for SearchConfig<T> {
    fn default() -> Self {
        Self {
            grid_points: 2001,
            refine_iters: 60,
            epsilon: T::lit(1e-6),
            neighborhood_radius: T::lit(1e-3),
        }
    }
}

impl<T: Scalar> SearchConfig<T> {
    pub fn with_epsilon(mut self, epsilon: T) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_grid_points(mut self, grid_points: usize) -> Self {
        self.grid_points = grid_points;
        self
    }

    pub fn with_refine_iters(mut self, refine_iters: usize) -> Self {
        self.refine_iters = refine_iters;
        self
    }

    pub fn with_neighborhood_radius(mut self, radius: T) -> Self {
        self.neighborhood_radius = radius;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 2 {
            return config_err(format!("grid_points must be >= 2, got {}", self.grid_points));
        }
        if !(self.epsilon.is_finite() && self.epsilon >= T::zero()) {
            return config_err(format!("epsilon must be finite and >= 0, got {}", self.epsilon));
        }
        if !(self.neighborhood_radius.is_finite() && self.neighborhood_radius >= T::zero()) {
            return config_err(format!(
                "neighborhood_radius must be finite and >= 0, got {}",
                self.neighborhood_radius
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct BestResponse<T> {
    pub effort: T,
    pub payoff: T,
}

/// Evidence that a profile is (or is not) an epsilon-Nash equilibrium.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct EquilibriumCertificate<T> {
    pub profile: EffortProfile<T>,
    pub probabilities: Vec<T>,
    pub payoffs: Vec<T>,
    pub best_responses: Vec<BestResponse<T>>,
    pub per_player_regret: Vec<T>,
    pub max_regret: T,
    pub aggregate: T,
    pub extraction_ratio: T,
    pub epsilon: T,
    pub is_epsilon_ne: bool,
}

/// Candidate deviations of one player: the uniform grid on `[0, v_i]`, the
/// CSF's critical points with their `±10 eta` brackets, and the current effort.
fn candidate_efforts<T: Scalar>(
    game: &ContestGame<T>,
    player: usize,
    current: T,
    cfg: &SearchConfig<T>,
) -> Result<Vec<T>> {
    let cap = game.values().get(player);
    let bracket = game.csf().eta * T::lit(BRACKET_ETAS);
    let mut cands = linspace(T::zero(), cap, cfg.grid_points);
    for c in game.csf().critical_points(game.values(), player)? {
        for x in [c - bracket, c, c + bracket] {
            if x >= T::zero() && x <= cap {
                cands.push(x);
            }
        }
    }
    cands.push(current);
    sort_dedup(&mut cands);
    Ok(cands)
}

fn check_player<T: Scalar>(game: &ContestGame<T>, player: usize) -> Result<()> {
    if player >= game.n() {
        return Err(ContestError::IndexOutOfRange {
            index: player,
            n: game.n(),
        });
    }
    Ok(())
}

/// Approximate maximizer of `x ↦ u_i(x, x_{-i})` over `[0, v_i]`.
///
/// Ties keep the current effort when it attains the maximum and otherwise go
/// to the smallest effort. For smooth CSFs the best candidate is
/// refined by golden-section search between its neighbouring candidates and
/// replaced only on strict improvement.
pub fn best_response<T: Scalar>(
    game: &ContestGame<T>,
    player: usize,
    profile: &EffortProfile<T>,
    cfg: &SearchConfig<T>,
) -> Result<BestResponse<T>> {
    cfg.validate()?;
    game.check_profile(profile)?;
    check_player(game, player)?;
    let cands = candidate_efforts(game, player, profile.get(player), cfg)?;

    let mut efforts = profile.as_slice().to_vec();
    let mut scratch = vec![T::zero(); game.n()];
    let mut utility = |x: T| {
        efforts[player] = x;
        game.utility_raw(player, &efforts, &mut scratch)
    };

    let mut best_idx = 0;
    let mut best = utility(cands[0]);
    for (idx, &x) in cands.iter().enumerate().skip(1) {
        let u = utility(x);
        if u > best {
            best = u;
            best_idx = idx;
        }
    }
    let current = profile.get(player);
    let mut out = BestResponse {
        effort: cands[best_idx],
        payoff: best,
    };
    if cands[best_idx] != current && utility(current) == best {
        out.effort = current;
    }

    if game.csf().is_smooth() && cfg.refine_iters > 0 {
        let lo = cands[best_idx.saturating_sub(1)];
        let hi = cands[(best_idx + 1).min(cands.len() - 1)];
        if hi > lo {
            let (x, u) = golden_section_max(lo, hi, cfg.refine_iters, &mut utility);
            if u > out.payoff {
                out = BestResponse { effort: x, payoff: u };
            }
        }
    }
    Ok(out)
}

/// Best-response payoff minus current payoff for every player, floored at 0.
pub fn regret<T: Scalar>(
    game: &ContestGame<T>,
    profile: &EffortProfile<T>,
    cfg: &SearchConfig<T>,
) -> Result<Vec<T>> {
    Ok(verify_equilibrium(game, profile, cfg)?.per_player_regret)
}

pub fn verify_equilibrium<T: Scalar>(
    game: &ContestGame<T>,
    profile: &EffortProfile<T>,
    cfg: &SearchConfig<T>,
) -> Result<EquilibriumCertificate<T>> {
    cfg.validate()?;
    game.check_profile(profile)?;
    let probabilities = game.probabilities(profile)?.as_slice().to_vec();
    let payoffs = game.payoff(profile)?;
    let best_responses = (0..game.n())
        .map(|i| best_response(game, i, profile, cfg))
        .collect::<Result<Vec<_>>>()?;
    let per_player_regret: Vec<T> = best_responses
        .iter()
        .zip(&payoffs)
        .map(|(br, &u)| (br.payoff - u).max(T::zero()))
        .collect();
    let max_regret = per_player_regret.iter().copied().fold(T::zero(), T::max);
    let aggregate = profile.aggregate();
    Ok(EquilibriumCertificate {
        profile: profile.clone(),
        probabilities,
        payoffs,
        best_responses,
        per_player_regret,
        max_regret,
        aggregate,
        extraction_ratio: aggregate / game.max_value(),
        epsilon: cfg.epsilon,
        is_epsilon_ne: max_regret <= cfg.epsilon,
    })
}

/// Per-player scan axis: uniform grid on `[0, v_i]` plus critical points.
fn scan_axis<T: Scalar>(game: &ContestGame<T>, player: usize, per_axis: usize) -> Result<Vec<T>> {
    let cap = game.values().get(player);
    let mut axis = linspace(T::zero(), cap, per_axis);
    axis.extend(
        game.csf()
            .critical_points(game.values(), player)?
            .into_iter()
            .filter(|&c| c <= cap),
    );
    sort_dedup(&mut axis);
    Ok(axis)
}

/// Mixed-radix digits of `index` over axis lengths `dims` (first axis fastest).
fn decode(mut index: usize, dims: &[usize], digits: &mut [usize]) {
    for (d, &len) in digits.iter_mut().zip(dims) {
        *d = index % len;
        index /= len;
    }
}

/// Index into the table of all axes except `skip`.
fn encode_without(digits: &[usize], dims: &[usize], skip: usize) -> usize {
    let mut index = 0;
    let mut stride = 1;
    for (k, (&d, &len)) in digits.iter().zip(dims).enumerate() {
        if k != skip {
            index += d * stride;
            stride *= len;
        }
    }
    index
}

/// Exhaustive epsilon-Nash search over a product grid on `[0, v_i]^n`.
///
/// Every grid profile is first screened with deviations restricted to the
/// player's own axis; survivors are confirmed with the full
/// [`verify_equilibrium`] oracle. Returns the confirmed certificates sorted by
/// `max_regret` (stable in grid order).
pub fn grid_scan<T: Scalar>(
    game: &ContestGame<T>,
    cfg: &SearchConfig<T>,
    per_axis_points: usize,
) -> Result<Vec<EquilibriumCertificate<T>>> {
    cfg.validate()?;
    if per_axis_points < 2 {
        return config_err(format!("per-axis points must be >= 2, got {per_axis_points}"));
    }
    let n = game.n();
    let nominal = (per_axis_points as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if nominal > MAX_SCAN_CELLS {
        return Err(ContestError::BudgetExceeded {
            cells: nominal,
            limit: MAX_SCAN_CELLS,
        });
    }
    let axes = (0..n)
        .map(|i| scan_axis(game, i, per_axis_points))
        .collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = axes.iter().map(Vec::len).collect();
    let cells = dims.iter().map(|&d| d as u128).product::<u128>();
    if cells > MAX_SCAN_CELLS {
        return Err(ContestError::BudgetExceeded {
            cells,
            limit: MAX_SCAN_CELLS,
        });
    }
    let cells = cells as usize;

    // best_on_axis[i][others] = max over player i's axis of u_i
    let best_on_axis: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let other_dims: Vec<usize> = (0..n).filter(|&k| k != i).map(|k| dims[k]).collect();
            let entries: usize = other_dims.iter().product();
            (0..entries)
                .into_par_iter()
                .map_init(
                    || (vec![0usize; n - 1], vec![T::zero(); n], vec![T::zero(); n]),
                    |(digits, efforts, scratch), e| {
                        decode(e, &other_dims, digits);
                        let mut slot = 0;
                        for k in 0..n {
                            if k != i {
                                efforts[k] = axes[k][digits[slot]];
                                slot += 1;
                            }
                        }
                        axes[i].iter().fold(T::neg_infinity(), |best, &x| {
                            efforts[i] = x;
                            best.max(game.utility_raw(i, efforts, scratch))
                        })
                    },
                )
                .collect()
        })
        .collect();

    let eps = cfg.epsilon;
    let survivors: Vec<Vec<T>> = (0..cells)
        .into_par_iter()
        .map_init(
            || (vec![0usize; n], vec![T::zero(); n], vec![T::zero(); n]),
            |(digits, efforts, utils), c| {
                decode(c, &dims, digits);
                for k in 0..n {
                    efforts[k] = axes[k][digits[k]];
                }
                game.utilities_raw(efforts, utils);
                let stable = (0..n).all(|i| {
                    best_on_axis[i][encode_without(digits, &dims, i)] - utils[i] <= eps
                });
                stable.then(|| efforts.clone())
            },
        )
        .flatten()
        .collect();

    let mut confirmed = survivors
        .into_par_iter()
        .map(|x| verify_equilibrium(game, &EffortProfile::new(x)?, cfg))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|c| c.is_epsilon_ne)
        .collect::<Vec<_>>();
    confirmed.sort_by(|a, b| a.max_regret.partial_cmp(&b.max_regret).expect("finite regret"));
    Ok(confirmed)
}

/// A group of certificates within `radius` (sup norm) of a representative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Cluster<T> {
    pub representative: EquilibriumCertificate<T>,
    pub members: usize,
}

/// Greedy clustering in input order: each certificate joins the first cluster
/// whose representative lies within `radius`, else starts a new one.
pub fn cluster_certificates<T: Scalar>(
    certs: &[EquilibriumCertificate<T>],
    radius: T,
) -> Vec<Cluster<T>> {
    let mut clusters: Vec<Cluster<T>> = Vec::new();
    for cert in certs {
        match clusters
            .iter_mut()
            .find(|cl| cl.representative.profile.distance(&cert.profile) <= radius)
        {
            Some(cl) => cl.members += 1,
            None => clusters.push(Cluster {
                representative: cert.clone(),
                members: 1,
            }),
        }
    }
    clusters
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct TrajectoryStep<T> {
    pub round: usize,
    /// Player that just moved; `None` for the initial profile.
    pub player: Option<usize>,
    pub profile: EffortProfile<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Dynamics<T> {
    pub trajectory: Vec<TrajectoryStep<T>>,
    pub certificate: EquilibriumCertificate<T>,
    pub rounds_run: usize,
}

/// Round-robin best-response dynamics. Stops as soon as the profile at the
/// start of a round is an epsilon-Nash equilibrium; non-convergence is
/// reported through the terminal certificate.
pub fn best_response_dynamics<T: Scalar>(
    game: &ContestGame<T>,
    init: &EffortProfile<T>,
    rounds: usize,
    cfg: &SearchConfig<T>,
) -> Result<Dynamics<T>> {
    game.check_profile(init)?;
    let mut profile = init.clone();
    let mut trajectory = vec![TrajectoryStep {
        round: 0,
        player: None,
        profile: profile.clone(),
    }];
    let mut certificate = verify_equilibrium(game, &profile, cfg)?;
    let mut rounds_run = 0;
    while !certificate.is_epsilon_ne && rounds_run < rounds {
        rounds_run += 1;
        for player in 0..game.n() {
            let br = best_response(game, player, &profile, cfg)?;
            profile = profile.with_effort(player, br.effort)?;
            trajectory.push(TrajectoryStep {
                round: rounds_run,
                player: Some(player),
                profile: profile.clone(),
            });
        }
        certificate = verify_equilibrium(game, &profile, cfg)?;
    }
    Ok(Dynamics {
        trajectory,
        certificate,
        rounds_run,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contest::ValueProfile;
    use crate::csf::CsfSpec;

    fn game(v: &[f64], csf: CsfSpec<f64>) -> ContestGame<f64> {
        ContestGame::new(ValueProfile::new(v.to_vec()).unwrap(), csf).unwrap()
    }

    fn ep(x: &[f64]) -> EffortProfile<f64> {
        EffortProfile::new(x.to_vec()).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::<f64>::default().validate().is_ok());
        assert!(SearchConfig::<f64>::default().with_grid_points(1).validate().is_err());
        assert!(SearchConfig::<f64>::default().with_epsilon(-1.0).validate().is_err());
        assert!(SearchConfig::<f64>::default()
            .with_neighborhood_radius(f64::NAN)
            .validate()
            .is_err());
    }

    #[test]
    fn power_two_best_response_is_half() {
        let g = game(&[1.0, 1.0], CsfSpec::power(2));
        let cfg = SearchConfig::default();
        let br = best_response(&g, 0, &ep(&[0.2, 0.5]), &cfg).unwrap();
        assert!((br.effort - 0.2).abs() > 1e-3);
        assert!(br.payoff.abs() < 1e-12);
        // 0 and 0.5 both pay 0; staying at 0.5 wins the tie
        let br = best_response(&g, 0, &ep(&[0.5, 0.5]), &cfg).unwrap();
        assert!((br.effort - 0.5).abs() < 1e-6);
        assert!(br.payoff.abs() < 1e-12);
    }

    #[test]
    fn max_indicator_tie_goes_to_zero() {
        let g = game(&[2.0, 1.0], CsfSpec::max_indicator(0));
        let br = best_response(&g, 0, &ep(&[0.0, 0.0]), &SearchConfig::default()).unwrap();
        assert_eq!(br.effort, 0.0);
        assert_eq!(br.payoff, 0.0);
        // effort 2 also yields 0 exactly
        assert_eq!(g.payoff(&ep(&[2.0, 0.0])).unwrap()[0], 0.0);
    }

    #[test]
    fn bad_player_index() {
        let g = game(&[1.0, 1.0], CsfSpec::lottery());
        assert!(best_response(&g, 2, &ep(&[0.0, 0.0]), &SearchConfig::default()).is_err());
        assert!(best_response(&g, 0, &ep(&[0.0, 0.0, 0.0]), &SearchConfig::default()).is_err());
    }

    #[test]
    fn regret_examples() {
        let cfg = SearchConfig::default();
        let g = game(&[1.0, 1.0, 1.0], CsfSpec::power(2));
        let r = regret(&g, &ep(&[0.5, 0.5, 0.0]), &cfg).unwrap();
        assert!(r.iter().all(|&x| x <= 1e-6), "{r:?}");
        let r = regret(&g, &ep(&[0.0, 0.0, 0.0]), &cfg).unwrap();
        // staying put pays 1/3; entering with a tiny effort pays almost 1
        assert!(r.iter().any(|&x| x > 1.0 / 3.0), "{r:?}");
        let g = game(&[2.0, 1.0], CsfSpec::max_indicator(0));
        assert_eq!(regret(&g, &ep(&[0.0, 0.0]), &cfg).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn budget_guard() {
        let g = game(&[1.0; 5], CsfSpec::lottery());
        let err = grid_scan(&g, &SearchConfig::default(), 41).unwrap_err();
        assert!(matches!(err, ContestError::BudgetExceeded { .. }));
    }

    #[test]
    fn decode_encode_consistent() {
        let dims = [3, 4, 5];
        let mut digits = [0; 3];
        decode(2 + 3 * (1 + 4 * 3), &dims, &mut digits);
        assert_eq!(digits, [2, 1, 3]);
        assert_eq!(encode_without(&digits, &dims, 1), 2 + 3 * 3);
        assert_eq!(encode_without(&digits, &dims, 0), 1 + 4 * 3);
    }

    #[test]
    fn clustering_groups_neighbours() {
        let g = game(&[1.0, 1.0], CsfSpec::lottery());
        let cfg = SearchConfig::default();
        let certs: Vec<_> = [[0.25, 0.25], [0.2501, 0.25], [0.5, 0.1]]
            .iter()
            .map(|x| verify_equilibrium(&g, &ep(x), &cfg).unwrap())
            .collect();
        let cl = cluster_certificates(&certs, 1e-3);
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].members, 2);
    }

    #[test]
    fn dynamics_zero_rounds() {
        let g = game(&[1.0, 1.0], CsfSpec::lottery());
        let d = best_response_dynamics(&g, &ep(&[0.1, 0.9]), 0, &SearchConfig::default()).unwrap();
        assert_eq!(d.trajectory.len(), 1);
        assert!(!d.certificate.is_epsilon_ne);
    }
}
