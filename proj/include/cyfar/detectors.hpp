// the seven test statistics
#pragma once

#include <string>
#include <vector>

#include "cyfar/caf_estimator.hpp"

namespace cyfar {

struct PairStat {
    double cf = 0.0;
    int lag = 0;
    double value = 0.0;
};

struct TestStatistic {
    std::string detector;
    double value = 0.0;
    int dof = 0;              // 0 for the energy detector (Gaussian null)
    std::vector<PairStat> per_pair;
};

/// Quadratic form K r Sigma^{-1} r^T. Near-singular systems (condition
/// estimate beyond 1e12) are solved with a ridge of 1e-8 * trace / dim.
TestStatistic t_dg(const Eigen::VectorXd& r, const Eigen::MatrixXd& sigma, int k,
                   const std::string& label = "dg");

/// single-cycle single-lag statistics for every pair of the set
std::vector<PairStat> single_pair_stats(const StatAssembly& assembly,
                                        const CfTlSet& set);

/// sum over CFs of the per-CF maximum of single-pair statistics
TestStatistic t_prop_1(const CfTlSet& set, const std::vector<PairStat>& pair_stats);

/// sum over lags of the per-lag maximum of single-pair statistics
TestStatistic t_prop_2(const CfTlSet& set, const std::vector<PairStat>& pair_stats);

/// sum of per-CF multi-lag statistics (diagonal CF blocks only)
TestStatistic t_sum_dg(const StatAssembly& assembly, const CfTlSet& set);

/// maximum of per-CF multi-lag statistics
TestStatistic t_max_dg(const StatAssembly& assembly, const CfTlSet& set);

/// convenience overloads that assemble internally
TestStatistic t_sum_dg(const IQBuffer& x, const CfTlSet& set,
                       const SmoothingWindow& window);
TestStatistic t_max_dg(const IQBuffer& x, const CfTlSet& set,
                       const SmoothingWindow& window);

/// plain lag autocorrelation (1/(K-s)) sum x[n] x*[n+s]; negative s via
/// Hermitian extension
cplx lag_autocorr(const IQBuffer& x, int s);

struct AdHocConfig {
    int l_n = 5;  // autocorrelation support of the noise model
};

/// thrown when the ad-hoc normalizer collapses to a non-positive value
struct DegenerateNormalization : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Colored-noise detector: 2K sum |R-hat|^2 / gamma-hat, with the
/// lag-autocorrelation normalizer of the matching CAF mode. The real part
/// of gamma-hat is used, floored at 1e-12 * R(0)^2.
TestStatistic t_ad_hoc(const IQBuffer& x, const CfTlSet& set, const AdHocConfig& cfg,
                       bool conjugate);

/// mean power (1/K) sum |x[n]|^2
TestStatistic t_ed(const IQBuffer& x);

}  // namespace cyfar
