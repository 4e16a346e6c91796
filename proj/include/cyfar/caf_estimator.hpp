// CAF estimation and Dandawate-Giannakis statistic assembly
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cyfar/cf_tl_set.hpp"
#include "cyfar/iq.hpp"
#include "cyfar/window.hpp"

namespace cyfar {

/// measured complex-multiplication tallies, for cross-checking the
/// operation-count model
struct OpCounter {
    long long estimator_mults = 0;   // CAF / cyclic periodogram products
    long long covariance_mults = 0;  // smoothing-sum products
};

/// installs a thread-local counter for the current scope
class ScopedOpCounter {
  public:
    explicit ScopedOpCounter(OpCounter& counter);
    ~ScopedOpCounter();
    ScopedOpCounter(const ScopedOpCounter&) = delete;
    ScopedOpCounter& operator=(const ScopedOpCounter&) = delete;

  private:
    OpCounter* prev_;
};

/// Eq.-15 style estimate: (1/K) sum_{n=0}^{K-1-lag} x[n] x^(*)[n+lag]
/// e^{-j 2 pi cf n}. The sum truncates at the lag edge but normalizes by K.
/// `conjugate = false` conjugates the lagged factor (nonconjugate CAF);
/// `conjugate = true` leaves it unconjugated (conjugate CAF).
cplx caf_estimate(const IQBuffer& x, double cf, int lag, bool conjugate);

/// unnormalized cyclic periodogram F_tau(alpha) = K * caf_estimate
cplx cyclic_periodogram(const IQBuffer& x, int lag, double cf, bool conjugate);

/// F_{lag}(cf + s/K) for s = -half_span .. +half_span (index s + half_span)
std::vector<cplx> cyclic_periodogram_profile(const IQBuffer& x, double cf, int lag,
                                             bool conjugate, int half_span);

enum class ScdMode { Q, P };

/// Frequency-smoothed cyclic periodogram, Eq. 19 (Q) / Eq. 20 (P):
///   Q: (1/KL) sum_s W(s) F_{lag_a}(cf_a - s/K) F_{lag_b}(cf_b + s/K)
///   P: (1/KL) sum_s W(s) conj(F_{lag_a}(cf_a + s/K)) F_{lag_b}(cf_b + s/K)
cplx smoothed_scd(const IQBuffer& x, double cf_a, int lag_a, double cf_b, int lag_b,
                  const SmoothingWindow& window, ScdMode mode, bool conjugate);

/// r-hat and Sigma-hat for one working set, in Eq.-14 layout: per CF block,
/// real parts of all lags then imaginary parts; covariance blocks follow the
/// Eq.-18 Re/Im pattern built from Q and P.
struct StatAssembly {
    Eigen::VectorXd r;          // length 2J
    Eigen::MatrixXd sigma;      // 2J x 2J, symmetric
    std::vector<cplx> caf;      // per-pair estimates, pairs() order
    std::vector<int> cf_offset; // row offset of each CF block
    int num_samples = 0;

    /// 2N_i x 2N_i diagonal block for CF index i
    Eigen::MatrixXd cf_block(const CfTlSet& set, int i) const;
    Eigen::VectorXd cf_rvec(const CfTlSet& set, int i) const;
    /// 2x2 block and length-2 vector for one (cf, lag) pair
    Eigen::Matrix2d pair_block(const CfTlSet& set, int pair_index) const;
    Eigen::Vector2d pair_rvec(const CfTlSet& set, int pair_index) const;
};

StatAssembly assemble_statistics(const IQBuffer& x, const CfTlSet& set,
                                 const SmoothingWindow& window);

}  // namespace cyfar
