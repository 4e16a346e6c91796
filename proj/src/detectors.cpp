#include "cyfar/detectors.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace cyfar {

namespace {

double quad_form(const Eigen::VectorXd& r, const Eigen::MatrixXd& sigma, int k) {
    if (sigma.rows() != sigma.cols() || sigma.rows() != r.size())
        throw std::invalid_argument("t_dg: dimension mismatch");
    if (!r.allFinite() || !sigma.allFinite())
        throw std::invalid_argument("t_dg: non-finite inputs");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
    const auto& ev = es.eigenvalues();
    const double lam_max = ev.cwiseAbs().maxCoeff();
    const double lam_min = ev.minCoeff();
    if (lam_max == 0.0 && r.norm() == 0.0) return 0.0;

    Eigen::MatrixXd m = sigma;
    if (!(lam_min > 0.0) || lam_max / lam_min > 1e12) {
        const double ridge = 1e-8 * sigma.trace() / static_cast<double>(sigma.rows());
        const double shift = std::max(ridge, (ridge - lam_min) + ridge);
        m.diagonal().array() += shift;
    }
    const Eigen::VectorXd z = m.ldlt().solve(r);
    const double value = static_cast<double>(k) * r.dot(z);
    if (!std::isfinite(value))
        throw std::runtime_error("t_dg: covariance system could not be solved");
    // finite-sample Sigma-hat can be slightly indefinite; clamp FP residue
    return value < 0.0 ? 0.0 : value;
}

}  // namespace

TestStatistic t_dg(const Eigen::VectorXd& r, const Eigen::MatrixXd& sigma, int k,
                   const std::string& label) {
    TestStatistic t;
    t.detector = label;
    t.dof = static_cast<int>(r.size());
    t.value = quad_form(r, sigma, k);
    return t;
}

std::vector<PairStat> single_pair_stats(const StatAssembly& assembly,
                                        const CfTlSet& set) {
    const auto ps = set.pairs();
    std::vector<PairStat> out(ps.size());
    for (std::size_t p = 0; p < ps.size(); ++p) {
        const Eigen::Vector2d r = assembly.pair_rvec(set, static_cast<int>(p));
        const Eigen::Matrix2d block = assembly.pair_block(set, static_cast<int>(p));
        out[p] = {ps[p].cf, ps[p].lag,
                  quad_form(r, block, assembly.num_samples)};
    }
    return out;
}

TestStatistic t_prop_1(const CfTlSet& set, const std::vector<PairStat>& pair_stats) {
    const auto ps = set.pairs();
    if (pair_stats.size() != ps.size())
        throw std::invalid_argument("t_prop_1: pair statistics mismatch");
    TestStatistic t;
    t.detector = "prop1";
    t.dof = 2 * set.total_pairs();
    std::vector<double> best(set.entries.size(),
                             -std::numeric_limits<double>::infinity());
    std::vector<std::size_t> best_idx(set.entries.size(), 0);
    for (std::size_t p = 0; p < ps.size(); ++p) {
        const auto i = static_cast<std::size_t>(ps[p].cf_index);
        if (pair_stats[p].value > best[i]) {  // ties keep the lowest index
            best[i] = pair_stats[p].value;
            best_idx[i] = p;
        }
    }
    for (std::size_t i = 0; i < set.entries.size(); ++i) {
        t.value += best[i];
        t.per_pair.push_back(pair_stats[best_idx[i]]);
    }
    return t;
}

TestStatistic t_prop_2(const CfTlSet& set, const std::vector<PairStat>& pair_stats) {
    const auto ps = set.pairs();
    if (pair_stats.size() != ps.size())
        throw std::invalid_argument("t_prop_2: pair statistics mismatch");
    TestStatistic t;
    t.detector = "prop2";
    t.dof = 2 * set.total_pairs();
    for (const auto& group : set.by_lag()) {
        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_idx = 0;
        for (int idx : group.pair_indices) {
            const auto u = static_cast<std::size_t>(idx);
            if (pair_stats[u].value > best) {
                best = pair_stats[u].value;
                best_idx = u;
            }
        }
        t.value += best;
        t.per_pair.push_back(pair_stats[best_idx]);
    }
    return t;
}

namespace {

std::vector<PairStat> per_cf_stats(const StatAssembly& assembly, const CfTlSet& set) {
    std::vector<PairStat> out(set.entries.size());
    for (std::size_t i = 0; i < set.entries.size(); ++i) {
        const Eigen::VectorXd r = assembly.cf_rvec(set, static_cast<int>(i));
        const Eigen::MatrixXd block = assembly.cf_block(set, static_cast<int>(i));
        out[i] = {set.entries[i].cf, 0,
                  quad_form(r, block, assembly.num_samples)};
    }
    return out;
}

}  // namespace

TestStatistic t_sum_dg(const StatAssembly& assembly, const CfTlSet& set) {
    TestStatistic t;
    t.detector = "sum_dg";
    t.dof = 2 * set.total_pairs();
    t.per_pair = per_cf_stats(assembly, set);
    for (const auto& s : t.per_pair) t.value += s.value;
    return t;
}

TestStatistic t_max_dg(const StatAssembly& assembly, const CfTlSet& set) {
    TestStatistic t;
    t.detector = "max_dg";
    t.per_pair = per_cf_stats(assembly, set);
    t.value = -std::numeric_limits<double>::infinity();
    for (const auto& s : t.per_pair)
        if (s.value > t.value) t.value = s.value;
    t.dof = 0;  // null distribution is a max of chi-squares, not chi-square
    return t;
}

TestStatistic t_sum_dg(const IQBuffer& x, const CfTlSet& set,
                       const SmoothingWindow& window) {
    return t_sum_dg(assemble_statistics(x, set, window), set);
}

TestStatistic t_max_dg(const IQBuffer& x, const CfTlSet& set,
                       const SmoothingWindow& window) {
    return t_max_dg(assemble_statistics(x, set, window), set);
}

cplx lag_autocorr(const IQBuffer& x, int s) {
    const std::size_t k = x.samples.size();
    const int mag = std::abs(s);
    if (static_cast<std::size_t>(mag) >= k)
        throw std::invalid_argument("lag_autocorr: |s| must be < K");
    cplx acc(0.0, 0.0);
    for (std::size_t n = 0; n + static_cast<std::size_t>(mag) < k; ++n)
        acc += x.samples[n] * std::conj(x.samples[n + static_cast<std::size_t>(mag)]);
    acc /= static_cast<double>(k - static_cast<std::size_t>(mag));
    return s >= 0 ? acc : std::conj(acc);
}

TestStatistic t_ad_hoc(const IQBuffer& x, const CfTlSet& set, const AdHocConfig& cfg,
                       bool conjugate) {
    set.validate();
    const std::size_t k = x.samples.size();
    if (cfg.l_n < 0 || static_cast<std::size_t>(cfg.l_n) >= k)
        throw std::invalid_argument("t_ad_hoc: l_n must satisfy 0 <= l_n < K");

    int max_lag = 0;
    for (const auto& e : set.entries)
        for (int lag : e.lags) max_lag = std::max(max_lag, lag);

    // R~(s) for all arguments used by the normalizers
    std::map<int, cplx> rt;
    for (int s = 0; s <= cfg.l_n + max_lag; ++s) rt[s] = lag_autocorr(x, s);
    auto rtilde = [&](int s) { return s >= 0 ? rt[s] : std::conj(rt[-s]); };

    const double r0 = rt[0].real();
    const double floor_val = 1e-12 * r0 * r0;

    TestStatistic t;
    t.detector = conjugate ? "ad_hoc_conj" : "ad_hoc";
    t.dof = 2 * set.total_pairs();
    for (const auto& e : set.entries) {
        for (int lag : e.lags) {
            const cplx rhat = caf_estimate(x, e.cf, lag, conjugate);
            cplx gamma(0.0, 0.0);
            for (int s = -cfg.l_n; s <= cfg.l_n; ++s) {
                if (!conjugate) {
                    gamma += std::norm(rtilde(s)) *
                             std::polar(1.0, -2.0 * M_PI * e.cf * s);
                } else {
                    const cplx term = rtilde(s) * rtilde(s) +
                                      rtilde(s + lag) * rtilde(s - lag);
                    gamma += term * std::polar(1.0, 2.0 * M_PI * e.cf * s);
                }
            }
            double denom = gamma.real();
            if (denom < floor_val) denom = floor_val;
            if (!(denom > 0.0))
                throw DegenerateNormalization("t_ad_hoc: normalizer is not positive");
            const double term = 2.0 * static_cast<double>(k) * std::norm(rhat) / denom;
            t.per_pair.push_back({e.cf, lag, term});
            t.value += term;
        }
    }
    return t;
}

TestStatistic t_ed(const IQBuffer& x) {
    if (x.samples.empty()) throw std::invalid_argument("t_ed: empty buffer");
    TestStatistic t;
    t.detector = "ed";
    t.dof = 0;
    t.value = x.mean_power();
    return t;
}

}  // namespace cyfar
