#include "cyfar/caf_estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace cyfar {

namespace {

thread_local OpCounter* g_ops = nullptr;

inline void count_estimator(long long n) {
    if (g_ops) g_ops->estimator_mults += n;
}
inline void count_covariance(long long n) {
    if (g_ops) g_ops->covariance_mults += n;
}

// lagged product y[n] = x[n] x^(*)[n+lag], n = 0 .. K-1-lag
std::vector<cplx> lag_product(const IQBuffer& x, int lag, bool conjugate) {
    const std::size_t k = x.samples.size();
    if (lag < 0 || static_cast<std::size_t>(lag) >= k)
        throw std::invalid_argument("caf: lag must satisfy 0 <= lag < K");
    std::vector<cplx> y(k - static_cast<std::size_t>(lag));
    const auto* s = x.samples.data();
    if (conjugate) {
        for (std::size_t n = 0; n < y.size(); ++n)
            y[n] = s[n] * s[n + static_cast<std::size_t>(lag)];
    } else {
        for (std::size_t n = 0; n < y.size(); ++n)
            y[n] = s[n] * std::conj(s[n + static_cast<std::size_t>(lag)]);
    }
    count_estimator(static_cast<long long>(y.size()));
    return y;
}

// sum_n y[n] e^{-j 2 pi nu n}, phasor recurrence resynced periodically
cplx rotated_sum(const std::vector<cplx>& y, double nu) {
    cplx acc(0.0, 0.0);
    const cplx step = std::polar(1.0, -2.0 * M_PI * nu);
    cplx ph(1.0, 0.0);
    for (std::size_t n = 0; n < y.size(); ++n) {
        if ((n & 0xfffu) == 0)
            ph = std::polar(1.0, -2.0 * M_PI * nu * static_cast<double>(n));
        acc += y[n] * ph;
        ph *= step;
    }
    count_estimator(static_cast<long long>(y.size()));
    return acc;
}

}  // namespace

ScopedOpCounter::ScopedOpCounter(OpCounter& counter) : prev_(g_ops) {
    g_ops = &counter;
}
ScopedOpCounter::~ScopedOpCounter() { g_ops = prev_; }

cplx caf_estimate(const IQBuffer& x, double cf, int lag, bool conjugate) {
    const auto y = lag_product(x, lag, conjugate);
    return rotated_sum(y, cf) / static_cast<double>(x.samples.size());
}

cplx cyclic_periodogram(const IQBuffer& x, int lag, double cf, bool conjugate) {
    const auto y = lag_product(x, lag, conjugate);
    return rotated_sum(y, cf);
}

std::vector<cplx> cyclic_periodogram_profile(const IQBuffer& x, double cf, int lag,
                                             bool conjugate, int half_span) {
    const auto y = lag_product(x, lag, conjugate);
    const double k = static_cast<double>(x.samples.size());
    std::vector<cplx> profile(static_cast<std::size_t>(2 * half_span + 1));
    for (int s = -half_span; s <= half_span; ++s)
        profile[static_cast<std::size_t>(s + half_span)] =
            rotated_sum(y, cf + static_cast<double>(s) / k);
    return profile;
}

namespace {

cplx smooth_q(const std::vector<cplx>& fa, const std::vector<cplx>& fb,
              const std::vector<double>& w, double kl) {
    const int span = (static_cast<int>(w.size()) - 1) / 2;
    cplx acc(0.0, 0.0);
    for (int s = -span; s <= span; ++s)
        acc += w[static_cast<std::size_t>(s + span)] *
               fa[static_cast<std::size_t>(span - s)] *
               fb[static_cast<std::size_t>(span + s)];
    count_covariance(2 * (2 * span + 1));
    return acc / kl;
}

cplx smooth_p(const std::vector<cplx>& fa, const std::vector<cplx>& fb,
              const std::vector<double>& w, double kl) {
    const int span = (static_cast<int>(w.size()) - 1) / 2;
    cplx acc(0.0, 0.0);
    for (int s = -span; s <= span; ++s)
        acc += w[static_cast<std::size_t>(s + span)] *
               std::conj(fa[static_cast<std::size_t>(span + s)]) *
               fb[static_cast<std::size_t>(span + s)];
    count_covariance(2 * (2 * span + 1));
    return acc / kl;
}

}  // namespace

cplx smoothed_scd(const IQBuffer& x, double cf_a, int lag_a, double cf_b, int lag_b,
                  const SmoothingWindow& window, ScdMode mode, bool conjugate) {
    const auto w = window.weights();
    const int span = window.half_span();
    const auto fa = cyclic_periodogram_profile(x, cf_a, lag_a, conjugate, span);
    const auto fb = cyclic_periodogram_profile(x, cf_b, lag_b, conjugate, span);
    const double kl = static_cast<double>(x.samples.size()) * window.length;
    return mode == ScdMode::Q ? smooth_q(fa, fb, w, kl) : smooth_p(fa, fb, w, kl);
}

Eigen::MatrixXd StatAssembly::cf_block(const CfTlSet& set, int i) const {
    const int n = static_cast<int>(set.entries[static_cast<std::size_t>(i)].lags.size());
    return sigma.block(cf_offset[static_cast<std::size_t>(i)],
                       cf_offset[static_cast<std::size_t>(i)], 2 * n, 2 * n);
}

Eigen::VectorXd StatAssembly::cf_rvec(const CfTlSet& set, int i) const {
    const int n = static_cast<int>(set.entries[static_cast<std::size_t>(i)].lags.size());
    return r.segment(cf_offset[static_cast<std::size_t>(i)], 2 * n);
}

Eigen::Matrix2d StatAssembly::pair_block(const CfTlSet& set, int pair_index) const {
    const auto ps = set.pairs();
    const auto& p = ps[static_cast<std::size_t>(pair_index)];
    const int n = static_cast<int>(set.entries[static_cast<std::size_t>(p.cf_index)].lags.size());
    const int re = cf_offset[static_cast<std::size_t>(p.cf_index)] + p.lag_index;
    const int im = re + n;
    Eigen::Matrix2d block;
    block << sigma(re, re), sigma(re, im), sigma(im, re), sigma(im, im);
    return block;
}

Eigen::Vector2d StatAssembly::pair_rvec(const CfTlSet& set, int pair_index) const {
    const auto ps = set.pairs();
    const auto& p = ps[static_cast<std::size_t>(pair_index)];
    const int n = static_cast<int>(set.entries[static_cast<std::size_t>(p.cf_index)].lags.size());
    const int re = cf_offset[static_cast<std::size_t>(p.cf_index)] + p.lag_index;
    return Eigen::Vector2d(r(re), r(re + n));
}

StatAssembly assemble_statistics(const IQBuffer& x, const CfTlSet& set,
                                 const SmoothingWindow& window) {
    set.validate();
    const auto ps = set.pairs();
    const int j = set.total_pairs();
    const int span = window.half_span();
    const auto w = window.weights();
    const double k = static_cast<double>(x.samples.size());
    const double kl = k * window.length;

    StatAssembly out;
    out.num_samples = static_cast<int>(x.samples.size());
    out.r.resize(2 * j);
    out.sigma.resize(2 * j, 2 * j);
    out.caf.resize(ps.size());
    out.cf_offset.resize(set.entries.size());
    int off = 0;
    for (std::size_t i = 0; i < set.entries.size(); ++i) {
        out.cf_offset[i] = off;
        off += 2 * static_cast<int>(set.entries[i].lags.size());
    }

    std::vector<std::vector<cplx>> profiles(ps.size());
    for (std::size_t p = 0; p < ps.size(); ++p)
        profiles[p] = cyclic_periodogram_profile(x, ps[p].cf, ps[p].lag,
                                                 set.conjugate, span);

    for (std::size_t p = 0; p < ps.size(); ++p) {
        const cplx caf = profiles[p][static_cast<std::size_t>(span)] / k;
        out.caf[p] = caf;
        const int n_i =
            static_cast<int>(set.entries[static_cast<std::size_t>(ps[p].cf_index)].lags.size());
        const int re_row = out.cf_offset[static_cast<std::size_t>(ps[p].cf_index)] + ps[p].lag_index;
        out.r(re_row) = caf.real();
        out.r(re_row + n_i) = caf.imag();
    }

    for (std::size_t a = 0; a < ps.size(); ++a) {
        const int n_a =
            static_cast<int>(set.entries[static_cast<std::size_t>(ps[a].cf_index)].lags.size());
        const int a_re = out.cf_offset[static_cast<std::size_t>(ps[a].cf_index)] + ps[a].lag_index;
        const int a_im = a_re + n_a;
        for (std::size_t b = a; b < ps.size(); ++b) {
            const int n_b =
                static_cast<int>(set.entries[static_cast<std::size_t>(ps[b].cf_index)].lags.size());
            const int b_re = out.cf_offset[static_cast<std::size_t>(ps[b].cf_index)] + ps[b].lag_index;
            const int b_im = b_re + n_b;

            const cplx q = smooth_q(profiles[a], profiles[b], w, kl);
            const cplx pp = smooth_p(profiles[a], profiles[b], w, kl);

            const double re_qp = 0.5 * (q.real() + pp.real());
            const double im_qmp = 0.5 * (q.imag() - pp.imag());
            const double im_qpp = 0.5 * (q.imag() + pp.imag());
            const double re_pmq = 0.5 * (pp.real() - q.real());

            out.sigma(a_re, b_re) = re_qp;
            out.sigma(a_re, b_im) = im_qmp;
            out.sigma(a_im, b_re) = im_qpp;
            out.sigma(a_im, b_im) = re_pmq;
            if (b != a) {
                // mirror; W symmetry makes Q symmetric and P Hermitian
                out.sigma(b_re, a_re) = re_qp;
                out.sigma(b_im, a_re) = im_qmp;
                out.sigma(b_re, a_im) = im_qpp;
                out.sigma(b_im, a_im) = re_pmq;
            }
        }
    }
    return out;
}

}  // namespace cyfar
