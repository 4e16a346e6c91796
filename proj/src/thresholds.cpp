#include "cyfar/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cyfar {

double chi2_tail(int dof, double gamma) {
    if (dof < 2 || dof % 2 != 0)
        throw std::invalid_argument("chi2_tail: dof must be even and positive");
    if (gamma < 0.0) throw std::invalid_argument("chi2_tail: gamma must be >= 0");
    const int j = dof / 2;
    const double half = gamma / 2.0;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < j; ++m) {
        term *= half / static_cast<double>(m);
        sum += term;
    }
    return std::exp(-half) * sum;
}

double chi2_tail_inv(int dof, double pfa) {
    if (!(pfa > 0.0) || !(pfa < 1.0))
        throw std::invalid_argument("chi2_tail_inv: pfa must be in (0,1)");
    double lo = 0.0, hi = static_cast<double>(dof) + 10.0;
    while (chi2_tail(dof, hi) > pfa) hi *= 2.0;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (chi2_tail(dof, mid) > pfa ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double PdfGrid::trapezoid_mass() const {
    if (density.size() < 2) return 0.0;
    double acc = 0.5 * (density.front() + density.back());
    for (std::size_t i = 1; i + 1 < density.size(); ++i) acc += density[i];
    return acc * step;
}

namespace {

double binom(int n, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i)
        v = v * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return v;
}

double max_chi22_pdf(int n_i, double y) {
    // N F(y)^{N-1} f(y) expanded binomially
    double acc = 0.0;
    for (int k = 0; k < n_i; ++k) {
        const double c = binom(n_i - 1, k) * ((k % 2) ? -1.0 : 1.0);
        acc += c * std::exp(-0.5 * (k + 1) * y);
    }
    return 0.5 * static_cast<double>(n_i) * acc;
}

// integral over the grid prefix [0, j*step] with composite Simpson
// (trapezoid patch on the last interval for odd j)
double prefix_integral(const std::vector<double>& f, double step, std::size_t j) {
    if (j == 0) return 0.0;
    if (j == 1) return 0.5 * step * (f[0] + f[1]);
    double acc = 0.0;
    std::size_t even_end = (j % 2 == 0) ? j : j - 1;
    acc += f[0] + f[even_end];
    for (std::size_t i = 1; i < even_end; i += 2) acc += 4.0 * f[i];
    for (std::size_t i = 2; i < even_end; i += 2) acc += 2.0 * f[i];
    acc *= step / 3.0;
    if (j % 2 == 1) acc += 0.5 * step * (f[j - 1] + f[j]);
    return acc;
}

// c(y_j) = int_0^{y_j} f(u) g(y_j - u) du, Simpson weights per output point
std::vector<double> convolve_density(const std::vector<double>& f,
                                     const std::vector<double>& g, double step) {
    const std::size_t n = std::min(f.size(), g.size());
    std::vector<double> out(n, 0.0);
    std::vector<double> prod(n);
    for (std::size_t jy = 1; jy < n; ++jy) {
        for (std::size_t i = 0; i <= jy; ++i) prod[i] = f[i] * g[jy - i];
        out[jy] = prefix_integral(prod, step, jy);
    }
    return out;
}

}  // namespace

PdfGrid max_order_pdf(int n_i, double step, double support) {
    if (n_i < 1) throw std::invalid_argument("max_order_pdf: n_i must be >= 1");
    if (!(step > 0.0) || !(support > step))
        throw std::invalid_argument("max_order_pdf: bad grid");
    PdfGrid grid;
    grid.step = step;
    const std::size_t n = static_cast<std::size_t>(std::llround(support / step)) + 1;
    grid.density.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        grid.density[i] = max_chi22_pdf(n_i, static_cast<double>(i) * step);
    return grid;
}

SumMaximaDistribution sum_of_maxima_distribution(const std::vector<int>& groups,
                                                 double step) {
    if (groups.empty())
        throw std::invalid_argument("sum_of_maxima: groups must be nonempty");
    int total = 0;
    for (int g : groups) {
        if (g < 1) throw std::invalid_argument("sum_of_maxima: group size must be >= 1");
        total += g;
    }

    double support = 60.0 + 20.0 * static_cast<double>(total);
    for (int attempt = 0; attempt < 8; ++attempt) {
        const std::size_t n = static_cast<std::size_t>(std::llround(support / step)) + 1;
        std::vector<double> pdf(n);
        for (std::size_t i = 0; i < n; ++i)
            pdf[i] = max_chi22_pdf(groups[0], static_cast<double>(i) * step);
        for (std::size_t gi = 1; gi < groups.size(); ++gi) {
            std::vector<double> next(n);
            for (std::size_t i = 0; i < n; ++i)
                next[i] = max_chi22_pdf(groups[gi], static_cast<double>(i) * step);
            pdf = convolve_density(pdf, next, step);
        }
        std::vector<double> cdf(n);
        for (std::size_t jy = 0; jy < n; ++jy) cdf[jy] = prefix_integral(pdf, step, jy);
        if (1.0 - cdf.back() < 1e-8) {
            SumMaximaDistribution dist;
            dist.step = step;
            dist.pdf = std::move(pdf);
            dist.cdf = std::move(cdf);
            return dist;
        }
        support *= 1.5;  // extend until the tail mass is negligible
    }
    throw std::runtime_error("sum_of_maxima: support extension did not converge");
}

std::string ThresholdTable::make_key(const std::string& detector,
                                     const std::vector<int>& groups, double pfa) {
    std::string key = detector + "|";
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (i) key += ",";
        key += std::to_string(groups[i]);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "|%.9g", pfa);
    return key + buf;
}

double* ThresholdTable::find(const std::string& key) {
    auto it = table_.find(key);
    return it == table_.end() ? nullptr : &it->second;
}

void ThresholdTable::insert(const std::string& key, double gamma) {
    table_[key] = gamma;
}

void ThresholdTable::save_csv(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("threshold table: cannot write " + path);
    std::fprintf(f, "detector,structure,pfa,gamma\n");
    for (const auto& [key, gamma] : table_) {
        const auto p1 = key.find('|');
        const auto p2 = key.rfind('|');
        std::fprintf(f, "%s,%s,%s,%.12g\n", key.substr(0, p1).c_str(),
                     key.substr(p1 + 1, p2 - p1 - 1).c_str(),
                     key.substr(p2 + 1).c_str(), gamma);
    }
    std::fclose(f);
}

double sum_of_maxima_threshold(const std::vector<int>& groups, double pfa,
                               ThresholdTable* cache) {
    if (!(pfa > 0.0) || !(pfa < 1.0))
        throw std::invalid_argument("sum_of_maxima_threshold: pfa must be in (0,1)");
    const std::string key = ThresholdTable::make_key("sum_maxima", groups, pfa);
    if (cache)
        if (double* hit = cache->find(key)) return *hit;

    const auto dist = sum_of_maxima_distribution(groups);
    const double target = 1.0 - pfa;
    // bisection on the piecewise-linear interpolated cdf
    double lo = 0.0, hi = dist.step * static_cast<double>(dist.cdf.size() - 1);
    auto cdf_at = [&](double y) {
        const double pos = y / dist.step;
        const std::size_t i = std::min(static_cast<std::size_t>(pos),
                                       dist.cdf.size() - 2);
        const double fr = pos - static_cast<double>(i);
        return dist.cdf[i] + fr * (dist.cdf[i + 1] - dist.cdf[i]);
    };
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (cdf_at(mid) < target ? lo : hi) = mid;
    }
    const double gamma = 0.5 * (lo + hi);
    if (cache) cache->insert(key, gamma);
    return gamma;
}

double max_dg_threshold(const std::vector<int>& groups, double pfa) {
    if (groups.empty())
        throw std::invalid_argument("max_dg_threshold: groups must be nonempty");
    if (!(pfa > 0.0) || !(pfa < 1.0))
        throw std::invalid_argument("max_dg_threshold: pfa must be in (0,1)");
    auto pfa_at = [&](double g) {
        double prod = 1.0;
        for (int n : groups) prod *= 1.0 - chi2_tail(2 * n, g);
        return 1.0 - prod;
    };
    double lo = 0.0, hi = 10.0;
    while (pfa_at(hi) > pfa) hi *= 2.0;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (pfa_at(mid) > pfa ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ClosedFormM2N2 closed_form_m2n2(double y) {
    if (y < 0.0) throw std::invalid_argument("closed_form_m2n2: y must be >= 0");
    const double eh = std::exp(-0.5 * y);
    const double e1 = std::exp(-y);
    return {(y - 4.0) * eh + (y + 4.0) * e1,
            1.0 + (4.0 - 2.0 * y) * eh - (5.0 + y) * e1};
}

double closed_form_m2n2_pdf_as_printed(double y) {
    if (y < 0.0) throw std::invalid_argument("closed_form_m2n2: y must be >= 0");
    return (4.0 + y) * (std::exp(-y) + std::exp(-0.5 * y));
}

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("normal_quantile: p must be in (0,1)");
    // Acklam rational approximation, then one Newton step on erfc
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double err = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    x -= err * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    return x;
}

double ed_threshold(double sigma2, std::size_t k, double pfa, int variance_factor,
                    double uncertainty_delta_db, Rng* rng) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("ed_threshold: sigma2 must be > 0");
    if (k == 0) throw std::invalid_argument("ed_threshold: k must be >= 1");
    if (!(pfa > 0.0) || !(pfa < 1.0))
        throw std::invalid_argument("ed_threshold: pfa must be in (0,1)");
    if (variance_factor != 1 && variance_factor != 2)
        throw std::invalid_argument("ed_threshold: variance factor must be 1 or 2");
    double assumed = sigma2;
    if (uncertainty_delta_db > 0.0 && rng)
        assumed *= std::pow(10.0, rng->uniform(-uncertainty_delta_db,
                                               uncertainty_delta_db) / 10.0);
    const double z = normal_quantile(1.0 - pfa);
    return assumed + z * std::sqrt(static_cast<double>(variance_factor) * assumed *
                                   assumed / static_cast<double>(k));
}

}  // namespace cyfar
