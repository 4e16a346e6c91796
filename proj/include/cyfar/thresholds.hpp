// CFAR threshold computation
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cyfar/rng.hpp"

namespace cyfar {

/// right tail of the central chi-square with even dof (Erlang series)
double chi2_tail(int dof, double gamma);

/// gamma with chi2_tail(dof, gamma) == pfa, bisection to 1e-10
double chi2_tail_inv(int dof, double pfa);

/// density grid on [0, step * (size-1)]
struct PdfGrid {
    double step = 0.01;
    std::vector<double> density;

    double trapezoid_mass() const;
};

/// density of the maximum of n_i i.i.d. chi-square(2) variables,
/// binomial-expansion form, sampled on the grid
PdfGrid max_order_pdf(int n_i, double step = 0.01, double support = 60.0);

/// cdf and pdf of a sum over groups of per-group maxima of chi-square(2)
/// variables, by numerical convolution of the per-group max densities
struct SumMaximaDistribution {
    double step = 0.01;
    std::vector<double> pdf;
    std::vector<double> cdf;
};

SumMaximaDistribution sum_of_maxima_distribution(const std::vector<int>& groups,
                                                 double step = 0.01);

/// threshold lookup cache, persisted as CSV keyed by
/// (detector, structure, pfa)
class ThresholdTable {
  public:
    double* find(const std::string& key);
    void insert(const std::string& key, double gamma);
    void save_csv(const std::string& path) const;
    static std::string make_key(const std::string& detector,
                                const std::vector<int>& groups, double pfa);

  private:
    std::map<std::string, double> table_;
};

/// CFAR threshold for a sum-of-maxima statistic; cached when a table is given
double sum_of_maxima_threshold(const std::vector<int>& groups, double pfa,
                               ThresholdTable* cache = nullptr);

/// threshold for the max over CF groups of chi-square(2 n_i) statistics:
/// solves 1 - prod_i F_{2 n_i}(gamma) = pfa
double max_dg_threshold(const std::vector<int>& groups, double pfa);

/// closed form for two groups of two lags each; pdf is the cdf-consistent
/// derivative (y-4)e^{-y/2} + (y+4)e^{-y}
struct ClosedFormM2N2 {
    double pdf;
    double cdf;
};
ClosedFormM2N2 closed_form_m2n2(double y);

/// the pdf exactly as printed in the source material, (4+y)(e^{-y}+e^{-y/2});
/// retained for documentation, does not integrate to 1
double closed_form_m2n2_pdf_as_printed(double y);

/// standard normal quantile
double normal_quantile(double p);

/// Energy-detector threshold sigma2 + z_{1-pfa} sqrt(c sigma2^2 / k).
/// With delta_db > 0 the assumed noise power is perturbed by a uniform
/// +/- delta_db draw from the rng (noise-uncertainty studies).
double ed_threshold(double sigma2, std::size_t k, double pfa, int variance_factor,
                    double uncertainty_delta_db = 0.0, Rng* rng = nullptr);

}  // namespace cyfar
