#include "cyfar/complexity.hpp"

#include <numeric>
#include <stdexcept>

namespace cyfar {

OpCountReport complexity_count(DetectorId id, const ComplexityStructure& s) {
    if (s.n_i.empty())
        throw std::invalid_argument("complexity_count: structure needs lag counts");
    for (int n : s.n_i)
        if (n < 1) throw std::invalid_argument("complexity_count: lag counts must be >= 1");
    if (s.k < 1 || s.l < 1 || s.l_n < 0)
        throw std::invalid_argument("complexity_count: bad K/L/L_n");

    const long long j = std::accumulate(s.n_i.begin(), s.n_i.end(), 0LL);
    if (s.j >= 0 && s.j != j)
        throw std::invalid_argument("complexity_count: J does not match sum of N_i");
    const long long m = static_cast<long long>(s.n_i.size());
    const long long k = s.k;
    const long long smooth = 6 * k + 4 * s.l;

    OpCountReport rep;
    rep.detector = detector_name(id);
    switch (id) {
        case DetectorId::prop1:
        case DetectorId::prop2:
            rep.items = {{"caf", 2 * j * k},
                         {"covariance", j * smooth},
                         {"inverse", 32 * j},
                         {"statistic", 6 * j}};
            break;
        case DetectorId::dg: {
            long long blocks = 0;
            for (std::size_t i = 0; i < s.n_i.size(); ++i) {
                blocks += static_cast<long long>(s.n_i[i]) * s.n_i[i];
                for (std::size_t l = i + 1; l < s.n_i.size(); ++l)
                    blocks += static_cast<long long>(s.n_i[i]) * s.n_i[l];
            }
            rep.items = {{"caf", 2 * j * k},
                         {"covariance", smooth * blocks},
                         {"inverse", 8 * j * j * j + 24 * j * j},
                         {"statistic", 4 * j * j + 2 * j}};
            break;
        }
        case DetectorId::sum_dg:
        case DetectorId::max_dg: {
            long long cov = 0, inv = 0, stat = 0;
            for (int n : s.n_i) {
                const long long nn = n;
                cov += nn * nn * smooth;
                inv += 8 * nn * nn * nn + 24 * nn * nn;
                stat += 4 * nn * nn + 2 * nn;
            }
            rep.items = {{"caf", 2 * j * k},
                         {"covariance", cov},
                         {"inverse", inv},
                         {"statistic", stat}};
            break;
        }
        case DetectorId::ad_hoc:
            rep.items = {{"caf", 2 * j * k},
                         {"autocorrelation", (s.l_n + 1) * k},
                         {"normalizer", 2 * m * (s.l_n + 1)},
                         {"statistic", 2 * j}};
            break;
        case DetectorId::ed:
            throw std::invalid_argument(
                "complexity_count: the energy detector is not part of the model");
    }
    rep.total = 0;
    for (const auto& item : rep.items) rep.total += item.count;
    return rep;
}

}  // namespace cyfar
