#include "cyfar/cf_tl_set.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace cyfar {

int CfTlSet::total_pairs() const {
    int j = 0;
    for (const auto& e : entries) j += static_cast<int>(e.lags.size());
    return j;
}

std::vector<int> CfTlSet::lags_per_cf() const {
    std::vector<int> n;
    n.reserve(entries.size());
    for (const auto& e : entries) n.push_back(static_cast<int>(e.lags.size()));
    return n;
}

std::vector<CfTlSet::Pair> CfTlSet::pairs() const {
    std::vector<Pair> out;
    for (int i = 0; i < static_cast<int>(entries.size()); ++i)
        for (int l = 0; l < static_cast<int>(entries[i].lags.size()); ++l)
            out.push_back({entries[i].cf, entries[i].lags[l], i, l});
    return out;
}

std::vector<CfTlSet::LagGroup> CfTlSet::by_lag() const {
    const auto ps = pairs();
    std::map<int, std::vector<int>> groups;
    for (int idx = 0; idx < static_cast<int>(ps.size()); ++idx)
        groups[ps[idx].lag].push_back(idx);
    std::vector<LagGroup> out;
    out.reserve(groups.size());
    for (auto& [lag, idxs] : groups) out.push_back({lag, std::move(idxs)});
    return out;
}

void CfTlSet::validate() const {
    if (total_pairs() <= 0)
        throw std::invalid_argument("CfTlSet: working set is empty");
    std::set<std::pair<double, int>> seen;
    for (const auto& e : entries) {
        if (e.lags.empty())
            throw std::invalid_argument("CfTlSet: CF entry without lags");
        for (int lag : e.lags) {
            if (lag < 0) throw std::invalid_argument("CfTlSet: negative lag");
            if (!seen.insert({e.cf, lag}).second)
                throw std::invalid_argument("CfTlSet: duplicate (cf, lag) pair");
        }
    }
}

CfTlSet CfTlSet::cross(const std::vector<double>& cfs_hz,
                       const std::vector<int>& lags_samples,
                       double sample_rate, bool conjugate) {
    CfTlSet set;
    set.conjugate = conjugate;
    for (double f : cfs_hz) set.entries.push_back({f / sample_rate, lags_samples});
    set.validate();
    return set;
}

}  // namespace cyfar
