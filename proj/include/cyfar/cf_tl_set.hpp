// cyclic-frequency / time-lag working sets
#pragma once

#include <string>
#include <vector>

namespace cyfar {

/// The detector's working set: per cyclic frequency, the list of integer
/// sample lags. Frequencies are in cycles/sample. The dual (per-lag) view
/// regroups the same pairs by lag.
struct CfTlSet {
    struct Entry {
        double cf = 0.0;
        std::vector<int> lags;
    };
    std::vector<Entry> entries;
    bool conjugate = false;

    struct Pair {
        double cf;
        int lag;
        int cf_index;   // index into entries
        int lag_index;  // position within that entry
    };

    struct LagGroup {
        int lag;
        std::vector<int> pair_indices;  // into pairs()
    };

    int num_cfs() const { return static_cast<int>(entries.size()); }
    int total_pairs() const;  // J
    std::vector<int> lags_per_cf() const;

    /// flattened (cf, lag) pairs in Eq.-14 order
    std::vector<Pair> pairs() const;

    /// dual view grouped by lag; sum of group sizes equals J
    std::vector<LagGroup> by_lag() const;

    /// throws on empty set or duplicate (cf, lag) pairs
    void validate() const;

    /// every cf paired with every lag (the Omega construction);
    /// cfs in Hz are converted with the given sample rate
    static CfTlSet cross(const std::vector<double>& cfs_hz,
                         const std::vector<int>& lags_samples,
                         double sample_rate, bool conjugate);
};

}  // namespace cyfar
