// operation-count model of the detector family
#pragma once

#include <string>
#include <vector>

#include "cyfar/harness.hpp"

namespace cyfar {

struct ComplexityStructure {
    std::vector<int> n_i;   // lags per CF
    long long j = -1;       // -1 derives sum(n_i); explicit values are checked
    long long k = 10000;    // samples
    int l = 65;             // smoothing window length
    int l_n = 5;            // ad-hoc autocorrelation support
};

struct OpCountReport {
    std::string detector;
    struct Item {
        std::string name;
        long long count;
    };
    std::vector<Item> items;
    long long total = 0;  // always equals the sum of items
};

/// Closed-form multiplication counts per detector. The proposed detectors
/// and the two DG variants share rows pairwise; the energy detector is not
/// part of the model and is rejected.
OpCountReport complexity_count(DetectorId id, const ComplexityStructure& s);

}  // namespace cyfar
