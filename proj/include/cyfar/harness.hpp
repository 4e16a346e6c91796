// Monte Carlo experiment engine
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyfar/detectors.hpp"
#include "cyfar/scene.hpp"
#include "cyfar/thresholds.hpp"
#include "cyfar/window.hpp"

namespace cyfar {

enum class DetectorId { dg, sum_dg, max_dg, prop1, prop2, ad_hoc, ed };

const char* detector_name(DetectorId id);
DetectorId detector_from_name(const std::string& name);

struct DetectorSpec {
    DetectorId id = DetectorId::sum_dg;
    std::string label;  // unique within a run; defaults to detector_name(id)
    CfTlSet set;        // ignored by the energy detector
    SmoothingWindow window;
    AdHocConfig ad_hoc;
    int ed_variance_factor = 1;   // 1 complex noise, 2 real noise
    double ed_delta_db = 0.0;     // noise-uncertainty for the ED threshold
};

/// CFAR threshold for one detector at the given false-alarm rate. The
/// energy detector additionally needs the noise power and sample count;
/// with ed_delta_db > 0 the assumed power is perturbed per call through rng.
double detector_threshold(const DetectorSpec& spec, double pfa, double noise_var,
                          std::size_t k, ThresholdTable* cache = nullptr,
                          Rng* rng = nullptr);

struct TrialResult {
    bool truth = false;  // H1 present
    std::vector<double> statistics;
    std::vector<std::uint8_t> decisions;
};

/// One scene draw, all detectors evaluated on the same buffer. Detectors
/// sharing (set, window, conjugate) reuse one statistic assembly. A NaN
/// threshold marks per-trial computation (ED with noise uncertainty).
TrialResult run_trial(const SceneConfig& scene, const std::vector<DetectorSpec>& specs,
                      const std::vector<double>& thresholds, double pfa, Rng& rng);

struct PointEstimate {
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    int trials = 0;
};

/// Wilson 95% score interval
PointEstimate wilson_interval(int successes, int trials);

enum class SweepVar { snr, sir, inr, pfa };

const char* sweep_name(SweepVar v);
SweepVar sweep_from_name(const std::string& name);

struct MonteCarloConfig {
    SceneConfig scene;
    std::vector<DetectorSpec> detectors;
    SweepVar variable = SweepVar::snr;
    std::vector<double> grid;
    int trials = 200;
    std::uint64_t base_seed = 1;
    double pfa = 0.01;
    int threads = 1;

    void validate() const;
};

struct DetectionCurve {
    std::vector<double> sweep;
    std::vector<std::string> detectors;
    // points[d][g]: detector d at grid value g
    std::vector<std::vector<PointEstimate>> points;
    std::string sweep_variable;
    int trials = 0;
    double pfa = 0.0;
    bool h1_scenes = false;
};

/// sweeps the grid; trials are independent and reproducible from the base
/// seed regardless of thread count
DetectionCurve monte_carlo_curve(const MonteCarloConfig& cfg);

struct CalibrationConfig {
    SceneConfig scene;  // must have no UWB part
    std::vector<DetectorSpec> detectors;
    std::vector<double> inr_grid_db;
    std::vector<double> expected_pfa_grid;
    int trials = 200;
    std::uint64_t base_seed = 1;
    int threads = 1;
};

/// actual vs expected false-alarm rate per detector; one curve per INR
/// value (sweep axis = expected pfa)
std::vector<DetectionCurve> pfa_calibration(const CalibrationConfig& cfg);

}  // namespace cyfar
