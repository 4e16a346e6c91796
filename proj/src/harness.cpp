#include "cyfar/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <thread>

namespace cyfar {

const char* detector_name(DetectorId id) {
    switch (id) {
        case DetectorId::dg: return "dg";
        case DetectorId::sum_dg: return "sum_dg";
        case DetectorId::max_dg: return "max_dg";
        case DetectorId::prop1: return "prop1";
        case DetectorId::prop2: return "prop2";
        case DetectorId::ad_hoc: return "ad_hoc";
        case DetectorId::ed: return "ed";
    }
    return "?";
}

DetectorId detector_from_name(const std::string& name) {
    for (DetectorId id : {DetectorId::dg, DetectorId::sum_dg, DetectorId::max_dg,
                          DetectorId::prop1, DetectorId::prop2, DetectorId::ad_hoc,
                          DetectorId::ed})
        if (name == detector_name(id)) return id;
    throw std::invalid_argument("unknown detector: " + name);
}

const char* sweep_name(SweepVar v) {
    switch (v) {
        case SweepVar::snr: return "snr";
        case SweepVar::sir: return "sir";
        case SweepVar::inr: return "inr";
        case SweepVar::pfa: return "pfa";
    }
    return "?";
}

SweepVar sweep_from_name(const std::string& name) {
    for (SweepVar v : {SweepVar::snr, SweepVar::sir, SweepVar::inr, SweepVar::pfa})
        if (name == sweep_name(v)) return v;
    throw std::invalid_argument("unknown sweep variable: " + name);
}

double detector_threshold(const DetectorSpec& spec, double pfa, double noise_var,
                          std::size_t k, ThresholdTable* cache, Rng* rng) {
    switch (spec.id) {
        case DetectorId::dg:
        case DetectorId::sum_dg:
        case DetectorId::ad_hoc:
            return chi2_tail_inv(2 * spec.set.total_pairs(), pfa);
        case DetectorId::max_dg:
            return max_dg_threshold(spec.set.lags_per_cf(), pfa);
        case DetectorId::prop1:
            return sum_of_maxima_threshold(spec.set.lags_per_cf(), pfa, cache);
        case DetectorId::prop2: {
            std::vector<int> groups;
            for (const auto& g : spec.set.by_lag())
                groups.push_back(static_cast<int>(g.pair_indices.size()));
            return sum_of_maxima_threshold(groups, pfa, cache);
        }
        case DetectorId::ed:
            return ed_threshold(noise_var, k, pfa, spec.ed_variance_factor,
                                spec.ed_delta_db, rng);
    }
    throw std::invalid_argument("detector_threshold: bad detector id");
}

namespace {

std::string assembly_key(const CfTlSet& set, const SmoothingWindow& window) {
    char buf[64];
    std::string key = set.conjugate ? "c|" : "n|";
    for (const auto& e : set.entries) {
        std::snprintf(buf, sizeof buf, "%.17g:", e.cf);
        key += buf;
        for (int lag : e.lags) key += std::to_string(lag) + ",";
        key += ";";
    }
    std::snprintf(buf, sizeof buf, "|w%d,%d,%.17g",
                  static_cast<int>(window.kind), window.length, window.beta);
    return key + buf;
}

bool needs_assembly(DetectorId id) {
    return id == DetectorId::dg || id == DetectorId::sum_dg ||
           id == DetectorId::max_dg || id == DetectorId::prop1 ||
           id == DetectorId::prop2;
}

// all detector statistics over one buffer; detectors sharing
// (set, window, conjugate) reuse a single assembly
std::vector<double> evaluate_statistics(const Scene& s,
                                        const std::vector<DetectorSpec>& specs) {
    struct CachedAssembly {
        StatAssembly assembly;
        const CfTlSet* set = nullptr;
        std::vector<PairStat> pair_stats;
        bool have_pairs = false;
    };
    std::map<std::string, CachedAssembly> cache;
    std::vector<double> stats(specs.size(), 0.0);

    for (std::size_t d = 0; d < specs.size(); ++d) {
        const auto& spec = specs[d];
        TestStatistic stat;
        if (needs_assembly(spec.id)) {
            const std::string key = assembly_key(spec.set, spec.window);
            auto it = cache.find(key);
            if (it == cache.end()) {
                CachedAssembly ca;
                ca.assembly = assemble_statistics(s.buffer, spec.set, spec.window);
                ca.set = &spec.set;
                it = cache.emplace(key, std::move(ca)).first;
            }
            auto& ca = it->second;
            switch (spec.id) {
                case DetectorId::dg:
                    stat = t_dg(ca.assembly.r, ca.assembly.sigma,
                                ca.assembly.num_samples);
                    break;
                case DetectorId::sum_dg:
                    stat = t_sum_dg(ca.assembly, *ca.set);
                    break;
                case DetectorId::max_dg:
                    stat = t_max_dg(ca.assembly, *ca.set);
                    break;
                default: {
                    if (!ca.have_pairs) {
                        ca.pair_stats = single_pair_stats(ca.assembly, *ca.set);
                        ca.have_pairs = true;
                    }
                    stat = spec.id == DetectorId::prop1
                               ? t_prop_1(*ca.set, ca.pair_stats)
                               : t_prop_2(*ca.set, ca.pair_stats);
                    break;
                }
            }
        } else if (spec.id == DetectorId::ad_hoc) {
            stat = t_ad_hoc(s.buffer, spec.set, spec.ad_hoc, spec.set.conjugate);
        } else {
            stat = t_ed(s.buffer);
        }
        stats[d] = stat.value;
    }
    return stats;
}

}  // namespace

TrialResult run_trial(const SceneConfig& scene, const std::vector<DetectorSpec>& specs,
                      const std::vector<double>& thresholds, double pfa, Rng& rng) {
    if (specs.size() != thresholds.size())
        throw std::invalid_argument("run_trial: thresholds do not match detectors");
    const Scene s = mix_scene(scene, rng);
    TrialResult out;
    out.truth = s.h1;
    out.statistics = evaluate_statistics(s, specs);
    out.decisions.resize(specs.size());
    for (std::size_t d = 0; d < specs.size(); ++d) {
        double gamma = thresholds[d];
        if (std::isnan(gamma))  // per-trial threshold (ED noise uncertainty)
            gamma = detector_threshold(specs[d], pfa, s.noise_variance,
                                       s.buffer.size(), nullptr, &rng);
        out.decisions[d] = out.statistics[d] >= gamma ? 1 : 0;
    }
    return out;
}

PointEstimate wilson_interval(int successes, int trials) {
    PointEstimate e;
    e.trials = trials;
    if (trials <= 0) return e;
    const double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    e.p_hat = p;
    e.ci_lo = std::max(0.0, center - half);
    e.ci_hi = std::min(1.0, center + half);
    return e;
}

void MonteCarloConfig::validate() const {
    if (grid.empty()) throw std::invalid_argument("mc: sweep grid is empty");
    if (trials < 1) throw std::invalid_argument("mc: trials must be >= 1");
    if (detectors.empty()) throw std::invalid_argument("mc: no detectors");
    std::vector<std::string> labels;
    for (const auto& d : detectors) {
        const std::string label = d.label.empty() ? detector_name(d.id) : d.label;
        if (std::find(labels.begin(), labels.end(), label) != labels.end())
            throw std::invalid_argument("mc: duplicate detector label " + label);
        labels.push_back(label);
    }
}

namespace {

SceneConfig scene_at(const SceneConfig& base, SweepVar var, double value) {
    SceneConfig s = base;
    switch (var) {
        case SweepVar::snr: s.snr_db = value; break;
        case SweepVar::sir: s.sir_db = value; break;
        case SweepVar::inr: s.inr_db = value; break;
        case SweepVar::pfa: break;  // handled through thresholds
    }
    return s;
}

// Runs fn(trial, bucket) for trial = 0..trials-1 across threads; integer
// buckets are summed afterwards, so results do not depend on thread count.
template <typename TrialFn>
std::vector<int> parallel_counts(int trials, int threads, int buckets, TrialFn&& fn) {
    const int nthreads = std::max(1, threads);
    std::vector<std::vector<int>> partial(static_cast<std::size_t>(nthreads),
                                          std::vector<int>(buckets, 0));
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&, t] {
            for (int trial = t; trial < trials; trial += nthreads)
                fn(trial, partial[static_cast<std::size_t>(t)]);
        });
    for (auto& th : pool) th.join();
    std::vector<int> total(buckets, 0);
    for (const auto& part : partial)
        for (int b = 0; b < buckets; ++b) total[b] += part[b];
    return total;
}

}  // namespace

DetectionCurve monte_carlo_curve(const MonteCarloConfig& cfg) {
    cfg.validate();
    DetectionCurve curve;
    curve.sweep = cfg.grid;
    curve.sweep_variable = sweep_name(cfg.variable);
    curve.trials = cfg.trials;
    curve.pfa = cfg.pfa;
    curve.h1_scenes = cfg.scene.uwb.has_value();
    for (const auto& d : cfg.detectors)
        curve.detectors.push_back(d.label.empty() ? detector_name(d.id) : d.label);
    curve.points.assign(cfg.detectors.size(),
                        std::vector<PointEstimate>(cfg.grid.size()));

    ThresholdTable table;
    const std::size_t k = static_cast<std::size_t>(
        std::llround(cfg.scene.duration * cfg.scene.sample_rate));

    if (cfg.variable == SweepVar::pfa) {
        // ROC mode: one statistic draw per trial, compared against the
        // threshold of every requested false-alarm rate
        const std::size_t nd = cfg.detectors.size();
        const std::size_t np = cfg.grid.size();
        std::vector<double> gammas(nd * np);
        std::vector<std::uint8_t> per_trial(nd, 0);
        for (std::size_t d = 0; d < nd; ++d) {
            const auto& spec = cfg.detectors[d];
            per_trial[d] = spec.id == DetectorId::ed && spec.ed_delta_db > 0.0;
            for (std::size_t p = 0; p < np; ++p)
                gammas[d * np + p] =
                    per_trial[d] ? std::nan("")
                                 : detector_threshold(spec, cfg.grid[p],
                                                      cfg.scene.noise.variance, k, &table);
        }
        const auto counts = parallel_counts(
            cfg.trials, cfg.threads, static_cast<int>(nd * np),
            [&](int trial, std::vector<int>& bucket) {
                Rng rng(derive_seed(cfg.base_seed, 0, static_cast<std::uint64_t>(trial)));
                const Scene s = mix_scene(cfg.scene, rng);
                const auto stats = evaluate_statistics(s, cfg.detectors);
                for (std::size_t d = 0; d < nd; ++d)
                    for (std::size_t p = 0; p < np; ++p) {
                        double gamma = gammas[d * np + p];
                        if (std::isnan(gamma))
                            gamma = detector_threshold(cfg.detectors[d], cfg.grid[p],
                                                       s.noise_variance, s.buffer.size(),
                                                       nullptr, &rng);
                        if (stats[d] >= gamma)
                            bucket[static_cast<std::size_t>(d * np + p)] += 1;
                    }
            });
        for (std::size_t d = 0; d < nd; ++d)
            for (std::size_t p = 0; p < np; ++p)
                curve.points[d][p] = wilson_interval(
                    counts[static_cast<std::size_t>(d * np + p)], cfg.trials);
        return curve;
    }

    for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
        const double value = cfg.grid[g];
        const double pfa = cfg.pfa;
        const SceneConfig scene = scene_at(cfg.scene, cfg.variable, value);

        std::vector<double> thresholds(cfg.detectors.size());
        for (std::size_t d = 0; d < cfg.detectors.size(); ++d) {
            const auto& spec = cfg.detectors[d];
            const bool per_trial = spec.id == DetectorId::ed && spec.ed_delta_db > 0.0;
            thresholds[d] = per_trial
                                ? std::nan("")
                                : detector_threshold(spec, pfa, scene.noise.variance,
                                                     k, &table);
        }

        const auto counts = parallel_counts(
            cfg.trials, cfg.threads, static_cast<int>(cfg.detectors.size()),
            [&](int trial, std::vector<int>& bucket) {
                Rng rng(derive_seed(cfg.base_seed, g, static_cast<std::uint64_t>(trial)));
                const TrialResult r = run_trial(scene, cfg.detectors, thresholds, pfa, rng);
                for (std::size_t d = 0; d < r.decisions.size(); ++d)
                    bucket[d] += r.decisions[d];
            });

        for (std::size_t d = 0; d < cfg.detectors.size(); ++d)
            curve.points[d][g] = wilson_interval(counts[d], cfg.trials);
    }
    return curve;
}

std::vector<DetectionCurve> pfa_calibration(const CalibrationConfig& cfg) {
    if (cfg.scene.uwb)
        throw std::invalid_argument("pfa_calibration: scene must not contain UWB");
    if (cfg.expected_pfa_grid.empty() || cfg.inr_grid_db.empty())
        throw std::invalid_argument("pfa_calibration: empty grid");
    if (cfg.trials < 1) throw std::invalid_argument("pfa_calibration: trials >= 1");

    std::vector<DetectionCurve> curves;
    ThresholdTable table;
    const std::size_t k = static_cast<std::size_t>(
        std::llround(cfg.scene.duration * cfg.scene.sample_rate));
    const std::size_t nd = cfg.detectors.size();
    const std::size_t np = cfg.expected_pfa_grid.size();

    for (std::size_t gi = 0; gi < cfg.inr_grid_db.size(); ++gi) {
        SceneConfig scene = cfg.scene;
        if (scene.interferer) scene.inr_db = cfg.inr_grid_db[gi];

        std::vector<double> gammas(nd * np);
        for (std::size_t d = 0; d < nd; ++d) {
            const auto& spec = cfg.detectors[d];
            const bool per_trial = spec.id == DetectorId::ed && spec.ed_delta_db > 0.0;
            for (std::size_t p = 0; p < np; ++p)
                gammas[d * np + p] =
                    per_trial ? std::nan("")
                              : detector_threshold(spec, cfg.expected_pfa_grid[p],
                                                   scene.noise.variance, k, &table);
        }

        const auto counts = parallel_counts(
            cfg.trials, cfg.threads, static_cast<int>(nd * np),
            [&](int trial, std::vector<int>& bucket) {
                Rng rng(derive_seed(cfg.base_seed, gi, static_cast<std::uint64_t>(trial)));
                const Scene s = mix_scene(scene, rng);
                const auto stats = evaluate_statistics(s, cfg.detectors);
                for (std::size_t d = 0; d < nd; ++d)
                    for (std::size_t p = 0; p < np; ++p) {
                        double gamma = gammas[d * np + p];
                        if (std::isnan(gamma))
                            gamma = detector_threshold(cfg.detectors[d],
                                                       cfg.expected_pfa_grid[p],
                                                       s.noise_variance, s.buffer.size(),
                                                       nullptr, &rng);
                        if (stats[d] >= gamma)
                            bucket[static_cast<std::size_t>(d * np + p)] += 1;
                    }
            });

        DetectionCurve curve;
        curve.sweep = cfg.expected_pfa_grid;
        curve.sweep_variable = "expected_pfa";
        curve.trials = cfg.trials;
        curve.h1_scenes = false;
        for (const auto& d : cfg.detectors)
            curve.detectors.push_back(d.label.empty() ? detector_name(d.id) : d.label);
        curve.points.assign(nd, std::vector<PointEstimate>(np));
        for (std::size_t d = 0; d < nd; ++d)
            for (std::size_t p = 0; p < np; ++p)
                curve.points[d][p] = wilson_interval(
                    counts[static_cast<std::size_t>(d * np + p)], cfg.trials);
        curves.push_back(std::move(curve));
    }
    return curves;
}

}  // namespace cyfar
