// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ristw/heuristics.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <tuple>
#include <vector>

namespace ristw {

enum class Scheme {
    two_way,
    time_sharing,
    phase_averaging,
    oneway_downlink_only,
    oneway_uplink_only,
};

inline std::string to_string(Scheme s) {
    switch (s) {
    case Scheme::two_way: return "two_way";
    case Scheme::time_sharing: return "time_sharing";
    case Scheme::phase_averaging: return "phase_averaging";
    case Scheme::oneway_downlink_only: return "oneway_downlink_only";
    case Scheme::oneway_uplink_only: return "oneway_uplink_only";
    }
    return "unknown";
}

inline Scheme scheme_from_string(const std::string& name) {
    for (Scheme s : {Scheme::two_way, Scheme::time_sharing, Scheme::phase_averaging,
                     Scheme::oneway_downlink_only, Scheme::oneway_uplink_only})
        if (to_string(s) == name) return s;
    throw parse_error("unknown scheme '" + name + "'");
}

enum class SweepVariable {
    bs_ris_distance, // horizontal RIS position in meters
    eta,             // downlink weight
    ris_elements,    // total element count, grown along the column axis
};

inline std::string to_string(SweepVariable v) {
    switch (v) {
    case SweepVariable::bs_ris_distance: return "bs_ris_distance";
    case SweepVariable::eta: return "eta";
    case SweepVariable::ris_elements: return "ris_elements";
    }
    return "unknown";
}

inline SweepVariable variable_from_string(const std::string& name) {
    for (SweepVariable v :
         {SweepVariable::bs_ris_distance, SweepVariable::eta, SweepVariable::ris_elements})
        if (to_string(v) == name) return v;
    throw parse_error("unknown sweep variable '" + name + "'");
}

struct SweepSpec {
    SweepVariable variable = SweepVariable::bs_ris_distance;
    std::vector<double> values;
    std::vector<Scheme> schemes;
    int seeds = 100;
    std::uint64_t seed_base = 1;
    double eta = 0.5;      // weight used when the weight itself is not swept
    int random_starts = 0; // extra randomized initializations for the joint design
    bool record_timing = false;
    SystemParams base;
    RcgConfig optimizer;

    void validate() const {
        if (values.empty()) throw domain_error("sweep needs at least one value");
        if (schemes.empty()) throw domain_error("sweep needs at least one scheme");
        if (seeds < 1) throw domain_error("sweep needs at least one seed");
        if (!(eta >= 0.0 && eta <= 1.0)) throw domain_error("eta must lie in [0, 1]");
        if (random_starts < 0) throw domain_error("random_starts must be nonnegative");
        base.validate();
        if (variable == SweepVariable::eta)
            for (double v : values)
                if (!(v >= 0.0 && v <= 1.0))
                    throw domain_error("swept weight values must lie in [0, 1]");
        if (variable == SweepVariable::ris_elements)
            for (double v : values) {
                const double ratio = v / base.ris_rows;
                if (!(v > 0.0) || std::abs(ratio - std::round(ratio)) > 1e-9)
                    throw domain_error("element counts must be positive multiples of ris_rows");
            }
    }
};

struct SweepRecord {
    std::string scheme;
    std::string variable;
    double value = 0.0;
    std::uint64_t seed = 0;
    double eta = 0.5;
    double rate_down = 0.0;
    double rate_up = 0.0;
    double objective = 0.0;
    long iters = 0;
    double ms = 0.0;
};

namespace detail {

inline SystemParams scenario_for_value(const SweepSpec& spec, double value) {
    SystemParams p = spec.base;
    switch (spec.variable) {
    case SweepVariable::bs_ris_distance:
        p.ris_pos.x = value;
        break;
    case SweepVariable::eta:
        break;
    case SweepVariable::ris_elements:
        p.ris_cols = static_cast<int>(std::round(value)) / p.ris_rows;
        break;
    }
    return p;
}

inline double cell_eta(const SweepSpec& spec, double value) {
    return spec.variable == SweepVariable::eta ? value : spec.eta;
}

} // namespace detail

/// Evaluate every requested scheme on one realization per (value, seed) cell.
/// All schemes in a cell share the identical channel draw; the output is
/// sorted canonically and fully determined by the spec.
inline std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<SweepRecord> records;
    records.reserve(spec.values.size() * static_cast<std::size_t>(spec.seeds) *
                    spec.schemes.size());

    const bool wants_oneway =
        std::any_of(spec.schemes.begin(), spec.schemes.end(), [](Scheme s) {
            return s != Scheme::two_way;
        });

    for (double value : spec.values) {
        const SystemParams params = detail::scenario_for_value(spec, value);
        const double eta = detail::cell_eta(spec, value);
        for (int si = 0; si < spec.seeds; ++si) {
            const std::uint64_t seed = spec.seed_base + static_cast<std::uint64_t>(si);
            try {
                const ChannelSet ch = synthesize_channels(params, seed);
                const CompositeContext ctx = build_context(ch, params, eta);

                OneWayConfig ocfg;
                OneWaySolution down{PhaseVector::ones(1), {}, 0.0, 0};
                OneWaySolution up{PhaseVector::ones(1), {}, 0.0, 0};
                if (wants_oneway) {
                    down = oneway_downlink(ctx, ocfg);
                    up = oneway_uplink(ctx, ocfg);
                }

                for (Scheme scheme : spec.schemes) {
                    const auto t0 = std::chrono::steady_clock::now();
                    SweepRecord rec;
                    rec.scheme = to_string(scheme);
                    rec.variable = to_string(spec.variable);
                    rec.value = value;
                    rec.seed = seed;
                    rec.eta = eta;
                    switch (scheme) {
                    case Scheme::two_way: {
                        const auto sol = two_way_multistart(ctx, 1 + spec.random_starts,
                                                            seed, spec.optimizer);
                        rec.rate_down = sol.rate_down;
                        rec.rate_up = sol.rate_up;
                        rec.objective = sol.objective;
                        rec.iters = static_cast<long>(sol.trace.iterations.size()) - 1;
                        break;
                    }
                    case Scheme::time_sharing: {
                        const RatePoint p = time_sharing(ctx, down, up, eta);
                        rec.rate_down = p.rate_down;
                        rec.rate_up = p.rate_up;
                        rec.objective = eta * p.rate_down + (1.0 - eta) * p.rate_up;
                        rec.iters = down.rounds + up.rounds;
                        break;
                    }
                    case Scheme::phase_averaging: {
                        const RatePoint p = phase_averaging(ctx, down, up, eta);
                        rec.rate_down = p.rate_down;
                        rec.rate_up = p.rate_up;
                        rec.objective = eta * p.rate_down + (1.0 - eta) * p.rate_up;
                        rec.iters = down.rounds + up.rounds;
                        break;
                    }
                    case Scheme::oneway_downlink_only: {
                        const RatePoint p = evaluate_rates(ctx, down.phases, rec.scheme);
                        rec.rate_down = p.rate_down;
                        rec.rate_up = p.rate_up;
                        rec.objective = eta * p.rate_down + (1.0 - eta) * p.rate_up;
                        rec.iters = down.rounds;
                        break;
                    }
                    case Scheme::oneway_uplink_only: {
                        const RatePoint p = evaluate_rates(ctx, up.phases, rec.scheme);
                        rec.rate_down = p.rate_down;
                        rec.rate_up = p.rate_up;
                        rec.objective = eta * p.rate_down + (1.0 - eta) * p.rate_up;
                        rec.iters = up.rounds;
                        break;
                    }
                    }
                    if (spec.record_timing) {
                        const auto t1 = std::chrono::steady_clock::now();
                        rec.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                    }
                    records.push_back(std::move(rec));
                }
            } catch (const error& e) {
                // a failed cell is reported and skipped, the sweep goes on
                std::cerr << "sweep cell value=" << value << " seed=" << seed
                          << " failed: " << e.what() << "\n";
            }
        }
    }

    std::sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
        return std::tie(a.scheme, a.value, a.seed) < std::tie(b.scheme, b.value, b.seed);
    });
    return records;
}

struct RegionPoint {
    double eta = 0.0;
    double rate_down = 0.0;
    double rate_up = 0.0;
};

struct SchemeFrontier {
    Scheme scheme = Scheme::two_way;
    std::vector<RegionPoint> mean_points; // seed-averaged operating point per weight
    std::vector<RegionPoint> frontier;    // Pareto-filtered subset, rate_down ascending
};

namespace detail {

inline void check_region_spec(const SweepSpec& spec) {
    if (spec.variable != SweepVariable::eta)
        throw domain_error("rate_region requires a weight sweep");
    spec.validate();
    const bool has0 = std::any_of(spec.values.begin(), spec.values.end(),
                                  [](double v) { return v == 0.0; });
    const bool has1 = std::any_of(spec.values.begin(), spec.values.end(),
                                  [](double v) { return v == 1.0; });
    if (!has0 || !has1) throw domain_error("weight grid must include 0 and 1");
}

} // namespace detail

/// Weight sweep summarized as one mean curve per scheme plus its Pareto
/// frontier. The grid must cover both endpoints so each scheme's extreme
/// operating points are present. This overload aggregates records that have
/// already been produced by run_sweep on the same spec.
inline std::vector<SchemeFrontier> rate_region(const SweepSpec& spec,
                                               const std::vector<SweepRecord>& records) {
    detail::check_region_spec(spec);

    std::vector<double> grid = spec.values;
    std::sort(grid.begin(), grid.end());

    std::vector<SchemeFrontier> out;
    for (Scheme scheme : spec.schemes) {
        SchemeFrontier fr;
        fr.scheme = scheme;
        const std::string name = to_string(scheme);
        for (double eta : grid) {
            RegionPoint p;
            p.eta = eta;
            int n = 0;
            for (const auto& r : records) {
                if (r.scheme != name || r.value != eta) continue;
                p.rate_down += r.rate_down;
                p.rate_up += r.rate_up;
                ++n;
            }
            if (n == 0) continue; // every cell for this weight failed
            p.rate_down /= n;
            p.rate_up /= n;
            fr.mean_points.push_back(p);
        }

        std::vector<RegionPoint> sorted = fr.mean_points;
        std::sort(sorted.begin(), sorted.end(), [](const RegionPoint& a, const RegionPoint& b) {
            return std::tie(a.rate_down, a.rate_up) < std::tie(b.rate_down, b.rate_up);
        });
        double best_up = -1.0;
        for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
            if (it->rate_up > best_up) {
                fr.frontier.push_back(*it);
                best_up = it->rate_up;
            }
        }
        std::reverse(fr.frontier.begin(), fr.frontier.end());
        out.push_back(std::move(fr));
    }
    return out;
}

inline std::vector<SchemeFrontier> rate_region(const SweepSpec& spec) {
    detail::check_region_spec(spec); // fail before the expensive sweep
    return rate_region(spec, run_sweep(spec));
}

} // namespace ristw
