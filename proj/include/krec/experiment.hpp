#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "krec/core.hpp"
#include "krec/reconstruct.hpp"
#include "krec/theory.hpp"

namespace krec {

/// What to evaluate per Monte Carlo trial.
///   Uniqueness  - run is_unique; reported as two rows, "nonunique" (trials
///                 diagnosed ambiguous) and "unknown" (budget ran out)
///   EventX      - fraction of trials where detector X fires
///   V, U        - counting statistics; count is the sum over trials,
///                 estimate the mean, stderr the sample standard error
///   RepeatFree  - fraction of trials with at least one repeated k-mer
///                 (the quantity repeat_free_bound constrains)
enum class Measure { Uniqueness, EventA, EventB, EventC, EventD, EventH, V, U, RepeatFree };

const char* measure_name(Measure m);
std::optional<Measure> measure_from_name(const std::string& name);

/// Grid experiment: every (n, alpha, beta) combination is one cell, with
/// m and k derived through the scaling parameterization. Combinations whose
/// derived parameters are invalid (e.g. k+1 > n) are reported as skipped.
struct ExperimentConfig {
    std::vector<unsigned> n_values;
    std::vector<double> alphas;
    std::vector<double> betas;
    unsigned trials = 100;
    std::uint64_t seed = 1;
    Budget budget;
    std::vector<Measure> measures = {Measure::Uniqueness};

    static ExperimentConfig from_json(const std::string& text);
    std::string to_json() const;
};

struct MeasureStat {
    std::string label;        // CSV measure column value
    std::uint64_t count = 0;  // trials with the property, or sum for V/U
    double estimate = 0;
    double se = 0;
};

struct CellReport {
    double alpha = 0, beta = 0;
    unsigned n = 0, m = 0, k = 0;
    unsigned trials = 0;
    bool skipped = false;
    RegionClass region;
    std::vector<MeasureStat> stats;
};

/// Runs one cell. Trial t draws its sources from derive_seed(seed, t), so
/// the report depends only on (params, trials, seed, measures, budget) and
/// never on thread count or scheduling.
CellReport run_cell(const Params& params, unsigned trials, std::uint64_t seed,
                    const std::vector<Measure>& measures, const Budget& budget,
                    unsigned threads = 1);

/// Runs the whole grid; cell i uses seed derive_seed(config.seed, i), with
/// i counting every grid combination including skipped ones.
std::vector<CellReport> run_grid(const ExperimentConfig& config, unsigned threads = 1);

/// CSV with header alpha,beta,n,m,k,trials,measure,count,estimate,stderr,verdict.
/// Skipped cells emit a single row with measure "skipped".
std::string emit_csv(const std::vector<CellReport>& reports);

/// Heatmap of one measure label (e.g. "nonunique") over the (alpha, beta)
/// plane for the first n found in the reports, with the two theoretical
/// region boundaries drawn as polylines: solid for max(2a+1, a+2), above
/// which reconstruction is feasible, dashed for max(2a+1, a+3/2), below
/// which it is not.
std::string emit_svg_heatmap(const std::vector<CellReport>& reports,
                             const std::string& label);

} // namespace krec
