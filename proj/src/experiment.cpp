#include "krec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "krec/events.hpp"
#include "krec/rng.hpp"

namespace krec {

const char* measure_name(Measure m) {
    switch (m) {
        case Measure::Uniqueness: return "uniqueness";
        case Measure::EventA: return "eventA";
        case Measure::EventB: return "eventB";
        case Measure::EventC: return "eventC";
        case Measure::EventD: return "eventD";
        case Measure::EventH: return "eventH";
        case Measure::V: return "V";
        case Measure::U: return "U";
        case Measure::RepeatFree: return "repeat_free";
    }
    return "?";
}

std::optional<Measure> measure_from_name(const std::string& name) {
    for (Measure m : {Measure::Uniqueness, Measure::EventA, Measure::EventB,
                      Measure::EventC, Measure::EventD, Measure::EventH, Measure::V,
                      Measure::U, Measure::RepeatFree})
        if (name == measure_name(m)) return m;
    return std::nullopt;
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ExperimentConfig c;

    auto as_list = [&](const char* key, auto& out) {
        if (!j.contains(key)) throw std::invalid_argument(std::string("config: missing ") + key);
        if (j[key].is_array())
            out = j[key].get<std::decay_t<decltype(out)>>();
        else
            out = {j[key].get<typename std::decay_t<decltype(out)>::value_type>()};
        if (out.empty()) throw std::invalid_argument(std::string("config: empty ") + key);
    };
    as_list("n", c.n_values);
    as_list("alpha", c.alphas);
    as_list("beta", c.betas);

    c.trials = j.value("trials", 100u);
    if (c.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    c.seed = j.value("seed", std::uint64_t{1});
    c.budget.max_expansions = j.value("max_expansions", std::uint64_t{1'000'000});
    c.budget.max_solutions = j.value("max_solutions", std::uint64_t{2});

    if (j.contains("measures")) {
        c.measures.clear();
        for (const auto& s : j["measures"]) {
            auto m = measure_from_name(s.get<std::string>());
            if (!m) throw std::invalid_argument("config: unknown measure " + s.get<std::string>());
            c.measures.push_back(*m);
        }
        if (c.measures.empty()) throw std::invalid_argument("config: empty measures");
    }
    return c;
}

std::string ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["n"] = n_values;
    j["alpha"] = alphas;
    j["beta"] = betas;
    j["trials"] = trials;
    j["seed"] = seed;
    j["max_expansions"] = budget.max_expansions;
    j["max_solutions"] = budget.max_solutions;
    std::vector<std::string> ms;
    for (Measure m : measures) ms.emplace_back(measure_name(m));
    j["measures"] = ms;
    return j.dump();
}

namespace {

struct TrialOutcome {
    bool event_a = false, event_b = false, event_c = false, event_d = false,
         event_h = false;
    bool nonunique = false, unknown = false, repeat = false;
    std::uint64_t v = 0, u = 0;
};

TrialOutcome eval_trial(const Params& p, std::uint64_t trial_seed,
                        const std::vector<Measure>& measures, const Budget& budget) {
    const SourceSet x = generate_sources(p, trial_seed);
    TrialOutcome o;
    for (Measure m : measures) {
        switch (m) {
            case Measure::Uniqueness: {
                const Uniqueness u = is_unique(x, p.k, budget);
                o.nonunique = u == Uniqueness::Ambiguous;
                o.unknown = u == Uniqueness::Unknown;
                break;
            }
            case Measure::EventA: o.event_a = detect_A(x, p.k).has_value(); break;
            case Measure::EventB: o.event_b = detect_B(x, p.k).has_value(); break;
            case Measure::EventC: o.event_c = detect_C(x, p.k).has_value(); break;
            case Measure::EventD: o.event_d = detect_D(x, p.k).has_value(); break;
            case Measure::EventH: o.event_h = detect_H(x, p.k).has_value(); break;
            case Measure::V: o.v = v_statistic(x, p.k); break;
            case Measure::U: o.u = u_statistic(x, p.k); break;
            case Measure::RepeatFree: o.repeat = has_repeated_kmer(x, p.k); break;
        }
    }
    return o;
}

MeasureStat binary_stat(const std::string& label, std::uint64_t count, unsigned trials) {
    MeasureStat s;
    s.label = label;
    s.count = count;
    const double t = trials;
    s.estimate = count / t;
    if (count == 0 || count == trials)
        s.se = 1.0 / t; // degenerate sample; 3*se matches the rule of three
    else
        s.se = std::sqrt(s.estimate * (1.0 - s.estimate) / t);
    return s;
}

MeasureStat sum_stat(const std::string& label, const std::vector<std::uint64_t>& vals) {
    MeasureStat s;
    s.label = label;
    const double t = static_cast<double>(vals.size());
    double sum = 0, sumsq = 0;
    for (std::uint64_t v : vals) {
        s.count += v;
        sum += static_cast<double>(v);
        sumsq += static_cast<double>(v) * static_cast<double>(v);
    }
    s.estimate = sum / t;
    if (vals.size() > 1) {
        const double var = std::max(0.0, (sumsq - sum * sum / t) / (t - 1));
        s.se = std::sqrt(var / t);
    }
    return s;
}

} // namespace

CellReport run_cell(const Params& params, unsigned trials, std::uint64_t seed,
                    const std::vector<Measure>& measures, const Budget& budget,
                    unsigned threads) {
    if (trials < 1) throw std::invalid_argument("run_cell: trials must be >= 1");
    CellReport r;
    r.alpha = params.alpha.value_or(0);
    r.beta = params.beta.value_or(0);
    r.n = params.n;
    r.m = params.m;
    r.k = params.k;
    r.trials = trials;
    if (params.alpha && params.beta) r.region = classify_region(*params.alpha, *params.beta);

    std::vector<TrialOutcome> outcomes(trials);
    if (threads <= 1) {
        for (unsigned t = 0; t < trials; ++t)
            outcomes[t] = eval_trial(params, derive_seed(seed, t), measures, budget);
    } else {
        std::atomic<unsigned> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto worker = [&] {
            try {
                for (;;) {
                    const unsigned t = next.fetch_add(1);
                    if (t >= trials) return;
                    outcomes[t] = eval_trial(params, derive_seed(seed, t), measures, budget);
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        const unsigned nt = std::min(threads, trials);
        pool.reserve(nt);
        for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    for (Measure m : measures) {
        auto count_of = [&](bool TrialOutcome::* field) {
            std::uint64_t c = 0;
            for (const auto& o : outcomes) c += o.*field;
            return c;
        };
        switch (m) {
            case Measure::Uniqueness:
                r.stats.push_back(
                    binary_stat("nonunique", count_of(&TrialOutcome::nonunique), trials));
                r.stats.push_back(
                    binary_stat("unknown", count_of(&TrialOutcome::unknown), trials));
                break;
            case Measure::EventA:
                r.stats.push_back(binary_stat("eventA", count_of(&TrialOutcome::event_a), trials));
                break;
            case Measure::EventB:
                r.stats.push_back(binary_stat("eventB", count_of(&TrialOutcome::event_b), trials));
                break;
            case Measure::EventC:
                r.stats.push_back(binary_stat("eventC", count_of(&TrialOutcome::event_c), trials));
                break;
            case Measure::EventD:
                r.stats.push_back(binary_stat("eventD", count_of(&TrialOutcome::event_d), trials));
                break;
            case Measure::EventH:
                r.stats.push_back(binary_stat("eventH", count_of(&TrialOutcome::event_h), trials));
                break;
            case Measure::V: {
                std::vector<std::uint64_t> vals(trials);
                for (unsigned t = 0; t < trials; ++t) vals[t] = outcomes[t].v;
                r.stats.push_back(sum_stat("V", vals));
                break;
            }
            case Measure::U: {
                std::vector<std::uint64_t> vals(trials);
                for (unsigned t = 0; t < trials; ++t) vals[t] = outcomes[t].u;
                r.stats.push_back(sum_stat("U", vals));
                break;
            }
            case Measure::RepeatFree:
                r.stats.push_back(
                    binary_stat("repeat_free", count_of(&TrialOutcome::repeat), trials));
                break;
        }
    }
    return r;
}

std::vector<CellReport> run_grid(const ExperimentConfig& config, unsigned threads) {
    std::vector<CellReport> reports;
    std::uint64_t cell_index = 0;
    for (unsigned n : config.n_values)
        for (double alpha : config.alphas)
            for (double beta : config.betas) {
                const std::uint64_t cell_seed = derive_seed(config.seed, cell_index++);
                try {
                    const Params p = derive_params(n, alpha, beta);
                    reports.push_back(run_cell(p, config.trials, cell_seed,
                                               config.measures, config.budget, threads));
                } catch (const std::invalid_argument&) {
                    CellReport r;
                    r.alpha = alpha;
                    r.beta = beta;
                    r.n = n;
                    r.skipped = true;
                    r.region = classify_region(alpha, beta);
                    reports.push_back(std::move(r));
                }
            }
    return reports;
}

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

std::string emit_csv(const std::vector<CellReport>& reports) {
    std::string out = "alpha,beta,n,m,k,trials,measure,count,estimate,stderr,verdict\n";
    for (const CellReport& r : reports) {
        const std::string prefix = fmt_g(r.alpha) + "," + fmt_g(r.beta) + "," +
                                   std::to_string(r.n) + "," + std::to_string(r.m) + "," +
                                   std::to_string(r.k) + "," + std::to_string(r.trials) + ",";
        const std::string verdict = verdict_name(r.region.verdict);
        if (r.skipped) {
            out += prefix + "skipped,0,0,0," + verdict + "\n";
            continue;
        }
        for (const MeasureStat& s : r.stats)
            out += prefix + s.label + "," + std::to_string(s.count) + "," +
                   fmt_g(s.estimate) + "," + fmt_g(s.se) + "," + verdict + "\n";
    }
    return out;
}

std::string emit_svg_heatmap(const std::vector<CellReport>& reports,
                             const std::string& label) {
    // cells for the first n present
    std::vector<const CellReport*> cells;
    for (const auto& r : reports)
        if (cells.empty() || r.n == cells[0]->n) cells.push_back(&r);
    if (cells.empty()) throw std::invalid_argument("svg: no cells");

    std::vector<double> alphas, betas;
    for (const auto* r : cells) {
        alphas.push_back(r->alpha);
        betas.push_back(r->beta);
    }
    auto uniq = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(alphas);
    uniq(betas);

    const double W = 640, H = 480, ml = 70, mr = 30, mt = 40, mb = 50;
    const double pw = W - ml - mr, ph = H - mt - mb;
    const double cw = pw / alphas.size(), ch = ph / betas.size();

    auto col_of = [&](double a) {
        return std::lower_bound(alphas.begin(), alphas.end(), a) - alphas.begin();
    };
    auto row_of = [&](double b) {
        return std::lower_bound(betas.begin(), betas.end(), b) - betas.begin();
    };
    // continuous value -> pixel maps anchored at first/last cell centers
    auto x_of = [&](double a) {
        if (alphas.size() == 1 || alphas.back() == alphas.front()) return ml + pw / 2;
        const double t = (a - alphas.front()) / (alphas.back() - alphas.front());
        return ml + cw / 2 + t * (pw - cw);
    };
    auto y_of = [&](double b) {
        if (betas.size() == 1 || betas.back() == betas.front()) return mt + ph / 2;
        const double t = (b - betas.front()) / (betas.back() - betas.front());
        return mt + ph - ch / 2 - t * (ph - ch); // beta grows upward
    };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_g(W) +
                      "\" height=\"" + fmt_g(H) + "\" viewBox=\"0 0 " + fmt_g(W) + " " +
                      fmt_g(H) + "\">\n";
    svg += "<rect width=\"" + fmt_g(W) + "\" height=\"" + fmt_g(H) + "\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt_g(ml) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">" +
           label + " (n=" + std::to_string(cells[0]->n) + ")</text>\n";

    for (const auto* r : cells) {
        const double x = ml + col_of(r->alpha) * cw;
        const double y = mt + ph - (row_of(r->beta) + 1) * ch;
        std::string fill = "#cccccc";
        if (!r->skipped) {
            double v = 0;
            for (const auto& s : r->stats)
                if (s.label == label) v = std::clamp(s.estimate, 0.0, 1.0);
            const int rr = static_cast<int>(33 + v * (178 - 33));
            const int gg = static_cast<int>(102 - v * (102 - 24));
            const int bb = static_cast<int>(172 - v * (172 - 43));
            char buf[16];
            std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rr, gg, bb);
            fill = buf;
        }
        svg += "<rect x=\"" + fmt_g(x) + "\" y=\"" + fmt_g(y) + "\" width=\"" + fmt_g(cw) +
               "\" height=\"" + fmt_g(ch) + "\" fill=\"" + fill + "\"/>\n";
    }

    // region boundaries
    auto polyline = [&](auto bound, const char* dash) {
        std::string pts;
        const int steps = 64;
        const double a0 = alphas.front(), a1 = alphas.back();
        for (int s = 0; s <= steps; ++s) {
            const double a = alphas.size() == 1 ? a0 : a0 + (a1 - a0) * s / steps;
            const double b = std::clamp(bound(a), betas.front() - 0.0, betas.back());
            pts += fmt_g(x_of(a)) + "," + fmt_g(std::clamp(y_of(b), mt, mt + ph)) + " ";
            if (alphas.size() == 1) break;
        }
        return "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\"" +
               std::string(dash) + " points=\"" + pts + "\"/>\n";
    };
    svg += polyline([](double a) { return std::max(2 * a + 1, a + 2); }, "");
    svg += polyline([](double a) { return std::max(2 * a + 1, a + 1.5); },
                    " stroke-dasharray=\"6 4\"");

    // axes
    svg += "<line x1=\"" + fmt_g(ml) + "\" y1=\"" + fmt_g(mt + ph) + "\" x2=\"" +
           fmt_g(ml + pw) + "\" y2=\"" + fmt_g(mt + ph) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt_g(ml) + "\" y1=\"" + fmt_g(mt) + "\" x2=\"" + fmt_g(ml) +
           "\" y2=\"" + fmt_g(mt + ph) + "\" stroke=\"black\"/>\n";
    auto text = [&](double x, double y, const std::string& t, const char* anchor) {
        return "<text x=\"" + fmt_g(x) + "\" y=\"" + fmt_g(y) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"" + anchor +
               "\">" + t + "</text>\n";
    };
    svg += text(ml, mt + ph + 16, fmt_g(alphas.front()), "middle");
    svg += text(ml + pw, mt + ph + 16, fmt_g(alphas.back()), "middle");
    svg += text(ml + pw / 2, mt + ph + 34, "alpha", "middle");
    svg += text(ml - 8, mt + ph, fmt_g(betas.front()), "end");
    svg += text(ml - 8, mt + 10, fmt_g(betas.back()), "end");
    svg += text(ml - 40, mt + ph / 2, "beta", "middle");
    svg += "</svg>\n";
    return svg;
}

} // namespace krec
