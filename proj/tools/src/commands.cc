// Copyright 2026 The cohdistill Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "cohdistill/entanglement.h"
#include "cohdistill/invariants.h"
#include "cohdistill/loss_optimizer.h"
#include "cohdistill/no_waste.h"
#include "cohdistill/protocol.h"
#include "cohdistill/tolerances.h"
#include "nlohmann/json.hpp"
#include "state_file.h"

namespace cohdistill::cli {

using Json = nlohmann::ordered_json;

double report_number(double x) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.12g", x);
    return std::strtod(buffer, nullptr);
}

namespace {

Json numbers(std::span<const double> xs) {
    Json array = Json::array();
    for (double x : xs) {
        array.push_back(report_number(x));
    }
    return array;
}

Json input_block(const LoadedState &loaded) {
    return Json{
        {"dim", loaded.file.dim},
        {"field", field_name(loaded.file.field)},
        {"values", numbers(loaded.file.values)},
        {"norm_deviation", report_number(loaded.norm_deviation)},
        {"renormalized", loaded.norm_deviation > kInternalTolerance},
    };
}

Json state_block(const PureCoherentState &s) {
    return Json{{"amps", numbers(s.amps())}, {"probs", numbers(s.weights())}};
}

Json ensemble_block(const OutcomeEnsemble &ensemble) {
    Json rows = Json::array();
    for (const auto &o : ensemble.entries()) {
        rows.push_back(Json{
            {"q", o.level},
            {"probability", report_number(o.probability)},
            {"output_coherence", o.level - 1},
        });
    }
    return rows;
}

Json channel_block(const PureCoherentState &s) {
    auto report = verify_sio(build_channel(s));
    return Json{
        {"completeness_deviation", report_number(report.completeness_deviation)},
        {"sio_ok", report.sio_ok},
    };
}

std::string ensemble_csv(const OutcomeEnsemble &ensemble) {
    std::ostringstream csv;
    csv << "q,probability,output_coherence\n";
    for (const auto &o : ensemble.entries()) {
        char buffer[64];
        std::snprintf(buffer, sizeof(buffer), "%zu,%.12g,%zu\n", o.level, o.probability, o.level - 1);
        csv << buffer;
    }
    return csv.str();
}

void emit(const std::string &text, const GlobalOptions &options, std::ostream &out) {
    if (options.out.empty()) {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(options.out, std::ios::binary);
    if (!file) {
        throw IoError("cannot open '" + options.out + "' for writing");
    }
    file << text;
    file.close();
    if (!file) {
        throw IoError("cannot write '" + options.out + "'");
    }
}

void emit_report(const Json &report, const std::string &csv, const GlobalOptions &options, std::ostream &out) {
    emit(options.format == Format::kCsv ? csv : report.dump(2) + "\n", options, out);
}

/// Maps the exception taxonomy onto exit codes.
int guarded(std::ostream &err, const std::function<int()> &body) {
    try {
        return body();
    } catch (const StateFileError &e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const IoError &e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const InfeasibleError &e) {
        err << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::invalid_argument &e) {
        err << "invalid state: " << e.what() << "\n";
        return kExitInvalidState;
    } catch (const std::exception &e) {
        // Internal consistency checks; never expected on valid input.
        err << "internal error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}

}  // namespace

int run_distill(const std::string &state_path, const GlobalOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        auto loaded = to_state(load_state_file(state_path));
        const auto &s = loaded.state;
        auto ensemble = outcome_probabilities(s);
        Json report{
            {"command", "distill"},
            {"input", input_block(loaded)},
            {"state", state_block(s)},
            {"ensemble", ensemble_block(ensemble)},
            {"max_success_probability", report_number(max_success_probability(s))},
            {"coherence",
             {{"c_in", report_number(l1_coherence(s))},
              {"c_out_avg", report_number(average_output_coherence(s))},
              {"loss", report_number(coherence_loss(s))}}},
            {"channel", channel_block(s)},
        };
        emit_report(report, ensemble_csv(ensemble), options, out);
        return kExitOk;
    });
}

int run_nowaste(const std::string &state_path, const GlobalOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        auto loaded = to_state(load_state_file(state_path));
        const auto &s = loaded.state;
        auto result = two_step_distill(s);
        const auto &chi = result.plan.chi;
        double c_in = l1_coherence(s);
        double c_out = result.ensemble.average_coherence();
        size_t d = s.dim();
        bool below_k_zero = true;
        for (size_t q = 1; q < result.plan.k; ++q) {
            below_k_zero = below_k_zero && result.ensemble.probability(q) == 0;
        }
        Json report{
            {"command", "nowaste"},
            {"input", input_block(loaded)},
            {"state", state_block(s)},
            {"plan",
             {{"k", result.plan.k},
              {"psi_prime", report_number(result.plan.psi_prime)},
              {"psi_prime_squared", report_number(result.plan.psi_prime * result.plan.psi_prime)},
              {"intermediate", state_block(chi)},
              {"majorizes", majorizes(chi, s)}}},
            {"ensemble", ensemble_block(result.ensemble)},
            {"max_success_probability", report_number(result.ensemble.probability(d))},
            {"coherence",
             {{"c_in", report_number(c_in)},
              {"c_intermediate", report_number(l1_coherence(chi))},
              {"c_out_avg", report_number(c_out)},
              {"loss", report_number(c_in - c_out)},
              {"one_step_c_out_avg", report_number(average_output_coherence(s))}}},
            {"checks",
             {{"p_below_k_zero", below_k_zero},
              {"top_outcome_unchanged",
               std::abs(result.ensemble.probability(d) - outcome_probabilities(s).probability(d)) <=
                   kInternalTolerance}}},
            {"channel", channel_block(chi)},
        };
        emit_report(report, ensemble_csv(result.ensemble), options, out);
        return kExitOk;
    });
}

int run_entangle(const std::string &state_path, const GlobalOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        auto loaded = to_state(load_state_file(state_path));
        SchmidtState source(loaded.state);
        auto search = ent_intermediate(source);
        if (!search.feasible()) {
            throw InfeasibleError(search.reason);
        }
        const auto &plan = *search.plan;
        auto ensemble = ent_distill(source);
        Json report{
            {"command", "entangle"},
            {"input", input_block(loaded)},
            {"schmidt", {{"coeffs", numbers(source.coeffs())}, {"spectrum", numbers(source.spectrum())}}},
            {"plan",
             {{"k", 2},
              {"phi3_prime", report_number(plan.phi3_prime)},
              {"phi3_prime_squared", report_number(plan.phi3_prime * plan.phi3_prime)},
              {"intermediate_coeffs", numbers(plan.intermediate.coeffs())},
              {"intermediate_spectrum", numbers(plan.intermediate.spectrum())},
              {"at_boundary", plan.at_boundary}}},
            {"one_step_ensemble", ensemble_block(ent_one_step(source))},
            {"ensemble", ensemble_block(ensemble)},
            {"max_distilled_entanglement",
             {{"source", report_number(max_distilled_entanglement(source))},
              {"intermediate", report_number(max_distilled_entanglement(plan.intermediate))}}},
        };
        emit_report(report, ensemble_csv(ensemble), options, out);
        return kExitOk;
    });
}

int run_verify(const std::string &state_path, const GlobalOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        auto loaded = to_state(load_state_file(state_path));
        auto checks = check_invariants(loaded.state);
        bool all_passed = true;
        Json rows = Json::array();
        std::ostringstream csv;
        csv << "name,passed,detail\n";
        for (const auto &c : checks) {
            all_passed = all_passed && c.passed;
            rows.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            csv << c.name << "," << (c.passed ? "true" : "false") << ",\"" << c.detail << "\"\n";
        }
        Json report{
            {"command", "verify"},
            {"input", input_block(loaded)},
            {"state", state_block(loaded.state)},
            {"checks", rows},
            {"all_passed", all_passed},
        };
        emit_report(report, csv.str(), options, out);
        if (!all_passed) {
            for (const auto &c : checks) {
                if (!c.passed) {
                    err << "failed: " << c.name << " " << c.detail << "\n";
                }
            }
            return kExitCheckFailed;
        }
        return kExitOk;
    });
}

int run_sample(const std::string &state_path, const SampleOptions &sample, const GlobalOptions &options,
               std::ostream &out, std::ostream &err) {
    if (sample.n == 0) {
        err << "parse error: --n must be positive\n";
        return kExitParse;
    }
    return guarded(err, [&] {
        auto loaded = to_state(load_state_file(state_path));
        auto ensemble = sample.two_step ? two_step_distill(loaded.state).ensemble : outcome_probabilities(loaded.state);
        auto counts = sample_ensemble(ensemble, sample.n, options.seed, sample.workers);
        Json rows = Json::array();
        std::ostringstream csv;
        csv << "q,count,expected_probability,frequency,z\n";
        for (const auto &row : summarize_counts(ensemble, counts)) {
            Json entry{
                {"q", row.level},
                {"count", row.count},
                {"expected_probability", report_number(row.expected_probability)},
                {"frequency", report_number(row.frequency)},
            };
            if (row.z) {
                entry["z"] = report_number(*row.z);
            } else {
                entry["z"] = nullptr;
                entry["exact_match"] = row.exact_match;
            }
            rows.push_back(entry);
            char buffer[128];
            std::snprintf(buffer, sizeof(buffer), "%zu,%llu,%.12g,%.12g,", row.level,
                          static_cast<unsigned long long>(row.count), row.expected_probability, row.frequency);
            csv << buffer;
            if (row.z) {
                std::snprintf(buffer, sizeof(buffer), "%.12g", *row.z);
                csv << buffer;
            }
            csv << "\n";
        }
        Json report{
            {"command", "sample"},
            {"input", input_block(loaded)},
            {"protocol", sample.two_step ? "two-step" : "one-step"},
            {"n", sample.n},
            {"seed", options.seed},
            {"workers", sample.workers},
            {"outcomes", rows},
        };
        emit_report(report, csv.str(), options, out);
        return kExitOk;
    });
}

int run_figure2(const Figure2Options &figure, const GlobalOptions &options, std::ostream &out, std::ostream &err) {
    if (figure.dim < 2 || figure.points < 2 || figure.restarts < 1) {
        err << "parse error: figure2 needs --dim >= 2, --points >= 2 and --restarts >= 1\n";
        return kExitParse;
    }
    return guarded(err, [&] {
        OptimizerOptions optimizer;
        optimizer.restarts = figure.restarts;
        optimizer.seed = options.seed;
        auto rows = figure2_sweep(figure.dim, figure.points, optimizer);
        std::ostringstream csv;
        write_sweep_csv(csv, rows);
        emit(csv.str(), options, out);
        return kExitOk;
    });
}

}  // namespace cohdistill::cli
