#ifndef LAMVM_TRACE_JSON_HPP
#define LAMVM_TRACE_JSON_HPP

#include <string>

#include <json.hpp>

#include "lamvm/decode.hpp"
#include "lamvm/kn.hpp"
#include "lamvm/knv.hpp"
#include "lamvm/parse.hpp"

namespace lamvm {

// Trace serialization shared by the CLI and the replay tests. One
// record per step with fields {index, rule, mode, level, stack_depth,
// decoded_term (optional)}.

inline const char* mode_name(Config::Mode m) {
    switch (m) {
        case Config::Mode::Eval: return "eval";
        case Config::Mode::ContW: return "cont-wnf";
        case Config::Mode::ContN: return "cont-nf";
    }
    return "?";
}

inline const char* kn_mode_name(KnConfig::Mode m) {
    return m == KnConfig::Mode::Eval ? "eval" : "cont-nf";
}

inline nlohmann::json trace_to_json(const TraceResult& trace, bool decode) {
    nlohmann::json steps = nlohmann::json::array();
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const TraceEntry& e = trace.steps[i];
        nlohmann::json rec{{"index", i},
                           {"rule", e.rule},
                           {"mode", mode_name(e.config.mode)},
                           {"level", e.config.level},
                           {"stack_depth", stack_depth(e.config.stack)}};
        if (decode) rec["decoded_term"] = print(plug(decode_config(e.config)));
        steps.push_back(std::move(rec));
    }
    nlohmann::json out{{"machine", "knv"}, {"steps", std::move(steps)}};
    if (trace.normal) out["normal_form"] = print(*trace.normal);
    return out;
}

inline nlohmann::json kn_trace_to_json(const std::vector<KnTraceEntry>& steps_in,
                                       const std::optional<TermPtr>& normal) {
    nlohmann::json steps = nlohmann::json::array();
    for (std::size_t i = 0; i < steps_in.size(); ++i) {
        const KnTraceEntry& e = steps_in[i];
        steps.push_back(nlohmann::json{{"index", i},
                                       {"rule", e.rule},
                                       {"mode", kn_mode_name(e.config.mode)},
                                       {"level", e.config.level},
                                       {"stack_depth", kn_stack_depth(e.config.stack)}});
    }
    nlohmann::json out{{"machine", "kn"}, {"steps", std::move(steps)}};
    if (normal) out["normal_form"] = print(*normal);
    return out;
}

}  // namespace lamvm

#endif
