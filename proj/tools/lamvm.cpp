// lamvm: normalization workbench CLI.
//
// Subcommands: normalize, trace, stats, audit, convert.
// Exit codes: 0 ok / convertible, 1 not convertible, 2 unknown,
// 3 fuel exhausted, 64 usage, 65 parse, 66 open term, 70 internal.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lamvm/convert.hpp"
#include "lamvm/decode.hpp"
#include "lamvm/kn.hpp"
#include "lamvm/knv.hpp"
#include "lamvm/nbe.hpp"
#include "lamvm/parse.hpp"
#include "lamvm/semantics.hpp"
#include "lamvm/term.hpp"
#include "lamvm/trace_json.hpp"

namespace {

constexpr int kExitFuel = 3;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;
constexpr int kExitOpenTerm = 66;
constexpr int kExitInternal = 70;

struct CliError {
    int code;
    std::string message;
};

std::string read_source(const std::string& arg) {
    if (arg != "-") return arg;
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
}

struct ParsedTerm {
    lamvm::TermPtr term;
    lamvm::Notation notation;
};

ParsedTerm parse_input(const std::string& arg, const std::string& notation_flag) {
    std::string text = read_source(arg);
    lamvm::Notation notation;
    try {
        if (notation_flag == "debruijn") {
            notation = lamvm::Notation::DeBruijn;
        } else if (notation_flag == "named") {
            notation = lamvm::Notation::Named;
        } else {
            notation = lamvm::detect_notation(text);
        }
        return {lamvm::parse(text, notation), notation};
    } catch (const lamvm::ParseError& e) {
        throw CliError{kExitParse, std::string("parse error: ") + e.what()};
    }
}

lamvm::TermPtr require_closed(const ParsedTerm& pt) {
    if (pt.term->open != 0) {
        throw CliError{kExitOpenTerm, "open term: " + std::to_string(pt.term->open) +
                                          " unbound variable level(s)"};
    }
    return pt.term;
}

int cmd_normalize(const std::string& machine, const ParsedTerm& input, long fuel, bool json) {
    lamvm::TermPtr t = require_closed(input);
    std::optional<lamvm::TermPtr> nf;
    long spent = 0;
    if (machine == "knv") {
        auto r = lamvm::knv_run(t, fuel);
        nf = r.normal;
        spent = r.transitions;
    } else if (machine == "kn") {
        auto r = lamvm::kn_run(t, fuel);
        nf = r.normal;
        spent = r.transitions;
    } else if (machine == "nbe-cbv") {
        auto r = lamvm::nbe_cbv(t, fuel);
        nf = r.normal;
        spent = r.budget_spent;
    } else if (machine == "nbe-cbn") {
        auto r = lamvm::nbe_cbn(t, fuel);
        nf = r.normal;
        spent = r.budget_spent;
    } else if (machine == "oracle-rrcbv") {
        auto r = lamvm::normalize_rrcbv(t, fuel);
        nf = r.normal;
        spent = r.steps;
    } else {  // oracle-no
        auto r = lamvm::normalize_normal_order(t, fuel);
        nf = r.normal;
        spent = r.steps;
    }
    if (json) {
        nlohmann::json out{{"machine", machine}, {"fuel", fuel}, {"spent", spent}};
        if (nf) {
            out["status"] = "normal";
            out["normal_form"] = lamvm::print(*nf, input.notation);
        } else {
            out["status"] = "fuel-exhausted";
        }
        std::cout << out.dump() << "\n";
    } else if (nf) {
        std::cout << lamvm::print(*nf, input.notation) << "\n";
    } else {
        std::cout << "fuel exhausted\n";
    }
    return nf ? 0 : kExitFuel;
}

int cmd_trace(const std::string& machine, const ParsedTerm& input, long fuel, bool json,
              bool decode) {
    lamvm::TermPtr t = require_closed(input);
    if (machine == "kn") {
        if (decode) throw CliError{kExitUsage, "--decode is only available for the knv machine"};
        auto steps = lamvm::kn_trace(t, fuel);
        auto r = lamvm::kn_run(t, fuel);
        if (json) {
            std::cout << lamvm::kn_trace_to_json(steps, r.normal).dump() << "\n";
            return r.normal ? 0 : kExitFuel;
        }
        for (std::size_t i = 0; i < steps.size(); ++i) {
            const auto& e = steps[i];
            std::cout << i << "\trule " << e.rule << "\t" << lamvm::kn_mode_name(e.config.mode)
                      << "\tm=" << e.config.level
                      << "\tstack=" << lamvm::kn_stack_depth(e.config.stack) << "\n";
        }
        if (r.normal) {
            std::cout << "normal form: " << lamvm::print(*r.normal, input.notation) << "\n";
            return 0;
        }
        std::cout << "fuel exhausted\n";
        return kExitFuel;
    }
    if (machine != "knv") {
        throw CliError{kExitUsage, "trace supports machines knv and kn only"};
    }
    auto trace = lamvm::knv_trace(t, fuel);
    if (json) {
        std::cout << lamvm::trace_to_json(trace, decode).dump() << "\n";
        return trace.normal ? 0 : kExitFuel;
    }
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& e = trace.steps[i];
        std::cout << i << "\trule " << e.rule << "\t" << lamvm::mode_name(e.config.mode)
                  << "\tm=" << e.config.level << "\tstack=" << lamvm::stack_depth(e.config.stack);
        if (decode) {
            std::cout << "\t" << lamvm::print(lamvm::plug(lamvm::decode_config(e.config)));
        }
        std::cout << "\n";
    }
    if (trace.normal) {
        std::cout << "normal form: " << lamvm::print(*trace.normal, input.notation) << "\n";
        return 0;
    }
    std::cout << "fuel exhausted\n";
    return kExitFuel;
}

int cmd_stats(const std::string& machine, const ParsedTerm& input, long fuel, bool json) {
    lamvm::TermPtr t = require_closed(input);
    nlohmann::json counts = nlohmann::json::object();
    std::optional<lamvm::TermPtr> nf;
    long transitions = 0;
    if (machine == "kn") {
        auto r = lamvm::kn_run(t, fuel);
        nf = r.normal;
        transitions = r.transitions;
        for (std::size_t rule = 1; rule < r.counts.size(); ++rule) {
            counts[std::to_string(rule)] = r.counts[rule];
        }
    } else if (machine == "knv") {
        auto r = lamvm::knv_run(t, fuel);
        nf = r.normal;
        transitions = r.transitions;
        for (std::size_t rule = 1; rule < r.counts.size(); ++rule) {
            if (rule == 11) continue;  // unused id in this numbering
            counts[std::to_string(rule)] = r.counts[rule];
        }
    } else {
        throw CliError{kExitUsage, "stats supports machines knv and kn only"};
    }
    if (json) {
        nlohmann::json out{{"machine", machine},
                           {"transitions", transitions},
                           {"counts", counts},
                           {"status", nf ? "normal" : "fuel-exhausted"}};
        if (nf) out["normal_form"] = lamvm::print(*nf, input.notation);
        std::cout << out.dump() << "\n";
    } else {
        for (int rule = 1; rule <= lamvm::kMaxRuleId; ++rule) {
            auto it = counts.find(std::to_string(rule));
            if (it != counts.end()) std::cout << "rule " << rule << ": " << it->get<long>() << "\n";
        }
        std::cout << "transitions: " << transitions << "\n";
        if (nf) {
            std::cout << "normal form: " << lamvm::print(*nf, input.notation) << "\n";
        } else {
            std::cout << "fuel exhausted\n";
        }
    }
    return nf ? 0 : kExitFuel;
}

// Five closedness rows plus the level identity, checked on one configuration.
bool check_invariants(const lamvm::Config& k, std::string& why) {
    using lamvm::Config;
    if (k.level != lamvm::lam_count(k.stack)) {
        why = "level differs from stack lambda count";
        return false;
    }
    try {
        switch (k.mode) {
            case Config::Mode::Eval:
                if (k.term->open > lamvm::env_length(k.env)) {
                    why = "environment does not close the term";
                    return false;
                }
                if (lamvm::open_e(k.env) > k.level) {
                    why = "environment openness exceeds level";
                    return false;
                }
                break;
            case Config::Mode::ContW:
                if (lamvm::open_w(k.wnf) > k.level) {
                    why = "weak normal form openness exceeds level";
                    return false;
                }
                break;
            case Config::Mode::ContN:
                if (k.term->open > k.level) {
                    why = "normal form openness exceeds level";
                    return false;
                }
                break;
        }
        for (const lamvm::StackNode* node = k.stack.get(); node; node = node->tail.get()) {
            int boxes = lamvm::lam_count(node->tail);
            if (node->frame.kind == lamvm::Frame::Kind::ArgWnf &&
                lamvm::open_w(node->frame.wnf) > boxes) {
                why = "stacked argument openness exceeds inner lambda count";
                return false;
            }
            if (node->frame.kind == lamvm::Frame::Kind::StrongFun &&
                lamvm::open_i(node->frame.inert) > boxes) {
                why = "stacked inert openness exceeds inner lambda count";
                return false;
            }
        }
    } catch (const lamvm::UndecodableError& e) {
        why = e.what();
        return false;
    }
    return true;
}

int cmd_audit(const std::string& machine, const ParsedTerm& input, long fuel) {
    if (machine != "knv") throw CliError{kExitUsage, "audit supports machine knv only"};
    lamvm::TermPtr t = require_closed(input);
    long index = 0;
    bool ok = true;
    auto result = lamvm::knv_walk(t, fuel, [&](const lamvm::Config& k, const lamvm::StepResult&) {
        std::string why;
        if (!lamvm::is_wellformed(k)) {
            std::cout << "step " << index << ": ill-formed configuration\n";
            ok = false;
            return false;
        }
        if (!check_invariants(k, why)) {
            std::cout << "step " << index << ": invariant violation: " << why << "\n";
            ok = false;
            return false;
        }
        ++index;
        return true;
    });
    if (!ok) return kExitInternal;
    std::cout << "audited " << index << " configurations: all well-formed\n";
    if (result.normal) {
        std::cout << "normal form: " << lamvm::print(*result.normal, input.notation) << "\n";
        return 0;
    }
    std::cout << "fuel exhausted\n";
    return kExitFuel;
}

std::string render_event(const lamvm::PrefixEvent& e) {
    switch (e.kind) {
        case lamvm::PrefixEvent::Kind::LamRevealed:
            return "\xce\xbb \xe2\x96\xa1";
        case lamvm::PrefixEvent::Kind::ArgNfRevealed:
            return "\xe2\x96\xa1 " + lamvm::print(e.nf);
        case lamvm::PrefixEvent::Kind::Done:
            return "done: " + lamvm::print(e.nf);
    }
    return "?";
}

void print_prefix(const char* label, const std::vector<lamvm::PrefixEvent>& events) {
    std::cout << label << ":";
    if (events.empty()) std::cout << " (no events)";
    for (const auto& e : events) std::cout << "  [" << render_event(e) << "]";
    std::cout << "\n";
}

int cmd_convert(const ParsedTerm& left, const ParsedTerm& right, long fuel, bool json,
                bool show_prefix) {
    lamvm::TermPtr t1 = require_closed(left);
    lamvm::TermPtr t2 = require_closed(right);
    lamvm::Verdict v = lamvm::convertible(t1, t2, fuel);
    const char* verdict = v.kind == lamvm::Verdict::Kind::Convertible ? "convertible"
                          : v.kind == lamvm::Verdict::Kind::NotConvertible ? "not convertible"
                                                                           : "unknown";
    if (json) {
        nlohmann::json out{{"verdict", verdict}, {"budget_spent", v.budget_spent}};
        if (v.kind == lamvm::Verdict::Kind::NotConvertible) {
            out["diverging_index"] = v.diverging_index;
        }
        std::cout << out.dump() << "\n";
    } else {
        std::cout << verdict << "\n";
        if (show_prefix) {
            print_prefix("left ", v.left_prefix);
            print_prefix("right", v.right_prefix);
        }
    }
    switch (v.kind) {
        case lamvm::Verdict::Kind::Convertible: return 0;
        case lamvm::Verdict::Kind::NotConvertible: return 1;
        case lamvm::Verdict::Kind::Unknown: return 2;
    }
    return kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lamvm: a normalization workbench for the pure lambda calculus"};
    app.require_subcommand(1);

    std::string machine = "knv";
    long fuel = 1000000;
    std::string notation = "auto";
    bool json = false;
    bool decode = false;
    bool show_prefix = false;
    std::string term_arg, term_arg2;

    auto add_common = [&](CLI::App* sub, bool with_machine) {
        sub->add_option("--fuel", fuel, "transition budget")->check(CLI::PositiveNumber);
        sub->add_option("--notation", notation, "term notation")
            ->check(CLI::IsMember({"auto", "debruijn", "named"}));
        if (with_machine) {
            sub->add_option("--machine", machine, "evaluation engine")
                ->check(CLI::IsMember(
                    {"knv", "kn", "nbe-cbv", "nbe-cbn", "oracle-rrcbv", "oracle-no"}));
        }
    };

    CLI::App* normalize = app.add_subcommand("normalize", "reduce a term to normal form");
    add_common(normalize, true);
    normalize->add_flag("--json", json, "machine-readable output");
    normalize->add_option("term", term_arg, "term, or - for stdin")->required();

    CLI::App* trace = app.add_subcommand("trace", "print the machine run step by step");
    add_common(trace, true);
    trace->add_flag("--json", json, "machine-readable output");
    trace->add_flag("--decode", decode, "decode each configuration back to a term");
    trace->add_option("term", term_arg, "term, or - for stdin")->required();

    CLI::App* stats = app.add_subcommand("stats", "per-rule transition counts");
    add_common(stats, true);
    stats->add_flag("--json", json, "machine-readable output");
    stats->add_option("term", term_arg, "term, or - for stdin")->required();

    CLI::App* audit = app.add_subcommand("audit", "check per-step well-formedness invariants");
    add_common(audit, true);
    audit->add_option("term", term_arg, "term, or - for stdin")->required();

    CLI::App* convert = app.add_subcommand("convert", "compare normal forms incrementally");
    add_common(convert, false);
    convert->add_flag("--json", json, "machine-readable output");
    convert->add_flag("--show-prefix", show_prefix, "print the observed prefix event streams");
    convert->add_option("term1", term_arg, "left term, or - for stdin")->required();
    convert->add_option("term2", term_arg2, "right term")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (normalize->parsed()) {
            return cmd_normalize(machine, parse_input(term_arg, notation), fuel, json);
        }
        if (trace->parsed()) {
            return cmd_trace(machine, parse_input(term_arg, notation), fuel, json, decode);
        }
        if (stats->parsed()) {
            return cmd_stats(machine, parse_input(term_arg, notation), fuel, json);
        }
        if (audit->parsed()) {
            return cmd_audit(machine, parse_input(term_arg, notation), fuel);
        }
        if (convert->parsed()) {
            return cmd_convert(parse_input(term_arg, notation), parse_input(term_arg2, notation),
                               fuel, json, show_prefix);
        }
    } catch (const CliError& e) {
        std::cerr << "lamvm: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "lamvm: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
