#ifndef LAMVM_KN_HPP
#define LAMVM_KN_HPP

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lamvm/knv.hpp"
#include "lamvm/term.hpp"

namespace lamvm {

// Crégut's KN machine for normal-order strong normalization, the
// call-by-name counterpart of KNV.

// Machine terms: ordinary terms extended with abstract variables
// (de Bruijn levels). Kept distinct from Term so decoded results are
// always pure terms.
struct TermN {
    TermPtr term;       // null when this is an abstract variable
    int level = 0;

    static TermN of(TermPtr t) { return {std::move(t), 0}; }
    static TermN abs_var(int level) { return {nullptr, level}; }
    bool is_abs_var() const { return term == nullptr; }
};

struct KnEnvNode;
using KnEnv = std::shared_ptr<const KnEnvNode>;

// Closure (T_N, E).
struct KnClosure {
    TermN term;
    KnEnv env;
};

struct KnEnvNode {
    KnClosure head;
    KnEnv tail;
};

inline KnEnv kn_env_cons(KnClosure c, KnEnv tail) {
    return std::make_shared<KnEnvNode>(KnEnvNode{std::move(c), std::move(tail)});
}

struct KnFrame {
    enum class Kind { ArgClosure, LamBox, StrongFun };
    Kind kind;
    TermPtr term;  // ArgClosure (delayed argument), StrongFun (a neutral)
    KnEnv env;     // ArgClosure

    static KnFrame arg_closure(TermPtr t, KnEnv e) {
        return {Kind::ArgClosure, std::move(t), std::move(e)};
    }
    static KnFrame lam_box() { return {Kind::LamBox, nullptr, nullptr}; }
    static KnFrame strong_fun(TermPtr neu) { return {Kind::StrongFun, std::move(neu), nullptr}; }
};

struct KnStackNode;
using KnStack = std::shared_ptr<const KnStackNode>;

struct KnStackNode {
    KnFrame frame;
    KnStack tail;
    int depth;
    int lam_count;
};

KnStack kn_stack_push(KnFrame f, KnStack tail);
inline int kn_stack_depth(const KnStack& s) { return s ? s->depth : 0; }
inline int kn_lam_count(const KnStack& s) { return s ? s->lam_count : 0; }

struct KnConfig {
    enum class Mode { Eval, ContN };
    Mode mode;
    TermN term;  // Eval: machine term; ContN: term holds a normal form
    KnEnv env;   // Eval
    int level;
    KnStack stack;

    static KnConfig make_eval(TermN t, KnEnv e, int m, KnStack s) {
        return {Mode::Eval, std::move(t), std::move(e), m, std::move(s)};
    }
    static KnConfig make_cont_n(TermPtr nf, int m, KnStack s) {
        return {Mode::ContN, TermN::of(std::move(nf)), nullptr, m, std::move(s)};
    }
};

KnConfig kn_inject(const TermPtr& t);

struct KnNext {
    KnConfig config;
    int rule;  // 1-10 in figure order; rule 7 (unload) is surfaced as Final
};
struct KnFinal {
    TermPtr nf;
};
using KnStepResult = std::variant<KnNext, KnFinal, Stuck>;

KnStepResult kn_step(const KnConfig& k);

bool kn_is_wellformed(const KnConfig& k);

struct KnRunResult {
    std::optional<TermPtr> normal;
    std::array<long, 11> counts{};
    long transitions = 0;
};

KnRunResult kn_run(const TermPtr& t, long fuel);

struct KnTraceEntry {
    KnConfig config;
    int rule;
};

std::vector<KnTraceEntry> kn_trace(const TermPtr& t, long fuel);

}  // namespace lamvm

#endif
