#ifndef LAMVM_KNV_HPP
#define LAMVM_KNV_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lamvm/term.hpp"

namespace lamvm {

// The KNV machine: strong right-to-left call-by-value normalization.
// All machine structures are persistent; a step never mutates its input.

struct Wnf;
struct Inert;
struct EnvNode;
using WnfPtr = std::shared_ptr<const Wnf>;
using InertPtr = std::shared_ptr<const Inert>;
using Env = std::shared_ptr<const EnvNode>;  // nullptr = empty

struct EnvNode {
    WnfPtr head;
    Env tail;
    int length;
    int open;  // cached open_e
};

// Inert terms: abstract variables (de Bruijn levels) and applications
// of inerts to wnfs.
struct Inert {
    enum class Kind { AbsVar, IApp };
    Kind kind;
    int level = 0;   // AbsVar
    InertPtr fun;    // IApp
    WnfPtr arg;      // IApp
    int open;        // cached open_i
};

// Weak normal forms: closures over lambda bodies, or inerts.
struct Wnf {
    enum class Kind { Clo, InertV };
    Kind kind;
    TermPtr body;  // Clo
    Env env;       // Clo
    InertPtr inert;
    // Cached open_w; -1 marks the undecodable case where the closure's
    // environment does not close its lambda.
    int open;
};

WnfPtr make_clo(TermPtr body, Env env);
WnfPtr make_inert_wnf(InertPtr i);
InertPtr make_abs_var(int level);
InertPtr make_iapp(InertPtr fun, WnfPtr arg);
Env env_cons(WnfPtr w, Env tail);
WnfPtr env_lookup(const Env& e, int index);  // nullptr if out of range

inline int env_length(const Env& e) { return e ? e->length : 0; }
inline int open_e(const Env& e) { return e ? e->open : 0; }

struct UndecodableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Throw UndecodableError when the closure side condition is violated.
int open_w(const WnfPtr& w);
int open_i(const InertPtr& i);

bool wnf_eq(const WnfPtr& a, const WnfPtr& b);
bool inert_eq(const InertPtr& a, const InertPtr& b);
bool env_eq(const Env& a, const Env& b);

struct Frame {
    enum class Kind { PendingFun, ArgWnf, StrongArg, LamBox, StrongFun };
    Kind kind;
    TermPtr term;  // PendingFun (the delayed function), StrongArg (a normal form)
    Env env;       // PendingFun
    WnfPtr wnf;    // ArgWnf
    InertPtr inert;  // StrongFun

    static Frame pending_fun(TermPtr t, Env e) {
        return {Kind::PendingFun, std::move(t), std::move(e), nullptr, nullptr};
    }
    static Frame arg_wnf(WnfPtr w) { return {Kind::ArgWnf, nullptr, nullptr, std::move(w), nullptr}; }
    static Frame strong_arg(TermPtr nf) {
        return {Kind::StrongArg, std::move(nf), nullptr, nullptr, nullptr};
    }
    static Frame lam_box() { return {Kind::LamBox, nullptr, nullptr, nullptr, nullptr}; }
    static Frame strong_fun(InertPtr i) {
        return {Kind::StrongFun, nullptr, nullptr, nullptr, std::move(i)};
    }
};

bool frame_eq(const Frame& a, const Frame& b);

struct StackNode;
using Stack = std::shared_ptr<const StackNode>;  // nullptr = empty

struct StackNode {
    Frame frame;
    Stack tail;
    int depth;
    int lam_count;
};

Stack stack_push(Frame f, Stack tail);
inline int stack_depth(const Stack& s) { return s ? s->depth : 0; }
inline int lam_count(const Stack& s) { return s ? s->lam_count : 0; }
bool stack_eq(const Stack& a, const Stack& b);

struct Config {
    enum class Mode { Eval, ContW, ContN };
    Mode mode;
    TermPtr term;  // Eval (machine term), ContN (a normal form)
    Env env;       // Eval
    WnfPtr wnf;    // ContW
    Stack stack;
    int level;

    static Config make_eval(TermPtr t, Env e, Stack s, int m) {
        return {Mode::Eval, std::move(t), std::move(e), nullptr, std::move(s), m};
    }
    static Config make_cont_w(WnfPtr w, Stack s, int m) {
        return {Mode::ContW, nullptr, nullptr, std::move(w), std::move(s), m};
    }
    static Config make_cont_n(TermPtr nf, int m, Stack s) {
        return {Mode::ContN, std::move(nf), nullptr, nullptr, std::move(s), m};
    }
};

bool config_eq(const Config& a, const Config& b);

// Transition identifiers follow the paper's numbering: 1-10 in figure
// order, then 13 (strong-function pop, which pushes the completed
// argument), 12 (lambda pop), 14 (strong-argument pop). 0 is the load
// step and unload is surfaced as Final rather than a numbered rule.
constexpr int kRuleLoad = 0;
constexpr int kRuleContract = 6;
constexpr int kRuleLamPush = 8;
constexpr int kRuleStrongFunPop = 13;
constexpr int kMaxRuleId = 14;

struct OpenTermError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Config inject(const TermPtr& t);

struct Next {
    Config config;
    int rule;
};
struct Final {
    TermPtr nf;
};
struct Stuck {
    std::string reason;
};
using StepResult = std::variant<Next, Final, Stuck>;

StepResult knv_step(const Config& k);

// Stack shape grammar of well-formed configurations, plus the identity
// between the configuration level and the stack's lambda count.
bool is_wellformed(const Config& k);

using RuleCounts = std::array<long, kMaxRuleId + 1>;

struct RunResult {
    std::optional<TermPtr> normal;  // nullopt: fuel exhausted
    RuleCounts counts{};
    long transitions = 0;
    std::optional<Config> last;  // present when fuel ran out
};

RunResult knv_run(const TermPtr& t, long fuel);

struct TraceEntry {
    Config config;  // configuration the rule fired from
    int rule;
};

struct TraceResult {
    std::vector<TraceEntry> steps;
    std::optional<TermPtr> normal;
    Config last;  // final configuration reached
};

TraceResult knv_trace(const TermPtr& t, long fuel);

// Streaming interface: walks the run, invoking visit on each
// configuration/rule pair before the transition applies. Returning
// false aborts the walk. Gives tests per-step access without storing
// whole traces.
struct WalkResult {
    std::optional<TermPtr> normal;
    long transitions = 0;
    bool aborted = false;
};
WalkResult knv_walk(const TermPtr& t, long fuel,
                    const std::function<bool(const Config&, const StepResult&)>& visit);

// Partial-normal-form events for convertibility checking.
struct PrefixEvent {
    enum class Kind { LamRevealed, ArgNfRevealed, Done };
    Kind kind;
    TermPtr nf;  // ArgNfRevealed, Done

    static PrefixEvent lam_revealed() { return {Kind::LamRevealed, nullptr}; }
    static PrefixEvent arg_nf_revealed(TermPtr nf) { return {Kind::ArgNfRevealed, std::move(nf)}; }
    static PrefixEvent done(TermPtr nf) { return {Kind::Done, std::move(nf)}; }
};

bool prefix_event_eq(const PrefixEvent& a, const PrefixEvent& b);

std::vector<PrefixEvent> stream_prefix(const TermPtr& t, long fuel);

// Resumable event stream over a single fueled run.
class PrefixStream {
  public:
    PrefixStream(const TermPtr& t, long fuel);

    // Next event, or nullopt when the run's fuel is exhausted. After a
    // Done event the stream is finished and keeps returning nullopt.
    std::optional<PrefixEvent> next();

    bool finished() const { return finished_; }
    long fuel_spent() const { return spent_; }

  private:
    Config config_;
    long fuel_;
    long spent_ = 0;
    bool finished_ = false;
};

}  // namespace lamvm

#endif
