#ifndef LAMVM_SEMANTICS_HPP
#define LAMVM_SEMANTICS_HPP

#include <optional>
#include <vector>

#include "lamvm/term.hpp"

namespace lamvm {

// Machine-free reduction semantics: the twice right-to-left strong CbV
// strategy (rrCbV) and the normal-order strategy, both as explicit
// decomposition into context + redex.

struct CtxFrame {
    enum class Kind {
        AppFunHole,  // hole in function position, argument recorded
        AppArgHole,  // hole in argument position, function recorded
        UnderLam,
    };
    Kind kind;
    TermPtr term;  // the recorded sibling; null for UnderLam

    static CtxFrame fun_hole(TermPtr arg) { return {Kind::AppFunHole, std::move(arg)}; }
    static CtxFrame arg_hole(TermPtr fun) { return {Kind::AppArgHole, std::move(fun)}; }
    static CtxFrame under_lam() { return {Kind::UnderLam, nullptr}; }
};

bool ctx_frame_eq(const CtxFrame& a, const CtxFrame& b);

// Which outside-in nonterminal the decomposition was derived under.
enum class CtxClass { F, H, R, L };

// Context frames are stored inside-out: frames[0] is the innermost frame.
struct Decomposition {
    std::vector<CtxFrame> context;
    TermPtr redex;
    CtxClass derived_under = CtxClass::R;
};

// Folds the frames innermost-out around t.
TermPtr plug_ctx(const std::vector<CtxFrame>& context, TermPtr t);

// The unique R-decomposition into an R-context and a beta_wnf redex;
// nullopt iff t is a normal form.
std::optional<Decomposition> decompose_rrcbv(const TermPtr& t);

// The F-substrategy (right-to-left weak CbV, the fireball fragment);
// nullopt iff t is a weak normal form.
std::optional<Decomposition> decompose_fireball(const TermPtr& t);

std::optional<TermPtr> step_rrcbv(const TermPtr& t);

struct NormalizeResult {
    std::optional<TermPtr> normal;  // nullopt: fuel exhausted
    long steps = 0;                 // contractions performed
    TermPtr last;                   // final (or last reached) term
};

NormalizeResult normalize_rrcbv(const TermPtr& t, long fuel);

// Normal order: leftmost-outermost contexts with unrestricted beta.
std::optional<Decomposition> decompose_normal_order(const TermPtr& t);
std::optional<TermPtr> step_normal_order(const TermPtr& t);
NormalizeResult normalize_normal_order(const TermPtr& t, long fuel);

// Brute-force oracle: every subterm position holding a beta_wnf redex
// whose path from the root parses under the outside-in R grammar.
std::vector<Decomposition> enumerate_R_decompositions(const TermPtr& t);

// Same, restricted to F-contexts.
std::vector<Decomposition> enumerate_F_decompositions(const TermPtr& t);

}  // namespace lamvm

#endif
