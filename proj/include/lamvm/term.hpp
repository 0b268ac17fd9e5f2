#ifndef LAMVM_TERM_HPP
#define LAMVM_TERM_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace lamvm {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Pure lambda terms with de Bruijn indices. Nodes are immutable and
// shared; `open` caches the number of lambdas needed to close the term
// so closedness checks are O(1).
struct Term {
    enum class Kind { Var, App, Lam };

    Kind kind;
    int index = 0;        // Var
    TermPtr fun, arg;     // App
    TermPtr body;         // Lam
    int open = 0;
    int size = 1;         // constructor count
};

TermPtr var(int index);
TermPtr app(TermPtr fun, TermPtr arg);
TermPtr lam(TermPtr body);

bool term_eq(const TermPtr& a, const TermPtr& b);

inline int open_count(const TermPtr& t) { return t->open; }
inline bool is_closed(const TermPtr& t) { return t->open == 0; }
inline int term_size(const TermPtr& t) { return t->size; }

// Membership in the four syntactic form grammars. The grammars overlap:
// a variable is in all four.
struct FormSet {
    bool normal = false;
    bool neutral = false;
    bool wnf = false;
    bool inert = false;

    bool operator==(const FormSet&) const = default;
};

FormSet classify(const TermPtr& t);

inline bool is_normal_form(const TermPtr& t) { return classify(t).normal; }
inline bool is_neutral(const TermPtr& t) { return classify(t).neutral; }
inline bool is_wnf(const TermPtr& t) { return classify(t).wnf; }
inline bool is_inert(const TermPtr& t) { return classify(t).inert; }

// de Bruijn shift: indices >= cutoff are incremented by amount.
TermPtr shift(int amount, int cutoff, const TermPtr& t);

// Substitution [i := s]: occurrences of i become shift(i, 0, s),
// indices above i are decremented.
TermPtr subst(int i, const TermPtr& s, const TermPtr& t);

// (λT1) T2 -> T1[0 := T2]; nullopt if t is not a beta redex.
std::optional<TermPtr> beta_contract(const TermPtr& t);

// As beta_contract, but fires only when the argument is a weak normal form.
std::optional<TermPtr> beta_wnf_contract(const TermPtr& t);

// Church numeral λλ(1^n 0).
TermPtr church(unsigned n);

}  // namespace lamvm

#endif
