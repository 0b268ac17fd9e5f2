#ifndef LAMVM_CONVERT_HPP
#define LAMVM_CONVERT_HPP

#include <vector>

#include "lamvm/knv.hpp"

namespace lamvm {

// Convertibility checking by lockstep streaming of partial normal-form
// prefixes from two KNV runs. Divergent prefixes reject early, possibly
// on terms without normal forms.

struct Verdict {
    enum class Kind { Convertible, NotConvertible, Unknown };
    Kind kind;
    // For NotConvertible: the streams agree strictly below
    // diverging_index and differ at it (a missing event on one side
    // counts as a difference).
    std::vector<PrefixEvent> left_prefix;
    std::vector<PrefixEvent> right_prefix;
    std::size_t diverging_index = 0;
    long budget_spent = 0;
};

Verdict convertible(const TermPtr& t1, const TermPtr& t2, long fuel);

}  // namespace lamvm

#endif
