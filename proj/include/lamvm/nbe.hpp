#ifndef LAMVM_NBE_HPP
#define LAMVM_NBE_HPP

#include <optional>

#include "lamvm/term.hpp"

namespace lamvm {

// Normalization by evaluation: the call-by-name normalizer underlying
// KN and the call-by-value normalizer from which KNV was derived.
// Both are partial; a shared step counter (incremented on every
// eval/reify call) aborts runaway evaluations. Counter granularity is
// implementation-defined and not comparable to machine fuel.

struct NbeResult {
    std::optional<TermPtr> normal;  // nullopt: budget exhausted
    long budget_spent = 0;
};

NbeResult nbe_cbn(const TermPtr& t, long budget);
NbeResult nbe_cbv(const TermPtr& t, long budget);

}  // namespace lamvm

#endif
