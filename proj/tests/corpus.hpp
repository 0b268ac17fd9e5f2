#ifndef LAMVM_TESTS_CORPUS_HPP
#define LAMVM_TESTS_CORPUS_HPP

#include <random>
#include <vector>

#include "lamvm/parse.hpp"
#include "lamvm/term.hpp"

namespace lamvm::tests {

// All closed terms with size (constructor count) <= max_size.
std::vector<TermPtr> enumerate_closed(int max_size);

// Random closed term with roughly target_size constructors.
TermPtr random_closed(std::mt19937_64& rng, int target_size);

// Mixed corpus for differential suites: exhaustive small terms, random
// terms with sizes skewed small, and Church-arithmetic terms.
std::vector<TermPtr> differential_corpus(std::size_t random_count, std::uint64_t seed);

inline TermPtr parse_db(const char* s) { return parse(s, Notation::DeBruijn); }

// Standard combinators.
TermPtr comb_i();      // λ0
TermPtr comb_k();      // λλ1
TermPtr comb_omega();  // λ(0 0)
TermPtr comb_Omega();  // ω ω

// Church arithmetic as terms: add = λλλλ(3 1 (2 1 0)), mul = λλλ(2 (1 0)).
TermPtr church_add();
TermPtr church_mul();

// The size-explosion family e_n = λx. (c_n ω) x.
TermPtr explosion_term(unsigned n);

}  // namespace lamvm::tests

#endif
