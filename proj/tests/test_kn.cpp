#include <doctest.h>

#include "corpus.hpp"
#include "lamvm/kn.hpp"
#include "lamvm/knv.hpp"
#include "lamvm/semantics.hpp"
#include "lamvm/term.hpp"

using namespace lamvm;
using namespace lamvm::tests;

namespace {

TermPtr ki_omega() { return lam(app(app(comb_k(), comb_i()), comb_Omega())); }

}  // namespace

TEST_CASE("kn_inject") {
    KnConfig k = kn_inject(parse_db("λ 0 0"));
    CHECK(k.mode == KnConfig::Mode::Eval);
    CHECK(term_eq(k.term.term, parse_db("λ 0 0")));
    CHECK(k.level == 0);
    CHECK(k.stack == nullptr);
    CHECK_THROWS_AS(kn_inject(var(1)), OpenTermError);
}

TEST_CASE("single steps") {
    // Rule 1: applications push the argument closure and evaluate the
    // function first (left to right, call by name).
    KnConfig k = KnConfig::make_eval(TermN::of(app(comb_i(), comb_k())), nullptr, 0, nullptr);
    auto r = kn_step(k);
    auto* next = std::get_if<KnNext>(&r);
    REQUIRE(next);
    CHECK(next->rule == 1);
    CHECK(term_eq(next->config.term.term, comb_i()));
    REQUIRE(next->config.stack);
    CHECK(next->config.stack->frame.kind == KnFrame::Kind::ArgClosure);
    CHECK(term_eq(next->config.stack->frame.term, comb_k()));

    // Rule 6: abstract variables turn into indices.
    KnConfig k6 = KnConfig::make_eval(TermN::abs_var(1), nullptr, 2,
                                      kn_stack_push(KnFrame::lam_box(),
                                                    kn_stack_push(KnFrame::lam_box(), nullptr)));
    auto r6 = kn_step(k6);
    auto* n6 = std::get_if<KnNext>(&r6);
    REQUIRE(n6);
    CHECK(n6->rule == 6);
    CHECK(n6->config.mode == KnConfig::Mode::ContN);
    CHECK(term_eq(n6->config.term.term, var(1)));

    // Rule 7: unload.
    KnConfig k7 = KnConfig::make_cont_n(parse_db("λ 0"), 0, nullptr);
    CHECK(std::holds_alternative<KnFinal>(kn_step(k7)));
}

TEST_CASE("kn_run on the worked examples") {
    SUBCASE("λ(K I Ω) normalizes under normal order") {
        auto r = kn_run(ki_omega(), 1000);
        REQUIRE(r.normal.has_value());
        CHECK(term_eq(*r.normal, parse_db("λ λ 0")));
    }
    SUBCASE("Ω exhausts fuel") {
        auto r = kn_run(comb_Omega(), 1000);
        CHECK_FALSE(r.normal.has_value());
        CHECK(r.transitions == 1000);
    }
    SUBCASE("identity and Church arithmetic") {
        CHECK(term_eq(*kn_run(comb_i(), 100).normal, parse_db("λ 0")));
        CHECK(term_eq(*kn_run(app(church(2), church(2)), 10000).normal, church(4)));
        CHECK(term_eq(*kn_run(app(app(church_mul(), church(2)), church(3)), 10000).normal,
                      church(6)));
    }
}

TEST_CASE("divergence witness: strong CbV is incomplete where normal order is not") {
    CHECK(kn_run(ki_omega(), 100000).normal.has_value());
    CHECK_FALSE(knv_run(ki_omega(), 100000).normal.has_value());
}

TEST_CASE("kn_run agrees with the normal-order oracle") {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 300; ++i) {
        TermPtr t = random_closed(rng, 12);
        auto machine = kn_run(t, 20000);
        auto oracle = normalize_normal_order(t, 20000);
        if (machine.normal && oracle.normal) {
            CHECK(term_eq(*machine.normal, *oracle.normal));
        }
        if (machine.normal) CHECK(is_normal_form(*machine.normal));
    }
    for (const TermPtr& t : enumerate_closed(6)) {
        auto machine = kn_run(t, 5000);
        auto oracle = normalize_normal_order(t, 5000);
        REQUIRE(machine.normal.has_value() == oracle.normal.has_value());
        if (machine.normal) CHECK(term_eq(*machine.normal, *oracle.normal));
    }
}

TEST_CASE("well-formedness along traces") {
    for (const TermPtr& t :
         {parse_db("λ 0 0"), ki_omega(), app(church(2), church(2)), comb_Omega()}) {
        for (const auto& e : kn_trace(t, 300)) CHECK(kn_is_wellformed(e.config));
    }
    // Level must match the lambda count.
    CHECK_FALSE(kn_is_wellformed(KnConfig::make_eval(TermN::of(comb_i()), nullptr, 2, nullptr)));
    // ContN payload must be a normal form.
    CHECK_FALSE(kn_is_wellformed(KnConfig::make_cont_n(comb_Omega(), 0, nullptr)));
}

TEST_CASE("per-rule counts sum to transitions") {
    auto r = kn_run(app(church(2), church(2)), 10000);
    long total = 0;
    for (long c : r.counts) total += c;
    CHECK(total == r.transitions);
}
