#include <doctest.h>

#include "corpus.hpp"
#include "lamvm/kn.hpp"
#include "lamvm/knv.hpp"
#include "lamvm/nbe.hpp"
#include "lamvm/term.hpp"

using namespace lamvm;
using namespace lamvm::tests;

namespace {

TermPtr ki_omega() { return lam(app(app(comb_k(), comb_i()), comb_Omega())); }
TermPtr ki_lam_omega() { return lam(app(app(comb_k(), comb_i()), lam(comb_Omega()))); }

}  // namespace

TEST_CASE("nbe_cbn") {
    CHECK(term_eq(*nbe_cbn(comb_i(), 1000).normal, parse_db("λ 0")));
    CHECK(term_eq(*nbe_cbn(ki_omega(), 10000).normal, parse_db("λ λ 0")));
    CHECK(term_eq(*nbe_cbn(app(church(2), church(2)), 100000).normal, church(4)));
    CHECK_FALSE(nbe_cbn(comb_Omega(), 100000).normal.has_value());
    CHECK_THROWS(nbe_cbn(var(0), 100));
}

TEST_CASE("nbe_cbv") {
    CHECK(term_eq(*nbe_cbv(ki_lam_omega(), 10000).normal, parse_db("λ λ 0")));
    CHECK(term_eq(*nbe_cbv(app(church(2), church(2)), 100000).normal, church(4)));
    CHECK_FALSE(nbe_cbv(ki_omega(), 100000).normal.has_value());
    CHECK_FALSE(nbe_cbv(comb_Omega(), 100000).normal.has_value());
    CHECK_THROWS(nbe_cbv(var(0), 100));
}

TEST_CASE("budget accounting") {
    NbeResult r = nbe_cbn(comb_i(), 1000);
    CHECK(r.budget_spent > 0);
    CHECK(r.budget_spent < 1000);
    NbeResult exhausted = nbe_cbn(comb_Omega(), 500);
    CHECK(exhausted.budget_spent >= 500);
}

TEST_CASE("deep divergence aborts instead of overflowing the host stack") {
    // Budgets far above the recursion-depth cap must still return.
    CHECK_FALSE(nbe_cbn(comb_Omega(), 100000000).normal.has_value());
    CHECK_FALSE(nbe_cbv(comb_Omega(), 100000000).normal.has_value());
    // A self-growing diverger nests rather than loops.
    TermPtr grower = app(parse_db("λ 0 0 0"), parse_db("λ 0 0 0"));
    CHECK_FALSE(nbe_cbn(grower, 3000000).normal.has_value());
    CHECK_FALSE(nbe_cbv(grower, 3000000).normal.has_value());
}

TEST_CASE("endpoint agreement with the machines") {
    std::mt19937_64 rng(91);
    for (int i = 0; i < 250; ++i) {
        TermPtr t = random_closed(rng, 12);
        auto m_cbv = knv_run(t, 20000);
        auto n_cbv = nbe_cbv(t, 200000);
        if (m_cbv.normal && n_cbv.normal) CHECK(term_eq(*m_cbv.normal, *n_cbv.normal));

        auto m_cbn = kn_run(t, 20000);
        auto n_cbn = nbe_cbn(t, 200000);
        if (m_cbn.normal && n_cbn.normal) CHECK(term_eq(*m_cbn.normal, *n_cbn.normal));
    }
    for (const TermPtr& t : enumerate_closed(6)) {
        auto m_cbv = knv_run(t, 20000);
        auto n_cbv = nbe_cbv(t, 500000);
        if (m_cbv.normal) {
            REQUIRE(n_cbv.normal.has_value());
            CHECK(term_eq(*m_cbv.normal, *n_cbv.normal));
        }
        auto m_cbn = kn_run(t, 20000);
        auto n_cbn = nbe_cbn(t, 500000);
        if (m_cbn.normal) {
            REQUIRE(n_cbn.normal.has_value());
            CHECK(term_eq(*m_cbn.normal, *n_cbn.normal));
        }
    }
}

namespace {

// Test-local CbV evaluator that applies semantic functions directly,
// with no wrap/unwrap step at the application site. Comparing it with
// nbe_cbv exercises the retract law behaviorally.
struct DirectSem {
    std::function<DirectSem(const DirectSem&)> abs;  // null when neutral
    std::function<TermPtr(int)> neutral;
};

struct DirectEnvNode;
using DirectEnv = std::shared_ptr<const DirectEnvNode>;
struct DirectEnvNode {
    DirectSem head;
    DirectEnv tail;
};

struct DirectBudget {
    long left;
    int depth = 0;
};

TermPtr direct_reify(const DirectSem& d, int m, const std::shared_ptr<DirectBudget>& b);

DirectSem direct_eval(const TermPtr& t, const DirectEnv& e,
                      const std::shared_ptr<DirectBudget>& b) {
    if (--b->left < 0 || ++b->depth > 5000) throw std::overflow_error("budget");
    struct Depth {
        DirectBudget& b;
        ~Depth() { --b.depth; }
    } depth_guard{*b};
    switch (t->kind) {
        case Term::Kind::Var: {
            const DirectEnvNode* node = e.get();
            for (int i = t->index; i > 0; --i) node = node->tail.get();
            return node->head;
        }
        case Term::Kind::Lam: {
            TermPtr body = t->body;
            return {[body, e, b](const DirectSem& d) {
                        return direct_eval(body,
                                           std::make_shared<DirectEnvNode>(DirectEnvNode{d, e}), b);
                    },
                    nullptr};
        }
        case Term::Kind::App: {
            DirectSem arg = direct_eval(t->arg, e, b);
            DirectSem fun = direct_eval(t->fun, e, b);
            if (fun.abs) return fun.abs(arg);
            auto l = fun.neutral;
            return {nullptr, [l, arg, b](int m) {
                        TermPtr n = direct_reify(arg, m, b);
                        return app(l(m), n);
                    }};
        }
    }
    throw std::logic_error("direct_eval");
}

TermPtr direct_reify(const DirectSem& d, int m, const std::shared_ptr<DirectBudget>& b) {
    if (--b->left < 0) throw std::overflow_error("budget");
    if (d.abs) {
        DirectSem fresh{nullptr, [m](int m2) { return var(m2 - m - 1); }};
        return lam(direct_reify(d.abs(fresh), m + 1, b));
    }
    return d.neutral(m);
}

std::optional<TermPtr> direct_nbe_cbv(const TermPtr& t, long budget) {
    auto b = std::make_shared<DirectBudget>(DirectBudget{budget});
    try {
        return direct_reify(direct_eval(t, nullptr, b), 0, b);
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

}  // namespace

TEST_CASE("retract law observed behaviorally") {
    std::mt19937_64 rng(97);
    std::vector<TermPtr> corpus = enumerate_closed(6);
    for (int i = 0; i < 150; ++i) corpus.push_back(random_closed(rng, 10));
    for (const TermPtr& t : corpus) {
        auto direct = direct_nbe_cbv(t, 200000);
        auto wrapped = nbe_cbv(t, 500000);
        if (direct && wrapped.normal) CHECK(term_eq(*direct, *wrapped.normal));
        // Termination agrees up to budget effects; sanity-check one way.
        if (wrapped.normal) CHECK(direct.has_value());
    }
}
