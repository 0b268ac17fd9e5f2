#include "lamvm/nbe.hpp"

#include <functional>
#include <memory>

namespace lamvm {
namespace {

struct BudgetExhausted {};

struct Budget {
    long spent = 0;
    long limit;
    int depth = 0;
    // Divergent evaluations recurse through host stack frames; cap the
    // depth so they surface as exhaustion instead of a stack overflow.
    static constexpr int kMaxDepth = 10000;
    void tick() {
        if (++spent > limit || depth > kMaxDepth) throw BudgetExhausted{};
    }
};
using BudgetPtr = std::shared_ptr<Budget>;

struct DepthGuard {
    Budget& budget;
    explicit DepthGuard(Budget& b) : budget(b) { ++budget.depth; }
    ~DepthGuard() { --budget.depth; }
};

// ---------------------------------------------------------------------
// Call by name: sem = level -> glue, glue = Abs (sem -> sem) | Neutral term.

struct GlueCbn;
using SemCbn = std::function<GlueCbn(int)>;

struct GlueCbn {
    bool is_abs;
    std::function<SemCbn(const SemCbn&)> abs;
    TermPtr neutral;
};

struct CbnEnvNode;
using CbnEnv = std::shared_ptr<const CbnEnvNode>;
struct CbnEnvNode {
    SemCbn head;
    CbnEnv tail;
};

const SemCbn& cbn_lookup(const CbnEnv& e, int n) {
    const CbnEnvNode* node = e.get();
    while (node && n > 0) {
        node = node->tail.get();
        --n;
    }
    if (!node) throw std::logic_error("nbe_cbn: unbound variable");
    return node->head;
}

TermPtr cbn_reify(const SemCbn& d, int m, const BudgetPtr& budget);

SemCbn cbn_eval(const TermPtr& t, const CbnEnv& e, const BudgetPtr& budget) {
    DepthGuard guard(*budget);
    budget->tick();
    switch (t->kind) {
        case Term::Kind::Var:
            return cbn_lookup(e, t->index);
        case Term::Kind::Lam: {
            TermPtr body = t->body;
            auto f = [body, e, budget](const SemCbn& d) {
                return cbn_eval(body, std::make_shared<CbnEnvNode>(CbnEnvNode{d, e}), budget);
            };
            return [f](int) { return GlueCbn{true, f, nullptr}; };  // to_sem
        }
        case Term::Kind::App: {
            SemCbn d1 = cbn_eval(t->fun, e, budget);
            TermPtr arg = t->arg;
            // The argument stays a thunk, re-evaluated on each use.
            SemCbn d2 = [arg, e, budget](int m) {
                DepthGuard guard(*budget);
                return cbn_eval(arg, e, budget)(m);
            };
            // from_sem
            return [d1, d2, budget](int m) -> GlueCbn {
                DepthGuard guard(*budget);
                GlueCbn g = d1(m);
                if (g.is_abs) return g.abs(d2)(m);
                return GlueCbn{false, nullptr, app(g.neutral, cbn_reify(d2, m, budget))};
            };
        }
    }
    throw std::logic_error("nbe_cbn: malformed term");
}

TermPtr cbn_reify(const SemCbn& d, int m, const BudgetPtr& budget) {
    DepthGuard guard(*budget);
    budget->tick();
    GlueCbn g = d(m);
    if (g.is_abs) {
        SemCbn fresh = [m](int m2) {
            return GlueCbn{false, nullptr, var(m2 - m - 1)};
        };
        return lam(cbn_reify(g.abs(fresh), m + 1, budget));
    }
    return g.neutral;
}

// ---------------------------------------------------------------------
// Call by value: sem = Abs (sem -> sem) | Neutral (level -> term).

struct SemCbv {
    bool is_abs;
    std::function<SemCbv(const SemCbv&)> abs;
    std::function<TermPtr(int)> neutral;
};

struct CbvEnvNode;
using CbvEnv = std::shared_ptr<const CbvEnvNode>;
struct CbvEnvNode {
    SemCbv head;
    CbvEnv tail;
};

const SemCbv& cbv_lookup(const CbvEnv& e, int n) {
    const CbvEnvNode* node = e.get();
    while (node && n > 0) {
        node = node->tail.get();
        --n;
    }
    if (!node) throw std::logic_error("nbe_cbv: unbound variable");
    return node->head;
}

TermPtr cbv_reify(const SemCbv& d, int m, const BudgetPtr& budget);

SemCbv cbv_from_sem_apply(const SemCbv& d, const SemCbv& d2, const BudgetPtr& budget) {
    if (d.is_abs) return d.abs(d2);
    auto l = d.neutral;
    return SemCbv{false, nullptr, [l, d2, budget](int m) {
                      TermPtr n = cbv_reify(d2, m, budget);
                      return app(l(m), n);
                  }};
}

SemCbv cbv_eval(const TermPtr& t, const CbvEnv& e, const BudgetPtr& budget) {
    DepthGuard guard(*budget);
    budget->tick();
    switch (t->kind) {
        case Term::Kind::Var:
            return cbv_lookup(e, t->index);
        case Term::Kind::Lam: {
            TermPtr body = t->body;
            auto f = [body, e, budget](const SemCbv& d) {
                return cbv_eval(body, std::make_shared<CbvEnvNode>(CbvEnvNode{d, e}), budget);
            };
            return SemCbv{true, f, nullptr};  // to_sem
        }
        case Term::Kind::App: {
            SemCbv d2 = cbv_eval(t->arg, e, budget);  // right to left
            SemCbv d1 = cbv_eval(t->fun, e, budget);
            return cbv_from_sem_apply(d1, d2, budget);
        }
    }
    throw std::logic_error("nbe_cbv: malformed term");
}

TermPtr cbv_reify(const SemCbv& d, int m, const BudgetPtr& budget) {
    DepthGuard guard(*budget);
    budget->tick();
    if (d.is_abs) {
        SemCbv fresh{false, nullptr, [m](int m2) { return var(m2 - m - 1); }};
        return lam(cbv_reify(d.abs(fresh), m + 1, budget));
    }
    return d.neutral(m);
}

}  // namespace

NbeResult nbe_cbn(const TermPtr& t, long budget_limit) {
    if (t->open != 0) throw std::invalid_argument("nbe_cbn: term must be closed");
    auto budget = std::make_shared<Budget>();
    budget->limit = budget_limit;
    try {
        TermPtr nf = cbn_reify(cbn_eval(t, nullptr, budget), 0, budget);
        return {nf, budget->spent};
    } catch (const BudgetExhausted&) {
        return {std::nullopt, budget->spent};
    }
}

NbeResult nbe_cbv(const TermPtr& t, long budget_limit) {
    if (t->open != 0) throw std::invalid_argument("nbe_cbv: term must be closed");
    auto budget = std::make_shared<Budget>();
    budget->limit = budget_limit;
    try {
        TermPtr nf = cbv_reify(cbv_eval(t, nullptr, budget), 0, budget);
        return {nf, budget->spent};
    } catch (const BudgetExhausted&) {
        return {std::nullopt, budget->spent};
    }
}

}  // namespace lamvm
