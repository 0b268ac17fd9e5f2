#include "lamvm/term.hpp"

#include <algorithm>

namespace lamvm {

TermPtr var(int index) {
    if (index < 0) throw std::invalid_argument("negative de Bruijn index");
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Var;
    t->index = index;
    t->open = index + 1;
    t->size = 1;
    return t;
}

TermPtr app(TermPtr fun, TermPtr arg) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::App;
    t->open = std::max(fun->open, arg->open);
    t->size = 1 + fun->size + arg->size;
    t->fun = std::move(fun);
    t->arg = std::move(arg);
    return t;
}

TermPtr lam(TermPtr body) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Lam;
    t->open = std::max(body->open - 1, 0);
    t->size = 1 + body->size;
    t->body = std::move(body);
    return t;
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind || a->size != b->size || a->open != b->open) return false;
    switch (a->kind) {
        case Term::Kind::Var: return a->index == b->index;
        case Term::Kind::App: return term_eq(a->fun, b->fun) && term_eq(a->arg, b->arg);
        case Term::Kind::Lam: return term_eq(a->body, b->body);
    }
    return false;
}

FormSet classify(const TermPtr& t) {
    switch (t->kind) {
        case Term::Kind::Var:
            return FormSet{true, true, true, true};
        case Term::Kind::Lam: {
            FormSet body = classify(t->body);
            return FormSet{body.normal, false, true, false};
        }
        case Term::Kind::App: {
            FormSet f = classify(t->fun);
            FormSet a = classify(t->arg);
            bool neutral = f.neutral && a.normal;
            bool inert = f.inert && a.wnf;
            return FormSet{neutral, neutral, inert, inert};
        }
    }
    return FormSet{};
}

TermPtr shift(int amount, int cutoff, const TermPtr& t) {
    if (amount == 0 || t->open <= cutoff) return t;
    switch (t->kind) {
        case Term::Kind::Var:
            return t->index >= cutoff ? var(t->index + amount) : t;
        case Term::Kind::App:
            return app(shift(amount, cutoff, t->fun), shift(amount, cutoff, t->arg));
        case Term::Kind::Lam:
            return lam(shift(amount, cutoff + 1, t->body));
    }
    return t;
}

TermPtr subst(int i, const TermPtr& s, const TermPtr& t) {
    switch (t->kind) {
        case Term::Kind::Var:
            if (t->index < i) return t;
            if (t->index == i) return shift(i, 0, s);
            return var(t->index - 1);
        case Term::Kind::App:
            return app(subst(i, s, t->fun), subst(i, s, t->arg));
        case Term::Kind::Lam:
            return lam(subst(i + 1, s, t->body));
    }
    return t;
}

std::optional<TermPtr> beta_contract(const TermPtr& t) {
    if (t->kind != Term::Kind::App || t->fun->kind != Term::Kind::Lam) return std::nullopt;
    return subst(0, t->arg, t->fun->body);
}

std::optional<TermPtr> beta_wnf_contract(const TermPtr& t) {
    if (t->kind != Term::Kind::App || t->fun->kind != Term::Kind::Lam) return std::nullopt;
    if (!is_wnf(t->arg)) return std::nullopt;
    return subst(0, t->arg, t->fun->body);
}

TermPtr church(unsigned n) {
    TermPtr body = var(0);
    for (unsigned k = 0; k < n; ++k) body = app(var(1), body);
    return lam(lam(body));
}

}  // namespace lamvm
