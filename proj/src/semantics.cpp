#include "lamvm/semantics.hpp"

namespace lamvm {

bool ctx_frame_eq(const CtxFrame& a, const CtxFrame& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == CtxFrame::Kind::UnderLam) return true;
    return term_eq(a.term, b.term);
}

TermPtr plug_ctx(const std::vector<CtxFrame>& context, TermPtr t) {
    for (const CtxFrame& f : context) {
        switch (f.kind) {
            case CtxFrame::Kind::AppFunHole: t = app(std::move(t), f.term); break;
            case CtxFrame::Kind::AppArgHole: t = app(f.term, std::move(t)); break;
            case CtxFrame::Kind::UnderLam: t = lam(std::move(t)); break;
        }
    }
    return t;
}

std::optional<Decomposition> decompose_fireball(const TermPtr& t) {
    if (t->kind != Term::Kind::App) return std::nullopt;
    // Right-to-left: look for a weak redex in the argument first.
    if (auto d = decompose_fireball(t->arg)) {
        d->context.push_back(CtxFrame::arg_hole(t->fun));
        return d;
    }
    if (auto d = decompose_fireball(t->fun)) {
        d->context.push_back(CtxFrame::fun_hole(t->arg));
        return d;
    }
    if (t->fun->kind == Term::Kind::Lam) return Decomposition{{}, t, CtxClass::F};
    return std::nullopt;
}

// Structured after the uniqueness proof's case analysis: argument
// first under F, then the function under F, then the top-level redex,
// then the strong positions under R/H.
std::optional<Decomposition> decompose_rrcbv(const TermPtr& t) {
    switch (t->kind) {
        case Term::Kind::Var:
            return std::nullopt;
        case Term::Kind::Lam: {
            auto d = decompose_rrcbv(t->body);
            if (!d) return std::nullopt;
            d->context.push_back(CtxFrame::under_lam());
            d->derived_under = CtxClass::R;
            return d;
        }
        case Term::Kind::App: {
            if (auto d = decompose_fireball(t->arg)) {
                d->context.push_back(CtxFrame::arg_hole(t->fun));
                return d;  // argument not yet a wnf
            }
            if (auto d = decompose_fireball(t->fun)) {
                d->context.push_back(CtxFrame::fun_hole(t->arg));
                return d;
            }
            if (t->fun->kind == Term::Kind::Lam) return Decomposition{{}, t, CtxClass::F};
            // Function is inert: normalize the argument, then the function.
            if (auto d = decompose_rrcbv(t->arg)) {
                d->context.push_back(CtxFrame::arg_hole(t->fun));
                d->derived_under = CtxClass::H;
                return d;
            }
            if (auto d = decompose_rrcbv(t->fun)) {
                d->context.push_back(CtxFrame::fun_hole(t->arg));
                d->derived_under = CtxClass::H;
                return d;
            }
            return std::nullopt;  // neutral
        }
    }
    return std::nullopt;
}

std::optional<TermPtr> step_rrcbv(const TermPtr& t) {
    auto d = decompose_rrcbv(t);
    if (!d) return std::nullopt;
    auto contracted = beta_wnf_contract(d->redex);
    if (!contracted) throw std::logic_error("decompose_rrcbv produced a non-redex");
    return plug_ctx(d->context, *contracted);
}

NormalizeResult normalize_rrcbv(const TermPtr& t, long fuel) {
    TermPtr cur = t;
    for (long i = 0; i <= fuel; ++i) {
        auto next = step_rrcbv(cur);
        if (!next) return {cur, i, cur};
        if (i == fuel) break;
        cur = *next;
    }
    return {std::nullopt, fuel, cur};
}

namespace {

std::optional<Decomposition> decompose_no_weak(const TermPtr& t);

// L-contexts: leftmost-outermost.
std::optional<Decomposition> decompose_no_strong(const TermPtr& t) {
    switch (t->kind) {
        case Term::Kind::Var:
            return std::nullopt;
        case Term::Kind::Lam: {
            auto d = decompose_no_strong(t->body);
            if (!d) return std::nullopt;
            d->context.push_back(CtxFrame::under_lam());
            return d;
        }
        case Term::Kind::App:
            return decompose_no_weak(t);
    }
    return std::nullopt;
}

std::optional<Decomposition> decompose_no_weak(const TermPtr& t) {
    if (t->kind != Term::Kind::App) return std::nullopt;
    if (t->fun->kind == Term::Kind::Lam) return Decomposition{{}, t, CtxClass::L};
    if (auto d = decompose_no_weak(t->fun)) {
        d->context.push_back(CtxFrame::fun_hole(t->arg));
        return d;
    }
    if (is_neutral(t->fun)) {
        if (auto d = decompose_no_strong(t->arg)) {
            d->context.push_back(CtxFrame::arg_hole(t->fun));
            return d;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Decomposition> decompose_normal_order(const TermPtr& t) {
    auto d = decompose_no_strong(t);
    if (d) d->derived_under = CtxClass::L;
    return d;
}

std::optional<TermPtr> step_normal_order(const TermPtr& t) {
    auto d = decompose_normal_order(t);
    if (!d) return std::nullopt;
    auto contracted = beta_contract(d->redex);
    if (!contracted) throw std::logic_error("decompose_normal_order produced a non-redex");
    return plug_ctx(d->context, *contracted);
}

NormalizeResult normalize_normal_order(const TermPtr& t, long fuel) {
    TermPtr cur = t;
    for (long i = 0; i <= fuel; ++i) {
        auto next = step_normal_order(cur);
        if (!next) return {cur, i, cur};
        if (i == fuel) break;
        cur = *next;
    }
    return {std::nullopt, fuel, cur};
}

namespace {

// Nondeterministic automaton over outside-in frames for the R/H/F
// context grammars.
enum : unsigned { kR = 1, kH = 2, kF = 4 };

unsigned closure(unsigned s) {
    if (s & kR) s |= kH | kF;
    return s;
}

unsigned advance_states(unsigned s, const CtxFrame& f) {
    unsigned next = 0;
    switch (f.kind) {
        case CtxFrame::Kind::UnderLam:
            if (s & kR) next |= kR;
            break;
        case CtxFrame::Kind::AppFunHole:
            if ((s & kH) && is_normal_form(f.term)) next |= kH;
            if ((s & kF) && is_wnf(f.term)) next |= kF;
            break;
        case CtxFrame::Kind::AppArgHole:
            if ((s & kH) && is_inert(f.term)) next |= kR;
            if (s & kF) next |= kF;
            break;
    }
    return closure(next);
}

bool accepts(unsigned start, const std::vector<CtxFrame>& outside_in) {
    unsigned s = closure(start);
    for (const CtxFrame& f : outside_in) {
        s = advance_states(s, f);
        if (s == 0) return false;
    }
    return (s & kF) != 0;  // only F derives the empty context
}

bool is_beta_wnf_redex(const TermPtr& t) {
    return t->kind == Term::Kind::App && t->fun->kind == Term::Kind::Lam && is_wnf(t->arg);
}

void enumerate_rec(const TermPtr& t, unsigned start, std::vector<CtxFrame>& path,
                   std::vector<Decomposition>& out) {
    if (is_beta_wnf_redex(t) && accepts(start, path)) {
        Decomposition d;
        d.context.assign(path.rbegin(), path.rend());
        d.redex = t;
        d.derived_under = start == kF ? CtxClass::F : CtxClass::R;
        out.push_back(std::move(d));
    }
    switch (t->kind) {
        case Term::Kind::Var:
            break;
        case Term::Kind::Lam:
            path.push_back(CtxFrame::under_lam());
            enumerate_rec(t->body, start, path, out);
            path.pop_back();
            break;
        case Term::Kind::App:
            path.push_back(CtxFrame::fun_hole(t->arg));
            enumerate_rec(t->fun, start, path, out);
            path.pop_back();
            path.push_back(CtxFrame::arg_hole(t->fun));
            enumerate_rec(t->arg, start, path, out);
            path.pop_back();
            break;
    }
}

}  // namespace

std::vector<Decomposition> enumerate_R_decompositions(const TermPtr& t) {
    std::vector<Decomposition> out;
    std::vector<CtxFrame> path;
    enumerate_rec(t, kR, path, out);
    return out;
}

std::vector<Decomposition> enumerate_F_decompositions(const TermPtr& t) {
    std::vector<Decomposition> out;
    std::vector<CtxFrame> path;
    enumerate_rec(t, kF, path, out);
    return out;
}

}  // namespace lamvm
