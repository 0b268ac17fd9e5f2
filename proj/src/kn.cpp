#include "lamvm/kn.hpp"

namespace lamvm {

KnStack kn_stack_push(KnFrame f, KnStack tail) {
    auto node = std::make_shared<KnStackNode>();
    node->depth = kn_stack_depth(tail) + 1;
    node->lam_count = kn_lam_count(tail) + (f.kind == KnFrame::Kind::LamBox ? 1 : 0);
    node->frame = std::move(f);
    node->tail = std::move(tail);
    return node;
}

KnConfig kn_inject(const TermPtr& t) {
    if (t->open != 0) throw OpenTermError("initial term must be closed");
    return KnConfig::make_eval(TermN::of(t), nullptr, 0, nullptr);
}

KnStepResult kn_step(const KnConfig& k) {
    const int m = k.level;
    if (k.mode == KnConfig::Mode::Eval) {
        if (k.term.is_abs_var()) {  // (6)
            if (k.term.level > m) return Stuck{"abstract variable above current level"};
            return KnNext{KnConfig::make_cont_n(var(m - k.term.level), m, k.stack), 6};
        }
        const TermPtr& t = k.term.term;
        switch (t->kind) {
            case Term::Kind::App:  // (1)
                return KnNext{
                    KnConfig::make_eval(TermN::of(t->fun), k.env, m,
                                        kn_stack_push(KnFrame::arg_closure(t->arg, k.env),
                                                      k.stack)),
                    1};
            case Term::Kind::Lam: {
                const KnStackNode* top = k.stack.get();
                if (top && top->frame.kind == KnFrame::Kind::ArgClosure)  // (2)
                    return KnNext{
                        KnConfig::make_eval(
                            TermN::of(t->body),
                            kn_env_cons({TermN::of(top->frame.term), top->frame.env}, k.env), m,
                            top->tail),
                        2};
                // (3)
                return KnNext{KnConfig::make_eval(
                                  TermN::of(t->body),
                                  kn_env_cons({TermN::abs_var(m + 1), nullptr}, k.env), m + 1,
                                  kn_stack_push(KnFrame::lam_box(), k.stack)),
                              3};
            }
            case Term::Kind::Var: {
                if (!k.env) return Stuck{"variable lookup in empty environment"};
                if (t->index == 0)  // (4)
                    return KnNext{KnConfig::make_eval(k.env->head.term, k.env->head.env, m,
                                                      k.stack),
                                  4};
                // (5)
                return KnNext{KnConfig::make_eval(TermN::of(var(t->index - 1)), k.env->tail, m,
                                                  k.stack),
                              5};
            }
        }
        return Stuck{"malformed term"};
    }
    // ContN
    const KnStackNode* top = k.stack.get();
    const TermPtr& nf = k.term.term;
    if (!top) {
        if (m == 0) return KnFinal{nf};  // (7)
        return Stuck{"empty stack at nonzero level"};
    }
    switch (top->frame.kind) {
        case KnFrame::Kind::ArgClosure:  // (8)
            return KnNext{KnConfig::make_eval(TermN::of(top->frame.term), top->frame.env, m,
                                              kn_stack_push(KnFrame::strong_fun(nf), top->tail)),
                          8};
        case KnFrame::Kind::LamBox:  // (9)
            if (m == 0) return Stuck{"lambda pop at level zero"};
            return KnNext{KnConfig::make_cont_n(lam(nf), m - 1, top->tail), 9};
        case KnFrame::Kind::StrongFun:  // (10)
            return KnNext{KnConfig::make_cont_n(app(top->frame.term, nf), m, top->tail), 10};
    }
    return Stuck{"malformed configuration"};
}

namespace {

bool kn_parse_s2(const KnStackNode* s);

bool kn_parse_s1(const KnStackNode* s) {
    while (s && s->frame.kind == KnFrame::Kind::ArgClosure) s = s->tail.get();
    return kn_parse_s2(s);
}

bool kn_parse_s2(const KnStackNode* s) {
    while (s) {
        if (s->frame.kind == KnFrame::Kind::LamBox) {
            s = s->tail.get();
        } else if (s->frame.kind == KnFrame::Kind::StrongFun) {
            if (!is_neutral(s->frame.term)) return false;
            return kn_parse_s1(s->tail.get());
        } else {
            return false;
        }
    }
    return true;
}

}  // namespace

bool kn_is_wellformed(const KnConfig& k) {
    if (k.level != kn_lam_count(k.stack)) return false;
    if (k.mode == KnConfig::Mode::ContN) {
        if (k.term.is_abs_var() || !is_normal_form(k.term.term)) return false;
    }
    return kn_parse_s1(k.stack.get());
}

KnRunResult kn_run(const TermPtr& t, long fuel) {
    KnConfig k = kn_inject(t);
    KnRunResult result;
    for (;;) {
        KnStepResult r = kn_step(k);
        if (auto* final = std::get_if<KnFinal>(&r)) {
            result.normal = final->nf;
            return result;
        }
        if (auto* stuck = std::get_if<Stuck>(&r))
            throw std::logic_error("KN stuck: " + stuck->reason);
        auto& next = std::get<KnNext>(r);
        if (result.transitions == fuel) return result;
        ++result.transitions;
        ++result.counts[static_cast<std::size_t>(next.rule)];
        k = std::move(next.config);
    }
}

std::vector<KnTraceEntry> kn_trace(const TermPtr& t, long fuel) {
    KnConfig k = kn_inject(t);
    std::vector<KnTraceEntry> steps;
    for (;;) {
        KnStepResult r = kn_step(k);
        if (std::holds_alternative<KnFinal>(r)) return steps;
        if (auto* stuck = std::get_if<Stuck>(&r))
            throw std::logic_error("KN stuck: " + stuck->reason);
        auto& next = std::get<KnNext>(r);
        if (static_cast<long>(steps.size()) == fuel) return steps;
        steps.push_back({k, next.rule});
        k = std::move(next.config);
    }
}

}  // namespace lamvm
