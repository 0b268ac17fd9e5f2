#include "lamvm/knv.hpp"

#include <algorithm>

namespace lamvm {

WnfPtr make_clo(TermPtr body, Env env) {
    auto w = std::make_shared<Wnf>();
    w->kind = Wnf::Kind::Clo;
    int lam_open = std::max(body->open - 1, 0);
    w->open = lam_open <= env_length(env) ? open_e(env) : -1;
    w->body = std::move(body);
    w->env = std::move(env);
    return w;
}

WnfPtr make_inert_wnf(InertPtr i) {
    auto w = std::make_shared<Wnf>();
    w->kind = Wnf::Kind::InertV;
    w->open = i->open;
    w->inert = std::move(i);
    return w;
}

InertPtr make_abs_var(int level) {
    auto i = std::make_shared<Inert>();
    i->kind = Inert::Kind::AbsVar;
    i->level = level;
    i->open = level;
    return i;
}

InertPtr make_iapp(InertPtr fun, WnfPtr arg) {
    auto i = std::make_shared<Inert>();
    i->kind = Inert::Kind::IApp;
    i->open = (fun->open < 0 || arg->open < 0) ? -1 : std::max(fun->open, arg->open);
    i->fun = std::move(fun);
    i->arg = std::move(arg);
    return i;
}

Env env_cons(WnfPtr w, Env tail) {
    auto node = std::make_shared<EnvNode>();
    node->length = env_length(tail) + 1;
    node->open = (w->open < 0 || open_e(tail) < 0) ? -1 : std::max(w->open, open_e(tail));
    node->head = std::move(w);
    node->tail = std::move(tail);
    return node;
}

WnfPtr env_lookup(const Env& e, int index) {
    const EnvNode* node = e.get();
    while (node && index > 0) {
        node = node->tail.get();
        --index;
    }
    return node ? node->head : nullptr;
}

int open_w(const WnfPtr& w) {
    if (w->open < 0) throw UndecodableError("environment does not close its closure body");
    return w->open;
}

int open_i(const InertPtr& i) {
    if (i->open < 0) throw UndecodableError("environment does not close its closure body");
    return i->open;
}

bool wnf_eq(const WnfPtr& a, const WnfPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    if (a->kind == Wnf::Kind::Clo) return term_eq(a->body, b->body) && env_eq(a->env, b->env);
    return inert_eq(a->inert, b->inert);
}

bool inert_eq(const InertPtr& a, const InertPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    if (a->kind == Inert::Kind::AbsVar) return a->level == b->level;
    return inert_eq(a->fun, b->fun) && wnf_eq(a->arg, b->arg);
}

bool env_eq(const Env& a, const Env& b) {
    const EnvNode* x = a.get();
    const EnvNode* y = b.get();
    while (x && y) {
        if (x == y) return true;
        if (!wnf_eq(x->head, y->head)) return false;
        x = x->tail.get();
        y = y->tail.get();
    }
    return !x && !y;
}

bool frame_eq(const Frame& a, const Frame& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Frame::Kind::PendingFun: return term_eq(a.term, b.term) && env_eq(a.env, b.env);
        case Frame::Kind::ArgWnf: return wnf_eq(a.wnf, b.wnf);
        case Frame::Kind::StrongArg: return term_eq(a.term, b.term);
        case Frame::Kind::LamBox: return true;
        case Frame::Kind::StrongFun: return inert_eq(a.inert, b.inert);
    }
    return false;
}

Stack stack_push(Frame f, Stack tail) {
    auto node = std::make_shared<StackNode>();
    node->depth = stack_depth(tail) + 1;
    node->lam_count = lam_count(tail) + (f.kind == Frame::Kind::LamBox ? 1 : 0);
    node->frame = std::move(f);
    node->tail = std::move(tail);
    return node;
}

bool stack_eq(const Stack& a, const Stack& b) {
    const StackNode* x = a.get();
    const StackNode* y = b.get();
    while (x && y) {
        if (x == y) return true;
        if (!frame_eq(x->frame, y->frame)) return false;
        x = x->tail.get();
        y = y->tail.get();
    }
    return !x && !y;
}

bool config_eq(const Config& a, const Config& b) {
    if (a.mode != b.mode || a.level != b.level) return false;
    if (!stack_eq(a.stack, b.stack)) return false;
    switch (a.mode) {
        case Config::Mode::Eval: return term_eq(a.term, b.term) && env_eq(a.env, b.env);
        case Config::Mode::ContW: return wnf_eq(a.wnf, b.wnf);
        case Config::Mode::ContN: return term_eq(a.term, b.term);
    }
    return false;
}

Config inject(const TermPtr& t) {
    if (t->open != 0) throw OpenTermError("initial term must be closed");
    return Config::make_eval(t, nullptr, nullptr, 0);
}

StepResult knv_step(const Config& k) {
    const int m = k.level;
    switch (k.mode) {
        case Config::Mode::Eval: {
            const TermPtr& t = k.term;
            switch (t->kind) {
                case Term::Kind::App:  // (1)
                    return Next{Config::make_eval(
                                    t->arg, k.env,
                                    stack_push(Frame::pending_fun(t->fun, k.env), k.stack), m),
                                1};
                case Term::Kind::Lam:  // (2)
                    return Next{Config::make_cont_w(make_clo(t->body, k.env), k.stack, m), 2};
                case Term::Kind::Var:
                    if (!k.env) return Stuck{"variable lookup in empty environment"};
                    if (t->index == 0)  // (3)
                        return Next{Config::make_cont_w(k.env->head, k.stack, m), 3};
                    // (4)
                    return Next{Config::make_eval(var(t->index - 1), k.env->tail, k.stack, m), 4};
            }
            break;
        }
        case Config::Mode::ContW: {
            const WnfPtr& w = k.wnf;
            const StackNode* top = k.stack.get();
            if (top && top->frame.kind == Frame::Kind::PendingFun)  // (5)
                return Next{Config::make_eval(top->frame.term, top->frame.env,
                                              stack_push(Frame::arg_wnf(w), top->tail), m),
                            5};
            if (top && top->frame.kind == Frame::Kind::ArgWnf) {
                if (w->kind == Wnf::Kind::Clo)  // (6): beta
                    return Next{Config::make_eval(w->body, env_cons(top->frame.wnf, w->env),
                                                  top->tail, m),
                                6};
                // (7)
                return Next{Config::make_cont_w(
                                make_inert_wnf(make_iapp(w->inert, top->frame.wnf)), top->tail, m),
                            7};
            }
            if (w->kind == Wnf::Kind::Clo)  // (8)
                return Next{Config::make_eval(
                                w->body, env_cons(make_inert_wnf(make_abs_var(m + 1)), w->env),
                                stack_push(Frame::lam_box(), k.stack), m + 1),
                            8};
            const InertPtr& i = w->inert;
            if (i->kind == Inert::Kind::IApp)  // (9)
                return Next{Config::make_cont_w(i->arg,
                                                stack_push(Frame::strong_fun(i->fun), k.stack), m),
                            9};
            // (10)
            if (i->level > m) return Stuck{"abstract variable above current level"};
            return Next{Config::make_cont_n(var(m - i->level), m, k.stack), 10};
        }
        case Config::Mode::ContN: {
            const StackNode* top = k.stack.get();
            if (!top) {
                if (m == 0) return Final{k.term};
                return Stuck{"empty stack at nonzero level"};
            }
            switch (top->frame.kind) {
                case Frame::Kind::StrongFun:  // (13)
                    return Next{Config::make_cont_w(
                                    make_inert_wnf(top->frame.inert),
                                    stack_push(Frame::strong_arg(k.term), top->tail), m),
                                13};
                case Frame::Kind::LamBox:  // (12)
                    if (m == 0) return Stuck{"lambda pop at level zero"};
                    return Next{Config::make_cont_n(lam(k.term), m - 1, top->tail), 12};
                case Frame::Kind::StrongArg:  // (14)
                    return Next{Config::make_cont_n(app(k.term, top->frame.term), m, top->tail),
                                14};
                default:
                    return Stuck{"weak frame on top in normal-form mode"};
            }
        }
    }
    return Stuck{"malformed configuration"};
}

namespace {

bool parse_s2(const StackNode* s);

bool parse_s3(const StackNode* s) {
    while (s) {
        if (s->frame.kind == Frame::Kind::LamBox) {
            s = s->tail.get();
        } else if (s->frame.kind == Frame::Kind::StrongFun) {
            return parse_s2(s->tail.get());
        } else {
            return false;
        }
    }
    return true;
}

bool parse_s2(const StackNode* s) {
    while (s && s->frame.kind == Frame::Kind::StrongArg) {
        if (!is_normal_form(s->frame.term)) return false;
        s = s->tail.get();
    }
    return parse_s3(s);
}

bool parse_s1(const StackNode* s) {
    while (s && (s->frame.kind == Frame::Kind::PendingFun || s->frame.kind == Frame::Kind::ArgWnf))
        s = s->tail.get();
    return parse_s3(s);
}

}  // namespace

bool is_wellformed(const Config& k) {
    if (k.level != lam_count(k.stack)) return false;
    const StackNode* s = k.stack.get();
    switch (k.mode) {
        case Config::Mode::Eval:
            return parse_s1(s);
        case Config::Mode::ContW:
            if (k.wnf->kind == Wnf::Kind::Clo) return parse_s1(s);
            return parse_s1(s) || parse_s2(s);
        case Config::Mode::ContN: {
            FormSet fs = classify(k.term);
            if (!fs.normal) return false;
            return fs.neutral ? parse_s2(s) : parse_s3(s);
        }
    }
    return false;
}

RunResult knv_run(const TermPtr& t, long fuel) {
    Config k = inject(t);
    RunResult result;
    for (;;) {
        StepResult r = knv_step(k);
        if (auto* final = std::get_if<Final>(&r)) {
            result.normal = final->nf;
            return result;
        }
        if (auto* stuck = std::get_if<Stuck>(&r))
            throw std::logic_error("KNV stuck: " + stuck->reason);
        auto& next = std::get<Next>(r);
        if (result.transitions == fuel) {
            result.last = k;
            return result;
        }
        ++result.transitions;
        ++result.counts[static_cast<std::size_t>(next.rule)];
        k = std::move(next.config);
    }
}

TraceResult knv_trace(const TermPtr& t, long fuel) {
    Config k = inject(t);
    TraceResult result{{}, std::nullopt, k};
    for (;;) {
        StepResult r = knv_step(k);
        if (auto* final = std::get_if<Final>(&r)) {
            result.normal = final->nf;
            result.last = k;
            return result;
        }
        if (auto* stuck = std::get_if<Stuck>(&r))
            throw std::logic_error("KNV stuck: " + stuck->reason);
        auto& next = std::get<Next>(r);
        if (static_cast<long>(result.steps.size()) == fuel) {
            result.last = k;
            return result;
        }
        result.steps.push_back({k, next.rule});
        k = std::move(next.config);
        result.last = k;
    }
}

WalkResult knv_walk(const TermPtr& t, long fuel,
                    const std::function<bool(const Config&, const StepResult&)>& visit) {
    Config k = inject(t);
    WalkResult result;
    for (;;) {
        StepResult r = knv_step(k);
        if (!visit(k, r)) {
            result.aborted = true;
            return result;
        }
        if (auto* final = std::get_if<Final>(&r)) {
            result.normal = final->nf;
            return result;
        }
        if (auto* stuck = std::get_if<Stuck>(&r))
            throw std::logic_error("KNV stuck: " + stuck->reason);
        if (result.transitions == fuel) return result;
        ++result.transitions;
        k = std::move(std::get<Next>(r).config);
    }
}

PrefixStream::PrefixStream(const TermPtr& t, long fuel) : config_(inject(t)), fuel_(fuel) {}

std::optional<PrefixEvent> PrefixStream::next() {
    while (!finished_) {
        StepResult r = knv_step(config_);
        if (auto* final = std::get_if<Final>(&r)) {
            finished_ = true;
            return PrefixEvent::done(final->nf);
        }
        if (auto* stuck = std::get_if<Stuck>(&r))
            throw std::logic_error("KNV stuck: " + stuck->reason);
        if (spent_ == fuel_) return std::nullopt;
        auto& next = std::get<Next>(r);
        ++spent_;
        TermPtr pushed_nf = config_.term;  // StrongArg payload for rule 13
        config_ = std::move(next.config);
        if (next.rule == kRuleLamPush) return PrefixEvent::lam_revealed();
        if (next.rule == kRuleStrongFunPop) return PrefixEvent::arg_nf_revealed(pushed_nf);
    }
    return std::nullopt;
}

bool prefix_event_eq(const PrefixEvent& a, const PrefixEvent& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == PrefixEvent::Kind::LamRevealed) return true;
    return term_eq(a.nf, b.nf);
}

std::vector<PrefixEvent> stream_prefix(const TermPtr& t, long fuel) {
    PrefixStream stream(t, fuel);
    std::vector<PrefixEvent> events;
    while (auto e = stream.next()) events.push_back(*e);
    return events;
}

}  // namespace lamvm
