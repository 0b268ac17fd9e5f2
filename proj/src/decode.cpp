#include "lamvm/decode.hpp"

namespace lamvm {

bool ann_term_eq(const AnnTerm& a, const AnnTerm& b) {
    return a.kind == b.kind && term_eq(a.term, b.term);
}

bool ann_frame_eq(const AnnFrame& a, const AnnFrame& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == AnnFrame::Kind::LamBox) return true;
    return term_eq(a.term, b.term);
}

bool ann_decomp_eq(const AnnDecomposition& a, const AnnDecomposition& b) {
    if (!ann_term_eq(a.head, b.head) || a.frames.size() != b.frames.size()) return false;
    for (std::size_t i = 0; i < a.frames.size(); ++i)
        if (!ann_frame_eq(a.frames[i], b.frames[i])) return false;
    return true;
}

namespace {

struct BudgetExceeded {};

// budget is null for the unbounded entry points; each produced term
// constructor spends one unit.
void spend(long* budget) {
    if (budget && --*budget < 0) throw BudgetExceeded{};
}

TermPtr dec_wnf(const WnfPtr& w, int m, long* budget);
TermPtr dec_inert(const InertPtr& i, int m, long* budget);
TermPtr dec_term(const TermPtr& t, const Env& e, int m, long* budget);

TermPtr dec_wnf(const WnfPtr& w, int m, long* budget) {
    if (w->kind == Wnf::Kind::Clo) {
        if (w->open < 0)
            throw UndecodableError("closure environment does not close its body");
        spend(budget);
        Env extended = env_cons(make_inert_wnf(make_abs_var(m + 1)), w->env);
        return lam(dec_term(w->body, extended, m + 1, budget));
    }
    return dec_inert(w->inert, m, budget);
}

TermPtr dec_inert(const InertPtr& i, int m, long* budget) {
    spend(budget);
    if (i->kind == Inert::Kind::AbsVar) {
        if (i->level > m) throw UndecodableError("abstract variable above decoding level");
        return var(m - i->level);
    }
    return app(dec_inert(i->fun, m, budget), dec_wnf(i->arg, m, budget));
}

TermPtr dec_term(const TermPtr& t, const Env& e, int m, long* budget) {
    switch (t->kind) {
        case Term::Kind::App:
            spend(budget);
            return app(dec_term(t->fun, e, m, budget), dec_term(t->arg, e, m, budget));
        case Term::Kind::Lam:
            return dec_wnf(make_clo(t->body, e), m, budget);
        case Term::Kind::Var: {
            WnfPtr w = env_lookup(e, t->index);
            if (!w) throw UndecodableError("variable lookup past end of environment");
            return dec_wnf(w, m, budget);
        }
    }
    throw UndecodableError("malformed term");
}

std::vector<AnnFrame> dec_stack(const Stack& s, long* budget) {
    std::vector<AnnFrame> out;
    for (const StackNode* node = s.get(); node; node = node->tail.get()) {
        const Frame& f = node->frame;
        int below = lam_count(node->tail);
        switch (f.kind) {
            case Frame::Kind::PendingFun:
                out.push_back(AnnFrame::fl_app(dec_term(f.term, f.env, below, budget)));
                break;
            case Frame::Kind::ArgWnf:
                out.push_back(AnnFrame::fr_app(dec_wnf(f.wnf, below, budget)));
                break;
            case Frame::Kind::StrongFun:
                out.push_back(AnnFrame::fl_strong(dec_inert(f.inert, below, budget)));
                break;
            case Frame::Kind::StrongArg:
                out.push_back(AnnFrame::fr_strong(f.term));
                break;
            case Frame::Kind::LamBox:
                out.push_back(AnnFrame::lam_box());
                break;
        }
    }
    return out;
}

AnnDecomposition dec_config(const Config& k, long* budget) {
    switch (k.mode) {
        case Config::Mode::Eval:
            return {AnnTerm::plain(dec_term(k.term, k.env, k.level, budget)),
                    dec_stack(k.stack, budget)};
        case Config::Mode::ContW:
            return {AnnTerm::strong_w(dec_wnf(k.wnf, k.level, budget)),
                    dec_stack(k.stack, budget)};
        case Config::Mode::ContN:
            return {AnnTerm::strong_n(k.term), dec_stack(k.stack, budget)};
    }
    throw UndecodableError("malformed configuration");
}

}  // namespace

TermPtr decode_wnf(const WnfPtr& w, int m) { return dec_wnf(w, m, nullptr); }

TermPtr decode_inert(const InertPtr& i, int m) { return dec_inert(i, m, nullptr); }

TermPtr decode_term(const TermPtr& t, const Env& e, int m) {
    return dec_term(t, e, m, nullptr);
}

std::vector<AnnFrame> decode_stack(const Stack& s) { return dec_stack(s, nullptr); }

AnnDecomposition decode_config(const Config& k) { return dec_config(k, nullptr); }

std::optional<AnnDecomposition> decode_config_bounded(const Config& k, long max_nodes) {
    long budget = max_nodes;
    try {
        return dec_config(k, &budget);
    } catch (const BudgetExceeded&) {
        return std::nullopt;
    }
}

TermPtr plug(const AnnDecomposition& d) {
    TermPtr cur = d.head.term;
    for (const AnnFrame& f : d.frames) {
        switch (f.kind) {
            case AnnFrame::Kind::FlApp:
            case AnnFrame::Kind::FlStrongAnn:
                cur = app(f.term, cur);
                break;
            case AnnFrame::Kind::FrApp:
            case AnnFrame::Kind::FrStrongAnn:
                cur = app(cur, f.term);
                break;
            case AnnFrame::Kind::LamBox:
                cur = lam(cur);
                break;
        }
    }
    return cur;
}

namespace {

int rank_of(const AnnTerm& a) {
    switch (a.kind) {
        case AnnTerm::Kind::Plain: return 0;
        case AnnTerm::Kind::StrongW: return 3;
        case AnnTerm::Kind::StrongN: return 7;
    }
    return -1;
}

int rank_of(const AnnFrame& f) {
    switch (f.kind) {
        case AnnFrame::Kind::FlApp: return 1;
        case AnnFrame::Kind::FrApp: return 2;
        case AnnFrame::Kind::FlStrongAnn: return 4;
        case AnnFrame::Kind::FrStrongAnn: return 5;
        case AnnFrame::Kind::LamBox: return 6;
    }
    return -1;
}

// Views the decomposition as the sequence [head, frames...] indexed
// from the outermost end.
struct RevView {
    const AnnDecomposition& d;
    std::size_t size() const { return d.frames.size() + 1; }
    int rank(std::size_t i) const {
        if (i < d.frames.size()) return rank_of(d.frames[d.frames.size() - 1 - i]);
        return rank_of(d.head);
    }
    const TermPtr& payload(std::size_t i) const {
        if (i < d.frames.size()) return d.frames[d.frames.size() - 1 - i].term;
        return d.head.term;
    }
};

}  // namespace

bool rlex_less(const AnnDecomposition& d1, const AnnDecomposition& d2) {
    RevView a{d1}, b{d2};
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int ra = a.rank(i), rb = b.rank(i);
        if (ra != rb) return ra < rb;
        const TermPtr& ta = a.payload(i);
        const TermPtr& tb = b.payload(i);
        if (!ta && !tb) continue;  // two lambda boxes
        if (!ta || !tb || !term_eq(ta, tb)) return false;  // unordered
    }
    return a.size() < b.size();  // strict prefix after reversal
}

}  // namespace lamvm
