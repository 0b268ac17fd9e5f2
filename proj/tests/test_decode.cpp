#include <doctest.h>

#include "corpus.hpp"
#include "lamvm/decode.hpp"
#include "lamvm/knv.hpp"
#include "lamvm/semantics.hpp"
#include "lamvm/term.hpp"

using namespace lamvm;
using namespace lamvm::tests;

namespace {

WnfPtr v(int level) { return make_inert_wnf(make_abs_var(level)); }

}  // namespace

TEST_CASE("open measures") {
    CHECK(open_i(make_abs_var(3)) == 3);
    CHECK(open_e(nullptr) == 0);
    CHECK(open_w(make_clo(var(0), env_cons(v(2), nullptr))) == 2);
    CHECK(open_i(make_iapp(make_abs_var(1), v(4))) == 4);
    CHECK(open_w(make_clo(parse_db("0 0"), env_cons(v(1), nullptr))) == 1);
    CHECK_THROWS_AS(open_w(make_clo(var(1), nullptr)), UndecodableError);
}

TEST_CASE("decode_wnf and decode_inert") {
    CHECK(term_eq(decode_inert(make_abs_var(1), 1), var(0)));
    CHECK(term_eq(decode_inert(make_iapp(make_abs_var(1), v(1)), 1), parse_db("0 0")));
    CHECK(term_eq(decode_wnf(make_clo(parse_db("0 0"), nullptr), 0), parse_db("λ 0 0")));
    CHECK_THROWS_AS(decode_wnf(make_clo(var(1), nullptr), 0), UndecodableError);
    CHECK_THROWS_AS(decode_inert(make_abs_var(3), 2), UndecodableError);
}

TEST_CASE("decode_term") {
    CHECK(term_eq(decode_term(parse_db("0 0"), env_cons(v(1), nullptr), 1), parse_db("0 0")));
    // The documented anomaly on an unreachable input.
    CHECK(term_eq(decode_term(parse_db("λ λ 2"), env_cons(v(5), nullptr), 4), parse_db("λ λ 1")));
    // Identity on closed terms under the empty environment.
    for (const TermPtr& t : enumerate_closed(6)) CHECK(term_eq(decode_term(t, nullptr, 0), t));
    CHECK_THROWS_AS(decode_term(var(0), nullptr, 0), UndecodableError);
}

TEST_CASE("decode_stack") {
    CHECK(decode_stack(nullptr).empty());

    Stack s1 = stack_push(Frame::arg_wnf(v(1)), stack_push(Frame::lam_box(), nullptr));
    auto d1 = decode_stack(s1);
    REQUIRE(d1.size() == 2);
    CHECK(ann_frame_eq(d1[0], AnnFrame::fr_app(var(0))));
    CHECK(ann_frame_eq(d1[1], AnnFrame::lam_box()));

    Stack s2 = stack_push(Frame::strong_arg(var(0)), stack_push(Frame::lam_box(), nullptr));
    auto d2 = decode_stack(s2);
    REQUIRE(d2.size() == 2);
    CHECK(ann_frame_eq(d2[0], AnnFrame::fr_strong(var(0))));
    CHECK(ann_frame_eq(d2[1], AnnFrame::lam_box()));
}

TEST_CASE("decode_config") {
    // First configuration of the four-transition fragment of λ(0 0).
    Stack lam_only = stack_push(Frame::lam_box(), nullptr);
    Config c = Config::make_cont_w(v(1), stack_push(Frame::arg_wnf(v(1)), lam_only), 1);
    AnnDecomposition d = decode_config(c);
    CHECK(ann_term_eq(d.head, AnnTerm::strong_w(var(0))));
    REQUIRE(d.frames.size() == 2);
    CHECK(ann_frame_eq(d.frames[0], AnnFrame::fr_app(var(0))));
    CHECK(ann_frame_eq(d.frames[1], AnnFrame::lam_box()));

    Config done = Config::make_cont_n(parse_db("λ 0"), 0, nullptr);
    AnnDecomposition dd = decode_config(done);
    CHECK(ann_term_eq(dd.head, AnnTerm::strong_n(parse_db("λ 0"))));
    CHECK(dd.frames.empty());

    // Initial correctness: the injected configuration plugs back to t.
    for (const TermPtr& t : enumerate_closed(6))
        CHECK(term_eq(plug(decode_config(inject(t))), t));
}

TEST_CASE("plug") {
    TermPtr t = parse_db("λ 0");
    CHECK(term_eq(plug({AnnTerm::plain(t), {}}), t));
    CHECK(term_eq(plug({AnnTerm::plain(var(0)), {AnnFrame::fl_app(comb_i())}}),
                  app(comb_i(), var(0))));
    CHECK(term_eq(plug({AnnTerm::strong_n(parse_db("0 0")), {AnnFrame::lam_box()}}),
                  parse_db("λ 0 0")));
}

TEST_CASE("rlex order basics") {
    AnnDecomposition d{AnnTerm::plain(comb_i()), {AnnFrame::lam_box()}};
    CHECK_FALSE(rlex_less(d, d));  // irreflexive

    // Rule-1 inequality: Plain(t1 t2) :: L < Plain(t2) :: FlApp(t1) :: L.
    TermPtr t1 = comb_i(), t2 = comb_k();
    AnnDecomposition before{AnnTerm::plain(app(t1, t2)), {AnnFrame::lam_box()}};
    AnnDecomposition after{AnnTerm::plain(t2), {AnnFrame::fl_app(t1), AnnFrame::lam_box()}};
    CHECK(rlex_less(before, after));
    CHECK_FALSE(rlex_less(after, before));

    // Equal rank with different payloads is unordered.
    AnnDecomposition p1{AnnTerm::plain(comb_i()), {}};
    AnnDecomposition p2{AnnTerm::plain(comb_k()), {}};
    CHECK_FALSE(rlex_less(p1, p2));
    CHECK_FALSE(rlex_less(p2, p1));

    // Lambda-pop inequality: N(T) :: λ□ :: L < N(λT) :: L.
    AnnDecomposition before_pop{AnnTerm::strong_n(var(0)), {AnnFrame::lam_box()}};
    AnnDecomposition after_pop{AnnTerm::strong_n(lam(var(0))), {}};
    CHECK(rlex_less(before_pop, after_pop));
    CHECK_FALSE(rlex_less(after_pop, before_pop));
    // Strong-argument push: N(T2) :: I(T1) :: L < W(T1) :: (T2) :: L.
    AnnDecomposition before_push{AnnTerm::strong_n(var(1)), {AnnFrame::fl_strong(var(0))}};
    AnnDecomposition after_push{AnnTerm::strong_w(var(0)), {AnnFrame::fr_strong(var(1))}};
    CHECK(rlex_less(before_push, after_push));
    CHECK_FALSE(rlex_less(after_push, before_push));
}

TEST_CASE("the five-decomposition chain is strictly increasing") {
    TraceResult t = knv_trace(parse_db("λ 0 0"), 100);
    REQUIRE(t.steps.size() == 13);
    std::vector<AnnDecomposition> chain;
    for (std::size_t i = 6; i <= 10; ++i) chain.push_back(decode_config(t.steps[i].config));

    // Pinned expected decompositions.
    std::vector<AnnDecomposition> expected = {
        {AnnTerm::strong_w(var(0)), {AnnFrame::fr_app(var(0)), AnnFrame::lam_box()}},
        {AnnTerm::strong_w(parse_db("0 0")), {AnnFrame::lam_box()}},
        {AnnTerm::strong_w(var(0)), {AnnFrame::fl_strong(var(0)), AnnFrame::lam_box()}},
        {AnnTerm::strong_n(var(0)), {AnnFrame::fl_strong(var(0)), AnnFrame::lam_box()}},
        {AnnTerm::strong_w(var(0)), {AnnFrame::fr_strong(var(0)), AnnFrame::lam_box()}},
    };
    REQUIRE(chain.size() == expected.size());
    for (std::size_t i = 0; i < chain.size(); ++i) CHECK(ann_decomp_eq(chain[i], expected[i]));
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        CHECK(rlex_less(chain[i], chain[i + 1]));
        CHECK_FALSE(rlex_less(chain[i + 1], chain[i]));
    }
}

TEST_CASE("per-transition decode laws on sample traces") {
    std::vector<TermPtr> terms = {parse_db("λ 0 0"),
                                  lam(app(app(comb_k(), comb_i()), lam(comb_Omega()))),
                                  app(church(2), church(2))};
    std::mt19937_64 rng(71);
    for (int i = 0; i < 60; ++i) terms.push_back(random_closed(rng, 10));

    for (const TermPtr& t : terms) {
        TraceResult tr = knv_trace(t, 3000);
        for (std::size_t i = 0; i + 1 <= tr.steps.size(); ++i) {
            const Config& from = tr.steps[i].config;
            const Config& to = i + 1 < tr.steps.size() ? tr.steps[i + 1].config : tr.last;
            int rule = tr.steps[i].rule;
            AnnDecomposition da = decode_config(from);
            AnnDecomposition db = decode_config(to);
            if (rule == kRuleContract) {
                auto stepped = step_rrcbv(plug(da));
                REQUIRE(stepped.has_value());
                CHECK(term_eq(*stepped, plug(db)));
            } else {
                CHECK(term_eq(plug(da), plug(db)));
                if (rule == 4) {
                    CHECK(ann_decomp_eq(da, db));
                } else if (rule == 3) {
                    // Variable lookup only upgrades the head annotation
                    // on an identical payload, a minimal strict increase.
                    CHECK(rlex_less(da, db));
                    CHECK(da.head.kind == AnnTerm::Kind::Plain);
                    CHECK(db.head.kind == AnnTerm::Kind::StrongW);
                    CHECK(term_eq(da.head.term, db.head.term));
                } else {
                    CHECK(rlex_less(da, db));
                }
            }
        }
    }
}

TEST_CASE("annotation soundness on reachable configurations") {
    std::mt19937_64 rng(73);
    for (int i = 0; i < 60; ++i) {
        TermPtr t = random_closed(rng, 10);
        TraceResult tr = knv_trace(t, 2000);
        for (const auto& e : tr.steps) {
            AnnDecomposition d = decode_config(e.config);
            if (d.head.kind == AnnTerm::Kind::StrongW) CHECK(is_wnf(d.head.term));
            if (d.head.kind == AnnTerm::Kind::StrongN) CHECK(is_normal_form(d.head.term));
            for (const AnnFrame& f : d.frames) {
                if (f.kind == AnnFrame::Kind::FlStrongAnn) CHECK(is_inert(f.term));
                if (f.kind == AnnFrame::Kind::FrStrongAnn) CHECK(is_normal_form(f.term));
            }
        }
    }
}
