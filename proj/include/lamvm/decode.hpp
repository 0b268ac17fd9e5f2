#ifndef LAMVM_DECODE_HPP
#define LAMVM_DECODE_HPP

#include <optional>
#include <vector>

#include "lamvm/knv.hpp"
#include "lamvm/term.hpp"

namespace lamvm {

// Decoding of machine representations back to terms, annotated frames
// and annotated decompositions, plus the rlex termination measure.
// Decoding throws UndecodableError when a side condition fails; this
// never happens on configurations reachable from closed terms.

struct AnnTerm {
    enum class Kind { Plain, StrongW, StrongN };
    Kind kind;
    TermPtr term;

    static AnnTerm plain(TermPtr t) { return {Kind::Plain, std::move(t)}; }
    static AnnTerm strong_w(TermPtr t) { return {Kind::StrongW, std::move(t)}; }
    static AnnTerm strong_n(TermPtr t) { return {Kind::StrongN, std::move(t)}; }
};

struct AnnFrame {
    enum class Kind { FlApp, FrApp, FlStrongAnn, FrStrongAnn, LamBox };
    Kind kind;
    TermPtr term;  // null for LamBox

    static AnnFrame fl_app(TermPtr t) { return {Kind::FlApp, std::move(t)}; }
    static AnnFrame fr_app(TermPtr t) { return {Kind::FrApp, std::move(t)}; }
    static AnnFrame fl_strong(TermPtr t) { return {Kind::FlStrongAnn, std::move(t)}; }
    static AnnFrame fr_strong(TermPtr t) { return {Kind::FrStrongAnn, std::move(t)}; }
    static AnnFrame lam_box() { return {Kind::LamBox, nullptr}; }
};

// Frames are inside-out: frames[0] is the innermost.
struct AnnDecomposition {
    AnnTerm head;
    std::vector<AnnFrame> frames;
};

bool ann_term_eq(const AnnTerm& a, const AnnTerm& b);
bool ann_frame_eq(const AnnFrame& a, const AnnFrame& b);
bool ann_decomp_eq(const AnnDecomposition& a, const AnnDecomposition& b);

TermPtr decode_wnf(const WnfPtr& w, int m);
TermPtr decode_inert(const InertPtr& i, int m);
TermPtr decode_term(const TermPtr& t, const Env& e, int m);
std::vector<AnnFrame> decode_stack(const Stack& s);
AnnDecomposition decode_config(const Config& k);

// Bounded variant: gives up (nullopt) once the decoded trees would
// exceed max_nodes constructors. Decoding expands the sharing that the
// machine relies on, so decoded terms can be exponentially larger than
// the configuration; audits over arbitrary traces need this cutoff.
std::optional<AnnDecomposition> decode_config_bounded(const Config& k, long max_nodes);

// Reconstructs the term, ignoring annotations.
TermPtr plug(const AnnDecomposition& d);

// The strict partial order underlying the termination measure:
// reversed-lexicographic over the rank chain
//   Plain < FlApp < FrApp < StrongW < FlStrongAnn < FrStrongAnn
//         < LamBox < StrongN.
// Equal-rank elements with different payloads are unordered.
bool rlex_less(const AnnDecomposition& d1, const AnnDecomposition& d2);

}  // namespace lamvm

#endif
