#include "lamvm/convert.hpp"

namespace lamvm {

Verdict convertible(const TermPtr& t1, const TermPtr& t2, long fuel) {
    PrefixStream left(t1, fuel);
    PrefixStream right(t2, fuel);
    Verdict v{Verdict::Kind::Unknown, {}, {}, 0, 0};
    for (std::size_t i = 0;; ++i) {
        auto el = left.next();
        auto er = right.next();
        if (el) v.left_prefix.push_back(*el);
        if (er) v.right_prefix.push_back(*er);
        v.budget_spent = left.fuel_spent() + right.fuel_spent();
        if (!el || !er) {
            // A stream with no further event has run out of fuel: its
            // Done event would otherwise have been compared here.
            v.kind = Verdict::Kind::Unknown;
            v.diverging_index = i;
            return v;
        }
        if (!prefix_event_eq(*el, *er)) {
            v.kind = Verdict::Kind::NotConvertible;
            v.diverging_index = i;
            return v;
        }
        if (el->kind == PrefixEvent::Kind::Done) {
            v.kind = Verdict::Kind::Convertible;
            return v;
        }
    }
}

}  // namespace lamvm
