#include <algorithm>

#include "grothsym/errors.hpp"
#include "grothsym/weylq.hpp"

namespace grothsym {

namespace {

int shift_order(int order, long delta) {
    if (order >= kExactOrder)
        return kExactOrder;
    return static_cast<int>(std::clamp<long>(order + delta, -kExactOrder, kExactOrder));
}

void require_same_grading(const TruncSeries &a, const TruncSeries &b) {
    if (a.grading() != b.grading() && !(*a.grading() == *b.grading()))
        throw InvalidArgument("series belong to different components");
}

Weight add_weights(const Weight &a, const Weight &b) {
    Weight out = a;
    for (std::size_t r = 0; r < out.size(); ++r)
        out[r] += b[r];
    return out;
}

} // namespace

TruncSeries::TruncSeries(std::shared_ptr<const Grading> g, Weight reference, int order)
    : g_(std::move(g)), ref_(std::move(reference)), order_(std::min(order, kExactOrder)) {
    if (static_cast<int>(ref_.size()) != g_->rank())
        throw InvalidArgument("reference weight has the wrong rank");
}

TruncSeries TruncSeries::monomial(std::shared_ptr<const Grading> g, const Monomial &m, const Integer &c,
                                  int order) {
    Weight ref = weight_of(m, g->rank());
    TruncSeries s(std::move(g), std::move(ref), order);
    s.add_term(m, c);
    return s;
}

TruncSeries TruncSeries::from_poly(std::shared_ptr<const Grading> g, const LaurentPoly &p, int order) {
    const int n = g->rank();
    if (p.is_zero())
        return TruncSeries(std::move(g), Weight(static_cast<std::size_t>(n), 0), order);
    const Weight first = weight_of(p.lead().monomial, n);
    Weight ref = first;
    int best = 0;
    for (auto &t : p.terms()) {
        Weight w = weight_of(t.monomial, n);
        int tag = g->tag(first, w);
        if (tag < best) {
            best = tag;
            ref = std::move(w);
        }
    }
    TruncSeries s(std::move(g), std::move(ref), order);
    for (auto &t : p.terms())
        s.add_term(t.monomial, t.coefficient);
    return s;
}

int TruncSeries::valuation() const {
    int v = order_;
    for (auto &[m, e] : terms_)
        v = std::min(v, e.tag);
    return v;
}

int TruncSeries::tag_of(const Monomial &m) const { return g_->tag(ref_, weight_of(m, g_->rank())); }

void TruncSeries::add_term(const Monomial &m, const Integer &c) {
    if (c == 0)
        return;
    const int tag = tag_of(m);
    if (tag < 0)
        throw InvalidArgument("term " + grothsym::to_string(m) + " lies below the reference weight");
    if (tag < order_)
        insert(m, c, tag);
}

void TruncSeries::insert(const Monomial &m, const Integer &c, int tag) {
    auto [it, fresh] = terms_.try_emplace(m, Entry{c, tag});
    if (fresh)
        return;
    if (it->second.tag != tag)
        throw std::logic_error("inconsistent tags for " + grothsym::to_string(m));
    it->second.coefficient += c;
    if (it->second.coefficient == 0)
        terms_.erase(it);
}

TruncSeries TruncSeries::rebased(const Weight &reference) const {
    const int shift = g_->tag(ref_, reference);
    TruncSeries out(g_, reference, shift_order(order_, -shift));
    for (auto &[m, e] : terms_) {
        if (e.tag - shift < 0)
            throw InvalidArgument("rebasing would give " + grothsym::to_string(m) + " a negative tag");
        out.insert(m, e.coefficient, e.tag - shift);
    }
    return out;
}

TruncSeries TruncSeries::truncated(int order) const {
    TruncSeries out(g_, ref_, std::min(order, order_));
    for (auto &[m, e] : terms_)
        if (e.tag < out.order_)
            out.terms_.emplace(m, e);
    return out;
}

LaurentPoly TruncSeries::below(int bound) const {
    std::vector<Term> terms;
    for (auto &[m, e] : terms_)
        if (e.tag < bound)
            terms.push_back({m, e.coefficient});
    return LaurentPoly::from_terms(std::move(terms));
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries out = *this;
    for (auto &[m, e] : out.terms_)
        e.coefficient = -e.coefficient;
    return out;
}

TruncSeries operator+(const TruncSeries &a, const TruncSeries &b) {
    require_same_grading(a, b);
    const int d = a.g_->tag(a.ref_, b.ref_); // where b's reference sits in a's grading
    TruncSeries out = d >= 0 ? TruncSeries(a.g_, a.ref_, std::min(a.order_, shift_order(b.order_, d)))
                             : TruncSeries(a.g_, b.ref_, std::min(shift_order(a.order_, -d), b.order_));
    const int da = d >= 0 ? 0 : -d;
    const int db = d >= 0 ? d : 0;
    for (auto &[m, e] : a.terms_)
        if (e.tag + da < out.order_)
            out.insert(m, e.coefficient, e.tag + da);
    for (auto &[m, e] : b.terms_)
        if (e.tag + db < out.order_)
            out.insert(m, e.coefficient, e.tag + db);
    return out;
}

TruncSeries operator*(const TruncSeries &a, const TruncSeries &b) {
    require_same_grading(a, b);
    const int order = std::min(shift_order(a.order_, b.valuation()), shift_order(b.order_, a.valuation()));
    TruncSeries out(a.g_, add_weights(a.ref_, b.ref_), order);
    for (auto &[ma, ea] : a.terms_)
        for (auto &[mb, eb] : b.terms_) {
            const int tag = ea.tag + eb.tag;
            if (tag < order)
                out.insert(ma * mb, ea.coefficient * eb.coefficient, tag);
        }
    return out;
}

std::string TruncSeries::to_string() const {
    if (is_exact())
        return lp_canonical_string(polynomial());
    const std::string tail = "O(" + std::to_string(order_) + ")";
    if (terms_.empty())
        return tail;
    return lp_canonical_string(polynomial()) + " + " + tail;
}

TruncSeries series_invert(const TruncSeries &s) {
    const int v = s.valuation();
    if (v >= s.order())
        throw NotInvertible("series has no known leading term");
    const Monomial *lead = nullptr;
    Integer c;
    for (auto &[m, e] : s.terms()) {
        if (e.tag != v)
            continue;
        if (lead)
            throw NotInvertible("leading part has more than one monomial");
        lead = &m;
        c = e.coefficient;
    }
    if (abs(c) != 1)
        throw NotInvertible("leading coefficient is not a unit");

    const auto &g = s.grading();
    const Weight zero(static_cast<std::size_t>(g->rank()), 0);
    const TruncSeries unit_over_lead = TruncSeries::monomial(g, lead->inverse(), c);
    // s = c*lead*(1 + t) with t of positive tags.
    const TruncSeries normalized = (s * unit_over_lead).rebased(zero);
    const TruncSeries one = TruncSeries::monomial(g, Monomial(), 1);
    const TruncSeries t = normalized - one;
    if (t.empty())
        return one.truncated(normalized.order()) * unit_over_lead;
    if (normalized.is_exact())
        throw InvalidArgument("inverting an exact series needs a truncation order");

    TruncSeries inv = one;
    for (int n = 1; n < normalized.order(); ++n)
        inv = (one - t * inv).truncated(normalized.order());
    return (inv.truncated(normalized.order()) * unit_over_lead);
}

} // namespace grothsym
