#include <algorithm>

#include "grothsym/errors.hpp"
#include "grothsym/weylq.hpp"

namespace grothsym {

namespace {

void check_node(const YContext &ctx, int i) {
    if (i < 1 || i > ctx.rank())
        throw InvalidArgument("node " + std::to_string(i) + " outside 1.." + std::to_string(ctx.rank()));
}

Weight zero_weight(int n) { return Weight(static_cast<std::size_t>(n), 0); }

Weight fundamental_weight(int n, int i) {
    Weight w = zero_weight(n);
    w[static_cast<std::size_t>(i - 1)] = 1;
    return w;
}

} // namespace

TruncSeries sigma_series_directed(const YContext &ctx, int i, int k, const WeylComponent &comp, int N) {
    check_node(ctx, i);
    if (N < 0)
        throw InvalidArgument("negative truncation order");
    TruncSeries out(comp.grading(), zero_weight(ctx.rank()), N);
    Monomial prod;
    if (comp.sign_profile()[static_cast<std::size_t>(i - 1)] < 0) {
        for (int m = 0; m < N; ++m) {
            if (m > 0)
                prod = prod * a_monomial(ctx, i, k - 2 * (m - 1)).inverse();
            out.add_term(prod, 1);
        }
    } else {
        for (int m = 1; m < N; ++m) {
            prod = prod * a_monomial(ctx, i, k + 2 * m);
            out.add_term(prod, -1);
        }
    }
    return out;
}

TruncSeries sigma_series(const YContext &ctx, int i, int k, const WeylComponent &comp, int N) {
    check_node(ctx, i);
    if (!comp.is_identity() && comp.word() != std::vector<int>{i})
        throw UnsupportedComponent("Sigma_" + std::to_string(i) + " is only expanded in components e and s" +
                                   std::to_string(i) + ", not " + comp.name());
    return sigma_series_directed(ctx, i, k, comp, N);
}

PiElement PiElement::diagonal(LaurentPoly p) {
    PiElement x;
    x.source_ = std::move(p);
    return x;
}

TruncSeries PiElement::component(const WeylComponent &w) const {
    if (auto it = comps_.find(w); it != comps_.end())
        return it->second;
    if (source_)
        return TruncSeries::from_poly(w.grading(), *source_);
    throw UnsupportedComponent("component " + w.name() + " has not been computed");
}

void PiElement::set_component(const WeylComponent &w, TruncSeries s) {
    if (!(*s.grading() == *w.grading()))
        throw InvalidArgument("series does not belong to component " + w.name());
    comps_.insert_or_assign(w, std::move(s));
}

template <class Op> PiElement PiElement::combine(const PiElement &a, const PiElement &b, Op op) {
    PiElement out;
    if (a.source_ && b.source_)
        out.source_ = op(*a.source_, *b.source_);
    for (auto &[w, s] : a.comps_)
        if (b.has_component(w))
            out.comps_.insert_or_assign(w, op(s, b.component(w)));
    for (auto &[w, s] : b.comps_)
        if (!a.comps_.count(w) && a.source_)
            out.comps_.insert_or_assign(w, op(a.component(w), s));
    return out;
}

PiElement operator+(const PiElement &a, const PiElement &b) {
    return PiElement::combine(a, b, [](const auto &x, const auto &y) { return x + y; });
}

PiElement operator*(const PiElement &a, const PiElement &b) {
    return PiElement::combine(a, b, [](const auto &x, const auto &y) { return x * y; });
}

ThetaEngine::ThetaEngine(YContext ctx, ThetaOperator op, Routing routing)
    : ctx_(std::move(ctx)), op_(op), routing_(routing) {}

WeylComponent ThetaEngine::source_component(int i, const WeylComponent &w) const {
    return routing_ == Routing::RightMultiply ? w.times_reflection(i) : w.reflection_times(i);
}

TruncSeries ThetaEngine::on_generator(int i, int j, int k, const WeylComponent &comp, int N) const {
    check_node(ctx_, i);
    check_node(ctx_, j);
    if (N < 0)
        throw InvalidArgument("negative truncation order");
    const auto &g = comp.grading();
    const Monomial y = Monomial::var(Yv(j, k));
    if (j != i)
        return TruncSeries::monomial(g, y);

    Key key{i, j, k, comp.word(), N};
    {
        std::lock_guard lock(mu_);
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second;
    }

    const Weight ref = reflect_weight(ctx_.cartan(), i, fundamental_weight(ctx_.rank(), i));
    const auto lead = TruncSeries::monomial(g, y * a_monomial(ctx_, i, k - 1).inverse());
    std::optional<TruncSeries> result;
    // The ratio loses a little precision when the expansion starts above tag 0,
    // so work with some slack and check what is actually known.
    for (int slack = 2; slack <= 16; slack += 2) {
        const auto num = sigma_series_directed(ctx_, i, k + op_.numerator_shift, comp, N + slack);
        const auto den = sigma_series_directed(ctx_, i, k + op_.denominator_shift, comp, N + slack);
        auto r = (lead * num * series_invert(den)).rebased(ref);
        if (r.order() >= N) {
            result = r.truncated(N);
            break;
        }
    }
    if (!result)
        throw Error("Theta image not determined to order " + std::to_string(N));

    std::lock_guard lock(mu_);
    return cache_.try_emplace(std::move(key), std::move(*result)).first->second;
}

TruncSeries ThetaEngine::on_monomial(int i, const Monomial &m, const WeylComponent &comp, int N) const {
    TruncSeries out = TruncSeries::monomial(comp.grading(), Monomial());
    for (auto &[v, e] : m.factors()) {
        if (v.family != Family::Y)
            throw InvalidArgument("Theta acts on Y variables only, got " + to_string(v));
        TruncSeries g = on_generator(i, v.i, v.k, comp, N);
        if (e < 0)
            g = series_invert(g);
        for (int r = 0; r < std::abs(e); ++r)
            out = out * g;
    }
    return out.is_exact() ? out : out.truncated(N);
}

PiElement ThetaEngine::apply(int i, const PiElement &x, int N, const std::vector<WeylComponent> &comps) const {
    check_node(ctx_, i);
    const auto &cd = ctx_.cartan();
    PiElement out;
    for (const auto &w : comps) {
        const TruncSeries in = x.component(source_component(i, w));
        const auto &g = w.grading();
        const Weight ref = reflect_weight(cd, i, in.reference());
        // Images of fixed generators are exact; the others cap the order at N.
        const int target = std::min(N, in.order());
        TruncSeries acc(g, ref, in.order());
        for (auto &[m, e] : in.terms()) {
            const int shift = g->tag(ref, reflect_weight(cd, i, weight_of(m, ctx_.rank())));
            const int need = target - shift;
            if (need <= 0) {
                acc = acc.truncated(target);
                continue;
            }
            acc = acc + on_monomial(i, m, w, need) * TruncSeries::monomial(g, Monomial(), e.coefficient);
        }
        out.set_component(w, std::move(acc));
    }
    return out;
}

PiElement ThetaEngine::apply(int i, const LaurentPoly &p, int N) const {
    return apply(i, PiElement::diagonal(p), N, weyl_group_elements(ctx_.cartan()));
}

PiElement ThetaEngine::apply_word(const std::vector<int> &word, const PiElement &x, int N,
                                  const std::vector<WeylComponent> &comps) const {
    if (word.empty())
        return x;
    // needs[t]: components of the output of Theta_{word[t]} that are read later.
    std::vector<std::vector<WeylComponent>> needs{comps};
    for (std::size_t t = 1; t < word.size(); ++t) {
        std::vector<WeylComponent> prev;
        for (auto &w : needs.back())
            prev.push_back(source_component(word[t - 1], w));
        std::sort(prev.begin(), prev.end());
        prev.erase(std::unique(prev.begin(), prev.end()), prev.end());
        needs.push_back(std::move(prev));
    }
    PiElement cur = x;
    for (std::size_t t = word.size(); t-- > 0;)
        cur = apply(word[t], cur, N, needs[t]);
    return cur;
}

TruncSeries theta_on_generator(const YContext &ctx, int i, int j, int k, const WeylComponent &comp, int N,
                               const ThetaOperator &op) {
    return ThetaEngine(ctx, op).on_generator(i, j, k, comp, N);
}

PiElement theta_apply(const YContext &ctx, int i, const LaurentPoly &p, int N) {
    return ThetaEngine(ctx).apply(i, p, N);
}

PiElement theta_apply(const YContext &ctx, int i, const PiElement &x, int N, const std::vector<WeylComponent> &comps) {
    return ThetaEngine(ctx).apply(i, x, N, comps);
}

LaurentPoly theta_leading(const YContext &ctx, int i, const LaurentPoly &p) {
    const ThetaEngine engine(ctx);
    const auto e = WeylComponent::identity(ctx.cartan());
    LaurentPoly out;
    for (auto &t : p.terms()) {
        PiElement img = engine.apply(i, PiElement::diagonal(LaurentPoly(t.monomial, t.coefficient)), 1, {e});
        out += img.component(e).below(1);
    }
    return out;
}

TruncSeries check_involution(const YContext &ctx, int i, int j, int k, int N, const ThetaOperator &op) {
    const ThetaEngine engine(ctx, op);
    const auto e = WeylComponent::identity(ctx.cartan());
    const auto x = PiElement::diagonal(LaurentPoly::var(Yv(j, k)));
    return engine.apply_word({i, i}, x, N, {e}).component(e) - x.component(e);
}

TruncSeries check_invariance(const YContext &ctx, int i, const LaurentPoly &p, int N, const ThetaOperator &op) {
    const ThetaEngine engine(ctx, op);
    const auto e = WeylComponent::identity(ctx.cartan());
    const auto x = PiElement::diagonal(p);
    return engine.apply(i, x, N, {e}).component(e) - x.component(e);
}

ResidualSummary summarize_residual(const TruncSeries &r, int boundary) {
    ResidualSummary s;
    s.boundary = boundary;
    s.order = r.order();
    for (auto &[m, e] : r.terms()) {
        ++s.terms;
        if (e.tag < boundary)
            ++s.terms_below;
        s.min_tag = s.min_tag ? std::min(*s.min_tag, e.tag) : e.tag;
        s.max_tag = s.max_tag ? std::max(*s.max_tag, e.tag) : e.tag;
    }
    return s;
}

TruncSeries braid_residual(const YContext &ctx, int i, int j, int l, int k, int N) {
    const auto &cd = ctx.cartan();
    check_node(ctx, i);
    check_node(ctx, j);
    check_node(ctx, l);
    if (i == j)
        throw InvalidArgument("braid relation needs two distinct nodes");
    const int prod = cd(i, j) * cd(j, i);
    const int m = prod == 0 ? 2 : prod == 1 ? 3 : prod == 2 ? 4 : 6;
    std::vector<int> lhs, rhs;
    for (int t = 0; t < m; ++t) {
        lhs.push_back(t % 2 == 0 ? i : j);
        rhs.push_back(t % 2 == 0 ? j : i);
    }
    const ThetaEngine engine(ctx);
    const auto e = WeylComponent::identity(cd);
    const auto x = PiElement::diagonal(LaurentPoly::var(Yv(l, k)));
    return engine.apply_word(lhs, x, N, {e}).component(e) - engine.apply_word(rhs, x, N, {e}).component(e);
}

} // namespace grothsym
