#pragma once

// Truncated series in the completions indexed by Weyl group elements, the
// Sigma solutions of the q-difference equation, the Theta_i operators and the
// residual checks built on them.
//
// A series has a reference weight; the tag of a Y-monomial is its distance
// from that weight measured in simple roots along the expansion directions of
// its component. Stored tags lie in [0, order). Every operation tracks how far
// its result is known, so truncation never silently invents zeros.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "grothsym/qchar.hpp"
#include "grothsym/weyl_group.hpp"

namespace grothsym {

// Order of a series known exactly. Sums involving it saturate.
inline constexpr int kExactOrder = 1 << 28;

class TruncSeries {
  public:
    struct Entry {
        Integer coefficient;
        int tag;
    };
    using TermMap = std::map<Monomial, Entry, GradedLexGreater>;

    TruncSeries(std::shared_ptr<const Grading> g, Weight reference, int order);

    static TruncSeries monomial(std::shared_ptr<const Grading> g, const Monomial &m, const Integer &c = 1,
                                int order = kExactOrder);
    // Exact embedding of a Y-polynomial; the reference is the weight of its
    // lowest-tag terms. The zero polynomial gets the zero weight.
    static TruncSeries from_poly(std::shared_ptr<const Grading> g, const LaurentPoly &p, int order = kExactOrder);

    const std::shared_ptr<const Grading> &grading() const { return g_; }
    const Weight &reference() const { return ref_; }
    int order() const { return order_; }
    bool is_exact() const { return order_ >= kExactOrder; }
    const TermMap &terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    // Smallest stored tag, or the order when no term is stored.
    int valuation() const;
    int tag_of(const Monomial &m) const;

    // Adds c*m, dropping it when its tag reaches the order. Throws
    // InvalidArgument for a negative tag.
    void add_term(const Monomial &m, const Integer &c);

    // Same series measured from another reference. Throws InvalidArgument if
    // a stored term would get a negative tag.
    TruncSeries rebased(const Weight &reference) const;
    TruncSeries truncated(int order) const;

    // Terms with tag < bound, as a polynomial.
    LaurentPoly below(int bound) const;
    LaurentPoly polynomial() const { return below(kExactOrder); }

    TruncSeries operator-() const;
    friend TruncSeries operator+(const TruncSeries &a, const TruncSeries &b);
    friend TruncSeries operator-(const TruncSeries &a, const TruncSeries &b) { return a + (-b); }
    friend TruncSeries operator*(const TruncSeries &a, const TruncSeries &b);

    // "<poly> + O(N)", or just the polynomial when exact.
    std::string to_string() const;

  private:
    void insert(const Monomial &m, const Integer &c, int tag);

    std::shared_ptr<const Grading> g_;
    Weight ref_;
    int order_;
    TermMap terms_;
};

// Throws NotInvertible unless the lowest tag holds one monomial with
// coefficient +-1 and lies below the order.
TruncSeries series_invert(const TruncSeries &s);

// Sigma_{i,k} in component comp, which must be the identity or s_i
// (UnsupportedComponent otherwise).
TruncSeries sigma_series(const YContext &ctx, int i, int k, const WeylComponent &comp, int N);

// Sigma_{i,k} expanded in whatever direction comp assigns to node i.
TruncSeries sigma_series_directed(const YContext &ctx, int i, int k, const WeylComponent &comp, int N);

// Theta_i(Y_{i,a}) = Y_{i,a} A_{i,a q^-1}^{-1} Sigma_{i, a q^num} / Sigma_{i, a q^den}.
struct ThetaOperator {
    int numerator_shift = -3;
    int denominator_shift = -1;
};

// R1: the w-component of Theta_i(x) reads x at w s_i. R2 reads it at s_i w.
enum class Routing { RightMultiply, LeftMultiply };
inline constexpr Routing kRouting = Routing::RightMultiply;

// Components of Pi. Missing components are not computed yet; they are never
// read as zero. A diagonal element keeps its polynomial and embeds it in any
// component on request.
class PiElement {
  public:
    PiElement() = default;
    static PiElement diagonal(LaurentPoly p);

    const std::optional<LaurentPoly> &source() const { return source_; }
    const std::map<WeylComponent, TruncSeries> &computed() const { return comps_; }

    bool has_component(const WeylComponent &w) const { return source_ || comps_.count(w); }
    // Throws UnsupportedComponent when w is neither computed nor derivable.
    TruncSeries component(const WeylComponent &w) const;
    void set_component(const WeylComponent &w, TruncSeries s);

    friend PiElement operator+(const PiElement &a, const PiElement &b);
    friend PiElement operator*(const PiElement &a, const PiElement &b);

  private:
    template <class Op> static PiElement combine(const PiElement &a, const PiElement &b, Op op);

    std::optional<LaurentPoly> source_;
    std::map<WeylComponent, TruncSeries> comps_;
};

// Theta_i with memoized generator images. The cache is keyed by everything
// the value depends on, so sharing an engine between threads is safe.
class ThetaEngine {
  public:
    explicit ThetaEngine(YContext ctx, ThetaOperator op = {}, Routing routing = kRouting);

    const YContext &context() const { return ctx_; }

    TruncSeries on_generator(int i, int j, int k, const WeylComponent &comp, int N) const;

    // Homomorphic extension to each requested output component.
    PiElement apply(int i, const PiElement &x, int N, const std::vector<WeylComponent> &comps) const;
    PiElement apply(int i, const LaurentPoly &p, int N) const; // all components

    // Theta_{word[0]} Theta_{word[1]} ... (x), evaluated only where needed for comps.
    PiElement apply_word(const std::vector<int> &word, const PiElement &x, int N,
                         const std::vector<WeylComponent> &comps) const;

    WeylComponent source_component(int i, const WeylComponent &w) const;

  private:
    TruncSeries on_monomial(int i, const Monomial &m, const WeylComponent &comp, int N) const;

    YContext ctx_;
    ThetaOperator op_;
    Routing routing_;

    using Key = std::tuple<int, int, int, std::vector<int>, int>;
    mutable std::mutex mu_;
    mutable std::map<Key, TruncSeries> cache_;
};

TruncSeries theta_on_generator(const YContext &ctx, int i, int j, int k, const WeylComponent &comp, int N,
                               const ThetaOperator &op = {});
PiElement theta_apply(const YContext &ctx, int i, const LaurentPoly &p, int N);
PiElement theta_apply(const YContext &ctx, int i, const PiElement &x, int N, const std::vector<WeylComponent> &comps);

// Tag-0 part of Theta_i(p) in the identity component, term by term.
LaurentPoly theta_leading(const YContext &ctx, int i, const LaurentPoly &p);

// Theta_i^2(Y_{j,k}) - Y_{j,k}, identity component.
TruncSeries check_involution(const YContext &ctx, int i, int j, int k, int N, const ThetaOperator &op = {});
// Theta_i(p) - p, identity component.
TruncSeries check_invariance(const YContext &ctx, int i, const LaurentPoly &p, int N, const ThetaOperator &op = {});

struct ResidualSummary {
    int boundary = 0;
    int order = 0;
    int terms = 0;
    int terms_below = 0;
    std::optional<int> min_tag;
    std::optional<int> max_tag;
    // No term below the boundary, and the series is known up to it.
    bool clean() const { return terms_below == 0 && order >= boundary; }
};

ResidualSummary summarize_residual(const TruncSeries &r, int boundary);

// Theta_i Theta_j ... (m factors) minus Theta_j Theta_i ... on Y_{l,k},
// identity component.
TruncSeries braid_residual(const YContext &ctx, int i, int j, int l, int k, int N);

} // namespace grothsym
