#include "grothsym/polyring.hpp"

#include <algorithm>
#include <unordered_map>

#include <omp.h>

#include "grothsym/errors.hpp"

namespace grothsym {

std::optional<Family> family_from_char(char c) {
    switch (c) {
    case 'A':
        return Family::A;
    case 'L':
        return Family::L;
    case 'X':
        return Family::X;
    case 'Y':
        return Family::Y;
    case 'y':
        return Family::y;
    default:
        return std::nullopt;
    }
}

VarId::VarId(Family f, int node, int spectral) : family(f), i(node), k(spectral) {
    if (node < 1)
        throw InvalidArgument("variable node index must be >= 1");
    if ((f == Family::X || f == Family::y) && spectral != 0)
        throw InvalidArgument("X and y variables carry no spectral index");
}

std::string to_string(const VarId &v) {
    std::string s(1, static_cast<char>(v.family));
    s += '[';
    s += std::to_string(v.i);
    s += ',';
    s += std::to_string(v.k);
    s += ']';
    return s;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end(),
              [](const Factor &a, const Factor &b) { return a.first < b.first; });
    for (auto &[v, e] : factors) {
        if (!factors_.empty() && factors_.back().first == v)
            factors_.back().second += e;
        else
            factors_.emplace_back(v, e);
        if (factors_.back().second == 0)
            factors_.pop_back();
    }
    for (auto &f : factors_)
        degree_ += f.second;
}

Monomial Monomial::var(VarId v, int exponent) {
    Monomial m;
    if (exponent != 0) {
        m.factors_.emplace_back(v, exponent);
        m.degree_ = exponent;
    }
    return m;
}

int Monomial::exponent(const VarId &v) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                               [](const Factor &f, const VarId &x) { return f.first < x; });
    return (it != factors_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial &o) const {
    Monomial r;
    r.factors_.reserve(factors_.size() + o.factors_.size());
    auto a = factors_.begin(), ae = factors_.end();
    auto b = o.factors_.begin(), be = o.factors_.end();
    while (a != ae || b != be) {
        if (b == be || (a != ae && a->first < b->first)) {
            r.factors_.push_back(*a++);
        } else if (a == ae || b->first < a->first) {
            r.factors_.push_back(*b++);
        } else {
            int e = a->second + b->second;
            if (e != 0)
                r.factors_.emplace_back(a->first, e);
            ++a;
            ++b;
        }
    }
    r.degree_ = degree_ + o.degree_;
    return r;
}

Monomial Monomial::operator/(const Monomial &o) const { return *this * o.inverse(); }

Monomial Monomial::inverse() const { return pow(-1); }

Monomial Monomial::pow(int e) const {
    Monomial r;
    if (e == 0)
        return r;
    r.factors_ = factors_;
    for (auto &f : r.factors_)
        f.second *= e;
    r.degree_ = degree_ * e;
    return r;
}

bool Monomial::is_polynomial() const {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const Factor &f) { return f.second > 0; });
}

std::size_t Monomial::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (auto &[v, e] : factors_) {
        mix(static_cast<std::size_t>(v.family));
        mix(static_cast<std::size_t>(v.i));
        mix(static_cast<std::size_t>(static_cast<unsigned>(v.k)));
        mix(static_cast<std::size_t>(static_cast<unsigned>(e)));
    }
    return h;
}

std::strong_ordering graded_lex(const Monomial &a, const Monomial &b) {
    if (a.degree() != b.degree())
        return a.degree() <=> b.degree();
    auto fa = a.factors(), fb = b.factors();
    std::size_t i = 0, j = 0;
    while (i < fa.size() || j < fb.size()) {
        int ea, eb;
        if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first)) {
            ea = fa[i++].second;
            eb = 0;
        } else if (i == fa.size() || fb[j].first < fa[i].first) {
            ea = 0;
            eb = fb[j++].second;
        } else {
            ea = fa[i++].second;
            eb = fb[j++].second;
        }
        if (ea != eb)
            return ea <=> eb;
    }
    return std::strong_ordering::equal;
}

Monomial exponent_floor(const Monomial &a, const Monomial &b) {
    std::vector<Monomial::Factor> out;
    auto fa = a.factors(), fb = b.factors();
    std::size_t i = 0, j = 0;
    while (i < fa.size() || j < fb.size()) {
        if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first)) {
            if (fa[i].second < 0)
                out.push_back(fa[i]);
            ++i;
        } else if (i == fa.size() || fb[j].first < fa[i].first) {
            if (fb[j].second < 0)
                out.push_back(fb[j]);
            ++j;
        } else {
            out.emplace_back(fa[i].first, std::min(fa[i].second, fb[j].second));
            ++i;
            ++j;
        }
    }
    return Monomial(std::move(out));
}

// ------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(long c) {
    if (c != 0)
        terms_.push_back({Monomial(), Integer(c)});
}

LaurentPoly::LaurentPoly(const Integer &c) {
    if (c != 0)
        terms_.push_back({Monomial(), c});
}

LaurentPoly::LaurentPoly(Monomial m, Integer c) {
    if (c != 0)
        terms_.push_back({std::move(m), std::move(c)});
}

LaurentPoly LaurentPoly::var(VarId v, int exponent) {
    return LaurentPoly(Monomial::var(v, exponent));
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) {
        return graded_lex(a.monomial, b.monomial) == std::strong_ordering::greater;
    });
    LaurentPoly r;
    for (auto &t : terms) {
        if (!r.terms_.empty() && r.terms_.back().monomial == t.monomial)
            r.terms_.back().coefficient += t.coefficient;
        else
            r.terms_.push_back(std::move(t));
        if (r.terms_.back().coefficient == 0)
            r.terms_.pop_back();
    }
    return r;
}

Integer LaurentPoly::coefficient(const Monomial &m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term &t, const Monomial &x) {
        return graded_lex(t.monomial, x) == std::strong_ordering::greater;
    });
    return (it != terms_.end() && it->monomial == m) ? it->coefficient : Integer(0);
}

std::vector<VarId> LaurentPoly::variables() const {
    std::vector<VarId> vs;
    for (auto &t : terms_)
        for (auto &f : t.monomial.factors())
            vs.push_back(f.first);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto &t : r.terms_)
        t.coefficient = -t.coefficient;
    return r;
}

namespace {

// Merge of two descending term lists with a sign on the second.
std::vector<Term> merge_terms(std::span<const Term> a, std::span<const Term> b, bool negate_b) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        auto ord = (i == a.size())   ? std::strong_ordering::less
                   : (j == b.size()) ? std::strong_ordering::greater
                                     : graded_lex(a[i].monomial, b[j].monomial);
        if (ord == std::strong_ordering::greater) {
            out.push_back(a[i++]);
        } else if (ord == std::strong_ordering::less) {
            out.push_back(b[j]);
            if (negate_b)
                out.back().coefficient = -out.back().coefficient;
            ++j;
        } else {
            Integer c = negate_b ? Integer(a[i].coefficient - b[j].coefficient)
                                 : Integer(a[i].coefficient + b[j].coefficient);
            if (c != 0)
                out.push_back({a[i].monomial, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

LaurentPoly &LaurentPoly::operator+=(const LaurentPoly &o) {
    terms_ = merge_terms(terms_, o.terms_, false);
    return *this;
}

LaurentPoly &LaurentPoly::operator-=(const LaurentPoly &o) {
    terms_ = merge_terms(terms_, o.terms_, true);
    return *this;
}

LaurentPoly &LaurentPoly::operator*=(const LaurentPoly &o) { return *this = lp_mul(*this, o); }

LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b) { return lp_mul(a, b); }

LaurentPoly LaurentPoly::times(const Monomial &m, const Integer &c) const {
    LaurentPoly r;
    if (c == 0)
        return r;
    // Multiplying by a monomial preserves graded_lex order.
    r.terms_.reserve(terms_.size());
    for (auto &t : terms_)
        r.terms_.push_back({t.monomial * m, t.coefficient * c});
    return r;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
    LaurentPoly result(1), base = *this;
    while (e) {
        if (e & 1u)
            result = lp_mul(result, base);
        e >>= 1;
        if (e)
            base = lp_mul(base, base);
    }
    return result;
}

LaurentPoly lp_add(const LaurentPoly &p, const LaurentPoly &q) { return p + q; }

// ---------------------------------------------------------------- products

namespace {

using Accumulator = std::unordered_map<Monomial, Integer, MonomialHash>;

void accumulate_rows(std::span<const Term> rows, std::span<const Term> cols, Accumulator &acc) {
    for (auto &a : rows)
        for (auto &b : cols) {
            auto [it, inserted] = acc.try_emplace(a.monomial * b.monomial);
            if (inserted)
                it->second = a.coefficient * b.coefficient;
            else
                it->second += a.coefficient * b.coefficient;
        }
}

std::vector<Term> drain(Accumulator &acc) {
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto &[m, c] : acc)
        if (c != 0)
            out.push_back({m, std::move(c)});
    std::sort(out.begin(), out.end(), [](const Term &a, const Term &b) {
        return graded_lex(a.monomial, b.monomial) == std::strong_ordering::greater;
    });
    return out;
}

constexpr std::size_t kParallelThreshold = 4096; // |p| * |q|

} // namespace

LaurentPoly lp_mul_serial(const LaurentPoly &p, const LaurentPoly &q) {
    LaurentPoly r;
    if (p.is_zero() || q.is_zero())
        return r;
    if (q.is_monomial())
        return p.times(q.lead().monomial, q.lead().coefficient);
    if (p.is_monomial())
        return q.times(p.lead().monomial, p.lead().coefficient);
    Accumulator acc;
    acc.reserve(p.size() * q.size());
    accumulate_rows(p.terms_, q.terms_, acc);
    r.terms_ = drain(acc);
    return r;
}

LaurentPoly lp_mul_parallel(const LaurentPoly &p, const LaurentPoly &q) {
    LaurentPoly r;
    if (p.is_zero() || q.is_zero())
        return r;
    const auto &rows = p.size() >= q.size() ? p.terms_ : q.terms_;
    const auto &cols = p.size() >= q.size() ? q.terms_ : p.terms_;
    const int nthreads = std::max(1, std::min<int>(omp_get_max_threads(), static_cast<int>(rows.size())));
    std::vector<Accumulator> partial(static_cast<std::size_t>(nthreads));

    // Each thread owns a contiguous block of rows; partial sums are merged in
    // thread order, and the final sort fixes the term order.
#pragma omp parallel num_threads(nthreads)
    {
        const int t = omp_get_thread_num();
        const std::size_t n = rows.size();
        const std::size_t lo = n * static_cast<std::size_t>(t) / static_cast<std::size_t>(nthreads);
        const std::size_t hi = n * static_cast<std::size_t>(t + 1) / static_cast<std::size_t>(nthreads);
        accumulate_rows(std::span<const Term>(rows).subspan(lo, hi - lo), cols, partial[static_cast<std::size_t>(t)]);
    }

    Accumulator &total = partial.front();
    for (std::size_t t = 1; t < partial.size(); ++t)
        for (auto &[m, c] : partial[t]) {
            auto [it, inserted] = total.try_emplace(m, c);
            if (!inserted)
                it->second += c;
        }
    r.terms_ = drain(total);
    return r;
}

LaurentPoly lp_mul(const LaurentPoly &p, const LaurentPoly &q) {
    if (p.size() * q.size() >= kParallelThreshold && omp_get_max_threads() > 1 && !omp_in_parallel())
        return lp_mul_parallel(p, q);
    return lp_mul_serial(p, q);
}

// ---------------------------------------------------------------- division

namespace {

Monomial lowest_exponents(const LaurentPoly &p) {
    Monomial m = p.lead().monomial;
    for (auto &t : p.terms())
        m = exponent_floor(m, t.monomial);
    return m;
}

} // namespace

LaurentPoly lp_exact_div(const LaurentPoly &p, const LaurentPoly &d) {
    if (d.is_zero())
        throw NotDivisible("division by the zero polynomial");
    if (p.is_zero())
        return {};
    if (d.is_monomial()) {
        const auto &lt = d.lead();
        LaurentPoly r;
        std::vector<Term> out;
        out.reserve(p.size());
        for (auto &t : p.terms()) {
            if (!mpz_divisible_p(t.coefficient.get_mpz_t(), lt.coefficient.get_mpz_t()))
                throw NotDivisible("coefficient " + t.coefficient.get_str() + " not divisible by " +
                                   lt.coefficient.get_str());
            out.push_back({t.monomial / lt.monomial, t.coefficient / lt.coefficient});
        }
        return LaurentPoly::from_terms(std::move(out));
    }

    // Shift both operands into the polynomial ring, then divide there.
    const Monomial shift_p = lowest_exponents(p);
    const Monomial shift_d = lowest_exponents(d);
    const Monomial inv_p = shift_p.inverse();
    const LaurentPoly dd = d.times(shift_d.inverse());
    const Term &lead = dd.lead();

    std::map<Monomial, Integer, GradedLexGreater> rem;
    for (auto &t : p.terms())
        rem.emplace(t.monomial * inv_p, t.coefficient);

    std::vector<Term> quotient;
    while (!rem.empty()) {
        auto top = rem.begin();
        Monomial qm = top->first / lead.monomial;
        if (!qm.is_polynomial() ||
            !mpz_divisible_p(top->second.get_mpz_t(), lead.coefficient.get_mpz_t()))
            throw NotDivisible("no exact quotient: remainder leads with " + to_string(top->first));
        Integer qc = top->second / lead.coefficient;
        for (auto &t : dd.terms()) {
            auto [it, inserted] = rem.try_emplace(t.monomial * qm);
            it->second -= qc * t.coefficient;
            if (it->second == 0)
                rem.erase(it);
        }
        quotient.push_back({std::move(qm), std::move(qc)});
    }
    return LaurentPoly::from_terms(std::move(quotient)).times(shift_p / shift_d);
}

// ------------------------------------------------------------ substitution

LaurentPoly lp_substitute_monomials(const LaurentPoly &p, const MonomialMap &map) {
    std::map<VarId, Monomial> images;
    for (auto &v : p.variables()) {
        auto img = map(v);
        if (!img)
            throw UnmappedVariable("no image for variable " + to_string(v));
        images.emplace(v, std::move(*img));
    }
    std::vector<Term> out;
    out.reserve(p.size());
    for (auto &t : p.terms()) {
        Monomial m;
        for (auto &[v, e] : t.monomial.factors())
            m = m * images.at(v).pow(e);
        out.push_back({std::move(m), t.coefficient});
    }
    return LaurentPoly::from_terms(std::move(out));
}

LaurentPoly lp_substitute_monomials(const LaurentPoly &p, const std::map<VarId, Monomial> &map) {
    return lp_substitute_monomials(p, [&map](const VarId &v) -> std::optional<Monomial> {
        auto it = map.find(v);
        if (it == map.end())
            return std::nullopt;
        return it->second;
    });
}

} // namespace grothsym
