#include "grothsym/qchar.hpp"

#include <charconv>

#include "grothsym/errors.hpp"

namespace grothsym {

LatticeWindow parse_window(std::string_view text) {
    auto dots = text.find("..");
    if (dots == std::string_view::npos)
        throw ParseError("window must look like lo..hi, got '" + std::string(text) + "'");
    auto num = [&text](std::string_view s) {
        int v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size() || s.empty())
            throw ParseError("bad window bound in '" + std::string(text) + "'");
        return v;
    };
    LatticeWindow w{num(text.substr(0, dots)), num(text.substr(dots + 2))};
    if (w.lo > w.hi)
        throw InvalidArgument("empty window '" + std::string(text) + "'");
    return w;
}

YContext::YContext(CartanData cd, LatticeWindow window) : cd_(std::move(cd)), window_(window) {
    if (!cd_.simply_laced())
        throw InvalidArgument("q-character computations require a simply-laced Cartan matrix");
    if (window_.lo > window_.hi)
        throw InvalidArgument("empty lattice window");
}

Monomial a_monomial(const YContext &ctx, int i, int k) {
    if (i < 1 || i > ctx.rank())
        throw InvalidArgument("node " + std::to_string(i) + " out of range");
    if (!ctx.window().contains(k - 1) || !ctx.window().contains(k + 1))
        throw WindowOverflow("A[" + std::to_string(i) + "," + std::to_string(k) + "] leaves the lattice window");
    std::vector<Monomial::Factor> fs{{Yv(i, k - 1), 1}, {Yv(i, k + 1), 1}};
    for (int j = 1; j <= ctx.rank(); ++j)
        if (j != i && ctx.cartan()(j, i) == -1)
            fs.emplace_back(Yv(j, k), -1);
    return Monomial(std::move(fs));
}

LaurentPoly fundamental_qchar_sl2(int k) {
    return LaurentPoly::var(Yv(1, k)) + LaurentPoly::var(Yv(1, k + 2), -1);
}

LaurentPoly kr_qchar_sl2(int m, int k) {
    if (m < 0)
        throw InvalidArgument("KR length must be >= 0");
    if (m == 0)
        return LaurentPoly(1);
    // chi(j, k + 2(m-j)) for j = 0..m, built from the top down.
    LaurentPoly older(1);                                      // j - 2
    LaurentPoly old = fundamental_qchar_sl2(k + 2 * (m - 1)); // j - 1
    for (int j = 2; j <= m; ++j) {
        const int start = k + 2 * (m - j);
        LaurentPoly next = fundamental_qchar_sl2(start) * old - older;
        older = std::move(old);
        old = std::move(next);
    }
    return old;
}

namespace {

LaurentPoly map_y(const LaurentPoly &p, const std::function<Monomial(const VarId &)> &f) {
    return lp_substitute_monomials(p, [&f](const VarId &v) -> std::optional<Monomial> {
        if (v.family != Family::Y)
            return Monomial::var(v);
        return f(v);
    });
}

} // namespace

LaurentPoly restrict_classical(const LaurentPoly &p) {
    return map_y(p, [](const VarId &v) { return Monomial::var(yv(v.i)); });
}

LaurentPoly prefundamental_substitute(const LaurentPoly &p) {
    return map_y(p, [](const VarId &v) {
        return Monomial::var(Lv(v.i, v.k - 1)) * Monomial::var(Lv(v.i, v.k + 1), -1);
    });
}

bool check_tq_sl2(int k, const LaurentPoly &chi) {
    const LaurentPoly lhs = LaurentPoly::var(Lv(1, k + 1)) * prefundamental_substitute(chi);
    const LaurentPoly rhs = LaurentPoly::var(Lv(1, k - 1)) + LaurentPoly::var(Lv(1, k + 3));
    return lhs == rhs;
}

namespace {

template <bool Parallel>
WindowCheck tq_window(const LatticeWindow &w) {
    const int n = w.points();
    std::vector<char> ok(static_cast<std::size_t>(n));
    if constexpr (Parallel) {
#pragma omp parallel for
        for (int t = 0; t < n; ++t)
            ok[static_cast<std::size_t>(t)] = check_tq_sl2(w.lo + t);
    } else {
        for (int t = 0; t < n; ++t)
            ok[static_cast<std::size_t>(t)] = check_tq_sl2(w.lo + t);
    }
    WindowCheck r{n, {}};
    for (int t = 0; t < n; ++t)
        if (!ok[static_cast<std::size_t>(t)])
            r.failures.push_back(w.lo + t);
    return r;
}

} // namespace

WindowCheck check_tq_window(const LatticeWindow &w) { return tq_window<true>(w); }
WindowCheck check_tq_window_serial(const LatticeWindow &w) { return tq_window<false>(w); }

} // namespace grothsym
