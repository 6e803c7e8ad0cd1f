#include "grothsym/weyl_group.hpp"

#include <set>

#include "grothsym/errors.hpp"

namespace grothsym {

namespace {

std::size_t at(int n, int r, int c) { return static_cast<std::size_t>(r * n + c); }

std::vector<int> identity_matrix(int n) {
    std::vector<int> m(static_cast<std::size_t>(n * n), 0);
    for (int r = 0; r < n; ++r)
        m[at(n, r, r)] = 1;
    return m;
}

std::vector<int> reflection_matrix(const CartanData &cd, int i) {
    const int n = cd.rank();
    auto m = identity_matrix(n);
    for (int r = 0; r < n; ++r)
        m[at(n, r, i - 1)] -= cd(r + 1, i);
    return m;
}

std::vector<int> matmul(int n, const std::vector<int> &a, const std::vector<int> &b) {
    std::vector<int> c(static_cast<std::size_t>(n * n), 0);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            const int x = a[at(n, r, k)];
            if (x == 0)
                continue;
            for (int col = 0; col < n; ++col)
                c[at(n, r, col)] += x * b[at(n, k, col)];
        }
    return c;
}

// Sign of w(alpha_j) as a root: +1 positive, -1 negative.
int root_sign(const CartanData &cd, const std::vector<long> &adj, const std::vector<int> &m, int j) {
    const int n = cd.rank();
    std::vector<long> v(static_cast<std::size_t>(n), 0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            v[static_cast<std::size_t>(r)] += static_cast<long>(m[at(n, r, c)]) * cd(c + 1, j);
    long sum = 0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            sum += adj[at(n, r, c)] * v[static_cast<std::size_t>(c)];
    return sum > 0 ? 1 : -1;
}

void check_node(const CartanData &cd, int i) {
    if (i < 1 || i > cd.rank())
        throw InvalidArgument("node " + std::to_string(i) + " outside 1.." + std::to_string(cd.rank()));
}

} // namespace

Weight reflect_weight(const CartanData &cd, int i, const Weight &w) {
    check_node(cd, i);
    if (static_cast<int>(w.size()) != cd.rank())
        throw InvalidArgument("weight has the wrong rank");
    Weight out = w;
    const int li = w[static_cast<std::size_t>(i - 1)];
    for (int r = 0; r < cd.rank(); ++r)
        out[static_cast<std::size_t>(r)] -= li * cd(r + 1, i);
    return out;
}

Weight weight_of(const Monomial &m, int rank) {
    Weight w(static_cast<std::size_t>(rank), 0);
    for (auto &[v, e] : m.factors()) {
        if (v.family != Family::Y || v.i > rank)
            throw InvalidArgument("not a Y-monomial of rank " + std::to_string(rank) + ": " + to_string(m));
        w[static_cast<std::size_t>(v.i - 1)] += e;
    }
    return w;
}

Grading::Grading(CartanData cd, std::vector<int> profile)
    : cd_(std::move(cd)), profile_(std::move(profile)), adj_(cd_.adjugate()), det_(cd_.determinant()) {
    if (static_cast<int>(profile_.size()) != cd_.rank())
        throw InvalidArgument("sign profile has the wrong rank");
}

int Grading::tag(const Weight &ref, const Weight &mu) const {
    const int n = rank();
    long num = 0;
    for (int j = 0; j < n; ++j) {
        long cj = 0;
        for (int c = 0; c < n; ++c)
            cj += adj_[at(n, j, c)] * (ref[static_cast<std::size_t>(c)] - mu[static_cast<std::size_t>(c)]);
        if (cj % det_ != 0)
            throw InvalidArgument("weights differ by a non-root-lattice element");
        num -= profile_[static_cast<std::size_t>(j)] * (cj / det_);
    }
    return static_cast<int>(num);
}

WeylComponent::WeylComponent(const CartanData &cd, std::vector<int> matrix) : m_(std::move(matrix)) {
    const int n = cd.rank();
    const auto adj = cd.adjugate();
    std::vector<int> profile(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j)
        profile[static_cast<std::size_t>(j - 1)] = root_sign(cd, adj, m_, j) < 0 ? 1 : -1;

    // Peel right descents: w(alpha_i) < 0 means w = (w s_i) s_i with w s_i shorter.
    std::vector<int> rev;
    auto cur = m_;
    const auto id = identity_matrix(n);
    while (cur != id) {
        int i = 1;
        while (root_sign(cd, adj, cur, i) > 0)
            ++i;
        rev.push_back(i);
        cur = matmul(n, cur, reflection_matrix(cd, i));
    }
    word_.assign(rev.rbegin(), rev.rend());
    grading_ = std::make_shared<const Grading>(cd, std::move(profile));
}

WeylComponent WeylComponent::identity(const CartanData &cd) { return WeylComponent(cd, identity_matrix(cd.rank())); }

WeylComponent WeylComponent::from_word(const CartanData &cd, const std::vector<int> &word) {
    auto m = identity_matrix(cd.rank());
    for (int i : word) {
        check_node(cd, i);
        m = matmul(cd.rank(), m, reflection_matrix(cd, i));
    }
    return WeylComponent(cd, std::move(m));
}

WeylComponent WeylComponent::times_reflection(int i) const {
    check_node(cartan(), i);
    return WeylComponent(cartan(), matmul(rank(), m_, reflection_matrix(cartan(), i)));
}

WeylComponent WeylComponent::reflection_times(int i) const {
    check_node(cartan(), i);
    return WeylComponent(cartan(), matmul(rank(), reflection_matrix(cartan(), i), m_));
}

Weight WeylComponent::act(const Weight &w) const {
    const int n = rank();
    Weight out(static_cast<std::size_t>(n), 0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            out[static_cast<std::size_t>(r)] += m_[at(n, r, c)] * w[static_cast<std::size_t>(c)];
    return out;
}

std::string WeylComponent::name() const {
    if (word_.empty())
        return "e";
    std::string s;
    for (int i : word_)
        s += "s" + std::to_string(i);
    return s;
}

std::vector<WeylComponent> weyl_group_elements(const CartanData &cd) {
    std::set<WeylComponent> seen;
    std::vector<WeylComponent> frontier{WeylComponent::identity(cd)};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<WeylComponent> next;
        for (auto &w : frontier)
            for (int i = 1; i <= cd.rank(); ++i) {
                auto v = w.times_reflection(i);
                if (seen.insert(v).second) {
                    if (seen.size() > 100000)
                        throw InvalidArgument("Weyl group too large");
                    next.push_back(std::move(v));
                }
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

} // namespace grothsym
