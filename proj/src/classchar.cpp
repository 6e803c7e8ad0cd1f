#include "grothsym/classchar.hpp"

#include <fstream>
#include <sstream>

#include "grothsym/errors.hpp"

namespace grothsym {

namespace {

// Fraction-free Gaussian elimination on a square integer matrix.
long bareiss_det(std::vector<long> m, int n) {
    if (n == 0)
        return 1;
    long sign = 1, prev = 1;
    auto at = [&m, n](int i, int j) -> long & { return m[static_cast<std::size_t>(i * n + j)]; };
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int swap = -1;
            for (int r = k + 1; r < n; ++r)
                if (at(r, k) != 0) {
                    swap = r;
                    break;
                }
            if (swap < 0)
                return 0;
            for (int j = 0; j < n; ++j)
                std::swap(at(k, j), at(swap, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

long minor_det(const std::vector<int> &c, int n, const std::vector<int> &rows, const std::vector<int> &cols) {
    const int m = static_cast<int>(rows.size());
    std::vector<long> sub;
    sub.reserve(static_cast<std::size_t>(m * m));
    for (int r : rows)
        for (int col : cols)
            sub.push_back(c[static_cast<std::size_t>(r * n + col)]);
    return bareiss_det(std::move(sub), m);
}

} // namespace

CartanData CartanData::from_rows(const std::vector<std::vector<int>> &rows) {
    CartanData cd;
    cd.n_ = static_cast<int>(rows.size());
    if (cd.n_ == 0)
        throw InvalidArgument("empty Cartan matrix");
    for (auto &r : rows) {
        if (static_cast<int>(r.size()) != cd.n_)
            throw InvalidArgument("Cartan matrix is not square");
        cd.c_.insert(cd.c_.end(), r.begin(), r.end());
    }
    const int n = cd.n_;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const int v = cd(i, j);
            if (i == j && v != 2)
                throw InvalidArgument("Cartan diagonal entries must be 2");
            if (i != j && v > 0)
                throw InvalidArgument("Cartan off-diagonal entries must be <= 0");
            if (i != j && (v == 0) != (cd(j, i) == 0))
                throw InvalidArgument("Cartan matrix zero pattern is not symmetric");
            if (i != j && (v != cd(j, i) || v < -1))
                cd.simply_laced_ = false;
        }
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> idx;
        for (int b = 0; b < n; ++b)
            if (mask & (1u << b))
                idx.push_back(b);
        if (minor_det(cd.c_, n, idx, idx) <= 0)
            throw InvalidArgument("Cartan matrix is not of finite type");
    }
    return cd;
}

long CartanData::determinant() const {
    return bareiss_det(std::vector<long>(c_.begin(), c_.end()), n_);
}

std::vector<long> CartanData::adjugate() const {
    std::vector<long> adj(static_cast<std::size_t>(n_ * n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            std::vector<int> rows, cols;
            for (int r = 0; r < n_; ++r)
                if (r != j)
                    rows.push_back(r);
            for (int c = 0; c < n_; ++c)
                if (c != i)
                    cols.push_back(c);
            const long m = minor_det(c_, n_, rows, cols);
            adj[static_cast<std::size_t>(i * n_ + j)] = ((i + j) % 2 ? -m : m);
        }
    return adj;
}

CartanData cartan_by_name(std::string_view name) {
    std::vector<std::vector<int>> rows;
    if (name == "B2") {
        rows = {{2, -1}, {-2, 2}};
    } else if (name == "D4") {
        rows = {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
    } else if (name.size() >= 2 && name[0] == 'A') {
        int n = 0;
        try {
            std::size_t used = 0;
            n = std::stoi(std::string(name.substr(1)), &used);
            if (used != name.size() - 1)
                n = 0;
        } catch (const std::exception &) {
            n = 0;
        }
        if (n < 1 || n > 16)
            throw InvalidArgument("unsupported Cartan type '" + std::string(name) + "'");
        rows.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
        for (int i = 0; i < n; ++i) {
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
            if (i + 1 < n) {
                rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] = -1;
                rows[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] = -1;
            }
        }
    } else {
        throw InvalidArgument("unsupported Cartan type '" + std::string(name) + "'");
    }
    auto cd = CartanData::from_rows(rows);
    cd.name_ = std::string(name);
    return cd;
}

CartanData parse_cartan_matrix(std::string_view text) {
    std::vector<std::vector<int>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        std::istringstream ls(line);
        std::vector<int> row;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                row.push_back(std::stoi(tok, &used));
                if (used != tok.size())
                    throw ParseError("bad Cartan entry '" + tok + "'");
            } catch (const std::logic_error &) {
                throw ParseError("bad Cartan entry '" + tok + "'");
            }
        }
        if (!row.empty())
            rows.push_back(std::move(row));
    }
    return CartanData::from_rows(rows);
}

CartanData load_cartan(const std::string &arg) {
    try {
        return cartan_by_name(arg);
    } catch (const InvalidArgument &) {
    }
    std::ifstream f(arg);
    if (!f)
        throw InvalidArgument("'" + arg + "' is neither a Cartan type nor a readable matrix file");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_cartan_matrix(ss.str());
}

Monomial simple_root_monomial(const CartanData &cd, int i) {
    if (i < 1 || i > cd.rank())
        throw InvalidArgument("node " + std::to_string(i) + " out of range");
    std::vector<Monomial::Factor> fs;
    for (int k = 1; k <= cd.rank(); ++k)
        fs.emplace_back(yv(k), cd(k, i));
    return Monomial(std::move(fs));
}

LaurentPoly weyl_reflect(const CartanData &cd, int i, const LaurentPoly &p) {
    const Monomial a_inv = simple_root_monomial(cd, i).inverse();
    return lp_substitute_monomials(p, [&](const VarId &v) -> std::optional<Monomial> {
        if (v.family != Family::y || v.i > cd.rank())
            return std::nullopt;
        Monomial img = Monomial::var(v);
        return v.i == i ? img * a_inv : img;
    });
}

bool is_invariant(const CartanData &cd, const LaurentPoly &p) {
    for (int i = 1; i <= cd.rank(); ++i)
        if (weyl_reflect(cd, i, p) != p)
            return false;
    return true;
}

std::vector<LaurentPoly> qn_sequence(int N) {
    if (N < 0)
        throw InvalidArgument("sequence length must be >= 0");
    std::vector<LaurentPoly> q{LaurentPoly(1)};
    if (N >= 1)
        q.push_back(LaurentPoly::var(X(1)));
    for (int n = 1; n < N; ++n) {
        const auto &cur = q[static_cast<std::size_t>(n)];
        q.push_back(lp_exact_div(cur * cur - 1, q[static_cast<std::size_t>(n - 1)]));
    }
    return q;
}

LaurentPoly classical_char_sl2(int n) {
    if (n < 0)
        throw InvalidArgument("highest weight must be >= 0");
    LaurentPoly r;
    for (int j = 0; j <= n; ++j)
        r += LaurentPoly::var(yv(1), n - 2 * j);
    return r;
}

} // namespace grothsym
