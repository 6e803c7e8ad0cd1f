#include "grothsym/cluster.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "grothsym/errors.hpp"

namespace grothsym {

Quiver::Quiver(int n) : n_(n), b_(static_cast<std::size_t>(n * n), 0), frozen_(static_cast<std::size_t>(n), false) {
    if (n < 0)
        throw InvalidArgument("negative vertex count");
}

void Quiver::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
}

void Quiver::set_frozen(int v, bool f) {
    check_vertex(v);
    frozen_[static_cast<std::size_t>(v)] = f;
}

void Quiver::add_arrows(int from, int to, int multiplicity) {
    check_vertex(from);
    check_vertex(to);
    if (from == to)
        throw InvalidArgument("loops are not allowed");
    b_[index(from, to)] += multiplicity;
    b_[index(to, from)] -= multiplicity;
}

std::vector<int> Quiver::mutable_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
        if (!is_frozen(v))
            out.push_back(v);
    return out;
}

Quiver mutate_quiver(const Quiver &q, int k) {
    q.check_vertex(k);
    if (q.is_frozen(k))
        throw FrozenVertex("cannot mutate at frozen vertex " + std::to_string(k));
    Quiver r = q;
    const int n = q.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int v;
            if (i == k || j == k) {
                v = -q.b(i, j);
            } else {
                const int bik = q.b(i, k), bkj = q.b(k, j);
                const int sgn = (bik > 0) - (bik < 0);
                v = q.b(i, j) + sgn * std::max(0, bik * bkj);
            }
            if (q.is_frozen(i) && q.is_frozen(j))
                v = 0;
            r.b_[r.index(i, j)] = v;
        }
    return r;
}

// ------------------------------------------------------------------- seeds

int Seed::position_of(int id) const {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end())
        throw InvalidArgument("unknown vertex id " + std::to_string(id));
    return static_cast<int>(it - ids.begin());
}

Seed initial_seed(Quiver q, std::vector<int> ids, std::vector<std::string> labels) {
    const auto n = static_cast<std::size_t>(q.size());
    if (ids.empty()) {
        ids.resize(n);
        std::iota(ids.begin(), ids.end(), 1);
    }
    if (ids.size() != n)
        throw InvalidArgument("id count does not match vertex count");
    labels.resize(n);
    Seed s{std::move(q), {}, std::move(ids), std::move(labels)};
    for (int id : s.ids)
        s.vars.push_back(LaurentPoly::var(X(id)));
    return s;
}

ExchangeRelation exchange_relation_of(const Seed &s, int k) {
    if (k < 0 || k >= s.size())
        throw InvalidArgument("vertex " + std::to_string(k) + " out of range");
    if (s.quiver.is_frozen(k))
        throw FrozenVertex("vertex " + std::to_string(s.ids[static_cast<std::size_t>(k)]) + " is frozen");
    LaurentPoly in(1), out(1);
    for (int j = 0; j < s.size(); ++j) {
        const int bjk = s.quiver.b(j, k);
        const auto &xj = s.vars[static_cast<std::size_t>(j)];
        if (bjk > 0)
            in = in * xj.pow(static_cast<unsigned>(bjk));
        else if (bjk < 0)
            out = out * xj.pow(static_cast<unsigned>(-bjk));
    }
    const auto &xk = s.vars[static_cast<std::size_t>(k)];
    LaurentPoly mutated = lp_exact_div(in + out, xk);
    return {xk, std::move(mutated), std::move(in), std::move(out)};
}

Seed mutate_seed(const Seed &s, int k) {
    auto rel = exchange_relation_of(s, k);
    Seed r = s;
    r.quiver = mutate_quiver(s.quiver, k);
    r.vars[static_cast<std::size_t>(k)] = std::move(rel.mutated);
    return r;
}

namespace {

// Mutable positions ordered by the canonical string of their variable.
std::vector<int> canonical_order(const Seed &s, const std::vector<std::string> &names) {
    std::vector<int> order = s.quiver.mutable_vertices();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return names[static_cast<std::size_t>(a)] < names[static_cast<std::size_t>(b)];
    });
    return order;
}

std::vector<std::string> var_names(const Seed &s) {
    std::vector<std::string> names;
    names.reserve(s.vars.size());
    for (auto &v : s.vars)
        names.push_back(lp_canonical_string(v));
    return names;
}

// Full position order: frozen positions in place, then sorted mutable ones.
std::vector<int> key_order(const Seed &s, const std::vector<std::string> &names) {
    std::vector<int> order;
    for (int v = 0; v < s.size(); ++v)
        if (s.quiver.is_frozen(v))
            order.push_back(v);
    auto m = canonical_order(s, names);
    order.insert(order.end(), m.begin(), m.end());
    return order;
}

} // namespace

std::string seed_key(const Seed &s) {
    auto names = var_names(s);
    auto order = key_order(s, names);
    std::string key;
    for (int v : order) {
        key += s.quiver.is_frozen(v) ? "f:" : "m:";
        key += names[static_cast<std::size_t>(v)];
        key += ';';
    }
    key += '|';
    for (int i : order)
        for (int j : order) {
            key += std::to_string(s.quiver.b(i, j));
            key += ',';
        }
    return key;
}

std::optional<std::vector<int>> seed_permutation(const Seed &a, const Seed &b) {
    if (a.size() != b.size() || seed_key(a) != seed_key(b))
        return std::nullopt;
    auto oa = key_order(a, var_names(a));
    auto ob = key_order(b, var_names(b));
    std::vector<int> perm(static_cast<std::size_t>(a.size()));
    for (std::size_t t = 0; t < oa.size(); ++t)
        perm[static_cast<std::size_t>(oa[t])] = ob[t];
    return perm;
}

// ------------------------------------------------------------- enumeration

namespace {

template <bool Parallel>
ExchangeGraph enumerate(const Seed &start, std::size_t max_seeds) {
    ExchangeGraph g;
    std::unordered_map<std::string, std::size_t> index;
    if (max_seeds == 0)
        return g;
    g.seeds.push_back(start);
    index.emplace(seed_key(start), 0);
    const auto mutables = start.quiver.mutable_vertices();

    std::vector<std::size_t> frontier{0};
    bool truncated = false;
    while (!frontier.empty() && !truncated) {
        const std::size_t ntasks = frontier.size() * mutables.size();
        std::vector<Seed> results(ntasks);
        std::vector<std::string> keys(ntasks);
        const auto body = [&](std::size_t t) {
            const auto &src = g.seeds[frontier[t / mutables.size()]];
            results[t] = mutate_seed(src, mutables[t % mutables.size()]);
            keys[t] = seed_key(results[t]);
        };
        if constexpr (Parallel) {
            const auto n = static_cast<std::ptrdiff_t>(ntasks);
#pragma omp parallel for schedule(dynamic)
            for (std::ptrdiff_t t = 0; t < n; ++t)
                body(static_cast<std::size_t>(t));
        } else {
            for (std::size_t t = 0; t < ntasks; ++t)
                body(t);
        }

        std::vector<std::size_t> next;
        for (std::size_t t = 0; t < ntasks; ++t) {
            const std::size_t from = frontier[t / mutables.size()];
            const int vertex = mutables[t % mutables.size()];
            auto it = index.find(keys[t]);
            if (it != index.end()) {
                g.edges.push_back({from, vertex, it->second});
                continue;
            }
            if (g.seeds.size() >= max_seeds) {
                truncated = true;
                break;
            }
            const std::size_t id = g.seeds.size();
            index.emplace(std::move(keys[t]), id);
            g.seeds.push_back(std::move(results[t]));
            g.edges.push_back({from, vertex, id});
            next.push_back(id);
        }
        frontier = std::move(next);
    }
    g.complete = !truncated;

    std::map<std::string, const LaurentPoly *> distinct;
    for (auto &s : g.seeds)
        for (auto &v : s.vars)
            distinct.emplace(lp_canonical_string(v), &v);
    std::vector<std::pair<std::string, const LaurentPoly *>> sorted(distinct.begin(), distinct.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) {
        return a.second->size() < b.second->size();
    });
    for (auto &[name, p] : sorted)
        g.variables.push_back(*p);
    return g;
}

} // namespace

ExchangeGraph enumerate_exchange_graph(const Seed &s, std::size_t max_seeds) {
    return enumerate<true>(s, max_seeds);
}

ExchangeGraph enumerate_exchange_graph_serial(const Seed &s, std::size_t max_seeds) {
    return enumerate<false>(s, max_seeds);
}

bool all_coefficients_positive(const ExchangeGraph &g) {
    for (auto &v : g.variables)
        for (auto &t : v.terms())
            if (t.coefficient <= 0)
                return false;
    return true;
}

// ------------------------------------------------------------ constructions

Seed build_linear_segment(int m, std::optional<int> reversed_at, bool frozen_ends) {
    if (m < 1)
        throw InvalidArgument("segment length must be >= 1");
    if (reversed_at && (*reversed_at < 1 || *reversed_at >= m))
        throw InvalidArgument("reversal position must satisfy 1 <= position < length");
    Quiver q(m);
    for (int v = 0; v + 1 < m; ++v) {
        if (reversed_at && v + 1 == *reversed_at)
            q.add_arrows(v + 1, v);
        else
            q.add_arrows(v, v + 1);
    }
    if (frozen_ends) {
        q.set_frozen(0);
        q.set_frozen(m - 1);
    }
    std::vector<std::string> labels;
    for (int j = 1; j <= m; ++j) {
        if (!reversed_at) {
            labels.push_back("L+[1," + std::to_string(2 * (j - 1)) + "]");
        } else if (j <= *reversed_at) {
            labels.push_back("L+[1," + std::to_string(2 * (*reversed_at - j)) + "]");
        } else {
            labels.push_back("L-[1," + std::to_string(-2 * (j - *reversed_at)) + "]");
        }
    }
    return initial_seed(std::move(q), {}, std::move(labels));
}

// ------------------------------------------------------------- text format

Seed parse_seed(std::string_view text) {
    struct Vertex {
        int id;
        bool frozen;
        std::string label;
    };
    struct Arrow {
        int src, dst, mult, line;
    };
    std::vector<Vertex> vertices;
    std::vector<Arrow> arrows;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    auto fail = [&lineno](const std::string &what) -> void {
        throw ParseError("quiver line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind))
            continue;
        if (kind == "v") {
            Vertex v{0, false, {}};
            if (!(ls >> v.id))
                fail("expected vertex id");
            if (v.id < 1)
                fail("vertex ids must be >= 1");
            std::string tok;
            while (ls >> tok) {
                if (tok == "frozen")
                    v.frozen = true;
                else if (tok.rfind("label=", 0) == 0)
                    v.label = tok.substr(6);
                else
                    fail("unexpected token '" + tok + "'");
            }
            for (auto &o : vertices)
                if (o.id == v.id)
                    fail("duplicate vertex " + std::to_string(v.id));
            vertices.push_back(std::move(v));
        } else if (kind == "a") {
            Arrow a{0, 0, 1, lineno};
            if (!(ls >> a.src >> a.dst))
                fail("expected arrow endpoints");
            if (!(ls >> a.mult))
                a.mult = 1;
            else if (a.mult < 1)
                fail("arrow multiplicity must be >= 1");
            std::string extra;
            if (ls.clear(), ls >> extra)
                fail("unexpected token '" + extra + "'");
            arrows.push_back(a);
        } else {
            fail("unknown record '" + kind + "'");
        }
    }
    if (vertices.empty())
        throw ParseError("quiver has no vertices");
    Quiver q(static_cast<int>(vertices.size()));
    std::vector<int> ids;
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        ids.push_back(vertices[v].id);
        labels.push_back(vertices[v].label);
        if (vertices[v].frozen)
            q.set_frozen(static_cast<int>(v));
    }
    auto pos = [&ids](int id, int line) {
        auto it = std::find(ids.begin(), ids.end(), id);
        if (it == ids.end())
            throw ParseError("quiver line " + std::to_string(line) + ": unknown vertex " + std::to_string(id));
        return static_cast<int>(it - ids.begin());
    };
    for (auto &a : arrows) {
        if (a.src == a.dst)
            throw ParseError("quiver line " + std::to_string(a.line) + ": loops are not allowed");
        q.add_arrows(pos(a.src, a.line), pos(a.dst, a.line), a.mult);
    }
    return initial_seed(std::move(q), std::move(ids), std::move(labels));
}

std::string format_quiver(const Seed &s) {
    std::string out;
    for (int v = 0; v < s.size(); ++v) {
        out += "v " + std::to_string(s.ids[static_cast<std::size_t>(v)]);
        if (s.quiver.is_frozen(v))
            out += " frozen";
        if (!s.labels[static_cast<std::size_t>(v)].empty())
            out += " label=" + s.labels[static_cast<std::size_t>(v)];
        out += '\n';
    }
    for (int i = 0; i < s.size(); ++i)
        for (int j = 0; j < s.size(); ++j)
            if (int m = s.quiver.b(i, j); m > 0) {
                out += "a " + std::to_string(s.ids[static_cast<std::size_t>(i)]) + ' ' +
                       std::to_string(s.ids[static_cast<std::size_t>(j)]);
                if (m > 1)
                    out += ' ' + std::to_string(m);
                out += '\n';
            }
    return out;
}

} // namespace grothsym
