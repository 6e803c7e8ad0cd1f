#pragma once

// Quivers, seeds and mutation for skew-symmetric cluster algebras, plus the
// exchange-graph enumeration and the linear quivers used for TQ/QQ relations.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grothsym/polyring.hpp"

namespace grothsym {

// Vertices are addressed by position 0..n-1. b(i, j) counts arrows i -> j
// minus arrows j -> i, so the matrix is skew-symmetric by construction.
class Quiver {
  public:
    Quiver() = default;
    explicit Quiver(int n);

    int size() const { return n_; }
    int b(int i, int j) const { return b_[index(i, j)]; }
    bool is_frozen(int v) const { return frozen_[static_cast<std::size_t>(v)]; }
    void set_frozen(int v, bool f = true);
    void add_arrows(int from, int to, int multiplicity = 1);

    std::vector<int> mutable_vertices() const;

    friend bool operator==(const Quiver &, const Quiver &) = default;

  private:
    friend Quiver mutate_quiver(const Quiver &, int);
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * n_ + j); }
    void check_vertex(int v) const;

    int n_ = 0;
    std::vector<int> b_;
    std::vector<bool> frozen_;
};

// Matrix mutation at k. Arrows between frozen vertices are dropped.
Quiver mutate_quiver(const Quiver &q, int k);

struct Seed {
    Quiver quiver;
    std::vector<LaurentPoly> vars;
    std::vector<int> ids; // external vertex ids; initial variables are X[id,0]
    std::vector<std::string> labels;

    int size() const { return quiver.size(); }
    int position_of(int id) const; // throws InvalidArgument for unknown ids
};

// Initial seed with variables X[id,0]. Ids default to 1..n.
Seed initial_seed(Quiver q, std::vector<int> ids = {}, std::vector<std::string> labels = {});

Seed mutate_seed(const Seed &s, int k);

// X_k X_k' = in_product + out_product, where in_product collects arrows into k.
struct ExchangeRelation {
    LaurentPoly variable;
    LaurentPoly mutated;
    LaurentPoly in_product;
    LaurentPoly out_product;
};

ExchangeRelation exchange_relation_of(const Seed &s, int k);

// Canonical key of a seed up to simultaneous relabeling of mutable vertices
// (frozen vertices stay in place).
std::string seed_key(const Seed &s);

// Permutation p of positions with a.vars[v] == b.vars[p[v]] and matching
// quivers, or nullopt when the seeds differ.
std::optional<std::vector<int>> seed_permutation(const Seed &a, const Seed &b);

struct ExchangeEdge {
    std::size_t from;
    int vertex;
    std::size_t to;
};

struct ExchangeGraph {
    std::vector<Seed> seeds; // breadth-first discovery order
    std::vector<LaurentPoly> variables; // distinct variables, frozen ones included
    std::vector<ExchangeEdge> edges;
    bool complete = false;
};

// Breadth-first closure under mutation. Each frontier is mutated in parallel;
// insertion happens in (seed, vertex) order, so the result does not depend on
// the thread count.
ExchangeGraph enumerate_exchange_graph(const Seed &s, std::size_t max_seeds);
ExchangeGraph enumerate_exchange_graph_serial(const Seed &s, std::size_t max_seeds);

bool all_coefficients_positive(const ExchangeGraph &g);

// Path quiver on m vertices with rightward arrows, reversed between positions
// reversed_at and reversed_at+1 (1-based). Labels name prefundamental classes on
// the q-lattice.
Seed build_linear_segment(int m, std::optional<int> reversed_at = std::nullopt, bool frozen_ends = false);

// Text format: `v <id> [frozen] [label=<text>]` and `a <src> <dst> [<mult>]`.
Seed parse_seed(std::string_view text);
std::string format_quiver(const Seed &s);

} // namespace grothsym
