#pragma once

// Classical characters: the ring Z[y_i^{+-1}], the Weyl group action on it and
// the sl2 sequence Q_n of simple classes.

#include <string_view>
#include <vector>

#include "grothsym/polyring.hpp"

namespace grothsym {

// Finite-type Cartan matrix, nodes numbered 1..n.
class CartanData {
  public:
    // Validates: diagonal 2, off-diagonal <= 0, symmetric zero pattern and
    // positive principal minors.
    static CartanData from_rows(const std::vector<std::vector<int>> &rows);

    int rank() const { return n_; }
    int operator()(int i, int j) const { return c_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))]; }
    bool simply_laced() const { return simply_laced_; }
    const std::string &name() const { return name_; }

    long determinant() const;
    // Integer matrix adj with adj * C = det(C) * I (1-based accessor).
    std::vector<long> adjugate() const;

    friend bool operator==(const CartanData &a, const CartanData &b) { return a.c_ == b.c_; }

  private:
    int n_ = 0;
    std::vector<int> c_;
    bool simply_laced_ = true;
    std::string name_ = "custom";

    friend CartanData cartan_by_name(std::string_view);
};

// "A<n>" for n >= 1, "B2", "D4".
CartanData cartan_by_name(std::string_view name);
// Whitespace-separated integer rows, one row per line; '#' starts a comment.
CartanData parse_cartan_matrix(std::string_view text);
// A type name, or else a path to a matrix file.
CartanData load_cartan(const std::string &arg);

// a_i = prod_k y_k^{C(k,i)}.
Monomial simple_root_monomial(const CartanData &cd, int i);

// s_i(y_j) = y_j a_i^{-delta_ij}, extended as a ring homomorphism. Throws
// UnmappedVariable for variables other than y_1..y_n.
LaurentPoly weyl_reflect(const CartanData &cd, int i, const LaurentPoly &p);

bool is_invariant(const CartanData &cd, const LaurentPoly &p);

// Q_0..Q_N with Q_0 = 1, Q_1 = X, Q_{n+1} = (Q_n^2 - 1) / Q_{n-1}.
std::vector<LaurentPoly> qn_sequence(int N);

// sum_{j=0..n} y_1^{n-2j}.
LaurentPoly classical_char_sl2(int n);

} // namespace grothsym
