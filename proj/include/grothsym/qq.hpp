#pragma once

// Tables of exact rational values Q^{label}_k on the q-lattice, the sl2
// quantum Wronskian solver and a pointwise QQ-system checker.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "grothsym/classchar.hpp"
#include "grothsym/qchar.hpp"

namespace grothsym {

using Rational = mpq_class;

class QTable {
  public:
    // Throws InvalidArgument when k has the wrong parity for the label.
    void set(const std::string &label, int k, const Rational &v);

    bool has_label(const std::string &label) const { return parity_.count(label) > 0; }
    std::optional<Rational> get(const std::string &label, int k) const;
    // Throws MissingTable.
    const Rational &at(const std::string &label, int k) const;
    std::optional<int> parity(const std::string &label) const;

    std::vector<std::string> labels() const;
    const std::map<std::pair<std::string, int>, Rational> &values() const { return values_; }

    // Copy of one label's entries under a new name.
    QTable relabeled(const std::string &from, const std::string &to) const;
    void merge(const QTable &other);

  private:
    std::map<std::pair<std::string, int>, Rational> values_;
    std::map<std::string, int> parity_;
};

// Lines `<label> <k> <num>/<den>` (a bare integer is accepted); '#' comments.
QTable parse_qtable(std::string_view text);
std::string format_qtable(const QTable &t);

// Solves Qt[k+1] Q[k-1] - Qt[k-1] Q[k+1] = 1 for Qt on the sublattice of
// initial_index inside the window, Q read from label "w1". The result has
// label "-w1". Throws ZeroDivision when a needed Q value is 0 and
// MissingTable when one is absent.
QTable wronskian_solve_sl2(const QTable &q, const Rational &initial, const LatticeWindow &window,
                           int initial_index = -1);

struct QQFailure {
    int node = 0;
    int k = 0;
    Rational lhs;
    Rational rhs;
};

struct QQCheck {
    int points = 0;
    std::optional<QQFailure> first_failure;
    bool ok() const { return !first_failure; }
};

struct QQLabels {
    std::string w;                       // w(omega_i)
    std::string ws;                      // (w s_i)(omega_i)
    std::vector<std::string> neighbours; // w(omega_j) for C(i,j) = -1
};

// Default labels for w = e: "w<i>", "s<i>w<i>" and "w<j>". In rank 1 "-w1"
// stands in for "s1w1".
QQLabels identity_labels(const CartanData &cd, int i, const QTable &t);

// Qws[k+1] Qw[k-1] - Qws[k-1] Qw[k+1] = prod_j Qj[k] at every k with k+-1 in
// the window on the lattice of the w label.
QQCheck check_qq_relation(const CartanData &cd, int i, const QQLabels &labels, const QTable &t,
                          const LatticeWindow &window);

// All nodes with identity labels; the first failure is the smallest (node, k).
QQCheck check_qq_system(const CartanData &cd, const QTable &t, const LatticeWindow &window);

// Window spanned by the table's entries.
LatticeWindow table_window(const QTable &t);

} // namespace grothsym
