#pragma once

// Weyl group elements acting on weights in fundamental-weight coordinates, and
// the per-component grading that tags Y-monomials by their distance from a
// reference weight along simple roots.

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "grothsym/classchar.hpp"
#include "grothsym/polyring.hpp"

namespace grothsym {

// Coordinates on the fundamental weights, index 0 = node 1.
using Weight = std::vector<int>;

// s_i(lambda) = lambda - lambda_i alpha_i, with alpha_i the i-th column of C.
Weight reflect_weight(const CartanData &cd, int i, const Weight &w);

// Weight of a monomial in the Y family; Y[i,k] has weight omega_i. Throws
// InvalidArgument for any other family or a node beyond the rank.
Weight weight_of(const Monomial &m, int rank);

// Expansion directions of one component. profile[j] is +1 when node j+1
// expands in positive powers of A, -1 for the identity-style A^{-1} expansion.
class Grading {
  public:
    Grading(CartanData cd, std::vector<int> profile);

    const CartanData &cartan() const { return cd_; }
    const std::vector<int> &profile() const { return profile_; }
    int rank() const { return cd_.rank(); }

    // Tag of weight mu measured from ref: writing ref - mu = sum c_j alpha_j,
    // the tag is sum_j -profile[j] c_j. Throws InvalidArgument when ref - mu is
    // not in the root lattice.
    int tag(const Weight &ref, const Weight &mu) const;

    friend bool operator==(const Grading &a, const Grading &b) {
        return a.cd_ == b.cd_ && a.profile_ == b.profile_;
    }

  private:
    CartanData cd_;
    std::vector<int> profile_;
    std::vector<long> adj_;
    long det_;
};

class WeylComponent {
  public:
    static WeylComponent identity(const CartanData &cd);
    // Product s_{w[0]} s_{w[1]} ...; the stored word is a reduced one.
    static WeylComponent from_word(const CartanData &cd, const std::vector<int> &word);

    WeylComponent times_reflection(int i) const; // w s_i
    WeylComponent reflection_times(int i) const; // s_i w

    const std::vector<int> &word() const { return word_; }
    const std::vector<int> &sign_profile() const { return grading_->profile(); }
    bool is_identity() const { return word_.empty(); }
    int length() const { return static_cast<int>(word_.size()); }
    int rank() const { return grading_->rank(); }
    const CartanData &cartan() const { return grading_->cartan(); }

    Weight act(const Weight &w) const;

    // "e" or the reduced word, e.g. "s1s2".
    std::string name() const;

    const std::shared_ptr<const Grading> &grading() const { return grading_; }

    friend bool operator==(const WeylComponent &a, const WeylComponent &b) { return a.m_ == b.m_; }
    friend auto operator<=>(const WeylComponent &a, const WeylComponent &b) {
        if (a.word_.size() != b.word_.size())
            return a.word_.size() <=> b.word_.size();
        if (auto c = a.word_ <=> b.word_; c != 0)
            return c;
        return a.m_ <=> b.m_;
    }

  private:
    WeylComponent(const CartanData &cd, std::vector<int> matrix);

    std::vector<int> m_; // row-major, acts on weight coordinates
    std::vector<int> word_;
    std::shared_ptr<const Grading> grading_;
};

// All elements, sorted by length and then by reduced word. Throws
// InvalidArgument past 100000 elements.
std::vector<WeylComponent> weyl_group_elements(const CartanData &cd);

} // namespace grothsym
