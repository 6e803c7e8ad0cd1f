#pragma once

// q-characters in Z[Y_{i,k}^{+-1}] on the integer q-lattice (a = q^k), the
// root monomials A_{i,k}, sl2 fundamental and Kirillov-Reshetikhin classes,
// and the substitution Y_{i,k} -> L_{i,k-1} / L_{i,k+1}.

#include <span>

#include "grothsym/classchar.hpp"
#include "grothsym/polyring.hpp"

namespace grothsym {

struct LatticeWindow {
    int lo = -4096;
    int hi = 4096;

    bool contains(int k) const { return lo <= k && k <= hi; }
    int points() const { return hi - lo + 1; }
};

// Parses "lo..hi" (lo <= hi).
LatticeWindow parse_window(std::string_view text);

class YContext {
  public:
    // Throws InvalidArgument unless the Cartan matrix is simply laced.
    explicit YContext(CartanData cd, LatticeWindow window = {});

    const CartanData &cartan() const { return cd_; }
    const LatticeWindow &window() const { return window_; }
    int rank() const { return cd_.rank(); }

  private:
    CartanData cd_;
    LatticeWindow window_;
};

// A_{i,k} = Y_{i,k-1} Y_{i,k+1} prod_{j : C(j,i) = -1} Y_{j,k}^{-1}.
// Throws WindowOverflow when k-1 or k+1 leaves the window.
Monomial a_monomial(const YContext &ctx, int i, int k);

// Y_{1,k} + Y_{1,k+2}^{-1}.
LaurentPoly fundamental_qchar_sl2(int k);

// Kirillov-Reshetikhin class of length m starting at k, via
// chi(m,k) = chi(1,k) chi(m-1,k+2) - chi(m-2,k+4).
LaurentPoly kr_qchar_sl2(int m, int k);

// Y_{i,k} -> y_i; other variables are left alone.
LaurentPoly restrict_classical(const LaurentPoly &p);

// Y_{i,k} -> L_{i,k-1} L_{i,k+1}^{-1}; other variables are left alone.
LaurentPoly prefundamental_substitute(const LaurentPoly &p);

// L_{1,k+1} * subst(chi) == L_{1,k-1} + L_{1,k+3}.
bool check_tq_sl2(int k, const LaurentPoly &chi);
inline bool check_tq_sl2(int k) { return check_tq_sl2(k, fundamental_qchar_sl2(k)); }

struct WindowCheck {
    int points = 0;
    std::vector<int> failures; // ascending lattice points
    bool ok() const { return failures.empty(); }
};

// check_tq_sl2 at every point of the window, in parallel.
WindowCheck check_tq_window(const LatticeWindow &w);
WindowCheck check_tq_window_serial(const LatticeWindow &w);

} // namespace grothsym
