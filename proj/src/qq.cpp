#include "grothsym/qq.hpp"

#include <algorithm>
#include <sstream>

#include "grothsym/errors.hpp"

namespace grothsym {

namespace {

int parity_of(int k) { return ((k % 2) + 2) % 2; }

std::string point(const std::string &label, int k) { return label + " at k=" + std::to_string(k); }

} // namespace

void QTable::set(const std::string &label, int k, const Rational &v) {
    if (label.empty() || label.find_first_of(" \t\r\n#") != std::string::npos)
        throw InvalidArgument("bad table label \"" + label + "\"");
    auto [it, fresh] = parity_.try_emplace(label, parity_of(k));
    if (!fresh && it->second != parity_of(k))
        throw InvalidArgument("table " + label + " mixes lattice parities at k=" + std::to_string(k));
    Rational c = v;
    c.canonicalize();
    values_.insert_or_assign({label, k}, c);
}

std::optional<Rational> QTable::get(const std::string &label, int k) const {
    auto it = values_.find({label, k});
    if (it == values_.end())
        return std::nullopt;
    return it->second;
}

const Rational &QTable::at(const std::string &label, int k) const {
    auto it = values_.find({label, k});
    if (it == values_.end())
        throw MissingTable("missing table entry " + point(label, k));
    return it->second;
}

std::optional<int> QTable::parity(const std::string &label) const {
    auto it = parity_.find(label);
    if (it == parity_.end())
        return std::nullopt;
    return it->second;
}

std::vector<std::string> QTable::labels() const {
    std::vector<std::string> out;
    for (auto &[l, p] : parity_)
        out.push_back(l);
    return out;
}

QTable QTable::relabeled(const std::string &from, const std::string &to) const {
    QTable out;
    for (auto &[key, v] : values_)
        if (key.first == from)
            out.set(to, key.second, v);
    return out;
}

void QTable::merge(const QTable &other) {
    for (auto &[key, v] : other.values_)
        set(key.first, key.second, v);
}

QTable parse_qtable(std::string_view text) {
    QTable t;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        std::istringstream ls(line);
        std::string label, value, extra;
        long k = 0;
        if (!(ls >> label))
            continue;
        auto fail = [&](const std::string &what) -> void {
            throw ParseError("table line " + std::to_string(lineno) + ": " + what);
        };
        if (!(ls >> k) || !(ls >> value))
            fail("expected `<label> <k> <num>/<den>`");
        if (ls >> extra)
            fail("trailing text \"" + extra + "\"");
        Rational v;
        const bool ok = !value.empty() && value.find_first_not_of("+-0123456789/") == std::string::npos &&
                        v.set_str(value.front() == '+' ? value.substr(1) : value, 10) == 0;
        if (!ok)
            fail("bad rational \"" + value + "\"");
        if (v.get_den() == 0)
            fail("zero denominator");
        try {
            t.set(label, static_cast<int>(k), v);
        } catch (const InvalidArgument &e) {
            fail(e.what());
        }
    }
    return t;
}

std::string format_qtable(const QTable &t) {
    std::string out;
    for (auto &[key, v] : t.values())
        out += key.first + " " + std::to_string(key.second) + " " + v.get_num().get_str() + "/" +
               v.get_den().get_str() + "\n";
    return out;
}

QTable wronskian_solve_sl2(const QTable &q, const Rational &initial, const LatticeWindow &window,
                           int initial_index) {
    if (!window.contains(initial_index))
        throw InvalidArgument("initial index " + std::to_string(initial_index) + " outside the window");
    const std::string Q = "w1", Qt = "-w1";
    auto nonzero = [&](int k) -> const Rational & {
        const Rational &v = q.at(Q, k);
        if (v == 0)
            throw ZeroDivision("Q vanishes at k=" + std::to_string(k));
        return v;
    };
    QTable out;
    out.set(Qt, initial_index, initial);
    Rational prev = initial;
    for (int k = initial_index + 2; k <= window.hi; k += 2) {
        Rational next = (1 + prev * q.at(Q, k)) / nonzero(k - 2);
        out.set(Qt, k, next);
        prev = next;
    }
    prev = initial;
    for (int k = initial_index - 2; k >= window.lo; k -= 2) {
        Rational next = (prev * q.at(Q, k) - 1) / nonzero(k + 2);
        out.set(Qt, k, next);
        prev = next;
    }

    QTable both = q;
    both.merge(out);
    const CartanData a1 = cartan_by_name("A1");
    LatticeWindow sub{window.lo, window.hi};
    if (!check_qq_relation(a1, 1, {Q, Qt, {}}, both, sub).ok())
        throw std::logic_error("Wronskian solution failed to re-verify");
    return out;
}

QQLabels identity_labels(const CartanData &cd, int i, const QTable &t) {
    QQLabels l;
    l.w = "w" + std::to_string(i);
    l.ws = "s" + std::to_string(i) + "w" + std::to_string(i);
    if (cd.rank() == 1 && !t.has_label(l.ws) && t.has_label("-w1"))
        l.ws = "-w1";
    for (int j = 1; j <= cd.rank(); ++j)
        if (j != i && cd(i, j) == -1)
            l.neighbours.push_back("w" + std::to_string(j));
    return l;
}

QQCheck check_qq_relation(const CartanData &cd, int i, const QQLabels &labels, const QTable &t,
                          const LatticeWindow &window) {
    if (!cd.simply_laced())
        throw InvalidArgument("the QQ checker needs a simply-laced Cartan matrix");
    if (i < 1 || i > cd.rank())
        throw InvalidArgument("node " + std::to_string(i) + " outside 1.." + std::to_string(cd.rank()));
    for (const std::string *l : {&labels.w, &labels.ws})
        if (!t.has_label(*l))
            throw MissingTable("missing table " + *l);
    for (auto &l : labels.neighbours)
        if (!t.has_label(l))
            throw MissingTable("missing table " + l);

    QQCheck out;
    const int base = *t.parity(labels.w);
    int start = window.lo + 1;
    if (parity_of(start) == base)
        ++start;
    for (int k = start; k + 1 <= window.hi; k += 2) {
        const Rational lhs = t.at(labels.ws, k + 1) * t.at(labels.w, k - 1) - t.at(labels.ws, k - 1) * t.at(labels.w, k + 1);
        Rational rhs = 1;
        for (auto &l : labels.neighbours)
            rhs *= t.at(l, k);
        ++out.points;
        if (lhs != rhs && !out.first_failure)
            out.first_failure = QQFailure{i, k, lhs, rhs};
    }
    return out;
}

QQCheck check_qq_system(const CartanData &cd, const QTable &t, const LatticeWindow &window) {
    QQCheck out;
    for (int i = 1; i <= cd.rank(); ++i) {
        QQCheck c = check_qq_relation(cd, i, identity_labels(cd, i, t), t, window);
        out.points += c.points;
        if (!out.first_failure)
            out.first_failure = c.first_failure;
    }
    return out;
}

LatticeWindow table_window(const QTable &t) {
    if (t.values().empty())
        throw MissingTable("empty table");
    int lo = t.values().begin()->first.second, hi = lo;
    for (auto &[key, v] : t.values()) {
        lo = std::min(lo, key.second);
        hi = std::max(hi, key.second);
    }
    return {lo, hi};
}

} // namespace grothsym
