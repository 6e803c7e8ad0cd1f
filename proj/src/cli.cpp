#include "grothsym/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "grothsym/classchar.hpp"
#include "grothsym/cluster.hpp"
#include "grothsym/errors.hpp"
#include "grothsym/qchar.hpp"
#include "grothsym/qq.hpp"
#include "grothsym/weylq.hpp"

namespace grothsym::cli {

std::string Report::render(Format f) const {
    std::string out;
    for (auto &fields : lines_) {
        if (f == Format::Canonical) {
            std::string line;
            for (auto &fd : fields) {
                if (!line.empty())
                    line += ", ";
                line += fd.bare ? fd.value : fd.key + ": " + fd.value;
            }
            out += line + "\n";
        } else {
            for (auto &fd : fields) {
                std::string key = fd.key;
                std::replace(key.begin(), key.end(), ' ', '.');
                out += key + "=" + fd.value + "\n";
            }
        }
    }
    return out;
}

namespace {

struct Outcome {
    Report report;
    int code = 0;
};

std::string str(bool b) { return b ? "true" : "false"; }

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<int> parse_steps(const std::string &text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception &) {
            throw ParseError("bad mutation step \"" + tok + "\"");
        }
    }
    return out;
}

int parse_int(const std::string &s) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception &) {
    }
    throw ParseError("bad integer \"" + s + "\"");
}

Rational parse_rational(const std::string &s) {
    Rational r;
    const std::string body = !s.empty() && s.front() == '+' ? s.substr(1) : s;
    if (body.empty() || body.find_first_not_of("-0123456789/") != std::string::npos || r.set_str(body, 10) != 0 ||
        r.get_den() == 0)
        throw ParseError("bad rational \"" + s + "\"");
    r.canonicalize();
    return r;
}

// "fundamental:<k>", "kr:<m>:<k>" or a polynomial.
LaurentPoly poly_arg(const std::string &s) {
    if (s.rfind("fundamental:", 0) == 0)
        return fundamental_qchar_sl2(parse_int(s.substr(12)));
    if (s.rfind("kr:", 0) == 0) {
        auto colon = s.find(':', 3);
        if (colon == std::string::npos)
            throw ParseError("expected kr:<m>:<k>");
        return kr_qchar_sl2(parse_int(s.substr(3, colon - 3)), parse_int(s.substr(colon + 1)));
    }
    return lp_parse(s);
}

Seed load_seed(const std::string &path) {
    if (path.empty())
        return parse_seed("v 1\nv 2\na 1 2\n");
    return parse_seed(read_file(path));
}

std::string arrows(const Seed &s) {
    std::string out;
    for (int i = 0; i < s.size(); ++i)
        for (int j = 0; j < s.size(); ++j)
            if (int m = s.quiver.b(i, j); m > 0) {
                if (!out.empty())
                    out += ", ";
                out += std::to_string(s.ids[static_cast<std::size_t>(i)]) + "->" +
                       std::to_string(s.ids[static_cast<std::size_t>(j)]);
                if (m > 1)
                    out += "^" + std::to_string(m);
            }
    return out.empty() ? "none" : out;
}

// True when adjacent equal steps cancel the whole list.
bool cancels(const std::vector<int> &steps) {
    std::vector<int> stack;
    for (int s : steps) {
        if (!stack.empty() && stack.back() == s)
            stack.pop_back();
        else
            stack.push_back(s);
    }
    return stack.empty();
}

std::string describe_permutation(const Seed &s, const std::vector<int> &perm) {
    bool swaps = true;
    for (std::size_t v = 0; v < perm.size(); ++v)
        if (perm[static_cast<std::size_t>(perm[v])] != static_cast<int>(v))
            swaps = false;
    std::string out;
    for (std::size_t v = 0; v < perm.size(); ++v) {
        const int to = perm[v];
        if (to == static_cast<int>(v) || (swaps && to < static_cast<int>(v)))
            continue;
        if (!out.empty())
            out += ", ";
        out += std::to_string(s.ids[v]) + (swaps ? "<->" : "->") + std::to_string(s.ids[static_cast<std::size_t>(to)]);
    }
    return (swaps ? "up to vertex swap " : "up to relabeling ") + out;
}

Outcome cluster_enumerate(const std::string &path, std::size_t max_seeds) {
    Outcome o;
    const auto g = enumerate_exchange_graph(load_seed(path), max_seeds);
    o.report.line({{"variables", std::to_string(g.variables.size())},
                   {"clusters", std::to_string(g.seeds.size())},
                   {"complete", str(g.complete)}});
    for (std::size_t v = 0; v < g.variables.size(); ++v)
        o.report.line({{"variable " + std::to_string(v + 1), lp_canonical_string(g.variables[v])}});
    o.report.line({{"positive", str(all_coefficients_positive(g))}});
    return o;
}

Outcome cluster_mutate(const std::string &path, const std::string &steps_text) {
    Outcome o;
    const Seed start = load_seed(path);
    const auto steps = parse_steps(steps_text);
    Seed cur = start;
    for (int id : steps)
        cur = mutate_seed(cur, cur.position_of(id));
    o.report.line({{"steps", steps_text}});
    for (int v = 0; v < cur.size(); ++v)
        o.report.line({{"vertex " + std::to_string(cur.ids[static_cast<std::size_t>(v)]),
                        lp_canonical_string(cur.vars[static_cast<std::size_t>(v)])}});
    o.report.line({{"arrows", arrows(cur)}});
    const auto perm = seed_permutation(start, cur);
    bool identical = perm.has_value();
    if (perm)
        for (std::size_t v = 0; v < perm->size(); ++v)
            identical = identical && (*perm)[v] == static_cast<int>(v);
    if (identical) {
        o.report.line({{"equals initial", "yes"}});
        if (!steps.empty() && cancels(steps))
            o.report.line({{"note", "involution"}});
    } else if (perm) {
        o.report.line({{"equals initial", describe_permutation(start, *perm)}});
    } else {
        o.report.line({{"equals initial", "no"}});
    }
    return o;
}

void relation_lines(Report &r, const Seed &s, int pos) {
    const auto rel = exchange_relation_of(s, pos);
    r.line({{"relation",
             lp_canonical_string(rel.variable) + " * X' = " + lp_canonical_string(rel.in_product + rel.out_product)}});
    r.line({{"in", lp_canonical_string(rel.in_product)}, {"out", lp_canonical_string(rel.out_product)}});
    r.line({{"mutated", lp_canonical_string(rel.mutated)}});
}

Outcome cluster_relation(const std::string &path, int vertex) {
    Outcome o;
    const Seed s = load_seed(path);
    relation_lines(o.report, s, s.position_of(vertex));
    return o;
}

Outcome cluster_segment(int m, std::optional<int> reversed_at, std::optional<int> vertex, bool frozen_ends) {
    Outcome o;
    const Seed s = build_linear_segment(m, reversed_at, frozen_ends);
    const int v = vertex ? *vertex : reversed_at ? *reversed_at : (m + 1) / 2;
    std::string labels;
    for (auto &l : s.labels)
        labels += (labels.empty() ? "" : ", ") + l;
    o.report.line({{"labels", labels}});
    o.report.line({{"vertex", std::to_string(v)}, {"label", s.labels[static_cast<std::size_t>(s.position_of(v))]}});
    relation_lines(o.report, s, s.position_of(v));
    return o;
}

Outcome classchar_qn(int n) {
    if (n < 0)
        throw InvalidArgument("--n must be >= 0");
    Outcome o;
    const auto qs = qn_sequence(n);
    std::string line;
    for (auto &q : qs)
        line += (line.empty() ? "" : "; ") + lp_canonical_string(q);
    o.report.text("qn", line);
    for (int j = 1; j < n; ++j) {
        const auto &q = qs[static_cast<std::size_t>(j)];
        if (q * q - qs[static_cast<std::size_t>(j + 1)] * qs[static_cast<std::size_t>(j - 1)] != 1) {
            o.report.line({{"identity failed at n", std::to_string(j)}});
            o.code = 1;
        }
    }
    return o;
}

Outcome classchar_invariant(const std::string &cartan, const std::string &poly) {
    Outcome o;
    o.report.line({{"invariant", str(is_invariant(load_cartan(cartan), lp_parse(poly)))}});
    return o;
}

Outcome classchar_reflect(const std::string &cartan, int i, const std::string &poly) {
    Outcome o;
    o.report.line({{"s" + std::to_string(i), lp_canonical_string(weyl_reflect(load_cartan(cartan), i, lp_parse(poly)))}});
    return o;
}

Outcome qchar_tq(const std::string &window) {
    Outcome o;
    const auto wc = check_tq_window(parse_window(window));
    if (wc.ok()) {
        o.report.text("tq", "TQ verified on " + std::to_string(wc.points) + " lattice points");
    } else {
        std::string ks;
        for (int k : wc.failures)
            ks += (ks.empty() ? "" : ", ") + std::to_string(k);
        o.report.text("tq", "TQ failed at k = " + ks);
        o.code = 1;
    }
    return o;
}

Outcome residual_outcome(const std::string &key, const TruncSeries &r, int boundary, bool assert_clean) {
    Outcome o;
    const auto s = summarize_residual(r, boundary);
    std::string verdict = "residual below boundary: ";
    if (s.clean())
        verdict += "empty";
    else if (s.order < boundary && s.terms_below == 0)
        verdict += "undetermined (known to order " + std::to_string(s.order) + ")";
    else
        verdict += std::to_string(s.terms_below) + " terms, lowest tag " + std::to_string(*s.min_tag);
    o.report.text(key, verdict);
    o.report.line({{"boundary", std::to_string(s.boundary)},
                   {"order", s.order >= kExactOrder ? "exact" : std::to_string(s.order)},
                   {"terms", std::to_string(s.terms)},
                   {"max tag", s.max_tag ? std::to_string(*s.max_tag) : "none"}});
    if (assert_clean && !s.clean())
        o.code = 1;
    return o;
}

void check_order(int N) {
    if (N < 1)
        throw InvalidArgument("--N must be >= 1");
}

struct Options {
    std::string format = "canonical";
    int threads = 0;
    std::string cartan = "A1";
    std::string quiver;
    std::string steps;
    std::size_t max_seeds = 100000;
    int vertex = 1;
    std::optional<int> opt_vertex;
    int m = 1;
    std::optional<int> reversed_at;
    bool frozen_ends = false;
    int n = 3;
    int i = 1;
    std::optional<int> j;
    int l = 1;
    int k = 0;
    int N = 0;
    std::string poly;
    std::string window = "-10..10";
    std::optional<std::string> opt_window;
    int numerator_shift = -3;
    int denominator_shift = -1;
    bool all_components = false;
    std::string q_path;
    std::string tables_path;
    std::string init = "0";
    int init_index = -1;
};

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Cluster, character and q-character computations", "grothsym"};
    app.require_subcommand(1);
    Options opt;
    std::function<Outcome()> action;

    app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"canonical", "kv"}));
    app.add_option("--threads", opt.threads, "OpenMP threads (0 keeps the default)")->check(CLI::NonNegativeNumber);

    auto add_cartan = [&](CLI::App *c) { c->add_option("--cartan", opt.cartan, "Type name (A1, A2, ...) or matrix file"); };

    // cluster
    auto *cluster = app.add_subcommand("cluster", "Quiver mutation and exchange graphs");
    cluster->require_subcommand(1);
    auto *enumerate = cluster->add_subcommand("enumerate", "Enumerate the exchange graph");
    enumerate->add_option("--quiver", opt.quiver, "Quiver file")->required();
    enumerate->add_option("--max-seeds", opt.max_seeds, "Stop after this many seeds");
    enumerate->callback([&] { action = [&] { return cluster_enumerate(opt.quiver, opt.max_seeds); }; });
    auto *mutate = cluster->add_subcommand("mutate", "Apply a mutation sequence");
    mutate->add_option("--quiver", opt.quiver, "Quiver file (default: 1 -> 2)");
    mutate->add_option("--steps", opt.steps, "Comma-separated vertex ids")->required();
    mutate->callback([&] { action = [&] { return cluster_mutate(opt.quiver, opt.steps); }; });
    auto *relation = cluster->add_subcommand("relation", "Exchange relation at a vertex");
    relation->add_option("--quiver", opt.quiver, "Quiver file (default: 1 -> 2)");
    relation->add_option("--vertex", opt.vertex, "Vertex id");
    relation->callback([&] { action = [&] { return cluster_relation(opt.quiver, opt.vertex); }; });
    auto *segment = cluster->add_subcommand("segment", "Linear quiver segment and its exchange relation");
    segment->add_option("--m", opt.m, "Number of vertices")->required();
    segment->add_option("--reversed-at", opt.reversed_at, "Reverse the arrow between p and p+1");
    segment->add_option("--vertex", opt.opt_vertex, "Vertex to mutate (default: reversed or middle)");
    segment->add_flag("--frozen-ends", opt.frozen_ends, "Freeze both end vertices");
    segment->callback(
        [&] { action = [&] { return cluster_segment(opt.m, opt.reversed_at, opt.opt_vertex, opt.frozen_ends); }; });

    // classchar
    auto *classchar = app.add_subcommand("classchar", "Classical characters");
    classchar->require_subcommand(1);
    auto *qn = classchar->add_subcommand("qn", "Q_0..Q_n for sl2");
    qn->add_option("--n", opt.n, "Last index");
    qn->callback([&] { action = [&] { return classchar_qn(opt.n); }; });
    auto *invariant = classchar->add_subcommand("invariant", "Weyl invariance query");
    add_cartan(invariant);
    invariant->add_option("--poly", opt.poly, "Polynomial in y[i,0]")->required();
    invariant->callback([&] { action = [&] { return classchar_invariant(opt.cartan, opt.poly); }; });
    auto *reflect = classchar->add_subcommand("reflect", "Apply a simple reflection");
    add_cartan(reflect);
    reflect->add_option("--i", opt.i, "Node");
    reflect->add_option("--poly", opt.poly, "Polynomial in y[i,0]")->required();
    reflect->callback([&] { action = [&] { return classchar_reflect(opt.cartan, opt.i, opt.poly); }; });

    // qchar
    auto *qchar = app.add_subcommand("qchar", "q-characters");
    qchar->require_subcommand(1);
    auto *fundamental = qchar->add_subcommand("fundamental", "sl2 fundamental q-character");
    fundamental->add_option("--k", opt.k, "Spectral exponent");
    fundamental->callback([&] {
        action = [&] {
            Outcome o;
            o.report.text("qchar", lp_canonical_string(fundamental_qchar_sl2(opt.k)));
            return o;
        };
    });
    auto *kr = qchar->add_subcommand("kr", "sl2 Kirillov-Reshetikhin q-character");
    kr->add_option("--m", opt.m, "Length")->required();
    kr->add_option("--k", opt.k, "Spectral exponent");
    kr->callback([&] {
        action = [&] {
            Outcome o;
            o.report.text("qchar", lp_canonical_string(kr_qchar_sl2(opt.m, opt.k)));
            return o;
        };
    });
    auto *restrict_cmd = qchar->add_subcommand("restrict", "Y[i,k] -> y[i,0]");
    restrict_cmd->add_option("--poly", opt.poly, "Polynomial, fundamental:<k> or kr:<m>:<k>")->required();
    restrict_cmd->callback([&] {
        action = [&] {
            Outcome o;
            o.report.text("restriction", lp_canonical_string(restrict_classical(poly_arg(opt.poly))));
            return o;
        };
    });
    auto *substitute = qchar->add_subcommand("substitute", "Y[i,k] -> L[i,k-1] L[i,k+1]^-1");
    substitute->add_option("--poly", opt.poly, "Polynomial, fundamental:<k> or kr:<m>:<k>")->required();
    substitute->callback([&] {
        action = [&] {
            Outcome o;
            o.report.text("substitution", lp_canonical_string(prefundamental_substitute(poly_arg(opt.poly))));
            return o;
        };
    });
    auto *tq = qchar->add_subcommand("tq", "Check the TQ relation on a window");
    tq->add_option("--window", opt.window, "lo..hi");
    tq->callback([&] { action = [&] { return qchar_tq(opt.window); }; });

    // theta
    auto *theta = app.add_subcommand("theta", "Theta operators on truncated completions");
    theta->require_subcommand(1);
    auto add_shifts = [&](CLI::App *c) {
        c->add_option("--numerator-shift", opt.numerator_shift, "Sigma shift in the numerator");
        c->add_option("--denominator-shift", opt.denominator_shift, "Sigma shift in the denominator");
    };
    auto *involution = theta->add_subcommand("involution", "Theta_i^2(Y[j,k]) - Y[j,k]");
    add_cartan(involution);
    add_shifts(involution);
    involution->add_option("--i", opt.i, "Node of Theta");
    involution->add_option("--j", opt.j, "Node of the generator (default: i)");
    involution->add_option("--k", opt.k, "Spectral exponent");
    involution->add_option("--N", opt.N, "Truncation order")->required();
    involution->callback([&] {
        action = [&] {
            check_order(opt.N);
            const YContext ctx(load_cartan(opt.cartan));
            const ThetaOperator op{opt.numerator_shift, opt.denominator_shift};
            auto r = check_involution(ctx, opt.i, opt.j.value_or(opt.i), opt.k, opt.N, op);
            return residual_outcome("involution", r, opt.N - 1, true);
        };
    });
    auto *invariance = theta->add_subcommand("invariance", "Theta_i(p) - p");
    add_cartan(invariance);
    add_shifts(invariance);
    invariance->add_option("--i", opt.i, "Node of Theta");
    invariance->add_option("--poly", opt.poly, "Polynomial, fundamental:<k> or kr:<m>:<k>")->required();
    invariance->add_option("--N", opt.N, "Truncation order")->required();
    invariance->callback([&] {
        action = [&] {
            check_order(opt.N);
            const YContext ctx(load_cartan(opt.cartan));
            const ThetaOperator op{opt.numerator_shift, opt.denominator_shift};
            auto r = check_invariance(ctx, opt.i, poly_arg(opt.poly), opt.N, op);
            return residual_outcome("invariance", r, opt.N - 1, true);
        };
    });
    auto *apply = theta->add_subcommand("apply", "Theta_i of a generator or polynomial");
    add_cartan(apply);
    apply->add_option("--i", opt.i, "Node of Theta");
    apply->add_option("--j", opt.j, "Node of the generator Y[j,k]");
    apply->add_option("--k", opt.k, "Spectral exponent of the generator");
    apply->add_option("--poly", opt.poly, "Polynomial instead of a generator");
    apply->add_option("--N", opt.N, "Truncation order")->required();
    apply->add_flag("--all-components", opt.all_components, "Print every Weyl component");
    apply->callback([&] {
        action = [&] {
            check_order(opt.N);
            const YContext ctx(load_cartan(opt.cartan));
            const LaurentPoly p = opt.poly.empty() ? LaurentPoly::var(Yv(opt.j.value_or(opt.i), opt.k))
                                                   : poly_arg(opt.poly);
            const ThetaEngine engine(ctx);
            const auto e = WeylComponent::identity(ctx.cartan());
            Outcome o;
            if (opt.all_components) {
                auto img = engine.apply(opt.i, p, opt.N);
                for (auto &[w, s] : img.computed())
                    o.report.line({{w.name(), s.to_string()}});
            } else {
                auto img = engine.apply(opt.i, PiElement::diagonal(p), opt.N, {e});
                o.report.text("theta", img.component(e).to_string());
            }
            return o;
        };
    });
    auto *braid = theta->add_subcommand("braid", "Braid relation residual (reported only)");
    add_cartan(braid);
    braid->add_option("--i", opt.i, "First node");
    braid->add_option("--j", opt.j, "Second node (default: 2)");
    braid->add_option("--l", opt.l, "Node of the generator Y[l,k]");
    braid->add_option("--k", opt.k, "Spectral exponent");
    braid->add_option("--N", opt.N, "Truncation order")->required();
    braid->callback([&] {
        action = [&] {
            check_order(opt.N);
            const YContext ctx(load_cartan(opt.cartan));
            auto r = braid_residual(ctx, opt.i, opt.j.value_or(2), opt.l, opt.k, opt.N);
            return residual_outcome("braid", r, opt.N - 1, false);
        };
    });

    // qq
    auto *qq = app.add_subcommand("qq", "Quantum Wronskian and QQ-system");
    qq->require_subcommand(1);
    auto *wronskian = qq->add_subcommand("wronskian", "Solve the sl2 quantum Wronskian for Q~");
    wronskian->add_option("--q", opt.q_path, "Table with label w1")->required();
    wronskian->add_option("--init", opt.init, "Initial value Q~[init-index]");
    wronskian->add_option("--init-index", opt.init_index, "Lattice point of the initial value");
    wronskian->add_option("--window", opt.opt_window, "lo..hi (default: the table's span)");
    wronskian->callback([&] {
        action = [&] {
            const QTable q = parse_qtable(read_file(opt.q_path));
            const LatticeWindow win = opt.opt_window ? parse_window(*opt.opt_window) : table_window(q);
            const QTable sol = wronskian_solve_sl2(q, parse_rational(opt.init), win, opt.init_index);
            Outcome o;
            for (auto &[key, v] : sol.values())
                o.report.text(key.first + " " + std::to_string(key.second),
                              key.first + " " + std::to_string(key.second) + " " + v.get_num().get_str() + "/" +
                                  v.get_den().get_str());
            o.report.text("verdict", "relation verified");
            return o;
        };
    });
    auto *check = qq->add_subcommand("check", "Pointwise QQ-system check");
    add_cartan(check);
    check->add_option("--tables", opt.tables_path, "QTable file")->required();
    check->add_option("--window", opt.opt_window, "lo..hi (default: the table's span)");
    check->callback([&] {
        action = [&] {
            const auto cd = load_cartan(opt.cartan);
            const QTable t = parse_qtable(read_file(opt.tables_path));
            const LatticeWindow win = opt.opt_window ? parse_window(*opt.opt_window) : table_window(t);
            const auto c = check_qq_system(cd, t, win);
            Outcome o;
            if (c.ok()) {
                o.report.text("verdict", "QQ verified");
                o.report.line({{"relation points", std::to_string(c.points)}});
            } else {
                const auto &f = *c.first_failure;
                o.report.text("verdict", "QQ failed");
                o.report.line({{"node", std::to_string(f.node)},
                               {"k", std::to_string(f.k)},
                               {"lhs", f.lhs.get_str()},
                               {"rhs", f.rhs.get_str()}});
                o.code = 1;
            }
            return o;
        };
    });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (opt.threads > 0)
            omp_set_num_threads(opt.threads);
        Outcome o = action();
        out << o.report.render(opt.format == "kv" ? Format::Kv : Format::Canonical);
        return o.code;
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace grothsym::cli
