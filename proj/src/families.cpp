#include "interlock/families.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "interlock/runtime.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace interlock {

std::string to_string(FamilyId f) {
    switch (f) {
        case FamilyId::chain: return "chain";
        case FamilyId::crown: return "crown";
        case FamilyId::maelstrom: return "maelstrom";
        case FamilyId::maelstrom_bar: return "maelstrom_bar";
        case FamilyId::s: return "s";
        case FamilyId::s_bar: return "s_bar";
    }
    return "?";
}

FamilyId family_from_string(const std::string& name) {
    if (name == "chain") return FamilyId::chain;
    if (name == "crown") return FamilyId::crown;
    if (name == "maelstrom") return FamilyId::maelstrom;
    if (name == "maelstrom_bar" || name == "mbar") return FamilyId::maelstrom_bar;
    if (name == "s") return FamilyId::s;
    if (name == "s_bar" || name == "sbar") return FamilyId::s_bar;
    throw std::invalid_argument("unknown family: " + name);
}

FamilyId base_family(FamilyId f) {
    if (f == FamilyId::s_bar) return FamilyId::s;
    if (f == FamilyId::maelstrom_bar) return FamilyId::maelstrom;
    return f;
}

bool is_bar_family(FamilyId f) {
    return f == FamilyId::s_bar || f == FamilyId::maelstrom_bar;
}

namespace {

using Letters = std::vector<Var>;

void grow_chain(Letters& w, int k) {
    // C_k = c x_k  ->  C_{k+1} = c x_{k+1} x_k x_{k+1}
    if (w.back() != Var{k}) throw std::logic_error("chain recursion shape broken");
    w.pop_back();
    w.push_back(Var{k + 1});
    w.push_back(Var{k});
    w.push_back(Var{k + 1});
}

void grow_crown(Letters& w, int k) {
    if (k % 2 == 1) {
        // R_k = r x_k  ->  R_{k+1} = r x_{k+1}^2 x_k
        if (w.back() != Var{k}) throw std::logic_error("crown recursion shape broken");
        w.pop_back();
        w.push_back(Var{k + 1});
        w.push_back(Var{k + 1});
        w.push_back(Var{k});
    } else {
        // R_k = r' x_k^2 x_{k-1}  ->  R_{k+1} = r' x_{k+1} x_k^2 x_{k-1} x_{k+1}
        std::size_t s = w.size();
        if (s < 3 || w[s - 3] != Var{k} || w[s - 2] != Var{k} || w[s - 1] != Var{k - 1})
            throw std::logic_error("crown recursion shape broken");
        w.insert(w.end() - 3, Var{k + 1});
        w.push_back(Var{k + 1});
    }
}

void grow_maelstrom(Letters& w, int k) {
    if (k % 2 == 1) {
        // M_k = m x_k  ->  M_{k+1} = x_{k+1} m x_{k+1} x_k
        if (w.back() != Var{k}) throw std::logic_error("maelstrom recursion shape broken");
        w.pop_back();
        w.insert(w.begin(), Var{k + 1});
        w.push_back(Var{k + 1});
        w.push_back(Var{k});
    } else {
        // M_k = x_k m'  ->  M_{k+1} = x_k x_{k+1} m' x_{k+1}
        if (w.front() != Var{k}) throw std::logic_error("maelstrom recursion shape broken");
        w.insert(w.begin() + 1, Var{k + 1});
        w.push_back(Var{k + 1});
    }
}

void grow_maelstrom_bar(Letters& w, int k) {
    // Locate the unique factor x_k x_{k-1} x_k (just x_k x_k at k = 1).
    std::size_t core = 0, core_len = (k == 1) ? 2 : 3;
    bool found = false;
    for (std::size_t p = 0; p + core_len <= w.size(); ++p) {
        if (k == 1) {
            found = w[p] == Var{1} && w[p + 1] == Var{1};
        } else {
            found = w[p] == Var{k} && w[p + 1] == Var{k - 1} && w[p + 2] == Var{k};
        }
        if (found) {
            core = p;
            break;
        }
    }
    if (!found) throw std::logic_error("maelstrom_bar recursion shape broken");
    Letters out(w.begin(), w.begin() + core);
    if (k % 2 == 1) {
        // m (x_k x_{k-1} x_k) m' -> m x_{k+1} x_k x_{k+1} x_{k-1} x_k m'
        out.push_back(Var{k + 1});
        out.push_back(Var{k});
        out.push_back(Var{k + 1});
        if (k > 1) out.push_back(Var{k - 1});
        out.push_back(Var{k});
    } else {
        // m (x_k x_{k-1} x_k) m' -> m x_k x_{k-1} x_{k+1} x_k x_{k+1} m'
        out.push_back(Var{k});
        out.push_back(Var{k - 1});
        out.push_back(Var{k + 1});
        out.push_back(Var{k});
        out.push_back(Var{k + 1});
    }
    out.insert(out.end(), w.begin() + core + core_len, w.end());
    w = std::move(out);
}

void grow_s(Letters& w, int k) {
    std::size_t half = w.size() / 2;
    Letters h1(w.begin(), w.begin() + half);
    Letters h2(w.begin() + half, w.end());
    if (k % 2 == 1) {
        // prepend to the first half, insert after the head of the second
        h1.insert(h1.begin(), Var{k + 1});
        h2.insert(h2.begin() + 1, Var{k + 1});
    } else {
        h1.insert(h1.begin() + 1, Var{k + 1});
        h2.insert(h2.begin(), Var{k + 1});
    }
    w = std::move(h1);
    w.insert(w.end(), h2.begin(), h2.end());
}

void grow_s_bar(Letters& w, int k) {
    std::size_t half = w.size() / 2;
    Letters h1(w.begin(), w.begin() + half);
    Letters h2(w.begin() + half, w.end());
    if (k % 2 == 1) {
        // insert before the tail of the first half, append to the second
        h1.insert(h1.end() - 1, Var{k + 1});
        h2.push_back(Var{k + 1});
    } else {
        h1.push_back(Var{k + 1});
        h2.insert(h2.end() - 1, Var{k + 1});
    }
    w = std::move(h1);
    w.insert(w.end(), h2.begin(), h2.end());
}

}  // namespace

Word generate(FamilyId f, int n) {
    if (n < 0) throw std::invalid_argument("family size must be nonnegative");
    if (n == 0) return Word{};
    Letters w = {Var{1}, Var{1}};
    for (int k = 1; k < n; ++k) {
        switch (f) {
            case FamilyId::chain: grow_chain(w, k); break;
            case FamilyId::crown: grow_crown(w, k); break;
            case FamilyId::maelstrom: grow_maelstrom(w, k); break;
            case FamilyId::maelstrom_bar: grow_maelstrom_bar(w, k); break;
            case FamilyId::s: grow_s(w, k); break;
            case FamilyId::s_bar: grow_s_bar(w, k); break;
        }
    }
    return Word{std::move(w)};
}

Word y_word(FamilyId f, int n) {
    if (n < 1) throw std::invalid_argument("y_word needs n >= 1");
    return without(generate(f, n), Var{1});
}

Word instantiate(const Word& pattern, const std::vector<Var>& vars) {
    std::set<Var> distinct = content(pattern);
    if (distinct.size() != vars.size())
        throw std::invalid_argument("instantiate: arity mismatch");
    std::set<Var> targets(vars.begin(), vars.end());
    if (targets.size() != vars.size())
        throw std::invalid_argument("instantiate: repeated target variables");
    std::map<Var, Var> sub;
    std::size_t i = 0;
    for (Var v : distinct) sub[v] = vars[i++];
    Letters out;
    out.reserve(pattern.size());
    for (Var v : pattern.letters()) out.push_back(sub.at(v));
    return Word{std::move(out)};
}

namespace {

void require_disjoint(const Word& u, const Word& v) {
    std::set<Var> cu = content(u);
    for (Var x : content(v))
        if (cu.count(x)) throw std::invalid_argument("operands share variables");
}

}  // namespace

Word star(const Word& u, const Word& v) {
    require_disjoint(u, v);
    auto [u1, u2] = split_double_linear(u);
    auto [v1, v2] = split_double_linear(v);
    return u1 + v1 + u2 + v2;
}

Word wrap(const Word& w, const Word& v) {
    require_disjoint(w, v);
    auto [w1, w2] = split_double_linear(w);
    auto [v1, v2] = split_double_linear(v);
    return v1 + w1 + w2 + v2;
}

Word wrap_bar(const Word& w, const Word& v) {
    require_disjoint(w, v);
    auto [w1, w2] = split_double_linear(w);
    auto [v1, v2] = split_double_linear(v);
    return w1 + v1 + v2 + w2;
}

namespace {

Word make4(int a, int b, int c, int d) {
    return Word{{Var{a}, Var{b}, Var{c}, Var{d}}};
}

// Shape of generate(f, n) projected to an adjacent pair {i, i+1}.
Word adjacent_shape(FamilyId f, int i) {
    int j = i + 1;
    switch (f) {
        case FamilyId::s:
        case FamilyId::s_bar:
            return (i % 2 == 1) ? make4(j, i, i, j) : make4(i, j, j, i);
        case FamilyId::maelstrom:
        case FamilyId::maelstrom_bar:
            return (i % 2 == 1) ? make4(j, i, j, i) : make4(i, j, i, j);
        case FamilyId::chain: return make4(i, j, i, j);
        case FamilyId::crown: break;
    }
    throw std::invalid_argument("crown family has no projection shape table");
}

// Shape projected to a distant pair, j - i >= 2.
Word distant_shape(FamilyId f, int i, int j) {
    switch (f) {
        case FamilyId::s: return make4(j, i, j, i);
        case FamilyId::s_bar: return make4(i, j, i, j);
        case FamilyId::maelstrom: return make4(j, i, i, j);
        case FamilyId::maelstrom_bar: return make4(i, j, j, i);
        case FamilyId::chain: return make4(i, i, j, j);
        case FamilyId::crown: break;
    }
    throw std::invalid_argument("crown family has no projection shape table");
}

}  // namespace

PairwiseReport verify_pairwise_projections(FamilyId f, int n) {
    if (f == FamilyId::crown)
        throw std::invalid_argument("crown family has no projection shape table");
    if (n < 2) throw std::invalid_argument("pairwise verification needs n >= 2");
    PairwiseReport report{f, n, true, std::nullopt};
    Word w = generate(f, n);
    for (int i = 1; i <= n && report.pass; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            Word actual = project(w, Var{i}, Var{j});
            Word expected = (j == i + 1) ? adjacent_shape(f, i) : distant_shape(f, i, j);
            if (actual != expected) {
                report.pass = false;
                report.violation = PairwiseReport::Violation{i, j, expected, actual};
                break;
            }
        }
    }
    return report;
}

namespace {

std::vector<Var> var_range(int from, int to) {
    std::vector<Var> out;
    for (int t = from; t <= to; ++t) out.push_back(Var{t});
    return out;
}

Word compose_blocks(FamilyId f, const Word& a, const Word& b) {
    switch (f) {
        case FamilyId::chain: return a + b;
        case FamilyId::s:
        case FamilyId::s_bar: return star(a, b);
        case FamilyId::maelstrom: return wrap(a, b);
        case FamilyId::maelstrom_bar: return wrap_bar(a, b);
        case FamilyId::crown: break;
    }
    throw std::invalid_argument("crown family has no deletion decomposition rule");
}

}  // namespace

DeletionReport verify_deletion_decomposition(FamilyId f, int n) {
    if (f == FamilyId::crown)
        throw std::invalid_argument("crown family has no deletion decomposition rule");
    if (n < 3) throw std::invalid_argument("deletion verification needs n >= 3");
    DeletionReport report{f, n, true, {}};
    Word full = generate(f, n);
    for (int m = 1; m <= n; ++m) {
        Word target = without(full, Var{m});
        Word prefix = generate(f, m - 1);
        DeletionReport::Entry entry{m, false, "", "n/a"};

        std::vector<FamilyId> y_sources;
        if (f == FamilyId::chain || m % 2 == 0) {
            y_sources.push_back(f);  // suffix block is a plain family word
        } else {
            // deleted-first-variable block; for bar families the plain
            // family's block is tried first, then the bar family's own
            y_sources.push_back(base_family(f));
            if (is_bar_family(f)) y_sources.push_back(f);
        }

        for (FamilyId ysrc : y_sources) {
            Word suffix;
            if (f == FamilyId::chain || m % 2 == 0) {
                suffix = instantiate(generate(f, n - m), var_range(m + 1, n));
            } else {
                suffix = instantiate(y_word(ysrc, n - m + 1), var_range(m + 1, n));
            }
            if (compose_blocks(f, prefix, suffix) == target) {
                entry.ok = true;
                entry.operand_order = "prefix-first";
            } else if (compose_blocks(f, suffix, prefix) == target) {
                entry.ok = true;
                entry.operand_order = "suffix-first";
            }
            if (entry.ok) {
                if (f != FamilyId::chain && m % 2 == 1) entry.y_source = to_string(ysrc);
                break;
            }
        }
        if (!entry.ok) report.pass = false;
        report.entries.push_back(entry);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Reconstruction from pairwise projection constraints
// ---------------------------------------------------------------------------

namespace {

struct PairConstraint {
    int a = 0, b = 0;                            // variable indices, a < b
    std::vector<std::array<int, 4>> admissible;  // letters as variable indices
};

struct ReconstructProblem {
    int n = 0;
    std::vector<PairConstraint> pairs;
    // per variable: (constraint id) list
    std::vector<std::vector<int>> pairs_of;
};

ReconstructProblem prepare(int n, const ProjectionConstraints& constraints) {
    if (n < 1) throw std::invalid_argument("reconstruction needs n >= 1");
    ReconstructProblem prob;
    prob.n = n;
    prob.pairs_of.assign(n + 1, {});
    for (const auto& [key, words] : constraints) {
        auto [i, j] = key;
        if (i < 1 || j <= i || j > n)
            throw std::invalid_argument("constraint pair out of range");
        if (words.empty()) throw std::invalid_argument("empty constraint set");
        PairConstraint pc;
        pc.a = i;
        pc.b = j;
        for (const Word& w : words) {
            if (w.size() != 4 || occurrences(Var{i}, w) != 2 || occurrences(Var{j}, w) != 2)
                throw std::invalid_argument(
                    "admissible projection must use both variables exactly twice: " + w.str());
            std::array<int, 4> a{};
            for (int t = 0; t < 4; ++t) a[t] = w.at(t).index;
            pc.admissible.push_back(a);
        }
        int id = static_cast<int>(prob.pairs.size());
        prob.pairs.push_back(std::move(pc));
        prob.pairs_of[i].push_back(id);
        prob.pairs_of[j].push_back(id);
    }
    return prob;
}

struct SearchState {
    std::vector<int> counts;      // remaining occurrences per variable
    std::vector<int> prefix;      // letters placed so far
    std::vector<std::array<int, 4>> proj;  // partial projection per constraint
    std::vector<int> proj_len;

    explicit SearchState(const ReconstructProblem& prob)
        : counts(prob.n + 1, 2), proj(prob.pairs.size()), proj_len(prob.pairs.size(), 0) {}
};

bool viable_prefix(const PairConstraint& pc, const std::array<int, 4>& proj, int len) {
    for (const auto& adm : pc.admissible) {
        bool ok = true;
        for (int t = 0; t < len; ++t) {
            if (adm[t] != proj[t]) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

// Try to place variable v at the next slot; returns how many projections
// were extended (all of them on success, the rollback count on failure).
bool try_place(const ReconstructProblem& prob, SearchState& st, int v) {
    if (st.counts[v] == 0) return false;
    const auto& touched = prob.pairs_of[v];
    std::size_t done = 0;
    bool ok = true;
    for (; done < touched.size(); ++done) {
        int id = touched[done];
        st.proj[id][st.proj_len[id]] = v;
        ++st.proj_len[id];
        if (!viable_prefix(prob.pairs[id], st.proj[id], st.proj_len[id])) {
            ++done;  // include the failing one in the rollback
            ok = false;
            break;
        }
    }
    if (!ok) {
        for (std::size_t t = 0; t < done; ++t) --st.proj_len[touched[t]];
        return false;
    }
    --st.counts[v];
    st.prefix.push_back(v);
    return true;
}

void unplace(const ReconstructProblem& prob, SearchState& st, int v) {
    for (int id : prob.pairs_of[v]) --st.proj_len[id];
    ++st.counts[v];
    st.prefix.pop_back();
}

void dfs(const ReconstructProblem& prob, SearchState& st, std::size_t depth_limit,
         std::vector<Word>& out, std::vector<std::vector<int>>* prefixes, std::uint64_t& nodes) {
    if (st.prefix.size() == depth_limit) {
        if (prefixes) {
            prefixes->push_back(st.prefix);
        } else {
            std::vector<Var> letters;
            letters.reserve(st.prefix.size());
            for (int v : st.prefix) letters.push_back(Var{v});
            out.push_back(Word{std::move(letters)});
        }
        return;
    }
    for (int v = 1; v <= prob.n; ++v) {
        if (!try_place(prob, st, v)) continue;
        ++nodes;
        if ((nodes & ((1u << 22) - 1)) == 0)
            runtime::progress("reconstruct: " + std::to_string(nodes) + " nodes");
        dfs(prob, st, depth_limit, out, prefixes, nodes);
        unplace(prob, st, v);
    }
}

}  // namespace

std::vector<Word> reconstruct_from_projections_serial(int n,
                                                      const ProjectionConstraints& constraints) {
    ReconstructProblem prob = prepare(n, constraints);
    SearchState st(prob);
    std::vector<Word> out;
    std::uint64_t nodes = 0;
    dfs(prob, st, static_cast<std::size_t>(2 * n), out, nullptr, nodes);
    return out;
}

std::vector<Word> reconstruct_from_projections(int n, const ProjectionConstraints& constraints) {
    int threads = runtime::max_threads();
#ifndef _OPENMP
    threads = 1;
#endif
    if (threads <= 1 || n <= 3) return reconstruct_from_projections_serial(n, constraints);

    ReconstructProblem prob = prepare(n, constraints);
    // Shard the search by its first few slots; each shard continues the
    // deterministic depth-first order, so the concatenation below equals
    // the serial enumeration.
    std::size_t shard_depth = std::min<std::size_t>(4, static_cast<std::size_t>(2 * n));
    std::vector<std::vector<int>> prefixes;
    {
        SearchState st(prob);
        std::vector<Word> unused;
        std::uint64_t nodes = 0;
        dfs(prob, st, shard_depth, unused, &prefixes, nodes);
    }
    std::vector<std::vector<Word>> results(prefixes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
    for (std::int64_t p = 0; p < static_cast<std::int64_t>(prefixes.size()); ++p) {
        SearchState st(prob);
        for (int v : prefixes[p]) {
            if (!try_place(prob, st, v)) throw std::logic_error("shard prefix replay failed");
        }
        std::uint64_t nodes = 0;
        dfs(prob, st, static_cast<std::size_t>(2 * n), results[p], nullptr, nodes);
    }
    std::vector<Word> out;
    for (auto& part : results) out.insert(out.end(), part.begin(), part.end());
    return out;
}

ProjectionConstraints characteristic_constraints(FamilyId f, int n) {
    if (n < 2) throw std::invalid_argument("characteristic constraints need n >= 2");
    ProjectionConstraints out;
    auto add = [&](int i, int j, std::vector<Word> ws) { out[{i, j}] = std::move(ws); };
    switch (f) {
        case FamilyId::s:
        case FamilyId::s_bar:
            for (int i = 1; i < n; ++i) add(i, i + 1, {adjacent_shape(f, i)});
            for (int i = 1; i + 2 <= n; ++i) {
                for (int j = i + 2; j <= std::min(i + 3, n); ++j)
                    add(i, j, {make4(i, j, i, j), make4(j, i, j, i)});
            }
            for (int j = 3; j <= n; j += 2)
                if (!out.count({1, j})) add(1, j, {make4(1, j, 1, j), make4(j, 1, j, 1)});
            break;
        case FamilyId::maelstrom:
        case FamilyId::maelstrom_bar:
            for (int i = 1; i < n; ++i) add(i, i + 1, {adjacent_shape(f, i)});
            for (int i = 1; i + 2 <= n; ++i) {
                for (int j = i + 2; j <= std::min(i + 3, n); ++j)
                    add(i, j, {make4(j, i, i, j), make4(i, j, j, i)});
            }
            break;
        case FamilyId::chain:
            for (int i = 1; i < n; ++i) add(i, i + 1, {adjacent_shape(f, i)});
            for (int i = 1; i + 2 <= n; ++i) {
                // anything but the interlocked shape
                add(i, i + 2,
                    {make4(i, i, i + 2, i + 2), make4(i, i + 2, i + 2, i), make4(i + 2, i, i, i + 2),
                     make4(i + 2, i, i + 2, i), make4(i + 2, i + 2, i, i)});
            }
            break;
        case FamilyId::crown:
            throw std::invalid_argument("crown family has no projection shape table");
    }
    return out;
}

}  // namespace interlock
