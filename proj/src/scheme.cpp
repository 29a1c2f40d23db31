#include "interlock/scheme.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "interlock/runtime.hpp"
#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace interlock {

namespace {

int pair_index(int n, int i, int j) {
    // pairs (1,2), (1,3), ..., (1,n), (2,3), ... in lexicographic order
    return (i - 1) * n - (i * (i + 1)) / 2 + (j - i) - 1;
}

}  // namespace

Scheme::Scheme(int n, std::map<std::pair<int, int>, Word> entries) : n_(n) {
    if (n < 2) throw std::invalid_argument("scheme needs n >= 2");
    entries_.resize(static_cast<std::size_t>(n) * (n - 1) / 2);
    std::vector<bool> seen(entries_.size(), false);
    for (auto& [key, word] : entries) {
        auto [i, j] = key;
        if (i < 1 || j <= i || j > n) throw std::invalid_argument("scheme pair out of range");
        for (Var v : content(word))
            if (v.index < 1 || v.index > n)
                throw std::invalid_argument("scheme entry uses a variable outside x1..xn");
        int idx = pair_index(n, i, j);
        entries_[idx] = std::move(word);
        seen[idx] = true;
    }
    for (bool s : seen)
        if (!s) throw std::invalid_argument("scheme is missing an entry");
}

const Word& Scheme::at(int i, int j) const {
    if (i < 1 || j <= i || j > n_) throw std::out_of_range("scheme pair out of range");
    return entries_[pair_index(n_, i, j)];
}

std::vector<std::pair<int, int>> Scheme::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i < n_; ++i)
        for (int j = i + 1; j <= n_; ++j) out.emplace_back(i, j);
    return out;
}

std::string Scheme::dump_json() const {
    nlohmann::json j;
    j["n"] = n_;
    if (alpha_) j["alpha"] = *alpha_;
    nlohmann::json entries = nlohmann::json::object();
    for (auto [i, jx] : pairs())
        entries[std::to_string(i) + "," + std::to_string(jx)] = at(i, jx).str();
    j["entries"] = entries;
    return j.dump(2);
}

Scheme Scheme::load_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int n = j.at("n").get<int>();
    std::map<std::pair<int, int>, Word> entries;
    for (const auto& [key, value] : j.at("entries").items()) {
        auto comma = key.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("scheme entry key must be \"i,j\": " + key);
        int i = std::stoi(key.substr(0, comma));
        int jj = std::stoi(key.substr(comma + 1));
        entries[{i, jj}] = Word::parse(value.get<std::string>());
    }
    Scheme s(n, std::move(entries));
    if (j.contains("alpha") && !j.at("alpha").is_null()) s.set_alpha(j.at("alpha").get<int>());
    return s;
}

Scheme induced_from_term(const Word& t, int n) {
    std::set<Var> expect;
    for (int i = 1; i <= n; ++i) expect.insert(Var{i});
    if (content(t) != expect)
        throw std::invalid_argument("term must use exactly x1..xn");
    std::map<std::pair<int, int>, Word> entries;
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) entries[{i, j}] = rename(t, Var{i}, Var{j});
    return Scheme(n, std::move(entries));
}

Scheme build_glasson_scheme(FamilyId f, int n, int alpha) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("scheme construction needs even n >= 2");
    if (alpha < 1) throw std::invalid_argument("alpha must be positive");

    std::map<std::pair<int, int>, Word> entries;
    for (int i = 1; i < n; ++i) {
        // rotation (x_{i+1}, ..., x_n, x_1, ..., x_{i-1}): n-1 variables
        std::vector<Var> rotation;
        for (int t = i + 1; t <= n; ++t) rotation.push_back(Var{t});
        for (int t = 1; t <= i - 1; ++t) rotation.push_back(Var{t});

        Word block = (i % 2 == 0) ? instantiate(generate(f, n - 1), rotation)
                                  : instantiate(y_word(f, n), rotation);
        for (int j = i + 1; j <= n; ++j) {
            Word tail{std::vector<Var>(static_cast<std::size_t>(alpha), Var{j})};
            entries[{i, j}] = without(block, Var{j}) + tail;
        }
    }
    Scheme s(n, std::move(entries));
    s.set_alpha(alpha);
    return s;
}

// ---------------------------------------------------------------------------
// Scheme conditions
// ---------------------------------------------------------------------------

namespace {

struct SchemeTask {
    std::string condition;
    int i, j, k, l;
    Word lhs, rhs;
};

std::vector<SchemeTask> scheme_tasks(const Scheme& S, int* dependency_vacuous) {
    std::vector<SchemeTask> tasks;
    auto pairs = S.pairs();
    for (auto [i, j] : pairs) {
        const Word& t = S.at(i, j);
        Word renamed = rename(t, Var{i}, Var{j});
        if (renamed == t) {
            ++*dependency_vacuous;
        } else {
            tasks.push_back({"dependency", i, j, i, j, t, renamed});
        }
    }
    for (auto [i, j] : pairs) {
        for (auto [k, l] : pairs) {
            if (i == k && j == l) continue;
            bool disjoint = i != k && i != l && j != k && j != l;
            if (disjoint) {
                tasks.push_back({"consistency-case-1", i, j, k, l,
                                 rename(S.at(i, j), Var{k}, Var{l}),
                                 rename(S.at(k, l), Var{i}, Var{j})});
            } else if (j == k) {
                tasks.push_back({"consistency-case-2", i, j, k, l,
                                 rename(S.at(i, j), Var{j}, Var{l}),
                                 rename(S.at(j, l), Var{i}, Var{l})});
            } else if (i == k && j < l) {
                tasks.push_back({"consistency-case-3", i, j, k, l,
                                 rename(S.at(i, j), Var{j}, Var{l}),
                                 rename(S.at(i, l), Var{j}, Var{l})});
            }
        }
    }
    return tasks;
}

SchemeCheckReport run_scheme_tasks(const FiniteMonoid& M, const std::vector<SchemeTask>& tasks,
                                   int dependency_vacuous, bool parallel) {
    SchemeCheckReport report;
    report.dependency_vacuous = dependency_vacuous;
    report.checks_run = static_cast<int>(tasks.size());
    std::size_t first_fail = SIZE_MAX;
    std::string witness;

    if (!parallel) {
        for (std::size_t t = 0; t < tasks.size(); ++t) {
            IdentityCheck c = check_identity_serial(M, tasks[t].lhs, tasks[t].rhs);
            if (!c.holds) {
                first_fail = t;
                witness = c.witness_str(M);
                break;
            }
        }
    } else {
        std::atomic<std::size_t> best{SIZE_MAX};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(runtime::max_threads())
#endif
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks.size()); ++t) {
            if (best.load(std::memory_order_relaxed) < static_cast<std::size_t>(t)) continue;
            IdentityCheck c = check_identity_serial(M, tasks[t].lhs, tasks[t].rhs);
            if (!c.holds) {
                std::size_t cur = best.load(std::memory_order_relaxed);
                std::size_t mine = static_cast<std::size_t>(t);
                while (mine < cur && !best.compare_exchange_weak(cur, mine)) {
                }
            }
        }
        first_fail = best.load();
        if (first_fail != SIZE_MAX) {
            IdentityCheck c =
                check_identity_serial(M, tasks[first_fail].lhs, tasks[first_fail].rhs);
            witness = c.witness_str(M);
        }
    }

    if (first_fail != SIZE_MAX) {
        const SchemeTask& t = tasks[first_fail];
        report.pass = false;
        report.failure = SchemeCheckReport::Failure{t.condition, t.i, t.j, t.k, t.l, witness};
    }
    return report;
}

}  // namespace

SchemeCheckReport check_scheme_serial(const FiniteMonoid& M, const Scheme& S) {
    int vacuous = 0;
    auto tasks = scheme_tasks(S, &vacuous);
    return run_scheme_tasks(M, tasks, vacuous, false);
}

SchemeCheckReport check_scheme(const FiniteMonoid& M, const Scheme& S) {
    int vacuous = 0;
    auto tasks = scheme_tasks(S, &vacuous);
    return run_scheme_tasks(M, tasks, vacuous, runtime::max_threads() > 1);
}

bool comes_from_term(const FiniteMonoid& M, const Scheme& S, const Word& t) {
    for (auto [i, j] : S.pairs()) {
        if (!check_identity(M, rename(t, Var{i}, Var{j}), S.at(i, j)).holds) return false;
    }
    return true;
}

int scheme_occ(const Scheme& S, int s) {
    if (s < 1 || s > S.n()) throw std::out_of_range("variable index out of range");
    if (S.n() < 4) throw std::invalid_argument("no pair avoids x_" + std::to_string(s));
    int best = -1;
    for (auto [i, j] : S.pairs()) {
        if (i == s || j == s) continue;
        int o = occurrences(Var{s}, S.at(i, j));
        if (best < 0 || o < best) best = o;
    }
    return best;
}

// ---------------------------------------------------------------------------
// The property-induced order on os(F)
// ---------------------------------------------------------------------------

int SchemeOrder::index_of(const Occ& o) const {
    auto it = std::lower_bound(carrier.begin(), carrier.end(), o);
    if (it == carrier.end() || *it != o)
        throw std::out_of_range("occurrence not in carrier: " + to_string(o));
    return static_cast<int>(it - carrier.begin());
}

bool SchemeOrder::less(const Occ& a, const Occ& b) const {
    return before[index_of(a)][index_of(b)] != 0;
}

SchemeOrder build_partial_order(const Scheme& S, const std::vector<PropSpec>& props,
                                const std::vector<int>& occ_profile) {
    int n = S.n();
    if (static_cast<int>(occ_profile.size()) != n + 1)
        throw std::invalid_argument("occurrence profile must cover x1..xn");

    // Normalization gate: every entry must use exactly X_n minus x_i, and
    // agree with the profile on every variable it does not rename.
    for (auto [i, j] : S.pairs()) {
        const Word& t = S.at(i, j);
        std::set<Var> expect;
        for (int s = 1; s <= n; ++s)
            if (s != i) expect.insert(Var{s});
        if (content(t) != expect)
            throw std::invalid_argument("scheme not normalized: entry (" + std::to_string(i) +
                                        "," + std::to_string(j) +
                                        ") must use exactly the variables other than x_i");
        for (int s = 1; s <= n; ++s) {
            if (s == i || s == j) continue;
            if (occurrences(Var{s}, t) != occ_profile[s])
                throw std::invalid_argument(
                    "scheme not normalized: occurrence count of x" + std::to_string(s) +
                    " in entry (" + std::to_string(i) + "," + std::to_string(j) +
                    ") disagrees with the profile");
        }
    }
    if (n >= 4) {
        for (int s = 1; s <= n; ++s)
            if (scheme_occ(S, s) != occ_profile[s])
                throw std::invalid_argument("occurrence profile disagrees with the scheme");
    }

    SchemeOrder order;
    order.n = n;
    for (int s = 1; s <= n; ++s) {
        if (occ_profile[s] < 1)
            throw std::invalid_argument("occurrence profile must be positive");
        for (int i = 1; i <= occ_profile[s]; ++i) order.carrier.push_back(Occ{Var{s}, i});
    }
    std::sort(order.carrier.begin(), order.carrier.end());
    int m = static_cast<int>(order.carrier.size());
    order.before.assign(m, std::vector<char>(m, 0));

    // Occurrences of one variable in left-to-right order.
    for (int s = 1; s <= n; ++s)
        for (int i = 1; i < occ_profile[s]; ++i)
            for (int k = i + 1; k <= occ_profile[s]; ++k)
                order.before[order.index_of({Var{s}, i})][order.index_of({Var{s}, k})] = 1;

    std::set<PropSpec> prop_set(props.begin(), props.end());
    for (const PropSpec& prop : prop_set) {
        for (int sx = 1; sx <= n; ++sx) {
            if (occ_profile[sx] != prop.c) continue;
            for (int sy = 1; sy <= n; ++sy) {
                if (sy == sx || occ_profile[sy] != prop.d) continue;
                Occ px{Var{sx}, prop.p}, qy{Var{sy}, prop.q};
                bool have = false, lt = false;
                int wk = 0, wl = 0;
                for (auto [k, l] : S.pairs()) {
                    if (k == sx || k == sy || l == sx || l == sy) continue;
                    const Word& t = S.at(k, l);
                    if (occurrences(Var{sx}, t) != prop.c || occurrences(Var{sy}, t) != prop.d)
                        throw std::invalid_argument(
                            "not property-consistent: entry (" + std::to_string(k) + "," +
                            std::to_string(l) + ") has off-profile counts for " +
                            to_string(Var{sx}) + "," + to_string(Var{sy}));
                    bool here = precedes(t, px, qy);
                    if (!have) {
                        have = true;
                        lt = here;
                        wk = k;
                        wl = l;
                    } else if (here != lt) {
                        throw std::invalid_argument(
                            "not property-consistent: scheme order ill-defined, entries (" +
                            std::to_string(wk) + "," + std::to_string(wl) + ") and (" +
                            std::to_string(k) + "," + std::to_string(l) + ") disagree on " +
                            to_string(px) + " vs " + to_string(qy));
                    }
                }
                if (!have)
                    throw std::invalid_argument("no scheme entry avoids both " +
                                                to_string(Var{sx}) + " and " + to_string(Var{sy}));
                int a = order.index_of(px), b = order.index_of(qy);
                if (lt)
                    order.before[a][b] = 1;
                else
                    order.before[b][a] = 1;
            }
        }
    }

    // Transitive closure; a cycle means the reads cannot be an order.
    for (int k = 0; k < m; ++k)
        for (int a = 0; a < m; ++a) {
            if (!order.before[a][k]) continue;
            for (int b = 0; b < m; ++b)
                if (order.before[k][b]) order.before[a][b] = 1;
        }
    for (int a = 0; a < m; ++a)
        if (order.before[a][a])
            throw std::invalid_argument(
                "not property-consistent: scheme order ill-defined (cycle through " +
                to_string(order.carrier[a]) + ")");

    // Equal down-sets; comparable elements always separate.
    std::map<std::vector<char>, std::vector<int>> by_downset;
    for (int a = 0; a < m; ++a) {
        std::vector<char> down(m);
        for (int b = 0; b < m; ++b) down[b] = order.before[b][a];
        by_downset[down].push_back(a);
    }
    for (auto& [down, members] : by_downset) order.classes.push_back(members);
    std::sort(order.classes.begin(), order.classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return order;
}

std::vector<Occ> extend_total_order(const SchemeOrder& order) {
    int m = static_cast<int>(order.carrier.size());
    int nc = static_cast<int>(order.classes.size());
    std::vector<int> class_of(m, -1);
    for (int c = 0; c < nc; ++c)
        for (int a : order.classes[c]) class_of[a] = c;

    std::vector<std::vector<char>> edge(nc, std::vector<char>(nc, 0));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (order.before[a][b] && class_of[a] != class_of[b]) edge[class_of[a]][class_of[b]] = 1;
    for (int c = 0; c < nc; ++c)
        for (int d = 0; d < nc; ++d)
            if (c != d && edge[c][d] && edge[d][c])
                throw std::runtime_error("no total extension");

    std::vector<int> indeg(nc, 0);
    for (int c = 0; c < nc; ++c)
        for (int d = 0; d < nc; ++d)
            if (edge[c][d]) ++indeg[d];

    std::vector<Occ> out;
    std::vector<bool> done(nc, false);
    for (int step = 0; step < nc; ++step) {
        int pick = -1;
        for (int c = 0; c < nc; ++c) {
            if (done[c] || indeg[c] != 0) continue;
            if (pick < 0 || order.carrier[order.classes[c].front()] <
                                order.carrier[order.classes[pick].front()])
                pick = c;
        }
        if (pick < 0) throw std::runtime_error("no total extension");
        done[pick] = true;
        std::vector<int> members = order.classes[pick];
        std::sort(members.begin(), members.end(), [&](int a, int b) {
            return order.carrier[a] < order.carrier[b];  // ascending variable index
        });
        for (int a : members) out.push_back(order.carrier[a]);
        for (int d = 0; d < nc; ++d)
            if (edge[pick][d]) --indeg[d];
    }

    // The arrangement must extend every relation that was read.
    std::map<Occ, int> pos;
    for (int i = 0; i < m; ++i) pos[out[i]] = i;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (order.before[a][b] && pos[order.carrier[a]] >= pos[order.carrier[b]])
                throw std::logic_error("extension violates the scheme order");
    return out;
}

Word term_from_order(const std::vector<Occ>& arrangement) {
    std::map<Var, int> next;
    std::vector<Var> letters;
    for (const Occ& o : arrangement) {
        int expect = ++next[o.var];
        if (o.index != expect)
            throw std::invalid_argument("out-of-order occurrence indices at " + to_string(o));
        letters.push_back(o.var);
    }
    return Word{std::move(letters)};
}

}  // namespace interlock
