#ifndef INTERLOCK_PIPELINES_HPP
#define INTERLOCK_PIPELINES_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "interlock/families.hpp"
#include "interlock/monoid.hpp"
#include "interlock/scheme.hpp"
#include "interlock/word.hpp"

namespace interlock {

// A hypothesis failed in a way that leaves the pipeline unable to decide
// either way (as opposed to deciding negatively).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Identity characterization oracle (the fast, syntactic identity test)
// ---------------------------------------------------------------------------

struct CharacterizationSpec {
    int m = 0;
    std::vector<PropSpec> props;
};

// m = 2 with the property set that pins M(aabb)'s identities.
CharacterizationSpec aabb_characterization();
// m with every property P(p<=c, q<=d), 1 <= p <= c <= m, 1 <= q <= d <= m.
CharacterizationSpec bounded_order_characterization(int m);

class CharacterizationOracle {
public:
    explicit CharacterizationOracle(CharacterizationSpec spec);

    const CharacterizationSpec& spec() const { return spec_; }
    bool holds(const Identity& id) const;

    // Set only by a clean corpus validation run; fr_pipeline refuses
    // oracles that never passed the gate.
    bool validated() const { return validated_; }
    void mark_validated() { validated_ = true; }

private:
    CharacterizationSpec spec_;
    bool validated_ = false;
};

// All words over x1..max_vars of length <= max_len, in a fixed order.
std::vector<Word> corpus_words(int max_vars, int max_len);
// First occurrences across u then v appear as x1, x2, ... in order.
bool jointly_canonical(const Word& u, const Word& v);

struct CorpusMismatch {
    Word u, v;
    bool first = false;   // verdict of the first oracle
    bool second = false;  // verdict of the second
};

struct CorpusReport {
    std::uint64_t pairs = 0;
    std::uint64_t identities = 0;  // pairs the first oracle accepts
    std::vector<CorpusMismatch> mismatches;  // first few, deterministic order

    bool agree() const { return mismatches.empty(); }
};

// Compare two identity deciders on every jointly-canonical pair of corpus
// words (u index <= v index).
CorpusReport compare_on_corpus(const std::function<bool(const Identity&)>& first,
                               const std::function<bool(const Identity&)>& second, int max_vars,
                               int max_len);

// Brute force against the characterization on the full corpus; marks the
// oracle validated when they agree everywhere.
CorpusReport validate_characterization(const FiniteMonoid& M, CharacterizationOracle& oracle,
                                       int max_vars, int max_len);

// ---------------------------------------------------------------------------
// Non-finite-relatedness witness pipeline
// ---------------------------------------------------------------------------

struct EqCheckRecord {
    std::string equation;  // which family equation or projection was checked
    std::string params;    // instance, e.g. "r=2,n=3" or "pair=(1,4)"
    std::string status;    // "pass" | "fail" | "not-applicable"
    std::string operand_order;  // which operand order matched, if any
    std::string y_source;       // which family supplied the deleted-head block
    std::string detail;         // witness assignment or error text
};

struct MainConditionsReport {
    int d = 0;                    // occurrence degree of the family
    bool power_migration = false;  // the A identity pair
    bool alpha_in_range = false;   // alpha <= 2d
    std::vector<EqCheckRecord> checks;
    std::vector<std::string> flags;
    bool required_pass = false;
};

MainConditionsReport verify_main_conditions(const FiniteMonoid& M, FamilyId f, int n_max,
                                            int alpha, int beta);

struct IvSearchReport {
    ProjectionConstraints constraints;
    std::vector<Word> survivors;
    std::vector<Word> violating;  // survivors whose end-pair projection collapses
    bool all_fail = false;        // every survivor refutes the final identity
};

// Enumerate every n-ary candidate matching the monoid's equivalence classes
// of the family's pairwise projections (all pairs except {1, n}), then test
// each against the deleted-head projection identity on {x1, xn}.
IvSearchReport condition_iv_search(const FiniteMonoid& M, FamilyId f, int n);

enum class NfrVerdict { witness_established, inconclusive, condition_failed };
std::string to_string(NfrVerdict v);

struct NfrReport {
    std::string monoid;
    FamilyId family{};
    int n = 0, alpha = 0, beta = 0;
    MainConditionsReport conditions;
    SchemeCheckReport scheme_check;
    std::vector<EqCheckRecord> bookkeeping;  // scheme entries force the projections
    bool bookkeeping_pass = false;
    std::optional<IvSearchReport> iv;
    std::string inconclusive_reason;
    NfrVerdict verdict = NfrVerdict::condition_failed;
};

NfrReport nfr_witness(const FiniteMonoid& M, FamilyId f, int n, int alpha, int beta);

// ---------------------------------------------------------------------------
// Finite-relatedness pipeline
// ---------------------------------------------------------------------------

struct FrPipelineReport {
    std::vector<int> occ_profile;          // 1-based, [0] unused
    std::vector<std::string> classes;      // rendered partition of os(F)
    std::vector<Occ> arrangement;
    Word recovered;
    bool comes_from_term_ok = false;
};

// Scheme occurrence profile, property-induced order, total extension, term
// recovery, and a comes-from-term check through the validated oracle.
FrPipelineReport fr_pipeline(const FiniteMonoid& M, const CharacterizationOracle& oracle,
                             const Scheme& S);

// con = {x1..xn}, every count 1 or 2, deterministic in the seed.
Word random_bounded_word(int n, std::uint64_t seed);

struct FrHarnessReport {
    std::string monoid;
    int n = 0;
    CorpusReport gate;
    struct Trip {
        int seed = 0;
        Word term, recovered;
        bool oracle_equal = false;
        bool comes_from_term_ok = false;
        bool ok = false;
    };
    std::vector<Trip> trips;
    bool all_ok = false;
};

FrHarnessReport fr_round_trips(const FiniteMonoid& M, CharacterizationSpec spec, int n, int seeds,
                               int corpus_vars, int corpus_len);

// ---------------------------------------------------------------------------
// Classification table and the added-power experiment
// ---------------------------------------------------------------------------

struct ClassifyRow {
    std::vector<std::string> words;
    std::string expected;  // "finitely-related" | "non-finitely-related"
    std::string method;
    std::string verdict;
    bool asserted = false;  // rows the suite asserts; others are best-effort
    bool match = false;
    std::vector<std::string> flags;
};

struct ClassifyReport {
    std::vector<ClassifyRow> rows;
    bool asserted_ok = false;
};

struct ClassifyOptions {
    int seeds = 20;
    int corpus_vars = 3;
    int corpus_len = 6;
    int nfr_n = 6;
};

ClassifyReport classify_word_sets(const ClassifyOptions& opts = {});

struct Q67Report {
    std::string base_monoid, extended_monoid;
    CorpusReport comparison;
};

// Compare the bounded identity corpora of M(W) and M(W + {a^m}).
Q67Report q67_experiment(const std::vector<Word>& W, int m, int max_vars, int max_len);

}  // namespace interlock

#endif
