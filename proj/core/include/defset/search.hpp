#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "defset/model.hpp"
#include "defset/oracle.hpp"

namespace defset {

// Splittable 64-bit generator; the fixed algorithm (and the stream
// derivation below) is part of the replay contract: the same seed must
// reproduce the same trace on any platform.
struct SplitMix64 {
    std::uint64_t state = 0;
    std::uint64_t next();
    // Uniform draw from [0, bound) via 128-bit multiply; bound > 0.
    std::uint64_t below(std::uint64_t bound);
};

std::uint64_t splitmix_mix(std::uint64_t z);

// Independent stream for one restart of a seeded search.
SplitMix64 restart_stream(std::uint64_t seed, std::uint64_t restart);

enum class DeletionOrder { random, size_greedy };
const char* to_string(DeletionOrder o);

struct SearchConfig {
    std::uint64_t seed = 0;
    int restarts = 1;
    DeletionOrder deletion_order = DeletionOrder::random;
    EnumerationBudget budget;
};

// One bound check against an oracle-verified defining set. Events in
// the verbatim family make a run fail; corrected-variant events are
// reported as warnings because that constant is the weaker claim.
struct FalsificationEvent {
    bool verbatim = true;
    std::string bound_name;
    double bound_value = 0.0;
    long long set_size = 0;
    std::string object;
    std::string replay;
};

class FalsificationMonitor {
public:
    // d must already carry a defining verdict from the oracle.
    void record_rect(const PartialRectangle& d, const std::string& replay);
    void record_design(const PartialDesign& d, const std::string& replay);
    void merge(const FalsificationMonitor& other);

    const std::vector<FalsificationEvent>& events() const { return events_; }
    bool verbatim_violation() const;
    long long checks() const { return checks_; }

private:
    void push(bool verbatim, const char* name, double bound, long long size,
              std::string object, const std::string& replay);

    std::vector<FalsificationEvent> events_;
    long long checks_ = 0;
};

struct RectSearchResult {
    PartialRectangle best;
    long long best_size = -1;
    int best_restart = -1;
    bool certified_minimal = false;
    bool any_aborted = false;
    std::vector<std::string> trace;
};

struct DesignSearchResult {
    PartialDesign best;
    long long best_size = -1;
    int best_restart = -1;
    bool certified_minimal = false;
    bool any_aborted = false;
    std::vector<std::string> trace;
};

// Greedy deletion from the full object with independent restarts. The
// removable atom is one symbol occurrence in one cell (resp. one
// block). A restart ends when a full pass removes nothing, which
// doubles as the minimality certificate: every remaining atom has been
// oracle-checked as unremovable. Restarts may run on several workers;
// each owns its RNG stream and the best result is chosen by
// (size, restart index), so the outcome is worker-count independent.
RectSearchResult minimize_rect_defining_set(int m, int n, int t, const SearchConfig& config,
                                            FalsificationMonitor* monitor = nullptr,
                                            int workers = 1);
DesignSearchResult minimize_design_defining_set(int v, int k, const SearchConfig& config,
                                                FalsificationMonitor* monitor = nullptr,
                                                int workers = 1);

struct RectComparisonRow {
    int n = 0;
    double verbatim = 0.0;
    double corrected = 0.0;
    double construction_cube = 0.0;   // (n-1)^3 + 1
    double saturated_critical = 0.0;  // n^3 - 2n^2 - n
    double construction_half = 0.0;   // (n^3 - 2n^2 + 2n) / 2
    std::optional<long long> best_search;
    bool bound_exceeds_known_construction = false;
    bool search_below_bound = false;
};

struct DesignComparisonRow {
    int v = 0;
    int k = 0;
    // The three k=3-specific columns are absent for other block sizes.
    std::optional<double> triples;
    double general = 0.0;
    std::optional<double> prior_bound;        // 3 C(v,3) / 7
    std::optional<double> construction_cubic; // (v^3 - 6v^2 + 5v + 6) / 6
    double construction_defect_a = 0.0; // C(v,k) - (v^2 + 3v - 2vk + 2k^2 - 8)/2
    double construction_defect_b = 0.0; // C(v,k) - (v^2 - v - k^2 + k + 2)/2
    double construction_offset = 0.0;  // C(v,k) + (k-1)(k+2)/2 - kv
    std::optional<long long> best_search;
    bool bound_exceeds_known_construction = false;
    bool search_below_bound = false;
};

// Rows for square rectangles n = 2..max_n; best sizes, when supplied,
// are matched to rows by n.
std::vector<RectComparisonRow> rect_comparison_table(
    int max_n, const std::vector<std::pair<int, long long>>& best_sizes = {});
// Rows for designs with this k, v = k+1..max_v (v ≥ 4 for the triples
// column, which is left at its clamped value below that).
std::vector<DesignComparisonRow> design_comparison_table(
    int max_v, int k = 3, const std::vector<std::pair<int, long long>>& best_sizes = {});

std::string to_tsv(const std::vector<RectComparisonRow>& rows);
std::string to_tsv(const std::vector<DesignComparisonRow>& rows);

struct IntersectionReport {
    int order = 0;
    long long squares_checked = 0;
    long long violations = 0;
    std::vector<std::string> details;
    bool holds() const { return violations == 0; }
};

// For a defining set D of the full n-Latin square (n <= 3): every order-n
// Latin square L must see D∩L as a defining set of L.
IntersectionReport intersection_check(const PartialRectangle& d, const EnumerationBudget& budget);

} // namespace defset
