#ifndef EXSUM_PIPELINE_HPP
#define EXSUM_PIPELINE_HPP

#include "exsum/curves.hpp"
#include "exsum/dwork.hpp"
#include "exsum/instance.hpp"
#include "exsum/lseries.hpp"

namespace exsum {

struct DworkReport {
    bool ran = false;
    int64_t precision_used = 0;
    int64_t t_max_used = 0;
    Polygon np;
    bool agrees_with_direct = false;
    std::vector<BoundViolation> bound_violations;
};

struct ZetaReport {
    bool ran = false;
    ZetaNumerator numerator;
    bool functional_equation = false;
    bool point_counts_match = false;
    int64_t point_counts_checked = 0;
    bool curve_np_consistent = false;  // curve NP = L-function NP with slopes
                                       // repeated p-1 times
    int64_t p_rank = 0;
    bool p_rank_expected = false;      // p_rank = (l-1)(p-1)
    Polygon curve_np;
};

struct Report {
    InstanceSpec spec;
    int64_t d = 0;
    int64_t lcm_d = 0;
    Polygon hodge;
    Polygon newton;
    TheoremVerdict verdict;
    LPolynomial L;
    bool segments_expected = false;  // slope-0 and slope-1 lengths are l-1
    bool expected_newton_match = true;
    ZetaReport zeta;
    DworkReport dwork;
    double seconds = 0.0;
    /// True when every internal assertion holds: lies_over, equality
    /// exactly under the congruence criterion, segment shape, any pinned
    /// polygon, and the zeta / p-adic cross-checks that were enabled.
    bool ok = false;
};

Report run_instance(const InstanceSpec& spec);

/// Report serialized as JSON; all rationals appear as "num/den" strings.
std::string report_to_json(const Report& r);

struct CorpusEntry {
    std::string name;
    bool ok = false;
    std::string error;  // nonempty when the instance threw
    double seconds = 0.0;
};

struct CorpusSummary {
    std::vector<CorpusEntry> entries;
    bool ok() const;
    std::string table() const;
};

/// Runs every *.json instance in the directory (sorted by name) across
/// `jobs` worker threads. When `report_dir` is nonempty, writes
/// <name>.report.json files there.
CorpusSummary run_corpus(const std::string& directory, int64_t jobs,
                         const OptionOverrides& overrides = {},
                         const std::string& report_dir = "");

/// One line "x,y_num,y_den" per integer abscissa from 0 to the width.
std::string polygon_csv(const Polygon& P);

/// Minimal SVG overlay of the Newton polygon over the Hodge polygon.
std::string polygons_svg(const Polygon& newton, const Polygon& hodge);

}  // namespace exsum

#endif
