#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nullstate {

/**
 * Noncrossing perfect matching of the boundary points 1..2N.
 *
 * Canonical form: pairs (i,j) with i<j, sorted by left endpoint.  Two pairs
 * (i,j), (k,l) never interleave as i<k<j<l.
 */
struct ArcDiagram {
    int n_pairs = 0;
    std::vector<std::pair<int, int>> pairs;

    bool operator==(const ArcDiagram&) const = default;
};

// Validates and canonicalizes; throws parameter_error on a crossing pair,
// a repeated index, or an index outside 1..2N.
ArcDiagram make_diagram(int n_pairs, std::vector<std::pair<int, int>> pairs);

enum class CollapseKind { interval_collapse, outer_collapse };

/**
 * An ordered execution plan for collapsing every arc of a diagram.
 *
 * order[k] is the (0-based) index into diagram.pairs of the arc collapsed at
 * step k; kinds[j] is the collapse kind assigned to arc j.  The nesting rule:
 * at each step the endpoints of the not-yet-collapsed arcs must lie either
 * all inside the collapsing arc's span (forcing outer_collapse) or all
 * outside it (forcing interval_collapse); the final arc's kind is free.
 */
struct LimitSequence {
    ArcDiagram diagram;
    std::vector<int> order;
    std::vector<CollapseKind> kinds;
};

struct SequenceCheck {
    bool ok = false;
    std::string violation; // empty when ok; names the first violated rule
};

// Catalan number C_n = (2n)!/(n!(n+1)!).  Guarded to n <= 30 (64-bit range).
std::int64_t catalan(int n);

// All noncrossing perfect matchings of 1..2N in lexicographic order on the
// canonical pair lists.  This ordering defines the connectivity index used
// by the dual-vector machinery.  Guarded to n_pairs <= 10.
std::vector<ArcDiagram> enumerate_diagrams(int n_pairs);

// Every (order, kinds) assignment satisfying the nesting rule.  The last
// collapsed arc's kind is unconstrained; it is emitted once, canonicalized
// to interval_collapse.
std::vector<LimitSequence> allowable_sequences(const ArcDiagram& d);

// Rule check with a diagnostic naming the first violated rule.  Throws
// parameter_error on structurally malformed input (bad sizes, order not a
// permutation).
SequenceCheck validate_sequence(const LimitSequence& s);

// Sequences are equivalent iff their diagrams are identical.
bool same_equivalence_class(const LimitSequence& a, const LimitSequence& b);

} // namespace nullstate
