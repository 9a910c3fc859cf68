#include "nullstate/diagrams.hpp"

#include <algorithm>
#include <sstream>

#include "nullstate/errors.hpp"

namespace nullstate {

namespace {

// Endpoint disposition of the not-yet-collapsed arcs relative to span (lo,hi).
enum class Disposition { none_left, all_inside, all_outside, mixed };

Disposition classify_remaining(const ArcDiagram& d, const std::vector<int>& order,
                               std::size_t step) {
    const auto [lo, hi] = d.pairs[order[step]];
    bool any_inside = false;
    bool any_outside = false;
    for (std::size_t l = step + 1; l < order.size(); ++l) {
        for (int e : {d.pairs[order[l]].first, d.pairs[order[l]].second}) {
            if (e > lo && e < hi) {
                any_inside = true;
            } else {
                any_outside = true;
            }
        }
    }
    if (!any_inside && !any_outside) return Disposition::none_left;
    if (any_inside && any_outside) return Disposition::mixed;
    return any_inside ? Disposition::all_inside : Disposition::all_outside;
}

} // namespace

std::int64_t catalan(int n) {
    if (n < 0) throw parameter_error("catalan: n must be nonnegative");
    if (n > 30) throw parameter_error("catalan: n > 30 would overflow 64-bit range");
    std::int64_t c = 1;
    for (int i = 0; i < n; ++i) {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    return c;
}

ArcDiagram make_diagram(int n_pairs, std::vector<std::pair<int, int>> pairs) {
    if (n_pairs < 1) throw parameter_error("make_diagram: n_pairs must be positive");
    if (pairs.size() != static_cast<std::size_t>(n_pairs)) {
        throw parameter_error("make_diagram: expected exactly n_pairs index pairs");
    }
    const int n_points = 2 * n_pairs;
    std::vector<int> seen(n_points + 1, 0);
    for (auto& [i, j] : pairs) {
        if (i > j) std::swap(i, j);
        if (i < 1 || j > n_points || i == j) {
            throw parameter_error("make_diagram: endpoint outside 1..2N");
        }
        ++seen[i];
        ++seen[j];
    }
    for (int i = 1; i <= n_points; ++i) {
        if (seen[i] != 1) {
            throw parameter_error("make_diagram: index " + std::to_string(i) +
                                  " must appear exactly once");
        }
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        for (std::size_t q = p + 1; q < pairs.size(); ++q) {
            auto [i, j] = pairs[p];
            auto [k, l] = pairs[q];
            if (k < i) {
                std::swap(i, k);
                std::swap(j, l);
            }
            if (i < k && k < j && j < l) {
                std::ostringstream os;
                os << "make_diagram: pairs (" << i << "," << j << ") and (" << k << "," << l
                   << ") cross";
                throw parameter_error(os.str());
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return ArcDiagram{n_pairs, std::move(pairs)};
}

std::vector<ArcDiagram> enumerate_diagrams(int n_pairs) {
    if (n_pairs < 1) throw parameter_error("enumerate_diagrams: n_pairs must be positive");
    if (n_pairs > 10) throw parameter_error("enumerate_diagrams: n_pairs > 10 not supported");

    std::vector<ArcDiagram> out;
    std::vector<std::pair<int, int>> current;
    // Match the first free point of each block with every odd-offset partner;
    // blocks are tracked as a stack of [a,b] integer ranges.
    std::vector<std::pair<int, int>> blocks{{1, 2 * n_pairs}};
    auto rec = [&](auto&& self) -> void {
        while (!blocks.empty() && blocks.back().first > blocks.back().second) blocks.pop_back();
        if (blocks.empty()) {
            out.push_back(ArcDiagram{n_pairs, current});
            return;
        }
        auto [a, b] = blocks.back();
        blocks.pop_back();
        for (int j = a + 1; j <= b; j += 2) {
            current.emplace_back(a, j);
            auto saved = blocks;
            if (j + 1 <= b) blocks.emplace_back(j + 1, b);
            if (a + 1 <= j - 1) blocks.emplace_back(a + 1, j - 1);
            self(self);
            blocks = std::move(saved);
            current.pop_back();
        }
        blocks.emplace_back(a, b);
    };
    rec(rec);

    for (auto& d : out) std::sort(d.pairs.begin(), d.pairs.end());
    std::sort(out.begin(), out.end(),
              [](const ArcDiagram& x, const ArcDiagram& y) { return x.pairs < y.pairs; });
    return out;
}

SequenceCheck validate_sequence(const LimitSequence& s) {
    const int n = s.diagram.n_pairs;
    if (static_cast<int>(s.order.size()) != n || static_cast<int>(s.kinds.size()) != n) {
        throw parameter_error("validate_sequence: order/kinds must have one entry per arc");
    }
    std::vector<char> used(n, 0);
    for (int idx : s.order) {
        if (idx < 0 || idx >= n || used[idx]) {
            throw parameter_error("validate_sequence: order is not a permutation of the arcs");
        }
        used[idx] = 1;
    }
    // Re-canonicalize defensively; throws if the diagram itself is malformed.
    make_diagram(n, s.diagram.pairs);

    for (int k = 0; k < n; ++k) {
        const int arc = s.order[k];
        const auto [lo, hi] = s.diagram.pairs[arc];
        const auto disp = classify_remaining(s.diagram, s.order, k);
        std::ostringstream os;
        os << "step " << k + 1 << ", arc (" << lo << "," << hi << "): ";
        switch (disp) {
        case Disposition::none_left:
            break; // final arc, kind free
        case Disposition::all_inside:
            if (s.kinds[arc] != CollapseKind::outer_collapse) {
                os << "item 1 forces outer_collapse";
                return {false, os.str()};
            }
            break;
        case Disposition::all_outside:
            if (s.kinds[arc] != CollapseKind::interval_collapse) {
                os << "item 2 forces interval_collapse";
                return {false, os.str()};
            }
            break;
        case Disposition::mixed:
            os << "remaining endpoints lie on both sides; neither item 1 nor item 2 holds";
            return {false, os.str()};
        }
    }
    return {true, ""};
}

std::vector<LimitSequence> allowable_sequences(const ArcDiagram& d) {
    const ArcDiagram canon = make_diagram(d.n_pairs, d.pairs);
    const int n = canon.n_pairs;

    std::vector<LimitSequence> out;
    std::vector<int> order;
    std::vector<CollapseKind> kinds(n, CollapseKind::interval_collapse);
    std::vector<char> used(n, 0);

    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(order.size()) == n) {
            LimitSequence s{canon, order, kinds};
            out.push_back(std::move(s));
            return;
        }
        for (int arc = 0; arc < n; ++arc) {
            if (used[arc]) continue;
            const auto [lo, hi] = canon.pairs[arc];
            bool any_inside = false;
            bool any_outside = false;
            for (int other = 0; other < n; ++other) {
                if (used[other] || other == arc) continue;
                for (int e : {canon.pairs[other].first, canon.pairs[other].second}) {
                    ((e > lo && e < hi) ? any_inside : any_outside) = true;
                }
            }
            if (any_inside && any_outside) continue; // cannot collapse this arc yet
            used[arc] = 1;
            order.push_back(arc);
            // last arc keeps the canonical interval_collapse default
            kinds[arc] = any_inside ? CollapseKind::outer_collapse
                                    : CollapseKind::interval_collapse;
            self(self);
            kinds[arc] = CollapseKind::interval_collapse;
            order.pop_back();
            used[arc] = 0;
        }
    };
    rec(rec);
    return out;
}

bool same_equivalence_class(const LimitSequence& a, const LimitSequence& b) {
    const auto ca = validate_sequence(a);
    const auto cb = validate_sequence(b);
    if (!ca.ok || !cb.ok) {
        throw parameter_error("same_equivalence_class: inputs must be allowable sequences");
    }
    return make_diagram(a.diagram.n_pairs, a.diagram.pairs) ==
           make_diagram(b.diagram.n_pairs, b.diagram.pairs);
}

} // namespace nullstate
