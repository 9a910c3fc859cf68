#include "nullstate/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "nullstate/errors.hpp"
#include "nullstate/rng.hpp"
#include "nullstate/specfun.hpp"
#include "nullstate/union_find.hpp"

namespace nullstate {

namespace {

constexpr int kMaxSide = 4096;

// Bond/site acceptance by integer threshold: open iff u64 < p * 2^64.
// p = 1/2 thresholds at exactly 2^63.
struct OpenTest {
    std::uint64_t threshold;
    bool always;
    bool never;

    explicit OpenTest(double p)
        : threshold(0), always(p >= 1.0), never(p <= 0.0) {
        if (!always && !never) {
            threshold = static_cast<std::uint64_t>(std::ldexp(p, 64));
        }
    }
    bool open(SplitMix64& rng) const {
        if (always) return true;
        if (never) return false;
        return rng.next() < threshold;
    }
};

// Square-lattice bond trial.  Vertex grid: cols = W+1 columns, rows = H.
// Left/right columns are wired into virtual terminals; vertical bonds inside
// the wired columns are part of the wiring and consume no randomness.
// Sampled bonds, one draw each, in fixed order: horizontals row-major
// (y, then x), then verticals (x in 1..cols-2, row-major).
struct SquareBondLattice {
    int cols, rows;
    std::int32_t terminal_left, terminal_right;
    DisjointSet uf;

    explicit SquareBondLattice(const LatticeSpec& spec)
        : cols(spec.width_cells + 1), rows(spec.height_cells),
          terminal_left(0), terminal_right(1),
          uf(2 + static_cast<std::size_t>(cols - 2) * rows) {}

    std::int32_t node(int x, int y) const {
        if (x == 0) return terminal_left;
        if (x == cols - 1) return terminal_right;
        return 2 + static_cast<std::int32_t>(y) * (cols - 2) + (x - 1);
    }

    bool crossing_trial(SplitMix64& rng, const OpenTest& test) {
        uf.reset();
        for (int y = 0; y < rows; ++y) {
            for (int x = 0; x + 1 < cols; ++x) {
                if (test.open(rng)) uf.unite(node(x, y), node(x + 1, y));
            }
        }
        for (int y = 0; y + 1 < rows; ++y) {
            for (int x = 1; x + 1 < cols; ++x) {
                if (test.open(rng)) uf.unite(node(x, y), node(x, y + 1));
            }
        }
        return uf.connected(terminal_left, terminal_right);
    }
};

// Site percolation on the triangular lattice, realized as the square grid
// plus one down-right diagonal per cell (sheared equilateral embedding).
// Boundary columns are wired open.  Sites sampled row-major, one draw each.
struct TriangularSiteLattice {
    int cols, rows;
    std::int32_t terminal_left, terminal_right;
    DisjointSet uf;
    std::vector<char> open_site;

    explicit TriangularSiteLattice(const LatticeSpec& spec)
        : cols(spec.width_cells + 1), rows(spec.height_cells + 1),
          terminal_left(0), terminal_right(1),
          uf(2 + static_cast<std::size_t>(cols - 2) * rows),
          open_site(static_cast<std::size_t>(cols) * rows, 0) {}

    std::int32_t node(int x, int y) const {
        if (x == 0) return terminal_left;
        if (x == cols - 1) return terminal_right;
        return 2 + static_cast<std::int32_t>(y) * (cols - 2) + (x - 1);
    }
    bool open_at(int x, int y) const {
        if (x == 0 || x == cols - 1) return true; // wired columns
        return open_site[static_cast<std::size_t>(y) * cols + x] != 0;
    }

    bool crossing_trial(SplitMix64& rng, const OpenTest& test) {
        uf.reset();
        for (int y = 0; y < rows; ++y) {
            for (int x = 1; x + 1 < cols; ++x) {
                open_site[static_cast<std::size_t>(y) * cols + x] = test.open(rng) ? 1 : 0;
            }
        }
        auto link = [&](int x0, int y0, int x1, int y1) {
            if (x1 < 0 || x1 >= cols || y1 < 0 || y1 >= rows) return;
            if (open_at(x0, y0) && open_at(x1, y1)) uf.unite(node(x0, y0), node(x1, y1));
        };
        for (int y = 0; y < rows; ++y) {
            for (int x = 0; x < cols; ++x) {
                link(x, y, x + 1, y);
                link(x, y, x, y + 1);
                link(x, y, x + 1, y + 1);
            }
        }
        return uf.connected(terminal_left, terminal_right);
    }
};

template <typename Lattice>
long count_crossings(const LatticeSpec& spec, long lo, long hi, std::uint64_t seed) {
    Lattice lattice(spec);
    const OpenTest test(spec.p_open);
    long crossings = 0;
    for (long t = lo; t < hi; ++t) {
        SplitMix64 rng = SplitMix64::for_trial(seed, static_cast<std::uint64_t>(t));
        if (lattice.crossing_trial(rng, test)) ++crossings;
    }
    return crossings;
}

long run_partition(const LatticeSpec& spec, long lo, long hi, std::uint64_t seed) {
    if (spec.kind == LatticeKind::square_bond) {
        return count_crossings<SquareBondLattice>(spec, lo, hi, seed);
    }
    return count_crossings<TriangularSiteLattice>(spec, lo, hi, seed);
}

} // namespace

double LatticeSpec::aspect_ratio() const {
    if (kind == LatticeKind::triangular_site) {
        // equilateral embedding: row spacing sqrt(3)/2
        return width_cells / (height_cells * std::numbers::sqrt3 / 2.0);
    }
    return static_cast<double>(width_cells) / height_cells;
}

void LatticeSpec::validate() const {
    if (width_cells < 8 || height_cells < 8) {
        throw parameter_error("LatticeSpec: width and height must be at least 8 cells");
    }
    if (width_cells > kMaxSide || height_cells > kMaxSide) {
        throw parameter_error("LatticeSpec: side exceeds the resource guard of " +
                              std::to_string(kMaxSide) + " cells");
    }
    if (!(p_open >= 0.0 && p_open <= 1.0)) {
        throw parameter_error("LatticeSpec: p_open must lie in [0,1]");
    }
}

TrialBatch run_batch(const LatticeSpec& spec, long n_trials, std::uint64_t seed, int threads) {
    spec.validate();
    if (n_trials < 1) throw parameter_error("run_batch: n_trials must be positive");

    int n_workers = threads;
    if (n_workers <= 0) {
        n_workers = static_cast<int>(std::thread::hardware_concurrency());
        if (n_workers < 1) n_workers = 1;
    }
    n_workers = std::min<long>(n_workers, n_trials);
    n_workers = std::min(n_workers, 32);

    long crossings = 0;
    if (n_workers == 1) {
        crossings = run_partition(spec, 0, n_trials, seed);
    } else {
        std::vector<long> partial(n_workers, 0);
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        const long chunk = (n_trials + n_workers - 1) / n_workers;
        for (int w = 0; w < n_workers; ++w) {
            const long lo = w * chunk;
            const long hi = std::min(n_trials, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, w, lo, hi] { partial[w] = run_partition(spec, lo, hi, seed); });
        }
        for (auto& th : pool) th.join();
        for (long c : partial) crossings += c;
    }

    TrialBatch batch;
    batch.spec = spec;
    batch.n_trials = n_trials;
    batch.seed = seed;
    batch.crossings = crossings;
    batch.p_hat = static_cast<double>(crossings) / n_trials;
    batch.stderr_ = std::sqrt(batch.p_hat * (1.0 - batch.p_hat) / n_trials);
    return batch;
}

double cardy_modulus(double aspect_ratio) {
    if (!(aspect_ratio > 0.0)) {
        throw domain_error("cardy_modulus: aspect ratio must be positive");
    }
    // R(m) = K(1-m)/K(m) decreases strictly from +inf to 0 on (0,1).
    double lo = 1e-300;
    double hi = 1.0 - 1e-16;
    auto ratio_at = [](double m) { return elliptic_k(1.0 - m) / elliptic_k(m); };
    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) return mid; // interval exhausted in doubles
        if (ratio_at(mid) > aspect_ratio) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15 * hi) return 0.5 * (lo + hi);
    }
    throw convergence_error("cardy_modulus: bisection failed to converge");
}

double cardy_probability(double aspect_ratio) {
    const double m = cardy_modulus(aspect_ratio);
    const double pref =
        3.0 * std::tgamma(2.0 / 3.0) / (std::tgamma(1.0 / 3.0) * std::tgamma(1.0 / 3.0));
    return pref * std::cbrt(m) * gauss_2f1(1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0, m);
}

CompareReport compare(const LatticeSpec& spec, long n_trials, std::uint64_t seed, int threads) {
    CompareReport report;
    report.batch = run_batch(spec, n_trials, seed, threads);
    report.cardy = cardy_probability(spec.aspect_ratio());
    const double finite_size = 2.0 / std::min(spec.width_cells, spec.height_cells);
    report.allowance = std::max(3.0 * report.batch.stderr_, finite_size);
    const double diff = report.batch.p_hat - report.cardy;
    report.z_score = (report.batch.stderr_ > 0.0) ? diff / report.batch.stderr_ : 0.0;
    report.pass = std::abs(diff) < report.allowance;
    return report;
}

} // namespace nullstate
