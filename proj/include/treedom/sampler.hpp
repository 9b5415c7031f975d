#ifndef TREEDOM_SAMPLER_HPP
#define TREEDOM_SAMPLER_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "treedom/common.hpp"
#include "treedom/tree.hpp"

namespace treedom::oracle {

enum class BoundaryCondition { Plus, Minus, Free };

/// Empirical per-vertex plus-probabilities with batch-means standard errors.
struct SampleStats {
    std::vector<double> mean;
    std::vector<double> std_error;
    long kept_sweeps = 0;
};

/// Single-site heat-bath dynamics for the Ising measure on a finite tree,
/// phantom children below the leaves fixed by the boundary condition.
/// Deterministic sweep order and a fixed uniform-draw scheme make the output
/// a pure function of the seed.  The first half of the sweeps is burn-in.
inline SampleStats gibbs_sample(const FiniteTree& tree, double J, double h,
                                BoundaryCondition boundary, long sweeps,
                                std::uint64_t seed) {
    require_finite(J, "J");
    require_finite(h, "h");
    if (J <= 0.0)
        throw std::domain_error("gibbs_sample: coupling J must be > 0");
    if (sweeps < 1)
        throw std::domain_error("gibbs_sample: sweeps must be >= 1");
    const int n = tree.n_vertices();
    if (n > 100000)
        throw SizeError("gibbs_sample: tree exceeds the sampler vertex cap");

    std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
    for (int v = 1; v < n; ++v)
        children[static_cast<std::size_t>(tree.parent[v])].push_back(v);

    const double bspin = boundary == BoundaryCondition::Plus    ? 1.0
                         : boundary == BoundaryCondition::Minus ? -1.0
                                                                : 0.0;
    std::vector<double> phantom(static_cast<std::size_t>(n), 0.0);
    for (int v = 0; v < n; ++v)
        if (tree.level[v] == tree.depth)
            phantom[static_cast<std::size_t>(v)] =
                bspin * (tree.depth == 0 ? tree.d + 1 : tree.d);

    std::mt19937_64 eng(seed);
    auto uniform = [&eng]() {
        return static_cast<double>(eng() >> 11) * 0x1.0p-53;
    };

    std::vector<int8_t> spin(static_cast<std::size_t>(n),
                             boundary == BoundaryCondition::Minus ? int8_t{-1} : int8_t{1});

    const long burn = sweeps / 2;
    const long kept = sweeps - burn;
    const int nbatch = kept >= 32 ? 32 : 1;
    std::vector<double> sum(static_cast<std::size_t>(n), 0.0);
    std::vector<double> batch_sum(static_cast<std::size_t>(n), 0.0);
    std::vector<double> batch_sq(static_cast<std::size_t>(n), 0.0);
    std::vector<double> batch_mean_sum(static_cast<std::size_t>(n), 0.0);
    long in_batch = 0, batches_done = 0;
    const long batch_len = kept / nbatch;

    for (long s = 0; s < sweeps; ++s) {
        for (int v = 0; v < n; ++v) {
            double field = h + J * phantom[static_cast<std::size_t>(v)];
            if (tree.parent[v] >= 0)
                field += J * spin[static_cast<std::size_t>(tree.parent[v])];
            for (int c : children[static_cast<std::size_t>(v)])
                field += J * spin[static_cast<std::size_t>(c)];
            const double p_plus = logistic(2.0 * field);
            spin[static_cast<std::size_t>(v)] = uniform() < p_plus ? int8_t{1} : int8_t{-1};
        }
        if (s < burn)
            continue;
        for (int v = 0; v < n; ++v) {
            const double up = spin[static_cast<std::size_t>(v)] > 0 ? 1.0 : 0.0;
            sum[static_cast<std::size_t>(v)] += up;
            batch_sum[static_cast<std::size_t>(v)] += up;
        }
        if (++in_batch == batch_len && batches_done < nbatch) {
            for (int v = 0; v < n; ++v) {
                const double bm = batch_sum[static_cast<std::size_t>(v)] / batch_len;
                batch_mean_sum[static_cast<std::size_t>(v)] += bm;
                batch_sq[static_cast<std::size_t>(v)] += bm * bm;
                batch_sum[static_cast<std::size_t>(v)] = 0.0;
            }
            in_batch = 0;
            ++batches_done;
        }
    }

    SampleStats out;
    out.kept_sweeps = kept;
    out.mean.resize(static_cast<std::size_t>(n));
    out.std_error.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        out.mean[static_cast<std::size_t>(v)] = sum[static_cast<std::size_t>(v)] / kept;
        if (batches_done >= 2) {
            const double mb = batch_mean_sum[static_cast<std::size_t>(v)] / batches_done;
            double var = batch_sq[static_cast<std::size_t>(v)] / batches_done - mb * mb;
            var = var > 0.0 ? var : 0.0;
            out.std_error[static_cast<std::size_t>(v)] =
                std::sqrt(var / (batches_done - 1));
        } else {
            // too few sweeps for batching; fall back to the iid formula
            const double m = out.mean[static_cast<std::size_t>(v)];
            out.std_error[static_cast<std::size_t>(v)] =
                std::sqrt(std::max(m * (1.0 - m), 1e-12) / kept);
        }
    }
    return out;
}

}  // namespace treedom::oracle

#endif
