#pragma once

#include "buffon/rng.hpp"
#include "buffon/surfaces.hpp"

#include <cstdint>
#include <utility>

namespace buffon {

/// One needle drop: centre offset z uniform on [-ell, ell] and tip
/// direction theta uniform on [0, 2*pi).
struct DropSample {
    double z = 0.0;
    double theta = 0.0;
};

struct McResult {
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
    double estimate = 0.0;
    double standard_error = 0.0; // sqrt(p*(1-p)/n)
    std::uint64_t seed = 0;
    double wall_time = 0.0; // seconds
};

/// The drop addressed by (stream, index); deterministic per
/// (seed, stream_id, index).
DropSample sample_drop(const RandomStream& stream, const NeedleSetup& setup,
                       std::uint64_t index);

/// True iff the geodesic needle segment between
/// exp_map(p(z), theta, -ell) and exp_map(p(z), theta, +ell) meets a
/// grating line. Endpoints exactly on a line count as intersections.
/// The centre offset may lie outside [-ell, ell] (shifted-drop runs).
bool intersects_geometric(const NeedleSetup& setup, const DropSample& sample);

/// Same event decided from the closed-form critical angles: the tip
/// direction falls in one of the two antipodal arcs of total measure
/// 2*(2*pi*A(|z|)/C(ell)).
bool intersects_arc(const NeedleSetup& setup, const DropSample& sample);

/// Monte Carlo estimate of the intersection probability over n drops.
/// Hits depend only on (setup, n, seed); samples are addressed by index,
/// so any worker count gives identical results.
McResult estimate(const NeedleSetup& setup, std::uint64_t n,
                  std::uint64_t seed, int workers);

/// Baseline run paired with a run whose sampled centres are shifted by
/// the equator isometry of displacement d before the intersection test.
/// With shared_seed the two runs reuse the same drops (an exact-period d
/// then reproduces the baseline hit count bit for bit); otherwise the
/// runs use independent derived seeds.
std::pair<McResult, McResult> invariance_experiment(const NeedleSetup& setup,
                                                    double d, std::uint64_t n,
                                                    std::uint64_t seed,
                                                    int workers,
                                                    bool shared_seed = false);

} // namespace buffon
