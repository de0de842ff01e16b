#include "buffon/montecarlo.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

namespace buffon {

namespace {

constexpr double kPi = std::numbers::pi;

void require_grating_legal(const NeedleSetup& setup) {
    if (setup.surface().is_sphere() && !setup.commensurate())
        throw std::invalid_argument(
            "sphere setup is not grating-legal: ell must equal pi*r/(2n)");
}

// Nearest-line frame: grating offsets are exact multiples of L, so the
// centre coordinate folds to [-L/2, L/2].
double fold_to_period(double c, double period) {
    return c - period * std::round(c / period);
}

bool intersects_plane(double ell, double c, double theta) {
    const double reach = ell * std::cos(theta);
    const double lo = std::min(c - reach, c + reach);
    const double hi = std::max(c - reach, c + reach);
    const double spacing = 2.0 * ell;
    const double k_lo = std::floor(c / spacing) * spacing;
    const double k_hi = std::ceil(c / spacing) * spacing;
    return (lo <= k_lo && k_lo <= hi) || (lo <= k_hi && k_hi <= hi);
}

bool intersects_disk(double ell, double c, double theta) {
    const SurfacePoint centre = equator_point(Surface::poincare_disk(), c);
    const Surface disk = Surface::poincare_disk();
    const SurfacePoint tip = exp_map(disk, centre, theta, ell);
    const SurfacePoint tail = exp_map(disk, centre, theta, -ell);
    const double spacing = 2.0 * ell;
    for (const double k : {std::floor(c / spacing), std::ceil(c / spacing)}) {
        // Pull the candidate line G_{kL} back to the diameter x = 0; a
        // geodesic segment meets it iff the endpoint x-coordinates
        // straddle or touch zero.
        const Isometry pullback =
            Isometry::from_displacement(disk, -k * spacing);
        const double x1 = pullback.apply(tip).x;
        const double x2 = pullback.apply(tail).x;
        if ((x1 <= 0.0 && x2 >= 0.0) || (x1 >= 0.0 && x2 <= 0.0))
            return true;
    }
    return false;
}

bool intersects_sphere(const NeedleSetup& setup, double c, double theta) {
    const double r = setup.surface().radius();
    const double ell = setup.half_length();
    const int n = *setup.sphere_index();

    const double phi = c / r;
    const double cx = r * std::cos(phi), cy = r * std::sin(phi);
    // Unit tangent at angle theta from the equator direction.
    const double ux = -std::cos(theta) * std::sin(phi);
    const double uy = std::cos(theta) * std::cos(phi);
    const double uz = std::sin(theta);
    // Normal of the needle's great circle (length r).
    const double nx = cy * uz;
    const double ny = -cx * uz;
    const double nz = cx * uy - cy * ux;

    const double cos_reach = r * std::cos(ell / r);
    // The 2n grating points give n distinct great circles, normals
    // (-sin(m*L/r), cos(m*L/r), 0).
    for (int m = 0; m < n; ++m) {
        const double psi = m * 2.0 * ell / r;
        const double gx = -std::sin(psi), gy = std::cos(psi);
        // Intersection directions of the two great circles: +-(N x g).
        double dx = -nz * gy;
        double dy = nz * gx;
        double dz = nx * gy - ny * gx;
        const double norm = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (norm == 0.0)
            return true; // needle lies on the grating circle
        const double along = std::abs(cx * dx + cy * dy) / norm;
        if (along >= cos_reach)
            return true;
    }
    return false;
}

std::uint64_t count_hits(const NeedleSetup& setup, const RandomStream& stream,
                         std::uint64_t begin, std::uint64_t end, double shift) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
        DropSample sample = sample_drop(stream, setup, i);
        sample.z += shift;
        if (intersects_geometric(setup, sample))
            ++hits;
    }
    return hits;
}

McResult run_estimate(const NeedleSetup& setup, std::uint64_t n,
                      std::uint64_t seed, int workers, double shift) {
    require_grating_legal(setup);
    if (n == 0)
        throw std::invalid_argument("sample count must be at least 1");
    if (workers < 1)
        throw std::invalid_argument("worker count must be at least 1");

    const auto start = std::chrono::steady_clock::now();
    const RandomStream stream(seed, 0);

    std::uint64_t hits = 0;
    if (workers == 1) {
        hits = count_hits(setup, stream, 0, n, shift);
    } else {
        std::vector<std::uint64_t> partial(workers, 0);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t begin = n * w / workers;
            const std::uint64_t end = n * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] {
                partial[w] = count_hits(setup, stream, begin, end, shift);
            });
        }
        for (auto& t : pool)
            t.join();
        for (const std::uint64_t p : partial)
            hits += p;
    }

    McResult result;
    result.hits = hits;
    result.samples = n;
    result.estimate = static_cast<double>(hits) / static_cast<double>(n);
    result.standard_error =
        std::sqrt(result.estimate * (1.0 - result.estimate) /
                  static_cast<double>(n));
    result.seed = seed;
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

} // namespace

DropSample sample_drop(const RandomStream& stream, const NeedleSetup& setup,
                       std::uint64_t index) {
    DropSample sample;
    sample.z = (2.0 * stream.uniform01(index, 0) - 1.0) * setup.half_length();
    sample.theta = 2.0 * kPi * stream.uniform01(index, 1);
    return sample;
}

bool intersects_geometric(const NeedleSetup& setup, const DropSample& sample) {
    require_grating_legal(setup);
    switch (setup.surface().kind()) {
    case SurfaceKind::Plane:
        return intersects_plane(setup.half_length(), sample.z, sample.theta);
    case SurfaceKind::Sphere:
        return intersects_sphere(setup, sample.z, sample.theta);
    case SurfaceKind::PoincareDisk:
        return intersects_disk(setup.half_length(), sample.z, sample.theta);
    }
    throw std::logic_error("unreachable surface kind");
}

bool intersects_arc(const NeedleSetup& setup, const DropSample& sample) {
    require_grating_legal(setup);
    const double ell = setup.half_length();
    const double a = std::abs(fold_to_period(sample.z, 2.0 * ell));
    const double cos_theta = std::abs(std::cos(sample.theta));
    switch (setup.surface().kind()) {
    case SurfaceKind::Plane:
        return cos_theta >= a / ell;
    case SurfaceKind::Sphere: {
        const double r = setup.surface().radius();
        return cos_theta >= std::tan(a / r) / std::tan(ell / r);
    }
    case SurfaceKind::PoincareDisk: {
        // Critical cosine from the origin-translated frame: the tip image
        // crosses x = 0 when tanh(a/2)(1+tanh^2(ell/2)) =
        // |cos theta| * tanh(ell/2)(1+tanh^2(a/2)).
        const double ta = std::tanh(a / 2.0);
        const double tl = std::tanh(ell / 2.0);
        const double critical = ta * (1.0 + tl * tl) / (tl * (1.0 + ta * ta));
        return cos_theta >= critical;
    }
    }
    throw std::logic_error("unreachable surface kind");
}

McResult estimate(const NeedleSetup& setup, std::uint64_t n, std::uint64_t seed,
                  int workers) {
    return run_estimate(setup, n, seed, workers, 0.0);
}

std::pair<McResult, McResult> invariance_experiment(const NeedleSetup& setup,
                                                    double d, std::uint64_t n,
                                                    std::uint64_t seed,
                                                    int workers,
                                                    bool shared_seed) {
    const std::uint64_t seed_base = shared_seed ? seed : derive_seed(seed, 1);
    const std::uint64_t seed_shift = shared_seed ? seed : derive_seed(seed, 2);
    // The grating is invariant under shifts by exact multiples of L, so
    // the displacement folds to [-L/2, L/2] (d = L then shifts by zero).
    const double shift = fold_to_period(d, setup.spacing());
    McResult baseline = run_estimate(setup, n, seed_base, workers, 0.0);
    McResult shifted = run_estimate(setup, n, seed_shift, workers, shift);
    return {std::move(baseline), std::move(shifted)};
}

} // namespace buffon
