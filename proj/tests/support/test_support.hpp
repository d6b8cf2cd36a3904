#pragma once

#include "snb/counting.hpp"
#include "snb/ordered.hpp"

#include <filesystem>
#include <map>
#include <mutex>

namespace snb::test {

inline std::filesystem::path cache_dir()
{
    return std::filesystem::path(SNB_TEST_CACHE_DIR);
}

/// Default lmax per class for the reference gap-integral tables.
inline std::size_t reference_lmax(SymmetryClass beta)
{
    switch (beta) {
    case SymmetryClass::orthogonal: return 100;
    case SymmetryClass::symplectic: return 50;
    default: return 80;
    }
}

/// Gap integrals at the reference lmax, computed once per process and cached on disk.
inline const GapIntegrals& reference_gaps(SymmetryClass beta)
{
    static std::mutex mu;
    static std::map<SymmetryClass, GapIntegrals> memo;
    std::lock_guard lock(mu);
    auto it = memo.find(beta);
    if (it == memo.end())
        it = memo.emplace(beta, gap_integrals(beta, reference_lmax(beta), {}, {}, cache_dir())).first;
    return it->second;
}

inline SpacingCovariances reference_cov(SymmetryClass beta)
{
    return autocovariances(reference_gaps(beta));
}

/// Covariances truncated to l <= lmax.
inline SpacingCovariances truncated(SpacingCovariances cov, std::size_t lmax)
{
    cov.dI.resize(lmax + 1);
    cov.sigma.resize(lmax + 1);
    return cov;
}

} // namespace snb::test
