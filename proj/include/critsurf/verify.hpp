#pragma once

#include <critsurf/embedded_graph.hpp>
#include <critsurf/weights.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace critsurf {

struct VerificationOptions {
    int disk_n = 10;     ///< vertex bound of the girth-4 disk census
    int ring_max = 8;    ///< longest ring of the girth-4 disk census
    int girth5_n = 12;   ///< vertex bound of the girth-5 disk census
    int surface_n = 10;  ///< vertex bound of the sphere and projective-plane census
    int patches = 1000;  ///< collapse-lift instances
    int patch_n = 14;
    std::uint64_t seed = 1;
    int jobs = 1;
    Rational kappa = default_kappa(default_eta());
};

struct CheckResult {
    int criterion = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    std::vector<std::string> failures;
};

struct VerificationReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool ok() const;
    /// Deterministic text: no timings, at most 20 failures listed per check.
    std::string to_text() const;
};

/// Suite ids accepted by run_verification, "all" last.
std::vector<std::string> verification_suites();

/// Throws DomainError for an unknown suite.
VerificationReport run_verification(const std::string& suite, const VerificationOptions& options = {});

/// Random sphere quadrangulation with 5..max_n vertices, grown from a 4-cycle by
/// splitting a face at a new degree-2 vertex or inserting a concentric quad. With
/// `ring` the first face becomes a facial ring.
EmbeddedGraph random_quadrangulation(std::mt19937_64& rng, int max_n, bool ring);

} // namespace critsurf
