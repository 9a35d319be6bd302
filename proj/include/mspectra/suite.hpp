#pragma once

#include <functional>
#include <optional>

#include <json.hpp>

#include "mspectra/model.hpp"
#include "mspectra/random_gen.hpp"

namespace mspectra {

/// Deterministic parallel sweep: work item k derives everything from its own
/// seed, so scheduling cannot change results.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

/// Witness pages against the classical filtered-complex construction (and
/// the page-1-homology route for r = 2) on one instance. Returns a message
/// on disagreement.
std::optional<std::string> check_oracle_instance(McPtr a, int rmax);

/// Both generating-family cross-checks on one morphism:
/// RLP(I_{r,s}) <=> acyclic fibration and RLP(J_{r,s}) <=> fibration.
std::optional<std::string> check_rlp_instance(const Morphism& f, int r, int s);

/// Two-out-of-three on one composable pair.
std::optional<std::string> check_two_of_three(const Morphism& g, const Morphism& f, int r, int s);

/// Retract closure: f a retract of conj(f + h).
std::optional<std::string> check_retract(Rng& rng, const Morphism& f, const Morphism& h, int r,
                                         int s);

/// Monotonicity of the equivalence classes in (r, s).
std::optional<std::string> check_monotone(const Morphism& f, int r, int s);

/// Involution equivariance of membership.
std::optional<std::string> check_involution_equivariance(const Morphism& f, int r, int s);

struct SuiteConfig {
    std::uint64_t seed = 1;
    int oracle_samples = 12;   // per (N, field)
    int rlp_samples = 6;       // per (N, r, s)
    int axiom_samples = 10;    // per N
    int adjunction_samples = 20;
    int workers = 2;
};

struct SuiteSection {
    std::string name;
    int checked = 0;
    std::vector<std::string> failures;
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<SuiteSection> sections;
    bool ok = true;
};

SuiteReport run_suite(const SuiteConfig& config);
nlohmann::json suite_report_to_json(const SuiteReport& report);

}  // namespace mspectra
