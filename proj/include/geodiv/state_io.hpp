#pragma once

#include <optional>
#include <string>

#include "geodiv/classical_complexity.hpp"
#include "geodiv/quantum_complexity.hpp"

namespace geodiv {

enum class StateKind { Simplex, Density, MultiQubit, Joint };

/// A state parsed from a JSON state file. Exactly one of the payload members
/// is set, matching `kind`. Domain invariants are enforced on load with a
/// 1e-9 admission tolerance, then the state is renormalized/symmetrized.
struct LoadedState {
    StateKind kind;
    std::optional<ProbabilityVector> simplex;
    std::optional<DensityMatrix> density;
    std::optional<MultiQubitState> multiqubit;
    std::optional<JointDistribution> joint;
};

LoadedState parse_state_text(const std::string& json_text);
LoadedState load_state_file(const std::string& path);

/// Inverse of parse_state_text; doubles round-trip exactly.
std::string serialize_state(const LoadedState& state);

std::string serialize_simplex(const ProbabilityVector& p);
std::string serialize_density(const DensityMatrix& rho);
std::string serialize_multiqubit(const MultiQubitState& rho);
std::string serialize_joint(const JointDistribution& p);

}  // namespace geodiv
