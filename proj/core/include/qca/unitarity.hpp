#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qca/lattice.hpp"
#include "qca/model.hpp"

namespace qca {

struct TransitionEntry {
  std::string label;  // "h1", "-h1", ..., "e"
  IntShift shift;
  SpinMatrix matrix;
};

/// Transition matrices {A_h} over a presentation.
class TransitionSet {
 public:
  TransitionSet(const LatticePresentation& lattice, int spin, std::vector<TransitionEntry> entries);

  const LatticePresentation& lattice() const noexcept { return *lattice_; }
  int spin() const noexcept { return spin_; }
  std::span<const TransitionEntry> entries() const noexcept { return entries_; }
  std::span<TransitionEntry> entries() noexcept { return entries_; }
  /// Entry by label; throws Error(InvalidArgument) if absent.
  const TransitionEntry& at(std::string_view label) const;
  TransitionEntry& at(std::string_view label);

  /// sum_h e^{i h.k} A_h
  SpinMatrix fourier(const WaveVector& k) const;

  TransitionSet conjugated() const;            // {A_h*}
  TransitionSet transposed_reflected() const;  // {A_{-h}^T}
  TransitionSet adjoint_reflected() const;     // {A_{-h}^dagger}
  TransitionSet reflected() const;             // {A_{-h}}

 private:
  const LatticePresentation* lattice_;
  int spin_;
  std::vector<TransitionEntry> entries_;
};

struct Condition {
  std::string id;
  double residual = 0.0;
  bool pass = true;
};

struct CheckReport {
  std::string name;
  std::vector<Condition> conditions;

  bool pass() const;
  double max_residual() const;
};

/// Closed-form transition matrices of the Weyl automaton `variant` in dimension d.
TransitionSet weyl_fixture(Variant variant, int dimension);
/// Transition matrices of any model (Dirac sets carry the on-site entry "e").
TransitionSet transition_set(const AutomatonModel& model);

inline constexpr double kUnitarityTolerance = 1e-12;

/// Sum conditions over each nonzero difference h - h' plus the two completeness sums.
CheckReport check_unitarity(const TransitionSet& ts, double tolerance = kUnitarityTolerance);
/// Rank <= 1 of each A_{+-h} and A_h A_{-h}^dagger = A_h^dagger A_{-h} = 0 (s = 2).
CheckReport check_structure(const TransitionSet& ts, double tolerance = kUnitarityTolerance);

struct GroupElement {
  std::string name;
  std::vector<int> permutation;  // entry index i -> entry index permutation[i]
  SpinMatrix unitary;
};

/// A_{l(h)} = U_l A_h U_l^dagger for every element.
CheckReport check_isotropy(const TransitionSet& ts, std::span<const GroupElement> group,
                           double tolerance = kUnitarityTolerance);

/// Binary rotations about the Cartesian axes with {I, i sx, i sy, i sz}.
std::vector<GroupElement> binary_rotation_group(const TransitionSet& ts);
/// Cyclic axis permutations with the spin-1/2 rotations about (1,1,1).
std::vector<GroupElement> ternary_rotation_group(const TransitionSet& ts);
std::vector<GroupElement> trivial_group(const TransitionSet& ts);

struct ObstructionReport {
  std::vector<WaveVector> probes;
  int unknowns = 8;
  int rank = 0;
  int nullity = 0;
  std::vector<double> singular_values;
};

/// Probe points k = 0 and (pi/2, pi/2, -pi/2).
std::vector<WaveVector> obstruction_probes_minimal();
/// The two minimal probes plus two generic points.
std::vector<WaveVector> obstruction_probes_default();

/// Dimension of the space of on-site A_e with A_e W_k + h.c. = 0 at every probe.
ObstructionReport self_interaction_obstruction(const AutomatonModel& model,
                                               std::span<const WaveVector> probes);
ObstructionReport self_interaction_obstruction(const AutomatonModel& model);

/// Random s = 2 candidate sets on `lattice`; returns how many pass check_unitarity.
int fuzz_candidates(const LatticePresentation& lattice, int trials, std::uint64_t seed);

}  // namespace qca
