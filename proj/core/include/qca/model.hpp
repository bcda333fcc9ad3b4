#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qca/lattice.hpp"

namespace qca {

enum class Family { Weyl, Dirac };

/// A+/A-/B+/B- exist for d = 3, A/B for d = 2, Line for d = 1.
enum class Variant { APlus, AMinus, BPlus, BMinus, A, B, Line };

std::string to_string(Variant v);

/// Tag selecting one concrete automaton.
class AutomatonModel {
 public:
  static AutomatonModel weyl(int dimension, Variant variant);
  /// Dirac coupling of the Weyl automaton `variant`; mass in [0, 1].
  static AutomatonModel dirac(int dimension, Variant variant, double mass);
  /// Names: weyl3d-a+, weyl3d-a-, weyl3d-b+, weyl3d-b-, weyl2d-a, weyl2d-b, weyl1d,
  /// and the same with the dirac prefix. `mass` is ignored for Weyl names.
  static AutomatonModel parse(std::string_view name, double mass = 0.0);

  int dimension() const noexcept { return dim_; }
  Family family() const noexcept { return family_; }
  Variant variant() const noexcept { return variant_; }
  double mass() const noexcept { return mass_; }
  double n() const noexcept { return n_; }
  int spin_dimension() const noexcept { return family_ == Family::Weyl ? 2 : 4; }

  /// +1 for the upper sign of a d = 3 pair, -1 for the lower sign, +1 otherwise.
  int chirality() const noexcept;
  /// B variants are transposes of the A variants.
  bool transposed() const noexcept;

  std::string name() const;
  AutomatonModel weyl_base() const;
  /// Same family and transposition, opposite chirality (identity for d < 3).
  AutomatonModel partner() const;
  /// A <-> B.
  AutomatonModel transpose_partner() const;

  const LatticePresentation& lattice() const;

  bool operator==(const AutomatonModel&) const = default;

 private:
  AutomatonModel(int dimension, Family family, Variant variant, double mass);

  int dim_;
  Family family_;
  Variant variant_;
  double mass_;
  double n_;
};

/// The seven Weyl automata.
std::vector<AutomatonModel> weyl_models();
/// Dirac automata over every Weyl base, one per mass.
std::vector<AutomatonModel> dirac_models(std::span<const double> masses);

}  // namespace qca
