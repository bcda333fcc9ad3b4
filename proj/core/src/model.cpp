#include "qca/model.hpp"

#include <cmath>

namespace qca {

namespace {

bool valid_for(int d, Variant v) {
  switch (v) {
    case Variant::APlus:
    case Variant::AMinus:
    case Variant::BPlus:
    case Variant::BMinus: return d == 3;
    case Variant::A:
    case Variant::B: return d == 2;
    case Variant::Line: return d == 1;
  }
  return false;
}

std::string suffix(Variant v) {
  switch (v) {
    case Variant::APlus: return "-a+";
    case Variant::AMinus: return "-a-";
    case Variant::BPlus: return "-b+";
    case Variant::BMinus: return "-b-";
    case Variant::A: return "-a";
    case Variant::B: return "-b";
    case Variant::Line: return "";
  }
  return "";
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::APlus: return "A+";
    case Variant::AMinus: return "A-";
    case Variant::BPlus: return "B+";
    case Variant::BMinus: return "B-";
    case Variant::A: return "A";
    case Variant::B: return "B";
    case Variant::Line: return "line";
  }
  return "unknown";
}

AutomatonModel::AutomatonModel(int dimension, Family family, Variant variant, double mass)
    : dim_(dimension), family_(family), variant_(variant), mass_(mass), n_(std::sqrt(1.0 - mass * mass)) {
  if (dimension < 1 || dimension > 3) throw Error(ErrorCode::InvalidArgument, "dimension must be 1, 2 or 3");
  if (!valid_for(dimension, variant)) {
    throw Error(ErrorCode::InvalidArgument,
                "variant " + to_string(variant) + " does not exist in dimension " + std::to_string(dimension));
  }
  if (!(mass >= 0.0 && mass <= 1.0)) throw Error(ErrorCode::InvalidArgument, "mass must lie in [0, 1]");
}

AutomatonModel AutomatonModel::weyl(int dimension, Variant variant) {
  return {dimension, Family::Weyl, variant, 0.0};
}

AutomatonModel AutomatonModel::dirac(int dimension, Variant variant, double mass) {
  return {dimension, Family::Dirac, variant, mass};
}

AutomatonModel AutomatonModel::parse(std::string_view name, double mass) {
  for (Family f : {Family::Weyl, Family::Dirac}) {
    for (int d = 1; d <= 3; ++d) {
      for (Variant v : {Variant::APlus, Variant::AMinus, Variant::BPlus, Variant::BMinus, Variant::A, Variant::B,
                        Variant::Line}) {
        if (!valid_for(d, v)) continue;
        const std::string candidate =
            std::string(f == Family::Weyl ? "weyl" : "dirac") + std::to_string(d) + "d" + suffix(v);
        if (candidate == name) return f == Family::Weyl ? weyl(d, v) : dirac(d, v, mass);
      }
    }
  }
  // Bare "weyl3d"/"dirac2d" pick the A (upper sign) variant.
  if (name == "weyl3d" || name == "dirac3d") return parse(std::string(name) + "-a+", mass);
  if (name == "weyl2d" || name == "dirac2d") return parse(std::string(name) + "-a", mass);
  throw Error(ErrorCode::InvalidArgument, "unknown model '" + std::string(name) + "'");
}

int AutomatonModel::chirality() const noexcept {
  return (variant_ == Variant::AMinus || variant_ == Variant::BMinus) ? -1 : 1;
}

bool AutomatonModel::transposed() const noexcept {
  return variant_ == Variant::BPlus || variant_ == Variant::BMinus || variant_ == Variant::B;
}

std::string AutomatonModel::name() const {
  return std::string(family_ == Family::Weyl ? "weyl" : "dirac") + std::to_string(dim_) + "d" + suffix(variant_);
}

AutomatonModel AutomatonModel::weyl_base() const { return weyl(dim_, variant_); }

AutomatonModel AutomatonModel::partner() const {
  Variant v = variant_;
  switch (variant_) {
    case Variant::APlus: v = Variant::AMinus; break;
    case Variant::AMinus: v = Variant::APlus; break;
    case Variant::BPlus: v = Variant::BMinus; break;
    case Variant::BMinus: v = Variant::BPlus; break;
    default: break;
  }
  return {dim_, family_, v, mass_};
}

AutomatonModel AutomatonModel::transpose_partner() const {
  Variant v = variant_;
  switch (variant_) {
    case Variant::APlus: v = Variant::BPlus; break;
    case Variant::AMinus: v = Variant::BMinus; break;
    case Variant::BPlus: v = Variant::APlus; break;
    case Variant::BMinus: v = Variant::AMinus; break;
    case Variant::A: v = Variant::B; break;
    case Variant::B: v = Variant::A; break;
    case Variant::Line: break;
  }
  return {dim_, family_, v, mass_};
}

const LatticePresentation& AutomatonModel::lattice() const {
  switch (dim_) {
    case 1: return cached_presentation(1, LatticeKind::Line);
    case 2: return cached_presentation(2, LatticeKind::Square);
    default: return cached_presentation(3, LatticeKind::BodyCenteredCubic);
  }
}

std::vector<AutomatonModel> weyl_models() {
  return {AutomatonModel::weyl(3, Variant::APlus), AutomatonModel::weyl(3, Variant::AMinus),
          AutomatonModel::weyl(3, Variant::BPlus), AutomatonModel::weyl(3, Variant::BMinus),
          AutomatonModel::weyl(2, Variant::A),     AutomatonModel::weyl(2, Variant::B),
          AutomatonModel::weyl(1, Variant::Line)};
}

std::vector<AutomatonModel> dirac_models(std::span<const double> masses) {
  std::vector<AutomatonModel> out;
  for (const AutomatonModel& w : weyl_models()) {
    for (double m : masses) out.push_back(AutomatonModel::dirac(w.dimension(), w.variant(), m));
  }
  return out;
}

}  // namespace qca
