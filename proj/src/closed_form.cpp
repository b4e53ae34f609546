#include <cmath>

#include "ghost/error.hpp"
#include "ghost/passage.hpp"

namespace ghost {

double closed_form_passage(ClosedForm example, double r, std::optional<double> aux) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(Errc::NonpositiveParameter, "closed forms need r > 0");
  }
  const double root = std::sqrt(r);
  switch (example) {
    case ClosedForm::A1:
      return 2.0 + 2.0 * r * std::log(r) - 2.0 * r * std::log1p(r);
    case ClosedForm::A2:
      return std::log1p(1.0 / r);
    case ClosedForm::A3:
      return std::atan(1.0 / root) / root;
    case ClosedForm::NormalFormSym:
      return 2.0 * std::atan(1.0 / root) / root;
    case ClosedForm::ParamProp1: {
      if (!aux) throw Error(Errc::InvalidArgument, "ParamProp1 needs a(r)");
      if (!(*aux > 0.0)) throw Error(Errc::NonpositiveParameter, "ParamProp1 needs a(r) > 0");
      return 2.0 * *aux * std::atan(*aux);
    }
  }
  throw Error(Errc::InvalidArgument, "unknown closed form");
}

double limit_passage_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(Errc::InvalidArgument, "alpha must be positive");
  }
  if (alpha >= 1.0) {
    throw Error(Errc::DivergentLimit, "passage time diverges as r -> 0+ for alpha >= 1");
  }
  return 1.0 / (1.0 - alpha);
}

}  // namespace ghost
