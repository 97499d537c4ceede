#ifndef GLLP_PROB_HPP
#define GLLP_PROB_HPP

#include <stdexcept>

namespace gllp {

/// A probability or fraction in [0,1]. Construction outside the range throws.
class Probability {
 public:
  Probability() = default;
  explicit Probability(double v) : v_(v) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::domain_error("Probability outside [0,1]");
  }
  double value() const { return v_; }
  operator double() const { return v_; }

 private:
  double v_ = 0.0;
};

}  // namespace gllp

#endif
