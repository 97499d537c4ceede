#ifndef GLLP_VERIFY_REPORT_HPP
#define GLLP_VERIFY_REPORT_HPP

#include <cmath>
#include <string>

namespace gllp {

/// One checked claim. `pass` means `measured` respects `bound` within
/// `tolerance`, in the direction the claim calls for (recorded in params as
/// cmp=le or cmp=ge so the CSV stays self-describing).
struct VerifyReport {
  std::string claim_id;
  std::string params;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
  double tolerance = 0.0;
};

inline VerifyReport make_report_le(std::string claim, std::string params,
                                   double measured, double bound,
                                   double tolerance) {
  VerifyReport r;
  r.claim_id = std::move(claim);
  r.params = std::move(params) + ";cmp=le";
  r.measured = measured;
  r.bound = bound;
  r.tolerance = tolerance;
  r.pass = std::isfinite(measured) && measured <= bound + tolerance;
  return r;
}

inline VerifyReport make_report_ge(std::string claim, std::string params,
                                   double measured, double bound,
                                   double tolerance) {
  VerifyReport r;
  r.claim_id = std::move(claim);
  r.params = std::move(params) + ";cmp=ge";
  r.measured = measured;
  r.bound = bound;
  r.tolerance = tolerance;
  r.pass = std::isfinite(measured) && measured >= bound - tolerance;
  return r;
}

}  // namespace gllp

#endif
