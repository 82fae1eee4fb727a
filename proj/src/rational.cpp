#include "minproj/rational.hpp"

#include "minproj/error.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace minproj {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::InvalidInput: return "INVALID_INPUT";
    case ErrorCode::NotFullDimensional: return "NOT_FULL_DIMENSIONAL";
    case ErrorCode::NotSymmetric: return "NOT_SYMMETRIC";
    case ErrorCode::SubsetBudgetExceeded: return "SUBSET_BUDGET_EXCEEDED";
    case ErrorCode::SupportBudgetExceeded: return "SUPPORT_BUDGET_EXCEEDED";
    case ErrorCode::NotMinimal: return "NOT_MINIMAL";
    case ErrorCode::CertificateInvalid: return "CERTIFICATE_INVALID";
    case ErrorCode::RankGapViolation: return "RANK_GAP_VIOLATION";
  }
  return "UNKNOWN";
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num)) return std::nullopt;
  Rational result;
  if (slash == std::string_view::npos) {
    result = Rational(mpz_class(std::string(num)));
    return result;
  }
  std::string_view den = text.substr(slash + 1);
  if (den.empty() || den.front() == '-' || !is_integer_literal(den)) return std::nullopt;
  mpz_class d(std::string{den});
  if (d == 0) return std::nullopt;
  result = Rational(mpz_class(std::string(num)), d);
  result.canonicalize();
  return result;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_approx_string(const Rational& value) {
  // mpf keeps enough precision for magnitudes far beyond the double range.
  mpf_class approx(value, 128);
  char buf[64];
  gmp_snprintf(buf, sizeof(buf), "%.12Fg", approx.get_mpf_t());
  return buf;
}

}  // namespace minproj
