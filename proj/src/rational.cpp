#include "crf/rational.hpp"

#include <cctype>

#include "crf/error.hpp"

namespace crf {

std::string rational_text(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string rational_fraction(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view token) {
  auto slash = token.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_token(token))
      throw Error(Errc::ParseError, "bad rational '" + std::string(token) + "'");
    return Rational(BigInt(std::string(token)));
  }
  auto p = token.substr(0, slash);
  auto q = token.substr(slash + 1);
  if (!is_integer_token(p) || !is_integer_token(q))
    throw Error(Errc::ParseError, "bad rational '" + std::string(token) + "'");
  BigInt den{std::string(q)};
  if (den <= 0)
    throw Error(Errc::ParseError,
                "denominator must be positive in '" + std::string(token) + "'");
  return Rational(BigInt(std::string(p)), den);
}

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::EmptySpec: return "EmptySpec";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::DuplicateAssignment: return "DuplicateAssignment";
    case Errc::ZeroTotalWeight: return "ZeroTotalWeight";
    case Errc::ZeroMarginalLabel: return "ZeroMarginalLabel";
    case Errc::SiteOutOfRange: return "SiteOutOfRange";
    case Errc::InstanceTooLarge: return "InstanceTooLarge";
    case Errc::MalformedEvent: return "MalformedEvent";
    case Errc::ConditioningEventNull: return "ConditioningEventNull";
    case Errc::NotAPartition: return "NotAPartition";
    case Errc::NotASubset: return "NotASubset";
    case Errc::OverlappingScopes: return "OverlappingScopes";
    case Errc::EmptyConstraint: return "EmptyConstraint";
    case Errc::UnknownFixture: return "UnknownFixture";
    case Errc::BoundsTooLarge: return "BoundsTooLarge";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace crf
