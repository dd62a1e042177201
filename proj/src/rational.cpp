#include "hypcoh/rational.hpp"

#include "hypcoh/error.hpp"

namespace hypcoh {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::Disconnected: return "Disconnected";
    case Errc::OracleFailure: return "OracleFailure";
    case Errc::EmptyFamily: return "EmptyFamily";
    case Errc::DegreeZero: return "DegreeZero";
    case Errc::NotACycle: return "NotACycle";
    case Errc::Unbounded: return "Unbounded";
    case Errc::GraphTooLarge: return "GraphTooLarge";
    case Errc::TripleNotFillable: return "TripleNotFillable";
    case Errc::NotC11: return "NotC11";
    case Errc::BoundaryOffT: return "BoundaryOffT";
    case Errc::DisconnectedBase: return "DisconnectedBase";
    case Errc::DisconnectedMember: return "DisconnectedMember";
    case Errc::FamilyNotDisjoint: return "FamilyNotDisjoint";
    case Errc::OrderNotTotal: return "OrderNotTotal";
    case Errc::InductionGap: return "InductionGap";
    case Errc::NotACocycle: return "NotACocycle";
    case Errc::NotWellDefined: return "NotWellDefined";
    case Errc::Unsaturated: return "Unsaturated";
    case Errc::NotRelativelyUniform: return "NotRelativelyUniform";
    case Errc::MismatchedSharp: return "MismatchedSharp";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string distance_string(Distance d) {
  return d == kInfinity ? std::string("inf") : std::to_string(d);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(Errc::ParseError, "empty rational");
  if (s.front() == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error(Errc::ParseError, "bad rational '" + s + "'");
  if (q.get_den() == 0) throw Error(Errc::ParseError, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational ratio(long n, long d) {
  if (d == 0) throw Error(Errc::InvalidArgument, "zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational sup_norm(const Coeff& v) {
  Rational best = 0;
  for (const auto& x : v) {
    Rational a = abs(x);
    if (a > best) best = a;
  }
  return best;
}

bool is_zero(const Coeff& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

}  // namespace hypcoh
