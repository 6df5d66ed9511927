#include "blocksep/error.hpp"
#include "blocksep/rational.hpp"

namespace blocksep {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_partition: return "invalid-partition";
    case ErrorKind::invalid_model: return "invalid-model";
    case ErrorKind::singular_point: return "singular-point";
    case ErrorKind::context_mismatch: return "context-mismatch";
    case ErrorKind::undeclared_param: return "undeclared-param";
    case ErrorKind::unsupported_symbolic_potential: return "unsupported-symbolic-potential";
    case ErrorKind::evaluation_singularity: return "evaluation-singularity";
    case ErrorKind::invalid_integral: return "invalid-integral";
    case ErrorKind::invalid_index: return "invalid-index";
    case ErrorKind::inapplicable_relation: return "inapplicable-relation";
    case ErrorKind::resolution_failure: return "resolution-failure";
    case ErrorKind::singular_sample: return "singular-sample";
    case ErrorKind::oracle_unconverged: return "oracle-unconverged";
    case ErrorKind::inadmissible: return "inadmissible";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0)
    throw Error(ErrorKind::parse_error, "not a rational number: '" + text + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::parse_error, "zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace blocksep
