#include "xstates/error.hpp"
#include "xstates/linalg.hpp"

#include <array>
#include <sstream>

namespace xstates {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TraceError: return "TraceError";
    case ErrorKind::NegativePopulation: return "NegativePopulation";
    case ErrorKind::CoherenceBoundViolated: return "CoherenceBoundViolated";
    case ErrorKind::NotXShaped: return "NotXShaped";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::InfeasibleState: return "InfeasibleState";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UnnormalizedPhases: return "UnnormalizedPhases";
    case ErrorKind::NotMMM: return "NotMMM";
    case ErrorKind::InvalidCoupling: return "InvalidCoupling";
    case ErrorKind::NonOrthonormalOperators: return "NonOrthonormalOperators";
    case ErrorKind::CompletenessViolated: return "CompletenessViolated";
    case ErrorKind::NotPreserving: return "NotPreserving";
    case ErrorKind::StepRejected: return "StepRejected";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string format_error(ErrorKind kind, const std::string& subject, double magnitude) {
  std::ostringstream os;
  os << to_string(kind) << ": " << subject;
  if (magnitude != 0.0) {
    os.precision(6);
    os << " (by " << magnitude << ")";
  }
  return os.str();
}

}  // namespace

Error::Error(ErrorKind kind, std::string subject, double magnitude)
    : std::runtime_error(format_error(kind, subject, magnitude)),
      kind_(kind),
      subject_(std::move(subject)),
      magnitude_(magnitude) {}

Matrix2 pauli(int index) {
  Matrix2 m;
  switch (index) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw Error(ErrorKind::InvalidArgument, "Pauli index out of range");
  }
  return m;
}

Matrix4 kron(const Matrix2& lhs, const Matrix2& rhs) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = lhs(i, j) * rhs;
  return out;
}

Matrix4 pauli_product(int mu, int nu) { return kron(pauli(mu), pauli(nu)); }

namespace {

int pauli_index(char c) {
  switch (c) {
    case 'I': case 'i': case '0': return 0;
    case 'X': case 'x': case '1': return 1;
    case 'Y': case 'y': case '2': return 2;
    case 'Z': case 'z': case '3': return 3;
    default: break;
  }
  throw Error(ErrorKind::ParseError, std::string("unknown Pauli letter '") + c + "'");
}

constexpr std::array<std::string_view, 16> kLabels{
    "II", "IX", "IY", "IZ", "XI", "XX", "XY", "XZ",
    "YI", "YX", "YY", "YZ", "ZI", "ZX", "ZY", "ZZ"};

}  // namespace

Matrix4 pauli_string(std::string_view label) {
  if (label.size() != 2)
    throw Error(ErrorKind::ParseError, "Pauli string must have two letters: " + std::string(label));
  return pauli_product(pauli_index(label[0]), pauli_index(label[1]));
}

std::string_view pauli_label(int mu, int nu) { return kLabels.at(4 * mu + nu); }

Complex hs_inner(const MatrixX& lhs, const MatrixX& rhs) {
  return (lhs.adjoint() * rhs).trace();
}

double hermiticity_defect(const MatrixX& m) { return (m - m.adjoint()).norm(); }

}  // namespace xstates
