#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twinbld/coxeter.hpp"

namespace twinbld {

/// A positive root found by breadth-first enumeration, with a witness
/// u(alpha_t) = root where l(u) = depth - 1 is minimal.
struct RootWitness {
  Root root;
  int depth;
  WeylElement u;
  int t;
};

/// All positive roots of depth <= depth, in discovery order (depth layers,
/// coordinate order inside a layer).
std::vector<RootWitness> enumerate_positive_roots(CoxPtr cox, int depth);

/// The pencil of positive roots through the vertex of the rank-2 residue the
/// witness gallery ends in, in the natural (successive-reflection) order.
struct VertexFan {
  std::vector<Root> fan;  // alpha_1 .. alpha_m
  int gonality() const { return static_cast<int>(fan.size()); }
};

/// Requires o(s r_gamma) infinite (domain_error otherwise); the witness
/// supplies the minimal gallery whose last wall is gamma's.
VertexFan build_vertex_fan(CoxPtr cox, int s, const RootWitness& gamma);

struct CertEntry {
  Root gamma;
  VertexFan fan;
  int ell;  // 1-based, gamma = fan[ell-1], 1 < ell < m
};

struct CertFailure {
  Root gamma;
  std::string reason;
};

struct WcCertificate {
  std::string type;  // ~A2, ~C2, ~G2
  int gen = 0;       // s
  int depth = 0;
  std::vector<CertEntry> entries;
  std::vector<CertFailure> failures;
  bool complete() const { return failures.empty(); }
};

/// One certificate per (affine type, s, depth). Generation is parallel over
/// roots; `parallel=false` is the serial reference path.
WcCertificate generate_certificate(const std::string& type, int s, int depth,
                                   bool parallel = true);

void write_certificate_json(const WcCertificate& c, std::ostream& out);
WcCertificate parse_certificate_json(std::istream& in);

struct CertVerifyResult {
  bool accepted = false;
  std::vector<std::string> problems;
};

/// Independent verifier: re-enumerates roots, re-tests every order and
/// interiority condition, and checks coverage. Shares no state with
/// generation.
CertVerifyResult verify_certificate(const WcCertificate& c);

/// Single-entry corruptions for negative controls; every mutant must be
/// rejected by the verifier.
WcCertificate mutate_certificate(const WcCertificate& c, std::uint64_t seed);

}  // namespace twinbld
