#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfcyc/tensor.hpp"

namespace hc {

struct Violation {
  std::string law;
  std::string where;        // basis tuple, e.g. "(g,g,g)"
  std::string discrepancy;  // lhs - rhs as a labelled vector
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string law, std::string where, std::string discrepancy) {
    violations.push_back({std::move(law), std::move(where), std::move(discrepancy)});
  }
  void merge(const ValidationReport& o, const std::string& prefix = "");
  bool has_law(const std::string& law) const;
  std::string to_text() const;
};

// "c*label + ..." rendering of a vector over a based space; "0" if empty.
std::string format_vector(const SparseVec& v, const BasedSpace& space);
std::string format_tuple(const BasedSpace& space, const std::vector<Index>& idx);

struct AlgebraData {
  BasedSpace space;
  StructureTensor mul;  // space x space -> space
  SparseVec unit;

  Index dim() const { return space.dim(); }
  const SparseVec& mul_basis(Index i, Index j) const { return mul.image[i * dim() + j]; }
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
  SparseVec product(const std::vector<SparseVec>& factors) const;  // empty -> unit
  // Left multiplication by a as a matrix.
  SparseMatrix left_mult(const SparseVec& a) const;
};

struct CoalgebraData {
  BasedSpace space;
  StructureTensor comul;  // space -> space (x) space
  SparseVec counit;       // counit values on the basis

  Index dim() const { return space.dim(); }
  const SparseVec& comul_basis(Index i) const { return comul.image[i]; }
  Scalar counit_of(const SparseVec& v) const { return counit.dot(v); }
};

struct HopfData {
  AlgebraData alg;
  CoalgebraData coalg;
  SparseMatrix antipode;
  SparseMatrix antipode_inv;

  Index dim() const { return alg.dim(); }
  const BasedSpace& space() const { return alg.space; }
  SparseVec one() const { return alg.unit; }
};

struct ModularPair {
  HopfData hopf;
  SparseVec delta;  // character values on the basis
  SparseVec sigma;  // group-like element
};

// Trivial one-dimensional Hopf algebra Q.
HopfData trivial_hopf();
AlgebraData trivial_algebra();

ValidationReport validate_algebra(const AlgebraData& a);
ValidationReport validate_coalgebra(const CoalgebraData& c);
ValidationReport validate_hopf(const HopfData& h);
// Character, group-like and delta(sigma) = 1. SAYD validity is checked in
// the symmetries layer.
ValidationReport validate_modular_pair_structure(const ModularPair& mp);

std::optional<SparseMatrix> invert_matrix(const SparseMatrix& m);

// Comultiplication iterated to n output factors, bracketed on the left; it is
// compared against the right bracketing and throws BracketingMismatch.
StructureTensor iterated_coproduct(const CoalgebraData& c, int n);
// Same expansion without the bracketing check, as Terms over n factors.
Terms coproduct_terms(const CoalgebraData& c, Index basis_elem, int n);

SparseMatrix twisted_antipode(const ModularPair& mp);

// The literal involution condition  S~ = Ad sigma  and the squared form
// S~^2 = Ad sigma, evaluated as matrix identities. Reported, not enforced.
bool literal_involution_holds(const ModularPair& mp);
bool squared_involution_holds(const ModularPair& mp);

}  // namespace hc
