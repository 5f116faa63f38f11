#pragma once

#include <vector>

#include "hopfcyc/hopf.hpp"

namespace hc {

// Left action H (x) A -> A making A an H-module algebra.
struct ModuleAlgebra {
  HopfData hopf;
  AlgebraData alg;
  StructureTensor action;

  const SparseVec& act_basis(Index h, Index a) const { return action.image[h * alg.dim() + a]; }
  SparseVec act(const SparseVec& h, const SparseVec& a) const;
  SparseMatrix action_matrix(const SparseVec& h) const;
};

// Left action H (x) C -> C making C an H-module coalgebra.
struct ModuleCoalgebra {
  HopfData hopf;
  CoalgebraData coalg;
  StructureTensor action;

  const SparseVec& act_basis(Index h, Index c) const { return action.image[h * coalg.dim() + c]; }
  SparseVec act(const SparseVec& h, const SparseVec& c) const;
};

// Left coaction B -> H (x) B making B an H-comodule algebra.
struct ComoduleAlgebra {
  HopfData hopf;
  AlgebraData alg;
  StructureTensor coaction;

  const SparseVec& coact_basis(Index b) const { return coaction.image[b]; }
};

// Right action M (x) H -> M and left coaction M -> H (x) M.
struct SAYDModule {
  HopfData hopf;
  BasedSpace space;
  StructureTensor raction;
  StructureTensor lcoaction;

  Index dim() const { return space.dim(); }
  const SparseVec& ract_basis(Index m, Index h) const { return raction.image[m * hopf.dim() + h]; }
  SparseVec ract(const SparseVec& m, const SparseVec& h) const;
  const SparseVec& coact_basis(Index m) const { return lcoaction.image[m]; }
};

// Action C (x) A -> A of a module coalgebra on a module algebra.
struct CoalgebraAction {
  ModuleCoalgebra mc;
  ModuleAlgebra ma;
  StructureTensor action;

  const SparseVec& act_basis(Index c, Index a) const { return action.image[c * ma.alg.dim() + a]; }
  SparseVec act(const SparseVec& c, const SparseVec& a) const;
};

struct SubHopf {
  HopfData hopf;
  std::vector<SparseVec> inclusion;
};

ValidationReport validate_module_algebra(const ModuleAlgebra& ma);
ValidationReport validate_module_coalgebra(const ModuleCoalgebra& mc);
ValidationReport validate_comodule_algebra(const ComoduleAlgebra& ba);
ValidationReport validate_sayd(const SAYDModule& m);
ValidationReport validate_coalgebra_action(const CoalgebraAction& ca);
ValidationReport validate_subhopf(const SubHopf& k);

// The coefficients ^sigma Q_delta: one-dimensional, acted on by delta and
// coacted on by sigma. The pair is an MPI exactly when this passes
// validate_sayd.
SAYDModule mpi_coefficients(const ModularPair& mp);
SAYDModule trivial_coefficients(const HopfData& h);

// H as a module coalgebra over itself by left multiplication.
ModuleCoalgebra regular_module_coalgebra(const HopfData& h);
// H acting on A through the module-algebra action.
CoalgebraAction regular_coalgebra_action(const ModuleAlgebra& ma);
// A with the trivial action h a = eps(h) a.
ModuleAlgebra trivial_module_algebra(const HopfData& h, const AlgebraData& a);
// The trivial Hopf algebra acting on A; its cyclic complex is the plain one.
ModuleAlgebra plain_module_algebra(const AlgebraData& a);
ComoduleAlgebra trivial_comodule_algebra(const HopfData& h);
// H as a comodule algebra over itself by the comultiplication.
ComoduleAlgebra regular_comodule_algebra(const HopfData& h);

struct InvariantSubalgebra {
  AlgebraData alg;
  SparseMatrix inclusion;  // A^K -> A
};
InvariantSubalgebra invariant_subalgebra(const ModuleAlgebra& ma, const SubHopf& k);

struct RelativeCoalgebra {
  ModuleCoalgebra mc;     // C(H,K) with the induced left H-action
  Quotient quotient;      // H -> C(H,K)
  SparseMatrix projection;
};
RelativeCoalgebra relative_coalgebra(const HopfData& h, const SubHopf& k);

// C(H,K) acting on A^K by [h] a = h a. Throws ActionNotDescended.
struct RelativeAction {
  RelativeCoalgebra rel;
  InvariantSubalgebra inv;
  StructureTensor action;  // C(H,K) (x) A^K -> A^K
};
RelativeAction relative_action(const ModuleAlgebra& ma, const SubHopf& k);

AlgebraData crossed_product(const ModuleAlgebra& ma, const ComoduleAlgebra& ba);

struct ConvolutionAlgebra {
  AlgebraData alg;
  // Hom_H(C,A) inside Hom(C,A); flat index of Hom(C,A) is c * dim A + a.
  SparseMatrix inclusion;
};
ConvolutionAlgebra convolution_algebra(const CoalgebraAction& ca);

// natural(a)(c) = c(a), as a matrix A -> Hom_H(C,A) in the basis of the
// convolution algebra. Throws IllDefined if some image is not H-linear.
SparseMatrix natural_map(const CoalgebraAction& ca, const ConvolutionAlgebra& conv);

// Sweedler terms of the n-fold iterated coaction of basis element m of M:
// items (h_1, ..., h_n, m0) with h_1 the outermost leg.
Terms iterated_coaction_m(const SAYDModule& m, Index basis_elem, int n);
// Same for a comodule algebra.
Terms iterated_coaction_b(const ComoduleAlgebra& b, Index basis_elem, int n);

}  // namespace hc
