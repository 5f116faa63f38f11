#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hopfcyc/symmetries.hpp"

namespace hc {

// Degrees 0..N+1 are stored so that faces out of degree N exist.
// faces[n][i] : degree n -> n+1 for n <= N, 0 <= i <= n+1
// degens[n][j]: degree n -> n-1 for 1 <= n <= N+1, 0 <= j <= n-1
// tau[n]      : degree n -> n for n <= N+1
struct CocyclicComplex {
  int maxdeg = 0;
  std::vector<BasedSpace> spaces;
  std::vector<std::vector<SparseMatrix>> faces;
  std::vector<std::vector<SparseMatrix>> degens;
  std::vector<SparseMatrix> tau;
  // Realization of each space inside an ambient coordinate space. For
  // functional complexes the ambient space is the full dual and embed is the
  // inclusion; for quotient complexes embed is the section and project is the
  // quotient map. Empty when the space is its own ambient space.
  std::vector<SparseMatrix> embed;
  std::vector<SparseMatrix> project;
  std::string certificate;

  Index dim(int n) const { return spaces.at(static_cast<std::size_t>(n)).dim(); }
  int top() const { return maxdeg + 1; }
  const SparseMatrix& face(int n, int i) const;
  const SparseMatrix& degen(int n, int j) const;
  const SparseMatrix& cyclic(int n) const { return tau.at(static_cast<std::size_t>(n)); }
};

// A cochain of a fixed degree in a complex, as coordinates over its basis.
struct Cochain {
  int degree = 0;
  SparseVec coeffs;
};

// Laws are named ds (face-face, degeneracy-degeneracy), sd, ci, cj, ce.
ValidationReport check_cocyclic(const CocyclicComplex& c);

// The complex with Q in every degree and identity structure maps.
CocyclicComplex constant_complex(int maxdeg);

// M (x)_H C^(n+1), realized as a quotient of M (x) C^(n+1).
CocyclicComplex build_coalgebra_complex(const ModuleCoalgebra& mc, const SAYDModule& m, int maxdeg);

// Equivariant functionals on M (x) A^(n+1). The equivariance convention is
// chosen as the first candidate whose subspace all operators preserve and is
// recorded in the certificate; IllDefined if none works.
CocyclicComplex build_algebra_complex(const ModuleAlgebra& ma, const SAYDModule& m, int maxdeg);

// Colinear maps B^(n+1) -> M, stored with flat index x * dim M + m.
CocyclicComplex build_comodule_algebra_complex(const ComoduleAlgebra& ba, const SAYDModule& m, int maxdeg);

// The plain cyclic complex of an algebra: functionals on A^(n+1).
CocyclicComplex build_plain_complex(const AlgebraData& a, int maxdeg);

struct HopfComplexResult {
  CocyclicComplex coalgebra;  // C_H(H, ^sigma Q_delta)
  CocyclicComplex ans;        // the same complex on H^(x)n
  std::vector<SparseMatrix> iso;  // I per degree: coalgebra space -> H^(x)n
  std::string certificate;
};

// Builds both realizations and certifies that I is invertible and conjugates
// every face, degeneracy and cyclic operator. Throws ConjugationFailure.
HopfComplexResult build_hopf_complex(const ModularPair& mp, int maxdeg);
// The H^(x)n complex alone, straight from the structure maps.
CocyclicComplex build_ans_complex(const ModularPair& mp, int maxdeg);

// Tensor product of two cocyclic modules. Horizontal structure comes from the
// first factor, vertical from the second; C^{p,q} = C1^p (x) C2^q.
struct BicocyclicComplex {
  CocyclicComplex first;
  CocyclicComplex second;

  int maxdeg() const;
  Index dim(int p, int q) const { return first.dim(p) * second.dim(q); }
  SparseMatrix hface(int p, int q, int i) const;
  SparseMatrix hdegen(int p, int q, int j) const;
  SparseMatrix htau(int p, int q) const;
  SparseMatrix vface(int p, int q, int i) const;
  SparseMatrix vdegen(int p, int q, int j) const;
  SparseMatrix vtau(int p, int q) const;
};

BicocyclicComplex tensor_bicocyclic(const CocyclicComplex& c1, const CocyclicComplex& c2);
// Structure maps are composites of matching horizontal and vertical maps.
CocyclicComplex diagonal(const BicocyclicComplex& b);
// Structure maps are Kronecker products of the factor maps.
CocyclicComplex product_complex(const CocyclicComplex& c1, const CocyclicComplex& c2);

// Horizontal and vertical operators commute pairwise and rows and columns
// satisfy the cocyclic identities, checked up to degree limit in each
// direction.
ValidationReport check_bicocyclic(const BicocyclicComplex& b, int limit);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

// Versioned text dump keyed by the content hash of the inputs.
std::string dump_complex(const CocyclicComplex& c, const std::string& key);
// Returns false if the dump is from another format version or key.
bool load_complex(const std::string& text, const std::string& key, CocyclicComplex& out);
bool same_complex(const CocyclicComplex& a, const CocyclicComplex& b);

}  // namespace hc
