#pragma once

#include <string>
#include <vector>

#include "hopfcyc/cocyclic.hpp"

namespace hc {

// b[n] : degree n -> n+1 for n <= N. Throws NotAComplex if b b != 0.
std::vector<SparseMatrix> hochschild_b(const CocyclicComplex& c);

// Signed cyclic operator lambda = (-1)^n tau_n on degree n.
SparseMatrix cyclic_lambda(const CocyclicComplex& c, int n);

struct BBData {
  std::vector<SparseMatrix> b;  // b[n] : n -> n+1, n <= N
  std::vector<SparseMatrix> B;  // B[n] : n -> n-1, B[0] is the zero map to a 0-dim space
  std::string placement;        // which reading of the norm operator passed
};

// B = A B_0 with B_0 = s_{n-1} tau_n (1 - (-1)^n tau_n) and A the norm on
// degree n-1. The sign of lambda there is chosen by b b = B B = bB + Bb = 0;
// throws NotAComplex if no candidate passes.
BBData connes_B(const CocyclicComplex& c);

struct CohomologyReport {
  int maxdeg = 0;
  std::vector<Index> hh;        // n = 0..N
  std::vector<Index> hc;        // n = 0..N
  std::vector<bool> hc_trusted;
  Index hp_even = 0, hp_odd = 0;
  bool hp_even_stable = false, hp_odd_stable = false;
  std::string placement;
  // One echelon representative per class, as vectors over the total space
  // TC^n = C^n + C^(n-2) + ... (blocks in that order) and over C^n for HH.
  std::vector<std::vector<SparseVec>> hc_reps;
  std::vector<std::vector<SparseVec>> hh_reps;

  std::string to_text() const;
};

CohomologyReport compute_cohomology(const CocyclicComplex& c);
// The total differential b + B from TC^n to TC^(n+1), n <= N.
SparseMatrix total_differential(const BBData& bb, const CocyclicComplex& c, int n);

// Basis of {phi in C^n : b phi = 0, lambda phi = phi}, n <= N.
std::vector<SparseVec> cyclic_cocycles(const CocyclicComplex& c, int n);
// Basis of ker b_n.
std::vector<SparseVec> hochschild_cocycles(const CocyclicComplex& c, int n);
// Whether v in C^n is b of something in C^(n-1).
bool is_hochschild_coboundary(const CocyclicComplex& c, int n, const SparseVec& v);
// Whether v in C^n is b of a cyclic cochain in C^(n-1).
bool is_cyclic_coboundary(const CocyclicComplex& c, int n, const SparseVec& v);

}  // namespace hc
