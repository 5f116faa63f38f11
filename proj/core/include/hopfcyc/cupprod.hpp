#pragma once

#include <string>
#include <vector>

#include "hopfcyc/cohomology.hpp"

namespace hc {

// A family of matrices, one per degree 0..top, from one cocyclic module to
// another.
struct ChainMap {
  std::vector<SparseMatrix> maps;
  std::string certificate;
};

// Checks map o op = op o map for every face, degeneracy and cyclic operator
// that stays within the computed degrees. Throws ChainMapFailure naming the
// first failing operator.
void certify_chain_map(const CocyclicComplex& src, const CocyclicComplex& dst, const std::vector<SparseMatrix>& maps,
                       const std::string& name);

// H-module coalgebra C acting on the H-module algebra A, coefficients M.
struct CoalgebraContext {
  CoalgebraAction ca;
  SAYDModule m;
  int maxdeg = 0;
  CocyclicComplex alg;    // C_H(A, M), first factor
  CocyclicComplex coal;   // C_H(C, M), second factor
  CocyclicComplex diag;
  ConvolutionAlgebra conv;
  SparseMatrix natural;   // A -> Hom_H(C, A)
  CocyclicComplex conv_plain;
  CocyclicComplex plain;  // C(A)
};
// Runs every validator first and throws InvalidArgument listing violations.
CoalgebraContext make_coalgebra_context(const CoalgebraAction& ca, const SAYDModule& m, int maxdeg);

// A with the coalgebra C(H,K) acting on A^K.
struct RelativeContext {
  ModuleAlgebra ma;
  SubHopf k;
  SAYDModule m;
  int maxdeg = 0;
  RelativeAction ra;
  CocyclicComplex alg;
  CocyclicComplex coal;   // C_H(C(H,K), M)
  CocyclicComplex diag;
  CocyclicComplex plain;  // C(A^K)
};
RelativeContext make_relative_context(const ModuleAlgebra& ma, const SubHopf& k, const SAYDModule& m, int maxdeg);

// A module algebra and B comodule algebra over the same H.
struct CrossedContext {
  ModuleAlgebra ma;
  ComoduleAlgebra ba;
  SAYDModule m;
  int maxdeg = 0;
  AlgebraData cross;      // A >< B, basis a#b at a * dim B + b
  CocyclicComplex alg;
  CocyclicComplex comod;  // ^H C(B, M)
  CocyclicComplex diag;
  CocyclicComplex plain;  // C(A >< B)
};
CrossedContext make_crossed_context(const ModuleAlgebra& ma, const ComoduleAlgebra& ba, const SAYDModule& m,
                                    int maxdeg);

// phi (x) m (x) c^0..c^n  |->  (f^0..f^n |-> phi(m (x) f^0(c^0) .. f^n(c^n)))
ChainMap psi_c(const CoalgebraContext& ctx);
// psi_c followed by pullback along the natural map.
ChainMap psi(const CoalgebraContext& ctx);
ChainMap psi_r(const RelativeContext& ctx);
// The S^-1 leg assignment is chosen among a few readings as the first one that
// passes the chain-map certificate; the choice is in the certificate.
ChainMap psi_cross(const CrossedContext& ctx);

// AW(phi (x) x) = d_0^q phi (x) d_last^p x in the diagonal, phi of degree p in
// the first factor and x of degree q in the second.
SparseVec alexander_whitney(const CocyclicComplex& first, const CocyclicComplex& second, const Cochain& phi,
                            const Cochain& x);

struct CupResult {
  Cochain value;
  bool b_closed = false;
  bool inputs_cyclic = false;
  bool cyclic = false;  // lambda value = value
};

enum class CoalgebraTarget { Algebra, Convolution };

// Inputs must be Hochschild cocycles (NotACocycle otherwise).
CupResult aw_cup(const CoalgebraContext& ctx, const ChainMap& map, CoalgebraTarget target, const Cochain& phi,
                 const Cochain& x);
CupResult aw_cup(const RelativeContext& ctx, const ChainMap& map, const Cochain& phi, const Cochain& x);
CupResult aw_cup(const CrossedContext& ctx, const ChainMap& map, const Cochain& phi, const Cochain& psi);

// The closed formula
//   phi(m(0) (x) c0(p+1)(a0) c1(a1)..cq(aq) (x) (m(-p) c0(1))(a(q+1)) (x) ..
//       (x) (m(-1) c0(p))(a(p+q)))
// summed over the section representative of x. Throws MismatchWithAW if it
// differs from aw_cup through psi.
Cochain cup_explicit_coalgebra(const CoalgebraContext& ctx, const ChainMap& psi_map, const Cochain& phi,
                               const Cochain& x);

struct CrossedExplicit {
  Cochain normative;    // aw_cup through psi_cross
  Cochain closed_form;  // the closed Hochschild-level formula
  bool match = false;
};
CrossedExplicit cup_explicit_crossed(const CrossedContext& ctx, const ChainMap& cross_map, const Cochain& phi,
                                     const Cochain& psi);

// Linear conditions tau(h a) = delta(h) tau(a), tau(a b) = tau(b (sigma a)).
ValidationReport validate_trace(const ModularPair& mp, const ModuleAlgebra& ma, const SparseVec& trace);

// chi(h^1..h^n)(a^0..a^n) = tau(a^0 h^1(a^1) .. h^n(a^n)) from the complex on
// H^(x)n to the plain complex of A, certified as a chain map.
ChainMap char_map(const ModularPair& mp, const ModuleAlgebra& ma, const SparseVec& trace, int maxdeg);

struct ShufflePermutation {
  int q = 0, p = 0;
  std::vector<int> image;  // image[i-1] = sigma(i)
  int sign = 1;
};
// All block-monotone permutations, lexicographic in image.
std::vector<ShufflePermutation> shuffle_set(int q, int p);

// Sum over Sh(q,p) of the shuffled faces, phi of degree p on A getting faces at
// sigma(1..q)-1 and psi of degree q on B at sigma(q+1..q+p)-1, evaluated by
// the normal-ordered map phi(psi(b0(0)..b(n-1)(0), bn) (x) a0 (x) b0(-n)a1 ..).
Cochain shuffle_cup_traces(const CrossedContext& ctx, const Cochain& phi, const Cochain& psi);
// The normal-ordered evaluation itself, per degree.
ChainMap normal_ordered_map(const CrossedContext& ctx);
// x of degree p on C, phi of degree q on A; phi takes the faces at
// sigma(q+1..q+p)-1 and x those at sigma(1..q)-1, evaluated through psi.
Cochain cotrace_cup(const CoalgebraContext& ctx, const ChainMap& psi_map, const Cochain& x, const Cochain& phi);

struct OracleResult {
  int p = 0, q = 0;
  std::size_t words = 0;        // terms in the expanded component
  bool literal_match = false;   // crossed expansion read as A-part then B-part
  bool sorted_match = false;    // after sorting into bidegree (q,p)
  std::string first_difference;
};
// Symbolic expansion of a0#b0 d(a1#b1)..d(an#bn), n = p+q <= 3, compared with
// the signed sum of the shuffle forms. Throws DegreeCapExceeded above 3.
OracleResult dg_expand_oracle(int p, int q);

}  // namespace hc
