#pragma once

#include <vector>

#include "ifsc/errors.hpp"
#include "ifsc/types.hpp"

namespace ifsc {

// Full-rank lattice basis; columns of gen generate the lattice {gen * a}.
class LatticeBasis {
public:
  explicit LatticeBasis(Matrix gen);

  int dim() const { return static_cast<int>(gen_.cols()); }
  const Matrix& gen() const { return gen_; }

private:
  Matrix gen_;
};

// Square integer matrix with nonzero determinant (checked exactly). Rows are
// the integer coefficient vectors a_k of the recovered combinations.
class IntegerCoeffMatrix {
public:
  explicit IntegerCoeffMatrix(IntMatrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const IntMatrix& entries() const { return entries_; }
  long long operator()(int i, int j) const { return entries_(i, j); }

private:
  IntMatrix entries_;
};

struct LllResult {
  LatticeBasis reduced;        // reduced.gen() = original.gen() * transform
  IntegerCoeffMatrix transform;  // unimodular, columns are coefficient vectors
};

// K shortest linearly independent lattice vectors, reported as integer
// coefficient rows sorted by nondecreasing length. exact marks whether the
// lengths are true successive minima (enumeration) or LLL approximations.
struct MinimaResult {
  IntegerCoeffMatrix coeffs;
  std::vector<double> lengths;
  bool exact = false;
};

enum class MinimaMethod { lll, enumerate, automatic };

// Lenstra-Lenstra-Lovasz reduction with parameter delta in (0.25, 1].
// The returned basis is size-reduced (|mu_kj| <= 1/2) and satisfies the
// Lovasz condition; the transform tracks it in exact integer arithmetic.
LllResult lll_reduce(const LatticeBasis& basis, double delta = 0.75);

// Exact successive minima by sphere enumeration (dim <= 8). Deterministic
// tie-breaking: canonical sign (first nonzero coefficient positive), then
// lexicographic order among equal lengths.
MinimaResult brute_force_minima(const LatticeBasis& basis);

// Dispatch: lll uses the reduced basis columns (sorted), enumerate calls the
// oracle, automatic picks enumerate for dim <= 5 and lll above.
MinimaResult shortest_independent_vectors(const LatticeBasis& basis,
                                          MinimaMethod method = MinimaMethod::automatic);

// Exact integer determinant (fraction-free elimination in 128-bit).
int128 int_det(const IntMatrix& m);

// Exact inverse of a unimodular integer matrix; verifies t * inv == I.
IntMatrix unimodular_inverse(const IntMatrix& t);

}  // namespace ifsc
