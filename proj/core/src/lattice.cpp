#include "ifsc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <utility>

#include "ifsc/matrix.hpp"

namespace ifsc {

namespace {

void require_square_int(const IntMatrix& m, const char* who) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw InvalidArgument(std::string(who) + ": matrix must be square and non-empty");
  }
}

int128 abs128(int128 v) { return v < 0 ? -v : v; }

int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Gram-Schmidt state for LLL. mu(i,j) is only meaningful for j < i.
struct Gso {
  Matrix bstar;
  Matrix mu;
  Vector norms2;
};

Gso compute_gso(const Matrix& b) {
  const int n = static_cast<int>(b.cols());
  Gso g;
  g.bstar = Matrix::Zero(b.rows(), n);
  g.mu = Matrix::Zero(n, n);
  g.norms2 = Vector::Zero(n);
  double max_col2 = 0.0;
  for (int j = 0; j < n; ++j) max_col2 = std::max(max_col2, b.col(j).squaredNorm());
  for (int i = 0; i < n; ++i) {
    Vector v = b.col(i);
    for (int j = 0; j < i; ++j) {
      double c = v.dot(g.bstar.col(j)) / g.norms2(j);
      g.mu(i, j) = c;
      v -= c * g.bstar.col(j);
    }
    // Re-orthogonalize when cancellation ate most of the column; a second
    // modified Gram-Schmidt pass restores orthogonality to working precision.
    if (v.squaredNorm() < 1e-8 * b.col(i).squaredNorm()) {
      for (int j = 0; j < i; ++j) {
        double c = v.dot(g.bstar.col(j)) / g.norms2(j);
        g.mu(i, j) += c;
        v -= c * g.bstar.col(j);
      }
    }
    g.norms2(i) = v.squaredNorm();
    if (g.norms2(i) <= 1e-28 * max_col2) {
      throw NumericalInstability("lll_reduce: basis is numerically dependent at column " +
                                 std::to_string(i));
    }
    g.bstar.col(i) = v;
  }
  return g;
}

bool first_nonzero_negative(const IntVector& a) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) != 0) return a(i) < 0;
  }
  return false;
}

bool lex_less(const IntVector& a, const IntVector& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

// Exact integer rank test used by the greedy independence filter. Rows are
// kept in (unnormalized) echelon form; returns false if v is in their span.
class IntRowSpan {
public:
  explicit IntRowSpan(int dim) : dim_(dim) {}

  bool try_add(const IntVector& v) {
    std::vector<int128> w(dim_);
    for (int i = 0; i < dim_; ++i) w[i] = v(i);
    for (const auto& row : rows_) {
      int p = pivot_of(row);
      if (w[p] == 0) continue;
      int128 a = row[p];
      int128 b = w[p];
      int128 g = gcd128(a, b);
      a /= g;
      b /= g;
      for (int i = 0; i < dim_; ++i) w[i] = w[i] * a - row[i] * b;
    }
    int128 g = 0;
    for (int i = 0; i < dim_; ++i) g = gcd128(g, w[i]);
    if (g == 0) return false;  // dependent
    for (int i = 0; i < dim_; ++i) w[i] /= g;
    rows_.push_back(std::move(w));
    std::sort(rows_.begin(), rows_.end(),
              [](const auto& x, const auto& y) { return pivot_of(x) < pivot_of(y); });
    return true;
  }

private:
  static int pivot_of(const std::vector<int128>& row) {
    for (int i = 0; i < static_cast<int>(row.size()); ++i)
      if (row[i] != 0) return i;
    return static_cast<int>(row.size());
  }

  int dim_;
  std::vector<std::vector<int128>> rows_;
};

MinimaResult minima_from_lll(const LatticeBasis& basis) {
  // Reduce at delta close to 1: the approximation factor (1/(delta-1/4))^((K-1)/2)
  // only tightens below the classical 2^((K-1)/2), and in small dimensions the
  // result is almost always the true minima.
  LllResult r = lll_reduce(basis, 0.999);
  const int n = basis.dim();
  struct Item {
    double len;
    IntVector a;
  };
  std::vector<Item> items(n);
  for (int j = 0; j < n; ++j) {
    items[j].len = r.reduced.gen().col(j).norm();
    items[j].a = r.transform.entries().col(j);
    if (first_nonzero_negative(items[j].a)) items[j].a = -items[j].a;
  }
  std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    if (x.len != y.len) return x.len < y.len;
    return lex_less(x.a, y.a);
  });
  IntMatrix coeffs(n, n);
  std::vector<double> lengths(n);
  for (int k = 0; k < n; ++k) {
    coeffs.row(k) = items[k].a.transpose();
    lengths[k] = items[k].len;
  }
  return MinimaResult{IntegerCoeffMatrix(coeffs), std::move(lengths), /*exact=*/false};
}

}  // namespace

LatticeBasis::LatticeBasis(Matrix gen) : gen_(std::move(gen)) {
  if (gen_.rows() == 0 || gen_.cols() == 0) {
    throw InvalidArgument("LatticeBasis: generator must be non-empty");
  }
  if (gen_.rows() != gen_.cols()) {
    throw InvalidArgument("LatticeBasis: generator must be square (full-dimensional lattice)");
  }
  if (!gen_.allFinite()) throw InvalidArgument("LatticeBasis: generator has non-finite entries");
  double scale = 1.0;
  for (int i = 0; i < gen_.rows(); ++i) {
    double row_max = gen_.row(i).cwiseAbs().maxCoeff();
    if (row_max == 0.0) throw Singular("LatticeBasis: generator row is zero");
    scale *= row_max;
  }
  Eigen::PartialPivLU<Matrix> lu(gen_);
  if (std::abs(lu.determinant()) <= 1e-12 * scale) {
    throw Singular("LatticeBasis: generator is singular");
  }
}

IntegerCoeffMatrix::IntegerCoeffMatrix(IntMatrix entries) : entries_(std::move(entries)) {
  require_square_int(entries_, "IntegerCoeffMatrix");
  if (int_det(entries_) == 0) {
    throw Singular("IntegerCoeffMatrix: rows are linearly dependent");
  }
}

int128 int_det(const IntMatrix& m) {
  require_square_int(m, "int_det");
  const int n = static_cast<int>(m.rows());
  // Bareiss intermediates are minors of m; the Hadamard bound caps them, so
  // reject inputs whose minors could overflow 128 bits.
  double hadamard = 1.0;
  for (int i = 0; i < n; ++i) hadamard *= m.row(i).cast<double>().norm();
  if (hadamard > 1e36) {
    throw NumericalInstability("int_det: entries too large for exact 128-bit elimination");
  }
  std::vector<std::vector<int128>> a(n, std::vector<int128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
  int sign = 1;
  int128 prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i) {
        if (a[i][k] != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;  // division is exact
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

IntMatrix unimodular_inverse(const IntMatrix& t) {
  require_square_int(t, "unimodular_inverse");
  const int n = static_cast<int>(t.rows());
  int128 det = int_det(t);
  if (det != 1 && det != -1) {
    throw NotUnimodular("unimodular_inverse: |det| must be exactly 1");
  }
  Matrix invd = inverse(t.cast<double>());
  IntMatrix inv(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = invd(i, j);
      if (std::abs(v) >= 9.0e15 || std::abs(v - std::nearbyint(v)) > 0.3) {
        throw NumericalInstability("unimodular_inverse: entry did not resolve to an integer");
      }
      inv(i, j) = std::llround(v);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int128 s = 0;
      for (int k = 0; k < n; ++k) s += static_cast<int128>(t(i, k)) * inv(k, j);
      if (s != (i == j ? 1 : 0)) {
        throw NumericalInstability("unimodular_inverse: exact product check failed");
      }
    }
  }
  return inv;
}

LllResult lll_reduce(const LatticeBasis& basis, double delta) {
  if (!(delta > 0.25 && delta <= 1.0)) {
    throw InvalidArgument("lll_reduce: delta must lie in (0.25, 1]");
  }
  const int n = basis.dim();
  Matrix b = basis.gen();
  IntMatrix t = IntMatrix::Identity(n, n);
  Gso g = compute_gso(b);

  auto size_reduce = [&](int k, int j) {
    double mu = g.mu(k, j);
    if (std::abs(mu) <= 0.5) return;
    if (std::abs(mu) >= 9.0e15) {
      throw NumericalInstability("lll_reduce: reduction coefficient overflows integer range");
    }
    long long q = std::llround(mu);
    b.col(k) -= static_cast<double>(q) * b.col(j);
    t.col(k) -= q * t.col(j);
    for (int l = 0; l < j; ++l) g.mu(k, l) -= static_cast<double>(q) * g.mu(j, l);
    g.mu(k, j) -= static_cast<double>(q);
  };

  const long long max_iters = 200000LL * n * n + 1000;
  long long iters = 0;
  int k = 1;
  while (k < n) {
    if (++iters > max_iters) {
      throw NumericalInstability("lll_reduce: iteration cap exceeded");
    }
    for (int j = k - 1; j >= 0; --j) size_reduce(k, j);
    double lovasz_rhs = (delta - g.mu(k, k - 1) * g.mu(k, k - 1)) * g.norms2(k - 1);
    if (g.norms2(k) >= lovasz_rhs) {
      ++k;
    } else {
      b.col(k).swap(b.col(k - 1));
      t.col(k).swap(t.col(k - 1));
      g = compute_gso(b);
      k = std::max(k - 1, 1);
    }
  }

  int128 det = int_det(t);
  if (det != 1 && det != -1) {
    throw NumericalInstability("lll_reduce: transform lost unimodularity");
  }
  return LllResult{LatticeBasis(b), IntegerCoeffMatrix(t)};
}

MinimaResult brute_force_minima(const LatticeBasis& basis) {
  const int n = basis.dim();
  if (n > 8) {
    throw DimensionTooLarge("brute_force_minima: dimension " + std::to_string(n) +
                            " exceeds the enumeration limit of 8");
  }
  // Reduce first: conditions the Gram factor and shrinks the search radius.
  LllResult pre = lll_reduce(basis, 0.999);
  const Matrix& rb = pre.reduced.gen();

  double radius2 = 0.0;
  for (int j = 0; j < n; ++j) radius2 = std::max(radius2, rb.col(j).squaredNorm());
  radius2 *= 1.0 + 1e-9;

  Matrix gram = rb.transpose() * rb;
  gram = 0.5 * (gram + Matrix(gram.transpose()));
  Matrix u = cholesky(gram).transpose();  // ||rb * a||^2 == ||u * a||^2

  struct Candidate {
    double len;
    IntVector a;  // original-basis coefficients
  };
  std::vector<Candidate> cands;
  std::vector<long long> a(n, 0);
  long long nodes = 0;
  const long long node_cap = 50'000'000;

  // Depth-first sphere enumeration over reduced-basis coefficients, level
  // n-1 down to 0. Mirror images are skipped by forcing the topmost nonzero
  // coefficient positive.
  std::function<void(int, double, bool)> descend = [&](int i, double cost, bool higher_zero) {
    if (++nodes > node_cap) {
      throw NumericalInstability("brute_force_minima: enumeration node cap exceeded");
    }
    if (i < 0) {
      IntVector a_red(n);
      for (int j = 0; j < n; ++j) a_red(j) = a[j];
      IntVector a_orig = pre.transform.entries() * a_red;
      if (first_nonzero_negative(a_orig)) a_orig = -a_orig;
      double len = (basis.gen() * a_orig.cast<double>()).norm();
      cands.push_back(Candidate{len, std::move(a_orig)});
      return;
    }
    double partial = 0.0;
    for (int j = i + 1; j < n; ++j) partial += u(i, j) * static_cast<double>(a[j]);
    double rem = radius2 - cost;
    if (rem < 0.0) return;
    double center = -partial / u(i, i);
    double halfw = std::sqrt(rem) / u(i, i);
    long long lo = static_cast<long long>(std::ceil(center - halfw - 1e-9));
    long long hi = static_cast<long long>(std::floor(center + halfw + 1e-9));
    if (higher_zero) lo = std::max(lo, 0LL);
    for (long long v = lo; v <= hi; ++v) {
      double term = u(i, i) * static_cast<double>(v) + partial;
      double nc = cost + term * term;
      if (nc > radius2) continue;
      if (higher_zero && v == 0 && i == 0) continue;  // skip the zero vector
      a[i] = v;
      descend(i - 1, nc, higher_zero && v == 0);
    }
    a[i] = 0;
  };
  descend(n - 1, 0.0, true);

  std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    if (x.len != y.len) return x.len < y.len;
    return lex_less(x.a, y.a);
  });

  IntRowSpan span(n);
  IntMatrix coeffs(n, n);
  std::vector<double> lengths;
  lengths.reserve(n);
  for (const Candidate& c : cands) {
    if (static_cast<int>(lengths.size()) == n) break;
    if (!span.try_add(c.a)) continue;
    coeffs.row(static_cast<int>(lengths.size())) = c.a.transpose();
    lengths.push_back(c.len);
  }
  if (static_cast<int>(lengths.size()) != n) {
    throw NumericalInstability("brute_force_minima: search radius missed independent vectors");
  }
  return MinimaResult{IntegerCoeffMatrix(coeffs), std::move(lengths), /*exact=*/true};
}

MinimaResult shortest_independent_vectors(const LatticeBasis& basis, MinimaMethod method) {
  switch (method) {
    case MinimaMethod::enumerate:
      return brute_force_minima(basis);
    case MinimaMethod::lll:
      return minima_from_lll(basis);
    case MinimaMethod::automatic:
      return basis.dim() <= 5 ? brute_force_minima(basis) : minima_from_lll(basis);
  }
  throw InvalidArgument("shortest_independent_vectors: unknown method");
}

}  // namespace ifsc
