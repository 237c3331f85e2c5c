#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlab {

using cxd = std::complex<double>;

// Dense square complex matrix, row-major. Sized for d <= 8; no attempt at
// sparsity or blocking.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim);
  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }
  cxd& operator()(int r, int c) { return e_[static_cast<std::size_t>(r) * dim_ + c]; }
  const cxd& operator()(int r, int c) const {
    return e_[static_cast<std::size_t>(r) * dim_ + c];
  }

  cxd trace() const;
  ComplexMatrix adjoint() const;
  // Largest entry magnitude.
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cxd s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(cxd s, ComplexMatrix a) {
    a *= s;
    return a;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  int dim_;
  std::vector<cxd> e_;
};

// Unit vector in C^d. The constructor rejects vectors whose norm deviates
// from 1 by more than 1e-12; use normalized() to rescale arbitrary input.
class PureState {
 public:
  explicit PureState(std::vector<cxd> amplitudes);
  static PureState normalized(std::vector<cxd> amplitudes);
  static PureState basis(int dim, int index);

  int dim() const { return static_cast<int>(amp_.size()); }
  const std::vector<cxd>& amplitudes() const { return amp_; }
  cxd amplitude(int i) const { return amp_[static_cast<std::size_t>(i)]; }

  // Same ray with the first amplitude above 1e-12 made real and positive.
  PureState canonical_phase() const;

 private:
  std::vector<cxd> amp_;
};

// <a|b>
cxd inner(const PureState& a, const PureState& b);
// |<a|b>|
double overlap(const PureState& a, const PureState& b);
// m * v, as a (re-validated) unit vector.
PureState apply(const ComplexMatrix& m, const PureState& v);

// Hermitian d x d operator. Construction checks ||H - H^dag||_max <= 1e-12
// and stores the symmetrized (H + H^dag)/2, so downstream code can assume
// exact hermiticity.
class HermitianOperator {
 public:
  explicit HermitianOperator(const ComplexMatrix& m);
  static HermitianOperator identity(int dim);
  static HermitianOperator zero(int dim);

  int dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  double trace_real() const { return m_.trace().real(); }
  // <v|H|v>; the imaginary part is exactly zero for Hermitian H.
  double expectation(const PureState& v) const;

  friend HermitianOperator operator+(const HermitianOperator& a,
                                     const HermitianOperator& b);
  friend HermitianOperator operator-(const HermitianOperator& a,
                                     const HermitianOperator& b);
  friend HermitianOperator operator*(double s, const HermitianOperator& a);

 private:
  struct Unchecked {};
  HermitianOperator(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}
  ComplexMatrix m_;

  friend HermitianOperator hermitian_unchecked(ComplexMatrix m);
};

// Internal: wrap a matrix known to be exactly Hermitian by construction.
HermitianOperator hermitian_unchecked(ComplexMatrix m);

// s * x * s for Hermitian s, x (the result is Hermitian).
HermitianOperator sandwich(const HermitianOperator& s, const HermitianOperator& x);

struct EigenPair {
  double value;
  PureState vector;
};

// Raised when the Jacobi sweep cap is hit before the off-diagonal norm drops
// below tolerance; carries the residual for diagnostics.
class EigensolverError : public std::runtime_error {
 public:
  EigensolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Full eigendecomposition of a Hermitian operator by cyclic Jacobi rotations,
// eigenvalues sorted non-increasing, eigenvectors orthonormal with canonical
// phase. Terminates when the off-diagonal Frobenius norm falls below
// 1e-13 * ||H||_F; capped at 100 sweeps.
std::vector<EigenPair> herm_eig(const HermitianOperator& h);

// Largest eigenvalue and a maximizing unit vector.
EigenPair lambda_max(const HermitianOperator& h);

// Applies f to eigenvalues whose magnitude exceeds support_tol * max|lambda|;
// the rest map to 0. Throws std::domain_error if f is non-finite on a
// retained eigenvalue.
HermitianOperator spectral_fn(const HermitianOperator& h,
                              const std::function<double(double)>& f,
                              double support_tol = 1e-10);

// Re tr(AB). For Hermitian A, B the trace is real analytically; an imaginary
// residual above 1e-10 indicates corrupted inputs and throws.
double trace_product(const HermitianOperator& a, const HermitianOperator& b);

// |v><v|
HermitianOperator projector(const PureState& v);

// |u><v| (not Hermitian in general).
ComplexMatrix outer(const PureState& u, const PureState& v);

}  // namespace qlab
