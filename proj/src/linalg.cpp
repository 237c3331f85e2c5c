#include "qlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qlab {

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

double frobenius(const ComplexMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

double off_diag_frobenius(const ComplexMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
  if (dim <= 0) throw std::invalid_argument("matrix dimension must be positive");
  e_.assign(static_cast<std::size_t>(dim) * dim, cxd(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

cxd ComplexMatrix::trace() const {
  cxd t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(j, i));
  return m;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cxd& z : e_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_dim(dim_, o.dim_, "matrix add");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_dim(dim_, o.dim_, "matrix subtract");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cxd s) {
  for (cxd& z : e_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "matrix multiply");
  const int d = a.dim();
  ComplexMatrix c(d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const cxd aik = a(i, k);
      if (aik == cxd(0.0, 0.0)) continue;
      for (int j = 0; j < d; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

PureState::PureState(std::vector<cxd> amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.empty()) throw std::invalid_argument("state needs at least one amplitude");
  double n2 = 0.0;
  for (const cxd& a : amp_) n2 += std::norm(a);
  if (std::abs(n2 - 1.0) > 1e-12) {
    throw std::invalid_argument("state is not normalized: <psi|psi> = " +
                                std::to_string(n2));
  }
}

PureState PureState::normalized(std::vector<cxd> amplitudes) {
  double n2 = 0.0;
  for (const cxd& a : amplitudes) n2 += std::norm(a);
  if (n2 <= 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  const double inv = 1.0 / std::sqrt(n2);
  for (cxd& a : amplitudes) a *= inv;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("basis index out of range");
  std::vector<cxd> a(static_cast<std::size_t>(dim), cxd(0.0, 0.0));
  a[static_cast<std::size_t>(index)] = 1.0;
  return PureState(std::move(a));
}

PureState PureState::canonical_phase() const {
  std::vector<cxd> a = amp_;
  for (const cxd& z : a) {
    const double m = std::abs(z);
    if (m > 1e-12) {
      const cxd phase = std::conj(z) / m;
      for (cxd& w : a) w *= phase;
      break;
    }
  }
  return PureState(std::move(a));
}

cxd inner(const PureState& a, const PureState& b) {
  require_same_dim(a.dim(), b.dim(), "inner product");
  cxd s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += std::conj(a.amplitude(i)) * b.amplitude(i);
  return s;
}

double overlap(const PureState& a, const PureState& b) { return std::abs(inner(a, b)); }

PureState apply(const ComplexMatrix& m, const PureState& v) {
  require_same_dim(m.dim(), v.dim(), "matrix-vector apply");
  std::vector<cxd> out(static_cast<std::size_t>(m.dim()), cxd(0.0, 0.0));
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) out[static_cast<std::size_t>(i)] += m(i, j) * v.amplitude(j);
  return PureState(std::move(out));
}

HermitianOperator::HermitianOperator(const ComplexMatrix& m) : m_(m.dim()) {
  const ComplexMatrix adj = m.adjoint();
  double worst = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) worst = std::max(worst, std::abs(m(i, j) - adj(i, j)));
  if (worst > 1e-12) {
    throw std::invalid_argument("matrix is not Hermitian: ||H - H^dag||_max = " +
                                std::to_string(worst));
  }
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) m_(i, j) = 0.5 * (m(i, j) + adj(i, j));
}

HermitianOperator HermitianOperator::identity(int dim) {
  return HermitianOperator(ComplexMatrix::identity(dim), Unchecked{});
}

HermitianOperator HermitianOperator::zero(int dim) {
  return HermitianOperator(ComplexMatrix(dim), Unchecked{});
}

double HermitianOperator::expectation(const PureState& v) const {
  require_same_dim(dim(), v.dim(), "expectation");
  cxd s = 0.0;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      s += std::conj(v.amplitude(i)) * m_(i, j) * v.amplitude(j);
  return s.real();
}

HermitianOperator hermitian_unchecked(ComplexMatrix m) {
  return HermitianOperator(std::move(m), HermitianOperator::Unchecked{});
}

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
  return hermitian_unchecked(a.m_ + b.m_);
}

HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
  return hermitian_unchecked(a.m_ - b.m_);
}

HermitianOperator operator*(double s, const HermitianOperator& a) {
  return hermitian_unchecked(cxd(s, 0.0) * a.m_);
}

HermitianOperator sandwich(const HermitianOperator& s, const HermitianOperator& x) {
  ComplexMatrix m = s.matrix() * x.matrix() * s.matrix();
  // (SXS)^dag = SXS exactly up to rounding; resymmetrize to keep the
  // class invariant bit-tight.
  const ComplexMatrix adj = m.adjoint();
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) m(i, j) = 0.5 * (m(i, j) + adj(i, j));
  return hermitian_unchecked(std::move(m));
}

std::vector<EigenPair> herm_eig(const HermitianOperator& h) {
  const int d = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::identity(d);

  const double scale = frobenius(a);
  const double stop = 1e-13 * scale;
  if (d > 1 && scale > 0.0) {
    const double skip = stop / (4.0 * d * d);
    bool done = false;
    for (int sweep = 0; sweep < 100 && !done; ++sweep) {
      done = off_diag_frobenius(a) <= stop;
      if (done) break;
      for (int p = 0; p < d - 1; ++p) {
        for (int q = p + 1; q < d; ++q) {
          const cxd apq = a(p, q);
          const double m = std::abs(apq);
          if (m <= skip) continue;
          const cxd phase = apq / m;  // e^{i phi}
          const double app = a(p, p).real();
          const double aqq = a(q, q).real();
          const double cot2 = (app - aqq) / (2.0 * m);
          const double t = (cot2 >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(cot2) + std::sqrt(cot2 * cot2 + 1.0));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          // J(p,p)=c, J(p,q)=-s, J(q,p)=s e^{-i phi}, J(q,q)=c e^{-i phi};
          // A <- J^dag A J, V <- V J.
          const cxd se = s * std::conj(phase);
          const cxd ce = c * std::conj(phase);
          for (int k = 0; k < d; ++k) {
            const cxd akp = a(k, p);
            const cxd akq = a(k, q);
            a(k, p) = c * akp + se * akq;
            a(k, q) = -s * akp + ce * akq;
          }
          for (int k = 0; k < d; ++k) {
            const cxd apk = a(p, k);
            const cxd aqk = a(q, k);
            a(p, k) = c * apk + std::conj(se) * aqk;
            a(q, k) = -s * apk + std::conj(ce) * aqk;
          }
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          a(p, p) = a(p, p).real();
          a(q, q) = a(q, q).real();
          for (int k = 0; k < d; ++k) {
            const cxd vkp = v(k, p);
            const cxd vkq = v(k, q);
            v(k, p) = c * vkp + se * vkq;
            v(k, q) = -s * vkp + ce * vkq;
          }
        }
      }
    }
    const double residual = off_diag_frobenius(a);
    if (residual > stop) {
      throw EigensolverError(
          "Jacobi did not converge in 100 sweeps; off-diagonal residual " +
              std::to_string(residual),
          residual);
    }
  }

  std::vector<EigenPair> pairs;
  pairs.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    std::vector<cxd> col(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) col[static_cast<std::size_t>(k)] = v(k, i);
    pairs.push_back({a(i, i).real(),
                     PureState::normalized(std::move(col)).canonical_phase()});
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const EigenPair& x, const EigenPair& y) { return x.value > y.value; });
  return pairs;
}

EigenPair lambda_max(const HermitianOperator& h) { return herm_eig(h).front(); }

HermitianOperator spectral_fn(const HermitianOperator& h,
                              const std::function<double(double)>& f,
                              double support_tol) {
  const std::vector<EigenPair> eig = herm_eig(h);
  double max_abs_eig = 0.0;
  for (const EigenPair& p : eig) max_abs_eig = std::max(max_abs_eig, std::abs(p.value));
  const double cutoff = support_tol * max_abs_eig;

  ComplexMatrix out(h.dim());
  for (const EigenPair& p : eig) {
    if (std::abs(p.value) <= cutoff) continue;
    const double w = f(p.value);
    if (!std::isfinite(w)) {
      throw std::domain_error("spectral function undefined on retained eigenvalue " +
                              std::to_string(p.value));
    }
    out += cxd(w, 0.0) * projector(p.vector).matrix();
  }
  // Eigenvector outer products are Hermitian to rounding only; resymmetrize.
  const ComplexMatrix adj = out.adjoint();
  for (int i = 0; i < out.dim(); ++i)
    for (int j = 0; j < out.dim(); ++j) out(i, j) = 0.5 * (out(i, j) + adj(i, j));
  return hermitian_unchecked(std::move(out));
}

double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a.dim(), b.dim(), "trace product");
  cxd t = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) t += a.matrix()(i, j) * b.matrix()(j, i);
  if (std::abs(t.imag()) > 1e-10) {
    throw std::runtime_error("trace product has imaginary residual " +
                             std::to_string(t.imag()));
  }
  return t.real();
}

HermitianOperator projector(const PureState& v) {
  ComplexMatrix m(v.dim());
  for (int i = 0; i < v.dim(); ++i)
    for (int j = 0; j < v.dim(); ++j)
      m(i, j) = v.amplitude(i) * std::conj(v.amplitude(j));
  return hermitian_unchecked(std::move(m));
}

ComplexMatrix outer(const PureState& u, const PureState& v) {
  require_same_dim(u.dim(), v.dim(), "outer product");
  ComplexMatrix m(u.dim());
  for (int i = 0; i < u.dim(); ++i)
    for (int j = 0; j < u.dim(); ++j)
      m(i, j) = u.amplitude(i) * std::conj(v.amplitude(j));
  return m;
}

}  // namespace qlab
