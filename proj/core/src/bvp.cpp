#include "shoot/bvp.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "shoot/error.hpp"

namespace shoot {

namespace {

Selector selector_of(const std::vector<BoundaryValue>& bcs, std::size_t n, const char* what) {
  std::vector<std::size_t> idx;
  idx.reserve(bcs.size());
  for (const auto& bc : bcs) idx.push_back(bc.index);
  try {
    return Selector(std::move(idx), n);
  } catch (const Error& e) {
    throw Error(Errc::InvalidArgument, std::string(what) + " indices: " + e.what());
  }
}

Vector values_of(const std::vector<BoundaryValue>& bcs) {
  Vector v;
  v.reserve(bcs.size());
  for (const auto& bc : bcs) v.push_back(bc.value);
  return v;
}

}  // namespace

Selector::Selector(std::vector<std::size_t> indices, std::size_t dimension)
    : indices_(std::move(indices)), dimension_(dimension) {
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (indices_[k] >= dimension_) {
      throw Error(Errc::IndexOutOfRange, "selector index " + std::to_string(indices_[k]) +
                                             " for dimension " + std::to_string(dimension_));
    }
    if (k > 0 && indices_[k] <= indices_[k - 1]) {
      throw Error(Errc::InvalidArgument, "selector indices must be strictly increasing");
    }
  }
}

Selector Selector::complement(const Selector& s) {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < s.dimension_; ++i) {
    if (k < s.indices_.size() && s.indices_[k] == i) {
      ++k;
    } else {
      out.push_back(i);
    }
  }
  return Selector(std::move(out), s.dimension_);
}

void Selector::scatter(std::span<const double> values, std::span<double> x) const {
  if (values.size() != indices_.size()) {
    throw Error(Errc::DimensionMismatch, "scatter: " + std::to_string(values.size()) +
                                             " values for " + std::to_string(indices_.size()) +
                                             " indices");
  }
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (indices_[k] >= x.size()) throw Error(Errc::IndexOutOfRange, "scatter target too short");
    x[indices_[k]] = values[k];
  }
}

Vector select(const Selector& s, std::span<const double> x) {
  Vector out(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] >= x.size()) {
      throw Error(Errc::IndexOutOfRange, "select index " + std::to_string(s[k]) +
                                             " for vector of length " + std::to_string(x.size()));
    }
    out[k] = x[s[k]];
  }
  return out;
}

BvProblem::BvProblem(std::size_t n, double a, double b, RhsFunction rhs,
                     std::vector<BoundaryValue> fixed_initial,
                     std::vector<BoundaryValue> target_terminal, JacobianFunction rhs_jacobian)
    : n_(n), a_(a), b_(b), rhs_(std::move(rhs)), jacobian_(std::move(rhs_jacobian)) {
  if (n_ == 0) throw Error(Errc::InvalidArgument, "state dimension must be positive");
  if (!(a_ < b_)) throw Error(Errc::InvalidArgument, "interval requires a < b");
  if (rhs_.dimension != n_ || !rhs_.eval) {
    throw Error(Errc::InvalidArgument, "rhs dimension does not match the problem");
  }
  initial_ = selector_of(fixed_initial, n_, "fixed initial");
  terminal_ = selector_of(target_terminal, n_, "terminal");
  if (initial_.size() >= n_) {
    throw Error(Errc::InvalidArgument, "every initial value is fixed; this is an IVP");
  }
  if (terminal_.size() != n_ - initial_.size()) {
    throw Error(Errc::InvalidArgument, "need " + std::to_string(n_ - initial_.size()) +
                                           " terminal conditions, got " +
                                           std::to_string(terminal_.size()));
  }
  free_ = Selector::complement(initial_);
  y0_ = values_of(fixed_initial);
  yT_ = values_of(target_terminal);
  if (!all_finite(y0_) || !all_finite(yT_)) {
    throw Error(Errc::InvalidArgument, "boundary values must be finite");
  }
}

Matrix BvProblem::rhs_jacobian(double t, const Vector& x) const {
  if (!jacobian_) return fd_rhs_jacobian(*this, t, x);
  Matrix j = jacobian_(t, x);
  if (j.rows() != n_ || j.cols() != n_) {
    throw Error(Errc::DimensionMismatch, "rhs Jacobian has wrong shape");
  }
  if (!all_finite(j.data())) {
    throw Error(Errc::NonFiniteState, "rhs Jacobian is not finite at t = " + std::to_string(t));
  }
  return j;
}

Vector embed_initial(const BvProblem& p, std::span<const double> c) {
  if (c.size() != p.free_count()) {
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(p.free_count()) +
                                             " unknown initial values, got " +
                                             std::to_string(c.size()));
  }
  Vector x0(p.dimension(), 0.0);
  p.initial_selector().scatter(p.initial_values(), x0);
  p.free_selector().scatter(c, x0);
  return x0;
}

ResidualResult residual(const BvProblem& p, std::span<const double> c,
                        const IntegratorConfig& cfg) {
  if (!all_finite(c)) throw Error(Errc::InvalidArgument, "unknown initial values must be finite");
  ResidualResult out;
  out.trajectory = integrate(p.rhs(), p.a(), p.b(), embed_initial(p, c), cfg);
  out.residual = select(p.terminal_selector(), out.trajectory.final_state());
  for (std::size_t k = 0; k < out.residual.size(); ++k) {
    out.residual[k] -= p.terminal_values()[k];
  }
  return out;
}

Matrix fd_rhs_jacobian(const BvProblem& p, double t, const Vector& x) {
  const std::size_t n = p.dimension();
  if (x.size() != n) throw Error(Errc::DimensionMismatch, "fd_rhs_jacobian: state length");
  const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  Matrix jac(n, n);
  Vector xp = x;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = root_eps * (1.0 + std::abs(x[i]));
    xp[i] = x[i] + h;
    const Vector fp = p.rhs()(t, xp);
    xp[i] = x[i] - h;
    const Vector fm = p.rhs()(t, xp);
    xp[i] = x[i];
    if (fp.size() != n || fm.size() != n) {
      throw Error(Errc::DimensionMismatch, "rhs returned wrong length");
    }
    for (std::size_t r = 0; r < n; ++r) jac(r, i) = (fp[r] - fm[r]) / (2.0 * h);
  }
  if (!all_finite(jac.data())) {
    throw Error(Errc::NonFiniteState, "finite-difference Jacobian is not finite");
  }
  return jac;
}

}  // namespace shoot
