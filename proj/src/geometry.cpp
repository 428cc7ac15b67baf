#include "curvlab/geometry.hpp"

#include <string>

namespace curvlab {

namespace {

Eigen::MatrixXd values(const Tensor<Jet>& t) {
  Eigen::MatrixXd m(t.dim(), t.dim());
  for (int i = 0; i < t.dim(); ++i) {
    for (int j = 0; j < t.dim(); ++j) m(i, j) = t(i, j).value();
  }
  return m;
}

Tensor<Jet> truncate_all(const Tensor<Jet>& t, int order) {
  Tensor<Jet> out(t.dim(), t.variance(), Jet(t.entries()[0].dim(), order));
  for (std::size_t k = 0; k < t.entries().size(); ++k) out.entries()[k] = t.entries()[k].truncated(order);
  return out;
}

int jet_order(const Tensor<Jet>& t) { return t.entries()[0].order(); }

void require_order(const Tensor<Jet>& g, int needed, const char* what) {
  if (jet_order(g) < needed) {
    throw DegenerateOrderError(std::string(what) + " needs metric jets of order " + std::to_string(needed) + ", got " +
                               std::to_string(jet_order(g)));
  }
}

/// Intermediate quantities shared by the individual operations.
struct Pipeline {
  int n;
  Tensor<Jet> g_inv;
  Tensor<Jet> gamma;  // order(g) - 1
  Tensor<Jet> riem;   // order(g) - 2
  Tensor<Jet> rho;    // order(g) - 2
  Jet tau;

  explicit Pipeline(const Tensor<Jet>& g)
      : n(g.dim()), g_inv(inverse_metric(g)), gamma(christoffel_with(g, g_inv)), riem(riemann_with(g, gamma)),
        rho(riem), tau(riem.entries()[0]) {
    auto [r, t] = ricci_tau(riem, truncate_all(g_inv, jet_order(riem)));
    rho = std::move(r);
    tau = std::move(t);
  }

  static Tensor<Jet> christoffel_with(const Tensor<Jet>& g, const Tensor<Jet>& g_inv) {
    const int n = g.dim();
    require_order(g, 1, "christoffel");
    const int order = jet_order(g) - 1;
    const Tensor<Jet> ginv = truncate_all(g_inv, order);
    std::vector<Tensor<Jet>> dg;  // dg[l](i, j) = d_l g_ij
    for (int l = 0; l < n; ++l) {
      Tensor<Jet> d = Tensor<Jet>::lower(n, 2, Jet(n, order));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) d(i, j) = jet_partial(g(i, j), l);
      }
      dg.push_back(std::move(d));
    }
    Tensor<Jet> gamma(n, {Slot::Upper, Slot::Lower, Slot::Lower}, Jet(n, order));
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          Jet acc(n, order);
          for (int l = 0; l < n; ++l) acc += ginv(k, l) * (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) - dg[static_cast<std::size_t>(l)](i, j));
          acc *= 0.5;
          gamma(k, j, i) = acc;
          gamma(k, i, j) = std::move(acc);
        }
      }
    }
    return gamma;
  }

  static Tensor<Jet> riemann_with(const Tensor<Jet>& g, const Tensor<Jet>& gamma) {
    const int n = g.dim();
    require_order(g, 2, "riemann");
    const int order = jet_order(g) - 2;
    const Tensor<Jet> gam = truncate_all(gamma, order);
    const Tensor<Jet> gl = truncate_all(g, order);
    // R^p_ijk = d_i Gamma^p_jk - d_j Gamma^p_ik + Gamma^m_jk Gamma^p_im - Gamma^m_ik Gamma^p_jm
    Tensor<Jet> up(n, {Slot::Upper, Slot::Lower, Slot::Lower, Slot::Lower}, Jet(n, order));
    for (int p = 0; p < n; ++p) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          for (int k = 0; k < n; ++k) {
            Jet acc = jet_partial(gamma(p, j, k), i) - jet_partial(gamma(p, i, k), j);
            for (int m = 0; m < n; ++m) acc += gam(m, j, k) * gam(p, i, m) - gam(m, i, k) * gam(p, j, m);
            up(p, j, i, k) = -acc;
            up(p, i, j, k) = std::move(acc);
          }
        }
      }
    }
    Tensor<Jet> r = Tensor<Jet>::lower(n, 4, Jet(n, order));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          for (int l = 0; l < n; ++l) {
            Jet acc(n, order);
            for (int p = 0; p < n; ++p) acc += gl(l, p) * up(p, i, j, k);
            r(i, j, k, l) = std::move(acc);
          }
        }
      }
    }
    return r;
  }

  ScalarCurvatureDerivatives scalar_derivatives() const {
    const Tensor<Jet> gam0 = truncate_all(gamma, 0);
    const Tensor<Jet> ginv0 = truncate_all(g_inv, 0);
    Eigen::VectorXd grad(n);
    std::vector<Jet> dtau;
    for (int i = 0; i < n; ++i) {
      dtau.push_back(jet_partial(tau, i));
      grad(i) = dtau.back().value();
    }
    Eigen::MatrixXd hess(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double h = jet_partial(dtau[static_cast<std::size_t>(j)], i).value();
        for (int k = 0; k < n; ++k) h -= gam0(k, i, j).value() * grad(k);
        hess(i, j) = h;
      }
    }
    Sym2Form hess_form(hess, Frame::Coordinate);
    double lap = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) lap += ginv0(i, j).value() * hess_form(i, j);
    }
    return {grad, std::move(hess_form), lap};
  }

  /// (nabla_a rho)_ij as order-1 jets.
  Tensor<Jet> covariant_ricci() const {
    const Tensor<Jet> gam1 = truncate_all(gamma, 1);
    const Tensor<Jet> rho1 = truncate_all(rho, 1);
    Tensor<Jet> d = Tensor<Jet>::lower(n, 3, Jet(n, 1));
    for (int a = 0; a < n; ++a) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Jet acc = jet_partial(rho(i, j), a);
          for (int m = 0; m < n; ++m) acc -= gam1(m, a, i) * rho1(m, j) + gam1(m, a, j) * rho1(i, m);
          d(a, i, j) = std::move(acc);
        }
      }
    }
    return d;
  }

  Sym2Form rough_laplacian(const Tensor<Jet>& cov) const {
    const Tensor<Jet> gam0 = truncate_all(gamma, 0);
    const Tensor<Jet> ginv0 = truncate_all(g_inv, 0);
    auto dv = [&](int a, int i, int j) { return cov(a, i, j).value(); };
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) {
            const double w = ginv0(a, b).value();
            if (w == 0.0) continue;
            // (nabla_b nabla rho)_(a i j)
            double second = jet_partial(cov(a, i, j), b).value();
            for (int m = 0; m < n; ++m) {
              second -= gam0(m, b, a).value() * dv(m, i, j) + gam0(m, b, i).value() * dv(a, m, j) +
                        gam0(m, b, j).value() * dv(a, i, m);
            }
            acc += w * second;
          }
        }
        lap(i, j) = acc;
      }
    }
    return Sym2Form(lap, Frame::Coordinate);
  }
};

Tensor<double> values_of(const Tensor<Jet>& t) {
  Tensor<double> out(t.dim(), t.variance(), 0.0);
  for (std::size_t k = 0; k < t.entries().size(); ++k) out.entries()[k] = t.entries()[k].value();
  return out;
}

}  // namespace

Tensor<Jet> inverse_metric(const Tensor<Jet>& g) {
  const int n = g.dim();
  const Eigen::MatrixXd g0 = values(g);
  Eigen::LLT<Eigen::MatrixXd> llt(g0);
  if (llt.info() != Eigen::Success || !g0.allFinite()) throw GeometryError("metric is not positive definite at the base point");
  const Eigen::MatrixXd inv0 = llt.solve(Eigen::MatrixXd::Identity(n, n));
  const int order = jet_order(g);
  const int jdim = g(0, 0).dim();

  // g = g0 + N with N nilpotent; g^{-1} = sum_k (-g0^{-1} N)^k g0^{-1}
  Tensor<Jet> nil = Tensor<Jet>::lower(n, 2, Jet(jdim, order));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      nil(i, j) = g(i, j);
      nil(i, j)[0] = 0.0;
    }
  }
  auto constant = [&](const Eigen::MatrixXd& m) {
    Tensor<Jet> t(n, {Slot::Upper, Slot::Upper}, Jet(jdim, order));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) t(i, j) = Jet::constant(m(i, j), jdim, order);
    }
    return t;
  };
  const Tensor<Jet> base = constant(inv0);
  Tensor<Jet> term = base;
  Tensor<Jet> sum = base;
  for (int k = 1; k <= order; ++k) {
    // term <- -inv0 * N * term
    Tensor<Jet> nt(n, {Slot::Upper, Slot::Upper}, Jet(jdim, order));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Jet acc(jdim, order);
        for (int m = 0; m < n; ++m) acc += nil(i, m) * term(m, j);
        nt(i, j) = std::move(acc);
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Jet acc(jdim, order);
        for (int m = 0; m < n; ++m) acc += nt(m, j) * (-inv0(i, m));
        term(i, j) = std::move(acc);
      }
    }
    for (std::size_t e = 0; e < sum.entries().size(); ++e) sum.entries()[e] += term.entries()[e];
  }
  return sum;
}

Tensor<Jet> christoffel(const Tensor<Jet>& metric_jets) {
  return Pipeline::christoffel_with(metric_jets, inverse_metric(metric_jets));
}

Tensor<Jet> riemann(const Tensor<Jet>& metric_jets) {
  return Pipeline::riemann_with(metric_jets, christoffel(metric_jets));
}

ScalarCurvatureDerivatives scalar_derivatives(const Tensor<Jet>& metric_jets) {
  require_order(metric_jets, 4, "scalar_derivatives");
  return Pipeline(metric_jets).scalar_derivatives();
}

Sym2Form rough_laplacian_ricci(const Tensor<Jet>& metric_jets) {
  require_order(metric_jets, 4, "rough_laplacian_ricci");
  Pipeline p(metric_jets);
  return p.rough_laplacian(p.covariant_ricci());
}

CurvaturePackage curvature_package_from_jets(const Tensor<Jet>& metric_jets, std::optional<Eigen::VectorXd> point) {
  require_order(metric_jets, 4, "curvature_package");
  const Pipeline p(metric_jets);
  auto scalars = p.scalar_derivatives();
  const Tensor<Jet> cov = p.covariant_ricci();
  Sym2Form rough = p.rough_laplacian(cov);
  Eigen::MatrixXd ricci(p.n, p.n);
  for (int i = 0; i < p.n; ++i) {
    for (int j = 0; j < p.n; ++j) ricci(i, j) = p.rho(i, j).value();
  }
  Eigen::MatrixXd g_inv(p.n, p.n);
  for (int i = 0; i < p.n; ++i) {
    for (int j = 0; j < p.n; ++j) g_inv(i, j) = p.g_inv(i, j).value();
  }
  return CurvaturePackage{p.n,
                          std::move(point),
                          Frame::Coordinate,
                          values(metric_jets),
                          g_inv,
                          values_of(p.riem),
                          Sym2Form(ricci, Frame::Coordinate),
                          p.tau.value(),
                          scalars.grad_tau,
                          std::move(scalars.hess_tau),
                          scalars.lap_tau,
                          values_of(cov),
                          std::move(rough)};
}

CurvaturePackage curvature_package(const MetricPatch& patch, const Eigen::VectorXd& point) {
  return curvature_package_from_jets(patch.jets(point, kMaxJetOrder), point);
}

}  // namespace curvlab
