#include "rdmom/measure.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

namespace rdmom {

MultOperators multiplication_matrices(const MomentMatrix& flat) {
  const unsigned k = flat.degree();
  if (k == 0) throw NotFlatError("degree-zero matrix has no predecessor block");
  const auto monos = monomials_up_to(k);
  const Mat& full = flat.mat().mat();
  const std::size_t prev = basis_size(k - 1);
  const std::size_t rk = rank(full);

  const Rref red = rref(flat.mat().leading(prev).mat());
  if (red.pivot_cols.size() != rk)
    throw NotFlatError("rank does not stabilize between the last two degrees");

  MultOperators ops;
  for (std::size_t c : red.pivot_cols) ops.basis.push_back(monos[c]);

  // Solve against the full-height submatrix of basis columns; exact, floats
  // only at the very end.
  Mat sub(full.rows(), rk);
  for (std::size_t t = 0; t < rk; ++t)
    for (std::size_t i = 0; i < full.rows(); ++i)
      sub.at(i, t) = full.at(i, deglex_index(ops.basis[t]));

  auto coeffs = [&](const Monomial& target) {
    std::vector<Rat> col(full.rows());
    for (std::size_t i = 0; i < full.rows(); ++i) col[i] = full.at(i, deglex_index(target));
    auto x = solve_consistent(sub, col);
    if (!x) throw NotFlatError("shifted column leaves the basis span");
    return *x;
  };

  ops.mx = Eigen::MatrixXd(rk, rk);
  ops.my = Eigen::MatrixXd(rk, rk);
  for (std::size_t t = 0; t < rk; ++t) {
    const auto cx = coeffs(ops.basis[t] + Monomial{1, 0});
    const auto cy = coeffs(ops.basis[t] + Monomial{0, 1});
    for (std::size_t s = 0; s < rk; ++s) {
      ops.mx(Eigen::Index(s), Eigen::Index(t)) = rat_double(cx[s]);
      ops.my(Eigen::Index(s), Eigen::Index(t)) = rat_double(cy[s]);
    }
  }
  return ops;
}

AtomExtraction extract_atoms(const MultOperators& ops) {
  // Fixed irrational shears; the first that separates the spectrum wins, so
  // reruns take the same path every time.
  static const double kShifts[] = {0.6180339887498949, 0.4142135623730951,
                                   1.7320508075688772, 0.2360679774997897,
                                   2.414213562373095};
  const Eigen::Index r = ops.mx.rows();
  AtomExtraction out;

  for (double s : kShifts) {
    ++out.attempts;
    const Eigen::MatrixXd a = ops.mx + s * ops.my;
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) continue;
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const auto& ev = es.eigenvalues();

    bool good = true;
    for (Eigen::Index i = 0; i < r && good; ++i) {
      if (std::abs(ev(i).imag()) > 1e-7 * scale) good = false;
      for (Eigen::Index j = i + 1; j < r && good; ++j)
        if (std::abs(ev(i) - ev(j)) < 1e-7 * scale) good = false;
    }
    if (!good) continue;

    std::vector<std::pair<double, double>> pts;
    for (Eigen::Index t = 0; t < r && good; ++t) {
      Eigen::VectorXcd v = es.eigenvectors().col(t);
      Eigen::Index peak = 0;
      v.cwiseAbs().maxCoeff(&peak);
      if (std::abs(v(peak)) == 0) {
        good = false;
        break;
      }
      const std::complex<double> phase = v(peak) / std::abs(v(peak));
      Eigen::VectorXd vr = (v / phase).real();
      const double nrm = vr.norm();
      if (nrm == 0) {
        good = false;
        break;
      }
      vr /= nrm;
      pts.emplace_back(vr.dot(ops.mx * vr), vr.dot(ops.my * vr));
    }
    if (!good) continue;

    double cscale = 1.0;
    for (const auto& [x, y] : pts) cscale = std::max({cscale, std::abs(x), std::abs(y)});
    bool distinct = true;
    for (std::size_t i = 0; i < pts.size() && distinct; ++i)
      for (std::size_t j = i + 1; j < pts.size() && distinct; ++j)
        if (std::max(std::abs(pts[i].first - pts[j].first),
                     std::abs(pts[i].second - pts[j].second)) < 1e-7 * cscale)
          distinct = false;
    if (!distinct) continue;

    out.ok = true;
    out.points = std::move(pts);
    out.shift_used = s;
    return out;
  }
  out.error = "spectrum_unresolved";
  return out;
}

DensitySolve solve_densities(const std::vector<std::pair<double, double>>& points,
                             const MomentSequence& beta) {
  const auto monos = monomials_up_to(beta.max_degree());
  Eigen::MatrixXd v(monos.size(), points.size());
  Eigen::VectorXd rhs(monos.size());
  for (std::size_t i = 0; i < monos.size(); ++i) {
    rhs(Eigen::Index(i)) = rat_double(beta.at(monos[i]));
    for (std::size_t kk = 0; kk < points.size(); ++kk)
      v(Eigen::Index(i), Eigen::Index(kk)) = std::pow(points[kk].first, double(monos[i].i)) *
                                             std::pow(points[kk].second, double(monos[i].j));
  }
  DensitySolve out;
  Eigen::VectorXd w = v.colPivHouseholderQr().solve(rhs);
  Eigen::VectorXd res = v * w - rhs;
  out.weights.assign(w.data(), w.data() + w.size());
  out.residuals.assign(res.data(), res.data() + res.size());
  for (double x : out.residuals) out.residual_max = std::max(out.residual_max, std::abs(x));
  return out;
}

MeasureReport recover_measure(const MomentMatrix& flat, const MomentSequence& beta,
                              const DeterminacyProfile& prof, double rel_tol) {
  MeasureReport rep;
  double maxb = 0;
  for (const Monomial& mo : monomials_up_to(beta.max_degree()))
    maxb = std::max(maxb, std::abs(rat_double(beta.at(mo))));
  rep.tol_abs = rel_tol * std::max(1.0, maxb);

  MultOperators ops;
  try {
    ops = multiplication_matrices(flat);
  } catch (const NotFlatError&) {
    rep.error = "not_flat";
    return rep;
  }
  rep.flat_rank = ops.basis.size();

  const AtomExtraction ext = extract_atoms(ops);
  if (!ext.ok) {
    rep.error = ext.error;
    return rep;
  }

  const DensitySolve den = solve_densities(ext.points, beta);
  rep.residual_max = den.residual_max;
  for (std::size_t kk = 0; kk < ext.points.size(); ++kk)
    rep.atoms.push_back({ext.points[kk].first, ext.points[kk].second, den.weights[kk]});
  std::sort(rep.atoms.begin(), rep.atoms.end(), [](const Atom& a, const Atom& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  // atoms sharing an x up to extraction noise form one cluster, ordered by y
  double amp = 0;
  for (const Atom& a : rep.atoms) amp = std::max({amp, std::abs(a.x), std::abs(a.y)});
  const double ctol = 1e-9 * (1.0 + amp);
  for (std::size_t lo = 0; lo < rep.atoms.size();) {
    std::size_t hi = lo + 1;
    while (hi < rep.atoms.size() && rep.atoms[hi].x - rep.atoms[lo].x <= ctol) ++hi;
    std::sort(rep.atoms.begin() + std::ptrdiff_t(lo), rep.atoms.begin() + std::ptrdiff_t(hi),
              [](const Atom& a, const Atom& b) { return a.y < b.y; });
    lo = hi;
  }

  rep.weights_positive = true;
  for (const Atom& a : rep.atoms)
    if (!(a.weight > rep.tol_abs)) rep.weights_positive = false;

  const auto [fx, fy] = prof.generators_input_frame();
  auto near_zero = [](const Poly& f, double x, double y) {
    double amplitude = 1.0;
    for (const auto& [t, c] : f)
      amplitude += std::abs(rat_double(c)) * std::pow(std::abs(x), double(t.i)) *
                   std::pow(std::abs(y), double(t.j));
    return std::abs(f.eval(x, y)) <= 1e-6 * amplitude;
  };
  rep.atoms_on_generators = true;
  for (const Atom& a : rep.atoms)
    if (!near_zero(fx, a.x, a.y) || !near_zero(fy, a.x, a.y)) rep.atoms_on_generators = false;

  rep.moments_match = rep.residual_max <= rep.tol_abs;
  rep.count_matches = rep.atoms.size() == rep.flat_rank;
  rep.ok = rep.weights_positive && rep.atoms_on_generators && rep.moments_match &&
           rep.count_matches;
  if (!rep.ok) rep.error = "verification_failed";
  return rep;
}

namespace {

// Coefficients of f seen as a polynomial in y whose coefficients are dense
// univariate polynomials in x (ascending powers).
std::vector<std::vector<Rat>> y_layers(const Poly& f) {
  unsigned dy = 0, dx = 0;
  for (const auto& [t, c] : f) {
    dy = std::max(dy, t.j);
    dx = std::max(dx, t.i);
  }
  std::vector<std::vector<Rat>> layers(dy + 1, std::vector<Rat>(dx + 1));
  for (const auto& [t, c] : f) layers[t.j][t.i] = c;
  while (layers.size() > 1) {
    bool zero = true;
    for (const Rat& c : layers.back())
      if (c != 0) zero = false;
    if (!zero) break;
    layers.pop_back();
  }
  return layers;
}

Rat eval_layer(const std::vector<Rat>& c, const Rat& x) {
  Rat s = 0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
  return s;
}

Rat det_exact(Mat a) {
  const std::size_t n = a.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a.at(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(c, j), a.at(p, j));
      det = -det;
    }
    det *= a.at(c, c);
    const Rat inv = Rat(1) / a.at(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a.at(i, c) == 0) continue;
      const Rat f = a.at(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
    }
  }
  return det;
}

// Exact Lagrange interpolation through (xs[i], vs[i]).
std::vector<Rat> interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& vs) {
  const std::size_t n = xs.size();
  std::vector<Rat> acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> num{Rat(1)};
    Rat den = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      // num *= (x - xs[j])
      std::vector<Rat> next(num.size() + 1);
      for (std::size_t k = 0; k < num.size(); ++k) {
        next[k] -= num[k] * xs[j];
        next[k + 1] += num[k];
      }
      num = std::move(next);
      den *= xs[i] - xs[j];
    }
    const Rat f = vs[i] / den;
    for (std::size_t k = 0; k < num.size(); ++k) acc[k] += f * num[k];
  }
  return acc;
}

std::vector<Rat> univ_derivative(const std::vector<Rat>& c) {
  std::vector<Rat> out;
  for (std::size_t k = 1; k < c.size(); ++k) out.push_back(c[k] * Rat(long(k)));
  if (out.empty()) out.push_back(Rat(0));
  return out;
}

std::vector<Rat> univ_trim(std::vector<Rat> c) {
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  return c;
}

std::vector<Rat> univ_mod(std::vector<Rat> a, const std::vector<Rat>& b) {
  // remainder of a by b, b nonzero
  while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
    const Rat f = a.back() / b.back();
    const std::size_t off = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[off + k] -= f * b[k];
    a = univ_trim(std::move(a));
    if (a.size() < b.size()) break;
    if (a.size() == 1 && a[0] == 0) break;
  }
  return a;
}

std::vector<Rat> univ_gcd(std::vector<Rat> a, std::vector<Rat> b) {
  a = univ_trim(std::move(a));
  b = univ_trim(std::move(b));
  while (!(b.size() == 1 && b[0] == 0)) {
    auto r = univ_mod(a, b);
    a = std::move(b);
    b = univ_trim(std::move(r));
  }
  // monic normalize
  if (!(a.size() == 1 && a[0] == 0)) {
    const Rat lead = a.back();
    for (Rat& c : a) c /= lead;
  }
  return a;
}

std::vector<Rat> univ_div(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  // exact quotient (used for the squarefree part)
  std::vector<Rat> rem = a, quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 1);
  while (rem.size() >= b.size() && !(rem.size() == 1 && rem[0] == 0)) {
    const Rat f = rem.back() / b.back();
    const std::size_t off = rem.size() - b.size();
    quot[off] = f;
    for (std::size_t k = 0; k < b.size(); ++k) rem[off + k] -= f * b[k];
    rem = univ_trim(std::move(rem));
    if (rem.size() < b.size()) break;
  }
  return univ_trim(std::move(quot));
}

std::vector<double> real_roots(const std::vector<Rat>& poly) {
  const auto c = univ_trim(poly);
  const std::size_t deg = c.size() - 1;
  std::vector<double> out;
  if (deg == 0) return out;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(Eigen::Index(deg), Eigen::Index(deg));
  for (std::size_t i = 1; i < deg; ++i) comp(Eigen::Index(i), Eigen::Index(i - 1)) = 1.0;
  for (std::size_t i = 0; i < deg; ++i)
    comp(Eigen::Index(i), Eigen::Index(deg - 1)) = -rat_double(c[i] / c[deg]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const std::complex<double> z = es.eigenvalues()(i);
    if (std::abs(z.imag()) <= 1e-6 * (1.0 + std::abs(z.real()))) out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  std::vector<double> dedup;
  for (double x : out) {
    if (dedup.empty() || std::abs(x - dedup.back()) > 1e-6 * (1.0 + std::abs(x)))
      dedup.push_back(x);
  }
  return dedup;
}

}  // namespace

std::optional<std::size_t> variety_count(const DeterminacyProfile& prof) {
  const Poly fx = prof.x_poly(), fy = prof.y_poly();
  const auto fl = y_layers(fx);
  const auto gl = y_layers(fy);
  const int n1 = int(fl.size()) - 1;
  const int n2 = int(gl.size()) - 1;  // always m, with constant leading layer 1

  unsigned dxf = 0, dxg = 0;
  for (const auto& layer : fl) dxf = std::max<unsigned>(dxf, layer.size() - 1);
  for (const auto& layer : gl) dxg = std::max<unsigned>(dxg, layer.size() - 1);

  const int size = n1 + n2;
  if (size == 0) return std::nullopt;
  const unsigned dbound = unsigned(n2) * dxf + unsigned(n1) * dxg;

  // Eliminate y by evaluating the resultant determinant at enough x samples
  // and interpolating exactly.
  std::vector<Rat> xs, vs;
  for (unsigned t = 0; t <= dbound; ++t) {
    const long v = (t % 2 == 0) ? long(t / 2) : -long(t / 2 + 1);
    const Rat x0(v);
    Mat syl(size, size);
    for (int r = 0; r < n2; ++r)
      for (int k = 0; k <= n1; ++k) syl.at(r, r + k) = eval_layer(fl[n1 - k], x0);
    for (int r = 0; r < n1; ++r)
      for (int k = 0; k <= n2; ++k) syl.at(n2 + r, r + k) = eval_layer(gl[n2 - k], x0);
    xs.push_back(x0);
    vs.push_back(det_exact(std::move(syl)));
  }

  bool all_zero = true;
  for (const Rat& v : vs)
    if (v != 0) all_zero = false;
  if (all_zero) return std::nullopt;  // shared component, infinite variety

  std::vector<Rat> res = univ_trim(interpolate(xs, vs));
  const std::size_t deg = res.size() - 1;
  if (deg > 12) return std::nullopt;
  if (deg == 0) return std::size_t(0);

  // Squarefree part keeps the companion solve well conditioned.
  const auto g = univ_gcd(res, univ_derivative(res));
  const auto sf = (g.size() > 1) ? univ_div(res, g) : res;

  auto near_zero = [](const Poly& f, double x, double y) {
    double amplitude = 1.0;
    for (const auto& [t, c] : f)
      amplitude += std::abs(rat_double(c)) * std::pow(std::abs(x), double(t.i)) *
                   std::pow(std::abs(y), double(t.j));
    return std::abs(f.eval(x, y)) <= 1e-6 * amplitude;
  };

  std::vector<std::pair<double, double>> pts;
  for (double x0 : real_roots(sf)) {
    // y candidates: roots of the y-relation at x0; it is monic in y, so the
    // companion matrix never degenerates.
    std::vector<double> gyd(std::size_t(n2) + 1, 0.0);
    for (int k = 0; k <= n2; ++k) {
      double s = 0, xp = 1;
      for (const Rat& c : gl[std::size_t(k)]) {
        s += rat_double(c) * xp;
        xp *= x0;
      }
      gyd[std::size_t(k)] = s;
    }
    // companion on doubles
    const std::size_t degy = std::size_t(n2);
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(Eigen::Index(degy), Eigen::Index(degy));
    for (std::size_t i = 1; i < degy; ++i) comp(Eigen::Index(i), Eigen::Index(i - 1)) = 1.0;
    for (std::size_t i = 0; i < degy; ++i)
      comp(Eigen::Index(i), Eigen::Index(degy - 1)) = -gyd[i] / gyd[degy];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const std::complex<double> z = es.eigenvalues()(i);
      if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z.real()))) continue;
      const double y0 = z.real();
      if (!near_zero(fx, x0, y0) || !near_zero(fy, x0, y0)) continue;
      bool dup = false;
      for (const auto& [px, py] : pts)
        if (std::abs(px - x0) <= 1e-6 * (1.0 + std::abs(x0)) &&
            std::abs(py - y0) <= 1e-6 * (1.0 + std::abs(y0)))
          dup = true;
      if (!dup) pts.emplace_back(x0, y0);
    }
  }
  return pts.size();
}

}  // namespace rdmom
