#include "menger/symbol.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "menger/error.hpp"

namespace menger {

namespace {

constexpr double kPi = std::numbers::pi;

struct Rule {
  std::vector<double> x, w;  // on [-1,1]
};

// Gauss-Legendre nodes by Newton iteration on P_n
Rule gauss_legendre(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1 - x * x) * dp * dp);
  }
  return r;
}

const Rule& rule(int n) {
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
  return it->second;
}

struct Nodes {
  std::vector<double> x, w;
  void add_interval(double lo, double hi, const Rule& r) {
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (size_t i = 0; i < r.x.size(); ++i) {
      x.push_back(mid + half * r.x[i]);
      w.push_back(half * r.w[i]);
    }
  }
};

// Composite rule on [a,b]: geometric cells toward `a` (or `b`), every cell cut
// into pieces no longer than max_piece.
Nodes graded(double a, double b, int levels, double ratio, double max_piece, bool toward_a, const Rule& r) {
  Nodes n;
  const double L = b - a;
  std::vector<double> edges{0.0};
  for (int j = levels; j >= 0; --j) edges.push_back(L * std::pow(ratio, j));
  for (size_t c = 0; c + 1 < edges.size(); ++c) {
    const double lo = edges[c], hi = edges[c + 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_piece)));
    for (int s = 0; s < pieces; ++s) {
      const double l = lo + (hi - lo) * s / pieces, h = lo + (hi - lo) * (s + 1) / pieces;
      if (toward_a)
        n.add_interval(a + l, a + h, r);
      else
        n.add_interval(b - h, b - l, r);
    }
  }
  return n;
}

// (e^{iaw}-1)/w - (e^{iav}-1)/v, by its Taylor series when both arguments are small
std::complex<double> phi_difference(double a, double v, double w) {
  const double big = std::max(std::abs(a * v), std::abs(a * w));
  if (big > 0.5) {
    auto phi = [a](double x) { return (std::complex<double>(std::cos(a * x) - 1.0, std::sin(a * x))) / x; };
    return phi(w) - phi(v);
  }
  // sum_{n>=1} (ia)^{n+1}/(n+1)! (w^n - v^n), w^n - v^n = (w-v) h_n
  const std::complex<double> ia(0.0, a);
  std::complex<double> coef = ia * ia / 2.0;  // (ia)^2/2!
  std::complex<double> sum = 0;
  double h = 1.0, vn = v;  // h_1 = 1; h_{n+1} = w h_n + v^n
  for (int n = 1; n <= 18; ++n) {
    sum += coef * h;
    h = w * h + vn;
    vn *= v;
    coef *= ia / double(n + 2);
  }
  return (w - v) * sum;
}

double rho_on_mesh(double p, int k, const RhoOptions& opt, int refine) {
  const double a = 2.0 * kPi * k;
  const Rule& r = rule(opt.gauss_points);
  const double piece = 1.0 / (opt.cells_per_wavelength * k * refine);
  const int levels = opt.levels;
  double total = 0;
  // v in (-1/2,-1/3): w < 1+2v, v in (-1/3,0): w < (1+v)/2
  const Nodes outer_a = graded(-0.5, -1.0 / 3.0, 0, opt.grading, piece, true, r);
  const Nodes outer_b = graded(-1.0 / 3.0, 0.0, levels, opt.grading, piece, false, r);
  for (const Nodes* outer : {&outer_a, &outer_b}) {
    for (size_t iv = 0; iv < outer->x.size(); ++iv) {
      const double v = outer->x[iv];
      const double wmax = std::min(1.0 + 2.0 * v, 0.5 * (1.0 + v));
      const Nodes inner = graded(0.0, wmax, levels, opt.grading, piece, true, r);
      const double lv = std::log(-v);
      double acc = 0;
      for (size_t iw = 0; iw < inner.x.size(); ++iw) {
        const double w = inner.x[iw];
        const double num = std::norm(phi_difference(a, v, w));
        acc += inner.w[iw] * num * std::exp(-(p - 2.0) * (lv + std::log(w)) - p * std::log(w - v));
      }
      total += outer->w[iv] * acc;
    }
  }
  return total;
}

void require_symbol_range(double p) {
  if (!(p > 7.0 / 3.0 && p < 8.0 / 3.0)) throw Error(ErrorKind::BadParams, "symbol computations need p in (7/3, 8/3)");
}

double fit_slope(const std::vector<int>& ks, const std::vector<double>& ys) {
  const size_t n = ks.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += std::log(double(ks[i]));
    my += std::log(ys[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = std::log(double(ks[i])) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

}  // namespace

RhoResult rho_k_detailed(double p, int k, const RhoOptions& opt) {
  require_symbol_range(p);
  if (k < 1) throw Error(ErrorKind::BadParams, "k must be >= 1");
  RhoResult res;
  res.coarse = rho_on_mesh(p, k, opt, 1);
  res.value = rho_on_mesh(p, k, opt, 2);
  res.relative_change = std::abs(res.value - res.coarse) / std::abs(res.value);
  if (!(res.relative_change <= opt.max_change) || !(res.value > 0))
    throw Error(ErrorKind::QuadratureNotConverged,
                "rho_k mesh doubling changed the value by " + std::to_string(res.relative_change));
  return res;
}

double rho_k(double p, int k) {
  static std::mutex mu;
  static std::map<std::pair<double, int>, double> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, k});
    if (it != cache.end()) return it->second;
  }
  const double v = rho_k_detailed(p, k).value;
  std::lock_guard<std::mutex> lock(mu);
  cache[{p, k}] = v;
  return v;
}

SymbolTable rho_asymptotic(double p, const std::vector<int>& ks) {
  require_symbol_range(p);
  if (ks.empty()) throw Error(ErrorKind::BadParams, "no wave numbers given");
  for (size_t i = 0; i < ks.size(); ++i)
    if (ks[i] < 1 || (i > 0 && ks[i] <= ks[i - 1])) throw Error(ErrorKind::BadParams, "ks must be increasing and >= 1");
  SymbolTable t;
  t.p = p;
  t.ks = ks;
  for (int k : ks) {
    t.rho.push_back(rho_k(p, k));
    t.scaled.push_back(t.rho.back() / std::pow(double(k), 3.0 * p - 4.0));
  }
  t.plateau = t.scaled.back();
  const size_t first = t.scaled.size() >= 3 ? t.scaled.size() - 3 : 0;
  const auto [lo, hi] = std::minmax_element(t.scaled.begin() + first, t.scaled.end());
  t.deviation = (*hi - *lo) / *lo;
  t.slope = ks.size() > 1 ? fit_slope(ks, t.rho) : 0.0;
  return t;
}

double tilde_rho(double p, double lambda, int k) {
  const double tk = 2.0 * kPi * k;
  return 12.0 * rho_k(p, k) + lambda * tk * tk;
}

Eigen::MatrixXcd fourier_coefficients(const Eigen::MatrixXd& samples) {
  const Eigen::Index N = samples.cols();
  Eigen::FFT<double> fft;
  Eigen::MatrixXcd out(samples.rows(), N);
  std::vector<double> row(N);
  std::vector<std::complex<double>> spec;
  for (Eigen::Index r = 0; r < samples.rows(); ++r) {
    for (Eigen::Index j = 0; j < N; ++j) row[j] = samples(r, j);
    fft.fwd(spec, row);
    for (Eigen::Index k = 0; k < N; ++k) out(r, k) = spec[k] / double(N);
  }
  return out;
}

namespace {

// integral over the unit cell [i,i+1]x[j,j+1] (index units) clipped to
// y <= ymax(x), of x^e y^e (x+y)^e times the four bilinear hats
std::array<double, 4> cell_weights(int i, int j, double N, double e) {
  const Rule& r = rule(8);
  auto ymax = [N](double x) { return std::min(N - 2.0 * x, 0.5 * (N - x)); };
  std::array<double, 4> out{0, 0, 0, 0};
  std::vector<std::pair<double, double>> xs{{double(i), double(i + 1)}};
  const double kink = N / 3.0;
  if (kink > i && kink < i + 1) xs = {{double(i), kink}, {kink, double(i + 1)}};
  for (auto [x0, x1] : xs) {
    if (j >= ymax(x0) && j >= ymax(x1)) continue;
    const Nodes xn = i == 0 ? graded(x0, x1, 30, 0.5, 1.0, true, r) : graded(x0, x1, 0, 0.5, 1.0, true, r);
    for (size_t a = 0; a < xn.x.size(); ++a) {
      const double x = xn.x[a];
      const double top = std::min(double(j + 1), ymax(x));
      if (top <= j) continue;
      const Nodes yn = j == 0 ? graded(double(j), top, 30, 0.5, 1.0, true, r) : graded(double(j), top, 0, 0.5, 1.0, true, r);
      const double xi = x - i;
      const double xe = std::pow(x, e);
      for (size_t b = 0; b < yn.x.size(); ++b) {
        const double y = yn.x[b];
        const double eta = y - j;
        const double s = xn.w[a] * yn.w[b] * xe * std::pow(y, e) * std::pow(x + y, e);
        out[0] += s * (1 - xi) * (1 - eta);
        out[1] += s * xi * (1 - eta);
        out[2] += s * (1 - xi) * eta;
        out[3] += s * xi * eta;
      }
    }
  }
  return out;
}

QFormWeights build_weights(Eigen::Index N, double p) {
  const double e = 2.0 - p;
  std::map<std::pair<int, int>, double> acc;
  const double n = double(N);
  for (int i = 0; 2 * i < N; ++i)
    for (int j = 0; 2 * j < N; ++j) {
      if (j >= std::min(n - 2.0 * i, 0.5 * (n - i))) break;
      const auto c = cell_weights(i, j, n, e);
      acc[{i, j}] += c[0];
      acc[{i + 1, j}] += c[1];
      acc[{i, j + 1}] += c[2];
      acc[{i + 1, j + 1}] += c[3];
    }
  QFormWeights W;
  W.N = N;
  W.p = p;
  // dv dw = h^2 dx dy and the singular factor carries h^{3(2-p)}
  const double scale = std::pow(1.0 / n, 8.0 - 3.0 * p);
  for (const auto& [key, w] : acc) {
    if (w == 0) continue;
    W.n1.push_back(key.first);
    W.n3.push_back(key.second);
    W.weight.push_back(w * scale);
  }
  return W;
}

}  // namespace

const QFormWeights& qform_weights(Eigen::Index N, double p) {
  static std::mutex mu;
  static std::map<std::pair<Eigen::Index, double>, std::unique_ptr<QFormWeights>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{N, p}];
  if (!slot) slot = std::make_unique<QFormWeights>(build_weights(N, p));
  return *slot;
}

namespace {

void check_inputs(const Eigen::MatrixXd& f, const Eigen::MatrixXd& g) {
  if (f.rows() != g.rows() || f.cols() != g.cols()) throw Error(ErrorKind::BadInput, "f and g must have the same shape");
  if (f.cols() < 16) throw Error(ErrorKind::BadInput, "need at least 16 samples");
}

}  // namespace

double q_form_direct(const Eigen::MatrixXd& f, const Eigen::MatrixXd& g, double p) {
  require_symbol_range(p);
  check_inputs(f, g);
  const Eigen::Index N = f.cols();
  const Eigen::Index dim = f.rows();
  const QFormWeights& W = qform_weights(N, p);
  const int xmax = *std::max_element(W.n1.begin(), W.n1.end());
  const int ymax = *std::max_element(W.n3.begin(), W.n3.end());
  const double h = 1.0 / double(N);
  auto at = [N](const Eigen::MatrixXd& m, Eigen::Index i) { return m.col(((i % N) + N) % N); };

  // sixth order central differences for the derivative limits on the axes
  auto d1 = [&](const Eigen::MatrixXd& m, Eigen::Index u) -> Eigen::VectorXd {
    return (-at(m, u - 3) + 9 * at(m, u - 2) - 45 * at(m, u - 1) + 45 * at(m, u + 1) - 9 * at(m, u + 2) + at(m, u + 3)) /
           (60.0 * h);
  };
  auto d2 = [&](const Eigen::MatrixXd& m, Eigen::Index u) -> Eigen::VectorXd {
    return (2 * at(m, u - 3) - 27 * at(m, u - 2) + 270 * at(m, u - 1) - 490 * at(m, u) + 270 * at(m, u + 1) -
            27 * at(m, u + 2) + 2 * at(m, u + 3)) /
           (180.0 * h * h);
  };
  // B(v,w) = (A(w) - A(v))/(w - v), A(x) = (f(u+x) - f(u))/x, A(0) = f'(u),
  // B(0,0) = f''(u)/2
  auto quotients = [&](const Eigen::MatrixXd& m, Eigen::Index u, Eigen::MatrixXd& Av, Eigen::MatrixXd& Aw,
                       Eigen::VectorXd& half_fpp) {
    Av.resize(dim, xmax + 1);
    Aw.resize(dim, ymax + 1);
    const Eigen::VectorXd fp = d1(m, u);
    Av.col(0) = fp;
    Aw.col(0) = fp;
    for (int x = 1; x <= xmax; ++x) Av.col(x) = (at(m, u - x) - at(m, u)) / (-x * h);
    for (int y = 1; y <= ymax; ++y) Aw.col(y) = (at(m, u + y) - at(m, u)) / (y * h);
    half_fpp = 0.5 * d2(m, u);
  };

  double total = 0;
  Eigen::MatrixXd Avf, Awf, Avg, Awg;
  Eigen::VectorXd cf, cg;
  for (Eigen::Index u = 0; u < N; ++u) {
    quotients(f, u, Avf, Awf, cf);
    quotients(g, u, Avg, Awg, cg);
    double acc = 0;
    for (size_t n = 0; n < W.weight.size(); ++n) {
      const int x = W.n1[n], y = W.n3[n];
      if (x == 0 && y == 0) {
        acc += W.weight[n] * cf.dot(cg);
        continue;
      }
      const double dvw = (x + y) * h;
      acc += W.weight[n] * ((Awf.col(y) - Avf.col(x)).dot(Awg.col(y) - Avg.col(x))) / (dvw * dvw);
    }
    total += acc;
  }
  return total / double(N);
}

double q_form_fourier(const Eigen::MatrixXd& f, const Eigen::MatrixXd& g, double p) {
  require_symbol_range(p);
  check_inputs(f, g);
  const Eigen::Index N = f.cols();
  const Eigen::MatrixXcd F = fourier_coefficients(f), G = fourier_coefficients(g);
  std::vector<double> pair(N / 4 + 1, 0.0);
  double biggest = 0;
  for (Eigen::Index k = 1; k <= N / 4; ++k) {
    // <a,b> = sum a conj(b); modes k and -k together
    pair[k] = (F.col(k).dot(G.col(k))).real() + (F.col(N - k).dot(G.col(N - k))).real();
    biggest = std::max(biggest, std::abs(pair[k]));
  }
  double total = 0;
  for (Eigen::Index k = 1; k <= N / 4; ++k) {
    if (std::abs(pair[k]) <= 1e-14 * biggest || pair[k] == 0) continue;  // rho_k is expensive, skip empty modes
    total += rho_k(p, static_cast<int>(k)) * pair[k];
  }
  return total;
}

}  // namespace menger
